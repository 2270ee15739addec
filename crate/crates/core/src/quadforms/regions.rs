//! Regions of the fundamental domain F = {|x| ≤ 1/2, x² + y² ≥ 1} used by
//! the shrinking-set counting experiments, with hyperbolic measure
//! ∬ dx dy / y² computed by quadrature, and sharp-indicator point counts.

use super::{heegner_points, HeegnerSet};
use crate::oscillatory::quadrature::integrate_real;
use crate::tolerances::REGION_QUAD_TOL;
use crate::{Error, Result};

/// A counting region, implicitly intersected with F.
#[derive(Clone, Copy, Debug)]
pub enum Region {
    /// All of F; hyperbolic area π/3.
    Full,
    /// 1/(2V) ≤ |x| ≤ 1/V, 1 ≤ y ≤ 2.
    BoxNearY1 { v: f64 },
    /// |x| ≤ 1/2, V ≤ y ≤ 2V.
    HighCuspBox { v: f64 },
    /// Euclidean disk |τ - (x₀ + iy₀)| ≤ 1/V.
    Disk { v: f64, x0: f64, y0: f64 },
}

fn in_f(x: f64, y: f64) -> bool {
    x.abs() <= 0.5 && x * x + y * y >= 1.0
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        let v = match self {
            Region::Full => return Ok(()),
            Region::BoxNearY1 { v } | Region::HighCuspBox { v } | Region::Disk { v, .. } => *v,
        };
        if v < 1.0 {
            return Err(Error::InvalidParameter(format!("region parameter V = {v} below 1")));
        }
        if let Region::Disk { v, x0, y0 } = self {
            if *y0 - 1.0 / v <= 0.0 {
                return Err(Error::InvalidParameter("disk touches the real axis".into()));
            }
            if !in_f(*x0, *y0) {
                return Err(Error::InvalidParameter("disk center outside F".into()));
            }
        }
        Ok(())
    }

    /// Closed-region membership, after intersection with F.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        if !in_f(x, y) {
            return false;
        }
        match *self {
            Region::Full => true,
            Region::BoxNearY1 { v } => {
                (1.0 / (2.0 * v)..=1.0 / v).contains(&x.abs()) && (1.0..=2.0).contains(&y)
            }
            Region::HighCuspBox { v } => (v..=2.0 * v).contains(&y),
            Region::Disk { v, x0, y0 } => {
                let r = 1.0 / v;
                (x - x0).powi(2) + (y - y0).powi(2) <= r * r
            }
        }
    }

    /// ∬_{region ∩ F} dx dy / y², to about `REGION_QUAD_TOL`.
    pub fn hyperbolic_area(&self) -> Result<f64> {
        self.validate()?;
        match *self {
            Region::Full => Ok(std::f64::consts::PI / 3.0),
            Region::HighCuspBox { v } => Ok(1.0 / v - 1.0 / (2.0 * v)),
            Region::BoxNearY1 { v } => {
                // y ∈ [1,2] stays above the unit circle for every admissible x.
                let half_width = (1.0 / v).min(0.5) - 1.0 / (2.0 * v);
                Ok(2.0 * half_width.max(0.0) * 0.5)
            }
            Region::Disk { v, x0, y0 } => {
                let r = 1.0 / v;
                // x = x0 + r sin θ removes the square-root endpoint kinks.
                let f = |theta: f64| {
                    let x = x0 + r * theta.sin();
                    if x.abs() > 0.5 {
                        return 0.0;
                    }
                    let half = r * theta.cos();
                    let y_top = y0 + half;
                    let circle = (1.0 - x * x).max(0.0).sqrt();
                    let y_bot = (y0 - half).max(circle);
                    if y_top <= y_bot {
                        return 0.0;
                    }
                    (1.0 / y_bot - 1.0 / y_top) * r * theta.cos()
                };
                integrate_real(
                    f,
                    -std::f64::consts::FRAC_PI_2,
                    std::f64::consts::FRAC_PI_2,
                    32,
                    REGION_QUAD_TOL,
                )
            }
        }
    }
}

/// Sharp count of Heegner points in the region, and the equidistribution
/// prediction h(-D) · (3/π) · area(region).
pub fn count_region(d: u64, region: &Region) -> Result<(u64, f64)> {
    region.validate()?;
    let set = heegner_points(d)?;
    Ok(count_region_with(&set, region)?)
}

/// Same, reusing an already-computed point set.
pub fn count_region_with(set: &HeegnerSet, region: &Region) -> Result<(u64, f64)> {
    let count = set.points.iter().filter(|p| region.contains(p.x, p.y)).count() as u64;
    let expected = set.class_number as f64 * (3.0 / std::f64::consts::PI) * region.hyperbolic_area()?;
    Ok((count, expected))
}

/// One row of the equidistribution experiment.
#[derive(Clone, Copy, Debug)]
pub struct EquidistRow {
    pub d: u64,
    pub class_number: u64,
    pub count: u64,
    pub expected: f64,
    /// |count - expected| / max(1, expected)
    pub normalized_discrepancy: f64,
}

/// Counts against the equidistribution prediction across a list of
/// discriminants, for a fixed region.
pub fn equidistribution_report(d_list: &[u64], region: &Region) -> Result<Vec<EquidistRow>> {
    d_list
        .iter()
        .map(|&d| {
            let set = heegner_points(d)?;
            let (count, expected) = count_region_with(&set, region)?;
            Ok(EquidistRow {
                d,
                class_number: set.class_number,
                count,
                expected,
                normalized_discrepancy: (count as f64 - expected).abs() / expected.max(1.0),
            })
        })
        .collect()
}
