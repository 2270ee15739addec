//! Arithmetic audit of the final bound assembly: for each kernel case the
//! derived scales (M_i, U, V, X) produce the bracketed quantity
//!
//!   [ (1/(qV)) (qU + M₁M₂)^{1/2} (qU + M₃C/q)^{1/2} ],
//!
//! which must stay under (qT/Δ)^{1/2} (qT)^ε — with every ε instantiated
//! as the exponent 0.1.

use crate::tolerances::EPSILON_EXPONENT;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetCase {
    /// φ = ±cos or ±cosh: M_i ≍ √(N₁N₂N₃)/N_i, U = T²C/√(N₁N₂N₃), V = T.
    CosCosh,
    /// φ = ±sin/±sinh, oscillatory range: C ≍ √(N₁N₂N₃)/T,
    /// M_i ≤ √(N₁N₂N₃)/(N_i Δ), U = X^{1/3}T^{2/3}, V = T.
    SinSinhOsc,
    /// φ = ±sin/±sinh, flat range M_iN_i/C ≤ T^ε: U = T^ε, V = T^{-ε}X^{-1/2}.
    SinSinhFlat,
}

#[derive(Clone, Copy, Debug)]
pub struct BudgetInput {
    pub n: [f64; 3],
    /// Modulus-of-summation scale C; the Cos/Cosh case accepts any C up to
    /// its cap, the sin/sinh cases pin C = √(N₁N₂N₃)/T.
    pub c: f64,
    pub q: f64,
    pub t: f64,
    pub delta: f64,
    pub case: BudgetCase,
}

#[derive(Clone, Copy, Debug)]
pub struct BudgetReport {
    pub case: BudgetCase,
    pub m: [f64; 3],
    pub c: f64,
    pub u: f64,
    pub v: f64,
    pub x: f64,
    pub bracket: f64,
    pub cap: f64,
    pub within: bool,
}

/// The largest C the cos/cosh kernel support allows:
/// √(N₁N₂N₃)/(Δ^{1-ε} T).
pub fn c_cap_cos(n: [f64; 3], t: f64, delta: f64) -> f64 {
    (n[0] * n[1] * n[2]).sqrt() / (delta.powf(1.0 - EPSILON_EXPONENT) * t)
}

pub fn bound_budget(input: &BudgetInput) -> BudgetReport {
    let eps = EPSILON_EXPONENT;
    let prod = (input.n[0] * input.n[1] * input.n[2]).sqrt();
    let (q, t, delta) = (input.q, input.t, input.delta);
    let t_eps = t.powf(eps);

    let (m, c, u, v): ([f64; 3], f64, f64, f64) = match input.case {
        BudgetCase::CosCosh => {
            let m = [prod / input.n[0], prod / input.n[1], prod / input.n[2]];
            let u = t * t * input.c / prod;
            (m, input.c, u, t)
        }
        BudgetCase::SinSinhOsc => {
            let c = prod / t;
            let m = [
                prod / (input.n[0] * delta),
                prod / (input.n[1] * delta),
                prod / (input.n[2] * delta),
            ];
            let x = m[0] * m[1] * m[2] / c;
            let u = x.powf(1.0 / 3.0) * t.powf(2.0 / 3.0);
            (m, c, u, t)
        }
        BudgetCase::SinSinhFlat => {
            let c = prod / t;
            let m = [
                (c * t_eps / input.n[0]).max(1.0),
                (c * t_eps / input.n[1]).max(1.0),
                (c * t_eps / input.n[2]).max(1.0),
            ];
            let x = m[0] * m[1] * m[2] / c;
            let u = t_eps;
            let v = t.powf(-eps) / x.sqrt();
            (m, c, u, v)
        }
    };
    let x = m[0] * m[1] * m[2] / c;
    let bracket = (q * u + m[0] * m[1]).sqrt() * (q * u + m[2] * c / q).sqrt() / (q * v);
    let cap = match input.case {
        BudgetCase::SinSinhFlat => (q * t).powf(eps),
        _ => (q * t / delta).sqrt() * (q * t).powf(eps),
    };
    BudgetReport { case: input.case, m, c, u, v, x, bracket, cap, within: bracket <= cap }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_cosh_at_cap_is_within() {
        // N_i = qT with C at its kernel-support cap.
        let (q, t, delta) = (7.0, 1000.0, 10.0);
        let n = [q * t, q * t, q * t];
        let input = BudgetInput {
            n,
            c: c_cap_cos(n, t, delta),
            q,
            t,
            delta,
            case: BudgetCase::CosCosh,
        };
        let rep = bound_budget(&input);
        assert!(rep.within, "bracket {} vs cap {}", rep.bracket, rep.cap);
    }

    #[test]
    fn oscillatory_sin_case_is_within() {
        let (q, t, delta) = (7.0, 1000.0, 10.0);
        let n = [q * t, q * t, q * t];
        let input = BudgetInput { n, c: 0.0, q, t, delta, case: BudgetCase::SinSinhOsc };
        let rep = bound_budget(&input);
        assert!(rep.within, "bracket {} vs cap {}", rep.bracket, rep.cap);
    }

    #[test]
    fn flat_case_is_within_eps_cap() {
        let (q, t, delta) = (5.0, 1e4, 10.0);
        let n = [1e4, 1e4, 1e4];
        let input = BudgetInput { n, c: 0.0, q, t, delta, case: BudgetCase::SinSinhFlat };
        let rep = bound_budget(&input);
        assert!(rep.within, "bracket {} vs cap {}", rep.bracket, rep.cap);
    }

    #[test]
    fn degenerate_delta_still_defined() {
        let (q, t) = (3.0, 200.0);
        let n = [50.0, 70.0, 90.0];
        let input = BudgetInput {
            n,
            c: c_cap_cos(n, t, t / 2.0),
            q,
            t,
            delta: t / 2.0,
            case: BudgetCase::CosCosh,
        };
        let rep = bound_budget(&input);
        assert!(rep.bracket.is_finite() && rep.cap.is_finite());
    }
}
