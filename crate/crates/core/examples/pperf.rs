use sixmoment::arith::Modulus;
use sixmoment::charsums::Sign;
use sixmoment::oscillatory::{poisson_check, PoissonParams, SmoothWeight, TestKernel};
use sixmoment::oscillatory::poisson::suggested_m_cut;
use std::time::Instant;

fn main() {
    let n = [20.0, 20.0, 30.0];
    let c = 5.0;
    let u_mid: f64 = n.iter().map(|s| 1.5 * s).product();
    let x_mid = 4.0 * std::f64::consts::PI * u_mid.sqrt() / c;
    let p = PoissonParams {
        modulus: Modulus::new(5).unwrap(),
        r: 1,
        sign: Sign::Plus,
        weights: [
            SmoothWeight::new(n[0]).unwrap(),
            SmoothWeight::new(n[1]).unwrap(),
            SmoothWeight::new(n[2]).unwrap(),
        ],
        kernel: TestKernel::GaussianCosine { freq: 0.03, scale: 1.5 * x_mid },
        m_cut: suggested_m_cut(5, 20.0),
    };
    eprintln!("m_cut initial {}", p.m_cut);
    let t0 = Instant::now();
    let out = poisson_check(&p).unwrap();
    eprintln!("total {:?}  lhs {:.6e} rhs {:.6e} rel {:.3e} final m_cut {}", t0.elapsed(), out.lhs, out.rhs, out.rel_diff, out.m_cut);
}
