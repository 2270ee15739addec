//! Dirichlet characters mod an odd squarefree q, built by CRT from one
//! cyclic generator per prime factor.

use super::{gcd_u64, jacobi, Modulus};
use crate::special::cis;
use num_complex::Complex64;

/// The real primitive character χ_q of conductor q, evaluated through the
/// Jacobi symbol.  Values are exactly -1, 0, or 1.
#[derive(Clone, Debug)]
pub struct QuadraticCharacter {
    modulus: Modulus,
}

impl QuadraticCharacter {
    pub fn new(modulus: Modulus) -> Self {
        QuadraticCharacter { modulus }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn eval(&self, a: i64) -> i32 {
        jacobi(a, self.modulus.q()).expect("modulus validated at construction")
    }

    /// Value table over a full period, for tight loops.
    pub fn table(&self) -> Vec<i32> {
        (0..self.modulus.q()).map(|a| self.eval(a as i64)).collect()
    }
}

/// A Dirichlet character mod odd squarefree q, stored as a full period of
/// unit-or-zero values plus the exponent of the character on each local
/// cyclic factor.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: Modulus,
    values: Vec<Complex64>,
    exponents: Vec<u64>,
    is_primitive: bool,
    is_principal: bool,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_primitive(&self) -> bool {
        self.is_primitive
    }

    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    /// Exponent on each cyclic local factor (ℤ/p)* in prime order.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn eval(&self, a: i64) -> Complex64 {
        let q = self.modulus.q() as i64;
        self.values[a.rem_euclid(q) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The complex-conjugate character.
    pub fn conjugate(&self) -> DirichletCharacter {
        let orders: Vec<u64> = self.modulus.primes().iter().map(|p| p - 1).collect();
        DirichletCharacter {
            modulus: self.modulus.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
            exponents: self
                .exponents
                .iter()
                .zip(&orders)
                .map(|(&e, &n)| if e == 0 { 0 } else { n - e })
                .collect(),
            is_primitive: self.is_primitive,
            is_principal: self.is_principal,
        }
    }

    /// True when this is the quadratic character χ_q.
    pub fn is_quadratic(&self) -> bool {
        self.modulus
            .primes()
            .iter()
            .zip(&self.exponents)
            .all(|(&p, &e)| e == (p - 1) / 2)
            && !self.modulus.primes().is_empty()
    }
}

/// Smallest primitive root mod an odd prime p.
fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut prime_factors = Vec::new();
    let mut n = phi;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            prime_factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        prime_factors.push(n);
    }
    'outer: for g in 2..p {
        for &f in &prime_factors {
            if pow_mod(g, phi / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// All φ(q) Dirichlet characters mod q, by CRT over the prime factors.
/// Each local group (ℤ/p)* is cyclic; a character is a choice of exponent
/// for the image of one generator per prime.
pub fn enumerate_characters(modulus: &Modulus) -> Vec<DirichletCharacter> {
    let q = modulus.q();
    let primes = modulus.primes().to_vec();
    if primes.is_empty() {
        return vec![DirichletCharacter {
            modulus: modulus.clone(),
            values: vec![Complex64::new(1.0, 0.0)],
            exponents: vec![],
            is_primitive: true,
            is_principal: true,
        }];
    }

    // Discrete-log table per prime: dlog[g^t mod p] = t.
    let mut dlogs: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        let g = primitive_root(p);
        let mut table = vec![0u64; p as usize];
        let mut acc = 1u64;
        for t in 0..p - 1 {
            table[acc as usize] = t;
            acc = acc * g % p;
        }
        dlogs.push(table);
    }
    let orders: Vec<u64> = primes.iter().map(|p| p - 1).collect();

    // Residues and unit mask over one period, shared by all characters.
    let residues: Vec<Vec<u64>> = (0..q)
        .map(|a| primes.iter().map(|&p| a % p).collect())
        .collect();
    let is_unit: Vec<bool> = (0..q).map(|a| gcd_u64(a, q) == 1).collect();

    let mut out = Vec::with_capacity(modulus.unit_count() as usize);
    let mut exps = vec![0u64; primes.len()];
    loop {
        let mut values = Vec::with_capacity(q as usize);
        for a in 0..q as usize {
            if !is_unit[a] {
                values.push(Complex64::new(0.0, 0.0));
                continue;
            }
            // Angle as a fraction of a full turn, accumulated mod 1.
            let mut frac = 0.0f64;
            for (i, &e) in exps.iter().enumerate() {
                let t = dlogs[i][residues[a][i] as usize];
                frac += (e * t % orders[i]) as f64 / orders[i] as f64;
            }
            values.push(cis(2.0 * std::f64::consts::PI * frac.fract()));
        }
        out.push(DirichletCharacter {
            modulus: modulus.clone(),
            values,
            exponents: exps.clone(),
            is_primitive: exps.iter().all(|&e| e != 0),
            is_principal: exps.iter().all(|&e| e == 0),
        });

        // Mixed-radix increment over the exponent tuple.
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::ORTHOGONALITY_ERR;

    #[test]
    fn character_counts() {
        for (q, n) in [(1u64, 1usize), (3, 2), (15, 8), (105, 48)] {
            let m = Modulus::new(q).unwrap();
            assert_eq!(enumerate_characters(&m).len(), n);
        }
    }

    #[test]
    fn multiplicative_and_periodic() {
        let m = Modulus::new(15).unwrap();
        for chi in enumerate_characters(&m) {
            assert_eq!(chi.eval(1), Complex64::new(1.0, 0.0));
            for a in 0..30 {
                assert!((chi.eval(a) - chi.eval(a + 15)).norm() < 1e-15);
                for b in 0..15 {
                    let lhs = chi.eval(a * b);
                    let rhs = chi.eval(a) * chi.eval(b);
                    assert!((lhs - rhs).norm() < 1e-13, "χ({a}·{b})");
                }
            }
        }
    }

    #[test]
    fn quadratic_character_is_enumerated() {
        for q in [3u64, 5, 15, 21, 105] {
            let m = Modulus::new(q).unwrap();
            let qc = QuadraticCharacter::new(m.clone());
            let found = enumerate_characters(&m)
                .into_iter()
                .filter(|c| c.is_quadratic())
                .count();
            assert_eq!(found, 1, "exactly one quadratic character mod {q}");
            let chi = enumerate_characters(&m)
                .into_iter()
                .find(|c| c.is_quadratic())
                .unwrap();
            for a in 0..q as i64 {
                let want = qc.eval(a) as f64;
                assert!((chi.eval(a) - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonality_both_ways_up_to_105() {
        for q in (1u64..=105).step_by(2) {
            let m = match Modulus::new(q) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let chars = enumerate_characters(&m);
            let phi = m.unit_count() as f64;
            // Σ_a ψ(a) conj(ψ'(a)) = φ(q) [ψ = ψ'];  sampled pairs.
            for (i, c1) in chars.iter().enumerate() {
                for (j, c2) in chars.iter().enumerate().take(4) {
                    let s: Complex64 = (0..q)
                        .map(|a| c1.eval(a as i64) * c2.eval(a as i64).conj())
                        .sum();
                    let expect = if i == j { phi } else { 0.0 };
                    assert!(
                        (s - Complex64::new(expect, 0.0)).norm() < ORTHOGONALITY_ERR * phi.max(1.0),
                        "q={q} i={i} j={j} got {s}"
                    );
                }
            }
            // Σ_ψ ψ(a) conj(ψ(b)) = φ(q) [a ≡ b], units only; one pair each.
            if q > 2 {
                let a = 1i64;
                for b in 1..q.min(8) as i64 {
                    if gcd_u64(b as u64, q) != 1 {
                        continue;
                    }
                    let s: Complex64 = chars.iter().map(|c| c.eval(a) * c.eval(b).conj()).sum();
                    let expect = if (a - b).rem_euclid(q as i64) == 0 { phi } else { 0.0 };
                    assert!((s - Complex64::new(expect, 0.0)).norm() < ORTHOGONALITY_ERR * phi);
                }
            }
        }
    }

    #[test]
    fn conjugate_character_inverts_values() {
        let m = Modulus::new(35).unwrap();
        for chi in enumerate_characters(&m).iter().take(6) {
            let bar = chi.conjugate();
            for a in 0..35 {
                let prod = chi.eval(a) * bar.eval(a);
                if gcd_u64(a as u64, 35) == 1 {
                    assert!((prod - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                }
            }
        }
    }
}
