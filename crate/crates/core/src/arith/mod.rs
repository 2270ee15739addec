//! Exact modular arithmetic over odd squarefree moduli: the modulus type,
//! Jacobi/Kronecker symbols, and small integer utilities consumed by every
//! other module.

mod characters;
mod sums;

pub use characters::{enumerate_characters, DirichletCharacter, QuadraticCharacter};
pub use sums::{
    gauss_sum, gauss_sum_quadratic, kloosterman, kloosterman_table, ramanujan, ramanujan_mobius,
};

use crate::{Error, Result};

/// An odd squarefree modulus q with its prime factorization and φ(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    q: u64,
    primes: Vec<u64>,
    unit_count: u64,
}

impl Modulus {
    /// Validates that q is positive, odd, and squarefree.
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::NonPositiveModulus(0));
        }
        if q % 2 == 0 {
            return Err(Error::EvenModulus(q));
        }
        let mut primes = Vec::new();
        let mut n = q;
        let mut p = 3u64;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return Err(Error::NotSquarefree(q, p));
                }
                primes.push(p);
            }
            p += 2;
        }
        if n > 1 {
            primes.push(n);
        }
        let unit_count = primes.iter().map(|p| p - 1).product();
        Ok(Modulus { q, primes, unit_count })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// φ(q).
    pub fn unit_count(&self) -> u64 {
        self.unit_count
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &p in &self.primes {
            let mut next = Vec::with_capacity(divs.len() * 2);
            for &d in &divs {
                next.push(d);
                next.push(d * p);
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// μ(d) for a divisor d of q.
    pub fn moebius_of_divisor(&self, d: u64) -> i64 {
        debug_assert!(self.q % d == 0);
        let omega = self.primes.iter().filter(|&&p| d % p == 0).count();
        if omega % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The complementary divisor q/d.
    pub fn codivisor(&self, d: u64) -> u64 {
        self.q / d
    }
}

/// gcd of |a| and |b|.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of a mod m, when it exists.
pub fn mod_inv(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let m_i = m as i64;
    let mut r0 = m_i;
    let mut r1 = a.rem_euclid(m_i);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qq = r0 / r1;
        (r0, r1) = (r1, r0 - qq * r1);
        (t0, t1) = (t1, t0 - qq * t1);
    }
    if r0 != 1 {
        None
    } else {
        Some(t0.rem_euclid(m_i) as u64)
    }
}

/// Jacobi symbol (a|n) for odd positive n, by the binary reciprocity
/// recursion.  Rejects even or zero n.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::NonPositiveModulus(0));
    }
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Kronecker symbol (a|n) for n ≥ 1, extending Jacobi to even n.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return 0;
    }
    let mut n = n;
    let mut sign = 1i32;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            sign = -sign;
        }
    }
    sign * jacobi(a, n).expect("odd part is odd and positive")
}

/// Divisor-count d(c) by trial division.
pub fn divisor_count(c: u64) -> u64 {
    let mut n = c;
    let mut count = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += 1;
    }
    if n > 1 {
        count *= 2;
    }
    count
}

/// Units mod c, ascending.  For c = 1 the single residue 0 is the unit.
pub fn units_mod(c: u64) -> Vec<u64> {
    if c == 1 {
        return vec![0];
    }
    (0..c).filter(|&x| gcd_u64(x, c) == 1).collect()
}
