//! Small finite fields F_{p^n} with a deterministic primitive modulus
//! polynomial. Elements are indices 0..p^n encoding coefficient vectors in
//! base p (constant term least significant), so element 1 is the field's
//! multiplicative identity and element p is the residue of x.

use crate::{Error, Result};

pub struct Gf {
    pub p: u64,
    pub n: u32,
    pub q: usize,
    /// Non-leading coefficients c_0..c_{n-1} of the monic modulus
    /// x^n + c_{n-1}x^{n-1} + … + c_0.
    modulus: Vec<u64>,
}

/// A field element as an explicit coefficient vector over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub coefficients: Vec<u64>,
}

impl Gf {
    /// Field of order p^n. The modulus is the least primitive polynomial in
    /// the ascending order of its coefficient encoding, so the residue of x
    /// generates the multiplicative group.
    pub fn new(p: u64, n: u32) -> Result<Gf> {
        crate::lattice::require_prime(p)?;
        if n == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(n).filter(|&q| q <= 1 << 16).ok_or_else(|| {
            Error::ResourceLimit("field order exceeds 2^16".into())
        })? as usize;
        for enc in 0..q {
            let modulus = digits(enc, p, n as usize);
            let f = Gf {
                p,
                n,
                q,
                modulus,
            };
            if f.x_is_primitive() {
                debug_assert!(f.self_test());
                return Ok(f);
            }
        }
        unreachable!("a primitive polynomial exists for every (p, n)")
    }

    fn x_is_primitive(&self) -> bool {
        let x = if self.n == 1 {
            // residue of x is -c_0
            ((self.p - self.modulus[0] % self.p) % self.p) as usize
        } else {
            self.p as usize
        };
        if x == 0 {
            return false;
        }
        let m = (self.q - 1) as u64;
        if self.pow(x, m) != 1 {
            return false;
        }
        for l in crate::prime_divisors(m) {
            if self.pow(x, m / l) == 1 {
                return false;
            }
        }
        true
    }

    /// Exhaustive field-axiom spot check (distributivity and inverses).
    pub fn self_test(&self) -> bool {
        if self.q > 64 {
            return true; // checked exhaustively for small orders in tests
        }
        for a in 0..self.q {
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return false;
            }
            for b in 0..self.q {
                for c in 0..self.q {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        1
    }

    /// A generator of the multiplicative group: the residue of x.
    pub fn generator(&self) -> usize {
        if self.n == 1 {
            ((self.p - self.modulus[0] % self.p) % self.p) as usize
        } else {
            self.p as usize
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (p, n) = (self.p, self.n as usize);
        let (da, db) = (digits(a, p, n), digits(b, p, n));
        undigits(
            &da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect::<Vec<_>>(),
            p,
        )
    }

    pub fn neg(&self, a: usize) -> usize {
        let p = self.p;
        let da = digits(a, p, self.n as usize);
        undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (p, n) = (self.p, self.n as usize);
        let (da, db) = (digits(a, p, n), digits(b, p, n));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce: x^n ≡ −(c_{n-1}x^{n-1} + … + c_0)
        for k in (n..2 * n - 1).rev() {
            let coef = prod[k];
            if coef == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let sub = coef * c % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        undigits(&prod[..n], p)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = 1usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, (self.q - 2) as u64)
    }

    /// The Frobenius x ↦ x^p.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    pub fn element(&self, a: usize) -> FieldElement {
        FieldElement {
            coefficients: digits(a, self.p, self.n as usize),
        }
    }

    pub fn index(&self, e: &FieldElement) -> usize {
        undigits(&e.coefficients, self.p)
    }

    pub fn modulus_coefficients(&self) -> &[u64] {
        &self.modulus
    }
}

fn digits(mut a: usize, p: u64, n: usize) -> Vec<u64> {
    let mut d = vec![0u64; n];
    for slot in d.iter_mut() {
        *slot = (a as u64) % p;
        a /= p as usize;
    }
    d
}

fn undigits(d: &[u64], p: u64) -> usize {
    d.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}
