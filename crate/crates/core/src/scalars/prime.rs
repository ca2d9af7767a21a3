use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ExactRoots, Field, UniPoly};
use crate::error::{Error, Result};

/// The prime field GF(p) for a runtime prime p > 3. Elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Fails with `BadModulus` unless `p` is a prime other than 2 and 3.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || p >= (1 << 62) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::ZeroInversion);
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(self.reduce_i128(s0))
    }
    fn pow(&self, a: &u64, mut e: u32) -> u64 {
        let mut base = *a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        self.reduce_i128(r.to_i128().expect("residue fits"))
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    /// Balanced representative, so `p - 1` prints as `-1`.
    fn format_elem(&self, a: &u64) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn is_atomic(&self, _a: &u64) -> bool {
        true
    }
}

impl ExactRoots for PrimeField {
    fn roots(&self, poly: &UniPoly<u64>) -> Vec<u64> {
        if poly.is_zero() {
            return Vec::new();
        }
        (0..self.p).filter(|c| self.is_zero(&poly.eval(self, c))).collect()
    }
}
