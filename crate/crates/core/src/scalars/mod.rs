//! Exact coefficient fields.
//!
//! A field is a small descriptor value (`Rationals`, `PrimeField { p }`, ...)
//! that performs arithmetic on plain element values. Descriptors carry runtime
//! data such as the modulus, which keeps `GF(p)` usable for any prime chosen at
//! runtime.

mod dual;
mod prime;
mod ratfun;
mod rational;
mod unipoly;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;

pub use dual::{Dual, DualNumbers};
pub use prime::PrimeField;
pub use ratfun::{RatFunc, RationalFunctions};
pub use rational::Rationals;
pub use unipoly::UniPoly;

/// Arithmetic of an exact field. Elements are kept canonical, so structural
/// equality is field equality.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Short name used in ring headers: `Q`, `GF(7)`, `Q(t)`.
    fn name(&self) -> String;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Whether `format_elem` output can be used as a coefficient without parentheses.
    fn is_atomic(&self, a: &Self::Elem) -> bool;

    /// Named scalar constants understood by the parser (`t`, `eps`).
    fn parameter(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// True when the printed form is a negated atom such as `-3` or `-1/2`.
    fn is_negative_atom(&self, a: &Self::Elem) -> bool {
        self.is_atomic(a) && self.format_elem(a).starts_with('-')
    }
}

/// Fields where the roots of a univariate polynomial can be listed exactly.
pub trait ExactRoots: Field {
    /// Distinct roots lying in the field, in a deterministic order.
    fn roots(&self, poly: &UniPoly<Self::Elem>) -> Vec<Self::Elem>;

    fn nth_root(&self, a: &Self::Elem, n: u32) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let mut coeffs = vec![self.zero(); n as usize + 1];
        coeffs[0] = self.neg(a);
        coeffs[n as usize] = self.one();
        self.roots(&UniPoly::from_coeffs(self, coeffs)).into_iter().next()
    }
}

#[cfg(test)]
pub(crate) mod laws {
    use super::Field;

    /// Checks the field axioms on a triple of elements.
    pub fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, &f.zero()), a.clone());
        assert_eq!(f.mul(a, &f.one()), a.clone());
        assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            let ai = f.inv(a).unwrap();
            assert!(f.is_one(&f.mul(a, &ai)));
        }
    }
}
