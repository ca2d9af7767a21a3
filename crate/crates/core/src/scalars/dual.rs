use num_bigint::BigInt;

use super::Field;
use crate::error::{Error, Result};

/// Dual numbers k[eps]/(eps^2) over a base field. Only units are invertible,
/// so this is a ring; it implements [`Field`] with a fallible `inv`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DualNumbers<F: Field> {
    base: F,
}

/// `re + eps * eps_part`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dual<E> {
    pub re: E,
    pub eps: E,
}

impl<F: Field> DualNumbers<F> {
    pub fn new(base: F) -> Self {
        DualNumbers { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn make(&self, re: F::Elem, eps: F::Elem) -> Dual<F::Elem> {
        Dual { re, eps }
    }

    pub fn lift(&self, re: F::Elem) -> Dual<F::Elem> {
        Dual { re, eps: self.base.zero() }
    }

    pub fn epsilon(&self) -> Dual<F::Elem> {
        Dual { re: self.base.zero(), eps: self.base.one() }
    }
}

impl<F: Field> Field for DualNumbers<F> {
    type Elem = Dual<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.lift(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.lift(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.eps)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual { re: self.base.add(&a.re, &b.re), eps: self.base.add(&a.eps, &b.eps) }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual { re: self.base.neg(&a.re), eps: self.base.neg(&a.eps) }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        Dual { re: f.mul(&a.re, &b.re), eps: f.add(&f.mul(&a.re, &b.eps), &f.mul(&a.eps, &b.re)) }
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let f = &self.base;
        if f.is_zero(&a.re) {
            return Err(Error::DualNotInvertible);
        }
        let r = f.inv(&a.re)?;
        Ok(Dual { eps: f.neg(&f.mul(&a.eps, &f.mul(&r, &r))), re: r })
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.lift(self.base.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn name(&self) -> String {
        format!("{}[eps]", self.base.name())
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let f = &self.base;
        if f.is_zero(&a.eps) {
            return f.format_elem(&a.re);
        }
        let eps_term = |c: &F::Elem| -> String {
            if f.is_one(c) {
                "eps".into()
            } else if f.is_atomic(c) {
                format!("{}*eps", f.format_elem(c))
            } else {
                format!("({})*eps", f.format_elem(c))
            }
        };
        if f.is_zero(&a.re) {
            return eps_term(&a.eps);
        }
        let re = if f.is_atomic(&a.re) { f.format_elem(&a.re) } else { format!("({})", f.format_elem(&a.re)) };
        if f.is_negative_atom(&a.eps) {
            format!("{} - {}", re, eps_term(&f.neg(&a.eps)))
        } else {
            format!("{} + {}", re, eps_term(&a.eps))
        }
    }
    fn is_atomic(&self, a: &Self::Elem) -> bool {
        let f = &self.base;
        if f.is_zero(&a.eps) {
            f.is_atomic(&a.re)
        } else {
            f.is_zero(&a.re) && f.is_atomic(&a.eps)
        }
    }
    fn parameter(&self, name: &str) -> Option<Self::Elem> {
        if name == "eps" {
            Some(self.epsilon())
        } else {
            self.base.parameter(name).map(|c| self.lift(c))
        }
    }
}
