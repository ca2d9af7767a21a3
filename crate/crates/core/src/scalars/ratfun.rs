use num_bigint::BigInt;

use super::{Field, Rationals, UniPoly};
use crate::error::{Error, Result};

/// The field k(t) of rational functions over a base field k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalFunctions<F: Field = Rationals> {
    base: F,
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<E> {
    num: UniPoly<E>,
    den: UniPoly<E>,
}

impl<E> RatFunc<E> {
    pub fn numerator(&self) -> &UniPoly<E> {
        &self.num
    }
    pub fn denominator(&self) -> &UniPoly<E> {
        &self.den
    }
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: F) -> Self {
        RationalFunctions { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn from_parts(&self, num: UniPoly<F::Elem>, den: UniPoly<F::Elem>) -> Result<RatFunc<F::Elem>> {
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let b = &self.base;
        let g = num.gcd(b, &den);
        let (num, den) = if g.is_zero() { (num, den) } else { (num.divrem(b, &g)?.0, den.divrem(b, &g)?.0) };
        let lead_inv = b.inv(den.lead().expect("nonzero"))?;
        Ok(RatFunc { num: num.scale(b, &lead_inv), den: den.scale(b, &lead_inv) })
    }

    pub fn from_poly(&self, num: UniPoly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc { num, den: UniPoly::constant(&self.base, self.base.one()) }
    }

    pub fn from_base(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(UniPoly::constant(&self.base, c))
    }

    /// The transcendental `t`.
    pub fn t(&self) -> RatFunc<F::Elem> {
        self.from_poly(UniPoly::monomial(&self.base, self.base.one(), 1))
    }

    /// Value at `t = c`; fails when `c` is a pole.
    pub fn eval_at(&self, a: &RatFunc<F::Elem>, c: &F::Elem) -> Result<F::Elem> {
        let den = a.den.eval(&self.base, c);
        if self.base.is_zero(&den) {
            return Err(Error::ExcludedParameter(self.base.format_elem(c)));
        }
        self.base.div(&a.num.eval(&self.base, c), &den)
    }

    fn numerator_is_atom(&self, a: &RatFunc<F::Elem>) -> bool {
        let nonzero: Vec<_> = a.num.coeffs().iter().filter(|c| !self.base.is_zero(c)).collect();
        nonzero.len() <= 1 && nonzero.iter().all(|c| self.base.is_atomic(c))
    }

    pub fn is_polynomial(&self, a: &RatFunc<F::Elem>) -> bool {
        a.den.is_constant()
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(UniPoly::zero())
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bf = &self.base;
        if a.den == b.den {
            return self.from_parts(a.num.add(bf, &b.num), a.den.clone()).expect("nonzero den");
        }
        let num = a.num.mul(bf, &b.den).add(bf, &b.num.mul(bf, &a.den));
        self.from_parts(num, a.den.mul(bf, &b.den)).expect("nonzero den")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc { num: a.num.neg(&self.base), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bf = &self.base;
        self.from_parts(a.num.mul(bf, &b.num), a.den.mul(bf, &b.den)).expect("nonzero den")
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.num.is_zero() {
            return Err(Error::ZeroInversion);
        }
        self.from_parts(a.den.clone(), a.num.clone())
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_base(self.base.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn name(&self) -> String {
        format!("{}(t)", self.base.name())
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let num = a.num.format(&self.base, "t");
        if a.den.is_constant() {
            num
        } else if self.numerator_is_atom(a) {
            format!("{}/({})", num, a.den.format(&self.base, "t"))
        } else {
            format!("({})/({})", num, a.den.format(&self.base, "t"))
        }
    }
    /// `c*t^k/(den)` still reads as one factor, so only the numerator matters.
    fn is_atomic(&self, a: &Self::Elem) -> bool {
        self.numerator_is_atom(a)
    }
    fn parameter(&self, name: &str) -> Option<Self::Elem> {
        (name == "t").then(|| self.t())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn canonical_form() {
        let f = RationalFunctions::new(Rationals);
        let t = f.t();
        let one = f.one();
        // (t^2 - 1)/(2t + 2) = (t - 1)/2
        let num = f.sub(&f.mul(&t, &t), &one);
        let den = f.add(&f.mul(&f.from_int(2), &t), &f.from_int(2));
        let q = f.div(&num, &den).unwrap();
        assert_eq!(q, f.div(&f.sub(&t, &one), &f.from_int(2)).unwrap());
        assert!(q.denominator().is_constant());
        assert_eq!(f.format_elem(&q), "1/2*t - 1/2");
    }

    #[test]
    fn axioms_and_eval() {
        let f = RationalFunctions::new(PrimeField::new(7).unwrap());
        let t = f.t();
        let a = f.div(&t, &f.add(&t, &f.one())).unwrap();
        let b = f.sub(&f.mul(&t, &t), &f.from_int(3));
        let c = f.from_int(5);
        crate::scalars::laws::check_axioms(&f, &a, &b, &c);
        assert_eq!(f.eval_at(&a, &1).unwrap(), 4);
        assert!(matches!(f.eval_at(&a, &6), Err(Error::ExcludedParameter(_))));
        assert_eq!(f.format_elem(&a), "t/(t + 1)");
    }
}
