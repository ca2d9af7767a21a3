use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactRoots, Field, UniPoly};
use crate::error::{Error, Result};

/// The rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInversion)
        } else {
            Ok(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_atomic(&self, _a: &BigRational) -> bool {
        true
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact square root of a rational, if one exists.
pub(crate) fn rational_nth_root(a: &BigRational, n: u32) -> Option<BigRational> {
    if a.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let r = if v.sign() == Sign::Minus { -((-v).nth_root(n)) } else { v.nth_root(n) };
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    Some(BigRational::new(root_int(a.numer())?, root_int(a.denom())?))
}

impl ExactRoots for Rationals {
    fn roots(&self, poly: &UniPoly<BigRational>) -> Vec<BigRational> {
        if poly.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        // clear denominators, strip the root at zero
        let lcm = poly.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            poly.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        if ints[0].is_zero() {
            out.push(BigRational::zero());
            let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
            ints.drain(..shift);
        }
        if ints.len() > 1 {
            let lead = ints.last().unwrap().clone();
            let tail = ints[0].clone();
            for p in divisors(&tail) {
                for q in divisors(&lead) {
                    for cand in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                        if poly.eval(self, &cand).is_zero() && !out.contains(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn nth_root(&self, a: &BigRational, n: u32) -> Option<BigRational> {
        rational_nth_root(a, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn axioms_on_samples() {
        let f = Rationals;
        let samples = [q(0, 1), q(1, 1), q(-3, 7), q(22, 5)];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    super::super::laws::check_axioms(&f, a, b, c);
                }
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Rationals.inv(&q(0, 1)), Err(Error::ZeroInversion));
    }

    #[test]
    fn roots_of_cubic() {
        let f = Rationals;
        // (x - 1/2)(x + 3) x
        let p = UniPoly::from_coeffs(&f, vec![q(0, 1), q(-3, 2), q(5, 2), q(1, 1)]);
        assert_eq!(f.roots(&p), vec![q(-3, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(rational_nth_root(&q(-27, 8), 3), Some(q(-3, 2)));
        assert_eq!(rational_nth_root(&q(2, 1), 3), None);
        assert_eq!(rational_nth_root(&q(-4, 1), 2), None);
    }
}
