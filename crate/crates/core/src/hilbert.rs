//! Hilbert series, function and polynomial of graded quotients `S/I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Monomial, MonomialOrder};
use crate::scalars::Field;

/// Polynomial in `t` with rational coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    /// `a*t + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::new(vec![BigRational::from_integer(b.into()), BigRational::from_integer(a.into())])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    /// Lagrange interpolation through `(t_i, v_i)`.
    fn interpolate(points: &[(i64, BigRational)]) -> Self {
        let mut acc = vec![BigRational::zero(); points.len()];
        for (i, (ti, vi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (t - t_j)/(t_i - t_j)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, (tj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * BigRational::from_integer((*tj).into());
                }
                basis = next;
                denom *= BigRational::from_integer((ti - tj).into());
            }
            for (k, b) in basis.iter().enumerate() {
                acc[k] += b * vi / &denom;
            }
        }
        Self::new(acc)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Hilbert data of a graded quotient `S/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// `N(s)` with `HS(S/I) = N(s) / (1 - s)^n`, ascending coefficients.
    pub numerator: Vec<BigInt>,
    pub nvars: usize,
    /// Krull dimension of `S/I` (number of `(1 - s)` factors left after cancelling).
    pub dimension: usize,
    /// Numerator after cancelling `(1 - s)` factors.
    pub reduced_numerator: Vec<BigInt>,
    pub polynomial: HilbertPolynomial,
    /// Least `t0 >= 0` with `HF(t) = HP(t)` for all `t >= t0`.
    pub regularity_index: u32,
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigInt> =
        (0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|k| k.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(s)` of `HS(S/M) = K(s)/(1-s)^n` for a monomial ideal `M`,
/// by pivot splitting `K(M) = K(M + (v)) + s K(M : v)`.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<BigInt> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![BigInt::one()], |acc, g| {
            let mut f = vec![BigInt::zero(); g.degree() as usize + 1];
            f[0] = BigInt::one();
            f[g.degree() as usize] = -BigInt::one();
            poly_mul(&acc, &f)
        });
    }
    let pivot = (0..nvars)
        .max_by_key(|&v| (gens.iter().filter(|g| g.exp(v) > 0).count(), std::cmp::Reverse(v)))
        .expect("nonempty");
    let var = Monomial::var(nvars, pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).cloned().collect();
    plus.push(var.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&var).unwrap_or_else(|| g.clone())).collect();
    let shifted = {
        let mut c = monomial_numerator(&colon, nvars);
        c.insert(0, BigInt::zero());
        c
    };
    poly_add(&monomial_numerator(&plus, nvars), &shifted)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl HilbertData {
    /// Builds the data from the leading monomials of a Groebner basis.
    pub fn from_leading_monomials(lms: &[Monomial], nvars: usize) -> Self {
        let numerator = monomial_numerator(lms, nvars);
        // cancel (1 - s) factors
        let mut reduced = numerator.clone();
        let mut dimension = nvars;
        while dimension > 0 && !reduced.is_empty() && reduced.iter().sum::<BigInt>().is_zero() {
            // synthetic division by (1 - s): q_k = sum_{i<=k} r_i
            let mut q = Vec::with_capacity(reduced.len() - 1);
            let mut run = BigInt::zero();
            for c in &reduced[..reduced.len() - 1] {
                run += c;
                q.push(run.clone());
            }
            reduced = q;
            dimension -= 1;
        }
        let mut data = HilbertData {
            numerator,
            nvars,
            dimension,
            reduced_numerator: reduced,
            polynomial: HilbertPolynomial::new(Vec::new()),
            regularity_index: 0,
        };
        let max_gen = lms.iter().map(|m| m.degree() as i64).max().unwrap_or(0);
        let tail = data.reduced_numerator.len() as i64 - 1 - data.dimension as i64 + 1;
        let bound = max_gen.max(tail).max(0);
        let d = data.dimension as i64;
        let points: Vec<(i64, BigRational)> =
            (bound..bound + d.max(1)).map(|t| (t, BigRational::from_integer(data.function(t)))).collect();
        let hp = if d == 0 { HilbertPolynomial::new(Vec::new()) } else { HilbertPolynomial::interpolate(&points) };
        for t in bound + d.max(1)..bound + d.max(1) + 2 {
            assert_eq!(hp.eval(t), BigRational::from_integer(data.function(t)), "Hilbert polynomial not stable");
        }
        let mut t0 = bound;
        while t0 > 0 && hp.eval(t0 - 1) == BigRational::from_integer(data.function(t0 - 1)) {
            t0 -= 1;
        }
        data.polynomial = hp;
        data.regularity_index = t0 as u32;
        data
    }

    /// `HF(t)` from the series.
    pub fn function(&self, t: i64) -> BigInt {
        if t < 0 {
            return BigInt::zero();
        }
        let d = self.dimension as i64;
        self.reduced_numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as i64) <= t)
            .map(|(i, c)| {
                if d == 0 {
                    if i as i64 == t {
                        c.clone()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    c * binomial(t - i as i64 + d - 1, d - 1)
                }
            })
            .sum()
    }
}

type CacheKey = (usize, Vec<Vec<u32>>);

fn cache() -> &'static Mutex<HashMap<CacheKey, HilbertData>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, HilbertData>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Hilbert data of `S/I` from the grevlex leading-term ideal.
pub fn hilbert_series<F: Field>(ideal: &Ideal<F>) -> Result<HilbertData> {
    hilbert_series_with(ideal, MonomialOrder::GrevLex)
}

/// As [`hilbert_series`] but with the leading-term ideal of another order.
pub fn hilbert_series_with<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> Result<HilbertData> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = ideal.ring().nvars();
    let lms = ideal.groebner(order).leading_monomials();
    let mut key: Vec<Vec<u32>> = lms.iter().map(|m| m.exps().to_vec()).collect();
    key.sort();
    let key = (n, key);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let data = HilbertData::from_leading_monomials(&lms, n);
    cache().lock().expect("cache lock").insert(key, data.clone());
    Ok(data)
}

pub fn hilbert_polynomial<F: Field>(ideal: &Ideal<F>) -> Result<HilbertPolynomial> {
    Ok(hilbert_series(ideal)?.polynomial)
}

/// `dim_k (S/I)_t` by counting standard monomials.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, t: u32) -> Result<usize> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(ideal.basis().standard_monomials(t).len())
}

/// Degree and arithmetic genus of a curve with `HP = d t + 1 - g`.
pub fn degree_genus(hp: &HilbertPolynomial) -> Result<(i64, i64)> {
    let c = hp.coeffs();
    if c.len() != 2 || !c[1].is_integer() || !c[0].is_integer() || !c[1].is_positive() {
        return Err(Error::NotACurve(hp.to_string()));
    }
    let d = c[1].to_integer().to_i64().ok_or_else(|| Error::NotACurve(hp.to_string()))?;
    let g = 1 - c[0].to_integer().to_i64().ok_or_else(|| Error::NotACurve(hp.to_string()))?;
    Ok((d, g))
}
