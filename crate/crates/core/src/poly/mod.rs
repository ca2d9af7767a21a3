//! Sparse multivariate polynomials over an exact field.

mod map;
mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::Field;

pub use map::RingMap;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomials};

/// Field plus ordered variable names. Variable 0 is the largest in every order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::BadContext(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::BadContext(format!("duplicate variable `{v}`")));
            }
            if field.parameter(v).is_some() {
                return Err(Error::BadContext(format!("`{v}` is a scalar of {}", field.name())));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    /// Header line in the text format, e.g. `ring Q[x,y,z,w]`.
    pub fn header(&self) -> String {
        format!("ring {}[{}]", self.field.name(), self.vars.join(","))
    }
}

/// Shortcuts on a shared ring handle.
pub trait RingHandle<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn var(&self, i: usize) -> Polynomial<F>;
    fn var_named(&self, name: &str) -> Result<Polynomial<F>>;
    fn parse(&self, text: &str) -> Result<Polynomial<F>>;
    fn parse_all(&self, texts: &[&str]) -> Result<Vec<Polynomial<F>>>;
    fn monomial(&self, c: F::Elem, m: Monomial) -> Polynomial<F>;
}

impl<F: Field> RingHandle<F> for Arc<PolyRing<F>> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }
    fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }
    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.monomial(c, Monomial::one(self.nvars()))
    }
    fn var(&self, i: usize) -> Polynomial<F> {
        self.monomial(self.field.one(), Monomial::var(self.nvars(), i))
    }
    fn var_named(&self, name: &str) -> Result<Polynomial<F>> {
        Ok(self.var(self.index_of(name)?))
    }
    fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        parse_polynomial(self, text)
    }
    fn parse_all(&self, texts: &[&str]) -> Result<Vec<Polynomial<F>>> {
        texts.iter().map(|t| parse_polynomial(self, t)).collect()
    }
    fn monomial(&self, c: F::Elem, m: Monomial) -> Polynomial<F> {
        assert_eq!(m.arity(), self.nvars());
        let terms = if self.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }
}

/// Sparse polynomial. Terms are sorted by descending grevlex with no zero
/// coefficients, so equal polynomials are structurally equal.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

/// Result of [`Polynomial::grading`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    pub homogeneous: bool,
    /// Total degree; `None` for the zero polynomial.
    pub degree: Option<u32>,
}

/// Binary operation selector for [`Polynomial::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> Polynomial<F> {
    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let f = &ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity mismatch");
            match acc.get_mut(&m) {
                Some(v) => *v = f.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted by descending grevlex with distinct monomials.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_term(&self) -> F::Elem {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        let best = self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))?;
        Some((&best.0, &best.1))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn grading(&self) -> Grading {
        Grading {
            homogeneous: self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree()),
            degree: self.total_degree(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grading().homogeneous
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.merge(other, false),
            ArithOp::Sub => self.merge(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let o = MonomialOrder::GrevLex;
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => o.cmp(&a.0, &b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { f.sub(a, b) } else { f.add(a, b) };
                    if !f.is_zero(&c) {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let f = &self.ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).filter(|(_, a)| !f.is_zero(a)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Divides by the leading coefficient in the given order.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.field.inv(c).expect("nonzero")),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let f = &self.ring.field;
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[var];
            e[var] -= 1;
            (Monomial::new(e), f.mul(c, &f.from_int(k as i64)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Self> {
        Ok(self.partial_derivative(self.ring.index_of(name)?))
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let f = &self.ring.field;
        if point.len() != self.ring.nvars() {
            return Err(Error::ContextMismatch);
        }
        Ok(self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let v = m
                .exps()
                .iter()
                .zip(point)
                .fold(c.clone(), |v, (e, x)| if *e == 0 { v } else { f.mul(&v, &f.pow(x, *e)) });
            f.add(&acc, &v)
        }))
    }

    /// Substitutes `images[i]` for variable `i`; all images share one target ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::ContextMismatch);
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Ok(Polynomial { ring: self.ring.clone(), terms: self.terms.clone() });
            }
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_impl(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul_impl(&powers[i][e as usize]);
            }
            acc = acc.merge(&term, false);
        }
        Ok(acc)
    }

    /// Renames variable `i` to `target` variable `var_map[i]`.
    pub fn embed(&self, target: &Arc<PolyRing<F>>, var_map: &[usize]) -> Polynomial<F> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &k) in m.exps().iter().enumerate() {
                e[var_map[i]] += k;
            }
            (Monomial::new(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Moves the polynomial into a ring with the same variable names.
    pub fn move_to(&self, target: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
        let map = self.ring.vars.iter().map(|v| target.index_of(v)).collect::<Result<Vec<_>>>()?;
        Ok(self.embed(target, &map))
    }

    /// Maps coefficients into another field; `target` must have the same number of variables.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Arc<PolyRing<G>>,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::ContextMismatch);
        }
        let terms = self.terms.iter().map(|(m, c)| Ok((m.clone(), f(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Sets variable `var` to 1; the result lives in a ring without that variable.
    pub fn dehomogenize(&self, var: usize) -> Result<Polynomial<F>> {
        let names: Vec<&String> =
            self.ring.vars.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, v)| v).collect();
        let target = PolyRing::new(self.ring.field.clone(), &names)?;
        let terms = self.terms.iter().map(|(m, c)| {
            let e: Vec<u32> = m.exps().iter().enumerate().filter(|(i, _)| *i != var).map(|(_, e)| *e).collect();
            (Monomial::new(e), c.clone())
        });
        Ok(Polynomial::from_terms(&target, terms))
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize): inserts powers of
    /// `target` variable `var` so every term reaches the top degree.
    pub fn homogenize(&self, target: &Arc<PolyRing<F>>, var: usize) -> Result<Polynomial<F>> {
        if target.nvars() != self.ring.nvars() + 1 || var >= target.nvars() {
            return Err(Error::ContextMismatch);
        }
        let top = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.insert(var, top - m.degree());
            (Monomial::new(e), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    /// Coefficients of a linear form in variable order; `None` if not linear homogeneous.
    pub fn linear_coefficients(&self) -> Option<Vec<F::Elem>> {
        let f = &self.ring.field;
        let mut out = vec![f.zero(); self.ring.nvars()];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            out[m.support().next()?] = c.clone();
        }
        Some(out)
    }

    /// Linear form with the given coefficients.
    pub fn linear_form(ring: &Arc<PolyRing<F>>, coeffs: &[F::Elem]) -> Polynomial<F> {
        Polynomial::from_terms(
            ring,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(ring.nvars(), i), c.clone())),
        )
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.ring.field;
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = f.is_negative_atom(c);
            let abs = if negative { f.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let coeff = if f.is_atomic(&abs) { f.format_elem(&abs) } else { format!("({})", f.format_elem(&abs)) };
            if m.is_one() {
                write!(out, "{coeff}")?;
            } else if f.is_one(&abs) {
                write!(out, "{}", format_monomial(&self.ring.vars, m))?;
            } else {
                write!(out, "{}*{}", coeff, format_monomial(&self.ring.vars, m))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.arith(rhs, $op).expect("polynomials from different rings")
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = &self.ring.field;
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect() }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    fn ring() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, &["x", "y", "z", "w"]).unwrap()
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(PolyRing::new(Rationals, &["x", "x"]).is_err());
        assert!(PolyRing::new(Rationals, &["1x"]).is_err());
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let p = r.parse("x^3 + x^2*w - y^2*w").unwrap();
        assert_eq!(p.to_string(), "x^3 + x^2*w - y^2*w");
        let q = r.parse("-(1/2)*x*y + 3 - z").unwrap();
        assert_eq!(q.to_string(), "-1/2*x*y - z + 3");
    }

    #[test]
    fn context_mismatch() {
        let a = ring().var(0);
        let other = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        assert_eq!(a.arith(&other.var(0), ArithOp::Add), Err(Error::ContextMismatch));
        let gf = PolyRing::new(PrimeField::new(7).unwrap(), &["x"]).unwrap();
        assert_eq!(gf.parse("x + 8").unwrap().to_string(), "x + 1");
    }

    #[test]
    fn grading_and_derivative() {
        let r = ring();
        let p = r.parse("x^2*y - z^3").unwrap();
        assert_eq!(p.grading(), Grading { homogeneous: true, degree: Some(3) });
        assert!(!r.parse("x + 1").unwrap().is_homogeneous());
        assert_eq!(p.partial_derivative(0), r.parse("2*x*y").unwrap());
    }

    #[test]
    fn dehomogenize_roundtrip() {
        let r = ring();
        let p = r.parse("x^3 + x^2*w - y^2*w").unwrap();
        let d = p.dehomogenize(3).unwrap();
        assert_eq!(d.to_string(), "x^3 + x^2 - y^2");
        assert_eq!(d.homogenize(&r, 3).unwrap(), p);
    }

    #[test]
    fn substitution() {
        let r = ring();
        let p = r.parse("x*y - z").unwrap();
        let imgs = r.parse_all(&["y", "x + w", "0", "w"]).unwrap();
        assert_eq!(p.substitute(&imgs).unwrap(), r.parse("x*y + y*w").unwrap());
    }
}
