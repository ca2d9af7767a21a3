//! Buchberger's algorithm with the coprime and chain criteria, the normal
//! selection strategy, and full tail reduction.

mod syzygy;

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle};
use crate::scalars::Field;

pub use syzygy::{syzygy_basis, SyzygyModule};

/// Terms sorted by descending monomial order.
pub(crate) type Terms<E> = Vec<(Monomial, E)>;
/// A basis element and its representation in the inputs.
type Tracked<E> = (Terms<E>, Vec<Terms<E>>);

pub(crate) fn sorted_terms<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Terms<F::Elem> {
    let mut t = p.terms().to_vec();
    if order != MonomialOrder::GrevLex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

pub(crate) fn to_poly<F: Field>(ring: &Arc<PolyRing<F>>, order: MonomialOrder, mut t: Terms<F::Elem>) -> Polynomial<F> {
    if order != MonomialOrder::GrevLex {
        t.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
    }
    Polynomial::from_sorted(ring, t)
}

/// `p - c * m * g`.
pub(crate) fn sub_mul<F: Field>(
    field: &F,
    order: MonomialOrder,
    p: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Terms<F::Elem> {
    use std::cmp::Ordering::*;
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let next_g = |j: usize| -> (Monomial, F::Elem) { (g[j].0.mul(m), field.mul(c, &g[j].1)) };
    let mut pending: Option<(Monomial, F::Elem)> = g.first().map(|_| next_g(0));
    while i < p.len() || pending.is_some() {
        let ord = match (&p.get(i), &pending) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Greater,
            _ => Less,
        };
        match ord {
            Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Less => {
                let (mon, v) = pending.take().unwrap();
                out.push((mon, field.neg(&v)));
                j += 1;
                pending = (j < g.len()).then(|| next_g(j));
            }
            Equal => {
                let (mon, v) = pending.take().unwrap();
                let s = field.sub(&p[i].1, &v);
                if !field.is_zero(&s) {
                    out.push((mon, s));
                }
                i += 1;
                j += 1;
                pending = (j < g.len()).then(|| next_g(j));
            }
        }
    }
    out
}

pub(crate) fn scale_terms<F: Field>(field: &F, t: &[(Monomial, F::Elem)], c: &F::Elem) -> Terms<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    t.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect()
}

/// Fully reduces `p` by `basis`. When `quotients` is given, records
/// `p = sum q_k basis_k + remainder`.
pub(crate) fn reduce<F: Field>(
    field: &F,
    order: MonomialOrder,
    mut p: Terms<F::Elem>,
    basis: &[&[(Monomial, F::Elem)]],
    mut quotients: Option<&mut Vec<Terms<F::Elem>>>,
) -> Terms<F::Elem> {
    let mut rem = Vec::new();
    let mut pos = 0;
    let lead_inv: Vec<F::Elem> = basis.iter().map(|g| field.inv(&g[0].1).expect("nonzero lead")).collect();
    while pos < p.len() {
        let (m, c) = &p[pos];
        let hit = basis.iter().position(|g| g[0].0.divides(m));
        match hit {
            Some(k) => {
                let factor = field.mul(c, &lead_inv[k]);
                let mono = m.div(&basis[k][0].0).expect("divides");
                if let Some(q) = quotients.as_deref_mut() {
                    q[k].push((mono.clone(), factor.clone()));
                }
                p = sub_mul(field, order, &p[pos..], &factor, &mono, basis[k]);
                pos = 0;
            }
            None => {
                rem.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    rem
}

struct Entry<E> {
    poly: Terms<E>,
    repr: Vec<Terms<E>>,
}

fn make_monic<F: Field>(field: &F, e: &mut Entry<F::Elem>) {
    let inv = field.inv(&e.poly[0].1).expect("nonzero");
    if field.is_one(&inv) {
        return;
    }
    e.poly = scale_terms(field, &e.poly, &inv);
    for r in &mut e.repr {
        *r = scale_terms(field, r, &inv);
    }
}

/// `repr - sum_k q_k * reprs[k]`.
fn update_repr<F: Field>(
    field: &F,
    order: MonomialOrder,
    repr: &mut [Terms<F::Elem>],
    quotients: &[Terms<F::Elem>],
    reprs: &[&[Terms<F::Elem>]],
) {
    for (k, q) in quotients.iter().enumerate() {
        for (mono, c) in q {
            for (i, r) in repr.iter_mut().enumerate() {
                if !reprs[k][i].is_empty() {
                    *r = sub_mul(field, order, r, c, mono, &reprs[k][i]);
                }
            }
        }
    }
}

/// Runs Buchberger on nonzero inputs. Returns the reduced basis sorted by
/// descending leading monomial and, when tracking, the representation of each
/// element in terms of the inputs.
pub(crate) fn buchberger<F: Field>(
    field: &F,
    order: MonomialOrder,
    inputs: &[Terms<F::Elem>],
    track: bool,
) -> Vec<Tracked<F::Elem>> {
    let m = inputs.len();
    let mut basis: Vec<Entry<F::Elem>> = Vec::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Entry<F::Elem>>,
                queue: &mut BTreeSet<(u32, usize, usize)>,
                pending: &mut HashSet<(usize, usize)>,
                mut e: Entry<F::Elem>| {
        make_monic(field, &mut e);
        let j = basis.len();
        for (i, other) in basis.iter().enumerate() {
            let d = other.poly[0].0.lcm(&e.poly[0].0).degree();
            queue.insert((d, j, i));
            pending.insert((i, j));
        }
        basis.push(e);
    };

    for (i, g) in inputs.iter().enumerate() {
        if g.is_empty() {
            continue;
        }
        let mut repr = vec![Vec::new(); if track { m } else { 0 }];
        if track {
            repr[i] = vec![(Monomial::one(g[0].0.arity()), field.one())];
        }
        push(&mut basis, &mut queue, &mut pending, Entry { poly: g.clone(), repr });
    }

    while let Some((_, j, i)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i].poly[0].0, &basis[j].poly[0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].poly[0].0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let mi = l.div(li).expect("lcm");
        let mj = l.div(lj).expect("lcm");
        let one = field.one();
        let lifted =
            scale_terms(field, &basis[i].poly, &one).into_iter().map(|(t, c)| (t.mul(&mi), c)).collect::<Vec<_>>();
        let s = sub_mul(field, order, &lifted, &one, &mj, &basis[j].poly);
        let refs: Vec<&[(Monomial, F::Elem)]> = basis.iter().map(|e| e.poly.as_slice()).collect();
        let mut quot = vec![Vec::new(); if track { basis.len() } else { 0 }];
        let h = reduce(field, order, s, &refs, track.then_some(&mut quot));
        if h.is_empty() {
            continue;
        }
        let mut repr = Vec::new();
        if track {
            let lift = |r: &Terms<F::Elem>, mono: &Monomial| -> Terms<F::Elem> {
                r.iter().map(|(t, c)| (t.mul(mono), c.clone())).collect()
            };
            repr = (0..m)
                .map(|a| sub_mul(field, order, &lift(&basis[i].repr[a], &mi), &one, &mj, &basis[j].repr[a]))
                .collect();
            let reprs: Vec<&[Terms<F::Elem>]> = basis.iter().map(|e| e.repr.as_slice()).collect();
            update_repr(field, order, &mut repr, &quot, &reprs);
        }
        push(&mut basis, &mut queue, &mut pending, Entry { poly: h, repr });
    }

    // minimize
    let n = basis.len();
    let keep: Vec<usize> = (0..n)
        .filter(|&a| {
            let la = &basis[a].poly[0].0;
            !(0..n).any(|b| b != a && basis[b].poly[0].0.divides(la) && (basis[b].poly[0].0 != *la || b < a))
        })
        .collect();
    let mut reduced: Vec<Entry<F::Elem>> =
        keep.iter().map(|&a| std::mem::replace(&mut basis[a], Entry { poly: Vec::new(), repr: Vec::new() })).collect();

    // tail-reduce each element against the others
    for a in 0..reduced.len() {
        let others: Vec<usize> = (0..reduced.len()).filter(|&b| b != a).collect();
        let refs: Vec<&[(Monomial, F::Elem)]> = others.iter().map(|&b| reduced[b].poly.as_slice()).collect();
        let mut quot = vec![Vec::new(); if track { others.len() } else { 0 }];
        let poly = reduce(field, order, reduced[a].poly.clone(), &refs, track.then_some(&mut quot));
        if track {
            let reprs: Vec<&[Terms<F::Elem>]> = others.iter().map(|&b| reduced[b].repr.as_slice()).collect();
            let mut repr = reduced[a].repr.clone();
            update_repr(field, order, &mut repr, &quot, &reprs);
            reduced[a].repr = repr;
        }
        reduced[a].poly = poly;
        make_monic(field, &mut reduced[a]);
    }
    reduced.sort_by(|a, b| order.cmp(&b.poly[0].0, &a.poly[0].0));
    reduced.into_iter().map(|e| (e.poly, e.repr)).collect()
}

/// Reduced Groebner basis: monic, tail-reduced, sorted by descending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    order: MonomialOrder,
    elems: Vec<Terms<F::Elem>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>], order: MonomialOrder) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        let inputs: Vec<_> = gens.iter().map(|g| sorted_terms(g, order)).collect();
        let elems = buchberger(ring.field(), order, &inputs, false).into_iter().map(|(p, _)| p).collect();
        Ok(GroebnerBasis { ring: ring.clone(), order, elems })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.elems.iter().map(|t| to_poly(&self.ring, self.order, t.clone())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|t| t[0].0.is_one())
    }

    fn refs(&self) -> Vec<&[(Monomial, F::Elem)]> {
        self.elems.iter().map(|t| t.as_slice()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        let r = reduce(self.ring.field(), self.order, sorted_terms(f, self.order), &self.refs(), None);
        Ok(to_poly(&self.ring, self.order, r))
    }

    /// Quotients `q_k` and remainder `r` with `f = sum q_k g_k + r`.
    pub fn divide(&self, f: &Polynomial<F>) -> Result<(Vec<Polynomial<F>>, Polynomial<F>)> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        let mut quot = vec![Vec::new(); self.elems.len()];
        let r = reduce(self.ring.field(), self.order, sorted_terms(f, self.order), &self.refs(), Some(&mut quot));
        let quot = quot.into_iter().map(|q| to_poly(&self.ring, self.order, q)).collect();
        Ok((quot, to_poly(&self.ring, self.order, r)))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elems.iter().any(|t| t[0].0.divides(m))
    }

    /// Monomials of degree `d` outside the leading-term ideal, in descending order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> =
            Monomial::all_of_degree(self.ring.nvars(), d).into_iter().filter(|m| self.is_standard(m)).collect();
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    /// Number of standard monomials of degree `<= bound`.
    pub fn count_standard_up_to(&self, bound: u32) -> usize {
        (0..=bound).map(|d| self.standard_monomials(d).len()).sum()
    }
}

/// Groebner basis together with the expression of each element in the inputs.
#[derive(Clone, Debug)]
pub struct TrackedBasis<F: Field> {
    basis: GroebnerBasis<F>,
    inputs: Vec<Polynomial<F>>,
    repr: Vec<Vec<Terms<F::Elem>>>,
}

impl<F: Field> TrackedBasis<F> {
    pub fn compute(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>], order: MonomialOrder) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        let inputs: Vec<_> = gens.iter().map(|g| sorted_terms(g, order)).collect();
        let (elems, repr) = buchberger(ring.field(), order, &inputs, true).into_iter().unzip();
        Ok(TrackedBasis { basis: GroebnerBasis { ring: ring.clone(), order, elems }, inputs: gens.to_vec(), repr })
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    /// `repr[j][i]` with `g_j = sum_i repr[j][i] f_i`.
    pub fn representation(&self) -> Vec<Vec<Polynomial<F>>> {
        let b = &self.basis;
        self.repr.iter().map(|row| row.iter().map(|t| to_poly(&b.ring, b.order, t.clone())).collect()).collect()
    }

    /// Coefficients `c_i` with `f = sum c_i f_i`, if `f` is in the ideal.
    pub fn express(&self, f: &Polynomial<F>) -> Result<Option<Vec<Polynomial<F>>>> {
        let (quot, rem) = self.basis.divide(f)?;
        if !rem.is_zero() {
            return Ok(None);
        }
        let ring = &self.basis.ring;
        let repr = self.representation();
        let mut out = vec![ring.zero(); self.inputs.len()];
        for (q, row) in quot.iter().zip(&repr) {
            for (o, r) in out.iter_mut().zip(row) {
                *o = &*o + &(q * r);
            }
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    fn ring() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, &["x", "y", "w", "u"]).unwrap()
    }

    #[test]
    fn triple_line_basis() {
        let r = ring();
        let gens = r.parse_all(&["x*u", "y*u - x^2", "u^2"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &gens, MonomialOrder::GrevLex).unwrap();
        let els: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(els, vec!["x^2 - y*u", "x*u", "u^2"]);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring();
        let gb = GroebnerBasis::compute(&r, &r.parse_all(&["x", "x + 1"]).unwrap(), MonomialOrder::Lex).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.elements(), vec![r.one()]);
        let z = GroebnerBasis::compute(&r, &[r.zero()], MonomialOrder::GrevLex).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = PolyRing::new(Rationals, &["x", "y", "z", "w"]).unwrap();
        let gens = r.parse_all(&["x*z - y^2", "y*w - z^2", "x*w - y*z"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &gens, MonomialOrder::Lex).unwrap();
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        assert!(!gb.contains(&r.parse("x*y").unwrap()).unwrap());
    }

    #[test]
    fn tracked_representation() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y", "z"]).unwrap();
        let gens = r.parse_all(&["x^2 - y", "x*y - z", "y^2 - x*z"]).unwrap();
        let tb = TrackedBasis::compute(&r, &gens, MonomialOrder::GrevLex).unwrap();
        for (g, row) in tb.basis().elements().iter().zip(tb.representation()) {
            let sum = row.iter().zip(&gens).fold(r.zero(), |acc, (c, f)| acc + c * f);
            assert_eq!(&sum, g);
        }
        let f = r.parse("x^3*y - z^2").unwrap();
        let coeffs = tb.express(&(&f * &gens[1])).unwrap().unwrap();
        let sum = coeffs.iter().zip(&gens).fold(r.zero(), |acc, (c, g)| acc + c * g);
        assert_eq!(sum, &f * &gens[1]);
    }
}
