//! Syzygies of homogeneous generators.
//!
//! Candidates are the S-pair syzygies of a tracked Groebner basis mapped back
//! to the original generators, plus the columns of `I - A B` (A: basis in
//! terms of generators, B: generators in terms of the basis). Together they
//! generate the syzygy module; a graded greedy pass extracts a minimal set.

use std::collections::HashMap;
use std::sync::Arc;

use super::{buchberger, reduce, sorted_terms, sub_mul, to_poly, Terms};
use crate::error::{Error, Result};
use crate::linalg::rank_of;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle};
use crate::scalars::Field;

/// Minimal generators of the first syzygy module of `generators`.
#[derive(Clone, Debug)]
pub struct SyzygyModule<F: Field> {
    pub generators: Vec<Polynomial<F>>,
    pub syzygies: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> SyzygyModule<F> {
    /// Degree of a syzygy in the grading where `e_i` has degree `deg g_i`.
    pub fn degree_of(&self, r: &[Polynomial<F>]) -> Option<u32> {
        r.iter()
            .zip(&self.generators)
            .find(|(c, _)| !c.is_zero())
            .map(|(c, g)| c.total_degree().unwrap() + g.total_degree().unwrap())
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.syzygies.iter().filter_map(|r| self.degree_of(r)).collect()
    }

    /// Checks `sum r_i g_i = 0` for every syzygy.
    pub fn verify(&self) -> bool {
        let Some(ring) = self.generators.first().map(|g| g.ring().clone()) else {
            return true;
        };
        self.syzygies
            .iter()
            .all(|r| r.iter().zip(&self.generators).fold(ring.zero(), |acc, (c, g)| acc + c * g).is_zero())
    }
}

type Vector<E> = Vec<Terms<E>>;

/// Degree, spanning rows, column index and width of the graded piece being filled.
type Piece<E> = (u32, Vec<Vec<E>>, HashMap<(usize, Monomial), usize>, usize);

fn vec_degree<E>(v: &Vector<E>, gen_degrees: &[u32]) -> Option<u32> {
    v.iter().zip(gen_degrees).find(|(c, _)| !c.is_empty()).map(|(c, d)| c[0].0.degree() + d)
}

/// Coordinates of `mono * v` in degree `d`, indexed by (component, monomial).
fn coordinates<F: Field>(
    field: &F,
    v: &Vector<F::Elem>,
    mono: &Monomial,
    index: &HashMap<(usize, Monomial), usize>,
    width: usize,
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); width];
    for (i, comp) in v.iter().enumerate() {
        for (m, c) in comp {
            let k = index[&(i, m.mul(mono))];
            out[k] = field.add(&out[k], c);
        }
    }
    out
}

/// Greedy graded minimization: keeps a candidate only if it is not in the
/// submodule generated by the lower-degree and previously kept ones.
fn minimize<F: Field>(
    field: &F,
    nvars: usize,
    gen_degrees: &[u32],
    mut cands: Vec<Vector<F::Elem>>,
) -> Vec<Vector<F::Elem>> {
    cands.retain(|v| v.iter().any(|c| !c.is_empty()));
    cands.sort_by_key(|v| vec_degree(v, gen_degrees));
    let mut kept: Vec<(u32, Vector<F::Elem>)> = Vec::new();
    let mut current: Option<Piece<F::Elem>> = None;
    for v in cands {
        let d = vec_degree(&v, gen_degrees).expect("nonzero");
        if current.as_ref().is_none_or(|c| c.0 != d) {
            let mut index = HashMap::new();
            for (i, &gd) in gen_degrees.iter().enumerate() {
                if gd <= d {
                    for m in Monomial::all_of_degree(nvars, d - gd) {
                        let k = index.len();
                        index.insert((i, m), k);
                    }
                }
            }
            let width = index.len();
            let mut rows = Vec::new();
            for (kd, k) in &kept {
                for mono in Monomial::all_of_degree(nvars, d - kd) {
                    rows.push(coordinates(field, k, &mono, &index, width));
                }
            }
            current = Some((d, rows, index, width));
        }
        let (_, rows, index, width) = current.as_mut().unwrap();
        let before = rank_of(field, rows);
        rows.push(coordinates(field, &v, &Monomial::one(nvars), index, *width));
        if rank_of(field, rows) > before {
            kept.push((d, v));
        } else {
            rows.pop();
        }
    }
    kept.into_iter().map(|(_, v)| v).collect()
}

/// Minimal generating set of the syzygies of nonzero homogeneous `gens`.
pub fn syzygy_basis<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>]) -> Result<SyzygyModule<F>> {
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroArgument);
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let field = ring.field();
    let order = MonomialOrder::GrevLex;
    let n = ring.nvars();
    let m = gens.len();
    let one = Monomial::one(n);
    let inputs: Vec<Terms<F::Elem>> = gens.iter().map(|g| sorted_terms(g, order)).collect();
    let (basis, repr): (Vec<_>, Vec<_>) = buchberger(field, order, &inputs, true).into_iter().unzip();
    let refs: Vec<&[(Monomial, F::Elem)]> = basis.iter().map(|t| t.as_slice()).collect();

    // map a vector over the basis to a vector over the generators
    let to_gens = |sigma: &Vector<F::Elem>| -> Vector<F::Elem> {
        let mut out: Vector<F::Elem> = vec![Vec::new(); m];
        for (j, coeff) in sigma.iter().enumerate() {
            for (mono, c) in coeff {
                for (i, o) in out.iter_mut().enumerate() {
                    if !repr[j][i].is_empty() {
                        let neg = field.neg(c);
                        *o = sub_mul(field, order, o, &neg, mono, &repr[j][i]);
                    }
                }
            }
        }
        out
    };

    let mut cands = Vec::new();
    let s = basis.len();
    for j in 0..s {
        for k in j + 1..s {
            let (lj, lk) = (&basis[j][0].0, &basis[k][0].0);
            let l = lj.lcm(lk);
            let (mj, mk) = (l.div(lj).unwrap(), l.div(lk).unwrap());
            let lifted: Terms<F::Elem> = basis[j].iter().map(|(t, c)| (t.mul(&mj), c.clone())).collect();
            let sp = sub_mul(field, order, &lifted, &field.one(), &mk, &basis[k]);
            let mut quot = vec![Vec::new(); s];
            let rem = reduce(field, order, sp, &refs, Some(&mut quot));
            debug_assert!(rem.is_empty());
            let mut sigma: Vector<F::Elem> =
                quot.into_iter().map(|q| q.into_iter().map(|(t, c)| (t, field.neg(&c))).collect()).collect();
            sigma[j] = sub_mul(field, order, &sigma[j], &field.neg(&field.one()), &mj, &[(one.clone(), field.one())]);
            sigma[k] = sub_mul(field, order, &sigma[k], &field.one(), &mk, &[(one.clone(), field.one())]);
            cands.push(to_gens(&sigma));
        }
    }
    for (i, f) in inputs.iter().enumerate() {
        let mut quot = vec![Vec::new(); s];
        let rem = reduce(field, order, f.clone(), &refs, Some(&mut quot));
        debug_assert!(rem.is_empty());
        let ab = to_gens(&quot);
        let mut v: Vector<F::Elem> =
            ab.into_iter().map(|c| c.into_iter().map(|(t, a)| (t, field.neg(&a))).collect()).collect();
        v[i] = sub_mul(field, order, &v[i], &field.neg(&field.one()), &one, &[(one.clone(), field.one())]);
        cands.push(v);
    }

    let gen_degrees: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap()).collect();
    let minimal = minimize(field, n, &gen_degrees, cands);
    let syzygies = minimal.into_iter().map(|v| v.into_iter().map(|c| to_poly(ring, order, c)).collect()).collect();
    Ok(SyzygyModule { generators: gens.to_vec(), syzygies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn triple_line_has_two_linear_syzygies() {
        let r = PolyRing::new(Rationals, &["x", "y", "w", "u"]).unwrap();
        let gens = r.parse_all(&["x*u", "y*u - x^2", "u^2"]).unwrap();
        let syz = syzygy_basis(&r, &gens).unwrap();
        assert!(syz.verify());
        assert_eq!(syz.degrees(), vec![3, 3]);
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = PolyRing::new(PrimeField::new(5).unwrap(), &["x", "y"]).unwrap();
        let gens = r.parse_all(&["x^2", "y^3"]).unwrap();
        let syz = syzygy_basis(&r, &gens).unwrap();
        assert_eq!(syz.syzygies.len(), 1);
        assert_eq!(syz.degrees(), vec![5]);
        assert!(syz.verify());
    }

    #[test]
    fn single_generator_has_none() {
        let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        let syz = syzygy_basis(&r, &[r.parse("x*y").unwrap()]).unwrap();
        assert!(syz.syzygies.is_empty());
        assert_eq!(syzygy_basis(&r, &[r.parse("x + 1").unwrap()]).unwrap_err(), Error::NotHomogeneous);
    }
}
