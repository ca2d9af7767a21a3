//! Affine chart around the image point: `A = k[C']` inside `B = k[C]`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{into_w_chart, CMPoint};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::rank_of;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle};
use crate::scalars::Field;

pub(crate) struct Chart<F: Field> {
    curve: Arc<PolyRing<F>>,
    /// Curve variables followed by one tag per image-space variable.
    big: Arc<PolyRing<F>>,
    tagged: GroebnerBasis<F>,
    /// `I + (phi(w) - 1)` in the curve ring.
    b_basis: GroebnerBasis<F>,
    images: Vec<Polynomial<F>>,
    point: Vec<F::Elem>,
}

impl<F: Field> Chart<F> {
    pub(crate) fn new(pt: &CMPoint<F>) -> Result<Self> {
        let pt = into_w_chart(pt)?;
        let curve = pt.ideal.ring().clone();
        let src = pt.map.source();
        let (nc, ns) = (curve.nvars(), src.nvars());
        let names: Vec<String> =
            curve.vars().iter().cloned().chain(src.vars().iter().map(|v| format!("{v}_a"))).collect();
        let big = PolyRing::new(curve.field().clone(), &names)?;
        let emb: Vec<usize> = (0..nc).collect();
        let images = pt.map.images().to_vec();
        let ell = &images[ns - 1];
        let dehom = &ell.embed(&big, &emb) - &big.one();
        let mut gens: Vec<Polynomial<F>> = pt.ideal.gens().iter().map(|g| g.embed(&big, &emb)).collect();
        gens.push(dehom);
        for (i, img) in images.iter().enumerate() {
            gens.push(&big.var(nc + i) - &img.embed(&big, &emb));
        }
        let tagged = GroebnerBasis::compute(&big, &gens, MonomialOrder::Elimination(nc))?;
        let mut b_gens = pt.ideal.gens().to_vec();
        b_gens.push(ell - &curve.one());
        let b_basis = GroebnerBasis::compute(&curve, &b_gens, MonomialOrder::GrevLex)?;
        Ok(Chart { curve, big, tagged, b_basis, images, point: pt.point })
    }

    fn ncurve(&self) -> usize {
        self.curve.nvars()
    }

    /// Monomials in the curve variables that generate `B` as an `A`-module.
    pub(crate) fn module_generators(&self) -> Result<Vec<Monomial>> {
        let nc = self.ncurve();
        let pure: Vec<Monomial> =
            self.tagged.leading_monomials().into_iter().filter(|m| m.exps()[nc..].iter().all(|&e| e == 0)).collect();
        let mut bounds = Vec::with_capacity(nc);
        for v in 0..nc {
            let k =
                pure.iter().filter(|m| m.support().all(|i| i == v)).map(|m| m.exp(v)).min().ok_or(Error::NotFinite)?;
            bounds.push(k);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; nc];
        loop {
            let mut full = exps.clone();
            full.resize(self.big.nvars(), 0);
            let m = Monomial::new(full);
            if !pure.iter().any(|p| p.divides(&m)) {
                out.push(m);
            }
            // odometer over the box of exponents
            let mut i = 0;
            while i < nc {
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == nc {
                break;
            }
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
        Ok(out)
    }

    /// Generators of the maximal ideal of the point, written in the tags.
    fn point_ideal(&self) -> Result<Vec<Polynomial<F>>> {
        let f = self.curve.field();
        let nc = self.ncurve();
        let ns = self.point.len();
        let pw = &self.point[ns - 1];
        (0..ns - 1)
            .map(|i| {
                let c = f.div(&self.point[i], pw)?;
                Ok(&self.big.var(nc + i) - &self.big.var(nc + ns - 1).scale(&c))
            })
            .collect()
    }

    fn in_a(&self, p: &Polynomial<F>) -> Result<bool> {
        let nf = self.tagged.normal_form(p)?;
        Ok(nf.support().iter().all(|&v| v >= self.ncurve()))
    }

    /// `m_p * b` lies in `A` for every module generator `b`.
    pub(crate) fn moves_b_into_a(&self) -> Result<bool> {
        let mp = self.point_ideal()?;
        for b in self.module_generators()? {
            for g in &mp {
                if !self.in_a(&g.mul_monomial(&b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `dim V_d - dim W_d` where `V_d` is the image of polynomials of degree
    /// `<= d` in `B` and `W_d` the image of pulled-back ones.
    pub(crate) fn dim_b_over_a(&self, d: u32) -> Result<usize> {
        let basis: Vec<Monomial> = (0..=d).flat_map(|e| self.b_basis.standard_monomials(e)).collect();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let f = self.curve.field();
        let coords = |p: &Polynomial<F>| -> Vec<F::Elem> {
            let mut v = vec![f.zero(); basis.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let img_nf = self.images.iter().map(|g| self.b_basis.normal_form(g)).collect::<Result<Vec<_>>>()?;
        let mut layer = vec![self.b_basis.normal_form(&self.curve.one())?];
        let mut vectors: Vec<Vec<F::Elem>> = vec![coords(&layer[0])];
        for _ in 0..d {
            // products of a layer with each image, up to commutativity
            let mut next = Vec::new();
            for p in &layer {
                for g in &img_nf {
                    next.push(self.b_basis.normal_form(&(p * g))?);
                }
            }
            vectors.extend(next.iter().map(&coords));
            layer = reduce_span(f, next, &coords);
        }
        Ok(basis.len() - rank_of(f, &vectors))
    }
}

/// Keeps a linearly independent subset spanning the same space.
fn reduce_span<F: Field>(
    f: &F,
    polys: Vec<Polynomial<F>>,
    coords: &impl Fn(&Polynomial<F>) -> Vec<F::Elem>,
) -> Vec<Polynomial<F>> {
    let mut kept: Vec<Polynomial<F>> = Vec::new();
    let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
    for p in polys {
        vecs.push(coords(&p));
        if rank_of(f, &vecs) > kept.len() {
            kept.push(p);
        } else {
            vecs.pop();
        }
    }
    kept
}

/// `dim_k` of the `B/A` filtration piece of degree `d`.
pub fn dim_b_over_a<F: Field>(pt: &CMPoint<F>, d: u32) -> Result<usize> {
    Chart::new(pt)?.dim_b_over_a(d)
}

/// Whether the maximal ideal of the point multiplies `B` into `A`.
pub fn moves_b_into_a<F: Field>(pt: &CMPoint<F>) -> Result<bool> {
    Chart::new(pt)?.moves_b_into_a()
}

/// Module generators of `B` over `A`, as monomials in the curve ring.
pub fn extension_generators<F: Field>(pt: &CMPoint<F>) -> Result<Vec<Polynomial<F>>> {
    let chart = Chart::new(pt)?;
    let nc = chart.ncurve();
    Ok(chart
        .module_generators()?
        .into_iter()
        .map(|m| {
            let exps = m.exps()[..nc].to_vec();
            Polynomial::from_terms(&chart.curve, [(Monomial::new(exps), chart.curve.field().one())])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmpoints::{catalog_case, CaseLabel};
    use crate::scalars::Rationals;

    #[test]
    fn triple_line_chart() {
        let pt = catalog_case(CaseLabel::IX, &Rationals);
        let chart = Chart::new(&pt).unwrap();
        assert_eq!(chart.dim_b_over_a(6).unwrap(), 1);
        assert!(chart.moves_b_into_a().unwrap());
        let gens = extension_generators(&pt).unwrap();
        assert_eq!(gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["1", "u"]);
    }
}
