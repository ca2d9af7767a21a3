//! First-order deformations: embedded deformations from syzygies, the
//! resolution and regularity checks, and the tangent space of a CM point
//! whose image is a triple line.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cmpoints::{catalog_case, CaseLabel};
use crate::error::{Error, Result};
use crate::groebner::{syzygy_basis, TrackedBasis};
use crate::hilbert::{hilbert_function, hilbert_polynomial, HilbertPolynomial};
use crate::ideal::Ideal;
use crate::linalg::{rank_of, Matrix};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle};
use crate::scalars::{DualNumbers, Field};

/// Coordinates of polynomials in a fixed list of monomials.
struct Coords<'a> {
    index: HashMap<&'a Monomial, usize>,
}

impl<'a> Coords<'a> {
    fn new(monomials: impl IntoIterator<Item = &'a Monomial>) -> Self {
        let mut index = HashMap::new();
        for m in monomials {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
        Coords { index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn of<F: Field>(&self, p: &Polynomial<F>) -> Result<Vec<F::Elem>> {
        let f = p.field();
        let mut v = vec![f.zero(); self.len()];
        for (m, c) in p.terms() {
            let i =
                self.index.get(m).ok_or_else(|| Error::AlignmentFailure(format!("{p} leaves the coordinate space")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }
}

/// Embedded first-order deformations `g_i + eps*h_i`.
#[derive(Clone, Debug)]
pub struct DeformationBasis<F: Field> {
    pub ideal: Ideal<F>,
    pub generators: Vec<Polynomial<F>>,
    pub degrees: Vec<u32>,
    pub syzygies: Vec<Vec<Polynomial<F>>>,
    /// Standard monomials of `(S/I)_{d_i}` for each generator.
    pub monomials: Vec<Vec<Monomial>>,
    /// Perturbation tuples `(h_1, ..., h_m)` in normal form.
    pub basis: Vec<Vec<Polynomial<F>>>,
    /// `witnesses[k][j]`: corrections `r'` lifting syzygy `j` for basis element `k`.
    pub witnesses: Vec<Vec<Vec<Polynomial<F>>>>,
}

impl<F: Field> DeformationBasis<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    /// Flattened coordinates of a tuple after reduction modulo `I`.
    fn tuple_coords(&self, tuple: &[Polynomial<F>]) -> Result<Vec<F::Elem>> {
        if tuple.len() != self.generators.len() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Vec::new();
        for (h, mons) in tuple.iter().zip(&self.monomials) {
            out.extend(Coords::new(mons).of(&self.ideal.normal_form(h)?)?);
        }
        Ok(out)
    }

    fn basis_matrix(&self) -> Result<Vec<Vec<F::Elem>>> {
        self.basis.iter().map(|t| self.tuple_coords(t)).collect()
    }

    /// Coefficients of `tuple` in the basis, if it is a deformation.
    pub fn coordinates(&self, tuple: &[Polynomial<F>]) -> Result<Option<Vec<F::Elem>>> {
        let f = self.ring().field();
        let target = self.tuple_coords(tuple)?;
        let rows = self.basis_matrix()?;
        if rows.is_empty() {
            return Ok(target.iter().all(|c| f.is_zero(c)).then(Vec::new));
        }
        Ok(Matrix::from_rows(f, rows).transpose().solve(&target))
    }

    pub fn contains(&self, tuple: &[Polynomial<F>]) -> Result<bool> {
        Ok(self.coordinates(tuple)?.is_some())
    }

    /// The deformation whose entries at `Some` positions are the given
    /// ones, and whether that completion is unique.
    pub fn complete(&self, fixed: &[Option<Polynomial<F>>]) -> Result<Option<(Vec<Polynomial<F>>, bool)>> {
        let f = self.ring().field();
        if fixed.len() != self.generators.len() {
            return Err(Error::ContextMismatch);
        }
        let rows = self.basis_matrix()?;
        let mut offset = 0;
        let mut picked = Vec::new();
        let mut target = Vec::new();
        for (i, mons) in self.monomials.iter().enumerate() {
            if let Some(h) = &fixed[i] {
                picked.extend(offset..offset + mons.len());
                target.extend(Coords::new(mons).of(&self.ideal.normal_form(h)?)?);
            }
            offset += mons.len();
        }
        let restricted: Vec<Vec<F::Elem>> =
            picked.iter().map(|&j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let m = Matrix::from_rows(f, restricted);
        let Some(c) = m.solve(&target) else { return Ok(None) };
        let unique = m.rank() == self.dimension();
        let tuple = (0..self.generators.len())
            .map(|i| self.basis.iter().zip(&c).fold(self.ring().zero(), |acc, (t, ck)| &acc + &t[i].scale(ck)))
            .collect();
        Ok(Some((tuple, unique)))
    }

    /// `sum (r_i + eps r'_i)(g_i + eps h_i) = 0` over the dual numbers for
    /// every basis element and syzygy.
    pub fn verify_witnesses(&self) -> Result<bool> {
        let f = self.ring().field().clone();
        let dual = DualNumbers::new(f.clone());
        let dring = PolyRing::new(dual.clone(), self.ring().vars())?;
        let lift = |p: &Polynomial<F>| p.map_coefficients(&dring, |c| Ok(dual.lift(c.clone())));
        let eps_lift = |p: &Polynomial<F>| p.map_coefficients(&dring, |c| Ok(dual.make(f.zero(), c.clone())));
        for (tuple, lifts) in self.basis.iter().zip(&self.witnesses) {
            for (syz, corr) in self.syzygies.iter().zip(lifts) {
                let mut acc = dring.zero();
                for i in 0..self.generators.len() {
                    let r = &lift(&syz[i])? + &eps_lift(&corr[i])?;
                    let g = &lift(&self.generators[i])? + &eps_lift(&tuple[i])?;
                    acc = &acc + &(&r * &g);
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Solves `NF(sum r_i h_i) = 0` for every generating syzygy `r`.
pub fn embedded_deformations<F: Field>(ideal: &Ideal<F>) -> Result<DeformationBasis<F>> {
    let ring = ideal.ring().clone();
    let f = ring.field().clone();
    let generators = ideal.gens().to_vec();
    if generators.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let degrees: Vec<u32> = generators.iter().map(|g| g.total_degree().unwrap_or(0)).collect();
    let gb = ideal.basis();
    let monomials: Vec<Vec<Monomial>> = degrees.iter().map(|&d| gb.standard_monomials(d)).collect();
    let syzygies = if generators.is_empty() { Vec::new() } else { syzygy_basis(&ring, &generators)?.syzygies };
    // unknowns: (generator, standard monomial)
    let unknowns: Vec<(usize, &Monomial)> =
        monomials.iter().enumerate().flat_map(|(i, ms)| ms.iter().map(move |m| (i, m))).collect();
    let mut columns: Vec<Vec<Polynomial<F>>> = vec![Vec::new(); unknowns.len()];
    for syz in &syzygies {
        for (k, (i, m)) in unknowns.iter().enumerate() {
            columns[k].push(gb.normal_form(&syz[*i].mul_monomial(m))?);
        }
    }
    let images: Vec<Monomial> =
        columns.iter().flat_map(|c| c.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))).collect();
    let coords = Coords::new(&images);
    let width = coords.len();
    // one block of rows per syzygy
    let mut rows = vec![vec![f.zero(); unknowns.len()]; width * syzygies.len()];
    for (k, col) in columns.iter().enumerate() {
        for (j, p) in col.iter().enumerate() {
            for (r, v) in coords.of(p)?.into_iter().enumerate() {
                rows[j * width + r][k] = v;
            }
        }
    }
    let null = if rows.is_empty() {
        (0..unknowns.len())
            .map(|k| (0..unknowns.len()).map(|j| if j == k { f.one() } else { f.zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(&f, rows).nullspace()
    };
    let basis: Vec<Vec<Polynomial<F>>> = null
        .iter()
        .map(|v| {
            (0..generators.len())
                .map(|i| {
                    Polynomial::from_terms(
                        &ring,
                        unknowns
                            .iter()
                            .zip(v)
                            .filter(|((gi, _), _)| *gi == i)
                            .map(|((_, m), c)| ((*m).clone(), c.clone())),
                    )
                })
                .collect()
        })
        .collect();
    let tracked = TrackedBasis::compute(&ring, &generators, MonomialOrder::GrevLex)?;
    let mut witnesses = Vec::with_capacity(basis.len());
    for tuple in &basis {
        let mut per_syz = Vec::with_capacity(syzygies.len());
        for syz in &syzygies {
            let sum = syz.iter().zip(tuple).fold(ring.zero(), |acc, (r, h)| &acc + &(r * h));
            let expr = tracked
                .express(&sum)?
                .ok_or_else(|| Error::AlignmentFailure("syzygy condition not in the ideal".into()))?;
            per_syz.push(expr.into_iter().map(|e| -e).collect());
        }
        witnesses.push(per_syz);
    }
    Ok(DeformationBasis { ideal: ideal.clone(), generators, degrees, syzygies, monomials, basis, witnesses })
}

/// Three quadrics with two linear syzygies.
pub fn resolution_check<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    let gens = ideal.gens();
    if gens.len() != 3 || gens.iter().any(|g| !g.is_homogeneous() || g.total_degree() != Some(2)) {
        return Ok(false);
    }
    let syz = syzygy_basis(ideal.ring(), gens)?;
    Ok(syz.syzygies.len() == 2
        && syz.syzygies.iter().flatten().all(|e| e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(1))))
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub hilbert_polynomial: HilbertPolynomial,
    /// `(t, HF(t))` for `t = 1..=8`.
    pub values: Vec<(u32, usize)>,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.values.iter().all(|&(t, v)| v == 3 * t as usize + 1)
    }
}

/// `HF(t) = 3t + 1` for `1 <= t <= 8`, in particular `HF(1) = 4`.
pub fn regularity_check<F: Field>(ideal: &Ideal<F>) -> Result<RegularityReport> {
    let values = (1..=8).map(|t| Ok((t, hilbert_function(ideal, t)?))).collect::<Result<Vec<_>>>()?;
    Ok(RegularityReport { hilbert_polynomial: hilbert_polynomial(ideal)?, values })
}

/// The explicit deformation of `(xu, yu - x^2, u^2)` with parameters `a1..a12`.
pub const TRIPLE_LINE_FAMILY: [&str; 3] = [
    "a1*x^2 + a2*x*y + a3*x*w + a4*y^2 + a5*y*w + a6*w*u",
    "a7*x^2 + a8*x*y + a9*x*w + a10*y^2 + a11*y*w + a12*w*u",
    "(a2 + a10)*x^2 + a4*x*y + a5*x*w + (a3 + a11)*w*u",
];

/// Reference list of functionals on `(a, b)` claimed constant on isomorphism classes.
pub const REFERENCE_FUNCTIONALS: [&str; 12] = [
    "a2 - a10",
    "a3 - a11",
    "a4",
    "a5",
    "b2 + 1/3*(a8 - a1)",
    "b3 + 1/2*a9",
    "b4 - a6",
    "b7 - a12",
    "b9",
    "b10",
    "b11",
    "b12",
];

/// The reference list with `b4 - a6` replaced by `b3 - a6`; `b4` is moved by
/// `x -> x + eps*s4*u` while every `a_i` stays fixed.
pub const INVARIANT_FUNCTIONALS: [&str; 12] = [
    "a2 - a10",
    "a3 - a11",
    "a4",
    "a5",
    "b2 + 1/3*(a8 - a1)",
    "b3 + 1/2*a9",
    "b3 - a6",
    "b7 - a12",
    "b9",
    "b10",
    "b11",
    "b12",
];

fn parameter_ring<F: Field>(field: &F) -> Result<Arc<PolyRing<F>>> {
    let names: Vec<String> = (1..=12).map(|i| format!("a{i}")).chain((1..=16).map(|i| format!("b{i}"))).collect();
    PolyRing::new(field.clone(), &names)
}

/// The perturbation tuple of the explicit family at `a`.
pub fn triple_line_tuple<F: Field>(ring: &Arc<PolyRing<F>>, a: &[F::Elem]) -> Result<Vec<Polynomial<F>>> {
    let f = ring.field();
    let names: Vec<String> = ring.vars().iter().cloned().chain((1..=12).map(|i| format!("a{i}"))).collect();
    let big = PolyRing::new(f.clone(), &names)?;
    let n = ring.nvars();
    let mut images: Vec<Polynomial<F>> = (0..n).map(|i| ring.var(i)).collect();
    images.extend(a.iter().map(|c| ring.constant(c.clone())));
    TRIPLE_LINE_FAMILY.iter().map(|s| big.parse(s)?.substitute(&images)).collect()
}

/// How the explicit family sits inside the solved deformation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyContainment {
    pub dimension: usize,
    /// Unit directions `a = e_k` whose tuple is a deformation.
    pub contained: usize,
    /// Rank of the twelve directions inside the solved space.
    pub rank: usize,
    /// Completing `(p1, p2)` alone reproduces the listed `p3`, uniquely.
    pub forced_third: bool,
}

impl FamilyContainment {
    pub fn passed(&self) -> bool {
        self.dimension == 12 && self.contained == 12 && self.rank == 12 && self.forced_third
    }
}

/// Checks [`TRIPLE_LINE_FAMILY`] against `embedded_deformations` of the triple line.
pub fn triple_line_family_check<F: Field>(field: &F) -> Result<FamilyContainment> {
    let pt = catalog_case(CaseLabel::IX, field);
    let ring = pt.ideal.ring().clone();
    let defs = embedded_deformations(&pt.ideal)?;
    let unit =
        |k: usize| -> Vec<F::Elem> { (0..12).map(|j| if j == k { field.one() } else { field.zero() }).collect() };
    let mut contained = 0;
    let mut coords = Vec::with_capacity(12);
    for k in 0..12 {
        let t = triple_line_tuple(&ring, &unit(k))?;
        if let Some(c) = defs.coordinates(&t)? {
            contained += 1;
            coords.push(c);
        }
    }
    let rank = rank_of(field, &coords);
    // a generic parameter: a_k = k + 1
    let a: Vec<F::Elem> = (1..=12).map(|k| field.from_int(k)).collect();
    let tuple = triple_line_tuple(&ring, &a)?;
    let fixed = [Some(tuple[0].clone()), Some(tuple[1].clone()), None];
    let forced_third = match defs.complete(&fixed)? {
        Some((done, unique)) => unique && pt.ideal.normal_form(&(&done[2] - &tuple[2]))?.is_zero(),
        None => false,
    };
    Ok(FamilyContainment { dimension: defs.dimension(), contained, rank, forced_third })
}

#[derive(Clone, Debug)]
pub struct TangentReport<F: Field> {
    pub raw: usize,
    pub action_rank: usize,
    pub quotient: usize,
    /// Rows of the action: `L(e_k)` over `(a1..a12, b1..b16)`.
    pub action: Vec<Vec<F::Elem>>,
    /// Basis of the annihilator of the action.
    pub invariants: Vec<Vec<F::Elem>>,
    /// Comparison of [`REFERENCE_FUNCTIONALS`] with the invariants.
    pub reference: FunctionalMatch,
    pub deformation_dimension: usize,
}

/// How a list of functionals compares with the invariant space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalMatch {
    /// Entries that do not vanish on the action.
    pub not_invariant: Vec<String>,
    pub independent: bool,
    /// Independent, invariant and as many as the quotient dimension.
    pub spans: bool,
}

impl<F: Field> TangentReport<F> {
    pub fn dimensions_ok(&self) -> bool {
        self.raw == 28 && self.action_rank == 16 && self.quotient == 12
    }

    pub fn passed(&self) -> bool {
        self.dimensions_ok() && self.reference.spans
    }

    /// Compares any list of linear forms in `a1..a12, b1..b16`.
    pub fn compare(&self, field: &F, functionals: &[&str]) -> Result<FunctionalMatch> {
        let params = parameter_ring(field)?;
        let mut rows = Vec::with_capacity(functionals.len());
        let mut not_invariant = Vec::new();
        for s in functionals {
            let phi = params
                .parse(s)?
                .linear_coefficients()
                .ok_or_else(|| Error::AlignmentFailure(format!("{s} is not linear")))?;
            let kills = self.action.iter().all(|row| {
                field.is_zero(&row.iter().zip(&phi).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y))))
            });
            if !kills {
                not_invariant.push(s.to_string());
            }
            rows.push(phi);
        }
        let independent = rank_of(field, &rows) == rows.len();
        let spans = independent && not_invariant.is_empty() && rows.len() == self.quotient;
        Ok(FunctionalMatch { not_invariant, independent, spans })
    }
}

/// `eps`-part of a polynomial over the dual numbers.
fn eps_part<F: Field>(p: &Polynomial<DualNumbers<F>>, target: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    p.map_coefficients(target, |c| Ok(c.eps.clone()))
}

/// Tangent space of CM at the triple-line point under linear reparametrizations.
pub fn cm_tangent_triple_line<F: Field>(field: &F) -> Result<TangentReport<F>> {
    let pt = catalog_case(CaseLabel::IX, field);
    let ring = pt.ideal.ring().clone();
    let defs = embedded_deformations(&pt.ideal)?;
    let zero = field.zero();
    let unit = |k: usize, n: usize| -> Vec<F::Elem> {
        (0..n).map(|j| if j == k { field.one() } else { zero.clone() }).collect()
    };

    // a -> tuple, aligned with the solved basis
    let family: Vec<Vec<Polynomial<F>>> =
        (0..12).map(|k| triple_line_tuple(&ring, &unit(k, 12))).collect::<Result<_>>()?;
    let mut family_coords = Vec::with_capacity(12);
    for t in &family {
        family_coords.push(defs.tuple_coords(t)?);
        if !defs.contains(t)? {
            return Err(Error::AlignmentFailure(format!(
                "family direction {:?} is not a deformation of {}",
                t.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                pt.ideal
            )));
        }
    }
    let family_matrix = Matrix::from_rows(field, family_coords.clone()).transpose();
    if family_matrix.rank() != defs.dimension() {
        return Err(Error::AlignmentFailure(format!(
            "family has rank {} but the solved space has dimension {}",
            family_matrix.rank(),
            defs.dimension()
        )));
    }

    // sigma_s for s = e_k, evaluated over k[eps]
    let dual = DualNumbers::new(field.clone());
    let dring = PolyRing::new(dual.clone(), ring.vars())?;
    let lift = |p: &Polynomial<F>| p.map_coefficients(&dring, |c| Ok(dual.lift(c.clone())));
    let n = ring.nvars();
    let mut action_rows = Vec::with_capacity(16);
    for k in 0..16 {
        let (var, coef) = (k / 4, k % 4);
        let images: Vec<Polynomial<DualNumbers<F>>> = (0..n)
            .map(|v| {
                let base = dring.var(v);
                if v == var {
                    &base + &dring.var(coef).scale(&dual.epsilon())
                } else {
                    base
                }
            })
            .collect();
        let mut dh = Vec::with_capacity(3);
        for g in &defs.generators {
            dh.push(eps_part(&lift(g)?.substitute(&images)?, &ring)?);
        }
        let da = family_matrix
            .solve(&defs.tuple_coords(&dh)?)
            .ok_or_else(|| Error::AlignmentFailure("action leaves the family".into()))?;
        // phi(x) = x, phi(y) = y, phi(z) = 0, phi(w) = w
        let mut db = Vec::with_capacity(16);
        for phi in pt.map.images() {
            let moved = eps_part(&lift(phi)?.substitute(&images)?, &ring)?;
            db.extend((0..n).map(|j| moved.coefficient(&Monomial::var(n, j))));
        }
        action_rows.push(da.into_iter().chain(db).collect::<Vec<_>>());
    }
    let raw = 12 + 16;
    let action = Matrix::from_rows(field, action_rows.clone());
    let action_rank = action.rank();
    let quotient = raw - action_rank;
    let invariants = action.nullspace();
    debug_assert_eq!(invariants.len(), quotient);

    let mut report = TangentReport {
        raw,
        action_rank,
        quotient,
        action: action_rows,
        invariants,
        reference: FunctionalMatch { not_invariant: Vec::new(), independent: false, spans: false },
        deformation_dimension: defs.dimension(),
    };
    report.reference = report.compare(field, &REFERENCE_FUNCTIONALS)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn hyperplane_deforms_in_one_direction() {
        let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        let d = embedded_deformations(&Ideal::from_strs(&r, &["x"]).unwrap()).unwrap();
        assert_eq!(d.dimension(), 1);
        assert_eq!(d.basis[0][0].to_string(), "y");
    }

    #[test]
    fn triple_line_has_twelve() {
        let pt = catalog_case(CaseLabel::IX, &Rationals);
        let d = embedded_deformations(&pt.ideal).unwrap();
        assert_eq!(d.dimension(), 12);
        assert!(d.verify_witnesses().unwrap());
    }

    #[test]
    fn explicit_family_is_forced() {
        let rep = triple_line_family_check(&Rationals).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn resolution_shapes() {
        let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        assert!(!resolution_check(&Ideal::from_strs(&r, &["x^2", "y^3"]).unwrap()).unwrap());
        let pt = catalog_case(CaseLabel::IX, &Rationals);
        assert!(resolution_check(&pt.ideal).unwrap());
    }

    #[test]
    fn regularity_fails_for_zero_ideal() {
        let r = crate::cmpoints::curve_ring(&Rationals);
        let rep = regularity_check(&Ideal::zero(&r)).unwrap();
        assert_eq!(rep.values[0], (1, 4));
        assert_eq!(rep.values[1], (2, 10));
        assert!(!rep.passed());
    }

    #[test]
    fn tangent_space_over_gf7() {
        let rep = cm_tangent_triple_line(&PrimeField::new(7).unwrap()).unwrap();
        assert_eq!((rep.raw, rep.action_rank, rep.quotient), (28, 16, 12));
        assert_eq!(rep.reference.not_invariant, ["b4 - a6"]);
        assert!(rep.compare(&PrimeField::new(7).unwrap(), &INVARIANT_FUNCTIONALS).unwrap().spans);
    }
}
