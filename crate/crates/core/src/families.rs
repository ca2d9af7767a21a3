//! One-parameter families over `k(t)`: fibers, generic images, flatness
//! probes and degenerations between point types.

use std::sync::Arc;

use crate::cmpoints::{classify_plane_cubic, curve_ring, space_ring, CaseLabel};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_polynomial, HilbertPolynomial};
use crate::ideal::{ring_map_kernel, Ideal};
use crate::poly::{PolyRing, Polynomial, RingHandle, RingMap};
use crate::scalars::{ExactRoots, Field, RationalFunctions};

pub type ParamField<B> = RationalFunctions<B>;

/// Ring with the given variable names over `k(t)`.
pub fn parametric_ring<B: Field, S: AsRef<str>>(base: &B, vars: &[S]) -> Result<Arc<PolyRing<ParamField<B>>>> {
    PolyRing::new(RationalFunctions::new(base.clone()), vars)
}

/// Ideal over `k(t)` with polynomial coefficients, plus the parameter
/// values where specialization is not allowed.
#[derive(Clone, Debug)]
pub struct ParametricIdeal<B: Field> {
    ideal: Ideal<ParamField<B>>,
    excluded: Vec<B::Elem>,
}

impl<B: ExactRoots> ParametricIdeal<B> {
    /// Generators must lie in `k[t][vars]`.
    pub fn new(ideal: Ideal<ParamField<B>>) -> Result<Self> {
        let qt = ideal.ring().field().clone();
        for g in ideal.gens() {
            if g.terms().iter().any(|(_, c)| !qt.is_polynomial(c)) {
                return Err(Error::BadContext(format!("generator {g} has a denominator in t")));
            }
        }
        Ok(ParametricIdeal { ideal, excluded: Vec::new() })
    }

    pub fn from_strs(ring: &Arc<PolyRing<ParamField<B>>>, gens: &[&str]) -> Result<Self> {
        Self::new(Ideal::from_strs(ring, gens)?)
    }

    /// Clears denominators generator by generator and excludes their roots.
    pub fn from_rational(ideal: &Ideal<ParamField<B>>) -> Result<Self> {
        let qt = ideal.ring().field().clone();
        let base = qt.base().clone();
        let mut excluded: Vec<B::Elem> = Vec::new();
        let mut gens = Vec::new();
        for g in ideal.gens() {
            let mut lcm = crate::scalars::UniPoly::constant(&base, base.one());
            for (_, c) in g.terms() {
                let d = c.denominator();
                let common = lcm.gcd(&base, d);
                lcm = lcm.mul(&base, d).divrem(&base, &common)?.0;
            }
            for r in base.roots(&lcm) {
                if !excluded.contains(&r) {
                    excluded.push(r);
                }
            }
            gens.push(g.scale(&qt.from_poly(lcm)));
        }
        Ok(ParametricIdeal { ideal: Ideal::new(ideal.ring(), gens)?, excluded })
    }

    pub fn ideal(&self) -> &Ideal<ParamField<B>> {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing<ParamField<B>>> {
        self.ideal.ring()
    }

    pub fn base(&self) -> &B {
        self.ring().field().base()
    }

    pub fn excluded(&self) -> &[B::Elem] {
        &self.excluded
    }

    /// Ring over `k` with the same variables.
    pub fn fiber_ring(&self) -> Result<Arc<PolyRing<B>>> {
        PolyRing::new(self.base().clone(), self.ring().vars())
    }

    /// Substitutes `t = c` in the generators.
    pub fn fiber_at(&self, c: &B::Elem) -> Result<Ideal<B>> {
        if self.excluded.contains(c) {
            return Err(Error::ExcludedParameter(self.base().format_elem(c)));
        }
        let ring = self.fiber_ring()?;
        let gens = self.ideal.gens().iter().map(|g| specialize(g, &ring, c)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Kernel of `map` over `k(t)`; denominators of the result become exclusions.
    pub fn generic_image(&self, map: &RingMap<ParamField<B>>) -> Result<ParametricIdeal<B>> {
        if !map.is_graded() {
            return Err(Error::NotHomogeneous);
        }
        let kernel = ring_map_kernel(map, &self.ideal)?;
        let reduced = Ideal::new(kernel.ring(), kernel.basis().elements())?;
        let mut out = ParametricIdeal::from_rational(&reduced)?;
        for c in &self.excluded {
            if !out.excluded.contains(c) {
                out.excluded.push(c.clone());
            }
        }
        Ok(out)
    }

    pub fn generic_hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        hilbert_polynomial(&self.ideal)
    }
}

/// `t = c` in every coefficient of `p`.
pub fn specialize<B: Field>(
    p: &Polynomial<ParamField<B>>,
    target: &Arc<PolyRing<B>>,
    c: &B::Elem,
) -> Result<Polynomial<B>> {
    let qt = p.field().clone();
    p.map_coefficients(target, |a| qt.eval_at(a, c))
}

/// `k(t)`-version of a map given over `k`.
pub fn extend_map<B: Field>(
    map: &RingMap<B>,
    source: &Arc<PolyRing<ParamField<B>>>,
    target: &Arc<PolyRing<ParamField<B>>>,
) -> Result<RingMap<ParamField<B>>> {
    let qt = target.field().clone();
    let images = map
        .images()
        .iter()
        .map(|g| g.map_coefficients(target, |c| Ok(qt.from_base(c.clone()))))
        .collect::<Result<Vec<_>>>()?;
    RingMap::new(source, target, images)
}

/// Hilbert polynomials of the generic fiber and of sample fibers.
#[derive(Clone, Debug)]
pub struct FlatnessReport<E> {
    pub generic: HilbertPolynomial,
    pub samples: Vec<(E, HilbertPolynomial)>,
}

impl<E> FlatnessReport<E> {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|(_, hp)| *hp == self.generic)
    }
}

pub fn flatness_probe<B: ExactRoots>(
    family: &ParametricIdeal<B>,
    samples: &[B::Elem],
) -> Result<FlatnessReport<B::Elem>> {
    let generic = family.generic_hilbert_polynomial()?;
    let samples = samples
        .iter()
        .map(|c| Ok((c.clone(), hilbert_polynomial(&family.fiber_at(c)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlatnessReport { generic, samples })
}

/// Generators `f1, f2, f3, q` of the family of twisted cubics degenerating
/// to a plane nodal cubic with an embedded point.
pub const NODAL_FAMILY: [&str; 4] = ["x*z - t*y*w", "y*z - t*x*(x + w)", "z^2 - t^2*w*(x + w)", "x^3 + x^2*w - y^2*w"];

pub fn nodal_family<B: ExactRoots>(base: &B) -> Result<ParametricIdeal<B>> {
    ParametricIdeal::from_strs(&parametric_ring(base, &["x", "y", "z", "w"])?, &NODAL_FAMILY)
}

/// `y*f1 - x*f2 - t*q == 0`.
pub fn syzygy_identity<B: Field>(f1: &str, f2: &str, q: &str, base: &B) -> Result<bool> {
    let ring = parametric_ring(base, &["x", "y", "z", "w"])?;
    let (f1, f2, q) = (ring.parse(f1)?, ring.parse(f2)?, ring.parse(q)?);
    let t = ring.parse("t")?;
    Ok((&(&(&ring.parse("y")? * &f1) - &(&ring.parse("x")? * &f2)) - &(&t * &q)).is_zero())
}

pub fn syzygy_identity_check<B: Field>(base: &B) -> Result<bool> {
    syzygy_identity(NODAL_FAMILY[0], NODAL_FAMILY[1], NODAL_FAMILY[3], base)
}

/// A family of curves in `k(t)[x,y,w,u]` under the standard projection.
#[derive(Clone, Copy, Debug)]
pub struct Degeneration {
    pub name: &'static str,
    pub source: CaseLabel,
    pub target: CaseLabel,
    pub generators: [&'static str; 3],
}

/// Degenerations checked by [`degeneration_chart_check`].
pub const DEGENERATIONS: [Degeneration; 6] = [
    Degeneration {
        name: "double line meeting a line",
        source: CaseLabel::VIII,
        target: CaseLabel::IX,
        generators: ["x*u", "y*u - x*(x + t*y)", "u^2"],
    },
    Degeneration {
        name: "double line with a disjoint line",
        source: CaseLabel::VII,
        target: CaseLabel::IX,
        generators: ["x*u", "y*u - x*(x + t*w)", "u^2"],
    },
    Degeneration {
        name: "node scaled to a triple line",
        source: CaseLabel::I,
        target: CaseLabel::IX,
        generators: ["x*u - t*y*w", "y*u - x*(x + t*w)", "u^2 - t*w*(x + t*w)"],
    },
    Degeneration {
        name: "cusp scaled to a triple line",
        source: CaseLabel::II,
        target: CaseLabel::IX,
        generators: ["x*u - t*y*w", "y*u - x^2", "u^2 - t*x*w"],
    },
    Degeneration {
        name: "conic and secant scaled to a triple line",
        source: CaseLabel::III,
        target: CaseLabel::IX,
        generators: ["x*u", "y*u - (x^2 + t*y*w)", "u^2 - t*u*w"],
    },
    Degeneration {
        name: "conic and tangent scaled to a double line",
        source: CaseLabel::IV,
        target: CaseLabel::VIII,
        generators: ["x*u - (x^2 + t*y*w)", "y*u", "u^2 - (x^2 + t*y*w)"],
    },
];

/// Outcome for one family.
#[derive(Clone, Debug)]
pub struct DegenerationRow {
    pub name: String,
    pub expected: Option<(CaseLabel, CaseLabel)>,
    /// Classification of the fiber image at `t = 1`.
    pub generic: CaseLabel,
    pub special: CaseLabel,
    pub generic_image: String,
    pub flat: bool,
    /// Generic image specializes to the image of the special fiber.
    pub commutes: bool,
}

impl DegenerationRow {
    /// A real degeneration with the expected endpoints.
    pub fn confirmed(&self) -> bool {
        self.flat
            && self.commutes
            && self.generic != self.special
            && self.expected.is_none_or(|(s, t)| s == self.generic && t == self.special)
    }
}

/// Classifies the two ends of the family `gens` under the standard projection.
pub fn check_degeneration<B: ExactRoots>(
    name: &str,
    gens: &[&str],
    expected: Option<(CaseLabel, CaseLabel)>,
    base: &B,
) -> Result<DegenerationRow> {
    let curve = parametric_ring(base, curve_ring(base).vars())?;
    let space = parametric_ring(base, space_ring(base).vars())?;
    let family = ParametricIdeal::from_strs(&curve, gens)?;
    let map = extend_map(&crate::cmpoints::standard_map(base), &space, &curve)?;
    let image = family.generic_image(&map)?;
    let point = vec![base.zero(), base.zero(), base.zero(), base.one()];
    let (zero, one) = (base.zero(), base.one());
    let generic = classify_plane_cubic(&image.fiber_at(&one)?, &point)?.label;
    let special = classify_plane_cubic(&image.fiber_at(&zero)?, &point)?.label;
    let flat = flatness_probe(&family, &[zero.clone(), one.clone()])?.passed();
    let fiber_map = crate::cmpoints::standard_map(base);
    let mut commutes = true;
    for c in [zero, one] {
        let fiber = family.fiber_at(&c)?.move_to(fiber_map.target())?;
        let direct = ring_map_kernel(&fiber_map, &fiber)?;
        commutes &= image.fiber_at(&c)?.move_to(fiber_map.source())?.equals(&direct)?;
    }
    Ok(DegenerationRow {
        name: name.to_string(),
        expected,
        generic,
        special,
        generic_image: image.ideal().basis().elements().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
        flat,
        commutes,
    })
}

/// Runs every entry of [`DEGENERATIONS`].
pub fn degeneration_chart_check<B: ExactRoots>(base: &B) -> Result<Vec<DegenerationRow>> {
    DEGENERATIONS.iter().map(|d| check_degeneration(d.name, &d.generators, Some((d.source, d.target)), base)).collect()
}

/// The triple-line family `(xu, yu - x(x + ty), u^2)` and its images.
#[derive(Clone, Debug)]
pub struct SpecializationReport {
    pub generic_image: String,
    /// Generic image is `(z, x^3 + t x^2 y)`.
    pub generic_image_ok: bool,
    /// Image of the fiber at `t = 0` is `(z, x^3)`.
    pub special_image_ok: bool,
    /// Classification of the image at `t = 1`.
    pub generic: CaseLabel,
    pub special: CaseLabel,
    /// Generic image then fiber equals fiber then image at `t = 1, 2, -1`.
    pub commutes: bool,
    pub flat: bool,
}

pub const SPECIALIZATION_FAMILY: [&str; 3] = ["x*u", "y*u - x*(x + t*y)", "u^2"];

pub fn specialization_check<B: ExactRoots>(base: &B) -> Result<SpecializationReport> {
    let curve = parametric_ring(base, curve_ring(base).vars())?;
    let space = parametric_ring(base, space_ring(base).vars())?;
    let family = ParametricIdeal::from_strs(&curve, &SPECIALIZATION_FAMILY)?;
    let fiber_map = crate::cmpoints::standard_map(base);
    let image = family.generic_image(&extend_map(&fiber_map, &space, &curve)?)?;
    let generic_image_ok = image.ideal().equals(&Ideal::from_strs(&space, &["z", "x^3 + t*x^2*y"])?)?;
    let point = vec![base.zero(), base.zero(), base.zero(), base.one()];
    let special_fiber = image.fiber_at(&base.zero())?;
    let special_image_ok = special_fiber.equals(&Ideal::from_strs(special_fiber.ring(), &["z", "x^3"])?)?;
    let special = classify_plane_cubic(&special_fiber, &point)?.label;
    let generic = classify_plane_cubic(&image.fiber_at(&base.one())?, &point)?.label;
    let mut commutes = true;
    for c in [1, 2, -1].map(|c| base.from_int(c)) {
        let fiber = family.fiber_at(&c)?.move_to(fiber_map.target())?;
        let direct = ring_map_kernel(&fiber_map, &fiber)?;
        commutes &= image.fiber_at(&c)?.move_to(fiber_map.source())?.equals(&direct)?;
    }
    let flat = flatness_probe(&family, &[base.zero(), base.one()])?.passed();
    Ok(SpecializationReport {
        generic_image: image.ideal().to_string(),
        generic_image_ok,
        special_image_ok,
        generic,
        special,
        commutes,
        flat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn identity_holds_and_breaks() {
        assert!(syzygy_identity_check(&Rationals).unwrap());
        assert!(syzygy_identity_check(&PrimeField::new(7).unwrap()).unwrap());
        let perturbed = "x*z - t*y*w + t*w^2";
        assert!(!syzygy_identity(perturbed, NODAL_FAMILY[1], NODAL_FAMILY[3], &Rationals).unwrap());
    }

    #[test]
    fn fibers_substitute_generators() {
        let z = nodal_family(&Rationals).unwrap();
        let z0 = z.fiber_at(&Rationals.zero()).unwrap();
        let expected = Ideal::from_strs(z0.ring(), &["x*z", "y*z", "z^2", "x^3 + x^2*w - y^2*w"]).unwrap();
        assert_eq!(z0.gens(), expected.gens());
    }

    #[test]
    fn denominators_become_exclusions() {
        let f = Rationals;
        let r = parametric_ring(&f, &["x", "y"]).unwrap();
        let i = Ideal::from_strs(&r, &["x - 1/(t - 2)*y"]).unwrap();
        assert!(ParametricIdeal::new(i.clone()).is_err());
        let p = ParametricIdeal::from_rational(&i).unwrap();
        assert_eq!(p.excluded(), &[f.from_int(2)]);
        assert!(matches!(p.fiber_at(&f.from_int(2)), Err(Error::ExcludedParameter(_))));
        assert_eq!(p.fiber_at(&f.from_int(3)).unwrap().gens()[0].to_string(), "x - y");
    }

    #[test]
    fn specialization_of_the_triple_line() {
        let rep = specialization_check(&Rationals).unwrap();
        assert!(rep.generic_image_ok && rep.special_image_ok && rep.commutes && rep.flat);
        assert_eq!((rep.generic, rep.special), (CaseLabel::VIII, CaseLabel::IX));
    }

    #[test]
    fn constant_family_is_not_a_degeneration() {
        let row = check_degeneration("constant", &["x*u", "y*u - x^2", "u^2"], None, &Rationals).unwrap();
        assert_eq!((row.generic, row.special), (CaseLabel::IX, CaseLabel::IX));
        assert!(!row.confirmed());
    }
}
