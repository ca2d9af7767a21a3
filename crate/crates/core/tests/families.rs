use cmcubics_core::cmpoints::{classify_plane_cubic, curve_ring, space_ring, standard_map, CaseLabel};
use cmcubics_core::families::{
    degeneration_chart_check, extend_map, flatness_probe, nodal_family, parametric_ring, ParametricIdeal,
};
use cmcubics_core::{Field, HilbertPolynomial, Ideal, PrimeField, Rationals, RingHandle};

fn triple_line_family() -> (ParametricIdeal<Rationals>, cmcubics_core::RingMap<cmcubics_core::RationalFunctions>) {
    let f = Rationals;
    let curve = parametric_ring(&f, curve_ring(&f).vars()).unwrap();
    let space = parametric_ring(&f, space_ring(&f).vars()).unwrap();
    let fam = ParametricIdeal::from_strs(&curve, &["x*u", "y*u - x*(x + t*y)", "u^2"]).unwrap();
    let map = extend_map(&standard_map(&f), &space, &curve).unwrap();
    (fam, map)
}

#[test]
fn nodal_family_fibers_and_saturation() {
    let f = Rationals;
    let z = nodal_family(&f).unwrap();
    let report = flatness_probe(&z, &[f.from_int(0), f.from_int(1), f.from_int(-2)]).unwrap();
    assert!(report.passed());
    assert_eq!(report.generic, HilbertPolynomial::linear(3, 1));
    let z0 = z.fiber_at(&f.zero()).unwrap();
    let p = Ideal::from_strs(z0.ring(), &["x", "y", "z"]).unwrap();
    let sat = z0.saturate_ideal(&p).unwrap();
    let expected = Ideal::from_strs(z0.ring(), &["z", "x^3 + x^2*w - y^2*w"]).unwrap();
    assert!(sat.equals(&expected).unwrap());
    assert!(!z0.equals(&expected).unwrap());
}

#[test]
fn broken_family_jumps() {
    let f = Rationals;
    let r = parametric_ring(&f, &["x", "y", "z", "w"]).unwrap();
    let fam = ParametricIdeal::from_strs(&r, &["x*z - t*y*w", "x^3"]).unwrap();
    assert!(!flatness_probe(&fam, &[f.zero(), f.one()]).unwrap().passed());
}

#[test]
fn triple_line_specialization() {
    let f = Rationals;
    let (fam, map) = triple_line_family();
    let image = fam.generic_image(&map).unwrap();
    let expected = Ideal::from_strs(image.ring(), &["z", "x^3 + t*x^2*y"]).unwrap();
    assert!(image.ideal().equals(&expected).unwrap());
    assert!(image.excluded().is_empty());
    let p = vec![f.zero(), f.zero(), f.zero(), f.one()];
    let at0 = image.fiber_at(&f.zero()).unwrap();
    assert!(at0.equals(&Ideal::from_strs(at0.ring(), &["z", "x^3"]).unwrap()).unwrap());
    assert_eq!(classify_plane_cubic(&at0, &p).unwrap().label, CaseLabel::IX);
    // the point is where the double line meets the other line
    assert_eq!(classify_plane_cubic(&image.fiber_at(&f.one()).unwrap(), &p).unwrap().label, CaseLabel::VIII);
    let m = standard_map(&f);
    for c in [1, 2, -1] {
        let c = f.from_int(c);
        let fiber = fam.fiber_at(&c).unwrap().move_to(m.target()).unwrap();
        let direct = cmcubics_core::ring_map_kernel(&m, &fiber).unwrap();
        assert!(image.fiber_at(&c).unwrap().move_to(m.source()).unwrap().equals(&direct).unwrap());
    }
    let flat = flatness_probe(&fam, &[f.zero(), f.one()]).unwrap();
    assert!(flat.passed());
    let fib1 = fam.fiber_at(&f.one()).unwrap();
    assert_eq!(fib1.gens()[1], fib1.ring().parse("y*u - x^2 - x*y").unwrap());
}

#[test]
fn degeneration_table() {
    for row in degeneration_chart_check(&PrimeField::new(7).unwrap()).unwrap() {
        assert!(row.confirmed(), "{row:?}");
    }
    for row in degeneration_chart_check(&Rationals).unwrap() {
        assert!(row.confirmed(), "{row:?}");
    }
}
