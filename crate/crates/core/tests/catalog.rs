use cmcubics_core::cmpoints::{
    catalog_case, cm_point_for, expected_image, pgl_transform, scheme_image, verify_catalog, with_generator, CaseLabel,
};
use cmcubics_core::{Field, Matrix, PrimeField, Rationals, RingHandle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn origin<F: Field>(f: &F) -> Vec<F::Elem> {
    vec![f.zero(), f.zero(), f.zero(), f.one()]
}

#[test]
fn catalog_passes_over_q() {
    for row in verify_catalog(&Rationals).unwrap() {
        assert!(row.kernel_match, "{}", row.label);
        assert_eq!(row.report.hp_curve.to_string(), "3*t + 1", "{}", row.label);
        assert_eq!(row.report.hp_image.to_string(), "3*t", "{}", row.label);
        assert_eq!(row.report.dim_ba, (1, 1), "{}", row.label);
        assert!(row.report.moves_b_into_a, "{}", row.label);
        assert!(row.report.singular_at_p, "{}", row.label);
    }
}

#[test]
fn catalog_passes_over_gf7() {
    let f = PrimeField::new(7).unwrap();
    assert!(verify_catalog(&f).unwrap().iter().all(|r| r.passed()));
}

#[test]
fn corrupted_generator_fails_image_check() {
    let f = Rationals;
    let pt = catalog_case(CaseLabel::IX, &f);
    let ring = pt.ideal.ring().clone();
    let bad = with_generator(&pt, 2, ring.parse("u^2 - x*w").unwrap()).unwrap();
    let report = cmcubics_core::verify_cm_point(&bad).unwrap();
    assert!(!report.passed());
}

#[test]
fn roundtrip_catalog_points() {
    let f = Rationals;
    for l in CaseLabel::ALL {
        let pt = catalog_case(l, &f);
        let back = cm_point_for(&scheme_image(&pt).unwrap(), &pt.point).unwrap();
        assert_eq!(back.label, Some(l));
        assert!(back.equivalent(&pt).unwrap(), "{l}");
    }
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Matrix<Rationals> {
    let f = Rationals;
    loop {
        let rows: Vec<Vec<_>> = (0..4).map(|_| (0..4).map(|_| f.from_int(rng.gen_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(&f, rows);
        if !f.is_zero(&m.determinant()) {
            return m;
        }
    }
}

#[test]
fn moved_images_reconstruct() {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in CaseLabel::ALL {
        let m = random_invertible(&mut rng);
        let image = pgl_transform(&expected_image(l, &f), &m).unwrap();
        // V(sigma_M J) = M^{-1} V(J)
        let point = m.inverse().unwrap().mul_vec(&origin(&f));
        let pt = cm_point_for(&image, &point).unwrap();
        assert_eq!(pt.label, Some(l));
        assert!(scheme_image(&pt).unwrap().equals(&image).unwrap());
        assert!(cmcubics_core::verify_cm_point(&pt).unwrap().passed(), "{l}");
    }
}

#[test]
fn projection_variant_of_triple_line_still_passes() {
    // phi(z) = x only changes coordinates on the image space
    let f = Rationals;
    let pt = catalog_case(CaseLabel::IX, &f);
    let map = cmcubics_core::RingMap::from_strs(pt.map.source(), pt.map.target(), &["x", "y", "x", "w"]).unwrap();
    let moved = cmcubics_core::CMPoint::new(pt.ideal.clone(), map, origin(&f), None).unwrap();
    assert!(cmcubics_core::verify_cm_point(&moved).unwrap().passed());
}
