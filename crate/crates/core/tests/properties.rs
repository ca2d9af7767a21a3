use std::sync::Arc;

use cmcubics_core::cmpoints::{catalog_case, classify_plane_cubic, expected_image, pgl_transform};
use cmcubics_core::deform::embedded_deformations;
use cmcubics_core::families::{parametric_ring, specialize};
use cmcubics_core::linalg::rank_of;
use cmcubics_core::{
    hilbert_polynomial, syzygy_basis, CaseLabel, Field, GroebnerBasis, Ideal, Matrix, Monomial, MonomialOrder,
    PolyRing, Polynomial, PrimeField, RationalFunctions, Rationals, RingHandle, UniPoly,
};
use proptest::prelude::*;

type Terms = Vec<([u32; 4], i64, i64)>;

fn terms(max_exp: u32, len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), -6i64..=6, 1i64..=4), 0..len)
}

fn poly<F: Field>(ring: &Arc<PolyRing<F>>, terms: &Terms) -> Polynomial<F> {
    let f = ring.field();
    terms.iter().fold(ring.zero(), |acc, (e, n, d)| {
        let c = f.div(&f.from_int(*n), &f.from_int(*d)).unwrap();
        acc + ring.monomial(c, Monomial::new(e.to_vec()))
    })
}

/// A form of degree `d` from coefficient choices indexed into the monomial list.
fn form<F: Field>(ring: &Arc<PolyRing<F>>, d: u32, picks: &[(usize, i64)]) -> Polynomial<F> {
    let monomials = Monomial::all_of_degree(ring.nvars(), d);
    let f = ring.field();
    picks
        .iter()
        .fold(ring.zero(), |acc, &(i, c)| acc + ring.monomial(f.from_int(c), monomials[i % monomials.len()].clone()))
}

fn picks(len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..100, -3i64..=3), 1..len)
}

fn gf7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

fn ring4<F: Field>(f: &F) -> Arc<PolyRing<F>> {
    PolyRing::new(f.clone(), &["x", "y", "z", "w"]).unwrap()
}

/// Row operations `row_i += k row_j`; the product has determinant 1.
fn elementary_ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..10)
}

fn unimodular<F: Field>(f: &F, ops: &[(usize, usize, i64)]) -> Matrix<F> {
    let mut m = Matrix::identity(f, 4);
    for &(i, j, k) in ops.iter().filter(|(i, j, _)| i != j) {
        for c in 0..4 {
            let v = f.add(m.get(i, c), &f.mul(&f.from_int(k), m.get(j, c)));
            m.set(i, c, v);
        }
    }
    m
}

fn label() -> impl Strategy<Value = CaseLabel> {
    (0usize..9).prop_map(|i| CaseLabel::ALL[i])
}

fn coordinates<F: Field>(p: &Polynomial<F>, monomials: &[Monomial]) -> Vec<F::Elem> {
    monomials.iter().map(|m| p.coefficient(m)).collect()
}

/// Degree-`d` membership by linear algebra on the products `m * g`.
fn macaulay_member<F: Field>(ideal: &Ideal<F>, p: &Polynomial<F>, d: u32) -> bool {
    let n = ideal.ring().nvars();
    let monomials = Monomial::all_of_degree(n, d);
    let mut rows: Vec<Vec<F::Elem>> = ideal
        .gens()
        .iter()
        .filter(|g| g.total_degree().is_some_and(|e| e <= d))
        .flat_map(|g| {
            Monomial::all_of_degree(n, d - g.total_degree().unwrap()).into_iter().map(move |m| g.mul_monomial(&m))
        })
        .map(|q| coordinates(&q, &monomials))
        .collect();
    let f = ideal.ring().field();
    let rank = rank_of(f, &rows);
    rows.push(coordinates(p, &monomials));
    rank_of(f, &rows) == rank
}

/// Compares the dimension of degree-`d` syzygies, found by linear algebra,
/// with the span of monomial multiples of the computed generators.
fn syzygies_generate_in_degree<F: Field>(ideal: &Ideal<F>, d: u32) -> bool {
    let ring = ideal.ring();
    let (f, n) = (ring.field(), ring.nvars());
    let gens = ideal.gens();
    let degrees: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap()).collect();
    let slots: Vec<Vec<Monomial>> =
        degrees.iter().map(|&e| if e <= d { Monomial::all_of_degree(n, d - e) } else { Vec::new() }).collect();
    let target = &Monomial::all_of_degree(n, d);
    let images: Vec<Vec<F::Elem>> = gens
        .iter()
        .zip(&slots)
        .flat_map(|(g, ms)| ms.iter().map(move |m| coordinates(&g.mul_monomial(m), target)))
        .collect();
    let kernel = images.len() - rank_of(f, &images);

    let syz = syzygy_basis(ring, gens).unwrap();
    assert!(syz.verify());
    let mut multiples = Vec::new();
    for s in &syz.syzygies {
        let Some(e) = syz.degree_of(s) else { continue };
        if e > d {
            continue;
        }
        for m in Monomial::all_of_degree(n, d - e) {
            let v: Vec<F::Elem> =
                s.iter().zip(&slots).flat_map(|(c, ms)| coordinates(&c.mul_monomial(&m), ms)).collect();
            multiples.push(v);
        }
    }
    rank_of(f, &multiples) == kernel
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_over_q(t in terms(3, 6)) {
        let ring = ring4(&Rationals);
        let p = poly(&ring, &t);
        prop_assert_eq!(ring.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn print_then_parse_over_gf7(t in terms(3, 6)) {
        let ring = ring4(&gf7());
        let p = poly(&ring, &t);
        prop_assert_eq!(ring.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn print_then_parse_over_qt(t in terms(2, 5), num in prop::collection::vec(-3i64..=3, 1..3), pole in 1i64..=4) {
        let qt = RationalFunctions::new(Rationals);
        let ring = parametric_ring(&Rationals, &["x", "y", "z", "w"]).unwrap();
        let num = UniPoly::from_coeffs(&Rationals, num.iter().map(|&c| Rationals.from_int(c)).collect());
        let den = UniPoly::from_coeffs(&Rationals, vec![Rationals.from_int(pole), Rationals.one()]);
        let c = qt.from_parts(num, den).unwrap();
        let p = poly(&ring, &t).scale(&c);
        prop_assert_eq!(ring.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in terms(2, 4), b in terms(2, 4), c in terms(2, 4)) {
        let ring = ring4(&Rationals);
        let (a, b, c) = (poly(&ring, &a), poly(&ring, &b), poly(&ring, &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).total_degree().unwrap_or(0), if a.is_zero() || b.is_zero() { 0 } else {
            a.total_degree().unwrap() + b.total_degree().unwrap()
        });
    }

    #[test]
    fn fiber_commutes_with_arithmetic(a in terms(2, 4), b in terms(2, 4), shift in -2i64..=2, c in -2i64..=2) {
        let qt = RationalFunctions::new(Rationals);
        let ring = parametric_ring(&Rationals, &["x", "y", "z", "w"]).unwrap();
        let fiber = ring4(&Rationals);
        // (t + shift) and 1/(t - 3) mix in the parameter without poles at c
        let lin = qt.from_poly(UniPoly::from_coeffs(&Rationals, vec![Rationals.from_int(shift), Rationals.one()]));
        let pole = qt.inv(&qt.from_poly(UniPoly::from_coeffs(&Rationals, vec![Rationals.from_int(-3), Rationals.one()]))).unwrap();
        let p = poly(&ring, &a).scale(&lin);
        let q = poly(&ring, &b).scale(&pole);
        let at = Rationals.from_int(c);
        let s = |x: &Polynomial<RationalFunctions>| specialize(x, &fiber, &at).unwrap();
        prop_assert_eq!(s(&(&p * &q)), s(&p) * s(&q));
        prop_assert_eq!(s(&(&p + &q)), s(&p) + s(&q));
        prop_assert_eq!(s(&(&p - &q)), s(&p) - s(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_ignores_generator_order(
        quadrics in prop::collection::vec(picks(5), 2..4),
        seed in any::<u64>(),
        order in prop_oneof![Just(MonomialOrder::GrevLex), Just(MonomialOrder::Lex)],
    ) {
        let ring = ring4(&gf7());
        let gens: Vec<_> = quadrics.iter().map(|p| form(&ring, 2, p)).collect();
        let mut shuffled = gens.clone();
        shuffled.rotate_left((seed % gens.len() as u64) as usize);
        if seed % 2 == 1 {
            shuffled.reverse();
        }
        let a = GroebnerBasis::compute(&ring, &gens, order).unwrap();
        let b = GroebnerBasis::compute(&ring, &shuffled, order).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn transformed_catalog_basis_ignores_generator_order(l in label(), ops in elementary_ops(), rot in 0usize..3) {
        let f = Rationals;
        let ideal = pgl_transform(&catalog_case(l, &f).ideal, &unimodular(&f, &ops)).unwrap();
        let mut gens = ideal.gens().to_vec();
        gens.rotate_left(rot);
        gens.swap(0, 1);
        let a = GroebnerBasis::compute(ideal.ring(), ideal.gens(), MonomialOrder::GrevLex).unwrap();
        let b = GroebnerBasis::compute(ideal.ring(), &gens, MonomialOrder::GrevLex).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn membership_agrees_with_macaulay_matrix(
        quadrics in prop::collection::vec(picks(5), 2..4),
        probe in picks(6),
        multipliers in prop::collection::vec(picks(4), 3),
        d in 2u32..=4,
    ) {
        let ring = ring4(&gf7());
        let ideal = Ideal::new(&ring, quadrics.iter().map(|p| form(&ring, 2, p)).collect()).unwrap();
        let random = form(&ring, d, &probe);
        let member = ideal
            .gens()
            .iter()
            .zip(&multipliers)
            .fold(ring.zero(), |acc, (g, h)| acc + g * &form(&ring, d - 2, h));
        for p in [&random, &member] {
            prop_assert_eq!(ideal.contains(p).unwrap(), macaulay_member(&ideal, p, d));
        }
        prop_assert!(ideal.contains(&member).unwrap());
        let nf = ideal.normal_form(&random).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(ideal.contains(&(&random - &nf)).unwrap());
    }

    #[test]
    fn syzygies_match_brute_force(quadrics in prop::collection::vec(picks(5), 3)) {
        let ring = ring4(&gf7());
        let gens: Vec<_> = quadrics.iter().map(|p| form(&ring, 2, p)).collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let ideal = Ideal::new(&ring, gens).unwrap();
        for d in 3..=4 {
            prop_assert!(syzygies_generate_in_degree(&ideal, d));
        }
    }

    #[test]
    fn transformed_catalog_syzygies_match_brute_force(l in label(), ops in elementary_ops()) {
        let f = gf7();
        let ideal = pgl_transform(&catalog_case(l, &f).ideal, &unimodular(&f, &ops)).unwrap();
        for d in 3..=5 {
            prop_assert!(syzygies_generate_in_degree(&ideal, d));
        }
    }

    #[test]
    fn classification_is_projectively_invariant(l in label(), ops in elementary_ops()) {
        let f = Rationals;
        let m = unimodular(&f, &ops);
        let image = pgl_transform(&expected_image(l, &f), &m).unwrap();
        let point = m.inverse().unwrap().mul_vec(&[f.zero(), f.zero(), f.zero(), f.one()]);
        prop_assert_eq!(classify_plane_cubic(&image, &point).unwrap().label, l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dimensions_do_not_depend_on_the_field(l in label(), ops in elementary_ops()) {
        let q = pgl_transform(&catalog_case(l, &Rationals).ideal, &unimodular(&Rationals, &ops)).unwrap();
        let hp = hilbert_polynomial(&q).unwrap();
        let dim = embedded_deformations(&q).unwrap().dimension();
        prop_assert_eq!(dim, 12);
        for p in [5, 7] {
            let f = PrimeField::new(p).unwrap();
            let moved = pgl_transform(&catalog_case(l, &f).ideal, &unimodular(&f, &ops)).unwrap();
            prop_assert_eq!(hilbert_polynomial(&moved).unwrap(), hp.clone());
            prop_assert_eq!(embedded_deformations(&moved).unwrap().dimension(), dim);
        }
    }
}
