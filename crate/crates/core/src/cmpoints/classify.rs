//! Classification of plane cubics singular at a point and the inverse
//! construction of the CM point with a given image.

use std::sync::Arc;

use super::{catalog_case, scheme_image, space_ring, CMPoint, CaseLabel};
use crate::error::{Error, Result};
use crate::ideal::{exact_division, Ideal};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle, RingMap};
use crate::scalars::{ExactRoots, Field, UniPoly};

/// `sigma_M(f)(X) = f(M X)`: variable `i` goes to row `i` of `M`.
fn linear_images<F: Field>(target: &Arc<PolyRing<F>>, m: &Matrix<F>) -> Vec<Polynomial<F>> {
    (0..m.nrows()).map(|i| Polynomial::linear_form(target, m.row(i))).collect()
}

/// `sigma_M(J)`, generated by `g(M X)`.
pub fn pgl_transform<F: Field>(ideal: &Ideal<F>, m: &Matrix<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    if m.nrows() != ring.nvars() || m.ncols() != ring.nvars() {
        return Err(Error::ContextMismatch);
    }
    if ring.field().is_zero(&m.determinant()) {
        return Err(Error::SingularMatrix);
    }
    let images = linear_images(ring, m);
    let gens = ideal.gens().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// Image ideal plus the 2x2 minors of its Jacobian.
pub fn singular_locus<F: Field>(image: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = image.ring();
    let gens = image.basis().elements();
    let n = ring.nvars();
    let jac: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| (0..n).map(|v| g.partial_derivative(v)).collect()).collect();
    let mut minors = gens.clone();
    for a in 0..jac.len() {
        for b in a + 1..jac.len() {
            for i in 0..n {
                for j in i + 1..n {
                    minors.push(&(&jac[a][i] * &jac[b][j]) - &(&jac[a][j] * &jac[b][i]));
                }
            }
        }
    }
    Ideal::new(ring, minors)
}

/// `V(linear, cubic)` with a marked point.
#[derive(Clone, Debug)]
pub struct PlaneCubic<F: Field> {
    pub linear: Polynomial<F>,
    pub cubic: Polynomial<F>,
    pub point: Vec<F::Elem>,
}

impl<F: Field> PlaneCubic<F> {
    /// Reads `(l, q)` off the reduced basis of an image ideal.
    pub fn from_ideal(image: &Ideal<F>, point: &[F::Elem]) -> Result<Self> {
        let gb = image.basis().elements();
        let linear: Vec<_> = gb.iter().filter(|g| g.total_degree() == Some(1)).collect();
        let cubic: Vec<_> = gb.iter().filter(|g| g.total_degree() == Some(3)).collect();
        if !image.is_homogeneous() || gb.len() != 2 || linear.len() != 1 || cubic.len() != 1 {
            return Err(Error::NotPlaneCubic(image.to_string()));
        }
        if point.len() != image.ring().nvars() {
            return Err(Error::ContextMismatch);
        }
        Ok(PlaneCubic { linear: linear[0].clone(), cubic: cubic[0].clone(), point: point.to_vec() })
    }

    fn field(&self) -> &F {
        self.cubic.field()
    }

    /// `M1` with `sigma_M1(l) = z` and `M1 [0:0:0:1] = p`, and the cubic
    /// in those coordinates restricted to `z = 0` as a form in `k[x,y,w]`.
    fn normalization(&self) -> Result<(Matrix<F>, Polynomial<F>)> {
        let f = self.field().clone();
        let l = self.linear.linear_coefficients().ok_or_else(|| Error::NotPlaneCubic(self.linear.to_string()))?;
        let p = &self.point;
        if !f.is_zero(&self.linear.eval(p)?) || !f.is_zero(&self.cubic.eval(p)?) {
            return Err(Error::NotSingularAtP);
        }
        let mut basis = vec![p.clone()];
        for v in Matrix::from_rows(&f, vec![l.clone()]).nullspace() {
            let mut trial = basis.clone();
            trial.push(v);
            if crate::linalg::rank_of(&f, &trial) == trial.len() {
                basis = trial;
            }
        }
        let j = l.iter().position(|c| !f.is_zero(c)).ok_or_else(|| Error::NotPlaneCubic(self.linear.to_string()))?;
        let mut mz = vec![f.zero(); 4];
        mz[j] = f.inv(&l[j])?;
        let m1 = Matrix::from_cols(&f, vec![basis[1].clone(), basis[2].clone(), mz, basis[0].clone()]);
        let r3 = ternary_ring(&f);
        let images: Vec<Polynomial<F>> = (0..4)
            .map(|i| Polynomial::linear_form(&r3, &[m1.get(i, 0).clone(), m1.get(i, 1).clone(), m1.get(i, 3).clone()]))
            .collect();
        Ok((m1, self.cubic.substitute(&images)?))
    }
}

fn ternary_ring<F: Field>(f: &F) -> Arc<PolyRing<F>> {
    PolyRing::new(f.clone(), &["x", "y", "w"]).expect("valid names")
}

fn coeff<F: Field>(p: &Polynomial<F>, e: [u32; 3]) -> F::Elem {
    p.coefficient(&Monomial::new(e.to_vec()))
}

/// `gcd` via `a * b / lcm`, the lcm being the generator of `(a) ∩ (b)`.
fn poly_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.is_zero() {
        return Ok(b.clone());
    }
    let ring = a.ring();
    let lcm = Ideal::new(ring, vec![a.clone()])?.intersect(&Ideal::new(ring, vec![b.clone()])?)?;
    let gens = lcm.basis().elements();
    let g = exact_division(&(a * b), &gens[0]).ok_or_else(|| Error::AlignmentFailure("lcm does not divide".into()))?;
    Ok(g.monic(MonomialOrder::GrevLex))
}

fn to_unipoly<F: Field>(p: &Polynomial<F>, var: usize) -> UniPoly<F::Elem> {
    let f = p.field();
    let deg = p.terms().iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0) as usize;
    let mut coeffs = vec![f.zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exp(var) as usize] = c.clone();
    }
    UniPoly::from_coeffs(f, coeffs)
}

fn from_unipoly<F: Field>(ring: &Arc<PolyRing<F>>, u: &UniPoly<F::Elem>, var: usize) -> Polynomial<F> {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        u.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; n];
            e[var] = k as u32;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Number of geometric points of a zero-dimensional affine ideal (adjoin
/// the squarefree parts of the eliminants, then count standard monomials).
fn count_affine_points<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    if ideal.is_unit() {
        return Ok(0);
    }
    let ring = ideal.ring();
    let f = ring.field();
    let mut extra = Vec::new();
    for v in 0..ring.nvars() {
        let elim = ideal.eliminate(&[v])?;
        let h = elim.basis().elements().into_iter().next().ok_or(Error::NotFinite)?;
        extra.push(from_unipoly(ring, &to_unipoly(&h, v).squarefree(f), v));
    }
    let radical = ideal.with(&extra)?;
    let gb = radical.basis();
    let mut total = 0;
    for d in 0.. {
        let k = gb.standard_monomials(d).len();
        if k == 0 {
            break;
        }
        total += k;
    }
    Ok(total)
}

/// Number of geometric points of `V(J)` in the projective plane `k[x,y,w]`.
fn count_projective_points<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let f = ideal.ring().field();
    let chart = ideal.gens().iter().map(|g| g.dehomogenize(2)).collect::<Result<Vec<_>>>()?;
    let mut total = match chart.first() {
        Some(g) => count_affine_points(&Ideal::new(&g.ring().clone(), chart)?)?,
        None => return Err(Error::NotFinite),
    };
    let line = PolyRing::new(f.clone(), &["x"])?;
    let at_infinity = [line.var(0), line.one(), line.zero()];
    let gens = ideal.gens().iter().map(|g| g.substitute(&at_infinity)).collect::<Result<Vec<_>>>()?;
    total += count_affine_points(&Ideal::new(&line, gens)?)?;
    let corner = [f.one(), f.zero(), f.zero()];
    if ideal.gens().iter().map(|g| g.eval(&corner)).collect::<Result<Vec<_>>>()?.iter().all(|v| f.is_zero(v)) {
        total += 1;
    }
    Ok(total)
}

/// Result of [`classify_plane_cubic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub label: CaseLabel,
    /// Multiplicity of the cubic at the point.
    pub multiplicity: u32,
    /// Singular points of a reduced cubic; `None` when non-reduced.
    pub singular_points: Option<usize>,
    /// Node tangents defined over the base field (type I only).
    pub split_tangents: Option<bool>,
}

/// Discriminant data of the quadratic part `a x^2 + b xy + c y^2` at `[0:0:1]`.
struct Tangents<E> {
    a: E,
    b: E,
    c: E,
}

impl<E: Clone> Tangents<E> {
    fn of<F: Field<Elem = E>>(t: &Polynomial<F>) -> Self {
        Tangents { a: coeff(t, [2, 0, 1]), b: coeff(t, [1, 1, 1]), c: coeff(t, [0, 2, 1]) }
    }

    fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        f.is_zero(&self.a) && f.is_zero(&self.b) && f.is_zero(&self.c)
    }

    fn discriminant<F: Field<Elem = E>>(&self, f: &F) -> E {
        f.sub(&f.mul(&self.b, &self.b), &f.mul(&f.from_int(4), &f.mul(&self.a, &self.c)))
    }

    /// The two tangent lines as `(a, b)` meaning `a x + b y`.
    fn lines<F: ExactRoots<Elem = E>>(&self, f: &F) -> Result<[(E, E); 2]> {
        let root = f
            .nth_root(&self.discriminant(f), 2)
            .ok_or_else(|| Error::IrrationalData("tangent directions at the point".into()))?;
        if f.is_zero(&self.a) {
            return Ok([(f.zero(), f.one()), (self.b.clone(), self.c.clone())]);
        }
        let two_a = f.mul(&f.from_int(2), &self.a);
        let r1 = f.div(&f.sub(&root, &self.b), &two_a)?;
        let r2 = f.div(&f.neg(&f.add(&root, &self.b)), &two_a)?;
        Ok([(f.one(), f.neg(&r1)), (f.one(), f.neg(&r2))])
    }

    /// The doubled line of a square.
    fn double_line<F: Field<Elem = E>>(&self, f: &F) -> (E, E) {
        if f.is_zero(&self.a) {
            (f.zero(), f.one())
        } else {
            (f.mul(&f.from_int(2), &self.a), self.b.clone())
        }
    }
}

fn line_divides<F: Field>(cubic: &Polynomial<F>, line: &(F::Elem, F::Elem)) -> Result<bool> {
    let r = cubic.ring();
    let f = r.field();
    let images = [r.var(0).scale(&line.1), r.var(0).scale(&f.neg(&line.0)), r.var(2)];
    Ok(cubic.substitute(&images)?.is_zero())
}

fn line_through_point<F: Field>(l: &Polynomial<F>) -> Result<(F::Elem, F::Elem)> {
    let c = l.linear_coefficients().ok_or_else(|| Error::AlignmentFailure(format!("{l} is not a line")))?;
    if !l.field().is_zero(&c[2]) {
        return Err(Error::AlignmentFailure(format!("{l} misses the point")));
    }
    Ok((c[0].clone(), c[1].clone()))
}

/// Non-reduced structure: the repeated line and the residual factor.
enum Reducedness<F: Field> {
    Reduced,
    Double { line: Polynomial<F>, residual: Polynomial<F> },
    Triple { line: Polynomial<F> },
}

fn reducedness<F: Field>(cubic: &Polynomial<F>) -> Result<Reducedness<F>> {
    let mut g = cubic.clone();
    for v in 0..3 {
        g = poly_gcd(&g, &cubic.partial_derivative(v))?;
    }
    Ok(match g.total_degree() {
        Some(0) | None => Reducedness::Reduced,
        Some(1) => {
            let residual = exact_division(cubic, &(&g * &g))
                .ok_or_else(|| Error::AlignmentFailure("square factor does not divide".into()))?;
            Reducedness::Double { line: g, residual }
        }
        Some(2) => Reducedness::Triple { line: ternary_line_of_square(&g)? },
        _ => return Err(Error::NotPlaneCubic(cubic.to_string())),
    })
}

/// The line `L` with `L^2 = g`.
fn ternary_line_of_square<F: Field>(g: &Polynomial<F>) -> Result<Polynomial<F>> {
    let mut l = g.clone();
    for v in 0..3 {
        let d = g.partial_derivative(v);
        if !d.is_zero() {
            l = poly_gcd(g, &d)?;
            break;
        }
    }
    if l.total_degree() == Some(1) {
        Ok(l)
    } else {
        Err(Error::AlignmentFailure(format!("{g} is not a square of a line")))
    }
}

fn classify_ternary<F: ExactRoots>(cubic: &Polynomial<F>) -> Result<Classification> {
    let f = cubic.field();
    if cubic.is_zero() || !cubic.is_homogeneous() || cubic.total_degree() != Some(3) {
        return Err(Error::NotPlaneCubic(cubic.to_string()));
    }
    if [[0, 0, 3], [1, 0, 2], [0, 1, 2]].iter().any(|e| !f.is_zero(&coeff(cubic, *e))) {
        return Err(Error::NotSingularAtP);
    }
    let tangents = Tangents::of(cubic);
    let multiplicity = if tangents.is_zero(f) { 3 } else { 2 };
    let mk = |label, singular_points, split_tangents| Classification {
        label,
        multiplicity,
        singular_points,
        split_tangents,
    };
    match reducedness(cubic)? {
        Reducedness::Triple { .. } => return Ok(mk(CaseLabel::IX, None, None)),
        Reducedness::Double { residual, .. } => {
            let label = if f.is_zero(&residual.eval(&[f.zero(), f.zero(), f.one()])?) {
                CaseLabel::VIII
            } else {
                CaseLabel::VII
            };
            return Ok(mk(label, None, None));
        }
        Reducedness::Reduced => {}
    }
    let ring = cubic.ring();
    let mut sing = vec![cubic.clone()];
    sing.extend((0..3).map(|v| cubic.partial_derivative(v)));
    let count = count_projective_points(&Ideal::new(ring, sing)?)?;
    let label = match (count, multiplicity) {
        (3, _) => CaseLabel::V,
        (2, _) => CaseLabel::III,
        (1, 3) => CaseLabel::VI,
        (1, _) => {
            let disc = tangents.discriminant(f);
            if !f.is_zero(&disc) {
                let split = f.nth_root(&disc, 2).is_some();
                return Ok(mk(CaseLabel::I, Some(1), Some(split)));
            }
            if line_divides(cubic, &tangents.double_line(f))? {
                CaseLabel::IV
            } else {
                CaseLabel::II
            }
        }
        _ => return Err(Error::NotPlaneCubic(cubic.to_string())),
    };
    Ok(mk(label, Some(count), None))
}

/// Type of the CM point with image `V(l, q)` at `p`.
pub fn classify_plane_cubic<F: ExactRoots>(image: &Ideal<F>, point: &[F::Elem]) -> Result<Classification> {
    let (_, cubic) = PlaneCubic::from_ideal(image, point)?.normalization()?;
    classify_ternary(&cubic)
}

/// Accumulates substitutions `f -> f(A X)` with `S -> S A`.
struct Normalizer<F: Field> {
    f: Polynomial<F>,
    s: Matrix<F>,
}

impl<F: ExactRoots> Normalizer<F> {
    fn new(f: Polynomial<F>) -> Self {
        let s = Matrix::identity(f.field(), 3);
        Normalizer { f, s }
    }

    fn field(&self) -> F {
        self.f.field().clone()
    }

    fn apply(&mut self, a: Matrix<F>) -> Result<()> {
        self.f = self.f.substitute(&linear_images(self.f.ring(), &a))?;
        self.s = self.s.mul(&a)?;
        Ok(())
    }

    fn c(&self, e: [u32; 3]) -> F::Elem {
        coeff(&self.f, e)
    }

    /// Sends `l1` to `x` and `l2` to `y`.
    fn lines_to_xy(&mut self, l1: &(F::Elem, F::Elem), l2: &(F::Elem, F::Elem)) -> Result<()> {
        let f = self.field();
        let r = Matrix::from_rows(
            &f,
            vec![
                vec![l1.0.clone(), l1.1.clone(), f.zero()],
                vec![l2.0.clone(), l2.1.clone(), f.zero()],
                vec![f.zero(), f.zero(), f.one()],
            ],
        );
        self.apply(r.inverse()?)
    }

    /// `w -> w + a x + b y`.
    fn shift_w(&mut self, a: F::Elem, b: F::Elem) -> Result<()> {
        let f = self.field();
        let mut m = Matrix::identity(&f, 3);
        m.set(2, 0, a);
        m.set(2, 1, b);
        self.apply(m)
    }

    fn scale(&mut self, d: [F::Elem; 3]) -> Result<()> {
        let f = self.field();
        let mut m = Matrix::identity(&f, 3);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        self.apply(m)
    }

    fn scale_w(&mut self, c: F::Elem) -> Result<()> {
        let f = self.field();
        self.scale([f.one(), f.one(), c])
    }

    /// With quadratic part `k * x*y` or `k * y^2` (`q_idx`), clears the
    /// cubic terms divisible by that quadratic.
    fn clear_by_shift(&mut self, q_idx: [u32; 3], targets: [[u32; 3]; 2]) -> Result<()> {
        let f = self.field();
        let k = self.c(q_idx);
        let a = f.neg(&f.div(&self.c(targets[0]), &k)?);
        let b = f.neg(&f.div(&self.c(targets[1]), &k)?);
        self.shift_w(a, b)
    }

    fn partner(&self, l: &(F::Elem, F::Elem)) -> (F::Elem, F::Elem) {
        let f = self.field();
        if f.is_zero(&l.0) {
            (f.one(), f.zero())
        } else {
            (f.zero(), f.one())
        }
    }

    /// Brings the cubic to the normal form of its type.
    fn run(&mut self, label: CaseLabel) -> Result<()> {
        let f = self.field();
        let xyw = [1, 1, 1];
        let y2w = [0, 2, 1];
        match label {
            CaseLabel::I => {
                let [l1, l2] = Tangents::of(&self.f).lines(&f)?;
                self.lines_to_xy(&l1, &l2)?;
                self.clear_by_shift(xyw, [[2, 1, 0], [1, 2, 0]])?;
                let ratio = f.div(&self.c([0, 3, 0]), &self.c([3, 0, 0]))?;
                let lambda = f
                    .nth_root(&ratio, 3)
                    .ok_or_else(|| Error::IrrationalData("cube root needed to scale the node".into()))?;
                self.scale([lambda, f.one(), f.one()])?;
                let mu = f.div(&self.c([0, 3, 0]), &self.c(xyw))?;
                self.scale_w(mu)
            }
            CaseLabel::II => {
                let l = Tangents::of(&self.f).double_line(&f);
                self.lines_to_xy(&self.partner(&l), &l)?;
                self.clear_by_shift(y2w, [[1, 2, 0], [0, 3, 0]])?;
                let t = f.neg(&f.div(&self.c([2, 1, 0]), &f.mul(&f.from_int(3), &self.c([3, 0, 0])))?);
                let mut m = Matrix::identity(&f, 3);
                m.set(0, 1, t);
                self.apply(m)?;
                self.clear_by_shift(y2w, [[1, 2, 0], [0, 3, 0]])?;
                self.scale_w(f.div(&self.c([3, 0, 0]), &self.c(y2w))?)
            }
            CaseLabel::III => {
                let [l1, l2] = Tangents::of(&self.f).lines(&f)?;
                let (comp, other) = if line_divides(&self.f, &l1)? { (l1, l2) } else { (l2, l1) };
                self.lines_to_xy(&comp, &other)?;
                self.clear_by_shift(xyw, [[2, 1, 0], [1, 2, 0]])?;
                self.scale_w(f.div(&self.c([3, 0, 0]), &self.c(xyw))?)
            }
            CaseLabel::IV => {
                let l = Tangents::of(&self.f).double_line(&f);
                self.lines_to_xy(&self.partner(&l), &l)?;
                self.clear_by_shift(y2w, [[1, 2, 0], [0, 3, 0]])?;
                self.scale_w(f.div(&self.c([2, 1, 0]), &self.c(y2w))?)
            }
            CaseLabel::V => {
                let [l1, l2] = Tangents::of(&self.f).lines(&f)?;
                self.lines_to_xy(&l1, &l2)?;
                self.clear_by_shift(xyw, [[2, 1, 0], [1, 2, 0]])
            }
            CaseLabel::VI => {
                let lines = self.concurrent_lines()?;
                self.lines_to_xy(&lines[0], &lines[1])?;
                let dx = f.neg(&f.div(&self.c([1, 2, 0]), &self.c([2, 1, 0]))?);
                self.scale([dx, f.one(), f.one()])
            }
            CaseLabel::VII | CaseLabel::VIII | CaseLabel::IX => {
                let (line, residual) = match reducedness(&self.f)? {
                    Reducedness::Double { line, residual } => (line, Some(residual)),
                    Reducedness::Triple { line } => (line, None),
                    Reducedness::Reduced => return Err(Error::AlignmentFailure("expected a repeated line".into())),
                };
                let l = line_through_point(&line)?;
                match (label, residual) {
                    (CaseLabel::VIII, Some(m)) => self.lines_to_xy(&l, &line_through_point(&m)?),
                    (CaseLabel::VII, Some(_)) => {
                        self.lines_to_xy(&l, &self.partner(&l))?;
                        let mw = self.c([2, 0, 1]);
                        let a = f.neg(&f.div(&self.c([3, 0, 0]), &mw)?);
                        let b = f.neg(&f.div(&self.c([2, 1, 0]), &mw)?);
                        self.shift_w(a, b)
                    }
                    (CaseLabel::IX, None) => self.lines_to_xy(&l, &self.partner(&l)),
                    _ => Err(Error::AlignmentFailure(format!("{} does not have type {label}", self.f))),
                }
            }
        }
    }

    /// The three lines of `c0 x^3 + c1 x^2 y + c2 x y^2 + c3 y^3`.
    fn concurrent_lines(&self) -> Result<Vec<(F::Elem, F::Elem)>> {
        let f = self.field();
        let cs: Vec<F::Elem> = (0..4).map(|k| self.c([3 - k, k, 0])).collect();
        let mut lines = Vec::new();
        if f.is_zero(&cs[0]) {
            lines.push((f.zero(), f.one()));
        }
        // roots of c0 t^3 + c1 t^2 + c2 t + c3 with t = x / y
        let u = UniPoly::from_coeffs(&f, cs.iter().rev().cloned().collect());
        lines.extend(f.roots(&u).into_iter().map(|r| (f.one(), f.neg(&r))));
        if lines.len() != 3 {
            return Err(Error::IrrationalData("lines through the triple point".into()));
        }
        Ok(lines)
    }
}

/// Matrix `S` and scalar `c` with `f(S X) = c * N(X)` for the normal form `N` of the type.
fn normalize<F: ExactRoots>(cubic: &Polynomial<F>, label: CaseLabel) -> Result<Matrix<F>> {
    let mut n = Normalizer::new(cubic.clone());
    n.run(label)?;
    Ok(n.s)
}

fn proportional_polys<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> bool {
    match (a.terms().first(), b.terms().first()) {
        (Some((_, ca)), Some((_, cb))) => {
            let f = a.field();
            a.scale(cb) == b.scale(ca) && !f.is_zero(ca)
        }
        _ => false,
    }
}

/// The CM point with the given image and point: the catalog curve of the
/// type, composed with a linear change of coordinates on the image space.
pub fn cm_point_for<F: ExactRoots>(image: &Ideal<F>, point: &[F::Elem]) -> Result<CMPoint<F>> {
    let f = image.ring().field().clone();
    let pc = PlaneCubic::from_ideal(image, point)?;
    let (m1, cubic) = pc.normalization()?;
    let label = classify_ternary(&cubic)?.label;
    let r3 = cubic.ring().clone();
    let cat_cubic = r3.parse(label.image_cubic())?;
    let s_f = normalize(&cubic, label)?;
    let s_c = normalize(&cat_cubic, label)?;
    let t = s_c.mul(&s_f.inverse()?)?;
    let moved = cat_cubic.substitute(&linear_images(&r3, &t))?;
    if !proportional_polys(&moved, &cubic) {
        return Err(Error::AlignmentFailure(format!("normal forms of {cubic} and {cat_cubic} differ")));
    }
    // lift T to the image space, z fixed
    let idx = [0usize, 1, 3];
    let mut t_hat = Matrix::identity(&f, 4);
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            t_hat.set(i, j, t.get(a, b).clone());
        }
    }
    // phi' = phi o sigma_N with N = M^{-1} = M1 T^{-1}
    let n = m1.mul(&t_hat.inverse()?)?;
    let cat = catalog_case(label, &f);
    let images: Vec<Polynomial<F>> = (0..4)
        .map(|v| (0..4).fold(cat.ideal.ring().zero(), |acc, j| &acc + &cat.map.images()[j].scale(n.get(v, j))))
        .collect();
    let map = RingMap::new(&space_ring(&f), cat.ideal.ring(), images)?;
    let out = CMPoint::new(cat.ideal, map, point.to_vec(), Some(label))?;
    let target = image.move_to(out.map.source())?;
    if !scheme_image(&out)?.equals(&target)? {
        return Err(Error::AlignmentFailure("reconstructed image differs".into()));
    }
    Ok(out)
}
