//! Exact Groebner-basis toolkit for Cohen-Macaulay points of twisted cubics.
//!
//! A CM point is a pair `(I, phi)` where `I` cuts out a degree-3 genus-0 curve
//! in P^3 and `phi` is a linear map whose image is a plane cubic. The crate
//! computes images, Hilbert data, extension charts, families and first-order
//! deformations of such pairs over Q, GF(p), Q(t) and dual numbers.

pub mod cmpoints;
pub mod deform;
pub mod error;
pub mod families;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod scalars;

pub use cmpoints::{
    catalog_case, classify_plane_cubic, cm_point_for, scheme_image, verify_cm_point, CMPoint, CaseLabel,
    Classification, PlaneCubic, VerificationReport,
};
pub use error::{Error, Result};
pub use groebner::{syzygy_basis, GroebnerBasis, SyzygyModule, TrackedBasis};
pub use hilbert::{degree_genus, hilbert_function, hilbert_polynomial, hilbert_series, HilbertData, HilbertPolynomial};
pub use ideal::{exact_division, ring_map_kernel, EliminationStrategy, Ideal};
pub use linalg::Matrix;
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingHandle, RingMap};
pub use scalars::{Dual, DualNumbers, ExactRoots, Field, PrimeField, RatFunc, RationalFunctions, Rationals, UniPoly};
