use std::sync::Arc;

use super::{same_ring, PolyRing, Polynomial, RingHandle};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// k-algebra homomorphism `source -> target` given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap<F: Field> {
    source: Arc<PolyRing<F>>,
    target: Arc<PolyRing<F>>,
    images: Vec<Polynomial<F>>,
}

impl<F: Field> RingMap<F> {
    pub fn new(source: &Arc<PolyRing<F>>, target: &Arc<PolyRing<F>>, images: Vec<Polynomial<F>>) -> Result<Self> {
        if images.len() != source.nvars() || images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    /// Parses images given as text in the target ring.
    pub fn from_strs(source: &Arc<PolyRing<F>>, target: &Arc<PolyRing<F>>, images: &[&str]) -> Result<Self> {
        Self::new(source, target, target.parse_all(images)?)
    }

    pub fn identity(ring: &Arc<PolyRing<F>>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<PolyRing<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing<F>> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    pub fn image_of(&self, var: &str) -> Result<&Polynomial<F>> {
        Ok(&self.images[self.source.index_of(var)?])
    }

    /// True when every image is zero or homogeneous of degree 1.
    pub fn is_graded(&self) -> bool {
        self.images.iter().all(|p| p.is_zero() || p.grading() == super::Grading { homogeneous: true, degree: Some(1) })
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        if self.images.is_empty() {
            return f.move_to(&self.target);
        }
        f.substitute(&self.images)
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn compose_after(&self, first: &RingMap<F>) -> Result<RingMap<F>> {
        if !same_ring(first.target(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        let images = first.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        RingMap::new(&first.source, &self.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rationals;

    #[test]
    fn homomorphism_on_sample() {
        let s = PolyRing::new(Rationals, &["x", "y", "z", "w"]).unwrap();
        let t = PolyRing::new(Rationals, &["x", "y", "w", "u"]).unwrap();
        let phi = RingMap::from_strs(&s, &t, &["x", "y", "0", "w"]).unwrap();
        assert!(phi.is_graded());
        let f = s.parse("x*z + y^2").unwrap();
        let g = s.parse("z - w").unwrap();
        assert_eq!(phi.apply(&(&f * &g)).unwrap(), phi.apply(&f).unwrap() * phi.apply(&g).unwrap());
        assert_eq!(phi.apply(&t.var(0)), Err(Error::ContextMismatch));
    }
}
