//! Ideals with cached Groebner bases and the standard operations built on them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{same_ring, MonomialOrder, PolyRing, Polynomial, RingHandle, RingMap};
use crate::scalars::Field;

/// How [`Ideal::eliminate_with`] orders the eliminated variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EliminationStrategy {
    #[default]
    Block,
    Lex,
}

/// Finitely generated ideal. Groebner bases are computed on demand and cached per order.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_strs(ring: &Arc<PolyRing<F>>, gens: &[&str]) -> Result<Self> {
        Self::new(ring, ring.parse_all(gens)?)
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn groebner(&self, order: MonomialOrder) -> Arc<GroebnerBasis<F>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&order) {
            return gb.clone();
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, &self.gens, order).expect("generators share the ring"));
        self.cache.lock().expect("cache lock").entry(order).or_insert(gb).clone()
    }

    /// Reduced grevlex basis.
    pub fn basis(&self) -> Arc<GroebnerBasis<F>> {
        self.groebner(MonomialOrder::GrevLex)
    }

    fn check(&self, f: &Polynomial<F>) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn check_ideal(&self, other: &Ideal<F>) -> Result<()> {
        if same_ring(&other.ring, &self.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check(f)?;
        self.basis().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ideal(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via reduced grevlex bases.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(self.basis().elements() == other.basis().elements())
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ideal(other)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn with(&self, extra: &[Polynomial<F>]) -> Result<Ideal<F>> {
        Ideal::new(&self.ring, self.gens.iter().chain(extra).cloned().collect())
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ideal(other)?;
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// Image under a ring map (the ideal generated by the mapped generators).
    pub fn map(&self, map: &RingMap<F>) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| map.apply(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(map.target(), gens)
    }

    /// `I ∩ k[keep]`, returned in the same ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal<F>> {
        self.eliminate_with(keep, EliminationStrategy::Block)
    }

    pub fn eliminate_with(&self, keep: &[usize], strategy: EliminationStrategy) -> Result<Ideal<F>> {
        let n = self.ring.nvars();
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::UnknownVariable(format!("index {}", n)));
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        // permuted ring: eliminated variables first
        let order_vars: Vec<usize> = drop.iter().chain(&keep_sorted).copied().collect();
        let names: Vec<&String> = order_vars.iter().map(|&i| &self.ring.vars()[i]).collect();
        let perm_ring = PolyRing::new(self.ring.field().clone(), &names)?;
        let mut to_perm = vec![0; n];
        for (pos, &i) in order_vars.iter().enumerate() {
            to_perm[i] = pos;
        }
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.embed(&perm_ring, &to_perm)).collect();
        let order = match strategy {
            EliminationStrategy::Block => MonomialOrder::Elimination(drop.len()),
            EliminationStrategy::Lex => MonomialOrder::Lex,
        };
        let gb = GroebnerBasis::compute(&perm_ring, &gens, order)?;
        let k = drop.len();
        let kept: Vec<Polynomial<F>> = gb
            .elements()
            .into_iter()
            .filter(|g| g.support().iter().all(|&v| v >= k))
            .map(|g| g.embed(&self.ring, &order_vars))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    pub fn eliminate_names(&self, keep: &[&str]) -> Result<Ideal<F>> {
        self.eliminate(&self.ring.indices_of(keep)?)
    }

    /// Ring with an extra variable placed first; returns the ring and the embedding map.
    fn extended(&self, name: &str) -> Result<(Arc<PolyRing<F>>, Vec<usize>)> {
        let mut fresh = name.to_string();
        while self.ring.vars().contains(&fresh) {
            fresh.push('_');
        }
        let names: Vec<String> = std::iter::once(fresh).chain(self.ring.vars().iter().cloned()).collect();
        let ring = PolyRing::new(self.ring.field().clone(), &names)?;
        Ok((ring, (1..=self.ring.nvars()).collect()))
    }

    /// `I ∩ J` via `s*I + (1 - s)*J`, eliminating `s`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ideal(other)?;
        let (big, emb) = self.extended("s")?;
        let s = big.var(0);
        let one_minus_s = &big.one() - &s;
        let gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| &s * &g.embed(&big, &emb))
            .chain(other.gens.iter().map(|g| &one_minus_s * &g.embed(&big, &emb)))
            .collect();
        let elim = Ideal::new(&big, gens)?.eliminate(&(1..big.nvars()).collect::<Vec<_>>())?;
        let back: Vec<usize> = std::iter::once(0).chain(0..self.ring.nvars()).collect();
        let gens = elim.gens.iter().map(|g| g.embed(&self.ring, &back)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f)` from `I ∩ (f)` divided by `f`.
    pub fn colon(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()])?)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| exact_division(g, f).ok_or_else(|| Error::AlignmentFailure("intersection not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f^∞)` by iterating colons until stable.
    pub fn saturate(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        let mut current = self.clone();
        loop {
            let next = current.colon(f)?;
            if next.equals(&current)? {
                return Ok(next);
            }
            current = next;
        }
    }

    /// `(I : J^∞) = ∩_g (I : g^∞)` over generators `g` of `J`.
    pub fn saturate_ideal(&self, j: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ideal(j)?;
        let mut acc: Option<Ideal<F>> = None;
        for g in &j.gens {
            let sat = self.saturate(g)?;
            acc = Some(match acc {
                None => sat,
                Some(a) => a.intersect(&sat)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Saturation with respect to the irrelevant ideal of all variables.
    pub fn saturate_irrelevant(&self) -> Result<Ideal<F>> {
        let vars = (0..self.ring.nvars()).map(|i| self.ring.var(i)).collect();
        self.saturate_ideal(&Ideal::new(&self.ring, vars)?)
    }

    /// Whether `f` lies in the radical, via `I + (1 - s f)`.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.check(f)?;
        let (big, emb) = self.extended("s")?;
        let s = big.var(0);
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.embed(&big, &emb)).collect();
        gens.push(&big.one() - &(&s * &f.embed(&big, &emb)));
        Ok(GroebnerBasis::compute(&big, &gens, MonomialOrder::GrevLex)?.is_unit())
    }

    /// Moves generators into a ring with the same variable names.
    pub fn move_to(&self, ring: &Arc<PolyRing<F>>) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.move_to(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }
}

/// `g / f` if `f` divides `g` exactly.
pub fn exact_division<F: Field>(g: &Polynomial<F>, f: &Polynomial<F>) -> Option<Polynomial<F>> {
    let gb = GroebnerBasis::compute(f.ring(), std::slice::from_ref(f), MonomialOrder::GrevLex).ok()?;
    let (q, r) = gb.divide(g).ok()?;
    if !r.is_zero() {
        return None;
    }
    // the basis is f made monic
    let lc = f.leading_term(MonomialOrder::GrevLex)?.1.clone();
    let inv = f.field().inv(&lc).ok()?;
    Some(q[0].scale(&inv))
}

/// Kernel of `map: S -> T/I_target` via the graph ideal.
pub fn ring_map_kernel<F: Field>(map: &RingMap<F>, target_ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let src = map.source();
    let tgt = map.target();
    if !same_ring(target_ideal.ring(), tgt) {
        return Err(Error::ContextMismatch);
    }
    let (nt, ns) = (tgt.nvars(), src.nvars());
    let names: Vec<String> = tgt.vars().iter().map(|v| format!("{v}_tgt")).chain(src.vars().iter().cloned()).collect();
    let graph = PolyRing::new(src.field().clone(), &names)?;
    let t_emb: Vec<usize> = (0..nt).collect();
    let mut gens: Vec<Polynomial<F>> = target_ideal.gens().iter().map(|g| g.embed(&graph, &t_emb)).collect();
    for (i, img) in map.images().iter().enumerate() {
        gens.push(&graph.var(nt + i) - &img.embed(&graph, &t_emb));
    }
    let gb = GroebnerBasis::compute(&graph, &gens, MonomialOrder::Elimination(nt))?;
    let back: Vec<usize> = (0..nt).map(|_| 0).chain(0..ns).collect();
    let kernel: Vec<Polynomial<F>> = gb
        .elements()
        .into_iter()
        .filter(|g| g.support().iter().all(|&v| v >= nt))
        .map(|g| g.embed(src, &back))
        .collect();
    Ideal::new(src, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rationals;

    fn src() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, &["x", "y", "z", "w"]).unwrap()
    }

    #[test]
    fn twisted_cubic_is_kernel_of_parametrization() {
        let s = src();
        let t = PolyRing::new(Rationals, &["a", "b"]).unwrap();
        let map = RingMap::from_strs(&s, &t, &["a^3", "a^2*b", "a*b^2", "b^3"]).unwrap();
        let k = ring_map_kernel(&map, &Ideal::zero(&t)).unwrap();
        let expected = Ideal::from_strs(&s, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]).unwrap();
        assert!(k.equals(&expected).unwrap());
    }

    #[test]
    fn elimination_strategies_agree() {
        let s = src();
        let i = Ideal::from_strs(&s, &["x - y^2", "z - y^3", "w - y"]).unwrap();
        let keep = s.indices_of(&["x", "z", "w"]).unwrap();
        let a = i.eliminate_with(&keep, EliminationStrategy::Block).unwrap();
        let b = i.eliminate_with(&keep, EliminationStrategy::Lex).unwrap();
        assert!(a.equals(&b).unwrap());
        assert!(a.contains(&s.parse("x - w^2").unwrap()).unwrap());
    }

    #[test]
    fn colon_and_saturation() {
        let s = src();
        let i = Ideal::from_strs(&s, &["x*z", "y*z", "z^2"]).unwrap();
        let c = i.colon(&s.parse("z").unwrap()).unwrap();
        assert!(c.equals(&Ideal::from_strs(&s, &["x", "y", "z"]).unwrap()).unwrap());
        let sat = i.saturate(&s.parse("x").unwrap()).unwrap();
        assert!(sat.equals(&Ideal::from_strs(&s, &["z"]).unwrap()).unwrap());
        assert_eq!(i.colon(&s.zero()).unwrap_err(), Error::ZeroArgument);
    }

    #[test]
    fn intersection_and_radical() {
        let s = src();
        let a = Ideal::from_strs(&s, &["x"]).unwrap();
        let b = Ideal::from_strs(&s, &["y"]).unwrap();
        assert!(a.intersect(&b).unwrap().equals(&Ideal::from_strs(&s, &["x*y"]).unwrap()).unwrap());
        let i = Ideal::from_strs(&s, &["x^3", "y^2"]).unwrap();
        assert!(i.radical_contains(&s.parse("x + y").unwrap()).unwrap());
        assert!(!i.radical_contains(&s.parse("z").unwrap()).unwrap());
    }
}
