//! State-property systems: Cartan maps on an atomistic lattice, the center
//! and classical decomposition, spectra of observables, causal relations and
//! the evolution adjoint.

use crate::error::{Error, Result};
use crate::lattice::{direct_product, is_order_isomorphism, lower_interval, Elem, Interval, LatticeRef, Limits, Product};
use crate::maps::{left_adjoint, right_adjoint, same_lattice, LatticeMap};
use crate::ortho::{colatt_check, OrthoLattice};
use crate::weak::{pointed_extend, restrict_codomain, PartialJoinMap, UpperMap, WeakMeetMap};

/// Subsets `A` up to this size are checked one by one for `mu(/\A) = n mu(A)`;
/// above it binary meets plus the empty meet are used.
const EXHAUSTIVE_MEETS: usize = 16;

/// States are the atoms of `L`; `mu(a)` is the set of atoms below `a` as a
/// bit mask over `states`.
#[derive(Debug, Clone)]
pub struct StatePropertySystem {
    lattice: LatticeRef,
    ortho: Option<OrthoLattice>,
    states: Vec<Elem>,
    mu: Vec<u64>,
}

impl StatePropertySystem {
    pub fn lattice(&self) -> &LatticeRef {
        &self.lattice
    }

    pub fn ortho(&self) -> Option<&OrthoLattice> {
        self.ortho.as_ref()
    }

    pub fn states(&self) -> &[Elem] {
        &self.states
    }

    pub fn mu(&self, a: Elem) -> u64 {
        self.mu[a]
    }

    /// The state represented by bit `i` of a `mu` mask.
    pub fn rho(&self, i: usize) -> Elem {
        self.states[i]
    }

    /// `p _|_ q` iff `q <= p'`; `None` without an orthocomplement.
    pub fn orthogonal(&self, p: usize, q: usize) -> Option<bool> {
        let o = self.ortho.as_ref()?;
        Some(self.lattice.leq(self.states[q], o.perp(self.states[p])))
    }

    pub fn mu_is_surjective(&self) -> bool {
        self.states.len() < 64 && {
            let mut seen = self.mu.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() as u64 == 1u64 << self.states.len()
        }
    }
}

fn mask_of(l: &LatticeRef, states: &[Elem], a: Elem) -> u64 {
    states.iter().enumerate().filter(|&(_, &p)| l.leq(p, a)).fold(0, |m, (i, _)| m | 1 << i)
}

/// Cartan maps of an atomistic lattice, with every law checked.
pub fn build_system(l: &LatticeRef) -> Result<StatePropertySystem> {
    l.require_atomistic()?;
    let states = l.atoms();
    if states.len() > 64 {
        return Err(Error::SizeLimit { what: format!("states of {}", l.name()), size: states.len() as u128, limit: 64 });
    }
    let mu: Vec<u64> = l.elements().map(|a| mask_of(l, &states, a)).collect();
    let full = if states.len() == 64 { u64::MAX } else { (1u64 << states.len()) - 1 };
    for a in l.elements() {
        for b in l.elements() {
            assert!(a == b || mu[a] != mu[b], "mu is injective on an atomistic lattice");
            assert_eq!(mu[l.meet(a, b)], mu[a] & mu[b], "mu turns meets into intersections");
            let by_states = (0..states.len()).all(|i| mu[a] & (1 << i) == 0 || mu[b] & (1 << i) != 0);
            assert_eq!(l.leq(a, b), by_states, "states detect the order");
        }
    }
    assert_eq!(mu[l.top()], full);
    if l.size() <= EXHAUSTIVE_MEETS {
        for set in 0u64..1 << l.size() {
            let members = l.elements().filter(|&x| set & (1 << x) != 0);
            let meet = l.meet_all(members.clone());
            let inter = members.fold(full, |m, x| m & mu[x]);
            assert_eq!(mu[meet], inter, "mu turns arbitrary meets into intersections");
        }
    }
    Ok(StatePropertySystem { lattice: l.clone(), ortho: None, states, mu })
}

/// As [`build_system`], also checking `mu(a') = mu(a)^perp` on states.
pub fn build_ortho_system(o: &OrthoLattice) -> Result<StatePropertySystem> {
    let mut sys = build_system(o.lattice())?;
    sys.ortho = Some(o.clone());
    let n = sys.states.len();
    for a in sys.lattice.elements() {
        let perp = (0..n)
            .filter(|&q| (0..n).all(|p| sys.mu[a] & (1 << p) == 0 || sys.orthogonal(p, q) == Some(true)))
            .fold(0u64, |m, q| m | 1 << q);
        assert_eq!(sys.mu[o.perp(a)], perp, "mu(a') is the orthogonal of mu(a)");
    }
    Ok(sys)
}

/// Classical properties: `z` with every atom below `z` or below `z'`.
/// Elements `z` with `x = (x /\ z) \/ (x /\ z')` for every `x`. On atomistic
/// lattices this is the same as every atom lying below `z` or below `z'`.
pub fn center(o: &OrthoLattice) -> Result<Vec<Elem>> {
    let l = o.lattice();
    let splits = |z: Elem| l.elements().all(|x| l.join(l.meet(x, z), l.meet(x, o.perp(z))) == x);
    let c: Vec<Elem> = l.elements().filter(|&z| splits(z)).collect();
    if l.is_atomistic() {
        let atoms = l.atoms();
        let by_atoms: Vec<Elem> = l.elements().filter(|&z| atoms.iter().all(|&p| l.leq(p, z) || l.leq(p, o.perp(z)))).collect();
        assert_eq!(c, by_atoms, "atom criterion for the center");
    }
    Ok(c)
}

/// `L ~ x_alpha [0, alpha]` over the atoms `alpha` of the center.
#[derive(Debug, Clone)]
pub struct ClassicalDecomposition {
    pub center: Vec<Elem>,
    pub central_atoms: Vec<Elem>,
    pub factors: Vec<Interval>,
    pub product: Product,
    /// `x |-> (x /\ alpha)_alpha`.
    pub iso: LatticeMap,
}

pub fn classical_decomposition(o: &OrthoLattice, limits: &Limits) -> Result<ClassicalDecomposition> {
    let l = o.lattice();
    let center = center(o)?;
    let central_atoms: Vec<Elem> = center
        .iter()
        .copied()
        .filter(|&z| z != l.bottom() && center.iter().all(|&y| y == l.bottom() || y == z || !l.leq(y, z)))
        .collect();
    let factors: Vec<Interval> = central_atoms.iter().map(|&a| lower_interval(l, a)).collect();
    let product = direct_product(&factors.iter().map(|f| f.lattice.clone()).collect::<Vec<_>>(), limits)?;
    let table: Vec<Elem> = l
        .elements()
        .map(|x| {
            let t: Vec<Elem> = factors.iter().map(|f| f.local(l.meet(x, f.anchor)).expect("x /\\ alpha <= alpha")).collect();
            product.index(&t)
        })
        .collect();
    assert!(is_order_isomorphism(l, &product.lattice, &table), "central atoms decompose L");
    let iso = LatticeMap::new(l, &product.lattice, table)?;
    let p = iso.profile();
    assert!(p.joins && p.meets);
    for x in l.elements() {
        for (f, &a) in factors.iter().zip(&central_atoms) {
            let restricted = l.meet(o.perp(l.meet(x, a)), a);
            assert_eq!(restricted, l.meet(o.perp(x), a), "restricted orthocomplement is componentwise");
            debug_assert!(f.local(restricted).is_some());
        }
    }
    Ok(ClassicalDecomposition { center, central_atoms, factors, product, iso })
}

/// `N = m*(0)`, `D` the join of the atoms of `B` below `N'`, `C = D' /\ N'`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub null: Elem,
    pub discrete: Elem,
    pub continuous: Elem,
    pub discrete_part: Interval,
    pub continuous_part: Interval,
}

pub fn observable_spectrum(m: &LatticeMap, b: &OrthoLattice, l: &OrthoLattice) -> Result<Spectrum> {
    let bl = b.lattice();
    bl.boolean_complement()?;
    let report = colatt_check(m, b, l)?;
    if !report.passed {
        return Err(Error::NotCOLattMorphism(report.witnesses.join("; ")));
    }
    let upper = right_adjoint(m)?;
    let null = upper.apply(l.lattice().bottom());
    let discrete = bl.join_all(bl.atoms().into_iter().filter(|&e| bl.leq(e, b.perp(null))));
    let continuous = bl.meet(b.perp(discrete), b.perp(null));
    for (x, y) in [(null, discrete), (null, continuous), (discrete, continuous)] {
        assert_eq!(bl.meet(x, y), bl.bottom(), "spectral parts are disjoint");
    }
    assert_eq!(bl.join(bl.join(null, discrete), continuous), bl.top(), "spectral parts exhaust B");
    let discrete_part = lower_interval(bl, discrete);
    assert!(discrete_part.lattice.is_atomistic());
    // a finite interval without atoms is trivial
    assert_eq!(continuous, bl.bottom(), "finite Boolean algebras have no continuous spectrum");
    let continuous_part = lower_interval(bl, continuous);
    Ok(Spectrum { null, discrete, continuous, discrete_part, continuous_part })
}

/// A relation `a1 ~> a2` between `L1` and `L2`, read "a1 is a material cause of a2".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalRelation {
    source: LatticeRef,
    target: LatticeRef,
    rel: Vec<bool>,
}

impl CausalRelation {
    /// Validates full isotonicity, right meet stability and left join closure.
    pub fn new(source: &LatticeRef, target: &LatticeRef, pairs: &[(Elem, Elem)]) -> Result<CausalRelation> {
        let r = Self::unchecked(source, target, pairs)?;
        r.validate()?;
        Ok(r)
    }

    fn unchecked(source: &LatticeRef, target: &LatticeRef, pairs: &[(Elem, Elem)]) -> Result<CausalRelation> {
        let mut rel = vec![false; source.size() * target.size()];
        for &(a, b) in pairs {
            if a >= source.size() {
                return Err(Error::IndexOutOfRange { index: a, size: source.size() });
            }
            if b >= target.size() {
                return Err(Error::IndexOutOfRange { index: b, size: target.size() });
            }
            rel[a * target.size() + b] = true;
        }
        Ok(CausalRelation { source: source.clone(), target: target.clone(), rel })
    }

    pub fn source(&self) -> &LatticeRef {
        &self.source
    }

    pub fn target(&self) -> &LatticeRef {
        &self.target
    }

    pub fn holds(&self, a1: Elem, a2: Elem) -> bool {
        self.rel[a1 * self.target.size() + a2]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        self.source.elements().flat_map(|a| self.target.elements().map(move |b| (a, b))).filter(|&(a, b)| self.holds(a, b)).collect()
    }

    fn pair_label(&self, a: Elem, b: Elem) -> String {
        format!("{} ~> {}", self.source.label(a), self.target.label(b))
    }

    fn validate(&self) -> Result<()> {
        let (l1, l2) = (&self.source, &self.target);
        for (a1, a2) in self.pairs() {
            for x1 in l1.elements().filter(|&x| l1.leq(x, a1)) {
                for x2 in l2.elements().filter(|&x| l2.leq(a2, x)) {
                    if !self.holds(x1, x2) {
                        return Err(Error::NotFullyIsotone(format!(
                            "{} holds but {} does not",
                            self.pair_label(a1, a2),
                            self.pair_label(x1, x2)
                        )));
                    }
                }
            }
        }
        for a1 in l1.elements() {
            for b in l2.elements().filter(|&b| self.holds(a1, b)) {
                for c in l2.elements().filter(|&c| self.holds(a1, c)) {
                    if !self.holds(a1, l2.meet(b, c)) {
                        return Err(Error::NotMeetStable(format!(
                            "{} and {} hold but {} does not",
                            self.pair_label(a1, b),
                            self.pair_label(a1, c),
                            self.pair_label(a1, l2.meet(b, c))
                        )));
                    }
                }
            }
        }
        for a2 in l2.elements() {
            if !self.holds(l1.bottom(), a2) {
                return Err(Error::NotJoinClosed(format!("the empty join {} is missing", self.pair_label(l1.bottom(), a2))));
            }
            for a in l1.elements().filter(|&a| self.holds(a, a2)) {
                for b in l1.elements().filter(|&b| self.holds(b, a2)) {
                    if !self.holds(l1.join(a, b), a2) {
                        return Err(Error::NotJoinClosed(format!(
                            "{} and {} hold but {} does not",
                            self.pair_label(a, a2),
                            self.pair_label(b, a2),
                            self.pair_label(l1.join(a, b), a2)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The smallest valid relation containing `seeds`.
pub fn close_relation(source: &LatticeRef, target: &LatticeRef, seeds: &[(Elem, Elem)]) -> Result<CausalRelation> {
    let mut r = CausalRelation::unchecked(source, target, seeds)?;
    let (l1, l2) = (source.clone(), target.clone());
    let n2 = l2.size();
    for b in l2.elements() {
        r.rel[l1.bottom() * n2 + b] = true;
    }
    loop {
        let mut changed = false;
        let mut add = |rel: &mut Vec<bool>, a: Elem, b: Elem| {
            if !rel[a * n2 + b] {
                rel[a * n2 + b] = true;
                changed = true;
            }
        };
        for (a1, a2) in r.pairs() {
            for x1 in l1.elements().filter(|&x| l1.leq(x, a1)) {
                for x2 in l2.elements().filter(|&x| l2.leq(a2, x)) {
                    add(&mut r.rel, x1, x2);
                }
            }
        }
        let pairs = r.pairs();
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if a == c {
                    add(&mut r.rel, a, l2.meet(b, d));
                }
                if b == d {
                    add(&mut r.rel, l1.join(a, c), b);
                }
            }
        }
        if !changed {
            break;
        }
    }
    r.validate()?;
    Ok(r)
}

/// `g(a2) = \/{ a1 | a1 ~> a2 }`, with `a1 ~> a2 <=> a1 <= g(a2)` verified.
pub fn causal_to_map(r: &CausalRelation) -> Result<WeakMeetMap> {
    let (l1, l2) = (&r.source, &r.target);
    let g = LatticeMap::from_fn(l2, l1, |a2| l1.join_all(l1.elements().filter(|&a1| r.holds(a1, a2))));
    for a1 in l1.elements() {
        for a2 in l2.elements() {
            assert_eq!(r.holds(a1, a2), l1.leq(a1, g.apply(a2)), "representation law");
        }
    }
    WeakMeetMap::new(g)
}

/// `a1 ~> a2 :<=> a1 <= g(a2)`.
pub fn relation_of(g: &WeakMeetMap) -> Result<CausalRelation> {
    let (l2, l1) = (g.map().dom(), g.map().cod());
    let pairs: Vec<(Elem, Elem)> = l1
        .elements()
        .flat_map(|a1| l2.elements().map(move |a2| (a1, a2)))
        .filter(|&(a1, a2)| l1.leq(a1, g.map().apply(a2)))
        .collect();
    CausalRelation::new(l1, l2, &pairs)
}

/// Consecutive propagation: the balanced pseudoadjoint `f : L1^u -> L2^u`.
pub fn propagation(g: &WeakMeetMap) -> Result<UpperMap> {
    Ok(pointed_extend(g)?.upper)
}

#[derive(Debug, Clone)]
pub struct EvolutionReport {
    /// Left adjoint `psi : L0 -> L1`, present when `phi(1) = 1`.
    pub adjoint: Option<LatticeMap>,
    pub dense: Option<bool>,
    pub atomic: Option<bool>,
    /// The partial left adjoint below `phi(1)`, always present.
    pub partial: PartialJoinMap,
    /// Pairs of orthogonal atoms of `L0` whose images under `psi` are not orthogonal.
    /// Informational only, and only computed for atomic `psi` between ortholattices.
    pub orthogonality_failures: Option<Vec<(Elem, Elem)>>,
}

/// For an evolution `phi : L1 -> L0` preserving non-empty meets and `0`.
pub fn evolution_adjoint(phi: &LatticeMap, ortho: Option<(&OrthoLattice, &OrthoLattice)>) -> Result<EvolutionReport> {
    let w = WeakMeetMap::new(phi.clone())?;
    let (l1, l0) = (phi.dom(), phi.cod());
    if phi.apply(l1.bottom()) != l0.bottom() {
        return Err(Error::NotBalancedAtZero(format!("phi(0) = {}", l0.label(phi.apply(l1.bottom())))));
    }
    let partial = restrict_codomain(&w)?.alpha;
    if phi.apply(l1.top()) != l0.top() {
        return Ok(EvolutionReport { adjoint: None, dense: None, atomic: None, partial, orthogonality_failures: None });
    }
    let psi = left_adjoint(phi)?;
    let dense = psi.profile().dense;
    let atoms1 = l1.atoms();
    let atoms0 = l0.atoms();
    let atomic = atoms0.iter().all(|&p| psi.apply(p) == l1.bottom() || atoms1.contains(&psi.apply(p)));
    let orthogonality_failures = match ortho {
        Some((o1, o0)) if atomic => {
            if !same_lattice(o1.lattice(), l1) || !same_lattice(o0.lattice(), l0) {
                return Err(Error::ShapeMismatch("orthocomplements do not match the evolution".into()));
            }
            let mut bad = Vec::new();
            for &p in &atoms0 {
                for &q in atoms0.iter().filter(|&&q| l0.leq(q, o0.perp(p))) {
                    if !l1.leq(psi.apply(q), o1.perp(psi.apply(p))) {
                        bad.push((p, q));
                    }
                }
            }
            Some(bad)
        }
        _ => None,
    };
    Ok(EvolutionReport { adjoint: Some(psi), dense: Some(dense), atomic: Some(atomic), partial, orthogonality_failures })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::{boolean_ortho, mo2, two_ortho};
    use crate::lattice::Lattice;
    use crate::maps::{hom_set, HomClass};

    #[test]
    fn cartan_maps() {
        let b4 = build_ortho_system(&boolean_ortho(2)).unwrap();
        assert_eq!(b4.states().len(), 2);
        assert!(b4.mu_is_surjective());
        let m = build_ortho_system(&mo2()).unwrap();
        assert_eq!(m.states().len(), 4);
        assert!(!m.mu_is_surjective());
        assert_eq!(m.orthogonal(0, 1), Some(true));
        assert_eq!(m.orthogonal(0, 2), Some(false));
        assert_eq!(build_system(two_ortho().lattice()).unwrap().states().len(), 1);
        let o6 = crate::corpus::o6();
        assert!(matches!(build_system(o6.lattice()), Err(Error::NotAtomistic(_))));
    }

    #[test]
    fn centers() {
        let b4 = boolean_ortho(2);
        assert_eq!(center(&b4).unwrap().len(), 4);
        let d = classical_decomposition(&b4, &Limits::default()).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.factors.iter().all(|f| f.lattice.size() == 2));
        let m = mo2();
        assert_eq!(center(&m).unwrap(), vec![0, 5]);
        let d = classical_decomposition(&m, &Limits::default()).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].lattice.size(), 6);
        assert_eq!(center(&two_ortho()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn spectra() {
        let b8 = boolean_ortho(3);
        let id = LatticeMap::identity(b8.lattice());
        let s = observable_spectrum(&id, &b8, &b8).unwrap();
        assert_eq!((s.null, s.discrete, s.continuous), (0, 7, 0));
        let b4 = boolean_ortho(2);
        let two = two_ortho();
        // projection onto the first coordinate is a genuine observable
        let proj = LatticeMap::new(b4.lattice(), two.lattice(), vec![0, 1, 0, 1]).unwrap();
        let s = observable_spectrum(&proj, &b4, &two).unwrap();
        assert_eq!((s.null, s.discrete, s.continuous), (2, 1, 0));
        let collapse = LatticeMap::new(b4.lattice(), two.lattice(), vec![0, 1, 1, 1]).unwrap();
        assert!(matches!(observable_spectrum(&collapse, &b4, &two), Err(Error::NotCOLattMorphism(_))));
        // {x} and {y,z}
        let embed = LatticeMap::new(b4.lattice(), b8.lattice(), vec![0, 1, 6, 7]).unwrap();
        let s = observable_spectrum(&embed, &b4, &b8).unwrap();
        assert_eq!((s.null, s.discrete), (0, 3));
    }

    fn lref(l: Lattice) -> LatticeRef {
        Arc::new(l)
    }

    #[test]
    fn order_relation_gives_identity() {
        let l = lref(crate::corpus::d4());
        let pairs: Vec<_> = l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).filter(|&(a, b)| l.leq(a, b)).collect();
        let r = CausalRelation::new(&l, &l, &pairs).unwrap();
        let g = causal_to_map(&r).unwrap();
        assert!(g.map().is_identity());
        let f = propagation(&g).unwrap();
        assert!(f.map().values().iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn bottom_only_relation() {
        let l = lref(Lattice::chain(3));
        let r = close_relation(&l, &l, &[]).unwrap();
        let g = causal_to_map(&r).unwrap();
        assert!(g.map().values().iter().all(|&v| v == 0));
        let f = propagation(&g).unwrap();
        let top = f.target().new_top;
        assert_eq!(f.map().apply(0), 0);
        assert!((1..=3).all(|x| f.map().apply(x) == top));
    }

    #[test]
    fn invalid_relations_are_rejected() {
        let l = lref(Lattice::chain(3));
        assert!(matches!(CausalRelation::new(&l, &l, &[(0, 0), (0, 1), (0, 2), (1, 1)]), Err(Error::NotFullyIsotone(_))));
        let d = lref(crate::corpus::d4());
        let base: Vec<_> = (0..4).map(|b| (0, b)).collect();
        let mut pairs = base.clone();
        pairs.extend([(1, 1), (1, 2), (1, 3)]);
        assert!(matches!(CausalRelation::new(&d, &d, &pairs), Err(Error::NotMeetStable(_))));
        let mut pairs = base;
        pairs.extend([(1, 3), (2, 3)]);
        assert!(matches!(CausalRelation::new(&d, &d, &pairs), Err(Error::NotJoinClosed(_))));
        assert!(matches!(CausalRelation::new(&d, &d, &[]), Err(Error::NotJoinClosed(_))));
    }

    #[test]
    fn weak_meet_maps_roundtrip_through_relations() {
        let c3 = lref(Lattice::chain(3));
        let d = lref(crate::corpus::d4());
        for (a, b) in [(&c3, &d), (&d, &c3), (&d, &d)] {
            for g in crate::weak::weak_meet_maps(a, b, &Limits::default()).unwrap() {
                let r = relation_of(&g).unwrap();
                assert_eq!(causal_to_map(&r).unwrap(), g);
            }
        }
    }

    #[test]
    fn evolutions() {
        let d = lref(crate::corpus::d4());
        let rep = evolution_adjoint(&LatticeMap::identity(&d), None).unwrap();
        assert!(rep.adjoint.unwrap().is_identity());
        assert_eq!(rep.dense, Some(true));
        for phi in hom_set(&d, &d, HomClass::Meet, &Limits::default()).unwrap() {
            if phi.apply(0) == 0 {
                assert_eq!(evolution_adjoint(&phi, None).unwrap().dense, Some(true));
            } else {
                assert!(matches!(evolution_adjoint(&phi, None), Err(Error::NotBalancedAtZero(_))));
            }
        }
        let short = LatticeMap::new(&d, &d, vec![0, 1, 0, 1]).unwrap();
        let rep = evolution_adjoint(&short, None).unwrap();
        assert!(rep.adjoint.is_none());
        assert_eq!(rep.partial.anchor(), 1);
        let m = mo2();
        let rep = evolution_adjoint(&LatticeMap::identity(m.lattice()), Some((&m, &m))).unwrap();
        assert_eq!(rep.orthogonality_failures, Some(vec![]));
    }
}
