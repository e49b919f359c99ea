//! Closure operators and their fixed-point lattices, closure spaces with
//! partial continuous maps, the functors between closure spaces and atomistic
//! lattices, and the power-set functors on finite Boolean lattices.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FinitePoset, Lattice, LatticeRef};
use crate::maps::{check_adjunction, compose, right_adjoint, LatticeMap};

/// An isotone, inflationary, idempotent endomap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureOperator {
    map: LatticeMap,
}

impl ClosureOperator {
    pub fn lattice(&self) -> &LatticeRef {
        self.map.dom()
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map.apply(a)
    }
}

pub fn validate_closure(t: &LatticeMap) -> Result<ClosureOperator> {
    let l = t.dom();
    if !crate::maps::same_lattice(l, t.cod()) {
        return Err(Error::ShapeMismatch(format!("closure must be an endomap, got {} -> {}", l.name(), t.cod().name())));
    }
    if let Some((a, b)) = t.isotone_witness() {
        return Err(Error::NotClosure(format!("not isotone: {} <= {} but T({}) > T({})", l.label(a), l.label(b), l.label(a), l.label(b))));
    }
    for a in l.elements() {
        if !l.leq(a, t.apply(a)) {
            return Err(Error::NotClosure(format!("not inflationary at {}: T({}) = {}", l.label(a), l.label(a), l.label(t.apply(a)))));
        }
        if t.apply(t.apply(a)) != t.apply(a) {
            return Err(Error::NotClosure(format!("not idempotent at {}", l.label(a))));
        }
    }
    Ok(ClosureOperator { map: t.clone() })
}

/// The fixed points of a closure with the inclusion `U` and the reflection `a |-> T(a)`.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    pub lattice: LatticeRef,
    /// Local index to element of the underlying lattice.
    pub members: Vec<Elem>,
    pub inclusion: LatticeMap,
    pub reflection: LatticeMap,
}

impl FixedPoints {
    pub fn local(&self, a: Elem) -> Option<Elem> {
        self.members.iter().position(|&m| m == a)
    }
}

/// Builds the fixed-point lattice from the restricted order and checks that
/// meets are inherited and joins are `T(\/A)`.
pub fn fixed_points(t: &ClosureOperator) -> FixedPoints {
    let l = t.lattice();
    let members: Vec<Elem> = l.elements().filter(|&a| t.apply(a) == a).collect();
    let m = members.len();
    let poset = FinitePoset::from_relation(m, |i, j| l.leq(members[i], members[j]))
        .and_then(|p| p.with_labels(members.iter().map(|&a| l.label(a).to_string()).collect()))
        .expect("restriction of a partial order");
    let lattice = Arc::new(Lattice::from_poset(format!("Fix({})", l.name()), poset).expect("fixed points of a closure form a lattice"));
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (members[i], members[j]);
            assert_eq!(members[lattice.meet(i, j)], l.meet(a, b), "meet of fixed points is inherited");
            assert_eq!(members[lattice.join(i, j)], t.apply(l.join(a, b)), "join of fixed points is T of the join");
        }
    }
    assert_eq!(members[lattice.bottom()], t.apply(l.bottom()));
    assert_eq!(members[lattice.top()], l.top());
    let inclusion = LatticeMap::from_fn(&lattice, l, |i| members[i]);
    let local = |a: Elem| members.iter().position(|&x| x == a).expect("T(a) is fixed");
    let reflection = LatticeMap::from_fn(l, &lattice, |a| local(t.apply(a)));
    FixedPoints { lattice, members, inclusion, reflection }
}

/// The monad `g o f` of an adjunction compared with the image of `g`.
#[derive(Debug, Clone)]
pub struct MonadComparison {
    pub closure: ClosureOperator,
    pub fixed: FixedPoints,
    pub image_of_right: Vec<Elem>,
    pub matches: bool,
}

pub fn monad_from_adjunction(f: &LatticeMap, g: &LatticeMap) -> Result<MonadComparison> {
    if !check_adjunction(f, g)? {
        return Err(Error::NotAdjoint(format!("{f:?} is not left adjoint to {g:?}")));
    }
    let closure = validate_closure(&compose(g, f)?)?;
    let fixed = fixed_points(&closure);
    let image_of_right = g.image();
    let matches = fixed.members == image_of_right;
    Ok(MonadComparison { closure, fixed, image_of_right, matches })
}

/// A finite point set with a Moore family of closed subsets (bitmasks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSpace {
    name: String,
    points: Vec<String>,
    closed: Vec<u64>,
}

pub const MAX_SPACE_POINTS: usize = 20;

fn sort_masks(v: &mut Vec<u64>) {
    v.sort_by_key(|m| (m.count_ones(), *m));
    v.dedup();
}

impl ClosureSpace {
    pub fn new(name: impl Into<String>, points: Vec<String>, closed: Vec<u64>) -> Result<ClosureSpace> {
        let name = name.into();
        let n = points.len();
        if n > MAX_SPACE_POINTS {
            return Err(Error::SizeLimit { what: format!("closure space {name}"), size: n as u128, limit: MAX_SPACE_POINTS as u128 });
        }
        let full = full_mask(n);
        let mut closed = closed;
        sort_masks(&mut closed);
        if let Some(&bad) = closed.iter().find(|&&m| m & !full != 0) {
            return Err(Error::NotMooreFamily(format!("closed set {bad:#b} mentions points outside {name}")));
        }
        let space = ClosureSpace { name, points, closed };
        if !space.closed.contains(&full) {
            return Err(Error::NotMooreFamily(format!("the whole point set of {} is not closed", space.name)));
        }
        for &a in &space.closed {
            for &b in &space.closed {
                if space.closed.binary_search_by_key(&((a & b).count_ones(), a & b), |m| (m.count_ones(), *m)).is_err() {
                    return Err(Error::NotMooreFamily(format!(
                        "{} /\\ {} = {} is not closed in {}",
                        space.set_label(a),
                        space.set_label(b),
                        space.set_label(a & b),
                        space.name
                    )));
                }
            }
        }
        Ok(space)
    }

    /// Every subset closed.
    pub fn discrete(name: impl Into<String>, points: Vec<String>) -> Result<ClosureSpace> {
        let n = points.len();
        ClosureSpace::new(name, points, (0..=full_mask(n)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn full(&self) -> u64 {
        full_mask(self.size())
    }

    /// Closed sets ordered by (cardinality, mask).
    pub fn closed_sets(&self) -> &[u64] {
        &self.closed
    }

    pub fn is_closed(&self, a: u64) -> bool {
        self.closed.contains(&a)
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn set_label(&self, a: u64) -> String {
        let parts: Vec<&str> = (0..self.size()).filter(|&i| a >> i & 1 == 1).map(|i| self.points[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Smallest closed superset.
    pub fn closure_of(&self, a: u64) -> u64 {
        self.closed.iter().filter(|&&c| a & !c == 0).fold(self.full(), |acc, &c| acc & c)
    }

    pub fn simplicity_witness(&self) -> Option<String> {
        if !self.is_closed(0) {
            return Some(format!("the empty set is not closed in {}", self.name));
        }
        (0..self.size())
            .find(|&p| !self.is_closed(1 << p))
            .map(|p| format!("{{{}}} is not closed in {}", self.points[p], self.name))
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_witness().is_none()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Every simple closure space on `n` points, in a deterministic order.
pub fn all_simple_spaces(n: usize) -> Vec<ClosureSpace> {
    assert!(n <= 4, "enumeration of Moore families is only meant for tiny point sets");
    let full = full_mask(n);
    let forced: Vec<u64> = std::iter::once(0).chain((0..n).map(|p| 1 << p)).chain(std::iter::once(full)).collect();
    let optional: Vec<u64> = (0..=full).filter(|m| !forced.contains(m)).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << optional.len() {
        let mut family = forced.clone();
        family.extend(optional.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &m)| m));
        if let Ok(s) = ClosureSpace::new(format!("S{n}_{choice}"), point_names(n), family) {
            out.push(s);
        }
    }
    out
}

/// A partial map `Sigma1 \ K -> Sigma2`; `None` marks the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialContinuousMap {
    source: ClosureSpace,
    target: ClosureSpace,
    values: Vec<Option<usize>>,
}

impl PartialContinuousMap {
    /// Validates shapes only; continuity is checked separately.
    pub fn candidate(source: &ClosureSpace, target: &ClosureSpace, values: Vec<Option<usize>>) -> Result<PartialContinuousMap> {
        if values.len() != source.size() {
            return Err(Error::ShapeMismatch(format!("{} values for {} points", values.len(), source.size())));
        }
        if let Some(&bad) = values.iter().flatten().find(|&&v| v >= target.size()) {
            return Err(Error::IndexOutOfRange { index: bad, size: target.size() });
        }
        Ok(PartialContinuousMap { source: source.clone(), target: target.clone(), values })
    }

    pub fn new(source: &ClosureSpace, target: &ClosureSpace, values: Vec<Option<usize>>) -> Result<PartialContinuousMap> {
        let m = PartialContinuousMap::candidate(source, target, values)?;
        check_continuity(&m)?;
        Ok(m)
    }

    pub fn identity(s: &ClosureSpace) -> PartialContinuousMap {
        PartialContinuousMap { source: s.clone(), target: s.clone(), values: (0..s.size()).map(Some).collect() }
    }

    pub fn source(&self) -> &ClosureSpace {
        &self.source
    }

    pub fn target(&self) -> &ClosureSpace {
        &self.target
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.values[p]
    }

    pub fn kernel(&self) -> u64 {
        self.values.iter().enumerate().filter(|(_, v)| v.is_none()).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn preimage(&self, a2: u64) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some_and(|q| a2 >> q & 1 == 1))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Direct image of `A \ K`.
    pub fn image(&self, a1: u64) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| a1 >> i & 1 == 1)
            .filter_map(|(_, v)| *v)
            .fold(0, |m, q| m | 1 << q)
    }

    pub fn is_continuous(&self) -> bool {
        check_continuity(self).is_ok()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.is_total()
            && self.source.size() == self.target.size()
            && self.values.iter().flatten().all(|&q| !std::mem::replace(&mut seen[q], true))
    }
}

/// `K u alpha^-1(A2)` closed for every closed `A2`.
pub fn check_continuity(m: &PartialContinuousMap) -> Result<()> {
    let k = m.kernel();
    for &a2 in m.target.closed_sets() {
        let pulled = k | m.preimage(a2);
        if !m.source.is_closed(pulled) {
            return Err(Error::NotContinuous(format!(
                "closed set {} of {} pulls back to {} which is not closed in {}",
                m.target.set_label(a2),
                m.target.name(),
                m.source.set_label(pulled),
                m.source.name()
            )));
        }
    }
    Ok(())
}

/// `alpha2 o alpha1` with kernel `K1 u alpha1^-1(K2)`.
pub fn compose_continuous(alpha2: &PartialContinuousMap, alpha1: &PartialContinuousMap) -> Result<PartialContinuousMap> {
    if alpha1.target != alpha2.source {
        return Err(Error::ShapeMismatch(format!(
            "cannot follow a map into {} by one from {}",
            alpha1.target.name(),
            alpha2.source.name()
        )));
    }
    let values: Vec<Option<usize>> = alpha1.values.iter().map(|v| v.and_then(|q| alpha2.values[q])).collect();
    let composite = PartialContinuousMap { source: alpha1.source.clone(), target: alpha2.target.clone(), values };
    assert_eq!(composite.kernel(), alpha1.kernel() | alpha1.preimage(alpha2.kernel()), "kernel formula");
    check_continuity(&composite)?;
    Ok(composite)
}

/// Every partial continuous map between two spaces, lexicographic with `None` first.
pub fn continuous_maps(s1: &ClosureSpace, s2: &ClosureSpace) -> Vec<PartialContinuousMap> {
    let (n1, n2) = (s1.size(), s2.size());
    let total = (n2 as u64 + 1).pow(n1 as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut values = vec![None; n1];
        let mut c = code;
        for k in (0..n1).rev() {
            let d = (c % (n2 as u64 + 1)) as usize;
            values[k] = d.checked_sub(1);
            c /= n2 as u64 + 1;
        }
        let m = PartialContinuousMap { source: s1.clone(), target: s2.clone(), values };
        if m.is_continuous() {
            out.push(m);
        }
    }
    out
}

/// `L(S)`: closed sets ordered by inclusion.
#[derive(Debug, Clone)]
pub struct ClosedSetLattice {
    pub space: ClosureSpace,
    pub lattice: LatticeRef,
    /// Element index to closed set; shares the order of `closed_sets()`.
    pub sets: Vec<u64>,
}

impl ClosedSetLattice {
    pub fn index_of(&self, a: u64) -> Option<Elem> {
        self.sets.iter().position(|&s| s == a)
    }
}

pub fn functor_l(s: &ClosureSpace) -> Result<ClosedSetLattice> {
    if let Some(w) = s.simplicity_witness() {
        return Err(Error::NotSimple(w));
    }
    let sets = s.closed_sets().to_vec();
    let poset = FinitePoset::from_relation(sets.len(), |i, j| sets[i] & !sets[j] == 0)?
        .with_labels(sets.iter().map(|&a| s.set_label(a)).collect())?;
    let lattice = Arc::new(Lattice::from_poset(format!("L({})", s.name()), poset)?);
    assert!(lattice.is_atomistic(), "closed sets of a simple space form an atomistic lattice");
    Ok(ClosedSetLattice { space: s.clone(), lattice, sets })
}

/// `f_alpha(A) = T2 alpha(A \ K)` and `g_alpha(A) = K u alpha^-1(A)`.
#[derive(Debug, Clone)]
pub struct LMorphism {
    pub source: ClosedSetLattice,
    pub target: ClosedSetLattice,
    pub f: LatticeMap,
    pub g: LatticeMap,
}

pub fn functor_l_map(alpha: &PartialContinuousMap) -> Result<LMorphism> {
    check_continuity(alpha)?;
    let source = functor_l(alpha.source())?;
    let target = functor_l(alpha.target())?;
    Ok(l_map_between(alpha, source, target))
}

fn l_map_between(alpha: &PartialContinuousMap, source: ClosedSetLattice, target: ClosedSetLattice) -> LMorphism {
    let t2 = alpha.target();
    let f = LatticeMap::from_fn(&source.lattice, &target.lattice, |i| {
        target.index_of(t2.closure_of(alpha.image(source.sets[i]))).expect("closure is closed")
    });
    let k = alpha.kernel();
    let g = LatticeMap::from_fn(&target.lattice, &source.lattice, |j| {
        source.index_of(k | alpha.preimage(target.sets[j])).expect("continuity")
    });
    assert!(check_adjunction(&f, &g).expect("shapes agree"), "f_alpha -| g_alpha");
    assert!(is_atomic_map(&f), "f_alpha sends atoms to atoms or zero");
    LMorphism { source, target, f, g }
}

/// Sends every atom to an atom or to zero.
pub fn is_atomic_map(f: &LatticeMap) -> bool {
    let c = f.cod();
    f.dom().atoms().into_iter().all(|p| {
        let v = f.apply(p);
        v == c.bottom() || c.lower_covers(v) == [c.bottom()]
    })
}

/// The two-sided criterion: atoms to atoms or zero iff every atom sits below `g` of some atom.
pub fn atomic_criterion_via_right_adjoint(f: &LatticeMap) -> Result<bool> {
    let g = right_adjoint(f)?;
    let (l1, l2) = (f.dom(), f.cod());
    let atoms2 = l2.atoms();
    Ok(l1.atoms().into_iter().all(|p1| atoms2.iter().any(|&p2| l1.leq(p1, g.apply(p2)))))
}

/// `C(L)`: atoms with closure `A |-> {p | p <= \/A}`.
#[derive(Debug, Clone)]
pub struct AtomSpace {
    pub space: ClosureSpace,
    pub atoms: Vec<Elem>,
}

impl AtomSpace {
    /// `{p | p <= a}` as a mask over the atoms.
    pub fn atoms_below(&self, l: &Lattice, a: Elem) -> u64 {
        atom_mask(&self.atoms, l, a)
    }
}

fn atom_mask(atoms: &[Elem], l: &Lattice, a: Elem) -> u64 {
    atoms.iter().enumerate().filter(|(_, &p)| l.leq(p, a)).fold(0, |m, (i, _)| m | 1 << i)
}

pub fn functor_c(l: &LatticeRef) -> Result<AtomSpace> {
    l.require_atomistic()?;
    let atoms = l.atoms();
    let names = atoms.iter().map(|&p| l.label(p).to_string()).collect();
    let closed: Vec<u64> = l.elements().map(|a| atom_mask(&atoms, l, a)).collect();
    let space = ClosureSpace::new(format!("C({})", l.name()), names, closed)?;
    assert!(space.is_simple(), "pi -| i gives a simple closure");
    Ok(AtomSpace { space, atoms })
}

/// `alpha_f`: kernel `{p | f(p) = 0}`, value `f(p)` elsewhere.
pub fn functor_c_map(f: &LatticeMap) -> Result<PartialContinuousMap> {
    f.require_joins()?;
    let s1 = functor_c(f.dom())?;
    let s2 = functor_c(f.cod())?;
    c_map_between(f, &s1, &s2)
}

fn c_map_between(f: &LatticeMap, s1: &AtomSpace, s2: &AtomSpace) -> Result<PartialContinuousMap> {
    let c = f.cod();
    let mut values = Vec::with_capacity(s1.atoms.len());
    for &p in &s1.atoms {
        let v = f.apply(p);
        if v == c.bottom() {
            values.push(None);
        } else {
            match s2.atoms.iter().position(|&q| q == v) {
                Some(j) => values.push(Some(j)),
                None => return Err(Error::NotAtomicMap(format!("{} is not an atom", f.describe(p)))),
            }
        }
    }
    PartialContinuousMap::new(&s1.space, &s2.space, values)
}

/// `phi_S : p |-> {p}` from `S` to `C(L(S))`.
#[derive(Debug, Clone)]
pub struct SpaceRoundtrip {
    pub phi: PartialContinuousMap,
    pub bijective: bool,
    pub inverse_continuous: bool,
}

pub fn space_roundtrip(s: &ClosureSpace) -> Result<SpaceRoundtrip> {
    let ls = functor_l(s)?;
    let cls = functor_c(&ls.lattice)?;
    let values: Vec<Option<usize>> = (0..s.size())
        .map(|p| {
            let elem = ls.index_of(1 << p).expect("singletons are closed");
            cls.atoms.iter().position(|&q| q == elem)
        })
        .collect();
    let phi = PartialContinuousMap::new(s, &cls.space, values)?;
    let bijective = phi.is_bijective();
    let mut inverse = vec![None; s.size()];
    for (p, v) in phi.values.iter().enumerate() {
        if let Some(q) = v {
            inverse[*q] = Some(p);
        }
    }
    let inverse_continuous = PartialContinuousMap::candidate(&cls.space, s, inverse)?.is_continuous();
    Ok(SpaceRoundtrip { phi, bijective, inverse_continuous })
}

/// `psi_L : a |-> {p <= a}` from `L` to `L(C(L))`.
#[derive(Debug, Clone)]
pub struct LatticeRoundtrip {
    pub psi: LatticeMap,
    pub isomorphism: bool,
}

pub fn lattice_roundtrip(l: &LatticeRef) -> Result<LatticeRoundtrip> {
    let cl = functor_c(l)?;
    let lcl = functor_l(&cl.space)?;
    let psi = LatticeMap::from_fn(l, &lcl.lattice, |a| lcl.index_of(cl.atoms_below(l, a)).expect("closed"));
    let isomorphism = psi.is_injective()
        && psi.is_surjective()
        && l.elements().all(|a| l.elements().all(|b| l.leq(a, b) == lcl.lattice.leq(psi.apply(a), psi.apply(b))));
    Ok(LatticeRoundtrip { psi, isomorphism })
}

/// `CL(alpha) o phi_S1 = phi_S2 o alpha`.
pub fn phi_natural(alpha: &PartialContinuousMap) -> Result<bool> {
    let r1 = space_roundtrip(alpha.source())?;
    let r2 = space_roundtrip(alpha.target())?;
    let lm = functor_l_map(alpha)?;
    let cl = c_map_between(&lm.f, &functor_c(&lm.source.lattice)?, &functor_c(&lm.target.lattice)?)?;
    let left = compose_continuous(&cl, &r1.phi)?;
    let right = compose_continuous(&r2.phi, alpha)?;
    Ok(left.values == right.values)
}

/// `LC(f) o psi_L1 = psi_L2 o f`.
pub fn psi_natural(f: &LatticeMap) -> Result<bool> {
    let r1 = lattice_roundtrip(f.dom())?;
    let r2 = lattice_roundtrip(f.cod())?;
    let cf = functor_c_map(f)?;
    let lcf = functor_l_map(&cf)?;
    Ok(compose(&lcf.f, &r1.psi)?.values() == compose(&r2.psi, f)?.values())
}

/// Direct image and preimage along a total set map, on the power sets
/// `Lattice::powerset` of domain and codomain.
#[derive(Debug, Clone)]
pub struct PowerPair {
    pub direct: LatticeMap,
    pub inverse: LatticeMap,
}

pub fn power_functors(alpha: &[usize], n_target: usize) -> Result<PowerPair> {
    let n_source = alpha.len();
    for &v in alpha {
        if v >= n_target {
            return Err(Error::IndexOutOfRange { index: v, size: n_target });
        }
    }
    if n_source > 12 || n_target > 12 {
        return Err(Error::SizeLimit { what: "power set".into(), size: n_source.max(n_target) as u128, limit: 12 });
    }
    let p1: LatticeRef = Arc::new(Lattice::powerset(n_source));
    let p2: LatticeRef = Arc::new(Lattice::powerset(n_target));
    let direct = LatticeMap::from_fn(&p1, &p2, |a| (0..n_source).filter(|&x| a >> x & 1 == 1).fold(0, |m, x| m | 1 << alpha[x]));
    let inverse = LatticeMap::from_fn(&p2, &p1, |b| (0..n_source).filter(|&x| b >> alpha[x] & 1 == 1).fold(0, |m, x| m | 1 << x));
    assert!(check_adjunction(&direct, &inverse)?, "direct image -| preimage");
    Ok(PowerPair { direct, inverse })
}

/// `mu_B : a |-> atoms below a` and `rho_B : A |-> \/A` for a finite Boolean lattice.
#[derive(Debug, Clone)]
pub struct BooleanRepresentation {
    pub atoms: Vec<Elem>,
    pub mu: LatticeMap,
    pub rho: LatticeMap,
}

pub fn boolean_representation(b: &LatticeRef) -> Result<BooleanRepresentation> {
    b.boolean_complement()?;
    let atoms = b.atoms();
    if atoms.len() > 12 {
        return Err(Error::SizeLimit { what: "atoms of a Boolean lattice".into(), size: atoms.len() as u128, limit: 12 });
    }
    let p: LatticeRef = Arc::new(Lattice::powerset(atoms.len()));
    let mu = LatticeMap::from_fn(b, &p, |a| atoms.iter().enumerate().filter(|(_, &q)| b.leq(q, a)).fold(0, |m, (i, _)| m | 1 << i));
    let rho = LatticeMap::from_fn(&p, b, |s| b.join_all(atoms.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &q)| q)));
    Ok(BooleanRepresentation { atoms, mu, rho })
}

/// For `f -| g` between finite Boolean lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanDualityReport {
    pub mu_rho_adjoint: bool,
    pub mutually_inverse: bool,
    pub atoms_to_atoms: bool,
    pub right_adjoint_preserves_complement: bool,
}

pub fn boolean_duality(f: &LatticeMap, g: &LatticeMap) -> Result<BooleanDualityReport> {
    if !check_adjunction(f, g)? {
        return Err(Error::NotAdjoint(format!("{f:?} is not left adjoint to {g:?}")));
    }
    let (b1, b2) = (f.dom(), f.cod());
    let c1 = b1.boolean_complement()?;
    let c2 = b2.boolean_complement()?;
    let r1 = boolean_representation(b1)?;
    let mu_rho_adjoint = check_adjunction(&r1.mu, &r1.rho)?;
    let mutually_inverse = compose(&r1.rho, &r1.mu)?.is_identity() && compose(&r1.mu, &r1.rho)?.is_identity();
    let atoms2 = b2.atoms();
    let atoms_to_atoms = b1.atoms().into_iter().all(|p| atoms2.contains(&f.apply(p)));
    let right_adjoint_preserves_complement = b2.elements().all(|a| g.apply(c2[a]) == c1[g.apply(a)]);
    Ok(BooleanDualityReport { mu_rho_adjoint, mutually_inverse, atoms_to_atoms, right_adjoint_preserves_complement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{hom_set, special_maps, HomClass};
    use crate::lattice::Limits;
    use crate::ortho::OrthoSpace;

    fn lref(l: Lattice) -> LatticeRef {
        Arc::new(l)
    }

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_and_constant_top_are_closures() {
        let l = lref(Lattice::powerset(2));
        assert!(validate_closure(&LatticeMap::identity(&l)).is_ok());
        let top = validate_closure(&LatticeMap::constant(&l, &l, 3)).unwrap();
        let fp = fixed_points(&top);
        assert_eq!(fp.lattice.size(), 1);
        assert_eq!(fixed_points(&validate_closure(&LatticeMap::identity(&l)).unwrap()).lattice.size(), 4);
    }

    #[test]
    fn deflating_map_is_rejected() {
        let c3 = lref(Lattice::chain(3));
        let t = LatticeMap::new(&c3, &c3, vec![0, 0, 2]).unwrap();
        assert!(matches!(validate_closure(&t), Err(Error::NotClosure(w)) if w.contains("at m")));
    }

    #[test]
    fn biorthogonal_closure_on_two_orthogonal_points() {
        let s = OrthoSpace::new("S", names(2), &[(0, 1)]).unwrap();
        let p = lref(Lattice::powerset(2));
        let t = validate_closure(&LatticeMap::from_fn(&p, &p, |a| s.biclosure(a as u64) as usize)).unwrap();
        assert_eq!(fixed_points(&t).lattice.size(), 4);
    }

    #[test]
    fn monad_of_interval_pair() {
        let l = lref(Lattice::powerset(3));
        for a in l.elements() {
            let sm = special_maps(&l, a);
            let cmp = monad_from_adjunction(&sm.project_hat, &sm.embed_hat).unwrap();
            assert!(cmp.matches);
            let cmp = monad_from_adjunction(&sm.embed, &sm.project).unwrap();
            assert!(cmp.matches);
        }
    }

    #[test]
    fn closure_in_three_point_space() {
        let s = ClosureSpace::new("S", names(3), vec![0, 1, 2, 4, 7]).unwrap();
        assert_eq!(s.closure_of(0b011), 0b111);
        assert_eq!(s.closure_of(0b111), 0b111);
        assert_eq!(s.closure_of(0b010), 0b010);
        assert!(s.is_simple());
    }

    #[test]
    fn non_moore_family_is_rejected() {
        assert!(matches!(ClosureSpace::new("S", names(3), vec![3, 6, 7]), Err(Error::NotMooreFamily(_))));
        assert!(matches!(ClosureSpace::new("S", names(2), vec![0]), Err(Error::NotMooreFamily(_))));
    }

    #[test]
    fn empty_space_has_one_closed_set() {
        let s = ClosureSpace::new("E", vec![], vec![0]).unwrap();
        assert!(s.is_simple());
        assert_eq!(functor_l(&s).unwrap().lattice.size(), 1);
    }

    #[test]
    fn simple_space_counts() {
        assert_eq!(all_simple_spaces(0).len(), 1);
        assert_eq!(all_simple_spaces(1).len(), 1);
        assert_eq!(all_simple_spaces(2).len(), 1);
        assert_eq!(all_simple_spaces(3).len(), 8);
    }

    #[test]
    fn undefined_and_identity_maps_are_continuous() {
        let s = ClosureSpace::new("S", names(3), vec![0, 1, 2, 4, 7]).unwrap();
        assert!(PartialContinuousMap::identity(&s).is_continuous());
        assert!(PartialContinuousMap::new(&s, &s, vec![None; 3]).is_ok());
    }

    #[test]
    fn non_continuous_witness() {
        let disc = ClosureSpace::discrete("D", names(2)).unwrap();
        let coarse = ClosureSpace::new("C", names(2), vec![0, 3]).unwrap();
        // pulling {x} back along the identity into a space where it is not closed
        let err = PartialContinuousMap::new(&coarse, &disc, vec![Some(0), Some(1)]).unwrap_err();
        assert!(matches!(err, Error::NotContinuous(w) if w.contains("{x}")));
    }

    #[test]
    fn composition_kernel() {
        let spaces = all_simple_spaces(3);
        let s = &spaces[3];
        let maps = continuous_maps(s, s);
        for a1 in maps.iter().step_by(7) {
            for a2 in maps.iter().step_by(5) {
                let c = compose_continuous(a2, a1).unwrap();
                assert_eq!(c.kernel(), a1.kernel() | a1.preimage(a2.kernel()));
            }
        }
    }

    #[test]
    fn swap_on_discrete_space() {
        let d = ClosureSpace::discrete("D", names(2)).unwrap();
        let swap = PartialContinuousMap::new(&d, &d, vec![Some(1), Some(0)]).unwrap();
        let lm = functor_l_map(&swap).unwrap();
        let x = lm.source.index_of(0b01).unwrap();
        let y = lm.target.index_of(0b10).unwrap();
        assert_eq!(lm.f.apply(x), y);
        assert!(functor_l_map(&PartialContinuousMap::identity(&d)).unwrap().f.is_identity());
    }

    #[test]
    fn c_of_boolean_four_is_discrete() {
        let b4 = lref(Lattice::powerset(2));
        let s = functor_c(&b4).unwrap();
        assert_eq!(s.space.closed_sets().len(), 4);
        let zero = LatticeMap::constant(&b4, &b4, 0);
        assert_eq!(functor_c_map(&zero).unwrap().kernel(), 0b11);
    }

    #[test]
    fn c_rejects_non_atomistic_lattices() {
        assert!(matches!(functor_c(&lref(Lattice::chain(3))), Err(Error::NotAtomistic(_))));
    }

    #[test]
    fn roundtrips_and_naturality_on_small_spaces() {
        for n in 0..=3 {
            for s in all_simple_spaces(n) {
                let r = space_roundtrip(&s).unwrap();
                assert!(r.bijective && r.inverse_continuous);
            }
        }
        let spaces = all_simple_spaces(3);
        for s1 in spaces.iter().take(3) {
            for s2 in spaces.iter().take(3) {
                for alpha in continuous_maps(s1, s2) {
                    assert!(phi_natural(&alpha).unwrap());
                }
            }
        }
    }

    #[test]
    fn psi_is_an_isomorphism_and_natural() {
        let lim = Limits::default();
        let b8 = lref(Lattice::powerset(3));
        let b4 = lref(Lattice::powerset(2));
        assert!(lattice_roundtrip(&b8).unwrap().isomorphism);
        for f in hom_set(&b4, &b8, HomClass::AtomicJoin, &lim).unwrap() {
            assert!(psi_natural(&f).unwrap());
        }
    }

    #[test]
    fn atomic_criterion_matches_direct_check() {
        let lim = Limits::default();
        let b4 = lref(Lattice::powerset(2));
        let b8 = lref(Lattice::powerset(3));
        for f in hom_set(&b4, &b8, HomClass::Join, &lim).unwrap() {
            assert_eq!(is_atomic_map(&f), atomic_criterion_via_right_adjoint(&f).unwrap());
        }
    }

    #[test]
    fn power_functors_of_constant_map() {
        let p = power_functors(&[0, 0], 1).unwrap();
        assert!(compose(&p.direct, &p.inverse).unwrap().is_identity());
        assert!(!compose(&p.inverse, &p.direct).unwrap().is_identity());
        let id = power_functors(&[0, 1], 2).unwrap();
        assert!(id.direct.is_identity() && id.inverse.is_identity());
    }

    #[test]
    fn boolean_representation_is_inverse_pair() {
        let b8 = lref(Lattice::powerset(3));
        let r = boolean_representation(&b8).unwrap();
        assert!(compose(&r.mu, &r.rho).unwrap().is_identity());
        assert!(compose(&r.rho, &r.mu).unwrap().is_identity());
        let f = LatticeMap::identity(&b8);
        let rep = boolean_duality(&f, &f).unwrap();
        assert!(rep.mutually_inverse && rep.atoms_to_atoms && rep.right_adjoint_preserves_complement);
    }
}
