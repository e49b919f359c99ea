//! Truncated power sets `P0(L)`, union-preserving maps between them, the
//! coherence relation `f > theta`, and the hierarchy of transition
//! structures: power maps, based maps, strongly isotone maps, all union maps.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{checked_pow, Elem, LatticeRef, Limits};
use crate::maps::{hom_set, pointwise_join, same_lattice, HomClass, LatticeMap};

/// Subsets of `L \ {0}` as bitmasks; bit `i` is the `i`-th nonzero element.
#[derive(Debug, Clone)]
pub struct TruncatedPower {
    base: LatticeRef,
    nonzero: Vec<Elem>,
}

impl PartialEq for TruncatedPower {
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.base, &other.base)
    }
}

impl Eq for TruncatedPower {}

impl TruncatedPower {
    pub fn new(base: &LatticeRef, limits: &Limits) -> Result<TruncatedPower> {
        limits.check_power(&format!("P0({})", base.name()), base.size())?;
        let nonzero = base.elements().filter(|&a| a != base.bottom()).collect();
        Ok(TruncatedPower { base: base.clone(), nonzero })
    }

    pub fn base(&self) -> &LatticeRef {
        &self.base
    }

    pub fn nonzero(&self) -> &[Elem] {
        &self.nonzero
    }

    /// Number of subsets, `2^(|L|-1)`.
    pub fn size(&self) -> u64 {
        1 << self.nonzero.len()
    }

    pub fn top(&self) -> u32 {
        (self.size() - 1) as u32
    }

    pub fn bit(&self, a: Elem) -> Option<usize> {
        self.nonzero.iter().position(|&x| x == a)
    }

    /// `{a} \ {0}`.
    pub fn singleton(&self, a: Elem) -> u32 {
        self.bit(a).map_or(0, |i| 1 << i)
    }

    pub fn members(&self, mask: u32) -> impl Iterator<Item = Elem> + '_ {
        self.nonzero.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a)
    }

    /// `J(A) = \/A`.
    pub fn join_of(&self, mask: u32) -> Elem {
        self.base.join_all(self.members(mask))
    }

    /// `l(a) = (0, a]`.
    pub fn down(&self, a: Elem) -> u32 {
        self.nonzero.iter().enumerate().filter(|(_, &x)| self.base.leq(x, a)).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn label(&self, mask: u32) -> String {
        let parts: Vec<&str> = self.members(mask).map(|a| self.base.label(a)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn masks(&self) -> impl Iterator<Item = u32> {
        0..self.size() as u32
    }
}

/// `J : P0(L) -> L` and `l : L -> P0(L)` as tables.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub power: TruncatedPower,
    pub join: Vec<Elem>,
    pub down: Vec<u32>,
}

/// Checks `J -| l` and `J o l = id` before returning.
pub fn resolution(l: &LatticeRef, limits: &Limits) -> Result<Resolution> {
    let power = TruncatedPower::new(l, limits)?;
    let join: Vec<Elem> = power.masks().map(|m| power.join_of(m)).collect();
    let down: Vec<u32> = l.elements().map(|a| power.down(a)).collect();
    for m in power.masks() {
        for a in l.elements() {
            assert_eq!(l.leq(join[m as usize], a), m & !down[a] == 0, "J -| l");
        }
    }
    for a in l.elements() {
        assert_eq!(join[down[a] as usize], a, "J o l = id");
    }
    Ok(Resolution { power, join, down })
}

/// A union-preserving map `P0(L1) -> P0(L2)`, stored by its singleton images.
#[derive(Clone, PartialEq, Eq)]
pub struct UnionMap {
    source: TruncatedPower,
    target: TruncatedPower,
    images: Vec<u32>,
}

impl fmt::Debug for UnionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P0({}) -> P0({}) [", self.source.base.name(), self.target.base.name())?;
        for (i, &a) in self.source.nonzero.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}|->{}", self.source.base.label(a), self.target.label(self.images[i]))?;
        }
        write!(f, "]")
    }
}

impl UnionMap {
    pub fn new(source: &TruncatedPower, target: &TruncatedPower, images: Vec<u32>) -> Result<UnionMap> {
        if images.len() != source.nonzero.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} singleton images for {} nonzero elements",
                images.len(),
                source.nonzero.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&m| m as u64 >= target.size()) {
            return Err(Error::ShapeMismatch(format!("image mask {bad:#b} exceeds P0({})", target.base.name())));
        }
        Ok(UnionMap { source: source.clone(), target: target.clone(), images })
    }

    /// Builds from a full table indexed by source masks, rejecting tables
    /// that are not union-preserving.
    pub fn from_table(source: &TruncatedPower, target: &TruncatedPower, table: &[u32]) -> Result<UnionMap> {
        if table.len() as u64 != source.size() {
            return Err(Error::ShapeMismatch(format!("table has {} rows for {} subsets", table.len(), source.size())));
        }
        let images = (0..source.nonzero.len()).map(|i| table[1 << i]).collect();
        let m = UnionMap::new(source, target, images)?;
        for a in source.masks() {
            if m.apply(a) != table[a as usize] {
                return Err(Error::NotUnionPreserving(format!(
                    "theta({}) = {} but the union of singleton images is {}",
                    source.label(a),
                    target.label(table[a as usize]),
                    target.label(m.apply(a))
                )));
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &TruncatedPower {
        &self.source
    }

    pub fn target(&self) -> &TruncatedPower {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `theta({a})` for a nonzero `a`; `{}` for `0`.
    pub fn image_of(&self, a: Elem) -> u32 {
        self.source.bit(a).map_or(0, |i| self.images[i])
    }

    pub fn apply(&self, mask: u32) -> u32 {
        self.images.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |m, (_, &v)| m | v)
    }

    /// Pointwise inclusion of singleton images.
    pub fn leq(&self, other: &UnionMap) -> bool {
        self.images.iter().zip(&other.images).all(|(&x, &y)| x & !y == 0)
    }

    pub fn union(&self, other: &UnionMap) -> Result<UnionMap> {
        self.same_shape(other)?;
        Ok(UnionMap {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().zip(&other.images).map(|(&x, &y)| x | y).collect(),
        })
    }

    /// `self o first`.
    pub fn compose_after(&self, first: &UnionMap) -> Result<UnionMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot follow a map into P0({}) by one from P0({})",
                first.target.base.name(),
                self.source.base.name()
            )));
        }
        Ok(UnionMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|&m| self.apply(m)).collect(),
        })
    }

    fn same_shape(&self, other: &UnionMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("union maps between different truncated power sets".into()));
        }
        Ok(())
    }
}

fn check_pair_shape(f: &LatticeMap, theta: &UnionMap) -> Result<()> {
    if !same_lattice(f.dom(), theta.source.base()) || !same_lattice(f.cod(), theta.target.base()) {
        return Err(Error::ShapeMismatch(format!(
            "{} -> {} does not match P0({}) -> P0({})",
            f.dom().name(),
            f.cod().name(),
            theta.source.base.name(),
            theta.target.base.name()
        )));
    }
    Ok(())
}

/// First subset `A` with `f(\/A) != \/theta(A)`, searched among the empty set,
/// singletons and pairs; for union maps coherence reduces to these.
pub fn coherence_witness(f: &LatticeMap, theta: &UnionMap) -> Result<Option<String>> {
    check_pair_shape(f, theta)?;
    let (p1, p2) = (&theta.source, &theta.target);
    let n = p1.nonzero.len();
    let fail = |mask: u32| {
        let lhs = f.apply(p1.join_of(mask));
        let rhs = p2.join_of(theta.apply(mask));
        (lhs != rhs).then(|| {
            format!(
                "A = {}: f(\\/A) = {} but \\/theta(A) = {}",
                p1.label(mask),
                f.cod().label(lhs),
                f.cod().label(rhs)
            )
        })
    };
    if let Some(w) = fail(0) {
        return Ok(Some(w));
    }
    for i in 0..n {
        if let Some(w) = fail(1 << i) {
            return Ok(Some(w));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(w) = fail(1 << i | 1 << j) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// `f > theta`, decided by join preservation of `f` plus agreement on singletons.
pub fn coherence_check(f: &LatticeMap, theta: &UnionMap) -> Result<bool> {
    Ok(coherence_witness(f, theta)?.is_none())
}

/// `a |-> \/theta({a})` with `0 |-> 0`, without any check.
pub fn singleton_join_map(theta: &UnionMap) -> LatticeMap {
    let (l1, p2) = (theta.source.base(), &theta.target);
    LatticeMap::from_fn(l1, p2.base(), |a| p2.join_of(theta.image_of(a)))
}

/// The unique `f` coherent with `theta`, if `theta` is strongly isotone.
pub fn underlying_map(theta: &UnionMap) -> Result<LatticeMap> {
    let f = singleton_join_map(theta);
    let (l1, p1) = (theta.source.base(), &theta.source);
    let l2 = theta.target.base();
    for &a in &p1.nonzero {
        for &b in &p1.nonzero {
            let ab = l1.join(a, b);
            let lhs = l2.join(f.apply(a), f.apply(b));
            if lhs != f.apply(ab) {
                let pair = p1.singleton(a) | p1.singleton(b);
                return Err(Error::NotStronglyIsotone(format!(
                    "A = {} and B = {} have the same join {} but \\/theta(A) = {} and \\/theta(B) = {}",
                    p1.label(pair),
                    p1.label(p1.singleton(ab)),
                    l1.label(ab),
                    l2.label(lhs),
                    l2.label(f.apply(ab))
                )));
            }
        }
    }
    debug_assert!(coherence_check(&f, theta).unwrap_or(false));
    Ok(f)
}

pub fn is_strongly_isotone(theta: &UnionMap) -> bool {
    underlying_map(theta).is_ok()
}

/// `P_f({a}) = {f(a)} \ {0}`.
pub fn power_map(f: &LatticeMap, limits: &Limits) -> Result<UnionMap> {
    f.require_joins()?;
    let p1 = TruncatedPower::new(f.dom(), limits)?;
    let p2 = TruncatedPower::new(f.cod(), limits)?;
    let images = p1.nonzero.iter().map(|&a| p2.singleton(f.apply(a))).collect();
    UnionMap::new(&p1, &p2, images)
}

/// The largest union of power maps below `theta`.
pub fn based_part(theta: &UnionMap, limits: &Limits) -> Result<UnionMap> {
    let l1 = theta.source.base();
    let l2 = theta.target.base();
    let mut acc = UnionMap::new(&theta.source, &theta.target, vec![0; theta.images.len()])?;
    for g in hom_set(l1, l2, HomClass::Join, limits)? {
        let pg = power_map(&g, limits)?;
        if pg.leq(theta) {
            acc = acc.union(&pg)?;
        }
    }
    Ok(acc)
}

pub fn is_based(theta: &UnionMap, limits: &Limits) -> Result<bool> {
    Ok(based_part(theta, limits)? == *theta)
}

/// The four Hom-set kinds of the hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// Power maps `P_f`, one per join map.
    PS,
    /// Unions of power maps.
    BS,
    /// Strongly isotone union maps.
    TS,
    /// All union maps.
    FS,
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "PS" => Category::PS,
            "BS" => Category::BS,
            "TS" => Category::TS,
            "FS" => Category::FS,
            other => return Err(Error::Parse { line: 0, message: format!("unknown category {other}") }),
        })
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `N(b) = #{ S in P0(L) | \/S = b }` for every `b`.
fn join_fibre_sizes(p: &TruncatedPower) -> Vec<u128> {
    let mut counts = vec![0u128; p.base.size()];
    for m in p.masks() {
        counts[p.join_of(m)] += 1;
    }
    counts
}

pub fn hom_count(category: Category, l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<u128> {
    let p1 = TruncatedPower::new(l1, limits)?;
    let p2 = TruncatedPower::new(l2, limits)?;
    let what = format!("{category}({}, {})", l1.name(), l2.name());
    match category {
        Category::PS => Ok(hom_set(l1, l2, HomClass::Join, limits)?.len() as u128),
        Category::FS => checked_pow(p2.size() as u128, p1.nonzero.len()).ok_or(Error::SizeLimit {
            what,
            size: u128::MAX,
            limit: u128::MAX,
        }),
        Category::TS => {
            let fibres = join_fibre_sizes(&p2);
            let maps = hom_set(l1, l2, HomClass::Join, limits)?;
            maps.par_iter()
                .map(|f| p1.nonzero.iter().try_fold(1u128, |acc, &a| acc.checked_mul(fibres[f.apply(a)])))
                .reduce(|| Some(0), |x, y| x?.checked_add(y?))
                .ok_or(Error::SizeLimit { what, size: u128::MAX, limit: u128::MAX })
        }
        Category::BS => {
            limits.check_enumeration(&what, p2.size() as usize, p1.nonzero.len())?;
            Ok(based_closure(l1, l2, limits)?.len() as u128)
        }
    }
}

/// All based union maps as singleton-image tables: the closure of the power
/// maps under binary union.
pub fn based_closure(l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<HashSet<Vec<u32>>> {
    let generators: Vec<Vec<u32>> = hom_set(l1, l2, HomClass::Join, limits)?
        .iter()
        .map(|g| power_map(g, limits).map(|p| p.images))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<Vec<u32>> = generators.iter().cloned().collect();
    let mut frontier: Vec<Vec<u32>> = generators.clone();
    while let Some(t) = frontier.pop() {
        for g in &generators {
            let u: Vec<u32> = t.iter().zip(g).map(|(&x, &y)| x | y).collect();
            if seen.insert(u.clone()) {
                frontier.push(u);
            }
        }
    }
    Ok(seen)
}

/// Every union map `P0(L1) -> P0(L2)`, lexicographic on singleton images.
pub fn all_union_maps(l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<Vec<UnionMap>> {
    let p1 = TruncatedPower::new(l1, limits)?;
    let p2 = TruncatedPower::new(l2, limits)?;
    let k = p1.nonzero.len();
    limits.check_enumeration(&format!("FS({}, {})", l1.name(), l2.name()), p2.size() as usize, k)?;
    let radix = p2.size();
    let total = checked_pow(radix as u128, k).expect("checked above") as u64;
    Ok((0..total)
        .map(|code| {
            let mut images = vec![0u32; k];
            let mut c = code;
            for slot in images.iter_mut().rev() {
                *slot = (c % radix) as u32;
                c /= radix;
            }
            UnionMap { source: p1.clone(), target: p2.clone(), images }
        })
        .collect())
}

/// `theta(A) = A` if `1` is not in `A`, else `{a} u A`.
pub fn strictness_witness(l: &LatticeRef, a: Elem, limits: &Limits) -> Result<UnionMap> {
    if a == l.bottom() || a >= l.size() {
        return Err(Error::ShapeMismatch(format!("witness parameter must be a nonzero element of {}", l.name())));
    }
    let p = TruncatedPower::new(l, limits)?;
    let one = p.singleton(l.top());
    let table: Vec<u32> = p.masks().map(|m| if m & one == 0 { m } else { m | p.singleton(a) }).collect();
    UnionMap::from_table(&p, &p, &table)
}

/// The first strongly isotone union map that is not a union of power maps.
pub fn unbased_instance(l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<Option<UnionMap>> {
    for t in all_union_maps(l1, l2, limits)? {
        if is_strongly_isotone(&t) && !is_based(&t, limits)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// The first union map with no coherent `f`.
pub fn incoherent_instance(l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<Option<UnionMap>> {
    Ok(all_union_maps(l1, l2, limits)?.into_iter().find(|t| !is_strongly_isotone(t)))
}

/// A coherent pair `f > theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionPair {
    pub f: LatticeMap,
    pub theta: UnionMap,
}

impl TransitionPair {
    pub fn new(f: LatticeMap, theta: UnionMap) -> Result<TransitionPair> {
        if let Some(w) = coherence_witness(&f, &theta)? {
            return Err(Error::IncoherentInput(w));
        }
        Ok(TransitionPair { f, theta })
    }

    pub fn identity(l: &LatticeRef, limits: &Limits) -> Result<TransitionPair> {
        let f = LatticeMap::identity(l);
        let theta = power_map(&f, limits)?;
        TransitionPair::new(f, theta)
    }

    /// Pairs are ordered by their union maps; `f` is determined by `theta`.
    pub fn leq(&self, other: &TransitionPair) -> bool {
        self.theta.leq(&other.theta)
    }
}

/// `(f2 o f1, theta2 o theta1)`, re-verified.
pub fn transition_compose(p2: &TransitionPair, p1: &TransitionPair) -> Result<TransitionPair> {
    let f = crate::maps::compose(&p2.f, &p1.f)?;
    let theta = p2.theta.compose_after(&p1.theta)?;
    TransitionPair::new(f, theta)
}

/// `(\/f, U theta)`, re-verified.
pub fn transition_join(family: &[TransitionPair]) -> Result<TransitionPair> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let fs: Vec<LatticeMap> = family.iter().map(|p| p.f.clone()).collect();
    let f = pointwise_join(&fs)?;
    let mut theta = first.theta.clone();
    for p in &family[1..] {
        theta = theta.union(&p.theta)?;
    }
    TransitionPair::new(f, theta)
}
