//! Maps between finite lattices: preservation analysis, Galois adjoints,
//! duality, special morphisms, classification and Hom-set enumeration.

mod adjoint;
mod classify;
mod hom;
mod special;

use std::fmt;
use std::sync::Arc;

pub use adjoint::{
    check_adjunction, dualize, left_adjoint, pointwise_join, pointwise_meet, right_adjoint, undualize,
    unit_counit_holds,
};
pub use classify::{classify_morphism, MorphismClass, MorphismFlags};
pub use hom::{hom_set, HomClass};
pub use special::{special_maps, SpecialMaps};

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice, LatticeRef};

/// A total map between lattice carriers, stored as a value table.
#[derive(Clone)]
pub struct LatticeMap {
    dom: LatticeRef,
    cod: LatticeRef,
    values: Vec<Elem>,
}

pub(crate) fn same_lattice(a: &LatticeRef, b: &LatticeRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for LatticeMap {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_lattice(&self.dom, &other.dom) && same_lattice(&self.cod, &other.cod)
    }
}

impl Eq for LatticeMap {}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom.name(), self.cod.name())?;
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}|->{}", self.dom.label(i), self.cod.label(v))?;
        }
        write!(f, "]")
    }
}

impl LatticeMap {
    pub fn new(dom: &LatticeRef, cod: &LatticeRef, values: Vec<Elem>) -> Result<LatticeMap> {
        if values.len() != dom.size() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for domain {} of size {}",
                values.len(),
                dom.name(),
                dom.size()
            )));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::IndexOutOfRange { index: bad, size: cod.size() });
        }
        Ok(LatticeMap { dom: dom.clone(), cod: cod.clone(), values })
    }

    pub fn from_fn(dom: &LatticeRef, cod: &LatticeRef, f: impl Fn(Elem) -> Elem) -> LatticeMap {
        let values = dom.elements().map(f).collect();
        LatticeMap { dom: dom.clone(), cod: cod.clone(), values }
    }

    pub fn identity(l: &LatticeRef) -> LatticeMap {
        LatticeMap::from_fn(l, l, |x| x)
    }

    pub fn constant(dom: &LatticeRef, cod: &LatticeRef, value: Elem) -> LatticeMap {
        LatticeMap::from_fn(dom, cod, |_| value)
    }

    pub fn dom(&self) -> &LatticeRef {
        &self.dom
    }

    pub fn cod(&self) -> &LatticeRef {
        &self.cod
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.values[a]
    }

    pub fn is_identity(&self) -> bool {
        same_lattice(&self.dom, &self.cod) && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn image(&self) -> Vec<Elem> {
        let mut img: Vec<Elem> = self.values.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_isotone(&self) -> bool {
        self.isotone_witness().is_none()
    }

    pub(crate) fn isotone_witness(&self) -> Option<(Elem, Elem)> {
        for a in self.dom.elements() {
            for b in self.dom.elements() {
                if self.dom.leq(a, b) && !self.cod.leq(self.values[a], self.values[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Pointwise order on a Hom-set: `self <= other` iff `self(a) <= other(a)` for all `a`.
    pub fn pointwise_leq(&self, other: &LatticeMap) -> bool {
        self.values.iter().zip(&other.values).all(|(&x, &y)| self.cod.leq(x, y))
    }

    /// `self o first`.
    pub fn compose_after(&self, first: &LatticeMap) -> Result<LatticeMap> {
        compose(self, first)
    }

    pub fn profile(&self) -> PreservationProfile {
        preservation_profile(self)
    }

    pub(crate) fn describe(&self, a: Elem) -> String {
        format!("{} |-> {}", self.dom.label(a), self.cod.label(self.values[a]))
    }

    pub(crate) fn join_witness(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        if self.values[d.bottom()] != c.bottom() {
            return Some(format!("bottom {} is not sent to bottom", self.describe(d.bottom())));
        }
        self.binary_join_witness()
    }

    fn binary_join_witness(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        for a in d.elements() {
            for b in (a + 1)..d.size() {
                if self.values[d.join(a, b)] != c.join(self.values[a], self.values[b]) {
                    return Some(format!("f({} v {}) != f({}) v f({})", d.label(a), d.label(b), d.label(a), d.label(b)));
                }
            }
        }
        None
    }

    pub(crate) fn meet_witness(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        if self.values[d.top()] != c.top() {
            return Some(format!("top {} is not sent to top", self.describe(d.top())));
        }
        self.binary_meet_witness()
    }

    pub(crate) fn binary_meet_witness(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        for a in d.elements() {
            for b in (a + 1)..d.size() {
                if self.values[d.meet(a, b)] != c.meet(self.values[a], self.values[b]) {
                    return Some(format!("g({} ^ {}) != g({}) ^ g({})", d.label(a), d.label(b), d.label(a), d.label(b)));
                }
            }
        }
        None
    }

    pub(crate) fn require_joins(&self) -> Result<()> {
        match self.join_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotJoinPreserving(w)),
        }
    }

    pub(crate) fn require_meets(&self) -> Result<()> {
        match self.meet_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotMeetPreserving(w)),
        }
    }

    pub(crate) fn require_nonempty_meets(&self) -> Result<()> {
        match self.binary_meet_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotWeakMeet(w)),
        }
    }
}

/// Which lattice operations a map preserves.
///
/// `balanced`/`dense` are the join-map notions (`f(1) = 1`, `f(a) = 0 => a = 0`);
/// `meet_balanced`/`meet_dense` are their duals for meet maps
/// (`g(0) = 0`, `g(a) = 1 => a = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PreservationProfile {
    pub joins: bool,
    pub nonempty_joins: bool,
    pub meets: bool,
    pub nonempty_meets: bool,
    pub balanced: bool,
    pub dense: bool,
    pub meet_balanced: bool,
    pub meet_dense: bool,
}

/// Finite carriers reduce arbitrary joins to binary joins plus the empty join.
pub fn preservation_profile(f: &LatticeMap) -> PreservationProfile {
    let (d, c) = (&f.dom, &f.cod);
    let nonempty_joins = f.binary_join_witness().is_none();
    let nonempty_meets = f.binary_meet_witness().is_none();
    let zero = f.values[d.bottom()] == c.bottom();
    let one = f.values[d.top()] == c.top();
    PreservationProfile {
        joins: nonempty_joins && zero,
        nonempty_joins,
        meets: nonempty_meets && one,
        nonempty_meets,
        balanced: one,
        dense: d.elements().all(|a| f.values[a] != c.bottom() || a == d.bottom()),
        meet_balanced: zero,
        meet_dense: d.elements().all(|a| f.values[a] != c.top() || a == d.top()),
    }
}

/// `f2 o f1`.
pub fn compose(f2: &LatticeMap, f1: &LatticeMap) -> Result<LatticeMap> {
    if !same_lattice(&f1.cod, &f2.dom) {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            f2.dom.name(),
            f2.cod.name(),
            f1.dom.name(),
            f1.cod.name()
        )));
    }
    Ok(LatticeMap {
        dom: f1.dom.clone(),
        cod: f2.cod.clone(),
        values: f1.values.iter().map(|&x| f2.values[x]).collect(),
    })
}

/// Convenience for building maps from label pairs in tests and the corpus.
pub fn map_from_labels(dom: &LatticeRef, cod: &LatticeRef, pairs: &[(&str, &str)]) -> Result<LatticeMap> {
    let mut values = vec![usize::MAX; dom.size()];
    for (a, b) in pairs {
        let ai = dom.index_of(a).ok_or_else(|| Error::Unresolved(format!("{a} in {}", dom.name())))?;
        let bi = cod.index_of(b).ok_or_else(|| Error::Unresolved(format!("{b} in {}", cod.name())))?;
        values[ai] = bi;
    }
    if let Some(missing) = values.iter().position(|&v| v == usize::MAX) {
        return Err(Error::ShapeMismatch(format!("no value for {}", dom.label(missing))));
    }
    LatticeMap::new(dom, cod, values)
}

pub(crate) fn two() -> LatticeRef {
    Arc::new(Lattice::two())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_product, Limits};

    fn d4() -> LatticeRef {
        Arc::new(Lattice::from_covers("D4", &["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    #[test]
    fn identity_preserves_everything() {
        let p = LatticeMap::identity(&d4()).profile();
        assert!(p.joins && p.nonempty_joins && p.meets && p.nonempty_meets);
        assert!(p.balanced && p.dense && p.meet_balanced && p.meet_dense);
    }

    #[test]
    fn constant_zero_map() {
        let f = LatticeMap::constant(&d4(), &two(), 0);
        let p = f.profile();
        assert!(p.joins);
        assert!(!p.meets);
        assert!(!p.dense);
    }

    #[test]
    fn zero_padding_injection_preserves_nonempty_meets_only() {
        let c2 = two();
        let prod = direct_product(&[c2.clone(), c2], &Limits::default()).unwrap();
        let p = prod.pad_bottom[0].profile();
        assert!(p.nonempty_meets);
        assert!(!p.meets);
        assert!(p.joins);
    }

    #[test]
    fn compose_checks_shapes() {
        let d = d4();
        let f = LatticeMap::constant(&d, &two(), 0);
        assert!(compose(&f, &f).is_err());
        let id = LatticeMap::identity(&d);
        assert_eq!(compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn new_rejects_bad_tables() {
        let d = d4();
        assert!(LatticeMap::new(&d, &two(), vec![0, 1]).is_err());
        assert!(LatticeMap::new(&d, &two(), vec![0, 1, 2, 1]).is_err());
    }
}
