//! Weak morphisms and their pseudoadjoints: codomain restriction to an
//! interval (partial join maps) and pointed extension by a new universal top
//! (upper maps), with the translations between the two.

use crate::error::{Error, Result};
use crate::lattice::{lower_interval, upper_extension, Elem, Interval, LatticeRef, Limits, UpperExtension};
use crate::maps::{compose, hom_set, left_adjoint, right_adjoint, same_lattice, HomClass, LatticeMap};

/// A map `g : L2 -> L1` preserving non-empty meets; `g(1)` is unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakMeetMap {
    map: LatticeMap,
}

impl WeakMeetMap {
    pub fn new(map: LatticeMap) -> Result<WeakMeetMap> {
        map.require_nonempty_meets()?;
        Ok(WeakMeetMap { map })
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    /// `g(1)`, the anchor of the partial left adjoint.
    pub fn top_image(&self) -> Elem {
        self.map.apply(self.map.dom().top())
    }
}

/// A join-preserving map `alpha : [0,a1] -> L2` remembered with its anchor `a1 in L1`.
#[derive(Debug, Clone)]
pub struct PartialJoinMap {
    interval: Interval,
    map: LatticeMap,
}

impl PartialEq for PartialJoinMap {
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.interval.parent, &other.interval.parent)
            && self.interval.anchor == other.interval.anchor
            && self.map.values() == other.map.values()
            && same_lattice(self.map.cod(), other.map.cod())
    }
}

impl Eq for PartialJoinMap {}

impl PartialJoinMap {
    /// `map` must have the interval `[0, anchor]` of `source` as its domain.
    pub fn new(source: &LatticeRef, anchor: Elem, map: LatticeMap) -> Result<PartialJoinMap> {
        if anchor >= source.size() {
            return Err(Error::IndexOutOfRange { index: anchor, size: source.size() });
        }
        let interval = lower_interval(source, anchor);
        if !same_lattice(&interval.lattice, map.dom()) {
            return Err(Error::ShapeMismatch(format!(
                "partial map domain {} is not [0,{}] in {}",
                map.dom().name(),
                source.label(anchor),
                source.name()
            )));
        }
        map.require_joins()?;
        // rebase onto the canonical interval so later composites share carriers
        let map = LatticeMap::new(&interval.lattice, map.cod(), map.values().to_vec())?;
        Ok(PartialJoinMap { interval, map })
    }

    /// Builds from a function on the source elements below the anchor.
    pub fn from_fn(source: &LatticeRef, anchor: Elem, target: &LatticeRef, f: impl Fn(Elem) -> Elem) -> Result<PartialJoinMap> {
        let interval = lower_interval(source, anchor);
        let map = LatticeMap::from_fn(&interval.lattice, target, |i| f(interval.global(i)));
        PartialJoinMap::new(source, anchor, map)
    }

    pub fn total(f: &LatticeMap) -> Result<PartialJoinMap> {
        PartialJoinMap::from_fn(f.dom(), f.dom().top(), f.cod(), |x| f.apply(x))
    }

    pub fn source(&self) -> &LatticeRef {
        &self.interval.parent
    }

    pub fn target(&self) -> &LatticeRef {
        self.map.cod()
    }

    pub fn anchor(&self) -> Elem {
        self.interval.anchor
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// The map on the interval lattice.
    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    /// `alpha(x)` for `x <= a1`, `None` elsewhere.
    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.interval.local(x).map(|i| self.map.apply(i))
    }
}

/// A balanced join-preserving map `F : L1^u -> L2^u`.
#[derive(Debug, Clone)]
pub struct UpperMap {
    source: UpperExtension,
    target: UpperExtension,
    map: LatticeMap,
}

impl PartialEq for UpperMap {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for UpperMap {}

impl UpperMap {
    pub fn new(source: UpperExtension, target: UpperExtension, map: LatticeMap) -> Result<UpperMap> {
        if !same_lattice(&source.lattice, map.dom()) || !same_lattice(&target.lattice, map.cod()) {
            return Err(Error::ShapeMismatch("upper map carriers differ from the extensions".into()));
        }
        map.require_joins()?;
        if map.apply(source.new_top) != target.new_top {
            return Err(Error::NotInClass(format!(
                "{} is not balanced: new top goes to {}",
                map.describe(source.new_top),
                map.cod().label(map.apply(source.new_top))
            )));
        }
        Ok(UpperMap { source, target, map })
    }

    pub fn source(&self) -> &UpperExtension {
        &self.source
    }

    pub fn target(&self) -> &UpperExtension {
        &self.target
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    pub fn compose(&self, first: &UpperMap) -> Result<UpperMap> {
        UpperMap::new(first.source.clone(), self.target.clone(), compose(&self.map, &first.map)?)
    }
}

/// `g^p : L2 -> [0, g(1)]` and its left adjoint as a partial join map.
#[derive(Debug, Clone)]
pub struct CodomainRestriction {
    pub restricted: LatticeMap,
    pub alpha: PartialJoinMap,
}

pub fn restrict_codomain(g: &WeakMeetMap) -> Result<CodomainRestriction> {
    let l1 = g.map.cod();
    let interval = lower_interval(l1, g.top_image());
    let restricted = LatticeMap::from_fn(g.map.dom(), &interval.lattice, |b| {
        interval.local(g.map.apply(b)).expect("g is isotone so g(b) <= g(1)")
    });
    restricted.require_meets()?;
    let lower = left_adjoint(&restricted)?;
    let alpha = PartialJoinMap::new(l1, interval.anchor, lower)?;
    Ok(CodomainRestriction { restricted, alpha })
}

/// `g^u : L2^u -> L1^u` (new top to new top) and its balanced left adjoint `f^u`.
#[derive(Debug, Clone)]
pub struct PointedExtension {
    pub extended: LatticeMap,
    pub upper: UpperMap,
}

pub fn pointed_extend(g: &WeakMeetMap) -> Result<PointedExtension> {
    let e2 = upper_extension(g.map.dom());
    let e1 = upper_extension(g.map.cod());
    let extended = LatticeMap::from_fn(&e2.lattice, &e1.lattice, |b| if b == e2.new_top { e1.new_top } else { g.map.apply(b) });
    extended.require_meets()?;
    let fu = left_adjoint(&extended)?;
    let upper = UpperMap::new(e1, e2, fu)?;
    Ok(PointedExtension { extended, upper })
}

/// `F_alpha`: `alpha` below the anchor, the new top everywhere else.
pub fn partial_to_upper(alpha: &PartialJoinMap) -> Result<UpperMap> {
    let e1 = upper_extension(alpha.source());
    let e2 = upper_extension(alpha.target());
    let map = LatticeMap::from_fn(&e1.lattice, &e2.lattice, |x| {
        if x == e1.new_top {
            e2.new_top
        } else {
            alpha.apply(x).unwrap_or(e2.new_top)
        }
    });
    UpperMap::new(e1, e2, map)
}

/// `alpha_F` with anchor `F*(1_2)` and values `F(x)`.
pub fn upper_to_partial(f: &UpperMap) -> Result<PartialJoinMap> {
    let upper_adj = right_adjoint(&f.map)?;
    let anchor = upper_adj.apply(f.target.old_top());
    assert_ne!(anchor, f.source.new_top, "F(new top) = new top keeps F*(1) below it");
    PartialJoinMap::from_fn(&f.source.base, anchor, &f.target.base, |x| {
        let v = f.map.apply(x);
        assert_ne!(v, f.target.new_top, "x <= F*(1) forces F(x) <= 1");
        v
    })
}

/// `G_alpha`: `alpha*` on `L2` extended by new top to new top.
pub fn upper_right_adjoint(alpha: &PartialJoinMap) -> Result<LatticeMap> {
    let e1 = upper_extension(alpha.source());
    let e2 = upper_extension(alpha.target());
    let star = right_adjoint(alpha.map())?;
    Ok(LatticeMap::from_fn(&e2.lattice, &e1.lattice, |b| {
        if b == e2.new_top {
            e1.new_top
        } else {
            alpha.interval.global(star.apply(b))
        }
    }))
}

/// `alpha2 o alpha1` defined below `alpha1*(a2)`.
pub fn compose_partial(alpha2: &PartialJoinMap, alpha1: &PartialJoinMap) -> Result<PartialJoinMap> {
    if !same_lattice(alpha1.target(), alpha2.source()) {
        return Err(Error::ShapeMismatch(format!(
            "partial map into {} cannot be followed by one from {}",
            alpha1.target().name(),
            alpha2.source().name()
        )));
    }
    let star = right_adjoint(alpha1.map())?;
    let anchor = alpha1.interval.global(star.apply(alpha2.anchor()));
    PartialJoinMap::from_fn(alpha1.source(), anchor, alpha2.target(), |x| {
        let y = alpha1.apply(x).expect("anchor lies below a1");
        alpha2.apply(y).expect("alpha1(x) <= a2 below the composite anchor")
    })
}

/// Every weak meet map `L2 -> L1`, lexicographic.
pub fn weak_meet_maps(l2: &LatticeRef, l1: &LatticeRef, limits: &Limits) -> Result<Vec<WeakMeetMap>> {
    Ok(hom_set(l2, l1, HomClass::Isotone, limits)?
        .into_iter()
        .filter(|g| g.profile().nonempty_meets)
        .map(|map| WeakMeetMap { map })
        .collect())
}

/// Every partial join map `L1 -> L2`, grouped by anchor.
pub fn partial_join_maps(l1: &LatticeRef, l2: &LatticeRef, limits: &Limits) -> Result<Vec<PartialJoinMap>> {
    let mut out = Vec::new();
    for a in l1.elements() {
        let interval = lower_interval(l1, a);
        for map in hom_set(&interval.lattice, l2, HomClass::Join, limits)? {
            out.push(PartialJoinMap::new(l1, a, map)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::{direct_product, Lattice};
    use crate::maps::map_from_labels;

    fn lref(l: Lattice) -> LatticeRef {
        Arc::new(l)
    }

    fn d4() -> LatticeRef {
        lref(Lattice::from_covers("D4", &["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    #[test]
    fn meet_map_restricts_to_itself() {
        let l = d4();
        let g = WeakMeetMap::new(LatticeMap::identity(&l)).unwrap();
        let r = restrict_codomain(&g).unwrap();
        assert_eq!(r.alpha.anchor(), l.top());
        assert_eq!(r.restricted.values(), g.map().values());
    }

    #[test]
    fn product_projection_is_its_own_restriction() {
        let c2 = lref(Lattice::chain(2));
        let p = direct_product(&[c2.clone(), c2.clone()], &Limits::default()).unwrap();
        let g = WeakMeetMap::new(p.projections[0].clone()).unwrap();
        let r = restrict_codomain(&g).unwrap();
        assert_eq!(r.alpha.anchor(), c2.top());
        assert_eq!(r.restricted.values(), p.projections[0].values());
    }

    #[test]
    fn c2_to_c3_partial_adjoint() {
        let c2 = lref(Lattice::chain(2));
        let c3 = lref(Lattice::chain(3));
        let g = WeakMeetMap::new(LatticeMap::new(&c2, &c3, vec![0, 1]).unwrap()).unwrap();
        let r = restrict_codomain(&g).unwrap();
        assert_eq!(r.alpha.anchor(), 1);
        assert_eq!(r.alpha.apply(1), Some(1));
        assert_eq!(r.alpha.apply(2), None);
    }

    #[test]
    fn non_weak_map_is_rejected() {
        let l = d4();
        let two = lref(Lattice::chain(2));
        // a and b both to 1 but a /\ b = 0 to 0
        let g = map_from_labels(&l, &two, &[("0", "0"), ("a", "1"), ("b", "1"), ("1", "1")]).unwrap();
        assert!(matches!(WeakMeetMap::new(g), Err(Error::NotWeakMeet(_))));
    }

    #[test]
    fn partial_map_on_d4_sends_outside_to_new_top() {
        let l = d4();
        let two = lref(Lattice::chain(2));
        let alpha = PartialJoinMap::from_fn(&l, 1, &two, |x| usize::from(x == 1)).unwrap();
        let f = partial_to_upper(&alpha).unwrap();
        let nt = f.target().new_top;
        assert_eq!(f.map().apply(2), nt);
        assert_eq!(f.map().apply(3), nt);
        assert_eq!(f.map().apply(1), 1);
        assert_eq!(upper_to_partial(&f).unwrap(), alpha);
    }

    #[test]
    fn composite_anchor_drops_below_both() {
        let l = lref(Lattice::powerset(2));
        // alpha1 on [0,{0}] sends {0} to {1}; alpha2 on [0,{0}] is the inclusion
        let alpha1 = PartialJoinMap::from_fn(&l, 1, &l, |x| if x == 1 { 2 } else { 0 }).unwrap();
        let alpha2 = PartialJoinMap::from_fn(&l, 1, &l, |x| x).unwrap();
        let c = compose_partial(&alpha2, &alpha1).unwrap();
        assert_eq!(c.anchor(), 0);
        let via_upper = partial_to_upper(&alpha2).unwrap().compose(&partial_to_upper(&alpha1).unwrap()).unwrap();
        assert_eq!(upper_to_partial(&via_upper).unwrap(), c);
    }

    #[test]
    fn the_two_weak_adjoints_agree_on_small_lattices() {
        let lim = Limits::default();
        let lats = [lref(Lattice::chain(2)), lref(Lattice::chain(3)), d4()];
        for l1 in &lats {
            for l2 in &lats {
                for g in weak_meet_maps(l2, l1, &lim).unwrap() {
                    let r = restrict_codomain(&g).unwrap();
                    let p = pointed_extend(&g).unwrap();
                    assert!(p.extended.profile().meet_dense);
                    assert_eq!(upper_to_partial(&p.upper).unwrap(), r.alpha);
                    assert_eq!(partial_to_upper(&r.alpha).unwrap(), p.upper);
                    assert_eq!(upper_right_adjoint(&r.alpha).unwrap(), p.extended);
                }
            }
        }
    }

    #[test]
    fn partial_maps_roundtrip() {
        let lim = Limits::default();
        let l = d4();
        let c3 = lref(Lattice::chain(3));
        for alpha in partial_join_maps(&l, &c3, &lim).unwrap() {
            let f = partial_to_upper(&alpha).unwrap();
            assert_eq!(upper_to_partial(&f).unwrap(), alpha);
        }
    }
}
