use super::{two, LatticeMap};
use crate::lattice::{lower_interval, Elem, Interval, LatticeRef};

/// The eight canonical maps attached to an element `a`.
///
/// Adjoint pairs: `alpha_lower -| c_upper`, `c_lower -| alpha_upper`,
/// `embed -| project`, `project_hat -| embed_hat`.
#[derive(Debug, Clone)]
pub struct SpecialMaps {
    pub anchor: Elem,
    pub interval: Interval,
    /// `2 -> L`: `0 |-> 0`, `1 |-> a`.
    pub alpha_lower: LatticeMap,
    /// `L -> 2`: `x |-> 1` iff `a <= x`.
    pub c_upper: LatticeMap,
    /// `2 -> L`: `0 |-> a`, `1 |-> 1`.
    pub alpha_upper: LatticeMap,
    /// `L -> 2`: `x |-> 0` iff `x <= a`.
    pub c_lower: LatticeMap,
    /// `[0,a] -> L`, inclusion.
    pub embed: LatticeMap,
    /// `L -> [0,a]`, `x |-> x /\ a`.
    pub project: LatticeMap,
    /// `[0,a] -> L`: identity below `a`, `a |-> 1`.
    pub embed_hat: LatticeMap,
    /// `L -> [0,a]`: identity on `[0,a]`, everything else to `a`.
    pub project_hat: LatticeMap,
}

pub fn special_maps(l: &LatticeRef, a: Elem) -> SpecialMaps {
    let t = two();
    let alpha_lower = LatticeMap::from_fn(&t, l, |x| if x == 0 { l.bottom() } else { a });
    let c_upper = LatticeMap::from_fn(l, &t, |x| usize::from(l.leq(a, x)));
    let alpha_upper = LatticeMap::from_fn(&t, l, |x| if x == 0 { a } else { l.top() });
    let c_lower = LatticeMap::from_fn(l, &t, |x| usize::from(!l.leq(x, a)));
    let interval = lower_interval(l, a);
    let embed = interval.embed.clone();
    let project = interval.project.clone();
    let local_anchor = interval.local(a).expect("anchor lies in its interval");
    let embed_hat = LatticeMap::from_fn(&interval.lattice, l, |i| if i == local_anchor { l.top() } else { interval.global(i) });
    let project_hat = LatticeMap::from_fn(l, &interval.lattice, |x| interval.local(x).unwrap_or(local_anchor));
    SpecialMaps { anchor: a, interval, alpha_lower, c_upper, alpha_upper, c_lower, embed, project, embed_hat, project_hat }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::Lattice;
    use crate::maps::{check_adjunction, compose};

    #[test]
    fn two_at_top_gives_identities() {
        let c2: LatticeRef = Arc::new(Lattice::two());
        let sm = special_maps(&c2, 1);
        assert!(sm.alpha_lower.values() == [0, 1]);
        assert!(sm.c_upper.values() == [0, 1]);
    }

    #[test]
    fn all_four_pairs_are_adjunctions_on_b8() {
        let b8: LatticeRef = Arc::new(Lattice::powerset(3));
        for a in b8.elements() {
            let sm = special_maps(&b8, a);
            assert!(check_adjunction(&sm.alpha_lower, &sm.c_upper).unwrap());
            assert!(check_adjunction(&sm.c_lower, &sm.alpha_upper).unwrap());
            assert!(check_adjunction(&sm.embed, &sm.project).unwrap());
            assert!(check_adjunction(&sm.project_hat, &sm.embed_hat).unwrap());
            assert!(compose(&sm.project, &sm.embed).unwrap().is_identity());
            assert!(compose(&sm.project_hat, &sm.embed_hat).unwrap().is_identity());
        }
    }

    #[test]
    fn alpha_atom_is_not_adjoint_to_lower_class_map() {
        let d4: LatticeRef = Arc::new(Lattice::powerset(2));
        let sm = special_maps(&d4, 1);
        assert!(!check_adjunction(&sm.alpha_lower, &sm.c_lower).unwrap());
    }
}
