use super::{compose, hom_set, left_adjoint, right_adjoint, HomClass, LatticeMap};
use crate::error::{Error, Result};
use crate::lattice::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismClass {
    Join,
    Meet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MorphismFlags {
    pub epic: bool,
    pub monic: bool,
    pub section: bool,
    pub retraction: bool,
    pub injective: bool,
    pub surjective: bool,
    pub balanced: bool,
    pub dense: bool,
}

/// Epi/mono are decided through the canonical adjoint (`f o f* = id` /
/// `f* o f = id` for join maps, dually for meet maps); sections and
/// retractions by searching the class for a one-sided inverse.
pub fn classify_morphism(f: &LatticeMap, class: MorphismClass, limits: &Limits) -> Result<MorphismFlags> {
    let profile = f.profile();
    let (adj, hom_class) = match class {
        MorphismClass::Join => {
            if !profile.joins {
                return Err(Error::NotInClass(f.join_witness().unwrap_or_default()));
            }
            (right_adjoint(f)?, HomClass::Join)
        }
        MorphismClass::Meet => {
            if !profile.meets {
                return Err(Error::NotInClass(f.meet_witness().unwrap_or_default()));
            }
            (left_adjoint(f)?, HomClass::Meet)
        }
    };
    let f_after_adj = compose(f, &adj)?.is_identity();
    let adj_after_f = compose(&adj, f)?.is_identity();
    let back = hom_set(f.cod(), f.dom(), hom_class, limits)?;
    let section = back.iter().any(|h| compose(h, f).map(|c| c.is_identity()).unwrap_or(false));
    let retraction = back.iter().any(|h| compose(f, h).map(|c| c.is_identity()).unwrap_or(false));
    let (balanced, dense) = match class {
        MorphismClass::Join => (profile.balanced, profile.dense),
        MorphismClass::Meet => (profile.meet_balanced, profile.meet_dense),
    };
    // Same shape in both classes: f -| f* gives epic iff f o f* = id, and
    // g_* -| g gives epic iff g o g_* = id; monic is the other composite.
    Ok(MorphismFlags {
        epic: f_after_adj,
        monic: adj_after_f,
        section,
        retraction,
        injective: f.is_injective(),
        surjective: f.is_surjective(),
        balanced,
        dense,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::{Lattice, LatticeRef};
    use crate::maps::special_maps;

    #[test]
    fn identity_has_every_flag() {
        let l: LatticeRef = Arc::new(Lattice::powerset(2));
        let id = LatticeMap::identity(&l);
        for class in [MorphismClass::Join, MorphismClass::Meet] {
            let fl = classify_morphism(&id, class, &Limits::default()).unwrap();
            assert!(fl.epic && fl.monic && fl.section && fl.retraction);
            assert!(fl.injective && fl.surjective && fl.balanced && fl.dense);
        }
    }

    #[test]
    fn interval_inclusion_is_a_join_section() {
        let l: LatticeRef = Arc::new(Lattice::powerset(2));
        let sm = special_maps(&l, 1);
        let fl = classify_morphism(&sm.embed, MorphismClass::Join, &Limits::default()).unwrap();
        assert!(fl.section);
        assert!(!fl.epic);
        assert!(fl.dense);
        assert!(fl.monic);
        let fl = classify_morphism(&sm.embed_hat, MorphismClass::Meet, &Limits::default()).unwrap();
        assert!(fl.section);
    }

    #[test]
    fn wrong_class_is_rejected() {
        let l: LatticeRef = Arc::new(Lattice::chain(3));
        let f = LatticeMap::constant(&l, &l, 2);
        assert!(matches!(classify_morphism(&f, MorphismClass::Join, &Limits::default()), Err(Error::NotInClass(_))));
    }
}
