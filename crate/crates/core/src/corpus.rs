//! The standard collection of small lattices, ortholattices, closure spaces
//! and orthogonality spaces used by the test sweeps.

use std::sync::Arc;

use crate::closure::{all_simple_spaces, ClosureSpace};
use crate::lattice::{direct_product, find_isomorphism, horizontal_sum, random_moore_lattice, Lattice, LatticeRef, Limits};
use crate::ortho::{validate_ortho, OrthoLattice, OrthoSpace};

pub const MOORE_SEEDS: std::ops::RangeInclusive<u64> = 1..=20;

fn lref(l: Lattice) -> LatticeRef {
    Arc::new(l)
}

pub fn chain(n: usize) -> Lattice {
    Lattice::chain(n)
}

/// The diamond `0 < a, b < 1`.
pub fn d4() -> Lattice {
    Lattice::from_covers("D4", &["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond")
}

/// Subsets of an `n`-point set, named `Boolean{2^n}`.
pub fn boolean(n: usize) -> Lattice {
    Lattice::powerset(n).renamed(format!("Boolean{}", 1usize << n))
}

pub fn n5() -> Lattice {
    Lattice::from_covers("N5", &["0", "a", "b", "c", "1"], &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)]).expect("pentagon")
}

pub fn m3() -> Lattice {
    Lattice::from_covers("M3", &["0", "a", "b", "c", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("diamond M3")
}

/// The hexagon `0 < a < b' < 1`, `0 < b < a' < 1`.
pub fn o6() -> OrthoLattice {
    let l = Lattice::from_covers("O6", &["0", "a", "b", "b'", "a'", "1"], &[(0, 1), (1, 3), (3, 5), (0, 2), (2, 4), (4, 5)])
        .expect("hexagon");
    validate_ortho(&lref(l), vec![5, 4, 3, 2, 1, 0]).expect("hexagon orthocomplement")
}

/// Four atoms `a, a', b, b'` between `0` and `1`.
pub fn mo2() -> OrthoLattice {
    let l = Lattice::from_covers(
        "MO2",
        &["0", "a", "a'", "b", "b'", "1"],
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 5), (4, 5)],
    )
    .expect("MO2");
    validate_ortho(&lref(l), vec![5, 2, 1, 4, 3, 0]).expect("MO2 orthocomplement")
}

/// `Boolean{2^n}` with set complement.
pub fn boolean_ortho(n: usize) -> OrthoLattice {
    let l = boolean(n);
    let full = (1usize << n) - 1;
    validate_ortho(&lref(l), (0..=full).map(|a| full ^ a).collect()).expect("set complement")
}

pub fn two_ortho() -> OrthoLattice {
    validate_ortho(&lref(chain(2)), vec![1, 0]).expect("two-element ortholattice")
}

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

/// Everything the sweeps iterate over.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub lattices: Vec<LatticeRef>,
    pub ortho: Vec<OrthoLattice>,
    pub spaces: Vec<ClosureSpace>,
    pub orthospaces: Vec<OrthoSpace>,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        let lim = Limits::default();
        let mut lattices: Vec<LatticeRef> = (1..=5).map(|n| lref(chain(n))).collect();
        lattices.push(lref(d4()));
        for n in 2..=4 {
            lattices.push(lref(boolean(n)));
        }
        lattices.push(lref(n5()));
        lattices.push(lref(m3()));
        lattices.push(o6().lattice().clone());
        lattices.push(mo2().lattice().clone());
        let c2 = lref(chain(2));
        let c3 = lref(chain(3));
        let c4 = lref(chain(4));
        let products = [vec![c2.clone(), c3.clone()], vec![c3.clone(), c3.clone()], vec![lref(d4()), c2.clone()]];
        for fs in &products {
            lattices.push(direct_product(fs, &lim).expect("small product").lattice);
        }
        let sums = [vec![c3.clone(), c3.clone()], vec![c3.clone(), c4.clone()], vec![c4.clone(), lref(d4())]];
        for fs in &sums {
            lattices.push(horizontal_sum(fs, &lim).expect("small sum").lattice);
        }
        for seed in MOORE_SEEDS {
            lattices.push(lref(random_moore_lattice(seed, 3, 3, &lim).expect("three points stay small")));
        }
        let ortho = vec![two_ortho(), boolean_ortho(2), boolean_ortho(3), boolean_ortho(4), o6(), mo2()];
        let mut spaces = Vec::new();
        for n in 0..=3 {
            for (i, s) in all_simple_spaces(n).into_iter().enumerate() {
                let closed = s.closed_sets().to_vec();
                spaces.push(ClosureSpace::new(format!("CS{n}_{i}"), names(n), closed).expect("simple space"));
            }
        }
        let orthospaces = vec![
            OrthoSpace::new("OS1", names(1), &[]).expect("point"),
            OrthoSpace::new("OS2", names(2), &[(0, 1)]).expect("pair"),
            OrthoSpace::new("OS3", names(3), &[(0, 1), (0, 2), (1, 2)]).expect("triangle"),
            OrthoSpace::new("OS4", names(4), &[(0, 1), (2, 3)]).expect("two pairs"),
            OrthoSpace::new("OS4K", names(4), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("complete"),
        ];
        Corpus { lattices, ortho, spaces, orthospaces }
    }

    pub fn lattice(&self, name: &str) -> Option<&LatticeRef> {
        self.lattices.iter().find(|l| l.name() == name)
    }

    pub fn lattices_up_to(&self, max: usize) -> Vec<LatticeRef> {
        self.lattices.iter().filter(|l| l.size() <= max).cloned().collect()
    }

    /// One representative per isomorphism class, first occurrence kept.
    pub fn distinct_up_to(&self, max: usize) -> Vec<LatticeRef> {
        distinct(&self.lattices_up_to(max))
    }
}

pub fn distinct(lattices: &[LatticeRef]) -> Vec<LatticeRef> {
    let mut out: Vec<LatticeRef> = Vec::new();
    for l in lattices {
        if !out.iter().any(|k| k.size() == l.size() && find_isomorphism(k, l).is_some()) {
            out.push(l.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_is_consistent() {
        let c = Corpus::builtin();
        let mut names: Vec<&str> = c.lattices.iter().map(|l| l.name()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len(), "lattice names are unique");
        for l in &c.lattices {
            l.verify_tables().unwrap();
            assert!(l.size() <= 16);
        }
        assert!(c.lattices.iter().filter(|l| l.name().starts_with("Moore")).all(|l| l.size() <= 8));
        assert!(c.orthospaces.iter().all(|s| s.is_separating()));
        assert!(c.spaces.iter().all(|s| s.is_simple()));
    }

    #[test]
    fn o6_is_not_atomistic_but_mo2_is() {
        assert!(!o6().lattice().is_atomistic());
        assert!(mo2().lattice().is_atomistic());
        assert_eq!(mo2().lattice().atoms().len(), 4);
    }

    #[test]
    fn distinct_removes_isomorphic_copies() {
        let c = Corpus::builtin();
        let small = c.distinct_up_to(4);
        // C1, C2, C3, C4, D4
        assert_eq!(small.len(), 5);
    }
}
