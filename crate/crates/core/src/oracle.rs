//! Slow, definition-level decision procedures. Each one is independent of the
//! criterion it is compared against and is only meant for small inputs.

use crate::error::Result;
use crate::lattice::{LatticeRef, Limits};
use crate::maps::{compose, hom_set, HomClass, LatticeMap};
use crate::transition::{power_map, UnionMap};

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0u64..1 << n
}

fn members(set: u64, n: usize) -> impl Iterator<Item = usize> + Clone {
    (0..n).filter(move |&x| set & (1 << x) != 0)
}

/// `f(\/A) = \/f(A)` for every subset `A`, including the empty one.
pub fn preserves_all_joins(f: &LatticeMap) -> bool {
    let (d, c) = (f.dom(), f.cod());
    subsets(d.size()).all(|s| {
        let m = members(s, d.size());
        f.apply(d.join_all(m.clone())) == c.join_all(m.map(|a| f.apply(a)))
    })
}

pub fn preserves_all_meets(f: &LatticeMap) -> bool {
    let (d, c) = (f.dom(), f.cod());
    subsets(d.size()).all(|s| {
        let m = members(s, d.size());
        f.apply(d.meet_all(m.clone())) == c.meet_all(m.map(|a| f.apply(a)))
    })
}

/// `f` is epic in the category of join maps: any two join maps out of its
/// codomain into one of `tests` that agree after `f` are equal.
pub fn categorical_epi(f: &LatticeMap, tests: &[LatticeRef], limits: &Limits) -> Result<bool> {
    for m in tests {
        let maps = hom_set(f.cod(), m, HomClass::Join, limits)?;
        let after: Vec<LatticeMap> = maps.iter().map(|g| compose(g, f)).collect::<Result<_>>()?;
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                if after[i] == after[j] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `f` is monic: any two join maps from one of `tests` into its domain that
/// agree after `f` are equal.
pub fn categorical_mono(f: &LatticeMap, tests: &[LatticeRef], limits: &Limits) -> Result<bool> {
    for m in tests {
        let maps = hom_set(m, f.dom(), HomClass::Join, limits)?;
        let after: Vec<LatticeMap> = maps.iter().map(|k| compose(f, k)).collect::<Result<_>>()?;
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                if after[i] == after[j] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `f(\/A) = \/theta(A)` over every `A` in the truncated power set.
pub fn coherent_exhaustive(f: &LatticeMap, theta: &UnionMap) -> bool {
    let (p1, p2) = (theta.source(), theta.target());
    p1.masks().all(|a| f.apply(p1.join_of(a)) == p2.join_of(theta.apply(a)))
}

/// Some function `L1 -> L2` coherent with `theta`, by trying all of them.
pub fn coherent_map_search(theta: &UnionMap) -> Option<LatticeMap> {
    let (l1, l2) = (theta.source().base(), theta.target().base());
    let (n1, n2) = (l1.size(), l2.size());
    let total = (n2 as u64).checked_pow(n1 as u32)?;
    (0..total).find_map(|code| {
        let mut c = code;
        let values: Vec<usize> = (0..n1)
            .map(|_| {
                let v = (c % n2 as u64) as usize;
                c /= n2 as u64;
                v
            })
            .collect();
        let f = LatticeMap::new(l1, l2, values).ok()?;
        coherent_exhaustive(&f, theta).then_some(f)
    })
}

/// `theta` is a union of some family of power maps. Only power maps below
/// `theta` can take part; every family of those is tried when there are at
/// most 16, otherwise families of size at most 3.
pub fn based_by_unions(theta: &UnionMap, limits: &Limits) -> Result<bool> {
    let (l1, l2) = (theta.source().base(), theta.target().base());
    let gens: Vec<Vec<u32>> = hom_set(l1, l2, HomClass::Join, limits)?
        .iter()
        .map(|g| power_map(g, limits).map(|p| p.images().to_vec()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| g.iter().zip(theta.images()).all(|(x, t)| x & !t == 0))
        .collect();
    let union = |family: &[usize]| -> Vec<u32> {
        let mut acc = vec![0u32; theta.images().len()];
        for &i in family {
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a |= g;
            }
        }
        acc
    };
    let k = gens.len();
    if k <= 16 {
        return Ok(subsets(k).any(|s| union(&members(s, k).collect::<Vec<_>>()) == theta.images()));
    }
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                if union(&[i, j, l]) == theta.images() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(union(&[]) == theta.images())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::Lattice;
    use crate::transition::{all_union_maps, coherence_check, is_based, underlying_map};

    fn small() -> Vec<LatticeRef> {
        vec![Arc::new(Lattice::chain(2)), Arc::new(Lattice::chain(3)), Arc::new(crate::corpus::d4())]
    }

    #[test]
    fn powerset_meet_is_intersection() {
        let b8 = Lattice::powerset(3);
        // x v y = 0b011, y v z = 0b110
        assert_eq!(b8.meet(0b011, 0b110), 0b010);
    }

    #[test]
    fn binary_joins_suffice() {
        let lim = Limits::default();
        for l1 in small() {
            for l2 in small() {
                for f in hom_set(&l1, &l2, HomClass::Isotone, &lim).unwrap() {
                    let p = f.profile();
                    assert_eq!(p.joins, preserves_all_joins(&f));
                    assert_eq!(p.meets, preserves_all_meets(&f));
                }
            }
        }
    }

    #[test]
    fn fast_and_exhaustive_coherence_agree() {
        let lim = Limits::default();
        for l1 in small() {
            for l2 in small() {
                let maps = hom_set(&l1, &l2, HomClass::Isotone, &lim).unwrap();
                for theta in all_union_maps(&l1, &l2, &lim).unwrap() {
                    for f in &maps {
                        assert_eq!(coherence_check(f, &theta).unwrap(), coherent_exhaustive(f, &theta));
                    }
                    assert_eq!(underlying_map(&theta).ok(), coherent_map_search(&theta));
                    assert_eq!(is_based(&theta, &lim).unwrap(), based_by_unions(&theta, &lim).unwrap());
                }
            }
        }
    }
}
