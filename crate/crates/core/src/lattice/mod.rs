//! Finite posets and complete lattices.
//!
//! The order written `<` in much of the literature on Galois connections is
//! reflexive; here it is always `<=` ([`Lattice::leq`]). Join and meet tables
//! are precomputed at construction so every higher module reduces to lookups.

mod construct;
mod iso;
mod poset;

use std::sync::Arc;

pub use construct::{
    direct_product, horizontal_sum, lower_interval, random_moore_lattice, upper_extension,
    HorizontalSum, Interval, Product, UpperExtension,
};
pub use iso::{find_isomorphism, find_isomorphism_where, is_order_isomorphism};
pub use poset::{build_poset, Elem, FinitePoset, PairMode};

use crate::error::{Error, Result};

/// Shared handle; maps refer to their domain and codomain through this.
pub type LatticeRef = Arc<Lattice>;

/// Size bounds for operations whose cost explodes with the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier any lattice construction may produce.
    pub max_lattice: usize,
    /// Largest lattice whose truncated power set may be materialized.
    pub max_power: usize,
    /// Largest number of candidate value tables an enumeration may visit.
    pub max_enumeration: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_lattice: 64, max_power: 16, max_enumeration: 1 << 24 }
    }
}

impl Limits {
    pub fn with_max_lattice(mut self, n: usize) -> Self {
        self.max_lattice = n;
        self
    }

    pub(crate) fn check_lattice(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_lattice {
            return Err(Error::SizeLimit {
                what: what.to_string(),
                size: size as u128,
                limit: self.max_lattice as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_power(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_power {
            return Err(Error::SizeLimit {
                what: what.to_string(),
                size: size as u128,
                limit: self.max_power as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_enumeration(&self, what: &str, base: usize, exponent: usize) -> Result<()> {
        let size = checked_pow(base as u128, exponent);
        match size {
            Some(s) if s <= self.max_enumeration => Ok(()),
            _ => Err(Error::SizeLimit {
                what: what.to_string(),
                size: size.unwrap_or(u128::MAX),
                limit: self.max_enumeration,
            }),
        }
    }
}

pub(crate) fn checked_pow(base: u128, exponent: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// A finite (hence complete) lattice with precomputed operation tables.
#[derive(Debug, Clone)]
pub struct Lattice {
    name: String,
    poset: FinitePoset,
    bottom: Elem,
    top: Elem,
    join: Vec<Elem>,
    meet: Vec<Elem>,
}

/// Structural equality: same order and labels; the name is ignored.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Computes bounds and the join/meet tables of `poset`, failing with a
    /// witness pair if some lub or glb is missing.
    pub fn from_poset(name: impl Into<String>, poset: FinitePoset) -> Result<Lattice> {
        let n = poset.size();
        if n == 0 {
            return Err(Error::NotALattice("empty carrier has no bottom".into()));
        }
        let bottom = (0..n)
            .find(|&a| (0..n).all(|x| poset.leq(a, x)))
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        let top = (0..n)
            .find(|&a| (0..n).all(|x| poset.leq(x, a)))
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lub = least_upper_bound(&poset, a, b).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "{} and {} have no least upper bound",
                        poset.label(a),
                        poset.label(b)
                    ))
                })?;
                let glb = greatest_lower_bound(&poset, a, b).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "{} and {} have no greatest lower bound",
                        poset.label(a),
                        poset.label(b)
                    ))
                })?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        Ok(Lattice { name: name.into(), poset, bottom, top, join, meet })
    }

    /// Convenience: covers given as index pairs, labels attached.
    pub fn from_covers(name: impl Into<String>, labels: &[&str], covers: &[(Elem, Elem)]) -> Result<Lattice> {
        let poset = build_poset(labels.len(), covers, PairMode::Covers)?
            .with_labels(labels.iter().map(|s| s.to_string()).collect())?;
        Lattice::from_poset(name, poset)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Lattice {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let labels = match n {
            1 => vec!["0".to_string()],
            2 => vec!["0".to_string(), "1".to_string()],
            _ => (0..n)
                .map(|i| {
                    if i == 0 {
                        "0".to_string()
                    } else if i == n - 1 {
                        "1".to_string()
                    } else if n == 3 {
                        "m".to_string()
                    } else {
                        format!("c{i}")
                    }
                })
                .collect(),
        };
        let poset = build_poset(n, &covers, PairMode::Covers)
            .and_then(|p| p.with_labels(labels))
            .expect("chain is a valid poset");
        Lattice::from_poset(format!("C{n}"), poset).expect("chain is a lattice")
    }

    /// The two-element lattice `2`.
    pub fn two() -> Lattice {
        Lattice::chain(2)
    }

    /// The Boolean lattice of subsets of an `n`-point set; element `i` is the
    /// subset with bitmask `i`.
    pub fn powerset(n: usize) -> Lattice {
        assert!(n < 16, "powerset carrier too large");
        let size = 1usize << n;
        let poset = FinitePoset::from_relation(size, |a, b| a & !b == 0)
            .and_then(|p| p.with_labels((0..size).map(|m| mask_label(m as u64, n)).collect()))
            .expect("inclusion is a partial order");
        Lattice::from_poset(format!("B{size}"), poset).expect("powerset is a lattice")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Lattice {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn label(&self, a: Elem) -> &str {
        self.poset.label(a)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.poset.labels().iter().position(|l| l == label)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.poset.leq(a, b)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    /// Join of an arbitrary subset; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Elem {
        subset.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary subset; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Elem {
        subset.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| a != self.bottom && self.elements().all(|x| x == self.bottom || x == a || !self.leq(x, a)))
            .collect()
    }

    pub fn atoms_below(&self, a: Elem) -> Vec<Elem> {
        self.atoms().into_iter().filter(|&p| self.leq(p, a)).collect()
    }

    pub fn is_atomistic(&self) -> bool {
        self.atomistic_witness().is_none()
    }

    /// An element that is not the join of the atoms below it, if any.
    pub fn atomistic_witness(&self) -> Option<Elem> {
        let atoms = self.atoms();
        self.elements()
            .find(|&a| self.join_all(atoms.iter().copied().filter(|&p| self.leq(p, a))) != a)
    }

    pub(crate) fn require_atomistic(&self) -> Result<()> {
        match self.atomistic_witness() {
            None => Ok(()),
            Some(a) => Err(Error::NotAtomistic(format!(
                "{} in {} is not the join of the atoms below it",
                self.label(a),
                self.name
            ))),
        }
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&x| self.lt(x, a) && !self.elements().any(|y| self.lt(x, y) && self.lt(y, a)))
            .collect()
    }

    /// Complement of `a` when it exists and is unique (used for Boolean checks).
    pub fn complements(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| self.join(a, b) == self.top && self.meet(a, b) == self.bottom)
            .collect()
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    /// Finite Boolean algebra test: distributive and complemented. On
    /// success returns the (unique) complement table.
    pub fn boolean_complement(&self) -> Result<Vec<Elem>> {
        if !self.is_distributive() {
            return Err(Error::NotBoolean(format!("{} is not distributive", self.name)));
        }
        self.elements()
            .map(|a| {
                self.complements(a).first().copied().ok_or_else(|| {
                    Error::NotBoolean(format!("{} has no complement in {}", self.label(a), self.name))
                })
            })
            .collect()
    }

    /// Re-derives lub and glb by brute-force search and compares with the tables.
    pub fn verify_tables(&self) -> Result<()> {
        for a in self.elements() {
            for b in self.elements() {
                if least_upper_bound(&self.poset, a, b) != Some(self.join(a, b)) {
                    return Err(Error::NotALattice(format!(
                        "join table entry for {} and {} is wrong",
                        self.label(a),
                        self.label(b)
                    )));
                }
                if greatest_lower_bound(&self.poset, a, b) != Some(self.meet(a, b)) {
                    return Err(Error::NotALattice(format!(
                        "meet table entry for {} and {} is wrong",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn least_upper_bound(p: &FinitePoset, a: Elem, b: Elem) -> Option<Elem> {
    let n = p.size();
    let ubs: Vec<Elem> = (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| p.leq(u, v)))
}

fn greatest_lower_bound(p: &FinitePoset, a: Elem, b: Elem) -> Option<Elem> {
    let n = p.size();
    let lbs: Vec<Elem> = (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
    lbs.iter().copied().find(|&u| lbs.iter().all(|&v| p.leq(v, u)))
}

/// `{0,2}`-style label for a bitmask over `n` points named by index.
pub(crate) fn mask_label(mask: u64, n: usize) -> String {
    let parts: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
