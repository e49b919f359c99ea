use std::str::FromStr;

use super::LatticeMap;
use crate::error::{Error, Result};
use crate::lattice::{Elem, LatticeRef, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomClass {
    Isotone,
    Join,
    Meet,
    BalancedJoin,
    DenseJoin,
    /// Join maps sending atoms to atoms or bottom.
    AtomicJoin,
}

impl FromStr for HomClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "isotone" => HomClass::Isotone,
            "join" => HomClass::Join,
            "meet" => HomClass::Meet,
            "balanced-join" => HomClass::BalancedJoin,
            "dense-join" => HomClass::DenseJoin,
            "atomic-join" => HomClass::AtomicJoin,
            other => return Err(Error::Parse { line: 0, message: format!("unknown map class {other}") }),
        })
    }
}

/// Every map of the given class, lexicographic on value tables.
pub fn hom_set(l1: &LatticeRef, l2: &LatticeRef, class: HomClass, limits: &Limits) -> Result<Vec<LatticeMap>> {
    limits.check_enumeration(&format!("Hom({}, {})", l1.name(), l2.name()), l2.size(), l1.size())?;
    let n = l1.size();
    let uses_joins = !matches!(class, HomClass::Isotone | HomClass::Meet);
    let uses_meets = class == HomClass::Meet;
    // constraints[k]: pairs (i, j, op-result) whose three indices are all <= k, with k the largest
    let mut constraints: Vec<Vec<(Elem, Elem, Elem)>> = vec![Vec::new(); n];
    if uses_joins || uses_meets {
        for i in 0..n {
            for j in (i + 1)..n {
                let r = if uses_joins { l1.join(i, j) } else { l1.meet(i, j) };
                constraints[i.max(j).max(r)].push((i, j, r));
            }
        }
    }
    let atoms1 = l1.atoms();
    let atoms2 = l2.atoms();
    let mut out = Vec::new();
    let mut values = vec![0; n];
    let ctx = Ctx { l1, l2, class, uses_joins, uses_meets, constraints: &constraints, atoms1: &atoms1, atoms2: &atoms2 };
    ctx.extend(0, &mut values, &mut out);
    Ok(out.into_iter().map(|v| LatticeMap::new(l1, l2, v).expect("enumerated table is well-formed")).collect())
}

struct Ctx<'a> {
    l1: &'a LatticeRef,
    l2: &'a LatticeRef,
    class: HomClass,
    uses_joins: bool,
    uses_meets: bool,
    constraints: &'a [Vec<(Elem, Elem, Elem)>],
    atoms1: &'a [Elem],
    atoms2: &'a [Elem],
}

impl Ctx<'_> {
    fn admissible(&self, k: Elem, v: Elem, values: &[Elem]) -> bool {
        let (l1, l2) = (self.l1, self.l2);
        if self.uses_joins && k == l1.bottom() && v != l2.bottom() {
            return false;
        }
        if self.uses_meets && k == l1.top() && v != l2.top() {
            return false;
        }
        match self.class {
            HomClass::BalancedJoin if k == l1.top() && v != l2.top() => return false,
            HomClass::DenseJoin if k != l1.bottom() && v == l2.bottom() => return false,
            HomClass::AtomicJoin if self.atoms1.contains(&k) && v != l2.bottom() && !self.atoms2.contains(&v) => {
                return false
            }
            _ => {}
        }
        for j in 0..k {
            if l1.leq(j, k) && !l2.leq(values[j], v) {
                return false;
            }
            if l1.leq(k, j) && !l2.leq(v, values[j]) {
                return false;
            }
        }
        let val = |x: Elem| if x == k { v } else { values[x] };
        self.constraints[k].iter().all(|&(i, j, r)| {
            let (a, b) = (val(i), val(j));
            let expect = if self.uses_joins { l2.join(a, b) } else { l2.meet(a, b) };
            val(r) == expect
        })
    }

    fn extend(&self, k: usize, values: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if k == self.l1.size() {
            out.push(values.clone());
            return;
        }
        for v in self.l2.elements() {
            if self.admissible(k, v, values) {
                values[k] = v;
                self.extend(k + 1, values, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::Lattice;
    use crate::maps::two;

    fn brute(l1: &LatticeRef, l2: &LatticeRef, keep: impl Fn(&LatticeMap) -> bool) -> Vec<LatticeMap> {
        let n = l1.size();
        let m = l2.size();
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            // most significant digit first keeps lexicographic order
            let mut vals = vec![0; n];
            let mut c = code;
            for k in (0..n).rev() {
                vals[k] = c % m;
                c /= m;
            }
            let f = LatticeMap::new(l1, l2, vals).unwrap();
            if keep(&f) {
                out.push(f);
            }
        }
        out
    }

    #[test]
    fn join_maps_from_two() {
        let c2 = two();
        let maps = hom_set(&c2, &c2, HomClass::Join, &Limits::default()).unwrap();
        assert_eq!(maps.len(), 2);
        let d4: LatticeRef = Arc::new(Lattice::powerset(2));
        assert_eq!(hom_set(&d4, &c2, HomClass::Join, &Limits::default()).unwrap().len(), 4);
        assert_eq!(hom_set(&c2, &d4, HomClass::Join, &Limits::default()).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let lats: Vec<LatticeRef> = vec![
            Arc::new(Lattice::chain(3)),
            Arc::new(Lattice::powerset(2)),
            Arc::new(Lattice::from_covers("N5", &["0", "a", "b", "c", "1"], &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)]).unwrap()),
        ];
        for l1 in &lats {
            for l2 in &lats {
                let lim = Limits::default();
                assert_eq!(hom_set(l1, l2, HomClass::Isotone, &lim).unwrap(), brute(l1, l2, |f| f.is_isotone()));
                assert_eq!(hom_set(l1, l2, HomClass::Join, &lim).unwrap(), brute(l1, l2, |f| f.profile().joins));
                assert_eq!(hom_set(l1, l2, HomClass::Meet, &lim).unwrap(), brute(l1, l2, |f| f.profile().meets));
                assert_eq!(
                    hom_set(l1, l2, HomClass::DenseJoin, &lim).unwrap(),
                    brute(l1, l2, |f| f.profile().joins && f.profile().dense)
                );
                assert_eq!(
                    hom_set(l1, l2, HomClass::BalancedJoin, &lim).unwrap(),
                    brute(l1, l2, |f| f.profile().joins && f.profile().balanced)
                );
            }
        }
    }

    #[test]
    fn identity_is_always_a_join_map() {
        let l: LatticeRef = Arc::new(Lattice::powerset(3));
        let maps = hom_set(&l, &l, HomClass::Join, &Limits::default()).unwrap();
        assert!(maps.iter().any(|f| f.is_identity()));
    }

    #[test]
    fn size_limit() {
        let l: LatticeRef = Arc::new(Lattice::chain(9));
        assert!(matches!(hom_set(&l, &l, HomClass::Join, &Limits::default()), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn class_names_parse() {
        assert_eq!("atomic-join".parse::<HomClass>().unwrap(), HomClass::AtomicJoin);
        assert!("bogus".parse::<HomClass>().is_err());
    }
}
