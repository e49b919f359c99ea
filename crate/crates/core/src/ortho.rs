//! Orthocomplemented lattices, conjugation, the dagger (orthoadjoint)
//! calculus, and orthogonality spaces with their biorthogonal closure.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{find_isomorphism_where, Elem, FinitePoset, Lattice, LatticeRef};
use crate::maps::{compose, left_adjoint, right_adjoint, same_lattice, LatticeMap};

/// A lattice with an order-reversing involution `a |-> a'` satisfying `a /\ a' = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    lattice: LatticeRef,
    ortho: Vec<Elem>,
}

impl OrthoLattice {
    pub fn lattice(&self) -> &LatticeRef {
        &self.lattice
    }

    pub fn ortho_table(&self) -> &[Elem] {
        &self.ortho
    }

    pub fn perp(&self, a: Elem) -> Elem {
        self.ortho[a]
    }

    pub fn is_atomistic(&self) -> bool {
        self.lattice.is_atomistic()
    }

    fn check_carrier(&self, l: &LatticeRef) -> Result<()> {
        if same_lattice(&self.lattice, l) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("map lattice {} is not {}", l.name(), self.lattice.name())))
        }
    }
}

/// Checks the three axioms exhaustively; `a \/ a' = 1` is derived and asserted.
pub fn validate_ortho(l: &LatticeRef, ortho: Vec<Elem>) -> Result<OrthoLattice> {
    if ortho.len() != l.size() {
        return Err(Error::ShapeMismatch(format!("ortho table has {} entries for {} elements", ortho.len(), l.size())));
    }
    if let Some(&bad) = ortho.iter().find(|&&v| v >= l.size()) {
        return Err(Error::IndexOutOfRange { index: bad, size: l.size() });
    }
    let lab = |a: Elem| l.label(a).to_string();
    for a in l.elements() {
        if ortho[ortho[a]] != a {
            return Err(Error::OrthoAxiomFailed(format!("{}'' = {} != {}", lab(a), lab(ortho[ortho[a]]), lab(a))));
        }
        if l.meet(a, ortho[a]) != l.bottom() {
            return Err(Error::OrthoAxiomFailed(format!("{} /\\ {}' = {} != 0", lab(a), lab(a), lab(l.meet(a, ortho[a])))));
        }
        for b in l.elements() {
            if l.leq(a, b) && !l.leq(ortho[b], ortho[a]) {
                return Err(Error::OrthoAxiomFailed(format!("{} <= {} but not {}' <= {}'", lab(a), lab(b), lab(b), lab(a))));
            }
        }
    }
    for a in l.elements() {
        assert_eq!(l.join(a, ortho[a]), l.top(), "De Morgan consequence a v a' = 1 failed");
    }
    Ok(OrthoLattice { lattice: l.clone(), ortho })
}

/// `C(alpha)(a) = alpha(a')'`.
pub fn conjugate(alpha: &LatticeMap, dom: &OrthoLattice, cod: &OrthoLattice) -> Result<LatticeMap> {
    dom.check_carrier(alpha.dom())?;
    cod.check_carrier(alpha.cod())?;
    Ok(LatticeMap::from_fn(alpha.dom(), alpha.cod(), |a| cod.perp(alpha.apply(dom.perp(a)))))
}

/// `f^dagger = C(f*) : L2 -> L1` for a join-preserving `f : L1 -> L2`.
pub fn dagger(f: &LatticeMap, dom: &OrthoLattice, cod: &OrthoLattice) -> Result<LatticeMap> {
    dom.check_carrier(f.dom())?;
    cod.check_carrier(f.cod())?;
    let g = right_adjoint(f)?;
    conjugate(&g, cod, dom)
}

/// `u^dagger o u = id`, cross-checked against `a <= b'` iff `u(a) <= u(b)'`.
pub fn is_isometry(u: &LatticeMap, dom: &OrthoLattice, cod: &OrthoLattice) -> Result<bool> {
    let ud = dagger(u, dom, cod)?;
    let via_dagger = compose(&ud, u)?.is_identity();
    let l1 = dom.lattice();
    let l2 = cod.lattice();
    let via_orthogonality = l1
        .elements()
        .all(|a| l1.elements().all(|b| l1.leq(a, dom.perp(b)) == l2.leq(u.apply(a), cod.perp(u.apply(b)))));
    assert_eq!(via_dagger, via_orthogonality, "isometry criteria disagree");
    Ok(via_dagger)
}

/// Outcome of the partial-isometry checks on an ortholattice morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColattReport {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

pub fn is_ortho_preserving(h: &LatticeMap, dom: &OrthoLattice, cod: &OrthoLattice) -> bool {
    h.dom().elements().all(|a| h.apply(dom.perp(a)) == cod.perp(h.apply(a)))
}

/// For `h` preserving joins, meets and orthocomplements: `h_*(a') = h*(a)'`,
/// `h^dagger = h_*`, and `h o h^dagger o h = h`.
pub fn colatt_check(h: &LatticeMap, dom: &OrthoLattice, cod: &OrthoLattice) -> Result<ColattReport> {
    dom.check_carrier(h.dom())?;
    cod.check_carrier(h.cod())?;
    let p = h.profile();
    if !p.joins || !p.meets || !is_ortho_preserving(h, dom, cod) {
        return Err(Error::NotCOLattMorphism(format!(
            "joins: {}, meets: {}, orthocomplement: {}",
            p.joins,
            p.meets,
            is_ortho_preserving(h, dom, cod)
        )));
    }
    let upper = right_adjoint(h)?;
    let lower = left_adjoint(h)?;
    let hd = dagger(h, dom, cod)?;
    let l2 = cod.lattice();
    let mut witnesses = Vec::new();
    for a in l2.elements() {
        if lower.apply(cod.perp(a)) != dom.perp(upper.apply(a)) {
            witnesses.push(format!("h_*({}') != h*({})'", l2.label(a), l2.label(a)));
        }
    }
    if hd != lower {
        witnesses.push("h^dagger != h_*".to_string());
    }
    if compose(h, &compose(&hd, h)?)? != *h {
        witnesses.push("h o h^dagger o h != h".to_string());
    }
    Ok(ColattReport { passed: witnesses.is_empty(), witnesses })
}

/// A point set with a symmetric, antireflexive orthogonality relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoSpace {
    name: String,
    points: Vec<String>,
    orth: Vec<bool>,
}

impl OrthoSpace {
    pub fn new(name: impl Into<String>, points: Vec<String>, pairs: &[(usize, usize)]) -> Result<OrthoSpace> {
        let n = points.len();
        if n > 20 {
            return Err(Error::SizeLimit { what: "orthogonality space points".into(), size: n as u128, limit: 20 });
        }
        let mut orth = vec![false; n * n];
        for &(p, q) in pairs {
            for i in [p, q] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            if p == q {
                return Err(Error::InvalidOrthoSpace(format!("{} is orthogonal to itself", points[p])));
            }
            orth[p * n + q] = true;
            orth[q * n + p] = true;
        }
        Ok(OrthoSpace { name: name.into(), points, orth })
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

    pub fn orthogonal(&self, p: usize, q: usize) -> bool {
        self.orth[p * self.size() + q]
    }

    /// `A^perp` as a bitmask.
    pub fn perp(&self, a: u64) -> u64 {
        let n = self.size();
        (0..n)
            .filter(|&q| (0..n).filter(|&p| a >> p & 1 == 1).all(|p| self.orthogonal(p, q)))
            .fold(0, |m, q| m | 1 << q)
    }

    pub fn biclosure(&self, a: u64) -> u64 {
        self.perp(self.perp(a))
    }

    /// A pair of distinct points not separated by any third point, if any.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let n = self.size();
        for p in 0..n {
            for q in 0..n {
                if p != q && !(0..n).any(|r| self.orthogonal(p, r) && !self.orthogonal(q, r)) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_separating(&self) -> bool {
        self.separation_witness().is_none()
    }
}

/// Atoms of an atomistic ortholattice with `p perp q` iff `p <= q'`.
#[derive(Debug, Clone)]
pub struct AtomOrthoSpace {
    pub space: OrthoSpace,
    pub atoms: Vec<Elem>,
}

pub fn orthospace_from_lattice(l: &OrthoLattice) -> Result<AtomOrthoSpace> {
    let lat = l.lattice();
    lat.require_atomistic()?;
    let atoms = lat.atoms();
    let mut pairs = Vec::new();
    for (i, &p) in atoms.iter().enumerate() {
        for (j, &q) in atoms.iter().enumerate() {
            if i < j && lat.leq(p, l.perp(q)) {
                pairs.push((i, j));
            }
        }
    }
    let names = atoms.iter().map(|&p| lat.label(p).to_string()).collect();
    let space = OrthoSpace::new(format!("Sigma({})", lat.name()), names, &pairs)?;
    // p <= q' is symmetric through the involution
    for (i, &p) in atoms.iter().enumerate() {
        for (j, &q) in atoms.iter().enumerate() {
            assert_eq!(lat.leq(p, l.perp(q)), space.orthogonal(i, j) || (i == j && lat.leq(p, l.perp(p))));
        }
    }
    if let Some((p, q)) = space.separation_witness() {
        return Err(Error::NotSeparating(format!("atoms {} and {} are not separated", space.points[p], space.points[q])));
    }
    Ok(AtomOrthoSpace { space, atoms })
}

/// The biorthogonal subsets of an orthogonality space ordered by inclusion.
#[derive(Debug, Clone)]
pub struct BiorthoLattice {
    pub ortho: OrthoLattice,
    /// Element index to bitmask of points.
    pub sets: Vec<u64>,
}

pub fn biortho_lattice(s: &OrthoSpace) -> Result<BiorthoLattice> {
    if let Some((p, q)) = s.separation_witness() {
        return Err(Error::NotSeparating(format!("{} and {} are not separated in {}", s.points[p], s.points[q], s.name)));
    }
    let n = s.size();
    let mut sets: Vec<u64> = (0..1u64 << n).filter(|&a| s.biclosure(a) == a).collect();
    sets.sort_by_key(|m| (m.count_ones(), *m));
    let labels: Vec<String> = sets
        .iter()
        .map(|&m| {
            let parts: Vec<&str> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| s.points[i].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let poset = FinitePoset::from_relation(sets.len(), |i, j| sets[i] & !sets[j] == 0)?.with_labels(labels)?;
    let lattice: LatticeRef = Arc::new(Lattice::from_poset(format!("L({})", s.name), poset)?);
    let index = |m: u64| sets.iter().position(|&x| x == m).expect("perp of a set is biorthogonal");
    let ortho: Vec<Elem> = sets.iter().map(|&m| index(s.perp(m))).collect();
    let ortho = validate_ortho(&lattice, ortho)?;
    // singletons are the atoms
    let atoms = lattice.atoms();
    assert!(atoms.iter().all(|&a| sets[a].count_ones() == 1) && atoms.len() == n);
    lattice.require_atomistic()?;
    Ok(BiorthoLattice { ortho, sets })
}

/// An order isomorphism between ortholattices that also commutes with `'`.
pub fn find_ortho_isomorphism(a: &OrthoLattice, b: &OrthoLattice) -> Option<Vec<Elem>> {
    find_isomorphism_where(a.lattice(), b.lattice(), |m| {
        a.lattice().elements().all(|x| m[a.perp(x)] == b.perp(m[x]))
    })
}

/// Every orthocomplementation a lattice admits (exhaustive over involutions).
pub fn all_orthocomplementations(l: &LatticeRef) -> Vec<OrthoLattice> {
    let n = l.size();
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; n];
    fn go(k: usize, l: &LatticeRef, table: &mut Vec<Elem>, out: &mut Vec<OrthoLattice>) {
        let n = l.size();
        if k == n {
            if let Ok(o) = validate_ortho(l, table.clone()) {
                out.push(o);
            }
            return;
        }
        if table[k] != usize::MAX {
            go(k + 1, l, table, out);
            return;
        }
        for v in k..n {
            if table[v] != usize::MAX {
                continue;
            }
            if v == k && n > 1 {
                // a = a' forces a /\ a' = a = 0 and a v a' = a = 1
                continue;
            }
            table[k] = v;
            table[v] = k;
            go(k + 1, l, table, out);
            table[k] = usize::MAX;
            table[v] = usize::MAX;
        }
    }
    go(0, l, &mut table, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn lref(l: Lattice) -> LatticeRef {
        Arc::new(l)
    }

    #[test]
    fn two_element_ortho() {
        let c2 = lref(Lattice::chain(2));
        assert!(validate_ortho(&c2, vec![1, 0]).is_ok());
    }

    #[test]
    fn boolean_four_ortho() {
        let d4 = lref(Lattice::from_covers("D4", &["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        assert!(validate_ortho(&d4, vec![3, 2, 1, 0]).is_ok());
    }

    #[test]
    fn self_complemented_middle_fails() {
        let c3 = lref(Lattice::chain(3));
        let err = validate_ortho(&c3, vec![2, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::OrthoAxiomFailed(ref w) if w.contains("m")));
    }

    #[test]
    fn m3_and_n5_admit_no_orthocomplement() {
        assert!(all_orthocomplementations(&lref(corpus::m3())).is_empty());
        assert!(all_orthocomplementations(&lref(corpus::n5())).is_empty());
        assert_eq!(all_orthocomplementations(&lref(Lattice::powerset(2))).len(), 1);
    }

    #[test]
    fn conjugation_of_identity() {
        let o = corpus::o6();
        let id = LatticeMap::identity(o.lattice());
        assert_eq!(conjugate(&id, &o, &o).unwrap(), id);
    }

    #[test]
    fn dagger_of_zero_map() {
        let o = corpus::o6();
        let zero = LatticeMap::constant(o.lattice(), o.lattice(), o.lattice().bottom());
        let zd = dagger(&zero, &o, &o).unwrap();
        assert_eq!(zd, zero);
        assert!(compose(&zd, &zero).unwrap() == zero);
        assert!(!is_isometry(&zero, &o, &o).unwrap());
        assert!(is_isometry(&LatticeMap::identity(o.lattice()), &o, &o).unwrap());
    }

    #[test]
    fn orthospace_of_boolean_four() {
        let b4 = corpus::boolean_ortho(2);
        let s = orthospace_from_lattice(&b4).unwrap();
        assert_eq!(s.space.size(), 2);
        assert!(s.space.orthogonal(0, 1));
    }

    #[test]
    fn orthospace_of_mo2() {
        let mo2 = corpus::mo2();
        let s = orthospace_from_lattice(&mo2).unwrap();
        assert_eq!(s.space.size(), 4);
        // a perp a', b perp b', no other pairs
        let count = (0..4).flat_map(|p| (0..4).map(move |q| (p, q))).filter(|&(p, q)| s.space.orthogonal(p, q)).count();
        assert_eq!(count, 4);
    }

    #[test]
    fn biorthogonals_of_two_orthogonal_points() {
        let s = OrthoSpace::new("S", vec!["x".into(), "y".into()], &[(0, 1)]).unwrap();
        let b = biortho_lattice(&s).unwrap();
        assert_eq!(b.sets, vec![0b00, 0b01, 0b10, 0b11]);
        assert!(find_ortho_isomorphism(&b.ortho, &corpus::boolean_ortho(2)).is_some());
    }

    #[test]
    fn unseparated_points_are_rejected() {
        let s = OrthoSpace::new("S", vec!["x".into(), "y".into()], &[]).unwrap();
        assert!(matches!(biortho_lattice(&s), Err(Error::NotSeparating(_))));
    }

    #[test]
    fn self_orthogonal_point_is_rejected() {
        assert!(matches!(
            OrthoSpace::new("S", vec!["x".into()], &[(0, 0)]),
            Err(Error::InvalidOrthoSpace(_))
        ));
    }

    #[test]
    fn one_atom_lattice_gives_single_point() {
        let c2 = validate_ortho(&lref(Lattice::chain(2)), vec![1, 0]).unwrap();
        let s = orthospace_from_lattice(&c2).unwrap();
        assert_eq!(s.space.size(), 1);
        assert!(s.space.is_separating());
    }

    #[test]
    fn roundtrips_through_orthospaces() {
        for o in [corpus::boolean_ortho(2), corpus::boolean_ortho(3), corpus::mo2()] {
            let s = orthospace_from_lattice(&o).unwrap();
            let back = biortho_lattice(&s.space).unwrap();
            assert!(find_ortho_isomorphism(&o, &back.ortho).is_some());
        }
    }
}
