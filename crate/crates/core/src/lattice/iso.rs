use super::{Elem, Lattice};

/// True iff `map` (indexed by elements of `a`) is a bijection onto `b` with
/// `x <= y` iff `map[x] <= map[y]`.
pub fn is_order_isomorphism(a: &Lattice, b: &Lattice, map: &[Elem]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &m in map {
        if m >= b.size() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    a.elements().all(|x| a.elements().all(|y| a.leq(x, y) == b.leq(map[x], map[y])))
}

/// Some order isomorphism `a -> b`, found by backtracking.
pub fn find_isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<Elem>> {
    find_isomorphism_where(a, b, |_| true)
}

/// Some order isomorphism `a -> b` that additionally satisfies `accept`.
pub fn find_isomorphism_where(a: &Lattice, b: &Lattice, accept: impl Fn(&[Elem]) -> bool) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let sig = |l: &Lattice, x: Elem| {
        let below = l.elements().filter(|&y| l.leq(y, x)).count();
        let above = l.elements().filter(|&y| l.leq(x, y)).count();
        (below, above)
    };
    let sig_a: Vec<_> = a.elements().map(|x| sig(a, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| sig(b, x)).collect();
    let mut ms = sig_a.clone();
    let mut mb = sig_b.clone();
    ms.sort();
    mb.sort();
    if ms != mb {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        a: &Lattice,
        b: &Lattice,
        sig_a: &[(usize, usize)],
        sig_b: &[(usize, usize)],
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        accept: &dyn Fn(&[Elem]) -> bool,
    ) -> bool {
        let n = a.size();
        if k == n {
            return accept(map);
        }
        for c in 0..n {
            if used[c] || sig_a[k] != sig_b[c] {
                continue;
            }
            let ok = (0..k).all(|j| a.leq(j, k) == b.leq(map[j], c) && a.leq(k, j) == b.leq(c, map[j]));
            if !ok {
                continue;
            }
            map[k] = c;
            used[c] = true;
            if go(k + 1, a, b, sig_a, sig_b, map, used, accept) {
                return true;
            }
            used[c] = false;
        }
        map[k] = usize::MAX;
        false
    }
    if go(0, a, b, &sig_a, &sig_b, &mut map, &mut used, &accept) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_not_diamond() {
        assert!(find_isomorphism(&Lattice::chain(4), &Lattice::powerset(2)).is_none());
    }

    #[test]
    fn found_maps_are_isomorphisms() {
        let a = Lattice::powerset(3);
        let b = Lattice::from_covers(
            "B8",
            &["0", "x", "y", "z", "xy", "xz", "yz", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6), (4, 7), (5, 7), (6, 7)],
        )
        .unwrap();
        let m = find_isomorphism(&a, &b).unwrap();
        assert!(is_order_isomorphism(&a, &b, &m));
    }
}
