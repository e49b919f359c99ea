use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mask_label, Elem, FinitePoset, Lattice, LatticeRef, Limits};
use crate::error::{Error, Result};
use crate::maps::LatticeMap;

/// The lower interval `[0, a]` with its embedding `i_a` and projection `pi_a`.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lattice: LatticeRef,
    pub parent: LatticeRef,
    pub anchor: Elem,
    /// Local index to parent index.
    pub members: Vec<Elem>,
    /// `i_a : [0,a] -> L`, `x |-> x`.
    pub embed: LatticeMap,
    /// `pi_a : L -> [0,a]`, `x |-> x /\ a`.
    pub project: LatticeMap,
}

impl Interval {
    pub fn local(&self, parent_elem: Elem) -> Option<Elem> {
        self.members.iter().position(|&m| m == parent_elem)
    }

    pub fn global(&self, local: Elem) -> Elem {
        self.members[local]
    }
}

pub fn lower_interval(l: &LatticeRef, a: Elem) -> Interval {
    let members: Vec<Elem> = l.elements().filter(|&x| l.leq(x, a)).collect();
    let m = members.len();
    let poset = FinitePoset::from_relation(m, |i, j| l.leq(members[i], members[j]))
        .and_then(|p| p.with_labels(members.iter().map(|&x| l.label(x).to_string()).collect()))
        .expect("restriction of a partial order");
    let sub = Arc::new(
        Lattice::from_poset(format!("{}[0,{}]", l.name(), l.label(a)), poset)
            .expect("lower intervals of lattices are lattices"),
    );
    let embed = LatticeMap::from_fn(&sub, l, |i| members[i]);
    let local = |x: Elem| members.iter().position(|&m| m == x).expect("member");
    let project = LatticeMap::from_fn(l, &sub, |x| local(l.meet(x, a)));
    Interval { lattice: sub, parent: l.clone(), anchor: a, members, embed, project }
}

/// Direct product with projections `Pi_b`, zero-padding injections `i_b` and
/// top-padding injections `j_b`.
#[derive(Debug, Clone)]
pub struct Product {
    pub lattice: LatticeRef,
    pub factors: Vec<LatticeRef>,
    pub projections: Vec<LatticeMap>,
    pub pad_bottom: Vec<LatticeMap>,
    pub pad_top: Vec<LatticeMap>,
}

impl Product {
    /// Mixed-radix decoding, first factor most significant.
    pub fn tuple(&self, x: Elem) -> Vec<Elem> {
        decode(&self.factors, x)
    }

    pub fn index(&self, tuple: &[Elem]) -> Elem {
        encode(&self.factors, tuple)
    }
}

fn decode(factors: &[LatticeRef], mut x: Elem) -> Vec<Elem> {
    let mut out = vec![0; factors.len()];
    for (k, f) in factors.iter().enumerate().rev() {
        out[k] = x % f.size();
        x /= f.size();
    }
    out
}

fn encode(factors: &[LatticeRef], tuple: &[Elem]) -> Elem {
    factors.iter().zip(tuple).fold(0, |acc, (f, &t)| acc * f.size() + t)
}

pub fn direct_product(factors: &[LatticeRef], limits: &Limits) -> Result<Product> {
    if factors.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
        .unwrap_or(usize::MAX);
    limits.check_lattice("direct product", size)?;
    let tuples: Vec<Vec<Elem>> = (0..size).map(|x| decode(factors, x)).collect();
    let poset = FinitePoset::from_relation(size, |x, y| {
        factors.iter().enumerate().all(|(k, f)| f.leq(tuples[x][k], tuples[y][k]))
    })?;
    let labels = tuples
        .iter()
        .map(|t| {
            if factors.len() == 1 {
                factors[0].label(t[0]).to_string()
            } else {
                let parts: Vec<&str> = t.iter().enumerate().map(|(k, &e)| factors[k].label(e)).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("x");
    let lattice = Arc::new(Lattice::from_poset(name, poset.with_labels(labels)?)?);
    let mut projections = Vec::new();
    let mut pad_bottom = Vec::new();
    let mut pad_top = Vec::new();
    for (b, fb) in factors.iter().enumerate() {
        projections.push(LatticeMap::from_fn(&lattice, fb, |x| tuples[x][b]));
        let pad = |fill_top: bool| {
            LatticeMap::from_fn(fb, &lattice, |e| {
                let t: Vec<Elem> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, fk)| {
                        if k == b {
                            e
                        } else if fill_top {
                            fk.top()
                        } else {
                            fk.bottom()
                        }
                    })
                    .collect();
                encode(factors, &t)
            })
        };
        pad_bottom.push(pad(false));
        pad_top.push(pad(true));
    }
    Ok(Product { lattice, factors: factors.to_vec(), projections, pad_bottom, pad_top })
}

/// Horizontal sum: interiors placed side by side between a shared bottom and top.
#[derive(Debug, Clone)]
pub struct HorizontalSum {
    pub lattice: LatticeRef,
    pub factors: Vec<LatticeRef>,
    /// `I_b : L_b -> sum`.
    pub inclusions: Vec<LatticeMap>,
    /// `sigma_b : sum -> L_b`, sending foreign elements to the top.
    pub sigma: Vec<LatticeMap>,
    /// `rho_b : sum -> L_b`, sending foreign elements to the bottom.
    pub rho: Vec<LatticeMap>,
}

pub fn horizontal_sum(factors: &[LatticeRef], limits: &Limits) -> Result<HorizontalSum> {
    if factors.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(index) = factors.iter().position(|f| f.size() < 2) {
        return Err(Error::FactorTooSmall { index });
    }
    // origin[x] = Some((factor, element)) for interior elements
    let mut origin: Vec<Option<(usize, Elem)>> = vec![None];
    for (k, f) in factors.iter().enumerate() {
        for e in f.elements() {
            if e != f.bottom() && e != f.top() {
                origin.push(Some((k, e)));
            }
        }
    }
    origin.push(None);
    let size = origin.len();
    limits.check_lattice("horizontal sum", size)?;
    let top = size - 1;
    let poset = FinitePoset::from_relation(size, |x, y| {
        if x == 0 || y == top {
            return true;
        }
        match (origin[x], origin[y]) {
            (Some((kx, ex)), Some((ky, ey))) => kx == ky && factors[kx].leq(ex, ey),
            _ => false,
        }
    })?;
    let labels = origin
        .iter()
        .enumerate()
        .map(|(x, o)| match o {
            Some((k, e)) => format!("L{}:{}", k + 1, factors[*k].label(*e)),
            None if x == 0 => "0".to_string(),
            None => "1".to_string(),
        })
        .collect();
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("+");
    let lattice = Arc::new(Lattice::from_poset(name, poset.with_labels(labels)?)?);
    let mut inclusions = Vec::new();
    let mut sigma = Vec::new();
    let mut rho = Vec::new();
    for (b, fb) in factors.iter().enumerate() {
        inclusions.push(LatticeMap::from_fn(fb, &lattice, |e| {
            if e == fb.bottom() {
                0
            } else if e == fb.top() {
                top
            } else {
                origin.iter().position(|o| *o == Some((b, e))).expect("interior element")
            }
        }));
        let back = |foreign: Elem| {
            LatticeMap::from_fn(&lattice, fb, |x| {
                if x == 0 {
                    fb.bottom()
                } else if x == top {
                    fb.top()
                } else {
                    match origin[x] {
                        Some((k, e)) if k == b => e,
                        _ => foreign,
                    }
                }
            })
        };
        sigma.push(back(fb.top()));
        rho.push(back(fb.bottom()));
    }
    Ok(HorizontalSum { lattice, factors: factors.to_vec(), inclusions, sigma, rho })
}

/// `L^u`: `L` with a new universal top adjoined strictly above the old one.
/// The new top is the reserved index `base.size()`; old indices are kept.
#[derive(Debug, Clone)]
pub struct UpperExtension {
    pub lattice: LatticeRef,
    pub base: LatticeRef,
    pub new_top: Elem,
}

impl UpperExtension {
    /// The old top, now a coatom.
    pub fn old_top(&self) -> Elem {
        self.base.top()
    }
}

pub fn upper_extension(l: &LatticeRef) -> UpperExtension {
    let n = l.size();
    let poset = FinitePoset::from_relation(n + 1, |x, y| y == n || (x < n && y < n && l.leq(x, y)))
        .expect("extension of a partial order");
    let mut labels: Vec<String> = l.labels().to_vec();
    let mut top_label = format!("{}^u", l.label(l.top()));
    while labels.contains(&top_label) {
        top_label.push('\'');
    }
    labels.push(top_label);
    let lattice = Lattice::from_poset(format!("{}^u", l.name()), poset.with_labels(labels).expect("label count"))
        .expect("adjoining a top to a lattice yields a lattice");
    UpperExtension { lattice: Arc::new(lattice), base: l.clone(), new_top: n }
}

/// Random Moore family on `n_points` points, closed under intersection and
/// containing the full set, ordered by inclusion. Deterministic in `seed`.
pub fn random_moore_lattice(seed: u64, n_points: usize, n_generators: usize, limits: &Limits) -> Result<Lattice> {
    if n_points > 20 {
        return Err(Error::SizeLimit { what: "Moore point set".into(), size: n_points as u128, limit: 20 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: u64 = if n_points == 0 { 0 } else { (1u64 << n_points) - 1 };
    let mut family: BTreeSet<u64> = BTreeSet::new();
    family.insert(full);
    for _ in 0..n_generators {
        let g: u64 = rng.gen::<u64>() & full;
        family.insert(g);
    }
    loop {
        let current: Vec<u64> = family.iter().copied().collect();
        let before = family.len();
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                family.insert(a & b);
            }
        }
        if family.len() == before {
            break;
        }
        limits.check_lattice("Moore family", family.len())?;
    }
    limits.check_lattice("Moore family", family.len())?;
    let mut sets: Vec<u64> = family.into_iter().collect();
    sets.sort_by_key(|m| (m.count_ones(), *m));
    let poset = FinitePoset::from_relation(sets.len(), |i, j| sets[i] & !sets[j] == 0)?
        .with_labels(sets.iter().map(|&m| mask_label(m, n_points)).collect())?;
    Lattice::from_poset(format!("Moore{seed}"), poset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::find_isomorphism;
    use crate::maps::check_adjunction;

    fn r(l: Lattice) -> LatticeRef {
        Arc::new(l)
    }

    #[test]
    fn interval_of_top_and_bottom() {
        let b8 = r(Lattice::powerset(3));
        let whole = lower_interval(&b8, b8.top());
        assert_eq!(whole.lattice.size(), 8);
        assert!(whole.embed.values().iter().enumerate().all(|(i, &v)| i == v));
        let point = lower_interval(&b8, b8.bottom());
        assert_eq!(point.lattice.size(), 1);
    }

    #[test]
    fn interval_below_two_atoms_is_boolean_four() {
        let b8 = r(Lattice::powerset(3));
        let iv = lower_interval(&b8, 0b011);
        assert_eq!(iv.lattice.size(), 4);
        assert!(find_isomorphism(&iv.lattice, &Lattice::powerset(2)).is_some());
        let round = iv.project.compose_after(&iv.embed).unwrap();
        assert!(round.is_identity());
    }

    #[test]
    fn product_of_two_chains_is_boolean() {
        let c2 = r(Lattice::chain(2));
        let p = direct_product(&[c2.clone(), c2.clone()], &Limits::default()).unwrap();
        assert!(find_isomorphism(&p.lattice, &Lattice::powerset(2)).is_some());
        assert_eq!(p.lattice.label(1), "(0,1)");
    }

    #[test]
    fn single_factor_product_is_identity() {
        let c3 = r(Lattice::chain(3));
        let p = direct_product(std::slice::from_ref(&c3), &Limits::default()).unwrap();
        assert_eq!(*p.lattice, *c3);
        for m in [&p.projections[0], &p.pad_bottom[0], &p.pad_top[0]] {
            assert!(m.values().iter().enumerate().all(|(i, &v)| i == v));
        }
    }

    #[test]
    fn product_adjunction_chain() {
        let c2 = r(Lattice::chain(2));
        let c3 = r(Lattice::chain(3));
        let p = direct_product(&[c2, c3], &Limits::default()).unwrap();
        for b in 0..2 {
            assert!(check_adjunction(&p.pad_bottom[b], &p.projections[b]).unwrap());
            assert!(check_adjunction(&p.projections[b], &p.pad_top[b]).unwrap());
        }
    }

    #[test]
    fn product_size_limit() {
        let c5 = r(Lattice::chain(5));
        let limits = Limits::default().with_max_lattice(20);
        assert!(matches!(direct_product(&[c5.clone(), c5], &limits), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn horizontal_sum_of_three_chains_is_diamond() {
        let c3 = r(Lattice::chain(3));
        let hs = horizontal_sum(&[c3.clone(), c3.clone()], &Limits::default()).unwrap();
        assert_eq!(hs.lattice.size(), 4);
        assert_eq!(hs.lattice.atoms().len(), 2);
        assert!(check_adjunction(&hs.sigma[0], &hs.inclusions[0]).unwrap());
        assert!(check_adjunction(&hs.inclusions[0], &hs.rho[0]).unwrap());
    }

    #[test]
    fn horizontal_sum_of_two_element_chains_collapses() {
        let c2 = r(Lattice::chain(2));
        let hs = horizontal_sum(&[c2.clone(), c2], &Limits::default()).unwrap();
        assert_eq!(hs.lattice.size(), 2);
    }

    #[test]
    fn horizontal_sum_rejects_one_element_factor() {
        let c1 = r(Lattice::chain(1));
        let c3 = r(Lattice::chain(3));
        assert_eq!(
            horizontal_sum(&[c3, c1], &Limits::default()).unwrap_err(),
            Error::FactorTooSmall { index: 1 }
        );
    }

    #[test]
    fn upper_extension_adjoins_a_coatom_top() {
        let c2 = r(Lattice::chain(2));
        let u = upper_extension(&c2);
        assert!(find_isomorphism(&u.lattice, &Lattice::chain(3)).is_some());
        let d4 = r(Lattice::powerset(2));
        let u = upper_extension(&d4);
        assert_eq!(u.lattice.size(), 5);
        assert_eq!(u.lattice.top(), 4);
        assert_eq!(u.lattice.lower_covers(4), vec![d4.top()]);
        assert_eq!(u.lattice.join(1, 2), 3);
    }

    #[test]
    fn moore_lattice_is_deterministic() {
        let lim = Limits::default();
        let a = random_moore_lattice(7, 3, 3, &lim).unwrap();
        let b = random_moore_lattice(7, 3, 3, &lim).unwrap();
        assert_eq!(a, b);
        assert!(a.size() <= 8);
        a.verify_tables().unwrap();
        let trivial = random_moore_lattice(7, 3, 0, &lim).unwrap();
        assert_eq!(trivial.size(), 1);
    }
}
