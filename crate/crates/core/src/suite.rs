//! The proposition sweep: every law checked over every applicable object of a
//! workspace, one report per (proposition, object).

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{
    atomic_criterion_via_right_adjoint, boolean_duality, boolean_representation, compose_continuous, functor_l, functor_l_map, is_atomic_map,
    lattice_roundtrip, monad_from_adjunction, phi_natural, power_functors, psi_natural, space_roundtrip, PartialContinuousMap,
};
use crate::error::{Error, Result};
use crate::format::{Expectation, Workspace};
use crate::lattice::{direct_product, Elem, LatticeRef, Limits};
use crate::maps::{
    check_adjunction, classify_morphism, compose, dualize, hom_set, left_adjoint, right_adjoint, special_maps, undualize, HomClass,
    LatticeMap, MorphismClass,
};
use crate::oracle;
use crate::ortho::{biortho_lattice, colatt_check, dagger, is_isometry, is_ortho_preserving, OrthoLattice};
use crate::state::{build_ortho_system, build_system, causal_to_map, center, classical_decomposition, close_relation, observable_spectrum, relation_of};
use crate::transition::{
    all_union_maps, coherence_check, hom_count, incoherent_instance, is_based, is_strongly_isotone, power_map, resolution, strictness_witness,
    unbased_instance, underlying_map, Category, UnionMap,
};
use crate::weak::{partial_to_upper, pointed_extend, restrict_codomain, upper_right_adjoint, upper_to_partial, weak_meet_maps, PartialJoinMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub prop: String,
    pub object: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
}

/// Proposition ids with a one-line description, in sweep order.
pub const PROPOSITIONS: &[(&str, &str)] = &[
    ("2.1", "lattice tables are least upper and greatest lower bounds"),
    ("3.1", "adjoint laws: f -| f*, f* preserves meets, f f* f = f, f* f f* = f*"),
    ("3.2", "declared maps: preservation profile and adjoints"),
    ("3.3", "duality: dualize is invertible, antitone on Hom-orders and contravariant"),
    ("3.4", "dagger: involution, antihomomorphism, zero law, isometry criteria agree"),
    ("4.1", "special morphisms alpha_a, C^a, i_a, pi_a and their adjoints"),
    ("4.2", "epi/mono classification against the categorical oracle"),
    ("4.3", "product universal property"),
    ("4.4", "weak adjunctions: partial, weak meet and upper maps correspond"),
    ("5.1", "closure monads: fixed points of g f are the image of g"),
    ("5.2", "closure spaces and atomistic lattices: roundtrips and naturality"),
    ("5.3", "power functors and Boolean duality"),
    ("6.1", "coherence: fast check, exhaustive check and reconstruction agree"),
    ("6.2", "hierarchy PS <= BS <= TS <= FS: counts, inclusions and strictness"),
    ("7.1", "state-property systems, center and classical decomposition"),
    ("7.2", "observable spectra"),
    ("7.3", "causal relations and weak meet maps"),
    ("corpus", "recorded facts about corpus objects"),
];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Only propositions whose id starts with this prefix.
    pub filter: Option<String>,
    pub limits: Limits,
    pub seed: u64,
    /// Largest lattice used by pairwise (Hom-set) checks.
    pub pair_size: usize,
    /// Largest lattice used by single-object exhaustive checks.
    pub single_size: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { filter: None, limits: Limits::default(), seed: 0, pair_size: 4, single_size: 8 }
    }
}

type Outcome = Result<Option<String>>;
type Check = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Job {
    prop: &'static str,
    object: String,
    origin: Option<String>,
    run: Check,
}

fn fail(msg: impl Into<String>) -> Outcome {
    Ok(Some(msg.into()))
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return fail(format!($($msg)+));
        }
    };
}

fn pass() -> Outcome {
    Ok(None)
}

/// Runs every selected job in parallel; reports are sorted by (prop, object).
pub fn run_suite(ws: &Workspace, opts: &SuiteOptions) -> Vec<Report> {
    let jobs: Vec<Job> = build_jobs(ws, opts)
        .into_iter()
        .filter(|j| opts.filter.as_deref().is_none_or(|f| j.prop.starts_with(f)))
        .collect();
    let mut reports: Vec<Report> = jobs
        .par_iter()
        .map(|job| {
            let start = Instant::now();
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (job.run)()))
                .unwrap_or_else(|p| Ok(Some(format!("panicked: {}", panic_message(&p)))));
            let witness = match outcome {
                Ok(None) => None,
                Ok(Some(w)) => Some(w),
                Err(e) => Some(e.to_string()),
            };
            let witness = witness.map(|w| match &job.origin {
                Some(o) => format!("{o}: {w}"),
                None => w,
            });
            Report {
                prop: job.prop.to_string(),
                object: job.object.clone(),
                status: if witness.is_some() { Status::Fail } else { Status::Pass },
                witness,
                millis: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    reports.sort_by(|a, b| (&a.prop, &a.object).cmp(&(&b.prop, &b.object)));
    reports
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn build_jobs(ws: &Workspace, opts: &SuiteOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    let lim = opts.limits;
    let origin = |name: &str| ws.origins.get(name).cloned();
    let small: Vec<LatticeRef> = ws.lattices.values().filter(|l| l.size() <= opts.pair_size).cloned().collect();
    let tiny: Vec<LatticeRef> = ws.lattices.values().filter(|l| l.size() <= 3).cloned().collect();
    let mut push = |prop: &'static str, object: String, origin: Option<String>, run: Check| jobs.push(Job { prop, object, origin, run });

    for (name, l) in &ws.lattices {
        let l = l.clone();
        push("2.1", name.clone(), origin(name), Box::new(move || l.verify_tables().map(|_| None)));
        let single = ws.lattices[name].size() <= opts.single_size;
        if single {
            let (l, lim2) = (ws.lattices[name].clone(), lim);
            push("4.1", name.clone(), origin(name), Box::new(move || check_special(&l, &lim2)));
            let (l, lim2) = (ws.lattices[name].clone(), lim);
            push("6.1", name.clone(), origin(name), Box::new(move || check_resolution(&l, &lim2)));
            if ws.lattices[name].is_atomistic() {
                let l = ws.lattices[name].clone();
                push("5.2", name.clone(), origin(name), Box::new(move || check_lattice_roundtrip(&l)));
            }
        }
        if ws.lattices[name].size() <= 5 {
            let (l, lim2) = (ws.lattices[name].clone(), lim);
            push("5.1", name.clone(), origin(name), Box::new(move || check_closure_monads(&l, &lim2)));
            let (l, lim2) = (ws.lattices[name].clone(), lim);
            push("6.2", name.clone(), origin(name), Box::new(move || check_counts_with_two(&l, &lim2)));
        }
        if ws.lattices[name].is_atomistic() && ws.lattices[name].size() <= 16 {
            let l = ws.lattices[name].clone();
            push("7.1", name.clone(), origin(name), Box::new(move || build_system(&l).map(|_| None)));
        }
        if ws.lattices[name].boolean_complement().is_ok() && ws.lattices[name].size() <= 16 {
            let l = ws.lattices[name].clone();
            push("5.3", name.clone(), origin(name), Box::new(move || check_boolean_representation(&l)));
        }
    }

    for a in &small {
        for b in &small {
            let object = format!("{}->{}", a.name(), b.name());
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("3.1", object.clone(), None, Box::new(move || check_adjoint_laws(&x, &y, &lim2)));
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("3.3", object.clone(), None, Box::new(move || check_duality(&x, &y, &lim2)));
            let (x, y, tests, lim2) = (a.clone(), b.clone(), small.clone(), lim);
            push("4.2", object.clone(), None, Box::new(move || check_classification(&x, &y, &tests, &lim2)));
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("4.4", object.clone(), None, Box::new(move || check_weak(&x, &y, &lim2)));
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("6.1", object.clone(), None, Box::new(move || check_coherence_oracles(&x, &y, &lim2)));
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("6.2", object.clone(), None, Box::new(move || check_hierarchy(&x, &y, &lim2)));
            let (x, y, seed) = (a.clone(), b.clone(), opts.seed);
            push("7.3", object, None, Box::new(move || check_generated_relations(&x, &y, seed)));
        }
        let (x, lim2) = (a.clone(), lim);
        push("6.2", format!("witnesses({})", a.name()), None, Box::new(move || check_witnesses(&x, &lim2)));
    }
    for a in &tiny {
        for b in &tiny {
            let (x, y, sources, lim2) = (a.clone(), b.clone(), small.clone(), lim);
            push("4.3", format!("{}x{}", a.name(), b.name()), None, Box::new(move || check_product(&x, &y, &sources, &lim2)));
        }
    }

    for (name, o) in &ws.ortho {
        if o.lattice().size() <= opts.single_size {
            let (o2, lim2) = (o.clone(), lim);
            push("3.4", name.clone(), origin(name), Box::new(move || check_dagger(&o2, &lim2)));
        }
        let o2 = o.clone();
        push("7.1", format!("{name}(ortho)"), origin(name), Box::new(move || check_state(&o2)));
        if o.lattice().boolean_complement().is_ok() {
            let o2 = o.clone();
            push("7.2", name.clone(), origin(name), Box::new(move || check_identity_spectrum(&o2)));
        }
    }
    let boolean: Vec<LatticeRef> = ws.lattices.values().filter(|l| l.boolean_complement().is_ok() && l.size() <= 8).cloned().collect();
    for a in &boolean {
        for b in &boolean {
            let (x, y, lim2) = (a.clone(), b.clone(), lim);
            push("5.3", format!("{}->{}", a.name(), b.name()), None, Box::new(move || check_boolean_duality(&x, &y, &lim2)));
        }
    }
    push("5.3", "set-maps<=4".into(), None, Box::new(check_power_functors));

    for (name, m) in &ws.maps {
        let m2 = m.clone();
        push("3.2", name.clone(), origin(name), Box::new(move || check_declared_map(&m2)));
        let (d, c) = (m.dom().name().to_string(), m.cod().name().to_string());
        if let (Some(b), Some(l)) = (ws.ortho.get(&d), ws.ortho.get(&c)) {
            if b.lattice().boolean_complement().is_ok() && m.profile().joins && m.profile().meets && is_ortho_preserving(m, b, l) {
                let (m2, b2, l2) = (m.clone(), b.clone(), l.clone());
                push("7.2", name.clone(), origin(name), Box::new(move || observable_spectrum(&m2, &b2, &l2).map(|_| None)));
            }
        }
    }
    for (name, p) in &ws.partial_maps {
        let p2 = p.clone();
        push("4.4", name.clone(), origin(name), Box::new(move || check_partial(&p2)));
    }
    for (name, s) in &ws.cspaces {
        let s2 = s.clone();
        push("5.2", name.clone(), origin(name), Box::new(move || check_space(&s2)));
    }
    for (name, m) in &ws.space_maps {
        let m2 = m.clone();
        push("5.2", name.clone(), origin(name), Box::new(move || check_space_map(&m2)));
    }
    for (name, s) in &ws.ospaces {
        let s2 = s.clone();
        push("5.2", name.clone(), origin(name), Box::new(move || biortho_lattice(&s2).map(|b| (!b.ortho.is_atomistic()).then(|| "not atomistic".into()))));
    }
    for (name, t) in &ws.umaps {
        let (t2, lim2) = (t.clone(), lim);
        push("6.1", name.clone(), origin(name), Box::new(move || check_umap(&t2, &lim2)));
    }
    for (name, r) in &ws.causal {
        let r2 = r.clone();
        push(
            "7.3",
            name.clone(),
            origin(name),
            Box::new(move || {
                let g = causal_to_map(&r2)?;
                Ok((relation_of(&g)? != r2).then(|| "relation of g differs from the relation".into()))
            }),
        );
    }
    let mut by_object: std::collections::BTreeMap<&str, Vec<Expectation>> = std::collections::BTreeMap::new();
    for e in &ws.expectations {
        by_object.entry(e.object.as_str()).or_default().push(e.clone());
    }
    for (object, exps) in by_object {
        let ws2 = Arc::new(ws.clone());
        let obj = object.to_string();
        let origin = ws.origins.get(object).cloned();
        push("corpus", object.to_string(), origin, Box::new(move || check_expectations(&ws2, &obj, &exps)));
    }
    jobs
}

fn check_adjoint_laws(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    let meets = hom_set(b, a, HomClass::Meet, lim)?;
    for f in hom_set(a, b, HomClass::Join, lim)? {
        let g = right_adjoint(&f)?;
        ensure!(check_adjunction(&f, &g)?, "{f:?} is not left adjoint to its right adjoint");
        ensure!(g.profile().meets, "{g:?} does not preserve meets");
        ensure!(compose(&f, &compose(&g, &f)?)? == f, "f f* f != f for {f:?}");
        ensure!(compose(&g, &compose(&f, &g)?)? == g, "f* f f* != f* for {f:?}");
        let partners = meets.iter().filter(|h| check_adjunction(&f, h).unwrap_or(false)).count();
        ensure!(partners == 1, "{f:?} has {partners} right adjoints among meet maps");
        ensure!(f.profile().balanced == g.profile().meet_dense, "balanced f vs dense f* disagree for {f:?}");
        ensure!(f.profile().dense == g.profile().meet_balanced, "dense f vs balanced f* disagree for {f:?}");
        let iso = f.is_injective() && f.is_surjective();
        let two_sided = check_adjunction(&f, &g)? && g.profile().joins && check_adjunction(&g, &f)?;
        ensure!(iso == two_sided, "isomorphism criterion disagrees for {f:?}");
    }
    pass()
}

fn check_duality(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    let fs = hom_set(a, b, HomClass::Join, lim)?;
    let gs: Vec<LatticeMap> = fs.iter().map(dualize).collect::<Result<_>>()?;
    for (f, g) in fs.iter().zip(&gs) {
        ensure!(undualize(g)? == *f, "undualize(dualize f) != f for {f:?}");
    }
    for (i, f) in fs.iter().enumerate() {
        for (j, h) in fs.iter().enumerate() {
            ensure!(f.pointwise_leq(h) == gs[j].pointwise_leq(&gs[i]), "Hom-order not reversed for {f:?} and {h:?}");
        }
    }
    let back = hom_set(b, a, HomClass::Join, lim)?;
    for f1 in &fs {
        for f2 in &back {
            let lhs = right_adjoint(&compose(f2, f1)?)?;
            let rhs = compose(&right_adjoint(f1)?, &right_adjoint(f2)?)?;
            ensure!(lhs == rhs, "(f2 f1)* != f1* f2* for {f1:?}, {f2:?}");
        }
    }
    pass()
}

fn check_special(l: &LatticeRef, lim: &Limits) -> Outcome {
    let two = crate::maps::two();
    ensure!(hom_set(&two, l, HomClass::Join, lim)?.len() == l.size(), "join maps 2 -> L are not in bijection with L");
    ensure!(hom_set(l, &two, HomClass::Join, lim)?.len() == l.size(), "join maps L -> 2 are not in bijection with L");
    for a in l.elements() {
        let s = special_maps(l, a);
        ensure!(right_adjoint(&s.alpha_lower)? == s.c_upper, "alpha_{0}* != C^{0}", l.label(a));
        ensure!(check_adjunction(&s.c_lower, &s.alpha_upper)?, "C_{0} is not left adjoint to alpha^{0}", l.label(a));
        ensure!(check_adjunction(&s.embed, &s.project)?, "i_{0} is not left adjoint to pi_{0}", l.label(a));
        ensure!(check_adjunction(&s.project_hat, &s.embed_hat)?, "pi^_{0} is not left adjoint to i^_{0}", l.label(a));
        ensure!(compose(&s.project, &s.embed)?.is_identity(), "pi_{0} i_{0} != id", l.label(a));
    }
    pass()
}

fn check_classification(a: &LatticeRef, b: &LatticeRef, tests: &[LatticeRef], lim: &Limits) -> Outcome {
    for f in hom_set(a, b, HomClass::Join, lim)? {
        let flags = classify_morphism(&f, MorphismClass::Join, lim)?;
        let g = right_adjoint(&f)?;
        let epi = oracle::categorical_epi(&f, tests, lim)?;
        let mono = oracle::categorical_mono(&f, tests, lim)?;
        let epi_forms = [flags.epic, flags.surjective, compose(&f, &g)?.is_identity(), g.is_injective(), epi];
        ensure!(epi_forms.iter().all(|&x| x == epi), "epi criteria disagree for {f:?}: {epi_forms:?}");
        let mono_forms = [flags.monic, flags.injective, compose(&g, &f)?.is_identity(), g.is_surjective(), mono];
        ensure!(mono_forms.iter().all(|&x| x == mono), "mono criteria disagree for {f:?}: {mono_forms:?}");
    }
    pass()
}

fn check_product(a: &LatticeRef, b: &LatticeRef, sources: &[LatticeRef], lim: &Limits) -> Outcome {
    let p = direct_product(&[a.clone(), b.clone()], lim)?;
    for m in sources {
        let to_p = hom_set(m, &p.lattice, HomClass::Join, lim)?;
        for f1 in hom_set(m, a, HomClass::Join, lim)? {
            for f2 in hom_set(m, b, HomClass::Join, lim)? {
                let mediating = to_p
                    .iter()
                    .filter(|h| compose(&p.projections[0], h).is_ok_and(|x| x == f1) && compose(&p.projections[1], h).is_ok_and(|x| x == f2))
                    .count();
                ensure!(mediating == 1, "{mediating} mediating maps from {} for {f1:?}, {f2:?}", m.name());
            }
        }
    }
    pass()
}

fn check_weak(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    // weak meet maps b -> a against partial join maps a -> b
    for g in weak_meet_maps(b, a, lim)? {
        let alpha = restrict_codomain(&g)?.alpha;
        let ext = pointed_extend(&g)?;
        let f = partial_to_upper(&alpha)?;
        ensure!(f == ext.upper, "F_alpha differs from the pointed extension for {:?}", g.map());
        ensure!(upper_to_partial(&f)? == alpha, "alpha_(F_alpha) != alpha for {:?}", g.map());
        ensure!(upper_right_adjoint(&alpha)? == ext.extended, "G_alpha != g^u for {:?}", g.map());
        check_partial(&alpha)?.map_or(Ok(()), |w| Err(Error::NotAdjoint(w)))?;
    }
    pass()
}

fn check_partial(alpha: &PartialJoinMap) -> Outcome {
    let f = partial_to_upper(alpha)?;
    ensure!(upper_to_partial(&f)? == *alpha, "alpha_(F_alpha) != alpha");
    let g = upper_right_adjoint(alpha)?;
    ensure!(check_adjunction(f.map(), &g)?, "F_alpha is not left adjoint to G_alpha");
    let id = PartialJoinMap::total(&LatticeMap::identity(alpha.target()))?;
    ensure!(crate::weak::compose_partial(&id, alpha)? == *alpha, "identity does not compose neutrally");
    pass()
}

fn check_closure_monads(l: &LatticeRef, lim: &Limits) -> Outcome {
    for f in hom_set(l, l, HomClass::Join, lim)? {
        let g = right_adjoint(&f)?;
        let m = monad_from_adjunction(&f, &g)?;
        ensure!(m.matches, "fixed points of g f differ from the image of g for {f:?}");
    }
    pass()
}

fn check_lattice_roundtrip(l: &LatticeRef) -> Outcome {
    let r = lattice_roundtrip(l)?;
    ensure!(r.isomorphism, "psi is not an isomorphism on {}", l.name());
    if l.size() <= 5 {
        for f in hom_set(l, l, HomClass::AtomicJoin, &Limits::default())? {
            ensure!(psi_natural(&f)?, "psi is not natural at {f:?}");
        }
        for f in hom_set(l, l, HomClass::Join, &Limits::default())? {
            ensure!(is_atomic_map(&f) == atomic_criterion_via_right_adjoint(&f)?, "atomic criteria disagree for {f:?}");
        }
    }
    pass()
}

fn check_space(s: &crate::closure::ClosureSpace) -> Outcome {
    let r = space_roundtrip(s)?;
    ensure!(r.bijective && r.inverse_continuous, "phi is not a homeomorphism on {}", s.name());
    let id = PartialContinuousMap::identity(s);
    ensure!(phi_natural(&id)?, "phi is not natural at the identity");
    ensure!(functor_l(s)?.lattice.is_atomistic(), "L(S) is not atomistic");
    pass()
}

fn check_space_map(m: &PartialContinuousMap) -> Outcome {
    ensure!(m.is_continuous(), "map is not continuous");
    let lm = functor_l_map(m)?;
    ensure!(is_atomic_map(&lm.f), "L(alpha) is not atomic");
    ensure!(phi_natural(m)?, "phi is not natural");
    let id = PartialContinuousMap::identity(m.target());
    ensure!(compose_continuous(&id, m)?.values() == m.values(), "identity does not compose neutrally");
    pass()
}

fn check_boolean_representation(l: &LatticeRef) -> Outcome {
    let r = boolean_representation(l)?;
    ensure!(compose(&r.rho, &r.mu)?.is_identity() && compose(&r.mu, &r.rho)?.is_identity(), "mu and rho are not inverse");
    ensure!(check_adjunction(&r.mu, &r.rho)?, "mu is not left adjoint to rho");
    pass()
}

fn check_boolean_duality(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    for f in hom_set(a, b, HomClass::Join, lim)? {
        let g = right_adjoint(&f)?;
        let r = boolean_duality(&f, &g)?;
        ensure!(r.mu_rho_adjoint && r.mutually_inverse, "Boolean representation fails for {f:?}");
        ensure!(r.atoms_to_atoms == r.right_adjoint_preserves_complement, "atoms-to-atoms vs complement criterion for {f:?}");
    }
    pass()
}

fn check_power_functors() -> Outcome {
    for n in 0..=4usize {
        for m in 0..=4usize {
            let total = (m as u64).pow(n as u32);
            for code in 0..total {
                let alpha: Vec<usize> = (0..n).map(|i| (code / (m as u64).pow(i as u32) % m as u64) as usize).collect();
                let p = power_functors(&alpha, m)?;
                let injective = (0..n).all(|i| (0..i).all(|j| alpha[i] != alpha[j]));
                let surjective = (0..m).all(|y| alpha.contains(&y));
                ensure!(compose(&p.inverse, &p.direct)?.is_identity() == injective, "injectivity criterion fails for {alpha:?}");
                ensure!(compose(&p.direct, &p.inverse)?.is_identity() == surjective, "surjectivity criterion fails for {alpha:?}");
            }
        }
    }
    pass()
}

fn check_dagger(o: &OrthoLattice, lim: &Limits) -> Outcome {
    let l = o.lattice();
    let maps = hom_set(l, l, HomClass::Join, lim)?;
    let zero = LatticeMap::constant(l, l, l.bottom());
    ensure!(dagger(&zero, o, o)? == zero, "0^dagger != 0");
    for f in &maps {
        let fd = dagger(f, o, o)?;
        ensure!(dagger(&fd, o, o)? == *f, "f^dagger^dagger != f for {f:?}");
        is_isometry(f, o, o)?;
    }
    if maps.len() <= 64 {
        for f in &maps {
            for g in &maps {
                let lhs = dagger(&compose(g, f)?, o, o)?;
                let rhs = compose(&dagger(f, o, o)?, &dagger(g, o, o)?)?;
                ensure!(lhs == rhs, "(g f)^dagger != f^dagger g^dagger for {f:?}, {g:?}");
            }
        }
    }
    let id = LatticeMap::identity(l);
    ensure!(colatt_check(&id, o, o)?.passed, "identity fails the COLatt check");
    pass()
}

fn check_resolution(l: &LatticeRef, lim: &Limits) -> Outcome {
    if l.size() > 9 {
        return pass();
    }
    let r = resolution(l, lim)?;
    for a in l.elements() {
        ensure!(r.join[r.down[a] as usize] == a, "J(l({})) != {}", l.label(a), l.label(a));
    }
    pass()
}

fn check_coherence_oracles(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    if a.size() > 4 || b.size() > 4 {
        return pass();
    }
    let isotone = hom_set(a, b, HomClass::Isotone, lim)?;
    for theta in all_union_maps(a, b, lim)? {
        for f in &isotone {
            ensure!(coherence_check(f, &theta)? == oracle::coherent_exhaustive(f, &theta), "coherence checks disagree on {f:?}, {theta:?}");
        }
        ensure!(underlying_map(&theta).ok() == oracle::coherent_map_search(&theta), "reconstruction disagrees with search on {theta:?}");
    }
    pass()
}

fn check_counts_with_two(l: &LatticeRef, lim: &Limits) -> Outcome {
    let two = crate::maps::two();
    let n = l.size() as u128;
    let half = 1u128 << (l.size() - 1);
    let got = [
        hom_count(Category::PS, &two, l, lim)?,
        hom_count(Category::BS, &two, l, lim)?,
        hom_count(Category::TS, &two, l, lim)?,
        hom_count(Category::FS, &two, l, lim)?,
        hom_count(Category::PS, l, &two, lim)?,
        hom_count(Category::BS, l, &two, lim)?,
        hom_count(Category::TS, l, &two, lim)?,
        hom_count(Category::FS, l, &two, lim)?,
    ];
    let want = [n, half, half, half, n, n, n, half];
    ensure!(got == want, "counts {got:?}, expected {want:?}");
    pass()
}

fn check_hierarchy(a: &LatticeRef, b: &LatticeRef, lim: &Limits) -> Outcome {
    if a.size() > 4 || b.size() > 4 {
        return pass();
    }
    let ps = hom_count(Category::PS, a, b, lim)?;
    let bs = hom_count(Category::BS, a, b, lim)?;
    let ts = hom_count(Category::TS, a, b, lim)?;
    let fs = hom_count(Category::FS, a, b, lim)?;
    ensure!(ps <= bs && bs <= ts && ts <= fs, "counts not nested: {ps} {bs} {ts} {fs}");
    let all = all_union_maps(a, b, lim)?;
    ensure!(all.len() as u128 == fs, "FS count {fs} but {} union maps", all.len());
    let mut counted = (0u128, 0u128);
    for t in &all {
        let strong = is_strongly_isotone(t);
        let based = is_based(t, lim)?;
        ensure!(!based || strong, "based but not strongly isotone: {t:?}");
        counted.0 += based as u128;
        counted.1 += strong as u128;
    }
    ensure!(counted == (bs, ts), "enumerated (BS, TS) = {counted:?}, counted ({bs}, {ts})");
    for f in hom_set(a, b, HomClass::Join, lim)? {
        ensure!(is_based(&power_map(&f, lim)?, lim)?, "power map of {f:?} is not based");
    }
    ensure!((bs < ts) == unbased_instance(a, b, lim)?.is_some(), "BS/TS gap and instance search disagree");
    ensure!((ts < fs) == incoherent_instance(a, b, lim)?.is_some(), "TS/FS gap and instance search disagree");
    pass()
}

fn check_witnesses(l: &LatticeRef, lim: &Limits) -> Outcome {
    let id = LatticeMap::identity(l);
    for a in l.elements().filter(|&a| a != l.bottom()) {
        let theta = strictness_witness(l, a, lim)?;
        ensure!(coherence_check(&id, &theta)?, "witness for {} is not coherent with id", l.label(a));
        ensure!(is_based(&theta, lim)? == oracle::based_by_unions(&theta, lim)?, "is_based disagrees with the union oracle for {}", l.label(a));
    }
    pass()
}

fn check_umap(theta: &UnionMap, lim: &Limits) -> Outcome {
    let found = oracle::coherent_map_search(theta);
    ensure!(underlying_map(theta).ok() == found, "reconstruction disagrees with search");
    if let Some(f) = found {
        ensure!(coherence_check(&f, theta)?, "reconstructed map is not coherent");
    }
    ensure!(is_based(theta, lim)? == oracle::based_by_unions(theta, lim)?, "is_based disagrees with the union oracle");
    pass()
}

fn check_state(o: &OrthoLattice) -> Outcome {
    if o.is_atomistic() {
        build_ortho_system(o)?;
    }
    let l = o.lattice();
    let c = center(o)?;
    for &z in &c {
        ensure!(c.contains(&o.perp(z)), "{}' is not central", l.label(z));
        for &y in &c {
            ensure!(c.contains(&l.join(z, y)) && c.contains(&l.meet(z, y)), "center is not a sublattice at {}, {}", l.label(z), l.label(y));
        }
    }
    classical_decomposition(o, &Limits::default())?;
    pass()
}

fn check_identity_spectrum(o: &OrthoLattice) -> Outcome {
    let id = LatticeMap::identity(o.lattice());
    let s = observable_spectrum(&id, o, o)?;
    let l = o.lattice();
    ensure!(s.null == l.bottom() && s.discrete == l.top() && s.continuous == l.bottom(), "identity spectrum is not (0, 1, 0)");
    pass()
}

fn check_declared_map(m: &LatticeMap) -> Outcome {
    let p = m.profile();
    ensure!(p.joins == oracle::preserves_all_joins(m) || m.dom().size() > 16, "join profile disagrees with the all-subsets check");
    if p.joins {
        let g = right_adjoint(m)?;
        ensure!(check_adjunction(m, &g)?, "map is not left adjoint to its right adjoint");
    }
    if p.meets {
        let f = left_adjoint(m)?;
        ensure!(check_adjunction(&f, m)?, "left adjoint fails");
    }
    pass()
}

fn check_generated_relations(a: &LatticeRef, b: &LatticeRef, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (a.size() as u64) << 8 ^ b.size() as u64);
    for _ in 0..4 {
        let seeds: Vec<(Elem, Elem)> = (0..rng.gen_range(0..3)).map(|_| (rng.gen_range(0..a.size()), rng.gen_range(0..b.size()))).collect();
        let r = close_relation(a, b, &seeds)?;
        let g = causal_to_map(&r)?;
        ensure!(relation_of(&g)? == r, "relation generated from {seeds:?} does not roundtrip");
        ensure!(g.map().profile().nonempty_meets, "assigned map does not preserve non-empty meets");
    }
    pass()
}

/// The value recorded under `key` for `object`, computed afresh.
pub fn fact(ws: &Workspace, object: &str, key: &str) -> Result<String> {
    let lim = Limits::default();
    let unknown = || Error::Unresolved(format!("no fact `{key}` for {object}"));
    if let Some(l) = ws.lattices.get(object) {
        return Ok(match key {
            "size" => l.size().to_string(),
            "atoms" => l.atoms().len().to_string(),
            "atomistic" => l.is_atomistic().to_string(),
            "distributive" => l.is_distributive().to_string(),
            "boolean" => l.boolean_complement().is_ok().to_string(),
            "height" => height(l).to_string(),
            "join_endomaps" => hom_set(l, l, HomClass::Join, &lim)?.len().to_string(),
            "center" => center(ws.ortho.get(object).ok_or_else(unknown)?)?.len().to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(m) = ws.maps.get(object) {
        let p = m.profile();
        return Ok(match key {
            "joins" => p.joins.to_string(),
            "meets" => p.meets.to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(t) = ws.umaps.get(object) {
        return Ok(match key {
            "strongly_isotone" => is_strongly_isotone(t).to_string(),
            "coherent" => underlying_map(t).is_ok().to_string(),
            "based" => is_based(t, &lim)?.to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(s) = ws.cspaces.get(object) {
        return Ok(match key {
            "closed" => s.closed_sets().len().to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(s) = ws.ospaces.get(object) {
        return Ok(match key {
            "biorthogonal" => biortho_lattice(s)?.ortho.lattice().size().to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(r) = ws.causal.get(object) {
        return Ok(match key {
            "pairs" => r.pairs().len().to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(p) = ws.partial_maps.get(object) {
        return Ok(match key {
            "anchor" => p.source().label(p.anchor()).to_string(),
            _ => return Err(unknown()),
        });
    }
    if let Some(m) = ws.space_maps.get(object) {
        return Ok(match key {
            "kernel" => m.kernel().count_ones().to_string(),
            _ => return Err(unknown()),
        });
    }
    Err(unknown())
}

fn height(l: &LatticeRef) -> usize {
    let mut h = vec![0usize; l.size()];
    let mut order: Vec<Elem> = l.elements().collect();
    order.sort_by_key(|&x| l.elements().filter(|&y| l.leq(y, x)).count());
    for &x in &order {
        h[x] = l.lower_covers(x).iter().map(|&y| h[y] + 1).max().unwrap_or(0);
    }
    h[l.top()]
}

fn check_expectations(ws: &Workspace, object: &str, exps: &[Expectation]) -> Outcome {
    let mut bad = Vec::new();
    for e in exps {
        let got = fact(ws, object, &e.key)?;
        if got != e.value {
            bad.push(format!("{object} has {}={got}, but {} line {} records {}", e.key, e.origin, e.line, e.value));
        }
    }
    Ok((!bad.is_empty()).then(|| bad.join("; ")))
}

/// The facts recorded for each object in the shipped corpus.
pub fn default_fact_keys(ws: &Workspace, object: &str) -> Vec<&'static str> {
    if let Some(l) = ws.lattices.get(object) {
        let mut keys = vec!["size", "atoms", "atomistic", "distributive", "boolean", "height"];
        if l.size() <= 6 {
            keys.push("join_endomaps");
        }
        if ws.ortho.contains_key(object) {
            keys.push("center");
        }
        return keys;
    }
    if ws.maps.contains_key(object) {
        return vec!["joins", "meets"];
    }
    if ws.umaps.contains_key(object) {
        return vec!["coherent", "strongly_isotone", "based"];
    }
    if ws.cspaces.contains_key(object) {
        return vec!["closed"];
    }
    if ws.ospaces.contains_key(object) {
        return vec!["biorthogonal"];
    }
    if ws.causal.contains_key(object) {
        return vec!["pairs"];
    }
    if ws.partial_maps.contains_key(object) {
        return vec!["anchor"];
    }
    if ws.space_maps.contains_key(object) {
        return vec!["kernel"];
    }
    Vec::new()
}

/// Loading already validated every object; this re-verifies lattice tables
/// and compares every recorded fact.
pub fn check_workspace(ws: &Workspace) -> Vec<Report> {
    let mut reports = Vec::new();
    let mut push = |object: &str, outcome: Outcome| {
        let witness = match outcome {
            Ok(w) => w,
            Err(e) => Some(e.to_string()),
        };
        let witness = witness.map(|w| match ws.origins.get(object) {
            Some(o) => format!("{o}: {w}"),
            None => w,
        });
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        reports.push(Report { prop: "check".into(), object: object.to_string(), status, witness, millis: 0 });
    };
    for object in ws.object_names() {
        let outcome = match ws.lattices.get(object) {
            Some(l) => l.verify_tables().map(|_| None),
            None => Ok(None),
        };
        let exps: Vec<Expectation> = ws.expectations.iter().filter(|e| &e.object == object).cloned().collect();
        let outcome = match outcome {
            Ok(None) => check_expectations(ws, object, &exps),
            other => other,
        };
        push(object, outcome);
    }
    reports
}

pub fn any_failed(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

/// One line per report: `PASS 6.2 D4 (12 ms)` or `FAIL ... : witness`.
pub fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = if r.status == Status::Pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {} {} ({} ms)", r.prop, r.object, r.millis));
        if let Some(w) = &r.witness {
            out.push_str(": ");
            out.push_str(w);
        }
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    out
}
