//! Named verification checks and Cayley-table export.
//!
//! Each check runs one suite at a given chain size and returns a [`CheckReport`]. A check fails
//! exactly when it produces a witness.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::category::{
    all_normal_cones, check_functor_isomorphism, cone_defect, cone_semigroup, cone_to_json,
    is_idempotent_cone, Category, Cone, ConeOf, FunctorCheckDepth,
};
use crate::chain::{
    enumerate_oxn, green, oxn_order, separator_idempotent, separator_point, BlockMap, ChainSize, Green,
    OrderedPartition,
};
use crate::error::{Error, Result};
use crate::ideal::{phi_representation, LCategory, RCategory};
use crate::partition::{factorize_pi, FunctorG, PiCategory, PiMorphism};
use crate::powerset::{FunctorF, PoCategory};
use crate::semigroup::{find_isomorphism, ElementMap, FiniteSemigroup};

/// Morphisms sampled by `factorize-Pi` once exhaustive checking is out of reach.
pub const PI_SAMPLES: usize = 10_000;
/// Largest exhaustive `factorize-Pi` run.
pub const PI_EXHAUSTIVE_MAX_N: usize = 4;
/// Largest exhaustive functor check; above it only counts are compared.
pub const FUNCTOR_EXHAUSTIVE_MAX_N: usize = 4;
/// Largest semigroup `export_cayley` will tabulate.
pub const EXPORT_MAX_ORDER: u64 = 2000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} n={} {} ({} ms)", self.check, self.n, self.status, self.elapsed_ms)?;
        for (k, v) in &self.counts {
            write!(f, " {k}={v}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub seed: u64,
    /// Corrupts one cone before `cones-principal` compares, to exercise the failure path.
    pub inject_fault: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: DEFAULT_SEED,
            inject_fault: false,
        }
    }
}

#[derive(Default)]
struct Outcome {
    counts: BTreeMap<String, u64>,
    witness: Option<Value>,
}

impl Outcome {
    fn count(&mut self, key: &str, value: usize) {
        self.counts.insert(key.to_string(), value as u64);
    }

    fn fail(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }
}

type Runner = fn(ChainSize, &CheckOptions) -> Outcome;

pub struct CheckDef {
    pub name: &'static str,
    pub max_n: usize,
    pub summary: &'static str,
    run: Runner,
}

/// Registration order is report order.
pub static CHECKS: &[CheckDef] = &[
    CheckDef { name: "counts", max_n: 7, summary: "enumeration size against the closed form", run: run_counts },
    CheckDef { name: "green", max_n: 5, summary: "Green's relations against principal ideals", run: run_green },
    CheckDef { name: "factorize-L", max_n: 5, summary: "normal factorizations in L", run: run_factorize_l },
    CheckDef { name: "factorize-R", max_n: 5, summary: "normal factorizations in R", run: run_factorize_r },
    CheckDef { name: "factorize-Po", max_n: 5, summary: "normal factorizations in P_o", run: run_factorize_po },
    CheckDef { name: "factorize-Pi", max_n: 5, summary: "factorize_pi against a coarsening oracle", run: run_factorize_pi },
    CheckDef { name: "cones-principal", max_n: 4, summary: "every normal cone of L is principal", run: run_cones_principal },
    CheckDef { name: "TL-iso", max_n: 5, summary: "the semigroup is isomorphic to TL", run: run_tl_iso },
    CheckDef { name: "F-iso", max_n: 5, summary: "F: L -> P_o is an isomorphism", run: run_f_iso },
    CheckDef { name: "G-iso", max_n: 5, summary: "G: R -> Pi_o is an isomorphism", run: run_g_iso },
    CheckDef { name: "TPo-iso", max_n: 5, summary: "the semigroup is isomorphic to TP_o", run: run_tpo_iso },
    CheckDef { name: "phi-faithful", max_n: 5, summary: "alpha -> lambda^alpha is faithful", run: run_phi },
    CheckDef { name: "cone-regular", max_n: 4, summary: "normal cones form a regular semigroup", run: run_cone_regular },
];

pub const ALL: &str = "all";

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.name).chain(std::iter::once(ALL))
}

pub fn find_check(name: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Runs one check, or every check whose cap admits `n` when `name` is `all`.
pub fn run(name: &str, n: usize, options: &CheckOptions) -> Result<Vec<CheckReport>> {
    let size = ChainSize::new(n).map_err(|e| Error::Usage(e.to_string()))?;
    if name == ALL {
        let selected: Vec<&CheckDef> = CHECKS.iter().filter(|c| c.max_n >= n).collect();
        return Ok(std::thread::scope(|scope| {
            let handles: Vec<_> = selected
                .iter()
                .map(|def| scope.spawn(move || run_def(def, size, options)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
        }));
    }
    let def = find_check(name).ok_or_else(|| {
        Error::Usage(format!(
            "unknown check `{name}` (expected one of {})",
            check_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    if n > def.max_n {
        return Err(Error::Usage(format!("{name} supports n <= {}, got {n}", def.max_n)));
    }
    Ok(vec![run_def(def, size, options)])
}

fn run_def(def: &CheckDef, n: ChainSize, options: &CheckOptions) -> CheckReport {
    let start = Instant::now();
    let outcome = (def.run)(n, options);
    CheckReport {
        check: def.name.to_string(),
        n: n.get(),
        status: if outcome.witness.is_some() { Status::Fail } else { Status::Pass },
        counts: outcome.counts,
        witness: outcome.witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn oxn_semigroup(n: ChainSize) -> Result<FiniteSemigroup> {
    FiniteSemigroup::build(&enumerate_oxn(n), |a, b| a.compose(b))
}

fn error_witness(e: impl fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

// ---------------------------------------------------------------------------

fn run_counts(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let elems = enumerate_oxn(n);
    let expected = oxn_order(n) as usize;
    out.count("oxn", elems.len());
    out.count("closed_form", expected);
    out.count("idempotents", elems.iter().filter(|e| e.is_idempotent()).count());
    out.count("l_objects", LCategory::new(n).objects().len());
    out.count("r_objects", OrderedPartition::non_identity(n).len());
    let distinct: HashSet<_> = elems.iter().collect();
    if elems.len() != expected || distinct.len() != elems.len() {
        return out.fail(json!({ "enumerated": elems.len(), "distinct": distinct.len(), "expected": expected }));
    }
    out
}

fn run_green(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let elems = enumerate_oxn(n);
    let s = match oxn_semigroup(n) {
        Ok(s) => s,
        Err(e) => return out.fail(error_witness(e)),
    };
    let ideals = s.ideals();
    out.count("pairs", elems.len() * elems.len());
    for rel in Green::ALL {
        let mut related = 0;
        for (a, f) in elems.iter().enumerate() {
            for (b, g) in elems.iter().enumerate() {
                let direct = green(f, g, rel).expect("same chain");
                if direct != ideals.related(a, b, rel) {
                    return out.fail(json!({
                        "relation": rel.to_string(), "f": f.to_string(), "g": g.to_string(),
                        "characterization": direct, "ideals": !direct,
                    }));
                }
                related += usize::from(direct);
            }
        }
        out.count(&format!("{rel}_pairs"), related);
    }
    out
}

/// Whether the normal factorization of `f` recomposes to `f` with factors of the right kind.
fn factorization_defect<C: Category>(cat: &C, f: &C::Morphism) -> Option<Value> {
    let nf = cat.normal_factorize(f);
    let (q, u, j) = (&nf.retraction, &nf.isomorphism, &nf.inclusion);
    let bad = |why: &str| Some(json!({ "morphism": f.to_string(), "factors": [q.to_string(), u.to_string(), j.to_string()], "reason": why }));
    let recomposed = cat.compose(q, u).and_then(|qu| cat.compose(&qu, j));
    if recomposed.ok().as_ref() != Some(f) {
        return bad("does not recompose");
    }
    let (a, c) = (cat.domain(q), cat.codomain(q));
    let splits = cat
        .inclusion(&c, &a)
        .and_then(|i| cat.compose(&i, q).ok())
        .is_some_and(|iq| iq == cat.identity(&c));
    if !splits {
        return bad("first factor does not split an inclusion");
    }
    if !cat.is_isomorphism(u) {
        return bad("middle factor is not invertible");
    }
    if cat.inclusion(&cat.domain(j), &cat.codomain(j)).as_ref() != Some(j) {
        return bad("last factor is not an inclusion");
    }
    None
}

fn factorize_all<C: Category>(cat: &C) -> Outcome {
    let mut out = Outcome::default();
    let morphisms = cat.morphisms();
    out.count("objects", cat.objects().len());
    out.count("morphisms", morphisms.len());
    match morphisms.iter().find_map(|f| factorization_defect(cat, f)) {
        Some(w) => out.fail(w),
        None => out,
    }
}

fn run_factorize_l(n: ChainSize, _: &CheckOptions) -> Outcome {
    factorize_all(&LCategory::new(n))
}

fn run_factorize_r(n: ChainSize, _: &CheckOptions) -> Outcome {
    factorize_all(&RCategory::new(n))
}

fn run_factorize_po(n: ChainSize, _: &CheckOptions) -> Outcome {
    factorize_all(&PoCategory::new(n))
}

/// `(σ, γ)` recomputed pointwise: `x ~σ y` iff their blocks have the same image, and each point
/// of the source joins the first image block at or after its own, or the last image block.
pub fn pi_coarsening_oracle(m: &PiMorphism) -> (OrderedPartition, OrderedPartition) {
    let (pi1, pi2, eta) = (m.source(), m.target(), m.eta());
    let n = pi1.n();
    let sigma_labels: Vec<usize> = (1..=n).map(|x| eta.apply(pi2.block_of(x))).collect();
    let image: Vec<usize> = eta.values().iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let gamma_labels: Vec<usize> = (1..=n)
        .map(|x| {
            let a = pi1.block_of(x);
            image.iter().copied().find(|&i| i >= a).unwrap_or(*image.last().unwrap())
        })
        .collect();
    (
        OrderedPartition::from_labels(&sigma_labels).expect("labels"),
        OrderedPartition::from_labels(&gamma_labels).expect("labels"),
    )
}

fn random_pi_morphism(cat: &PiCategory, rng: &mut StdRng) -> PiMorphism {
    let objs = cat.objects();
    let a = &objs[rng.random_range(0..objs.len())];
    let b = &objs[rng.random_range(0..objs.len())];
    let mut values: Vec<usize> = (0..b.num_blocks()).map(|_| rng.random_range(0..a.num_blocks())).collect();
    values.sort_unstable();
    PiMorphism::new(BlockMap::new(b.clone(), a.clone(), values).expect("monotone")).expect("non-identity")
}

fn run_factorize_pi(n: ChainSize, options: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let cat = PiCategory::new(n);
    let morphisms = if n.get() <= PI_EXHAUSTIVE_MAX_N {
        cat.morphisms()
    } else {
        let mut rng = StdRng::seed_from_u64(options.seed);
        (0..PI_SAMPLES).map(|_| random_pi_morphism(&cat, &mut rng)).collect()
    };
    out.count("objects", cat.objects().len());
    out.count("morphisms", morphisms.len());
    out.count("sampled", usize::from(n.get() > PI_EXHAUSTIVE_MAX_N));
    for m in &morphisms {
        if let Some(w) = factorization_defect(&cat, m) {
            return out.fail(w);
        }
        let f = factorize_pi(m);
        let (sigma, gamma) = pi_coarsening_oracle(m);
        if f.sigma != sigma || f.gamma != gamma {
            return out.fail(json!({
                "morphism": m.to_string(),
                "sigma": f.sigma.to_string(), "oracle_sigma": sigma.to_string(),
                "gamma": f.gamma.to_string(), "oracle_gamma": gamma.to_string(),
            }));
        }
    }
    out
}

fn run_cones_principal(n: ChainSize, options: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let cat = LCategory::new(n);
    let mut principal = cat.principal_cones();
    if options.inject_fault {
        principal.iter_mut().any(|c| corrupt(&cat, c));
    }
    out.count("principal", principal.len());
    if let Some((cone, defect)) = principal
        .iter()
        .find_map(|c| cone_defect(&cat, c).map(|d| (c, d)))
    {
        return out.fail(json!({ "cone": cone_to_json(&cat, cone), "defect": defect }));
    }
    let enumerated: HashSet<_> = all_normal_cones(&cat).into_iter().collect();
    let principal_set: HashSet<_> = principal.iter().cloned().collect();
    out.count("enumerated", enumerated.len());
    out.count("distinct_principal", principal_set.len());
    if let Some(c) = enumerated.difference(&principal_set).next() {
        return out.fail(json!({ "not_principal": cone_to_json(&cat, c) }));
    }
    if let Some(c) = principal_set.difference(&enumerated).next() {
        return out.fail(json!({ "not_enumerated": cone_to_json(&cat, c) }));
    }
    out
}

/// Swaps one component for another morphism with the same ends, if there is one.
fn corrupt<C: Category>(cat: &C, cone: &mut ConeOf<C>) -> bool {
    for (i, c) in cat.objects().iter().enumerate() {
        if let Some(other) = cat.hom(c, &cone.vertex).into_iter().find(|m| *m != cone.components[i]) {
            cone.components[i] = other;
            return true;
        }
    }
    false
}

/// `α ↦ cone_α` by position must be an isomorphism, and the generic search must find one too.
fn check_representation(out: &mut Outcome, s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Value> {
    out.count("oxn", s.order());
    out.count("cones", t.order());
    let direct = match ElementMap::new(s, t, (0..s.order()).collect()) {
        Ok(m) => m,
        Err(e) => return Some(error_witness(e)),
    };
    if !direct.is_bijective() {
        return Some(json!({ "reason": "cone map is not bijective" }));
    }
    if let Some((a, b)) = direct.homomorphism_witness() {
        return Some(json!({ "reason": "cone map is not multiplicative", "a": s.labels()[a], "b": s.labels()[b] }));
    }
    match find_isomorphism(s, t) {
        Some(iso) if iso.is_bijective() && iso.is_homomorphism() => None,
        _ => Some(json!({ "reason": "isomorphism search failed" })),
    }
}

fn run_tl_iso(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let cat = LCategory::new(n);
    let built = oxn_semigroup(n).and_then(|s| Ok((s, cone_semigroup(&cat, &cat.principal_cones())?)));
    match built {
        Ok((s, t)) => match check_representation(&mut out, &s, &t) {
            Some(w) => out.fail(w),
            None => out,
        },
        Err(e) => out.fail(error_witness(e)),
    }
}

fn run_tpo_iso(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let cat = PoCategory::new(n);
    let built = oxn_semigroup(n).and_then(|s| {
        let cones = enumerate_oxn(n).iter().map(|a| cat.cone_of(a)).collect::<Result<Vec<_>>>()?;
        Ok((s, cone_semigroup(&cat, &cones)?))
    });
    match built {
        Ok((s, t)) => match check_representation(&mut out, &s, &t) {
            Some(w) => out.fail(w),
            None => out,
        },
        Err(e) => out.fail(error_witness(e)),
    }
}

fn functor_depth(n: ChainSize) -> FunctorCheckDepth {
    if n.get() <= FUNCTOR_EXHAUSTIVE_MAX_N {
        FunctorCheckDepth::Exhaustive
    } else {
        FunctorCheckDepth::CountsOnly
    }
}

fn functor_outcome(result: std::result::Result<crate::category::FunctorCounts, String>, n: ChainSize) -> Outcome {
    let mut out = Outcome::default();
    out.count("exhaustive", usize::from(functor_depth(n) == FunctorCheckDepth::Exhaustive));
    match result {
        Ok(c) => {
            out.count("objects", c.objects);
            out.count("morphisms", c.morphisms);
            out.count("composable_pairs", c.composable_pairs);
            out
        }
        Err(e) => out.fail(json!({ "reason": e })),
    }
}

fn run_f_iso(n: ChainSize, _: &CheckOptions) -> Outcome {
    let (l, p) = (LCategory::new(n), PoCategory::new(n));
    functor_outcome(check_functor_isomorphism(&FunctorF::new(&l, &p), functor_depth(n)), n)
}

fn run_g_iso(n: ChainSize, _: &CheckOptions) -> Outcome {
    let (r, p) = (RCategory::new(n), PiCategory::new(n));
    functor_outcome(check_functor_isomorphism(&FunctorG::new(&r, &p), functor_depth(n)), n)
}

fn run_phi(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let phi = match phi_representation(n) {
        Ok(p) => p,
        Err(e) => return out.fail(error_witness(e)),
    };
    let map = phi.map();
    out.count("oxn", phi.semigroup.order());
    out.count("image", phi.image.order());
    if let Some((a, b)) = map.homomorphism_witness() {
        return out.fail(json!({ "reason": "not multiplicative", "a": phi.semigroup.labels()[a], "b": phi.semigroup.labels()[b] }));
    }
    let elems = phi.category.elements();
    let (mut by_vertex, mut by_separator) = (0, 0);
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate().skip(i + 1) {
            let (ca, cb) = (&phi.cones[i], &phi.cones[j]);
            if ca.vertex != cb.vertex {
                by_vertex += 1;
                continue;
            }
            let separated = separator_point(a, b)
                .and_then(|x| separator_idempotent(x, n).ok())
                .and_then(|e| phi.category.object_index(&e.kernel()))
                .is_some_and(|k| ca.components[k] != cb.components[k]);
            if !separated {
                return out.fail(json!({ "reason": "separator idempotent does not separate", "a": a.to_string(), "b": b.to_string() }));
            }
            by_separator += 1;
        }
    }
    out.count("separated_by_vertex", by_vertex);
    out.count("separated_by_idempotent", by_separator);
    out
}

/// Regularity and "idempotent iff identity at the vertex". Building the table already checks
/// closure and associativity.
fn cone_algebra<C: Category>(out: &mut Outcome, prefix: &str, cat: &C) -> Option<Value> {
    let cones = all_normal_cones(cat);
    out.count(&format!("{prefix}_cones"), cones.len());
    let t = match cone_semigroup(cat, &cones) {
        Ok(t) => t,
        Err(e) => return Some(json!({ "category": prefix, "error": e.to_string() })),
    };
    if let Some(x) = t.non_regular_element() {
        return Some(json!({ "category": prefix, "non_regular": t.labels()[x] }));
    }
    let mut idempotents = 0;
    for (i, cone) in cones.iter().enumerate() {
        let criterion = is_idempotent_cone(cat, cone);
        if criterion != t.is_idempotent(i) {
            return Some(json!({ "category": prefix, "cone": cone_to_json(cat, cone), "criterion": criterion }));
        }
        idempotents += usize::from(criterion);
    }
    out.count(&format!("{prefix}_idempotents"), idempotents);
    None
}

fn run_cone_regular(n: ChainSize, _: &CheckOptions) -> Outcome {
    let mut out = Outcome::default();
    let w = cone_algebra(&mut out, "l", &LCategory::new(n)).or_else(|| cone_algebra(&mut out, "po", &PoCategory::new(n)));
    match w {
        Some(w) => out.fail(w),
        None => out,
    }
}

// ---------------------------------------------------------------------------

/// Which semigroup `export_cayley` tabulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Oxn,
    TL,
    TR,
    TPo,
    TPi,
}

impl Selector {
    pub const ALL: [Selector; 5] = [Selector::Oxn, Selector::TL, Selector::TR, Selector::TPo, Selector::TPi];
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selector::Oxn => "oxn",
            Selector::TL => "TL",
            Selector::TR => "TR",
            Selector::TPo => "TPo",
            Selector::TPi => "TPi",
        })
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Selector::ALL
            .into_iter()
            .find(|sel| sel.to_string() == s)
            .ok_or_else(|| Error::Usage(format!("unknown semigroup `{s}` (expected oxn, TL, TR, TPo or TPi)")))
    }
}

/// The Cayley table of the selected semigroup. The cone semigroups are tabulated over the
/// cones representing the elements, one per element.
pub fn cayley_table(selector: Selector, n: ChainSize) -> Result<FiniteSemigroup> {
    let order = oxn_order(n);
    if order > EXPORT_MAX_ORDER {
        return Err(Error::Resource(format!(
            "{selector} at n={} has {order} elements; export is limited to {EXPORT_MAX_ORDER}",
            n.get()
        )));
    }
    match selector {
        Selector::Oxn => oxn_semigroup(n),
        Selector::TL => {
            let cat = LCategory::new(n);
            cone_semigroup(&cat, &cat.principal_cones())
        }
        Selector::TR => {
            let cat = RCategory::new(n);
            cone_semigroup(&cat, &cat.dual_principal_cones())
        }
        Selector::TPo => {
            let cat = PoCategory::new(n);
            let cones = enumerate_oxn(n).iter().map(|a| cat.cone_of(a)).collect::<Result<Vec<_>>>()?;
            cone_semigroup(&cat, &cones)
        }
        Selector::TPi => {
            let (r, p) = (RCategory::new(n), PiCategory::new(n));
            let g = FunctorG::new(&r, &p);
            let cones: Vec<ConeOf<PiCategory>> = r
                .dual_principal_cones()
                .iter()
                .map(|c| transport(&g, c))
                .collect();
            cone_semigroup(&p, &cones)
        }
    }
}

fn transport(g: &FunctorG<'_>, cone: &ConeOf<RCategory>) -> ConeOf<PiCategory> {
    use crate::category::Functor;
    let (r, p) = (g.source(), g.target());
    let mut components = vec![None; p.objects().len()];
    for (c, m) in r.objects().iter().zip(&cone.components) {
        let k = p.object_index(&g.map_object(c)).expect("bijective on objects");
        components[k] = Some(g.map_morphism(m));
    }
    Cone {
        vertex: g.map_object(&cone.vertex),
        components: components.into_iter().map(|m| m.expect("every object hit")).collect(),
    }
}

/// Writes the selected Cayley table as JSON to `path`.
pub fn export_cayley(selector: Selector, n: ChainSize, path: &Path) -> Result<FiniteSemigroup> {
    let table = cayley_table(selector, n)?;
    let text = serde_json::to_string(&table.to_json()).map_err(|e| Error::Resource(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
    Ok(table)
}
