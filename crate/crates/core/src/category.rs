//! Finite categories with subobjects and the semigroup of their normal cones.
//!
//! A [`Category`] exposes hom-sets and composition together with its subobject structure.
//! Everything else here is generic over that interface:
//!
//! * [`validate_cone`], [`is_normal`] and [`m_set`] check the cone axioms,
//! * [`cone_mul`] implements `γ·σ = γ * (σ(c_γ))°`,
//! * [`cone_semigroup`] tabulates the product over a set of normal cones,
//! * [`enumerate_normal_cones`] finds every normal cone with a given vertex by backtracking,
//! * [`check_normal_category`] and [`check_functor_isomorphism`] verify the axioms exhaustively.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// `f = q·u·j` with `q` a retraction, `u` an isomorphism and `j` an inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFactorization<M> {
    pub retraction: M,
    pub isomorphism: M,
    pub inclusion: M,
}

/// A finite category with subobjects.
///
/// Composition is diagrammatic: `compose(f, g)` is "first `f`, then `g`".
pub trait Category {
    type Object: Clone + Eq + Hash + Debug + Display;
    type Morphism: Clone + Eq + Hash + Debug + Display;

    /// All objects. A proper superobject always comes before its subobjects.
    fn objects(&self) -> &[Self::Object];

    fn object_index(&self, c: &Self::Object) -> Option<usize> {
        self.objects().iter().position(|o| o == c)
    }

    fn domain(&self, f: &Self::Morphism) -> Self::Object;
    fn codomain(&self, f: &Self::Morphism) -> Self::Object;

    fn hom(&self, a: &Self::Object, b: &Self::Object) -> Vec<Self::Morphism>;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;

    /// `a ⊆ b`.
    fn is_subobject(&self, a: &Self::Object, b: &Self::Object) -> bool;
    /// The inclusion `a -> b`, when `a ⊆ b`.
    fn inclusion(&self, a: &Self::Object, b: &Self::Object) -> Option<Self::Morphism>;
    /// A morphism `b -> a` with `inclusion(a, b)` followed by it equal to `1_a`.
    fn retraction(&self, a: &Self::Object, b: &Self::Object) -> Option<Self::Morphism>;
    /// Deterministic normal factorization.
    fn normal_factorize(&self, f: &Self::Morphism) -> NormalFactorization<Self::Morphism>;
    fn is_isomorphism(&self, f: &Self::Morphism) -> bool;

    /// A normal cone with vertex `c` whose component at `c` is `1_c`.
    fn idempotent_cone(&self, c: &Self::Object) -> Cone<Self::Object, Self::Morphism>;

    fn morphisms(&self) -> Vec<Self::Morphism> {
        let objs = self.objects();
        objs.iter()
            .flat_map(|a| objs.iter().flat_map(move |b| self.hom(a, b)))
            .collect()
    }
}

/// A cone: one morphism into the vertex per object, stored in the provider's object order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone<O, M> {
    pub vertex: O,
    pub components: Vec<M>,
}

/// The cone type of a category.
pub type ConeOf<C> = Cone<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> Cone<O, M> {
    pub fn component(&self, index: usize) -> &M {
        &self.components[index]
    }
}

impl<O: Display, M: Display> Display for Cone<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone({}; ", self.vertex)?;
        for (i, m) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// `{ "vertex": label, "components": { objectLabel: morphismLabel } }`.
pub fn cone_to_json<C: Category>(cat: &C, cone: &ConeOf<C>) -> Value {
    let mut comps = Map::new();
    for (o, m) in cat.objects().iter().zip(&cone.components) {
        comps.insert(o.to_string(), Value::String(m.to_string()));
    }
    json!({ "vertex": cone.vertex.to_string(), "components": comps })
}

/// Builds a cone by evaluating `component` at every object.
pub fn cone_from_fn<C, F>(cat: &C, vertex: C::Object, mut component: F) -> ConeOf<C>
where
    C: Category,
    F: FnMut(&C::Object) -> C::Morphism,
{
    Cone {
        vertex,
        components: cat.objects().iter().map(&mut component).collect(),
    }
}

/// The first violated cone axiom, if any.
pub fn cone_defect<C: Category>(cat: &C, cone: &ConeOf<C>) -> Option<String> {
    let objs = cat.objects();
    if cone.components.len() != objs.len() {
        return Some(format!(
            "{} components for {} objects",
            cone.components.len(),
            objs.len()
        ));
    }
    for (c, m) in objs.iter().zip(&cone.components) {
        if cat.domain(m) != *c || cat.codomain(m) != cone.vertex {
            return Some(format!("component {m} at {c} is not a morphism {c} -> {}", cone.vertex));
        }
    }
    for (i, c) in objs.iter().enumerate() {
        for (k, d) in objs.iter().enumerate() {
            if i == k || !cat.is_subobject(c, d) {
                continue;
            }
            let j = cat.inclusion(c, d).expect("subobject without inclusion");
            match cat.compose(&j, &cone.components[k]) {
                Ok(r) if r == cone.components[i] => {}
                Ok(r) => {
                    return Some(format!(
                        "inclusion {c} ⊆ {d} then component gives {r}, expected {}",
                        cone.components[i]
                    ))
                }
                Err(e) => return Some(e.to_string()),
            }
        }
    }
    None
}

pub fn validate_cone<C: Category>(cat: &C, cone: &ConeOf<C>) -> bool {
    cone_defect(cat, cone).is_none()
}

/// Objects whose component is an isomorphism.
pub fn m_set<C: Category>(cat: &C, cone: &ConeOf<C>) -> Vec<C::Object> {
    cat.objects()
        .iter()
        .zip(&cone.components)
        .filter(|(_, m)| cat.is_isomorphism(m))
        .map(|(o, _)| o.clone())
        .collect()
}

/// Whether a valid cone is normal, together with its set of isomorphic components.
pub fn is_normal<C: Category>(cat: &C, cone: &ConeOf<C>) -> Result<(bool, Vec<C::Object>)> {
    if let Some(defect) = cone_defect(cat, cone) {
        return Err(Error::Contract(format!("not a cone: {defect}")));
    }
    let m = m_set(cat, cone);
    Ok((!m.is_empty(), m))
}

fn vertex_index<C: Category>(cat: &C, cone: &ConeOf<C>) -> usize {
    cat.object_index(&cone.vertex)
        .unwrap_or_else(|| panic!("vertex {} is not an object", cone.vertex))
}

/// `γ(c_γ) = 1`.
pub fn is_idempotent_cone<C: Category>(cat: &C, cone: &ConeOf<C>) -> bool {
    cone.components[vertex_index(cat, cone)] == cat.identity(&cone.vertex)
}

/// The epimorphic component `q·u` of a morphism.
pub fn epimorphic_part<C: Category>(cat: &C, f: &C::Morphism) -> Result<C::Morphism> {
    let nf = cat.normal_factorize(f);
    cat.compose(&nf.retraction, &nf.isomorphism)
}

/// `γ·σ = γ * (σ(c_γ))°`.
pub fn cone_mul<C: Category>(cat: &C, gamma: &ConeOf<C>, sigma: &ConeOf<C>) -> Result<ConeOf<C>> {
    let f = &sigma.components[vertex_index(cat, gamma)];
    let epi = epimorphic_part(cat, f)?;
    let components = gamma
        .components
        .iter()
        .map(|g| cat.compose(g, &epi))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone {
        vertex: cat.codomain(&epi),
        components,
    })
}

/// The multiplication table of `cones` under [`cone_mul`].
pub fn cone_semigroup<C: Category>(cat: &C, cones: &[ConeOf<C>]) -> Result<FiniteSemigroup> {
    FiniteSemigroup::build(cones, |a, b| cone_mul(cat, a, b))
}

/// For each pair of object indices, the indices of their common subobjects.
fn common_subobjects<C: Category>(cat: &C) -> Vec<Vec<Vec<usize>>> {
    let objs = cat.objects();
    let k = objs.len();
    let below: Vec<Vec<bool>> = objs
        .iter()
        .map(|c| objs.iter().map(|d| cat.is_subobject(d, c)).collect())
        .collect();
    (0..k)
        .map(|a| {
            (0..k)
                .map(|b| (0..k).filter(|&d| below[a][d] && below[b][d]).collect())
                .collect()
        })
        .collect()
}

/// Every normal cone with the given vertex, by backtracking over components in object
/// order (superobjects first). Components of an object below an assigned one are forced;
/// a choice is rejected as soon as two assigned components disagree on a common subobject.
pub fn enumerate_normal_cones<C: Category>(cat: &C, vertex: &C::Object) -> Vec<ConeOf<C>> {
    let objs = cat.objects();
    let k = objs.len();
    debug_assert!((0..k).all(|i| (i + 1..k).all(|j| !(cat.is_subobject(&objs[i], &objs[j]) && objs[i] != objs[j]))));
    let common = common_subobjects(cat);
    let mut inclusions: HashMap<(usize, usize), C::Morphism> = HashMap::new();
    for a in 0..k {
        for b in 0..k {
            if let Some(j) = cat.inclusion(&objs[a], &objs[b]) {
                inclusions.insert((a, b), j);
            }
        }
    }
    let restrict = |sub: usize, sup: usize, m: &C::Morphism| -> C::Morphism {
        cat.compose(&inclusions[&(sub, sup)], m).expect("restriction along inclusion")
    };

    struct Frame<'a, M> {
        out: &'a mut Vec<Vec<M>>,
        assigned: Vec<M>,
    }

    fn go<C: Category>(
        cat: &C,
        vertex: &C::Object,
        common: &[Vec<Vec<usize>>],
        restrict: &dyn Fn(usize, usize, &C::Morphism) -> C::Morphism,
        frame: &mut Frame<'_, C::Morphism>,
    ) {
        let objs = cat.objects();
        let i = frame.assigned.len();
        if i == objs.len() {
            frame.out.push(frame.assigned.clone());
            return;
        }
        let supers: Vec<usize> = (0..i).filter(|&s| cat.is_subobject(&objs[i], &objs[s])).collect();
        let candidates = match supers.first() {
            Some(&s) => vec![restrict(i, s, &frame.assigned[s])],
            None => cat.hom(&objs[i], vertex),
        };
        'cand: for cand in candidates {
            for &s in &supers {
                if restrict(i, s, &frame.assigned[s]) != cand {
                    continue 'cand;
                }
            }
            for prev in 0..i {
                for &d in &common[i][prev] {
                    if d == i || d == prev {
                        continue;
                    }
                    if restrict(d, i, &cand) != restrict(d, prev, &frame.assigned[prev]) {
                        continue 'cand;
                    }
                }
            }
            frame.assigned.push(cand);
            go(cat, vertex, common, restrict, frame);
            frame.assigned.pop();
        }
    }

    let mut raw = Vec::new();
    let mut frame = Frame {
        out: &mut raw,
        assigned: Vec::with_capacity(k),
    };
    go(cat, vertex, &common, &restrict, &mut frame);

    let mut seen = HashSet::new();
    raw.into_iter()
        .map(|components| Cone {
            vertex: vertex.clone(),
            components,
        })
        .filter(|c| c.components.iter().any(|m| cat.is_isomorphism(m)))
        .filter(|c| seen.insert(c.clone()))
        .collect()
}

/// Every normal cone of the category.
pub fn all_normal_cones<C: Category>(cat: &C) -> Vec<ConeOf<C>> {
    cat.objects()
        .iter()
        .flat_map(|v| enumerate_normal_cones(cat, v))
        .collect()
}

/// Sizes seen while checking the normal-category axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalCategoryCounts {
    pub objects: usize,
    pub morphisms: usize,
    pub inclusions: usize,
    pub factorizations: usize,
    pub idempotent_cones: usize,
}

/// Checks exhaustively: the subobject relation is a partial order realised by inclusions
/// that compose; every inclusion splits; every morphism's normal factorization has the
/// right shape and recomposes to it; every object is the vertex of an idempotent normal cone.
pub fn check_normal_category<C: Category>(cat: &C) -> Result<NormalCategoryCounts, String> {
    let objs = cat.objects();
    let mut counts = NormalCategoryCounts {
        objects: objs.len(),
        ..Default::default()
    };
    let compose = |f: &C::Morphism, g: &C::Morphism| cat.compose(f, g).map_err(|e| e.to_string());

    for a in objs {
        if !cat.is_subobject(a, a) || cat.inclusion(a, a) != Some(cat.identity(a)) {
            return Err(format!("inclusion {a} ⊆ {a} is not the identity"));
        }
        for b in objs {
            let sub = cat.is_subobject(a, b);
            if sub != cat.inclusion(a, b).is_some() {
                return Err(format!("inclusion {a} -> {b} disagrees with the subobject order"));
            }
            if !sub {
                continue;
            }
            if a != b && cat.is_subobject(b, a) {
                return Err(format!("{a} ⊆ {b} ⊆ {a} with {a} != {b}"));
            }
            counts.inclusions += 1;
            let j = cat.inclusion(a, b).unwrap();
            if cat.domain(&j) != *a || cat.codomain(&j) != *b {
                return Err(format!("inclusion {j} has the wrong ends"));
            }
            let q = cat
                .retraction(a, b)
                .ok_or_else(|| format!("inclusion {a} ⊆ {b} has no retraction"))?;
            if compose(&j, &q)? != cat.identity(a) {
                return Err(format!("inclusion {j} then {q} is not the identity"));
            }
            for c in objs.iter().filter(|c| cat.is_subobject(b, c)) {
                if !cat.is_subobject(a, c) {
                    return Err(format!("subobject order not transitive at {a} ⊆ {b} ⊆ {c}"));
                }
                let jbc = cat.inclusion(b, c).unwrap();
                if Some(compose(&j, &jbc)?) != cat.inclusion(a, c) {
                    return Err(format!("inclusions {a} ⊆ {b} ⊆ {c} do not compose"));
                }
            }
        }
    }

    for a in objs {
        for b in objs {
            for f in cat.hom(a, b) {
                counts.morphisms += 1;
                if cat.domain(&f) != *a || cat.codomain(&f) != *b {
                    return Err(format!("{f} listed in hom({a}, {b})"));
                }
                let nf = cat.normal_factorize(&f);
                let (q, u, j) = (&nf.retraction, &nf.isomorphism, &nf.inclusion);
                let (c1, d1) = (cat.codomain(q), cat.codomain(u));
                if cat.domain(q) != *a || cat.codomain(j) != *b {
                    return Err(format!("factorization of {f} has the wrong ends"));
                }
                let splits = cat.is_subobject(&c1, a)
                    && cat
                        .inclusion(&c1, a)
                        .map(|i| compose(&i, q).ok() == Some(cat.identity(&c1)))
                        .unwrap_or(false);
                if !splits {
                    return Err(format!("first factor {q} of {f} is not a retraction"));
                }
                if !cat.is_isomorphism(u) {
                    return Err(format!("middle factor {u} of {f} is not an isomorphism"));
                }
                if cat.inclusion(&d1, b).as_ref() != Some(j) {
                    return Err(format!("last factor {j} of {f} is not an inclusion"));
                }
                if compose(&compose(q, u)?, j)? != f {
                    return Err(format!("factorization of {f} does not recompose"));
                }
                counts.factorizations += 1;
            }
        }
    }

    for c in objs {
        let cone = cat.idempotent_cone(c);
        if let Some(defect) = cone_defect(cat, &cone) {
            return Err(format!("idempotent cone at {c}: {defect}"));
        }
        if cone.vertex != *c || !is_idempotent_cone(cat, &cone) {
            return Err(format!("cone at {c} does not have identity component at its vertex"));
        }
        counts.idempotent_cones += 1;
    }
    Ok(counts)
}

/// A functor between two categories, given by its action on objects and morphisms.
pub trait Functor {
    type Source: Category;
    type Target: Category;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn map_object(&self, c: &<Self::Source as Category>::Object) -> <Self::Target as Category>::Object;
    fn map_morphism(&self, f: &<Self::Source as Category>::Morphism) -> <Self::Target as Category>::Morphism;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorCheckDepth {
    /// Bijectivity on hom-sets plus preservation of every composable pair.
    Exhaustive,
    /// Object and hom-set cardinalities only.
    CountsOnly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorCounts {
    pub objects: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
}

/// Checks that `functor` is an isomorphism of categories with subobjects.
pub fn check_functor_isomorphism<F: Functor>(functor: &F, depth: FunctorCheckDepth) -> Result<FunctorCounts, String> {
    let (src, tgt) = (functor.source(), functor.target());
    let objs = src.objects();
    let mut counts = FunctorCounts {
        objects: objs.len(),
        ..Default::default()
    };
    if objs.len() != tgt.objects().len() {
        return Err(format!(
            "{} source objects vs {} target objects",
            objs.len(),
            tgt.objects().len()
        ));
    }
    let images: Vec<_> = objs.iter().map(|c| functor.map_object(c)).collect();
    let distinct: HashSet<_> = images.iter().collect();
    if distinct.len() != objs.len() || images.iter().any(|o| tgt.object_index(o).is_none()) {
        return Err("object map is not a bijection".into());
    }

    if depth == FunctorCheckDepth::CountsOnly {
        for (a, fa) in objs.iter().zip(&images) {
            for (b, fb) in objs.iter().zip(&images) {
                let (s, t) = (src.hom(a, b).len(), tgt.hom(fa, fb).len());
                if s != t {
                    return Err(format!("|hom({a}, {b})| = {s} but |hom({fa}, {fb})| = {t}"));
                }
                counts.morphisms += s;
            }
        }
        return Ok(counts);
    }

    let mut homs: HashMap<(usize, usize), Vec<_>> = HashMap::new();
    for (ia, (a, fa)) in objs.iter().zip(&images).enumerate() {
        if functor.map_morphism(&src.identity(a)) != tgt.identity(fa) {
            return Err(format!("identity at {a} not preserved"));
        }
        for (ib, (b, fb)) in objs.iter().zip(&images).enumerate() {
            if src.is_subobject(a, b) != tgt.is_subobject(fa, fb) {
                return Err(format!("subobject order not preserved at {a}, {b}"));
            }
            if let Some(j) = src.inclusion(a, b) {
                if Some(functor.map_morphism(&j)) != tgt.inclusion(fa, fb) {
                    return Err(format!("inclusion {a} ⊆ {b} not preserved"));
                }
            }
            let hom = src.hom(a, b);
            let target_hom: HashSet<_> = tgt.hom(fa, fb).into_iter().collect();
            let mapped: HashSet<_> = hom.iter().map(|f| functor.map_morphism(f)).collect();
            if mapped.len() != hom.len() {
                return Err(format!("not faithful on hom({a}, {b})"));
            }
            if mapped != target_hom {
                return Err(format!("not full on hom({a}, {b})"));
            }
            counts.morphisms += hom.len();
            homs.insert((ia, ib), hom);
        }
    }
    let k = objs.len();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for f in &homs[&(a, b)] {
                    let ff = functor.map_morphism(f);
                    for g in &homs[&(b, c)] {
                        let fg = src.compose(f, g).map_err(|e| e.to_string())?;
                        let rhs = tgt
                            .compose(&ff, &functor.map_morphism(g))
                            .map_err(|e| e.to_string())?;
                        if functor.map_morphism(&fg) != rhs {
                            return Err(format!("composition of {f} and {g} not preserved"));
                        }
                        counts.composable_pairs += 1;
                    }
                }
            }
        }
    }
    Ok(counts)
}
