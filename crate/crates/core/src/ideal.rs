//! The principal left and right ideal categories of the semigroup of singular
//! order-preserving maps.
//!
//! Morphisms are built from semigroup data, triples `(e, u, f)` of two idempotents and a
//! translating element, and stored in canonical form. A left-ideal morphism
//! `ρ(e_A, u, e_B)` depends only on `A = Im e_A`, `B = Im e_B` and the restriction of `u` to `A`;
//! a right-ideal morphism `λ(e, v, f)` depends only on the kernels of `e`, `f` and the block map
//! `[x]_f ↦ [(x)v]_e`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::category::{cone_semigroup, Category, Cone, ConeOf, NormalFactorization};
use crate::chain::{
    enumerate_oxn, idempotent_for_image, idempotent_for_kernel, BlockMap, ChainSize, OpMap,
    OrderedPartition, SubMap, Subset,
};
use crate::error::{Error, Result};
use crate::semigroup::{ElementMap, FiniteSemigroup};

fn require_idempotent(e: &OpMap, role: &str) -> Result<()> {
    if !e.is_singular() || !e.is_idempotent() {
        return Err(Error::Contract(format!("{role} = {e} is not a singular idempotent")));
    }
    Ok(())
}

/// A morphism of the left-ideal category in canonical form: the restriction of the
/// translating element to the image of the source idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LMorphism(SubMap);

impl LMorphism {
    pub fn action(&self) -> &SubMap {
        &self.0
    }

    pub fn source(&self) -> &Subset {
        self.0.domain()
    }

    pub fn target(&self) -> &Subset {
        self.0.codomain()
    }

    /// Direct construction from a monotone map between proper subsets.
    pub fn from_action(action: SubMap) -> Result<Self> {
        if !action.domain().is_proper() || !action.codomain().is_proper() {
            return Err(Error::Domain(format!("{action} has a non-proper end")));
        }
        Ok(LMorphism(action))
    }
}

impl fmt::Display for LMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho({})", self.0)
    }
}

/// `ρ(e_A, u, e_B)` for idempotents `e_A`, `e_B` and `u ∈ e_A·S·e_B`.
pub fn l_morphism_from_triple(e_a: &OpMap, u: &OpMap, e_b: &OpMap) -> Result<LMorphism> {
    require_idempotent(e_a, "e_A")?;
    require_idempotent(e_b, "e_B")?;
    if e_a.compose(u)? != *u || u.compose(e_b)? != *u {
        return Err(Error::Contract(format!("{u} is not in {e_a}·S·{e_b}")));
    }
    Ok(LMorphism(u.restrict_into(&e_a.image(), &e_b.image())?))
}

/// Composite of `ρ(e_A, u, e_B)` and `ρ(e_B, v, e_C)`: pointwise composition of the actions.
pub fn l_compose(first: &LMorphism, second: &LMorphism) -> Result<LMorphism> {
    Ok(LMorphism(first.0.compose(&second.0)?))
}

/// An element of `e_A·S·e_B` representing `rho`.
fn l_representative(rho: &LMorphism) -> OpMap {
    let e_a = idempotent_for_image(rho.source()).expect("proper source");
    e_a.compose(&rho.0.extend()).expect("same chain")
}

/// Normal factorization `ρ(e, g, g)·ρ(g, u, h)·ρ(h, h, f)` with `g` the idempotent whose
/// kernel is that of `u` and whose image picks the least point of the source in each class,
/// and `h` the rounding-up idempotent onto `Im u`.
pub fn l_normal_factorize(rho: &LMorphism) -> NormalFactorization<LMorphism> {
    let a = rho.source();
    let e = idempotent_for_image(a).expect("proper source");
    let f = idempotent_for_image(rho.target()).expect("proper target");
    let u = l_representative(rho);
    let ker = u.kernel();
    let mut rep = vec![0; ker.num_blocks()];
    for &x in a.elements().iter().rev() {
        rep[ker.block_of(x)] = x;
    }
    let g = OpMap::new((1..=u.n()).map(|x| rep[ker.block_of(x)]).collect()).expect("monotone");
    let h = idempotent_for_image(&u.image()).expect("proper image");
    let build = |x: &OpMap, y: &OpMap, z: &OpMap| l_morphism_from_triple(x, y, z).expect("normal factorization factor");
    NormalFactorization {
        retraction: build(&e, &g, &g),
        isomorphism: build(&g, &u, &h),
        inclusion: build(&h, &h, &f),
    }
}

/// The principal left-ideal category, with objects keyed by image sets.
#[derive(Clone, Debug)]
pub struct LCategory {
    n: ChainSize,
    elements: Vec<OpMap>,
    objects: Vec<Subset>,
    index: HashMap<Subset, usize>,
    idempotents: Vec<OpMap>,
}

impl LCategory {
    pub fn new(n: ChainSize) -> Self {
        let objects = Subset::proper_subsets(n);
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let idempotents = objects
            .iter()
            .map(|a| idempotent_for_image(a).expect("proper"))
            .collect();
        LCategory {
            n,
            elements: enumerate_oxn(n),
            objects,
            index,
            idempotents,
        }
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    pub fn elements(&self) -> &[OpMap] {
        &self.elements
    }

    /// The canonical idempotent generating the object `a`.
    pub fn idempotent(&self, a: &Subset) -> &OpMap {
        &self.idempotents[self.index[a]]
    }

    /// `ρ^α`: vertex `Sα`, component at `Se` equal to `ρ(e, eα, f)` with `f` an idempotent
    /// L-related to `α`.
    pub fn principal_cone(&self, alpha: &OpMap) -> Result<ConeOf<Self>> {
        if !alpha.is_singular() {
            return Err(Error::Contract(format!("{alpha} is the identity")));
        }
        let vertex = alpha.image();
        let f = idempotent_for_image(&vertex)?;
        let mut components = Vec::with_capacity(self.objects.len());
        for (b, e) in self.objects.iter().zip(&self.idempotents) {
            debug_assert_eq!(&e.image(), b);
            components.push(l_morphism_from_triple(e, &e.compose(alpha)?, &f)?);
        }
        Ok(Cone { vertex, components })
    }

    pub fn principal_cones(&self) -> Vec<ConeOf<Self>> {
        self.elements
            .iter()
            .map(|a| self.principal_cone(a).expect("singular"))
            .collect()
    }
}

impl Category for LCategory {
    type Object = Subset;
    type Morphism = LMorphism;

    fn objects(&self) -> &[Subset] {
        &self.objects
    }

    fn object_index(&self, c: &Subset) -> Option<usize> {
        self.index.get(c).copied()
    }

    fn domain(&self, f: &LMorphism) -> Subset {
        f.source().clone()
    }

    fn codomain(&self, f: &LMorphism) -> Subset {
        f.target().clone()
    }

    /// Canonical forms of `ρ(e_A, u, e_B)` over all `u ∈ e_A·S·e_B`.
    fn hom(&self, a: &Subset, b: &Subset) -> Vec<LMorphism> {
        let (e_a, e_b) = (self.idempotent(a), self.idempotent(b));
        let set: BTreeSet<LMorphism> = self
            .elements
            .iter()
            .filter(|u| e_a.compose(u).unwrap() == **u && u.compose(e_b).unwrap() == **u)
            .map(|u| l_morphism_from_triple(e_a, u, e_b).expect("member of e_A S e_B"))
            .collect();
        set.into_iter().collect()
    }

    fn compose(&self, f: &LMorphism, g: &LMorphism) -> Result<LMorphism> {
        l_compose(f, g)
    }

    fn identity(&self, a: &Subset) -> LMorphism {
        LMorphism(SubMap::identity(a))
    }

    fn is_subobject(&self, a: &Subset, b: &Subset) -> bool {
        a.is_subset_of(b)
    }

    /// `ρ(e_A, e_A, e_B)`.
    fn inclusion(&self, a: &Subset, b: &Subset) -> Option<LMorphism> {
        if !a.is_subset_of(b) {
            return None;
        }
        let e_a = self.idempotent(a);
        l_morphism_from_triple(e_a, e_a, self.idempotent(b)).ok()
    }

    /// `ρ(e_B, e_B·e_A, e_A)`.
    fn retraction(&self, a: &Subset, b: &Subset) -> Option<LMorphism> {
        if !a.is_subset_of(b) {
            return None;
        }
        let (e_a, e_b) = (self.idempotent(a), self.idempotent(b));
        l_morphism_from_triple(e_b, &e_b.compose(e_a).ok()?, e_a).ok()
    }

    fn normal_factorize(&self, f: &LMorphism) -> NormalFactorization<LMorphism> {
        l_normal_factorize(f)
    }

    fn is_isomorphism(&self, f: &LMorphism) -> bool {
        f.0.is_bijective()
    }

    fn idempotent_cone(&self, c: &Subset) -> ConeOf<Self> {
        self.principal_cone(self.idempotent(c)).expect("singular idempotent")
    }
}

// ---------------------------------------------------------------------------

/// A morphism `eS -> fS` of the right-ideal category in canonical form: the block map
/// `π_f -> π_e`, `[x]_f ↦ [(x)v]_e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMorphism(BlockMap);

impl RMorphism {
    pub fn eta(&self) -> &BlockMap {
        &self.0
    }

    /// Kernel of the source idempotent.
    pub fn source(&self) -> &OrderedPartition {
        self.0.target()
    }

    /// Kernel of the target idempotent.
    pub fn target(&self) -> &OrderedPartition {
        self.0.source()
    }

    /// Direct construction from a block map `π_f -> π_e` between non-identity partitions.
    pub fn from_eta(eta: BlockMap) -> Result<Self> {
        if !eta.source().is_non_identity() || !eta.target().is_non_identity() {
            return Err(Error::Domain(format!("{eta} involves the discrete partition")));
        }
        Ok(RMorphism(eta))
    }
}

impl fmt::Display for RMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda({} -> {}: {})", self.source(), self.target(), self.0)
    }
}

/// `λ(e, v, f)` for idempotents `e`, `f` and `v ∈ f·S·e`.
pub fn r_morphism_from_triple(e: &OpMap, v: &OpMap, f: &OpMap) -> Result<RMorphism> {
    require_idempotent(e, "e")?;
    require_idempotent(f, "f")?;
    if f.compose(v)? != *v || v.compose(e)? != *v {
        return Err(Error::Contract(format!("{v} is not in {f}·S·{e}")));
    }
    let (pe, pf) = (e.kernel(), f.kernel());
    let values = pf.blocks().iter().map(|&(lo, _)| pe.block_of(v.apply(lo))).collect();
    Ok(RMorphism(BlockMap::new(pf, pe, values)?))
}

/// Composite of `λ(e, v, f)` and `λ(f, w, g)`; its block map is `η_w` followed by `η_v`.
pub fn r_compose(first: &RMorphism, second: &RMorphism) -> Result<RMorphism> {
    Ok(RMorphism(second.0.then(&first.0)?))
}

/// An element of `f·S·e` representing `lambda`.
fn r_representative(lambda: &RMorphism) -> OpMap {
    let (pe, pf) = (lambda.source(), lambda.target());
    let reps: Vec<usize> = pe.blocks().iter().map(|&(lo, _)| lo).collect();
    OpMap::new(
        (1..=pe.n())
            .map(|x| reps[lambda.0.apply(pf.block_of(x))])
            .collect(),
    )
    .expect("monotone block map")
}

/// Normal factorization `λ(e, g, g)·λ(g, v, h)·λ(h, h, f)` with `g = e` followed by the
/// rounding-up idempotent onto `Im v`, and `h` the least-point idempotent with kernel `ker v`.
pub fn r_normal_factorize(lambda: &RMorphism) -> NormalFactorization<RMorphism> {
    let e = idempotent_for_kernel(lambda.source()).expect("non-identity source");
    let f = idempotent_for_kernel(lambda.target()).expect("non-identity target");
    let v = r_representative(lambda);
    let g = e
        .compose(&idempotent_for_image(&v.image()).expect("proper image"))
        .expect("same chain");
    let h = idempotent_for_kernel(&v.kernel()).expect("singular");
    let build = |x: &OpMap, y: &OpMap, z: &OpMap| r_morphism_from_triple(x, y, z).expect("normal factorization factor");
    NormalFactorization {
        retraction: build(&e, &g, &g),
        isomorphism: build(&g, &v, &h),
        inclusion: build(&h, &h, &f),
    }
}

/// The principal right-ideal category, with objects keyed by kernels.
#[derive(Clone, Debug)]
pub struct RCategory {
    n: ChainSize,
    elements: Vec<OpMap>,
    objects: Vec<OrderedPartition>,
    index: HashMap<OrderedPartition, usize>,
    idempotents: Vec<OpMap>,
}

impl RCategory {
    pub fn new(n: ChainSize) -> Self {
        let objects = OrderedPartition::non_identity(n);
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let idempotents = objects
            .iter()
            .map(|p| idempotent_for_kernel(p).expect("non-identity"))
            .collect();
        RCategory {
            n,
            elements: enumerate_oxn(n),
            objects,
            index,
            idempotents,
        }
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    pub fn elements(&self) -> &[OpMap] {
        &self.elements
    }

    pub fn idempotent(&self, p: &OrderedPartition) -> &OpMap {
        &self.idempotents[self.index[p]]
    }

    /// `λ^α`: vertex `αS`, component at `eS` equal to `λ(e, αe, f)` with `f` an idempotent
    /// R-related to `α`.
    pub fn dual_principal_cone(&self, alpha: &OpMap) -> Result<ConeOf<Self>> {
        if !alpha.is_singular() {
            return Err(Error::Contract(format!("{alpha} is the identity")));
        }
        let vertex = alpha.kernel();
        let f = idempotent_for_kernel(&vertex)?;
        let mut components = Vec::with_capacity(self.objects.len());
        for e in &self.idempotents {
            components.push(r_morphism_from_triple(e, &alpha.compose(e)?, &f)?);
        }
        Ok(Cone { vertex, components })
    }

    pub fn dual_principal_cones(&self) -> Vec<ConeOf<Self>> {
        self.elements
            .iter()
            .map(|a| self.dual_principal_cone(a).expect("singular"))
            .collect()
    }
}

impl Category for RCategory {
    type Object = OrderedPartition;
    type Morphism = RMorphism;

    fn objects(&self) -> &[OrderedPartition] {
        &self.objects
    }

    fn object_index(&self, c: &OrderedPartition) -> Option<usize> {
        self.index.get(c).copied()
    }

    fn domain(&self, f: &RMorphism) -> OrderedPartition {
        f.source().clone()
    }

    fn codomain(&self, f: &RMorphism) -> OrderedPartition {
        f.target().clone()
    }

    /// Canonical forms of `λ(e, v, f)` over all `v ∈ f·S·e`.
    fn hom(&self, a: &OrderedPartition, b: &OrderedPartition) -> Vec<RMorphism> {
        let (e, f) = (self.idempotent(a), self.idempotent(b));
        let set: BTreeSet<RMorphism> = self
            .elements
            .iter()
            .filter(|v| f.compose(v).unwrap() == **v && v.compose(e).unwrap() == **v)
            .map(|v| r_morphism_from_triple(e, v, f).expect("member of f S e"))
            .collect();
        set.into_iter().collect()
    }

    fn compose(&self, f: &RMorphism, g: &RMorphism) -> Result<RMorphism> {
        r_compose(f, g)
    }

    fn identity(&self, a: &OrderedPartition) -> RMorphism {
        RMorphism(BlockMap::identity(a))
    }

    /// `eS ⊆ fS` iff `ker f` refines `ker e`.
    fn is_subobject(&self, a: &OrderedPartition, b: &OrderedPartition) -> bool {
        b.refines(a)
    }

    /// `λ(e, e, f)`.
    fn inclusion(&self, a: &OrderedPartition, b: &OrderedPartition) -> Option<RMorphism> {
        if !b.refines(a) {
            return None;
        }
        let e = self.idempotent(a);
        r_morphism_from_triple(e, e, self.idempotent(b)).ok()
    }

    /// `λ(f, e·f, e)`.
    fn retraction(&self, a: &OrderedPartition, b: &OrderedPartition) -> Option<RMorphism> {
        if !b.refines(a) {
            return None;
        }
        let (e, f) = (self.idempotent(a), self.idempotent(b));
        r_morphism_from_triple(f, &e.compose(f).ok()?, e).ok()
    }

    fn normal_factorize(&self, f: &RMorphism) -> NormalFactorization<RMorphism> {
        r_normal_factorize(f)
    }

    fn is_isomorphism(&self, f: &RMorphism) -> bool {
        f.0.is_bijective()
    }

    fn idempotent_cone(&self, c: &OrderedPartition) -> ConeOf<Self> {
        self.dual_principal_cone(self.idempotent(c)).expect("singular idempotent")
    }
}

// ---------------------------------------------------------------------------

/// The representation `α ↦ λ^α` of the semigroup by normal cones of the right-ideal category.
///
/// Under `γ·σ = γ * (σ(c_γ))°` the cones satisfy `λ^α · λ^β = λ^{βα}`, so the map is a
/// homomorphism into the opposite of the cone semigroup; `image` carries that opposite
/// multiplication (`image.mul(a, b)` is the cone product of `b` and `a`).
#[derive(Clone, Debug)]
pub struct PhiRepresentation {
    pub category: RCategory,
    pub semigroup: FiniteSemigroup,
    pub cones: Vec<ConeOf<RCategory>>,
    pub image: FiniteSemigroup,
}

impl PhiRepresentation {
    pub fn map(&self) -> ElementMap<'_> {
        ElementMap::new(&self.semigroup, &self.image, (0..self.cones.len()).collect())
            .expect("one cone per element")
    }
}

/// Builds `α ↦ λ^α`. Fails if two elements give the same cone or the image is not closed
/// under cone multiplication.
pub fn phi_representation(n: ChainSize) -> Result<PhiRepresentation> {
    let category = RCategory::new(n);
    let semigroup = FiniteSemigroup::build(category.elements(), |a, b| a.compose(b))?;
    let cones = category.dual_principal_cones();
    let image = cone_semigroup(&category, &cones)?.opposite();
    Ok(PhiRepresentation {
        category,
        semigroup,
        cones,
        image,
    })
}
