//! The category of ordered partitions.
//!
//! An object stands for `π̄`, the set of monotone maps from the blocks of a non-identity
//! ordered partition `π` to the chain. A morphism `π̄₁ -> π̄₂` is precomposition `η*` with a
//! monotone block map `η: π₂ -> π₁`, so it is stored as `η`. `π̄₁ ⊆ π̄₂` when `π₂` refines `π₁`.

use std::collections::HashMap;
use std::fmt;

use crate::category::{Category, Cone, ConeOf, Functor, NormalFactorization};
use crate::chain::{idempotent_for_kernel, monotone_sequences, BlockMap, ChainSize, OpMap, OrderedPartition};
use crate::error::{Error, Result};
use crate::ideal::{RCategory, RMorphism};

/// `η*: π̄₁ -> π̄₂`, stored as the block map `η: π₂ -> π₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiMorphism(BlockMap);

impl PiMorphism {
    pub fn new(eta: BlockMap) -> Result<Self> {
        if !eta.source().is_non_identity() || !eta.target().is_non_identity() {
            return Err(Error::Domain(format!("{eta} involves the discrete partition")));
        }
        Ok(PiMorphism(eta))
    }

    pub fn eta(&self) -> &BlockMap {
        &self.0
    }

    pub fn source(&self) -> &OrderedPartition {
        self.0.target()
    }

    pub fn target(&self) -> &OrderedPartition {
        self.0.source()
    }

    /// `(α)η* = ηα`.
    pub fn act(&self, alpha: &BarElement) -> Result<BarElement> {
        if alpha.partition != *self.source() {
            return Err(Error::Composition(format!(
                "{} is not an element of the source {}",
                alpha,
                self.source()
            )));
        }
        Ok(BarElement {
            partition: self.target().clone(),
            values: self.0.values().iter().map(|&b| alpha.values[b]).collect(),
        })
    }
}

impl fmt::Display for PiMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi({} -> {}: {})", self.source(), self.target(), self.0)
    }
}

/// A monotone map from the blocks of a partition to the chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarElement {
    partition: OrderedPartition,
    values: Vec<usize>,
}

impl BarElement {
    pub fn new(partition: OrderedPartition, values: Vec<usize>) -> Result<Self> {
        let n = partition.n();
        if values.len() != partition.num_blocks() {
            return Err(Error::Domain("one value per block required".into()));
        }
        if values.iter().any(|&v| v == 0 || v > n) || values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("{values:?} is not a monotone map into 1..={n}")));
        }
        Ok(BarElement { partition, values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// All of `π̄`.
    pub fn enumerate(partition: &OrderedPartition) -> Vec<BarElement> {
        let chain: Vec<usize> = (1..=partition.n()).collect();
        monotone_sequences(partition.num_blocks(), &chain)
            .into_iter()
            .map(|values| BarElement {
                partition: partition.clone(),
                values,
            })
            .collect()
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.partition, self.values)
    }
}

/// `m₁` then `m₂`; the block maps compose in the opposite order.
pub fn pi_compose(first: &PiMorphism, second: &PiMorphism) -> Result<PiMorphism> {
    Ok(PiMorphism(second.0.then(&first.0)?))
}

/// `π̄_p ≤ π̄_q` iff every block of `q` lies in a block of `p`.
pub fn pi_leq(p: &OrderedPartition, q: &OrderedPartition) -> bool {
    q.refines(p)
}

/// For `π̄_p ≤ π̄_q`: the inclusion `v*` (block containment `q -> p`) and the retraction `ζ*`
/// sending each block of `p` to the block of `q` holding its least point.
pub fn pi_inclusion_and_retraction(p: &OrderedPartition, q: &OrderedPartition) -> Result<(PiMorphism, PiMorphism)> {
    if !pi_leq(p, q) {
        return Err(Error::Domain(format!("{q} does not refine {p}")));
    }
    let v = BlockMap::containment(q, p)?;
    let zeta = BlockMap::new(
        p.clone(),
        q.clone(),
        p.blocks().iter().map(|&(lo, _)| q.block_of(lo)).collect(),
    )?;
    Ok((PiMorphism(v), PiMorphism(zeta)))
}

/// A normal factorization `η* = ζ*·u*·v*` together with the two intermediate partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiFactorization {
    /// Fibers of `η`, coarsening the target partition.
    pub sigma: OrderedPartition,
    /// Each image block of `η` absorbs the non-image blocks before it; the last one also
    /// absorbs the tail.
    pub gamma: OrderedPartition,
    pub retraction: PiMorphism,
    pub isomorphism: PiMorphism,
    pub inclusion: PiMorphism,
}

impl From<PiFactorization> for NormalFactorization<PiMorphism> {
    fn from(f: PiFactorization) -> Self {
        NormalFactorization {
            retraction: f.retraction,
            isomorphism: f.isomorphism,
            inclusion: f.inclusion,
        }
    }
}

pub fn factorize_pi(m: &PiMorphism) -> PiFactorization {
    let (pi1, pi2, eta) = (m.source(), m.target(), &m.0);

    let mut sigma_sizes: Vec<usize> = Vec::new();
    let mut last = None;
    for (&size, &img) in pi2.block_sizes().iter().zip(eta.values()) {
        if last == Some(img) {
            *sigma_sizes.last_mut().unwrap() += size;
        } else {
            sigma_sizes.push(size);
            last = Some(img);
        }
    }
    let sigma = OrderedPartition::new(sigma_sizes).expect("coarsening");

    let mut image: Vec<usize> = eta.values().to_vec();
    image.dedup();
    let a = pi1.block_sizes();
    let mut gamma_sizes = Vec::with_capacity(image.len());
    let mut start = 0;
    for (j, &i) in image.iter().enumerate() {
        let end = if j + 1 == image.len() { a.len() } else { i + 1 };
        gamma_sizes.push(a[start..end].iter().sum());
        start = end;
    }
    let gamma = OrderedPartition::new(gamma_sizes).expect("coarsening");

    let zeta = BlockMap::new(gamma.clone(), pi1.clone(), image.clone()).expect("monotone");
    let u = BlockMap::new(sigma.clone(), gamma.clone(), (0..image.len()).collect()).expect("bijection");
    let v = BlockMap::containment(pi2, &sigma).expect("fibers are unions of blocks");
    PiFactorization {
        sigma,
        gamma,
        retraction: PiMorphism(zeta),
        isomorphism: PiMorphism(u),
        inclusion: PiMorphism(v),
    }
}

/// The category of non-identity ordered partitions.
#[derive(Clone, Debug)]
pub struct PiCategory {
    n: ChainSize,
    objects: Vec<OrderedPartition>,
    index: HashMap<OrderedPartition, usize>,
}

impl PiCategory {
    pub fn new(n: ChainSize) -> Self {
        let objects = OrderedPartition::non_identity(n);
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        PiCategory { n, objects, index }
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    /// The cone `ū` with vertex `π̄`: its component at `π̄_α` is `u_α*`, where
    /// `u_α: A_i ↦ [(A_i)u]_{π_α}`. `u` must be constant on each block of `π` and send each
    /// block into itself.
    pub fn idempotent_pi_cone(&self, pi: &OrderedPartition, u: &OpMap) -> Result<ConeOf<Self>> {
        if !pi.is_non_identity() || u.n() != pi.n() {
            return Err(Error::Contract(format!("{pi} is not an object for {u}")));
        }
        let mut section = Vec::with_capacity(pi.num_blocks());
        for &(lo, hi) in &pi.blocks() {
            let v = u.apply(lo);
            if (lo..=hi).any(|x| u.apply(x) != v) {
                return Err(Error::Contract(format!("{u} is not constant on block {lo}..={hi}")));
            }
            if !(lo..=hi).contains(&v) {
                return Err(Error::Contract(format!("{u} sends block {lo}..={hi} outside itself")));
            }
            section.push(v);
        }
        let components = self
            .objects
            .iter()
            .map(|target| {
                BlockMap::new(pi.clone(), target.clone(), section.iter().map(|&v| target.block_of(v)).collect())
                    .map(PiMorphism)
            })
            .collect::<Result<_>>()?;
        Ok(Cone {
            vertex: pi.clone(),
            components,
        })
    }
}

impl Category for PiCategory {
    type Object = OrderedPartition;
    type Morphism = PiMorphism;

    fn objects(&self) -> &[OrderedPartition] {
        &self.objects
    }

    fn object_index(&self, c: &OrderedPartition) -> Option<usize> {
        self.index.get(c).copied()
    }

    fn domain(&self, f: &PiMorphism) -> OrderedPartition {
        f.source().clone()
    }

    fn codomain(&self, f: &PiMorphism) -> OrderedPartition {
        f.target().clone()
    }

    fn hom(&self, a: &OrderedPartition, b: &OrderedPartition) -> Vec<PiMorphism> {
        BlockMap::enumerate(b, a).into_iter().map(PiMorphism).collect()
    }

    fn compose(&self, f: &PiMorphism, g: &PiMorphism) -> Result<PiMorphism> {
        pi_compose(f, g)
    }

    fn identity(&self, a: &OrderedPartition) -> PiMorphism {
        PiMorphism(BlockMap::identity(a))
    }

    fn is_subobject(&self, a: &OrderedPartition, b: &OrderedPartition) -> bool {
        pi_leq(a, b)
    }

    fn inclusion(&self, a: &OrderedPartition, b: &OrderedPartition) -> Option<PiMorphism> {
        pi_inclusion_and_retraction(a, b).ok().map(|(v, _)| v)
    }

    fn retraction(&self, a: &OrderedPartition, b: &OrderedPartition) -> Option<PiMorphism> {
        pi_inclusion_and_retraction(a, b).ok().map(|(_, z)| z)
    }

    fn normal_factorize(&self, f: &PiMorphism) -> NormalFactorization<PiMorphism> {
        factorize_pi(f).into()
    }

    fn is_isomorphism(&self, f: &PiMorphism) -> bool {
        f.0.is_bijective()
    }

    fn idempotent_cone(&self, c: &OrderedPartition) -> ConeOf<Self> {
        let u = idempotent_for_kernel(c).expect("non-identity object");
        self.idempotent_pi_cone(c, &u).expect("least points form a cross-section")
    }
}

/// `G: R -> Π_o`, `eS ↦ π̄_e`, `λ(e, v, f) ↦ η_v*`.
pub struct FunctorG<'a> {
    pub source: &'a RCategory,
    pub target: &'a PiCategory,
}

impl<'a> FunctorG<'a> {
    pub fn new(source: &'a RCategory, target: &'a PiCategory) -> Self {
        FunctorG { source, target }
    }
}

impl Functor for FunctorG<'_> {
    type Source = RCategory;
    type Target = PiCategory;

    fn source(&self) -> &RCategory {
        self.source
    }

    fn target(&self) -> &PiCategory {
        self.target
    }

    fn map_object(&self, c: &OrderedPartition) -> OrderedPartition {
        c.clone()
    }

    fn map_morphism(&self, f: &RMorphism) -> PiMorphism {
        PiMorphism(f.eta().clone())
    }
}
