//! The category of proper subsets of the chain with order-preserving maps between them,
//! and its isomorphism with the left-ideal category.

use std::collections::HashMap;
use std::fmt;

use crate::category::{Category, Cone, ConeOf, Functor, NormalFactorization};
use crate::chain::{idempotent_for_image, retraction_for_inclusion, ChainSize, OpMap, SubMap, Subset};
use crate::error::{Error, Result};
use crate::ideal::{LCategory, LMorphism};

/// A monotone map between two proper subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PMorphism(SubMap);

impl PMorphism {
    pub fn new(map: SubMap) -> Result<Self> {
        if !map.domain().is_proper() || !map.codomain().is_proper() {
            return Err(Error::Domain(format!("{map} has a non-proper end")));
        }
        Ok(PMorphism(map))
    }

    pub fn map(&self) -> &SubMap {
        &self.0
    }
}

impl fmt::Display for PMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "po({})", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct PoCategory {
    n: ChainSize,
    objects: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl PoCategory {
    pub fn new(n: ChainSize) -> Self {
        let objects = Subset::proper_subsets(n);
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        PoCategory { n, objects, index }
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    /// The cone with vertex `a` whose component at `b` is `u` restricted to `b`, for a monotone
    /// `u` with image inside `a` that fixes `a` pointwise.
    pub fn vertex_cone(&self, a: &Subset, u: &OpMap) -> Result<ConeOf<Self>> {
        if !a.is_proper() {
            return Err(Error::Contract(format!("{a} is not a proper subset")));
        }
        if let Some(&x) = a.elements().iter().find(|&&x| u.apply(x) != x) {
            return Err(Error::Contract(format!("{u} moves {x} in {a}")));
        }
        if !u.image().is_subset_of(a) {
            return Err(Error::Contract(format!("image of {u} leaves {a}")));
        }
        self.restriction_cone(a, u)
    }

    /// The cone of `α`: vertex `Im α`, component at `b` the restriction of `α`.
    pub fn cone_of(&self, alpha: &OpMap) -> Result<ConeOf<Self>> {
        if !alpha.is_singular() {
            return Err(Error::Contract(format!("{alpha} is the identity")));
        }
        self.restriction_cone(&alpha.image(), alpha)
    }

    fn restriction_cone(&self, vertex: &Subset, u: &OpMap) -> Result<ConeOf<Self>> {
        let components = self
            .objects
            .iter()
            .map(|b| u.restrict_into(b, vertex).map(PMorphism))
            .collect::<Result<_>>()?;
        Ok(Cone {
            vertex: vertex.clone(),
            components,
        })
    }

    /// Reads a normal cone back as a map: `(x)α` is the value of the component at `{x}`.
    pub fn cone_to_opmap(&self, cone: &ConeOf<Self>) -> Result<OpMap> {
        let (normal, _) = crate::category::is_normal(self, cone)?;
        if !normal {
            return Err(Error::Contract("cone is not normal".into()));
        }
        let images = (1..=self.n.get())
            .map(|x| {
                let singleton = Subset::singleton(self.n, x).expect("point of the chain");
                cone.components[self.index[&singleton]].0.values()[0]
            })
            .collect();
        OpMap::new(images)
    }
}

impl Category for PoCategory {
    type Object = Subset;
    type Morphism = PMorphism;

    fn objects(&self) -> &[Subset] {
        &self.objects
    }

    fn object_index(&self, c: &Subset) -> Option<usize> {
        self.index.get(c).copied()
    }

    fn domain(&self, f: &PMorphism) -> Subset {
        f.0.domain().clone()
    }

    fn codomain(&self, f: &PMorphism) -> Subset {
        f.0.codomain().clone()
    }

    fn hom(&self, a: &Subset, b: &Subset) -> Vec<PMorphism> {
        SubMap::enumerate(a, b).into_iter().map(PMorphism).collect()
    }

    fn compose(&self, f: &PMorphism, g: &PMorphism) -> Result<PMorphism> {
        Ok(PMorphism(f.0.compose(&g.0)?))
    }

    fn identity(&self, a: &Subset) -> PMorphism {
        PMorphism(SubMap::identity(a))
    }

    fn is_subobject(&self, a: &Subset, b: &Subset) -> bool {
        a.is_subset_of(b)
    }

    fn inclusion(&self, a: &Subset, b: &Subset) -> Option<PMorphism> {
        SubMap::inclusion(a, b).ok().map(PMorphism)
    }

    fn retraction(&self, a: &Subset, b: &Subset) -> Option<PMorphism> {
        retraction_for_inclusion(a, b).ok().map(PMorphism)
    }

    /// Retraction of the domain onto the least point of each fiber, the induced bijection onto
    /// the image, and the inclusion of the image.
    fn normal_factorize(&self, f: &PMorphism) -> NormalFactorization<PMorphism> {
        let map = &f.0;
        let mut section = Vec::new();
        for (&x, &v) in map.domain().elements().iter().zip(map.values()) {
            if section.last().map(|&(_, w)| w) != Some(v) {
                section.push((x, v));
            }
        }
        let n = self.n;
        let cross = Subset::new(n, section.iter().map(|&(x, _)| x).collect()).expect("sorted");
        let image = map.image();
        let retraction = SubMap::new(
            map.domain().clone(),
            cross.clone(),
            map.values()
                .iter()
                .map(|&v| section.iter().find(|&&(_, w)| w == v).unwrap().0)
                .collect(),
        )
        .expect("monotone");
        let isomorphism = map.restrict(&cross).and_then(|m| m.with_codomain(&image)).expect("bijection");
        NormalFactorization {
            retraction: PMorphism(retraction),
            isomorphism: PMorphism(isomorphism),
            inclusion: PMorphism(SubMap::inclusion(&image, map.codomain()).expect("image inside codomain")),
        }
    }

    fn is_isomorphism(&self, f: &PMorphism) -> bool {
        f.0.is_bijective()
    }

    fn idempotent_cone(&self, c: &Subset) -> ConeOf<Self> {
        let u = idempotent_for_image(c).expect("proper object");
        self.vertex_cone(c, &u).expect("idempotent fixes its image")
    }
}

/// `F: L -> P_o`, `Se_A ↦ A`, `ρ(e_A, u, e_B) ↦ u|_A`.
pub struct FunctorF<'a> {
    pub source: &'a LCategory,
    pub target: &'a PoCategory,
}

impl<'a> FunctorF<'a> {
    pub fn new(source: &'a LCategory, target: &'a PoCategory) -> Self {
        FunctorF { source, target }
    }
}

impl Functor for FunctorF<'_> {
    type Source = LCategory;
    type Target = PoCategory;

    fn source(&self) -> &LCategory {
        self.source
    }

    fn target(&self) -> &PoCategory {
        self.target
    }

    fn map_object(&self, c: &Subset) -> Subset {
        c.clone()
    }

    fn map_morphism(&self, f: &LMorphism) -> PMorphism {
        PMorphism(f.action().clone())
    }
}
