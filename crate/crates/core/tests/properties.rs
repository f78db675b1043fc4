use std::sync::OnceLock;

use oxn_core::category::{cone_mul, is_normal, validate_cone, Category};
use oxn_core::chain::{
    enumerate_oxn, green, idempotent_for_image, idempotent_for_kernel, retraction_for_inclusion,
    separator_idempotent, separator_point,
};
use oxn_core::ideal::{l_compose, r_compose};
use oxn_core::partition::{factorize_pi, pi_compose};
use oxn_core::semigroup::FiniteSemigroup;
use oxn_core::{
    BlockMap, ChainSize, Green, LCategory, LMorphism, OpMap, OrderedPartition, PiCategory, PiMorphism, PoCategory,
    RCategory, RMorphism, SubMap, Subset,
};
use proptest::prelude::*;
use proptest::sample::select;

fn size(k: usize) -> ChainSize {
    ChainSize::new(k).unwrap()
}

fn opmap(max_n: usize) -> impl Strategy<Value = OpMap> {
    (3..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(1..=n, n))
        .prop_filter_map("identity", |mut v| {
            v.sort_unstable();
            OpMap::new(v).ok().filter(|f| f.is_singular())
        })
}

fn opmap_pair(max_n: usize) -> impl Strategy<Value = (OpMap, OpMap)> {
    (3..=max_n).prop_flat_map(|n| (opmap_of(n), opmap_of(n)))
}

fn opmap_triple(max_n: usize) -> impl Strategy<Value = (OpMap, OpMap, OpMap)> {
    (3..=max_n).prop_flat_map(|n| (opmap_of(n), opmap_of(n), opmap_of(n)))
}

fn opmap_of(n: usize) -> impl Strategy<Value = OpMap> {
    proptest::collection::vec(1..=n, n).prop_filter_map("identity", |mut v| {
        v.sort_unstable();
        OpMap::new(v).ok().filter(|f| f.is_singular())
    })
}

fn partition(max_n: usize) -> impl Strategy<Value = OrderedPartition> {
    (3..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(1..=n, n))
        .prop_map(|mut labels| {
            labels.sort_unstable();
            OrderedPartition::from_labels(&labels).unwrap()
        })
}

struct Tables {
    elems: Vec<OpMap>,
    table: FiniteSemigroup,
}

fn tables(k: usize) -> &'static Tables {
    static CACHE: OnceLock<Vec<Tables>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (3..=5)
            .map(|k| {
                let elems = enumerate_oxn(size(k));
                let table = FiniteSemigroup::build(&elems, |a, b| a.compose(b)).unwrap();
                Tables { elems, table }
            })
            .collect()
    });
    &all[k - 3]
}

fn categories(k: usize) -> &'static (LCategory, RCategory, PoCategory, PiCategory) {
    static CACHE: OnceLock<Vec<(LCategory, RCategory, PoCategory, PiCategory)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (3..=4)
            .map(|k| {
                let n = size(k);
                (LCategory::new(n), RCategory::new(n), PoCategory::new(n), PiCategory::new(n))
            })
            .collect()
    });
    &all[k - 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_stays_in_the_semigroup((f, g) in opmap_pair(9)) {
        let h = f.compose(&g).unwrap();
        prop_assert!(h.is_singular());
        prop_assert!(h.images().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(h.rank() <= f.rank().min(g.rank()));
    }

    #[test]
    fn composition_is_associative((f, g, h) in opmap_triple(9)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kernel_blocks_are_intervals_counted_by_rank(f in opmap(12)) {
        let ker = f.kernel();
        prop_assert_eq!(ker.num_blocks(), f.rank());
        prop_assert_eq!(f.image().len(), f.rank());
        prop_assert_eq!(ker.block_sizes().iter().sum::<usize>(), f.n());
        for &(lo, hi) in &ker.blocks() {
            prop_assert!((lo..=hi).all(|x| f.apply(x) == f.apply(lo)));
            if hi < f.n() {
                prop_assert!(f.apply(hi + 1) != f.apply(lo));
            }
        }
    }

    #[test]
    fn canonical_idempotents(f in opmap(12)) {
        let e = idempotent_for_image(&f.image()).unwrap();
        prop_assert!(e.is_idempotent());
        prop_assert_eq!(e.image(), f.image());
        prop_assert!(green(&e, &f, Green::L).unwrap());
        let g = idempotent_for_kernel(&f.kernel()).unwrap();
        prop_assert!(g.is_idempotent());
        prop_assert_eq!(g.kernel(), f.kernel());
        prop_assert!(green(&g, &f, Green::R).unwrap());
    }

    #[test]
    fn green_agrees_with_ideals(k in 3usize..=5, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let t = tables(k);
        let (a, b) = (a.index(t.elems.len()), b.index(t.elems.len()));
        let ideals = t.table.ideals();
        for rel in Green::ALL {
            prop_assert_eq!(green(&t.elems[a], &t.elems[b], rel).unwrap(), ideals.related(a, b, rel));
        }
    }

    #[test]
    fn separators_split_r_classes((f, g) in opmap_pair(10)) {
        match separator_point(&f, &g) {
            Some(x) => {
                let e = separator_idempotent(x, f.chain_size()).unwrap();
                prop_assert!(e.is_idempotent());
                prop_assert_ne!(f.compose(&e).unwrap(), g.compose(&e).unwrap());
            }
            None => prop_assert!(f == g || f.kernel() != g.kernel()),
        }
    }

    #[test]
    fn refinement_is_a_partial_order(p in partition(8), q in partition(8)) {
        prop_assert!(p.refines(&p));
        if p.n() == q.n() && p.refines(&q) && q.refines(&p) {
            prop_assert_eq!(&p, &q);
        }
        prop_assert!(OrderedPartition::discrete(p.chain_size()).refines(&p));
    }

    #[test]
    fn restriction_then_extension_agrees(f in opmap(8), mask in any::<u16>()) {
        let n = f.chain_size();
        let elems: Vec<usize> = (1..=f.n()).filter(|x| mask & (1 << (x - 1)) != 0).collect();
        prop_assume!(!elems.is_empty());
        let a = Subset::new(n, elems).unwrap();
        let r = f.restrict(&a);
        let ext = r.extend();
        for &x in a.elements() {
            prop_assert_eq!(ext.apply(x), f.apply(x));
        }
    }

    #[test]
    fn inclusions_split(f in opmap(8), mask in any::<u16>()) {
        let a = f.image();
        let sub: Vec<usize> = a.elements().iter().copied().enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x).collect();
        prop_assume!(!sub.is_empty());
        let s = Subset::new(f.chain_size(), sub).unwrap();
        let q = retraction_for_inclusion(&s, &a).unwrap();
        let j = SubMap::inclusion(&s, &a).unwrap();
        prop_assert!(j.compose(&q).unwrap().is_identity());
    }
}

fn morphism_strategy<C: Category + 'static>(cat: &'static C) -> impl Strategy<Value = C::Morphism>
where
    C::Morphism: 'static,
{
    select(cat.morphisms())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn l_composition_is_associative(k in 3usize..=4, seed in any::<u64>()) {
        let (l, ..) = categories(k);
        let ms = l.morphisms();
        let f = &ms[(seed % ms.len() as u64) as usize];
        let gs: Vec<&LMorphism> = ms.iter().filter(|g| g.source() == f.target()).collect();
        let g = gs[(seed as usize / 7) % gs.len()];
        let hs: Vec<&LMorphism> = ms.iter().filter(|h| h.source() == g.target()).collect();
        let h = hs[(seed as usize / 11) % hs.len()];
        let left = l_compose(&l_compose(f, g).unwrap(), h).unwrap();
        let right = l_compose(f, &l_compose(g, h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn r_composition_is_associative(k in 3usize..=4, seed in any::<u64>()) {
        let (_, r, ..) = categories(k);
        let ms = r.morphisms();
        let f = &ms[(seed % ms.len() as u64) as usize];
        let gs: Vec<&RMorphism> = ms.iter().filter(|g| g.source() == f.target()).collect();
        let g = gs[(seed as usize / 7) % gs.len()];
        let hs: Vec<&RMorphism> = ms.iter().filter(|h| h.source() == g.target()).collect();
        let h = hs[(seed as usize / 11) % hs.len()];
        let left = r_compose(&r_compose(f, g).unwrap(), h).unwrap();
        let right = r_compose(f, &r_compose(g, h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn po_factorizations_recompose(m in morphism_strategy(&categories(4).2)) {
        let p = &categories(4).2;
        let nf = p.normal_factorize(&m);
        let back = p.compose(&p.compose(&nf.retraction, &nf.isomorphism).unwrap(), &nf.inclusion).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn pi_factorization_coarsens(m in morphism_strategy(&categories(4).3)) {
        let f = factorize_pi(&m);
        prop_assert!(m.target().refines(&f.sigma));
        prop_assert!(m.source().refines(&f.gamma));
        prop_assert_eq!(f.sigma.num_blocks(), f.gamma.num_blocks());
        let back = pi_compose(&pi_compose(&f.retraction, &f.isomorphism).unwrap(), &f.inclusion).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn pi_composition_is_associative(k in 3usize..=4, seed in any::<u64>()) {
        let pi = &categories(k).3;
        let ms = pi.morphisms();
        let f = &ms[(seed % ms.len() as u64) as usize];
        let gs: Vec<&PiMorphism> = ms.iter().filter(|g| g.source() == f.target()).collect();
        let g = gs[(seed as usize / 7) % gs.len()];
        let hs: Vec<&PiMorphism> = ms.iter().filter(|h| h.source() == g.target()).collect();
        let h = hs[(seed as usize / 11) % hs.len()];
        let left = pi_compose(&pi_compose(f, g).unwrap(), h).unwrap();
        let right = pi_compose(f, &pi_compose(g, h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn principal_cones_are_normal_and_multiply((a, b) in opmap_pair(4)) {
        let (l, r, ..) = categories(a.n());
        let (ca, cb) = (l.principal_cone(&a).unwrap(), l.principal_cone(&b).unwrap());
        prop_assert!(validate_cone(l, &ca));
        prop_assert!(is_normal(l, &ca).unwrap().0);
        prop_assert_eq!(cone_mul(l, &ca, &cb).unwrap(), l.principal_cone(&a.compose(&b).unwrap()).unwrap());
        let (da, db) = (r.dual_principal_cone(&a).unwrap(), r.dual_principal_cone(&b).unwrap());
        prop_assert!(is_normal(r, &da).unwrap().0);
        prop_assert_eq!(cone_mul(r, &da, &db).unwrap(), r.dual_principal_cone(&b.compose(&a).unwrap()).unwrap());
    }

    #[test]
    fn block_maps_compose_associatively(p in partition(6)) {
        let n = p.chain_size();
        let parts = OrderedPartition::all(n);
        let q = parts.iter().find(|q| p.refines(q) && **q != p).cloned().unwrap_or_else(|| p.clone());
        let v = BlockMap::containment(&p, &q).unwrap();
        let id_p = BlockMap::identity(&p);
        let id_q = BlockMap::identity(&q);
        prop_assert_eq!(id_p.then(&v).unwrap(), v.clone());
        prop_assert_eq!(v.then(&id_q).unwrap(), v);
    }
}
