//! Randomized invariants over small spaces, with oracles written directly
//! against the raw data.

use std::sync::Arc;

use emcat::comprehensive::CatInstance;
use emcat::emcore::{in_e, EmInstance};
use emcat::fincat::{fixtures, FinCat};
use emcat::instances::{FinFn, FinSetInstance, Poset, PosInstance, PosSystem};
use emcat::text::{emit_fincat, emit_poset, parse_fincat, parse_poset};
use emcat::theory::{adherence, is_adjunctible, is_dense, is_fully_faithful};
use emcat::Budget;
use proptest::prelude::*;

/// A poset on `n` elements from a strictly upper-triangular relation.
fn poset(n: usize, bits: u32) -> Poset {
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Poset::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
}

fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max, any::<u32>()).prop_map(|(n, b)| poset(n, b))
}

fn arb_fn(max: usize) -> impl Strategy<Value = FinFn> {
    (0..=max, 1..=max).prop_flat_map(|(a, b)| prop::collection::vec(0..b, a).prop_map(move |m| FinFn::new(b, m).unwrap()))
}

/// Pairs `(f, g)` with `f` ending where `g` starts, counted from the arrow list.
fn composable_pairs_oracle(c: &FinCat) -> usize {
    let n = c.n_arrows();
    (0..n).flat_map(|f| (0..n).map(move |g| (f, g))).filter(|&(f, g)| c.cod(f) == c.dom(g)).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poset_text_round_trip(p in arb_poset(6)) {
        let back = parse_poset(&emit_poset(&p).unwrap(), 1).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poset_category_round_trip(p in arb_poset(5)) {
        let c = p.to_fincat();
        prop_assert_eq!(Poset::from_fincat(&c).unwrap(), p.clone());
        let back = parse_fincat(&emit_fincat(&c).unwrap(), 1).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn maps_from_three_are_composable_pairs(p in arb_poset(4)) {
        let cat = CatInstance::new();
        let x = Arc::new(p.to_fincat());
        let n = cat.maps(&Arc::new(fixtures::three()), &x, &Budget::default()).unwrap().len();
        prop_assert_eq!(n, composable_pairs_oracle(&x));
    }

    #[test]
    fn cat_factorization_recomposes(p in arb_poset(3), q in arb_poset(3), pick in any::<prop::sample::Index>()) {
        let cat = CatInstance::new();
        let budget = Budget::default();
        let (a, b) = (Arc::new(p.to_fincat()), Arc::new(q.to_fincat()));
        let maps = cat.maps(&a, &b, &budget).unwrap();
        prop_assume!(!maps.is_empty());
        let f = &maps[pick.index(maps.len())];
        let fac = cat.factorize(f).unwrap();
        prop_assert_eq!(&cat.compose(&fac.e, &fac.m), f);
        prop_assert!(cat.in_m(&fac.m));
        prop_assert!(in_e(&cat, &fac.e).unwrap());
        prop_assert!(cat.is_iso(&cat.factorize(&fac.m).unwrap().e));
    }

    #[test]
    fn pos_factorization_recomposes(p in arb_poset(4), q in arb_poset(4), pick in any::<prop::sample::Index>()) {
        for system in [PosSystem::LowerSet, PosSystem::Comprehensive] {
            let pos = PosInstance::new(system);
            let maps = pos.maps(&Arc::new(p.clone()), &Arc::new(q.clone()), &Budget::default()).unwrap();
            prop_assume!(!maps.is_empty());
            let f = &maps[pick.index(maps.len())];
            let fac = pos.factorize(f).unwrap();
            prop_assert_eq!(&pos.compose(&fac.e, &fac.m), f);
            prop_assert!(pos.in_m(&fac.m));
            prop_assert!(in_e(&pos, &fac.e).unwrap());
        }
    }

    #[test]
    fn finset_map_classes(f in arb_fn(4)) {
        let fin = FinSetInstance::new();
        let budget = Budget::default();
        let (ax, ay) = (adherence(&fin, &f.source, &budget).unwrap(), adherence(&fin, &f.target, &budget).unwrap());
        let image: std::collections::BTreeSet<_> = f.map.iter().collect();
        let surjective = image.len() == f.target;
        let injective = image.len() == f.source;
        prop_assert_eq!(is_dense(&fin, &ay, &f, &budget).unwrap(), surjective || (f.source == 0 && f.target == 1));
        prop_assert_eq!(is_fully_faithful(&fin, &ax, &ay, &f, &budget).unwrap(), injective);
        prop_assert_eq!(is_adjunctible(&fin, &ax, &ay, &f).unwrap().is_some(), injective && surjective);
        let fac = fin.factorize(&f).unwrap();
        prop_assert_eq!(fin.compose(&fac.e, &fac.m), f);
    }
}
