use std::sync::Arc;

use super::*;
use crate::comprehensive::CatInstance;
use crate::emcore::iso_over;
use crate::fincat::{find_isomorphism, fixtures::*, FinFunctor};

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn b() -> Budget {
    Budget::default()
}

#[test]
fn adherence_of_two_is_two() {
    let cat = CatInstance::new();
    let adh = adherence(&cat, &arc(two()), &b()).unwrap();
    assert!(find_isomorphism(&adh.category, &arc(two()), &b()).unwrap().is_some());
}

#[test]
fn neighborhood_is_slice() {
    let cat = CatInstance::new();
    let x = arc(three());
    for y in 0..3 {
        let nb = neighborhood(&cat, &cat.point(&x, y)).unwrap();
        let slice = crate::fincat::comma(&FinFunctor::identity(x.clone()), &cat.point(&x, y)).unwrap().to_left;
        assert!(iso_over(&cat, &nb.map, &slice, &b()).unwrap().is_some());
    }
}

#[test]
fn colimit_of_d2_into_two_is_terminal_point() {
    let cat = CatInstance::new();
    let t2 = arc(two());
    let adh = adherence(&cat, &t2, &b()).unwrap();
    let p = FinFunctor::new(arc(discrete(2)), t2, vec![0, 1], vec![0, 1]).unwrap();
    let col = colimit(&cat, &adh, &p, &b()).unwrap().unwrap();
    assert_eq!(col.vertex, 1);
    let direct = colimit_direct(&cat, &adh, &p, &b()).unwrap().unwrap();
    assert_eq!(direct.vertex, 1);
    assert!(!is_absolute_colimit(&cat, &adh, &p, 1, &b()).unwrap());
    let kernel = kernel_cone(&cat, &adh, &col.cone, &b()).unwrap();
    assert_eq!(kernel.base.source().n_objects(), 3);
}

#[test]
fn colimit_of_parallel_pair_inclusion_does_not_exist() {
    // D2 -> PAR hitting both objects has cocone vertex b, but two of them
    let cat = CatInstance::new();
    let par = arc(parallel_pair());
    let adh = adherence(&cat, &par, &b()).unwrap();
    let p = FinFunctor::new(arc(discrete(2)), par, vec![0, 1], vec![0, 1]).unwrap();
    assert!(colimit(&cat, &adh, &p, &b()).unwrap().is_none());
}

#[test]
fn final_domain_point_gives_absolute_colimit() {
    let cat = CatInstance::new();
    let x = arc(vee());
    let adh = adherence(&cat, &x, &b()).unwrap();
    let p = crate::comprehensive::thin_functor(&arc(two()), &x, vec![0, 2]);
    let col = colimit(&cat, &adh, &p, &b()).unwrap().unwrap();
    assert_eq!(col.vertex, 2);
    assert!(is_absolute_colimit(&cat, &adh, &p, 2, &b()).unwrap());
}

#[test]
fn empty_base_colimit_needs_initial_point() {
    let cat = CatInstance::new();
    for (x, expected) in [(arc(two()), Some(0)), (arc(discrete(2)), None)] {
        let adh = adherence(&cat, &x, &b()).unwrap();
        let p = cat.from_initial(&x);
        assert_eq!(colimit(&cat, &adh, &p, &b()).unwrap().map(|c| c.vertex), expected);
    }
}

#[test]
fn universal_displacement_along_t() {
    let cat = CatInstance::new();
    let (o, t2) = (arc(one()), arc(two()));
    let t = cat.point(&t2, 1);
    let adh = adherence(&cat, &t2, &b()).unwrap();
    assert!(universal_displacement(&cat, &t, &adh.neighborhoods[1]).unwrap().is_some());
    assert!(universal_displacement(&cat, &t, &adh.neighborhoods[0]).unwrap().is_none());
    let adh_one = adherence(&cat, &o, &b()).unwrap();
    assert!(is_adjunctible(&cat, &adh_one, &adh, &t).unwrap().is_none());
    // ! : TWO -> ONE has the right adjoint t
    let bang = cat.to_terminal(&t2);
    assert_eq!(is_adjunctible(&cat, &adh, &adh_one, &bang).unwrap(), Some(vec![1]));
    let over_x = cat.discrete_spaces(&t2, 2, &b()).unwrap();
    let over_y = cat.discrete_spaces(&o, 2, &b()).unwrap();
    assert_eq!(find_right_adjoint(&cat, &bang, &over_x, &over_y, &b()).unwrap(), Some(t));
}

#[test]
fn full_inclusion_is_fully_faithful_and_t_is_not_dense() {
    let cat = CatInstance::new();
    let (t2, t3) = (arc(two()), arc(three()));
    let incl = crate::comprehensive::thin_functor(&t2, &t3, vec![0, 2]);
    let (a2, a3) = (adherence(&cat, &t2, &b()).unwrap(), adherence(&cat, &t3, &b()).unwrap());
    assert!(is_fully_faithful(&cat, &a2, &a3, &incl, &b()).unwrap());
    assert!(!is_dense(&cat, &a3, &incl, &b()).unwrap());
    let ident = FinFunctor::identity(t3.clone());
    assert!(is_dense(&cat, &a3, &ident, &b()).unwrap());
    let s = cat.point(&t2, 0);
    let a1 = adherence(&cat, cat.one(), &b()).unwrap();
    assert!(is_fully_faithful(&cat, &a1, &a2, &s, &b()).unwrap());
    assert!(!is_dense(&cat, &a2, &s, &b()).unwrap());
}

#[test]
fn image_cone_under_identity_is_unchanged() {
    let cat = CatInstance::new();
    let x = arc(vee());
    let adh = adherence(&cat, &x, &b()).unwrap();
    let p = FinFunctor::new(arc(discrete(2)), x.clone(), vec![0, 1], vec![0, 1]).unwrap();
    let col = colimit(&cat, &adh, &p, &b()).unwrap().unwrap();
    let id = FinFunctor::identity(x);
    let img = image_cone(&cat, &adh, &adh, &id, &col.kernel, &b()).unwrap();
    assert_eq!(img.vertex, col.vertex);
    assert!(is_colimiting(&cat, &adh, &img, &b()).unwrap());
    assert!(preserves_colimit(&cat, &adh, &adh, &id, &col.kernel, &b()).unwrap());
}

#[test]
fn dual1_on_points_of_three() {
    let cat = CatInstance::new();
    let x = arc(three());
    for i in 0..3 {
        for j in 0..3 {
            let r = check_dual1(&cat, &cat.point(&x, i), &cat.point(&x, j)).unwrap();
            assert!(r.holds(), "{i} {j}: {r:?}");
            assert_eq!(r.left, usize::from(i <= j));
        }
    }
}

#[test]
fn reflection_formula_on_vee() {
    let cat = CatInstance::new();
    let x = arc(vee());
    let p = FinFunctor::new(arc(discrete(2)), x.clone(), vec![0, 1], vec![0, 1]).unwrap();
    for y in 0..3 {
        assert!(reflection_formula_check(&cat, &p, &cat.point(&x, y)).unwrap().holds());
    }
}

#[test]
fn product_of_points_in_two() {
    let cat = CatInstance::new();
    let t2 = arc(two());
    let (p0, p1) = (cat.point(&t2, 0), cat.point(&t2, 1));
    let u = product_of_points(&cat, &p0, &p1).unwrap().unwrap();
    assert_eq!(u.point, p0);
    let d2 = arc(discrete(2));
    assert!(product_of_points(&cat, &cat.point(&d2, 0), &cat.point(&d2, 1)).unwrap().is_none());
}
