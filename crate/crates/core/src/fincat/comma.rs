use std::collections::HashMap;
use std::sync::Arc;

use super::{Arrow, FinCat, FinFunctor, RawCategory};
use crate::error::{Error, Result};

/// The comma category `f/g` with its two projections.
#[derive(Debug, Clone)]
pub struct Comma {
    pub category: Arc<FinCat>,
    pub to_left: FinFunctor,
    pub to_right: FinFunctor,
    /// `(a, b, h)` with `h : f(a) -> g(b)`, one per object.
    pub objects: Vec<(usize, usize, usize)>,
}

/// Objects `(a, b, h : fa -> gb)`; an arrow `(a,b,h) -> (a',b',h')` is a pair
/// `(α, β)` with `f(α) ; h' = h ; g(β)`.
pub fn comma(f: &FinFunctor, g: &FinFunctor) -> Result<Comma> {
    if f.target() != g.target() {
        return Err(Error::TargetMismatch("comma of functors with different targets".into()));
    }
    let (ca, cb, cx) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    for a in 0..ca.n_objects() {
        for b in 0..cb.n_objects() {
            for &h in cx.hom(f.on_object(a), g.on_object(b)) {
                objects.push((a, b, h));
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(a, b, h)| format!("({},{},{})", ca.object_name(a), cb.object_name(b), cx.arrow(h).name))
        .collect();

    let mut arrows = Vec::new();
    let mut data = Vec::new();
    let mut index = HashMap::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &(a, b, h)) in objects.iter().enumerate() {
        for (j, &(a2, b2, h2)) in objects.iter().enumerate() {
            for &alpha in ca.hom(a, a2) {
                for &beta in cb.hom(b, b2) {
                    let left = cx.compose(f.on_arrow(alpha), h2);
                    let right = cx.compose(h, g.on_arrow(beta));
                    if left == right {
                        let k = arrows.len();
                        if i == j && ca.is_identity(alpha) && cb.is_identity(beta) {
                            identity[i] = k;
                        }
                        index.insert((i, j, alpha, beta), k);
                        arrows.push(Arrow::new(
                            format!("({},{}):{}->{}", ca.arrow(alpha).name, cb.arrow(beta).name, i, j),
                            i,
                            j,
                        ));
                        data.push((alpha, beta));
                    }
                }
            }
        }
    }
    let mut compose = Vec::new();
    for (k1, ar1) in arrows.iter().enumerate() {
        for (k2, ar2) in arrows.iter().enumerate().filter(|(_, a)| a.dom == ar1.cod) {
            let (al1, be1) = data[k1];
            let (al2, be2) = data[k2];
            let al = ca.compose(al1, al2).expect("composable");
            let be = cb.compose(be1, be2).expect("composable");
            compose.push((k1, k2, index[&(ar1.dom, ar2.cod, al, be)]));
        }
    }
    let category = Arc::new(FinCat::validate(RawCategory { objects: names, arrows, identity, compose })?);
    let to_left = FinFunctor::new_unchecked(
        category.clone(),
        ca.clone(),
        objects.iter().map(|o| o.0).collect(),
        data.iter().map(|d| d.0).collect(),
    );
    let to_right = FinFunctor::new_unchecked(
        category.clone(),
        cb.clone(),
        objects.iter().map(|o| o.1).collect(),
        data.iter().map(|d| d.1).collect(),
    );
    Ok(Comma { category, to_left, to_right, objects })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn comma_of_identities_on_one_is_one() {
        let o = Arc::new(one());
        let id = FinFunctor::identity(o.clone());
        let c = comma(&id, &id).unwrap();
        assert_eq!(c.category.n_objects(), 1);
        assert_eq!(c.category.n_arrows(), 1);
    }

    #[test]
    fn slice_two_over_one() {
        let t = Arc::new(two());
        let o = Arc::new(one());
        let c = comma(&FinFunctor::identity(t.clone()), &FinFunctor::point(o, t, 1)).unwrap();
        assert_eq!(c.category.n_objects(), 2);
        assert_eq!(c.category.non_identity_arrows().count(), 1);
    }

    #[test]
    fn comma_of_points_without_arrows_is_empty() {
        let t = Arc::new(two());
        let o = Arc::new(one());
        let c = comma(&FinFunctor::point(o.clone(), t.clone(), 1), &FinFunctor::point(o, t, 0)).unwrap();
        assert_eq!(c.category.n_objects(), 0);
    }

    #[test]
    fn target_mismatch() {
        let t = Arc::new(two());
        let v = Arc::new(vee());
        let err = comma(&FinFunctor::identity(t), &FinFunctor::identity(v)).unwrap_err();
        assert!(matches!(err, Error::TargetMismatch(_)));
    }

    #[test]
    fn fibers_of_comma_with_point_are_hom_sets() {
        let x = Arc::new(vee());
        let o = Arc::new(one());
        for y in 0..x.n_objects() {
            let c = comma(&FinFunctor::identity(x.clone()), &FinFunctor::point(o.clone(), x.clone(), y)).unwrap();
            for z in 0..x.n_objects() {
                let fiber = c.objects.iter().filter(|o| o.0 == z).count();
                assert_eq!(fiber, x.hom(z, y).len());
            }
        }
    }
}
