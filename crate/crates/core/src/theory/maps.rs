//! Properties of a map `f : X -> Y` read through the adjunction
//! `∃_f ⊣ Δ_f`: universal displacements, adjoints, density and
//! full-faithfulness.

use serde::Serialize;

use super::{continuation, is_colimiting, neighborhood, Adherence, Cone, Neighborhood};
use crate::budget::Budget;
use crate::emcore::{factor_through, in_e, iso_over, product, EmInstance};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalDisplacement<M> {
    /// The point `x` of the domain.
    pub point: M,
    /// The final point of the total of `Δ_f ν(y)` over `x`.
    pub final_point: M,
    /// The induced point of the total of `ν(y)` over `fx`, i.e. the
    /// displacement from `fx` to `y`.
    pub displacement: M,
}

/// A final point of the total of `Δ_f ν(y)`, if there is one.
pub fn universal_displacement<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    ny: &Neighborhood<I::Map>,
) -> Result<Option<UniversalDisplacement<I::Map>>> {
    let pb = inst.pullback(&ny.map, f);
    for e in inst.points(&inst.source(&pb.to_a)) {
        if in_e(inst, &e)? {
            return Ok(Some(UniversalDisplacement {
                point: inst.compose(&e, &pb.to_a),
                displacement: inst.compose(&e, &pb.to_b),
                final_point: e,
            }));
        }
    }
    Ok(None)
}

/// The point map `δ_f` from points of `Y` to points of `X`, when every point
/// of `Y` has a universal displacement.
pub fn is_adjunctible<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
) -> Result<Option<Vec<usize>>> {
    let mut delta = Vec::with_capacity(adh_y.n_points());
    for ny in &adh_y.neighborhoods {
        match universal_displacement(inst, f, ny)? {
            Some(u) => delta.push(adh_x.point_index(&u.point).expect("point of the domain")),
            None => return Ok(None),
        }
    }
    Ok(Some(delta))
}

/// Whether `Δ_f ⊣ Δ_g` on the given discrete spaces: `Δ_f n ≅ ∃_g n` for
/// every `n` over `Y`, and the hom-sets `(Δ_f n, m)` and `(n, Δ_g m)` have
/// the same size for every pair.
pub fn is_right_adjoint<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    g: &I::Map,
    over_x: &[I::Map],
    over_y: &[I::Map],
    budget: &Budget,
) -> Result<bool> {
    let delta_f: Vec<I::Map> = over_y.iter().map(|n| inst.pullback(n, f).to_a).collect();
    for (n, df) in over_y.iter().zip(&delta_f) {
        let ex_g = inst.factorize(&inst.compose(n, g))?.m;
        if iso_over(inst, df, &ex_g, budget)?.is_none() {
            return Ok(false);
        }
    }
    let delta_g: Vec<I::Map> = over_x.iter().map(|m| inst.pullback(m, g).to_a).collect();
    for (n, df) in over_y.iter().zip(&delta_f) {
        for (m, dg) in over_x.iter().zip(&delta_g) {
            if inst.maps_over(df, m, budget)?.len() != inst.maps_over(n, dg, budget)?.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first map `g : Y -> X` passing [`is_right_adjoint`].
pub fn find_right_adjoint<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    over_x: &[I::Map],
    over_y: &[I::Map],
    budget: &Budget,
) -> Result<Option<I::Map>> {
    for g in inst.maps(&inst.target(f), &inst.source(f), budget)? {
        if is_right_adjoint(inst, f, &g, over_x, over_y, budget)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// The counit `∃_f Δ_f ν(y) -> ν(y)` as a cone with vertex `y`.
pub fn counit_cone<I: EmInstance>(
    inst: &I,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    y: usize,
    budget: &Budget,
) -> Result<Cone<I::Map>> {
    let ny = &adh_y.neighborhoods[y];
    let pb = inst.pullback(&ny.map, f);
    let fac = inst.factorize(&inst.compose(&pb.to_a, f))?;
    let leg = factor_through(inst, &fac, &ny.map, &pb.to_b, budget)?;
    Ok(Cone { base: fac.m, vertex: y, leg })
}

pub fn is_dense_at<I: EmInstance>(
    inst: &I,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    y: usize,
    budget: &Budget,
) -> Result<bool> {
    is_colimiting(inst, adh_y, &counit_cone(inst, adh_y, f, y, budget)?, budget)
}

pub fn is_dense<I: EmInstance>(
    inst: &I,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    budget: &Budget,
) -> Result<bool> {
    for y in 0..adh_y.n_points() {
        if !is_dense_at(inst, adh_y, f, y, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unit `ν(x) -> Δ_f ν(fx)`.
pub fn unit_map<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    x: usize,
    budget: &Budget,
) -> Result<I::Map> {
    let nx = &adh_x.neighborhoods[x];
    let fx = adh_y.point_index(&inst.compose(&nx.point, f)).expect("point of the codomain");
    let nfx = &adh_y.neighborhoods[fx];
    let h = continuation(inst, f, nx, nfx, budget)?;
    let pb = inst.pullback(&nfx.map, f);
    Ok(inst.pullback_pair(&pb, &nx.map, &h))
}

pub fn is_fully_faithful_at<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    x: usize,
    budget: &Budget,
) -> Result<bool> {
    Ok(inst.is_iso(&unit_map(inst, adh_x, adh_y, f, x, budget)?))
}

pub fn is_fully_faithful<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    budget: &Budget,
) -> Result<bool> {
    for x in 0..adh_x.n_points() {
        if !is_fully_faithful_at(inst, adh_x, adh_y, f, x, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The product of the points `x`, `y` of `X`: the universal displacement
/// from the diagonal `X -> X × X` to `⟨x, y⟩`.
pub fn product_of_points<I: EmInstance>(
    inst: &I,
    x: &I::Map,
    y: &I::Map,
) -> Result<Option<UniversalDisplacement<I::Map>>> {
    let space = inst.target(x);
    let pb = product(inst, &space, &space);
    let id = inst.identity(&space);
    let diagonal = inst.pullback_pair(&pb, &id, &id);
    let pair = inst.pullback_pair(&pb, x, y);
    universal_displacement(inst, &diagonal, &neighborhood(inst, &pair)?)
}
