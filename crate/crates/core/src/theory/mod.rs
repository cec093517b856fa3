//! Neighborhoods, adherence categories, cones and colimits, written once
//! against [`EmInstance`] and shared by every concrete instance.
//!
//! Points of a space are addressed by their index in `inst.points(x)`;
//! [`Adherence`] caches the neighborhoods and displacements of one space so
//! that repeated colimit queries do not recompute them.

mod maps;
mod power;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::emcore::{factor_through, unique_map_over_sending, EmInstance};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, RawCategory};

pub use maps::{
    counit_cone, find_right_adjoint, is_adjunctible, is_dense, is_dense_at, is_fully_faithful,
    is_fully_faithful_at, is_right_adjoint, product_of_points, universal_displacement, unit_map,
    UniversalDisplacement,
};
pub use power::{
    check_dual1, check_yoneda_map, gamma, reflection_formula_check, up, yoneda_reflection_check, Dual1Report,
    ReflectionFormulaReport, YonedaFailure, YonedaReport,
};

/// A map in M over `base`, kept together with its base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteSpace<S, M> {
    pub base: S,
    pub map: M,
}

impl<S, M> DiscreteSpace<S, M> {
    /// Packages `map` after checking it is in M.
    pub fn new<I: EmInstance<Space = S, Map = M>>(inst: &I, map: M) -> Result<Self> {
        if !inst.in_m(&map) {
            return Err(Error::Invalid("map is not a discrete space over its target".into()));
        }
        Ok(DiscreteSpace { base: inst.target(&map), map })
    }
}

/// `ν(x)`: the discrete reflection of the point `x`, with the final point of
/// its total through which `x` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Neighborhood<M> {
    pub point: M,
    pub map: M,
    pub final_point: M,
}

pub fn neighborhood<I: EmInstance>(inst: &I, x: &I::Map) -> Result<Neighborhood<I::Map>> {
    let fac = inst.factorize(x)?;
    Ok(Neighborhood { point: x.clone(), map: fac.m, final_point: fac.e })
}

/// A map `leg : base -> ν(vertex)` over the base space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone<M> {
    pub base: M,
    pub vertex: usize,
    pub leg: M,
}

/// The adherence category of a space: its points, with the maps
/// `ν(x) -> ν(y)` over the space as arrows.
#[derive(Debug, Clone)]
pub struct Adherence<S, M> {
    pub space: S,
    pub points: Vec<M>,
    pub neighborhoods: Vec<Neighborhood<M>>,
    pub category: Arc<FinCat>,
    /// The map over the space behind each arrow of `category`.
    pub displacements: Vec<M>,
    point_index: HashMap<M, usize>,
}

impl<S, M: Clone + Eq + std::hash::Hash> Adherence<S, M> {
    pub fn point_index(&self, p: &M) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Displacements `ν(x) -> ν(y)`, as arrow indices of `category`.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.category.hom(x, y)
    }

    /// Whether `x ≅ y` in the adherence category.
    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        let c = &self.category;
        c.hom(x, y).iter().any(|&a| {
            c.hom(y, x).iter().any(|&b| c.compose(a, b) == Some(c.identity(x)) && c.compose(b, a) == Some(c.identity(y)))
        })
    }

    /// Number of points isomorphic to `x`, `x` included.
    pub fn class_size(&self, x: usize) -> usize {
        (0..self.points.len()).filter(|&y| self.isomorphic(x, y)).count()
    }

    /// Whether `x` is initial in the adherence category.
    pub fn is_initial(&self, x: usize) -> bool {
        (0..self.points.len()).all(|y| self.hom(x, y).len() == 1)
    }

    /// Whether `x` is terminal in the adherence category.
    pub fn is_terminal(&self, x: usize) -> bool {
        self.category.is_terminal_object(x)
    }
}

pub fn adherence<I: EmInstance>(inst: &I, x: &I::Space, budget: &Budget) -> Result<Adherence<I::Space, I::Map>> {
    let points = inst.points(x);
    let neighborhoods: Vec<_> = points.iter().map(|p| neighborhood(inst, p)).collect::<Result<_>>()?;
    let n = points.len();
    let mut arrows = Vec::new();
    let mut displacements = Vec::new();
    let mut identity = vec![usize::MAX; n];
    let mut lookup: Vec<HashMap<I::Map, usize>> = vec![HashMap::new(); n * n];
    for a in 0..n {
        let id = inst.identity(&inst.source(&neighborhoods[a].map));
        for b in 0..n {
            let ds = inst.maps_over(&neighborhoods[a].map, &neighborhoods[b].map, budget)?;
            for (k, d) in ds.into_iter().enumerate() {
                let i = arrows.len();
                if a == b && d == id {
                    identity[a] = i;
                    arrows.push(Arrow::new(format!("id({a})"), a, b));
                } else {
                    arrows.push(Arrow::new(format!("d{a}_{b}_{k}"), a, b));
                }
                lookup[a * n + b].insert(d.clone(), i);
                displacements.push(d);
            }
        }
        if identity[a] == usize::MAX {
            return Err(Error::Invalid(format!("neighborhood of point {a} has no identity over the space")));
        }
    }
    let mut compose = Vec::new();
    for (i, ai) in arrows.iter().enumerate() {
        for (j, aj) in arrows.iter().enumerate().filter(|(_, aj)| aj.dom == ai.cod) {
            let d = inst.compose(&displacements[i], &displacements[j]);
            let k = lookup[ai.dom * n + aj.cod]
                .get(&d)
                .copied()
                .ok_or_else(|| Error::Invalid("displacements are not closed under composition".into()))?;
            compose.push((i, j, k));
        }
    }
    let objects = (0..n).map(|i| inst.point_name(x, i)).collect();
    let category = Arc::new(FinCat::validate(RawCategory { objects, arrows, identity, compose })?);
    let point_index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(Adherence { space: x.clone(), points, neighborhoods, category, displacements, point_index })
}

/// The point of the total of `ν(y)` over `x` corresponding to a displacement.
pub fn displacement_point<I: EmInstance>(inst: &I, adh: &Adherence<I::Space, I::Map>, arrow: usize) -> I::Map {
    let x = adh.category.dom(arrow);
    inst.compose(&adh.neighborhoods[x].final_point, &adh.displacements[arrow])
}

/// All cones on `p` with vertex `y`.
pub fn cones<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    p: &I::Map,
    y: usize,
    budget: &Budget,
) -> Result<Vec<Cone<I::Map>>> {
    Ok(inst
        .maps_over(p, &adh.neighborhoods[y].map, budget)?
        .into_iter()
        .map(|leg| Cone { base: p.clone(), vertex: y, leg })
        .collect())
}

/// The unique cone on `↓p` through which `c` factors along the reflection unit.
pub fn kernel_cone<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<Cone<I::Map>> {
    let fac = inst.factorize(&c.base)?;
    let leg = factor_through(inst, &fac, &adh.neighborhoods[c.vertex].map, &c.leg, budget)?;
    Ok(Cone { base: fac.m, vertex: c.vertex, leg })
}

/// Whether `leg` restricts each hom-set of the adherence category out of
/// `vertex` bijectively onto the cones on `base`; `cones_at[y]` holds the
/// legs of all cones with vertex `y`.
fn is_universal<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    vertex: usize,
    leg: &I::Map,
    cones_at: &[Vec<I::Map>],
) -> bool {
    (0..adh.n_points()).all(|y| {
        let hom = adh.hom(vertex, y);
        if hom.len() != cones_at[y].len() {
            return false;
        }
        let images: HashSet<I::Map> = hom.iter().map(|&d| inst.compose(leg, &adh.displacements[d])).collect();
        images.len() == hom.len() && cones_at[y].iter().all(|c| images.contains(c))
    })
}

fn all_cones<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    base: &I::Map,
    budget: &Budget,
) -> Result<Vec<Vec<I::Map>>> {
    adh.neighborhoods.iter().map(|nb| inst.maps_over(base, &nb.map, budget)).collect()
}

/// Whether the cone is a reflection of its base into the adherence category.
pub fn is_colimiting<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<bool> {
    let cones_at = all_cones(inst, adh, &c.base, budget)?;
    Ok(is_universal(inst, adh, c.vertex, &c.leg, &cones_at))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitResult<M> {
    /// Lowest-indexed vertex among the isomorphic candidates.
    pub vertex: usize,
    pub point: M,
    /// The colimiting cone on the original base.
    pub cone: Cone<M>,
    /// Its kernel, on the discrete reflection of the base.
    pub kernel: Cone<M>,
    /// How many points are isomorphic to the vertex in the adherence category.
    pub class_size: usize,
}

/// The colimit of `p`, computed as the colimit of its discrete reflection.
pub fn colimit<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    p: &I::Map,
    budget: &Budget,
) -> Result<Option<ColimitResult<I::Map>>> {
    let fac = inst.factorize(p)?;
    let cones_at = all_cones(inst, adh, &fac.m, budget)?;
    for x in 0..adh.n_points() {
        if let Some(k) = cones_at[x].iter().find(|k| is_universal(inst, adh, x, k, &cones_at)) {
            return Ok(Some(ColimitResult {
                vertex: x,
                point: adh.points[x].clone(),
                cone: Cone { base: p.clone(), vertex: x, leg: inst.compose(&fac.e, k) },
                kernel: Cone { base: fac.m.clone(), vertex: x, leg: k.clone() },
                class_size: adh.class_size(x),
            }));
        }
    }
    Ok(None)
}

/// The colimit of `p` searched among cones on `p` itself, without passing
/// through the reflection; used to cross-check [`colimit`]. The kernel field
/// is the cone itself.
pub fn colimit_direct<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    p: &I::Map,
    budget: &Budget,
) -> Result<Option<ColimitResult<I::Map>>> {
    let cones_at = all_cones(inst, adh, p, budget)?;
    for x in 0..adh.n_points() {
        if let Some(c) = cones_at[x].iter().find(|c| is_universal(inst, adh, x, c, &cones_at)) {
            let cone = Cone { base: p.clone(), vertex: x, leg: c.clone() };
            return Ok(Some(ColimitResult {
                vertex: x,
                point: adh.points[x].clone(),
                kernel: cone.clone(),
                cone,
                class_size: adh.class_size(x),
            }));
        }
    }
    Ok(None)
}

/// `↓p ≅ ν(x)` over the base.
pub fn is_absolute_colimit<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    p: &I::Map,
    x: usize,
    budget: &Budget,
) -> Result<bool> {
    let down = inst.factorize(p)?.m;
    Ok(crate::emcore::iso_over(inst, &down, &adh.neighborhoods[x].map, budget)?.is_some())
}

/// The unique map `ν(x) -> ν(fx)` over the codomain of `f` sending final
/// point to final point; it exhibits `∃_f ν(x) ≅ ν(fx)`.
pub fn continuation<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    nx: &Neighborhood<I::Map>,
    nfx: &Neighborhood<I::Map>,
    budget: &Budget,
) -> Result<I::Map> {
    unique_map_over_sending(inst, &inst.compose(&nx.map, f), &nfx.map, &nx.final_point, &nfx.final_point, budget)
}

/// `∃_f c : ∃_f m -> ν(fx)` for a cone `c` with discrete base `m`.
pub fn image_cone<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<Cone<I::Map>> {
    let fx = inst.compose(&adh_x.points[c.vertex], f);
    let vy = adh_y.point_index(&fx).ok_or_else(|| Error::Invalid("image point not found in codomain".into()))?;
    let h = continuation(inst, f, &adh_x.neighborhoods[c.vertex], &adh_y.neighborhoods[vy], budget)?;
    let fac = inst.factorize(&inst.compose(&c.base, f))?;
    let leg = factor_through(inst, &fac, &adh_y.neighborhoods[vy].map, &inst.compose(&c.leg, &h), budget)?;
    Ok(Cone { base: fac.m, vertex: vy, leg })
}

pub fn preserves_colimit<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<bool> {
    is_colimiting(inst, adh_y, &image_cone(inst, adh_x, adh_y, f, c, budget)?, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport<M> {
    pub holds: bool,
    /// Colimiting cones examined.
    pub cones_checked: usize,
    /// A discrete space whose colimiting cone is not preserved.
    pub counterexample: Option<M>,
}

/// Checks that `f` preserves the colimiting cone of every discrete space
/// among `discrete` that has a colimit.
pub fn is_colimit_preserving<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    discrete: &[I::Map],
    budget: &Budget,
) -> Result<PreservationReport<I::Map>> {
    let mut checked = 0;
    for m in discrete {
        if let Some(col) = colimit(inst, adh_x, m, budget)? {
            checked += 1;
            if !preserves_colimit(inst, adh_x, adh_y, f, &col.cone, budget)? {
                return Ok(PreservationReport { holds: false, cones_checked: checked, counterexample: Some(m.clone()) });
            }
        }
    }
    Ok(PreservationReport { holds: true, cones_checked: checked, counterexample: None })
}

/// The cone on `p ; f` with vertex `fx`: the leg of `c` followed by the
/// continuation `ν(x) -> ν(fx)`. The base need not be discrete.
pub fn classical_image_cone<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<Cone<I::Map>> {
    let fx = inst.compose(&adh_x.points[c.vertex], f);
    let vy = adh_y.point_index(&fx).ok_or_else(|| Error::Invalid("image point not found in codomain".into()))?;
    let h = continuation(inst, f, &adh_x.neighborhoods[c.vertex], &adh_y.neighborhoods[vy], budget)?;
    Ok(Cone { base: inst.compose(&c.base, f), vertex: vy, leg: inst.compose(&c.leg, &h) })
}

/// Whether the kernel of the classical image of `c` is the direct image of
/// the kernel of `c`, compared along the comparison `↓(p;f) -> ∃_f ↓p`
/// induced by the reflection units.
pub fn kernel_image_commutes<I: EmInstance>(
    inst: &I,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    f: &I::Map,
    c: &Cone<I::Map>,
    budget: &Budget,
) -> Result<bool> {
    let left = kernel_cone(inst, adh_y, &classical_image_cone(inst, adh_x, adh_y, f, c, budget)?, budget)?;
    let right = image_cone(inst, adh_x, adh_y, f, &kernel_cone(inst, adh_x, c, budget)?, budget)?;
    if left.vertex != right.vertex {
        return Ok(false);
    }
    let fac_pf = inst.factorize(&inst.compose(&c.base, f))?;
    let e_p = inst.factorize(&c.base)?.e;
    let e_ex = inst.factorize(&inst.compose(&inst.factorize(&c.base)?.m, f))?.e;
    let u = factor_through(inst, &fac_pf, &right.base, &inst.compose(&e_p, &e_ex), budget)?;
    if !inst.is_iso(&u) {
        return Ok(false);
    }
    Ok(inst.compose(&u, &right.leg) == left.leg)
}

#[cfg(test)]
mod tests;
