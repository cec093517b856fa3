//! Yoneda maps and the dual reflection `↑p`, for instances where they exist.

use serde::Serialize;

use super::{colimit, Adherence};
use crate::budget::Budget;
use crate::emcore::{iso_over, EmInstance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum YonedaFailure<M> {
    /// `∃_y m` has no colimit.
    NoColimit { space: M },
    /// `Δ_y ν(colim ∃_y m)` is not isomorphic to `m`.
    SpaceNotRecovered { space: M },
    /// `colim ∃_y Δ_y ν(P)` is missing or not isomorphic to `P`.
    PointNotRecovered { point: usize },
    /// The composite is not bijective on hom-sets.
    HomMismatch { from: M, to: M, spaces: usize, points: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YonedaReport<M> {
    pub holds: bool,
    pub spaces_checked: usize,
    pub points_checked: usize,
    pub failure: Option<YonedaFailure<M>>,
}

/// Checks that `colim ∘ ∃_y` and `Δ_y ∘ j` are mutually inverse between the
/// discrete spaces over `X` (given exhaustively, one per isomorphism class,
/// in `over_x`) and the adherence category of `PX`: both round trips return
/// isomorphic objects, and `colim ∘ ∃_y` is bijective on hom-sets.
pub fn check_yoneda_map<I: EmInstance>(
    inst: &I,
    y: &I::Map,
    over_x: &[I::Map],
    adh_px: &Adherence<I::Space, I::Map>,
    budget: &Budget,
) -> Result<YonedaReport<I::Map>> {
    let fail = |f, s, p| Ok(YonedaReport { holds: false, spaces_checked: s, points_checked: p, failure: Some(f) });
    let colim_of = |m: &I::Map| -> Result<Option<usize>> {
        let ex = inst.factorize(&inst.compose(m, y))?.m;
        Ok(colimit(inst, adh_px, &ex, budget)?.map(|c| c.vertex))
    };
    let delta_nu = |p: usize| inst.pullback(&adh_px.neighborhoods[p].map, y).to_a;

    let mut vertex = Vec::with_capacity(over_x.len());
    for (i, m) in over_x.iter().enumerate() {
        let Some(v) = colim_of(m)? else {
            return fail(YonedaFailure::NoColimit { space: m.clone() }, i, 0);
        };
        if iso_over(inst, &delta_nu(v), m, budget)?.is_none() {
            return fail(YonedaFailure::SpaceNotRecovered { space: m.clone() }, i, 0);
        }
        vertex.push(v);
    }
    for p in 0..adh_px.n_points() {
        match colim_of(&delta_nu(p))? {
            Some(v) if adh_px.isomorphic(v, p) => {}
            _ => return fail(YonedaFailure::PointNotRecovered { point: p }, over_x.len(), p),
        }
    }
    for (i, m) in over_x.iter().enumerate() {
        for (j, n) in over_x.iter().enumerate() {
            let spaces = inst.maps_over(m, n, budget)?.len();
            let points = adh_px.hom(vertex[i], vertex[j]).len();
            if spaces != points {
                let f = YonedaFailure::HomMismatch { from: m.clone(), to: n.clone(), spaces, points };
                return fail(f, over_x.len(), adh_px.n_points());
            }
        }
    }
    Ok(YonedaReport { holds: true, spaces_checked: over_x.len(), points_checked: adh_px.n_points(), failure: None })
}

/// `↓p ≅ Δ_y ν(Colim(y ∘ p))` for a Yoneda map `y`.
pub fn yoneda_reflection_check<I: EmInstance>(
    inst: &I,
    y: &I::Map,
    adh_px: &Adherence<I::Space, I::Map>,
    p: &I::Map,
    budget: &Budget,
) -> Result<bool> {
    let Some(col) = colimit(inst, adh_px, &inst.compose(p, y), budget)? else {
        return Ok(false);
    };
    let rhs = inst.pullback(&adh_px.neighborhoods[col.vertex].map, y).to_a;
    let lhs = inst.factorize(p)?.m;
    Ok(iso_over(inst, &lhs, &rhs, budget)?.is_some())
}

/// Number of components of a space: the size of its reflection over the
/// terminal space.
pub fn gamma<I: EmInstance>(inst: &I, x: &I::Space) -> Result<usize> {
    let m = inst.factorize(&inst.to_terminal(x))?.m;
    Ok(inst.size(&inst.source(&m)))
}

fn unsupported(inst: &impl EmInstance) -> Error {
    Error::Unsupported { instance: inst.name(), capability: "duality" }
}

/// The dual reflection `↑p`, computed in the opposite instance.
pub fn up<I: EmInstance>(inst: &I, p: &I::Map) -> Result<I::Map> {
    let op = inst.op_map(p).ok_or_else(|| unsupported(inst))?;
    let down = inst.factorize(&op)?.m;
    inst.op_map(&down).ok_or_else(|| unsupported(inst))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dual1Report {
    /// `Γ!(p* ↓q)`.
    pub left: usize,
    /// `Γ!(q* ↑p)`.
    pub right: usize,
}

impl Dual1Report {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Both sides of `Γ!(p* ↓q) ≅ Γ!(q* ↑p)`, as cardinalities.
pub fn check_dual1<I: EmInstance>(inst: &I, p: &I::Map, q: &I::Map) -> Result<Dual1Report> {
    let down_q = inst.factorize(q)?.m;
    let left = gamma(inst, &inst.source(&inst.pullback(&down_q, p).to_a))?;
    let up_p = up(inst, p)?;
    let right = gamma(inst, &inst.source(&inst.pullback(&up_p, q).to_a))?;
    Ok(Dual1Report { left, right })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReflectionFormulaReport {
    /// Size of the fiber of `↓p` over `x`.
    pub fiber: usize,
    /// `Γ!(p* ↑x)`.
    pub components: usize,
}

impl ReflectionFormulaReport {
    pub fn holds(&self) -> bool {
        self.fiber == self.components
    }
}

/// The fiber of `↓p` over the point `x` against `Γ!(p* ↑x)`.
pub fn reflection_formula_check<I: EmInstance>(inst: &I, p: &I::Map, x: &I::Map) -> Result<ReflectionFormulaReport> {
    let down = inst.factorize(p)?.m;
    let fiber = inst.size(&inst.source(&inst.pullback(&down, x).to_a));
    let up_x = up(inst, x)?;
    let components = gamma(inst, &inst.source(&inst.pullback(&up_x, p).to_a))?;
    Ok(ReflectionFormulaReport { fiber, components })
}
