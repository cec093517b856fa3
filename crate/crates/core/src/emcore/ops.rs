use serde::Serialize;

use super::{EmInstance, Factorization, Pullback};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Finality derived from the factorization: `f` is in E iff the M-part of
/// its factorization is invertible.
pub fn in_e<I: EmInstance>(inst: &I, f: &I::Map) -> Result<bool> {
    Ok(inst.is_iso(&inst.factorize(f)?.m))
}

/// `∃_f m`: the factorization of `m ; f`, whose M-part is the direct image.
pub fn direct_image<I: EmInstance>(inst: &I, f: &I::Map, m: &I::Map) -> Result<Factorization<I::Map>> {
    inst.factorize(&inst.compose(m, f))
}

/// `Δ_f n`: the pullback of `n` along `f`; `to_a` is the space over the
/// source of `f`.
pub fn delta<I: EmInstance>(inst: &I, f: &I::Map, n: &I::Map) -> Pullback<I::Map> {
    inst.pullback(n, f)
}

fn exactly_one<M>(mut found: Vec<M>, what: impl FnOnce() -> String) -> Result<M> {
    if found.len() == 1 {
        Ok(found.pop().expect("one element"))
    } else {
        Err(Error::NotUnique { what: what(), found: found.len() })
    }
}

/// The unique `u : fac.m -> n` over the base with `compose(fac.e, u) == g`.
pub fn factor_through<I: EmInstance>(
    inst: &I,
    fac: &Factorization<I::Map>,
    n: &I::Map,
    g: &I::Map,
    budget: &Budget,
) -> Result<I::Map> {
    let found = inst.maps_over_extending(&fac.m, n, &fac.e, g, budget)?;
    exactly_one(found, || "factoring through a reflection".into())
}

/// The unique map `p -> n` over the base sending the point `from` of the
/// total of `p` to the point `to` of the total of `n`.
pub fn unique_map_over_sending<I: EmInstance>(
    inst: &I,
    p: &I::Map,
    n: &I::Map,
    from: &I::Map,
    to: &I::Map,
    budget: &Budget,
) -> Result<I::Map> {
    let found = inst.maps_over_extending(p, n, from, to, budget)?;
    exactly_one(found, || "map over the base sending a given point".into())
}

pub fn maps_over_count<I: EmInstance>(inst: &I, p: &I::Map, n: &I::Map, budget: &Budget) -> Result<usize> {
    Ok(inst.maps_over(p, n, budget)?.len())
}

/// A mutually inverse pair of maps over the common base, if `m ≅ n` there.
pub fn iso_over<I: EmInstance>(
    inst: &I,
    m: &I::Map,
    n: &I::Map,
    budget: &Budget,
) -> Result<Option<(I::Map, I::Map)>> {
    if inst.target(m) != inst.target(n) {
        return Ok(None);
    }
    let (sm, sn) = (inst.source(m), inst.source(n));
    if inst.size(&sm) != inst.size(&sn) {
        return Ok(None);
    }
    inst.find_iso_over(m, n, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityFailure<M> {
    /// The discrete space the map `p -> target` goes to.
    pub target: M,
    pub map: M,
    pub factorings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport<M> {
    pub holds: bool,
    pub targets_checked: usize,
    pub counterexample: Option<UniversalityFailure<M>>,
}

/// Checks that `e : p -> m` is a reflection of `p` into the discrete spaces
/// over the base: every map `p -> n` over the base, for `n` among `targets`,
/// factors through `e` exactly once.
pub fn reflection_universality_check<I: EmInstance>(
    inst: &I,
    p: &I::Map,
    fac: &Factorization<I::Map>,
    targets: &[I::Map],
    budget: &Budget,
) -> Result<UniversalityReport<I::Map>> {
    if inst.compose(&fac.e, &fac.m) != *p || !inst.in_m(&fac.m) {
        return Ok(UniversalityReport {
            holds: false,
            targets_checked: 0,
            counterexample: Some(UniversalityFailure { target: fac.m.clone(), map: fac.e.clone(), factorings: 0 }),
        });
    }
    let mut checked = 0;
    for n in targets.iter().chain(std::iter::once(&fac.m)) {
        checked += 1;
        for g in inst.maps_over(p, n, budget)? {
            let k = inst.maps_over_extending(&fac.m, n, &fac.e, &g, budget)?.len();
            if k != 1 {
                return Ok(UniversalityReport {
                    holds: false,
                    targets_checked: checked,
                    counterexample: Some(UniversalityFailure { target: n.clone(), map: g, factorings: k }),
                });
            }
        }
    }
    Ok(UniversalityReport { holds: true, targets_checked: checked, counterexample: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionFailure<M> {
    pub over_source: M,
    pub over_target: M,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport<M> {
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<AdjunctionFailure<M>>,
}

/// Verifies `∃_f ⊣ Δ_f` on the enumerated discrete spaces: the transpose
/// `v ↦ ⟨m, e;v⟩` is a bijection `hom_Y(∃_f m, n) ≅ hom_X(m, Δ_f n)`, natural
/// in `m` and `n`.
pub fn check_adjunction_ex_delta<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    fiber_bound: usize,
    budget: &Budget,
) -> Result<AdjunctionReport<I::Map>> {
    let over_x = inst.discrete_spaces(&inst.source(f), fiber_bound, budget)?;
    let over_y = inst.discrete_spaces(&inst.target(f), fiber_bound, budget)?;
    check_adjunction_on(inst, f, &over_x, &over_y, budget)
}

/// [`check_adjunction_ex_delta`] restricted to the full subcategories on the
/// given discrete spaces over the source and target of `f`.
pub fn check_adjunction_on<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    over_x: &[I::Map],
    over_y: &[I::Map],
    budget: &Budget,
) -> Result<AdjunctionReport<I::Map>> {
    let images: Vec<Factorization<I::Map>> =
        over_x.iter().map(|m| direct_image(inst, f, m)).collect::<Result<_>>()?;
    let pullbacks: Vec<Pullback<I::Map>> = over_y.iter().map(|n| delta(inst, f, n)).collect();

    let transpose = |mi: usize, ni: usize, v: &I::Map| -> I::Map {
        inst.pullback_pair(&pullbacks[ni], &over_x[mi], &inst.compose(&images[mi].e, v))
    };
    let fail = |mi: usize, ni: usize, reason: &str, pairs: usize| AdjunctionReport {
        holds: false,
        pairs_checked: pairs,
        counterexample: Some(AdjunctionFailure {
            over_source: over_x[mi].clone(),
            over_target: over_y[ni].clone(),
            reason: reason.to_string(),
        }),
    };

    // hom-sets between the discrete spaces, and the action of each map on
    // direct images and pullbacks, computed once
    let mut hom_y = Vec::with_capacity(over_y.len());
    for ni in 0..over_y.len() {
        let mut row = Vec::with_capacity(over_y.len());
        for nj in 0..over_y.len() {
            let ws = inst.maps_over(&over_y[ni], &over_y[nj], budget)?;
            let deltas: Vec<I::Map> = ws
                .iter()
                .map(|w| inst.pullback_pair(&pullbacks[nj], &pullbacks[ni].to_a, &inst.compose(&pullbacks[ni].to_b, w)))
                .collect();
            row.push((ws, deltas));
        }
        hom_y.push(row);
    }
    let mut hom_x = Vec::with_capacity(over_x.len());
    for mj in 0..over_x.len() {
        let mut row = Vec::with_capacity(over_x.len());
        for mi in 0..over_x.len() {
            let mut ks = Vec::new();
            for k in inst.maps_over(&over_x[mj], &over_x[mi], budget)? {
                let ex_k = factor_through(inst, &images[mj], &images[mi].m, &inst.compose(&k, &images[mi].e), budget)?;
                ks.push((k, ex_k));
            }
            row.push(ks);
        }
        hom_x.push(row);
    }

    // transposes of every map out of a direct image, computed once
    let mut trans: Vec<Vec<Vec<(I::Map, I::Map)>>> = Vec::with_capacity(over_x.len());
    let mut pairs = 0;
    for mi in 0..over_x.len() {
        let mut row = Vec::with_capacity(over_y.len());
        for ni in 0..over_y.len() {
            pairs += 1;
            let left = inst.maps_over(&images[mi].m, &over_y[ni], budget)?;
            let right = inst.maps_over(&over_x[mi], &pullbacks[ni].to_a, budget)?;
            if left.len() != right.len() {
                return Ok(fail(mi, ni, "hom-set cardinalities differ", pairs));
            }
            let mut table: Vec<(I::Map, I::Map)> = Vec::with_capacity(left.len());
            for v in left {
                let t = transpose(mi, ni, &v);
                if !right.contains(&t) || table.iter().any(|(_, s)| *s == t) {
                    return Ok(fail(mi, ni, "transpose is not a bijection", pairs));
                }
                table.push((v, t));
            }
            row.push(table);
        }
        trans.push(row);
    }
    let lookup = |mi: usize, ni: usize, v: &I::Map| trans[mi][ni].iter().find(|(u, _)| u == v).map(|(_, t)| t);

    for mi in 0..over_x.len() {
        for ni in 0..over_y.len() {
            let slot = (mi * over_y.len()) + ni + 1;
            for (nj, (ws, deltas)) in hom_y[ni].iter().enumerate() {
                for (w, delta_w) in ws.iter().zip(deltas) {
                    for (v, t) in &trans[mi][ni] {
                        let rhs = inst.compose(t, delta_w);
                        if lookup(mi, nj, &inst.compose(v, w)) != Some(&rhs) {
                            return Ok(fail(mi, ni, "transpose not natural in the target slot", slot));
                        }
                    }
                }
            }
            for (mj, row) in hom_x.iter().enumerate() {
                for (k, ex_k) in &row[mi] {
                    for (v, t) in &trans[mi][ni] {
                        let rhs = inst.compose(k, t);
                        if lookup(mj, ni, &inst.compose(ex_k, v)) != Some(&rhs) {
                            return Ok(fail(mi, ni, "transpose not natural in the source slot", slot));
                        }
                    }
                }
            }
        }
    }
    Ok(AdjunctionReport { holds: true, pairs_checked: pairs, counterexample: None })
}
