use std::collections::HashMap;

use serde::Serialize;

use super::EmInstance;
use crate::budget::Budget;
use crate::error::Result;

/// A commuting square `compose(e, bottom) == compose(top, m)` together with
/// the number of diagonal fillers found for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Square<M> {
    pub top: M,
    pub bottom: M,
    pub diagonals: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport<M> {
    pub holds: bool,
    pub squares_checked: usize,
    pub counterexample: Option<Square<M>>,
}

/// Decides `e ⊥ m` by enumerating every commuting square and counting its
/// diagonals.
pub fn check_orthogonal<I: EmInstance>(
    inst: &I,
    e: &I::Map,
    m: &I::Map,
    budget: &Budget,
) -> Result<OrthogonalityReport<I::Map>> {
    let (src_e, tgt_e) = (inst.source(e), inst.target(e));
    let (src_m, tgt_m) = (inst.source(m), inst.target(m));

    let mut diagonals: HashMap<(I::Map, I::Map), usize> = HashMap::new();
    for u in inst.maps(&tgt_e, &src_m, budget)? {
        *diagonals.entry((inst.compose(e, &u), inst.compose(&u, m))).or_default() += 1;
    }
    let mut bottoms: HashMap<I::Map, Vec<I::Map>> = HashMap::new();
    for g in inst.maps(&tgt_e, &tgt_m, budget)? {
        bottoms.entry(inst.compose(e, &g)).or_default().push(g);
    }

    let mut squares_checked = 0;
    for f in inst.maps(&src_e, &src_m, budget)? {
        let Some(gs) = bottoms.get(&inst.compose(&f, m)) else { continue };
        for g in gs {
            squares_checked += 1;
            let key = (f.clone(), g.clone());
            let n = diagonals.get(&key).copied().unwrap_or(0);
            if n != 1 {
                return Ok(OrthogonalityReport {
                    holds: false,
                    squares_checked,
                    counterexample: Some(Square { top: key.0, bottom: key.1, diagonals: n }),
                });
            }
        }
    }
    Ok(OrthogonalityReport { holds: true, squares_checked, counterexample: None })
}
