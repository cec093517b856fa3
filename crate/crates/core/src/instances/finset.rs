//! Finite sets with the epi-mono factorization.

use serde::Serialize;

use crate::budget::Budget;
use crate::emcore::{EmInstance, Factorization, Pullback};
use crate::error::{Error, Result};

/// A function `{0..source} -> {0..target}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinFn {
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

impl FinFn {
    pub fn new(target: usize, map: Vec<usize>) -> Result<FinFn> {
        if let Some(&y) = map.iter().find(|&&y| y >= target) {
            return Err(Error::Invalid(format!("value {y} outside a set of size {target}")));
        }
        Ok(FinFn { source: map.len(), target, map })
    }

    pub fn identity(n: usize) -> FinFn {
        FinFn { source: n, target: n, map: (0..n).collect() }
    }

    pub fn then(&self, next: &FinFn) -> FinFn {
        FinFn { source: self.source, target: next.target, map: self.map.iter().map(|&y| next.map[y]).collect() }
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// All functions `a -> b` in lexicographic order.
pub fn functions(a: usize, b: usize, budget: &Budget) -> Result<Vec<FinFn>> {
    let meter = budget.meter("enumerating functions");
    let mut out = Vec::new();
    if b == 0 && a > 0 {
        return Ok(out);
    }
    let mut map = vec![0; a];
    loop {
        meter.tick()?;
        out.push(FinFn { source: a, target: b, map: map.clone() });
        let mut k = a;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if map[k] + 1 < b {
                map[k] += 1;
                break;
            }
            map[k] = 0;
        }
    }
}

/// The inclusion of a sorted subset.
pub fn subset_inclusion(n: usize, subset: Vec<usize>) -> FinFn {
    FinFn { source: subset.len(), target: n, map: subset }
}

/// Finite sets; E = surjections, M = injections.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSetInstance;

impl FinSetInstance {
    pub fn new() -> Self {
        FinSetInstance
    }

    pub fn point(&self, n: usize, x: usize) -> FinFn {
        FinFn { source: 1, target: n, map: vec![x] }
    }
}

impl EmInstance for FinSetInstance {
    type Space = usize;
    type Map = FinFn;

    fn name(&self) -> &'static str {
        "finset"
    }

    fn terminal(&self) -> usize {
        1
    }

    fn initial(&self) -> usize {
        0
    }

    fn source(&self, f: &FinFn) -> usize {
        f.source
    }

    fn target(&self, f: &FinFn) -> usize {
        f.target
    }

    fn identity(&self, x: &usize) -> FinFn {
        FinFn::identity(*x)
    }

    fn compose(&self, first: &FinFn, second: &FinFn) -> FinFn {
        first.then(second)
    }

    fn to_terminal(&self, x: &usize) -> FinFn {
        FinFn { source: *x, target: 1, map: vec![0; *x] }
    }

    fn from_initial(&self, x: &usize) -> FinFn {
        FinFn { source: 0, target: *x, map: vec![] }
    }

    fn maps(&self, a: &usize, b: &usize, budget: &Budget) -> Result<Vec<FinFn>> {
        functions(*a, *b, budget)
    }

    fn points(&self, x: &usize) -> Vec<FinFn> {
        (0..*x).map(|i| self.point(*x, i)).collect()
    }

    fn pullback(&self, m: &FinFn, f: &FinFn) -> Pullback<FinFn> {
        let pairs: Vec<(usize, usize)> =
            (0..f.source).flat_map(|i| (0..m.source).filter(move |&j| m.map[j] == f.map[i]).map(move |j| (i, j))).collect();
        Pullback {
            to_a: FinFn { source: pairs.len(), target: f.source, map: pairs.iter().map(|p| p.0).collect() },
            to_b: FinFn { source: pairs.len(), target: m.source, map: pairs.iter().map(|p| p.1).collect() },
        }
    }

    fn pullback_pair(&self, pb: &Pullback<FinFn>, to_a: &FinFn, to_b: &FinFn) -> FinFn {
        let map = (0..to_a.source)
            .map(|t| {
                (0..pb.to_a.source)
                    .find(|&k| pb.to_a.map[k] == to_a.map[t] && pb.to_b.map[k] == to_b.map[t])
                    .expect("the pair lies in the pullback")
            })
            .collect();
        FinFn { source: to_a.source, target: pb.to_a.source, map }
    }

    fn in_m(&self, f: &FinFn) -> bool {
        f.is_injective()
    }

    fn factorize(&self, p: &FinFn) -> Result<Factorization<FinFn>> {
        let image = p.image();
        let e = FinFn {
            source: p.source,
            target: image.len(),
            map: p.map.iter().map(|y| image.binary_search(y).expect("in the image")).collect(),
        };
        Ok(Factorization { e, m: subset_inclusion(p.target, image) })
    }

    fn is_iso(&self, f: &FinFn) -> bool {
        f.is_bijective()
    }

    /// All subset inclusions.
    fn discrete_spaces(&self, x: &usize, _fiber_bound: usize, budget: &Budget) -> Result<Vec<FinFn>> {
        if *x >= 24 {
            return Err(Error::SizeBudgetExceeded { what: "enumerating subsets".into(), limit: budget.limit });
        }
        Ok((0u32..1 << x).map(|mask| subset_inclusion(*x, (0..*x).filter(|&i| mask & (1 << i) != 0).collect())).collect())
    }

    fn discrete_spaces_exhaustive(&self) -> bool {
        true
    }

    fn size(&self, x: &usize) -> usize {
        *x
    }

    fn native_in_e(&self, f: &FinFn) -> Option<bool> {
        Some(f.is_surjective())
    }
}

/// `P ≠ ∅` and `p` constant, or `P = ∅` and `|X| = 1`.
pub fn is_strongly_constant(p: &FinFn) -> bool {
    if p.source == 0 {
        p.target == 1
    } else {
        p.image().len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{adherence, colimit};

    #[test]
    fn function_counts() {
        assert_eq!(functions(2, 3, &Budget::default()).unwrap().len(), 9);
        assert_eq!(functions(0, 0, &Budget::default()).unwrap().len(), 1);
        assert_eq!(functions(1, 0, &Budget::default()).unwrap().len(), 0);
    }

    #[test]
    fn adherence_is_discrete() {
        let s = FinSetInstance;
        let adh = adherence(&s, &3, &Budget::default()).unwrap();
        assert_eq!(adh.category.n_arrows(), 3);
    }

    #[test]
    fn colimits_are_strongly_constant_maps() {
        let s = FinSetInstance;
        for x in 0..=3 {
            let adh = adherence(&s, &x, &Budget::default()).unwrap();
            for a in 0..=3 {
                for p in functions(a, x, &Budget::default()).unwrap() {
                    let col = colimit(&s, &adh, &p, &Budget::default()).unwrap();
                    assert_eq!(col.is_some(), is_strongly_constant(&p), "{p:?}");
                }
            }
        }
    }
}
