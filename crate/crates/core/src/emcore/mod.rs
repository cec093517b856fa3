//! The interface every concrete (E,M)-category implements, and the
//! instance-independent machinery built on it: orthogonality, derived
//! finality, direct images and the reflection/adjunction checks.
//!
//! Composition is diagrammatic throughout: `compose(first, second)` is the
//! map "first, then second".

mod ops;
mod ortho;

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;

pub use ops::{
    check_adjunction_ex_delta, check_adjunction_on, delta, direct_image, factor_through, in_e, iso_over, maps_over_count,
    reflection_universality_check, unique_map_over_sending, AdjunctionFailure, AdjunctionReport,
    UniversalityFailure, UniversalityReport,
};
pub use ortho::{check_orthogonal, OrthogonalityReport, Square};

/// `p = compose(e, m)` with `m` in M and `e` in E.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization<M> {
    pub e: M,
    pub m: M,
}

/// A pullback of `m : B -> X` along `f : A -> X`; the apex is the common
/// source of the two projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pullback<M> {
    pub to_a: M,
    pub to_b: M,
}

/// A bipointed object `s, t : 1 -> 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowObject<S, M> {
    pub two: S,
    pub s: M,
    pub t: M,
}

/// The pushout of `t` and `s`, with `l1 ; ... = first arrow`, `l2` the
/// second arrow and `l3` the composite figure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushoutThree<S, M> {
    pub three: S,
    pub l1: M,
    pub l2: M,
    pub l3: M,
}

/// A finitely complete category with a chosen (E,M) factorization, at
/// desk scale: every hom-set is finite and enumerable.
pub trait EmInstance {
    type Space: Clone + Eq + Hash + Debug + Serialize;
    type Map: Clone + Eq + Hash + Debug + Serialize;

    fn name(&self) -> &'static str;

    fn terminal(&self) -> Self::Space;
    fn initial(&self) -> Self::Space;

    fn source(&self, f: &Self::Map) -> Self::Space;
    fn target(&self, f: &Self::Map) -> Self::Space;
    fn identity(&self, x: &Self::Space) -> Self::Map;
    fn compose(&self, first: &Self::Map, second: &Self::Map) -> Self::Map;
    fn to_terminal(&self, x: &Self::Space) -> Self::Map;
    fn from_initial(&self, x: &Self::Space) -> Self::Map;

    /// Every map `a -> b`, exactly once each.
    fn maps(&self, a: &Self::Space, b: &Self::Space, budget: &Budget) -> Result<Vec<Self::Map>>;

    /// Maps `u : source(p) -> source(n)` with `compose(u, n) == p`.
    fn maps_over(&self, p: &Self::Map, n: &Self::Map, budget: &Budget) -> Result<Vec<Self::Map>> {
        let all = self.maps(&self.source(p), &self.source(n), budget)?;
        Ok(all.into_iter().filter(|u| self.compose(u, n) == *p).collect())
    }

    /// Maps `u` over the base, as in [`EmInstance::maps_over`], that also
    /// satisfy `compose(along, u) == g`.
    fn maps_over_extending(
        &self,
        p: &Self::Map,
        n: &Self::Map,
        along: &Self::Map,
        g: &Self::Map,
        budget: &Budget,
    ) -> Result<Vec<Self::Map>> {
        Ok(self.maps_over(p, n, budget)?.into_iter().filter(|u| self.compose(along, u) == *g).collect())
    }

    /// An isomorphism over the base from the total of `m` to that of `n`,
    /// with its inverse. Callers have already matched targets and sizes.
    fn find_iso_over(&self, m: &Self::Map, n: &Self::Map, budget: &Budget) -> Result<Option<(Self::Map, Self::Map)>> {
        let (idm, idn) = (self.identity(&self.source(m)), self.identity(&self.source(n)));
        let back = self.maps_over(n, m, budget)?;
        for u in self.maps_over(m, n, budget)? {
            if !self.is_iso(&u) {
                continue;
            }
            if let Some(v) = back.iter().find(|v| self.compose(&u, v) == idm && self.compose(v, &u) == idn) {
                return Ok(Some((u, v.clone())));
            }
        }
        Ok(None)
    }

    /// Display name of the `i`-th point of `x`.
    fn point_name(&self, _x: &Self::Space, i: usize) -> String {
        i.to_string()
    }

    /// Maps `1 -> x`.
    fn points(&self, x: &Self::Space) -> Vec<Self::Map>;

    fn pullback(&self, m: &Self::Map, f: &Self::Map) -> Pullback<Self::Map>;

    /// The map into the apex of `pb` induced by `to_a`, `to_b`.
    fn pullback_pair(&self, pb: &Pullback<Self::Map>, to_a: &Self::Map, to_b: &Self::Map) -> Self::Map;

    fn in_m(&self, f: &Self::Map) -> bool;

    fn factorize(&self, p: &Self::Map) -> Result<Factorization<Self::Map>>;

    fn is_iso(&self, f: &Self::Map) -> bool {
        let (a, b) = (self.source(f), self.target(f));
        let (ida, idb) = (self.identity(&a), self.identity(&b));
        self.maps(&b, &a, &Budget::default())
            .map(|gs| gs.iter().any(|g| self.compose(f, g) == ida && self.compose(g, f) == idb))
            .unwrap_or(false)
    }

    /// Discrete spaces over `x`, one per isomorphism class, with fibers of at
    /// most `fiber_bound` elements where the instance has unbounded fibers.
    fn discrete_spaces(&self, x: &Self::Space, fiber_bound: usize, budget: &Budget) -> Result<Vec<Self::Map>>;

    /// Whether `discrete_spaces` is exhaustive for every bound.
    fn discrete_spaces_exhaustive(&self) -> bool {
        false
    }

    /// Number of points, used for stratification and reporting.
    fn size(&self, x: &Self::Space) -> usize {
        self.points(x).len()
    }

    /// Instance-native description of E, when there is one, used to
    /// cross-check the derived test.
    fn native_in_e(&self, _f: &Self::Map) -> Option<bool> {
        None
    }

    /// The duality functor on spaces, if the instance is two-sided.
    fn op_space(&self, _x: &Self::Space) -> Option<Self::Space> {
        None
    }

    fn op_map(&self, _f: &Self::Map) -> Option<Self::Map> {
        None
    }

    fn arrow_object(&self) -> Option<ArrowObject<Self::Space, Self::Map>> {
        None
    }

    fn pushout_three(&self) -> Option<PushoutThree<Self::Space, Self::Map>> {
        None
    }
}

/// Product of two spaces, as the pullback over the terminal space.
pub fn product<I: EmInstance>(inst: &I, a: &I::Space, b: &I::Space) -> Pullback<I::Map> {
    inst.pullback(&inst.to_terminal(b), &inst.to_terminal(a))
}
