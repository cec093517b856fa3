//! An instance wrapper with a deliberately broken M, for exercising the
//! suite's failure path.

use crate::budget::Budget;
use crate::emcore::{ArrowObject, EmInstance, Factorization, Pullback, PushoutThree};
use crate::error::Result;

/// Delegates everything to the wrapped instance except `in_m`, which
/// accepts every map.
#[derive(Debug, Clone)]
pub struct Faulty<I>(pub I);

impl<I: EmInstance> EmInstance for Faulty<I> {
    type Space = I::Space;
    type Map = I::Map;

    fn name(&self) -> &'static str {
        "faulty"
    }

    fn terminal(&self) -> I::Space {
        self.0.terminal()
    }

    fn initial(&self) -> I::Space {
        self.0.initial()
    }

    fn source(&self, f: &I::Map) -> I::Space {
        self.0.source(f)
    }

    fn target(&self, f: &I::Map) -> I::Space {
        self.0.target(f)
    }

    fn identity(&self, x: &I::Space) -> I::Map {
        self.0.identity(x)
    }

    fn compose(&self, first: &I::Map, second: &I::Map) -> I::Map {
        self.0.compose(first, second)
    }

    fn to_terminal(&self, x: &I::Space) -> I::Map {
        self.0.to_terminal(x)
    }

    fn from_initial(&self, x: &I::Space) -> I::Map {
        self.0.from_initial(x)
    }

    fn maps(&self, a: &I::Space, b: &I::Space, budget: &Budget) -> Result<Vec<I::Map>> {
        self.0.maps(a, b, budget)
    }

    fn maps_over(&self, p: &I::Map, n: &I::Map, budget: &Budget) -> Result<Vec<I::Map>> {
        self.0.maps_over(p, n, budget)
    }

    fn maps_over_extending(&self, p: &I::Map, n: &I::Map, along: &I::Map, g: &I::Map, budget: &Budget) -> Result<Vec<I::Map>> {
        self.0.maps_over_extending(p, n, along, g, budget)
    }

    fn find_iso_over(&self, m: &I::Map, n: &I::Map, budget: &Budget) -> Result<Option<(I::Map, I::Map)>> {
        self.0.find_iso_over(m, n, budget)
    }

    fn point_name(&self, x: &I::Space, i: usize) -> String {
        self.0.point_name(x, i)
    }

    fn points(&self, x: &I::Space) -> Vec<I::Map> {
        self.0.points(x)
    }

    fn pullback(&self, m: &I::Map, f: &I::Map) -> Pullback<I::Map> {
        self.0.pullback(m, f)
    }

    fn pullback_pair(&self, pb: &Pullback<I::Map>, to_a: &I::Map, to_b: &I::Map) -> I::Map {
        self.0.pullback_pair(pb, to_a, to_b)
    }

    fn in_m(&self, _f: &I::Map) -> bool {
        true
    }

    fn factorize(&self, p: &I::Map) -> Result<Factorization<I::Map>> {
        self.0.factorize(p)
    }

    fn is_iso(&self, f: &I::Map) -> bool {
        self.0.is_iso(f)
    }

    fn discrete_spaces(&self, x: &I::Space, fiber_bound: usize, budget: &Budget) -> Result<Vec<I::Map>> {
        self.0.discrete_spaces(x, fiber_bound, budget)
    }

    fn size(&self, x: &I::Space) -> usize {
        self.0.size(x)
    }

    fn arrow_object(&self) -> Option<ArrowObject<I::Space, I::Map>> {
        self.0.arrow_object()
    }

    fn pushout_three(&self) -> Option<PushoutThree<I::Space, I::Map>> {
        self.0.pushout_three()
    }
}
