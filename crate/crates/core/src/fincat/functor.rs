use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{FinCat, FinCatError};
use crate::budget::{Budget, Meter};
use crate::error::Result;

/// A functor between finite categories, stored as index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl Hash for FinFunctor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.objects.hash(state);
        self.arrows.hash(state);
    }
}

impl Serialize for FinFunctor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FinFunctor", 2)?;
        st.serialize_field("objects", &self.objects)?;
        st.serialize_field("arrows", &self.arrows)?;
        st.end()
    }
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<FinFunctor, FinCatError> {
        if objects.len() != source.n_objects() {
            return Err(FinCatError::DanglingIndex { what: "object map length".into(), index: objects.len() });
        }
        if arrows.len() != source.n_arrows() {
            return Err(FinCatError::DanglingIndex { what: "arrow map length".into(), index: arrows.len() });
        }
        for (x, &y) in objects.iter().enumerate() {
            if y >= target.n_objects() {
                return Err(FinCatError::DanglingIndex { what: format!("image of {}", source.object_name(x)), index: y });
            }
        }
        for (f, &g) in arrows.iter().enumerate() {
            if g >= target.n_arrows() {
                return Err(FinCatError::DanglingIndex { what: format!("image of {}", source.arrow(f).name), index: g });
            }
            if target.dom(g) != objects[source.dom(f)] || target.cod(g) != objects[source.cod(f)] {
                return Err(FinCatError::FunctorViolation {
                    what: "endpoints",
                    witness: source.arrow(f).name.clone(),
                });
            }
        }
        for x in 0..source.n_objects() {
            if arrows[source.identity(x)] != target.identity(objects[x]) {
                return Err(FinCatError::FunctorViolation {
                    what: "identities",
                    witness: source.object_name(x).to_string(),
                });
            }
        }
        for f in 0..source.n_arrows() {
            for g in 0..source.n_arrows() {
                if let Some(h) = source.compose(f, g) {
                    if target.compose(arrows[f], arrows[g]) != Some(arrows[h]) {
                        return Err(FinCatError::FunctorViolation {
                            what: "composition",
                            witness: format!("({}, {})", source.arrow(f).name, source.arrow(g).name),
                        });
                    }
                }
            }
        }
        Ok(FinFunctor { source, target, objects, arrows })
    }

    /// Builds a functor from an object map and the images of non-identity
    /// arrows (`arrow_images[f]` is ignored for identities).
    pub fn from_maps(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<usize>,
        arrow_images: impl Fn(usize) -> usize,
    ) -> Result<FinFunctor, FinCatError> {
        let arrows = (0..source.n_arrows())
            .map(|f| {
                if source.is_identity(f) {
                    objects.get(source.dom(f)).map(|&y| target.identity(y)).unwrap_or(usize::MAX)
                } else {
                    arrow_images(f)
                }
            })
            .collect();
        FinFunctor::new(source, target, objects, arrows)
    }

    pub(crate) fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, objects: Vec<usize>, arrows: Vec<usize>) -> Self {
        debug_assert!(FinFunctor::new(source.clone(), target.clone(), objects.clone(), arrows.clone()).is_ok());
        FinFunctor { source, target, objects, arrows }
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        let objects = (0..c.n_objects()).collect();
        let arrows = (0..c.n_arrows()).collect();
        FinFunctor { source: c.clone(), target: c, objects, arrows }
    }

    /// The functor from the terminal category picking `x`.
    pub fn point(one: Arc<FinCat>, target: Arc<FinCat>, x: usize) -> FinFunctor {
        let id = target.identity(x);
        FinFunctor { source: one, target, objects: vec![x], arrows: vec![id] }
    }

    /// Sends everything to `x`.
    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, x: usize) -> FinFunctor {
        let id = target.identity(x);
        let objects = vec![x; source.n_objects()];
        let arrows = vec![id; source.n_arrows()];
        FinFunctor { source, target, objects, arrows }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrows
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn on_arrow(&self, f: usize) -> usize {
        self.arrows[f]
    }

    /// `self` then `next`.
    pub fn then(&self, next: &FinFunctor) -> FinFunctor {
        debug_assert_eq!(*self.target, *next.source, "functor composition endpoint mismatch");
        FinFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&y| next.objects[y]).collect(),
            arrows: self.arrows.iter().map(|&g| next.arrows[g]).collect(),
        }
    }

    pub fn opposite_with(&self, source_op: Arc<FinCat>, target_op: Arc<FinCat>) -> FinFunctor {
        FinFunctor { source: source_op, target: target_op, objects: self.objects.clone(), arrows: self.arrows.clone() }
    }

    pub fn opposite(&self) -> FinFunctor {
        self.opposite_with(Arc::new(self.source.opposite()), Arc::new(self.target.opposite()))
    }

    pub fn is_bijective(&self) -> bool {
        let bij = |map: &[usize], n: usize| {
            if map.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        bij(&self.objects, self.target.n_objects()) && bij(&self.arrows, self.target.n_arrows())
    }

    /// The inverse functor, when this functor is an isomorphism.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_bijective() {
            return None;
        }
        let mut objects = vec![0; self.objects.len()];
        for (x, &y) in self.objects.iter().enumerate() {
            objects[y] = x;
        }
        let mut arrows = vec![0; self.arrows.len()];
        for (f, &g) in self.arrows.iter().enumerate() {
            arrows[g] = f;
        }
        Some(FinFunctor { source: self.target.clone(), target: self.source.clone(), objects, arrows })
    }
}

/// Backtracking search for functors, optionally constrained.
pub struct FunctorSearch<'a> {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    object_candidates: Vec<Vec<usize>>,
    arrow_filter: Option<Box<dyn Fn(usize, usize) -> bool + 'a>>,
    injective: bool,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &Arc<FinCat>, target: &Arc<FinCat>) -> Self {
        let all: Vec<usize> = (0..target.n_objects()).collect();
        FunctorSearch {
            source: source.clone(),
            target: target.clone(),
            object_candidates: vec![all; source.n_objects()],
            arrow_filter: None,
            injective: false,
        }
    }

    pub fn object_candidates(mut self, f: impl Fn(usize) -> Vec<usize>) -> Self {
        self.object_candidates = (0..self.source.n_objects()).map(f).collect();
        self
    }

    /// Only allow `g` as the image of the non-identity arrow `f` when `keep(f, g)`.
    pub fn arrow_filter(mut self, keep: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.arrow_filter = Some(Box::new(keep));
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn collect(&self, budget: &Budget) -> Result<Vec<FinFunctor>> {
        let meter = budget.meter("enumerating functors");
        let mut out = Vec::new();
        self.run(&meter, &mut |f| {
            out.push(f);
            true
        })?;
        Ok(out)
    }

    pub fn first(&self, budget: &Budget) -> Result<Option<FinFunctor>> {
        let meter = budget.meter("searching for a functor");
        let mut out = None;
        self.run(&meter, &mut |f| {
            out = Some(f);
            false
        })?;
        Ok(out)
    }

    /// Visits every solution; `visit` returns `false` to stop early.
    ///
    /// Objects are assigned in index order, and each arrow is assigned as
    /// soon as both of its endpoints are, so composition failures prune the
    /// object search early.
    pub fn run(&self, meter: &Meter, visit: &mut dyn FnMut(FinFunctor) -> bool) -> Result<()> {
        let src = &*self.source;
        let mut order: Vec<usize> = src.non_identity_arrows().collect();
        order.sort_by_key(|&f| (src.dom(f).max(src.cod(f)), f));
        let mut batch_end = vec![0; src.n_objects()];
        for (x, end) in batch_end.iter_mut().enumerate() {
            *end = order.iter().filter(|&&f| src.dom(f).max(src.cod(f)) <= x).count();
        }
        let mut pos = vec![None; src.n_arrows()];
        for (k, &f) in order.iter().enumerate() {
            pos[f] = Some(k);
        }
        // composition constraints, checked once all involved arrows are assigned
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); order.len()];
        for &f in &order {
            for &g in &order {
                if let Some(h) = src.compose(f, g) {
                    let step = pos[f].max(pos[g]).max(pos[h]).expect("non-identity");
                    checks[step].push((f, g, h));
                }
            }
        }
        let mut state = State {
            objects: vec![usize::MAX; src.n_objects()],
            arrows: vec![usize::MAX; src.n_arrows()],
            used_objects: vec![false; self.target.n_objects()],
            used_arrows: vec![false; self.target.n_arrows()],
        };
        let plan = Plan { order: &order, batch_end: &batch_end, checks: &checks };
        self.assign_object(0, 0, &plan, &mut state, meter, visit).map(|_| ())
    }

    fn assign_object(
        &self,
        x: usize,
        k: usize,
        plan: &Plan<'_>,
        st: &mut State,
        meter: &Meter,
        visit: &mut dyn FnMut(FinFunctor) -> bool,
    ) -> Result<bool> {
        if x == self.source.n_objects() {
            let f = FinFunctor {
                source: self.source.clone(),
                target: self.target.clone(),
                objects: st.objects.clone(),
                arrows: st.arrows.clone(),
            };
            return Ok(visit(f));
        }
        for &y in &self.object_candidates[x] {
            if self.injective && st.used_objects[y] {
                continue;
            }
            meter.tick()?;
            let id = self.target.identity(y);
            st.objects[x] = y;
            st.arrows[self.source.identity(x)] = id;
            st.used_objects[y] = true;
            st.used_arrows[id] = true;
            let go_on = self.assign_arrow(x, k, plan, st, meter, visit)?;
            st.used_objects[y] = false;
            st.used_arrows[id] = false;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn assign_arrow(
        &self,
        x: usize,
        k: usize,
        plan: &Plan<'_>,
        st: &mut State,
        meter: &Meter,
        visit: &mut dyn FnMut(FinFunctor) -> bool,
    ) -> Result<bool> {
        if k == plan.batch_end[x] {
            return self.assign_object(x + 1, k, plan, st, meter, visit);
        }
        let f = plan.order[k];
        let (a, b) = (st.objects[self.source.dom(f)], st.objects[self.source.cod(f)]);
        for &g in self.target.hom(a, b) {
            if self.injective && st.used_arrows[g] {
                continue;
            }
            if let Some(keep) = &self.arrow_filter {
                if !keep(f, g) {
                    continue;
                }
            }
            meter.tick()?;
            st.arrows[f] = g;
            let ok = plan.checks[k]
                .iter()
                .all(|&(p, q, r)| self.target.compose(st.arrows[p], st.arrows[q]) == Some(st.arrows[r]));
            if ok {
                let was_used = st.used_arrows[g];
                st.used_arrows[g] = true;
                let go_on = self.assign_arrow(x, k + 1, plan, st, meter, visit)?;
                st.used_arrows[g] = was_used;
                if !go_on {
                    st.arrows[f] = usize::MAX;
                    return Ok(false);
                }
            }
        }
        st.arrows[f] = usize::MAX;
        Ok(true)
    }
}

struct Plan<'p> {
    order: &'p [usize],
    batch_end: &'p [usize],
    checks: &'p [Vec<(usize, usize, usize)>],
}

struct State {
    objects: Vec<usize>,
    arrows: Vec<usize>,
    used_objects: Vec<bool>,
    used_arrows: Vec<bool>,
}

/// All functors `a -> b`, complete and duplicate-free.
pub fn enumerate_functors(a: &Arc<FinCat>, b: &Arc<FinCat>, budget: &Budget) -> Result<Vec<FinFunctor>> {
    FunctorSearch::new(a, b).collect(budget)
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &Arc<FinCat>, b: &Arc<FinCat>, budget: &Budget) -> Result<Option<FinFunctor>> {
    if a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows() {
        return Ok(None);
    }
    let hom_profile = |c: &FinCat, x: usize| {
        let n = c.n_objects();
        let mut out: Vec<usize> = (0..n).map(|y| c.hom(x, y).len()).collect();
        out.sort_unstable();
        let mut inc: Vec<usize> = (0..n).map(|y| c.hom(y, x).len()).collect();
        inc.sort_unstable();
        out.extend(inc);
        out
    };
    let search = FunctorSearch::new(a, b)
        .object_candidates(|x| {
            let px = hom_profile(a, x);
            (0..b.n_objects()).filter(|&y| hom_profile(b, y) == px).collect()
        })
        .injective();
    search.first(budget)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn functor_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_functors(&arc(one()), &arc(two()), &b).unwrap().len(), 2);
        assert_eq!(enumerate_functors(&arc(two()), &arc(two()), &b).unwrap().len(), 3);
        assert_eq!(enumerate_functors(&arc(three()), &arc(two()), &b).unwrap().len(), 4);
        assert_eq!(enumerate_functors(&arc(FinCat::empty()), &arc(two()), &b).unwrap().len(), 1);
        assert_eq!(enumerate_functors(&arc(one()), &arc(FinCat::empty()), &b).unwrap().len(), 0);
    }

    #[test]
    fn budget_exceeded_is_an_error() {
        let err = enumerate_functors(&arc(four()), &arc(four()), &Budget::new(3)).unwrap_err();
        assert!(matches!(err, crate::Error::SizeBudgetExceeded { .. }));
    }

    #[test]
    fn bad_functor_is_rejected() {
        // send u : 0 -> 1 of TWO to the identity while moving the endpoints apart
        let err = FinFunctor::new(arc(two()), arc(two()), vec![0, 1], vec![0, 1, 0]).unwrap_err();
        assert!(matches!(err, FinCatError::FunctorViolation { what: "endpoints", .. }));
    }

    #[test]
    fn isomorphisms() {
        let b = Budget::default();
        let two_op = arc(two().opposite());
        let iso = find_isomorphism(&arc(two()), &two_op, &b).unwrap().unwrap();
        assert_eq!(iso.object_map(), &[1, 0]);
        assert!(find_isomorphism(&arc(two()), &arc(discrete(2)), &b).unwrap().is_none());
        assert!(find_isomorphism(&arc(vee()), &arc(vee().opposite()), &b).unwrap().is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let b = Budget::default();
        let v = arc(vee());
        for f in enumerate_functors(&v, &v, &b).unwrap() {
            if let Some(g) = f.inverse() {
                assert_eq!(f.then(&g), FinFunctor::identity(v.clone()));
            }
        }
    }
}
