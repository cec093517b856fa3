//! Finite posets with two factorization systems: lower-set inclusions (with
//! cofinal maps as E), and the restriction of the comprehensive system.

use std::collections::HashMap;
use std::sync::Arc;

use super::poset::{bit, bits, monotone_maps, monotone_search, order_iso_search, Monotone, Poset};
use crate::budget::Budget;
use crate::comprehensive::{discrete_reflection_cat, enumerate_presheaves, is_discrete_fibration, is_final_cat, thin_functor, Elements};
use crate::emcore::{ArrowObject, EmInstance, Factorization, Pullback, PushoutThree};
use crate::error::Result;
use crate::fincat::FinFunctor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosSystem {
    /// M = lower-set inclusions, E = cofinal maps.
    LowerSet,
    /// M = discrete fibrations, E = final functors, on posets as categories.
    Comprehensive,
}

#[derive(Debug, Clone)]
pub struct PosInstance {
    system: PosSystem,
    empty: Arc<Poset>,
    one: Arc<Poset>,
    two: Arc<Poset>,
    three: Arc<Poset>,
}

impl PosInstance {
    pub fn new(system: PosSystem) -> Self {
        PosInstance {
            system,
            empty: Arc::new(Poset::empty()),
            one: Arc::new(Poset::one()),
            two: Arc::new(Poset::chain(2)),
            three: Arc::new(Poset::chain(3)),
        }
    }

    pub fn lower_set() -> Self {
        Self::new(PosSystem::LowerSet)
    }

    pub fn comprehensive() -> Self {
        Self::new(PosSystem::Comprehensive)
    }

    pub fn system(&self) -> PosSystem {
        self.system
    }

    pub fn one(&self) -> &Arc<Poset> {
        &self.one
    }

    pub fn point(&self, x: &Arc<Poset>, a: usize) -> Monotone {
        Monotone { source: self.one.clone(), target: x.clone(), map: vec![a] }
    }

    /// The inclusion of a subset as an induced sub-poset.
    pub fn inclusion(&self, x: &Arc<Poset>, set: u64) -> Monotone {
        let (sub, keep) = x.restrict(set);
        Monotone { source: Arc::new(sub), target: x.clone(), map: keep }
    }
}

fn to_functor(f: &Monotone) -> FinFunctor {
    let (s, t) = (Arc::new(f.source.to_fincat()), Arc::new(f.target.to_fincat()));
    thin_functor(&s, &t, f.map.clone())
}

/// The total of a discrete fibration over a poset, as a poset.
fn fibration_to_monotone(m: &FinFunctor, base: &Arc<Poset>) -> Monotone {
    let total = Poset::from_fincat(m.source()).expect("total of a discrete fibration over a poset is a poset");
    Monotone { source: Arc::new(total), target: base.clone(), map: m.object_map().to_vec() }
}

impl EmInstance for PosInstance {
    type Space = Arc<Poset>;
    type Map = Monotone;

    fn name(&self) -> &'static str {
        match self.system {
            PosSystem::LowerSet => "pos",
            PosSystem::Comprehensive => "pos-comp",
        }
    }

    fn terminal(&self) -> Arc<Poset> {
        self.one.clone()
    }

    fn initial(&self) -> Arc<Poset> {
        self.empty.clone()
    }

    fn source(&self, f: &Monotone) -> Arc<Poset> {
        f.source.clone()
    }

    fn target(&self, f: &Monotone) -> Arc<Poset> {
        f.target.clone()
    }

    fn identity(&self, x: &Arc<Poset>) -> Monotone {
        Monotone::identity(x.clone())
    }

    fn compose(&self, first: &Monotone, second: &Monotone) -> Monotone {
        first.then(second)
    }

    fn to_terminal(&self, x: &Arc<Poset>) -> Monotone {
        Monotone { source: x.clone(), target: self.one.clone(), map: vec![0; x.len()] }
    }

    fn from_initial(&self, x: &Arc<Poset>) -> Monotone {
        Monotone { source: self.empty.clone(), target: x.clone(), map: vec![] }
    }

    fn maps(&self, a: &Arc<Poset>, b: &Arc<Poset>, budget: &Budget) -> Result<Vec<Monotone>> {
        monotone_maps(a, b, budget)
    }

    fn maps_over(&self, p: &Monotone, n: &Monotone, budget: &Budget) -> Result<Vec<Monotone>> {
        let over: Vec<u64> = (0..p.target.len())
            .map(|x| n.map.iter().enumerate().filter(|&(_, &y)| y == x).fold(0, |m, (b, _)| m | bit(b)))
            .collect();
        monotone_search(&p.source, &n.source, &|a| over[p.map[a]], &budget.meter("enumerating maps over a base"))
    }

    fn maps_over_extending(
        &self,
        p: &Monotone,
        n: &Monotone,
        along: &Monotone,
        g: &Monotone,
        budget: &Budget,
    ) -> Result<Vec<Monotone>> {
        let over: Vec<u64> = (0..p.target.len())
            .map(|x| n.map.iter().enumerate().filter(|&(_, &y)| y == x).fold(0, |m, (b, _)| m | bit(b)))
            .collect();
        let mut fixed = vec![u64::MAX; p.source.len()];
        for (a, &v) in along.map.iter().enumerate() {
            fixed[v] &= bit(g.map[a]);
        }
        let found = monotone_search(
            &p.source,
            &n.source,
            &|a| over[p.map[a]] & fixed[a],
            &budget.meter("enumerating maps over a base"),
        )?;
        Ok(found.into_iter().filter(|u| self.compose(along, u) == *g).collect())
    }

    fn find_iso_over(&self, m: &Monotone, n: &Monotone, budget: &Budget) -> Result<Option<(Monotone, Monotone)>> {
        let over: Vec<u64> = (0..m.target.len())
            .map(|x| n.map.iter().enumerate().filter(|&(_, &y)| y == x).fold(0, |acc, (b, _)| acc | bit(b)))
            .collect();
        let meter = budget.meter("searching isomorphisms over a base");
        let Some(u) = order_iso_search(&m.source, &n.source, &|a| over[m.map[a]], &meter)? else {
            return Ok(None);
        };
        let mut inv = vec![0; u.map.len()];
        for (a, &b) in u.map.iter().enumerate() {
            inv[b] = a;
        }
        let v = Monotone { source: n.source.clone(), target: m.source.clone(), map: inv };
        Ok(Some((u, v)))
    }

    fn point_name(&self, x: &Arc<Poset>, i: usize) -> String {
        x.name(i).to_string()
    }

    fn points(&self, x: &Arc<Poset>) -> Vec<Monotone> {
        (0..x.len()).map(|a| self.point(x, a)).collect()
    }

    fn pullback(&self, m: &Monotone, f: &Monotone) -> Pullback<Monotone> {
        let (a, b) = (&f.source, &m.source);
        let pairs: Vec<(usize, usize)> =
            (0..a.len()).flat_map(|i| (0..b.len()).filter(move |&j| m.map[j] == f.map[i]).map(move |j| (i, j))).collect();
        let names = pairs.iter().map(|&(i, j)| format!("({},{})", a.name(i), b.name(j))).collect();
        let leq = pairs
            .iter()
            .map(|&(i, j)| {
                pairs.iter().enumerate().filter(|&(_, &(i2, j2))| a.le(i, i2) && b.le(j, j2)).fold(0, |r, (k, _)| r | bit(k))
            })
            .collect();
        let apex = Arc::new(Poset::from_rows(names, leq));
        Pullback {
            to_a: Monotone { source: apex.clone(), target: a.clone(), map: pairs.iter().map(|p| p.0).collect() },
            to_b: Monotone { source: apex, target: b.clone(), map: pairs.iter().map(|p| p.1).collect() },
        }
    }

    fn pullback_pair(&self, pb: &Pullback<Monotone>, to_a: &Monotone, to_b: &Monotone) -> Monotone {
        let index: HashMap<(usize, usize), usize> =
            (0..pb.to_a.source.len()).map(|k| ((pb.to_a.map[k], pb.to_b.map[k]), k)).collect();
        let map = (0..to_a.source.len()).map(|t| index[&(to_a.map[t], to_b.map[t])]).collect();
        Monotone { source: to_a.source.clone(), target: pb.to_a.source.clone(), map }
    }

    fn in_m(&self, f: &Monotone) -> bool {
        match self.system {
            PosSystem::LowerSet => f.is_injective() && f.reflects_order() && f.target.is_lower(f.image()),
            PosSystem::Comprehensive => is_discrete_fibration(&to_functor(f)).is_some(),
        }
    }

    fn factorize(&self, p: &Monotone) -> Result<Factorization<Monotone>> {
        match self.system {
            PosSystem::LowerSet => {
                let m = self.inclusion(&p.target, p.target.lower_closure(p.image()));
                let rank: HashMap<usize, usize> = m.map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                let e = Monotone { source: p.source.clone(), target: m.source.clone(), map: p.map.iter().map(|x| rank[x]).collect() };
                Ok(Factorization { e, m })
            }
            PosSystem::Comprehensive => {
                let fac = discrete_reflection_cat(&to_functor(p));
                let m = fibration_to_monotone(&fac.m, &p.target);
                let e = Monotone { source: p.source.clone(), target: m.source.clone(), map: fac.e.object_map().to_vec() };
                Ok(Factorization { e, m })
            }
        }
    }

    fn is_iso(&self, f: &Monotone) -> bool {
        f.is_iso()
    }

    fn discrete_spaces(&self, x: &Arc<Poset>, fiber_bound: usize, budget: &Budget) -> Result<Vec<Monotone>> {
        match self.system {
            PosSystem::LowerSet => Ok(x.lower_sets().into_iter().map(|s| self.inclusion(x, s)).collect()),
            PosSystem::Comprehensive => {
                let cat = Arc::new(x.to_fincat());
                let sheaves = enumerate_presheaves(&cat, fiber_bound, budget)?;
                Ok(sheaves
                    .iter()
                    .map(|s| {
                        let action = |h: usize, j: usize| s.action[h][j];
                        fibration_to_monotone(&Elements::build(&cat, &s.fibers, &action).proj, x)
                    })
                    .collect())
            }
        }
    }

    fn discrete_spaces_exhaustive(&self) -> bool {
        self.system == PosSystem::LowerSet
    }

    fn size(&self, x: &Arc<Poset>) -> usize {
        x.len()
    }

    fn native_in_e(&self, f: &Monotone) -> Option<bool> {
        Some(match self.system {
            PosSystem::LowerSet => f.target.lower_closure(f.image()) == f.target.all(),
            PosSystem::Comprehensive => is_final_cat(&to_functor(f)),
        })
    }

    fn op_space(&self, x: &Arc<Poset>) -> Option<Arc<Poset>> {
        Some(Arc::new(x.opposite()))
    }

    fn op_map(&self, f: &Monotone) -> Option<Monotone> {
        Some(f.opposite())
    }

    fn arrow_object(&self) -> Option<ArrowObject<Arc<Poset>, Monotone>> {
        Some(ArrowObject { two: self.two.clone(), s: self.point(&self.two, 0), t: self.point(&self.two, 1) })
    }

    fn pushout_three(&self) -> Option<PushoutThree<Arc<Poset>, Monotone>> {
        let leg = |a, b| Monotone { source: self.two.clone(), target: self.three.clone(), map: vec![a, b] };
        Some(PushoutThree { three: self.three.clone(), l1: leg(0, 1), l2: leg(1, 2), l3: leg(0, 2) })
    }
}

/// The poset of lower-sets of `x` ordered by inclusion, with the map
/// sending each element to its principal lower-set.
pub fn pos_power_object(x: &Arc<Poset>) -> (Arc<Poset>, Monotone) {
    let sets = x.lower_sets();
    let names = sets
        .iter()
        .map(|&s| format!("{{{}}}", bits(s).map(|i| x.name(i)).collect::<Vec<_>>().join(",")))
        .collect();
    let leq = sets
        .iter()
        .map(|&s| sets.iter().enumerate().filter(|&(_, &t)| s & !t == 0).fold(0, |r, (k, _)| r | bit(k)))
        .collect();
    let power = Arc::new(Poset::from_rows(names, leq));
    let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let y = Monotone { source: x.clone(), target: power.clone(), map: (0..x.len()).map(|a| index[&x.down(a)]).collect() };
    (power, y)
}

/// The poset of monotone maps `a -> b` under the pointwise order, with the
/// maps themselves in enumeration order.
pub fn exponential(a: &Arc<Poset>, b: &Arc<Poset>, budget: &Budget) -> Result<(Arc<Poset>, Vec<Monotone>)> {
    let maps = monotone_maps(a, b, budget)?;
    let names = maps.iter().map(|f| format!("[{}]", f.map.iter().map(|&y| b.name(y)).collect::<Vec<_>>().join(","))).collect();
    let leq = maps
        .iter()
        .map(|f| {
            maps.iter()
                .enumerate()
                .filter(|&(_, g)| (0..a.len()).all(|i| b.le(f.map[i], g.map[i])))
                .fold(0, |r, (k, _)| r | bit(k))
        })
        .collect();
    Ok((Arc::new(Poset::from_rows(names, leq)), maps))
}

/// The hom map `x^op × x -> 2`, `(a', a) ↦ [a' <= a]`, and its two
/// transposes `x -> 2^(x^op)` and `x^op -> 2^x`.
pub struct HomMap {
    pub hom: Monotone,
    pub left: Monotone,
    pub right: Monotone,
}

pub fn pos_hom_map(x: &Arc<Poset>, budget: &Budget) -> Result<HomMap> {
    let two = Arc::new(Poset::chain(2));
    let xop = Arc::new(x.opposite());
    let prod = Arc::new(xop.product(x));
    let n = x.len();
    let hom = Monotone::new(prod, two.clone(), (0..n * n).map(|k| usize::from(x.le(k / n, k % n))).collect())?;
    let transpose = |dom: &Arc<Poset>, other: &Arc<Poset>, value: &dyn Fn(usize, usize) -> usize| -> Result<Monotone> {
        let (exp, maps) = exponential(other, &two, budget)?;
        let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, f)| (f.map.as_slice(), i)).collect();
        let map = (0..dom.len())
            .map(|a| {
                let row: Vec<usize> = (0..other.len()).map(|b| value(a, b)).collect();
                index[row.as_slice()]
            })
            .collect();
        Monotone::new(dom.clone(), exp, map)
    };
    let left = transpose(x, &xop, &|a, a2| usize::from(x.le(a2, a)))?;
    let right = transpose(&xop, x, &|a2, a| usize::from(x.le(a2, a)))?;
    Ok(HomMap { hom, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::{check_orthogonal, in_e};
    use crate::theory::{adherence, colimit, colimit_direct, is_absolute_colimit};

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn monotone_maps_two_to_two() {
        let t = arc(Poset::chain(2));
        assert_eq!(monotone_maps(&t, &t, &Budget::default()).unwrap().len(), 3);
    }

    #[test]
    fn lower_set_factorizations() {
        let pos = PosInstance::lower_set();
        let t = arc(Poset::chain(2));
        let fac = pos.factorize(&pos.point(&t, 0)).unwrap();
        assert_eq!(fac.m.map, vec![0]);
        let v = arc(Poset::vee());
        let ab = pos.inclusion(&v, 0b011);
        let fac = pos.factorize(&ab).unwrap();
        assert_eq!(fac.m.image(), 0b011);
        let id = pos.identity(&v);
        assert_eq!(pos.factorize(&id).unwrap(), Factorization { e: id.clone(), m: id });
    }

    #[test]
    fn power_object_sizes() {
        assert_eq!(pos_power_object(&arc(Poset::chain(2))).0.len(), 3);
        let (omega, _) = pos_power_object(&arc(Poset::one()));
        assert_eq!(omega.len(), 2);
        assert!(omega.le(0, 1));
        assert_eq!(pos_power_object(&arc(Poset::empty())).0.len(), 1);
    }

    #[test]
    fn fold_map_not_orthogonal_to_antichain() {
        let pos = PosInstance::lower_set();
        let d2 = arc(Poset::antichain(2));
        let fold = pos.to_terminal(&d2);
        let r = check_orthogonal(&pos, &fold, &pos.to_terminal(&d2), &Budget::default()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample.unwrap().diagonals, 0);
        assert!(!pos.in_m(&pos.to_terminal(&d2)));
        assert!(PosInstance::comprehensive().in_m(&pos.to_terminal(&d2)));
    }

    #[test]
    fn t_is_final_in_both_systems() {
        let t = arc(Poset::chain(2));
        for pos in [PosInstance::lower_set(), PosInstance::comprehensive()] {
            assert!(in_e(&pos, &pos.point(&t, 1)).unwrap());
            assert!(!in_e(&pos, &pos.point(&t, 0)).unwrap());
        }
    }

    #[test]
    fn colimit_of_minimal_elements_of_vee() {
        let v = arc(Poset::vee());
        for pos in [PosInstance::lower_set(), PosInstance::comprehensive()] {
            let adh = adherence(&pos, &v, &Budget::default()).unwrap();
            let ab = pos.inclusion(&v, 0b011);
            let col = colimit(&pos, &adh, &ab, &Budget::default()).unwrap().unwrap();
            assert_eq!(col.vertex, 2);
            assert!(!is_absolute_colimit(&pos, &adh, &ab, 2, &Budget::default()).unwrap());
            assert_eq!(colimit_direct(&pos, &adh, &ab, &Budget::default()).unwrap().unwrap().vertex, 2);
        }
    }

    #[test]
    fn adherence_of_a_poset_is_itself() {
        let v = arc(Poset::vee());
        let pos = PosInstance::lower_set();
        let adh = adherence(&pos, &v, &Budget::default()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(adh.hom(a, b).len(), usize::from(v.le(a, b)));
            }
        }
    }

    #[test]
    fn hom_map_of_two() {
        let h = pos_hom_map(&arc(Poset::chain(2)), &Budget::default()).unwrap();
        // (a', a) ↦ [a' <= a] over indices a' * 2 + a
        assert_eq!(h.hom.map, vec![1, 1, 0, 1]);
    }
}
