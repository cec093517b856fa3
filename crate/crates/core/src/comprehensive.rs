//! The Cat instance: finite categories, with E the final functors and M the
//! discrete fibrations. The reflection of `p : P -> X` has, over each object
//! `x`, the connected components of `x/p` as its fiber.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::emcore::{ArrowObject, EmInstance, Factorization, Pullback, PushoutThree};
use crate::error::Result;
use crate::fincat::{fixtures, Arrow, FinCat, FinFunctor, FunctorSearch, RawCategory};

/// The unique lift of every arrow of the base to every object over its
/// codomain.
#[derive(Debug, Clone)]
pub struct DiscreteFibrationWitness {
    pub functor: FinFunctor,
    lifts: HashMap<(usize, usize), usize>,
}

impl DiscreteFibrationWitness {
    /// The arrow over `h` ending at `b`.
    pub fn lift(&self, h: usize, b: usize) -> usize {
        self.lifts[&(h, b)]
    }
}

pub fn is_discrete_fibration(m: &FinFunctor) -> Option<DiscreteFibrationWitness> {
    let (total, base) = (m.source(), m.target());
    let mut lifts = HashMap::new();
    for g in 0..total.n_arrows() {
        if lifts.insert((m.on_arrow(g), total.cod(g)), g).is_some() {
            return None;
        }
    }
    for h in 0..base.n_arrows() {
        for b in (0..total.n_objects()).filter(|&b| m.on_object(b) == base.cod(h)) {
            if !lifts.contains_key(&(h, b)) {
                return None;
            }
        }
    }
    Some(DiscreteFibrationWitness { functor: m.clone(), lifts })
}

/// The objects `(a, k : x -> pa)` of `x/p` and their connected components.
pub(crate) struct UnderComponents {
    pub pairs: Vec<(usize, usize)>,
    pub class_of: Vec<usize>,
    pub count: usize,
    index: HashMap<(usize, usize), usize>,
}

impl UnderComponents {
    pub fn class(&self, a: usize, k: usize) -> usize {
        self.class_of[self.index[&(a, k)]]
    }
}

pub(crate) fn under_components(x: usize, p: &FinFunctor) -> UnderComponents {
    let (src, base) = (p.source(), p.target());
    let mut pairs = Vec::new();
    for a in 0..src.n_objects() {
        for &k in base.hom(x, p.on_object(a)) {
            pairs.push((a, k));
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pk)| (pk, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, &(a, k)) in pairs.iter().enumerate() {
        for alpha in (0..src.n_arrows()).filter(|&al| src.dom(al) == a) {
            let k2 = base.compose(k, p.on_arrow(alpha)).expect("composable");
            let j = index[&(src.cod(alpha), k2)];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut label = HashMap::new();
    let mut class_of = Vec::with_capacity(pairs.len());
    for i in 0..pairs.len() {
        let r = find(&mut parent, i);
        let next = label.len();
        class_of.push(*label.entry(r).or_insert(next));
    }
    UnderComponents { count: label.len(), pairs, class_of, index }
}

/// Every `x/p` is nonempty and connected.
pub fn is_final_cat(p: &FinFunctor) -> bool {
    (0..p.target().n_objects()).all(|x| under_components(x, p).count == 1)
}

/// The category of elements of a presheaf on `base`, given fiber sizes and
/// the action `action(h, j)` of `h : x -> y` on the `j`-th element over `y`.
pub(crate) struct Elements {
    pub proj: FinFunctor,
    offset: Vec<usize>,
    arrow_of: Vec<Vec<usize>>,
}

impl Elements {
    pub fn build(base: &Arc<FinCat>, fibers: &[usize], action: &dyn Fn(usize, usize) -> usize) -> Elements {
        let mut offset = Vec::with_capacity(fibers.len());
        let mut objects = Vec::new();
        let mut obj_base = Vec::new();
        for (x, &n) in fibers.iter().enumerate() {
            offset.push(objects.len());
            for i in 0..n {
                objects.push(format!("{}#{}", base.object_name(x), i));
                obj_base.push(x);
            }
        }
        let mut arrows = Vec::new();
        let mut arr_base = Vec::new();
        let mut arrow_of = Vec::with_capacity(base.n_arrows());
        for h in 0..base.n_arrows() {
            let (x, y) = (base.dom(h), base.cod(h));
            let mut row = Vec::with_capacity(fibers[y]);
            for j in 0..fibers[y] {
                row.push(arrows.len());
                let name = if base.is_identity(h) {
                    format!("id({})", objects[offset[y] + j])
                } else {
                    format!("{}#{}", base.arrow(h).name, j)
                };
                arrows.push(Arrow::new(name, offset[x] + action(h, j), offset[y] + j));
                arr_base.push(h);
            }
            arrow_of.push(row);
        }
        let identity = (0..objects.len()).map(|o| arrow_of[base.identity(obj_base[o])][o - offset[obj_base[o]]]).collect();
        let mut compose = Vec::new();
        for k in 0..base.n_arrows() {
            for l in 0..fibers[base.cod(k)] {
                let j = action(k, l);
                for h in (0..base.n_arrows()).filter(|&h| base.cod(h) == base.dom(k)) {
                    let hk = base.compose(h, k).expect("composable");
                    compose.push((arrow_of[h][j], arrow_of[k][l], arrow_of[hk][l]));
                }
            }
        }
        let total = Arc::new(FinCat::from_trusted(RawCategory { objects, arrows, identity, compose }));
        let proj = FinFunctor::new_unchecked(total, base.clone(), obj_base, arr_base);
        Elements { proj, offset, arrow_of }
    }

    pub fn object(&self, x: usize, i: usize) -> usize {
        self.offset[x] + i
    }

    pub fn arrow(&self, h: usize, j: usize) -> usize {
        self.arrow_of[h][j]
    }
}

/// `p = e ; m` with `m` the discrete fibration whose fiber over `x` is the
/// set of components of `x/p`, and `e` sending `a` to the class of `id_{pa}`.
pub fn discrete_reflection_cat(p: &FinFunctor) -> Factorization<FinFunctor> {
    let base = p.target();
    let unders: Vec<UnderComponents> = (0..base.n_objects()).map(|x| under_components(x, p)).collect();
    // one representative (a, k) per class
    let reps: Vec<Vec<(usize, usize)>> = unders
        .iter()
        .map(|u| {
            let mut r = vec![(0, 0); u.count];
            for (i, &pk) in u.pairs.iter().enumerate().rev() {
                r[u.class_of[i]] = pk;
            }
            r
        })
        .collect();
    let fibers: Vec<usize> = unders.iter().map(|u| u.count).collect();
    let action = |h: usize, c: usize| {
        let (a, k) = reps[base.cod(h)][c];
        unders[base.dom(h)].class(a, base.compose(h, k).expect("composable"))
    };
    let el = Elements::build(base, &fibers, &action);
    let src = p.source();
    let home = |a: usize| {
        let x = p.on_object(a);
        unders[x].class(a, base.identity(x))
    };
    let objects = (0..src.n_objects()).map(|a| el.object(p.on_object(a), home(a))).collect();
    let arrows = (0..src.n_arrows()).map(|al| el.arrow(p.on_arrow(al), home(src.cod(al)))).collect();
    let e = FinFunctor::new_unchecked(src.clone(), el.proj.source().clone(), objects, arrows);
    Factorization { e, m: el.proj }
}

/// A presheaf on a finite category: fiber sizes and, for each arrow
/// `h : x -> y`, the map from the fiber over `y` to the fiber over `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Presheaf {
    pub fibers: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// All presheaves on `base` with fibers of at most `bound` elements, one per
/// isomorphism class, in a deterministic order.
pub(crate) fn enumerate_presheaves(base: &FinCat, bound: usize, budget: &Budget) -> Result<Vec<Presheaf>> {
    let meter = budget.meter("enumerating presheaves");
    let n = base.n_objects();
    let order: Vec<usize> = base.non_identity_arrows().collect();
    let mut pos = vec![usize::MAX; base.n_arrows()];
    for (i, &h) in order.iter().enumerate() {
        pos[h] = i;
    }
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); order.len()];
    for &h in &order {
        for &k in &order {
            if let Some(hk) = base.compose(h, k) {
                let step = pos[h].max(pos[k]).max(if base.is_identity(hk) { 0 } else { pos[hk] });
                checks[step].push((h, k, hk));
            }
        }
    }

    let shape: Vec<(usize, usize)> = (0..base.n_arrows()).map(|h| (base.dom(h), base.cod(h))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut fibers = vec![0; n];
    loop {
        let mut action: Vec<Vec<usize>> =
            (0..base.n_arrows()).map(|h| if base.is_identity(h) { (0..fibers[base.cod(h)]).collect() } else { Vec::new() }).collect();
        assign(base, &order, &checks, &fibers, 0, &mut action, &meter, &mut |act| {
            seen.insert(canonical(&shape, &fibers, act));
        })?;
        // next fiber vector, odometer style
        let mut i = 0;
        while i < n && fibers[i] == bound {
            fibers[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        fibers[i] += 1;
    }
    Ok(seen.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn assign(
    base: &FinCat,
    order: &[usize],
    checks: &[Vec<(usize, usize, usize)>],
    fibers: &[usize],
    k: usize,
    action: &mut Vec<Vec<usize>>,
    meter: &crate::budget::Meter,
    out: &mut dyn FnMut(&[Vec<usize>]),
) -> Result<()> {
    if k == order.len() {
        out(action);
        return Ok(());
    }
    let h = order[k];
    let (nx, ny) = (fibers[base.dom(h)], fibers[base.cod(h)]);
    if ny > 0 && nx == 0 {
        return Ok(());
    }
    let total = nx.pow(ny as u32);
    for code in 0..total {
        meter.tick()?;
        let mut c = code;
        action[h] = (0..ny)
            .map(|_| {
                let d = c % nx.max(1);
                c /= nx.max(1);
                d
            })
            .collect();
        let ok = checks[k].iter().all(|&(f, g, fg)| (0..fibers[base.cod(g)]).all(|l| action[fg][l] == action[f][action[g][l]]));
        if ok {
            assign(base, order, checks, fibers, k + 1, action, meter, out)?;
        }
    }
    action[h].clear();
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// The least relabelling of a presheaf under permutations of its fibers;
/// `shape[h]` is `(dom h, cod h)`.
pub(crate) fn canonical(shape: &[(usize, usize)], fibers: &[usize], action: &[Vec<usize>]) -> Presheaf {
    let perms: Vec<Vec<Vec<usize>>> = fibers.iter().map(|&k| permutations(k)).collect();
    let mut choice = vec![0; fibers.len()];
    let mut best: Option<Vec<Vec<usize>>> = None;
    loop {
        let sigma: Vec<&Vec<usize>> = choice.iter().enumerate().map(|(x, &c)| &perms[x][c]).collect();
        let permuted: Vec<Vec<usize>> = shape
            .iter()
            .enumerate()
            .map(|(h, &(x, y))| {
                let mut row = vec![0; fibers[y]];
                for (j, &i) in action[h].iter().enumerate() {
                    row[sigma[y][j]] = sigma[x][i];
                }
                row
            })
            .collect();
        if best.as_ref().is_none_or(|b| permuted < *b) {
            best = Some(permuted);
        }
        let mut i = 0;
        while i < choice.len() && choice[i] + 1 == perms[i].len() {
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
        choice[i] += 1;
    }
    Presheaf { fibers: fibers.to_vec(), action: best.expect("at least one permutation") }
}

/// Functor into a thin category, determined by its object map.
pub fn thin_functor(source: &Arc<FinCat>, target: &Arc<FinCat>, objects: Vec<usize>) -> FinFunctor {
    let arrows = (0..source.n_arrows()).map(|f| target.hom(objects[source.dom(f)], objects[source.cod(f)])[0]).collect();
    FinFunctor::new_unchecked(source.clone(), target.clone(), objects, arrows)
}

/// Finite categories and functors with the comprehensive factorization.
#[derive(Debug, Clone)]
pub struct CatInstance {
    empty: Arc<FinCat>,
    one: Arc<FinCat>,
    two: Arc<FinCat>,
    three: Arc<FinCat>,
}

impl Default for CatInstance {
    fn default() -> Self {
        CatInstance {
            empty: Arc::new(FinCat::empty()),
            one: Arc::new(fixtures::one()),
            two: Arc::new(fixtures::two()),
            three: Arc::new(fixtures::three()),
        }
    }
}

impl CatInstance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn one(&self) -> &Arc<FinCat> {
        &self.one
    }

    pub fn point(&self, x: &Arc<FinCat>, obj: usize) -> FinFunctor {
        FinFunctor::point(self.one.clone(), x.clone(), obj)
    }
}

impl EmInstance for CatInstance {
    type Space = Arc<FinCat>;
    type Map = FinFunctor;

    fn name(&self) -> &'static str {
        "cat"
    }

    fn terminal(&self) -> Arc<FinCat> {
        self.one.clone()
    }

    fn initial(&self) -> Arc<FinCat> {
        self.empty.clone()
    }

    fn source(&self, f: &FinFunctor) -> Arc<FinCat> {
        f.source().clone()
    }

    fn target(&self, f: &FinFunctor) -> Arc<FinCat> {
        f.target().clone()
    }

    fn identity(&self, x: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::identity(x.clone())
    }

    fn compose(&self, first: &FinFunctor, second: &FinFunctor) -> FinFunctor {
        first.then(second)
    }

    fn to_terminal(&self, x: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::constant(x.clone(), self.one.clone(), 0)
    }

    fn from_initial(&self, x: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::new_unchecked(self.empty.clone(), x.clone(), vec![], vec![])
    }

    fn maps(&self, a: &Arc<FinCat>, b: &Arc<FinCat>, budget: &Budget) -> Result<Vec<FinFunctor>> {
        FunctorSearch::new(a, b).collect(budget)
    }

    fn maps_over(&self, p: &FinFunctor, n: &FinFunctor, budget: &Budget) -> Result<Vec<FinFunctor>> {
        let (ps, ns) = (p.source(), n.source());
        FunctorSearch::new(ps, ns)
            .object_candidates(|a| (0..ns.n_objects()).filter(|&b| n.on_object(b) == p.on_object(a)).collect())
            .arrow_filter(|f, g| n.on_arrow(g) == p.on_arrow(f))
            .collect(budget)
    }

    fn maps_over_extending(
        &self,
        p: &FinFunctor,
        n: &FinFunctor,
        along: &FinFunctor,
        g: &FinFunctor,
        budget: &Budget,
    ) -> Result<Vec<FinFunctor>> {
        let (ps, ns) = (p.source(), n.source());
        let mut fixed_obj = vec![None; ps.n_objects()];
        let mut fixed_arr = vec![None; ps.n_arrows()];
        for a in 0..along.source().n_objects() {
            fixed_obj[along.on_object(a)] = Some(g.on_object(a));
        }
        for f in 0..along.source().n_arrows() {
            fixed_arr[along.on_arrow(f)] = Some(g.on_arrow(f));
        }
        let found = FunctorSearch::new(ps, ns)
            .object_candidates(|a| {
                (0..ns.n_objects())
                    .filter(|&b| n.on_object(b) == p.on_object(a) && fixed_obj[a].is_none_or(|v| v == b))
                    .collect()
            })
            .arrow_filter(|f, h| n.on_arrow(h) == p.on_arrow(f) && fixed_arr[f].is_none_or(|v| v == h))
            .collect(budget)?;
        // two points of `along` may share an image with different values of `g`
        Ok(found.into_iter().filter(|u| along.then(u) == *g).collect())
    }

    fn find_iso_over(&self, m: &FinFunctor, n: &FinFunctor, budget: &Budget) -> Result<Option<(FinFunctor, FinFunctor)>> {
        let (ms, ns) = (m.source(), n.source());
        if ms.n_objects() != ns.n_objects() || ms.n_arrows() != ns.n_arrows() {
            return Ok(None);
        }
        let mut found = None;
        FunctorSearch::new(ms, ns)
            .object_candidates(|a| (0..ns.n_objects()).filter(|&b| n.on_object(b) == m.on_object(a)).collect())
            .arrow_filter(|f, g| n.on_arrow(g) == m.on_arrow(f))
            .injective()
            .run(&budget.meter("searching isomorphisms over a base"), &mut |u| match u.inverse() {
                Some(v) => {
                    found = Some((u, v));
                    false
                }
                None => true,
            })?;
        Ok(found)
    }

    fn point_name(&self, x: &Arc<FinCat>, i: usize) -> String {
        x.object_name(i).to_string()
    }

    fn points(&self, x: &Arc<FinCat>) -> Vec<FinFunctor> {
        (0..x.n_objects()).map(|o| self.point(x, o)).collect()
    }

    fn pullback(&self, m: &FinFunctor, f: &FinFunctor) -> Pullback<FinFunctor> {
        let (a, b) = (f.source(), m.source());
        let mut objects = Vec::new();
        let mut pairs = Vec::new();
        let mut obj_index = HashMap::new();
        for i in 0..a.n_objects() {
            for j in (0..b.n_objects()).filter(|&j| m.on_object(j) == f.on_object(i)) {
                obj_index.insert((i, j), pairs.len());
                objects.push(format!("({},{})", a.object_name(i), b.object_name(j)));
                pairs.push((i, j));
            }
        }
        let mut arrows = Vec::new();
        let mut arr_pairs = Vec::new();
        let mut arr_index = HashMap::new();
        for al in 0..a.n_arrows() {
            for be in (0..b.n_arrows()).filter(|&be| m.on_arrow(be) == f.on_arrow(al)) {
                arr_index.insert((al, be), arr_pairs.len());
                let (d, c) = (obj_index[&(a.dom(al), b.dom(be))], obj_index[&(a.cod(al), b.cod(be))]);
                arrows.push(Arrow::new(format!("({},{})", a.arrow(al).name, b.arrow(be).name), d, c));
                arr_pairs.push((al, be));
            }
        }
        let identity = pairs.iter().map(|&(i, j)| arr_index[&(a.identity(i), b.identity(j))]).collect();
        let mut compose = Vec::new();
        for (k1, &(a1, b1)) in arr_pairs.iter().enumerate() {
            for (k2, &(a2, b2)) in arr_pairs.iter().enumerate() {
                if arrows[k1].cod == arrows[k2].dom {
                    let h = (a.compose(a1, a2).expect("composable"), b.compose(b1, b2).expect("composable"));
                    compose.push((k1, k2, arr_index[&h]));
                }
            }
        }
        let apex = Arc::new(FinCat::from_trusted(RawCategory { objects, arrows, identity, compose }));
        let to_a = FinFunctor::new_unchecked(
            apex.clone(),
            a.clone(),
            pairs.iter().map(|p| p.0).collect(),
            arr_pairs.iter().map(|p| p.0).collect(),
        );
        let to_b = FinFunctor::new_unchecked(
            apex,
            b.clone(),
            pairs.iter().map(|p| p.1).collect(),
            arr_pairs.iter().map(|p| p.1).collect(),
        );
        Pullback { to_a, to_b }
    }

    fn pullback_pair(&self, pb: &Pullback<FinFunctor>, to_a: &FinFunctor, to_b: &FinFunctor) -> FinFunctor {
        let apex = pb.to_a.source();
        let objs: HashMap<(usize, usize), usize> =
            (0..apex.n_objects()).map(|o| ((pb.to_a.on_object(o), pb.to_b.on_object(o)), o)).collect();
        let arrs: HashMap<(usize, usize), usize> =
            (0..apex.n_arrows()).map(|g| ((pb.to_a.on_arrow(g), pb.to_b.on_arrow(g)), g)).collect();
        let t = to_a.source();
        let objects = (0..t.n_objects()).map(|o| objs[&(to_a.on_object(o), to_b.on_object(o))]).collect();
        let arrows = (0..t.n_arrows()).map(|g| arrs[&(to_a.on_arrow(g), to_b.on_arrow(g))]).collect();
        FinFunctor::new_unchecked(t.clone(), apex.clone(), objects, arrows)
    }

    fn in_m(&self, f: &FinFunctor) -> bool {
        is_discrete_fibration(f).is_some()
    }

    fn factorize(&self, p: &FinFunctor) -> Result<Factorization<FinFunctor>> {
        Ok(discrete_reflection_cat(p))
    }

    fn is_iso(&self, f: &FinFunctor) -> bool {
        f.is_bijective()
    }

    fn discrete_spaces(&self, x: &Arc<FinCat>, fiber_bound: usize, budget: &Budget) -> Result<Vec<FinFunctor>> {
        let sheaves = enumerate_presheaves(x, fiber_bound, budget)?;
        Ok(sheaves
            .iter()
            .map(|s| {
                let action = |h: usize, j: usize| s.action[h][j];
                Elements::build(x, &s.fibers, &action).proj
            })
            .collect())
    }

    fn size(&self, x: &Arc<FinCat>) -> usize {
        x.n_objects()
    }

    fn native_in_e(&self, f: &FinFunctor) -> Option<bool> {
        Some(is_final_cat(f))
    }

    fn op_space(&self, x: &Arc<FinCat>) -> Option<Arc<FinCat>> {
        Some(Arc::new(x.opposite()))
    }

    fn op_map(&self, f: &FinFunctor) -> Option<FinFunctor> {
        Some(f.opposite())
    }

    fn arrow_object(&self) -> Option<ArrowObject<Arc<FinCat>, FinFunctor>> {
        Some(ArrowObject { two: self.two.clone(), s: self.point(&self.two, 0), t: self.point(&self.two, 1) })
    }

    fn pushout_three(&self) -> Option<PushoutThree<Arc<FinCat>, FinFunctor>> {
        let leg = |a, b| thin_functor(&self.two, &self.three, vec![a, b]);
        Some(PushoutThree { three: self.three.clone(), l1: leg(0, 1), l2: leg(1, 2), l3: leg(0, 2) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::{check_orthogonal, in_e, reflection_universality_check};
    use crate::fincat::{comma, fixtures::*};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    fn slice(x: &Arc<FinCat>, y: usize) -> FinFunctor {
        let cat = CatInstance::new();
        let c = comma(&FinFunctor::identity(x.clone()), &cat.point(x, y)).unwrap();
        c.to_left
    }

    #[test]
    fn identity_and_slices_are_discrete_fibrations() {
        for x in [arc(two()), arc(three())] {
            assert!(is_discrete_fibration(&FinFunctor::identity(x.clone())).is_some());
            for y in 0..x.n_objects() {
                assert!(is_discrete_fibration(&slice(&x, y)).is_some());
            }
        }
    }

    #[test]
    fn t_is_final_not_discrete_and_s_is_neither() {
        let cat = CatInstance::new();
        let t2 = arc(two());
        let (s, t) = (cat.point(&t2, 0), cat.point(&t2, 1));
        assert!(is_discrete_fibration(&t).is_none());
        assert!(is_final_cat(&t));
        assert!(!is_final_cat(&s));
        assert!(in_e(&cat, &t).unwrap());
        assert!(!in_e(&cat, &s).unwrap());
        assert!(is_final_cat(&FinFunctor::identity(t2)));
    }

    #[test]
    fn reflection_of_d2_into_two() {
        let cat = CatInstance::new();
        let (d2, t2) = (arc(discrete(2)), arc(two()));
        let p = FinFunctor::new(d2, t2.clone(), vec![0, 1], vec![0, 1]).unwrap();
        let fac = discrete_reflection_cat(&p);
        assert_eq!(fac.e.then(&fac.m), p);
        assert!(cat.in_m(&fac.m));
        assert!(is_final_cat(&fac.e));
        let over = |x| (0..fac.m.source().n_objects()).filter(|&o| fac.m.on_object(o) == x).count();
        assert_eq!((over(0), over(1)), (2, 1));
        let targets = cat.discrete_spaces(&t2, 3, &Budget::default()).unwrap();
        let report = reflection_universality_check(&cat, &p, &fac, &targets, &Budget::default()).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn reflection_of_identity_is_invertible() {
        let x = arc(vee());
        let fac = discrete_reflection_cat(&FinFunctor::identity(x));
        assert!(fac.m.is_bijective());
    }

    #[test]
    fn pullback_of_neighborhood_along_t_has_one_object() {
        let cat = CatInstance::new();
        let t2 = arc(two());
        let nu1 = cat.factorize(&cat.point(&t2, 1)).unwrap().m;
        let pb = cat.pullback(&nu1, &cat.point(&t2, 1));
        assert_eq!(pb.to_a.source().n_objects(), 1);
    }

    #[test]
    fn components_of_two() {
        let cat = CatInstance::new();
        let fac = cat.factorize(&cat.to_terminal(&arc(two()))).unwrap();
        assert_eq!(fac.m.source().n_objects(), 1);
    }

    #[test]
    fn t_is_orthogonal_to_slice_projection() {
        let cat = CatInstance::new();
        let t2 = arc(two());
        let r = check_orthogonal(&cat, &cat.point(&t2, 1), &slice(&t2, 1), &Budget::default()).unwrap();
        assert!(r.holds);
        assert!(r.squares_checked > 0);
    }

    #[test]
    fn presheaf_counts_over_small_bases() {
        // presheaves on ONE with fibers ≤ 2 are the sets 0, 1, 2
        assert_eq!(enumerate_presheaves(&one(), 2, &Budget::default()).unwrap().len(), 3);
        // on TWO: a map from the fiber over 1 to the fiber over 0, up to iso;
        // with fibers ≤ 1 this gives (0,0), (1,0), (1,1)
        assert_eq!(enumerate_presheaves(&two(), 1, &Budget::default()).unwrap().len(), 3);
        // with fibers ≤ 2, one class per size pair except (2,2), which has
        // the bijection and the constant map
        assert_eq!(enumerate_presheaves(&two(), 2, &Budget::default()).unwrap().len(), 8);
    }

    #[test]
    fn enumerated_discrete_spaces_are_discrete() {
        let cat = CatInstance::new();
        for x in [arc(two()), arc(vee()), arc(parallel_pair())] {
            for m in cat.discrete_spaces(&x, 2, &Budget::default()).unwrap() {
                assert!(cat.in_m(&m));
                assert!(FinCat::validate(m.source().to_raw()).is_ok());
            }
        }
    }

    #[test]
    fn pushout_legs_glue() {
        let cat = CatInstance::new();
        let ao = cat.arrow_object().unwrap();
        let po = cat.pushout_three().unwrap();
        assert_eq!(ao.t.then(&po.l1), ao.s.then(&po.l2));
    }
}
