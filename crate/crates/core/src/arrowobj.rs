//! Generating pointed objects, the arrow object `s, t : 1 -> 2`, and the
//! category `X★` of points and arrows of a space together with its comparison
//! functor into the adherence category.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::comprehensive::is_discrete_fibration;
use crate::emcore::{check_orthogonal, in_e, unique_map_over_sending, ArrowObject, EmInstance, PushoutThree};
use crate::error::{Error, Result};
use crate::fincat::{fixtures, Arrow, FinCat, FinFunctor, RawCategory};
use crate::theory::{colimit, is_absolute_colimit, is_colimiting, Adherence, Cone};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorFailure<M> {
    pub map: M,
    pub in_m: bool,
    /// Orthogonal to every generator.
    pub orthogonal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorClaim<M> {
    pub instance: &'static str,
    pub maps_checked: usize,
    /// `M` agrees with the maps right-orthogonal to the generators on every
    /// map checked; a claim up to the corpus, not a proof.
    pub holds_up_to_bound: bool,
    pub counterexample: Option<GeneratorFailure<M>>,
}

/// Compares `in_m(m)` with `m ∈ generators^⊥` for every map in `maps`.
pub fn check_generator<I: EmInstance>(
    inst: &I,
    generators: &[I::Map],
    maps: &[I::Map],
    budget: &Budget,
) -> Result<GeneratorClaim<I::Map>> {
    for (i, m) in maps.iter().enumerate() {
        let mut orthogonal = true;
        for g in generators {
            if !check_orthogonal(inst, g, m, budget)?.holds {
                orthogonal = false;
                break;
            }
        }
        let in_m = inst.in_m(m);
        if in_m != orthogonal {
            return Ok(GeneratorClaim {
                instance: inst.name(),
                maps_checked: i + 1,
                holds_up_to_bound: false,
                counterexample: Some(GeneratorFailure { map: m.clone(), in_m, orthogonal }),
            });
        }
    }
    Ok(GeneratorClaim { instance: inst.name(), maps_checked: maps.len(), holds_up_to_bound: true, counterexample: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SetCharacterization {
    /// `S -> 1` is in M.
    pub is_set: bool,
    /// Every map `T -> S` factors through a point.
    pub all_constant: bool,
}

impl SetCharacterization {
    pub fn holds(&self) -> bool {
        self.is_set == self.all_constant
    }
}

/// Both sides of "S is a set iff every `T -> S` is constant", for the
/// pointed object `t : 1 -> T`.
pub fn check_set_characterization<I: EmInstance>(
    inst: &I,
    t: &I::Map,
    s: &I::Space,
    budget: &Budget,
) -> Result<SetCharacterization> {
    let big_t = inst.target(t);
    let bang = inst.to_terminal(&big_t);
    let constants: Vec<I::Map> = inst.points(s).iter().map(|x| inst.compose(&bang, x)).collect();
    let all_constant = inst.maps(&big_t, s, budget)?.iter().all(|f| constants.contains(f));
    Ok(SetCharacterization { is_set: inst.in_m(&inst.to_terminal(s)), all_constant })
}

fn arrow_data<I: EmInstance>(inst: &I) -> Result<(ArrowObject<I::Space, I::Map>, PushoutThree<I::Space, I::Map>)> {
    let a = inst.arrow_object().ok_or(Error::PushoutUnavailable("no arrow object"))?;
    let p = inst.pushout_three().ok_or(Error::PushoutUnavailable("no pushout 3 of the arrow object"))?;
    Ok((a, p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawvereReport {
    pub maps_from_three: usize,
    pub composable_pairs: usize,
    pub maps_from_four: usize,
    pub composable_triples: usize,
    /// `u ↦ (l1;u, l2;u)` is a bijection from maps `3 -> X` onto the pairs of
    /// arrows meeting at a point.
    pub pushout_universal: bool,
}

impl LawvereReport {
    pub fn holds(&self) -> bool {
        self.pushout_universal
            && self.maps_from_three == self.composable_pairs
            && self.maps_from_four == self.composable_triples
    }
}

/// Whether `u ↦ (l1;u, l2;u)` is a bijection from maps `3 -> X` onto pairs
/// of arrows `(g1, g2)` with `t;g1 = s;g2`.
pub fn pushout_bijection<I: EmInstance>(inst: &I, x: &I::Space, budget: &Budget) -> Result<bool> {
    let (arrow, three) = arrow_data(inst)?;
    let twos = inst.maps(&arrow.two, x, budget)?;
    let mut pairs = 0;
    for g1 in &twos {
        let end = inst.compose(&arrow.t, g1);
        pairs += twos.iter().filter(|g2| inst.compose(&arrow.s, g2) == end).count();
    }
    let mut images = std::collections::HashSet::new();
    for u in inst.maps(&three.three, x, budget)? {
        if !images.insert((inst.compose(&three.l1, &u), inst.compose(&three.l2, &u))) {
            return Ok(false);
        }
    }
    Ok(images.len() == pairs)
}

/// Functors out of the ordinals 3 and 4 against composable pairs and triples
/// of `x`, plus the universal property of 3 as a pushout.
pub fn lawvere_pushout_check<I>(inst: &I, x: &Arc<FinCat>, budget: &Budget) -> Result<LawvereReport>
where
    I: EmInstance<Space = Arc<FinCat>>,
{
    let three = Arc::new(fixtures::three());
    let four = Arc::new(fixtures::four());
    Ok(LawvereReport {
        maps_from_three: inst.maps(&three, x, budget)?.len(),
        composable_pairs: x.composable_pairs(),
        maps_from_four: inst.maps(&four, x, budget)?.len(),
        composable_triples: x.composable_triples(),
        pushout_universal: pushout_bijection(inst, x, budget)?,
    })
}

/// The category of points and arrows `2 -> X` of a space, composed through
/// the pushout 3.
#[derive(Debug, Clone)]
pub struct StarCategory<M> {
    pub category: Arc<FinCat>,
    /// The arrow `2 -> X` behind each arrow of `category`.
    pub arrows: Vec<M>,
    points: HashMap<M, usize>,
    index: HashMap<M, usize>,
}

impl<M: Clone + Eq + std::hash::Hash> StarCategory<M> {
    pub fn arrow_index(&self, l: &M) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn point_index(&self, x: &M) -> Option<usize> {
        self.points.get(x).copied()
    }
}

pub fn x_star<I: EmInstance>(inst: &I, x: &I::Space, budget: &Budget) -> Result<StarCategory<I::Map>> {
    let (arrow, three) = arrow_data(inst)?;
    let points = inst.points(x);
    let point_idx: HashMap<I::Map, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let names: Vec<String> = (0..points.len()).map(|i| inst.point_name(x, i)).collect();
    let maps = inst.maps(&arrow.two, x, budget)?;
    let bang = inst.to_terminal(&arrow.two);
    let ends = |l: &I::Map| (point_idx[&inst.compose(&arrow.s, l)], point_idx[&inst.compose(&arrow.t, l)]);

    // identities first, then the other arrows in enumeration order
    let ids: Vec<I::Map> = points.iter().map(|p| inst.compose(&bang, p)).collect();
    let mut order: Vec<I::Map> = ids.clone();
    order.extend(maps.iter().filter(|l| !ids.contains(l)).cloned());
    if order.len() != maps.len() {
        return Err(Error::Invalid("constant arrows are not maps from the arrow object".into()));
    }
    let index: HashMap<I::Map, usize> = order.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    let arrows: Vec<Arrow> = order
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (a, b) = ends(l);
            if i < points.len() {
                Arrow::new(format!("id({})", names[a]), a, b)
            } else {
                let k = count.entry((a, b)).or_insert(0);
                *k += 1;
                Arrow::new(format!("{}=>{}#{}", names[a], names[b], *k - 1), a, b)
            }
        })
        .collect();

    let mut induced: HashMap<(usize, usize), I::Map> = HashMap::new();
    for u in inst.maps(&three.three, x, budget)? {
        let key = (index[&inst.compose(&three.l1, &u)], index[&inst.compose(&three.l2, &u)]);
        if induced.insert(key, inst.compose(&three.l3, &u)).is_some() {
            return Err(Error::NotUnique { what: "map out of the pushout 3".into(), found: 2 });
        }
    }
    let mut compose = Vec::new();
    for f in 0..order.len() {
        for g in (0..order.len()).filter(|&g| arrows[g].dom == arrows[f].cod) {
            let c = induced.get(&(f, g)).ok_or(Error::PushoutUnavailable("a composable pair has no induced map from 3"))?;
            compose.push((f, g, index[c]));
        }
    }
    let category = Arc::new(FinCat::validate(RawCategory { objects: names, arrows, identity: (0..points.len()).collect(), compose })?);
    Ok(StarCategory { category, arrows: order, points: point_idx, index })
}

/// `f★ : X★ -> Y★`.
pub fn star_functor<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    sx: &StarCategory<I::Map>,
    sy: &StarCategory<I::Map>,
) -> Result<FinFunctor> {
    let (arrow, _) = arrow_data(inst)?;
    let missing = || Error::Invalid("image not found in the codomain's star category".into());
    let objects = (0..sx.category.n_objects())
        .map(|i| {
            let l = &sx.arrows[sx.category.identity(i)];
            sy.point_index(&inst.compose(&inst.compose(&arrow.s, l), f)).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = sx.arrows.iter().map(|l| sy.arrow_index(&inst.compose(l, f)).ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
    Ok(FinFunctor::new(sx.category.clone(), sy.category.clone(), objects, arrows)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarDiscreteness {
    pub in_m: bool,
    pub star_is_fibration: bool,
}

impl StarDiscreteness {
    pub fn holds(&self) -> bool {
        self.in_m == self.star_is_fibration
    }
}

/// `m ∈ M` against `m★` being a discrete fibration.
pub fn star_discreteness_check<I: EmInstance>(inst: &I, m: &I::Map, budget: &Budget) -> Result<StarDiscreteness> {
    let sm = x_star(inst, &inst.source(m), budget)?;
    let sx = x_star(inst, &inst.target(m), budget)?;
    let fm = star_functor(inst, m, &sm, &sx)?;
    Ok(StarDiscreteness { in_m: inst.in_m(m), star_is_fibration: is_discrete_fibration(&fm).is_some() })
}

/// The lift of the arrow `l : 2 -> X` into the discrete space `m` ending at
/// the point `b` of its total.
pub fn lift_arrow<I: EmInstance>(inst: &I, m: &I::Map, l: &I::Map, b: &I::Map, budget: &Budget) -> Result<I::Map> {
    let (arrow, _) = arrow_data(inst)?;
    unique_map_over_sending(inst, l, m, &arrow.t, b, budget)
}

/// The comparison functor `X★ -> X̄`: an arrow `l : x => y` goes to the
/// displacement whose point is the domain of the lift of `l` into `ν(y)`
/// ending at its final point.
pub fn canonical_functor<I: EmInstance>(
    inst: &I,
    star: &StarCategory<I::Map>,
    adh: &Adherence<I::Space, I::Map>,
    budget: &Budget,
) -> Result<FinFunctor> {
    let (arrow, _) = arrow_data(inst)?;
    let cat = &star.category;
    let mut images = Vec::with_capacity(cat.n_arrows());
    for (k, l) in star.arrows.iter().enumerate() {
        let (x, y) = (cat.dom(k), cat.cod(k));
        let ny = &adh.neighborhoods[y];
        let lift = lift_arrow(inst, &ny.map, l, &ny.final_point, budget)?;
        let from = inst.compose(&arrow.s, &lift);
        let d = adherence_arrow(inst, adh, x, y, &from, budget)?;
        images.push(d);
    }
    Ok(FinFunctor::new(cat.clone(), adh.category.clone(), (0..cat.n_objects()).collect(), images)?)
}

/// The arrow `x -> y` of the adherence category whose displacement sends the
/// final point of `ν(x)` to `point`.
fn adherence_arrow<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    x: usize,
    y: usize,
    point: &I::Map,
    budget: &Budget,
) -> Result<usize> {
    let (nx, ny) = (&adh.neighborhoods[x], &adh.neighborhoods[y]);
    let d = unique_map_over_sending(inst, &nx.map, &ny.map, &nx.final_point, point, budget)?;
    adh.hom(x, y)
        .iter()
        .copied()
        .find(|&a| adh.displacements[a] == d)
        .ok_or_else(|| Error::Invalid("displacement missing from the adherence category".into()))
}

/// The functor `f̄ : X̄ -> Ȳ` induced on adherence categories: a
/// displacement with point `λ` goes to the one with point `h(λ)`, `h` the
/// continuation into the neighborhood of the image.
pub fn adherence_functor<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    adh_x: &Adherence<I::Space, I::Map>,
    adh_y: &Adherence<I::Space, I::Map>,
    budget: &Budget,
) -> Result<FinFunctor> {
    let cat = &adh_x.category;
    let missing = || Error::Invalid("image point not found in the codomain".into());
    let objects =
        adh_x.points.iter().map(|p| adh_y.point_index(&inst.compose(p, f)).ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
    let mut conts = Vec::with_capacity(objects.len());
    for (x, &fx) in objects.iter().enumerate() {
        conts.push(crate::theory::continuation(inst, f, &adh_x.neighborhoods[x], &adh_y.neighborhoods[fx], budget)?);
    }
    let mut arrows = Vec::with_capacity(cat.n_arrows());
    for a in 0..cat.n_arrows() {
        let (x, y) = (cat.dom(a), cat.cod(a));
        let lambda = inst.compose(&adh_x.neighborhoods[x].final_point, &adh_x.displacements[a]);
        let image = inst.compose(&lambda, &conts[y]);
        arrows.push(adherence_arrow(inst, adh_y, objects[x], objects[y], &image, budget)?);
    }
    Ok(FinFunctor::new(cat.clone(), adh_y.category.clone(), objects, arrows)?)
}

/// Whether `f★ ; c_Y = c_X ; f̄` on every arrow.
pub fn naturality_check<I: EmInstance>(
    inst: &I,
    f: &I::Map,
    (sx, adh_x): (&StarCategory<I::Map>, &Adherence<I::Space, I::Map>),
    (sy, adh_y): (&StarCategory<I::Map>, &Adherence<I::Space, I::Map>),
    budget: &Budget,
) -> Result<bool> {
    let left = star_functor(inst, f, sx, sy)?.then(&canonical_functor(inst, sy, adh_y, budget)?);
    let right = canonical_functor(inst, sx, adh_x, budget)?.then(&adherence_functor(inst, f, adh_x, adh_y, budget)?);
    Ok(left.arrow_map() == right.arrow_map() && left.object_map() == right.object_map())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftingLemmaReport {
    pub holds: bool,
    pub cases_checked: usize,
}

/// For a discrete `m` over `X` and composable arrows `l ; l'` of `X★`: the
/// lift of the composite to a point `a` over the end starts where the lift of
/// `l` to the start of the lift of `l'` starts.
pub fn lifting_lemma_check<I: EmInstance>(
    inst: &I,
    m: &I::Map,
    star: &StarCategory<I::Map>,
    budget: &Budget,
) -> Result<LiftingLemmaReport> {
    let (arrow, _) = arrow_data(inst)?;
    let cat = &star.category;
    let over: Vec<(usize, I::Map)> =
        inst.points(&inst.source(m)).into_iter().map(|a| (star.point_index(&inst.compose(&a, m)).expect("point"), a)).collect();
    let start = |l: &I::Map, b: &I::Map| -> Result<I::Map> { Ok(inst.compose(&arrow.s, &lift_arrow(inst, m, l, b, budget)?)) };
    let mut cases = 0;
    for l in 0..cat.n_arrows() {
        for l2 in (0..cat.n_arrows()).filter(|&l2| cat.dom(l2) == cat.cod(l)) {
            let l3 = cat.compose(l, l2).expect("composable");
            for (_, a) in over.iter().filter(|(z, _)| *z == cat.cod(l2)) {
                cases += 1;
                let direct = start(&star.arrows[l3], a)?;
                let stepwise = start(&star.arrows[l], &start(&star.arrows[l2], a)?)?;
                if direct != stepwise {
                    return Ok(LiftingLemmaReport { holds: false, cases_checked: cases });
                }
            }
        }
    }
    Ok(LiftingLemmaReport { holds: true, cases_checked: cases })
}

/// For an arrow `l : 2 -> X`: its lift into `ν(t;l)` ending at the final
/// point is a colimiting cone, and the colimit is absolute.
pub fn convergence_colimit_check<I: EmInstance>(
    inst: &I,
    adh: &Adherence<I::Space, I::Map>,
    l: &I::Map,
    budget: &Budget,
) -> Result<bool> {
    let arrow = inst.arrow_object().ok_or(Error::PushoutUnavailable("no arrow object"))?;
    let y = adh.point_index(&inst.compose(&arrow.t, l)).expect("point of the space");
    let ny = &adh.neighborhoods[y];
    let leg = unique_map_over_sending(inst, l, &ny.map, &arrow.t, &ny.final_point, budget)?;
    let cone = Cone { base: l.clone(), vertex: y, leg };
    let found = colimit(inst, adh, l, budget)?;
    Ok(is_colimiting(inst, adh, &cone, budget)?
        && is_absolute_colimit(inst, adh, l, y, budget)?
        && found.is_some_and(|c| adh.isomorphic(c.vertex, y)))
}

/// `l2 : 2 -> 3` is final, and so is the point `t ; l2`.
pub fn pushout_leg_final<I: EmInstance>(inst: &I) -> Result<bool> {
    let (arrow, three) = arrow_data(inst)?;
    Ok(in_e(inst, &three.l2)? && in_e(inst, &inst.compose(&arrow.t, &three.l2))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comprehensive::CatInstance;
    use crate::fincat::{find_isomorphism, fixtures};
    use crate::instances::{GphInstance, Poset, PosInstance, ReflexiveGraph};
    use crate::theory::{adherence, neighborhood};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn lawvere_counts() {
        let cat = CatInstance::new();
        let r = lawvere_pushout_check(&cat, &arc(fixtures::one()), &Budget::default()).unwrap();
        assert_eq!((r.maps_from_three, r.composable_pairs), (1, 1));
        let r = lawvere_pushout_check(&cat, &arc(fixtures::two()), &Budget::default()).unwrap();
        assert_eq!((r.maps_from_three, r.composable_pairs), (4, 4));
        assert!(r.holds());
        let r = lawvere_pushout_check(&cat, &arc(fixtures::three()), &Budget::default()).unwrap();
        assert_eq!((r.maps_from_three, r.composable_pairs), (10, 10));
        assert!(r.holds());
    }

    #[test]
    fn star_of_small_categories() {
        let cat = CatInstance::new();
        let b = Budget::default();
        assert_eq!(x_star(&cat, &arc(fixtures::one()), &b).unwrap().category.n_arrows(), 1);
        for x in [fixtures::two(), fixtures::discrete(2), fixtures::three(), fixtures::parallel_pair()] {
            let x = arc(x);
            let s = x_star(&cat, &x, &b).unwrap();
            assert!(find_isomorphism(&s.category, &x, &b).unwrap().is_some());
            let adh = adherence(&cat, &x, &b).unwrap();
            assert!(canonical_functor(&cat, &s, &adh, &b).unwrap().is_bijective());
        }
    }

    #[test]
    fn star_discreteness() {
        let cat = CatInstance::new();
        let b = Budget::default();
        let two = arc(fixtures::two());
        let nu = neighborhood(&cat, &cat.point(&two, 1)).unwrap();
        assert_eq!(star_discreteness_check(&cat, &nu.map, &b).unwrap(), StarDiscreteness { in_m: true, star_is_fibration: true });
        let t = cat.point(&two, 1);
        assert_eq!(star_discreteness_check(&cat, &t, &b).unwrap(), StarDiscreteness { in_m: false, star_is_fibration: false });
    }

    #[test]
    fn naturality_along_t() {
        let cat = CatInstance::new();
        let b = Budget::default();
        let (one, two) = (cat.one().clone(), arc(fixtures::two()));
        let t = cat.point(&two, 1);
        let (s1, s2) = (x_star(&cat, &one, &b).unwrap(), x_star(&cat, &two, &b).unwrap());
        let (a1, a2) = (adherence(&cat, &one, &b).unwrap(), adherence(&cat, &two, &b).unwrap());
        assert!(naturality_check(&cat, &t, (&s1, &a1), (&s2, &a2), &b).unwrap());
    }

    #[test]
    fn generators() {
        let b = Budget::default();
        let pos = PosInstance::lower_set();
        let two = Arc::new(Poset::chain(2));
        let d2 = Arc::new(Poset::antichain(2));
        let t = pos.point(&two, 1);
        let fold = pos.to_terminal(&d2);
        let claim = check_generator(&pos, std::slice::from_ref(&t), std::slice::from_ref(&fold), &b).unwrap();
        let f = claim.counterexample.unwrap();
        assert!(!f.in_m && f.orthogonal);
        let fold_one = pos.to_terminal(&Arc::new(Poset::antichain(2)));
        assert!(check_generator(&pos, &[t, fold_one], &[fold], &b).unwrap().holds_up_to_bound);
    }

    #[test]
    fn sets_are_spaces_without_nonconstant_arrows() {
        let cat = CatInstance::new();
        let b = Budget::default();
        let two = arc(fixtures::two());
        let t = cat.point(&two, 1);
        let r = check_set_characterization(&cat, &t, &arc(fixtures::discrete(2)), &b).unwrap();
        assert!(r.is_set && r.all_constant);
        let r = check_set_characterization(&cat, &t, &two, &b).unwrap();
        assert!(!r.is_set && !r.all_constant);
    }

    #[test]
    fn gph_has_no_pushout() {
        let g = GphInstance::new();
        let e1 = Arc::new(ReflexiveGraph::edge1());
        assert!(matches!(x_star(&g, &e1, &Budget::default()), Err(Error::PushoutUnavailable(_))));
    }

    #[test]
    fn leg_l2_is_final() {
        assert!(pushout_leg_final(&CatInstance::new()).unwrap());
        assert!(pushout_leg_final(&PosInstance::lower_set()).unwrap());
    }
}
