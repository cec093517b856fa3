//! Properties tied to the arrow object, to duality, and to one concrete
//! instance each.

use std::sync::Arc;

use serde_json::json;

use super::generic::prop;
use super::suite::{json, Outcome, Prepared, Property, Tally};
use crate::arrowobj::{
    canonical_functor, check_generator, check_set_characterization, convergence_colimit_check, lawvere_pushout_check,
    lifting_lemma_check, naturality_check, pushout_bijection, pushout_leg_final, star_discreteness_check, x_star,
};
use crate::comprehensive::{is_discrete_fibration, is_final_cat, CatInstance};
use crate::emcore::{in_e, iso_over, EmInstance};
use crate::error::{Error, Result};
use crate::fincat::{comma, find_isomorphism};
use crate::instances::{
    free_category, free_functor, is_strongly_constant, pos_hom_map, pos_power_object, FinFn, FinSetInstance, GphInstance,
    GraphMap, Monotone, Poset, PosInstance, PosSystem,
};
use crate::theory::{
    adherence, check_dual1, check_yoneda_map, colimit, is_absolute_colimit, is_adjunctible, is_dense, is_fully_faithful,
    reflection_formula_check, yoneda_reflection_check,
};

fn arrow_t<I: EmInstance>(inst: &I) -> Result<I::Map> {
    inst.arrow_object().map(|a| a.t).ok_or(Error::Unsupported { instance: inst.name(), capability: "arrow object" })
}

fn generator_check<I: EmInstance>(p: &Prepared<'_, I>, generators: &[I::Map]) -> Result<Outcome> {
    let maps: Vec<I::Map> = p.maps().iter().map(|m| m.map.clone()).collect();
    let claim = check_generator(p.inst, generators, &maps, &p.budget)?;
    Ok(Outcome { checked: claim.maps_checked, counterexample: claim.counterexample.map(|c| json(&c)), ..Outcome::default() })
}

fn arr01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    generator_check(p, &[arrow_t(p.inst)?])
}

fn arr02<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let t = arrow_t(p.inst)?;
    let mut tally = Tally::new();
    for s in p.spaces() {
        let r = check_set_characterization(p.inst, &t, s, &p.budget)?;
        if !tally.case(r.holds(), || json!({ "space": json(s), "is_set": r.is_set, "all_constant": r.all_constant })) {
            break;
        }
    }
    Ok(tally.finish())
}

fn arr03(p: &Prepared<'_, CatInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for x in p.spaces() {
        let r = lawvere_pushout_check(p.inst, x, &p.budget)?;
        if !t.case(r.holds(), || json!({ "space": json(x), "report": json(&r) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn arr04<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (i, x) in p.spaces().iter().enumerate() {
        let star = x_star(p.inst, x, &p.budget)?;
        let canon = canonical_functor(p.inst, &star, p.adherence(i)?, &p.budget)?;
        if !t.case(canon.is_bijective(), || json!({ "space": json(x) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn arr05<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for m in p.maps() {
        let r = star_discreteness_check(p.inst, &m.map, &p.budget)?;
        if !t.case(r.in_m == r.star_is_fibration, || json!({ "map": json(&m.map), "report": json(&r) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn arr06<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut stars = Vec::new();
    for x in p.spaces() {
        stars.push(x_star(p.inst, x, &p.budget)?);
    }
    let mut t = Tally::new();
    for f in p.maps() {
        let ok = naturality_check(
            p.inst,
            &f.map,
            (&stars[f.source], p.adherence(f.source)?),
            (&stars[f.target], p.adherence(f.target)?),
            &p.budget,
        )?;
        if !t.case(ok, || json!({ "map": json(&f.map) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn arr07<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for (i, x) in p.spaces().iter().enumerate() {
        let star = x_star(p.inst, x, &p.budget)?;
        for m in p.discrete(i)? {
            let r = lifting_lemma_check(p.inst, m, &star, &p.budget)?;
            if !t.case(r.holds, || json!({ "discrete": json(m) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn arr08<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let two = p.inst.arrow_object().ok_or(Error::Unsupported { instance: p.inst.name(), capability: "arrow object" })?.two;
    let mut t = Tally::new();
    'outer: for (i, x) in p.spaces().iter().enumerate() {
        let adh = p.adherence(i)?;
        for l in p.inst.maps(&two, x, &p.budget)? {
            if !t.case(convergence_colimit_check(p.inst, adh, &l, &p.budget)?, || json!({ "arrow": json(&l) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn arr09<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    t.case(pushout_leg_final(p.inst)?, || json!("l2 or l2 after t is not final"));
    Ok(t.finish())
}

/// Pairs of corpus maps with a common target, capped.
fn same_target_pairs<I: EmInstance>(p: &Prepared<'_, I>) -> Vec<(usize, usize)> {
    let maps = p.maps();
    let cap = p.bounds().max_pairs;
    let mut out = Vec::new();
    for x in 0..p.spaces().len() {
        let into: Vec<usize> = (0..maps.len()).filter(|&i| maps[i].target == x).take(24).collect();
        for &a in &into {
            for &b in &into {
                out.push((a, b));
            }
        }
    }
    if out.len() > cap {
        let step = out.len() / cap;
        out = out.into_iter().step_by(step.max(1)).take(cap).collect();
    }
    out
}

fn dual01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    for (a, b) in same_target_pairs(p) {
        let r = check_dual1(p.inst, &maps[a].map, &maps[b].map)?;
        if !t.case(r.holds(), || json!({ "p": json(&maps[a].map), "q": json(&maps[b].map), "report": json(&r) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn dual02<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for q in p.maps() {
        for x in p.inst.points(&p.spaces()[q.target]) {
            let r = reflection_formula_check(p.inst, &q.map, &x)?;
            if !t.case(r.holds(), || json!({ "space": json(&q.map), "point": json(&x), "report": json(&r) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

/// Generic properties needing only an arrow object. `generated` says M is
/// generated by the arrow object's point; the set and star characterizations
/// assume it.
fn arrow_properties<I: EmInstance>(generated: bool) -> Vec<Property<I>> {
    let mut v = vec![
        prop!("ARR-04", "the comparison from the star category to the adherence is an isomorphism", arr04::<I>),
        prop!("ARR-06", "the comparison functor is natural in the space", arr06::<I>),
        prop!("ARR-07", "lifting a composite arrow is composing the lifts", arr07::<I>),
        prop!("ARR-08", "an arrow converges absolutely to its endpoint", arr08::<I>),
        prop!("ARR-09", "the second pushout leg and its endpoint are final", arr09::<I>),
    ];
    if generated {
        v.push(prop!("ARR-02", "sets are the spaces whose arrows are all constant", arr02::<I>));
        v.push(prop!("ARR-05", "a map is discrete iff its star functor is a discrete fibration", arr05::<I>));
    }
    v
}

fn dual_properties<I: EmInstance>() -> Vec<Property<I>> {
    vec![
        prop!("DUAL-01", "components of p pulled back along the reflection of q match the dual side", dual01::<I>),
        prop!("DUAL-02", "fiber of the reflection over x counts components against the dual reflection of x", dual02::<I>),
    ]
}

// Cat

fn cat01(p: &Prepared<'_, CatInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for q in p.maps() {
        let x = &p.spaces()[q.target];
        let mut connected = true;
        for o in 0..x.n_objects() {
            let c = comma(&p.inst.point(x, o), &q.map)?;
            connected &= c.category.n_objects() > 0 && c.category.is_connected();
        }
        let (derived, native) = (in_e(p.inst, &q.map)?, is_final_cat(&q.map));
        let ok = derived == connected && native == connected;
        if !t.case(ok, || json!({ "map": json(&q.map), "derived": derived, "connected_commas": connected })) {
            break;
        }
    }
    Ok(t.finish())
}

fn cat02(p: &Prepared<'_, CatInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for q in p.maps() {
        let x = &p.spaces()[q.target];
        let down = p.inst.factorize(&q.map)?.m;
        for o in 0..x.n_objects() {
            let pt = p.inst.point(x, o);
            let fiber = p.inst.pullback(&down, &pt).to_a.source().n_objects();
            let comps = comma(&pt, &q.map)?.category.components().count;
            if !t.case(fiber == comps, || json!({ "map": json(&q.map), "object": o, "fiber": fiber, "components": comps })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn cat03(p: &Prepared<'_, CatInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for f in p.maps() {
        let adh = p.adherence(f.target)?;
        for (y, ny) in adh.neighborhoods.iter().enumerate() {
            let pulled = p.inst.pullback(&ny.map, &f.map).to_a;
            let slice = comma(&f.map, &ny.point)?.to_left;
            let ok = iso_over(p.inst, &pulled, &slice, &p.budget)?.is_some();
            if !t.case(ok, || json!({ "map": json(&f.map), "object": y })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn cat04(p: &Prepared<'_, CatInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (i, x) in p.spaces().iter().enumerate() {
        let adh = p.adherence(i)?;
        let star = x_star(p.inst, x, &p.budget)?;
        let ok = find_isomorphism(&adh.category, x, &p.budget)?.is_some()
            && find_isomorphism(&star.category, x, &p.budget)?.is_some();
        if !t.case(ok, || json!({ "space": json(x) })) {
            break;
        }
    }
    Ok(t.finish())
}

pub fn cat_properties() -> Vec<Property<CatInstance>> {
    let mut v = super::generic::generic_properties();
    v.extend(arrow_properties(true));
    v.extend(dual_properties());
    v.extend([
        prop!("ARR-01", "t generates: discrete maps are exactly those orthogonal to t", arr01::<CatInstance>),
        prop!("ARR-03", "maps out of 3 and 4 count composable pairs and triples", arr03),
        prop!("CAT-01", "a functor is final iff every comma x/p is nonempty and connected", cat01),
        prop!("CAT-02", "the fiber of the reflection over x counts components of x/p", cat02),
        prop!("CAT-03", "pulling back a neighborhood along f gives the comma f/y", cat03),
        prop!("CAT-04", "the adherence and the star category are isomorphic to the category", cat04),
    ]);
    v
}

// Pos

fn mask_of(f: &Monotone) -> u64 {
    f.image()
}

fn pos01(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for q in p.maps() {
        let x = &p.spaces()[q.target];
        let adh = p.adherence(q.target)?;
        let image = mask_of(&q.map);
        let sup = x.sup(image);
        let col = colimit(p.inst, adh, &q.map, &p.budget)?;
        let mut ok = col.as_ref().map(|c| c.vertex) == sup;
        let mut absolute = None;
        if let (Some(c), PosSystem::LowerSet) = (&col, p.inst.system()) {
            let abs = is_absolute_colimit(p.inst, adh, &q.map, c.vertex, &p.budget)?;
            ok &= abs == x.maximum(x.lower_closure(image)).is_some();
            absolute = Some(abs);
        }
        if !t.case(ok, || json!({ "map": json(&q.map), "colimit": col.as_ref().map(|c| c.vertex), "sup": sup, "absolute": absolute })) {
            break;
        }
    }
    Ok(t.finish())
}

/// Every `y` is the sup of the image points below it.
fn dense_oracle(f: &Monotone) -> bool {
    let y = &f.target;
    (0..y.len()).all(|b| {
        let below = (0..f.source.len()).filter(|&a| y.le(f.map[a], b)).fold(0u64, |m, a| m | 1 << f.map[a]);
        y.sup(below) == Some(b)
    })
}

fn pos02(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for f in p.maps() {
        let dense = is_dense(p.inst, p.adherence(f.target)?, &f.map, &p.budget)?;
        let oracle = dense_oracle(&f.map);
        if !t.case(dense == oracle, || json!({ "map": json(&f.map), "dense": dense, "oracle": oracle })) {
            break;
        }
    }
    Ok(t.finish())
}

/// `t` alone does not generate: some map orthogonal to `t` is not in M.
fn pos03(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let maps: Vec<Monotone> = p.maps().iter().map(|m| m.map.clone()).collect();
    let claim = check_generator(p.inst, &[arrow_t(p.inst)?], &maps, &p.budget)?;
    let found = claim.counterexample.as_ref().is_some_and(|c| !c.in_m && c.orthogonal);
    Ok(Outcome {
        checked: claim.maps_checked,
        counterexample: (!found).then(|| json!("no map orthogonal to t outside M in the corpus")),
        ..Outcome::default()
    })
}

fn pos01_generators(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let fold = p.inst.to_terminal(&Arc::new(Poset::antichain(2)));
    generator_check(p, &[arrow_t(p.inst)?, fold])
}

fn pos04(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for x in p.spaces() {
        if !t.case(pushout_bijection(p.inst, x, &p.budget)?, || json!({ "space": json(x) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn pos05(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (i, x) in p.spaces().iter().enumerate().filter(|(_, x)| x.len() <= 3) {
        let hm = pos_hom_map(x, &p.budget)?;
        let exp = hm.left.target.clone();
        let adh = adherence(p.inst, &exp, &p.budget)?;
        let r = check_yoneda_map(p.inst, &hm.left, p.discrete(i)?, &adh, &p.budget)?;
        if !t.case(r.holds, || json!({ "space": json(x), "failure": json(&r.failure) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn yon01(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (i, x) in p.spaces().iter().enumerate() {
        let (px, y) = pos_power_object(x);
        let adh = adherence(p.inst, &px, &p.budget)?;
        let r = check_yoneda_map(p.inst, &y, p.discrete(i)?, &adh, &p.budget)?;
        if !t.case(r.holds, || json!({ "space": json(x), "failure": json(&r.failure) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn yon02(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for (i, x) in p.spaces().iter().enumerate() {
        let (px, y) = pos_power_object(x);
        let adh = adherence(p.inst, &px, &p.budget)?;
        for q in p.maps_into(i) {
            if !t.case(yoneda_reflection_check(p.inst, &y, &adh, &q.map, &p.budget)?, || json!({ "map": json(&q.map) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

/// Reflections agree iff the colimits of the composites with `y` agree,
/// the identity of X included among the spaces compared.
fn cor05(p: &Prepared<'_, PosInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for (i, x) in p.spaces().iter().enumerate() {
        let (px, y) = pos_power_object(x);
        let adh = adherence(p.inst, &px, &p.budget)?;
        let mut spaces: Vec<Monotone> = vec![Monotone::identity(x.clone())];
        spaces.extend(p.maps_into(i).take(16).map(|m| m.map.clone()));
        let mut data = Vec::new();
        for q in &spaces {
            let down = p.inst.factorize(q)?.m;
            let col = colimit(p.inst, &adh, &p.inst.compose(q, &y), &p.budget)?.map(|c| c.vertex);
            data.push((down, col));
        }
        for a in 0..spaces.len() {
            for b in a..spaces.len() {
                let same_down = iso_over(p.inst, &data[a].0, &data[b].0, &p.budget)?.is_some();
                let same_col = data[a].1 == data[b].1;
                if !t.case(same_down == same_col, || json!({ "p": json(&spaces[a]), "q": json(&spaces[b]) })) {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

pub fn pos_properties(system: PosSystem) -> Vec<Property<PosInstance>> {
    let mut v = super::generic::generic_properties();
    v.extend(dual_properties());
    v.push(prop!("POS-01", "colimits are sups; absolute exactly when the image has a maximum", pos01));
    match system {
        PosSystem::LowerSet => {
            v.extend(arrow_properties(false));
            v.extend([
                prop!("ARR-01", "t together with the fold 1+1 -> 1 generates the lower-set system", pos01_generators),
                prop!("POS-02", "a map is dense iff every point is the sup of the image below it", pos02),
                prop!("POS-03", "t alone does not generate: an orthogonal map outside M exists", pos03),
                prop!("POS-04", "maps out of 3 are the composable pairs of arrows", pos04),
                prop!("POS-05", "the transpose of the hom map is a Yoneda map", pos05),
                prop!("YON-01", "lower sets with principal down-sets form a power object", yon01),
                prop!("YON-02", "the reflection is the pullback of the neighborhood of the colimit through y", yon02),
                prop!("COR-05", "reflections agree iff colimits through y agree", cor05),
            ]);
        }
        PosSystem::Comprehensive => {
            v.extend(arrow_properties(true));
            v.push(prop!("ARR-01", "t generates: discrete maps are exactly those orthogonal to t", arr01::<PosInstance>));
        }
    }
    v
}

// FinSet

fn fin_check(p: &Prepared<'_, FinSetInstance>, test: fn(&Prepared<'_, FinSetInstance>, &FinFn, usize, usize) -> Result<(bool, bool)>) -> Result<Outcome> {
    let mut t = Tally::new();
    for m in p.maps() {
        let (lhs, rhs) = test(p, &m.map, m.source, m.target)?;
        if !t.case(lhs == rhs, || json!({ "map": json(&m.map), "computed": lhs, "expected": rhs })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fin01(p: &Prepared<'_, FinSetInstance>) -> Result<Outcome> {
    fin_check(p, |p, f, _, y| Ok((colimit(p.inst, p.adherence(y)?, f, &p.budget)?.is_some(), is_strongly_constant(f))))
}

fn fin02(p: &Prepared<'_, FinSetInstance>) -> Result<Outcome> {
    fin_check(p, |p, f, x, y| Ok((is_adjunctible(p.inst, p.adherence(x)?, p.adherence(y)?, f)?.is_some(), f.is_bijective())))
}

fn fin03(p: &Prepared<'_, FinSetInstance>) -> Result<Outcome> {
    fin_check(p, |p, f, _, y| Ok((is_dense(p.inst, p.adherence(y)?, f, &p.budget)?, f.is_surjective())))
}

/// Where the literal claim breaks: the empty base into a one-point set has
/// that point as its colimit, so `0 -> 1` is dense without being surjective.
fn fin05(p: &Prepared<'_, FinSetInstance>) -> Result<Outcome> {
    fin_check(p, |p, f, _, y| {
        let expected = f.is_surjective() || (f.source == 0 && f.target == 1);
        Ok((is_dense(p.inst, p.adherence(y)?, f, &p.budget)?, expected))
    })
}

fn fin04(p: &Prepared<'_, FinSetInstance>) -> Result<Outcome> {
    fin_check(p, |p, f, x, y| Ok((is_fully_faithful(p.inst, p.adherence(x)?, p.adherence(y)?, f, &p.budget)?, f.is_injective())))
}

pub fn finset_properties() -> Vec<Property<FinSetInstance>> {
    let mut v = super::generic::generic_properties();
    v.extend([
        prop!("FIN-01", "a function has a colimit iff it is strongly constant", fin01),
        prop!("FIN-02", "a function is adjunctible iff it is bijective", fin02),
        prop!("FIN-03", "a function is dense iff it is surjective", fin03),
        prop!("FIN-04", "a function is fully faithful iff it is injective", fin04),
        prop!("FIN-05", "a function is dense iff it is surjective or the empty map into a point", fin05),
    ]);
    v
}

// Gph

fn gph01(p: &Prepared<'_, GphInstance>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (i, g) in p.spaces().iter().enumerate() {
        let free = free_category(g)?;
        let ok = find_isomorphism(&p.adherence(i)?.category, &free.category, &p.budget)?.is_some();
        if !t.case(ok, || json!({ "graph": json(g) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn gph02(p: &Prepared<'_, GphInstance>) -> Result<Outcome> {
    let cat = CatInstance::new();
    let free: Vec<_> = p.spaces().iter().map(|g| free_category(g)).collect::<Result<_>>()?;
    let mut cat_adh = Vec::new();
    for f in &free {
        cat_adh.push(adherence(&cat, &f.category, &p.budget)?);
    }
    let mut t = Tally::new();
    for q in p.maps() {
        let gph = colimit(p.inst, p.adherence(q.target)?, &q.map, &p.budget)?.map(|c| c.vertex);
        let fq = free_functor(&q.map, &free[q.source], &free[q.target]);
        let adh = &cat_adh[q.target];
        let in_cat = colimit(&cat, adh, &fq, &p.budget)?.map(|c| c.vertex);
        let ok = match (gph, in_cat) {
            (None, None) => true,
            (Some(a), Some(b)) => adh.isomorphic(a, b),
            _ => false,
        };
        if !t.case(ok, || json!({ "map": json(&q.map), "graphs": gph, "free_categories": in_cat })) {
            break;
        }
    }
    Ok(t.finish())
}

fn gph03(p: &Prepared<'_, GphInstance>) -> Result<Outcome> {
    let free: Vec<_> = p.spaces().iter().map(|g| free_category(g)).collect::<Result<_>>()?;
    let mut t = Tally::new();
    for m in p.maps() {
        let fibration = is_discrete_fibration(&free_functor(&m.map, &free[m.source], &free[m.target])).is_some();
        let discrete = p.inst.in_m(&m.map);
        if !t.case(fibration == discrete, || json!({ "map": json(&m.map), "in_m": discrete, "free_fibration": fibration })) {
            break;
        }
    }
    Ok(t.finish())
}

/// Candidate Yoneda maps from the dot into every graph with at most six
/// nodes and `max_arr` proper edges; the property holds when none passes.
pub fn gph_power_refutation(p: &Prepared<'_, GphInstance>) -> Result<Outcome> {
    let dot = p.inst.dot().clone();
    let over = p.inst.discrete_spaces(&dot, 6, &p.budget)?;
    let mut t = Tally::new();
    'outer: for g in super::enumerate_graphs(6, p.bounds().max_arr.min(2), &p.budget)? {
        let g = Arc::new(g);
        if !g.is_acyclic() {
            // infinite adherence; an equivalence onto it would still need a
            // distinct point for each of the pairwise non-isomorphic sets in `over`
            if !t.case(g.n_nodes() < over.len(), || json!({ "power_object": json(&g) })) {
                break;
            }
            continue;
        }
        let adh = adherence(p.inst, &g, &p.budget)?;
        for v in 0..g.n_nodes() {
            let y: GraphMap = p.inst.point(&g, v);
            let r = check_yoneda_map(p.inst, &y, &over, &adh, &p.budget)?;
            if !t.case(!r.holds, || json!({ "power_object": json(&g), "point": v })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

pub fn gph_properties() -> Vec<Property<GphInstance>> {
    let mut v = super::generic::generic_properties();
    v.extend(dual_properties());
    v.extend([
        prop!("ARR-01", "t generates: discrete maps are exactly those with unique edge lifting", arr01::<GphInstance>),
        prop!("ARR-02", "sets are the graphs whose arrows are all constant", arr02::<GphInstance>),
        prop!("GPH-01", "the adherence of an acyclic graph is its free category", gph01),
        prop!("GPH-02", "colimits agree with colimits in the free category", gph02),
        prop!("GPH-03", "discrete maps are those whose free functor is a discrete fibration", gph03),
        prop!("GPH-04", "no Yoneda map out of the dot among graphs with at most six nodes", gph_power_refutation),
    ]);
    v
}
