//! Properties stated for every instance.

use serde_json::json;

use super::suite::{json, Outcome, Prepared, Property, Tally};
use crate::emcore::{
    check_adjunction_on, check_orthogonal, in_e, iso_over, reflection_universality_check, unique_map_over_sending,
    EmInstance,
};
use crate::error::{Error, Result};
use crate::theory::{
    colimit, colimit_direct, continuation, is_absolute_colimit, is_adjunctible, is_colimit_preserving, kernel_image_commutes,
    preserves_colimit, universal_displacement, Adherence, ColimitResult, Cone,
};
use crate::arrowobj::adherence_functor;

/// Whether two colimit results agree: both absent, or present with
/// isomorphic vertices.
fn same_colimit<S, M: Clone + Eq + std::hash::Hash>(
    adh: &Adherence<S, M>,
    a: &Option<ColimitResult<M>>,
    b: &Option<ColimitResult<M>>,
) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => adh.isomorphic(x.vertex, y.vertex),
        _ => false,
    }
}

fn vertex<M>(c: &Option<ColimitResult<M>>) -> Option<usize> {
    c.as_ref().map(|c| c.vertex)
}

/// `Ok(true)` when the search finds exactly one map, `Ok(false)` when it
/// finds zero or several.
fn unique<T>(r: Result<T>) -> Result<bool> {
    match r {
        Ok(_) => Ok(true),
        Err(Error::NotUnique { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

fn fs01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for m in p.maps() {
        let (em, iso) = (p.inst.in_m(&m.map) && in_e(p.inst, &m.map)?, p.inst.is_iso(&m.map));
        if !t.case(em == iso, || json!({ "map": json(&m.map), "in_e_and_in_m": em, "iso": iso })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fs02<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    for &(i, j) in p.pairs() {
        let (g, m) = (&maps[i].map, &maps[j].map);
        if !p.inst.in_m(m) {
            continue;
        }
        let ok = p.inst.in_m(g) == p.inst.in_m(&p.inst.compose(g, m));
        if !t.case(ok, || json!({ "first": json(g), "discrete": json(m) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fs03<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for f in p.spread(p.bounds().max_pairs / 10 + 1, |_| true) {
        for m in p.discrete(f.target)? {
            let pb = p.inst.pullback(m, &f.map);
            if !t.case(p.inst.in_m(&pb.to_a), || json!({ "map": json(&f.map), "discrete": json(m) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn fs04<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for m in p.maps() {
        let fac = p.inst.factorize(&m.map)?;
        let sound = p.inst.compose(&fac.e, &fac.m) == m.map && p.inst.in_m(&fac.m) && in_e(p.inst, &fac.e)?;
        if !t.case(sound, || json!({ "map": json(&m.map), "factorization": json(&fac) })) {
            break;
        }
        let report = reflection_universality_check(p.inst, &m.map, &fac, p.discrete(m.target)?, &p.budget)?;
        if !t.case(report.holds, || json!({ "map": json(&m.map), "universality": json(&report.counterexample) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fs05<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    for &(i, j) in p.pairs() {
        let (q, f) = (&maps[i].map, &maps[j].map);
        let lhs = p.inst.factorize(&p.inst.compose(q, f))?.m;
        let rhs = p.inst.factorize(&p.inst.compose(&p.inst.factorize(q)?.m, f))?.m;
        let ok = iso_over(p.inst, &lhs, &rhs, &p.budget)?.is_some();
        if !t.case(ok, || json!({ "space": json(q), "map": json(f) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fs06<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    for &(i, j) in p.pairs() {
        let (e, f) = (&maps[i].map, &maps[j].map);
        if !in_e(p.inst, e)? {
            continue;
        }
        let lhs = p.inst.factorize(&p.inst.compose(e, f))?.m;
        let rhs = p.inst.factorize(f)?.m;
        let ok = iso_over(p.inst, &lhs, &rhs, &p.budget)?.is_some();
        if !t.case(ok, || json!({ "final": json(e), "map": json(f) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn fs07<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let mut finals = Vec::new();
    for m in p.maps() {
        if finals.len() < 40 && in_e(p.inst, &m.map)? {
            finals.push(&m.map);
        }
    }
    let spaces = p.spaces().len().min(8);
    'outer: for e in finals {
        for x in 0..spaces {
            for m in p.discrete(x)?.iter().take(3) {
                let r = check_orthogonal(p.inst, e, m, &p.budget)?;
                if !t.case(r.holds, || json!({ "final": json(e), "discrete": json(m), "square": json(&r.counterexample) })) {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

fn fs08<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for f in p.spread(40, |_| true) {
        let (over_x, over_y) = (spread(p.discrete(f.source)?, 8), spread(p.discrete(f.target)?, 8));
        let r = check_adjunction_on(p.inst, &f.map, &over_x, &over_y, &p.budget)?;
        if !t.case(r.holds, || json!({ "map": json(&f.map), "failure": json(&r.counterexample) })) {
            break;
        }
    }
    Ok(t.finish())
}

/// At most `k` entries of `v`, evenly spaced.
fn spread<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k).map(|i| v[i * v.len() / k].clone()).collect()
}

fn fs09<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for m in p.maps() {
        let Some(native) = p.inst.native_in_e(&m.map) else { continue };
        let derived = in_e(p.inst, &m.map)?;
        if !t.case(native == derived, || json!({ "map": json(&m.map), "native": native, "derived": derived })) {
            break;
        }
    }
    Ok(t.finish())
}

/// Exactly one map `ν(x) -> n` over X sends the final point to each point of
/// `n` over `x`.
fn nbh01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for xi in 0..p.spaces().len() {
        let adh = p.adherence(xi)?;
        for n in p.discrete(xi)? {
            let total = p.inst.source(n);
            for b in p.inst.points(&total) {
                let over = p.inst.compose(&b, n);
                let Some(x) = adh.point_index(&over) else { continue };
                let nb = &adh.neighborhoods[x];
                let ok = unique(unique_map_over_sending(p.inst, &nb.map, n, &nb.final_point, &b, &p.budget))?;
                if !t.case(ok, || json!({ "neighborhood": json(&nb.map), "discrete": json(n), "point": json(&b) })) {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

/// For `f : T -> X` with a final point `t` of `T`, exactly one map
/// `T -> ν(ft)` over X sends `t` to the final point.
fn nbh02<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let mut finals: Vec<Vec<I::Map>> = Vec::new();
    for s in p.spaces() {
        let mut fs = Vec::new();
        for pt in p.inst.points(s) {
            if in_e(p.inst, &pt)? {
                fs.push(pt);
            }
        }
        finals.push(fs);
    }
    'outer: for f in p.maps() {
        let adh = p.adherence(f.target)?;
        for pt in &finals[f.source] {
            let x = adh.point_index(&p.inst.compose(pt, &f.map)).expect("point of the target");
            let nb = &adh.neighborhoods[x];
            let ok = unique(unique_map_over_sending(p.inst, &f.map, &nb.map, pt, &nb.final_point, &p.budget))?;
            if !t.case(ok, || json!({ "map": json(&f.map), "final_point": json(pt) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

/// `∃_f ν(x) ≅ ν(fx)`, witnessed by a unique continuation.
fn nbh03<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for f in p.maps() {
        let (ax, ay) = (p.adherence(f.source)?, p.adherence(f.target)?);
        for (x, nx) in ax.neighborhoods.iter().enumerate() {
            let fx = ay.point_index(&p.inst.compose(&nx.point, &f.map)).expect("point of the target");
            let nfx = &ay.neighborhoods[fx];
            let ex = p.inst.factorize(&p.inst.compose(&nx.map, &f.map))?.m;
            let iso = iso_over(p.inst, &ex, &nfx.map, &p.budget)?.is_some();
            let cont = unique(continuation(p.inst, &f.map, nx, nfx, &p.budget))?;
            if !t.case(iso && cont, || json!({ "map": json(&f.map), "point": x, "iso": iso, "continuation": cont })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn adh01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for f in p.maps() {
        let ok = match adherence_functor(p.inst, &f.map, p.adherence(f.source)?, p.adherence(f.target)?, &p.budget) {
            Ok(_) => true,
            Err(Error::SizeBudgetExceeded { what, limit }) => return Err(Error::SizeBudgetExceeded { what, limit }),
            Err(_) => false,
        };
        if !t.case(ok, || json!({ "map": json(&f.map) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn col01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for q in p.maps() {
        let adh = p.adherence(q.target)?;
        let (a, b) = (colimit(p.inst, adh, &q.map, &p.budget)?, colimit_direct(p.inst, adh, &q.map, &p.budget)?);
        if !t.case(same_colimit(adh, &a, &b), || json!({ "space": json(&q.map), "via_reflection": vertex(&a), "direct": vertex(&b) })) {
            break;
        }
    }
    Ok(t.finish())
}

fn final_points<I: EmInstance>(inst: &I, adh: &Adherence<I::Space, I::Map>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, pt) in adh.points.iter().enumerate() {
        if in_e(inst, pt)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// With a final point `x` of X: `p` is final iff `x` is its absolute colimit.
fn thm00<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for xi in 0..p.spaces().len() {
        let adh = p.adherence(xi)?;
        let Some(&x) = final_points(p.inst, adh)?.first() else { continue };
        for q in p.maps_into(xi) {
            let fin = in_e(p.inst, &q.map)?;
            let abs = is_absolute_colimit(p.inst, adh, &q.map, x, &p.budget)?;
            if !t.case(fin == abs, || json!({ "space": json(&q.map), "final": fin, "absolute": abs })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

/// Absolute colimits are carried to absolute colimits by every map.
fn thm01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    // sampled composable pairs, then identities followed by corpus maps
    let ids: Vec<I::Map> = p.spaces().iter().map(|x| p.inst.identity(x)).collect();
    let cases = p
        .pairs()
        .iter()
        .map(|&(i, j)| (&maps[i].map, maps[i].target, &maps[j]))
        .chain(maps.iter().map(|f| (&ids[f.source], f.source, f)));
    for (q, x, f) in cases {
        let adh = p.adherence(x)?;
        let Some(col) = colimit(p.inst, adh, q, &p.budget)? else { continue };
        if !is_absolute_colimit(p.inst, adh, q, col.vertex, &p.budget)? {
            continue;
        }
        let ay = p.adherence(f.target)?;
        let fx = ay.point_index(&p.inst.compose(&col.point, &f.map)).expect("point of the target");
        let ok = is_absolute_colimit(p.inst, ay, &p.inst.compose(q, &f.map), fx, &p.budget)?;
        if !t.case(ok, || json!({ "space": json(q), "map": json(&f.map) })) {
            break;
        }
    }
    Ok(t.finish())
}

/// Isomorphic reflections have the same colimit after any map; checked on
/// `q` against its own reflection and on corpus pairs with isomorphic
/// reflections.
fn thm02<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    let mut cases: Vec<(I::Map, I::Map, usize)> = Vec::new();
    for &(i, j) in p.pairs() {
        let (q, f) = (&maps[i], &maps[j]);
        let down = p.inst.factorize(&q.map)?.m;
        cases.push((p.inst.compose(&q.map, &f.map), p.inst.compose(&down, &f.map), f.target));
    }
    for (a, b, y) in cases {
        let adh = p.adherence(y)?;
        let (ca, cb) = (colimit(p.inst, adh, &a, &p.budget)?, colimit(p.inst, adh, &b, &p.budget)?);
        if !t.case(same_colimit(adh, &ca, &cb), || json!({ "first": json(&a), "second": json(&b) })) {
            return Ok(t.finish());
        }
    }
    // pairs of corpus spaces over the same space with isomorphic reflections
    'outer: for xi in 0..p.spaces().len() {
        let into: Vec<_> = p.maps_into(xi).take(12).collect();
        for (a, qa) in into.iter().enumerate() {
            for qb in &into[a + 1..] {
                let (da, db) = (p.inst.factorize(&qa.map)?.m, p.inst.factorize(&qb.map)?.m);
                if iso_over(p.inst, &da, &db, &p.budget)?.is_none() {
                    continue;
                }
                for f in p.maps_from(xi).take(6) {
                    let adh = p.adherence(f.target)?;
                    let ca = colimit(p.inst, adh, &p.inst.compose(&qa.map, &f.map), &p.budget)?;
                    let cb = colimit(p.inst, adh, &p.inst.compose(&qb.map, &f.map), &p.budget)?;
                    if !t.case(same_colimit(adh, &ca, &cb), || json!({ "first": json(&qa.map), "second": json(&qb.map), "map": json(&f.map) })) {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// A final `e` into X changes no colimit: `Colim f ≅ Colim(f ∘ e)`.
fn thm03<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    for &(i, j) in p.pairs() {
        let (e, f) = (&maps[i], &maps[j]);
        if !in_e(p.inst, &e.map)? {
            continue;
        }
        let adh = p.adherence(f.target)?;
        let ca = colimit(p.inst, adh, &f.map, &p.budget)?;
        let cb = colimit(p.inst, adh, &p.inst.compose(&e.map, &f.map), &p.budget)?;
        if !t.case(same_colimit(adh, &ca, &cb), || json!({ "final": json(&e.map), "map": json(&f.map) })) {
            break;
        }
    }
    Ok(t.finish())
}

/// When the source has a final point `e`, the colimit of `p` is `pe`, and
/// it is absolute.
fn thm04<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let mut finals = Vec::new();
    for i in 0..p.spaces().len() {
        let adh = p.adherence(i)?;
        finals.push(final_points(p.inst, adh)?.first().map(|&k| adh.points[k].clone()));
    }
    for q in p.maps() {
        let Some(e) = &finals[q.source] else { continue };
        let adh = p.adherence(q.target)?;
        let pe = adh.point_index(&p.inst.compose(e, &q.map)).expect("point of the target");
        let col = colimit(p.inst, adh, &q.map, &p.budget)?;
        let ok = match &col {
            Some(c) => adh.isomorphic(c.vertex, pe) && is_absolute_colimit(p.inst, adh, &q.map, pe, &p.budget)?,
            None => false,
        };
        if !t.case(ok, || json!({ "space": json(&q.map), "expected": pe, "found": vertex(&col) })) {
            break;
        }
    }
    Ok(t.finish())
}

/// A retraction `r` of a reflection unit `e : P -> ↓p` (with `e ; r = id`)
/// is a two-sided inverse.
fn thm05<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for q in p.maps() {
        let fac = p.inst.factorize(&q.map)?;
        let total = p.inst.source(&fac.m);
        let (id_p, id_d) = (p.inst.identity(&p.inst.source(&q.map)), p.inst.identity(&total));
        for r in p.inst.maps_over(&fac.m, &q.map, &p.budget)? {
            if p.inst.compose(&fac.e, &r) != id_p {
                continue;
            }
            if !t.case(p.inst.compose(&r, &fac.e) == id_d, || json!({ "space": json(&q.map), "retraction": json(&r) })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

/// A final map with a colimit has a final point as vertex, absolutely.
fn thm06<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let mut cases: Vec<(usize, I::Map)> = p.maps().iter().map(|m| (m.target, m.map.clone())).collect();
    cases.extend((0..p.spaces().len()).map(|i| (i, p.inst.identity(&p.spaces()[i]))));
    for (x, e) in cases {
        if !in_e(p.inst, &e)? {
            continue;
        }
        let adh = p.adherence(x)?;
        let Some(col) = colimit(p.inst, adh, &e, &p.budget)? else { continue };
        let ok = in_e(p.inst, &col.point)? && is_absolute_colimit(p.inst, adh, &e, col.vertex, &p.budget)?;
        if !t.case(ok, || json!({ "final": json(&e), "vertex": col.vertex })) {
            break;
        }
    }
    Ok(t.finish())
}

/// X has a final point iff some final map into X has a colimit; the
/// identity is the final map tried first, then every final corpus map.
fn thm07<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for (xi, x) in p.spaces().iter().enumerate() {
        let adh = p.adherence(xi)?;
        let has_final = !final_points(p.inst, adh)?.is_empty();
        let mut some = colimit(p.inst, adh, &p.inst.identity(x), &p.budget)?.is_some();
        for q in p.maps_into(xi) {
            if some {
                break;
            }
            some = in_e(p.inst, &q.map)? && colimit(p.inst, adh, &q.map, &p.budget)?.is_some();
        }
        if !t.case(has_final == some, || json!({ "space": json(x), "final_point": has_final, "final_map_colimit": some })) {
            break;
        }
    }
    Ok(t.finish())
}

/// A universal displacement from `f` to `y` exists iff `Δ_f ν(y)` has a
/// colimit preserved by `f`.
fn thm08<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for f in p.maps() {
        let (ax, ay) = (p.adherence(f.source)?, p.adherence(f.target)?);
        for (y, ny) in ay.neighborhoods.iter().enumerate() {
            let case = || -> Result<(bool, bool)> {
                let universal = universal_displacement(p.inst, &f.map, ny)?.is_some();
                let pulled = p.inst.pullback(&ny.map, &f.map).to_a;
                let criterion = match colimit(p.inst, ax, &pulled, &p.budget)? {
                    Some(col) => preserves_colimit(p.inst, ax, ay, &f.map, &col.cone, &p.budget)?,
                    None => false,
                };
                Ok((universal, criterion))
            };
            let Some((universal, criterion)) = t.bounded(case())? else { continue };
            if !t.case(universal == criterion, || json!({ "map": json(&f.map), "point": y, "universal": universal, "criterion": criterion })) {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn thm09<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    for f in p.maps() {
        let (ax, ay) = (p.adherence(f.source)?, p.adherence(f.target)?);
        if is_adjunctible(p.inst, ax, ay, &f.map)?.is_none() {
            continue;
        }
        let r = is_colimit_preserving(p.inst, ax, ay, &f.map, p.discrete(f.source)?, &p.budget)?;
        if !t.case(r.holds, || json!({ "map": json(&f.map), "discrete": json(&r.counterexample) })) {
            break;
        }
    }
    Ok(t.finish())
}

/// The kernel of the classical image of a cone is the direct image of its
/// kernel, for every cone on corpus spaces.
fn ker01<I: EmInstance>(p: &Prepared<'_, I>) -> Result<Outcome> {
    let mut t = Tally::new();
    let maps = p.maps();
    'outer: for &(i, j) in p.pairs() {
        let (q, f) = (&maps[i], &maps[j]);
        let (ax, ay) = (p.adherence(q.target)?, p.adherence(f.target)?);
        for v in 0..ax.n_points() {
            for leg in p.inst.maps_over(&q.map, &ax.neighborhoods[v].map, &p.budget)? {
                let c = Cone { base: q.map.clone(), vertex: v, leg };
                let ok = kernel_image_commutes(p.inst, ax, ay, &f.map, &c, &p.budget)?;
                if !t.case(ok, || json!({ "cone": json(&c), "map": json(&f.map) })) {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

macro_rules! prop {
    ($id:literal, $anchor:literal, $f:expr) => {
        Property { id: $id, anchor: $anchor, run: $f }
    };
}
pub(crate) use prop;

pub fn generic_properties<I: EmInstance>() -> Vec<Property<I>> {
    vec![
        prop!("FS-01", "a map in both E and M is exactly an isomorphism", fs01::<I>),
        prop!("FS-02", "for m in M, g is in M iff g followed by m is", fs02::<I>),
        prop!("FS-03", "M is stable under pullback", fs03::<I>),
        prop!("FS-04", "factorizations compose back, land in E and M, and are universal", fs04::<I>),
        prop!("FS-05", "reflection of a composite is the direct image of the reflection", fs05::<I>),
        prop!("FS-06", "precomposing a final map does not change the reflection", fs06::<I>),
        prop!("FS-07", "final maps are orthogonal to discrete spaces", fs07::<I>),
        prop!("FS-08", "direct image is left adjoint to pullback, naturally", fs08::<I>),
        prop!("FS-09", "the native notion of final map agrees with the derived one", fs09::<I>),
        prop!("NBH-01", "a neighborhood is initial among discrete spaces with a point over x", nbh01::<I>),
        prop!("NBH-02", "a neighborhood is final among spaces with a final point over x", nbh02::<I>),
        prop!("NBH-03", "direct image of the neighborhood of x is the neighborhood of fx", nbh03::<I>),
        prop!("ADH-01", "maps induce functors between adherence categories", adh01::<I>),
        prop!("COL-01", "colimits through the reflection agree with direct colimits", col01::<I>),
        prop!("THM-00", "with a final point x, p is final iff x is its absolute colimit", thm00::<I>),
        prop!("THM-01", "maps preserve absolute colimits", thm01::<I>),
        prop!("THM-02", "isomorphic reflections give isomorphic colimits after any map", thm02::<I>),
        prop!("THM-03", "precomposing a final map does not change the colimit", thm03::<I>),
        prop!("THM-04", "a space with a final point has the image of that point as absolute colimit", thm04::<I>),
        prop!("THM-05", "a retraction of a reflection unit is its inverse", thm05::<I>),
        prop!("THM-06", "a final map with a colimit converges absolutely to a final point", thm06::<I>),
        prop!("THM-07", "a space has a final point iff some final map into it has a colimit", thm07::<I>),
        prop!("THM-08", "universal displacements exist iff the pulled-back neighborhood has a preserved colimit", thm08::<I>),
        prop!("THM-09", "adjunctible maps preserve colimits", thm09::<I>),
        prop!("KER-01", "kernel of the classical image cone is the direct image of the kernel cone", ker01::<I>),
    ]
}
