//! One function per verb, generic over the instance.

use std::sync::Arc;

use emcat::arrowobj::{canonical_functor, x_star};
use emcat::comprehensive::CatInstance;
use emcat::emcore::in_e;
use emcat::fincat::FinCat;
use emcat::harness::{run_theorem_suite, Bounds};
use emcat::instances::{pos_power_object, FinSetInstance, GphInstance, PosInstance, PosSystem};
use emcat::text::{dot_map, dot_space, emit_fincat, emit_map, SpaceRef, Textual};
use emcat::theory::{
    adherence, check_dual1, check_yoneda_map, colimit, gamma, is_absolute_colimit, is_adjunctible, is_dense_at,
    is_fully_faithful_at, neighborhood, universal_displacement,
};
use emcat::{Budget, Error, Result};
use serde_json::{json, Value};

use crate::args::{Cli, Verb};
use crate::inputs::{load, Args, Input};

/// What a verb produced: an exit code and the three renderings.
pub struct Report {
    pub code: u8,
    pub text: String,
    pub json: String,
    pub dot: Option<String>,
}

impl Report {
    fn holds(holds: bool, text: String, json: Value) -> Report {
        let json = serde_json::to_string_pretty(&json).expect("values serialize");
        Report { code: if holds { 0 } else { 1 }, text, json, dot: None }
    }

    fn ok(text: String, json: Value) -> Report {
        Report::holds(true, text, json)
    }

    fn with_dot(mut self, dot: String) -> Report {
        self.dot = Some(dot);
        self
    }
}

/// Instance capabilities beyond the text formats.
pub trait Instance: Textual {
    /// `X -> PX` when the instance has power objects.
    fn power_object(&self, _x: &Self::Space) -> Option<(Self::Space, Self::Map)> {
        None
    }
}

impl Instance for CatInstance {}
impl Instance for GphInstance {}
impl Instance for FinSetInstance {}

impl Instance for PosInstance {
    fn power_object(&self, x: &Self::Space) -> Option<(Self::Space, Self::Map)> {
        (self.system() == PosSystem::LowerSet).then(|| pos_power_object(x))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn map_text<T: Textual>(inst: &T, f: &T::Map) -> Result<String> {
    emit_map(inst, f, SpaceRef::Inline, SpaceRef::Inline)
}

fn map_dot<T: Textual>(inst: &T, f: &T::Map, name: &str) -> String {
    dot_map(&inst.underlying(&inst.source(f)), &inst.underlying(&inst.target(f)), &inst.point_images(f), name)
}

fn point_name<T: Textual>(inst: &T, x: &T::Space, i: usize) -> String {
    inst.point_names(x)[i].clone()
}

/// Sizes of the fibers of `m` over each point of its target.
fn fibers<T: Textual>(inst: &T, m: &T::Map) -> Vec<usize> {
    let x = inst.target(m);
    inst.points(&x).iter().map(|p| inst.size(&inst.source(&inst.pullback(m, p).to_a))).collect()
}

fn category_report(c: &Arc<FinCat>, name: &str) -> Result<(String, String)> {
    Ok((emit_fincat(c)?, dot_space(&CatInstance::new().underlying(c), name)))
}

pub fn run<T: Instance>(inst: &T, cli: &Cli) -> Result<Report> {
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    let verb = cli.verb;
    if verb == Verb::Suite {
        return suite(cli, &budget);
    }
    let usage = match verb {
        Verb::Check | Verb::Dot => "SPACE|MAP",
        Verb::Discrete | Verb::Components | Verb::Adherence | Verb::Yoneda | Verb::Xstar => "SPACE",
        Verb::Neighborhood => "SPACE POINT",
        Verb::Universal => "MAP POINT",
        Verb::Dual1 => "MAP MAP",
        _ => "[TARGET] MAP",
    };
    let mut args = Args::new(format!("{verb:?}").to_lowercase(), usage, load(inst, &cli.inputs)?);
    let report = match verb {
        Verb::Check | Verb::Dot => {
            let r = match args.any()? {
                Input::Space(x) => Report::ok(inst.emit_space(&x)?, to_json(&x))
                    .with_dot(dot_space(&inst.underlying(&x), inst.space_extension())),
                Input::Map(f) => Report::ok(map_text(inst, &f)?, to_json(&f)).with_dot(map_dot(inst, &f, "map")),
                Input::Point(p) => return Err(Error::Invalid(format!("`{p}` is neither a space nor a map file"))),
            };
            args.done()?;
            if verb == Verb::Dot {
                Report { text: r.dot.clone().unwrap_or_default(), ..r }
            } else {
                r
            }
        }
        Verb::Factorize => {
            let p = args.map()?;
            args.done()?;
            let fac = inst.factorize(&p)?;
            let text = format!("# E part\n{}# M part\n{}", map_text(inst, &fac.e)?, map_text(inst, &fac.m)?);
            Report::ok(text, to_json(&fac)).with_dot(map_dot(inst, &fac.m, "reflection"))
        }
        Verb::Reflect => {
            let p = args.map()?;
            args.done()?;
            let m = inst.factorize(&p)?.m;
            Report::ok(map_text(inst, &m)?, json!({ "reflection": to_json(&m), "fibers": fibers(inst, &m) }))
                .with_dot(map_dot(inst, &m, "reflection"))
        }
        Verb::Final => {
            let p = args.map()?;
            args.done()?;
            if in_e(inst, &p)? {
                Report::ok("final\n".into(), json!({ "final": true }))
            } else {
                let m = inst.factorize(&p)?.m;
                let x = inst.target(&p);
                let sizes = fibers(inst, &m);
                let bad = sizes.iter().position(|&k| k != 1).expect("a map outside E has a fiber of size other than 1");
                let at = point_name(inst, &x, bad);
                let why = if sizes[bad] == 0 { "empty".to_string() } else { format!("{} components", sizes[bad]) };
                Report::holds(
                    false,
                    format!("not final: the comma at `{at}` is {why}\n"),
                    json!({ "final": false, "witness": { "point": at, "components": sizes[bad] } }),
                )
            }
        }
        Verb::Discrete => {
            let x = args.space()?;
            args.done()?;
            let bound = cli.max_obj.unwrap_or(2);
            let ds = inst.discrete_spaces(&x, bound, &budget)?;
            let mut text = format!("{} discrete spaces with fibers of at most {bound} points\n", ds.len());
            let names = inst.point_names(&x);
            for m in &ds {
                let sizes = fibers(inst, m);
                let parts: Vec<String> = names.iter().zip(&sizes).map(|(n, k)| format!("{n}:{k}")).collect();
                text.push_str(&format!("  {}\n", parts.join(" ")));
            }
            Report::ok(text, json!({ "bound": bound, "spaces": to_json(&ds) }))
        }
        Verb::Components => {
            let x = args.space()?;
            args.done()?;
            let n = gamma(inst, &x)?;
            Report::ok(format!("{n}\n"), json!({ "components": n }))
        }
        Verb::Neighborhood => {
            let x = args.space()?;
            let i = args.point(inst, &x)?;
            args.done()?;
            let nb = neighborhood(inst, &inst.points(&x)[i])?;
            Report::ok(map_text(inst, &nb.map)?, to_json(&nb)).with_dot(map_dot(inst, &nb.map, "neighborhood"))
        }
        Verb::Adherence => {
            let x = args.space()?;
            args.done()?;
            let adh = adherence(inst, &x, &budget)?;
            let (text, dot) = category_report(&adh.category, "adherence")?;
            Report::ok(text, to_json(&adh.category)).with_dot(dot)
        }
        Verb::Colimit | Verb::Absolute => {
            let p = args.map()?;
            args.done()?;
            let x = inst.target(&p);
            let adh = adherence(inst, &x, &budget)?;
            match colimit(inst, &adh, &p, &budget)? {
                None => Report::holds(false, "no colimit\n".into(), json!({ "colimit": null })),
                Some(c) => {
                    let v = point_name(inst, &x, c.vertex);
                    if verb == Verb::Colimit {
                        Report::ok(
                            format!("{v}\n"),
                            json!({ "colimit": v, "isomorphic_points": c.class_size, "cone": to_json(&c.cone) }),
                        )
                    } else {
                        let abs = is_absolute_colimit(inst, &adh, &p, c.vertex, &budget)?;
                        let text = if abs { format!("absolute colimit {v}\n") } else { format!("colimit {v} is not absolute\n") };
                        Report::holds(abs, text, json!({ "colimit": v, "absolute": abs }))
                    }
                }
            }
        }
        Verb::Universal => {
            let f = args.map()?;
            let y = inst.target(&f);
            let i = args.point(inst, &y)?;
            args.done()?;
            let ny = neighborhood(inst, &inst.points(&y)[i])?;
            let at = point_name(inst, &y, i);
            match universal_displacement(inst, &f, &ny)? {
                Some(u) => {
                    let x = inst.source(&f);
                    let k = inst.points(&x).iter().position(|p| *p == u.point).expect("a point of the source");
                    let from = point_name(inst, &x, k);
                    Report::ok(
                        format!("universal displacement at {at} from {from}\n"),
                        json!({ "point": at, "from": from, "displacement": to_json(&u.displacement) }),
                    )
                }
                None => Report::holds(false, format!("no universal displacement at {at}\n"), json!({ "point": at, "from": null })),
            }
        }
        Verb::Adjoint => {
            let f = args.map()?;
            args.done()?;
            let (x, y) = (inst.source(&f), inst.target(&f));
            let (ax, ay) = (adherence(inst, &x, &budget)?, adherence(inst, &y, &budget)?);
            match is_adjunctible(inst, &ax, &ay, &f)? {
                Some(delta) => {
                    let pairs: Vec<(String, String)> =
                        delta.iter().enumerate().map(|(j, &i)| (point_name(inst, &y, j), point_name(inst, &x, i))).collect();
                    let text: String = pairs.iter().map(|(a, b)| format!("{a} |-> {b}\n")).collect();
                    Report::ok(format!("adjunctible\n{text}"), json!({ "adjunctible": true, "points": pairs }))
                }
                None => {
                    let bad = ay
                        .neighborhoods
                        .iter()
                        .position(|ny| universal_displacement(inst, &f, ny).ok().flatten().is_none())
                        .unwrap_or(0);
                    let at = point_name(inst, &y, bad);
                    Report::holds(
                        false,
                        format!("not adjunctible: no universal displacement at {at}\n"),
                        json!({ "adjunctible": false, "witness": at }),
                    )
                }
            }
        }
        Verb::Dense | Verb::Ff => {
            let f = args.map()?;
            args.done()?;
            let (x, y) = (inst.source(&f), inst.target(&f));
            let ay = adherence(inst, &y, &budget)?;
            let (what, space, n) = if verb == Verb::Dense { ("dense", &y, ay.n_points()) } else { ("fully faithful", &x, inst.points(&x).len()) };
            let ax = if verb == Verb::Ff { Some(adherence(inst, &x, &budget)?) } else { None };
            let mut bad = None;
            for i in 0..n {
                let ok = match &ax {
                    None => is_dense_at(inst, &ay, &f, i, &budget)?,
                    Some(ax) => is_fully_faithful_at(inst, ax, &ay, &f, i, &budget)?,
                };
                if !ok {
                    bad = Some(i);
                    break;
                }
            }
            match bad {
                None => Report::ok(format!("{what}\n"), json!({ "holds": true })),
                Some(i) => {
                    let at = point_name(inst, space, i);
                    Report::holds(false, format!("not {what} at {at}\n"), json!({ "holds": false, "witness": at }))
                }
            }
        }
        Verb::Dual1 => {
            let (p, q) = (args.map()?, args.map()?);
            args.done()?;
            if inst.target(&p) != inst.target(&q) {
                return Err(Error::Invalid("both maps must have the same target".into()));
            }
            let r = check_dual1(inst, &p, &q)?;
            let text = format!("{} = {}{}\n", r.left, r.right, if r.holds() { "" } else { "  (differ)" });
            Report::holds(r.holds(), text, to_json(&r))
        }
        Verb::Yoneda => {
            let x = args.space()?;
            args.done()?;
            let (px, y) = inst.power_object(&x).ok_or(Error::Unsupported { instance: inst.name(), capability: "power objects" })?;
            let adh = adherence(inst, &px, &budget)?;
            let over = inst.discrete_spaces(&x, cli.max_obj.unwrap_or(2), &budget)?;
            let r = check_yoneda_map(inst, &y, &over, &adh, &budget)?;
            let text = if r.holds {
                format!("Yoneda map holds: {} spaces, {} points\n", r.spaces_checked, r.points_checked)
            } else {
                format!("Yoneda map fails: {}\n", to_json(&r.failure))
            };
            Report::holds(r.holds, text, to_json(&r))
        }
        Verb::Xstar => {
            let x = args.space()?;
            args.done()?;
            let star = x_star(inst, &x, &budget)?;
            let adh = adherence(inst, &x, &budget)?;
            let canon = canonical_functor(inst, &star, &adh, &budget)?;
            let iso = canon.is_bijective();
            let (body, dot) = category_report(&star.category, "xstar")?;
            let verdict = if iso { "# canonical functor to the adherence: isomorphism" } else { "# canonical functor to the adherence: not an isomorphism" };
            Report::holds(iso, format!("{verdict}\n{body}"), json!({ "category": to_json(&star.category), "isomorphism": iso }))
                .with_dot(dot)
        }
        Verb::Suite => unreachable!("handled above"),
    };
    Ok(report)
}

fn suite(cli: &Cli, budget: &Budget) -> Result<Report> {
    if let Some(extra) = cli.inputs.first() {
        return Err(Error::Invalid(format!("suite takes no inputs, found `{extra}`")));
    }
    let name = cli.instance.name();
    let mut bounds = Bounds::for_instance(name);
    bounds.max_obj = cli.max_obj.unwrap_or(bounds.max_obj);
    bounds.max_arr = cli.max_arr.unwrap_or(bounds.max_arr);
    bounds.seed = cli.seed.unwrap_or(bounds.seed);
    let report = run_theorem_suite(name, bounds, cli.filter.as_deref(), budget)?;
    Ok(Report {
        code: report.exit_code() as u8,
        text: report.to_text(),
        json: report.to_json(),
        dot: None,
    })
}
