//! The map format shared by `.fn` and `.map` files.
//!
//! ```text
//! source @TWO              # a builtin, a path, or an inline block
//! target {
//!   objects x
//! }
//! object 0 |-> x
//! object 1 |-> x
//! ```
//!
//! `include a b` instead of `source` gives the inclusion of the
//! substructure of the target on the listed points. Arrow lines may be left
//! out when the image is an identity or the only arrow with the right ends.

use std::collections::HashMap;
use std::fmt::Write;

use super::lex::{lines, Line, Token};
use super::textual::Textual;
use crate::error::{Error, Result};

/// A space named in a map file: `@NAME` or a path.
pub type Resolve<'r, S> = dyn FnMut(&Token<'_>) -> Result<S> + 'r;

enum Side<S> {
    Given(S),
    Missing,
}

/// Parses a map. Path references go through `resolve`; `default_target`
/// stands in for a missing `target` line.
pub fn parse_map<T: Textual>(
    inst: &T,
    src: &str,
    resolve: &mut Resolve<'_, T::Space>,
    default_target: Option<T::Space>,
) -> Result<T::Map> {
    let mut source = Side::Missing;
    let mut target = Side::Missing;
    let mut include: Option<Vec<Token<'_>>> = None;
    let mut point_lines: Vec<(Token<'_>, Token<'_>)> = Vec::new();
    let mut arrow_lines: Vec<(Token<'_>, Token<'_>)> = Vec::new();
    let (point_kw, arrow_kw) = inst.keywords();
    let raw: Vec<&str> = src.lines().collect();
    let mut k = 0;
    while k < raw.len() {
        let here = lines(raw[k], k + 1);
        k += 1;
        let Some(l) = here.first() else { continue };
        let kw = l.keyword();
        match kw.text {
            "source" | "target" => {
                let slot = if kw.text == "source" { &mut source } else { &mut target };
                if matches!(slot, Side::Given(_)) {
                    return Err(kw.error(format!("second `{}` line", kw.text)));
                }
                let r = l.at(1, "a space: @NAME, a path or `{`")?;
                l.no_more(2)?;
                let space = if r.text == "{" {
                    let start = k;
                    loop {
                        let Some(line) = raw.get(k) else {
                            return Err(r.error("block is not closed by a `}` line"));
                        };
                        k += 1;
                        let toks = lines(line, k);
                        if toks.first().is_some_and(|t| t.tokens.len() == 1 && t.tokens[0].text == "}") {
                            break;
                        }
                    }
                    inst.parse_space(&raw[start..k - 1].join("\n"), start + 1)?
                } else if let Some(name) = r.text.strip_prefix('@') {
                    inst.builtin(name).ok_or_else(|| r.error(format!("unknown builtin `{name}`")))?
                } else {
                    resolve(r)?
                };
                *slot = Side::Given(space);
            }
            "include" => {
                if include.is_some() {
                    return Err(kw.error("second `include` line"));
                }
                include = Some(l.rest(1, "point names")?.to_vec());
            }
            t if t == point_kw || t == "point" => point_lines.push(maps_to(l)?),
            t if t == arrow_kw || t == "arrow" => arrow_lines.push(maps_to(l)?),
            _ => {
                return Err(kw.error(format!(
                    "unknown keyword `{}`; expected source, target, include, {point_kw} or {arrow_kw}",
                    kw.text
                )))
            }
        }
    }
    let target = match (target, default_target) {
        (Side::Given(t), _) => t,
        (Side::Missing, Some(t)) => t,
        (Side::Missing, None) => return Err(Error::Parse { line: 1, column: 1, message: "no `target` line".into() }),
    };
    let target_points = index(inst.point_names(&target));
    if let Some(names) = include {
        if let Side::Given(_) = source {
            return Err(names[0].error("`include` and `source` cannot both be given"));
        }
        if let Some((t, _)) = point_lines.first().or(arrow_lines.first()) {
            return Err(t.error("`include` fixes the map; no point or arrow lines are allowed"));
        }
        let mut picked = Vec::new();
        for t in &names {
            let i = find(&target_points, t, "point of the target")?;
            if picked.contains(&i) {
                return Err(t.error(format!("`{}` is listed twice", t.text)));
            }
            picked.push(i);
        }
        return inst.include(&target, &picked);
    }
    let Side::Given(source) = source else {
        return Err(Error::Parse { line: 1, column: 1, message: "no `source` or `include` line".into() });
    };
    let source_points = index(inst.point_names(&source));
    let mut points = vec![None; source_points.len()];
    for (from, to) in &point_lines {
        let i = find(&source_points, from, "point of the source")?;
        if points[i].is_some() {
            return Err(from.error(format!("`{}` is mapped twice", from.text)));
        }
        points[i] = Some(find(&target_points, to, "point of the target")?);
    }
    let source_names = inst.point_names(&source);
    let points: Vec<usize> = points
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::Invalid(format!("no image given for `{}`", source_names[i]))))
        .collect::<Result<_>>()?;

    let source_arrows = inst.arrows(&source);
    let target_arrows = inst.arrows(&target);
    let source_index = index(source_arrows.iter().map(|a| a.name.clone()).collect());
    let target_index = index(target_arrows.iter().map(|a| a.name.clone()).collect());
    let mut arrows = vec![None; source_arrows.len()];
    for (from, to) in &arrow_lines {
        let f = find(&source_index, from, "arrow of the source")?;
        if arrows[f].is_some() {
            return Err(from.error(format!("`{}` is mapped twice", from.text)));
        }
        arrows[f] = Some(find(&target_index, to, "arrow of the target")?);
    }
    let target_names = inst.point_names(&target);
    let mut images = Vec::with_capacity(arrows.len());
    for (f, given) in arrows.into_iter().enumerate() {
        if let Some(g) = given {
            images.push(g);
            continue;
        }
        let a = &source_arrows[f];
        let (x, y) = (points[a.dom], points[a.cod]);
        let id = format!("id({})", target_names[x]);
        let inferred = if a.name.starts_with("id(") && x == y {
            target_index.get(&id).copied()
        } else {
            let mut fits = target_arrows.iter().enumerate().filter(|(_, b)| b.dom == x && b.cod == y);
            match (fits.next(), fits.next()) {
                (Some((g, _)), None) => Some(g),
                _ => None,
            }
        };
        images.push(inferred.ok_or_else(|| {
            Error::Invalid(format!("the image of `{}` is not determined; give an `{arrow_kw} {} |-> ...` line", a.name, a.name))
        })?);
    }
    inst.build_map(&source, &target, points, images)
}

fn maps_to<'a>(l: &Line<'a>) -> Result<(Token<'a>, Token<'a>)> {
    let from = *l.at(1, "a name")?;
    l.expect(2, "|->")?;
    let to = *l.at(3, "a name")?;
    l.no_more(4)?;
    Ok((from, to))
}

fn index(names: Vec<String>) -> HashMap<String, usize> {
    names.into_iter().enumerate().map(|(i, n)| (n, i)).collect()
}

fn find(names: &HashMap<String, usize>, t: &Token<'_>, what: &str) -> Result<usize> {
    names.get(t.text).copied().ok_or_else(|| t.error(format!("unknown {what} `{}`", t.text)))
}

/// How to write the source or target line of a map.
pub enum SpaceRef<'a> {
    /// `@NAME` or a path, written as given.
    Named(&'a str),
    Inline,
}

fn space_line<T: Textual>(inst: &T, out: &mut String, side: &str, x: &T::Space, r: &SpaceRef<'_>) -> Result<()> {
    match r {
        SpaceRef::Named(name) => {
            let _ = writeln!(out, "{side} {name}");
        }
        SpaceRef::Inline => {
            let _ = writeln!(out, "{side} {{");
            for line in inst.emit_space(x)?.lines() {
                let _ = writeln!(out, "  {line}");
            }
            out.push_str("}\n");
        }
    }
    Ok(())
}

/// Writes a map with every point and non-identity arrow listed.
pub fn emit_map<T: Textual>(inst: &T, f: &T::Map, source: SpaceRef<'_>, target: SpaceRef<'_>) -> Result<String> {
    let (s, t) = (inst.source(f), inst.target(f));
    let mut out = String::new();
    space_line(inst, &mut out, "source", &s, &source)?;
    space_line(inst, &mut out, "target", &t, &target)?;
    let (point_kw, arrow_kw) = inst.keywords();
    let (sn, tn) = (inst.point_names(&s), inst.point_names(&t));
    for (i, j) in inst.point_images(f).into_iter().enumerate() {
        let _ = writeln!(out, "{point_kw} {} |-> {}", sn[i], tn[j]);
    }
    let (sa, ta) = (inst.arrows(&s), inst.arrows(&t));
    for (a, b) in inst.arrow_images(f).into_iter().enumerate() {
        if !sa[a].name.starts_with("id(") {
            let _ = writeln!(out, "{arrow_kw} {} |-> {}", sa[a].name, ta[b].name);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::comprehensive::CatInstance;
    use crate::emcore::EmInstance;
    use crate::fincat::fixtures;
    use crate::instances::{FinSetInstance, GphInstance, PosInstance, PosSystem};

    fn no_files<S>(t: &Token<'_>) -> Result<S> {
        Err(t.error("no files here"))
    }

    #[test]
    fn point_of_two() {
        let cat = CatInstance::new();
        let f = parse_map(&cat, "source @ONE\ntarget @TWO\nobject * |-> 0\n", &mut no_files, None).unwrap();
        assert_eq!(f, cat.point(&Arc::new(fixtures::two()), 0));
    }

    #[test]
    fn ambiguous_arrows_must_be_given() {
        let cat = CatInstance::new();
        let src = "source @TWO\ntarget @PAR\nobject 0 |-> a\nobject 1 |-> b\n";
        let err = parse_map(&cat, src, &mut no_files, None).unwrap_err();
        assert!(err.to_string().contains("not determined"), "{err}");
        let f = parse_map(&cat, &format!("{src}arrow u |-> g\n"), &mut no_files, None).unwrap();
        assert_eq!(cat.target(&f).arrow(f.arrow_map()[2]).name, "g");
    }

    #[test]
    fn inline_blocks_and_positions() {
        let cat = CatInstance::new();
        let src = "source {\n  objects p\n}\ntarget @TWO\nobject p |-> c\n";
        let err = parse_map(&cat, src, &mut no_files, None).unwrap_err();
        assert_eq!(err, Error::Parse { line: 5, column: 14, message: "unknown point of the target `c`".into() });
        let err = parse_map(&cat, "source {\n  objects p q p\n}\n", &mut no_files, None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 15, .. }), "{err}");
    }

    #[test]
    fn include_gives_full_subcategories() {
        let cat = CatInstance::new();
        let f = parse_map(&cat, "target @VEE\ninclude a b\n", &mut no_files, None).unwrap();
        assert_eq!(cat.source(&f).n_arrows(), 2);
        assert!(cat.in_m(&cat.factorize(&f).unwrap().m));
        let pos = PosInstance::new(PosSystem::LowerSet);
        let g = parse_map(&pos, "target @THREE\ninclude 2 0\n", &mut no_files, None).unwrap();
        assert_eq!(g.map, vec![2, 0]);
        assert!(pos.source(&g).le(1, 0));
    }

    #[test]
    fn maps_round_trip() {
        let cat = CatInstance::new();
        let two = Arc::new(fixtures::two());
        let bang = cat.to_terminal(&two);
        for (s, t) in [(SpaceRef::Named("@TWO"), SpaceRef::Named("@ONE")), (SpaceRef::Inline, SpaceRef::Inline)] {
            let text = emit_map(&cat, &bang, s, t).unwrap();
            assert_eq!(parse_map(&cat, &text, &mut no_files, None).unwrap(), bang, "{text}");
        }
        let gph = GphInstance::new();
        let g = parse_map(&gph, "source @TWO\ntarget @THREE\nnode 0 |-> 0\nnode 1 |-> 2\n", &mut no_files, None);
        assert!(g.is_err(), "0 -> 2 is not an edge of the generating graph");
        let g = parse_map(&gph, "source @TWO\ntarget @THREE\nnode 0 |-> 1\nnode 1 |-> 2\n", &mut no_files, None).unwrap();
        let text = emit_map(&gph, &g, SpaceRef::Inline, SpaceRef::Named("@THREE")).unwrap();
        assert_eq!(parse_map(&gph, &text, &mut no_files, None).unwrap(), g);
        let fs = FinSetInstance::new();
        let h = parse_map(&fs, "source @2\npoint 0 |-> 2\npoint 1 |-> 2\n", &mut no_files, Some(3)).unwrap();
        assert_eq!(h.map, vec![2, 2]);
        let text = emit_map(&fs, &h, SpaceRef::Inline, SpaceRef::Inline).unwrap();
        assert_eq!(parse_map(&fs, &text, &mut no_files, None).unwrap(), h);
    }

    #[test]
    fn unknown_builtin_is_positioned() {
        let cat = CatInstance::new();
        let err = parse_map(&cat, "source @NOPE\n", &mut no_files, None).unwrap_err();
        assert_eq!(err, Error::Parse { line: 1, column: 8, message: "unknown builtin `NOPE`".into() });
    }
}
