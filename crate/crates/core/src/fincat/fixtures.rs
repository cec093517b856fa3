//! Small named categories used throughout the tests and the CLI (`@NAME`).

use super::{Arrow, FinCat, RawCategory};

fn build(objects: &[&str], arrows: &[(&str, usize, usize)], compose: &[(usize, usize, usize)]) -> FinCat {
    let raw = RawCategory::with_identities(
        objects.iter().map(|s| s.to_string()).collect(),
        arrows.iter().map(|&(n, d, c)| Arrow::new(n, d, c)).collect(),
        compose.to_vec(),
    );
    FinCat::validate(raw).expect("fixture is a valid category")
}

pub fn one() -> FinCat {
    build(&["*"], &[], &[])
}

/// Objects `0`, `1` and a single arrow `u : 0 -> 1`.
pub fn two() -> FinCat {
    build(&["0", "1"], &[("u", 0, 1)], &[])
}

/// The ordinal `n` as a category: objects `0..n`, one arrow `i<j` for each `i < j`.
pub fn ordinal(n: usize) -> FinCat {
    if n == 2 {
        return two();
    }
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut index = std::collections::HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            index.insert((i, j), arrows.len());
            arrows.push(Arrow::new(format!("{i}<{j}"), i, j));
        }
    }
    let mut compose = Vec::new();
    for (&(i, j), &f) in &index {
        for k in j + 1..n {
            compose.push((f, index[&(j, k)], index[&(i, k)]));
        }
    }
    compose.sort_unstable();
    FinCat::validate(RawCategory::with_identities(objects, arrows, compose)).expect("ordinal is valid")
}

pub fn three() -> FinCat {
    ordinal(3)
}

pub fn four() -> FinCat {
    ordinal(4)
}

/// The discrete category on `n` objects.
pub fn discrete(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    FinCat::validate(RawCategory::with_identities(objects, vec![], vec![])).expect("discrete is valid")
}

/// `a ⇉ b` with arrows `f`, `g`.
pub fn parallel_pair() -> FinCat {
    build(&["a", "b"], &[("f", 0, 1), ("g", 0, 1)], &[])
}

/// `a -> c <- b`.
pub fn vee() -> FinCat {
    build(&["a", "b", "c"], &[("ac", 0, 2), ("bc", 1, 2)], &[])
}

pub fn by_name(name: &str) -> Option<FinCat> {
    Some(match name {
        "EMPTY" => FinCat::empty(),
        "ONE" => one(),
        "TWO" => two(),
        "THREE" => three(),
        "FOUR" => four(),
        "D2" => discrete(2),
        "PAR" => parallel_pair(),
        "VEE" => vee(),
        _ => return None,
    })
}
