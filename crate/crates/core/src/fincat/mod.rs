//! Finite categories given by explicit composition tables.
//!
//! Objects and arrows are addressed by index. Composition is written in
//! diagrammatic order: `compose(f, g)` is "first `f`, then `g`" and is defined
//! exactly when `cod(f) == dom(g)`.

mod comma;
pub mod fixtures;
mod functor;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use comma::{comma, Comma};
pub use functor::{enumerate_functors, find_isomorphism, FinFunctor, FunctorSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("dangling index: {what} refers to {index}")]
    DanglingIndex { what: String, index: usize },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("missing composite for composable pair ({first}, {second})")]
    MissingComposite { first: String, second: String },

    #[error("composite listed for non-composable pair ({first}, {second})")]
    NotComposable { first: String, second: String },

    #[error("conflicting composites for ({first}, {second}): {a} vs {b}")]
    ConflictingComposite { first: String, second: String, a: String, b: String },

    #[error("{law} violated at ({})", witness.join(", "))]
    LawViolation { law: Law, witness: Vec<String> },

    #[error("functor does not preserve {what} at {witness}")]
    FunctorViolation { what: &'static str, witness: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    Identity,
    LeftIdentity,
    RightIdentity,
    CompositeEndpoints,
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Identity => "identity shape",
            Law::LeftIdentity => "left identity law",
            Law::RightIdentity => "right identity law",
            Law::CompositeEndpoints => "composite endpoints",
            Law::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, dom: usize, cod: usize) -> Self {
        Arrow { name: name.into(), dom, cod }
    }
}

/// Unvalidated category data, as read from a file or produced by a
/// construction. Identities are ordinary entries of `arrows`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identity: Vec<usize>,
    /// `(first, second, composite)` in diagrammatic order.
    pub compose: Vec<(usize, usize, usize)>,
}

impl RawCategory {
    /// Builds a raw table from non-identity data. Identities take indices
    /// `0..objects.len()` and are named `id(x)`; all composites with an
    /// identity are filled in.
    pub fn with_identities(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: Vec<(usize, usize, usize)>,
    ) -> Self {
        let n = objects.len();
        let mut all: Vec<Arrow> =
            objects.iter().enumerate().map(|(i, o)| Arrow::new(format!("id({o})"), i, i)).collect();
        all.extend(arrows.into_iter().map(|a| Arrow { name: a.name, dom: a.dom, cod: a.cod }));
        let mut table = Vec::with_capacity(compose.len() + 2 * all.len());
        for (i, a) in all.iter().enumerate() {
            if a.dom < n && a.cod < n {
                table.push((a.dom, i, i));
                if i >= n {
                    table.push((i, a.cod, i));
                }
            }
        }
        table.extend(compose.into_iter().map(|(f, g, h)| (f + n, g + n, h + n)));
        RawCategory { objects, identity: (0..n).collect(), arrows: all, compose: table }
    }
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    table: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FinCat {
    pub fn validate(raw: RawCategory) -> Result<FinCat, FinCatError> {
        let RawCategory { objects, arrows, identity, compose } = raw;
        let n_obj = objects.len();
        let n_arr = arrows.len();

        check_unique(objects.iter())?;
        check_unique(arrows.iter().map(|a| &a.name))?;
        for a in &arrows {
            for end in [a.dom, a.cod] {
                if end >= n_obj {
                    return Err(FinCatError::DanglingIndex { what: format!("arrow {}", a.name), index: end });
                }
            }
        }
        if identity.len() != n_obj {
            return Err(FinCatError::DanglingIndex {
                what: "identity table length".into(),
                index: identity.len(),
            });
        }
        for (x, &i) in identity.iter().enumerate() {
            let a = arrows.get(i).ok_or_else(|| FinCatError::DanglingIndex {
                what: format!("identity of {}", objects[x]),
                index: i,
            })?;
            if a.dom != x || a.cod != x {
                return Err(FinCatError::LawViolation { law: Law::Identity, witness: vec![a.name.clone()] });
            }
        }

        let name = |i: usize| arrows[i].name.clone();
        let mut table = vec![None; n_arr * n_arr];
        for &(f, g, h) in &compose {
            for i in [f, g, h] {
                if i >= n_arr {
                    return Err(FinCatError::DanglingIndex { what: "composition entry".into(), index: i });
                }
            }
            if arrows[f].cod != arrows[g].dom {
                return Err(FinCatError::NotComposable { first: name(f), second: name(g) });
            }
            if arrows[h].dom != arrows[f].dom || arrows[h].cod != arrows[g].cod {
                return Err(FinCatError::LawViolation {
                    law: Law::CompositeEndpoints,
                    witness: vec![name(f), name(g), name(h)],
                });
            }
            match table[f * n_arr + g] {
                Some(prev) if prev != h => {
                    return Err(FinCatError::ConflictingComposite {
                        first: name(f),
                        second: name(g),
                        a: name(prev),
                        b: name(h),
                    })
                }
                _ => table[f * n_arr + g] = Some(h),
            }
        }
        for f in 0..n_arr {
            for g in 0..n_arr {
                if arrows[f].cod == arrows[g].dom && table[f * n_arr + g].is_none() {
                    return Err(FinCatError::MissingComposite { first: name(f), second: name(g) });
                }
            }
        }
        let at = |f: usize, g: usize| table[f * n_arr + g].expect("total on composable pairs");
        for f in 0..n_arr {
            let a = &arrows[f];
            if at(identity[a.dom], f) != f {
                return Err(FinCatError::LawViolation {
                    law: Law::LeftIdentity,
                    witness: vec![name(identity[a.dom]), name(f)],
                });
            }
            if at(f, identity[a.cod]) != f {
                return Err(FinCatError::LawViolation {
                    law: Law::RightIdentity,
                    witness: vec![name(f), name(identity[a.cod])],
                });
            }
        }
        for f in 0..n_arr {
            for g in (0..n_arr).filter(|&g| arrows[f].cod == arrows[g].dom) {
                let fg = at(f, g);
                for h in (0..n_arr).filter(|&h| arrows[g].cod == arrows[h].dom) {
                    if at(fg, h) != at(f, at(g, h)) {
                        return Err(FinCatError::LawViolation {
                            law: Law::Associativity,
                            witness: vec![name(f), name(g), name(h)],
                        });
                    }
                }
            }
        }

        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom * n_obj + a.cod].push(i);
        }
        Ok(FinCat { objects, arrows, identity, table, homs })
    }

    /// Builds the table of a construction known to satisfy the laws, skipping
    /// validation. Entries must cover every composable pair.
    pub(crate) fn from_trusted(raw: RawCategory) -> FinCat {
        let RawCategory { objects, arrows, identity, compose } = raw;
        let (n_obj, n_arr) = (objects.len(), arrows.len());
        let mut table = vec![None; n_arr * n_arr];
        for (f, g, h) in compose {
            table[f * n_arr + g] = Some(h);
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom * n_obj + a.cod].push(i);
        }
        FinCat { objects, arrows, identity, table, homs }
    }

    pub fn empty() -> FinCat {
        FinCat::validate(RawCategory::default()).expect("empty category is valid")
    }

    /// The raw table this category was validated from, up to entry order.
    pub fn to_raw(&self) -> RawCategory {
        let n = self.arrows.len();
        let mut compose = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.table[f * n + g] {
                    compose.push((f, g, h));
                }
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            arrows: self.arrows.clone(),
            identity: self.identity.clone(),
            compose,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.arrows[f].cod
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.arrows[f].dom] == f
    }

    /// `f` then `g`; `None` when `cod(f) != dom(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.arrows.len() + g]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| !self.is_identity(f))
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Number of pairs `(f, g)` with `cod(f) == dom(g)`, identities included.
    pub fn composable_pairs(&self) -> usize {
        (0..self.objects.len()).map(|y| self.into_count(y) * self.out_count(y)).sum()
    }

    /// Number of composable triples, identities included.
    pub fn composable_triples(&self) -> usize {
        let n = self.objects.len();
        let mut total = 0;
        for y in 0..n {
            for z in 0..n {
                total += self.into_count(y) * self.hom(y, z).len() * self.out_count(z);
            }
        }
        total
    }

    fn into_count(&self, y: usize) -> usize {
        (0..self.objects.len()).map(|x| self.hom(x, y).len()).sum()
    }

    fn out_count(&self, y: usize) -> usize {
        (0..self.objects.len()).map(|z| self.hom(y, z).len()).sum()
    }

    /// Object `x` is terminal: exactly one arrow from every object.
    pub fn is_terminal_object(&self, x: usize) -> bool {
        (0..self.objects.len()).all(|y| self.hom(y, x).len() == 1)
    }

    pub fn opposite(&self) -> FinCat {
        let n = self.arrows.len();
        let arrows = self.arrows.iter().map(|a| Arrow { name: a.name.clone(), dom: a.cod, cod: a.dom }).collect();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                table[f * n + g] = self.table[g * n + f];
            }
        }
        let m = self.objects.len();
        let mut homs = vec![Vec::new(); m * m];
        for x in 0..m {
            for y in 0..m {
                homs[x * m + y] = self.homs[y * m + x].clone();
            }
        }
        FinCat { objects: self.objects.clone(), arrows, identity: self.identity.clone(), table, homs }
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Components {
        let mut parent: Vec<usize> = (0..self.objects.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (ra, rb) = (find(&mut parent, a.dom), find(&mut parent, a.cod));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut label = HashMap::new();
        let mut class_of = Vec::with_capacity(self.objects.len());
        for x in 0..self.objects.len() {
            let r = find(&mut parent, x);
            let next = label.len();
            class_of.push(*label.entry(r).or_insert(next));
        }
        Components { count: label.len(), class_of }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count == 1
    }
}

impl Serialize for FinCat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let arrows: Vec<&Arrow> = self.non_identity_arrows().map(|f| &self.arrows[f]).collect();
        let mut st = s.serialize_struct("FinCat", 2)?;
        st.serialize_field("objects", &self.objects)?;
        st.serialize_field("arrows", &arrows)?;
        st.end()
    }
}

/// A finite quotient set: `class_of` is onto `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    pub class_of: Vec<usize>,
}

fn check_unique<'a>(names: impl Iterator<Item = &'a String>) -> Result<(), FinCatError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(FinCatError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn two_is_valid() {
        let two = two();
        assert_eq!(two.n_objects(), 2);
        assert_eq!(two.n_arrows(), 3);
        assert_eq!(two.non_identity_arrows().count(), 1);
    }

    #[test]
    fn missing_identity_composite_is_reported() {
        let mut raw = two().to_raw();
        let u = 2;
        raw.compose.retain(|&(f, g, _)| !(f == 0 && g == u));
        let err = FinCat::validate(raw).unwrap_err();
        assert_eq!(err, FinCatError::MissingComposite { first: "id(0)".into(), second: "u".into() });
    }

    #[test]
    fn associativity_violation_names_triple() {
        // one object, arrows {id, a, b}; a.a = b, a.b = a, b.a = b, b.b = b
        let raw = RawCategory::with_identities(
            vec!["x".into()],
            vec![Arrow::new("a", 0, 0), Arrow::new("b", 0, 0)],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
        );
        match FinCat::validate(raw).unwrap_err() {
            FinCatError::LawViolation { law: Law::Associativity, witness } => {
                assert_eq!(witness, vec!["a", "a", "a"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_index() {
        let raw = RawCategory::with_identities(vec!["x".into()], vec![Arrow::new("a", 0, 3)], vec![]);
        assert!(matches!(FinCat::validate(raw), Err(FinCatError::DanglingIndex { .. })));
    }

    #[test]
    fn component_counts() {
        assert_eq!(two().components().count, 1);
        assert_eq!(discrete(2).components().count, 2);
        assert_eq!(parallel_pair().components().count, 1);
        assert_eq!(FinCat::empty().components().count, 0);
    }

    #[test]
    fn opposite_is_involutive() {
        for c in [one(), two(), ordinal(3), parallel_pair(), discrete(2), vee()] {
            assert_eq!(c.opposite().opposite(), c);
        }
        assert_eq!(one().opposite(), one());
        let op = two().opposite();
        assert_eq!(op.hom(1, 0).len(), 1);
        assert!(op.hom(0, 1).is_empty());
    }

    #[test]
    fn raw_round_trip_is_idempotent() {
        for c in [one(), two(), ordinal(4), parallel_pair(), vee()] {
            let again = FinCat::validate(c.to_raw()).unwrap();
            assert_eq!(again, c);
        }
    }

    #[test]
    fn composable_counts_of_ordinals() {
        assert_eq!(one().composable_pairs(), 1);
        assert_eq!(two().composable_pairs(), 4);
        assert_eq!(ordinal(3).composable_pairs(), 10);
        assert_eq!(two().composable_triples(), 5);
    }
}
