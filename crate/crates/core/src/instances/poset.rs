use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, RawCategory};

/// Largest poset representable with one `u64` row per element.
pub const MAX_ELEMENTS: usize = 64;

/// A finite poset; `leq[i]` has bit `j` set iff `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<u64>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<(usize, usize)> = self.strict_pairs().collect();
        let mut st = s.serialize_struct("Poset", 2)?;
        st.serialize_field("elements", &self.names)?;
        st.serialize_field("less", &pairs)?;
        st.end()
    }
}

pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & bit(i) != 0)
}

impl Poset {
    /// The order generated by `pairs` (reflexive-transitive closure), or an
    /// antisymmetry error.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeBudgetExceeded { what: "building a poset".into(), limit: MAX_ELEMENTS as u64 });
        }
        let mut rel = vec![0u64; n];
        for (i, r) in rel.iter_mut().enumerate() {
            *r = bit(i);
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("order pair ({a}, {b}) out of range")));
            }
            rel[a] |= bit(b);
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i] & bit(k) != 0 {
                    rel[i] |= rel[k];
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rel[i] & bit(j) != 0 && rel[j] & bit(i) != 0 {
                    return Err(Error::Antisymmetry(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { names, leq: rel })
    }

    pub(crate) fn from_rows(names: Vec<String>, leq: Vec<u64>) -> Poset {
        Poset { names, leq }
    }

    pub fn empty() -> Poset {
        Poset { names: vec![], leq: vec![] }
    }

    pub fn one() -> Poset {
        Poset::chain(1)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| ((1u128 << n) - (1u128 << i)) as u64).collect();
        Poset { names, leq }
    }

    pub fn antichain(n: usize) -> Poset {
        let names = (0..n).map(|i| format!("d{i}")).collect();
        Poset { names, leq: (0..n).map(bit).collect() }
    }

    /// `a, b <= c`.
    pub fn vee() -> Poset {
        Poset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a] & bit(b) != 0
    }

    pub fn all(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    /// Elements above `a`.
    pub fn up(&self, a: usize) -> u64 {
        self.leq[a]
    }

    /// Elements below `a`: the principal lower-set.
    pub fn down(&self, a: usize) -> u64 {
        (0..self.len()).filter(|&i| self.le(i, a)).fold(0, |m, i| m | bit(i))
    }

    /// Pairs `a < b`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| (0..self.len()).filter(move |&b| a != b && self.le(a, b)).map(move |b| (a, b)))
    }

    /// Covering pairs, for drawing.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(a, b)| !(0..self.len()).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b)))
            .collect()
    }

    pub fn lower_closure(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, i| m | self.down(i))
    }

    pub fn is_lower(&self, set: u64) -> bool {
        self.lower_closure(set) == set
    }

    /// Least upper bound of a subset, if it exists.
    pub fn sup(&self, set: u64) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len()).filter(|&u| bits(set).all(|i| self.le(i, u))).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.le(u, v)))
    }

    /// Greatest lower bound of a subset, if it exists.
    pub fn inf(&self, set: u64) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len()).filter(|&l| bits(set).all(|i| self.le(l, i))).collect();
        lowers.iter().copied().find(|&l| lowers.iter().all(|&v| self.le(v, l)))
    }

    /// Greatest element of a subset, if any.
    pub fn maximum(&self, set: u64) -> Option<usize> {
        bits(set).find(|&m| bits(set).all(|i| self.le(i, m)))
    }

    /// All lower-sets, in increasing order of their bit masks.
    pub fn lower_sets(&self) -> Vec<u64> {
        // a linear extension: strictly smaller elements have smaller down-sets
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.down(i).count_ones());
        let mut out = Vec::new();
        self.lower_sets_from(&order, 0, 0, &mut out);
        out.sort_unstable();
        out
    }

    fn lower_sets_from(&self, order: &[usize], k: usize, acc: u64, out: &mut Vec<u64>) {
        let Some(&i) = order.get(k) else {
            out.push(acc);
            return;
        };
        self.lower_sets_from(order, k + 1, acc, out);
        if (self.down(i) & !bit(i)) & !acc == 0 {
            self.lower_sets_from(order, k + 1, acc | bit(i), out);
        }
    }

    /// The induced sub-poset on `set`, elements in increasing index order.
    pub fn restrict(&self, set: u64) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = bits(set).filter(|&i| i < self.len()).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let leq = keep.iter().map(|&i| keep.iter().enumerate().filter(|&(_, &j)| self.le(i, j)).fold(0, |m, (k, _)| m | bit(k))).collect();
        (Poset { names, leq }, keep)
    }

    pub fn opposite(&self) -> Poset {
        let leq = (0..self.len()).map(|i| self.down(i)).collect();
        Poset { names: self.names.clone(), leq }
    }

    /// Product order on pairs `(a, b)`, indexed `a * |other| + b`.
    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        let mut leq = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                let mut row = 0;
                for a2 in 0..n {
                    for b2 in 0..m {
                        if self.le(a, a2) && other.le(b, b2) {
                            row |= bit(a2 * m + b2);
                        }
                    }
                }
                leq.push(row);
            }
        }
        Poset { names, leq }
    }

    /// The poset as a thin category: one arrow `a<=b` per comparable pair.
    pub fn to_fincat(&self) -> FinCat {
        let n = self.len();
        let mut arrows: Vec<Arrow> = (0..n).map(|i| Arrow::new(format!("id({})", self.names[i]), i, i)).collect();
        let mut index = vec![usize::MAX; n * n];
        for i in 0..n {
            index[i * n + i] = i;
        }
        for (a, b) in self.strict_pairs() {
            index[a * n + b] = arrows.len();
            arrows.push(Arrow::new(format!("{}<={}", self.names[a], self.names[b]), a, b));
        }
        let mut compose = Vec::new();
        for f in 0..arrows.len() {
            for g in (0..arrows.len()).filter(|&g| arrows[g].dom == arrows[f].cod) {
                compose.push((f, g, index[arrows[f].dom * n + arrows[g].cod]));
            }
        }
        FinCat::from_trusted(RawCategory { objects: self.names.clone(), arrows, identity: (0..n).collect(), compose })
    }

    /// The poset reflection of a thin, skeletal category.
    pub fn from_fincat(c: &FinCat) -> Result<Poset> {
        let n = c.n_objects();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                match c.hom(a, b).len() {
                    0 => {}
                    1 => pairs.push((a, b)),
                    _ => return Err(Error::Invalid(format!("category is not thin at ({}, {})", c.object_name(a), c.object_name(b)))),
                }
            }
        }
        Poset::new(c.objects().to_vec(), &pairs)
    }
}

/// A monotone map between finite posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monotone {
    pub source: Arc<Poset>,
    pub target: Arc<Poset>,
    pub map: Vec<usize>,
}

impl Hash for Monotone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.map.hash(state);
    }
}

impl Serialize for Monotone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.map.serialize(s)
    }
}

impl Monotone {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, map: Vec<usize>) -> Result<Monotone> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::Invalid("map does not match the element counts".into()));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.le(a, b) && !target.le(map[a], map[b]) {
                    return Err(Error::Invalid(format!(
                        "not monotone: {} <= {} but {} is not below {}",
                        source.name(a),
                        source.name(b),
                        target.name(map[a]),
                        target.name(map[b])
                    )));
                }
            }
        }
        Ok(Monotone { source, target, map })
    }

    pub fn identity(x: Arc<Poset>) -> Monotone {
        let map = (0..x.len()).collect();
        Monotone { source: x.clone(), target: x, map }
    }

    pub fn then(&self, next: &Monotone) -> Monotone {
        Monotone { source: self.source.clone(), target: next.target.clone(), map: self.map.iter().map(|&y| next.map[y]).collect() }
    }

    pub fn image(&self) -> u64 {
        self.map.iter().fold(0, |m, &y| m | bit(y))
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones() as usize == self.map.len()
    }

    pub fn reflects_order(&self) -> bool {
        (0..self.source.len()).all(|a| (0..self.source.len()).all(|b| !self.target.le(self.map[a], self.map[b]) || self.source.le(a, b)))
    }

    pub fn is_iso(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective() && self.reflects_order()
    }

    pub fn opposite(&self) -> Monotone {
        Monotone { source: Arc::new(self.source.opposite()), target: Arc::new(self.target.opposite()), map: self.map.clone() }
    }
}

/// Every monotone map `a -> b` whose value at `x` lies in `candidates(x)`, in
/// lexicographic order.
///
/// The element with the fewest values still consistent with those already
/// placed is assigned next.
pub(crate) fn monotone_search(
    a: &Arc<Poset>,
    b: &Arc<Poset>,
    candidates: &dyn Fn(usize) -> u64,
    meter: &Meter,
) -> Result<Vec<Monotone>> {
    struct Search<'s> {
        a: &'s Poset,
        b: &'s Poset,
        meter: &'s Meter,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn go(&mut self, map: &mut Vec<usize>, open: &mut Vec<u64>) -> Result<()> {
            let mut next = None;
            for (i, &mask) in open.iter().enumerate() {
                if map[i] == usize::MAX && next.is_none_or(|(_, m): (usize, u64)| mask.count_ones() < m.count_ones()) {
                    next = Some((i, mask));
                }
            }
            let Some((i, mask)) = next else {
                self.out.push(map.clone());
                return Ok(());
            };
            for y in bits(mask) {
                self.meter.tick()?;
                map[i] = y;
                // narrow the others to values compatible with `i |-> y`
                let saved = open.clone();
                let mut dead = false;
                for j in (0..map.len()).filter(|&j| map[j] == usize::MAX) {
                    if self.a.le(i, j) {
                        open[j] &= self.b.up(y);
                    }
                    if self.a.le(j, i) {
                        open[j] &= self.b.down(y);
                    }
                    dead |= open[j] == 0;
                }
                if !dead {
                    self.go(map, open)?;
                }
                *open = saved;
            }
            map[i] = usize::MAX;
            Ok(())
        }
    }
    let mut open: Vec<u64> = (0..a.len()).map(|i| candidates(i) & b.all()).collect();
    let mut search = Search { a, b, meter, out: Vec::new() };
    let mut map = vec![usize::MAX; a.len()];
    if open.iter().all(|&m| m != 0) {
        search.go(&mut map, &mut open)?;
    }
    let mut out = search.out;
    out.sort();
    Ok(out.into_iter().map(|map| Monotone { source: a.clone(), target: b.clone(), map }).collect())
}

/// The first order isomorphism `a -> b` whose value at `x` lies in
/// `candidates(x)`.
pub(crate) fn order_iso_search(
    a: &Arc<Poset>,
    b: &Arc<Poset>,
    candidates: &dyn Fn(usize) -> u64,
    meter: &Meter,
) -> Result<Option<Monotone>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    fn go(
        i: usize,
        a: &Poset,
        b: &Poset,
        candidates: &dyn Fn(usize) -> u64,
        map: &mut Vec<usize>,
        used: u64,
        meter: &Meter,
    ) -> Result<bool> {
        if i == a.len() {
            return Ok(true);
        }
        for y in bits(candidates(i) & b.all() & !used) {
            meter.tick()?;
            if (0..i).all(|j| a.le(j, i) == b.le(map[j], y) && a.le(i, j) == b.le(y, map[j])) {
                map[i] = y;
                if go(i + 1, a, b, candidates, map, used | bit(y), meter)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    let mut map = vec![usize::MAX; a.len()];
    Ok(go(0, a, b, candidates, &mut map, 0, meter)?.then(|| Monotone { source: a.clone(), target: b.clone(), map }))
}

pub fn monotone_maps(a: &Arc<Poset>, b: &Arc<Poset>, budget: &Budget) -> Result<Vec<Monotone>> {
    monotone_search(a, b, &|_| u64::MAX, &budget.meter("enumerating monotone maps"))
}
