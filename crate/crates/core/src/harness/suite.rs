//! Corpora, the property registry and suite reports.

use std::cell::OnceCell;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::budget::Budget;
use crate::emcore::EmInstance;
use crate::error::{Error, Result};
use crate::theory::{adherence, Adherence};

/// Size bounds and sampling parameters for one corpus.
///
/// `max_obj` bounds objects, elements or nodes; `max_arr` bounds arrows or
/// proper edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_obj: usize,
    pub max_arr: usize,
    /// Cap on corpus maps; larger map sets are sampled.
    pub max_maps: usize,
    /// Cap on composable pairs and other quadratic families.
    pub max_pairs: usize,
    /// Fiber bound for enumerating discrete spaces.
    pub fiber_bound: usize,
    /// Categories kept per (objects, arrows) stratum when sampling.
    pub per_stratum: usize,
    pub seed: u64,
}

impl Bounds {
    /// Defaults for an instance name, as used by the acceptance run.
    pub fn for_instance(name: &str) -> Bounds {
        let base = Bounds { max_obj: 3, max_arr: 8, max_maps: 2000, max_pairs: 2000, fiber_bound: 2, per_stratum: 2, seed: 0 };
        match name {
            "cat" => base,
            "gph" => Bounds { max_obj: 4, max_arr: 3, ..base },
            "finset" => Bounds { max_obj: 4, max_arr: 0, max_maps: 100_000, ..base },
            _ => Bounds { max_obj: 4, max_arr: 0, max_maps: 100_000, ..base },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusMap<M> {
    pub source: usize,
    pub target: usize,
    pub map: M,
}

/// Enumerated spaces and maps between them.
#[derive(Debug, Clone)]
pub struct Corpus<I: EmInstance> {
    pub instance: &'static str,
    pub bounds: Bounds,
    pub spaces: Vec<I::Space>,
    pub maps: Vec<CorpusMap<I::Map>>,
    pub sampled: bool,
    pub notes: Vec<String>,
}

/// Maps kept per pair of spaces when the corpus is sampled.
const PER_PAIR: usize = 3;

/// A uniform seeded sample of `k` indices out of `n`, in increasing order.
pub(crate) fn sample_indices(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if n <= k {
        return (0..n).collect();
    }
    let mut picked = sample(rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}

impl<I: EmInstance> Corpus<I> {
    /// A corpus with the given spaces and every map between them, sampled
    /// down to `bounds.max_maps` when there are more. Pairs whose hom-set
    /// exceeds the budget are left out and noted.
    pub fn new(inst: &I, spaces: Vec<I::Space>, bounds: Bounds, budget: &Budget) -> Result<Corpus<I>> {
        let mut per_pair = Vec::new();
        let mut notes = Vec::new();
        let mut sampled = false;
        for (a, sa) in spaces.iter().enumerate() {
            for (b, sb) in spaces.iter().enumerate() {
                match inst.maps(sa, sb, budget) {
                    Ok(ms) => per_pair.push(ms.into_iter().map(|map| CorpusMap { source: a, target: b, map }).collect::<Vec<_>>()),
                    Err(Error::SizeBudgetExceeded { .. }) => {
                        sampled = true;
                        notes.push(format!("maps from space {a} to space {b} exceed the budget and were left out"));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        let total: usize = per_pair.iter().map(Vec::len).sum();
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        let mut maps: Vec<CorpusMap<I::Map>> = Vec::new();
        if total > bounds.max_maps {
            // every pair of spaces keeps a few maps, so that large hom-sets
            // do not crowd out the rest
            for ms in per_pair {
                let keep = sample_indices(ms.len(), PER_PAIR, &mut rng);
                let mut all: Vec<Option<CorpusMap<I::Map>>> = ms.into_iter().map(Some).collect();
                maps.extend(keep.into_iter().map(|i| all[i].take().expect("distinct indices")));
            }
            notes.push(format!("{total} maps sampled down to {}", maps.len().min(bounds.max_maps)));
            sampled = true;
            if maps.len() > bounds.max_maps {
                let keep = sample_indices(maps.len(), bounds.max_maps, &mut rng);
                let mut all: Vec<Option<CorpusMap<I::Map>>> = maps.into_iter().map(Some).collect();
                maps = keep.into_iter().map(|i| all[i].take().expect("distinct indices")).collect();
            }
        } else {
            maps = per_pair.into_iter().flatten().collect();
        }
        Ok(Corpus { instance: inst.name(), bounds, spaces, maps, sampled, notes })
    }

    /// A corpus of spaces only.
    pub fn spaces_only(inst: &I, spaces: Vec<I::Space>, bounds: Bounds) -> Corpus<I> {
        Corpus { instance: inst.name(), bounds, spaces, maps: Vec::new(), sampled: false, notes: Vec::new() }
    }

    pub fn index_of(&self, x: &I::Space) -> Option<usize> {
        self.spaces.iter().position(|s| s == x)
    }
}

/// A corpus with its adherence categories, discrete spaces and composable
/// pairs computed on first use.
pub struct Prepared<'a, I: EmInstance> {
    pub inst: &'a I,
    pub corpus: &'a Corpus<I>,
    pub budget: Budget,
    adherences: Vec<OnceCell<Result<Adherence<I::Space, I::Map>>>>,
    discrete: Vec<OnceCell<Result<Vec<I::Map>>>>,
    pairs: OnceCell<Vec<(usize, usize)>>,
}

impl<'a, I: EmInstance> Prepared<'a, I> {
    pub fn new(inst: &'a I, corpus: &'a Corpus<I>, budget: Budget) -> Self {
        let n = corpus.spaces.len();
        Prepared {
            inst,
            corpus,
            budget,
            adherences: (0..n).map(|_| OnceCell::new()).collect(),
            discrete: (0..n).map(|_| OnceCell::new()).collect(),
            pairs: OnceCell::new(),
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.corpus.bounds
    }

    pub fn spaces(&self) -> &[I::Space] {
        &self.corpus.spaces
    }

    pub fn maps(&self) -> &[CorpusMap<I::Map>] {
        &self.corpus.maps
    }

    pub fn adherence(&self, i: usize) -> Result<&Adherence<I::Space, I::Map>> {
        self.adherences[i].get_or_init(|| adherence(self.inst, &self.corpus.spaces[i], &self.budget)).as_ref().map_err(Clone::clone)
    }

    /// Discrete spaces over space `i` up to the fiber bound.
    pub fn discrete(&self, i: usize) -> Result<&[I::Map]> {
        self.discrete[i]
            .get_or_init(|| self.inst.discrete_spaces(&self.corpus.spaces[i], self.corpus.bounds.fiber_bound, &self.budget))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Indices `(i, j)` of composable corpus maps, `maps[i]` first, sampled
    /// down to `max_pairs`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        self.pairs.get_or_init(|| {
            let maps = &self.corpus.maps;
            let all: Vec<(usize, usize)> = (0..maps.len())
                .flat_map(|i| (0..maps.len()).filter(move |&j| maps[i].target == maps[j].source).map(move |j| (i, j)))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(self.corpus.bounds.seed ^ 0x9e37_79b9);
            sample_indices(all.len(), self.corpus.bounds.max_pairs, &mut rng).into_iter().map(|k| all[k]).collect()
        })
    }

    pub fn maps_into(&self, x: usize) -> impl Iterator<Item = &CorpusMap<I::Map>> {
        self.corpus.maps.iter().filter(move |m| m.target == x)
    }

    pub fn maps_from(&self, x: usize) -> impl Iterator<Item = &CorpusMap<I::Map>> {
        self.corpus.maps.iter().filter(move |m| m.source == x)
    }

    /// At most `k` evenly spread corpus maps satisfying `keep`.
    pub fn spread(&self, k: usize, keep: impl Fn(&CorpusMap<I::Map>) -> bool) -> Vec<&CorpusMap<I::Map>> {
        let chosen: Vec<&CorpusMap<I::Map>> = self.corpus.maps.iter().filter(|m| keep(m)).collect();
        if chosen.len() <= k {
            return chosen;
        }
        (0..k).map(|i| chosen[i * chosen.len() / k]).collect()
    }
}

/// Result of one property run: instances checked and the first failure.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub checked: usize,
    /// Cases left out because they exceeded the budget.
    pub over_budget: usize,
    pub counterexample: Option<Value>,
}

impl Outcome {
    pub fn pass(checked: usize) -> Outcome {
        Outcome { checked, ..Outcome::default() }
    }
}

/// Collects cases until the first counterexample.
#[derive(Debug, Default)]
pub struct Tally {
    checked: usize,
    over_budget: usize,
    failure: Option<Value>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally::default()
    }

    /// Records one case; returns false once a failure has been seen.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.checked += 1;
        if !ok {
            self.failure = Some(witness());
        }
        ok
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Passes a computation through, counting and dropping budget overruns.
    pub fn bounded<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::SizeBudgetExceeded { .. }) => {
                self.over_budget += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn finish(self) -> Outcome {
        Outcome { checked: self.checked, over_budget: self.over_budget, counterexample: self.failure }
    }
}

pub fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// A registered property: an id, a one-line statement, and its check.
pub struct Property<I: EmInstance> {
    pub id: &'static str,
    pub anchor: &'static str,
    pub run: fn(&Prepared<'_, I>) -> Result<Outcome>,
}

impl<I: EmInstance> Clone for Property<I> {
    fn clone(&self) -> Self {
        Property { id: self.id, anchor: self.anchor, run: self.run }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub id: String,
    pub anchor: String,
    pub checked: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusInfo {
    pub spaces: usize,
    pub maps: usize,
    pub sampled: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub instance: String,
    pub bounds: Bounds,
    pub corpus: CorpusInfo,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| p.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.status == Status::Pass)
    }

    pub fn result(&self, id: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.id == id)
    }

    /// 0 when everything passes, 1 on any failure, 3 when something was
    /// skipped for budget and nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            1
        } else if self.properties.iter().any(|p| p.status == Status::Skipped) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per property.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "instance {}: {} spaces, {} maps{}\n",
            self.instance,
            self.corpus.spaces,
            self.corpus.maps,
            if self.corpus.sampled { " (sampled)" } else { "" }
        );
        for p in &self.properties {
            let status = match p.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("{status} {:<8} {:>7} checked  {}", p.id, p.checked, p.anchor));
            if let Some(n) = &p.note {
                out.push_str(&format!("  [{n}]"));
            }
            out.push('\n');
        }
        out
    }
}

/// `*` matches any run of characters; everything else is literal.
fn glob(pattern: &str, text: &str) -> bool {
    let (p, t) = (pattern.as_bytes(), text.as_bytes());
    let (mut i, mut j) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while j < t.len() {
        if i < p.len() && p[i] == b'*' {
            star = Some((i, j));
            i += 1;
        } else if i < p.len() && p[i] == t[j] {
            i += 1;
            j += 1;
        } else if let Some((si, sj)) = star {
            i = si + 1;
            j = sj + 1;
            star = Some((si, sj + 1));
        } else {
            return false;
        }
    }
    p[i..].iter().all(|&c| c == b'*')
}

/// Whether a property id is selected by a comma-separated list of globs.
pub fn matches_filter(filter: Option<&str>, id: &str) -> bool {
    match filter {
        None => true,
        Some(f) => f.split(',').map(str::trim).filter(|s| !s.is_empty()).any(|pat| glob(pat, id)),
    }
}

/// Runs the selected properties in id order.
pub fn run_properties<I: EmInstance>(props: &[Property<I>], prepared: &Prepared<'_, I>, filter: Option<&str>) -> SuiteReport {
    let mut selected: Vec<&Property<I>> = props.iter().filter(|p| matches_filter(filter, p.id)).collect();
    selected.sort_by_key(|p| p.id);
    let vacuous = prepared.corpus.spaces.is_empty();
    let properties = selected
        .into_iter()
        .map(|p| {
            let (status, checked, note, counterexample) = match (p.run)(prepared) {
                Ok(o) if o.counterexample.is_some() => (Status::Fail, o.checked, None, o.counterexample),
                Ok(o) if o.checked == 0 && o.over_budget > 0 => {
                    (Status::Skipped, 0, Some(format!("all {} cases exceeded the budget", o.over_budget)), None)
                }
                Ok(o) => {
                    let note = if vacuous || o.checked == 0 {
                        Some("0 instances".to_string())
                    } else {
                        (o.over_budget > 0).then(|| format!("{} cases exceeded the budget and were left out", o.over_budget))
                    };
                    (Status::Pass, o.checked, note, None)
                }
                Err(e @ Error::SizeBudgetExceeded { .. }) => (Status::Skipped, 0, Some(e.to_string()), None),
                Err(e @ (Error::Unsupported { .. } | Error::PushoutUnavailable(_))) => {
                    (Status::Skipped, 0, Some(e.to_string()), None)
                }
                Err(e) => (Status::Fail, 0, Some(format!("error: {e}")), Some(Value::String(e.to_string()))),
            };
            PropertyResult { id: p.id.to_string(), anchor: p.anchor.to_string(), checked, status, note, counterexample }
        })
        .collect();
    let c = prepared.corpus;
    SuiteReport {
        instance: c.instance.to_string(),
        bounds: c.bounds,
        corpus: CorpusInfo { spaces: c.spaces.len(), maps: c.maps.len(), sampled: c.sampled, notes: c.notes.clone() },
        properties,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn globs() {
        assert!(glob("THM-*", "THM-06"));
        assert!(glob("*", "FS-01"));
        assert!(!glob("THM-*", "FS-01"));
        assert!(glob("F*-0?", "F*-0?"));
        assert!(matches_filter(Some("FS-01, THM-*"), "THM-02"));
        assert!(!matches_filter(Some("FS-01"), "FS-02"));
    }
}
