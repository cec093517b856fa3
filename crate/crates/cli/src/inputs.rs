//! Turning command-line tokens into spaces, maps and point names.

use std::path::Path;

use emcat::text::{load_map, load_space, Textual, BUILTINS};
use emcat::{Error, Result};

pub enum Input<T: Textual> {
    Space(T::Space),
    Map(T::Map),
    Point(String),
}

const SPACE_EXTENSIONS: [&str; 4] = ["fincat", "poset", "graph", "set"];

/// Loads every token. Spaces that only serve as default targets of later
/// map files are dropped once some map is present.
pub fn load<T: Textual>(inst: &T, tokens: &[String]) -> Result<Vec<Input<T>>> {
    let mut out = Vec::new();
    let mut last_space: Option<T::Space> = None;
    for tok in tokens {
        let ext = Path::new(tok).extension().and_then(|e| e.to_str());
        let input = if let Some(name) = tok.strip_prefix('@') {
            let x = inst.builtin(name).ok_or_else(|| {
                Error::Invalid(format!("unknown builtin `{tok}`; expected one of @{}", BUILTINS.join(", @")))
            })?;
            last_space = Some(x.clone());
            Input::Space(x)
        } else {
            match ext {
                Some(e) if e == inst.space_extension() => {
                    let x = load_space(inst, Path::new(tok))?;
                    last_space = Some(x.clone());
                    Input::Space(x)
                }
                Some(e) if SPACE_EXTENSIONS.contains(&e) => {
                    return Err(Error::Invalid(format!(
                        "`{tok}` is a .{e} file but this instance reads .{} files",
                        inst.space_extension()
                    )))
                }
                Some("fn" | "map") => Input::Map(load_map(inst, Path::new(tok), last_space.clone())?),
                _ => Input::Point(tok.clone()),
            }
        };
        out.push(input);
    }
    if out.iter().any(|i| matches!(i, Input::Map(_))) {
        out.retain(|i| !matches!(i, Input::Space(_)));
    }
    Ok(out)
}

/// The inputs of one verb, taken in order.
pub struct Args<T: Textual> {
    verb: String,
    usage: &'static str,
    inputs: std::collections::VecDeque<Input<T>>,
}

impl<T: Textual> Args<T> {
    pub fn new(verb: String, usage: &'static str, inputs: Vec<Input<T>>) -> Self {
        Args { verb, usage, inputs: inputs.into() }
    }

    fn usage_error(&self, problem: &str) -> Error {
        Error::Invalid(format!("{problem}; usage: emcat {} {}", self.verb, self.usage))
    }

    pub fn space(&mut self) -> Result<T::Space> {
        match self.inputs.pop_front() {
            Some(Input::Space(x)) => Ok(x),
            _ => Err(self.usage_error("expected a space")),
        }
    }

    pub fn map(&mut self) -> Result<T::Map> {
        match self.inputs.pop_front() {
            Some(Input::Map(f)) => Ok(f),
            _ => Err(self.usage_error("expected a map file (.fn or .map)")),
        }
    }

    pub fn any(&mut self) -> Result<Input<T>> {
        self.inputs.pop_front().ok_or_else(|| self.usage_error("expected a space or a map"))
    }

    /// A point name, resolved against `x`.
    pub fn point(&mut self, inst: &T, x: &T::Space) -> Result<usize> {
        match self.inputs.pop_front() {
            Some(Input::Point(name)) => {
                let names = inst.point_names(x);
                names.iter().position(|n| *n == name).ok_or_else(|| {
                    Error::Invalid(format!("unknown point `{name}`; the space has {}", names.join(", ")))
                })
            }
            _ => Err(self.usage_error("expected a point name")),
        }
    }

    pub fn done(&self) -> Result<()> {
        if self.inputs.is_empty() {
            Ok(())
        } else {
            Err(self.usage_error("too many inputs"))
        }
    }
}
