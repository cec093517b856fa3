//! Plain-text formats for spaces and maps, and Graphviz output.
//!
//! Tokens are separated by whitespace and a token starting with `#` begins a
//! comment. Errors carry the line and column of the offending token.

mod dot;
mod lex;
mod maps;
mod spaces;
mod textual;

use std::path::{Path, PathBuf};

pub use dot::{dot_map, dot_space, DotGraph};
pub use lex::check_name;
pub use maps::{emit_map, parse_map, SpaceRef};
pub use spaces::{emit_fincat, emit_graph, emit_poset, emit_set, parse_fincat, parse_graph, parse_poset, parse_set};
pub use textual::{full_subcategory, Textual, BUILTINS};

use crate::error::{Error, Result};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), reason: e.to_string() })
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        e @ (Error::Io { .. } | Error::InFile { .. }) => e,
        e => Error::InFile { path: path.display().to_string(), inner: Box::new(e) },
    }
}

/// Reads a space file.
pub fn load_space<T: Textual>(inst: &T, path: &Path) -> Result<T::Space> {
    let src = read(path)?;
    inst.parse_space(&src, 1).map_err(|e| in_file(path, e))
}

/// Reads a map file; paths inside it are relative to its directory.
pub fn load_map<T: Textual>(inst: &T, path: &Path, default_target: Option<T::Space>) -> Result<T::Map> {
    let src = read(path)?;
    let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut resolve = |t: &lex::Token<'_>| load_space(inst, &dir.join(t.text));
    parse_map(inst, &src, &mut resolve, default_target).map_err(|e| in_file(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comprehensive::CatInstance;
    use crate::emcore::EmInstance;

    #[test]
    fn map_files_resolve_relative_paths() {
        let dir = std::env::temp_dir().join(format!("emcat-text-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("arrow.fincat"), "objects x y\narrow u : x -> y\n").unwrap();
        std::fs::write(dir.join("m.map"), "source arrow.fincat\ntarget @ONE\n").unwrap();
        std::fs::write(dir.join("bad.map"), "source missing.fincat\n").unwrap();
        let cat = CatInstance::new();
        let err = load_map(&cat, &dir.join("m.map"), None).unwrap_err();
        assert!(matches!(&err, Error::InFile { inner, .. } if matches!(**inner, Error::Invalid(_))), "{err}");
        std::fs::write(dir.join("m.map"), "source arrow.fincat\ntarget @ONE\nobject x |-> *\nobject y |-> *\n").unwrap();
        let f = load_map(&cat, &dir.join("m.map"), None).unwrap();
        assert_eq!(cat.source(&f).n_arrows(), 3);
        assert!(matches!(load_map(&cat, &dir.join("bad.map"), None), Err(Error::Io { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
