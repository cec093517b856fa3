use clap::{Parser, ValueEnum};

/// Workbench for finite (E,M)-categories.
///
/// Inputs are typed by their extension: `.fincat`, `.poset`, `.graph` and
/// `.set` are spaces, `.fn` and `.map` are maps, `@NAME` is a builtin space
/// and anything else names a point. A map file without a `target` line maps
/// into the space given before it.
///
/// Exit codes: 0 success or the property holds, 1 the property fails,
/// 2 input error, 3 budget exceeded.
#[derive(Debug, Parser)]
#[command(name = "emcat", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,

    /// Space files, map files, builtins and point names.
    pub inputs: Vec<String>,

    #[arg(long, value_enum, default_value_t = Instance::Cat)]
    pub instance: Instance,

    /// Output format; `suite` defaults to json, everything else to text.
    #[arg(long, value_enum)]
    pub out: Option<Out>,

    /// Largest spaces in the suite corpus; fiber bound for `discrete`.
    #[arg(long)]
    pub max_obj: Option<usize>,

    /// Largest arrow or edge count in the suite corpus.
    #[arg(long)]
    pub max_arr: Option<usize>,

    /// Tick limit for each enumeration.
    #[arg(long)]
    pub budget: Option<u64>,

    /// Seed for corpus sampling.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Property ids to run, with `*` as a wildcard (`THM-*`).
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Parse and validate the inputs, then write them back normalized.
    Check,
    /// The (E,M) factorization of a map.
    Factorize,
    /// The discrete reflection of a map, its M part.
    Reflect,
    /// Whether a map is in E; fails with the offending fiber.
    Final,
    /// Discrete spaces over a space, fibers bounded by --max-obj.
    Discrete,
    /// Number of connected components of a space.
    Components,
    /// The neighborhood of a point.
    Neighborhood,
    /// The adherence category of a space.
    Adherence,
    /// The colimit of a map into a space.
    Colimit,
    /// Whether the colimit of a map is absolute.
    Absolute,
    /// The universal displacement of a map at a point of its target.
    Universal,
    /// Whether a map is adjunctible, with the induced point map.
    Adjoint,
    /// Whether a map is dense, with the first point where density fails.
    Dense,
    /// Whether a map is fully faithful.
    Ff,
    /// Compares both sides of the duality for two maps into one space.
    Dual1,
    /// Checks the Yoneda map into the power object of a space.
    Yoneda,
    /// The category of points and arrows of a space, against its adherence.
    Xstar,
    /// Runs the property suite on the instance corpus.
    Suite,
    /// Graphviz drawing of a space or a map.
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    Cat,
    Pos,
    PosComp,
    Gph,
    Finset,
}

impl Instance {
    pub fn name(self) -> &'static str {
        match self {
            Instance::Cat => "cat",
            Instance::Pos => "pos",
            Instance::PosComp => "pos-comp",
            Instance::Gph => "gph",
            Instance::Finset => "finset",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Text,
    Json,
    Dot,
}
