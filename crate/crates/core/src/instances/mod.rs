//! Concrete (E,M)-categories beyond `Cat`.

mod finset;
mod graph;
mod pos;
mod poset;

pub use finset::{functions, is_strongly_constant, subset_inclusion, FinFn, FinSetInstance};
pub use graph::{free_category, free_functor, Edge, FreeCategory, GphInstance, GraphMap, ReflexiveGraph};
pub use pos::{exponential, pos_hom_map, pos_power_object, HomMap, PosInstance, PosSystem};
pub(crate) use poset::bits;
pub use poset::{monotone_maps, Monotone, Poset, MAX_ELEMENTS};
