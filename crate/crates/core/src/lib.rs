//! A workbench for finite (E,M)-categories.
//!
//! The [`emcore::EmInstance`] trait is the seam: every construction in
//! [`theory`] and [`arrowobj`] is written against it, and [`comprehensive`]
//! and [`instances`] provide the concrete ambient categories. [`harness`]
//! enumerates small structures and runs the property suite over them.

pub mod arrowobj;
pub mod budget;
pub mod comprehensive;
pub mod emcore;
pub mod error;
pub mod fincat;
pub mod harness;
pub mod instances;
pub mod text;
pub mod theory;

pub use budget::Budget;
pub use error::{Error, Result};
