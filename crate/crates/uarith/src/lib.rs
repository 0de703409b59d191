//! Arithmetic functions as dense tables, log-weighted norms on them,
//! the Dirichlet convolution operator algebra, and certified evaluation
//! of the associated Dirichlet series.
//!
//! All operations are pure: tables are immutable after construction and
//! every function returns freshly allocated output. With the `parallel`
//! feature (on by default) the heavy inner loops run on rayon, chunked so
//! that results are bit-identical to the sequential build.

pub mod cache;
pub mod characters;
pub mod error;
pub mod exec;
pub mod functions;
pub mod kahan;
pub mod norms;
pub mod operators;
pub mod series;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use table::{FunctionTable, GrowthBound, ValueKind};
