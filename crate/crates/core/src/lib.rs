//! Exact computations in finite and affine Hecke algebras for open chain models.

mod element;
mod engine;
mod error;
pub mod affine;
pub mod chain;
pub mod fusion;
pub mod hecke;
pub mod json;
pub mod perm;
pub mod rmatrep;
pub mod tlblob;

pub use chain::{AffineChain, Chain, ChainAlgebra};
pub use element::Element;
pub use error::AlgebraError;
pub use affine::{AffineAlgebra, AffineElement, AffineKey, BoundaryMode, Generator, TraceConstants};
pub use hecke::{HeckeAlgebra, HeckeElement, Normalization, Sign};
pub use perm::Perm;
pub use tlblob::{BlobAlgebra, BlobDiagram, BlobElement};
pub use hechain_scalar as scalar;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
