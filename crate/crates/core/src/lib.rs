//! Stability indices and Fourier-algebra norms of subsets of finite abelian
//! groups, together with the spectral and combinatorial estimates that link
//! the two.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod group;
pub mod halfgraph;
pub mod sidon;
pub mod stability;

pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, GroupElement, GroupSubset};
