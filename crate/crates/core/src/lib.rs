//! Spectral graph bisection with two Laplacian eigenvectors.
//!
//! The crate covers four layers:
//!
//! - [`graph`], [`generators`] and [`io`]: unweighted simple graphs, cut counting,
//!   generators (roach, Erdős–Rényi, small fixtures) and file formats.
//! - [`spectral`]: Laplacian eigenpairs, the constrained quadratic minimization
//!   used for refinement, and rotations inside the span of two eigenvectors.
//! - [`bisection`]: classic spectral bisection, the rotation sweep over the
//!   (λ2, λ3) embedding, and refinement of a supplied bisection.
//! - [`organized`] and [`oracle`]: the four-block scoring of a bisection, spectral
//!   lower bounds, and exhaustive solvers for small graphs.
//!
//! [`experiment`] ties these together into per-graph reports and the random
//! graph experiment.

pub mod bisection;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod organized;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Bisection, Graph, QuadPartition};
pub use spectral::{SpectralBasis, SpectralConfig};
