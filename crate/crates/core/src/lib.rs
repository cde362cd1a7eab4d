//! Online coloring and L(2,1)-labeling of disk and convex-shape
//! intersection graphs, driven by exact hexagonal b-fold colorings of the
//! plane, plus offline oracles that certify the results.

pub mod error;
pub mod geometry;
pub mod io;
pub mod online;
pub mod oracles;
pub mod plane_coloring;
pub mod quotient;
pub mod shapes;
pub mod tiling;

pub use error::{Error, Result};
