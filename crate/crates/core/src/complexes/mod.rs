//! Weighted simplicial and cubical complexes, subcomplex pairs, and cubical
//! complexes built from grayscale images.
//!
//! Simplices are oriented by increasing vertex order; cubes by the product
//! rule. Cells in each dimension are kept in lexicographic key order, which
//! makes boundary matrices and filtrations deterministic.

mod cell;
mod complex;
mod image;
mod io;
mod pair;

pub use cell::{CellKey, Cube};
pub use complex::{Complex, ComplexError, ComplexKind};
pub use image::{cell_values, cubical_from_image, max_pool, GrayImage, ImageError};
pub use io::{read_complex, read_subcomplex, write_complex, ComplexFileError};
pub use pair::{cube_filtration, extract_d, ComplexPair};
pub(crate) use pair::up_rows;
