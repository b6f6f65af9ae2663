use std::path::Path;

use anyhow::{Context, Result};
use nblap::complexes::{read_complex, read_subcomplex, ComplexPair, GrayImage};
use nblap::nbmatrix::{read_nb_matrix, NonBranchingMatrix};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn matrix(path: &Path) -> Result<NonBranchingMatrix> {
    let text = read_text(path)?;
    read_nb_matrix(&text).with_context(|| format!("in {}", path.display()))
}

/// `L` from `complex`, `K` from `sub` (all of `L` when absent).
pub fn pair(complex: &Path, sub: Option<&Path>) -> Result<ComplexPair> {
    let big = read_complex(&read_text(complex)?).with_context(|| format!("in {}", complex.display()))?;
    match sub {
        None => Ok(ComplexPair::full(big)),
        Some(p) => read_subcomplex(&read_text(p)?, big).with_context(|| format!("in {}", p.display())),
    }
}

/// A `.csv` file of intensities, else a PGM (P2 or P5).
pub fn image(path: &Path) -> Result<GrayImage> {
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        return GrayImage::from_csv(&read_text(path)?).with_context(|| format!("in {}", path.display()));
    }
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let img = image::load_from_memory_with_format(&bytes, image::ImageFormat::Pnm)
        .with_context(|| format!("decoding {}", path.display()))?
        .to_luma8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    Ok(GrayImage::new(w, h, img.into_raw())?)
}
