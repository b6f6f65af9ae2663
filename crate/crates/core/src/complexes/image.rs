use thiserror::Error;

use super::cell::{CellKey, Cube};
use super::complex::{Complex, ComplexError};
use crate::format::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImageError {
    #[error("max pooling needs even dimensions, got {width}x{height}")]
    OddDimensions { width: usize, height: usize },
    #[error("{width}x{height} image needs {} values, got {got}", width * height)]
    Size { width: usize, height: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Grayscale image, row-major, intensities in `[0, 255]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    values: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, values: Vec<u8>) -> Result<Self, ImageError> {
        if values.len() != width * height {
            return Err(ImageError::Size {
                width,
                height,
                got: values.len(),
            });
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// Comma- or whitespace-separated intensities, one image row per line.
    pub fn from_csv(text: &str) -> Result<Self, ImageError> {
        let mut values = Vec::new();
        let mut width = None;
        let mut height = 0;
        for (ln, line) in crate::format::content_lines(text) {
            let row: Vec<u8> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| ParseError::new(ln, format!("bad intensity '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            if *width.get_or_insert(row.len()) != row.len() {
                return Err(ParseError::new(ln, "rows of different lengths").into());
            }
            values.extend(row);
            height += 1;
        }
        Self::new(width.unwrap_or(0), height, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Intensity at column `x`, row `y`.
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.values[y * self.width + x]
    }
}

/// Cubical complex of all pixels with intensity below `threshold`: pixel
/// `(x, y)` (column, row) becomes the square `[x, x+1] × [y, y+1]` with its faces.
pub fn cubical_from_image(img: &GrayImage, threshold: u32) -> Complex {
    let cubes = (0..img.height).flat_map(|y| {
        (0..img.width)
            .filter(move |&x| (img.get(x, y) as u32) < threshold)
            .map(move |x| Cube::square(x as i64, y as i64))
    });
    Complex::cubical(cubes).expect("pixel squares form a valid complex")
}

/// 2×2 block maxima.
pub fn max_pool(img: &GrayImage) -> Result<GrayImage, ImageError> {
    if !img.width.is_multiple_of(2) || !img.height.is_multiple_of(2) {
        return Err(ImageError::OddDimensions {
            width: img.width,
            height: img.height,
        });
    }
    let (w, h) = (img.width / 2, img.height / 2);
    let mut values = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let m = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .map(|&(dx, dy)| img.get(2 * x + dx, 2 * y + dy))
                .max()
                .expect("four pixels");
            values.push(m);
        }
    }
    GrayImage::new(w, h, values)
}

/// Entry value of every q-cell of an image complex: the smallest intensity
/// among the pixels of `c` that contain it.
pub fn cell_values(img: &GrayImage, c: &Complex, q: usize) -> Result<Vec<f64>, ComplexError> {
    let mut out = vec![f64::INFINITY; c.n_cells(q)];
    let top = c.dim().unwrap_or(0);
    for key in c.cells(top) {
        let CellKey::Cube(cube) = key else {
            return Err(ComplexError::InvalidCell(key.to_string()));
        };
        let (x, y) = (cube.anchor[0] as usize, cube.anchor[1] as usize);
        let v = img.get(x, y) as f64;
        for f in cube.closure().into_iter().filter(|f| f.dim() == q) {
            if let Some(i) = c.index_of(q, &CellKey::Cube(f)) {
                out[i] = out[i].min(v);
            }
        }
    }
    Ok(out)
}
