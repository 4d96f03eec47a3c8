//! Raster inputs: elevation grids and texture images.

mod ascii_grid;
mod ppm;

pub use ascii_grid::read_esri_ascii_grid;
pub use ppm::{read_ppm, write_ppm};

use thiserror::Error;

use crate::num::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RasterError {
    #[error("line {line}: missing required header key \"{key}\"")]
    MissingHeaderKey { key: &'static str, line: usize },
    #[error("line {line}: expected a number, found \"{token}\"")]
    NonNumericValue { token: String, line: usize },
    #[error("line {line}: header value \"{token}\" is out of range for \"{key}\"")]
    InvalidHeaderValue {
        key: String,
        token: String,
        line: usize,
    },
    #[error("expected {expected} cell values, found {found} (near line {line})")]
    CellCountMismatch {
        expected: usize,
        found: usize,
        line: usize,
    },
    #[error("line {line}: cell-center origin (\"{key}\") is not supported; use corner registration")]
    CellCenterOrigin { key: String, line: usize },
    #[error("not a binary P6 stream (magic \"{found}\")")]
    BadMagic { found: String },
    #[error("max channel value {maxval} unsupported (only 255)")]
    UnsupportedMaxval { maxval: u64 },
    #[error("pixel data ends early: expected {expected} bytes, found {found}")]
    TruncatedPixelData { expected: usize, found: usize },
    #[error("malformed image header near byte {offset}")]
    MalformedImageHeader { offset: usize },
}

/// Regular elevation grid. Rows are stored north to south: `values[0]`
/// is the north-west sample. `xll`/`yll` locate the lower-left corner
/// of the lower-left (south-west) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField<S> {
    pub ncols: usize,
    pub nrows: usize,
    pub xll: S,
    pub yll: S,
    pub cellsize: S,
    pub nodata: S,
    /// Row-major samples, `nrows * ncols` entries, first row northernmost.
    pub values: Vec<S>,
}

impl<S: Real> HeightField<S> {
    pub fn value(&self, row: usize, col: usize) -> S {
        self.values[row * self.ncols + col]
    }

    /// Sentinel comparison is exact: the parser stores the sentinel and the
    /// samples from the same text, so equal cells compare equal.
    pub fn is_nodata(&self, row: usize, col: usize) -> bool {
        self.value(row, col) == self.nodata
    }
}

/// 8-bit RGB image, row-major, three bytes per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextureImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl TextureImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Self {
        assert_eq!(pixels.len(), width * height * 3);
        Self {
            width,
            height,
            pixels,
        }
    }
}
