//! ESRI ASCII grid reader.
//!
//! Header keys are matched case-insensitively and may appear in any
//! order, but all of them precede the data section. The data section is
//! free-form whitespace: line structure carries no meaning there.

use super::{HeightField, RasterError};
use crate::num::Real;

struct Token<'a> {
    text: &'a str,
    line: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &text[s..i],
                    line,
                });
            }
            if ch == '\n' {
                line += 1;
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &text[s..],
            line,
        });
    }
    out
}

fn parse_number(tok: &Token<'_>) -> Result<f64, RasterError> {
    let err = || RasterError::NonNumericValue {
        token: tok.text.to_string(),
        line: tok.line,
    };
    let v: f64 = tok.text.parse().map_err(|_| err())?;
    // f64::from_str accepts "inf" and "NaN"; grids must stay finite
    if !v.is_finite() {
        return Err(err());
    }
    Ok(v)
}

pub fn read_esri_ascii_grid<S: Real>(source: &[u8]) -> Result<HeightField<S>, RasterError> {
    let text = String::from_utf8_lossy(source);
    let tokens = tokenize(&text);

    let mut ncols: Option<usize> = None;
    let mut nrows: Option<usize> = None;
    let mut xll: Option<f64> = None;
    let mut yll: Option<f64> = None;
    let mut cellsize: Option<f64> = None;
    let mut nodata: f64 = -9999.0;

    let mut pos = 0;
    while pos + 1 < tokens.len() {
        let key = &tokens[pos];
        if !key.text.chars().next().is_some_and(|c| c.is_alphabetic()) {
            break;
        }
        let value = &tokens[pos + 1];
        let lower = key.text.to_ascii_lowercase();
        match lower.as_str() {
            "xllcenter" | "yllcenter" => {
                return Err(RasterError::CellCenterOrigin {
                    key: key.text.to_string(),
                    line: key.line,
                })
            }
            "ncols" | "nrows" => {
                let n = parse_number(value)?;
                if n < 1.0 || n.fract() != 0.0 || n > usize::MAX as f64 {
                    return Err(RasterError::InvalidHeaderValue {
                        key: lower,
                        token: value.text.to_string(),
                        line: value.line,
                    });
                }
                if lower == "ncols" {
                    ncols = Some(n as usize);
                } else {
                    nrows = Some(n as usize);
                }
            }
            "xllcorner" => xll = Some(parse_number(value)?),
            "yllcorner" => yll = Some(parse_number(value)?),
            "cellsize" => {
                let c = parse_number(value)?;
                if c <= 0.0 {
                    return Err(RasterError::InvalidHeaderValue {
                        key: lower,
                        token: value.text.to_string(),
                        line: value.line,
                    });
                }
                cellsize = Some(c);
            }
            "nodata_value" => nodata = parse_number(value)?,
            _ => {
                return Err(RasterError::InvalidHeaderValue {
                    key: key.text.to_string(),
                    token: value.text.to_string(),
                    line: key.line,
                })
            }
        }
        pos += 2;
    }

    let last_line = tokens.last().map_or(1, |t| t.line);
    let missing = |key: &'static str| RasterError::MissingHeaderKey {
        key,
        line: last_line,
    };
    let ncols = ncols.ok_or_else(|| missing("ncols"))?;
    let nrows = nrows.ok_or_else(|| missing("nrows"))?;
    let xll = xll.ok_or_else(|| missing("xllcorner"))?;
    let yll = yll.ok_or_else(|| missing("yllcorner"))?;
    let cellsize = cellsize.ok_or_else(|| missing("cellsize"))?;

    let expected = ncols
        .checked_mul(nrows)
        .ok_or_else(|| RasterError::InvalidHeaderValue {
            key: "ncols*nrows".to_string(),
            token: format!("{ncols}*{nrows}"),
            line: last_line,
        })?;
    let data = &tokens[pos..];
    if data.len() != expected {
        let line = if data.len() > expected {
            data[expected].line
        } else {
            last_line
        };
        return Err(RasterError::CellCountMismatch {
            expected,
            found: data.len(),
            line,
        });
    }

    let mut values = Vec::with_capacity(expected);
    for tok in data {
        values.push(S::of(parse_number(tok)?));
    }

    Ok(HeightField {
        ncols,
        nrows,
        xll: S::of(xll),
        yll: S::of(yll),
        cellsize: S::of(cellsize),
        nodata: S::of(nodata),
        values,
    })
}
