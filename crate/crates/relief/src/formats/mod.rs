//! Interchange formats: VRML 2.0 (IndexedFaceSet subset) and Wavefront
//! OBJ with its MTL sidecar.
//!
//! Writers emit 6 significant digits, enough to round-trip within 1e-5
//! relative and to keep emitted files byte-reproducible. Readers accept
//! arbitrary bytes and fail with typed errors, never panics.

mod obj;
mod vrml;

pub use obj::{read_obj, write_obj, ObjError};
pub use vrml::{read_vrml, write_vrml, VrmlError};

use crate::geom::{Uv, Vec3};
use crate::num::Real;

/// Formats with 6 significant digits, trimming trailing zeros, switching
/// to scientific notation outside [1e-4, 1e6) like C's %.6g.
pub(crate) fn push_g6(out: &mut String, value: f64) {
    if value == 0.0 || !value.is_finite() {
        out.push('0');
        return;
    }
    let sci = format!("{value:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..6).contains(&exp) {
        let fixed = format!("{value:.*}", (5 - exp).max(0) as usize);
        out.push_str(trim_decimals(&fixed));
    } else {
        out.push_str(trim_decimals(mantissa));
        let (sign, digits) = if exp < 0 { ('-', -exp) } else { ('+', exp) };
        out.push('e');
        out.push(sign);
        if digits < 10 {
            out.push('0');
        }
        out.push_str(&digits.to_string());
    }
}

fn trim_decimals(text: &str) -> &str {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.')
    } else {
        text
    }
}

#[cfg(test)]
pub(crate) fn g6(value: f64) -> String {
    let mut s = String::new();
    push_g6(&mut s, value);
    s
}

/// Per-corner texture indices in a face stream. `None`: the corner does
/// not constrain its vertex's texture coordinate.
pub(crate) type CornerUvs = [Option<u32>; 3];

/// Folds per-corner texture assignments into the per-vertex model.
/// A vertex whose corners all agree (by coordinate value) keeps its
/// index; disagreeing corners duplicate the vertex (wedge split).
/// Vertices no corner constrains get (0, 0).
pub(crate) fn fold_corner_uvs<S: Real>(
    positions: &mut Vec<Vec3<S>>,
    uv_pool: &[Uv<S>],
    faces: &mut [[u32; 3]],
    corner_uvs: &[CornerUvs],
) -> Vec<Uv<S>> {
    use std::collections::HashMap;
    let mut assigned: Vec<Option<Uv<S>>> = vec![None; positions.len()];
    // (original vertex, uv pool index) -> duplicated vertex; keys are
    // only looked up, never iterated, so ordering stays deterministic
    let mut splits: HashMap<(u32, u32), u32> = HashMap::new();
    for (face, corners) in faces.iter_mut().zip(corner_uvs) {
        for (slot, &corner_uv) in face.iter_mut().zip(corners) {
            let Some(uv_idx) = corner_uv else { continue };
            let uv = uv_pool[uv_idx as usize];
            let vertex = *slot;
            match assigned[vertex as usize] {
                None => assigned[vertex as usize] = Some(uv),
                Some(existing) if existing == uv => {}
                Some(_) => {
                    let dup = *splits.entry((vertex, uv_idx)).or_insert_with(|| {
                        let dup = positions.len() as u32;
                        positions.push(positions[vertex as usize]);
                        assigned.push(Some(uv));
                        dup
                    });
                    *slot = dup;
                }
            }
        }
    }
    assigned
        .into_iter()
        .map(|uv| uv.unwrap_or(Uv::new(S::zero(), S::zero())))
        .collect()
}
