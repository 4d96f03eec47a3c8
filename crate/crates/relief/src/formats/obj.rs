//! Wavefront OBJ with an optional companion MTL that binds the texture
//! image through map_Kd.
//!
//! The reader handles v, vt, and f directives (f tokens in the a, a/t,
//! a/t/n, and a//n forms, with negative indices counted back from the
//! current element count) and ignores everything else, so normals,
//! groups, and material references pass through silently. Material
//! files are not opened: a read mesh carries no texture name.

use thiserror::Error;

use super::{fold_corner_uvs, push_g6, CornerUvs};
use crate::geom::{Uv, Vec3};
use crate::mesh::TriMesh;
use crate::num::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObjError {
    #[error("line {line}: malformed {directive} directive")]
    MalformedDirective { directive: String, line: usize },
    #[error("line {line}: malformed face token \"{token}\"")]
    MalformedFaceToken { token: String, line: usize },
    #[error("line {line}: index {index} out of range")]
    IndexOutOfRange { index: i64, line: usize },
}

/// Resolves a 1-based or negative-relative index against the number of
/// elements declared so far.
fn resolve(index: i64, count: usize, line: usize) -> Result<u32, ObjError> {
    let out_of_range = ObjError::IndexOutOfRange { index, line };
    let resolved = if index > 0 {
        index - 1
    } else if index < 0 {
        count as i64 + index
    } else {
        return Err(out_of_range);
    };
    if resolved < 0 || resolved >= count as i64 {
        return Err(out_of_range);
    }
    Ok(resolved as u32)
}

pub fn read_obj<S: Real>(source: &[u8]) -> Result<TriMesh<S>, ObjError> {
    let text = String::from_utf8_lossy(source);
    let mut positions: Vec<Vec3<S>> = Vec::new();
    let mut uv_pool: Vec<Uv<S>> = Vec::new();
    let mut faces: Vec<[u32; 3]> = Vec::new();
    let mut corner_uvs: Vec<CornerUvs> = Vec::new();
    let mut any_uv_corner = false;

    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let mut parts = content.split_whitespace();
        let Some(directive) = parts.next() else {
            continue;
        };
        match directive {
            "v" => {
                let coords = parse_floats(parts, 3, directive, line)?;
                positions.push(Vec3::new(coords[0], coords[1], coords[2]));
            }
            "vt" => {
                let coords = parse_floats(parts, 1, directive, line)?;
                let v = coords.get(1).copied().unwrap_or_else(S::zero);
                uv_pool.push(Uv::new(coords[0], v));
            }
            "f" => {
                let tokens: Vec<&str> = parts.collect();
                if tokens.len() < 3 {
                    return Err(ObjError::MalformedDirective {
                        directive: directive.to_string(),
                        line,
                    });
                }
                let mut corners = Vec::with_capacity(tokens.len());
                for token in tokens {
                    let mut fields = token.split('/');
                    let pos_field = fields.next().unwrap_or("");
                    let bad = || ObjError::MalformedFaceToken {
                        token: token.to_string(),
                        line,
                    };
                    let pos_idx: i64 = pos_field.parse().map_err(|_| bad())?;
                    let uv_idx = match fields.next() {
                        None | Some("") => None,
                        Some(t) => Some(t.parse::<i64>().map_err(|_| bad())?),
                    };
                    match fields.next() {
                        None | Some("") => {}
                        Some(t) => {
                            t.parse::<i64>().map_err(|_| bad())?; // normal, ignored
                        }
                    }
                    if fields.next().is_some() {
                        return Err(bad());
                    }
                    let pos = resolve(pos_idx, positions.len(), line)?;
                    let uv = uv_idx
                        .map(|idx| resolve(idx, uv_pool.len(), line))
                        .transpose()?;
                    any_uv_corner |= uv.is_some();
                    corners.push((pos, uv));
                }
                for k in 1..corners.len() - 1 {
                    faces.push([corners[0].0, corners[k].0, corners[k + 1].0]);
                    corner_uvs.push([corners[0].1, corners[k].1, corners[k + 1].1]);
                }
            }
            _ => {}
        }
    }

    let uvs = if any_uv_corner {
        Some(fold_corner_uvs(
            &mut positions,
            &uv_pool,
            &mut faces,
            &corner_uvs,
        ))
    } else {
        None
    };
    Ok(TriMesh {
        positions,
        uvs,
        faces,
        texture_name: None,
    })
}

fn parse_floats<'a, S: Real>(
    parts: impl Iterator<Item = &'a str>,
    at_least: usize,
    directive: &str,
    line: usize,
) -> Result<Vec<S>, ObjError> {
    let bad = || ObjError::MalformedDirective {
        directive: directive.to_string(),
        line,
    };
    let mut out = Vec::new();
    for p in parts {
        let v: f64 = p.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        out.push(S::of(v));
    }
    if out.len() < at_least {
        return Err(bad());
    }
    Ok(out)
}

/// Serializes the mesh; the second value is the MTL companion, present
/// when the mesh names a texture image. `mtl_base` is the stem the OBJ
/// uses in its mtllib line, without the .mtl extension.
pub fn write_obj<S: Real>(mesh: &TriMesh<S>, mtl_base: &str) -> (Vec<u8>, Option<Vec<u8>>) {
    let mut out = String::new();
    let textured = mesh.texture_name.is_some();
    if textured {
        out.push_str("mtllib ");
        out.push_str(mtl_base);
        out.push_str(".mtl\n");
    }
    for p in &mesh.positions {
        out.push_str("v ");
        push_g6(&mut out, p.x.to_f64_lossy());
        out.push(' ');
        push_g6(&mut out, p.y.to_f64_lossy());
        out.push(' ');
        push_g6(&mut out, p.z.to_f64_lossy());
        out.push('\n');
    }
    if let Some(uvs) = &mesh.uvs {
        for uv in uvs {
            out.push_str("vt ");
            push_g6(&mut out, uv.u.to_f64_lossy());
            out.push(' ');
            push_g6(&mut out, uv.v.to_f64_lossy());
            out.push('\n');
        }
    }
    if textured {
        out.push_str("usemtl material0\n");
    }
    let with_uvs = mesh.uvs.is_some();
    for f in &mesh.faces {
        out.push('f');
        for &v in f {
            let idx = v as u64 + 1;
            if with_uvs {
                out.push_str(&format!(" {idx}/{idx}"));
            } else {
                out.push_str(&format!(" {idx}"));
            }
        }
        out.push('\n');
    }

    let mtl = mesh.texture_name.as_ref().map(|name| {
        let mut m = String::from("newmtl material0\n");
        m.push_str("map_Kd ");
        m.push_str(name);
        m.push('\n');
        m.into_bytes()
    });
    (out.into_bytes(), mtl)
}
