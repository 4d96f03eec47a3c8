//! VRML 2.0 subset: one Shape holding an IndexedFaceSet, with an
//! optional ImageTexture referencing the draped image by file name.
//!
//! The reader walks any node nesting, takes the first IndexedFaceSet and
//! first ImageTexture url it meets, and skips everything else with
//! balanced brace matching. Commas count as whitespace, `#` starts a
//! comment, quoted strings may escape characters with backslash.

use thiserror::Error;

use super::{fold_corner_uvs, push_g6, CornerUvs};
use crate::geom::{Uv, Vec3};
use crate::mesh::TriMesh;
use crate::num::Real;

pub const HEADER: &str = "#VRML V2.0 utf8";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VrmlError {
    #[error("first line is \"{found}\", not \"{HEADER}\"")]
    BadHeader { found: String },
    #[error("no IndexedFaceSet node in the file")]
    NoIndexedFaceSet,
    #[error("line {line}: index {index} out of range")]
    IndexOutOfRange { index: i64, line: usize },
    #[error("line {line}: face with fewer than 3 indices")]
    UnterminatedFace { line: usize },
    #[error("line {line}: unexpected token \"{token}\"")]
    BadToken { token: String, line: usize },
    #[error("line {line}: {what} holds {count} values, not grouped by {unit}")]
    BadCount {
        what: &'static str,
        count: usize,
        unit: usize,
        line: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Kind<'a> {
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Word(&'a str),
    Quoted(String),
}

#[derive(Debug, Clone, PartialEq)]
struct Token<'a> {
    kind: Kind<'a>,
    line: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut toks = Vec::new();
    let mut line = 1;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'\n' => {
                line += 1;
                i += 1;
            }
            _ if c.is_ascii_whitespace() || c == b',' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'{' | b'}' | b'[' | b']' => {
                let kind = match c {
                    b'{' => Kind::LBrace,
                    b'}' => Kind::RBrace,
                    b'[' => Kind::LBracket,
                    _ => Kind::RBracket,
                };
                toks.push(Token { kind, line });
                i += 1;
            }
            b'"' => {
                i += 1;
                let mut s = String::new();
                let start_line = line;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\\' && i + 1 < bytes.len() {
                        i += 1;
                    }
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    s.push(bytes[i] as char);
                    i += 1;
                }
                i += 1; // closing quote (or EOF)
                toks.push(Token {
                    kind: Kind::Quoted(s),
                    line: start_line,
                });
            }
            _ => {
                let start = i;
                while i < bytes.len() {
                    let b = bytes[i];
                    if b.is_ascii_whitespace()
                        || matches!(b, b',' | b'{' | b'}' | b'[' | b']' | b'"' | b'#')
                    {
                        break;
                    }
                    i += 1;
                }
                toks.push(Token {
                    kind: Kind::Word(&text[start..i]),
                    line,
                });
            }
        }
    }
    toks
}

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
}

#[derive(Default)]
struct IfsFields {
    points: Vec<(f64, usize)>,
    uv_points: Vec<(f64, usize)>,
    coord_index: Vec<(i64, usize)>,
    tex_coord_index: Option<Vec<(i64, usize)>>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Token<'a>> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Consumes a balanced {...} or [...] group starting at the current
    /// opener; tolerates EOF.
    fn skip_balanced(&mut self) {
        let mut depth = 0usize;
        while let Some(t) = self.bump() {
            match t.kind {
                Kind::LBrace | Kind::LBracket => depth += 1,
                Kind::RBrace | Kind::RBracket => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        return;
                    }
                }
                _ => {}
            }
            if depth == 0 {
                return;
            }
        }
    }

    /// Skips one field value: a nested group, or a single scalar token.
    fn skip_field_value(&mut self) {
        match self.peek().map(|t| &t.kind) {
            Some(Kind::LBrace | Kind::LBracket) => self.skip_balanced(),
            Some(Kind::RBrace | Kind::RBracket) | None => {}
            _ => {
                self.pos += 1;
            }
        }
    }

    /// First quoted string inside the group at the current position.
    fn first_string_in_group(&mut self) -> Option<String> {
        if !matches!(self.peek().map(|t| &t.kind), Some(Kind::LBrace)) {
            return None;
        }
        let mut depth = 0usize;
        let mut found = None;
        while let Some(t) = self.bump() {
            match &t.kind {
                Kind::LBrace | Kind::LBracket => depth += 1,
                Kind::RBrace | Kind::RBracket => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Kind::Quoted(s) if found.is_none() => found = Some(s.clone()),
                _ => {}
            }
        }
        found
    }

    fn number_list(&mut self, what: &'static str) -> Result<Vec<(f64, usize)>, VrmlError> {
        match self.peek() {
            Some(t) if t.kind == Kind::LBracket => self.pos += 1,
            Some(t) => {
                return Err(VrmlError::BadToken {
                    token: describe(&t.kind),
                    line: t.line,
                })
            }
            None => {
                return Err(VrmlError::BadToken {
                    token: format!("end of file in {what}"),
                    line: 0,
                })
            }
        }
        let mut out = Vec::new();
        loop {
            let Some(t) = self.bump() else {
                return Ok(out); // tolerate EOF mid-list
            };
            match &t.kind {
                Kind::RBracket => return Ok(out),
                Kind::Word(w) => {
                    let v: f64 = w.parse().map_err(|_| VrmlError::BadToken {
                        token: w.to_string(),
                        line: t.line,
                    })?;
                    if !v.is_finite() {
                        return Err(VrmlError::BadToken {
                            token: w.to_string(),
                            line: t.line,
                        });
                    }
                    out.push((v, t.line));
                }
                other => {
                    return Err(VrmlError::BadToken {
                        token: describe(other),
                        line: t.line,
                    })
                }
            }
        }
    }

    fn int_list(&mut self, what: &'static str) -> Result<Vec<(i64, usize)>, VrmlError> {
        let floats = self.number_list(what)?;
        floats
            .into_iter()
            .map(|(v, line)| {
                if v.fract() == 0.0 && v.abs() < 2e18 {
                    Ok((v as i64, line))
                } else {
                    Err(VrmlError::BadToken {
                        token: v.to_string(),
                        line,
                    })
                }
            })
            .collect()
    }

    /// Parses `coord Coordinate { point [...] }`-shaped fields. Returns
    /// the flat number list; DEF names pass through, NULL and USE yield
    /// an empty list.
    fn node_points(&mut self, type_name: &str, what: &'static str) -> Result<Vec<(f64, usize)>, VrmlError> {
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(Kind::Word("NULL")) => {
                    self.pos += 1;
                    return Ok(Vec::new());
                }
                Some(Kind::Word("USE")) => {
                    self.pos += 2;
                    return Ok(Vec::new());
                }
                Some(Kind::Word("DEF")) => self.pos += 2, // DEF <name>
                Some(Kind::Word(w)) if *w == type_name => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    // not the node we know; skip its value wholesale
                    self.skip_field_value();
                    return Ok(Vec::new());
                }
            }
        }
        if !matches!(self.peek().map(|t| &t.kind), Some(Kind::LBrace)) {
            return Ok(Vec::new());
        }
        self.pos += 1;
        let mut points = Vec::new();
        loop {
            let Some(t) = self.peek() else { break };
            match &t.kind {
                Kind::RBrace => {
                    self.pos += 1;
                    break;
                }
                Kind::Word("point") => {
                    self.pos += 1;
                    points = self.number_list(what)?;
                }
                Kind::Word(_) => {
                    self.pos += 1;
                    self.skip_field_value();
                }
                _ => {
                    self.pos += 1;
                }
            }
        }
        Ok(points)
    }

    fn indexed_face_set(&mut self) -> Result<IfsFields, VrmlError> {
        let mut fields = IfsFields::default();
        if !matches!(self.peek().map(|t| &t.kind), Some(Kind::LBrace)) {
            return Ok(fields);
        }
        self.pos += 1;
        loop {
            let Some(t) = self.peek() else { break };
            match &t.kind {
                Kind::RBrace => {
                    self.pos += 1;
                    break;
                }
                Kind::Word("coord") => {
                    self.pos += 1;
                    fields.points = self.node_points("Coordinate", "point")?;
                }
                Kind::Word("texCoord") => {
                    self.pos += 1;
                    fields.uv_points = self.node_points("TextureCoordinate", "point")?;
                }
                Kind::Word("coordIndex") => {
                    self.pos += 1;
                    fields.coord_index = self.int_list("coordIndex")?;
                }
                Kind::Word("texCoordIndex") => {
                    self.pos += 1;
                    fields.tex_coord_index = Some(self.int_list("texCoordIndex")?);
                }
                Kind::Word(_) => {
                    self.pos += 1;
                    self.skip_field_value();
                }
                _ => {
                    self.pos += 1;
                }
            }
        }
        Ok(fields)
    }
}

fn describe(kind: &Kind<'_>) -> String {
    match kind {
        Kind::LBrace => "{".into(),
        Kind::RBrace => "}".into(),
        Kind::LBracket => "[".into(),
        Kind::RBracket => "]".into(),
        Kind::Word(w) => (*w).into(),
        Kind::Quoted(s) => format!("\"{s}\""),
    }
}

/// Splits an index stream into faces at -1 markers, fanning polygons
/// into triangles from their first vertex. The final face may omit its
/// -1 when the list ends.
fn faces_from_index_list(
    indices: &[(i64, usize)],
    what: &'static str,
) -> Result<Vec<Vec<(u32, usize)>>, VrmlError> {
    let _ = what;
    let mut groups = Vec::new();
    let mut current: Vec<(u32, usize)> = Vec::new();
    for &(v, line) in indices {
        if v == -1 {
            if !current.is_empty() {
                if current.len() < 3 {
                    return Err(VrmlError::UnterminatedFace { line });
                }
                groups.push(std::mem::take(&mut current));
            }
        } else if v < 0 || v > u32::MAX as i64 {
            return Err(VrmlError::IndexOutOfRange { index: v, line });
        } else {
            current.push((v as u32, line));
        }
    }
    if !current.is_empty() {
        if current.len() < 3 {
            let line = current.last().map_or(0, |&(_, l)| l);
            return Err(VrmlError::UnterminatedFace { line });
        }
        groups.push(current);
    }
    Ok(groups)
}

fn gather_pairs<S: Real>(
    raw: Vec<(f64, usize)>,
    what: &'static str,
    unit: usize,
) -> Result<Vec<Vec<S>>, VrmlError> {
    if raw.len() % unit != 0 {
        return Err(VrmlError::BadCount {
            what,
            count: raw.len(),
            unit,
            line: raw.last().map_or(0, |&(_, l)| l),
        });
    }
    Ok(raw
        .chunks_exact(unit)
        .map(|c| c.iter().map(|&(v, _)| S::of(v)).collect())
        .collect())
}

pub fn read_vrml<S: Real>(source: &[u8]) -> Result<TriMesh<S>, VrmlError> {
    let text = String::from_utf8_lossy(source);
    let first_line = text.lines().next().unwrap_or("").trim_end();
    if first_line != HEADER {
        return Err(VrmlError::BadHeader {
            found: first_line.chars().take(80).collect(),
        });
    }

    let mut parser = Parser {
        toks: tokenize(&text),
        pos: 0,
    };
    let mut texture_name: Option<String> = None;
    let mut ifs: Option<IfsFields> = None;
    while let Some(t) = parser.peek() {
        match &t.kind {
            Kind::Word("ImageTexture") if texture_name.is_none() => {
                parser.pos += 1;
                texture_name = parser.first_string_in_group();
            }
            Kind::Word("IndexedFaceSet") if ifs.is_none() => {
                parser.pos += 1;
                ifs = Some(parser.indexed_face_set()?);
            }
            _ => parser.pos += 1,
        }
    }
    let ifs = ifs.ok_or(VrmlError::NoIndexedFaceSet)?;

    let mut positions: Vec<Vec3<S>> = gather_pairs(ifs.points, "point", 3)?
        .into_iter()
        .map(|c| Vec3::new(c[0], c[1], c[2]))
        .collect();
    let uv_pool: Vec<Uv<S>> = gather_pairs(ifs.uv_points, "texCoord point", 2)?
        .into_iter()
        .map(|c| Uv::new(c[0], c[1]))
        .collect();

    let groups = faces_from_index_list(&ifs.coord_index, "coordIndex")?;
    for group in &groups {
        for &(v, line) in group {
            if v as usize >= positions.len() {
                return Err(VrmlError::IndexOutOfRange {
                    index: v as i64,
                    line,
                });
            }
        }
    }

    let mut faces: Vec<[u32; 3]> = Vec::new();
    let mut corner_uvs: Vec<CornerUvs> = Vec::new();
    let uv_groups = match &ifs.tex_coord_index {
        Some(list) if !uv_pool.is_empty() => Some(faces_from_index_list(list, "texCoordIndex")?),
        _ => None,
    };
    if let Some(uv_groups) = &uv_groups {
        if uv_groups.len() != groups.len()
            || uv_groups
                .iter()
                .zip(&groups)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(VrmlError::BadCount {
                what: "texCoordIndex faces",
                count: uv_groups.len(),
                unit: groups.len().max(1),
                line: ifs
                    .tex_coord_index
                    .as_ref()
                    .and_then(|l| l.last().map(|&(_, line)| line))
                    .unwrap_or(0),
            });
        }
        for group in uv_groups {
            for &(v, line) in group {
                if v as usize >= uv_pool.len() {
                    return Err(VrmlError::IndexOutOfRange {
                        index: v as i64,
                        line,
                    });
                }
            }
        }
    }
    for (g, group) in groups.iter().enumerate() {
        for i in 1..group.len() - 1 {
            faces.push([group[0].0, group[i].0, group[i + 1].0]);
            let uv_of = |k: usize| -> Option<u32> {
                match (&uv_groups, uv_pool.is_empty()) {
                    (Some(ug), _) => Some(ug[g][k].0),
                    // texCoordIndex defaults to coordIndex
                    (None, false) => Some(group[k].0),
                    (None, true) => None,
                }
            };
            corner_uvs.push([uv_of(0), uv_of(i), uv_of(i + 1)]);
        }
    }

    let uvs = if uv_pool.is_empty() {
        None
    } else {
        // when defaulted from coordIndex, indices must also fit the pool
        for corner in corner_uvs.iter().flatten().flatten() {
            if *corner as usize >= uv_pool.len() {
                return Err(VrmlError::IndexOutOfRange {
                    index: *corner as i64,
                    line: 0,
                });
            }
        }
        Some(fold_corner_uvs(
            &mut positions,
            &uv_pool,
            &mut faces,
            &corner_uvs,
        ))
    };

    Ok(TriMesh {
        positions,
        uvs,
        faces,
        texture_name,
    })
}

pub fn write_vrml<S: Real>(mesh: &TriMesh<S>) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push_str("\nShape {\n");
    if let Some(name) = &mesh.texture_name {
        out.push_str("  appearance Appearance {\n    texture ImageTexture {\n      url [ \"");
        out.push_str(name);
        out.push_str("\" ]\n    }\n  }\n");
    }
    out.push_str("  geometry IndexedFaceSet {\n    coord Coordinate {\n      point [\n");
    for p in &mesh.positions {
        out.push_str("        ");
        push_g6(&mut out, p.x.to_f64_lossy());
        out.push(' ');
        push_g6(&mut out, p.y.to_f64_lossy());
        out.push(' ');
        push_g6(&mut out, p.z.to_f64_lossy());
        out.push_str(",\n");
    }
    out.push_str("      ]\n    }\n");
    push_index_field(&mut out, "coordIndex", &mesh.faces);
    if let Some(uvs) = &mesh.uvs {
        out.push_str("    texCoord TextureCoordinate {\n      point [\n");
        for uv in uvs {
            out.push_str("        ");
            push_g6(&mut out, uv.u.to_f64_lossy());
            out.push(' ');
            push_g6(&mut out, uv.v.to_f64_lossy());
            out.push_str(",\n");
        }
        out.push_str("      ]\n    }\n");
        push_index_field(&mut out, "texCoordIndex", &mesh.faces);
    }
    out.push_str("  }\n}\n");
    out.into_bytes()
}

fn push_index_field(out: &mut String, name: &str, faces: &[[u32; 3]]) {
    out.push_str("    ");
    out.push_str(name);
    if faces.is_empty() {
        out.push_str(" [ ]\n");
        return;
    }
    out.push_str(" [ ");
    for (i, f) in faces.iter().enumerate() {
        if i > 0 {
            out.push_str(",\n        ");
        }
        out.push_str(&format!("{} {} {} -1", f[0], f[1], f[2]));
    }
    out.push_str(" ]\n");
}
