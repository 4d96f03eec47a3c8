//! Acceptance suite. Each test prints exactly one `criterion N (...)` line
//! to the real standard output (bypassing capture) so the verdicts are
//! visible in any test run, then fails the test on a FAIL verdict.
//!
//! Criteria run one at a time behind a shared gate so the runtime budgets
//! measure the work itself, not scheduler contention.

use std::any::Any;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use relief::formats::{read_obj, read_vrml, write_obj, write_vrml};
use relief::mesh::{validate, Adjacency};
use relief::simplify::{plane_quadric, simplify, Candidate, Decimator};
use relief::terrain::{self, DiagonalRule};
use relief::{HeightField, Mesh, Point, SimplifyParams};

static GATE: Mutex<()> = Mutex::new(());

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.write_all(b"\n");
    let _ = out.flush();
}

fn panic_text(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panicked".to_string()
    }
}

fn criterion<F>(number: u32, name: &str, budget: Option<Duration>, body: F)
where
    F: FnOnce() -> Result<String, String>,
{
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = match outcome {
        Ok(Ok(detail)) => match budget {
            Some(limit) if elapsed > limit => Err(format!(
                "finished ({detail}) but took {:.1}s against a {:.0}s budget",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            )),
            _ => Ok(detail),
        },
        Ok(Err(why)) => Err(why),
        Err(payload) => Err(panic_text(payload.as_ref())),
    };
    match verdict {
        Ok(detail) => emit(&format!(
            "criterion {number} ({name}): pass ({detail}, {:.1}s)",
            elapsed.as_secs_f64()
        )),
        Err(why) => {
            emit(&format!("criterion {number} ({name}): FAIL - {why}"));
            panic!("criterion {number} ({name}): {why}");
        }
    }
}

fn ensure(ok: bool, why: impl Fn() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

// Reference reduction used throughout: 632468 faces to 30116 and 322202
// vertices to 18042, i.e. a 4.762% face target with 5.60% vertex survival.
const FACE_RATIO: f64 = 30116.0 / 632468.0;
const VERTEX_SURVIVAL: f64 = 18042.0 / 322202.0;

const SIDE: usize = 257;
const GRID_FACES: usize = 2 * (SIDE - 1) * (SIDE - 1);
const GRID_VERTICES: usize = SIDE * SIDE;

/// Midpoint-displacement heightfield on a (2^k + 1)-sided grid.
fn fractal_heights(side: usize, seed: u64, amplitude: f64) -> Vec<f64> {
    assert!((side - 1).is_power_of_two());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut z = vec![0.0f64; side * side];
    let at = |r: usize, c: usize| r * side + c;
    for (r, c) in [(0, 0), (0, side - 1), (side - 1, 0), (side - 1, side - 1)] {
        z[at(r, c)] = rng.gen_range(-amplitude..amplitude);
    }
    let mut step = side - 1;
    let mut amp = amplitude;
    while step > 1 {
        let half = step / 2;
        for r in (half..side).step_by(step) {
            for c in (half..side).step_by(step) {
                let avg = (z[at(r - half, c - half)]
                    + z[at(r - half, c + half)]
                    + z[at(r + half, c - half)]
                    + z[at(r + half, c + half)])
                    / 4.0;
                z[at(r, c)] = avg + rng.gen_range(-amp..amp);
            }
        }
        for r in (0..side).step_by(half) {
            let start = if (r / half) % 2 == 0 { half } else { 0 };
            for c in (start..side).step_by(step) {
                let mut sum = 0.0;
                let mut count = 0.0;
                if r >= half {
                    sum += z[at(r - half, c)];
                    count += 1.0;
                }
                if r + half < side {
                    sum += z[at(r + half, c)];
                    count += 1.0;
                }
                if c >= half {
                    sum += z[at(r, c - half)];
                    count += 1.0;
                }
                if c + half < side {
                    sum += z[at(r, c + half)];
                    count += 1.0;
                }
                z[at(r, c)] = sum / count + rng.gen_range(-amp..amp);
            }
        }
        step = half;
        amp *= 0.55;
    }
    z
}

fn fractal_field() -> HeightField {
    HeightField {
        ncols: SIDE,
        nrows: SIDE,
        xll: 0.0,
        yll: 0.0,
        cellsize: 10.0,
        nodata: -9999.0,
        values: fractal_heights(SIDE, 0xD5, 60.0),
    }
}

/// `{}` formatting round-trips f64 exactly, so a parsed copy of this file
/// matches the in-memory field bit for bit.
fn dem_text(hf: &HeightField) -> String {
    let mut s = String::with_capacity(hf.values.len() * 20);
    s.push_str(&format!(
        "ncols {}\nnrows {}\nxllcorner {}\nyllcorner {}\ncellsize {}\nNODATA_value {}\n",
        hf.ncols, hf.nrows, hf.xll, hf.yll, hf.cellsize, hf.nodata
    ));
    for row in hf.values.chunks(hf.ncols) {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&format!("{v}"));
        }
        s.push('\n');
    }
    s
}

fn ppm_bytes(w: usize, h: usize) -> Vec<u8> {
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    for i in 0..w * h {
        out.push((i % 256) as u8);
        out.push((i * 7 % 256) as u8);
        out.push((i * 13 % 256) as u8);
    }
    out
}

fn ratio_flag() -> String {
    format!("{FACE_RATIO}")
}

/// Runs the binary's pipeline command on the shared fractal fixture and
/// returns the final OBJ bytes and the parsed report.
fn run_reference_pipeline(dir: &Path) -> Result<(Vec<u8>, serde_json::Value), String> {
    fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let dem = dir.join("dem.asc");
    let tex = dir.join("tex.ppm");
    let out = dir.join("final.obj");
    let report = dir.join("report.json");
    fs::write(&dem, dem_text(&fractal_field())).map_err(|e| e.to_string())?;
    fs::write(&tex, ppm_bytes(16, 16)).map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_relief"))
        .args([
            "pipeline",
            "--dem",
            &dem.to_string_lossy(),
            "--texture",
            &tex.to_string_lossy(),
            "--target-ratio",
            &ratio_flag(),
            "--out",
            &out.to_string_lossy(),
            "--report",
            &report.to_string_lossy(),
        ])
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!(
            "pipeline exited with {:?}: {}",
            status.status.code(),
            String::from_utf8_lossy(&status.stderr)
        ));
    }
    let obj = fs::read(&out).map_err(|e| e.to_string())?;
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    Ok((obj, report))
}

#[test]
fn c1_target_ratio_on_fractal_terrain() {
    criterion(
        1,
        "target ratio on fractal terrain",
        Some(Duration::from_secs(30)),
        || {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let (_, report) = run_reference_pipeline(dir.path())?;
            ensure(report["target_reached"] == true, || {
                format!("target_reached was {}", report["target_reached"])
            })?;
            ensure(
                report["before"]["faces"] == GRID_FACES as u64
                    && report["before"]["vertices"] == GRID_VERTICES as u64,
                || format!("unexpected input counts: {}", report["before"]),
            )?;
            let faces = report["after"]["faces"].as_u64().ok_or("faces missing")?;
            let vertices = report["after"]["vertices"]
                .as_u64()
                .ok_or("vertices missing")?;
            let face_low = (FACE_RATIO * GRID_FACES as f64).floor() as u64;
            let face_high = face_low + 3;
            ensure(faces >= face_low && faces <= face_high, || {
                format!("{faces} faces outside [{face_low}, {face_high}]")
            })?;
            let center = VERTEX_SURVIVAL * GRID_VERTICES as f64;
            let (v_low, v_high) = (0.75 * center, 1.25 * center);
            ensure(
                (vertices as f64) >= v_low && (vertices as f64) <= v_high,
                || format!("{vertices} vertices outside [{v_low:.0}, {v_high:.0}]"),
            )?;
            Ok(format!("{faces} faces, {vertices} vertices"))
        },
    );
}

#[test]
fn c2_format_size_drop() {
    criterion(
        2,
        "format size drop",
        Some(Duration::from_secs(10)),
        || {
            let mut mesh = terrain::generate(&fractal_field(), 1.0, DiagonalRule::FixedNwSe)
                .map_err(|e| e.to_string())?;
            mesh.texture_name = Some("tex.ppm".to_string());
            let vrml_before = write_vrml(&mesh).len();
            let obj_before = write_obj(&mesh, "terrain").0.len();
            ensure(obj_before as f64 <= 0.8 * vrml_before as f64, || {
                format!("obj {obj_before} bytes vs vrml {vrml_before} bytes")
            })?;
            let params = SimplifyParams::with_target_ratio(FACE_RATIO);
            let (small, summary) = simplify(&mesh, &params).map_err(|e| e.to_string())?;
            ensure(summary.target_reached, || "target not reached".to_string())?;
            let obj_after = write_obj(&small, "terrain").0.len();
            let reduction = 1.0 - obj_after as f64 / vrml_before as f64;
            ensure(reduction >= 0.55, || {
                format!("size reduction {:.1}% below 55%", reduction * 100.0)
            })?;
            Ok(format!(
                "obj/vrml {:.2}, end to end size reduction {:.1}%",
                obj_before as f64 / vrml_before as f64,
                reduction * 100.0
            ))
        },
    );
}

#[test]
fn c3_flat_terrain_exactness() {
    criterion(
        3,
        "flat terrain exactness",
        Some(Duration::from_secs(5)),
        || {
            let hf = HeightField {
                ncols: 33,
                nrows: 33,
                xll: 0.0,
                yll: 0.0,
                cellsize: 1.0,
                nodata: -9999.0,
                values: vec![0.0; 33 * 33],
            };
            let mesh = terrain::generate(&hf, 1.0, DiagonalRule::FixedNwSe)
                .map_err(|e| e.to_string())?;
            let params = SimplifyParams::with_target_ratio(0.1);
            let (out, summary) = simplify(&mesh, &params).map_err(|e| e.to_string())?;
            ensure(summary.target_reached, || "target not reached".to_string())?;
            let max_z = out
                .positions
                .iter()
                .map(|p| p.z.abs())
                .fold(0.0f64, f64::max);
            ensure(max_z <= 1e-12, || format!("max |z| = {max_z:e}"))?;
            let extent: f64 = 32.0;
            let tol = 1e-9 * (2.0 * extent * extent).sqrt();
            let adj = Adjacency::new(&out);
            let mut rim = std::collections::BTreeSet::new();
            for (a, b) in adj.boundary_edges() {
                rim.insert(a);
                rim.insert(b);
            }
            let off_perimeter = rim
                .iter()
                .map(|&v| {
                    let p = out.positions[v as usize];
                    let dx = p.x.min(extent - p.x);
                    let dy = p.y.min(extent - p.y);
                    dx.min(dy)
                })
                .fold(0.0f64, f64::max);
            ensure(off_perimeter <= tol, || {
                format!("boundary vertex strays {off_perimeter:e} from the perimeter")
            })?;
            Ok(format!(
                "{} faces, max |z| {max_z:e}, rim within {off_perimeter:e}",
                out.faces.len()
            ))
        },
    );
}

#[test]
fn c4_plane_distance_quadrics() {
    criterion(
        4,
        "plane distance quadrics",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = StdRng::seed_from_u64(0x9E37);
            let point = |rng: &mut StdRng, half: f64| {
                Point::new(
                    rng.gen_range(-half..half),
                    rng.gen_range(-half..half),
                    rng.gen_range(-half..half),
                )
            };
            let mut checked = 0usize;
            for _ in 0..1000 {
                // Redraw until the triangle has enough area and the probe
                // enough clearance for a relative comparison to mean
                // anything.
                let (a, b, c, area, normal) = loop {
                    let (a, b, c) = (point(&mut rng, 5.0), point(&mut rng, 5.0), point(&mut rng, 5.0));
                    let cross = (b - a).cross(c - a);
                    let area = 0.5 * cross.length();
                    if area >= 0.1 {
                        break (a, b, c, area, cross.normalized().unwrap());
                    }
                };
                let mesh = Mesh::new(vec![a, b, c], vec![[0, 1, 2]]);
                let q = plane_quadric(&mesh, 0).map_err(|e| e.to_string())?;
                for _ in 0..10 {
                    let (p, dist) = loop {
                        let p = point(&mut rng, 10.0);
                        let dist = normal.dot(p - a);
                        if dist.abs() >= 0.05 {
                            break (p, dist);
                        }
                    };
                    let expected = area * dist * dist;
                    let got = q.evaluate(p);
                    ensure((got - expected).abs() <= 1e-9 * expected, || {
                        format!(
                            "quadric {got:e} vs area weighted squared distance {expected:e}"
                        )
                    })?;
                    checked += 1;
                }
            }
            Ok(format!("{checked} probes on 1000 triangles"))
        },
    );
}

fn unit_octahedron() -> Mesh {
    let positions = vec![
        Point::new(1.0, 0.0, 0.0),
        Point::new(-1.0, 0.0, 0.0),
        Point::new(0.0, 1.0, 0.0),
        Point::new(0.0, -1.0, 0.0),
        Point::new(0.0, 0.0, 1.0),
        Point::new(0.0, 0.0, -1.0),
    ];
    let mut faces = Vec::new();
    for (a, b) in [(0u32, 2u32), (2, 1), (1, 3), (3, 0)] {
        faces.push([4, a, b]);
        faces.push([5, b, a]);
    }
    Mesh::new(positions, faces)
}

/// One 4-to-1 subdivision with midpoints pushed onto the unit sphere.
fn subdivide_on_sphere(mesh: &Mesh) -> Mesh {
    let mut positions = mesh.positions.clone();
    let mut cache: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut faces = Vec::with_capacity(mesh.faces.len() * 4);
    for f in &mesh.faces {
        let mut mid = |a: u32, b: u32| -> u32 {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let p = (positions[a as usize] + positions[b as usize]) * 0.5;
                positions.push(p.normalized().unwrap());
                (positions.len() - 1) as u32
            })
        };
        let (ab, bc, ca) = (mid(f[0], f[1]), mid(f[1], f[2]), mid(f[2], f[0]));
        faces.push([f[0], ab, ca]);
        faces.push([ab, f[1], bc]);
        faces.push([ca, bc, f[2]]);
        faces.push([ab, bc, ca]);
    }
    Mesh::new(positions, faces)
}

#[test]
fn c5_closed_surface_topology() {
    criterion(
        5,
        "closed surface topology",
        Some(Duration::from_secs(5)),
        || {
            let sphere = subdivide_on_sphere(&subdivide_on_sphere(&unit_octahedron()));
            ensure(sphere.faces.len() == 128, || {
                format!("fixture has {} faces", sphere.faces.len())
            })?;
            let params = SimplifyParams::with_target_faces(32);
            let (out, summary) = simplify(&sphere, &params).map_err(|e| e.to_string())?;
            ensure(summary.target_reached && out.faces.len() == 32, || {
                format!("stopped at {} faces", out.faces.len())
            })?;
            let report = validate(&out);
            ensure(report.is_valid(), || format!("validation: {report:?}"))?;
            let adj = Adjacency::new(&out);
            let boundary = adj.boundary_edges().count();
            ensure(boundary == 0, || format!("{boundary} boundary edges"))?;
            let euler = adj.euler_characteristic();
            ensure(euler == 2, || format!("euler characteristic {euler}"))?;
            Ok("128 faces to 32, euler 2, closed".to_string())
        },
    );
}

/// Cheapest-first exhaustive search over every legal collapse sequence,
/// pruned against the best total found so far. Costs are non-negative, so
/// the pruning never discards an improving sequence.
fn exhaustive_best(dec: &Decimator<f64>, target: usize, partial: f64, best: &mut Option<f64>) {
    if dec.face_count() <= target {
        if best.map_or(true, |b| partial < b) {
            *best = Some(partial);
        }
        return;
    }
    if let Some(b) = *best {
        if partial > b + 1e-12 {
            return;
        }
    }
    let mut cands: Vec<Candidate<f64>> = dec
        .live_edges()
        .into_iter()
        .filter_map(|(a, b)| dec.evaluate_edge(a, b))
        .collect();
    cands.sort_by(|x, y| x.cost.partial_cmp(&y.cost).unwrap());
    for cand in cands {
        if let Some(b) = *best {
            if partial + cand.cost > b + 1e-12 {
                continue;
            }
        }
        let mut next = dec.clone();
        next.apply(&cand);
        exhaustive_best(&next, target, partial + cand.cost, best);
    }
}

#[test]
fn c6_small_mesh_optimality() {
    criterion(
        6,
        "small mesh optimality",
        Some(Duration::from_secs(60)),
        || {
            let shapes = [
                (3usize, 3usize),
                (2, 4),
                (3, 4),
                (3, 3),
                (2, 4),
                (3, 3),
                (2, 4),
                (3, 3),
                (3, 3),
                (2, 4),
            ];
            let mut worst_ratio = 1.0f64;
            for (i, &(nrows, ncols)) in shapes.iter().enumerate() {
                let mut rng = StdRng::seed_from_u64(100 + i as u64);
                let hf = HeightField {
                    ncols,
                    nrows,
                    xll: 0.0,
                    yll: 0.0,
                    cellsize: 1.0,
                    nodata: -9999.0,
                    values: (0..nrows * ncols)
                        .map(|_| rng.gen_range(-2.0..2.0))
                        .collect(),
                };
                let mesh = terrain::generate(&hf, 1.0, DiagonalRule::FixedNwSe)
                    .map_err(|e| e.to_string())?;
                let faces = mesh.faces.len();
                let target = faces.div_ceil(2);
                let params = SimplifyParams::with_target_faces(target);
                let (_, summary) = simplify(&mesh, &params).map_err(|e| e.to_string())?;
                let dec = Decimator::new(&mesh, params).map_err(|e| e.to_string())?;
                let mut best = None;
                exhaustive_best(&dec, target, 0.0, &mut best);
                ensure(summary.target_reached == best.is_some(), || {
                    format!(
                        "instance {i}: greedy reached = {}, exhaustive reached = {}",
                        summary.target_reached,
                        best.is_some()
                    )
                })?;
                if let Some(opt) = best {
                    ensure(summary.total_cost <= 10.0 * opt + 1e-9, || {
                        format!(
                            "instance {i}: greedy cost {:e} vs optimum {opt:e}",
                            summary.total_cost
                        )
                    })?;
                    if opt > 0.0 {
                        worst_ratio = worst_ratio.max(summary.total_cost / opt);
                    }
                }
            }
            Ok(format!(
                "10 instances, worst greedy/optimal cost ratio {worst_ratio:.2}"
            ))
        },
    );
}

fn random_small_mesh(rng: &mut StdRng) -> Mesh {
    let nrows = rng.gen_range(2..=4);
    let ncols = rng.gen_range(2..=4);
    let cellsize = [0.5, 1.0, 2.5][rng.gen_range(0..3)];
    let hf = HeightField {
        ncols,
        nrows,
        xll: 0.0,
        yll: 0.0,
        cellsize,
        nodata: -9999.0,
        values: (0..nrows * ncols)
            .map(|_| rng.gen_range(-40_000i32..=40_000) as f64 * 0.25)
            .collect(),
    };
    let mut mesh = terrain::generate(&hf, 1.0, DiagonalRule::FixedNwSe).unwrap();
    match rng.gen_range(0..3u8) {
        0 => mesh.texture_name = Some("drape.ppm".to_string()),
        1 => {}
        _ => mesh.uvs = None,
    }
    mesh
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-5 * b.abs() + 1e-9
}

fn meshes_close(got: &Mesh, want: &Mesh, check_texture: bool) -> Result<(), String> {
    ensure(got.positions.len() == want.positions.len(), || {
        format!(
            "{} vertices back, wrote {}",
            got.positions.len(),
            want.positions.len()
        )
    })?;
    ensure(got.faces == want.faces, || "face lists differ".to_string())?;
    for (g, w) in got.positions.iter().zip(&want.positions) {
        ensure(
            close(g.x, w.x) && close(g.y, w.y) && close(g.z, w.z),
            || format!("position {g:?} vs {w:?}"),
        )?;
    }
    ensure(got.uvs.is_some() == want.uvs.is_some(), || {
        "uv presence differs".to_string()
    })?;
    if let (Some(g), Some(w)) = (&got.uvs, &want.uvs) {
        ensure(g.len() == w.len(), || "uv counts differ".to_string())?;
        for (gu, wu) in g.iter().zip(w) {
            ensure(close(gu.u, wu.u) && close(gu.v, wu.v), || {
                format!("uv {gu:?} vs {wu:?}")
            })?;
        }
    }
    if check_texture {
        ensure(got.texture_name == want.texture_name, || {
            "texture name differs".to_string()
        })?;
    }
    Ok(())
}

#[test]
fn c7_round_trip_and_fuzz() {
    criterion(
        7,
        "round trip and fuzz",
        Some(Duration::from_secs(120)),
        || {
            let mut rng = StdRng::seed_from_u64(0xF0F0);
            for i in 0..10_000 {
                let mesh = random_small_mesh(&mut rng);
                let vrml = write_vrml(&mesh);
                let back = read_vrml::<f64>(&vrml)
                    .map_err(|e| format!("round trip {i} vrml: {e}"))?;
                meshes_close(&back, &mesh, true).map_err(|e| format!("vrml {i}: {e}"))?;
                let obj = write_obj(&mesh, "mesh").0;
                let back = read_obj::<f64>(&obj)
                    .map_err(|e| format!("round trip {i} obj: {e}"))?;
                meshes_close(&back, &mesh, false).map_err(|e| format!("obj {i}: {e}"))?;
            }
            let mut survived = 0usize;
            for i in 0..10_000 {
                let mesh = random_small_mesh(&mut rng);
                let as_vrml = i % 2 == 0;
                let mut bytes = if as_vrml {
                    write_vrml(&mesh)
                } else {
                    write_obj(&mesh, "mesh").0
                };
                for _ in 0..rng.gen_range(1..=8) {
                    if bytes.is_empty() {
                        break;
                    }
                    match rng.gen_range(0..4u8) {
                        0 => {
                            let at = rng.gen_range(0..bytes.len());
                            bytes[at] ^= 1 << rng.gen_range(0..8u8);
                        }
                        1 => {
                            let at = rng.gen_range(0..bytes.len());
                            bytes.truncate(at);
                        }
                        2 => {
                            let at = rng.gen_range(0..=bytes.len());
                            bytes.insert(at, rng.gen());
                        }
                        _ => {
                            let from = rng.gen_range(0..bytes.len());
                            let len = rng.gen_range(1..=16.min(bytes.len() - from));
                            let slice: Vec<u8> = bytes[from..from + len].to_vec();
                            let at = rng.gen_range(0..=bytes.len());
                            bytes.splice(at..at, slice);
                        }
                    }
                }
                // Either verdict is fine; the parser just must return one.
                let ok = if as_vrml {
                    read_vrml::<f64>(&bytes).is_ok()
                } else {
                    read_obj::<f64>(&bytes).is_ok()
                };
                survived += ok as usize;
            }
            Ok(format!(
                "10000 round trips, 10000 mutated streams ({survived} still parsed)"
            ))
        },
    );
}

#[test]
fn c8_repeatable_output() {
    criterion(8, "repeatable output", None, || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let first = run_reference_pipeline(&dir.path().join("one"))?;
        let second = run_reference_pipeline(&dir.path().join("two"))?;
        ensure(first.0 == second.0, || "OBJ bytes differ".to_string())?;
        ensure(first.1 == second.1, || "reports differ".to_string())?;
        Ok(format!(
            "two runs, identical {} byte OBJ and matching report",
            first.0.len()
        ))
    });
}
