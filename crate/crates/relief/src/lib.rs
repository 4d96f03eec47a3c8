//! Textured terrain meshes from elevation grids.
//!
//! The pipeline this crate supports:
//!
//! 1. parse an ASCII elevation grid ([`raster::HeightField`]) and an
//!    optional PPM texture ([`raster::TextureImage`]),
//! 2. grid it into a textured triangle mesh ([`terrain::generate`]),
//! 3. reduce the mesh by quadric edge collapse ([`simplify::simplify`]),
//! 4. read or write the result as VRML 2.0 or Wavefront OBJ
//!    ([`formats`]).
//!
//! All geometry is generic over the scalar type through [`Real`]; the
//! aliases at the crate root fix it to `f64`, which the command-line
//! front end uses throughout.

pub mod formats;
pub mod geom;
pub mod mesh;
pub mod num;
pub mod raster;
pub mod simplify;
pub mod stats;
pub mod terrain;

pub use num::Real;

/// Triangle mesh with `f64` coordinates.
pub type Mesh = mesh::TriMesh<f64>;
/// 3-vector with `f64` components.
pub type Point = geom::Vec3<f64>;
/// Texture coordinate with `f64` components.
pub type TexCoord = geom::Uv<f64>;
/// Elevation grid with `f64` samples.
pub type HeightField = raster::HeightField<f64>;
/// Simplification parameters over `f64`.
pub type SimplifyParams = simplify::SimplifyParams<f64>;
