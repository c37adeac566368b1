use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mesh parse error in {path} at line {line}: {msg}")]
    MeshParse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("non-manifold edge ({a}, {b}) shared by {count} triangles")]
    NonManifoldEdge { a: usize, b: usize, count: usize },

    #[error("inconsistent orientation across edge ({a}, {b})")]
    InconsistentOrientation { a: usize, b: usize },

    #[error("non-manifold vertex {vertex}: incident triangles do not form a single fan")]
    NonManifoldVertex { vertex: usize },

    #[error("triangle {tri} is invalid: {msg}")]
    BadTriangle { tri: usize, msg: String },

    #[error("degenerate mesh resolution: {0}")]
    DegenerateResolution(String),

    #[error("element {element}: patch has {count} irregular vertices; quadrisect the mesh first")]
    UnsupportedPatch { element: usize, count: usize },

    #[error("element {element}: preferred direction is parallel to the surface normal")]
    DirectionParallelToNormal { element: usize },

    #[error("element {element}: degenerate reference geometry ({msg})")]
    DegenerateElement { element: usize, msg: String },

    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("config error at {path}:{line}: {msg}")]
    Config {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("boundary setup error: {0}")]
    Boundary(String),

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("solver diverged at step {step} (load factor {load_factor}): {msg}")]
    Diverged {
        step: usize,
        load_factor: f64,
        msg: String,
    },

    #[error("deformed element {element} degenerated (J <= 0)")]
    StepRejected { element: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
