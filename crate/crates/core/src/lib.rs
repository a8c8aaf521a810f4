//! Long cycles in essentially 4-connected planar graphs.
//!
//! Starting from an OI3-cycle (a cycle whose off-cycle vertices form an
//! independent set of degree-3 vertices), the engine repeatedly extends the
//! cycle through outer vertices and applies local replacements until none
//! applies. At that point a discharging argument on the chord-free graph
//! certifies that the cycle has length at least `⌈3(n + 2)/5⌉`.

pub mod bc;
pub mod cycle;
pub mod engine;
pub mod instances;
pub mod oracle;
pub mod planar;
pub mod replace;

pub use cycle::{CycleError, CycleSeq};
pub use planar::{EmbeddingError, FaceId, PlanarEmbedding, RotationTable, VertexId};
