//! Certifying 3-edge-connectivity on multigraphs.
//!
//! For an input graph the crate produces either a Mader construction
//! sequence built from a chain decomposition, or a cut of size at most two.
//! It also builds the cactus of all 2-edge-cuts and checks every certificate
//! it emits with an independent verifier.

pub mod batch;
pub mod cactus;
pub mod cert;
pub mod chains;
pub mod graph;
pub mod greedy;
pub mod hugealloc;
pub mod intervals;
pub mod linear;
pub mod oracle;
pub mod verify;

pub use cert::{Certificate, MaderPath, Variant};
pub use graph::{load_graph, MultiGraph};
