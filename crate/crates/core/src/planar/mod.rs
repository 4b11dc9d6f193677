//! Combinatorial sphere embeddings, cycle sides and laminar families.

mod cycle;
mod family;
mod graph;

pub use cycle::{cycle_sides, disjoint_sides, is_laminar, is_subset, side_contains_cycle, side_regions, Cycle, FaceSet, SideRegion};
pub use family::{classify_family, vertex_components, LaminarFamily};
pub use graph::{compute_faces, edge_of, rev, Dart, EmbeddedGraph};
