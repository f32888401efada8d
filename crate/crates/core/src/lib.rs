//! Locally twisted cubes `LTQ_n`: vertex-label algebra, canonical-path
//! congestion, exact crossing counting, and recursive low-crossing drawings.

pub mod bounds;
pub mod construct;
pub mod drawing;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod label;
pub mod routing;

pub use bounds::{bounds_table, hypercube_bounds, ltq_lower, ltq_lower_chain, ltq_upper, BoundValue, Direction, TableFormat};
pub use construct::{
    construct_next, dim_n_pairing, double_drawing, expected_gamma, forward_orientation, local_mesh_kind, min_swap_orientation,
    ConstructionTrace, LocalMeshRecord, MeshKind,
};
pub use drawing::{
    export_mesh_svg, export_svg, generate_mesh, load_drawing, save_drawing, validate_properties, LtqDrawing, MeshDrawing, PropertyReport,
    PropertyStatus, SvgOptions,
};
pub use error::{Error, Result};
pub use geometry::{count_crossings, CrossingReport, EdgeInput, Point, Polyline, Rational, Violation, ViolationKind};
pub use graph::{Edge, LtqGraph};
pub use label::{
    are_adjacent, dim_of, epsilon_zeta, forward_direction, lambda_index, partner, DimValue, EpsilonZetaPair, ForwardDirection, VertexLabel,
};
pub use routing::{canonical_path, congestion_report, edge_congestion, f_set, tau, v_set, v_set_size, CanonicalPath};
