//! Tropical linear spaces of positive tropical Plücker vectors and their
//! bounded complexes.

mod complex;
mod matroid;
mod roof;

pub use complex::{
    argmin_matroid, bounded_complex, bounded_complex_edges, bounded_complex_vertices, bounded_complex_with, diameter_check, diameter_check_with,
    face_dimension_at, in_bounded_part, in_linear_space, lineality_offset, subdifferential_at, BoundedComplexReport, FaceQuery,
    VertexOptions,
};
pub use matroid::Matroid;
pub use roof::{
    balanced_representative, central_from_coefficients, central_pluecker_vector, central_representative, central_roof,
    central_roof_value, BalancedRepresentative, CentralRoof,
};
