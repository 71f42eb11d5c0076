//! Plane curves over finite fields and the elliptic-curve layer built on them.

pub mod divisor;
pub mod elliptic;
pub mod local;
pub mod plane;
pub mod point;

pub use divisor::{find_split_triple, function_with_divisor, Divisor, LineProductFunction, SplitSearch, SplitTriple};
pub use elliptic::{ec_order_and_structure, CubicModel, GroupStructure};
pub use local::{LaurentData, LocalExpansion};
pub use plane::{
    certify_smooth, enumerate_points, normal_crossings_profile, tangent_and_flex, CrossingVerdict, Intersection,
    IntersectionReport, PlaneCurve, SmoothCertificate, Smoothness, TangentInfo,
};
pub use point::{ClosedPoint, ProjPoint};
