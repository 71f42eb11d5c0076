//! Tate curves over `Q_p`: Weierstrass series and Brauer torsion.

pub mod series;
pub mod torsion;

pub use series::{sigma_series, tate_coefficients, PowerSeriesZ};
pub use torsion::{
    brauer_torsion_structure, certify_all, cyclicity_certificate, BrElement, BrauerTorsion, Character, CyclicityCertificate,
    CyclicitySummary, CyclicityVerdict, TateFieldDesc,
};
