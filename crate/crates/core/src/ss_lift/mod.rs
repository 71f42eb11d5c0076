//! Truncated-exponential data interpolating Kummer and Artin-Schreier-Witt
//! theory over `Z_(p)[zeta_{p^2}]`, and exact checks of its identities.

pub mod constants;
pub mod cpoly;
pub mod polys;
pub mod verify;

pub use constants::{build_constants, Mutation, SSConstants};
pub use cpoly::{CycloPoly, CycloPolyRing};
pub use polys::{c_poly, isogeny_polys, truncated_exp_polys, IsogenyPolys};
pub use verify::{
    run_all, ss_verify, verify_exp_congruence, verify_constants, verify_group_law, verify_special_fiber, IdentityCheck,
    SsReport,
};
