//! The radial energy method: potential and energy along rays, the
//! per-direction maximizer `t_v`, the fixed-point search on the manifold
//! `{t_v v}`, annulus scans, and a Picard iteration used as an independent check.

mod radial;
mod solve;
mod tv;

pub use radial::{critical_census, energy_profile, radial_potential, CriticalKind, CriticalPoint, RadialProfile};
pub use solve::{
    multiplicity_scan, nehari_solve, picard_oracle, AnnulusCheck, NehariSolveReport, PicardResult, ScanEntry,
    SolveOptions,
};
pub use tv::{find_tv, find_tv_search, scan_grid, TvSearch, SCAN_SAMPLES};

pub(crate) use radial::{bracketed_root, census_from_samples};
