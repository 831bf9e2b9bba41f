//! Ball projections, Monna pull-backs of real states, interaction
//! probabilities and collapse; plus the GRW comparison model.

pub mod collapse;
pub mod grw;
pub mod projection;

pub use collapse::{
    collapse_joint, collapse_with, interaction_probability, pullback_adaptive, pullback_real, scan_report, Collapse,
    CollapseOutcome, Pullback, ScanRecord,
};
pub use grw::{
    grw_events_csv, grw_localize, grw_trajectory, localization_density, localization_gaussian,
    position_variance, sample_center, GrwEvent, GrwParams, GrwTrajectory,
};
pub use projection::{ball_mass, post_measurement, project_ball, restrict_wavelet, Restriction};
