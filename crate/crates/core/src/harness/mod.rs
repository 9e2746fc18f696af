//! Random instances, whole-registry verification and campaigns.

pub mod campaign;
pub mod generate;
pub mod verify;

pub use campaign::{
    campaign, parse_dims, replay, replay_path, Campaign, CampaignConfig, CampaignSummary,
    ReplayFile,
};
pub use generate::{combination, generate, InstanceSpec, OperatorKind, WeightKind};
pub use verify::{
    verify_instance, verify_spec, Tolerances, Verdict, VerificationReport, THEOREM_IDS,
};
