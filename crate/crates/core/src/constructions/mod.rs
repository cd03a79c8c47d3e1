//! Higher constructions over the block engine: zone copies and
//! conjugators, cofinal signature witnesses and the cocycle identity,
//! conjugation to prescribed signature targets, and the four-factor
//! certificate for maps over a certified infinite cycle.

pub mod cofinal;
pub mod conjugate;
pub mod factor;
pub mod zones;

pub use cofinal::{check_cocycle, signature_via_cofinal, CocycleOutcome};
pub use conjugate::{realize_conjugator, rs_sequence, RSSequence, TargetFn};
pub use factor::{deficiency_sets, factor_certificate, straighten, Certificate};
pub use zones::{copy_into_zones, zone_conjugator, zone_union, ZoneSel, ZoneSystem};
