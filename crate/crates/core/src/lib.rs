//! Computable de la Vallée-Poussin sequence spaces `V(λ;p)`.
//!
//! Window means, the modular `ρ`, the paranorm `h`, the `V_p(λ)` norm and the
//! Luxemburg and Amemiya norms of finitely supported sequences, each with a
//! certified error bound, plus the gliding-hump subsequence selection for
//! the Banach-Saks type-`p` estimate and a seeded property checker.

pub mod banach_saks;
pub mod certified;
pub mod error;
pub mod exponents;
pub mod means;
pub mod modular;
pub mod norms;
pub mod sequence;
pub mod space_spec;
pub mod verify;
pub mod weights;

pub use banach_saks::{
    extract_gliding_hump, property_bsp_check, verify_bs_bound, BsBound, BspReport, EpsilonSchedule,
    ExtractionConfig, ExtractionError, GlidingHumpExtraction, NormalizedBasis, SeparatedSpikes,
    SequenceFamily,
};
pub use certified::CertifiedValue;
pub use error::{ModularError, NormError, SpaceError};
pub use exponents::ExponentSequence;
pub use means::{abs_window_mean, classify_diagnostics, vp_mean, Diagnostics, Trend};
pub use modular::{cesaro_direct, modular_rho, norm_vp, paranorm_h, scaled_modular};
pub use norms::{amemiya_constant_p_oracle, amemiya_norm, luxemburg_norm, NormResult};
pub use sequence::FiniteSequence;
pub use space_spec::{SpaceSpec, SpecError};
pub use weights::{WeightSequence, Window};
