//! Seeded randomized checks of the modular, paranorm and norm inequalities.
//!
//! Every check draws from its own ChaCha stream derived from the seed and
//! the check name, so reports are reproducible and independent of the
//! order (or thread) in which checks run.

mod checks;
mod report;
mod sample;

pub use checks::{
    certification_honesty, cesaro_reduction, luxemburg_root, modular_axioms, modular_norm_regimes,
    norm_sandwich, null_and_convergent_sequences, paranorm_contract, run_panel,
    scalar_inequalities,
};
pub use report::{format_csv, format_text, CheckReport, Tally, CSV_HEADER};
pub use sample::{NamedSpace, SampleConfig};
