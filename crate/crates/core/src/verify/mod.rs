//! Numerical checks of the character-sum average, the approximate
//! functional equation and the resonator invariants, plus a suite runner.

mod checks;
mod lemma;
mod suite;

pub use checks::{
    check_afe, check_u, s2_reassociated, sample_discriminants, u_grid, u_value, AfeCheck, UCheck,
    DEFAULT_SEED, REASSOCIATION_GUARD,
};
pub use lemma::{
    check_lemma21, check_lemma21_many, lemma_main_term, LemmaCheckRecord, LEMMA_X_GUARD,
};
pub use suite::{
    kronecker_oracle_mismatch, run_property_suite, run_property_suite_with, run_suite,
    FaultInjection, Level, Selection, Status, SuiteEntry, SuiteReport,
};
