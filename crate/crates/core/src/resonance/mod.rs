//! Resonance sums `S1`, `S2` over fundamental discriminants and the scan
//! for large central values.

mod config;
mod report;
mod scan;

pub use config::{
    derive_n_from_x, LSource, NPolicy, Range, ScanConfig, Strategy, DEFAULT_EXPLICIT_N,
};
pub use report::{Diagnostic, ErrorBudget, ScanReport, CSV_COLUMNS};
pub use scan::{
    compute_s1, compute_s2, error_budget, resonator_value, run_scan, scan_max, ScanSetup,
    CHUNK_SIZE,
};

#[cfg(test)]
mod tests;
