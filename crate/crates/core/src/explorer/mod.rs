//! Counterexample construction, exhaustive scans and exploratory data series.

mod counterexample;
mod scan;
mod series;
mod suites;

pub use counterexample::{optimality_counterexample, CounterexampleWitness};
pub use scan::{GridSpec, ScanOptions, ScanReport, Sweep, DEFAULT_VIOLATION_CAP};
pub use series::{fluctuation_series, p_gt_one_divergence};
pub use suites::{
    allaart_sweep, base3_sweep, bio_sweep, block_sweep, carry_identity_sweep,
    for_each_sorted_tuple, for_each_tuple, graham_sweep, partial_tuple_sweep,
    pattern_summatory_table, scaling_sweep, scan, subadditivity_sweep, sweep, symmetric_sweep,
    variation_partial_sweep, variation_sweep, verification_suite, AnySweep, ScanRequest,
    DEFAULT_X_MAX, VERIFIED,
};
