//! Randomized property-test harness for the `mtl` library.
//!
//! The harness has three parts:
//!
//! * [`gen`] — seeded generators for formulas (flat, windowless, nested),
//!   dense behaviors (slowly-varying or unconstrained), discrete behaviors,
//!   and query instants. All generators are deterministic functions of a
//!   [`rand_chacha::ChaCha20Rng`], so every suite run is reproducible from
//!   its seed.
//! * [`oracle`] — an independent reference evaluator for formulas over dense
//!   behaviors. It shares no code with the library's interval-set evaluator:
//!   it discretizes the time line into finitely many sample regions and
//!   decides each temporal operator by brute-force quantification over
//!   region representatives.
//! * [`suites`] — named check suites ([`suites::run_suite`]) that generate
//!   instances in parallel, filter them where a check only applies to
//!   instances with some property (reporting filter health), and compare
//!   library results against the oracle or against each other.
//!
//! The intended entry point is [`run_suite`] with a [`GenConfig`]; each suite
//! returns a [`SuiteReport`] that renders as line-oriented text and exposes
//! the pass/fail verdict programmatically.

pub mod gen;
pub mod oracle;
pub mod suites;

use mtl::rat::{rat, rat_int};
use mtl::Rat;

/// Tunable knobs for instance generation, shared by all suites.
///
/// The derived per-instance RNG streams depend only on `seed`, the suite
/// name, and the instance index, so reports are reproducible and independent
/// of thread scheduling.
#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Master seed; every instance derives its own stream from it.
    pub seed: u64,
    /// Number of distinct proposition letters to draw from (1–3).
    pub alphabet_size: usize,
    /// Nesting cap for generated formulas with temporal arguments (0–2).
    pub max_depth: usize,
    /// Finite window endpoints are drawn from this pool (negatives allowed).
    pub endpoint_pool: Vec<Rat>,
    /// Sampling periods are drawn from this pool (all must be positive).
    pub delta_pool: Vec<Rat>,
    /// Cap on the number of constancy pieces of generated dense behaviors
    /// (1–8), and on the explicit window of discrete ones.
    pub max_segments: usize,
    /// Base instance budget per suite; suites scale it as documented.
    pub instances: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 42,
            alphabet_size: 2,
            max_depth: 2,
            endpoint_pool: vec![
                rat_int(-2),
                rat_int(-1),
                rat_int(0),
                rat(1, 2),
                rat_int(1),
                rat(3, 2),
                rat_int(2),
                rat_int(3),
            ],
            delta_pool: vec![rat_int(1), rat(1, 2), rat(1, 4)],
            max_segments: 6,
            instances: 200,
        }
    }
}

impl GenConfig {
    /// Checks the documented ranges; suites call this before running.
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=3).contains(&self.alphabet_size) {
            return Err(format!(
                "alphabet_size must be between 1 and 3, got {}",
                self.alphabet_size
            ));
        }
        if self.max_depth > 2 {
            return Err(format!("max_depth must be at most 2, got {}", self.max_depth));
        }
        if self.endpoint_pool.is_empty() {
            return Err("endpoint_pool must be nonempty".to_string());
        }
        if self.delta_pool.is_empty() {
            return Err("delta_pool must be nonempty".to_string());
        }
        if let Some(d) = self.delta_pool.iter().find(|d| **d <= rat_int(0)) {
            return Err(format!("delta_pool entries must be positive, got {}", d));
        }
        if !(1..=8).contains(&self.max_segments) {
            return Err(format!(
                "max_segments must be between 1 and 8, got {}",
                self.max_segments
            ));
        }
        if self.instances == 0 {
            return Err("instances must be at least 1".to_string());
        }
        Ok(())
    }

    /// The integer entries of the endpoint pool, used where a formula class
    /// requires integer window endpoints. Falls back to small constants when
    /// the pool has none.
    pub fn int_endpoint_pool(&self) -> Vec<Rat> {
        let ints: Vec<Rat> = self
            .endpoint_pool
            .iter()
            .filter(|r| mtl::rat::is_int(r))
            .cloned()
            .collect();
        if ints.is_empty() {
            vec![rat_int(-1), rat_int(0), rat_int(1), rat_int(2)]
        } else {
            ints
        }
    }
}

pub use suites::{run_suite, SuiteName, SuiteReport};
