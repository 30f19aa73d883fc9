//! Numeric tolerances, centralized so every threshold has one home.
//!
//! Two regimes are kept apart deliberately: *structural* checks
//! (Hermiticity, positivity, normalization) absorb accumulated f64
//! arithmetic and sit at `1e-9`, while *golden-value* comparisons against
//! closed forms sit at `1e-12`, well above machine epsilon but tight
//! enough to catch any formula error.

/// Structural validation: Hermiticity defect, PSD eigenvalue floor,
/// trace and norm deviation.
pub const STRUCTURAL: f64 = 1e-9;

/// Comparison against closed-form quantities (overlaps, invariants,
/// trace distances with exact constructions).
pub const GOLDEN: f64 = 1e-12;

/// Eigenvalues of a Gram form above this count toward the rank used by
/// the communication-cost computation and by Gram factorization.
pub const RANK: f64 = 1e-8;

/// Imaginary-part threshold for the set-imaginarity witness. Far above
/// arithmetic noise, far below the witnessed magnitude 1/(3√3) ≈ 0.192.
pub const WITNESS: f64 = 1e-8;

/// A strategy counts as exactly realizing the target channel when its
/// average trace distance is below this.
pub const EXACTNESS: f64 = 1e-9;

/// |det| of three unit Bloch vectors below this counts as coplanar
/// (a great-circle triple). Exact zeros land near 1e-16.
pub const COPLANARITY: f64 = 1e-6;

/// Entries with |Im| below this count as real for theory-class checks.
pub const REAL_ENTRIES: f64 = 1e-9;

/// Probability-table rows must sum to 1 within this.
pub const ROW_SUM: f64 = 1e-12;

/// Realized-channel rows (derived quantities) must sum to 1 within this.
pub const CHANNEL_ROW_SUM: f64 = 1e-10;

/// Relative singular-value cutoff for the target-table rank.
pub const TARGET_RANK_REL: f64 = 1e-10;

/// Eigenvalue floor below which the POVM normalizer treats a direction
/// as null and completes it uniformly.
pub const SINGULAR_RIDGE: f64 = 1e-12;

/// Central finite-difference probe step for the descent optimizer.
pub const FD_STEP: f64 = 1e-5;
