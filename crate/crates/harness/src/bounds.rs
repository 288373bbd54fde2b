//! Closed-form runtime bounds for the aging strategy, used as a sanity
//! monitor and to derive the default iteration cap.

use agemoa_core::{ProblemKind, ProblemSpec};

/// Ceiling on any default iteration cap.
pub const MAX_ITERATION_CAP: u64 = 1_000_000_000;

/// Multiple of the bound used as the default cap.
pub const CAP_FACTOR: f64 = 100.0;

/// `(e²n / ((1 − e^{−τ/μ}) k))^k`, the factor shared by both bounds.
fn jump_factor(n: usize, k: usize, mu: usize, tau: u64) -> f64 {
    let survive = 1.0 - (-(tau as f64) / mu as f64).exp();
    let e2 = core::f64::consts::E.powi(2);
    (e2 * n as f64 / (survive * k as f64)).powi(k as i32)
}

/// Bound on the expected iterations of the aging SMS-EMOA to cover the full
/// Pareto front.
///
/// OJZJ: `kτ(e²n / ((1 − e^{−τ/μ})k))^k`. mOJZJ with `m′ = m/2 ≥ 2` blocks:
/// `(1 − 1/m′)^{−1} (2 + ln(4)m′/ln m′) (3 ln(m′) kτ / 2) (e²n / (k(1 − e^{−τ/μ})))^k`.
/// A single-block mOJZJ is OJZJ and uses the first form.
pub fn aging_runtime_bound(spec: &ProblemSpec, mu: usize, tau: u64) -> f64 {
    let k = spec.k();
    let kt = k as f64 * tau as f64;
    let jump = jump_factor(spec.n(), k, mu, tau);
    let blocks = spec.blocks();
    if spec.kind() == ProblemKind::Ojzj || blocks < 2 {
        return kt * jump;
    }
    let mp = blocks as f64;
    let ln_mp = mp.ln();
    (1.0 - 1.0 / mp).recip() * (2.0 + 4f64.ln() * mp / ln_mp) * (1.5 * ln_mp * kt) * jump
}

/// `min(100 × bound, 10⁹)`, at least one iteration. A `τ` of zero (a
/// non-aging strategy) is replaced by `μ/2` so the expression stays finite.
pub fn default_max_iterations(spec: &ProblemSpec, mu: usize, tau: u64) -> u64 {
    let tau = if tau == 0 {
        (mu as u64 / 2).max(1)
    } else {
        tau
    };
    let cap = CAP_FACTOR * aging_runtime_bound(spec, mu, tau);
    if cap.is_finite() && cap < MAX_ITERATION_CAP as f64 {
        (cap.ceil() as u64).max(1)
    } else {
        MAX_ITERATION_CAP
    }
}
