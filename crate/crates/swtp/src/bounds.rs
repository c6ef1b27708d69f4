//! Scalar entropic quantities and the explicit bound functions: entropy,
//! relative entropy, the Pinsker defect, entropy continuity, the spectral
//! estimate on isotypic traces, dimension envelopes, and the γ/φ corrections.
//!
//! All logarithms are base two.

use thiserror::Error;

use crate::partitions::{enumerate_frames, factorial, YoungFrame};
use crate::tensorspace::Spectrum;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("theta must lie in (0, 1/2], got {0}")]
    ThetaOutOfRange(f64),
    #[error("delta must lie in (0, 1/2), got {0}")]
    DeltaOutOfRange(f64),
    #[error("frame needs at most {d} rows, has {rows}")]
    TooManyRows { rows: usize, d: usize },
}

const LN_2: f64 = std::f64::consts::LN_2;

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Relative entropy `D(p‖q)` in bits; `+∞` when the support of `p` escapes
/// the support of `q`.
pub fn relative_entropy(p: &[f64], q: &[f64]) -> Result<f64, BoundsError> {
    if p.len() != q.len() {
        return Err(BoundsError::LengthMismatch(p.len(), q.len()));
    }
    let mut acc = 0.0f64;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pi * (pi / qi).log2();
    }
    Ok(acc)
}

/// `2^{-a·x}` honoring the convention that an infinite exponent collapses to
/// zero (used with `x = D(p‖q)`).
pub fn exp2_neg_scaled(a: f64, x: f64) -> f64 {
    if x.is_infinite() && x > 0.0 {
        return 0.0;
    }
    (-a * x).exp2()
}

pub fn l1_distance(p: &[f64], q: &[f64]) -> Result<f64, BoundsError> {
    if p.len() != q.len() {
        return Err(BoundsError::LengthMismatch(p.len(), q.len()));
    }
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
}

/// `D(p‖q) − ‖p−q‖₁² / (2 ln 2)`: non-negative for all distribution pairs.
pub fn pinsker_gap(p: &[f64], q: &[f64]) -> Result<f64, BoundsError> {
    let d = relative_entropy(p, q)?;
    let l1 = l1_distance(p, q)?;
    Ok(d - l1 * l1 / (2.0 * LN_2))
}

/// Entropy-continuity bound `−Θ log(Θ/|A|)` for `‖p−q‖₁ ≤ Θ ≤ 1/2`.
pub fn entropy_continuity_bound(theta: f64, alphabet: usize) -> Result<f64, BoundsError> {
    if !(theta > 0.0 && theta <= 0.5) {
        return Err(BoundsError::ThetaOutOfRange(theta));
    }
    Ok(-theta * (theta / alphabet as f64).log2())
}

/// Checks `|H(p) − H(q)| ≤ −Θ log(Θ/|A|)` for a qualifying pair; returns the
/// slack (non-negative when the bound holds).
pub fn entropy_continuity_slack(p: &[f64], q: &[f64], theta: f64) -> Result<f64, BoundsError> {
    let bound = entropy_continuity_bound(theta, p.len())?;
    let dist = l1_distance(p, q)?;
    debug_assert!(dist <= theta + 1e-12, "pair must satisfy the distance hypothesis");
    Ok(bound - (entropy(p) - entropy(q)).abs())
}

/// Right-hand side of the spectral estimate on isotypic traces:
/// `(n+1)^{d(d−1)/2} · 2^{−n D(λ̄‖s)}`.
pub fn keyl_werner_rhs(
    frame: &YoungFrame,
    s: &[f64],
    n: u32,
    d: usize,
) -> Result<f64, BoundsError> {
    let profile = frame
        .normalized_profile(d)
        .map_err(|_| BoundsError::TooManyRows { rows: frame.rows(), d })?;
    let div = relative_entropy(profile.probs(), s)?;
    let poly = ((n + 1) as f64).powi((d * (d - 1) / 2) as i32);
    Ok(poly * exp2_neg_scaled(n as f64, div))
}

/// Dimension envelope of one frame: factorial lower bound, exact value,
/// factorial upper bound, and the entropic envelopes.
#[derive(Debug, Clone)]
pub struct DimBounds {
    pub lower: f64,
    pub exact: u128,
    pub upper: f64,
    /// `2^{n H(λ̄)}`, valid unconditionally.
    pub entropic_upper: f64,
    /// `2^{n (H(λ̄) − γ₁(n))}`, valid only beyond the γ₁ threshold.
    pub entropic_lower: f64,
    /// Whether `n ≥ 2d²`, the hypothesis of the γ₁ derivation.
    pub gamma1_hypothesis_met: bool,
}

/// Factorial and entropic dimension bounds. The factorial lower bound takes
/// the product `∏_{i=1}^d (λ_i + d + 1)!` over all `d` padded rows.
pub fn dim_bounds(frame: &YoungFrame, d: usize, n: u32) -> Result<DimBounds, BoundsError> {
    if frame.rows() > d {
        return Err(BoundsError::TooManyRows { rows: frame.rows(), d });
    }
    let mut padded = frame.parts().to_vec();
    padded.resize(d, 0);
    let n_fact = factorial(n) as f64;
    let lower_den: f64 = padded.iter().map(|&p| factorial(p + d as u32 + 1) as f64).product();
    let upper_den: f64 = padded.iter().map(|&p| factorial(p) as f64).product();
    let exact = frame.dim_irrep().expect("frame within exact range");
    let profile = frame.normalized_profile(d).expect("row bound checked above");
    let h = entropy(profile.probs());
    let g1 = gamma1(n, d);
    Ok(DimBounds {
        lower: n_fact / lower_den,
        exact,
        upper: n_fact / upper_den,
        entropic_upper: (n as f64 * h).exp2(),
        entropic_lower: (n as f64 * (h - g1)).exp2(),
        gamma1_hypothesis_met: n as usize >= 2 * d * d,
    })
}

/// `γ₁(n) = −(d⁶/n) log(d⁵/n) + (5d²/n) log(2n)`.
pub fn gamma1(n: u32, d: usize) -> f64 {
    let nf = n as f64;
    let df = d as f64;
    -(df.powi(6) / nf) * (df.powi(5) / nf).log2() + (5.0 * df * df / nf) * (2.0 * nf).log2()
}

/// Smallest `n₀ ≤ n_max` such that the γ₁ dimension lower bound holds for
/// every frame of every `n` in `n₀..=n_max`, discovered by scanning.
pub fn min_n_gamma1_valid(d: usize, n_max: u32) -> Option<u32> {
    let valid_at = |n: u32| -> bool {
        enumerate_frames(d as u32, n).iter().all(|f| {
            let db = dim_bounds(f, d, n).expect("enumerated frames respect the row bound");
            db.exact as f64 >= db.entropic_lower - 1e-9
        })
    };
    let mut candidate = None;
    for n in (1..=n_max).rev() {
        if valid_at(n) {
            candidate = Some(n);
        } else {
            break;
        }
    }
    candidate
}

/// Scalars shared by every bound evaluation for one state and one grid point.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub d_a: usize,
    pub d_b: usize,
    pub n: u32,
    pub r: Spectrum,
    pub r_a: Spectrum,
    pub r_b: Spectrum,
    pub eps: f64,
    pub delta: f64,
    /// `−log min{r_i > 0}` of the joint spectrum.
    pub c1: f64,
}

impl BoundContext {
    pub fn new(
        d_a: usize,
        d_b: usize,
        n: u32,
        r: Spectrum,
        r_a: Spectrum,
        r_b: Spectrum,
        eps: f64,
        delta: f64,
    ) -> Self {
        let c1 = r.c1();
        Self { d_a, d_b, n, r, r_a, r_b, eps, delta, c1 }
    }

    pub fn d_pair(&self) -> usize {
        self.d_a * self.d_b
    }

    /// The `n ≥ 2d²` hypothesis behind every γ₁-based estimate, with
    /// `d = d_a d_b`.
    pub fn gamma_hypothesis_met(&self) -> bool {
        self.n as usize >= 2 * self.d_pair() * self.d_pair()
    }
}

/// The γ correction family and φ(δ), all evaluated at one context.
#[derive(Debug, Clone)]
pub struct GammaValues {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub g5: f64,
    pub g6: f64,
    pub g7: f64,
    pub phi: f64,
    /// `max{γ₁..γ₇}`.
    pub gamma: f64,
}

/// Evaluate γ₁..γ₇, φ(δ), and their maximum. Errors when δ leaves the
/// domain `(0, 1/2)` of φ; [`phi_extended`] evaluates the same formula when a
/// report needs the value outside that domain.
pub fn gamma_functions(ctx: &BoundContext) -> Result<GammaValues, BoundsError> {
    if !(ctx.delta > 0.0 && ctx.delta < 0.5) {
        return Err(BoundsError::DeltaOutOfRange(ctx.delta));
    }
    Ok(gamma_functions_unchecked(ctx))
}

/// Same as [`gamma_functions`] without the δ domain guard.
pub fn gamma_functions_unchecked(ctx: &BoundContext) -> GammaValues {
    let n = ctx.n as f64;
    let d = ctx.d_pair() as f64;
    let g1 = gamma1(ctx.n, ctx.d_pair());
    let g2 = (d * d / n) * (n + 1.0).log2() + g1;
    let g7 = (2.0 * d * d / n) * (n + 1.0).log2() + g1;
    let g3 = (d.powi(5) / n) * (2.0 * (n + 1.0)).log2() + g2;
    let g4 = 2.0 * ctx.c1 * d / n + d * n.log2() / n;
    let g5 = -d * n.log2() / n + g3;
    let g6 = g4.max(g5);
    let phi = phi_extended(ctx.delta, ctx.c1, ctx.d_pair());
    let gamma = g1.max(g2).max(g3).max(g4).max(g5).max(g6).max(g7);
    GammaValues { g1, g2, g3, g4, g5, g6, g7, phi, gamma }
}

/// `φ(δ) = 2δc₁ + δ log(d_A d_B / δ)`, evaluated for any δ > 0.
pub fn phi_extended(delta: f64, c1: f64, d_pair: usize) -> f64 {
    2.0 * delta * c1 + delta * (d_pair as f64 / delta).log2()
}

/// ℓ1 distance between `λ̄` and the shifted profile
/// `(λ_i + d + 1)/(n + d(d+1))`, together with its asserted ceiling
/// `d(d+1)²/n`.
pub fn frame_shift_distance(frame: &YoungFrame, d: usize, n: u32) -> Result<f64, BoundsError> {
    if frame.rows() > d {
        return Err(BoundsError::TooManyRows { rows: frame.rows(), d });
    }
    let mut padded = frame.parts().to_vec();
    padded.resize(d, 0);
    let nf = n as f64;
    let df = d as f64;
    let shifted_total = nf + df * (df + 1.0);
    let dist: f64 = padded
        .iter()
        .map(|&p| (p as f64 / nf - (p as f64 + df + 1.0) / shifted_total).abs())
        .sum();
    Ok(dist)
}

/// The ceiling `d(d+1)²/n` of [`frame_shift_distance`].
pub fn frame_shift_ceiling(d: usize, n: u32) -> f64 {
    let df = d as f64;
    df * (df + 1.0) * (df + 1.0) / n as f64
}
