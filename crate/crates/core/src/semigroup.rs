//! Heat operators `e^{−tℒ}` by spectral synthesis, trajectories, threshold
//! times and domination.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::spectra::SpectralDecomposition;

/// Number of grid points used by the threshold scan.
pub const GRID_POINTS: usize = 1024;
/// Width of the final bisection bracket.
pub const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemigroupError {
    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),
    #[error("horizon must be positive, got {0}")]
    BadHorizon(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("time grid must be ascending (index {0})")]
    UnsortedGrid(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatOperator<T> {
    pub t: T,
    pub matrix: Matrix<T>,
}

impl<T: Real> HeatOperator<T> {
    pub fn min_entry(&self) -> T {
        self.matrix.min_entry().unwrap_or_else(T::zero)
    }

    pub fn op_norm_inf(&self) -> T {
        self.matrix.op_norm_inf()
    }

    pub fn is_positive(&self, tol: T) -> bool {
        self.min_entry() >= -tol
    }

    pub fn is_inf_contractive(&self, tol: T) -> bool {
        self.op_norm_inf() <= T::one() + tol
    }

    pub fn apply(&self, u: &[T]) -> Vec<T> {
        self.matrix.mul_vec(u)
    }
}

fn check_time<T: Real>(t: T) -> Result<(), SemigroupError> {
    if t < T::zero() || t.is_nan() {
        return Err(SemigroupError::NegativeTime(t.to_f64_lossy()));
    }
    Ok(())
}

/// `e^{−tℒ} = Σ_k e^{−tλ_k} φ_k φ_kᵀ`.
pub fn heat_operator<T: Real>(
    s: &SpectralDecomposition<T>,
    t: T,
) -> Result<HeatOperator<T>, SemigroupError> {
    check_time(t)?;
    Ok(HeatOperator {
        t,
        matrix: s.synthesize(0..s.dim(), |l| (-t * l).exp()),
    })
}

/// Rescaled flow `e^{−t(ℒ − λ₁)}`, which converges to the lowest-cluster
/// projector.
pub fn rescaled_heat_operator<T: Real>(
    s: &SpectralDecomposition<T>,
    t: T,
) -> Result<HeatOperator<T>, SemigroupError> {
    check_time(t)?;
    let l1 = s.lambda1();
    Ok(HeatOperator {
        t,
        matrix: s.synthesize(0..s.dim(), |l| (-t * (l - l1)).exp()),
    })
}

/// Backward flow `e^{+tℒ}` for `t ≥ 0`.
pub fn backward_heat_operator<T: Real>(
    s: &SpectralDecomposition<T>,
    t: T,
) -> Result<HeatOperator<T>, SemigroupError> {
    check_time(t)?;
    Ok(HeatOperator {
        t,
        matrix: s.synthesize(0..s.dim(), |l| (t * l).exp()),
    })
}

/// `‖e^{−tℒ}‖₂ = max_k e^{−tλ_k}`.
pub fn spectral_norm<T: Real>(s: &SpectralDecomposition<T>, t: T) -> T {
    s.eigenvalues()
        .iter()
        .fold(T::zero(), |m, &l| m.max((-t * l).exp()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    /// `values[i]` is `u(times[i])`.
    pub values: Vec<Vec<T>>,
}

/// `u(t) = e^{−tℒ}u₀` on an ascending time grid.
pub fn heat_trajectory<T: Real>(
    s: &SpectralDecomposition<T>,
    u0: &[T],
    times: &[T],
) -> Result<Trajectory<T>, SemigroupError> {
    if u0.len() != s.dim() {
        return Err(SemigroupError::Dimension {
            expected: s.dim(),
            got: u0.len(),
        });
    }
    for (i, w) in times.windows(2).enumerate() {
        if w[1] < w[0] {
            return Err(SemigroupError::UnsortedGrid(i + 1));
        }
    }
    // Coefficients in the eigenbasis.
    let coeffs: Vec<T> = (0..s.dim())
        .map(|k| s.vector(k).iter().zip(u0).map(|(&a, &b)| a * b).sum())
        .collect();
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        check_time(t)?;
        let mut u = vec![T::zero(); s.dim()];
        for (k, &c) in coeffs.iter().enumerate() {
            let w = c * (-t * s.eigenvalues()[k]).exp();
            for (i, ui) in u.iter_mut().enumerate() {
                *ui += w * s.vectors()[(i, k)];
            }
        }
        values.push(u);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Positivity,
    InfContractivity,
    Domination,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport<T> {
    pub property: Property,
    /// Smallest time from which the property holds on the scanned grid and
    /// after bisection; `Some(0)` if it never fails, `None` if it still fails
    /// at the horizon.
    pub t0: Option<T>,
    /// `(last failing, first holding)` times around `t0`.
    pub bracket: Option<(T, T)>,
    pub horizon: T,
    pub entry_tol: T,
    pub holds_everywhere: bool,
    /// The asymptotic criterion guarantees the property beyond the horizon.
    pub certified_tail: bool,
}

/// Scans `margin` (≥ 0 where the property holds) on a uniform grid and
/// bisects the last sign change.
fn scan<T: Real>(horizon: T, margin: impl Fn(T) -> T) -> (Option<T>, Option<(T, T)>, bool) {
    let last = T::from_int(GRID_POINTS as i64 - 1);
    let grid = |i: usize| horizon * T::from_int(i as i64) / last;
    let holds = |t: T| margin(t) >= T::zero();
    let last_fail = (0..GRID_POINTS).rev().find(|&i| !holds(grid(i)));
    match last_fail {
        None => (Some(T::zero()), None, true),
        Some(i) if i == GRID_POINTS - 1 => (None, None, false),
        Some(i) => {
            let mut lo = grid(i);
            let mut hi = grid(i + 1);
            let tol = T::lit(BISECTION_TOL);
            while hi - lo > tol {
                let mid = (lo + hi) * T::lit(0.5);
                if holds(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            (Some(hi), Some((lo, hi)), false)
        }
    }
}

/// `10 / gap` between the lowest cluster and the next, or 10.
pub fn default_horizon<T: Real>(s: &SpectralDecomposition<T>) -> T {
    match s.spectral_gap() {
        Some(g) if g > T::zero() => T::lit(10.0) / g,
        _ => T::lit(10.0),
    }
}

fn reconstruct<T: Real>(s: &SpectralDecomposition<T>) -> Matrix<T> {
    s.synthesize(0..s.dim(), |l| l)
}

fn off_diagonal_nonpositive<T: Real>(m: &Matrix<T>, tol: T) -> bool {
    m.min_off_diagonal().is_none_or(|_| {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)] <= tol))
    })
}

fn diagonally_dominant<T: Real>(m: &Matrix<T>, tol: T) -> bool {
    (0..m.rows()).all(|i| {
        let r: T = (0..m.cols()).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
        r <= m[(i, i)] + tol
    })
}

/// Whether the lowest-cluster asymptotics certify the property for all
/// large `t`.
pub fn tail_certificate<T: Real>(s: &SpectralDecomposition<T>, property: Property, tol: T) -> bool {
    if s.dim() == 0 {
        return true;
    }
    let l = reconstruct(s);
    let slack = tol * (T::one() + s.norm_inf());
    match property {
        Property::Positivity => {
            let p = s.lowest_projector();
            off_diagonal_nonpositive(&l, slack) || p.min_entry().unwrap_or_else(T::zero) > tol
        }
        Property::InfContractivity => {
            diagonally_dominant(&l, slack)
                || s.lambda1() > s.zero_tol()
                || s.lowest_projector().op_norm_inf() <= T::one() + tol
        }
        Property::Domination => false,
    }
}

/// Last-violation scan plus bisection for positivity or ∞-contractivity of
/// `e^{−tℒ}`.
pub fn threshold_search<T: Real>(
    s: &SpectralDecomposition<T>,
    property: Property,
    horizon: Option<T>,
    tol: T,
) -> Result<ThresholdReport<T>, SemigroupError> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(s));
    if horizon.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(SemigroupError::BadHorizon(horizon.to_f64_lossy()));
    }
    let margin = |t: T| {
        let m = s.synthesize(0..s.dim(), |l| (-t * l).exp());
        match property {
            Property::Positivity => m.min_entry().unwrap_or_else(T::zero) + tol,
            Property::InfContractivity => T::one() + tol - m.op_norm_inf(),
            Property::Domination => unreachable!("domination uses eventual_domination_threshold"),
        }
    };
    if property == Property::Domination {
        return Err(SemigroupError::Dimension {
            expected: 2,
            got: 1,
        });
    }
    let (t0, bracket, holds_everywhere) = scan(horizon, margin);
    Ok(ThresholdReport {
        property,
        t0,
        bracket,
        horizon,
        entry_tol: tol,
        holds_everywhere,
        certified_tail: tail_certificate(s, property, tol),
    })
}

fn domination_margin<T: Real>(
    a: &SpectralDecomposition<T>,
    b: &SpectralDecomposition<T>,
    t: T,
) -> T {
    let ea = a.synthesize(0..a.dim(), |l| (-t * l).exp());
    let eb = b.synthesize(0..b.dim(), |l| (-t * l).exp());
    (&ea - &eb.abs()).min_entry().unwrap_or_else(T::zero)
}

fn check_same_dim<T: Real>(
    a: &SpectralDecomposition<T>,
    b: &SpectralDecomposition<T>,
) -> Result<(), SemigroupError> {
    if a.dim() != b.dim() {
        return Err(SemigroupError::Dimension {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

/// Whether `e^{−tℒ_A}` dominates `e^{−tℒ_B}` at time `t`, i.e.
/// `|e^{−tℒ_B}| ≤ e^{−tℒ_A}` entrywise.
pub fn domination<T: Real>(
    a: &SpectralDecomposition<T>,
    b: &SpectralDecomposition<T>,
    t: T,
    tol: T,
) -> Result<bool, SemigroupError> {
    check_same_dim(a, b)?;
    check_time(t)?;
    Ok(domination_margin(a, b, t) >= -tol)
}

/// Threshold from which `e^{−tℒ_A}` dominates `e^{−tℒ_B}`.
pub fn eventual_domination_threshold<T: Real>(
    a: &SpectralDecomposition<T>,
    b: &SpectralDecomposition<T>,
    horizon: Option<T>,
    tol: T,
) -> Result<ThresholdReport<T>, SemigroupError> {
    check_same_dim(a, b)?;
    let horizon = horizon.unwrap_or_else(|| {
        let mut gaps: Vec<T> = [a.spectral_gap(), b.spectral_gap()].into_iter().flatten().collect();
        let d = (b.lambda1() - a.lambda1()).abs();
        if d > a.tolerances().cluster {
            gaps.push(d);
        }
        match gaps.into_iter().reduce(T::min) {
            Some(g) if g > T::zero() => T::lit(10.0) / g,
            _ => T::lit(10.0),
        }
    });
    if horizon.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(SemigroupError::BadHorizon(horizon.to_f64_lossy()));
    }
    let (t0, bracket, holds_everywhere) = scan(horizon, |t| domination_margin(a, b, t) + tol);
    let pa = a.lowest_projector();
    let certified_tail = a.dim() == 0
        || (pa.min_entry().unwrap_or_else(T::zero) > tol
            && b.lambda1() > a.lambda1() + a.tolerances().cluster);
    Ok(ThresholdReport {
        property: Property::Domination,
        t0,
        bracket,
        horizon,
        entry_tol: tol,
        holds_everywhere,
        certified_tail,
    })
}
