//! Scalar abstraction for the floating-point side of the toolkit.
//!
//! Everything combinatorial is exact (`i64`); eigenvalues, heat operators and
//! the spectral classification criteria are generic over [`Real`], which is
//! implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable by the spectral and semigroup code.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Converts an `f64` constant, panicking only if the target type cannot
    /// represent finite values (never the case for `f32`/`f64`).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer fits in float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Tolerances used by the spectral criteria.
///
/// The `f64` values are the working defaults; coarser scalars get floors
/// proportional to their machine epsilon.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances<T> {
    /// Relative kernel tolerance: `λ ≤ zero_rel · (1 + ‖L‖∞)` counts as zero.
    pub zero_rel: T,
    /// Absolute gap below which consecutive eigenvalues form one cluster.
    pub cluster: T,
    /// Sign tests on matrix entries (`min_entry ≥ −entry`).
    pub entry: T,
    /// Norm tests (`‖·‖∞ ≤ 1 + norm`).
    pub norm: T,
}

impl<T: Real> Tolerances<T> {
    pub fn standard() -> Self {
        let eps = T::epsilon();
        let floor = |base: f64, factor: f64| {
            let b = T::lit(base);
            let e = eps * T::lit(factor);
            if e > b {
                e
            } else {
                b
            }
        };
        Tolerances {
            zero_rel: floor(1e-9, 1e3),
            cluster: floor(1e-7, 1e4),
            entry: floor(1e-9, 1e3),
            norm: floor(1e-9, 1e3),
        }
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self::standard()
    }
}
