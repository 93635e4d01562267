//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use serde::{Deserialize, Serialize};

/// Floating point scalar: `f32` or `f64`.
///
/// Tolerances live on the scalar so that generic code picks thresholds that
/// are meaningful for the precision at hand. The `f64` values are the
/// reference tolerances; `f32` uses looser ones.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Default + Send + Sync + Serialize + 'static
{
    /// Row-stochasticity / normalization tolerance used by validation.
    fn tau_stoch() -> Self;
    /// Values with magnitude at or below this count as structural zeros.
    fn tau_zero() -> Self;
    /// Eigenvalue and fixed-point tolerance.
    fn tau_eig() -> Self;
    /// Off-diagonal convergence threshold of the Jacobi eigensolver (relative to the Frobenius norm).
    fn jacobi_threshold() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }
}

impl Scalar for f64 {
    fn tau_stoch() -> Self {
        1e-9
    }
    fn tau_zero() -> Self {
        1e-12
    }
    fn tau_eig() -> Self {
        1e-12
    }
    fn jacobi_threshold() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn tau_stoch() -> Self {
        1e-4
    }
    fn tau_zero() -> Self {
        1e-6
    }
    fn tau_eig() -> Self {
        1e-5
    }
    fn jacobi_threshold() -> Self {
        1e-6
    }
}

/// Base of the logarithm used for every entropy-like quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    /// `log_base(x)` for `x > 0`.
    #[inline]
    pub fn log<T: Scalar>(self, x: T) -> T {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// `-x log x` with the `0 log 0 = 0` convention.
    #[inline]
    pub fn eta<T: Scalar>(self, x: T) -> T {
        if x <= T::zero() {
            T::zero()
        } else {
            -x * self.log(x)
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2" | "bits" => Ok(LogBase::Two),
            "e" | "nats" => Ok(LogBase::E),
            other => Err(format!("unknown log base `{other}` (expected `2` or `e`)")),
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}
