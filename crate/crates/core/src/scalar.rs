//! Scalar fields the matrix kernel is generic over.
//!
//! Every scalar is a complex number `Complex<R>` over some real field `R`.
//! Exact mode uses `R = BigRational` (the Gaussian rationals), float mode
//! uses `R = f64` (or `f32`).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Whether arithmetic is exact or IEEE floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        })
    }
}

/// The involution `*` of the matrix ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    Transpose,
    ConjugateTranspose,
}

impl Involution {
    pub const ALL: [Involution; 2] = [Involution::Transpose, Involution::ConjugateTranspose];

    /// The involution restricted to scalars.
    #[inline]
    pub fn apply<T: Scalar>(self, z: &T) -> T {
        match self {
            Involution::Transpose => z.clone(),
            Involution::ConjugateTranspose => z.conj(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Involution::Transpose => "transpose",
            Involution::ConjugateTranspose => "conjugate_transpose",
        }
    }
}

impl Display for Involution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Involution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "transpose" => Ok(Involution::Transpose),
            "conjugate_transpose" | "conjugate-transpose" => Ok(Involution::ConjugateTranspose),
            other => Err(format!("unknown involution `{other}`")),
        }
    }
}

/// Scalar mode plus involution: the ring a matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    pub scalar_mode: ScalarMode,
    pub involution: Involution,
}

/// A real field underlying the complex scalars.
pub trait RealScalar: Clone + Debug + PartialEq + Num + Signed + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn approx_f64(&self) -> f64;
    fn from_i64(v: i64) -> Self;
}

/// Real fields whose arithmetic is exact, so `is_zero` is a true zero test.
pub trait ExactReal: RealScalar + Display {}

/// Real floating-point fields.
pub trait FloatReal: RealScalar + Float + Display {
    fn from_f64(v: f64) -> Self;
}

impl<I> RealScalar for Ratio<I>
where
    I: Clone + Debug + Integer + Signed + ToPrimitive + From<i64> + Send + Sync + 'static,
{
    const MODE: ScalarMode = ScalarMode::Exact;

    fn approx_f64(&self) -> f64 {
        ratio_to_f64(self.numer().clone(), self.denom().clone())
    }

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(I::from(v))
    }
}

impl<I> ExactReal for Ratio<I> where
    I: Clone + Debug + Display + Integer + Signed + ToPrimitive + From<i64> + Send + Sync + 'static
{
}

fn ratio_to_f64<I: Integer + Signed + ToPrimitive + Clone>(numer: I, denom: I) -> f64 {
    match (numer.to_f64(), denom.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        // Huge numerators/denominators: scale both down by the same power of two.
        _ => {
            let two = I::one() + I::one();
            let (mut n, mut d) = (numer, denom);
            while n.to_f64().map_or(true, |v| !v.is_finite()) || d.to_f64().map_or(true, |v| !v.is_finite()) {
                n = n / two.clone();
                d = d / two.clone();
                if d.is_zero() {
                    return if n.is_zero() { 0.0 } else { f64::INFINITY * n.signum().to_f64().unwrap_or(1.0) };
                }
            }
            n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
        }
    }
}

macro_rules! float_real {
    ($t:ty) => {
        impl RealScalar for $t {
            const MODE: ScalarMode = ScalarMode::Float;

            fn approx_f64(&self) -> f64 {
                *self as f64
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }

        impl FloatReal for $t {
            fn from_f64(v: f64) -> Self {
                v as $t
            }
        }
    };
}

float_real!(f64);
float_real!(f32);

/// A complex scalar `re + i·im` over a real field.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + 'static
{
    type Real: RealScalar;

    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn conj(&self) -> Self;

    fn mode() -> ScalarMode {
        <Self::Real as RealScalar>::MODE
    }

    fn from_i64(v: i64) -> Self {
        Self::from_parts(Self::Real::from_i64(v), Self::Real::zero())
    }

    fn imag_unit() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }

    /// `|z|²` as an f64, for norms and reporting.
    fn norm_sqr_f64(&self) -> f64 {
        let (r, i) = (self.re().approx_f64(), self.im().approx_f64());
        r * r + i * i
    }
}

impl<R: RealScalar> Scalar for Complex<R> {
    type Real = R;

    #[inline]
    fn re(&self) -> R {
        self.re.clone()
    }

    #[inline]
    fn im(&self) -> R {
        self.im.clone()
    }

    #[inline]
    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }

    #[inline]
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

/// Complex scalars over an exact real field; zero tests are decisive.
pub trait ExactScalar: Scalar {}

impl<R: ExactReal> ExactScalar for Complex<R> {}

/// Gaussian rational `p/q + (r/s)·i` with arbitrary-precision parts.
pub type GaussianRational = Complex<Ratio<BigInt>>;

/// Build a Gaussian rational from integer real and imaginary parts.
pub fn gaussian(re: i64, im: i64) -> GaussianRational {
    Complex::new(Ratio::from_integer(re.into()), Ratio::from_integer(im.into()))
}

/// Build a Gaussian rational `(re_n/re_d) + (im_n/im_d)·i`.
pub fn gaussian_ratio(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
    Complex::new(Ratio::new(re_n.into(), re_d.into()), Ratio::new(im_n.into(), im_d.into()))
}

/// Cast any scalar to a complex float of the given precision.
pub fn to_float<T: Scalar, F: FloatReal>(z: &T) -> Complex<F> {
    Complex::new(F::from_f64(z.re().approx_f64()), F::from_f64(z.im().approx_f64()))
}
