use nalgebra::{Complex, RealField};
use num_traits::ToPrimitive;

/// Real floating-point type the analytic and linear-algebra core is written against.
///
/// `RealField` brings the num-traits numeric tower plus what the dense Hermitian
/// eigensolver needs. Only `f32` and `f64` implement it.
pub trait Scalar: RealField + Copy + ToPrimitive {
    /// Absolute tolerance for normalization and unit-norm checks on inputs.
    fn validation_tol() -> Self;
}

impl Scalar for f64 {
    fn validation_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn validation_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Lossy conversion to `f64`, used for reporting and formatting.
#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    ToPrimitive::to_f64(&x).unwrap_or(f64::NAN)
}

#[inline]
pub fn from_usize<T: Scalar>(n: usize) -> T {
    lit(n as f64)
}

/// Lifts a real amplitude vector into the complex representation used by the QFI routines.
pub fn to_complex<T: Scalar>(amps: &[T]) -> Vec<Complex<T>> {
    amps.iter().map(|&a| Complex::new(a, T::zero())).collect()
}

/// `|c|` for generic `T` (num-complex's `norm` needs `Float`).
#[inline]
pub fn cabs<T: Scalar>(c: Complex<T>) -> T {
    nalgebra::ComplexField::modulus(c)
}

/// `sin(πx)` with exact zeros at integers and exact ±1 at half-integers.
pub fn sin_pi<T: Scalar>(x: T) -> T {
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    // reduce to [0, 2)
    let mut r = x - two * (x / two).floor();
    let mut sign = T::one();
    if r >= T::one() {
        r -= T::one();
        sign = -sign;
    }
    // r in [0, 1): sin(πr) = sin(π(1 - r))
    if r > half {
        r = T::one() - r;
    }
    if r == T::zero() {
        return T::zero();
    }
    if r == half {
        return sign;
    }
    sign * (T::pi() * r).sin()
}

/// `cos(πx)` with the same exactness guarantees as [`sin_pi`].
pub fn cos_pi<T: Scalar>(x: T) -> T {
    sin_pi(x + lit::<T>(0.5))
}
