//! Exact scalars.

use num_complex::Complex;
use num_rational::Ratio;

/// Reduced fraction with a positive denominator.
pub type Rational = Ratio<i128>;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

#[inline]
pub fn rat(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

#[inline]
pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

#[inline]
pub fn real(q: Rational) -> GaussianRational {
    Complex::new(q, int(0))
}

/// The imaginary unit.
#[inline]
pub fn imag_unit() -> GaussianRational {
    Complex::new(int(0), int(1))
}
