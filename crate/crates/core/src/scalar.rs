//! The number field tensors live in: real (`f64`) or complex (`Complex64`).

use std::fmt::Debug;
use std::ops::{AddAssign, Div, MulAssign, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + AddAssign
    + MulAssign
    + Sub<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: Field;

    fn from_real(x: f64) -> Self;

    /// Builds a scalar from real and imaginary parts. Real scalars reject a
    /// nonzero imaginary part.
    fn from_parts(re: f64, im: f64) -> Option<Self>;

    fn parts(self) -> (f64, f64);

    fn conj(self) -> Self;

    /// Absolute value (complex modulus).
    fn modulus(self) -> f64;

    /// Uniform on [-1, 1] for reals, uniform on the closed unit disk for
    /// complex numbers.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;

    fn from_real(x: f64) -> Self {
        x
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }

    fn parts(self) -> (f64, f64) {
        (self, 0.0)
    }

    fn conj(self) -> Self {
        self
    }

    fn modulus(self) -> f64 {
        self.abs()
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-1.0..=1.0)
    }
}

impl Scalar for Complex64 {
    const FIELD: Field = Field::Complex;

    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex64::new(re, im))
    }

    fn parts(self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn conj(self) -> Self {
        Complex64::conj(&self)
    }

    fn modulus(self) -> f64 {
        self.norm()
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let re: f64 = rng.gen_range(-1.0..=1.0);
            let im: f64 = rng.gen_range(-1.0..=1.0);
            if re * re + im * im <= 1.0 {
                return Complex64::new(re, im);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn real_rejects_imaginary_part() {
        assert_eq!(f64::from_parts(1.5, 0.0), Some(1.5));
        assert_eq!(f64::from_parts(1.5, 0.1), None);
    }

    #[test]
    fn complex_samples_stay_in_disk() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let z = Complex64::sample_unit(&mut rng);
            assert!(z.norm() <= 1.0);
        }
    }
}
