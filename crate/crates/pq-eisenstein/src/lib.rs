//! Eisenstein elements of weight-two modular symbols for `Γ0(pq)`.
//!
//! The exact kernels (Dedekind sums, periods, coefficient tables, boundary
//! divisors, Manin presentations) are generic over an integer type `I` and
//! work with `Ratio<I>`. The numeric oracle is generic over a float type.
//! The aliases below fix the defaults used by the CLI and the test suites.

pub mod arith;
pub mod boundary;
pub mod eisenstein;
pub mod error;
pub mod homology;
pub mod mat2;
pub mod oracle;
pub mod p1;
pub mod periods;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use error::{Error, Result};

/// Integer types usable by the exact kernels.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lossless conversion from a machine integer.
    fn of(x: i64) -> Self {
        Self::from_i64(x).expect("i64 fits every supported integer type")
    }
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Arbitrary-precision integer.
pub type BigInt = num_bigint::BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::Ratio<BigInt>;
/// Default float for the numeric oracle.
pub type Real = f64;
/// Default complex type for the numeric oracle.
pub type Complex = num_complex::Complex<Real>;
/// Unimodular matrix over arbitrary-precision integers.
pub type Matrix = mat2::Mat2<BigInt>;
/// Exact symbol sum with rational coefficients.
pub type Symbols = eisenstein::SymbolSum<Rational>;
/// Exact cusp divisor.
pub type Divisor = boundary::CuspDivisor<Rational>;

pub use boundary::CuspClass;
pub use eisenstein::SymbolSum;
pub use mat2::Mat2;
pub use p1::{Level, P1Point};
pub use periods::Series;
