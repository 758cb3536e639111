//! Scalar fields the engine can run over.
//!
//! Everything structural (the Frobenius data, signs, combinatorial factors) is
//! rational; a [`Scalar`] only needs to accept rationals and do field arithmetic.

use std::fmt::Debug;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// Gaussian rationals `a + b i`.
pub type GaussQ = Complex<BigRational>;

pub trait Scalar:
    Num
    + Neg<Output = Self>
    + Clone
    + Debug
    + Send
    + Sync
    + 'static
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_q(q: &Q) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(v)))
    }

    /// Exact rendering, `"num/den"` for rationals.
    fn exact_repr(&self) -> String;

    fn mul_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r *= other;
        r
    }

    /// Multiplicative inverse, `None` on zero.
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Scalar for BigRational {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }

    fn exact_repr(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for GaussQ {
    fn from_q(q: &Q) -> Self {
        Complex::new(q.clone(), Q::zero())
    }

    fn exact_repr(&self) -> String {
        format!("{}+{}i", self.re.exact_repr(), self.im.exact_repr())
    }
}

impl Scalar for f64 {
    fn from_q(q: &Q) -> Self {
        use num_traits::ToPrimitive;
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn exact_repr(&self) -> String {
        format!("{self:?}")
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"num/den"`, `"num"` or a JSON integer-looking string.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// `(-1)^k` as a scalar.
pub fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

/// `x^k` for integer `k`, negative powers through the inverse.
pub fn powi<S: Scalar>(x: &S, k: i64) -> S {
    let base = if k < 0 {
        x.try_inv().expect("negative power of zero")
    } else {
        x.clone()
    };
    let mut r = S::one();
    for _ in 0..k.unsigned_abs() {
        r *= &base;
    }
    r
}

pub fn factorial(n: u64) -> Q {
    let mut r = BigInt::one();
    for i in 2..=n {
        r *= i;
    }
    Q::from_integer(r)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_q("3/6"), Some(qfrac(1, 2)));
        assert_eq!(parse_q("-4"), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(qfrac(-2, 4).exact_repr(), "-1/2");
        assert_eq!(q(5).exact_repr(), "5/1");
    }

    #[test]
    fn gaussian_unit() {
        let i = GaussQ::new(q(0), q(1));
        assert_eq!(i.clone() * i, GaussQ::from_i64(-1));
        assert_eq!(powi(&GaussQ::new(q(0), q(1)), -1), GaussQ::new(q(0), q(-1)));
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), q(120));
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(powi(&q(2), -3), qfrac(1, 8));
    }
}
