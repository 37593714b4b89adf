use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The three rank-2 unital real algebras generated by `{1, ε}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `ε² = -1`
    Complex,
    /// `ε² = 0`
    Dual,
    /// `ε² = 1`
    Paracomplex,
}

impl AlgebraKind {
    pub fn from_eps_square(sq: i8) -> Option<Self> {
        match sq {
            -1 => Some(AlgebraKind::Complex),
            0 => Some(AlgebraKind::Dual),
            1 => Some(AlgebraKind::Paracomplex),
            _ => None,
        }
    }

    pub fn eps_square(self) -> i8 {
        match self {
            AlgebraKind::Complex => -1,
            AlgebraKind::Dual => 0,
            AlgebraKind::Paracomplex => 1,
        }
    }

    /// Structure constants `C[k][i][j]` in the basis `(1, ε)`: the
    /// coefficient of basis element `k` in `b_i · b_j`.
    pub fn structure_constants(self) -> [[[i8; 2]; 2]; 2] {
        let s = self.eps_square();
        [[[1, 0], [0, s]], [[0, 1], [1, 0]]]
    }

    /// Only the paracomplex algebra has a nontrivial pair of idempotents.
    pub fn has_idempotent_pair(self) -> bool {
        self == AlgebraKind::Paracomplex
    }
}

/// Idempotent sheet selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn name(self) -> &'static str {
        match self {
            Sheet::Plus => "plus",
            Sheet::Minus => "minus",
        }
    }
}

/// Paracomplex number in idempotent coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Paracomplex<T> {
    plus: T,
    minus: T,
}

/// `(x, y) ↦ (x + y, x − y)`.
pub fn to_idempotent<T: Scalar>(x: T, y: T) -> (T, T) {
    (x + y, x - y)
}

/// Inverse of [`to_idempotent`].
pub fn from_idempotent<T: Scalar>(plus: T, minus: T) -> (T, T) {
    let two = T::two();
    ((plus + minus) / two, (plus - minus) / two)
}

impl<T: Scalar> Paracomplex<T> {
    /// `x + εy`.
    pub fn new(x: T, y: T) -> Self {
        let (plus, minus) = to_idempotent(x, y);
        Paracomplex { plus, minus }
    }

    pub fn from_idempotent(plus: T, minus: T) -> Self {
        Paracomplex { plus, minus }
    }

    pub fn real(x: T) -> Self {
        Paracomplex { plus: x, minus: x }
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn eps() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// `e₊ = (1 + ε)/2`.
    pub fn e_plus() -> Self {
        Paracomplex { plus: T::one(), minus: T::zero() }
    }

    /// `e₋ = (1 − ε)/2`.
    pub fn e_minus() -> Self {
        Paracomplex { plus: T::zero(), minus: T::one() }
    }

    pub fn plus(&self) -> T {
        self.plus
    }

    pub fn minus(&self) -> T {
        self.minus
    }

    pub fn sheet(&self, sheet: Sheet) -> T {
        match sheet {
            Sheet::Plus => self.plus,
            Sheet::Minus => self.minus,
        }
    }

    /// Real part `x`.
    pub fn x(&self) -> T {
        from_idempotent(self.plus, self.minus).0
    }

    /// ε-part `y`.
    pub fn y(&self) -> T {
        from_idempotent(self.plus, self.minus).1
    }

    pub fn conj(&self) -> Self {
        Paracomplex { plus: self.minus, minus: self.plus }
    }

    /// `z z̄ = x² − y² = z₊ z₋`.
    pub fn norm(&self) -> T {
        self.plus * self.minus
    }

    pub fn scale(&self, k: T) -> Self {
        Paracomplex { plus: self.plus * k, minus: self.minus * k }
    }

    fn magnitude(&self) -> T {
        self.plus.abs() + self.minus.abs()
    }

    fn negligible_parts(&self) -> (bool, bool) {
        let scale = self.magnitude();
        (T::is_negligible(self.plus, scale), T::is_negligible(self.minus, scale))
    }

    pub fn is_zero(&self) -> bool {
        let (p, m) = self.negligible_parts();
        p && m
    }

    /// Exactly one idempotent coordinate vanishes.
    pub fn is_zero_divisor(&self) -> bool {
        let (p, m) = self.negligible_parts();
        p != m
    }

    pub fn is_invertible(&self) -> bool {
        let (p, m) = self.negligible_parts();
        !p && !m
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Paracomplex { plus: T::one() / self.plus, minus: T::one() / self.minus })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Paracomplex<U> {
        Paracomplex { plus: f(self.plus), minus: f(self.minus) }
    }

    /// Renders `(z₊|z₋)`.
    pub fn to_idempotent_string(&self) -> String
    where
        T: fmt::Display,
    {
        format!("({}|{})", self.plus, self.minus)
    }
}

impl<T: Scalar> Add for Paracomplex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Paracomplex { plus: self.plus + rhs.plus, minus: self.minus + rhs.minus }
    }
}

impl<T: Scalar> Sub for Paracomplex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Paracomplex { plus: self.plus - rhs.plus, minus: self.minus - rhs.minus }
    }
}

impl<T: Scalar> Mul for Paracomplex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Paracomplex { plus: self.plus * rhs.plus, minus: self.minus * rhs.minus }
    }
}

impl<T: Scalar> Neg for Paracomplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Paracomplex { plus: -self.plus, minus: -self.minus }
    }
}

impl<T: Scalar> AddAssign for Paracomplex<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar> SubAssign for Paracomplex<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Scalar> MulAssign for Paracomplex<T> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<T: Scalar> Sum for Paracomplex<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Paracomplex<T> {
    /// `x+yε`; the alternate flag (`{:#}`) renders `(z₊|z₋)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            return write!(f, "({}|{})", self.plus, self.minus);
        }
        let (x, y) = from_idempotent(self.plus, self.minus);
        if y.is_negative() {
            write!(f, "{}-{}ε", x, y.abs())
        } else {
            write!(f, "{}+{}ε", x, y.abs())
        }
    }
}

fn parse_scalar<T: FromStr>(s: &str) -> Result<T> {
    s.parse::<T>().map_err(|_| Error::Parse(format!("invalid number `{s}`")))
}

impl<T: Scalar + FromStr> FromStr for Paracomplex<T> {
    type Err = Error;

    /// Accepts `x+yε`, `x-yε`, `yε`, `x` and `(z₊|z₋)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (p, m) = inner
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("expected (plus|minus), got `{s}`")))?;
            return Ok(Self::from_idempotent(parse_scalar(p)?, parse_scalar(m)?));
        }
        let Some(body) = s.strip_suffix('ε') else {
            return Ok(Self::real(parse_scalar(&s)?));
        };
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (x_str, y_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let x = if x_str.is_empty() { T::zero() } else { parse_scalar(x_str)? };
        let y = match y_str {
            "" | "+" => T::one(),
            "-" => -T::one(),
            other => parse_scalar(other)?,
        };
        Ok(Self::new(x, y))
    }
}
