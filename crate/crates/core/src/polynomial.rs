//! Dense polynomials with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used as an evaluation or bisection point.
///
/// Always stored in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(BigRational);

impl RationalPoint {
    /// # Panics
    /// If `denominator` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Self(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// Midpoint `(self + other) / 2`; dyadic inputs give a dyadic output.
    pub fn midpoint(&self, other: &Self) -> Self {
        Self((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn to_f64(&self) -> f64 {
        crate::numeric::ratio_to_f64(self.numerator(), self.denominator())
    }
}

impl From<BigRational> for RationalPoint {
    fn from(value: BigRational) -> Self {
        Self(value)
    }
}

impl Add for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(&self.0 + &rhs.0)
    }
}

impl Sub for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(&self.0 - &rhs.0)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Polynomial `sum_i coeffs[i] x^i` over the integers.
///
/// Canonical form: no trailing zero coefficients, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_unsigned(coeffs: &[BigUint]) -> Self {
        Self::new(coeffs.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Multiplicity of the root at zero: index of the lowest nonzero
    /// coefficient. Zero for the zero polynomial.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x^m p(x)`.
    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `p(x) / x^m`, rejected unless the lowest `m` coefficients vanish.
    pub fn divide_by_x_power(&self, m: usize) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().take(m).position(|c| !c.is_zero()) {
            return Err(Error::NotDivisibleByXPower { index, power: m });
        }
        if self.coeffs.len() <= m {
            return Ok(Self::zero());
        }
        Ok(Self {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `(x + x D) p = x p + x p'`, the operator taking `S_n(x)` to `S_{n+1}(x)`.
    pub fn apply_x_plus_xd(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // coefficient of x^k in x p + x p' is p_{k-1} + k p_k
        let d = self.coeffs.len();
        let mut out = Vec::with_capacity(d + 1);
        out.push(BigInt::zero());
        for k in 1..=d {
            let mut c = self.coeffs[k - 1].clone();
            if k < d {
                c += &self.coeffs[k] * BigInt::from(k);
            }
            out.push(c);
        }
        Self::new(out)
    }

    /// Exact value at a rational point.
    pub fn eval_at_rational(&self, r: &RationalPoint) -> RationalPoint {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r.as_ratio() + BigRational::from_integer(c.clone());
        }
        RationalPoint(acc)
    }

    pub fn eval_at_integer(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Sign of `p(r)` without forming rationals: with `r = a/b`, `b > 0`,
    /// `b^deg p(a/b) = sum_i c_i a^i b^(deg-i)` has the same sign.
    pub fn sign_at(&self, r: &RationalPoint) -> Sign {
        let a = r.numerator();
        let b = r.denominator();
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::one();
        // Horner in a with the matching power of b on each coefficient
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &b_pow;
            b_pow *= b;
        }
        acc.sign()
    }

    /// Sign of `p(x)` as `x -> +inf` (`positive = true`) or `x -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        match self.coeffs.last() {
            None => Sign::NoSign,
            Some(lead) => {
                let odd = (self.coeffs.len() - 1) % 2 == 1;
                if positive || !odd {
                    lead.sign()
                } else {
                    -lead.sign()
                }
            }
        }
    }

    /// Gcd of the coefficients (non-negative, zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `p / content(p)` with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Divides out the positive content, keeping the sign of every coefficient.
    pub fn remove_positive_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder `lc(d)^(deg p - deg d + 1) p mod d`, together with
    /// the exponent used. Returns `p` unchanged when `deg p < deg d`.
    ///
    /// # Panics
    /// If `d` is zero.
    pub fn pseudo_remainder(&self, d: &Self) -> (Self, u32) {
        let dd = d.degree().expect("pseudo-division by the zero polynomial");
        let Some(dp) = self.degree() else {
            return (Self::zero(), 0);
        };
        if dp < dd {
            return (self.clone(), 0);
        }
        let lead = d.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        for top in (dd..=dp).rev() {
            let t = r[top].clone();
            for c in r.iter_mut().take(top + 1) {
                *c *= lead;
            }
            if !t.is_zero() {
                let offset = top - dd;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[offset + j] -= &t * dc;
                }
            }
            steps += 1;
            r.truncate(top);
        }
        (Self::new(r), steps)
    }

    /// Exact quotient `self / d` over the integers, `None` unless `d` divides
    /// `self` in `Z[x]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(dp) = self.degree() else {
            return Some(Self::zero());
        };
        if dp < dd {
            return None;
        }
        let lead = d.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); dp - dd + 1];
        for top in (dd..=dp).rev() {
            let (quot, rem) = r[top].div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            if !quot.is_zero() {
                let offset = top - dd;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[offset + j] -= &quot * dc;
                }
            }
            q[top - dd] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor, primitive with positive leading coefficient,
    /// via the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_remainder(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Expands `sum_k weights[k] x_(k)` in the monomial basis, where
    /// `x_(k) = x (x-1) ... (x-k+1)`.
    pub fn falling_factorial_combination(weights: &[BigInt]) -> Self {
        let mut result = vec![BigInt::zero(); weights.len()];
        // falling holds x_(k) while iterating k
        let mut falling = vec![BigInt::one()];
        for (k, w) in weights.iter().enumerate() {
            if k > 0 {
                // multiply by (x - (k-1))
                let shift = BigInt::from(k - 1);
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (i, c) in falling.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * &shift;
                }
                falling = next;
            }
            if !w.is_zero() {
                for (i, c) in falling.iter().enumerate() {
                    result[i] += w * c;
                }
            }
        }
        Self::new(result)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
