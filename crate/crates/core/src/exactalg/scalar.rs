use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::QExponent;
use crate::error::{Error, Result};

/// Element of the field of rational functions in `q^(1/s)`.
///
/// `num` and `den` are Laurent polynomials in the indeterminate `q^(1/scale)`.
/// Values are always kept in canonical form:
///
/// * `gcd(num, den) = 1` (up to units),
/// * `den` is monic with lowest exponent 0,
/// * `scale` is the smallest positive integer for which all exponents are integral.
///
/// Two scalars are equal exactly when their fields are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: LaurentPoly,
    den: LaurentPoly,
    scale: i64,
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
            scale: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
            scale: 1,
        }
    }

    /// `q^e`.
    pub fn q_pow(e: QExponent) -> Self {
        Self::q_pow_scaled(BigRational::one(), e)
    }

    /// `c * q^e`.
    pub fn q_pow_scaled(c: BigRational, e: QExponent) -> Self {
        let r = e.value();
        Self::from_parts_coprime(
            LaurentPoly::monomial(c, *r.numer()),
            LaurentPoly::one(),
            *r.denom(),
        )
    }

    /// `q^e` for an integer exponent.
    pub fn q_pow_int(e: i64) -> Self {
        Self::q_pow(QExponent::from_int(e))
    }

    /// `1 - q^e`.
    pub fn one_minus_q_pow(e: QExponent) -> Self {
        &Self::one() - &Self::q_pow(e)
    }

    /// Polynomial in `q^(1/scale)`.
    pub fn from_poly(num: LaurentPoly, scale: i64) -> Self {
        Self::from_parts_coprime(num, LaurentPoly::one(), scale)
    }

    /// `num / den` with both polynomials in `q^(1/scale)`.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly, scale: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert!(scale > 0, "scale must be positive");
        Ok(Self::canonical(num, den, scale))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The indeterminate of `numerator()`/`denominator()` is `q^(1/scale)`.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial in `q^(1/scale)`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_q_free(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// Numerator and denominator re-expressed in `q^(1/target)`.
    pub fn lifted(&self, target: i64) -> (LaurentPoly, LaurentPoly) {
        debug_assert_eq!(target % self.scale, 0);
        let f = target / self.scale;
        (self.num.stretch(f), self.den.stretch(f))
    }

    /// Applies only the normalisations that do not need a gcd; the caller
    /// guarantees `num` and `den` are coprime.
    pub(crate) fn from_parts_coprime(num: LaurentPoly, den: LaurentPoly, scale: i64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let dmin = den.min_exp().expect("nonzero denominator");
        let (mut num, mut den) = if dmin != 0 {
            (num.shift(-dmin), den.shift(-dmin))
        } else {
            (num, den)
        };
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let g = scale.gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
        if g > 1 {
            Self {
                num: num.compress(g),
                den: den.compress(g),
                scale: scale / g,
            }
        } else {
            Self { num, den, scale }
        }
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly, scale: i64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() || num.is_monomial() {
            return Self::from_parts_coprime(num, den, scale);
        }
        let g = LaurentPoly::gcd(&num, &den);
        if g.is_one() {
            Self::from_parts_coprime(num, den, scale)
        } else {
            let num = num.div_exact(&g).expect("gcd divides numerator");
            let den = den.div_exact(&g).expect("gcd divides denominator");
            Self::from_parts_coprime(num, den, scale)
        }
    }

    /// Re-runs canonicalisation from scratch; a no-op on valid values.
    pub fn recanonicalized(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone(), self.scale)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts_coprime(
            self.den.clone(),
            self.num.clone(),
            self.scale,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplies by `q^e`, which never needs a gcd.
    pub fn mul_q_pow(&self, e: QExponent) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let r = e.value();
        let s = self.scale.lcm(r.denom());
        let (num, den) = self.lifted(s);
        let shift = r.numer() * (s / r.denom());
        Self::from_parts_coprime(num.shift(shift), den, s)
    }

    pub fn scale_by(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
            scale: self.scale,
        }
    }

    /// Substitutes `q = 1`.
    pub fn evaluate_limit_q1(&self) -> Result<BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne(self.to_string()));
        }
        Ok(self.num.eval_at_one() / d)
    }

    /// Degree range of the numerator as exponents of `q`.
    pub fn q_exponents(&self) -> impl Iterator<Item = Ratio<i64>> + '_ {
        self.num
            .terms()
            .map(move |(e, _)| Ratio::new(e, self.scale))
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let s = self.scale.lcm(&rhs.scale);
        let (an, ad) = self.lifted(s);
        let (bn, bd) = rhs.lifted(s);
        let bn = if negate { -&bn } else { bn };
        if self.is_zero() {
            return Self::from_parts_coprime(bn, bd, s);
        }
        if rhs.is_zero() {
            return self.clone();
        }
        match (ad.is_one(), bd.is_one()) {
            (true, true) => Self::from_parts_coprime(&an + &bn, ad, s),
            (true, false) => Self::from_parts_coprime(&(&an * &bd) + &bn, bd, s),
            (false, true) => Self::from_parts_coprime(&an + &(&bn * &ad), ad, s),
            (false, false) => {
                if ad == bd {
                    return Self::canonical(&an + &bn, ad, s);
                }
                // only factors of gcd(ad, bd) can cancel against the new numerator
                let g = LaurentPoly::gcd(&ad, &bd);
                if g.is_one() {
                    return Self::from_parts_coprime(&(&an * &bd) + &(&bn * &ad), &ad * &bd, s);
                }
                let ad1 = ad.div_exact(&g).expect("gcd divides");
                let bd1 = bd.div_exact(&g).expect("gcd divides");
                let t = &(&an * &bd1) + &(&bn * &ad1);
                if t.is_zero() {
                    return Self::zero();
                }
                let g2 = LaurentPoly::gcd(&t, &g);
                let t = t.div_exact(&g2).expect("gcd divides");
                let g = g.div_exact(&g2).expect("gcd divides");
                Self::from_parts_coprime(t, &(&ad1 * &bd1) * &g, s)
            }
        }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.add_impl(rhs, false)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.add_impl(rhs, true)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
            scale: self.scale,
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        let s = self.scale.lcm(&rhs.scale);
        let (mut an, mut ad) = self.lifted(s);
        let (mut bn, mut bd) = rhs.lifted(s);
        // cross-cancel: gcd(an, ad) = gcd(bn, bd) = 1 already
        if !bd.is_monomial() && !an.is_monomial() {
            let g = LaurentPoly::gcd(&an, &bd);
            if !g.is_one() {
                an = an.div_exact(&g).unwrap();
                bd = bd.div_exact(&g).unwrap();
            }
        }
        if !ad.is_monomial() && !bn.is_monomial() {
            let g = LaurentPoly::gcd(&bn, &ad);
            if !g.is_one() {
                bn = bn.div_exact(&g).unwrap();
                ad = ad.div_exact(&g).unwrap();
            }
        }
        ExactScalar::from_parts_coprime(&an * &bn, &ad * &bd, s)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |a, b| &a + &b)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |a, b| &a * &b)
    }
}

impl From<i64> for ExactScalar {
    fn from(c: i64) -> Self {
        ExactScalar::from_int(c)
    }
}

/// The q-integer `[m] = (q^m - q^-m) / (q - q^-1)`.
pub fn qint(m: i64) -> ExactScalar {
    if m == 0 {
        return ExactScalar::zero();
    }
    let sign = if m < 0 { -1 } else { 1 };
    let a = m.abs();
    let one = BigRational::from_integer(sign.into());
    let poly = LaurentPoly::from_terms((0..a).map(|j| (a - 1 - 2 * j, one.clone())));
    ExactScalar::from_poly(poly, 1)
}
