use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in a single indeterminate with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*u^{}", c, e)?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    /// True for a single term `c * u^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `u -> u^factor`.
    pub fn stretch(&self, factor: i64) -> Self {
        assert!(factor > 0, "stretch factor must be positive");
        if factor == 1 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * factor, c.clone()))
                .collect(),
        }
    }

    /// Inverse of [`stretch`](Self::stretch); every exponent must be divisible by `factor`.
    pub fn compress(&self, factor: i64) -> Self {
        assert!(factor > 0, "compress factor must be positive");
        if factor == 1 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert_eq!(e % factor, 0);
                    (e / factor, c.clone())
                })
                .collect(),
        }
    }

    /// gcd of all exponents (0 for the zero polynomial or a constant).
    pub fn exponent_gcd(&self) -> i64 {
        self.terms.keys().fold(0i64, |g, e| g.gcd(e))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `u = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.terms().next().unwrap();
            let inv = c.recip();
            return Some(self.scale(&inv).shift(-e));
        }
        let a_min = self.min_exp().unwrap();
        let b_min = divisor.min_exp().unwrap();
        let a = self.shift(-a_min);
        let b = divisor.shift(-b_min);
        let (q, r) = a.poly_div_rem(&b);
        if r.is_zero() {
            Some(q.shift(a_min - b_min))
        } else {
            None
        }
    }

    /// Euclidean division of ordinary polynomials (all exponents >= 0).
    fn poly_div_rem(&self, divisor: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let db = divisor.max_exp().expect("nonzero divisor");
        let lb = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(dr) = rem.max_exp() {
            if dr < db {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lb;
            let s = dr - db;
            for (e, x) in divisor.terms() {
                rem.add_term(e + s, -(x * &c));
            }
            quot.add_term(s, c);
        }
        (quot, rem)
    }

    /// Monic greatest common divisor of `a * u^(-min a)` and `b * u^(-min b)`.
    ///
    /// Powers of `u` are units in the Laurent ring, so the result always has a
    /// nonzero constant term.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() {
            return b.normalized_monic();
        }
        if b.is_zero() {
            return a.normalized_monic();
        }
        let a = a.shift(-a.min_exp().unwrap());
        let b = b.shift(-b.min_exp().unwrap());
        if a.is_constant() || b.is_constant() {
            return LaurentPoly::one();
        }
        let stride = a.exponent_gcd().gcd(&b.exponent_gcd());
        let a = a.compress(stride);
        let b = b.compress(stride);
        let (a, b) = (to_primitive_dense(&a), to_primitive_dense(&b));
        if coprime_mod_p(&a, &b) {
            return LaurentPoly::one();
        }
        let g = primitive_prs_gcd(a, b);
        from_dense(&g).stretch(stride).normalized_monic()
    }

    fn normalized_monic(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let p = self.shift(-self.min_exp().unwrap());
        let lc = p.leading_coeff().unwrap().recip();
        p.scale(&lc)
    }
}

fn to_primitive_dense(p: &LaurentPoly) -> Vec<BigInt> {
    let deg = p.max_exp().unwrap() as usize;
    let lcm = p
        .terms
        .values()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut v = vec![BigInt::zero(); deg + 1];
    for (e, c) in &p.terms {
        v[*e as usize] = c.numer() * (&lcm / c.denom());
    }
    primitive_part(v)
}

fn from_dense(v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, BigRational::from_integer(c.clone()))),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let content = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return v;
    }
    let negate = v.last().is_some_and(|c| c.is_negative());
    for c in v.iter_mut() {
        *c = &*c / &content;
        if negate {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut a);
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let la = a[da].clone();
        for c in a.iter_mut() {
            *c *= lb;
        }
        let s = da - db;
        for (i, bc) in b.iter().enumerate() {
            a[i + s] -= &la * bc;
        }
        trim(&mut a);
    }
    a
}

const GCD_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GCD_PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, GCD_PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce_mod(v: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(GCD_PRIME);
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| u64::try_from(c.mod_floor(&p)).expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// True when the images mod a large prime are coprime. Only trusted when the
/// prime keeps both degrees, so a constant image gcd proves the true gcd is 1.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.len() != a.len() || y.len() != b.len() {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let inv = inv_mod(*y.last().unwrap());
        while x.len() >= y.len() {
            let f = mul_mod(*x.last().unwrap(), inv);
            let s = x.len() - y.len();
            for (i, c) in y.iter().enumerate() {
                x[i + s] = (x[i + s] + GCD_PRIME - mul_mod(f, *c)) % GCD_PRIME;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    y.len() == 1
}

/// Primitive polynomial remainder sequence; inputs and output are primitive.
fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive_part(pseudo_rem(a, &b));
        a = b;
        b = r;
    }
    primitive_part(a)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in small.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    }

    #[test]
    fn long_division_of_cyclotomic_quotient() {
        // (1 - x^6) / (1 - x^2) = 1 + x^2 + x^4
        let a = p(&[(0, 1), (6, -1)]);
        let b = p(&[(0, 1), (2, -1)]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(0, 1), (2, 1), (4, 1)]));
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn laurent_division_tracks_offsets() {
        let a = p(&[(-3, 1), (1, -1)]); // u^-3 (1 - u^4)
        let b = p(&[(5, 1), (7, -1)]); // u^5 (1 - u^2)
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(-8, 1), (-6, 1)]));
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[(0, 1), (1, 1)]); // 1 + u
        let g = p(&[(0, 2), (1, -3), (3, 1)]);
        let h = p(&[(0, -1), (2, 5)]);
        let a = &f * &g;
        let b = &f * &h;
        let d = LaurentPoly::gcd(&a, &b);
        assert_eq!(d, p(&[(0, 1), (1, 1)]));
        assert!(LaurentPoly::gcd(&g, &h).is_one());
    }

    #[test]
    fn modular_coprimality_never_claims_a_shared_factor() {
        let dense = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        // (1+u)(2-3u+u^3) and (1+u)(5u^2-1)
        assert!(!coprime_mod_p(
            &dense(&[2, -1, -3, 1, 1]),
            &dense(&[-1, -1, 5, 5])
        ));
        assert!(coprime_mod_p(&dense(&[2, -3, 0, 1]), &dense(&[-1, 0, 5])));
        // a leading coefficient divisible by the prime disables the shortcut
        let big = BigInt::from(GCD_PRIME);
        assert!(!coprime_mod_p(&[BigInt::from(1), big], &dense(&[1, 1])));
    }

    #[test]
    fn gcd_uses_exponent_stride() {
        let a = p(&[(0, 1), (12, -1)]);
        let b = p(&[(0, 1), (8, -1)]);
        // gcd(1 - v^3, 1 - v^2) = v - 1 with v = u^4
        assert_eq!(LaurentPoly::gcd(&a, &b), p(&[(0, -1), (4, 1)]));
    }

    #[test]
    fn gcd_ignores_unit_powers() {
        let a = p(&[(3, 1)]);
        let b = p(&[(-2, 1), (0, 1)]);
        assert!(LaurentPoly::gcd(&a, &b).is_one());
    }
}
