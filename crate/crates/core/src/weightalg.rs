//! The group algebra of the weight lattice with [`ExactScalar`] coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{qint, ExactScalar, QExponent};
use crate::roota::{lambda_r_weights, weyl_orbit, RootData, Weight};

/// Finite formal sum `sum_beta c_beta e^beta` over weights of a fixed rank.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Weight, ExactScalar>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::exp(&Weight::zero(n))
    }

    /// `e^w`.
    pub fn exp(w: &Weight) -> Self {
        Self::monomial(w.clone(), ExactScalar::one())
    }

    /// `c e^w`.
    pub fn monomial(w: Weight, c: ExactScalar) -> Self {
        let mut out = Self::zero(w.rank());
        out.add_term(w, c);
        out
    }

    /// Scalar `c` times the identity `e^0`.
    pub fn constant(n: usize, c: ExactScalar) -> Self {
        Self::monomial(Weight::zero(n), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, ExactScalar)>>(n: usize, iter: I) -> Self {
        let mut out = Self::zero(n);
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Weight) -> ExactScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Weight, c: ExactScalar) {
        assert_eq!(w.rank(), self.n, "weight rank does not match element rank");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        self.map_coeffs(|x| x * c)
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<F: Fn(&ExactScalar) -> ExactScalar>(&self, f: F) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    /// Applies `f` to every (weight, coefficient) pair, dropping zeros.
    pub fn map_terms<F: Fn(&Weight, &ExactScalar) -> ExactScalar>(&self, f: F) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let v = f(w, c);
            if !v.is_zero() {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    /// `e^beta -> e^-beta`; coefficients are left untouched.
    pub fn bar(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.neg(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `e^0`.
    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&Weight::zero(self.n))
    }

    /// Invariance under every coordinate permutation of the support.
    pub fn is_w_invariant(&self) -> bool {
        // adjacent transpositions generate S_n
        self.terms.iter().all(|(w, c)| {
            (0..self.n - 1).all(|i| {
                let mut v = w.coords().to_vec();
                v.swap(i, i + 1);
                self.terms.get(&Weight::new(v)) == Some(c)
            })
        })
    }

    /// Evaluates at `q^(2 xi)`: each `e^beta` becomes `q^(2 (beta, xi))`.
    pub fn evaluate_at(&self, xi: &Weight) -> ExactScalar {
        assert_eq!(xi.rank(), self.n, "evaluation point has wrong rank");
        self.terms
            .iter()
            .map(|(b, c)| c.mul_q_pow(QExponent::from(b.pair(xi) * 2)))
            .sum()
    }

    /// Coefficients in the orbit-sum basis, strongest weight first.
    ///
    /// Fails with [`Error::NotInvariant`] when the element is not W-invariant.
    pub fn to_orbit_basis(&self) -> Result<Vec<(Weight, ExactScalar)>> {
        if !self.is_w_invariant() {
            return Err(Error::NotInvariant);
        }
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    /// `sum_mu c_mu m_mu`.
    pub fn from_orbit_basis<'a, I>(n: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Weight, &'a ExactScalar)>,
    {
        let mut out = Self::zero(n);
        for (mu, c) in coeffs {
            for w in orbit_weights(mu)? {
                out.add_term(w, c.clone());
            }
        }
        Ok(out)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

fn orbit_weights(lam: &Weight) -> Result<Vec<Weight>> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(weyl_orbit(lam))
}

/// Convolution product; fails on rank mismatch.
pub fn ga_mul(f: &GroupAlgebraElement, g: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    f.check_rank(g)?;
    let mut out = GroupAlgebraElement::zero(f.n);
    for (a, ca) in &f.terms {
        for (b, cb) in &g.terms {
            out.add_term(a.add(b), ca * cb);
        }
    }
    Ok(out)
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        ga_mul(self, rhs).expect("rank mismatch in group algebra product")
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.check_rank(rhs)
            .expect("rank mismatch in group algebra sum");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.check_rank(rhs)
            .expect("rank mismatch in group algebra difference");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "e^({})*({})", w, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One `{weight, coeff}` record of the serialised form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRecord {
    pub weight: Weight,
    pub coeff: String,
}

impl GroupAlgebraElement {
    /// Records sorted by weight.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| TermRecord {
                weight: w.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(n: usize, records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero(n);
        for r in records {
            if r.weight.rank() != n {
                return Err(Error::RankMismatch {
                    left: n,
                    right: r.weight.rank(),
                });
            }
            out.add_term(r.weight.clone(), r.coeff.parse()?);
        }
        Ok(out)
    }
}

/// `m_lam = sum_{mu in W lam} e^mu`.
pub fn orbit_sum(lam: &Weight) -> Result<GroupAlgebraElement> {
    Ok(GroupAlgebraElement::from_terms(
        lam.rank(),
        orbit_weights(lam)?
            .into_iter()
            .map(|w| (w, ExactScalar::one())),
    ))
}

/// Character of `Lambda^r C^n`.
pub fn char_lambda_r(n: usize, r: usize) -> Result<GroupAlgebraElement> {
    Ok(GroupAlgebraElement::from_terms(
        n,
        lambda_r_weights(n, r)?
            .into_iter()
            .map(|w| (w, ExactScalar::one())),
    ))
}

/// `dim_q L_lam = prod_{alpha > 0} [(alpha, lam + rho)] / [(alpha, rho)]`.
pub fn qdim(lam: &Weight, n: usize) -> Result<ExactScalar> {
    if lam.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: lam.rank(),
        });
    }
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let rd = RootData::new(n)?;
    let shifted = lam.add(&rd.rho);
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for a in &rd.positive_roots {
        num = &num * &qint(shifted.pair_int(a));
        den = &den * &qint(rd.rho.pair_int(a));
    }
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn qp(e: i64) -> ExactScalar {
        ExactScalar::q_pow_int(e)
    }

    #[test]
    fn product_identity_and_zero() {
        let g = &GroupAlgebraElement::exp(&w(&[1, 0]))
            + &GroupAlgebraElement::monomial(w(&[0, 0]), qp(3));
        assert_eq!(&GroupAlgebraElement::one(2) * &g, g);
        assert!((&g * &GroupAlgebraElement::zero(2)).is_zero());
    }

    #[test]
    fn square_of_fundamental_orbit_sum() {
        let m = orbit_sum(&w(&[1, 0])).unwrap();
        let sq = &m * &m;
        let expect = GroupAlgebraElement::from_terms(
            2,
            [
                (w(&[2, 0]), ExactScalar::one()),
                (w(&[0, 0]), ExactScalar::from_int(2)),
                (w(&[-2, 0]), ExactScalar::one()),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert!(matches!(
            ga_mul(&GroupAlgebraElement::one(2), &GroupAlgebraElement::one(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn bar_negates_weights_only() {
        let a = Weight::root(3, 0, 1);
        let f = GroupAlgebraElement::monomial(a.clone(), qp(2));
        assert_eq!(f.bar(), GroupAlgebraElement::monomial(a.neg(), qp(2)));
        assert_eq!(f.bar().bar(), f);
        let one = GroupAlgebraElement::one(3);
        assert_eq!(one.bar(), one);
        let m = orbit_sum(&w(&[3, 0])).unwrap();
        assert_eq!(m.bar(), m);
        // for n = 3, bar(m_{omega_1}) = m_{omega_2}
        assert_eq!(
            orbit_sum(&w(&[1, 0, 0])).unwrap().bar(),
            orbit_sum(&w(&[1, 1, 0])).unwrap()
        );
    }

    #[test]
    fn constant_terms() {
        assert!(GroupAlgebraElement::one(2).constant_term().is_one());
        assert!(GroupAlgebraElement::exp(&w(&[1, 0]))
            .constant_term()
            .is_zero());
        let a = Weight::root(2, 0, 1);
        let f = &GroupAlgebraElement::one(2) - &GroupAlgebraElement::exp(&a);
        let g = &GroupAlgebraElement::one(2) - &GroupAlgebraElement::exp(&a.neg());
        assert_eq!((&f * &g).constant_term(), ExactScalar::from_int(2));
    }

    #[test]
    fn orbit_sums() {
        assert_eq!(
            orbit_sum(&Weight::zero(3)).unwrap(),
            GroupAlgebraElement::one(3)
        );
        let m = orbit_sum(&w(&[1, 0])).unwrap();
        assert_eq!(m.len(), 2);
        let m3 = orbit_sum(&w(&[1, 0, 0])).unwrap();
        assert_eq!(m3.len(), 3);
        assert!(m3.terms().all(|(_, c)| c.is_one()));
        assert!(orbit_sum(&w(&[0, 1, 0])).is_err());
        for lam in crate::roota::dominant_weights_up_to(3, 4) {
            let ct = orbit_sum(&lam).unwrap().constant_term();
            assert_eq!(ct.is_one(), lam.is_zero());
            assert_eq!(ct.is_zero(), !lam.is_zero());
        }
    }

    #[test]
    fn invariance() {
        assert!(orbit_sum(&w(&[2, 1, 0])).unwrap().is_w_invariant());
        assert!(!GroupAlgebraElement::exp(&w(&[1, 0])).is_w_invariant());
    }

    #[test]
    fn evaluation_examples() {
        assert!(GroupAlgebraElement::one(2)
            .evaluate_at(&Weight::rho(2))
            .is_one());
        let m = orbit_sum(&w(&[1, 0])).unwrap();
        assert_eq!(m.evaluate_at(&Weight::rho(2)), &qp(1) + &qp(-1));
        // fractional pairings land on fractional q-powers
        let e = GroupAlgebraElement::exp(&w(&[1, 0, 0]));
        assert_eq!(
            e.evaluate_at(&w(&[1, 0, 0])),
            ExactScalar::q_pow(QExponent::new(4, 3))
        );
    }

    #[test]
    fn lambda_r_characters() {
        assert_eq!(
            char_lambda_r(2, 1).unwrap(),
            orbit_sum(&w(&[1, 0])).unwrap()
        );
        let x = char_lambda_r(3, 2).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.is_w_invariant());
        assert!(char_lambda_r(3, 3).is_err());
        for n in 2..6 {
            for r in 1..n {
                let om = Weight::fundamental(n, r).unwrap();
                assert_eq!(char_lambda_r(n, r).unwrap(), orbit_sum(&om).unwrap());
            }
        }
    }

    #[test]
    fn qdim_examples() {
        assert!(qdim(&Weight::zero(3), 3).unwrap().is_one());
        assert_eq!(qdim(&w(&[1, 0]), 2).unwrap(), qint(2));
        assert_eq!(
            qdim(&w(&[1, 0, 0]), 3)
                .unwrap()
                .evaluate_limit_q1()
                .unwrap(),
            BigRational::from_integer(3.into())
        );
        // adjoint of sl_3
        assert_eq!(
            qdim(&w(&[2, 1, 0]), 3)
                .unwrap()
                .evaluate_limit_q1()
                .unwrap(),
            BigRational::from_integer(8.into())
        );
        assert!(qdim(&w(&[0, 1]), 2).is_err());
    }

    #[test]
    fn orbit_basis_round_trip() {
        let f =
            &orbit_sum(&w(&[2, 0, 0])).unwrap() + &orbit_sum(&w(&[1, 1, 0])).unwrap().scale(&qp(2));
        let coeffs = f.to_orbit_basis().unwrap();
        assert_eq!(coeffs[0].0, w(&[2, 0, 0]));
        let back =
            GroupAlgebraElement::from_orbit_basis(3, coeffs.iter().map(|(a, b)| (a, b))).unwrap();
        assert_eq!(back, f);
        assert!(GroupAlgebraElement::exp(&w(&[1, 0]))
            .to_orbit_basis()
            .is_err());
    }

    #[test]
    fn records_round_trip() {
        let f = &orbit_sum(&w(&[1, 0, 0])).unwrap().scale(&qint(3)) + &GroupAlgebraElement::one(3);
        let recs = f.to_records();
        assert_eq!(GroupAlgebraElement::from_records(3, &recs).unwrap(), f);
    }
}
