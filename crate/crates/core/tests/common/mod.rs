//! Independent oracles shared by the integration tests and the acceptance suite.
//! Nothing here calls the Gram-matrix construction or the closed forms under test.
#![allow(dead_code)]

use macd_core::exactalg::{ExactScalar, QExponent};
use macd_core::macdonald::MacdonaldContext;
use macd_core::roota::Weight;
use macd_core::weightalg::GroupAlgebraElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec())
}

/// Partitions of `size` with at most `parts` parts, zero padded to `parts`.
pub fn partitions(size: i64, parts: usize) -> Vec<Vec<i64>> {
    fn go(rem: i64, max: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == parts {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, parts, &mut Vec::new(), &mut out);
    out
}

/// Kostka number: semistandard tableaux of shape `lam` and content `mu`,
/// counted by peeling horizontal strips off the largest entry.
pub fn kostka(lam: &[i64], mu: &[i64]) -> i64 {
    let size: i64 = lam.iter().sum();
    if size != mu.iter().sum::<i64>() {
        return 0;
    }
    if mu.is_empty() {
        return i64::from(size == 0);
    }
    let (last, rest) = mu.split_last().unwrap();
    // nu interlaces lam: lam[j+1] <= nu[j] <= lam[j], |lam| - |nu| = last
    let mut total = 0;
    let mut nu = vec![0i64; lam.len()];
    fn strips(
        j: usize,
        lam: &[i64],
        nu: &mut Vec<i64>,
        target: i64,
        rest: &[i64],
        total: &mut i64,
    ) {
        if j == lam.len() {
            if nu.iter().sum::<i64>() == target && nu.iter().skip(rest.len()).all(|&x| x == 0) {
                *total += kostka(&nu[..], rest);
            }
            return;
        }
        let lo = lam.get(j + 1).copied().unwrap_or(0);
        for v in lo..=lam[j] {
            nu[j] = v;
            strips(j + 1, lam, nu, target, rest, total);
        }
    }
    strips(0, lam, &mut nu, size - last, rest, &mut total);
    total
}

/// Schur polynomial of the dominant weight `lam` in the orbit-sum basis,
/// keyed by canonical weights.
pub fn schur_orbit_expansion(lam: &Weight) -> Vec<(Weight, i64)> {
    let n = lam.rank();
    let shape = lam.coords().to_vec();
    let size: i64 = shape.iter().sum();
    partitions(size, n)
        .into_iter()
        .filter_map(|mu| {
            let c = kostka(&shape, &mu);
            (c != 0).then(|| (Weight::new(mu), c))
        })
        .collect()
}

fn q(e: i64) -> ExactScalar {
    ExactScalar::q_pow_int(e)
}

/// `(a; p)_j` with `a = q^a_exp`, `p = q^p_exp`.
pub fn qpoch(a_exp: i64, p_exp: i64, j: i64) -> ExactScalar {
    (0..j)
        .map(|i| ExactScalar::one_minus_q_pow(QExponent::from_int(a_exp + i * p_exp)))
        .product()
}

/// Monic q-ultraspherical (Rogers) polynomial of degree `m` in base `q^2`
/// with `beta = q^(2k)`, as an element of the rank-2 group algebra.
pub fn rogers(m: i64, k: i64) -> GroupAlgebraElement {
    let lead = qpoch(2 * k, 2, m).checked_div(&qpoch(2, 2, m)).unwrap();
    let mut f = GroupAlgebraElement::zero(2);
    for j in 0..=m {
        let c = (&qpoch(2 * k, 2, j) * &qpoch(2 * k, 2, m - j))
            .checked_div(&(&qpoch(2, 2, j) * &qpoch(2, 2, m - j)))
            .unwrap()
            .checked_div(&lead)
            .unwrap();
        f.add_term(w(&[m - j, j]), c);
    }
    f
}

/// Coefficient `a_m` in `(e^w + e^-w) R_m = R_{m+1} + a_m R_{m-1}` for the
/// monic Rogers polynomials above.
pub fn rogers_recurrence(m: i64, k: i64) -> ExactScalar {
    let num = &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * m))
        * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * (2 * k + m - 1)));
    let den = &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * (k + m)))
        * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * (k + m - 1)));
    num.checked_div(&den).unwrap()
}

/// Expands a W-invariant `f` in the P basis by triangular elimination:
/// repeatedly strip the dominance-maximal term with a multiple of its `P`.
pub fn expand_in_p_basis(
    f: &GroupAlgebraElement,
    ctx: &MacdonaldContext,
) -> Vec<(Weight, ExactScalar)> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let dom: Vec<Weight> = rest
            .support()
            .filter(|w| w.is_dominant())
            .cloned()
            .collect();
        // a dominance-maximal weight: nothing else in `dom` lies strictly above it
        let top = dom
            .iter()
            .find(|a| {
                !dom.iter()
                    .any(|b| b != *a && macd_core::roota::dominance_leq(a, b))
            })
            .expect("nonzero invariant element has a dominant term")
            .clone();
        let c = rest.coeff(&top);
        let p = ctx.macdonald_poly(&top).unwrap();
        rest = &rest - &p.scale(&c);
        out.push((top, c));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn q_pow(e: i64) -> ExactScalar {
    q(e)
}

/// A random nonzero-denominator scalar with small integer coefficients and
/// exponents in `(1/scale) Z`, `scale` drawn from a few divisors of 12.
pub fn random_scalar<R: Rng>(rng: &mut R) -> ExactScalar {
    let scale = [1i64, 2, 3, 4, 6][rng.gen_range(0..5)];
    let poly = |rng: &mut R, terms: usize| -> ExactScalar {
        (0..terms)
            .map(|_| {
                let c = BigRational::from_integer(BigInt::from(rng.gen_range(-4i64..=4)));
                let e = QExponent::new(rng.gen_range(-6i64..=6), scale);
                ExactScalar::q_pow_scaled(c, e)
            })
            .sum()
    };
    let num_terms = rng.gen_range(0..=3);
    let num = poly(rng, num_terms);
    loop {
        let den_terms = rng.gen_range(1..=3);
        let den = poly(rng, den_terms);
        if !den.is_zero() {
            return num.checked_div(&den).unwrap();
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> GroupAlgebraElement {
    let mut f = GroupAlgebraElement::zero(n);
    for _ in 0..rng.gen_range(0..=4) {
        let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        f.add_term(Weight::new(coords), random_scalar(rng));
    }
    f
}
