//! Macdonald difference operators `M_r`, shift operators `T_nu`, their
//! eigenvalues and the Pieri-type recursions.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exactalg::{qint, ExactScalar, QExponent};
use crate::macdonald::MacdonaldContext;
use crate::roota::{lambda_r_weights, Weight};
use crate::weightalg::{char_lambda_r, GroupAlgebraElement};

/// One summand `coefficient * P_{mu + nu}` of a Pieri expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriTerm {
    pub nu: Weight,
    pub coefficient: ExactScalar,
}

/// `T_nu e^lam = q^(2 (nu, lam)) e^lam`.
pub fn shift_apply(f: &GroupAlgebraElement, nu: &Weight) -> GroupAlgebraElement {
    f.map_terms(|lam, c| c.mul_q_pow(QExponent::from(lam.pair(nu) * 2)))
}

/// `1 - c e^w` style binomials.
fn binomial(n: usize, a: (Weight, ExactScalar), b: (Weight, ExactScalar)) -> GroupAlgebraElement {
    let mut f = GroupAlgebraElement::zero(n);
    f.add_term(a.0, a.1);
    f.add_term(b.0, b.1);
    f
}

/// Exact quotient `g / (1 - e^beta)`.
///
/// Writing `g = (1 - e^beta) h` gives `h_w = sum_{t >= 0} g_{w - t beta}`, so
/// the quotient is a running sum along each line `w0 + Z beta`. The division
/// is exact iff every line sums to zero.
fn div_one_minus_exp(g: &GroupAlgebraElement, beta: &Weight) -> Result<GroupAlgebraElement> {
    let two = Ratio::from_integer(2);
    let mut lines: BTreeMap<Weight, Vec<(i64, &ExactScalar)>> = BTreeMap::new();
    for (w, c) in g.terms() {
        // (beta, beta) = 2, so t steps along beta move the pairing by 2t
        let t = (w.pair(beta) / two).floor().to_integer();
        let base = w.sub(&beta.scaled(t));
        lines.entry(base).or_default().push((t, c));
    }
    let mut out = GroupAlgebraElement::zero(g.rank());
    for (base, mut pts) in lines {
        pts.sort_by_key(|p| p.0);
        let mut acc = ExactScalar::zero();
        for win in 0..pts.len() {
            let (t, c) = pts[win];
            acc = &acc + c;
            let stop = pts.get(win + 1).map_or(t + 1, |p| p.0);
            if !acc.is_zero() {
                for s in t..stop {
                    out.add_term(base.add(&beta.scaled(s)), acc.clone());
                }
            }
        }
        if !acc.is_zero() {
            return Err(Error::InexactDivision(format!(
                "remainder {acc} on the line through {base} in direction {beta}"
            )));
        }
    }
    Ok(out)
}

fn check_r(ctx: &MacdonaldContext, r: usize) -> Result<()> {
    if r < 1 || r + 1 > ctx.n() {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            range: format!("[1, {}]", ctx.n() - 1),
        });
    }
    Ok(())
}

/// `M_r f = q^(kr(r-n)) sum_{nu in Lambda_r} prod_{alpha in R, (alpha,nu) = -1}
/// (q^(2k) - e^alpha) / (1 - e^alpha) T_nu f` for W-invariant `f`.
///
/// Every summand is brought over the common denominator
/// `prod_{beta > 0} (1 - e^beta)`, which is then divided out exactly.
pub fn macdonald_operator(
    f: &GroupAlgebraElement,
    r: usize,
    ctx: &MacdonaldContext,
) -> Result<GroupAlgebraElement> {
    check_r(ctx, r)?;
    let n = ctx.n();
    if f.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: f.rank(),
        });
    }
    if !f.is_w_invariant() {
        return Err(Error::NotInvariant);
    }
    let k = ctx.k();
    let q2k = ExactScalar::q_pow_int(2 * k);
    let one = ExactScalar::one();
    let zero_w = Weight::zero(n);
    let positive = &ctx.root_data().positive_roots;

    let mut total = GroupAlgebraElement::zero(n);
    for nu in lambda_r_weights(n, r)? {
        let mut term = shift_apply(f, &nu);
        for beta in positive {
            let factor = match beta.pair_int(&nu) {
                // alpha = beta: (q^2k - e^beta)
                -1 => binomial(n, (zero_w.clone(), q2k.clone()), (beta.clone(), -&one)),
                // alpha = -beta: (q^2k - e^-beta) / (1 - e^-beta) = (1 - q^2k e^beta) / (1 - e^beta)
                1 => binomial(n, (zero_w.clone(), one.clone()), (beta.clone(), -&q2k)),
                _ => binomial(n, (zero_w.clone(), one.clone()), (beta.clone(), -&one)),
            };
            term = &term * &factor;
        }
        total = &total + &term;
    }
    for beta in positive {
        total = div_one_minus_exp(&total, beta)?;
    }
    let pre = ExactScalar::q_pow_int(k * r as i64 * (r as i64 - n as i64));
    Ok(total.scale(&pre))
}

/// `c_lam^r = X_r(q^(2 (lam + k rho)))`.
pub fn eigenvalue(lam: &Weight, r: usize, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    ctx.check_dominant(lam)?;
    check_r(ctx, r)?;
    Ok(char_lambda_r(ctx.n(), r)?.evaluate_at(&lam.add(&ctx.k_rho())))
}

fn check_minuscule(ctx: &MacdonaldContext, nu: &Weight) -> Result<()> {
    let n = ctx.n();
    let ok =
        nu.rank() == n && (1..n).any(|r| lambda_r_weights(n, r).is_ok_and(|ws| ws.contains(nu)));
    if !ok {
        return Err(Error::OutOfRange {
            what: "nu",
            value: 0,
            range: format!("weights of Lambda^r C^{n}, got {nu}"),
        });
    }
    Ok(())
}

/// `prod_{alpha > 0, (alpha,nu) = -1} [a+k-1][a-k] / ([a][a-1])` with `a = (alpha, mu + k rho)`.
pub fn pieri_coefficient(mu: &Weight, nu: &Weight, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    ctx.check_dominant(mu)?;
    check_minuscule(ctx, nu)?;
    if !mu.add(nu).is_dominant() {
        return Err(Error::NotDominant(format!("{} (mu + nu)", mu.add(nu))));
    }
    let k = ctx.k();
    let shifted = mu.add(&ctx.k_rho());
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for alpha in &ctx.root_data().positive_roots {
        if alpha.pair_int(nu) == -1 {
            let a = shifted.pair_int(alpha);
            num = &num * &(&qint(a + k - 1) * &qint(a - k));
            den = &den * &(&qint(a) * &qint(a - 1));
        }
    }
    num.checked_div(&den)
}

/// Terms of `X_r P_mu = sum_nu coeff(nu) P_{mu + nu}` over admissible `nu`.
pub fn pieri_expand(mu: &Weight, r: usize, ctx: &MacdonaldContext) -> Result<Vec<PieriTerm>> {
    ctx.check_dominant(mu)?;
    check_r(ctx, r)?;
    lambda_r_weights(ctx.n(), r)?
        .into_iter()
        .filter(|nu| mu.add(nu).is_dominant())
        .map(|nu| {
            let coefficient = pieri_coefficient(mu, &nu, ctx)?;
            Ok(PieriTerm { nu, coefficient })
        })
        .collect()
}

/// Both sides of the evaluated recursion
/// `sum_nu prod_{alpha in R, (alpha,nu) = -1} [(mu+k rho,alpha) - k] / [(mu+k rho,alpha)]
/// P_lam(q^(2(mu+nu+k rho))) = X_r(q^(2(lam+k rho))) P_lam(q^(2(mu+k rho)))`.
pub fn specialized_recurrence_sides(
    lam: &Weight,
    mu: &Weight,
    r: usize,
    ctx: &MacdonaldContext,
) -> Result<(ExactScalar, ExactScalar)> {
    ctx.check_dominant(lam)?;
    ctx.check_dominant(mu)?;
    check_r(ctx, r)?;
    let k = ctx.k();
    let shifted = mu.add(&ctx.k_rho());
    let p = ctx.macdonald_poly(lam)?;
    let mut lhs = ExactScalar::zero();
    for nu in lambda_r_weights(ctx.n(), r)? {
        if !mu.add(&nu).is_dominant() {
            continue;
        }
        let mut coeff = ExactScalar::one();
        for alpha in ctx.root_data().all_roots() {
            if alpha.pair_int(&nu) == -1 {
                let b = shifted.pair_int(&alpha);
                coeff = &coeff * &qint(b - k).checked_div(&qint(b))?;
            }
        }
        lhs = &lhs + &(&coeff * &p.evaluate_at(&shifted.add(&nu)));
    }
    let rhs = &eigenvalue(lam, r, ctx)? * &p.evaluate_at(&shifted);
    Ok((lhs, rhs))
}

pub fn specialized_recurrence_check(
    lam: &Weight,
    mu: &Weight,
    r: usize,
    ctx: &MacdonaldContext,
) -> Result<bool> {
    let (l, r) = specialized_recurrence_sides(lam, mu, r, ctx)?;
    Ok(l == r)
}
