//! Closed-form right-hand sides of the norm, symmetry and special-value
//! identities, and verification drivers that compare them with
//! first-principles computations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{qint, ExactScalar, QExponent};
use crate::macdonald::{delta_kernel, MacdonaldContext};
use crate::operators::{
    eigenvalue, macdonald_operator, pieri_expand, specialized_recurrence_sides,
};
use crate::par::Execution;
use crate::roota::{dominant_weights_up_to, RootData, Weight};
use crate::weightalg::{char_lambda_r, qdim, GroupAlgebraElement};

/// `prod_{alpha > 0} prod_{i=1}^{k-1} (1 - q^(2(alpha, lam + k rho) + 2i)) / (1 - q^(2(alpha, lam + k rho) - 2i))`.
pub fn norm_rhs(lam: &Weight, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    ctx.check_dominant(lam)?;
    let shifted = lam.add(&ctx.k_rho());
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for alpha in &ctx.root_data().positive_roots {
        let a = shifted.pair_int(alpha);
        for i in 1..ctx.k() {
            num = &num * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * a + 2 * i));
            den = &den * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * a - 2 * i));
        }
    }
    num.checked_div(&den)
}

fn check_k_nonneg(k: i64) -> Result<()> {
    if k < 0 {
        return Err(Error::InvalidK(k));
    }
    Ok(())
}

fn check_rank(lam: &Weight, n: usize) -> Result<()> {
    if lam.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: lam.rank(),
        });
    }
    Ok(())
}

/// `d_k(lam) = prod_{alpha > 0} prod_{i=1}^k (1 - q^(2(alpha, lam + rho) - 2i))`.
pub fn shapovalov_denominator(lam: &Weight, k: i64, n: usize) -> Result<ExactScalar> {
    check_k_nonneg(k)?;
    check_rank(lam, n)?;
    let rd = RootData::new(n)?;
    let shifted = lam.add(&rd.rho);
    let mut acc = ExactScalar::one();
    for alpha in &rd.positive_roots {
        let a = shifted.pair_int(alpha);
        for i in 1..=k {
            acc = &acc * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * a - 2 * i));
        }
    }
    Ok(acc)
}

/// `prod_{alpha > 0} prod_{i=1}^k (1 - q^(2(alpha, lam + rho) + 2i)) / (1 - q^(2(alpha, lam + rho) - 2i))`.
pub fn cor38_ratio(lam: &Weight, k: i64, n: usize) -> Result<ExactScalar> {
    check_k_nonneg(k)?;
    check_rank(lam, n)?;
    let rd = RootData::new(n)?;
    let shifted = lam.add(&rd.rho);
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for alpha in &rd.positive_roots {
        let a = shifted.pair_int(alpha);
        for i in 1..=k {
            if a == i {
                return Err(Error::VanishingFactor {
                    root: alpha.to_string(),
                    i,
                });
            }
            num = &num * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * a + 2 * i));
            den = &den * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * a - 2 * i));
        }
    }
    num.checked_div(&den)
}

/// `prod_{alpha > 0} prod_{i=0}^{k-1} [(alpha, num + k rho) + i] / [(alpha, den + k rho) + i]`.
fn bracket_ratio(num_w: &Weight, den_w: &Weight, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    let kr = ctx.k_rho();
    let (a, b) = (num_w.add(&kr), den_w.add(&kr));
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for alpha in &ctx.root_data().positive_roots {
        let (x, y) = (a.pair_int(alpha), b.pair_int(alpha));
        for i in 0..ctx.k() {
            num = &num * &qint(x + i);
            den = &den * &qint(y + i);
        }
    }
    num.checked_div(&den)
}

/// `P_mu(q^(2(lam + k rho))) / P_lam(q^(2(mu + k rho)))` in q-bracket form:
/// `prod_{alpha > 0} prod_{i=0}^{k-1} [(alpha, mu + k rho) + i] / [(alpha, lam + k rho) + i]`.
pub fn symmetry_rhs(lam: &Weight, mu: &Weight, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    ctx.check_dominant(lam)?;
    ctx.check_dominant(mu)?;
    bracket_ratio(mu, lam, ctx)
}

/// The same ratio written as
/// `q^(2k(rho, lam - mu)) prod prod (1 - q^(2(alpha, mu + k rho) + 2i)) / (1 - q^(2(alpha, lam + k rho) + 2i))`.
pub fn symmetry_rhs_product(
    lam: &Weight,
    mu: &Weight,
    ctx: &MacdonaldContext,
) -> Result<ExactScalar> {
    ctx.check_dominant(lam)?;
    ctx.check_dominant(mu)?;
    let kr = ctx.k_rho();
    let (a, b) = (mu.add(&kr), lam.add(&kr));
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for alpha in &ctx.root_data().positive_roots {
        let (x, y) = (a.pair_int(alpha), b.pair_int(alpha));
        for i in 0..ctx.k() {
            num = &num * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * x + 2 * i));
            den = &den * &ExactScalar::one_minus_q_pow(QExponent::from_int(2 * y + 2 * i));
        }
    }
    let pre = QExponent::from(ctx.rho().pair(&lam.sub(mu)) * (2 * ctx.k()));
    Ok(num.checked_div(&den)?.mul_q_pow(pre))
}

/// `P_lam(q^(2 k rho)) = prod_{alpha > 0} prod_{i=0}^{k-1} [(alpha, lam + k rho) + i] / [(alpha, k rho) + i]`.
pub fn special_value_rhs(lam: &Weight, ctx: &MacdonaldContext) -> Result<ExactScalar> {
    ctx.check_dominant(lam)?;
    bracket_ratio(lam, &Weight::zero(ctx.n()), ctx)
}

/// Both sides of
/// `chi_mu(q^(2(lam+k rho))) <P_lam,P_lam> dim_q L_{mu^k} = chi_lam(q^(2(mu+k rho))) <P_mu,P_mu> dim_q L_{lam^k}`
/// with `lam^k = lam + (k-1) rho`.
///
/// With `transposed` the two q-dimensions trade places. Only the transposed
/// relation is compatible with the symmetry identity: the printed one is off by
/// `(dim_q L_{mu^k} / dim_q L_{lam^k})^2`.
pub fn cross_check_45_sides(
    lam: &Weight,
    mu: &Weight,
    ctx: &MacdonaldContext,
    transposed: bool,
) -> Result<(ExactScalar, ExactScalar)> {
    ctx.check_dominant(lam)?;
    ctx.check_dominant(mu)?;
    let n = ctx.n();
    let shift = ctx.rho().scaled(ctx.k() - 1);
    let kr = ctx.k_rho();
    let (mut dim_l, mut dim_r) = (qdim(&mu.add(&shift), n)?, qdim(&lam.add(&shift), n)?);
    if transposed {
        std::mem::swap(&mut dim_l, &mut dim_r);
    }
    let lhs = &(&ctx.chi(mu)?.evaluate_at(&lam.add(&kr)) * &ctx.norm(lam)?) * &dim_l;
    let rhs = &(&ctx.chi(lam)?.evaluate_at(&mu.add(&kr)) * &ctx.norm(mu)?) * &dim_r;
    Ok((lhs, rhs))
}

/// Name tags of the checks that [`verify`] knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Norm,
    Symmetry,
    SpecialValue,
    KernelFactorization,
    Eigenvalue,
    Pieri,
    SpecializedRecurrence,
    #[serde(rename = "cross_check_45")]
    CrossCheck45,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Norm,
        Identity::Symmetry,
        Identity::SpecialValue,
        Identity::KernelFactorization,
        Identity::Eigenvalue,
        Identity::Pieri,
        Identity::SpecializedRecurrence,
        Identity::CrossCheck45,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Norm => "norm",
            Identity::Symmetry => "symmetry",
            Identity::SpecialValue => "special_value",
            Identity::KernelFactorization => "kernel_factorization",
            Identity::Eigenvalue => "eigenvalue",
            Identity::Pieri => "pieri",
            Identity::SpecializedRecurrence => "specialized_recurrence",
            Identity::CrossCheck45 => "cross_check_45",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Parameters of one check. `n` and `k` come from the context.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl Params {
    pub fn new(ctx: &MacdonaldContext) -> Self {
        Self {
            n: ctx.n(),
            k: ctx.k(),
            ..Self::default()
        }
    }

    pub fn lambda(mut self, lam: Weight) -> Self {
        self.lambda = Some(lam);
        self
    }

    pub fn mu(mut self, mu: Weight) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    fn need_lambda(&self) -> Result<&Weight> {
        self.lambda
            .as_ref()
            .ok_or(Error::MissingParameter("lambda"))
    }

    fn need_mu(&self) -> Result<&Weight> {
        self.mu.as_ref().ok_or(Error::MissingParameter("mu"))
    }

    fn need_r(&self) -> Result<usize> {
        self.r.ok_or(Error::MissingParameter("r"))
    }
}

/// Outcome of one check. `equal` is true iff both canonical strings agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    /// One JSON object with sorted keys.
    pub fn to_json_line(&self) -> String {
        let v = serde_json::to_value(self).expect("report serialises");
        serde_json::to_string(&v).expect("value serialises")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("identity: {}\n", self.identity);
        s += &format!("n: {}\nk: {}\n", self.params.n, self.params.k);
        if let Some(l) = &self.params.lambda {
            s += &format!("lambda: {l}\n");
        }
        if let Some(m) = &self.params.mu {
            s += &format!("mu: {m}\n");
        }
        if let Some(r) = self.params.r {
            s += &format!("r: {r}\n");
        }
        if let Some(e) = &self.error {
            s += &format!("error: {e}\n");
        }
        s += &format!(
            "lhs: {}\nrhs: {}\nequal: {}\n",
            self.lhs, self.rhs, self.equal
        );
        s
    }
}

fn sides(identity: Identity, p: &Params, ctx: &MacdonaldContext) -> Result<(String, String)> {
    let scalars = |l: ExactScalar, r: ExactScalar| (l.to_string(), r.to_string());
    let elements = |l: GroupAlgebraElement, r: GroupAlgebraElement| (l.to_string(), r.to_string());
    Ok(match identity {
        Identity::Norm => {
            let lam = p.need_lambda()?;
            scalars(ctx.norm(lam)?, norm_rhs(lam, ctx)?)
        }
        Identity::Symmetry => {
            let (lam, mu) = (p.need_lambda()?, p.need_mu()?);
            let num = ctx.eval_at_shifted(mu, lam)?;
            let den = ctx.eval_at_shifted(lam, mu)?;
            scalars(num.checked_div(&den)?, symmetry_rhs(lam, mu, ctx)?)
        }
        Identity::SpecialValue => {
            let lam = p.need_lambda()?;
            scalars(
                ctx.eval_at_shifted(lam, &Weight::zero(ctx.n()))?,
                special_value_rhs(lam, ctx)?,
            )
        }
        Identity::KernelFactorization => {
            let chi0 = ctx.chi0();
            let lhs = &(&chi0 * &chi0.bar()) * &delta_kernel(ctx.n(), 1)?;
            elements(lhs, ctx.kernel().clone())
        }
        Identity::Eigenvalue => {
            let (lam, r) = (p.need_lambda()?, p.need_r()?);
            let pl = ctx.macdonald_poly(lam)?;
            let lhs = macdonald_operator(&pl, r, ctx)?;
            elements(lhs, pl.scale(&eigenvalue(lam, r, ctx)?))
        }
        Identity::Pieri => {
            let (mu, r) = (p.need_mu()?, p.need_r()?);
            let mut lhs = GroupAlgebraElement::zero(ctx.n());
            for t in pieri_expand(mu, r, ctx)? {
                lhs = &lhs + &ctx.macdonald_poly(&mu.add(&t.nu))?.scale(&t.coefficient);
            }
            let rhs = &char_lambda_r(ctx.n(), r)? * &*ctx.macdonald_poly(mu)?;
            elements(lhs, rhs)
        }
        Identity::SpecializedRecurrence => {
            let (lam, mu, r) = (p.need_lambda()?, p.need_mu()?, p.need_r()?);
            let (l, r) = specialized_recurrence_sides(lam, mu, r, ctx)?;
            scalars(l, r)
        }
        Identity::CrossCheck45 => {
            let (l, r) = cross_check_45_sides(p.need_lambda()?, p.need_mu()?, ctx, false)?;
            scalars(l, r)
        }
    })
}

/// Runs one check. Invalid parameters give a report carrying `error`.
pub fn verify(identity: Identity, params: &Params, ctx: &MacdonaldContext) -> VerificationReport {
    let mut params = params.clone();
    params.n = ctx.n();
    params.k = ctx.k();
    match sides(identity, &params, ctx) {
        Ok((lhs, rhs)) => VerificationReport {
            identity,
            equal: lhs == rhs,
            params,
            lhs,
            rhs,
            error: None,
        },
        Err(e) => VerificationReport {
            identity,
            params,
            lhs: String::new(),
            rhs: String::new(),
            equal: false,
            error: Some(e.to_string()),
        },
    }
}

/// Every check of `identity` over dominant weights of size at most `max_size`.
pub fn grid_params(identity: Identity, ctx: &MacdonaldContext, max_size: i64) -> Vec<Params> {
    let n = ctx.n();
    let lams = dominant_weights_up_to(n, max_size);
    let base = Params::new(ctx);
    let rs = 1..n;
    let mut out = Vec::new();
    match identity {
        Identity::Norm | Identity::SpecialValue => {
            out.extend(lams.iter().map(|l| base.clone().lambda(l.clone())));
        }
        Identity::KernelFactorization => out.push(base),
        Identity::Symmetry | Identity::CrossCheck45 => {
            for l in &lams {
                for m in &lams {
                    out.push(base.clone().lambda(l.clone()).mu(m.clone()));
                }
            }
        }
        Identity::Eigenvalue => {
            for l in &lams {
                out.extend(rs.clone().map(|r| base.clone().lambda(l.clone()).r(r)));
            }
        }
        Identity::Pieri => {
            for m in &lams {
                out.extend(rs.clone().map(|r| base.clone().mu(m.clone()).r(r)));
            }
        }
        Identity::SpecializedRecurrence => {
            for l in &lams {
                for m in &lams {
                    out.extend(
                        rs.clone()
                            .map(|r| base.clone().lambda(l.clone()).mu(m.clone()).r(r)),
                    );
                }
            }
        }
    }
    out
}

/// Check counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

impl Tally {
    fn record(&mut self, r: &VerificationReport) {
        self.checks += 1;
        match (&r.error, r.equal) {
            (Some(_), _) => self.errors += 1,
            (None, true) => self.passed += 1,
            (None, false) => self.failed += 1,
        }
    }
}

/// Outcome of a grid run, overall and per identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub n: usize,
    pub k: i64,
    pub max_size: i64,
    pub total: Tally,
    pub by_identity: BTreeMap<Identity, Tally>,
}

impl GridSummary {
    pub fn all_passed(&self) -> bool {
        self.total.failed == 0 && self.total.errors == 0
    }
}

/// Runs `identities` over the grid, computing the needed `P_lambda` first.
pub fn run_grid(
    ctx: &MacdonaldContext,
    identities: &[Identity],
    max_size: i64,
    exec: Execution,
) -> Result<(Vec<VerificationReport>, GridSummary)> {
    let mut tasks = Vec::new();
    for &id in identities {
        tasks.extend(grid_params(id, ctx, max_size).into_iter().map(|p| (id, p)));
    }
    // Pieri checks reach one step past the size bound
    let extra = if identities.contains(&Identity::Pieri) {
        ctx.n() as i64 - 1
    } else {
        0
    };
    ctx.precompute(&dominant_weights_up_to(ctx.n(), max_size + extra), exec)?;
    let reports = exec.map(&tasks, |(id, p)| verify(*id, p, ctx));
    let mut summary = GridSummary {
        n: ctx.n(),
        k: ctx.k(),
        max_size,
        ..GridSummary::default()
    };
    for r in &reports {
        summary.total.record(r);
        summary.by_identity.entry(r.identity).or_default().record(r);
    }
    Ok((reports, summary))
}
