//! Macdonald polynomials `P_lambda(q, q^k)` by triangular orthogonalisation
//! against the constant-term inner product with kernel
//! `Delta_{q,q^k} = prod_{alpha in R} prod_{i=0}^{k-1} (1 - q^(2i) e^alpha)`.

mod bareiss;
mod cache;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use bareiss::FractionFreeSolution;
pub use cache::{CacheEntry, CacheFile, CoeffRecord};

use crate::error::{Error, Result};
use crate::exactalg::{ExactScalar, LaurentPoly};
use crate::par::Execution;
use crate::roota::{dominant_below, weyl_orbit, RootData, Weight};
use crate::weightalg::GroupAlgebraElement;

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    Ok(())
}

/// `1 - c e^w`.
fn one_minus(n: usize, c: ExactScalar, w: Weight) -> GroupAlgebraElement {
    let mut f = GroupAlgebraElement::one(n);
    f.add_term(w, -c);
    f
}

fn chi0_product(rd: &RootData, k: i64) -> GroupAlgebraElement {
    let n = rd.rho.rank();
    let mut acc = GroupAlgebraElement::exp(&rd.rho.scaled(k - 1));
    for a in &rd.positive_roots {
        for i in 1..k {
            acc = &acc * &one_minus(n, ExactScalar::q_pow_int(2 * i), a.neg());
        }
    }
    acc
}

/// Expanded `prod_{alpha in R} prod_{i=0}^{k-1} (1 - q^(2i) e^alpha)`.
pub fn delta_kernel(n: usize, k: i64) -> Result<GroupAlgebraElement> {
    check_k(k)?;
    let rd = RootData::new(n)?;
    let mut acc = GroupAlgebraElement::one(n);
    for a in rd.all_roots() {
        for i in 0..k {
            acc = &acc * &one_minus(n, ExactScalar::q_pow_int(2 * i), a.clone());
        }
    }
    Ok(acc)
}

/// `[f g_bar h]_0` computed from the terms that can reach `e^0`.
pub fn constant_term_of_product(
    f: &GroupAlgebraElement,
    g: &GroupAlgebraElement,
    h: &GroupAlgebraElement,
) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (a, fa) in f.terms() {
        for (b, gb) in g.terms() {
            let hc = h.coeff(&b.sub(a));
            if !hc.is_zero() {
                acc = &acc + &(&(fa * gb) * &hc);
            }
        }
    }
    acc
}

/// Fixed `(n, k)` with root data, kernel and a thread-safe memo of `P_lambda`.
pub struct MacdonaldContext {
    n: usize,
    k: i64,
    root_data: RootData,
    kernel: GroupAlgebraElement,
    weyl_order: ExactScalar,
    poly_cache: RwLock<HashMap<Weight, Arc<GroupAlgebraElement>>>,
    gram_cache: RwLock<HashMap<(Weight, Weight), ExactScalar>>,
    norm_cache: RwLock<HashMap<Weight, ExactScalar>>,
    chi0: GroupAlgebraElement,
}

impl std::fmt::Debug for MacdonaldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MacdonaldContext")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("cached", &self.poly_cache.read().unwrap().len())
            .finish()
    }
}

impl MacdonaldContext {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        check_k(k)?;
        let root_data = RootData::new(n)?;
        let kernel = delta_kernel(n, k)?;
        let weyl_order = ExactScalar::from_int(root_data.weyl_order() as i64);
        let chi0 = chi0_product(&root_data, k);
        Ok(Self {
            n,
            k,
            root_data,
            kernel,
            weyl_order,
            poly_cache: RwLock::new(HashMap::new()),
            gram_cache: RwLock::new(HashMap::new()),
            norm_cache: RwLock::new(HashMap::new()),
            chi0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn root_data(&self) -> &RootData {
        &self.root_data
    }

    pub fn rho(&self) -> &Weight {
        &self.root_data.rho
    }

    /// `k rho`.
    pub fn k_rho(&self) -> Weight {
        self.root_data.rho.scaled(self.k)
    }

    /// `Delta_{q,q^k}`.
    pub fn kernel(&self) -> &GroupAlgebraElement {
        &self.kernel
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: w.rank(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }

    /// `<f, g>_k = (1/|W|) [f g_bar Delta_{q,q^k}]_0`.
    pub fn inner_product(
        &self,
        f: &GroupAlgebraElement,
        g: &GroupAlgebraElement,
    ) -> Result<ExactScalar> {
        for x in [f, g] {
            if x.rank() != self.n {
                return Err(Error::RankMismatch {
                    left: self.n,
                    right: x.rank(),
                });
            }
        }
        constant_term_of_product(f, g, &self.kernel).checked_div(&self.weyl_order)
    }

    /// `[m_mu m_nu_bar Delta]_0`, using W-invariance of the kernel:
    /// `|W mu| * sum_{b in W nu} Delta_{b - mu}`.
    fn gram_entry(&self, mu: &Weight, nu: &Weight) -> ExactScalar {
        let key = if mu <= nu {
            (mu.clone(), nu.clone())
        } else {
            (nu.clone(), mu.clone())
        };
        if let Some(v) = self.gram_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let (a, b) = (&key.0, &key.1);
        let orbit_a = weyl_orbit(a).len() as i64;
        let s: ExactScalar = weyl_orbit(b)
            .iter()
            .map(|w| self.kernel.coeff(&w.sub(a)))
            .sum();
        let v = &s * &ExactScalar::from_int(orbit_a);
        self.gram_cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }

    /// Coefficients of `P_lambda` in the orbit-sum basis, in the order of
    /// [`dominant_below`] (leading coefficient first, always 1).
    pub fn macdonald_coeffs(&self, lam: &Weight) -> Result<Vec<(Weight, ExactScalar)>> {
        self.check_dominant(lam)?;
        let basis = dominant_below(lam)?;
        let lower = &basis[1..];
        let mut out = vec![(lam.clone(), ExactScalar::one())];
        if lower.is_empty() {
            return Ok(out);
        }
        let a: Vec<Vec<ExactScalar>> = lower
            .iter()
            .map(|nu| lower.iter().map(|mu| self.gram_entry(mu, nu)).collect())
            .collect();
        let b: Vec<ExactScalar> = lower.iter().map(|nu| -self.gram_entry(lam, nu)).collect();

        let scale = a
            .iter()
            .flatten()
            .chain(&b)
            .fold(1i64, |l, x| num_integer::lcm(l, x.scale()));
        let to_poly = |x: &ExactScalar| {
            debug_assert!(x.is_polynomial());
            x.lifted(scale).0
        };
        let pa: Vec<Vec<LaurentPoly>> = a
            .iter()
            .map(|row| row.iter().map(to_poly).collect())
            .collect();
        let pb: Vec<LaurentPoly> = b.iter().map(to_poly).collect();

        let sol = bareiss::solve(&pa, &pb).ok_or_else(|| Error::SingularSystem {
            lambda: lam.to_string(),
            system: format!("basis {:?}, matrix {:?}, rhs {:?}", lower, a, b),
        })?;
        for (mu, y) in lower.iter().zip(sol.numerators) {
            let c = ExactScalar::from_parts(y, sol.det.clone(), scale)?;
            if !c.is_zero() {
                out.push((mu.clone(), c));
            }
        }
        Ok(out)
    }

    /// `P_lambda(q, q^k)`, memoised.
    pub fn macdonald_poly(&self, lam: &Weight) -> Result<Arc<GroupAlgebraElement>> {
        self.check_dominant(lam)?;
        if let Some(p) = self.poly_cache.read().unwrap().get(lam) {
            return Ok(Arc::clone(p));
        }
        let coeffs = self.macdonald_coeffs(lam)?;
        let p = GroupAlgebraElement::from_orbit_basis(self.n, coeffs.iter().map(|(w, c)| (w, c)))?;
        Ok(self.insert_poly(lam.clone(), p))
    }

    fn insert_poly(&self, lam: Weight, p: GroupAlgebraElement) -> Arc<GroupAlgebraElement> {
        let mut cache = self.poly_cache.write().unwrap();
        Arc::clone(cache.entry(lam).or_insert_with(|| Arc::new(p)))
    }

    /// Computes (and caches) `P_lambda` for every weight in `lams`.
    pub fn precompute(&self, lams: &[Weight], exec: Execution) -> Result<()> {
        exec.map(lams, |l| self.macdonald_poly(l).map(|_| ()))
            .into_iter()
            .collect()
    }

    /// `chi_0 = e^((k-1) rho) prod_{alpha > 0} prod_{i=1}^{k-1} (1 - q^(2i) e^-alpha)`.
    pub fn chi0(&self) -> GroupAlgebraElement {
        self.chi0.clone()
    }

    /// `chi_lambda = P_lambda chi_0`.
    pub fn chi(&self, lam: &Weight) -> Result<GroupAlgebraElement> {
        let p = self.macdonald_poly(lam)?;
        Ok(&*p * &self.chi0)
    }

    /// `<P_lambda, P_lambda>_k` by direct constant-term evaluation.
    pub fn norm(&self, lam: &Weight) -> Result<ExactScalar> {
        if let Some(v) = self.norm_cache.read().unwrap().get(lam) {
            return Ok(v.clone());
        }
        let p = self.macdonald_poly(lam)?;
        let v = self.inner_product(&p, &p)?;
        self.norm_cache
            .write()
            .unwrap()
            .insert(lam.clone(), v.clone());
        Ok(v)
    }

    /// Evaluates `P_lambda` at `q^(2 (mu + k rho))`.
    pub fn eval_at_shifted(&self, lam: &Weight, mu: &Weight) -> Result<ExactScalar> {
        self.check_weight(mu)?;
        let p = self.macdonald_poly(lam)?;
        Ok(p.evaluate_at(&mu.add(&self.k_rho())))
    }

    /// Weights currently in the polynomial cache, sorted.
    pub fn cached_weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.poly_cache.read().unwrap().keys().cloned().collect();
        v.sort();
        v
    }
}
