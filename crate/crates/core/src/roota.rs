//! Weights, roots and the Weyl group of type `A_{n-1}`.
//!
//! The weight lattice is `Z^n` modulo the all-ones vector. Every [`Weight`] is
//! stored through its representative with last coordinate 0, so dominant
//! weights are exactly partitions with at most `n - 1` nonzero parts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    /// Canonicalises a raw integer vector.
    pub fn new(mut coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "weight needs at least one coordinate");
        let last = *coords.last().unwrap();
        if last != 0 {
            for c in coords.iter_mut() {
                *c -= last;
            }
        }
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `e_i - e_j` (0-based indices).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i] += 1;
        v[j] -= 1;
        Self::new(v)
    }

    /// The fundamental weight `omega_r`, `1 <= r <= n - 1`.
    pub fn fundamental(n: usize, r: usize) -> Result<Self> {
        check_r(n, r)?;
        Ok(Self::new((0..n).map(|i| i64::from(i < r)).collect()))
    }

    /// `rho` with representative `(n-1, n-2, ..., 0)`.
    pub fn rho(n: usize) -> Self {
        Self((0..n).rev().map(|i| i as i64).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Sum of canonical coordinates; for dominant weights this is the partition size.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        self.check_same(other);
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.check_same(other);
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Self::new(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Self::new(self.0.iter().map(|a| a * k).collect())
    }

    fn check_same(&self, other: &Weight) {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
    }

    /// Invariant form; panics on rank mismatch (see [`pairing`] for the checked version).
    pub fn pair(&self, other: &Weight) -> Ratio<i64> {
        self.check_same(other);
        let n = self.rank() as i64;
        let dot: i64 = self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum();
        let sa: i64 = self.0.iter().sum();
        let sb: i64 = other.0.iter().sum();
        Ratio::from_integer(dot) - Ratio::new(sa * sb, n)
    }

    /// Pairing with a root, which is always an integer.
    pub fn pair_int(&self, root: &Weight) -> i64 {
        let p = self.pair(root);
        debug_assert!(p.is_integer());
        p.to_integer()
    }
}

fn check_r(n: usize, r: usize) -> Result<()> {
    if r < 1 || r + 1 > n {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            range: format!("[1, {}]", n.saturating_sub(1)),
        });
    }
    Ok(())
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {:?} in {:?}", t, s)))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight::new(coords))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checked invariant form `(a, b) = sum a_i b_i - (sum a)(sum b)/n`.
pub fn pairing(a: &Weight, b: &Weight) -> Result<Ratio<i64>> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    Ok(a.pair(b))
}

/// Shifts `lam - mu` to coordinate sum 0, or `None` if they lie in different
/// cosets of the root lattice.
fn root_lattice_difference(mu: &Weight, lam: &Weight) -> Option<Vec<i64>> {
    let n = lam.rank() as i64;
    let mut d: Vec<i64> = lam.0.iter().zip(&mu.0).map(|(a, b)| a - b).collect();
    let s: i64 = d.iter().sum();
    if s % n != 0 {
        return None;
    }
    let c = s / n;
    for x in d.iter_mut() {
        *x -= c;
    }
    Some(d)
}

/// Partial sums of a root-lattice element are its simple-root coordinates.
fn simple_root_coords(d: &[i64]) -> Vec<i64> {
    d.iter()
        .take(d.len() - 1)
        .scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `mu <= lam` in the dominance order: `lam - mu` is a nonnegative
/// combination of simple roots.
pub fn dominance_leq(mu: &Weight, lam: &Weight) -> bool {
    if mu.rank() != lam.rank() {
        return false;
    }
    match root_lattice_difference(mu, lam) {
        Some(d) => simple_root_coords(&d).iter().all(|&c| c >= 0),
        None => false,
    }
}

fn height(mu: &Weight, lam: &Weight) -> i64 {
    let d = root_lattice_difference(mu, lam).expect("same coset");
    simple_root_coords(&d).iter().sum()
}

/// Partitions of `total` into at most `parts` parts, each at most `max_part`,
/// padded with zeros to length `parts`.
fn partitions(
    total: i64,
    parts: usize,
    max_part: i64,
    out: &mut Vec<Vec<i64>>,
    cur: &mut Vec<i64>,
) {
    if cur.len() == parts {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let remaining = (parts - cur.len()) as i64;
    let hi = total.min(max_part);
    for p in (0..=hi).rev() {
        if p * remaining < total {
            break;
        }
        cur.push(p);
        partitions(total - p, parts, p, out, cur);
        cur.pop();
    }
}

/// Dominant weights of rank `n` with partition size exactly `size`.
pub fn dominant_weights_of_size(n: usize, size: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    partitions(size, n - 1, size, &mut out, &mut Vec::new());
    out.into_iter()
        .map(|mut p| {
            p.push(0);
            Weight(p)
        })
        .collect()
}

/// All dominant weights of rank `n` with partition size at most `max_size`.
pub fn dominant_weights_up_to(n: usize, max_size: i64) -> Vec<Weight> {
    (0..=max_size)
        .flat_map(|s| dominant_weights_of_size(n, s))
        .collect()
}

/// All dominant `mu <= lam`, strongest first: sorted by the height of
/// `lam - mu`, ties broken lexicographically on canonical coordinates.
pub fn dominant_below(lam: &Weight) -> Result<Vec<Weight>> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let n = lam.rank();
    let size = lam.size();
    let mut out: Vec<Weight> = (0..)
        .map(|j| size - j * n as i64)
        .take_while(|&s| s >= 0)
        .flat_map(|s| dominant_weights_of_size(n, s))
        .filter(|mu| dominance_leq(mu, lam))
        .collect();
    out.sort_by(|a, b| height(a, lam).cmp(&height(b, lam)).then_with(|| a.cmp(b)));
    Ok(out)
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The `S_n`-orbit of `lam`, sorted and without repeats.
pub fn weyl_orbit(lam: &Weight) -> Vec<Weight> {
    let mut v = lam.0.clone();
    v.sort_unstable();
    let mut out = BTreeSet::new();
    loop {
        out.insert(Weight::new(v.clone()));
        if !next_permutation(&mut v) {
            break;
        }
    }
    out.into_iter().collect()
}

/// The weights of `Lambda^r C^n`: indicator vectors of `r`-subsets.
pub fn lambda_r_weights(n: usize, r: usize) -> Result<Vec<Weight>> {
    check_r(n, r)?;
    let mut v: Vec<i64> = (0..n).map(|i| i64::from(i >= n - r)).collect();
    let mut out = Vec::new();
    loop {
        out.push(Weight::new(v.clone()));
        if !next_permutation(&mut v) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Root data of `A_{n-1}`.
#[derive(Clone, Debug)]
pub struct RootData {
    pub n: usize,
    /// `e_i - e_j`, `i < j`, in lexicographic order of `(i, j)`.
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub rho: Weight,
}

impl RootData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let positive_roots = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Weight::root(n, i, j))
            .collect();
        let simple_roots = (0..n - 1).map(|i| Weight::root(n, i, i + 1)).collect();
        Ok(Self {
            n,
            positive_roots,
            simple_roots,
            rho: Weight::rho(n),
        })
    }

    /// All roots, positive ones first.
    pub fn all_roots(&self) -> impl Iterator<Item = Weight> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|a| a.neg()))
    }

    /// `|W| = n!`.
    pub fn weyl_order(&self) -> u64 {
        (1..=self.n as u64).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(w(&[3, 2, 1]), w(&[2, 1, 0]));
        assert_eq!(w(&[3, 2, 1]).coords(), &[2, 1, 0]);
        assert_eq!("1,-1,0".parse::<Weight>().unwrap(), Weight::root(3, 0, 1));
        assert!("1,,0".parse::<Weight>().is_err());
    }

    #[test]
    fn pairing_examples() {
        let rho = Weight::rho(3);
        assert_eq!(
            pairing(&Weight::root(3, 0, 1), &rho).unwrap(),
            Ratio::from_integer(1)
        );
        let om = Weight::fundamental(2, 1).unwrap();
        assert_eq!(pairing(&om, &om).unwrap(), Ratio::new(1, 2));
        assert_eq!(
            pairing(&rho, &Weight::zero(3)).unwrap(),
            Ratio::from_integer(0)
        );
        assert!(matches!(
            pairing(&Weight::zero(2), &Weight::zero(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn roots_have_norm_two() {
        let rd = RootData::new(4).unwrap();
        assert_eq!(rd.positive_roots.len(), 6);
        for a in rd.all_roots() {
            assert_eq!(a.pair(&a), Ratio::from_integer(2));
        }
        for a in &rd.simple_roots {
            assert_eq!(rd.rho.pair(a), Ratio::from_integer(1));
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for n in 2..6 {
            let rd = RootData::new(n).unwrap();
            let twice = rd
                .positive_roots
                .iter()
                .fold(Weight::zero(n), |acc, a| acc.add(a));
            assert_eq!(twice, rd.rho.scaled(2));
        }
    }

    #[test]
    fn dominance_examples() {
        let lam = w(&[2, 0, 0]);
        assert!(dominance_leq(&lam, &lam));
        assert!(dominance_leq(&w(&[1, 1, 0]), &lam));
        assert!(!dominance_leq(&lam, &w(&[1, 1, 0])));
        assert!(!dominance_leq(&w(&[1, 0]), &Weight::zero(2)));
    }

    #[test]
    fn dominant_below_examples() {
        assert_eq!(
            dominant_below(&Weight::zero(3)).unwrap(),
            vec![Weight::zero(3)]
        );
        assert_eq!(
            dominant_below(&w(&[2, 0])).unwrap(),
            vec![w(&[2, 0]), w(&[0, 0])]
        );
        assert_eq!(dominant_below(&w(&[1, 1, 0])).unwrap(), vec![w(&[1, 1, 0])]);
        assert_eq!(
            dominant_below(&w(&[3, 0, 0])).unwrap(),
            vec![w(&[3, 0, 0]), w(&[2, 1, 0]), w(&[0, 0, 0])]
        );
        assert!(dominant_below(&w(&[0, 1, 0])).is_err());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(weyl_orbit(&Weight::zero(3)), vec![Weight::zero(3)]);
        assert_eq!(weyl_orbit(&w(&[1, 0])), vec![w(&[-1, 0]), w(&[1, 0])]);
        assert_eq!(weyl_orbit(&Weight::rho(3)).len(), 6);
        assert_eq!(weyl_orbit(&w(&[2, 1, 1, 0])).len(), 12);
    }

    #[test]
    fn lambda_r_examples() {
        assert_eq!(
            lambda_r_weights(2, 1).unwrap(),
            vec![w(&[-1, 0]), w(&[1, 0])]
        );
        assert!(lambda_r_weights(3, 3).is_err());
        assert!(lambda_r_weights(3, 0).is_err());
        let l = lambda_r_weights(3, 1).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.iter().filter(|x| x.is_dominant()).count(), 1);
        assert!(l.contains(&Weight::fundamental(3, 1).unwrap()));
        for n in 2..6 {
            for r in 1..n {
                for nu in lambda_r_weights(n, r).unwrap() {
                    assert_eq!(nu.pair(&nu), Ratio::new((r * (n - r)) as i64, n as i64));
                }
            }
        }
    }

    #[test]
    fn root_pairings_are_integral() {
        let rd = RootData::new(4).unwrap();
        for nu in dominant_weights_up_to(4, 4) {
            for a in rd.all_roots() {
                assert!(nu.pair(&a).is_integer());
            }
        }
    }

    #[test]
    fn dominant_enumeration_counts() {
        // partitions of 0..=4 with at most 2 parts: 1 + 1 + 2 + 2 + 3
        assert_eq!(dominant_weights_up_to(3, 4).len(), 9);
        assert_eq!(dominant_weights_up_to(2, 4).len(), 5);
    }
}
