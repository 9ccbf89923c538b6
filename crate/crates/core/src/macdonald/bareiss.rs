//! Fraction-free Gaussian elimination over Laurent polynomials.

use crate::exactalg::LaurentPoly;

/// Solution `x = numerators / det` of a square system `a x = b`.
#[derive(Debug, Clone)]
pub struct FractionFreeSolution {
    pub numerators: Vec<LaurentPoly>,
    pub det: LaurentPoly,
}

/// Solves `a x = b` by Bareiss elimination. Every intermediate division is
/// exact in the polynomial ring. Returns `None` for a singular matrix.
pub fn solve(a: &[Vec<LaurentPoly>], b: &[LaurentPoly]) -> Option<FractionFreeSolution> {
    let m = b.len();
    assert_eq!(a.len(), m);
    if m == 0 {
        return Some(FractionFreeSolution {
            numerators: Vec::new(),
            det: LaurentPoly::one(),
        });
    }
    let mut mat: Vec<Vec<LaurentPoly>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), m);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut prev = LaurentPoly::one();
    for k in 0..m {
        let pivot = (k..m).find(|&i| !mat[i][k].is_zero())?;
        mat.swap(k, pivot);
        for i in k + 1..m {
            for j in k + 1..=m {
                let t = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = t.div_exact(&prev).expect("Bareiss step is exact");
            }
            mat[i][k] = LaurentPoly::zero();
        }
        prev = mat[k][k].clone();
    }

    // det * x_i = (det * b_i - sum_{j > i} U_ij (det * x_j)) / U_ii, exactly
    let det = mat[m - 1][m - 1].clone();
    let mut y = vec![LaurentPoly::zero(); m];
    for i in (0..m).rev() {
        let mut acc = &det * &mat[i][m];
        for j in i + 1..m {
            acc = &acc - &(&mat[i][j] * &y[j]);
        }
        y[i] = acc
            .div_exact(&mat[i][i])
            .expect("back substitution is exact");
    }
    Some(FractionFreeSolution { numerators: y, det })
}
