use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rational;

use super::matrix::SparseExactMatrix;

/// Kernel basis by fraction-free (Bareiss) elimination.
///
/// Rows are scaled to integers first; every division during elimination is
/// exact. Each returned vector has its first nonzero entry equal to 1.
pub fn exact_nullspace(mat: &SparseExactMatrix) -> Vec<Vec<Rational>> {
    let (rows, cols) = mat.dims();
    let mut a = integer_rows(mat);
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let num = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }

    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Rational::zero();
            for j in pc + 1..cols {
                if !a[k][j].is_zero() && !x[j].is_zero() {
                    s += Rational::from_integer(a[k][j].clone()) * &x[j];
                }
            }
            x[pc] = -s / Rational::from_integer(a[k][pc].clone());
        }
        normalize(&mut x);
        basis.push(x);
    }
    basis
}

fn integer_rows(mat: &SparseExactMatrix) -> Vec<Vec<BigInt>> {
    let dense = mat.to_dense();
    dense
        .into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

fn normalize(x: &mut [Rational]) {
    if let Some(lead) = x.iter().find(|v| !v.is_zero()).cloned() {
        for v in x.iter_mut() {
            *v /= &lead;
        }
    }
}
