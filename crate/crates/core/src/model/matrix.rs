use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::exact::{format_rational, LaurentPoly, Rational};

use super::ModelError;

/// Minimal ring interface shared by [`Rational`] and [`LaurentPoly`] entries.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn is_zero_scalar(&self) -> bool;
    fn add_s(&self, other: &Self) -> Self;
    fn mul_s(&self, other: &Self) -> Self;
    fn neg_s(&self) -> Self;
    fn to_json(&self) -> Value;
}

impl Scalar for Rational {
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_s(&self) -> Self {
        -self
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Scalar for LaurentPoly {
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_s(&self) -> Self {
        -self
    }
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("LaurentPoly serializes")
    }
}

/// Sparse matrix; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

/// Exact rational matrix, e.g. the Markov generator.
pub type SparseExactMatrix = SparseMatrix<Rational>;

impl<T: Scalar> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, one: T) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.entries.insert((i, i), one.clone());
        }
        m
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self[i][j] += v`, pruning exact zeros.
    pub fn add_entry(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        let slot = match self.entries.remove(&(i, j)) {
            Some(old) => old.add_s(&v),
            None => v,
        };
        if !slot.is_zero_scalar() {
            self.entries.insert((i, j), slot);
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        let mut r = SparseMatrix::new(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            r.add_entry(i, j, f(v));
        }
        r
    }

    pub fn try_map<U: Scalar, E>(
        &self,
        f: impl Fn(&T) -> Result<U, E>,
    ) -> Result<SparseMatrix<U>, E> {
        let mut r = SparseMatrix::new(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            r.add_entry(i, j, f(v)?);
        }
        Ok(r)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.mul_s(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModelError> {
        self.same_dims(other)?;
        let mut r = self.clone();
        for (&(i, j), v) in &other.entries {
            r.add_entry(i, j, v.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ModelError> {
        self.same_dims(other)?;
        let mut r = self.clone();
        for (&(i, j), v) in &other.entries {
            r.add_entry(i, j, v.neg_s());
        }
        Ok(r)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ModelError> {
        if self.cols != other.rows {
            return Err(ModelError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut r = Self::new(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    r.add_entry(i, j, a.mul_s(b));
                }
            }
        }
        Ok(r)
    }

    /// `M v`; rows without entries receive `zero`.
    pub fn apply(&self, v: &[T], zero: &T) -> Result<Vec<T>, ModelError> {
        if v.len() != self.cols {
            return Err(ModelError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![zero.clone(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] = out[i].add_s(&a.mul_s(&v[j]));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut r = Self::new(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            r.entries.insert((j, i), v.clone());
        }
        r
    }

    fn same_dims(&self, other: &Self) -> Result<(), ModelError> {
        if self.dims() == other.dims() {
            Ok(())
        } else {
            Err(ModelError::Dimension(format!(
                "{:?} vs {:?}",
                self.dims(),
                other.dims()
            )))
        }
    }

    /// `{"dims":[r,c],"entries":[[i,j,scalar],…]}` in row-major order.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j), v)| json!([i, j, v.to_json()]))
            .collect();
        json!({"dims": [self.rows, self.cols], "entries": entries})
    }
}

impl SparseMatrix<Rational> {
    /// Column sums; zero for a Markov generator.
    pub fn column_sums(&self) -> Vec<Rational> {
        let mut s = vec![Rational::zero(); self.cols];
        for (&(_, j), v) in &self.entries {
            s[j] += v;
        }
        s
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    #[test]
    fn product_and_json() {
        let mut a = SparseExactMatrix::new(2, 2);
        a.add_entry(0, 1, int(2));
        a.add_entry(1, 0, q(1, 2));
        let p = a.mul(&a).unwrap();
        assert_eq!(p, SparseExactMatrix::identity(2, int(1)));
        assert_eq!(
            a.to_json().to_string(),
            r#"{"dims":[2,2],"entries":[[0,1,"2"],[1,0,"1/2"]]}"#
        );
        a.add_entry(0, 1, int(-2));
        assert_eq!(a.nnz(), 1);
    }
}
