use std::fmt;

use crate::scalar::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// How an exact `LDLᵀ` pass on a symmetric matrix ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdFailure<F> {
    /// The Schur complement had a negative diagonal entry at `index`.
    NegativePivot { index: usize, value: F },
    /// A zero pivot at `index` with a nonzero entry in its row.
    ZeroPivotCoupled { index: usize },
}

/// Exact `LDLᵀ` certificate: the `D` entries in elimination order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldlt<F> {
    pub pivots: Vec<F>,
    pub failure: Option<PsdFailure<F>>,
}

impl<F: Field> Ldlt<F> {
    pub fn is_psd(&self) -> bool {
        self.failure.is_none()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.failure.is_none() && self.pivots.iter().all(|p| p.is_positive())
    }

    /// Number of positive pivots, which is the rank when the matrix is PSD.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_positive()).count()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).clone() - f.clone() * rv.clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Kernel basis. The vector for free column `f` has a 1 in position `f`
    /// and zeros in every other free position.
    pub fn nullspace(&self) -> Vec<(usize, Vec<F>)> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for p in &pivots {
            is_pivot[*p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (r, p) in pivots.iter().enumerate() {
                v[*p] = -m.get(r, f).clone();
            }
            out.push((f, v));
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Exact symmetric `LDLᵀ` without pivoting. The matrix is positive
    /// semidefinite iff no failure is reported.
    pub fn ldlt(&self) -> Ldlt<F> {
        assert!(self.is_symmetric(), "ldlt needs a symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let p = a.get(k, k).clone();
            if p.is_negative() {
                return Ldlt { pivots, failure: Some(PsdFailure::NegativePivot { index: k, value: p }) };
            }
            if p.is_zero() {
                if (k + 1..n).any(|j| !a.get(k, j).is_zero()) {
                    return Ldlt { pivots, failure: Some(PsdFailure::ZeroPivotCoupled { index: k }) };
                }
                pivots.push(p);
                continue;
            }
            for i in k + 1..n {
                let l = a.get(i, k).clone();
                if l.is_zero() {
                    continue;
                }
                let l = l / p.clone();
                for j in k + 1..=i {
                    let akj = a.get(k, j);
                    if akj.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j).clone() - l.clone() * akj.clone();
                    a.set(i, j, v.clone());
                    a.set(j, i, v);
                }
            }
            pivots.push(p);
        }
        Ldlt { pivots, failure: None }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| Rational::from_i64(*x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let (_, v) = &ns[0];
        for i in 0..3 {
            let s = (0..3).fold(Rational::from_i64(0), |acc, j| acc + a.get(i, j).clone() * v[j].clone());
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn ldlt_classifies() {
        assert!(m(&[&[2, 1], &[1, 2]]).ldlt().is_positive_definite());
        let semi = m(&[&[1, 1], &[1, 1]]).ldlt();
        assert!(semi.is_psd() && !semi.is_positive_definite());
        assert_eq!(semi.rank(), 1);
        let indefinite = m(&[&[1, 2], &[2, 1]]).ldlt();
        assert!(matches!(indefinite.failure, Some(PsdFailure::NegativePivot { index: 1, .. })));
        let coupled = m(&[&[0, 1], &[1, 0]]).ldlt();
        assert!(matches!(coupled.failure, Some(PsdFailure::ZeroPivotCoupled { index: 0 })));
    }
}
