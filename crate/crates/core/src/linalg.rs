//! Small dense complex linear algebra: Kronecker products and Gaussian elimination.

use num_complex::Complex64;

use crate::pauli::Letter;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: Complex64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.max_abs_diff(&self.adjoint()) <= tol
    }
}

/// 2×2 matrix of a single-qubit letter in the `{e1, e2}` basis.
pub fn pauli_matrix(l: Letter) -> DenseMatrix {
    let i = Complex64::new(0.0, 1.0);
    let rows = match l {
        Letter::I => [[ONE, ZERO], [ZERO, ONE]],
        Letter::X1 => [[ZERO, ONE], [ONE, ZERO]],
        Letter::X2 => [[ZERO, -i], [i, ZERO]],
        Letter::X3 => [[ONE, ZERO], [ZERO, -ONE]],
    };
    DenseMatrix::from_rows(&rows.map(|r| r.to_vec()))
}

/// Reduces `m` to reduced row-echelon form in place with partial pivoting.
/// Entries of modulus below `tol` count as zero. Returns the pivot columns.
pub fn rref(m: &mut [Vec<Complex64>], tol: f64) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let (best, mag) = (r..nrows)
            .map(|i| (i, m[i][c].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag < tol {
            for row in m.iter_mut().skip(r) {
                row[c] = ZERO;
            }
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for x in m[r].iter_mut() {
            *x /= p;
        }
        m[r][c] = ONE;
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == ZERO {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
            row[c] = ZERO;
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, tol).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `cols` columns; one
/// vector per free column, with that column set to one.
pub fn null_space(rows: &[Vec<Complex64>], cols: usize, tol: f64) -> Vec<Vec<Complex64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, tol);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![ZERO; cols];
            x[free] = ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][free];
            }
            x
        })
        .collect()
}

/// Coefficients `α` with `Σ α_k basis[k] = target`, or `None` when `target`
/// is outside the span. Free directions are set to zero.
pub fn solve_in_span(
    basis: &[Vec<Complex64>],
    target: &[Complex64],
    tol: f64,
) -> Option<Vec<Complex64>> {
    let k = basis.len();
    let mut m: Vec<Vec<Complex64>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Complex64> = basis.iter().map(|b| b[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let pivots = rref(&mut m, tol);
    if pivots.contains(&k) {
        return None;
    }
    let mut alpha = vec![ZERO; k];
    for (r, &pc) in pivots.iter().enumerate() {
        alpha[pc] = m[r][k];
    }
    Some(alpha)
}
