//! Delannoy numbers and exact determinants of their square sub-matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type ExactInt = BigInt;

/// Dense square matrix of exact integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrixExact {
    n: usize,
    entries: Vec<ExactInt>,
}

impl SquareMatrixExact {
    pub fn zeros(n: usize) -> Self {
        SquareMatrixExact {
            n,
            entries: vec![ExactInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ExactInt::one() } else { ExactInt::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExactInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrixExact { n, entries }
    }

    /// `None` unless `rows` is square.
    pub fn from_rows<T: Into<ExactInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self::from_fn(n, |i, j| rows[i][j].clone().into()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactInt {
        &self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "order mismatch");
        Self::from_fn(self.n, |i, j| {
            (0..self.n).map(|l| self.get(i, l) * other.get(l, j)).sum()
        })
    }
}

impl fmt::Display for SquareMatrixExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Memoized Delannoy numbers `a[i][j]`, grown on demand.
#[derive(Debug, Clone, Default)]
pub struct DelannoyTable {
    // rows[i][j] for j < rows[i].len(); rectangular
    rows: Vec<Vec<ExactInt>>,
}

impl DelannoyTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure(&mut self, max_i: usize, max_j: usize) {
        let width = self.rows.first().map_or(0, Vec::len).max(max_j + 1);
        let height = self.rows.len().max(max_i + 1);
        for i in 0..height {
            if i == self.rows.len() {
                self.rows.push(Vec::with_capacity(width));
            }
            for j in self.rows[i].len()..width {
                let v = if i == 0 || j == 0 {
                    ExactInt::one()
                } else {
                    &self.rows[i - 1][j] + &self.rows[i][j - 1] + &self.rows[i - 1][j - 1]
                };
                self.rows[i].push(v);
            }
        }
    }

    /// Number of Schröder-type paths from `(i, 0)` to `(0, j)`.
    pub fn get(&mut self, i: usize, j: usize) -> &ExactInt {
        self.ensure(i, j);
        &self.rows[i][j]
    }

    /// The upper-left `n x n` block `A_[n]`.
    pub fn matrix(&mut self, n: usize) -> SquareMatrixExact {
        if n > 0 {
            self.ensure(n - 1, n - 1);
        }
        SquareMatrixExact::from_fn(n, |i, j| self.rows[i][j].clone())
    }
}

pub fn delannoy(i: usize, j: usize) -> ExactInt {
    DelannoyTable::new().get(i, j).clone()
}

pub fn delannoy_matrix(n: usize) -> SquareMatrixExact {
    DelannoyTable::new().matrix(n)
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det_exact(m: &SquareMatrixExact) -> ExactInt {
    let n = m.order();
    if n == 0 {
        return ExactInt::one();
    }
    let mut a: Vec<Vec<ExactInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = ExactInt::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return ExactInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = v;
            }
            a[i][p] = ExactInt::zero();
        }
        prev = a[p][p].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `E_[n]`: unitriangular, `-1` directly above the diagonal.
pub fn shift_matrix(n: usize) -> SquareMatrixExact {
    SquareMatrixExact::from_fn(n, |i, j| {
        if i == j {
            ExactInt::one()
        } else if i + 1 == j {
            -ExactInt::one()
        } else {
            ExactInt::zero()
        }
    })
}

/// `Eᵀ A_[n] E`.
pub fn reduced_matrix(n: usize) -> SquareMatrixExact {
    let e = shift_matrix(n);
    e.transpose().mul(&delannoy_matrix(n)).mul(&e)
}

/// Checks `Eᵀ A_[n] E = diag(1, 2 A_[n-1])` exactly.
pub fn verify_reduction(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let reduced = reduced_matrix(n);
    let smaller = delannoy_matrix(n - 1);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if i == 0 || j == 0 {
                if i == j {
                    ExactInt::one()
                } else {
                    ExactInt::zero()
                }
            } else {
                smaller.get(i - 1, j - 1) * 2
            };
            reduced.get(i, j) == &expected
        })
    })
}

/// `2^{n(n-1)/2}`.
pub fn power_of_two_binomial(n: usize) -> ExactInt {
    ExactInt::one() << (n * n.saturating_sub(1) / 2)
}
