//! Dense square matrices over arbitrary-precision naturals, just enough for
//! binary exponentiation of a companion matrix.

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Matrix {
    dim: usize,
    cells: Vec<BigUint>,
}

impl Matrix {
    pub(crate) fn identity(dim: usize) -> Self {
        let mut cells = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            cells[i * dim + i] = BigUint::one();
        }
        Matrix { dim, cells }
    }

    /// Companion matrix of `x_n = c_1 x_{n-1} + ... + c_m x_{n-m}` acting on
    /// the state `(x_n, x_{n-1}, ..., x_{n-m+1})`.
    pub(crate) fn companion(coeffs: &[u64]) -> Self {
        let dim = coeffs.len();
        let mut cells = vec![BigUint::zero(); dim * dim];
        for (j, &c) in coeffs.iter().enumerate() {
            cells[j] = BigUint::from(c);
        }
        for i in 1..dim {
            cells[i * dim + i - 1] = BigUint::one();
        }
        Matrix { dim, cells }
    }

    pub(crate) fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.cells[row * self.dim + col]
    }

    pub(crate) fn mul(&self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut cells = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        cells[i * dim + j] += a * b;
                    }
                }
            }
        }
        Matrix { dim, cells }
    }

    pub(crate) fn pow(&self, mut exp: u64) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_power() {
        let q = Matrix::companion(&[1, 1]).pow(10);
        // [[F11, F10], [F10, F9]]
        assert_eq!(q.get(0, 0), &BigUint::from(89u32));
        assert_eq!(q.get(0, 1), &BigUint::from(55u32));
        assert_eq!(q.get(1, 1), &BigUint::from(34u32));
    }

    #[test]
    fn power_zero_is_identity() {
        let m = Matrix::companion(&[2, 0, 5]);
        assert_eq!(m.pow(0), Matrix::identity(3));
        assert_eq!(m.pow(1), m);
        assert_eq!(m.pow(5), m.mul(&m).mul(&m).mul(&m).mul(&m));
    }
}
