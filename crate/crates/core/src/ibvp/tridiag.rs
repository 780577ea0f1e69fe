use crate::error::{Error, Result};

/// Tridiagonal system `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i`
/// (`a_0` and `c_{n-1}` are ignored).
#[derive(Debug, Clone, Default)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn zeros(n: usize) -> Self {
        Self {
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Thomas algorithm. `rhs` is overwritten with the solution; `scratch`
    /// must hold `n` entries.
    pub fn solve_in_place(&self, rhs: &mut [f64], scratch: &mut [f64]) -> Result<()> {
        let n = self.len();
        assert!(rhs.len() == n && scratch.len() >= n);
        let mut pivot = self.diag[0];
        if pivot == 0.0 {
            return Err(Error::SingularSystem(0));
        }
        rhs[0] /= pivot;
        for i in 1..n {
            scratch[i - 1] = self.upper[i - 1] / pivot;
            pivot = self.diag[i] - self.lower[i] * scratch[i - 1];
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularSystem(i));
            }
            rhs[i] = (rhs[i] - self.lower[i] * rhs[i - 1]) / pivot;
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= scratch[i] * rhs[i + 1];
        }
        Ok(())
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let mut x = rhs.to_vec();
        let mut scratch = vec![0.0; self.len()];
        self.solve_in_place(&mut x, &mut scratch)?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // [2 1 0; 1 3 1; 0 1 2] x = [3, 5, 3] -> x = [1, 1, 1]
        let m = Tridiagonal {
            lower: vec![0.0, 1.0, 1.0],
            diag: vec![2.0, 3.0, 2.0],
            upper: vec![1.0, 1.0, 0.0],
        };
        let x = m.solve(&[3.0, 5.0, 3.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reports_zero_pivot() {
        let m = Tridiagonal {
            lower: vec![0.0, 1.0],
            diag: vec![1.0, 1.0],
            upper: vec![1.0, 0.0],
        };
        assert_eq!(m.solve(&[1.0, 1.0]), Err(Error::SingularSystem(1)));
    }
}
