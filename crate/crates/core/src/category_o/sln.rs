//! `sl_n` realized by matrix units, with the trace form and the tensors
//! `Omega` and `r` on `V (x) V`.

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::rational::{q, qf, Q};

/// Positive root `eps_a - eps_b` (0-based, `a < b`).
pub type Root = (usize, usize);

#[derive(Clone, Debug)]
pub struct SLnData {
    n: usize,
}

/// `E_ab` as an `n x n` matrix.
pub fn matrix_unit(n: usize, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(a, b)] = Q::one();
    m
}

/// Trace form `(x|y) = tr(xy)`.
pub fn trace_form(x: &Matrix, y: &Matrix) -> Q {
    x.mul(y).trace()
}

/// Kronecker product.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut m = Matrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    m[(i * br + k, j * bc + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    m
}

impl SLnData {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        SLnData { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut roots: Vec<Root> = (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).collect();
        roots.sort_by_key(|&(a, b)| (b - a, a, b));
        roots
    }

    /// `e_alpha = E_ab`.
    pub fn e(&self, root: Root) -> Matrix {
        matrix_unit(self.n, root.0, root.1)
    }

    /// `e_{-alpha} = E_ba`.
    pub fn f(&self, root: Root) -> Matrix {
        matrix_unit(self.n, root.1, root.0)
    }

    /// Simple coroots `h_i = E_ii - E_{i+1,i+1}`, 1-based.
    pub fn h(&self, i: usize) -> Matrix {
        matrix_unit(self.n, i - 1, i - 1).sub(&matrix_unit(self.n, i, i))
    }

    /// Dual basis `h^i` with `(h^i | h_j) = delta_ij`.
    pub fn h_dual(&self, i: usize) -> Matrix {
        let r = self.n - 1;
        let mut gram = Matrix::zeros(r, r);
        for a in 0..r {
            for b in 0..r {
                gram[(a, b)] = trace_form(&self.h(a + 1), &self.h(b + 1));
            }
        }
        let inv = gram.inverse().expect("Cartan matrix is invertible");
        (0..r).fold(Matrix::zeros(self.n, self.n), |acc, k| acc.add(&self.h(k + 1).scale(&inv[(i - 1, k)])))
    }

    /// `Omega = sum h^i (x) h_i + sum_alpha (e_alpha (x) e_-alpha + e_-alpha (x) e_alpha)` on `V (x) V`.
    pub fn omega_vv(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n * n, n * n);
        for i in 1..n {
            m = m.add(&kron(&self.h_dual(i), &self.h(i)));
        }
        for r in self.positive_roots() {
            m = m.add(&kron(&self.e(r), &self.f(r))).add(&kron(&self.f(r), &self.e(r)));
        }
        m
    }

    /// `r = 1/2 sum h^i (x) h_i + sum_alpha e_alpha (x) e_-alpha` on `V (x) V`.
    pub fn r_vv(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n * n, n * n);
        for i in 1..n {
            m = m.add(&kron(&self.h_dual(i), &self.h(i)).scale(&qf(1, 2)));
        }
        for r in self.positive_roots() {
            m = m.add(&kron(&self.e(r), &self.f(r)));
        }
        m
    }

    /// The swap `u_j (x) u_k -> u_k (x) u_j`.
    pub fn swap_vv(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n * n, n * n);
        for j in 0..n {
            for k in 0..n {
                m[(k * n + j, j * n + k)] = Q::one();
            }
        }
        m
    }

    /// `1/2 sum h_k h^k + sum_alpha e_-alpha e_alpha + 1/(2n)` on `V`.
    pub fn shifted_casimir_part(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::scalar(n, &qf(1, 2 * n as i64));
        for i in 1..n {
            m = m.add(&self.h(i).mul(&self.h_dual(i)).scale(&qf(1, 2)));
        }
        for r in self.positive_roots() {
            m = m.add(&self.f(r).mul(&self.e(r)));
        }
        m
    }

    /// `rho` pairing used throughout: `(n - 1)/2`.
    pub fn rho_shift(&self) -> Q {
        qf(self.n as i64 - 1, 2)
    }

    /// `1/n` as a rational.
    pub fn inv_n(&self) -> Q {
        Q::one() / q(self.n as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_bases_and_pairing() {
        for n in 2..=4 {
            let g = SLnData::new(n);
            for i in 1..n {
                for j in 1..n {
                    let want = if i == j { q(1) } else { q(0) };
                    assert_eq!(trace_form(&g.h_dual(i), &g.h(j)), want);
                }
            }
            for r in g.positive_roots() {
                assert_eq!(trace_form(&g.e(r), &g.f(r)), q(1));
            }
        }
    }

    #[test]
    fn swap_is_omega_plus_inverse_n() {
        for n in 2..=4 {
            let g = SLnData::new(n);
            let lhs = g.omega_vv().add(&Matrix::scalar(n * n, &g.inv_n()));
            assert_eq!(lhs, g.swap_vv());
        }
    }

    #[test]
    fn r_matrix_on_ordered_pairs() {
        for n in 2..=4 {
            let g = SLnData::new(n);
            let r = g.r_vv().add(&Matrix::scalar(n * n, &qf(1, 2 * n as i64)));
            for j in 0..n {
                for k in j..n {
                    let col = r.column(j * n + k);
                    for (idx, x) in col.iter().enumerate() {
                        let want = if idx == j * n + k && j == k { qf(1, 2) } else { q(0) };
                        assert_eq!(*x, want, "n={n} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn shifted_casimir_eigenvalues() {
        // diagonal with entries j - 1/2 (1-based j)
        for n in 2..=4 {
            let m = SLnData::new(n).shifted_casimir_part();
            let want = Matrix::from_rows(
                (0..n).map(|r| (0..n).map(|c| if r == c { qf(2 * r as i64 + 1, 2) } else { q(0) }).collect()).collect(),
            );
            assert_eq!(m, want);
        }
    }

    #[test]
    fn roots_by_height() {
        assert_eq!(SLnData::new(3).positive_roots(), vec![(0, 1), (1, 2), (0, 2)]);
    }
}
