use super::{KernelError, Mat, Scalar, SymMatrix};

/// Orthogonal basis of the quotient of a PSD Gram matrix by its kernel.
///
/// The basis is carried in factored form `B = C * D^{-1/2}` where `C` (the
/// `cols` matrix, one column per selected vector) is rational and `D` is the
/// diagonal of positive norms-squared `norms2`. The exact content of
/// "B^T G B = I" is the bit-exact identity `C^T G C = diag(norms2)`, checked
/// by [`QuotientBasis::verify_exact`]; the float view materializes the
/// scaling.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    /// Indices of the greedily selected (lexicographically first) columns
    /// spanning the quotient.
    pub selected: Vec<usize>,
    /// n x r rational matrix whose k-th column is the G-orthogonal vector
    /// built from original basis vectors 0..=selected[k].
    pub cols: Mat,
    /// Positive norms-squared of the columns under G: the diagonal quotient
    /// metric.
    pub norms2: Vec<Scalar>,
    /// Cached G * cols, used for cheap coordinate maps.
    gcols: Mat,
}

impl QuotientBasis {
    pub fn rank(&self) -> usize {
        self.selected.len()
    }

    /// Bit-exact verification that cols^T G cols equals diag(norms2).
    pub fn verify_exact(&self, g: &SymMatrix) -> bool {
        let r = self.rank();
        let n = g.dim();
        for k in 0..r {
            let uk: Vec<Scalar> = (0..n).map(|i| self.cols.get(i, k).clone()).collect();
            let gu = g.mul_vec(&uk);
            for l in 0..r {
                let mut acc = Scalar::zero();
                for i in 0..n {
                    if !gu[i].is_zero() {
                        acc += &(&gu[i] * self.cols.get(i, l));
                    }
                }
                let expect = if k == l {
                    self.norms2[k].clone()
                } else {
                    Scalar::zero()
                };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// The orthonormal basis C * D^{-1/2} as floats; B^T G B = I within
    /// roundoff.
    pub fn orthonormal_cols_f64(&self) -> Vec<Vec<f64>> {
        let n = self.cols.rows();
        let r = self.rank();
        (0..n)
            .map(|i| {
                (0..r)
                    .map(|k| self.cols.get(i, k).to_f64() / self.norms2[k].to_f64().sqrt())
                    .collect()
            })
            .collect()
    }

    /// Quotient coordinates of a formal vector `x` over the original basis:
    /// c_k = <u_k, x>_G / norms2[k].
    pub fn coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        let r = self.rank();
        (0..r)
            .map(|k| {
                let mut acc = Scalar::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        acc += &(self.gcols.get(i, k) * xi);
                    }
                }
                acc / &self.norms2[k]
            })
            .collect()
    }

    /// Inner product of two coordinate vectors under the diagonal metric.
    pub fn metric_inner(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for ((x, y), d) in a.iter().zip(b).zip(&self.norms2) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(&(x * y) * d);
            }
        }
        acc
    }

    /// Metric adjoint of a quotient-coordinate matrix `a` mapping this
    /// quotient into `target`: returns D_self^{-1} a^T D_target.
    pub fn metric_adjoint(&self, target: &QuotientBasis, a: &Mat) -> Mat {
        assert_eq!(a.rows(), target.rank());
        assert_eq!(a.cols(), self.rank());
        Mat::from_fn(self.rank(), target.rank(), |k, l| {
            &(a.get(l, k) * &target.norms2[l]) / &self.norms2[k]
        })
    }
}

/// Greedy G-orthogonalization (Gram-Schmidt over the rationals) in column
/// order. Columns whose residual norm-squared vanishes lie in the kernel and
/// are skipped; a negative residual norm-squared certifies that G was not PSD
/// and is rejected. Cost O(n^2 * rank).
pub fn quotient_basis(g: &SymMatrix) -> Result<QuotientBasis, KernelError> {
    let n = g.dim();
    let mut selected = Vec::new();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut gcols: Vec<Vec<Scalar>> = Vec::new();
    let mut norms2: Vec<Scalar> = Vec::new();

    for j in 0..n {
        // u = e_j - sum_k (<u_k, e_j>_G / d_k) u_k, maintained together with
        // G u = G e_j - sum c_k (G u_k).
        let mut u = vec![Scalar::zero(); n];
        u[j] = Scalar::one();
        let mut gu: Vec<Scalar> = (0..n).map(|i| g.get(i, j).clone()).collect();
        for k in 0..cols.len() {
            let c = &gcols[k][j] / &norms2[k];
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if !cols[k][i].is_zero() {
                    u[i] -= &(&c * &cols[k][i]);
                }
                if !gcols[k][i].is_zero() {
                    gu[i] -= &(&c * &gcols[k][i]);
                }
            }
        }
        let mut n2 = Scalar::zero();
        for i in 0..n {
            if !u[i].is_zero() && !gu[i].is_zero() {
                n2 += &(&u[i] * &gu[i]);
            }
        }
        if n2.is_negative() {
            return Err(KernelError::IndefiniteGram { col: j });
        }
        if n2.is_positive() {
            selected.push(j);
            cols.push(u);
            gcols.push(gu);
            norms2.push(n2);
        }
    }

    let r = selected.len();
    let cols_mat = Mat::from_fn(n, r, |i, k| cols[k][i].clone());
    let gcols_mat = Mat::from_fn(n, r, |i, k| gcols[k][i].clone());
    Ok(QuotientBasis {
        selected,
        cols: cols_mat,
        norms2,
        gcols: gcols_mat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sym(rows: Vec<Vec<i64>>) -> SymMatrix {
        SymMatrix::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(Scalar::from_int).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_one_reduction() {
        let g = sym(vec![vec![1, 1], vec![1, 1]]);
        let q = quotient_basis(&g).unwrap();
        assert_eq!(q.selected, vec![0]);
        assert_eq!(q.cols.col(0), vec![s(1), s(0)]);
        assert_eq!(q.norms2, vec![s(1)]);
        assert!(q.verify_exact(&g));
    }

    #[test]
    fn identity_selects_all() {
        let g = sym(vec![vec![1, 0], vec![0, 1]]);
        let q = quotient_basis(&g).unwrap();
        assert_eq!(q.selected, vec![0, 1]);
        assert_eq!(q.cols, Mat::identity(2));
        assert!(q.verify_exact(&g));
    }

    #[test]
    fn zero_matrix_empty_selection() {
        let g = sym(vec![vec![0, 0], vec![0, 0]]);
        let q = quotient_basis(&g).unwrap();
        assert!(q.selected.is_empty());
        assert_eq!(q.rank(), 0);
    }

    #[test]
    fn indefinite_rejected() {
        let g = sym(vec![vec![1, 2], vec![2, 1]]);
        assert!(quotient_basis(&g).is_err());
    }

    #[test]
    fn factored_orthonormality_is_exact_and_float_view_close() {
        // Non-square pivot norms force the factored representation.
        let g = sym(vec![vec![2, 1], vec![1, 2]]);
        let q = quotient_basis(&g).unwrap();
        assert!(q.verify_exact(&g));
        let b = q.orthonormal_cols_f64();
        let gf = g.to_f64();
        for k in 0..2 {
            for l in 0..2 {
                let mut acc = 0.0;
                for i in 0..2 {
                    for jj in 0..2 {
                        acc += b[i][k] * gf[i][jj] * b[jj][l];
                    }
                }
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((acc - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coords_reproduce_metric() {
        let g = sym(vec![vec![2, 1, 3], vec![1, 2, 3], vec![3, 3, 6]]);
        // third column = first + second: kernel direction.
        let q = quotient_basis(&g).unwrap();
        assert_eq!(q.rank(), 2);
        let x = vec![s(1), s(2), s(-1)];
        let y = vec![s(0), s(1), s(1)];
        let cx = q.coords(&x);
        let cy = q.coords(&y);
        // <x, y>_G must match the metric inner product of the coordinates.
        let mut direct = Scalar::zero();
        let gy = g.mul_vec(&y);
        for i in 0..3 {
            direct += &(&x[i] * &gy[i]);
        }
        assert_eq!(q.metric_inner(&cx, &cy), direct);
    }
}
