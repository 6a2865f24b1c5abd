use super::{KernelError, SymMatrix};

/// Eigenvalues of a symmetric rational matrix via a cyclic Jacobi sweep on
/// its float image, iterated until the off-diagonal Frobenius norm drops
/// below `tol`. Returned sorted descending. Advisory only; exact
/// definiteness questions go through [`super::ldlt_psd_certificate`].
pub fn symmetric_eigs(m: &SymMatrix, tol: f64) -> Result<Vec<f64>, KernelError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(KernelError::NonPositiveTolerance(tol));
    }
    Ok(jacobi_eigs_f64(m.to_f64(), tol))
}

/// Cyclic Jacobi on a dense symmetric float matrix. Also used internally on
/// metric-symmetrized operator matrices whose entries are irrational.
pub fn jacobi_eigs_f64(mut a: Vec<Vec<f64>>, tol: f64) -> Vec<f64> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p][p], a[q][q], apq);
                rotate(&mut a, p, q, c, s);
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i][j] * a[i][j];
            }
        }
    }
    acc.sqrt()
}

fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        1.0 / (theta - (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

fn rotate(a: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let n = a.len();
    for k in 0..n {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
}
