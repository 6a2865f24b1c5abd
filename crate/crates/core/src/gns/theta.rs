use crate::kernel::{
    jacobi_eigs_f64, ldlt_psd_certificate, quotient_basis, Mat, QuotientBasis, Scalar, SymMatrix,
};
use crate::semigroup::Diagram;
use crate::weights::{is_rotation_invariant_upto, PairWeight, Weight};

use super::{gram_of_basis, GnsError};

/// Aggregate model for the embracing-pair operator theta over the sectors
/// n = 0..=max_legs with a uniform pair cap: diagram basis, Gram, quotient,
/// the weak matrix T[d1][d2] = t-hat(d1* . underline(d2)), and theta in
/// quotient coordinates.
pub struct ThetaModel {
    pub weight_name: String,
    pub max_legs: usize,
    pub max_pairs: usize,
    pub basis: Vec<Diagram>,
    pub gram: SymMatrix,
    pub quotient: QuotientBasis,
    pub weak: SymMatrix,
    pub quot: Mat,
}

/// Spectral and exactness report for theta at a truncation.
#[derive(Clone, Debug)]
pub struct ThetaReport {
    /// Float spectrum of the metric-symmetrized theta, descending.
    pub spectrum: Vec<f64>,
    /// Spectral norm of the compression to the orthocomplement of xi.
    pub norm_perp: f64,
    /// Number of eigenvalues within `tol` of 1.
    pub eig1_multiplicity: usize,
    /// Exact: u_k^T T u_l = u_l^T T u_k on the quotient (selfadjointness
    /// with respect to the Gram metric).
    pub metric_symmetric: bool,
    /// Exact: theta xi = xi in the quotient.
    pub theta_fixes_xi: bool,
}

/// Builds the theta model and its report. Refuses weights that fail the
/// exhaustive rotation-invariance (trace) check, since selfadjointness of
/// theta needs the trace property.
pub fn theta_matrix(
    w: &impl PairWeight,
    weight_name: &str,
    max_legs: usize,
    max_pairs: usize,
    tol: f64,
) -> Result<(ThetaModel, ThetaReport), GnsError> {
    let trace_check_points = (2 * (max_pairs + 1) + 2 * max_legs).min(8) as u32;
    let rotation = is_rotation_invariant_upto(w, trace_check_points);
    if let Some(ce) = rotation.counterexample {
        return Err(GnsError::NonTracialWeight {
            partition: ce.partition.to_string(),
            value: ce.value.to_string(),
            rotated: ce.rotated_value.to_string(),
        });
    }

    let mut basis = Vec::new();
    for n in 0..=max_legs {
        basis.extend(Diagram::enumerate(n, 0, max_pairs));
    }
    let gram = gram_of_basis(w, &basis);
    if !ldlt_psd_certificate(&gram).is_psd() {
        return Err(GnsError::NotPositive);
    }
    let quotient = quotient_basis(&gram).expect("certified PSD");

    let involutions: Vec<Diagram> = basis.iter().map(Diagram::involution).collect();
    let underlined: Vec<Diagram> = basis.iter().map(Diagram::underline).collect();
    let weak = SymMatrix::from_fn_checked(basis.len(), |i, j| {
        w.value_hat(&involutions[i].multiply(&underlined[j]))
    })
    .map_err(|_| GnsError::NotPositive)?;

    // W = T . cols, then M[k][l] = (cols^T W)[k][l] with theta = D^{-1} M.
    let r = quotient.rank();
    let n = basis.len();
    let w_cols = Mat::from_fn(n, r, |i, k| {
        let mut acc = Scalar::zero();
        for j in 0..n {
            let c = quotient.cols.get(j, k);
            if !c.is_zero() {
                acc += &(weak.get(i, j) * c);
            }
        }
        acc
    });
    let m_weak = Mat::from_fn(r, r, |k, l| {
        let mut acc = Scalar::zero();
        for i in 0..n {
            let c = quotient.cols.get(i, k);
            if !c.is_zero() {
                acc += &(c * w_cols.get(i, l));
            }
        }
        acc
    });
    let metric_symmetric = (0..r).all(|k| (k..r).all(|l| m_weak.get(k, l) == m_weak.get(l, k)));
    let quot = Mat::from_fn(r, r, |k, l| m_weak.get(k, l) / &quotient.norms2[k]);

    // xi is the first quotient vector: the empty diagram heads the basis and
    // has unit norm.
    debug_assert_eq!(quotient.selected.first(), Some(&0));
    debug_assert!(quotient.norms2[0].is_one());
    let theta_fixes_xi = {
        let col_fix = (0..r).all(|k| {
            let expect = if k == 0 {
                quotient.norms2[0].clone()
            } else {
                Scalar::zero()
            };
            *m_weak.get(k, 0) == expect
        });
        let row_fix = (1..r).all(|l| m_weak.get(0, l).is_zero());
        col_fix && row_fix
    };

    // Metric-symmetrized float matrix S[k][l] = M[k][l] / sqrt(d_k d_l).
    let sqrt_d: Vec<f64> = quotient.norms2.iter().map(|d| d.to_f64().sqrt()).collect();
    let s: Vec<Vec<f64>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|l| m_weak.get(k, l).to_f64() / (sqrt_d[k] * sqrt_d[l]))
                .collect()
        })
        .collect();
    let spectrum = jacobi_eigs_f64(s.clone(), tol.min(1e-12));
    let sub: Vec<Vec<f64>> = (1..r).map(|k| (1..r).map(|l| s[k][l]).collect()).collect();
    let norm_perp = if r > 1 {
        jacobi_eigs_f64(sub, tol.min(1e-12))
            .iter()
            .fold(0.0f64, |acc, &e| acc.max(e.abs()))
    } else {
        0.0
    };
    let eig1_multiplicity = spectrum.iter().filter(|&&e| (e - 1.0).abs() <= tol).count();

    let model = ThetaModel {
        weight_name: weight_name.to_string(),
        max_legs,
        max_pairs,
        basis,
        gram,
        quotient,
        weak,
        quot,
    };
    let report = ThetaReport {
        spectrum,
        norm_perp,
        eig1_multiplicity,
        metric_symmetric,
        theta_fixes_xi,
    };
    Ok((model, report))
}

/// The exact scalar by which wrapping both arguments in an embracing pair
/// rescales t-hat(d1* . underline(d2)) on the n-leg sector of the block
/// family: q for q >= 0 and (-q)(-1)^n for q < 0 (the added pair raises the
/// pair count by one, keeps the block count, and crosses exactly the n join
/// pairs).
pub fn theta_contraction_factor(q: &Scalar, n: usize) -> Scalar {
    if q.is_negative() {
        let base = -q;
        if n % 2 == 0 {
            base
        } else {
            -base
        }
    } else {
        q.clone()
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticIdentityReport {
    pub factor: Scalar,
    pub checked: usize,
    pub counterexample: Option<QuadraticCounterexample>,
}

#[derive(Clone, Debug)]
pub struct QuadraticCounterexample {
    pub d1: Diagram,
    pub d2: Diagram,
    pub detail: String,
}

impl QuadraticIdentityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively verifies, for the block family at rational q on the n-leg
/// sector (n >= 1), the identity
///   t-hat(underline(d1)* . underline(d2)) = factor * t-hat(d1* . underline(d2))
/// with [`theta_contraction_factor`], together with the exact counting
/// identities: block counts agree, the pair count grows by one, and the
/// crossing count grows by exactly n.
pub fn theta_quadratic_identity(
    q: &Scalar,
    n: usize,
    max_pairs: usize,
) -> Result<QuadraticIdentityReport, GnsError> {
    assert!(n >= 1, "the quadratic identity concerns sectors with legs");
    let weight =
        Weight::block_q(q.clone()).map_err(|_| GnsError::ParameterOutOfRange(q.to_string()))?;
    let factor = theta_contraction_factor(q, n);
    let basis = Diagram::enumerate(n, 0, max_pairs);
    let mut checked = 0;
    for d1 in &basis {
        let ud1_star = d1.underline().involution();
        let d1_star = d1.involution();
        for d2 in &basis {
            let ud2 = d2.underline();
            let big = ud1_star.multiply(&ud2);
            let small = d1_star.multiply(&ud2);
            let big_v = big.as_pair_partition().expect("legs all joined");
            let small_v = small.as_pair_partition().expect("legs all joined");
            let fail = |detail: String| QuadraticIdentityReport {
                factor: factor.clone(),
                checked,
                counterexample: Some(QuadraticCounterexample {
                    d1: d1.clone(),
                    d2: d2.clone(),
                    detail,
                }),
            };
            if big_v.n_blocks() != small_v.n_blocks() {
                return Ok(fail(format!(
                    "block counts differ: {} vs {}",
                    big_v.n_blocks(),
                    small_v.n_blocks()
                )));
            }
            if big_v.n_pairs() != small_v.n_pairs() + 1 {
                return Ok(fail(format!(
                    "pair counts: {} vs {} + 1",
                    big_v.n_pairs(),
                    small_v.n_pairs()
                )));
            }
            if big_v.crossings() != small_v.crossings() + n {
                return Ok(fail(format!(
                    "crossings: {} vs {} + {n}",
                    big_v.crossings(),
                    small_v.crossings()
                )));
            }
            let lhs = weight.value(&big_v);
            let rhs = &factor * &weight.value(&small_v);
            if lhs != rhs {
                return Ok(fail(format!(
                    "scalar identity: {lhs} vs {factor} * t = {rhs}"
                )));
            }
            checked += 1;
        }
    }
    Ok(QuadraticIdentityReport {
        factor,
        checked,
        counterexample: None,
    })
}
