//! Finite GNS models: Gram matrices over diagram bases with exact PSD
//! certificates, quotient spaces with the hook operator j and the
//! symmetric-group representations U(pi), the embracing-pair operator theta
//! with its spectral probe, the truncated Fock matrix model, second
//! quantization of contractions and creation/annihilation bounds.

mod fock;
pub mod report;
mod theta;
mod tower;

pub use fock::{
    creation_bounds, field_norm, fock_model, pattern_of, second_quantize, BoundsReport,
    FockBasisVector, FockLevel, FockModel, LevelBound,
};
pub use theta::{
    theta_contraction_factor, theta_matrix, theta_quadratic_identity, QuadraticIdentityReport,
    ThetaModel, ThetaReport,
};
pub use tower::{operator_tower, OperatorTower};

use std::collections::HashMap;

use thiserror::Error;

use crate::kernel::{
    ldlt_psd_certificate, quotient_basis, Mat, PsdCertificate, QuotientBasis, Scalar, SymMatrix,
};
use crate::perm::Permutation;
use crate::semigroup::Diagram;
use crate::weights::PairWeight;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GnsError {
    #[error("target truncation too small: images need max_pairs >= {required_max_pairs}")]
    TruncationTooSmall { required_max_pairs: usize },
    #[error("sector mismatch: expected {expected} left legs, got {got}")]
    SectorMismatch { expected: usize, got: usize },
    #[error("model Gram is not positive semidefinite; no quotient space exists")]
    NotPositive,
    #[error("weight is not tracial: t({partition}) = {value} but the rotation gives {rotated}")]
    NonTracialWeight {
        partition: String,
        value: String,
        rotated: String,
    },
    #[error("cap overflow while evaluating monomial {monomial:?} (level cap {level_cap}, length cap {len_cap})")]
    CapOverflow {
        monomial: String,
        level_cap: usize,
        len_cap: usize,
    },
    #[error("operator norm exceeds 1: not a contraction")]
    NotAContraction,
    #[error("permutation size {got} does not match the sector's {expected} legs")]
    PermSizeMismatch { expected: usize, got: usize },
    #[error("word leaves the tower: {0}")]
    WordOutOfRange(String),
    #[error("block-family parameter must lie in [-1,1], got {0}")]
    ParameterOutOfRange(String),
}

/// A sector of the GNS space of t-hat: the diagram basis of
/// BP2^(n_left, 0) with at most `max_pairs` pairs, its exact Gram matrix
/// G[d1][d2] = t-hat(d1* . d2), the PSD certificate, and (when PSD) the
/// quotient data.
pub struct GramModel {
    pub weight_name: String,
    pub n_left: usize,
    pub max_pairs: usize,
    pub basis: Vec<Diagram>,
    pub gram: SymMatrix,
    pub certificate: PsdCertificate,
    pub quotient: Option<QuotientBasis>,
    index: HashMap<Diagram, usize>,
}

impl GramModel {
    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn rank(&self) -> Option<usize> {
        self.quotient.as_ref().map(|q| q.rank())
    }

    fn quotient_or_err(&self) -> Result<&QuotientBasis, GnsError> {
        self.quotient.as_ref().ok_or(GnsError::NotPositive)
    }

    /// Quotient coordinates of a formal combination over the diagram basis.
    pub fn coords(&self, formal: &[Scalar]) -> Result<Vec<Scalar>, GnsError> {
        Ok(self.quotient_or_err()?.coords(formal))
    }
}

/// Builds the sector model: basis, exact Gram, PSD certificate (an
/// indefinite outcome is a result, not a failure) and quotient data.
pub fn gram_model(
    w: &impl PairWeight,
    weight_name: &str,
    n_left: usize,
    max_pairs: usize,
) -> GramModel {
    let basis = Diagram::enumerate(n_left, 0, max_pairs);
    let gram = gram_of_basis(w, &basis);
    let certificate = ldlt_psd_certificate(&gram);
    let quotient = if certificate.is_psd() {
        Some(quotient_basis(&gram).expect("certified PSD"))
    } else {
        None
    };
    let index = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, d)| (d, i))
        .collect();
    GramModel {
        weight_name: weight_name.to_string(),
        n_left,
        max_pairs,
        basis,
        gram,
        certificate,
        quotient,
        index,
    }
}

pub(crate) fn gram_of_basis(w: &impl PairWeight, basis: &[Diagram]) -> SymMatrix {
    let involutions: Vec<Diagram> = basis.iter().map(Diagram::involution).collect();
    if w.reversal_invariant() {
        SymMatrix::from_fn_mirror(basis.len(), |i, j| {
            w.value_hat(&involutions[i].multiply(&basis[j]))
        })
    } else {
        SymMatrix::from_fn_checked(basis.len(), |i, j| {
            w.value_hat(&involutions[i].multiply(&basis[j]))
        })
        .expect("Gram of a reversal-invariant weight must be symmetric")
    }
}

/// Matrix of left multiplication by the hook d0 (the operator j) from the
/// lower sector's quotient into the upper sector's, in quotient coordinates.
/// The upper truncation must admit every image (same pair count), i.e.
/// upper.max_pairs >= lower.max_pairs.
pub fn j_matrix(lower: &GramModel, upper: &GramModel) -> Result<Mat, GnsError> {
    if upper.n_left != lower.n_left + 1 {
        return Err(GnsError::SectorMismatch {
            expected: lower.n_left + 1,
            got: upper.n_left,
        });
    }
    if upper.max_pairs < lower.max_pairs {
        return Err(GnsError::TruncationTooSmall {
            required_max_pairs: lower.max_pairs,
        });
    }
    let lo = lower.quotient_or_err()?;
    let up = upper.quotient_or_err()?;
    let hook = Diagram::hook();
    let n_up = upper.basis.len();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(lo.rank());
    for l in 0..lo.rank() {
        let mut image = vec![Scalar::zero(); n_up];
        for (i, d) in lower.basis.iter().enumerate() {
            let c = lo.cols.get(i, l);
            if c.is_zero() {
                continue;
            }
            let hd = hook.multiply(d);
            let target = upper.position(&hd).ok_or(GnsError::TruncationTooSmall {
                required_max_pairs: hd.n_pairs(),
            })?;
            image[target] += c;
        }
        columns.push(up.coords(&image));
    }
    Ok(Mat::from_fn(up.rank(), lo.rank(), |r, c| {
        columns[c][r].clone()
    }))
}

/// Largest absolute deviation of J^T D_upper J from D_lower: zero exactly
/// when j is an isometry on the truncation.
pub fn j_isometry_defect(lower: &GramModel, upper: &GramModel, j: &Mat) -> Scalar {
    let lo = lower.quotient.as_ref().expect("lower quotient");
    let up = upper.quotient.as_ref().expect("upper quotient");
    let mut worst = Scalar::zero();
    for k in 0..lo.rank() {
        for l in 0..lo.rank() {
            let mut acc = Scalar::zero();
            for m in 0..up.rank() {
                let a = j.get(m, k);
                let b = j.get(m, l);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(&(a * b) * &up.norms2[m]);
                }
            }
            let expect = if k == l {
                lo.norms2[k].clone()
            } else {
                Scalar::zero()
            };
            let dev = (acc - expect).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// Matrix of the symmetric-group action U(pi) on a sector's quotient:
/// permutes left-leg ranks of each basis diagram.
pub fn sym_rep(model: &GramModel, pi: &Permutation) -> Result<Mat, GnsError> {
    if pi.size() != model.n_left {
        return Err(GnsError::PermSizeMismatch {
            expected: model.n_left,
            got: pi.size(),
        });
    }
    let q = model.quotient_or_err()?;
    let n = model.basis.len();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(q.rank());
    for l in 0..q.rank() {
        let mut image = vec![Scalar::zero(); n];
        for (i, d) in model.basis.iter().enumerate() {
            let c = q.cols.get(i, l);
            if c.is_zero() {
                continue;
            }
            let pd = d
                .permute_legs(pi)
                .expect("sector diagrams have no right legs");
            let target = model.position(&pd).expect("leg action preserves the basis");
            image[target] += c;
        }
        columns.push(q.coords(&image));
    }
    Ok(Mat::from_fn(q.rank(), q.rank(), |r, c| {
        columns[c][r].clone()
    }))
}

/// Canonical embedding S(n) -> S(n+1) matched to j's rank-1 leg insertion:
/// the new rank 1 is fixed and pi acts on ranks 2..n+1.
pub fn iota(pi: &Permutation) -> Permutation {
    let n = pi.size();
    let mut images = Vec::with_capacity(n + 1);
    images.push(1u32);
    for r in 1..=n as u32 {
        images.push(pi.apply(r) + 1);
    }
    Permutation::new(images).expect("embedding of a bijection is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Weight;

    fn block_half() -> Weight {
        Weight::block_q(Scalar::ratio(1, 2)).unwrap()
    }

    #[test]
    fn gram_model_examples() {
        // n=0, max_pairs=1 over {empty, p}: [[1,1],[1,1]], PSD rank 1.
        let m = gram_model(&block_half(), "q:1/2", 0, 1);
        assert_eq!(m.basis.len(), 2);
        assert_eq!(m.gram.get(0, 0), &Scalar::one());
        assert_eq!(m.gram.get(0, 1), &Scalar::one());
        assert_eq!(m.gram.get(1, 1), &Scalar::one());
        assert_eq!(m.certificate, PsdCertificate::Psd { rank: 1 });

        // n=1, max_pairs=0 over {d0}: [[1]].
        let m = gram_model(&block_half(), "q:1/2", 1, 0);
        assert_eq!(m.basis.len(), 1);
        assert_eq!(m.gram.get(0, 0), &Scalar::one());
        assert_eq!(m.certificate, PsdCertificate::Psd { rank: 1 });
    }

    #[test]
    fn block_family_small_truncations_are_psd() {
        for (n, p) in [(0usize, 3usize), (1, 2), (2, 2)] {
            let m = gram_model(&block_half(), "q:1/2", n, p);
            assert!(m.certificate.is_psd(), "sector {n} pairs {p}");
        }
    }

    #[test]
    fn nonpositive_toy_yields_witness() {
        let toy = Weight::crossing_q(Scalar::from_int(-2));
        let m = gram_model(&toy, "qcr:-2", 2, 1);
        match &m.certificate {
            PsdCertificate::Indefinite { witness } => {
                assert!(m.gram.quadratic_form(witness).is_negative());
            }
            other => panic!("expected indefinite, got {other:?}"),
        }
        assert!(m.quotient.is_none());
    }

    #[test]
    fn j_is_an_isometry_for_multiplicative_weights() {
        let w = block_half();
        let lower = gram_model(&w, "q:1/2", 0, 1);
        let upper = gram_model(&w, "q:1/2", 1, 1);
        let j = j_matrix(&lower, &upper).unwrap();
        assert_eq!(j_isometry_defect(&lower, &upper, &j), Scalar::zero());
        // j xi has norm 1.
        let xi = vec![Scalar::one()];
        let jxi = j.mul_vec(&xi);
        let up = upper.quotient.as_ref().unwrap();
        assert_eq!(up.metric_inner(&jxi, &jxi), Scalar::one());
    }

    #[test]
    fn j_isometry_fails_for_non_multiplicative_toy() {
        // t(V) = 2^pairs is reversal-invariant and rotation-invariant but
        // not normalized/multiplicative; the defect must be nonzero.
        struct Toy;
        impl PairWeight for Toy {
            fn value(&self, v: &crate::partitions::PairPartition) -> Scalar {
                Scalar::from_int(2).pow(v.n_pairs() as u32)
            }
            fn reversal_invariant(&self) -> bool {
                true
            }
        }
        let lower = gram_model(&Toy, "toy", 0, 1);
        let upper = gram_model(&Toy, "toy", 1, 1);
        assert!(lower.certificate.is_psd() && upper.certificate.is_psd());
        let j = j_matrix(&lower, &upper).unwrap();
        assert!(j_isometry_defect(&lower, &upper, &j).is_positive());
    }

    #[test]
    fn j_matrix_rejects_bad_truncations() {
        let w = block_half();
        let lower = gram_model(&w, "q:1/2", 0, 2);
        let upper = gram_model(&w, "q:1/2", 1, 1);
        assert_eq!(
            j_matrix(&lower, &upper).unwrap_err(),
            GnsError::TruncationTooSmall {
                required_max_pairs: 2
            }
        );
        let not_next = gram_model(&w, "q:1/2", 2, 2);
        assert!(matches!(
            j_matrix(&lower, &not_next).unwrap_err(),
            GnsError::SectorMismatch { .. }
        ));
    }

    #[test]
    fn sym_rep_is_a_representation() {
        let w = block_half();
        let model = gram_model(&w, "q:1/2", 2, 1);
        let id = sym_rep(&model, &Permutation::identity(2)).unwrap();
        let rank = model.rank().unwrap();
        assert_eq!(id, Mat::identity(rank));
        let tau = Permutation::transposition(2, 1, 2);
        let u = sym_rep(&model, &tau).unwrap();
        assert_eq!(u.mul(&u), Mat::identity(rank));
        // orthogonality in the quotient metric: U^T D U = D.
        let q = model.quotient.as_ref().unwrap();
        for k in 0..rank {
            for l in 0..rank {
                let mut acc = Scalar::zero();
                for m in 0..rank {
                    acc += &(&(u.get(m, k) * u.get(m, l)) * &q.norms2[m]);
                }
                let expect = if k == l {
                    q.norms2[k].clone()
                } else {
                    Scalar::zero()
                };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn representation_law_on_s3() {
        let w = block_half();
        let model = gram_model(&w, "q:1/2", 3, 0);
        for pi in Permutation::all(3) {
            for sigma in Permutation::all(3) {
                let upi = sym_rep(&model, &pi).unwrap();
                let usigma = sym_rep(&model, &sigma).unwrap();
                let composed = sym_rep(&model, &pi.compose(&sigma)).unwrap();
                assert_eq!(upi.mul(&usigma), composed);
            }
        }
    }

    #[test]
    fn intertwining_relation_exact() {
        // U(iota(pi)) j = j U(pi) wherever both sides are defined.
        let w = block_half();
        let lower = gram_model(&w, "q:1/2", 1, 1);
        let upper = gram_model(&w, "q:1/2", 2, 1);
        let j = j_matrix(&lower, &upper).unwrap();
        for pi in Permutation::all(1) {
            let lhs = sym_rep(&upper, &iota(&pi)).unwrap().mul(&j);
            let rhs = j.mul(&sym_rep(&lower, &pi).unwrap());
            assert_eq!(lhs, rhs);
        }
        let lower = gram_model(&w, "q:1/2", 2, 1);
        let upper = gram_model(&w, "q:1/2", 3, 1);
        let j = j_matrix(&lower, &upper).unwrap();
        for pi in Permutation::all(2) {
            let lhs = sym_rep(&upper, &iota(&pi)).unwrap().mul(&j);
            let rhs = j.mul(&sym_rep(&lower, &pi).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chi_is_a_homomorphism_into_the_quotient() {
        // matrix(chi(d0* d0)) = matrix(chi(d0*)) matrix(chi(d0)) on the
        // vacuum sector: both sides fix xi since t(p) = 1.
        let w = block_half();
        let lower = gram_model(&w, "q:1/2", 0, 1);
        let upper = gram_model(&w, "q:1/2", 1, 1);
        let j = j_matrix(&lower, &upper).unwrap();
        let lo = lower.quotient.as_ref().unwrap();
        let up = upper.quotient.as_ref().unwrap();
        let jstar = lo.metric_adjoint(up, &j);
        let jj = jstar.mul(&j);
        // chi(p) acts as the identity on the quotient of the vacuum sector.
        assert_eq!(jj, Mat::identity(lo.rank()));
    }
}
