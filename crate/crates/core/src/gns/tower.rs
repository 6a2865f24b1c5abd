use std::collections::HashMap;

use crate::kernel::{ldlt_psd_certificate, quotient_basis, Mat, QuotientBasis, Scalar, SymMatrix};
use crate::perm::Permutation;
use crate::semigroup::{Diagram, GeneratorWord, Token};
use crate::weights::PairWeight;

use super::{gram_of_basis, GnsError};

/// One sector of the operator tower: the n-leg diagrams with the pair
/// budget that a 2r-point word evaluation can actually reach (pairs at most
/// r - n), plus Gram and quotient data.
pub struct TowerSector {
    pub n_left: usize,
    pub max_pairs: usize,
    pub basis: Vec<Diagram>,
    pub gram: SymMatrix,
    pub quotient: QuotientBasis,
    index: HashMap<Diagram, usize>,
}

impl TowerSector {
    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Quotient coordinates of a single basis diagram.
    pub fn coords_of(&self, d: &Diagram) -> Option<Vec<Scalar>> {
        let i = self.position(d)?;
        let mut formal = vec![Scalar::zero(); self.basis.len()];
        formal[i] = Scalar::one();
        Some(self.quotient.coords(&formal))
    }
}

/// Sector ladder used to evaluate standard-form words as operator products:
/// cohook matrices are the quotient matrices of left multiplication by d0*,
/// hook matrices are their metric adjoints (j = (j*)*), and the star
/// property -- that the adjoint matrix agrees with formal multiplication by
/// d0 wherever the truncation admits the image -- is verified exactly at
/// construction.
pub struct OperatorTower {
    pub weight_name: String,
    /// Supports evaluation of words of partitions with up to 2r points.
    pub half_points: usize,
    pub sectors: Vec<TowerSector>,
    /// cohooks[n]: sector n+1 -> n, the matrix of chi(d0*).
    cohooks: Vec<Mat>,
    /// hooks[n]: sector n -> n+1, metric adjoint of cohooks[n].
    hooks: Vec<Mat>,
}

/// Builds the tower for words on up to 2 * half_points ground points.
/// During any valid word evaluation a state with n open legs has at most
/// half_points - n pairs, so the shrinking pair budgets are exhaustive.
pub fn operator_tower(
    w: &impl PairWeight,
    weight_name: &str,
    half_points: usize,
) -> Result<OperatorTower, GnsError> {
    let r = half_points;
    let mut sectors = Vec::with_capacity(r + 1);
    for n in 0..=r {
        let max_pairs = r - n;
        let basis = Diagram::enumerate(n, 0, max_pairs);
        let gram = gram_of_basis(w, &basis);
        if !ldlt_psd_certificate(&gram).is_psd() {
            return Err(GnsError::NotPositive);
        }
        let quotient = quotient_basis(&gram).expect("certified PSD");
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect();
        sectors.push(TowerSector {
            n_left: n,
            max_pairs,
            basis,
            gram,
            quotient,
            index,
        });
    }

    let cohook = Diagram::cohook();
    let mut cohooks = Vec::with_capacity(r);
    let mut hooks = Vec::with_capacity(r);
    for n in 0..r {
        let (lo, up) = (&sectors[n], &sectors[n + 1]);
        // chi(d0*): images of (n+1)-leg diagrams gain one pair, which fits
        // the lower sector's budget by construction.
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(up.quotient.rank());
        for l in 0..up.quotient.rank() {
            let mut image = vec![Scalar::zero(); lo.basis.len()];
            for (i, d) in up.basis.iter().enumerate() {
                let c = up.quotient.cols.get(i, l);
                if c.is_zero() {
                    continue;
                }
                let cd = cohook.multiply(d);
                let target = lo
                    .position(&cd)
                    .expect("cohook image fits the shrinking pair budget");
                image[target] += c;
            }
            columns.push(lo.quotient.coords(&image));
        }
        let cohook_mat = Mat::from_fn(lo.quotient.rank(), up.quotient.rank(), |a, b| {
            columns[b][a].clone()
        });
        let hook_mat = up.quotient.metric_adjoint(&lo.quotient, &cohook_mat);
        cohooks.push(cohook_mat);
        hooks.push(hook_mat);
    }

    let tower = OperatorTower {
        weight_name: weight_name.to_string(),
        half_points: r,
        sectors,
        cohooks,
        hooks,
    };
    tower.verify_star_property()?;
    Ok(tower)
}

impl OperatorTower {
    /// The hook (j) matrix from sector n to n+1 and the cohook (j*) matrix
    /// back down.
    pub fn hook_matrix(&self, n: usize) -> &Mat {
        &self.hooks[n]
    }

    pub fn cohook_matrix(&self, n: usize) -> &Mat {
        &self.cohooks[n]
    }

    /// Exact check that the metric adjoint of chi(d0*) acts as formal left
    /// multiplication by d0 on every basis diagram whose image stays within
    /// the upper sector's pair budget.
    pub fn verify_star_property(&self) -> Result<(), GnsError> {
        let hook = Diagram::hook();
        for n in 0..self.half_points {
            let (lo, up) = (&self.sectors[n], &self.sectors[n + 1]);
            for (i, d) in lo.basis.iter().enumerate() {
                if d.n_pairs() > up.max_pairs {
                    continue;
                }
                let formal = up.coords_of(&hook.multiply(d)).ok_or_else(|| {
                    GnsError::WordOutOfRange(format!("hook image of {d} missing"))
                })?;
                let mut unit = vec![Scalar::zero(); lo.basis.len()];
                unit[i] = Scalar::one();
                let through_adjoint = self.hooks[n].mul_vec(&lo.quotient.coords(&unit));
                if formal != through_adjoint {
                    return Err(GnsError::WordOutOfRange(format!(
                        "adjoint of chi(d0*) deviates from chi(d0) on {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// U(pi) on a sector's quotient.
    pub fn sym_rep(&self, n: usize, pi: &Permutation) -> Result<Mat, GnsError> {
        let sector = &self.sectors[n];
        if pi.size() != sector.n_left {
            return Err(GnsError::PermSizeMismatch {
                expected: sector.n_left,
                got: pi.size(),
            });
        }
        let q = &sector.quotient;
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(q.rank());
        for l in 0..q.rank() {
            let mut image = vec![Scalar::zero(); sector.basis.len()];
            for (i, d) in sector.basis.iter().enumerate() {
                let c = q.cols.get(i, l);
                if c.is_zero() {
                    continue;
                }
                let pd = d
                    .permute_legs(pi)
                    .expect("tower diagrams have no right legs");
                image[sector.position(&pd).expect("action preserves basis")] += c;
            }
            columns.push(q.coords(&image));
        }
        Ok(Mat::from_fn(q.rank(), q.rank(), |a, b| {
            columns[b][a].clone()
        }))
    }

    /// Evaluates a generator word as an operator product on the vacuum,
    /// hooks and cohooks acting through the quotient matrices, and returns
    /// the vacuum expectation <xi, word xi>.
    pub fn evaluate_as_operators(&self, word: &GeneratorWord) -> Result<Scalar, GnsError> {
        let mut sector = 0usize;
        let mut coords = {
            let empty = Diagram::empty();
            self.sectors[0]
                .coords_of(&empty)
                .ok_or_else(|| GnsError::WordOutOfRange("no vacuum".into()))?
        };
        for token in word.tokens().iter().rev() {
            match token {
                Token::Hook => {
                    if sector + 1 > self.half_points {
                        return Err(GnsError::WordOutOfRange(format!(
                            "word needs more than {} open legs",
                            self.half_points
                        )));
                    }
                    coords = self.hooks[sector].mul_vec(&coords);
                    sector += 1;
                }
                Token::Cohook => {
                    if sector == 0 {
                        return Err(GnsError::WordOutOfRange("cohook with no open legs".into()));
                    }
                    coords = self.cohooks[sector - 1].mul_vec(&coords);
                    sector -= 1;
                }
                Token::Perm(pi) => {
                    coords = self.sym_rep(sector, pi)?.mul_vec(&coords);
                }
            }
        }
        if sector != 0 {
            return Err(GnsError::WordOutOfRange(
                "word does not close all legs".into(),
            ));
        }
        // <xi, .> is the first coordinate: the empty diagram heads the basis
        // with unit norm.
        Ok(coords.first().cloned().unwrap_or_else(Scalar::zero))
    }
}
