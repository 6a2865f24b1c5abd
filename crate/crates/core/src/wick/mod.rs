//! Moment calculus for Gaussian and Fock states and the generalized Wick
//! transform: pairing-sum moments, the eta label product, the
//! moment/cumulant inversion and the two inner-product formulas, plus Gram
//! matrices over monomial families.

mod inner;
mod transform;

pub use inner::{fock_gram, gaussian_gram, moment_inner_product, psi_pattern, wick_inner_product};
pub use transform::{enumerate_monomials, moments_from_wick, wick_from_moments, WickExpression};

use std::fmt;

use thiserror::Error;

use crate::kernel::Scalar;
use crate::weights::PairWeight;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WickError {
    #[error("label coordinate lengths differ: {0} vs {1}")]
    MixedLabelDimensions(usize, usize),
    #[error("free points must be strictly increasing; saw {0} after {1}")]
    UnsortedPoints(u32, u32),
    #[error("point {0} appears twice in a monomial")]
    DuplicatePoint(u32),
    #[error("point {0} is neither paired nor labeled on ground {{1..{1}}}")]
    UncoveredPoint(u32, u32),
    #[error("point {0} outside ground {{1..{1}}}")]
    PointOutOfRange(u32, u32),
    #[error("sub-pairing uses point {0} which is not a free point")]
    NotAFreePoint(u32),
}

/// Coordinates of a label vector in a finite orthonormal reference basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelVec(pub Vec<Scalar>);

impl LabelVec {
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = vec![Scalar::zero(); dim];
        v[index] = Scalar::one();
        LabelVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &LabelVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    /// Same vector viewed in a larger ambient basis.
    pub fn pad_to(&self, dim: usize) -> LabelVec {
        assert!(dim >= self.dim());
        let mut v = self.0.clone();
        v.resize(dim, Scalar::zero());
        LabelVec(v)
    }
}

impl fmt::Debug for LabelVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Assignment of label vectors to an increasing set of free ground points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LabelAssignment {
    points: Vec<u32>,
    labels: Vec<LabelVec>,
}

impl LabelAssignment {
    pub fn new(points: Vec<u32>, labels: Vec<LabelVec>) -> Result<Self, WickError> {
        assert_eq!(points.len(), labels.len(), "one label per point");
        for w in points.windows(2) {
            if w[1] <= w[0] {
                return Err(WickError::UnsortedPoints(w[1], w[0]));
            }
        }
        if let Some(first) = labels.first() {
            let d = first.dim();
            for l in &labels {
                if l.dim() != d {
                    return Err(WickError::MixedLabelDimensions(d, l.dim()));
                }
            }
        }
        Ok(LabelAssignment { points, labels })
    }

    pub fn empty() -> Self {
        LabelAssignment {
            points: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn labels(&self) -> &[LabelVec] {
        &self.labels
    }

    pub fn label_at(&self, point: u32) -> Option<&LabelVec> {
        self.points
            .iter()
            .position(|&p| p == point)
            .map(|i| &self.labels[i])
    }

    /// Restriction to the free points outside `removed`.
    pub fn without_points(&self, removed: &[u32]) -> LabelAssignment {
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (p, l) in self.points.iter().zip(&self.labels) {
            if !removed.contains(p) {
                points.push(*p);
                labels.push(l.clone());
            }
        }
        LabelAssignment { points, labels }
    }
}

/// The eta product: for a sub-pairing V' of the free points, the product of
/// label inner products over its pairs (1 for the empty sub-pairing).
pub fn eta(labels: &LabelAssignment, sub_pairing: &[(u32, u32)]) -> Result<Scalar, WickError> {
    let mut acc = Scalar::one();
    for &(l, r) in sub_pairing {
        let fl = labels.label_at(l).ok_or(WickError::NotAFreePoint(l))?;
        let fr = labels.label_at(r).ok_or(WickError::NotAFreePoint(r))?;
        acc *= &fl.dot(fr);
    }
    Ok(acc)
}

/// A single (pair partition on P, label assignment on F) datum with
/// P and F partitioning the ground set {1..n_points}; the index of both
/// moment monomials M(V,f) and Wick products Psi(V,f).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WickMonomial {
    n_points: u32,
    pairs: Vec<(u32, u32)>,
    labels: LabelAssignment,
}

impl WickMonomial {
    pub fn new(
        n_points: u32,
        mut pairs: Vec<(u32, u32)>,
        labels: LabelAssignment,
    ) -> Result<Self, WickError> {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen = vec![false; n_points as usize + 1];
        let mut mark = |x: u32| -> Result<(), WickError> {
            if x == 0 || x > n_points {
                return Err(WickError::PointOutOfRange(x, n_points));
            }
            if seen[x as usize] {
                return Err(WickError::DuplicatePoint(x));
            }
            seen[x as usize] = true;
            Ok(())
        };
        for &(l, r) in &pairs {
            mark(l)?;
            mark(r)?;
            if l == r {
                return Err(WickError::DuplicatePoint(l));
            }
        }
        for &p in labels.points() {
            mark(p)?;
        }
        for x in 1..=n_points {
            if !seen[x as usize] {
                return Err(WickError::UncoveredPoint(x, n_points));
            }
        }
        Ok(WickMonomial {
            n_points,
            pairs,
            labels,
        })
    }

    pub fn vacuum() -> Self {
        WickMonomial {
            n_points: 0,
            pairs: Vec::new(),
            labels: LabelAssignment::empty(),
        }
    }

    pub fn n_points(&self) -> u32 {
        self.n_points
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn labels(&self) -> &LabelAssignment {
        &self.labels
    }

    pub fn n_free(&self) -> usize {
        self.labels.len()
    }
}

/// Gaussian moment: the pairing-prescription sum over all pair partitions of
/// the ground set, each weighted by t and the product of label inner
/// products. Labels are listed for points 1..n in order; odd n gives 0.
pub fn gaussian_moment(w: &impl PairWeight, labels: &[LabelVec]) -> Scalar {
    let n = labels.len();
    if n % 2 != 0 {
        return Scalar::zero();
    }
    let factor = |i: usize, j: usize| -> Option<Scalar> {
        let d = labels[i].dot(&labels[j]);
        if d.is_zero() {
            None
        } else {
            Some(d)
        }
    };
    pairing_sum(n, &factor, w)
}

/// Sequence of creation/annihilation symbols with vector labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OpKind {
    Create,
    Annihilate,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CAPattern(pub Vec<(OpKind, LabelVec)>);

impl CAPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverses the order and swaps creation with annihilation.
    pub fn adjoint(&self) -> CAPattern {
        CAPattern(
            self.0
                .iter()
                .rev()
                .map(|(k, l)| {
                    let flipped = match k {
                        OpKind::Create => OpKind::Annihilate,
                        OpKind::Annihilate => OpKind::Create,
                    };
                    (flipped, l.clone())
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &CAPattern) -> CAPattern {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        CAPattern(v)
    }
}

/// Fock moment: pairing sum where only (annihilate, create) ordered pairs
/// carry a nonzero covariance, weighted by t and label inner products.
/// Odd length gives 0.
pub fn fock_moment(w: &impl PairWeight, pattern: &CAPattern) -> Scalar {
    let n = pattern.len();
    if n % 2 != 0 {
        return Scalar::zero();
    }
    let factor = |i: usize, j: usize| -> Option<Scalar> {
        // i < j: covariance Q is 1 only on (annihilate, create).
        let (ki, li) = &pattern.0[i];
        let (kj, lj) = &pattern.0[j];
        if !matches!(ki, OpKind::Annihilate) || !matches!(kj, OpKind::Create) {
            return None;
        }
        let d = li.dot(lj);
        if d.is_zero() {
            None
        } else {
            Some(d)
        }
    };
    pairing_sum(n, &factor, w)
}

/// Backtracking sum over perfect matchings of {0..n-1}: the first unused
/// index pairs with each admissible later index; branches with a zero factor
/// are pruned. Each complete matching contributes t(V) times the product of
/// its factors.
fn pairing_sum(
    n: usize,
    factor: &impl Fn(usize, usize) -> Option<Scalar>,
    w: &impl PairWeight,
) -> Scalar {
    fn rec(
        used: &mut Vec<bool>,
        pairs: &mut Vec<(u32, u32)>,
        coeff: Scalar,
        n: usize,
        factor: &impl Fn(usize, usize) -> Option<Scalar>,
        w: &impl PairWeight,
        acc: &mut Scalar,
    ) {
        let Some(first) = used.iter().position(|u| !u) else {
            let v = crate::partitions::PairPartition::new(n as u32, pairs.clone())
                .expect("complete matching");
            *acc += &(&coeff * &w.value(&v));
            return;
        };
        used[first] = true;
        for j in (first + 1)..n {
            if used[j] {
                continue;
            }
            if let Some(f) = factor(first, j) {
                used[j] = true;
                pairs.push((first as u32 + 1, j as u32 + 1));
                rec(used, pairs, &coeff * &f, n, factor, w, acc);
                pairs.pop();
                used[j] = false;
            }
        }
        used[first] = false;
    }
    let mut acc = Scalar::zero();
    rec(
        &mut vec![false; n],
        &mut Vec::new(),
        Scalar::one(),
        n,
        factor,
        w,
        &mut acc,
    );
    acc
}
