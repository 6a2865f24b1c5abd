//! Weight functions t on pair partitions: the bosonic/free/fermionic
//! constants, the block-counting interpolation family and the
//! crossing-counting family, the hat extension to diagrams, and bounded
//! exhaustive checks of multiplicativity and rotation invariance.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::Scalar;
use crate::partitions::PairPartition;
use crate::semigroup::Diagram;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("block-family parameter {0} is outside [-1, 1]")]
    ParameterOutOfRange(Scalar),
    #[error("malformed weight spec {input:?}: {reason}")]
    BadSpec { input: String, reason: String },
}

/// Evaluator interface for functions on pair partitions; lets checkers and
/// model builders accept ad-hoc (e.g. deliberately broken) weights alongside
/// the named families.
pub trait PairWeight {
    fn value(&self, v: &PairPartition) -> Scalar;

    /// t-hat: the extension to diagrams, zero on anything with legs.
    fn value_hat(&self, d: &Diagram) -> Scalar {
        match d.as_pair_partition() {
            Some(v) => self.value(&v),
            None => Scalar::zero(),
        }
    }

    /// Whether t(V*) = t(V) is known to hold; enables mirrored Gram fills.
    fn reversal_invariant(&self) -> bool {
        false
    }
}

impl<F: Fn(&PairPartition) -> Scalar> PairWeight for F {
    fn value(&self, v: &PairPartition) -> Scalar {
        self(v)
    }
}

/// A named, parameterized weight function on pair partitions, normalized to
/// 1 on the single pair.
#[derive(Clone, PartialEq, Debug)]
pub enum Weight {
    /// Constant 1.
    Bosonic,
    /// 1 on non-crossing partitions, 0 otherwise.
    Free,
    /// (-1)^crossings.
    Fermionic,
    /// q^(pairs - blocks) for q in [0, 1]; for q in [-1, 0) the composite
    /// (-q)^(pairs - blocks) * (-1)^crossings.
    BlockQ(Scalar),
    /// q^crossings; external cross-check family, any rational parameter
    /// (|q| > 1 gives deliberately non-positive-definite weights).
    CrossingQ(Scalar),
}

impl Weight {
    pub fn block_q(q: Scalar) -> Result<Self, WeightError> {
        if q.abs() > Scalar::one() {
            return Err(WeightError::ParameterOutOfRange(q));
        }
        Ok(Weight::BlockQ(q))
    }

    pub fn crossing_q(q: Scalar) -> Self {
        Weight::CrossingQ(q)
    }

    pub fn evaluate(&self, v: &PairPartition) -> Scalar {
        self.value(v)
    }

    pub fn evaluate_hat(&self, d: &Diagram) -> Scalar {
        self.value_hat(d)
    }
}

impl PairWeight for Weight {
    fn value(&self, v: &PairPartition) -> Scalar {
        match self {
            Weight::Bosonic => Scalar::one(),
            Weight::Free => {
                if v.crossings() == 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
            Weight::Fermionic => sign_pow(v.crossings()),
            Weight::BlockQ(q) => {
                let exp = (v.n_pairs() - v.n_blocks()) as u32;
                if q.is_negative() {
                    (-q).pow(exp) * sign_pow(v.crossings())
                } else {
                    q.pow(exp)
                }
            }
            Weight::CrossingQ(q) => q.pow(v.crossings() as u32),
        }
    }

    fn reversal_invariant(&self) -> bool {
        // crossing and block counts are mirror-invariant, hence all families.
        true
    }
}

fn sign_pow(n: usize) -> Scalar {
    if n % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Bosonic => write!(f, "bosonic"),
            Weight::Free => write!(f, "free"),
            Weight::Fermionic => write!(f, "fermionic"),
            Weight::BlockQ(q) => write!(f, "q:{q}"),
            Weight::CrossingQ(q) => write!(f, "qcr:{q}"),
        }
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    /// CLI weight spec: `bosonic`, `free`, `fermionic`, `q:<rational>`
    /// (block family), `qcr:<rational>` (crossing family); rationals as
    /// `p/q` or integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |reason: String| WeightError::BadSpec {
            input: s.to_string(),
            reason,
        };
        match s {
            "bosonic" => Ok(Weight::Bosonic),
            "free" => Ok(Weight::Free),
            "fermionic" => Ok(Weight::Fermionic),
            _ => {
                if let Some(q) = s.strip_prefix("qcr:") {
                    let q: Scalar = q.parse().map_err(|e| bad(format!("{e}")))?;
                    Ok(Weight::CrossingQ(q))
                } else if let Some(q) = s.strip_prefix("q:") {
                    let q: Scalar = q.parse().map_err(|e| bad(format!("{e}")))?;
                    Weight::block_q(q)
                } else {
                    Err(bad(
                        "expected bosonic|free|fermionic|q:<rat>|qcr:<rat>".into()
                    ))
                }
            }
        }
    }
}

/// Counterexample to multiplicativity: t(V1 with V2 inserted at gap) differs
/// from t(V1) * t(V2).
#[derive(Clone, Debug)]
pub struct MultiplicativityCounterexample {
    pub outer: PairPartition,
    pub inner: PairPartition,
    pub gap: u32,
    pub combined_value: Scalar,
    pub product_value: Scalar,
}

#[derive(Clone, Debug)]
pub struct MultiplicativityReport {
    pub checked_points: u32,
    pub counterexample: Option<MultiplicativityCounterexample>,
}

impl MultiplicativityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively checks t(V1 u V2) = t(V1) t(V2) over every interval
/// insertion with combined size at most `n_points`, returning the first
/// (smallest) counterexample if any.
pub fn is_multiplicative_upto(w: &impl PairWeight, n_points: u32) -> MultiplicativityReport {
    for total in (2..=n_points).step_by(2) {
        for n_inner in (0..=total).step_by(2) {
            let n_outer = total - n_inner;
            for outer in PairPartition::enumerate(n_outer) {
                let t_outer = w.value(&outer);
                for inner in PairPartition::enumerate(n_inner) {
                    let t_inner = w.value(&inner);
                    let product = &t_outer * &t_inner;
                    for gap in 0..=n_outer {
                        let combined = outer.nest_insert(&inner, gap).expect("gap within range");
                        let combined_value = w.value(&combined);
                        if combined_value != product {
                            return MultiplicativityReport {
                                checked_points: n_points,
                                counterexample: Some(MultiplicativityCounterexample {
                                    outer,
                                    inner,
                                    gap,
                                    combined_value,
                                    product_value: product,
                                }),
                            };
                        }
                    }
                }
            }
        }
    }
    MultiplicativityReport {
        checked_points: n_points,
        counterexample: None,
    }
}

/// Counterexample to rotation invariance.
#[derive(Clone, Debug)]
pub struct RotationCounterexample {
    pub partition: PairPartition,
    pub value: Scalar,
    pub rotated_value: Scalar,
}

#[derive(Clone, Debug)]
pub struct RotationReport {
    pub checked_points: u32,
    pub counterexample: Option<RotationCounterexample>,
}

impl RotationReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively checks t(V) = t(rotate(V)) for all partitions with at most
/// `n_points` points. A single rotation step over the full enumeration
/// already certifies invariance under the whole cyclic group.
pub fn is_rotation_invariant_upto(w: &impl PairWeight, n_points: u32) -> RotationReport {
    for n in (2..=n_points).step_by(2) {
        for v in PairPartition::enumerate(n) {
            let value = w.value(&v);
            let rotated_value = w.value(&v.rotate().expect("nonempty"));
            if value != rotated_value {
                return RotationReport {
                    checked_points: n_points,
                    counterexample: Some(RotationCounterexample {
                        partition: v,
                        value,
                        rotated_value,
                    }),
                };
            }
        }
    }
    RotationReport {
        checked_points: n_points,
        counterexample: None,
    }
}
