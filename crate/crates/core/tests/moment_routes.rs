//! Independent routes to the same moments: the field expansion
//! omega(f) = a(f) + a*(f) ties Gaussian moments to covariance pairing
//! sums, and vacuum inner products of pure field monomials reduce to plain
//! Gaussian moments of concatenated words.

use bp2_core::gns::{creation_bounds, fock_model};
use bp2_core::kernel::Scalar;
use bp2_core::weights::Weight;
use bp2_core::wick::{
    fock_moment, gaussian_moment, moment_inner_product, CAPattern, LabelAssignment, LabelVec,
    OpKind, WickMonomial,
};

fn words(len: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..dim {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The Gaussian moment of omega(f_1)..omega(f_n) equals the sum of the
/// 2^n Fock moments obtained by expanding every field into a creator plus
/// an annihilator.
#[test]
fn gaussian_moment_equals_expanded_fock_moment() {
    let weights = [
        Weight::Bosonic,
        Weight::Free,
        Weight::Fermionic,
        Weight::block_q(Scalar::ratio(1, 2)).unwrap(),
        Weight::block_q(Scalar::ratio(-1, 2)).unwrap(),
    ];
    for w in &weights {
        for len in [2usize, 3, 4] {
            for word in words(len, 2) {
                let labels: Vec<LabelVec> =
                    word.iter().map(|&c| LabelVec::basis(2, c)).collect();
                let direct = gaussian_moment(w, &labels);
                let mut expanded = Scalar::zero();
                for mask in 0u32..(1 << len) {
                    let pattern = CAPattern(
                        labels
                            .iter()
                            .enumerate()
                            .map(|(i, l)| {
                                let kind = if mask & (1 << i) != 0 {
                                    OpKind::Create
                                } else {
                                    OpKind::Annihilate
                                };
                                (kind, l.clone())
                            })
                            .collect(),
                    );
                    expanded += &fock_moment(w, &pattern);
                }
                assert_eq!(direct, expanded, "{w} word {word:?}");
            }
        }
    }
}

/// For monomials with no internal pairs, the vacuum inner product of moment
/// monomials is the Gaussian moment of the reversed-then-concatenated label
/// word.
#[test]
fn moment_inner_product_reduces_to_gaussian_moment() {
    let w = Weight::block_q(Scalar::ratio(-1, 2)).unwrap();
    for n1 in 1..=3usize {
        for n2 in 1..=3usize {
            for w1 in words(n1, 2) {
                for w2 in words(n2, 2) {
                    let make = |word: &[usize]| {
                        let points: Vec<u32> = (1..=word.len() as u32).collect();
                        let labels: Vec<LabelVec> =
                            word.iter().map(|&c| LabelVec::basis(2, c)).collect();
                        WickMonomial::new(
                            word.len() as u32,
                            vec![],
                            LabelAssignment::new(points, labels).unwrap(),
                        )
                        .unwrap()
                    };
                    let a = make(&w1);
                    let b = make(&w2);
                    let mut combined: Vec<LabelVec> =
                        w1.iter().rev().map(|&c| LabelVec::basis(2, c)).collect();
                    combined.extend(w2.iter().map(|&c| LabelVec::basis(2, c)));
                    assert_eq!(
                        moment_inner_product(&w, &a, &b),
                        gaussian_moment(&w, &combined),
                        "{w1:?} vs {w2:?}"
                    );
                }
            }
        }
    }
}

/// Creation/annihilation bounds also hold verbatim on the fermionic and
/// free models (their hooks are isometries too).
#[test]
fn bounds_hold_for_fermionic_and_free_models() {
    for w in [Weight::Fermionic, Weight::Free] {
        let model = fock_model(&w, &w.to_string(), 2, 3, 3).unwrap();
        let fields = vec![LabelVec::basis(2, 0), LabelVec(vec![Scalar::one(), Scalar::one()])];
        let report = creation_bounds(&w, &model, &fields, 10, 7);
        assert!(report.multiplicative_precondition, "{w}");
        assert!(report.all_hold(), "{w}: {:?}", report.per_level);
    }
}

/// Three-color model agrees with direct moments on every monomial of
/// length up to 4.
#[test]
fn three_color_model_matches_direct_moments() {
    let w = Weight::block_q(Scalar::ratio(1, 3)).unwrap();
    let model = fock_model(&w, "q:1/3", 3, 2, 4).unwrap();
    let ops: Vec<(OpKind, usize)> = (0..3)
        .flat_map(|c| [(OpKind::Create, c), (OpKind::Annihilate, c)])
        .collect();
    let mut patterns: Vec<Vec<(OpKind, usize)>> = vec![Vec::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for pat in &patterns {
            for &op in &ops {
                let mut p = pat.clone();
                p.push(op);
                next.push(p);
            }
        }
        for pat in &next {
            let direct = fock_moment(
                &w,
                &CAPattern(pat.iter().map(|&(k, c)| (k, LabelVec::basis(3, c))).collect()),
            );
            match model.vacuum_expectation(pat) {
                Ok(v) => assert_eq!(v, direct, "{pat:?}"),
                Err(_) => assert_eq!(direct, Scalar::zero(), "{pat:?}"),
            }
        }
        patterns = next;
    }
}
