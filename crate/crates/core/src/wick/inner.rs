use crate::kernel::{KernelError, Scalar, SymMatrix};
use crate::partitions::PairPartition;
use crate::weights::PairWeight;

use super::{fock_moment, CAPattern, LabelVec, OpKind, WickMonomial};

/// Positions and labels of the concatenated ground X1* + X2: the first
/// monomial's ground reversed, then the second's shifted. Returns the
/// fixed pairs (V1* u V2) plus the two free-position lists with labels.
struct ConcatGround {
    n_total: u32,
    fixed_pairs: Vec<(u32, u32)>,
    free1: Vec<(u32, LabelVec)>,
    free2: Vec<(u32, LabelVec)>,
}

fn concat_ground(a: &WickMonomial, b: &WickMonomial) -> ConcatGround {
    let n1 = a.n_points();
    let mut fixed_pairs: Vec<(u32, u32)> = a
        .pairs()
        .iter()
        .map(|&(l, r)| (n1 + 1 - r, n1 + 1 - l))
        .collect();
    fixed_pairs.extend(b.pairs().iter().map(|&(l, r)| (l + n1, r + n1)));
    let mut free1: Vec<(u32, LabelVec)> = a
        .labels()
        .points()
        .iter()
        .zip(a.labels().labels())
        .map(|(&p, l)| (n1 + 1 - p, l.clone()))
        .collect();
    free1.sort_by_key(|&(p, _)| p);
    let free2: Vec<(u32, LabelVec)> = b
        .labels()
        .points()
        .iter()
        .zip(b.labels().labels())
        .map(|(&p, l)| (p + n1, l.clone()))
        .collect();
    ConcatGround {
        n_total: n1 + b.n_points(),
        fixed_pairs,
        free1,
        free2,
    }
}

/// Inner product of Wick-product vacuum vectors: zero unless the free sets
/// have equal size, otherwise the sum over complete bipartite matchings of
/// F1* against F2 of eta times t of the assembled pair partition.
pub fn wick_inner_product(w: &impl PairWeight, a: &WickMonomial, b: &WickMonomial) -> Scalar {
    if a.n_free() != b.n_free() {
        return Scalar::zero();
    }
    let ground = concat_ground(a, b);
    let k = ground.free1.len();
    let mut acc = Scalar::zero();
    let mut assignment: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    bipartite_rec(
        &ground,
        &mut assignment,
        &mut used,
        &Scalar::one(),
        w,
        &mut acc,
    );
    acc
}

fn bipartite_rec(
    ground: &ConcatGround,
    assignment: &mut Vec<usize>,
    used: &mut [bool],
    coeff: &Scalar,
    w: &impl PairWeight,
    acc: &mut Scalar,
) {
    let i = assignment.len();
    if i == ground.free1.len() {
        let mut pairs = ground.fixed_pairs.clone();
        for (a, &bi) in assignment.iter().enumerate() {
            pairs.push((ground.free1[a].0, ground.free2[bi].0));
        }
        let v = PairPartition::new(ground.n_total, pairs).expect("assembled matching");
        *acc += &(coeff * &w.value(&v));
        return;
    }
    for j in 0..ground.free2.len() {
        if used[j] {
            continue;
        }
        let d = ground.free1[i].1.dot(&ground.free2[j].1);
        if d.is_zero() {
            continue;
        }
        used[j] = true;
        assignment.push(j);
        bipartite_rec(ground, assignment, used, &(coeff * &d), w, acc);
        assignment.pop();
        used[j] = false;
    }
}

/// Inner product of moment-monomial vacuum vectors: the sum over all pair
/// partitions of the concatenated free set (not just bipartite ones).
pub fn moment_inner_product(w: &impl PairWeight, a: &WickMonomial, b: &WickMonomial) -> Scalar {
    let ground = concat_ground(a, b);
    let mut free: Vec<(u32, LabelVec)> = ground.free1.clone();
    free.extend(ground.free2.iter().cloned());
    if free.len() % 2 != 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    all_pairings_rec(
        &ground,
        &free,
        &mut vec![false; free.len()],
        &mut Vec::new(),
        &Scalar::one(),
        w,
        &mut acc,
    );
    acc
}

fn all_pairings_rec(
    ground: &ConcatGround,
    free: &[(u32, LabelVec)],
    used: &mut [bool],
    chosen: &mut Vec<(u32, u32)>,
    coeff: &Scalar,
    w: &impl PairWeight,
    acc: &mut Scalar,
) {
    let Some(first) = used.iter().position(|u| !u) else {
        let mut pairs = ground.fixed_pairs.clone();
        pairs.extend_from_slice(chosen);
        let v = PairPartition::new(ground.n_total, pairs).expect("assembled matching");
        *acc += &(coeff * &w.value(&v));
        return;
    };
    used[first] = true;
    for j in (first + 1)..free.len() {
        if used[j] {
            continue;
        }
        let d = free[first].1.dot(&free[j].1);
        if d.is_zero() {
            continue;
        }
        used[j] = true;
        chosen.push((free[first].0.min(free[j].0), free[first].0.max(free[j].0)));
        all_pairings_rec(ground, free, used, chosen, &(coeff * &d), w, acc);
        chosen.pop();
        used[j] = false;
    }
    used[first] = false;
}

/// Gram matrix of Wick-product vacuum vectors over a family of monomials.
pub fn gaussian_gram(w: &impl PairWeight, family: &[WickMonomial]) -> SymMatrix {
    if w.reversal_invariant() {
        SymMatrix::from_fn_mirror(family.len(), |i, j| {
            wick_inner_product(w, &family[i], &family[j])
        })
    } else {
        SymMatrix::from_fn_checked(family.len(), |i, j| {
            wick_inner_product(w, &family[i], &family[j])
        })
        .expect("wick gram must be symmetric; weight is not reversal invariant")
    }
}

/// The creation/annihilation pattern of the Fock-side vector psi(V, f):
/// labeled free points become creators, each pair contributes an
/// annihilator at its left and a creator at its right endpoint in a fresh
/// palette color shared across a whole family (coordinates `ambient_dim ..
/// ambient_dim + palette` are reserved for the palette; `palette` must be at
/// least the pair count).
pub fn psi_pattern(m: &WickMonomial, ambient_dim: usize, palette: usize) -> CAPattern {
    assert!(
        m.pairs().len() <= palette,
        "palette too small for pair count"
    );
    let full_dim = ambient_dim + palette;
    let mut ops: Vec<Option<(OpKind, LabelVec)>> = vec![None; m.n_points() as usize];
    for (i, &(l, r)) in m.pairs().iter().enumerate() {
        let color = LabelVec::basis(full_dim, ambient_dim + i);
        ops[(l - 1) as usize] = Some((OpKind::Annihilate, color.clone()));
        ops[(r - 1) as usize] = Some((OpKind::Create, color));
    }
    for (&p, label) in m.labels().points().iter().zip(m.labels().labels()) {
        ops[(p - 1) as usize] = Some((OpKind::Create, label.pad_to(full_dim)));
    }
    CAPattern(
        ops.into_iter()
            .map(|o| o.expect("monomial covers ground"))
            .collect(),
    )
}

/// Gram matrix of pattern vectors under the Fock state: entry (a, b) is the
/// vacuum expectation of adjoint(pattern_a) . pattern_b.
pub fn fock_gram(w: &impl PairWeight, patterns: &[CAPattern]) -> Result<SymMatrix, KernelError> {
    if w.reversal_invariant() {
        Ok(SymMatrix::from_fn_mirror(patterns.len(), |i, j| {
            fock_moment(w, &patterns[i].adjoint().concat(&patterns[j]))
        }))
    } else {
        SymMatrix::from_fn_checked(patterns.len(), |i, j| {
            fock_moment(w, &patterns[i].adjoint().concat(&patterns[j]))
        })
    }
}
