use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{
    jacobi_eigs_f64, ldlt_psd_certificate, quotient_basis, Mat, QuotientBasis, Scalar, SymMatrix,
};
use crate::perm::Permutation;
use crate::semigroup::Diagram;
use crate::weights::PairWeight;
use crate::wick::{fock_moment, CAPattern, LabelVec, OpKind};

use super::GnsError;

/// One spanning vector of a Fock level: a diagram with `n` left legs and a
/// color word indexed by leg rank (colors[r-1] colors the rank-(r) leg).
/// The vector is the monomial pattern of the diagram applied to the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockBasisVector {
    pub diagram: Diagram,
    pub colors: Vec<u8>,
}

/// One particle level of the truncated Fock model.
pub struct FockLevel {
    pub basis: Vec<FockBasisVector>,
    pub gram: SymMatrix,
    pub quotient: QuotientBasis,
    index: HashMap<(Diagram, Vec<u8>), usize>,
}

impl FockLevel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    pub fn position(&self, d: &Diagram, colors: &[u8]) -> Option<usize> {
        self.index.get(&(d.clone(), colors.to_vec())).copied()
    }
}

/// Truncated Fock matrix model over a `dim`-color one-particle space:
/// particle levels 0..=level_cap, each spanned by diagram/color-word
/// monomial vectors with ground size at most `len_cap`, with exact Grams,
/// quotients, and creation/annihilation matrices in quotient coordinates
/// (annihilation is the metric adjoint of creation by construction).
///
/// Monomial evaluation through the quotient matrices is exact for patterns
/// of length at most `len_cap` staying within the level cap; the matrices
/// themselves are the truncation compressions of the operators.
pub struct FockModel {
    pub weight_name: String,
    pub dim: usize,
    pub level_cap: usize,
    pub len_cap: usize,
    pub levels: Vec<FockLevel>,
    /// creations[k][c]: level k -> k+1 in quotient coordinates.
    creations: Vec<Vec<Mat>>,
    /// annihilations[k][c]: level k+1 -> k (metric adjoint of creations[k][c]).
    annihilations: Vec<Vec<Mat>>,
}

fn color_words(n: usize, dim: usize) -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * dim);
        for w in &words {
            for c in 0..dim as u8 {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        words = next;
    }
    words
}

/// Inner product of two monomial vectors of the same level: the sum over
/// color-matching bijections of leg ranks of t-hat of the twisted semigroup
/// product. Independent of (and cross-checked against) the covariance
/// pairing sum.
fn psi_inner(
    w: &impl PairWeight,
    d1_star: &Diagram,
    w1: &[u8],
    d2: &Diagram,
    w2: &[u8],
    perms: &[Permutation],
) -> Scalar {
    let mut acc = Scalar::zero();
    for sigma in perms {
        let inv = sigma.inverse();
        let colors_match =
            (1..=w1.len() as u32).all(|r| w1[(r - 1) as usize] == w2[(inv.apply(r) - 1) as usize]);
        if !colors_match {
            continue;
        }
        let twisted = d2.permute_legs(sigma).expect("sector diagram");
        acc += &w.value_hat(&d1_star.multiply(&twisted));
    }
    acc
}

/// The creation/annihilation pattern realizing a monomial basis vector:
/// leg of rank r creates color colors[r-1]; pair i contributes an
/// annihilator/creator pair in palette color dim+i.
pub fn pattern_of(d: &Diagram, colors: &[u8], dim: usize, palette: usize) -> CAPattern {
    assert!(d.n_pairs() <= palette);
    assert_eq!(d.n_left(), colors.len());
    assert_eq!(d.n_right(), 0);
    let full = dim + palette;
    let mut ops: Vec<Option<(OpKind, LabelVec)>> = vec![None; d.ground_size() as usize];
    for (i, &(l, r)) in d.pairs().iter().enumerate() {
        let color = LabelVec::basis(full, dim + i);
        ops[(l - 1) as usize] = Some((OpKind::Annihilate, color.clone()));
        ops[(r - 1) as usize] = Some((OpKind::Create, color));
    }
    for (idx, &pos) in d.left_legs().iter().enumerate() {
        ops[(pos - 1) as usize] =
            Some((OpKind::Create, LabelVec::basis(full, colors[idx] as usize)));
    }
    CAPattern(
        ops.into_iter()
            .map(|o| o.expect("diagram covers ground"))
            .collect(),
    )
}

/// Builds the truncated Fock model. Fails with [`GnsError::NotPositive`]
/// when some level Gram of the weight is not PSD (no quotient space).
pub fn fock_model(
    w: &impl PairWeight,
    weight_name: &str,
    dim: usize,
    level_cap: usize,
    len_cap: usize,
) -> Result<FockModel, GnsError> {
    assert!(
        level_cap <= len_cap,
        "levels above the length cap would be empty"
    );
    let mut levels: Vec<FockLevel> = Vec::with_capacity(level_cap + 1);
    for n in 0..=level_cap {
        let max_pairs = (len_cap - n) / 2;
        let diagrams = Diagram::enumerate(n, 0, max_pairs);
        let words = color_words(n, dim);
        let mut basis = Vec::with_capacity(diagrams.len() * words.len());
        for d in &diagrams {
            for word in &words {
                basis.push(FockBasisVector {
                    diagram: d.clone(),
                    colors: word.clone(),
                });
            }
        }
        let stars: Vec<Diagram> = basis.iter().map(|b| b.diagram.involution()).collect();
        let perms = Permutation::all(n);
        let entry = |i: usize, j: usize| {
            psi_inner(
                w,
                &stars[i],
                &basis[i].colors,
                &basis[j].diagram,
                &basis[j].colors,
                &perms,
            )
        };
        let gram = if w.reversal_invariant() {
            SymMatrix::from_fn_mirror(basis.len(), entry)
        } else {
            SymMatrix::from_fn_checked(basis.len(), entry).map_err(|_| GnsError::NotPositive)?
        };
        if !ldlt_psd_certificate(&gram).is_psd() {
            return Err(GnsError::NotPositive);
        }
        let quotient = quotient_basis(&gram).expect("certified PSD");
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.diagram.clone(), b.colors.clone()), i))
            .collect();
        levels.push(FockLevel {
            basis,
            gram,
            quotient,
            index,
        });
    }

    // Cross inner products <a*(e_c) psi_k[i], psi_{k+1}[j]> drive both the
    // creation matrices and (by metric adjointness) annihilation.
    let hook = Diagram::hook();
    let mut creations = Vec::with_capacity(level_cap);
    let mut annihilations = Vec::with_capacity(level_cap);
    for k in 0..level_cap {
        let (lo, up) = (&levels[k], &levels[k + 1]);
        let perms = Permutation::all(k + 1);
        let mut per_color_c = Vec::with_capacity(dim);
        let mut per_color_a = Vec::with_capacity(dim);
        for c in 0..dim as u8 {
            let lifted: Vec<(Diagram, Vec<u8>)> = lo
                .basis
                .iter()
                .map(|b| {
                    let mut word = Vec::with_capacity(b.colors.len() + 1);
                    word.push(c);
                    word.extend_from_slice(&b.colors);
                    (hook.multiply(&b.diagram).involution(), word)
                })
                .collect();
            let cross = Mat::from_fn(lo.dim(), up.dim(), |i, j| {
                psi_inner(
                    w,
                    &lifted[i].0,
                    &lifted[i].1,
                    &up.basis[j].diagram,
                    &up.basis[j].colors,
                    &perms,
                )
            });
            // C[t][l] = <u_t, a* u_l> / d_t = (cols_lo^T cross cols_up)^T scaled.
            let mid = cross.mul(&up.quotient.cols); // dim_lo x r_up
            let raw = lo.quotient.cols.transpose().mul(&mid); // r_lo x r_up
            let c_mat = Mat::from_fn(up.rank(), lo.rank(), |t, l| {
                raw.get(l, t) / &up.quotient.norms2[t]
            });
            let a_mat = lo.quotient.metric_adjoint(&up.quotient, &c_mat);
            per_color_c.push(c_mat);
            per_color_a.push(a_mat);
        }
        creations.push(per_color_c);
        annihilations.push(per_color_a);
    }

    Ok(FockModel {
        weight_name: weight_name.to_string(),
        dim,
        level_cap,
        len_cap,
        levels,
        creations,
        annihilations,
    })
}

impl FockModel {
    /// Creation matrix for basis color `c`, level -> level+1, quotient
    /// coordinates (the truncation compression of a*(e_c)).
    pub fn creation_matrix(&self, level: usize, c: usize) -> &Mat {
        &self.creations[level][c]
    }

    /// Annihilation matrix for basis color `c`, level+1 -> level: the metric
    /// adjoint of the corresponding creation matrix.
    pub fn annihilation_matrix(&self, level: usize, c: usize) -> &Mat {
        &self.annihilations[level][c]
    }

    /// Creation matrix for an arbitrary one-particle vector (linear in f).
    pub fn creation_matrix_for(&self, level: usize, f: &LabelVec) -> Mat {
        assert_eq!(f.dim(), self.dim);
        let mut acc = Mat::zeros(self.levels[level + 1].rank(), self.levels[level].rank());
        for (c, coef) in f.0.iter().enumerate() {
            if !coef.is_zero() {
                acc = acc.add(&self.creations[level][c].scale(coef));
            }
        }
        acc
    }

    /// Vacuum vector in level-0 quotient coordinates.
    pub fn vacuum_coords(&self) -> Vec<Scalar> {
        let r = self.levels[0].rank();
        let mut v = vec![Scalar::zero(); r];
        if r > 0 {
            v[0] = Scalar::one();
        }
        v
    }

    fn monomial_string(pattern: &[(OpKind, usize)]) -> String {
        pattern
            .iter()
            .map(|(k, c)| match k {
                OpKind::Create => format!("c:e{}", c + 1),
                OpKind::Annihilate => format!("a:e{}", c + 1),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Vacuum expectation of a creation/annihilation monomial evaluated
    /// through the quotient matrices (rightmost operator first). Exact for
    /// monomials within the length cap whose level walk stays within the
    /// level cap; otherwise an explicit cap-overflow error naming the
    /// monomial.
    pub fn vacuum_expectation(&self, pattern: &[(OpKind, usize)]) -> Result<Scalar, GnsError> {
        let overflow = || GnsError::CapOverflow {
            monomial: Self::monomial_string(pattern),
            level_cap: self.level_cap,
            len_cap: self.len_cap,
        };
        if pattern.len() > self.len_cap {
            return Err(overflow());
        }
        let mut level = 0usize;
        let mut coords = self.vacuum_coords();
        for &(kind, color) in pattern.iter().rev() {
            assert!(color < self.dim, "color out of range");
            match kind {
                OpKind::Create => {
                    if level + 1 > self.level_cap {
                        return Err(overflow());
                    }
                    coords = self.creations[level][color].mul_vec(&coords);
                    level += 1;
                }
                OpKind::Annihilate => {
                    if level == 0 {
                        // annihilating the vacuum kills the state
                        return Ok(Scalar::zero());
                    }
                    coords = self.annihilations[level - 1][color].mul_vec(&coords);
                    level -= 1;
                }
            }
        }
        if level != 0 {
            return Ok(Scalar::zero());
        }
        Ok(coords.first().cloned().unwrap_or_else(Scalar::zero))
    }

    /// Palette size used by [`pattern_of`] for this model's diagrams.
    pub fn palette(&self) -> usize {
        self.len_cap / 2
    }
}

/// Second quantization of a one-particle contraction T at the Hilbert-space
/// level: per-level quotient matrices acting on color words multilinearly
/// and leaving the diagram part untouched. Rejects non-contractions via an
/// exact PSD check of I - T^T T.
pub fn second_quantize(model: &FockModel, t: &Mat) -> Result<Vec<Mat>, GnsError> {
    let d = model.dim;
    assert!(
        t.rows() == d && t.cols() == d,
        "one-particle operator must be {d}x{d}"
    );
    let gap = SymMatrix::from_fn_checked(d, |i, j| {
        let mut acc = if i == j {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        for k in 0..d {
            acc -= &(t.get(k, i) * t.get(k, j));
        }
        acc
    })
    .expect("I - T^T T is symmetric");
    if !ldlt_psd_certificate(&gap).is_psd() {
        return Err(GnsError::NotAContraction);
    }

    let mut out = Vec::with_capacity(model.levels.len());
    for level in &model.levels {
        let b = level.dim();
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(level.rank());
        for l in 0..level.rank() {
            let mut image = vec![Scalar::zero(); b];
            for (i, bv) in level.basis.iter().enumerate() {
                let coef = level.quotient.cols.get(i, l);
                if coef.is_zero() {
                    continue;
                }
                expand_word(
                    t,
                    &bv.colors,
                    0,
                    Scalar::one(),
                    &mut Vec::new(),
                    &mut |word, factor| {
                        let target = level
                            .position(&bv.diagram, word)
                            .expect("same diagram, same level");
                        image[target] += &(coef * factor);
                    },
                );
            }
            columns.push(level.quotient.coords(&image));
        }
        out.push(Mat::from_fn(level.rank(), level.rank(), |r, c| {
            columns[c][r].clone()
        }));
    }
    Ok(out)
}

fn expand_word(
    t: &Mat,
    word: &[u8],
    pos: usize,
    factor: Scalar,
    acc: &mut Vec<u8>,
    emit: &mut impl FnMut(&[u8], &Scalar),
) {
    if pos == word.len() {
        emit(acc, &factor);
        return;
    }
    let from = word[pos] as usize;
    for to in 0..t.rows() {
        let c = t.get(to, from);
        if c.is_zero() {
            continue;
        }
        acc.push(to as u8);
        expand_word(t, word, pos + 1, &factor * c, acc, emit);
        acc.pop();
    }
}

/// Outcome of the level-wise creation/annihilation bound checks.
#[derive(Clone, Debug)]
pub struct LevelBound {
    pub level: usize,
    pub op: &'static str,
    /// Largest ratio ||a(f) psi||^2 / (bound ||f||^2 ||psi||^2) observed.
    pub max_ratio2: Option<Scalar>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub per_level: Vec<LevelBound>,
    /// Field-product bound 2^n (k+1)..(k+n) for n = 1, 2 on basis vectors.
    pub product_bounds_hold: bool,
    /// Whether the multiplicativity precondition (which certifies the hook
    /// isometry behind the level bounds) held on the exhaustive check.
    pub multiplicative_precondition: bool,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.per_level.iter().all(|b| b.holds) && self.product_bounds_hold
    }
}

/// Verifies the level-wise norm bounds on creation and annihilation:
/// ||a*(f) psi_k||^2 <= (k+1) ||f||^2 ||psi_k||^2 and
/// ||a(f) psi_k||^2 <= k ||f||^2 ||psi_k||^2,
/// exactly in the quotient metric, on every basis vector and on seeded
/// random vectors per level; norms are true (untruncated) values computed
/// through covariance pairing sums. Also checks the product bound
/// ||w(f1)..w(fn) psi_k||^2 <= 2^n (k+1)..(k+n) prod ||fi||^2 ||psi_k||^2
/// for n <= 2 on basis vectors.
pub fn creation_bounds(
    w: &impl PairWeight,
    model: &FockModel,
    fields: &[LabelVec],
    n_random: usize,
    seed: u64,
) -> BoundsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palette = model.palette();
    let dim = model.dim;
    let mut per_level = Vec::new();
    let mut product_ok = true;
    let multiplicative_precondition =
        crate::weights::is_multiplicative_upto(w, (2 * model.len_cap).min(8) as u32).holds();

    for (k, level) in model.levels.iter().enumerate() {
        for f in fields {
            let f2 = f.norm2();
            let fpad = f.pad_to(dim + palette);
            let patterns: Vec<CAPattern> = level
                .basis
                .iter()
                .map(|bv| pattern_of(&bv.diagram, &bv.colors, dim, palette))
                .collect();
            for (op, bound_factor) in [(OpKind::Create, k + 1), (OpKind::Annihilate, k)] {
                let op_name = match op {
                    OpKind::Create => "create",
                    OpKind::Annihilate => "annihilate",
                };
                // pairwise true inner products of op(f) applied to basis vectors
                let applied: Vec<CAPattern> = patterns
                    .iter()
                    .map(|p| CAPattern(vec![(op, fpad.clone())]).concat(p))
                    .collect();
                let bound = Scalar::from_int(bound_factor as i64) * &f2;
                let mut max_ratio2: Option<Scalar> = None;
                let mut holds = true;
                let mut vectors: Vec<Vec<Scalar>> = Vec::new();
                for i in 0..level.dim() {
                    let mut e = vec![Scalar::zero(); level.dim()];
                    e[i] = Scalar::one();
                    vectors.push(e);
                }
                let mut cross: Option<Mat> = None;
                if n_random > 0 && level.dim() > 0 {
                    cross = Some(Mat::from_fn(level.dim(), level.dim(), |i, j| {
                        fock_moment(w, &applied[i].adjoint().concat(&applied[j]))
                    }));
                    for _ in 0..n_random {
                        let v: Vec<Scalar> = (0..level.dim())
                            .map(|_| Scalar::from_int(rng.gen_range(-2i64..=2)))
                            .collect();
                        vectors.push(v);
                    }
                }
                for v in &vectors {
                    let psi2 = level.gram.quadratic_form(v);
                    let image2 = match &cross {
                        Some(m) => {
                            let mut acc = Scalar::zero();
                            for i in 0..level.dim() {
                                if v[i].is_zero() {
                                    continue;
                                }
                                for j in 0..level.dim() {
                                    if !v[j].is_zero() {
                                        acc += &(&(&v[i] * &v[j]) * m.get(i, j));
                                    }
                                }
                            }
                            acc
                        }
                        None => {
                            // basis vector: single diagonal pattern moment
                            let i = v.iter().position(|x| !x.is_zero()).unwrap_or(0);
                            if v.iter().all(Scalar::is_zero) {
                                Scalar::zero()
                            } else {
                                fock_moment(w, &applied[i].adjoint().concat(&applied[i]))
                            }
                        }
                    };
                    let rhs = &bound * &psi2;
                    if psi2.is_zero() {
                        // null vectors must stay null
                        if !image2.is_zero() {
                            holds = false;
                        }
                        continue;
                    }
                    if image2 > rhs {
                        holds = false;
                    }
                    if !rhs.is_zero() {
                        let ratio = &image2 / &rhs;
                        if max_ratio2.as_ref().is_none_or(|m| ratio > *m) {
                            max_ratio2 = Some(ratio);
                        }
                    }
                }
                per_level.push(LevelBound {
                    level: k,
                    op: op_name,
                    max_ratio2,
                    holds,
                });
            }

            // field product bound on basis vectors, n = 1 and 2
            for n_fields in 1..=2usize {
                let bound2 = Scalar::from_int(1 << n_fields)
                    * (1..=n_fields)
                        .map(|i| Scalar::from_int((k + i) as i64))
                        .fold(Scalar::one(), |a, b| a * b)
                    * f2.pow(n_fields as u32);
                for (i, base) in patterns.iter().enumerate() {
                    let psi2 = level.gram.get(i, i).clone();
                    // omega(f)^n = sum over 2^n kind choices
                    let mut total = Scalar::zero();
                    let kinds = [OpKind::Create, OpKind::Annihilate];
                    let combos: Vec<Vec<OpKind>> = (0..(1usize << n_fields))
                        .map(|mask| (0..n_fields).map(|b| kinds[(mask >> b) & 1]).collect())
                        .collect();
                    for left in &combos {
                        let lp = CAPattern(left.iter().map(|&kk| (kk, fpad.clone())).collect())
                            .concat(base);
                        for right in &combos {
                            let rp =
                                CAPattern(right.iter().map(|&kk| (kk, fpad.clone())).collect())
                                    .concat(base);
                            total += &fock_moment(w, &lp.adjoint().concat(&rp));
                        }
                    }
                    if total > &bound2 * &psi2 {
                        product_ok = false;
                    }
                }
            }
        }
    }
    BoundsReport {
        per_level,
        product_bounds_hold: product_ok,
        multiplicative_precondition,
    }
}

/// Spectral norm estimate of the field operator omega(f) = a(f) + a*(f) on
/// the truncated model, via the metric-symmetrized block matrix.
pub fn field_norm(model: &FockModel, f: &LabelVec, tol: f64) -> f64 {
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for level in &model.levels {
            v.push(acc);
            acc += level.rank();
        }
        v.push(acc);
        v
    };
    let total = *offsets.last().unwrap();
    let mut s = vec![vec![0.0f64; total]; total];
    for k in 0..model.level_cap {
        let c = model.creation_matrix_for(k, f);
        let d_lo: Vec<f64> = model.levels[k]
            .quotient
            .norms2
            .iter()
            .map(|x| x.to_f64().sqrt())
            .collect();
        let d_up: Vec<f64> = model.levels[k + 1]
            .quotient
            .norms2
            .iter()
            .map(|x| x.to_f64().sqrt())
            .collect();
        for t in 0..model.levels[k + 1].rank() {
            for l in 0..model.levels[k].rank() {
                let v = c.get(t, l).to_f64() * d_up[t] / d_lo[l];
                s[offsets[k + 1] + t][offsets[k] + l] = v;
                s[offsets[k] + l][offsets[k + 1] + t] = v;
            }
        }
    }
    jacobi_eigs_f64(s, tol)
        .iter()
        .fold(0.0f64, |acc, &e| acc.max(e.abs()))
}
