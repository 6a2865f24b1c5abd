use crate::kernel::Scalar;

use super::{eta, LabelAssignment, WickMonomial};

/// Formal linear combination of Wick/moment monomials with exact
/// coefficients; terms with identical index data are merged and zero
/// coefficients dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WickExpression {
    pub n_points: u32,
    terms: Vec<(WickMonomial, Scalar)>,
}

impl WickExpression {
    pub fn zero(n_points: u32) -> Self {
        WickExpression {
            n_points,
            terms: Vec::new(),
        }
    }

    pub fn single(monomial: WickMonomial) -> Self {
        let n = monomial.n_points();
        WickExpression {
            n_points: n,
            terms: vec![(monomial, Scalar::one())],
        }
    }

    pub fn terms(&self) -> &[(WickMonomial, Scalar)] {
        &self.terms
    }

    pub fn coefficient(&self, monomial: &WickMonomial) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m == monomial)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, monomial: WickMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(m, _)| m.cmp(&monomial)) {
            Ok(i) => {
                self.terms[i].1 += &coeff;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (monomial, coeff)),
        }
    }

    pub fn add_scaled(&mut self, other: &WickExpression, scale: &Scalar) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }
}

/// Even-size subsets of the free points together with all pairings of each
/// subset; the common skeleton of both transform directions.
fn sub_pairings(free: &[u32]) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    let n = free.len();
    for mask in 0u32..(1 << n) {
        let subset: Vec<u32> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| free[i])
            .collect();
        if subset.is_empty() || subset.len() % 2 != 0 {
            continue;
        }
        collect_matchings(&subset, &mut Vec::new(), &mut out);
    }
    out
}

fn collect_matchings(points: &[u32], acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    if points.is_empty() {
        let mut m = acc.clone();
        m.sort_unstable();
        out.push(m);
        return;
    }
    let first = points[0];
    for i in 1..points.len() {
        let rest: Vec<u32> = points[1..i]
            .iter()
            .chain(&points[i + 1..])
            .copied()
            .collect();
        acc.push((first, points[i]));
        collect_matchings(&rest, acc, out);
        acc.pop();
    }
}

fn extended(base: &WickMonomial, extra: &[(u32, u32)]) -> WickMonomial {
    let mut pairs = base.pairs().to_vec();
    pairs.extend_from_slice(extra);
    let removed: Vec<u32> = extra.iter().flat_map(|&(l, r)| [l, r]).collect();
    let labels: LabelAssignment = base.labels().without_points(&removed);
    WickMonomial::new(base.n_points(), pairs, labels).expect("extension stays valid")
}

/// Expansion of the Wick product Psi(V, f) in moment monomials:
/// Psi = M(V,f) + sum over nonempty sub-pairings V' of the free points of
/// (-1)^{|V'|} eta_f(V') M(V u V', f restricted).
pub fn wick_from_moments(monomial: &WickMonomial) -> WickExpression {
    let mut expr = WickExpression::zero(monomial.n_points());
    expr.add_term(monomial.clone(), Scalar::one());
    for sub in sub_pairings(monomial.labels().points()) {
        let eta_value = eta(monomial.labels(), &sub).expect("sub-pairing of free points");
        if eta_value.is_zero() {
            continue;
        }
        let sign = if sub.len() % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        expr.add_term(extended(monomial, &sub), sign * eta_value);
    }
    expr
}

/// Expansion of the moment monomial M(V, f) in Wick products: the defining
/// recursion read directly, M = sum over all sub-pairings V' (including the
/// empty one) of eta_f(V') Psi(V u V', f restricted).
pub fn moments_from_wick(monomial: &WickMonomial) -> WickExpression {
    let mut expr = WickExpression::zero(monomial.n_points());
    expr.add_term(monomial.clone(), Scalar::one());
    for sub in sub_pairings(monomial.labels().points()) {
        let eta_value = eta(monomial.labels(), &sub).expect("sub-pairing of free points");
        if eta_value.is_zero() {
            continue;
        }
        expr.add_term(extended(monomial, &sub), eta_value);
    }
    expr
}

/// Test hook: all (V, f) monomials on {1..n} over labels drawn from the
/// orthonormal basis of the given dimension, with at most `max_pairs` pairs.
pub fn enumerate_monomials(n_points: u32, dim: usize, max_pairs: usize) -> Vec<WickMonomial> {
    use super::LabelVec;
    let mut out = Vec::new();
    let points: Vec<u32> = (1..=n_points).collect();
    // choose paired subset by bitmask, then matchings, then label words
    for mask in 0u32..(1 << n_points) {
        let paired: Vec<u32> = points
            .iter()
            .copied()
            .filter(|&p| mask & (1 << (p - 1)) != 0)
            .collect();
        if paired.len() % 2 != 0 || paired.len() / 2 > max_pairs {
            continue;
        }
        let free: Vec<u32> = points
            .iter()
            .copied()
            .filter(|p| !paired.contains(p))
            .collect();
        let mut matchings = Vec::new();
        if paired.is_empty() {
            matchings.push(Vec::new());
        } else {
            collect_matchings(&paired, &mut Vec::new(), &mut matchings);
        }
        for matching in matchings {
            let mut words = vec![Vec::new()];
            for _ in 0..free.len() {
                let mut next = Vec::new();
                for word in &words {
                    for c in 0..dim {
                        let mut w: Vec<usize> = word.clone();
                        w.push(c);
                        next.push(w);
                    }
                }
                words = next;
            }
            for word in words {
                let labels = LabelAssignment::new(
                    free.clone(),
                    word.iter().map(|&c| LabelVec::basis(dim, c)).collect(),
                )
                .unwrap();
                out.push(WickMonomial::new(n_points, matching.clone(), labels).unwrap());
            }
        }
    }
    out
}

/// Independent brute-force check value used by the transform tests: the
/// number of sub-pairings of a k-element free set.
#[allow(dead_code)]
fn sub_pairing_count(k: usize) -> usize {
    sub_pairings(&(1..=k as u32).collect::<Vec<_>>()).len()
}
