//! The *-semigroup of broken pair partitions: diagrams with ranked left and
//! right legs, their product (joining legs level by level), the mirror
//! involution, the embracing-pair map, the leg action of the symmetric
//! group, bounded enumeration, and the standard-form factorization of pair
//! partitions into hook/cohook/permutation generator words.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partitions::PairPartition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("ground point {0} out of range 1..={1}")]
    PointOutOfRange(u32, u32),
    #[error("ground point {0} used more than once")]
    DuplicatePoint(u32),
    #[error("ground point {0} is neither paired nor a leg")]
    UncoveredPoint(u32),
    #[error("leg count mismatch: permutation of {perm} against {legs} left legs")]
    LegCountMismatch { perm: usize, legs: usize },
    #[error("diagram has {0} right legs; the leg action requires none")]
    RightLegsPresent(usize),
    #[error("generator word is malformed: {0}")]
    BadWord(String),
    #[error("malformed diagram literal {input:?}: {reason}")]
    BadLiteral { input: String, reason: String },
}

/// A broken pair partition in canonical form: ground set {1..m} split into
/// paired points, left-leg points and right-leg points. Leg vectors list
/// ground positions in rank order (index 0 = rank 1, the topmost level).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    m: u32,
    pairs: Vec<(u32, u32)>,
    left_legs: Vec<u32>,
    right_legs: Vec<u32>,
}

impl Diagram {
    pub fn new(
        m: u32,
        mut pairs: Vec<(u32, u32)>,
        left_legs: Vec<u32>,
        right_legs: Vec<u32>,
    ) -> Result<Self, SemigroupError> {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen = vec![false; m as usize + 1];
        let mut mark = |x: u32| -> Result<(), SemigroupError> {
            if x == 0 || x > m {
                return Err(SemigroupError::PointOutOfRange(x, m));
            }
            if seen[x as usize] {
                return Err(SemigroupError::DuplicatePoint(x));
            }
            seen[x as usize] = true;
            Ok(())
        };
        for &(l, r) in &pairs {
            mark(l)?;
            mark(r)?;
            if l == r {
                return Err(SemigroupError::DuplicatePoint(l));
            }
        }
        for &p in left_legs.iter().chain(&right_legs) {
            mark(p)?;
        }
        for x in 1..=m {
            if !seen[x as usize] {
                return Err(SemigroupError::UncoveredPoint(x));
            }
        }
        Ok(Diagram {
            m,
            pairs,
            left_legs,
            right_legs,
        })
    }

    /// The empty diagram (unit of the semigroup).
    pub fn empty() -> Self {
        Diagram {
            m: 0,
            pairs: Vec::new(),
            left_legs: Vec::new(),
            right_legs: Vec::new(),
        }
    }

    /// The left hook d0: one point carrying a single left leg.
    pub fn hook() -> Self {
        Diagram {
            m: 1,
            pairs: Vec::new(),
            left_legs: vec![1],
            right_legs: Vec::new(),
        }
    }

    /// d0*: one point carrying a single right leg.
    pub fn cohook() -> Self {
        Diagram {
            m: 1,
            pairs: Vec::new(),
            left_legs: Vec::new(),
            right_legs: vec![1],
        }
    }

    /// The single-pair partition p = d0* . d0.
    pub fn single_pair() -> Self {
        Diagram {
            m: 2,
            pairs: vec![(1, 2)],
            left_legs: Vec::new(),
            right_legs: Vec::new(),
        }
    }

    pub fn from_pair_partition(v: &PairPartition) -> Self {
        Diagram {
            m: v.n_points(),
            pairs: v.pairs().to_vec(),
            left_legs: Vec::new(),
            right_legs: Vec::new(),
        }
    }

    /// The underlying pair partition when the diagram has no legs.
    pub fn as_pair_partition(&self) -> Option<PairPartition> {
        if self.left_legs.is_empty() && self.right_legs.is_empty() {
            Some(PairPartition::new(self.m, self.pairs.clone()).expect("diagram invariant"))
        } else {
            None
        }
    }

    pub fn ground_size(&self) -> u32 {
        self.m
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn left_legs(&self) -> &[u32] {
        &self.left_legs
    }

    pub fn right_legs(&self) -> &[u32] {
        &self.right_legs
    }

    pub fn n_left(&self) -> usize {
        self.left_legs.len()
    }

    pub fn n_right(&self) -> usize {
        self.right_legs.len()
    }

    /// Product: self's ground precedes rhs's; right leg of rank i joins
    /// rhs's left leg of rank i for i up to the smaller leg count; surviving
    /// legs are re-ranked to initial segments (self's left legs keep their
    /// ranks, rhs's surviving left legs follow; rhs's right legs keep
    /// theirs, self's surviving right legs follow).
    pub fn multiply(&self, rhs: &Diagram) -> Diagram {
        let shift = self.m;
        let k = self.right_legs.len().min(rhs.left_legs.len());
        let mut pairs = self.pairs.clone();
        pairs.extend(rhs.pairs.iter().map(|&(a, b)| (a + shift, b + shift)));
        for i in 0..k {
            pairs.push((self.right_legs[i], rhs.left_legs[i] + shift));
        }
        pairs.sort_unstable();
        let mut left_legs = self.left_legs.clone();
        left_legs.extend(rhs.left_legs[k..].iter().map(|&p| p + shift));
        let mut right_legs: Vec<u32> = rhs.right_legs.iter().map(|&p| p + shift).collect();
        right_legs.extend_from_slice(&self.right_legs[k..]);
        Diagram {
            m: self.m + rhs.m,
            pairs,
            left_legs,
            right_legs,
        }
    }

    /// Mirror reflection: ground order reversed, pairs reversed, left and
    /// right leg maps swapped (ranks preserved).
    pub fn involution(&self) -> Diagram {
        let m = self.m;
        let flip = |x: u32| m + 1 - x;
        let mut pairs: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (flip(b), flip(a)))
            .collect();
        pairs.sort_unstable();
        Diagram {
            m,
            pairs,
            left_legs: self.right_legs.iter().map(|&p| flip(p)).collect(),
            right_legs: self.left_legs.iter().map(|&p| flip(p)).collect(),
        }
    }

    /// Adds one pair embracing the whole ground set (new first and last
    /// points paired); legs keep their relative ranks.
    pub fn underline(&self) -> Diagram {
        let mut pairs: Vec<(u32, u32)> = vec![(1, self.m + 2)];
        pairs.extend(self.pairs.iter().map(|&(a, b)| (a + 1, b + 1)));
        pairs.sort_unstable();
        Diagram {
            m: self.m + 2,
            pairs,
            left_legs: self.left_legs.iter().map(|&p| p + 1).collect(),
            right_legs: self.right_legs.iter().map(|&p| p + 1).collect(),
        }
    }

    /// Action of a permutation on left-leg ranks: the leg of rank r gets
    /// rank pi(r); ground set untouched. Requires a diagram with no right
    /// legs and a permutation of exactly the left-leg count.
    pub fn permute_legs(&self, pi: &Permutation) -> Result<Diagram, SemigroupError> {
        if !self.right_legs.is_empty() {
            return Err(SemigroupError::RightLegsPresent(self.right_legs.len()));
        }
        if pi.size() != self.left_legs.len() {
            return Err(SemigroupError::LegCountMismatch {
                perm: pi.size(),
                legs: self.left_legs.len(),
            });
        }
        let mut left_legs = vec![0u32; self.left_legs.len()];
        for (idx, &pos) in self.left_legs.iter().enumerate() {
            let old_rank = idx as u32 + 1;
            left_legs[(pi.apply(old_rank) - 1) as usize] = pos;
        }
        Ok(Diagram {
            m: self.m,
            pairs: self.pairs.clone(),
            left_legs,
            right_legs: Vec::new(),
        })
    }

    /// All canonical diagrams with exactly `n_left` left legs, `n_right`
    /// right legs and at most `max_pairs` pairs, in deterministic order:
    /// ascending pair count, then lexicographic in (pair positions, matching,
    /// left-leg positions per rank, right-leg positions per rank).
    pub fn enumerate(n_left: usize, n_right: usize, max_pairs: usize) -> Vec<Diagram> {
        let mut out = Vec::new();
        for p in 0..=max_pairs {
            let m = (2 * p + n_left + n_right) as u32;
            let points: Vec<u32> = (1..=m).collect();
            for pair_points in combinations(&points, 2 * p) {
                let matchings = enumerate_matchings(&pair_points);
                let rest: Vec<u32> = points
                    .iter()
                    .copied()
                    .filter(|x| !pair_points.contains(x))
                    .collect();
                for matching in &matchings {
                    for left_set in combinations(&rest, n_left) {
                        let right_set: Vec<u32> = rest
                            .iter()
                            .copied()
                            .filter(|x| !left_set.contains(x))
                            .collect();
                        for left_ranked in permutations(&left_set) {
                            for right_ranked in permutations(&right_set) {
                                out.push(Diagram {
                                    m,
                                    pairs: matching.clone(),
                                    left_legs: left_ranked.clone(),
                                    right_legs: right_ranked,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k > items.len() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        if items.len() - i < k {
            break;
        }
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<u32> = items
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn enumerate_matchings(points: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = points[0];
    for i in 1..points.len() {
        let partner = points[i];
        let rest: Vec<u32> = points[1..i]
            .iter()
            .chain(&points[i + 1..])
            .copied()
            .collect();
        for mut tail in enumerate_matchings(&rest) {
            tail.insert(0, (first, partner));
            tail.sort_unstable();
            out.push(tail);
        }
    }
    out
}

/// One token of a generator word.
#[derive(Clone, PartialEq, Eq)]
pub enum Token {
    /// The left hook d0: opens a leg of rank 1.
    Hook,
    /// d0*: closes the leg of rank 1.
    Cohook,
    /// Re-ranking of the currently open legs.
    Perm(Permutation),
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Hook => write!(f, "HOOK"),
            Token::Cohook => write!(f, "COHOOK"),
            Token::Perm(p) => write!(f, "PERM{p}"),
        }
    }
}

/// A word in the generators, evaluated right to left (the last token acts
/// first), so that operator products and semigroup products read the same
/// way.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorWord(pub Vec<Token>);

impl GeneratorWord {
    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn hook_count(&self) -> usize {
        self.0.iter().filter(|t| matches!(t, Token::Hook)).count()
    }

    pub fn cohook_count(&self) -> usize {
        self.0.iter().filter(|t| matches!(t, Token::Cohook)).count()
    }

    /// Evaluates the word on the empty diagram, rightmost token first:
    /// Hook and Cohook multiply by d0 resp. d0* on the left, Perm acts on
    /// leg ranks.
    pub fn evaluate(&self) -> Result<Diagram, SemigroupError> {
        let mut state = Diagram::empty();
        for token in self.0.iter().rev() {
            state = match token {
                Token::Hook => Diagram::hook().multiply(&state),
                Token::Cohook => {
                    if state.n_left() == 0 {
                        return Err(SemigroupError::BadWord(
                            "cohook applied to a diagram with no open legs".into(),
                        ));
                    }
                    Diagram::cohook().multiply(&state)
                }
                Token::Perm(pi) => state.permute_legs(pi)?,
            };
        }
        Ok(state)
    }
}

/// Standard form of a pair partition: a generator word whose evaluation
/// reproduces it exactly, with hook count = cohook count = |V|.
///
/// Scanning ground points right to left, a right endpoint opens a leg
/// (Hook); a left endpoint closes its partner's leg (Cohook), preceded --
/// in operator order -- by the minimal cycle bringing that leg to rank 1
/// when it is not already on top.
pub fn standard_form(v: &PairPartition) -> GeneratorWord {
    let n = v.n_points();
    let mut partner = vec![0u32; n as usize + 1];
    for &(l, r) in v.pairs() {
        partner[l as usize] = r;
        partner[r as usize] = l;
    }
    // open_legs[0] is the rank-1 leg, identified by its right endpoint.
    let mut open_legs: Vec<u32> = Vec::new();
    let mut tokens_per_point: Vec<Vec<Token>> = vec![Vec::new(); n as usize + 1];
    for i in (1..=n).rev() {
        let j = partner[i as usize];
        if j > i {
            // i is a left endpoint: close the leg opened at j.
            let rank = open_legs.iter().position(|&x| x == j).expect("leg is open") + 1;
            let mut toks = vec![Token::Cohook];
            if rank != 1 {
                let pi = Permutation::cycle_to_front(open_legs.len(), rank as u32);
                toks.push(Token::Perm(pi));
                let leg = open_legs.remove(rank - 1);
                open_legs.insert(0, leg);
            }
            open_legs.remove(0);
            tokens_per_point[i as usize] = toks;
        } else {
            // i is a right endpoint: open a fresh rank-1 leg.
            open_legs.insert(0, i);
            tokens_per_point[i as usize] = vec![Token::Hook];
        }
    }
    let mut word = Vec::new();
    for i in 1..=n {
        word.append(&mut tokens_per_point[i as usize]);
    }
    GeneratorWord(word)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BP{{{}; pairs=", self.m)?;
        for &(l, r) in &self.pairs {
            write!(f, "({l},{r})")?;
        }
        let fmt_list = |legs: &[u32]| {
            legs.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "; L=[{}]; R=[{}]}}",
            fmt_list(&self.left_legs),
            fmt_list(&self.right_legs)
        )
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Diagram {
    type Err = SemigroupError;

    /// Parses the literal `BP{m; pairs=(a,b)...; L=[p1,p2,...]; R=[q1,...]}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| SemigroupError::BadLiteral {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = compact
            .strip_prefix("BP{")
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| bad("expected BP{...}"))?;
        let mut parts = inner.split(';');
        let m: u32 = parts
            .next()
            .ok_or_else(|| bad("missing ground size"))?
            .parse()
            .map_err(|_| bad("bad ground size"))?;
        let pairs_part = parts
            .next()
            .and_then(|t| t.strip_prefix("pairs="))
            .ok_or_else(|| bad("missing pairs="))?;
        let mut pairs = Vec::new();
        let mut rest = pairs_part;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '(' in pairs"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')' in pairs"))?;
            let (l, r) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad("pair must be l,r"))?;
            pairs.push((
                l.parse().map_err(|_| bad("bad pair endpoint"))?,
                r.parse().map_err(|_| bad("bad pair endpoint"))?,
            ));
            rest = &body[close + 1..];
        }
        let parse_list = |part: Option<&str>, prefix: &str| -> Result<Vec<u32>, SemigroupError> {
            let body = part
                .and_then(|t| t.strip_prefix(prefix))
                .and_then(|t| t.strip_prefix('['))
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| bad(&format!("missing {prefix}[...]")))?;
            if body.is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .map(|tok| tok.parse().map_err(|_| bad("bad leg position")))
                .collect()
        };
        let left = parse_list(parts.next(), "L=")?;
        let right = parse_list(parts.next(), "R=")?;
        if parts.next().is_some() {
            return Err(bad("trailing content"));
        }
        Diagram::new(m, pairs, left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn literal_roundtrip_and_d0() {
        let d0 = Diagram::hook();
        assert_eq!(d0.to_string(), "BP{1; pairs=; L=[1]; R=[]}");
        assert_eq!(d("BP{1; pairs=; L=[1]; R=[]}"), d0);
        let p = Diagram::single_pair();
        assert_eq!(p, d("BP{2; pairs=(1,2); L=[]; R=[]}"));
        for diagram in Diagram::enumerate(2, 1, 2) {
            let again: Diagram = diagram.to_string().parse().unwrap();
            assert_eq!(again, diagram);
        }
    }

    #[test]
    fn literal_rejects_malformed() {
        assert!("BP{2; pairs=(1,2); L=[]; R=[]; X=[]}"
            .parse::<Diagram>()
            .is_err());
        assert!("BP{2; pairs=(1,1); L=[]; R=[]}".parse::<Diagram>().is_err());
        assert!("BP{3; pairs=(1,2); L=[]; R=[]}".parse::<Diagram>().is_err());
        assert!("BP{1; pairs=; L=[1]; R=[1]}".parse::<Diagram>().is_err());
        assert!("BP{1; pairs=; L=[2]; R=[]}".parse::<Diagram>().is_err());
    }

    #[test]
    fn product_examples() {
        // d0* . d0 = p (closing one hook)
        assert_eq!(
            Diagram::cohook().multiply(&Diagram::hook()),
            Diagram::single_pair()
        );
        // d0 . d0: two left legs, ranks (1,2) at positions (1,2)
        let dd = Diagram::hook().multiply(&Diagram::hook());
        assert_eq!(dd, d("BP{2; pairs=; L=[1,2]; R=[]}"));
        // p . p = (1,2)(3,4)
        let p = Diagram::single_pair();
        assert_eq!(p.multiply(&p), d("BP{4; pairs=(1,2)(3,4); L=[]; R=[]}"));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(Diagram::hook().involution(), Diagram::cohook());
        assert_eq!(Diagram::single_pair().involution(), Diagram::single_pair());
        let dd = Diagram::hook().multiply(&Diagram::hook());
        // mirroring swaps leg side and reflects positions, keeping ranks
        assert_eq!(dd.involution(), d("BP{2; pairs=; L=[]; R=[2,1]}"));
        assert_eq!(dd.involution().involution(), dd);
    }

    #[test]
    fn involution_is_antihomomorphic_exhaustive_small() {
        let pool: Vec<Diagram> = Diagram::enumerate(1, 1, 1);
        for a in &pool {
            for b in &pool {
                assert_eq!(
                    a.multiply(b).involution(),
                    b.involution().multiply(&a.involution()),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        let pool: Vec<Diagram> = Diagram::enumerate(1, 1, 1);
        for a in pool.iter().take(4) {
            for b in &pool {
                for c in pool.iter().take(4) {
                    assert_eq!(a.multiply(b).multiply(c), a.multiply(&b.multiply(c)));
                }
            }
        }
    }

    #[test]
    fn underline_examples() {
        assert_eq!(Diagram::empty().underline(), Diagram::single_pair());
        assert_eq!(
            Diagram::single_pair().underline(),
            d("BP{4; pairs=(1,4)(2,3); L=[]; R=[]}")
        );
        assert_eq!(
            Diagram::hook().underline(),
            d("BP{3; pairs=(1,3); L=[2]; R=[]}")
        );
    }

    #[test]
    fn underline_commutes_with_involution() {
        for diagram in Diagram::enumerate(2, 0, 1) {
            assert_eq!(
                diagram.underline().involution(),
                diagram.involution().underline(),
                "{diagram}"
            );
        }
    }

    #[test]
    fn permute_legs_examples() {
        let dd = Diagram::hook().multiply(&Diagram::hook());
        let id = Permutation::identity(2);
        assert_eq!(dd.permute_legs(&id).unwrap(), dd);
        let swap = Permutation::transposition(2, 1, 2);
        assert_eq!(
            dd.permute_legs(&swap).unwrap(),
            d("BP{2; pairs=; L=[2,1]; R=[]}")
        );
        // wrong size rejected
        assert!(dd.permute_legs(&Permutation::identity(3)).is_err());
        // right legs present rejected
        assert!(Diagram::cohook()
            .permute_legs(&Permutation::identity(0))
            .is_err());
    }

    #[test]
    fn permute_legs_is_a_group_action() {
        let pool = Diagram::enumerate(3, 0, 1);
        let perms = Permutation::all(3);
        for diagram in pool.iter().step_by(7) {
            for pi in &perms {
                for sigma in &perms {
                    let lhs = diagram
                        .permute_legs(sigma)
                        .unwrap()
                        .permute_legs(pi)
                        .unwrap();
                    let rhs = diagram.permute_legs(&pi.compose(sigma)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn enumerate_counts_match_formula() {
        fn formula(n_left: usize, n_right: usize, max_pairs: usize) -> usize {
            (0..=max_pairs)
                .map(|p| {
                    let m = 2 * p + n_left + n_right;
                    (1..=m).product::<usize>()
                        / (2usize.pow(p as u32) * (1..=p).product::<usize>().max(1))
                })
                .sum()
        }
        for (nl, nr, mp) in [
            (0, 0, 1),
            (1, 0, 0),
            (1, 0, 1),
            (1, 0, 2),
            (2, 0, 2),
            (1, 1, 1),
            (0, 2, 1),
        ] {
            let ds = Diagram::enumerate(nl, nr, mp);
            assert_eq!(ds.len(), formula(nl, nr, mp), "({nl},{nr},{mp})");
            // deterministic, duplicate-free
            let mut keys: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), ds.len());
        }
        assert_eq!(
            Diagram::enumerate(0, 0, 1),
            vec![Diagram::empty(), Diagram::single_pair()]
        );
        assert_eq!(Diagram::enumerate(1, 0, 0), vec![Diagram::hook()]);
    }

    #[test]
    fn standard_form_examples() {
        use Token::*;
        let w = standard_form(&"(1,2)".parse().unwrap());
        assert_eq!(w.tokens(), &[Cohook, Hook]);
        let w = standard_form(&"(1,4)(2,3)".parse().unwrap());
        assert_eq!(w.tokens(), &[Cohook, Cohook, Hook, Hook]);
        let w = standard_form(&"(1,3)(2,4)".parse().unwrap());
        assert_eq!(w.hook_count(), 2);
        assert_eq!(w.cohook_count(), 2);
        assert!(w.tokens().iter().any(|t| matches!(t, Perm(_))));
        let v: PairPartition = "(1,3)(2,4)".parse().unwrap();
        assert_eq!(w.evaluate().unwrap(), Diagram::from_pair_partition(&v));
    }

    #[test]
    fn standard_form_roundtrip_exhaustive() {
        let mut total = 0;
        for n in [0u32, 2, 4, 6, 8] {
            for v in PairPartition::enumerate(n) {
                let w = standard_form(&v);
                assert_eq!(w.hook_count(), v.n_pairs());
                assert_eq!(w.cohook_count(), v.n_pairs());
                assert_eq!(
                    w.evaluate().unwrap(),
                    Diagram::from_pair_partition(&v),
                    "{v}"
                );
                total += 1;
            }
        }
        assert_eq!(total, 1 + 1 + 3 + 15 + 105);
    }

    #[test]
    fn evaluate_rejects_ill_formed_words() {
        let w = GeneratorWord(vec![Token::Cohook]);
        assert!(w.evaluate().is_err());
        let w = GeneratorWord(vec![Token::Perm(Permutation::identity(2)), Token::Hook]);
        assert!(w.evaluate().is_err());
    }

    #[test]
    fn canonicalization_is_stable_under_reordering_input() {
        let a = Diagram::new(4, vec![(3, 1), (2, 4)], vec![], vec![]).unwrap();
        let b = Diagram::new(4, vec![(2, 4), (1, 3)], vec![], vec![]).unwrap();
        assert_eq!(a, b);
    }
}
