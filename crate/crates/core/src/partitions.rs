//! Pair partitions (perfect matchings) of ordered sets {1..n}: enumeration,
//! crossing and block statistics, the circular shift, the symmetric-group
//! embedding and interval insertion.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("point count {0} is odd")]
    OddPointCount(u32),
    #[error("point {0} used more than once")]
    DuplicatePoint(u32),
    #[error("point {0} out of range 1..={1}")]
    PointOutOfRange(u32, u32),
    #[error("point {0} is not covered by any pair")]
    UncoveredPoint(u32),
    #[error("cannot rotate the empty pair partition")]
    EmptyRotation,
    #[error("permutation embedding does not produce a matching: {0}")]
    NotAMatching(String),
    #[error("gap position {gap} exceeds ground size {n}")]
    InvalidGap { gap: u32, n: u32 },
    #[error("malformed pair-partition literal {input:?}: {reason}")]
    BadLiteral { input: String, reason: String },
}

/// A perfect matching of {1..n_points} into ordered pairs (l, r), l < r,
/// stored sorted by left endpoint (canonical form: equal values are
/// representationally equal).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    n_points: u32,
    pairs: Vec<(u32, u32)>,
}

impl PairPartition {
    pub fn new(n_points: u32, mut pairs: Vec<(u32, u32)>) -> Result<Self, PartitionError> {
        if n_points % 2 != 0 {
            return Err(PartitionError::OddPointCount(n_points));
        }
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen = vec![false; n_points as usize + 1];
        for &(l, r) in &pairs {
            for x in [l, r] {
                if x == 0 || x > n_points {
                    return Err(PartitionError::PointOutOfRange(x, n_points));
                }
                if seen[x as usize] {
                    return Err(PartitionError::DuplicatePoint(x));
                }
                seen[x as usize] = true;
            }
            if l == r {
                return Err(PartitionError::DuplicatePoint(l));
            }
        }
        for x in 1..=n_points {
            if !seen[x as usize] {
                return Err(PartitionError::UncoveredPoint(x));
            }
        }
        Ok(PairPartition { n_points, pairs })
    }

    pub fn empty() -> Self {
        PairPartition {
            n_points: 0,
            pairs: Vec::new(),
        }
    }

    /// The single-pair partition p = (1,2).
    pub fn single_pair() -> Self {
        PairPartition {
            n_points: 2,
            pairs: vec![(1, 2)],
        }
    }

    pub fn n_points(&self) -> u32 {
        self.n_points
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All pair partitions of {1..n_points} in deterministic lexicographic
    /// order ((2n-1)!! of them; empty list for odd input).
    pub fn enumerate(n_points: u32) -> Vec<PairPartition> {
        if n_points % 2 != 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let points: Vec<u32> = (1..=n_points).collect();
        let mut acc = Vec::with_capacity(n_points as usize / 2);
        enumerate_rec(&points, &mut acc, &mut out);
        out
    }

    /// Number of pairs {(a,b),(c,d)} with a < c < b < d.
    pub fn crossings(&self) -> usize {
        let mut count = 0;
        for (i, &(_, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[i + 1..] {
                // pairs are sorted by left endpoint, so a < c always.
                if c < b && b < d {
                    count += 1;
                }
            }
        }
        count
    }

    fn crossing_graph_components(&self) -> Vec<usize> {
        let m = self.pairs.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..m {
            let (_, b) = self.pairs[i];
            for j in (i + 1)..m {
                let (c, d) = self.pairs[j];
                if c < b && b < d {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        (0..m).map(|i| find(&mut parent, i)).collect()
    }

    /// Connected components of the crossing graph; their count is |B(V)|.
    pub fn blocks(&self) -> BlockDecomposition {
        let roots = self.crossing_graph_components();
        let m = self.pairs.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_to_block: Vec<Option<usize>> = vec![None; m];
        for i in 0..m {
            let r = roots[i];
            match root_to_block[r] {
                Some(b) => blocks[b].push(i),
                None => {
                    root_to_block[r] = Some(blocks.len());
                    blocks.push(vec![i]);
                }
            }
        }
        BlockDecomposition { blocks }
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks().blocks.len()
    }

    /// Circular shift: the pair (l, 2r) ending at the last point becomes
    /// (0, l), everything renumbered back to {1..2r}. Preserves crossing and
    /// block counts; 2r applications give the identity.
    pub fn rotate(&self) -> Result<PairPartition, PartitionError> {
        if self.pairs.is_empty() {
            return Err(PartitionError::EmptyRotation);
        }
        let n = self.n_points;
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for &(l, r) in &self.pairs {
            if r == n {
                pairs.push((1, l + 1));
            } else {
                pairs.push((l + 1, r + 1));
            }
        }
        PairPartition::new(n, pairs)
    }

    /// Embedding of permutations: pairs (i, 2n+1 - tau(i)) for i = 1..n where
    /// tau permutes {1..2n}. Rejected when the pair set fails to be a perfect
    /// matching (self-pair or collision).
    pub fn from_permutation(tau: &Permutation) -> Result<PairPartition, PartitionError> {
        let two_n = tau.size() as u32;
        if two_n % 2 != 0 {
            return Err(PartitionError::OddPointCount(two_n));
        }
        let n = two_n / 2;
        let mut pairs = Vec::with_capacity(n as usize);
        for i in 1..=n {
            let partner = two_n + 1 - tau.apply(i);
            if partner == i {
                return Err(PartitionError::NotAMatching(format!(
                    "point {i} paired with itself"
                )));
            }
            pairs.push((i.min(partner), i.max(partner)));
        }
        PairPartition::new(two_n, pairs).map_err(|e| PartitionError::NotAMatching(e.to_string()))
    }

    /// Inserts `inner` as a contiguous interval after position `gap` of this
    /// partition's ground set; ground renumbered to {1..n1+n2}.
    pub fn nest_insert(
        &self,
        inner: &PairPartition,
        gap: u32,
    ) -> Result<PairPartition, PartitionError> {
        if gap > self.n_points {
            return Err(PartitionError::InvalidGap {
                gap,
                n: self.n_points,
            });
        }
        let shift = inner.n_points;
        let mut pairs = Vec::with_capacity(self.pairs.len() + inner.pairs.len());
        for &(l, r) in &self.pairs {
            let map = |x: u32| if x <= gap { x } else { x + shift };
            pairs.push((map(l), map(r)));
        }
        for &(l, r) in &inner.pairs {
            pairs.push((l + gap, r + gap));
        }
        PairPartition::new(self.n_points + inner.n_points, pairs)
    }

    /// Ground-order reversal V*: pair (a,b) becomes (n+1-b, n+1-a).
    pub fn reversal(&self) -> PairPartition {
        let n = self.n_points;
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (n + 1 - b, n + 1 - a))
            .collect();
        PairPartition::new(n, pairs).expect("reversal preserves validity")
    }

    /// Disjoint concatenation: self's ground, then other's shifted.
    pub fn concat(&self, other: &PairPartition) -> PairPartition {
        self.nest_insert(other, self.n_points)
            .expect("gap at end is always valid")
    }
}

fn enumerate_rec(points: &[u32], acc: &mut Vec<(u32, u32)>, out: &mut Vec<PairPartition>) {
    if points.is_empty() {
        let n = acc.iter().map(|&(_, r)| r).max().unwrap_or(0);
        out.push(PairPartition::new(n, acc.clone()).expect("construction is valid"));
        return;
    }
    let first = points[0];
    for idx in 1..points.len() {
        let partner = points[idx];
        acc.push((first, partner));
        let rest: Vec<u32> = points[1..idx]
            .iter()
            .chain(&points[idx + 1..])
            .copied()
            .collect();
        enumerate_rec(&rest, acc, out);
        acc.pop();
    }
}

/// Partition of the pair set into connected components of the crossing
/// graph, each block listing pair indices in increasing order, blocks
/// ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "()");
        }
        for &(l, r) in &self.pairs {
            write!(f, "({l},{r})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PairPartition {
    type Err = PartitionError;

    /// Parses "(1,4)(2,3)"; "()" or the empty string denote the empty
    /// partition. Rejects overlaps and gaps.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| PartitionError::BadLiteral {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if compact.is_empty() || compact == "()" {
            return Ok(PairPartition::empty());
        }
        let mut pairs = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(bad("expected '('"));
            };
            let Some(close) = stripped.find(')') else {
                return Err(bad("missing ')'"));
            };
            let body = &stripped[..close];
            let Some((l, r)) = body.split_once(',') else {
                return Err(bad("pair must be 'l,r'"));
            };
            let l: u32 = l.parse().map_err(|_| bad("bad left endpoint"))?;
            let r: u32 = r.parse().map_err(|_| bad("bad right endpoint"))?;
            if l >= r {
                return Err(bad("pairs must satisfy l < r"));
            }
            pairs.push((l, r));
            rest = &stripped[close + 1..];
        }
        let n = pairs.iter().map(|&(_, r)| r).max().unwrap_or(0);
        PairPartition::new(n, pairs)
    }
}
