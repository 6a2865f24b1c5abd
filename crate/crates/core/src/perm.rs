//! Permutations in one-line notation on {1..n}, shared by the partition
//! embedding, the leg action on diagrams and the symmetric-group
//! representations.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection of {{1..{n}}}: {detail}")]
    NotABijection { n: usize, detail: String },
}

/// A permutation of {1..n}; `apply(i)` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[(v - 1) as usize] {
                return Err(PermError::NotABijection {
                    n,
                    detail: format!("image {v}"),
                });
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn transposition(n: usize, a: u32, b: u32) -> Self {
        assert!(a >= 1 && b >= 1 && a as usize <= n && b as usize <= n && a != b);
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.swap((a - 1) as usize, (b - 1) as usize);
        Permutation { images }
    }

    /// The cycle mapping k -> 1 and r -> r+1 for r < k (identity above k).
    pub fn cycle_to_front(n: usize, k: u32) -> Self {
        assert!(k >= 1 && k as usize <= n);
        let images: Vec<u32> = (1..=n as u32)
            .map(|r| {
                if r == k {
                    1
                } else if r < k {
                    r + 1
                } else {
                    r
                }
            })
            .collect();
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as u32 + 1)
    }

    /// self o other: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: (1..=self.size() as u32)
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// All permutations of {1..n} in lexicographic order of the one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            if n < 2 {
                break;
            }
            let mut i = n - 2;
            loop {
                if current[i] < current[i + 1] {
                    break;
                }
                if i == 0 {
                    return out;
                }
                i -= 1;
            }
            let mut j = n - 1;
            while current[j] <= current[i] {
                j -= 1;
            }
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    pub fn one_line(&self) -> &[u32] {
        &self.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.images
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.images
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}
