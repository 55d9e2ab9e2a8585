//! Permutations of `{1, …, n}` in one-line notation.

use std::fmt;

use crate::error::{arg_err, Result};

/// A bijection of `{1, …, n}`; `images[i - 1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        if !is_permutation_word(&images) {
            return arg_err(format!(
                "{images:?} is not a permutation of 1..={}",
                images.len()
            ));
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[1, 2, 3]]` maps 1→2→3→1.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a == 0 || a as usize > n || seen[a as usize] {
                    return arg_err(format!("bad cycle {cycle:?} for degree {n}"));
                }
                seen[a as usize] = true;
                images[a as usize - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The adjacent transposition swapping `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.image(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// All permutations of degree `n` in lexicographic order of their one-line words.
    pub fn all(n: usize) -> Vec<Permutation> {
        all_words(n)
            .into_iter()
            .map(|images| Permutation { images })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn is_permutation_word(word: &[u32]) -> bool {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    for &a in word {
        if a == 0 || a as usize > n || seen[a as usize] {
            return false;
        }
        seen[a as usize] = true;
    }
    true
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All words that are permutations of `1..=n`, lexicographically ordered.
pub(crate) fn all_words(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut word: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(word.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| word[j] > word[i - 1]).unwrap();
        word.swap(i - 1, j);
        word[i..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation word (Lehmer code).
pub(crate) fn word_rank(word: &[u32]) -> usize {
    let n = word.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = word[i + 1..].iter().filter(|&&b| b < word[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_match_enumeration_order() {
        for n in 1..=5 {
            let words = all_words(n);
            assert_eq!(words.len(), factorial(n));
            for (i, w) in words.iter().enumerate() {
                assert_eq!(word_rank(w), i);
            }
        }
    }

    #[test]
    fn cycles_and_composition() {
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(c.images(), &[2, 3, 1]);
        assert_eq!(c.after(&c.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert_eq!(Permutation::adjacent(3, 2).images(), &[1, 3, 2]);
    }
}
