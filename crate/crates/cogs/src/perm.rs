//! Permutations of `{1, ..., n}` stored as image tables.
//!
//! Internally images are 0-based; the JSON form is the 1-based image array
//! `[p(1), ..., p(n)]`. The derived `Ord` (lexicographic on the image table)
//! is the canonical element order used everywhere: the identity is always the
//! least element of its degree.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `{0, ..., degree-1}` as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u16>", into = "Vec<u16>")]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// The identity on `degree` points.
    pub fn identity(degree: u16) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds from a 1-based image array, validating bijectivity.
    pub fn from_one_based(images: Vec<u16>) -> Result<Self> {
        let n = images.len() as u16;
        let mut seen = vec![false; n as usize];
        for &img in &images {
            if img == 0 || img > n || seen[(img - 1) as usize] {
                return Err(Error::BadPermutation(images));
            }
            seen[(img - 1) as usize] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i - 1).collect(),
        })
    }

    /// Builds from disjoint 1-based cycles on `degree` points (test and
    /// fixture convenience; points absent from every cycle are fixed).
    pub fn from_cycles(degree: u16, cycles: &[&[u16]]) -> Result<Self> {
        let mut images: Vec<u16> = (1..=degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from == 0 || from > degree {
                    return Err(Error::BadPermutation(cycle.to_vec()));
                }
                images[(from - 1) as usize] = to;
            }
        }
        Permutation::from_one_based(images)
    }

    /// Number of points acted on.
    pub fn degree(&self) -> u16 {
        self.images.len() as u16
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// `self * other`: the permutation applying `other` first, then `self`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (0..self.degree())
                .map(|p| self.apply(other.apply(p)))
                .collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (p, &img) in self.images.iter().enumerate() {
            images[img as usize] = p as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &img)| p as u16 == img)
    }

    /// The 1-based image array (the JSON form).
    pub fn one_based(&self) -> Vec<u16> {
        self.images.iter().map(|&i| i + 1).collect()
    }
}

impl TryFrom<Vec<u16>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<u16>) -> Result<Self> {
        Permutation::from_one_based(images)
    }
}

impl From<Permutation> for Vec<u16> {
    fn from(p: Permutation) -> Vec<u16> {
        p.one_based()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm{:?}", self.one_based())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_lexicographically_least() {
        // Every nonidentity permutation differs from [1..n] at its first moved
        // point, where it is strictly larger.
        let id = Permutation::identity(4);
        let others = [
            Permutation::from_one_based(vec![1, 2, 4, 3]).unwrap(),
            Permutation::from_one_based(vec![4, 3, 2, 1]).unwrap(),
            Permutation::from_one_based(vec![2, 1, 3, 4]).unwrap(),
        ];
        for p in &others {
            assert!(id < *p);
        }
    }

    #[test]
    fn mul_applies_right_factor_first() {
        // a = (1 2), b = (2 3); (a * b)(2) = a(b(2)) = a(3) = 3.
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.one_based(), vec![2, 3, 1]); // (1 2 3)
        let ba = b.mul(&a);
        assert_eq!(ba.one_based(), vec![3, 1, 2]); // (1 3 2)
    }

    #[test]
    fn inverse_round_trips() {
        let p = Permutation::from_one_based(vec![3, 1, 4, 2]).unwrap();
        assert!(p.mul(&p.inverse()).is_identity());
        assert!(p.inverse().mul(&p).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_one_based(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(vec![1, 4, 3]).is_err());
    }

    #[test]
    fn cycles_build_the_expected_tables() {
        let r = Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap();
        assert_eq!(r.one_based(), vec![2, 3, 4, 5, 6, 1]);
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(t.one_based(), vec![2, 1, 3]);
    }
}
