//! Permutations on {0, …, degree−1}, the carrier for permutation-realized groups.

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from an image list, checking bijectivity.
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::Domain(format!(
                    "image list {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint-cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cyc in cycles {
            for k in 0..cyc.len() {
                let from = cyc[k];
                let to = cyc[(k + 1) % cyc.len()];
                if from >= degree || to >= degree {
                    return Err(Error::Domain(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[from] = to as u16;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// self then other: (self * other)(x) = other(self(x)).
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }
}
