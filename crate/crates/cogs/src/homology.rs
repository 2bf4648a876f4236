//! Integer chain complexes and homology via Smith normal form.
//!
//! Homology is computed over ℤ, not just as field Betti numbers: torsion
//! freeness is part of the contractibility certificates this crate produces
//! (a space with the homology of a point must have no torsion anywhere).

use crate::delta::DeltaComplex;
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};
use num::bigint::BigInt;
use num::Zero;

/// A bounded chain complex of free ℤ-modules with labelled bases.
/// `∂_{k−1} ∂_k = 0` is asserted at construction.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    counts: Vec<usize>,
    /// `boundaries[k-1]` is `∂_k: C_k → C_{k−1}`, a counts[k−1] × counts[k]
    /// matrix.
    boundaries: Vec<IntMatrix>,
    labels: Vec<Vec<String>>,
}

impl ChainComplex {
    pub fn new(
        counts: Vec<usize>,
        boundaries: Vec<IntMatrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<ChainComplex> {
        if boundaries.len() + 1 != counts.len() && !(counts.is_empty() && boundaries.is_empty()) {
            return Err(Error::IndexOutOfRange(format!(
                "{} boundary matrices for {} degrees",
                boundaries.len(),
                counts.len()
            )));
        }
        if labels.len() != counts.len()
            || labels.iter().zip(&counts).any(|(l, &n)| l.len() != n)
        {
            return Err(Error::IndexOutOfRange("label table shape mismatch".into()));
        }
        for (k, m) in boundaries.iter().enumerate() {
            if m.rows() != counts[k] || m.cols() != counts[k + 1] {
                return Err(Error::IndexOutOfRange(format!(
                    "∂_{} has shape {}×{}, expected {}×{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    counts[k],
                    counts[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            let prod = boundaries[k - 1].mul(&boundaries[k]);
            if !prod.is_zero() {
                let bad = (0..prod.rows() * prod.cols())
                    .find(|&i| !prod.get(i / prod.cols(), i % prod.cols()).is_zero())
                    .unwrap();
                return Err(Error::BoundaryNotZero {
                    degree: k + 1,
                    index: bad % prod.cols(),
                });
            }
        }
        Ok(ChainComplex {
            counts,
            boundaries,
            labels,
        })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Top degree (`None` for the empty complex).
    pub fn top_degree(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    /// `∂_k` for `1 ≤ k ≤ top`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }
}

/// Builds the cellular chain complex of a Δ-complex:
/// `∂(cell) = Σ_i (−1)^i ∂_i(cell)`, with coincident faces accumulating
/// signed multiplicities.
pub fn chain_from_delta(d: &DeltaComplex) -> Result<ChainComplex> {
    let counts = d.counts();
    let mut boundaries = Vec::new();
    for k in 1..d.dims() {
        let mut m = IntMatrix::zeros(counts[k - 1], counts[k]);
        for c in 0..counts[k] {
            for i in 0..=k {
                let row = d.face(k, c, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.add_to(row, c, &BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    let labels = (0..d.dims())
        .map(|k| (0..counts[k]).map(|c| d.label(k, c).to_string()).collect())
        .collect();
    ChainComplex::new(counts, boundaries, labels)
}

/// Homology in one degree: the free rank and the torsion coefficients
/// (each > 1, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn free(betti: usize) -> DegreeHomology {
        DegreeHomology {
            betti,
            torsion: Vec::new(),
        }
    }
}

/// Integer homology in every degree, via Smith normal forms of consecutive
/// boundary matrices.
pub fn homology(c: &ChainComplex) -> Vec<DegreeHomology> {
    let n = c.counts().len();
    let snfs: Vec<_> = (1..n).map(|k| smith_normal_form(c.boundary(k))).collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k >= n {
            0
        } else {
            snfs[k - 1].rank()
        }
    };
    (0..n)
        .map(|k| DegreeHomology {
            betti: c.counts()[k] - rank(k) - rank(k + 1),
            torsion: if k + 1 < n {
                snfs[k].torsion()
            } else {
                Vec::new()
            },
        })
        .collect()
}

/// Alternating sum of cell counts. Equal to the alternating sum of Betti
/// numbers by rank-nullity; `homology_euler_agrees` checks that on demand.
pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.counts()
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Recomputes χ from Betti numbers and compares with the cell-count value.
pub fn homology_euler_agrees(c: &ChainComplex) -> bool {
    let from_betti: i64 = homology(c)
        .iter()
        .enumerate()
        .map(|(k, h)| if k % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
        .sum();
    from_betti == euler_characteristic(c)
}

/// True when the homology is that of a point: H₀ = ℤ and everything else
/// zero, torsion-free throughout.
pub fn is_point_homology(h: &[DegreeHomology]) -> bool {
    h.first().is_some_and(|h0| h0.betti == 1 && h0.torsion.is_empty())
        && h[1..]
            .iter()
            .all(|hk| hk.betti == 0 && hk.torsion.is_empty())
}

/// Recognizes a simplicial-cone structure on a Δ-complex: a 0-cell contained
/// (through iterated faces) in every maximal cell. Returns the least such
/// apex. This is the structural certificate used alongside χ = 1 and
/// point homology; it is exact for realizations of block developments,
/// where every maximal chain passes through the cone point.
pub fn is_simplicial_cone(d: &DeltaComplex) -> Option<usize> {
    if d.dims() == 0 || d.cell_count(0) == 0 {
        return None;
    }
    let max = d.maximal_cells();
    let mut candidates: Vec<usize> = (0..d.cell_count(0)).collect();
    for &(k, c) in &max {
        let verts = d.vertices_of(k, c);
        candidates.retain(|v| verts.contains(v));
        if candidates.is_empty() {
            return None;
        }
    }
    candidates.first().copied()
}
