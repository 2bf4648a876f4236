//! Arbitrary-precision integer matrices and Smith normal form.
//!
//! Entries are `BigInt` throughout: even small chain complexes can blow up
//! intermediate entries during reduction. Pivot selection is the smallest
//! nonzero magnitude with ties broken row-major, which both limits entry
//! growth and makes the reduction deterministic.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// A dense rows × cols matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds from row slices of machine integers (test and fixture
    /// convenience).
    pub fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = a * rhs.get(k, c);
                    out.add_to(r, c, &add);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let add = q * self.get(src, c);
            self.add_to(dst, c, &add);
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let add = q * self.get(r, src);
            self.add_to(r, dst, &add);
        }
    }
}

/// The Smith normal form of a matrix: positive invariant factors
/// `d_1 | d_2 | … | d_r` and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The factors greater than one — the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form by exact integer row/column reduction.
///
/// At step `t`: pick the entry of smallest nonzero magnitude in the
/// remaining submatrix (ties row-major), move it to `(t, t)`, reduce its row
/// and column by Euclidean steps until they are zero outside the pivot,
/// then enforce that the pivot divides every remaining entry (folding an
/// offending row in and repeating otherwise). Pivots are normalized
/// positive; the resulting diagonal satisfies `d_1 | d_2 | …`.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut factors = Vec::new();
    for t in 0..n {
        'place_pivot: loop {
            // Smallest nonzero magnitude in the submatrix at (t.., t..).
            let mut best: Option<(usize, usize)> = None;
            for r in t..a.rows {
                for c in t..a.cols {
                    if a.get(r, c).is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((br, bc)) => a.get(r, c).abs() < a.get(br, bc).abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                // Submatrix is zero: done with all pivots.
                return Snf { factors };
            };
            a.swap_rows(t, pr);
            a.swap_cols(t, pc);

            // Euclidean reduction of column t then row t by the pivot.
            let mut dirty = false;
            for r in t + 1..a.rows {
                if !a.get(r, t).is_zero() {
                    let q = -(a.get(r, t) / a.get(t, t));
                    a.add_row(r, t, &q);
                    if !a.get(r, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..a.cols {
                if !a.get(t, c).is_zero() {
                    let q = -(a.get(t, c) / a.get(t, t));
                    a.add_col(c, t, &q);
                    if !a.get(t, c).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // Remainders became new smaller candidates; pick again.
                continue 'place_pivot;
            }

            // Divisibility: the pivot must divide the remaining submatrix.
            for r in t + 1..a.rows {
                for c in t + 1..a.cols {
                    if !a.get(r, c).mod_floor(a.get(t, t)).is_zero() {
                        let one = BigInt::one();
                        a.add_row(t, r, &one);
                        continue 'place_pivot;
                    }
                }
            }

            let d = a.get(t, t).abs();
            factors.push(d);
            break;
        }
    }
    Snf { factors }
}
