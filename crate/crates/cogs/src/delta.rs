//! Δ-complexes: families of cells with semi-simplicial face maps.
//!
//! A Δ-complex stores, per dimension, a list of labelled cells, and for each
//! k-cell its k+1 faces `∂_0, …, ∂_k` in dimension k−1. The identities
//! `∂_i ∂_j = ∂_{j−1} ∂_i` (i < j) are verified exhaustively at
//! construction, since the homology boundary formula is only correct for
//! face maps that satisfy them.
//!
//! This is the realization format for scwols: the k-cells of `realize` are
//! the composable k-tuples, with faces given by the tuple boundary maps. No
//! Euclidean geometry is materialized; only the combinatorics feeds
//! homology.

use crate::error::{Error, Result};
use crate::scwol::Scwol;
use crate::simplicial::SimplicialComplex;

/// A finite Δ-complex with labelled cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    /// `labels[k]` are the names of the k-cells.
    labels: Vec<Vec<String>>,
    /// `faces[k][c][i]` is the index of `∂_i c` among the (k−1)-cells;
    /// `faces[0]` is a list of empty vectors.
    faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    /// Builds a Δ-complex, checking face ranges, arities, and the
    /// semi-simplicial identities on every cell.
    pub fn new(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<usize>>>) -> Result<DeltaComplex> {
        if labels.len() != faces.len() {
            return Err(Error::IndexOutOfRange(
                "label and face tables have different depths".into(),
            ));
        }
        let d = DeltaComplex { labels, faces };
        for k in 0..d.dims() {
            if d.faces[k].len() != d.labels[k].len() {
                return Err(Error::IndexOutOfRange(format!(
                    "dimension {k} has {} face rows for {} cells",
                    d.faces[k].len(),
                    d.labels[k].len()
                )));
            }
            for (c, fs) in d.faces[k].iter().enumerate() {
                let expected = if k == 0 { 0 } else { k + 1 };
                if fs.len() != expected {
                    return Err(Error::IndexOutOfRange(format!(
                        "cell {c} in dimension {k} has {} faces, expected {expected}",
                        fs.len()
                    )));
                }
                if k > 0 {
                    if let Some(&bad) = fs.iter().find(|&&f| f >= d.labels[k - 1].len()) {
                        return Err(Error::IndexOutOfRange(format!(
                            "face index {bad} out of range in dimension {}",
                            k - 1
                        )));
                    }
                }
            }
        }
        for k in 2..d.dims() {
            for c in 0..d.cell_count(k) {
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = d.faces[k - 1][d.faces[k][c][j]][i];
                        let rhs = d.faces[k - 1][d.faces[k][c][i]][j - 1];
                        if lhs != rhs {
                            return Err(Error::ScwolAxiom(format!(
                                "semi-simplicial identity ∂_{i}∂_{j} fails on cell {c} in dimension {k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    /// Number of stored dimensions (top dimension + 1; 0 when empty).
    pub fn dims(&self) -> usize {
        self.labels.len()
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    /// Cell counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, k: usize, c: usize) -> &str {
        &self.labels[k][c]
    }

    pub fn label_index(&self, k: usize, label: &str) -> Option<usize> {
        self.labels[k].iter().position(|l| l == label)
    }

    /// `∂_i` of cell `c` in dimension `k ≥ 1`.
    pub fn face(&self, k: usize, c: usize, i: usize) -> usize {
        self.faces[k][c][i]
    }

    /// The 0-cells of a cell, collected through iterated faces.
    pub fn vertices_of(&self, k: usize, c: usize) -> Vec<usize> {
        let mut frontier = vec![(k, c)];
        let mut verts = Vec::new();
        while let Some((k, c)) = frontier.pop() {
            if k == 0 {
                verts.push(c);
            } else {
                for i in 0..=k {
                    frontier.push((k - 1, self.faces[k][c][i]));
                }
            }
        }
        verts.sort_unstable();
        verts.dedup();
        verts
    }

    /// Cells not occurring as a face of any higher cell, as (dim, index).
    pub fn maximal_cells(&self) -> Vec<(usize, usize)> {
        let mut is_face: Vec<Vec<bool>> = self
            .labels
            .iter()
            .map(|l| vec![false; l.len()])
            .collect();
        for k in 1..self.dims() {
            for fs in &self.faces[k] {
                for &f in fs {
                    is_face[k - 1][f] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, layer) in is_face.iter().enumerate() {
            for (c, &covered) in layer.iter().enumerate() {
                if !covered {
                    out.push((k, c));
                }
            }
        }
        out
    }
}

/// Realizes a scwol as a Δ-complex: k-cells are the composable k-tuples,
/// faces are the tuple boundaries. 0-cells are labelled by object names,
/// higher cells by their arrow names joined with `;`.
pub fn realize(scwol: &Scwol) -> DeltaComplex {
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    let mut prev_index: std::collections::HashMap<crate::scwol::ComposableTuple, usize> =
        std::collections::HashMap::new();
    for k in 0.. {
        let tuples = scwol.composable_tuples(k);
        if tuples.is_empty() {
            break;
        }
        let layer_labels: Vec<String> = tuples
            .iter()
            .map(|t| {
                if k == 0 {
                    scwol.object_name(t.i_obj()).to_string()
                } else {
                    t.arrows()
                        .iter()
                        .map(|&a| scwol.arrow_name(a))
                        .collect::<Vec<_>>()
                        .join(";")
                }
            })
            .collect();
        let layer_faces: Vec<Vec<usize>> = tuples
            .iter()
            .map(|t| {
                (0..=k)
                    .take(if k == 0 { 0 } else { k + 1 })
                    .map(|j| {
                        let b = scwol
                            .tuple_boundary(t, j)
                            .expect("boundary of an enumerated tuple");
                        prev_index[&b]
                    })
                    .collect()
            })
            .collect();
        prev_index = tuples.into_iter().enumerate().map(|(i, t)| (t, i)).collect();
        labels.push(layer_labels);
        faces.push(layer_faces);
    }
    DeltaComplex::new(labels, faces)
        .expect("tuple boundaries satisfy the semi-simplicial identities")
}

/// The Δ-complex of a simplicial complex itself (not its subdivision):
/// k-cells are the k-simplices, `∂_i` deletes the i-th vertex in sorted
/// order.
pub fn delta_of_complex(k: &SimplicialComplex) -> DeltaComplex {
    let layers = if k.simplex_count() == 0 { 0 } else { k.dim() + 1 };
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); layers];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); layers];
    // Position of each simplex within its dimension layer; layers follow the
    // canonical (dimension, lexicographic) order, so this is a running count.
    let mut layer_pos = Vec::with_capacity(k.simplex_count());
    let mut counts = vec![0usize; labels.len()];
    for idx in 0..k.simplex_count() {
        let d = k.simplex(idx).dim();
        layer_pos.push(counts[d]);
        counts[d] += 1;
    }
    for idx in 0..k.simplex_count() {
        let s = k.simplex(idx);
        let d = s.dim();
        labels[d].push(k.simplex_key(idx));
        let fs = if d == 0 {
            Vec::new()
        } else {
            (0..=d)
                .map(|i| {
                    let f = k
                        .index_of(&s.facet(i))
                        .expect("complexes are closed under faces");
                    layer_pos[f]
                })
                .collect()
        };
        faces[d].push(fs);
    }
    DeltaComplex::new(labels, faces)
        .expect("sorted-vertex face maps satisfy the semi-simplicial identities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scwol::scwol_of_complex;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap()
    }

    #[test]
    fn realization_of_triangle_scwol_matches_subdivision_counts() {
        let x = triangle();
        let d = realize(&scwol_of_complex(&x));
        let sub = x.barycentric_subdivision().unwrap().complex;
        assert_eq!(d.counts(), sub.counts_by_dim());
        assert_eq!(d.counts(), vec![7, 12, 6]);
    }

    /// The realization is isomorphic to the barycentric subdivision as a
    /// Δ-complex: the explicit cell bijection sends a tuple to the strict
    /// chain of simplices it traverses, and must commute with all face maps.
    /// The chain Δ-structure is built here directly from face inclusions of
    /// the original complex, independent of the scwol machinery.
    #[test]
    fn realization_is_isomorphic_to_the_subdivision() {
        for x in [
            triangle(),
            SimplicialComplex::from_names(&["a", "b", "c", "d"], &[&["a", "b", "c", "d"]])
                .unwrap(),
            SimplicialComplex::from_names(
                &["a", "b", "c"],
                &[&["a", "b"], &["b", "c"], &["a", "c"]],
            )
            .unwrap(),
        ] {
            let s = scwol_of_complex(&x);
            let d = realize(&s);
            // Chains of simplex indices ordered by strict reverse inclusion
            // (largest first), per dimension, sorted.
            let mut chains: Vec<Vec<Vec<usize>>> =
                vec![(0..x.simplex_count()).map(|i| vec![i]).collect()];
            loop {
                let last = chains.last().unwrap();
                let mut next = Vec::new();
                for chain in last {
                    let &end = chain.last().unwrap();
                    for j in 0..x.simplex_count() {
                        if x.simplex(j).dim() < x.simplex(end).dim()
                            && x.simplex(j).is_face_of(x.simplex(end))
                        {
                            let mut c = chain.clone();
                            c.push(j);
                            next.push(c);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                next.sort();
                chains.push(next);
            }
            assert_eq!(
                d.counts(),
                chains.iter().map(Vec::len).collect::<Vec<_>>()
            );
            // The bijection: cell c in dim k ↦ its traversed chain. Tuples
            // and chains both start at the largest simplex, and the scwol's
            // objects are indexed by simplices.
            let tuples: Vec<Vec<crate::scwol::ComposableTuple>> =
                (0..d.dims()).map(|k| s.composable_tuples(k)).collect();
            let chain_of = |k: usize, c: usize| tuples[k][c].chain_objects(&s);
            for k in 1..d.dims() {
                for c in 0..d.cell_count(k) {
                    let chain = chain_of(k, c);
                    for j in 0..=k {
                        // Face in the realization vs deletion in the chain.
                        let face_chain = chain_of(k - 1, d.face(k, c, j));
                        let mut expect = chain.clone();
                        expect.remove(j);
                        assert_eq!(face_chain, expect, "k={k} c={c} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn realization_of_small_scwols() {
        let edge = SimplicialComplex::from_names(&["u", "w"], &[&["u", "w"]]).unwrap();
        let d = realize(&scwol_of_complex(&edge));
        assert_eq!(d.counts(), vec![3, 2]);
        let v = SimplicialComplex::from_names(&["p"], &[]).unwrap();
        let d = realize(&scwol_of_complex(&v));
        assert_eq!(d.counts(), vec![1]);
        assert_eq!(d.label(0, 0), "p");
    }

    #[test]
    fn maximal_cells_and_vertices() {
        let x = triangle();
        let d = realize(&scwol_of_complex(&x));
        let max = d.maximal_cells();
        assert_eq!(max.len(), 6);
        assert!(max.iter().all(|&(k, _)| k == 2));
        // Every maximal cell of the subdivided triangle contains the
        // barycentre 0-cell (the realization is a cone over it).
        let bary = d.label_index(0, "u,v,w").unwrap();
        for &(k, c) in &max {
            assert!(d.vertices_of(k, c).contains(&bary));
        }
    }

    #[test]
    fn delta_of_complex_directly() {
        let x = triangle();
        let d = delta_of_complex(&x);
        assert_eq!(d.counts(), vec![3, 3, 1]);
        // ∂_i of the 2-simplex drops the i-th vertex: faces are vw, uw, uv.
        let t = d.label_index(2, "u,v,w").unwrap();
        assert_eq!(d.label(1, d.face(2, t, 0)), "v,w");
        assert_eq!(d.label(1, d.face(2, t, 1)), "u,w");
        assert_eq!(d.label(1, d.face(2, t, 2)), "u,v");
    }

    #[test]
    fn bad_face_data_is_rejected() {
        // Two triangles sharing face indices that break ∂_i∂_j = ∂_{j−1}∂_i.
        let labels = vec![
            vec!["p".into(), "q".into(), "r".into()],
            vec!["e0".into(), "e1".into(), "e2".into()],
            vec!["f".into()],
        ];
        let good_faces = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![1, 0], vec![2, 0], vec![2, 1]],
            vec![vec![2, 1, 0]],
        ];
        assert!(DeltaComplex::new(labels.clone(), good_faces).is_ok());
        let bad_faces = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![1, 0], vec![2, 0], vec![2, 1]],
            vec![vec![0, 1, 2]],
        ];
        assert!(DeltaComplex::new(labels, bad_faces).is_err());
    }
}
