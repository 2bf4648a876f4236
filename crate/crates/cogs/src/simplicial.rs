//! Abstract simplicial complexes with named vertices.
//!
//! Simplices are stored by their sorted vertex-id sets and listed in a
//! canonical order (dimension first, then lexicographic), so indices are
//! stable and all derived structures are deterministic. Vertex names are the
//! user-facing handle; a simplex's key is its vertex names joined with `,`,
//! which is why `,` (and `<`, used in arrow keys) are reserved characters.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// A nonempty set of vertex ids, kept sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertex ids, sorting and rejecting repeats.
    pub fn new(mut vertices: Vec<usize>) -> Result<Simplex> {
        if vertices.is_empty() {
            return Err(Error::NotSimplicial("a simplex needs a vertex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSimplicial(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Simplex {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Is `self` a face of `other` (not necessarily proper)?
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        // Both sorted: a linear sweep decides containment.
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1 << n) - 1);
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.0[i])
                .collect();
            out.push(Simplex(verts));
        }
        out.sort();
        out
    }

    /// The codimension-one face dropping the `i`-th (sorted) vertex.
    /// Only defined when `dim > 0`.
    pub fn facet(&self, i: usize) -> Simplex {
        debug_assert!(self.0.len() > 1 && i < self.0.len());
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// The image of this simplex under a vertex map, which must stay
    /// injective on the simplex.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Result<Simplex> {
        Simplex::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

fn validate_vertex_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(',') || name.contains('<') {
        return Err(Error::BadVertexName(name.to_string()));
    }
    Ok(())
}

/// A finite abstract simplicial complex: a canonical list of simplices closed
/// under taking faces, over a named vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_names: Vec<String>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex names and generating simplices (given as
    /// vertex-id lists). The face closure and all vertices are added
    /// automatically; ids out of range and bad names are rejected.
    pub fn new(vertex_names: Vec<String>, generators: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        let mut seen = BTreeSet::new();
        for name in &vertex_names {
            validate_vertex_name(name)?;
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut set: BTreeSet<Simplex> = (0..vertex_names.len()).map(Simplex::vertex).collect();
        for gen in generators {
            if let Some(&bad) = gen.iter().find(|&&v| v >= vertex_names.len()) {
                return Err(Error::UnknownVertex(format!("vertex id {bad}")));
            }
            let s = Simplex::new(gen)?;
            for face in s.faces() {
                set.insert(face);
            }
        }
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let index = simplices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(SimplicialComplex {
            vertex_names,
            simplices,
            index,
        })
    }

    /// Convenience constructor from string names.
    pub fn from_names(vertex_names: &[&str], generators: &[&[&str]]) -> Result<SimplicialComplex> {
        let names: Vec<String> = vertex_names.iter().map(|s| s.to_string()).collect();
        let pos: HashMap<&str, usize> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, i))
            .collect();
        let gens = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&v| {
                        pos.get(v)
                            .copied()
                            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(names, gens)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, idx: usize) -> &Simplex {
        &self.simplices[idx]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &Simplex) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::MissingSimplex(format!("{s:?}")))
    }

    /// Largest simplex dimension.
    pub fn dim(&self) -> usize {
        self.simplices.last().map_or(0, Simplex::dim)
    }

    /// Number of simplices in each dimension, index = dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim() + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Simplices not contained in any strictly larger simplex.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t != &self.simplices[i] && self.simplices[i].is_face_of(t))
            })
            .collect()
    }

    /// The canonical key for a simplex: its vertex names joined with `,`.
    pub fn simplex_key(&self, idx: usize) -> String {
        self.simplices[idx]
            .vertices()
            .iter()
            .map(|&v| self.vertex_names[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a `,`-joined vertex-name key back to a simplex index.
    pub fn parse_key(&self, key: &str) -> Result<usize> {
        let ids = key
            .split(',')
            .map(|n| self.vertex_id(n))
            .collect::<Result<Vec<usize>>>()?;
        self.require(&Simplex::new(ids)?)
    }

    /// The link of a simplex: all simplices `τ` disjoint from `σ` with
    /// `τ ∪ σ` in the complex, over the vertex set of such `τ`.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        self.require(sigma)?;
        let mut members = Vec::new();
        for tau in &self.simplices {
            if tau.vertices().iter().any(|v| sigma.vertices().contains(v)) {
                continue;
            }
            let mut joined = tau.vertices().to_vec();
            joined.extend_from_slice(sigma.vertices());
            if self.index_of(&Simplex::new(joined)?).is_some() {
                members.push(tau.clone());
            }
        }
        let mut verts: Vec<usize> = members
            .iter()
            .flat_map(|t| t.vertices().iter().copied())
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let renumber: HashMap<usize, usize> =
            verts.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        SimplicialComplex::new(
            verts.iter().map(|&v| self.vertex_names[v].clone()).collect(),
            members
                .iter()
                .map(|t| t.vertices().iter().map(|v| renumber[v]).collect())
                .collect(),
        )
    }

    /// The barycentric subdivision: one new vertex per simplex (named by its
    /// vertex names joined with `|`), one new simplex per strict chain of
    /// simplices ordered by proper face inclusion.
    pub fn barycentric_subdivision(&self) -> Result<Subdivision> {
        let names: Vec<String> = (0..self.simplex_count())
            .map(|i| self.simplex_key(i).replace(',', "|"))
            .collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::DuplicateVertex(format!(
                    "subdivision name collision at {n}; rename vertices containing '|'"
                )));
            }
        }
        // Strict chains, grown one step at a time from each top simplex.
        let mut chains: Vec<Vec<usize>> = (0..self.simplex_count()).map(|i| vec![i]).collect();
        let mut all = chains.clone();
        while !chains.is_empty() {
            let mut next = Vec::new();
            for chain in &chains {
                let &top = chain.last().unwrap();
                for (j, t) in self.simplices.iter().enumerate() {
                    if t.dim() > self.simplices[top].dim() && self.simplices[top].is_face_of(t) {
                        let mut c = chain.clone();
                        c.push(j);
                        next.push(c);
                    }
                }
            }
            all.extend(next.iter().cloned());
            chains = next;
        }
        let complex = SimplicialComplex::new(names, all)?;
        let vertex_simplex = (0..self.simplex_count()).collect::<Vec<usize>>();
        // The subdivision names vertex i after simplex i, and
        // `SimplicialComplex::new` keeps vertex ids as given, so the map is
        // the identity on indices; assert rather than trust.
        for (v, &s) in vertex_simplex.iter().enumerate() {
            debug_assert_eq!(
                complex.vertex_name(v),
                self.simplex_key(s).replace(',', "|")
            );
        }
        Ok(Subdivision {
            complex,
            vertex_simplex,
        })
    }
}

/// A barycentric subdivision together with the simplex each new vertex
/// subdivides.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// For each vertex of `complex`, the index in the original complex of the
    /// simplex whose barycentre it is.
    pub vertex_simplex: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap()
    }

    #[test]
    fn face_closure_of_a_triangle() {
        let x = triangle();
        assert_eq!(x.counts_by_dim(), vec![3, 3, 1]);
        assert_eq!(x.simplex_count(), 7);
        assert_eq!(x.maximal_simplices().len(), 1);
        // Canonical order: all vertices, then edges, then the triangle.
        assert_eq!(x.simplex_key(0), "u");
        assert_eq!(x.simplex_key(3), "u,v");
        assert_eq!(x.simplex_key(6), "u,v,w");
        assert_eq!(x.parse_key("v,w").unwrap(), 5);
    }

    #[test]
    fn reserved_characters_are_rejected() {
        assert!(SimplicialComplex::from_names(&["a,b"], &[]).is_err());
        assert!(SimplicialComplex::from_names(&["a<b"], &[]).is_err());
        assert!(SimplicialComplex::from_names(&["a", "a"], &[]).is_err());
        assert!(SimplicialComplex::from_names(&["a|b"], &[]).is_ok());
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let x = SimplicialComplex::from_names(&["a", "b", "c"], &[&["a", "b"]]).unwrap();
        assert_eq!(x.counts_by_dim(), vec![3, 1]);
    }

    /// Oracle for subdivision sizes: count strict chains directly with a
    /// recursive enumeration over face-incidence, independent of the
    /// chain-growing loop inside `barycentric_subdivision`.
    fn chain_count_oracle(x: &SimplicialComplex, length: usize) -> usize {
        fn extend(x: &SimplicialComplex, chain: &mut Vec<usize>, left: usize, count: &mut usize) {
            if left == 0 {
                *count += 1;
                return;
            }
            let &top = chain.last().unwrap();
            for j in 0..x.simplex_count() {
                let (s, t) = (x.simplex(top), x.simplex(j));
                if t.dim() > s.dim() && s.is_face_of(t) {
                    chain.push(j);
                    extend(x, chain, left - 1, count);
                    chain.pop();
                }
            }
        }
        let mut count = 0;
        for i in 0..x.simplex_count() {
            let mut chain = vec![i];
            extend(x, &mut chain, length - 1, &mut count);
        }
        count
    }

    #[test]
    fn subdividing_a_triangle() {
        let x = triangle();
        let sub = x.barycentric_subdivision().unwrap();
        let y = &sub.complex;
        assert_eq!(
            y.counts_by_dim(),
            vec![
                chain_count_oracle(&x, 1),
                chain_count_oracle(&x, 2),
                chain_count_oracle(&x, 3)
            ]
        );
        assert_eq!(y.counts_by_dim(), vec![7, 12, 6]);
        // Barycentre vertices carry their source simplex's joined name.
        assert_eq!(y.vertex_name(6), "u|v|w");
        assert_eq!(sub.vertex_simplex[6], 6);
        // Subdividing again still yields a valid complex (names nest).
        let again = y.barycentric_subdivision().unwrap();
        assert_eq!(
            again.complex.counts_by_dim(),
            vec![25, chain_count_oracle(y, 2), chain_count_oracle(y, 3)]
        );
    }

    #[test]
    fn subdividing_a_cycle_doubles_it() {
        // A 3-cycle graph subdivides to a 6-cycle.
        let x = SimplicialComplex::from_names(
            &["a", "b", "c"],
            &[&["a", "b"], &["b", "c"], &["a", "c"]],
        )
        .unwrap();
        let sub = x.barycentric_subdivision().unwrap().complex;
        assert_eq!(sub.counts_by_dim(), vec![6, 6]);
        // Every vertex of the subdivided cycle meets exactly two edges.
        for v in 0..sub.vertex_count() {
            let deg = sub
                .simplices()
                .iter()
                .filter(|s| s.dim() == 1 && s.vertices().contains(&v))
                .count();
            assert_eq!(deg, 2);
        }
    }

    #[test]
    fn links_in_a_triangle_and_a_path() {
        let tri = triangle();
        // Link of a vertex in a filled triangle is the opposite edge.
        let lk = tri.link(&Simplex::vertex(0)).unwrap();
        assert_eq!(lk.counts_by_dim(), vec![2, 1]);
        assert_eq!(lk.vertex_names(), &["v".to_string(), "w".to_string()]);
        // Link of the 2-simplex is empty.
        let lk = tri.link(&Simplex::new(vec![0, 1, 2]).unwrap()).unwrap();
        assert_eq!(lk.simplex_count(), 0);
        // Middle vertex of a path: two isolated vertices.
        let path =
            SimplicialComplex::from_names(&["x0", "x1", "x2"], &[&["x0", "x1"], &["x1", "x2"]])
                .unwrap();
        let lk = path.link(&Simplex::vertex(1)).unwrap();
        assert_eq!(lk.counts_by_dim(), vec![2]);
        // A simplex absent from the complex is an error.
        assert!(path.link(&Simplex::new(vec![0, 2]).unwrap()).is_err());
    }

    #[test]
    fn simplex_faces_and_facets() {
        let s = Simplex::new(vec![2, 0, 5]).unwrap();
        assert_eq!(s.vertices(), &[0, 2, 5]);
        assert_eq!(s.faces().len(), 7);
        assert_eq!(s.facet(1).vertices(), &[0, 5]);
        assert!(Simplex::new(vec![1, 1]).is_err());
        assert!(s.map(|_| 3).is_err());
    }
}
