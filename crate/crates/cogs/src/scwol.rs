//! Scwols: small categories without loops.
//!
//! A scwol has objects, arrows with initial and terminal objects (`i(a)` and
//! `t(a)`, with `i(a) ≠ t(a)`), and a composition `ba` defined exactly when
//! `i(b) = t(a)`, associative, with `i(ba) = i(a)` and `t(ba) = t(b)`. All of
//! these axioms are verified exhaustively at construction.
//!
//! The scwol of a simplicial complex has one object per simplex and one
//! arrow per strict face pair `σ ⊊ σ′`, pointing from the larger simplex to
//! the smaller: `i(a) = σ′`, `t(a) = σ`. Composable k-tuples
//! `(a_k, …, a_1)` then correspond to strict chains
//! `i(a_1) ⊋ t(a_1) ⊋ … ⊋ t(a_k)` and realize the barycentric subdivision.
//!
//! Boundary convention: the tuple `(a_k, …, a_1)` traverses the chain of
//! objects `σ_0 = i(a_1), σ_1 = t(a_1), …, σ_k = t(a_k)`, and `∂_j` deletes
//! `σ_j`: `∂_0` drops `a_1`, inner `∂_j` composes `a_{j+1}a_j`, `∂_k` drops
//! `a_k`. In particular for a single arrow `∂_0 a` is the object `t(a)` and
//! `∂_1 a` is `i(a)`; this is the unique extension of the higher formulas
//! satisfying `∂_i ∂_j = ∂_{j−1} ∂_i` for `i < j`, which face maps must obey
//! for the realization to glue into a complex.

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;
use std::collections::BTreeMap;

pub type ObjectId = usize;
pub type ArrowId = usize;

/// A finite scwol with verified axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scwol {
    object_names: Vec<String>,
    arrow_names: Vec<String>,
    arrow_i: Vec<ObjectId>,
    arrow_t: Vec<ObjectId>,
    compose: BTreeMap<(ArrowId, ArrowId), ArrowId>,
}

impl Scwol {
    /// Builds a scwol and checks every axiom: endpoints in range, no loops,
    /// composition total on composable pairs and only on them, endpoint
    /// compatibility of composites, and associativity on all triples.
    pub fn new(
        object_names: Vec<String>,
        arrow_names: Vec<String>,
        arrow_ends: Vec<(ObjectId, ObjectId)>,
        compose: BTreeMap<(ArrowId, ArrowId), ArrowId>,
    ) -> Result<Scwol> {
        let n_obj = object_names.len();
        let n_arr = arrow_ends.len();
        if arrow_names.len() != n_arr {
            return Err(Error::ScwolAxiom(format!(
                "{} arrow names for {} arrows",
                arrow_names.len(),
                n_arr
            )));
        }
        for names in [&object_names, &arrow_names] {
            let mut sorted = names.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::ScwolAxiom("duplicate name".into()));
            }
        }
        for (idx, &(i, t)) in arrow_ends.iter().enumerate() {
            if i >= n_obj || t >= n_obj {
                return Err(Error::ScwolAxiom(format!(
                    "arrow {idx} has endpoint out of range"
                )));
            }
            if i == t {
                return Err(Error::ScwolAxiom(format!(
                    "arrow {idx} is a loop at object {i}"
                )));
            }
        }
        let (arrow_i, arrow_t): (Vec<_>, Vec<_>) = arrow_ends.into_iter().unzip();
        for (&(b, a), &ba) in &compose {
            if b >= n_arr || a >= n_arr || ba >= n_arr {
                return Err(Error::ScwolAxiom("composition entry out of range".into()));
            }
            if arrow_i[b] != arrow_t[a] {
                return Err(Error::ScwolAxiom(format!(
                    "composition defined on non-composable pair ({b}, {a})"
                )));
            }
            if arrow_i[ba] != arrow_i[a] || arrow_t[ba] != arrow_t[b] {
                return Err(Error::ScwolAxiom(format!(
                    "composite of ({b}, {a}) has wrong endpoints"
                )));
            }
        }
        for (b, ib) in arrow_i.iter().enumerate() {
            for (a, ta) in arrow_t.iter().enumerate() {
                if ib == ta && !compose.contains_key(&(b, a)) {
                    return Err(Error::ScwolAxiom(format!(
                        "missing composite for composable pair ({b}, {a})"
                    )));
                }
            }
        }
        let scwol = Scwol {
            object_names,
            arrow_names,
            arrow_i,
            arrow_t,
            compose,
        };
        for c in 0..n_arr {
            for b in 0..n_arr {
                if scwol.arrow_i[c] != scwol.arrow_t[b] {
                    continue;
                }
                let cb = scwol.compose[&(c, b)];
                for a in 0..n_arr {
                    if scwol.arrow_i[b] != scwol.arrow_t[a] {
                        continue;
                    }
                    let ba = scwol.compose[&(b, a)];
                    if scwol.compose[&(c, ba)] != scwol.compose[&(cb, a)] {
                        return Err(Error::ScwolAxiom(format!(
                            "associativity fails on triple ({c}, {b}, {a})"
                        )));
                    }
                }
            }
        }
        Ok(scwol)
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.object_names[o]
    }

    pub fn object_id(&self, name: &str) -> Result<ObjectId> {
        self.object_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_i.len()
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a]
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Initial object of an arrow (the larger simplex in simplicial scwols).
    pub fn i(&self, a: ArrowId) -> ObjectId {
        self.arrow_i[a]
    }

    /// Terminal object of an arrow (the smaller simplex in simplicial scwols).
    pub fn t(&self, a: ArrowId) -> ObjectId {
        self.arrow_t[a]
    }

    /// The composite `ba`, defined when `i(b) = t(a)`.
    pub fn compose(&self, b: ArrowId, a: ArrowId) -> Result<ArrowId> {
        self.compose
            .get(&(b, a))
            .copied()
            .ok_or(Error::NotComposable { outer: b, inner: a })
    }

    pub fn arrows_from(&self, i_obj: ObjectId) -> Vec<ArrowId> {
        (0..self.arrow_count())
            .filter(|&a| self.arrow_i[a] == i_obj)
            .collect()
    }

    pub fn arrows_into(&self, t_obj: ObjectId) -> Vec<ArrowId> {
        (0..self.arrow_count())
            .filter(|&a| self.arrow_t[a] == t_obj)
            .collect()
    }

    /// The unique arrow from `i_obj` to `t_obj`, if any. All scwols built by
    /// this crate are poset-like, so uniqueness is asserted.
    pub fn direct_arrow(&self, i_obj: ObjectId, t_obj: ObjectId) -> Option<ArrowId> {
        let mut found = None;
        for a in 0..self.arrow_count() {
            if self.arrow_i[a] == i_obj && self.arrow_t[a] == t_obj {
                assert!(found.is_none(), "parallel arrows between {i_obj} and {t_obj}");
                found = Some(a);
            }
        }
        found
    }

    /// All composable k-tuples in canonical (sorted) order. `k = 0` gives one
    /// tuple per object.
    pub fn composable_tuples(&self, k: usize) -> Vec<ComposableTuple> {
        let mut tuples: Vec<ComposableTuple> = (0..self.object_count())
            .map(ComposableTuple::object)
            .collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for tup in &tuples {
                for a in self.arrows_from(tup.t_obj(self)) {
                    let mut arrows = tup.arrows.clone();
                    arrows.push(a);
                    next.push(ComposableTuple {
                        initial: tup.initial,
                        arrows,
                    });
                }
            }
            tuples = next;
        }
        tuples.sort();
        tuples
    }

    /// `∂_j` of a k-tuple (k ≥ 1): deletes the j-th object along the chain.
    pub fn tuple_boundary(&self, tuple: &ComposableTuple, j: usize) -> Result<ComposableTuple> {
        let k = tuple.len();
        if k == 0 || j > k {
            return Err(Error::IndexOutOfRange(format!(
                "boundary index {j} on a {k}-tuple"
            )));
        }
        let mut arrows = tuple.arrows.clone();
        if j == 0 {
            let a1 = arrows.remove(0);
            Ok(ComposableTuple {
                initial: self.t(a1),
                arrows,
            })
        } else if j == k {
            arrows.pop();
            Ok(ComposableTuple {
                initial: tuple.initial,
                arrows,
            })
        } else {
            // Compose a_{j+1} a_j (indices j and j−1 in storage order).
            let c = self.compose(arrows[j], arrows[j - 1])?;
            arrows.splice(j - 1..=j, [c]);
            Ok(ComposableTuple {
                initial: tuple.initial,
                arrows,
            })
        }
    }

    /// The long composition `a_k ⋯ a_1` of a tuple; `None` for 0-tuples.
    pub fn compose_tuple(&self, tuple: &ComposableTuple) -> Result<Option<ArrowId>> {
        let mut arrows = tuple.arrows.iter();
        let Some(&first) = arrows.next() else {
            return Ok(None);
        };
        let mut acc = first;
        for &a in arrows {
            acc = self.compose(a, acc)?;
        }
        Ok(Some(acc))
    }

    /// The full sub-scwol on a subset of objects.
    pub fn sub_scwol(&self, objects: &[ObjectId]) -> Result<SubScwol> {
        let mut object_map: Vec<ObjectId> = objects.to_vec();
        object_map.sort_unstable();
        object_map.dedup();
        let mut new_obj = vec![usize::MAX; self.object_count()];
        for (new, &old) in object_map.iter().enumerate() {
            if old >= self.object_count() {
                return Err(Error::IndexOutOfRange(format!("object {old}")));
            }
            new_obj[old] = new;
        }
        let arrow_map: Vec<ArrowId> = (0..self.arrow_count())
            .filter(|&a| new_obj[self.arrow_i[a]] != usize::MAX && new_obj[self.arrow_t[a]] != usize::MAX)
            .collect();
        let mut new_arr = vec![usize::MAX; self.arrow_count()];
        for (new, &old) in arrow_map.iter().enumerate() {
            new_arr[old] = new;
        }
        let mut compose = BTreeMap::new();
        for (&(b, a), &ba) in &self.compose {
            if new_arr[b] != usize::MAX && new_arr[a] != usize::MAX {
                // Full sub-scwol: the composite's endpoints are endpoints of
                // b and a, so it is present too.
                compose.insert((new_arr[b], new_arr[a]), new_arr[ba]);
            }
        }
        let scwol = Scwol::new(
            object_map
                .iter()
                .map(|&o| self.object_names[o].clone())
                .collect(),
            arrow_map
                .iter()
                .map(|&a| self.arrow_names[a].clone())
                .collect(),
            arrow_map
                .iter()
                .map(|&a| (new_obj[self.arrow_i[a]], new_obj[self.arrow_t[a]]))
                .collect(),
            compose,
        )?;
        Ok(SubScwol {
            scwol,
            object_map,
            arrow_map,
        })
    }
}

/// A full sub-scwol together with the inclusion data back into its parent.
#[derive(Clone, Debug)]
pub struct SubScwol {
    pub scwol: Scwol,
    /// For each object of `scwol`, the corresponding parent object.
    pub object_map: Vec<ObjectId>,
    /// For each arrow of `scwol`, the corresponding parent arrow.
    pub arrow_map: Vec<ArrowId>,
}

/// A composable tuple `(a_k, …, a_1)`, stored innermost-first:
/// `arrows[j] = a_{j+1}`, so `arrows = [a_1, …, a_k]`. The 0-tuple at an
/// object has empty `arrows`. Along the tuple the chain of objects is
/// `i(a_1) ⊋ t(a_1) ⊋ … ⊋ t(a_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComposableTuple {
    initial: ObjectId,
    arrows: Vec<ArrowId>,
}

impl ComposableTuple {
    /// The 0-tuple sitting at `obj`.
    pub fn object(obj: ObjectId) -> ComposableTuple {
        ComposableTuple {
            initial: obj,
            arrows: Vec::new(),
        }
    }

    /// Builds `(a_k, …, a_1)` from `[a_1, …, a_k]`, checking composability.
    pub fn new(scwol: &Scwol, arrows: Vec<ArrowId>) -> Result<ComposableTuple> {
        let Some(&first) = arrows.first() else {
            return Err(Error::IndexOutOfRange(
                "a tuple from arrows needs at least one arrow; use ComposableTuple::object".into(),
            ));
        };
        for w in arrows.windows(2) {
            if scwol.i(w[1]) != scwol.t(w[0]) {
                return Err(Error::NotComposable {
                    outer: w[1],
                    inner: w[0],
                });
            }
        }
        Ok(ComposableTuple {
            initial: scwol.i(first),
            arrows,
        })
    }

    /// Tuple length k.
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Arrows innermost-first: `[a_1, …, a_k]`.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The initial object `i(a_1)` (or the object itself for 0-tuples).
    pub fn i_obj(&self) -> ObjectId {
        self.initial
    }

    /// The terminal object `t(a_k)` (or the object itself for 0-tuples).
    pub fn t_obj(&self, scwol: &Scwol) -> ObjectId {
        self.arrows.last().map_or(self.initial, |&a| scwol.t(a))
    }

    /// The chain of objects `σ_0 ⊋ σ_1 ⊋ … ⊋ σ_k` the tuple traverses.
    pub fn chain_objects(&self, scwol: &Scwol) -> Vec<ObjectId> {
        let mut chain = vec![self.initial];
        chain.extend(self.arrows.iter().map(|&a| scwol.t(a)));
        chain
    }
}

/// The scwol of a simplicial complex. Object `i` is simplex `i` of `k` (same
/// index, named by the simplex key); arrows are the strict face pairs, named
/// `"<smaller key><<larger key>"` and ordered by (terminal, initial) simplex
/// index.
pub fn scwol_of_complex(k: &SimplicialComplex) -> Scwol {
    let object_names: Vec<String> = (0..k.simplex_count()).map(|i| k.simplex_key(i)).collect();
    let mut ends = Vec::new();
    for t_idx in 0..k.simplex_count() {
        for i_idx in 0..k.simplex_count() {
            let (s, l) = (k.simplex(t_idx), k.simplex(i_idx));
            if s.dim() < l.dim() && s.is_face_of(l) {
                ends.push((i_idx, t_idx));
            }
        }
    }
    let arrow_names: Vec<String> = ends
        .iter()
        .map(|&(i, t)| format!("{}<{}", k.simplex_key(t), k.simplex_key(i)))
        .collect();
    let by_ends: BTreeMap<(ObjectId, ObjectId), ArrowId> = ends
        .iter()
        .enumerate()
        .map(|(idx, &e)| (e, idx))
        .collect();
    let mut compose = BTreeMap::new();
    for (b, &(bi, bt)) in ends.iter().enumerate() {
        for (a, &(ai, at)) in ends.iter().enumerate() {
            if bi == at {
                compose.insert((b, a), by_ends[&(ai, bt)]);
            }
        }
    }
    Scwol::new(object_names, arrow_names, ends, compose)
        .expect("face pairs of a complex always satisfy the scwol axioms")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_scwol() -> Scwol {
        let x = SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        scwol_of_complex(&x)
    }

    /// Oracle: count strict simplex chains of a given length directly.
    fn chain_oracle(x: &SimplicialComplex, len: usize) -> usize {
        fn extend(x: &SimplicialComplex, top: usize, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            (0..x.simplex_count())
                .filter(|&j| {
                    x.simplex(top).dim() < x.simplex(j).dim()
                        && x.simplex(top).is_face_of(x.simplex(j))
                })
                .map(|j| extend(x, j, left - 1))
                .sum()
        }
        // A chain read from the big end corresponds to a tuple; counting from
        // the small end upward gives the same number.
        (0..x.simplex_count()).map(|i| extend(x, i, len)).sum()
    }

    #[test]
    fn triangle_scwol_counts() {
        let x = SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        let s = scwol_of_complex(&x);
        assert_eq!(s.object_count(), 7);
        assert_eq!(s.arrow_count(), 12);
        assert_eq!(s.composable_tuples(2).len(), 6);
        assert_eq!(s.composable_tuples(3).len(), 0);
        assert_eq!(s.arrow_count(), chain_oracle(&x, 1));
        assert_eq!(s.composable_tuples(2).len(), chain_oracle(&x, 2));
        // k = 0 tuples are the objects.
        let objs = s.composable_tuples(0);
        assert_eq!(objs.len(), 7);
        assert_eq!(objs[0], ComposableTuple::object(0));
    }

    #[test]
    fn edge_and_vertex_scwols() {
        let edge = SimplicialComplex::from_names(&["u", "w"], &[&["u", "w"]]).unwrap();
        let s = scwol_of_complex(&edge);
        assert_eq!((s.object_count(), s.arrow_count()), (3, 2));
        assert!(s.composable_tuples(2).is_empty());
        assert_eq!(s.arrow_name(0), "u<u,w");
        assert_eq!(s.i(0), s.object_id("u,w").unwrap());
        assert_eq!(s.t(0), s.object_id("u").unwrap());

        let v = SimplicialComplex::from_names(&["p"], &[]).unwrap();
        let s = scwol_of_complex(&v);
        assert_eq!((s.object_count(), s.arrow_count()), (1, 0));
    }

    #[test]
    fn boundaries_follow_the_chain_deletion_rule() {
        let s = triangle_scwol();
        let pair = &s.composable_tuples(2)[0];
        let (a1, a2) = (pair.arrows()[0], pair.arrows()[1]);
        // ∂_1 composes the two arrows.
        let composed = s.tuple_boundary(pair, 1).unwrap();
        assert_eq!(composed.arrows(), &[s.compose(a2, a1).unwrap()]);
        // ∂_0 drops the inner arrow, ∂_2 the outer one.
        assert_eq!(s.tuple_boundary(pair, 0).unwrap().arrows(), &[a2]);
        assert_eq!(s.tuple_boundary(pair, 2).unwrap().arrows(), &[a1]);
        // Single arrows: ∂_0 deletes the initial object, keeping t(a); ∂_1
        // keeps i(a).
        let one = ComposableTuple::new(&s, vec![a1]).unwrap();
        assert_eq!(s.tuple_boundary(&one, 0).unwrap(), ComposableTuple::object(s.t(a1)));
        assert_eq!(s.tuple_boundary(&one, 1).unwrap(), ComposableTuple::object(s.i(a1)));
        assert!(s.tuple_boundary(&one, 2).is_err());
    }

    #[test]
    fn semi_simplicial_identities_up_to_length_four() {
        // The scwol of a 4-simplex has composable tuples up to length 4.
        let names = ["p", "q", "r", "s", "t"];
        let x = SimplicialComplex::from_names(&names, &[&names]).unwrap();
        let s = scwol_of_complex(&x);
        let mut checked = 0usize;
        for k in 2..=4 {
            for tup in s.composable_tuples(k) {
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = s
                            .tuple_boundary(&s.tuple_boundary(&tup, j).unwrap(), i)
                            .unwrap();
                        let rhs = s
                            .tuple_boundary(&s.tuple_boundary(&tup, i).unwrap(), j - 1)
                            .unwrap();
                        assert_eq!(lhs, rhs, "∂_{i}∂_{j} on {tup:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000, "the check must actually cover tuples");
    }

    #[test]
    fn long_composition_and_chains() {
        let names = ["p", "q", "r", "s"];
        let x = SimplicialComplex::from_names(&names, &[&names]).unwrap();
        let s = scwol_of_complex(&x);
        for tup in s.composable_tuples(3) {
            let c = s.compose_tuple(&tup).unwrap().unwrap();
            assert_eq!(s.i(c), tup.i_obj());
            assert_eq!(s.t(c), tup.t_obj(&s));
            let chain = tup.chain_objects(&s);
            assert_eq!(chain.len(), 4);
            assert_eq!(chain[0], tup.i_obj());
            assert_eq!(chain[3], tup.t_obj(&s));
        }
        assert_eq!(
            s.compose_tuple(&ComposableTuple::object(0)).unwrap(),
            None
        );
    }

    #[test]
    fn sub_scwol_of_simplices_containing_an_edge() {
        let x = SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        let s = scwol_of_complex(&x);
        let edge_uv = x.parse_key("u,v").unwrap();
        let keep: Vec<ObjectId> = (0..x.simplex_count())
            .filter(|&i| x.simplex(edge_uv).is_face_of(x.simplex(i)))
            .collect();
        let sub = s.sub_scwol(&keep).unwrap();
        assert_eq!(sub.scwol.object_count(), 2);
        assert_eq!(sub.scwol.arrow_count(), 1);
        assert_eq!(sub.object_map, vec![edge_uv, 6]);
        assert_eq!(sub.scwol.object_name(0), "u,v");
        assert_eq!(sub.scwol.object_name(1), "u,v,w");
    }

    #[test]
    fn axiom_violations_are_rejected()  {
        // A loop arrow.
        assert!(Scwol::new(
            vec!["x".into()],
            vec!["l".into()],
            vec![(0, 0)],
            BTreeMap::new()
        )
        .is_err());
        // Missing composite for a composable pair.
        let err = Scwol::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2), (0, 2)],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("missing composite"));
        // Composite with wrong endpoints.
        let mut bad = BTreeMap::new();
        bad.insert((1usize, 0usize), 0usize);
        assert!(Scwol::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2), (0, 2)],
            bad,
        )
        .is_err());
    }

    #[test]
    fn direct_arrows_exist_exactly_for_face_pairs() {
        let x = SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        let s = scwol_of_complex(&x);
        let tri = x.parse_key("u,v,w").unwrap();
        let u = x.parse_key("u").unwrap();
        let uv = x.parse_key("u,v").unwrap();
        assert!(s.direct_arrow(tri, u).is_some());
        assert!(s.direct_arrow(uv, u).is_some());
        assert!(s.direct_arrow(u, tri).is_none());
        assert!(s.direct_arrow(u, u).is_none());
    }
}
