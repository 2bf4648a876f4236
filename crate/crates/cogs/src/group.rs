//! Finite permutation groups, fully enumerated.
//!
//! Groups here are small by design: element sets are enumerated up front
//! (bounded by a cap), and every structural claim about them — that a map is
//! a homomorphism, that a subset is a subgroup, that a coset map is well
//! defined — is checked exhaustively rather than sampled. The canonical
//! element order is lexicographic on 1-based image arrays, so element ids are
//! stable across runs and the identity is always element 0.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use std::collections::HashMap;
use std::sync::Arc;

/// Index of an element in a group's canonical element order.
pub type ElemId = usize;

/// Default cap on the number of enumerated elements (7!).
pub const DEFAULT_ELEMENT_CAP: usize = 5040;

/// A finite permutation group with a fully enumerated element list.
#[derive(Clone, Debug)]
pub struct FinGroup {
    degree: u16,
    gens: Vec<Permutation>,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    inverse: Vec<ElemId>,
    /// Generator word for each element (indices into `gens`, applied left to
    /// right under [`FinGroup::mul`]'s convention). Used to extend generator
    /// images to whole-group maps.
    words: Vec<Vec<usize>>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elems == other.elems
    }
}
impl Eq for FinGroup {}

impl FinGroup {
    /// Enumerates the subgroup of `Sym(degree)` generated by `gens`.
    ///
    /// Fails with [`Error::GroupCapExceeded`] if more than `cap` elements are
    /// found, and rejects generators of the wrong degree.
    pub fn generate(degree: u16, gens: Vec<Permutation>, cap: usize) -> Result<Arc<FinGroup>> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::GroupMismatch(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut words: HashMap<Permutation, Vec<usize>> = HashMap::new();
        words.insert(id.clone(), Vec::new());
        let mut frontier = vec![id];
        while let Some(e) = frontier.pop() {
            let base_word = words[&e].clone();
            for (gi, g) in gens.iter().enumerate() {
                let next = e.mul(g);
                if !words.contains_key(&next) {
                    if words.len() >= cap {
                        return Err(Error::GroupCapExceeded { cap });
                    }
                    let mut w = base_word.clone();
                    w.push(gi);
                    words.insert(next.clone(), w);
                    frontier.push(next);
                }
            }
        }
        let mut elems: Vec<Permutation> = words.keys().cloned().collect();
        elems.sort();
        let index: HashMap<Permutation, ElemId> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverse = elems.iter().map(|p| index[&p.inverse()]).collect();
        let words = elems.iter().map(|p| words.remove(p).unwrap()).collect();
        Ok(Arc::new(FinGroup {
            degree,
            gens,
            elems,
            index,
            inverse,
            words,
        }))
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: u16) -> Arc<FinGroup> {
        FinGroup::generate(degree, Vec::new(), 1).expect("trivial group fits any cap")
    }

    /// Builds the subgroup consisting exactly of `elems` (ids in `self`),
    /// verifying closure. Its canonical order is inherited from `self`.
    pub fn subgroup(self: &Arc<Self>, elems: &[ElemId]) -> Result<Arc<FinGroup>> {
        if !self.is_subgroup_set(elems) {
            return Err(Error::NotASubgroup(elems.len()));
        }
        let mut sub_elems: Vec<Permutation> =
            elems.iter().map(|&e| self.elems[e].clone()).collect();
        sub_elems.sort();
        sub_elems.dedup();
        let index: HashMap<Permutation, ElemId> = sub_elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let inverse = sub_elems.iter().map(|p| index[&p.inverse()]).collect();
        let gens: Vec<Permutation> = sub_elems
            .iter()
            .filter(|p| !p.is_identity())
            .cloned()
            .collect();
        // Subgroup elements are their own generating set; words are trivial to
        // reconstruct (each nonidentity element is a one-letter word).
        let words = sub_elems
            .iter()
            .map(|p| {
                if p.is_identity() {
                    Vec::new()
                } else {
                    vec![gens.iter().position(|g| g == p).unwrap()]
                }
            })
            .collect();
        Ok(Arc::new(FinGroup {
            degree: self.degree,
            gens,
            elems: sub_elems,
            index,
            inverse,
            words,
        }))
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Id of the identity element (always 0 in the canonical order).
    pub fn id(&self) -> ElemId {
        0
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn elems(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn elem(&self, e: ElemId) -> &Permutation {
        &self.elems[e]
    }

    /// Looks up an element id by value.
    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    /// Like [`FinGroup::id_of`] but an error when absent.
    pub fn require(&self, p: &Permutation) -> Result<ElemId> {
        self.id_of(p)
            .ok_or_else(|| Error::NotAGroupElement(p.one_based()))
    }

    /// `a * b`: apply `b` first, then `a`.
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.index[&self.elems[a].mul(&self.elems[b])]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a]
    }

    /// `g * x * g^-1`.
    pub fn conj(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn word(&self, e: ElemId) -> &[usize] {
        &self.words[e]
    }

    /// True when `elems` (ids, duplicates allowed) is closed under product
    /// and inverse and contains the identity.
    pub fn is_subgroup_set(&self, elems: &[ElemId]) -> bool {
        let set: std::collections::BTreeSet<ElemId> = elems.iter().copied().collect();
        if !set.contains(&self.id()) {
            return false;
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return false;
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// All subgroups as sorted id sets, in lexicographic order.
    ///
    /// Brute force over subsets containing the identity; guarded so it is
    /// only used at the scales this crate works at.
    pub fn all_subgroups(&self) -> Result<Vec<Vec<ElemId>>> {
        const LIMIT: usize = 16;
        let n = self.order();
        if n > LIMIT {
            return Err(Error::SubgroupEnumerationTooLarge {
                order: n,
                limit: LIMIT,
            });
        }
        let rest: Vec<ElemId> = (1..n).collect();
        let mut found = Vec::new();
        for mask in 0u32..(1 << rest.len()) {
            let mut cand = vec![self.id()];
            for (i, &e) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    cand.push(e);
                }
            }
            if self.is_subgroup_set(&cand) {
                found.push(cand);
            }
        }
        found.sort();
        Ok(found)
    }
}

/// A partition of a group into left cosets `g·H` of a subgroup `H`.
///
/// Cosets are listed in order of their least element, which is also the
/// stored representative, so coset ids are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    /// Sorted ids of the subgroup's elements.
    pub subgroup: Vec<ElemId>,
    /// Each coset as a sorted id list.
    pub cosets: Vec<Vec<ElemId>>,
    /// Least element of each coset.
    pub reps: Vec<ElemId>,
    coset_of: Vec<usize>,
}

impl CosetPartition {
    pub fn count(&self) -> usize {
        self.cosets.len()
    }

    /// The coset containing `g`.
    pub fn coset_of(&self, g: ElemId) -> usize {
        self.coset_of[g]
    }
}

/// Partitions `group` into left cosets of the subgroup given by `sub_elems`.
pub fn left_cosets(group: &FinGroup, sub_elems: &[ElemId]) -> Result<CosetPartition> {
    if !group.is_subgroup_set(sub_elems) {
        return Err(Error::NotASubgroup(sub_elems.len()));
    }
    let mut subgroup: Vec<ElemId> = sub_elems.to_vec();
    subgroup.sort();
    subgroup.dedup();
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut cosets = Vec::new();
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let mut coset: Vec<ElemId> = subgroup.iter().map(|&h| group.mul(g, h)).collect();
        coset.sort();
        let cid = cosets.len();
        for &m in &coset {
            coset_of[m] = cid;
        }
        reps.push(coset[0]);
        debug_assert_eq!(coset[0], g, "sweep order makes the first member least");
        cosets.push(coset);
    }
    Ok(CosetPartition {
        subgroup,
        cosets,
        reps,
        coset_of,
    })
}

/// A homomorphism between two enumerated groups, stored as a total map on
/// element ids and verified multiplicative on every pair at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FinGroup>,
    target: Arc<FinGroup>,
    images: Vec<ElemId>,
    preimage: HashMap<ElemId, ElemId>,
}

impl GroupHom {
    /// Builds from a total image table, verifying `f(ab) = f(a)f(b)` on all
    /// pairs and `f(1) = 1`.
    pub fn new(
        source: Arc<FinGroup>,
        target: Arc<FinGroup>,
        images: Vec<ElemId>,
    ) -> Result<GroupHom> {
        if images.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "image table has {} entries for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(Error::IndexOutOfRange(format!(
                "hom image id {bad} exceeds target order {}",
                target.order()
            )));
        }
        if images[source.id()] != target.id() {
            return Err(Error::NotAHomomorphism(
                "identity does not map to identity".into(),
            ));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                let lhs = images[source.mul(a, b)];
                let rhs = target.mul(images[a], images[b]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({a} * {b}) = {lhs} but f({a}) f({b}) = {rhs}"
                    )));
                }
            }
        }
        let mut preimage = HashMap::new();
        for (src, &img) in images.iter().enumerate() {
            preimage.entry(img).or_insert(src);
        }
        Ok(GroupHom {
            source,
            target,
            images,
            preimage,
        })
    }

    /// Extends generator images (one target element per source generator) to
    /// the whole group along generator words, then verifies as in
    /// [`GroupHom::new`].
    pub fn from_gen_images(
        source: Arc<FinGroup>,
        target: Arc<FinGroup>,
        gen_images: &[Permutation],
    ) -> Result<GroupHom> {
        if gen_images.len() != source.gens().len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                source.gens().len()
            )));
        }
        let gen_ids: Vec<ElemId> = gen_images
            .iter()
            .map(|p| target.require(p))
            .collect::<Result<_>>()?;
        let images: Vec<ElemId> = (0..source.order())
            .map(|e| {
                source
                    .word(e)
                    .iter()
                    .fold(target.id(), |acc, &gi| target.mul(acc, gen_ids[gi]))
            })
            .collect();
        GroupHom::new(source, target, images)
    }

    /// The identity automorphism.
    pub fn identity(group: Arc<FinGroup>) -> GroupHom {
        let images = (0..group.order()).collect();
        GroupHom::new(group.clone(), group, images).expect("identity is a homomorphism")
    }

    /// The map sending everything to the identity.
    pub fn trivial(source: Arc<FinGroup>, target: Arc<FinGroup>) -> GroupHom {
        let images = vec![target.id(); source.order()];
        GroupHom::new(source, target, images).expect("constant identity is a homomorphism")
    }

    /// The inclusion of a subgroup whose elements all occur in `target`
    /// (matched by permutation value).
    pub fn inclusion(source: Arc<FinGroup>, target: Arc<FinGroup>) -> Result<GroupHom> {
        let images = source
            .elems()
            .iter()
            .map(|p| target.require(p))
            .collect::<Result<_>>()?;
        GroupHom::new(source, target, images)
    }

    /// Conjugation by `g`: `x -> g x g^-1`, an automorphism of `group`.
    pub fn conjugation(group: Arc<FinGroup>, g: ElemId) -> GroupHom {
        let images = (0..group.order()).map(|x| group.conj(g, x)).collect();
        GroupHom::new(group.clone(), group, images).expect("conjugation is a homomorphism")
    }

    /// `second ∘ first`, requiring the middle groups to agree.
    pub fn compose(second: &GroupHom, first: &GroupHom) -> Result<GroupHom> {
        if first.target != second.source {
            return Err(Error::GroupMismatch(
                "hom composition with mismatched middle group".into(),
            ));
        }
        let images = first.images.iter().map(|&m| second.images[m]).collect();
        GroupHom::new(first.source(), second.target(), images)
    }

    pub fn source(&self) -> Arc<FinGroup> {
        self.source.clone()
    }

    pub fn target(&self) -> Arc<FinGroup> {
        self.target.clone()
    }

    pub fn apply(&self, e: ElemId) -> ElemId {
        self.images[e]
    }

    /// The total image table over the source's canonical element order.
    pub fn images(&self) -> &[ElemId] {
        &self.images
    }

    /// Sorted ids of the image subgroup inside the target.
    pub fn image(&self) -> Vec<ElemId> {
        let mut img: Vec<ElemId> = self.images.clone();
        img.sort();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.order()
    }

    /// The unique preimage of `img` when the hom is injective and `img` is in
    /// the image.
    pub fn preimage_of(&self, img: ElemId) -> Option<ElemId> {
        self.preimage.get(&img).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FinGroup> {
        FinGroup::generate(
            3,
            vec![
                Permutation::from_cycles(3, &[&[1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    fn c6() -> Arc<FinGroup> {
        FinGroup::generate(
            6,
            vec![Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap()],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    /// Oracle: closure computed by repeated multiplication over a set,
    /// independent of the BFS in `generate`.
    fn closure_oracle(degree: u16, gens: &[Permutation]) -> usize {
        let mut set = std::collections::BTreeSet::new();
        set.insert(Permutation::identity(degree));
        loop {
            let mut next = set.clone();
            for a in &set {
                for g in gens {
                    next.insert(a.mul(g));
                    next.insert(g.mul(a));
                }
            }
            if next.len() == set.len() {
                return set.len();
            }
            set = next;
        }
    }

    #[test]
    fn s3_has_order_six() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.order(), closure_oracle(3, g.gens()));
        assert_eq!(g.id(), 0);
        assert!(g.elem(0).is_identity());
    }

    #[test]
    fn cap_is_enforced() {
        let err = FinGroup::generate(
            3,
            vec![
                Permutation::from_cycles(3, &[&[1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap(),
            ],
            5,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GroupCapExceeded { cap: 5 }));
    }

    #[test]
    fn multiplication_is_associative() {
        let g = s3();
        for a in 0..g.order() {
            for b in 0..g.order() {
                for c in 0..g.order() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn conjugation_in_s3_matches_hand_computation() {
        // Conjugating (1 2) by (1 2 3) gives (2 3).
        let g = s3();
        let t12 = g
            .require(&Permutation::from_cycles(3, &[&[1, 2]]).unwrap())
            .unwrap();
        let r = g
            .require(&Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap())
            .unwrap();
        let conj = GroupHom::conjugation(g.clone(), r);
        let t23 = g
            .require(&Permutation::from_cycles(3, &[&[2, 3]]).unwrap())
            .unwrap();
        assert_eq!(conj.apply(t12), t23);
        assert!(conj.is_injective());
        // Automorphism: image covers the group.
        assert_eq!(conj.image().len(), g.order());
    }

    #[test]
    fn cosets_of_an_order_two_subgroup_of_c6() {
        let g = c6();
        let r3 = g
            .require(&Permutation::from_cycles(6, &[&[1, 4], &[2, 5], &[3, 6]]).unwrap())
            .unwrap();
        let part = left_cosets(&g, &[g.id(), r3]).unwrap();
        assert_eq!(part.count(), 3);
        // Sizes all equal |H| and reps are least members.
        for (cid, coset) in part.cosets.iter().enumerate() {
            assert_eq!(coset.len(), 2);
            assert_eq!(part.reps[cid], coset[0]);
        }
        // Whole group and trivial subgroup edge cases.
        let all: Vec<ElemId> = (0..g.order()).collect();
        assert_eq!(left_cosets(&g, &all).unwrap().count(), 1);
        assert_eq!(left_cosets(&g, &[g.id()]).unwrap().count(), g.order());
        // Left action permutes cosets.
        for g0 in 0..g.order() {
            for x in 0..g.order() {
                let moved = part.coset_of(g.mul(g0, x));
                assert_eq!(moved, part.coset_of(g.mul(g0, part.reps[part.coset_of(x)])));
            }
        }
    }

    #[test]
    fn cosets_reject_non_subgroups() {
        let g = s3();
        let t12 = g
            .require(&Permutation::from_cycles(3, &[&[1, 2]]).unwrap())
            .unwrap();
        let t13 = g
            .require(&Permutation::from_cycles(3, &[&[1, 3]]).unwrap())
            .unwrap();
        assert!(left_cosets(&g, &[g.id(), t12, t13]).is_err());
    }

    #[test]
    fn hom_from_generator_images_c2_into_c6() {
        let c2 = FinGroup::generate(
            2,
            vec![Permutation::from_cycles(2, &[&[1, 2]]).unwrap()],
            10,
        )
        .unwrap();
        let c6 = c6();
        let r3 = Permutation::from_cycles(6, &[&[1, 4], &[2, 5], &[3, 6]]).unwrap();
        let f = GroupHom::from_gen_images(c2.clone(), c6.clone(), &[r3]).unwrap();
        assert!(f.is_injective());
        assert_eq!(f.image().len(), 2);
        // A non-homomorphism is rejected: sending an involution to an element
        // of order 6 cannot extend.
        let r = Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap();
        assert!(GroupHom::from_gen_images(c2, c6, &[r]).is_err());
    }

    #[test]
    fn hom_composition_is_associative_on_fixtures() {
        let g = s3();
        let a = GroupHom::conjugation(g.clone(), 1);
        let b = GroupHom::conjugation(g.clone(), 2);
        let c = GroupHom::conjugation(g.clone(), 3);
        let ab_c = GroupHom::compose(&GroupHom::compose(&a, &b).unwrap(), &c).unwrap();
        let a_bc = GroupHom::compose(&a, &GroupHom::compose(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn subgroup_enumeration_of_s3() {
        // S3 has six subgroups: 1, three <transposition>, <(123)>, S3.
        let g = s3();
        let subs = g.all_subgroups().unwrap();
        assert_eq!(subs.len(), 6);
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
        for s in &subs {
            assert!(g.is_subgroup_set(s));
        }
    }

    #[test]
    fn subgroup_construction_inherits_canonical_order() {
        let g = c6();
        let r2 = g
            .require(&Permutation::from_cycles(6, &[&[1, 3, 5], &[2, 4, 6]]).unwrap())
            .unwrap();
        let sub = g.subgroup(&[g.id(), r2, g.mul(r2, r2)]).unwrap();
        assert_eq!(sub.order(), 3);
        assert!(sub.elem(0).is_identity());
        let inc = GroupHom::inclusion(sub.clone(), g.clone()).unwrap();
        assert!(inc.is_injective());
    }
}
