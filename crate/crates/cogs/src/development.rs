//! Blocks, canonical block morphisms, and developments.
//!
//! The block of an object `σ` is the full sub-scwol on the objects that map
//! into it, carrying the restricted complex of groups and a canonical
//! morphism to the local group `G_σ`. Developing a morphism that is
//! injective on local groups unrolls the base into a scwol of cosets with a
//! group action whose quotient recovers the base; developing a block yields
//! the local development, which is always a simplicial cone.
//!
//! Orientation convention: development objects over `τ` are left cosets
//! `g·F_τ(G_τ)` of the image of the local group, the group acts on the left,
//! and the `t`-map multiplies the representative by `F(a)⁻¹` on the right.
//! Every map on cosets is checked over *all* representatives at construction
//! time, so a convention bug cannot pass silently.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use crate::cog::{validate_morphism_to_group, ComplexOfGroups, MorphismToGroup};
use crate::error::{Error, Result};
use crate::group::{left_cosets, CosetPartition, ElemId, FinGroup};
use crate::scwol::{ArrowId, ObjectId, Scwol, SubScwol};

/// The block of an object: the full sub-scwol on the objects lying over it,
/// its restricted complex of groups, and the canonical morphism to the local
/// group at the centre.
#[derive(Clone, Debug)]
pub struct Block {
    base_object: ObjectId,
    apex: ObjectId,
    object_map: Vec<ObjectId>,
    arrow_map: Vec<ArrowId>,
    morphism: MorphismToGroup,
}

impl Block {
    /// The centre object, in ambient coordinates.
    pub fn base_object(&self) -> ObjectId {
        self.base_object
    }

    /// The centre object, in block coordinates.
    pub fn apex(&self) -> ObjectId {
        self.apex
    }

    /// The restricted complex of groups over the block scwol.
    pub fn cog(&self) -> &ComplexOfGroups {
        self.morphism.cog()
    }

    pub fn scwol(&self) -> &Scwol {
        self.morphism.cog().base()
    }

    /// The canonical morphism to the local group at the centre. It passes
    /// validation and is injective on local groups by construction.
    pub fn morphism(&self) -> &MorphismToGroup {
        &self.morphism
    }

    /// Ambient object of a block object.
    pub fn ambient_object(&self, o: ObjectId) -> ObjectId {
        self.object_map[o]
    }

    /// Ambient arrow of a block arrow.
    pub fn ambient_arrow(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a]
    }

    /// The block object over an ambient object, when it lies in the block.
    pub fn block_object(&self, ambient: ObjectId) -> Option<ObjectId> {
        self.object_map.binary_search(&ambient).ok()
    }

    /// The block arrow over an ambient arrow, when it lies in the block.
    pub fn block_arrow(&self, ambient: ArrowId) -> Option<ArrowId> {
        self.arrow_map.binary_search(&ambient).ok()
    }
}

/// Builds the block of `sigma`: objects are `sigma` itself and every object
/// with an arrow into it, the complex of groups restricts along the
/// inclusion, and the canonical morphism to `G_sigma` has object maps
/// `ψ_{sigma,τ}` and arrow elements `g_{b,a}` (for `b` the arrow from `t(a)`
/// to `sigma`; the identity when `t(a) = sigma`).
///
/// Fails when the restricted data does not yield a developability witness —
/// which happens exactly when the ambient complex of groups is itself
/// invalid at the block.
pub fn block(c: &ComplexOfGroups, sigma: ObjectId) -> Result<Block> {
    let base = c.base();
    if sigma >= base.object_count() {
        return Err(Error::IndexOutOfRange(format!("object {sigma}")));
    }
    let objects: Vec<ObjectId> = (0..base.object_count())
        .filter(|&o| o == sigma || base.direct_arrow(o, sigma).is_some())
        .collect();
    let SubScwol {
        scwol,
        object_map,
        arrow_map,
    } = base.sub_scwol(&objects)?;
    let groups: Vec<Arc<FinGroup>> = object_map.iter().map(|&o| c.group(o).clone()).collect();
    let psi = arrow_map.iter().map(|&a| c.psi(a).clone()).collect();
    let mut twists = BTreeMap::new();
    for pair in scwol.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let g = c.twist(arrow_map[b], arrow_map[a]);
        if g != 0 {
            twists.insert((b, a), g);
        }
    }
    let target = c.group(sigma).clone();
    let f_obj = object_map
        .iter()
        .map(|&o| c.psi_to(o, sigma))
        .collect::<Result<Vec<_>>>()?;
    let f_arrow = arrow_map
        .iter()
        .map(|&a| {
            let ta = base.t(a);
            if ta == sigma {
                0
            } else {
                let b = base
                    .direct_arrow(ta, sigma)
                    .expect("block objects map into the centre");
                c.twist(b, a)
            }
        })
        .collect();
    let apex = object_map
        .binary_search(&sigma)
        .expect("the centre lies in its own block");
    let cog = ComplexOfGroups::new(scwol, groups, psi, twists)?;
    let morphism = MorphismToGroup::new(cog, target, f_obj, f_arrow)?;
    let verdict = validate_morphism_to_group(&morphism);
    if !verdict.is_witness() {
        return Err(Error::NotAWitness(format!(
            "canonical morphism of the block at `{}` fails: {}",
            base.object_name(sigma),
            verdict
                .violations
                .first()
                .map(|v| format!("{} at {}", v.rule, v.witness))
                .unwrap_or_else(|| "an object map is not injective".into())
        )));
    }
    Ok(Block {
        base_object: sigma,
        apex,
        object_map,
        arrow_map,
        morphism,
    })
}

/// The development of a morphism to a group: a scwol of cosets, the action
/// of the target group on it, and the morphism it came from.
#[derive(Clone, Debug)]
pub struct Development {
    scwol: Scwol,
    object_labels: Vec<(ElemId, ObjectId)>,
    arrow_labels: Vec<(ElemId, ArrowId)>,
    object_offsets: Vec<usize>,
    arrow_offsets: Vec<usize>,
    object_action: Vec<Vec<ObjectId>>,
    arrow_action: Vec<Vec<ArrowId>>,
    cosets: Vec<CosetPartition>,
    morphism: MorphismToGroup,
}

impl Development {
    pub fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    /// The base scwol that was developed.
    pub fn base(&self) -> &Scwol {
        self.morphism.cog().base()
    }

    /// The acting group (the morphism target).
    pub fn group(&self) -> &Arc<FinGroup> {
        self.morphism.target()
    }

    pub fn morphism(&self) -> &MorphismToGroup {
        &self.morphism
    }

    /// Label of a development object: canonical coset representative and
    /// base object.
    pub fn object_label(&self, o: ObjectId) -> (ElemId, ObjectId) {
        self.object_labels[o]
    }

    /// Label of a development arrow: canonical coset representative and base
    /// arrow.
    pub fn arrow_label(&self, a: ArrowId) -> (ElemId, ArrowId) {
        self.arrow_labels[a]
    }

    /// The fibre of development objects over a base object, as a contiguous
    /// id range.
    pub fn objects_over(&self, base_obj: ObjectId) -> Range<ObjectId> {
        self.object_offsets[base_obj]..self.object_offsets[base_obj + 1]
    }

    /// The fibre of development arrows over a base arrow.
    pub fn arrows_over(&self, base_arrow: ArrowId) -> Range<ArrowId> {
        self.arrow_offsets[base_arrow]..self.arrow_offsets[base_arrow + 1]
    }

    /// The object of the identity coset over a base object.
    pub fn identity_object_over(&self, base_obj: ObjectId) -> ObjectId {
        debug_assert_eq!(self.cosets[base_obj].coset_of(0), 0);
        self.object_offsets[base_obj]
    }

    /// The coset partition of the local image in the target, per base object.
    pub fn coset_partition(&self, base_obj: ObjectId) -> &CosetPartition {
        &self.cosets[base_obj]
    }

    pub fn act_object(&self, g: ElemId, o: ObjectId) -> ObjectId {
        self.object_action[g][o]
    }

    pub fn act_arrow(&self, g: ElemId, a: ArrowId) -> ArrowId {
        self.arrow_action[g][a]
    }

    /// Elements fixing a development object.
    pub fn stabilizer(&self, o: ObjectId) -> Vec<ElemId> {
        (0..self.group().order())
            .filter(|&g| self.object_action[g][o] == o)
            .collect()
    }

    /// The sub-scwol of objects and arrows fixed by every element of the
    /// subgroup given by `h`.
    pub fn fixed_subscwol(&self, h: &[ElemId]) -> Result<SubScwol> {
        if !self.group().is_subgroup_set(h) {
            return Err(Error::NotASubgroup(h.len()));
        }
        let fixed: Vec<ObjectId> = (0..self.scwol.object_count())
            .filter(|&o| h.iter().all(|&g| self.object_action[g][o] == o))
            .collect();
        let sub = self.scwol.sub_scwol(&fixed)?;
        // An arrow is fixed exactly when its initial object is, so the full
        // sub-scwol on fixed objects has exactly the fixed arrows.
        debug_assert!(sub
            .arrow_map
            .iter()
            .all(|&a| h.iter().all(|&g| self.arrow_action[g][a] == a)));
        Ok(sub)
    }

    /// Collapses the action to its orbits and compares with the base scwol:
    /// the quotient matches when every fibre is a single orbit and the
    /// label-forgetting map preserves endpoints and composition. The
    /// returned maps send development cells to base cells.
    pub fn quotient_action(&self) -> QuotientCheck {
        let order = self.group().order();
        let base = self.base();
        let object_map: Vec<ObjectId> = self.object_labels.iter().map(|&(_, o)| o).collect();
        let arrow_map: Vec<ArrowId> = self.arrow_labels.iter().map(|&(_, a)| a).collect();
        let fibre_is_orbit = |members: Range<usize>, act: &[Vec<usize>]| {
            let first = members.start;
            let mut orbit: Vec<usize> = (0..order).map(|g| act[g][first]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit == members.collect::<Vec<_>>()
        };
        let mut matches = (0..base.object_count())
            .all(|o| fibre_is_orbit(self.objects_over(o), &self.object_action))
            && (0..base.arrow_count())
                .all(|a| fibre_is_orbit(self.arrows_over(a), &self.arrow_action));
        for a in 0..self.scwol.arrow_count() {
            matches &= object_map[self.scwol.i(a)] == base.i(arrow_map[a])
                && object_map[self.scwol.t(a)] == base.t(arrow_map[a]);
        }
        for pair in self.scwol.composable_tuples(2) {
            let a = pair.arrows()[0];
            let b = pair.arrows()[1];
            let ba = self.scwol.compose(b, a).expect("composable");
            matches &= base
                .compose(arrow_map[b], arrow_map[a])
                .is_ok_and(|c| c == arrow_map[ba]);
        }
        QuotientCheck {
            scwol: base.clone(),
            object_map,
            arrow_map,
            matches_base: matches,
        }
    }
}

/// Result of collapsing a development by its group action.
#[derive(Clone, Debug)]
pub struct QuotientCheck {
    /// The quotient scwol (the base of the developed morphism).
    pub scwol: Scwol,
    /// Development object → quotient object.
    pub object_map: Vec<ObjectId>,
    /// Development arrow → quotient arrow.
    pub arrow_map: Vec<ArrowId>,
    /// True when every fibre is one orbit and the projection is a scwol map.
    pub matches_base: bool,
}

/// Develops a morphism to a group.
///
/// Objects over a base object `τ` are the left cosets of `F_τ(G_τ)` in the
/// target; arrows over `a` are the left cosets of `F_{i(a)}(G_{i(a)})`, with
/// `i([g], a) = ([g], i(a))`, `t([g], a) = ([g·F(a)⁻¹], t(a))` and
/// `([g·F(a)⁻¹], b) ∘ ([g], a) = ([g], ba)`. The target group acts on the
/// left. Well-definedness of the `t`-map is checked over every coset
/// representative, every scwol axiom of the result is re-verified, and the
/// action is checked to be a group action by scwol automorphisms.
pub fn develop(m: &MorphismToGroup) -> Result<Development> {
    let verdict = validate_morphism_to_group(m);
    if let Some(v) = verdict.violations.first() {
        return Err(Error::NotAWitness(format!(
            "{} violations, first: {} at {}",
            verdict.violations.len(),
            v.rule,
            v.witness
        )));
    }
    if !verdict.injective_on_local_groups {
        return Err(Error::NotAWitness(
            "an object map is not injective on its local group".into(),
        ));
    }
    let base = m.cog().base();
    let group = m.target().clone();
    let order = group.order();
    let cosets: Vec<CosetPartition> = (0..base.object_count())
        .map(|o| left_cosets(&group, &m.f_obj(o).image()))
        .collect::<Result<_>>()?;

    let mut object_offsets = vec![0; base.object_count() + 1];
    for (o, cs) in cosets.iter().enumerate() {
        object_offsets[o + 1] = object_offsets[o] + cs.count();
    }
    let mut object_names = Vec::with_capacity(object_offsets[base.object_count()]);
    let mut object_labels = Vec::with_capacity(object_offsets[base.object_count()]);
    for (o, cs) in cosets.iter().enumerate() {
        for &rep in &cs.reps {
            object_names.push(format!("g{rep}:{}", base.object_name(o)));
            object_labels.push((rep, o));
        }
    }

    let mut arrow_offsets = vec![0; base.arrow_count() + 1];
    for a in 0..base.arrow_count() {
        arrow_offsets[a + 1] = arrow_offsets[a] + cosets[base.i(a)].count();
    }
    let mut arrow_names = Vec::with_capacity(arrow_offsets[base.arrow_count()]);
    let mut arrow_labels = Vec::with_capacity(arrow_offsets[base.arrow_count()]);
    let mut arrow_ends = Vec::with_capacity(arrow_offsets[base.arrow_count()]);
    // Terminal coset of each development arrow, reused for composition.
    let mut t_coset = Vec::with_capacity(arrow_offsets[base.arrow_count()]);
    for a in 0..base.arrow_count() {
        let ia = base.i(a);
        let ta = base.t(a);
        let fa_inv = group.inv(m.f_arrow(a));
        for c in 0..cosets[ia].count() {
            let rep = cosets[ia].reps[c];
            let tc = cosets[ta].coset_of(group.mul(rep, fa_inv));
            for &member in &cosets[ia].cosets[c] {
                if cosets[ta].coset_of(group.mul(member, fa_inv)) != tc {
                    return Err(Error::NotWellDefined(format!(
                        "terminal coset over arrow `{}` depends on the representative",
                        base.arrow_name(a)
                    )));
                }
            }
            arrow_names.push(format!("g{rep}:{}", base.arrow_name(a)));
            arrow_labels.push((rep, a));
            arrow_ends.push((object_offsets[ia] + c, object_offsets[ta] + tc));
            t_coset.push(tc);
        }
    }

    let mut compose = BTreeMap::new();
    for pair in base.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = base.compose(b, a)?;
        for c in 0..cosets[base.i(a)].count() {
            let alpha = arrow_offsets[a] + c;
            let beta = arrow_offsets[b] + t_coset[alpha];
            // i(ba) = i(a), so the composite reuses the coset of `alpha`.
            compose.insert((beta, alpha), arrow_offsets[ba] + c);
        }
    }
    let entries: Vec<((ArrowId, ArrowId), ArrowId)> =
        compose.iter().map(|(&k, &v)| (k, v)).collect();
    let scwol = Scwol::new(object_names, arrow_names, arrow_ends, compose)
        .map_err(|e| Error::NotWellDefined(format!("development structure check: {e}")))?;

    let object_action: Vec<Vec<ObjectId>> = (0..order)
        .map(|g| {
            object_labels
                .iter()
                .map(|&(rep, o)| object_offsets[o] + cosets[o].coset_of(group.mul(g, rep)))
                .collect()
        })
        .collect();
    let arrow_action: Vec<Vec<ArrowId>> = (0..order)
        .map(|g| {
            arrow_labels
                .iter()
                .map(|&(rep, a)| {
                    let ia = base.i(a);
                    arrow_offsets[a] + cosets[ia].coset_of(group.mul(g, rep))
                })
                .collect()
        })
        .collect();
    for g in 0..order {
        for alpha in 0..scwol.arrow_count() {
            let moved = arrow_action[g][alpha];
            if scwol.i(moved) != object_action[g][scwol.i(alpha)]
                || scwol.t(moved) != object_action[g][scwol.t(alpha)]
            {
                return Err(Error::NotWellDefined(format!(
                    "element {g} does not act by scwol maps at arrow `{}`",
                    scwol.arrow_name(alpha)
                )));
            }
        }
        for &((beta, alpha), gamma) in &entries {
            let composed = scwol.compose(arrow_action[g][beta], arrow_action[g][alpha])?;
            if composed != arrow_action[g][gamma] {
                return Err(Error::NotWellDefined(format!(
                    "element {g} does not preserve composition at ({beta}, {alpha})"
                )));
            }
        }
        for h in 0..order {
            let gh = group.mul(g, h);
            for o in 0..scwol.object_count() {
                if object_action[g][object_action[h][o]] != object_action[gh][o] {
                    return Err(Error::NotWellDefined(format!(
                        "action law fails at ({g}, {h}) on object `{}`",
                        scwol.object_name(o)
                    )));
                }
            }
        }
    }

    Ok(Development {
        scwol,
        object_labels,
        arrow_labels,
        object_offsets,
        arrow_offsets,
        object_action,
        arrow_action,
        cosets,
        morphism: m.clone(),
    })
}

/// Develops the block of `sigma` and certifies the cone structure: the
/// unique object over the centre is a 0-cell of the realization contained in
/// every maximal cell.
pub fn local_development(c: &ComplexOfGroups, sigma: ObjectId) -> Result<Development> {
    let blk = block(c, sigma)?;
    let dev = develop(blk.morphism())?;
    let apex_fibre = dev.objects_over(blk.apex());
    debug_assert_eq!(apex_fibre.len(), 1, "the centre has a single coset");
    let apex = apex_fibre.start;
    let delta = crate::delta::realize(dev.scwol());
    for (k, cell) in delta.maximal_cells() {
        if !delta.vertices_of(k, cell).contains(&apex) {
            return Err(Error::NotWellDefined(format!(
                "local development at `{}` is not a cone: maximal cell `{}` misses the apex",
                c.base().object_name(sigma),
                delta.label(k, cell)
            )));
        }
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{induce_from_action, ChoicePolicy, SimplicialAction};
    use crate::cog::trivial_cog;
    use crate::delta::realize;
    use crate::group::{GroupHom, DEFAULT_ELEMENT_CAP};
    use crate::homology::{
        chain_from_delta, euler_characteristic, homology, is_point_homology, is_simplicial_cone,
    };
    use crate::perm::Permutation;
    use crate::simplicial::SimplicialComplex;

    /// C6 as a rotation group on six points, with its order-2 and order-3
    /// subgroups at the same degree.
    fn c6_with_subgroups() -> (Arc<FinGroup>, Arc<FinGroup>, Arc<FinGroup>, Arc<FinGroup>) {
        let c6 = FinGroup::generate(
            6,
            vec![Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap()],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        let r3 = Permutation::from_cycles(6, &[&[1, 4], &[2, 5], &[3, 6]]).unwrap();
        let r2 = Permutation::from_cycles(6, &[&[1, 3, 5], &[2, 4, 6]]).unwrap();
        let c2 = FinGroup::generate(6, vec![r3], DEFAULT_ELEMENT_CAP).unwrap();
        let c3 = FinGroup::generate(6, vec![r2], DEFAULT_ELEMENT_CAP).unwrap();
        let triv = FinGroup::trivial(6);
        (c6, c2, c3, triv)
    }

    /// One edge `{u, w}` with `G_u = C2`, `G_w = C3`, trivial edge group.
    fn seg() -> ComplexOfGroups {
        let (_, c2, c3, triv) = c6_with_subgroups();
        let complex = SimplicialComplex::from_names(&["u", "w"], &[&["u", "w"]]).unwrap();
        let groups = vec![c2.clone(), c3.clone(), triv.clone()];
        let psi = vec![
            GroupHom::trivial(triv.clone(), c2),
            GroupHom::trivial(triv, c3),
        ];
        ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap()
    }

    /// The injective morphism from SEG into C6.
    fn seg_c6_witness() -> MorphismToGroup {
        let (c6, c2, c3, triv) = c6_with_subgroups();
        let f_obj = vec![
            GroupHom::inclusion(c2, c6.clone()).unwrap(),
            GroupHom::inclusion(c3, c6.clone()).unwrap(),
            GroupHom::inclusion(triv, c6.clone()).unwrap(),
        ];
        MorphismToGroup::new(seg(), c6, f_obj, vec![0, 0]).unwrap()
    }

    /// Full triangle with C2 at the vertex `v` and trivial groups elsewhere.
    fn tri3() -> ComplexOfGroups {
        let complex =
            SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        let c2 = FinGroup::generate(
            2,
            vec![Permutation::from_cycles(2, &[&[1, 2]]).unwrap()],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        let triv = FinGroup::trivial(2);
        let base = crate::scwol::scwol_of_complex(&complex);
        let v = base.object_id("v").unwrap();
        let groups: Vec<Arc<FinGroup>> = (0..base.object_count())
            .map(|o| if o == v { c2.clone() } else { triv.clone() })
            .collect();
        let psi = (0..base.arrow_count())
            .map(|a| GroupHom::trivial(groups[base.i(a)].clone(), groups[base.t(a)].clone()))
            .collect();
        ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap()
    }

    /// S3 permuting the vertices of the barycentrically subdivided triangle.
    fn twist_act() -> SimplicialAction {
        let triangle =
            SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        let sub = triangle.barycentric_subdivision().unwrap().complex;
        // Vertices in order: u v w u|v u|w v|w u|v|w.
        let swap_uv = Permutation::from_cycles(7, &[&[1, 2], &[5, 6]]).unwrap();
        let rot = Permutation::from_cycles(7, &[&[1, 2, 3], &[4, 6, 5]]).unwrap();
        let s3 = FinGroup::generate(7, vec![swap_uv, rot], DEFAULT_ELEMENT_CAP).unwrap();
        SimplicialAction::from_permutations(s3, sub).unwrap()
    }

    /// Euler characteristic, point-homology flag, and cone apex of a
    /// development's realization.
    fn realization_summary(dev: &Development) -> (i64, bool, Option<usize>) {
        let delta = realize(dev.scwol());
        let chain = chain_from_delta(&delta).unwrap();
        (
            euler_characteristic(&chain),
            is_point_homology(&homology(&chain)),
            is_simplicial_cone(&delta),
        )
    }

    #[test]
    fn seg_block_at_u_is_one_arrow_with_identity_morphism() {
        let cog = seg();
        let u = cog.base().object_id("u").unwrap();
        let blk = block(&cog, u).unwrap();
        assert_eq!(blk.scwol().object_count(), 2);
        assert_eq!(blk.scwol().arrow_count(), 1);
        assert_eq!(blk.apex(), 0);
        assert_eq!(blk.ambient_object(0), u);
        assert_eq!(blk.morphism().f_arrow(0), 0);
        assert_eq!(blk.morphism().target().order(), 2);
        assert!(!blk.cog().has_nontrivial_twists());
    }

    #[test]
    fn tri3_block_at_v_collects_the_simplices_containing_v() {
        let cog = tri3();
        let base = cog.base();
        let complex = cog.complex().unwrap();
        let v = base.object_id("v").unwrap();
        let blk = block(&cog, v).unwrap();
        // Independent enumeration straight from the complex.
        let vertex_v = complex.simplex(v).clone();
        let containing: Vec<usize> = (0..complex.simplex_count())
            .filter(|&s| vertex_v.is_face_of(complex.simplex(s)))
            .collect();
        let expected_arrows = containing
            .iter()
            .flat_map(|&s| containing.iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| base.direct_arrow(s, t).is_some())
            .count();
        assert_eq!(blk.scwol().object_count(), containing.len());
        assert_eq!(blk.scwol().arrow_count(), expected_arrows);
        assert_eq!(blk.scwol().object_count(), 4);
        assert_eq!(blk.scwol().arrow_count(), 5);
    }

    #[test]
    fn tri3_local_development_at_v_is_a_seven_object_cone() {
        let cog = tri3();
        let v = cog.base().object_id("v").unwrap();
        let dev = local_development(&cog, v).unwrap();
        assert_eq!(dev.scwol().object_count(), 7);
        assert_eq!(dev.scwol().arrow_count(), 10);
        assert_eq!(dev.scwol().composable_tuples(2).len(), 4);
        let (chi, point, apex) = realization_summary(&dev);
        assert_eq!(chi, 1);
        assert!(point);
        assert_eq!(apex, Some(dev.identity_object_over(0)));
    }

    #[test]
    fn seg_local_development_at_u_is_a_two_edge_star() {
        let cog = seg();
        let u = cog.base().object_id("u").unwrap();
        let dev = local_development(&cog, u).unwrap();
        let blk = block(&cog, u).unwrap();
        assert_eq!(dev.objects_over(blk.apex()).len(), 1);
        assert_eq!(dev.scwol().object_count(), 3);
        assert_eq!(dev.scwol().arrow_count(), 2);
        assert!(dev.scwol().composable_tuples(2).is_empty());
        let (chi, point, apex) = realization_summary(&dev);
        assert_eq!(chi, 1);
        assert!(point);
        assert_eq!(apex, Some(0));
    }

    #[test]
    fn seg_local_development_at_the_edge_is_a_point() {
        let cog = seg();
        let e = cog.base().object_id("u,w").unwrap();
        let dev = local_development(&cog, e).unwrap();
        assert_eq!(dev.scwol().object_count(), 1);
        assert_eq!(dev.scwol().arrow_count(), 0);
        assert_eq!(realize(dev.scwol()).counts(), vec![1]);
    }

    #[test]
    fn seg_c6_development_is_the_subdivided_complete_bipartite_graph() {
        let m = seg_c6_witness();
        let dev = develop(&m).unwrap();
        let base = m.cog().base();
        let u = base.object_id("u").unwrap();
        let w = base.object_id("w").unwrap();
        let e = base.object_id("u,w").unwrap();
        assert_eq!(dev.objects_over(u).len(), 3);
        assert_eq!(dev.objects_over(w).len(), 2);
        assert_eq!(dev.objects_over(e).len(), 6);
        assert_eq!(dev.scwol().object_count(), 11);
        assert_eq!(dev.scwol().arrow_count(), 12);
        // Every edge-fibre object meets one u-object and one w-object, so
        // the realization is K_{3,2} with each edge subdivided once. Its
        // first Betti number is E - V + 1 for a connected graph.
        let scwol = dev.scwol();
        for dev_e in dev.objects_over(e) {
            let targets: Vec<ObjectId> = scwol
                .arrows_from(dev_e)
                .into_iter()
                .map(|a| scwol.t(a))
                .collect();
            assert_eq!(targets.len(), 2);
            assert!(dev.objects_over(u).contains(&targets[0]) ^ dev.objects_over(u).contains(&targets[1]));
        }
        let delta = realize(scwol);
        let chain = chain_from_delta(&delta).unwrap();
        assert_eq!(euler_characteristic(&chain), -1);
        let h = homology(&chain);
        assert_eq!(h[0].betti, 1, "connected since C2 and C3 generate C6");
        assert_eq!(h[1].betti, 12 - 11 + 1);
        assert!(h[1].torsion.is_empty());
    }

    #[test]
    fn developing_the_trivial_cog_recovers_the_base_scwol() {
        for complex in [
            SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap(),
            SimplicialComplex::from_names(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap(),
        ] {
            let m = MorphismToGroup::to_trivial(trivial_cog(&complex));
            let dev = develop(&m).unwrap();
            let base = m.cog().base();
            assert_eq!(dev.scwol().object_count(), base.object_count());
            assert_eq!(dev.scwol().arrow_count(), base.arrow_count());
            for a in 0..base.arrow_count() {
                assert_eq!(dev.arrow_label(a), (0, a));
                assert_eq!(dev.scwol().i(a), base.i(a));
                assert_eq!(dev.scwol().t(a), base.t(a));
            }
            let q = dev.quotient_action();
            assert!(q.matches_base);
        }
    }

    #[test]
    fn develop_rejects_morphisms_that_are_not_witnesses() {
        // Constant maps to the trivial group lose C2 and C3.
        let collapse = MorphismToGroup::to_trivial(seg());
        assert!(matches!(
            develop(&collapse),
            Err(Error::NotAWitness(msg)) if msg.contains("injective")
        ));
        // A broken pair identity is reported before any coset work.
        let (c6, c2, c3, triv) = c6_with_subgroups();
        let f_obj = vec![
            GroupHom::inclusion(c2, c6.clone()).unwrap(),
            GroupHom::inclusion(c3, c6.clone()).unwrap(),
            GroupHom::inclusion(triv, c6.clone()).unwrap(),
        ];
        let skew = MorphismToGroup::new(seg(), c6, f_obj, vec![0, 1]).unwrap();
        assert!(develop(&skew).is_ok(), "no composable pairs in an edge");
    }

    #[test]
    fn block_fails_on_a_complex_of_groups_with_non_injective_psi() {
        let (_, c2, _, _) = c6_with_subgroups();
        let complex = SimplicialComplex::from_names(&["u", "w"], &[&["u", "w"]]).unwrap();
        let groups = vec![c2.clone(), c2.clone(), c2.clone()];
        let psi = vec![
            GroupHom::trivial(c2.clone(), c2.clone()),
            GroupHom::trivial(c2.clone(), c2.clone()),
        ];
        let cog = ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap();
        let u = cog.base().object_id("u").unwrap();
        assert!(matches!(block(&cog, u), Err(Error::NotAWitness(_))));
    }

    #[test]
    fn stabilizer_of_the_identity_object_is_the_local_image() {
        let m = seg_c6_witness();
        let dev = develop(&m).unwrap();
        for o in 0..m.cog().base().object_count() {
            let expected = m.f_obj(o).image();
            assert_eq!(dev.stabilizer(dev.identity_object_over(o)), expected);
        }
        let cog = tri3();
        let v = cog.base().object_id("v").unwrap();
        let dev = local_development(&cog, v).unwrap();
        let blk = block(&cog, v).unwrap();
        for o in 0..blk.scwol().object_count() {
            let expected = blk.morphism().f_obj(o).image();
            assert_eq!(dev.stabilizer(dev.identity_object_over(o)), expected);
        }
    }

    #[test]
    fn the_action_is_transitive_on_fibres_and_quotients_to_the_base() {
        let dev = develop(&seg_c6_witness()).unwrap();
        let q = dev.quotient_action();
        assert!(q.matches_base);
        assert_eq!(q.scwol, *dev.base());
        // Spot check: rotating by the generator walks the edge fibre.
        let e = dev.base().object_id("u,w").unwrap();
        let first = dev.objects_over(e).start;
        let mut seen = vec![first];
        let gen = 1;
        let mut cur = first;
        for _ in 0..5 {
            cur = dev.act_object(gen, cur);
            seen.push(cur);
        }
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, dev.objects_over(e).collect::<Vec<_>>());
    }

    #[test]
    fn fixed_subscwol_of_the_trivial_subgroup_is_everything() {
        let dev = develop(&seg_c6_witness()).unwrap();
        let sub = dev.fixed_subscwol(&[0]).unwrap();
        assert_eq!(sub.scwol.object_count(), dev.scwol().object_count());
        assert_eq!(sub.scwol.arrow_count(), dev.scwol().arrow_count());
        assert!(matches!(
            dev.fixed_subscwol(&[1]),
            Err(Error::NotASubgroup(1))
        ));
    }

    #[test]
    fn tri3_fixed_subscwol_of_the_whole_group_is_the_apex_cone() {
        let cog = tri3();
        let v = cog.base().object_id("v").unwrap();
        let dev = local_development(&cog, v).unwrap();
        let all: Vec<ElemId> = (0..dev.group().order()).collect();
        let sub = dev.fixed_subscwol(&all).unwrap();
        assert_eq!(sub.object_map, vec![dev.identity_object_over(0)]);
        assert!(sub.arrow_map.is_empty());
        let delta = realize(&sub.scwol);
        let chain = chain_from_delta(&delta).unwrap();
        assert_eq!(euler_characteristic(&chain), 1);
        assert!(is_simplicial_cone(&delta).is_some());
    }

    #[test]
    fn every_local_development_of_every_fixture_is_a_coset_counted_cone() {
        let twist = induce_from_action(&twist_act(), ChoicePolicy::Adversarial, true).unwrap();
        assert!(twist.cog.has_nontrivial_twists());
        let triangle =
            SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
        for cog in [seg(), tri3(), trivial_cog(&triangle), twist.cog] {
            for sigma in 0..cog.base().object_count() {
                let blk = block(&cog, sigma).unwrap();
                let dev = local_development(&cog, sigma).unwrap();
                let order = blk.morphism().target().order();
                for tau in 0..blk.scwol().object_count() {
                    let image = blk.morphism().f_obj(tau).image().len();
                    assert_eq!(
                        dev.objects_over(tau).len(),
                        order / image,
                        "coset count over `{}` in the block at `{}`",
                        blk.scwol().object_name(tau),
                        cog.base().object_name(sigma)
                    );
                }
                let (chi, point, apex) = realization_summary(&dev);
                assert_eq!(chi, 1);
                assert!(point);
                assert!(apex.is_some());
                assert!(dev.quotient_action().matches_base);
            }
        }
    }

    #[test]
    fn adversarial_blocks_carry_their_twists_into_the_morphism() {
        let twist = induce_from_action(&twist_act(), ChoicePolicy::Adversarial, true).unwrap();
        let cog = &twist.cog;
        let carried = (0..cog.base().object_count()).any(|sigma| {
            let blk = block(cog, sigma).unwrap();
            (0..blk.scwol().arrow_count()).any(|a| blk.morphism().f_arrow(a) != 0)
        });
        assert!(carried, "some block morphism sees a nontrivial twist");
    }
}
