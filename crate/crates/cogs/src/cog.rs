//! Complexes of groups over scwols.
//!
//! A complex of groups assigns a finite group to every object of a scwol, an
//! injective homomorphism to every arrow, and a twisting element to every
//! composable pair, tied together by a conjugation identity and a cocycle
//! condition. Constructors here enforce only *shape* (sizes, sources,
//! targets, composability of twist keys); the mathematical identities are the
//! business of the validators, which report every broken instance as a
//! [`Violation`] instead of failing fast — a deliberately invalid complex is
//! something callers construct on purpose to exercise the validators.

use crate::error::{Error, Result};
use crate::group::{ElemId, FinGroup, GroupHom};
use crate::report::Violation;
use crate::scwol::{scwol_of_complex, ArrowId, ObjectId, Scwol};
use crate::simplicial::SimplicialComplex;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A complex of groups: local groups `G_σ`, arrow injections `ψ_a`, and
/// twisting elements `g_{b,a}`.
///
/// Twists are stored sparsely: a composable pair absent from the map twists
/// by the identity. Construction normalizes explicit identity entries away so
/// equality and serialization do not depend on how the map was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOfGroups {
    base: Scwol,
    groups: Vec<Arc<FinGroup>>,
    psi: Vec<GroupHom>,
    twists: BTreeMap<(ArrowId, ArrowId), ElemId>,
    complex: Option<SimplicialComplex>,
}

impl ComplexOfGroups {
    /// Builds a complex of groups over an arbitrary scwol, checking shape:
    /// one group per object, one homomorphism per arrow with the right
    /// endpoints, twist keys composable and twist values in range.
    pub fn new(
        base: Scwol,
        groups: Vec<Arc<FinGroup>>,
        psi: Vec<GroupHom>,
        twists: BTreeMap<(ArrowId, ArrowId), ElemId>,
    ) -> Result<ComplexOfGroups> {
        if groups.len() != base.object_count() {
            return Err(Error::GroupMismatch(format!(
                "{} local groups for {} objects",
                groups.len(),
                base.object_count()
            )));
        }
        if psi.len() != base.arrow_count() {
            return Err(Error::GroupMismatch(format!(
                "{} arrow homomorphisms for {} arrows",
                psi.len(),
                base.arrow_count()
            )));
        }
        for a in 0..base.arrow_count() {
            if psi[a].source() != groups[base.i(a)] {
                return Err(Error::GroupMismatch(format!(
                    "psi source at arrow `{}` is not the group at its initial object",
                    base.arrow_name(a)
                )));
            }
            if psi[a].target() != groups[base.t(a)] {
                return Err(Error::GroupMismatch(format!(
                    "psi target at arrow `{}` is not the group at its terminal object",
                    base.arrow_name(a)
                )));
            }
        }
        let mut normalized = BTreeMap::new();
        for (&(b, a), &g) in &twists {
            if b >= base.arrow_count() || a >= base.arrow_count() {
                return Err(Error::IndexOutOfRange(format!(
                    "twist key ({b}, {a}) exceeds arrow count {}",
                    base.arrow_count()
                )));
            }
            base.compose(b, a)?;
            let home = &groups[base.t(b)];
            if g >= home.order() {
                return Err(Error::IndexOutOfRange(format!(
                    "twist element {g} exceeds group order {} at `{}`",
                    home.order(),
                    base.object_name(base.t(b))
                )));
            }
            if g != home.id() {
                normalized.insert((b, a), g);
            }
        }
        Ok(ComplexOfGroups {
            base,
            groups,
            psi,
            twists: normalized,
            complex: None,
        })
    }

    /// Like [`ComplexOfGroups::new`] with the scwol of a simplicial complex
    /// as base, remembering the complex so objects can be addressed by
    /// simplex key.
    pub fn over_complex(
        complex: SimplicialComplex,
        groups: Vec<Arc<FinGroup>>,
        psi: Vec<GroupHom>,
        twists: BTreeMap<(ArrowId, ArrowId), ElemId>,
    ) -> Result<ComplexOfGroups> {
        let base = scwol_of_complex(&complex);
        let mut cog = ComplexOfGroups::new(base, groups, psi, twists)?;
        cog.complex = Some(complex);
        Ok(cog)
    }

    pub fn base(&self) -> &Scwol {
        &self.base
    }

    /// The simplicial complex the base scwol came from, when known.
    pub fn complex(&self) -> Option<&SimplicialComplex> {
        self.complex.as_ref()
    }

    /// The local group at an object.
    pub fn group(&self, o: ObjectId) -> &Arc<FinGroup> {
        &self.groups[o]
    }

    /// The injection along an arrow, from the group at `i(a)` to the group
    /// at `t(a)`.
    pub fn psi(&self, a: ArrowId) -> &GroupHom {
        &self.psi[a]
    }

    /// The twisting element of a composable pair, in the group at `t(b)`.
    /// Absent entries are the identity.
    pub fn twist(&self, b: ArrowId, a: ArrowId) -> ElemId {
        debug_assert!(self.base.compose(b, a).is_ok());
        self.twists.get(&(b, a)).copied().unwrap_or(0)
    }

    /// The sparse twist table (identity entries omitted).
    pub fn twist_entries(&self) -> &BTreeMap<(ArrowId, ArrowId), ElemId> {
        &self.twists
    }

    pub fn has_nontrivial_twists(&self) -> bool {
        !self.twists.is_empty()
    }

    /// The injection from the group at `from` to the group at `to`: the
    /// identity when the objects coincide, otherwise `ψ` of the direct arrow
    /// `from → to`, which must exist.
    pub fn psi_to(&self, from: ObjectId, to: ObjectId) -> Result<GroupHom> {
        if from == to {
            return Ok(GroupHom::identity(self.groups[from].clone()));
        }
        match self.base.direct_arrow(from, to) {
            Some(a) => Ok(self.psi[a].clone()),
            None => Err(Error::IndexOutOfRange(format!(
                "no direct arrow from `{}` to `{}`",
                self.base.object_name(from),
                self.base.object_name(to)
            ))),
        }
    }
}

/// The complex of groups with every local group trivial over the scwol of
/// `complex`. Always valid; its development recovers the base scwol.
pub fn trivial_cog(complex: &SimplicialComplex) -> ComplexOfGroups {
    let base = scwol_of_complex(complex);
    let triv = FinGroup::trivial(1);
    let groups = vec![triv.clone(); base.object_count()];
    let psi = vec![GroupHom::identity(triv); base.arrow_count()];
    ComplexOfGroups::over_complex(complex.clone(), groups, psi, BTreeMap::new())
        .expect("trivial data always has the right shape")
}

/// Checks the three defining identity families of a complex of groups and
/// reports every broken instance: injectivity of each `ψ_a`, the conjugation
/// identity `Ad(g_{b,a}) ∘ ψ_{ba} = ψ_b ∘ ψ_a` on every composable pair, and
/// the cocycle condition `ψ_c(g_{b,a}) · g_{c,ba} = g_{c,b} · g_{cb,a}` on
/// every composable triple. An empty report means the complex is valid.
pub fn validate_cog(c: &ComplexOfGroups) -> Vec<Violation> {
    let mut violations = Vec::new();
    let base = c.base();
    for a in 0..base.arrow_count() {
        if !c.psi(a).is_injective() {
            violations.push(Violation::new(
                "psi not injective",
                format!("arrow {}", base.arrow_name(a)),
            ));
        }
    }
    for pair in base.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = base.compose(b, a).expect("tuple arrows are composable");
        let home = c.group(base.t(b));
        let g_ba = c.twist(b, a);
        let holds = (0..c.group(base.i(a)).order()).all(|x| {
            home.conj(g_ba, c.psi(ba).apply(x)) == c.psi(b).apply(c.psi(a).apply(x))
        });
        if !holds {
            violations.push(Violation::new(
                "conjugation identity",
                format!("pair ({}, {})", base.arrow_name(b), base.arrow_name(a)),
            ));
        }
    }
    for triple in base.composable_tuples(3) {
        let a = triple.arrows()[0];
        let b = triple.arrows()[1];
        let c_arr = triple.arrows()[2];
        let ba = base.compose(b, a).expect("composable");
        let cb = base.compose(c_arr, b).expect("composable");
        let home = c.group(base.t(c_arr));
        let lhs = home.mul(c.psi(c_arr).apply(c.twist(b, a)), c.twist(c_arr, ba));
        let rhs = home.mul(c.twist(c_arr, b), c.twist(cb, a));
        if lhs != rhs {
            violations.push(Violation::new(
                "cocycle condition",
                format!(
                    "triple ({}, {}, {})",
                    base.arrow_name(c_arr),
                    base.arrow_name(b),
                    base.arrow_name(a)
                ),
            ));
        }
    }
    violations
}

/// A morphism from a complex of groups to a single group: a homomorphism
/// `F_σ` per object and an element `F(a)` of the target per arrow.
#[derive(Clone, Debug)]
pub struct MorphismToGroup {
    cog: ComplexOfGroups,
    target: Arc<FinGroup>,
    f_obj: Vec<GroupHom>,
    f_arrow: Vec<ElemId>,
}

impl MorphismToGroup {
    /// Builds after shape checks; the defining identities are the business of
    /// [`validate_morphism_to_group`].
    pub fn new(
        cog: ComplexOfGroups,
        target: Arc<FinGroup>,
        f_obj: Vec<GroupHom>,
        f_arrow: Vec<ElemId>,
    ) -> Result<MorphismToGroup> {
        if f_obj.len() != cog.base().object_count() || f_arrow.len() != cog.base().arrow_count() {
            return Err(Error::GroupMismatch(format!(
                "morphism with {} object maps / {} arrow elements over a base with {} objects / {} arrows",
                f_obj.len(),
                f_arrow.len(),
                cog.base().object_count(),
                cog.base().arrow_count()
            )));
        }
        for (o, f) in f_obj.iter().enumerate() {
            if f.source() != *cog.group(o) {
                return Err(Error::GroupMismatch(format!(
                    "object map at `{}` does not start at the local group",
                    cog.base().object_name(o)
                )));
            }
            if f.target() != target {
                return Err(Error::GroupMismatch(format!(
                    "object map at `{}` does not land in the morphism target",
                    cog.base().object_name(o)
                )));
            }
        }
        if let Some(&bad) = f_arrow.iter().find(|&&e| e >= target.order()) {
            return Err(Error::IndexOutOfRange(format!(
                "arrow element {bad} exceeds target order {}",
                target.order()
            )));
        }
        Ok(MorphismToGroup {
            cog,
            target,
            f_obj,
            f_arrow,
        })
    }

    /// The unique morphism to the trivial group: every `F_σ` constant,
    /// every `F(a)` the identity. Valid over any complex of groups; a
    /// developability witness exactly when all local groups are trivial.
    pub fn to_trivial(cog: ComplexOfGroups) -> MorphismToGroup {
        let target = FinGroup::trivial(1);
        let f_obj = (0..cog.base().object_count())
            .map(|o| GroupHom::trivial(cog.group(o).clone(), target.clone()))
            .collect();
        let f_arrow = vec![0; cog.base().arrow_count()];
        MorphismToGroup::new(cog, target, f_obj, f_arrow)
            .expect("trivial data always has the right shape")
    }

    pub fn cog(&self) -> &ComplexOfGroups {
        &self.cog
    }

    pub fn target(&self) -> &Arc<FinGroup> {
        &self.target
    }

    pub fn f_obj(&self, o: ObjectId) -> &GroupHom {
        &self.f_obj[o]
    }

    pub fn f_arrow(&self, a: ArrowId) -> ElemId {
        self.f_arrow[a]
    }
}

/// Validation outcome for a [`MorphismToGroup`].
#[derive(Clone, Debug)]
pub struct MorphismVerdict {
    pub violations: Vec<Violation>,
    /// True when every `F_σ` is injective — the developability witness
    /// property. Independent of whether the identities hold.
    pub injective_on_local_groups: bool,
}

impl MorphismVerdict {
    /// Valid and injective on local groups.
    pub fn is_witness(&self) -> bool {
        self.violations.is_empty() && self.injective_on_local_groups
    }
}

/// Checks both defining identities of a morphism to a group on every arrow
/// and every composable pair: `F_{t(a)} ∘ ψ_a = Ad(F(a)) ∘ F_{i(a)}` and
/// `F_{t(b)}(g_{b,a}) · F(ba) = F(b) · F(a)`; also flags whether all `F_σ`
/// are injective.
pub fn validate_morphism_to_group(m: &MorphismToGroup) -> MorphismVerdict {
    let mut violations = Vec::new();
    let base = m.cog().base();
    let target = m.target();
    for a in 0..base.arrow_count() {
        let fa = m.f_arrow(a);
        let holds = (0..m.cog().group(base.i(a)).order()).all(|g| {
            m.f_obj(base.t(a)).apply(m.cog().psi(a).apply(g))
                == target.conj(fa, m.f_obj(base.i(a)).apply(g))
        });
        if !holds {
            violations.push(Violation::new(
                "arrow identity",
                format!("arrow {}", base.arrow_name(a)),
            ));
        }
    }
    for pair in base.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = base.compose(b, a).expect("composable");
        let lhs = target.mul(m.f_obj(base.t(b)).apply(m.cog().twist(b, a)), m.f_arrow(ba));
        let rhs = target.mul(m.f_arrow(b), m.f_arrow(a));
        if lhs != rhs {
            violations.push(Violation::new(
                "pair identity",
                format!("pair ({}, {})", base.arrow_name(b), base.arrow_name(a)),
            ));
        }
    }
    let injective = (0..base.object_count()).all(|o| m.f_obj(o).is_injective());
    MorphismVerdict {
        violations,
        injective_on_local_groups: injective,
    }
}

/// A morphism between complexes of groups over a map of their base scwols.
///
/// The base map sends objects to objects and arrows to arrows, preserving
/// endpoints and composition (checked at construction); `F_σ` maps the local
/// group at `σ` to the one at its image, and `F(a)` lives in the target's
/// group at `t(f(a))`.
#[derive(Clone, Debug)]
pub struct CogMorphism {
    source: ComplexOfGroups,
    target: ComplexOfGroups,
    object_map: Vec<ObjectId>,
    arrow_map: Vec<ArrowId>,
    f_obj: Vec<GroupHom>,
    f_arrow: Vec<ElemId>,
}

impl CogMorphism {
    pub fn new(
        source: ComplexOfGroups,
        target: ComplexOfGroups,
        object_map: Vec<ObjectId>,
        arrow_map: Vec<ArrowId>,
        f_obj: Vec<GroupHom>,
        f_arrow: Vec<ElemId>,
    ) -> Result<CogMorphism> {
        let sb = source.base();
        let tb = target.base();
        if object_map.len() != sb.object_count()
            || arrow_map.len() != sb.arrow_count()
            || f_obj.len() != sb.object_count()
            || f_arrow.len() != sb.arrow_count()
        {
            return Err(Error::GroupMismatch(
                "morphism tables do not match the source base".into(),
            ));
        }
        if let Some(&bad) = object_map.iter().find(|&&o| o >= tb.object_count()) {
            return Err(Error::IndexOutOfRange(format!(
                "object image {bad} exceeds target object count {}",
                tb.object_count()
            )));
        }
        if let Some(&bad) = arrow_map.iter().find(|&&a| a >= tb.arrow_count()) {
            return Err(Error::IndexOutOfRange(format!(
                "arrow image {bad} exceeds target arrow count {}",
                tb.arrow_count()
            )));
        }
        for a in 0..sb.arrow_count() {
            if tb.i(arrow_map[a]) != object_map[sb.i(a)] || tb.t(arrow_map[a]) != object_map[sb.t(a)]
            {
                return Err(Error::ScwolAxiom(format!(
                    "base map does not preserve the endpoints of arrow `{}`",
                    sb.arrow_name(a)
                )));
            }
        }
        for pair in sb.composable_tuples(2) {
            let a = pair.arrows()[0];
            let b = pair.arrows()[1];
            let ba = sb.compose(b, a).expect("composable");
            if tb.compose(arrow_map[b], arrow_map[a])? != arrow_map[ba] {
                return Err(Error::ScwolAxiom(format!(
                    "base map does not preserve the composite of ({}, {})",
                    sb.arrow_name(b),
                    sb.arrow_name(a)
                )));
            }
        }
        for (o, f) in f_obj.iter().enumerate() {
            if f.source() != *source.group(o) || f.target() != *target.group(object_map[o]) {
                return Err(Error::GroupMismatch(format!(
                    "local map at `{}` has the wrong endpoints",
                    sb.object_name(o)
                )));
            }
        }
        for a in 0..sb.arrow_count() {
            let home = target.group(tb.t(arrow_map[a]));
            if f_arrow[a] >= home.order() {
                return Err(Error::IndexOutOfRange(format!(
                    "arrow element at `{}` exceeds group order {}",
                    sb.arrow_name(a),
                    home.order()
                )));
            }
        }
        Ok(CogMorphism {
            source,
            target,
            object_map,
            arrow_map,
            f_obj,
            f_arrow,
        })
    }

    /// The identity morphism of a complex of groups.
    pub fn identity(cog: &ComplexOfGroups) -> CogMorphism {
        let object_map = (0..cog.base().object_count()).collect();
        let arrow_map = (0..cog.base().arrow_count()).collect();
        let f_obj = (0..cog.base().object_count())
            .map(|o| GroupHom::identity(cog.group(o).clone()))
            .collect();
        let f_arrow = vec![0; cog.base().arrow_count()];
        CogMorphism::new(cog.clone(), cog.clone(), object_map, arrow_map, f_obj, f_arrow)
            .expect("the identity always has the right shape")
    }

    pub fn source(&self) -> &ComplexOfGroups {
        &self.source
    }

    pub fn target(&self) -> &ComplexOfGroups {
        &self.target
    }

    pub fn object_image(&self, o: ObjectId) -> ObjectId {
        self.object_map[o]
    }

    pub fn arrow_image(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a]
    }

    pub fn f_obj(&self, o: ObjectId) -> &GroupHom {
        &self.f_obj[o]
    }

    pub fn f_arrow(&self, a: ArrowId) -> ElemId {
        self.f_arrow[a]
    }
}

/// Validation outcome for a [`CogMorphism`].
#[derive(Clone, Debug)]
pub struct CogMorphismVerdict {
    pub violations: Vec<Violation>,
    /// Valid and every `F_σ` bijective.
    pub local_isomorphism: bool,
    /// A local isomorphism whose base map is a bijection on objects and
    /// arrows.
    pub isomorphism: bool,
}

/// Checks both defining identities of a morphism between complexes of
/// groups and classifies it. The identities, per arrow and per composable
/// pair of the source:
/// `Ad(F(a)) ∘ ψ_{f(a)} ∘ F_{i(a)} = F_{t(a)} ∘ ψ_a` and
/// `F_{t(b)}(g_{b,a}) · F(ba) = F(b) · ψ_{f(b)}(F(a)) · g_{f(b),f(a)}`.
pub fn validate_cog_morphism(m: &CogMorphism) -> CogMorphismVerdict {
    let mut violations = Vec::new();
    let sb = m.source().base();
    let tb = m.target().base();
    for a in 0..sb.arrow_count() {
        let fa_arrow = m.arrow_image(a);
        let home = m.target().group(tb.t(fa_arrow));
        let fa = m.f_arrow(a);
        let holds = (0..m.source().group(sb.i(a)).order()).all(|g| {
            let lhs = home.conj(fa, m.target().psi(fa_arrow).apply(m.f_obj(sb.i(a)).apply(g)));
            let rhs = m.f_obj(sb.t(a)).apply(m.source().psi(a).apply(g));
            lhs == rhs
        });
        if !holds {
            violations.push(Violation::new(
                "arrow identity",
                format!("arrow {}", sb.arrow_name(a)),
            ));
        }
    }
    for pair in sb.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = sb.compose(b, a).expect("composable");
        let home = m.target().group(tb.t(m.arrow_image(b)));
        let lhs = home.mul(m.f_obj(sb.t(b)).apply(m.source().twist(b, a)), m.f_arrow(ba));
        let rhs = home.mul(
            m.f_arrow(b),
            home.mul(
                m.target().psi(m.arrow_image(b)).apply(m.f_arrow(a)),
                m.target().twist(m.arrow_image(b), m.arrow_image(a)),
            ),
        );
        if lhs != rhs {
            violations.push(Violation::new(
                "pair identity",
                format!("pair ({}, {})", sb.arrow_name(b), sb.arrow_name(a)),
            ));
        }
    }
    let valid = violations.is_empty();
    let local_iso = valid
        && (0..sb.object_count()).all(|o| {
            m.f_obj(o).is_injective() && m.f_obj(o).image().len() == m.f_obj(o).target().order()
        });
    let base_bijective = {
        let mut objs: Vec<ObjectId> = (0..sb.object_count()).map(|o| m.object_image(o)).collect();
        objs.sort_unstable();
        objs.dedup();
        let mut arrs: Vec<ArrowId> = (0..sb.arrow_count()).map(|a| m.arrow_image(a)).collect();
        arrs.sort_unstable();
        arrs.dedup();
        objs.len() == tb.object_count() && arrs.len() == tb.arrow_count()
    };
    CogMorphismVerdict {
        violations,
        local_isomorphism: local_iso,
        isomorphism: local_iso && base_bijective,
    }
}
