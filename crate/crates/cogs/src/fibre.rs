//! Classifying-fibre models over finite groups: points and full simplices,
//! with equivariant affine maps, straight-line homotopies and radial
//! extensions.
//!
//! Everything is exact. Points are barycentric coordinate vectors over the
//! group's elements, maps are affine extensions of their vertex rules, and
//! homotopies and extensions only ever get evaluated at rational parameters,
//! so no floating point appears anywhere.

use crate::cog::ComplexOfGroups;
use crate::error::{Error, Result};
use crate::group::{ElemId, FinGroup, GroupHom};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use std::sync::Arc;

/// The two supported fibre shapes. Both are convex, which is what makes the
/// extension lemma constructive instead of an existence argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibreKind {
    /// A single point with the trivial action.
    Point,
    /// The full simplex on the group's elements, acted on by left
    /// multiplication of the vertices.
    FullSimplex,
}

impl FibreKind {
    pub fn label(self) -> &'static str {
        match self {
            FibreKind::Point => "point",
            FibreKind::FullSimplex => "simplex",
        }
    }
}

/// A point of a fibre: barycentric coordinates over the group elements for
/// the full-simplex kind, the empty vector for the point kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrePoint(Vec<BigRational>);

impl FibrePoint {
    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    /// The convex combination `(1−t)·self + t·other`.
    pub fn mix(&self, other: &FibrePoint, t: &BigRational) -> FibrePoint {
        assert_eq!(self.0.len(), other.0.len(), "mixing points of different fibres");
        let s = BigRational::one() - t;
        FibrePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| &s * a + t * b)
                .collect(),
        )
    }
}

/// A fibre model for one local group: the classifying-space stand-in that
/// the assembly glues together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreModel {
    kind: FibreKind,
    group: Arc<FinGroup>,
}

impl FibreModel {
    pub fn new(kind: FibreKind, group: Arc<FinGroup>) -> FibreModel {
        FibreModel { kind, group }
    }

    pub fn kind(&self) -> FibreKind {
        self.kind
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    /// Number of barycentric coordinates a point carries.
    pub fn coordinate_count(&self) -> usize {
        match self.kind {
            FibreKind::Point => 0,
            FibreKind::FullSimplex => self.group.order(),
        }
    }

    /// The vertex sitting at a group element (full-simplex kind only).
    pub fn vertex(&self, e: ElemId) -> FibrePoint {
        assert_eq!(self.kind, FibreKind::FullSimplex, "point fibres have no vertices");
        let mut coords = vec![BigRational::zero(); self.group.order()];
        coords[e] = BigRational::one();
        FibrePoint(coords)
    }

    /// The basepoint: the identity vertex, or the unique point.
    pub fn basepoint(&self) -> FibrePoint {
        match self.kind {
            FibreKind::Point => FibrePoint(Vec::new()),
            FibreKind::FullSimplex => self.vertex(self.group.id()),
        }
    }

    /// The barycenter (equal to the basepoint for the point kind).
    pub fn barycenter(&self) -> FibrePoint {
        match self.kind {
            FibreKind::Point => FibrePoint(Vec::new()),
            FibreKind::FullSimplex => {
                let n = self.group.order();
                let w = BigRational::new(BigInt::one(), BigInt::from(n));
                FibrePoint(vec![w; n])
            }
        }
    }

    /// Left multiplication permuting the barycentric coordinates:
    /// the coefficient of `x` at `h` moves to `g·h`.
    pub fn act(&self, g: ElemId, x: &FibrePoint) -> FibrePoint {
        assert_eq!(x.0.len(), self.coordinate_count(), "foreign fibre point");
        match self.kind {
            FibreKind::Point => FibrePoint(Vec::new()),
            FibreKind::FullSimplex => {
                let mut coords = vec![BigRational::zero(); x.0.len()];
                for (h, c) in x.0.iter().enumerate() {
                    coords[self.group.mul(g, h)] = c.clone();
                }
                FibrePoint(coords)
            }
        }
    }

    /// True when `x` has the right shape, nonnegative coordinates and total
    /// mass one (vacuously true for the point kind).
    pub fn contains(&self, x: &FibrePoint) -> bool {
        if x.0.len() != self.coordinate_count() {
            return false;
        }
        if self.kind == FibreKind::Point {
            return true;
        }
        x.0.iter().all(|c| !c.is_negative())
            && x.0.iter().sum::<BigRational>() == BigRational::one()
    }

    /// Averages the orbit of `x` under a subgroup, yielding a point fixed by
    /// every element of it: the constructive witness that fixed-point sets
    /// are nonempty and convex.
    pub fn orbit_average(&self, sub: &[ElemId], x: &FibrePoint) -> Result<FibrePoint> {
        if !self.group.is_subgroup_set(sub) {
            return Err(Error::NotASubgroup(sub.len()));
        }
        if self.kind == FibreKind::Point {
            return Ok(FibrePoint(Vec::new()));
        }
        let mut total = vec![BigRational::zero(); self.coordinate_count()];
        for &h in sub {
            for (j, c) in self.act(h, x).0.into_iter().enumerate() {
                total[j] += c;
            }
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(sub.len()));
        Ok(FibrePoint(total.into_iter().map(|c| c * &w).collect()))
    }

    /// The rational sample set every exhaustive check runs over: all
    /// vertices plus the barycenter (just the one point for the point kind).
    pub fn samples(&self) -> Vec<FibrePoint> {
        match self.kind {
            FibreKind::Point => vec![FibrePoint(Vec::new())],
            FibreKind::FullSimplex => {
                let mut out: Vec<FibrePoint> =
                    (0..self.group.order()).map(|e| self.vertex(e)).collect();
                out.push(self.barycenter());
                out
            }
        }
    }
}

/// An affine equivariant map between fibre models.
///
/// The vertex rule is `g ↦ ψ(g)·offset`; these are exactly the
/// ψ-equivariant affine self-maps of full simplices, and the map is based
/// precisely when the offset is the identity. Point fibres admit one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreMap {
    source: FibreModel,
    target: FibreModel,
    hom: GroupHom,
    offset: ElemId,
}

impl FibreMap {
    /// Builds the map and runs the exhaustive vertex equivariance check
    /// `f(g·v) = ψ(g)·f(v)` over every group element and vertex.
    pub fn new(
        source: FibreModel,
        target: FibreModel,
        hom: GroupHom,
        offset: ElemId,
    ) -> Result<FibreMap> {
        if source.kind != target.kind {
            return Err(Error::FibreMismatch(format!(
                "map from a {} fibre to a {} fibre",
                source.kind.label(),
                target.kind.label()
            )));
        }
        if *hom.source() != **source.group() || *hom.target() != **target.group() {
            return Err(Error::FibreMismatch(
                "fibre map hom does not connect the model groups".into(),
            ));
        }
        if offset >= target.group.order() {
            return Err(Error::IndexOutOfRange(format!(
                "offset {offset} in a group of order {}",
                target.group.order()
            )));
        }
        let map = FibreMap {
            source,
            target,
            hom,
            offset,
        };
        if map.source.kind == FibreKind::FullSimplex {
            let src = map.source.group.clone();
            let tgt = map.target.group.clone();
            for g in 0..src.order() {
                for v in 0..src.order() {
                    let lhs = map.vertex_image(src.mul(g, v));
                    let rhs = tgt.mul(map.hom.apply(g), map.vertex_image(v));
                    if lhs != rhs {
                        return Err(Error::FibreMismatch(format!(
                            "vertex equivariance fails at g={g}, v={v}: {lhs} != {rhs}"
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    /// The based map induced by a group homomorphism.
    pub fn from_hom(source: FibreModel, target: FibreModel, hom: GroupHom) -> Result<FibreMap> {
        let id = target.group.id();
        FibreMap::new(source, target, hom, id)
    }

    pub fn source(&self) -> &FibreModel {
        &self.source
    }

    pub fn target(&self) -> &FibreModel {
        &self.target
    }

    /// The equivariance homomorphism ψ.
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn offset(&self) -> ElemId {
        self.offset
    }

    /// Basepoint goes to basepoint exactly when the offset is the identity.
    pub fn is_based(&self) -> bool {
        self.source.kind == FibreKind::Point || self.offset == self.target.group.id()
    }

    /// Image of the vertex at `e` under the vertex rule `e ↦ ψ(e)·offset`.
    pub fn vertex_image(&self, e: ElemId) -> ElemId {
        self.target.group.mul(self.hom.apply(e), self.offset)
    }

    /// Affine extension of the vertex rule; coordinates of merged vertices
    /// accumulate.
    pub fn apply(&self, x: &FibrePoint) -> FibrePoint {
        assert_eq!(x.0.len(), self.source.coordinate_count(), "foreign fibre point");
        match self.source.kind {
            FibreKind::Point => FibrePoint(Vec::new()),
            FibreKind::FullSimplex => {
                let mut coords = vec![BigRational::zero(); self.target.coordinate_count()];
                for (e, c) in x.0.iter().enumerate() {
                    coords[self.vertex_image(e)] += c;
                }
                FibrePoint(coords)
            }
        }
    }

    /// `second ∘ first`, with the composed vertex rule closed in the same
    /// form: `g ↦ (ψ₂ψ₁)(g)·(ψ₂(c₁)·c₂)`.
    pub fn compose(second: &FibreMap, first: &FibreMap) -> Result<FibreMap> {
        if first.target != second.source {
            return Err(Error::FibreMismatch(
                "composition with mismatched middle fibre".into(),
            ));
        }
        let hom = GroupHom::compose(&second.hom, &first.hom)?;
        let offset = second
            .target
            .group
            .mul(second.hom.apply(first.offset), second.offset);
        FibreMap::new(first.source.clone(), second.target.clone(), hom, offset)
    }
}

/// The straight-line homotopy `H(x,t) = (1−t)·f₀(x) + t·f₁(x)` between two
/// maps with the same equivariance homomorphism. Endpoints are exact and
/// equivariance holds identically because the action is affine and the
/// target convex.
#[derive(Clone, Debug)]
pub struct FibreHomotopy {
    f0: FibreMap,
    f1: FibreMap,
}

impl FibreHomotopy {
    pub fn f0(&self) -> &FibreMap {
        &self.f0
    }

    pub fn f1(&self) -> &FibreMap {
        &self.f1
    }

    /// Evaluates at a rational time `0 ≤ t ≤ 1`.
    pub fn eval(&self, x: &FibrePoint, t: &BigRational) -> FibrePoint {
        debug_assert!(!t.is_negative() && *t <= BigRational::one());
        self.f0.apply(x).mix(&self.f1.apply(x), t)
    }
}

/// Builds the straight-line homotopy between `f0` and `f1`.
pub fn straightline_homotopy(f0: &FibreMap, f1: &FibreMap) -> Result<FibreHomotopy> {
    if f0.source != f1.source || f0.target != f1.target {
        return Err(Error::FibreMismatch(
            "homotopy endpoints with different source or target fibres".into(),
        ));
    }
    if f0.hom != f1.hom {
        return Err(Error::FibreMismatch(
            "homotopy endpoints with different equivariance homomorphisms".into(),
        ));
    }
    Ok(FibreHomotopy {
        f0: f0.clone(),
        f1: f1.clone(),
    })
}

/// Extends a map given on `fibre × ∂I^k` to all of `fibre × I^k` radially:
/// writing `u = c + r·(w − c)` with `c` the cube center, `w ∈ ∂I^k` and
/// `r ∈ [0,1]` the L∞ distance scale, the extension is
/// `F(x,u) = (1−r)·β(x) + r·f(x,w)` with `β` the designated base map.
///
/// The restriction to the boundary reproduces `f` exactly, the center maps
/// through `β`, and equivariance is inherited from `β` and `f` because the
/// action is affine. Both fibre kinds are convex, so the formula always
/// lands inside the target.
pub fn extend_equivariant<'a, F>(
    base: &'a FibreMap,
    boundary: F,
    k: usize,
) -> impl Fn(&FibrePoint, &[BigRational]) -> FibrePoint + 'a
where
    F: Fn(&FibrePoint, &[BigRational]) -> FibrePoint + 'a,
{
    move |x, u| {
        assert_eq!(u.len(), k, "cube point has the wrong dimension");
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let two = BigRational::from_integer(BigInt::from(2));
        let r = u
            .iter()
            .map(|t| ((t - &half) * &two).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        if r.is_zero() {
            return base.apply(x);
        }
        let w: Vec<BigRational> = u.iter().map(|t| &half + (t - &half) / &r).collect();
        base.apply(x).mix(&boundary(x, &w), &r)
    }
}

/// The default fibre assignment of one kind across a whole complex of
/// groups: a model per object and, per arrow, the based equivariant map
/// extending `g ↦ ψ_a(g)` on vertices.
#[derive(Clone, Debug)]
pub struct FibreSystem {
    kind: FibreKind,
    models: Vec<FibreModel>,
    maps: Vec<FibreMap>,
}

impl FibreSystem {
    pub fn kind(&self) -> FibreKind {
        self.kind
    }

    pub fn model(&self, o: usize) -> &FibreModel {
        &self.models[o]
    }

    pub fn map(&self, a: usize) -> &FibreMap {
        &self.maps[a]
    }

    pub fn models(&self) -> &[FibreModel] {
        &self.models
    }

    pub fn maps(&self) -> &[FibreMap] {
        &self.maps
    }
}

/// Builds the default fibres of the chosen kind for every local group of a
/// complex of groups. All maps are based and pass the exhaustive vertex
/// equivariance check by construction.
pub fn default_fibres(c: &ComplexOfGroups, kind: FibreKind) -> FibreSystem {
    let models: Vec<FibreModel> = (0..c.base().object_count())
        .map(|o| FibreModel::new(kind, c.group(o).clone()))
        .collect();
    let maps = (0..c.base().arrow_count())
        .map(|a| {
            let src = models[c.base().i(a)].clone();
            let tgt = models[c.base().t(a)].clone();
            FibreMap::from_hom(src, tgt, c.psi(a).clone())
                .expect("structure maps extend to based equivariant fibre maps")
        })
        .collect();
    FibreSystem {
        kind,
        models,
        maps,
    }
}
