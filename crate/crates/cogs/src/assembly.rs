//! The inductive assembly of a classifying complex over a block.
//!
//! For a centre object `σ`, the assembled space is a complex of cube-shaped
//! cells: one `k`-cell per pair (left coset of the image of `G_{i(A)}` in
//! `G_σ`, composable `k`-tuple `A` of the block). The facets of each cube
//! glue to lower cells through the fibre maps, the straight-line homotopies
//! of composable pairs, and radial extensions — with the terminal facet of
//! every cube collapsing into the fibre over the terminal object (the
//! condition written (†) below). A family of such assemblies, one per
//! object, is tied together by twisted embeddings that compose up to the
//! twisting elements of the complex of groups.
//!
//! Everything combinatorial is exact; the continuous gluing data is only
//! ever evaluated at rational points, and every identity the construction
//! relies on — well-definedness over coset representatives, corner
//! agreement of neighbouring facets, equivariance of the group action — is
//! checked exhaustively at construction time.

use crate::cog::ComplexOfGroups;
use crate::development::{block, Block};
use crate::error::{Error, Result};
use crate::fibre::{
    extend_equivariant, straightline_homotopy, FibreHomotopy, FibreKind, FibreMap, FibreModel,
    FibrePoint, FibreSystem,
};
use crate::fibre::default_fibres;
use crate::group::{left_cosets, CosetPartition, ElemId, FinGroup};
use crate::homology::ChainComplex;
use crate::matrix::IntMatrix;
use crate::scwol::{ArrowId, ComposableTuple, ObjectId};
use num::bigint::BigInt;
use num::{BigRational, One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Where one cube facet of a cell lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetGlue {
    /// Cube coordinate `1 ..= k`.
    pub coordinate: usize,
    /// True for the `t_i = 1` facet, false for `t_i = 0`.
    pub upper: bool,
    pub target_dim: usize,
    pub target_cell: usize,
    /// True when the facet image collapses below dimension `k − 1`; such
    /// facets contribute nothing to the cubical boundary.
    pub degenerate: bool,
}

/// A point of the assembled complex in canonical form: the cell it lies in,
/// fibre coordinates relative to the cell's canonical coset representative,
/// and interior cube coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPoint {
    pub dim: usize,
    pub cell: usize,
    pub fibre: FibrePoint,
    pub cube: Vec<BigRational>,
}

/// The assembled classifying complex over one block.
#[derive(Clone, Debug)]
pub struct ECellComplex {
    block: Block,
    kind: FibreKind,
    models: Vec<FibreModel>,
    maps: Vec<FibreMap>,
    homotopies: BTreeMap<(ArrowId, ArrowId), FibreHomotopy>,
    cosets: Vec<CosetPartition>,
    tuples: Vec<Vec<ComposableTuple>>,
    tuple_index: BTreeMap<ComposableTuple, (usize, usize)>,
    /// `cells[k][cell] = (tuple index, coset index)`.
    cells: Vec<Vec<(usize, usize)>>,
    /// `offsets[k][tuple index]` = id of that tuple's first cell.
    offsets: Vec<Vec<usize>>,
    facets: Vec<Vec<Vec<FacetGlue>>>,
}

impl ECellComplex {
    /// The block this complex was assembled over.
    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn kind(&self) -> FibreKind {
        self.kind
    }

    /// The acting group `G_σ` at the centre.
    pub fn group(&self) -> &Arc<FinGroup> {
        self.block.morphism().target()
    }

    /// Fibre model over a block object.
    pub fn model(&self, block_obj: ObjectId) -> &FibreModel {
        &self.models[block_obj]
    }

    /// Coset partition of `G_σ` by the image of the group at a block object.
    pub fn coset_partition(&self, block_obj: ObjectId) -> &CosetPartition {
        &self.cosets[block_obj]
    }

    /// Number of cell dimensions (top dimension + 1).
    pub fn dims(&self) -> usize {
        self.tuples.len()
    }

    /// Cell counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.cells[k].len()
    }

    /// The composable tuples of the block scwol in one dimension.
    pub fn tuples(&self, k: usize) -> &[ComposableTuple] {
        &self.tuples[k]
    }

    /// Position of a block tuple among the cells' tuples.
    pub fn tuple_position(&self, t: &ComposableTuple) -> Option<(usize, usize)> {
        self.tuple_index.get(t).copied()
    }

    /// The id of the cell over a tuple with a given coset index.
    pub fn cell_index(&self, k: usize, tuple_idx: usize, coset: usize) -> usize {
        self.offsets[k][tuple_idx] + coset
    }

    /// The (tuple index, coset index) pair of a cell.
    pub fn cell(&self, k: usize, cell: usize) -> (usize, usize) {
        self.cells[k][cell]
    }

    /// Canonical coset representative of a cell.
    pub fn cell_rep(&self, k: usize, cell: usize) -> ElemId {
        let (tidx, coset) = self.cells[k][cell];
        self.cosets[self.tuples[k][tidx].i_obj()].reps[coset]
    }

    /// `g{rep}:` followed by the object name (dimension 0) or the arrow
    /// names joined with `;` — mirroring realization labels.
    pub fn cell_label(&self, k: usize, cell: usize) -> String {
        let (tidx, _) = self.cells[k][cell];
        let rep = self.cell_rep(k, cell);
        let bs = self.block.scwol();
        let tuple = &self.tuples[k][tidx];
        let body = if k == 0 {
            bs.object_name(tuple.i_obj()).to_string()
        } else {
            tuple
                .arrows()
                .iter()
                .map(|&a| bs.arrow_name(a))
                .collect::<Vec<_>>()
                .join(";")
        };
        format!("g{rep}:{body}")
    }

    /// Facet gluing records of a cell (`2k` of them, coordinate-major).
    pub fn facets(&self, k: usize, cell: usize) -> &[FacetGlue] {
        &self.facets[k][cell]
    }

    /// Left action of `G_σ` on cells: the coset index moves, the tuple stays.
    pub fn act_cell(&self, g: ElemId, k: usize, cell: usize) -> usize {
        let (tidx, coset) = self.cells[k][cell];
        let part = &self.cosets[self.tuples[k][tidx].i_obj()];
        let moved = part.coset_of(self.group().mul(g, part.reps[coset]));
        self.cell_index(k, tidx, moved)
    }

    /// Elements fixing a cell.
    pub fn cell_stabilizer(&self, k: usize, cell: usize) -> Vec<ElemId> {
        (0..self.group().order())
            .filter(|&g| self.act_cell(g, k, cell) == cell)
            .collect()
    }

    /// Left action on points: acts on the coset representative and
    /// re-canonicalizes.
    pub fn act_point(&self, g: ElemId, p: &EPoint) -> EPoint {
        let (tidx, coset) = self.cells[p.dim][p.cell];
        let rep = self.cosets[self.tuples[p.dim][tidx].i_obj()].reps[coset];
        self.canonical_point(
            self.group().mul(g, rep),
            p.dim,
            tidx,
            p.fibre.clone(),
            p.cube.clone(),
        )
    }

    /// The projection of a point: the coset representative, the base tuple,
    /// and the cube coordinates collapsed onto barycentric coordinates of
    /// the corresponding realization simplex.
    pub fn project_point(&self, p: &EPoint) -> (ElemId, &ComposableTuple, Vec<BigRational>) {
        let (tidx, _) = self.cells[p.dim][p.cell];
        (
            self.cell_rep(p.dim, p.cell),
            &self.tuples[p.dim][tidx],
            cube_to_simplex(&p.cube),
        )
    }

    /// Evaluates the gluing of one facet: the point of the cell over
    /// `tuple_idx` with representative `g`, fibre point `x` and cube
    /// coordinates obtained by inserting the facet value at `coordinate`,
    /// pushed into the complex in canonical form. Both facet rules of a
    /// shared corner must give the same answer; construction checks that
    /// exhaustively.
    #[allow(clippy::too_many_arguments)]
    pub fn eval_facet(
        &self,
        k: usize,
        tuple_idx: usize,
        g: ElemId,
        x: &FibrePoint,
        coordinate: usize,
        upper: bool,
        rest: &[BigRational],
    ) -> EPoint {
        assert!(k >= 1 && (1..=k).contains(&coordinate), "facet out of range");
        assert_eq!(rest.len(), k - 1, "facet coordinates have length k − 1");
        if upper {
            let (g2, k2, idx2, y) = self.upper_step(g, k, tuple_idx, x, coordinate, &rest[..coordinate - 1]);
            self.eval_point(g2, k2, idx2, y, rest[coordinate - 1..].to_vec())
        } else {
            let sub = self
                .block
                .scwol()
                .tuple_boundary(&self.tuples[k][tuple_idx], coordinate)
                .expect("facet of an enumerated tuple");
            let (k2, idx2) = self.tuple_index[&sub];
            self.eval_point(g, k2, idx2, x.clone(), rest.to_vec())
        }
    }

    /// Canonical form of `[g, x]` over a tuple: the representative is
    /// reduced to the canonical coset representative and the difference,
    /// pulled back through the injective structure map, acts on the fibre.
    fn canonical_point(
        &self,
        g: ElemId,
        k: usize,
        tuple_idx: usize,
        x: FibrePoint,
        cube: Vec<BigRational>,
    ) -> EPoint {
        let i_obj = self.tuples[k][tuple_idx].i_obj();
        let part = &self.cosets[i_obj];
        let coset = part.coset_of(g);
        let rep = part.reps[coset];
        let gs = self.group();
        let shift = self.block.morphism().f_obj(i_obj)
            .preimage_of(gs.mul(gs.inv(rep), g))
            .expect("a coset member differs from its representative by an image element");
        EPoint {
            dim: k,
            cell: self.cell_index(k, tuple_idx, coset),
            fibre: self.models[i_obj].act(shift, &x),
            cube,
        }
    }

    /// Pushes a boundary point into canonical position, applying facet
    /// rules by the fixed priority: zero coordinates ascending, then unit
    /// coordinates ascending.
    fn eval_point(
        &self,
        g: ElemId,
        k: usize,
        tuple_idx: usize,
        x: FibrePoint,
        mut t: Vec<BigRational>,
    ) -> EPoint {
        debug_assert_eq!(t.len(), k);
        if let Some(p) = t.iter().position(Zero::is_zero) {
            let sub = self
                .block
                .scwol()
                .tuple_boundary(&self.tuples[k][tuple_idx], p + 1)
                .expect("facet of an enumerated tuple");
            let (k2, idx2) = self.tuple_index[&sub];
            t.remove(p);
            return self.eval_point(g, k2, idx2, x, t);
        }
        if let Some(p) = t.iter().position(One::is_one) {
            let (g2, k2, idx2, y) = self.upper_step(g, k, tuple_idx, &x, p + 1, &t[..p]);
            return self.eval_point(g2, k2, idx2, y, t[p + 1..].to_vec());
        }
        self.canonical_point(g, k, tuple_idx, x, t)
    }

    /// The `t_i = 1` rule: split the tuple at `i`, push the fibre through
    /// the top face of the prefix, and twist the representative by the
    /// inverse image of the prefix composition.
    fn upper_step(
        &self,
        g: ElemId,
        k: usize,
        tuple_idx: usize,
        x: &FibrePoint,
        i: usize,
        before: &[BigRational],
    ) -> (ElemId, usize, usize, FibrePoint) {
        let bs = self.block.scwol();
        let tuple = &self.tuples[k][tuple_idx];
        let arrows = tuple.arrows();
        let prefix = ComposableTuple::new(bs, arrows[..i].to_vec())
            .expect("prefixes of a composable tuple compose");
        let y = self.top_face(&prefix, x, before);
        let comp = bs
            .compose_tuple(&prefix)
            .expect("prefix arrows compose")
            .expect("the prefix is nonempty");
        let gs = self.group();
        let g2 = gs.mul(g, gs.inv(self.block.morphism().f_arrow(comp)));
        let suffix = if i == k {
            ComposableTuple::object(tuple.t_obj(bs))
        } else {
            ComposableTuple::new(bs, arrows[i..].to_vec())
                .expect("suffixes of a composable tuple compose")
        };
        let (k2, idx2) = self.tuple_index[&suffix];
        (g2, k2, idx2, y)
    }

    /// The fibre-level top face of a tuple, normalized so that the point
    /// `[g, x, A, (t, 1)]` equals `[g·F(a)⁻¹, top_face(A, x, t), t(A)]` with
    /// `a` the long composition. One arrow: the fibre map. Two arrows: the
    /// straight-line homotopy between the composite map and its
    /// twist-corrected factorization. Longer: the radial extension over the
    /// recursively determined boundary values.
    fn top_face(&self, tuple: &ComposableTuple, x: &FibrePoint, t: &[BigRational]) -> FibrePoint {
        let k = tuple.len();
        debug_assert_eq!(t.len(), k - 1);
        let bs = self.block.scwol();
        match k {
            1 => self.maps[tuple.arrows()[0]].apply(x),
            2 => {
                let (a, b) = (tuple.arrows()[0], tuple.arrows()[1]);
                self.homotopies[&(b, a)].eval(x, &t[0])
            }
            _ => {
                let comp = bs
                    .compose_tuple(tuple)
                    .expect("tuple arrows compose")
                    .expect("the tuple is nonempty");
                let ext = extend_equivariant(
                    &self.maps[comp],
                    |y: &FibrePoint, w: &[BigRational]| self.top_face_boundary(tuple, y, w),
                    k - 1,
                );
                ext(x, t)
            }
        }
    }

    /// Boundary values feeding the radial extension: a zero coordinate
    /// composes the tuple there; a unit coordinate splits the tuple and
    /// corrects by the inverse twisting element of (suffix, prefix).
    fn top_face_boundary(
        &self,
        tuple: &ComposableTuple,
        x: &FibrePoint,
        w: &[BigRational],
    ) -> FibrePoint {
        let bs = self.block.scwol();
        if let Some(p) = w.iter().position(Zero::is_zero) {
            let sub = bs
                .tuple_boundary(tuple, p + 1)
                .expect("facet of a composable tuple");
            let mut w2 = w.to_vec();
            w2.remove(p);
            return self.top_face(&sub, x, &w2);
        }
        let p = w
            .iter()
            .position(One::is_one)
            .expect("a boundary point of the cube has a coordinate at 0 or 1");
        let arrows = tuple.arrows();
        let prefix = ComposableTuple::new(bs, arrows[..p + 1].to_vec())
            .expect("prefixes of a composable tuple compose");
        let suffix = ComposableTuple::new(bs, arrows[p + 1..].to_vec())
            .expect("suffixes of a composable tuple compose");
        let y = self.top_face(&prefix, x, &w[..p]);
        let z = self.top_face(&suffix, &y, &w[p + 1..]);
        let comp_p = bs.compose_tuple(&prefix).unwrap().expect("nonempty prefix");
        let comp_s = bs.compose_tuple(&suffix).unwrap().expect("nonempty suffix");
        let tw = self.block.cog().twist(comp_s, comp_p);
        let model = &self.models[suffix.t_obj(bs)];
        model.act(model.group().inv(tw), &z)
    }
}

/// The cube-to-simplex collapse: barycentric coordinates
/// `s_{k−i} = t_i·∏_{j>i}(1−t_j)` and `s_k = ∏_j(1−t_j)`. Cube vertices map
/// to simplex vertices by the position of their last unit coordinate; the
/// all-zero vertex goes to the last simplex vertex.
pub fn cube_to_simplex(t: &[BigRational]) -> Vec<BigRational> {
    let k = t.len();
    let mut s = vec![BigRational::zero(); k + 1];
    let mut acc = BigRational::one();
    for i in (1..=k).rev() {
        s[k - i] = &t[i - 1] * &acc;
        acc *= BigRational::one() - &t[i - 1];
    }
    s[k] = acc;
    s
}

/// Assembles the classifying complex over the block of `sigma`, then runs
/// the full battery of exhaustive checks: the corner identity of every
/// composable pair, well-definedness of every facet over every coset
/// representative, agreement of every pair of facet rules on shared
/// corners, the collapse condition (†) on terminal facets, and equivariance
/// of the whole gluing under `G_σ`.
#[allow(non_snake_case)]
pub fn assemble_E(
    c: &ComplexOfGroups,
    sigma: ObjectId,
    fibres: &FibreSystem,
) -> Result<ECellComplex> {
    if fibres.models().len() != c.base().object_count()
        || (0..c.base().object_count()).any(|o| fibres.model(o).group() != c.group(o))
    {
        return Err(Error::FibreMismatch(
            "fibre system was built for a different complex of groups".into(),
        ));
    }
    let blk = block(c, sigma)?;
    let bs = blk.scwol().clone();
    let models: Vec<FibreModel> = (0..bs.object_count())
        .map(|o| fibres.model(blk.ambient_object(o)).clone())
        .collect();
    let maps: Vec<FibreMap> = (0..bs.arrow_count())
        .map(|a| fibres.map(blk.ambient_arrow(a)).clone())
        .collect();
    let cosets: Vec<CosetPartition> = (0..bs.object_count())
        .map(|o| left_cosets(blk.morphism().target(), &blk.morphism().f_obj(o).image()))
        .collect::<Result<_>>()?;

    let mut tuples = Vec::new();
    let mut tuple_index = BTreeMap::new();
    for k in 0.. {
        let layer = bs.composable_tuples(k);
        if layer.is_empty() {
            break;
        }
        for (i, t) in layer.iter().enumerate() {
            tuple_index.insert(t.clone(), (k, i));
        }
        tuples.push(layer);
    }

    let gs = blk.morphism().target().clone();
    let mut homotopies = BTreeMap::new();
    for pair in bs.composable_tuples(2) {
        let (a, b) = (pair.arrows()[0], pair.arrows()[1]);
        let comp = bs.compose(b, a)?;
        let tw = blk.cog().twist(b, a);
        // The corner identity the square cells later rely on:
        // F(ba)⁻¹·ψ_{σ,t(b)}(g_{b,a})⁻¹ = F(a)⁻¹·F(b)⁻¹ in G_σ.
        let f = blk.morphism();
        let lhs = gs.mul(
            gs.inv(f.f_arrow(comp)),
            gs.inv(f.f_obj(bs.t(b)).apply(tw)),
        );
        let rhs = gs.mul(gs.inv(f.f_arrow(a)), gs.inv(f.f_arrow(b)));
        if lhs != rhs {
            return Err(Error::NotWellDefined(format!(
                "corner identity fails for the pair (`{}`, `{}`): {lhs} != {rhs}",
                bs.arrow_name(b),
                bs.arrow_name(a)
            )));
        }
        let f0 = maps[comp].clone();
        let f1 = FibreMap::new(
            models[bs.i(a)].clone(),
            models[bs.t(b)].clone(),
            blk.cog().psi(comp).clone(),
            blk.cog().group(bs.t(b)).inv(tw),
        )?;
        // f1 is the twist-corrected composite on every vertex.
        let composed = FibreMap::compose(&maps[b], &maps[a])?;
        let tgt = blk.cog().group(bs.t(b));
        for e in 0..blk.cog().group(bs.i(a)).order() {
            if f1.vertex_image(e) != tgt.mul(tgt.inv(tw), composed.vertex_image(e)) {
                return Err(Error::NotWellDefined(format!(
                    "homotopy endpoint for the pair (`{}`, `{}`) is not the twist-corrected composite at vertex {e}",
                    bs.arrow_name(b),
                    bs.arrow_name(a)
                )));
            }
        }
        homotopies.insert((b, a), straightline_homotopy(&f0, &f1)?);
    }

    let mut cells = Vec::new();
    let mut offsets = Vec::new();
    for layer in &tuples {
        let mut layer_cells = Vec::new();
        let mut layer_offsets = Vec::new();
        for (tidx, t) in layer.iter().enumerate() {
            layer_offsets.push(layer_cells.len());
            for coset in 0..cosets[t.i_obj()].cosets.len() {
                layer_cells.push((tidx, coset));
            }
        }
        cells.push(layer_cells);
        offsets.push(layer_offsets);
    }

    let mut complex = ECellComplex {
        block: blk,
        kind: fibres.kind(),
        models,
        maps,
        homotopies,
        cosets,
        tuples,
        tuple_index,
        cells,
        offsets,
        facets: Vec::new(),
    };
    complex.facets = build_facets(&complex)?;
    check_facet_evaluations(&complex)?;
    check_corner_routes(&complex)?;
    check_equivariance(&complex)?;
    Ok(complex)
}

/// Builds the facet gluing table, checking each twisted coset map over
/// every representative.
fn build_facets(e: &ECellComplex) -> Result<Vec<Vec<Vec<FacetGlue>>>> {
    let bs = e.block.scwol();
    let gs = e.group();
    let mut all = vec![Vec::new()];
    for k in 1..e.dims() {
        let mut layer = Vec::new();
        for &(tidx, coset) in &e.cells[k] {
            let tuple = &e.tuples[k][tidx];
            let members = &e.cosets[tuple.i_obj()].cosets[coset];
            let mut records = Vec::with_capacity(2 * k);
            for coordinate in 1..=k {
                // Lower facet: the tuple boundary, same coset.
                let sub = bs.tuple_boundary(tuple, coordinate)?;
                let (k2, idx2) = e.tuple_index[&sub];
                records.push(FacetGlue {
                    coordinate,
                    upper: false,
                    target_dim: k2,
                    target_cell: e.cell_index(k2, idx2, coset),
                    degenerate: false,
                });
                // Upper facet: split at `coordinate`, twist the coset.
                let arrows = tuple.arrows();
                let prefix = ComposableTuple::new(bs, arrows[..coordinate].to_vec())?;
                let comp = bs
                    .compose_tuple(&prefix)?
                    .expect("the prefix is nonempty");
                let tw_inv = gs.inv(e.block.morphism().f_arrow(comp));
                let suffix = if coordinate == k {
                    ComposableTuple::object(tuple.t_obj(bs))
                } else {
                    ComposableTuple::new(bs, arrows[coordinate..].to_vec())?
                };
                let (k2, idx2) = e.tuple_index[&suffix];
                let part = &e.cosets[suffix.i_obj()];
                let target = part.coset_of(gs.mul(members[0], tw_inv));
                for &m in members {
                    let got = part.coset_of(gs.mul(m, tw_inv));
                    if got != target {
                        return Err(Error::NotWellDefined(format!(
                            "facet t_{coordinate}=1 of the cell over `{}`: representatives {} and {} land in different cosets",
                            e.cell_label(k, e.cell_index(k, tidx, coset)),
                            members[0],
                            m
                        )));
                    }
                }
                records.push(FacetGlue {
                    coordinate,
                    upper: true,
                    target_dim: k2,
                    target_cell: e.cell_index(k2, idx2, target),
                    degenerate: k2 < k - 1,
                });
            }
            records.sort_by_key(|r| (r.coordinate, r.upper));
            layer.push(records);
        }
        all.push(layer);
    }
    Ok(all)
}

/// Checks that evaluating each facet at its centre lands in the recorded
/// target cell, for every coset representative and fibre sample — in
/// particular that the terminal facet of every `k ≥ 2` cell collapses into
/// the fibre over the terminal object (condition (†)).
fn check_facet_evaluations(e: &ECellComplex) -> Result<()> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for k in 1..e.dims() {
        for (cell, &(tidx, coset)) in e.cells[k].iter().enumerate() {
            let tuple = &e.tuples[k][tidx];
            let members = e.cosets[tuple.i_obj()].cosets[coset].clone();
            let samples = e.models[tuple.i_obj()].samples();
            let rest = vec![half.clone(); k - 1];
            for glue in &e.facets[k][cell] {
                for &m in &members {
                    for x in &samples {
                        let p = e.eval_facet(k, tidx, m, x, glue.coordinate, glue.upper, &rest);
                        if p.dim != glue.target_dim || p.cell != glue.target_cell {
                            return Err(Error::NotWellDefined(format!(
                                "facet t_{}={} of `{}` evaluates into dimension {} cell {}, but the gluing record says dimension {} cell {}",
                                glue.coordinate,
                                u8::from(glue.upper),
                                e.cell_label(k, cell),
                                p.dim,
                                p.cell,
                                glue.target_dim,
                                glue.target_cell
                            )));
                        }
                    }
                }
                if k >= 2 && glue.coordinate == k && glue.upper && glue.target_dim != 0 {
                    return Err(Error::NotWellDefined(format!(
                        "condition (†) fails: the terminal facet of `{}` does not collapse into the terminal fibre",
                        e.cell_label(k, cell)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Every pair of facet rules must agree where their facets meet. The shared
/// corner is sampled over a small rational grid in the remaining
/// coordinates, for every coset representative and fibre sample.
fn check_corner_routes(e: &ECellComplex) -> Result<()> {
    let values = [
        BigRational::new(BigInt::one(), BigInt::from(3)),
        BigRational::new(BigInt::one(), BigInt::from(2)),
    ];
    for k in 2..e.dims() {
        for &(tidx, coset) in &e.cells[k] {
            let tuple = &e.tuples[k][tidx];
            let members = e.cosets[tuple.i_obj()].cosets[coset].clone();
            let samples = e.models[tuple.i_obj()].samples();
            for ci in 1..=k {
                for cj in ci + 1..=k {
                    for upper_i in [false, true] {
                        for upper_j in [false, true] {
                            for fill in coordinate_grid(k - 2, &values) {
                                let mut t = Vec::with_capacity(k);
                                let mut fill_iter = fill.iter();
                                for pos in 1..=k {
                                    if pos == ci {
                                        t.push(facet_value(upper_i));
                                    } else if pos == cj {
                                        t.push(facet_value(upper_j));
                                    } else {
                                        t.push(fill_iter.next().unwrap().clone());
                                    }
                                }
                                let rest_i = drop_at(&t, ci - 1);
                                let rest_j = drop_at(&t, cj - 1);
                                for &m in &members {
                                    for x in &samples {
                                        let via_i =
                                            e.eval_facet(k, tidx, m, x, ci, upper_i, &rest_i);
                                        let via_j =
                                            e.eval_facet(k, tidx, m, x, cj, upper_j, &rest_j);
                                        if via_i != via_j {
                                            return Err(Error::NotWellDefined(format!(
                                                "facets t_{ci}={} and t_{cj}={} of the cell over `{}` disagree at their corner",
                                                u8::from(upper_i),
                                                u8::from(upper_j),
                                                e.cell_label(k, e.cell_index(k, tidx, coset)),
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The left `G_σ` action must commute with every facet gluing.
fn check_equivariance(e: &ECellComplex) -> Result<()> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let gs = e.group().clone();
    for k in 1..e.dims() {
        for &(tidx, coset) in &e.cells[k] {
            let tuple = &e.tuples[k][tidx];
            let rep = e.cosets[tuple.i_obj()].reps[coset];
            let samples = e.models[tuple.i_obj()].samples();
            let rest = vec![half.clone(); k - 1];
            for glue in &e.facets[k][e.cell_index(k, tidx, coset)] {
                for g in 0..gs.order() {
                    for x in &samples {
                        let moved =
                            e.eval_facet(k, tidx, gs.mul(g, rep), x, glue.coordinate, glue.upper, &rest);
                        let acted =
                            e.act_point(g, &e.eval_facet(k, tidx, rep, x, glue.coordinate, glue.upper, &rest));
                        if moved != acted {
                            return Err(Error::NotWellDefined(format!(
                                "the action of {g} does not commute with facet t_{}={} of `{}`",
                                glue.coordinate,
                                u8::from(glue.upper),
                                e.cell_label(k, e.cell_index(k, tidx, coset)),
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn facet_value(upper: bool) -> BigRational {
    if upper {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

fn drop_at(t: &[BigRational], pos: usize) -> Vec<BigRational> {
    let mut out = t.to_vec();
    out.remove(pos);
    out
}

fn coordinate_grid(slots: usize, values: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..slots {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// The cubical chain complex of an assembly with point fibres: the boundary
/// of a k-cell is the signed sum of its nondegenerate facets, with the
/// terminal-collapse and inner-split facets contributing zero. The signs
/// mirror the Δ-realization convention under the cell bijection: the
/// `t_1 = 1` facet carries `+1`, the `t_i = 0` facet carries `(−1)^i`.
pub fn cubical_chain_complex(e: &ECellComplex) -> Result<ChainComplex> {
    if e.kind() != FibreKind::Point {
        return Err(Error::PointFibresRequired);
    }
    let counts = e.counts();
    let mut boundaries = Vec::new();
    for k in 1..e.dims() {
        let mut m = IntMatrix::zeros(counts[k - 1], counts[k]);
        for cell in 0..counts[k] {
            for glue in e.facets(k, cell) {
                if glue.degenerate {
                    continue;
                }
                let sign = if glue.upper || glue.coordinate % 2 == 0 {
                    1
                } else {
                    -1
                };
                m.add_to(glue.target_cell, cell, &BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    let labels = (0..e.dims())
        .map(|k| (0..counts[k]).map(|c| e.cell_label(k, c)).collect())
        .collect();
    ChainComplex::new(counts, boundaries, labels)
}

/// One twisted embedding between assemblies: per dimension, where each cell
/// of the source assembly lands in the target assembly.
#[derive(Clone, Debug)]
pub struct CellEmbedding {
    /// The ambient arrow the embedding follows (from the bigger simplex's
    /// assembly into the smaller's).
    pub arrow: ArrowId,
    /// `cell_map[k][cell]` in the source indexes a cell of the target.
    pub cell_map: Vec<Vec<usize>>,
}

/// Assemblies for every object of a complex of groups, tied together by
/// twisted embeddings along every arrow.
#[derive(Clone, Debug)]
pub struct CompatibleSystem {
    cog: ComplexOfGroups,
    kind: FibreKind,
    spaces: Vec<ECellComplex>,
    embeddings: Vec<CellEmbedding>,
}

impl CompatibleSystem {
    pub fn cog(&self) -> &ComplexOfGroups {
        &self.cog
    }

    pub fn kind(&self) -> FibreKind {
        self.kind
    }

    pub fn space(&self, o: ObjectId) -> &ECellComplex {
        &self.spaces[o]
    }

    pub fn spaces(&self) -> &[ECellComplex] {
        &self.spaces
    }

    pub fn embedding(&self, a: ArrowId) -> &CellEmbedding {
        &self.embeddings[a]
    }

    /// Pushes a canonical point of the assembly at `i(b)` through the
    /// twisted embedding along `b`: the representative maps through ψ_b and
    /// picks up the twisting element, the fibre and cube coordinates ride
    /// along.
    pub fn embed_point(&self, b: ArrowId, p: &EPoint) -> EPoint {
        let src = &self.spaces[self.cog.base().i(b)];
        let tgt = &self.spaces[self.cog.base().t(b)];
        let (tidx, _) = src.cell(p.dim, p.cell);
        let rep = src.cell_rep(p.dim, p.cell);
        let (carried, k2, idx2) = embedded_cell_data(&self.cog, src, tgt, b, p.dim, tidx, rep);
        debug_assert_eq!(k2, p.dim);
        tgt.canonical_point(carried, k2, idx2, p.fibre.clone(), p.cube.clone())
    }
}

/// The twisted image of one cell representative: the target tuple position
/// and the carried representative `ψ_b(g)·g_{b,a}`, where `a` is the direct
/// arrow from the tuple's initial object to `i(b)` (the identity twist when
/// the tuple starts at `i(b)` itself).
fn embedded_cell_data(
    c: &ComplexOfGroups,
    src: &ECellComplex,
    tgt: &ECellComplex,
    b: ArrowId,
    k: usize,
    tidx: usize,
    g: ElemId,
) -> (ElemId, usize, usize) {
    let base = c.base();
    let tuple = &src.tuples[k][tidx];
    let amb_initial = src.block.ambient_object(tuple.i_obj());
    let target_tuple = if k == 0 {
        ComposableTuple::object(
            tgt.block
                .block_object(amb_initial)
                .expect("objects of a contained block lie in the containing block"),
        )
    } else {
        let arrows = tuple
            .arrows()
            .iter()
            .map(|&a| {
                tgt.block
                    .block_arrow(src.block.ambient_arrow(a))
                    .expect("arrows of a contained block lie in the containing block")
            })
            .collect();
        ComposableTuple::new(tgt.block.scwol(), arrows)
            .expect("a composable tuple stays composable in the containing block")
    };
    let (k2, idx2) = tgt
        .tuple_position(&target_tuple)
        .expect("the containing block enumerates every contained tuple");
    let twist = if amb_initial == base.i(b) {
        0
    } else {
        let a = base
            .direct_arrow(amb_initial, base.i(b))
            .expect("tuple objects have arrows into the block centre");
        c.twist(b, a)
    };
    let gs = tgt.group();
    (gs.mul(c.psi(b).apply(g), twist), k2, idx2)
}

/// Builds the assemblies of one fibre kind for every object and the twisted
/// embedding along every arrow, then checks exhaustively: well-definedness
/// of each embedding over all coset representatives, injectivity on cells,
/// ψ_b-equivariance, and the compatibility identity
/// `φ_c ∘ φ_b = g_{c,b}·φ_{cb}` on every cell of every composable pair —
/// for full-simplex fibres also on every fibre sample point.
pub fn build_compatible_system(c: &ComplexOfGroups, kind: FibreKind) -> Result<CompatibleSystem> {
    let fibres = default_fibres(c, kind);
    let base = c.base();
    let spaces: Vec<ECellComplex> = (0..base.object_count())
        .map(|o| assemble_E(c, o, &fibres))
        .collect::<Result<_>>()?;

    let mut embeddings = Vec::new();
    for b in 0..base.arrow_count() {
        let src = &spaces[base.i(b)];
        let tgt = &spaces[base.t(b)];
        let mut cell_map = Vec::new();
        for k in 0..src.dims() {
            let mut layer = Vec::new();
            for cell in 0..src.cell_count(k) {
                let (tidx, coset) = src.cell(k, cell);
                let members = src.cosets[src.tuples[k][tidx].i_obj()].cosets[coset].clone();
                let (carried, k2, idx2) =
                    embedded_cell_data(c, src, tgt, b, k, tidx, members[0]);
                let part = &tgt.cosets[tgt.tuples[k2][idx2].i_obj()];
                let target_coset = part.coset_of(carried);
                for &m in &members {
                    let (other, _, _) = embedded_cell_data(c, src, tgt, b, k, tidx, m);
                    if part.coset_of(other) != target_coset {
                        return Err(Error::NotWellDefined(format!(
                            "embedding along `{}` maps representatives {} and {} of `{}` to different cells",
                            base.arrow_name(b),
                            members[0],
                            m,
                            src.cell_label(k, cell)
                        )));
                    }
                }
                layer.push(tgt.cell_index(k2, idx2, target_coset));
            }
            let mut seen = layer.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != layer.len() {
                return Err(Error::NotWellDefined(format!(
                    "embedding along `{}` is not injective on {k}-cells",
                    base.arrow_name(b)
                )));
            }
            cell_map.push(layer);
        }
        // ψ_b-equivariance on every cell and group element.
        let psi = c.psi(b);
        for g in 0..src.group().order() {
            for k in 0..src.dims() {
                for cell in 0..src.cell_count(k) {
                    let lhs = cell_map[k][src.act_cell(g, k, cell)];
                    let rhs = tgt.act_cell(psi.apply(g), k, cell_map[k][cell]);
                    if lhs != rhs {
                        return Err(Error::NotWellDefined(format!(
                            "embedding along `{}` is not ψ-equivariant at element {g}, {k}-cell {cell}",
                            base.arrow_name(b)
                        )));
                    }
                }
            }
        }
        embeddings.push(CellEmbedding { arrow: b, cell_map });
    }

    let system = CompatibleSystem {
        cog: c.clone(),
        kind,
        spaces,
        embeddings,
    };

    // Compatibility of embeddings along every composable pair:
    // φ_c ∘ φ_b = g_{c,b} · φ_{cb}.
    for pair in base.composable_tuples(2) {
        let (b_in, c_out) = (pair.arrows()[0], pair.arrows()[1]);
        let cb = base.compose(c_out, b_in)?;
        let tw = c.twist(c_out, b_in);
        let src = system.space(base.i(b_in));
        let tgt = system.space(base.t(c_out));
        for k in 0..src.dims() {
            for cell in 0..src.cell_count(k) {
                let via_two =
                    system.embeddings[c_out].cell_map[k][system.embeddings[b_in].cell_map[k][cell]];
                let direct = tgt.act_cell(tw, k, system.embeddings[cb].cell_map[k][cell]);
                if via_two != direct {
                    return Err(Error::NotWellDefined(format!(
                        "embeddings along `{}` then `{}` disagree with the twisted composite on {k}-cell {cell}",
                        base.arrow_name(b_in),
                        base.arrow_name(c_out)
                    )));
                }
                if kind == FibreKind::FullSimplex {
                    let (tidx, _) = src.cell(k, cell);
                    let cube = vec![BigRational::new(BigInt::one(), BigInt::from(2)); k];
                    for x in src.models[src.tuples[k][tidx].i_obj()].samples() {
                        let p = EPoint {
                            dim: k,
                            cell,
                            fibre: x,
                            cube: cube.clone(),
                        };
                        let via_two_pt =
                            system.embed_point(c_out, &system.embed_point(b_in, &p));
                        let direct_pt = tgt.act_point(tw, &system.embed_point(cb, &p));
                        if via_two_pt != direct_pt {
                            return Err(Error::NotWellDefined(format!(
                                "point-level compatibility fails along `{}` then `{}` at {k}-cell {cell}",
                                base.arrow_name(b_in),
                                base.arrow_name(c_out)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::realize;
    use crate::development::local_development;
    use crate::fixtures;
    use crate::homology::{chain_from_delta, homology, is_point_homology};

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent oracle: the coset-times-tuple count per dimension,
    /// straight from the block data.
    fn coset_tuple_counts(c: &ComplexOfGroups, sigma: ObjectId) -> Vec<usize> {
        let blk = block(c, sigma).unwrap();
        let gs = blk.morphism().target();
        let mut counts = Vec::new();
        for k in 0.. {
            let layer = blk.scwol().composable_tuples(k);
            if layer.is_empty() {
                break;
            }
            counts.push(
                layer
                    .iter()
                    .map(|t| gs.order() / blk.morphism().f_obj(t.i_obj()).image().len())
                    .sum(),
            );
        }
        counts
    }

    #[test]
    fn tri3_point_assembly_has_the_coset_counted_cells() {
        let cog = fixtures::triangle_with_c2_vertex();
        let v = cog.base().object_id("v").unwrap();
        let fibres = default_fibres(&cog, FibreKind::Point);
        let e = assemble_E(&cog, v, &fibres).unwrap();
        assert_eq!(e.counts(), vec![7, 10, 4]);
        assert_eq!(e.counts(), coset_tuple_counts(&cog, v));
        let chain = cubical_chain_complex(&e).unwrap();
        assert!(is_point_homology(&homology(&chain)));
    }

    #[test]
    fn seg_point_assemblies_are_a_path_and_a_point() {
        let cog = fixtures::segment();
        let fibres = default_fibres(&cog, FibreKind::Point);
        let u = cog.base().object_id("u").unwrap();
        let e = assemble_E(&cog, u, &fibres).unwrap();
        assert_eq!(e.counts(), vec![3, 2]);
        assert!(is_point_homology(&homology(&cubical_chain_complex(&e).unwrap())));
        let edge = cog.base().object_id("u,w").unwrap();
        let e = assemble_E(&cog, edge, &fibres).unwrap();
        assert_eq!(e.counts(), vec![1]);
        assert!(is_point_homology(&homology(&cubical_chain_complex(&e).unwrap())));
    }

    #[test]
    fn trivial_cog_assemblies_match_the_block_cube_decomposition() {
        let cog = fixtures::trivial_over(fixtures::tetrahedron());
        let fibres = default_fibres(&cog, FibreKind::Point);
        for sigma in 0..cog.base().object_count() {
            let e = assemble_E(&cog, sigma, &fibres).unwrap();
            let blk = block(&cog, sigma).unwrap();
            let tuple_counts: Vec<usize> = (0..e.dims())
                .map(|k| blk.scwol().composable_tuples(k).len())
                .collect();
            assert_eq!(e.counts(), tuple_counts);
            assert!(is_point_homology(&homology(
                &cubical_chain_complex(&e).unwrap()
            )));
        }
        // A vertex block of the tetrahedron reaches cube dimension 3.
        let v = 0;
        let e = assemble_E(&cog, v, &fibres).unwrap();
        assert_eq!(e.counts(), vec![8, 19, 18, 6]);
    }

    #[test]
    fn assembly_homology_matches_the_local_development_realization() {
        let twisted = fixtures::twisted_triangle();
        let cogs = [
            fixtures::segment(),
            fixtures::triangle_with_c2_vertex(),
            twisted.cog,
        ];
        for cog in &cogs {
            let fibres = default_fibres(cog, FibreKind::Point);
            for sigma in 0..cog.base().object_count() {
                let e = assemble_E(cog, sigma, &fibres).unwrap();
                let dev = local_development(cog, sigma).unwrap();
                let delta = realize(dev.scwol());
                assert_eq!(e.counts(), delta.counts(), "cell counts at object {sigma}");
                let ours = homology(&cubical_chain_complex(&e).unwrap());
                let theirs = homology(&chain_from_delta(&delta).unwrap());
                assert_eq!(ours, theirs, "homology at object {sigma}");
            }
        }
    }

    #[test]
    fn the_local_group_acts_cellwise_with_image_stabilizers() {
        let twisted = fixtures::twisted_triangle();
        let cogs = [fixtures::triangle_with_c2_vertex(), twisted.cog];
        for cog in &cogs {
            let fibres = default_fibres(cog, FibreKind::Point);
            for sigma in 0..cog.base().object_count() {
                let e = assemble_E(cog, sigma, &fibres).unwrap();
                for k in 0..e.dims() {
                    let mut orbit_count = 0;
                    let mut seen = vec![false; e.cell_count(k)];
                    for cell in 0..e.cell_count(k) {
                        if !seen[cell] {
                            orbit_count += 1;
                            for g in 0..e.group().order() {
                                seen[e.act_cell(g, k, cell)] = true;
                            }
                        }
                        let (tidx, coset) = e.cell(k, cell);
                        if coset == 0 {
                            let i_obj = e.tuples(k)[tidx].i_obj();
                            assert_eq!(
                                e.cell_stabilizer(k, cell),
                                e.block().morphism().f_obj(i_obj).image(),
                                "stabilizer of the identity-coset cell"
                            );
                        }
                    }
                    // Transitivity on each fibre: one orbit per tuple.
                    assert_eq!(orbit_count, e.tuples(k).len());
                }
            }
        }
    }

    #[test]
    fn full_simplex_assemblies_pass_the_exhaustive_checks() {
        let twisted = fixtures::twisted_triangle();
        let fibres = default_fibres(&twisted.cog, FibreKind::FullSimplex);
        for sigma in 0..twisted.cog.base().object_count() {
            let e = assemble_E(&twisted.cog, sigma, &fibres).unwrap();
            assert!(matches!(
                cubical_chain_complex(&e),
                Err(Error::PointFibresRequired)
            ));
        }
    }

    #[test]
    fn facet_routes_agree_on_a_twisted_square() {
        let twisted = fixtures::twisted_triangle();
        let cog = &twisted.cog;
        let fibres = default_fibres(cog, FibreKind::FullSimplex);
        // Hunt for a square cell whose prefix twist is nontrivial.
        let mut exercised = false;
        for sigma in 0..cog.base().object_count() {
            let e = assemble_E(cog, sigma, &fibres).unwrap();
            if e.dims() < 3 {
                continue;
            }
            let gs = e.group().clone();
            for (tidx, tuple) in e.tuples(2).iter().enumerate() {
                let (a, b) = (tuple.arrows()[0], tuple.arrows()[1]);
                let f = e.block().morphism();
                let comp = e.block().scwol().compose(b, a).unwrap();
                let split = gs.mul(gs.inv(f.f_arrow(a)), gs.inv(f.f_arrow(b)));
                let direct = gs.inv(f.f_arrow(comp));
                let x = e.model(tuple.i_obj()).basepoint();
                let corner = [BigRational::one()];
                let via_split = e.eval_facet(2, tidx, 0, &x, 1, true, &corner);
                let via_top = e.eval_facet(2, tidx, 0, &x, 2, true, &corner);
                assert_eq!(via_split, via_top);
                if split != direct {
                    // The two routes traverse genuinely different
                    // representatives, so their agreement is the twisted
                    // corner identity at work.
                    exercised = true;
                }
            }
        }
        assert!(exercised, "the twisted fixture exercises a twisted corner");
    }

    #[test]
    fn condition_dagger_sends_top_facets_into_the_terminal_fibre() {
        let cog = fixtures::triangle_with_c2_vertex();
        let v = cog.base().object_id("v").unwrap();
        let fibres = default_fibres(&cog, FibreKind::FullSimplex);
        let e = assemble_E(&cog, v, &fibres).unwrap();
        for (tidx, tuple) in e.tuples(2).iter().enumerate() {
            let terminal = tuple.t_obj(e.block().scwol());
            let x = e.model(tuple.i_obj()).barycenter();
            for t1 in [rational(1, 4), rational(1, 2), rational(3, 4)] {
                let p = e.eval_facet(2, tidx, 0, &x, 2, true, &[t1]);
                assert_eq!(p.dim, 0);
                let (t0, _) = e.cell(0, p.cell);
                assert_eq!(e.tuples(0)[t0].i_obj(), terminal);
            }
        }
    }

    #[test]
    fn the_projection_collapses_cubes_onto_simplices() {
        assert_eq!(
            cube_to_simplex(&[BigRational::zero(), BigRational::zero()]),
            vec![BigRational::zero(), BigRational::zero(), BigRational::one()]
        );
        assert_eq!(
            cube_to_simplex(&[BigRational::one(), BigRational::zero()]),
            vec![BigRational::zero(), BigRational::one(), BigRational::zero()]
        );
        assert_eq!(
            cube_to_simplex(&[rational(1, 3), BigRational::one()]),
            vec![BigRational::one(), BigRational::zero(), BigRational::zero()]
        );
        let s = cube_to_simplex(&[rational(1, 3), rational(1, 2)]);
        assert_eq!(s.iter().sum::<BigRational>(), BigRational::one());
        // Through a point of an assembled cell.
        let cog = fixtures::triangle_with_c2_vertex();
        let v = cog.base().object_id("v").unwrap();
        let fibres = default_fibres(&cog, FibreKind::Point);
        let e = assemble_E(&cog, v, &fibres).unwrap();
        let cube = vec![rational(1, 3), rational(1, 2)];
        let p = EPoint {
            dim: 2,
            cell: 0,
            fibre: e.model(e.tuples(2)[0].i_obj()).basepoint(),
            cube,
        };
        let (rep, tuple, coords) = e.project_point(&p);
        assert_eq!(rep, e.cell_rep(2, 0));
        assert_eq!(tuple.len(), 2);
        assert_eq!(coords.iter().sum::<BigRational>(), BigRational::one());
    }

    #[test]
    fn trivial_system_embeddings_are_block_inclusions() {
        let cog = fixtures::trivial_over(fixtures::triangle());
        let system = build_compatible_system(&cog, FibreKind::Point).unwrap();
        assert_eq!(system.spaces().len(), cog.base().object_count());
        for b in 0..cog.base().arrow_count() {
            let emb = system.embedding(b);
            let src = system.space(cog.base().i(b));
            for k in 0..src.dims() {
                assert_eq!(emb.cell_map[k].len(), src.cell_count(k));
            }
        }
    }

    #[test]
    fn tri3_system_compatibility_holds_with_identity_twists() {
        let cog = fixtures::triangle_with_c2_vertex();
        assert!(!cog.has_nontrivial_twists());
        let system = build_compatible_system(&cog, FibreKind::Point).unwrap();
        assert_eq!(system.embeddings.len(), cog.base().arrow_count());
    }

    #[test]
    fn twisted_system_compatibility_needs_the_twisting_elements() {
        let twisted = fixtures::twisted_triangle();
        let cog = &twisted.cog;
        let system = build_compatible_system(cog, FibreKind::Point).unwrap();
        // A composable ambient pair with a nontrivial twist whose embeddings
        // genuinely differ from the naive composite.
        let base = cog.base();
        let mut witnessed = false;
        for pair in base.composable_tuples(2) {
            let (b_in, c_out) = (pair.arrows()[0], pair.arrows()[1]);
            let tw = cog.twist(c_out, b_in);
            if tw == 0 {
                continue;
            }
            let cb = base.compose(c_out, b_in).unwrap();
            let tgt = system.space(base.t(c_out));
            for k in 0..system.space(base.i(b_in)).dims() {
                for cell in 0..system.space(base.i(b_in)).cell_count(k) {
                    let via_two = system.embeddings[c_out].cell_map[k]
                        [system.embeddings[b_in].cell_map[k][cell]];
                    let plain = system.embeddings[cb].cell_map[k][cell];
                    assert_eq!(via_two, tgt.act_cell(tw, k, plain));
                    if via_two != plain {
                        witnessed = true;
                    }
                }
            }
        }
        assert!(
            witnessed,
            "some twisted pair separates the composite from the naive embedding"
        );
        // The full-simplex system re-runs the point-level checks.
        build_compatible_system(cog, FibreKind::FullSimplex).unwrap();
    }

    #[test]
    fn assemble_rejects_foreign_fibre_systems() {
        let seg_fibres = default_fibres(&fixtures::segment(), FibreKind::Point);
        let cog = fixtures::triangle_with_c2_vertex();
        assert!(matches!(
            assemble_E(&cog, 0, &seg_fibres),
            Err(Error::FibreMismatch(_))
        ));
    }
}
