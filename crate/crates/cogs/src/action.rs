//! Group actions on simplicial complexes and the complexes of groups they
//! induce.
//!
//! An action is stored as a total table — one vertex map per group element —
//! and validated exhaustively: every element must act simplicially, the
//! table must respect the group multiplication, and (for inducing) no
//! element may map a simplex to itself without fixing it pointwise. Inducing
//! a complex of groups follows the lift-and-transport construction: choose a
//! lift of every quotient simplex, choose a transport element `h_a` per
//! quotient arrow, read off stabilizers as local groups, conjugation by
//! `h_a` as the injections, and `h_b · h_a · h_{ba}⁻¹` as the twists. Where
//! the construction says "choose", a [`ChoicePolicy`] decides; the result
//! validates for every policy, and the choices are returned so a run can be
//! reproduced.

use crate::cog::{ComplexOfGroups, MorphismToGroup};
use crate::error::{Error, Result};
use crate::group::{ElemId, FinGroup, GroupHom};
use crate::scwol::scwol_of_complex;
use crate::simplicial::{Simplex, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

/// A finite group acting on a simplicial complex, as a total vertex table.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    group: Arc<FinGroup>,
    complex: SimplicialComplex,
    /// `vertex_action[g][v]` = image of vertex `v` under element `g`.
    vertex_action: Vec<Vec<usize>>,
    /// `simplex_action[g][s]` = image of simplex `s`, precomputed while
    /// validating that images exist.
    simplex_action: Vec<Vec<usize>>,
}

impl SimplicialAction {
    /// Validates and stores an action: one bijective vertex row per element,
    /// the identity acting as the identity, rows composing like the group,
    /// and every simplex image present in the complex.
    pub fn new(
        group: Arc<FinGroup>,
        complex: SimplicialComplex,
        vertex_action: Vec<Vec<usize>>,
    ) -> Result<SimplicialAction> {
        let n = complex.vertex_count();
        if vertex_action.len() != group.order() {
            return Err(Error::NotSimplicial(format!(
                "{} vertex rows for a group of order {}",
                vertex_action.len(),
                group.order()
            )));
        }
        for (g, row) in vertex_action.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSimplicial(format!(
                    "row of element {g} has length {} for {n} vertices",
                    row.len()
                )));
            }
            let mut sorted = row.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::NotSimplicial(format!(
                    "element {g} does not act as a bijection on vertices"
                )));
            }
        }
        if vertex_action[group.id()] != (0..n).collect::<Vec<_>>() {
            return Err(Error::NotSimplicial(
                "the identity element does not act as the identity".into(),
            ));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                if (0..n).any(|v| vertex_action[ab][v] != vertex_action[a][vertex_action[b][v]]) {
                    return Err(Error::NotSimplicial(format!(
                        "rows of elements {a} and {b} do not compose like the group"
                    )));
                }
            }
        }
        let mut simplex_action = Vec::with_capacity(group.order());
        for (g, row) in vertex_action.iter().enumerate() {
            let mut images = Vec::with_capacity(complex.simplex_count());
            for s in 0..complex.simplex_count() {
                let mapped: Vec<usize> =
                    complex.simplex(s).vertices().iter().map(|&v| row[v]).collect();
                let image = Simplex::new(mapped)?;
                match complex.index_of(&image) {
                    Some(idx) => images.push(idx),
                    None => {
                        return Err(Error::NotSimplicial(format!(
                            "element {g} maps simplex `{}` outside the complex",
                            complex.simplex_key(s)
                        )))
                    }
                }
            }
            simplex_action.push(images);
        }
        Ok(SimplicialAction {
            group,
            complex,
            vertex_action,
            simplex_action,
        })
    }

    /// The action of a permutation group of degree equal to the vertex count,
    /// each element acting by its permutation.
    pub fn from_permutations(
        group: Arc<FinGroup>,
        complex: SimplicialComplex,
    ) -> Result<SimplicialAction> {
        if group.degree() as usize != complex.vertex_count() {
            return Err(Error::NotSimplicial(format!(
                "group degree {} does not match vertex count {}",
                group.degree(),
                complex.vertex_count()
            )));
        }
        let rows = (0..group.order())
            .map(|g| {
                (0..complex.vertex_count())
                    .map(|v| group.elem(g).apply(v as u16) as usize)
                    .collect()
            })
            .collect();
        SimplicialAction::new(group, complex, rows)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn act_vertex(&self, g: ElemId, v: usize) -> usize {
        self.vertex_action[g][v]
    }

    pub fn act_simplex(&self, g: ElemId, s: usize) -> usize {
        self.simplex_action[g][s]
    }

    /// First element mapping a simplex to itself without fixing it pointwise,
    /// if any.
    pub fn inversion_witness(&self) -> Option<(ElemId, usize)> {
        for g in 0..self.group.order() {
            for s in 0..self.complex.simplex_count() {
                if self.simplex_action[g][s] == s
                    && self
                        .complex
                        .simplex(s)
                        .vertices()
                        .iter()
                        .any(|&v| self.vertex_action[g][v] != v)
                {
                    return Some((g, s));
                }
            }
        }
        None
    }

    pub fn vertex_orbits(&self) -> Orbits {
        orbits_under(self.complex.vertex_count(), self.group.order(), |g, v| {
            self.vertex_action[g][v]
        })
    }

    pub fn simplex_orbits(&self) -> Orbits {
        orbits_under(self.complex.simplex_count(), self.group.order(), |g, s| {
            self.simplex_action[g][s]
        })
    }

    /// Setwise stabilizer of a simplex (pointwise once inversions are gone).
    pub fn stabilizer_of_simplex(&self, s: usize) -> Vec<ElemId> {
        (0..self.group.order())
            .filter(|&g| self.simplex_action[g][s] == s)
            .collect()
    }

    /// The same group acting on the barycentric subdivision: the barycentre
    /// of `σ` goes to the barycentre of `g·σ`.
    pub fn subdivided(&self) -> Result<SimplicialAction> {
        let sub = self.complex.barycentric_subdivision()?;
        let rows = (0..self.group.order())
            .map(|g| {
                sub.vertex_simplex
                    .iter()
                    .map(|&s| self.simplex_action[g][s])
                    .collect()
            })
            .collect();
        SimplicialAction::new(self.group.clone(), sub.complex, rows)
    }

    /// The quotient complex, with one vertex per vertex orbit (named after
    /// the orbit's least vertex) and one simplex per simplex orbit.
    ///
    /// Fails when the orbit projection is not an embedding on some simplex,
    /// or when two distinct simplex orbits project to the same vertex set —
    /// the two ways a quotient can stop being simplicial.
    pub fn quotient(&self) -> Result<Quotient> {
        let vorb = self.vertex_orbits();
        for s in 0..self.complex.simplex_count() {
            let mut proj: Vec<usize> = self
                .complex
                .simplex(s)
                .vertices()
                .iter()
                .map(|&v| vorb.of[v])
                .collect();
            let before = proj.len();
            proj.sort_unstable();
            proj.dedup();
            if proj.len() != before {
                return Err(Error::QuotientNotSimplicial(0));
            }
        }
        let sorb = self.simplex_orbits();
        let project = |s: usize| -> Vec<usize> {
            let mut proj: Vec<usize> = self
                .complex
                .simplex(s)
                .vertices()
                .iter()
                .map(|&v| vorb.of[v])
                .collect();
            proj.sort_unstable();
            proj
        };
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for o in 0..sorb.count() {
            if seen.insert(project(sorb.rep(o)), o).is_some() {
                return Err(Error::QuotientNotSimplicial(0));
            }
        }
        let names: Vec<String> = (0..vorb.count())
            .map(|o| self.complex.vertex_name(vorb.rep(o)).to_string())
            .collect();
        let gens: Vec<Vec<usize>> = (0..sorb.count()).map(|o| project(sorb.rep(o))).collect();
        let complex = SimplicialComplex::new(names, gens)?;
        debug_assert_eq!(
            complex.simplex_count(),
            sorb.count(),
            "faces of orbit projections are orbit projections"
        );
        let mut orbit_simplex = Vec::with_capacity(sorb.count());
        for o in 0..sorb.count() {
            let s = complex
                .index_of(&Simplex::new(project(sorb.rep(o)))?)
                .expect("projections generate the quotient");
            orbit_simplex.push(s);
        }
        let simplex_map = (0..self.complex.simplex_count())
            .map(|s| orbit_simplex[sorb.of[s]])
            .collect();
        let mut orbit_of_simplex = vec![usize::MAX; sorb.count()];
        for o in 0..sorb.count() {
            orbit_of_simplex[orbit_simplex[o]] = o;
        }
        Ok(Quotient {
            complex,
            simplex_map,
            orbit_of_simplex,
        })
    }
}

/// An orbit partition of an indexed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// Orbit id of each point; orbits are numbered by least member.
    pub of: Vec<usize>,
    /// Sorted members of each orbit.
    pub members: Vec<Vec<usize>>,
}

impl Orbits {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Least member of an orbit.
    pub fn rep(&self, o: usize) -> usize {
        self.members[o][0]
    }
}

fn orbits_under<F: Fn(ElemId, usize) -> usize>(n: usize, order: usize, act: F) -> Orbits {
    let mut of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for x in 0..n {
        if of[x] != usize::MAX {
            continue;
        }
        let mut mem: Vec<usize> = (0..order).map(|g| act(g, x)).collect();
        mem.sort_unstable();
        mem.dedup();
        let o = members.len();
        for &m in &mem {
            of[m] = o;
        }
        members.push(mem);
    }
    Orbits { of, members }
}

/// The orbit complex of an action, with the projection on simplices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: SimplicialComplex,
    /// Simplex of the acted-on complex → simplex of the quotient.
    pub simplex_map: Vec<usize>,
    /// Quotient simplex → orbit id in [`SimplicialAction::simplex_orbits`].
    pub orbit_of_simplex: Vec<usize>,
}

/// How to resolve the free choices (lifts and transport elements) in the
/// induced-complex construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// Always the least candidate — fully reproducible and twist-minimizing.
    Canonical,
    /// Seeded uniform choice.
    Random(u64),
    /// Always the greatest candidate, the easiest way to produce nontrivial
    /// twisting elements.
    Adversarial,
}

impl ChoicePolicy {
    pub fn label(&self) -> String {
        match self {
            ChoicePolicy::Canonical => "canonical".into(),
            ChoicePolicy::Random(seed) => format!("random:{seed}"),
            ChoicePolicy::Adversarial => "adversarial".into(),
        }
    }

    fn chooser(&self) -> Chooser {
        match self {
            ChoicePolicy::Canonical => Chooser::First,
            ChoicePolicy::Random(seed) => Chooser::Seeded(Box::new(ChaCha8Rng::seed_from_u64(*seed))),
            ChoicePolicy::Adversarial => Chooser::Last,
        }
    }
}

impl FromStr for ChoicePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChoicePolicy> {
        match s {
            "canonical" => Ok(ChoicePolicy::Canonical),
            "adversarial" => Ok(ChoicePolicy::Adversarial),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse::<u64>().ok())
                .map(ChoicePolicy::Random)
                .ok_or_else(|| Error::ProjectData {
                    path: "--policy".into(),
                    message: format!(
                        "unknown policy `{s}` (expected canonical, adversarial, or random:SEED)"
                    ),
                }),
        }
    }
}

enum Chooser {
    First,
    Last,
    Seeded(Box<ChaCha8Rng>),
}

impl Chooser {
    fn pick(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        match self {
            Chooser::First => 0,
            Chooser::Last => n - 1,
            Chooser::Seeded(rng) => rng.gen_range(0..n),
        }
    }
}

/// The choices one induction run made, enough to audit or replay it.
#[derive(Clone, Debug)]
pub struct ChoiceRecord {
    pub policy: String,
    /// Barycentric subdivisions performed before the quotient was simplicial.
    pub subdivisions: usize,
    /// Chosen lift (a simplex of the acted-on complex) per quotient simplex.
    pub lifts: Vec<usize>,
    /// Chosen transport element per quotient arrow.
    pub h: Vec<ElemId>,
}

/// The output of [`induce_from_action`].
#[derive(Clone, Debug)]
pub struct InducedComplex {
    pub cog: ComplexOfGroups,
    /// The canonical morphism to the acting group: inclusions on local
    /// groups (hence always a developability witness) and `h_a` on arrows.
    pub morphism: MorphismToGroup,
    pub record: ChoiceRecord,
    /// The action actually inducted from — the input, possibly subdivided.
    pub action: SimplicialAction,
    /// Simplex of `action.complex()` → object of `cog.base()`.
    pub projection: Vec<usize>,
}

/// Builds the complex of groups induced by an action.
///
/// If the action inverts a simplex, or its quotient is not simplicial, the
/// complex is barycentrically subdivided first (one subdivision removes all
/// inversions; at most a few are ever needed for the quotient). With
/// `allow_repair` false such inputs are errors instead.
pub fn induce_from_action(
    action: &SimplicialAction,
    policy: ChoicePolicy,
    allow_repair: bool,
) -> Result<InducedComplex> {
    const MAX_SUBDIVISIONS: usize = 3;
    let mut current = action.clone();
    let mut subdivisions = 0;
    if let Some((g, s)) = current.inversion_witness() {
        if !allow_repair {
            return Err(Error::InversionDetected(format!(
                "element {g} maps `{}` to itself without fixing it",
                current.complex().simplex_key(s)
            )));
        }
        current = current.subdivided()?;
        subdivisions += 1;
        debug_assert!(
            current.inversion_witness().is_none(),
            "one subdivision removes all inversions"
        );
    }
    let quotient = loop {
        match current.quotient() {
            Ok(q) => break q,
            Err(_) if allow_repair && subdivisions < MAX_SUBDIVISIONS => {
                current = current.subdivided()?;
                subdivisions += 1;
            }
            Err(_) => return Err(Error::QuotientNotSimplicial(subdivisions)),
        }
    };

    let big = current.group().clone();
    let total = current.complex().clone();
    let base = scwol_of_complex(&quotient.complex);
    let orbits = current.simplex_orbits();
    let mut chooser = policy.chooser();

    let lifts: Vec<usize> = (0..quotient.complex.simplex_count())
        .map(|q| {
            let members = &orbits.members[quotient.orbit_of_simplex[q]];
            members[chooser.pick(members.len())]
        })
        .collect();
    let groups: Vec<Arc<FinGroup>> = lifts
        .iter()
        .map(|&s| big.subgroup(&current.stabilizer_of_simplex(s)))
        .collect::<Result<_>>()?;

    // Per arrow σ' → σ of the quotient: τ is the face of the chosen lift of
    // σ' projecting onto σ, and h_a is chosen among the elements carrying τ
    // to the chosen lift of σ.
    let vorb = current.vertex_orbits();
    let mut h = Vec::with_capacity(base.arrow_count());
    for a in 0..base.arrow_count() {
        let lift_i = lifts[base.i(a)];
        let lift_t = lifts[base.t(a)];
        let target_verts = quotient.complex.simplex(base.t(a)).vertices();
        let tau_vertices: Vec<usize> = total
            .simplex(lift_i)
            .vertices()
            .iter()
            .copied()
            .filter(|&v| target_verts.contains(&vorb.of[v]))
            .collect();
        let tau = total.require(&Simplex::new(tau_vertices)?)?;
        let candidates: Vec<ElemId> = (0..big.order())
            .filter(|&g| current.act_simplex(g, tau) == lift_t)
            .collect();
        debug_assert!(
            !candidates.is_empty(),
            "simplices with equal projections share an orbit"
        );
        h.push(candidates[chooser.pick(candidates.len())]);
    }

    let psi: Vec<GroupHom> = (0..base.arrow_count())
        .map(|a| {
            let src = groups[base.i(a)].clone();
            let dst = groups[base.t(a)].clone();
            let images = (0..src.order())
                .map(|x| {
                    let xg = big.require(src.elem(x))?;
                    dst.require(big.elem(big.conj(h[a], xg)))
                })
                .collect::<Result<Vec<_>>>()?;
            GroupHom::new(src, dst, images)
        })
        .collect::<Result<_>>()?;

    let mut twists = BTreeMap::new();
    for pair in base.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = base.compose(b, a)?;
        let g = big.mul(h[b], big.mul(h[a], big.inv(h[ba])));
        let home = &groups[base.t(b)];
        let id = home.require(big.elem(g))?;
        if id != home.id() {
            twists.insert((b, a), id);
        }
    }

    let cog = ComplexOfGroups::over_complex(quotient.complex.clone(), groups.clone(), psi, twists)?;
    let f_obj = groups
        .iter()
        .map(|sub| GroupHom::inclusion(sub.clone(), big.clone()))
        .collect::<Result<Vec<_>>>()?;
    let morphism = MorphismToGroup::new(cog.clone(), big, f_obj, h.clone())?;
    let record = ChoiceRecord {
        policy: policy.label(),
        subdivisions,
        lifts,
        h,
    };
    Ok(InducedComplex {
        cog,
        morphism,
        record,
        action: current,
        projection: quotient.simplex_map,
    })
}
