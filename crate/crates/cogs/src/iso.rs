//! Equivariant isomorphism of group actions on scwols, and the round-trip
//! oracle: developing the complex of groups induced by an action recovers
//! the action.
//!
//! Both a [`SimplicialAction`] (through the scwol of its complex) and a
//! [`Development`] present as a [`GScwol`] — a scwol with a verified action
//! of a finite group. Two G-scwols over the *same* group are compared by a
//! backtracking search over orbit representatives: equivariance forces the
//! image of a whole orbit once its representative is placed, stabilizer
//! sets and degrees prune the candidates, and every reported isomorphism is
//! re-verified in full before it is returned.

use crate::action::{induce_from_action, ChoicePolicy, InducedComplex, SimplicialAction};
use crate::development::{develop, Development};
use crate::error::{Error, Result};
use crate::group::{ElemId, FinGroup};
use crate::scwol::{scwol_of_complex, ArrowId, ObjectId, Scwol};
use std::sync::Arc;

/// Default node budget for the backtracking search; roughly a thousand
/// times what the bundled fixtures need.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// A scwol together with a verified action of a finite group on it.
#[derive(Clone, Debug)]
pub struct GScwol {
    scwol: Scwol,
    group: Arc<FinGroup>,
    object_action: Vec<Vec<ObjectId>>,
    arrow_action: Vec<Vec<ArrowId>>,
}

impl GScwol {
    /// Verifies shapes, the group-action laws, and that every element acts
    /// by a scwol automorphism (endpoint and composition preserving).
    pub fn new(
        scwol: Scwol,
        group: Arc<FinGroup>,
        object_action: Vec<Vec<ObjectId>>,
        arrow_action: Vec<Vec<ArrowId>>,
    ) -> Result<GScwol> {
        let order = group.order();
        if object_action.len() != order || arrow_action.len() != order {
            return Err(Error::NotWellDefined(format!(
                "{} object rows / {} arrow rows for a group of order {order}",
                object_action.len(),
                arrow_action.len()
            )));
        }
        let bijective = |row: &[usize], n: usize| {
            let mut sorted = row.to_vec();
            sorted.sort_unstable();
            row.len() == n && sorted == (0..n).collect::<Vec<_>>()
        };
        for g in 0..order {
            if !bijective(&object_action[g], scwol.object_count())
                || !bijective(&arrow_action[g], scwol.arrow_count())
            {
                return Err(Error::NotWellDefined(format!(
                    "element {g} does not act bijectively"
                )));
            }
        }
        if object_action[group.id()] != (0..scwol.object_count()).collect::<Vec<_>>()
            || arrow_action[group.id()] != (0..scwol.arrow_count()).collect::<Vec<_>>()
        {
            return Err(Error::NotWellDefined(
                "the identity element does not act as the identity".into(),
            ));
        }
        for g in 0..order {
            for h in 0..order {
                let gh = group.mul(g, h);
                let objects_compose = (0..scwol.object_count())
                    .all(|o| object_action[g][object_action[h][o]] == object_action[gh][o]);
                let arrows_compose = (0..scwol.arrow_count())
                    .all(|a| arrow_action[g][arrow_action[h][a]] == arrow_action[gh][a]);
                if !objects_compose || !arrows_compose {
                    return Err(Error::NotWellDefined(format!(
                        "rows of elements {g} and {h} do not compose like the group"
                    )));
                }
            }
        }
        for g in 0..order {
            for a in 0..scwol.arrow_count() {
                let moved = arrow_action[g][a];
                if scwol.i(moved) != object_action[g][scwol.i(a)]
                    || scwol.t(moved) != object_action[g][scwol.t(a)]
                {
                    return Err(Error::NotWellDefined(format!(
                        "element {g} does not preserve endpoints at arrow `{}`",
                        scwol.arrow_name(a)
                    )));
                }
            }
            for pair in scwol.composable_tuples(2) {
                let a = pair.arrows()[0];
                let b = pair.arrows()[1];
                let ba = scwol.compose(b, a)?;
                if scwol.compose(arrow_action[g][b], arrow_action[g][a])? != arrow_action[g][ba] {
                    return Err(Error::NotWellDefined(format!(
                        "element {g} does not preserve composition at ({b}, {a})"
                    )));
                }
            }
        }
        Ok(GScwol {
            scwol,
            group,
            object_action,
            arrow_action,
        })
    }

    /// The scwol of an action's complex, with the induced action: objects
    /// are simplices, arrows are face pairs.
    pub fn of_action(action: &SimplicialAction) -> GScwol {
        let scwol = scwol_of_complex(action.complex());
        let order = action.group().order();
        let object_action: Vec<Vec<ObjectId>> = (0..order)
            .map(|g| {
                (0..scwol.object_count())
                    .map(|s| action.act_simplex(g, s))
                    .collect()
            })
            .collect();
        let arrow_action = (0..order)
            .map(|g| {
                (0..scwol.arrow_count())
                    .map(|a| {
                        scwol
                            .direct_arrow(
                                action.act_simplex(g, scwol.i(a)),
                                action.act_simplex(g, scwol.t(a)),
                            )
                            .expect("simplicial actions preserve face pairs")
                    })
                    .collect()
            })
            .collect();
        GScwol::new(scwol, action.group().clone(), object_action, arrow_action)
            .expect("a simplicial action induces a scwol action")
    }

    /// A development with its group action.
    pub fn of_development(dev: &Development) -> GScwol {
        let order = dev.group().order();
        let object_action = (0..order)
            .map(|g| {
                (0..dev.scwol().object_count())
                    .map(|o| dev.act_object(g, o))
                    .collect()
            })
            .collect();
        let arrow_action = (0..order)
            .map(|g| {
                (0..dev.scwol().arrow_count())
                    .map(|a| dev.act_arrow(g, a))
                    .collect()
            })
            .collect();
        GScwol::new(
            dev.scwol().clone(),
            dev.group().clone(),
            object_action,
            arrow_action,
        )
        .expect("developments carry a verified action")
    }

    pub fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn act_object(&self, g: ElemId, o: ObjectId) -> ObjectId {
        self.object_action[g][o]
    }

    pub fn act_arrow(&self, g: ElemId, a: ArrowId) -> ArrowId {
        self.arrow_action[g][a]
    }

    /// Elements fixing an object.
    pub fn object_stabilizer(&self, o: ObjectId) -> Vec<ElemId> {
        (0..self.group.order())
            .filter(|&g| self.object_action[g][o] == o)
            .collect()
    }

    /// Search signature of an object: stabilizer set, in-degree, out-degree.
    /// All three are preserved by any equivariant isomorphism.
    fn signature(&self, o: ObjectId) -> (Vec<ElemId>, usize, usize) {
        (
            self.object_stabilizer(o),
            self.scwol.arrows_into(o).len(),
            self.scwol.arrows_from(o).len(),
        )
    }

    /// Orbit representatives (least members), in ascending order.
    fn orbit_reps(&self) -> Vec<ObjectId> {
        let mut seen = vec![false; self.scwol.object_count()];
        let mut reps = Vec::new();
        for o in 0..self.scwol.object_count() {
            if seen[o] {
                continue;
            }
            reps.push(o);
            for g in 0..self.group.order() {
                seen[self.object_action[g][o]] = true;
            }
        }
        reps
    }
}

/// An isomorphism of G-scwols commuting with both actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantIso {
    /// Object of the first G-scwol → object of the second.
    pub object_map: Vec<ObjectId>,
    /// Arrow of the first G-scwol → arrow of the second.
    pub arrow_map: Vec<ArrowId>,
}

/// Checks that `iso` really is an equivariant isomorphism from `x` to `y`:
/// bijections on objects and arrows that preserve endpoints, composition,
/// and the action of every group element.
pub fn verify_equivariant_iso(x: &GScwol, y: &GScwol, iso: &EquivariantIso) -> bool {
    let (xs, ys) = (x.scwol(), y.scwol());
    if x.group != y.group
        || xs.object_count() != ys.object_count()
        || xs.arrow_count() != ys.arrow_count()
        || iso.object_map.len() != xs.object_count()
        || iso.arrow_map.len() != xs.arrow_count()
    {
        return false;
    }
    let bijective = |map: &[usize], n: usize| {
        let mut sorted = map.to_vec();
        sorted.sort_unstable();
        sorted == (0..n).collect::<Vec<_>>()
    };
    if !bijective(&iso.object_map, xs.object_count()) || !bijective(&iso.arrow_map, xs.arrow_count())
    {
        return false;
    }
    for a in 0..xs.arrow_count() {
        let b = iso.arrow_map[a];
        if ys.i(b) != iso.object_map[xs.i(a)] || ys.t(b) != iso.object_map[xs.t(a)] {
            return false;
        }
    }
    for pair in xs.composable_tuples(2) {
        let a = pair.arrows()[0];
        let b = pair.arrows()[1];
        let ba = xs.compose(b, a).expect("composable");
        match ys.compose(iso.arrow_map[b], iso.arrow_map[a]) {
            Ok(c) if c == iso.arrow_map[ba] => {}
            _ => return false,
        }
    }
    for g in 0..x.group.order() {
        let objects_commute = (0..xs.object_count())
            .all(|o| y.object_action[g][iso.object_map[o]] == iso.object_map[x.object_action[g][o]]);
        let arrows_commute = (0..xs.arrow_count())
            .all(|a| y.arrow_action[g][iso.arrow_map[a]] == iso.arrow_map[x.arrow_action[g][a]]);
        if !objects_commute || !arrows_commute {
            return false;
        }
    }
    true
}

/// Searches for an equivariant isomorphism from `x` to `y`.
///
/// The two G-scwols must carry the same group. Returns `Ok(None)` when a
/// quick invariant (cell counts, signature multisets) rules an isomorphism
/// out or the exhaustive search finds none, and `Err(SearchBudget)` when
/// the search tries more candidate placements than `budget`. The result is
/// deterministic: orbits are processed in id order and candidates tried in
/// ascending id order.
pub fn equivariant_iso(x: &GScwol, y: &GScwol, budget: u64) -> Result<Option<EquivariantIso>> {
    if x.group != y.group {
        return Err(Error::GroupMismatch(
            "equivariant comparison needs one acting group on both sides".into(),
        ));
    }
    let (xs, ys) = (x.scwol(), y.scwol());
    if xs.object_count() != ys.object_count() || xs.arrow_count() != ys.arrow_count() {
        return Ok(None);
    }
    let sig_x: Vec<_> = (0..xs.object_count()).map(|o| x.signature(o)).collect();
    let sig_y: Vec<_> = (0..ys.object_count()).map(|o| y.signature(o)).collect();
    {
        let mut mx = sig_x.clone();
        let mut my = sig_y.clone();
        mx.sort();
        my.sort();
        if mx != my {
            return Ok(None);
        }
    }

    let order = x.group.order();
    let reps = x.orbit_reps();
    let mut object_map = vec![usize::MAX; xs.object_count()];
    let mut y_used = vec![false; ys.object_count()];
    let mut nodes: u64 = 0;

    // Arrows whose endpoints are both settled once orbit `level` is placed,
    // precomputed so each backtracking level checks only its new arrows.
    let mut orbit_of = vec![usize::MAX; xs.object_count()];
    for (k, &r) in reps.iter().enumerate() {
        for g in 0..order {
            orbit_of[x.object_action[g][r]] = k;
        }
    }
    let arrows_ready_at: Vec<Vec<ArrowId>> = (0..reps.len())
        .map(|level| {
            (0..xs.arrow_count())
                .filter(|&a| {
                    let hi = orbit_of[xs.i(a)].max(orbit_of[xs.t(a)]);
                    hi == level
                })
                .collect()
        })
        .collect();

    #[allow(clippy::too_many_arguments)]
    fn place(
        x: &GScwol,
        y: &GScwol,
        sig_x: &[(Vec<ElemId>, usize, usize)],
        sig_y: &[(Vec<ElemId>, usize, usize)],
        reps: &[ObjectId],
        arrows_ready_at: &[Vec<ArrowId>],
        level: usize,
        object_map: &mut Vec<ObjectId>,
        y_used: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Option<EquivariantIso>> {
        if level == reps.len() {
            let arrow_map = match forced_arrow_map(x, y, object_map) {
                Some(m) => m,
                None => return Ok(None),
            };
            let iso = EquivariantIso {
                object_map: object_map.clone(),
                arrow_map,
            };
            if verify_equivariant_iso(x, y, &iso) {
                return Ok(Some(iso));
            }
            return Ok(None);
        }
        let r = reps[level];
        let order = x.group.order();
        for cand in 0..y.scwol().object_count() {
            if y_used[cand] || sig_y[cand] != sig_x[r] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudget(budget));
            }
            // Placing the representative forces its whole orbit.
            let mut placed = Vec::with_capacity(order);
            let mut ok = true;
            for g in 0..order {
                let from = x.object_action[g][r];
                let to = y.object_action[g][cand];
                if object_map[from] == usize::MAX {
                    object_map[from] = to;
                    y_used[to] = true;
                    placed.push((from, to));
                } else if object_map[from] != to {
                    ok = false;
                    break;
                }
            }
            if ok {
                ok = arrows_ready_at[level].iter().all(|&a| {
                    y.scwol()
                        .direct_arrow(object_map[x.scwol().i(a)], object_map[x.scwol().t(a)])
                        .is_some()
                });
            }
            if ok {
                if let Some(iso) = place(
                    x,
                    y,
                    sig_x,
                    sig_y,
                    reps,
                    arrows_ready_at,
                    level + 1,
                    object_map,
                    y_used,
                    nodes,
                    budget,
                )? {
                    return Ok(Some(iso));
                }
            }
            for (from, to) in placed {
                object_map[from] = usize::MAX;
                y_used[to] = false;
            }
        }
        Ok(None)
    }

    place(
        x,
        y,
        &sig_x,
        &sig_y,
        &reps,
        &arrows_ready_at,
        0,
        &mut object_map,
        &mut y_used,
        &mut nodes,
        budget,
    )
}

/// The arrow bijection an object bijection forces on poset-like scwols, or
/// `None` when some arrow has no counterpart.
fn forced_arrow_map(x: &GScwol, y: &GScwol, object_map: &[ObjectId]) -> Option<Vec<ArrowId>> {
    let (xs, ys) = (x.scwol(), y.scwol());
    let mut arrow_map = Vec::with_capacity(xs.arrow_count());
    for a in 0..xs.arrow_count() {
        arrow_map.push(ys.direct_arrow(object_map[xs.i(a)], object_map[xs.t(a)])?);
    }
    let mut sorted = arrow_map.clone();
    sorted.sort_unstable();
    if sorted != (0..ys.arrow_count()).collect::<Vec<_>>() {
        return None;
    }
    Some(arrow_map)
}

/// The round-trip pipeline: induce a complex of groups from an action,
/// develop its canonical morphism, and search for an equivariant
/// isomorphism between the development and the scwol of the (possibly
/// repaired) acted-on complex.
#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub induced: InducedComplex,
    pub development: Development,
    /// The witnessing isomorphism from the development to the action's
    /// scwol, when the search found one.
    pub iso: Option<EquivariantIso>,
}

impl Roundtrip {
    /// True when the development recovered the action.
    pub fn recovered(&self) -> bool {
        self.iso.is_some()
    }
}

/// Runs the round-trip oracle on an action under a choice policy.
pub fn roundtrip(
    action: &SimplicialAction,
    policy: ChoicePolicy,
    budget: u64,
) -> Result<Roundtrip> {
    let induced = induce_from_action(action, policy, true)?;
    let development = develop(&induced.morphism)?;
    let dev_side = GScwol::of_development(&development);
    let act_side = GScwol::of_action(&induced.action);
    let iso = equivariant_iso(&dev_side, &act_side, budget)?;
    Ok(Roundtrip {
        induced,
        development,
        iso,
    })
}

/// Edge list of a scwol in DOT digraph form, arrows pointing from `i` to
/// `t`; deterministic line order.
pub fn scwol_to_dot(scwol: &Scwol) -> String {
    let mut out = String::from("digraph scwol {\n");
    for o in 0..scwol.object_count() {
        out.push_str(&format!("  \"{}\";\n", scwol.object_name(o)));
    }
    for a in 0..scwol.arrow_count() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            scwol.object_name(scwol.i(a)),
            scwol.object_name(scwol.t(a)),
            scwol.arrow_name(a)
        ));
    }
    out.push_str("}\n");
    out
}
