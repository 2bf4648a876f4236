//! Ready-made desk-scale inputs.
//!
//! These builders feed the command-line tools, the guide, and the test
//! suites. They are small enough to verify by hand yet exercise every
//! structural feature: nontrivial vertex groups, twisted composition, group
//! actions with and without inversions.

use crate::action::{induce_from_action, ChoicePolicy, InducedComplex, SimplicialAction};
use crate::cog::{ComplexOfGroups, MorphismToGroup};
use crate::group::{FinGroup, GroupHom, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use crate::scwol::scwol_of_complex;
use crate::simplicial::SimplicialComplex;
use std::collections::BTreeMap;
use std::sync::Arc;

/// C6 as a rotation group on six points, together with its order-2, order-3
/// and trivial subgroups at the same permutation degree.
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

/// One edge `{u, w}` with `G_u = C2`, `G_w = C3` and a trivial edge group.
/// Developing its witness into C6 yields the subdivided complete bipartite
/// graph K_{3,2}.
pub fn segment() -> ComplexOfGroups {
    let (_, c2, c3, triv) = c6_with_subgroups();
    let complex = SimplicialComplex::from_names(&["u", "w"], &[&["u", "w"]]).unwrap();
    let groups = vec![c2.clone(), c3.clone(), triv.clone()];
    let psi = vec![
        GroupHom::trivial(triv.clone(), c2),
        GroupHom::trivial(triv, c3),
    ];
    ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap()
}

/// The injective morphism from [`segment`] into C6 that makes it developable.
pub fn segment_witness() -> MorphismToGroup {
    let (c6, c2, c3, triv) = c6_with_subgroups();
    let f_obj = vec![
        GroupHom::inclusion(c2, c6.clone()).unwrap(),
        GroupHom::inclusion(c3, c6.clone()).unwrap(),
        GroupHom::inclusion(triv, c6.clone()).unwrap(),
    ];
    MorphismToGroup::new(segment(), c6, f_obj, vec![0, 0]).unwrap()
}

/// The full triangle `{u, v, w}` with C2 at the vertex `v` and trivial
/// groups everywhere else.
pub fn triangle_with_c2_vertex() -> ComplexOfGroups {
    let complex = SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap();
    let c2 = FinGroup::generate(
        2,
        vec![Permutation::from_cycles(2, &[&[1, 2]]).unwrap()],
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    let triv = FinGroup::trivial(2);
    let base = scwol_of_complex(&complex);
    let v = base.object_id("v").unwrap();
    let groups: Vec<Arc<FinGroup>> = (0..base.object_count())
        .map(|o| if o == v { c2.clone() } else { triv.clone() })
        .collect();
    let psi = (0..base.arrow_count())
        .map(|a| GroupHom::trivial(groups[base.i(a)].clone(), groups[base.t(a)].clone()))
        .collect();
    ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap()
}

/// The complex of groups with trivial local groups over an arbitrary
/// complex. Developing it recovers the base unchanged.
pub fn trivial_over(complex: SimplicialComplex) -> ComplexOfGroups {
    let base = scwol_of_complex(&complex);
    let triv = FinGroup::trivial(1);
    let groups: Vec<Arc<FinGroup>> = vec![triv.clone(); base.object_count()];
    let psi = (0..base.arrow_count())
        .map(|_| GroupHom::identity(triv.clone()))
        .collect();
    ComplexOfGroups::over_complex(complex, groups, psi, BTreeMap::new()).unwrap()
}

/// The solid triangle on `u, v, w`.
pub fn triangle() -> SimplicialComplex {
    SimplicialComplex::from_names(&["u", "v", "w"], &[&["u", "v", "w"]]).unwrap()
}

/// The solid tetrahedron on `u, v, w, x`; its blocks reach cube dimension 3.
pub fn tetrahedron() -> SimplicialComplex {
    SimplicialComplex::from_names(&["u", "v", "w", "x"], &[&["u", "v", "w", "x"]]).unwrap()
}

/// C2 swapping the endpoints of the two-edge path `a—b—c`.
pub fn path_swap_action() -> SimplicialAction {
    let complex =
        SimplicialComplex::from_names(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap();
    let c2 = FinGroup::generate(
        3,
        vec![Permutation::from_cycles(3, &[&[1, 3]]).unwrap()],
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    SimplicialAction::from_permutations(c2, complex).unwrap()
}

/// C6 rotating the 12-cycle by two steps; the quotient needs an edge
/// inversion repair when pushed further, and every vertex orbit has size 6.
pub fn twelve_cycle_rotation() -> SimplicialAction {
    let names: Vec<String> = (0..12).map(|i| format!("v{i}")).collect();
    let edges: Vec<Vec<usize>> = (0..12).map(|i| vec![i, (i + 1) % 12]).collect();
    let complex = SimplicialComplex::new(names, edges).unwrap();
    let rot = Permutation::from_one_based((0..12u16).map(|i| (i + 2) % 12 + 1).collect()).unwrap();
    let c6 = FinGroup::generate(12, vec![rot], DEFAULT_ELEMENT_CAP).unwrap();
    SimplicialAction::from_permutations(c6, complex).unwrap()
}

/// S3 permuting the vertices of the barycentrically subdivided triangle.
/// Inducing with the adversarial transversal produces nontrivial twists.
pub fn subdivided_triangle_s3() -> SimplicialAction {
    let sub = triangle().barycentric_subdivision().unwrap().complex;
    // Vertices in order: u v w u|v u|w v|w u|v|w.
    let swap_uv = Permutation::from_cycles(7, &[&[1, 2], &[5, 6]]).unwrap();
    let rot = Permutation::from_cycles(7, &[&[1, 2, 3], &[4, 6, 5]]).unwrap();
    let s3 = FinGroup::generate(7, vec![swap_uv, rot], DEFAULT_ELEMENT_CAP).unwrap();
    SimplicialAction::from_permutations(s3, sub).unwrap()
}

/// The complex of groups induced from [`subdivided_triangle_s3`] with the
/// adversarial transversal: its twist table is genuinely nontrivial.
pub fn twisted_triangle() -> InducedComplex {
    induce_from_action(&subdivided_triangle_s3(), ChoicePolicy::Adversarial, true).unwrap()
}
