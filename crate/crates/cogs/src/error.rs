//! Error type shared across the crate.
//!
//! Constructors fail loudly on structural problems (bad input data, unresolved
//! references, arithmetic that cannot be represented). Mathematical *axiom*
//! failures in user data — a twist table that breaks the cocycle condition,
//! say — are not errors: validators collect them as [`crate::report::Violation`]
//! entries so a caller can see every offending witness at once.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A vertex name appears twice in one simplex, or twice in a vertex table.
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    /// A vertex name is not part of the declared vertex set.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    /// A vertex name contains a reserved character (`,` or `<`).
    #[error("vertex name `{0}` contains a reserved character (`,` or `<`)")]
    BadVertexName(String),

    /// A simplex was referenced that the complex does not contain.
    #[error("simplex `{0}` is not in the complex")]
    MissingSimplex(String),

    /// A permutation image array is not a bijection on 1..=n.
    #[error("invalid permutation image array {0:?}")]
    BadPermutation(Vec<u16>),

    /// Group enumeration exceeded the element cap.
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupCapExceeded { cap: usize },

    /// Generator images do not extend to a homomorphism.
    #[error("generator images do not extend to a homomorphism: {0}")]
    NotAHomomorphism(String),

    /// An element was used with a group that does not contain it.
    #[error("element {0:?} is not a member of the group")]
    NotAGroupElement(Vec<u16>),

    /// A subset of elements is not closed under the group operations.
    #[error("the given {0} elements do not form a subgroup")]
    NotASubgroup(usize),

    /// Degrees or groups that must match do not.
    #[error("mismatched groups: {0}")]
    GroupMismatch(String),

    /// A scwol axiom failed at construction time.
    #[error("scwol axiom violated: {0}")]
    ScwolAxiom(String),

    /// A pair of arrows was composed that is not composable.
    #[error("arrows {outer} and {inner} are not composable")]
    NotComposable { outer: usize, inner: usize },

    /// An index (object, arrow, tuple, cell) is out of range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Δ-complex face maps fail the semi-simplicial identities.
    #[error("face map identity failed: {0}")]
    FaceIdentity(String),

    /// A chain complex whose consecutive boundaries do not compose to zero.
    #[error("boundary squared is nonzero in degree {degree} at basis element {index}")]
    BoundaryNotZero { degree: usize, index: usize },

    /// A group action that is not by simplicial automorphisms.
    #[error("the group does not act simplicially: {0}")]
    NotSimplicial(String),

    /// An action with inversions where repair by subdivision was disabled.
    #[error("the action inverts a simplex and repair is disabled: {0}")]
    InversionDetected(String),

    /// Orbit-space repair failed to produce a simplicial quotient.
    #[error("quotient is not a simplicial complex even after {0} subdivisions")]
    QuotientNotSimplicial(usize),

    /// A development was requested from a morphism that is not a valid witness.
    #[error("morphism is not a developability witness: {0}")]
    NotAWitness(String),

    /// A structure failed its exhaustive well-definedness check.
    #[error("map is not well defined on coset representatives: {0}")]
    NotWellDefined(String),

    /// The isomorphism search exceeded its node budget.
    #[error("equivariant isomorphism search exceeded the budget of {0} nodes")]
    SearchBudget(u64),

    /// Fibre data with mismatched endpoints.
    #[error("fibre data mismatch: {0}")]
    FibreMismatch(String),

    /// An operation that needs point fibres was given something else.
    #[error("operation requires point fibres")]
    PointFibresRequired,

    /// Subgroup enumeration on a group too large for brute force.
    #[error("subgroup enumeration is limited to groups of order <= {limit}; got {order}")]
    SubgroupEnumerationTooLarge { order: usize, limit: usize },

    /// A name in a project file did not resolve.
    #[error("unresolved reference at {path}: no {kind} named `{name}`")]
    UnresolvedRef {
        path: String,
        kind: &'static str,
        name: String,
    },

    /// A project file with a schema version this build does not speak.
    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },

    /// Malformed project data with a JSON-ish path to the offender.
    #[error("invalid project data at {path}: {message}")]
    ProjectData { path: String, message: String },

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Filesystem failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
