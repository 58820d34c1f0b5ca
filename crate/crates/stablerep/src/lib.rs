//! Exact computation of stable representation invariants of finite-dimensional
//! algebras over prime fields.
//!
//! The crate works entirely over `F_p` (matrix arithmetic) and `Z` (group
//! presentations via Smith normal form); there is no floating point anywhere.
//! The main layers, bottom up:
//!
//! * [`linalg`] — row reduction, solving, Smith normal form, cokernel
//!   presentations of finitely generated abelian groups.
//! * [`algebra`] — finite-dimensional associative unital algebras given by
//!   structure constants: presets, radicals, quotients, subalgebras, unit
//!   groups, freeness over subalgebras.
//! * [`modules`] — finite right modules, homomorphisms, short exact
//!   sequences, (co)kernels, pushouts, base change / restriction / induction,
//!   duality.
//! * [`decomp`] — endomorphism rings, Krull–Schmidt decomposition,
//!   isomorphism testing, censuses of indecomposables.
//! * [`stable`] — projective covers, injective envelopes, syzygies, stable
//!   hom groups, `Ext^1` and extension realization.
//! * [`allowable`] — allowable classes of short exact sequences (relative
//!   homological algebra): membership, relative projectives, relative stable
//!   equivalences, closure diagnostics.
//! * [`waldhausen`] — Waldhausen-structure axiom checking, cone and cylinder
//!   functors, quasi-Frobenius and cone-Frobenius diagnostics.
//! * [`kzero`] — degree-zero K-groups: `K_0`, `G_0`, representation groups,
//!   their stable quotients, `K_0` of a checked Waldhausen structure, induced
//!   maps with well-definedness certificates, localization-sequence tails and
//!   towers.
//! * [`textio`] — plain-text formats for algebras, modules and morphisms.
//! * [`report`] — JSON‑serializable check reports (stable field order, so
//!   identical inputs and seeds give byte-identical output).
//!
//! Parallelism: with the default `parallel` feature the enumerative inner
//! loops (module censuses, diagram scans, relation harvests) run on rayon;
//! without it the same code runs sequentially. Results are identical either
//! way — all parallel maps are order-preserving.

pub mod error;
pub(crate) mod par;
pub mod report;
pub mod linalg;
pub mod algebra;
pub mod modules;
pub mod decomp;
pub mod stable;
pub mod allowable;
pub mod waldhausen;
pub mod kzero;
pub mod textio;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
