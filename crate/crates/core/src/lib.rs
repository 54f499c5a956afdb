//! Exact algebra of root data.
//!
//! A root datum over `Z` or the `p`-adic integers is a finite reflection group
//! acting on a lattice together with a coroot line for each reflection. From it
//! this crate builds the torus normalizer as an explicit group extension, its
//! root subgroups and automorphisms, and the cohomology of the Weyl group with
//! coefficients in the discrete torus. All arithmetic is exact.
//!
//! - [`linalg`]: integer matrices, Smith and Hermite forms, `Q/Z` vectors, finite abelian groups.
//! - [`groups`]: finite matrix groups, reflections, Coxeter systems, presentations.
//! - [`datum`]: validated root data, the catalog, centers, centralizers, isomorphisms.
//! - [`ext`]: reflection extensions, normalizer extensions, root subgroups, torsors, Tits form.
//! - [`cohomology`]: bar, Fox and truncated routes to `H^1` and `H^2` with torus coefficients.
//! - [`automorphisms`]: `Out(D)`, derivations, the canonical splitting, exact sequence checks.
//! - [`cli`]: JSON reports and the verification suites behind the `rootdatum` binary.
//!
//! Runnable examples live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `smith_normal_form` | Smith form, kernels and cokernels |
//! | `weyl_groups` | Weyl group orders, reflection classes, reduced words, presentations |
//! | `catalog` | catalog data, validation, JSON round trip, base change |
//! | `centers` | fixed points split into center and complement |
//! | `centralizers` | centralizer subdata and isomorphism tests |
//! | `reflection_extension` | certificates for the reflection extension, pullbacks |
//! | `normalizer` | markings recovered from the normalizer, lift orders, torsors |
//! | `tits` | Tits normal form against the normalizer extension |
//! | `torus_cohomology` | `H^1` and `H^2` by several methods |
//! | `di4` | the truncated `DI(4)` datum |
//! | `automorphisms` | `Out(D)` and canonical lifts |
//! | `exact_sequence` | the sequence `H^1 -> Out(N) -> Out(D)` |
//! | `verify_suites` | running verification suites in-process |
//!
//! ```
//! use rootdatum::cohomology::{h1_torus, Method};
//! use rootdatum::datum::{catalog, BaseRing};
//!
//! let spin5 = catalog::spin(5).unwrap().base_change(BaseRing::Padic(2)).unwrap();
//! let h1 = h1_torus(&spin5, Method::Fox).unwrap();
//! assert_eq!(h1.invariant_factors, vec![2]);
//! ```

#![allow(clippy::needless_range_loop, clippy::should_implement_trait, clippy::type_complexity, clippy::while_let_loop)]

pub mod automorphisms;
pub mod cli;
pub mod cohomology;
pub mod datum;
pub mod ext;
pub mod groups;
pub mod linalg;
