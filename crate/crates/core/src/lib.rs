//! Exact combinatorics and linear algebra for totally nonnegative
//! Grassmannians in type A.
//!
//! Modules, bottom-up:
//! - [`exactalg`]: rationals, multivariate rational functions, Laurent polynomials.
//! - [`weyl`]: finite and affine symmetric groups.
//! - [`posetlab`]: cell posets and finite-poset analytics.
//! - [`matrixcore`]: dense exact matrices, echelon forms, generator products.
//! - [`positroid`]: necklaces, truncations, Le-diagrams, positivity tests.
//! - [`loopgroup`]: Laurent matrices, lattice ranks, affine cell location, factorizations.
//! - [`atlas`]: the kappa/eta/zeta pipeline and verification sweeps.

pub mod atlas;
pub mod exactalg;
pub mod loopgroup;
pub mod matrixcore;
pub mod posetlab;
pub mod positroid;
pub mod weyl;
