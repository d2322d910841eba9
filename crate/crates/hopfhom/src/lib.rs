//! Exact computation of Hochschild, cyclic and periodic cyclic (co)homology for
//! finite-dimensional Hopf algebras, Hopf (co)triples, smash products and groupoid
//! bialgebroids, together with checkers for the structural identities they satisfy.

pub mod exactla;
pub mod hopfcore;
pub mod cyclicfw;
pub mod homengine;
pub mod hopfcyc;
pub mod invariant;
pub mod smash;
pub mod extalg;
pub mod qpbw;
