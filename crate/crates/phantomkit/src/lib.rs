//! Exact computational homological algebra over finite-dimensional algebras
//! on prime fields: Ext/Tor functors as explicit F_p-vector spaces,
//! factorization-based deciders for the vanishing / monic / epic status of
//! the induced natural transformations, and seeded verification suites that
//! cross-check the deciders against direct functor computations.

pub mod algebra;
pub mod exactla;
pub mod functors;
pub mod modules;
pub mod resolve;
