//! Verified implementations of the Cauchy-Bunyakovsky-Schwarz inequality
//! family and the strengthened-CBS constant.
//!
//! The crate has three layers:
//!
//! * scalar/vector inequalities: [`vectorcore`] (discrete CBS, angle,
//!   triangle, mean chain), [`weightedcbs`] (weighted CBS-type bilinear
//!   form, discrete and quadrature-based), [`integralineq`] (Young,
//!   Hölder, Minkowski over Gauss-Legendre rules);
//! * dense symmetric linear algebra in [`symlin`] (Jacobi eigensolver,
//!   Cholesky, pseudo-inverse, generalized symmetric eigenproblems) and
//!   the optimal strengthened-CBS constant γ for block-partitioned SPSD
//!   matrices in [`strengthened`];
//! * [`elasticity`]: P1 simplicial elements for 2D/3D linear elasticity,
//!   red refinement, two-level hierarchical splitting, and per-element γ
//!   estimation against the 3/4 (2D) and 9/10 (3D) bounds.
//!
//! [`suites`] packages the randomized property suites behind the `verify`
//! CLI subcommand.

pub mod elasticity;
pub mod integralineq;
pub mod stream;
pub mod strengthened;
pub mod suites;
pub mod symlin;
pub mod vectorcore;
pub mod weightedcbs;
