//! Exact decompositions `g_i = f_i + X_i(G)` for the commuting fields of a Williamson
//! basis, and the matching first deformation cohomology of the model integrable
//! system.
//!
//! * [`poly`]: sparse polynomials over the rationals and Gaussian rationals.
//! * [`williamson`]: model quadratics `q_i`, their Hamiltonian fields `X_i`, complex
//!   eigen-coordinates, type detection.
//! * [`splitters`]: the elliptic, hyperbolic and focus-focus decompositions.
//! * [`poincare`]: the solver for `g_i = f_i + X_i(G)` and its linear-algebra oracle.
//! * [`cohomology`]: Chevalley–Eilenberg cochains and `H^1` witnesses.
//! * [`oracles`]: quadrature cross-checks along the explicit flows, random instances.
//! * [`frontend`]: expression parser, text formats and CLI commands.

pub mod batch;
pub mod cohomology;
pub mod frontend;
pub mod linsolve;
pub mod oracles;
pub mod par;
pub mod poincare;
pub mod poly;
pub mod splitters;
pub mod williamson;

pub use poincare::{solve, CocycleData, Decomposition};
pub use poly::{CPoly, Monomial, Poly};
pub use williamson::{ModelSystem, WilliamsonType};
