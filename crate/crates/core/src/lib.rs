//! Lagrangian planes in C⁴ = Sym³C², regular ideal tetrahedra in H³ and
//! the fibration of the domain of discontinuity over the hyperbolic plane.

pub mod error;
pub mod fibration;
pub mod hyperbolic;
mod poly;
pub mod projective;
pub mod random;
pub mod symplectic;
pub mod tetra;
pub mod topology;
pub mod verify;
pub mod tol;

pub use error::{Error, Result};
pub use hyperbolic::{ExtReal, H2Point, H3Bar, H3Point};
pub use projective::{Complex, Mobius, ProjPoint, Sym3Matrix};
pub use symplectic::{CubicForm, Lagrangian, OrbitClass, OrbitTag};
pub use tol::Tolerance;
