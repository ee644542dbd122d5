//! Deterministic limits and branching-process asymptotics.

mod branching;
mod endemic;
mod final_size;
mod multitype;
mod ode;
mod vaccination;

pub use branching::{extinction_probability, lotka_r0, malthusian_rate};
pub use endemic::endemic_level;
pub use final_size::{final_size_residual, solve_final_size};
pub use multitype::{multitype_r0, NextGenMatrix};
pub use ode::{integrate_endemic, integrate_sir, CurvePoint, DeterministicCurve, OdeGrid};
pub use vaccination::{critical_vaccination, effective_r, vaccinated_r};
