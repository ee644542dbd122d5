//! Shared domain types and the seeded random-source contract.

mod estimate;
mod generation;
mod params;
mod period;
mod random;
mod trajectory;

pub use estimate::EstimateWithSE;
pub use generation::GenerationTimeDist;
pub use params::{offspring_pgf, validate, EpidemicParams, FinalSizeData};
pub use period::InfectiousPeriodDist;
pub use random::{SeedTree, SimRng};
pub use trajectory::{Event, EventKind, Record, Trajectory};
