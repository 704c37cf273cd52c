//! Modules over `A(1)` and `E(1)`, Margolis homology, and Ext charts from
//! minimal resolutions.

pub mod algebra;
pub mod chart;
pub mod margolis;
pub mod module;
pub mod resolution;

pub use algebra::{AlgebraName, FiniteAlgebra};
pub use chart::{ChartFormat, ExtCell, ExtChart};
pub use margolis::{margolis_homology, MargolisDegree, MargolisHomology};
pub use module::{algebra, free_module, module_from_km, trivial_module, GradedModule, ModuleDoc};
pub use resolution::{minimal_resolution, valid_t_max, with_configured_pool, Resolution, THREADS_ENV};
