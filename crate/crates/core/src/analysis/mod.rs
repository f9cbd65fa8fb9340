//! Optimality, projectivity, minimality and strongly regular graphs.

mod griesmer;
mod minimality;
mod projectivity;
mod srg;

pub use griesmer::{griesmer_bound, griesmer_sum, GriesmerReport};
pub use minimality::{minimality_check, MinimalityReport};
pub use projectivity::{column_analysis, power_moments, projectivity, ProjectivityReport};
pub use srg::{
    count_cayley_graph, srg_build_and_verify, srg_build_and_verify_with, srg_params_from_code,
    CountingLimits, CountingMethod, SrgFamily, SrgParams, SrgWitness,
};
