//! Experiment configuration, pipelines, reports and property suites.

pub mod config;
pub mod experiments;
pub mod interpolate;
pub mod report;
pub mod suites;

pub use config::ExperimentConfig;
pub use experiments::{
    applicable_certificate, conjecture1_experiment, conjecture2_experiment, curves_experiment,
    escape_experiment, families_experiment, interpolation_experiment, unit_equation_experiment,
};
pub use interpolate::{interpolation_construct, Interpolation};
pub use report::ExperimentReport;
pub use suites::{run_property_suites, SuiteResult, SuiteSummary};
