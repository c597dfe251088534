//! Reductions from S-unit questions about a map to unit equations, curves,
//! and explicit families.

pub mod curves;
pub mod families;
pub mod image;
pub mod unit_eq;

pub use curves::{
    build_curves, curve_point_search, curve_point_search_batch, curve_point_search_generic,
    genus_in_range, genus_of, map_sunit_to_curve, select_prime, CurveBattery, CurvePoint,
    IrreducibilityCertificate, SuperellipticModel,
};
pub use families::{
    infinite_family, power_map_family, FamilyMember, InfiniteFamily, PowerMapFamily,
};
pub use image::{
    count_image_sunits_box, image_hits, image_hits_generic, CrossCheck, CrossCheckStatus,
    ImageCount,
};
pub use unit_eq::{
    evertse_bound, monic_unit_reduction, monic_unit_reduction_ext, solve_unit_equation_box,
    ExtensionData, UnitEquationInstance,
};
