//! Finite categories, factorization systems and their combinatorics.

pub mod category;
pub mod factorization;
pub mod subquo;

pub use category::{
    terminal_category, CategoryError, FinCategory, MorData, MorId, ObjId, Subcategory,
    ValidationReport, Violation,
};
pub use factorization::{
    check_factorization_system, check_pigeonhole, factorize, pigeonhole_witness,
    stiffness_analysis, verify_unique_factorization, FactorizationSystem, FsError, FsReport,
    FsViolation, StiffnessAnalysis, UniqueFactorWitness,
};
pub use subquo::{quo_reps, sub_quo, sub_reps, triangular_listing, SubQuoListing};
