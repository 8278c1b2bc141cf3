//! The rational Cherednik algebra of `G(r,1,n)` and its `τ`-fixed part:
//! parameters, Dunkl operators, graded restriction and fake degrees.

mod algebra;
mod dunkl;
mod graded;
mod params;
mod poly;

pub use algebra::{epsilon, GroupAlgElt, PBWMonomial};
pub use dunkl::{
    dunkl_agreement, dunkl_apply, verify_commutation, verify_thm_3_4, AgreementReport, CommutationReport, DunklSystem,
    GammaWitness, Thm34Report, DEFAULT_MAX_DEGREE,
};
pub use graded::{
    bn_dn_table, degrees, fake_degree, fake_degree_of_character, fake_degree_table, graded_restriction,
    group_representation, polynomial_trace, verify_degrees, verify_fake_shift, BnDnRow, DegreeVerdict, FakeDegreeTable,
    FakeShift, GradedRestrictionReport, GroupRep,
};
pub use params::{
    c_from_k, check_tau_compatibility, gamma_from_c, heckman_opdam_shift, k_from_c, CFunction, KTable, TauCompatibility,
};
pub use poly::{Exponents, Poly};
