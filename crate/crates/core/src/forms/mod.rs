//! Twisting functions, cubic forms and the correspondence between them.

pub mod cubic;
pub mod pbw;
pub mod twisting;

pub use cubic::{
    alpha_signed, alpha_standard, beta_of_alpha, canonical_twisting, cubic_eval,
    generating_defect, is_generating, phi_of_alpha, CubicForm, GeneratingDefect,
};
pub use pbw::pbw_twisting;
pub use twisting::{
    beta_of_f, f_clifford, f_oseries, phi_of_f, trilinear_phi, TwistMonomial, TwistingMap,
};
