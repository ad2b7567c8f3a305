//! Exact arithmetic in twisted group algebras and structural checks that
//! only need the generating function.

pub mod element;
pub mod structure;

pub use element::{basis_product, multiply, AlgebraContext, AlgebraElement, Sign};
pub use structure::{
    analyze_generator_set, center_verdict, decomposability, even_subalgebra_check,
    graded_alternative_check, graded_center, CenterVerdict, Decomposition, GeneratorReport,
    GeneratorSet,
};
