//! Modular representations: simple modules of kG over a splitting field,
//! Brauer and projective characters, Cartan matrices.

mod brauer;
mod classfn;
mod meataxe;
mod projective;

pub use brauer::{brauer_character_table, cartan_matrix, projective_character_table, BrauerData};
pub use classfn::{
    class_indicator, decompose_integral, decompose_into_simples, induce_class_function,
    inflate_class_function, RegularClasses,
};
pub use meataxe::{
    chop_regular, chop_regular_over, composition_factors, regular_exponent, split,
    splitting_field, AlgebraElement, Module, SimpleModule, Split, RETRY_BUDGET,
};
pub use projective::{hom_cartan_matrix, HOM_CARTAN_BOUND};
