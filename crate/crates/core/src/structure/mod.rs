//! Conversions and constructions between data: TGWAs, induced morphisms,
//! fixed rings, twisted tensor products and GK dimension.

mod fixed;
mod gkdim;
mod morphism;
mod tensor;
mod tgwa;

pub use fixed::{fixed_ring, FixedRing};
pub use gkdim::{gk_dimension, GkDimension};
pub use morphism::{induced_morphism, InducedMorphism};
pub use tensor::{
    embed_left, embed_right, tau, tau_associativity, twisted_tensor, untwisted_tensor, PureTensor, TensorProduct,
    TwistSpec,
};
pub use tgwa::{from_tgwa, tgwa_relations, to_tgwa, TgwaConversion, TgwaDatum};
