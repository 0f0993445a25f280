//! Bell–Rogalski data, canonical ideals and graded multiplication.
//!
//! Elements of the skew Laurent ring `R_p[t^±; σ]` are written in the normal
//! order `r t^α = r t_1^{α_1} ⋯ t_n^{α_n}`, with `t_i r = σ_i(r) t_i` and
//! `t_k t_i = p_ik t_i t_k`.

mod datum;
mod decompose;
mod element;

pub use datum::{BellRogalskiDatum, Degree};
pub(crate) use datum::invariance_witness;
pub use decompose::{for_each_in_box, Decomposition};
pub use element::{GradedElement, SkewElement};
