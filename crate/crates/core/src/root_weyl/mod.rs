//! Type A root data: weights modulo the all-ones vector, the symmetric
//! group with its Bruhat order, parabolic subgroups and their cosets.

mod parabolic;
mod perm;
mod weight;

pub use parabolic::{coset_data, CosetData, ParabolicData};
pub use perm::{bruhat_leq, Perm};
pub use weight::{dot_action, rho, tensor_weight_decompose, Weight};
