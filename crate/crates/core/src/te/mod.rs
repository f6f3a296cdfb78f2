//! Copula entropy, mutual information and transfer entropy.

mod copula;
mod embedding;
mod transfer;

pub use copula::{copula_entropy, mutual_information, CeEstimate};
pub use embedding::{build_lagged_embedding, build_self_embedding, LaggedEmbedding};
pub use transfer::{transfer_entropy, transfer_entropy_from_embedding, TeEstimate, TeTerms};
