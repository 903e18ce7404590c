//! Triple product constructions, matrix embeddings and decoding.
//!
//! A triplet `(S, T, U)` places `A[i][k]` at `-S(i) + T(k)` and `B[k][j]` at
//! `-T(k) + U(j)`; the convolution then carries `(AB)[i][j]` at
//! `-S(i) + U(j)` whenever the sets satisfy the triple product property.

mod embed;
mod stpp;
mod triplet;

pub use embed::{decode, decode_real, embed_pair, embed_pair_with, Placement, Signs, REAL_RESIDUE_TOL};
pub use stpp::{
    cksu_stpp, decode_stpp, embed_stpp_batch, embed_stpp_pair, verify_stpp, StppFamily, SupportSets,
    STPP_CHECK_CAP,
};
pub use triplet::{
    ap_triplet, vanilla_tpp, verify_tpp, verify_tpp_with_cap, IndexingTriplet, DEFAULT_EXHAUSTIVE_CAP,
};

