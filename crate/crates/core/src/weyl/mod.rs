//! Finite symmetric groups `S_n` and extended affine symmetric groups.
//!
//! Conventions: permutations act on `[n] = {1,…,n}` and are stored in
//! one-line notation. Products compose right to left, so for a word
//! `(i_1,…,i_l)` the permutation `s_{i_1}⋯s_{i_l}` sends `j` to
//! `s_{i_1}(⋯s_{i_l}(j))`. Throughout, `J = [n−1] ∖ {k}` is the maximal
//! parabolic set attached to a Grassmannian `Gr(k,n)`.

mod affine;
mod parabolic;
mod perm;

pub use affine::{
    bounded_affine_permutations, f_vw, tau_k, tau_lambda, tau_u_lambda, AffinePermutation,
};
pub use parabolic::{
    demazure_star, demazure_tri, grassmannian_reps, longest_parabolic, max_grassmannian,
    parabolic_factorize, parabolic_subgroup, positive_subexpression, PositiveSubexpression,
};
pub use perm::{signed_matrix, Permutation};

/// Errors raised by group-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a valid affine window: {0}")]
    InvalidWindow(String),
    #[error("simple reflection index {index} out of range for n = {n}")]
    BadGenerator { index: usize, n: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("{v} is not below {w} in Bruhat order")]
    NotBelow { v: String, w: String },
    #[error("{w} is not a minimal coset representative for k = {k}")]
    NotGrassmannian { w: String, k: usize },
    #[error("affine permutations have different averages ({0} vs {1})")]
    AverageMismatch(i64, i64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}
