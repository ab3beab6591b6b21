//! Exact arithmetic for the Hopf algebra of packed words.
//!
//! Words over the letters `x_0, x_1, ...` are stored as integer sequences. A
//! word is *packed* when its nonzero letters are exactly `1..=k`. Packed words
//! span an algebra whose product is the shifted concatenation
//! `u * v = u · T_{sup(u)}(v)` and whose coproduct selects a subset of
//! positions on the left and quotients the rest by the selected alphabet on
//! the right. All coefficients are exact rationals.
//!
//! - [`words`]: packing, substitution, quotients, admissible cuts and
//!   irreducible factorization.
//! - [`algebra`]: product, coproduct, counit, antipode and tensor operations.
//! - [`enumeration`]: Stirling numbers, the counts `d(n,k)`, `d_n`, `i_n`,
//!   streamed generation of packed words and the exponential generating function.
//! - [`primitives`]: graded kernels of the reduced coproduct.
//! - [`verify`]: exhaustive and seeded-random law checking.
//!
//! ```
//! use wmat_core::{algebra, PackedWord};
//!
//! let w: PackedWord = "[1,2,1]".parse().unwrap();
//! assert_eq!(algebra::coproduct(&w).len(), 8);
//! assert_eq!(w.factor_irreducible().len(), 1);
//! ```

pub mod algebra;
pub mod enumeration;
pub mod linalg;
pub mod linear;
pub mod par;
pub mod primitives;
pub mod verify;
pub mod words;

pub use linear::{Element, LinComb, Scalar, Tensor2, Tensor3};
pub use par::Exec;
pub use words::{IndexSet, Letter, PackedWord, Word, WordError};
