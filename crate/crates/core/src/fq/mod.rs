//! Arithmetic in F_q (q prime) and F_q[T].

pub mod factor;
pub mod field;
pub mod poly;
pub mod shape;
pub mod table;
mod text;

pub use factor::{factor, factor_seeded, factor_with_rng, is_irreducible, Factorization};
pub use field::FieldParams;
pub use poly::Poly;
pub use shape::FactorShape;
pub use table::{enumerate_monics, monic_count_upto, MonicTable};
