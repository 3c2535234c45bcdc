pub mod factored;
pub mod interp;
pub mod linalg;
pub mod poly;
pub mod ratfunc;

pub use factored::{FormProduct, Factored, IntForm, RatForm};
pub use poly::{rat, Monomial, MultiPoly};
pub use ratfunc::RationalFunction;
