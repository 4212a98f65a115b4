//! Exact polynomial arithmetic over `Q(omega)` and the generation checks
//! built on it.

mod checks;
mod cyclo;
mod poly;
mod rank;

pub use checks::{
    generation_check, generator_products, generators, invariant_dim_bruteforce, jacobian_check,
    jacobian_exact, jacobian_numeric, minimal_generator_cutoff, molien_closed_form_l,
    molien_series, reynolds, GenerationReport, Generator, GeneratorLabel, JacobianReport, Reynolds,
    EXACT_JACOBIAN_MAX_N, MONOMIAL_CAP, REYNOLDS_CAP,
};
pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloScalar};
pub use poly::{monomial_count, monomials_of_degree, Monomial, MultiPoly};
pub use rank::{bareiss_rank, polynomial_rank};
