//! Quadrature over cumulative probability for integrals of the form
//! `int_0^1 phi(p) q(p) dp`.
//!
//! Four rules are supported: composite trapezoid and Simpson on a uniform
//! grid, and equal-weight quasi-Monte Carlo over the van der Corput
//! ("Niederreiter") and `sqrt(2)` Weyl sequences. Closed grids never place a
//! node at 0 or 1; see [`EndpointPolicy`].

mod adaptive;
mod grid;
mod integrate;
pub mod qmc;
pub mod sum;

pub use adaptive::integrate_adaptive;
pub use grid::{
    build_grid, build_grid_with, newton_cotes_weight, EndpointPolicy, Grid, QuadratureRule,
};
pub use integrate::{integrate_ordered, integrate_weighted};
pub use qmc::{van_der_corput, weyl_node};
