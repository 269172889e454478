//! Complex-analytic kernel behind weak holomorphicity: the constant `K_q`,
//! the Cauchy–Pompeiu representation, growth bounds and orders of zeros.

pub mod bound;
pub mod field;
pub mod kq;
pub mod order;
pub mod pompeiu;

pub use bound::{weak_bound_margin, GrowthBound};
pub use field::{parse_complex, FieldOnDisc, Provenance};
pub use kq::{kq_constant, kq_disc_contribution, kq_monte_carlo, KqEstimate, KqMonteCarlo};
pub use order::{
    direction_field_index, zero_order_loglog, zero_order_winding, HalfInteger, ZeroOrderReport,
};
pub use pompeiu::{cauchy_pompeiu, cauchy_pompeiu_residual, DiscDomain, PompeiuBreakdown};
