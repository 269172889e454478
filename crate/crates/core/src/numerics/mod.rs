pub mod fit;
pub mod jet;
pub mod ode;
pub mod quad;
