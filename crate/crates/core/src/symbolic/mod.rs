//! Exact symbolic machinery behind diagonal tails: generalized polynomials,
//! entry laws, asymptotic series and class profiles.

pub mod law;
pub mod poly;
pub mod profile;
pub mod series;

pub use law::Law;
pub use profile::{profile_class, Asymptotics, Extremes, Profile};
pub use series::Series;
