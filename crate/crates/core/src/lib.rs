//! Circle-inscribed Poncelet triangle families.
//!
//! - [`geom`]: points, lines, circles, conics and polarity.
//! - [`poncelet`]: the family parametrization, equilateral containment, and
//!   the constructions that build families from triangles and centers.
//! - [`centers`]: triangle centers, Euler line, Kiepert parabola, contact and
//!   tangential triangles.
//! - [`dual`]: tangential families and their outer conics.
//! - [`experiments`]: sweeps, locus fitting, and one verifier per claim.

pub mod centers;
pub mod cubic;
pub mod dual;
pub mod error;
pub mod experiments;
pub mod geom;
pub mod poncelet;

pub use error::{GeomError, Result};
