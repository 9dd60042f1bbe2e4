//! Square-free values of polynomials `f(x, t)` over `F_q[t]`.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`field`]: prime and extension finite fields `F_q = F_p[u]/(m(u))`.
//! * [`poly`]: the ring `F_q[t]` with gcd, square-free testing, resultants,
//!   discriminants, enumeration of monic and irreducible polynomials and
//!   residue rings `F_q[t]/(D)`.
//! * [`parse`]: the text grammar for polynomials in `t`, `x` and `u`.
//! * [`bipoly`]: polynomials in `F_q[t][x]`, content, height, evaluation
//!   `f(a(t), t)`.
//! * [`multipoly`] and [`hypersurface`]: the discriminant/resultant equation
//!   in the coefficients of a generic monic `a(t)` whose zero set is exactly
//!   the set of `a` with `f(a)` not square-free.
//! * [`census`]: exhaustive and sampled counts, local densities and the
//!   truncated Euler product.
//!
//! Everything here is pure; parallel drivers live in the `ffsqfree` binary crate
//! and use the index-range entry points exposed by [`census`] and
//! [`hypersurface`].

#![no_std]

extern crate alloc;

pub mod bareiss;
pub mod bipoly;
pub mod census;
pub mod error;
pub mod field;
pub mod hypersurface;
pub mod multipoly;
pub mod parse;
pub mod poly;

pub use bipoly::{BiPoly, PrimitiveDecomposition};
pub use census::{CensusMode, CensusReport, LocalFactor, RamsayReport};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use hypersurface::{GenericValue, HypersurfaceCertificate};
pub use multipoly::{Monomial, MultiPoly};
pub use poly::{Residue, UniPoly};
