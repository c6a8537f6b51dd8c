//! Exact graded Tor Hilbert series and intersection multiplicities.

pub mod algebra;
pub mod arith;
pub mod chi;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod linalg;
pub mod parse;
pub mod ring;
pub mod scalar;

pub use arith::{ExtendedValue, IntPoly, RatFun};
pub use chi::{ab_decompose, cartier_mult, chi, chi_series, classify, qcartier_mult, ChiClass, ChiResult};
pub use error::{Error, Result};
pub use groebner::GroebnerBasis;
pub use hilbert::{hilbert_series, DimMult, HilbertSeries};
pub use homology::{chi_truncated, gulliksen_chi, naive_series, tor_table, truncated_resolution, TorTable};
pub use parse::parse_poly;
pub use ring::{GradedRing, MonomialOrder, MultiPoly, PolyRing};
pub use scalar::{Field, Fp};

pub type Rational = num_rational::BigRational;
pub type QPoly = MultiPoly<Rational>;
pub type QRing = GradedRing<Rational>;
pub type FpPoly<const P: u64> = MultiPoly<Fp<P>>;
pub type FpRing<const P: u64> = GradedRing<Fp<P>>;
