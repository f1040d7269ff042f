//! Exact rational arithmetic, polynomial algebra, real root isolation and
//! truncated power series.

pub mod bipoly;
pub mod det;
mod modp;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod series;
pub mod zpoly;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use bipoly::{discriminant, resultant, resultant_x, resultant_y, BiPoly, Var};
pub use det::{bareiss, DetRing};
pub use poly::UniPoly;
pub use ratfun::RationalFunction;
pub use roots::{
    isolate_real_roots, isolate_real_roots_with, isolate_square_free, sign_at_root, sturm_count,
    DescartesIsolator, IsolatedRoot, RawRoot, RootIsolator, SignOracle, SturmChain, SturmIsolator,
};
pub use series::TruncatedSeries;
pub use zpoly::ZPoly;

/// The exact ground field: arbitrary-precision rationals in lowest terms.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("interval does not isolate exactly one root")]
    NotIsolating,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("evaluation at a pole")]
    Pole,
    #[error("series is zero to the available precision")]
    SeriesPrecision,
    #[error("leading coefficient is not a square")]
    NotASquare,
    #[error("both inputs are constant in the eliminated variable")]
    DegenerateElimination,
    #[error("cannot parse rational number {0:?}")]
    Parse(String),
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p", "p/q", or a finite decimal such as "-0.125".
pub fn parse_scalar(s: &str) -> Result<Scalar, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d == BigInt::from(0) {
            return Err(err());
        }
        return Ok(Scalar::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = ip.starts_with('-');
        let whole: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::from(0)
        } else {
            ip.parse().map_err(|_| err())?
        };
        let frac: BigInt = fp.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Scalar::new(whole.magnitude().clone().into(), BigInt::from(1))
            + Scalar::new(frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Scalar::from_integer(n))
}

/// Canonical text form: "p" for integers, otherwise "p/q".
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}
