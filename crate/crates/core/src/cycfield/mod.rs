//! Exact arithmetic in cyclotomic fields and dense linear algebra over them.

pub mod cyclotomic;
mod matrix;
mod num;
mod unipoly;

pub use matrix::{commutant_dim, intertwiner_space, CycMatrix, Echelon};
pub use num::CycNum;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Parses a field element: a rational `"p/q"`, a root of unity `"z8"` or
/// `"z8^3"`, or a product `"p/q*z8^3"`.
pub fn parse_cyc(s: &str) -> Result<CycNum> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a cyclotomic number: {s:?}"));
    let (scalar, root) = match s.split_once('*') {
        Some((a, b)) => (Some(a.trim()), Some(b.trim())),
        None if s.starts_with('z') => (None, Some(s)),
        None => (Some(s), None),
    };
    let mut out = match scalar {
        Some(a) => CycNum::from_rational(parse_rational(a)?),
        None => CycNum::one(),
    };
    if let Some(z) = root {
        let body = z.strip_prefix('z').ok_or_else(bad)?;
        let (n, k) = match body.split_once('^') {
            Some((n, k)) => (n, k.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        out = out * zeta(n, k);
    }
    Ok(out)
}

/// Shorthand for `ζ_n^k`.
pub fn zeta(n: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(n, k)
}

/// Rational `a/b` as a field element.
pub fn frac(a: i64, b: i64) -> CycNum {
    CycNum::from_rational(Rational::new(a.into(), b.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_elements() {
        assert_eq!(parse_cyc("3").unwrap(), CycNum::from_int(3));
        assert_eq!(parse_cyc("z4^2").unwrap(), CycNum::from_int(-1));
        assert_eq!(parse_cyc("1/2*z3").unwrap(), frac(1, 2) * zeta(3, 1));
        assert!(parse_cyc("z0").is_err());
        assert!(parse_cyc("y3").is_err());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(" -4 ").unwrap(), Rational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
