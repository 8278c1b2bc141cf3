use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{field_data, qpoly};
use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// An exact element of the cyclotomic field `Q(ζ_N)`.
///
/// Stored as the coefficient vector of its residue modulo `Φ_N` in the power
/// basis `1, ζ, …, ζ^{φ(N)-1}`, so equality within one order is a vector
/// comparison. Binary operations on operands of different orders first lift
/// both into `Q(ζ_lcm)` through `ζ_N ↦ ζ_M^{M/N}`.
#[derive(Clone)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(v: Rational) -> Self {
        CycNum { order: 1, coeffs: vec![v] }
    }

    /// `ζ_N^k`, with `k` reduced modulo `N`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let data = field_data(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum { order: n, coeffs: data.powers[e].clone() }
    }

    /// Builds an element from power-basis coefficients, reducing modulo `Φ_N`
    /// when more than `φ(N)` coefficients are supplied.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        let data = field_data(n);
        let mut out = vec![Rational::zero(); data.degree];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < data.degree {
                out[k] += c;
            } else {
                for (o, pk) in out.iter_mut().zip(&data.powers[k % n as usize]) {
                    if !pk.is_zero() {
                        *o += &c * pk;
                    }
                }
            }
        }
        CycNum { order: n, coeffs: out }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the embedding `Q(ζ_N) → Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "cannot lift order {} into order {m}", self.order);
        if m == self.order {
            return self.clone();
        }
        let factor = (m / self.order) as usize;
        let data = field_data(m);
        let mut out = vec![Rational::zero(); data.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pk = &data.powers[(k * factor) % m as usize];
            for (o, p) in out.iter_mut().zip(pk) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycNum { order: m, coeffs: out }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect();
            return CycNum { order: self.order, coeffs };
        }
        let (a, b) = Self::common(self, rhs);
        a.add_ref(&b)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x - y).collect();
            return CycNum { order: self.order, coeffs };
        }
        let (a, b) = Self::common(self, rhs);
        a.sub_ref(&b)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.order != rhs.order {
            // a rational factor scales without lifting
            if let Some(c) = rhs.to_rational() {
                return self.scale(&c);
            }
            if let Some(c) = self.to_rational() {
                return rhs.scale(&c);
            }
            let (a, b) = Self::common(self, rhs);
            return a.mul_ref(&b);
        }
        let deg = self.coeffs.len();
        if deg == 1 {
            return CycNum { order: self.order, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let data = field_data(self.order);
        let n = self.order as usize;
        let mut out: Vec<Rational> = prod[..deg].to_vec();
        for (k, c) in prod.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[k % n]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycNum { order: self.order, coeffs: out }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse through the extended Euclidean algorithm in
    /// `Q[x]` against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.to_rational() {
            return Ok(CycNum::from_rational(Rational::one() / c).lift(self.order));
        }
        let data = field_data(self.order);
        let phi: Vec<Rational> = data.phi.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let s = qpoly::inverse_mod(&self.coeffs, &phi).ok_or(Error::DivisionByZero)?;
        let mut coeffs = vec![Rational::zero(); data.degree];
        for (o, c) in coeffs.iter_mut().zip(s) {
            *o = c;
        }
        Ok(CycNum { order: self.order, coeffs })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one().lift(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Power with a nonnegative exponent; never fails.
    pub fn powu(&self, e: u64) -> Self {
        self.pow(e as i64).expect("nonnegative power")
    }

    /// Galois automorphism `ζ_N ↦ ζ_N^k` for `k` coprime to `N`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "galois exponent must be a unit");
        let mut full = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            full[((j as i64) * k).rem_euclid(n) as usize] += c;
        }
        CycNum::from_coeffs(self.order, full)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(v: Rational) -> Self {
        CycNum::from_rational(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$imp(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$imp(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = self.add_ref(rhs);
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = self.sub_ref(rhs);
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z{}", self.order)?,
                _ => write!(f, "{mag}*z{}", self.order)?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr { order: self.order, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let data = field_data(repr.order);
        if repr.coeffs.len() != data.degree {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                data.degree,
                repr.order,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycNum { order: repr.order, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(z(4, 2), CycNum::from_int(-1));
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from_int(-1));
        assert_eq!(z(1, 5), CycNum::one());
        assert_eq!(z(4, 1) * z(4, 1), CycNum::from_int(-1));
    }

    #[test]
    fn lifting_to_lcm() {
        let s = z(6, 1) + z(4, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(z(6, 1).lift(12), z(12, 2));
        assert_eq!(z(4, 1).lift(12), z(12, 3));
    }

    #[test]
    fn inverse_of_root() {
        assert_eq!(z(5, 1).inv().unwrap(), z(5, 4));
        let a = z(7, 1) + CycNum::from_int(3) * z(7, 3);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in 1..25u32 {
            let phi = super::super::cyclotomic::cyclotomic_polynomial(n);
            let mut acc = CycNum::zero();
            for (k, c) in phi.iter().enumerate() {
                acc += &(z(n, k as i64) * CycNum::from_rational(Rational::from_integer(c.clone())));
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ_{n}) ≠ 0");
        }
    }

    #[test]
    fn conjugation_and_galois() {
        assert_eq!(z(8, 3).conj(), z(8, 5));
        assert_eq!(z(5, 2).galois(2), z(5, 4));
    }

    #[test]
    fn json_shape() {
        let v = z(3, 1).scale(&Rational::new(1.into(), 2.into()));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"order":3,"coeffs":["0","1/2"]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CycNum>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CycNum::zero().to_string(), "0");
        assert_eq!((z(5, 1) - CycNum::from_int(2)).to_string(), "-2 + z5");
    }
}
