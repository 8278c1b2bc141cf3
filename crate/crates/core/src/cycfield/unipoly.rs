use std::fmt;

use super::CycNum;

/// Dense univariate polynomial over a cyclotomic field, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<CycNum>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(CycNum::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: CycNum, k: usize) -> Self {
        let mut v = vec![CycNum::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs.get(k).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_trunc(rhs, usize::MAX)
    }

    /// Product with every term of degree `>= limit` dropped.
    pub fn mul_trunc(&self, rhs: &Self, limit: usize) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(limit);
        let mut out = vec![CycNum::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    /// Drops all terms of degree `>= limit`.
    pub fn truncate(&self, limit: usize) -> Self {
        Self::new(self.coeffs.iter().take(limit).cloned().collect())
    }

    /// Power series of `1/(1 - c t^l)` up to (excluding) degree `limit`.
    pub fn geometric_series(c: &CycNum, l: usize, limit: usize) -> Self {
        assert!(l > 0);
        let mut v = vec![CycNum::zero(); limit];
        let mut p = CycNum::one();
        let mut k = 0;
        while k < limit {
            v[k] = p.clone();
            p = &p * c;
            k += l;
        }
        Self::new(v)
    }

    /// `(1 - t^d)/(1 - t) = 1 + t + … + t^{d-1}`.
    pub fn t_integer(d: usize) -> Self {
        Self::new(vec![CycNum::one(); d])
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        self.coeffs.iter().rev().fold(CycNum::zero(), |acc, c| &acc * x + c)
    }

    /// Returns `m` with `self = t^m · other` when such a shift exists.
    pub fn monomial_shift_of(&self, other: &Self) -> Option<i64> {
        let (a, b) = (self.valuation()?, other.valuation()?);
        let m = a as i64 - b as i64;
        let shifted: Vec<CycNum> = if m >= 0 {
            std::iter::repeat_n(CycNum::zero(), m as usize).chain(other.coeffs.iter().cloned()).collect()
        } else {
            other.coeffs.iter().skip((-m) as usize).cloned().collect()
        };
        (Self::new(shifted) == *self).then_some(m)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let cs = if c.support() > 1 { format!("({c})") } else { c.to_string() };
                match k {
                    0 => cs,
                    1 if c.is_one() => "t".to_string(),
                    1 => format!("{cs}*t"),
                    _ if c.is_one() => format!("t^{k}"),
                    _ => format!("{cs}*t^{k}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
