//! Polynomials in `x_1, …, x_n` with cyclotomic coefficients and the group
//! action `(w·f)(x) = f(w^{-1}x)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cycfield::{zeta, CycNum};
use crate::error::{Error, Result};
use crate::refgroup::MonomialMatrix;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial stored as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exponents, CycNum>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: CycNum) -> Self {
        let mut f = Self::zero(n);
        f.add_term(vec![0; n], &c);
        f
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, CycNum::one())
    }

    pub fn monomial(c: CycNum, exps: Exponents) -> Self {
        let mut f = Self::zero(exps.len());
        f.add_term(exps, &c);
        f
    }

    /// The coordinate function `x_i` (0-based).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(CycNum::one(), e)
    }

    /// The linear form `Σ_i a_i x_i`.
    pub fn linear(a: &[CycNum]) -> Self {
        let mut f = Self::zero(a.len());
        for (i, c) in a.iter().enumerate() {
            let mut e = vec![0; a.len()];
            e[i] = 1;
            f.add_term(e, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&a| a as usize).sum()).max()
    }

    pub fn coeff(&self, exps: &[u32]) -> CycNum {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exponents, c: &CycNum) {
        assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), &-c);
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, rhs: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, &(x * y));
            }
        }
        out
    }

    /// `x_i · f`.
    pub fn mul_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += 1;
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// `∂f/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &(c * CycNum::from_int(e[i] as i64)));
        }
        out
    }

    /// Image of a monomial under `w`: `w·x_i = ζ^{-e_i} x_{perm(i)}`.
    pub fn act_monomial(w: &MonomialMatrix, exps: &[u32]) -> (CycNum, Exponents) {
        let mut out = vec![0; exps.len()];
        let mut phase = 0i64;
        for (i, &a) in exps.iter().enumerate() {
            out[w.perm()[i]] = a;
            phase += w.exps()[i] as i64 * a as i64;
        }
        (zeta(w.r(), -phase), out)
    }

    /// `(w·f)(x) = f(w^{-1}x)`.
    pub fn act(&self, w: &MonomialMatrix) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let (phase, img) = Self::act_monomial(w, e);
            out.add_term(img, &(c * phase));
        }
        out
    }

    /// Exact quotient by a nonzero linear form, by synthetic division in the
    /// first variable the form involves.
    pub fn div_linear(&self, alpha: &[CycNum]) -> Result<Self> {
        let i = alpha
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::DivisibilityFailure("division by the zero form".into()))?;
        let lead = alpha[i].inv()?;
        // alpha / lead = x_i - tail
        let mut tail = vec![CycNum::zero(); self.n];
        for (j, c) in alpha.iter().enumerate() {
            if j != i {
                tail[j] = -(c * &lead);
            }
        }
        let tail = Poly::linear(&tail);

        // coefficients of powers of x_i, each free of x_i
        let mut slices: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            slices.entry(e[i]).or_insert_with(|| Poly::zero(self.n)).add_term(e2, c);
        }
        let top = match slices.keys().next_back() {
            Some(&m) => m,
            None => return Ok(Poly::zero(self.n)),
        };
        let mut q = Poly::zero(self.n);
        let mut carry = Poly::zero(self.n);
        for m in (1..=top).rev() {
            // q_{m-1} = g_m + tail·q_m
            let mut qm = slices.remove(&m).unwrap_or_else(|| Poly::zero(self.n));
            qm.add_assign(&tail.mul(&carry));
            for (e, c) in &qm.terms {
                let mut e2 = e.clone();
                e2[i] = m - 1;
                q.add_term(e2, c);
            }
            carry = qm;
        }
        let mut rem = slices.remove(&0).unwrap_or_else(|| Poly::zero(self.n));
        rem.add_assign(&tail.mul(&carry));
        if !rem.is_zero() {
            return Err(Error::DivisibilityFailure(format!("{self} is not divisible by {}", Poly::linear(alpha))));
        }
        Ok(q.scale(&lead))
    }

    /// All exponent vectors of total degree `d` in `n` variables, in
    /// decreasing lexicographic order.
    pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
        fn rec(n: usize, d: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for a in (0..=d).rev() {
                prefix.push(a);
                rec(n, d - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }

    /// Monomial basis of the polynomials of degree at most `d`.
    pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponents> {
        (0..=d).flat_map(|k| Self::monomials_of_degree(n, k)).collect()
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $assign:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

poly_binop!(Add, add, add_assign);
poly_binop!(Sub, sub, sub_assign);

impl std::ops::Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycfield::frac;

    #[test]
    fn monomial_counts() {
        assert_eq!(Poly::monomials_of_degree(3, 2).len(), 6);
        assert_eq!(Poly::monomials_up_to(2, 5).len(), 21);
        assert_eq!(Poly::monomials_of_degree(1, 4), vec![vec![4]]);
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let alpha = vec![CycNum::one(), -zeta(3, 1)];
        let q = &(&Poly::variable(n, 0) + &Poly::variable(n, 1).scale(&frac(2, 3))) * &Poly::variable(n, 1);
        let g = &Poly::linear(&alpha) * &q;
        assert_eq!(g.div_linear(&alpha).unwrap(), q);
        let bad = &g + &Poly::one(n);
        assert!(matches!(bad.div_linear(&alpha), Err(Error::DivisibilityFailure(_))));
    }

    #[test]
    fn action_is_contragredient() {
        // w = diag(ζ_4, 1): (w·x_1)(x) = x_1(w^{-1}x) = ζ_4^{-1} x_1
        let w = MonomialMatrix::diagonal(4, &[1, 0]);
        assert_eq!(Poly::variable(2, 0).act(&w), Poly::variable(2, 0).scale(&zeta(4, -1)));
        let g = MonomialMatrix::new(3, vec![1, 0], vec![1, 2]).unwrap();
        let h = MonomialMatrix::new(3, vec![1, 0], vec![0, 1]).unwrap();
        let f = &(&Poly::variable(2, 0) * &Poly::variable(2, 0)) + &Poly::variable(2, 1).scale(&frac(1, 2));
        assert_eq!(f.act(&h).act(&g), f.act(&g.mul(&h)));
    }

    #[test]
    fn derivative_and_product() {
        let x = Poly::variable(2, 0);
        let y = Poly::variable(2, 1);
        let f = &(&x * &x) * &y;
        assert_eq!(f.derivative(0), (&x * &y).scale(&CycNum::from_int(2)));
        assert_eq!(f.derivative(1), &x * &x);
        assert_eq!(f.mul_var(1), &f * &y);
    }
}
