//! Cyclotomic polynomials and per-order reduction tables.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Reduction data for `Q(ζ_N)`: `Φ_N` and the residues of `x^e mod Φ_N` for
/// every `0 <= e < N`.
#[derive(Debug)]
pub struct FieldData {
    pub order: u32,
    pub degree: usize,
    /// Coefficients of `Φ_N`, lowest degree first; monic.
    pub phi: Vec<BigInt>,
    /// `powers[e]` holds `x^e mod Φ_N` in the power basis.
    pub powers: Vec<Vec<Rational>>,
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();

/// Returns the (cached) reduction data for order `n`.
pub fn field_data(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return d.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.iter().map(|c| Rational::from_integer(c.clone())).collect());
        // multiply by x, then reduce the overflow term with the monic Φ_N
        let top = cur[degree - 1].clone();
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..degree {
                cur[i] -= &top * &phi[i];
            }
        }
    }
    let data = Arc::new(FieldData { order: n, degree, phi, powers });
    cache.write().expect("cyclotomic cache poisoned").entry(n).or_insert(data).clone()
}

/// The `n`-th cyclotomic polynomial with integer coefficients, lowest degree
/// first, computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial_cached(d));
        }
    }
    num
}

fn cyclotomic_polynomial_cached(d: u32) -> Vec<BigInt> {
    if let Some(cache) = CACHE.get() {
        if let Some(data) = cache.read().expect("cyclotomic cache poisoned").get(&d) {
            return data.phi.clone();
        }
    }
    field_data(d).phi.clone()
}

/// Exact quotient of `a` by the monic polynomial `b`; panics on a nonzero
/// remainder.
fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Dense rational polynomials, lowest degree first; used for inverses.
pub(crate) mod qpoly {
    use super::Rational;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(Rational::zero());
        }
    }

    pub fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = Rational::one() / b[db].clone();
        let mut rem = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return (vec![Rational::zero()], rem);
        }
        let dq = rem.len() - 1 - db;
        let mut q = vec![Rational::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = &rem[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                rem[k + i] -= t;
            }
            q[k] = c;
        }
        trim(&mut q);
        trim(&mut rem);
        (q, rem)
    }

    /// Returns `s` with `s * a ≡ 1 (mod m)` when `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = Rational::one() / r0[0].clone();
        let mut s: Vec<Rational> = s0.into_iter().map(|x| x * &c).collect();
        let (_, rem) = divrem(&s, m);
        s = rem;
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(18), ints(&[1, 0, 0, -1, 0, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..40 {
            assert_eq!(field_data(n).degree, totient(n), "n = {n}");
        }
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let phi = cyclotomic_polynomial(105);
        assert_eq!(phi.len(), 49);
        assert!(phi.contains(&BigInt::from(-2)));
    }
}
