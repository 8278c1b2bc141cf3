//! Formal sums in the group algebra `C[W]` and PBW monomials of the
//! rational Cherednik algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycfield::CycNum;
use crate::refgroup::{GroupParams, Hyperplane, MonomialMatrix};

use super::poly::{Exponents, Poly};

/// `Σ_g c_g g` with nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgElt {
    terms: BTreeMap<MonomialMatrix, CycNum>,
}

impl GroupAlgElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: MonomialMatrix) -> Self {
        let mut x = Self::zero();
        x.add_term(g, &CycNum::one());
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialMatrix, &CycNum)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &MonomialMatrix) -> CycNum {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: MonomialMatrix, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero();
        for (g, v) in &self.terms {
            out.add_term(g.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &rhs.terms {
                out.add_term(g.mul(h), &(a * b));
            }
        }
        out
    }

    /// True when every element of the support lies in `group`.
    pub fn supported_in(&self, group: &[MonomialMatrix]) -> bool {
        self.terms.keys().all(|g| group.contains(g))
    }

    /// `τ(Σ c_g g) = Σ c_g ξ^{|g|} g`.
    pub fn tau(&self, xi: &CycNum) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(g.clone(), &(c * xi.powu(g.exp_sum())));
        }
        out
    }

    /// Action on polynomials.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (g, c) in &self.terms {
            out.add_assign(&f.act(g).scale(c));
        }
        out
    }
}

/// `ε_{H,j} = (1/e_H) Σ_{w ∈ W_H} det(w)^j w`, the idempotent of `C W_H`
/// attached to the character `det^{-j}`.
pub fn epsilon(h: &Hyperplane, j: u32, gp: GroupParams) -> GroupAlgElt {
    let stab = h.stabilizer(gp);
    let inv = CycNum::from_int(stab.len() as i64).inv().expect("nonzero order");
    let mut out = GroupAlgElt::zero();
    for w in stab {
        let c = w.det().powu(j as u64) * &inv;
        out.add_term(w, &c);
    }
    out
}

/// A PBW monomial `x^α g y^β`; `τ` scales it by `ξ^{tau_weight}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PBWMonomial {
    pub alpha: Exponents,
    pub g: MonomialMatrix,
    pub beta: Exponents,
    /// `|exps(g)| mod p`.
    pub tau_weight: u32,
}

impl PBWMonomial {
    pub fn new(alpha: Exponents, g: MonomialMatrix, beta: Exponents, p: u32) -> Self {
        let tau_weight = (g.exp_sum() % p as u64) as u32;
        PBWMonomial { alpha, g, beta, tau_weight }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refgroup::{hyperplanes, Which};

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        for (r, n) in [(2, 2), (3, 2), (4, 2), (6, 1)] {
            let gp = GroupParams::new(r, 1, n).unwrap();
            for h in hyperplanes(gp, Which::Full) {
                let eps: Vec<GroupAlgElt> = (0..h.e_h).map(|j| epsilon(&h, j, gp)).collect();
                let mut total = GroupAlgElt::zero();
                for (i, a) in eps.iter().enumerate() {
                    total = total.add(a);
                    for (j, b) in eps.iter().enumerate() {
                        let prod = a.mul(b);
                        if i == j {
                            assert_eq!(prod, *a);
                        } else {
                            assert!(prod.is_zero());
                        }
                    }
                }
                assert_eq!(total, GroupAlgElt::basis(MonomialMatrix::identity(r, n)));
            }
        }
    }

    #[test]
    fn epsilon_projects_powers_of_alpha() {
        // ε_{H,j} keeps α_H^m exactly when m ≡ j (mod e_H)
        let gp = GroupParams::new(3, 1, 2).unwrap();
        let h = hyperplanes(gp, Which::Full)[0];
        let x = Poly::variable(2, 0);
        let mut pow = Poly::one(2);
        for m in 0..6u32 {
            for j in 0..3 {
                let img = epsilon(&h, j, gp).apply(&pow);
                if m % 3 == j {
                    assert_eq!(img, pow);
                } else {
                    assert!(img.is_zero());
                }
            }
            pow = &pow * &x;
        }
    }
}
