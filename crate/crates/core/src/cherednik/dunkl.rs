//! Dunkl operators `T_y = ∂_y + Σ_H (⟨y,α_H⟩/α_H) a_H` acting exactly on
//! polynomials, and the identities they satisfy.

use serde::Serialize;

use crate::cycfield::{zeta, CycNum};
use crate::error::{Error, Result};
use crate::refgroup::{
    closure, enumerate, generators, hyperplanes, GroupParams, Hyperplane, HyperplaneKind, MonomialMatrix, Which,
    DEFAULT_GROUP_CAP,
};

use super::algebra::{epsilon, GroupAlgElt, PBWMonomial};
use super::params::KTable;
use super::poly::Poly;

/// Default bound on the degree of test polynomials.
pub const DEFAULT_MAX_DEGREE: u32 = 6;

#[derive(Clone, Debug)]
struct Term {
    alpha: Vec<CycNum>,
    root: Vec<CycNum>,
    a: GroupAlgElt,
    gamma: GroupAlgElt,
}

/// The Dunkl operators of one hyperplane arrangement with fixed parameters.
#[derive(Clone, Debug)]
pub struct DunklSystem {
    pub gp: GroupParams,
    pub which: Which,
    terms: Vec<(Hyperplane, Term)>,
}

fn term(h: &Hyperplane, gp: GroupParams, k: &[CycNum]) -> Term {
    let e = CycNum::from_int(h.e_h as i64);
    let mut a = GroupAlgElt::zero();
    let mut gamma = GroupAlgElt::zero();
    for j in 0..h.e_h as usize {
        let eps = epsilon(h, j as u32, gp);
        a = a.add(&eps.scale(&(&k[j] * &e)));
        gamma = gamma.add(&eps.scale(&((&k[j + 1] - &k[j]) * &e)));
    }
    Term { alpha: h.kind.alpha(gp.r, gp.n), root: h.kind.root(gp.r, gp.n), a, gamma }
}

impl DunklSystem {
    /// Operators for the arrangement of `G(r,1,n)`.
    pub fn new(k: &KTable) -> Result<Self> {
        if k.has_offset() {
            return Err(Error::BadParams("Dunkl operators need an unshifted k-table".into()));
        }
        let gp = k.gp;
        let terms = hyperplanes(gp, Which::Full).into_iter().map(|h| (h, term(&h, gp, k.values(h.kind)))).collect();
        Ok(DunklSystem { gp, which: Which::Full, terms })
    }

    /// Operators for the arrangement of `G(r,p,n)`: coordinate stabilizers
    /// shrink to order `d` with parameters `k'_l = p·k_l`, and disappear
    /// when `d = 1`.
    pub fn restricted(k: &KTable) -> Result<Self> {
        if k.has_offset() {
            return Err(Error::BadParams("Dunkl operators need an unshifted k-table".into()));
        }
        let gp = k.gp;
        let coord = k.subgroup_coordinate();
        let terms = hyperplanes(gp, Which::Subgroup)
            .into_iter()
            .map(|h| {
                let vals = if h.kind.is_coordinate() { &coord[..] } else { k.values(h.kind) };
                (h, term(&h, gp, vals))
            })
            .collect();
        Ok(DunklSystem { gp, which: Which::Subgroup, terms })
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = &Hyperplane> {
        self.terms.iter().map(|(h, _)| h)
    }

    /// The element `a_H` used for a hyperplane.
    pub fn a_h(&self, kind: HyperplaneKind) -> Option<&GroupAlgElt> {
        self.terms.iter().find(|(h, _)| h.kind == kind).map(|(_, t)| &t.a)
    }

    pub fn gamma(&self, kind: HyperplaneKind) -> Option<&GroupAlgElt> {
        self.terms.iter().find(|(h, _)| h.kind == kind).map(|(_, t)| &t.gamma)
    }

    /// `T_{e_y} f`.
    pub fn apply(&self, y: usize, f: &Poly) -> Result<Poly> {
        let mut out = f.derivative(y);
        for (h, t) in &self.terms {
            let coef = &t.alpha[y];
            if coef.is_zero() {
                continue;
            }
            let af = t.a.apply(f);
            let q = af.div_linear(&t.alpha).map_err(|e| match e {
                Error::DivisibilityFailure(msg) => Error::DivisibilityFailure(format!("{:?}: {msg}", h.kind)),
                other => other,
            })?;
            out.add_assign(&q.scale(coef));
        }
        Ok(out)
    }

    /// `T_y f` for an arbitrary direction `y = Σ y_i e_i`.
    pub fn apply_vector(&self, y: &[CycNum], f: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(f.nvars());
        for (i, c) in y.iter().enumerate() {
            if !c.is_zero() {
                out.add_assign(&self.apply(i, f)?.scale(c));
            }
        }
        Ok(out)
    }

    /// Right side of `[y, x] = ⟨y,x⟩ + Σ_H (⟨α_H,y⟩⟨x,v_H⟩/⟨α_H,v_H⟩) γ_H` for
    /// `y = e_a`, `x = x_b`, as an element of the group algebra.
    pub fn commutator_rhs(&self, a: usize, b: usize) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        if a == b {
            out.add_term(MonomialMatrix::identity(self.gp.r, self.gp.n), &CycNum::one());
        }
        for (_, t) in &self.terms {
            let num = &t.alpha[a] * &t.root[b];
            if num.is_zero() {
                continue;
            }
            let mut pairing = CycNum::zero();
            for (x, v) in t.alpha.iter().zip(&t.root) {
                pairing += &(x * v);
            }
            let coef = num.checked_div(&pairing).expect("⟨α_H, v_H⟩ ≠ 0");
            out = out.add(&t.gamma.scale(&coef));
        }
        out
    }
}

/// `T_y f` for the `G(r,1,n)` arrangement.
pub fn dunkl_apply(y: usize, f: &Poly, k: &KTable) -> Result<Poly> {
    DunklSystem::new(k)?.apply(y, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub gp: GroupParams,
    pub degree: u32,
    pub monomials: usize,
    /// `T_y T_{y'} = T_{y'} T_y` for all coordinate pairs.
    pub commuting: bool,
    /// `[T_y, x] = ⟨y,x⟩ + Σ_H (…) γ_H` as operators.
    pub commutator_relation: bool,
    /// `w T_y w^{-1} = T_{w(y)}` for the generators `w`.
    pub equivariance: bool,
    pub failures: Vec<String>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.commuting && self.commutator_relation && self.equivariance
    }
}

/// Checks the defining relations on every monomial of degree at most `degree`.
pub fn verify_commutation(k: &KTable, degree: u32) -> Result<CommutationReport> {
    if degree > DEFAULT_MAX_DEGREE {
        return Err(Error::CapExceeded { requested: degree as u128, cap: DEFAULT_MAX_DEGREE as u128 });
    }
    let sys = DunklSystem::new(k)?;
    let gp = k.gp;
    let n = gp.n;
    let basis: Vec<Poly> =
        Poly::monomials_up_to(n, degree).into_iter().map(|e| Poly::monomial(CycNum::one(), e)).collect();
    let mut failures = Vec::new();

    let images: Vec<Vec<Poly>> =
        basis.iter().map(|f| (0..n).map(|a| sys.apply(a, f)).collect::<Result<_>>()).collect::<Result<_>>()?;

    let mut commuting = true;
    for (f, img) in basis.iter().zip(&images) {
        for a in 0..n {
            for b in a + 1..n {
                if sys.apply(a, &img[b])? != sys.apply(b, &img[a])? {
                    commuting = false;
                    failures.push(format!("[T_{}, T_{}] ≠ 0 on {f}", a + 1, b + 1));
                }
            }
        }
    }

    let mut commutator_relation = true;
    for a in 0..n {
        for b in 0..n {
            let rhs = sys.commutator_rhs(a, b);
            for (f, img) in basis.iter().zip(&images) {
                let mut lhs = sys.apply(a, &f.mul_var(b))?;
                lhs.sub_assign(&img[a].mul_var(b));
                if lhs != rhs.apply(f) {
                    commutator_relation = false;
                    failures.push(format!("[T_{}, x_{}] relation fails on {f}", a + 1, b + 1));
                }
            }
        }
    }

    let mut equivariance = true;
    for w in generators(gp, Which::Full)? {
        let winv = w.inverse();
        for f in &basis {
            let moved = f.act(&winv);
            for a in 0..n {
                let lhs = sys.apply(a, &moved)?.act(&w);
                // w·e_a = ζ^{exps[a]} e_{perm[a]}
                let rhs = sys.apply(w.perm()[a], f)?.scale(&zeta(gp.r, w.exps()[a] as i64));
                if lhs != rhs {
                    equivariance = false;
                    failures.push(format!("w T_{} w^-1 ≠ T_(w y) on {f}", a + 1));
                }
            }
        }
    }

    Ok(CommutationReport { gp, degree, monomials: basis.len(), commuting, commutator_relation, equivariance, failures })
}

/// A coefficient of `γ_H` that `τ` does not fix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaWitness {
    pub hyperplane: HyperplaneKind,
    pub element: MonomialMatrix,
    pub coefficient: CycNum,
    /// `ξ^{|g|}`, different from 1.
    pub tau_factor: CycNum,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm34Report {
    pub gp: GroupParams,
    /// Every `γ_H` is `τ`-invariant.
    pub gamma_invariant: bool,
    /// The right side of every commutator relation is `τ`-invariant.
    pub commutator_invariant: bool,
    /// That right side is the same for the `G(r,p,n)` arrangement.
    pub commutator_restricts: bool,
    pub pbw_degree: u32,
    pub pbw_monomials: usize,
    pub pbw_fixed: usize,
    /// The `τ`-fixed PBW monomials are exactly those with `g ∈ G(r,p,n)`.
    pub pbw_filter: bool,
    pub witness: Option<GammaWitness>,
}

impl Thm34Report {
    pub fn passed(&self) -> bool {
        self.gamma_invariant && self.commutator_invariant && self.commutator_restricts && self.pbw_filter
    }
}

/// Checks that the generators and relations of the Cherednik algebra of
/// `G(r,p,n)` sit inside the `τ`-fixed part of that of `G(r,1,n)`, and that
/// `τ` fixes exactly the PBW monomials with group part in `G(r,p,n)`.
pub fn verify_thm_3_4(k: &KTable, pbw_degree: u32) -> Result<Thm34Report> {
    let gp = k.gp;
    let xi = zeta(gp.p, 1);
    let full = DunklSystem::new(k)?;
    let sub = DunklSystem::restricted(k)?;

    let mut witness = None;
    for h in full.hyperplanes() {
        let gamma = full.gamma(h.kind).expect("listed hyperplane");
        for (g, c) in gamma.terms() {
            let factor = xi.powu(g.exp_sum());
            if !factor.is_one() && witness.is_none() {
                witness = Some(GammaWitness {
                    hyperplane: h.kind,
                    element: g.clone(),
                    coefficient: c.clone(),
                    tau_factor: factor,
                });
            }
        }
    }
    let gamma_invariant = witness.is_none();

    let mut commutator_invariant = true;
    let mut commutator_restricts = true;
    for a in 0..gp.n {
        for b in 0..gp.n {
            let rhs = full.commutator_rhs(a, b);
            commutator_invariant &= rhs.tau(&xi) == rhs;
            commutator_restricts &= sub.commutator_rhs(a, b) == rhs;
        }
    }

    let group = enumerate(gp, Which::Full, DEFAULT_GROUP_CAP)?;
    let subgroup: std::collections::BTreeSet<MonomialMatrix> =
        closure(&generators(gp, Which::Subgroup)?, DEFAULT_GROUP_CAP as usize)?.into_iter().collect();
    let xs = Poly::monomials_up_to(gp.n, pbw_degree);
    let mut pbw_monomials = 0;
    let mut pbw_fixed = 0;
    let mut pbw_filter = true;
    for alpha in &xs {
        for g in &group {
            for beta in &xs {
                let m = PBWMonomial::new(alpha.clone(), g.clone(), beta.clone(), gp.p);
                pbw_monomials += 1;
                let fixed = xi.powu(m.tau_weight as u64).is_one();
                if fixed {
                    pbw_fixed += 1;
                }
                pbw_filter &= fixed == subgroup.contains(&m.g);
            }
        }
    }
    pbw_filter &= pbw_fixed * gp.p as usize == pbw_monomials;

    Ok(Thm34Report {
        gp,
        gamma_invariant,
        commutator_invariant,
        commutator_restricts,
        pbw_degree,
        pbw_monomials,
        pbw_fixed,
        pbw_filter,
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub gp: GroupParams,
    pub degree: u32,
    pub monomials: usize,
    pub agree: bool,
    /// Coordinate `a_H` of the full arrangement has no support outside `G(r,p,n)`.
    pub coordinate_support_ok: bool,
    pub first_difference: Option<String>,
}

/// Compares the Dunkl operators of the `G(r,1,n)` and `G(r,p,n)`
/// arrangements on all monomials of degree at most `degree`.
pub fn dunkl_agreement(k: &KTable, degree: u32) -> Result<AgreementReport> {
    let gp = k.gp;
    let full = DunklSystem::new(k)?;
    let sub = DunklSystem::restricted(k)?;
    let coordinate_support_ok = full
        .hyperplanes()
        .filter(|h| h.kind.is_coordinate())
        .all(|h| full.a_h(h.kind).expect("listed").terms().all(|(g, _)| g.in_subgroup(gp.p)));
    let basis = Poly::monomials_up_to(gp.n, degree);
    let mut first_difference = None;
    for e in &basis {
        let f = Poly::monomial(CycNum::one(), e.clone());
        for y in 0..gp.n {
            if first_difference.is_none() && full.apply(y, &f)? != sub.apply(y, &f)? {
                first_difference = Some(format!("T_{} on {f}", y + 1));
            }
        }
    }
    Ok(AgreementReport {
        gp,
        degree,
        monomials: basis.len(),
        agree: first_difference.is_none(),
        coordinate_support_ok,
        first_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::params::{k_from_c, CFunction};
    use crate::cycfield::frac;

    fn gp(r: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, n).unwrap()
    }

    #[test]
    fn constants_are_killed() {
        let k = KTable::generic(gp(3, 1, 2));
        for y in 0..2 {
            assert!(dunkl_apply(y, &Poly::one(2), &k).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_parameters_give_derivatives() {
        let k = KTable::zero(gp(4, 1, 2));
        for e in Poly::monomials_up_to(2, 4) {
            let f = Poly::monomial(frac(3, 2), e);
            for y in 0..2 {
                assert_eq!(dunkl_apply(y, &f, &k).unwrap(), f.derivative(y));
            }
        }
    }

    #[test]
    fn rank_one_closed_form() {
        // T(x^m) = (m + r k_{m mod r}) x^{m-1}
        let g = gp(5, 1, 1);
        let k = KTable::generic(g);
        for m in 0..12u32 {
            let f = Poly::monomial(CycNum::one(), vec![m]);
            let got = dunkl_apply(0, &f, &k).unwrap();
            let c = CycNum::from_int(m as i64) + CycNum::from_int(5) * &k.coordinate[(m % 5) as usize];
            let want = if m == 0 { Poly::zero(1) } else { Poly::monomial(c, vec![m - 1]) };
            assert_eq!(got, want, "m = {m}");
        }
    }

    #[test]
    fn b2_relations() {
        let rep = verify_commutation(&KTable::generic(gp(2, 1, 2)), 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn g332_relations() {
        let rep = verify_commutation(&KTable::tau_compatible_default(gp(3, 3, 2)), 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn zero_parameters_give_weyl_relations() {
        let k = KTable::zero(gp(3, 1, 2));
        let sys = DunklSystem::new(&k).unwrap();
        assert_eq!(sys.commutator_rhs(0, 1), GroupAlgElt::zero());
        assert_eq!(sys.commutator_rhs(1, 1), GroupAlgElt::basis(MonomialMatrix::identity(3, 2)));
        assert!(verify_commutation(&k, 3).unwrap().passed());
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(verify_commutation(&KTable::zero(gp(2, 1, 2)), 7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn difference_only_c_is_invariant() {
        let g = gp(2, 2, 2);
        let c = CFunction::new(g, vec![CycNum::zero()], frac(1, 3)).unwrap();
        let rep = verify_thm_3_4(&k_from_c(&c).unwrap(), 1).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn excluded_coordinate_value_gives_witness() {
        let g = gp(2, 2, 2);
        let c = CFunction::new(g, vec![frac(1, 2)], frac(1, 3)).unwrap();
        let rep = verify_thm_3_4(&k_from_c(&c).unwrap(), 0).unwrap();
        assert!(!rep.gamma_invariant && !rep.commutator_invariant && !rep.commutator_restricts);
        let w = rep.witness.unwrap();
        assert!(w.hyperplane.is_coordinate());
        assert_eq!(w.tau_factor, CycNum::from_int(-1));
        assert!(rep.pbw_filter);
    }

    #[test]
    fn agreement_422() {
        let k = KTable::tau_compatible_default(gp(4, 2, 2));
        let rep = dunkl_agreement(&k, 3).unwrap();
        assert!(rep.agree && rep.coordinate_support_ok, "{rep:?}");
        let bad = dunkl_agreement(&KTable::generic(gp(4, 2, 2)), 2).unwrap();
        assert!(!bad.agree && !bad.coordinate_support_ok);
    }

    #[test]
    fn agreement_222_has_no_coordinate_terms() {
        let k = KTable::tau_compatible_default(gp(2, 2, 2));
        let sys = DunklSystem::new(&k).unwrap();
        for h in sys.hyperplanes().filter(|h| h.kind.is_coordinate()) {
            assert!(sys.a_h(h.kind).unwrap().is_zero());
        }
        assert_eq!(DunklSystem::restricted(&k).unwrap().hyperplanes().filter(|h| h.kind.is_coordinate()).count(), 0);
        assert!(dunkl_agreement(&k, 3).unwrap().agree);
    }
}
