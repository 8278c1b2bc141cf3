//! Group-level characters: graded restriction of `C[V] ⊗ V(λ)` to
//! `G(r,p,n)` and fake degrees of the simple `G(r,1,n)`-modules.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::clifford::decompose_restriction;
use crate::cycfield::{CycMatrix, CycNum, UniPoly};
use crate::error::{Error, Result};
use crate::refgroup::{generators, GroupParams, MonomialMatrix, Which, DEFAULT_GROUP_CAP};
use crate::seminormal::{build_all, build_rep, HeckeParams, Rep};
use crate::tableaux::MultiPartition;

use super::poly::Poly;

/// A representation of `G(r,1,n)` listed element by element.
#[derive(Clone, Debug)]
pub struct GroupRep {
    pub elements: Vec<MonomialMatrix>,
    pub matrices: Vec<CycMatrix>,
}

impl GroupRep {
    pub fn character(&self) -> Vec<CycNum> {
        self.matrices.iter().map(CycMatrix::trace).collect()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Extends `S_j ↦ T_j` from the generators to the whole group, checking
/// `ρ(x)ρ(S_j) = ρ(xS_j)` for every element `x` and generator `S_j`.
/// The module must be taken at the group specialization.
pub fn group_representation(rep: &Rep) -> Result<GroupRep> {
    let gp = rep.params.gp;
    if rep.params != HeckeParams::group_specialization(gp)? {
        return Err(Error::BadParams("group characters need the group specialization".into()));
    }
    if gp.full_order() > DEFAULT_GROUP_CAP {
        return Err(Error::CapExceeded { requested: gp.full_order(), cap: DEFAULT_GROUP_CAP });
    }
    let gens = generators(gp, Which::Full)?;
    let id = MonomialMatrix::identity(gp.r, gp.n);
    let mut index = BTreeMap::from([(id.clone(), 0usize)]);
    let mut elements = vec![id];
    let mut matrices = vec![CycMatrix::identity(rep.dim())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (g, m) in gens.iter().zip(&rep.gens) {
            let y = elements[x].mul(g);
            let my = &matrices[x] * m;
            match index.get(&y) {
                Some(&j) => {
                    if matrices[j] != my {
                        return Err(Error::InconsistentData(format!("generator images violate a relation at {y:?}")));
                    }
                }
                None => {
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    matrices.push(my);
                }
            }
        }
    }
    if elements.len() as u128 != gp.full_order() {
        return Err(Error::InconsistentData(format!("closure has {} elements", elements.len())));
    }
    Ok(GroupRep { elements, matrices })
}

/// Trace of `w` on the degree-`d` polynomials.
pub fn polynomial_trace(w: &MonomialMatrix, d: u32) -> CycNum {
    let mut acc = CycNum::zero();
    for e in Poly::monomials_of_degree(w.rank(), d) {
        let (phase, img) = Poly::act_monomial(w, &e);
        if img == e {
            acc += &phase;
        }
    }
    acc
}

/// `⟨χ, ψ⟩ = (1/|G|) Σ_g χ(g) conj(ψ(g))` over the listed elements.
fn inner(chi: &[CycNum], psi: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero();
    for (a, b) in chi.iter().zip(psi) {
        acc += &(a * b.conj());
    }
    acc * CycNum::from_int(chi.len() as i64).inv().expect("nonempty group")
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub degree: u32,
    /// `dim C[V]_d ⊗ V(λ)`.
    pub dim: usize,
    pub summand_dims: Vec<usize>,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedRestrictionReport {
    pub shape: MultiPartition,
    pub gp: GroupParams,
    pub e_lambda: usize,
    pub degrees: Vec<DegreeVerdict>,
    /// `⟨χ_l, χ_l⟩` over `G(r,p,n)` for each summand (1 when simple).
    pub summand_norms: Vec<CycNum>,
    /// Characters of `V(λ)` restricted to `G(r,p,n)`, in the order of
    /// `restricted_elements`.
    #[serde(skip)]
    pub restricted_character: Vec<CycNum>,
    #[serde(skip)]
    pub restricted_elements: Vec<MonomialMatrix>,
}

impl GradedRestrictionReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.matched) && self.summand_norms.iter().all(CycNum::is_one)
    }
}

/// Compares, degree by degree, the `G(r,p,n)`-character of `C[V]_d ⊗ V(λ)`
/// with the sum of the characters of `C[V]_d ⊗ V(λ̄, l)` cut out by the
/// Clifford projectors, all at the group specialization.
pub fn graded_restriction(shape: &MultiPartition, gp: GroupParams, max_degree: u32) -> Result<GradedRestrictionReport> {
    if max_degree > super::DEFAULT_MAX_DEGREE {
        return Err(Error::CapExceeded { requested: max_degree as u128, cap: super::DEFAULT_MAX_DEGREE as u128 });
    }
    let params = HeckeParams::group_specialization(gp)?;
    let rep = build_rep(shape, &params)?;
    let group = group_representation(&rep)?;
    let dec = decompose_restriction(&rep)?;
    let projectors: Vec<&CycMatrix> =
        dec.summands.iter().map(|s| s.projector.as_ref().expect("projectors kept")).collect();

    let mut elements = Vec::new();
    let mut chi = Vec::new();
    let mut parts: Vec<Vec<CycNum>> = vec![Vec::new(); projectors.len()];
    for (g, m) in group.elements.iter().zip(&group.matrices) {
        if !g.in_subgroup(gp.p) {
            continue;
        }
        elements.push(g.clone());
        chi.push(m.trace());
        for (l, p) in projectors.iter().enumerate() {
            parts[l].push((*p * m).trace());
        }
    }

    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        let traces: Vec<CycNum> = elements.iter().map(|g| polynomial_trace(g, d)).collect();
        for (idx, g) in elements.iter().enumerate() {
            let lhs = &traces[idx] * &chi[idx];
            let mut rhs = CycNum::zero();
            for part in &parts {
                rhs += &(&traces[idx] * &part[idx]);
            }
            if lhs != rhs {
                return Err(Error::CharacterMismatch {
                    degree: d as usize,
                    detail: format!("{shape} at {g:?}: {lhs} vs {rhs}"),
                });
            }
        }
        let poly_dim = Poly::monomials_of_degree(gp.n, d).len();
        degrees.push(DegreeVerdict {
            degree: d,
            dim: poly_dim * rep.dim(),
            summand_dims: dec.summands.iter().map(|s| poly_dim * s.dim).collect(),
            matched: true,
        });
    }
    let summand_norms = parts.iter().map(|c| inner(c, c)).collect();
    Ok(GradedRestrictionReport {
        shape: shape.clone(),
        gp,
        e_lambda: dec.e_lambda,
        degrees,
        summand_norms,
        restricted_character: chi,
        restricted_elements: elements,
    })
}

/// The degrees `r, 2r, …, nr` of the basic invariants of `G(r,1,n)`.
pub fn degrees(gp: GroupParams) -> Vec<usize> {
    (1..=gp.n).map(|i| i * gp.r as usize).collect()
}

/// `N = Σ_i (d_i - 1)`, the top degree of the coinvariant algebra.
fn top_degree(gp: GroupParams) -> usize {
    degrees(gp).iter().map(|d| d - 1).sum()
}

/// Power series of `1/det(1 - t w)` below degree `limit`.
fn inverse_char_poly(w: &MonomialMatrix, limit: usize) -> UniPoly {
    let mut acc = UniPoly::constant(CycNum::one());
    for (cycle, e) in w.cycles() {
        let c = crate::cycfield::zeta(w.r(), e as i64);
        acc = acc.mul_trunc(&UniPoly::geometric_series(&c, cycle.len(), limit), limit);
    }
    acc
}

/// `(1/|W|) Σ_w χ(w^{-1})/det(1 - t w)` below degree `limit`.
fn molien(elements: &[MonomialMatrix], chi_inv: &[CycNum], limit: usize) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (w, c) in elements.iter().zip(chi_inv) {
        if !c.is_zero() {
            acc = acc.add(&inverse_char_poly(w, limit).scale(c));
        }
    }
    acc.scale(&CycNum::from_int(elements.len() as i64).inv().expect("nonempty group"))
}

/// Checks `(1/|W|) Σ_w 1/det(1 - t w) = Π_i 1/(1 - t^{d_i})` through the
/// degree where the coinvariant algebra ends, plus a margin.
pub fn verify_degrees(gp: GroupParams) -> Result<bool> {
    let elements = crate::refgroup::enumerate(gp, Which::Full, DEFAULT_GROUP_CAP)?;
    let limit = top_degree(gp) + gp.r as usize + 2;
    let lhs = molien(&elements, &vec![CycNum::one(); elements.len()], limit);
    let mut rhs = UniPoly::constant(CycNum::one());
    for d in degrees(gp) {
        rhs = rhs.mul_trunc(&UniPoly::geometric_series(&CycNum::one(), d, limit), limit);
    }
    Ok(lhs == rhs)
}

/// `F_σ(t) = Π_i (1 - t^{d_i}) · (1/|W|) Σ_w χ_σ(w^{-1})/det(1 - t w)`, the
/// graded multiplicity of `σ` in the coinvariant algebra of `W` acting on
/// `Sym(V)`. `chi` lists the character on `elements`.
pub fn fake_degree_of_character(gp: GroupParams, elements: &[MonomialMatrix], chi: &[CycNum]) -> Result<UniPoly> {
    let top = top_degree(gp);
    let limit = top + gp.r as usize + 2;
    let position: BTreeMap<&MonomialMatrix, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let chi_inv: Vec<CycNum> = elements.iter().map(|w| chi[position[&w.inverse()]].clone()).collect();
    let mut f = molien(elements, &chi_inv, limit);
    for d in degrees(gp) {
        let factor = UniPoly::constant(CycNum::one()).sub(&UniPoly::monomial(CycNum::one(), d));
        f = f.mul_trunc(&factor, limit);
    }
    if f.degree().is_some_and(|d| d > top) {
        return Err(Error::InconsistentData(format!("fake degree {f} exceeds the top degree {top}")));
    }
    Ok(f)
}

/// Fake degree of the simple `G(r,1,n)`-module `V(λ)`.
pub fn fake_degree(shape: &MultiPartition, gp: GroupParams) -> Result<UniPoly> {
    let params = HeckeParams::group_specialization(gp)?;
    let group = group_representation(&build_rep(shape, &params)?)?;
    fake_degree_of_character(gp, &group.elements, &group.character())
}

#[derive(Clone, Debug, Serialize)]
pub struct FakeShift {
    pub shape: MultiPartition,
    /// The shape whose module has the character `χ ⊗ χ_λ`.
    pub twisted_shape: MultiPartition,
    pub fake_degree: String,
    pub twisted_fake_degree: String,
    /// `F_{τ(V(λ))} = t^m F_{V(λ)}`.
    pub m: i64,
}

/// Fake degrees of all simple `G(r,1,n)`-modules and of their twists by the
/// linear character `χ(S_1) = ξ^{-1}`, `χ(S_i) = 1` (`i >= 2`).
#[derive(Clone, Debug, Serialize)]
pub struct FakeDegreeTable {
    pub gp: GroupParams,
    pub degrees: Vec<usize>,
    pub degrees_verified: bool,
    /// `Σ_σ dim σ · F_σ(t) = Π_i [d_i]_t`.
    pub poincare_verified: bool,
    pub shifts: Vec<FakeShift>,
}

impl FakeDegreeTable {
    pub fn passed(&self) -> bool {
        self.degrees_verified && self.poincare_verified
    }
}

pub fn fake_degree_table(gp: GroupParams) -> Result<FakeDegreeTable> {
    let params = HeckeParams::group_specialization(gp)?;
    let reps = build_all(&params)?;
    let mut chars = Vec::with_capacity(reps.len());
    let mut elements = Vec::new();
    for rep in &reps {
        let group = group_representation(rep)?;
        chars.push(group.character());
        elements = group.elements;
    }
    let fakes: Vec<UniPoly> =
        chars.iter().map(|c| fake_degree_of_character(gp, &elements, c)).collect::<Result<_>>()?;

    let mut total = UniPoly::zero();
    for (rep, f) in reps.iter().zip(&fakes) {
        total = total.add(&f.scale(&CycNum::from_int(rep.dim() as i64)));
    }
    let poincare =
        degrees(gp).into_iter().fold(UniPoly::constant(CycNum::one()), |acc, d| acc.mul(&UniPoly::t_integer(d)));

    // χ(w) = ξ^{-|exps(w)|}
    let xi_inv = params.xi.inv()?;
    let mut shifts = Vec::with_capacity(reps.len());
    for (idx, rep) in reps.iter().enumerate() {
        let twisted: Vec<CycNum> =
            elements.iter().zip(&chars[idx]).map(|(w, c)| xi_inv.powu(w.exp_sum()) * c).collect();
        let f_tau = fake_degree_of_character(gp, &elements, &twisted)?;
        let m = f_tau
            .monomial_shift_of(&fakes[idx])
            .ok_or_else(|| Error::NotAMonomialShift(format!("{}: {} vs {}", rep.shape, fakes[idx], f_tau)))?;
        let target = chars
            .iter()
            .position(|c| *c == twisted)
            .ok_or_else(|| Error::InconsistentData(format!("twist of {} is not a listed simple module", rep.shape)))?;
        if fakes[target] != f_tau {
            return Err(Error::InconsistentData(format!(
                "fake degree of {} disagrees with its twist",
                reps[target].shape
            )));
        }
        shifts.push(FakeShift {
            shape: rep.shape.clone(),
            twisted_shape: reps[target].shape.clone(),
            fake_degree: fakes[idx].to_string(),
            twisted_fake_degree: f_tau.to_string(),
            m,
        });
    }
    Ok(FakeDegreeTable {
        gp,
        degrees: degrees(gp),
        degrees_verified: verify_degrees(gp)?,
        poincare_verified: total == poincare,
        shifts,
    })
}

/// `F_{τ(V(λ))}(t) = t^m F_{V(λ)}(t)`; returns `m`.
pub fn verify_fake_shift(shape: &MultiPartition, gp: GroupParams) -> Result<i64> {
    let params = HeckeParams::group_specialization(gp)?;
    let group = group_representation(&build_rep(shape, &params)?)?;
    let chi = group.character();
    let f = fake_degree_of_character(gp, &group.elements, &chi)?;
    let xi_inv = params.xi.inv()?;
    let twisted: Vec<CycNum> = group.elements.iter().zip(&chi).map(|(w, c)| xi_inv.powu(w.exp_sum()) * c).collect();
    let f_tau = fake_degree_of_character(gp, &group.elements, &twisted)?;
    f_tau.monomial_shift_of(&f).ok_or_else(|| Error::NotAMonomialShift(format!("{shape}: {f} vs {f_tau}")))
}

/// One row of the `B_n → D_n` restriction table.
#[derive(Clone, Debug, Serialize)]
pub struct BnDnRow {
    pub bipartition: MultiPartition,
    /// `(λ_2, λ_1)`.
    pub partner: MultiPartition,
    pub dim: usize,
    /// `"split"` when `λ_1 = λ_2`, `"merge"` otherwise.
    pub verdict: &'static str,
    pub summand_dims: Vec<usize>,
    /// The restriction has the same character as that of the partner.
    pub partner_agrees: bool,
    pub graded_ok: bool,
}

/// Restrictions from `W(B_n) = G(2,1,n)` to `W(D_n) = G(2,2,n)` for every
/// bipartition, with graded characters checked up to `max_degree`.
pub fn bn_dn_table(n: usize, max_degree: u32) -> Result<Vec<BnDnRow>> {
    let gp = GroupParams::new(2, 2, n)?;
    let shapes = crate::tableaux::multipartitions(2, 2, n)?;
    let reports: Vec<GradedRestrictionReport> =
        shapes.iter().map(|s| graded_restriction(s, gp, max_degree)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(shapes.len());
    for (shape, rep) in shapes.iter().zip(&reports) {
        let partner = shape.shift();
        let other = &reports[shapes.iter().position(|s| *s == partner).expect("shift stays in the list")];
        let split = partner == *shape;
        rows.push(BnDnRow {
            bipartition: shape.clone(),
            partner,
            dim: rep.degrees[0].dim,
            verdict: if split { "split" } else { "merge" },
            summand_dims: rep.degrees[0].summand_dims.clone(),
            partner_agrees: rep.restricted_elements == other.restricted_elements
                && rep.restricted_character == other.restricted_character,
            graded_ok: rep.passed() && rep.e_lambda == if split { 2 } else { 1 },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::multipartitions;

    fn gp(r: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, n).unwrap()
    }

    fn shape(p: usize, comps: Vec<Vec<usize>>) -> MultiPartition {
        MultiPartition::new(p, comps).unwrap()
    }

    #[test]
    fn degrees_match_molien() {
        for (r, n) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
            assert!(verify_degrees(gp(r, 1, n)).unwrap());
        }
    }

    #[test]
    fn b2_trivial_and_determinant() {
        let g = gp(2, 1, 2);
        let params = HeckeParams::group_specialization(g).unwrap();
        let mut found = Vec::new();
        for rep in build_all(&params).unwrap() {
            let group = group_representation(&rep).unwrap();
            let chi = group.character();
            let f = fake_degree_of_character(g, &group.elements, &chi).unwrap();
            if chi.iter().all(CycNum::is_one) {
                assert_eq!(f, UniPoly::constant(CycNum::one()));
                found.push("trivial");
            }
            if chi.iter().zip(&group.elements).all(|(c, w)| *c == w.det()) {
                assert_eq!(f, UniPoly::monomial(CycNum::one(), 4));
                found.push("det");
            }
        }
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn fake_degrees_count_polynomial_multiplicities() {
        // F_σ through degree N agrees with multiplicities read off the
        // monomial traces: Sym^d(V) at w has the trace of C[V]_d at w^{-1}
        let g = gp(3, 1, 2);
        let params = HeckeParams::group_specialization(g).unwrap();
        for rep in build_all(&params).unwrap() {
            let group = group_representation(&rep).unwrap();
            let chi = group.character();
            let f = fake_degree_of_character(g, &group.elements, &chi).unwrap();
            let mut series = Vec::new();
            for d in 0..=6u32 {
                let mut acc = CycNum::zero();
                for (w, c) in group.elements.iter().zip(&chi) {
                    acc += &(polynomial_trace(&w.inverse(), d) * c.conj());
                }
                series.push(acc * CycNum::from_int(group.order() as i64).inv().unwrap());
            }
            let invariants = UniPoly::new(vec![
                CycNum::one(),
                CycNum::zero(),
                CycNum::zero(),
                CycNum::one(),
                CycNum::zero(),
                CycNum::zero(),
                CycNum::from_int(2),
            ]);
            // multiplicities = F_σ · Hilbert series of the invariants
            assert_eq!(UniPoly::new(series), f.mul_trunc(&invariants, 7));
        }
    }

    #[test]
    fn group_rep_rejects_generic_parameters() {
        let g = gp(2, 1, 2);
        let rep = build_rep(&shape(1, vec![vec![1], vec![1]]), &HeckeParams::default_for(g).unwrap()).unwrap();
        assert!(matches!(group_representation(&rep), Err(Error::BadParams(_))));
    }

    #[test]
    fn b2_to_d2_split_and_merge() {
        let g = gp(2, 2, 2);
        let split = graded_restriction(&shape(2, vec![vec![1], vec![1]]), g, 3).unwrap();
        assert!(split.passed());
        assert_eq!(split.e_lambda, 2);
        assert_eq!(split.degrees[1].summand_dims, vec![2, 2]);

        let a = graded_restriction(&shape(2, vec![vec![2], vec![]]), g, 3).unwrap();
        let b = graded_restriction(&shape(2, vec![vec![], vec![2]]), g, 3).unwrap();
        assert!(a.passed() && b.passed());
        assert_eq!(a.e_lambda, 1);
        assert_eq!(a.restricted_elements, b.restricted_elements);
        assert_eq!(a.restricted_character, b.restricted_character);
    }

    #[test]
    fn bn_dn_rows() {
        let rows = bn_dn_table(3, 1).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.partner_agrees && r.graded_ok));
        assert_eq!(rows.iter().filter(|r| r.verdict == "split").count(), 0);
        let rows = bn_dn_table(2, 1).unwrap();
        let split: Vec<_> = rows.iter().filter(|r| r.verdict == "split").collect();
        assert_eq!(split.len(), 1);
        assert_eq!(split[0].summand_dims, vec![1, 1]);
    }

    #[test]
    fn twist_is_inverse_shift() {
        for (r, p, n) in [(2, 2, 2), (3, 3, 2)] {
            let g = gp(r, p, n);
            let table = fake_degree_table(g).unwrap();
            assert!(table.passed());
            for s in &table.shifts {
                assert_eq!(verify_fake_shift(&s.shape, g).unwrap(), s.m);
                assert_eq!(s.twisted_shape, s.shape.shift_by(p as usize - 1));
            }
            assert_eq!(table.shifts.len(), multipartitions(r as usize, p as usize, n).unwrap().len());
        }
    }
}
