//! Seminormal matrices for the simple modules `V(λ)` of the cyclotomic Hecke
//! algebra `H_{r,1,n}(u_1, …, u_r, q)` with quadratic relation
//! `(T_i - 1)(T_i + q) = 0`.
//!
//! `T_1` acts diagonally on the tableau basis by `ξ^a v_b`. For `i >= 2` the
//! action of `T_i` on `v(T)` only involves `v(T)` and `v(T')`, where `T'`
//! exchanges `i-1` and `i`. With `ρ = ρ(T, i-1)` and `ρ' = ρ(T, i)`:
//!
//! ```text
//! T_i v(T) = α v(T) + c(T→T') v(T'),   α = (1-q)ρ' / (ρ'-ρ),
//! c(T→T')·c(T'→T) = (qρ'-ρ)(ρ'-qρ) / (ρ'-ρ)².
//! ```
//!
//! The split of the off-diagonal product between the two directions is fixed
//! by an order on cells that is invariant under the cyclic shift of component
//! indices, so that relabelling `v(T) ↦ v(shift T)` is an exact intertwiner
//! after twisting by `τ`. When the two cells sit at antipodal component
//! indices with equal positions the product is split symmetrically as
//! `((1+q)/2)²`.
//!
//! At `q = 1` the residues of a component collapse, and the limit formulas
//! `α = -1/Δ`, `c·c' = 1 - 1/Δ²` (`Δ` the content difference) are used for
//! cells in one component, with `α = 0`, `c·c' = 1` across components.

use std::cmp::Ordering;

use serde::Serialize;

use crate::cycfield::{frac, zeta, CycMatrix, CycNum, UniPoly};
use crate::error::{Error, Result};
use crate::refgroup::GroupParams;
use crate::tableaux::{index_map, multipartitions, standard_tableaux, Cell, MultiPartition, StdTableau};

/// Parameters `q`, `v_0, …, v_{d-1}` and `ξ` of `H_{r,1,n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeckeParams {
    pub gp: GroupParams,
    pub q: CycNum,
    pub v: Vec<CycNum>,
    pub xi: CycNum,
    pub u: Vec<CycNum>,
}

/// The first `k` odd primes.
fn odd_primes(k: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut c = 3i64;
    while out.len() < k {
        if (2..c).take_while(|f| f * f <= c).all(|f| c % f != 0) {
            out.push(c);
        }
        c += 2;
    }
    out
}

fn is_primitive_root(x: &CycNum, p: u32) -> bool {
    x.powu(p as u64).is_one() && (1..p).filter(|k| p.is_multiple_of(*k)).all(|k| !x.powu(k as u64).is_one())
}

impl HeckeParams {
    pub fn new(gp: GroupParams, q: CycNum, v: Vec<CycNum>, xi: CycNum) -> Result<Self> {
        let gp = GroupParams::new(gp.r, gp.p, gp.n)?;
        if q.is_zero() {
            return Err(Error::BadParams("q must be nonzero".into()));
        }
        if v.len() != gp.d() as usize {
            return Err(Error::BadParams(format!("expected d = {} values v_l, got {}", gp.d(), v.len())));
        }
        if !is_primitive_root(&xi, gp.p) {
            return Err(Error::BadParams(format!("ξ = {xi} is not a primitive {}-th root of unity", gp.p)));
        }
        if v.iter().any(CycNum::is_zero) {
            return Err(Error::BadParams("v_l must be nonzero".into()));
        }
        let vp: Vec<CycNum> = v.iter().map(|x| x.powu(gp.p as u64)).collect();
        for a in 0..vp.len() {
            for b in a + 1..vp.len() {
                if vp[a] == vp[b] {
                    return Err(Error::SeparationFailure(format!("v_{a}^p = v_{b}^p")));
                }
            }
        }
        let mut u = Vec::with_capacity(gp.r as usize);
        for vl in &v {
            for k in 0..gp.p {
                u.push(xi.powu(k as u64) * vl);
            }
        }
        Ok(HeckeParams { gp, q, v, xi, u })
    }

    /// `q = 2`, `v_l` the `(l+1)`-th odd prime, `ξ = ζ_p`.
    pub fn default_for(gp: GroupParams) -> Result<Self> {
        let v = odd_primes(gp.d() as usize).into_iter().map(CycNum::from_int).collect();
        Self::new(gp, CycNum::from_int(2), v, zeta(gp.p, 1))
    }

    /// Parameters at which `H_{r,1,n}` is the group algebra of `G(r,1,n)`:
    /// `q = 1`, `v_l = ζ_r^l`, `ξ = ζ_r^d`, so that `{u_j} = {ζ_r^k}`.
    pub fn group_specialization(gp: GroupParams) -> Result<Self> {
        let v = (0..gp.d()).map(|l| zeta(gp.r, l as i64)).collect();
        Self::new(gp, CycNum::one(), v, zeta(gp.r, gp.d() as i64))
    }

    /// True at `q = 1`, where the degenerate seminormal formulas apply.
    pub fn is_degenerate(&self) -> bool {
        self.q.is_one()
    }

    /// `ρ(T, k) = ξ^{a(T,k)} v_{b(T,k)} q^{c(T,k)}`.
    pub fn residue(&self, t: &StdTableau, k: usize) -> CycNum {
        let (a, b, c) = t.cell_data(k);
        self.xi.powu(a as u64) * &self.v[b] * self.q.pow(c).expect("q is nonzero")
    }

    /// `T_1`-eigenvalue attached to a component (flat index).
    pub fn component_parameter(&self, comp: usize) -> &CycNum {
        &self.u[comp]
    }

    /// Checks `Π_j (X - u_j) = Π_l (X^p - v_l^p)` coefficient-wise.
    pub fn verify_parameter_identity(&self) -> bool {
        let one = UniPoly::constant(CycNum::one());
        let lhs = self.u.iter().fold(one.clone(), |acc, u| acc.mul(&UniPoly::new(vec![-u, CycNum::one()])));
        let p = self.gp.p as usize;
        let rhs = self.v.iter().fold(one, |acc, v| {
            acc.mul(&UniPoly::monomial(CycNum::one(), p).sub(&UniPoly::constant(v.powu(p as u64))))
        });
        lhs == rhs
    }
}

/// Order on cells that is invariant under the component shift; `Equal` only
/// for distinct cells at antipodal component indices with equal positions.
fn cell_order(x: Cell, y: Cell, p: usize) -> Ordering {
    let pos = (x.row, x.col).cmp(&(y.row, y.col));
    if x.comp == y.comp {
        return pos;
    }
    let (jx, jy) = (x.comp / p, y.comp / p);
    if jx != jy {
        return jx.cmp(&jy);
    }
    let delta = (y.comp % p + p - x.comp % p) % p;
    match (2 * delta).cmp(&p) {
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => pos,
    }
}

/// A simple module given by the images of `T_1, …, T_n` on the tableau basis.
#[derive(Clone, Debug, Serialize)]
pub struct Rep {
    pub params: HeckeParams,
    pub shape: MultiPartition,
    pub basis: Vec<StdTableau>,
    pub gens: Vec<CycMatrix>,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    /// Image of `T_i` (1-based).
    pub fn t(&self, i: usize) -> &CycMatrix {
        &self.gens[i - 1]
    }

    /// `T_1^{-1}` as the polynomial in `T_1` given by the cyclotomic relation.
    pub fn t1_inverse(&self) -> Result<CycMatrix> {
        poly_inverse(self.t(1), &self.params.u)
    }

    /// `T_i^{-1} = (T_i + q - 1)/q` for `i >= 2`.
    pub fn ti_inverse(&self, i: usize) -> Result<CycMatrix> {
        if i == 1 {
            return self.t1_inverse();
        }
        let q = &self.params.q;
        let shifted = self.t(i) + &CycMatrix::identity(self.dim()).scale(&(q - &CycNum::one()));
        Ok(shifted.scale(&q.inv()?))
    }

    /// Image of a word; letter `±i` stands for `T_i^{±1}`.
    pub fn eval_word(&self, word: &[i32]) -> Result<CycMatrix> {
        let mut acc = CycMatrix::identity(self.dim());
        for &l in word {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i > self.n() {
                return Err(Error::BadParams(format!("letter {l} out of range")));
            }
            let m = if l > 0 { self.t(i).clone() } else { self.ti_inverse(i)? };
            acc = &acc * &m;
        }
        Ok(acc)
    }

    /// Trace of a word.
    pub fn character(&self, word: &[i32]) -> Result<CycNum> {
        Ok(self.eval_word(word)?.trace())
    }

    /// The Jucys–Murphy element `q^{1-k} T_k ⋯ T_2 T_1 T_2 ⋯ T_k`.
    pub fn jucys_murphy(&self, k: usize) -> CycMatrix {
        let mut x = self.t(1).clone();
        for i in 2..=k {
            x = &(self.t(i) * &x) * self.t(i);
        }
        let scale = self.params.q.pow(1 - k as i64).expect("q is nonzero");
        x.scale(&scale)
    }

    /// Checks that every Jucys–Murphy element is diagonal with the designed
    /// residues.
    pub fn verify_residues(&self) -> bool {
        if self.params.is_degenerate() {
            return true;
        }
        (1..=self.n()).all(|k| {
            let expected: Vec<CycNum> = self.basis.iter().map(|t| self.params.residue(t, k)).collect();
            self.jucys_murphy(k) == CycMatrix::diagonal(&expected)
        })
    }
}

/// Inverse of `m` from `Π_j (m - u_j) = 0`.
pub fn poly_inverse(m: &CycMatrix, u: &[CycNum]) -> Result<CycMatrix> {
    // elementary symmetric functions e_0..e_r of the u_j
    let mut e = vec![CycNum::one()];
    for x in u {
        let mut next = e.clone();
        next.push(CycNum::zero());
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_default() + &(x * &e[k - 1]);
        }
        e = next;
    }
    let r = u.len();
    let er = &e[r];
    if er.is_zero() {
        return Err(Error::NonInvertible("some u_j vanishes".into()));
    }
    let dim = m.rows();
    let mut acc = CycMatrix::zeros(dim, dim);
    let mut power = CycMatrix::identity(dim);
    // Σ_k (-1)^k e_k m^{r-1-k}, built by ascending powers of m
    for k in (0..r).rev() {
        let sign = if k % 2 == 0 { CycNum::one() } else { CycNum::from_int(-1) };
        acc = &acc + &power.scale(&(sign * &e[k]));
        power = &power * m;
    }
    let lead = if r % 2 == 1 { er.inv()? } else { -er.inv()? };
    Ok(acc.scale(&lead))
}

/// Builds `V(λ)` on the standard-tableau basis.
pub fn build_rep(shape: &MultiPartition, params: &HeckeParams) -> Result<Rep> {
    let gp = params.gp;
    if shape.p() != gp.p as usize || shape.r() != gp.r as usize || shape.n() != gp.n {
        return Err(Error::BadParams(format!("shape {shape} does not match (r,p,n) = ({}, {}, {})", gp.r, gp.p, gp.n)));
    }
    let basis = standard_tableaux(shape);
    let index = index_map(&basis);
    let dim = basis.len();
    let n = gp.n;

    let t1_diag: Vec<CycNum> = basis
        .iter()
        .map(|t| {
            let c = t.cell(1);
            assert_eq!(c.content(), 0, "entry 1 sits in a corner");
            params.component_parameter(c.comp).clone()
        })
        .collect();
    let mut gens = vec![CycMatrix::diagonal(&t1_diag)];

    let q = &params.q;
    let one = CycNum::one();
    for i in 2..=n {
        let mut m = CycMatrix::zeros(dim, dim);
        for (col, t) in basis.iter().enumerate() {
            let (x, y) = (t.cell(i - 1), t.cell(i));
            let (alpha, product) = if params.is_degenerate() {
                if x.comp == y.comp {
                    let delta = y.content() - x.content();
                    let a = frac(-1, delta);
                    (a.clone(), &one - &(&a * &a))
                } else {
                    if params.u[x.comp] == params.u[y.comp] {
                        return Err(Error::SeparationFailure(format!("u_{} = u_{}", x.comp + 1, y.comp + 1)));
                    }
                    (CycNum::zero(), one.clone())
                }
            } else {
                let rho = params.residue(t, i - 1);
                let rho2 = params.residue(t, i);
                let diff = &rho2 - &rho;
                if diff.is_zero() {
                    return Err(Error::SeparationFailure(format!(
                        "equal residues for entries {} and {i} in shape {shape}",
                        i - 1
                    )));
                }
                let inv = diff.inv()?;
                let alpha = (&one - q) * &rho2 * &inv;
                let product = (q * &rho2 - &rho) * (&rho2 - &(q * &rho)) * &inv * &inv;
                (alpha, product)
            };
            m.set(col, col, alpha);
            let Some(swapped) = t.swap(i - 1) else { continue };
            if product.is_zero() {
                return Err(Error::SeparationFailure(format!(
                    "vanishing off-diagonal coefficient for entries {} and {i} in shape {shape}",
                    i - 1
                )));
            }
            let coef = match cell_order(x, y, gp.p as usize) {
                Ordering::Less => one.clone(),
                Ordering::Greater => product,
                Ordering::Equal => (&one + q) * frac(1, 2),
            };
            let row = index[swapped.positions()];
            m.set(row, col, coef);
        }
        gens.push(m);
    }
    let rep = Rep { params: params.clone(), shape: shape.clone(), basis, gens };
    let report = verify_relations(&rep);
    if let Some(f) = report.failures.first() {
        return Err(Error::RelationFailure(f.to_string()));
    }
    Ok(rep)
}

/// Builds every `V(λ)` for the parameters.
pub fn build_all(params: &HeckeParams) -> Result<Vec<Rep>> {
    let gp = params.gp;
    multipartitions(gp.r as usize, gp.p as usize, gp.n)?.iter().map(|l| build_rep(l, params)).collect()
}

/// One failed defining identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    /// Relation family 1–5.
    pub family: u8,
    pub generators: Vec<usize>,
    /// First basis vector on which the two sides differ.
    pub witness: usize,
}

impl std::fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "relation family {} on T{:?} fails at basis vector {}", self.family, self.generators, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the five relation families of `H_{r,1,n}`:
/// (1) far commutation, (2) braid relations for `i >= 2`,
/// (3) `T_1T_2T_1T_2 = T_2T_1T_2T_1`, (4) `Π (T_1 - u_j) = 0`,
/// (5) `(T_i - 1)(T_i + q) = 0`.
pub fn verify_relations(rep: &Rep) -> RelationReport {
    let mut report = RelationReport::default();
    let dim = rep.dim();
    let n = rep.n();
    let id = CycMatrix::identity(dim);
    let mut check = |family: u8, generators: Vec<usize>, lhs: CycMatrix, rhs: CycMatrix| {
        report.checked += 1;
        let diff = &lhs - &rhs;
        if let Some(witness) = diff.first_nonzero_column() {
            report.failures.push(RelationFailure { family, generators, witness });
        }
    };
    for i in 1..=n {
        for j in i + 2..=n {
            check(1, vec![i, j], rep.t(i) * rep.t(j), rep.t(j) * rep.t(i));
        }
    }
    for i in 2..n {
        let (a, b) = (rep.t(i), rep.t(i + 1));
        check(2, vec![i, i + 1], &(a * b) * a, &(b * a) * b);
    }
    if n >= 2 {
        let (a, b) = (rep.t(1), rep.t(2));
        let ab = a * b;
        let ba = b * a;
        check(3, vec![1, 2], &ab * &ab, &ba * &ba);
    }
    let cyclotomic = rep.params.u.iter().fold(id.clone(), |acc, u| &acc * &(rep.t(1) - &id.scale(u)));
    check(4, vec![1], cyclotomic, CycMatrix::zeros(dim, dim));
    for i in 2..=n {
        let t = rep.t(i);
        check(5, vec![i], &(t - &id) * &(t + &id.scale(&rep.params.q)), CycMatrix::zeros(dim, dim));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::MultiPartition;

    fn mp(p: usize, comps: &[&[usize]]) -> MultiPartition {
        MultiPartition::new(p, comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn gp(r: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, n).unwrap()
    }

    #[test]
    fn t1_on_two_components() {
        let params =
            HeckeParams::new(gp(2, 2, 2), CycNum::from_int(2), vec![CycNum::one()], CycNum::from_int(-1)).unwrap();
        let rep = build_rep(&mp(2, &[&[1], &[1]]), &params).unwrap();
        assert_eq!(rep.t(1), &CycMatrix::diagonal(&[CycNum::one(), CycNum::from_int(-1)]));
    }

    #[test]
    fn one_row_gives_minus_q() {
        let q = CycNum::from_int(5);
        let params = HeckeParams::new(gp(1, 1, 2), q.clone(), vec![CycNum::from_int(3)], CycNum::one()).unwrap();
        let rep = build_rep(&mp(1, &[&[2]]), &params).unwrap();
        assert_eq!(rep.t(2), &CycMatrix::diagonal(&[-q]));
    }

    #[test]
    fn residues() {
        let params =
            HeckeParams::new(gp(1, 1, 2), CycNum::from_int(2), vec![CycNum::from_int(3)], CycNum::one()).unwrap();
        let t = &standard_tableaux(&mp(1, &[&[2]]))[0];
        assert_eq!(params.residue(t, 2), CycNum::from_int(6));
        let t = &standard_tableaux(&mp(1, &[&[1, 1]]))[0];
        assert_eq!(params.residue(t, 2), frac(3, 2));
    }

    #[test]
    fn jucys_murphy_diagonal() {
        for (r, p, n) in [(2, 2, 3), (3, 1, 2), (4, 2, 2)] {
            let params = HeckeParams::default_for(gp(r, p, n)).unwrap();
            for rep in build_all(&params).unwrap() {
                assert!(rep.verify_residues(), "{}", rep.shape);
            }
        }
    }

    #[test]
    fn corrupted_matrix_breaks_braid() {
        let params = HeckeParams::default_for(gp(2, 1, 3)).unwrap();
        let mut rep = build_rep(&mp(1, &[&[2], &[1]]), &params).unwrap();
        assert!(verify_relations(&rep).passed());
        let t3 = rep.gens[2].clone();
        let (i, j) =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).find(|&(i, j)| i != j && !t3.get(i, j).is_zero()).unwrap();
        // move an off-diagonal coefficient onto the diagonal and back
        let mut bad = t3.clone();
        bad.set(i, j, t3.get(j, j).clone());
        bad.set(j, j, t3.get(i, j).clone());
        rep.gens[2] = bad;
        let report = verify_relations(&rep);
        assert!(report.failures.iter().any(|f| f.family == 2));
    }

    #[test]
    fn inverses() {
        let params = HeckeParams::default_for(gp(4, 2, 2)).unwrap();
        for rep in build_all(&params).unwrap() {
            let id = CycMatrix::identity(rep.dim());
            assert_eq!(rep.t(1) * &rep.t1_inverse().unwrap(), id);
            assert_eq!(rep.t(2) * &rep.ti_inverse(2).unwrap(), id);
        }
    }

    #[test]
    fn group_specialization_reflection_character() {
        let params = HeckeParams::group_specialization(gp(2, 1, 2)).unwrap();
        let rep = build_rep(&mp(1, &[&[1], &[1]]), &params).unwrap();
        assert_eq!(rep.character(&[1]).unwrap(), CycNum::zero());
        assert_eq!(rep.character(&[]).unwrap(), CycNum::from_int(2));
    }

    #[test]
    fn colliding_v_is_degenerate() {
        let err = HeckeParams::new(
            gp(4, 2, 2),
            CycNum::from_int(2),
            vec![CycNum::one(), CycNum::from_int(-1)],
            CycNum::from_int(-1),
        );
        assert!(matches!(err, Err(Error::SeparationFailure(_))));
    }

    #[test]
    fn parameter_identity() {
        for r in 1..=8u32 {
            for p in (1..=r).filter(|p| r % p == 0) {
                let params = HeckeParams::default_for(gp(r, p, 1)).unwrap();
                assert!(params.verify_parameter_identity(), "r = {r}, p = {p}");
            }
        }
    }
}
