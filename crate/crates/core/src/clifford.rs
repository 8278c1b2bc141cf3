//! The automorphism `τ` (`T_1 ↦ ξT_1`, `T_i ↦ T_i`) on modules: twisting,
//! the shift intertwiners, restriction to `H_{r,p,n}` and its Clifford
//! decomposition, and the simple modules of the smash product `H ⋊ Z/pZ`.

use serde::Serialize;

use crate::cycfield::{commutant_dim, frac, intertwiner_space, zeta, CycMatrix};
use crate::error::{Error, Result};
use crate::seminormal::{build_rep, HeckeParams, Rep};
use crate::tableaux::{cyclic_class, index_map, multipartitions, MultiPartition};

/// The twisted module `^τV`: `T_1` acts by `ξ^{-1}T_1`, the rest unchanged.
pub fn tau_twist(rep: &Rep) -> Rep {
    let mut out = rep.clone();
    let xi_inv = rep.params.xi.inv().expect("ξ is a root of unity");
    out.gens[0] = rep.gens[0].scale(&xi_inv);
    out
}

/// Permutation matrix of `v(T) ↦ v(shift^k T)` from `V(λ)` to `V(shift^k λ)`.
pub fn shift_relabelling(from: &Rep, to: &Rep, k: usize) -> Result<CycMatrix> {
    let index = index_map(&to.basis);
    let mut perm = Vec::with_capacity(from.dim());
    for t in &from.basis {
        let s = t.shift_by(k);
        let j = *index
            .get(s.positions())
            .ok_or_else(|| Error::InconsistentData("shifted tableau missing from target basis".into()))?;
        perm.push(j);
    }
    Ok(CycMatrix::permutation(&perm))
}

/// Checks `R·A(g) = B(g)·R` for every generator; reports the first failure.
fn check_intertwiner(r: &CycMatrix, a: &[CycMatrix], b: &[CycMatrix]) -> Result<()> {
    for (g, (ag, bg)) in a.iter().zip(b).enumerate() {
        let diff = &(r * ag) - &(bg * r);
        if let Some(column) = diff.first_nonzero_column() {
            return Err(Error::IntertwinerFailure { generator: g + 1, column });
        }
    }
    Ok(())
}

/// Verifies that `v(T) ↦ v(shift T)` is an isomorphism
/// `V(λ) → ^τV(shift λ)`, i.e. `τ∘shift` acts trivially on simple modules.
/// Returns the intertwiner.
pub fn verify_tau_shift_inverse(shape: &MultiPartition, params: &HeckeParams) -> Result<CycMatrix> {
    let a = build_rep(shape, params)?;
    let b = tau_twist(&build_rep(&shape.shift(), params)?);
    let r = shift_relabelling(&a, &b, 1)?;
    check_intertwiner(&r, &a.gens, &b.gens)?;
    Ok(r)
}

/// Images of `t_0 = T_1^p`, `t_1 = T_1^{-1}T_2T_1`, `t_i = T_i` (`i >= 2`).
#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraGens {
    pub gens: Vec<CycMatrix>,
}

pub fn restrict(rep: &Rep) -> Result<SubalgebraGens> {
    let t1 = rep.t(1);
    let mut gens = vec![t1.pow(rep.params.gp.p)];
    if rep.n() >= 2 {
        let inv = rep.t1_inverse()?;
        gens.push(&(&inv * rep.t(2)) * t1);
        gens.extend(rep.gens[1..].iter().cloned());
    }
    Ok(SubalgebraGens { gens })
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    /// `U` acts on the summand by `ω^label`.
    pub label: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projector: Option<CycMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub shape: MultiPartition,
    pub e_lambda: usize,
    pub commutant_dim: usize,
    pub summands: Vec<Summand>,
}

impl DecompositionReport {
    pub fn without_projectors(mut self) -> Self {
        for s in &mut self.summands {
            s.projector = None;
        }
        self
    }
}

/// Splits the restriction of `V(λ)` to `H_{r,p,n}` into `e_λ` summands with
/// projectors `P_l = (1/e) Σ_k ω^{-lk} U^k`, where `U` relabels by
/// `shift^{p/e_λ}`.
pub fn decompose_restriction(rep: &Rep) -> Result<DecompositionReport> {
    let class = cyclic_class(&rep.shape);
    let e = class.e_lambda;
    let u = shift_relabelling(rep, rep, class.stabilizer_exponent)?;
    let sub = restrict(rep)?;
    let dim = rep.dim();
    let id = CycMatrix::identity(dim);

    for (g, t) in sub.gens.iter().enumerate() {
        if let Some(column) = (&(&u * t) - &(t * &u)).first_nonzero_column() {
            return Err(Error::IntertwinerFailure { generator: g, column });
        }
    }
    if u.pow(e as u32) != id {
        return Err(Error::InconsistentData("U^e differs from the identity".into()));
    }

    let found = commutant_dim(&sub.gens)?;
    if found != e {
        return Err(Error::CommutantMismatch { expected: e, found });
    }

    let omega = zeta(e as u32, 1);
    let powers: Vec<CycMatrix> = (0..e).map(|k| u.pow(k as u32)).collect();
    let mut summands = Vec::with_capacity(e);
    let mut total = CycMatrix::zeros(dim, dim);
    for l in 0..e {
        let mut p = CycMatrix::zeros(dim, dim);
        for (k, uk) in powers.iter().enumerate() {
            p = &p + &uk.scale(&omega.pow(-((l * k) as i64)).expect("root of unity"));
        }
        let p = p.scale(&frac(1, e as i64));
        if &p * &p != p {
            return Err(Error::InconsistentData(format!("P_{l} is not idempotent")));
        }
        for t in &sub.gens {
            if &p * t != t * &p {
                return Err(Error::InconsistentData(format!("P_{l} is not a module map")));
            }
        }
        total = &total + &p;
        summands.push(Summand { label: l, dim: p.rank(), projector: Some(p) });
    }
    for a in 0..e {
        for b in 0..e {
            let (pa, pb) = (summands[a].projector.as_ref().unwrap(), summands[b].projector.as_ref().unwrap());
            if a != b && !(pa * pb).is_zero() {
                return Err(Error::InconsistentData(format!("P_{a} P_{b} ≠ 0")));
            }
        }
    }
    if total != id {
        return Err(Error::InconsistentData("projectors do not sum to the identity".into()));
    }
    if summands.iter().any(|s| s.dim * e != dim) {
        return Err(Error::InconsistentData("summands of unequal dimension".into()));
    }
    Ok(DecompositionReport { shape: rep.shape.clone(), e_lambda: e, commutant_dim: found, summands })
}

/// One simple module of `H ⋊ ⟨g⟩`, induced from `V(λ) ⊗ π_l`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedModule {
    pub representative: MultiPartition,
    pub label: usize,
    pub dim: usize,
    /// Images of `T_1, …, T_n` followed by `g`.
    #[serde(skip)]
    pub gens: Vec<CycMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub classes: usize,
    pub simples: Vec<InducedModule>,
    pub sum_of_squares: u128,
    pub expected_sum_of_squares: u128,
}

/// Builds the induced module for the class of `λ` and label `l`.
///
/// The space is `m = |λ̄|` copies of `V(λ)`; `H` acts on copy `k` through
/// `τ^{-k}`, `g` moves copy `k` to copy `k+1`, and the last copy returns to
/// the first through `ω^l U^{-1}`.
pub fn induced_module(rep: &Rep, l: usize) -> Result<InducedModule> {
    let class = cyclic_class(&rep.shape);
    let (m, e) = (class.class_size, class.e_lambda);
    let dim = rep.dim();
    let xi = &rep.params.xi;
    let mut gens = Vec::with_capacity(rep.n() + 1);
    let t1_blocks: Vec<CycMatrix> =
        (0..m).map(|k| rep.t(1).scale(&xi.pow(-(k as i64)).expect("root of unity"))).collect();
    gens.push(CycMatrix::block_diagonal(&t1_blocks));
    for i in 2..=rep.n() {
        gens.push(CycMatrix::block_diagonal(&vec![rep.t(i).clone(); m]));
    }
    let u = shift_relabelling(rep, rep, m)?;
    let back = u.inverse()?.scale(&zeta(e as u32, l as i64));
    let mut g = CycMatrix::zeros(m * dim, m * dim);
    for k in 0..m {
        let (block, target) = if k + 1 < m { (CycMatrix::identity(dim), k + 1) } else { (back.clone(), 0) };
        for i in 0..dim {
            for j in 0..dim {
                let x = block.get(i, j);
                if !x.is_zero() {
                    g.set(target * dim + i, k * dim + j, x.clone());
                }
            }
        }
    }
    gens.push(g);
    Ok(InducedModule { representative: class.representative, label: l, dim: m * dim, gens })
}

/// Enumerates the simple `H ⋊ Z/pZ`-modules and checks the smash-product
/// relations, simplicity, pairwise non-isomorphism and the dimension count.
pub fn smash_product_census(params: &HeckeParams) -> Result<CensusReport> {
    let gp = params.gp;
    let shapes = multipartitions(gp.r as usize, gp.p as usize, gp.n)?;
    let mut reps: Vec<MultiPartition> = shapes.iter().map(|s| cyclic_class(s).representative).collect();
    reps.sort();
    reps.dedup();
    let mut simples = Vec::new();
    for shape in &reps {
        let rep = build_rep(shape, params)?;
        let e = cyclic_class(shape).e_lambda;
        for l in 0..e {
            let module = induced_module(&rep, l)?;
            check_smash_relations(&module, params)?;
            let c = commutant_dim(&module.gens)?;
            if c != 1 {
                return Err(Error::CensusMismatch(format!("module ({shape}, {l}) has commutant dimension {c}")));
            }
            simples.push(module);
        }
    }
    for a in 0..simples.len() {
        for b in a + 1..simples.len() {
            if simples[a].dim == simples[b].dim {
                let hom = intertwiner_space(&simples[a].gens, &simples[b].gens)?;
                if !hom.is_empty() {
                    return Err(Error::CensusMismatch(format!(
                        "({}, {}) ≅ ({}, {})",
                        simples[a].representative, simples[a].label, simples[b].representative, simples[b].label
                    )));
                }
            }
        }
    }
    let expected_count: usize = reps.iter().map(|s| cyclic_class(s).e_lambda).sum();
    if simples.len() != expected_count {
        return Err(Error::CensusMismatch(format!("{} simples, expected {expected_count}", simples.len())));
    }
    let sum_of_squares: u128 = simples.iter().map(|s| (s.dim as u128).pow(2)).sum();
    let expected_sum_of_squares = gp.p as u128 * gp.full_order();
    if sum_of_squares != expected_sum_of_squares {
        return Err(Error::CensusMismatch(format!("Σ dim² = {sum_of_squares}, expected {expected_sum_of_squares}")));
    }
    Ok(CensusReport { classes: reps.len(), simples, sum_of_squares, expected_sum_of_squares })
}

/// `g^p = 1`, `gT_1g^{-1} = ξT_1`, `gT_ig^{-1} = T_i`.
fn check_smash_relations(module: &InducedModule, params: &HeckeParams) -> Result<()> {
    let n = module.gens.len() - 1;
    let g = &module.gens[n];
    let id = CycMatrix::identity(module.dim);
    if g.pow(params.gp.p) != id {
        return Err(Error::CensusMismatch(format!("g^p ≠ 1 on ({}, {})", module.representative, module.label)));
    }
    for i in 0..n {
        let t = &module.gens[i];
        let expected = if i == 0 { t.scale(&params.xi) } else { t.clone() };
        if (g * t) != (&expected * g) {
            return Err(Error::CensusMismatch(format!(
                "g T_{} g^-1 ≠ τ(T_{}) on ({}, {})",
                i + 1,
                i + 1,
                module.representative,
                module.label
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycfield::CycNum;
    use crate::refgroup::GroupParams;

    fn mp(p: usize, comps: &[&[usize]]) -> MultiPartition {
        MultiPartition::new(p, comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn params(r: u32, p: u32, n: usize) -> HeckeParams {
        HeckeParams::default_for(GroupParams::new(r, p, n).unwrap()).unwrap()
    }

    #[test]
    fn twist_scales_t1() {
        let hp = HeckeParams::new(
            GroupParams::new(2, 2, 2).unwrap(),
            CycNum::from_int(2),
            vec![CycNum::one()],
            CycNum::from_int(-1),
        )
        .unwrap();
        let rep = build_rep(&mp(2, &[&[1], &[1]]), &hp).unwrap();
        let tw = tau_twist(&rep);
        assert_eq!(tw.t(1), &CycMatrix::diagonal(&[CycNum::from_int(-1), CycNum::one()]));
        let back = tau_twist(&tw);
        assert_eq!(back.gens, rep.gens);
    }

    #[test]
    fn tau_shift_on_small_grids() {
        for (r, p, n) in [(2, 2, 2), (4, 2, 2), (3, 3, 2), (2, 1, 2)] {
            let hp = params(r, p, n);
            for shape in multipartitions(r as usize, p as usize, n).unwrap() {
                verify_tau_shift_inverse(&shape, &hp).unwrap();
            }
        }
    }

    #[test]
    fn restriction_generators() {
        let hp = HeckeParams::new(
            GroupParams::new(2, 2, 2).unwrap(),
            CycNum::from_int(2),
            vec![CycNum::one()],
            CycNum::from_int(-1),
        )
        .unwrap();
        let rep = build_rep(&mp(2, &[&[1], &[1]]), &hp).unwrap();
        let sub = restrict(&rep).unwrap();
        assert!(sub.gens[0].is_identity());
        assert_eq!(&sub.gens[2], rep.t(2));
    }

    #[test]
    fn decompositions() {
        let hp = params(2, 2, 2);
        let rep = build_rep(&mp(2, &[&[1], &[1]]), &hp).unwrap();
        let d = decompose_restriction(&rep).unwrap();
        assert_eq!(d.e_lambda, 2);
        assert_eq!(d.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 1]);
        let rep = build_rep(&mp(2, &[&[2], &[]]), &hp).unwrap();
        assert_eq!(decompose_restriction(&rep).unwrap().summands.len(), 1);
        let hp = params(3, 3, 3);
        let rep = build_rep(&mp(3, &[&[1], &[1], &[1]]), &hp).unwrap();
        let d = decompose_restriction(&rep).unwrap();
        assert_eq!(d.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![2, 2, 2]);
    }

    #[test]
    fn census_222() {
        let c = smash_product_census(&params(2, 2, 2)).unwrap();
        assert_eq!(c.simples.len(), 4);
        assert_eq!(c.sum_of_squares, 16);
    }

    #[test]
    fn census_p1_is_ordinary() {
        let c = smash_product_census(&params(2, 1, 2)).unwrap();
        assert_eq!(c.simples.len(), 5);
    }
}
