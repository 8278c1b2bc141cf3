//! Acceptance suite: one line per criterion, exact equality throughout.
//! Exits with status 1 if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use imprim::cherednik::{
    bn_dn_table, check_tau_compatibility, dunkl_agreement, dunkl_apply, fake_degree_table, graded_restriction,
    k_from_c, verify_commutation, verify_thm_3_4, CFunction, KTable, Poly,
};
use imprim::clifford::{decompose_restriction, smash_product_census, verify_tau_shift_inverse};
use imprim::cycfield::{frac, zeta, CycNum, UniPoly};
use imprim::heckespan::{fixed_subspace_check, DEFAULT_BASIS_CAP};
use imprim::refgroup::{tau_fixed_group_check, GroupParams, DEFAULT_GROUP_CAP};
use imprim::seminormal::{build_all, build_rep, verify_relations, HeckeParams};
use imprim::tableaux::{cyclic_class, multipartitions};

type Outcome = Result<String, String>;

const GRID: [(u32, u32, usize); 10] =
    [(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 3, 2), (4, 2, 2), (4, 4, 2), (2, 1, 3), (2, 2, 3), (3, 1, 3), (2, 2, 4)];

const SPAN_GRID: [(u32, u32, usize); 4] = [(2, 2, 2), (2, 2, 3), (3, 3, 2), (4, 2, 2)];

fn gp(r: u32, p: u32, n: usize) -> Result<GroupParams, String> {
    GroupParams::new(r, p, n).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relation_suite() -> Outcome {
    let mut modules = 0;
    let mut identities = 0;
    for (r, p, n) in GRID {
        let params = HeckeParams::default_for(gp(r, p, n)?).map_err(|e| e.to_string())?;
        for shape in multipartitions(r as usize, p as usize, n).map_err(|e| e.to_string())? {
            let rep = build_rep(&shape, &params).map_err(|e| format!("({r},{p},{n}) {shape}: {e}"))?;
            let report = verify_relations(&rep);
            ensure(report.passed(), || format!("({r},{p},{n}) {shape}: {}", report.failures[0]))?;
            modules += 1;
            identities += report.checked;
        }
    }
    Ok(format!("{modules} modules, {identities} identities"))
}

fn dimension_identity() -> Outcome {
    for (r, p, n) in GRID {
        let g = gp(r, p, n)?;
        let params = HeckeParams::default_for(g).map_err(|e| e.to_string())?;
        let total: u128 = build_all(&params).map_err(|e| e.to_string())?.iter().map(|m| (m.dim() as u128).pow(2)).sum();
        ensure(total == g.full_order(), || format!("({r},{p},{n}): Σ dim² = {total}, expected {}", g.full_order()))?;
    }
    Ok(format!("{} configurations", GRID.len()))
}

fn fixed_subalgebra() -> Outcome {
    let mut dims = Vec::new();
    for (r, p, n) in SPAN_GRID {
        let g = gp(r, p, n)?;
        let params = HeckeParams::default_for(g).map_err(|e| e.to_string())?;
        let rep = fixed_subspace_check(&params, DEFAULT_BASIS_CAP).map_err(|e| format!("({r},{p},{n}): {e}"))?;
        let expected = (g.full_order() / p as u128) as usize;
        ensure(
            rep.expected_fixed_dim == expected
                && rep.fixed_dim == expected
                && rep.weight_zero_dim == expected
                && rep.lp_dim == expected
                && rep.subalgebra_dim == expected,
            || format!("({r},{p},{n}): {rep:?}"),
        )?;
        dims.push(format!("({r},{p},{n}):{expected}"));
    }
    Ok(format!("fixed dims {}", dims.join(" ")))
}

fn group_fixed_span() -> Outcome {
    for (r, p, n) in SPAN_GRID {
        let rep = tau_fixed_group_check(gp(r, p, n)?, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
        ensure(rep.coincide && rep.fixed_dim * p as usize == rep.full_order, || format!("{rep:?}"))?;
    }
    Ok(format!("{} configurations", SPAN_GRID.len()))
}

fn tau_shift() -> Outcome {
    let mut count = 0;
    for (r, p, n) in GRID.into_iter().filter(|c| c.1 > 1) {
        let params = HeckeParams::default_for(gp(r, p, n)?).map_err(|e| e.to_string())?;
        for shape in multipartitions(r as usize, p as usize, n).map_err(|e| e.to_string())? {
            let m = verify_tau_shift_inverse(&shape, &params).map_err(|e| format!("({r},{p},{n}) {shape}: {e}"))?;
            ensure(m.rank() == m.rows(), || format!("({r},{p},{n}) {shape}: singular intertwiner"))?;
            count += 1;
        }
    }
    Ok(format!("{count} shapes"))
}

fn clifford_decomposition() -> Outcome {
    let mut shapes = 0;
    for (r, p, n) in GRID.into_iter().filter(|c| c.1 > 1) {
        let params = HeckeParams::default_for(gp(r, p, n)?).map_err(|e| e.to_string())?;
        for rep in build_all(&params).map_err(|e| e.to_string())? {
            let class = cyclic_class(&rep.shape);
            let dec = decompose_restriction(&rep).map_err(|e| format!("({r},{p},{n}) {}: {e}", rep.shape))?;
            ensure(
                dec.e_lambda == p as usize / class.class_size
                    && dec.summands.len() == dec.e_lambda
                    && dec.commutant_dim == dec.e_lambda
                    && dec.summands.iter().all(|s| s.dim * dec.e_lambda == rep.dim()),
                || format!("({r},{p},{n}) {}: {dec:?}", rep.shape),
            )?;
            shapes += 1;
        }
    }
    let mut census = Vec::new();
    for (r, p, n) in [(2, 2, 2), (2, 2, 3), (3, 3, 2)] {
        let g = gp(r, p, n)?;
        let params = HeckeParams::default_for(g).map_err(|e| e.to_string())?;
        let rep = smash_product_census(&params).map_err(|e| format!("({r},{p},{n}): {e}"))?;
        let shapes = multipartitions(r as usize, p as usize, n).map_err(|e| e.to_string())?;
        let classes: BTreeSet<_> = shapes.iter().map(|s| cyclic_class(s).representative).collect();
        let expected: usize = classes.iter().map(|s| cyclic_class(s).e_lambda).sum();
        ensure(rep.simples.len() == expected && rep.sum_of_squares == p as u128 * g.full_order(), || {
            format!("({r},{p},{n}): {} simples, Σ dim² = {}", rep.simples.len(), rep.sum_of_squares)
        })?;
        census.push(format!("({r},{p},{n}):{}", rep.simples.len()));
    }
    Ok(format!("{shapes} restrictions; simples {}", census.join(" ")))
}

fn dunkl_layer() -> Outcome {
    for (r, p, n, degree) in [(2, 1, 2, 5), (3, 1, 2, 5), (2, 1, 3, 3), (2, 2, 2, 5), (3, 3, 2, 4), (4, 2, 2, 4)] {
        let k = KTable::tau_compatible_default(gp(r, p, n)?);
        let rep = verify_commutation(&k, degree).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("G({r},{p},{n}) degree {degree}: {:?}", rep.failures.first()))?;
    }
    for (r, p, n) in SPAN_GRID {
        let k = KTable::tau_compatible_default(gp(r, p, n)?);
        let compat = check_tau_compatibility(&k).map_err(|e| e.to_string())?;
        ensure(compat.passed(), || format!("({r},{p},{n}) table not compatible: {compat:?}"))?;
        let thm = verify_thm_3_4(&k, 1).map_err(|e| e.to_string())?;
        ensure(thm.passed(), || format!("({r},{p},{n}): {thm:?}"))?;
        let agree = dunkl_agreement(&k, 3).map_err(|e| e.to_string())?;
        ensure(agree.agree && agree.coordinate_support_ok, || format!("({r},{p},{n}): {agree:?}"))?;
    }
    // c nonzero on the excluded reflection diag(-1, 1)
    let g = gp(2, 2, 2)?;
    let c = CFunction::new(g, vec![frac(1, 2)], frac(1, 3)).map_err(|e| e.to_string())?;
    let k = k_from_c(&c).map_err(|e| e.to_string())?;
    let thm = verify_thm_3_4(&k, 0).map_err(|e| e.to_string())?;
    let w = thm.witness.ok_or("incompatible c produced no witness")?;
    ensure(!thm.gamma_invariant && !w.tau_factor.is_one(), || "incompatible c passed".into())?;
    Ok(format!("witness {:?} with factor {}", w.element.perm(), w.tau_factor))
}

fn graded_restrictions() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        let g = gp(2, 2, n)?;
        for shape in multipartitions(2, 2, n).map_err(|e| e.to_string())? {
            let rep = graded_restriction(&shape, g, 4).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("{shape}: {rep:?}"))?;
            count += 1;
        }
    }
    let mut splits = 0;
    for n in 2..=4 {
        for row in bn_dn_table(n, 0).map_err(|e| e.to_string())? {
            let split = row.bipartition.component(0, 0) == row.bipartition.component(1, 0);
            let want = if split { "split" } else { "merge" };
            ensure(
                row.verdict == want
                    && row.partner_agrees
                    && row.graded_ok
                    && row.summand_dims.len() == if split { 2 } else { 1 },
                || format!("{row:?}"),
            )?;
            splits += split as usize;
        }
    }
    Ok(format!("{count} bipartitions graded to degree 4; {splits} split rows for n <= 4"))
}

fn fake_degrees() -> Outcome {
    let mut ms = Vec::new();
    for (r, p, n) in [(2, 2, 2), (3, 3, 2)] {
        let table = fake_degree_table(gp(r, p, n)?).map_err(|e| e.to_string())?;
        ensure(table.passed(), || format!("({r},{p},{n}): degrees or Poincaré identity failed"))?;
        let list: Vec<String> = table.shifts.iter().map(|s| s.m.to_string()).collect();
        ms.push(format!("({r},{p},{n}) m = [{}]", list.join(",")));
    }
    Ok(ms.join("; "))
}

/// `T(x^m)` for `W = Z/rZ` computed on coefficient vectors: `a_H` acts on
/// `x^m` through the idempotents, then the result is divided by `x`.
fn rank_one_brute_force(r: u32, k: &[CycNum], m: u32) -> Vec<CycNum> {
    let mut coeffs = vec![CycNum::zero(); m as usize + 1];
    coeffs[m as usize] = CycNum::one();
    let mut out = vec![CycNum::zero(); m as usize];
    if m > 0 {
        out[m as usize - 1] = CycNum::from_int(m as i64);
    }
    for (deg, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut total = CycNum::zero();
        for (j, kj) in k.iter().enumerate().take(r as usize) {
            // ε_j x^deg = (1/r) Σ_l ζ^{lj} ζ^{-l·deg} x^deg
            let mut proj = CycNum::zero();
            for l in 0..r as i64 {
                proj += &zeta(r, l * j as i64 - l * deg as i64);
            }
            total += &(proj * kj);
        }
        if total.is_zero() {
            continue;
        }
        assert!(deg > 0, "constant term survived a_H");
        out[deg - 1] += &(total * c);
    }
    out
}

fn oracles() -> Outcome {
    for r in 2..=6u32 {
        let g = gp(r, 1, 1)?;
        let k = KTable::generic(g);
        for m in 0..=8u32 {
            let got = dunkl_apply(0, &Poly::monomial(CycNum::one(), vec![m]), &k).map_err(|e| e.to_string())?;
            let want = rank_one_brute_force(r, &k.coordinate, m);
            for (deg, c) in want.iter().enumerate() {
                ensure(got.coeff(&[deg as u32]) == *c, || format!("r = {r}, m = {m}, degree {deg}"))?;
            }
            ensure(got.degree().is_none_or(|d| d + 1 == m as usize), || format!("r = {r}, m = {m}: stray terms"))?;
        }
    }
    let mut identities = 0;
    for r in 1..=8u32 {
        for p in (1..=r).filter(|p| r % p == 0) {
            let d = r / p;
            let v: Vec<CycNum> = (0..d).map(|l| frac(2 * l as i64 + 3, l as i64 + 1)).collect();
            let xi = zeta(p, 1);
            let mut lhs = UniPoly::constant(CycNum::one());
            for j in 0..r {
                let (l, kk) = (j / p, j % p);
                let u = xi.powu(kk as u64) * &v[l as usize];
                lhs = lhs.mul(&UniPoly::new(vec![-u, CycNum::one()]));
            }
            let mut rhs = UniPoly::constant(CycNum::one());
            for vl in &v {
                rhs = rhs.mul(&UniPoly::monomial(CycNum::one(), p as usize).sub(&UniPoly::constant(vl.powu(p as u64))));
            }
            ensure(lhs == rhs, || format!("parameter identity fails at r = {r}, p = {p}"))?;
            let params = HeckeParams::new(gp(r, p, 1)?, CycNum::from_int(2), v, xi).map_err(|e| e.to_string())?;
            ensure(params.verify_parameter_identity(), || format!("library identity check fails at r = {r}, p = {p}"))?;
            identities += 1;
        }
    }
    Ok(format!("rank-1 r <= 6 to degree 8; {identities} parameter identities"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relation suite", relation_suite),
        ("dimension identity", dimension_identity),
        ("fixed subalgebra spans", fixed_subalgebra),
        ("group algebra fixed span", group_fixed_span),
        ("tau-shift intertwiners", tau_shift),
        ("Clifford decomposition and smash census", clifford_decomposition),
        ("Dunkl operators and tau-invariance", dunkl_layer),
        ("graded restriction B_n to D_n", graded_restrictions),
        ("fake degree shifts", fake_degrees),
        ("oracle cross-checks", oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
