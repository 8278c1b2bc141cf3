//! One function per subcommand. Each returns `(passed, result)`; library
//! errors propagate and are classified by the caller.

use serde::Serialize;
use serde_json::{json, Value};

use imprim::cherednik::{
    bn_dn_table, check_tau_compatibility, dunkl_agreement, fake_degree_table, graded_restriction, verify_commutation,
    verify_thm_3_4,
};
use imprim::clifford::{decompose_restriction, smash_product_census, verify_tau_shift_inverse};
use imprim::heckespan::{commutative_diagram_check, fixed_subspace_check, DEFAULT_BASIS_CAP};
use imprim::refgroup::{
    generators, hyperplane_orbits, tau_fixed_group_check, verify_reflection_difference, Which, DEFAULT_GROUP_CAP,
};
use imprim::seminormal::{build_all, build_rep, verify_relations};
use imprim::tableaux::{cyclic_class, multipartitions};
use imprim::{Error, Result};

use crate::config::RunConfig;

pub type Outcome = (bool, Value);

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn shapes(cfg: &RunConfig) -> Result<Vec<imprim::tableaux::MultiPartition>> {
    let gp = cfg.gp;
    multipartitions(gp.r as usize, gp.p as usize, gp.n)
}

pub fn group(cfg: &RunConfig) -> Result<Outcome> {
    let gp = cfg.gp;
    let fixed = tau_fixed_group_check(gp, cfg.cap_or(DEFAULT_GROUP_CAP))?;
    let orbits = |which| -> Result<Vec<usize>> { Ok(hyperplane_orbits(gp, which)?.iter().map(Vec::len).collect()) };
    let reflection_difference = verify_reflection_difference(gp);
    let result = json!({
        "full_order": gp.order(Which::Full).to_string(),
        "subgroup_order": gp.order(Which::Subgroup).to_string(),
        "full_generators": to_value(&generators(gp, Which::Full)?),
        "subgroup_generators": to_value(&generators(gp, Which::Subgroup)?),
        "full_hyperplane_orbits": orbits(Which::Full)?,
        "subgroup_hyperplane_orbits": orbits(Which::Subgroup)?,
        "reflection_difference": reflection_difference,
        "tau_fixed": to_value(&fixed),
    });
    Ok((reflection_difference && fixed.coincide, result))
}

pub fn reps(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.hecke()?;
    let gp = cfg.gp;
    let mut rows = Vec::new();
    let mut sum = 0u128;
    for shape in shapes(cfg)? {
        let dim = shape.dimension();
        sum += dim * dim;
        let class = cyclic_class(&shape);
        rows.push(json!({ "shape": shape, "dim": dim.to_string(), "e_lambda": class.e_lambda }));
    }
    let expected = gp.full_order();
    let identity = params.verify_parameter_identity();
    let result = json!({
        "params": to_value(&params),
        "shapes": rows,
        "sum_of_squares": sum.to_string(),
        "expected_sum_of_squares": expected.to_string(),
        "parameter_identity": identity,
    });
    Ok((sum == expected && identity, result))
}

pub fn verify_relations_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.hecke()?;
    let mut passed = true;
    let mut rows = Vec::new();
    for rep in build_all(&params)? {
        let report = verify_relations(&rep);
        passed &= report.passed();
        rows.push(json!({ "shape": rep.shape, "dim": rep.dim(), "report": to_value(&report) }));
    }
    Ok((passed, json!({ "shapes": rows })))
}

pub fn tau_shift(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.hecke()?;
    let mut passed = true;
    let mut rows = Vec::new();
    for shape in shapes(cfg)? {
        let row = match verify_tau_shift_inverse(&shape, &params) {
            Ok(_) => json!({ "shape": shape, "shift": shape.shift(), "passed": true }),
            Err(e @ Error::IntertwinerFailure { .. }) => {
                passed = false;
                json!({ "shape": shape, "shift": shape.shift(), "passed": false, "witness": e.to_string() })
            }
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok((passed, json!({ "shapes": rows })))
}

pub fn decompose(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.hecke()?;
    let mut passed = true;
    let mut rows = Vec::new();
    for shape in shapes(cfg)? {
        let rep = build_rep(&shape, &params)?;
        let report = decompose_restriction(&rep)?.without_projectors();
        let dims: Vec<usize> = report.summands.iter().map(|s| s.dim).collect();
        passed &= dims.len() == report.e_lambda
            && dims.iter().sum::<usize>() == rep.dim()
            && dims.iter().all(|&d| d * report.e_lambda == rep.dim());
        rows.push(to_value(&report));
    }
    Ok((passed, json!({ "shapes": rows })))
}

pub fn fixed_subalgebra(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.hecke()?;
    let fixed = fixed_subspace_check(&params, cfg.cap_or(DEFAULT_BASIS_CAP))?;
    let diagram = commutative_diagram_check(&params, cfg.degree_or(3) as usize)?;
    let passed = [fixed.fixed_dim, fixed.weight_zero_dim, fixed.lp_dim, fixed.subalgebra_dim]
        .iter()
        .all(|&d| d == fixed.expected_fixed_dim);
    Ok((passed, json!({ "fixed_subspace": to_value(&fixed), "diagram": to_value(&diagram) })))
}

pub fn smash_census(cfg: &RunConfig) -> Result<Outcome> {
    let report = smash_product_census(&cfg.hecke()?)?;
    Ok((report.sum_of_squares == report.expected_sum_of_squares, to_value(&report)))
}

pub fn dunkl_check(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.k_table()?;
    let commutation = verify_commutation(&k, cfg.degree_or(3))?;
    let compat = check_tau_compatibility(&k)?;
    let agreement = if compat.passed() { Some(dunkl_agreement(&k, cfg.degree_or(3))?) } else { None };
    let passed = commutation.passed() && agreement.as_ref().is_none_or(|a| a.agree && a.coordinate_support_ok);
    let result = json!({
        "k": to_value(&k),
        "commutation": to_value(&commutation),
        "tau_compatibility": to_value(&compat),
        "agreement": to_value(&agreement),
    });
    Ok((passed, result))
}

pub fn thm34(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.k_table()?;
    let compat = check_tau_compatibility(&k)?;
    let report = verify_thm_3_4(&k, cfg.degree_or(1))?;
    let result = json!({ "k": to_value(&k), "tau_compatibility": to_value(&compat), "report": to_value(&report) });
    Ok((report.passed(), result))
}

pub fn graded_res(cfg: &RunConfig) -> Result<Outcome> {
    let mut passed = true;
    let mut rows = Vec::new();
    for shape in shapes(cfg)? {
        let report = graded_restriction(&shape, cfg.gp, cfg.degree_or(2))?;
        passed &= report.passed();
        rows.push(to_value(&report));
    }
    Ok((passed, json!({ "shapes": rows })))
}

pub fn fake_degrees(cfg: &RunConfig) -> Result<Outcome> {
    let table = fake_degree_table(cfg.gp)?;
    Ok((table.passed(), to_value(&table)))
}

pub fn bn_dn_demo(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.gp.n;
    if n > 4 {
        return Err(Error::BadParams(format!("bn-dn-demo supports n <= 4 (got {n})")));
    }
    let rows = bn_dn_table(n, cfg.degree_or(2))?;
    let passed = rows.iter().all(|r| r.partner_agrees && r.graded_ok);
    Ok((passed, json!({ "n": n, "rows": to_value(&rows) })))
}

/// Renders the `bn-dn-demo` rows as an aligned table.
pub fn bn_dn_text(result: &Value) -> String {
    let header = ["bipartition", "partner", "dim", "verdict", "summands", "partner", "graded"];
    let mut table: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    let plain = |v: &Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
    let ok = |v: &Value| if v.as_bool() == Some(true) { "ok" } else { "FAIL" }.to_string();
    for row in result["rows"].as_array().into_iter().flatten() {
        table.push(vec![
            plain(&row["bipartition"]),
            plain(&row["partner"]),
            plain(&row["dim"]),
            plain(&row["verdict"]),
            plain(&row["summand_dims"]),
            ok(&row["partner_agrees"]),
            ok(&row["graded_ok"]),
        ]);
    }
    let widths: Vec<usize> =
        (0..header.len()).map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &table {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
