//! The parameter dictionaries of the rational Cherednik algebra: the
//! class function `c` on reflections, the orbit tables `k_{H,j}`, and the
//! group-algebra elements `γ_H` and `a_H` built from them.

use serde::{Deserialize, Serialize};

use crate::cycfield::{parse_rational, zeta, CycMatrix, CycNum, Rational};
use crate::error::{Error, Result};
use crate::refgroup::{
    reflection_hyperplane, reflections, GroupParams, Hyperplane, HyperplaneKind, MonomialMatrix, Which,
};

use super::algebra::{epsilon, GroupAlgElt};

/// A `G(r,1,n)`-invariant function on reflections, keyed on conjugacy
/// classes: `diag(…, ζ^m, …)` for `1 <= m < r`, and the single class of
/// reflections in the hyperplanes `x_i = ζ^k x_j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CFunction {
    pub gp: GroupParams,
    /// `coordinate[m - 1]` is the value on the class of `diag(ζ^m)`.
    pub coordinate: Vec<CycNum>,
    pub difference: CycNum,
}

impl CFunction {
    pub fn new(gp: GroupParams, coordinate: Vec<CycNum>, difference: CycNum) -> Result<Self> {
        if coordinate.len() != gp.r as usize - 1 {
            return Err(Error::BadParams(format!("expected {} coordinate values, got {}", gp.r - 1, coordinate.len())));
        }
        Ok(CFunction { gp, coordinate, difference })
    }

    pub fn zero(gp: GroupParams) -> Self {
        CFunction { gp, coordinate: vec![CycNum::zero(); gp.r as usize - 1], difference: CycNum::zero() }
    }

    /// `c_g`, or `None` if `g` is not a reflection.
    pub fn value(&self, g: &MonomialMatrix) -> Option<CycNum> {
        match reflection_hyperplane(g)? {
            HyperplaneKind::Coordinate(i) => Some(self.coordinate[g.exps()[i] as usize - 1].clone()),
            HyperplaneKind::Difference(..) => Some(self.difference.clone()),
        }
    }
}

/// Orbit tables `(k_{H,0}, …, k_{H,e_H})` with zero boundary entries, for the
/// coordinate orbit `C_0` (`e_H = r`) and the difference orbit (`e_H = 2`).
///
/// `coordinate_offset` is added to every `C_0` entry, boundary included; it
/// is nonzero only on tables produced by [`heckman_opdam_shift`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KTable {
    pub gp: GroupParams,
    pub coordinate: Vec<CycNum>,
    pub difference: Vec<CycNum>,
    pub coordinate_offset: CycNum,
}

#[derive(Deserialize)]
struct KTableConfig {
    #[serde(default)]
    coordinate: Vec<String>,
    #[serde(default)]
    difference: Vec<String>,
}

fn with_boundary(interior: Vec<CycNum>) -> Vec<CycNum> {
    let mut v = vec![CycNum::zero()];
    v.extend(interior);
    v.push(CycNum::zero());
    v
}

impl KTable {
    /// Builds a table from its interior entries `k_{C_0,1..r-1}` and `k_{C_1,1}`.
    pub fn new(gp: GroupParams, coordinate: Vec<CycNum>, difference: CycNum) -> Result<Self> {
        if coordinate.len() != gp.r as usize - 1 {
            return Err(Error::BadParams(format!(
                "expected {} interior coordinate entries, got {}",
                gp.r - 1,
                coordinate.len()
            )));
        }
        Ok(KTable {
            gp,
            coordinate: with_boundary(coordinate),
            difference: with_boundary(vec![difference]),
            coordinate_offset: CycNum::zero(),
        })
    }

    pub fn zero(gp: GroupParams) -> Self {
        Self::new(gp, vec![CycNum::zero(); gp.r as usize - 1], CycNum::zero()).expect("lengths match")
    }

    /// Parses `{"coordinate": ["k1", …], "difference": ["k1"]}` with rational
    /// strings. Missing keys mean zero.
    pub fn from_json(text: &str, gp: GroupParams) -> Result<Self> {
        let cfg: KTableConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let parse = |v: &[String]| -> Result<Vec<CycNum>> {
            v.iter().map(|s| parse_rational(s).map(CycNum::from_rational)).collect()
        };
        let mut coordinate = parse(&cfg.coordinate)?;
        if cfg.coordinate.is_empty() {
            coordinate = vec![CycNum::zero(); gp.r as usize - 1];
        }
        let difference = match parse(&cfg.difference)?.as_slice() {
            [] => CycNum::zero(),
            [k] => k.clone(),
            more => return Err(Error::BadParams(format!("difference orbit takes one entry, got {}", more.len()))),
        };
        Self::new(gp, coordinate, difference)
    }

    /// A generic rational table: `k_{C_0,j} = j/(2r+1)`, `k_{C_1,1} = 2/7`.
    pub fn generic(gp: GroupParams) -> Self {
        let coord = (1..gp.r as i64).map(|j| rat(j, 2 * gp.r as i64 + 1)).collect();
        Self::new(gp, coord, rat(2, 7)).expect("lengths match")
    }

    /// A table periodic modulo `d` with zeros at multiples of `d`:
    /// `k_{C_0,j} = (j mod d)/(2d+1)`, `k_{C_1,1} = 2/7`.
    pub fn tau_compatible_default(gp: GroupParams) -> Self {
        let d = gp.d() as i64;
        let coord = (1..gp.r as i64).map(|j| rat(j % d, 2 * d + 1)).collect();
        Self::new(gp, coord, rat(2, 7)).expect("lengths match")
    }

    pub fn has_offset(&self) -> bool {
        !self.coordinate_offset.is_zero()
    }

    /// Entries with the affine offset applied.
    pub fn effective_coordinate(&self) -> Vec<CycNum> {
        self.coordinate.iter().map(|k| k + &self.coordinate_offset).collect()
    }

    /// `(k_{H,0}, …, k_{H,e_H})` for a hyperplane of `G(r,1,n)`.
    pub fn values(&self, kind: HyperplaneKind) -> &[CycNum] {
        if kind.is_coordinate() {
            &self.coordinate
        } else {
            &self.difference
        }
    }

    fn e(&self, kind: HyperplaneKind) -> u32 {
        if kind.is_coordinate() {
            self.gp.r
        } else {
            2
        }
    }

    fn full_hyperplane(&self, kind: HyperplaneKind) -> Hyperplane {
        Hyperplane { kind, e_h: self.e(kind) }
    }

    /// Coefficient of `w ∈ W_H` in `a_H`: `Σ_j k_{H,j} det(w)^j`.
    pub fn a_coefficient(&self, kind: HyperplaneKind, w: &MonomialMatrix) -> CycNum {
        let det = w.det();
        let mut acc = CycNum::zero();
        for (j, k) in self.values(kind)[..self.e(kind) as usize].iter().enumerate() {
            acc += &(k * det.powu(j as u64));
        }
        acc
    }

    /// `a_H = Σ_j e_H k_{H,j} ε_{H,j}`.
    pub fn a_h(&self, kind: HyperplaneKind) -> GroupAlgElt {
        let h = self.full_hyperplane(kind);
        let e = CycNum::from_int(h.e_h as i64);
        let mut out = GroupAlgElt::zero();
        for (j, k) in self.values(kind)[..h.e_h as usize].iter().enumerate() {
            out = out.add(&epsilon(&h, j as u32, self.gp).scale(&(k * &e)));
        }
        out
    }

    /// `γ_H = e_H Σ_j (k_{H,j+1} - k_{H,j}) ε_{H,j}`.
    pub fn gamma(&self, kind: HyperplaneKind) -> GroupAlgElt {
        let h = self.full_hyperplane(kind);
        let e = CycNum::from_int(h.e_h as i64);
        let k = self.values(kind);
        let mut out = GroupAlgElt::zero();
        for j in 0..h.e_h as usize {
            let diff = &k[j + 1] - &k[j];
            out = out.add(&epsilon(&h, j as u32, self.gp).scale(&(diff * &e)));
        }
        out
    }

    /// The `C_0` table seen by `G(r,p,n)`, whose coordinate stabilizers have
    /// order `d`: `k'_l = p·k_l` for `0 <= l <= d`.
    pub fn subgroup_coordinate(&self) -> Vec<CycNum> {
        let p = CycNum::from_int(self.gp.p as i64);
        self.coordinate[..=self.gp.d() as usize].iter().map(|k| k * &p).collect()
    }
}

fn rat(a: i64, b: i64) -> CycNum {
    CycNum::from_rational(Rational::new(a.into(), b.into()))
}

/// `γ_H = Σ_{g ∈ W_H∖{1}} c_g g`.
pub fn gamma_from_c(c: &CFunction, h: &Hyperplane) -> GroupAlgElt {
    let mut out = GroupAlgElt::zero();
    for w in h.stabilizer(c.gp).into_iter().skip(1) {
        let v = c.value(&w).expect("non-identity stabilizer elements are reflections");
        out.add_term(w, &v);
    }
    out
}

/// Eigenvalues `det(w)` of the non-identity elements of a stabilizer of order
/// `e`, generated by an element of determinant `λ`.
fn stabilizer_dets(lambda: &CycNum, e: u32) -> Vec<CycNum> {
    (1..e).map(|m| lambda.powu(m as u64)).collect()
}

/// `c_w = Σ_j det(w)^j (k_{j+1} - k_j)` for each listed determinant.
fn c_values(k: &[CycNum], dets: &[CycNum]) -> Vec<CycNum> {
    let e = k.len() - 1;
    dets.iter()
        .map(|lam| {
            let mut acc = CycNum::zero();
            for j in 0..e {
                acc += &(lam.powu(j as u64) * (&k[j + 1] - &k[j]));
            }
            acc
        })
        .collect()
}

/// Solves `c_w = Σ_j det(w)^j (k_{j+1} - k_j)` for the interior entries,
/// checking that the solution is unique.
fn solve_interior(c: &[CycNum], dets: &[CycNum]) -> Result<Vec<CycNum>> {
    let m = dets.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut a = CycMatrix::zeros(m, m);
    for (row, lam) in dets.iter().enumerate() {
        for j in 1..=m {
            // k_j enters with det^{j-1} - det^j
            a.set(row, j - 1, lam.powu(j as u64 - 1) - lam.powu(j as u64));
        }
    }
    if a.rank() != m {
        return Err(Error::InconsistentData("the k-system is singular".into()));
    }
    let sol = a
        .solve(&CycMatrix::column(c.to_vec()))
        .map_err(|_| Error::InconsistentData("no k-table reproduces c".into()))?;
    Ok((0..m).map(|i| sol.get(i, 0).clone()).collect())
}

/// The unique `k`-table with zero boundary entries giving the same `γ_H`.
pub fn k_from_c(c: &CFunction) -> Result<KTable> {
    let gp = c.gp;
    let coord = solve_interior(&c.coordinate, &stabilizer_dets(&zeta(gp.r, 1), gp.r))?;
    let diff = solve_interior(std::slice::from_ref(&c.difference), &[CycNum::from_int(-1)])?;
    KTable::new(gp, coord, diff[0].clone())
}

pub fn c_from_k(k: &KTable) -> Result<CFunction> {
    if k.has_offset() {
        return Err(Error::BadParams("shifted tables carry no c-function".into()));
    }
    let gp = k.gp;
    let coordinate = c_values(&k.coordinate, &stabilizer_dets(&zeta(gp.r, 1), gp.r));
    let difference = c_values(&k.difference, &[CycNum::from_int(-1)]).remove(0);
    CFunction::new(gp, coordinate, difference)
}

/// Outcome of the compatibility conditions between the `k`-table and the
/// index-`p` subgroup. The first three are equivalent; the last is the
/// weaker condition on `exp(2πi k)` in exact form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauCompatibility {
    /// `c_g = 0` for every reflection `g ∉ G(r,p,n)`.
    pub c_vanishes_off_subgroup: bool,
    /// `Σ_j k_{H,j} det(w)^j = 0` for every reflection `w ∉ G(r,p,n)`.
    pub a_vanishes_off_subgroup: bool,
    /// `k_{H,i} = k_{H,j}` whenever `i ≡ j (mod d)` on `C_0`.
    pub periodic_mod_d: bool,
    /// Periodic, and for every excluded `w` each regrouped sum
    /// `Σ_t det(w)^{td+l}` is zero and the regrouped total equals `a_w`.
    pub regrouped_sum_vanishes: bool,
    /// `k_{H,i} - k_{H,j} ∈ Z` whenever `i ≡ j (mod d)`.
    pub integer_differences: bool,
    /// First excluded reflection with a nonzero `a_H` coefficient.
    pub witness: Option<MonomialMatrix>,
}

impl TauCompatibility {
    pub fn passed(&self) -> bool {
        self.c_vanishes_off_subgroup && self.a_vanishes_off_subgroup && self.regrouped_sum_vanishes
    }
}

fn excluded_reflections(gp: GroupParams) -> Vec<(MonomialMatrix, Hyperplane)> {
    reflections(gp, Which::Full).into_iter().filter(|(g, _)| !g.in_subgroup(gp.p)).collect()
}

pub fn check_tau_compatibility(k: &KTable) -> Result<TauCompatibility> {
    let gp = k.gp;
    let d = gp.d() as usize;
    let coord = k.effective_coordinate();
    let c = c_from_k(k)?;
    let excluded = excluded_reflections(gp);

    let c_vanishes_off_subgroup = excluded.iter().all(|(g, _)| c.value(g).is_some_and(|v| v.is_zero()));
    let witness = excluded.iter().find(|(g, h)| !k.a_coefficient(h.kind, g).is_zero()).map(|(g, _)| g.clone());
    let a_vanishes_off_subgroup = witness.is_none();

    let periodic_mod_d = (0..coord.len()).all(|i| coord[i] == coord[i % d]);
    let regrouped_sum_vanishes = periodic_mod_d
        && excluded.iter().all(|(g, h)| {
            let lam = g.det();
            let mut total = CycNum::zero();
            for (l, kl) in coord.iter().enumerate().take(d) {
                let mut s = CycNum::zero();
                for t in 0..gp.p as usize {
                    s += &lam.powu((t * d + l) as u64);
                }
                if !s.is_zero() {
                    return false;
                }
                total += &(s * kl);
            }
            total == k.a_coefficient(h.kind, g)
        });
    let integer_differences =
        (0..coord.len()).all(|i| (&coord[i] - &coord[i % d]).to_rational().is_some_and(|x| x.is_integer()));

    Ok(TauCompatibility {
        c_vanishes_off_subgroup,
        a_vanishes_off_subgroup,
        periodic_mod_d,
        regrouped_sum_vanishes,
        integer_differences,
        witness,
    })
}

/// Shifts every `C_0` entry by `-1/p`, recorded as an affine offset so the
/// stored table keeps its zero boundary; other orbits are unchanged.
pub fn heckman_opdam_shift(k: &KTable) -> KTable {
    let mut out = k.clone();
    out.coordinate_offset = &k.coordinate_offset - &rat(1, k.gp.p as i64);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycfield::frac;
    use crate::refgroup::hyperplanes;

    fn gp(r: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, n).unwrap()
    }

    #[test]
    fn order_two_orbit_halves_c() {
        // c_s = k_1 det(s)^0 + (0 - k_1) det(s) = 2 k_1
        let c = CFunction::new(gp(2, 1, 2), vec![frac(3, 5)], frac(1, 3)).unwrap();
        let k = k_from_c(&c).unwrap();
        assert_eq!(k.coordinate, vec![CycNum::zero(), frac(3, 10), CycNum::zero()]);
        assert_eq!(k.difference[1], frac(1, 6));
    }

    #[test]
    fn zero_round_trip() {
        let g = gp(4, 2, 2);
        let k = k_from_c(&CFunction::zero(g)).unwrap();
        assert_eq!(k, KTable::zero(g));
        for h in hyperplanes(g, Which::Full) {
            assert!(k.gamma(h.kind).is_zero());
        }
    }

    #[test]
    fn gamma_forms_agree() {
        for (r, n) in [(2, 2), (3, 2), (4, 2), (6, 2)] {
            let g = gp(r, 1, n);
            let k = KTable::generic(g);
            let c = c_from_k(&k).unwrap();
            assert_eq!(k_from_c(&c).unwrap(), k);
            for h in hyperplanes(g, Which::Full) {
                assert_eq!(gamma_from_c(&c, &h), k.gamma(h.kind));
                // γ_H has no identity component
                assert!(k.gamma(h.kind).coeff(&MonomialMatrix::identity(r, n)).is_zero());
            }
        }
    }

    #[test]
    fn a_h_matches_coefficient_formula() {
        let g = gp(4, 1, 2);
        let k = KTable::generic(g);
        for h in hyperplanes(g, Which::Full) {
            let a = k.a_h(h.kind);
            for w in h.stabilizer(g) {
                assert_eq!(a.coeff(&w), k.a_coefficient(h.kind, &w));
            }
        }
    }

    #[test]
    fn periodic_table_is_compatible() {
        let g = gp(4, 2, 2);
        let k = KTable::new(g, vec![frac(1, 3), CycNum::zero(), frac(1, 3)], frac(1, 2)).unwrap();
        let t = check_tau_compatibility(&k).unwrap();
        assert!(t.passed() && t.periodic_mod_d && t.integer_differences, "{t:?}");
        assert!(t.witness.is_none());
    }

    #[test]
    fn generic_table_is_incompatible() {
        let g = gp(4, 2, 2);
        let t = check_tau_compatibility(&KTable::generic(g)).unwrap();
        assert!(!t.a_vanishes_off_subgroup && !t.c_vanishes_off_subgroup && !t.regrouped_sum_vanishes);
        let w = t.witness.unwrap();
        assert!(!w.in_subgroup(2));
    }

    #[test]
    fn integer_shift_is_weaker() {
        // k_3 = k_1 + 1 keeps exp(2πik) periodic but breaks exact periodicity
        let g = gp(4, 2, 1);
        let k = KTable::new(g, vec![frac(1, 3), CycNum::zero(), frac(4, 3)], CycNum::zero()).unwrap();
        let t = check_tau_compatibility(&k).unwrap();
        assert!(t.integer_differences && !t.periodic_mod_d && !t.passed());
    }

    #[test]
    fn p_one_is_vacuous() {
        let t = check_tau_compatibility(&KTable::generic(gp(3, 1, 2))).unwrap();
        assert!(t.passed());
    }

    #[test]
    fn shift_offsets() {
        let g = gp(4, 2, 2);
        let k = KTable::tau_compatible_default(g);
        let once = heckman_opdam_shift(&k);
        assert_eq!(once.effective_coordinate()[1], &k.coordinate[1] - &frac(1, 2));
        assert_eq!(once.difference, k.difference);
        let twice = heckman_opdam_shift(&once);
        assert_eq!(twice.coordinate_offset, CycNum::from_int(-1));
    }

    #[test]
    fn parses_config() {
        let g = gp(3, 1, 2);
        let k = KTable::from_json(r#"{"coordinate": ["1/2", "-1/3"], "difference": ["2"]}"#, g).unwrap();
        assert_eq!(k.coordinate[2], frac(-1, 3));
        assert_eq!(k.difference[1], CycNum::from_int(2));
        assert!(KTable::from_json(r#"{"coordinate": ["1/2"]}"#, g).is_err());
        assert!(KTable::from_json(r#"{"coordinate": ["x", "1"]}"#, g).is_err());
    }
}
