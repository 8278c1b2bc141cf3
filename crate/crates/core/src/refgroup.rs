//! The imprimitive reflection groups `G(r,1,n)` and `G(r,p,n)` as monomial
//! matrices, with their reflections and reflecting hyperplanes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cycfield::{zeta, CycMatrix, CycNum};
use crate::error::{Error, Result};

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

/// The triple `(r, p, n)` with `p | r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub r: u32,
    pub p: u32,
    pub n: usize,
}

impl GroupParams {
    pub fn new(r: u32, p: u32, n: usize) -> Result<Self> {
        if r == 0 || p == 0 || n == 0 {
            return Err(Error::BadParams(format!("r, p, n must be positive (got {r}, {p}, {n})")));
        }
        if !r.is_multiple_of(p) {
            return Err(Error::BadParams(format!("p = {p} does not divide r = {r}")));
        }
        Ok(GroupParams { r, p, n })
    }

    /// `d = r/p`.
    pub fn d(&self) -> u32 {
        self.r / self.p
    }

    /// `|G(r,1,n)| = r^n n!`.
    pub fn full_order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        (self.r as u128).pow(self.n as u32) * fact
    }

    pub fn order(&self, which: Which) -> u128 {
        match which {
            Which::Full => self.full_order(),
            Which::Subgroup => self.full_order() / self.p as u128,
        }
    }
}

/// Selects `G(r,1,n)` or its index-`p` subgroup `G(r,p,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Full,
    Subgroup,
}

/// The monomial matrix with entry `ζ_r^{exps[i]}` in row `perm[i]`, column `i`.
///
/// Indices are 0-based internally; serialization uses 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    r: u32,
    perm: Vec<usize>,
    exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn identity(r: u32, n: usize) -> Self {
        MonomialMatrix { r, perm: (0..n).collect(), exps: vec![0; n] }
    }

    /// Builds an element from 0-based images and exponents (reduced mod `r`).
    pub fn new(r: u32, perm: Vec<usize>, exps: Vec<i64>) -> Result<Self> {
        let n = perm.len();
        if exps.len() != n {
            return Err(Error::DimensionMismatch(format!("{n} images, {} exponents", exps.len())));
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(Error::BadParams(format!("{perm:?} is not a permutation")));
            }
            seen[i] = true;
        }
        let exps = exps.iter().map(|&e| e.rem_euclid(r as i64) as u32).collect();
        Ok(MonomialMatrix { r, perm, exps })
    }

    /// `diag(ζ^{exps})`.
    pub fn diagonal(r: u32, exps: &[i64]) -> Self {
        Self::new(r, (0..exps.len()).collect(), exps.to_vec()).expect("identity permutation")
    }

    /// The transposition of coordinates `i` and `j` (0-based).
    pub fn transposition(r: u32, n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(r, n);
        g.perm.swap(i, j);
        g
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent sum `|exps|` (not reduced).
    pub fn exp_sum(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Membership in `G(r,p,n)`: `|exps| ≡ 0 (mod p)`.
    pub fn in_subgroup(&self, p: u32) -> bool {
        self.exp_sum().is_multiple_of(p as u64)
    }

    pub fn mul(&self, h: &Self) -> Self {
        assert_eq!(self.r, h.r);
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            let j = h.perm[i];
            perm[i] = self.perm[j];
            exps[i] = (h.exps[i] + self.exps[j]) % self.r;
        }
        MonomialMatrix { r: self.r, perm, exps }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = (self.r - self.exps[i]) % self.r;
        }
        MonomialMatrix { r: self.r, perm, exps }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(self.r, self.rank()), |acc, _| acc.mul(&base))
    }

    pub fn perm_sign(&self) -> i64 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut sign = 1;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `det = sign(perm)·ζ_r^{|exps|}`.
    pub fn det(&self) -> CycNum {
        CycNum::from_int(self.perm_sign()) * zeta(self.r, self.exp_sum() as i64)
    }

    /// Cycles of the underlying permutation, each paired with the product of
    /// the entries along it (as an exponent of `ζ_r`).
    pub fn cycles(&self) -> Vec<(Vec<usize>, u32)> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                e = (e + self.exps[i]) % self.r;
                i = self.perm[i];
            }
            out.push((cyc, e));
        }
        out
    }

    pub fn to_matrix(&self) -> CycMatrix {
        let n = self.perm.len();
        let mut m = CycMatrix::zeros(n, n);
        for i in 0..n {
            m.set(self.perm[i], i, zeta(self.r, self.exps[i] as i64));
        }
        m
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        let mut out = vec![CycNum::zero(); v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = zeta(self.r, self.exps[i] as i64) * &v[i];
        }
        out
    }

    /// Image of a linear form under the contragredient action `f ↦ f∘g^{-1}`.
    pub fn apply_dual(&self, f: &[CycNum]) -> Vec<CycNum> {
        // f(g^{-1}x) = Σ_i f_i ζ^{-exps[i]} x_{perm[i]}
        let mut out = vec![CycNum::zero(); f.len()];
        for i in 0..f.len() {
            out[self.perm[i]] = zeta(self.r, -(self.exps[i] as i64)) * &f[i];
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    perm: Vec<usize>,
    exps: Vec<u32>,
}

impl Serialize for MonomialMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialRepr { perm: self.perm.iter().map(|i| i + 1).collect(), exps: self.exps.clone() }.serialize(s)
    }
}

/// Generators of `G(r,1,n)` (`S_1, …, S_n`) or of `G(r,p,n)`
/// (`s_0 = S_1^p, s_1 = S_1^{-1} S_2 S_1, s_i = S_i`).
pub fn generators(gp: GroupParams, which: Which) -> Result<Vec<MonomialMatrix>> {
    let gp = GroupParams::new(gp.r, gp.p, gp.n)?;
    let full = full_generators(gp.r, gp.n);
    Ok(match which {
        Which::Full => full,
        Which::Subgroup => {
            let s1 = &full[0];
            let mut out = vec![s1.pow(gp.p as i64)];
            if gp.n >= 2 {
                out.push(s1.inverse().mul(&full[1]).mul(s1));
                out.extend(full[1..].iter().cloned());
            }
            out
        }
    })
}

fn full_generators(r: u32, n: usize) -> Vec<MonomialMatrix> {
    let mut e = vec![0; n];
    e[0] = 1;
    let mut out = vec![MonomialMatrix::diagonal(r, &e)];
    for i in 1..n {
        out.push(MonomialMatrix::transposition(r, n, i - 1, i));
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Every element of the chosen group, ordered by permutation then exponents.
pub fn enumerate(gp: GroupParams, which: Which, cap: u128) -> Result<Vec<MonomialMatrix>> {
    let requested = gp.full_order();
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    let n = gp.n;
    let mut out = Vec::with_capacity(gp.order(which) as usize);
    let exp_count = (gp.r as usize).pow(n as u32);
    for perm in permutations(n) {
        for code in 0..exp_count {
            let mut c = code;
            let mut exps = vec![0u32; n];
            for e in exps.iter_mut().rev() {
                *e = (c % gp.r as usize) as u32;
                c /= gp.r as usize;
            }
            let g = MonomialMatrix { r: gp.r, perm: perm.clone(), exps };
            if which == Which::Full || g.in_subgroup(gp.p) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// A reflecting hyperplane of `G(r,1,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HyperplaneKind {
    /// `x_i = 0`.
    Coordinate(usize),
    /// `x_i - ζ_r^k x_j = 0` with `i < j` and `0 <= k < r`.
    Difference(usize, usize, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    pub kind: HyperplaneKind,
    /// Order of the pointwise stabilizer in the ambient group.
    pub e_h: u32,
}

impl HyperplaneKind {
    /// Normalizes `x_i - ζ^k x_j` to `i < j`.
    pub fn difference(r: u32, i: usize, j: usize, k: i64) -> Self {
        assert_ne!(i, j);
        if i < j {
            HyperplaneKind::Difference(i, j, k.rem_euclid(r as i64) as u32)
        } else {
            // x_j - ζ^k x_i is proportional to x_i - ζ^{-k} x_j
            HyperplaneKind::Difference(j, i, (-k).rem_euclid(r as i64) as u32)
        }
    }

    /// Coefficients of the linear form `α_H`.
    pub fn alpha(&self, r: u32, n: usize) -> Vec<CycNum> {
        let mut a = vec![CycNum::zero(); n];
        match *self {
            HyperplaneKind::Coordinate(i) => a[i] = CycNum::one(),
            HyperplaneKind::Difference(i, j, k) => {
                a[i] = CycNum::one();
                a[j] = -zeta(r, k as i64);
            }
        }
        a
    }

    /// The vector `v_H` spanning the non-trivial eigenline, scaled so that
    /// `⟨α_H, v_H⟩ = 2` for difference hyperplanes and `1` for coordinate ones.
    pub fn root(&self, r: u32, n: usize) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(); n];
        match *self {
            HyperplaneKind::Coordinate(i) => v[i] = CycNum::one(),
            HyperplaneKind::Difference(i, j, k) => {
                v[i] = CycNum::one();
                v[j] = -zeta(r, -(k as i64));
            }
        }
        v
    }

    /// The element of `G(r,1,n)` acting on the line `v_H` by `ζ_r^m`
    /// (`m` taken mod `r` for coordinate hyperplanes, mod 2 for differences).
    pub fn stabilizer_element(&self, r: u32, n: usize, m: u32) -> MonomialMatrix {
        match *self {
            HyperplaneKind::Coordinate(i) => {
                let mut e = vec![0; n];
                e[i] = m as i64;
                MonomialMatrix::diagonal(r, &e)
            }
            HyperplaneKind::Difference(i, j, k) => {
                if m.is_multiple_of(2) {
                    return MonomialMatrix::identity(r, n);
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(i, j);
                let mut e = vec![0i64; n];
                e[i] = r as i64 - k as i64;
                e[j] = k as i64;
                MonomialMatrix::new(r, perm, e).expect("transposition")
            }
        }
    }

    pub fn is_coordinate(&self) -> bool {
        matches!(self, HyperplaneKind::Coordinate(_))
    }
}

impl Hyperplane {
    /// Elements of the pointwise stabilizer `W_H` inside the chosen group,
    /// starting with the identity.
    pub fn stabilizer(&self, gp: GroupParams) -> Vec<MonomialMatrix> {
        let step = match (self.kind, self.e_h) {
            (HyperplaneKind::Coordinate(_), e) => gp.r / e,
            _ => 1,
        };
        (0..self.e_h).map(|m| self.kind.stabilizer_element(gp.r, gp.n, m * step)).collect()
    }
}

/// The hyperplane fixed pointwise by a reflection, or `None` if `g` is not a
/// reflection.
pub fn reflection_hyperplane(g: &MonomialMatrix) -> Option<HyperplaneKind> {
    let moved: Vec<usize> = (0..g.rank()).filter(|&i| g.perm[i] != i).collect();
    match moved.len() {
        0 => {
            let nz: Vec<usize> = (0..g.rank()).filter(|&i| g.exps[i] != 0).collect();
            (nz.len() == 1).then(|| HyperplaneKind::Coordinate(nz[0]))
        }
        2 => {
            let (i, j) = (moved[0], moved[1]);
            let others_trivial = (0..g.rank()).all(|k| k == i || k == j || g.exps[k] == 0);
            let balanced = (g.exps[i] + g.exps[j]).is_multiple_of(g.r);
            (others_trivial && balanced).then(|| HyperplaneKind::difference(g.r, i, j, g.exps[j] as i64))
        }
        _ => None,
    }
}

/// All reflections of the chosen group paired with their hyperplanes.
pub fn reflections(gp: GroupParams, which: Which) -> Vec<(MonomialMatrix, Hyperplane)> {
    let mut out = Vec::new();
    for h in hyperplanes(gp, which) {
        for g in h.stabilizer(gp).into_iter().skip(1) {
            out.push((g, h));
        }
    }
    out
}

/// Reflecting hyperplanes of the chosen group, coordinate ones first.
pub fn hyperplanes(gp: GroupParams, which: Which) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    let coord_e = match which {
        Which::Full => gp.r,
        Which::Subgroup => gp.d(),
    };
    if coord_e > 1 {
        for i in 0..gp.n {
            out.push(Hyperplane { kind: HyperplaneKind::Coordinate(i), e_h: coord_e });
        }
    }
    for i in 0..gp.n {
        for j in i + 1..gp.n {
            for k in 0..gp.r {
                out.push(Hyperplane { kind: HyperplaneKind::Difference(i, j, k), e_h: 2 });
            }
        }
    }
    out
}

/// Orbits of the group on its reflecting hyperplanes, each sorted, listed in
/// order of their smallest member. The orbit of coordinate hyperplanes (`C_0`)
/// comes first when present.
pub fn hyperplane_orbits(gp: GroupParams, which: Which) -> Result<Vec<Vec<Hyperplane>>> {
    let gens = generators(gp, which)?;
    let all = hyperplanes(gp, which);
    let by_kind: BTreeMap<HyperplaneKind, Hyperplane> = all.iter().map(|h| (h.kind, *h)).collect();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for h in &all {
        if seen.contains(&h.kind) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut queue = VecDeque::from([h.kind]);
        seen.insert(h.kind);
        while let Some(k) = queue.pop_front() {
            orbit.insert(k);
            let s = k.stabilizer_element(gp.r, gp.n, if k.is_coordinate() { gp.r / by_kind[&k].e_h } else { 1 });
            for g in &gens {
                let conj = g.mul(&s).mul(&g.inverse());
                let img = reflection_hyperplane(&conj).expect("conjugate of a reflection");
                if seen.insert(img) {
                    queue.push_back(img);
                }
            }
        }
        orbits.push(orbit.into_iter().map(|k| by_kind[&k]).collect());
    }
    Ok(orbits)
}

/// Checks that the reflections of `G(r,1,n)` outside `G(r,p,n)` are exactly
/// the coordinate-hyperplane reflections `w` with `det(w)^{r/p} ≠ 1`.
pub fn verify_reflection_difference(gp: GroupParams) -> bool {
    let sub: BTreeSet<MonomialMatrix> = reflections(gp, Which::Subgroup).into_iter().map(|(g, _)| g).collect();
    let lhs: BTreeSet<MonomialMatrix> =
        reflections(gp, Which::Full).into_iter().map(|(g, _)| g).filter(|g| !sub.contains(g)).collect();
    let rhs: BTreeSet<MonomialMatrix> = reflections(gp, Which::Full)
        .into_iter()
        .filter(|(g, h)| h.kind.is_coordinate() && !g.det().powu(gp.d() as u64).is_one())
        .map(|(g, _)| g)
        .collect();
    lhs == rhs
}

/// The automorphism `τ` on the group-algebra basis: `g ↦ ξ^{|exps(g)|} g`.
pub fn tau_on_group_element(g: &MonomialMatrix, xi: &CycNum) -> (CycNum, MonomialMatrix) {
    (xi.powu(g.exp_sum()), g.clone())
}

/// Outcome of comparing `C[G(r,1,n)]^τ` with `C[G(r,p,n)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFixedReport {
    pub gp: GroupParams,
    pub full_order: usize,
    /// Number of group elements with `ξ^{|exps|} = 1`.
    pub fixed_dim: usize,
    /// Order of the group generated by `s_0, …, s_{n-1}`.
    pub subgroup_order: usize,
    /// The fixed basis elements are exactly the generated subgroup.
    pub coincide: bool,
}

/// Since `τ` is diagonal on the basis `{g}`, the fixed space is spanned by
/// the `g` with `ξ^{|exps(g)|} = 1`; compares that set with the closure of
/// the `G(r,p,n)` generators.
pub fn tau_fixed_group_check(gp: GroupParams, cap: u128) -> Result<GroupFixedReport> {
    let xi = zeta(gp.p, 1);
    let full = enumerate(gp, Which::Full, cap)?;
    let fixed: BTreeSet<MonomialMatrix> = full
        .iter()
        .filter(|g| {
            let (c, _) = tau_on_group_element(g, &xi);
            c.is_one()
        })
        .cloned()
        .collect();
    let sub: BTreeSet<MonomialMatrix> = closure(&generators(gp, Which::Subgroup)?, cap as usize)?.into_iter().collect();
    Ok(GroupFixedReport {
        gp,
        full_order: full.len(),
        fixed_dim: fixed.len(),
        subgroup_order: sub.len(),
        coincide: fixed == sub && sub.len() as u128 == gp.order(Which::Subgroup),
    })
}

/// Closes a generating set under multiplication (breadth first, so the
/// result starts with the identity and the generators).
pub fn closure(gens: &[MonomialMatrix], cap: usize) -> Result<Vec<MonomialMatrix>> {
    let first = gens.first().ok_or_else(|| Error::BadParams("empty generating set".into()))?;
    let id = MonomialMatrix::identity(first.r, first.rank());
    let mut seen = BTreeSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if out.len() as u128 >= cap as u128 {
                    return Err(Error::CapExceeded { requested: cap as u128 + 1, cap: cap as u128 });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}
