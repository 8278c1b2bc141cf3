//! The basis `{X^λ T_w : λ ∈ C_r, w ∈ S_n}` of `H_{r,1,n}` realized inside
//! `Π = ⊕_μ V(μ)`, and the identification of the `τ`-fixed subalgebra with
//! `H_{r,p,n}`.

use std::collections::HashMap;

use serde::Serialize;

use crate::clifford::{shift_relabelling, tau_twist};
use crate::cycfield::{CycMatrix, CycNum, Echelon};
use crate::error::{Error, Result};
use crate::refgroup::permutations;
use crate::seminormal::{build_all, HeckeParams, Rep};

/// Default cap on `r^n n!` for basis evaluation.
pub const DEFAULT_BASIS_CAP: u128 = 4096;

/// `λ ∈ L_p` decided through an explicit decomposition `λ = q + p·l` with
/// `q ∈ Q = ⊕ Z(ε_i - ε_{i-1})` and `l ∈ L`.
///
/// Returns the coefficients of `q` on `ε_i - ε_{i-1}` (`i = 2..n`) and `l`.
pub fn decompose_lp(lambda: &[i64], p: i64) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = lambda.len();
    let total: i64 = lambda.iter().sum();
    if total.rem_euclid(p) != 0 {
        return None;
    }
    let mut l = vec![0; n];
    l[0] = total / p;
    let q: Vec<i64> = (0..n).map(|i| lambda[i] - p * l[i]).collect();
    // q = Σ_{i>=2} c_i (ε_i - ε_{i-1}) gives c_n = q_n, c_i = q_i + c_{i+1}
    let mut c = vec![0; n];
    for i in (1..n).rev() {
        c[i] = q[i] + if i + 1 < n { c[i + 1] } else { 0 };
    }
    let mut rebuilt = vec![0; n];
    for i in 1..n {
        rebuilt[i] += c[i];
        rebuilt[i - 1] -= c[i];
    }
    let ok = (0..n).all(|i| rebuilt[i] + p * l[i] == lambda[i]);
    ok.then(|| (c[1..].to_vec(), l))
}

/// `λ ∈ C_r`: all coordinates in `[0, r)`.
pub fn in_cr(lambda: &[i64], r: i64) -> bool {
    lambda.iter().all(|&x| (0..r).contains(&x))
}

/// Adjacent transpositions (0-based positions `k, k+1`) whose product, read
/// left to right, sorts `w`; the count equals the number of inversions.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut a = w.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..a.len().saturating_sub(1)).find(|&k| a[k] > a[k + 1]) {
        a.swap(k, k + 1);
        word.push(k);
    }
    word.reverse();
    word
}

/// The faithful module `Π = ⊕_μ V(μ)` together with `τ` transported to it.
pub struct RegularImage {
    pub params: HeckeParams,
    pub reps: Vec<Rep>,
    /// For block `λ`: index of the block `shift λ` and the relabelling
    /// `R_λ : V(λ) → V(shift λ)`.
    shift: Vec<(usize, CycMatrix, CycMatrix)>,
}

/// An element of `Π` as one matrix per block.
pub type Blocks = Vec<CycMatrix>;

impl RegularImage {
    pub fn new(params: &HeckeParams) -> Result<Self> {
        let reps = build_all(params)?;
        let index: HashMap<_, _> = reps.iter().enumerate().map(|(k, r)| (r.shape.clone(), k)).collect();
        let mut shift = Vec::with_capacity(reps.len());
        for rep in &reps {
            let target = index[&rep.shape.shift()];
            let twisted = tau_twist(&reps[target]);
            let r = shift_relabelling(rep, &twisted, 1)?;
            let r_inv = r.transpose();
            shift.push((target, r, r_inv));
        }
        Ok(RegularImage { params: params.clone(), reps, shift })
    }

    pub fn total_dim(&self) -> usize {
        self.reps.iter().map(|r| r.dim() * r.dim()).sum()
    }

    pub fn identity(&self) -> Blocks {
        self.reps.iter().map(|r| CycMatrix::identity(r.dim())).collect()
    }

    /// Image of a word in `T_1^{±1}, …, T_n^{±1}` (letter `±i`).
    pub fn eval_word(&self, word: &[i32]) -> Result<Blocks> {
        self.reps.iter().map(|r| r.eval_word(word)).collect()
    }

    pub fn mul(&self, a: &Blocks, b: &Blocks) -> Blocks {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    pub fn vectorize(&self, h: &Blocks) -> Vec<CycNum> {
        h.iter().flat_map(CycMatrix::vectorize).collect()
    }

    /// `τ` on the image: block `λ` of `τ(h)` is `R_λ^{-1} h_{shift λ} R_λ`.
    pub fn tau(&self, h: &Blocks) -> Blocks {
        self.shift.iter().map(|(target, r, r_inv)| &(r_inv * &h[*target]) * r).collect()
    }

    /// Matrix of `τ` on vectorized elements.
    pub fn tau_matrix(&self) -> CycMatrix {
        let n = self.total_dim();
        let mut cols = Vec::with_capacity(n);
        let mut offset = 0;
        for (b, rep) in self.reps.iter().enumerate() {
            let d = rep.dim();
            for j in 0..d {
                for i in 0..d {
                    let mut h: Blocks = self.reps.iter().map(|r| CycMatrix::zeros(r.dim(), r.dim())).collect();
                    h[b].set(i, j, CycNum::one());
                    cols.push(self.vectorize(&self.tau(&h)));
                }
            }
            offset += d * d;
        }
        debug_assert_eq!(offset, n);
        CycMatrix::from_rows(cols).transpose()
    }
}

/// One basis element `X^λ T_w`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisElement {
    pub lattice: Vec<i64>,
    /// `w` as 0-based images.
    pub perm: Vec<usize>,
    /// The evaluated word (letters `±i` for `T_i^{±1}`).
    pub word: Vec<i32>,
    pub tau_weight: u32,
    #[serde(skip)]
    pub image: Blocks,
}

/// Word for `X^{ε_i} = T_i ⋯ T_2 T_1 T_2 ⋯ T_i` (1-based `i`).
pub fn jm_word(i: usize) -> Vec<i32> {
    let mut w: Vec<i32> = (2..=i as i32).rev().collect();
    w.push(1);
    w.extend(2..=i as i32);
    w
}

/// Evaluates all `r^n n!` elements `X^λ T_w` and checks their independence.
pub fn full_basis_images(img: &RegularImage, cap: u128) -> Result<Vec<BasisElement>> {
    let gp = img.params.gp;
    let total = gp.full_order();
    if total > cap {
        return Err(Error::CapExceeded { requested: total, cap });
    }
    let n = gp.n;
    let r = gp.r as i64;
    let x_images: Vec<Blocks> = (1..=n).map(|i| img.eval_word(&jm_word(i))).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(total as usize);
    let count = (r as usize).pow(n as u32);
    let perms = permutations(n);
    for code in 0..count {
        let mut lattice = vec![0i64; n];
        let mut c = code;
        for x in lattice.iter_mut().rev() {
            *x = (c % r as usize) as i64;
            c /= r as usize;
        }
        let mut xl = img.identity();
        let mut word = Vec::new();
        for (i, &e) in lattice.iter().enumerate() {
            for _ in 0..e {
                xl = img.mul(&xl, &x_images[i]);
                word.extend(jm_word(i + 1));
            }
        }
        for w in &perms {
            let tw: Vec<i32> = reduced_word(w).iter().map(|&k| k as i32 + 2).collect();
            let image = img.mul(&xl, &img.eval_word(&tw)?);
            let mut full_word = word.clone();
            full_word.extend(&tw);
            let weight = (lattice.iter().sum::<i64>() % gp.p as i64) as u32;
            out.push(BasisElement {
                lattice: lattice.clone(),
                perm: w.clone(),
                word: full_word,
                tau_weight: weight,
                image,
            });
        }
    }
    let mut ech = Echelon::new(img.total_dim());
    for b in &out {
        ech.insert(&img.vectorize(&b.image));
    }
    if ech.rank() != total as usize {
        return Err(Error::RankDeficient { rank: ech.rank(), expected: total as usize });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedSubspaceReport {
    pub total_dim: usize,
    pub expected_fixed_dim: usize,
    /// Dimension of `ker(τ - 1)` on `Π`.
    pub fixed_dim: usize,
    /// Span of the basis elements of `τ`-weight 0.
    pub weight_zero_dim: usize,
    /// Span of `X^λ T_w` with `λ ∈ L_p ∩ C_r`.
    pub lp_dim: usize,
    /// Span of words in `t_0, t_1, t_i`.
    pub subalgebra_dim: usize,
    /// Longest word needed to saturate the subalgebra span.
    pub subalgebra_word_length: usize,
}

fn echelon_of(vectors: impl IntoIterator<Item = Vec<CycNum>>, dim: usize) -> Echelon {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(&v);
    }
    e
}

fn same_span(a: &Echelon, a_vecs: &[Vec<CycNum>], b: &Echelon, b_vecs: &[Vec<CycNum>]) -> Option<usize> {
    if let Some(k) = a_vecs.iter().position(|v| !b.contains(v)) {
        return Some(k);
    }
    if let Some(k) = b_vecs.iter().position(|v| !a.contains(v)) {
        return Some(k);
    }
    (a.rank() != b.rank()).then_some(0)
}

/// Compares the `τ`-fixed subspace of `Π` with the weight-0 basis span, the
/// `L_p ∩ C_r` span and the span of subalgebra words.
pub fn fixed_subspace_check(params: &HeckeParams, cap: u128) -> Result<FixedSubspaceReport> {
    let img = RegularImage::new(params)?;
    let basis = full_basis_images(&img, cap)?;
    let gp = params.gp;
    let total = img.total_dim();
    let expected = total / gp.p as usize;

    // τ acts diagonally on the basis with scalar ξ^{|λ|}
    for b in &basis {
        let scalar = params.xi.powu(b.lattice.iter().sum::<i64>() as u64);
        let scaled: Blocks = b.image.iter().map(|m| m.scale(&scalar)).collect();
        if img.tau(&b.image) != scaled {
            return Err(Error::SpanMismatch(format!("τ does not scale X^{:?} T_{:?} by ξ^|λ|", b.lattice, b.perm)));
        }
    }

    let tau = img.tau_matrix();
    let fixed: Vec<Vec<CycNum>> =
        (&tau - &CycMatrix::identity(total)).nullspace().into_iter().map(|v| v.entries().to_vec()).collect();
    let fixed_e = echelon_of(fixed.clone(), total);

    let weight_zero: Vec<Vec<CycNum>> =
        basis.iter().filter(|b| b.tau_weight == 0).map(|b| img.vectorize(&b.image)).collect();
    let wz_e = echelon_of(weight_zero.clone(), total);

    let lp: Vec<Vec<CycNum>> = basis
        .iter()
        .filter(|b| in_cr(&b.lattice, gp.r as i64) && decompose_lp(&b.lattice, gp.p as i64).is_some())
        .map(|b| img.vectorize(&b.image))
        .collect();
    let lp_e = echelon_of(lp.clone(), total);

    let (sub_vecs, sub_e, length) = subalgebra_span(&img)?;

    if wz_e.rank() != expected {
        return Err(Error::SpanMismatch(format!("weight-0 span has dimension {}, expected {expected}", wz_e.rank())));
    }
    if let Some(k) = same_span(&fixed_e, &fixed, &wz_e, &weight_zero) {
        return Err(Error::SpanMismatch(format!("fixed space and weight-0 span differ (witness {k})")));
    }
    if let Some(k) = same_span(&lp_e, &lp, &wz_e, &weight_zero) {
        return Err(Error::SpanMismatch(format!("L_p span and weight-0 span differ (witness {k})")));
    }
    if let Some(k) = sub_vecs.iter().position(|v| !wz_e.contains(v)) {
        return Err(Error::SpanMismatch(format!("subalgebra word {k} lies outside the weight-0 span")));
    }
    if sub_e.rank() != wz_e.rank() {
        return Err(Error::SpanMismatch(format!(
            "subalgebra span has dimension {}, expected {}",
            sub_e.rank(),
            wz_e.rank()
        )));
    }
    Ok(FixedSubspaceReport {
        total_dim: total,
        expected_fixed_dim: expected,
        fixed_dim: fixed_e.rank(),
        weight_zero_dim: wz_e.rank(),
        lp_dim: lp_e.rank(),
        subalgebra_dim: sub_e.rank(),
        subalgebra_word_length: length,
    })
}

/// Words `t_0 = T_1^p`, `t_1 = T_1^{-1}T_2T_1`, `t_i = T_i`.
pub fn subalgebra_generator_words(p: u32, n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![1; p as usize]];
    if n >= 2 {
        out.push(vec![-1, 2, 1]);
        out.extend((2..=n as i32).map(|i| vec![i]));
    }
    out
}

/// Saturates the span of products of subalgebra generators; returns the
/// independent products found, their echelon and the longest word used.
fn subalgebra_span(img: &RegularImage) -> Result<(Vec<Vec<CycNum>>, Echelon, usize)> {
    let gens: Vec<Blocks> = subalgebra_generator_words(img.params.gp.p, img.params.gp.n)
        .iter()
        .map(|w| img.eval_word(w))
        .collect::<Result<_>>()?;
    let total = img.total_dim();
    let mut ech = Echelon::new(total);
    let id = img.identity();
    let mut vecs = vec![img.vectorize(&id)];
    ech.insert(&vecs[0]);
    let mut frontier = vec![id];
    let mut length = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for g in &gens {
                let prod = img.mul(h, g);
                let v = img.vectorize(&prod);
                if ech.insert(&v) {
                    vecs.push(v);
                    next.push(prod);
                }
            }
        }
        if !next.is_empty() {
            length += 1;
        }
        frontier = next;
    }
    Ok((vecs, ech, length))
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub words_checked: usize,
    pub subalgebra_words_checked: usize,
}

/// Renders a word over the affine alphabet (`X = T_1`).
pub fn format_word(word: &[i32]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&l| match l {
            1 => "X".to_string(),
            -1 => "X^-1".to_string(),
            l if l > 0 => format!("T{l}"),
            l => format!("T{}^-1", -l),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// All words of length at most `len` over `letters`.
fn words_up_to(letters: &[i32], len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut v: Vec<i32> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks `τ(φ(w)) = ξ^{#X - #X^{-1}} φ(w)` on all words of length at most
/// `len` over `X^{±1}, T_2, …, T_n`, that nonzero-weight words leave the
/// weight-0 span, and that products of `X^p, X^{-1}T_2X, T_i` land in it.
pub fn commutative_diagram_check(params: &HeckeParams, len: usize) -> Result<DiagramReport> {
    let img = RegularImage::new(params)?;
    let gp = params.gp;
    let total = img.total_dim();
    let basis = full_basis_images(&img, u128::MAX)?;
    let wz = echelon_of(basis.iter().filter(|b| b.tau_weight == 0).map(|b| img.vectorize(&b.image)), total);
    let mut letters = vec![1, -1];
    letters.extend(2..=gp.n as i32);
    let words = words_up_to(&letters, len);
    for w in &words {
        let h = img.eval_word(w)?;
        let weight: i64 = w
            .iter()
            .map(|&l| {
                if l == 1 {
                    1
                } else if l == -1 {
                    -1
                } else {
                    0
                }
            })
            .sum();
        let scalar = params.xi.pow(weight).expect("root of unity");
        let scaled: Blocks = h.iter().map(|m| m.scale(&scalar)).collect();
        if img.tau(&h) != scaled {
            return Err(Error::DiagramFailure(format_word(w)));
        }
        let in_a = wz.contains(&img.vectorize(&h));
        if in_a != (weight.rem_euclid(gp.p as i64) == 0) {
            return Err(Error::DiagramFailure(format!("{} (weight-0 span membership)", format_word(w))));
        }
    }
    let sub_letters = subalgebra_generator_words(gp.p, gp.n);
    let idx: Vec<i32> = (0..sub_letters.len() as i32).collect();
    let sub_words = words_up_to(&idx, len);
    for w in &sub_words {
        let flat: Vec<i32> = w.iter().flat_map(|&k| sub_letters[k as usize].iter().copied()).collect();
        let h = img.eval_word(&flat)?;
        if !wz.contains(&img.vectorize(&h)) {
            return Err(Error::DiagramFailure(format!(
                "{} (subalgebra word outside the fixed span)",
                format_word(&flat)
            )));
        }
    }
    Ok(DiagramReport { words_checked: words.len(), subalgebra_words_checked: sub_words.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refgroup::GroupParams;

    fn params(r: u32, p: u32, n: usize) -> HeckeParams {
        HeckeParams::default_for(GroupParams::new(r, p, n).unwrap()).unwrap()
    }

    #[test]
    fn lp_membership_matches_degree_condition() {
        for p in 1..=4i64 {
            for a in 0..6 {
                for b in 0..6 {
                    for c in 0..6 {
                        let l = [a, b, c];
                        assert_eq!(decompose_lp(&l, p).is_some(), (a + b + c) % p == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_words_are_reduced() {
        for w in permutations(4) {
            let word = reduced_word(&w);
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(word.len(), inversions);
        }
    }

    #[test]
    fn basis_ranks() {
        let img = RegularImage::new(&params(2, 1, 2)).unwrap();
        let b = full_basis_images(&img, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b[0].image.iter().all(CycMatrix::is_identity));
        let img = RegularImage::new(&params(3, 1, 2)).unwrap();
        assert_eq!(full_basis_images(&img, DEFAULT_BASIS_CAP).unwrap().len(), 18);
    }

    #[test]
    fn tau_fixed_nullspace_222() {
        let img = RegularImage::new(&params(2, 2, 2)).unwrap();
        let tau = img.tau_matrix();
        assert_eq!(tau.rows(), 8);
        assert_eq!((&tau - &CycMatrix::identity(8)).nullspace().len(), 4);
    }

    #[test]
    fn fixed_subspace_222() {
        let r = fixed_subspace_check(&params(2, 2, 2), DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(r.fixed_dim, 4);
        assert_eq!(r.subalgebra_dim, 4);
    }

    #[test]
    fn fixed_subspace_p1_is_everything() {
        let r = fixed_subspace_check(&params(2, 1, 2), DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(r.fixed_dim, 8);
    }

    #[test]
    fn diagram_222() {
        let rep = commutative_diagram_check(&params(2, 2, 2), 3).unwrap();
        assert!(rep.words_checked > 1);
        assert_eq!(format_word(&[1, 1, 2]), "X X T2");
        assert_eq!(format_word(&[]), "1");
    }
}
