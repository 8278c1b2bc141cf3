//! Multipartitions, standard tableaux, contents and the cyclic shift of
//! component indices.
//!
//! An `r`-multipartition with `r = p·d` is stored as a flat list of `r`
//! partitions; component `(i, j)` with `0 <= i < p`, `0 <= j < d` sits at
//! flat index `j·p + i`. This matches the ordering `u_{l·p+k+1} = ξ^k v_l` of
//! the Hecke parameters, so the flat index of a cell's component is the index
//! of its `T_1`-eigenvalue.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition as weakly decreasing row lengths without trailing zeros.
pub type Partition = Vec<usize>;

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A tuple of `p·d` Young diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPartition {
    p: usize,
    d: usize,
    comps: Vec<Partition>,
}

/// Enumeration order: decreasing lexicographic order on the component list.
impl Ord for MultiPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.comps.cmp(&self.comps)
    }
}

impl PartialOrd for MultiPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MultiPartition {
    /// Builds a multipartition from its components in flat order.
    pub fn new(p: usize, comps: Vec<Partition>) -> Result<Self> {
        if p == 0 || comps.is_empty() || !comps.len().is_multiple_of(p) {
            return Err(Error::BadParams(format!("{} components cannot be split into p = {p} classes", comps.len())));
        }
        let mut comps = comps;
        for c in &mut comps {
            while c.last() == Some(&0) {
                c.pop();
            }
            if c.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::BadParams(format!("{c:?} is not a partition")));
            }
        }
        Ok(MultiPartition { p, d: comps.len() / p, comps })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.p * self.d
    }

    pub fn n(&self) -> usize {
        self.comps.iter().flatten().sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.comps
    }

    /// The component `λ_j^i`.
    pub fn component(&self, i: usize, j: usize) -> &Partition {
        &self.comps[j * self.p + i]
    }

    /// Moves component `(i, j)` to `(i+1 mod p, j)`.
    pub fn shift(&self) -> Self {
        let mut comps = vec![Vec::new(); self.comps.len()];
        for (f, c) in self.comps.iter().enumerate() {
            comps[shift_index(f, self.p)] = c.clone();
        }
        MultiPartition { p: self.p, d: self.d, comps }
    }

    pub fn shift_by(&self, k: usize) -> Self {
        (0..k % self.p).fold(self.clone(), |acc, _| acc.shift())
    }

    /// Cells in reading order (component, row, column).
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (comp, part) in self.comps.iter().enumerate() {
            for (row, &len) in part.iter().enumerate() {
                for col in 0..len {
                    out.push(Cell { comp, row, col });
                }
            }
        }
        out
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let n = self.n() as u128;
        let mut num: u128 = (1..=n).product();
        let mut den: u128 = 1;
        for part in &self.comps {
            for (row, &len) in part.iter().enumerate() {
                for col in 0..len {
                    let arm = len - col - 1;
                    let leg = part[row + 1..].iter().filter(|&&l| l > col).count();
                    den *= (arm + leg + 1) as u128;
                }
            }
        }
        let g = gcd(num, den);
        num /= g;
        den /= g;
        assert_eq!(den, 1, "hook length formula is integral");
        num
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Flat index of the component `(i+1 mod p, j)` for flat index `f` of `(i, j)`.
pub fn shift_index(f: usize, p: usize) -> usize {
    let (j, i) = (f / p, f % p);
    j * p + (i + 1) % p
}

impl Serialize for MultiPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.comps.serialize(s)
    }
}

impl std::fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "-".to_string()
                } else {
                    c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

/// All `r`-multipartitions of `n` (`r = p·d`), in enumeration order.
pub fn multipartitions(r: usize, p: usize, n: usize) -> Result<Vec<MultiPartition>> {
    if p == 0 || r == 0 || !r.is_multiple_of(p) {
        return Err(Error::BadParams(format!("p = {p} does not divide r = {r}")));
    }
    fn rec(r: usize, n: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if cur.len() == r {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=n {
            for part in partitions(k) {
                cur.push(part);
                rec(r, n - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(r, n, &mut Vec::new(), &mut raw);
    let mut out: Vec<MultiPartition> = raw.into_iter().map(|comps| MultiPartition { p, d: r / p, comps }).collect();
    out.sort();
    Ok(out)
}

/// A cell of a multipartition: flat component index, 0-based row and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

impl Cell {
    /// Content `c = l - k` (column minus row).
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// A standard filling of a multipartition by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdTableau {
    shape: MultiPartition,
    /// `pos[y-1]` is the cell holding entry `y`.
    pos: Vec<Cell>,
}

/// Tableaux of one shape are ordered by their entry-position vectors.
impl Ord for StdTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape.cmp(&other.shape).then_with(|| self.pos.cmp(&other.pos))
    }
}

impl PartialOrd for StdTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl StdTableau {
    /// Builds a tableau from entry positions, checking standardness.
    pub fn from_positions(shape: MultiPartition, pos: Vec<Cell>) -> Result<Self> {
        let t = StdTableau { shape, pos };
        if !t.is_valid() {
            return Err(Error::BadParams("not a standard tableau".into()));
        }
        Ok(t)
    }

    fn is_valid(&self) -> bool {
        let mut cells = self.pos.clone();
        cells.sort();
        if cells != self.shape.cells() {
            return false;
        }
        let at: HashMap<Cell, usize> = self.pos.iter().enumerate().map(|(y, c)| (*c, y)).collect();
        self.pos.iter().enumerate().all(|(y, c)| {
            let left = (c.col > 0).then(|| Cell { col: c.col - 1, ..*c });
            let up = (c.row > 0).then(|| Cell { row: c.row - 1, ..*c });
            [left, up].into_iter().flatten().all(|nb| at[&nb] < y)
        })
    }

    pub fn shape(&self) -> &MultiPartition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn positions(&self) -> &[Cell] {
        &self.pos
    }

    /// Cell of entry `y` (1-based).
    pub fn cell(&self, y: usize) -> Cell {
        self.pos[y - 1]
    }

    /// `(a, b, c)`: component indices `i`, `j` and the content of entry `y`.
    pub fn cell_data(&self, y: usize) -> (usize, usize, i64) {
        let c = self.cell(y);
        (c.comp % self.shape.p, c.comp / self.shape.p, c.content())
    }

    /// The tableau with entries `y` and `y+1` exchanged, if still standard.
    pub fn swap(&self, y: usize) -> Option<Self> {
        let mut pos = self.pos.clone();
        pos.swap(y - 1, y);
        let t = StdTableau { shape: self.shape.clone(), pos };
        let (a, b) = (self.cell(y), self.cell(y + 1));
        let adjacent = a.comp == b.comp && a.row.abs_diff(b.row) + a.col.abs_diff(b.col) == 1;
        (!adjacent).then_some(t)
    }

    /// Moves every entry from component `(i, j)` to `(i+1 mod p, j)`.
    pub fn shift(&self) -> Self {
        let p = self.shape.p;
        StdTableau {
            shape: self.shape.shift(),
            pos: self.pos.iter().map(|c| Cell { comp: shift_index(c.comp, p), ..*c }).collect(),
        }
    }

    pub fn shift_by(&self, k: usize) -> Self {
        (0..k % self.shape.p).fold(self.clone(), |acc, _| acc.shift())
    }

    /// Per-component row-filled entry matrices.
    pub fn rows(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> =
            self.shape.comps.iter().map(|part| part.iter().map(|&l| vec![0; l]).collect()).collect();
        for (y, c) in self.pos.iter().enumerate() {
            out[c.comp][c.row][c.col] = y + 1;
        }
        out
    }
}

impl Serialize for StdTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.rows();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for comp in &rows {
            seq.serialize_element(comp)?;
        }
        seq.end()
    }
}

/// All standard tableaux of the given shape, sorted.
pub fn standard_tableaux(shape: &MultiPartition) -> Vec<StdTableau> {
    fn rec(shape: &MultiPartition, filled: &mut Vec<Vec<usize>>, pos: &mut Vec<Cell>, out: &mut Vec<StdTableau>) {
        if pos.len() == shape.n() {
            out.push(StdTableau { shape: shape.clone(), pos: pos.clone() });
            return;
        }
        for comp in 0..shape.comps.len() {
            let target = &shape.comps[comp];
            for row in 0..target.len() {
                let col = filled[comp][row];
                let above_ok = row == 0 || filled[comp][row - 1] > col;
                if col < target[row] && above_ok {
                    filled[comp][row] += 1;
                    pos.push(Cell { comp, row, col });
                    rec(shape, filled, pos, out);
                    pos.pop();
                    filled[comp][row] -= 1;
                }
            }
        }
    }
    let mut filled: Vec<Vec<usize>> = shape.comps.iter().map(|c| vec![0; c.len()]).collect();
    let mut out = Vec::new();
    rec(shape, &mut filled, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The shift-orbit of a multipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicClass {
    /// First orbit member in enumeration order.
    pub representative: MultiPartition,
    /// `|λ̄|`, the orbit length.
    pub class_size: usize,
    /// `e_λ = p/|λ̄|`.
    pub e_lambda: usize,
    /// `p/e_λ`; the stabilizer of `λ` is generated by `shift^{p/e_λ}`.
    pub stabilizer_exponent: usize,
}

pub fn cyclic_class(lambda: &MultiPartition) -> CyclicClass {
    let mut orbit = vec![lambda.clone()];
    let mut cur = lambda.shift();
    while cur != *lambda {
        orbit.push(cur.clone());
        cur = cur.shift();
    }
    let class_size = orbit.len();
    let representative = orbit.into_iter().min().expect("orbit is nonempty");
    CyclicClass { representative, class_size, e_lambda: lambda.p / class_size, stabilizer_exponent: class_size }
}

/// Index of every tableau in a basis list.
pub fn index_map(basis: &[StdTableau]) -> HashMap<Vec<Cell>, usize> {
    basis.iter().enumerate().map(|(k, t)| (t.pos.clone(), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: usize, comps: &[&[usize]]) -> MultiPartition {
        MultiPartition::new(p, comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(multipartitions(2, 2, 2).unwrap().len(), 5);
        assert_eq!(multipartitions(1, 1, 3).unwrap().len(), 3);
        assert_eq!(multipartitions(3, 3, 1).unwrap().len(), 3);
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn tableaux_counts() {
        assert_eq!(standard_tableaux(&mp(2, &[&[1], &[1]])).len(), 2);
        assert_eq!(standard_tableaux(&mp(2, &[&[2], &[1]])).len(), 3);
        let total: usize = multipartitions(2, 1, 2).unwrap().iter().map(|l| standard_tableaux(l).len().pow(2)).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn hook_formula_agrees_with_enumeration() {
        for (r, n) in [(1, 5), (2, 3), (3, 3), (2, 4)] {
            for l in multipartitions(r, 1, n).unwrap() {
                assert_eq!(standard_tableaux(&l).len() as u128, l.dimension(), "{l}");
            }
        }
    }

    #[test]
    fn contents() {
        let t = &standard_tableaux(&mp(1, &[&[2]]))[0];
        assert_eq!(t.cell_data(2), (0, 0, 1));
        let t = &standard_tableaux(&mp(1, &[&[1, 1]]))[0];
        assert_eq!(t.cell_data(2), (0, 0, -1));
        // component (i=1, j=1) at p = 2, d = 2 is flat index 3
        let t = &standard_tableaux(&mp(2, &[&[], &[], &[], &[1]]))[0];
        assert_eq!(t.cell_data(1), (1, 1, 0));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(mp(2, &[&[1], &[2]]).shift(), mp(2, &[&[2], &[1]]));
        let l = mp(1, &[&[2, 1]]);
        assert_eq!(l.shift(), l);
        for l in multipartitions(3, 3, 3).unwrap() {
            assert_eq!(l.shift_by(3), l);
            assert_eq!(l.shift().shift().shift(), l);
        }
    }

    #[test]
    fn cyclic_classes() {
        let c = cyclic_class(&mp(2, &[&[1], &[1]]));
        assert_eq!((c.class_size, c.e_lambda), (1, 2));
        let c = cyclic_class(&mp(2, &[&[2], &[]]));
        assert_eq!((c.class_size, c.e_lambda), (2, 1));
        let c = cyclic_class(&mp(1, &[&[2]]));
        assert_eq!(c.e_lambda, 1);
    }

    #[test]
    fn swap_detects_adjacency() {
        let t = &standard_tableaux(&mp(1, &[&[2]]))[0];
        assert!(t.swap(1).is_none());
        let ts = standard_tableaux(&mp(2, &[&[1], &[1]]));
        assert_eq!(ts[0].swap(1).unwrap(), ts[1]);
    }

    #[test]
    fn serialization() {
        let l = mp(2, &[&[2, 1], &[]]);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[[2,1],[]]");
        let t = &standard_tableaux(&l)[0];
        assert_eq!(serde_json::to_string(t).unwrap(), "[[[1,2],[3]],[]]");
    }
}
