//! Exact integer homology of planar open books.
//!
//! The underlying 3-manifold of a planar open book is surgery on a framed
//! link read off the monodromy word; its first homology is the cokernel of
//! the (symmetric) linking matrix. All arithmetic is exact over `BigInt`;
//! the Smith normal form uses smallest-magnitude pivoting throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::book::{Curve, OpenBook};
use crate::error::{Error, Result};

/// Dense matrix over the integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "rows must have equal length"
        );
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| BigInt::from(v)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        i * self.cols + j
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        let k = self.idx(i, j);
        self.data[k] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_i -= q * row_t`
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * self.get(t, j);
            let k = self.idx(i, j);
            self.data[k] -= v;
        }
    }

    /// `col_j -= q * col_t`
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * self.get(i, t);
            let k = self.idx(i, j);
            self.data[k] -= v;
        }
    }

    /// `row_t += row_i`
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j).clone();
            let k = self.idx(t, j);
            self.data[k] += v;
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix at `t`.
    fn min_abs_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Diagonal of the Smith normal form: non-negative invariant factors
    /// `d_1 | d_2 | ... | d_s` followed by zeros, of length `min(rows, cols)`.
    ///
    /// Pivoting always selects a smallest-magnitude entry, so every row and
    /// column reduction strictly shrinks the pivot until it divides its whole
    /// row, column, and trailing submatrix.
    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let k = m.rows.min(m.cols);
        for t in 0..k {
            // Ends when the trailing submatrix is zero or pivot t divides it.
            'pivot: while let Some((pi, pj)) = m.min_abs_pivot(t) {
                m.swap_rows(t, pi);
                m.swap_cols(t, pj);
                // Euclidean reduction of column and row t. Any nonzero
                // remainder has smaller magnitude than the pivot, so we
                // reselect and try again.
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if !m.get(i, t).is_zero() {
                        let q = m.get(i, t) / m.get(t, t);
                        m.row_sub(i, t, &q);
                        dirty |= !m.get(i, t).is_zero();
                    }
                }
                for j in t + 1..m.cols {
                    if !m.get(t, j).is_zero() {
                        let q = m.get(t, j) / m.get(t, t);
                        m.col_sub(j, t, &q);
                        dirty |= !m.get(t, j).is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                // Row and column t are clear; force divisibility of the
                // trailing submatrix by folding any offending row into row t.
                for i in t + 1..m.rows {
                    for j in t + 1..m.cols {
                        if !(m.get(i, j) % m.get(t, t)).is_zero() {
                            m.row_add(t, i);
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
        let diag: Vec<BigInt> = (0..k).map(|t| m.get(t, t).abs()).collect();
        debug_assert!(diag
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())));
        diag
    }
}

/// Finitely generated abelian group in normal form: a free part of the
/// given rank plus cyclic factors `Z/d_1 + ... + Z/d_k` with `d_i >= 2`
/// and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: u32,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds the group `Z^rank + sum Z/d` and renormalizes: factors with
    /// `d = 0` join the free part, `|d| = 1` factors vanish, and the rest
    /// are rewritten as a divisor chain.
    pub fn new(rank: u32, torsion: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = rank;
        let mut cyclic: Vec<BigInt> = Vec::new();
        for d in torsion {
            if d.is_zero() {
                rank += 1;
            } else if !d.abs().is_one() {
                cyclic.push(d.abs());
            }
        }
        // A diagonal presentation of the torsion part; its Smith normal
        // form is exactly the divisor chain.
        let n = cyclic.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in cyclic.into_iter().enumerate() {
            m.set(i, i, d);
        }
        let torsion = m
            .smith_normal_form()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: u32) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        AbelianGroup::new(0, [BigInt::from(order)])
    }

    /// Cokernel of a presentation with `generators` generators whose Smith
    /// diagonal is `diag`.
    fn from_presentation(generators: usize, diag: &[BigInt]) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero());
        let rank = (generators - nonzero.clone().count()) as u32;
        AbelianGroup {
            rank,
            torsion: nonzero.filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Invariant factors of the torsion subgroup, each `>= 2`, in divisor
    /// chain order.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `A + B`, renormalized into a single divisor chain.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::new(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }
}

impl fmt::Display for AbelianGroup {
    /// `0`, `Z`, `Z^2 + Z/2 + Z/6`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut sep = "";
        match self.rank {
            0 => {}
            1 => {
                f.write_str("Z")?;
                sep = " + ";
            }
            b => {
                write!(f, "Z^{b}")?;
                sep = " + ";
            }
        }
        for d in &self.torsion {
            write!(f, "{sep}Z/{d}")?;
            sep = " + ";
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses the `Display` rendering; summands may appear in any order and
    /// are renormalized.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidArgument {
            what: "abelian group",
            value: s.to_string(),
        };
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(AbelianGroup::trivial());
        }
        if trimmed.is_empty() {
            return Err(invalid());
        }
        let mut rank: u32 = 0;
        let mut torsion: Vec<BigInt> = Vec::new();
        for token in trimmed.split('+') {
            let token = token.trim();
            if token == "Z" {
                rank += 1;
            } else if let Some(exp) = token.strip_prefix("Z^") {
                let b: u32 = exp.parse().map_err(|_| invalid())?;
                if b == 0 {
                    return Err(invalid());
                }
                rank += b;
            } else if let Some(div) = token.strip_prefix("Z/") {
                if !div.bytes().all(|b| b.is_ascii_digit()) || div.is_empty() {
                    return Err(invalid());
                }
                let d: BigInt = div.parse().map_err(|_| invalid())?;
                if d < BigInt::from(2) {
                    return Err(invalid());
                }
                torsion.push(d);
            } else {
                return Err(invalid());
            }
        }
        Ok(AbelianGroup::new(rank, torsion))
    }
}

/// First homology presented by a symmetric linking matrix: the cokernel
/// of `m` acting on `Z^n`.
pub fn h1_from_matrix(m: &IntMatrix) -> Result<AbelianGroup> {
    if !m.is_symmetric() {
        return Err(Error::AsymmetricMatrix);
    }
    Ok(AbelianGroup::from_presentation(
        m.rows(),
        &m.smith_normal_form(),
    ))
}

/// Linking matrix of the surgery link underlying a planar open book.
///
/// Components: one 0-framed unknot per hole (a page with `r` boundary
/// circles and trivial monodromy gives `#_{r-1} S^1 x S^2`), then one
/// unknot per unit letter of the monodromy. A letter `t_c^e` expands into
/// `|e|` unit components of framing `-sign(e)`, each linking the hole
/// unknots of the holes `c` encloses exactly once; distinct letter
/// components are unlinked.
pub fn surgery_presentation(ob: &OpenBook) -> Result<IntMatrix> {
    ob.page().require_planar()?;
    let holes = ob.page().hole_count() as usize;
    let units: u64 = ob.word().total_exponent();
    let n = holes + units as usize;
    let mut m = IntMatrix::zeros(n, n);
    let mut row = holes;
    for twist in ob.word().iter() {
        let framing = BigInt::from(-twist.exponent().signum());
        for _ in 0..twist.exponent().unsigned_abs() {
            m.set(row, row, framing.clone());
            for &h in twist.curve().holes() {
                m.set(row, (h - 1) as usize, BigInt::one());
                m.set((h - 1) as usize, row, BigInt::one());
            }
            row += 1;
        }
    }
    Ok(m)
}

/// First homology of the manifold underlying a planar open book.
pub fn h1(ob: &OpenBook) -> Result<AbelianGroup> {
    h1_from_matrix(&surgery_presentation(ob)?)
}

/// Net exponent per curve, zeros dropped. First homology depends on the
/// word only through this map.
pub fn net_exponents(ob: &OpenBook) -> BTreeMap<Curve, BigInt> {
    let mut nets: BTreeMap<Curve, BigInt> = BTreeMap::new();
    for twist in ob.word().iter() {
        *nets.entry(twist.curve().clone()).or_default() += twist.exponent();
    }
    nets.retain(|_, e| !e.is_zero());
    nets
}

/// First homology from net exponents alone, via the reduced presentation
/// obtained by eliminating every unit-letter generator: the hole-indexed
/// matrix `sum_c net_c * 1_c 1_c^T`.
pub fn h1_from_nets(hole_count: u32, nets: &BTreeMap<Curve, BigInt>) -> AbelianGroup {
    let n = hole_count as usize;
    let mut m = IntMatrix::zeros(n, n);
    for (curve, net) in nets {
        for &a in curve.holes() {
            for &b in curve.holes() {
                let k = m.idx((a - 1) as usize, (b - 1) as usize);
                m.data[k] += net;
            }
        }
    }
    AbelianGroup::from_presentation(n, &m.smith_normal_form())
}

/// First homology of the Seifert fibered space `Y_{p,q,r}`, presented by
/// its standard surgery diagram: a 0-framed unknot linked once by three
/// unknots of framings `p`, `q`, `r`. The group is finite of order
/// `|pq + qr + rp|` when that quantity is nonzero.
pub fn seifert_h1(p: i64, q: i64, r: i64) -> AbelianGroup {
    let m = IntMatrix::from_rows(&[
        vec![0, 1, 1, 1],
        vec![1, p, 0, 0],
        vec![1, 0, q, 0],
        vec![1, 0, 0, r],
    ]);
    h1_from_matrix(&m).expect("symmetric by construction")
}
