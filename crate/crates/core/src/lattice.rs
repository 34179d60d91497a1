//! Exact integer linear algebra over lattices.
//!
//! Everything here works over arbitrary-precision integers. The central
//! routine is [`smith_normal_form`], which also carries the two unimodular
//! transforms; kernels, saturations, quotient maps and cokernels are all
//! read off from it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
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
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, &big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMatrix::from_rows(self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        IntMatrix::from_rows(idx.len(), &rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rational_row_echelon(&self.to_rows(), self.cols).len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Integer inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let snf = smith_normal_form(self);
        // left * A * right = I  =>  A^{-1} = right * left
        Some(snf.right.mul(&snf.left))
    }

    /// A right inverse `R` with `self * R = I`, when one exists over the integers.
    pub fn right_inverse(&self) -> Option<IntMatrix> {
        let snf = smith_normal_form(self);
        let r = self.rows;
        if snf.rank() != r || snf.diag.iter().take(r).any(|d| !d.is_one()) {
            return None;
        }
        let mut pad = IntMatrix::zeros(self.cols, r);
        for i in 0..r {
            pad.set(i, i, BigInt::one());
        }
        Some(snf.right.mul(&pad).mul(&snf.left))
    }

    /// One integer solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let snf = smith_normal_form(self);
        let ub = snf.left.apply(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, val) in ub.iter().enumerate() {
            let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !val.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = val.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        Some(snf.right.apply(&y))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(self.row(i)))?;
        }
        write!(f, "]")
    }
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and makes it primitive.
pub fn primitive_from_rational(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Reduced row echelon form over Q of the row space; zero rows dropped.
/// Rows are returned scaled to primitive integer vectors with positive pivots,
/// which makes the result a canonical description of the subspace.
pub fn rational_row_echelon(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..cols {
                    let v = &a[r][j] * &k;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.iter().map(|row| primitive_from_rational(row)).collect()
}

/// Hermite normal form of the lattice generated by `rows`, zero rows removed.
pub fn hermite_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let Some(p) = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(p, r);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let v = &a[r][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r == a.len() || a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let v = &a[r][j] * &q;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// `left * A * right = diag`, both transforms unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the shape of the decomposed matrix.
    pub fn diag_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut w = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = w.get(i, j);
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < w.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        left.swap_rows(t, pi);
        w.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                while !w.get(i, t).is_zero() {
                    let q = -(w.get(i, t) / w.get(t, t));
                    w.add_row(i, t, &q);
                    left.add_row(i, t, &q);
                    if !w.get(i, t).is_zero() {
                        w.swap_rows(i, t);
                        left.swap_rows(i, t);
                    }
                }
            }
            for j in t + 1..n {
                while !w.get(t, j).is_zero() {
                    let q = -(w.get(t, j) / w.get(t, t));
                    w.add_col(j, t, &q);
                    right.add_col(j, t, &q);
                    if !w.get(t, j).is_zero() {
                        w.swap_cols(j, t);
                        right.swap_cols(j, t);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let piv = w.get(t, t).clone();
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.get(i, j).is_multiple_of(&piv)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    w.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.get(t, t).is_negative() {
            w.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| w.get(i, i).clone()).collect();
    SmithDecomposition { left, diag, right }
}

/// A sublattice of `Z^ambient`, stored by a basis in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient, "generator of wrong length");
        }
        let rows = hermite_rows(gens, ambient);
        let basis = IntMatrix::from_rows(ambient, &rows);
        let saturated = smith_normal_form(&basis).diag.iter().all(|d| d.is_one());
        Sublattice {
            ambient,
            basis,
            saturated,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_generators(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(ambient, &IntMatrix::identity(ambient).to_rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        hermite_rows(&rows, self.ambient) == self.basis.to_rows()
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        self.ambient == other.ambient && self.basis.to_rows().iter().all(|r| other.contains(r))
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

/// Saturated lattice of integer solutions of `A x = 0`.
pub fn kernel_lattice(a: &IntMatrix) -> Sublattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let gens: Vec<Vec<BigInt>> = (r..a.cols()).map(|j| snf.right.col(j)).collect();
    Sublattice::from_generators(a.cols(), &gens)
}

/// Smallest saturated sublattice containing `l`.
pub fn saturate(l: &Sublattice) -> Sublattice {
    if l.is_saturated() {
        return l.clone();
    }
    let kernel = kernel_lattice(l.basis());
    let k = IntMatrix::from_rows(l.ambient(), &kernel.basis().to_rows());
    kernel_lattice(&k)
}

/// A surjection `Z^n -> Z^(n - rank L)` whose kernel is exactly `l`.
pub fn quotient_lattice_map(l: &Sublattice) -> Result<IntMatrix, LatticeError> {
    if !l.is_saturated() {
        return Err(LatticeError::Unsaturated);
    }
    let n = l.ambient();
    let k = l.rank();
    let snf = smith_normal_form(l.basis());
    let rows: Vec<Vec<BigInt>> = (k..n).map(|j| snf.right.col(j)).collect();
    let rows = hermite_rows(&rows, n);
    Ok(IntMatrix::from_rows(n, &rows))
}

/// Cokernel `Z^rows / A Z^cols` as free rank plus invariant-factor torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelShape {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CokernelShape {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for CokernelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn cokernel_diagnostics(a: &IntMatrix) -> CokernelShape {
    let snf = smith_normal_form(a);
    CokernelShape {
        free_rank: a.rows() - snf.rank(),
        torsion: snf.diag.iter().filter(|d| *d > &BigInt::one()).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn check_decomposition(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.left.mul(a).mul(&s.right), s.diag_matrix());
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        let nz: Vec<&BigInt> = s.diag.iter().filter(|d| !d.is_zero()).collect();
        for w in nz.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_decomposition(&IntMatrix::identity(2));
        assert_eq!(s.diag, to_big(&[1, 1]));
        let s = check_decomposition(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diag, to_big(&[1, 6]));
        let s = check_decomposition(&m(&[&[1, 2], &[3, 4]]));
        assert_eq!(s.diag, to_big(&[1, 2]));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let s = check_decomposition(&m(&[&[0, 0, 0]]));
        assert_eq!(s.diag, to_big(&[0]));
        let s = check_decomposition(&m(&[&[4], &[6]]));
        assert_eq!(s.diag, to_big(&[2]));
        check_decomposition(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_lattice(&m(&[&[1, 1]]));
        assert_eq!(k.basis().to_rows(), vec![to_big(&[1, -1])]);
        assert!(k.is_saturated());
        assert_eq!(kernel_lattice(&IntMatrix::identity(3)).rank(), 0);
        assert_eq!(kernel_lattice(&m(&[&[0, 0]])), Sublattice::full(2));
    }

    #[test]
    fn saturate_examples() {
        let l = Sublattice::from_generators(2, &[to_big(&[2, 2])]);
        assert!(!l.is_saturated());
        let s = saturate(&l);
        assert_eq!(s.basis().to_rows(), vec![to_big(&[1, 1])]);
        assert_eq!(saturate(&s), s);
        assert_eq!(saturate(&Sublattice::zero(2)), Sublattice::zero(2));
    }

    #[test]
    fn quotient_map_examples() {
        let l = Sublattice::from_generators(2, &[to_big(&[1, 1])]);
        let pi = quotient_lattice_map(&l).unwrap();
        assert_eq!(pi.rows(), 1);
        assert!(pi.apply(&to_big(&[1, 1]))[0].is_zero());
        assert!(pi.apply(&to_big(&[1, 0]))[0].abs().is_one());
        let id = quotient_lattice_map(&Sublattice::zero(2)).unwrap();
        assert!(id.is_unimodular());
        let zero = quotient_lattice_map(&Sublattice::full(2)).unwrap();
        assert_eq!((zero.rows(), zero.cols()), (0, 2));
        let bad = Sublattice::from_generators(2, &[to_big(&[2, 2])]);
        assert_eq!(quotient_lattice_map(&bad), Err(LatticeError::Unsaturated));
    }

    #[test]
    fn cokernel_examples() {
        let p2 = m(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let c = cokernel_diagnostics(&p2);
        assert_eq!((c.free_rank, c.torsion.len()), (1, 0));
        assert!(cokernel_diagnostics(&IntMatrix::identity(2)).is_trivial());
        let c = cokernel_diagnostics(&m(&[&[2]]));
        assert_eq!((c.free_rank, c.torsion.clone()), (0, to_big(&[2])));
        assert_eq!(c.to_string(), "Z/2");
    }

    #[test]
    fn solve_and_inverses() {
        let a = m(&[&[1, 0, -1], &[0, 1, -2]]);
        let x = a.solve(&to_big(&[3, 5])).unwrap();
        assert_eq!(a.apply(&x), to_big(&[3, 5]));
        let r = a.right_inverse().unwrap();
        assert_eq!(a.mul(&r), IntMatrix::identity(2));
        assert!(m(&[&[2, 0]]).solve(&to_big(&[1])).is_none());
        let u = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(u.mul(&u.unimodular_inverse().unwrap()), IntMatrix::identity(2));
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }
}
