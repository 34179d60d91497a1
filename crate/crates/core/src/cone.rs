//! Rational polyhedral cones with synchronized generator and facet data.
//!
//! Conversion between the two descriptions uses the double-description
//! method over exact integers. A cone is stored canonically: its lineality
//! space by a reduced echelon basis, its extreme rays projected orthogonally
//! off the lineality space and made primitive, and dually for the facets.
//! Two cones are equal exactly when their stored data is equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::ConeError;
use crate::lattice::{dot, fmt_vec, primitive, primitive_from_rational, rational_row_echelon, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// Small bitset for tight-constraint bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Generator {
    v: Vec<BigInt>,
    tight: Bits,
}

/// Double description: lineality basis and extreme rays of
/// `{x : ineq . x >= 0, eq . x = 0}`, before canonicalization.
fn double_description(
    dim: usize,
    ineqs: &[Vec<BigInt>],
    eqs: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n_cons = ineqs.len();
    let mut lin: Vec<Vec<BigInt>> = IntMatrix::identity(dim).to_rows();
    let mut rays: Vec<Generator> = Vec::new();

    for e in eqs {
        if let Some(p) = lin.iter().position(|l| !dot(e, l).is_zero()) {
            let l0 = lin.swap_remove(p);
            let a0 = dot(e, &l0);
            for l in lin.iter_mut() {
                let al = dot(e, l);
                if !al.is_zero() {
                    let v: Vec<BigInt> = l.iter().zip(&l0).map(|(x, y)| &a0 * x - &al * y).collect();
                    *l = primitive(&v);
                }
            }
        }
    }

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lin.swap_remove(p);
            let a0 = dot(a, &l0);
            let s = if a0.is_negative() { -BigInt::from(1) } else { BigInt::from(1) };
            let abs0 = a0.abs();
            for l in lin.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    let v: Vec<BigInt> = l.iter().zip(&l0).map(|(x, y)| &a0 * x - &al * y).collect();
                    *l = primitive(&v);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let v: Vec<BigInt> = r
                        .v
                        .iter()
                        .zip(&l0)
                        .map(|(x, y)| &abs0 * x - &s * &ar * y)
                        .collect();
                    r.v = primitive(&v);
                }
                r.tight.insert(k);
            }
            // every processed constraint vanishes on l0
            let mut tight = Bits::new(n_cons);
            for j in 0..k {
                tight.insert(j);
            }
            rays.push(Generator {
                v: l0.iter().map(|x| &s * x).collect(),
                tight,
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.tight.insert(k);
                }
            }
            continue;
        }
        let mut next: Vec<Generator> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.subset_of(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(x, y)| &vals[p] * y - &vals[q] * x)
                    .collect();
                let mut tight = common;
                tight.insert(k);
                next.push(Generator {
                    v: primitive(&v),
                    tight,
                });
            }
        }
        let old = std::mem::take(&mut rays);
        for (i, mut r) in old.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight.insert(k);
            }
            rays.push(r);
        }
        rays.extend(next);
    }
    (lin, rays.into_iter().map(|g| g.v).collect())
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Solves the square system `a x = b` over Q (a assumed invertible).
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("singular Gram matrix");
        a.swap(p, c);
        b.swap(p, c);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let k = &a[i][c] / &a[c][c];
                for j in c..n {
                    let v = &a[c][j] * &k;
                    a[i][j] -= v;
                }
                let v = &b[c] * &k;
                b[i] -= v;
            }
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

/// Orthogonal projection of `v` off the span of `basis`, made primitive.
fn project_off(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() || basis.iter().all(|b| dot(b, v).is_zero()) {
        return primitive(v);
    }
    let gram: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| BigRational::from_integer(dot(x, y))).collect())
        .collect();
    let rhs: Vec<BigRational> = basis.iter().map(|x| BigRational::from_integer(dot(x, v))).collect();
    let c = solve_rational(gram, rhs);
    let mut w = to_rational(v);
    for (ci, b) in c.iter().zip(basis) {
        for (wj, bj) in w.iter_mut().zip(b) {
            *wj -= ci * BigRational::from_integer(bj.clone());
        }
    }
    primitive_from_rational(&w)
}

fn canonical_rays(rays: &[Vec<BigInt>], lin: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| project_off(r, lin))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// Cone of all nonnegative combinations of `gens` in `Q^dim`.
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Cone {
        for g in gens {
            assert_eq!(g.len(), dim, "generator of wrong length");
        }
        let (dual_lin, dual_rays) = double_description(dim, gens, &[]);
        let equations = rational_row_echelon(&dual_lin, dim);
        let facets = canonical_rays(&dual_rays, &equations);
        Self::from_inequalities(dim, &facets, &equations)
    }

    pub fn from_i64(dim: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|v| crate::lattice::to_big(v)).collect();
        Self::from_generators(dim, &g)
    }

    /// `{x : f . x >= 0 for f in ineqs, e . x = 0 for e in eqs}`.
    pub fn from_inequalities(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Cone {
        let (lin, rays) = double_description(dim, ineqs, eqs);
        let lineality = rational_row_echelon(&lin, dim);
        let rays = canonical_rays(&rays, &lineality);
        let (dual_lin, dual_rays) = double_description(dim, &rays, &lineality);
        let equations = rational_row_echelon(&dual_lin, dim);
        let facets = canonical_rays(&dual_rays, &equations);
        Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn zero(dim: usize) -> Cone {
        Self::from_generators(dim, &[])
    }

    pub fn full(dim: usize) -> Cone {
        Self::from_inequalities(dim, &[], &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays of the pointed part (canonical representatives).
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality_basis(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn lineality_rank(&self) -> usize {
        self.lineality.len()
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Rays plus both signs of each lineality basis vector.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.facets.iter().all(|f| !dot(f, v).is_negative()) && self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> bool {
        let dotq = |f: &Vec<BigInt>| -> BigRational {
            f.iter().zip(v).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum()
        };
        self.facets.iter().all(|f| !dotq(f).is_negative()) && self.equations.iter().all(|e| dotq(e).is_zero())
    }

    /// Relative interior membership.
    pub fn contains_in_relint(&self, v: &[BigInt]) -> bool {
        self.facets.iter().all(|f| dot(f, v).is_positive()) && self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        if self.dim != other.dim {
            return Err(ConeError::RankMismatch(self.dim, other.dim));
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Ok(Cone::from_inequalities(self.dim, &ineqs, &eqs))
    }

    /// Image under the linear map `pi` (columns = ambient rank of the cone).
    pub fn image(&self, pi: &IntMatrix) -> Result<Cone, ConeError> {
        if pi.cols() != self.dim {
            return Err(ConeError::RankMismatch(pi.cols(), self.dim));
        }
        let gens: Vec<Vec<BigInt>> = self.generators().iter().map(|g| pi.apply(g)).collect();
        Ok(Cone::from_generators(pi.rows(), &gens))
    }

    /// For every face, the indices of `points` lying on it. `points` are
    /// assumed to be elements of the cone; faces are listed from the whole
    /// cone down, each exactly once.
    pub fn face_subsets(&self, points: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
        let vals: Vec<Vec<bool>> = points
            .iter()
            .map(|p| self.facets.iter().map(|f| dot(f, p).is_zero()).collect())
            .collect();
        let ray_zero: Vec<Vec<bool>> = self
            .rays
            .iter()
            .map(|r| self.facets.iter().map(|f| dot(f, r).is_zero()).collect())
            .collect();
        let nf = self.facets.len();
        // a face is identified by the set of extreme rays it contains
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: Vec<Vec<usize>> = vec![all.clone()];
        let mut queue: Vec<Vec<usize>> = vec![all];
        let mut faces_rays: Vec<Vec<usize>> = Vec::new();
        while let Some(face) = queue.pop() {
            faces_rays.push(face.clone());
            for f in 0..nf {
                if face.iter().all(|&r| ray_zero[r][f]) {
                    continue;
                }
                let sub: Vec<usize> = face.iter().copied().filter(|&r| ray_zero[r][f]).collect();
                // close: facets vanishing on all of `sub`, then rays tight on those facets
                let tight: Vec<usize> = (0..nf).filter(|&g| sub.iter().all(|&r| ray_zero[r][g])).collect();
                let closed: Vec<usize> = (0..self.rays.len())
                    .filter(|&r| tight.iter().all(|&g| ray_zero[r][g]))
                    .collect();
                if !seen.contains(&closed) {
                    seen.push(closed.clone());
                    queue.push(closed);
                }
            }
        }
        faces_rays.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        faces_rays
            .iter()
            .map(|rs| {
                let tight: Vec<usize> = (0..nf).filter(|&g| rs.iter().all(|&r| ray_zero[r][g])).collect();
                (0..points.len())
                    .filter(|&p| tight.iter().all(|&g| vals[p][g]))
                    .collect()
            })
            .collect()
    }

    /// All faces, from the cone itself down to its lineality space.
    pub fn faces(&self) -> Vec<Cone> {
        let subsets = self.face_subsets(&self.rays);
        let mut out: Vec<Cone> = subsets
            .iter()
            .map(|s| {
                let mut gens: Vec<Vec<BigInt>> = s.iter().map(|&i| self.rays[i].clone()).collect();
                for l in &self.lineality {
                    gens.push(l.clone());
                    gens.push(l.iter().map(|x| -x).collect());
                }
                Cone::from_generators(self.dim, &gens)
            })
            .collect();
        out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then(a.cmp(b)));
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.dim != other.dim || !other.contains_cone(self) {
            return false;
        }
        let gens = self.generators();
        let tight: Vec<&Vec<BigInt>> = other
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| dot(f, g).is_zero()))
            .collect();
        let mut face_gens: Vec<Vec<BigInt>> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| dot(f, r).is_zero()))
            .cloned()
            .collect();
        for l in &other.lineality {
            face_gens.push(l.clone());
            face_gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_generators(self.dim, &face_gens) == *self
    }

    pub fn relative_interior_point(&self) -> Vec<BigRational> {
        let mut p = vec![BigRational::zero(); self.dim];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += BigRational::from_integer(ri.clone());
            }
        }
        p
    }

    pub fn is_simplicial(&self) -> bool {
        self.lineality.is_empty() && IntMatrix::from_rows(self.dim, &self.rays).rank() == self.rays.len()
    }

    /// Minimal generating set of the monoid of lattice points, found by box
    /// enumeration. Exact whenever the box is large enough to contain every
    /// element of the basis; otherwise `BoundExceeded`.
    pub fn hilbert_basis(&self, bound: usize) -> Result<Vec<Vec<BigInt>>, ConeError> {
        if !self.is_pointed() {
            return Err(ConeError::NotPointed(self.lineality.len()));
        }
        if self.rays.is_empty() {
            return Ok(Vec::new());
        }
        // basis elements sit in parallelepipeds spanned by extreme rays
        let needed = (0..self.dim)
            .map(|j| self.rays.iter().map(|r| r[j].abs()).sum::<BigInt>())
            .max()
            .and_then(|b| b.to_usize())
            .unwrap_or(usize::MAX);
        let half = if needed <= bound {
            needed
        } else {
            let side = needed.saturating_mul(2).saturating_add(1) as f64;
            if side.powi(self.dim as i32) > 4.0e6 {
                return Err(ConeError::BoundExceeded { needed, bound });
            }
            needed
        };
        let to_i64 = |v: &Vec<BigInt>| -> Vec<i64> { v.iter().map(|x| x.to_i64().expect("coefficient fits i64")).collect() };
        let facets: Vec<Vec<i64>> = self.facets.iter().map(to_i64).collect();
        let eqs: Vec<Vec<i64>> = self.equations.iter().map(to_i64).collect();
        let grading: Vec<i64> = (0..self.dim).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
        let d = self.dim;
        let h = half as i64;
        let mut points: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut x = vec![-h; d];
        loop {
            let dotf = |f: &Vec<i64>| -> i64 { f.iter().zip(&x).map(|(a, b)| a * b).sum() };
            if x.iter().any(|&c| c != 0) && eqs.iter().all(|e| dotf(e) == 0) && facets.iter().all(|f| dotf(f) >= 0) {
                points.push((dotf(&grading), x.clone()));
            }
            let mut i = 0;
            while i < d {
                if x[i] < h {
                    x[i] += 1;
                    break;
                }
                x[i] = -h;
                i += 1;
            }
            if i == d {
                break;
            }
        }
        points.sort();
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for (_, p) in points {
            let reducible = basis.iter().any(|b| {
                let diff: Vec<i64> = p.iter().zip(b).map(|(a, c)| a - c).collect();
                facets
                    .iter()
                    .all(|f| f.iter().zip(&diff).map(|(a, c)| a * c).sum::<i64>() >= 0)
            });
            if !reducible {
                basis.push(p);
            }
        }
        let widest = basis.iter().flat_map(|b| b.iter().map(|c| c.unsigned_abs() as usize)).max().unwrap_or(0);
        if widest > bound {
            return Err(ConeError::BoundExceeded { needed: widest, bound });
        }
        let mut out: Vec<Vec<BigInt>> = basis
            .into_iter()
            .map(|b| b.into_iter().map(BigInt::from).collect())
            .collect();
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "cone[{}]", rays.join(","))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|r| fmt_vec(r)).collect();
            write!(f, "+lin[{}]", lin.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_big;

    fn c(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_i64(dim, gens)
    }

    fn vecs(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|x| to_big(x)).collect()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.dual(), q);
        assert_eq!(q.facets(), vecs(&[&[0, 1], &[1, 0]]).as_slice());
    }

    #[test]
    fn dual_of_ray_is_half_plane() {
        let d = c(2, &[&[1, 0]]).dual();
        assert_eq!(d, Cone::from_inequalities(2, &vecs(&[&[1, 0]]), &[]));
        assert_eq!(d.lineality_rank(), 1);
        let mut g = d.generators();
        g.sort();
        assert_eq!(g, vecs(&[&[0, -1], &[0, 1], &[1, 0]]));
        assert_eq!(Cone::zero(3).dual(), Cone::full(3));
    }

    #[test]
    fn intersections() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        let left = Cone::from_inequalities(2, &vecs(&[&[-1, 0]]), &[]);
        assert_eq!(q.intersect(&left).unwrap(), c(2, &[&[0, 1]]));
        assert_eq!(q.intersect(&q).unwrap(), q);
        assert_eq!(q.intersect(&Cone::full(2)).unwrap(), q);
        assert!(q.intersect(&Cone::full(3)).is_err());
    }

    #[test]
    fn face_lists() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        let f = q.faces();
        assert_eq!(f.len(), 4);
        assert!(f.contains(&Cone::zero(2)));
        assert!(f.contains(&c(2, &[&[1, 0]])));
        assert_eq!(Cone::zero(2).faces(), vec![Cone::zero(2)]);
        let half = Cone::from_inequalities(2, &vecs(&[&[1, 0]]), &[]);
        let hf = half.faces();
        assert_eq!(hf.len(), 2);
        assert_eq!(hf[0].lineality_rank(), 1);
        assert_eq!(hf[0].dimension(), 1);
    }

    #[test]
    fn images() {
        let pi = IntMatrix::from_i64(&[&[1, -1]]);
        let q = c(2, &[&[1, 0], &[0, 1]]);
        let img = q.image(&pi).unwrap();
        assert!(img.is_full_space());
        assert_eq!(c(2, &[&[1, 0]]).image(&pi).unwrap(), c(1, &[&[1]]));
        assert!(Cone::zero(2).image(&pi).unwrap().is_zero());
    }

    #[test]
    fn predicates() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        assert!(q.contains(&to_big(&[1, 1])));
        assert!(!q.contains(&to_big(&[-1, 1])));
        assert!(c(2, &[&[1, 0]]).is_face_of(&q));
        assert!(!c(2, &[&[1, 1]]).is_face_of(&q));
        let dependent = c(3, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1], &[0, 0, 1]]);
        assert!(!dependent.is_simplicial());
        assert!(q.is_simplicial());
        let p = q.relative_interior_point();
        assert!(p.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn hilbert_bases() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.hilbert_basis(5).unwrap(), vecs(&[&[0, 1], &[1, 0]]));
        let a = c(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(a.hilbert_basis(5).unwrap(), vecs(&[&[1, 0], &[1, 1], &[1, 2]]));
        let b = c(2, &[&[1, 0], &[1, 3]]);
        assert_eq!(b.hilbert_basis(5).unwrap(), vecs(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]));
        assert!(matches!(c(2, &[&[1, 0], &[1, 7]]).hilbert_basis(5), Err(ConeError::BoundExceeded { .. })));
        assert!(matches!(Cone::full(2).hilbert_basis(5), Err(ConeError::NotPointed(2))));
    }
}
