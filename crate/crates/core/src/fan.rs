//! Fans as toric varieties.
//!
//! A cone of a fan is named by the set of fan rays it contains ([`RaySet`]);
//! the zero cone is the empty set. Torus-invariant open subsets are
//! face-closed sets of cones ([`SubfanSelection`]), and torus-invariant
//! closed subsets are the complementary star-closed sets.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::error::FanError;
use crate::lattice::{fmt_vec, primitive, to_big, IntMatrix};

/// Bitmask over the ray indices of a fan (at most 64 rays).
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RaySet(pub u64);

impl RaySet {
    pub const ZERO: RaySet = RaySet(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(idx: I) -> Self {
        RaySet(idx.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn single(i: usize) -> Self {
        RaySet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RaySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: RaySet) -> RaySet {
        RaySet(self.0 | other.0)
    }

    pub fn intersection(self, other: RaySet) -> RaySet {
        RaySet(self.0 & other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Relabels ray `i` as `perm[i]`.
    pub fn permute(self, perm: &[usize]) -> RaySet {
        RaySet::from_indices(self.indices().map(|i| perm[i]))
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A finite set of cones, kept sorted. Used both for open selections
/// (face-closed) and for closed invariant sets (star-closed).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConeSet(Vec<RaySet>);

/// A torus-invariant open subset: a face-closed set of cones.
pub type SubfanSelection = ConeSet;

impl ConeSet {
    pub fn new<I: IntoIterator<Item = RaySet>>(cones: I) -> Self {
        let mut v: Vec<RaySet> = cones.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ConeSet(v)
    }

    pub fn empty() -> Self {
        ConeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: RaySet) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = RaySet> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[RaySet] {
        &self.0
    }

    pub fn is_subset(&self, other: &ConeSet) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut j = 0;
        for c in &self.0 {
            while j < other.0.len() && other.0[j] < *c {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != *c {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn union(&self, other: &ConeSet) -> ConeSet {
        ConeSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &ConeSet) -> ConeSet {
        ConeSet(self.iter().filter(|c| other.contains(*c)).collect())
    }

    pub fn difference(&self, other: &ConeSet) -> ConeSet {
        ConeSet(self.iter().filter(|c| !other.contains(*c)).collect())
    }

    pub fn is_disjoint(&self, other: &ConeSet) -> bool {
        self.iter().all(|c| !other.contains(c))
    }

    pub fn permute(&self, perm: &[usize]) -> ConeSet {
        ConeSet::new(self.iter().map(|c| c.permute(perm)))
    }

    /// Cones that are not faces of another member.
    pub fn maximal(&self) -> Vec<RaySet> {
        self.iter()
            .filter(|&c| !self.iter().any(|d| d != c && c.is_subset(d)))
            .collect()
    }
}

impl fmt::Display for ConeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FanViolation {
    NotStronglyConvex { cone: RaySet },
    NonExtremeRay { cone: RaySet, ray: usize },
    DuplicateRay { first: usize, second: usize },
    NestedMaximalCones { inner: RaySet, outer: RaySet },
    BadIntersection { first: RaySet, second: RaySet },
    UnusedRay { ray: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::NotStronglyConvex { cone } => write!(f, "cone {cone} contains a line"),
            FanViolation::NonExtremeRay { cone, ray } => write!(f, "ray {ray} is not extremal in cone {cone}"),
            FanViolation::DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            FanViolation::NestedMaximalCones { inner, outer } => {
                write!(f, "maximal cone {inner} lies in maximal cone {outer}")
            }
            FanViolation::BadIntersection { first, second } => {
                write!(f, "cones {first} and {second} do not meet in a common face")
            }
            FanViolation::UnusedRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub valid: bool,
    pub violation: Option<FanViolation>,
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<RaySet>,
    /// All cones, sorted by bitmask.
    cones: Vec<RaySet>,
    geometry: Vec<Cone>,
    /// Proper faces of each cone (indices into `cones`).
    proper_faces: Vec<Vec<usize>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Fan) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cones: Vec<Vec<usize>> = self.max_cones.iter().map(|c| c.indices().collect()).collect();
        let mut st = s.serialize_struct("Fan", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("rays", &self.rays)?;
        st.serialize_field("max_cones", &cones)?;
        st.end()
    }
}

impl Fan {
    /// Builds a fan from rays and maximal cones (ray index lists). Rays are
    /// made primitive. Structural errors are returned here; geometric
    /// validity is checked by [`Fan::validate`].
    pub fn new(rank: usize, rays: Vec<Vec<BigInt>>, max_cones: &[Vec<usize>]) -> Result<Fan, FanError> {
        if rays.len() > 64 {
            return Err(FanError::TooManyRays);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(FanError::RayLength {
                    index: i,
                    got: r.len(),
                    rank,
                });
            }
            if r.iter().all(Zero::is_zero) {
                return Err(FanError::ZeroRay(i));
            }
        }
        let rays: Vec<Vec<BigInt>> = rays.iter().map(|r| primitive(r)).collect();
        let mut maxes = Vec::new();
        for (ci, c) in max_cones.iter().enumerate() {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::RayIndex { cone: ci, ray: bad });
            }
            maxes.push(RaySet::from_indices(c.iter().copied()));
        }
        maxes.sort_unstable();
        maxes.dedup();

        let face_lists: Vec<Vec<RaySet>> = maxes
            .iter()
            .map(|&m| {
                let pts: Vec<Vec<BigInt>> = m.indices().map(|i| rays[i].clone()).collect();
                let idx: Vec<usize> = m.indices().collect();
                Cone::from_generators(rank, &pts)
                    .face_subsets(&pts)
                    .iter()
                    .map(|sub| RaySet::from_indices(sub.iter().map(|&k| idx[k])))
                    .collect()
            })
            .collect();
        // listed cones that are faces of other listed cones are not maximal
        let maxes: Vec<RaySet> = maxes
            .iter()
            .copied()
            .filter(|&c| !face_lists.iter().zip(&maxes).any(|(faces, &m)| m != c && faces.contains(&c)))
            .collect();
        let mut all: Vec<RaySet> = vec![RaySet::ZERO];
        all.extend(face_lists.into_iter().flatten());
        all.sort_unstable();
        all.dedup();
        let geometry: Vec<Cone> = all
            .iter()
            .map(|c| {
                let pts: Vec<Vec<BigInt>> = c.indices().map(|i| rays[i].clone()).collect();
                Cone::from_generators(rank, &pts)
            })
            .collect();
        let proper_faces = all
            .iter()
            .map(|&c| {
                (0..all.len())
                    .filter(|&j| all[j] != c && all[j].is_subset(c))
                    .collect()
            })
            .collect();
        Ok(Fan {
            rank,
            rays,
            max_cones: maxes,
            cones: all,
            geometry,
            proper_faces,
        })
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Fan, FanError> {
        let rays: Vec<Vec<BigInt>> = rays.iter().map(|r| to_big(r)).collect();
        let cones: Vec<Vec<usize>> = max_cones.iter().map(|c| c.to_vec()).collect();
        Fan::new(rank, rays, &cones)
    }

    /// The fan of affine space `C^n`: standard basis rays, one maximal cone.
    pub fn orthant(n: usize) -> Fan {
        let rays = IntMatrix::identity(n).to_rows();
        Fan::new(n, rays, &[(0..n).collect()]).expect("orthant fan")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[RaySet] {
        &self.max_cones
    }

    /// Every cone of the fan, the zero cone included.
    pub fn cones(&self) -> &[RaySet] {
        &self.cones
    }

    pub fn all_cones(&self) -> SubfanSelection {
        ConeSet(self.cones.clone())
    }

    pub fn index_of(&self, c: RaySet) -> Option<usize> {
        self.cones.binary_search(&c).ok()
    }

    pub fn contains_cone(&self, c: RaySet) -> bool {
        self.index_of(c).is_some()
    }

    pub fn geometry(&self, c: RaySet) -> &Cone {
        let i = self.index_of(c).expect("cone of the fan");
        &self.geometry[i]
    }

    pub fn dimension(&self, c: RaySet) -> usize {
        self.geometry(c).dimension()
    }

    /// Faces of `c`, itself included.
    pub fn faces_of(&self, c: RaySet) -> impl Iterator<Item = RaySet> + '_ {
        let i = self.index_of(c).expect("cone of the fan");
        self.proper_faces[i].iter().map(|&j| self.cones[j]).chain(std::iter::once(c))
    }

    pub fn is_face(&self, face: RaySet, of: RaySet) -> bool {
        face.is_subset(of) && self.contains_cone(face) && self.contains_cone(of)
    }

    /// Face closure of a set of cones of this fan.
    pub fn face_closure<I: IntoIterator<Item = RaySet>>(&self, cones: I) -> Result<SubfanSelection, FanError> {
        let mut out = Vec::new();
        for c in cones {
            if !self.contains_cone(c) {
                return Err(FanError::ForeignCone);
            }
            out.extend(self.faces_of(c));
        }
        Ok(ConeSet::new(out))
    }

    pub fn is_face_closed(&self, s: &ConeSet) -> bool {
        s.iter()
            .all(|c| self.contains_cone(c) && self.faces_of(c).all(|f| s.contains(f)))
    }

    /// Closure of the orbit of `c`: all cones having `c` as a face.
    pub fn orbit_closure(&self, c: RaySet) -> ConeSet {
        ConeSet::new(self.cones.iter().copied().filter(|&t| c.is_subset(t)))
    }

    /// Within `within`, the closure of the orbit of `c`.
    pub fn orbit_closure_in(&self, c: RaySet, within: &ConeSet) -> ConeSet {
        ConeSet(within.iter().filter(|&t| c.is_subset(t)).collect())
    }

    /// Orbit-cone correspondence: `(tau, sigma)` is listed when the orbit of
    /// `tau` lies in the closure of the orbit of `sigma`, i.e. `sigma` is a face
    /// of `tau`.
    pub fn orbit_poset(&self) -> Vec<(RaySet, RaySet)> {
        let mut out = Vec::new();
        for &t in &self.cones {
            for s in self.faces_of(t) {
                out.push((t, s));
            }
        }
        out.sort_unstable();
        out
    }

    /// The cone whose orbit receives the limit of `lambda_v(t) x` as `t -> 0`
    /// for a generic point `x`; `None` when `v` lies outside the support.
    pub fn limit_of_generic_point(&self, v: &[BigInt]) -> Option<RaySet> {
        assert_eq!(v.len(), self.rank);
        self.cones
            .iter()
            .zip(&self.geometry)
            .find(|(_, g)| g.contains_in_relint(v))
            .map(|(c, _)| *c)
    }

    pub fn validate(&self) -> FanReport {
        let bad = |v: FanViolation| FanReport {
            valid: false,
            violation: Some(v),
        };
        for i in 0..self.rays.len() {
            for j in i + 1..self.rays.len() {
                if self.rays[i] == self.rays[j] {
                    return bad(FanViolation::DuplicateRay { first: i, second: j });
                }
            }
        }
        for &m in &self.max_cones {
            let g = self.geometry(m);
            if !g.is_pointed() {
                return bad(FanViolation::NotStronglyConvex { cone: m });
            }
            if let Some(r) = m.indices().find(|&i| !g.rays().contains(&self.rays[i])) {
                return bad(FanViolation::NonExtremeRay { cone: m, ray: r });
            }
        }
        for &a in &self.max_cones {
            for &b in &self.max_cones {
                if a != b && a.is_subset(b) {
                    return bad(FanViolation::NestedMaximalCones { inner: a, outer: b });
                }
            }
        }
        for (x, &a) in self.max_cones.iter().enumerate() {
            for &b in &self.max_cones[x + 1..] {
                let ga = self.geometry(a);
                let gb = self.geometry(b);
                let meet = ga.intersect(gb).expect("same rank");
                let common = a.intersection(b);
                let ok = self.contains_cone(common)
                    && meet == *self.geometry(common)
                    && meet.is_face_of(ga)
                    && meet.is_face_of(gb);
                if !ok {
                    return bad(FanViolation::BadIntersection { first: a, second: b });
                }
            }
        }
        let used = self.max_cones.iter().fold(RaySet::ZERO, |acc, &m| acc.union(m));
        if let Some(r) = (0..self.rays.len()).find(|&i| !used.contains(i)) {
            return bad(FanViolation::UnusedRay { ray: r });
        }
        FanReport {
            valid: true,
            violation: None,
        }
    }

    /// Maximal cones as stored, or the zero cone for the torus.
    fn effective_max(&self) -> Vec<RaySet> {
        if self.max_cones.is_empty() {
            vec![RaySet::ZERO]
        } else {
            self.max_cones.clone()
        }
    }

    /// Complete support, via ridge pairing: pure of full dimension, every
    /// codimension-one cone in exactly two maximal cones, and the maximal
    /// cones connected through ridges.
    pub fn is_complete(&self) -> bool {
        let maxes = self.effective_max();
        if maxes.iter().any(|&m| self.dimension(m) != self.rank) {
            return false;
        }
        if self.rank == 0 {
            return true;
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); maxes.len()];
        for &r in &self.cones {
            if self.dimension(r) + 1 != self.rank {
                continue;
            }
            let holders: Vec<usize> = (0..maxes.len()).filter(|&k| r.is_subset(maxes[k])).collect();
            if holders.len() != 2 {
                return false;
            }
            adjacency[holders[0]].push(holders[1]);
            adjacency[holders[1]].push(holders[0]);
        }
        let mut seen = vec![false; maxes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for &n in &adjacency[k] {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|&m| self.geometry(m).is_simplicial())
    }

    /// Every cone generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|&m| {
            let rows: Vec<Vec<BigInt>> = m.indices().map(|i| self.rays[i].clone()).collect();
            let mat = IntMatrix::from_rows(self.rank, &rows);
            crate::lattice::smith_normal_form(&mat).diag.iter().all(|d| d.is_one())
        })
    }

    /// All face-closed sets of cones, i.e. all torus-invariant open subsets.
    pub fn enumerate_open_subsets(&self, max_subsets: usize) -> Result<Vec<SubfanSelection>, FanError> {
        let mut order: Vec<usize> = (0..self.cones.len()).collect();
        order.sort_by_key(|&i| (self.cones[i].len(), self.cones[i]));
        let mut chosen = vec![false; self.cones.len()];
        let mut out = Vec::new();
        self.ideals(&order, 0, &mut chosen, &mut out, max_subsets)?;
        out.sort();
        Ok(out)
    }

    fn ideals(
        &self,
        order: &[usize],
        pos: usize,
        chosen: &mut Vec<bool>,
        out: &mut Vec<SubfanSelection>,
        max: usize,
    ) -> Result<(), FanError> {
        if pos == order.len() {
            if out.len() >= max {
                return Err(FanError::SizeGuard(max));
            }
            out.push(ConeSet::new(
                (0..self.cones.len()).filter(|&i| chosen[i]).map(|i| self.cones[i]),
            ));
            return Ok(());
        }
        let i = order[pos];
        self.ideals(order, pos + 1, chosen, out, max)?;
        if self.proper_faces[i].iter().all(|&j| chosen[j]) {
            chosen[i] = true;
            self.ideals(order, pos + 1, chosen, out, max)?;
            chosen[i] = false;
        }
        Ok(())
    }

    /// Unimodular lattice maps permuting the rays and the maximal cones.
    pub fn automorphisms(&self) -> Result<Vec<FanAutomorphism>, FanError> {
        let d = self.rank;
        let all = IntMatrix::from_rows(d, &self.rays);
        if all.rank() != d {
            return Err(FanError::NotSpanning);
        }
        let mut basis: Vec<usize> = Vec::new();
        for i in 0..self.rays.len() {
            let mut rows: Vec<Vec<BigInt>> = basis.iter().map(|&b| self.rays[b].clone()).collect();
            rows.push(self.rays[i].clone());
            if IntMatrix::from_rows(d, &rows).rank() == rows.len() {
                basis.push(i);
            }
            if basis.len() == d {
                break;
            }
        }
        let n = self.rays.len();
        let mut found: Vec<FanAutomorphism> = Vec::new();
        let mut targets = vec![0usize; d];
        loop {
            let distinct = (0..d).all(|a| (a + 1..d).all(|b| targets[a] != targets[b]));
            if distinct {
                if let Some(m) = solve_map(self, &basis, &targets) {
                    if let Ok(aut) = FanAutomorphism::new(self, m) {
                        if !found.contains(&aut) {
                            found.push(aut);
                        }
                    }
                }
            }
            let mut k = 0;
            while k < d {
                targets[k] += 1;
                if targets[k] < n {
                    break;
                }
                targets[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
        found.sort();
        Ok(found)
    }
}

/// The rational matrix sending `rays[basis[k]]` to `rays[targets[k]]`, if integral.
fn solve_map(fan: &Fan, basis: &[usize], targets: &[usize]) -> Option<IntMatrix> {
    let d = fan.rank();
    // rows: A * b_k = t_k  <=>  B^T A^T = T^T ; solve column by column over Q
    let b: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|&i| fan.ray(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut out = IntMatrix::zeros(d, d);
    for row in 0..d {
        // find a_row with b_k . a_row = t_k[row]
        let rhs: Vec<BigRational> = targets
            .iter()
            .map(|&t| BigRational::from_integer(fan.ray(t)[row].clone()))
            .collect();
        let sol = gauss(b.clone(), rhs)?;
        for (j, v) in sol.into_iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            out.set(row, j, v.to_integer());
        }
    }
    Some(out)
}

fn gauss(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
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
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
        let cones: Vec<String> = self.max_cones.iter().map(|c| c.to_string()).collect();
        write!(f, "fan(rank {}; rays {}; cones {})", self.rank, rays.join(" "), cones.join(" "))
    }
}

/// A lattice automorphism preserving a fan, with its ray permutation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FanAutomorphism {
    matrix: IntMatrix,
    perm: Vec<usize>,
}

impl FanAutomorphism {
    pub fn new(fan: &Fan, matrix: IntMatrix) -> Result<Self, FanError> {
        let d = fan.rank();
        if matrix.rows() != d || matrix.cols() != d || !matrix.is_unimodular() {
            return Err(FanError::NotAnAutomorphism);
        }
        let lookup: HashMap<&[BigInt], usize> = fan.rays().iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
        let mut perm = Vec::with_capacity(fan.rays().len());
        for r in fan.rays() {
            let img = matrix.apply(r);
            match lookup.get(img.as_slice()) {
                Some(&j) => perm.push(j),
                None => return Err(FanError::NotAnAutomorphism),
            }
        }
        let mut seen = perm.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != perm.len() {
            return Err(FanError::NotAnAutomorphism);
        }
        let maxes = fan.max_cones();
        if maxes.iter().any(|m| maxes.binary_search(&m.permute(&perm)).is_err()) {
            return Err(FanError::NotAnAutomorphism);
        }
        Ok(FanAutomorphism { matrix, perm })
    }

    pub fn identity(fan: &Fan) -> Self {
        FanAutomorphism {
            matrix: IntMatrix::identity(fan.rank()),
            perm: (0..fan.rays().len()).collect(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.matrix == IntMatrix::identity(self.matrix.rows())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FanAutomorphism) -> FanAutomorphism {
        FanAutomorphism {
            matrix: self.matrix.mul(&other.matrix),
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> FanAutomorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        FanAutomorphism {
            matrix: self.matrix.unimodular_inverse().expect("unimodular"),
            perm,
        }
    }

    pub fn apply_cone(&self, c: RaySet) -> RaySet {
        c.permute(&self.perm)
    }

    pub fn apply_set(&self, s: &ConeSet) -> ConeSet {
        s.permute(&self.perm)
    }

    pub fn apply_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(v)
    }
}

impl fmt::Display for FanAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Negated vector helper used by callers building lattices.
pub fn negate(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

/// Sign of the first nonzero entry (0 for the zero vector).
pub fn leading_sign(v: &[BigInt]) -> i32 {
    v.iter()
        .find(|x| !x.is_zero())
        .map_or(0, |x| if x.is_negative() { -1 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p1() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()
    }

    pub(crate) fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    fn quadrant() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(p2().validate().valid);
        let overlap = Fan::from_i64(2, &[&[1, 0], &[1, 2], &[1, 1], &[0, 1]], &[&[0, 1], &[2, 3]]).unwrap();
        let r = overlap.validate();
        assert!(!r.valid);
        assert!(matches!(r.violation, Some(FanViolation::BadIntersection { .. })));
        let empty = Fan::new(3, vec![], &[]).unwrap();
        assert!(empty.validate().valid);
        assert_eq!(empty.cones(), &[RaySet::ZERO]);
        let line = Fan::from_i64(1, &[&[1], &[-1]], &[&[0, 1]]).unwrap();
        assert!(matches!(line.validate().violation, Some(FanViolation::NotStronglyConvex { .. })));
    }

    #[test]
    fn completeness() {
        assert!(p1().is_complete());
        assert!(!quadrant().is_complete());
        assert!(p2().is_complete());
        let a1 = Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap();
        assert!(!a1.is_complete());
    }

    #[test]
    fn listed_faces_are_not_maximal() {
        let f = Fan::from_i64(2, &[&[1, 0], &[-1, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0], &[1], &[]]).unwrap();
        assert_eq!(f.max_cones().len(), 3);
        assert!(f.is_complete());
    }

    #[test]
    fn simpliciality() {
        assert!(p2().is_simplicial());
        let square = Fan::from_i64(
            3,
            &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]],
            &[&[0, 1, 2, 3]],
        )
        .unwrap();
        assert!(square.validate().valid);
        assert!(!square.is_simplicial());
        // the square cone has 4 rays, 4 two-dimensional faces, the zero cone and itself
        assert_eq!(square.cones().len(), 10);
    }

    #[test]
    fn open_subsets() {
        let s = p1().enumerate_open_subsets(1 << 20).unwrap();
        assert_eq!(s.len(), 5);
        let c1 = Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap();
        assert_eq!(c1.enumerate_open_subsets(1 << 20).unwrap().len(), 3);
        let empty = Fan::new(2, vec![], &[]).unwrap();
        assert_eq!(empty.enumerate_open_subsets(1 << 20).unwrap().len(), 2);
        assert_eq!(p2().enumerate_open_subsets(3), Err(FanError::SizeGuard(3)));
    }

    #[test]
    fn limits() {
        let f = p1();
        assert_eq!(f.limit_of_generic_point(&to_big(&[1])), Some(RaySet::single(0)));
        assert_eq!(f.limit_of_generic_point(&to_big(&[0])), Some(RaySet::ZERO));
        let c1 = Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap();
        assert_eq!(c1.limit_of_generic_point(&to_big(&[-1])), None);
        assert_eq!(p2().limit_of_generic_point(&to_big(&[2, 1])), Some(RaySet::from_indices([0, 1])));
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(p1().automorphisms().unwrap().len(), 2);
        assert_eq!(p2().automorphisms().unwrap().len(), 6);
        assert_eq!(quadrant().automorphisms().unwrap().len(), 2);
        let a1 = Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        assert_eq!(a1.automorphisms(), Err(FanError::NotSpanning));
    }

    #[test]
    fn orbit_relation() {
        let f = p1();
        let poset = f.orbit_poset();
        assert!(poset.contains(&(RaySet::single(0), RaySet::ZERO)));
        assert!(!poset.contains(&(RaySet::ZERO, RaySet::single(0))));
        assert_eq!(f.orbit_closure(RaySet::ZERO).len(), 3);
    }
}
