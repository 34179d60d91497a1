//! Cox presentation of a toric variety `X = X̂ // H`.
//!
//! With rays `v_1..v_n` spanning `N ⊗ Q`, the pairing `P: M → Zⁿ`,
//! `m ↦ (⟨m, v_i⟩)`, has cokernel the class group `Cl(X)`. The quasitorus
//! `H = Hom(Cl, C*)` acts on `Cⁿ` with weights the classes of the
//! coordinate divisors, and `X̂` is the union of the orbits of the orthant
//! faces indexed by cones of the fan. Orthant faces are written as the ray
//! sets of those cones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::Cone;
use crate::error::CoxError;
use crate::fan::{ConeSet, Fan, RaySet, SubfanSelection};
use crate::lattice::{
    cokernel_diagnostics, dot, fmt_vec, hermite_rows, kernel_lattice, smith_normal_form, CokernelShape, IntMatrix,
    Sublattice,
};
use crate::quotient::{good_quotient, QuotientFan, SubtorusAction};

/// A divisor class: free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassDegree {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for ClassDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_vec(&self.free))?;
        if !self.torsion.is_empty() {
            write!(f, "+{}", fmt_vec(&self.torsion))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxPresentation {
    fan: Fan,
    pairing: IntMatrix,
    class_group: CokernelShape,
    free_rows: Vec<Vec<BigInt>>,
    torsion_rows: Vec<(Vec<BigInt>, BigInt)>,
    relevant: ConeSet,
    /// Cocharacters of the identity component of `H`, inside `Zⁿ`.
    h_cochar: Sublattice,
}

pub fn cox_presentation(fan: &Fan) -> Result<CoxPresentation, CoxError> {
    let n = fan.rays().len();
    let d = fan.rank();
    let pairing = IntMatrix::from_rows(d, fan.rays());
    if pairing.rank() != d {
        return Err(CoxError::Fan(crate::error::FanError::NotSpanning));
    }
    let snf = smith_normal_form(&pairing);
    let r = snf.rank();
    let free = (r..n).map(|i| snf.left.row(i).to_vec()).collect::<Vec<_>>();
    let free_rows = hermite_rows(&free, n);
    let torsion_rows = (0..r)
        .filter(|&i| snf.diag[i] > BigInt::one())
        .map(|i| {
            let m = snf.diag[i].clone();
            (snf.left.row(i).iter().map(|x| x.mod_floor(&m)).collect(), m)
        })
        .collect();
    let ray_matrix = pairing.transpose();
    Ok(CoxPresentation {
        fan: fan.clone(),
        class_group: cokernel_diagnostics(&pairing),
        pairing,
        free_rows,
        torsion_rows,
        relevant: fan.all_cones(),
        h_cochar: kernel_lattice(&ray_matrix),
    })
}

impl CoxPresentation {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn num_coordinates(&self) -> usize {
        self.fan.rays().len()
    }

    pub fn class_group(&self) -> &CokernelShape {
        &self.class_group
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// Class of an exponent vector (a divisor `Σ a_i D_i`).
    pub fn degree(&self, a: &[BigInt]) -> ClassDegree {
        ClassDegree {
            free: self.free_rows.iter().map(|r| dot(r, a)).collect(),
            torsion: self.torsion_rows.iter().map(|(r, m)| dot(r, a).mod_floor(m)).collect(),
        }
    }

    /// Class of each coordinate divisor.
    pub fn weights(&self) -> Vec<ClassDegree> {
        let n = self.num_coordinates();
        (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                self.degree(&e)
            })
            .collect()
    }

    /// Free parts of the weights, one vector per coordinate.
    pub fn free_weights(&self) -> Vec<Vec<BigInt>> {
        self.weights().into_iter().map(|w| w.free).collect()
    }

    /// `grading ∘ pairing = 0` and the grading is onto the stated group.
    pub fn is_exact(&self) -> bool {
        let d = self.fan.rank();
        let vanishes = (0..d).all(|j| {
            let col = self.pairing.col(j);
            self.degree(&col) == self.degree(&vec![BigInt::zero(); self.num_coordinates()])
        });
        vanishes
            && self.free_rows.len() == self.class_group.free_rank
            && self.torsion_rows.len() == self.class_group.torsion.len()
    }

    /// Orthant faces whose orbits make up `X̂`.
    pub fn relevant(&self) -> &ConeSet {
        &self.relevant
    }

    pub fn h_cochar(&self) -> &Sublattice {
        &self.h_cochar
    }

    pub fn h_rank(&self) -> usize {
        self.h_cochar.rank()
    }

    /// The identity component of `H` as a subtorus of `(C*)ⁿ`.
    pub fn h_action(&self) -> SubtorusAction {
        SubtorusAction::normalize(self.num_coordinates(), &self.h_cochar.basis().to_rows())
    }

    pub fn orthant(&self) -> Fan {
        Fan::orthant(self.num_coordinates())
    }

    /// Cocharacters in `Zⁿ` of the preimage of a subtorus of `X`'s torus:
    /// everything the ray map sends into the acting lattice. Contains the
    /// cocharacters of `H`.
    pub fn lifted_cochar(&self, act: &SubtorusAction) -> Sublattice {
        let n = self.num_coordinates();
        if act.quotient_rank() == 0 {
            return Sublattice::full(n);
        }
        kernel_lattice(&act.projection().mul(&self.pairing.transpose()))
    }

    /// Character group of the isotropy group of `H` at the distinguished
    /// point of an orthant face: the cokernel of the pairing restricted to
    /// the coordinates of the face.
    pub fn isotropy(&self, face: RaySet) -> CokernelShape {
        let rows: Vec<usize> = face.indices().collect();
        if rows.is_empty() {
            return CokernelShape {
                free_rank: 0,
                torsion: vec![],
            };
        }
        cokernel_diagnostics(&self.pairing.select_rows(&rows))
    }

    /// A relevant face with nontrivial finite isotropy, if any.
    pub fn finite_isotropy_witness(&self) -> Option<(RaySet, CokernelShape)> {
        self.relevant.iter().find_map(|f| {
            let iso = self.isotropy(f);
            (iso.is_finite() && !iso.is_trivial()).then_some((f, iso))
        })
    }

    /// Lift of an open subset of `X` to the orthant fan of `Cⁿ`.
    pub fn lift_open(&self, u: &SubfanSelection) -> Result<SubfanSelection, CoxError> {
        if !u.is_subset(&self.relevant) || !self.fan.is_face_closed(u) {
            return Err(CoxError::Fan(crate::error::FanError::ForeignCone));
        }
        Ok(u.clone())
    }

    pub fn canonical_section(&self, a: &[BigInt]) -> Result<MonomialSection, CoxError> {
        let n = self.num_coordinates();
        if a.len() != n {
            return Err(CoxError::SectionLength {
                expected: n,
                got: a.len(),
            });
        }
        if a.iter().any(|x| x.is_negative()) {
            return Err(CoxError::NegativeExponent);
        }
        Ok(MonomialSection {
            exponents: a.to_vec(),
            degree: self.degree(a),
        })
    }

    /// Quotient of the lift of `u` by the identity component of `H`,
    /// compared with `u` itself.
    pub fn round_trip(&self, u: &SubfanSelection) -> Result<RoundTrip, CoxError> {
        let lift = self.lift_open(u)?;
        let orthant = self.orthant();
        let act = self.h_action();
        let q = good_quotient(&orthant, &lift, &act).map_err(|e| CoxError::RoundTrip(e.to_string()))?;
        let ray_matrix = self.pairing.transpose();
        Ok(compare_round_trip(&self.fan, u, &q, &ray_matrix))
    }
}

/// Result of quotienting a lift back down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub reproduces_fan: bool,
    pub orbit_map_matches: bool,
    pub geometric: bool,
    /// Index of the lattice spanned by the rays; 1 when `H` is connected
    /// modulo torsion coming from the class group.
    pub lattice_index: BigInt,
    pub detail: Option<String>,
}

impl RoundTrip {
    pub fn ok(&self) -> bool {
        self.reproduces_fan && self.orbit_map_matches
    }
}

fn compare_round_trip(fan: &Fan, u: &SubfanSelection, q: &QuotientFan, ray_matrix: &IntMatrix) -> RoundTrip {
    let mut out = RoundTrip {
        reproduces_fan: false,
        orbit_map_matches: false,
        geometric: q.is_geometric(),
        lattice_index: BigInt::zero(),
        detail: None,
    };
    if u.is_empty() {
        out.reproduces_fan = q.is_empty();
        out.orbit_map_matches = q.is_empty();
        out.lattice_index = BigInt::one();
        return out;
    }
    let p = q.projection();
    let change = match p.right_inverse() {
        Some(r) if p.rows() == fan.rank() => ray_matrix.mul(&r),
        _ => {
            out.detail = Some(format!("quotient has rank {}, fan has rank {}", p.rows(), fan.rank()));
            return out;
        }
    };
    if change.mul(p) != *ray_matrix {
        out.detail = Some("ray map does not factor through the quotient".into());
        return out;
    }
    out.lattice_index = change.det().abs();
    let as_source = |qc: RaySet| -> Option<RaySet> {
        let gens: Vec<Vec<BigInt>> = qc.indices().map(|i| change.apply(q.fan().ray(i))).collect();
        let g = Cone::from_generators(fan.rank(), &gens);
        u.iter().find(|&c| *fan.geometry(c) == g)
    };
    let qcones = q.cones();
    out.reproduces_fan = qcones.len() == u.len() && qcones.iter().all(|c| as_source(c).is_some());
    out.orbit_map_matches = u.iter().all(|t| q.image_of(t).and_then(as_source) == Some(t));
    if !out.ok() {
        out.detail = Some("quotient of the lift differs from the selection".into());
    }
    out
}

/// The canonical section `∏ z_i^{a_i}` of the divisor `Σ a_i D_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialSection {
    pub exponents: Vec<BigInt>,
    pub degree: ClassDegree,
}

impl MonomialSection {
    pub fn support(&self) -> RaySet {
        RaySet::from_indices((0..self.exponents.len()).filter(|&i| !self.exponents[i].is_zero()))
    }

    /// Orthant faces of `X̂` on whose orbits the section vanishes.
    pub fn zero_set(&self, p: &CoxPresentation) -> ConeSet {
        let s = self.support();
        ConeSet::new(p.relevant().iter().filter(|f| !f.intersection(s).is_empty()))
    }

    /// Cones of `X` in the support of the divisor: the union of the orbit
    /// closures of the supported rays.
    pub fn divisor_support(&self, p: &CoxPresentation) -> ConeSet {
        let s = self.support();
        ConeSet::new(p.fan().cones().iter().copied().filter(|c| !c.intersection(s).is_empty()))
    }
}

/// Checks that the zero set of the canonical section is the preimage of the
/// divisor's support under the quotient of `X̂`, using the orbit map of the
/// round-trip quotient.
pub fn zero_set_identity(p: &CoxPresentation, s: &MonomialSection) -> Result<bool, CoxError> {
    let orthant = p.orthant();
    let q = good_quotient(&orthant, p.relevant(), &p.h_action()).map_err(|e| CoxError::RoundTrip(e.to_string()))?;
    let rt = compare_round_trip(p.fan(), p.relevant(), &q, &p.pairing().transpose());
    if !rt.ok() {
        return Ok(false);
    }
    let zero = s.zero_set(p);
    let support = s.divisor_support(p);
    // the orbit map identifies quotient cones with cones of the fan
    let support_q = q.image_set(&support);
    Ok(q.preimage(&support_q) == zero && q.image_set(&zero) == support_q)
}

/// A polynomial on `Cⁿ` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialSection {
    pub terms: Vec<(BigRational, Vec<BigInt>)>,
    /// Declared weight under the acting torus, if given.
    pub declared_weight: Option<Vec<BigInt>>,
}

impl PolynomialSection {
    pub fn eval(&self, x: &[BigInt]) -> BigRational {
        self.terms
            .iter()
            .map(|(c, e)| {
                let mut v = c.clone();
                for (xi, ei) in x.iter().zip(e) {
                    let k = ei.try_into().unwrap_or(u32::MAX);
                    v *= BigRational::from_integer(num_traits::pow::Pow::pow(xi, k));
                }
                v
            })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Section {
    Monomial(MonomialSection),
    Polynomial(PolynomialSection),
}

impl Section {
    fn exponents(&self) -> Vec<&Vec<BigInt>> {
        match self {
            Section::Monomial(m) => vec![&m.exponents],
            Section::Polynomial(p) => p.terms.iter().map(|(_, e)| e).collect(),
        }
    }

    fn eval(&self, x: &[BigInt]) -> bool {
        match self {
            Section::Monomial(m) => m.exponents.iter().zip(x).all(|(e, xi)| e.is_zero() || !xi.is_zero()),
            Section::Polynomial(p) => !p.eval(x).is_zero(),
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Monomial(m) => write!(f, "z^{}", fmt_vec(&m.exponents)),
            Section::Polynomial(p) => {
                let parts: Vec<String> = p.terms.iter().map(|(c, e)| format!("{c}*z^{}", fmt_vec(e))).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Verdict that can be decided exactly, by sampling, or not at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    /// Not decidable from fan data; only sample points were checked and
    /// none contradicted it.
    Sampled,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn acceptable(self) -> bool {
        self != Verdict::Fails
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Sampled => "not combinatorially decidable; no counterexample among samples",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub section: String,
    pub homogeneous: Verdict,
    pub weight: Option<Vec<BigInt>>,
    pub affine: Verdict,
    pub contained: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub members: Vec<MemberReport>,
    /// Pairs checked: orbit pairs for monomial families, sampled point pairs otherwise.
    pub pairs_checked: usize,
    pub uncovered: Vec<String>,
    pub pair_coverage: Verdict,
    pub is_witness: Verdict,
}

/// Number of sampled point pairs for polynomial families.
pub const SAMPLE_PAIRS: usize = 100;

/// Checks whether `family` is a witness that `u_hat` (a selection of the
/// orthant fan of `Cⁿ`) is globally defined for the torus with cocharacters
/// `t_cochar ⊆ Zⁿ`: homogeneous members with affine nonvanishing loci
/// inside `u_hat`, and every pair of points of `u_hat` in one such locus.
pub fn verify_globally_defined(
    p: &CoxPresentation,
    u_hat: &SubfanSelection,
    family: &[Section],
    t_cochar: &Sublattice,
    seed: u64,
) -> Result<WitnessReport, CoxError> {
    let n = p.num_coordinates();
    let t_rows = t_cochar.basis().to_rows();
    if t_cochar.ambient() != n {
        return Err(CoxError::WeightLength {
            expected: n,
            got: t_cochar.ambient(),
        });
    }
    let orthant = p.orthant();
    if !orthant.is_face_closed(u_hat) {
        return Err(CoxError::Fan(crate::error::FanError::ForeignCone));
    }
    for s in family {
        for e in s.exponents() {
            if e.len() != n {
                return Err(CoxError::SectionLength { expected: n, got: e.len() });
            }
            if e.iter().any(|x| x.is_negative()) {
                return Err(CoxError::NegativeExponent);
            }
        }
        if let Section::Polynomial(poly) = s {
            if poly.terms.is_empty() {
                return Err(CoxError::EmptyPolynomial);
            }
            if let Some(w) = &poly.declared_weight {
                if w.len() != t_rows.len() {
                    return Err(CoxError::WeightLength {
                        expected: t_rows.len(),
                        got: w.len(),
                    });
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_faces: Vec<RaySet> = orthant.cones().to_vec();
    // one sample point per orbit of Cⁿ, orbit-stratified
    let sample_point = |f: RaySet, rng: &mut ChaCha8Rng| -> Vec<BigInt> {
        (0..n)
            .map(|i| {
                if f.contains(i) {
                    BigInt::zero()
                } else {
                    let v: i64 = rng.gen_range(1..=5);
                    BigInt::from(if rng.gen_bool(0.5) { v } else { -v })
                }
            })
            .collect()
    };

    let mut members = vec![];
    for s in family {
        let weights: Vec<Vec<BigInt>> = s
            .exponents()
            .iter()
            .map(|e| t_rows.iter().map(|l| dot(l, e)).collect())
            .collect();
        let degrees: Vec<ClassDegree> = s.exponents().iter().map(|e| p.degree(e)).collect();
        let weight = weights[0].clone();
        let mut homogeneous = weights.iter().all(|w| *w == weight) && degrees.iter().all(|d| *d == degrees[0]);
        if let Section::Polynomial(PolynomialSection {
            declared_weight: Some(w),
            ..
        }) = s
        {
            homogeneous &= *w == weight;
        }
        let (affine, contained) = match s {
            Section::Monomial(m) => {
                let supp = m.support();
                let nonvanishing = ConeSet::new(u_hat.iter().filter(|f| f.intersection(supp).is_empty()));
                let affine = match nonvanishing.maximal().as_slice() {
                    [top] => nonvanishing == ConeSet::new(orthant.faces_of(*top)),
                    [] => true,
                    _ => false,
                };
                let contained = all_faces
                    .iter()
                    .filter(|f| f.intersection(supp).is_empty())
                    .all(|f| u_hat.contains(*f));
                (Verdict::from_bool(affine), Verdict::from_bool(contained))
            }
            Section::Polynomial(_) => {
                let mut contained = true;
                for &f in &all_faces {
                    for _ in 0..3 {
                        let x = sample_point(f, &mut rng);
                        if s.eval(&x) && !u_hat.contains(f) {
                            contained = false;
                        }
                    }
                }
                let contained = if contained { Verdict::Sampled } else { Verdict::Fails };
                (Verdict::Sampled, contained)
            }
        };
        members.push(MemberReport {
            section: s.to_string(),
            homogeneous: Verdict::from_bool(homogeneous),
            weight: Some(weight),
            affine,
            contained,
        });
    }

    let monomial_only = family.iter().all(|s| matches!(s, Section::Monomial(_)));
    let usable: Vec<&Section> = family
        .iter()
        .zip(&members)
        .filter(|(_, m)| m.affine.acceptable())
        .map(|(s, _)| s)
        .collect();
    let mut uncovered = vec![];
    let mut pairs_checked = 0;
    let faces: Vec<RaySet> = u_hat.iter().collect();
    if monomial_only {
        for (i, &a) in faces.iter().enumerate() {
            for &b in &faces[i..] {
                pairs_checked += 1;
                let covered = usable.iter().any(|s| match s {
                    Section::Monomial(m) => m.support().intersection(a.union(b)).is_empty(),
                    Section::Polynomial(_) => false,
                });
                if !covered && uncovered.len() < 10 {
                    uncovered.push(format!("orbits {a} and {b}"));
                }
            }
        }
    } else if !faces.is_empty() {
        for _ in 0..SAMPLE_PAIRS {
            let fa = faces[rng.gen_range(0..faces.len())];
            let fb = faces[rng.gen_range(0..faces.len())];
            let (x, y) = (sample_point(fa, &mut rng), sample_point(fb, &mut rng));
            pairs_checked += 1;
            if !usable.iter().any(|s| s.eval(&x) && s.eval(&y)) && uncovered.len() < 10 {
                uncovered.push(format!("points {} and {}", fmt_vec(&x), fmt_vec(&y)));
            }
        }
    }
    let pair_coverage = match (uncovered.is_empty(), monomial_only) {
        (false, _) => Verdict::Fails,
        (true, true) => Verdict::Holds,
        (true, false) => Verdict::Sampled,
    };
    let verdicts = members
        .iter()
        .flat_map(|m| [m.homogeneous, m.affine, m.contained])
        .chain(std::iter::once(pair_coverage));
    let is_witness = verdicts.fold(Verdict::Holds, |acc, v| match (acc, v) {
        (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
        (Verdict::Sampled, _) | (_, Verdict::Sampled) => Verdict::Sampled,
        _ => Verdict::Holds,
    });
    Ok(WitnessReport {
        members,
        pairs_checked,
        uncovered,
        pair_coverage,
        is_witness,
    })
}

/// Random nonnegative exponent vectors with entries in `0..=max`.
pub fn random_exponents(n: usize, count: usize, max: u32, seed: u64) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(0..=max))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{affine_plane, projective_plane, weighted_p112};
    use crate::lattice::to_big;

    fn free(p: &CoxPresentation) -> Vec<i64> {
        p.free_weights().iter().map(|w| i64::try_from(&w[0]).unwrap()).collect()
    }

    #[test]
    fn projective_plane_presentation() {
        let p = cox_presentation(&projective_plane()).unwrap();
        assert_eq!(p.class_group().to_string(), "Z");
        assert_eq!(free(&p), vec![1, 1, 1]);
        assert!(p.is_exact());
        assert_eq!(p.h_rank(), 1);
        assert_eq!(p.relevant().len(), 7);
        assert!(!p.relevant().contains(RaySet::from_indices([0, 1, 2])));
        assert!(p.finite_isotropy_witness().is_none());
        assert!(p.round_trip(&p.fan().all_cones()).unwrap().ok());
    }

    #[test]
    fn weighted_plane_presentation() {
        let p = cox_presentation(&weighted_p112()).unwrap();
        assert_eq!(p.class_group().to_string(), "Z");
        assert_eq!(free(&p), vec![1, 2, 1]);
        let (face, iso) = p.finite_isotropy_witness().unwrap();
        assert_eq!(face, RaySet::from_indices([0, 2]));
        assert_eq!(iso.to_string(), "Z/2");
        let rt = p.round_trip(&p.fan().all_cones()).unwrap();
        assert!(rt.ok() && rt.geometric);
    }

    #[test]
    fn affine_plane_presentation() {
        let p = cox_presentation(&affine_plane()).unwrap();
        assert!(p.class_group().is_trivial());
        assert_eq!(p.h_rank(), 0);
        assert_eq!(p.relevant(), &Fan::orthant(2).all_cones());
        let line = crate::corpus::affine_line();
        let s = crate::fan::Fan::from_i64(2, &[&[1, 0]], &[&[0]]);
        assert!(s.is_ok() && line.rank() == 1);
        assert!(matches!(
            cox_presentation(&s.unwrap()),
            Err(CoxError::Fan(crate::error::FanError::NotSpanning))
        ));
    }

    #[test]
    fn canonical_sections() {
        let p = cox_presentation(&projective_plane()).unwrap();
        let s = p.canonical_section(&to_big(&[1, 0, 0])).unwrap();
        let f = p.fan();
        let line = f.orbit_closure(RaySet::single(0));
        assert_eq!(s.divisor_support(&p), line);
        assert!(zero_set_identity(&p, &s).unwrap());
        let unit = p.canonical_section(&to_big(&[0, 0, 0])).unwrap();
        assert!(unit.zero_set(&p).is_empty());
        let two = p.canonical_section(&to_big(&[1, 1, 0])).unwrap();
        let rest = f.all_cones().difference(&two.divisor_support(&p));
        assert_eq!(rest, f.face_closure([RaySet::single(2)]).unwrap());
        assert_eq!(p.canonical_section(&to_big(&[-1, 0, 0])), Err(CoxError::NegativeExponent));
    }

    #[test]
    fn lifts() {
        let p = cox_presentation(&projective_plane()).unwrap();
        let f = p.fan();
        let chart = f.face_closure([RaySet::from_indices([0, 1])]).unwrap();
        assert_eq!(p.lift_open(&chart).unwrap(), chart);
        assert!(p.lift_open(&ConeSet::empty()).unwrap().is_empty());
        assert!(p.round_trip(&chart).unwrap().ok());
        assert!(p.round_trip(&ConeSet::empty()).unwrap().ok());
    }

    #[test]
    fn witness_families() {
        let p = cox_presentation(&projective_plane()).unwrap();
        let fam: Vec<Section> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|a| Section::Monomial(p.canonical_section(&to_big(a)).unwrap()))
            .collect();
        assert_eq!(&p.lifted_cochar(&SubtorusAction::trivial(2)), p.h_cochar());
        assert_eq!(p.lifted_cochar(&SubtorusAction::full(2)), Sublattice::full(3));
        let r = verify_globally_defined(&p, p.relevant(), &fam, &Sublattice::zero(3), 7).unwrap();
        assert!(r.members.iter().all(|m| m.affine == Verdict::Holds));
        assert_eq!(r.is_witness, Verdict::Fails);

        let c2 = cox_presentation(&affine_plane()).unwrap();
        let unit = Section::Monomial(c2.canonical_section(&to_big(&[0, 0])).unwrap());
        let r = verify_globally_defined(&c2, c2.relevant(), &[unit], &Sublattice::zero(2), 7).unwrap();
        assert_eq!(r.is_witness, Verdict::Holds);

        let diag = Sublattice::from_generators(2, &[to_big(&[1, 1])]);
        let punctured = Fan::orthant(2).face_closure([RaySet::single(0), RaySet::single(1)]).unwrap();
        let z = |a: [i64; 2]| Section::Monomial(c2.canonical_section(&to_big(&a)).unwrap());
        let mut fam = vec![z([1, 0]), z([0, 1])];
        let diag_action = SubtorusAction::normalize(2, &[to_big(&[1, 1])]);
        assert_eq!(c2.lifted_cochar(&diag_action), diag);
        let r = verify_globally_defined(&c2, &punctured, &fam, &diag, 7).unwrap();
        assert_eq!(r.is_witness, Verdict::Fails);
        let one = BigRational::one();
        fam.push(Section::Polynomial(PolynomialSection {
            terms: vec![(one.clone(), to_big(&[1, 0])), (-one, to_big(&[0, 1]))],
            declared_weight: Some(to_big(&[1])),
        }));
        let r = verify_globally_defined(&c2, &punctured, &fam, &diag, 7).unwrap();
        assert_eq!(r.pairs_checked, SAMPLE_PAIRS);
        assert_eq!(r.is_witness, Verdict::Sampled);
        assert_eq!(r, verify_globally_defined(&c2, &punctured, &fam, &diag, 7).unwrap());
    }
}
