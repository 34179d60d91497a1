//! Good quotients of toric open subsets by subtori.
//!
//! A subtorus `H ⊂ T_X` is given by its saturated cocharacter lattice
//! `L ⊂ N` and the projection `π: N → N/L`. An open subset `U` (a
//! face-closed set of cones) has a good quotient by `H` exactly when there
//! is a set of chart cones `S ⊆ U` such that
//!
//! * the images `π(σ)`, `σ ∈ S`, share one lineality space and, after it is
//!   split off, form a fan;
//! * for each `σ ∈ S` the cones of `U` mapping into `π(σ)` are precisely
//!   the faces of `σ` (the chart `X_σ` is the full preimage of its image);
//! * every cone of `U` maps into some `π(σ)`, `σ ∈ S`.
//!
//! The quotient map sends the orbit of `τ` onto the orbit of the smallest
//! quotient cone containing `π(τ)`; saturation and the related set
//! operations are computed from this orbit map.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cone::Cone;
use crate::error::{FanError, QuotientError};
use crate::fan::{ConeSet, Fan, RaySet, SubfanSelection};
use crate::lattice::{quotient_lattice_map, saturate, IntMatrix, Sublattice};

/// A subtorus of the big torus, by its saturated cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubtorusAction {
    cochar: Sublattice,
    projection: IntMatrix,
    /// False when the generators given by the caller spanned a non-saturated
    /// lattice and were saturated here.
    input_saturated: bool,
}

impl SubtorusAction {
    /// The action of the subtorus whose cocharacters are spanned by `gens`,
    /// saturated. Non-injective or non-saturated one-parameter data act
    /// through the saturation of their image.
    pub fn normalize(rank: usize, gens: &[Vec<BigInt>]) -> SubtorusAction {
        let l = Sublattice::from_generators(rank, gens);
        let input_saturated = l.is_saturated();
        Self::from_lattice(saturate(&l), input_saturated)
    }

    fn from_lattice(cochar: Sublattice, input_saturated: bool) -> SubtorusAction {
        let projection = quotient_lattice_map(&cochar).expect("saturated lattice");
        SubtorusAction {
            cochar,
            projection,
            input_saturated,
        }
    }

    pub fn trivial(rank: usize) -> SubtorusAction {
        Self::from_lattice(Sublattice::zero(rank), true)
    }

    pub fn full(rank: usize) -> SubtorusAction {
        Self::from_lattice(Sublattice::full(rank), true)
    }

    pub fn rank(&self) -> usize {
        self.cochar.ambient()
    }

    pub fn cochar(&self) -> &Sublattice {
        &self.cochar
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn quotient_rank(&self) -> usize {
        self.projection.rows()
    }

    pub fn input_was_saturated(&self) -> bool {
        self.input_saturated
    }

    pub fn is_trivial(&self) -> bool {
        self.cochar.rank() == 0
    }

    pub fn is_sub_action_of(&self, other: &SubtorusAction) -> bool {
        self.cochar.is_sublattice_of(&other.cochar)
    }
}

/// Why a selection has no good quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// No chart covers `cone`: the candidate `chart` (smallest cone
    /// containing it) receives `intruder` in its image without having it as
    /// a face.
    ChartViolation { cone: RaySet, chart: RaySet, intruder: RaySet },
    /// Chart images with different lineality spaces.
    MixedLineality { first: RaySet, second: RaySet },
    /// Chart images that do not meet in a common face.
    NonFanImages { first: RaySet, second: RaySet },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::ChartViolation { cone, chart, intruder } => write!(
                f,
                "cone {cone} lies in no affine saturated chart: the image of chart {chart} also receives cone {intruder}, which is not a face of it"
            ),
            Obstruction::MixedLineality { first, second } => {
                write!(f, "images of charts {first} and {second} have different lineality spaces")
            }
            Obstruction::NonFanImages { first, second } => {
                write!(f, "images of charts {first} and {second} do not meet in a common face")
            }
        }
    }
}

/// The combinatorial certificate of a good quotient `U → U // H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientFan {
    /// `N → N/L → (N/L)/K`, where `K` is the common lineality of the chart images.
    projection: IntMatrix,
    lineality_rank: usize,
    fan: Fan,
    empty: bool,
    /// (quotient maximal cone, source chart cone)
    charts: Vec<(RaySet, RaySet)>,
    orbit_map: BTreeMap<RaySet, RaySet>,
}

impl QuotientFan {
    pub fn target_rank(&self) -> usize {
        self.fan.rank()
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn lineality_rank(&self) -> usize {
        self.lineality_rank
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// True for the quotient of the empty selection.
    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Cones of the quotient variety (empty for the empty quotient).
    pub fn cones(&self) -> ConeSet {
        if self.empty {
            ConeSet::empty()
        } else {
            self.fan.all_cones()
        }
    }

    pub fn charts(&self) -> &[(RaySet, RaySet)] {
        &self.charts
    }

    pub fn chart_of(&self, quotient_cone: RaySet) -> Option<RaySet> {
        self.charts.iter().find(|(q, _)| *q == quotient_cone).map(|(_, s)| *s)
    }

    pub fn orbit_map(&self) -> &BTreeMap<RaySet, RaySet> {
        &self.orbit_map
    }

    /// Quotient cone whose orbit receives the orbit of `source`.
    pub fn image_of(&self, source: RaySet) -> Option<RaySet> {
        self.orbit_map.get(&source).copied()
    }

    /// Image of a set of source cones (union of orbits).
    pub fn image_set(&self, s: &ConeSet) -> ConeSet {
        ConeSet::new(s.iter().filter_map(|c| self.image_of(c)))
    }

    /// Source cones whose orbits map into the given quotient orbits.
    pub fn preimage(&self, q: &ConeSet) -> ConeSet {
        ConeSet::new(
            self.orbit_map
                .iter()
                .filter(|(_, t)| q.contains(**t))
                .map(|(s, _)| *s),
        )
    }

    /// Fibers are single orbits: on every chart, distinct faces have
    /// distinct images.
    pub fn is_geometric(&self) -> bool {
        self.charts.iter().all(|&(_, chart)| {
            let mut imgs: Vec<RaySet> = self
                .orbit_map
                .iter()
                .filter(|(s, _)| s.is_subset(chart))
                .map(|(_, t)| *t)
                .collect();
            let n = imgs.len();
            imgs.sort_unstable();
            imgs.dedup();
            imgs.len() == n
        })
    }
}

impl fmt::Display for QuotientFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "empty quotient");
        }
        write!(f, "{}", self.fan)?;
        for (q, s) in &self.charts {
            write!(f, "; chart {q} <- {s}")?;
        }
        Ok(())
    }
}

/// Per-(fan, action) cache of image cones and pairwise image tests.
pub struct QuotientContext<'a> {
    fan: &'a Fan,
    action: &'a SubtorusAction,
    images: Vec<Cone>,
    /// For each cone, the rays whose images lie in its image.
    rays_into: Vec<RaySet>,
    pair_cache: RefCell<HashMap<(usize, usize), bool>>,
}

impl<'a> QuotientContext<'a> {
    pub fn new(fan: &'a Fan, action: &'a SubtorusAction) -> Result<Self, QuotientError> {
        if fan.rank() != action.rank() {
            return Err(QuotientError::RankMismatch {
                expected: fan.rank(),
                got: action.rank(),
            });
        }
        let pi = action.projection();
        let ray_images: Vec<Vec<BigInt>> = fan.rays().iter().map(|r| pi.apply(r)).collect();
        let mut images = Vec::with_capacity(fan.cones().len());
        let mut rays_into = Vec::with_capacity(fan.cones().len());
        for &c in fan.cones() {
            let gens: Vec<Vec<BigInt>> = c.indices().map(|i| ray_images[i].clone()).collect();
            let img = Cone::from_generators(pi.rows(), &gens);
            rays_into.push(RaySet::from_indices(
                (0..ray_images.len()).filter(|&i| img.contains(&ray_images[i])),
            ));
            images.push(img);
        }
        Ok(QuotientContext {
            fan,
            action,
            images,
            rays_into,
            pair_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn action(&self) -> &'a SubtorusAction {
        self.action
    }

    fn idx(&self, c: RaySet) -> usize {
        self.fan.index_of(c).expect("cone of the fan")
    }

    /// Image cone `π(c)` in `N/L`.
    pub fn image(&self, c: RaySet) -> &Cone {
        &self.images[self.idx(c)]
    }

    /// `π(tau) ⊆ π(sigma)`.
    pub fn maps_into(&self, tau: RaySet, sigma: RaySet) -> bool {
        tau.is_subset(self.rays_into[self.idx(sigma)])
    }

    fn meet_in_face(&self, a: RaySet, b: RaySet) -> bool {
        let (i, j) = (self.idx(a), self.idx(b));
        let key = (i.min(j), i.max(j));
        if let Some(&v) = self.pair_cache.borrow().get(&key) {
            return v;
        }
        let (ca, cb) = (&self.images[i], &self.images[j]);
        let meet = ca.intersect(cb).expect("same rank");
        let v = meet.is_face_of(ca) && meet.is_face_of(cb);
        self.pair_cache.borrow_mut().insert(key, v);
        v
    }

    /// A cone of `u` that maps into `π(sigma)` without being a face of it.
    fn intruder(&self, u: &SubfanSelection, sigma: RaySet) -> Option<RaySet> {
        u.iter().find(|&t| self.maps_into(t, sigma) && !t.is_subset(sigma))
    }

    pub fn good_quotient(&self, u: &SubfanSelection) -> Result<QuotientFan, Obstruction> {
        let d_bar = self.action.quotient_rank();
        if u.is_empty() {
            return Ok(QuotientFan {
                projection: self.action.projection().clone(),
                lineality_rank: 0,
                fan: Fan::new(d_bar, vec![], &[]).expect("empty fan"),
                empty: true,
                charts: vec![],
                orbit_map: BTreeMap::new(),
            });
        }
        debug_assert!(self.fan.is_face_closed(u));

        let good: Vec<RaySet> = u.iter().filter(|&s| self.intruder(u, s).is_none()).collect();
        let charts: Vec<RaySet> = good
            .iter()
            .copied()
            .filter(|&s| !good.iter().any(|&t| t != s && s.is_subset(t)))
            .collect();

        for t in u.iter() {
            if !charts.iter().any(|&s| self.maps_into(t, s)) {
                let chart = t;
                let intruder = self.intruder(u, chart).unwrap_or(chart);
                return Err(Obstruction::ChartViolation { cone: t, chart, intruder });
            }
        }

        let lin0 = self.image(charts[0]).lineality_basis();
        if let Some(&other) = charts.iter().find(|&&s| self.image(s).lineality_basis() != lin0) {
            return Err(Obstruction::MixedLineality {
                first: charts[0],
                second: other,
            });
        }
        for (x, &a) in charts.iter().enumerate() {
            for &b in &charts[x + 1..] {
                if !self.meet_in_face(a, b) {
                    return Err(Obstruction::NonFanImages { first: a, second: b });
                }
            }
        }

        // split off the common lineality
        let k = saturate(&Sublattice::from_generators(d_bar, lin0));
        let split = quotient_lattice_map(&k).expect("saturated");
        let projection = split.mul(self.action.projection());
        let target = projection.rows();
        let ray_img: Vec<Vec<BigInt>> = self.fan.rays().iter().map(|r| projection.apply(r)).collect();
        let chart_cones: Vec<Cone> = charts
            .iter()
            .map(|s| {
                let g: Vec<Vec<BigInt>> = s.indices().map(|i| ray_img[i].clone()).collect();
                Cone::from_generators(target, &g)
            })
            .collect();
        let mut qrays: Vec<Vec<BigInt>> = chart_cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        qrays.sort();
        qrays.dedup();
        let qmax: Vec<Vec<usize>> = chart_cones
            .iter()
            .map(|c| c.rays().iter().map(|r| qrays.binary_search(r).expect("listed ray")).collect())
            .collect();
        let qfan = Fan::new(target, qrays, &qmax).expect("quotient fan data");
        let chart_map: Vec<(RaySet, RaySet)> = qmax
            .iter()
            .zip(&charts)
            .map(|(q, &s)| (RaySet::from_indices(q.iter().copied()), s))
            .collect();

        let mut orbit_map = BTreeMap::new();
        for t in u.iter() {
            let x: Vec<BigInt> = (0..target)
                .map(|j| t.indices().map(|i| ray_img[i][j].clone()).sum())
                .collect();
            let img = qfan.limit_of_generic_point(&x).expect("image inside the quotient support");
            orbit_map.insert(t, img);
        }
        let mut chart_map = chart_map;
        chart_map.sort();
        Ok(QuotientFan {
            projection,
            lineality_rank: k.rank(),
            fan: qfan,
            empty: false,
            charts: chart_map,
            orbit_map,
        })
    }

    /// Whether `u` is saturated in `u_prime` for the quotient of `u_prime`.
    pub fn is_saturated(&self, u: &SubfanSelection, u_prime: &SubfanSelection) -> Result<bool, QuotientError> {
        if !u.is_subset(u_prime) {
            return Err(QuotientError::NotContained);
        }
        let q = self.good_quotient(u_prime).map_err(|_| QuotientError::NoGoodQuotient)?;
        Ok(is_saturated_in(&q, u, u_prime))
    }

    /// Largest saturated open subset of `x_prime` contained in `w`:
    /// `X' \ v⁻¹(v(B))` with `B = X' \ W`.
    pub fn max_saturated_inside(
        &self,
        x_prime: &SubfanSelection,
        w: &SubfanSelection,
    ) -> Result<SubfanSelection, QuotientError> {
        if !w.is_subset(x_prime) {
            return Err(QuotientError::NotContained);
        }
        let q = self.good_quotient(x_prime).map_err(|_| QuotientError::NoGoodQuotient)?;
        Ok(remove_saturation_of(&q, x_prime, &x_prime.difference(w)))
    }
}

/// `u ⊆ u_prime` equals the preimage of its image under the quotient of `u_prime`.
pub fn is_saturated_in(q: &QuotientFan, u: &ConeSet, u_prime: &ConeSet) -> bool {
    let img = q.image_set(u);
    u_prime
        .iter()
        .all(|t| u.contains(t) || !q.image_of(t).is_some_and(|c| img.contains(c)))
}

/// `space \ p⁻¹(p(b))`.
pub fn remove_saturation_of(q: &QuotientFan, space: &ConeSet, b: &ConeSet) -> ConeSet {
    let bad = q.image_set(b);
    ConeSet::new(space.iter().filter(|&t| !q.image_of(t).is_some_and(|c| bad.contains(c))))
}

pub fn good_quotient(fan: &Fan, u: &SubfanSelection, act: &SubtorusAction) -> Result<QuotientFan, QuotientError> {
    let ctx = QuotientContext::new(fan, act)?;
    ctx.good_quotient(u).map_err(QuotientError::Obstructed)
}

pub fn is_saturated(
    fan: &Fan,
    u: &SubfanSelection,
    u_prime: &SubfanSelection,
    act: &SubtorusAction,
) -> Result<bool, QuotientError> {
    QuotientContext::new(fan, act)?.is_saturated(u, u_prime)
}

pub fn max_saturated_inside(
    fan: &Fan,
    x_prime: &SubfanSelection,
    w: &SubfanSelection,
    act: &SubtorusAction,
) -> Result<SubfanSelection, QuotientError> {
    QuotientContext::new(fan, act)?.max_saturated_inside(x_prime, w)
}

/// All open subsets with a good quotient, each with its quotient.
pub fn good_subsets_with_quotients(
    ctx: &QuotientContext<'_>,
    max_subsets: usize,
) -> Result<Vec<(SubfanSelection, QuotientFan)>, FanError> {
    let all = ctx.fan().enumerate_open_subsets(max_subsets)?;
    Ok(all
        .into_iter()
        .filter_map(|u| ctx.good_quotient(&u).ok().map(|q| (u, q)))
        .collect())
}

pub fn enumerate_good_subsets(
    fan: &Fan,
    act: &SubtorusAction,
    max_subsets: usize,
) -> Result<Vec<SubfanSelection>, QuotientError> {
    let ctx = QuotientContext::new(fan, act)?;
    Ok(good_subsets_with_quotients(&ctx, max_subsets)?
        .into_iter()
        .map(|(u, _)| u)
        .collect())
}

/// Affine-neighbourhood property `A_k` of the quotient spaces considered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AffineProperty {
    /// Every point has an affine neighbourhood.
    A1,
    /// Any two points share an affine neighbourhood.
    A2,
}

impl AffineProperty {
    pub fn from_k(k: u8) -> Option<Self> {
        match k {
            1 => Some(AffineProperty::A1),
            2 => Some(AffineProperty::A2),
            _ => None,
        }
    }

    /// Whether a quotient fan's variety has the property. Quotients here are
    /// toric varieties, and toric varieties are `A_2`, so both hold.
    pub fn holds_for(self, _q: &QuotientFan) -> bool {
        true
    }
}

/// Maximal members of a list of good subsets: not a proper saturated subset
/// of another good subset whose quotient has the property.
pub fn maximal_among(good: &[(SubfanSelection, QuotientFan)], property: AffineProperty) -> Vec<SubfanSelection> {
    good.iter()
        .filter(|(_, q)| property.holds_for(q))
        .filter(|(u, _)| {
            !good.iter().any(|(v, qv)| {
                v.len() > u.len() && property.holds_for(qv) && u.is_subset(v) && is_saturated_in(qv, u, v)
            })
        })
        .map(|(u, _)| u.clone())
        .collect()
}

/// The `(T,k)`-maximal open subsets.
pub fn t_maximal_subsets(
    fan: &Fan,
    act: &SubtorusAction,
    property: AffineProperty,
    max_subsets: usize,
) -> Result<Vec<SubfanSelection>, QuotientError> {
    let ctx = QuotientContext::new(fan, act)?;
    let good = good_subsets_with_quotients(&ctx, max_subsets)?;
    Ok(maximal_among(&good, property))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StagedOutcome {
    /// Both routes produce the same quotient fan with the same orbit map.
    Agree,
    /// Neither route produces a good quotient.
    BothObstructed,
    /// The first stage has no good quotient (precondition not met).
    FirstStageObstructed,
    Disagree(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StagedReport {
    pub direct: String,
    pub first_stage: String,
    pub second_stage: Option<String>,
    pub outcome: StagedOutcome,
}

impl StagedReport {
    pub fn consistent(&self) -> bool {
        self.outcome.consistent()
    }
}

impl StagedOutcome {
    pub fn consistent(&self) -> bool {
        matches!(self, StagedOutcome::Agree | StagedOutcome::BothObstructed)
    }
}

fn describe(q: &Result<QuotientFan, QuotientError>) -> String {
    match q {
        Ok(q) => q.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Compares `(U // H₁) // (H₂/H₁)` with `U // H₂`.
pub fn staged_quotient(
    fan: &Fan,
    u: &SubfanSelection,
    inner: &SubtorusAction,
    outer: &SubtorusAction,
) -> Result<StagedReport, QuotientError> {
    if !inner.is_sub_action_of(outer) {
        return Err(QuotientError::NotNested);
    }
    let direct = good_quotient(fan, u, outer);
    let first = good_quotient(fan, u, inner);
    let second = first.as_ref().ok().and_then(|f| second_stage(f, outer));
    let outcome = match &first {
        Err(_) => StagedOutcome::FirstStageObstructed,
        Ok(f) => compare_routes(u, f, second.as_ref(), direct.as_ref().ok()),
    };
    Ok(StagedReport {
        direct: describe(&direct),
        first_stage: describe(&first),
        second_stage: second.as_ref().map(describe),
        outcome,
    })
}

/// Quotient of the whole first-stage quotient by the residual action (the
/// image of the outer lattice); `None` when the first stage is empty.
pub fn second_stage(first: &QuotientFan, outer: &SubtorusAction) -> Option<Result<QuotientFan, QuotientError>> {
    if first.is_empty() {
        return None;
    }
    let p1 = first.projection();
    let gens: Vec<Vec<BigInt>> = outer.cochar().basis().to_rows().iter().map(|l| p1.apply(l)).collect();
    let residual = SubtorusAction::normalize(first.target_rank(), &gens);
    Some(good_quotient(first.fan(), &first.fan().all_cones(), &residual))
}

/// Outcome of comparing the staged route (`first`, then `second`) with the
/// direct quotient, both already computed.
pub fn compare_routes(
    u: &SubfanSelection,
    first: &QuotientFan,
    second: Option<&Result<QuotientFan, QuotientError>>,
    direct: Option<&QuotientFan>,
) -> StagedOutcome {
    match (second, direct) {
        (None, Some(d)) if d.is_empty() => StagedOutcome::Agree,
        (None, _) => StagedOutcome::Disagree("empty first stage but nonempty or missing direct quotient".into()),
        (Some(Err(_)), None) => StagedOutcome::BothObstructed,
        (Some(Ok(_)), None) => StagedOutcome::Disagree("direct route obstructed, staged route succeeds".into()),
        (Some(Err(_)), Some(_)) => StagedOutcome::Disagree("staged route obstructed, direct route succeeds".into()),
        (Some(Ok(s)), Some(d)) => compare_staged(u, first, s, d),
    }
}

fn compare_staged(u: &SubfanSelection, first: &QuotientFan, second: &QuotientFan, direct: &QuotientFan) -> StagedOutcome {
    let staged_proj = second.projection().mul(first.projection());
    let d_proj = direct.projection();
    if staged_proj.rows() != d_proj.rows() {
        return StagedOutcome::Disagree(format!(
            "target ranks differ: staged {} vs direct {}",
            staged_proj.rows(),
            d_proj.rows()
        ));
    }
    let Some(r) = staged_proj.right_inverse() else {
        return StagedOutcome::Disagree("staged projection is not surjective".into());
    };
    let change = d_proj.mul(&r);
    if change.mul(&staged_proj) != *d_proj || !change.is_unimodular() {
        return StagedOutcome::Disagree("staged and direct projections have different kernels".into());
    }
    let cone_in_direct = |c: RaySet| -> Option<RaySet> {
        let gens: Vec<Vec<BigInt>> = c.indices().map(|i| change.apply(second.fan().ray(i))).collect();
        let g = Cone::from_generators(change.rows(), &gens);
        direct
            .fan()
            .cones()
            .iter()
            .copied()
            .find(|&dc| *direct.fan().geometry(dc) == g)
    };
    let staged_cones: Vec<Option<RaySet>> = second.fan().cones().iter().map(|&c| cone_in_direct(c)).collect();
    if staged_cones.iter().any(Option::is_none) || second.fan().cones().len() != direct.fan().cones().len() {
        return StagedOutcome::Disagree("quotient fans differ".into());
    }
    for t in u.iter() {
        let via = first
            .image_of(t)
            .and_then(|c| second.image_of(c))
            .and_then(cone_in_direct);
        if via != direct.image_of(t) {
            return StagedOutcome::Disagree(format!("orbit of cone {t} lands in different quotient orbits"));
        }
    }
    StagedOutcome::Agree
}

/// Checks the structural invariants of a quotient of `u`: the quotient fan
/// is valid, each chart receives exactly its own faces, chart images are the
/// quotient cones, and the geometric flag holds for simplicial sources.
pub fn check_quotient_invariants(ctx: &QuotientContext<'_>, u: &SubfanSelection, q: &QuotientFan) -> Result<(), String> {
    if q.is_empty() {
        return if u.is_empty() { Ok(()) } else { Err("empty quotient of a nonempty selection".into()) };
    }
    let report = q.fan().validate();
    if !report.valid {
        return Err(format!("quotient fan invalid: {:?}", report.violation));
    }
    let p = q.projection();
    for &(qc, chart) in q.charts() {
        let into: ConeSet = ConeSet::new(u.iter().filter(|&t| ctx.maps_into(t, chart)));
        if into != ConeSet::new(ctx.fan().faces_of(chart)) {
            return Err(format!("chart {chart} receives {into}"));
        }
        let gens: Vec<Vec<BigInt>> = chart.indices().map(|i| p.apply(ctx.fan().ray(i))).collect();
        if Cone::from_generators(q.target_rank(), &gens) != *q.fan().geometry(qc) {
            return Err(format!("image of chart {chart} is not quotient cone {qc}"));
        }
    }
    if q.orbit_map().len() != u.len() || q.image_set(u) != q.cones() {
        return Err("orbit map is not a surjection from the selection".into());
    }
    if ctx.fan().is_simplicial() && ctx.action().is_trivial() && !q.is_geometric() {
        return Err("identity quotient not flagged geometric".into());
    }
    Ok(())
}

fn star_in(u: &ConeSet, tau: RaySet) -> ConeSet {
    ConeSet::new(u.iter().filter(|&t| tau.is_subset(t)))
}

fn is_upward_closed(q: &QuotientFan, s: &ConeSet) -> bool {
    s.iter().all(|c| star_in(&q.cones(), c).is_subset(s))
}

/// Orbit-level properties of a good quotient `p: U → U // H`:
///
/// * images of closed invariant sets are closed;
/// * disjoint closed invariant sets have disjoint images;
/// * preimages of open sets are saturated opens mapping onto them, and the
///   restriction of `p` is again a good quotient onto them;
/// * for closed invariant `A` and saturated open `U₀`, `A ∩ U₀` is saturated in `A`.
///
/// Closed invariant sets are unions of orbit closures, so it suffices to
/// check orbit closures and, for opens, the affine charts and the
/// complements of orbit closures in the quotient.
pub fn check_quotient_properties(ctx: &QuotientContext<'_>, u: &SubfanSelection, q: &QuotientFan) -> Result<(), String> {
    let stars: Vec<(RaySet, ConeSet)> = u.iter().map(|t| (t, star_in(u, t))).collect();
    for (t, a) in &stars {
        if !is_upward_closed(q, &q.image_set(a)) {
            return Err(format!("image of the orbit closure of {t} is not closed"));
        }
    }
    for (i, (t1, a1)) in stars.iter().enumerate() {
        for (t2, a2) in &stars[i + 1..] {
            if a1.is_disjoint(a2) && !q.image_set(a1).is_disjoint(&q.image_set(a2)) {
                return Err(format!("disjoint orbit closures of {t1} and {t2} have meeting images"));
            }
        }
    }
    let qcones = q.cones();
    let mut opens: Vec<ConeSet> = vec![];
    for c in qcones.iter() {
        opens.push(ConeSet::new(q.fan().faces_of(c)));
        opens.push(qcones.difference(&star_in(&qcones, c)));
    }
    opens.sort();
    opens.dedup();
    for o in &opens {
        let v = q.preimage(o);
        if !ctx.fan().is_face_closed(&v) {
            return Err(format!("preimage of open {o} is not open"));
        }
        if !is_saturated_in(q, &v, u) {
            return Err(format!("preimage of open {o} is not saturated"));
        }
        if q.image_set(&v) != *o {
            return Err(format!("preimage of open {o} does not map onto it"));
        }
        match ctx.good_quotient(&v) {
            Err(e) => return Err(format!("preimage of open {o} has no good quotient: {e}")),
            Ok(qv) if !v.is_empty() => {
                let mut got: Vec<&Cone> = qv.cones().iter().map(|c| qv.fan().geometry(c)).collect();
                let mut want: Vec<&Cone> = o.iter().map(|c| q.fan().geometry(c)).collect();
                got.sort();
                want.sort();
                if got != want {
                    return Err(format!("restriction to the preimage of {o} is not the induced quotient"));
                }
            }
            Ok(_) => {}
        }
        for (t, a) in &stars {
            let cut = a.intersection(&v);
            if !is_saturated_in(q, &cut, a) {
                return Err(format!("orbit closure of {t} meets the preimage of {o} in a non-saturated set"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_big;

    fn p1() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()
    }

    fn a1() -> Fan {
        Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap()
    }

    fn c2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap()
    }

    fn sel(f: &Fan, cones: &[&[usize]]) -> SubfanSelection {
        f.face_closure(cones.iter().map(|c| RaySet::from_indices(c.iter().copied())))
            .unwrap()
    }

    fn diagonal() -> SubtorusAction {
        SubtorusAction::normalize(2, &[to_big(&[1, 1])])
    }

    #[test]
    fn normalization() {
        let a = SubtorusAction::normalize(2, &[to_big(&[2, 2])]);
        assert!(!a.input_was_saturated());
        assert_eq!(a.cochar().basis().to_rows(), vec![to_big(&[1, 1])]);
        let full = SubtorusAction::normalize(2, &[to_big(&[1, 0]), to_big(&[0, 1])]);
        assert_eq!(full.quotient_rank(), 0);
        let triv = SubtorusAction::normalize(2, &[]);
        assert!(triv.projection().is_unimodular());
    }

    #[test]
    fn punctured_plane_gives_projective_line() {
        let f = c2();
        let u = sel(&f, &[&[0], &[1]]);
        let q = good_quotient(&f, &u, &diagonal()).unwrap();
        assert_eq!(q.target_rank(), 1);
        assert_eq!(q.fan().rays().len(), 2);
        assert!(q.fan().is_complete());
        assert_eq!(q.charts().len(), 2);
        assert!(q.is_geometric());
        let act = diagonal();
        let ctx = QuotientContext::new(&f, &act).unwrap();
        check_quotient_invariants(&ctx, &u, &q).unwrap();
        check_quotient_properties(&ctx, &u, &q).unwrap();
    }

    #[test]
    fn plane_gives_point() {
        let f = c2();
        let q = good_quotient(&f, &f.all_cones(), &diagonal()).unwrap();
        assert_eq!(q.target_rank(), 0);
        assert_eq!(q.lineality_rank(), 1);
        assert_eq!(q.charts().len(), 1);
    }

    #[test]
    fn complete_line_by_full_torus_is_obstructed() {
        let f = p1();
        let err = good_quotient(&f, &f.all_cones(), &SubtorusAction::full(1)).unwrap_err();
        assert!(matches!(err, QuotientError::Obstructed(Obstruction::ChartViolation { .. })));
    }

    #[test]
    fn saturation_examples() {
        let a = a1();
        let full = SubtorusAction::full(1);
        let torus = sel(&a, &[&[]]);
        assert!(!is_saturated(&a, &torus, &a.all_cones(), &full).unwrap());
        let triv = SubtorusAction::trivial(1);
        assert!(is_saturated(&a, &torus, &a.all_cones(), &triv).unwrap());
        let f = c2();
        let punctured = sel(&f, &[&[0], &[1]]);
        let chart = sel(&f, &[&[0]]);
        assert!(is_saturated(&f, &chart, &punctured, &diagonal()).unwrap());
        let p = p1();
        assert_eq!(
            is_saturated(&p, &sel(&p, &[&[0]]), &p.all_cones(), &full),
            Err(QuotientError::NoGoodQuotient)
        );
    }

    #[test]
    fn good_subset_enumeration() {
        let p = p1();
        let good = enumerate_good_subsets(&p, &SubtorusAction::full(1), 1 << 20).unwrap();
        assert_eq!(good.len(), 4);
        assert!(!good.contains(&p.all_cones()));
        let all = p.enumerate_open_subsets(1 << 20).unwrap();
        assert_eq!(enumerate_good_subsets(&p, &SubtorusAction::trivial(1), 1 << 20).unwrap(), all);
        let f = c2();
        let good = enumerate_good_subsets(&f, &diagonal(), 1 << 20).unwrap();
        assert_eq!(good.len(), 6);
    }

    #[test]
    fn maximal_subsets() {
        let p = p1();
        for prop in [AffineProperty::A1, AffineProperty::A2] {
            let m = t_maximal_subsets(&p, &SubtorusAction::full(1), prop, 1 << 20).unwrap();
            let expected = vec![sel(&p, &[&[]]), sel(&p, &[&[0]]), sel(&p, &[&[1]])];
            let mut got = m.clone();
            got.sort();
            let mut exp = expected;
            exp.sort();
            assert_eq!(got, exp);
        }
        let a = a1();
        let m = t_maximal_subsets(&a, &SubtorusAction::full(1), AffineProperty::A1, 1 << 20).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.contains(&a.all_cones()));
        let m = t_maximal_subsets(&p, &SubtorusAction::trivial(1), AffineProperty::A2, 1 << 20).unwrap();
        assert_eq!(m, vec![p.all_cones()]);
    }

    #[test]
    fn saturated_interior() {
        let a = a1();
        let r = max_saturated_inside(&a, &a.all_cones(), &sel(&a, &[&[]]), &SubtorusAction::full(1)).unwrap();
        assert!(r.is_empty());
        let p = p1();
        let w = sel(&p, &[&[0]]);
        let r = max_saturated_inside(&p, &p.all_cones(), &w, &SubtorusAction::trivial(1)).unwrap();
        assert_eq!(r, w);
        let f = c2();
        let punctured = sel(&f, &[&[0], &[1]]);
        let w = sel(&f, &[&[1]]);
        assert_eq!(max_saturated_inside(&f, &punctured, &w, &diagonal()).unwrap(), w);
    }

    #[test]
    fn staging() {
        let f = c2();
        let full = SubtorusAction::full(2);
        let r = staged_quotient(&f, &f.all_cones(), &diagonal(), &full).unwrap();
        assert_eq!(r.outcome, StagedOutcome::Agree);
        let punctured = sel(&f, &[&[0], &[1]]);
        let r = staged_quotient(&f, &punctured, &diagonal(), &full).unwrap();
        assert_eq!(r.outcome, StagedOutcome::BothObstructed);
        let r = staged_quotient(&f, &punctured, &diagonal(), &diagonal()).unwrap();
        assert_eq!(r.outcome, StagedOutcome::Agree);
        assert_eq!(
            staged_quotient(&f, &punctured, &full, &diagonal()),
            Err(QuotientError::NotNested)
        );
    }
}
