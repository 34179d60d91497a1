//! Finite fan symmetries together with a subtorus: translate intersections
//! `W(U)` and checks of the good-quotient statements about them.
//!
//! A connected group normalizing the big torus acts through the torus, so a
//! nontrivial finite symmetry group models disconnected group data. The
//! checkers below therefore report each conclusion as a verdict, and flag
//! when the connectedness assumption behind the statements is not met.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::SymmetryError;
use crate::fan::{ConeSet, Fan, FanAutomorphism, RaySet, SubfanSelection};
use crate::lattice::IntMatrix;
use crate::quotient::{
    good_subsets_with_quotients, is_saturated_in, maximal_among, remove_saturation_of, AffineProperty,
    QuotientContext, QuotientFan, SubtorusAction,
};

/// A finite group of fan automorphisms, closed under composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryGroup {
    elements: Vec<FanAutomorphism>,
}

impl SymmetryGroup {
    pub fn trivial(fan: &Fan) -> SymmetryGroup {
        SymmetryGroup {
            elements: vec![FanAutomorphism::identity(fan)],
        }
    }

    /// The group generated by the given matrices, each of which must
    /// preserve the fan.
    pub fn generated(fan: &Fan, gens: &[IntMatrix]) -> Result<SymmetryGroup, SymmetryError> {
        let gens = gens
            .iter()
            .map(|m| FanAutomorphism::new(fan, m.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::closure(fan, gens))
    }

    /// Closure of a set of automorphisms under composition.
    pub fn closure(fan: &Fan, gens: Vec<FanAutomorphism>) -> SymmetryGroup {
        let mut elements = vec![FanAutomorphism::identity(fan)];
        let mut frontier = elements.clone();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.compose(&x);
                if !elements.contains(&y) {
                    elements.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        elements.sort();
        SymmetryGroup { elements }
    }

    pub fn elements(&self) -> &[FanAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Whether every element maps the selection onto itself.
    pub fn fixes(&self, u: &ConeSet) -> bool {
        self.elements.iter().all(|g| g.apply_set(u) == *u)
    }
}

/// A subtorus together with finite symmetries normalizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupActionData {
    act: SubtorusAction,
    sym: SymmetryGroup,
}

impl GroupActionData {
    pub fn new(act: SubtorusAction, sym: SymmetryGroup) -> Result<GroupActionData, SymmetryError> {
        for (i, g) in sym.elements().iter().enumerate() {
            let preserved = act
                .cochar()
                .basis()
                .to_rows()
                .iter()
                .all(|l| act.cochar().contains(&g.apply_vector(l)));
            if !preserved {
                return Err(SymmetryError::Incompatible(i));
            }
        }
        Ok(GroupActionData { act, sym })
    }

    pub fn action(&self) -> &SubtorusAction {
        &self.act
    }

    pub fn symmetries(&self) -> &SymmetryGroup {
        &self.sym
    }

    pub fn connected(&self) -> bool {
        self.sym.is_trivial()
    }
}

pub fn translate(g: &FanAutomorphism, u: &SubfanSelection) -> SubfanSelection {
    g.apply_set(u)
}

/// `W(U)`: the intersection of all translates of `u`.
pub fn w_set(u: &ConeSet, g: &GroupActionData) -> ConeSet {
    g.sym
        .elements()
        .iter()
        .fold(u.clone(), |acc, s| acc.intersection(&s.apply_set(u)))
}

/// Classes of quotient cones under the symmetries: the composite quotient
/// by the torus and then the finite group identifies the orbits in a class.
/// `w` must be invariant.
pub(crate) fn composite_classes(q: &QuotientFan, w: &ConeSet, sym: &SymmetryGroup) -> BTreeMap<RaySet, RaySet> {
    let mut rep: BTreeMap<RaySet, RaySet> = q.cones().iter().map(|c| (c, c)).collect();
    fn find(rep: &BTreeMap<RaySet, RaySet>, mut c: RaySet) -> RaySet {
        while rep[&c] != c {
            c = rep[&c];
        }
        c
    }
    for t in w.iter() {
        for s in sym.elements() {
            let (Some(a), Some(b)) = (q.image_of(t), q.image_of(s.apply_cone(t))) else {
                continue;
            };
            let (ra, rb) = (find(&rep, a), find(&rep, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                rep.insert(hi, lo);
            }
        }
    }
    let keys: Vec<RaySet> = rep.keys().copied().collect();
    keys.into_iter().map(|c| (c, find(&rep, c))).collect()
}

/// Cones of `w` whose composite class meets the classes of `s`.
pub(crate) fn composite_saturation(q: &QuotientFan, classes: &BTreeMap<RaySet, RaySet>, w: &ConeSet, s: &ConeSet) -> ConeSet {
    let hit: Vec<RaySet> = s.iter().filter_map(|t| q.image_of(t)).map(|c| classes[&c]).collect();
    ConeSet::new(
        w.iter()
            .filter(|&t| q.image_of(t).is_some_and(|c| hit.contains(&classes[&c]))),
    )
}

/// Saturation of `v ⊆ w` for the composite quotient of `w`.
fn composite_saturated(q: &QuotientFan, classes: &BTreeMap<RaySet, RaySet>, v: &ConeSet, w: &ConeSet) -> bool {
    composite_saturation(q, classes, w, v) == *v
}

pub const DISCONNECTED_CAVEAT: &str = "the finite symmetry group is nontrivial, so together with the torus it \
generates a disconnected group; the statements assume a connected reductive group, so failures here do not \
contradict them";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub u: ConeSet,
    pub w: ConeSet,
    /// `W(U)` is open (face-closed); always true, recorded.
    pub open: bool,
    pub good_quotient: bool,
    pub quotient: Option<String>,
    pub saturated_in_u: bool,
    /// Number of torus-quotient orbits and of their classes under the symmetries.
    pub quotient_orbits: usize,
    pub composite_orbits: usize,
    pub caveat: Option<String>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.open && self.good_quotient && self.saturated_in_u
    }
}

/// Explains why `u` is not maximal, or `None` if it is.
fn maximality_diagnosis(
    ctx: &QuotientContext<'_>,
    good: &[(SubfanSelection, QuotientFan)],
    u: &ConeSet,
) -> Option<String> {
    if let Err(e) = ctx.good_quotient(u) {
        return Some(format!("no good quotient: {e}"));
    }
    let m = maximal_among(good, AffineProperty::A2);
    if m.contains(u) {
        return None;
    }
    good.iter()
        .find(|(v, q)| v.len() > u.len() && u.is_subset(v) && is_saturated_in(q, u, v))
        .map(|(v, _)| format!("saturated in the larger good selection {v}"))
        .or_else(|| Some("not among the maximal selections".into()))
}

pub(crate) fn theorem_report(ctx: &QuotientContext<'_>, u: &ConeSet, g: &GroupActionData) -> TheoremReport {
    let w = w_set(u, g);
    let qw = ctx.good_quotient(&w).ok();
    let qu = ctx.good_quotient(u).expect("maximal selections have good quotients");
    let (quotient_orbits, composite_orbits) = match &qw {
        Some(q) => {
            let classes = composite_classes(q, &w, &g.sym);
            let mut reps: Vec<RaySet> = classes.values().copied().collect();
            reps.sort();
            reps.dedup();
            (q.cones().len(), reps.len())
        }
        None => (0, 0),
    };
    TheoremReport {
        u: u.clone(),
        open: ctx.fan().is_face_closed(&w),
        good_quotient: qw.is_some(),
        quotient: qw.as_ref().map(|q| q.to_string()),
        saturated_in_u: is_saturated_in(&qu, &w, u),
        w,
        quotient_orbits,
        composite_orbits,
        caveat: (!g.connected()).then(|| DISCONNECTED_CAVEAT.to_string()),
    }
}

/// Checks, for a maximal `u`, that `W(u)` is open, has a good quotient and
/// is saturated in `u`.
pub fn verify_theorem_conclusions(
    fan: &Fan,
    u: &SubfanSelection,
    g: &GroupActionData,
    max_subsets: usize,
) -> Result<TheoremReport, SymmetryError> {
    let ctx = QuotientContext::new(fan, g.action())?;
    let good = good_subsets_with_quotients(&ctx, max_subsets)?;
    if let Some(why) = maximality_diagnosis(&ctx, &good, u) {
        return Err(SymmetryError::NotMaximal(why));
    }
    Ok(theorem_report(&ctx, u, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSetOutcome {
    pub v: ConeSet,
    /// A maximal selection whose `W` contains `v` as a saturated subset.
    pub host: Option<ConeSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub maximal: Vec<TheoremReport>,
    pub invariant_sets: Vec<InvariantSetOutcome>,
    pub caveat: Option<String>,
}

impl CorollaryReport {
    /// Every `W(U)` is open with a good quotient.
    pub fn first_holds(&self) -> bool {
        self.maximal.iter().all(|r| r.open && r.good_quotient)
    }

    /// Every invariant good selection is saturated in some `W(U)`.
    pub fn second_holds(&self) -> bool {
        self.invariant_sets.iter().all(|o| o.host.is_some())
    }
}

pub fn verify_corollary(fan: &Fan, g: &GroupActionData, max_subsets: usize) -> Result<CorollaryReport, SymmetryError> {
    if !fan.is_complete() || !fan.is_simplicial() {
        return Err(SymmetryError::NotCompleteSimplicial);
    }
    let ctx = QuotientContext::new(fan, g.action())?;
    let good = good_subsets_with_quotients(&ctx, max_subsets)?;
    Ok(corollary_with(&ctx, &good, g))
}

pub(crate) fn corollary_with(
    ctx: &QuotientContext<'_>,
    good: &[(SubfanSelection, QuotientFan)],
    g: &GroupActionData,
) -> CorollaryReport {
    let maximal = maximal_among(good, AffineProperty::A2);
    let reports: Vec<TheoremReport> = maximal.iter().map(|u| theorem_report(ctx, u, g)).collect();
    let hosts: Vec<(ConeSet, ConeSet, QuotientFan, BTreeMap<RaySet, RaySet>)> = reports
        .iter()
        .filter_map(|r| {
            let q = ctx.good_quotient(&r.w).ok()?;
            let classes = composite_classes(&q, &r.w, &g.sym);
            Some((r.u.clone(), r.w.clone(), q, classes))
        })
        .collect();
    let invariant_sets = good
        .iter()
        .filter(|(v, _)| g.sym.fixes(v))
        .map(|(v, _)| {
            let host = hosts
                .iter()
                .find(|(_, w, q, classes)| v.is_subset(w) && composite_saturated(q, classes, v, w))
                .map(|(u, _, _, _)| u.clone());
            InvariantSetOutcome { v: v.clone(), host }
        })
        .collect();
    CorollaryReport {
        maximal: reports,
        invariant_sets,
        caveat: (!g.connected()).then(|| DISCONNECTED_CAVEAT.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq1Report {
    /// Hypotheses with their status; the identity is only compared when all hold.
    pub hypotheses: Vec<(String, bool)>,
    /// Largest saturated subset of `X'` inside `X`.
    pub u: Option<ConeSet>,
    pub left: Option<ConeSet>,
    pub right: Option<ConeSet>,
    pub equal: Option<bool>,
    /// A cone on exactly one side.
    pub witness: Option<RaySet>,
}

impl Eq1Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|(_, ok)| *ok)
    }
}

/// Compares `W(U)` with `W(X') \ u⁻¹(u(W(B)))`, where `U` is the largest
/// saturated subset of `X'` inside `X`, `B = X' \ X`, and `u` is the
/// composite quotient of `W(X')`.
pub fn eq1_crosscheck(
    fan: &Fan,
    x_prime: &SubfanSelection,
    x: &SubfanSelection,
    g: &GroupActionData,
) -> Result<Eq1Report, SymmetryError> {
    let ctx = QuotientContext::new(fan, g.action())?;
    let qp = ctx.good_quotient(x_prime).ok();
    Ok(Eq1Ambient::new(&ctx, x_prime, qp.as_ref(), g).check(fan, x, g))
}

/// Data of `X'` shared by all `X ⊆ X'`.
pub(crate) struct Eq1Ambient<'q> {
    x_prime: ConeSet,
    q_prime: Option<&'q QuotientFan>,
    wx: ConeSet,
    wx_saturated: bool,
    /// Quotient of `W(X')` and its composite classes, when `W(X')` is saturated.
    composite: Option<(QuotientFan, BTreeMap<RaySet, RaySet>)>,
}

impl<'q> Eq1Ambient<'q> {
    pub(crate) fn new(
        ctx: &QuotientContext<'_>,
        x_prime: &ConeSet,
        q_prime: Option<&'q QuotientFan>,
        g: &GroupActionData,
    ) -> Eq1Ambient<'q> {
        let wx = w_set(x_prime, g);
        let wx_saturated = q_prime.is_some_and(|qp| is_saturated_in(qp, &wx, x_prime));
        let composite = if wx_saturated {
            let qw = ctx.good_quotient(&wx).expect("saturated subsets of good selections are good");
            let classes = composite_classes(&qw, &wx, &g.sym);
            Some((qw, classes))
        } else {
            None
        };
        Eq1Ambient {
            x_prime: x_prime.clone(),
            q_prime,
            wx,
            wx_saturated,
            composite,
        }
    }

    pub(crate) fn check(&self, fan: &Fan, x: &ConeSet, g: &GroupActionData) -> Eq1Report {
        let mut report = Eq1Report {
            hypotheses: vec![],
            u: None,
            left: None,
            right: None,
            equal: None,
            witness: None,
        };
        let x_prime = &self.x_prime;
        let contained = x.is_subset(x_prime) && fan.is_face_closed(x);
        report.hypotheses.push(("X is an open subset of X'".into(), contained));
        report.hypotheses.push(("X' has a good quotient".into(), self.q_prime.is_some()));
        report.hypotheses.push(("X is invariant under the symmetries".into(), g.sym.fixes(x)));
        report.hypotheses.push(("W(X') is saturated in X'".into(), self.wx_saturated));
        let (Some(qp), Some((qw, classes)), true) = (self.q_prime, &self.composite, report.hypotheses_hold()) else {
            return report;
        };
        let b = x_prime.difference(x);
        let u = remove_saturation_of(qp, x_prime, &b);
        let left = w_set(&u, g);
        let wb = w_set(&b, g);
        let right = self.wx.difference(&composite_saturation(qw, classes, &self.wx, &wb));
        report.equal = Some(left == right);
        report.witness = left
            .iter()
            .find(|&c| !right.contains(c))
            .or_else(|| right.iter().find(|&c| !left.contains(c)));
        report.u = Some(u);
        report.left = Some(left);
        report.right = Some(right);
        report
    }
}

/// All subgroups generated by single automorphisms, plus the full group,
/// that normalize the acting lattice. Deduplicated.
pub fn compatible_groups(fan: &Fan, act: &SubtorusAction) -> Result<Vec<GroupActionData>, SymmetryError> {
    let auts = fan.automorphisms()?;
    let mut groups: Vec<SymmetryGroup> = auts.iter().map(|a| SymmetryGroup::closure(fan, vec![a.clone()])).collect();
    groups.push(SymmetryGroup::closure(fan, auts));
    groups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    groups.dedup();
    Ok(groups
        .into_iter()
        .filter_map(|s| GroupActionData::new(act.clone(), s).ok())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{p1_times_p1, projective_line, projective_plane};
    use crate::lattice::to_big;

    fn negation(fan: &Fan) -> SymmetryGroup {
        SymmetryGroup::generated(fan, &[IntMatrix::from_i64(&[&[-1]])]).unwrap()
    }

    #[test]
    fn translates() {
        let p = projective_line();
        let g = GroupActionData::new(SubtorusAction::full(1), negation(&p)).unwrap();
        let plus = p.face_closure([RaySet::single(0)]).unwrap();
        let minus = p.face_closure([RaySet::single(1)]).unwrap();
        let neg = &g.symmetries().elements()[0];
        let neg = if neg.is_identity() { &g.symmetries().elements()[1] } else { neg };
        assert_eq!(translate(neg, &plus), minus);
        assert_eq!(translate(&FanAutomorphism::identity(&p), &plus), plus);
        assert_eq!(w_set(&plus, &g), p.face_closure([RaySet::ZERO]).unwrap());

        let p2 = projective_plane();
        let rot = IntMatrix::from_i64(&[&[0, -1], &[1, -1]]);
        let r = FanAutomorphism::new(&p2, rot.clone()).unwrap();
        let chart = p2.face_closure([RaySet::from_indices([0, 1])]).unwrap();
        assert_eq!(translate(&r, &chart), p2.face_closure([RaySet::from_indices([1, 2])]).unwrap());
        let g3 = GroupActionData::new(SubtorusAction::trivial(2), SymmetryGroup::generated(&p2, &[rot]).unwrap()).unwrap();
        assert_eq!(g3.symmetries().order(), 3);
        assert_eq!(w_set(&p2.all_cones(), &g3), p2.all_cones());
    }

    #[test]
    fn disconnected_symmetry_fails_honestly() {
        let p = projective_line();
        let g = GroupActionData::new(SubtorusAction::full(1), negation(&p)).unwrap();
        let plus = p.face_closure([RaySet::single(0)]).unwrap();
        let r = verify_theorem_conclusions(&p, &plus, &g, 1 << 10).unwrap();
        assert_eq!(r.w, p.face_closure([RaySet::ZERO]).unwrap());
        assert!(r.open && r.good_quotient && !r.saturated_in_u);
        assert!(r.caveat.is_some());
        assert!(matches!(
            verify_theorem_conclusions(&p, &p.all_cones(), &g, 1 << 10),
            Err(SymmetryError::NotMaximal(_))
        ));
    }

    #[test]
    fn trivial_symmetry_theorem() {
        let p = projective_line();
        let g = GroupActionData::new(SubtorusAction::full(1), SymmetryGroup::trivial(&p)).unwrap();
        let c = verify_corollary(&p, &g, 1 << 10).unwrap();
        assert_eq!(c.maximal.len(), 3);
        assert!(c.maximal.iter().all(|r| r.all_hold() && r.w == r.u));
        assert!(c.first_holds() && c.second_holds());
        assert!(c.invariant_sets.iter().any(|o| o.v.is_empty() && o.host.is_some()));
    }

    #[test]
    fn compatibility() {
        let f = p1_times_p1();
        let act = SubtorusAction::normalize(2, &[to_big(&[1, 0])]);
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let sym = SymmetryGroup::generated(&f, &[swap]).unwrap();
        assert!(matches!(GroupActionData::new(act.clone(), sym), Err(SymmetryError::Incompatible(_))));
        let flip = IntMatrix::from_i64(&[&[-1, 0], &[0, 1]]);
        let sym = SymmetryGroup::generated(&f, &[flip]).unwrap();
        let g = GroupActionData::new(act, sym).unwrap();
        let c = verify_corollary(&f, &g, 1 << 12).unwrap();
        assert!(c.first_holds());
        assert!(!compatible_groups(&f, g.action()).unwrap().is_empty());
    }

    #[test]
    fn eq1_examples() {
        let p = projective_line();
        let g = GroupActionData::new(SubtorusAction::full(1), SymmetryGroup::trivial(&p)).unwrap();
        let xp = p.face_closure([RaySet::single(0)]).unwrap();
        let x = p.face_closure([RaySet::ZERO]).unwrap();
        let r = eq1_crosscheck(&p, &xp, &x, &g).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.u, Some(ConeSet::empty()));
        assert_eq!(r.equal, Some(true));
        let r = eq1_crosscheck(&p, &p.all_cones(), &x, &g).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.equal, None);
    }
}
