//! Brute-force sweeps over the corpus: every fan, every action, every open
//! subset. Each check keeps a tally of instances and failures.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::corpus::{action_corpus, CorpusFan};
use crate::fan::{ConeSet, Fan, RaySet, SubfanSelection};
use crate::oracle::{chart_monoid_check, ChartOracle};
use crate::quotient::{
    check_quotient_invariants, check_quotient_properties, compare_routes, is_saturated_in, maximal_among,
    remove_saturation_of, second_stage, AffineProperty, QuotientContext, QuotientFan, SubtorusAction,
};

const KEPT_FAILURES: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    /// The first few failures, for diagnosis.
    pub examples: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, outcome: Result<(), String>) {
        self.checked += 1;
        if let Err(e) = outcome {
            self.failed += 1;
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(e);
            }
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record(if ok { Ok(()) } else { Err(what()) });
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(e);
            }
        }
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked, {} failed", self.checked, self.failed)?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepConfig {
    /// Box for the invariant-character oracle.
    pub bound: usize,
    /// Enumeration guard per fan.
    pub max_subsets: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            bound: 3,
            max_subsets: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QuotientSweep {
    pub fans: usize,
    pub instances: usize,
    pub selections: usize,
    pub good: usize,
    /// Criterion verdict equals oracle verdict.
    pub oracle_agreement: Tally,
    /// Chart monoids of each produced quotient match the invariant monoids.
    pub chart_monoids: Tally,
    pub quotient_invariants: Tally,
    /// Closed-set, disjointness, open-set and intersection properties.
    pub orbit_properties: Tally,
    /// Maximal subsets agree for both affine-neighbourhood properties.
    pub maximal_k1_k2: Tally,
    /// Maximal subsets agree with brute force using the oracle's saturation test.
    pub maximal_vs_oracle: Tally,
    /// Maximal subsets are not saturated inside any larger good subset.
    pub maximal_not_saturated: Tally,
    /// Staged and direct quotients agree or both fail.
    pub staging: Tally,
    /// Largest saturated subset equals the brute-force maximum.
    pub saturated_interior: Tally,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl QuotientSweep {
    pub fn tallies(&self) -> Vec<(&'static str, &Tally)> {
        vec![
            ("oracle agreement", &self.oracle_agreement),
            ("chart monoids", &self.chart_monoids),
            ("quotient invariants", &self.quotient_invariants),
            ("orbit properties", &self.orbit_properties),
            ("maximal k=1 vs k=2", &self.maximal_k1_k2),
            ("maximal vs oracle", &self.maximal_vs_oracle),
            ("maximal not saturated", &self.maximal_not_saturated),
            ("staging", &self.staging),
            ("saturated interior", &self.saturated_interior),
        ]
    }
}

/// Bit masks over the cone indices of a fan, for fast subset tests.
struct Masks<'a> {
    fan: &'a Fan,
}

impl Masks<'_> {
    fn of(&self, s: &ConeSet) -> u128 {
        s.iter()
            .map(|c| 1u128 << self.fan.index_of(c).expect("cone of the fan"))
            .fold(0, |a, b| a | b)
    }
}

struct Good<'a> {
    u: &'a SubfanSelection,
    mask: u128,
    q: QuotientFan,
}

/// Runs every quotient check over the corpus.
pub fn quotient_sweep(corpus: &[CorpusFan], cfg: SweepConfig) -> QuotientSweep {
    let start = Instant::now();
    let mut out = QuotientSweep {
        fans: corpus.len(),
        ..Default::default()
    };
    for cf in corpus {
        let fan = &cf.fan;
        if fan.cones().len() > 128 {
            continue;
        }
        let Ok(opens) = fan.enumerate_open_subsets(cfg.max_subsets) else {
            continue;
        };
        let masks = Masks { fan };
        let open_masks: Vec<u128> = opens.iter().map(|u| masks.of(u)).collect();
        let actions = action_corpus(fan.rank());
        // per action: quotient (or not) of every open subset
        let mut results: Vec<Vec<Option<QuotientFan>>> = vec![];
        for (aname, act) in &actions {
            out.instances += 1;
            let label = |u: &SubfanSelection| format!("{} / {} / {}", cf.name, aname, u);
            let ctx = QuotientContext::new(fan, act).expect("same rank");
            let oracle = ChartOracle::new(fan, act, cfg.bound).expect("small corpus");
            let mut row = Vec::with_capacity(opens.len());
            for u in &opens {
                out.selections += 1;
                let q = ctx.good_quotient(u).ok();
                let verdict = oracle.verdict(u);
                out.oracle_agreement.check(q.is_some() == verdict.good, || {
                    format!("{}: criterion {} oracle {}", label(u), q.is_some(), verdict.good)
                });
                if let Some(q) = &q {
                    out.good += 1;
                    out.chart_monoids
                        .record(chart_monoid_check(fan, act, q, cfg.bound).map_err(|e| format!("{}: {e}", label(u))));
                    out.quotient_invariants
                        .record(check_quotient_invariants(&ctx, u, q).map_err(|e| format!("{}: {e}", label(u))));
                    out.orbit_properties
                        .record(check_quotient_properties(&ctx, u, q).map_err(|e| format!("{}: {e}", label(u))));
                }
                row.push(q);
            }
            let good: Vec<Good> = opens
                .iter()
                .zip(&open_masks)
                .zip(&row)
                .filter_map(|((u, &mask), q)| q.clone().map(|q| Good { u, mask, q }))
                .collect();
            maximality_checks(&mut out, &good, &oracle, &|u| label(u));
            interior_checks(&mut out, &good, &opens, &open_masks, &masks, &|u| label(u));
            results.push(row);
        }
        staging_checks(&mut out, cf, &opens, &actions, &results);
    }
    out.elapsed = start.elapsed();
    out
}

fn maximality_checks(
    out: &mut QuotientSweep,
    good: &[Good<'_>],
    oracle: &ChartOracle,
    label: &dyn Fn(&SubfanSelection) -> String,
) {
    let pairs: Vec<(SubfanSelection, QuotientFan)> = good.iter().map(|g| (g.u.clone(), g.q.clone())).collect();
    let m1 = maximal_among(&pairs, AffineProperty::A1);
    let m2 = maximal_among(&pairs, AffineProperty::A2);
    out.maximal_k1_k2
        .check(m1 == m2, || format!("{}: k=1 and k=2 maximal sets differ", label(&ConeSet::empty())));

    let charts: Vec<Vec<_>> = good.iter().map(|g| oracle.verdict(g.u).charts).collect();
    let oracle_saturated = |i: usize, j: usize| -> bool {
        let (u, v) = (good[i].u, good[j].u);
        v.iter().all(|t| u.contains(t) || !u.iter().any(|s| oracle.same_image(&charts[j], s, t)))
    };
    let mut brute = vec![];
    for i in 0..good.len() {
        let bigger = (0..good.len()).filter(|&j| {
            good[j].mask != good[i].mask && good[i].mask & !good[j].mask == 0
        });
        let maximal = bigger.clone().all(|j| !oracle_saturated(i, j));
        if maximal {
            brute.push(good[i].u.clone());
            for j in bigger {
                let inside = remove_saturation_of(&good[j].q, good[j].u, &good[j].u.difference(good[i].u));
                out.maximal_not_saturated.check(inside != *good[i].u, || {
                    format!("{}: maximal but saturated in {}", label(good[i].u), good[j].u)
                });
            }
        }
    }
    out.maximal_vs_oracle.check(brute == m1, || {
        format!("{}: maximal sets {:?} vs brute force {:?}", label(&ConeSet::empty()), m1, brute)
    });
}

fn interior_checks(
    out: &mut QuotientSweep,
    good: &[Good<'_>],
    opens: &[SubfanSelection],
    open_masks: &[u128],
    masks: &Masks<'_>,
    label: &dyn Fn(&SubfanSelection) -> String,
) {
    let mut tally = Tally::default();
    for g in good {
        let subs: Vec<usize> = (0..opens.len()).filter(|&k| open_masks[k] & !g.mask == 0).collect();
        let saturated: Vec<u128> = subs
            .iter()
            .filter(|&&k| is_saturated_in(&g.q, &opens[k], g.u))
            .map(|&k| open_masks[k])
            .collect();
        for &k in &subs {
            let w = open_masks[k];
            let brute = saturated.iter().filter(|&&s| s & !w == 0).fold(0u128, |a, &s| a | s);
            let fast = remove_saturation_of(&g.q, g.u, &g.u.difference(&opens[k]));
            tally.check(masks.of(&fast) == brute && saturated.contains(&brute), || {
                format!("{}: inside {} got {}", label(g.u), opens[k], fast)
            });
        }
    }
    out.saturated_interior.absorb(tally);
}

fn staging_checks(
    out: &mut QuotientSweep,
    cf: &CorpusFan,
    opens: &[SubfanSelection],
    actions: &[(String, SubtorusAction)],
    results: &[Vec<Option<QuotientFan>>],
) {
    for (i, (iname, inner)) in actions.iter().enumerate() {
        for (o, (oname, outer)) in actions.iter().enumerate() {
            if !inner.is_sub_action_of(outer) {
                continue;
            }
            // second stages depend only on the first quotient
            let mut cache: HashMap<QuotientFanKey, Option<Result<QuotientFan, crate::error::QuotientError>>> =
                HashMap::new();
            for (k, u) in opens.iter().enumerate() {
                let Some(first) = &results[i][k] else { continue };
                let second = cache
                    .entry(QuotientFanKey::of(first))
                    .or_insert_with(|| second_stage(first, outer));
                let outcome = compare_routes(u, first, second.as_ref(), results[o][k].as_ref());
                out.staging.check(outcome.consistent(), || {
                    format!("{} / {} in {} / {}: {:?}", cf.name, iname, oname, u, outcome)
                });
            }
        }
    }
}

/// Identifies first-stage quotients with the same fan and projection.
#[derive(PartialEq, Eq, Hash)]
struct QuotientFanKey(String);

impl QuotientFanKey {
    fn of(q: &QuotientFan) -> Self {
        QuotientFanKey(format!("{:?}|{:?}|{}", q.fan().rays(), q.fan().max_cones(), q.projection()))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymmetrySweep {
    pub instances: usize,
    /// With trivial symmetries every maximal selection satisfies all conclusions.
    pub theorem_trivial: Tally,
    /// Idempotence and invariance of `W`, and `W(U) = U` for invariant `U`.
    pub w_set_laws: Tally,
    /// Equality of both sides whenever the hypotheses hold.
    pub eq1: Tally,
    /// Pairs `X ⊆ X'` skipped because a hypothesis fails.
    pub eq1_hypothesis_failures: usize,
    /// `W(U)` is open with a good quotient for every maximal `U`, per group.
    pub corollary_first: Tally,
    /// Invariant good selections are saturated in some `W(U)`; trivial groups only.
    pub corollary_second_trivial: Tally,
    /// Invariant good selections without such a host, for nontrivial groups.
    pub corollary_second_unhosted: usize,
    /// Disjoint invariant closed sets have disjoint composite images.
    pub composite_disjointness: Tally,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SymmetrySweep {
    pub fn tallies(&self) -> Vec<(&'static str, &Tally)> {
        vec![
            ("theorem, trivial symmetries", &self.theorem_trivial),
            ("W-set laws", &self.w_set_laws),
            ("translate identity", &self.eq1),
            ("corollary, maximal subsets", &self.corollary_first),
            ("corollary, invariant subsets, trivial symmetries", &self.corollary_second_trivial),
            ("composite disjointness", &self.composite_disjointness),
        ]
    }
}

/// Runs the symmetry checks over the complete fans of the corpus, for every
/// action and every compatible symmetry group (cyclic subgroups and the full
/// automorphism group).
pub fn symmetry_sweep(corpus: &[CorpusFan], cfg: SweepConfig) -> SymmetrySweep {
    use crate::symmetry::{compatible_groups, composite_classes, corollary_with, theorem_report, w_set, Eq1Ambient};

    let start = Instant::now();
    let mut out = SymmetrySweep::default();
    for cf in corpus {
        let fan = &cf.fan;
        if !fan.is_complete() || !fan.is_simplicial() || fan.cones().len() > 128 {
            continue;
        }
        let Ok(opens) = fan.enumerate_open_subsets(cfg.max_subsets) else {
            continue;
        };
        for (aname, act) in action_corpus(fan.rank()) {
            let ctx = QuotientContext::new(fan, &act).expect("same rank");
            let good: Vec<(SubfanSelection, QuotientFan)> = opens
                .iter()
                .filter_map(|u| ctx.good_quotient(u).ok().map(|q| (u.clone(), q)))
                .collect();
            let Ok(groups) = compatible_groups(fan, &act) else { continue };
            for g in &groups {
                out.instances += 1;
                let label = format!("{} / {} / group of order {}", cf.name, aname, g.symmetries().order());
                let cor = corollary_with(&ctx, &good, g);
                if g.connected() {
                    for r in &cor.maximal {
                        let again = theorem_report(&ctx, &r.u, g);
                        out.theorem_trivial.check(r.all_hold() && again == *r && r.w == r.u, || {
                            format!("{label}: conclusions fail for {}", r.u)
                        });
                    }
                    for o in &cor.invariant_sets {
                        out.corollary_second_trivial
                            .check(o.host.is_some(), || format!("{label}: {} has no host", o.v));
                    }
                } else {
                    out.corollary_second_unhosted += cor.invariant_sets.iter().filter(|o| o.host.is_none()).count();
                }
                for r in &cor.maximal {
                    out.corollary_first.check(r.open && r.good_quotient, || {
                        format!("{label}: W({}) = {} has no good quotient", r.u, r.w)
                    });
                }
                if aname == "trivial" {
                    for u in &opens {
                        let w = w_set(u, g);
                        let ok = w_set(&w, g) == w
                            && g.symmetries().fixes(&w)
                            && (!g.symmetries().fixes(u) || w == *u)
                            && w.is_subset(u);
                        out.w_set_laws.check(ok, || format!("{label}: W laws fail on {u}"));
                    }
                }
                for (v, q) in good.iter().filter(|(v, _)| g.symmetries().fixes(v)) {
                    let classes = composite_classes(q, v, g.symmetries());
                    let closed: Vec<ConeSet> = v
                        .iter()
                        .map(|t| {
                            ConeSet::new(v.iter().filter(|&s| {
                                g.symmetries().elements().iter().any(|e| e.apply_cone(t).is_subset(s))
                            }))
                        })
                        .collect();
                    let image = |a: &ConeSet| -> Vec<RaySet> {
                        let mut r: Vec<RaySet> = a.iter().filter_map(|t| q.image_of(t)).map(|c| classes[&c]).collect();
                        r.sort();
                        r.dedup();
                        r
                    };
                    for (i, a) in closed.iter().enumerate() {
                        for b in &closed[i + 1..] {
                            if a.is_disjoint(b) {
                                let (ia, ib) = (image(a), image(b));
                                out.composite_disjointness.check(!ia.iter().any(|c| ib.contains(c)), || {
                                    format!("{label}: disjoint invariant closed sets {a} and {b} in {v}")
                                });
                            }
                        }
                    }
                }
                for (xp, qp) in &good {
                    let amb = Eq1Ambient::new(&ctx, xp, Some(qp), g);
                    for x in opens.iter().filter(|x| x.is_subset(xp) && g.symmetries().fixes(x)) {
                        let r = amb.check(fan, x, g);
                        match r.equal {
                            None => out.eq1_hypothesis_failures += 1,
                            Some(eq) => out.eq1.check(eq, || {
                                format!("{label}: X' = {xp}, X = {x}: sides differ at {:?}", r.witness)
                            }),
                        }
                    }
                }
            }
        }
    }
    out.elapsed = start.elapsed();
    out
}
