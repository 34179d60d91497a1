//! One function per subcommand. Each turns a problem into a report; input
//! problems found along the way come back as [`InputError`].

use gquot::corpus::{fan_corpus, CorpusFan};
use gquot::cox::{random_exponents, zero_set_identity};
use gquot::oracle::ChartOracle;
use gquot::sweep::{quotient_sweep, symmetry_sweep, SweepConfig};
use gquot::{
    cox_presentation, eq1_crosscheck, good_quotient, t_maximal_subsets, verify_corollary, verify_globally_defined,
    verify_theorem_conclusions, w_set, AffineProperty, ConeSet, Report, Section, SymmetryError, Verdict,
};

use crate::problem::{InputError, Problem};

/// Flags shared by all commands.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub bound: usize,
    pub max_subsets: usize,
}

/// Random divisors per fan for the zero-set check.
const DIVISORS: usize = 100;

fn header(r: &mut Report, p: &Problem) {
    if let Some(n) = &p.name {
        r.data("name", n);
    }
    r.data("fan", &p.fan);
    if !p.action.input_was_saturated() {
        r.info(
            "subtorus saturated",
            "subtorus action",
            "the generators span a non-saturated lattice; the action is through its saturation",
        );
    }
    r.data("subtorus", &p.action.cochar().basis().to_rows());
}

fn fmt_sets(sets: &[ConeSet]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn check(p: &Problem) -> Report {
    let mut r = Report::new("check");
    header(&mut r, p);
    let v = p.fan.validate();
    r.check(
        "valid fan",
        "fan",
        v.valid,
        v.violation.map(|x| x.to_string()).unwrap_or_default(),
    );
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.info("complete", "complete fan", yes(p.fan.is_complete()));
    r.info("simplicial", "simplicial fan", yes(p.fan.is_simplicial()));
    r.info("smooth", "smooth fan", yes(p.fan.is_smooth()));
    r.info(
        "symmetries",
        "fan symmetries",
        format!(
            "group of order {} from {} generators",
            p.group.symmetries().order(),
            p.symmetry_generators.len()
        ),
    );
    let families: Vec<&str> = p.family_names().collect();
    if !families.is_empty() {
        r.info("section families", "Cox ring sections", families.join(" "));
    }
    for (name, s) in &p.selections {
        r.check(
            &format!("selection {name} is open"),
            "invariant open subset",
            p.fan.is_face_closed(s),
            s.to_string(),
        );
    }
    r.data("complete", &p.fan.is_complete());
    r.data("simplicial", &p.fan.is_simplicial());
    r
}

pub fn quotient(p: &Problem, selection: &str, s: Settings) -> Result<Report, InputError> {
    let u = p.selection(selection)?;
    let mut r = Report::new("quotient");
    header(&mut r, p);
    r.data("selection", u);
    let res = good_quotient(&p.fan, u, &p.action);
    match &res {
        Ok(q) => {
            r.check("good quotient exists", "good quotient criterion", true, q.to_string());
            r.info(
                "geometric",
                "geometric quotient",
                if q.is_geometric() { "fibers are orbits" } else { "some fibers contain several orbits" },
            );
            r.data("quotient", q);
        }
        Err(e) => {
            r.check("good quotient exists", "good quotient criterion", false, e.to_string());
        }
    }
    match ChartOracle::new(&p.fan, &p.action, s.bound) {
        Ok(o) => {
            let verdict = o.verdict(u).good;
            r.check(
                "invariant-character oracle agrees",
                "invariant rings of charts",
                verdict == res.is_ok(),
                format!("oracle says {}", if verdict { "good" } else { "not good" }),
            );
        }
        Err(e) => r.info("invariant-character oracle", "invariant rings of charts", e.to_string()),
    }
    r.note(format!("selection {selection}: {u}"));
    Ok(r)
}

pub fn enumerate_maximal(p: &Problem, k: u8, s: Settings) -> Result<Report, InputError> {
    let property = AffineProperty::from_k(k).ok_or_else(|| InputError::field("--k", "must be 1 or 2"))?;
    let mut r = Report::new("enumerate-maximal");
    header(&mut r, p);
    let sets = t_maximal_subsets(&p.fan, &p.action, property, s.max_subsets)
        .map_err(|e| InputError::plain(e.to_string()))?;
    r.info(
        "maximal subsets",
        "maximal open subsets",
        format!("{} found for k={k}: {}", sets.len(), fmt_sets(&sets)),
    );
    if k == 2 {
        r.info(
            "affine property",
            "maximal open subsets",
            "toric quotient spaces embed in toric varieties, so any two points share an affine neighbourhood",
        );
    }
    for u in &sets {
        r.note(format!("maximal: {u}"));
    }
    r.data("k", &k);
    r.data("maximal", &sets);
    Ok(r)
}

pub fn cox(p: &Problem, selection: &str, family: Option<&str>, s: Settings) -> Result<Report, InputError> {
    let pres = cox_presentation(&p.fan).map_err(|e| InputError::field("rays", e.to_string()))?;
    let u = p.selection(selection)?;
    let mut r = Report::new("cox");
    header(&mut r, p);
    r.info("class group", "divisor class group", pres.class_group().to_string());
    let weights: Vec<String> = pres.weights().iter().map(|w| w.to_string()).collect();
    r.info("weights", "grading of the Cox ring", weights.join(" "));
    r.check("grading is exact", "Cox presentation", pres.is_exact(), "");
    r.info("quasitorus", "quasitorus H", format!("identity component of rank {}", pres.h_rank()));
    match pres.finite_isotropy_witness() {
        Some((face, iso)) => r.info("isotropy", "action of H", format!("{iso} at orthant face {face}")),
        None if p.fan.is_smooth() => r.info("isotropy", "action of H", "free: the fan is smooth"),
        None => r.info("isotropy", "action of H", "no nontrivial finite isotropy found"),
    }
    let mut all_hold = true;
    for a in random_exponents(pres.num_coordinates(), DIVISORS, 3, s.seed) {
        let sec = pres.canonical_section(&a).expect("nonnegative exponents");
        all_hold &= zero_set_identity(&pres, &sec).map_err(|e| InputError::plain(e.to_string()))?;
    }
    r.check(
        "zero sets of canonical sections",
        "canonical sections",
        all_hold,
        format!("{DIVISORS} random divisors"),
    );
    let lift = pres.lift_open(u).map_err(|e| InputError::plain(e.to_string()))?;
    let rt = pres.round_trip(u).map_err(|e| InputError::plain(e.to_string()))?;
    r.check(
        "quotient of the lift reproduces the selection",
        "Cox presentation",
        rt.ok(),
        rt.detail.clone().unwrap_or_default(),
    );
    r.data("class_group", pres.class_group());
    r.data("weights", &pres.weights());
    r.data("relevant", pres.relevant());
    r.data("lift", &lift);
    r.data("round_trip", &rt);

    if let Some(name) = family {
        let sections = p.family(name, |e| Section::Monomial(pres.canonical_section(e).expect("checked exponents")))?;
        let t = pres.lifted_cochar(&p.action);
        let w = verify_globally_defined(&pres, &lift, &sections, &t, s.seed)
            .map_err(|e| InputError::field(format!("sections.{name}"), e.to_string()))?;
        for m in &w.members {
            r.note(format!(
                "member {}: homogeneous {}, affine {}, contained {}",
                m.section, m.homogeneous, m.affine, m.contained
            ));
        }
        for u in &w.uncovered {
            r.note(format!("not covered: {u}"));
        }
        r.check(
            "family is a witness",
            "globally defined open subsets",
            w.is_witness.acceptable(),
            w.is_witness.to_string(),
        );
        if w.is_witness == Verdict::Sampled {
            r.info(
                "sampling",
                "globally defined open subsets",
                format!("{} sampled point pairs, seed {}", w.pairs_checked, s.seed),
            );
        }
        r.data("witness", &w);
    }
    Ok(r)
}

fn caveat(r: &mut Report, c: &Option<String>) {
    if let Some(c) = c {
        r.info("connectedness", "connected reductive group", c.clone());
    }
}

pub fn w_set_cmd(p: &Problem, selection: &str) -> Result<Report, InputError> {
    let u = p.selection(selection)?;
    let mut r = Report::new("w-set");
    header(&mut r, p);
    let w = w_set(u, &p.group);
    r.check("W is open", "translate intersections", p.fan.is_face_closed(&w), w.to_string());
    r.check("W is invariant", "translate intersections", p.group.symmetries().fixes(&w), "");
    r.info("group order", "fan symmetries", p.group.symmetries().order().to_string());
    r.data("u", u);
    r.data("w", &w);
    Ok(r)
}

pub fn verify_theorem(p: &Problem, selection: &str, s: Settings) -> Result<Report, InputError> {
    let u = p.selection(selection)?;
    let mut r = Report::new("verify-theorem");
    header(&mut r, p);
    match verify_theorem_conclusions(&p.fan, u, &p.group, s.max_subsets) {
        Ok(t) => {
            r.check("W is open", "translate intersections", t.open, t.w.to_string());
            r.check(
                "W has a good quotient",
                "translate intersections",
                t.good_quotient,
                t.quotient.clone().unwrap_or_default(),
            );
            r.check("W is saturated in U", "translate intersections", t.saturated_in_u, "");
            r.info(
                "group quotient",
                "quotients by nested groups",
                format!("{} torus-quotient orbits in {} classes", t.quotient_orbits, t.composite_orbits),
            );
            caveat(&mut r, &t.caveat);
            r.data("theorem", &t);
        }
        Err(SymmetryError::NotMaximal(why)) => {
            r.check("U is maximal", "maximal open subsets", false, why);
        }
        Err(e) => return Err(InputError::plain(e.to_string())),
    }
    Ok(r)
}

pub fn verify_corollary_cmd(p: &Problem, s: Settings) -> Result<Report, InputError> {
    let c = verify_corollary(&p.fan, &p.group, s.max_subsets).map_err(|e| InputError::plain(e.to_string()))?;
    let mut r = Report::new("verify-corollary");
    header(&mut r, p);
    for t in &c.maximal {
        r.check(
            &format!("W({}) is open with a good quotient", t.u),
            "translate intersections of maximal subsets",
            t.open && t.good_quotient,
            t.w.to_string(),
        );
        r.info(
            &format!("W({}) saturated in U", t.u),
            "translate intersections of maximal subsets",
            if t.saturated_in_u { "yes" } else { "no" },
        );
    }
    for o in &c.invariant_sets {
        r.check(
            &format!("{} is saturated in some W(U)", o.v),
            "invariant good subsets",
            o.host.is_some(),
            o.host.as_ref().map(|h| format!("U = {h}")).unwrap_or_default(),
        );
    }
    caveat(&mut r, &c.caveat);
    r.data("corollary", &c);
    Ok(r)
}

pub fn eq1(p: &Problem, ambient: &str, selection: &str) -> Result<Report, InputError> {
    let (xp, x) = (p.selection(ambient)?, p.selection(selection)?);
    let e = eq1_crosscheck(&p.fan, xp, x, &p.group).map_err(|e| InputError::plain(e.to_string()))?;
    let mut r = Report::new("eq1-check");
    header(&mut r, p);
    for (h, ok) in &e.hypotheses {
        r.check(h, "translate intersection identity", *ok, "");
    }
    if let (Some(u), Some(eq)) = (&e.u, e.equal) {
        r.info("U", "largest saturated subset", u.to_string());
        r.check(
            "W(U) equals W(X') minus the saturation of W(B)",
            "translate intersection identity",
            eq,
            e.witness.map(|c| format!("cone {c} lies on one side only")).unwrap_or_default(),
        );
    }
    r.data("eq1", &e);
    Ok(r)
}

/// Sweeps the built-in corpus, or only the problem's fan.
pub fn oracle_sweep(p: Option<&Problem>, limit: Option<usize>, s: Settings) -> Report {
    let corpus: Vec<CorpusFan> = match p {
        Some(p) => vec![CorpusFan {
            name: p.name.clone().unwrap_or_else(|| "input".into()),
            fan: p.fan.clone(),
        }],
        None => {
            let mut c = fan_corpus();
            c.truncate(limit.unwrap_or(c.len()));
            c
        }
    };
    let cfg = SweepConfig {
        bound: s.bound,
        max_subsets: s.max_subsets,
    };
    let mut r = Report::new("oracle-sweep");
    let qs = quotient_sweep(&corpus, cfg);
    r.info(
        "corpus",
        "sweep corpus",
        format!("{} fans, {} instances, {} selections, {} good", qs.fans, qs.instances, qs.selections, qs.good),
    );
    let concepts = [
        "good quotient criterion",
        "invariant rings of charts",
        "good quotient criterion",
        "properties of good quotients",
        "maximal open subsets",
        "maximal open subsets",
        "saturation",
        "quotients by nested subtori",
        "largest saturated subset",
    ];
    for ((name, t), c) in qs.tallies().into_iter().zip(concepts) {
        r.check(name, c, t.passed() || t.checked == 0, t.to_string());
    }
    let ys = symmetry_sweep(&corpus, cfg);
    for (name, t) in ys.tallies() {
        r.check(name, "translate intersections", t.passed() || t.checked == 0, t.to_string());
    }
    r.info(
        "translate identity hypotheses",
        "translate intersection identity",
        format!("{} pairs skipped", ys.eq1_hypothesis_failures),
    );
    r.data("quotient_sweep", &qs);
    r.data("symmetry_sweep", &ys);
    r
}
