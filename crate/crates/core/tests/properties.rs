//! Property tests for the lattice, cone, fan, quotient, symmetry and Cox layers.

use std::sync::OnceLock;

use gquot::corpus::{action_corpus, fan_corpus, CorpusFan, PLANE_GENERATORS};
use gquot::lattice::{kernel_lattice, quotient_lattice_map, saturate, to_big};
use gquot::quotient::{check_quotient_invariants, check_quotient_properties, is_saturated_in};
use gquot::symmetry::compatible_groups;
use gquot::{
    cox_presentation, smith_normal_form, translate, w_set, Cone, ConeSet, Fan, IntMatrix, QuotientContext, RaySet,
    Sublattice, SubtorusAction,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn corpus() -> &'static [CorpusFan] {
    static C: OnceLock<Vec<CorpusFan>> = OnceLock::new();
    C.get_or_init(fan_corpus)
}

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows(cols, &r.iter().map(|v| to_big(v)).collect::<Vec<_>>()))
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn vectors(dim: usize, count: std::ops::RangeInclusive<usize>, range: i64) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, dim), count)
        .prop_map(|vs| vs.iter().map(|v| to_big(v)).collect())
}

/// A corpus fan, one of its open subsets and one action, by index.
fn instance() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..corpus().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(f, u, a)| {
        let fan = &corpus()[f].fan;
        let subsets = fan.enumerate_open_subsets(1 << 16).unwrap().len();
        (f, u.index(subsets), a.index(action_corpus(fan.rank()).len()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_decomposes(a in any_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.left.mul(&a).mul(&s.right), s.diag_matrix());
        prop_assert!(s.left.is_unimodular() && s.right.is_unimodular());
        prop_assert!(s.diag.iter().all(|d| !d.is_negative()));
        let nonzero: Vec<&BigInt> = s.diag.iter().take_while(|d| !d.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), s.rank());
        prop_assert!(nonzero.windows(2).all(|w| w[1].is_multiple_of(w[0])));
        prop_assert_eq!(s.rank(), a.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3, 4), b in matrix(3, 3, 4)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        if !a.det().is_zero() {
            let order = gquot::lattice::cokernel_diagnostics(&a).order().unwrap();
            prop_assert_eq!(order, a.det().abs());
        }
    }

    #[test]
    fn kernels_are_saturated_and_complete(a in any_matrix()) {
        let k = kernel_lattice(&a);
        prop_assert!(k.is_saturated());
        prop_assert_eq!(k.rank() + a.rank(), a.cols());
        for row in k.basis().to_rows() {
            prop_assert!(a.apply(&row).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn saturation_and_quotient_maps(gens in vectors(3, 0..=3, 5)) {
        let l = Sublattice::from_generators(3, &gens);
        let s = saturate(&l);
        prop_assert!(s.is_saturated() && s.rank() == l.rank());
        prop_assert!(l.is_sublattice_of(&s));
        prop_assert_eq!(saturate(&s), s.clone());
        let q = quotient_lattice_map(&s).unwrap();
        prop_assert_eq!(q.rows(), 3 - s.rank());
        if q.rows() > 0 {
            prop_assert_eq!(kernel_lattice(&q), s);
            prop_assert!(q.right_inverse().is_some());
        }
    }

    #[test]
    fn double_dual_is_the_cone(dim in 1usize..=3, seed in vectors(3, 1..=4, 3)) {
        let gens: Vec<Vec<BigInt>> = seed.into_iter().map(|v| v[..dim].to_vec()).collect();
        let c = Cone::from_generators(dim, &gens);
        let dd = c.dual().dual();
        prop_assert!(c.contains_cone(&dd) && dd.contains_cone(&c));
        for g in &gens {
            prop_assert!(c.contains(g));
            for f in c.facets() {
                prop_assert!(gquot::lattice::dot(f, g) >= BigInt::zero());
            }
        }
        prop_assert_eq!(c.dimension() + c.dual().lineality_rank(), dim);
    }

    #[test]
    fn intersections_lie_in_both(a in vectors(2, 1..=3, 3), b in vectors(2, 1..=3, 3)) {
        let (ca, cb) = (Cone::from_generators(2, &a), Cone::from_generators(2, &b));
        let i = ca.intersect(&cb).unwrap();
        prop_assert!(ca.contains_cone(&i) && cb.contains_cone(&i));
        for g in a.iter().filter(|g| cb.contains(g)) {
            prop_assert!(i.contains(g));
        }
    }

    #[test]
    fn simplicial_cones_have_all_faces(m in matrix(3, 3, 3)) {
        prop_assume!(!m.det().is_zero());
        let c = Cone::from_generators(3, &m.to_rows());
        prop_assert!(c.is_simplicial() && c.is_pointed());
        prop_assert_eq!(c.faces().len(), 8);
        let hb = c.hilbert_basis(8).unwrap();
        for r in c.rays() {
            prop_assert!(hb.contains(r));
        }
        prop_assert!(hb.iter().all(|v| c.contains(v)));
    }

    #[test]
    fn plane_fans_are_complete_iff_gaps_are_small(mask in 1u32..256) {
        let n = PLANE_GENERATORS.len();
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = idx.len();
        let rays: Vec<Vec<BigInt>> = idx.iter().map(|&i| to_big(&PLANE_GENERATORS[i])).collect();
        // eighth turns to the next chosen ray
        let gaps: Vec<usize> = (0..k).map(|j| (idx[(j + 1) % k] + n - idx[j]) % n).collect();
        let cones: Vec<Vec<usize>> = (0..k)
            .filter(|&j| k > 1 && gaps[j] < n / 2 && gaps[j] > 0)
            .map(|j| vec![j, (j + 1) % k])
            .chain((0..k).map(|j| vec![j]))
            .collect();
        let fan = Fan::new(2, rays, &cones).unwrap();
        let complete = k >= 3 && gaps.iter().all(|&g| g < n / 2);
        prop_assert_eq!(fan.is_complete(), complete);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn open_subsets_match_brute_force(f in 0..corpus().len()) {
        let fan = &corpus()[f].fan;
        let cones = fan.cones();
        prop_assume!(cones.len() <= 13);
        let mut count = 0;
        for mask in 0u32..(1 << cones.len()) {
            let chosen: Vec<RaySet> = (0..cones.len()).filter(|i| mask >> i & 1 == 1).map(|i| cones[i]).collect();
            let closed = chosen.iter().all(|&c| {
                cones.iter().filter(|&&d| d.is_subset(c)).all(|d| chosen.contains(d))
            });
            count += closed as usize;
        }
        prop_assert_eq!(fan.enumerate_open_subsets(1 << 16).unwrap().len(), count);
    }

    #[test]
    fn automorphisms_form_a_group(f in 0..corpus().len()) {
        let fan = &corpus()[f].fan;
        let auts = fan.automorphisms().unwrap();
        prop_assert!(auts.iter().any(|a| a.is_identity()));
        for a in &auts {
            prop_assert!(auts.contains(&a.inverse()));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert_eq!(a.apply_set(&fan.all_cones()), fan.all_cones());
            for b in &auts {
                prop_assert!(auts.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn quotients_satisfy_their_invariants((f, u, a) in instance()) {
        let fan = &corpus()[f].fan;
        let act = &action_corpus(fan.rank())[a];
        let ctx = QuotientContext::new(fan, &act.1).unwrap();
        let subsets = fan.enumerate_open_subsets(1 << 16).unwrap();
        let u = &subsets[u];
        if let Ok(q) = ctx.good_quotient(u) {
            prop_assert_eq!(check_quotient_invariants(&ctx, u, &q), Ok(()));
            prop_assert_eq!(check_quotient_properties(&ctx, u, &q), Ok(()));
            // every saturated open subset has a good quotient
            for v in subsets.iter().filter(|v| v.is_subset(u)) {
                let inside = ctx.max_saturated_inside(u, v).unwrap();
                prop_assert!(inside.is_subset(v) && is_saturated_in(&q, &inside, u));
                prop_assert!(ctx.good_quotient(&inside).is_ok());
                if is_saturated_in(&q, v, u) {
                    prop_assert_eq!(&inside, v);
                }
            }
        }
    }

    #[test]
    fn trivial_action_is_the_identity((f, u, _a) in instance()) {
        let fan = &corpus()[f].fan;
        let act = SubtorusAction::trivial(fan.rank());
        let ctx = QuotientContext::new(fan, &act).unwrap();
        let subsets = fan.enumerate_open_subsets(1 << 16).unwrap();
        let q = ctx.good_quotient(&subsets[u]).unwrap();
        prop_assert!(q.is_geometric());
        prop_assert_eq!(q.cones().len(), subsets[u].len());
    }

    #[test]
    fn w_sets_are_idempotent_and_monotone((f, u, a) in instance(), v in any::<prop::sample::Index>()) {
        let fan = &corpus()[f].fan;
        let act = &action_corpus(fan.rank())[a];
        let subsets = fan.enumerate_open_subsets(1 << 16).unwrap();
        let (u, v) = (&subsets[u], &subsets[v.index(subsets.len())]);
        let groups = compatible_groups(fan, &act.1).unwrap();
        for g in &groups {
            let w = w_set(u, g);
            prop_assert!(w.is_subset(u) && fan.is_face_closed(&w));
            prop_assert_eq!(w_set(&w, g), w.clone());
            prop_assert!(g.symmetries().fixes(&w));
            let uv: ConeSet = u.intersection(v);
            prop_assert!(w_set(&uv, g).is_subset(&w));
            for s in g.symmetries().elements() {
                prop_assert_eq!(translate(&s.inverse(), &translate(s, u)), u.clone());
            }
        }
    }

    #[test]
    fn grading_kills_characters(f in 0..corpus().len(), m in vectors(2, 1..=1, 5), a in vectors(6, 2..=2, 4)) {
        let p = cox_presentation(&corpus()[f].fan).unwrap();
        let n = p.num_coordinates();
        let zero = p.degree(&vec![BigInt::zero(); n]);
        let m = &m[0][..p.fan().rank()];
        prop_assert_eq!(p.degree(&p.pairing().apply(m)), zero.clone());
        let (x, y): (Vec<BigInt>, Vec<BigInt>) = (a[0][..n].to_vec(), a[1][..n].to_vec());
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(s, t)| s + t).collect();
        let (dx, dy, ds) = (p.degree(&x), p.degree(&y), p.degree(&sum));
        prop_assert!(ds.free.iter().zip(dx.free.iter().zip(&dy.free)).all(|(s, (u, v))| *s == u + v));
        let torsion_additive = p.class_group().torsion.iter().enumerate().all(|(i, t)| {
            ((&dx.torsion[i] + &dy.torsion[i]) - &ds.torsion[i]).is_multiple_of(t)
        });
        prop_assert!(torsion_additive);
        prop_assert!(BigInt::one() <= p.round_trip(&p.fan().all_cones()).unwrap().lattice_index);
    }
}
