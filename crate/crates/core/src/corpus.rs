//! Small fans and subtorus actions used by the brute-force sweeps.

use num_bigint::BigInt;
use serde::Serialize;

use crate::fan::Fan;
use crate::lattice::to_big;
use crate::quotient::SubtorusAction;

#[derive(Clone, Debug, Serialize)]
pub struct CorpusFan {
    pub name: String,
    pub fan: Fan,
}

/// The primitive vectors of `[-1,1]²`, counterclockwise from `(1,0)`.
pub const PLANE_GENERATORS: [[i64; 2]; 8] = [
    [1, 0],
    [1, 1],
    [0, 1],
    [-1, 1],
    [-1, 0],
    [-1, -1],
    [0, -1],
    [1, -1],
];

pub fn projective_line() -> Fan {
    Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).expect("fan")
}

pub fn affine_line() -> Fan {
    Fan::from_i64(1, &[&[1]], &[&[0]]).expect("fan")
}

pub fn affine_plane() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).expect("fan")
}

pub fn projective_plane() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]]).expect("fan")
}

pub fn p1_times_p1() -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
    .expect("fan")
}

/// Weighted projective plane with weights `(1,2,1)` on its three rays.
pub fn weighted_p112() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[2, 0]]).expect("fan")
}

/// Complete fans whose rays are 3 to `max_rays` of the plane generators,
/// in generator order. Consecutive rays must be less than a half turn apart.
pub fn complete_plane_fans(max_rays: usize) -> Vec<Fan> {
    let n = PLANE_GENERATORS.len();
    let mut out = vec![];
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() < 3 || idx.len() > max_rays {
            continue;
        }
        // eighth turns between consecutive rays, cyclically
        let gaps_ok = (0..idx.len()).all(|k| {
            let next = idx[(k + 1) % idx.len()];
            (next + n - idx[k]) % n < n / 2
        });
        if !gaps_ok {
            continue;
        }
        let rays: Vec<Vec<BigInt>> = idx.iter().map(|&i| to_big(&PLANE_GENERATORS[i])).collect();
        let cones: Vec<Vec<usize>> = (0..idx.len()).map(|k| vec![k, (k + 1) % idx.len()]).collect();
        out.push(Fan::new(2, rays, &cones).expect("fan"));
    }
    out
}

/// The fan corpus: all complete plane fans on the generators with at most
/// six rays, the projective line, the weighted projective plane, and the
/// affine line and plane.
pub fn fan_corpus() -> Vec<CorpusFan> {
    let mut out = vec![
        CorpusFan { name: "P1".into(), fan: projective_line() },
        CorpusFan { name: "A1".into(), fan: affine_line() },
        CorpusFan { name: "A2".into(), fan: affine_plane() },
        CorpusFan { name: "P2".into(), fan: projective_plane() },
        CorpusFan { name: "P1xP1".into(), fan: p1_times_p1() },
        CorpusFan { name: "P(1,1,2)".into(), fan: weighted_p112() },
    ];
    for f in complete_plane_fans(6) {
        if out.iter().any(|c| c.fan == f) {
            continue;
        }
        let name = format!(
            "plane[{}]",
            f.rays()
                .iter()
                .map(|r| crate::lattice::fmt_vec(r))
                .collect::<Vec<_>>()
                .join(" ")
        );
        out.push(CorpusFan { name, fan: f });
    }
    out
}

/// Trivial action, all saturated lines with entries in `[-2,2]` (one
/// generator per line), and the full torus.
pub fn action_corpus(rank: usize) -> Vec<(String, SubtorusAction)> {
    let mut out = vec![("trivial".to_string(), SubtorusAction::trivial(rank))];
    let mut lines: Vec<SubtorusAction> = vec![];
    let mut v = vec![-2i64; rank];
    loop {
        let first_nonzero = v.iter().find(|&&x| x != 0).copied();
        if first_nonzero.is_some_and(|x| x > 0) {
            let act = SubtorusAction::normalize(rank, &[to_big(&v)]);
            if act.input_was_saturated() && !lines.contains(&act) && act.cochar().rank() < rank {
                lines.push(act);
            }
        }
        // odometer
        let mut k = 0;
        while k < rank && v[k] == 2 {
            v[k] = -2;
            k += 1;
        }
        if k == rank {
            break;
        }
        v[k] += 1;
    }
    for l in lines {
        let name = format!("line{}", crate::lattice::fmt_vec(l.cochar().basis().row(0)));
        out.push((name, l));
    }
    if rank > 0 {
        out.push(("full".to_string(), SubtorusAction::full(rank)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        let c = fan_corpus();
        for cf in &c {
            assert!(cf.fan.validate().valid, "{}", cf.name);
            assert!(cf.fan.is_simplicial(), "{}", cf.name);
        }
        assert!(c.iter().filter(|cf| cf.fan.is_complete()).count() > 20);
        assert_eq!(action_corpus(2).len(), 10);
        assert_eq!(action_corpus(1).len(), 2);
    }
}
