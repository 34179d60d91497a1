//! Brute-force invariant-character oracle for good quotients.
//!
//! Independent of the double-description engine: for each cone `σ` it lists
//! the characters `m ∈ L^⊥ ∩ [-B,B]^d` that are nonnegative on `σ`, i.e. the
//! invariant monomials of the chart `X_σ` inside a box. Provided the box
//! contains the extreme generators of every `σ^∨ ∩ L^⊥` (true for small
//! entries), all tests below are exact:
//!
//! * `π(τ) ⊆ π(σ)` iff every invariant of `σ` is nonnegative on `τ`;
//! * two chart images meet in a common face iff some invariant `m` of the
//!   first with `-m` invariant on the second cuts out the same face of both;
//! * two orbits of a chart have the same image iff the same invariants
//!   vanish on them.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cone::Cone;
use crate::error::OracleError;
use crate::fan::{Fan, RaySet, SubfanSelection};
use crate::lattice::IntMatrix;
use crate::quotient::{QuotientFan, SubtorusAction};

fn small(v: &[BigInt]) -> Result<Vec<i64>, OracleError> {
    v.iter()
        .map(|x| x.to_i64().filter(|y| y.abs() < 1 << 20).ok_or(OracleError::Overflow))
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All integer vectors of length `d` with entries in `[-b, b]`.
fn box_points(d: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn rank_of(vs: &[&Vec<i64>], d: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = vs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_rows(d, &rows).rank()
}

/// Oracle verdict on one selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub good: bool,
    pub charts: Vec<RaySet>,
}

pub struct ChartOracle {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<RaySet>,
    invariants: Vec<Vec<Vec<i64>>>,
}

impl ChartOracle {
    pub fn new(fan: &Fan, act: &SubtorusAction, bound: usize) -> Result<ChartOracle, OracleError> {
        if fan.rank() != act.rank() {
            return Err(OracleError::RankMismatch);
        }
        let d = fan.rank();
        let rays = fan.rays().iter().map(|r| small(r)).collect::<Result<Vec<_>, _>>()?;
        let l = act
            .cochar()
            .basis()
            .to_rows()
            .iter()
            .map(|r| small(r))
            .collect::<Result<Vec<_>, _>>()?;
        let perp: Vec<Vec<i64>> = box_points(d, bound as i64)
            .into_iter()
            .filter(|m| l.iter().all(|v| dot(m, v) == 0))
            .collect();
        let cones = fan.cones().to_vec();
        let invariants = cones
            .iter()
            .map(|c| {
                perp.iter()
                    .filter(|m| c.indices().all(|i| dot(m, &rays[i]) >= 0))
                    .cloned()
                    .collect()
            })
            .collect();
        Ok(ChartOracle {
            dim: d,
            rays,
            cones,
            invariants,
        })
    }

    fn inv(&self, c: RaySet) -> &[Vec<i64>] {
        let i = self.cones.binary_search(&c).expect("cone of the fan");
        &self.invariants[i]
    }

    /// Invariant characters of the chart of `c` inside the box.
    pub fn invariants(&self, c: RaySet) -> &[Vec<i64>] {
        self.inv(c)
    }

    fn ray_in_image(&self, r: usize, sigma: RaySet) -> bool {
        self.inv(sigma).iter().all(|m| dot(m, &self.rays[r]) >= 0)
    }

    pub fn maps_into(&self, tau: RaySet, sigma: RaySet) -> bool {
        tau.indices().all(|r| self.ray_in_image(r, sigma))
    }

    fn same_lineality(&self, a: RaySet, b: RaySet) -> bool {
        let (ia, ib) = (self.inv(a), self.inv(b));
        let ra = rank_of(&ia.iter().collect::<Vec<_>>(), self.dim);
        let rb = rank_of(&ib.iter().collect::<Vec<_>>(), self.dim);
        let rab = rank_of(&ia.iter().chain(ib).collect::<Vec<_>>(), self.dim);
        ra == rb && rb == rab
    }

    fn meet_in_face(&self, a: RaySet, b: RaySet) -> bool {
        let ib = self.inv(b);
        self.inv(a).iter().any(|m| {
            let neg: Vec<i64> = m.iter().map(|x| -x).collect();
            if !ib.contains(&neg) {
                return false;
            }
            let on_a = a.indices().filter(|&r| dot(m, &self.rays[r]) == 0);
            let on_b = b.indices().filter(|&r| dot(m, &self.rays[r]) == 0);
            on_a.into_iter().all(|r| self.ray_in_image(r, b)) && on_b.into_iter().all(|r| self.ray_in_image(r, a))
        })
    }

    fn is_chart(&self, u: &SubfanSelection, sigma: RaySet) -> bool {
        u.iter().all(|t| !self.maps_into(t, sigma) || t.is_subset(sigma))
    }

    pub fn verdict(&self, u: &SubfanSelection) -> OracleVerdict {
        if u.is_empty() {
            return OracleVerdict {
                good: true,
                charts: vec![],
            };
        }
        let good: Vec<RaySet> = u.iter().filter(|&s| self.is_chart(u, s)).collect();
        let charts: Vec<RaySet> = good
            .iter()
            .copied()
            .filter(|&s| !good.iter().any(|&t| t != s && s.is_subset(t)))
            .collect();
        let covered = u.iter().all(|t| charts.iter().any(|&s| self.maps_into(t, s)));
        let fan_like = covered
            && charts.iter().enumerate().all(|(i, &a)| {
                charts[i + 1..]
                    .iter()
                    .all(|&b| self.same_lineality(a, b) && self.meet_in_face(a, b))
            });
        OracleVerdict { good: fan_like, charts }
    }

    /// Bitmask of the chart invariants vanishing on `tau`.
    fn vanishing(&self, sigma: RaySet, tau: RaySet) -> Vec<bool> {
        self.inv(sigma)
            .iter()
            .map(|m| tau.indices().all(|r| dot(m, &self.rays[r]) == 0))
            .collect()
    }

    /// Whether the orbits of `a` and `b` have the same image, given the
    /// charts of a good selection.
    pub fn same_image(&self, charts: &[RaySet], a: RaySet, b: RaySet) -> bool {
        charts.iter().any(|&s| {
            self.maps_into(a, s) && self.maps_into(b, s) && self.vanishing(s, a) == self.vanishing(s, b)
        })
    }

    /// Saturation of `u` in `u_prime`; `None` when `u_prime` is not good.
    pub fn is_saturated(&self, u: &SubfanSelection, u_prime: &SubfanSelection) -> Option<bool> {
        let v = self.verdict(u_prime);
        if !v.good {
            return None;
        }
        Some(u_prime.iter().all(|t| {
            u.contains(t) || !u.iter().any(|s| self.same_image(&v.charts, s, t))
        }))
    }
}

/// Compares each chart's invariant monoid `σ^∨ ∩ L^⊥` with the character
/// monoid of the quotient cone, identified through the transpose of the
/// quotient projection. Lattice points are compared inside the box in both
/// directions; for full-dimensional quotient cones the Hilbert basis of the
/// dual is compared as well.
pub fn chart_monoid_check(
    fan: &Fan,
    act: &SubtorusAction,
    q: &QuotientFan,
    bound: usize,
) -> Result<(), String> {
    let oracle = ChartOracle::new(fan, act, bound).map_err(|e| e.to_string())?;
    let pt = q.projection().transpose();
    let big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    for &(qc, chart) in q.charts() {
        let qrays: Vec<&[BigInt]> = qc.indices().map(|i| q.fan().ray(i)).collect();
        let nonneg_on_quotient = |y: &[BigInt]| qrays.iter().all(|r| crate::lattice::dot(r, y) >= BigInt::from(0));
        let upstairs: Vec<Vec<i64>> = oracle.invariants(chart).to_vec();
        for m in &upstairs {
            match pt.solve(&big(m)) {
                Some(y) if nonneg_on_quotient(&y) => {}
                _ => return Err(format!("invariant {m:?} of chart {chart} is not a character of quotient cone {qc}")),
            }
        }
        let pulled_ok = |y: &[BigInt]| -> Result<(), String> {
            let m = small(&pt.apply(y)).map_err(|e| e.to_string())?;
            if chart.indices().all(|r| dot(&m, &oracle.rays[r]) >= 0) {
                Ok(())
            } else {
                Err(format!("character {m:?} of quotient cone {qc} is not invariant on chart {chart}"))
            }
        };
        for y in box_points(q.target_rank(), bound as i64) {
            let y = big(&y);
            if nonneg_on_quotient(&y) {
                pulled_ok(&y)?;
            }
        }
        let qcone = Cone::from_generators(q.target_rank(), &qrays.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let dual = qcone.dual();
        if dual.is_pointed() {
            if let Ok(hb) = dual.hilbert_basis(bound.max(4)) {
                for y in hb {
                    pulled_ok(&y)?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_big;
    use crate::quotient::good_quotient;

    #[test]
    fn oracle_examples() {
        let c2 = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        let diag = SubtorusAction::normalize(2, &[to_big(&[1, 1])]);
        let o = ChartOracle::new(&c2, &diag, 3).unwrap();
        let punctured = c2.face_closure([RaySet::single(0), RaySet::single(1)]).unwrap();
        let v = o.verdict(&punctured);
        assert!(v.good);
        assert_eq!(v.charts.len(), 2);
        let inv = o.invariants(RaySet::single(0));
        assert!(inv.contains(&vec![1, -1]) && !inv.contains(&vec![-1, 1]));
        assert!(o.verdict(&c2.all_cones()).good);
        let q = good_quotient(&c2, &punctured, &diag).unwrap();
        chart_monoid_check(&c2, &diag, &q, 3).unwrap();

        let p1 = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        let full = SubtorusAction::full(1);
        let o = ChartOracle::new(&p1, &full, 3).unwrap();
        assert!(!o.verdict(&p1.all_cones()).good);
        let a = p1.face_closure([RaySet::single(0)]).unwrap();
        let torus = p1.face_closure([RaySet::ZERO]).unwrap();
        assert_eq!(o.is_saturated(&torus, &a), Some(false));
        assert_eq!(o.is_saturated(&torus, &p1.all_cones()), None);
    }
}
