use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gquot::corpus::{complete_plane_fans, p1_times_p1, weighted_p112};
use gquot::{
    cox_presentation, good_quotient, smith_normal_form, t_maximal_subsets, AffineProperty, Cone, IntMatrix,
    SubtorusAction,
};
use num_bigint::BigInt;

fn line(rank: usize, v: &[i64]) -> SubtorusAction {
    SubtorusAction::normalize(rank, &[v.iter().map(|&x| BigInt::from(x)).collect()])
}

fn lattice(c: &mut Criterion) {
    let m = IntMatrix::from_i64(&[
        &[12, -7, 3, 5, 0, 9],
        &[4, 18, -2, 6, 11, 1],
        &[-3, 5, 21, -8, 2, 7],
        &[9, 0, 6, 15, -4, 3],
        &[1, 13, -9, 2, 8, -6],
    ]);
    c.bench_function("smith normal form 5x6", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn cones(c: &mut Criterion) {
    let cone = Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[2, -1, 3], &[0, 3, 1]]);
    c.bench_function("dual of a 3d cone", |b| b.iter(|| black_box(&cone).dual()));
    c.bench_function("hilbert basis of a 3d cone", |b| b.iter(|| black_box(&cone).hilbert_basis(6)));
}

fn quotients(c: &mut Criterion) {
    let fan = p1_times_p1();
    let act = line(2, &[1, 0]);
    let all = fan.all_cones();
    c.bench_function("good quotient attempt on P1xP1", |b| {
        b.iter(|| good_quotient(black_box(&fan), &all, &act).is_ok())
    });

    let hexagon = complete_plane_fans(6).into_iter().max_by_key(|f| f.rays().len()).expect("corpus fan");
    let act = line(2, &[1, 1]);
    c.bench_function("maximal subsets of a plane fan", |b| {
        b.iter(|| t_maximal_subsets(black_box(&hexagon), &act, AffineProperty::from_k(2).unwrap(), 1 << 16))
    });
}

fn cox(c: &mut Criterion) {
    let fan = weighted_p112();
    c.bench_function("cox presentation of P(1,1,2)", |b| b.iter(|| cox_presentation(black_box(&fan))));
}

criterion_group!(benches, lattice, cones, quotients, cox);
criterion_main!(benches);
