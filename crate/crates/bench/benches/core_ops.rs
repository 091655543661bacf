//! Benchmarks for the hot paths: cyclotomic arithmetic, word
//! straightening, product construction, axiom verification, and
//! classification.

use criterion::{criterion_group, criterion_main, Criterion};

use bicrossed_core::{
    bicrossed_product, classify, family_sigma, presentation, root_of_unity, straighten,
    taft_structure, verify_hopf, CycScalar, Letter, PresentationParams, RewriteStrategy,
    TaftDescriptor,
};

fn zeta(l: usize, k: i64) -> CycScalar {
    root_of_unity(l, k).unwrap()
}

/// A dense scalar in the degree-`phi(12) = 4` field.
fn dense_scalar(shift: i64) -> CycScalar {
    let z = zeta(12, 1);
    let mut acc = CycScalar::zero(12);
    for e in 0..4 {
        let c = CycScalar::from_rational(num_rational::BigRational::new(
            (shift + e as i64 + 1).into(),
            (e as i64 + 2).into(),
        ));
        acc = acc.add(&c.mul(&z.pow(e as i64).unwrap()));
    }
    acc
}

fn bench_cyclotomic(c: &mut Criterion) {
    let a = dense_scalar(3);
    let b = dense_scalar(7);
    c.bench_function("cyclotomic/mul-dense-order-12", |bch| {
        bch.iter(|| std::hint::black_box(a.mul(&b)))
    });
    c.bench_function("cyclotomic/inv-dense-order-12", |bch| {
        bch.iter(|| std::hint::black_box(a.inv().unwrap()))
    });
    let p = zeta(8, 1);
    let q = zeta(12, 1);
    c.bench_function("cyclotomic/mul-cross-order-8-12", |bch| {
        bch.iter(|| std::hint::black_box(p.mul(&q)))
    });
}

fn sigma_params(n: usize, m: usize) -> PresentationParams {
    PresentationParams::TSigma {
        n,
        m,
        qbar: zeta(n, 1),
        q: zeta(m, 1),
        sigma: zeta(num_integer::gcd(n, m), 1),
    }
}

fn bench_straighten(c: &mut Criterion) {
    let params = sigma_params(3, 3);
    // An alternating word that triggers repeated commutation and
    // group-like reductions.
    let word: Vec<Letter> = [
        Letter::LowX,
        Letter::CapH,
        Letter::LowH,
        Letter::CapX,
        Letter::LowX,
        Letter::CapH,
        Letter::CapX,
        Letter::LowH,
    ]
    .into_iter()
    .collect();
    c.bench_function("straighten/len-8-twist-3-3", |bch| {
        bch.iter(|| std::hint::black_box(straighten(&word, &params, RewriteStrategy::Leftmost)))
    });
    let deformed = PresentationParams::QAlpha {
        n: 3,
        q: zeta(3, 1),
        alpha: CycScalar::from_rational(num_rational::BigRational::from_integer(2.into())),
    };
    c.bench_function("straighten/len-8-deformed-3", |bch| {
        bch.iter(|| std::hint::black_box(straighten(&word, &deformed, RewriteStrategy::Leftmost)))
    });
}

fn bench_products(c: &mut Criterion) {
    for (n, m) in [(2usize, 2usize), (3, 3)] {
        let pair = family_sigma(n, m, &zeta(n, 1), &zeta(m, 1), &zeta(num_integer::gcd(n, m), 1))
            .unwrap();
        c.bench_function(&format!("bicrossed-product/dim-{}", n * n * m * m), |bch| {
            bch.iter(|| std::hint::black_box(bicrossed_product(&pair).unwrap()))
        });
        let params = sigma_params(n, m);
        c.bench_function(&format!("presentation/dim-{}", n * n * m * m), |bch| {
            bch.iter(|| std::hint::black_box(presentation(&params).unwrap()))
        });
    }
}

fn bench_verify(c: &mut Criterion) {
    let taft = taft_structure(&TaftDescriptor::new(3, zeta(3, 1)).unwrap()).unwrap();
    c.bench_function("verify-hopf/taft-dim-9", |bch| {
        bch.iter(|| std::hint::black_box(verify_hopf(&taft)))
    });
    let product = presentation(&sigma_params(2, 2)).unwrap();
    c.bench_function("verify-hopf/product-dim-16", |bch| {
        bch.iter(|| std::hint::black_box(verify_hopf(&product)))
    });
}

fn bench_classify(c: &mut Criterion) {
    let minus_one = zeta(2, 1);
    c.bench_function("classify/2-2", |bch| {
        bch.iter(|| std::hint::black_box(classify(2, 2, &minus_one, &minus_one).unwrap()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_cyclotomic, bench_straighten, bench_products, bench_verify, bench_classify
}
criterion_main!(benches);
