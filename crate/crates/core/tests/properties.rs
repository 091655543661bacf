//! Property tests: randomized field axioms, closed-form consistency of
//! the action tables, ansatz falsification under random perturbations,
//! straightening confluence, Hopf-map laws on random elements, and the
//! isomorphism pattern of the diagonal family across parameter grids.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bicrossed_core::cyclotomic::{
    cyclotomic_polynomial, multiplicative_order, root_of_unity, roots_of_unity_group, CycScalar,
    Rational,
};
use bicrossed_core::hopf::{sp_normalize, tensor_normalize, HopfStructure, SparseTensor, SparseVec};
use bicrossed_core::matched_pair::{
    act_left, ansatz_residuals, enumerate_matched_pairs, family_alpha, verify_matched_pair,
    AnsatzParams,
};
use bicrossed_core::morphism::{iso_search, Instance, IsoOutcome};
use bicrossed_core::taft::TaftElement;
use bicrossed_core::{presentation, straighten, Letter, PresentationParams, RewriteStrategy};

fn rat(num: i64, den: i64) -> CycScalar {
    CycScalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn zeta(l: usize, k: i64) -> CycScalar {
    root_of_unity(l, k).unwrap()
}

/// A random element of `Q(zeta_order)` as a sum of rational multiples of
/// root powers.
fn scalar_from_parts(order: usize, parts: &[(i64, u8, u8)]) -> CycScalar {
    let mut acc = CycScalar::zero(order);
    for (num, den, exp) in parts {
        let term = rat(*num, i64::from(*den))
            .mul(&zeta(order, i64::from(*exp) % order as i64));
        acc = acc.add(&term);
    }
    acc
}

fn scalar_strategy() -> impl Strategy<Value = CycScalar> {
    (
        prop::sample::select(vec![1usize, 2, 3, 4, 6, 8, 12]),
        prop::collection::vec((-9i64..=9, 1u8..=4, 0u8..=11), 1..4),
    )
        .prop_map(|(order, parts)| scalar_from_parts(order, &parts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_field_axioms_hold_on_random_triples(
        a in scalar_strategy(),
        b in scalar_strategy(),
        c in scalar_strategy(),
    ) {
        // Associativity and commutativity on both operations.
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        // Distributivity.
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Inverses.
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn scalar_equality_is_stable_under_common_field_embedding(
        a in scalar_strategy(),
    ) {
        // Multiplying by 1 of a larger order embeds without changing the
        // value; equality must see through the embedding.
        for order in [2usize, 3, 4, 6, 12] {
            let embedded = a.mul(&CycScalar::one(order));
            prop_assert_eq!(&embedded, &a);
            prop_assert_eq!(embedded.sub(&a).is_zero(), true);
        }
    }
}

#[test]
fn roots_of_unity_satisfy_power_and_order_identities() {
    for l in 1..=24usize {
        for k in 0..l {
            let z = zeta(l, k as i64);
            assert!(z.pow(l as i64).unwrap().is_one(), "zeta_{l}^{k} failed");
        }
        let primitive = zeta(l, 1);
        assert_eq!(multiplicative_order(&primitive).unwrap(), Some(l));
    }
}

#[test]
fn cyclotomic_polynomials_annihilate_their_primitive_roots() {
    for n in 1..=24usize {
        let coeffs = cyclotomic_polynomial(n);
        let z = zeta(n, 1);
        let mut acc = CycScalar::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let c = CycScalar::from_rational(Rational::from_integer(c.clone()));
            acc = acc.add(&c.mul(&z.pow(i as i64).unwrap()));
        }
        assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
    }
}

#[test]
fn geometric_sums_over_a_full_period_vanish() {
    // 1 + q + ... + q^{n-1} = 0 for every primitive n-th root q; this is
    // what closes the nilpotency of the deformed action: the closed form
    // for x |> X^t carries the factor s_t, and s_n = 0.
    for n in 2..=8usize {
        for j in 1..n {
            if num_integer::gcd(j, n) != 1 {
                continue;
            }
            let q = zeta(n, j as i64);
            let mut acc = CycScalar::zero(n);
            let mut pow = CycScalar::one(n);
            for _ in 0..n {
                acc = acc.add(&pow);
                pow = pow.mul(&q);
            }
            assert!(acc.is_zero(), "geometric sum for n={n}, j={j}");
        }
    }
}

#[test]
fn deformed_left_action_matches_its_closed_form() {
    // x |> X^t = alpha (1 + q + ... + q^{t-1}) (X^{t-1} - H X^{t-1}).
    for n in [2usize, 3, 4] {
        let q = zeta(n, 1);
        for alpha in [rat(1, 1), rat(-1, 1), rat(2, 1)] {
            let mp = family_alpha(n, &q, &alpha).unwrap();
            let a_desc = mp.a_descriptor().clone();
            let h_desc = mp.h_descriptor().clone();
            let x = TaftElement::gen_x(&h_desc);
            for t in 1..n {
                let x_pow = TaftElement::monomial(&a_desc, 0, t, CycScalar::one(1)).unwrap();
                let got = act_left(&mp, &x, &x_pow).unwrap();
                let mut s_t = CycScalar::zero(1);
                let mut pow = CycScalar::one(1);
                for _ in 0..t {
                    s_t = s_t.add(&pow);
                    pow = pow.mul(&q);
                }
                let lead = TaftElement::monomial(&a_desc, 0, t - 1, CycScalar::one(1)).unwrap();
                let twisted = TaftElement::monomial(&a_desc, 1, t - 1, CycScalar::one(1)).unwrap();
                let expected = lead.sub(&twisted).unwrap().scale(&alpha.mul(&s_t));
                assert_eq!(
                    got.to_sparse(),
                    expected.to_sparse(),
                    "closed form failed at n={n}, t={t}"
                );
            }
        }
    }
}

#[test]
fn enumerated_matched_pairs_verify_and_count_correctly() {
    let alpha_samples = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2)];
    for (n, m) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let qbar = zeta(n, 1);
        let q = zeta(m, 1);
        let d = num_integer::gcd(n, m);
        let pairs = enumerate_matched_pairs(n, m, &qbar, &q, &alpha_samples).unwrap();
        let expect_alpha = m == n && qbar == q.pow(n as i64 - 1).unwrap();
        let expected_len = if expect_alpha {
            d + alpha_samples.len()
        } else {
            d
        };
        assert_eq!(pairs.len(), expected_len, "count at ({n},{m})");
        for mp in &pairs {
            let report = verify_matched_pair(mp).unwrap();
            assert!(
                report.pass(),
                "matched pair failed at ({n},{m}): {:?}",
                report.failed_axioms()
            );
        }
    }
}

#[test]
fn random_single_coordinate_perturbations_break_the_ansatz() {
    let mut rng = StdRng::seed_from_u64(0x0ff_fa1_5e);
    let deltas = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(3, 1), rat(1, 2), rat(-5, 1)];
    let mut bases: Vec<AnsatzParams> = Vec::new();
    for (n, m) in [(2usize, 2usize), (3, 3), (2, 4)] {
        let qbar = zeta(n, 1);
        let q = zeta(m, 1);
        let d = num_integer::gcd(n, m);
        for sigma in roots_of_unity_group(d, num_integer::lcm(n, m)).unwrap() {
            bases.push(AnsatzParams::for_sigma(n, m, &qbar, &q, &sigma));
        }
    }
    bases.push(AnsatzParams::for_alpha(3, &zeta(3, 1), &rat(2, 1)));
    bases.push(AnsatzParams::for_alpha(2, &zeta(2, 1), &rat(-1, 1)));

    for base in &bases {
        // The family points themselves have all residuals zero.
        assert!(
            ansatz_residuals(base).iter().all(|(_, r)| r.is_zero()),
            "family point has nonzero residual"
        );
        for _ in 0..12 {
            let mut p = base.clone();
            let delta = &deltas[rng.gen_range(0..deltas.len())];
            let coord = rng.gen_range(0..7);
            let slot = match coord {
                0 => &mut p.a,
                1 => &mut p.b,
                2 => &mut p.alpha,
                3 => &mut p.beta,
                4 => &mut p.gamma,
                5 => &mut p.sigma,
                _ => &mut p.mu,
            };
            *slot = slot.add(delta);
            let nonzero = ansatz_residuals(&p).iter().any(|(_, r)| !r.is_zero());
            assert!(
                nonzero,
                "perturbing coordinate {coord} by {delta} left all residuals zero"
            );
        }
    }
}

fn random_word(rng: &mut StdRng, len: usize) -> Vec<Letter> {
    let letters = [Letter::CapH, Letter::CapX, Letter::LowH, Letter::LowX];
    (0..len).map(|_| letters[rng.gen_range(0..4)]).collect()
}

#[test]
fn straightening_is_confluent_on_two_hundred_random_words() {
    let mut rng = StdRng::seed_from_u64(0xc0_ffee);
    let sigma_params = PresentationParams::TSigma {
        n: 3,
        m: 3,
        qbar: zeta(3, 2),
        q: zeta(3, 1),
        sigma: zeta(3, 1),
    };
    let alpha_params = PresentationParams::QAlpha {
        n: 3,
        q: zeta(3, 1),
        alpha: rat(2, 1),
    };
    for i in 0..200 {
        let params = if i % 2 == 0 { &sigma_params } else { &alpha_params };
        let len = rng.gen_range(0..=8);
        let word = random_word(&mut rng, len);
        let left = straighten(&word, params, RewriteStrategy::Leftmost).unwrap();
        let right = straighten(&word, params, RewriteStrategy::Rightmost).unwrap();
        assert_eq!(left, right, "strategies diverged on word {word:?}");
    }
}

fn random_element(rng: &mut StdRng, dim: usize, order: usize) -> SparseVec {
    let terms = rng.gen_range(1..=4);
    let mut v: SparseVec = Vec::new();
    for _ in 0..terms {
        let idx = rng.gen_range(0..dim);
        let num = rng.gen_range(-5i64..=5);
        let den = rng.gen_range(1i64..=3);
        let exp = rng.gen_range(0..order as i64);
        v.push((idx, rat(num, den).mul(&zeta(order, exp))));
    }
    sp_normalize(v)
}

fn tensor_mul(hs: &HopfStructure, a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
    let mut acc: SparseTensor = Vec::new();
    for (a1, a2, ca) in a {
        for (b1, b2, cb) in b {
            let c = ca.mul(cb);
            for (l, cl) in hs.product(*a1, *b1) {
                let cc = c.mul(cl);
                for (r, cr) in hs.product(*a2, *b2) {
                    acc.push((*l, *r, cc.mul(cr)));
                }
            }
        }
    }
    tensor_normalize(acc)
}

#[test]
fn hopf_maps_hold_on_random_elements() {
    let structures = vec![
        presentation(&PresentationParams::TSigma {
            n: 2,
            m: 3,
            qbar: zeta(2, 1),
            q: zeta(3, 1),
            sigma: CycScalar::one(1),
        })
        .unwrap(),
        presentation(&PresentationParams::QAlpha {
            n: 3,
            q: zeta(3, 1),
            alpha: rat(2, 1),
        })
        .unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(0xd1ce);
    for hs in &structures {
        let order = hs.scalar_order();
        for _ in 0..25 {
            let a = random_element(&mut rng, hs.dim(), order);
            let b = random_element(&mut rng, hs.dim(), order);
            let ab = hs.mul_elems(&a, &b);

            // Counit is an algebra map.
            let eps = hs.counit_elem(&ab);
            let expected = hs.counit_elem(&a).mul(&hs.counit_elem(&b));
            assert!(eps.sub(&expected).is_zero(), "counit not multiplicative");

            // Comultiplication is an algebra map.
            let lhs = hs.comult_elem(&ab);
            let rhs = tensor_mul(hs, &hs.comult_elem(&a), &hs.comult_elem(&b));
            let mut diff = lhs;
            diff.extend(rhs.into_iter().map(|(l, r, c)| (l, r, c.neg())));
            assert!(
                tensor_normalize(diff).is_empty(),
                "comultiplication not multiplicative"
            );

            // Antipode convolution identity: m (S (x) id) Delta = eps 1.
            let mut conv: SparseVec = Vec::new();
            for (l, r, c) in hs.comult_elem(&a) {
                let s_l = hs.antipode_elem(&vec![(l, CycScalar::one(order))]);
                for (t, ct) in hs.mul_elems(&s_l, &vec![(r, CycScalar::one(order))]) {
                    conv.push((t, c.mul(&ct)));
                }
            }
            let eps_a = hs.counit_elem(&a);
            conv.extend(hs.unit().iter().map(|(t, c)| (*t, c.mul(&eps_a).neg())));
            assert!(sp_normalize(conv).is_empty(), "antipode convolution failed");
        }
    }
}

fn sigma_instance(n: usize, m: usize, qbar: &CycScalar, q: &CycScalar, sigma: &CycScalar) -> Instance {
    Instance::new(&PresentationParams::TSigma {
        n,
        m,
        qbar: qbar.clone(),
        q: q.clone(),
        sigma: sigma.clone(),
    })
    .unwrap()
}

#[test]
fn iso_search_pattern_on_distinct_factor_instances() {
    // With distinct factors (or equal factors with distinct parameters),
    // a witness exists exactly when the twist parameters agree.
    let cases: Vec<(usize, usize, CycScalar, CycScalar)> = vec![
        (2, 4, zeta(2, 1), zeta(4, 1)),
        (2, 3, zeta(2, 1), zeta(3, 1)),
        (3, 3, zeta(3, 2), zeta(3, 1)),
    ];
    for (n, m, qbar, q) in cases {
        let d = num_integer::gcd(n, m);
        let order = num_integer::lcm(n, m);
        let sigmas = roots_of_unity_group(d, order).unwrap();
        let instances: Vec<Instance> = sigmas
            .iter()
            .map(|s| sigma_instance(n, m, &qbar, &q, s))
            .collect();
        for (i, src) in instances.iter().enumerate() {
            for (j, tgt) in instances.iter().enumerate() {
                let found =
                    matches!(iso_search(src, tgt).unwrap(), IsoOutcome::Witness { .. });
                assert_eq!(
                    found,
                    i == j,
                    "unexpected iso outcome at ({n},{m}) sigma index {i} -> {j}"
                );
            }
        }
    }
}

#[test]
fn iso_search_pattern_when_factors_coincide() {
    // With equal factors on equal parameters, a witness exists exactly
    // for matching or mutually inverse twists.
    for n in [2usize, 3, 4] {
        let q = zeta(n, 1);
        let sigmas = roots_of_unity_group(n, n).unwrap();
        let instances: Vec<Instance> = sigmas
            .iter()
            .map(|s| sigma_instance(n, n, &q, &q, s))
            .collect();
        for (i, src) in instances.iter().enumerate() {
            for (j, tgt) in instances.iter().enumerate() {
                let expect = sigmas[i] == sigmas[j]
                    || sigmas[i].mul(&sigmas[j]).is_one();
                let found =
                    matches!(iso_search(src, tgt).unwrap(), IsoOutcome::Witness { .. });
                assert_eq!(
                    found,
                    expect,
                    "unexpected iso outcome at n={n} sigma index {i} -> {j}"
                );
            }
        }
    }
}
