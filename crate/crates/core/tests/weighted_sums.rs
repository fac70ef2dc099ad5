use compmonoid_core::compositions::weighted_sums;
use compmonoid_core::{
    enumerate_compositions, make_weight, weighted_sum, Composition, PartPredicate,
    PartWeightFunction, TruncatedSeries,
};
use num_bigint::BigInt;

fn registered() -> Vec<PartWeightFunction> {
    let mut out: Vec<PartWeightFunction> = [
        "part",
        "pow2_minus_one",
        "two_pow_ones",
        "part_minus_one",
        "fib_minus_one",
        "three_four",
        "half_power",
    ]
    .iter()
    .map(|n| make_weight(n, &[]).unwrap())
    .collect();
    for m in 1..=5 {
        out.push(make_weight("floor", &[m]).unwrap());
    }
    out.push(PartWeightFunction::Indicator(PartPredicate::Any));
    out.push(PartWeightFunction::Indicator(PartPredicate::set([1, 2])));
    out.push(PartWeightFunction::Indicator(PartPredicate::odd()));
    out.push(PartWeightFunction::Indicator(PartPredicate::AtLeast(2)));
    out.push(PartWeightFunction::Indicator(PartPredicate::Progression {
        start: 2,
        step: 3,
    }));
    out
}

/// Sums of products over every composition of each weight up to `n`, by
/// walking all compositions depth first. Parts on which every weighting
/// vanishes are not descended into.
fn brute_force<const K: usize>(n: usize, u: &[[u64; K]]) -> Vec<[u64; K]> {
    fn walk<const K: usize>(
        n: usize,
        weight: usize,
        prod: [u64; K],
        u: &[[u64; K]],
        sums: &mut [[u64; K]],
    ) {
        for k in 0..K {
            sums[weight][k] += prod[k];
        }
        // The child reaching weight n has no children of its own.
        if weight < n {
            let last = n - weight;
            for k in 0..K {
                sums[n][k] += prod[k] * u[last][k];
            }
        }
        for a in 1..n - weight {
            if u[a].iter().all(|&x| x == 0) {
                continue;
            }
            let mut next = prod;
            for k in 0..K {
                next[k] *= u[a][k];
            }
            walk(n, weight + a, next, u, sums);
        }
    }
    let mut sums = vec![[0u64; K]; n + 1];
    walk(n, 0, [1; K], u, &mut sums);
    sums
}

fn check_brute<const K: usize>(weights: &[PartWeightFunction], n: usize) {
    assert_eq!(weights.len(), K);
    let u: Vec<[u64; K]> = (0..=n)
        .map(|a| {
            let mut row = [0u64; K];
            if a > 0 {
                for (k, w) in weights.iter().enumerate() {
                    row[k] = u64::try_from(w.value(a as u32)).unwrap();
                }
            }
            row
        })
        .collect();
    let sums = brute_force(n, &u);
    for (k, w) in weights.iter().enumerate() {
        let dp = weighted_sums(n as u32, w);
        for i in 0..=n {
            assert_eq!(dp[i], BigInt::from(sums[i][k]), "{} n={i}", w.label());
        }
    }
}

#[test]
fn dp_matches_brute_force_sparse_weights() {
    // Weightings vanishing on part 1 only reach a few compositions.
    let sparse: Vec<_> = registered()
        .into_iter()
        .filter(|w| w.value(1) == BigInt::from(0))
        .collect();
    check_brute::<10>(&sparse, 30);
}

#[test]
fn dp_matches_brute_force_dense_weights() {
    let dense: Vec<_> = registered()
        .into_iter()
        .filter(|w| w.value(1) != BigInt::from(0))
        .collect();
    check_brute::<7>(&dense, 30);
}

#[test]
fn dp_matches_library_enumeration() {
    for w in registered() {
        for n in 0..=14u32 {
            let brute: BigInt = enumerate_compositions(n, &PartPredicate::Any)
                .map(|c| c.parts().iter().map(|&a| w.value(a)).product::<BigInt>())
                .sum();
            assert_eq!(weighted_sum(n, &w), brute, "{} n={n}", w.label());
        }
    }
}

#[test]
fn dp_matches_inverse_series() {
    let n = 60;
    for w in registered() {
        let mut u = vec![BigInt::from(0)];
        u.extend(w.values(n as u32));
        let g = TruncatedSeries::new(u).geometric_inverse().unwrap();
        assert_eq!(weighted_sums(n as u32, &w), g.coeffs(), "{}", w.label());
    }
}

#[test]
fn powers_of_two() {
    let all = PartWeightFunction::Indicator(PartPredicate::Any);
    let minus_one = make_weight("part_minus_one", &[]).unwrap();
    let fib_minus_one = make_weight("fib_minus_one", &[]).unwrap();
    for n in 1..=20u32 {
        assert_eq!(weighted_sum(n, &all), BigInt::from(1u64 << (n - 1)));
        assert_eq!(
            enumerate_compositions(n, &PartPredicate::Any).count(),
            1 << (n - 1)
        );
        if n >= 2 {
            assert_eq!(weighted_sum(n, &minus_one), BigInt::from(1u64 << (n - 2)));
        }
        if n >= 3 {
            assert_eq!(
                weighted_sum(n, &fib_minus_one),
                BigInt::from(1u64 << (n - 3))
            );
        }
    }
}

#[test]
fn spot_values() {
    let part = make_weight("part", &[]).unwrap();
    assert_eq!(weighted_sum(3, &part), BigInt::from(8));
    assert_eq!(
        weighted_sum(3, &make_weight("pow2_minus_one", &[]).unwrap()),
        BigInt::from(3)
    );
    assert_eq!(
        weighted_sum(2, &make_weight("two_pow_ones", &[]).unwrap()),
        BigInt::from(5)
    );
    assert_eq!(weighted_sum(0, &part), BigInt::from(1));
    let floor2: Vec<i64> = make_weight("floor", &[2])
        .unwrap()
        .values(7)
        .iter()
        .map(|v| i64::try_from(v).unwrap())
        .collect();
    assert_eq!(floor2, [0, 0, 1, 1, 2, 2, 3]);
    let fm: Vec<i64> = make_weight("fib_minus_one", &[])
        .unwrap()
        .values(6)
        .iter()
        .map(|v| i64::try_from(v).unwrap())
        .collect();
    assert_eq!(fm, [0, 0, 1, 2, 4, 7]);
    assert!(make_weight("nope", &[]).is_err());
}

#[test]
fn enumeration_order_and_counts() {
    let list: Vec<String> = enumerate_compositions(4, &PartPredicate::set([1, 2]))
        .map(|c| c.to_string())
        .collect();
    assert_eq!(
        list,
        ["(1,1,1,1)", "(1,1,2)", "(1,2,1)", "(2,1,1)", "(2,2)"]
    );
    let odd: Vec<String> = enumerate_compositions(4, &PartPredicate::odd())
        .map(|c| c.to_string())
        .collect();
    assert_eq!(odd, ["(1,1,1,1)", "(1,3)", "(3,1)"]);
    let empty: Vec<Composition> = enumerate_compositions(0, &PartPredicate::AtLeast(5)).collect();
    assert_eq!(empty, [Composition::empty()]);
    for n in 1..=20u32 {
        let count = enumerate_compositions(n, &PartPredicate::set([1, 2])).count();
        assert_eq!(
            BigInt::from(count),
            compmonoid_core::fibonacci(n as usize + 1)
        );
    }
}
