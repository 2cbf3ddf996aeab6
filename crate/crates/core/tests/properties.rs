//! Cross-module property tests: poset combinatorics on random posets and
//! determinism of the verification reports under different thread counts.

use injcount::poset::Poset;
use injcount::Caps;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Random poset: an upper-triangular relation on indices, transitively
/// closed. Antisymmetry is automatic because the relation only points from
/// smaller to larger index.
fn poset_from_bits(n: usize, bits: &[bool]) -> Poset {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if bits[k % bits.len()] {
                leq[i * n + j] = true;
            }
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i * n + m] && leq[m * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
    Poset::from_leq(n, leq, "random".into()).unwrap()
}

proptest! {
    /// Hall's theorem: μ(0̂, 1̂) of the bounded extension equals the reduced
    /// Euler characteristic of the order complex.
    #[test]
    fn hall_identity(n in 1usize..=9, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let p = poset_from_bits(n, &bits);
        prop_assert_eq!(p.reduced_euler_characteristic(), p.mobius_bounds());
    }

    /// Möbius inversion: g(x) = Σ μ(x,y)·f(y) recovers g from its up-sums f.
    #[test]
    fn mobius_inversion_roundtrip(
        n in 1usize..=8,
        bits in proptest::collection::vec(any::<bool>(), 28),
        g in proptest::collection::vec(-5i64..=5, 8),
    ) {
        let p = poset_from_bits(n, &bits);
        let f: Vec<BigInt> = (0..n)
            .map(|x| (0..n).filter(|&y| p.leq(x, y)).map(|y| BigInt::from(g[y])).sum())
            .collect();
        for x in 0..n {
            let row = p.mobius_row(x);
            let recovered: BigInt = (0..n)
                .filter(|&y| p.leq(x, y))
                .map(|y| row[y].clone() * &f[y])
                .sum();
            prop_assert_eq!(recovered, BigInt::from(g[x]));
        }
    }

    /// μ must not depend on the linear extension used to compute it.
    #[test]
    fn mobius_extension_independent(n in 1usize..=8, bits in proptest::collection::vec(any::<bool>(), 28)) {
        let p = poset_from_bits(n, &bits);
        // a different valid extension: stable sort by size of down-set with
        // reversed index tie-breaking
        let mut alt: Vec<usize> = (0..n).collect();
        alt.sort_by_key(|&x| {
            let below = (0..n).filter(|&z| p.leq(z, x)).count();
            (below, std::cmp::Reverse(x))
        });
        for x in 0..n {
            prop_assert_eq!(&*p.mobius_row(x), &p.mobius_row_with_topo(x, &alt));
        }
    }

    /// θ(x) = −χ̃ of the open interval above x, on arbitrary posets.
    #[test]
    fn theta_is_euler_characteristic_above(n in 1usize..=8, bits in proptest::collection::vec(any::<bool>(), 28)) {
        let p = poset_from_bits(n, &bits);
        for x in 0..n {
            let above = p.filter(|y| y != x && p.leq(x, y), "above".into());
            prop_assert_eq!(p.theta(x), -above.reduced_euler_characteristic());
        }
    }
}

/// Reports must be byte-identical regardless of the rayon worker count.
#[test]
fn reports_independent_of_parallelism() {
    let caps = Caps::default();
    let g = injcount::constructions::standard("symmetric", &[4]).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| {
            let a = injcount::injectors::verify_thm_a(&g, &caps).unwrap();
            let b = injcount::carter::property_star_check(&g, &caps).unwrap();
            let c = injcount::carter::question_congruence_scan(&g, &caps).unwrap();
            (
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap(),
                serde_json::to_string(&c).unwrap(),
            )
        });
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap()
        .install(|| {
            let a = injcount::injectors::verify_thm_a(&g, &caps).unwrap();
            let b = injcount::carter::property_star_check(&g, &caps).unwrap();
            let c = injcount::carter::question_congruence_scan(&g, &caps).unwrap();
            (
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap(),
                serde_json::to_string(&c).unwrap(),
            )
        });
    assert_eq!(serial, parallel);
}

/// Möbius memoization must agree with a fresh poset computing from scratch.
#[test]
fn memoized_rows_match_fresh_computation() {
    let g = injcount::constructions::standard("symmetric", &[4]).unwrap();
    let lat = injcount::lattice::all_subgroups(&g, &Caps::default()).unwrap();
    let p1 = Poset::from_subgroups(lat.subgroups.clone(), "a".into());
    let p2 = Poset::from_subgroups(lat.subgroups.clone(), "b".into());
    for x in 0..p1.len() {
        assert_eq!(p1.theta(x), p2.theta(x));
        // second call hits the memo
        assert_eq!(p1.theta(x), p2.theta(x));
    }
}
