use implab_core::auctions::{
    check_abstract_dominance, check_efficiency, check_weak_dominance, max_classical, max_constructive, run_spa,
    soundness_sweep, AuctionRule, BidGrid, Bids, Valuations, Value,
};
use implab_core::Budget;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Value {
    Value::from_integer(n)
}

/// Integer brute force over a first-price auction with lowest-index tie-breaking:
/// first (bidder, opponents' bids, deviation) where shading beats truth.
fn first_price_oracle(v: &[i64], grid: &[i64]) -> Option<(usize, Vec<i64>, i64)> {
    let n = v.len();
    let payoff = |i: usize, bids: &[i64]| {
        let top = *bids.iter().max().unwrap();
        let winner = bids.iter().position(|&b| b == top).unwrap();
        if winner == i {
            v[i] - bids[i]
        } else {
            0
        }
    };
    for (i, &vi) in v.iter().enumerate() {
        let mut devs = grid.to_vec();
        if !devs.contains(&vi) {
            devs.push(vi);
            devs.sort();
        }
        for k in 0..grid.len().pow(n as u32 - 1) {
            let mut others = Vec::new();
            let mut c = k;
            for _ in 0..n - 1 {
                others.push(grid[c % grid.len()]);
                c /= grid.len();
            }
            others.reverse();
            let with = |b: i64| {
                let mut x = others.clone();
                x.insert(i, b);
                x
            };
            let truthful = payoff(i, &with(vi));
            if let Some(&d) = devs.iter().find(|&&d| payoff(i, &with(d)) > truthful) {
                return Some((i, others, d));
            }
        }
    }
    None
}

#[test]
fn first_price_counterexample_matches_oracle() {
    let budget = Budget::default();
    for (v, grid) in [
        (vec![2, 2], vec![0, 1, 2]),
        (vec![3, 1, 2], vec![0, 1, 2, 3, 4]),
        (vec![4, 1], vec![1, 3]),
    ] {
        let expected = first_price_oracle(&v, &grid).unwrap();
        let vals = Valuations::new(v.iter().map(|&x| q(x)).collect()).unwrap();
        let g = BidGrid::new(grid.iter().map(|&x| q(x)).collect()).unwrap();
        let ce = check_weak_dominance(AuctionRule::FirstPrice, &vals, &g, &budget)
            .unwrap()
            .counterexample
            .unwrap();
        assert_eq!(ce.bidder, expected.0);
        assert_eq!(ce.others, expected.1.iter().map(|&x| q(x)).collect::<Vec<_>>());
        assert_eq!(ce.deviation, q(expected.2));
    }
}

#[test]
fn first_price_fails_under_abstraction() {
    for n in 2..=4 {
        let r = check_abstract_dominance(AuctionRule::FirstPrice, n, q(10), q(1), &Budget::default()).unwrap();
        assert!(!r.holds(), "n={n}");
    }
}

#[test]
fn max_definitions_agree_on_seeded_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=40);
        let xs: Vec<Value> = (0..len)
            .map(|_| Value::new(rng.gen_range(-50..=50), rng.gen_range(1..=6)))
            .collect();
        let c = max_classical(&xs).unwrap();
        let k = max_constructive(&xs).unwrap();
        assert_eq!(c.value, k);
        assert_eq!(xs[c.index], c.value);
        assert!(xs.iter().all(|&x| x <= k));
    }
}

fn small_rational() -> impl Strategy<Value = Value> {
    (0i64..=12, 1i64..=3).prop_map(|(n, d)| Value::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn second_price_is_weakly_dominant(
        v in prop::collection::vec(small_rational(), 2..=3),
        mut grid in prop::collection::vec(small_rational(), 1..=5),
    ) {
        grid.sort();
        grid.dedup();
        let r = check_weak_dominance(
            AuctionRule::SecondPrice,
            &Valuations::new(v).unwrap(),
            &BidGrid::new(grid).unwrap(),
            &Budget::default(),
        ).unwrap();
        prop_assert!(r.holds(), "{}", r.counterexample.unwrap());
        prop_assert!(r.truthful_nonnegative);
        prop_assert_eq!(r.cases.win_win_unequal, 0);
        prop_assert_eq!(r.cases.lose_lose_nonzero, 0);
    }

    #[test]
    fn spa_outcomes_are_sound_and_efficient(b in prop::collection::vec(small_rational(), 1..=6)) {
        let bids = Bids::new(b.clone()).unwrap();
        let out = run_spa(&bids);
        prop_assert!(out.violations(b.len()).is_empty());
        let w = out.winner().unwrap();
        prop_assert_eq!(b[w], *b.iter().max().unwrap());
        prop_assert!(out.payments[w] <= b[w]);
        prop_assert!(check_efficiency(AuctionRule::SecondPrice, &Valuations::new(b).unwrap()).holds());
    }
}

#[test]
fn soundness_sweeps_are_clean() {
    let budget = Budget::default();
    for (n, grid) in [(1, "0:3:1"), (2, "0:2:1/2"), (3, "0:4:1"), (4, "0,1,2")] {
        let grid = BidGrid::parse(grid, &budget).unwrap();
        for rule in [AuctionRule::SecondPrice, AuctionRule::FirstPrice] {
            let s = soundness_sweep(rule, n, &grid, &budget).unwrap();
            assert!(s.sound(), "{rule} n={n}");
            assert_eq!(s.inputs, (grid.len() as u64).pow(n as u32));
        }
    }
}
