use ktdmoea::stats::{friedman_test, wilcoxon_rank_sum, Direction, ObservationMatrix};
use ktdmoea::RandomSource;
use proptest::prelude::*;

#[derive(serde::Deserialize)]
struct Case {
    a: Vec<f64>,
    b: Vec<f64>,
    p: f64,
}

#[test]
fn rank_sum_matches_scipy() {
    let raw = include_str!("fixtures/wilcoxon_scipy.json");
    let cases: Vec<Case> = serde_json::from_str(raw).unwrap();
    assert_eq!(cases.len(), 100);
    for (i, c) in cases.iter().enumerate() {
        let p = wilcoxon_rank_sum(&c.a, &c.b, 0.05).unwrap().p_value;
        assert!((p - c.p).abs() < 1e-6, "case {i}: {p} vs {}", c.p);
    }
}

fn random_matrix(rng: &mut RandomSource, n: usize, k: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..k).map(|_| (rng.unit() * 5.0).round()).collect())
        .collect()
}

proptest! {
    #[test]
    fn row_ranks_sum_to_triangular_number(seed in any::<u64>(), n in 2usize..20, k in 2usize..8) {
        let mut rng = RandomSource::new(seed);
        let m = ObservationMatrix::new(random_matrix(&mut rng, n, k)).unwrap();
        let r = friedman_test(&m, Direction::LargerBetter).unwrap();
        let total: f64 = r.mean_ranks.iter().sum();
        prop_assert!((total - (k * (k + 1)) as f64 / 2.0).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&r.p_value));
    }

    #[test]
    fn column_permutation_permutes_ranks(seed in any::<u64>(), n in 2usize..15, k in 2usize..7) {
        let mut rng = RandomSource::new(seed);
        let rows = random_matrix(&mut rng, n, k);
        let mut perm: Vec<usize> = (0..k).collect();
        rng.shuffle(&mut perm);
        let permuted: Vec<Vec<f64>> = rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
        let base = friedman_test(&ObservationMatrix::new(rows).unwrap(), Direction::SmallerBetter).unwrap();
        let other = friedman_test(&ObservationMatrix::new(permuted).unwrap(), Direction::SmallerBetter).unwrap();
        for (pos, &j) in perm.iter().enumerate() {
            prop_assert!((other.mean_ranks[pos] - base.mean_ranks[j]).abs() < 1e-12);
        }
        prop_assert!((other.statistic - base.statistic).abs() < 1e-9);
    }

    #[test]
    fn rank_sum_is_symmetric(seed in any::<u64>(), n1 in 1usize..40, n2 in 1usize..40) {
        let mut rng = RandomSource::new(seed);
        let a: Vec<f64> = (0..n1).map(|_| (rng.unit() * 10.0).round()).collect();
        let b: Vec<f64> = (0..n2).map(|_| (rng.unit() * 10.0).round()).collect();
        let ab = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        let ba = wilcoxon_rank_sum(&b, &a, 0.05).unwrap();
        prop_assert!((ab.p_value - ba.p_value).abs() < 1e-12);
        prop_assert!((ab.z + ba.z).abs() < 1e-9);
    }
}
