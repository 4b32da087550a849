use std::collections::BTreeMap;

use loghodge::exactalg::{rat, Scalar};
use loghodge::filtration::{
    verify_weight_axioms, weight_filtration, weight_filtration_recursive, NilpotentEndo,
};
use loghodge::random;
use loghodge::Matrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn nilpotent(seed: u64, gaussian: bool) -> NilpotentEndo {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    NilpotentEndo::new(random::nilpotent(&mut rng, 6, gaussian)).unwrap()
}

/// `dim gr_k` from the Jordan type read off the ranks of powers: a block of
/// size `m` contributes one dimension to each of `gr_{m-1}, gr_{m-3}, ..., gr_{1-m}`.
fn graded_from_ranks(n: &Matrix) -> BTreeMap<i64, usize> {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut p = Matrix::identity(dim);
    for _ in 0..=dim {
        p = p.mul(n);
        ranks.push(p.rank());
    }
    let mut out = BTreeMap::new();
    for m in 1..=dim {
        let at_least = |j: usize| ranks[j - 1] - ranks[j];
        let exactly = at_least(m) - at_least(m + 1);
        if exactly > 0 {
            for i in 0..m as i64 {
                *out.entry(m as i64 - 1 - 2 * i).or_insert(0) += exactly;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn axioms_and_two_algorithms(seed in any::<u64>(), gaussian in any::<bool>()) {
        let n = nilpotent(seed, gaussian);
        let w = weight_filtration(&n).unwrap();
        verify_weight_axioms(&n, &w).unwrap();
        prop_assert_eq!(w, weight_filtration_recursive(&n));
    }

    #[test]
    fn scaling_invariance(seed in any::<u64>(), p in 1i64..50, q in 1i64..50, gaussian in any::<bool>()) {
        let n = nilpotent(seed, gaussian);
        let scaled = n.scale(&Scalar::real(rat(p, q)));
        prop_assert_eq!(weight_filtration(&n).unwrap(), weight_filtration(&scaled).unwrap());
    }

    #[test]
    fn graded_dims_symmetric_and_match_jordan_type(seed in any::<u64>(), gaussian in any::<bool>()) {
        let n = nilpotent(seed, gaussian);
        let dims = weight_filtration(&n).unwrap().graded_dims();
        for (k, d) in &dims {
            prop_assert_eq!(dims.get(&-k), Some(d));
        }
        prop_assert_eq!(dims.values().sum::<usize>(), n.dim());
        prop_assert_eq!(dims, graded_from_ranks(n.matrix()));
    }

    #[test]
    fn rational_weight_filtration_descends(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = NilpotentEndo::new(random::nilpotent(&mut rng, 6, false)).unwrap();
        let w = weight_filtration(&n).unwrap();
        prop_assert!(w.jumps().values().all(|s| s.is_real()));
        prop_assert_eq!(w.rational_part(), w.jumps().clone());
        let p = random::invertible(&mut rng, n.dim(), true);
        let pinv = p.inverse().unwrap();
        let moved = NilpotentEndo::new(p.mul(n.matrix()).mul(&pinv)).unwrap();
        let wm = weight_filtration(&moved).unwrap();
        for (k, s) in wm.jumps() {
            let back = s.image_under(&pinv);
            prop_assert!(back.is_real());
            prop_assert_eq!(back.rational_part(), w.get(*k));
        }
    }
}

#[test]
fn jordan_types_by_hand() {
    let w = weight_filtration(&NilpotentEndo::new(random::jordan(&[3, 1])).unwrap()).unwrap();
    assert_eq!(w.graded_dims(), BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
    let w = weight_filtration(&NilpotentEndo::new(random::jordan(&[2, 2])).unwrap()).unwrap();
    assert_eq!(w.graded_dims(), BTreeMap::from([(-1, 2), (1, 2)]));
}
