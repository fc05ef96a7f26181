use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use diho::dihomology::{ha1, path_dimension_matrix, QuotientMode};
use diho::exactalg::snf::integer_kernel;
use diho::exactalg::{smith_normal_form, IntMatrix};
use diho::precubical::{grid_complex, PathWord, PrecubicalSet};

/// A grid of at most 3×3 points with an arbitrary subset of squares filled.
fn grid() -> impl Strategy<Value = PrecubicalSet> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(r, c)| {
            let cells = (r - 1) * (c - 1);
            (Just((r, c)), proptest::collection::vec(any::<bool>(), cells))
        })
        .prop_map(|((r, c), mask)| {
            let filled: Vec<(usize, usize)> = (0..r.saturating_sub(1))
                .flat_map(|i| (0..c.saturating_sub(1)).map(move |j| (i, j)))
                .zip(mask)
                .filter_map(|(p, on)| on.then_some(p))
                .collect();
            grid_complex(r, c, &filled).unwrap()
        })
}

fn end<'a>(c: &'a PrecubicalSet, p: &'a PathWord) -> &'a str {
    p.edges.last().map_or(p.start.as_str(), |e| c.target(e).unwrap())
}

fn det3(m: &[Vec<i64>]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modes_are_ordered(c in grid()) {
        let paths = path_dimension_matrix(&c, None).unwrap();
        let m = |mode| ha1(&c, mode, None).unwrap().dimension_matrix();
        let (ideal, image, local) = (m(QuotientMode::Ideal), m(QuotientMode::Image), m(QuotientMode::Local));
        for s in &paths.order {
            for t in &paths.order {
                prop_assert!(ideal.rank(s, t) <= image.rank(s, t));
                prop_assert!(image.rank(s, t) <= local.rank(s, t));
                prop_assert!(local.rank(s, t) <= paths.rank(s, t));
                prop_assert_eq!(ideal.rank(s, t) == 0, paths.rank(s, t) == 0);
            }
        }
    }

    #[test]
    fn ideal_relations_are_two_sided(c in grid()) {
        let h = ha1(&c, QuotientMode::Ideal, None).unwrap();
        prop_assert!(h.relations().is_two_sided(h.base().algebra()));
    }

    #[test]
    fn class_equality_is_a_congruence(c in grid()) {
        let h = ha1(&c, QuotientMode::Ideal, None).unwrap();
        let paths = h.base().paths().to_vec();
        for p in &paths {
            for q in &paths {
                if p.start != q.start || end(&c, p) != end(&c, q) || !h.class_equal(p, q).unwrap() {
                    continue;
                }
                for e in c.edges().iter().filter(|e| c.target(e) == Some(p.start.as_str())) {
                    let pre = |w: &PathWord| {
                        let mut edges = vec![e.clone()];
                        edges.extend(w.edges.iter().cloned());
                        PathWord { start: c.source(e).unwrap().to_string(), edges }
                    };
                    prop_assert!(h.class_equal(&pre(p), &pre(q)).unwrap());
                }
            }
        }
    }

    #[test]
    fn json_round_trip(c in grid()) {
        let back = PrecubicalSet::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), c.to_json());
        prop_assert_eq!(
            ha1(&back, QuotientMode::Ideal, None).unwrap().dimension_matrix(),
            ha1(&c, QuotientMode::Ideal, None).unwrap().dimension_matrix()
        );
    }

    #[test]
    fn disjoint_union_is_block_sum(a in grid(), b in grid()) {
        let b = b.prefixed("r");
        let u = a.disjoint_union(&b).unwrap();
        let m = |c: &PrecubicalSet| ha1(c, QuotientMode::Ideal, None).unwrap().dimension_matrix();
        let sum = m(&a).block_sum(&m(&b));
        prop_assert_eq!(m(&u).reordered(&sum.order).unwrap(), sum);
    }

    #[test]
    fn vertex_permutation_conjugates(c in grid(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = c.vertices().to_vec();
        shuffled.shuffle(&mut rng);
        let map: HashMap<String, String> = c.vertices().iter().cloned().zip(shuffled).collect();
        let r = c.relabel(&map);
        for mode in QuotientMode::ALL {
            let m = ha1(&c, mode, None).unwrap().dimension_matrix();
            let m2 = ha1(&r, mode, None).unwrap().dimension_matrix();
            let order: Vec<String> = m.order.iter().map(|v| map[v].clone()).collect();
            prop_assert_eq!(m2.reordered(&order).unwrap().entries, m.entries);
        }
    }

    #[test]
    fn snf_matches_determinant(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 3)) {
        let a = IntMatrix::from_i64(&rows);
        let r = smith_normal_form(&a);
        let det = det3(&rows);
        prop_assert_eq!(r.rank == 3, det != 0);
        if det != 0 {
            let prod: BigInt = r.invariant_factors.iter().map(|f| BigInt::from(f.clone())).product();
            prop_assert_eq!(prod, BigInt::from(det).abs());
        }
    }

    #[test]
    fn integer_kernel_is_annihilated(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 1..4)) {
        let a = IntMatrix::from_i64(&rows);
        let ker = integer_kernel(&a);
        prop_assert_eq!(ker.len(), 4 - smith_normal_form(&a).rank);
        for k in &ker {
            let v: Vec<BigInt> = (0..4).map(|j| k.get(&j).cloned().unwrap_or_default()).collect();
            prop_assert!(a.mul_vec(&v).iter().all(|x| *x == BigInt::from(0)));
        }
    }
}
