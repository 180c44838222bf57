//! Randomized invariants over the public API. Terrains are integer-height
//! chains with unit x-spacing; that family already exercises every
//! predicate branch (grazing, blocking, ties) while keeping shrunken
//! counterexamples readable.

use proptest::prelude::*;
use twoguard_core::{
    brute_extreme, brute_force_optimal, build_witness_set, compute_all_extremes, json,
    left_guarding, minimal_one_sided_oracle, right_guarding, solve, verify_two_sided_continuous,
    visible_interval, GuardSet, OracleTarget, Provenance, Side, Terrain, Verdict, WitnessMode,
    ORACLE_DEFAULT_MAX_N,
};

fn terrain_from_heights(hs: &[i64]) -> Terrain {
    let coords: Vec<(i64, i64)> = hs.iter().enumerate().map(|(i, &h)| (i as i64, h)).collect();
    Terrain::from_ints(&coords)
}

fn heights(max_h: i64, max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=max_h, 3..=max_n)
}

/// Point picker: edge index modulo the edge count, parameter k/16.
fn pick_point(t: &Terrain, sel: u16, k: u8) -> twoguard_core::TerrainPoint {
    let e = sel as usize % t.edges();
    let tt = twoguard_core::rat::rq(k as i64, 16);
    t.point_on_edge(e, &tt).unwrap()
}

proptest! {
    #[test]
    fn order_claim(hs in heights(10, 10), picks in prop::array::uniform4((any::<u16>(), 0..=16u8))) {
        let t = terrain_from_heights(&hs);
        let mut pts: Vec<_> = picks.iter().map(|&(s, k)| pick_point(&t, s, k)).collect();
        pts.sort_by(|a, b| a.x.cmp(&b.x));
        prop_assume!(pts.windows(2).all(|w| w[0].x < w[1].x));
        if t.sees(&pts[0], &pts[2]) && t.sees(&pts[1], &pts[3]) {
            prop_assert!(t.sees(&pts[0], &pts[3]));
        }
    }

    #[test]
    fn visibility_is_symmetric_and_reflection_invariant(
        hs in heights(10, 10),
        a in (any::<u16>(), 0..=16u8),
        b in (any::<u16>(), 0..=16u8),
    ) {
        let t = terrain_from_heights(&hs);
        let p = pick_point(&t, a.0, a.1);
        let q = pick_point(&t, b.0, b.1);
        let forward = t.sees(&p, &q);
        prop_assert_eq!(forward, t.sees(&q, &p));
        let r = t.reflected();
        prop_assert_eq!(forward, r.sees(&t.reflect_point(&p), &t.reflect_point(&q)));
    }

    #[test]
    fn interval_membership_matches_sees(
        hs in heights(10, 10),
        v in any::<u16>(),
        e in any::<u16>(),
        k in 1..=15u8,
    ) {
        let t = terrain_from_heights(&hs);
        let v = v as usize % t.n();
        let e = e as usize % t.edges();
        let tt = twoguard_core::rat::rq(k as i64, 16);
        let p = t.point_on_edge(e, &tt).unwrap();
        let inside = visible_interval(&t, v, e).is_some_and(|iv| iv.contains(&tt));
        prop_assert_eq!(inside, t.sees(&t.vertex_point(v), &p));
    }

    #[test]
    fn paper_witness_count_within_bound(hs in heights(12, 14)) {
        let t = terrain_from_heights(&hs);
        let xs = build_witness_set(&t, WitnessMode::Paper);
        prop_assert!(xs.len() <= 2 * (t.n() - 1));
    }

    #[test]
    fn extremes_match_brute_force(hs in heights(10, 10), dense in any::<bool>()) {
        let t = terrain_from_heights(&hs);
        let mode = if dense { WitnessMode::Dense } else { WitnessMode::Paper };
        let xs = build_witness_set(&t, mode);
        let em = compute_all_extremes(&t, &xs);
        for (i, w) in xs.points.iter().enumerate() {
            let (l, r) = brute_extreme(&t, w);
            prop_assert_eq!(em.left_of_witness(i), l);
            prop_assert_eq!(em.right_of_witness(i), r);
        }
        for j in 0..t.n() {
            let (l, r) = brute_extreme(&t, &t.vertex_point(j));
            prop_assert_eq!(em.left_of_vertex(j), l);
            prop_assert_eq!(em.right_of_vertex(j), r);
        }
        let bound = 2 * em.points.len() as u64;
        prop_assert!(em.tests_left <= bound && em.tests_right <= bound);
    }

    #[test]
    fn solve_is_feasible_and_counters_bounded(hs in heights(10, 12), dense in any::<bool>()) {
        let t = terrain_from_heights(&hs);
        let mode = if dense { WitnessMode::Dense } else { WitnessMode::Paper };
        let r = solve(&t, mode);
        prop_assert!(r.verified);
        prop_assert!(r.guard_set.contains(0));
        prop_assert!(r.guard_set.contains(t.n() - 1));
        prop_assert!(r.left_pass_visits <= r.pass_visit_bound);
        prop_assert!(r.right_pass_visits <= r.pass_visit_bound);
        prop_assert!(r.extremes_tests_left <= r.extremes_test_bound);
        prop_assert!(r.extremes_tests_right <= r.extremes_test_bound);
        let cert = verify_two_sided_continuous(&t, &r.guard_set);
        prop_assert_eq!(cert.verdict, Verdict::Covered);
    }

    #[test]
    fn coverage_is_monotone(hs in heights(8, 9), extras in prop::collection::vec(any::<u16>(), 0..=3)) {
        let t = terrain_from_heights(&hs);
        let r = solve(&t, WitnessMode::Paper);
        prop_assume!(r.verified);
        let mut pairs: Vec<(usize, Provenance)> = r.guard_set.iter().collect();
        for &e in &extras {
            let g = e as usize % t.n();
            if !pairs.iter().any(|&(h, _)| h == g) {
                pairs.push((g, Provenance::Oracle));
            }
        }
        let bigger = GuardSet::from_pairs(pairs);
        let cert = verify_two_sided_continuous(&t, &bigger);
        prop_assert_eq!(cert.verdict, Verdict::Covered);
    }

    #[test]
    fn terrain_json_round_trip(
        coords in prop::collection::vec(((1i64..=5, 1i64..=3), (-12i64..=12, 1i64..=4)), 2..=8)
    ) {
        use twoguard_core::rat::rq;
        let mut x = rq(0, 1);
        let mut verts = Vec::with_capacity(coords.len());
        for ((dxn, dxd), (yn, yd)) in coords {
            x += rq(dxn, dxd);
            verts.push((x.clone(), rq(yn, yd)));
        }
        let t = Terrain::new(verts).unwrap();
        let back = json::terrain_from_str(&json::terrain_to_string(&t)).unwrap();
        prop_assert_eq!(back.vertices(), t.vertices());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn passes_add_the_minimum(hs in heights(8, 9)) {
        let t = terrain_from_heights(&hs);
        let n = t.n();
        let xs = build_witness_set(&t, WitnessMode::Paper);
        let em = compute_all_extremes(&t, &xs);

        let seed = GuardSet::from_pairs(vec![(0, Provenance::Forced)]);
        let out = left_guarding(&t, &xs, &em, &seed).set;
        let added = out.len() - 1;
        let best = minimal_one_sided_oracle(&t, &xs, Side::Left, &seed, ORACLE_DEFAULT_MAX_N).unwrap();
        prop_assert_eq!(added, best);

        let seed = GuardSet::from_pairs(vec![(n - 1, Provenance::Forced)]);
        let out = right_guarding(&t, &xs, &em, &seed).set;
        let added = out.len() - 1;
        let best = minimal_one_sided_oracle(&t, &xs, Side::Right, &seed, ORACLE_DEFAULT_MAX_N).unwrap();
        prop_assert_eq!(added, best);
    }

    #[test]
    fn solve_matches_the_oracle(hs in heights(6, 8)) {
        let t = terrain_from_heights(&hs);
        let r = solve(&t, WitnessMode::Paper);
        let xs = build_witness_set(&t, WitnessMode::Paper);
        let opt = brute_force_optimal(&t, OracleTarget::Witnesses(&xs), ORACLE_DEFAULT_MAX_N).unwrap();
        prop_assert_eq!(r.guard_set.len(), opt.len());
        let cert = verify_two_sided_continuous(&t, &opt);
        prop_assert_eq!(cert.verdict, Verdict::Covered);
    }
}
