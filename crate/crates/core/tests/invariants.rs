use nestkit::decomp::{
    check_paths, check_refine_invariants, cut_separates, disjoint_paths, validate_decomposition, PathMode,
};
use nestkit::drawplan::{
    crossings_in_annulus, euler_accounting, fill_faces, planarize, random_drawing, clean_window, Drawing,
    DrawingBuilder,
};
use nestkit::gens;
use nestkit::nest::find_nest;
use nestkit::{refine, verify_nest, DecompOutcome, GraphJson, Nest};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_triangulations_are_triangulations(n in 4usize..120, seed in any::<u64>()) {
        let g = gens::random_triangulation(n, seed);
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert!(g.is_triangulation());
        let json = GraphJson::from_graph(&g);
        prop_assert_eq!(GraphJson::from_graph(&json.to_graph().unwrap()), json);
    }

    #[test]
    fn refine_outcomes_verify(n in 13usize..150, seed in any::<u64>(), k in 1usize..=2) {
        let g = gens::random_triangulation(n, seed);
        match refine(&g, k).unwrap() {
            DecompOutcome::ZeroNest(nest) => {
                let (s, _) = verify_nest(&g, &nest.cycles).unwrap();
                prop_assert_eq!(s, 0);
                prop_assert!(nest.size() >= k);
            }
            DecompOutcome::Decomposition(d) => {
                prop_assert!(validate_decomposition(&g, &d).is_ok());
                prop_assert!(check_refine_invariants(&g, &d, k).is_ok());
                prop_assert!(d.width() < 12 * k || 12 * k >= n);
            }
        }
    }

    #[test]
    fn found_nests_verify(n in 4usize..60, seed in any::<u64>(), k in 1usize..4) {
        let g = gens::random_triangulation(n, seed);
        let found = find_nest(&g, k).unwrap();
        let (s, x) = verify_nest(&g, &found.nest.cycles).unwrap();
        prop_assert_eq!(s, found.nest.s());
        prop_assert_eq!(x, found.nest.x_set.clone());
        prop_assert_eq!(found.guaranteed, found.nest.size() >= k);
    }

    #[test]
    fn nest_subsequences_stay_nests(m in 2usize..8, mask in 0u32..256) {
        let g = gens::one_nest(m);
        let nest = Nest::from_vertex_lists(&g, &gens::one_nest_cycles(m)).unwrap();
        let sub: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| nest.cycles[i].clone()).collect();
        if sub.len() >= 2 {
            prop_assert_eq!(verify_nest(&g, &sub).unwrap().0, 1);
        }
        let mut rev = nest.cycles.clone();
        rev.reverse();
        prop_assert!(verify_nest(&g, &rev).is_err());
    }

    #[test]
    fn planarizations_keep_euler(n in 8usize..60, seed in any::<u64>(), ell in 0usize..12, del in 0usize..20) {
        let d = random_drawing(&gens::random_triangulation(n, seed), ell, del, seed);
        let p = planarize(&d).unwrap();
        prop_assert_eq!(p.graph.vertex_count(), d.n + d.crossing_count());
        let rep = euler_accounting(&p, 0).unwrap();
        prop_assert_eq!(rep.vertex_sum + rep.face_sum, 12);
        let filled = fill_faces(&p);
        prop_assert!(filled.graph.is_triangulation());
        prop_assert_eq!(filled.apexes.len(), rep.non_triangular);
        let json = serde_json::to_string(&d.to_json()).unwrap();
        let back = Drawing::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn clean_windows_are_crossing_free(m in 3usize..9, t in 2usize..4, picks in prop::collection::vec(any::<u64>(), 0..4)) {
        let g = gens::concentric(m);
        let mut b = DrawingBuilder::new(&g);
        for pick in picks {
            // only zigzag pieces between consecutive rings, so rings stay uncrossed
            let zigzag: Vec<(usize, usize)> = b
                .pieces()
                .into_iter()
                .map(|(xy, _)| xy)
                .filter(|&(x, y)| x < 3 * m && y < 3 * m && y / 3 == x / 3 + 1)
                .collect();
            let (x, y) = zigzag[pick as usize % zigzag.len()];
            b.cross(x, y);
        }
        let p = planarize(&b.build()).unwrap();
        let nest = Nest::from_vertex_lists(&p.graph, &gens::concentric_nest(m)).unwrap();
        let busy: Vec<bool> = (0..m - 1).map(|i| !crossings_in_annulus(&p, &nest, i).is_empty()).collect();
        let expect = (t <= m).then(|| (0..=m - t).find(|&j| busy[j..j + t - 1].iter().all(|b| !b))).flatten();
        prop_assert_eq!(clean_window(&p, &nest, t), expect);
    }

    #[test]
    fn flows_come_with_cuts(n in 6usize..80, seed in any::<u64>(), vertex in any::<bool>()) {
        let g = gens::random_triangulation(n, seed);
        let mode = if vertex { PathMode::Vertex } else { PathMode::Edge };
        let a: Vec<usize> = (0..n / 4).collect();
        let b: Vec<usize> = (n - n / 4..n).collect();
        let r = disjoint_paths(&g, &a, &b, mode);
        let edges: Vec<_> = g.edges().iter().enumerate().map(|(e, &[u, v])| (e, u, v)).collect();
        prop_assert!(check_paths(&edges, &a, &b, &r).is_ok());
        prop_assert_eq!(r.cut.len(), r.count());
        prop_assert!(cut_separates(n, &edges, &a, &b, mode, &r.cut));
    }
}
