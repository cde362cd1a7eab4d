use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use diskfold::geometry::{disks_intersect, sq_dist, Disk, ExactScalar, Point};
use diskfold::online::{
    bound_formula, default_base, run, AlgorithmConfig, AlgorithmKind, BoundParams, Mode,
};
use diskfold::oracles::{build_disk_graph, gen_random_disks, max_clique_exact, verify_coloring};
use diskfold::plane_coloring::{pq_color_count, PlaneColoring};
use diskfold::quotient::LatticeQuotient;
use diskfold::tiling::{HexLattice, TileIndex};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-400i64..400, 1i64..40, -400i64..400, 1i64..40)
        .prop_map(|(a, da, b, db)| ExactScalar::new(rat(a, da), rat(b, db)))
}

fn point() -> impl Strategy<Value = Point> {
    (-50_000i64..50_000, -50_000i64..50_000)
        .prop_map(|(x, y)| Point::from_rationals(rat(x, 10_000), rat(y, 10_000)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x.clone());
        }
    }

    #[test]
    fn scalar_order_matches_f64_when_apart(x in scalar(), y in scalar()) {
        let (a, b) = (x.to_f64(), y.to_f64());
        if (a - b).abs() > 1e-9 * (1.0 + a.abs().max(b.abs())) {
            prop_assert_eq!(x < y, a < b);
        }
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
    }

    #[test]
    fn floor_and_ceil_bracket(x in scalar()) {
        let f = ExactScalar::from_rational(BigRational::from_integer(x.floor()));
        let c = ExactScalar::from_rational(BigRational::from_integer(x.ceil()));
        prop_assert!(f <= x && x < &f + &ExactScalar::one());
        prop_assert!(c >= x && x > &c - &ExactScalar::one());
    }

    #[test]
    fn disk_intersection_is_symmetric(p in point(), q in point(), d1 in 1i64..5, d2 in 1i64..5) {
        let a = Disk::new(p, ExactScalar::from_int(d1));
        let b = Disk::new(q, ExactScalar::from_int(d2));
        prop_assert_eq!(disks_intersect(&a, &b), disks_intersect(&b, &a));
        let reach = ExactScalar::ratio(d1 + d2, 2);
        prop_assert_eq!(disks_intersect(&a, &b), sq_dist(&a.center, &b.center) <= reach.square());
    }

    #[test]
    fn every_point_has_one_owning_tile_per_layer(h in 1u32..5, p in point()) {
        let lattice = HexLattice::new(h).unwrap();
        for r in 1..=lattice.b() {
            let t = lattice.locate(&p, r);
            prop_assert_eq!(lattice.layer_of(t), r);
            prop_assert!(lattice.contains_closed(t, &p));
        }
    }

    #[test]
    fn tile_centers_locate_to_themselves(h in 1u32..5, i in -40i64..40, j in -40i64..40) {
        let lattice = HexLattice::new(h).unwrap();
        let t = TileIndex::new(i, j);
        let c = lattice.tile_center(t);
        prop_assert_eq!(lattice.locate(&c, lattice.layer_of(t)), t);
    }

    #[test]
    fn color_count_law(p in 0i64..12, q in 0i64..12) {
        prop_assume!((p, q) != (0, 0));
        let lattice = Arc::new(HexLattice::new(1).unwrap());
        let c = PlaneColoring::pq(lattice, p, q).unwrap();
        prop_assert_eq!(c.k(), pq_color_count(p, q).unwrap());
        prop_assert_eq!(c.monochrome_lattice().index(), c.k());
    }

    #[test]
    fn colors_are_constant_on_cosets(
        h in 1u32..4, p in 0i64..9, q in 1i64..9,
        i in -60i64..60, j in -60i64..60, a in -5i64..5, b in -5i64..5,
    ) {
        let lattice = Arc::new(HexLattice::new(h).unwrap());
        let c = PlaneColoring::pq(lattice, p, q).unwrap();
        let (di, dj) = (a * p + b * (p + q), a * q - b * p);
        let t = TileIndex::new(i, j);
        prop_assert_eq!(c.tile_color(t), c.tile_color(t.offset(di, dj)));
    }

    #[test]
    fn equal_colors_only_on_the_same_coset(
        p in 0i64..7, q in 1i64..7, i in -30i64..30, j in -30i64..30, k in -30i64..30, l in -30i64..30,
    ) {
        let lattice = Arc::new(HexLattice::new(1).unwrap());
        let c = PlaneColoring::pq(lattice, p, q).unwrap();
        let same = c.tile_color(TileIndex::new(i, j)) == c.tile_color(TileIndex::new(k, l));
        prop_assert_eq!(same, c.monochrome_lattice().contains(k - i, l - j));
    }

    #[test]
    fn quotient_reduce_is_a_bijection_on_representatives(
        a in 1i64..9, s in -9i64..9, d in 1i64..9, x in -50i64..50, y in -50i64..50,
    ) {
        let lq = LatticeQuotient::from_basis((a, s), (0, d)).unwrap();
        let reps: Vec<u64> = lq.representatives().map(|(i, j)| lq.reduce(i, j)).collect();
        let mut sorted = reps.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..lq.index()).collect::<Vec<_>>());
        prop_assert_eq!(lq.reduce(x, y), lq.reduce(x + a, y + s));
        prop_assert_eq!(lq.reduce(x, y), lq.reduce(x, y + d));
    }

    #[test]
    fn fold_shade_bound_never_exceeds_fold(k in 1u64..200, h in 1u64..8, omega in 0u64..100_000) {
        let b = h * h;
        let gamma = match h { 1 => 1, 2 => 12, _ => 6 * b };
        let params = BoundParams { k, b, gamma, branches: 1 };
        let shade = bound_formula(AlgorithmKind::FoldShadeColor, omega, &params);
        let fold = bound_formula(AlgorithmKind::FoldColor, omega, &params);
        prop_assert!(shade <= fold);
        prop_assert!(bound_formula(AlgorithmKind::FoldColor, omega + 1, &params) >= fold);
    }
}

fn config(kind: AlgorithmKind, sigma: &str, h: u32) -> AlgorithmConfig {
    let s: ExactScalar = sigma.parse().unwrap();
    let base = default_base(kind, &s, h, Mode::Proper).unwrap();
    AlgorithmConfig::new(kind, s, base, Mode::Proper).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_are_proper_and_within_bounds(seed in 0u64..10_000, si in 0usize..3, h in 1u32..4, n in 5usize..60) {
        let sigma = ["1", "1.5", "2"][si];
        let disks = gen_random_disks(n, &sigma.parse().unwrap(), 4.0, seed);
        let graph = build_disk_graph(&disks);
        let omega = max_clique_exact(&graph).unwrap() as u64;
        for kind in AlgorithmKind::ALL {
            let cfg = config(kind, sigma, h);
            let out = run(&cfg, &disks).unwrap();
            let colors: Vec<_> = out.colors.iter().map(|c| c.color).collect();
            prop_assert!(verify_coloring(&graph, &colors).passed, "{}", kind.id());
            if kind != AlgorithmKind::BranchFF {
                prop_assert!(out.stats.max_value <= bound_formula(kind, omega, &BoundParams::of(&cfg)));
            }
        }
    }

    #[test]
    fn online_prefix_property(seed in 0u64..10_000, cut in 0usize..40) {
        let disks = gen_random_disks(40, &"2".parse().unwrap(), 5.0, seed);
        for kind in AlgorithmKind::ALL {
            let cfg = config(kind, "2", 2);
            let full = run(&cfg, &disks).unwrap();
            let prefix = run(&cfg, &disks[..cut]).unwrap();
            prop_assert_eq!(&full.colors[..cut], &prefix.colors[..]);
        }
    }
}
