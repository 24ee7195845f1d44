mod common;

use btpgl::building::{bfs_dist, dist, EnumCap};
use btpgl::cycles::{
    build_f, decompose_intersection, decompose_with_complements, decomposition_parts, dist_to_family,
    dist_to_family_windowed, family_keys, intersection_number, intersection_number_of_forms, properness_check,
    verify_intersection_distance, CycleConfiguration, LinearCycle,
};
use btpgl::lattice::{complete_to_complement, transform_submodule};
use btpgl::random::{random_instance, InstanceMode, RandomParams};
use btpgl::schema::{analyze, InstanceFile};
use btpgl::{Matrix, SplitSubmodule};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn instance(seed: u64, n: usize, p: u64, d: usize, max_val: u32, mode: InstanceMode) -> CycleConfiguration {
    random_instance(seed, &RandomParams::new(n, p, d, max_val, mode)).unwrap().config
}

fn zero_dim_instance(seed: u64, n: usize, p: u64) -> CycleConfiguration {
    if seed % 2 == 0 {
        instance(seed, n, p, n, 2, InstanceMode::Hyperplanes)
    } else {
        instance(seed, n, p, 2, 2, InstanceMode::Submodules)
    }
}

/// A random integral `rows x cols` matrix.
fn integral_block(r: &mut rand_chacha::ChaCha8Rng, p: u64, rows: usize, cols: usize) -> Matrix {
    let mut x = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            x[(i, j)] = random_integral(r, p, 2);
        }
    }
    x
}

/// `N ⊕ L'` with `L' = complement + N X` for a random integral `X`.
fn sheared_complement(r: &mut rand_chacha::ChaCha8Rng, n: &SplitSubmodule, complement: &SplitSubmodule) -> SplitSubmodule {
    let p = n.ctx().p();
    let x = integral_block(r, p, n.rank(), complement.rank());
    let mut shifted = n.columns() * &x;
    for i in 0..shifted.rows() {
        for j in 0..shifted.cols() {
            shifted[(i, j)] = &shifted[(i, j)] + &complement.columns()[(i, j)];
        }
    }
    SplitSubmodule::new(n.ambient().clone(), shifted).unwrap()
}

/// Intersection number from equations read off an explicitly chosen complement
/// for every submodule cycle.
fn number_with_complements(cfg: &CycleConfiguration, r: &mut rand_chacha::ChaCha8Rng) -> u32 {
    let mut columns = Vec::new();
    for cycle in cfg.cycles() {
        match cycle {
            LinearCycle::Hyperplane(f) => columns.push(f.coefficients().to_vec()),
            LinearCycle::Submodule(n) => {
                let whole = SplitSubmodule::whole(n.ambient().clone());
                let comp = sheared_complement(r, n, &complete_to_complement(&whole, n).unwrap());
                let w_inv = n.columns().hstack(comp.columns()).inverse().unwrap();
                columns.extend((n.rank()..cfg.dim()).map(|i| w_inv.row(i)));
            }
        }
    }
    intersection_number_of_forms(cfg.ctx(), &columns).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_family_distance_matches_window(seed in any::<u64>(), n in 2usize..=3, p in prop::sample::select(vec![2u64, 3])) {
        let cfg = zero_dim_instance(seed, n, p);
        let f = build_f(&cfg).unwrap();
        prop_assert_eq!(dist_to_family(cfg.ambient(), &f).unwrap(), dist_to_family_windowed(cfg.ambient(), &f).unwrap());
        prop_assert!(verify_intersection_distance(&cfg).unwrap().agree);
    }

    #[test]
    fn family_distance_routes_agree_on_scaled_generators(seed in any::<u64>(), n in 2usize..=3, p in prop::sample::select(vec![2u64, 3]), e in -2i64..=2) {
        let cfg = zero_dim_instance(seed, n, p);
        let f = build_f(&cfg).unwrap();
        let j = (seed as usize / 7) % f.generators().len();
        let f = f.with_scaled_generator(j, e).unwrap();
        prop_assert_eq!(dist_to_family(cfg.ambient(), &f).unwrap(), dist_to_family_windowed(cfg.ambient(), &f).unwrap());
    }

    #[test]
    fn equations_do_not_depend_on_the_complement(seed in any::<u64>(), n in 2usize..=4, p in prop::sample::select(vec![2u64, 3, 5])) {
        let cfg = instance(seed, n, p, 2, 2, InstanceMode::Submodules);
        let base = intersection_number(&cfg).unwrap();
        let mut r = rng(seed ^ 0x5eed);
        for _ in 0..3 {
            prop_assert_eq!(number_with_complements(&cfg, &mut r), base);
        }
    }

    #[test]
    fn decomposition_does_not_depend_on_the_complements(seed in any::<u64>(), n in 3usize..=4, p in prop::sample::select(vec![2u64, 3])) {
        let d = 2 + (seed as usize % (n - 2));
        let cfg = instance(seed, n, p, d, 2, InstanceMode::HigherDim);
        let base = decompose_intersection(&cfg).unwrap();
        let (l0, ls) = decomposition_parts(&cfg).unwrap();
        let mut r = rng(seed ^ 0xdec0);
        let complements: Vec<_> = ls
            .iter()
            .map(|l| sheared_complement(&mut r, &l0, &complete_to_complement(l, &l0).unwrap()))
            .collect();
        let other = decompose_with_complements(&cfg, &complements).unwrap();
        prop_assert_eq!(other.special_multiplicity, base.special_multiplicity);
        prop_assert!(other.generic_component.same_module(&base.generic_component));
        prop_assert_eq!(other.special_component, base.special_component);
    }

    #[test]
    fn properness_is_basis_independent(seed in any::<u64>(), n in 2usize..=4, p in prop::sample::select(vec![2u64, 3])) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=n);
        let mode = if r.gen_bool(0.5) { InstanceMode::Submodules } else { InstanceMode::HigherDim };
        let d = if mode == InstanceMode::HigherDim { d.min(n - 1).max(1) } else { d };
        let cfg = instance(seed, n, p, d, 2, mode);
        let b = random_unimodular(&mut r, p, n);
        let moved = CycleConfiguration::from_submodules(
            cfg.ambient().clone(),
            cfg.submodules().iter().map(|s| transform_submodule(&b, s).unwrap()).collect(),
        )
        .unwrap();
        prop_assert_eq!(properness_check(&moved), properness_check(&cfg));
        prop_assert_eq!(analyze(&moved).unwrap().number, analyze(&cfg).unwrap().number);
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>(), n in 2usize..=4, p in prop::sample::select(vec![2u64, 3, 5])) {
        let cfg = zero_dim_instance(seed, n, p);
        let text = serde_json::to_string(&InstanceFile::from_config(&cfg)).unwrap();
        let back = serde_json::from_str::<InstanceFile>(&text).unwrap().to_config().unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(analyze(&back).unwrap(), analyze(&cfg).unwrap());
    }
}

/// Three routes to the family distance: closed form, exponent window and
/// breadth-first search over the building.
#[test]
fn family_distance_matches_graph_search() {
    let mut checked = 0;
    for (n, p) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
        for seed in 0..12u64 {
            let cfg = zero_dim_instance(seed * 31 + n as u64, n, p);
            let m = cfg.ambient();
            let f = build_f(&cfg).unwrap();
            let d = dist_to_family(m, &f).unwrap();
            if d > 3 {
                continue;
            }
            let base = dist(m, &f.vertex(&vec![0; f.generators().len()]).unwrap()).unwrap();
            let keys = family_keys(m, &f, d + base).unwrap();
            assert_eq!(bfs_dist(m, m, &keys, d, EnumCap::default()).unwrap(), Some(d), "n={n} p={p} seed={seed}");
            assert_eq!(dist_to_family_windowed(m, &f).unwrap(), d);
            checked += 1;
        }
    }
    assert!(checked >= 24, "only {checked} instances were small enough");
}
