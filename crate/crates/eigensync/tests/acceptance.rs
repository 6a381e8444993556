//! Acceptance suite: one test per top-level claim the crate stands on.
//! Each test prints a pass/fail line through the harness; run with
//! `cargo test -p eigensync --test acceptance`.

use eigensync::automaton::{Automaton, DEFAULT_SUBSET_BUDGET};
use eigensync::certify::{
    certify_totally_synchronizing, check_rt_bound, friedman_partition, rt_bound_from_sum,
    synchronizing_ratio, SyncCertificate, TotalSyncVerdict, DEFAULT_ENUMERATION_BUDGET,
};
use eigensync::constructions::{
    birkhoff_nonsync_coloring, eulerian_lift, gen_cerny, gen_complete_weighted, gen_u,
};
use eigensync::digraph::Digraph;
use eigensync::experiments::{run_experiment, sample_digraph, ExperimentConfig, ExperimentMode};
use eigensync::partition::{is_partitionable, partition_uniqueness};
use eigensync::spectral::{
    check_entry_bound, integer_eigenvector, Distribution, Rational, WeightVector,
};
use eigensync::state_set::StateSet;

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn automaton_f() -> Automaton {
    Automaton::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
}

fn automaton_b() -> Automaton {
    Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap()
}

fn automaton_d() -> Automaton {
    Automaton::from_rows(vec![vec![0, 2], vec![2, 0], vec![1, 3], vec![3, 2]]).unwrap()
}

fn word(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'a') as usize).collect()
}

fn uniform(k: usize) -> Distribution {
    Distribution::uniform(k)
}

/// One coloring of `g` drawn uniformly over slot-labelings.
fn random_coloring(g: &Digraph, rng: &mut impl Rng) -> Automaton {
    let rows = (0..g.n())
        .map(|v| {
            let mut row = g.slots(v).to_vec();
            row.shuffle(rng);
            row
        })
        .collect();
    Automaton::from_rows(rows).unwrap()
}

/// A random digraph with i.i.d. uniform slots, filtered to be strongly
/// connected (primitive or not).
fn random_strongly_connected(n: usize, k: usize, rng: &mut impl Rng) -> Digraph {
    loop {
        let rows = (0..n)
            .map(|_| (0..k).map(|_| rng.random_range(0..n)).collect())
            .collect();
        let g = Digraph::from_rows(rows).unwrap();
        if g.is_strongly_connected() {
            return g;
        }
    }
}

/// All canonical multiset digraphs with `n` vertices and out-degree `k`,
/// visited through a callback (per-vertex non-decreasing slot tuples).
fn for_each_multiset_digraph(n: usize, k: usize, f: &mut impl FnMut(&Digraph)) {
    fn vertex_choices(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = vec![0usize; k];
        loop {
            out.push(current.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if current[i] + 1 < n {
                    let v = current[i] + 1;
                    for slot in current.iter_mut().skip(i) {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }
    let choices = vertex_choices(n, k);
    let mut idx = vec![0usize; n];
    loop {
        let rows: Vec<Vec<usize>> = idx.iter().map(|&i| choices[i].clone()).collect();
        f(&Digraph::from_rows(rows).unwrap());
        let mut v = n;
        loop {
            if v == 0 {
                return;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < choices.len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// Every transition table with `n` states over `k` letters.
fn for_each_automaton(n: usize, k: usize, f: &mut impl FnMut(&Automaton)) {
    let mut rows = vec![vec![0usize; k]; n];
    loop {
        f(&Automaton::from_rows(rows.clone()).unwrap());
        let mut q = n;
        'advance: loop {
            if q == 0 {
                return;
            }
            q -= 1;
            for x in (0..k).rev() {
                rows[q][x] += 1;
                if rows[q][x] < n {
                    break 'advance;
                }
                rows[q][x] = 0;
            }
        }
    }
}

/// Independent synchronization check for a single subset: BFS in the image
/// lattice until a singleton appears.
fn subset_synchronizes(a: &Automaton, s: &StateSet) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::from([s.clone()]);
    seen.insert(s.clone());
    while let Some(t) = queue.pop_front() {
        if t.is_singleton() {
            return true;
        }
        for x in 0..a.k() {
            let img = a.image(&t, x);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    false
}

/// Checks the full Friedman contract on one non-synchronizing strongly
/// connected automaton.
fn assert_friedman_contract(a: &Automaton) {
    let fp = friedman_partition(a, &uniform(a.k())).unwrap();
    // kernel of the witness equals the partition (direct recomputation)
    let mut kernel_targets: Vec<usize> = Vec::with_capacity(a.n());
    for q in 0..a.n() {
        kernel_targets.push(a.apply_word_state(q, &fp.witness_word).unwrap());
    }
    for p in 0..a.n() {
        for q in 0..a.n() {
            let same_class = fp.partition.block_index(p) == fp.partition.block_index(q);
            assert_eq!(same_class, kernel_targets[p] == kernel_targets[q]);
        }
    }
    // blocks cover Q, are equal-weight, and each synchronizes
    let mut covered = 0usize;
    for block in fp.partition.blocks() {
        covered += block.len();
        let set = StateSet::from_indices(a.n(), block.iter().copied());
        assert_eq!(set.weight(&fp.eigenvector), fp.weight);
        assert!(subset_synchronizes(a, &set));
    }
    assert_eq!(covered, a.n());
}

#[test]
fn criterion_01_eigenvector_formulas() {
    for n in 2..=12usize {
        let g = gen_cerny(n).unwrap().underlying();
        let mut expect = vec![2u64; n - 1];
        expect.push(1);
        assert_eq!(
            integer_eigenvector(&g).unwrap(),
            WeightVector::from_u64s(&expect).unwrap(),
            "cerny {n}"
        );
    }
    for n in 1..=8usize {
        for k in 2..=4usize {
            let g = gen_u(n, k).unwrap();
            let w = integer_eigenvector(&g).unwrap();
            let expect: Vec<BigUint> = (0..n)
                .map(|i| BigUint::from(k).pow((n - 1 - i) as u32))
                .collect();
            assert_eq!(w.entries(), &expect[..], "u {n} {k}");
            let geometric_sum =
                (BigUint::from(k).pow(n as u32) - 1u32) / BigUint::from(k - 1);
            assert_eq!(w.sum(), geometric_sum, "u {n} {k} sum");
        }
    }
}

#[test]
fn criterion_02_fixture_behaviors() {
    assert!(!automaton_f().is_synchronizing());

    let b = automaton_b();
    assert!(b.is_synchronizing());
    let (rt, _) = b.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap().unwrap();
    assert_eq!(rt, 5);
    assert!(rt <= 5);
    let image = b.apply_word(&StateSet::full(4), &word("bbaab")).unwrap();
    assert_eq!(image, StateSet::singleton(4, 1));

    let d = automaton_d();
    assert!(!d.is_synchronizing());
    assert!(!d.is_pair_synchronizable(2, 3));
}

#[test]
fn criterion_03_friedman_partitions() {
    // spot check on the D fixture
    let fp = friedman_partition(&automaton_d(), &uniform(2)).unwrap();
    assert_eq!(fp.partition.blocks(), &[vec![0, 3], vec![1, 2]]);
    assert_eq!(fp.weight, BigUint::from(3u32));
    assert_friedman_contract(&automaton_d());

    // exhaustive corpus: every automaton with n <= 4, k = 2
    let mut verified = 0u64;
    for n in 2..=4usize {
        for_each_automaton(n, 2, &mut |a| {
            if a.is_strongly_connected() && !a.is_synchronizing() {
                assert_friedman_contract(a);
                verified += 1;
            }
        });
    }
    assert!(verified > 100, "exhaustive corpus too small: {verified}");

    // seeded strongly connected digraphs at n = 5, 6 with all their colorings
    let mut rng = ChaCha8Rng::seed_from_u64(0xF21ED);
    for n in 5..=6usize {
        for _ in 0..150 {
            let g = random_strongly_connected(n, 2, &mut rng);
            for coloring in g.colorings() {
                if !coloring.is_synchronizing() {
                    assert_friedman_contract(&coloring);
                    verified += 1;
                }
            }
        }
    }

    // permutation recolorings of Eulerian digraphs are always non-synchronizing
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=6);
        let g = loop {
            let g = union_of_permutations(n, 2, &mut rng);
            if g.is_strongly_connected() {
                break g;
            }
        };
        let a = birkhoff_nonsync_coloring(&g).unwrap();
        assert_friedman_contract(&a);
        verified += 1;
    }
    assert!(verified > 500, "corpus too small: {verified}");
}

/// Union of k seeded random permutations: an Eulerian k-out-regular digraph.
fn union_of_permutations(n: usize, k: usize, rng: &mut impl Rng) -> Digraph {
    let rows: Vec<Vec<usize>> = {
        let mut perms = Vec::with_capacity(k);
        for _ in 0..k {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            perms.push(p);
        }
        (0..n)
            .map(|v| perms.iter().map(|p| p[v]).collect())
            .collect()
    };
    Digraph::from_rows(rows).unwrap()
}

#[test]
fn criterion_04_reset_threshold_bound() {
    let d2 = uniform(2);

    // spot values
    let report = check_rt_bound(&automaton_b(), &d2, DEFAULT_SUBSET_BUDGET).unwrap();
    assert!(report.holds);
    assert_eq!((report.rt, report.bound.clone()), (5, BigUint::from(21u32)));
    let report = check_rt_bound(&gen_cerny(4).unwrap(), &d2, DEFAULT_SUBSET_BUDGET).unwrap();
    assert!(report.holds);
    assert_eq!((report.rt, report.bound.clone()), (9, BigUint::from(31u32)));

    let mut checked = 0u64;
    let mut check = |a: &Automaton| {
        if a.is_strongly_connected() && a.is_synchronizing() {
            let report = check_rt_bound(a, &uniform(a.k()), DEFAULT_SUBSET_BUDGET).unwrap();
            assert!(
                report.holds,
                "rt {} exceeds bound {} (W = {})",
                report.rt, report.bound, report.weight_sum
            );
            checked += 1;
        }
    };

    // generated families with eigenvector sum <= 12
    for n in 2..=6usize {
        check(&gen_cerny(n).unwrap());
        for coloring in gen_cerny(n).unwrap().underlying().colorings() {
            check(&coloring);
        }
    }
    for (n, k) in [(1, 2), (1, 3), (1, 4), (2, 2), (3, 2), (2, 3), (2, 4)] {
        for coloring in gen_u(n, k).unwrap().colorings() {
            check(&coloring);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0DD);
    for entries in [
        vec![1u64, 1],
        vec![1, 2],
        vec![1, 1, 1],
        vec![1, 1, 2],
        vec![2, 3],
        vec![1, 2, 3],
        vec![1, 1, 2, 2],
    ] {
        let w = WeightVector::from_u64s(&entries).unwrap();
        let g = gen_complete_weighted(&w).unwrap();
        for _ in 0..10 {
            check(&random_coloring(&g, &mut rng));
        }
    }

    // 200 seeded random primitive digraph colorings
    let mut sampled = 0;
    let mut idx = 0u64;
    while sampled < 200 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0104 + idx);
        idx += 1;
        let n = rng.random_range(2..=6);
        let k = rng.random_range(2..=3);
        let g = sample_digraph(n, k, &mut rng).unwrap();
        let a = random_coloring(&g, &mut rng);
        if a.is_synchronizing() {
            check(&a);
            sampled += 1;
        }
    }
    assert!(checked >= 250, "bound corpus too small: {checked}");
}

#[test]
fn criterion_05_eulerian_lift() {
    let mut targets: Vec<Automaton> = vec![automaton_b()];
    let mut idx = 0u64;
    while targets.len() < 51 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x11F7 + idx);
        idx += 1;
        let n = rng.random_range(2..=5);
        let k = rng.random_range(2..=3);
        let g = sample_digraph(n, k, &mut rng).unwrap();
        let w = integer_eigenvector(&g).unwrap();
        if w.sum() > BigUint::from(10u32) {
            continue;
        }
        let a = random_coloring(&g, &mut rng);
        if a.is_synchronizing() {
            targets.push(a);
        }
    }

    for a in &targets {
        let w = integer_eigenvector(&a.underlying()).unwrap();
        let total = usize::try_from(&w.sum()).unwrap();
        let lift = eulerian_lift(a).unwrap();
        assert!(lift.automaton.is_eulerian());
        assert_eq!(lift.state_count(), total);
        // class-respecting transitions over the base letters
        for i in 0..a.n() {
            for x in 0..a.k() {
                let target_class = lift.class_of(a.step(i, x));
                for q in lift.class_of(i) {
                    assert!(target_class.contains(&lift.automaton.step(q, x)));
                }
            }
        }
        let (rt_base, _) = a.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap().unwrap();
        let (rt_lift, _) = lift
            .automaton
            .shortest_reset_word(DEFAULT_SUBSET_BUDGET)
            .unwrap()
            .expect("the lift of a synchronizing automaton synchronizes");
        assert!(rt_base <= rt_lift);
        assert!(BigUint::from(rt_lift) <= rt_bound_from_sum(&w.sum()));
    }
}

#[test]
fn criterion_06_partitionability_decides_total_sync() {
    // Forward: every primitive digraph with n <= 5, k = 2 whose eigenvector
    // is not partitionable has all colorings synchronizing (exhaustive).
    let mut nonpartitionable = 0u64;
    for n in 1..=5usize {
        for_each_multiset_digraph(n, 2, &mut |g| {
            if !g.is_primitive() {
                return;
            }
            let w = integer_eigenvector(g).unwrap();
            if is_partitionable(&w).unwrap() {
                return;
            }
            nonpartitionable += 1;
            for coloring in g.colorings() {
                assert!(
                    coloring.is_synchronizing(),
                    "non-partitionable digraph with a non-synchronizing coloring"
                );
            }
        });
    }
    assert!(
        nonpartitionable > 1000,
        "forward corpus too small: {nonpartitionable}"
    );

    // Converse: partitionable vectors admit a non-synchronizing coloring of
    // their complete weighted digraph.
    for entries in [vec![1u64, 1], vec![1, 1, 2], vec![1, 1, 2, 2], vec![2, 2, 1, 1]] {
        let w = WeightVector::from_u64s(&entries).unwrap();
        let report = partition_uniqueness(&w).unwrap();
        let p = report
            .per_b
            .values()
            .next()
            .and_then(|parts| parts.first())
            .expect("vector is partitionable");
        let (g, a) =
            eigensync::constructions::nonsync_coloring_from_partition(&w, p).unwrap();
        assert!(!a.is_synchronizing(), "converse failed for {entries:?}");
        assert_eq!(a.underlying(), g);
    }
}

#[test]
fn criterion_07_total_sync_verdicts() {
    for n in 2..=12usize {
        let g = gen_cerny(n).unwrap().underlying();
        match certify_totally_synchronizing(&g, DEFAULT_ENUMERATION_BUDGET).unwrap() {
            TotalSyncVerdict::TotallySynchronizing(
                SyncCertificate::NonPartitionableEigenvector(w),
            ) => {
                let mut expect = vec![2u64; n - 1];
                expect.push(1);
                assert_eq!(w, WeightVector::from_u64s(&expect).unwrap());
            }
            other => panic!("cerny {n}: expected non-partitionable certificate, got {other:?}"),
        }
    }

    match certify_totally_synchronizing(&automaton_b().underlying(), DEFAULT_ENUMERATION_BUDGET)
        .unwrap()
    {
        TotalSyncVerdict::TotallySynchronizing(SyncCertificate::ExhaustiveEnumeration {
            labelings,
            ..
        }) => assert_eq!(labelings, BigUint::from(16u32)),
        other => panic!("underlying(B): expected exhaustive certificate, got {other:?}"),
    }

    match certify_totally_synchronizing(&automaton_d().underlying(), DEFAULT_ENUMERATION_BUDGET)
        .unwrap()
    {
        TotalSyncVerdict::NotTotallySynchronizing { witness } => {
            assert!(!witness.is_synchronizing());
            assert_eq!(witness.underlying(), automaton_d().underlying());
        }
        other => panic!("underlying(D): expected refutation, got {other:?}"),
    }
}

#[test]
fn criterion_08_unique_partition_ratio_floor() {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));

    // the 2-vertex Eulerian digraph attains the floor exactly
    let f2 = Digraph::from_rows(vec![vec![0, 1], vec![0, 1]]).unwrap();
    let ratio = synchronizing_ratio(&f2, DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(ratio.value, half);
    let w = integer_eigenvector(&f2).unwrap();
    assert!(partition_uniqueness(&w).unwrap().is_globally_unique());

    let mut qualified = 0u64;
    let mut idx = 0u64;
    while qualified < 500 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8A7 + idx);
        idx += 1;
        assert!(idx < 100_000, "sampling stalled before 500 qualifying digraphs");
        let n = rng.random_range(2..=6);
        let g = sample_digraph(n, 2, &mut rng).unwrap();
        let w = integer_eigenvector(&g).unwrap();
        if !partition_uniqueness(&w).unwrap().is_globally_unique() {
            continue;
        }
        qualified += 1;
        let ratio = synchronizing_ratio(&g, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(
            ratio.value >= half,
            "ratio {} below 1/2 for a globally unique partition",
            ratio.value
        );
    }
}

#[test]
fn criterion_09_eigenvector_entry_bound() {
    let check = |g: &Digraph| {
        let w = integer_eigenvector(g).unwrap();
        assert!(check_entry_bound(g, &w));
    };
    for n in 1..=10usize {
        for k in 2..=4usize {
            check(&gen_u(n, k).unwrap());
        }
    }
    for n in 2..=10usize {
        check(&gen_cerny(n).unwrap().underlying());
    }
    for entries in [vec![1u64, 2, 3], vec![1, 1, 2, 2], vec![3, 5, 7], vec![1, 4]] {
        check(&gen_complete_weighted(&WeightVector::from_u64s(&entries).unwrap()).unwrap());
    }
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB07 + seed);
        let n = rng.random_range(1..=10);
        let k = rng.random_range(2..=4);
        check(&sample_digraph(n, k, &mut rng).unwrap());
    }
}

#[test]
fn criterion_10_eulerian_reset_bound() {
    let mut verified = 0u64;
    let mut idx = 0u64;
    while verified < 100 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xEA7 + idx);
        idx += 1;
        let n = rng.random_range(2..=10);
        let k = rng.random_range(2..=4);
        let g = union_of_permutations(n, k, &mut rng);
        if !g.is_strongly_connected() {
            continue;
        }
        let a = random_coloring(&g, &mut rng);
        assert!(a.is_eulerian());
        let Some((rt, _)) = a.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap() else {
            continue;
        };
        // n^2 - 3n + 3 written without underflow at n = 2
        assert!(rt <= (n - 1) * (n - 2) + 1, "rt {rt} exceeds the Eulerian bound at n={n}");
        verified += 1;
    }
}

#[test]
fn criterion_11_birkhoff_recoloring() {
    let mut verified = 0u64;
    let mut idx = 0u64;
    while verified < 100 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB1C + idx);
        idx += 1;
        let n = rng.random_range(2..=10);
        let k = rng.random_range(2..=4);
        let g = union_of_permutations(n, k, &mut rng);
        let a = birkhoff_nonsync_coloring(&g).unwrap();
        // every letter is a bijection
        for x in 0..k {
            let mut hit = vec![false; n];
            for q in 0..n {
                hit[a.step(q, x)] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
        assert_eq!(a.underlying(), g);
        assert!(!a.is_synchronizing());
        verified += 1;
    }
}

#[test]
fn criterion_12_experiment_determinism() {
    for (mode, n, k) in [
        (ExperimentMode::PartitionableFraction, 4, 2),
        (ExperimentMode::RatioDistribution, 3, 2),
        (ExperimentMode::TotalSyncFraction, 3, 2),
    ] {
        let cfg = ExperimentConfig {
            n,
            k,
            samples: 100,
            seed: 0xD15C,
            mode,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            ratio_witness_threshold: None,
        };
        let first = run_experiment(&cfg, 1).unwrap().to_json();
        let second = run_experiment(&cfg, 1).unwrap().to_json();
        let parallel = run_experiment(&cfg, 4).unwrap().to_json();
        assert_eq!(first, second, "same seed must reproduce byte-identically");
        assert_eq!(first, parallel, "worker count must not affect the report");
    }
}
