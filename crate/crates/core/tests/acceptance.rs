//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers (run with `--nocapture` to see them).
//!
//! 1. exhaustive oracle equivalence for n <= 20, single-threaded
//! 2. the same suite at n <= 30 with thread fan-out
//! 3. invariants P2-P10 and the Little-Loop checks across criterion 1's runs
//! 4. graft lemma conclusions on >= 1000 random valid grafts
//! 5. figure-level graft regression on N_3 in gl_10
//! 6. Laurent identity omega^{-r} = E_r z^{-1} + N_r and omega^{-n} = z^{-1} I
//! 7. dominance criterion lambda >= type(N_r) iff |lambda| <= r
//! 8. zero completion when lambda is exactly the type of N_r
//! 9. engine-only performance at n = 5000

use std::sync::LazyLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilcomplete::batch::{sweep, BatchReport};
use nilcomplete::engine::{run, EngineOptions};
use nilcomplete::{
    canonical_nr_graph, make_er, make_nr, nr_type, omega_inverse, GlnGraph, IntMatrix,
    LaurentMatrix, Partition,
};

static SWEEP_20: LazyLock<(BatchReport, f64)> = LazyLock::new(|| {
    let start = Instant::now();
    let report = sweep(20, false, true);
    (report, start.elapsed().as_secs_f64())
});

#[test]
fn criterion_1_exhaustive_oracle_equivalence_n20() {
    let (report, elapsed) = &*SWEEP_20;
    assert!(report.instances > 0);
    assert!(
        report.failures.is_empty(),
        "oracle mismatches: {:?}",
        report.failures
    );
    assert!(
        *elapsed < 60.0,
        "criterion 1 took {elapsed:.1} s, budget is 60 s"
    );
    println!(
        "PASS criterion 1: {} instances with 0 < r < n <= 20 verified exactly in {:.2} s single-threaded",
        report.instances, elapsed
    );
}

#[test]
fn criterion_2_paper_scale_reproduction_n30() {
    let start = Instant::now();
    let report = sweep(30, true, true);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        report.failures.is_empty(),
        "failures at paper scale: {:?}",
        report.failures
    );
    assert!(
        elapsed < 900.0,
        "criterion 2 took {elapsed:.1} s, budget is 900 s"
    );
    println!(
        "PASS criterion 2: {} instances with 0 < r < n <= 30 verified exactly in {:.1} s",
        report.instances, elapsed
    );
}

#[test]
fn criterion_3_invariant_suite() {
    let (report, _) = &*SWEEP_20;
    // Any P2-P10 or Little-Loop violation surfaces as a batch failure.
    assert!(report.failures.is_empty(), "{:?}", report.failures);
    assert!(report.boundaries_checked > 0);
    assert!(report.little_iterations > 0);
    println!(
        "PASS criterion 3: P2-P10 held at {} iteration boundaries and the Little-Loop checks at {} iterations, zero violations",
        report.boundaries_checked, report.little_iterations
    );
}

/// A random properly downward graph obtained from a canonical N_r graph by
/// a few prior valid grafts, plus a fresh valid graft input on it.
struct GraftCase {
    graph: GlnGraph,
    t: usize,
    s: usize,
    m: usize,
}

fn random_graft_case(rng: &mut ChaCha8Rng) -> Option<GraftCase> {
    let n = rng.gen_range(4..=24);
    let r = rng.gen_range(2..n);
    let mut graph = canonical_nr_graph(n, r).unwrap();

    // a few prior grafts that keep the graph properly downward
    for _ in 0..rng.gen_range(0..3) {
        let Some((t, s, m)) = pick_graft(rng, &graph, true) else {
            break;
        };
        graph = graph.graft(t, s, m).unwrap();
    }
    let (t, s, m) = pick_graft(rng, &graph, false)?;
    Some(GraftCase { graph, t, s, m })
}

/// Choose (t, s, m) with column s a downward path and t < s; when
/// `keep_proper` is set, m also satisfies h_t > h_s - m so the result stays
/// properly downward and can seed further grafts.
fn pick_graft(rng: &mut ChaCha8Rng, g: &GlnGraph, keep_proper: bool) -> Option<(usize, usize, usize)> {
    let domain: Vec<usize> = g.domain().collect();
    let stocks: Vec<usize> = domain
        .iter()
        .copied()
        .filter(|&s| s > domain[0] && g.is_downward_path(s).unwrap())
        .collect();
    if stocks.is_empty() {
        return None;
    }
    let s = stocks[rng.gen_range(0..stocks.len())];
    let scions: Vec<usize> = domain.iter().copied().filter(|&t| t < s).collect();
    let t = scions[rng.gen_range(0..scions.len())];
    let h_s = g.height(s).unwrap();
    let h_t = g.height(t).unwrap();
    let m_min = if keep_proper {
        (h_s as isize - h_t as isize + 1).max(1) as usize
    } else {
        1
    };
    if m_min > h_s {
        return None;
    }
    Some((t, s, rng.gen_range(m_min..=h_s)))
}

#[test]
fn criterion_4_graft_lemma_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x67726166);
    let mut cases = 0usize;
    let mut part5_hits = 0usize;
    let mut part6_hits = 0usize;
    while cases < 1000 {
        let Some(case) = random_graft_case(&mut rng) else {
            continue;
        };
        let g1 = &case.graph;
        let (t, s, m) = (case.t, case.s, case.m);
        let h1_t = g1.height(t).unwrap();
        let h1_s = g1.height(s).unwrap();
        let dom1: Vec<usize> = g1.domain().collect();
        let paths1: Vec<usize> = dom1
            .iter()
            .copied()
            .filter(|&i| g1.is_downward_path(i).unwrap())
            .collect();
        let g2 = g1.graft(t, s, m).unwrap();

        // (1) domain
        let dom2: Vec<usize> = g2.domain().collect();
        if m == h1_s {
            let expect: Vec<usize> = dom1.iter().copied().filter(|&i| i != s).collect();
            assert_eq!(dom2, expect, "part 1 at t={t} s={s} m={m}");
        } else {
            assert_eq!(dom2, dom1, "part 1 at t={t} s={s} m={m}");
        }

        // (2) heights
        if m < h1_s {
            assert_eq!(g2.height(s).unwrap(), h1_s - m, "part 2 stock");
        }
        assert_eq!(g2.height(t).unwrap(), h1_t + m, "part 2 scion");
        for &i in &dom2 {
            if i != t && i != s {
                assert_eq!(g2.height(i), g1.height(i), "part 2 untouched column {i}");
            }
        }

        // (3) downward paths persist away from t and s
        for &i in &paths1 {
            if i != t && i != s && g2.in_domain(i) {
                assert!(g2.is_downward_path(i).unwrap(), "part 3 column {i}");
            }
        }

        // (4) ordinals of translated vertices; all other columns unchanged
        for i in 1..=m {
            assert_eq!(
                g2.ordinal_at(t, h1_t + i),
                g1.ordinal_at(s, h1_s - m + i),
                "part 4 translate i={i}"
            );
        }
        assert_eq!(
            g2.ordinal_at(t, g2.height(t).unwrap()),
            g1.ordinal_at(s, h1_s),
            "part 4 new top"
        );
        for ord in 1..=g2.n() {
            let (x, y) = g2.coord(ord);
            if x != t {
                assert_eq!(g1.coord(ord), (x, y), "part 4 untouched vertex {ord}");
            }
        }

        // (5) properly downward under the height hypothesis
        if h1_t > h1_s - m {
            part5_hits += 1;
            assert!(g2.is_properly_downward(), "part 5 at t={t} s={s} m={m}");
        }

        // (6) single upper-triangular entry flips zero to one
        let o_t = g1.ordinal_at(t, h1_t).unwrap();
        let o_s = g1.ordinal_at(s, h1_s - m + 1).unwrap();
        if o_t < o_s {
            part6_hits += 1;
            let m1 = g1.to_matrix();
            let m2 = g2.to_matrix();
            let mut diffs = Vec::new();
            for i in 0..m1.dim() {
                for j in 0..m1.dim() {
                    if m1.get(i, j) != m2.get(i, j) {
                        diffs.push((i, j));
                    }
                }
            }
            assert_eq!(diffs.len(), 1, "part 6 single entry");
            let (i, j) = diffs[0];
            assert!(i < j, "part 6 upper triangular");
            assert_eq!(m1.get(i, j), &BigInt::from(0));
            assert_eq!(m2.get(i, j), &BigInt::from(1));
        }

        // vertex count and ordinal image never change
        assert_eq!(g1.n(), g2.n());
        cases += 1;
    }
    assert!(part5_hits > 100, "part 5 hypothesis rarely exercised");
    assert!(part6_hits > 100, "part 6 hypothesis rarely exercised");
    println!(
        "PASS criterion 4: {cases} random grafts satisfied the lemma (part 5 hypothesis {part5_hits}x, part 6 hypothesis {part6_hits}x)"
    );
}

#[test]
fn criterion_5_figure_regression() {
    let g = canonical_nr_graph(10, 3).unwrap();
    let grafted = g.graft(2, 3, 2).unwrap();
    assert!(
        grafted.arrows().any(|(u, v, w)| (u, v, w) == (4, 3, 1)),
        "arrow 4 -> 3 added"
    );
    let mut expect = make_nr(10, 3).unwrap();
    expect.set(2, 3, BigInt::one()); // e_{3,4}
    assert_eq!(grafted.to_matrix(), expect);
    assert_eq!(grafted.heights().to_vec_desc(), vec![5, 3, 2]);
    println!(
        "PASS criterion 5: grafting m=2 from column 3 to column 2 on N_3 in gl_10 reproduces the figure (arrow 4->3, N_3 + e_(3,4), heights 5,3,2)"
    );
}

#[test]
fn criterion_6_laurent_identity() {
    let mut checked = 0usize;
    for n in 2..=12usize {
        for r in 1..n {
            let got = omega_inverse(n).lpow(r).unwrap();
            let mut expect = LaurentMatrix::zero(n);
            expect.set_coeff(-1, make_er(n, r).unwrap()).unwrap();
            expect.set_coeff(0, make_nr(n, r).unwrap()).unwrap();
            assert_eq!(got, expect, "omega^-{r} in gl_{n}");
            checked += 1;
        }
        let mut z_inv = LaurentMatrix::zero(n);
        z_inv.set_coeff(-1, IntMatrix::identity(n)).unwrap();
        assert_eq!(omega_inverse(n).lpow(n).unwrap(), z_inv, "omega^-{n} in gl_{n}");
        checked += 1;
    }
    println!(
        "PASS criterion 6: omega^-r = E_r z^-1 + N_r and omega^-n = z^-1 I verified exactly for {checked} (n, r) pairs"
    );
}

#[test]
fn criterion_7_dominance_criterion() {
    let mut checked = 0usize;
    for n in 2..=20usize {
        let partitions = Partition::enumerate(n);
        for r in 1..n {
            let mu = nr_type(n, r).unwrap();
            for lambda in &partitions {
                let dominates = lambda.dominates(&mu).unwrap();
                assert_eq!(
                    dominates,
                    lambda.num_parts() <= r,
                    "n={n} r={r} lambda={lambda}"
                );
                checked += 1;
            }
        }
    }
    println!(
        "PASS criterion 7: dominance of type(N_r) is equivalent to |lambda| <= r on {checked} (n, r, lambda) triples"
    );
}

#[test]
fn criterion_8_zero_completion() {
    let mut checked = 0usize;
    for n in 2..=20usize {
        for r in 1..n {
            let lambda = nr_type(n, r).unwrap();
            let c = run(
                n,
                r,
                &lambda,
                EngineOptions { check_invariants: true, trace: true },
            )
            .unwrap();
            assert!(c.x().is_zero(), "n={n} r={r}");
            assert!(c.trace.is_empty(), "n={n} r={r}");
            checked += 1;
        }
    }
    println!("PASS criterion 8: lambda = type(N_r) produced X = 0 with an empty trace on {checked} instances");
}

fn random_partition(n: usize, max_parts: usize, rng: &mut ChaCha8Rng) -> Partition {
    let mut parts: Vec<i64> = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        if parts.len() + 1 == max_parts {
            parts.push(remaining as i64);
            remaining = 0;
        } else {
            let p = rng.gen_range(1..=9usize.min(remaining));
            parts.push(p as i64);
            remaining -= p;
        }
    }
    Partition::normalize(&parts).unwrap()
}

#[test]
fn criterion_9_engine_performance_n5000() {
    let (n, r) = (5000usize, 2499usize);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e696c63);
    let lambda = random_partition(n, r, &mut rng);
    assert!(lambda.num_parts() <= r);
    assert_eq!(lambda.sum(), n);

    let start = Instant::now();
    let completion = run(
        n,
        r,
        &lambda,
        EngineOptions { check_invariants: false, trace: true },
    )
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let little = completion
        .trace
        .iter()
        .filter(|rec| rec.case == nilcomplete::CaseTag::Little)
        .count();
    assert_eq!(little, completion.little_iterations);
    // Exact graft accounting from the trace: one consuming graft per
    // primary-loop iteration, plus case 2b's extra full-column graft, plus
    // the Little-Loop grafts.  Primary iterations never exceed |lambda|.
    let case_2b_records = completion
        .trace
        .iter()
        .filter(|rec| rec.case == nilcomplete::CaseTag::C2b)
        .count();
    assert_eq!(case_2b_records % 2, 0, "case 2b always grafts twice");
    let extra_2b = case_2b_records / 2;
    let primary_iterations = completion.trace.iter().map(|rec| rec.k).max().unwrap_or(0);
    assert_eq!(completion.nnz(), completion.trace.len());
    assert_eq!(
        completion.nnz(),
        primary_iterations + little + extra_2b,
        "graft accounting"
    );
    assert!(primary_iterations <= lambda.num_parts());
    assert!(
        completion.nnz() <= lambda.num_parts() + little + extra_2b,
        "graft count {} exceeds |lambda| + littles + 2b extras = {} + {little} + {extra_2b}",
        completion.nnz(),
        lambda.num_parts()
    );
    assert!(elapsed < 1.0, "completion took {elapsed:.3} s, budget is 1 s");
    println!(
        "PASS criterion 9: n=5000 r=2499 completed in {:.3} s with {} grafts (|lambda| = {}, {} Little-Loop iterations, {} case-2b extra grafts)",
        elapsed,
        completion.nnz(),
        lambda.num_parts(),
        little,
        extra_2b
    );
}
