//! One PASS/FAIL line per acceptance criterion. Exits non-zero on failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use condorcet_core::bruhat::{enumerate_bruhat, felsner_weil_check, InversionTripleSet};
use condorcet_core::decompose::{fubini_majority, split_class};
use condorcet_core::families::{
    check_conjecture, closed_form_fold, family_word, is_singleton_class, verify_family, FamilySpec, ShakerVariant,
};
use condorcet_core::folding::{balance_check, majority_from_fold};
use condorcet_core::heap::{build_heap, commutation_classes, domain_set};
use condorcet_core::majority::{brute_force_majority, majority_of_heap, MajorityOutcome};
use condorcet_core::perm::decompose;
use condorcet_core::{Execution, HeapPoset, Permutation, ReducedWord, VoteTally};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_classes, random_word};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:.1?}, limit {limit:?}", start.elapsed())
    })
}

fn word(n: usize, letters: &[usize]) -> ReducedWord {
    ReducedWord::new(n, letters).unwrap()
}

fn running_example() -> Check {
    let start = Instant::now();
    let w = word(7, &[2, 1, 3, 2, 6, 5]);
    let pairs: Vec<String> = w
        .permutation()
        .inversion_set()
        .pairs()
        .into_iter()
        .map(|(a, b)| format!("{a}{b}"))
        .collect();
    ensure(pairs.join(",") == "13,14,23,24,57,67", || format!("Inv(w) = {pairs:?}"))?;
    let heap = build_heap(&w);
    let out = majority_of_heap(&heap, None, Execution::Parallel).map_err(|e| e.to_string())?;
    ensure(out.total == 18, || format!("|J| = {}", out.total))?;
    let mut tally: Vec<String> = (0..heap.len())
        .map(|x| {
            let (a, b) = heap.inversion(x);
            format!("{a}{b}:{}", out.tally.get(x))
        })
        .collect();
    tally.sort();
    ensure(tally.join(" ") == "13:9 14:3 23:15 24:9 57:6 67:12", || {
        format!("tally {tally:?}")
    })?;
    ensure(out.u.to_string() == "1324576" && out.v.to_string() == "3142576", || {
        format!("u={} v={}", out.u, out.v)
    })?;
    ensure(out.order.to_string() == "{1 3} {2 4} 5 7 6", || {
        format!("relation {}", out.order)
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("relation {}", out.order))
}

/// Strict decrease along covers, blocks of size at most two, ties disjoint.
fn structural(heap: &HeapPoset, out: &MajorityOutcome) -> Result<(), String> {
    if let Some((x, y)) = out.tally.decrease_violation(heap) {
        return Err(format!("tally not decreasing on cover {x} < {y}"));
    }
    ensure(out.order.max_block_size() <= 2, || {
        format!("block too large in {}", out.order)
    })?;
    let tied: Vec<usize> = out.order.ties().into_iter().flat_map(|(a, b)| [a, b]).collect();
    let distinct: BTreeSet<usize> = tied.iter().copied().collect();
    ensure(distinct.len() == tied.len(), || {
        format!("overlapping ties in {}", out.order)
    })
}

fn random_positive_tally<R: Rng>(rng: &mut R, n: usize, domain: &BTreeSet<Permutation>) -> VoteTally {
    let mut rho = VoteTally::new(n);
    for w in domain {
        rho.set(w.clone(), rng.gen_range(1..=1000)).unwrap();
    }
    rho
}

fn oracle_sweep() -> (Check, Check) {
    let start = Instant::now();
    let mut instances = 0usize;
    let mut structural_failures = Vec::new();
    let mut run = |heap: &HeapPoset, rho: &VoteTally, uniform: bool| -> Result<(), String> {
        let out = majority_of_heap(heap, (!uniform).then_some(rho), Execution::Parallel).map_err(|e| e.to_string())?;
        let oracle = brute_force_majority(rho).map_err(|e| e.to_string())?;
        instances += 1;
        if let Err(e) = structural(heap, &out) {
            structural_failures.push(e);
        }
        ensure(oracle == out.order.to_relation(), || {
            format!("relation {} vs oracle {oracle:?}", out.order)
        })
    };
    let mut sweep = || -> Result<(), String> {
        for class in all_classes(5) {
            let heap = build_heap(&class.representative);
            let rho = VoteTally::uniform(5, &domain_set(&heap)).unwrap();
            run(&heap, &rho, true).map_err(|e| format!("{}: {e}", class.representative))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for i in 0..50 {
            let n = if i % 2 == 0 { 6 } else { 7 };
            let w = random_word(&mut rng, n);
            let heap = build_heap(&w);
            let domain = domain_set(&heap);
            for _ in 0..100 {
                let rho = random_positive_tally(&mut rng, n, &domain);
                run(&heap, &rho, false).map_err(|e| format!("{w}: {e}"))?;
            }
        }
        Ok(())
    };
    let result = sweep().and_then(|_| within(start, Duration::from_secs(600)));
    let second = match &result {
        Ok(()) => Ok(format!(
            "{instances} instances agree with brute force in {:.1?}",
            start.elapsed()
        )),
        Err(e) => Err(e.clone()),
    };
    let third = if structural_failures.is_empty() && result.is_ok() {
        Ok(format!("{instances} instances, zero violations"))
    } else if let Some(e) = structural_failures.first() {
        Err(format!("{} violations, first: {e}", structural_failures.len()))
    } else {
        Err("sweep did not complete".into())
    };
    (second, third)
}

const N16_TABLE: [&str; 6] = [
    "{1 2} {3 4} {5 6} {7 8} {9 10} {11 12} {13 14} {15 16}",
    "2 {1 4} {3 6} {5 8} {7 10} {9 12} {11 14} {13 16} 15",
    "{2 4} {1 6} {3 8} {5 10} {7 12} {9 14} {11 16} {13 15}",
    "4 {2 6} {1 8} {3 10} {5 12} {7 14} {9 16} {11 15} 13",
    "{4 6} {2 8} {1 10} {3 12} {5 14} {7 16} {9 15} {11 13}",
    "6 {4 8} {2 10} {1 12} {3 14} {5 16} {7 15} {9 13} 11",
];

fn family_instances() -> Vec<(FamilySpec, &'static str)> {
    let mut out: Vec<(FamilySpec, &'static str)> = N16_TABLE
        .iter()
        .enumerate()
        .map(|(p, row)| {
            (
                FamilySpec::BipartitePower {
                    n: 16,
                    p,
                    trailing_odd: true,
                },
                *row,
            )
        })
        .collect();
    out.push((FamilySpec::LexFirst { n: 5 }, "3 {2 4} {1 5}"));
    out.push((FamilySpec::Diamond { k: 4 }, "{1 5} {2 6} {3 7} {4 8}"));
    out.push((
        FamilySpec::CocktailShaker {
            n: 6,
            variant: ShakerVariant::Forward,
        },
        "6 2 3 {1 4} 5",
    ));
    out.push((
        FamilySpec::CocktailShaker {
            n: 6,
            variant: ShakerVariant::Reverse,
        },
        "1 5 4 {3 6} 2",
    ));
    out
}

fn family_table() -> Check {
    let mut slowest = Duration::ZERO;
    for (spec, expected) in family_instances() {
        let start = Instant::now();
        let report = verify_family(&spec, Execution::Parallel).map_err(|e| format!("{spec}: {e}"))?;
        ensure(report.computed.to_string() == expected, || {
            format!("{spec}: got {}", report.computed)
        })?;
        within(start, Duration::from_secs(60)).map_err(|e| format!("{spec}: {e}"))?;
        slowest = slowest.max(start.elapsed());
    }
    Ok(format!(
        "{} instances verbatim, slowest {slowest:.1?}",
        family_instances().len()
    ))
}

fn folding_consistency() -> Check {
    let mut elements = 0;
    for (spec, _) in family_instances() {
        let heap = build_heap(&family_word(&spec).map_err(|e| e.to_string())?);
        let fold = closed_form_fold(&spec, &heap)
            .map_err(|e| format!("{spec}: {e}"))?
            .ok_or_else(|| format!("{spec}: no closed-form fold"))?;
        let out = majority_of_heap(&heap, None, Execution::Parallel).map_err(|e| e.to_string())?;
        let folded = majority_from_fold(&heap, &fold).map_err(|e| e.to_string())?;
        ensure(folded == (out.u.clone(), out.v.clone()), || {
            format!("{spec}: fold gives {} / {}", folded.0, folded.1)
        })?;
        ensure(
            balance_check(&heap, fold.phi(), Execution::Parallel).map_err(|e| e.to_string())?,
            || format!("{spec}: balance fails"),
        )?;
        elements += heap.len();
    }
    Ok(format!(
        "{} instances, balance at {elements} heap elements",
        family_instances().len()
    ))
}

fn decomposition() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for w in common::all_perms(6) {
        if w.length() == 0 || decompose(&w).len() < 2 {
            continue;
        }
        let rw = w.reduced_word();
        let fubini = fubini_majority(&split_class(&rw).map_err(|e| e.to_string())?, Execution::Parallel)
            .map_err(|e| e.to_string())?;
        let direct = majority_of_heap(&build_heap(&rw), None, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure(
            (&fubini.u, &fubini.v, &fubini.order) == (&direct.u, &direct.v, &direct.order),
            || format!("{w}: fubini differs"),
        )?;
        checked += 1;
    }
    let dec = split_class(&word(7, &[2, 1, 3, 2, 6, 5])).map_err(|e| e.to_string())?;
    let out = fubini_majority(&dec, Execution::Parallel).map_err(|e| e.to_string())?;
    let parts: Vec<(String, String)> = out
        .per_block
        .iter()
        .map(|b| (b.u.to_string(), b.v.to_string()))
        .collect();
    ensure(
        parts == [("1324".into(), "3142".into()), ("132".into(), "132".into())],
        || format!("blocks {parts:?}"),
    )?;
    ensure(out.u.to_string() == "1324576" && out.v.to_string() == "3142576", || {
        format!("u={} v={}", out.u, out.v)
    })?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("{checked} decomposable permutations of S6"))
}

fn triples(label: &str) -> InversionTripleSet {
    label
        .split(',')
        .filter(|t| *t != "-")
        .map(|t| {
            let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            (d[0], d[1], d[2])
        })
        .collect()
}

fn bruhat_lattice() -> Check {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 3..=5 {
        let poset = enumerate_bruhat(n, 10_000, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure(felsner_weil_check(&poset), || format!("cover check fails for n={n}"))?;
        counts.push(poset.nodes.len());
    }
    ensure(counts == [2, 8, 62], || format!("node counts {counts:?}"))?;
    let poset = enumerate_bruhat(5, 10_000, Execution::Parallel).map_err(|e| e.to_string())?;
    let fixture = include_str!("data/b52_lattice.txt");
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for line in fixture.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts[0] == "node" {
            nodes.insert((triples(parts[1]).bits(), parts[2].to_string()));
        } else {
            let (a, b) = (triples(parts[1]).bits(), triples(parts[2]).bits());
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let got_nodes: BTreeSet<(u128, String)> = poset
        .nodes
        .iter()
        .map(|n| (n.triples.bits(), n.majority.compact()))
        .collect();
    ensure(got_nodes == nodes, || "node labels differ from the fixture".into())?;
    let bits = |id: usize| poset.nodes[id].triples.bits();
    let got_edges: BTreeSet<(u128, u128)> = poset
        .edges
        .iter()
        .map(|e| (bits(e.lower).min(bits(e.upper)), bits(e.lower).max(bits(e.upper))))
        .collect();
    ensure(got_edges == edges, || "edges differ from the fixture".into())?;
    let dot = poset.to_dot();
    ensure(
        dot.contains("\"3{24}{15}\\nnone\"") && dot.contains("\"{15}{24}3\\nall\""),
        || "bottom/top labels".into(),
    )?;
    let low = poset.node_by_triples(triples("123,124")).ok_or("no node 123,124")?;
    let high = poset
        .node_by_triples(triples("123,124,134"))
        .ok_or("no node 123,124,134")?;
    ensure(
        low.majority.compact() == "34215" && high.majority.compact() == "43125",
        || "34215 -> 43125 cover".into(),
    )?;
    ensure(
        poset.edges.iter().any(|e| e.lower == low.id && e.upper == high.id),
        || "missing cover adding 134".into(),
    )?;
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{} nodes, {} edges, counts {counts:?}",
        poset.nodes.len(),
        poset.edges.len()
    ))
}

fn conjecture_evidence() -> Check {
    let (mut holds, mut total) = (0, 0);
    let mut counterexamples = Vec::new();
    for n in 2..=8 {
        for p in 1..=n / 2 {
            let report = check_conjecture(n, p, 40, Execution::Parallel).map_err(|e| format!("n={n} p={p}: {e}"))?;
            // brute force regardless of the library's own oracle cutoff
            let heap = build_heap(&report.word);
            let rho = VoteTally::uniform(n, &domain_set(&heap)).map_err(|e| e.to_string())?;
            let oracle = brute_force_majority(&rho).map_err(|e| e.to_string())?;
            ensure(oracle == report.computed.to_relation(), || {
                format!("n={n} p={p}: oracle disagrees")
            })?;
            ensure(report.oracle_agrees != Some(false), || {
                format!("n={n} p={p}: built-in oracle disagrees")
            })?;
            total += 1;
            if report.holds {
                holds += 1;
            } else {
                counterexamples.push(format!("(n={n},p={p}: {})", report.computed));
            }
        }
    }
    Ok(format!(
        "{total} verdicts; conjecture holds in {holds}, fails in {}",
        counterexamples.join(" ")
    ))
}

fn singleton_classes() -> Check {
    for n in 1..=8 {
        for variant in ShakerVariant::ALL {
            let w = family_word(&FamilySpec::CocktailShaker { n, variant }).map_err(|e| e.to_string())?;
            ensure(is_singleton_class(&w), || {
                format!("cocktail shaker n={n} {variant:?} not a singleton")
            })?;
        }
    }
    let mut counts = Vec::new();
    for n in 3..=5 {
        let classes = commutation_classes(&Permutation::longest(n), 1_000_000).map_err(|e| e.to_string())?;
        counts.push(classes.iter().filter(|c| c.size == Some(1)).count());
    }
    ensure(counts[1] == 4 && counts[2] == 4, || {
        format!("singleton counts for n=3,4,5: {counts:?}")
    })?;
    Ok(format!(
        "cocktail shakers n<=8 are singletons; w0 singleton classes for n=3,4,5: {counts:?}"
    ))
}

fn main() {
    let (second, third) = oracle_sweep();
    let results: Vec<(usize, &str, Check)> = vec![
        (1, "running example", running_example()),
        (2, "oracle equivalence sweep", second),
        (3, "strict decrease and simple ties", third),
        (4, "family table", family_table()),
        (5, "folding consistency", folding_consistency()),
        (6, "decomposition", decomposition()),
        (7, "B(5,2) lattice", bruhat_lattice()),
        (8, "conjecture evidence", conjecture_evidence()),
        (9, "singleton classes", singleton_classes()),
    ];
    let mut failed = false;
    for (id, name, result) in results {
        match result {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(why) => {
                failed = true;
                println!("FAIL {id} {name}: {why}");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
