//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tricert::batch::{bench_graph, certify_and_verify_all, time_certify, Algo};
use tricert::cactus::{blob_certificates, build_cactus, three_edge_components, verify_cactus, Cactus, CactusEdge};
use tricert::chains::analyze;
use tricert::intervals::{components, perturb_key, End, Interval};
use tricert::linear::run_with_root;
use tricert::oracle::{brute_three_components, brute_two_cuts, edge_connectivity};
use tricert::verify::{verify_certificate, verify_cut};
use tricert::{Certificate, MaderPath, MultiGraph};

#[global_allocator]
static ALLOC: tricert::hugealloc::HugePages = tricert::hugealloc::HugePages;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn min_time<T>(reps: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed()
        })
        .min()
        .unwrap()
}

const SEVEN_CHAINS: &str = "1 0 0 cycle -: 6 4 3 2 1 0\n\
                            2 0 5 unclassified 1: 7 5\n\
                            3 1 3 nested 1: 8\n\
                            4 2 6 interlacing 2: 9\n\
                            5 3 4 nested 1: 10\n";

fn seven_vertex_example() -> Outcome {
    let g = common::fixture("seven.graph");
    let text = analyze(&g, 0).map_err(|c| format!("not 2EC: {c}"))?.to_text();
    check(text == SEVEN_CHAINS, || format!("chains differ:\n{text}"))?;
    let order = run_with_root(&g, 0).chain_order();
    check(order == Some(vec![1, 2, 4, 3, 5]), || format!("order {order:?}"))?;
    let t = min_time(5, || (analyze(&g, 0).unwrap().to_text(), run_with_root(&g, 0)));
    check(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("chains and order [1, 2, 4, 3, 5] exact, {t:?}"))
}

fn cut_ok(g: &MultiGraph, c: &Certificate) -> bool {
    match *c {
        Certificate::TwoCut(a, b) => verify_cut(g, a, b),
        Certificate::Bridge(e) => {
            let mut h = g.edges().to_vec();
            h.remove(e);
            !MultiGraph::new(g.n(), h).is_connected()
        }
        _ => true,
    }
}

fn oracle_equivalence(corpus: &[MultiGraph], conn: &[usize]) -> Outcome {
    let t = Instant::now();
    let res = certify_and_verify_all(corpus, Algo::Linear);
    let mut bad = Vec::new();
    for (i, (g, (c, v))) in corpus.iter().zip(&res).enumerate() {
        if c.is_mader() != (conn[i] >= 3) || v.is_err() || !cut_ok(g, c) {
            bad.push(i);
        }
    }
    let el = t.elapsed();
    check(bad.is_empty(), || format!("{} mismatches, first graph {}", bad.len(), bad[0]))?;
    check(el < Duration::from_secs(30), || format!("took {el:?}"))?;
    let yes = res.iter().filter(|(c, _)| c.is_mader()).count();
    Ok(format!("{} graphs ({yes} Mader), 0 mismatches, {el:.2?}", corpus.len()))
}

fn differential(corpus: &[MultiGraph]) -> Outcome {
    let lin = certify_and_verify_all(corpus, Algo::Linear);
    let gre = certify_and_verify_all(corpus, Algo::Greedy);
    let bad = lin
        .iter()
        .zip(&gre)
        .filter(|((a, va), (b, vb))| a.variant() != b.variant() || va.is_err() || vb.is_err())
        .count();
    check(bad == 0, || format!("{bad} mismatches"))?;
    Ok(format!("{} graphs, 0 mismatches", corpus.len()))
}

fn drop_edge(g: &MultiGraph, paths: &[MaderPath], e: usize) -> (MultiGraph, Vec<MaderPath>) {
    let mut edges = g.edges().to_vec();
    edges.remove(e);
    let paths = paths
        .iter()
        .map(|p| MaderPath {
            chain: p.chain,
            edges: p.edges.iter().filter(|&&f| f != e).map(|&f| if f > e { f - 1 } else { f }).collect(),
        })
        .collect();
    (MultiGraph::new(g.n(), edges), paths)
}

fn mutate(g: &MultiGraph, paths: &[MaderPath], rng: &mut ChaCha8Rng) -> (MultiGraph, Vec<MaderPath>) {
    let mut p = paths.to_vec();
    let k = p.len();
    let i = rng.gen_range(0..k);
    let j = rng.gen_range(0..k);
    match rng.gen_range(0..7) {
        0 => {
            p.remove(i);
        }
        1 => p.swap(i, j),
        2 => {
            if !p[i].edges.is_empty() {
                let x = rng.gen_range(0..p[i].edges.len());
                let e = p[i].edges.remove(x);
                let at = rng.gen_range(0..=p[j].edges.len());
                p[j].edges.insert(at, e);
            }
        }
        3 => p[i].edges.reverse(),
        4 => {
            let x = rng.gen_range(0..p[i].edges.len());
            p[i].edges[x] = rng.gen_range(0..g.m());
        }
        5 => {
            let e = p[i].edges[0];
            p[j].edges.push(e);
        }
        _ => return drop_edge(g, &p, rng.gen_range(0..g.m())),
    }
    (g.clone(), p)
}

fn adversarial(corpus: &[MultiGraph], conn: &[usize]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fixtures: Vec<_> = corpus
        .iter()
        .zip(conn)
        .filter(|(g, &c)| c >= 3 && g.n() >= 5)
        .map(|(g, _)| g)
        .take(50)
        .collect();
    check(fixtures.len() == 50, || format!("only {} fixtures", fixtures.len()))?;
    let (mut rejected, mut revalidated, mut unsound) = (0, 0, 0);
    for g in fixtures {
        let Certificate::Mader(paths) = run_with_root(g, 0) else {
            return Err("fixture not certified".into());
        };
        for _ in 0..100 {
            let (h, q) = mutate(g, &paths, &mut rng);
            match verify_certificate(&h, &Certificate::Mader(q)) {
                Err(_) => rejected += 1,
                Ok(()) if edge_connectivity(&h) >= 3 => revalidated += 1,
                Ok(()) => unsound += 1,
            }
        }
    }
    check(unsound == 0, || format!("{unsound} unsound acceptances"))?;
    Ok(format!("5000 mutations: {rejected} rejected, {revalidated} revalidated, 0 unsound"))
}

fn brute_labels(ivs: &[Interval]) -> Vec<usize> {
    let k = ivs.len();
    let ov = |x: &Interval, y: &Interval| x.lo <= y.lo && y.lo <= x.hi && x.hi <= y.hi;
    let mut label: Vec<usize> = (0..k).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..k {
            for j in 0..k {
                if i != j && ov(&ivs[i], &ivs[j]) && label[i] != label[j] {
                    let m = label[i].min(label[j]);
                    label[i] = m;
                    label[j] = m;
                    changed = true;
                }
            }
        }
    }
    // renumber by first appearance
    let mut map = vec![usize::MAX; k];
    let mut next = 0;
    label
        .into_iter()
        .map(|l| {
            if map[l] == usize::MAX {
                map[l] = next;
                next += 1;
            }
            map[l]
        })
        .collect()
}

fn interval_forest() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..1000 {
        let k = rng.gen_range(0..=50);
        let ivs: Vec<_> = (0..k)
            .map(|t| {
                let a = rng.gen_range(0..=20);
                Interval::new(a, rng.gen_range(a..=20), t)
            })
            .collect();
        let got = components(&ivs);
        check(got == brute_labels(&ivs), || format!("set {round} differs: {ivs:?}"))?;
    }
    let iv = |a, b| Interval::new(a, b, 0);
    let rules = [
        perturb_key(&iv(1, 3), 1, End::Left) < perturb_key(&iv(1, 5), 0, End::Left),
        perturb_key(&iv(3, 5), 1, End::Left) < perturb_key(&iv(1, 3), 0, End::Right),
        perturb_key(&iv(2, 4), 0, End::Right) > perturb_key(&iv(1, 4), 1, End::Right),
        perturb_key(&iv(2, 4), 0, End::Left) < perturb_key(&iv(2, 4), 1, End::Left)
            && perturb_key(&iv(2, 4), 0, End::Right) < perturb_key(&iv(2, 4), 1, End::Right),
    ];
    check(rules.iter().all(|&r| r), || format!("rules {rules:?}"))?;
    Ok("1000 sets exact, rules 1-4 hold".into())
}

fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for x in &mut v {
        x.sort_unstable();
    }
    v.sort();
    v
}

fn cactus_exact(graphs: &[&MultiGraph]) -> Outcome {
    let mut count = 0;
    for (i, g) in graphs.iter().enumerate() {
        if g.n() > 12 || edge_connectivity(g) != 2 {
            continue;
        }
        count += 1;
        let cx = build_cactus(g).map_err(|e| format!("graph {i}: {e}"))?;
        let mut want = brute_two_cuts(g);
        want.sort_unstable();
        check(cx.cut_pairs() == want, || format!("graph {i}: cut pairs differ"))?;
        let (a, b) = (sorted(three_edge_components(&cx)), sorted(brute_three_components(g)));
        check(a == b, || format!("graph {i}: components {a:?} vs {b:?}"))?;
    }
    let cx = build_cactus(&common::fixture("ring9.graph")).map_err(|e| e.to_string())?;
    let blobs = sorted(cx.blobs.clone());
    check(blobs == vec![vec![0, 8], vec![1, 4, 5], vec![2, 3], vec![6, 7]], || format!("blobs {blobs:?}"))?;
    let cycles = sorted(cx.cycle_edges());
    check(cycles == vec![vec![0, 5, 7], vec![1, 3]], || format!("cycles {cycles:?}"))?;
    Ok(format!("{count} graphs exact, nine-vertex ring reproduced"))
}

fn mutate_cactus(
    g: &MultiGraph,
    cx: &Cactus,
    certs: &[Option<Certificate>],
    kind: usize,
    rng: &mut ChaCha8Rng,
) -> (Cactus, Vec<Option<Certificate>>) {
    let mut c = cx.clone();
    let mut certs = certs.to_vec();
    let nb = c.blobs.len();
    let b = rng.gen_range(0..nb);
    let other = (b + rng.gen_range(1..nb)) % nb;
    let e = rng.gen_range(0..c.cedges.len());
    match kind {
        0 => {
            let x = rng.gen_range(0..c.blobs[b].len());
            let v = c.blobs[b].remove(x);
            c.blobs[other].push(v);
            c.blobs[other].sort_unstable();
        }
        1 => {
            c.cedges.remove(e);
        }
        2 => c.cedges[e].cycle = (c.cedges[e].cycle + 1 + rng.gen_range(0..c.cycles)) % (c.cycles + 1),
        3 => {
            let ce = c.cedges[e];
            let bad = (0..nb).find(|&x| x != ce.a && x != ce.b).unwrap_or(nb);
            c.cedges[e] = CactusEdge { a: bad, ..ce };
        }
        4 => {
            let ce = c.cedges[e];
            c.cedges.insert(e, ce);
        }
        5 => {
            let ce = c.cedges[e];
            let (x, y) = (ce.a.min(ce.b), ce.a.max(ce.b));
            let moved = c.blobs.remove(y);
            c.blobs[x].extend(moved);
            c.blobs[x].sort_unstable();
            certs.remove(y);
            let shift = |z: usize| if z == y { x } else if z > y { z - 1 } else { z };
            for ce in &mut c.cedges {
                ce.a = shift(ce.a);
                ce.b = shift(ce.b);
            }
        }
        6 => {
            let i = certs.iter().position(Option::is_some).unwrap();
            certs[i] = None;
        }
        _ => {
            let inside = (0..g.m()).find(|f| c.cedges.iter().all(|ce| ce.edge != *f)).unwrap();
            c.cedges[e].edge = inside;
        }
    }
    (c, certs)
}

fn cactus_round_trip(graphs: &[&MultiGraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut ok, mut fixtures, mut rejected) = (0, 0, 0);
    let ring = common::fixture("ring9.graph");
    let pair = common::fixture("two_k4.graph");
    for (i, g) in graphs.iter().copied().chain([&ring, &pair]).enumerate() {
        let Ok(cx) = build_cactus(g) else { continue };
        let certs = blob_certificates(g, &cx);
        verify_cactus(g, &cx, &certs).map_err(|e| format!("graph {i}: {e}"))?;
        ok += 1;
        let multi = certs.iter().filter(|c| c.is_some()).count();
        if cx.blobs.len() < 2 || multi == 0 || (fixtures >= 40 && i < graphs.len()) {
            continue;
        }
        fixtures += 1;
        for r in 0..20 {
            let (c, k) = mutate_cactus(g, &cx, &certs, r % 8, &mut rng);
            check(verify_cactus(g, &c, &k).is_err(), || format!("graph {i}: mutation {} accepted", r % 8))?;
            rejected += 1;
        }
    }
    Ok(format!("{ok} cacti verified, {rejected} mutations over {fixtures} fixtures all rejected"))
}

fn linearity() -> Outcome {
    let steps = [(10_000, 32), (100_000, 16), (1_000_000, 8)];
    let mut ratios = Vec::new();
    let mut big = Duration::ZERO;
    let mut report = Vec::new();
    for (m, seeds) in steps {
        let mut t = [Duration::ZERO; 2];
        for s in 0..seeds {
            for (k, mm) in [m, 2 * m].into_iter().enumerate() {
                let g = bench_graph(mm, s);
                let reps = if mm >= 1_000_000 { 2 } else { 3 };
                let d = min_time(reps, || run_with_root(&g, 0));
                t[k] += d;
                if mm == 1_000_000 {
                    big = big.max(d);
                }
            }
        }
        let r = t[1].as_secs_f64() / t[0].as_secs_f64();
        ratios.push(r);
        report.push(format!("{m}: {r:.2}"));
    }
    let mut greedy = Vec::new();
    for m in [10_000, 100_000] {
        let t: Vec<f64> = [m, 2 * m]
            .iter()
            .map(|&mm| time_certify(&bench_graph(mm, 0), Algo::Greedy, 3).as_secs_f64())
            .collect();
        greedy.push(format!("{m}: {:.2}", t[1] / t[0]));
    }
    let detail = format!(
        "linear ratios [{}], m=1e6 in {big:.2?}; greedy ratios [{}] (informational)",
        report.join(", "),
        greedy.join(", ")
    );
    check(ratios.iter().all(|&r| r <= 2.5) && big < Duration::from_secs(5), || detail.clone())?;
    Ok(detail)
}

fn chain_count(graphs: &[&MultiGraph]) -> Outcome {
    let mut count = 0;
    for (i, g) in graphs.iter().enumerate() {
        let Ok(cd) = analyze(g, 0) else { continue };
        count += 1;
        check(cd.len() + g.n() == g.m() + 1, || format!("graph {i}: {} chains, n {} m {}", cd.len(), g.n(), g.m()))?;
    }
    Ok(format!("{count} 2EC graphs, all m - n + 1"))
}

fn main() -> ExitCode {
    let corpus = common::corpus();
    let extra = common::cut_corpus();
    let conn: Vec<usize> = corpus.iter().map(edge_connectivity).collect();
    let all: Vec<&MultiGraph> = corpus.iter().chain(&extra).collect();

    let criteria: Vec<Criterion> = vec![
        ("seven-vertex example", Box::new(seven_vertex_example)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus, &conn))),
        ("linear vs greedy", Box::new(|| differential(&corpus))),
        ("verifier mutations", Box::new(|| adversarial(&corpus, &conn))),
        ("interval forest", Box::new(interval_forest)),
        ("cactus exactness", Box::new(|| cactus_exact(&all))),
        ("cactus round trip", Box::new(|| cactus_round_trip(&all))),
        ("linearity", Box::new(linearity)),
        ("chain count", Box::new(|| chain_count(&all))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match out {
            Ok(d) => println!("criterion {}: PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {d}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
