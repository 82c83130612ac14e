//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod oracles;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sprout_core::canon::isomorphic;
use sprout_core::fixtures;
use sprout_core::gt::TransformationGraph;
use sprout_core::main_tree::{order_in_main_tree, ramification_report, Location, OrderCase};
use sprout_core::phi::phi;
use sprout_core::random::{random_sprout, RandomConfig};
use sprout_core::refine::square;
use sprout_core::{
    Address, AddressClass, Admissibility, AnalysisError, IndexDiagram, PhiDynamics, Sprout, Vertex,
};

type Check = Result<String, String>;

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    dir.join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
}

fn sprout_cmd(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sprout"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
    }
}

fn json_of(args: &[&str]) -> Result<(i32, Value), String> {
    let run = sprout_cmd(args);
    let value = serde_json::from_str(&run.stdout).map_err(|e| format!("{args:?}: bad JSON: {e}"))?;
    Ok((run.code, value))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn addr(text: &str) -> Address {
    Address::parse(text).expect("well-formed address")
}

fn addresses_of(v: &Value) -> Vec<String> {
    v["addresses"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|x| x.as_str().or(x["address"].as_str()).unwrap_or_default().to_string())
                .collect()
        })
        .unwrap_or_default()
}

fn fig1_addresses() -> Check {
    let f = fixture("fig1.json");
    let run = sprout_cmd(&["addresses", &f, "-p", "p4"]);
    ensure(run.code == 0, format!("exit {}", run.code))?;
    let line = run.stdout.trim_end();
    ensure(line == "p4 1(12)^∞ 112121212…", format!("got `{line}`"))?;

    // p5 = S_1(p4) = S_2(p3).
    let (_, p3) = json_of(&["addresses", &f, "-p", "p3", "--format", "json"])?;
    let (_, p4) = json_of(&["addresses", &f, "-p", "p4", "--format", "json"])?;
    let (_, p5) = json_of(&["addresses", &f, "-p", "p5", "--format", "json"])?;
    let one = |v: &Value| addr(&addresses_of(&v[0])[0]);
    let expected: BTreeSet<Address> = [one(&p4).prefixed(&[1]), one(&p3).prefixed(&[2])].into();
    let got: BTreeSet<Address> = addresses_of(&p5[0]).iter().map(|a| addr(a)).collect();
    ensure(got == expected, format!("p5 addresses {got:?}"))?;
    let expanded: Vec<&str> = p5[0]["addresses"].as_array().unwrap().iter().map(|a| a["expanded"].as_str().unwrap()).collect();
    ensure(expanded.contains(&"111212121…"), format!("p5 renderings {expanded:?}"))?;
    Ok(format!("p4 = {line}; p5 = {{{}}}", addresses_of(&p5[0]).join(", ")))
}

fn fig2_verdicts() -> Check {
    let (code, left) = json_of(&["validate", &fixture("fig2L.json"), "--format", "json"])?;
    ensure(code == 1, format!("fig2L exit {code}"))?;
    ensure(left["is_correct"] == false, "fig2L reported correct")?;
    let witness = left["violations"]
        .as_array()
        .into_iter()
        .flatten()
        .find(|v| v["rule"] == "not-correctly-defined")
        .and_then(|v| v["witness"].as_str())
        .ok_or("no not-correctly-defined violation")?
        .to_string();
    ensure(witness == "p3", format!("witness {witness}"))?;
    let (code, right) = json_of(&["validate", &fixture("fig2R.json"), "--format", "json"])?;
    ensure(code == 1, format!("fig2R exit {code}"))?;
    ensure(right["is_correct"] == true && right["is_regular"] == false, "fig2R verdict")?;
    Ok(format!("fig2L not correctly defined at {witness}; fig2R correct, not regular"))
}

fn fig3_inadmissible() -> Check {
    let (code, v) = json_of(&["admissible", &fixture("fig3.json"), "--format", "json"])?;
    ensure(code == 1 && v["admissible"] == false, format!("exit {code}, {v}"))?;
    let (p, q, shared) = (v["p"].as_str().unwrap(), v["q"].as_str().unwrap(), addr(v["shared"].as_str().unwrap()));
    let s = fixtures::fig3();
    let d = IndexDiagram::new(&s);
    let reads = |n: &str| d.reads(s.find_point(n).unwrap(), &shared);
    ensure(p != q && reads(p) && reads(q), "witness address not shared")?;
    Ok(format!("{p} and {q} share {shared}"))
}

fn fig4_classes() -> Check {
    let (_, v) = json_of(&["classify", &fixture("fig4.json"), "--format", "json"])?;
    let class = |name: &str| -> Value {
        v.as_array().unwrap().iter().find(|r| r["point"] == name).map(|r| r["class"].clone()).unwrap_or_default()
    };
    ensure(class("p2")["class"] == "uncountable", format!("p2 {}", class("p2")))?;
    for p in ["p1", "p3"] {
        ensure(class(p)["class"] == "finite" && class(p)["count"] == 1, format!("{p} {}", class(p)))?;
    }
    Ok("p2 uncountable; p1, p3 finite(1)".into())
}

fn report_rows(name: &str) -> Result<Vec<Value>, String> {
    let (code, v) = json_of(&["report", &fixture(name)])?;
    ensure(code == 0, format!("{name}: report exit {code}"))?;
    Ok(v.as_array().cloned().unwrap_or_default())
}

fn order_at(rows: &[Value], location: &str) -> Option<u64> {
    rows.iter().find(|r| r["location"] == location).and_then(|r| r["ord_main_tree"].as_u64())
}

fn fig6_orders() -> Check {
    let rows = report_rows("fig6.json")?;
    ensure(order_at(&rows, "p2") == Some(2), "Ord(p2) ≠ 2")?;
    ensure(order_at(&rows, "p3") == Some(3), "Ord(p3) ≠ 3")?;
    let ram = rows
        .iter()
        .find(|r| r["boundary"] == false && r["addresses"].as_array().is_some_and(|a| a.iter().any(|x| x == "4(3)^∞")))
        .ok_or("no point at 4(3)^∞")?;
    ensure(ram["ord_main_tree"] == 3, format!("order at 4(3)^∞ is {}", ram["ord_main_tree"]))?;
    for r in rows.iter().filter(|r| r["boundary"] == true) {
        let loc = r["location"].as_str().unwrap_or_default();
        if loc != "p2" && loc != "p3" {
            ensure(r["ord_main_tree"] == 1, format!("{loc} is not an endpoint"))?;
        }
    }
    Ok("Ord(p2) = 2, Ord(p3) = 3, Ord(π(4(3)^∞)) = 3, other boundary points endpoints".into())
}

/// Vertices of the transformation graph and its subset arcs, computed from
/// the tree paths alone: images `φ_i(Q)` of size at least three reachable
/// from `P`.
fn subset_graph_by_paths(s: &Sprout) -> (Vec<BTreeSet<String>>, BTreeSet<(usize, usize, u32)>) {
    let all: BTreeSet<String> = s.points().map(|p| s.point_name(p).to_string()).collect();
    let image = |q: &BTreeSet<String>, i: u32| -> BTreeSet<String> {
        q.iter().map(|p| oracles::phi_by_path(s, i, p)).collect()
    };
    let m = s.num_whites() as u32;
    let mut vertices = vec![all];
    let mut k = 0;
    while k < vertices.len() {
        for i in 1..=m {
            let next = image(&vertices[k], i);
            if next.len() >= 3 && !vertices.contains(&next) {
                vertices.push(next);
            }
        }
        k += 1;
    }
    let mut arcs = BTreeSet::new();
    for (u, q) in vertices.iter().enumerate() {
        for i in 1..=m {
            if let Some(v) = vertices.iter().position(|x| *x == image(q, i)) {
                arcs.insert((u, v, i));
            }
        }
    }
    (vertices, arcs)
}

/// Whether some bijection of vertices carries `a` onto `b`, with the first
/// vertex (`P`) fixed.
fn same_labeled_graph(a: &BTreeSet<(usize, usize, u32)>, b: &BTreeSet<(usize, usize, u32)>, n: usize) -> bool {
    fn permutations(rest: Vec<usize>) -> Vec<Vec<usize>> {
        if rest.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (k, &x) in rest.iter().enumerate() {
            let mut others = rest.clone();
            others.remove(k);
            for mut tail in permutations(others) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }
    a.len() == b.len()
        && permutations((1..n).collect()).into_iter().any(|tail| {
            let mut perm = vec![0];
            perm.extend(tail);
            a.iter().map(|&(u, v, l)| (perm[u], perm[v], l)).collect::<BTreeSet<_>>() == *b
        })
}

fn fig7_ramification() -> Check {
    let rows = report_rows("fig7.json")?;
    let s = fixtures::fig7();
    for a in ["(34)^∞", "2(34)^∞", "(43)^∞", "5(43)^∞"] {
        let order = order_at(&rows, &format!("π({a})")).ok_or(format!("{a} missing"))?;
        ensure(order >= 3, format!("{a} has order {order}"))?;
    }

    let (code, g) = json_of(&["gt", &fixture("fig7.json"), "--format", "json"])?;
    ensure(code == 0, format!("gt exit {code}"))?;
    let subsets: Vec<BTreeSet<String>> = serde_json::from_value(g["subsets"].clone()).map_err(|e| e.to_string())?;
    let arcs: BTreeSet<(usize, usize, u32)> = g["subset_arcs"]
        .as_array()
        .ok_or("no subset arcs")?
        .iter()
        .map(|a| (a["from"].as_u64().unwrap() as usize, a["to"].as_u64().unwrap() as usize, a["label"].as_u64().unwrap() as u32))
        .collect();

    // The graph drawn for this sprout: P → Q1 by 2 and 4, P → Q2 by 3 and 5,
    // Q1 → Q2 by 3, Q2 → Q1 by 4. Its infinite walks read exactly the four
    // addresses above.
    let drawn: BTreeSet<(usize, usize, u32)> = [(0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 2, 5), (1, 2, 3), (2, 1, 4)].into();
    ensure(subsets.len() == 3 && same_labeled_graph(&arcs, &drawn, 3), format!("emitted arcs {arcs:?}"))?;

    let (vertices, by_paths) = subset_graph_by_paths(&s);
    ensure(vertices.len() == subsets.len(), "vertex count differs from the path oracle")?;
    let relabeled: BTreeSet<_> = by_paths
        .iter()
        .map(|&(u, v, l)| {
            let at = |k: usize| subsets.iter().position(|q| *q == vertices[k]).expect("same subsets");
            (at(u), at(v), l)
        })
        .collect();
    ensure(relabeled == arcs, "subset arcs differ from the path oracle")?;
    ensure(g["black_arcs"].as_array().is_some_and(Vec::is_empty) && g["point_arcs"].as_array().is_some_and(Vec::is_empty), "unexpected terminal arcs")?;
    Ok(format!("ramification at (34)^∞, 2(34)^∞, (43)^∞, 5(43)^∞; G_T has {} subsets, {} arcs", subsets.len(), arcs.len()))
}

fn hand_fixtures() -> Check {
    let (_, g) = json_of(&["gt", &fixture("interval2.json"), "--format", "json"])?;
    ensure(g["subsets"].as_array().is_some_and(Vec::is_empty), format!("interval2 G_T {g}"))?;
    let rows = report_rows("interval2.json")?;
    ensure(rows.len() == 2 && rows.iter().all(|r| r["ord_main_tree"] == 1), "interval2 orders")?;

    let rows = report_rows("vicsek5.json")?;
    let ram: Vec<&Value> = rows.iter().filter(|r| r["ord_main_tree"].as_u64() >= Some(3)).collect();
    ensure(ram.len() == 1 && ram[0]["location"] == "π((5)^∞)" && ram[0]["ord_main_tree"] == 4, format!("vicsek ramification {ram:?}"))?;
    ensure(rows.iter().filter(|r| r["boundary"] == true).all(|r| r["ord_main_tree"] == 1), "vicsek boundary orders")?;
    let v = fixtures::vicsek5();
    let c1 = order_in_main_tree(&v, &Location::Black(v.find_black("c1").unwrap())).map_err(|e| e.to_string())?;
    ensure(c1.order == 2 && c1.case == OrderCase::Sum, format!("c1 {c1:?}"))?;
    Ok("interval2: empty G_T, orders 1, 1; vicsek5: π((5)^∞) order 4, c1 order 2".into())
}

const SEEDS: u64 = 200;

/// Violations of one invariant on one random sprout.
fn property_violations(s: &Sprout, rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let d = IndexDiagram::new(s);

    // (a) one image point per edge at w_i.
    for w in s.whites() {
        let map = phi(s, w.index()).expect("index in range");
        let by_paths = s.points().all(|p| s.point_name(map.apply(p)) == oracles::phi_by_path(s, w.index(), s.point_name(p)));
        if map.image_all().len() != s.degree(Vertex::White(w)) || !by_paths {
            bad.push("a");
        }
    }

    // (b) shrinking images and their limit.
    let dynamics = PhiDynamics::new(s).expect("valid sprout");
    let alpha = oracles::random_address(rng, s.num_whites() as u32);
    let horizon = alpha.preperiod().len() + (1 << s.num_points()) * alpha.period().len();
    let sizes: Vec<usize> = (0..=horizon).map(|n| oracles::image_size(s, &alpha, n)).collect();
    if !sizes.windows(2).all(|w| w[0] >= w[1]) || dynamics.n_phi(&alpha).ok() != Some(sizes[horizon]) {
        bad.push("b");
    }

    // (c) address classes against walk counts.
    for p in s.points() {
        let got = match d.classify(p).class {
            AddressClass::Finite { count } => oracles::GrowthClass::Finite(count),
            AddressClass::CountablyInfinite => oracles::GrowthClass::Countable,
            AddressClass::Uncountable => oracles::GrowthClass::Uncountable,
        };
        if got != oracles::growth_class(s, s.point_name(p)) {
            bad.push("c");
        }
    }

    // (d) admissibility against shared prefixes.
    let verdict = d.admissibility();
    let witness_ok = match &verdict {
        Admissibility::Admissible => true,
        Admissibility::Inadmissible { p, q, shared } => d.reads(*p, shared) && d.reads(*q, shared),
    };
    if (verdict == Admissibility::Admissible) != oracles::shared_prefix_pair(s).is_none() || !witness_ok {
        bad.push("d");
    }

    // (e) squares stay correct.
    let sq = square(s);
    if !sq.validate().is_correct {
        bad.push("e");
    }

    // (f) relabeling.
    let t = oracles::relabel(s, rng);
    if isomorphic(s, &t).is_none() || isomorphic(&sq, &square(&t)).is_none() {
        bad.push("f");
    }

    // (g) cyclic subsets have one way out.
    let g = TransformationGraph::new(s, &dynamics).expect("valid sprout");
    let n = g.subsets.len();
    for u in 0..n {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = g.subset_out(u).map(|a| a.to).collect();
        while let Some(v) = stack.pop() {
            if !seen[v] {
                seen[v] = true;
                stack.extend(g.subset_out(v).map(|a| a.to));
            }
        }
        if g.is_cyclic(u) != seen[u] || (seen[u] && g.out_degree(u) != 1) {
            bad.push("g");
        }
    }

    // (h) unique-address orders, where the report is defined.
    let finite = s.points().all(|p| d.classify(p).is_finite());
    let h_ok = match ramification_report(s) {
        Ok(rows) => {
            verdict == Admissibility::Admissible
                && finite
                && rows.iter().filter(|r| r.addresses.len() == 1).all(|r| r.ord_main_tree <= s.num_points())
        }
        Err(AnalysisError::Inadmissible { .. }) => verdict != Admissibility::Admissible,
        Err(AnalysisError::InfiniteAddressSet { .. }) => !finite,
        Err(_) => false,
    };
    if !h_ok {
        bad.push("h");
    }
    bad
}

fn property_suite() -> Check {
    let cfg = RandomConfig::default();
    let mut violations: std::collections::BTreeMap<&str, usize> = "abcdefgh".split("").filter(|x| !x.is_empty()).map(|k| (k, 0)).collect();
    let mut reported = 0;
    for seed in 0..SEEDS {
        let s = random_sprout(seed, &cfg).ok_or(format!("no sprout for seed {seed}"))?;
        let r = s.validate();
        ensure(r.is_valid() && r.is_regular, format!("seed {seed} not valid and regular"))?;
        ensure(s.num_points() <= 6 && s.num_whites() <= 8, format!("seed {seed} too large"))?;
        reported += ramification_report(&s).is_ok() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for k in property_violations(&s, &mut rng) {
            *violations.get_mut(k).unwrap() += 1;
        }
    }
    let summary: Vec<String> = violations.iter().map(|(k, n)| format!("({k}) {n}")).collect();
    let summary = format!("{SEEDS} sprouts, {reported} with a report; violations {}", summary.join(" "));
    ensure(violations.values().all(|&n| n == 0), summary.clone())?;
    Ok(summary)
}

fn geometry_round_trip() -> Check {
    for (ifs, hand) in [("interval-ifs.json", fixtures::interval2()), ("vicsek-ifs.json", fixtures::vicsek5())] {
        let (code, v) = json_of(&["extract", &fixture(ifs), "--depth", "10", "--tol", "1e-9"])?;
        ensure(code == 0, format!("{ifs}: exit {code}"))?;
        let extracted = Sprout::parse(&v["sprout"].to_string()).map_err(|e| format!("{ifs}: {e}"))?;
        ensure(isomorphic(&extracted, &hand).is_some(), format!("{ifs}: not isomorphic to the hand sprout"))?;
    }

    let (_, v) = json_of(&["extract", &fixture("vicsek-ifs.json")])?;
    let found: Vec<[f64; 2]> = v["diagnostics"]["contacts"]["pairs"]
        .as_array()
        .ok_or("no contact table")?
        .iter()
        .filter(|p| p["verdict"] == "singleton")
        .map(|p| [p["point"][0].as_f64().unwrap(), p["point"][1].as_f64().unwrap()])
        .collect();
    let (a, b) = (1.0 / 3.0, 2.0 / 3.0);
    let expected = [[a, a], [b, a], [b, b], [a, b]];
    let near = |x: [f64; 2], y: [f64; 2]| (x[0] - y[0]).abs() <= 1e-7 && (x[1] - y[1]).abs() <= 1e-7;
    ensure(found.len() == 4, format!("{} vicsek contacts", found.len()))?;
    ensure(expected.iter().all(|e| found.iter().any(|f| near(*f, *e))), format!("vicsek contacts {found:?}"))?;
    let worst = expected
        .iter()
        .map(|e| found.iter().map(|f| (f[0] - e[0]).abs().max((f[1] - e[1]).abs())).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    Ok(format!("interval and vicsek sprouts recovered; contacts within {worst:.1e}"))
}

fn determinism() -> Check {
    let f = |n: &str| fixture(n);
    let runs: Vec<Vec<String>> = vec![
        vec!["validate".into(), f("fig2R.json"), "--format".into(), "json".into()],
        vec!["validate".into(), f("fig1.json")],
        vec!["diagram".into(), f("fig7.json")],
        vec!["addresses".into(), f("fig1.json")],
        vec!["addresses".into(), f("fig4.json"), "--format".into(), "json".into()],
        vec!["classify".into(), f("fig4.json")],
        vec!["admissible".into(), f("fig3.json"), "--format".into(), "json".into()],
        vec!["phi".into(), f("fig6.json")],
        vec!["gt".into(), f("fig7.json")],
        vec!["gt".into(), f("fig7.json"), "--format".into(), "json".into()],
        vec!["report".into(), f("fig6.json")],
        vec!["report".into(), f("vicsek5.json"), "--format".into(), "text".into()],
        vec!["square".into(), f("vicsek5.json"), "-n".into(), "2".into()],
        vec!["iso".into(), f("interval2.json"), f("interval2-relabeled.json")],
        vec!["iso".into(), f("vicsek5.json"), f("vicsek5-altered.json"), "--format".into(), "json".into()],
        vec!["extract".into(), f("vicsek-ifs.json")],
        vec!["extract".into(), f("interval-ifs.json"), "--format".into(), "text".into()],
        vec!["render".into(), f("vicsek-ifs.json"), "--sprout".into(), f("vicsek5.json")],
    ];
    let once = |args: &[String]| {
        let out = Command::new(env!("CARGO_BIN_EXE_sprout")).args(args).output().expect("binary runs");
        (out.status.code(), out.stdout, out.stderr)
    };
    let mut commands = BTreeSet::new();
    for args in &runs {
        let first = once(args);
        ensure(first == once(args), format!("`sprout {}` differs between runs", args.join(" ")))?;
        ensure(!first.1.is_empty(), format!("`sprout {}` printed nothing", args.join(" ")))?;
        commands.insert(args[0].clone());
    }
    ensure(commands.len() == 12, format!("covered {} subcommands", commands.len()))?;
    Ok(format!("{} invocations over {} subcommands byte-identical", runs.len(), commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("fig1 addresses", fig1_addresses),
        ("fig2 verdicts", fig2_verdicts),
        ("fig3 inadmissible", fig3_inadmissible),
        ("fig4 address classes", fig4_classes),
        ("fig6 orders", fig6_orders),
        ("fig7 ramification and G_T", fig7_ramification),
        ("hand-derived fixtures", hand_fixtures),
        ("property suite", property_suite),
        ("geometry round trip", geometry_round_trip),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
