//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Thresholds are pinned below.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use netgram::fixtures::{self, Level};
use netgram::format::serialize_bundle;
use netgram::laws::{run_laws, GenConfig, LawResult};
use netgram::{
    check_definite, check_semidefinite, parse_document, serialize_hom, serialize_network, validate_network,
    CheckOptions, Homomorphism, Network,
};

const SEED: u64 = 0;
const MIN_MUTATIONS: usize = 10;
const FIXTURE_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_CASES: usize = 500;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const MAX_ORACLE_UNIVERSE: usize = 12;
const L18_CASES: usize = 1000;
const L18_MIN_DEFINITE: usize = 100;
const L15_CASES: usize = 300;
const L16_CASES: usize = 100;
const HOM_CASES: usize = 300;
const HOM_MIN_RATE: f64 = 0.30;
const L23_MIN_QUALIFYING: usize = 100;
const L24_CASES: usize = 300;
const ROUND_TRIP_CASES: usize = 500;
const TOTAL_BUDGET: Duration = Duration::from_secs(300);

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line {
        ok,
        detail: detail.into(),
    }
}

fn cfg(cases: usize) -> GenConfig {
    GenConfig::default().with_seed(SEED).with_cases(cases)
}

fn laws(cases: usize, ids: &[&str]) -> Vec<LawResult> {
    let out = run_laws(&cfg(cases), ids);
    assert_eq!(out.len(), ids.len(), "unknown law id among {ids:?}");
    out
}

fn failures(rs: &[LawResult]) -> Vec<String> {
    rs.iter()
        .filter(|r| !r.passed())
        .map(|r| match &r.counterexample {
            Some(c) => format!("{} case {}: {}", r.id, c.case, c.message.lines().next().unwrap_or("")),
            None => format!("{}: {} generator failures", r.id, r.gen_failures),
        })
        .collect()
}

fn summary(rs: &[LawResult]) -> String {
    rs.iter()
        .map(|r| format!("{} {}/{}", r.id, r.qualifying, r.cases))
        .collect::<Vec<_>>()
        .join(", ")
}

fn fixtures_criterion() -> Line {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let mut bad = Vec::new();
    for n in [fixtures::n_empty(), fixtures::n_sigma(), fixtures::n_edge()] {
        if !validate_network(&n).is_empty() {
            bad.push(format!("{} invalid", n.name()));
        }
    }
    for n in [fixtures::n_sigma(), fixtures::n_edge()] {
        let d = check_definite(&n, &opts).map(|r| r.holds());
        let s = check_semidefinite(&n, &opts).map(|r| r.holds());
        if !matches!((d, s), (Ok(Some(true)), Ok(Some(true)))) {
            bad.push(format!("{} not definite and semi-definite", n.name()));
        }
    }
    let mutations = fixtures::n_edge_mutations();
    for m in &mutations {
        let mut codes = match m.level {
            Level::Axioms => validate_network(&m.network).codes(),
            Level::SemiDefinite => check_semidefinite(&m.network, &opts)
                .map(|r| r.codes())
                .unwrap_or_default(),
            Level::Definite => check_definite(&m.network, &opts).map(|r| r.codes()).unwrap_or_default(),
        };
        codes.sort();
        codes.dedup();
        let mut want = m.expected.clone();
        want.sort();
        if codes != want {
            bad.push(format!("{}: got {codes:?}, want {want:?}", m.name));
        }
    }
    let took = start.elapsed();
    let ok = bad.is_empty() && mutations.len() >= MIN_MUTATIONS && took < FIXTURE_BUDGET;
    line(
        ok,
        format!(
            "{} mutations, {took:.2?} (< {FIXTURE_BUDGET:?}) {}",
            mutations.len(),
            bad.join("; ")
        ),
    )
}

fn oracle_criterion() -> Line {
    let start = Instant::now();
    let rs = laws(ORACLE_CASES, &["O14", "O17"]);
    let took = start.elapsed();
    // The oracle family draws its networks at the small sizes.
    let small = netgram::laws::Sizes::SMALL.total();
    let ok = failures(&rs).is_empty()
        && rs.iter().all(|r| r.qualifying >= ORACLE_CASES)
        && small <= MAX_ORACLE_UNIVERSE
        && took < ORACLE_BUDGET;
    line(
        ok,
        format!(
            "{}, universe <= {small}, {took:.2?} {}",
            summary(&rs),
            failures(&rs).join("; ")
        ),
    )
}

fn l18_criterion() -> Line {
    let rs = laws(L18_CASES, &["L18"]);
    let r = &rs[0];
    let ok = r.passed() && r.cases >= L18_CASES && r.qualifying >= L18_MIN_DEFINITE;
    line(
        ok,
        format!(
            "{} networks, {} definite {}",
            r.cases,
            r.qualifying,
            failures(&rs).join("; ")
        ),
    )
}

fn l15_l16_criterion() -> Line {
    let a = laws(L15_CASES, &["L15"]);
    let b = laws(L16_CASES, &["L16"]);
    let ok = a[0].passed() && b[0].passed() && a[0].qualifying >= L15_CASES && b[0].qualifying >= L16_CASES;
    let all: Vec<LawResult> = a.into_iter().chain(b).collect();
    line(ok, format!("{} {}", summary(&all), failures(&all).join("; ")))
}

const HOM_LAWS: &[&str] = &[
    "L19i", "L19ii", "L19iii", "L19iv", "L19v", "L20i", "L20ii", "L20iii", "L20iv", "L21i", "L21ii", "L21iii", "L21iv",
    "L21v", "L21vi", "L22i", "L22ii", "L22iii", "L23",
];

fn hom_criteria() -> (Line, Line) {
    let rs = laws(HOM_CASES, HOM_LAWS);
    let (l23, rest): (Vec<LawResult>, Vec<LawResult>) = rs.into_iter().partition(|r| r.id == "L23");
    let min_rate = rest.iter().map(|r| r.rate()).fold(1.0, f64::min);
    let ok = failures(&rest).is_empty() && rest.iter().all(|r| r.cases >= HOM_CASES) && min_rate >= HOM_MIN_RATE;
    let c5 = line(
        ok,
        format!(
            "min rate {min_rate:.2} (>= {HOM_MIN_RATE}); {} {}",
            summary(&rest),
            failures(&rest).join("; ")
        ),
    );
    let r = &l23[0];
    let c6 = line(
        r.passed() && r.qualifying >= L23_MIN_QUALIFYING,
        format!(
            "{} certified of {} ({} glued) {}",
            r.qualifying,
            r.cases,
            r.glued,
            failures(&l23).join("; ")
        ),
    );
    (c5, c6)
}

fn l24_criterion() -> Line {
    let rs = laws(L24_CASES, &["L24i", "L24ii", "L24iii", "L24iv", "L24r"]);
    let ok = failures(&rs).is_empty() && rs.iter().all(|r| r.qualifying >= L24_CASES);
    line(ok, format!("{} {}", summary(&rs), failures(&rs).join("; ")))
}

/// The body lines of each block in reverse order, which the parser must
/// accept and the serializer must undo.
fn scrambled(text: &str) -> String {
    let mut out = String::new();
    let mut body: Vec<&str> = Vec::new();
    for l in text.lines() {
        if l.starts_with("  ") {
            body.push(l);
            continue;
        }
        for b in body.drain(..).rev() {
            out.push_str(b);
            out.push('\n');
        }
        out.push_str(l);
        out.push('\n');
    }
    out
}

fn round_trip_criterion() -> Line {
    let mut bad = Vec::new();
    let nets: Vec<Network> = vec![
        fixtures::n_empty(),
        fixtures::n_sigma(),
        fixtures::n_edge(),
        fixtures::parallel_edges(),
        fixtures::glued_pair(),
        fixtures::n_edge_copies(3),
    ];
    for n in &nets {
        let text = serialize_network(n);
        for variant in [text.clone(), scrambled(&text)] {
            match parse_document(&variant) {
                Ok(d) if d.networks.len() == 1 && d.networks[0] == *n && serialize_network(&d.networks[0]) == text => {}
                _ => bad.push(n.name().to_owned()),
            }
        }
    }
    let homs: Vec<Homomorphism> = vec![
        Homomorphism::identity(Arc::new(fixtures::n_edge())),
        fixtures::fold(),
        fixtures::unfold(),
        fixtures::renaming(),
        fixtures::swap_automorphism(),
    ];
    for h in &homs {
        let text = serialize_bundle(&[h.source(), h.target()], &[h]);
        for variant in [text.clone(), scrambled(&text)] {
            let back = parse_document(&variant).and_then(|d| d.homs());
            match back {
                Ok(hs) if hs.len() == 1 && hs[0] == *h && serialize_hom(&hs[0]) == serialize_hom(h) => {}
                _ => bad.push(h.name().to_owned()),
            }
        }
    }
    let rs = laws(ROUND_TRIP_CASES, &["R-net", "R-hom"]);
    bad.extend(failures(&rs));
    let ok = bad.is_empty() && rs.iter().all(|r| r.qualifying >= ROUND_TRIP_CASES);
    line(
        ok,
        format!(
            "{} fixture networks, {} fixture homs; {} {}",
            nets.len(),
            homs.len(),
            summary(&rs),
            bad.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = vec![
        ("1 fixtures and golden mutations", fixtures_criterion()),
        ("2 oracle agreement", oracle_criterion()),
        ("3 definite implies semi-definite", l18_criterion()),
        ("4 composition and inverse", l15_l16_criterion()),
    ];
    let (c5, c6) = hom_criteria();
    lines.push(("5 homomorphism laws", c5));
    lines.push(("6 definiteness certificate", c6));
    lines.push(("7 subnetworks", l24_criterion()));
    lines.push(("8 format round trip", round_trip_criterion()));
    let took = start.elapsed();
    lines.push((
        "9 wall clock",
        line(took <= TOTAL_BUDGET, format!("{took:.2?} (<= {TOTAL_BUDGET:?})")),
    ));

    let mut all = true;
    for (name, l) in &lines {
        all &= l.ok;
        println!("{} {name}: {}", if l.ok { "PASS" } else { "FAIL" }, l.detail.trim_end());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
