//! The twelve acceptance criteria, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines always reach the terminal.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coalg::classify::{listing, string, verify_witness, wild_obstructions, Classifier, Rule, Verdict, Witness};
use coalg::gabriel::{
    arrow_count_quiver, gabriel_quiver, localize_monomial, localize_quiver, wedge_gabriel, Localization,
};
use coalg::linear::{is_cosemisimple, socle, truncate, truncate_in, PathBasis};
use coalg::monomial::{string_check, Presentation};
use coalg::quiver::{paths_up_to, scc, shape_class, ShapeClass};
use coalg::wedge::{wedge_linear, wedge_power, wedge_xcheck};
use coalg::{MonomialCoalgebra, Path, Quiver, Vertex};
use coalg_cli::Workspace;
use common::catalog::{catalog, oracle, orient, random_connected};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces")
}

fn corpus() -> Vec<(String, Workspace)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("workspaces directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let ws = Workspace::parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), ws)
        })
        .collect()
}

fn workspace(name: &str) -> Workspace {
    Workspace::parse(&std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap()).unwrap()
}

/// Every presentation in the corpus, in admissible form, with its label
/// and truncation.
fn corpus_instances() -> Vec<(String, MonomialCoalgebra, usize)> {
    let mut out = Vec::new();
    for (name, ws) in corpus() {
        out.push((format!("{name}:C"), ws.coalgebra.admissible_form().0, ws.truncation));
        for (sub, m) in &ws.subcoalgebras {
            out.push((format!("{name}:{sub}"), m.admissible_form().0, ws.truncation));
        }
    }
    out
}

fn c1_wedge_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(1);
    let mut lengths = BTreeSet::new();
    for k in 0..200 {
        let q = common::random_quiver(&mut rng, 4, 6);
        let n = common::affordable(&q, rng.gen_range(1..=5), 400);
        let c = common::random_monomial(&mut rng, &q, n);
        let a = common::random_sub(&mut rng, &c, n);
        let b = common::random_sub(&mut rng, &c, n);
        let x = wedge_xcheck(&a, &b, &c, n).map_err(|e| format!("triple {k}: {e}"))?;
        if !x.agrees {
            return Err(format!("triple {k}: {} discrepant vectors", x.discrepancy.len()));
        }
        lengths.insert(n);
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        return Err(format!("took {t:.1?}"));
    }
    Ok(format!("200 triples, truncations {lengths:?}, exact equality, {t:.2?}"))
}

fn c2_gabriel_corpus() -> Outcome {
    let instances = corpus_instances();
    for (name, c, n) in &instances {
        let by_wedge = gabriel_quiver(&truncate(c, (*n).max(1))).map_err(|e| format!("{name}: {e}"))?;
        let by_count = arrow_count_quiver(c);
        if by_wedge != by_count {
            return Err(format!("{name}: wedges give {by_wedge}, arrow counts give {by_count}"));
        }
    }
    Ok(format!("{} admissible corpus instances, labels included", instances.len()))
}

fn c3_wedge_quiver() -> Outcome {
    let mut rng = common::rng(3);
    let mut nonempty = 0;
    for k in 0..60 {
        let q = common::random_quiver(&mut rng, 4, 6);
        let n = common::affordable(&q, 3, 200).max(2);
        let c = common::random_monomial(&mut rng, &q, n).admissible_form().0;
        let a = common::random_sub(&mut rng, &c, n);
        let b = common::random_sub(&mut rng, &c, n);
        let basis = PathBasis::new(c.quiver(), n);
        let tc = truncate_in(&c, &basis);
        let (ta, tb) = (truncate_in(&a, &basis), truncate_in(&b, &basis));
        let w = wedge_linear(ta.space(), tb.space(), &tc).map_err(|e| e.to_string())?;
        let direct = gabriel_quiver(&tc.subcoalgebra(w).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let parts: Vec<_> = [&ta, &tb, &tc].iter().map(|t| gabriel_quiver(t)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let in_a = |v: Vertex| a.contains(&Path::trivial(v));
        let in_b = |v: Vertex| b.contains(&Path::trivial(v));
        let predicted = wedge_gabriel(&parts[0], &parts[1], &parts[2], &in_a, &in_b).map_err(|e| e.to_string())?;
        if predicted != direct {
            return Err(format!("triple {k}: predicted {predicted}, direct {direct}"));
        }
        nonempty += usize::from(!direct.arrows.is_empty());
    }
    Ok(format!("60 triples ({nonempty} with arrows), exact"))
}

fn c4_filtration() -> Outcome {
    let instances = corpus_instances();
    let mut layers = 0;
    for (name, c, n) in &instances {
        let tc = truncate(c, *n);
        let s = socle(&tc);
        for k in 0..=*n {
            let w = wedge_power(&s, k + 1, &tc).map_err(|e| format!("{name}: {e}"))?;
            let span = tc.basis().span_of_paths(&c.enumerate(k)).map_err(|e| e.to_string())?;
            if w != span {
                return Err(format!("{name}: wedge power {} differs from paths of length at most {k}", k + 1));
            }
            layers += 1;
        }
    }
    Ok(format!("{} corpus instances, {layers} layers", instances.len()))
}

/// Path counts by length of the localized quiver, restricted to words whose
/// expansion fits in `n`.
fn cell_word_counts(loc: &Localization, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for w in paths_up_to(&loc.quiver, n) {
        if loc.expand(&w).len() <= n {
            if out.len() <= w.len() {
                out.resize(w.len() + 1, 0);
            }
            out[w.len()] += 1;
        }
    }
    out
}

fn acyclic(q: &Quiver) -> bool {
    scc(q).components.iter().all(|comp| comp.len() == 1) && q.arrows().all(|a| q.source(a) != q.target(a))
}

fn c5_localization() -> Outcome {
    let ws = workspace("a3_full");
    let q = &ws.quiver;
    let x: BTreeSet<Vertex> = [ws.vertex("1").unwrap(), ws.vertex("3").unwrap()].into();
    let loc = localize_quiver(q, &x, ws.cell_bound).map_err(|e| e.to_string())?;
    let lq = &loc.quiver;
    let arrows: Vec<(String, String)> =
        lq.arrows().map(|a| (lq.vertex_name(lq.source(a)).to_string(), lq.vertex_name(lq.target(a)).to_string())).collect();
    if arrows != [("1".to_string(), "3".to_string())] {
        return Err(format!("localized quiver arrows {arrows:?}"));
    }
    let lc = localize_monomial(&ws.coalgebra, &x, ws.truncation).map_err(|e| e.to_string())?;
    if lc.degree_dims() != [2, 1] || cell_word_counts(&loc, ws.truncation) != [2, 1] {
        return Err(format!("degree dimensions {:?}", lc.degree_dims()));
    }
    // Δ of each basis path, read as cell words, against the cuts in the
    // localized quiver.
    for (k, p) in lc.basis.iter().enumerate() {
        let word = loc.decompose(q, p).ok_or("basis path is not a cell word")?;
        let mut expected: Vec<(usize, usize)> = word
            .cuts(lq)
            .iter()
            .map(|(eta, tau)| {
                let find = |w: &Path| lc.basis.iter().position(|b| b == &loc.expand(w)).expect("cut in basis");
                (find(eta), find(tau))
            })
            .collect();
        expected.sort();
        let got: Vec<(usize, usize)> = lc.structure.delta[k].iter().map(|(a, b, _)| (*a, *b)).collect();
        if got != expected {
            return Err(format!("Δ({}) = {got:?}, cell words give {expected:?}", p.display(q)));
        }
    }
    lc.check_isomorphism(&ws.coalgebra, &loc)?;

    let mut rng = common::rng(5);
    let mut instances = 0;
    let mut tries = 0;
    while instances < 50 {
        tries += 1;
        if tries > 20_000 {
            return Err(format!("only {instances} cell-acyclic instances found"));
        }
        let q = common::random_quiver(&mut rng, 5, 7);
        let x: BTreeSet<Vertex> = q.vertices().filter(|_| rng.gen_bool(0.5)).collect();
        if x.is_empty() {
            continue;
        }
        let loc = localize_quiver(&q, &x, 8).map_err(|e| e.to_string())?;
        if loc.truncated || !acyclic(&loc.quiver) || loc.cells.is_empty() {
            continue;
        }
        let longest = paths_up_to(&loc.quiver, loc.quiver.vertex_count())
            .iter()
            .map(|w| loc.expand(w).len())
            .max()
            .unwrap_or(0);
        let lc = localize_monomial(&MonomialCoalgebra::full(&q), &x, longest).map_err(|e| e.to_string())?;
        let mut by_length = Vec::new();
        for w in paths_up_to(&loc.quiver, loc.quiver.vertex_count()) {
            if by_length.len() <= w.len() {
                by_length.resize(w.len() + 1, 0);
            }
            by_length[w.len()] += 1;
        }
        if lc.degree_dims() != by_length {
            return Err(format!("instance {instances}: {:?} vs {by_length:?}", lc.degree_dims()));
        }
        lc.check_isomorphism(&MonomialCoalgebra::full(&q), &loc)?;
        instances += 1;
    }
    Ok(format!("A3 at {{1,3}}: one arrow 1->3, dims [2, 1], Δ explicit; {instances} random cell-acyclic instances"))
}

fn is_finite_complete(m: &MonomialCoalgebra) -> bool {
    matches!(m.presentation(), Presentation::Finite { complete: true, .. })
}

fn c6_finite_semisimple() -> Outcome {
    let mut instances: Vec<(String, MonomialCoalgebra, usize)> =
        corpus_instances().into_iter().filter(|(_, m, _)| is_finite_complete(m)).collect();
    let from_corpus = instances.len();
    let mut rng = common::rng(6);
    for k in 0..100 {
        let q = common::random_quiver(&mut rng, 4, 5);
        let n = common::affordable(&q, 4, 150);
        let m = common::random_monomial(&mut rng, &q, n);
        let listed = MonomialCoalgebra::finite(&q, Some(m.support().clone()), m.enumerate(n), true).unwrap();
        instances.push((format!("random {k}"), listed.admissible_form().0, n.max(1)));
    }
    let (mut yes, mut no) = (0, 0);
    for (name, c, n) in &instances {
        let top = c.max_length().ok_or(format!("{name}: listing has no longest path"))?;
        let cosemisimple = is_cosemisimple(&truncate(c, top.max(*n)));
        match Classifier::new(*n).semiprime(c) {
            Verdict::Yes { .. } if cosemisimple => yes += 1,
            Verdict::No { witness, truncation, .. } if !cosemisimple => {
                verify_witness(c, &witness, truncation).map_err(|e| format!("{name}: {e}"))?;
                no += 1;
            }
            v => return Err(format!("{name}: semiprime {} but cosemisimple = {cosemisimple}", v.label())),
        }
    }
    Ok(format!("{from_corpus} corpus + 100 random listings: {yes} yes, {no} no with verified witnesses"))
}

fn c7_two_loop_powers() -> Outcome {
    let start = Instant::now();
    let ws = workspace("two_loop_powers");
    let n = 8;
    let c = &ws.coalgebra;
    let classifier = Classifier { truncation: n, cell_bound: ws.cell_bound };
    let sp = classifier.semiprime(c);
    if sp.rule() != Some(Rule::SquareRule) || !sp.is_yes() {
        return Err(format!("semiprime {}", sp.summary()));
    }
    let (a, b) = (ws.get("A").unwrap(), ws.get("B").unwrap());
    verify_witness(c, &Witness::Pair { a: a.clone(), b: b.clone() }, n)?;
    match classifier.prime(c) {
        Verdict::No { witness: w @ Witness::Pair { .. }, truncation, .. } => {
            verify_witness(c, &w, truncation)?;
            let Witness::Pair { a: wa, b: wb } = &w else { unreachable!() };
            let found = BTreeSet::from([listing(wa, n), listing(wb, n)]);
            let given = BTreeSet::from([listing(a, n), listing(b, n)]);
            if found != given {
                return Err(format!("found pair {found:?}"));
            }
            if truncation != n {
                return Err(format!("verified at {truncation}"));
            }
        }
        v => return Err(format!("prime {}", v.summary())),
    }
    let t = start.elapsed();
    if t > Duration::from_secs(5) {
        return Err(format!("took {t:.2?}"));
    }
    Ok(format!("semiprime yes (square-rule), prime no with (A,B) verified at N={n}, {t:.2?}"))
}

fn run_binary(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_coalg"))
        .args(args)
        .env_remove("COALG_TRUNCATE")
        .output()
        .expect("coalg binary runs");
    (out.status.code(), out.stdout)
}

fn c8_strongly_connected() -> Outcome {
    let mut checked = 0;
    for (name, ws) in corpus() {
        let path = corpus_dir().join(format!("{name}.json"));
        let (code, _) = run_binary(&["analyze", path.to_str().unwrap()]);
        if code != Some(0) {
            return Err(format!("{name}: analyze exited with {code:?}"));
        }
        let report = Classifier { truncation: ws.truncation, cell_bound: ws.cell_bound }
            .analyze(&ws.coalgebra)
            .map_err(|e| format!("{name}: {e}"))?;
        if let Some(k) = report.components.iter().position(|k| k.semiprime.is_yes() && !k.strongly_connected) {
            return Err(format!("{name}: component {k} is semiprime but not strongly connected"));
        }
        checked += 1;
    }
    Ok(format!("{checked} corpus workspaces, zero exit-2 occurrences"))
}

fn c9_bicycle() -> Outcome {
    let mut lines = Vec::new();
    for name in ["two_loop_powers", "bicycle_alternating", "two_loop_wild"] {
        let ws = workspace(name);
        let c = &ws.coalgebra;
        let verdict = string(c).map_err(|e| e.to_string())?;
        let obs = wild_obstructions(c);
        let tags: Vec<String> = obs.iter().map(|o| format!("{} {}", o.tag, o.location(c.quiver()))).collect();
        lines.push(format!(
            "{name}: string {}; obstructions {}",
            verdict.label(),
            if tags.is_empty() { "none".to_string() } else { tags.join(" | ") }
        ));
    }
    let got = lines.join("\n") + "\n";
    let golden_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/bicycle.txt");
    let golden = std::fs::read_to_string(&golden_path).map_err(|e| format!("{}: {e}", golden_path.display()))?;
    if got != golden {
        return Err(format!("output differs from golden file:\n{got}"));
    }
    Ok("loop powers and alternating words are string with no obstructions; a², ba fires d".to_string())
}

fn c10_string_direction() -> Outcome {
    let mut instances = corpus_instances();
    let mut rng = common::rng(10);
    for k in 0..300 {
        let q = common::random_quiver(&mut rng, 4, 6);
        let n = common::affordable(&q, 4, 80).max(2);
        instances.push((format!("random {k}"), common::random_monomial(&mut rng, &q, n).admissible_form().0, n));
    }
    let mut applicable = 0;
    for (name, c, n) in &instances {
        if !c.is_admissible() || !Classifier::new(*n).semiprime(c).is_yes() || !wild_obstructions(c).is_empty() {
            continue;
        }
        applicable += 1;
        if let Some(v) = string_check(c).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: {}", v.describe(c.quiver())));
        }
    }
    Ok(format!("{applicable} semiprime instances without obstructions, zero violations"))
}

fn c11_shapes() -> Outcome {
    let cat = catalog();
    let mut rng = common::rng(11);
    let mut members = 0;
    for (class, g) in &cat {
        for _ in 0..3 {
            let got = shape_class(&orient(g, &mut rng));
            if got.len() != 1 || got[0].1 != *class {
                return Err(format!("{class} classified as {got:?}"));
            }
            members += 1;
        }
    }
    let mut others = 0;
    let mut tries = 0;
    while others < 500 {
        tries += 1;
        let g = random_connected(&mut rng);
        let expected = oracle(&g, &cat);
        let got = shape_class(&orient(&g, &mut rng))[0].1;
        if got != expected {
            return Err(format!("{g:?}: {got}, oracle {expected}"));
        }
        others += usize::from(expected == ShapeClass::Other);
    }
    Ok(format!("{} catalog classes ({members} orientations), 500 non-members among {tries} random graphs", cat.len()))
}

fn c12_determinism() -> Outcome {
    let mut count = 0;
    for (name, _) in corpus() {
        let path = corpus_dir().join(format!("{name}.json"));
        let run = || run_binary(&["analyze", path.to_str().unwrap(), "--json", "-"]);
        let (first, second) = (run(), run());
        if first.0 != Some(0) || first != second {
            return Err(format!("{name}: runs differ or fail"));
        }
        count += 1;
    }
    Ok(format!("{count} workspaces, byte-identical JSON"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("wedge oracle equivalence", c1_wedge_oracle),
        ("Gabriel quiver by wedges on the corpus", c2_gabriel_corpus),
        ("Gabriel quiver of a wedge", c3_wedge_quiver),
        ("coradical filtration", c4_filtration),
        ("localization", c5_localization),
        ("finite implies semisimple", c6_finite_semisimple),
        ("two-loop semiprime non-prime instance", c7_two_loop_powers),
        ("semiprime components strongly connected", c8_strongly_connected),
        ("bicycle families", c9_bicycle),
        ("string theorem direction", c10_string_direction),
        ("shape classifier exactness", c11_shapes),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
