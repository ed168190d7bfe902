//! Command-line front end for the grenoble library: class membership
//! checking, coloring with certificates, verification, instance generation,
//! corpus benchmarks, and a structural self-test.

use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use grenoble::budget::DEFAULT_STEPS;
use grenoble::corpus::{manifest, realize, CorpusEntry, GenSpec};
use grenoble::decompose::{self, DecompositionNode, NodeKind, Options};
use grenoble::detect::{classify, find_prism, is_even_pair, Classification, Witness, WitnessKind};
use grenoble::evenpair::{
    build_all_orders, check_order_laws, check_order_twist, even_pair_sequence,
    resolve_convergence, OrdersOutcome, StripContext,
};
use grenoble::generate::{
    gen_even_prism, gen_hyperprism_graph, gen_random_grenoble, gen_violator, HyperprismSpec,
};
use grenoble::hyperprism::{
    check_clique_sides, check_local_attachments, check_major_side_completeness,
    check_major_two_side_completeness, check_strip_separation,
    check_two_neighbor_sets_see_corners, cutset_components, find_major_neighbors, grow_maximal,
    is_maximal, majors_by_completeness, validate_hyperprism,
};
use grenoble::io::{
    canonical_hash, read_coloring, read_dimacs_file, write_coloring, write_dimacs,
};
use grenoble::oracle::{chromatic_number_exact, max_clique_exact, verify_coloring};
use grenoble::{Budget, Error, Graph, Parity};

const EXIT_OK: u8 = 0;
const EXIT_NOT_VERIFIED: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Exact coloring and maximum cliques for square-free Grenoble graphs.
#[derive(Parser)]
#[command(name = "grenoble", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test class membership; prints `accepted` or a witness as JSON.
    Check {
        /// Graph in DIMACS edge format.
        path: PathBuf,
    },
    /// Color an accepted graph and emit a same-size clique certificate.
    Color {
        /// Graph in DIMACS edge format.
        path: PathBuf,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the decomposition tree as JSON.
        #[arg(long)]
        tree_out: Option<PathBuf>,
        /// Write a run report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Color the two sides of each split on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Check a coloring file against a graph and its clique line.
    Verify {
        /// Graph in DIMACS edge format.
        graph: PathBuf,
        /// Coloring produced by `color`: `v <vertex> <color>` lines + `q` line.
        coloring: PathBuf,
    },
    /// Write a generated graph to stdout in DIMACS edge format.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Time classification and coloring over the embedded corpus.
    Bench {
        /// Color the two sides of each split on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Run the structural invariant suites over the embedded corpus.
    Selftest {
        /// Color the two sides of each split on separate threads.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Prism whose three paths have the given even lengths.
    EvenPrism {
        #[arg(num_args = 3)]
        lengths: Vec<usize>,
    },
    /// Structure described by a JSON spec with three strips and optional
    /// majors, e.g. `{"strips":[{"a_count":2,"a_clique":true,"b_count":1,
    /// "b_clique":true,"rung_len":2},...],"majors":[]}`.
    Hyperprism {
        /// Spec as inline JSON.
        #[arg(long)]
        spec: String,
    },
    /// Rejection-sample an accepted graph from G(n, p).
    RandomGrenoble {
        n: usize,
        /// Edge probability in thousandths.
        p_permille: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest padded graph carrying the named obstruction.
    Violator { kind: ViolatorKind },
}

#[derive(Clone, Copy, ValueEnum)]
enum ViolatorKind {
    Square,
    OddHole,
    OddAntihole,
    OddPrism,
}

impl ViolatorKind {
    fn witness_kind(self) -> WitnessKind {
        match self {
            ViolatorKind::Square => WitnessKind::Square,
            ViolatorKind::OddHole => WitnessKind::OddHole,
            ViolatorKind::OddAntihole => WitnessKind::OddAntihole,
            ViolatorKind::OddPrism => WitnessKind::OddPrism,
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::ClassViolation(_) => EXIT_REJECTED,
        Error::LemmaViolation { .. } | Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => {
            EXIT_RESOURCE
        }
        Error::InvalidInput(_) | Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
    }
}

/// Enumeration budget in expansion steps, overridable via GRENOBLE_BUDGET.
fn budget_steps() -> grenoble::Result<u64> {
    match std::env::var("GRENOBLE_BUDGET") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("GRENOBLE_BUDGET must be a step count, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_STEPS),
    }
}

fn print_witness(w: &Witness) {
    let text = serde_json::to_string_pretty(w).expect("witness serializes");
    println!("{text}");
}

#[derive(Default)]
struct TreeStats {
    nodes: usize,
    splits: usize,
    depth: usize,
    complete_leaves: usize,
    oracle_leaves: usize,
    contraction_leaves: usize,
}

fn tree_stats(node: &DecompositionNode) -> TreeStats {
    let mut s = TreeStats {
        nodes: 1,
        depth: 1,
        ..TreeStats::default()
    };
    match node.kind {
        NodeKind::CompleteLeaf => s.complete_leaves += 1,
        NodeKind::OracleLeaf => s.oracle_leaves += 1,
        NodeKind::ContractionLeaf { .. } => s.contraction_leaves += 1,
        NodeKind::Split => s.splits += 1,
    }
    for child in &node.children {
        let c = tree_stats(child);
        s.nodes += c.nodes;
        s.splits += c.splits;
        s.complete_leaves += c.complete_leaves;
        s.oracle_leaves += c.oracle_leaves;
        s.contraction_leaves += c.contraction_leaves;
        s.depth = s.depth.max(1 + c.depth);
    }
    s
}

fn run_report(g: &Graph, res: &decompose::ColoredResult) -> serde_json::Value {
    let stats = tree_stats(&res.tree);
    serde_json::json!({
        "input_sha256": canonical_hash(g),
        "outcome": "colored",
        "vertices": g.vertex_count(),
        "num_colors": res.coloring.num_colors(),
        "clique_size": res.clique.len(),
        "restarts": res.trace.restarts,
        "oracle_fallbacks": res.trace.oracle_fallbacks,
        "recolor_swaps": res.trace.recolor_swaps,
        "timings_us": res.trace.phases,
        "elapsed_ms": res.trace.elapsed_ms,
        "tree": {
            "nodes": stats.nodes,
            "splits": stats.splits,
            "depth": stats.depth,
            "complete_leaves": stats.complete_leaves,
            "oracle_leaves": stats.oracle_leaves,
            "contraction_leaves": stats.contraction_leaves,
        },
    })
}

fn cmd_check(path: &Path) -> grenoble::Result<u8> {
    let g = read_dimacs_file(path)?;
    match classify(&g, budget_steps()?)? {
        Classification::Accepted => {
            println!("accepted");
            Ok(EXIT_OK)
        }
        Classification::Rejected(w) => {
            print_witness(&w);
            Ok(EXIT_REJECTED)
        }
    }
}

fn cmd_color(
    path: &Path,
    out: Option<&Path>,
    tree_out: Option<&Path>,
    report: Option<&Path>,
    parallel: bool,
) -> grenoble::Result<u8> {
    let g = read_dimacs_file(path)?;
    let steps = budget_steps()?;
    if let Classification::Rejected(w) = classify(&g, steps)? {
        print_witness(&w);
        return Ok(EXIT_REJECTED);
    }
    let opts = Options {
        budget_steps: steps,
        parallel,
    };
    let res = decompose::color(&g, &opts)?;
    match out {
        Some(p) => {
            let mut file = std::fs::File::create(p)?;
            write_coloring(&res.coloring, &res.clique, &mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_coloring(&res.coloring, &res.clique, &mut stdout.lock())?;
        }
    }
    if let Some(p) = tree_out {
        let text = serde_json::to_string_pretty(&res.tree).expect("tree serializes");
        std::fs::write(p, text + "\n")?;
    }
    if let Some(p) = report {
        let text =
            serde_json::to_string_pretty(&run_report(&g, &res)).expect("report serializes");
        std::fs::write(p, text + "\n")?;
    }
    eprintln!(
        "{} vertices colored with {} colors; clique of size {}",
        g.vertex_count(),
        res.coloring.num_colors(),
        res.clique.len()
    );
    Ok(EXIT_OK)
}

fn cmd_verify(graph: &Path, coloring: &Path) -> grenoble::Result<u8> {
    let g = read_dimacs_file(graph)?;
    let file = std::fs::File::open(coloring)?;
    let (c, q) = read_coloring(BufReader::new(file))?;
    if verify_coloring(&g, &c, &q) {
        println!("verified: {} colors, clique of size {}", c.num_colors(), q.len());
        Ok(EXIT_OK)
    } else {
        eprintln!("verification failed");
        Ok(EXIT_NOT_VERIFIED)
    }
}

fn cmd_gen(what: &GenCmd) -> grenoble::Result<u8> {
    let g = match what {
        GenCmd::EvenPrism { lengths } => gen_even_prism([lengths[0], lengths[1], lengths[2]])?,
        GenCmd::Hyperprism { spec } => {
            let spec: HyperprismSpec = serde_json::from_str(spec)
                .map_err(|e| Error::invalid(format!("bad hyperprism spec: {e}")))?;
            gen_hyperprism_graph(&spec)?.0
        }
        GenCmd::RandomGrenoble { n, p_permille, seed } => {
            match gen_random_grenoble(*n, *p_permille, *seed)? {
                Some(g) => g,
                None => {
                    eprintln!("sampling budget exhausted without an accepted graph");
                    return Ok(EXIT_RESOURCE);
                }
            }
        }
        GenCmd::Violator { kind } => gen_violator(kind.witness_kind())?,
    };
    let stdout = std::io::stdout();
    write_dimacs(&g, &mut stdout.lock())?;
    Ok(EXIT_OK)
}

fn cmd_bench(parallel: bool) -> grenoble::Result<u8> {
    let steps = budget_steps()?;
    let opts = Options {
        budget_steps: steps,
        parallel,
    };
    println!(
        "{:<28} {:>4} {:>12} {:>9} {:>6} {:>10}",
        "name", "n", "outcome", "restarts", "nodes", "micros"
    );
    let mut total_us: u128 = 0;
    for entry in &manifest().entries {
        let g = realize(entry)?;
        let clock = Instant::now();
        match classify(&g, steps)? {
            Classification::Rejected(w) => {
                let us = clock.elapsed().as_micros();
                total_us += us;
                println!(
                    "{:<28} {:>4} {:>12} {:>9} {:>6} {:>10}",
                    entry.name,
                    g.vertex_count(),
                    w.kind.to_string(),
                    "-",
                    "-",
                    us
                );
            }
            Classification::Accepted => {
                let res = decompose::color(&g, &opts)?;
                let us = clock.elapsed().as_micros();
                total_us += us;
                let stats = tree_stats(&res.tree);
                println!(
                    "{:<28} {:>4} {:>12} {:>9} {:>6} {:>10}",
                    entry.name,
                    g.vertex_count(),
                    format!("{} colors", res.coloring.num_colors()),
                    res.trace.restarts,
                    stats.nodes,
                    us
                );
            }
        }
    }
    println!("total: {} entries in {} us", manifest().entries.len(), total_us);
    Ok(EXIT_OK)
}

/// Structural assertions for one accepted corpus graph: grow a maximal
/// structure off the first even prism, then hold it against every side,
/// major, locality, cutset, order, and even-pair requirement.
fn selftest_structure(
    g: &Graph,
    steps: u64,
    structures: &mut usize,
    contexts: &mut usize,
    pairs_total: &mut usize,
) -> grenoble::Result<()> {
    let Some(prism) = find_prism(g, &mut Budget::new(steps))? else {
        return Ok(());
    };
    if prism.parity == Parity::Odd {
        return Err(Error::lemma(
            "corpus membership",
            "accepted graph holds an odd prism".to_string(),
        ));
    }
    check_two_neighbor_sets_see_corners(g, &prism, steps)?;
    let mut hp = grow_maximal(g, &prism, steps)?;
    let n = g.vertex_count();
    let mut restarts = 0usize;
    let (ctx, orders) = loop {
        let ctx = StripContext::new(g, &hp, steps)?;
        match build_all_orders(&ctx, steps)? {
            OrdersOutcome::Built(o) => break (ctx, o),
            OrdersOutcome::Convergence(w) => {
                restarts += 1;
                if restarts > n {
                    return Err(Error::lemma(
                        "restart bound",
                        format!("{restarts} resolutions on {n} vertices"),
                    ));
                }
                hp = resolve_convergence(g, &ctx, &w, steps)?;
            }
        }
    };
    let h = ctx.hyperprism();
    if let Some(reason) = validate_hyperprism(g, h, steps)? {
        return Err(Error::lemma("hyperprism shape", reason.to_string()));
    }
    if !is_maximal(g, h, steps)? {
        return Err(Error::lemma(
            "maximal closure",
            "a single-vertex augmentation still validates".to_string(),
        ));
    }
    let majors = find_major_neighbors(g, h, steps)?;
    let by_completeness = majors_by_completeness(g, h)?;
    if majors != by_completeness {
        return Err(Error::lemma(
            "major routes agree",
            format!(
                "instance scan {:?} vs completeness scan {:?}",
                majors.to_vec(),
                by_completeness.to_vec()
            ),
        ));
    }
    check_major_two_side_completeness(g, h, majors)?;
    check_clique_sides(g, h)?;
    check_major_side_completeness(g, h, majors)?;
    let locality = check_local_attachments(g, h, majors)?;
    if !locality.is_clean() {
        return Err(Error::lemma(
            "local attachments",
            format!("{} components attach across zones", locality.violations.len()),
        ));
    }
    cutset_components(g, h, majors)?;
    check_strip_separation(g, h, majors)?;
    *structures += 1;

    check_order_laws(&orders)?;
    check_order_twist(&orders)?;
    *contexts += 1;
    let sequence = even_pair_sequence(&ctx, orders, steps)?;
    for (stage, (a, b)) in &sequence {
        let stage_graph = g.induced(*stage)?;
        if !is_even_pair(&stage_graph, *a, *b, &mut Budget::new(steps))? {
            return Err(Error::lemma(
                "extracted pair evenness",
                format!("pair ({a}, {b}) admits an odd chordless path"),
            ));
        }
        *pairs_total += 1;
    }
    Ok(())
}

fn selftest_entry(
    entry: &CorpusEntry,
    steps: u64,
    opts: &Options,
    counters: &mut [usize; 5],
) -> grenoble::Result<()> {
    let [witnesses, colored, structures, contexts, pairs_total] = counters;
    let g = realize(entry)?;
    let classification = classify(&g, steps)?;
    if let GenSpec::Violator { shape, .. } = &entry.spec {
        let Classification::Rejected(w) = classification else {
            return Err(Error::lemma(
                "violator rejection",
                format!("{} was accepted", entry.name),
            ));
        };
        if !w.validate(&g) {
            return Err(Error::lemma(
                "witness validity",
                format!("{} witness fails adjacency checks", entry.name),
            ));
        }
        if w.kind != shape.expected_witness_kind() {
            return Err(Error::lemma(
                "witness kind",
                format!("{}: {} instead of {}", entry.name, w.kind, shape.expected_witness_kind()),
            ));
        }
        *witnesses += 1;
        return Ok(());
    }
    if !classification.is_accepted() {
        return Err(Error::lemma(
            "corpus membership",
            format!("{} was rejected", entry.name),
        ));
    }
    let res = decompose::color(&g, opts)?;
    if !verify_coloring(&g, &res.coloring, &res.clique) {
        return Err(Error::lemma(
            "certificate",
            format!("{} coloring and clique disagree", entry.name),
        ));
    }
    decompose::check_tree_bound(&res.tree, g.vertex_count())?;
    if res.trace.restarts > g.vertex_count() {
        return Err(Error::lemma(
            "restart bound",
            format!("{} restarted {} times", entry.name, res.trace.restarts),
        ));
    }
    let (chi, _) = chromatic_number_exact(&g, &mut Budget::new(steps))?;
    let omega = max_clique_exact(&g, &mut Budget::new(steps))?.len();
    if res.coloring.num_colors() != chi || res.clique.len() != omega || chi != omega {
        return Err(Error::lemma(
            "oracle agreement",
            format!(
                "{}: {} colors, clique {}, oracle chi {}, oracle omega {}",
                entry.name,
                res.coloring.num_colors(),
                res.clique.len(),
                chi,
                omega
            ),
        ));
    }
    *colored += 1;
    selftest_structure(&g, steps, structures, contexts, pairs_total)
}

fn cmd_selftest(parallel: bool) -> grenoble::Result<u8> {
    let steps = budget_steps()?;
    let opts = Options {
        budget_steps: steps,
        parallel,
    };
    let mut counters = [0usize; 5];
    for entry in &manifest().entries {
        if let Err(e) = selftest_entry(entry, steps, &opts, &mut counters) {
            eprintln!("selftest failed at corpus entry {}", entry.name);
            return Err(e);
        }
    }
    let [witnesses, colored, structures, contexts, pairs_total] = counters;
    println!("corpus entries: {}", manifest().entries.len());
    println!("violator witnesses validated: {witnesses}");
    println!("colorings matched to the oracle: {colored}");
    println!("hyperprism lemma suites passed: {structures}");
    println!("order law suites passed: {contexts}");
    println!("even pairs reverified: {pairs_total}");
    println!("selftest ok");
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> grenoble::Result<u8> {
    match &cli.cmd {
        Cmd::Check { path } => cmd_check(path),
        Cmd::Color {
            path,
            out,
            tree_out,
            report,
            parallel,
        } => cmd_color(
            path,
            out.as_deref(),
            tree_out.as_deref(),
            report.as_deref(),
            *parallel,
        ),
        Cmd::Verify { graph, coloring } => cmd_verify(graph, coloring),
        Cmd::Gen(what) => cmd_gen(what),
        Cmd::Bench { parallel } => cmd_bench(*parallel),
        Cmd::Selftest { parallel } => cmd_selftest(*parallel),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
