//! The `analyze`, `ppr` and `gen` pipelines behind the command-line tool.
//!
//! Exit codes:
//!
//! | code | meaning                                              |
//! |------|------------------------------------------------------|
//! | 0    | success                                              |
//! | 2    | unreadable input, unwritable output, bad arguments   |
//! | 3    | malformed input file                                 |
//! | 4    | internal invariant violated                          |
//!
//! Outputs are assembled in a hidden staging directory next to the target
//! and moved into place only once everything has been computed, so a failed
//! run leaves no partial output behind.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use pathdiv_core::ppr::{self, BgpDigraph};
use pathdiv_core::report::{self, Metric};
use pathdiv_core::sources::{self, OriginMap, Roster};
use pathdiv_core::syngen::SynConfig;
use pathdiv_core::AsNumber;

use crate::{csv, dot, ingest, parallel, synth, FormatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Mode {
    /// Arc-disjoint path matrix, statistics and histogram.
    #[default]
    Adp,
    /// Internally-disjoint path matrix, statistics and histogram.
    Idp,
    /// Preferred-path arborescence of every origin.
    Ppr,
    /// Everything above.
    All,
}

impl Mode {
    fn wants(self, other: Mode) -> bool {
        self == other || self == Mode::All
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub roster: PathBuf,
    pub routes: Vec<PathBuf>,
    pub policies: Vec<PathBuf>,
    pub traces: Vec<PathBuf>,
    pub out: PathBuf,
    pub mode: Mode,
    /// Worker threads for the pairwise matrix; rayon's default when `None`.
    pub threads: Option<usize>,
}

impl RunConfig {
    fn source_count(&self) -> usize {
        self.routes.len() + self.policies.len() + self.traces.len()
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: FormatError },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> std::result::Result<T, FormatError>) -> Result<T> {
    let text = read(path)?;
    f(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

/// Output files collected in a staging directory until [`Staging::commit`].
struct Staging {
    dir: tempfile::TempDir,
    target: PathBuf,
}

impl Staging {
    fn new(target: &Path) -> Result<Self> {
        let write_err = |source| CliError::Write { path: target.to_owned(), source };
        let parent = match target.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent).map_err(write_err)?;
        if target.exists() && !target.is_dir() {
            return Err(write_err(io::Error::other("exists and is not a directory")));
        }
        let dir =
            tempfile::Builder::new().prefix(".pathdiv-staging-").tempdir_in(&parent).map_err(write_err)?;
        Ok(Staging { dir, target: target.to_owned() })
    }

    fn write(&self, rel: &str, contents: &str) -> Result<()> {
        let path = self.dir.path().join(rel);
        let write_err = |source| CliError::Write { path: self.target.join(rel), source };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(write_err)?;
        }
        fs::write(&path, contents).map_err(write_err)
    }

    /// Moves the staged tree into the target; into an existing directory,
    /// staged files replace same-named ones.
    fn commit(self) -> Result<()> {
        let write_err = |source| CliError::Write { path: self.target.clone(), source };
        if !self.target.exists() {
            let staged = self.dir.keep();
            return fs::rename(&staged, &self.target).map_err(write_err);
        }
        merge_into(self.dir.path(), &self.target).map_err(write_err)
    }
}

fn merge_into(from: &Path, to: &Path) -> io::Result<()> {
    fs::create_dir_all(to)?;
    let mut entries = fs::read_dir(from)?.collect::<io::Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.file_name());
    for entry in entries {
        let dest = to.join(entry.file_name());
        if entry.file_type()?.is_dir() {
            merge_into(&entry.path(), &dest)?;
        } else {
            fs::rename(entry.path(), dest)?;
        }
    }
    Ok(())
}

/// Parsed inputs, already merged per origin.
pub struct Loaded {
    pub roster: Roster,
    pub digraphs: OriginMap,
    /// `(file, looped lines dropped)` for every route or trace file that had
    /// any.
    pub dropped: Vec<(PathBuf, usize)>,
}

pub fn load(cfg: &RunConfig) -> Result<Loaded> {
    let roster = parse(&cfg.roster, ingest::parse_roster)?;
    let mut maps = Vec::new();
    let mut dropped = Vec::new();
    for path in &cfg.routes {
        let parsed = parse(path, ingest::parse_routes)?;
        if parsed.dropped_loops > 0 {
            dropped.push((path.clone(), parsed.dropped_loops));
        }
        maps.push(sources::routes_to_digraphs(&parsed.records, &roster));
    }
    for path in &cfg.policies {
        let rules = parse(path, ingest::parse_policies)?;
        maps.push(sources::policies_to_digraphs(&rules, &roster));
    }
    for path in &cfg.traces {
        let parsed = parse(path, ingest::parse_traces)?;
        if parsed.dropped_loops > 0 {
            dropped.push((path.clone(), parsed.dropped_loops));
        }
        maps.push(sources::traces_to_digraphs(&parsed.records, &roster));
    }
    let mut digraphs = sources::merge_sources(&maps);
    // a roster with no source still gets one edgeless digraph per origin
    for o in roster.iter() {
        if let std::collections::btree_map::Entry::Vacant(slot) = digraphs.entry(o) {
            let g = pathdiv_core::Digraph::edgeless(roster.iter());
            slot.insert(pathdiv_core::AnnouncementDigraph::new(o, g).map_err(invariant)?);
        }
    }
    Ok(Loaded { roster, digraphs, dropped })
}

/// What `analyze` computed, for the caller to report.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnalyzeSummary {
    pub roster_size: usize,
    pub ordered_pairs: usize,
    pub dropped_loops: usize,
    /// Pairs with more than one arc-disjoint path, when computed.
    pub diversity_excess: Option<usize>,
    /// Pairs with more than one internally-disjoint path, when computed.
    pub idp_diversity_excess: Option<usize>,
    /// Origins whose announcement misses part of the roster, when computed.
    pub origins_with_unreached: Option<usize>,
}

impl AnalyzeSummary {
    /// The contents of `summary.txt`.
    pub fn render(&self) -> String {
        let mut out = format!(
            "roster_size {}\nordered_pairs {}\ndropped_loops {}\n",
            self.roster_size, self.ordered_pairs, self.dropped_loops
        );
        if let Some(n) = self.diversity_excess {
            out += &format!("diversity_excess {n}\n");
        }
        if let Some(n) = self.idp_diversity_excess {
            out += &format!("idp_diversity_excess {n}\n");
        }
        if let Some(n) = self.origins_with_unreached {
            out += &format!("origins_with_unreached {n}\n");
        }
        out
    }
}

fn check_bgp(b: &BgpDigraph) -> Result<()> {
    let tree = b.graph().is_arborescence(b.origin()).map_err(invariant)?;
    if !tree || !ppr::verify_single_path(b) {
        return Err(CliError::Invariant(format!(
            "preferred-path digraph of AS{} is not an arborescence",
            b.origin()
        )));
    }
    Ok(())
}

fn unreached_line(v: &std::collections::BTreeSet<AsNumber>) -> String {
    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_metric(
    staging: &Staging,
    digraphs: &OriginMap,
    metric: Metric,
    prefix: &str,
    threads: Option<usize>,
) -> Result<usize> {
    let matrix = parallel::compute_matrix(digraphs, metric, threads).map_err(invariant)?;
    let stats = report::compute_all_stats(&matrix).map_err(invariant)?;
    let hist = report::compute_histogram(&matrix);
    let n = matrix.roster().len();
    if hist.total() != n * (n - 1) {
        return Err(CliError::Invariant(format!(
            "histogram counts {} pairs, expected {}",
            hist.total(),
            n * (n - 1)
        )));
    }
    staging.write(&format!("{prefix}matrix.csv"), &csv::write_matrix_csv(&matrix))?;
    staging.write(&format!("{prefix}stats.csv"), &csv::write_stats_csv(&stats))?;
    staging.write(&format!("{prefix}histogram.csv"), &csv::write_histogram_csv(&hist))?;
    Ok(report::diversity_excess(&hist))
}

/// Runs the full pipeline and writes, under `cfg.out`:
///
/// * `digraphs/AS<n>.dot` and `digraphs/AS<n>.csv`: every merged
///   announcement digraph, as Graphviz and as an adjacency matrix;
/// * `matrix.csv`, `stats.csv`, `histogram.csv` (modes `adp`, `all`);
/// * `idp_matrix.csv`, `idp_stats.csv`, `idp_histogram.csv` (modes `idp`, `all`);
/// * `bgp/AS<n>.dot` and `unreached.csv` (modes `ppr`, `all`);
/// * `summary.txt`.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<AnalyzeSummary> {
    if cfg.source_count() == 0 {
        return Err(CliError::Usage("at least one of --routes, --policies or --traces is required".into()));
    }
    let loaded = load(cfg)?;
    let staging = Staging::new(&cfg.out)?;
    let n = loaded.roster.len();
    let mut summary = AnalyzeSummary {
        roster_size: n,
        ordered_pairs: n * (n - 1),
        dropped_loops: loaded.dropped.iter().map(|(_, c)| c).sum(),
        ..Default::default()
    };

    for (o, a) in &loaded.digraphs {
        staging.write(&format!("digraphs/AS{o}.dot"), &dot::to_dot(a.graph(), Some(*o)))?;
        staging.write(&format!("digraphs/AS{o}.csv"), &csv::write_adjacency_csv(a.graph()))?;
    }
    if cfg.mode.wants(Mode::Adp) {
        summary.diversity_excess =
            Some(write_metric(&staging, &loaded.digraphs, Metric::ArcDisjoint, "", cfg.threads)?);
    }
    if cfg.mode.wants(Mode::Idp) {
        summary.idp_diversity_excess =
            Some(write_metric(&staging, &loaded.digraphs, Metric::InternallyDisjoint, "idp_", cfg.threads)?);
    }
    if cfg.mode.wants(Mode::Ppr) {
        let mut unreached = String::from("as,unreached\n");
        let mut with_unreached = 0;
        for b in ppr::select_all(loaded.digraphs.values()).values() {
            check_bgp(b)?;
            staging.write(&format!("bgp/AS{}.dot", b.origin()), &dot::to_dot(b.graph(), Some(b.origin())))?;
            unreached += &format!("{},{}\n", b.origin(), unreached_line(b.unreached()));
            with_unreached += usize::from(!b.unreached().is_empty());
        }
        staging.write("unreached.csv", &unreached)?;
        summary.origins_with_unreached = Some(with_unreached);
    }
    staging.write("summary.txt", &summary.render())?;
    staging.commit()?;
    Ok(summary)
}

/// The announcement and preferred-path digraphs of one origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PprOutcome {
    pub bgp: BgpDigraph,
    pub announcement_arcs: usize,
}

/// Writes `AS<n>_announcement.dot`, `AS<n>_bgp.dot` and `AS<n>_unreached.txt`
/// (one AS per line) for `origin` under `cfg.out`.
pub fn cmd_ppr(cfg: &RunConfig, origin: AsNumber) -> Result<PprOutcome> {
    if cfg.source_count() == 0 {
        return Err(CliError::Usage("at least one of --routes, --policies or --traces is required".into()));
    }
    let loaded = load(cfg)?;
    let Some(a) = loaded.digraphs.get(&origin) else {
        return Err(CliError::Usage(format!("AS{origin} is not on the roster")));
    };
    let bgp = ppr::select_bgp_digraph(a);
    check_bgp(&bgp)?;
    let staging = Staging::new(&cfg.out)?;
    staging.write(&format!("AS{origin}_announcement.dot"), &dot::to_dot(a.graph(), Some(origin)))?;
    staging.write(&format!("AS{origin}_bgp.dot"), &dot::to_dot(bgp.graph(), Some(origin)))?;
    let unreached: String = bgp.unreached().iter().map(|v| format!("{v}\n")).collect();
    staging.write(&format!("AS{origin}_unreached.txt"), &unreached)?;
    staging.commit()?;
    Ok(PprOutcome { announcement_arcs: a.graph().arc_count(), bgp })
}

/// Writes `roster.txt`, `policies.txt` and `routes.txt` under `out`.
pub fn cmd_gen(cfg: &SynConfig, out: &Path) -> Result<()> {
    let files = synth::generate(cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let staging = Staging::new(out)?;
    staging.write("roster.txt", &files.roster)?;
    staging.write("policies.txt", &files.policies)?;
    staging.write("routes.txt", &files.routes)?;
    staging.commit()
}
