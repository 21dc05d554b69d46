//! The `orbitflip` command line.
//!
//! Exit codes: 0 on success, 1 for unreadable or invalid input, 2 when the
//! input is valid but the answer is negative (an infeasible reconfiguration,
//! a failed verification, a failed shelling or census check).

pub mod format;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::geometry::{cross, in_circle, Edge, Point, PointSet, MAX_COORD};
use crate::oracle::{elementary_cycle_census, verify_shelling, Limits};
use crate::orbits::QuadrilateralGraph;
use crate::reconfigure::Reconfigurer;
use crate::triangulation::{delaunay, LabelledTriangulation};
use format::{parse_sequence, sequence_to_text, FormatError, Instance};

#[derive(Parser, Debug)]
#[command(
    name = "orbitflip",
    version,
    about = "Flip reconfiguration of edge-labelled triangulations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Where to write the produced file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest point set the brute-force checks accept.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Seed for random generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    /// One JSON object on stdout.
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the orbit of every segment.
    Orbits { instance: PathBuf },
    /// Build a flip sequence between two labellings.
    Reconfigure {
        instance: PathBuf,
        from: String,
        to: String,
    },
    /// Replay a sequence file and compare against a labelling.
    Verify {
        instance: PathBuf,
        from: String,
        sequence: PathBuf,
        to: String,
    },
    /// Print the Delaunay triangulation.
    Delaunay { instance: PathBuf },
    /// Generate a random instance in general position.
    Random {
        #[arg(long)]
        n: usize,
        /// Coordinates are drawn from [-range, range].
        #[arg(long, default_value_t = 1000)]
        range: i64,
    },
    /// Check that the angle-vector order of all triangulations is a shelling.
    ShellingCheck { instance: PathBuf },
    /// Enumerate elementary 4- and 5-cycles and check short flip-graph cycles.
    Census { instance: PathBuf },
}

/// Result of one command: exit code plus output in both styles.
struct Report {
    code: i32,
    human: String,
    machine: Value,
}

impl Report {
    fn ok(human: String, machine: Value) -> Self {
        Report {
            code: 0,
            human,
            machine,
        }
    }

    fn negative(human: String, machine: Value) -> Self {
        Report {
            code: 2,
            human,
            machine,
        }
    }
}

/// An input problem, reported with exit code 1.
#[derive(Debug)]
struct InputError(String);

impl From<FormatError> for InputError {
    fn from(e: FormatError) -> Self {
        InputError(e.to_string())
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    execute(&cli, stdout, stderr)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(cli) {
        Ok(report) => {
            let text = match cli.format {
                OutputFormat::Human => report.human,
                OutputFormat::Machine => format!("{}\n", report.machine),
            };
            let _ = write!(stdout, "{text}");
            report.code
        }
        Err(InputError(msg)) => {
            match cli.format {
                OutputFormat::Human => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                OutputFormat::Machine => {
                    let _ = writeln!(stdout, "{}", json!({ "error": msg }));
                }
            }
            1
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = cli.max_n {
        l.max_unlabelled = n;
        l.max_labelled = n;
    }
    l
}

fn load(path: &Path) -> Result<Instance, InputError> {
    let text =
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn edge_json(e: Edge) -> Value {
    json!([e.a(), e.b()])
}

fn edge_list(edges: impl IntoIterator<Item = Edge>) -> String {
    edges
        .into_iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Orbits { instance } => cmd_orbits(&load(instance)?),
        Command::Reconfigure { instance, from, to } => {
            cmd_reconfigure(cli, &load(instance)?, from, to)
        }
        Command::Verify {
            instance,
            from,
            sequence,
            to,
        } => cmd_verify(&load(instance)?, from, sequence, to),
        Command::Delaunay { instance } => cmd_delaunay(cli, load(instance)?),
        Command::Random { n, range } => cmd_random(cli, *n, *range),
        Command::ShellingCheck { instance } => cmd_shelling(cli, &load(instance)?),
        Command::Census { instance } => cmd_census(cli, &load(instance)?),
    }
}

fn cmd_orbits(inst: &Instance) -> Result<Report, InputError> {
    let part = QuadrilateralGraph::new(inst.points.clone()).orbits();
    let mut human = format!(
        "{} orbits over {} segments\n",
        part.len(),
        inst.points.segment_count()
    );
    let mut orbits = Vec::new();
    for (id, members) in part.orbits().iter().enumerate() {
        human += &format!(
            "orbit {id} ({}): {}\n",
            members.len(),
            edge_list(members.iter().copied())
        );
        orbits.push(json!({
            "id": id,
            "edges": members.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
        }));
    }
    Ok(Report::ok(human, json!({ "orbits": orbits })))
}

fn cmd_reconfigure(cli: &Cli, inst: &Instance, from: &str, to: &str) -> Result<Report, InputError> {
    let (lt1, lt2) = (inst.labelling(from)?, inst.labelling(to)?);
    let r = Reconfigurer::new(inst.points.clone());
    match r.reconfigure(lt1, lt2) {
        Ok(out) => {
            let text = sequence_to_text(&out.sequence, &inst.hash());
            let mut human = format!(
                "feasible: {} flips ({} before label repair), {} elementary swaps\n",
                out.sequence.len(),
                out.unlabelled_flips,
                out.swaps
            );
            match &cli.out {
                Some(path) => {
                    write_out(path, &text)?;
                    human += &format!("wrote {}\n", path.display());
                }
                None => human += &text,
            }
            let events: Vec<String> = out.sequence.iter().map(|ev| ev.to_string()).collect();
            Ok(Report::ok(
                human,
                json!({
                    "feasible": true,
                    "length": out.sequence.len(),
                    "unlabelled_flips": out.unlabelled_flips,
                    "swaps": out.swaps,
                    "sequence": events,
                }),
            ))
        }
        Err(Error::Infeasible { label, from: e, to: f }) => Ok(Report::negative(
            format!(
                "infeasible: label {label} is on {e} in {from} and on {f} in {to}, which lie in different orbits\n"
            ),
            json!({
                "feasible": false,
                "label": label.0,
                "from_edge": edge_json(e),
                "to_edge": edge_json(f),
            }),
        )),
        Err(other) => Err(other.into()),
    }
}

fn cmd_verify(
    inst: &Instance,
    from: &str,
    seq_path: &Path,
    to: &str,
) -> Result<Report, InputError> {
    let (lt1, lt2) = (inst.labelling(from)?, inst.labelling(to)?);
    let text = fs::read_to_string(seq_path)
        .map_err(|e| InputError(format!("{}: {e}", seq_path.display())))?;
    let (hash, seq) =
        parse_sequence(&text).map_err(|e| InputError(format!("{}: {e}", seq_path.display())))?;
    if hash != inst.hash() {
        return Err(InputError(format!(
            "{} was computed for a different point set",
            seq_path.display()
        )));
    }
    let lt = match lt1.apply_sequence(&seq) {
        Ok(lt) => lt,
        Err(Error::InvalidAt { index, reason }) => {
            return Ok(Report::negative(
                format!("event {index} cannot be applied: {reason}\n"),
                json!({ "ok": false, "invalid_event": index, "reason": reason }),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let diff = label_diff(&lt, lt2);
    if diff.is_empty() {
        Ok(Report::ok(
            format!("ok: {} flips replay {from} to {to}\n", seq.len()),
            json!({ "ok": true, "length": seq.len() }),
        ))
    } else {
        let mut human = format!("mismatch after {} flips:\n", seq.len());
        for line in &diff {
            human += &format!("  {line}\n");
        }
        Ok(Report::negative(
            human,
            json!({ "ok": false, "diff": diff }),
        ))
    }
}

/// Differences between a replayed labelling and the expected one.
fn label_diff(got: &LabelledTriangulation, want: &LabelledTriangulation) -> Vec<String> {
    let mut out = Vec::new();
    let (g, w) = (got.triangulation().edges(), want.triangulation().edges());
    let missing: Vec<Edge> = w.difference(g).copied().collect();
    let extra: Vec<Edge> = g.difference(w).copied().collect();
    if !missing.is_empty() {
        out.push(format!("missing edges: {}", edge_list(missing)));
    }
    if !extra.is_empty() {
        out.push(format!("unexpected edges: {}", edge_list(extra)));
    }
    for (&l, &e) in want.edges_by_label() {
        match got.edge_of(l) {
            Some(f) if f == e => {}
            Some(f) => out.push(format!("label {l}: expected on {e}, found on {f}")),
            None => out.push(format!("label {l}: missing")),
        }
    }
    out
}

fn cmd_delaunay(cli: &Cli, mut inst: Instance) -> Result<Report, InputError> {
    let t = delaunay(inst.points.clone());
    let mut human = format!("{}\n", edge_list(t.edges().iter().copied()));
    let machine = json!({ "edges": t.edges().iter().map(|&e| edge_json(e)).collect::<Vec<_>>() });
    if let Some(path) = &cli.out {
        inst.triangulations.insert("delaunay".into(), t);
        write_out(path, &inst.to_text())?;
        human += &format!("wrote {}\n", path.display());
    }
    Ok(Report::ok(human, machine))
}

/// Points drawn uniformly from `[-range, range]²`, rejecting any candidate
/// that repeats a point, is collinear with two chosen points or cocircular
/// with three.
pub fn random_point_set(n: usize, range: i64, seed: u64) -> crate::Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if !(1..=MAX_COORD).contains(&range) {
        return Err(Error::PreconditionViolated(format!(
            "range must lie in 1..={MAX_COORD}"
        )));
    }
    const RETRIES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let mut placed = false;
        for _ in 0..RETRIES {
            let p = Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            if general_position_with(&pts, p) {
                pts.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::PreconditionViolated(format!(
                "range {range} too small for {n} points in general position"
            )));
        }
    }
    PointSet::new(pts)
}

fn general_position_with(pts: &[Point], p: Point) -> bool {
    let k = pts.len();
    for i in 0..k {
        if pts[i] == p {
            return false;
        }
        for j in i + 1..k {
            if cross(pts[i], pts[j], p) == 0 {
                return false;
            }
            for l in j + 1..k {
                if in_circle(pts[i], pts[j], pts[l], p) == Ordering::Equal {
                    return false;
                }
            }
        }
    }
    true
}

fn cmd_random(cli: &Cli, n: usize, range: i64) -> Result<Report, InputError> {
    let seed = cli.seed.unwrap_or(0);
    let ps = Arc::new(random_point_set(n, range, seed)?);
    let mut inst = Instance::new(ps.clone());
    inst.labellings
        .insert("A".into(), LabelledTriangulation::canonical(delaunay(ps)));
    let text = inst.to_text();
    match &cli.out {
        Some(path) => {
            write_out(path, &text)?;
            Ok(Report::ok(
                format!("wrote {} points to {}\n", n, path.display()),
                json!({ "points": n, "seed": seed, "hash": inst.hash(), "path": path.display().to_string() }),
            ))
        }
        None => Ok(Report::ok(
            text.clone(),
            json!({ "points": n, "seed": seed, "hash": inst.hash(), "instance": text }),
        )),
    }
}

fn cmd_shelling(cli: &Cli, inst: &Instance) -> Result<Report, InputError> {
    match verify_shelling(inst.points.clone(), &limits(cli)) {
        Ok(r) => {
            let human = format!(
                "{} triangulations; shelling condition {}; Delaunay first: {}\n",
                r.order.len(),
                if r.failures.is_empty() {
                    "holds"
                } else {
                    "fails"
                },
                yes(r.delaunay_first)
            );
            let machine = json!({
                "triangulations": r.order.len(),
                "failures": r.failures,
                "delaunay_first": r.delaunay_first,
                "passed": r.passed(),
            });
            Ok(if r.passed() {
                Report::ok(human, machine)
            } else {
                Report::negative(human, machine)
            })
        }
        Err(Error::DegenerateOrder(ties)) => Ok(Report::negative(
            format!(
                "angle vectors tie for {} pairs of triangulations\n",
                ties.len()
            ),
            json!({ "passed": false, "ties": ties }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn cmd_census(cli: &Cli, inst: &Instance) -> Result<Report, InputError> {
    let c = elementary_cycle_census(inst.points.clone(), &limits(cli))?;
    let odd: BTreeSet<Vec<usize>> = c.non_elementary().into_iter().collect();
    let human = format!(
        "elementary 4-cycles: {}\nelementary 5-cycles: {}\ncycles shorter than 6: {}\n\
         all short cycles elementary: {}\n4-cycles fix labels: {}\n5-cycles transpose two labels: {}\n",
        c.four_cycles.len(),
        c.five_cycles.len(),
        c.short_cycles.len(),
        yes(odd.is_empty() && c.unmatched_elementary().is_empty()),
        yes(c.four_cycles_fix_labels()),
        yes(c.five_cycles_transpose()),
    );
    let machine = json!({
        "four_cycles": c.four_cycles.len(),
        "five_cycles": c.five_cycles.len(),
        "short_cycles": c.short_cycles.len(),
        "non_elementary": odd,
        "four_fix_labels": c.four_cycles_fix_labels(),
        "five_transpose": c.five_cycles_transpose(),
        "consistent": c.is_consistent(),
    });
    Ok(if c.is_consistent() {
        Report::ok(human, machine)
    } else {
        Report::negative(human, machine)
    })
}
