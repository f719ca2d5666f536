//! Command-line surface: group files, argument handling and report output.
//!
//! A group file gives the degree and then one generator per line in
//! disjoint-cycle notation with 1-based points:
//!
//! ```text
//! degree 4
//! gen (1 2)(3 4)
//! gen (1 2 3)
//! ```
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 budget
//! exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::actions::{pair_action, ActionError, BuiltinSpec, PairIndexMap};
use crate::brsc::{self, BaseEnumeration, BrscError, EnumerationMode, DEFAULT_COMPLEX_DEGREE, DEFAULT_NODE_BUDGET};
use crate::explorer::{self, CatalogRow, ConjectureReport, Verdict};
use crate::galois::{self, GaloisError, DEFAULT_LATTICE_BOUND};
use crate::moore::{parse_moore_text, MooreDocument, MooreError, RepresentabilityCertificate, SimplicialComplex};
use crate::perm::DEFAULT_ELEMENT_CAP;
use crate::{PermError, Permutation, PermutationGroup, PointSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parses the cycles of one `gen` line. `offset` is the column of `text[0]`.
fn parse_cycles(text: &str, line: usize, offset: usize, degree: usize) -> Result<Permutation, ParseError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; degree];
    let mut current: Option<Vec<usize>> = None;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let column = offset + text[..pos].chars().count();
        match c {
            '(' if current.is_none() => current = Some(Vec::new()),
            '(' => return Err(perr(line, column, "nested '('")),
            ')' => {
                let cycle = current.take().ok_or_else(|| perr(line, column, "unmatched ')'"))?;
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i + 1).map_or(text.len(), |&(p, _)| p);
                let word = &text[pos..end];
                let cycle = current.as_mut().ok_or_else(|| perr(line, column, "point outside a cycle"))?;
                let point = word.parse::<usize>().unwrap_or(usize::MAX);
                if point == 0 || point > degree {
                    return Err(perr(line, column, format!("point {word} outside 1..{degree}")));
                }
                if std::mem::replace(&mut seen[point - 1], true) {
                    return Err(perr(line, column, format!("point {point} repeated")));
                }
                cycle.push(point - 1);
            }
            other => return Err(perr(line, column, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    if current.is_some() {
        return Err(perr(line, offset + text.chars().count(), "unclosed '('"));
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| perr(line, offset, e.to_string()))
}

pub fn parse_group_file(text: &str) -> Result<PermutationGroup, ParseError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let keyword = trimmed.split_whitespace().next().unwrap();
        let rest = &trimmed[keyword.len()..];
        let rest_column = 1 + content[..indent + keyword.len()].chars().count();
        match keyword {
            "degree" => {
                if degree.is_some() {
                    return Err(perr(line, indent + 1, "duplicate degree line"));
                }
                let value = rest.trim();
                match value.parse::<usize>() {
                    Ok(n) if n > 0 => degree = Some(n),
                    _ => {
                        return Err(perr(
                            line,
                            rest_column + rest.len() - rest.trim_start().len(),
                            "degree must be a positive integer",
                        ))
                    }
                }
            }
            "gen" => {
                let n = degree.ok_or_else(|| perr(line, indent + 1, "degree line must come first"))?;
                gens.push(parse_cycles(rest, line, rest_column, n)?);
            }
            other => return Err(perr(line, indent + 1, format!("unknown keyword {other:?}"))),
        }
    }
    let degree = degree.ok_or_else(|| perr(1, 1, "missing degree line"))?;
    PermutationGroup::new(degree, gens).map_err(|e| perr(1, 1, e.to_string()))
}

pub fn emit_group_file(g: &PermutationGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        writeln!(out, "gen {s}").unwrap();
    }
    out
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    GroupFile { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("{0}")]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Moore(#[from] MooreError),
    #[error(transparent)]
    Brsc(#[from] BrscError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Galois(GaloisError::SizeExplosion { .. })
            | CliError::Brsc(BrscError::SearchBudgetExceeded { .. } | BrscError::MinBaseBudgetExceeded { .. })
            | CliError::Brsc(BrscError::SizeExplosion { .. })
            | CliError::Perm(PermError::OrderExceedsCap { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "permbrsc",
    version,
    about = "Closure lattices, irredundant bases and pair actions of permutation groups"
)]
pub struct Cli {
    /// Largest group order whose elements are listed explicitly
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    pub max_order: usize,
    /// Node budget for the base searches
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Drop points fixed by the whole group instead of rejecting them
    #[arg(long, global = true)]
    pub allow_fixed_points: bool,
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Work in the induced action on pairs; points are written `ab` or `a-b`
    #[arg(long, global = true)]
    pub pairs: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, order, orbits and a base
    Info { group: String },
    /// Closure of a point set
    Closure {
        group: String,
        #[arg(long)]
        set: String,
    },
    /// All closed sets, as a Moore family
    Lattice { group: String },
    /// Check a set or a sequence for irredundance
    Independent {
        group: String,
        #[command(flatten)]
        input: SetOrSequence,
    },
    /// Check that a set is a base
    Base {
        group: String,
        #[arg(long)]
        set: String,
    },
    /// Enumerate irredundant bases
    Bases {
        group: String,
        #[command(flatten)]
        mode: BasesMode,
    },
    /// Smallest base
    Minbase { group: String },
    /// Group file of the induced action on pairs
    Pairs { group: String },
    /// Complex of irredundant sets with flats and representability
    Complex {
        /// A group, or a Moore family or complex file
        group: String,
        #[arg(long, default_value_t = DEFAULT_COMPLEX_DEGREE)]
        max_degree: usize,
    },
    /// Compare the smallest pair-action base with n'
    Conjecture {
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        group: Option<String>,
        /// File with one group per line
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SetOrSequence {
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub sequence: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BasesMode {
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub extremes: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Closure { .. } => "closure",
            Command::Lattice { .. } => "lattice",
            Command::Independent { .. } => "independent",
            Command::Base { .. } => "base",
            Command::Bases { .. } => "bases",
            Command::Minbase { .. } => "minbase",
            Command::Pairs { .. } => "pairs",
            Command::Complex { .. } => "complex",
            Command::Conjecture { .. } => "conjecture",
        }
    }
}

/// Naming of the points a command works on. Users always write points in
/// the original numbering (or as pairs); stripped fixed points are mapped.
struct Domain {
    original_degree: usize,
    pairs: Option<PairIndexMap>,
    kept: Option<Vec<usize>>,
    degree: usize,
}

impl Domain {
    fn plain(degree: usize) -> Self {
        Domain { original_degree: degree, pairs: None, kept: None, degree }
    }

    fn is_plain(&self) -> bool {
        self.pairs.is_none() && self.kept.is_none()
    }

    fn label(&self, i: usize) -> String {
        let o = self.kept.as_ref().map_or(i, |k| k[i]);
        match &self.pairs {
            Some(m) => m.name(o),
            None => (o + 1).to_string(),
        }
    }

    fn parse_point(&self, word: &str) -> Result<usize, CliError> {
        let bad = || CliError::Usage(format!("bad point {word:?}"));
        let o = match &self.pairs {
            Some(m) => m.parse_name(word).ok_or_else(bad)?,
            None => match word.parse::<usize>() {
                Ok(p) if p >= 1 && p <= self.original_degree => p - 1,
                _ => return Err(bad()),
            },
        };
        match &self.kept {
            Some(k) => k
                .iter()
                .position(|&x| x == o)
                .ok_or_else(|| CliError::Usage(format!("point {word} is fixed by the group and was dropped"))),
            None => Ok(o),
        }
    }

    fn parse_list(&self, text: &str) -> Result<Vec<usize>, CliError> {
        text.split(',').map(str::trim).filter(|w| !w.is_empty()).map(|w| self.parse_point(w)).collect()
    }

    fn parse_set(&self, text: &str) -> Result<PointSet, CliError> {
        Ok(PointSet::from_points(self.degree, self.parse_list(text)?).unwrap())
    }

    fn labels(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|p| self.label(p)).collect()
    }

    fn seq(&self, seq: &[usize]) -> String {
        seq.iter().map(|&p| self.label(p)).collect::<Vec<_>>().join(",")
    }

    fn set(&self, set: &PointSet) -> String {
        format!("{{{}}}", self.labels(set).join(","))
    }

    /// `# i = label` lines when internal numbering differs from the labels.
    fn legend(&self) -> String {
        if self.is_plain() {
            return String::new();
        }
        (0..self.degree).map(|i| format!("# {} = {}\n", i + 1, self.label(i))).collect()
    }
}

/// Text, JSON and exit code of one command.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Source {
    Group(PermutationGroup),
    Moore(MooreDocument),
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty())?.split_whitespace().next()
}

fn load_source(arg: &str, max_order: usize) -> Result<Source, CliError> {
    if let Ok(spec) = arg.parse::<BuiltinSpec>() {
        return Ok(Source::Group(spec.build()?.with_element_cap(max_order)));
    }
    let text = read(arg)?;
    if first_keyword(&text) == Some("ground") {
        return Ok(Source::Moore(parse_moore_text(&text)?));
    }
    let g = parse_group_file(&text).map_err(|source| CliError::GroupFile { path: arg.to_string(), source })?;
    Ok(Source::Group(g.with_element_cap(max_order)))
}

fn load_group(arg: &str, max_order: usize) -> Result<PermutationGroup, CliError> {
    match load_source(arg, max_order)? {
        Source::Group(g) => Ok(g),
        Source::Moore(_) => Err(CliError::Usage(format!("{arg}: expected a group, found a Moore family or complex"))),
    }
}

/// Applies `--pairs` and `--allow-fixed-points`.
fn prepare(cli: &Cli, g: PermutationGroup) -> Result<(PermutationGroup, Domain), CliError> {
    let mut domain = Domain::plain(g.degree());
    let mut g = g;
    if cli.pairs {
        let (pg, map) = pair_action(&g)?;
        domain.original_degree = map.len();
        domain.degree = map.len();
        domain.pairs = Some(map);
        g = pg;
    }
    if cli.allow_fixed_points && g.has_trivial_orbits() {
        let (stripped, kept) = g.without_fixed_points()?;
        domain.degree = stripped.degree();
        domain.kept = Some(kept);
        g = stripped;
    }
    Ok((g, domain))
}

fn order_of(stabilizers: &[num_bigint::BigUint]) -> Vec<String> {
    stabilizers.iter().map(|o| o.to_string()).collect()
}

fn info(g: &PermutationGroup, d: &Domain) -> Report {
    let orbits: Vec<Vec<String>> = g.orbit_partition().iter().map(|o| d.labels(o)).collect();
    let fixed = g.global_fixed_points();
    let base = g.chain().base();
    let mut text = format!("degree {}\norder {}\ngenerators {}\n", g.degree(), g.order(), g.generators().len());
    writeln!(text, "transitive {}", g.is_transitive()).unwrap();
    for o in g.orbit_partition() {
        writeln!(text, "orbit {}", d.set(o)).unwrap();
    }
    writeln!(text, "fixed-points {}", d.set(&fixed)).unwrap();
    writeln!(text, "base {}", d.seq(&base)).unwrap();
    if let Some(k) = &d.kept {
        writeln!(text, "dropped {}", d.original_degree - k.len()).unwrap();
    }
    let json = json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "transitive": g.is_transitive(),
        "orbits": orbits,
        "fixed_points": d.labels(&fixed),
        "base": base.iter().map(|&p| d.label(p)).collect::<Vec<_>>(),
        "points": (0..g.degree()).map(|p| d.label(p)).collect::<Vec<_>>(),
    });
    Report::ok(text, json)
}

fn closure(g: &PermutationGroup, d: &Domain, set: &str) -> Result<Report, CliError> {
    let y = d.parse_set(set)?;
    let cl = galois::closure(g, &y)?;
    let closed = cl == y;
    let text = format!("closure {}\nclosed {closed}\n", d.set(&cl));
    Ok(Report::ok(text, json!({ "set": d.labels(&y), "closure": d.labels(&cl), "closed": closed })))
}

fn lattice(g: &PermutationGroup, d: &Domain) -> Result<Report, CliError> {
    let lattice = galois::closed_set_lattice(g, DEFAULT_LATTICE_BOUND)?;
    let text = d.legend() + &lattice.to_moore_family().to_text();
    let sets = |v: &[PointSet]| v.iter().map(|s| d.labels(s)).collect::<Vec<_>>();
    let json = json!({
        "closed_sets": sets(lattice.closed_sets()),
        "join_generators": sets(lattice.join_generators()),
    });
    Ok(Report::ok(text, json))
}

fn independent(g: &PermutationGroup, d: &Domain, input: &SetOrSequence) -> Result<Report, CliError> {
    if let Some(set) = &input.set {
        let y = d.parse_set(set)?;
        return Ok(match brsc::is_independent(g, &y) {
            Some(w) => Report::ok(
                format!(
                    "independent true order={} stabilizers={}\n",
                    d.seq(&w.order),
                    order_of(&w.stabilizer_orders).join(",")
                ),
                json!({
                    "set": d.labels(&y),
                    "independent": true,
                    "order": w.order.iter().map(|&p| d.label(p)).collect::<Vec<_>>(),
                    "stabilizer_orders": order_of(&w.stabilizer_orders),
                }),
            ),
            None => Report {
                text: "independent false\n".into(),
                json: json!({ "set": d.labels(&y), "independent": false }),
                code: 1,
            },
        });
    }
    let seq = d.parse_list(input.sequence.as_deref().unwrap_or_default())?;
    let labels: Vec<String> = seq.iter().map(|&p| d.label(p)).collect();
    Ok(match brsc::is_irredundant_sequence(g, &seq)? {
        Some(w) => Report::ok(
            format!("irredundant true stabilizers={}\n", order_of(&w.stabilizer_orders).join(",")),
            json!({ "sequence": labels, "irredundant": true, "stabilizer_orders": order_of(&w.stabilizer_orders) }),
        ),
        None => Report {
            text: "irredundant false\n".into(),
            json: json!({ "sequence": labels, "irredundant": false }),
            code: 1,
        },
    })
}

fn base(g: &PermutationGroup, d: &Domain, set: &str) -> Result<Report, CliError> {
    let b = d.parse_set(set)?;
    Ok(match brsc::base_report(g, &b) {
        Some(r) => {
            let mut text = format!("base size={} irredundant={}", r.size, r.irredundant);
            if let Some(w) = &r.witness {
                write!(text, " order={}", d.seq(&w.order)).unwrap();
            }
            text.push('\n');
            let json = json!({
                "set": d.labels(&b),
                "base": true,
                "size": r.size,
                "irredundant": r.irredundant,
                "order": r.witness.as_ref().map(|w| w.order.iter().map(|&p| d.label(p)).collect::<Vec<_>>()),
            });
            Report::ok(text, json)
        }
        None => {
            let order = g.pointwise_stabilizer(&b).order().to_string();
            Report {
                text: format!("not-a-base size={} stabilizer-order={order}\n", b.len()),
                json: json!({ "set": d.labels(&b), "base": false, "size": b.len(), "stabilizer_order": order }),
                code: 1,
            }
        }
    })
}

fn enumeration_report(d: &Domain, e: &BaseEnumeration, mode: EnumerationMode) -> Report {
    let mut text = String::new();
    for (set, order) in &e.bases {
        writeln!(text, "base {} order={}", d.set(set), d.seq(order)).unwrap();
    }
    writeln!(text, "count {}", e.count).unwrap();
    if mode == EnumerationMode::Extremes {
        let show = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
        writeln!(text, "min-size {}\nmax-size {}", show(e.min_size), show(e.max_size)).unwrap();
    }
    writeln!(text, "nodes {}\ncomplete {}", e.nodes, e.complete).unwrap();
    let bases: Vec<Value> = e
        .bases
        .iter()
        .map(|(set, order)| json!({ "set": d.labels(set), "order": order.iter().map(|&p| d.label(p)).collect::<Vec<_>>() }))
        .collect();
    let json = json!({
        "bases": bases,
        "count": e.count,
        "min_size": e.min_size,
        "max_size": e.max_size,
        "nodes": e.nodes,
        "complete": e.complete,
    });
    Report { text, json, code: if e.complete { 0 } else { 3 } }
}

fn bases(g: &PermutationGroup, d: &Domain, mode: &BasesMode, budget: u64) -> Result<Report, CliError> {
    let mode = if mode.all {
        EnumerationMode::All
    } else if mode.count {
        EnumerationMode::Count
    } else {
        EnumerationMode::Extremes
    };
    match brsc::enumerate_irredundant_bases(g, mode, budget) {
        Ok(e) => Ok(enumeration_report(d, &e, mode)),
        Err(BrscError::SearchBudgetExceeded { partial, .. }) => Ok(enumeration_report(d, &partial, mode)),
        Err(e) => Err(e.into()),
    }
}

fn minbase(g: &PermutationGroup, d: &Domain, budget: u64) -> Result<Report, CliError> {
    match brsc::min_base_size(g, budget) {
        Ok(m) => Ok(Report::ok(
            format!(
                "min-base size={} witness={} order={} nodes={}\n",
                m.size,
                d.set(&m.witness),
                d.seq(&m.order),
                m.nodes
            ),
            json!({
                "size": m.size,
                "witness": d.labels(&m.witness),
                "order": m.order.iter().map(|&p| d.label(p)).collect::<Vec<_>>(),
                "nodes": m.nodes,
            }),
        )),
        Err(BrscError::MinBaseBudgetExceeded { budget, searched_below }) => Ok(Report {
            text: format!("min-base budget-exceeded budget={budget} no-base-below={searched_below}\n"),
            json: json!({ "budget_exceeded": true, "budget": budget, "no_base_below": searched_below }),
            code: 3,
        }),
        Err(e) => Err(e.into()),
    }
}

fn pairs(g: &PermutationGroup) -> Result<Report, CliError> {
    let (pg, map) = pair_action(g)?;
    let names: Vec<String> = (0..map.len()).map(|i| map.name(i)).collect();
    let mut text: String = names.iter().enumerate().map(|(i, n)| format!("# {} = {n}\n", i + 1)).collect();
    text += &emit_group_file(&pg);
    let json = json!({
        "degree": pg.degree(),
        "order": pg.order().to_string(),
        "generators": pg.generators().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "pairs": names,
    });
    Ok(Report::ok(text, json))
}

fn complex_report(c: &SimplicialComplex, d: &Domain) -> Report {
    let rep = c.is_boolean_representable();
    let violation = c.exchange_violation();
    let bases = c.bases();
    let circuits = c.circuits();
    let mut text = d.legend();
    writeln!(text, "points {}", c.ground().len()).unwrap();
    writeln!(text, "independent-sets {}", c.len()).unwrap();
    writeln!(text, "rank {}\npure {}", bases.rank, bases.pure).unwrap();
    writeln!(text, "bases {}\ncircuits {}\nflats {}", bases.bases.len(), circuits.len(), rep.flats.len()).unwrap();
    writeln!(text, "boolean-representable {}", rep.representable).unwrap();
    let certificate = rep.certificate.as_ref().map(|cert| match cert {
        RepresentabilityCertificate::IndependentNotTransversal(s) => ("independent-not-transversal", s),
        RepresentabilityCertificate::DependentTransversal(s) => ("dependent-transversal", s),
    });
    if let Some((kind, s)) = certificate {
        writeln!(text, "certificate {kind} {}", d.set(s)).unwrap();
    }
    match &violation {
        None => writeln!(text, "exchange-property true").unwrap(),
        Some((i, j)) => writeln!(text, "exchange-property false I={} J={}", d.set(i), d.set(j)).unwrap(),
    }
    let sets = |v: &[PointSet]| v.iter().map(|s| d.labels(s)).collect::<Vec<_>>();
    let json = json!({
        "points": d.labels(c.ground()),
        "independent_sets": c.len(),
        "rank": bases.rank,
        "pure": bases.pure,
        "bases": sets(&bases.bases),
        "circuits": sets(&circuits),
        "flats": sets(rep.flats.members()),
        "boolean_representable": rep.representable,
        "certificate": certificate.map(|(kind, s)| json!({ "kind": kind, "set": d.labels(s) })),
        "exchange_property": violation.is_none(),
        "exchange_violation": violation.as_ref().map(|(i, j)| json!({ "i": d.labels(i), "j": d.labels(j) })),
    });
    Report::ok(text, json)
}

fn conjecture_row(r: &ConjectureReport) -> String {
    let show = |v: &Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let witness = r.witness.as_ref().map_or("-".to_string(), |w| format!("{{{}}}", w.join(",")));
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.group,
        r.n,
        r.n_prime,
        show(&r.min_base),
        r.verdict.as_str(),
        witness,
        r.certified,
        r.transitive
    )
}

const CATALOG_HEADER: &str = "group\tn\tn-prime\tmin-base\tverdict\twitness\tcertified\ttransitive\n";

fn conjecture(cli: &Cli, group: Option<&str>, catalog: Option<&PathBuf>) -> Result<Report, CliError> {
    if cli.pairs {
        return Err(CliError::Usage("conjecture builds the pair action itself; drop --pairs".into()));
    }
    if let Some(arg) = group {
        let g = load_group(arg, cli.max_order)?;
        let r = explorer::conjecture_check(arg, &g, cli.budget)?;
        let text = CATALOG_HEADER.to_string() + &conjecture_row(&r) + &format!("# {}\n", r.scope);
        let code = if r.verdict == Verdict::BudgetExceeded { 3 } else { 0 };
        return Ok(Report { text, json: serde_json::to_value(&r).unwrap(), code });
    }
    let path = catalog.expect("clap requires a group or a catalog");
    let listing = read(&path.to_string_lossy())?;
    let specs: Vec<String> = listing
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    let rows = explorer::catalog_run(&specs, cli.budget, |s| load_group(s, cli.max_order).map_err(|e| e.to_string()));
    let mut text = CATALOG_HEADER.to_string();
    let mut code = 0;
    for row in &rows {
        match row {
            CatalogRow::Report(r) => {
                text += &conjecture_row(r);
                if r.verdict == Verdict::BudgetExceeded {
                    code = 3;
                }
            }
            CatalogRow::Error { group, error } => {
                writeln!(text, "{group}\terror: {error}").unwrap();
                if code == 0 {
                    code = 2;
                }
            }
        }
    }
    if !rows.is_empty() {
        writeln!(text, "# {}", explorer::SCOPE_NOTE).unwrap();
    }
    Ok(Report { text, json: json!({ "rows": rows }), code })
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let group_for =
        |arg: &str| -> Result<(PermutationGroup, Domain), CliError> { prepare(cli, load_group(arg, cli.max_order)?) };
    match &cli.command {
        Command::Info { group } => {
            let (g, d) = group_for(group)?;
            Ok(info(&g, &d))
        }
        Command::Closure { group, set } => {
            let (g, d) = group_for(group)?;
            closure(&g, &d, set)
        }
        Command::Lattice { group } => {
            let (g, d) = group_for(group)?;
            lattice(&g, &d)
        }
        Command::Independent { group, input } => {
            let (g, d) = group_for(group)?;
            independent(&g, &d, input)
        }
        Command::Base { group, set } => {
            let (g, d) = group_for(group)?;
            base(&g, &d, set)
        }
        Command::Bases { group, mode } => {
            let (g, d) = group_for(group)?;
            bases(&g, &d, mode, cli.budget)
        }
        Command::Minbase { group } => {
            let (g, d) = group_for(group)?;
            minbase(&g, &d, cli.budget)
        }
        Command::Pairs { group } => {
            if cli.pairs || cli.allow_fixed_points {
                return Err(CliError::Usage("pairs takes the group as given".into()));
            }
            pairs(&load_group(group, cli.max_order)?)
        }
        Command::Complex { group, max_degree } => match load_source(group, cli.max_order)? {
            Source::Moore(doc) => {
                if cli.pairs || cli.allow_fixed_points {
                    return Err(CliError::Usage("--pairs and --allow-fixed-points need a group".into()));
                }
                let c = match doc {
                    MooreDocument::Family(f) => f.transversal_complex(),
                    MooreDocument::Complex(c) => c,
                };
                Ok(complex_report(&c, &Domain::plain(c.ground().width())))
            }
            Source::Group(g) => {
                let (g, d) = prepare(cli, g)?;
                Ok(complex_report(&brsc::materialize_complex(&g, *max_degree)?, &d))
            }
        },
        Command::Conjecture { group, catalog } => conjecture(cli, group.as_deref(), catalog.as_ref()),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: rendered, code: 2 }
            } else {
                Outcome { stdout: rendered, stderr: String::new(), code: 0 }
            };
        }
    };
    let command = cli.command.name();
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                let doc = json!({ "command": command, "result": report.json });
                serde_json::to_string_pretty(&doc).unwrap() + "\n"
            } else {
                report.text
            };
            Outcome { stdout, stderr: String::new(), code: report.code }
        }
        Err(e) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({ "command": command, "error": e.to_string() })).unwrap() + "\n"
            } else {
                String::new()
            };
            Outcome { stdout, stderr: format!("error: {e}\n"), code: e.exit_code() }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("permbrsc").chain(args.iter().copied()))
    }

    #[test]
    fn group_file_examples() {
        let s3 = parse_group_file("degree 3\ngen (1 2)\ngen (1 2 3)\n").unwrap();
        assert_eq!(s3.order(), 6u32.into());
        let v = parse_group_file("degree 4\ngen (1 2)(3 4)\n").unwrap();
        assert_eq!(v.order(), 2u32.into());
        let err = parse_group_file("degree 3\ngen (1 4)\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 8));
    }

    #[test]
    fn group_file_errors_have_positions() {
        let cases = [
            ("gen (1 2)\n", 1, 1),
            ("degree 3\ngen (1 2)(2 3)\n", 2, 11),
            ("degree 3\n  gen (1 2\n", 2, 11),
            ("degree x\n", 1, 8),
            ("degree 3\ncycle (1 2)\n", 2, 1),
            ("degree 3\ngen 1 2\n", 2, 5),
            ("# only a comment\n", 1, 1),
        ];
        for (text, line, column) in cases {
            let err = parse_group_file(text).unwrap_err();
            assert_eq!((err.line, err.column), (line, column), "{text:?}: {err}");
        }
    }

    #[test]
    fn identity_generators_and_comments() {
        let g = parse_group_file("# trivial\ndegree 2\ngen ()\ngen (1)(2)  # fixed\n").unwrap();
        assert_eq!(g.order(), 1u32.into());
        assert_eq!(emit_group_file(&g), "degree 2\ngen ()\ngen ()\n");
    }

    #[test]
    fn base_report_line() {
        let out = run_args(&["base", "sym:6", "--pairs", "--set", "12,23,45,56"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "base size=4 irredundant=true order=12,23,45,56\n");
    }

    #[test]
    fn lattice_of_sym3() {
        let out = run_args(&["lattice", "sym:3"]);
        assert_eq!(out.code, 0);
        let members: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("member")).collect();
        assert_eq!(members, ["member", "member 1", "member 2", "member 3", "member 1 2 3"]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["independent", "sym:4", "--pairs", "--set", "12,34"]).code, 1);
        assert_eq!(run_args(&["independent", "sym:4", "--pairs", "--set", "12,23"]).code, 0);
        assert_eq!(run_args(&["independent", "sym:4", "--sequence", "1,1"]).code, 2);
        assert_eq!(run_args(&["closure", "sym:4", "--set", "9"]).code, 2);
        assert_eq!(run_args(&["info", "/nonexistent/group"]).code, 2);
        assert_eq!(run_args(&["bases", "sym:6", "--count", "--budget", "5"]).code, 3);
        assert_eq!(run_args(&["minbase", "sym:7", "--pairs", "--budget", "3"]).code, 3);
        assert_eq!(run_args(&["info"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn fixed_points_need_the_flag() {
        let dir = std::env::temp_dir().join(format!("permbrsc-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fixed.grp");
        std::fs::write(&path, "degree 4\ngen (1 2 3)\n").unwrap();
        let p = path.to_str().unwrap();
        let refused = run_args(&["closure", p, "--set", "1"]);
        assert_eq!(refused.code, 2);
        let out = run_args(&["closure", p, "--set", "1", "--allow-fixed-points"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "closure {1,2,3}\nclosed false\n");
        assert_eq!(run_args(&["closure", p, "--set", "4", "--allow-fixed-points"]).code, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn json_is_one_document() {
        let out = run_args(&["--json", "minbase", "alt:5", "--pairs"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["command"], "minbase");
        assert_eq!(v["result"]["size"], 2);
        assert_eq!(v["result"]["witness"], json!(["12", "13"]));
    }

    #[test]
    fn conjecture_single_group() {
        let out = run_args(&["conjecture", "alt:5"]);
        assert_eq!(out.code, 0);
        let row = out.stdout.lines().nth(1).unwrap();
        assert_eq!(row, "alt:5\t5\t2\t2\tnot-a-witness\t{12,13}\ttrue\ttrue");
    }

    #[test]
    fn complex_from_moore_file() {
        let dir = std::env::temp_dir().join(format!("permbrsc-moore-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("family.moore");
        std::fs::write(
            &path,
            "ground 1 2 3 4\ngenerators 1 2 3\nmember\nmember 1\nmember 2\nmember 3\nmember 2 3 4\nmember 1 2 3 4\n",
        )
        .unwrap();
        let out = run_args(&["complex", path.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("rank 3\npure true\n"), "{}", out.stdout);
        assert!(out.stdout.contains("exchange-property true"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
