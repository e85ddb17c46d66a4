//! The `tautrel` command line. Exit codes: 0 success, 1 a check failed,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::foundations::{fmt_q, partitions, Partition};
use crate::relation::{Family, Outcome, Relation};
use crate::suite::{self, Check, FamilySet, Ranges};
use crate::{classical, equiv, fzrel, ionel, pairing, sqrel};

#[derive(Parser, Debug)]
#[command(name = "tautrel", version, about = "Kappa-class relations on M_g in exact arithmetic")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached epsilon tables (else $TAUTREL_CACHE, else the user cache dir)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FzForm {
    /// t-variable form with the Psi series
    T,
    /// z-variable form with the A, B, C series
    Z,
    /// z-form without p_{3k}, parts reindexed
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SqForm {
    Simple,
    Extended,
    S,
    Midb,
    Best,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Golden,
    Bernoulli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Families {
    All,
    Fz,
    Sq,
    Classical,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Faber-Zagier relation FZ(r, sigma) in genus g
    Fz {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        codim: i32,
        #[arg(long, default_value = "")]
        sigma: String,
        #[arg(long, value_enum, default_value_t = FzForm::T)]
        form: FzForm,
    },
    /// Stable-quotient relations
    Sq {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        codim: i32,
        /// x-degree d (unused by --form best)
        #[arg(long)]
        degree: Option<i32>,
        #[arg(long, default_value = "")]
        sigma: String,
        #[arg(long, value_enum, default_value_t = SqForm::Simple)]
        form: SqForm,
    },
    /// Classical relation [exp(-gamma^F)]_{t^r x^d z^sigma}
    Classical {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        codim: i32,
        #[arg(long)]
        degree: i32,
        /// z-monomial as "i:j:power,...", e.g. "1:0:1,2:1:1"
        #[arg(long, default_value = "")]
        z: String,
    },
    /// q/c tables and the operator tables c^n, b^n
    Ionel {
        #[arg(long, default_value_t = 8)]
        order: u32,
        /// operator order n (0 prints only q and c)
        #[arg(long, default_value_t = 0)]
        n: u32,
    },
    /// Series identity suites
    Identities {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 30)]
        order: u32,
    },
    /// SQ versus reduced FZ: decomposition of SQ_sigma or span checks
    Equivalence {
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long)]
        codim: Option<i32>,
        /// print the decomposition of SQ_sigma instead
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Epsilon evaluation of kappa_sigma, or the pairing matrix in codim k
    Pairing {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        codim: Option<u32>,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Gorenstein and FZ-quotient dimensions
    Gorenstein {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        codim: Option<u32>,
        /// allow genus above 16 (long exact runs)
        #[arg(long)]
        extended: bool,
    },
    /// Pairs every emitted relation against the complementary monomials
    Verify {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = Families::All)]
        family: Families,
        #[arg(long, default_value_t = 2)]
        sigma_max: u32,
    },
}

const EXTENDED_FROM: u32 = 17;

/// Cache directory: flag, then $TAUTREL_CACHE, then the platform cache dir.
pub fn cache_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(d) = flag {
        return d;
    }
    if let Some(d) = std::env::var_os("TAUTREL_CACHE").filter(|s| !s.is_empty()) {
        return PathBuf::from(d);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("LOCALAPPDATA").map(PathBuf::from))
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("tautrel")
}

/// Parses "i:j:e,..." into z-monomial triples.
pub fn parse_z(s: &str) -> Result<Vec<(u32, u32, u32)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let v: Vec<u32> = tok
                .split(':')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("malformed z factor {tok:?}")))?;
            match v[..] {
                [i, j, e] => Ok((i, j, e)),
                [i, j] => Ok((i, j, 1)),
                _ => Err(Error::Parse(format!("malformed z factor {tok:?}"))),
            }
        })
        .collect()
}

struct Out<'a> {
    format: Format,
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.w, "{}", s.as_ref())?;
        Ok(())
    }

    fn json(&mut self, v: &impl serde::Serialize) -> Result<()> {
        let s = serde_json::to_string(v).map_err(|e| Error::Consistency(e.to_string()))?;
        self.line(s)
    }
}

fn describe(rel: &Relation) -> String {
    let mut head = format!("{} g={} r={} sigma={}", rel.family, rel.genus, rel.codim, rel.sigma);
    if let Some(d) = rel.degree {
        head.push_str(&format!(" d={d}"));
    }
    if let Some(z) = &rel.z {
        let zs: Vec<String> = z.iter().map(|(i, j, e)| format!("{i}:{j}:{e}")).collect();
        head.push_str(&format!(" z={}", zs.join(",")));
    }
    format!("{head}: {} = 0", rel.poly)
}

fn emit_outcome(out: &mut Out, o: &Outcome) -> Result<i32> {
    match out.format {
        Format::Json => out.json(o)?,
        Format::Text => match o {
            Outcome::Relation(r) => out.line(describe(r))?,
            Outcome::GateEmpty(g) => out.line(format!(
                "gate empty: {} g={} r={} sigma={} ({})",
                g.family, g.genus, g.codim, g.sigma, g.reason
            ))?,
        },
    }
    Ok(0)
}

fn emit_checks(out: &mut Out, checks: &[Check], notes: &[String]) -> Result<i32> {
    match out.format {
        Format::Json => out.json(&json!({ "checks": checks, "notes": notes }))?,
        Format::Text => {
            for c in checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    out.line(format!("{mark} {}", c.name))?;
                } else {
                    out.line(format!("{mark} {} ({})", c.name, c.detail))?;
                }
            }
            for n in notes {
                out.line(format!("NOTE {n}"))?;
            }
        }
    }
    Ok(if suite::all_passed(checks) { 0 } else { 1 })
}

fn matrix_json(g: u32, k: u32, m: &[Vec<crate::Q>]) -> serde_json::Value {
    let rows: Vec<Partition> = partitions(k);
    let cols: Vec<Partition> = partitions(g - 2 - k);
    let entries: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
    json!({ "genus": g, "codim": k, "rows": rows, "cols": cols, "entries": entries })
}

fn emit_report(out: &mut Out, rep: &pairing::RankReport) -> Result<()> {
    match out.format {
        Format::Json => out.json(rep),
        Format::Text => {
            out.line(format!("genus {}", rep.genus))?;
            out.line("k  ambient  R_G  R_FZ  deficit")?;
            let f = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            for r in &rep.rows {
                out.line(format!(
                    "{:<2} {:>8} {:>4} {:>5} {:>8}",
                    r.codim,
                    r.ambient,
                    f(r.gorenstein),
                    f(r.fz_dim()),
                    r.deficit.map_or("-".to_string(), |d| d.to_string())
                ))?;
            }
            Ok(())
        }
    }
}

fn dispatch(cli: Cli, w: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cache = cache_dir(cli.cache_dir.clone());
    let cache = Some(cache.as_path());
    let mut out = Out { format: cli.format, w };
    match cli.cmd {
        Cmd::Fz { genus, codim, sigma, form } => {
            let sigma = Partition::parse(&sigma)?;
            let o = match form {
                FzForm::T => fzrel::fz_relation(genus, codim, &sigma)?,
                FzForm::Z => {
                    if fzrel::fz_gate(genus, codim, &sigma) {
                        let p = fzrel::fz0_coefficient(codim, &sigma)?.specialize(genus);
                        Outcome::Relation(Relation::new(genus, codim, sigma, Family::Fz, p))
                    } else {
                        fzrel::fz_relation(genus, codim, &sigma)?
                    }
                }
                FzForm::Reduced => fzrel::fz_reduced_relation(genus, codim, &sigma)?,
            };
            emit_outcome(&mut out, &o)
        }
        Cmd::Sq { genus, codim, degree, sigma, form } => {
            let sigma = Partition::parse(&sigma)?;
            let need_d = || degree.ok_or_else(|| Error::InvalidArgument("--degree is required for this form".into()));
            let o = match form {
                SqForm::Simple => {
                    if !sigma.is_empty() {
                        return Err(Error::InvalidArgument("the simple form takes no --sigma".into()));
                    }
                    sqrel::sq_simple_relation(genus, codim, need_d()?)?
                }
                SqForm::Extended => sqrel::sq_extended_relation(genus, codim, need_d()?, &sigma)?,
                SqForm::S => sqrel::expanded_s_relation(genus, codim, need_d()?, &sigma)?,
                SqForm::Midb => ionel::midb_relation(genus, codim, need_d()?, &sigma)?,
                SqForm::Best => ionel::best_relation(genus, codim, &sigma)?,
            };
            emit_outcome(&mut out, &o)
        }
        Cmd::Classical { genus, codim, degree, z } => {
            let z = parse_z(&z)?;
            emit_outcome(&mut out, &classical::classical_relation(genus, codim, degree, &z)?)
        }
        Cmd::Ionel { order, n } => {
            let t = ionel::qc_tables(order)?;
            let op = if n > 0 { Some(ionel::operator_tables(n, order)?) } else { None };
            let mut q_rows = Vec::new();
            let mut c_rows = Vec::new();
            for k in 0..=order {
                q_rows.push((0..=k).map(|j| t.q_at(k, j).to_string()).collect::<Vec<_>>());
                c_rows.push((0..=k).map(|j| fmt_q(&t.c_at(k, j))).collect::<Vec<_>>());
            }
            match out.format {
                Format::Json => {
                    let mut v = json!({ "order": order, "q": q_rows, "c": c_rows });
                    if let Some(op) = &op {
                        let c: Vec<(u32, u32, String)> = op.c.iter().map(|(&(k, j), x)| (k, j, fmt_q(x))).collect();
                        let b: Vec<String> = op.b.iter().map(fmt_q).collect();
                        v["operator"] = json!({ "n": op.n, "c": c, "b": b });
                    }
                    out.json(&v)?;
                }
                Format::Text => {
                    for k in 1..=order as usize {
                        out.line(format!("q[{k}] = {}", q_rows[k].join(" ")))?;
                    }
                    for k in 1..=order as usize {
                        out.line(format!("c[{k}] = {}", c_rows[k].join(" ")))?;
                    }
                    if let Some(op) = &op {
                        for ((k, j), x) in &op.c {
                            out.line(format!("c^{}[{k},{j}] = {}", op.n, fmt_q(x)))?;
                        }
                        let b: Vec<String> = op.b.iter().map(fmt_q).collect();
                        out.line(format!("b^{} = {}", op.n, b.join(" ")))?;
                    }
                }
            }
            Ok(0)
        }
        Cmd::Identities { suite: s, order } => {
            let mut checks = Vec::new();
            let mut notes = Vec::new();
            if s != Suite::Bernoulli {
                checks.extend(suite::golden_identities(order)?);
            }
            if s != Suite::Golden {
                checks.extend(suite::bernoulli_audit(12));
                for (n, holds, detail) in suite::bpp_display_report(12) {
                    let verdict = if holds { "holds" } else { "fails" };
                    notes.push(format!("displayed discrete a-identity n={n} {verdict}: {detail}"));
                }
            }
            emit_checks(&mut out, &checks, &notes)
        }
        Cmd::Equivalence { genus, codim, sigma } => {
            if let Some(s) = sigma {
                let d = equiv::decompose_sq(&Partition::parse(&s)?)?;
                match out.format {
                    Format::Json => out.json(&d)?,
                    Format::Text => {
                        out.line(format!("SQ_{} =", d.sigma))?;
                        for t in &d.terms {
                            let mu: Vec<String> = t.mu.iter().map(|m| format!("k{m}")).collect();
                            out.line(format!("  {} [{}] z^{} FZ_{}", fmt_q(&t.coeff), mu.join(" "), t.mu.iter().sum::<u32>(), t.tau))?;
                        }
                    }
                }
                return Ok(if d.side_conditions_hold() { 0 } else { 1 });
            }
            let g = genus.ok_or_else(|| Error::InvalidArgument("--genus or --sigma is required".into()))?;
            let codims: Vec<i32> = match codim {
                Some(r) => vec![r],
                None => (0..=g as i32 - 2).collect(),
            };
            let mut reps = Vec::new();
            for r in codims {
                reps.push(equiv::equivalence_rank_check(g, r)?);
            }
            match out.format {
                Format::Json => out.json(&reps)?,
                Format::Text => {
                    for r in &reps {
                        out.line(format!(
                            "g={} r={} sigmas={} rank={} identities={} unitriangular={} spans_equal={}",
                            r.genus,
                            r.codim,
                            r.sigmas.len(),
                            r.rank,
                            r.identities_hold,
                            r.unitriangular,
                            r.spans_equal
                        ))?;
                    }
                }
            }
            Ok(if reps.iter().all(|r| r.ok()) { 0 } else { 1 })
        }
        Cmd::Pairing { genus, codim, sigma } => match (codim, sigma) {
            (None, Some(s)) => {
                let s = Partition::parse(&s)?;
                let v = pairing::epsilon_eval(genus, &s, cache)?;
                match out.format {
                    Format::Json => out.json(&json!({ "genus": genus, "kappa": s, "value": fmt_q(&v) }))?,
                    Format::Text => out.line(format!("eps(kappa{s}) = {}", fmt_q(&v)))?,
                }
                Ok(0)
            }
            (Some(k), None) => {
                if genus < 2 || k > genus - 2 {
                    return Err(Error::InvalidArgument("need genus >= 2 and codim <= genus-2".into()));
                }
                let m = pairing::pairing_matrix(genus, k, cache)?;
                match out.format {
                    Format::Json => out.json(&matrix_json(genus, k, &m))?,
                    Format::Text => {
                        let cols: Vec<String> = partitions(genus - 2 - k).iter().map(|c| c.to_string()).collect();
                        out.line(format!("cols: {}", cols.join(" ")))?;
                        for (r, row) in partitions(k).iter().zip(&m) {
                            let vals: Vec<String> = row.iter().map(fmt_q).collect();
                            out.line(format!("{r}: {}", vals.join(" ")))?;
                        }
                    }
                }
                Ok(0)
            }
            _ => Err(Error::InvalidArgument("give exactly one of --codim and --sigma".into())),
        },
        Cmd::Gorenstein { genus, codim, extended } => {
            if genus >= EXTENDED_FROM && !extended {
                return Err(Error::InvalidArgument(format!("genus {genus} needs --extended")));
            }
            if extended {
                writeln!(err, "computing epsilon table for genus {genus}")?;
            }
            pairing::epsilon_table(genus, cache)?;
            let rep = match codim {
                Some(k) => {
                    if genus < 2 || k > genus - 2 {
                        return Err(Error::InvalidArgument("need genus >= 2 and codim <= genus-2".into()));
                    }
                    if extended {
                        writeln!(err, "ranks in codim {k}")?;
                    }
                    pairing::RankReport { genus, rows: vec![pairing::rank_row(genus, k, cache)?] }
                }
                None => {
                    let mut rows = Vec::new();
                    for k in 0..=genus.saturating_sub(2) {
                        if extended {
                            writeln!(err, "ranks in codim {k}")?;
                        }
                        rows.push(pairing::rank_row(genus, k, cache)?);
                    }
                    pairing::RankReport { genus, rows }
                }
            };
            emit_report(&mut out, &rep)?;
            Ok(0)
        }
        Cmd::Verify { genus, family, sigma_max } => {
            let set = match family {
                Families::All => FamilySet::All,
                Families::Fz => FamilySet::Fz,
                Families::Sq => FamilySet::Sq,
                Families::Classical => FamilySet::Classical,
            };
            let ranges = Ranges { sigma_max, ..Ranges::default() };
            let rels = suite::emitted_relations(genus as i64, set, &ranges)?;
            let rep = pairing::verify_relations_in_kernel(genus, &rels, cache)?;
            match out.format {
                Format::Json => out.json(&rep)?,
                Format::Text => {
                    out.line(format!(
                        "genus {}: {} relations, {} pairings, {} violations",
                        rep.genus,
                        rep.relations,
                        rep.pairings,
                        rep.violations.len()
                    ))?;
                    for v in &rep.violations {
                        let tau = v.tau.as_ref().map_or("-".to_string(), |t| t.to_string());
                        out.line(format!("  {} r={} sigma={} d={:?} tau={} value={}", v.family, v.codim, v.sigma, v.degree, tau, v.value))?;
                    }
                }
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
