//! Command-line front end for `isoterm-core`.
//!
//! Exit codes: 0 when the checked statement holds, 1 when it definitely
//! fails, 2 for bad input, 3 when a budget runs out.

pub mod reproduce;
pub mod spec;

use std::io::Write;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use isoterm_core::words::{identity_pair_unvn, same_type};
use isoterm_core::{
    satisfies_lee, satisfies_with, Config, ContainmentTarget, SearchOptions, TermChecker, Verdict,
    Word,
};
use serde_json::{json, Value};

use crate::reproduce::{run_suite, Context, Suite};
use crate::spec::{parse_monoid, parse_word_list, MonoidSpec};

#[derive(Parser, Debug)]
#[command(
    name = "isoterm",
    version,
    about = "Identities, isoterms and free objects of finite monoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Search-tree nodes one satisfaction check may visit.
    #[arg(long, global = true, default_value_t = 20_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    /// Elements a relatively free monoid may have.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = positive)]
    pub budget_elements: usize,
    /// Bytes of word-function storage.
    #[arg(long, global = true, default_value_t = 2 << 30, value_parser = positive)]
    pub budget_memory: usize,
    #[arg(long, global = true, default_value_t = 1, value_parser = positive)]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report zero timings so output is byte-stable.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 20240611)]
    pub seed: u64,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl RunArgs {
    pub fn config(&self) -> Config {
        Config {
            node_budget: self.budget_nodes,
            element_budget: self.budget_elements,
            memory_budget: self.budget_memory,
            ..Config::default()
        }
        .with_workers(self.workers)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Generic,
    Lee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Isoterm,
    Sametype,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a monoid's size, identity, zero and Cayley table.
    Monoid { monoid: String },
    /// Decide whether an identity holds.
    Check {
        monoid: String,
        u: Option<String>,
        v: Option<String>,
        /// Check U_N = V_N built from the Jackson word with exponent K.
        #[arg(long, num_args = 2, value_names = ["N", "K"], conflicts_with_all = ["u", "v"])]
        unvn: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = Engine::Generic)]
        engine: Engine,
    },
    /// Decide whether a word is an isoterm or a same-type term.
    Term {
        monoid: String,
        u: String,
        #[arg(long, value_enum, default_value_t = Mode::Isoterm)]
        mode: Mode,
    },
    /// Decide Property (C_L).
    PropertyC { monoid: String, l: usize },
    /// Check Property (C_5), U_n = V_n and the type difference for given n.
    NfbPremises {
        monoid: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Decide whether the monoid's variety contains S^1(W) or L_l^1.
    Contains {
        monoid: String,
        #[arg(long, conflicts_with = "words", required_unless_present = "words")]
        lee: Option<usize>,
        /// Comma-separated word list.
        #[arg(long)]
        words: Option<String>,
    },
    /// List the words over content(U) equal to U, up to a length.
    Equiv {
        monoid: String,
        u: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Classify all short words as isoterms or not.
    Scan {
        monoid: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        /// Also report whether each row is K-limited.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the built-in ledger of facts.
    Reproduce {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Whether the command's statement held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Everything checked passed but some facts ran out of budget.
    Skipped,
}

impl Outcome {
    fn of(holds: bool) -> Outcome {
        if holds {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Skipped => 3,
        }
    }
}

/// Exit code for an error: 3 for exhausted budgets, 2 for everything else.
pub fn error_code(err: &anyhow::Error) -> u8 {
    let resource = err.chain().any(|e| {
        e.downcast_ref::<isoterm_core::Error>()
            .is_some_and(|e| e.is_resource())
    });
    if resource {
        3
    } else {
        2
    }
}

fn word(text: &str) -> Result<Word> {
    isoterm_core::parse_word(text).map_err(|e| anyhow!("bad word {text:?}: {e}"))
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    value: &Value,
    table: impl FnOnce() -> String,
) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Table => write!(out, "{}", table())?,
    }
    Ok(())
}

fn monoid_json(spec: &MonoidSpec) -> Value {
    let m = &spec.monoid;
    json!({
        "name": spec.name,
        "size": m.size(),
        "identity": m.label(m.identity()),
        "zero": m.zero().map(|z| m.label(z)),
        "labels": m.labels(),
        "table": m.rows(),
    })
}

fn monoid_table(spec: &MonoidSpec) -> String {
    let m = &spec.monoid;
    let width = m.labels().iter().map(|l| l.len()).max().unwrap_or(1);
    let mut s = format!(
        "{}: size {}, identity {}, zero {}\n",
        spec.name,
        m.size(),
        m.label(m.identity()),
        m.zero().map_or("none", |z| m.label(z))
    );
    s.push_str(&format!("{:>width$} |", "*"));
    for l in m.labels() {
        s.push_str(&format!(" {l:>width$}"));
    }
    s.push('\n');
    for a in m.elements() {
        s.push_str(&format!("{:>width$} |", m.label(a)));
        for b in m.elements() {
            s.push_str(&format!(" {:>width$}", m.label(m.mul(a, b))));
        }
        s.push('\n');
    }
    s
}

fn run_check(
    spec: &MonoidSpec,
    u: &Word,
    v: &Word,
    engine: Engine,
    config: &Config,
) -> Result<Verdict> {
    let opts = SearchOptions::from(config);
    Ok(match engine {
        Engine::Generic => satisfies_with(&spec.monoid, u, v, &opts)?,
        Engine::Lee => {
            let Some(l) = spec.lee else {
                bail!("--engine lee needs a lee:L monoid");
            };
            satisfies_lee(l, u, v, &opts)?
        }
    })
}

fn verdict_table(verdict: &Value) -> String {
    let holds = verdict["holds"].as_bool().unwrap_or(false);
    let mut s = format!("holds: {holds}\nnodes: {}\n", verdict["nodes"]);
    if let Value::Object(w) = &verdict["witness"] {
        let parts: Vec<String> = w
            .iter()
            .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or("")))
            .collect();
        s.push_str(&format!("witness: {}\n", parts.join(", ")));
    }
    s
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let args = &cli.run;
    let config = args.config();
    let format = args.format;
    match &cli.command {
        Command::Monoid { monoid } => {
            let spec = parse_monoid(monoid)?;
            emit(out, format, &monoid_json(&spec), || monoid_table(&spec))?;
            Ok(Outcome::Pass)
        }
        Command::Check {
            monoid,
            u,
            v,
            unvn,
            engine,
        } => {
            let spec = parse_monoid(monoid)?;
            let (u, v) = match (unvn, u, v) {
                (Some(nk), _, _) => identity_pair_unvn(nk[0] as usize, nk[1])?,
                (None, Some(u), Some(v)) => (word(u)?, word(v)?),
                _ => bail!("check needs two words or --unvn N K"),
            };
            let verdict = run_check(&spec, &u, &v, *engine, &config)?;
            let mut value = verdict.to_json(&spec.monoid, args.deterministic);
            value["identity"] = json!(format!("{u} = {v}"));
            emit(out, format, &value, || verdict_table(&value))?;
            Ok(Outcome::of(verdict.holds))
        }
        Command::Term { monoid, u, mode } => {
            let spec = parse_monoid(monoid)?;
            let u = word(u)?;
            let checker = TermChecker::new(&spec.monoid, config);
            let verdict = match mode {
                Mode::Isoterm => checker.is_isoterm(&u)?,
                Mode::Sametype => checker.is_tau_term_sametype(&u)?,
            };
            let value = verdict.to_json(&u);
            emit(out, format, &value, || {
                let mut s = format!("{u}: {}\n", value["status"].as_str().unwrap_or(""));
                if let Some(w) = &verdict.witness {
                    s.push_str(&format!("witness: {w}\n"));
                }
                s
            })?;
            Ok(Outcome::of(verdict.is_term()))
        }
        Command::PropertyC { monoid, l } => {
            let spec = parse_monoid(monoid)?;
            let p = TermChecker::new(&spec.monoid, config).property_c(*l)?;
            let witness = p
                .witness
                .as_ref()
                .map(|(u, v)| json!([u.to_string(), v.to_string()]));
            let value = json!({
                "l": l,
                "holds": p.holds,
                "witness": witness,
                "words_checked": p.words_checked,
                "exponent_bound": p.exponent_bound,
            });
            emit(out, format, &value, || {
                let mut s = format!(
                    "property C_{l}: {}\nwords checked: {}\n",
                    p.holds, p.words_checked
                );
                if let Some((u, v)) = &p.witness {
                    s.push_str(&format!("witness: {u} = {v}\n"));
                }
                s
            })?;
            Ok(Outcome::of(p.holds))
        }
        Command::NfbPremises { monoid, n, k } => {
            let spec = parse_monoid(monoid)?;
            let p = TermChecker::new(&spec.monoid, config.clone()).property_c(5)?;
            let engine = if spec.lee.is_some() {
                Engine::Lee
            } else {
                Engine::Generic
            };
            let mut rows = Vec::new();
            let mut all = p.holds;
            for &n in n {
                let (u, v) = identity_pair_unvn(n, *k)?;
                let verdict = run_check(&spec, &u, &v, engine, &config)?;
                let differ = !same_type(&u, &v);
                all &= verdict.holds && differ;
                rows.push(json!({
                    "n": n,
                    "satisfied": verdict.holds,
                    "types_differ": differ,
                    "nodes": verdict.nodes,
                }));
            }
            let ns: Vec<String> = n.iter().map(|n| n.to_string()).collect();
            let summary = if all {
                format!(
                    "premises verified for n in {{{}}}; finite-instance evidence only, not a proof for every n",
                    ns.join(", ")
                )
            } else {
                format!("premises not verified for n in {{{}}}", ns.join(", "))
            };
            let value = json!({
                "property_c5": p.holds,
                "instances": rows,
                "summary": summary,
            });
            emit(out, format, &value, || {
                let mut s = format!("property C_5: {}\n", p.holds);
                for r in &rows {
                    s.push_str(&format!(
                        "n={}: U_n = V_n {}, types differ {}\n",
                        r["n"], r["satisfied"], r["types_differ"]
                    ));
                }
                s.push_str(&summary);
                s.push('\n');
                s
            })?;
            Ok(Outcome::of(all))
        }
        Command::Contains { monoid, lee, words } => {
            let spec = parse_monoid(monoid)?;
            let target = match (lee, words) {
                (Some(l), _) => ContainmentTarget::Lee(*l),
                (None, Some(list)) => ContainmentTarget::Dilworth(parse_word_list(list)?),
                (None, None) => bail!("contains needs --lee or --words"),
            };
            let c = TermChecker::new(&spec.monoid, config).variety_containment(&target)?;
            let evidence: Vec<Value> = c
                .evidence
                .iter()
                .map(|e| json!({"query": e.query, "holds": e.holds, "witness": e.witness}))
                .collect();
            let value = json!({"contained": c.contained, "evidence": evidence});
            emit(out, format, &value, || {
                let mut s = format!("contained: {}\n", c.contained);
                for e in &c.evidence {
                    s.push_str(&format!("{}: {}", e.query, e.holds));
                    if let Some(w) = &e.witness {
                        s.push_str(&format!(" ({w})"));
                    }
                    s.push('\n');
                }
                s
            })?;
            Ok(Outcome::of(c.contained))
        }
        Command::Equiv { monoid, u, max_len } => {
            let spec = parse_monoid(monoid)?;
            let u = word(u)?;
            let found =
                TermChecker::new(&spec.monoid, config).enumerate_equivalent(&u, *max_len)?;
            let words: Vec<String> = found.iter().map(|w| w.to_string()).collect();
            let value = json!({"query": u.to_string(), "max_len": max_len, "words": words});
            emit(out, format, &value, || {
                words.iter().map(|w| format!("{w}\n")).collect()
            })?;
            Ok(Outcome::Pass)
        }
        Command::Scan {
            monoid,
            max_len,
            alphabet,
            k,
        } => {
            let spec = parse_monoid(monoid)?;
            let scan = TermChecker::new(&spec.monoid, config).isoterm_scan(*max_len, *alphabet)?;
            match format {
                Format::Table => {
                    let mut csv = csv::Writer::from_writer(Vec::new());
                    let mut header = vec!["word", "isoterm", "max_occ"];
                    if k.is_some() {
                        header.push("klimited");
                    }
                    csv.write_record(&header)?;
                    for r in &scan.rows {
                        let mut rec = vec![
                            r.word.compact(),
                            r.isoterm.to_string(),
                            r.max_occ.to_string(),
                        ];
                        if let Some(k) = k {
                            rec.push(r.klimited(*k).to_string());
                        }
                        csv.write_record(&rec)?;
                    }
                    out.write_all(&csv.into_inner()?)?;
                }
                Format::Json => {
                    let rows: Vec<Value> = scan
                        .rows
                        .iter()
                        .map(|r| {
                            let mut row = json!({"word": r.word.compact(), "isoterm": r.isoterm, "max_occ": r.max_occ});
                            if let Some(k) = k {
                                row["klimited"] = json!(r.klimited(*k));
                            }
                            row
                        })
                        .collect();
                    let value = json!({"rows": rows, "isoterm_limit": scan.isoterm_limit()});
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
            }
            Ok(match k {
                Some(k) => Outcome::of(scan.isoterms().all(|r| r.klimited(*k))),
                None => Outcome::Pass,
            })
        }
        Command::Reproduce { suite } => {
            let ctx = Context {
                config,
                seed: args.seed,
                deterministic: args.deterministic,
            };
            let ledger = run_suite(*suite, &ctx);
            emit(out, format, &serde_json::to_value(&ledger)?, || {
                ledger
                    .iter()
                    .map(|e| {
                        format!(
                            "{:<8} {:<32} {:>7} ms  {}\n",
                            e.status, e.fact_id, e.millis, e.paper_ref
                        )
                    })
                    .collect()
            })?;
            Ok(if ledger.iter().any(|e| !e.passed() && !e.skipped()) {
                Outcome::Fail
            } else if ledger.iter().any(|e| e.skipped()) {
                Outcome::Skipped
            } else {
                Outcome::Pass
            })
        }
    }
}
