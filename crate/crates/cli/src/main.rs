mod resolve;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use knot_cocycle::cocycle::{
    enumerate_2cocycles, mochizuki_cocycle, q6_appendix_cocycle, write_cocycle2, write_cocycle3,
    Coefficients, EnumerateOptions,
};
use knot_cocycle::concordance::{
    corollary21_report, corollary43_report, theorem11_check, theorem12_check, Verdict,
};
use knot_cocycle::diagram::{enumerate_colorings, ClosedDiagram};
use knot_cocycle::invariant::{
    omega_family, parse_multiset, phi_invariant, residue_support, twist_spun_cross_reference,
    twist_spun_reference, OmegaFamily, WeightMultiset,
};
use knot_cocycle::quandle::{parse_quandle_rows, verify_quandle_axioms, write_quandle};
use serde::Serialize;
use serde_json::{json, Value};

/// Version of the JSON documents printed with `--json`.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "knotcocycle",
    version,
    about = "Quandle cocycle invariants and ribbon-concordance obstructions"
)]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "KNOTCOCYCLE_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, verify and inspect quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Verify, generate and enumerate cocycles.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Colorings of braid closures.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// State-sum invariants.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Ribbon-concordance obstructions.
    #[command(subcommand)]
    Concordance(ConcordanceCmd),
}

#[derive(Subcommand)]
enum QuandleCmd {
    /// Write a builtin quandle (q6, rP) in the quandle file format.
    Build {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the three axioms.
    Verify {
        #[arg(long, conflicts_with = "quandle")]
        file: Option<String>,
        #[arg(long)]
        quandle: Option<String>,
    },
    /// Least s with x(*y)^s = x for all x, y.
    Type {
        #[arg(long)]
        quandle: String,
    },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Check the cocycle conditions of a file or builtin cocycle.
    Verify {
        #[arg(long)]
        cocycle: String,
        /// Defaults to the builtin cocycle's own quandle.
        #[arg(long)]
        quandle: Option<String>,
    },
    /// Write an explicit cocycle in the cocycle file format.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Solve for all 2-cocycles with Z/n coefficients.
    Enumerate {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        modulus: u64,
        /// Largest number of cocycles to list.
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        /// Print every cocycle, not just the generators.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Mochizuki 3-cocycle of R_p.
    Mochizuki {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Z4-valued 2-cocycle of Q6.
    Q6z4 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct KnotArgs {
    /// Braid text, e.g. "3: s1^3 s2^-1 s1^3 s2^-1".
    #[arg(long)]
    braid: Option<String>,
    /// Builtin knot: torus:L, sknot:M,N, figure8, unknot.
    #[arg(long)]
    knot: Option<String>,
}

#[derive(Subcommand)]
enum KnotCmd {
    /// Count or list the colorings of a closed braid.
    Colorings {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        quandle: String,
        /// Print each coloring's top colors.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct StateSumArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Defaults to the builtin cocycle's own quandle.
    #[arg(long)]
    quandle: Option<String>,
    /// q6z4, zero:N, or a cocycle2 file.
    #[arg(long)]
    cocycle: String,
}

#[derive(Subcommand)]
enum InvariantCmd {
    /// The multiset Phi of weights over all colorings.
    Phi {
        #[command(flatten)]
        args: StateSumArgs,
    },
    /// The family of k*Phi for the r-twisted torus-knot.
    Omega {
        #[command(flatten)]
        args: StateSumArgs,
        #[arg(long)]
        r: u64,
    },
    /// Reference 3-cocycle invariant of the 2-twist-spun T(2,q).
    Twistspun {
        #[arg(long)]
        q: u64,
        /// Prime of the Mochizuki cocycle; defaults to q.
        #[arg(long)]
        p: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ConcordanceCmd {
    /// Inclusion test between two 3-cocycle invariants.
    Thm11 {
        /// Multiset of F1 as value:count pairs.
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        phi0: String,
        #[arg(long)]
        modulus: u64,
    },
    /// Inclusion test between two Omega families.
    Thm12 {
        #[arg(long)]
        knot1: String,
        #[arg(long, default_value_t = 0)]
        r1: u64,
        #[arg(long)]
        knot0: String,
        #[arg(long, default_value_t = 0)]
        r0: u64,
        #[arg(long)]
        quandle: Option<String>,
        #[arg(long)]
        cocycle: String,
    },
    /// Twist-spun torus knots, pairwise or against the mirror.
    Cor21 {
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with = "mirror")]
        q2: Option<u64>,
        #[arg(long)]
        mirror: bool,
    },
    /// sigma^r T(2,l) against sigma^s S(m,n) with Q6.
    Cor43 {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
}

struct Output {
    json: bool,
    text: String,
    doc: Value,
}

impl Output {
    fn new(json: bool, command: &str) -> Self {
        Output {
            json,
            text: String::new(),
            doc: json!({ "schema_version": SCHEMA_VERSION, "command": command }),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.doc[key] = serde_json::to_value(value).expect("serializable");
    }

    fn finish(self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.doc).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text
        }
    }
}

fn multiset_json(m: &WeightMultiset) -> Value {
    json!({
        "modulus": m.modulus(),
        "entries": m.iter().map(|(v, c)| json!({"value": v, "count": c})).collect::<Vec<_>>(),
        "text": m.to_string(),
    })
}

fn omega_json(f: &OmegaFamily) -> Value {
    json!({
        "modulus": f.modulus,
        "r": f.r,
        "base": multiset_json(&f.base),
        "members": f.members.iter().map(multiset_json).collect::<Vec<_>>(),
        "infinite_multiplicity": f.infinite_multiplicity,
    })
}

fn verdict_json(v: &Verdict, inputs: Value) -> Value {
    json!({
        "obstructed": v.obstructed,
        "theorem": v.theorem,
        "direction": [v.direction.0, v.direction.1],
        "witness": v.witness.as_ref().map(|w| json!({
            "multiset": multiset_json(&w.multiset),
            "member": w.member,
            "missing": w.missing,
        })),
        "inputs": inputs,
    })
}

fn verdict_line(v: &Verdict) -> String {
    let mut s = format!(
        "{} >= {}: {}",
        v.direction.0,
        v.direction.1,
        if v.obstructed {
            "obstructed"
        } else {
            "not obstructed"
        }
    );
    if let Some(w) = &v.witness {
        match w.member {
            Some(k) => s.push_str(&format!(
                " (member k={k}: {}, missing {})",
                w.multiset, w.missing
            )),
            None => s.push_str(&format!(" (witness {}, missing {})", w.multiset, w.missing)),
        }
    }
    s
}

fn emit(text: &str, out: &Option<PathBuf>, o: &mut Output) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            o.line(format!("wrote {}", path.display()));
            o.set("path", path.display().to_string());
        }
        None => o.text.push_str(text),
    }
    o.set("content", text);
    Ok(())
}

fn quandle_or_default(quandle: &Option<String>, cocycle: &str) -> Result<String> {
    quandle
        .clone()
        .or_else(|| resolve::default_quandle_for(cocycle))
        .ok_or_else(|| anyhow!("--quandle is required for cocycle {cocycle:?}"))
}

fn run(cli: Cli) -> Result<String> {
    let json = cli.json;
    let out = match cli.command {
        Command::Quandle(cmd) => match cmd {
            QuandleCmd::Build { name, out } => {
                let q = resolve::quandle(&name)?;
                let mut o = Output::new(json, "quandle build");
                emit(&write_quandle(&q), &out, &mut o)?;
                o
            }
            QuandleCmd::Verify { file, quandle } => {
                let spec = file
                    .or(quandle)
                    .ok_or_else(|| anyhow!("one of --file or --quandle is required"))?;
                let rows = match resolve::quandle(&spec) {
                    Ok(q) => q.rows(),
                    Err(_) => raw_rows(&spec)?,
                };
                let report = verify_quandle_axioms(&rows)?;
                let mut o = Output::new(json, "quandle verify");
                let [a, b, c] = report.summary();
                o.line(format!("axioms: {a} {b} {c}"));
                if let Some(x) = report.idempotency {
                    o.line(format!("idempotency fails at {x}"));
                }
                if let Some(w) = report.right_invertibility {
                    o.line(format!(
                        "right-invertibility fails in column {}: rows {} and {}",
                        w.column, w.rows.0, w.rows.1
                    ));
                }
                if let Some((x, y, z)) = report.self_distributivity {
                    o.line(format!("self-distributivity fails at ({x},{y},{z})"));
                }
                o.set("order", rows.len());
                o.set("passes", report.passes());
                o.set("axioms", &report);
                o
            }
            QuandleCmd::Type { quandle } => {
                let q = resolve::quandle(&quandle)?;
                let s = q.quandle_type();
                let mut o = Output::new(json, "quandle type");
                o.line(format!("type: {s}"));
                o.set("order", q.order());
                o.set("type", s);
                o
            }
        },
        Command::Cocycle(cmd) => match cmd {
            CocycleCmd::Verify { cocycle, quandle } => {
                let qspec = quandle_or_default(&quandle, &cocycle)?;
                let q = resolve::quandle(&qspec)?;
                let raw = resolve::raw_cocycle(&cocycle)?;
                let report = raw.verify(&q)?;
                let mut o = Output::new(json, "cocycle verify");
                let checked = q.order().pow(raw.degree + 1);
                o.line(format!(
                    "cocycle{} on order {} mod {}: {report} ({checked} tuples)",
                    raw.degree, raw.order, raw.modulus
                ));
                o.set("degree", raw.degree);
                o.set("modulus", raw.modulus);
                o.set("passes", report.passes());
                o.set("report", &report);
                o
            }
            CocycleCmd::Gen(GenCmd::Mochizuki { p, out }) => {
                let theta = mochizuki_cocycle(p)?;
                let mut o = Output::new(json, "cocycle gen mochizuki");
                emit(&write_cocycle3(&theta), &out, &mut o)?;
                o
            }
            CocycleCmd::Gen(GenCmd::Q6z4 { out }) => {
                let mut o = Output::new(json, "cocycle gen q6z4");
                emit(&write_cocycle2(&q6_appendix_cocycle()), &out, &mut o)?;
                o
            }
            CocycleCmd::Enumerate {
                quandle,
                modulus,
                cap,
                max_order,
                list,
            } => {
                if cap == 0 {
                    bail!("--cap must be positive");
                }
                let q = resolve::quandle(&quandle)?;
                let space = enumerate_2cocycles(
                    Arc::clone(&q),
                    Coefficients::new(modulus)?,
                    EnumerateOptions { max_order, cap },
                )?;
                let mut o = Output::new(json, "cocycle enumerate");
                let count = space
                    .count()
                    .map_or_else(|| "overflow".to_string(), |c| c.to_string());
                o.line(format!("count: {count}"));
                let gens = &space.basis().generators;
                for g in gens {
                    let v: Vec<String> = g.vector.iter().map(u64::to_string).collect();
                    o.line(format!("generator order {}: {}", g.order, v.join(" ")));
                }
                o.set("count", &count);
                o.set("generators", gens);
                if list {
                    let all: Vec<Vec<u64>> =
                        space.cocycles()?.map(|c| c.table().to_vec()).collect();
                    for t in &all {
                        let v: Vec<String> = t.iter().map(u64::to_string).collect();
                        o.line(v.join(" "));
                    }
                    o.set("cocycles", all);
                }
                o
            }
        },
        Command::Knot(KnotCmd::Colorings {
            knot,
            quandle,
            list,
        }) => {
            let braid = resolve::knot(knot.knot.as_deref(), knot.braid.as_deref())?;
            let q = resolve::quandle(&quandle)?;
            let d = ClosedDiagram::new(braid.clone())?;
            let cols = enumerate_colorings(&d, &q);
            let mut o = Output::new(json, "knot colorings");
            o.line(format!("colorings: {}", cols.len()));
            if list {
                for c in &cols {
                    let labels: Vec<String> = c.top.iter().map(|&a| q.label(a)).collect();
                    o.line(labels.join(" "));
                }
                o.set("colorings", cols.iter().map(|c| &c.top).collect::<Vec<_>>());
            }
            o.set("braid", braid.to_string());
            o.set("count", cols.len());
            o
        }
        Command::Invariant(cmd) => match cmd {
            InvariantCmd::Phi { args } => {
                let (braid, q, phi) = state_sum_inputs(&args)?;
                let m = phi_invariant(&braid, &q, &phi)?;
                let mut o = Output::new(json, "invariant phi");
                o.line(m.to_string());
                o.set("braid", braid.to_string());
                o.set("multiset", multiset_json(&m));
                o
            }
            InvariantCmd::Omega { args, r } => {
                let (braid, q, phi) = state_sum_inputs(&args)?;
                let fam = omega_family(&braid, &q, &phi, r)?;
                let mut o = Output::new(json, "invariant omega");
                for (k, m) in fam.members.iter().enumerate() {
                    o.line(format!("k={k}: {m}"));
                }
                o.line("each member occurs with infinite multiplicity");
                o.set("braid", braid.to_string());
                o.set("omega", omega_json(&fam));
                o
            }
            InvariantCmd::Twistspun { q, p } => {
                let p = p.unwrap_or(q);
                let m = twist_spun_cross_reference(p, q)?;
                let mut o = Output::new(json, "invariant twistspun");
                o.line(m.to_string());
                o.set("q", q);
                o.set("p", p);
                o.set("multiset", multiset_json(&m));
                if p == q {
                    let s = residue_support(q)?;
                    o.line(format!(
                        "support: {}",
                        s.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
                    ));
                    o.set("support", s);
                }
                o
            }
        },
        Command::Concordance(cmd) => match cmd {
            ConcordanceCmd::Thm11 {
                phi1,
                phi0,
                modulus,
            } => {
                let a = parse_multiset(modulus, &phi1)?;
                let b = parse_multiset(modulus, &phi0)?;
                let v = theorem11_check(&a, &b)?;
                let mut o = Output::new(json, "concordance thm11");
                o.line(verdict_line(&v));
                o.doc["verdict"] = verdict_json(
                    &v,
                    json!({"phi1": multiset_json(&a), "phi0": multiset_json(&b)}),
                );
                o
            }
            ConcordanceCmd::Thm12 {
                knot1,
                r1,
                knot0,
                r0,
                quandle,
                cocycle,
            } => {
                let qspec = quandle_or_default(&quandle, &cocycle)?;
                let q = resolve::quandle(&qspec)?;
                let phi = resolve::cocycle2(&cocycle, &q)?;
                let b1 = resolve::knot(Some(&knot1), None)?;
                let b0 = resolve::knot(Some(&knot0), None)?;
                let f1 = omega_family(&b1, &q, &phi, r1)?;
                let f0 = omega_family(&b0, &q, &phi, r0)?;
                let v = theorem12_check(&f1, &f0)?
                    .with_direction(format!("sigma^{r1} {knot1}"), format!("sigma^{r0} {knot0}"));
                let mut o = Output::new(json, "concordance thm12");
                o.line(verdict_line(&v));
                o.doc["verdict"] = verdict_json(
                    &v,
                    json!({"omega1": omega_json(&f1), "omega0": omega_json(&f0)}),
                );
                o
            }
            ConcordanceCmd::Cor21 { q, q2, mirror } => {
                let inputs = match (q2, mirror) {
                    (Some(q2), false) => json!({"q": q, "q2": q2}),
                    (None, true) => {
                        let phi = twist_spun_reference(q)?;
                        json!({"q": q, "mirror": true, "phi": multiset_json(&phi)})
                    }
                    _ => bail!("give exactly one of --q2 or --mirror"),
                };
                let (a, b) = corollary21_report(q, q2)?;
                let mut o = Output::new(json, "concordance cor21");
                o.line(verdict_line(&a));
                o.line(verdict_line(&b));
                o.doc["verdicts"] =
                    json!([verdict_json(&a, inputs.clone()), verdict_json(&b, inputs)]);
                o
            }
            ConcordanceCmd::Cor43 { l, m, n, r, s } => {
                let v = corollary43_report(l, m, n, r, s)?;
                let mut o = Output::new(json, "concordance cor43");
                o.line(verdict_line(&v));
                o.doc["verdict"] =
                    verdict_json(&v, json!({"l": l, "m": m, "n": n, "r": r, "s": s}));
                o
            }
        },
    };
    Ok(out.finish())
}

type StateSumInputs = (
    knot_cocycle::BraidWord,
    Arc<knot_cocycle::FiniteQuandle>,
    knot_cocycle::Cocycle2,
);

fn state_sum_inputs(args: &StateSumArgs) -> Result<StateSumInputs> {
    let braid = resolve::knot(args.knot.knot.as_deref(), args.knot.braid.as_deref())?;
    let qspec = quandle_or_default(&args.quandle, &args.cocycle)?;
    let q = resolve::quandle(&qspec)?;
    let phi = resolve::cocycle2(&args.cocycle, &q)?;
    Ok((braid, q, phi))
}

/// Rows of a quandle file without the axiom check, so that `quandle verify`
/// can report failures instead of refusing the file.
fn raw_rows(path: &str) -> Result<Vec<Vec<usize>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    parse_quandle_rows(&text).with_context(|| format!("loading quandle {path}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
