//! Front end for the `qc2` binary: argument model, dispatch and reports.
//!
//! Every invocation yields one JSON report on stdout and a short summary on
//! stderr. Exit status is 0 on success, 1 for a mathematical negative (an
//! `--expect` mismatch, a failed `--verify` cross-check, or a refused
//! construction) and 2 for input or usage errors.

pub mod document;

use std::fs;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qc2_core::distance::{self, EnumOptions, Metric, DEFAULT_CAP};
use qc2_core::duality::{self, Condition};
use qc2_core::quantum::{self, Fallback, ReplayOptions, Tag};
use qc2_core::{factor, linalg, parse, Error, Field, FormKind, Qc2Code};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use document::{parse_code_spec, to_document, triple_json, CodeSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qc2", version, about = "Index-2 quasi-cyclic codes over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Suppress the human summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Largest number of codewords an exact enumeration may visit.
    #[arg(long, global = true, env = "QC2_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker thread limit for enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cross-check results against definition-level oracles.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Canonical generator triple of a code.
    Canon { code: String },
    /// Dimension over the base field.
    Dim { code: String },
    /// Dual code under a form.
    Dual {
        #[arg(short, long)]
        kind: FormKind,
        code: String,
    },
    /// Evaluate a duality predicate condition by condition.
    Check {
        predicate: Predicate,
        #[arg(short, long)]
        kind: FormKind,
        code: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Whether the code is generated by one element.
    Onegen {
        code: String,
        /// Also produce a single generator.
        #[arg(long)]
        construct: bool,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Whether the Euclidean dual is generated by one element.
    DualOnegen {
        code: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Minimum distance: exact, the cyclic lower bound, or a random upper bound.
    Dist {
        mode: DistMode,
        metric: Metric,
        code: String,
        /// Trials for `upper`.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Skip codewords of this subcode (`exact` and `upper`).
        #[arg(long)]
        exclude: Option<String>,
    },
    /// Stabilizer parameters of a symplectic self-orthogonal code.
    Quantum {
        code: String,
        /// Random-search trials when the coset is beyond the cap.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Expected notation, e.g. `[[18,3,5]]_2`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Replay the published qubit examples.
    VerifyPaper {
        /// Skip random upper-bound searches for unenumerable distances.
        #[arg(long)]
        no_search: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Exit 1 when any example is tagged FAIL.
        #[arg(long)]
        strict: bool,
    },
    /// Factor a polynomial into monic irreducibles.
    Factor {
        /// Field notation such as `2`, `4`, `q=3^2`.
        #[arg(short, long)]
        q: String,
        /// Field modulus as ascending comma-separated coefficients.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        poly: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    #[value(name = "self-orth", alias = "self-orthogonal")]
    SelfOrth,
    DualContaining,
    SelfDual,
}

impl Predicate {
    fn name(self) -> &'static str {
        match self {
            Predicate::SelfOrth => "self-orthogonal",
            Predicate::DualContaining => "dual-containing",
            Predicate::SelfDual => "self-dual",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistMode {
    Exact,
    Bound,
    Upper,
}

/// Report plus the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub exit: i32,
}

struct Ctx {
    global: GlobalArgs,
    inputs: Vec<(String, String)>,
    documents: Vec<Value>,
}

impl Ctx {
    fn opts(&self) -> EnumOptions {
        EnumOptions {
            cap: self.global.cap,
            jobs: self.global.jobs,
            ..Default::default()
        }
    }

    /// Loads `source`: inline text when it starts with `{`, stdin for `-`, else a path.
    fn load(&mut self, source: &str) -> Result<CodeSpec, Failure> {
        let text = if source.trim_start().starts_with('{') {
            source.to_string()
        } else if source == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::io(format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(source).map_err(|e| Failure::io(format!("{source}: {e}")))?
        };
        let spec = parse_code_spec(&text)?;
        self.documents.push(to_document(&spec.code, spec.label.as_deref()));
        self.inputs.push((source.to_string(), text));
        Ok(spec)
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (_, text) in &self.inputs {
            h.update((text.len() as u64).to_le_bytes());
            h.update(text.as_bytes());
        }
        format!("{:x}", h.finalize())
    }
}

/// An error with its exit class.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
    exit: i32,
    position: Option<(usize, usize)>,
    condition: Option<String>,
}

impl Failure {
    fn io(message: String) -> Failure {
        Failure {
            kind: "io",
            message,
            exit: EXIT_INPUT,
            position: None,
            condition: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (kind, exit) = match &e {
            Error::NotOneGenerator => ("not_one_generator", EXIT_NEGATIVE),
            Error::NotSelfOrthogonal => ("not_self_orthogonal", EXIT_NEGATIVE),
            Error::NotCoprimeCharacteristic { .. } => ("not_coprime_characteristic", EXIT_NEGATIVE),
            Error::NotSubcode => ("not_subcode", EXIT_NEGATIVE),
            Error::Syntax { .. } => ("syntax", EXIT_INPUT),
            Error::Validation { .. } => ("validation", EXIT_INPUT),
            Error::UnsupportedField(_) | Error::NotPrime(_) => ("unsupported_field", EXIT_INPUT),
            Error::NotIrreducible(_) | Error::DegreeMismatch { .. } => ("bad_modulus", EXIT_INPUT),
            Error::NotSquareField => ("not_square_field", EXIT_INPUT),
            Error::EnumerationTooLarge { .. } => ("enumeration_too_large", EXIT_INPUT),
            Error::InvalidArgument(_) => ("invalid_argument", EXIT_INPUT),
            _ => ("input", EXIT_INPUT),
        };
        let position = match &e {
            Error::Syntax { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        let condition = match &e {
            Error::Validation { condition, .. } => Some(condition.clone()),
            _ => None,
        };
        Failure {
            kind,
            message: e.to_string(),
            exit,
            position,
            condition,
        }
    }
}

struct Done {
    results: Value,
    summary: String,
    exit: i32,
}

impl Done {
    fn ok(results: Value, summary: String) -> Done {
        Done {
            results,
            summary,
            exit: EXIT_OK,
        }
    }

    /// Exit 1 when an expectation is given and not met.
    fn expect(mut self, expected: Option<bool>, actual: bool) -> Done {
        if let Some(e) = expected {
            self.results["expect"] = json!({ "expected": e, "met": e == actual });
            if e != actual {
                self.exit = EXIT_NEGATIVE;
            }
        }
        self
    }

    fn verified(mut self, ok: Option<bool>) -> Done {
        if let Some(ok) = ok {
            self.results["verified"] = json!(ok);
            if !ok {
                self.exit = EXIT_NEGATIVE;
                self.summary.push_str(" [VERIFY MISMATCH]");
            }
        }
        self
    }
}

/// Executes a parsed command line. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: &[String]) -> Outcome {
    let t0 = Instant::now();
    let mut ctx = Ctx {
        global: cli.global.clone(),
        inputs: Vec::new(),
        documents: Vec::new(),
    };
    let name = command_name(&cli.command);
    let result = dispatch(&mut ctx, &cli.command);
    let mut report = json!({
        "command": name,
        "args": argv,
        "inputs": {
            "digest": ctx.digest(),
            "sources": ctx.inputs.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
            "documents": ctx.documents,
        },
        "options": {
            "cap": ctx.global.cap,
            "jobs": ctx.global.jobs,
            "seed": ctx.global.seed,
            "verify": ctx.global.verify,
        },
        "version": env!("CARGO_PKG_VERSION"),
    });
    let (summary, exit) = match result {
        Ok(done) => {
            report["status"] = json!("ok");
            report["results"] = done.results;
            (format!("{name}: {}", done.summary), done.exit)
        }
        Err(f) => {
            let mut err = json!({ "kind": f.kind, "message": f.message });
            if let Some((line, column)) = f.position {
                err["line"] = json!(line);
                err["column"] = json!(column);
            }
            if let Some(c) = &f.condition {
                err["condition"] = json!(c);
            }
            report["status"] = json!("error");
            report["error"] = err;
            (format!("{name}: error: {}", f.message), f.exit)
        }
    };
    report["timings"] = json!({ "total_ms": t0.elapsed().as_secs_f64() * 1e3 });
    Outcome {
        report,
        summary,
        exit,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Canon { .. } => "canon",
        Command::Dim { .. } => "dim",
        Command::Dual { .. } => "dual",
        Command::Check { .. } => "check",
        Command::Onegen { .. } => "onegen",
        Command::DualOnegen { .. } => "dual-onegen",
        Command::Dist { .. } => "dist",
        Command::Quantum { .. } => "quantum",
        Command::VerifyPaper { .. } => "verify-paper",
        Command::Factor { .. } => "factor",
    }
}

fn code_line(code: &Qc2Code) -> String {
    format!(
        "{} m={} dim {} (g11 = {}, g12 = {}, g22 = {})",
        code.field().notation(),
        code.m(),
        code.dimension(),
        code.g11(),
        code.g12(),
        code.g22()
    )
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> Result<Done, Failure> {
    match command {
        Command::Canon { code } => {
            let spec = ctx.load(code)?;
            let c = &spec.code;
            let done = Done::ok(
                json!({
                    "dimension": c.dimension(),
                    "canonical": triple_json(c),
                    "document": to_document(c, spec.label.as_deref()),
                }),
                code_line(c),
            );
            Ok(done.verified(ctx.global.verify.then(|| c.rank_oracle() == c.dimension())))
        }
        Command::Dim { code } => {
            let c = ctx.load(code)?.code;
            let done = Done::ok(
                json!({ "dimension": c.dimension(), "length": 2 * c.m() }),
                format!("dim {} of length {}", c.dimension(), 2 * c.m()),
            );
            Ok(done.verified(ctx.global.verify.then(|| c.rank_oracle() == c.dimension())))
        }
        Command::Dual { kind, code } => {
            let c = ctx.load(code)?.code;
            let d = duality::dual(*kind, &c)?;
            let gens = duality::dual_generators(*kind, &c)?;
            let done = Done::ok(
                json!({
                    "kind": kind,
                    "dimension": d.dimension(),
                    "canonical": triple_json(&d),
                    "generators": gens.iter().map(|g| json!([g.a.poly().to_string(), g.b.poly().to_string()])).collect::<Vec<_>>(),
                    "document": to_document(&d, None),
                }),
                format!("{kind} dual {}", code_line(&d)),
            );
            let check = if ctx.global.verify {
                let null = duality::definitional_dual(*kind, &c)?;
                Some(linalg::same_span(c.field(), &null, &d.generator_matrix()))
            } else {
                None
            };
            Ok(done.verified(check))
        }
        Command::Check {
            predicate,
            kind,
            code,
            expect,
        } => {
            let c = ctx.load(code)?.code;
            let (report, extra) = predicate_report(*predicate, *kind, &c)?;
            let holds = report.holds;
            let mut results = json!({
                "predicate": predicate.name(),
                "kind": kind,
                "holds": holds,
                "conditions": report.conditions,
            });
            if let Some(extra) = extra {
                results["symplectic_self_dual_check"] = extra;
            }
            let check = if ctx.global.verify {
                let definitional = match predicate {
                    Predicate::SelfOrth => duality::definitional_self_orthogonal(*kind, &c)?,
                    Predicate::DualContaining => duality::definitional_dual_containing(*kind, &c)?,
                    Predicate::SelfDual => {
                        duality::definitional_self_orthogonal(*kind, &c)?
                            && duality::definitional_dual_containing(*kind, &c)?
                    }
                };
                results["definitional"] = json!(definitional);
                Some(definitional == holds)
            } else {
                None
            };
            let summary = format!("{} ({kind}): {holds}", predicate.name());
            Ok(Done::ok(results, summary).verified(check).expect(*expect, holds))
        }
        Command::Onegen {
            code,
            construct,
            expect,
        } => {
            let c = ctx.load(code)?.code;
            let verdict = c.is_one_generator();
            let mut results = json!({ "verdict": verdict });
            let mut summary = format!("one generator: {}", verdict.holds);
            if *construct {
                let g = c.single_generator()?;
                results["generator"] = json!([g.a.poly().to_string(), g.b.poly().to_string()]);
                summary = format!("{summary}, generator ({}, {})", g.a.poly(), g.b.poly());
            }
            Ok(Done::ok(results, summary).expect(*expect, verdict.holds))
        }
        Command::DualOnegen { code, expect } => {
            let c = ctx.load(code)?.code;
            let verdict = duality::dual_is_one_generator(&c);
            let summary = format!("euclidean dual has one generator: {}", verdict.holds);
            Ok(Done::ok(json!({ "verdict": verdict }), summary).expect(*expect, verdict.holds))
        }
        Command::Dist {
            mode,
            metric,
            code,
            trials,
            exclude,
        } => {
            let c = ctx.load(code)?.code;
            let small = match exclude {
                Some(src) => Some(ctx.load(src)?.code),
                None => None,
            };
            let opts = ctx.opts();
            let r = match (mode, &small) {
                (DistMode::Exact, None) => distance::exact_distance(&c, *metric, &opts)?,
                (DistMode::Exact, Some(s)) => distance::min_weight_coset(&c, s, *metric, &opts)?,
                (DistMode::Bound, None) => match metric {
                    Metric::Hamming => distance::bound_hamming(&c, &opts)?,
                    Metric::Symplectic => distance::bound_symplectic(&c, &opts)?,
                },
                (DistMode::Bound, Some(_)) => {
                    return Err(Error::InvalidArgument("--exclude does not apply to `bound`".into()).into())
                }
                (DistMode::Upper, s) => {
                    distance::random_upper_bound(&c, s.as_ref(), *metric, *trials, ctx.global.seed)?
                }
            };
            let summary = format!("{metric} {:?} = {} ({})", r.kind, r.value, r.method);
            let check = if ctx.global.verify && *mode != DistMode::Exact {
                let exact = match &small {
                    Some(s) => distance::min_weight_coset(&c, s, *metric, &opts)?,
                    None => distance::exact_distance(&c, *metric, &opts)?,
                };
                Some(match mode {
                    DistMode::Bound => r.value <= exact.value,
                    _ => exact.value <= r.value,
                })
            } else {
                None
            };
            Ok(Done::ok(json!({ "distance": r }), summary).verified(check))
        }
        Command::Quantum {
            code,
            trials,
            expect,
        } => {
            let c = ctx.load(code)?.code;
            let fallback = Fallback {
                trials: *trials,
                seed: ctx.global.seed,
            };
            let p = quantum::stabilizer_params(&c, &ctx.opts(), fallback)?;
            let notation = p.notation();
            let mut done = Done::ok(
                json!({ "params": p, "notation": notation }),
                format!("{notation}{}", if p.verified { "" } else { " (unverified)" }),
            );
            if let Some(e) = expect {
                let met = e.replace(' ', "") == notation;
                done.results["expect"] = json!({ "expected": e, "met": met });
                if !met {
                    done.exit = EXIT_NEGATIVE;
                }
            }
            Ok(done)
        }
        Command::VerifyPaper {
            no_search,
            trials,
            strict,
        } => {
            let opts = ReplayOptions {
                enumeration: ctx.opts(),
                fallback: Fallback {
                    trials: *trials,
                    seed: ctx.global.seed,
                },
                search: !no_search,
            };
            let records = quantum::replay_paper_examples(&opts)?;
            let summary = records
                .iter()
                .map(|r| format!("{} {}", r.id, r.tag.as_str()))
                .collect::<Vec<_>>()
                .join(", ");
            let failed = records.iter().any(|r| r.tag == Tag::Fail);
            let mut done = Done::ok(json!({ "examples": records }), summary);
            if *strict && failed {
                done.exit = EXIT_NEGATIVE;
            }
            Ok(done)
        }
        Command::Factor { q, modulus, poly } => {
            let field = Field::parse(q, modulus.as_deref())?;
            let f = parse::parse_poly(&field, poly)?;
            ctx.inputs.push(("poly".into(), poly.clone()));
            let factors = factor::factorize(&f)?;
            let list: Vec<Value> = factors
                .iter()
                .map(|(p, e)| json!({ "factor": p.to_string(), "multiplicity": e }))
                .collect();
            let summary = factors
                .iter()
                .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
                .collect::<String>();
            Ok(Done::ok(
                json!({
                    "field": document::field_json(&field),
                    "polynomial": f.to_string(),
                    "leading": f.lead().0,
                    "factors": list,
                }),
                summary,
            ))
        }
    }
}

fn predicate_report(
    predicate: Predicate,
    kind: FormKind,
    code: &Qc2Code,
) -> Result<(duality::ConditionReport, Option<Value>), Failure> {
    Ok(match predicate {
        Predicate::SelfOrth => (duality::self_orthogonality(kind, code)?, None),
        Predicate::DualContaining => (duality::dual_containment(kind, code)?, None),
        Predicate::SelfDual => {
            let mut r = duality::self_orthogonality(kind, code)?;
            r.predicate = "self-dual";
            r.conditions.push(Condition {
                statement: format!("dim C = m = {}", code.m()),
                holds: code.dimension() == code.m(),
            });
            r.holds = r.conditions.iter().all(|c| c.holds);
            let extra = (kind == FormKind::Symplectic)
                .then(|| serde_json::to_value(duality::symplectic_self_dual_check(code)).expect("serializable"));
            (r, extra)
        }
    })
}
