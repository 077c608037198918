use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use synchrolab::conjugacy::{
    construct_germ, groupoid_sample, validate_germ, Germ, GermKind, GroupoidKind, Rule,
};
use synchrolab::factor::{
    almost_one_to_one_check, degree_bound, degree_check, preimage_count, resolving_check, CoverMap,
};
use synchrolab::periodic::{enumerate_periodic, find_periodic_by_bracket, return_point};
use synchrolab::report::{exact_sequence_report, NonSyncCount};
use synchrolab::sync::{classify_point_with_bound, nonsync_subshift, sync_words, Finiteness};
use synchrolab::{
    bracket, builtins, point_in_shift, Alphabet, BiSeq, Error, Shift, ShiftKind, SpecFile,
};

#[derive(Parser)]
#[command(
    name = "synchrolab",
    version,
    about = "Synchronizing points, periodic points and local conjugacies of sofic shifts"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation, structure flags and declared points.
    Info { spec: String },
    /// Words of the language of a given length, in alphabet order.
    Words {
        spec: String,
        #[arg(long)]
        len: usize,
    },
    /// Points of period dividing n.
    Periodic {
        spec: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Periodic point near a synchronizing point by iterated brackets.
    FindPeriodic {
        spec: String,
        /// Synchronizing base point (literal or declared name).
        #[arg(long)]
        point: String,
        /// Point whose orbit returns near the base point; constructed when omitted.
        #[arg(long)]
        y: Option<String>,
        /// Return time of `y`; required together with `--y`.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Synchronizing words up to a length.
    SyncWords {
        spec: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Whether a point is synchronizing.
    Classify {
        spec: String,
        #[arg(long)]
        point: String,
        /// Largest radius to examine instead of the proven stabilization bound.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// The set of non-synchronizing points.
    Nonsync { spec: String },
    /// The splice with the future of x and the past of y.
    Bracket {
        spec: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Local conjugacy germ between two points.
    Germ {
        spec: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = KindArg::Lc)]
        kind: KindArg,
    },
    /// Arrows of a germ groupoid among small points, with the groupoid axioms checked.
    Groupoid {
        spec: String,
        #[arg(long, value_enum, default_value_t = GroupoidArg::Lc)]
        kind: GroupoidArg,
        /// Base points for the one-sided groupoids.
        #[arg(long = "base")]
        base: Vec<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Checks on the cover map from the shift's defining presentation.
    Factor {
        spec: String,
        #[arg(long, value_enum)]
        check: FactorCheck,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
    /// Product of two shifts.
    Product { first: String, second: String },
    /// Count of non-synchronizing points with Bowen-Franks data.
    Report { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lc,
    Lcs,
    Lcu,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupoidArg {
    Lc,
    LcSync,
    Lcs,
    Lcu,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorCheck {
    Resolving,
    Degree,
    Preimages,
    A1to1,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Analysis(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Analysis(e)
    }
}

type Outcome = Result<Output, Failure>;

/// Results of a command, with the text rendering of the same data.
struct Output {
    inputs: Value,
    results: Value,
    text: String,
    counterexample: bool,
}

impl Output {
    fn ok(inputs: Value, results: Value, text: String) -> Self {
        Output {
            inputs,
            results,
            text,
            counterexample: false,
        }
    }
}

fn load_spec(arg: &str) -> Result<SpecFile, Failure> {
    if Path::new(arg).is_file() {
        return SpecFile::from_path(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")));
    }
    match builtins::text(arg) {
        Some(text) => Ok(SpecFile::parse(text).map_err(Failure::Analysis)?),
        None => Err(Failure::Usage(format!(
            "`{arg}` is neither a readable file nor a builtin ({})",
            builtins::NAMES.join(", ")
        ))),
    }
}

fn point_arg(spec: &SpecFile, arg: &str) -> Result<BiSeq, Failure> {
    if let Some(p) = spec.point(arg) {
        return Ok(p.clone());
    }
    BiSeq::parse(spec.shift.alphabet(), arg)
        .map_err(|e| Failure::Usage(format!("point `{arg}`: {e}")))
}

fn show(a: &Alphabet, x: &BiSeq) -> String {
    x.display(a).to_string()
}

fn show_all(a: &Alphabet, xs: &[BiSeq]) -> Vec<String> {
    xs.iter().map(|x| show(a, x)).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn kind_name(s: &Shift) -> &'static str {
    match s.kind() {
        ShiftKind::Sft { .. } => "sft",
        ShiftKind::Sofic { .. } => "sofic",
        ShiftKind::Oracle(_) => "oracle",
    }
}

fn info_of(s: &Shift, points: &[(String, BiSeq)]) -> Outcome {
    let a = s.alphabet();
    let mut results = Map::new();
    results.insert("name".into(), json!(s.name()));
    results.insert("kind".into(), json!(kind_name(s)));
    results.insert("alphabet".into(), json!(a.names()));
    let mut text = format!(
        "shift: {}\nkind: {}\nalphabet: {}\n",
        s.name(),
        kind_name(s),
        a.names().join(" ")
    );
    match s.presentation() {
        Some(p) => {
            let flags = s.structure()?;
            results.insert("states".into(), json!(p.num_states()));
            results.insert("edges".into(), json!(p.edges().len()));
            results.insert("deterministic".into(), json!(p.is_deterministic()));
            results.insert("irreducible".into(), json!(flags.irreducible));
            results.insert("mixing".into(), json!(flags.mixing));
            results.insert("period".into(), json!(flags.period));
            if let Some(m) = s.memory() {
                results.insert("memory".into(), json!(m));
            }
            text += &format!(
                "states: {}\nedges: {}\ndeterministic: {}\nirreducible: {}\nmixing: {}\nperiod: {}\n",
                p.num_states(),
                p.edges().len(),
                yes_no(p.is_deterministic()),
                yes_no(flags.irreducible),
                yes_no(flags.mixing),
                flags.period
            );
            if let Some(m) = s.memory() {
                text += &format!("memory: {m}\n");
            }
            text += &p.render();
        }
        None => {
            let o = s
                .oracle_ref()
                .expect("shift without presentation is an oracle");
            results.insert("window_bound".into(), json!(o.window_bound));
            text += &format!("window bound: {}\n", o.window_bound);
        }
    }
    let named: Map<String, Value> = points
        .iter()
        .map(|(n, x)| (n.clone(), json!(show(a, x))))
        .collect();
    for (n, x) in points {
        text += &format!("point {n}: {}\n", show(a, x));
    }
    results.insert("points".into(), Value::Object(named));
    Ok(Output::ok(
        json!({ "spec": s.name() }),
        Value::Object(results),
        text,
    ))
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Info { spec } => {
            let f = load_spec(spec)?;
            info_of(&f.shift, &f.points)
        }
        Command::Words { spec, len } => {
            let s = load_spec(spec)?.shift;
            let a = s.alphabet();
            let mut words = Vec::new();
            for w in a.all_words(*len) {
                if s.contains_word(&w)? {
                    words.push(a.render(&w));
                }
            }
            let text = words.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output::ok(
                json!({ "spec": s.name(), "len": len }),
                json!({ "count": words.len(), "words": words }),
                text,
            ))
        }
        Command::Periodic {
            spec,
            n,
            count_only,
        } => {
            let s = load_spec(spec)?.shift;
            let set = enumerate_periodic(&s, *n)?;
            let inputs = json!({ "spec": s.name(), "n": n });
            if *count_only {
                return Ok(Output::ok(
                    inputs,
                    json!({ "count": set.count() }),
                    format!("{}\n", set.count()),
                ));
            }
            let points = show_all(s.alphabet(), &set.points);
            let mut text = format!("count: {}\n", set.count());
            for p in &points {
                text += &format!("{p}\n");
            }
            Ok(Output::ok(
                inputs,
                json!({ "count": set.count(), "points": points }),
                text,
            ))
        }
        Command::FindPeriodic {
            spec,
            point,
            y,
            n,
            window,
        } => {
            let f = load_spec(spec)?;
            let s = &f.shift;
            let x = point_arg(&f, point)?;
            let (y, n) = match (y, n) {
                (Some(y), Some(n)) => (point_arg(&f, y)?, *n),
                (None, None) => return_point(s, &x, *window, 1)?,
                _ => return Err(Failure::Usage("--y and --n go together".into())),
            };
            let it = find_periodic_by_bracket(s, &x, &y, n, *window)?;
            let a = s.alphabet();
            let d = x.distance(&it.point);
            Ok(Output::ok(
                json!({ "spec": s.name(), "x": show(a, &x), "y": show(a, &y), "n": n, "window": window }),
                json!({
                    "point": show(a, &it.point),
                    "steps": it.steps,
                    "minimal_period": it.minimal_period,
                    "distance": d.to_string(),
                }),
                format!(
                    "point: {}\nsteps: {}\nminimal period: {}\ndistance: {}\n",
                    show(a, &it.point),
                    it.steps,
                    it.minimal_period,
                    d
                ),
            ))
        }
        Command::SyncWords { spec, max_len } => {
            let s = load_spec(spec)?.shift;
            let a = s.alphabet();
            let words: Vec<String> = sync_words(&s, *max_len)?
                .iter()
                .map(|w| a.render(w))
                .collect();
            let text = words.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output::ok(
                json!({ "spec": s.name(), "max_len": max_len }),
                json!({ "count": words.len(), "words": words }),
                text,
            ))
        }
        Command::Classify { spec, point, bound } => {
            let f = load_spec(spec)?;
            let s = &f.shift;
            let x = point_arg(&f, point)?;
            let v = classify_point_with_bound(s, &x, *bound)?;
            let witness = v.witness.as_ref().map(|w| s.alphabet().render(w));
            let mut text = format!("{}\n", v.status);
            if let (Some(w), Some(r)) = (&witness, v.radius) {
                text += &format!("witness: {w} (radius {r})\n");
            }
            text += &format!("radius examined: {}\n", v.window_used);
            Ok(Output::ok(
                json!({ "spec": s.name(), "point": show(s.alphabet(), &x), "bound": bound }),
                json!({
                    "status": v.status.to_string(),
                    "witness": witness,
                    "radius": v.radius,
                    "window_used": v.window_used,
                }),
                text,
            ))
        }
        Command::Nonsync { spec } => {
            let s = load_spec(spec)?.shift;
            let r = nonsync_subshift(&s)?;
            let inputs = json!({ "spec": s.name() });
            Ok(match &r.finiteness {
                Finiteness::Finite(points) => {
                    let shown = show_all(s.alphabet(), points);
                    Output::ok(
                        inputs,
                        json!({ "m": points.len(), "points": shown }),
                        format!("m = {}; points: {}\n", points.len(), shown.join(", ")),
                    )
                }
                Finiteness::Infinite => Output::ok(
                    inputs,
                    json!({ "m": "infinite", "points": Value::Null }),
                    "m = infinite\n".into(),
                ),
            })
        }
        Command::Bracket { spec, x, y, n } => {
            let f = load_spec(spec)?;
            let s = &f.shift;
            let (x, y) = (point_arg(&f, x)?, point_arg(&f, y)?);
            let z = bracket(s, &x, &y, *n)?;
            let a = s.alphabet();
            Ok(Output::ok(
                json!({ "spec": s.name(), "x": show(a, &x), "y": show(a, &y), "n": n }),
                json!({ "bracket": show(a, &z), "membership": point_in_shift(s, &z).to_string() }),
                format!("{}\nmembership: {}\n", show(a, &z), point_in_shift(s, &z)),
            ))
        }
        Command::Germ {
            spec,
            from,
            to,
            kind,
        } => {
            let f = load_spec(spec)?;
            let s = &f.shift;
            let (x, y) = (point_arg(&f, from)?, point_arg(&f, to)?);
            let kind = match kind {
                KindArg::Lc => GermKind::Lc,
                KindArg::Lcs => GermKind::Lcs,
                KindArg::Lcu => GermKind::Lcu,
            };
            let g = construct_germ(s, kind, &x, &y)?;
            let validated = validate_germ(s, &g, 3);
            let a = s.alphabet();
            let rule = describe_rule(a, &g);
            let mut out = Output::ok(
                json!({ "spec": s.name(), "from": show(a, &x), "to": show(a, &y), "kind": kind.to_string() }),
                json!({
                    "kind": kind.to_string(),
                    "window": g.window,
                    "rule": rule,
                    "validated": validated.is_ok(),
                }),
                format!(
                    "{kind} germ, window {}\nrule: {rule}\nvalidated: {}\n",
                    g.window,
                    yes_no(validated.is_ok())
                ),
            );
            if let Err(e) = validated {
                out.text += &format!("failure: {e}\n");
                out.counterexample = true;
            }
            Ok(out)
        }
        Command::Groupoid {
            spec,
            kind,
            base,
            bound,
        } => {
            let f = load_spec(spec)?;
            let s = &f.shift;
            let base: Vec<BiSeq> = base
                .iter()
                .map(|b| point_arg(&f, b))
                .collect::<Result<_, _>>()?;
            let selector = match kind {
                GroupoidArg::Lc => GroupoidKind::Lc,
                GroupoidArg::LcSync => GroupoidKind::LcSync,
                GroupoidArg::Lcs | GroupoidArg::Lcu if base.is_empty() => {
                    return Err(Failure::Usage(
                        "one-sided groupoids need --base points".into(),
                    ))
                }
                GroupoidArg::Lcs => GroupoidKind::Lcs(base.clone()),
                GroupoidArg::Lcu => GroupoidKind::Lcu(base.clone()),
            };
            let g = groupoid_sample(s, &selector, *bound)?;
            let a = s.alphabet();
            let arrows: Vec<Value> = g
                .arrows
                .iter()
                .map(|ar| json!([show(a, &ar.source), show(a, &ar.target), ar.germ.window]))
                .collect();
            let mut text = format!(
                "units: {}\narrows: {}\ncompositions checked: {}\nviolations: {}\n",
                g.units.len(),
                g.arrows.len(),
                g.compositions_checked,
                g.violations.len()
            );
            for v in &g.violations {
                text += &format!("  {v}\n");
            }
            let mut out = Output::ok(
                json!({ "spec": s.name(), "base": show_all(a, &base), "bound": bound }),
                json!({
                    "units": g.units.len(),
                    "arrows": arrows,
                    "compositions_checked": g.compositions_checked,
                    "violations": g.violations,
                }),
                text,
            );
            out.counterexample = !g.violations.is_empty();
            Ok(out)
        }
        Command::Factor {
            spec,
            check,
            point,
            max_size,
            max_period,
        } => {
            let f = load_spec(spec)?;
            let c = CoverMap::of_shift(&f.shift)?;
            factor(&f, &c, *check, point.as_deref(), *max_size, *max_period)
        }
        Command::Product { first, second } => {
            let (a, b) = (load_spec(first)?.shift, load_spec(second)?.shift);
            info_of(&a.product(&b)?, &[])
        }
        Command::Report { spec } => {
            let s = load_spec(spec)?.shift;
            let r = exact_sequence_report(&s)?;
            let results = serde_json::to_value(&r).expect("report serializes");
            let opt = |b: Option<bool>| b.map_or("unknown", yes_no);
            let mut text = format!("shift: {}\nm = {}\n", r.shift, r.m);
            if let Some(q) = &r.quotient {
                text += &format!("quotient: {q}\n");
            }
            if let (Some(bf), Some(sign)) = (&r.bf_invariant_factors, r.det_sign) {
                text += &format!("bowen-franks invariant factors: {bf:?}\ndet sign: {sign}\n");
            }
            text += &format!(
                "irreducible: {}\nmixing: {}\nfinitely many non-synchronizing: {}\nclaims suppressed: {}\n",
                opt(r.flags.irreducible),
                opt(r.flags.mixing),
                opt(r.flags.finitely_many_non_sync),
                yes_no(r.claims_suppressed)
            );
            debug_assert!(r.m != NonSyncCount::Unknown || s.is_oracle());
            Ok(Output::ok(json!({ "spec": s.name() }), results, text))
        }
    }
}

fn factor(
    f: &SpecFile,
    c: &CoverMap,
    check: FactorCheck,
    point: Option<&str>,
    max_size: usize,
    max_period: usize,
) -> Outcome {
    let s = &f.shift;
    let a = s.alphabet();
    let edges = c.source().alphabet();
    let mut inputs = json!({ "spec": s.name() });
    Ok(match check {
        FactorCheck::Resolving => {
            let r = resolving_check(c);
            let bound = degree_bound(c).ok();
            Output::ok(
                inputs,
                json!({
                    "right_resolving": r.right_resolving,
                    "left_resolving": r.left_resolving,
                    "degree_bound": bound,
                }),
                format!(
                    "right-resolving: {}\nleft-resolving: {}\ndegree bound: {}\n",
                    yes_no(r.right_resolving),
                    yes_no(r.left_resolving),
                    bound.map_or("none".to_string(), |b| b.to_string())
                ),
            )
        }
        FactorCheck::Preimages => {
            let Some(point) = point else {
                return Err(Failure::Usage("--check preimages needs --point".into()));
            };
            let x = point_arg(f, point)?;
            let p = preimage_count(c, &x)?;
            let paths = show_all(edges, &p.paths);
            inputs["point"] = json!(show(a, &x));
            let mut text = format!("count: {}\n", p.count);
            for path in &paths {
                text += &format!("{path}\n");
            }
            Output::ok(
                inputs,
                json!({ "count": p.count, "preimages": paths }),
                text,
            )
        }
        FactorCheck::Degree => {
            let r = degree_check(c, max_size)?;
            inputs["max_size"] = json!(max_size);
            let violations = show_all(a, &r.violations);
            let mut out = Output::ok(
                inputs,
                json!({
                    "bound": r.bound,
                    "max_observed": r.max_observed,
                    "samples": r.samples,
                    "violations": violations,
                }),
                format!(
                    "bound: {}\nmax observed: {}\nsamples: {}\nviolations: {}\n",
                    r.bound,
                    r.max_observed,
                    r.samples,
                    violations.join(", ")
                ),
            );
            out.counterexample = !r.violations.is_empty();
            out
        }
        FactorCheck::A1to1 => {
            let r = almost_one_to_one_check(c, max_period)?;
            inputs["max_period"] = json!(max_period);
            let exceptional: Vec<Value> = r
                .exceptional
                .iter()
                .map(|e| json!({ "point": show(a, &e.point), "count": e.count, "synchronizing": e.synchronizing }))
                .collect();
            let mut text = format!(
                "periodic points checked: {}\nexceptional: {}\n",
                r.periodic_checked,
                r.exceptional.len()
            );
            for e in &r.exceptional {
                text += &format!(
                    "  {} preimages {} synchronizing {}\n",
                    show(a, &e.point),
                    e.count,
                    yes_no(e.synchronizing)
                );
            }
            let mut out = Output::ok(
                inputs,
                json!({
                    "periodic_checked": r.periodic_checked,
                    "exceptional": exceptional,
                    "passed": r.passed(),
                }),
                text,
            );
            out.counterexample = !r.passed();
            out
        }
    })
}

fn describe_rule(a: &Alphabet, g: &Germ) -> String {
    let bound = |b: Option<i64>, inf: &str| b.map_or(inf.to_string(), |v| v.to_string());
    match &g.rule {
        Rule::Identity => "identity".into(),
        Rule::Overwrite { from, to, with } => format!(
            "overwrite [{}, {}) with {}",
            bound(*from, "-inf"),
            bound(*to, "inf"),
            show(a, with)
        ),
        Rule::Bracketed { .. } => "bracket of a stable and an unstable germ".into(),
        Rule::Shifted { by, .. } => format!("conjugate by shift {by}"),
        Rule::Then(..) => "composite".into(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info { .. } => "info",
        Command::Words { .. } => "words",
        Command::Periodic { .. } => "periodic",
        Command::FindPeriodic { .. } => "find-periodic",
        Command::SyncWords { .. } => "sync-words",
        Command::Classify { .. } => "classify",
        Command::Nonsync { .. } => "nonsync",
        Command::Bracket { .. } => "bracket",
        Command::Germ { .. } => "germ",
        Command::Groupoid { .. } => "groupoid",
        Command::Factor { .. } => "factor",
        Command::Product { .. } => "product",
        Command::Report { .. } => "report",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli.command) {
        Ok(out) => {
            let status = if out.counterexample {
                "counterexample"
            } else {
                "ok"
            };
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let report = json!({
                        "command": name,
                        "inputs": out.inputs,
                        "results": out.results,
                        "status": status,
                    });
                    serde_json::to_string_pretty(&report).expect("json") + "\n"
                }
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            ExitCode::from(u8::from(out.counterexample))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
