//! The `cobrouwer` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cobrouwer_core::amalgam::coamalgamate;
use cobrouwer_core::axioms::{
    density1_checks, density1_witness, density2_checks, density2_witness, evaluate_axioms, local_splitting_witness,
    realize_signature_via_axioms, splitting_checks, splitting_witness, Check, Status,
};
use cobrouwer_core::duality::{cbs_to_poset, poset_to_cbs};
use cobrouwer_core::minext::{build_extension, enumerate_signatures, primitive_check};
use cobrouwer_core::pmorph::{classify, decompose_minimal_chain, Kind};
use cobrouwer_core::terms::{free_cbs, parse_brouwerian_term, parse_term, terms_equal, Term};
use cobrouwer_core::{Extension, FinCbs, PMorphism, PointSet};

use crate::dot::{algebra_dot, poset_dot};
use crate::error::{CliError, Result};
use crate::format::{
    parse_algebra, parse_document, parse_raw_algebra, parse_signature, read, write_algebra, write_hom, write_pmorphism,
    write_poset, Document, Orientation,
};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "cobrouwer", version, about = "Finite co-Brouwerian semilattices and their dual posets")]
pub struct Cli {
    /// How algebra files and terms are written: CBS (0, v, -) or
    /// Brouwerian (1, ^, ->). Algebra files are read in either form.
    #[arg(long, value_enum, default_value_t, global = true)]
    pub orientation: Orientation,
    /// Refuse to build algebras with more elements than this.
    #[arg(long, default_value_t = 1 << 20, global = true)]
    pub max_downsets: usize,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the produced file here; commands producing several files
    /// take a directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file and evaluate the Splitting and Density axioms.
    Check { file: PathBuf },
    /// Turn a poset into its algebra of downsets, or an algebra into its
    /// poset of join-irreducibles.
    Dualize { file: PathBuf },
    /// List the signatures of the minimal extensions of an algebra.
    Signatures { file: PathBuf },
    /// Build the minimal extension with a given signature.
    Extend { file: PathBuf, signature: String },
    /// Factor a surjective P-morphism into minimal ones.
    Decompose { file: PathBuf },
    /// Coamalgamate two surjective P-morphisms onto the same poset.
    Amalgamate { f: PathBuf, g: PathBuf },
    /// Build an extension witnessing one axiom instance.
    Witness {
        #[command(subcommand)]
        axiom: WitnessCommand,
    },
    /// Realize a signature by composing axiom witnesses only.
    Realize { file: PathBuf, signature: String },
    /// The free algebra on at most two generators.
    Free { n: usize },
    /// Decide whether two terms are equal in every algebra.
    Eq { lhs: String, rhs: String },
    /// Render a poset or algebra file as a Hasse diagram.
    Dot { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// b1 v b2 << a != 0 splits a.
    Splitting {
        file: PathBuf,
        a: usize,
        b1: usize,
        b2: usize,
        /// Double only the points below a.
        #[arg(long)]
        local: bool,
    },
    /// Some b != 0 lies above c with c << b.
    Density1 { file: PathBuf, c: usize },
    /// Some b sits between c and a1, a2, away from d.
    Density2 { file: PathBuf, c: usize, a1: usize, a2: usize, d: usize },
}

/// Files a command produces.
enum Artifacts {
    None,
    /// Written to `--out` when given, printed otherwise.
    Single(String),
    /// Written into the `--out` directory when given, printed otherwise.
    Bundle(Vec<(String, String)>),
}

struct Output {
    text: String,
    json: Value,
    artifacts: Artifacts,
}

struct Ctx {
    orientation: Orientation,
    max_downsets: usize,
}

impl Ctx {
    fn algebra_text(&self, l: &FinCbs) -> String {
        write_algebra(l, self.orientation)
    }

    fn term_text(&self, t: &Term) -> String {
        match self.orientation {
            Orientation::Cbs => t.to_string(),
            Orientation::Brouwerian => t.to_brouwerian().to_string(),
        }
    }

    fn parse_term(&self, text: &str) -> Result<Term> {
        let t = match self.orientation {
            Orientation::Cbs => parse_term(text),
            Orientation::Brouwerian => parse_brouwerian_term(text),
        };
        t.map_err(|e| CliError::Usage(format!("term `{text}`: {e}")))
    }

    /// The files for an extension of `base`.
    fn extension_files(&self, e: &Extension) -> Vec<(String, String)> {
        vec![
            ("base.cbs".into(), self.algebra_text(e.base())),
            ("extension.cbs".into(), self.algebra_text(e.ext())),
            ("embed.hom".into(), write_hom(&e.embed, "base.cbs", "extension.cbs")),
        ]
    }
}

fn load_algebra(path: &Path) -> Result<FinCbs> {
    parse_algebra(&read(path)?)
}

fn in_range(l: &FinCbs, xs: &[usize]) -> Result<()> {
    match xs.iter().find(|&&x| x >= l.len()) {
        Some(x) => Err(CliError::Usage(format!("element {x} out of range for {} elements", l.len()))),
        None => Ok(()),
    }
}

fn set_text(s: PointSet) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn certificate(axiom: &str, instance: Value, witnesses: Value, checks: &[Check]) -> Result<Value> {
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(CliError::Failed(format!("witness fails `{}`", c.statement)));
    }
    Ok(report::envelope(
        "certificate",
        json!({ "axiom": axiom, "instance": instance, "witnesses": witnesses, "checks": report::checks(checks) }),
    ))
}

fn check_lines(checks: &[Check]) -> String {
    checks.iter().map(|c| format!("  {} [{}]\n", c.statement, if c.holds { "ok" } else { "FAILS" })).collect()
}

fn check(file: &Path) -> Result<Output> {
    let raw = parse_raw_algebra(&read(file)?)?;
    let validation = raw.validate();
    if !validation.is_ok() {
        return Err(CliError::InvalidAlgebra(validation));
    }
    let l = raw.build()?;
    let reports = evaluate_axioms(&l);
    let mut text = format!("valid CBS with {} elements\n", l.len());
    for r in &reports {
        match r.status {
            Status::Satisfied => writeln!(text, "{}: satisfied", r.axiom).unwrap(),
            Status::Failed => writeln!(
                text,
                "{}: fails on {} instances, first ({}) = {:?}",
                r.axiom,
                r.failures.len(),
                r.axiom.variables().join(", "),
                r.failures[0]
            )
            .unwrap(),
        }
    }
    let json = json!({
        "valid": true,
        "size": l.len(),
        "axioms": reports.iter().map(report::axiom_report).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, artifacts: Artifacts::None })
}

fn dualize(ctx: &Ctx, file: &Path) -> Result<Output> {
    match parse_document(&read(file)?)? {
        Document::Poset(p) => {
            let (l, downsets) = poset_to_cbs(&p, ctx.max_downsets)?;
            let body = ctx.algebra_text(&l);
            let json = json!({
                "kind": "algebra",
                "algebra": report::algebra(&l),
                "downsets": downsets.iter().map(|&d| report::point_set(d)).collect::<Vec<_>>(),
            });
            Ok(Output { text: body.clone(), json, artifacts: Artifacts::Single(body) })
        }
        Document::Algebra(l) => {
            let (p, ji) = cbs_to_poset(&l);
            let p = match l.labels() {
                Some(_) => p.with_labels(ji.iter().map(|&g| l.label(g)).collect())?,
                None => p,
            };
            let body = write_poset(&p);
            let json = json!({ "kind": "poset", "poset": report::poset(&p), "join_irreducibles": ji });
            Ok(Output { text: body.clone(), json, artifacts: Artifacts::Single(body) })
        }
    }
}

fn signatures(file: &Path) -> Result<Output> {
    let l = load_algebra(file)?;
    let sigs = enumerate_signatures(&l);
    let text = sigs.iter().map(|s| format!("{s}\n")).collect();
    let json = json!({ "count": sigs.len(), "signatures": sigs.iter().map(report::signature).collect::<Vec<_>>() });
    Ok(Output { text, json, artifacts: Artifacts::None })
}

fn extend(ctx: &Ctx, file: &Path, signature: &str) -> Result<Output> {
    let l0 = load_algebra(file)?;
    let s = parse_signature(signature)?;
    let m = build_extension(&l0, &s)?;
    let kind = match m.kind {
        Kind::First => "first",
        Kind::Second => "second",
    };
    let ext = m.extension.ext();
    let text = format!(
        "{kind}-kind extension {s}: {} -> {} elements, generators {:?}\n",
        l0.len(),
        ext.len(),
        m.generators.elements()
    );
    let json = json!({
        "signature": report::signature(&s),
        "kind": kind,
        "generators": report::generators(&m.generators),
        "extension": report::algebra(ext),
        "embed": report::hom(&m.extension.embed),
    });
    Ok(Output { text, json, artifacts: Artifacts::Bundle(ctx.extension_files(&m.extension)) })
}

fn factor_kind(f: &PMorphism) -> Result<&'static str> {
    Ok(match classify(f)?.kind {
        Some(Kind::First) => "first",
        Some(Kind::Second) => "second",
        None => "other",
    })
}

fn decompose(file: &Path) -> Result<Output> {
    let f = crate::format::load_pmorphism(file)?;
    let factors = decompose_minimal_chain(&f)?;
    let mut text = format!("{} minimal factors\n", factors.len());
    let mut files = vec![("poset_0.poset".to_string(), write_poset(&f.dom))];
    let mut items = Vec::new();
    for (k, h) in factors.iter().enumerate() {
        let kind = factor_kind(h)?;
        writeln!(text, "  {}: {} -> {} points, {kind} kind, map {:?}", k + 1, h.dom.len(), h.cod.len(), h.map).unwrap();
        files.push((format!("poset_{}.poset", k + 1), write_poset(&h.cod)));
        files.push((
            format!("factor_{}.pmorph", k + 1),
            write_pmorphism(h, &format!("poset_{k}.poset"), &format!("poset_{}.poset", k + 1)),
        ));
        items.push(json!({ "kind": kind, "morphism": report::pmorphism(h) }));
    }
    let json = json!({ "input": report::pmorphism(&f), "length": factors.len(), "factors": items });
    Ok(Output { text, json, artifacts: Artifacts::Bundle(files) })
}

fn amalgamate(f: &Path, g: &Path) -> Result<Output> {
    let f = crate::format::load_pmorphism(f)?;
    let g = crate::format::load_pmorphism(g)?;
    let c = coamalgamate(&f, &g)?;
    let labels = c.pairs.iter().map(|&(a1, a2)| format!("{}|{}", set_text(a1), set_text(a2))).collect();
    let s = c.s.clone().with_labels(labels)?;
    let text = format!(
        "S has {} points over P ({} points) and R ({} points)\n",
        s.len(),
        f.dom.len(),
        g.dom.len()
    );
    let pairs: Vec<Value> =
        c.pairs.iter().map(|&(a1, a2)| json!([report::point_set(a1), report::point_set(a2)])).collect();
    let json = json!({
        "s": report::poset(&s),
        "pairs": pairs,
        "f_prime": c.f_prime.map,
        "g_prime": c.g_prime.map,
    });
    let files = vec![
        ("s.poset".into(), write_poset(&s)),
        ("p.poset".into(), write_poset(&f.dom)),
        ("r.poset".into(), write_poset(&g.dom)),
        ("f_prime.pmorph".into(), write_pmorphism(&c.f_prime, "s.poset", "r.poset")),
        ("g_prime.pmorph".into(), write_pmorphism(&c.g_prime, "s.poset", "p.poset")),
    ];
    Ok(Output { text, json, artifacts: Artifacts::Bundle(files) })
}

fn witness(ctx: &Ctx, axiom: &WitnessCommand) -> Result<Output> {
    let (name, e, instance, witnesses, checks) = match *axiom {
        WitnessCommand::Splitting { ref file, a, b1, b2, local } => {
            let l = load_algebra(file)?;
            in_range(&l, &[a, b1, b2])?;
            let build = if local { local_splitting_witness } else { splitting_witness };
            let (e, a1, a2) = build(&l, a, b1, b2)?;
            let checks = splitting_checks(&e, a, b1, b2, a1, a2);
            ("splitting", e, json!({ "a": a, "b1": b1, "b2": b2 }), json!({ "a1": a1, "a2": a2 }), checks)
        }
        WitnessCommand::Density1 { ref file, c } => {
            let l = load_algebra(file)?;
            in_range(&l, &[c])?;
            let (e, b) = density1_witness(&l, c)?;
            let checks = density1_checks(&e, c, b);
            ("density1", e, json!({ "c": c }), json!({ "b": b }), checks)
        }
        WitnessCommand::Density2 { ref file, c, a1, a2, d } => {
            let l = load_algebra(file)?;
            in_range(&l, &[c, a1, a2, d])?;
            let (e, b) = density2_witness(&l, c, a1, a2, d)?;
            let checks = density2_checks(&e, c, a1, a2, d, b);
            ("density2", e, json!({ "c": c, "a1": a1, "a2": a2, "d": d }), json!({ "b": b }), checks)
        }
    };
    let cert = certificate(name, instance, witnesses.clone(), &checks)?;
    let text = format!(
        "{name} witness in an extension with {} elements: {witnesses}\n{}",
        e.ext().len(),
        check_lines(&checks)
    );
    let json = json!({ "certificate": cert, "extension": report::algebra(e.ext()), "embed": report::hom(&e.embed) });
    let mut files = ctx.extension_files(&e);
    files.push(("certificate.json".into(), pretty(&cert)));
    Ok(Output { text, json, artifacts: Artifacts::Bundle(files) })
}

fn realize(ctx: &Ctx, file: &Path, signature: &str) -> Result<Output> {
    let l0 = load_algebra(file)?;
    let s = parse_signature(signature)?;
    let r = realize_signature_via_axioms(&l0, &s)?;
    let recovered = primitive_check(&r.embed, r.generators)?;
    let verified = recovered == s;
    let steps: Vec<usize> = r.tower.iter().map(|e| e.ext().len()).collect();
    let final_ext = Extension { embed: r.embed.clone() };
    let cert = report::envelope(
        "certificate",
        json!({
            "signature": report::signature(&s),
            "generators": report::generators(&r.generators),
            "recovered": report::signature(&recovered),
            "verified": verified,
            "depth": r.depth,
            "bound": r.bound,
            "tower_sizes": steps,
        }),
    );
    if !verified {
        return Err(CliError::Failed(format!("generators induce {recovered}, not {s}")));
    }
    let text = format!(
        "realized {s} in {} witness steps (sizes {steps:?}), depth {} <= {}, generators {:?} in {} elements\n",
        r.tower.len(),
        r.depth,
        r.bound,
        r.generators.elements(),
        r.embed.cod.len()
    );
    let json = json!({ "certificate": cert, "extension": report::algebra(&r.embed.cod), "embed": report::hom(&r.embed) });
    let mut files = ctx.extension_files(&final_ext);
    files.push(("certificate.json".into(), pretty(&cert)));
    Ok(Output { text, json, artifacts: Artifacts::Bundle(files) })
}

fn free(ctx: &Ctx, n: usize) -> Result<Output> {
    let f = free_cbs(n)?;
    let reps: Vec<String> = f.representatives.iter().map(|t| ctx.term_text(t)).collect();
    let mut text = format!("carrier size {}\n", f.algebra.len());
    for (k, t) in reps.iter().enumerate() {
        writeln!(text, "  {k}: {t}").unwrap();
    }
    let labelled = f.algebra.clone().with_labels(reps.clone())?;
    let json = json!({
        "generators": f.generators,
        "size": f.algebra.len(),
        "representatives": reps,
        "algebra": report::algebra(&labelled),
    });
    Ok(Output { text, json, artifacts: Artifacts::Single(ctx.algebra_text(&labelled)) })
}

fn eq(ctx: &Ctx, lhs: &str, rhs: &str) -> Result<Output> {
    let (s, t) = (ctx.parse_term(lhs)?, ctx.parse_term(rhs)?);
    let arity = s.arity().max(t.arity());
    let r = terms_equal(&s, &t, arity);
    let mut text = format!("{}\n", if r.equal { "equal" } else { "not equal" });
    let countermodel = r.countermodel.as_ref().map(|c| {
        let env: Vec<String> = c.assignment.iter().enumerate().map(|(k, v)| format!("x{k}={v}")).collect();
        writeln!(
            text,
            "countermodel in a {}-element algebra: {}; lhs = {}, rhs = {}",
            c.algebra.len(),
            env.join(", "),
            c.left,
            c.right
        )
        .unwrap();
        json!({
            "algebra": report::algebra(&c.algebra),
            "assignment": c.assignment,
            "left": c.left,
            "right": c.right,
        })
    });
    let json = json!({
        "lhs": ctx.term_text(&s),
        "rhs": ctx.term_text(&t),
        "equal": r.equal,
        "countermodel": countermodel,
    });
    Ok(Output { text, json, artifacts: Artifacts::None })
}

fn dot(file: &Path) -> Result<Output> {
    let (body, json) = match parse_document(&read(file)?)? {
        Document::Poset(p) => (poset_dot(&p), json!({ "kind": "poset", "covers": p.covers() })),
        Document::Algebra(l) => (algebra_dot(&l), json!({ "kind": "algebra", "covers": l.covers() })),
    };
    let mut json = json;
    json["dot"] = body.clone().into();
    Ok(Output { text: body.clone(), json, artifacts: Artifacts::Single(body) })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Dualize { .. } => "dualize",
        Command::Signatures { .. } => "signatures",
        Command::Extend { .. } => "extend",
        Command::Decompose { .. } => "decompose",
        Command::Amalgamate { .. } => "amalgamate",
        Command::Witness { axiom: WitnessCommand::Splitting { .. } } => "witness splitting",
        Command::Witness { axiom: WitnessCommand::Density1 { .. } } => "witness density1",
        Command::Witness { axiom: WitnessCommand::Density2 { .. } } => "witness density2",
        Command::Realize { .. } => "realize",
        Command::Free { .. } => "free",
        Command::Eq { .. } => "eq",
        Command::Dot { .. } => "dot",
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let ctx = Ctx { orientation: cli.orientation, max_downsets: cli.max_downsets };
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Dualize { file } => dualize(&ctx, file),
        Command::Signatures { file } => signatures(file),
        Command::Extend { file, signature } => extend(&ctx, file, signature),
        Command::Decompose { file } => decompose(file),
        Command::Amalgamate { f, g } => amalgamate(f, g),
        Command::Witness { axiom } => witness(&ctx, axiom),
        Command::Realize { file, signature } => realize(&ctx, file, signature),
        Command::Free { n } => free(&ctx, *n),
        Command::Eq { lhs, rhs } => eq(&ctx, lhs, rhs),
        Command::Dot { file } => dot(file),
    }
}

fn emit(cli: &Cli, output: Output, stdout: &mut dyn Write) -> Result<()> {
    let name = command_name(&cli.command);
    let mut printed = if cli.json { pretty(&report::envelope(name, output.json)) } else { output.text };
    match (&output.artifacts, &cli.out) {
        (Artifacts::None, Some(_)) => {
            return Err(CliError::Usage(format!("--out: `{name}` writes no files")));
        }
        (Artifacts::None, None) => {}
        (Artifacts::Single(body), Some(path)) => {
            write_file(path, body)?;
            if printed == *body {
                printed.clear();
            }
        }
        (Artifacts::Single(_), None) => {}
        (Artifacts::Bundle(files), Some(dir)) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.clone(), source: e })?;
            for (file, body) in files {
                write_file(&dir.join(file), body)?;
            }
        }
        (Artifacts::Bundle(files), None) if !cli.json => {
            for (file, body) in files {
                write!(printed, "# file: {file}\n{body}").unwrap();
            }
        }
        (Artifacts::Bundle(_), None) => {}
    }
    stdout.write_all(printed.as_bytes()).map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
}

/// Runs the command line and returns the exit status: 0 on success, 1 when
/// the input is wrong, 2 on usage errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(&cli).and_then(|out| emit(&cli, out, stdout)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
