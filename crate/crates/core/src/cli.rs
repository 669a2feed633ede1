//! Command-line front end. Every command prints one JSON document.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a check
//! ran and failed (a property check found a counterexample or a certificate
//! was rejected).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::{parse_rational, Alphabet, Distance};
use crate::approx::{
    build_approx, canonical_certificate_p2, profile_of, stability_check, ApproxFamily, TorusGridSpec, DEFAULT_CELL_CAP,
};
use crate::arith::is_prime;
use crate::complex::{is_en_zp, join_all, ComplexFile, EquivariantComplex};
use crate::error::{Error, Result};
use crate::homology::betti_of;
use crate::index::{
    apply_dimension_bound, exact_index_finite_free, index_of_join_of_finite, verify_certificate, EquivariantMapCert,
    IndexReport,
};
use crate::symbolic::{count_periodic, enumerate_periodic, orbit_decompose, EnumConfig, SubshiftSpec};
use crate::verify::{self, CheckRun};

/// Environment variable overriding the approximation cell cap.
pub const CELL_CAP_ENV: &str = "ZP_INDEX_CELL_CAP";

#[derive(Debug, Parser, Serialize)]
#[command(name = "zp-index", version, about = "Periodic points, equivariant complexes and Z_p-index bounds")]
pub struct Cli {
    /// Seed for randomized trials; echoed in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Count period-p points (transfer matrix); accepts a list of p.
    Count(CountArgs),
    /// List period-p points.
    Enumerate(EnumerateArgs),
    /// Split period-p points into shift orbits.
    Orbits(OrbitsArgs),
    /// Run a seeded property check.
    VerifyLemma(VerifyArgs),
    /// Reduced Betti numbers of a complex over F_l.
    Homology(HomologyArgs),
    /// Index and coindex reports.
    Index(IndexArgs),
    /// Cubical approximation of P_p(Z) or P_p(X(S^N,1,delta)).
    ApproxZ(ApproxArgs),
    /// Verify an equivariant-map certificate.
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FamilyName {
    /// X(Z_3, m, 1).
    #[value(name = "Sigma")]
    Sigma,
    /// X(G, m, delta) over --alphabet.
    #[value(name = "X")]
    X,
    #[value(name = "Z")]
    Z,
    #[value(name = "Y")]
    Y,
}

#[derive(Debug, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Alphabet for X, e.g. Z5, S:q=8, S^2:q=8.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Distance threshold for X, e.g. 1/2.
    #[arg(long)]
    pub delta: Option<String>,
    /// Grid resolution for Z and Y.
    #[arg(long)]
    pub q: Option<u32>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<SubshiftSpec> {
        build_family(self.family, self.m, self.alphabet.as_deref(), self.delta.as_deref(), self.q)
    }
}

fn build_family(family: FamilyName, m: u32, alphabet: Option<&str>, delta: Option<&str>, q: Option<u32>) -> Result<SubshiftSpec> {
    let need_q = || q.ok_or_else(|| Error::Shape("the Z and Y families need --q".into()));
    match family {
        FamilyName::Sigma => SubshiftSpec::sigma(m),
        FamilyName::X => {
            let a: Alphabet = alphabet.ok_or_else(|| Error::Shape("family X needs an alphabet".into()))?.parse()?;
            let d = delta.map(parse_rational).transpose()?.unwrap_or(Distance::from_integer(1));
            SubshiftSpec::x_gmdelta(a, m, d)
        }
        FamilyName::Z => SubshiftSpec::zcal(need_q()?),
        FamilyName::Y => SubshiftSpec::ycal(need_q()?),
    }
}

/// `Sigma:m=2,p=7`, `X:alphabet=Z5,m=1,delta=1,p=5`, `Z:q=8,p=3`.
pub fn parse_point_set(s: &str) -> Result<(SubshiftSpec, u32)> {
    let (name, params) = s.split_once(':').unwrap_or((s, ""));
    let family = FamilyName::from_str(name.trim(), false).map_err(|_| Error::Parse(format!("unknown family {name:?}")))?;
    let (mut m, mut p, mut alphabet, mut delta, mut q) = (1u32, None, None, None, None);
    // alphabet values such as S^2:q=8 contain ':' and '='
    for kv in params.split(',').filter(|kv| !kv.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
        let num = |v: &str| v.trim().parse::<u32>().map_err(|_| Error::Parse(format!("{k}={v} is not an integer")));
        match k.trim() {
            "m" => m = num(v)?,
            "p" => p = Some(num(v)?),
            "q" => q = Some(num(v)?),
            "alphabet" => alphabet = Some(v.trim().to_string()),
            "delta" => delta = Some(v.trim().to_string()),
            other => return Err(Error::Parse(format!("unknown key {other:?} in {s:?}"))),
        }
    }
    let p = p.ok_or_else(|| Error::Parse(format!("{s:?} needs p=<prime>")))?;
    Ok((build_family(family, m, alphabet.as_deref(), delta.as_deref(), q)?, p))
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Periods, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    /// Also write rows (family, m, p, count, orbits) to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub p: usize,
    /// Maximum number of words listed.
    #[arg(long, default_value_t = 1000)]
    pub limit: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub p: usize,
    /// Maximum number of orbit representatives listed.
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum CheckId {
    #[value(name = "eta-containment", alias = "3.1")]
    EtaContainment,
    #[value(name = "theta-eta-identity", alias = "3.2")]
    ThetaEtaIdentity,
    #[value(name = "recoding", alias = "4.1")]
    Recoding,
    #[value(name = "join-en", alias = "4.2")]
    JoinEn,
    #[value(name = "pair-embed", alias = "embed-1.5")]
    PairEmbed,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub id: CheckId,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    #[arg(long, default_value = "Z3")]
    pub alphabet: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    #[arg(long, default_value_t = 8)]
    pub q: u32,
    /// Join has K+1 factors.
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    /// Field characteristic; defaults to p.
    #[arg(long)]
    pub field: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct HomologyArgs {
    /// Complex file (JSON exchange format).
    #[arg(long, conflicts_with = "join_of")]
    pub complex: Option<PathBuf>,
    /// Point set to join with itself, e.g. Sigma:m=1,p=5.
    #[arg(long)]
    pub join_of: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub copies: u32,
    /// Field characteristic; defaults to p.
    #[arg(long)]
    pub field: Option<u64>,
    /// Also test for an E_n model of this n.
    #[arg(long)]
    pub en: Option<i64>,
}

#[derive(Debug, Args, Serialize)]
pub struct IndexArgs {
    /// Point set; with --copies > 1 the join of copies.
    #[arg(long, conflicts_with = "complex")]
    pub join_of: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub copies: u32,
    /// Complex file; bounds from its dimension and from --cert.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    #[arg(long, requires = "complex")]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ApproxFamilyName {
    #[value(name = "Z")]
    Z,
    #[value(name = "XSN")]
    Xsn,
    /// The whole torus, as a sanity input.
    #[value(name = "torus")]
    Torus,
}

#[derive(Debug, Args, Serialize)]
pub struct ApproxArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_enum, default_value = "Z")]
    pub family: ApproxFamilyName,
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value = "1/2")]
    pub delta: String,
    /// Field characteristic; defaults to p.
    #[arg(long)]
    pub field: Option<u64>,
    /// Also compute the profile at resolution 2q and compare.
    #[arg(long)]
    pub stability: bool,
    /// Write the complex in the exchange format.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    /// Certificate file.
    #[arg(long, requires = "target", conflicts_with = "p2")]
    pub cert: Option<PathBuf>,
    /// Target complex file.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Build and check the canonical certificate for P_2(Z) at this resolution.
    #[arg(long)]
    pub p2: Option<u32>,
    /// Write the certificate that was checked.
    #[arg(long)]
    pub emit_cert: Option<PathBuf>,
}

/// Result of one command: JSON results, provenance lines, and whether a check failed.
struct Outcome {
    results: Value,
    provenance: Vec<String>,
    failed_check: bool,
}

impl Outcome {
    fn ok(results: Value, provenance: Vec<String>) -> Self {
        Outcome { results, provenance, failed_check: false }
    }
}

fn cell_cap() -> Result<u64> {
    match std::env::var(CELL_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{CELL_CAP_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_CELL_CAP),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn point_set(s: &str) -> Result<(SubshiftSpec, u32, EquivariantComplex)> {
    let (spec, p) = parse_point_set(s)?;
    let pts = enumerate_periodic(&spec, p as usize, &EnumConfig::default())?;
    let set = EquivariantComplex::from_periodic_words(p, spec.alphabet(), &pts.words)?;
    Ok((spec, p, set))
}

#[derive(Serialize)]
struct CountRow {
    family: String,
    m: u32,
    p: u64,
    count: String,
    orbits: String,
}

fn cmd_count(a: &CountArgs) -> Result<Outcome> {
    let spec = a.family.spec()?;
    let fixed = count_periodic(&spec, 1)?.count;
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for &p in &a.p {
        let c = count_periodic(&spec, p)?;
        // for prime p every orbit has size 1 or p
        let orbits = is_prime(p).then(|| fixed + (c.count - fixed) / p as u128);
        rows.push(json!({
            "p": p,
            "count": big(c.count),
            "orbits": orbits.map(big),
            "provenance": c.provenance,
        }));
        csv_rows.push(CountRow {
            family: spec.to_string(),
            m: a.family.m,
            p,
            count: c.count.to_string(),
            orbits: orbits.map_or(String::new(), |o| o.to_string()),
        });
    }
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        for r in &csv_rows {
            w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    let mut results = json!({ "space": spec.to_string(), "rows": rows });
    if let [row] = rows.as_slice() {
        results["count"] = row["count"].clone();
        results["orbits"] = row["orbits"].clone();
    }
    Ok(Outcome::ok(results, vec!["count: trace of a power of the letter transfer matrix".into(), "orbits: fixed points plus (count - fixed)/p, p prime".into()]))
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let spec = a.family.spec()?;
    let pts = enumerate_periodic(&spec, a.p, &EnumConfig::default())?;
    let words: Vec<String> = pts.words.iter().take(a.limit).map(|w| w.to_text(spec.alphabet())).collect();
    Ok(Outcome::ok(
        json!({
            "space": spec.to_string(),
            "p": a.p,
            "total": pts.words.len(),
            "listed": words.len(),
            "words": words,
            "path": pts.path,
            "nodes_visited": pts.nodes_visited,
        }),
        vec!["total: exhaustive backtracking enumeration".into()],
    ))
}

fn cmd_orbits(a: &OrbitsArgs) -> Result<Outcome> {
    let spec = a.family.spec()?;
    let pts = enumerate_periodic(&spec, a.p, &EnumConfig::default())?;
    let dec = orbit_decompose(&pts.words, a.p)?;
    let mut sizes = std::collections::BTreeMap::new();
    for o in &dec.orbits {
        *sizes.entry(o.len()).or_insert(0usize) += 1;
    }
    let reps: Vec<String> = dec.orbits.iter().take(a.limit).map(|o| o[0].to_text(spec.alphabet())).collect();
    Ok(Outcome::ok(
        json!({
            "space": spec.to_string(),
            "p": a.p,
            "points": pts.words.len(),
            "orbits": dec.orbits.len(),
            "free": dec.free,
            "orbit_sizes": sizes,
            "representatives": reps,
        }),
        vec!["orbits: exhaustive enumeration followed by shift-orbit decomposition".into()],
    ))
}

fn check_outcome(run: CheckRun) -> Outcome {
    let failed_check = !run.passed;
    let provenance = vec![run.provenance.clone()];
    Outcome { results: serde_json::to_value(&run).expect("serializable"), provenance, failed_check }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let run = match a.id {
        CheckId::EtaContainment => verify::eta_containment(a.m, &a.alphabet.parse()?, a.trials, cli_seed())?,
        CheckId::ThetaEtaIdentity => verify::theta_eta_identity(a.m, &a.alphabet.parse()?, a.trials, cli_seed())?,
        CheckId::Recoding => verify::recoding(a.m, a.p)?,
        CheckId::JoinEn => verify::join_en(a.m, a.p, a.k, a.field.unwrap_or(a.p as u64))?,
        CheckId::PairEmbed => verify::pair_embed(a.p, a.q)?,
    };
    Ok(check_outcome(run))
}

thread_local! {
    static SEED: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

fn cli_seed() -> u64 {
    SEED.with(|s| s.get())
}

fn load_complex(path: &PathBuf) -> Result<EquivariantComplex> {
    ComplexFile::from_json(&read(path)?)?.into_complex()
}

fn cmd_homology(a: &HomologyArgs) -> Result<Outcome> {
    let (c, what) = match (&a.complex, &a.join_of) {
        (Some(path), None) => (load_complex(path)?, path.display().to_string()),
        (None, Some(s)) => {
            let (_, _, set) = point_set(s)?;
            let copies = vec![&set; a.copies.max(1) as usize];
            (join_all(&copies)?, format!("{s} joined {} times", a.copies.max(1)))
        }
        _ => return Err(Error::Shape("give exactly one of --complex or --join-of".into())),
    };
    let field = a.field.unwrap_or(c.p() as u64);
    let betti = betti_of(&c, field)?;
    let mut results = json!({
        "complex": what,
        "p": c.p(),
        "field": field,
        "cells_by_dim": c.cell_counts(),
        "reduced_betti": betti.reduced,
        "reduced_minus_one": betti.reduced_minus_one,
        "ranks": betti.ranks,
        "euler_consistent": betti.euler_consistent(),
        "free": c.verify_free_action(),
    });
    if let Some(n) = a.en {
        results["en"] = serde_json::to_value(is_en_zp(&c, n, Some(field))?)?;
    }
    Ok(Outcome::ok(results, vec![format!("reduced Betti numbers: exact sparse elimination over F_{field}")]))
}

fn cmd_index(a: &IndexArgs) -> Result<Outcome> {
    let report = match (&a.join_of, &a.complex) {
        (Some(s), None) => {
            let (spec, p, set) = point_set(s)?;
            if a.copies <= 1 {
                exact_index_finite_free(&set, &format!("P_{p}({spec})"))?
            } else {
                let copies = vec![&set; a.copies as usize];
                index_of_join_of_finite(&copies, &format!("P_{p}({spec})^{{*{}}}", a.copies))?
            }
        }
        (None, Some(path)) => {
            let c = load_complex(path)?;
            let mut r = IndexReport::unknown(c.p(), path.display().to_string());
            apply_dimension_bound(&c, &mut r)?;
            if let Some(cert_path) = &a.cert {
                let cert = EquivariantMapCert::from_json(&read(cert_path)?)?;
                let rep = verify_certificate(&cert, &c)?;
                if !rep.accepted {
                    return Ok(Outcome {
                        results: json!({ "report": r, "certificate": rep }),
                        provenance: vec!["certificate rejected; report keeps earlier bounds".into()],
                        failed_check: true,
                    });
                }
                rep.apply_to(&mut r)?;
            }
            r
        }
        _ => return Err(Error::Shape("give exactly one of --join-of or --complex".into())),
    };
    let provenance = report.provenance.clone();
    let mut results = serde_json::to_value(&report)?;
    results["exact"] = match report.value() {
        Some(v) => json!(v),
        None => json!(false),
    };
    results["is_exact"] = json!(report.exact);
    Ok(Outcome::ok(results, provenance))
}

fn approx_spec(a: &ApproxArgs) -> Result<TorusGridSpec> {
    let family = match a.family {
        ApproxFamilyName::Z => ApproxFamily::Zcal,
        ApproxFamilyName::Xsn => ApproxFamily::Xsn { n: a.n, delta: parse_rational(&a.delta)? },
        ApproxFamilyName::Torus => ApproxFamily::Unconstrained,
    };
    TorusGridSpec::new(a.p, a.q, family)
}

fn cmd_approx(a: &ApproxArgs) -> Result<Outcome> {
    let spec = approx_spec(a)?;
    let cap = cell_cap()?;
    let field = a.field.unwrap_or(a.p as u64);
    let c = build_approx(&spec, cap)?;
    if let Some(path) = &a.export {
        write(path, &ComplexFile::from_complex(&c).to_json()?)?;
    }
    let profile = profile_of(&spec, &c, field)?;
    let mut results = json!({
        "space": profile.space,
        "vertices": profile.vertices,
        "cells_by_dim": profile.cells_by_dim,
        "reduced_betti": profile.betti.reduced,
        "free": profile.free,
        "field": field,
        "cell_cap": cap,
    });
    let mut provenance = vec![
        format!("inner vertex-wise approximation at resolution q={}; not a homotopy model", a.q),
        format!("reduced Betti numbers: exact sparse elimination over F_{field}"),
    ];
    if a.stability {
        let st = stability_check(&spec, field, cap)?;
        results["stability"] = json!({
            "q": [st.coarse.q, st.fine.q],
            "reduced_betti": [st.coarse.betti.reduced, st.fine.betti.reduced],
            "agree": st.agree,
        });
        provenance.push("stability: profiles at q and 2q compared, never averaged".into());
    }
    Ok(Outcome::ok(results, provenance))
}

fn cmd_certify(a: &CertifyArgs) -> Result<Outcome> {
    let (cert, target) = match (&a.cert, &a.p2) {
        (Some(cp), None) => {
            let tp = a.target.as_ref().ok_or_else(|| Error::Shape("--cert needs --target".into()))?;
            (EquivariantMapCert::from_json(&read(cp)?)?, load_complex(tp)?)
        }
        (None, Some(q)) => {
            let cert = canonical_certificate_p2(*q)?;
            (cert, build_approx(&TorusGridSpec::zcal(2, *q)?, cell_cap()?)?)
        }
        _ => return Err(Error::Shape("give --cert with --target, or --p2 <q>".into())),
    };
    if let Some(path) = &a.emit_cert {
        write(path, &cert.to_json()?)?;
    }
    let rep = verify_certificate(&cert, &target)?;
    let mut report = IndexReport::unknown(target.p(), cert.target_ref.clone());
    if rep.accepted {
        rep.apply_to(&mut report)?;
    }
    let failed_check = !rep.accepted;
    Ok(Outcome {
        results: json!({ "accepted": rep.accepted, "certificate": rep, "report": report }),
        provenance: vec!["combinatorial check of domain model, totality, equivariance and cell-to-cell continuity".into()],
        failed_check,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    SEED.with(|s| s.set(cli.seed));
    match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Orbits(a) => cmd_orbits(a),
        Command::VerifyLemma(a) => cmd_verify(a),
        Command::Homology(a) => cmd_homology(a),
        Command::Index(a) => cmd_index(a),
        Command::ApproxZ(a) => cmd_approx(a),
        Command::Certify(a) => cmd_certify(a),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Enumerate(_) => "enumerate",
        Command::Orbits(_) => "orbits",
        Command::VerifyLemma(_) => "verify-lemma",
        Command::Homology(_) => "homology",
        Command::Index(_) => "index",
        Command::ApproxZ(_) => "approx-z",
        Command::Certify(_) => "certify",
    }
}

/// What the binary prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub status: i32,
    pub body: String,
}

pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Response { status: 0, body: e.to_string() };
            }
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "error": { "reason": "usage", "message": e.to_string() },
            });
            return Response { status: 1, body: pretty(&doc) };
        }
    };
    let inputs = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    let mut doc = json!({
        "command": command_name(&cli.command),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cli.seed,
        "inputs": inputs,
    });
    let status = match dispatch(&cli) {
        Ok(out) => {
            doc["status"] = json!(if out.failed_check { "check_failed" } else { "ok" });
            doc["results"] = out.results;
            doc["provenance"] = json!(out.provenance);
            if out.failed_check { 2 } else { 0 }
        }
        Err(e) => {
            doc["status"] = json!("error");
            doc["error"] = json!({ "reason": e.reason(), "message": e.to_string() });
            1
        }
    };
    let body = pretty(&doc);
    if let Some(path) = &cli.output {
        if let Err(e) = write(path, &body) {
            let doc = json!({ "error": { "reason": e.reason(), "message": e.to_string() } });
            return Response { status: 1, body: pretty(&doc) };
        }
        return Response { status, body: String::new() };
    }
    Response { status, body }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
