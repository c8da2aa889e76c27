//! Command-line frontend for `incgrade-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! rendered output together with the exit code: 0 on success, 1 when a
//! verification finds a counterexample, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use incgrade_core::algebra::{induced_auto, inner_auto, mult_auto, MorphismFile, PosetRef};
use incgrade_core::grading::{classify_gradings, count_gradings, DEFAULT_BUDGET};
use incgrade_core::identities::{
    chain_transitivity_identity_check, evaluate, identity_slice, monomial_identities, slices_equal_upto, tuples_upto,
    verify_chain_reduction, MultilinearPolynomial, PolynomialFile, Substitution, DEFAULT_CAP,
};
use incgrade_core::linalg::format_rational;
use incgrade_core::poset::ChainTransitivity;
use incgrade_core::{
    decompose_automorphism, random, AlgebraMorphism, FiniteGroup, GradingMap, IncidenceFunction, Poset,
    PosetAutomorphism,
};

pub const BUDGET_ENV: &str = "INCGRADE_MAX_BUDGET";

/// Bundled fixture posets, addressable by name with or without `.json`.
pub const FIXTURES: [(&str, &str); 11] = [
    ("c1", include_str!("../fixtures/c1.json")),
    ("c2", include_str!("../fixtures/c2.json")),
    ("c3", include_str!("../fixtures/c3.json")),
    ("c4", include_str!("../fixtures/c4.json")),
    ("a1", include_str!("../fixtures/a1.json")),
    ("a2", include_str!("../fixtures/a2.json")),
    ("a3", include_str!("../fixtures/a3.json")),
    ("a4", include_str!("../fixtures/a4.json")),
    ("example", include_str!("../fixtures/example.json")),
    ("diamond", include_str!("../fixtures/diamond.json")),
    ("c2+c3", include_str!("../fixtures/c2+c3.json")),
];

#[derive(Parser, Debug)]
#[command(name = "incgrade", version, about = "Elementary group gradings on incidence algebras of finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check a poset file (and optionally a grading) and summarize it
    Validate,
    /// List the maximal chains
    Chains,
    /// List the connected components
    Components,
    /// Length of a longest chain
    Bound,
    /// List the poset automorphisms
    Aut,
    /// Whether Aut(P) acts transitively on the maximal chains
    ChainTransitive,
    /// Möbius function: the inverse of zeta
    Mobius,
    /// Decompose an algebra automorphism as inner ∘ multiplicative ∘ induced
    Decompose,
    /// Homogeneous components of an elementary grading
    Grade,
    /// Number of distinct elementary gradings
    Count,
    /// Equivalence classes of elementary gradings
    Classify,
    /// Decide whether two gradings are equivalent
    Equiv,
    /// Multilinear identity slice of one multidegree
    Slice,
    /// Compare identity slices of two gradings up to a degree
    CompareIdentities,
    /// Check the maximal-chain reduction of identity slices
    VerifyReduction,
    /// Monomial identities up to a degree
    Monomials,
    /// Check that inequivalent gradings of a chain-transitive poset have different identities
    TransitivityCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Chains => "chains",
            Command::Components => "components",
            Command::Bound => "bound",
            Command::Aut => "aut",
            Command::ChainTransitive => "chain-transitive",
            Command::Mobius => "mobius",
            Command::Decompose => "decompose",
            Command::Grade => "grade",
            Command::Count => "count",
            Command::Classify => "classify",
            Command::Equiv => "equiv",
            Command::Slice => "slice",
            Command::CompareIdentities => "compare-identities",
            Command::VerifyReduction => "verify-reduction",
            Command::Monomials => "monomials",
            Command::TransitivityCheck => "transitivity-check",
        }
    }

    pub const ALL: [Command; 17] = [
        Command::Validate,
        Command::Chains,
        Command::Components,
        Command::Bound,
        Command::Aut,
        Command::ChainTransitive,
        Command::Mobius,
        Command::Decompose,
        Command::Grade,
        Command::Count,
        Command::Classify,
        Command::Equiv,
        Command::Slice,
        Command::CompareIdentities,
        Command::VerifyReduction,
        Command::Monomials,
        Command::TransitivityCheck,
    ];
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Table,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Poset JSON file or fixture name (c1..c4, a1..a4, example, diamond, c2+c3)
    #[arg(long, global = true, value_name = "FILE")]
    pub poset: Option<String>,
    /// Group spec: C<n>, S<n>, products like C2xC2, or a JSON Cayley table (inline or file)
    #[arg(long, global = true, value_name = "SPEC")]
    pub group: Option<String>,
    /// Grading values, one group element per poset element, comma separated
    #[arg(long, global = true, value_name = "CSV", allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Second grading for comparisons
    #[arg(long, global = true, value_name = "CSV", allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Multidegree of a slice, comma separated group elements
    #[arg(long, global = true, value_name = "CSV")]
    pub multidegree: Option<String>,
    /// Multilinear polynomial JSON file to test against a slice
    #[arg(long, global = true, value_name = "FILE")]
    pub polynomial: Option<String>,
    /// Algebra morphism JSON file for `decompose`
    #[arg(long, global = true, value_name = "FILE")]
    pub morphism: Option<String>,
    /// Maximal identity degree (default 3; bound(P) for transitivity-check)
    #[arg(long, global = true, value_name = "INT")]
    pub max_degree: Option<usize>,
    /// Largest multilinear degree the slice engine accepts
    #[arg(long, global = true, value_name = "INT", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Enable brute-force cross-checks
    #[arg(long, global = true)]
    pub verify: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for randomized subcommands
    #[arg(long, global = true, value_name = "INT")]
    pub seed: Option<u64>,
    /// Record wall-clock time in the report (makes output nondeterministic)
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub ok: bool,
    pub timing: Option<f64>,
    pub version: String,
}

/// Rendered output of [`run`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl From<incgrade_core::Error> for CliError {
    fn from(e: incgrade_core::Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Output {
    results: Value,
    table: Vec<String>,
    ok: bool,
}

impl Output {
    fn ok(results: Value, table: Vec<String>) -> Self {
        Output { results, table, ok: true }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new(), report: None }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text, report: None },
            };
        }
    };
    let start = Instant::now();
    match execute(cli.command, &cli.opts) {
        Ok(out) => {
            let report = RunReport {
                command: cli.command.name().to_string(),
                inputs: echo_inputs(cli.command, &cli.opts),
                results: out.results,
                ok: out.ok,
                timing: cli.opts.timing.then(|| start.elapsed().as_secs_f64()),
                version: env!("CARGO_PKG_VERSION").to_string(),
            };
            let stdout = match cli.opts.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report values are serializable") + "\n",
                Format::Table => out.table.iter().map(|l| format!("{l}\n")).collect(),
            };
            Outcome { code: if out.ok { 0 } else { 1 }, stdout, stderr: String::new(), report: Some(report) }
        }
        Err(CliError(msg)) => {
            Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n"), report: None }
        }
    }
}

fn echo_inputs(command: Command, o: &Opts) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: Option<Value>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
    };
    put("poset", o.poset.clone().map(Value::from));
    put("group", o.group.clone().map(Value::from));
    put("theta", o.theta.as_deref().map(|s| json!(split_csv(s))));
    put("mu", o.mu.as_deref().map(|s| json!(split_csv(s))));
    put("multidegree", o.multidegree.as_deref().map(|s| json!(split_csv(s))));
    put("polynomial", o.polynomial.clone().map(Value::from));
    put("morphism", o.morphism.clone().map(Value::from));
    put("max_degree", o.max_degree.map(Value::from));
    put("seed", o.seed.map(Value::from));
    if o.verify {
        put("verify", Some(Value::Bool(true)));
    }
    if matches!(
        command,
        Command::Slice
            | Command::CompareIdentities
            | Command::VerifyReduction
            | Command::Monomials
            | Command::TransitivityCheck
    ) {
        put("cap", Some(Value::from(o.cap)));
    }
    m
}

/// Splits on commas outside parentheses, so `(h,1),(1,h)` has two items.
pub fn split_csv(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out
}

pub fn fixture(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    let stem = Path::new(stem).file_name().and_then(|s| s.to_str()).unwrap_or(stem);
    FIXTURES.iter().find(|(n, _)| *n == stem).map(|(_, text)| *text)
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("cannot read {path}: {e}")))
}

/// A file on disk wins over a fixture of the same name.
pub fn load_poset(spec: &str) -> CliResult<Poset> {
    let text = if Path::new(spec).is_file() {
        read_file(spec)?
    } else if let Some(text) = fixture(spec) {
        text.to_string()
    } else {
        return Err(CliError(format!("--poset: no such file or fixture {spec:?}")));
    };
    Poset::from_json(&text).map_err(|e| CliError(format!("--poset {spec}: {e}")))
}

fn budget() -> CliResult<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError(format!("{BUDGET_ENV}: not a nonnegative integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

struct Ctx<'a> {
    opts: &'a Opts,
    poset: Option<Arc<Poset>>,
    group: Option<Arc<FiniteGroup>>,
}

impl<'a> Ctx<'a> {
    fn new(opts: &'a Opts) -> Self {
        Ctx { opts, poset: None, group: None }
    }

    fn poset(&mut self) -> CliResult<Arc<Poset>> {
        if let Some(p) = &self.poset {
            return Ok(p.clone());
        }
        let spec = self.opts.poset.as_deref().ok_or_else(|| missing("--poset"))?;
        let p = Arc::new(load_poset(spec)?);
        self.poset = Some(p.clone());
        Ok(p)
    }

    fn group(&mut self) -> CliResult<Arc<FiniteGroup>> {
        if let Some(g) = &self.group {
            return Ok(g.clone());
        }
        let spec = self.opts.group.as_deref().ok_or_else(|| missing("--group"))?;
        let text = if Path::new(spec).is_file() { read_file(spec)? } else { spec.to_string() };
        let g = Arc::new(FiniteGroup::from_spec(&text).map_err(|e| CliError(format!("--group {spec}: {e}")))?);
        self.group = Some(g.clone());
        Ok(g)
    }

    fn grading(&mut self, flag: &str, value: Option<&str>) -> CliResult<GradingMap> {
        let csv = value.ok_or_else(|| missing(flag))?;
        let (p, g) = (self.poset()?, self.group()?);
        let names = split_csv(csv);
        if names.len() != p.len() {
            return Err(CliError(format!("{flag}: {} values for a poset of {} elements", names.len(), p.len())));
        }
        GradingMap::from_names(&p, &g, &names).map_err(|e| CliError(format!("{flag}: {e}")))
    }

    fn theta(&mut self) -> CliResult<GradingMap> {
        let v = self.opts.theta.clone();
        self.grading("--theta", v.as_deref())
    }

    fn mu(&mut self) -> CliResult<GradingMap> {
        let v = self.opts.mu.clone();
        self.grading("--mu", v.as_deref())
    }

    fn multidegree(&mut self) -> CliResult<Option<Vec<usize>>> {
        let Some(csv) = self.opts.multidegree.clone() else { return Ok(None) };
        let g = self.group()?;
        let md = split_csv(&csv)
            .iter()
            .map(|n| g.element(n))
            .collect::<incgrade_core::Result<Vec<_>>>()
            .map_err(|e| CliError(format!("--multidegree: {e}")))?;
        Ok(Some(md))
    }

    fn max_degree(&self) -> usize {
        self.opts.max_degree.unwrap_or(3)
    }
}

fn missing(flag: &str) -> CliError {
    CliError(format!("missing required flag {flag}"))
}

fn labels(p: &Poset, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| p.label(i).to_string()).collect()
}

fn pair_labels(p: &Poset, (x, y): (usize, usize)) -> [String; 2] {
    [p.label(x).to_string(), p.label(y).to_string()]
}

fn names(g: &FiniteGroup, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.element_name(i).to_string()).collect()
}

fn entries_json(f: &IncidenceFunction) -> Value {
    let p = f.poset();
    json!(f
        .entries()
        .iter()
        .map(|(&(x, y), v)| json!([p.label(x), p.label(y), format_rational(v)]))
        .collect::<Vec<_>>())
}

fn entries_table(f: &IncidenceFunction) -> Vec<String> {
    let p = f.poset();
    f.entries()
        .iter()
        .map(|(&(x, y), v)| format!("  ({}, {}) = {}", p.label(x), p.label(y), format_rational(v)))
        .collect()
}

fn perm_labels(p: &Poset, sigma: &PosetAutomorphism) -> Vec<String> {
    labels(p, sigma.perm())
}

fn perm_table(p: &Poset, sigma: &PosetAutomorphism) -> String {
    (0..p.len()).map(|x| format!("{}->{}", p.label(x), p.label(sigma.apply(x)))).collect::<Vec<_>>().join(" ")
}

fn tuple_str(g: &FiniteGroup, t: &[usize]) -> String {
    format!("({})", names(g, t).join(","))
}

fn column_names(m: usize) -> Vec<String> {
    incgrade_core::group::permutations(m)
        .iter()
        .map(|p| p.iter().map(|i| format!("x{}", i + 1)).collect::<String>())
        .collect()
}

fn polynomial_text(coeffs: &[String], columns: &[String]) -> String {
    let mut out = String::new();
    for (c, m) in coeffs.iter().zip(columns).filter(|(c, _)| c.as_str() != "0") {
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, c.as_str()),
        };
        let sign = match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        let coeff = if abs == "1" { String::new() } else { format!("{abs}·") };
        out.push_str(&format!("{sign}{coeff}{m}"));
    }
    out
}

fn u(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn execute(command: Command, opts: &Opts) -> CliResult<Output> {
    let mut ctx = Ctx::new(opts);
    match command {
        Command::Validate => validate(&mut ctx),
        Command::Chains => chains(&mut ctx),
        Command::Components => components(&mut ctx),
        Command::Bound => {
            let b = ctx.poset()?.bound();
            Ok(Output::ok(json!({ "bound": b }), vec![b.to_string()]))
        }
        Command::Aut => aut(&mut ctx),
        Command::ChainTransitive => chain_transitive(&mut ctx),
        Command::Mobius => mobius(&mut ctx),
        Command::Decompose => decompose(&mut ctx),
        Command::Grade => grade(&mut ctx),
        Command::Count => count(&mut ctx),
        Command::Classify => classify(&mut ctx),
        Command::Equiv => equiv(&mut ctx),
        Command::Slice => slice(&mut ctx),
        Command::CompareIdentities => compare(&mut ctx),
        Command::VerifyReduction => reduction(&mut ctx),
        Command::Monomials => monomials(&mut ctx),
        Command::TransitivityCheck => transitivity(&mut ctx),
    }
}

fn validate(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let covers: Vec<_> = p.covers().iter().map(|&c| pair_labels(&p, c)).collect();
    let k = p.connected_components().len();
    let mut results = json!({
        "elements": p.labels(),
        "size": p.len(),
        "covers": covers,
        "comparable_pairs": p.comparable_pairs().len(),
        "components": k,
        "bound": p.bound(),
        "minimal": labels(&p, &p.minimal_elements()),
        "maximal": labels(&p, &p.maximal_elements()),
    });
    let mut table = vec![format!(
        "valid poset: {} elements, {} covers, {} comparable pairs, {} components, bound {}",
        p.len(),
        p.covers().len(),
        p.comparable_pairs().len(),
        k,
        p.bound()
    )];
    if ctx.opts.theta.is_some() {
        let theta = ctx.theta()?;
        let support: Vec<usize> = theta.support().into_iter().collect();
        results["grading"] = json!({
            "group": theta.group().name(),
            "theta": theta.names(),
            "support": names(theta.group(), &support),
        });
        table.push(format!("valid grading over {}: θ = ({})", theta.group().name(), theta.names().join(", ")));
    }
    Ok(Output::ok(results, table))
}

fn chains(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let chains: Vec<Vec<String>> = p.maximal_chains().iter().map(|c| labels(&p, c.indices())).collect();
    let table = chains.iter().enumerate().map(|(i, c)| format!("C{}: {}", i + 1, c.join(" < "))).collect();
    Ok(Output::ok(json!({ "count": chains.len(), "chains": chains }), table))
}

fn components(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let comps: Vec<Vec<String>> = p.connected_components().iter().map(|c| labels(&p, c)).collect();
    let table = comps.iter().enumerate().map(|(i, c)| format!("P{}: {{{}}}", i + 1, c.join(", "))).collect();
    Ok(Output::ok(json!({ "count": comps.len(), "components": comps }), table))
}

fn aut(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let auts = p.automorphisms();
    let images: Vec<Vec<String>> = auts.iter().map(|s| perm_labels(&p, s)).collect();
    let mut table = vec![format!("|Aut(P)| = {}", auts.len())];
    table.extend(auts.iter().map(|s| format!("  {}", perm_table(&p, s))));
    Ok(Output::ok(json!({ "order": auts.len(), "automorphisms": images }), table))
}

fn chain_transitive(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let chain_json = |chains: &[incgrade_core::Chain]| -> Vec<Vec<String>> {
        chains.iter().map(|c| labels(&p, c.indices())).collect()
    };
    Ok(match p.chain_transitivity() {
        ChainTransitivity::Transitive { chains, witnesses } => {
            let w: Vec<Value> = witnesses
                .iter()
                .map(|w| json!({ "from": w.from, "to": w.to, "sigma": perm_labels(&p, &w.sigma) }))
                .collect();
            let mut table = vec![format!("transitive: Aut(P) acts transitively on {} maximal chains", chains.len())];
            table.extend(
                witnesses.iter().map(|w| format!("  C{} -> C{}: {}", w.from + 1, w.to + 1, perm_table(&p, &w.sigma))),
            );
            Output::ok(
                json!({ "transitive": true, "chains": chain_json(&chains), "witnesses": w, "unreachable": null }),
                table,
            )
        }
        ChainTransitivity::Intransitive { chains, unreachable: (a, b) } => Output::ok(
            json!({ "transitive": false, "chains": chain_json(&chains), "witnesses": null, "unreachable": [a, b] }),
            vec![format!("not transitive: no automorphism maps C{} onto C{}", a + 1, b + 1)],
        ),
    })
}

fn mobius(ctx: &mut Ctx) -> CliResult<Output> {
    let p = ctx.poset()?;
    let zeta = IncidenceFunction::zeta(&p);
    let mu = zeta.invert()?;
    let mut results = json!({ "mobius": entries_json(&mu) });
    let mut table = vec!["μ = ζ⁻¹:".to_string()];
    table.extend(entries_table(&mu));
    let mut ok = true;
    if ctx.opts.verify {
        let delta = IncidenceFunction::delta(&p);
        ok = mu.convolve(&zeta)? == delta && zeta.convolve(&mu)? == delta;
        results["verified"] = json!(ok);
        table.push(format!("verified μ*ζ = ζ*μ = δ: {ok}"));
    }
    Ok(Output { results, table, ok })
}

fn resolve_poset_ref(r: &PosetRef) -> CliResult<Poset> {
    match r {
        PosetRef::Named(name) => load_poset(name),
        PosetRef::Inline(file) => Ok(Poset::from_file(file)?),
    }
}

fn decompose(ctx: &mut Ctx) -> CliResult<Output> {
    let (phi, planted) = if let Some(path) = ctx.opts.morphism.clone() {
        let file: MorphismFile =
            serde_json::from_str(&read_file(&path)?).map_err(|e| CliError(format!("--morphism {path}: {e}")))?;
        let p = Arc::new(resolve_poset_ref(&file.poset)?);
        ctx.poset = Some(p.clone());
        (AlgebraMorphism::from_file(&p, &file).map_err(|e| CliError(format!("--morphism {path}: {e}")))?, None)
    } else if let Some(seed) = ctx.opts.seed {
        let p = ctx.poset()?;
        let mut rng = random::seeded(seed);
        let r = random::invertible(&p, &mut rng);
        let s = random::multiplicative(&p, &mut rng);
        let sigma = random::automorphism(&p.automorphisms(), &mut rng);
        let phi = inner_auto(&r)?.compose(&mult_auto(&s)?)?.compose(&induced_auto(&p, &sigma)?)?;
        (phi, Some(sigma))
    } else {
        return Err(missing("--morphism (or --seed with --poset)"));
    };
    let p = phi.poset().clone();
    let d = decompose_automorphism(&phi)?;
    let reconstructs = d.compose()? == phi;
    let mut results = json!({
        "r": entries_json(&d.r),
        "s": entries_json(&d.s),
        "sigma": perm_labels(&p, &d.sigma),
        "reconstructs": reconstructs,
    });
    let mut table = vec![format!("σ: {}", perm_table(&p, &d.sigma)), "r:".to_string()];
    table.extend(entries_table(&d.r));
    table.push("s:".to_string());
    table.extend(entries_table(&d.s));
    table.push(format!("φ = ψ_r ∘ M_s ∘ σ̂ reconstructs the input: {reconstructs}"));
    let mut ok = reconstructs;
    if let Some(planted) = planted {
        let recovered = planted == d.sigma;
        results["planted_sigma"] = json!(perm_labels(&p, &planted));
        results["sigma_recovered"] = json!(recovered);
        table.push(format!("planted σ recovered: {recovered}"));
        ok &= recovered;
    }
    Ok(Output { results, table, ok })
}

fn grade(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let (p, g) = (theta.poset().clone(), theta.group().clone());
    let comps = theta.components();
    let support: Vec<usize> = comps.keys().copied().collect();
    let comp_json: Vec<Value> = comps
        .iter()
        .map(|(&h, basis)| {
            json!({
                "degree": g.element_name(h),
                "basis": basis.iter().map(|&pr| pair_labels(&p, pr)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut table = vec![format!("θ = ({}) over {}", theta.names().join(", "), g.name())];
    for (&h, basis) in &comps {
        let pairs: Vec<String> = basis.iter().map(|&(x, y)| format!("e({},{})", p.label(x), p.label(y))).collect();
        table.push(format!("  A({}) = span{{{}}}", g.element_name(h), pairs.join(", ")));
    }
    Ok(Output::ok(json!({ "theta": theta.names(), "support": names(&g, &support), "components": comp_json }), table))
}

fn count(ctx: &mut Ctx) -> CliResult<Output> {
    let (p, g) = (ctx.poset()?, ctx.group()?);
    let r = count_gradings(&p, &g, ctx.opts.verify, budget()?)?;
    let ok = r.agrees();
    let mut table = vec![r.formula.to_string()];
    if let Some(e) = r.enumerated {
        table.push(if ok {
            "verified by orbit enumeration".to_string()
        } else {
            format!("MISMATCH: orbit enumeration found {e}")
        });
    }
    Ok(Output {
        results: json!({
            "formula": u(r.formula),
            "enumerated": r.enumerated.map(u),
            "agrees": ok,
            "group_order": g.order(),
            "elements": p.len(),
            "components": p.connected_components().len(),
        }),
        table,
        ok,
    })
}

fn classify(ctx: &mut Ctx) -> CliResult<Output> {
    let (p, g) = (ctx.poset()?, ctx.group()?);
    let c = classify_gradings(&p, &g, budget()?)?;
    let ok = c.orbit_count == c.burnside_count;
    let classes: Vec<Value> = c
        .representatives
        .iter()
        .zip(&c.class_sizes)
        .map(|(r, &size)| json!({ "representative": r.names(), "size": size }))
        .collect();
    let mut table = vec![format!("{} classes (Burnside count {})", c.orbit_count, c.burnside_count)];
    table.extend(
        c.representatives
            .iter()
            .zip(&c.class_sizes)
            .map(|(r, size)| format!("  ({})  size {size}", r.names().join(", "))),
    );
    Ok(Output {
        results: json!({
            "orbit_count": u(c.orbit_count),
            "burnside_count": u(c.burnside_count),
            "classes": classes,
        }),
        table,
        ok,
    })
}

fn equiv(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let mu = ctx.mu()?;
    let (p, g) = (theta.poset().clone(), theta.group().clone());
    let w = theta.equivalent(&mu)?;
    let mut ok = true;
    let mut results = json!({ "equivalent": w.is_some(), "witness": null });
    let table = match &w {
        None => vec!["not equivalent".to_string()],
        Some(w) => {
            results["witness"] = json!({ "shifts": names(&g, &w.shifts), "sigma": perm_labels(&p, &w.sigma) });
            vec![format!(
                "equivalent: μ = h·θ·σ with h = ({}), σ: {}",
                names(&g, &w.shifts).join(", "),
                perm_table(&p, &w.sigma)
            )]
        }
    };
    let mut table = table;
    if ctx.opts.verify {
        // brute force over every (h, σ)
        let k = p.connected_components().len();
        let shifts = tuples_upto(&(0..g.order()).collect::<Vec<_>>(), k).into_iter().filter(|t| t.len() == k);
        let shifts: Vec<Vec<usize>> = shifts.collect();
        let brute = p.automorphisms().iter().any(|s| shifts.iter().any(|h| theta.act(h, s) == mu));
        let witness_ok = w.as_ref().is_none_or(|w| theta.verify_witness(&mu, w));
        ok = brute == w.is_some() && witness_ok;
        results["verified"] = json!(ok);
        table.push(format!("verified by brute force over G^k × Aut(P): {ok}"));
    }
    Ok(Output { results, table, ok })
}

/// Every substitution of the multidegree, as basis-pair tuples.
fn substitutions(theta: &GradingMap, md: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let comps = theta.components();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for g in md {
        let choices = comps.get(g).cloned().unwrap_or_default();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

fn vanishes(phi: &MultilinearPolynomial, theta: &GradingMap, md: &[usize]) -> CliResult<bool> {
    for pairs in substitutions(theta, md) {
        let sub = Substitution::new(theta, md, pairs)?;
        if !evaluate(phi, theta, &sub)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn slice(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let g = theta.group().clone();
    let poly = match ctx.opts.polynomial.clone() {
        Some(path) => {
            let file: PolynomialFile =
                serde_json::from_str(&read_file(&path)?).map_err(|e| CliError(format!("--polynomial {path}: {e}")))?;
            Some(file.resolve(&g).map_err(|e| CliError(format!("--polynomial {path}: {e}")))?)
        }
        None => None,
    };
    let md = match (ctx.multidegree()?, &poly) {
        (Some(md), Some(phi)) if md != phi.multidegree() => {
            return Err(CliError("--multidegree differs from the polynomial's multidegree".into()))
        }
        (Some(md), _) => md,
        (None, Some(phi)) => phi.multidegree().to_vec(),
        (None, None) => return Err(missing("--multidegree")),
    };
    let s = identity_slice(&theta, &md, ctx.opts.cap)?;
    let rep = s.report(&g);
    let columns = column_names(md.len());
    let mut results = json!({
        "multidegree": rep.multidegree,
        "dimension": rep.dimension,
        "ambient_dimension": rep.ambient_dimension,
        "columns": columns,
        "basis": rep.basis,
    });
    let mut table =
        vec![format!("slice {}: dimension {} of {}", tuple_str(&g, &md), rep.dimension, rep.ambient_dimension)];
    for row in &rep.basis {
        table.push(format!("  {}", polynomial_text(row, &columns)));
    }
    let mut ok = true;
    if let Some(phi) = &poly {
        let contains = s.contains(&phi.to_vector());
        results["contains_polynomial"] = json!(contains);
        table.push(format!("polynomial is an identity: {contains}"));
        if ctx.opts.verify {
            ok &= vanishes(phi, &theta, &md)? == contains;
        }
    }
    if ctx.opts.verify {
        for i in 0..s.basis.rows() {
            let phi = MultilinearPolynomial::from_vector(&g, md.clone(), s.basis.row(i))?;
            ok &= vanishes(&phi, &theta, &md)?;
        }
        results["verified"] = json!(ok);
        table.push(format!("verified by evaluation on every substitution: {ok}"));
    }
    Ok(Output { results, table, ok })
}

fn compare(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let mu = ctx.mu()?;
    let g = theta.group().clone();
    let d = ctx.max_degree();
    let c = slices_equal_upto(&theta, &mu, d, ctx.opts.cap)?;
    let table = vec![match &c.first_difference {
        None => format!("identical identity slices up to degree {d} ({} multidegrees)", c.multidegrees_checked),
        Some(t) => format!("slices differ at multidegree {}", tuple_str(&g, t)),
    }];
    Ok(Output::ok(
        json!({
            "equal": c.equal,
            "first_difference": c.first_difference.as_ref().map(|t| names(&g, t)),
            "multidegrees_checked": c.multidegrees_checked,
        }),
        table,
    ))
}

fn reduction(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let g = theta.group().clone();
    let cases = match ctx.multidegree()? {
        Some(md) => vec![md],
        None => {
            let mut degrees = theta.support();
            degrees.insert(g.identity());
            tuples_upto(&degrees.into_iter().collect::<Vec<_>>(), ctx.max_degree())
        }
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for md in &cases {
        let r = verify_chain_reduction(&theta, md, ctx.opts.cap)?;
        if !(r.holds && r.contained_in_each_chain) {
            failures.push(tuple_str(&g, md));
        }
        rows.push(json!({
            "multidegree": names(&g, md),
            "whole_dimension": r.whole_dimension,
            "intersection_dimension": r.intersection_dimension,
            "chain_dimensions": r.chain_dimensions,
            "holds": r.holds && r.contained_in_each_chain,
        }));
    }
    let ok = failures.is_empty();
    let mut table =
        vec![format!("chain reduction {} on {} multidegrees", if ok { "holds" } else { "FAILS" }, cases.len())];
    table.extend(failures.iter().map(|f| format!("  counterexample at {f}")));
    Ok(Output { results: json!({ "holds": ok, "cases": rows }), table, ok })
}

fn monomials(ctx: &mut Ctx) -> CliResult<Output> {
    let theta = ctx.theta()?;
    let g = theta.group().clone();
    let d = ctx.max_degree();
    let ids = monomial_identities(&theta, d, ctx.opts.cap)?;
    let list: Vec<Vec<String>> = ids.iter().map(|t| names(&g, t)).collect();
    let mut table = vec![format!("{} monomial identities of degree ≤ {d}", ids.len())];
    table.extend(ids.iter().map(|t| format!("  {}", tuple_str(&g, t))));
    Ok(Output::ok(json!({ "max_degree": d, "count": list.len(), "identities": list }), table))
}

fn transitivity(ctx: &mut Ctx) -> CliResult<Output> {
    let (p, g) = (ctx.poset()?, ctx.group()?);
    let d = ctx.opts.max_degree.unwrap_or_else(|| p.bound());
    let (r, reps) = chain_transitivity_identity_check(&p, &g, d, ctx.opts.cap, budget()?)?;
    let ok = r.all_separated();
    let unseparated: Vec<Value> = r
        .unseparated
        .iter()
        .map(|u| {
            json!({
                "first": reps[u.first].names(),
                "second": reps[u.second].names(),
                "slice_difference": u.slice_difference.as_ref().map(|t| names(&g, t)),
            })
        })
        .collect();
    let mut table = vec![format!(
        "{} classes, {} pairs checked at degree ≤ {d}: {} not separated by monomial identities",
        r.classes,
        r.pairs_checked,
        r.unseparated.len()
    )];
    for u in &r.unseparated {
        let how = match &u.slice_difference {
            Some(t) => format!("slices differ at {}", tuple_str(&g, t)),
            None => format!("slices agree up to degree {d}"),
        };
        table.push(format!(
            "  ({}) vs ({}): {how}",
            reps[u.first].names().join(", "),
            reps[u.second].names().join(", ")
        ));
    }
    Ok(Output {
        results: json!({
            "degree": d,
            "classes": r.classes,
            "representatives": reps.iter().map(GradingMap::names).collect::<Vec<_>>(),
            "pairs_checked": r.pairs_checked,
            "all_separated": ok,
            "unseparated": unseparated,
        }),
        table,
        ok,
    })
}
