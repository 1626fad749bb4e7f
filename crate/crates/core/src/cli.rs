//! Command-line front end. Reads JSON inputs, writes a JSON (or plain text) report.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::action::{PermRep, RepSpec};
use crate::error::Error;
use crate::extension::AssignmentSpec;
use crate::groups::GroupSpec;
use crate::perm::Permutation;
use crate::residual::witness;
use crate::schreier::{signed_index, Transversal};
use crate::verify::{self, Check};
use crate::words::{Alphabet, Word};
use crate::wreath::{embed, WreathContext, WreathElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

const MAX_WORD_LEN: usize = 30;

#[derive(Parser, Debug)]
#[command(name = "freesub", version, about = "Schreier bases, wreath embeddings and extensions for finite-index subgroups of free groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schreier transversal of the subgroup given by a coset action
    Transversal(Options),
    /// Nielsen-Schreier basis of the subgroup
    Basis(Options),
    /// Rewrite a subgroup element in the basis
    Rewrite(Options),
    /// Embed a finite group into a wreath product over a subgroup
    Embed(Options),
    /// Extend an assignment on the basis to a homomorphism on the subgroup
    Extend(Options),
    /// Finite permutation representation separating a word from the identity
    Witness(Options),
    /// Run the invariant suite on an input
    Verify(Options),
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Subgroup given as a coset action (JSON)
    #[arg(long, value_name = "FILE")]
    rep: Option<PathBuf>,
    /// Finite permutation group (JSON)
    #[arg(long, value_name = "FILE")]
    group: Option<PathBuf>,
    /// Basis assignment (JSON)
    #[arg(long, value_name = "FILE")]
    assign: Option<PathBuf>,
    /// Word such as "a b^-1 a"
    #[arg(long, value_name = "STRING", allow_hyphen_values = true)]
    word: Option<String>,
    /// Comma-separated generator names for `witness` (default: names in the word, in order)
    #[arg(long, value_name = "NAMES")]
    alphabet: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

/// Input error with the message shown to the user.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

/// Inputs read so far, hashed into the report digest.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn absorb(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn file<T: DeserializeOwned>(&mut self, label: &str, path: Option<&Path>) -> Result<T, InputError> {
        let path = path.ok_or_else(|| InputError(format!("missing required --{label} FILE")))?;
        let bytes =
            fs::read(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        self.absorb(label, &bytes);
        serde_json::from_slice(&bytes)
            .map_err(|e| InputError(format!("schema violation in {}: {e}", path.display())))
    }

    fn word(&mut self, word: Option<&str>) -> Result<String, InputError> {
        let word = word.ok_or_else(|| InputError("missing required --word STRING".into()))?;
        self.absorb("word", word.as_bytes());
        Ok(word.to_string())
    }

    fn digest(&self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.clone().finalize()))
    }
}

struct Report {
    fields: Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new() -> Self {
        Report { fields: Map::new(), passed: true }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    fn checks(&mut self, key: &str, checks: &[Check]) {
        self.passed &= verify::all_passed(checks);
        self.set(key, serde_json::to_value(checks).expect("checks serialize"));
    }

    fn flag(&mut self, flags: &mut Map<String, Value>, key: &str, ok: bool) {
        self.passed &= ok;
        flags.insert(key.to_string(), Value::Bool(ok));
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (name, opts) = match &cli.command {
        Command::Transversal(o) => ("transversal", o),
        Command::Basis(o) => ("basis", o),
        Command::Rewrite(o) => ("rewrite", o),
        Command::Embed(o) => ("embed", o),
        Command::Extend(o) => ("extend", o),
        Command::Witness(o) => ("witness", o),
        Command::Verify(o) => ("verify", o),
    };
    let mut inputs = Inputs::default();
    let mut report = Report::new();
    let result = match &cli.command {
        Command::Transversal(o) => transversal(o, &mut inputs, &mut report),
        Command::Basis(o) => basis(o, &mut inputs, &mut report),
        Command::Rewrite(o) => rewrite(o, &mut inputs, &mut report),
        Command::Embed(o) => embed_cmd(o, &mut inputs, &mut report),
        Command::Extend(o) => extend(o, &mut inputs, &mut report),
        Command::Witness(o) => witness_cmd(o, &mut inputs, &mut report),
        Command::Verify(o) => verify_cmd(o, &mut inputs, &mut report),
    };
    if let Err(InputError(msg)) = result {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_BAD_INPUT;
    }

    let mut doc = Map::new();
    doc.insert("tool".into(), json!("freesub"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("command".into(), json!(name));
    doc.insert("input_digest".into(), json!(inputs.digest()));
    doc.extend(std::mem::take(&mut report.fields));
    doc.insert("passed".into(), json!(report.passed));
    let doc = Value::Object(doc);

    let written = if opts.text {
        write_text(out, &doc)
    } else {
        serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from).and_then(|_| writeln!(out))
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_BAD_INPUT;
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    }
}

fn write_text(out: &mut dyn Write, doc: &Value) -> std::io::Result<()> {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    fn emit(out: &mut dyn Write, indent: usize, key: &str, v: &Value) -> std::io::Result<()> {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                writeln!(out, "{pad}{key}:")?;
                for (k, v) in map {
                    emit(out, indent + 1, k, v)?;
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                writeln!(out, "{pad}{key}:")?;
                for (i, item) in items.iter().enumerate() {
                    emit(out, indent + 1, &format!("[{i}]"), item)?;
                }
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                writeln!(out, "{pad}{key}: {}", parts.join(", "))?;
            }
            other => writeln!(out, "{pad}{key}: {}", scalar(other))?,
        }
        Ok(())
    }
    if let Value::Object(map) = doc {
        for (k, v) in map {
            emit(out, 0, k, v)?;
        }
    }
    Ok(())
}

fn load_rep(opts: &Options, inputs: &mut Inputs) -> Result<PermRep, InputError> {
    let spec: RepSpec = inputs.file("rep", opts.rep.as_deref())?;
    Ok(PermRep::try_from(spec)?)
}

fn load_group(opts: &Options, inputs: &mut Inputs) -> Result<GroupSpec, InputError> {
    inputs.file("group", opts.group.as_deref())
}

fn words_json(alphabet: &Alphabet, words: &[Word]) -> Value {
    Value::Array(words.iter().map(|w| Value::String(alphabet.format(w))).collect())
}

fn perm_json(p: &Permutation) -> Value {
    json!(p.images())
}

fn wreath_json(ctx: &WreathContext, x: &WreathElement) -> Value {
    json!({
        "fiber": ctx.fiber_perms(x).iter().map(perm_json).collect::<Vec<_>>(),
        "top": perm_json(ctx.top_perm(x)),
    })
}

fn transversal(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let rep = load_rep(opts, inputs)?;
    let t = Transversal::new(&rep)?;
    report.set("transversal", words_json(rep.alphabet(), t.words()));
    report.set("index", json!(rep.index()?));
    let mut flags = Map::new();
    report.flag(&mut flags, "prefix_closed", t.is_prefix_closed());
    report.flag(&mut flags, "represents_cosets", t.represents_cosets());
    report.set("verification", Value::Object(flags));
    Ok(())
}

fn basis(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let rep = load_rep(opts, inputs)?;
    let t = Transversal::new(&rep)?;
    let a = rep.alphabet();
    report.set("transversal", words_json(a, t.words()));
    report.set("basis", words_json(a, t.basis().elements()));
    let labels: Vec<Value> = t
        .basis()
        .labels()
        .iter()
        .map(|l| json!({"t": a.format(t.word(l.point)), "x": a.name(l.generator)}))
        .collect();
    report.set("labels", Value::Array(labels));
    report.set("index", json!(rep.index()?));
    let ok = t.rank_formula_holds();
    report.passed &= ok;
    report.set("rank_formula_check", json!(ok));
    Ok(())
}

fn rewrite(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let rep = load_rep(opts, inputs)?;
    let text = inputs.word(opts.word.as_deref())?;
    let h = rep.alphabet().parse(&text)?;
    let t = Transversal::new(&rep)?;
    let bword = t.rewrite(&h)?;
    let back = t.basis().evaluate(&bword)?;
    report.set("word", json!(rep.alphabet().format(&h)));
    report.set("rewrite", json!(bword.letters().iter().map(|&l| signed_index(l)).collect::<Vec<_>>()));
    report.set("basis_word", json!(t.basis().alphabet().format(&bword)));
    report.set("basis", words_json(rep.alphabet(), t.basis().elements()));
    let ok = back == h;
    report.passed &= ok;
    report.set("round_trip", json!(ok));
    Ok(())
}

fn embed_cmd(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let spec = load_group(opts, inputs)?;
    let group = spec.group()?;
    let sub = spec.subgroup()?;
    let emb = embed(&group, &sub)?;
    let ctx = emb.context();
    report.set("group_order", json!(group.order()));
    report.set("subgroup_order", json!(ctx.fiber_group().order()));
    report.set("index", json!(emb.cosets().len()));
    let reps: Vec<Value> = emb.cosets().representatives().iter().map(|&e| perm_json(group.perm(e))).collect();
    report.set("coset_representatives", Value::Array(reps));
    let table: Vec<Value> = group
        .iter()
        .map(|g| {
            let mut entry = Map::new();
            entry.insert("element".into(), perm_json(group.perm(g)));
            if let Value::Object(img) = wreath_json(ctx, emb.image(g)) {
                entry.extend(img);
            }
            Value::Object(entry)
        })
        .collect();
    report.set("embedding", Value::Array(table));
    let mut flags = Map::new();
    report.flag(&mut flags, "injective", emb.is_injective());
    report.flag(&mut flags, "homomorphism", emb.is_homomorphism());
    report.flag(&mut flags, "lemma_pi_identity", emb.projection_is_identity_on_subgroup());
    report.flag(&mut flags, "pi_homomorphism_on_rho_h", emb.projection_is_homomorphism_on_rho_h());
    report.set("verification", Value::Object(flags));
    Ok(())
}

fn extend(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let rep = load_rep(opts, inputs)?;
    let target = load_group(opts, inputs)?.group()?;
    let assignment: AssignmentSpec = inputs.file("assign", opts.assign.as_deref())?;
    let t = Transversal::new(&rep)?;
    let values = assignment.resolve(t.basis().len(), &target)?;
    let ext = crate::extension::Extension::new(t, target, values)?;
    let a = rep.alphabet();
    let target = ext.target();

    report.set("basis", words_json(a, ext.basis().elements()));
    report.set("assignment", json!(ext.values().iter().map(|&v| perm_json(target.perm(v))).collect::<Vec<_>>()));
    let psi: Vec<Value> = ext
        .basis()
        .elements()
        .iter()
        .map(|b| ext.psi(b).map(|v| perm_json(target.perm(v))))
        .collect::<Result<_, _>>()?;
    report.set("psi_on_basis", Value::Array(psi));
    let mut chi = Map::new();
    for (g, name) in a.names().iter().enumerate() {
        chi.insert(name.clone(), wreath_json(ext.context(), ext.chi(g)));
    }
    report.set("chi", Value::Object(chi));
    report.set("seed", json!(opts.seed));
    report.set("samples", json!(opts.samples));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let checks = verify::extension_checks(&mut rng, &ext, opts.samples, MAX_WORD_LEN)?;
    report.checks("checks", &checks);
    Ok(())
}

fn witness_cmd(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let text = inputs.word(opts.word.as_deref())?;
    let alphabet = match &opts.alphabet {
        Some(names) => {
            inputs.absorb("alphabet", names.as_bytes());
            Alphabet::new(names.split(',').map(str::trim))?
        }
        None => {
            let mut names: Vec<&str> = Vec::new();
            for token in text.split_whitespace().filter(|t| *t != "1") {
                let name = token.split('^').next().unwrap_or(token);
                if !names.contains(&name) {
                    names.push(name);
                }
            }
            if names.is_empty() {
                return Err(Error::IdentityWitness.into());
            }
            Alphabet::new(names)?
        }
    };
    let w = alphabet.parse(&text)?;
    let rep = witness(&alphabet, &w)?;
    let image = rep.act(&w, 0)?;
    report.set("word", json!(alphabet.format(&w)));
    report.set("rep", serde_json::to_value(rep.to_spec()).expect("rep serializes"));
    report.set("image_point", json!(image));
    let ok = image != rep.basepoint();
    report.passed &= ok;
    report.set("separated", json!(ok));
    Ok(())
}

fn verify_cmd(opts: &Options, inputs: &mut Inputs, report: &mut Report) -> Result<(), InputError> {
    let rep = load_rep(opts, inputs)?;
    let target = match &opts.group {
        Some(_) => Some(load_group(opts, inputs)?.group()?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let t = Transversal::new(&rep)?;
    let n = opts.samples;
    let mut checks = vec![
        verify::word_axioms(&mut rng, rep.alphabet(), n, MAX_WORD_LEN),
        verify::action_law(&mut rng, &rep, n, MAX_WORD_LEN)?,
    ];
    checks.extend(verify::transversal_checks(&t)?);
    checks.push(verify::round_trip(&mut rng, &t, n, MAX_WORD_LEN)?);
    checks.push(verify::rewrite_homomorphism(&mut rng, &t, n, MAX_WORD_LEN)?);
    if let Some(target) = &target {
        // ten random assignments, merged per property
        let mut merged: Vec<Check> = Vec::new();
        for _ in 0..10 {
            let ext = verify::random_extension(&mut rng, &t, target)?;
            let batch = verify::extension_checks(&mut rng, &ext, n, MAX_WORD_LEN)?;
            if merged.is_empty() {
                merged = batch;
            } else {
                for (m, b) in merged.iter_mut().zip(batch) {
                    m.merge(b);
                }
            }
        }
        checks.extend(merged);
    }
    report.set("seed", json!(opts.seed));
    report.set("samples", json!(n));
    report.set("index", json!(rep.index()?));
    report.checks("checks", &checks);
    Ok(())
}
