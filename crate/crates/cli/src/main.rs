use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use condorcet_core::bruhat::{cover_diff_report, enumerate_bruhat, resume_bruhat, BruhatError, Checkpoint};
use condorcet_core::config::{Config, OutputFormat};
use condorcet_core::decompose::{fubini_majority, split_class};
use condorcet_core::families::{
    check_conjecture, family_word, predicted_majority, verify_family, FamilySpec, ShakerVariant,
};
use condorcet_core::folding::{check_folding, find_folding_symmetry, majority_from_fold, FoldingSymmetry};
use condorcet_core::heap::{build_heap, is_condorcet_domain, LabelMode};
use condorcet_core::majority::{brute_force_majority, majority_of_heap, prelinear_from_uv, PrelinearOrder};
use condorcet_core::perm::pair_label;
use condorcet_core::{Execution, HeapPoset, Permutation, ReducedWord, VoteTally};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "condorcet",
    version,
    about = "Majority relations of Condorcet domains of tiling type"
)]
struct Cli {
    /// Worker threads (1 runs everything sequentially).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest rank accepted; overrides CONDORCET_MAX_N.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct WordArgs {
    /// Reduced word as comma-separated letters, e.g. 2,1,3,2,6,5.
    #[arg(long)]
    word: String,
    /// Rank of the ambient symmetric group; defaults to 1 + max letter.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation of a word, or a reduced word of a permutation.
    Perm {
        #[arg(long, conflicts_with = "perm")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// One-line notation, e.g. 3142576.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Heap poset of the word's commutation class.
    Heap {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// position, letter or inversion.
        #[arg(long, default_value = "inversion")]
        label: String,
    },
    /// Prefix permutations of the class.
    Domain {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        json: bool,
    },
    /// Majority relation of the domain under a tally.
    Majority {
        #[command(flatten)]
        word: WordArgs,
        /// JSON object mapping one-line permutations to counts.
        #[arg(long)]
        tally: Option<PathBuf>,
        /// Also run the brute-force majority and report its relation.
        #[arg(long)]
        oracle: bool,
        /// Compare fast path and oracle on this many random positive tallies.
        #[arg(long)]
        random_tallies: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Search for a horizontal folding symmetry, or check a given one.
    Fold {
        #[command(flatten)]
        word: WordArgs,
        /// JSON {"phi", "below", "fold"} with 1-based positions.
        #[arg(long)]
        certify: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Word and closed-form majority relation of a named family.
    Family {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// For bipartite_power: c^p c_odd instead of c^p.
        #[arg(long)]
        trailing_odd: bool,
        #[arg(long, default_value = "forward")]
        variant: String,
        /// For singleton_word.
        #[arg(long)]
        letters: Option<String>,
        /// Compute the relation and compare with the closed form.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Majority relation of c^p against the conjectured total order.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_p: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Direct-sum blocks and the assembled relation.
    Decompose {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        json: bool,
    },
    /// Higher Bruhat order B(n,2) labeled by majority relations.
    Bruhat {
        #[arg(long, required_unless_present = "resume")]
        n: Option<usize>,
        /// Node budget; defaults to the configured bound.
        #[arg(long)]
        budget: Option<usize>,
        /// Where to write a checkpoint when the budget runs out.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
        /// One cover-diff record per line.
        #[arg(long)]
        jsonl: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    SingletonWord,
    CocktailShaker,
    LexFirst,
    BipartitePower,
    Diamond,
}

enum CliError {
    Usage(String),
    Domain { code: String, message: String },
}

fn usage(msg: impl Display) -> CliError {
    CliError::Usage(msg.to_string())
}

macro_rules! domain_code {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { code: e.code().to_string(), message: e.to_string() }
            }
        }
    )*};
}

domain_code!(
    condorcet_core::perm::PermError,
    condorcet_core::heap::HeapError,
    condorcet_core::majority::MajorityError,
    condorcet_core::folding::FoldError,
    condorcet_core::families::FamilyError,
    BruhatError
);

fn domain_err(code: &str, message: impl Display) -> CliError {
    CliError::Domain {
        code: code.to_string(),
        message: message.to_string(),
    }
}

struct Ctx {
    config: Config,
    seed: u64,
}

impl Ctx {
    fn exec(&self) -> Execution {
        self.config.execution()
    }

    fn format(&self, json: bool, dot: bool) -> OutputFormat {
        if json {
            OutputFormat::Json
        } else if dot {
            OutputFormat::Dot
        } else {
            self.config.format
        }
    }

    fn check_rank(&self, n: usize) -> Result<(), CliError> {
        if n > self.config.max_n {
            return Err(domain_err(
                "RankTooLarge",
                format!("rank {n} exceeds max_n {}", self.config.max_n),
            ));
        }
        Ok(())
    }

    fn word(&self, args: &WordArgs) -> Result<ReducedWord, CliError> {
        let word = parse_word(&args.word, args.n)?;
        self.check_rank(word.n())?;
        Ok(word)
    }
}

fn parse_word(text: &str, n: Option<usize>) -> Result<ReducedWord, CliError> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let letters: Vec<usize> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("cannot parse letter `{}`", t.trim())))
            })
            .collect::<Result<_, _>>()?
    };
    match n {
        Some(n) => ReducedWord::new(n, &letters),
        None => ReducedWord::infer(&letters),
    }
    .map_err(|e| usage(format!("invalid word {text}: {e}")))
}

fn emit_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn inversion_names(heap: &HeapPoset, mask: u128) -> String {
    let names: Vec<String> = (0..heap.len())
        .filter(|&x| mask >> x & 1 == 1)
        .map(|x| {
            let (a, b) = heap.inversion(x);
            pair_label(a, b)
        })
        .collect();
    if names.is_empty() {
        "none".into()
    } else {
        names.join(" ")
    }
}

fn perm_cmd(
    ctx: &Ctx,
    word: Option<String>,
    n: Option<usize>,
    perm: Option<String>,
    json: bool,
) -> Result<String, CliError> {
    let word = match (word, perm) {
        (Some(w), _) => parse_word(&w, n)?,
        (None, Some(p)) => {
            let w: Permutation = p.parse().map_err(|e| usage(format!("invalid permutation {p}: {e}")))?;
            w.reduced_word()
        }
        (None, None) => return Err(usage("give --word or --perm")),
    };
    ctx.check_rank(word.n())?;
    let w = word.permutation();
    let inversions: Vec<String> = w
        .inversion_set()
        .pairs()
        .into_iter()
        .map(|(a, b)| pair_label(a, b))
        .collect();
    if ctx.format(json, false) == OutputFormat::Json {
        return Ok(emit_json(&json!({
            "word": word.to_string(),
            "permutation": w.to_string(),
            "length": w.length(),
            "inversions": inversions,
        })));
    }
    Ok(format!(
        "word {word}\npermutation {w}\nlength {}\ninversions {}",
        w.length(),
        if inversions.is_empty() {
            "none".into()
        } else {
            inversions.join(" ")
        }
    ))
}

fn heap_cmd(ctx: &Ctx, args: &WordArgs, dot: bool, json: bool, label: &str) -> Result<String, CliError> {
    let heap = build_heap(&ctx.word(args)?);
    let mode: LabelMode = label.parse().map_err(usage)?;
    match ctx.format(json, dot) {
        OutputFormat::Dot => Ok(heap.to_dot(mode).trim_end().to_string()),
        OutputFormat::Json => Ok(emit_json(&heap.to_json())),
        OutputFormat::Text => {
            let mut lines = Vec::new();
            for x in 0..heap.len() {
                let (a, b) = heap.inversion(x);
                let above: Vec<String> = heap
                    .covers()
                    .iter()
                    .filter(|&&(lo, _)| lo == x)
                    .map(|&(_, hi)| format!("p{}", hi + 1))
                    .collect();
                lines.push(format!(
                    "p{} s{} {} < {}",
                    x + 1,
                    heap.letter(x),
                    pair_label(a, b),
                    if above.is_empty() { "-".into() } else { above.join(" ") }
                ));
            }
            lines.push(format!("ideals {}", heap.ideal_count()?));
            Ok(lines.join("\n"))
        }
    }
}

fn domain_cmd(ctx: &Ctx, args: &WordArgs, json: bool) -> Result<String, CliError> {
    let heap = build_heap(&ctx.word(args)?);
    let domain = heap.domain();
    let condorcet = is_condorcet_domain(&domain);
    let perms: Vec<String> = domain.iter().map(Permutation::to_string).collect();
    if ctx.format(json, false) == OutputFormat::Json {
        return Ok(emit_json(&json!({
            "domain": perms,
            "size": domain.len().to_string(),
            "condorcet": condorcet,
        })));
    }
    Ok(format!(
        "{}\nsize {}\ncondorcet {}",
        perms.join("\n"),
        domain.len(),
        if condorcet { "yes" } else { "no" }
    ))
}

fn majority_cmd(
    ctx: &Ctx,
    args: &WordArgs,
    tally: Option<PathBuf>,
    oracle: bool,
    random_tallies: Option<usize>,
    json: bool,
) -> Result<String, CliError> {
    let word = ctx.word(args)?;
    let heap = build_heap(&word);
    let json = ctx.format(json, false) == OutputFormat::Json;
    if let Some(count) = random_tallies {
        return random_tally_sweep(ctx, &heap, count, json);
    }
    let rho = match &tally {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            Some(VoteTally::from_json(word.n(), &text)?)
        }
        None => None,
    };
    let oracle_order = if oracle {
        let rho = match &rho {
            Some(rho) => rho.clone(),
            None => VoteTally::uniform(word.n(), &heap.domain())?,
        };
        let relation = brute_force_majority(&rho)?;
        let order = PrelinearOrder::from_relation(&relation)
            .ok_or_else(|| domain_err("NotPrelinear", format!("oracle relation {relation:?} is not prelinear")))?;
        Some(order)
    } else {
        None
    };
    let outcome = match majority_of_heap(&heap, rho.as_ref(), ctx.exec()) {
        Ok(out) => Some(out),
        // the oracle still answers when the tally's support is not the domain
        Err(e) if oracle_order.is_some() && e.code() == "SupportMismatch" => None,
        Err(e) => return Err(e.into()),
    };
    if let (Some(out), Some(order)) = (&outcome, &oracle_order) {
        if out.order != *order {
            return Err(domain_err(
                "OracleMismatch",
                format!("fast path {} but oracle {order}", out.order),
            ));
        }
    }
    let Some(out) = outcome else {
        let order = oracle_order.expect("oracle ran");
        return Ok(if json {
            emit_json(&json!({"blocks": order.to_string(), "oracle": order.to_string(), "fast_path": "refused"}))
        } else {
            format!("{order}\n(oracle only: tally support differs from the domain)")
        });
    };
    if !json {
        return Ok(out.order.to_string());
    }
    let tally_values: serde_json::Map<String, Value> = out
        .tally
        .by_inversion(&heap)
        .into_iter()
        .map(|((a, b), v)| (pair_label(a, b), Value::String(v.to_string())))
        .collect();
    let mut doc = json!({
        "u": out.u.to_string(),
        "v": out.v.to_string(),
        "blocks": out.order.to_string(),
        "tally": tally_values,
        "total": out.total.to_string(),
    });
    if let Some(order) = oracle_order {
        doc["oracle"] = Value::String(order.to_string());
    }
    Ok(emit_json(&doc))
}

fn random_tally_sweep(ctx: &Ctx, heap: &HeapPoset, count: usize, json: bool) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let domain = heap.domain();
    for i in 0..count {
        let mut rho = VoteTally::new(heap.n());
        for w in &domain {
            rho.set(w.clone(), rng.gen_range(1..=1000u128))?;
        }
        let fast = majority_of_heap(heap, Some(&rho), ctx.exec())?;
        if brute_force_majority(&rho)? != fast.order.to_relation() {
            return Err(domain_err(
                "OracleMismatch",
                format!("random tally {i} (seed {}) disagrees", ctx.seed),
            ));
        }
    }
    Ok(if json {
        emit_json(&json!({"tallies": count, "seed": ctx.seed.to_string(), "agree": true}))
    } else {
        format!(
            "{count} random tallies (seed {}): fast path agrees with the oracle",
            ctx.seed
        )
    })
}

fn fold_text(heap: &HeapPoset, fold: &FoldingSymmetry, u: &Permutation, v: &Permutation) -> Result<String, CliError> {
    let order = prelinear_from_uv(u, v)?;
    Ok(format!(
        "phi {}\nI {}\nA {}\nu {u}\nv {v}\nrelation {order}",
        fold.describe(heap),
        inversion_names(heap, fold.below().bits()),
        inversion_names(heap, fold.fold()),
    ))
}

fn fold_json(fold: &FoldingSymmetry, u: &Permutation, v: &Permutation) -> Result<Value, CliError> {
    Ok(json!({
        "fold": fold.to_json(),
        "u": u.to_string(),
        "v": v.to_string(),
        "blocks": prelinear_from_uv(u, v)?.to_string(),
    }))
}

fn fold_cmd(ctx: &Ctx, args: &WordArgs, certify: Option<PathBuf>, json: bool) -> Result<String, CliError> {
    let heap = build_heap(&ctx.word(args)?);
    let json = ctx.format(json, false) == OutputFormat::Json;
    let fold = match certify {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let fold = FoldingSymmetry::from_json(heap.len(), &value)?;
            if !check_folding(&heap, &fold) {
                return Err(domain_err(
                    "InvalidFold",
                    "the given map and ideal do not form a folding symmetry",
                ));
            }
            fold
        }
        None => match find_folding_symmetry(&heap, ctx.config.fold_search_bound)? {
            Some(fold) => fold,
            None => {
                return Ok(if json {
                    emit_json(&json!({"fold": Value::Null}))
                } else {
                    "no folding symmetry".into()
                })
            }
        },
    };
    let (u, v) = majority_from_fold(&heap, &fold)?;
    if json {
        Ok(emit_json(&fold_json(&fold, &u, &v)?))
    } else {
        fold_text(&heap, &fold, &u, &v)
    }
}

#[allow(clippy::too_many_arguments)]
fn family_spec(
    kind: Kind,
    n: Option<usize>,
    p: Option<usize>,
    k: Option<usize>,
    trailing_odd: bool,
    variant: &str,
    letters: Option<String>,
) -> Result<FamilySpec, CliError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("this family needs --{flag}")));
    Ok(match kind {
        Kind::SingletonWord => {
            let word = parse_word(&letters.ok_or_else(|| usage("singleton_word needs --letters"))?, n)?;
            FamilySpec::SingletonWord {
                n: word.n(),
                letters: word.to_vec(),
            }
        }
        Kind::CocktailShaker => FamilySpec::CocktailShaker {
            n: need(n, "n")?,
            variant: variant.parse::<ShakerVariant>().map_err(usage)?,
        },
        Kind::LexFirst => FamilySpec::LexFirst { n: need(n, "n")? },
        Kind::BipartitePower => FamilySpec::BipartitePower {
            n: need(n, "n")?,
            p: need(p, "p")?,
            trailing_odd,
        },
        Kind::Diamond => FamilySpec::Diamond { k: need(k, "k")? },
    })
}

fn family_cmd(ctx: &Ctx, spec: FamilySpec, verify: bool, json: bool) -> Result<String, CliError> {
    ctx.check_rank(spec.n())?;
    let json = ctx.format(json, false) == OutputFormat::Json;
    if verify {
        let report = verify_family(&spec, ctx.exec())?;
        if json {
            return Ok(emit_json(&report.to_json()));
        }
        let fold = match report.fold_agrees {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "none stated",
        };
        return Ok(format!(
            "{spec}\nword {}\npredicted {}\ncomputed {}\nmatch {}\nfold {fold}",
            report.word,
            report.predicted,
            report.computed,
            if report.matches { "yes" } else { "NO" },
        ));
    }
    let word = family_word(&spec)?;
    let predicted = predicted_majority(&spec, true)?;
    Ok(if json {
        emit_json(&json!({"spec": spec.to_json(), "word": word.to_string(), "predicted": predicted.to_string()}))
    } else {
        format!("{spec}\nword {word}\npredicted {predicted}")
    })
}

fn conjecture_cmd(ctx: &Ctx, n: usize, max_p: Option<usize>, json: bool) -> Result<String, CliError> {
    ctx.check_rank(n)?;
    let max_p = max_p.unwrap_or(n / 2).min(n / 2);
    let mut reports = Vec::new();
    for p in 1..=max_p {
        reports.push(check_conjecture(n, p, ctx.config.fold_search_bound, ctx.exec())?);
    }
    if let Some(bad) = reports.iter().find(|r| r.oracle_agrees == Some(false)) {
        return Err(domain_err(
            "OracleMismatch",
            format!("n={} p={}: oracle disagrees", bad.n, bad.p),
        ));
    }
    if ctx.format(json, false) == OutputFormat::Json {
        return Ok(emit_json(&Value::Array(reports.iter().map(|r| r.to_json()).collect())));
    }
    let lines: Vec<String> = reports
        .iter()
        .map(|r| {
            let oracle = match r.oracle_agrees {
                Some(true) => "agrees",
                Some(false) => "disagrees",
                None => "skipped",
            };
            format!(
                "n={} p={}: computed {} | conjectured {} | holds {} | oracle {oracle} | fold {}",
                r.n,
                r.p,
                r.computed,
                r.conjectured_u,
                if r.holds { "yes" } else { "no" },
                serde_json::to_value(r.fold)
                    .expect("status serializes")
                    .as_str()
                    .unwrap_or("?"),
            )
        })
        .collect();
    Ok(lines.join("\n"))
}

fn decompose_cmd(ctx: &Ctx, args: &WordArgs, json: bool) -> Result<String, CliError> {
    let dec = split_class(&ctx.word(args)?)?;
    let out = fubini_majority(&dec, ctx.exec())?;
    if ctx.format(json, false) == OutputFormat::Json {
        let blocks: Vec<Value> = dec
            .blocks
            .iter()
            .zip(&out.per_block)
            .map(|(b, m)| {
                json!({
                    "offset": b.offset,
                    "n": b.size(),
                    "word": b.word.to_string(),
                    "u": m.u.to_string(),
                    "v": m.v.to_string(),
                })
            })
            .collect();
        return Ok(emit_json(&json!({
            "blocks": blocks,
            "u": out.u.to_string(),
            "v": out.v.to_string(),
            "relation": out.order.to_string(),
            "total": out.total.to_string(),
        })));
    }
    let mut lines: Vec<String> = dec
        .blocks
        .iter()
        .zip(&out.per_block)
        .map(|(b, m)| {
            format!(
                "block {}..{} {}: u {} v {}",
                b.offset + 1,
                b.offset + b.size(),
                b.word,
                m.u,
                m.v
            )
        })
        .collect();
    lines.push(format!("u {}\nv {}\nrelation {}", out.u, out.v, out.order));
    Ok(lines.join("\n"))
}

#[allow(clippy::too_many_arguments)]
fn bruhat_cmd(
    ctx: &Ctx,
    n: Option<usize>,
    budget: Option<usize>,
    checkpoint: Option<PathBuf>,
    resume: Option<PathBuf>,
    dot: bool,
    jsonl: bool,
    json: bool,
) -> Result<String, CliError> {
    let limit = budget.unwrap_or(ctx.config.bruhat_node_budget);
    if limit == 0 {
        return Err(usage("--budget must be positive"));
    }
    let result = match resume {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let cp = Checkpoint::from_json(&text)?;
            ctx.check_rank(cp.n)?;
            resume_bruhat(&cp, limit, ctx.exec())
        }
        None => {
            let n = n.expect("clap requires --n without --resume");
            ctx.check_rank(n)?;
            enumerate_bruhat(n, limit, ctx.exec())
        }
    };
    let poset = match result {
        Ok(poset) => poset,
        Err(BruhatError::BudgetExceeded {
            limit,
            discovered,
            checkpoint: cp,
        }) => {
            let mut message = format!("node budget of {limit} exceeded after discovering {discovered} classes");
            if let Some(path) = checkpoint {
                fs::write(&path, cp.to_json()).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                message.push_str(&format!("; checkpoint written to {}", path.display()));
            }
            return Err(domain_err("BudgetExceeded", message));
        }
        Err(e) => return Err(e.into()),
    };
    if jsonl {
        let lines: Vec<String> = cover_diff_report(&poset)
            .iter()
            .map(|d| serde_json::to_string(&d.to_json()).expect("JSON values serialize"))
            .collect();
        return Ok(lines.join("\n"));
    }
    match ctx.format(json, dot) {
        OutputFormat::Dot => Ok(poset.to_dot().trim_end().to_string()),
        OutputFormat::Json => Ok(emit_json(&poset.to_json())),
        OutputFormat::Text => {
            let mut lines = vec![format!(
                "B({},2): {} classes, {} covers",
                poset.n,
                poset.nodes.len(),
                poset.edges.len()
            )];
            for node in &poset.nodes {
                lines.push(format!(
                    "{} [{}] {}",
                    node.id,
                    node.triples.label(poset.n),
                    node.majority
                ));
            }
            Ok(lines.join("\n"))
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut config = Config::from_env().map_err(usage)?;
    if let Some(max_n) = cli.max_n {
        config.max_n = max_n;
    }
    config.ideal_stream_workers = cli.workers;
    config.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
        Format::Dot => OutputFormat::Dot,
    };
    config.validate().map_err(usage)?;
    #[cfg(feature = "parallel")]
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| usage(format!("cannot start {workers} workers: {e}")))?;
    }
    let ctx = Ctx { config, seed: cli.seed };
    match cli.command {
        Command::Perm { word, n, perm, json } => perm_cmd(&ctx, word, n, perm, json),
        Command::Heap { word, dot, json, label } => heap_cmd(&ctx, &word, dot, json, &label),
        Command::Domain { word, json } => domain_cmd(&ctx, &word, json),
        Command::Majority {
            word,
            tally,
            oracle,
            random_tallies,
            json,
        } => majority_cmd(&ctx, &word, tally, oracle, random_tallies, json),
        Command::Fold { word, certify, json } => fold_cmd(&ctx, &word, certify, json),
        Command::Family {
            kind,
            n,
            p,
            k,
            trailing_odd,
            variant,
            letters,
            verify,
            json,
        } => family_cmd(
            &ctx,
            family_spec(kind, n, p, k, trailing_odd, &variant, letters)?,
            verify,
            json,
        ),
        Command::Conjecture { n, max_p, json } => conjecture_cmd(&ctx, n, max_p, json),
        Command::Decompose { word, json } => decompose_cmd(&ctx, &word, json),
        Command::Bruhat {
            n,
            budget,
            checkpoint,
            resume,
            dot,
            jsonl,
            json,
        } => bruhat_cmd(&ctx, n, budget, checkpoint, resume, dot, jsonl, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // a closed pipe downstream is not an error here
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(message)) => {
            eprintln!("{}", json!({"code": "UsageError", "message": message}));
            ExitCode::from(2)
        }
        Err(CliError::Domain { code, message }) => {
            eprintln!("{}", json!({"code": code, "message": message}));
            ExitCode::from(1)
        }
    }
}
