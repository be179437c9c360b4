use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quandle::abelian::adtak;
use quandle::inner::{
    coset_quandle, ehrman_decompose, ehrman_roundtrip, enumerate_connected, enumerate_quandles, CosetQuandleSpec,
    DEFAULT_ENUMERATION_BOUND,
};
use quandle::io::{
    build_tower, load_group, load_quandle, parse_tower_descriptor, to_qnd, QuandleJson, TowerDescriptor,
};
use quandle::permgroup::DEFAULT_ORDER_BOUND;
use quandle::quandle::DEFAULT_SUBSET_BOUND;
use quandle::suite::{run_suite, SuiteConfig, BLOCKS};
use quandle::tower::{counterexample_probe, inn_tower, levelwise_action_check, ProbeReport, QuandleTower};
use quandle::{Error, FiniteQuandle, PermGroup, Permutation};

#[derive(Parser)]
#[command(name = "quandle", version, about = "Finite and profinite quandle workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest permutation group that is enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms.
    Validate { file: String },
    /// Size, kei, orbits and inner group order.
    Info { file: String },
    /// The inner automorphism group.
    Inner {
        file: String,
        #[arg(long)]
        aut: bool,
    },
    /// Is there a single orbit under the inner group?
    Connected { file: String },
    /// Every subquandle, the empty one included.
    Subquandles {
        file: String,
        #[arg(long)]
        complements: bool,
    },
    /// Decompose a connected quandle as a coset quandle and rebuild it.
    Ehrman {
        file: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Build the quandle on `H\G` with `Hg ◁ Hk = H g k⁻¹ h k`.
    CosetQuandle {
        #[arg(long)]
        group: String,
        /// Generators of `H`, separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
        #[arg(long)]
        h: String,
    },
    /// All quandles of one order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Work with a tower descriptor.
    Tower {
        descriptor: String,
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Counterexample probes.
    Probe {
        #[command(subcommand)]
        which: ProbeKind,
    },
    /// The abelian group AdTak of a kei.
    Adtak {
        file: String,
        /// Compute the quotient even if the input is not a kei.
        #[arg(long)]
        allow_non_kei: bool,
    },
    /// Run the proposition battery.
    PaperSuite {
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum TowerAction {
    /// Validate the tower and its slim basis.
    Check,
    /// List the coherent tuples, lowest level first.
    Elements,
    /// Is the subset with these elements dense to the truncation depth?
    Density {
        /// Elements as comma-separated coordinates, lowest level first.
        #[arg(long, num_args = 0..)]
        seeds: Vec<String>,
    },
    /// The tower of inner groups.
    Inn,
    /// The 2-cycle counterexample probe on an `m_product` tower.
    Probe,
}

#[derive(Subcommand)]
enum ProbeKind {
    /// The product of 2-cycle quandles.
    Counterexample {
        #[arg(long)]
        depth: usize,
    },
}

/// A failed check, reported with its witness on exit code 1.
struct Failed;

type Run = Result<Result<(), Failed>, Error>;

struct Out {
    format: Format,
}

impl Out {
    fn human(&self, s: impl AsRef<str>) {
        if self.format == Format::Human {
            println!("{}", s.as_ref());
        }
    }

    fn structured(&self, v: Value) {
        if self.format == Format::Structured {
            println!("{v}");
        }
    }
}

fn verdict(ok: bool) -> Result<(), Failed> {
    if ok {
        Ok(())
    } else {
        Err(Failed)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(out: &Out, file: &str) -> Run {
    match load_quandle(file) {
        Ok(q) => {
            out.human(format!("quandle: {} elements, axioms OK", q.len()));
            out.structured(json!({"valid": true, "size": q.len()}));
            Ok(Ok(()))
        }
        Err(Error::AxiomViolation { axiom, witness }) => {
            out.human(format!("quandle: axiom {axiom} fails at {witness:?}"));
            out.structured(json!({"valid": false, "axiom": axiom, "witness": witness}));
            Ok(Err(Failed))
        }
        Err(e) => Err(e),
    }
}

fn info(out: &Out, g: &Global, file: &str) -> Run {
    let q = load_quandle(file)?;
    let orbits = q.inn_orbits();
    let inn = q.inn(g.bound)?;
    out.human(format!("size: {}", q.len()));
    out.human(format!("kei: {}", yes(q.is_kei())));
    out.human(format!("connected: {}", yes(q.is_connected())));
    out.human(format!("orbits: {orbits:?}"));
    out.human(format!("|Inn| = {}", inn.order()));
    out.human(format!("{q}"));
    out.structured(json!({
        "size": q.len(),
        "kei": q.is_kei(),
        "connected": q.is_connected(),
        "orbits": orbits,
        "inn_order": inn.order(),
        "op": q.table(),
    }));
    Ok(Ok(()))
}

fn generators(g: &PermGroup) -> Vec<String> {
    g.reduced_generators().iter().map(ToString::to_string).collect()
}

fn inner(out: &Out, g: &Global, file: &str, aut: bool) -> Run {
    let q = load_quandle(file)?;
    let inn = q.inn(g.bound)?;
    let transitive = inn.is_transitive();
    out.human(format!("|Inn| = {}, {}", inn.order(), if transitive { "transitive" } else { "not transitive" }));
    out.human(format!("orbits: {:?}", inn.orbits()));
    out.human(format!("generators: {}", generators(&inn).join(" ")));
    let mut v = json!({
        "inn_order": inn.order(),
        "transitive": transitive,
        "orbits": inn.orbits(),
        "generators": generators(&inn),
    });
    if aut {
        let a = q.aut()?;
        out.human(format!("|Aut| = {}", a.order()));
        out.human(format!("Inn is normal in Aut: {}", yes(a.is_normal_subgroup(&inn))));
        v["aut_order"] = json!(a.order());
        v["inn_normal"] = json!(a.is_normal_subgroup(&inn));
    }
    out.structured(v);
    Ok(Ok(()))
}

fn connected(out: &Out, file: &str) -> Run {
    let q = load_quandle(file)?;
    let orbits = q.inn_orbits();
    let connected = q.is_connected();
    out.human(format!("connected: {}, orbit count {}", yes(connected), orbits.len()));
    out.structured(json!({"connected": connected, "orbits": orbits}));
    Ok(verdict(connected))
}

fn subquandles(out: &Out, file: &str, complements: bool) -> Run {
    let q = load_quandle(file)?;
    let subs = q.all_subquandles(DEFAULT_SUBSET_BOUND)?;
    out.human(format!("{} subquandles", subs.len()));
    let mut all_complemented = true;
    for s in &subs {
        let mut v = json!({"elements": s.elements()});
        let mut line = format!("{:?}", s.elements());
        if complements {
            match q.find_complement(s, DEFAULT_SUBSET_BOUND)? {
                Some(c) => {
                    line.push_str(&format!("  complement {:?}", c.elements()));
                    v["complement"] = json!(c.elements());
                }
                None => {
                    all_complemented = false;
                    line.push_str("  no complement");
                    v["complement"] = Value::Null;
                }
            }
        }
        out.human(line);
        out.structured(v);
    }
    Ok(verdict(all_complemented))
}

fn ehrman(out: &Out, g: &Global, file: &str, base: usize) -> Run {
    let q = load_quandle(file)?;
    let d = ehrman_decompose(&q, base, g.bound)?;
    let roundtrip = ehrman_roundtrip(&q, base, g.bound)?;
    let h_central = d.stabilizer.contains(&d.h) && d.stabilizer.centralizes(&d.h);
    out.human(format!("base point: {base}"));
    out.human(format!(
        "|G| = {}, |H| = {}, index {}",
        d.group.order(),
        d.stabilizer.order(),
        d.group.order() / d.stabilizer.order()
    ));
    out.human(format!("h = {}, central in H: {}", d.h, yes(h_central)));
    for (i, (r, a)) in d.reps.iter().zip(&d.aug).enumerate() {
        out.human(format!("coset {i}: rep {r}, point {}, |Hg| = {a}", d.point_of_coset[i]));
    }
    out.human(format!("coset quandle isomorphic to input: {}", yes(roundtrip)));
    out.structured(json!({
        "base": base,
        "group_order": d.group.order(),
        "stabilizer_order": d.stabilizer.order(),
        "h": d.h.to_string(),
        "h_central": h_central,
        "reps": d.reps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "augmentations": d.aug.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "point_of_coset": d.point_of_coset,
        "roundtrip": roundtrip,
    }));
    Ok(verdict(roundtrip && h_central))
}

fn coset(out: &Out, g: &Global, group: &str, subgroup: &str, h: &str) -> Run {
    let input = load_group(group, g.bound)?;
    let gens: Vec<Permutation> = subgroup
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| input.element(s))
        .collect::<Result<_, _>>()?;
    let sub = input.group.subgroup(&gens)?;
    let h = input.element(h)?;
    let spec = match CosetQuandleSpec::new(input.group.clone(), sub, h) {
        Ok(s) => s,
        Err(Error::InvalidSpec(m)) => {
            out.human(format!("invalid spec: {m}"));
            out.structured(json!({"valid": false, "reason": m}));
            return Ok(Err(Failed));
        }
        Err(e) => return Err(e),
    };
    let built = coset_quandle(&spec)?;
    out.human(format!("# {} cosets of a subgroup of order {}", built.quandle.len(), spec.subgroup().order()));
    out.human(to_qnd(&built.quandle).trim_end());
    out.structured(serde_json::to_value(QuandleJson::from_quandle(&built.quandle)).expect("plain data"));
    Ok(Ok(()))
}

fn enumerate(out: &Out, order: usize, connected: bool) -> Run {
    let qs = if connected {
        enumerate_connected(order, true, DEFAULT_ENUMERATION_BOUND)?
    } else {
        enumerate_quandles(order, true, DEFAULT_ENUMERATION_BOUND)?
    };
    let kind = if connected { "connected quandles" } else { "quandles" };
    out.human(format!("{} {kind} of order {order} up to isomorphism", qs.len()));
    out.structured(json!({"order": order, "connected": connected, "count": qs.len()}));
    for q in &qs {
        out.human(format!("\n{}", to_qnd(q).trim_end()));
        out.structured(serde_json::to_value(QuandleJson::from_quandle(q)).expect("plain data"));
    }
    Ok(Ok(()))
}

fn load_tower(path: &str, bound: usize) -> Result<(TowerDescriptor, QuandleTower), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let d = parse_tower_descriptor(&text)?;
    let base = Path::new(path).parent().unwrap_or(Path::new("."));
    let t = build_tower(&d, base, bound)?;
    Ok((d, t))
}

fn parse_coords(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|c| c.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {s:?}"))))
        .collect()
}

fn tower(out: &Out, g: &Global, path: &str, action: &TowerAction) -> Run {
    let (descriptor, t) = load_tower(path, g.bound)?;
    let sizes: Vec<usize> = t.levels().iter().map(FiniteQuandle::len).collect();
    match action {
        TowerAction::Check => {
            let slim = t.slim_basis_check();
            let connected = t.levelwise_connected();
            out.human(format!("tower: depth {}, level sizes {sizes:?}, transitions onto homomorphisms", t.depth()));
            out.human(format!("levelwise connected: {}", yes(connected)));
            match &slim {
                Ok(()) => out.human("slim basis: OK"),
                Err(e) => out.human(format!("slim basis: {e}")),
            }
            out.structured(json!({
                "depth": t.depth(),
                "sizes": sizes,
                "levelwise_connected": connected,
                "slim_basis": slim.as_ref().map_or_else(|e| Value::String(e.to_string()), |()| Value::Bool(true)),
            }));
            Ok(verdict(slim.is_ok()))
        }
        TowerAction::Elements => {
            let all = t.all_elements();
            out.human(format!("{} elements at depth {}", all.len(), t.depth()));
            for e in &all {
                out.human(format!("{:?}", e.coords()));
                out.structured(json!(e.coords()));
            }
            Ok(Ok(()))
        }
        TowerAction::Density { seeds } => {
            let coords = seeds.iter().map(|s| parse_coords(s)).collect::<Result<Vec<_>, _>>()?;
            let set = coords.into_iter().map(|c| t.element(c)).collect::<Result<Vec<_>, _>>()?;
            let report = t.density_check(&set)?;
            for l in &report.levels {
                out.human(format!(
                    "level {}: closure {} of {}{}",
                    l.level,
                    l.image.len(),
                    l.size,
                    if l.full { ", full" } else { "" }
                ));
            }
            out.human(format!("dense to depth {}: {}", t.depth(), yes(report.dense)));
            out.structured(serde_json::to_value(&report).expect("plain data"));
            Ok(verdict(report.dense))
        }
        TowerAction::Inn => {
            let groups = inn_tower(&t, g.bound)?;
            let orders: Vec<usize> = groups.levels().iter().map(PermGroup::order).collect();
            let onto = groups.transitions().iter().all(|p| p.is_surjective());
            let action = levelwise_action_check(&t, &groups);
            out.human(format!("|Inn(Q_k)| = {orders:?}"));
            out.human(format!("transitions onto: {}", yes(onto)));
            match &action {
                Ok(()) => out.human("projections are equivariant: yes"),
                Err(e) => out.human(format!("projections are equivariant: no, {e}")),
            }
            out.structured(json!({
                "orders": orders,
                "surjective": onto,
                "equivariant": action.as_ref().map_or_else(|e| Value::String(e.to_string()), |()| Value::Bool(true)),
            }));
            Ok(verdict(onto && action.is_ok()))
        }
        TowerAction::Probe => match descriptor {
            TowerDescriptor::MProduct { depth } => probe(out, g, depth),
            _ => Err(Error::Parse("probe needs an m_product tower".into())),
        },
    }
}

fn probe_table(out: &Out, r: &ProbeReport) {
    out.human(format!(
        "{:<6} {:<24} {:>12} {:>22} {:>22} {:>6}",
        "level", "factors", "|Q|", "|Inn|", "same parity", "ℓ∈Inn"
    ));
    for l in &r.levels {
        let factors: Vec<String> = l.factors.iter().map(|n| format!("M{n}")).collect();
        out.human(format!(
            "{:<6} {:<24} {:>12} {:>22} {:>22} {:>6}",
            l.level,
            factors.join("x"),
            l.quandle_size,
            l.inn_order,
            l.same_parity_order,
            yes(l.ell_in_inn)
        ));
    }
    if let Some(top) = r.levels.last() {
        out.human(format!("top-level Inn order: {}", top.inn_order));
    }
    let mins: Vec<String> = r.min_transpositions.iter().map(ToString::to_string).collect();
    out.human(format!("min transpositions of ℓ: {}", mins.join(",")));
    out.human(format!("ℓ coherent: {}", yes(r.ell_coherent)));
    out.human(format!("new record at every even n: {}", yes(r.unbounded)));
}

fn probe(out: &Out, g: &Global, depth: usize) -> Run {
    let r = counterexample_probe(depth, g.bound)?;
    probe_table(out, &r);
    out.structured(serde_json::to_value(&r).expect("plain data"));
    Ok(verdict(r.passed))
}

fn adtak_cmd(out: &Out, file: &str, allow_non_kei: bool) -> Run {
    let q = load_quandle(file)?;
    match adtak(&q, !allow_non_kei) {
        Ok(a) => {
            out.human(format!("AdTak = {a}"));
            out.structured(serde_json::to_value(&a).expect("plain data"));
            Ok(Ok(()))
        }
        Err(Error::NotKei(x, y)) => {
            out.human(format!("not a kei: ({x} ◁ {y}) ◁ {y} != {x}"));
            out.structured(json!({"kei": false, "witness": [x, y]}));
            Ok(Err(Failed))
        }
        Err(e) => Err(e),
    }
}

fn paper_suite(out: &Out, g: &Global, only: Option<&str>) -> Run {
    if let Some(block) = only {
        if !BLOCKS.contains(&block) {
            return Err(Error::Parse(format!("unknown block {block:?}; expected one of {}", BLOCKS.join(", "))));
        }
    }
    let results = run_suite(&SuiteConfig { seed: g.seed, bound: g.bound }, only)?;
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        match &r.witness {
            None => out.human(format!("{status}  {:<24} {}", r.id, r.paper_ref)),
            Some(w) => out.human(format!("{status}  {:<24} {}\n      witness: {w}", r.id, r.paper_ref)),
        }
        if out.format == Format::Structured {
            println!("{}", r.to_json());
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    out.human(format!("{} checks, {failed} failed", results.len()));
    Ok(verdict(failed == 0))
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    let out = Out { format: g.format };
    match &cli.command {
        Command::Validate { file } => validate(&out, file),
        Command::Info { file } => info(&out, g, file),
        Command::Inner { file, aut } => inner(&out, g, file, *aut),
        Command::Connected { file } => connected(&out, file),
        Command::Subquandles { file, complements } => subquandles(&out, file, *complements),
        Command::Ehrman { file, base } => ehrman(&out, g, file, *base),
        Command::CosetQuandle { group, subgroup, h } => coset(&out, g, group, subgroup, h),
        Command::Enumerate { order, connected } => enumerate(&out, *order, *connected),
        Command::Tower { descriptor, action } => tower(&out, g, descriptor, action),
        Command::Probe { which: ProbeKind::Counterexample { depth } } => probe(&out, g, *depth),
        Command::Adtak { file, allow_non_kei } => adtak_cmd(&out, file, *allow_non_kei),
        Command::PaperSuite { only } => paper_suite(&out, g, only.as_deref()),
    }
}

/// Bad input and bad arguments are usage errors; anything else the
/// library rejects is a failed check.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_)
        | Error::Parse(_)
        | Error::Malformed(_)
        | Error::IndexOutOfRange(_)
        | Error::SizeBound { .. }
        | Error::NotPermutation(_)
        | Error::DegreeMismatch(..) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if cli.global.format == Format::Structured {
                println!("{}", json!({"error": e.to_string()}));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
