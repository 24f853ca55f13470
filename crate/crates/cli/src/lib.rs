//! Subcommand handlers for the `rankhull` binary.
//!
//! Every command emits one `CommandReport` as a single JSON line on stdout:
//! the echoed inputs, the operation outputs, and a list of named checks.
//! Identical arguments and seed produce byte-identical output. Exit codes:
//! 0 when every check passes, 1 when a mathematical check fails, 2 for
//! usage errors.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rankhull::codes::{inner_product, Flavor, RankCode, DEFAULT_ENUM_CAP};
use rankhull::construct::{
    find_scale_lambda, gabidulin_code, gram_of_scaled_form, hermitian_so_gabidulin,
    power_sums, scaled_self_dual_basis, verify_scaled_basis, GabidulinSpec,
    ScaledSelfDualBasis,
};
use rankhull::fields;
use rankhull::gf::{FieldElement, FieldTower, TowerExt};
use rankhull::hullvary::{mrd_with_hull, reduce_hull_once, vary_hull};
use rankhull::jsonio::{
    element_to_int, flavor_from_name, matrix_fq_to_ints, matrix_k_to_ints, CodeJson,
    FieldConfig, HullReportJson, SpectrumJson, TraceJson,
};
use rankhull::linalg::{MatrixFq, MatrixK};
use rankhull::oracle::{
    check_22_obstruction, euclidean_so_mrd_search, hull_spectrum, DEFAULT_GROUP_CAP,
};

#[derive(Parser)]
#[command(
    name = "rankhull",
    about = "Rank-metric codes: Gabidulin constructions, hulls, and hull variation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
}

/// Field selection: an explicit configuration file, or the (q, m) of one of
/// the shipped towers.
#[derive(Args)]
pub struct FieldArgs {
    /// Path to a field configuration JSON file.
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Subfield size q = p^e (shipped towers only).
    #[arg(long)]
    pub q: Option<u64>,
    /// Half extension degree m, so K = F_{q^(2m)} (shipped towers only).
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a field tower configuration.
    FieldCheck {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Construct a scaled trace-self-dual basis.
    Basis {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Construct a generalized Gabidulin code.
    Gabidulin {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        /// Evaluation basis as comma-separated canonical integers
        /// (defaults to the power basis).
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
    },
    /// Hull report for a code, cross-checked against the intersection oracle.
    Hull {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value = "hermitian")]
        flavor: String,
    },
    /// Find an equivalent code with the requested hull dimension.
    VaryHull {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value = "hermitian")]
        flavor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find an equivalent LCD code.
    Lcd {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value = "hermitian")]
        flavor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hermitian self-orthogonal MRD code from a scaled basis.
    SoMrd {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
    },
    /// MRD code with a prescribed Hermitian hull dimension.
    MrdWithHull {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
    },
    /// Exhaustive hull spectrum over GL_n(F_q).
    Spectrum {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value = "hermitian")]
        flavor: String,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        cap: u64,
    },
    /// Reproduce a worked computation and assert its golden values.
    Demo {
        /// One of: 5.1, 5.2, 5.3, remark-3.8.
        #[arg(long = "case")]
        case: String,
    },
}

#[derive(Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckItem {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<CheckItem>,
}

impl CommandReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Input-resolution problems: exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

type CliResult<T> = Result<T, UsageError>;

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn read_field_config(args: &FieldArgs) -> CliResult<(FieldConfig, Value)> {
    match (&args.field, args.q, args.m) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let config: FieldConfig = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid field config: {e}")))?;
            let echo = json!({"field": path.display().to_string()});
            Ok((config, echo))
        }
        (None, Some(q), Some(m)) => {
            let tower = fields::by_parameters(q, m).ok_or_else(|| {
                usage(format!(
                    "no shipped tower for q = {q}, m = {m}; supply --field <config.json>"
                ))
            })?;
            Ok((FieldConfig::of(&tower), json!({"q": q, "m": m})))
        }
        _ => Err(usage("supply either --field <path> or both --q and --m")),
    }
}

fn resolve_tower(args: &FieldArgs) -> CliResult<(Arc<FieldTower>, Value)> {
    let (config, echo) = read_field_config(args)?;
    let tower = config
        .build()
        .map_err(|e| usage(format!("field configuration rejected: {e}")))?;
    Ok((tower, echo))
}

fn read_code(path: &PathBuf) -> CliResult<(Arc<FieldTower>, RankCode)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let code_json: CodeJson =
        serde_json::from_str(&text).map_err(|e| usage(format!("invalid code JSON: {e}")))?;
    code_json
        .decode()
        .map_err(|e| usage(format!("code rejected: {e}")))
}

fn parse_flavor(name: &str) -> CliResult<Flavor> {
    flavor_from_name(name).map_err(|e| usage(e.to_string()))
}

fn code_output(code: &RankCode) -> Value {
    serde_json::to_value(CodeJson::of(code).expect("desk-scale encodings fit u64"))
        .expect("serializable")
}

fn basis_output(basis: &ScaledSelfDualBasis) -> Value {
    let alpha: Vec<u64> = basis
        .alpha
        .iter()
        .map(|a| element_to_int(a).expect("fits u64"))
        .collect();
    json!({
        "alpha": alpha,
        "lambda": element_to_int(&basis.lambda).expect("fits u64"),
    })
}

pub fn run(cli: &Cli) -> CliResult<CommandReport> {
    match &cli.command {
        Command::FieldCheck { field } => field_check(field),
        Command::Basis { field, seed } => basis_cmd(field, *seed),
        Command::Gabidulin {
            field,
            k,
            s,
            alpha,
            cap,
        } => gabidulin_cmd(field, *k, *s, alpha.as_deref(), *cap),
        Command::Hull { code, flavor } => hull_cmd(code, flavor),
        Command::VaryHull {
            code,
            target,
            flavor,
            seed,
        } => vary_hull_cmd(code, *target, flavor, *seed),
        Command::Lcd { code, flavor, seed } => lcd_cmd(code, flavor, *seed),
        Command::SoMrd {
            field,
            k,
            s,
            seed,
            cap,
        } => so_mrd_cmd(field, *k, *s, *seed, *cap),
        Command::MrdWithHull {
            field,
            k,
            ell,
            s,
            seed,
            cap,
        } => mrd_with_hull_cmd(field, *k, *ell, *s, *seed, *cap),
        Command::Spectrum { code, flavor, cap } => spectrum_cmd(code, flavor, *cap),
        Command::Demo { case } => demo(case),
    }
}

fn field_check(args: &FieldArgs) -> CliResult<CommandReport> {
    let (config, echo) = read_field_config(args)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match config.build() {
        Ok(tower) => {
            checks.push(CheckItem::new("tower-valid", true, "moduli irreducible"));
            let q = tower.q();
            checks.push(CheckItem::new(
                "q-consistent",
                q == config.p.pow(config.e),
                format!("q = {q}"),
            ));
            outputs = json!({
                "config": serde_json::to_value(&config).expect("serializable"),
                "q": q,
                "field_size": tower.field_size() as u64,
                "ext_degree": tower.ext_degree(),
            });
        }
        Err(e) => checks.push(CheckItem::new("tower-valid", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "field-check".into(),
        inputs: echo,
        outputs,
        checks,
    })
}

fn basis_cmd(args: &FieldArgs, seed: u64) -> CliResult<CommandReport> {
    let (tower, echo) = resolve_tower(args)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match scaled_self_dual_basis(&tower, seed) {
        Ok(basis) => {
            outputs = basis_output(&basis);
            checks.push(CheckItem::new(
                "scaled-identities",
                verify_scaled_basis(&basis),
                "Tr(lambda a_i a_j) = delta_ij",
            ));
            let sums = power_sums(&basis.alpha).expect("alpha is a basis");
            let s0_ok = (&basis.lambda * &sums.values[0]).is_one();
            let rest_ok = sums.values[1..].iter().all(|s| s.is_zero());
            checks.push(CheckItem::new(
                "power-sums",
                s0_ok && rest_ok,
                "S_0 lambda = 1 and S_r = 0 for r >= 1",
            ));
        }
        Err(e) => checks.push(CheckItem::new("basis-construction", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "basis".into(),
        inputs: merge(echo, json!({"seed": seed})),
        outputs,
        checks,
    })
}

fn parse_alpha(tower: &Arc<FieldTower>, text: &str) -> CliResult<Vec<FieldElement>> {
    text.split(',')
        .map(|part| {
            let n: u128 = part
                .trim()
                .parse()
                .map_err(|e| usage(format!("bad --alpha entry {part:?}: {e}")))?;
            tower
                .from_canonical(n)
                .map_err(|e| usage(format!("bad --alpha entry {part:?}: {e}")))
        })
        .collect()
}

fn gabidulin_cmd(
    args: &FieldArgs,
    k: usize,
    s: u64,
    alpha: Option<&str>,
    cap: u64,
) -> CliResult<CommandReport> {
    let (tower, echo) = resolve_tower(args)?;
    let alpha_elems = match alpha {
        Some(text) => parse_alpha(&tower, text)?,
        None => tower.power_basis(),
    };
    let inputs = merge(
        echo,
        json!({
            "k": k,
            "s": s,
            "alpha": alpha_elems
                .iter()
                .map(|a| element_to_int(a).expect("fits u64"))
                .collect::<Vec<_>>(),
        }),
    );
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match GabidulinSpec::new(alpha_elems, k, s) {
        Ok(spec) => {
            let code = gabidulin_code(&spec);
            outputs = code_output(&code);
            let predicted = tower.ext_degree() - k + 1;
            match code.min_rank_distance(cap) {
                Ok(d) => {
                    checks.push(CheckItem::new(
                        "min-distance",
                        d == predicted,
                        format!("d = {d}, bound = {predicted}"),
                    ));
                    checks.push(CheckItem::new("mrd", d == predicted, "meets the bound"));
                }
                Err(e) => checks.push(CheckItem::new("min-distance", false, e.to_string())),
            }
        }
        Err(e) => checks.push(CheckItem::new("spec-valid", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "gabidulin".into(),
        inputs,
        outputs,
        checks,
    })
}

fn hull_checks(code: &RankCode, flavor: Flavor, checks: &mut Vec<CheckItem>) -> Value {
    let report = code.hull(flavor);
    let oracle = code.hull_oracle(flavor).expect("same column counts");
    checks.push(CheckItem::new(
        "oracle-dimension",
        report.h == oracle.h,
        format!("nullity {} vs intersection {}", report.h, oracle.h),
    ));
    let same_space = if report.h == 0 {
        oracle.h == 0
    } else {
        let a = MatrixK::from_rows(code.tower(), report.hull_basis.clone()).unwrap();
        let b = MatrixK::from_rows(code.tower(), oracle.hull_basis.clone()).unwrap();
        a.row_space_eq(&b)
    };
    checks.push(CheckItem::new(
        "oracle-rowspace",
        same_space,
        "both routes span the same hull",
    ));
    let in_code = report.hull_basis.iter().all(|v| code.contains(v));
    let orthogonal = report.hull_basis.iter().all(|v| {
        (0..code.k()).all(|i| inner_product(v, code.generator().row(i), flavor).is_zero())
    });
    checks.push(CheckItem::new("hull-in-code", in_code, "basis lies in C"));
    checks.push(CheckItem::new(
        "hull-orthogonal",
        orthogonal,
        "basis is orthogonal to every generator row",
    ));
    serde_json::to_value(HullReportJson::of(&report).expect("fits u64")).expect("serializable")
}

fn hull_cmd(path: &PathBuf, flavor_name: &str) -> CliResult<CommandReport> {
    let (_, code) = read_code(path)?;
    let flavor = parse_flavor(flavor_name)?;
    let mut checks = Vec::new();
    let outputs = hull_checks(&code, flavor, &mut checks);
    Ok(CommandReport {
        command: "hull".into(),
        inputs: json!({"code": path.display().to_string(), "flavor": flavor.as_str()}),
        outputs,
        checks,
    })
}

fn vary_hull_cmd(
    path: &PathBuf,
    target: usize,
    flavor_name: &str,
    seed: u64,
) -> CliResult<CommandReport> {
    let (_, code) = read_code(path)?;
    let flavor = parse_flavor(flavor_name)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match vary_hull(&code, target, flavor, seed) {
        Ok((varied, trace)) => {
            outputs = json!({
                "code": code_output(&varied),
                "trace": serde_json::to_value(TraceJson::of(&trace)).expect("serializable"),
            });
            checks.push(CheckItem::new(
                "target-reached",
                varied.hull_dim(flavor) == target,
                format!("hull dimension {}", varied.hull_dim(flavor)),
            ));
            checks.push(CheckItem::new(
                "oracle-confirms",
                varied.hull_oracle(flavor).expect("consistent shapes").h == target,
                "intersection oracle agrees",
            ));
            let monotone = trace
                .steps
                .iter()
                .enumerate()
                .all(|(i, (_, h))| *h == trace.initial_h - i - 1);
            checks.push(CheckItem::new(
                "steps-monotone",
                monotone,
                "each step lowers the hull by 1",
            ));
            let mut moved = code.clone();
            for (m, _) in &trace.steps {
                moved = moved.apply_equivalence(m).expect("trace matrices invertible");
            }
            checks.push(CheckItem::new(
                "equivalence-reproduces",
                moved.same_code(&varied),
                "product of trace matrices maps C to C'",
            ));
        }
        Err(e) => checks.push(CheckItem::new("hull-variation", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "vary-hull".into(),
        inputs: json!({
            "code": path.display().to_string(),
            "target": target,
            "flavor": flavor.as_str(),
            "seed": seed,
        }),
        outputs,
        checks,
    })
}

fn lcd_cmd(path: &PathBuf, flavor_name: &str, seed: u64) -> CliResult<CommandReport> {
    let (_, code) = read_code(path)?;
    let flavor = parse_flavor(flavor_name)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match vary_hull(&code, 0, flavor, seed) {
        Ok((lcd, trace)) => {
            outputs = json!({
                "code": code_output(&lcd),
                "trace": serde_json::to_value(TraceJson::of(&trace)).expect("serializable"),
            });
            checks.push(CheckItem::new(
                "lcd",
                lcd.hull_dim(flavor) == 0,
                "hull dimension 0",
            ));
            checks.push(CheckItem::new(
                "oracle-confirms",
                lcd.hull_oracle(flavor).expect("consistent shapes").h == 0,
                "intersection oracle agrees",
            ));
        }
        Err(e) => checks.push(CheckItem::new("hull-variation", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "lcd".into(),
        inputs: json!({
            "code": path.display().to_string(),
            "flavor": flavor.as_str(),
            "seed": seed,
        }),
        outputs,
        checks,
    })
}

fn so_mrd_cmd(
    args: &FieldArgs,
    k: usize,
    s: u64,
    seed: u64,
    cap: u64,
) -> CliResult<CommandReport> {
    let (tower, echo) = resolve_tower(args)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match hermitian_so_gabidulin(&tower, k, s, seed) {
        Ok(code) => {
            let basis = scaled_self_dual_basis(&tower, seed).expect("already succeeded");
            outputs = json!({
                "code": code_output(&code),
                "basis": basis_output(&basis),
            });
            checks.push(CheckItem::new(
                "gram-vanishes",
                code.gram(Flavor::Hermitian).is_zero(),
                "GG† = 0 (Hermitian self-orthogonal)",
            ));
            let predicted = tower.ext_degree() - k + 1;
            match code.min_rank_distance(cap) {
                Ok(d) => checks.push(CheckItem::new(
                    "mrd",
                    d == predicted,
                    format!("d = {d}, bound = {predicted}"),
                )),
                Err(e) => checks.push(CheckItem::new("mrd", false, e.to_string())),
            }
        }
        Err(e) => checks.push(CheckItem::new("construction", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "so-mrd".into(),
        inputs: merge(echo, json!({"k": k, "s": s, "seed": seed})),
        outputs,
        checks,
    })
}

fn mrd_with_hull_cmd(
    args: &FieldArgs,
    k: usize,
    ell: usize,
    s: u64,
    seed: u64,
    cap: u64,
) -> CliResult<CommandReport> {
    let (tower, echo) = resolve_tower(args)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match mrd_with_hull(&tower, k, ell, s, seed) {
        Ok(code) => {
            outputs = code_output(&code);
            checks.push(CheckItem::new(
                "hull-dimension",
                code.hull_dim(Flavor::Hermitian) == ell,
                format!("h = {}", code.hull_dim(Flavor::Hermitian)),
            ));
            checks.push(CheckItem::new(
                "oracle-confirms",
                code.hull_oracle(Flavor::Hermitian).expect("consistent shapes").h == ell,
                "intersection oracle agrees",
            ));
            let predicted = tower.ext_degree() - k + 1;
            match code.min_rank_distance(cap) {
                Ok(d) => checks.push(CheckItem::new(
                    "mrd",
                    d == predicted,
                    format!("d = {d}, bound = {predicted}"),
                )),
                Err(e) => checks.push(CheckItem::new("mrd", false, e.to_string())),
            }
        }
        Err(e) => checks.push(CheckItem::new("construction", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "mrd-with-hull".into(),
        inputs: merge(echo, json!({"k": k, "ell": ell, "s": s, "seed": seed})),
        outputs,
        checks,
    })
}

fn spectrum_cmd(path: &PathBuf, flavor_name: &str, cap: u64) -> CliResult<CommandReport> {
    let (_, code) = read_code(path)?;
    let flavor = parse_flavor(flavor_name)?;
    let mut checks = Vec::new();
    let mut outputs = json!({});
    match hull_spectrum(&code, flavor, cap) {
        Ok(report) => {
            outputs =
                serde_json::to_value(SpectrumJson::of(&report).expect("fits u64"))
                    .expect("serializable");
            let total: u128 = report.histogram.values().map(|&c| c as u128).sum();
            checks.push(CheckItem::new(
                "histogram-total",
                total == report.group_size,
                format!("{total} matrices counted"),
            ));
            let h = code.hull_dim(flavor);
            checks.push(CheckItem::new(
                "attains-input-hull",
                report.attained.contains(&h),
                format!("input hull dimension {h}"),
            ));
            // Hull variation guarantees full coverage of 0..h, except for
            // the Hermitian (q, n) = (2, 2) shape.
            let exempt =
                flavor == Flavor::Hermitian && code.tower().q() == 2 && code.n() == 2;
            if !exempt {
                let covered = (0..=h).all(|l| report.attained.contains(&l));
                checks.push(CheckItem::new(
                    "attains-every-smaller-hull",
                    covered,
                    "all of 0..=h attained",
                ));
            }
        }
        Err(e) => checks.push(CheckItem::new("spectrum", false, e.to_string())),
    }
    Ok(CommandReport {
        command: "spectrum".into(),
        inputs: json!({
            "code": path.display().to_string(),
            "flavor": flavor.as_str(),
            "cap": cap,
        }),
        outputs,
        checks,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        for (k, v) in e {
            b.insert(k, v);
        }
        return base;
    }
    base
}

// ---------------------------------------------------------------------------
// Demo cases
// ---------------------------------------------------------------------------

fn demo(case: &str) -> CliResult<CommandReport> {
    let (outputs, checks) = match case {
        "5.1" => demo_51(),
        "5.2" => demo_52(),
        "5.3" => demo_53(),
        "remark-3.8" => demo_remark_38(),
        other => {
            return Err(usage(format!(
                "unknown case {other:?}; expected 5.1, 5.2, 5.3, or remark-3.8"
            )))
        }
    };
    Ok(CommandReport {
        command: "demo".into(),
        inputs: json!({"case": case}),
        outputs,
        checks,
    })
}

fn mk_code(tower: &Arc<FieldTower>, rows: &[&[u128]]) -> RankCode {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| tower.from_canonical(x).expect("in range"))
                .collect()
        })
        .collect();
    RankCode::new(MatrixK::from_rows(tower, rows).expect("uniform width")).expect("full rank")
}

fn matrix_eq_ints(m: &MatrixK, expected: &[&[u64]]) -> bool {
    matrix_k_to_ints(m)
        .map(|rows| rows.iter().map(Vec::as_slice).eq(expected.iter().copied()))
        .unwrap_or(false)
}

fn demo_51() -> (Value, Vec<CheckItem>) {
    let f16 = fields::f16();
    let code = mk_code(&f16, &[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
    let mut checks = Vec::new();

    let gram = code.gram(Flavor::Hermitian);
    checks.push(CheckItem::new(
        "gram",
        matrix_eq_ints(&gram, &[&[0, 0], &[0, 1]]),
        "GG† = [[0,0],[0,1]]",
    ));

    let hull = code.hull(Flavor::Hermitian);
    checks.push(CheckItem::new("hull-dimension", hull.h == 1, "h = 1"));
    let all_ones = mk_code(&f16, &[&[1, 1, 1, 1]]);
    let hull_is_ones = hull.h == 1
        && MatrixK::from_rows(&f16, hull.hull_basis.clone())
            .unwrap()
            .row_space_eq(all_ones.generator());
    checks.push(CheckItem::new(
        "hull-is-all-ones-line",
        hull_is_ones,
        "H(C) = K*1_4",
    ));

    let (reduced, m) = reduce_hull_once(&code, Flavor::Hermitian, 0).expect("not obstructed");
    let m_rows = matrix_fq_to_ints(&m);
    checks.push(CheckItem::new(
        "equivalence-matrix",
        m_rows == vec![vec![1, 1, 1, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        "M = [[1,1,1,1],[0,1,0,0],[0,0,1,0],[0,0,0,1]]",
    ));
    checks.push(CheckItem::new(
        "reduced-generator",
        matrix_eq_ints(reduced.generator(), &[&[1, 0, 0, 0], &[0, 1, 2, 3]]),
        "G' = [[1,0,0,0],[0,1,w,w+1]]",
    ));
    checks.push(CheckItem::new(
        "reduced-hull",
        reduced.hull_dim(Flavor::Hermitian) == 0,
        "h drops 1 -> 0",
    ));

    let outputs = json!({
        "code": code_output(&code),
        "gram": matrix_k_to_ints(&gram).expect("fits u64"),
        "hull": serde_json::to_value(HullReportJson::of(&hull).expect("fits u64")).unwrap(),
        "equivalence": m_rows,
        "reduced": code_output(&reduced),
    });
    (outputs, checks)
}

fn demo_52() -> (Value, Vec<CheckItem>) {
    let f16 = fields::f16();
    let code = mk_code(&f16, &[&[8, 1, 0, 0], &[0, 0, 1, 0]]);
    let mut checks = Vec::new();

    let hull = code.hull(Flavor::Hermitian);
    checks.push(CheckItem::new("hull-dimension", hull.h == 1, "h = 1"));
    let w_ok = hull.h == 1
        && hull.hull_basis[0]
            .iter()
            .map(|x| element_to_int(x).unwrap())
            .eq([8, 1, 0, 0]);
    checks.push(CheckItem::new(
        "hull-vector",
        w_ok,
        "w = (w^3, 1, 0, 0)",
    ));

    let witness =
        rankhull::hullvary::descent_witness(&hull.hull_basis[0], 0).expect("supported shape");
    checks.push(CheckItem::new(
        "descent-u",
        witness.u == vec![1, 1, 0, 0],
        "u = (1,1,0,0)",
    ));
    let m_rows = matrix_fq_to_ints(&witness.m);
    checks.push(CheckItem::new(
        "descent-m",
        m_rows == vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 1, 1, 0], vec![0, 0, 0, 1]],
        "M matches the worked matrix",
    ));
    let mmt = witness.m.mul(&witness.m.transpose()).expect("square");
    let mut expected = MatrixFq::identity(&f16, 4);
    expected.set(0, 0, 0);
    expected.set(0, 1, 1);
    expected.set(1, 0, 1);
    expected.set(1, 1, 0);
    checks.push(CheckItem::new(
        "descent-identity",
        mmt == expected,
        "MMᵀ = I_4 + uᵀu",
    ));

    let (reduced, _) = reduce_hull_once(&code, Flavor::Hermitian, 0).expect("not obstructed");
    let gram = reduced.gram(Flavor::Hermitian);
    checks.push(CheckItem::new(
        "reduced-gram",
        matrix_eq_ints(&gram, &[&[7, 0], &[0, 1]]),
        "G'(G')† = [[w^2+w+1, 0],[0,1]]",
    ));
    checks.push(CheckItem::new(
        "reduced-hull",
        reduced.hull_dim(Flavor::Hermitian) == 0,
        "h drops 1 -> 0",
    ));

    let outputs = json!({
        "code": code_output(&code),
        "hull": serde_json::to_value(HullReportJson::of(&hull).expect("fits u64")).unwrap(),
        "u": witness.u,
        "equivalence": m_rows,
        "reduced": code_output(&reduced),
        "reduced_gram": matrix_k_to_ints(&gram).expect("fits u64"),
    });
    (outputs, checks)
}

fn demo_53() -> (Value, Vec<CheckItem>) {
    let f9 = fields::f9();
    let mut checks = Vec::new();

    let beta = f9.power_basis();
    let m1 = gram_of_scaled_form(&beta, &f9.one()).expect("power basis");
    checks.push(CheckItem::new(
        "unscaled-gram",
        matrix_fq_to_ints(&m1) == vec![vec![2, 0], vec![0, 1]] && m1.det() == 2,
        "M_1 = [[2,0],[0,1]], det = 2",
    ));

    let lambda = find_scale_lambda(&beta).expect("norm is onto");
    let lambda_int = element_to_int(&lambda).expect("fits u64");
    checks.push(CheckItem::new(
        "lambda",
        lambda_int == 4 && lambda.norm_code() == 2,
        "lambda = 1 + w with N(lambda) = 2 = det(M_1)^{-1}",
    ));

    let basis = scaled_self_dual_basis(&f9, 0).expect("always exists");
    let alpha_ints: Vec<u64> = basis
        .alpha
        .iter()
        .map(|a| element_to_int(a).unwrap())
        .collect();
    checks.push(CheckItem::new(
        "alpha",
        alpha_ints == vec![3, 7],
        "alpha = (w, 1 - w)",
    ));
    checks.push(CheckItem::new(
        "scaled-identities",
        verify_scaled_basis(&basis),
        "all four trace identities hold",
    ));

    let spec = GabidulinSpec::new(basis.alpha.clone(), 1, 1).expect("valid spec");
    let code = gabidulin_code(&spec);
    let self_dual = match code.dual(Flavor::Hermitian) {
        rankhull::codes::DualCode::Code(d) => d.same_code(&code),
        rankhull::codes::DualCode::Zero { .. } => false,
    };
    checks.push(CheckItem::new(
        "hermitian-self-dual",
        self_dual,
        "C = C^⊥H",
    ));
    let d = code.min_rank_distance(DEFAULT_ENUM_CAP).expect("tiny");
    checks.push(CheckItem::new(
        "mrd",
        d == 2,
        format!("[2,1,{d}] meets the bound 2"),
    ));

    let outputs = json!({
        "unscaled_gram": matrix_fq_to_ints(&m1),
        "basis": basis_output(&basis),
        "code": code_output(&code),
        "min_distance": d,
    });
    (outputs, checks)
}

fn demo_remark_38() -> (Value, Vec<CheckItem>) {
    let f4 = fields::f4();
    let code = mk_code(&f4, &[&[1, 2]]);
    let mut checks = Vec::new();

    let report =
        hull_spectrum(&code, Flavor::Hermitian, DEFAULT_GROUP_CAP).expect("|GL_2(F_2)| = 6");
    checks.push(CheckItem::new(
        "spectrum",
        report.group_size == 6
            && report.histogram.len() == 1
            && report.histogram.get(&1) == Some(&6),
        "histogram {1: 6}: no LCD code in the class",
    ));
    let obstructed = check_22_obstruction(&f4).expect("q = 2");
    checks.push(CheckItem::new(
        "class-wide-obstruction",
        obstructed,
        "every rank-weight-2 self-orthogonal line is stuck",
    ));
    // The Euclidean analogue is not obstructed, and even-q Euclidean
    // self-orthogonal MRD codes do not exist at all.
    let empty = euclidean_so_mrd_search(&f4, 2, 1, false, DEFAULT_ENUM_CAP)
        .map(|v| v.is_empty())
        .unwrap_or(false);
    checks.push(CheckItem::new(
        "euclidean-search-empty",
        empty,
        "no Euclidean self-orthogonal MRD code in K^2",
    ));

    let outputs = json!({
        "code": code_output(&code),
        "spectrum": serde_json::to_value(
            SpectrumJson::of(&report).expect("fits u64")
        ).unwrap(),
    });
    (outputs, checks)
}
