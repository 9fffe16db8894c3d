//! `parhiggs` — command-line calculators for parabolic Higgs moduli
//! invariants: weight calculus, V-Picard arithmetic, spectral-cover
//! numerics, Sp(2n,R) minima and connected-component counts.

mod render;
mod sweep;

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use parhiggs::components::{
    closed_form_expression, count_components, enumerate_invariant_classes, family_counts,
    CountMode, InvariantClass, MAX_ENUMERATION_GENUS,
};
use parhiggs::higgs::{
    classify_minimum_sp4, minima_decomposition_sp2n, toledo_and_bound, MinimumCase, SpHiggsData,
};
use parhiggs::spectral::{
    hitchin_base_dim, hitchin_fiber_components, prym_data, spectral_cover_data,
};
use parhiggs::vgeom::{
    euler_characteristic, mv_alternating_check, picard_component_count, sqrt_solutions,
    z2_cohomology_ranks, zm_cohomology_z2_ranks, LineVBundle, OrbifoldSignature,
};
use parhiggs::{ErrorKind, ParabolicBundleData, Rat};

use render::{bits_text, emit_kv, emit_table, list_text, rat_json, rat_text, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
    Toml(toml::de::Error),
    Core(parhiggs::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.kind() == ErrorKind::Regime => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "invalid json: {e}"),
            CliError::Csv(e) => write!(f, "{e}"),
            CliError::Toml(e) => write!(f, "invalid config: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}
impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}
impl From<toml::de::Error> for CliError {
    fn from(e: toml::de::Error) -> Self {
        CliError::Toml(e)
    }
}
impl From<parhiggs::Error> for CliError {
    fn from(e: parhiggs::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "parhiggs",
    version,
    about = "Exact invariants of parabolic Higgs bundle moduli spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parabolic degree and slope of a bundle (JSON file, `-` for stdin)
    Pardeg {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Parabolic dual of a bundle
    Dual {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Tensor a bundle with a parabolic line bundle
    Tensor {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        line: PathBuf,
    },
    /// Component count of the V-Picard group of a signature
    Vpic {
        #[arg(long)]
        orders: Option<String>,
    },
    /// Riemann-Roch Euler characteristic of a line V-bundle
    Rr {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        isotropy: Option<String>,
    },
    /// Z2 V-cohomology ranks, cyclic group cohomology and the
    /// Mayer-Vietoris consistency check
    Cohom {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
    },
    /// Square roots of a trivial-isotropy class (default: K(D))
    Sqrt {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        /// Background degree of the target; defaults to 2g-2+s.
        #[arg(long)]
        target_degree: Option<i64>,
    },
    /// Derived data of a spectral cover
    Spectral {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        n: u32,
        /// Twist degree; defaults to deg K(D) = 2g-2+s.
        #[arg(long)]
        twist_degree: Option<i64>,
    },
    /// Hitchin base dimension and regular fiber component count
    Hitchin {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        n: u32,
        /// Strongly parabolic Higgs fields.
        #[arg(long)]
        strong: bool,
    },
    /// Prym dimension and component count of the degree-2 cover
    Prym {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        /// Twist degree; defaults to deg K(D) = 2g-2+s.
        #[arg(long)]
        twist_degree: Option<i64>,
    },
    /// Toledo invariant, bound and maximality of a triple (JSON file)
    Toledo {
        #[arg(long)]
        data: PathBuf,
    },
    /// Minimum classification (rank 2, from --data) or the decomposed
    /// minima degrees (rank n >= 3, from --n/--g/--s)
    Minima {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Closed-form component count, cross-checked by enumeration
    Count {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "weight-type")]
        mode: String,
    },
    /// Materialize the invariant classes
    Enumerate {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "weight-type")]
        mode: String,
    },
    /// Per-family class counts
    Families {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        n: u32,
    },
    /// Run a parameter grid from a config file
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let is_usage = e.use_stderr();
            let _ = e.print();
            std::process::exit(if is_usage { 1 } else { 0 });
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn parse_u32_list(raw: &Option<String>, what: &str) -> Result<Vec<u32>, CliError> {
    match raw.as_deref().map(str::trim) {
        None | Some("") => Ok(Vec::new()),
        Some(text) => text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::Usage(format!("invalid {what} entry `{part}`")))
            })
            .collect(),
    }
}

fn parse_mode(raw: &str) -> Result<CountMode, CliError> {
    raw.parse::<CountMode>().map_err(CliError::Usage)
}

fn signature(g: u32, orders: &Option<String>) -> Result<OrbifoldSignature, CliError> {
    Ok(OrbifoldSignature::new(
        g,
        parse_u32_list(orders, "orders")?,
    )?)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn count_json(c: u128) -> Value {
    match u64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn bundle_pairs(b: &ParabolicBundleData) -> Vec<(String, String)> {
    let mut pairs = vec![
        ("rank".to_string(), b.rank().to_string()),
        ("degree".to_string(), b.degree().to_string()),
        ("pardeg".to_string(), rat_text(b.pardeg())),
    ];
    for (i, point) in b.points().iter().enumerate() {
        let rendered = point
            .entries()
            .iter()
            .map(|e| format!("{}x{}", e.weight, e.multiplicity))
            .collect::<Vec<_>>()
            .join(" ");
        pairs.push((format!("point.{i}"), rendered));
    }
    pairs
}

fn emit_bundle(format: Format, b: &ParabolicBundleData) -> Result<(), CliError> {
    let pairs = bundle_pairs(b);
    let doc = serde_json::to_value(b)?;
    let pairs_ref: Vec<(&str, String)> =
        pairs.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    emit_kv(format, &pairs_ref, &doc)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Pardeg { bundle } => {
            let b: ParabolicBundleData = read_json(&bundle)?;
            let pardeg = b.pardeg();
            let slope = b.par_slope();
            emit_kv(
                format,
                &[("pardeg", rat_text(pardeg)), ("slope", rat_text(slope))],
                &json!({"pardeg": rat_json(pardeg), "slope": rat_json(slope)}),
            )
        }
        Command::Dual { bundle } => {
            let b: ParabolicBundleData = read_json(&bundle)?;
            emit_bundle(format, &b.dual())
        }
        Command::Tensor { bundle, line } => {
            let b: ParabolicBundleData = read_json(&bundle)?;
            let l: ParabolicBundleData = read_json(&line)?;
            emit_bundle(format, &b.tensor_line(&l)?)
        }
        Command::Vpic { orders } => {
            let orders = parse_u32_list(&orders, "orders")?;
            let sig = OrbifoldSignature::new(0, orders.clone())?;
            let components = picard_component_count(&sig)?;
            emit_kv(
                format,
                &[
                    ("components", components.to_string()),
                    ("torsion_orders", list_text(&orders)),
                ],
                &json!({"components": count_json(components), "torsion_orders": orders}),
            )
        }
        Command::Rr {
            g,
            orders,
            degree,
            isotropy,
        } => {
            let sig = signature(g, &orders)?;
            let line = LineVBundle::new(degree, parse_u32_list(&isotropy, "isotropy")?);
            let euler = euler_characteristic(&line, &sig)?;
            let v_degree = line.v_degree(&sig)?;
            emit_kv(
                format,
                &[
                    ("euler_characteristic", euler.to_string()),
                    ("v_degree", rat_text(v_degree)),
                ],
                &json!({"euler_characteristic": euler, "v_degree": rat_json(v_degree)}),
            )
        }
        Command::Cohom { g, orders } => {
            let sig = signature(g, &orders)?;
            let (h1, h2) = z2_cohomology_ranks(&sig)?;
            let mv = mv_alternating_check(&sig)?;
            let group: Vec<Value> = sig
                .orders()
                .iter()
                .map(|&m| {
                    let (h0, h1, h2) = zm_cohomology_z2_ranks(m);
                    json!({"order": m, "h0": h0, "h1": h1, "h2": h2})
                })
                .collect();
            emit_kv(
                format,
                &[
                    ("h1_rank", h1.to_string()),
                    ("h2_rank", h2.to_string()),
                    (
                        "group_cohomology",
                        sig.orders()
                            .iter()
                            .map(|&m| {
                                let (a, b, c) = zm_cohomology_z2_ranks(m);
                                format!("Z{m}:{a},{b},{c}")
                            })
                            .collect::<Vec<_>>()
                            .join(" "),
                    ),
                    ("mv_alternating_sum", mv.alternating_sum.to_string()),
                    ("mv_exact", mv.exact.to_string()),
                ],
                &json!({
                    "h1_rank": h1,
                    "h2_rank": h2,
                    "group_cohomology": group,
                    "mayer_vietoris": serde_json::to_value(&mv)?,
                }),
            )
        }
        Command::Sqrt {
            g,
            orders,
            target_degree,
        } => {
            let sig = signature(g, &orders)?;
            let degree = target_degree.unwrap_or_else(|| sig.log_canonical_degree());
            let target = LineVBundle::new(degree, vec![0; sig.num_points()]);
            let out = sqrt_solutions(&target, &sig)?;
            let total = out.total()?;
            let mut pairs = vec![
                ("target_degree", degree.to_string()),
                ("isotropy_solutions", out.isotropy_count().to_string()),
                ("jacobian_exponent", out.jacobian_exponent.to_string()),
                ("total", total.to_string()),
            ];
            for (i, l) in out.solutions.iter().enumerate() {
                pairs.push((
                    "solution",
                    format!(
                        "{i}: degree {} isotropy {}",
                        l.degree(),
                        list_text(l.isotropy())
                    ),
                ));
            }
            if out.isotropy_count() == 0 {
                pairs.push(("note", "no square roots of this class exist".to_string()));
            }
            emit_kv(
                format,
                &pairs,
                &json!({
                    "target_degree": degree,
                    "solutions": serde_json::to_value(&out.solutions)?,
                    "isotropy_solutions": out.isotropy_count(),
                    "jacobian_exponent": out.jacobian_exponent,
                    "total": count_json(total),
                }),
            )
        }
        Command::Spectral {
            g,
            orders,
            n,
            twist_degree,
        } => {
            let sig = signature(g, &orders)?;
            let twist = twist_degree.unwrap_or_else(|| sig.log_canonical_degree());
            let cover = spectral_cover_data(&sig, n, twist)?;
            emit_kv(
                format,
                &[
                    ("base_genus", cover.base.genus().to_string()),
                    ("base_orders", list_text(cover.base.orders())),
                    ("rank", cover.rank.to_string()),
                    ("twist_degree", cover.twist_degree.to_string()),
                    ("branch_degree", cover.branch_degree.to_string()),
                    (
                        "spectral_genus_riemann_hurwitz",
                        cover.spectral_genus.to_string(),
                    ),
                    (
                        "spectral_orders",
                        list_text(cover.spectral_signature.orders()),
                    ),
                    ("regularity_assumed", cover.regularity_assumed.to_string()),
                ],
                &serde_json::to_value(&cover)?,
            )
        }
        Command::Hitchin {
            g,
            orders,
            n,
            strong,
        } => {
            let sig = signature(g, &orders)?;
            let dim = hitchin_base_dim(g, sig.num_points() as u32, n, strong)?;
            let fibers = hitchin_fiber_components(&sig, n)?;
            emit_kv(
                format,
                &[
                    ("base_dimension", dim.to_string()),
                    ("fiber_components", fibers.to_string()),
                    ("strong", strong.to_string()),
                ],
                &json!({
                    "base_dimension": dim,
                    "fiber_components": count_json(fibers),
                    "strong": strong,
                }),
            )
        }
        Command::Prym {
            g,
            orders,
            twist_degree,
        } => {
            let sig = signature(g, &orders)?;
            let twist = twist_degree.unwrap_or_else(|| sig.log_canonical_degree());
            let prym = prym_data(&sig, twist)?;
            emit_kv(
                format,
                &[
                    ("dimension", prym.dimension.to_string()),
                    ("components", prym.component_count.to_string()),
                    (
                        "note",
                        "per-fiber copy count is not determined by these invariants".to_string(),
                    ),
                ],
                &serde_json::to_value(&prym)?,
            )
        }
        Command::Toledo { data } => {
            let triple: SpHiggsData = read_json(&data)?;
            let report = toledo_and_bound(&triple)?;
            emit_kv(
                format,
                &[
                    ("toledo", rat_text(report.toledo)),
                    ("bound", rat_text(report.bound)),
                    ("maximal", report.maximal.to_string()),
                ],
                &serde_json::to_value(&report)?,
            )
        }
        Command::Minima { data, n, g, s } => match (data, n, g, s) {
            (Some(path), None, None, None) => {
                let triple: SpHiggsData = read_json(&path)?;
                let verdict = classify_minimum_sp4(&triple)?;
                let case = match &verdict.case {
                    MinimumCase::Type1BetaZero => "type-1 (beta = 0)".to_string(),
                    MinimumCase::Type2Decomposition { .. } => {
                        "type-2 (decomposed V = L1 + L2)".to_string()
                    }
                    MinimumCase::NotMinimum => "not a minimum".to_string(),
                };
                let mut pairs = vec![
                    ("is_minimum", verdict.is_minimum.to_string()),
                    ("case", case),
                ];
                if let Some(index) = verdict.index {
                    pairs.push(("index", rat_text(index)));
                }
                emit_kv(format, &pairs, &serde_json::to_value(&verdict)?)
            }
            (None, Some(n), Some(g), Some(s)) => {
                let degrees = minima_decomposition_sp2n(n, g, s)?;
                let total: Rat = degrees.iter().copied().sum();
                emit_kv(
                    format,
                    &[
                        ("n", n.to_string()),
                        (
                            "summand_degrees",
                            degrees
                                .iter()
                                .map(|d| rat_text(*d))
                                .collect::<Vec<_>>()
                                .join(","),
                        ),
                        ("total", rat_text(total)),
                    ],
                    &json!({
                        "n": n,
                        "summand_degrees": degrees.iter().map(|d| rat_json(*d)).collect::<Vec<_>>(),
                        "total": rat_json(total),
                    }),
                )
            }
            _ => Err(CliError::Usage(
                "minima needs either --data FILE (rank-2 classification) or --n N --g G --s S \
                 (decomposed minima for n >= 3)"
                    .to_string(),
            )),
        },
        Command::Count { g, orders, n, mode } => {
            let sig = signature(g, &orders)?;
            let mode = parse_mode(&mode)?;
            let total = count_components(&sig, n, mode)?;
            let families = family_counts(&sig, n)?;
            // Families under the requested mode: uv and sqrt never depend
            // on it, so the mode's dw count is the remainder.
            let dw = total - families.uv - families.sqrt;
            let agrees: Option<bool> = if g <= MAX_ENUMERATION_GENUS {
                let listed = enumerate_invariant_classes(&sig, n, mode)?;
                Some(listed.len() as u128 == total)
            } else {
                None
            };
            let formula = closed_form_expression(n, mode);
            emit_kv(
                format,
                &[
                    ("total", total.to_string()),
                    ("uv", families.uv.to_string()),
                    ("dw", dw.to_string()),
                    ("sqrt", families.sqrt.to_string()),
                    ("formula", formula.to_string()),
                    (
                        "enumeration_agrees",
                        agrees.map_or("-".to_string(), |b| b.to_string()),
                    ),
                ],
                &json!({
                    "total": count_json(total),
                    "families": {
                        "uv": count_json(families.uv),
                        "dw": count_json(dw),
                        "sqrt": count_json(families.sqrt),
                    },
                    "formula": formula,
                    "enumeration_agrees": agrees,
                }),
            )
        }
        Command::Enumerate { g, orders, n, mode } => {
            let sig = signature(g, &orders)?;
            let mode = parse_mode(&mode)?;
            let classes = enumerate_invariant_classes(&sig, n, mode)?;
            let header = ["family", "u", "v", "d", "w", "carries", "jacobian_label"];
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| match c {
                    InvariantClass::UV { u, v, .. } => vec![
                        "uv".to_string(),
                        bits_text(u),
                        bits_text(v),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ],
                    InvariantClass::DW { d, w } => vec![
                        "dw".to_string(),
                        String::new(),
                        String::new(),
                        d.to_string(),
                        list_text(w),
                        String::new(),
                        String::new(),
                    ],
                    InvariantClass::SqrtKD {
                        carries,
                        jacobian_label,
                    } => vec![
                        "sqrt".to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        bits_text(carries),
                        jacobian_label.to_string(),
                    ],
                })
                .collect();
            emit_table(format, &header, &rows, &serde_json::to_value(&classes)?)
        }
        Command::Families { g, orders, n } => {
            let sig = signature(g, &orders)?;
            let families = family_counts(&sig, n)?;
            let total = families.total()?;
            emit_kv(
                format,
                &[
                    ("uv", families.uv.to_string()),
                    ("dw", families.dw.to_string()),
                    ("sqrt", families.sqrt.to_string()),
                    ("total", total.to_string()),
                ],
                &json!({
                    "uv": count_json(families.uv),
                    "dw": count_json(families.dw),
                    "sqrt": count_json(families.sqrt),
                    "total": count_json(total),
                }),
            )
        }
        Command::Sweep { config } => sweep::run(&config, format),
    }
}
