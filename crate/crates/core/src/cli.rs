//! The `posetblock` command line.
//!
//! Exit codes: 0 success, 1 mismatch or internal inconsistency, 2 invalid
//! configuration or input, 3 an enumeration cap was exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::code::{
    is_i_perfect, is_r_error_correcting, is_r_perfect, singleton_report, verify_duality,
    construct_i_perfect, CodeOptions,
};
use crate::config::{CodeSpec, InstanceConfig, OutputFormat};
use crate::distribution::{
    applicable_methods, distribution, DistributionOptions, DistributionTable, MethodChoice,
};
use crate::error::{Error, Result};
use crate::oracle::{default_space_cap, oracle_distribution, oracle_metric_axioms, OracleOptions};
use crate::poset::{labels_of, mask_of, DEFAULT_IDEAL_CAP};
use crate::space::BlockSpace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_EXPLOSION: i32 = 3;

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Explosion { .. } => EXIT_EXPLOSION,
        Error::Consistency(_) => EXIT_MISMATCH,
        _ => EXIT_CONFIG,
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "posetblock",
    version,
    about = "Weight distributions and code analysis for weighted poset block spaces"
)]
struct Cli {
    /// Instance file (JSON); `-` reads standard input.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// auto, general, equal, hierarchical, chain, pw, ppi, pi, p or oracle.
    #[arg(long, global = true)]
    method: Option<String>,

    /// Radius for `ball` and `check-code`.
    #[arg(long, global = true, value_name = "R")]
    radius: Option<u32>,

    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,

    /// Cap on the number of poset ideals.
    #[arg(long, global = true)]
    cap_ideals: Option<usize>,

    /// Cap on q^N for exhaustive sweeps.
    #[arg(long, global = true, env = "POSETBLOCK_CAP_SPACE")]
    cap_space: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the weight distribution |A_r|.
    Distribution,
    /// Print ball volumes |B_r|, or a single one with --radius.
    Ball,
    /// Report distances and perfectness of the configured code.
    CheckCode,
    /// Compare every applicable method against exhaustive enumeration.
    OracleCompare {
        /// Seeded triples for the metric axiom check.
        #[arg(long, default_value_t = 1000)]
        metric_samples: u64,
        /// Adds one to the general table at this radius before comparing.
        #[arg(long, hide = true)]
        inject_fault: Option<u32>,
    },
    /// Print a generator of the I-perfect code for an ideal.
    Construct {
        /// Comma-separated labels; overrides the ideal in the config.
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<usize>>,
    },
    /// Describe the poset shape and its ideal counts.
    Classify,
}

struct Settings {
    format: OutputFormat,
    choice: MethodChoice,
    radius: Option<u32>,
    distribution: DistributionOptions,
    space_cap: u128,
    seed: u64,
}

impl Settings {
    fn code_options(&self) -> CodeOptions {
        CodeOptions {
            space_cap: self.space_cap,
            distribution: self.distribution.clone(),
        }
    }

    fn oracle_options(&self) -> OracleOptions {
        OracleOptions {
            space_cap: self.space_cap,
            threads: self.distribution.threads,
        }
    }
}

/// Parses `args` and runs the command, writing data to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_config(path: &PathBuf) -> Result<InstanceConfig> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Config(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?
    };
    InstanceConfig::from_json(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") })
        .map_err(|e| Error::Config(format!("writing output: {e}")))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialises")
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required".into()))?;
    let cfg = read_config(path)?;
    let space = cfg.space()?;
    let settings = Settings {
        format: match cli.format {
            Some(FormatArg::Json) => OutputFormat::Json,
            Some(FormatArg::Csv) => OutputFormat::Csv,
            None => cfg.format.unwrap_or_default(),
        },
        choice: match &cli.method {
            Some(m) => m.parse()?,
            None => cfg.method_choice()?,
        },
        radius: cli.radius.or(cfg.radius),
        distribution: DistributionOptions {
            ideal_cap: cli.cap_ideals.or(cfg.caps.ideals).unwrap_or(DEFAULT_IDEAL_CAP),
            arrangement_cap: cfg
                .caps
                .arrangements
                .unwrap_or(DistributionOptions::default().arrangement_cap),
            threads: cli.threads,
        },
        space_cap: cli.cap_space.or(cfg.caps.space).unwrap_or_else(default_space_cap),
        seed: cfg.seed.unwrap_or(0),
    };
    match cli.command {
        Command::Distribution => cmd_distribution(&space, &settings, out),
        Command::Ball => cmd_ball(&space, &settings, out),
        Command::CheckCode => cmd_check_code(&cfg, &space, &settings, out),
        Command::OracleCompare {
            metric_samples,
            inject_fault,
        } => cmd_oracle_compare(&space, &settings, metric_samples, inject_fault, out, err),
        Command::Construct { ideal } => {
            let mask = ideal.as_deref().map(mask_of).or_else(|| cfg.ideal_mask());
            let mask = mask.ok_or_else(|| Error::Config("no ideal given".into()))?;
            cmd_construct(&space, mask, out)
        }
        Command::Classify => cmd_classify(&space, &settings, out),
    }
}

fn table_for(space: &BlockSpace, settings: &Settings) -> Result<DistributionTable> {
    match settings.choice {
        MethodChoice::Forced(crate::distribution::Method::Oracle) => {
            Ok(oracle_distribution(space, &settings.oracle_options())?.to_table(space))
        }
        choice => distribution(space, choice, &settings.distribution),
    }
}

fn cmd_distribution(space: &BlockSpace, settings: &Settings, out: &mut dyn Write) -> Result<i32> {
    let table = table_for(space, settings)?;
    let text = match settings.format {
        OutputFormat::Json => table.to_json(),
        OutputFormat::Csv => table.to_csv(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_ball(space: &BlockSpace, settings: &Settings, out: &mut dyn Write) -> Result<i32> {
    let table = table_for(space, settings)?;
    let rows: Vec<(u32, BigUint)> = match settings.radius {
        Some(r) => vec![(r, table.ball_volume(r)?)],
        None => table
            .ball_volumes()
            .into_iter()
            .enumerate()
            .map(|(r, v)| (r as u32, v))
            .collect(),
    };
    let text = match settings.format {
        OutputFormat::Json => pretty(&json!({
            "q": table.q,
            "N": table.total_len,
            "method": table.method.name(),
            "volumes": rows
                .iter()
                .map(|(r, v)| json!({"r": r, "volume": v.to_string()}))
                .collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut s = String::from("r,volume\n");
            for (r, v) in &rows {
                s.push_str(&format!("{r},{v}\n"));
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_check_code(
    cfg: &InstanceConfig,
    space: &BlockSpace,
    settings: &Settings,
    out: &mut dyn Write,
) -> Result<i32> {
    let code = cfg
        .code(space)?
        .ok_or_else(|| Error::Config("the config has no code".into()))?;
    let cap = settings.distribution.ideal_cap;
    let report = singleton_report(&code, space, cap)?;

    // ideals that could carry an I-perfect code: Σ_{i∈I} k_i = N - k
    let family = space.poset().ideals_with_cap(cap)?;
    let target = space.total_len() - code.dimension();
    let mut verdicts = Vec::new();
    for ideal in family.all() {
        if space.labels().span(ideal.members) == target {
            verdicts.push(json!({
                "ideal": ideal.labels(),
                "i_perfect": is_i_perfect(&code, space, ideal)?,
            }));
        }
    }

    let mut body = json!({
        "report": report,
        "i_perfect": verdicts,
    });
    if let Some(r) = settings.radius {
        let opts = settings.code_options();
        body["radius"] = json!({
            "r": r,
            "r_perfect": is_r_perfect(&code, space, r, &opts)?,
            "r_error_correcting": is_r_error_correcting(&code, space, r, &opts)?,
        });
    }
    match verify_duality(&code, space, cap) {
        Ok(d) => {
            body["duality"] = json!({
                "ideal": d.ideal,
                "code_mds": d.code_mds,
                "code_i_perfect": d.code_i_perfect,
                "dual_complement_perfect": d.dual_complement_perfect,
                "dual_mds_in_dual_poset": d.dual_mds_in_dual_poset,
                "holds": d.holds(),
            });
        }
        Err(Error::Hypothesis(_)) => {}
        Err(e) => return Err(e),
    }
    emit(out, &pretty(&body))?;
    Ok(EXIT_OK)
}

fn first_difference(a: &[BigUint], b: &[BigUint]) -> Option<usize> {
    (0..a.len().max(b.len())).find(|&r| a.get(r) != b.get(r))
}

fn cmd_oracle_compare(
    space: &BlockSpace,
    settings: &Settings,
    metric_samples: u64,
    inject_fault: Option<u32>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let oracle = oracle_distribution(space, &settings.oracle_options())?.to_table(space);
    let mut rows = Vec::new();
    let mut all_agree = true;
    for method in applicable_methods(space) {
        let mut table = distribution(space, MethodChoice::Forced(method), &settings.distribution)?;
        if let (Some(r), crate::distribution::Method::General) = (inject_fault, method) {
            if let Some(c) = table.counts.get_mut(r as usize) {
                *c += 1u32;
            }
        }
        let diff = first_difference(&oracle.counts, &table.counts);
        if let Some(r) = diff {
            all_agree = false;
            let _ = writeln!(
                err,
                "{method}: first difference at r = {r}: oracle {}, method {}",
                oracle.count(r as u32),
                table.count(r as u32)
            );
        }
        rows.push(json!({
            "method": method.name(),
            "agrees": diff.is_none(),
            "first_difference": diff,
        }));
    }
    let metric = oracle_metric_axioms(space, metric_samples, settings.seed);
    if !metric.is_clean() {
        let _ = writeln!(
            err,
            "metric axioms: {} violations in {} samples",
            metric.violation_count, metric.samples
        );
    }
    let metric_ok = metric.is_clean() || !space.weight_model().is_metric_safe();
    emit(
        out,
        &pretty(&json!({
            "q": space.q(),
            "N": space.total_len(),
            "total": oracle.total().to_string(),
            "methods": rows,
            "metric_samples": metric.samples,
            "metric_violations": metric.violation_count,
        })),
    )?;
    Ok(if all_agree && metric_ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_construct(space: &BlockSpace, ideal: u64, out: &mut dyn Write) -> Result<i32> {
    let code = construct_i_perfect(space, ideal)?;
    emit(out, &pretty(&CodeSpec::from_code(&code)))?;
    Ok(EXIT_OK)
}

fn cmd_classify(space: &BlockSpace, settings: &Settings, out: &mut dyn Write) -> Result<i32> {
    let poset = space.poset();
    let cls = poset.classify();
    let family = poset.ideals_with_cap(settings.distribution.ideal_cap)?;
    let counts: Vec<_> = family
        .counts()
        .map(|((card, maxes), count)| json!({"cardinality": card, "maximals": maxes, "count": count}))
        .collect();
    emit(
        out,
        &pretty(&json!({
            "n": poset.len(),
            "is_chain": cls.is_chain,
            "is_antichain": cls.is_antichain,
            "is_hierarchical": cls.is_hierarchical,
            "height": cls.levels.height(),
            "levels": cls.levels.levels.iter().map(|&l| labels_of(l)).collect::<Vec<_>>(),
            "cover_relations": poset.cover_relations(),
            "ideal_count": family.len(),
            "ideal_counts": counts,
        })),
    )?;
    Ok(EXIT_OK)
}
