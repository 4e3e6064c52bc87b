use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cbv_core::homotopy::{
    ainfty_pointwise_entry, check_cinfty, check_relations_n, classify, validate_symmetries,
    Conventions, GeneratingSet, ObstructionKey,
};
use cbv_core::report::{CheckEntry, Report};
use cbv_core::shuffle::{enumerate_straight_shuffles, extension_sign, ExtensionExponent};
use cbv_core::strict::{classify_strict, StrictStructure};
use cbv_core::tables::{
    corrected_obstruction, erratum, exprs_equal_mod_symmetry, render_table, specialize_obstruction,
    tabulated_keys, tabulated_obstruction, OracleConfig, PermReading,
};
use cbv_core::ym::{build_ym, random_theta3, verify_ym, ym_carrier, CubicReading, YmCheckConfig};
use cbv_core::MultiMap;

use crate::args::{Cli, Command, OutputFormat};
use crate::file::{Structure, StructureFile, Suite};
use crate::{CliError, Outcome, DEFAULT_SEED, EXIT_OK, EXIT_PARSE_ERROR};

/// Highest weight with reference rows.
pub const MAX_TABLE_WEIGHT: u32 = 3;

/// Highest arity of the pointwise A∞ cross-check.
const POINTWISE_ARITY: usize = 2;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub truncation: Option<u32>,
    pub max_arity: usize,
    pub poly_degree: u32,
    pub relations: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            truncation: None,
            max_arity: 5,
            poly_degree: 2,
            relations: false,
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let format = cli.format;
    let result = match cli.command {
        Command::Verify {
            file,
            truncation,
            max_arity,
            poly_degree,
            relations,
        } => {
            let opts = VerifyOptions {
                truncation,
                max_arity,
                poly_degree,
                relations,
            };
            cmd_verify(&file, &opts, format)
        }
        Command::Table {
            weight,
            check,
            corrected,
            trials,
        } => cmd_table(weight, check, corrected, trials, seed, format),
        Command::Shuffles { q, p } => cmd_shuffles(&q, &p, format),
        Command::Ym {
            dim,
            poly_degree,
            max_arity,
            theta3,
            cubic,
            export,
        } => {
            let opts = VerifyOptions {
                truncation: None,
                max_arity,
                poly_degree,
                relations: false,
            };
            cmd_ym(
                dim,
                &theta3,
                cubic.into(),
                seed,
                export.as_deref(),
                &opts,
                format,
            )
        }
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

pub fn cmd_verify(
    path: &Path,
    opts: &VerifyOptions,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let s = StructureFile::load(path)?.parse()?;
    Ok(Outcome::from_reports(&verify_structure(&s, opts)?, format))
}

/// The reports `verify` prints for a parsed structure.
pub fn verify_structure(s: &Structure, opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    match s {
        Structure::Generating { name, suite, set } => verify_generating(name, *suite, set, opts),
        Structure::Strict(s) => Ok(vec![verify_strict(s)?]),
    }
}

fn verify_generating(
    name: &str,
    suite: Option<Suite>,
    set: &GeneratingSet,
    opts: &VerifyOptions,
) -> Result<Vec<Report>, CliError> {
    let mut reports = Vec::new();
    match suite {
        Some(Suite::YangMills) => {
            let cfg = YmCheckConfig {
                max_arity: opts.max_arity,
                max_poly_degree: opts.poly_degree,
                pointwise_arity: POINTWISE_ARITY,
            };
            reports.push(verify_ym(set, cfg)?);
        }
        None => {
            let mut r = check_cinfty(set, opts.max_arity)?;
            r.title = format!("generating set: {name}");
            for n in 1..=POINTWISE_ARITY.min(opts.max_arity) {
                r.push(ainfty_pointwise_entry(set, n, opts.poly_degree)?);
            }
            r.push(match validate_symmetries(set).first() {
                None => CheckEntry::pass("symmetries", "block and shuffle symmetries hold"),
                Some(v) => CheckEntry::fail(
                    "symmetries",
                    format!("{}: {}", v.key, v.kind),
                    Some(v.witness.clone()),
                ),
            });
            reports.push(r);
        }
    }

    let n = opts
        .truncation
        .or(set.truncation())
        .or(set.max_weight())
        .unwrap_or(0);
    let cl = classify(set, n)?;
    let mut r = Report::new(format!("classification at order {n}"));
    if opts.relations {
        for w in 1..=n {
            for key in ObstructionKey::all_of_weight(w) {
                r.push(check_relations_n(set, &key)?);
            }
        }
    }
    for o in &cl.obstructions {
        let detail = if o.vanishes { "vanishes" } else { "nonzero" };
        r.push(CheckEntry::info(
            o.key.to_string(),
            detail,
            o.witness.clone(),
        ));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let nonzero = |f: &dyn Fn(&ObstructionKey) -> bool| {
        cl.obstructions
            .iter()
            .find(|o| !o.vanishes && f(&o.key))
            .map(|o| format!(" (witness {})", o.key))
            .unwrap_or_default()
    };
    // the BV witness is one the Gerstenhaber flag does not already account for
    let bv_witness = match nonzero(&|k| k.t > 0) {
        w if w.is_empty() => nonzero(&|_| true),
        w => w,
    };
    let summary = format!(
        "is-cBV({n}): {}, is-BV({n}): {}{bv_witness}, is-Gerst({n}): {}{}, is-shifted-L({n}): {}{}",
        yes(cl.is_cbv),
        yes(cl.is_bv),
        yes(cl.is_gerst),
        nonzero(&|k| k.t == 0),
        yes(cl.is_shifted_l),
        nonzero(&|k| k.t == 0 && k.p.iter().all(|&x| x == 1)),
    );
    r.push(CheckEntry::info("classification", summary, None));
    reports.push(r);
    Ok(reports)
}

fn verify_strict(s: &StrictStructure) -> Result<Report, CliError> {
    let cl = classify_strict(s)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut r = cl.report;
    r.push(CheckEntry::info(
        "classification",
        format!(
            "is-cBV: {}, is-BV: {}, is-eBV: {}",
            yes(cl.is_cbv),
            yes(cl.is_bv),
            yes(cl.is_ebv)
        ),
        None,
    ));
    Ok(r)
}

pub fn cmd_table(
    weight: u32,
    check: bool,
    corrected: bool,
    trials: usize,
    seed: u64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let conv = Conventions::default();
    let mut text = format!("== obstructions of weight {weight} ==\n");
    text.push_str(&render_table(weight, conv)?);
    if !check {
        return Ok(Outcome {
            stdout: text,
            stderr: String::new(),
            code: EXIT_OK,
        });
    }
    if weight > MAX_TABLE_WEIGHT {
        return Ok(Outcome {
            stdout: text,
            stderr: format!(
                "error: --check needs reference rows, which exist up to weight {MAX_TABLE_WEIGHT}\n"
            ),
            code: EXIT_PARSE_ERROR,
        });
    }
    let report = table_check(weight, corrected, trials, seed)?;
    let mut out = Outcome::from_reports(&[report], format);
    if format == OutputFormat::Text {
        out.stdout = text + &out.stdout;
    }
    Ok(out)
}

/// Compares the specialized obstruction with the reference row for every tabulated
/// key of weight `weight`.
pub fn table_check(
    weight: u32,
    corrected: bool,
    trials: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let conv = Conventions::default();
    let rows = if corrected { "corrected" } else { "verbatim" };
    let mut r = Report::new(format!("table check, weight {weight}, {rows} rows"));
    let cfg = OracleConfig {
        trials,
        seed,
        conventions: conv,
        ..OracleConfig::default()
    };
    for key in tabulated_keys()
        .into_iter()
        .filter(|k| k.weight() == weight)
    {
        let ours = specialize_obstruction(&key, conv)?;
        let reference = if corrected {
            corrected_obstruction(&key, PermReading::Direct)?
        } else {
            tabulated_obstruction(&key, PermReading::Direct)?
        };
        let o = exprs_equal_mod_symmetry(&ours, &reference, &cfg)?;
        r.push(match &o.disagreement {
            None => CheckEntry::pass(
                key.to_string(),
                format!("agrees on {} trials ({} nonzero)", o.trials, o.nonzero),
            ),
            Some((trial, w)) => {
                let mut detail = format!("disagrees on trial {trial}");
                if let (false, Some(e)) = (corrected, erratum(&key)) {
                    detail.push_str(&format!("; known misprint: {}", e.note));
                }
                CheckEntry::fail(key.to_string(), detail, Some(w.clone()))
            }
        });
    }
    Ok(r)
}

#[derive(Serialize)]
struct ShuffleRecord {
    sigma: Vec<usize>,
    l: Vec<usize>,
    q: Vec<usize>,
    r: Vec<usize>,
    sign: char,
}

pub fn cmd_shuffles(q: &[usize], p: &[usize], format: OutputFormat) -> Result<Outcome, CliError> {
    let list = enumerate_straight_shuffles(q, p).map_err(|e| CliError::Parse(e.to_string()))?;
    let tuple = |v: &[usize]| {
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("({})", s.join(","))
    };
    let mut out = String::new();
    if format == OutputFormat::Text {
        out.push_str(&format!(
            "{} straight shuffles for q = {} in p = {}\n",
            list.len(),
            tuple(q),
            tuple(p)
        ));
    }
    for ds in &list {
        let sign = if extension_sign(ds, ExtensionExponent::default()) {
            '-'
        } else {
            '+'
        };
        match format {
            OutputFormat::Text => out.push_str(&format!(
                "{sign} {:<24} l = {} q = {} r = {}\n",
                format!("{:?}", ds.sigma.one_line()),
                tuple(&ds.l),
                tuple(&ds.q),
                tuple(&ds.r)
            )),
            OutputFormat::Structured => {
                let rec = ShuffleRecord {
                    sigma: ds.sigma.one_line(),
                    l: ds.l.clone(),
                    q: ds.q.clone(),
                    r: ds.r.clone(),
                    sign,
                };
                out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
                out.push('\n');
            }
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

/// The generating set `ym` builds, as a structure.
pub fn ym_structure(
    dim: usize,
    theta3: Option<&MultiMap>,
    reading: CubicReading,
) -> Result<Structure, CliError> {
    let set = build_ym(dim, theta3, reading).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(Structure::Generating {
        name: format!("Yang-Mills kinematic algebra, d = {dim}"),
        suite: Some(Suite::YangMills),
        set,
    })
}

fn load_theta3(spec: &str, dim: usize, seed: u64) -> Result<Option<MultiMap>, CliError> {
    match spec {
        "zero" => Ok(None),
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Some(
                random_theta3(&mut rng, dim).map_err(|e| CliError::Parse(e.to_string()))?,
            ))
        }
        path => {
            let f = StructureFile::load(Path::new(path))?;
            let c = f.carrier()?;
            if *c != *ym_carrier(dim)? {
                return Err(CliError::Parse(format!(
                    "{path}: carrier differs from the d = {dim} Yang-Mills carrier"
                )));
            }
            if f.maps.len() != 1 || !f.maps.contains_key("theta3") {
                return Err(CliError::Parse(format!(
                    "{path}: expected exactly one map named theta3"
                )));
            }
            Ok(Some(f.map_named("theta3", 3, -2)?))
        }
    }
}

pub fn cmd_ym(
    dim: usize,
    theta3: &str,
    reading: CubicReading,
    seed: u64,
    export: Option<&Path>,
    opts: &VerifyOptions,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let th = load_theta3(theta3, dim, seed)?;
    let s = ym_structure(dim, th.as_ref(), reading)?;
    if let Some(path) = export {
        std::fs::write(path, s.to_file().to_json())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome::from_reports(&verify_structure(&s, opts)?, format))
}
