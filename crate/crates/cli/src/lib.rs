//! `sphdesign` command-line front end.
//!
//! Exit codes: 0 success or PASS, 1 a verification failed, 2 usage or data error.

mod args;
mod render;

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use serde_json::Value;
use sphdesign::design::pair_spectrum;
use sphdesign::embed::{realize_coordinates, write_coordinates};
use sphdesign::lattice::files::{parse_gram, parse_vectors, write_vectors};
use sphdesign::lattice::{catalog, minimal_vectors, LatticeSpec, CATALOG};
use sphdesign::report::{analyze_embedding, analyze_set, halved, reproduce_table, AnalysisOptions, Halving};
use sphdesign::{Error, GramMatrix, Verdict, VectorSet};

pub use args::{Cli, Command, Format};
use args::{AnalysisArgs, Input};
use render::Numbers;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { USAGE } else { PASS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return USAGE;
        }
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::KissingMismatch { .. } => FAIL,
                _ => USAGE,
            }
        }
    }
}

/// A loaded point set and what the catalog says about it.
struct Loaded {
    name: String,
    set: VectorSet,
    expected_kissing: Option<usize>,
}

fn read(path: &Path) -> sphdesign::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

fn load(input: &Input) -> sphdesign::Result<Loaded> {
    let source = &input.source;
    if let Some(name) = &source.lattice {
        let spec = catalog(name)?;
        return Ok(Loaded {
            name: spec.name.clone(),
            expected_kissing: spec.expected_kissing,
            set: minimal_vectors(&spec)?,
        });
    }
    if let Some(path) = &source.gram_file {
        let spec = LatticeSpec::new(stem(path), parse_gram(&read(path)?)?)?;
        return Ok(Loaded {
            name: spec.name.clone(),
            expected_kissing: None,
            set: minimal_vectors(&spec)?,
        });
    }
    let path = source.vectors_file.as_ref().expect("clap enforces one input source");
    let file = parse_vectors(&read(path)?)?;
    let gram = match &input.vectors_gram {
        Some(g) => parse_gram(&read(g)?)?,
        None => GramMatrix::identity(file.rank),
    };
    if gram.dim() != file.rank {
        return Err(Error::Shape(format!(
            "vector file has rank {}, gram matrix has dimension {}",
            file.rank,
            gram.dim()
        )));
    }
    if !gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(Loaded {
        name: stem(path),
        expected_kissing: None,
        set: VectorSet::new(gram, file.min_norm, file.vectors)?,
    })
}

fn options(a: &AnalysisArgs) -> AnalysisOptions {
    AnalysisOptions {
        t_max: a.t_max,
        halving: a.seed.map_or(Halving::Canonical, Halving::Seeded),
        rank_cap: a.rank_certificate.then_some(a.cap),
    }
}

fn emit(cli: &Cli, to: Option<&Path>, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> sphdesign::Result<()> {
    let nums = Numbers { decimal: cli.decimal };
    let body = match cli.format {
        Format::Text => text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&nums.json(json())).expect("serializable");
            s.push('\n');
            s
        }
    };
    match to {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn verdict_code(ok: bool) -> u8 {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn execute(cli: &Cli) -> sphdesign::Result<u8> {
    let nums = Numbers { decimal: cli.decimal };
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Lattices => {
            emit(
                cli,
                out,
                || {
                    let mut out = String::new();
                    for e in CATALOG {
                        let status = if e.gram_file.is_some() { "" } else { "  [data required]" };
                        out.push_str(&format!(
                            "{:<8} kissing {:>6}  min norm {:<4} {}{status}\n",
                            e.name,
                            e.kissing,
                            sphdesign::rat(e.min_norm.0, e.min_norm.1),
                            e.description
                        ));
                    }
                    out
                },
                || {
                    Value::Array(
                        CATALOG
                            .iter()
                            .map(|e| {
                                serde_json::json!({
                                    "name": e.name,
                                    "description": e.description,
                                    "kissing": e.kissing,
                                    "min_norm": sphdesign::rat(e.min_norm.0, e.min_norm.1).to_string(),
                                    "data": e.gram_file.is_some(),
                                })
                            })
                            .collect(),
                    )
                },
            )?;
            Ok(PASS)
        }
        Command::Minvec { input } => {
            let loaded = load(input)?;
            let set = &loaded.set;
            let summary = serde_json::json!({
                "lattice": loaded.name,
                "rank": set.rank(),
                "min_norm": set.min_norm().to_string(),
                "count": set.len(),
            });
            // the vector-set file is the data product; the summary always goes to stdout
            if let Some(path) = &cli.output {
                std::fs::write(path, write_vectors(set.rank(), set.min_norm(), set.vectors()))?;
            }
            emit(cli, None, || minvec_text(set, nums), || summary)?;
            Ok(verdict_code(loaded.expected_kissing.is_none_or(|k| k == set.len())))
        }
        Command::Spectrum { input } => {
            let loaded = load(input)?;
            let spec = pair_spectrum(&loaded.set);
            emit(
                cli,
                out,
                || render::spectrum_text(&loaded.name, &spec, nums),
                || render::spectrum_json(&loaded.name, &spec),
            )?;
            Ok(PASS)
        }
        Command::Verify { input, analysis } => {
            let loaded = load(input)?;
            let a = analyze_set(&loaded.name, &loaded.set, loaded.expected_kissing, &options(analysis))?;
            emit(cli, out, || render::analysis_text(&a, nums), || a.to_json())?;
            Ok(verdict_code(a.verdict() == Verdict::Pass))
        }
        Command::Embed { input, analysis } => {
            let loaded = load(input)?;
            let opts = options(analysis);
            let half = halved(&loaded.set, opts.halving)?.ok_or_else(|| {
                Error::Invalid("set contains some but not all antipodal pairs; cannot choose X'".into())
            })?;
            let e = analyze_embedding(&half, &pair_spectrum(&half), &opts)?;
            let ok = e.theorem.is_3design && e.venkov3_holds && e.rank_certificate.is_none_or(|c| c.holds());
            emit(
                cli,
                out,
                || format!("{}: {} source points\n{}", loaded.name, half.len(), render::embedded_text(&e, nums)),
                || {
                    let mut v = e.to_json();
                    v["lattice"] = Value::String(loaded.name.clone());
                    v
                },
            )?;
            Ok(verdict_code(ok))
        }
        Command::Reproduce { example, analysis } => {
            let rows = reproduce_table(*example, &options(analysis))?;
            emit(
                cli,
                out,
                || render::table_text(&rows, nums),
                || Value::Array(rows.iter().map(|r| r.to_json()).collect()),
            )?;
            Ok(verdict_code(rows.iter().all(|r| r.verdict != Verdict::Fail)))
        }
        Command::ExportCoords {
            input,
            precision,
            seed,
            cap,
        } => {
            let loaded = load(input)?;
            let halving = seed.map_or(Halving::Canonical, Halving::Seeded);
            let half = halved(&loaded.set, halving)?
                .ok_or_else(|| Error::Invalid("set contains some but not all antipodal pairs".into()))?;
            let points = realize_coordinates(&half, *precision, *cap)?;
            emit(
                cli,
                out,
                || write_coordinates(&points, *precision),
                || serde_json::json!({ "D": points.first().map_or(0, Vec::len), "points": points }),
            )?;
            Ok(PASS)
        }
    }
}

fn minvec_text(set: &VectorSet, nums: Numbers) -> String {
    format!("min_norm {}, {} vectors\n", nums.q(set.min_norm()), set.len())
}
