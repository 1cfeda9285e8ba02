use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use convgoppa::classify::{sweep, DEFAULT_SWEEP_BUDGET};
use convgoppa::convcode::DEFAULT_SEARCH_BUDGET;
use convgoppa::field::FieldOp;
use convgoppa::goppa::{
    build_geometric_family, build_power_family, build_unshifted_family, evaluation_matrix,
    parity_matrix, Construction,
};
use convgoppa::{
    analyze, dual_check, AnalysisOptions, CodeAnalysis, CodeFile, ConvCode, DualReport,
    FieldElement, FieldSpec, GammaVector, GoppaSpec, SweepReport,
};
use serde::Serialize;

use crate::error::{core, CliError};
use crate::{BuildKind, Cli, Command, FieldCmd, Format};

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Field { op, args } => cmd_field(cli, *op, args),
        Command::Build { kind } => cmd_build(cli, kind),
        Command::Analyze { code } => cmd_analyze(cli, code),
        Command::Dual { spec } => cmd_dual(cli, spec),
        Command::Sweep { spec } => cmd_sweep(cli, spec),
    }
}

fn field(cli: &Cli) -> Result<FieldSpec, CliError> {
    let s = cli
        .field
        .as_deref()
        .ok_or_else(|| CliError::Usage("--field is required".into()))?;
    s.parse::<FieldSpec>().map_err(core)
}

/// A file's field must agree with `--field` when both are given.
fn check_field(cli: &Cli, found: &FieldSpec) -> Result<(), CliError> {
    if cli.field.is_some() && &field(cli)? != found {
        return Err(CliError::Usage(format!(
            "file is over {found}, not {}",
            field(cli)?
        )));
    }
    Ok(())
}

fn element(f: &FieldSpec, s: &str) -> Result<FieldElement, CliError> {
    f.parse_element(s).map_err(core)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A Goppa spec file, or a code file that carries one.
fn read_spec(path: &Path) -> Result<GoppaSpec, CliError> {
    let text = read(path)?;
    match serde_json::from_str::<GoppaSpec>(&text) {
        Ok(spec) => Ok(spec),
        Err(source) => match serde_json::from_str::<CodeFile>(&text) {
            Ok(CodeFile {
                spec: Some(spec), ..
            }) => Ok(spec),
            _ => Err(CliError::Parse {
                path: path.to_owned(),
                source,
            }),
        },
    }
}

fn options(cli: &Cli) -> AnalysisOptions {
    AnalysisOptions {
        j_max: cli.jmax,
        search_budget: cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        ..AnalysisOptions::default()
    }
}

#[derive(Serialize)]
struct FieldInfo {
    field: FieldSpec,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Option<u32>,
}

fn cmd_field(cli: &Cli, op: Option<FieldCmd>, args: &[String]) -> Result<(), CliError> {
    let f = field(cli)?;
    let Some(op) = op else {
        let info = FieldInfo {
            field: f.clone(),
            p: f.p(),
            m: f.m(),
            q: f.q(),
            modulus: f.modulus().to_vec(),
            primitive: f.find_primitive().ok().map(FieldElement::index),
        };
        let text = match cli.format {
            Some(Format::Json) => json(&info),
            _ => {
                let prim = info.primitive.map_or("-".to_string(), |c| c.to_string());
                format!(
                    "{f}: p={} m={} q={} modulus={:?} primitive={prim}\n",
                    info.p, info.m, info.q, info.modulus
                )
            }
        };
        return emit(cli, &text);
    };
    let result = match op {
        FieldCmd::Primitive => f.find_primitive().map_err(core)?.index().to_string(),
        FieldCmd::Order => {
            let [x] = args else {
                return Err(CliError::Usage("order takes one operand".into()));
            };
            f.element_order(element(&f, x)?).map_err(core)?.to_string()
        }
        FieldCmd::Pow => {
            let [x, e] = args else {
                return Err(CliError::Usage(
                    "pow takes an element and an exponent".into(),
                ));
            };
            let e: u64 = e
                .parse()
                .map_err(|_| CliError::Usage(format!("bad exponent {e:?}")))?;
            f.arith(FieldOp::Pow(e), &[element(&f, x)?])
                .map_err(core)?
                .index()
                .to_string()
        }
        _ => {
            let fop = match op {
                FieldCmd::Add => FieldOp::Add,
                FieldCmd::Sub => FieldOp::Sub,
                FieldCmd::Neg => FieldOp::Neg,
                FieldCmd::Mul => FieldOp::Mul,
                _ => FieldOp::Inv,
            };
            let xs = args
                .iter()
                .map(|a| element(&f, a))
                .collect::<Result<Vec<_>, _>>()?;
            f.arith(fop, &xs).map_err(core)?.index().to_string()
        }
    };
    emit(cli, &format!("{result}\n"))
}

fn describe_code(code: &ConvCode) -> String {
    let mut s = String::new();
    let rows: Vec<String> = (0..code.k())
        .map(|i| {
            let r: Vec<String> = code.gen().row(i).iter().map(|p| p.to_string()).collect();
            format!("({})", r.join(", "))
        })
        .collect();
    writeln!(s, "field {}", code.field()).unwrap();
    writeln!(s, "gen   {}", rows.join(" ")).unwrap();
    for (j, g) in code.gen().coeff_decomposition().iter().enumerate() {
        writeln!(s, "G_{j}   {g}").unwrap();
    }
    s
}

fn cmd_build(cli: &Cli, kind: &BuildKind) -> Result<(), CliError> {
    let built: Construction = match kind {
        BuildKind::PowerFamily { n, r, a, c } => {
            let f = field(cli)?;
            let mut scalars = a
                .iter()
                .map(|x| element(&f, x))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(n) = *n {
                if scalars.len() == 1 {
                    scalars = vec![scalars[0]; n];
                } else if scalars.len() != n {
                    return Err(CliError::Usage(format!(
                        "--a has {} values, --n is {n}",
                        scalars.len()
                    )));
                }
            }
            let c = match c {
                Some(c) => element(&f, c)?,
                None => f.find_primitive().map_err(core)?,
            };
            build_power_family(&f, *r, &scalars, c).map_err(core)?
        }
        BuildKind::GeometricFamily { n, r, a, b } => {
            let f = field(cli)?;
            build_geometric_family(&f, *n, *r, element(&f, a)?, element(&f, b)?).map_err(core)?
        }
        BuildKind::Unshifted { n, r, a } => {
            let f = field(cli)?;
            build_unshifted_family(&f, *n, *r, element(&f, a)?).map_err(core)?
        }
        BuildKind::Custom { spec, lambda } => {
            let spec = read_spec(spec)?;
            check_field(cli, spec.field())?;
            let f = spec.field().clone();
            let lambdas = lambda
                .iter()
                .map(|x| element(&f, x))
                .collect::<Result<Vec<_>, _>>()?;
            let gamma = GammaVector::new(&f, lambdas).map_err(core)?;
            Construction::from_spec(spec, gamma).map_err(core)?
        }
    };
    let file = CodeFile::from_construction(&built);
    let summary = describe_code(&built.code);
    match (&cli.out, cli.format) {
        (Some(path), _) => {
            write(path, &json(&file))?;
            print!("{summary}");
        }
        (None, Some(Format::Text)) => print!("{summary}"),
        (None, _) => {
            print!("{}", json(&file));
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn describe_analysis(a: &CodeAnalysis) -> String {
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut s = String::new();
    writeln!(s, "field      {}", a.field).unwrap();
    writeln!(s, "n k delta  {} {} {}", a.n, a.k, a.delta).unwrap();
    writeln!(s, "ext degree {}", a.ext_degree).unwrap();
    writeln!(s, "basic      {}", a.basic).unwrap();
    writeln!(s, "canonical  {}", a.canonical).unwrap();
    writeln!(s, "singleton  {}", opt(a.singleton)).unwrap();
    writeln!(
        s,
        "df lower   {} ({})",
        opt(a.df_lower),
        serde_json::to_value(a.df_lower_provenance)
            .unwrap()
            .as_str()
            .unwrap_or("")
    )
    .unwrap();
    writeln!(
        s,
        "df upper   {} ({}, witness {:?})",
        a.df_upper, a.df_upper_provenance, a.witness
    )
    .unwrap();
    if let Some(c) = &a.certificate {
        for check in &c.checks {
            writeln!(
                s,
                "  {:<24} {} (distance {}, required {})",
                check.name,
                if check.passed { "ok" } else { "FAILED" },
                opt(check.distance),
                check.required
            )
            .unwrap();
        }
    }
    writeln!(
        s,
        "mds        {}",
        serde_json::to_value(a.mds).unwrap().as_str().unwrap_or("")
    )
    .unwrap();
    for note in &a.notes {
        writeln!(s, "note: {note}").unwrap();
    }
    s
}

fn cmd_analyze(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let file: CodeFile = serde_json::from_str(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })?;
    check_field(cli, &file.field)?;
    let code = file.code().map_err(core)?;
    let a = analyze(&code, &options(cli)).map_err(core)?;
    let text = match cli.format {
        Some(Format::Text) => describe_analysis(&a),
        _ => json(&a),
    };
    emit(cli, &text)
}

#[derive(Serialize)]
struct DualOutput {
    spec: GoppaSpec,
    h: Vec<Vec<String>>,
    report: DualReport,
}

fn cmd_dual(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let spec = read_spec(path)?;
    check_field(cli, spec.field())?;
    let h = parity_matrix(&spec).map_err(core)?;
    let code = ConvCode::new(evaluation_matrix(&spec)).map_err(core)?;
    let report = dual_check(&code, &h).map_err(core)?;
    let out = DualOutput {
        spec,
        h: h.to_strings(),
        report,
    };
    let text = match cli.format {
        Some(Format::Text) => {
            let mut s = String::new();
            for row in &out.h {
                writeln!(s, "H  {}", row.join("  ")).unwrap();
            }
            let r = &out.report;
            writeln!(s, "orthogonal {}  rank {}", r.orthogonal, r.rank).unwrap();
            writeln!(
                s,
                "degree     code {}  dual {}  equal {}",
                r.primal_degree, r.dual_degree, r.degrees_match
            )
            .unwrap();
            s
        }
        _ => json(&out),
    };
    emit(cli, &text)
}

fn tally(r: &SweepReport) -> String {
    format!(
        "total {}  proven {}  refuted {}  unknown {}\n",
        r.total, r.proven, r.refuted, r.unknown
    )
}

fn cmd_sweep(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let spec = read_spec(path)?;
    check_field(cli, spec.field())?;
    let report = sweep(&spec, &options(cli), DEFAULT_SWEEP_BUDGET).map_err(core)?;
    let csv = report.to_csv_string().map_err(core)?;
    match &cli.out {
        Some(stem) => {
            write(&with_ext(stem, "csv"), &csv)?;
            write(&with_ext(stem, "json"), &json(&report))?;
            print!("{}", tally(&report));
        }
        None => match cli.format {
            Some(Format::Json) => print!("{}", json(&report)),
            Some(Format::Text) => print!("{}{csv}", tally(&report)),
            _ => print!("{csv}"),
        },
    }
    Ok(())
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut p = stem.to_owned();
    if matches!(p.extension().and_then(|e| e.to_str()), Some("csv" | "json")) {
        p.set_extension("");
    }
    let mut s = p.into_os_string();
    s.push(".");
    s.push(ext);
    s.into()
}
