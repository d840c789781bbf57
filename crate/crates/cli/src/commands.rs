use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use skewsd::analysis::{audit_zero_one, zero_one_bound, LevelDecomposition};
use skewsd::constructions::{
    ffp_family, ffp_in_standard_range, ffp_size, maximal_chain, parse_qn, projective_plane_lines,
    qn_embed_family, qn_points, qn_to_text, singletons, uniform_layer, PlaneSpec,
    QN_FIRST_COORDINATE_NOTE,
};
use skewsd::polycert::{
    certify_independent, certify_with_one, triangular_certificate, Certificate,
};
use skewsd::search::{ex_sd, random_family, search, SearchConfig, SearchMode};
use skewsd::{sd_profile, DistanceSpec, SetFamily};

use crate::args::{
    AnalyzeArgs, CertifyArgs, Cli, Command, ConstructArgs, Format, Kind, ReportArgs, SearchArgs,
    SolverArgs, VerifyArgs,
};
use crate::status;
use crate::UsageError;

pub const CERTIFICATE_SCHEMA: &str = "skewsd.certificate/1";
pub const VERIFY_SCHEMA: &str = "skewsd.verify/1";
pub const SEARCH_SCHEMA: &str = "skewsd.search/1";
pub const AUDIT_SCHEMA: &str = "skewsd.audit/1";
pub const REPORT_SCHEMA: &str = "skewsd.report/1";
pub const CONSTRUCT_SCHEMA: &str = "skewsd.construct/1";

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Construct(a) => construct(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::Certify(a) => certify(a, cli.format),
        Command::Search(a) => search_cmd(a, cli.format),
        Command::Analyze(a) => analyze(a, cli.format),
        Command::Report(a) => report(a, cli.format),
    }
}

fn emit_json(value: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn set_strings(fam: &SetFamily) -> Vec<String> {
    fam.iter().map(ToString::to_string).collect()
}

/// Reads a family file, or a `Q^n` point file (first header `q`), which is
/// replaced by its embedding into `2^[(q-1)n]`.
pub fn load_family(path: &Path) -> Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().next() == Some("q") {
        let (_, _, points) =
            parse_qn(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(qn_embed_family(&points)?);
    }
    SetFamily::parse_with(&text, true).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct(a: &ConstructArgs, format: Format) -> Result<u8> {
    let mut warnings = Vec::new();
    let (text, size, ground, predicted): (String, usize, usize, Option<u128>) = match a.kind {
        Kind::Qn => {
            let points = qn_points(a.q, a.n)?;
            warnings.push(QN_FIRST_COORDINATE_NOTE.to_string());
            let predicted = ((a.q - 1) * (a.n - 1)) as u128;
            (
                qn_to_text(a.q, a.n, &points),
                points.len(),
                a.n,
                Some(predicted),
            )
        }
        kind => {
            let (fam, predicted) = match kind {
                Kind::Singletons => (singletons(a.n)?, Some(a.n as u128)),
                Kind::Layer => {
                    let fam = uniform_layer(a.n, a.k)?;
                    let c =
                        (0..a.k).fold(1u128, |acc, i| acc * (a.n - i) as u128 / (i + 1) as u128);
                    (fam, Some(c))
                }
                Kind::Chain => (maximal_chain(a.n)?, Some(a.n as u128 + 1)),
                Kind::Ffp => {
                    if !ffp_in_standard_range(a.n, a.t) {
                        warnings.push(format!(
                            "n = {} < 2(t+2) = {}: outside the range where this construction is compared with the upper bound",
                            a.n,
                            2 * (a.t + 2)
                        ));
                    }
                    (ffp_family(a.n, a.t)?, Some(ffp_size(a.n, a.t)?))
                }
                Kind::Plane => (
                    projective_plane_lines(a.q)?,
                    Some(PlaneSpec::new(a.q)?.size() as u128),
                ),
                Kind::Random => {
                    let seed = a
                        .seed
                        .ok_or_else(|| UsageError("construct random requires --seed".into()))?;
                    (random_family(a.n, &a.spec, a.mode.into(), seed)?, None)
                }
                Kind::Qn => unreachable!(),
            };
            (fam.to_text(), fam.len(), fam.n(), predicted)
        }
    };
    write_output(a.out.as_ref(), &text)?;

    let summary = json!({
        "schema": CONSTRUCT_SCHEMA,
        "kind": format!("{:?}", a.kind).to_lowercase(),
        "n": ground,
        "size": size,
        "predicted": predicted,
        "file": a.out,
        "warnings": warnings,
    });
    if a.out.is_some() {
        match format {
            Format::Json => emit_json(&summary)?,
            Format::Text => {
                for w in &warnings {
                    println!("note: {w}");
                }
                match predicted {
                    Some(p) => println!("{} sets (predicted {p})", size),
                    None => println!("{} sets", size),
                }
            }
        }
    } else {
        for w in &warnings {
            eprintln!("note: {w}");
        }
    }
    let matches = predicted.is_none_or(|p| p == size as u128);
    Ok(if matches {
        status::OK
    } else {
        status::VIOLATED
    })
}

fn verify(a: &VerifyArgs, format: Format) -> Result<u8> {
    let fam = load_family(&a.family)?;
    a.spec.check_within(fam.n())?;
    let mode: SearchMode = a.mode.into();
    let holds = mode.holds(&fam, &a.spec)?;
    let profile: Vec<usize> = sd_profile(&fam)
        .map(|p| p.into_iter().collect())
        .unwrap_or_default();
    let violation = fam.first_violation(&a.spec).map(|v| {
        json!({
            "i": v.i,
            "j": v.j,
            "first": fam.sets()[v.i].to_string(),
            "second": fam.sets()[v.j].to_string(),
            "distance": v.distance,
        })
    });
    match format {
        Format::Json => emit_json(&json!({
            "schema": VERIFY_SCHEMA,
            "family_file": a.family,
            "n": fam.n(),
            "m": fam.len(),
            "L": a.spec,
            "mode": mode,
            "holds": holds,
            "sd_profile": profile,
            "first_violation": violation,
        }))?,
        Format::Text => {
            println!(
                "{} sets on [{}]: {}-{} {}",
                fam.len(),
                fam.n(),
                format_args!("{{{}}}", a.spec),
                mode,
                if holds { "holds" } else { "violated" }
            );
            println!("sd profile: {:?}", profile);
            if let Some(v) = violation {
                println!(
                    "first violating pair: #{} {} and #{} {} at sd = {}",
                    v["i"],
                    v["first"].as_str().unwrap_or(""),
                    v["j"],
                    v["second"].as_str().unwrap_or(""),
                    v["distance"]
                );
            }
        }
    }
    Ok(if holds { status::OK } else { status::VIOLATED })
}

fn certificate_json(family_file: &Path, cert: &Certificate, tri: &Certificate) -> Result<Value> {
    let mut v = to_json(cert)?;
    let obj = v
        .as_object_mut()
        .expect("certificate serializes to an object");
    obj.insert("schema".into(), json!(CERTIFICATE_SCHEMA));
    obj.insert("family_file".into(), json!(family_file));
    obj.insert(
        "triangular".into(),
        json!({
            "pattern_holds": tri.pattern_holds(),
            "rank": tri.rank,
            "verdict": tri.verdict,
            "diagnostics": tri.diagnostics,
        }),
    );
    Ok(v)
}

fn certify(a: &CertifyArgs, format: Format) -> Result<u8> {
    let fam = load_family(&a.family)?;
    a.spec.check_within(fam.n())?;
    let cert = if a.with_one {
        certify_with_one(&fam, &a.spec)?
    } else {
        certify_independent(&fam, &a.spec)?
    };
    let tri = triangular_certificate(&fam, &a.spec)?;
    let doc = certificate_json(&a.family, &cert, &tri)?;
    if let Some(out) = &a.out {
        fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
    }
    match format {
        Format::Json => emit_json(&doc)?,
        Format::Text => {
            let rows = cert.row_count();
            println!(
                "{}: rank {} of {} rows{} (basis dimension {}, {} columns used)",
                if cert.is_independent() {
                    "independent"
                } else {
                    "dependent"
                },
                cert.rank,
                rows,
                if cert.with_one {
                    " including the constant 1"
                } else {
                    ""
                },
                cert.basis_dim,
                cert.diagnostics.columns_used,
            );
            match &tri.diagnostics.first_violation {
                None => println!(
                    "triangular pattern holds, diagonal {}",
                    tri.diagnostics.diagonal.first().map_or("-", String::as_str)
                ),
                Some(v) => println!(
                    "triangular pattern fails at row {} column {}: value {}",
                    v.row, v.column, v.value
                ),
            }
            if let Some(note) = &cert.diagnostics.note {
                println!("note: {note}");
            }
        }
    }
    Ok(if cert.is_independent() && tri.pattern_holds() {
        status::OK
    } else {
        status::VIOLATED
    })
}

fn search_config(s: &SolverArgs) -> Result<SearchConfig> {
    let time_limit = match s.time_limit {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return Err(UsageError(format!(
                "time limit must be a positive number of seconds, got {t}"
            ))
            .into())
        }
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    if s.threads == Some(0) {
        return Err(UsageError("thread count must be at least 1".into()).into());
    }
    Ok(SearchConfig {
        cap: s.cap,
        threads: s.threads,
        time_limit,
    })
}

fn search_cmd(a: &SearchArgs, format: Format) -> Result<u8> {
    let config = search_config(&a.solver)?;
    let mode: SearchMode = a.mode.into();
    let res = search(a.n, &a.spec, mode, &config)?;
    if let Some(path) = &a.witness {
        fs::write(path, res.witness.to_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match format {
        Format::Json => emit_json(&json!({
            "schema": SEARCH_SCHEMA,
            "n": a.n,
            "L": a.spec,
            "mode": mode,
            "optimum": res.optimum,
            "witness_file": a.witness,
            "nodes": res.nodes_explored,
            "elapsed": res.elapsed.as_secs_f64(),
            "exact": res.exact,
        }))?,
        Format::Text => {
            let name = match mode {
                SearchMode::Sd => "ex_sd",
                SearchMode::CloseSperner => "max close-Sperner",
            };
            println!(
                "{name}({}, {{{}}}) {} {}  ({} nodes, {:.3} s)",
                a.n,
                a.spec,
                if res.exact { "=" } else { "≥" },
                res.optimum,
                res.nodes_explored,
                res.elapsed.as_secs_f64()
            );
            if !res.exact {
                println!("time limit reached: the value is a lower bound only");
            }
            if a.witness.is_none() {
                println!("witness: {}", set_strings(&res.witness).join(" "));
            }
        }
    }
    Ok(if res.exact {
        status::OK
    } else {
        status::RESOURCE
    })
}

fn analyze(a: &AnalyzeArgs, format: Format) -> Result<u8> {
    let fam = load_family(&a.family)?;
    let audit = audit_zero_one(&fam)?;
    match format {
        Format::Json => {
            let mut v = to_json(&audit)?;
            let obj = v.as_object_mut().expect("audit serializes to an object");
            obj.insert("schema".into(), json!(AUDIT_SCHEMA));
            obj.insert("family_file".into(), json!(a.family));
            emit_json(&v)?;
        }
        Format::Text => {
            for step in &audit.steps {
                println!(
                    "n = {}: |F| = {} = |G| {} + |H| {}, x = {}, checks {}, step bound {}",
                    step.n,
                    step.size,
                    step.g_size,
                    step.h_size,
                    step.special_element,
                    if step.checks.all() && step.nesting_violations.is_empty() {
                        "pass"
                    } else {
                        "FAIL"
                    },
                    step.bound
                );
            }
            println!(
                "base n = {}: {} sets, bound {}",
                audit.base_n, audit.base_size, audit.base_bound
            );
            println!(
                "|F| = {} against binom({n},2)+2*{n}-1 = {}: {}",
                audit.size,
                audit.final_bound,
                if audit.passed { "pass" } else { "FAIL" },
                n = audit.n
            );
        }
    }
    Ok(if audit.passed {
        status::OK
    } else {
        status::VIOLATED
    })
}

#[derive(Debug, Serialize)]
struct ReportRow {
    n: usize,
    searched: usize,
    formula: u128,
    #[serde(rename = "match")]
    matches: bool,
    exact: bool,
    construction: Option<u128>,
    /// Levels of the witness certified as independent `{1}`-close Sperner systems.
    levels_certified: usize,
    levels: usize,
    audit_passed: bool,
}

fn report_row(n: usize, spec: &DistanceSpec, config: &SearchConfig) -> Result<ReportRow> {
    let res = ex_sd(n, spec, config)?;
    let formula = zero_one_bound(n);
    let one = DistanceSpec::new([1])?;
    let decomp = LevelDecomposition::new(&res.witness)?;
    let mut levels_certified = 0;
    for sets in decomp.levels().values() {
        let level = SetFamily::new_wide(n, sets.clone())?;
        if certify_independent(&level, &one)?.is_independent() {
            levels_certified += 1;
        }
    }
    Ok(ReportRow {
        n,
        searched: res.optimum,
        formula,
        matches: res.optimum as u128 == formula,
        exact: res.exact,
        construction: ffp_size(n, 1).ok(),
        levels_certified,
        levels: decomp.levels().len(),
        audit_passed: audit_zero_one(&res.witness)?.passed,
    })
}

fn report(a: &ReportArgs, format: Format) -> Result<u8> {
    let config = search_config(&a.solver)?;
    let spec = DistanceSpec::range(0, 1)?;
    let rows = (a.from..=a.to)
        .map(|n| report_row(n, &spec, &config))
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => emit_json(&json!({ "schema": REPORT_SCHEMA, "L": spec, "rows": rows }))?,
        Format::Text => {
            println!(
                "{:>3} {:>9} {:>8} {:>6} {:>13} {:>7} {:>6}",
                "n", "searched", "formula", "match", "construction", "levels", "audit"
            );
            for r in &rows {
                println!(
                    "{:>3} {:>8}{} {:>8} {:>6} {:>13} {:>7} {:>6}",
                    r.n,
                    r.searched,
                    if r.exact { " " } else { "+" },
                    r.formula,
                    if r.matches { "yes" } else { "NO" },
                    r.construction.map_or("-".to_string(), |c| c.to_string()),
                    format!("{}/{}", r.levels_certified, r.levels),
                    if r.audit_passed { "pass" } else { "FAIL" },
                );
            }
        }
    }
    if rows.iter().any(|r| !r.exact) {
        return Ok(status::RESOURCE);
    }
    let ok = rows
        .iter()
        .all(|r| r.matches && r.audit_passed && r.levels_certified == r.levels);
    Ok(if ok { status::OK } else { status::VIOLATED })
}
