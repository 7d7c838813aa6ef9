//! The `detect` subcommand: build a state from flags or a file, choose a
//! witness and an approximation, assemble the full report, and print it as
//! human text, JSON, or flat CSV.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use spa_detect::{
    full_report, parse_state_json, CriterionOutcome, DetectionReport, DualEvaluation,
    Family1Params, Family2Params, FamilyTag, ParsedState, ReportConfig, SpaSelection, Verdict,
    WitnessSelection, C64,
};

use crate::textfmt::{complex_literal, csv_field, parse_complex, sig6};
use crate::{Failure, EXIT_DETECTED, EXIT_NOT_DETECTED};

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    /// Two-qubit family diag(a, b, b, a) with coherence f between the
    /// middle levels (a + b = 1/2).
    Rho1,
    /// Qutrit-qubit one-parameter mixture indexed by alpha in [0, 1].
    Rho2,
}

fn parse_f_flag(text: &str) -> Result<C64, String> {
    parse_complex(text)
}

#[derive(Args)]
pub struct DetectArgs {
    /// Named state family (alternative to --file).
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Family rho1: diagonal weight a.
    #[arg(long)]
    a: Option<f64>,
    /// Family rho1: diagonal weight b (must satisfy a + b = 1/2).
    #[arg(long)]
    b: Option<f64>,
    /// Family rho1: complex coherence, e.g. 0.4+0.1i.
    #[arg(long, value_parser = parse_f_flag)]
    f: Option<C64>,
    /// Family rho2: mixing weight alpha in [0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// JSON state file (alternative to --family).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Force the generic noise-mix approximation at this weight q.
    #[arg(long)]
    q: Option<f64>,
    /// JSON file holding a pure-state vector [[re,im], ...] to define the
    /// witness, instead of the automatic choice.
    #[arg(long)]
    witness_file: Option<PathBuf>,
    /// Print the full report as JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Print the report as flat key,value CSV.
    #[arg(long)]
    csv: bool,
}

pub fn run(args: &DetectArgs) -> Result<i32, Failure> {
    let parsed = load_state(args)?;
    let witness = choose_witness(args, &parsed)?;
    let spa = match args.q {
        Some(q) => SpaSelection::GenericQ(q),
        None => SpaSelection::Auto,
    };
    let config = ReportConfig {
        description: parsed.description.clone(),
        witness,
        spa,
    };
    let report = full_report(&parsed.state, &config)?;

    if args.json {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::numerical(format!("report serialization failed: {e}")))?;
        println!("{text}");
    } else if args.csv {
        print!("{}", report_csv(&report));
    } else {
        print!("{}", report_human(&report));
    }
    Ok(if report.overall == Verdict::Entangled {
        EXIT_DETECTED
    } else {
        EXIT_NOT_DETECTED
    })
}

fn load_state(args: &DetectArgs) -> Result<ParsedState, Failure> {
    match (&args.family, &args.file) {
        (Some(_), Some(_)) => Err(Failure::input(
            "--family and --file are mutually exclusive; give exactly one input source",
        )),
        (None, None) => Err(Failure::input(
            "no input source: give --family with its parameters, or --file",
        )),
        (Some(FamilyArg::Rho1), None) => {
            if args.alpha.is_some() {
                return Err(Failure::input("--alpha does not apply to family rho1"));
            }
            let (a, b, f) = match (args.a, args.b, args.f) {
                (Some(a), Some(b), Some(f)) => (a, b, f),
                _ => {
                    return Err(Failure::input(
                        "family rho1 needs --a, --b and --f (with a + b = 1/2)",
                    ))
                }
            };
            if (a + b - 0.5).abs() > 1e-9 {
                return Err(Failure::input(format!(
                    "family rho1 requires a + b = 1/2, got a + b = {}",
                    a + b
                )));
            }
            let params = Family1Params { a, f };
            let state = spa_detect::build_family1(&params)?;
            Ok(ParsedState {
                state,
                description: format!("family rho1 (a={a}, b={b}, f={})", complex_literal(f)),
                family: Some(FamilyTag::Family1(params)),
            })
        }
        (Some(FamilyArg::Rho2), None) => {
            for (flag, set) in [
                ("--a", args.a.is_some()),
                ("--b", args.b.is_some()),
                ("--f", args.f.is_some()),
            ] {
                if set {
                    return Err(Failure::input(format!(
                        "{flag} does not apply to family rho2"
                    )));
                }
            }
            let alpha = args
                .alpha
                .ok_or_else(|| Failure::input("family rho2 needs --alpha"))?;
            let params = Family2Params { alpha };
            let state = spa_detect::build_family2(&params)?;
            Ok(ParsedState {
                state,
                description: format!("family rho2 (alpha={alpha})"),
                family: Some(FamilyTag::Family2(params)),
            })
        }
        (None, Some(path)) => {
            for (flag, set) in [
                ("--a", args.a.is_some()),
                ("--b", args.b.is_some()),
                ("--f", args.f.is_some()),
                ("--alpha", args.alpha.is_some()),
            ] {
                if set {
                    return Err(Failure::input(format!(
                        "{flag} only applies to --family input"
                    )));
                }
            }
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let mut parsed = parse_state_json(&text)?;
            parsed.description = format!("{} ({})", parsed.description, path.display());
            Ok(parsed)
        }
    }
}

fn choose_witness(args: &DetectArgs, parsed: &ParsedState) -> Result<WitnessSelection, Failure> {
    if let Some(path) = &args.witness_file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let pairs: Vec<[f64; 2]> = serde_json::from_str(&text).map_err(|e| {
            Failure::input(format!(
                "{}: expected a JSON array of [re, im] pairs: {e}",
                path.display()
            ))
        })?;
        let psi: Vec<C64> = pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        return Ok(WitnessSelection::Pure { psi });
    }
    Ok(match parsed.family {
        Some(FamilyTag::Family1(p)) => WitnessSelection::Family1 { f: p.f },
        Some(FamilyTag::Family2(p)) => WitnessSelection::Family2 { alpha: p.alpha },
        None => WitnessSelection::Tailored,
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Entangled => "Entangled",
        Verdict::NotDetected => "NotDetected",
        Verdict::Inconclusive => "Inconclusive",
        Verdict::Degenerate => "Degenerate",
    }
}

fn criterion_line(out: &CriterionOutcome) -> String {
    let c = match out.concurrence {
        Some(c) => format!(", C = {}", sig6(c)),
        None => String::new(),
    };
    format!(
        "{}: quantity = {}, threshold = {}{c} -> {}",
        out.label,
        sig6(out.quantity),
        sig6(out.threshold),
        verdict_name(out.verdict)
    )
}

fn dual_lines(prefix: &str, dual: &DualEvaluation, text: &mut String) {
    text.push_str(&format!("{prefix} {}\n", criterion_line(&dual.measured)));
    if let Some(w) = &dual.wootters {
        text.push_str(&format!("{prefix} {}\n", criterion_line(w)));
    }
}

fn spectrum_line(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| sig6(*v)).collect();
    format!("[{}]", parts.join(", "))
}

fn report_human(r: &DetectionReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("state: {} ({} x {})\n", r.description, r.d1, r.d2));
    let fallback = if r.witness_fallback {
        "  [requested witness degenerate; tailored witness substituted]"
    } else {
        ""
    };
    s.push_str(&format!(
        "witness: {}  (p = {}, threshold R = {}){fallback}\n",
        r.witness_source,
        sig6(r.witness_p),
        sig6(r.threshold_r)
    ));
    let q = match r.spa_q {
        Some(q) => format!(", q = {}", sig6(q)),
        None => String::new(),
    };
    let defect = match r.spa_trace_defect {
        Some(d) => format!(", raw trace defect = {:.3e}", d),
        None => String::new(),
    };
    s.push_str(&format!("approximation: {}{q}{defect}\n", r.spa_kind));
    s.push_str(&format!(
        "fidelity (mixed witness vs state):   {}\n",
        sig6(r.fidelity_witness_avg)
    ));
    s.push_str(&format!(
        "fidelity (state vs filtered state):  {}\n",
        sig6(r.fidelity_spa_avg)
    ));
    s.push_str(&format!(
        "witness expectation Tr(W rho):       {}\n",
        sig6(r.witness_expectation)
    ));
    if let Some(w) = r.wootters {
        s.push_str(&format!(
            "spin-flip concurrence:               {}\n",
            sig6(w)
        ));
    }
    s.push_str(&format!(
        "state spectrum:    {}\n",
        spectrum_line(&r.state_spectrum)
    ));
    s.push_str(&format!(
        "transpose spectrum: {}\n",
        spectrum_line(&r.pt_spectrum)
    ));
    s.push_str(&format!(
        "filtered spectrum:  {}\n",
        spectrum_line(&r.spa_spectrum)
    ));
    s.push_str(&format!(
        "filtered lambda_min window: L = {}, lambda_min = {}, U = {}\n",
        sig6(r.eig_bounds.l),
        sig6(r.eig_bounds.lambda_min_spa),
        sig6(r.eig_bounds.u)
    ));
    s.push_str(&format!(
        "concurrence bounds: raw lower = {}, lower = {}, upper = {}\n",
        sig6(r.concurrence_bounds.lower_raw),
        sig6(r.concurrence_bounds.lower),
        sig6(r.concurrence_bounds.upper)
    ));
    s.push_str(&format!("criterion-1 {}\n", criterion_line(&r.criterion1)));
    dual_lines("criterion-2", &r.criterion2, &mut s);
    dual_lines("criterion-3", &r.criterion3, &mut s);
    let extrapolated = if r.eigen_threshold.extrapolated {
        "  [threshold extrapolated for unequal local dimensions]"
    } else {
        ""
    };
    s.push_str(&format!(
        "eigenvalue screen: lambda_min = {} vs threshold {} at q = {} -> {}{extrapolated}\n",
        sig6(r.eigen_threshold.lambda_min),
        sig6(r.eigen_threshold.threshold),
        sig6(r.eigen_threshold.q),
        verdict_name(r.eigen_threshold.verdict)
    ));
    s.push_str(&format!("overall: {}\n", verdict_name(r.overall)));
    s
}

fn report_csv(r: &DetectionReport) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("report_version".into(), r.report_version.to_string()),
        ("description".into(), r.description.clone()),
        ("d1".into(), r.d1.to_string()),
        ("d2".into(), r.d2.to_string()),
        ("witness_source".into(), r.witness_source.clone()),
        ("witness_fallback".into(), r.witness_fallback.to_string()),
        ("witness_p".into(), sig6(r.witness_p)),
        ("threshold_r".into(), sig6(r.threshold_r)),
        ("spa_kind".into(), r.spa_kind.clone()),
        ("spa_q".into(), r.spa_q.map(sig6).unwrap_or_default()),
        (
            "spa_trace_defect".into(),
            r.spa_trace_defect
                .map(|d| format!("{d:.3e}"))
                .unwrap_or_default(),
        ),
        ("fidelity_witness_avg".into(), sig6(r.fidelity_witness_avg)),
        ("fidelity_spa_avg".into(), sig6(r.fidelity_spa_avg)),
        ("witness_expectation".into(), sig6(r.witness_expectation)),
        (
            "wootters_concurrence".into(),
            r.wootters.map(sig6).unwrap_or_default(),
        ),
        ("lambda_min_spa".into(), sig6(r.eig_bounds.lambda_min_spa)),
        ("eig_lower".into(), sig6(r.eig_bounds.l)),
        ("eig_upper".into(), sig6(r.eig_bounds.u)),
        (
            "concurrence_lower_raw".into(),
            sig6(r.concurrence_bounds.lower_raw),
        ),
        ("concurrence_lower".into(), sig6(r.concurrence_bounds.lower)),
        ("concurrence_upper".into(), sig6(r.concurrence_bounds.upper)),
        (
            "criterion1_verdict".into(),
            verdict_name(r.criterion1.verdict).into(),
        ),
        (
            "criterion2_verdict".into(),
            verdict_name(r.criterion2.measured.verdict).into(),
        ),
        (
            "criterion2_spin_flip_verdict".into(),
            r.criterion2
                .wootters
                .as_ref()
                .map(|w| verdict_name(w.verdict).to_string())
                .unwrap_or_default(),
        ),
        (
            "criterion3_verdict".into(),
            verdict_name(r.criterion3.measured.verdict).into(),
        ),
        (
            "criterion3_spin_flip_verdict".into(),
            r.criterion3
                .wootters
                .as_ref()
                .map(|w| verdict_name(w.verdict).to_string())
                .unwrap_or_default(),
        ),
        (
            "eigen_threshold_verdict".into(),
            verdict_name(r.eigen_threshold.verdict).into(),
        ),
        ("overall".into(), verdict_name(r.overall).into()),
    ];
    let mut out = String::from("key,value\n");
    for (k, v) in rows.drain(..) {
        out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
    }
    out
}
