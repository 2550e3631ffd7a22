//! Report assembly behind the `spps` binary.
//!
//! Each command turns a validated [`RunConfig`] into a JSON document (or CSV
//! for `scan-snr`). Output is deterministic: fixed key order, floats rounded
//! to 12 significant digits, randomness drawn from a seeded ChaCha8 stream.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{
    bitflip_errors, collective_dephasing, collective_rotation, make_code, protection_report,
    qec_cycle, random_axis, CodeKind, CodeSpec, NoiseChannel, Readout,
};
use crate::decomp::{EncodingMap, SubsystemLayout};
use crate::linops::{partial_trace, ComplexMatrix, StateVector};
use crate::metrics::metrics_report;
use crate::pauli::{pauli_coefficients, PauliPolynomial};
use crate::rational::{parse_rational, round_sig, Scalar};
use crate::spps::{
    alpha_bound, build_full_pp, build_spps_direct, deviation, direct_optimal_weight,
    direct_report, full_pp_ratio, prepare_scaled, snr_ratio_total, spectrum_direct,
    spectrum_direct_f64, spectrum_tensor, spectrum_tensor_f64, tensor_report, EigenClass,
    WeightParam,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    ScanSnr,
    Simulate,
    Metrics,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::ScanSnr => "scan-snr",
            Command::Simulate => "simulate",
            Command::Metrics => "metrics",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Command::Analyze, Command::ScanSnr, Command::Simulate, Command::Metrics]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected json or csv)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NoiseKind {
    #[default]
    None,
    CollectiveZ,
    Collective,
}

impl NoiseKind {
    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::None => "none",
            NoiseKind::CollectiveZ => "collective-z",
            NoiseKind::Collective => "collective",
        }
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(NoiseKind::None),
            "collective-z" => Ok(NoiseKind::CollectiveZ),
            "collective" => Ok(NoiseKind::Collective),
            _ => Err(Error::Parse(format!(
                "unknown noise {s:?} (expected none, collective-z or collective)"
            ))),
        }
    }
}

/// Bit-flip error site: `none`, `x1`, `x2` or `x3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorSite(pub Option<usize>);

impl FromStr for ErrorSite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ErrorSite(None)),
            "x1" => Ok(ErrorSite(Some(1))),
            "x2" => Ok(ErrorSite(Some(2))),
            "x3" => Ok(ErrorSite(Some(3))),
            _ => Err(Error::Parse(format!("unknown error {s:?} (expected none, x1, x2 or x3)"))),
        }
    }
}

impl fmt::Display for ErrorSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("none"),
            Some(q) => write!(f, "x{q}"),
        }
    }
}

/// One validated run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub code: Option<CodeKind>,
    pub full_pp: bool,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub s: Option<usize>,
    pub a: Option<Rational64>,
    pub noise: Option<NoiseKind>,
    pub phi: Option<f64>,
    pub error: Option<ErrorSite>,
    pub seed: Option<u64>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            code: None,
            full_pp: false,
            n: None,
            l: None,
            s: None,
            a: None,
            noise: None,
            phi: None,
            error: None,
            seed: None,
            format: Format::Json,
        }
    }

    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags: [(&'static str, bool); 10] = [
            ("code", self.code.is_some()),
            ("full-pp", self.full_pp),
            ("n", self.n.is_some()),
            ("l", self.l.is_some()),
            ("s", self.s.is_some()),
            ("a", self.a.is_some()),
            ("noise", self.noise.is_some()),
            ("phi", self.phi.is_some()),
            ("error", self.error.is_some()),
            ("seed", self.seed.is_some()),
        ];
        for (name, set) in flags {
            if set {
                out.push(name);
            }
        }
        out
    }

    /// Rejects flags the command does not use and checks per-command
    /// preconditions that do not need any computation.
    pub fn validate(&self) -> Result<()> {
        let allowed: &[&str] = match self.command {
            Command::Analyze => &["code", "full-pp", "n", "l", "s", "a"],
            Command::ScanSnr => &["n", "code"],
            Command::Simulate | Command::Metrics => &["code", "a", "noise", "phi", "error", "seed"],
        };
        if let Some(flag) = self.present().into_iter().find(|f| !allowed.contains(f)) {
            return Err(Error::Parse(format!(
                "--{flag} is not accepted by {}",
                self.command.name()
            )));
        }
        if self.format == Format::Csv && self.command != Command::ScanSnr {
            return Err(Error::Parse(format!(
                "csv output is only available for scan-snr, not {}",
                self.command.name()
            )));
        }
        if let Some(a) = self.a {
            WeightParam::new(a)?;
        }
        match self.command {
            Command::Analyze => {
                let generic = self.n.is_some() || self.l.is_some() || self.s.is_some();
                let modes = [self.full_pp, self.code.is_some(), generic && !self.full_pp];
                if modes.iter().filter(|&&m| m).count() != 1 {
                    return Err(Error::Parse(
                        "analyze needs exactly one of --code, --full-pp --n, or --n --l --s".into(),
                    ));
                }
                if self.full_pp && (self.n.is_none() || self.l.is_some() || self.s.is_some() || self.a.is_some()) {
                    return Err(Error::Parse("--full-pp takes only --n".into()));
                }
                if generic && !self.full_pp && (self.n.is_none() || self.l.is_none() || self.s.is_none()) {
                    return Err(Error::Parse("a custom layout needs all of --n, --l and --s".into()));
                }
            }
            Command::ScanSnr => {
                if let Some(code) = self.code {
                    if code != CodeKind::Dfs2 {
                        return Err(Error::Parse(format!(
                            "scan-snr uses the dfs2 tensor construction, not {code}"
                        )));
                    }
                }
                let n = self.n.ok_or_else(|| Error::Parse("scan-snr needs --n (largest N)".into()))?;
                if n < 2 || n % 2 != 0 {
                    return Err(Error::InvalidLayout(format!(
                        "scan-snr needs an even largest N >= 2, got {n}"
                    )));
                }
            }
            Command::Simulate | Command::Metrics => {
                let code = self
                    .code
                    .ok_or_else(|| Error::Parse(format!("{} needs --code", self.command.name())))?;
                let error_set = matches!(self.error, Some(ErrorSite(Some(_))));
                if error_set && code != CodeKind::Qec3 {
                    return Err(Error::InvalidChannel(format!("--error applies to qec3 only, not {code}")));
                }
                let noisy = !matches!(self.noise, None | Some(NoiseKind::None));
                if error_set && noisy {
                    return Err(Error::InvalidChannel(
                        "combine either --noise or --error, not both".into(),
                    ));
                }
                if self.phi.is_some() && !noisy {
                    return Err(Error::Parse("--phi needs --noise collective-z or collective".into()));
                }
            }
        }
        Ok(())
    }
}

/// Output text of a run, ending in a newline.
pub fn run(cfg: &RunConfig) -> Result<String> {
    cfg.validate()?;
    match cfg.command {
        Command::Analyze => Ok(render_json(&cmd_analyze(cfg)?)),
        Command::ScanSnr => {
            let rows = cmd_scan_snr(cfg)?;
            Ok(match cfg.format {
                Format::Csv => scan_csv(&rows),
                Format::Json => render_json(&json!({
                    "command": "scan-snr",
                    "code": "dfs2",
                    "rows": rows,
                })),
            })
        }
        Command::Simulate => Ok(render_json(&cmd_simulate(cfg)?)),
        Command::Metrics => Ok(render_json(&cmd_metrics(cfg)?)),
    }
}

/// Rounds every non-integer number to 12 significant digits.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN), 12);
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn render_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(&round_floats(v.clone())).expect("JSON values serialize");
    out.push('\n');
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

#[derive(Clone, Debug, Serialize)]
pub struct PauliTerm {
    pub pauli: String,
    pub exact: Option<String>,
    pub value: f64,
}

/// Pauli expansion of a Hermitian matrix as a term list, plus its canonical
/// text when every coefficient is a small rational.
pub fn pauli_expansion(m: &ComplexMatrix) -> Value {
    relabeled_expansion(m, None)
}

/// Like [`pauli_expansion`], with the letter on qubit `q` moved to
/// `relabel[q−1]`.
pub fn relabeled_expansion(m: &ComplexMatrix, relabel: Option<&[usize]>) -> Value {
    let mut coefficients = pauli_coefficients(m);
    if let Some(perm) = relabel {
        for (s, _) in coefficients.iter_mut() {
            *s = s.permute(perm);
        }
        coefficients.sort_by(|x, y| x.0.cmp(&y.0));
    }
    let mut poly = PauliPolynomial::zero(m.nqubits());
    let mut all_exact = true;
    let terms: Vec<PauliTerm> = coefficients
        .into_iter()
        .map(|(s, c)| {
            let c = Scalar::from_f64(c);
            match c.exact {
                Some(r) => poly.add_term(s.clone(), r),
                None => all_exact = false,
            }
            PauliTerm {
                pauli: s.to_string(),
                exact: c.exact.map(|r| r.to_string()),
                value: c.value,
            }
        })
        .collect();
    let text = all_exact.then(|| poly.to_string());
    json!({ "text": text, "terms": terms })
}

fn scalar_classes_exact(classes: &[EigenClass<Rational64>]) -> Value {
    to_value(
        &classes
            .iter()
            .filter(|c| c.multiplicity > 0)
            .map(|c| EigenClass {
                value: Scalar::exact(c.value),
                multiplicity: c.multiplicity,
            })
            .collect::<Vec<_>>(),
    )
}

fn scalar_classes_f64(classes: &[EigenClass<f64>]) -> Value {
    to_value(
        &classes
            .iter()
            .filter(|c| c.multiplicity > 0)
            .map(|c| EigenClass {
                value: Scalar::from_f64(c.value),
                multiplicity: c.multiplicity,
            })
            .collect::<Vec<_>>(),
    )
}

fn layout_json(layout: &SubsystemLayout) -> Value {
    json!({ "n": layout.nqubits(), "l": layout.logical(), "s": layout.syndrome() })
}

fn weight_or(cfg: &RunConfig, default: WeightParam) -> Result<WeightParam> {
    match cfg.a {
        Some(a) => WeightParam::new(a),
        None => Ok(default),
    }
}

/// Logical input `|0…0⟩` on `l` qubits.
fn ground_logical(l: usize) -> StateVector {
    StateVector::basis(1 << l, 0)
}

pub fn cmd_analyze(cfg: &RunConfig) -> Result<Value> {
    if cfg.full_pp {
        let n = cfg.n.ok_or_else(|| Error::Parse("--full-pp needs --n".into()))?;
        let layout = SubsystemLayout::new(n, n, 0)?;
        let (_, report) = build_full_pp(n, &StateVector::basis(1 << n, 0))?;
        let target = StateVector::basis(1 << n, 0).projector();
        return Ok(json!({
            "command": "analyze",
            "mode": "full-pp",
            "code": null,
            "layout": layout_json(&layout),
            "readout": Readout::Physical,
            "report": report,
            "full_pp_ratio": Scalar::exact(full_pp_ratio(n)),
            "spectrum_closed_form": scalar_classes_exact(&spectrum_direct(n, n, 0, WeightParam::one())?),
            "pauli": pauli_expansion(&target),
        }));
    }
    if let Some(kind) = cfg.code {
        let spec = make_code(kind);
        let w = weight_or(cfg, spec.optimal_weight()?)?;
        let psi = [ground_logical(1)];
        let psi: &[StateVector] = if spec.factor.is_some() {
            &psi
        } else {
            &[ground_logical(spec.layout().logical())]
        };
        let (target, _, report) = spec.analyze(psi, w)?;
        let closed = closed_form_spectrum(&spec, w)?;
        return Ok(json!({
            "command": "analyze",
            "mode": "code",
            "code": kind,
            "layout": layout_json(spec.layout()),
            "readout": spec.readout,
            "report": report,
            "spectrum_closed_form": closed,
            "pauli": pauli_expansion(&target),
            "pauli_decoded": relabeled_expansion(&spec.encoding.decode(&target)?, Some(&spec.relabel)),
            "relabel": spec.relabel,
        }));
    }
    let (n, l, s) = match (cfg.n, cfg.l, cfg.s) {
        (Some(n), Some(l), Some(s)) => (n, l, s),
        _ => return Err(Error::Parse("a custom layout needs all of --n, --l and --s".into())),
    };
    let layout = SubsystemLayout::new(n, l, s)?;
    let w = weight_or(cfg, WeightParam::new(direct_optimal_weight(&layout))?)?;
    let e = EncodingMap::identity(layout);
    let target = build_spps_direct(&e, &ground_logical(l), w)?;
    let alpha = alpha_bound(&target, n)?;
    let prepared = prepare_scaled(&target, alpha.value);
    let mut report = direct_report(&layout, w)?;
    report.alpha = alpha;
    report.ratio_total = Some(snr_ratio_total(&prepared, n)?);
    report.spectrum = deviation(&target).herm_spectrum()?;
    let closed = match w.exact() {
        Some(_) => scalar_classes_exact(&spectrum_direct(n, l, s, w)?),
        None => scalar_classes_f64(&spectrum_direct_f64(n, l, s, w)?),
    };
    Ok(json!({
        "command": "analyze",
        "mode": "layout",
        "code": null,
        "layout": layout_json(&layout),
        "readout": Readout::Physical,
        "report": report,
        "spectrum_closed_form": closed,
        "pauli": pauli_expansion(&target),
    }))
}

fn closed_form_spectrum(spec: &CodeSpec, w: WeightParam) -> Result<Value> {
    let layout = spec.layout();
    match &spec.factor {
        None => {
            let (n, l, s) = (layout.nqubits(), layout.logical(), layout.syndrome());
            Ok(match w.exact() {
                Some(_) => scalar_classes_exact(&spectrum_direct(n, l, s, w)?),
                None => scalar_classes_f64(&spectrum_direct_f64(n, l, s, w)?),
            })
        }
        Some(single) => {
            let (n, s) = (single.layout().nqubits(), single.layout().syndrome());
            let l = layout.logical();
            Ok(match w.exact() {
                Some(_) => scalar_classes_exact(&spectrum_tensor(n, s, l, w)?),
                None => scalar_classes_f64(&spectrum_tensor_f64(n, s, l, w)?),
            })
        }
    }
}

/// One point of the SNR-versus-size curve.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub a_star: Scalar,
    pub regime: Option<crate::spps::TensorRegime>,
    /// `a*·α` of the dfs2 tensor construction.
    pub spps_snr: Scalar,
    /// `N/(2^N − 1)`.
    pub full_pp_snr: Scalar,
}

/// Rows `N = 2, 4, …, n_max` of the dfs2 tensor construction at its optimal
/// weight, next to the full pseudo-pure value.
pub fn cmd_scan_snr(cfg: &RunConfig) -> Result<Vec<ScanRow>> {
    let n_max = cfg.n.ok_or_else(|| Error::Parse("scan-snr needs --n (largest N)".into()))?;
    if n_max < 2 || n_max % 2 != 0 {
        return Err(Error::InvalidLayout(format!(
            "scan-snr needs an even largest N >= 2, got {n_max}"
        )));
    }
    scan_rows(n_max)
}

pub fn scan_rows(n_max: usize) -> Result<Vec<ScanRow>> {
    (1..=n_max / 2)
        .map(|l| {
            let (a_star, _) = crate::spps::tensor_optimal_weight(2, 0, l)?;
            let report = tensor_report(2, 0, l, a_star)?;
            let n = 2 * l;
            Ok(ScanRow {
                n,
                a_star: report.a,
                regime: report.regime,
                spps_snr: Scalar::from_f64(report.a.value * report.alpha.value),
                full_pp_snr: Scalar::exact(full_pp_ratio(n)),
            })
        })
        .collect()
}

pub const SCAN_CSV_HEADER: &str = "n,spps_snr,full_pp_snr";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            r.n,
            round_sig(r.spps_snr.value, 12),
            round_sig(r.full_pp_snr.value, 12)
        ));
    }
    out
}

/// Channel selected by `--noise`/`--error`, with its drawn parameters.
fn build_channel(cfg: &RunConfig, nqubits: usize) -> Result<(NoiseChannel, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    if let Some(ErrorSite(site)) = cfg.error {
        return Ok((
            bitflip_errors(nqubits, site)?,
            json!({ "kind": "bitflip", "error": ErrorSite(site).to_string() }),
        ));
    }
    match cfg.noise.unwrap_or_default() {
        NoiseKind::None => Ok((NoiseChannel::identity(nqubits), json!({ "kind": "none" }))),
        NoiseKind::CollectiveZ => {
            let phi = cfg.phi.unwrap_or_else(|| rng.gen_range(0.0..std::f64::consts::TAU));
            Ok((
                collective_dephasing(nqubits, phi),
                json!({ "kind": "collective-z", "phi": phi }),
            ))
        }
        NoiseKind::Collective => {
            let axis = random_axis(&mut rng);
            let theta = cfg.phi.unwrap_or_else(|| rng.gen_range(0.0..std::f64::consts::TAU));
            Ok((
                collective_rotation(nqubits, axis, theta)?,
                json!({ "kind": "collective", "axis": axis, "theta": theta }),
            ))
        }
    }
}

fn code_inputs(spec: &CodeSpec) -> Vec<StateVector> {
    if spec.factor.is_some() {
        vec![ground_logical(1)]
    } else {
        vec![ground_logical(spec.layout().logical())]
    }
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Value> {
    let kind = cfg.code.ok_or_else(|| Error::Parse("simulate needs --code".into()))?;
    let spec = make_code(kind);
    let n = spec.nqubits();
    let w = weight_or(cfg, spec.optimal_weight()?)?;
    let rho = spec.build_spps(&code_inputs(&spec), w)?;
    let (channel, channel_json) = build_channel(cfg, n)?;
    let protection = protection_report(&spec, &channel, &rho)?;
    let after = channel.apply(&rho)?;
    let logical = crate::codes::logical_marginal(&spec.encoding, &after)?;
    let mut out = json!({
        "command": "simulate",
        "code": kind,
        "a": w.as_scalar(),
        "channel": channel_json,
        "protection": protection,
        "decoded": pauli_expansion(&spec.encoding.decode(&after)?),
        "logical_marginal": logical.as_ref().map(pauli_expansion),
    });
    if kind == CodeKind::Qec3 {
        let decoded = qec_cycle(&spec, &rho, &channel)?;
        let qubit1 = partial_trace(&decoded, &[1])?;
        let psi = ground_logical(1).projector();
        let direction = deviation(&psi);
        let coefficient = deviation(&qubit1).trace_product(&direction).re / direction.trace_square();
        let ancillas = partial_trace(&decoded, &[2, 3])?;
        let populations: Vec<Scalar> = ancillas.diagonal().iter().map(|z| Scalar::from_f64(z.re)).collect();
        out["correction"] = json!({
            "decoded": pauli_expansion(&decoded),
            "qubit1_deviation": pauli_expansion(&deviation(&qubit1)),
            "qubit1_coefficient": Scalar::from_f64(coefficient),
            "ancilla_populations": populations,
        });
    }
    Ok(out)
}

pub fn cmd_metrics(cfg: &RunConfig) -> Result<Value> {
    let kind = cfg.code.ok_or_else(|| Error::Parse("metrics needs --code".into()))?;
    let spec = make_code(kind);
    let n = spec.nqubits();
    let w = weight_or(cfg, WeightParam::new(direct_optimal_weight(spec.layout()))?)?;
    let (channel, channel_json) = build_channel(cfg, n)?;
    let psi = ground_logical(spec.layout().logical());
    let u_th = ComplexMatrix::identity(1 << n);
    let report = metrics_report(&channel, &spec.encoding, &psi, w, &u_th)?;
    Ok(json!({
        "command": "metrics",
        "code": kind,
        "a": w.as_scalar(),
        "channel": channel_json,
        "ideal": "identity",
        "metrics": report,
    }))
}

/// Parses a weight given as `"1/4"`, `"0.25"` or similar.
pub fn parse_weight(text: &str) -> Result<Rational64> {
    let a = parse_rational(text)?;
    WeightParam::new(a)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig::new(command)
    }

    fn exact(v: &Value) -> &str {
        v["exact"].as_str().unwrap()
    }

    #[test]
    fn analyze_examples() {
        let mut c = cfg(Command::Analyze);
        c.code = Some(CodeKind::Qec3);
        c.a = Some(Rational64::new(1, 4));
        let out = cmd_analyze(&c).unwrap();
        assert_eq!(exact(&out["report"]["ratio_total"]), "3/4");

        let mut c = cfg(Command::Analyze);
        c.code = Some(CodeKind::Dfs4x2);
        c.a = Some(Rational64::new(1, 2));
        let out = cmd_analyze(&c).unwrap();
        assert_eq!(exact(&out["report"]["ratio_total"]), "2/3");

        let mut c = cfg(Command::Analyze);
        c.full_pp = true;
        c.n = Some(3);
        let out = cmd_analyze(&c).unwrap();
        assert_eq!(exact(&out["report"]["ratio_total"]), "3/7");
    }

    #[test]
    fn analyze_rejects_bad_layout() {
        let mut c = cfg(Command::Analyze);
        c.n = Some(3);
        c.l = Some(3);
        c.s = Some(1);
        assert!(run(&c).is_err());
        c.l = Some(1);
        c.phi = Some(1.0);
        assert!(matches!(c.validate(), Err(Error::Parse(_))));
    }

    #[test]
    fn scan_rows_and_csv() {
        let mut c = cfg(Command::ScanSnr);
        c.n = Some(4);
        c.format = Format::Csv;
        let text = run(&c).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], SCAN_CSV_HEADER);
        assert_eq!(lines[1], "2,1,0.666666666667");
        assert!(lines[2].ends_with(",0.266666666667"));
        c.n = Some(5);
        assert!(matches!(run(&c), Err(Error::InvalidLayout(_))));
    }

    #[test]
    fn simulate_examples() {
        let mut c = cfg(Command::Simulate);
        c.code = Some(CodeKind::Dfs2);
        c.noise = Some(NoiseKind::CollectiveZ);
        c.phi = Some(1.234);
        let out = cmd_simulate(&c).unwrap();
        assert!(out["protection"]["leakage"].as_f64().unwrap().abs() < 1e-12);

        let mut c = cfg(Command::Simulate);
        c.code = Some(CodeKind::Qec3);
        c.error = Some(ErrorSite(Some(2)));
        c.a = Some(Rational64::new(1, 4));
        let out = cmd_simulate(&c).unwrap();
        assert_eq!(exact(&out["correction"]["qubit1_coefficient"]), "1/4");

        let mut c = cfg(Command::Simulate);
        c.code = Some(CodeKind::Ns3);
        c.noise = Some(NoiseKind::Collective);
        c.seed = Some(7);
        let out = cmd_simulate(&c).unwrap();
        let corr = out["protection"]["logical_correlation"].as_f64().unwrap();
        assert!((corr - 1.0).abs() < 1e-9);
    }

    #[test]
    fn simulate_rejects_incompatible_channels() {
        let mut c = cfg(Command::Simulate);
        c.code = Some(CodeKind::Dfs2);
        c.error = Some(ErrorSite(Some(1)));
        assert!(matches!(run(&c), Err(Error::InvalidChannel(_))));
    }

    #[test]
    fn metrics_examples() {
        let mut c = cfg(Command::Metrics);
        c.code = Some(CodeKind::Dfs2);
        let out = cmd_metrics(&c).unwrap();
        assert!((out["metrics"]["c_total"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!((out["metrics"]["f_bar"].as_f64().unwrap() - 1.0).abs() < 1e-12);

        c.noise = Some(NoiseKind::CollectiveZ);
        c.phi = Some(0.8);
        let out = cmd_metrics(&c).unwrap();
        assert!((out["metrics"]["f_bar_l"].as_f64().unwrap() - 1.0).abs() < 1e-12);

        let mut c = cfg(Command::Metrics);
        c.code = Some(CodeKind::Qec3);
        c.error = Some(ErrorSite(Some(2)));
        c.a = Some(Rational64::new(1, 1));
        let out = cmd_metrics(&c).unwrap();
        assert_eq!(out["metrics"]["c_blocks"]["LL"].as_f64().unwrap(), 0.0);
    }
}
