//! Output assembly for the command-line front end: run-configuration echoing,
//! result tables, self-check suites, and the three serialization formats.
//!
//! Every document embeds the accepted configuration and the physical
//! constants, so a saved output file is self-describing. Numbers are written
//! with 17 significant digits in CSV and text, and with the shortest exact
//! round-trip representation in JSON; both parse back to identical f64
//! values. All collections are ordered, so repeated runs are byte-identical.

use std::fmt::Write as _;

use serde::Serialize;

use crate::constants::{EnergyQuantity, EnergyUnit, PhysicalConstants, ThetaUnit};
use crate::error::{Error, Result};
use crate::hydrogen::{HydrogenModel, QuantumState};
use crate::matrix_elements::{
    cos2_element, cos_element, cross_inverse_moment, f_closed, f_numeric,
};
use crate::oracles::{first_order_quadrature, AngularQuadrature};
use crate::perturbation::{first_order_shift, second_order_shift, Mode, NCParameter};
use crate::phenomenology::{
    reproduction_report, transition_report, ReproductionReport, TransitionReport,
};

/// Serialization format for command output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Usage(format!(
                "unknown format '{other}' (expected json, csv, or text)"
            ))),
        }
    }
}

/// The accepted run configuration, echoed verbatim into every output header.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nr_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u32>,
    /// theta in the unit the caller supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_unit: Option<ThetaUnit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
}

impl RunConfig {
    fn new(command: &str, format: OutputFormat) -> Self {
        Self {
            command: command.to_string(),
            nr_max: None,
            l_max: None,
            theta: None,
            theta_unit: None,
            mode: None,
            state: None,
            state_a: None,
            state_b: None,
            precision_hz: None,
            tolerance: None,
            format,
        }
    }

    /// `key=value` lines for the CSV/text headers, one per set field.
    fn echo_lines(&self, constants: &PhysicalConstants) -> Vec<String> {
        let mut lines = vec![format!("command={}", self.command)];
        if let Some(v) = self.nr_max {
            lines.push(format!("nr_max={v}"));
        }
        if let Some(v) = self.l_max {
            lines.push(format!("l_max={v}"));
        }
        if let Some(v) = self.theta {
            lines.push(format!("theta={}", full(v)));
        }
        if let Some(v) = self.theta_unit {
            lines.push(format!("theta_unit={v}"));
        }
        if let Some(v) = self.mode {
            lines.push(format!("mode={v}"));
        }
        if let Some(v) = &self.state {
            lines.push(format!("state={v}"));
        }
        if let Some(v) = &self.state_a {
            lines.push(format!("state_a={v}"));
        }
        if let Some(v) = &self.state_b {
            lines.push(format!("state_b={v}"));
        }
        if let Some(v) = self.precision_hz {
            lines.push(format!("precision_hz={}", full(v)));
        }
        if let Some(v) = self.tolerance {
            lines.push(format!("tolerance={}", full(v)));
        }
        lines.push(format!("format={}", self.format));
        lines.push(format!("alpha={}", full(constants.alpha)));
        lines.push(format!(
            "electron_mass_mev={}",
            full(constants.electron_mass_mev)
        ));
        lines
    }
}

/// 17-significant-digit decimal form; parses back to the identical f64.
fn full(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct TableDocument<'a, R: Serialize> {
    config: &'a RunConfig,
    constants: &'a PhysicalConstants,
    rows: &'a [R],
}

#[derive(Serialize)]
struct ReportDocument<'a, R: Serialize> {
    config: &'a RunConfig,
    constants: &'a PhysicalConstants,
    report: &'a R,
}

/// A row type that knows its own CSV/text column layout.
trait TableRow: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn render_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// CSV: `#`-prefixed provenance lines, one header row, then data rows.
/// Comma-separated, '.' decimal point.
fn render_csv<R: TableRow>(
    config: &RunConfig,
    constants: &PhysicalConstants,
    rows: &[R],
) -> String {
    let mut out = String::new();
    for line in config.echo_lines(constants) {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "{}", R::header().join(","));
    for row in rows {
        let _ = writeln!(out, "{}", row.cells().join(","));
    }
    out
}

/// Fixed-width text table with the same provenance header as CSV.
fn render_text<R: TableRow>(
    config: &RunConfig,
    constants: &PhysicalConstants,
    rows: &[R],
) -> String {
    let mut out = String::new();
    for line in config.echo_lines(constants) {
        let _ = writeln!(out, "# {line}");
    }
    let header = R::header();
    let cell_rows: Vec<Vec<String>> = rows.iter().map(TableRow::cells).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cell_rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let emit = |out: &mut String, cells: &[String]| {
        let line = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "{}", line.trim_end());
    };
    emit(
        &mut out,
        &header.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    );
    for row in &cell_rows {
        emit(&mut out, row);
    }
    out
}

fn render_table<R: TableRow>(
    config: &RunConfig,
    constants: &PhysicalConstants,
    rows: &[R],
) -> Result<String> {
    match config.format {
        OutputFormat::Json => render_json(&TableDocument {
            config,
            constants,
            rows,
        }),
        OutputFormat::Csv => Ok(render_csv(config, constants, rows)),
        OutputFormat::Text => Ok(render_text(config, constants, rows)),
    }
}

/// Rendered command output plus the self-check verdict (zero failures for
/// every other command).
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub body: String,
    pub failed_suites: usize,
    pub total_suites: usize,
}

impl CommandOutput {
    fn ok(body: String) -> Self {
        Self {
            body,
            failed_suites: 0,
            total_suites: 0,
        }
    }
}

// ---------------------------------------------------------------------------
// spectrum

/// One spectrum line: unperturbed level, noncommutative shift, and the
/// shifted level, all in MeV.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n_r: u32,
    pub l: u32,
    pub m: i32,
    pub label: String,
    pub energy_mev: f64,
    pub shift_mev: f64,
    pub total_mev: f64,
}

impl TableRow for SpectrumRow {
    fn header() -> &'static [&'static str] {
        &[
            "n_r",
            "l",
            "m",
            "label",
            "energy_mev",
            "shift_mev",
            "total_mev",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n_r.to_string(),
            self.l.to_string(),
            self.m.to_string(),
            self.label.clone(),
            full(self.energy_mev),
            full(self.shift_mev),
            full(self.total_mev),
        ]
    }
}

pub struct SpectrumArgs {
    pub nr_max: u32,
    pub l_max: u32,
    /// theta in `theta_unit`.
    pub theta: f64,
    pub theta_unit: ThetaUnit,
    pub mode: Mode,
    pub format: OutputFormat,
}

/// Spectrum rows in ascending (n_r, l, m) order with 0 <= m <= l;
/// row count = (nr_max+1) * sum_{l<=l_max}(l+1).
pub fn spectrum_rows(
    model: &HydrogenModel,
    nr_max: u32,
    l_max: u32,
    theta: &NCParameter,
    mode: Mode,
) -> Result<Vec<SpectrumRow>> {
    let mut rows = Vec::new();
    for n_r in 0..=nr_max {
        for l in 0..=l_max {
            for m in 0..=l as i32 {
                let state = QuantumState::new(n_r, l, m)?;
                let energy = model.energy(n_r, l)?;
                let shift = second_order_shift(model, &state, theta, mode)?.total;
                rows.push(SpectrumRow {
                    n_r,
                    l,
                    m,
                    label: state.label(),
                    energy_mev: energy,
                    shift_mev: shift,
                    total_mev: energy + shift,
                });
            }
        }
    }
    Ok(rows)
}

pub fn cmd_spectrum(model: &HydrogenModel, args: &SpectrumArgs) -> Result<CommandOutput> {
    let theta = NCParameter::new(args.theta, args.theta_unit)
        .map_err(|e| Error::Usage(format!("--theta: {e}")))?;
    let rows = spectrum_rows(model, args.nr_max, args.l_max, &theta, args.mode)?;
    let mut config = RunConfig::new("spectrum", args.format);
    config.nr_max = Some(args.nr_max);
    config.l_max = Some(args.l_max);
    config.theta = Some(args.theta);
    config.theta_unit = Some(args.theta_unit);
    config.mode = Some(args.mode);
    render_table(&config, &model.constants, &rows).map(CommandOutput::ok)
}

// ---------------------------------------------------------------------------
// shift

/// Shift breakdown for one state at one theta, in MeV.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftRow {
    pub n_r: u32,
    pub l: u32,
    pub m: i32,
    pub label: String,
    pub energy_mev: f64,
    pub first_order_mev: f64,
    pub mixing_mev: f64,
    pub direct_mev: f64,
    pub shift_mev: f64,
    pub total_mev: f64,
    pub b_terms_dropped: bool,
    pub diagonal_moment_continued: bool,
    pub cross_moment_continued: bool,
}

impl TableRow for ShiftRow {
    fn header() -> &'static [&'static str] {
        &[
            "n_r",
            "l",
            "m",
            "label",
            "energy_mev",
            "first_order_mev",
            "mixing_mev",
            "direct_mev",
            "shift_mev",
            "total_mev",
            "b_terms_dropped",
            "diagonal_moment_continued",
            "cross_moment_continued",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n_r.to_string(),
            self.l.to_string(),
            self.m.to_string(),
            self.label.clone(),
            full(self.energy_mev),
            full(self.first_order_mev),
            full(self.mixing_mev),
            full(self.direct_mev),
            full(self.shift_mev),
            full(self.total_mev),
            self.b_terms_dropped.to_string(),
            self.diagonal_moment_continued.to_string(),
            self.cross_moment_continued.to_string(),
        ]
    }
}

pub struct ShiftArgs {
    /// Spectroscopic label, e.g. "2S" (m = 0).
    pub state: String,
    pub theta: f64,
    pub theta_unit: ThetaUnit,
    pub mode: Mode,
    pub format: OutputFormat,
}

pub fn shift_row(
    model: &HydrogenModel,
    state: &QuantumState,
    theta: &NCParameter,
    mode: Mode,
) -> Result<ShiftRow> {
    let breakdown = second_order_shift(model, state, theta, mode)?;
    let energy = model.energy(state.n_r, state.l)?;
    Ok(ShiftRow {
        n_r: state.n_r,
        l: state.l,
        m: state.m,
        label: state.label(),
        energy_mev: energy,
        first_order_mev: first_order_shift(state, theta),
        mixing_mev: breakdown.mixing,
        direct_mev: breakdown.direct,
        shift_mev: breakdown.total,
        total_mev: energy + breakdown.total,
        b_terms_dropped: breakdown.flags.b_terms_dropped,
        diagonal_moment_continued: breakdown.flags.diagonal_moment_continued,
        cross_moment_continued: breakdown.flags.cross_moment_continued,
    })
}

pub fn cmd_shift(model: &HydrogenModel, args: &ShiftArgs) -> Result<CommandOutput> {
    let state =
        QuantumState::parse(&args.state).map_err(|e| Error::Usage(format!("--state: {e}")))?;
    let theta = NCParameter::new(args.theta, args.theta_unit)
        .map_err(|e| Error::Usage(format!("--theta: {e}")))?;
    let row = shift_row(model, &state, &theta, args.mode)?;
    let mut config = RunConfig::new("shift", args.format);
    config.state = Some(args.state.clone());
    config.theta = Some(args.theta);
    config.theta_unit = Some(args.theta_unit);
    config.mode = Some(args.mode);
    render_table(&config, &model.constants, std::slice::from_ref(&row)).map(CommandOutput::ok)
}

// ---------------------------------------------------------------------------
// bound

pub struct BoundArgs {
    pub state_a: String,
    pub state_b: String,
    pub precision_hz: f64,
    pub mode: Mode,
    pub format: OutputFormat,
}

/// Unit-trail row for the CSV rendering of a bound report.
#[derive(Debug, Clone, Serialize)]
struct TrailRow {
    step: usize,
    description: String,
    value: f64,
    unit: String,
}

impl TableRow for TrailRow {
    fn header() -> &'static [&'static str] {
        &["step", "description", "value", "unit"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.step.to_string(),
            // Commas never appear in trail descriptions; keep CSV unquoted.
            self.description.clone(),
            full(self.value),
            self.unit.clone(),
        ]
    }
}

fn bound_text(report: &TransitionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "theta bound from the {} - {} transition ({} mode)",
        report.state_a.label(),
        report.state_b.label(),
        report.mode
    );
    let _ = writeln!(
        out,
        "  coefficient |C({}) - C({})| = {}  [{}]",
        report.state_a.label(),
        report.state_b.label(),
        full(report.coefficient),
        report.coefficient_unit
    );
    let _ = writeln!(
        out,
        "  experimental precision      = {} Hz",
        full(report.experimental_precision_hz)
    );
    let _ = writeln!(
        out,
        "  theta_max                   = {} GeV^-2",
        full(report.theta_bound_gev2)
    );
    let _ = writeln!(out, "  unit trail:");
    for (i, step) in report.unit_trail.iter().enumerate() {
        let _ = writeln!(
            out,
            "    {}. {} = {} {}",
            i + 1,
            step.description,
            full(step.value),
            step.unit
        );
    }
    let _ = writeln!(
        out,
        "  flags {}: b_terms_dropped={} diagonal_moment_continued={} cross_moment_continued={}",
        report.state_a.label(),
        report.flags_a.b_terms_dropped,
        report.flags_a.diagonal_moment_continued,
        report.flags_a.cross_moment_continued
    );
    let _ = writeln!(
        out,
        "  flags {}: b_terms_dropped={} diagonal_moment_continued={} cross_moment_continued={}",
        report.state_b.label(),
        report.flags_b.b_terms_dropped,
        report.flags_b.diagonal_moment_continued,
        report.flags_b.cross_moment_continued
    );
    out
}

pub fn cmd_bound(model: &HydrogenModel, args: &BoundArgs) -> Result<CommandOutput> {
    let a =
        QuantumState::parse(&args.state_a).map_err(|e| Error::Usage(format!("--state-a: {e}")))?;
    let b =
        QuantumState::parse(&args.state_b).map_err(|e| Error::Usage(format!("--state-b: {e}")))?;
    if !(args.precision_hz.is_finite() && args.precision_hz > 0.0) {
        return Err(Error::Usage(format!(
            "--precision-hz must be finite and > 0, got {}",
            args.precision_hz
        )));
    }
    let precision = EnergyQuantity {
        value: args.precision_hz,
        unit: EnergyUnit::Hz,
    };
    let report = transition_report(model, &a, &b, &precision, args.mode)?;
    let mut config = RunConfig::new("bound", args.format);
    config.state_a = Some(args.state_a.clone());
    config.state_b = Some(args.state_b.clone());
    config.precision_hz = Some(args.precision_hz);
    config.mode = Some(args.mode);
    let body = match args.format {
        OutputFormat::Json => render_json(&ReportDocument {
            config: &config,
            constants: &model.constants,
            report: &report,
        })?,
        OutputFormat::Csv => {
            let rows: Vec<TrailRow> = report
                .unit_trail
                .iter()
                .enumerate()
                .map(|(i, s)| TrailRow {
                    step: i + 1,
                    description: s.description.clone(),
                    value: s.value,
                    unit: s.unit.clone(),
                })
                .collect();
            render_csv(&config, &model.constants, &rows)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for line in config.echo_lines(&model.constants) {
                let _ = writeln!(out, "# {line}");
            }
            out.push_str(&bound_text(&report));
            out
        }
    };
    Ok(CommandOutput::ok(body))
}

// ---------------------------------------------------------------------------
// report

pub struct ReportArgs {
    pub format: OutputFormat,
}

/// Per-mode summary row for the CSV rendering of the reproduction report.
#[derive(Debug, Clone, Serialize)]
struct ModeRow {
    mode: Mode,
    shift_coefficient_1s: f64,
    shift_coefficient_2s: f64,
    transition_coefficient: f64,
    theta_bound_gev2: f64,
    coefficient_ratio_to_primary_reading: f64,
    coefficient_ratio_to_alternate_reading: f64,
    bound_ratio_to_reference: f64,
}

impl TableRow for ModeRow {
    fn header() -> &'static [&'static str] {
        &[
            "mode",
            "shift_coefficient_1s",
            "shift_coefficient_2s",
            "transition_coefficient",
            "theta_bound_gev2",
            "coefficient_ratio_to_primary_reading",
            "coefficient_ratio_to_alternate_reading",
            "bound_ratio_to_reference",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.mode.to_string(),
            full(self.shift_coefficient_1s),
            full(self.shift_coefficient_2s),
            full(self.transition_coefficient),
            full(self.theta_bound_gev2),
            full(self.coefficient_ratio_to_primary_reading),
            full(self.coefficient_ratio_to_alternate_reading),
            full(self.bound_ratio_to_reference),
        ]
    }
}

fn report_text(report: &ReproductionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "1S-2S reproduction report");
    let _ = writeln!(
        out,
        "  alpha = {}, electron mass = {} MeV, MeV/Hz = {}",
        full(report.constants.alpha),
        full(report.constants.electron_mass_mev),
        full(report.mev_per_hz)
    );
    let _ = writeln!(
        out,
        "  reference frequency {} Hz (standard published value {} Hz)",
        full(report.reference_frequency_hz),
        full(report.standard_frequency_hz)
    );
    let _ = writeln!(
        out,
        "  reference precision {} Hz; reference coefficient readings {} / {}; \
         reference bound {} GeV^-2",
        full(report.reference_precision_hz),
        full(report.reference_coefficient_readings[0]),
        full(report.reference_coefficient_readings[1]),
        full(report.reference_theta_bound_gev2)
    );
    for mode in &report.modes {
        let _ = writeln!(out, "mode {}:", mode.mode);
        let _ = writeln!(out, "  unit: {}", mode.coefficient_unit);
        let _ = writeln!(out, "  C(1S) = {}", full(mode.shift_coefficient_1s));
        let _ = writeln!(out, "  C(2S) = {}", full(mode.shift_coefficient_2s));
        let _ = writeln!(
            out,
            "  |C(1S) - C(2S)| = {}",
            full(mode.transition_coefficient)
        );
        let _ = writeln!(
            out,
            "  theta bound = {} GeV^-2 ({} x reference bound)",
            full(mode.theta_bound_gev2),
            full(mode.bound_ratio_to_reference)
        );
        let _ = writeln!(
            out,
            "  coefficient / readings: {} (636.737), {} (636737)",
            full(mode.coefficient_ratio_to_primary_reading),
            full(mode.coefficient_ratio_to_alternate_reading)
        );
        let _ = writeln!(
            out,
            "  flags 1S: b_terms_dropped={} diagonal_moment_continued={} \
             cross_moment_continued={}",
            mode.flags_1s.b_terms_dropped,
            mode.flags_1s.diagonal_moment_continued,
            mode.flags_1s.cross_moment_continued
        );
        let _ = writeln!(
            out,
            "  flags 2S: b_terms_dropped={} diagonal_moment_continued={} \
             cross_moment_continued={}",
            mode.flags_2s.b_terms_dropped,
            mode.flags_2s.diagonal_moment_continued,
            mode.flags_2s.cross_moment_continued
        );
        let _ = writeln!(out, "  unit trail:");
        for (i, step) in mode.unit_trail.iter().enumerate() {
            let _ = writeln!(
                out,
                "    {}. {} = {} {}",
                i + 1,
                step.description,
                full(step.value),
                step.unit
            );
        }
    }
    let _ = writeln!(
        out,
        "literal / corrected ratios: 1S {}, 2S {}, transition {}",
        full(report.literal_to_corrected_ratio_1s),
        full(report.literal_to_corrected_ratio_2s),
        full(report.literal_to_corrected_ratio_transition)
    );
    let _ = writeln!(out, "moment provenance:");
    for p in &report.moment_provenance {
        let _ = writeln!(out, "  - {}: {}", p.moment, p.status);
    }
    let _ = writeln!(out, "anomalies:");
    for a in &report.anomalies {
        let _ = writeln!(out, "  - {a}");
    }
    let _ = writeln!(out, "discrepancy analysis:");
    for d in &report.discrepancy_analysis {
        let _ = writeln!(out, "  - {d}");
    }
    out
}

pub fn cmd_report(model: &HydrogenModel, args: &ReportArgs) -> Result<CommandOutput> {
    let report = reproduction_report(model)?;
    let config = RunConfig::new("report", args.format);
    let body = match args.format {
        OutputFormat::Json => render_json(&ReportDocument {
            config: &config,
            constants: &model.constants,
            report: &report,
        })?,
        OutputFormat::Csv => {
            let rows: Vec<ModeRow> = report
                .modes
                .iter()
                .map(|m| ModeRow {
                    mode: m.mode,
                    shift_coefficient_1s: m.shift_coefficient_1s,
                    shift_coefficient_2s: m.shift_coefficient_2s,
                    transition_coefficient: m.transition_coefficient,
                    theta_bound_gev2: m.theta_bound_gev2,
                    coefficient_ratio_to_primary_reading: m.coefficient_ratio_to_primary_reading,
                    coefficient_ratio_to_alternate_reading: m
                        .coefficient_ratio_to_alternate_reading,
                    bound_ratio_to_reference: m.bound_ratio_to_reference,
                })
                .collect();
            render_csv(&config, &model.constants, &rows)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for line in config.echo_lines(&model.constants) {
                let _ = writeln!(out, "# {line}");
            }
            out.push_str(&report_text(&report));
            out
        }
    };
    Ok(CommandOutput::ok(body))
}

// ---------------------------------------------------------------------------
// selfcheck

/// One oracle suite's verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckRow {
    pub suite: String,
    pub cases: usize,
    /// Worst relative error over the suite (error / max(|reference|, 1) for
    /// the angular suite, whose references include exact zeros).
    pub worst_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl TableRow for SelfcheckRow {
    fn header() -> &'static [&'static str] {
        &["suite", "cases", "worst_rel_error", "tolerance", "passed"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.suite.clone(),
            self.cases.to_string(),
            full(self.worst_rel_error),
            full(self.tolerance),
            self.passed.to_string(),
        ]
    }
}

pub struct SelfcheckArgs {
    /// Overrides every suite's tolerance; exposes the failure path.
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
}

/// Closed-form radial moments against quadrature, every convergent
/// combination of k in 3..=6, l in 1..=4, n_r in 0..=3.
fn suite_radial_moments(model: &HydrogenModel) -> Result<(usize, f64)> {
    let mut cases = 0;
    let mut worst = 0.0f64;
    for k in 3..=6 {
        for l in 1..=4 {
            for n_r in 0..=3 {
                let closed = f_closed(model, k, n_r, l)?;
                if !closed.convergent {
                    continue;
                }
                let numeric = f_numeric(model, k, n_r, l)?;
                let rel = (closed.value - numeric.value).abs() / closed.value.abs();
                worst = worst.max(rel);
                cases += 1;
            }
        }
    }
    Ok((cases, worst))
}

/// Closed-form angular elements against 2D spherical quadrature for
/// l, l' <= 4 and every common m, forbidden pairs included.
fn suite_angular_elements(model: &HydrogenModel) -> Result<(usize, f64)> {
    let _ = model;
    let quad = AngularQuadrature::default();
    let mut cases = 0;
    let mut worst = 0.0f64;
    for l in 0..=4u32 {
        for lp in 0..=4u32 {
            let m_max = l.min(lp) as i32;
            for m in -m_max..=m_max {
                let bra = QuantumState::new(0, l, m)?;
                let ket = QuantumState::new(0, lp, m)?;
                for (closed, oracle) in [
                    (cos_element(&bra, &ket), quad.cos_element(&bra, &ket)),
                    (cos2_element(&bra, &ket), quad.cos2_element(&bra, &ket)),
                ] {
                    let err = (closed - oracle).abs() / oracle.abs().max(1.0);
                    worst = worst.max(err);
                    cases += 1;
                }
            }
        }
    }
    Ok((cases, worst))
}

/// |<R|R> - 1| for n_r <= 5, l <= 4 via the overlap integral (k = 0).
fn suite_normalization(model: &HydrogenModel) -> Result<(usize, f64)> {
    let mut cases = 0;
    let mut worst = 0.0f64;
    for l in 0..=4 {
        for n_r in 0..=5 {
            let state = QuantumState::new(n_r, l, 0)?;
            let overlap = cross_inverse_moment(model, &state, &state, 0)?;
            worst = worst.max((overlap.value - 1.0).abs());
            cases += 1;
        }
    }
    Ok((cases, worst))
}

/// first_order_shift must vanish identically, and the full 3D quadrature of
/// the order-theta operator must vanish to rounding relative to its own
/// term mass.
fn suite_first_order_nullity(model: &HydrogenModel) -> Result<(usize, f64)> {
    let theta = NCParameter::new(1.0, ThetaUnit::InverseMeV2)?;
    let mut cases = 0;
    let mut worst = 0.0f64;
    for (n_r, l, m) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 1, 1), (1, 2, -1)] {
        let state = QuantumState::new(n_r, l, m)?;
        worst = worst.max(first_order_shift(&state, &theta).abs());
        cases += 1;
    }
    for (n_r, l, m) in [(0, 1, 0), (0, 2, 1)] {
        let state = QuantumState::new(n_r, l, m)?;
        let (value, mass) = first_order_quadrature(model, &state, theta.theta_mev2)?;
        worst = worst.max(value.abs() / mass.max(f64::MIN_POSITIVE));
        cases += 1;
    }
    Ok((cases, worst))
}

/// Run all four oracle suites. Default tolerances: radial 1e-8,
/// angular 1e-10, normalization 1e-8, first-order nullity 1e-12.
pub fn run_selfcheck(model: &HydrogenModel, tolerance: Option<f64>) -> Result<Vec<SelfcheckRow>> {
    let suites: [(&str, fn(&HydrogenModel) -> Result<(usize, f64)>, f64); 4] = [
        (
            "radial_moments_closed_vs_quadrature",
            suite_radial_moments,
            1e-8,
        ),
        (
            "angular_elements_vs_quadrature",
            suite_angular_elements,
            1e-10,
        ),
        ("radial_normalization", suite_normalization, 1e-8),
        ("first_order_nullity", suite_first_order_nullity, 1e-12),
    ];
    let mut rows = Vec::new();
    for (name, run, default_tol) in suites {
        let (cases, worst) = run(model)?;
        let tol = tolerance.unwrap_or(default_tol);
        rows.push(SelfcheckRow {
            suite: name.to_string(),
            cases,
            worst_rel_error: worst,
            tolerance: tol,
            passed: worst <= tol,
        });
    }
    Ok(rows)
}

pub fn cmd_selfcheck(model: &HydrogenModel, args: &SelfcheckArgs) -> Result<CommandOutput> {
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Usage(format!(
                "--tolerance must be finite and > 0, got {t}"
            )));
        }
    }
    let rows = run_selfcheck(model, args.tolerance)?;
    let mut config = RunConfig::new("selfcheck", args.format);
    config.tolerance = args.tolerance;
    let body = render_table(&config, &model.constants, &rows)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    Ok(CommandOutput {
        body,
        failed_suites: failed,
        total_suites: rows.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;

    fn model() -> HydrogenModel {
        HydrogenModel::new(PhysicalConstants::codata2018())
    }

    fn count_lines(s: &str, pred: impl Fn(&str) -> bool) -> usize {
        s.lines().filter(|l| pred(l)).count()
    }

    #[test]
    fn spectrum_row_law_and_order() {
        let m = model();
        let theta = NCParameter::zero();
        let rows = spectrum_rows(&m, 2, 3, &theta, Mode::Literal).unwrap();
        let expected: usize = (0..=3u32).map(|l| l as usize + 1).sum::<usize>() * 3;
        assert_eq!(rows.len(), expected, "row count law");
        let keys: Vec<(u32, u32, i32)> = rows.iter().map(|r| (r.n_r, r.l, r.m)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "(n_r, l, m) ascending");
        assert!(
            rows.iter()
                .all(|r| r.shift_mev == 0.0 && r.total_mev == r.energy_mev),
            "theta = 0 leaves every level unshifted"
        );
    }

    #[test]
    fn spectrum_csv_has_header_and_config_echo() {
        let m = model();
        let args = SpectrumArgs {
            nr_max: 1,
            l_max: 1,
            theta: 1e-6,
            theta_unit: ThetaUnit::InverseMeV2,
            mode: Mode::Literal,
            format: OutputFormat::Csv,
        };
        let out = cmd_spectrum(&m, &args).unwrap().body;
        assert!(out.contains("# command=spectrum"));
        assert!(out.contains("# theta_unit=MeV-2"));
        assert!(out.contains("# mode=literal"));
        assert!(out.contains("n_r,l,m,label,energy_mev,shift_mev,total_mev"));
        // 1 header + 6 data rows after the comment block.
        assert_eq!(count_lines(&out, |l| !l.starts_with('#')), 1 + 6);
        // '.' decimal, full precision.
        assert!(
            out.contains("e-1") || out.contains("e0"),
            "scientific notation"
        );
    }

    #[test]
    fn spectrum_json_envelope_and_determinism() {
        let m = model();
        let args = SpectrumArgs {
            nr_max: 1,
            l_max: 1,
            theta: 1e-6,
            theta_unit: ThetaUnit::InverseMeV2,
            mode: Mode::Literal,
            format: OutputFormat::Json,
        };
        let a = cmd_spectrum(&m, &args).unwrap().body;
        let b = cmd_spectrum(&m, &args).unwrap().body;
        assert_eq!(a, b, "byte-identical across runs");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert!(v.get("config").is_some());
        assert!(v.get("constants").is_some());
        assert_eq!(v["rows"].as_array().unwrap().len(), 6);
        assert_eq!(v["config"]["command"], "spectrum");
        assert_eq!(v["config"]["theta_unit"], "MeV-2");
    }

    #[test]
    fn csv_and_json_carry_identical_values() {
        let m = model();
        let mk = |format| SpectrumArgs {
            nr_max: 1,
            l_max: 0,
            theta: 2.5,
            theta_unit: ThetaUnit::InverseGeV2,
            mode: Mode::Corrected,
            format,
        };
        let json = cmd_spectrum(&m, &mk(OutputFormat::Json)).unwrap().body;
        let csv = cmd_spectrum(&m, &mk(OutputFormat::Csv)).unwrap().body;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = v["rows"].as_array().unwrap();
        let data_lines: Vec<&str> = csv
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("n_r"))
            .collect();
        assert_eq!(rows.len(), data_lines.len());
        for (row, line) in rows.iter().zip(&data_lines) {
            let cells: Vec<&str> = line.split(',').collect();
            for (idx, key) in [(4, "energy_mev"), (5, "shift_mev"), (6, "total_mev")] {
                let from_csv: f64 = cells[idx].parse().unwrap();
                let from_json = row[key].as_f64().unwrap();
                assert_eq!(from_csv, from_json, "{key} round-trips identically");
            }
        }
    }

    #[test]
    fn shift_command_reports_breakdown() {
        let m = model();
        let args = ShiftArgs {
            state: "2P".to_string(),
            theta: 1.0,
            theta_unit: ThetaUnit::InverseMeV2,
            mode: Mode::Corrected,
            format: OutputFormat::Json,
        };
        let out = cmd_shift(&m, &args).unwrap().body;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let row = &v["rows"][0];
        assert_eq!(row["label"], "2P");
        assert_eq!(row["first_order_mev"], 0.0);
        let mixing = row["mixing_mev"].as_f64().unwrap();
        let direct = row["direct_mev"].as_f64().unwrap();
        let total = row["shift_mev"].as_f64().unwrap();
        assert_eq!(mixing + direct, total, "breakdown sums to the shift");
        assert!(total != 0.0);
    }

    #[test]
    fn usage_errors_are_typed() {
        let m = model();
        let bad_state = cmd_shift(
            &m,
            &ShiftArgs {
                state: "X9".to_string(),
                theta: 0.0,
                theta_unit: ThetaUnit::InverseMeV2,
                mode: Mode::Literal,
                format: OutputFormat::Json,
            },
        );
        assert!(matches!(bad_state, Err(Error::Usage(_))), "{bad_state:?}");
        let bad_theta = cmd_spectrum(
            &m,
            &SpectrumArgs {
                nr_max: 0,
                l_max: 0,
                theta: -1.0,
                theta_unit: ThetaUnit::InverseMeV2,
                mode: Mode::Literal,
                format: OutputFormat::Json,
            },
        );
        assert!(matches!(bad_theta, Err(Error::Usage(_))), "{bad_theta:?}");
        let bad_precision = cmd_bound(
            &m,
            &BoundArgs {
                state_a: "1S".to_string(),
                state_b: "2S".to_string(),
                precision_hz: 0.0,
                mode: Mode::Literal,
                format: OutputFormat::Json,
            },
        );
        assert!(
            matches!(bad_precision, Err(Error::Usage(_))),
            "{bad_precision:?}"
        );
    }

    #[test]
    fn bound_embeds_default_precision_and_trail() {
        let m = model();
        let args = BoundArgs {
            state_a: "1S".to_string(),
            state_b: "2S".to_string(),
            precision_hz: 34.0,
            mode: Mode::Literal,
            format: OutputFormat::Json,
        };
        let out = cmd_bound(&m, &args).unwrap().body;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["experimental_precision_hz"], 34.0);
        assert!(v["report"]["unit_trail"].as_array().unwrap().len() >= 5);
        assert!(v["report"]["theta_bound_gev2"].as_f64().unwrap() > 0.0);
        // Same run as CSV carries the same bound value.
        let csv = cmd_bound(
            &m,
            &BoundArgs {
                format: OutputFormat::Csv,
                state_a: args.state_a.clone(),
                state_b: args.state_b.clone(),
                precision_hz: args.precision_hz,
                mode: args.mode,
            },
        )
        .unwrap()
        .body;
        let bound = v["report"]["theta_bound_gev2"].as_f64().unwrap();
        assert!(
            csv.lines()
                .any(|l| l.split(',').any(|c| c.parse::<f64>() == Ok(bound))),
            "CSV trail contains the bound"
        );
    }

    #[test]
    fn report_has_both_modes_in_all_formats() {
        let m = model();
        for format in [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text] {
            let out = cmd_report(&m, &ReportArgs { format }).unwrap().body;
            assert!(
                out.contains("literal") && out.contains("corrected"),
                "{format}"
            );
        }
        let json = cmd_report(
            &m,
            &ReportArgs {
                format: OutputFormat::Json,
            },
        )
        .unwrap()
        .body;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["report"]["modes"].as_array().unwrap().len(), 2);
        let text = cmd_report(
            &m,
            &ReportArgs {
                format: OutputFormat::Text,
            },
        )
        .unwrap()
        .body;
        assert!(text.contains("analytic continuation of divergent integral"));
        assert!(text.contains("discrepancy analysis"));
    }

    #[test]
    fn selfcheck_passes_fresh_and_fails_under_injected_tolerance() {
        let m = model();
        let ok = cmd_selfcheck(
            &m,
            &SelfcheckArgs {
                tolerance: None,
                format: OutputFormat::Json,
            },
        )
        .unwrap();
        assert_eq!(ok.failed_suites, 0, "fresh build passes:\n{}", ok.body);
        assert_eq!(ok.total_suites, 4);
        let v: serde_json::Value = serde_json::from_str(&ok.body).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r["passed"].as_bool().unwrap()));
        assert!(rows
            .iter()
            .all(|r| r["worst_rel_error"].as_f64().unwrap().is_finite()));

        let forced = cmd_selfcheck(
            &m,
            &SelfcheckArgs {
                tolerance: Some(1e-20),
                format: OutputFormat::Text,
            },
        )
        .unwrap();
        assert!(
            forced.failed_suites > 0,
            "injected tolerance forces failure"
        );
        assert!(forced.body.contains("false"));
    }
}
