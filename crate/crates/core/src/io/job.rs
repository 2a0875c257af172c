use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{
    check_row_contraction, defect_space, free_cover, nc_counterexample, powers_module, quotient_module, zeros_module,
    TruncatedHilbertModule,
};
use crate::io::json::{parse_input, to_pretty, Input, SCHEMA_VERSION};
use crate::io::report::{CoverReport, DefectReport, NcReportJson, ResolveReport};
use crate::pipeline::{resolve_hilbert_module, resolve_presentation, Mode};
use crate::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

/// What to run. File-backed commands carry the input text, already read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve { input: String },
    Betti { input: String },
    Cover { input: String },
    Defect { input: String },
    ExampleZeros { d: usize, r: usize },
    ExamplePowers { ns: Vec<u32> },
    NcDemo { d: usize, start: i64, steps: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Resolve { .. } => "resolve",
            Command::Betti { .. } => "betti",
            Command::Cover { .. } => "cover",
            Command::Defect { .. } => "defect",
            Command::ExampleZeros { .. } => "example zeros",
            Command::ExamplePowers { .. } => "example powers",
            Command::NcDemo { .. } => "nc-demo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    /// Truncation degree for Hilbert modules built by the job.
    pub max_degree: i64,
    pub mode: Mode,
    pub format: Format,
}

pub const DEFAULT_MAX_DEGREE: i64 = 8;

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec { command, max_degree: DEFAULT_MAX_DEGREE, mode: Mode::Both, format: Format::Table }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 1 {
            return Err(Error::InvalidParameter(format!("max degree must be at least 1, got {}", self.max_degree)));
        }
        match &self.command {
            Command::ExampleZeros { d, .. } if *d == 0 => {
                Err(Error::InvalidParameter("example zeros needs d >= 1".into()))
            }
            Command::ExamplePowers { ns } if ns.is_empty() || ns.contains(&0) => {
                Err(Error::InvalidParameter("example powers needs positive exponents".into()))
            }
            Command::NcDemo { d, start, .. } if *d < 2 || *start < 0 => {
                Err(Error::InvalidParameter("nc-demo needs d >= 2 and start >= 0".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOutput {
    pub text: String,
    /// Every certificate the job computed passed.
    pub passed: bool,
}

fn emit<T: Serialize>(format: Format, report: &T, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => to_pretty(report),
        Format::Table => table(),
    }
}

fn as_module(input: Input<Rational>, top: i64) -> Result<TruncatedHilbertModule<Rational>> {
    match input {
        Input::Presentation(p) => quotient_module(&p, top),
        Input::Module(h) => Ok(h),
    }
}

fn resolve(job: &JobSpec, input: Input<Rational>) -> Result<JobOutput> {
    let name = job.command.name();
    let resolved = match input {
        Input::Presentation(p) => resolve_presentation(&p, job.mode, job.max_degree)?,
        Input::Module(h) => resolve_hilbert_module(&h, job.mode)?,
    };
    let report = ResolveReport::new(name, &resolved, name != "betti");
    Ok(JobOutput { text: emit(job.format, &report, || report.render()), passed: report.passed })
}

fn defect(job: &JobSpec, h: &TruncatedHilbertModule<Rational>) -> DefectReport {
    let g = defect_space(h);
    let rc = check_row_contraction(h);
    DefectReport::new(job.command.name(), h, &g, &rc)
}

fn cover(job: &JobSpec, h: &TruncatedHilbertModule<Rational>) -> Result<CoverReport> {
    Ok(CoverReport::new(job.command.name(), &free_cover(h)?))
}

#[derive(Serialize)]
struct PowersJson<'a> {
    schema_version: u32,
    command: &'a str,
    ns: &'a [u32],
    expected_defect: u64,
    defect: &'a DefectReport,
    cover: &'a CoverReport,
    passed: bool,
}

/// Runs a job. The output depends only on `job`.
pub fn run_job(job: &JobSpec) -> Result<JobOutput> {
    job.validate()?;
    let top = job.max_degree;
    match &job.command {
        Command::Resolve { input } | Command::Betti { input } => resolve(job, parse_input(input)?),
        Command::Cover { input } => {
            let r = cover(job, &as_module(parse_input(input)?, top)?)?;
            Ok(JobOutput { text: emit(job.format, &r, || r.render()), passed: r.passed })
        }
        Command::Defect { input } => {
            let r = defect(job, &as_module(parse_input(input)?, top)?);
            Ok(JobOutput { text: emit(job.format, &r, || r.render()), passed: r.passed })
        }
        Command::ExampleZeros { d, r } => resolve(job, Input::Module(zeros_module(*d, *r, top)?)),
        Command::ExamplePowers { ns } => {
            let h = powers_module::<Rational>(ns, top)?;
            let d = defect(job, &h);
            let c = cover(job, &h)?;
            let expected: u64 = ns.iter().map(|n| *n as u64).product();
            let passed = d.passed && c.passed;
            let j = PowersJson {
                schema_version: SCHEMA_VERSION,
                command: job.command.name(),
                ns,
                expected_defect: expected,
                defect: &d,
                cover: &c,
                passed,
            };
            let text = emit(job.format, &j, || {
                let ns: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                format!("powers N=({}) expected defect {expected}\n{}{}", ns.join(","), d.render(), c.render())
            });
            Ok(JobOutput { text, passed })
        }
        Command::NcDemo { d, start, steps } => {
            let r = NcReportJson::new(&nc_counterexample::<Rational>(*d, *start, *steps)?);
            Ok(JobOutput { text: emit(job.format, &r, || r.render()), passed: r.passed })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_presentation_job() {
        let input = r#"{"d":2,"gen_degrees":[0],"relations":[["z1"],["z2"]]}"#.to_string();
        let mut job = JobSpec::new(Command::Resolve { input });
        job.max_degree = 5;
        let out = run_job(&job).unwrap();
        assert!(out.passed);
        assert!(out.text.starts_with("betti=(1,2,1) euler=0 length=3\n"), "{}", out.text);
        job.format = Format::Json;
        let a = run_job(&job).unwrap().text;
        assert_eq!(a, run_job(&job).unwrap().text);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["cross_check"]["agree"], true);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut job = JobSpec::new(Command::NcDemo { d: 1, start: 2, steps: 4 });
        assert!(matches!(run_job(&job), Err(Error::InvalidParameter(_))));
        job.command = Command::ExampleZeros { d: 1, r: 1 };
        job.max_degree = 0;
        assert!(matches!(run_job(&job), Err(Error::InvalidParameter(_))));
    }
}
