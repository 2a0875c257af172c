//! End-to-end resolution of presentations and truncated Hilbert modules in
//! analytic, algebraic, or both modes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graded::GradedPresentation;
use crate::hilbert::{algebraize, quotient_module, resolve_analytic, AnalyticResolution, TruncatedHilbertModule};
use crate::scalar::Field;
use crate::syzygy::{certify, minimal_free_resolution, Certificate, FreeResolution};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    Analytic,
    Algebraic,
    #[default]
    Both,
}

impl Mode {
    fn analytic(self) -> bool {
        self != Mode::Algebraic
    }

    fn algebraic(self) -> bool {
        self != Mode::Analytic
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Algebraic => "algebraic",
            Mode::Both => "both",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "algebraic" => Ok(Mode::Algebraic),
            "both" => Ok(Mode::Both),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Resolved<F> {
    pub mode: Mode,
    /// The module being resolved, as a presentation.
    pub presentation: GradedPresentation<F>,
    /// Set when the presentation was read off a Hilbert module.
    pub certified_through: Option<i64>,
    pub analytic: Option<AnalyticResolution<F>>,
    pub algebraic: Option<FreeResolution<F>>,
    /// Exact checks on [`Resolved::resolution`] against the presentation.
    pub certificate: Certificate,
    pub agree: Option<bool>,
}

field_debug!(Resolved { mode, presentation, certified_through, analytic, algebraic, certificate, agree });

impl<F: Field> Resolved<F> {
    /// The algebraic resolution when it was computed, otherwise the analytic one.
    pub fn resolution(&self) -> &FreeResolution<F> {
        self.algebraic.as_ref().or(self.analytic.as_ref().map(|a| &a.resolution)).expect("at least one mode ran")
    }

    pub fn passed(&self) -> bool {
        self.certificate.passed()
            && self.agree != Some(false)
            && self.analytic.as_ref().is_none_or(|a| a.steps.iter().all(|s| s.certificates.passed()))
    }
}

pub fn summary_line<F: Field>(r: &FreeResolution<F>) -> String {
    let b: Vec<String> = r.betti().iter().map(|x| x.to_string()).collect();
    format!("betti=({}) euler={} length={}", b.join(","), r.euler(), r.length())
}

fn finish<F: Field>(
    mode: Mode,
    presentation: GradedPresentation<F>,
    certified_through: Option<i64>,
    analytic: Option<AnalyticResolution<F>>,
    algebraic: Option<FreeResolution<F>>,
) -> Result<Resolved<F>> {
    let agree = match (&analytic, &algebraic) {
        (Some(a), Some(b)) => {
            if a.resolution.graded_betti() != b.graded_betti() {
                return Err(Error::ModeMismatch {
                    analytic: graded_summary(&a.resolution),
                    algebraic: graded_summary(b),
                });
            }
            Some(true)
        }
        _ => None,
    };
    let primary = algebraic.as_ref().or(analytic.as_ref().map(|a| &a.resolution)).unwrap();
    let certificate = certify(primary, &presentation, primary.default_check_degree());
    Ok(Resolved { mode, presentation, certified_through, analytic, algebraic, certificate, agree })
}

fn graded_summary<F: Field>(r: &FreeResolution<F>) -> String {
    let parts: Vec<String> = r.modules().iter().map(|m| format!("{:?}", m.gen_degrees())).collect();
    format!("{} generators {}", summary_line(r), parts.join(" "))
}

/// Resolves `coker(relations)`. The analytic mode realizes the module as a
/// quotient of `H² ⊗ C` truncated at `top`.
pub fn resolve_presentation<F: Field>(p: &GradedPresentation<F>, mode: Mode, top: i64) -> Result<Resolved<F>> {
    let algebraic = if mode.algebraic() { Some(minimal_free_resolution(p)?) } else { None };
    let analytic = if mode.analytic() {
        let h = quotient_module(p, top)?;
        Some(resolve_analytic(&h)?)
    } else {
        None
    };
    finish(mode, p.clone(), None, analytic, algebraic)
}

/// Resolves `H⁰` for a graded commutative truncated Hilbert module.
pub fn resolve_hilbert_module<F: Field>(h: &TruncatedHilbertModule<F>, mode: Mode) -> Result<Resolved<F>> {
    let alg = algebraize(h)?;
    let algebraic = if mode.algebraic() { Some(minimal_free_resolution(&alg.presentation)?) } else { None };
    let analytic = if mode.analytic() { Some(resolve_analytic(h)?) } else { None };
    finish(mode, alg.presentation, Some(alg.certified_through), analytic, algebraic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::FreeVec;
    use crate::hilbert::{build_free, zeros_module, Flavor};
    use crate::poly::CommPoly;
    use crate::Rational;

    #[test]
    fn summary_lines() {
        let h = zeros_module::<Rational>(1, 3, 6).unwrap();
        let r = resolve_hilbert_module(&h, Mode::Both).unwrap();
        assert!(r.passed());
        assert_eq!(summary_line(r.resolution()), "betti=(1,3,3,1) euler=0 length=4");
        let free = build_free::<Rational>(2, 4, &[0, 0], Flavor::Commutative).unwrap();
        let r = resolve_hilbert_module(&free, Mode::Both).unwrap();
        assert_eq!(summary_line(r.resolution()), "betti=(2,0) euler=2 length=1");
    }

    #[test]
    fn presentation_in_both_modes() {
        let cols: Vec<FreeVec<Rational>> = ["z1", "z2"].iter().map(|s| vec![CommPoly::parse(s, 2).unwrap()]).collect();
        let p = GradedPresentation::from_columns(2, vec![0], cols).unwrap();
        let r = resolve_presentation(&p, Mode::Both, 6).unwrap();
        assert_eq!(r.agree, Some(true));
        assert!(r.passed());
        assert_eq!(r.resolution().betti(), vec![1, 2, 1]);
        assert_eq!("analytic".parse::<Mode>().unwrap(), Mode::Analytic);
        assert!("fast".parse::<Mode>().is_err());
    }
}
