//! Module Gröbner bases, syzygies and minimal free resolutions.

mod groebner;
mod resolution;

pub use groebner::{kernel_generators, module_groebner, run_engine, syzygies, EngineOutput, InputFate, ModuleGB, Term};
pub use resolution::{certify, minimal_free_resolution, minimalize, Certificate, FreeResolution};
