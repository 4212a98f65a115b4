//! One function per subcommand. Each returns a [`Report`] whose `pass` flag
//! decides the exit code; [`InputError`] covers everything that makes a run
//! impossible to start.

mod chevalley;
mod double;
mod exact;
mod normal_form;
mod sample;

pub use chevalley::verify_chevalley;
pub use double::verify_double;
pub use exact::{generation, jacobian, molien};
pub use normal_form::normal_form;
pub use sample::{sample, SampleKind};

use cyclic_quiver::linalg::Complex;
use cyclic_quiver::normal_form::near_branch_cut;
use cyclic_quiver::quiver::Genericity;
use cyclic_quiver::rng::{derive_seed, trial_rng, ChaCha8Rng};
use cyclic_quiver::Tolerances;
use thiserror::Error;

use crate::formats::FormatError;
use crate::report::Check;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<FormatError> for InputError {
    fn from(e: FormatError) -> Self {
        InputError(e.to_string())
    }
}

impl From<cyclic_quiver::Error> for InputError {
    fn from(e: cyclic_quiver::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<String> for InputError {
    fn from(e: String) -> Self {
        InputError(e)
    }
}

/// Independent random streams, one per check family. Trial `i` of stream `s`
/// draws from `trial_rng(derive_seed(seed, s), i)`, so results never depend
/// on execution order.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
pub(crate) enum Stream {
    Rho = 1,
    Canonical = 2,
    Phi = 3,
    Saturation = 4,
    Diagram = 5,
    Sample = 6,
    Input = 7,
}

pub(crate) fn stream_rng(seed: u64, stream: Stream, trial: usize) -> ChaCha8Rng {
    trial_rng(derive_seed(seed, stream as u64), trial as u64)
}

pub(crate) const TOL: Tolerances = Tolerances::DEFAULT;

/// Margin from the principal-root branch cut below which a sample is
/// skipped in randomized suites.
pub(crate) const BRANCH_MARGIN: f64 = 1e-6;

/// Genericity margins within this factor of the tolerance are flagged.
pub(crate) const NEAR_DEGENERATE: f64 = 10.0;

pub(crate) fn usable(g: &Genericity) -> bool {
    g.generic
        && !g
            .eigenvalues
            .iter()
            .any(|&w: &Complex| near_branch_cut(w, BRANCH_MARGIN))
}

pub(crate) fn near_degenerate(g: &Genericity) -> bool {
    g.generic && g.min_margin() < NEAR_DEGENERATE * TOL.generic
}

/// Worst value and failure count over many trials of one check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub worst: f64,
    pub samples: usize,
    pub errors: usize,
    pub skipped: usize,
}

impl Tally {
    pub fn record(&mut self, value: f64) {
        self.samples += 1;
        if !(value <= self.worst) {
            self.worst = value;
        }
    }

    pub fn error(&mut self) {
        self.errors += 1;
    }

    pub fn check(&self, name: &str, margin: f64) -> Check {
        let mut c = Check::bound(name, self.worst, margin);
        c.passed &= self.errors == 0 && self.samples > 0;
        c.with_detail(format!(
            "{} samples, {} errors, {} skipped",
            self.samples, self.errors, self.skipped
        ))
    }
}
