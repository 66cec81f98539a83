//! Seeded verification suites with JSON reports.
//!
//! Every suite is deterministic for a fixed [`VerifyOptions`]; wall-clock
//! time is only recorded when [`VerifyOptions::timing`] is set.

mod k0;
mod operad;
mod series;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::tamari::MAX_N;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    OperadAxioms,
    GroebnerConfluence,
    Dimension,
    QBasis,
    ThetaCharacterization,
    TheoIdem,
    Periodicity,
    Charpoly,
    ProductDescriptions,
    DendriformLemma,
    Legendre,
    ChwInduction,
    InvolutionSquare,
    SeriesIdentity,
    SommeDeM,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 15] = [
        Suite::OperadAxioms,
        Suite::GroebnerConfluence,
        Suite::Dimension,
        Suite::QBasis,
        Suite::ThetaCharacterization,
        Suite::TheoIdem,
        Suite::Periodicity,
        Suite::Charpoly,
        Suite::ProductDescriptions,
        Suite::DendriformLemma,
        Suite::Legendre,
        Suite::ChwInduction,
        Suite::InvolutionSquare,
        Suite::SeriesIdentity,
        Suite::SommeDeM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OperadAxioms => "operad-axioms",
            Suite::GroebnerConfluence => "groebner-confluence",
            Suite::Dimension => "dimension",
            Suite::QBasis => "q-basis",
            Suite::ThetaCharacterization => "theta-characterization",
            Suite::TheoIdem => "theo-idem",
            Suite::Periodicity => "periodicity",
            Suite::Charpoly => "charpoly",
            Suite::ProductDescriptions => "product-descriptions",
            Suite::DendriformLemma => "dendriform-lemma",
            Suite::Legendre => "legendre",
            Suite::ChwInduction => "chw-induction",
            Suite::InvolutionSquare => "involution-square",
            Suite::SeriesIdentity => "series-identity",
            Suite::SommeDeM => "somme-de-m",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Overrides for the default ranges of each suite.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Upper bound on tree size / operad component index.
    pub max_n: Option<usize>,
    /// Truncation degree for symmetric-function suites.
    pub degree: Option<usize>,
    /// Number of random instances per randomized check.
    pub samples: Option<usize>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: None, degree: None, samples: None, seed: DEFAULT_SEED, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Witness on failure; optional supporting data on success.
    pub detail: Option<Value>,
}

impl CheckResult {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite.name()));
        m.insert("name".into(), json!(self.name));
        m.insert("status".into(), json!(if self.passed { "pass" } else { "fail" }));
        if let Some(d) = &self.detail {
            m.insert(if self.passed { "detail" } else { "witness" }.into(), d.clone());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: Suite,
    pub parameters: Map<String, Value>,
    pub checks: Vec<CheckResult>,
    pub duration_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite.name()));
        m.insert("parameters".into(), Value::Object(self.parameters.clone()));
        m.insert("passed".into(), json!(self.passed()));
        m.insert("checks".into(), Value::Array(self.checks.iter().map(CheckResult::to_json).collect()));
        if let Some(ms) = self.duration_ms {
            m.insert("duration_ms".into(), json!(ms));
        }
        Value::Object(m)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{status}  {}/{}\n", c.suite, c.name));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}: {} checks, {} failed", self.suite, self.checks.len(), failed));
        if let Some(ms) = self.duration_ms {
            out.push_str(&format!(", {ms} ms"));
        }
        out.push('\n');
        out
    }
}

/// Resolved parameters shared by the suites.
pub(crate) struct Ctx {
    pub opts: VerifyOptions,
    pub checks: Vec<CheckResult>,
    pub suite: Suite,
}

impl Ctx {
    pub fn max_n(&self, default: usize) -> usize {
        self.opts.max_n.unwrap_or(default)
    }

    pub fn degree(&self, default: usize) -> usize {
        self.opts.degree.unwrap_or(default)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.opts.samples.unwrap_or(default)
    }

    /// A generator private to the current suite and check label.
    pub fn rng(&self, label: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.suite.name().bytes().chain(*b"/").chain(label.bytes()) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ h)
    }

    /// Records a check: `Ok(None)` passes, `Ok(Some(w))` fails with witness
    /// `w`, and an error fails with the error message.
    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Option<Value>>) {
        let (passed, detail) = match f() {
            Ok(None) => (true, None),
            Ok(Some(w)) => (false, Some(w)),
            Err(e) => (false, Some(json!({ "error": e.to_string() }))),
        };
        self.checks.push(CheckResult { suite: self.suite, name: name.into(), passed, detail });
    }

    /// Like [`Ctx::run`], with supporting data kept on success.
    pub fn run_detailed(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, Value)>) {
        let (passed, detail) = match f() {
            Ok((ok, d)) => (ok, Some(d)),
            Err(e) => (false, Some(json!({ "error": e.to_string() }))),
        };
        self.checks.push(CheckResult { suite: self.suite, name: name.into(), passed, detail });
    }
}

/// Fails with `witness` unless `ok`.
pub(crate) fn expect(ok: bool, witness: impl FnOnce() -> Value) -> Option<Value> {
    if ok {
        None
    } else {
        Some(witness())
    }
}

fn parameters(opts: &VerifyOptions) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("seed".into(), json!(opts.seed));
    if let Some(n) = opts.max_n {
        m.insert("max_n".into(), json!(n));
    }
    if let Some(d) = opts.degree {
        m.insert("degree".into(), json!(d));
    }
    if let Some(s) = opts.samples {
        m.insert("samples".into(), json!(s));
    }
    m
}

/// Runs a suite. Only option validation errors are returned; failing checks
/// are reported inside the report.
pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    if let Some(n) = opts.max_n {
        if n > MAX_N {
            return Err(Error::ResourceLimit(format!("max_n = {n} exceeds the supported bound {MAX_N}")));
        }
    }
    if let Some(d) = opts.degree {
        if d < 2 {
            return Err(Error::Precondition("degree must be at least 2".into()));
        }
    }
    let start = Instant::now();
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in list {
        let mut ctx = Ctx { opts: opts.clone(), checks: Vec::new(), suite: s };
        match s {
            Suite::OperadAxioms => operad::axioms(&mut ctx),
            Suite::GroebnerConfluence => operad::confluence(&mut ctx),
            Suite::Dimension => operad::dimension(&mut ctx),
            Suite::QBasis => operad::q_basis(&mut ctx),
            Suite::TheoIdem => operad::psi_intertwines(&mut ctx),
            Suite::ThetaCharacterization => k0::theta_characterization(&mut ctx),
            Suite::Periodicity => k0::periodicity(&mut ctx),
            Suite::Charpoly => k0::charpoly(&mut ctx),
            Suite::ProductDescriptions => k0::products(&mut ctx),
            Suite::DendriformLemma => k0::dendriform(&mut ctx),
            Suite::SommeDeM => k0::virtual_module(&mut ctx),
            Suite::Legendre => series::legendre(&mut ctx),
            Suite::ChwInduction => series::chw_induction(&mut ctx),
            Suite::InvolutionSquare => series::involution_square(&mut ctx),
            Suite::SeriesIdentity => series::series_identity(&mut ctx),
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(ctx.checks);
    }
    let duration_ms = opts.timing.then(|| start.elapsed().as_millis());
    Ok(VerificationReport { suite, parameters: parameters(opts), checks, duration_ms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn rejects_oversized_range() {
        let opts = VerifyOptions { max_n: Some(MAX_N + 1), ..Default::default() };
        assert!(matches!(run_verify(Suite::Dimension, &opts), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn small_run_is_deterministic() {
        let opts = VerifyOptions { max_n: Some(3), samples: Some(10), ..Default::default() };
        let a = run_verify(Suite::OperadAxioms, &opts).unwrap();
        let b = run_verify(Suite::OperadAxioms, &opts).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().get("duration_ms").is_none());
    }
}
