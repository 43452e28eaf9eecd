//! JSON-configured amplification runs.

use super::{AmplificationConfig, Amplifier, LedgerSizes, Phi, Sigma};
use crate::descriptor::GroupDesc;
use crate::error::{Error, Result};
use crate::group::GroupOps;
use crate::metric::{
    check_premises, format_rational, parse_rational, ApproxMap, DefectReport, Flavor, PremiseReport, MetricGroup, Rational,
    Value,
};
use crate::words::WordSet;
use crate::wreath::{VerbalWreath, WreathElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbTarget {
    Sigma,
    Phi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub target: PerturbTarget,
    pub rate: f64,
}

fn d_g() -> String {
    "cyclic:2".into()
}
fn d_words() -> String {
    "nil:2".into()
}
fn d_f() -> String {
    "generators".into()
}
fn d_eps() -> String {
    "1/10".into()
}
fn d_kappa() -> String {
    "1/125".into()
}
fn d_auto() -> String {
    "auto".into()
}
fn d_flavor() -> String {
    "sofic".into()
}
fn d_one() -> usize {
    1
}
fn d_prime() -> u32 {
    2
}
fn d_full() -> String {
    "full".into()
}

/// Experiment configuration. Every field has a default, so `{}` is the exact sofic
/// run on `cyclic:2 ≀² cyclic:2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "G", default = "d_g")]
    pub g: String,
    #[serde(rename = "H", default = "d_g")]
    pub h: String,
    #[serde(default = "d_words")]
    pub wordset: String,
    /// `generators` or `ball:N` (products of at most `N` generators and inverses).
    #[serde(rename = "F", default = "d_f")]
    pub f: String,
    #[serde(default = "d_eps")]
    pub epsilon: String,
    #[serde(default = "d_kappa")]
    pub kappa: String,
    #[serde(default = "d_auto")]
    pub epsilon_prime: String,
    #[serde(default = "d_flavor")]
    pub flavor: String,
    #[serde(default)]
    pub perturbation: Option<Perturbation>,
    #[serde(default)]
    pub seed: u64,
    /// Number of copies of the regular representation of `H` making up `B`.
    #[serde(default = "d_one")]
    pub copies: usize,
    /// Field size for the linear-sofic flavor.
    #[serde(default = "d_prime")]
    pub prime: u32,
    /// `full` tabulates `φ` on all of `∗ʷ_B G`, `closure` on `E_G ∪ E_G·E_G`, and `eg`
    /// on `E_G` alone (too small to measure `φ`'s own multiplicativity).
    #[serde(default = "d_full")]
    pub phi_window: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {}", e)))
    }
}

/// The freeness lower bound (or trace upper bound) that the construction guarantees
/// once `σ`, `φ` and `B_E` meet their hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct FreenessCheck {
    pub applies: bool,
    pub bound: Value,
    pub measured: Option<Value>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowRow {
    pub index: usize,
    pub element: String,
    pub h: usize,
    pub dist_to_identity: Value,
    pub trace: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmplifyReport {
    pub config: ExperimentConfig,
    pub flavor: Flavor,
    pub epsilon: Value,
    pub kappa: Value,
    pub epsilon_prime: Value,
    pub ledger: LedgerSizes,
    pub ratio: Value,
    pub kappa_bound_holds: bool,
    pub sigma_perturbed: usize,
    pub phi_perturbed: usize,
    /// `σ` measured on `E_H`.
    pub sigma_defect: DefectReport,
    /// `φ` measured on `E_G`.
    pub phi_defect: DefectReport,
    pub defect: DefectReport,
    pub multiplicative: bool,
    pub free: bool,
    pub four_premise: PremiseReport,
    pub freeness: FreenessCheck,
    /// Flags artifact choices the construction leaves open.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<WindowRow>,
}

impl AmplifyReport {
    /// One CSV row per window element.
    pub fn csv(&self) -> String {
        let mut out = String::from("index,element,h,dist_to_identity,trace\n");
        for r in &self.rows {
            let t = r.trace.map_or(String::new(), |t| format!("{:.12}", t));
            out.push_str(&format!("{},\"{}\",{},{},{}\n", r.index, r.element, r.h, r.dist_to_identity, t));
        }
        out
    }
}

fn window_elements(w: &VerbalWreath, spec: &str) -> Result<Vec<WreathElem>> {
    let gens = w.generators();
    if spec == "generators" {
        return Ok(gens);
    }
    let n: usize = spec
        .strip_prefix("ball:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Parse(format!("window spec must be 'generators' or 'ball:N', got '{}'", spec)))?;
    let mut steps: Vec<WreathElem> = gens.clone();
    steps.extend(gens.iter().map(|g| w.inv(g)));
    let mut ball: BTreeSet<WreathElem> = [w.identity()].into_iter().collect();
    let mut frontier = ball.clone();
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for x in &frontier {
            for s in &steps {
                let y = w.mul(x, s);
                if ball.insert(y.clone()) {
                    next.insert(y);
                }
            }
        }
        frontier = next;
    }
    Ok(ball.into_iter().collect())
}

fn describe(z: &WreathElem) -> String {
    format!("x={:?};t={:?};h={}", z.x.factors, z.x.tensors, z.h)
}

pub fn run_experiment(cfg: &ExperimentConfig, cap: usize) -> Result<AmplifyReport> {
    let g = cfg.g.parse::<GroupDesc>()?.build(cap)?;
    let h = cfg.h.parse::<GroupDesc>()?.build(cap)?;
    let words: WordSet = cfg.wordset.parse()?;
    let flavor: Flavor = cfg.flavor.parse()?;
    let eps = parse_rational(&cfg.epsilon)?;
    let kappa = parse_rational(&cfg.kappa)?;
    let eps_prime = match cfg.epsilon_prime.trim() {
        "auto" => None,
        s => Some(parse_rational(s)?),
    };
    if cfg.copies == 0 {
        return Err(Error::InvalidConfig("copies must be at least 1".into()));
    }
    if !matches!(cfg.phi_window.as_str(), "full" | "closure" | "eg") {
        return Err(Error::Parse(format!("phi_window must be 'full', 'closure' or 'eg', got '{}'", cfg.phi_window)));
    }
    let w = VerbalWreath::new(&g, &h, &words)?;
    let f = window_elements(&w, &cfg.f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut sigma = Sigma::regular(&h, cfg.copies);
    if let Some(Perturbation { target: PerturbTarget::Sigma, rate }) = cfg.perturbation {
        sigma = sigma.perturb(rate, &mut rng);
    }
    let amp = Amplifier::new(&w, sigma, &f)?;
    let config = AmplificationConfig::new(eps, kappa, eps_prime, amp.hsets.e.len())?;
    let one = amp.bprod.identity();
    let mut phi = Phi::regular(&amp.bprod, cap)?;
    if let Some(Perturbation { target: PerturbTarget::Phi, rate }) = cfg.perturbation {
        phi = phi.perturb(&one, rate, &mut rng);
    }
    match cfg.phi_window.as_str() {
        "closure" => phi = phi.restrict(&amp.phi_window_closure(), &one),
        "eg" => phi = phi.restrict(&amp.e_g.iter().cloned().collect(), &one),
        _ => {}
    }

    let sigma_defect = amp.sigma.approx_map(amp.hsets.e_h.clone()).measure(&h)?;
    let phi_defect = phi.approx_map(&amp.bprod, amp.e_g.clone())?.measure(&amp.bprod)?;
    let sets = &amp.hsets.premise;
    let (defect, lemma, rows) = match flavor {
        Flavor::Sofic => evaluate(&w, sets, eps, amp.sofic_map(&phi)?)?,
        Flavor::WeakSofic => evaluate(&w, sets, eps, amp.weak_map(&phi)?)?,
        Flavor::Hyperlinear => evaluate(&w, sets, eps, amp.hyperlinear_map(&phi)?)?,
        Flavor::LinearSofic => evaluate(&w, sets, eps, amp.linear_map(&phi, cfg.prime)?)?,
    };

    let ep = config.epsilon_prime;
    let one_r = Rational::from_integer(1);
    let within = |r: &DefectReport| r.mult_defect.lt(ep) && r.free_defect.map_or(true, |f| !f.lt(one_r - ep));
    let ratio = amp.bsets.ratio;
    let applies = within(&sigma_defect) && within(&phi_defect) && ratio <= kappa;
    let freeness = match flavor {
        Flavor::Sofic | Flavor::WeakSofic => {
            let bound = Value::Exact((one_r - kappa) * (one_r - ep));
            let holds = defect.free_defect.map_or(true, |f| bound.le_value(f));
            FreenessCheck { applies, bound, measured: defect.free_defect, holds }
        }
        Flavor::Hyperlinear => {
            let bound = Value::Exact(kappa + ep);
            let holds = defect.trace_max.map_or(true, |t| Value::Approx(t).le_value(bound));
            FreenessCheck { applies, bound, measured: defect.trace_max.map(Value::Approx), holds }
        }
        Flavor::LinearSofic => {
            let bound = Value::Exact((one_r - kappa) * (Rational::new(1, 4) - ep));
            let holds = defect.free_defect.map_or(true, |f| bound.le_value(f));
            FreenessCheck { applies, bound, measured: defect.free_defect, holds }
        }
    };

    let mut notes = vec!["φ is the left regular representation of the finite product over B".to_string()];
    if cfg.perturbation.is_some() {
        notes.push(format!("perturbed with seed {}", cfg.seed));
    }
    Ok(AmplifyReport {
        config: cfg.clone(),
        flavor,
        epsilon: Value::Exact(eps),
        kappa: Value::Exact(kappa),
        epsilon_prime: Value::Exact(ep),
        ledger: amp.sizes(),
        ratio: Value::Exact(ratio),
        kappa_bound_holds: ratio <= kappa,
        sigma_perturbed: amp.sigma.perturbed,
        phi_perturbed: phi.perturbed,
        sigma_defect,
        phi_defect,
        multiplicative: defect.is_multiplicative(eps),
        free: defect.is_free(eps),
        defect,
        four_premise: lemma,
        freeness,
        notes,
        rows,
    })
}

fn evaluate<M: MetricGroup>(
    w: &VerbalWreath,
    sets: &crate::metric::PremiseSets,
    eps: Rational,
    gamma: ApproxMap<WreathElem, M>,
) -> Result<(DefectReport, PremiseReport, Vec<WindowRow>)> {
    let defect = gamma.measure(w)?;
    let lemma = check_premises(w, sets, eps, &gamma)?;
    let id = gamma.target.identity();
    let mut rows = Vec::with_capacity(gamma.window.len());
    for (index, z) in gamma.window.iter().enumerate() {
        let img = gamma.get(z)?;
        rows.push(WindowRow {
            index,
            element: describe(z),
            h: z.h,
            dist_to_identity: gamma.target.dist(img, &id),
            trace: if gamma.flavor == Flavor::Hyperlinear { gamma.target.trace(img) } else { None },
        });
    }
    Ok((defect, lemma, rows))
}

/// `p/q` rendering used in summaries.
pub fn value_string(v: &Value) -> String {
    match v {
        Value::Exact(r) => format_rational(r),
        Value::Approx(x) => format!("{:.12}", x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn default_run_is_exact() {
        let r = run_experiment(&ExperimentConfig::default(), DEFAULT_CAP).unwrap();
        assert_eq!(r.defect.mult_defect, Value::zero());
        assert_eq!(serde_json::to_value(&r.defect.mult_defect).unwrap(), "0/1");
        assert!(r.four_premise.premises_pass && r.freeness.holds && r.free);
        assert_eq!(r.rows.len(), r.ledger.f0);
    }

    #[test]
    fn perturbed_runs_are_deterministic() {
        let cfg = ExperimentConfig::from_json(r#"{"H":"cyclic:3","perturbation":{"target":"phi","rate":0.1},"seed":4}"#).unwrap();
        let a = serde_json::to_string(&run_experiment(&cfg, DEFAULT_CAP).unwrap()).unwrap();
        let b = serde_json::to_string(&run_experiment(&cfg, DEFAULT_CAP).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_errors() {
        assert!(ExperimentConfig::from_json(r#"{"bogus":1}"#).is_err());
        let cfg = ExperimentConfig { phi_window: "eg".into(), ..Default::default() };
        assert!(matches!(run_experiment(&cfg, DEFAULT_CAP), Err(Error::WindowNotClosed(_))));
        // E_G and its products already cover every point Γ is evaluated at.
        let cfg = ExperimentConfig { h: "cyclic:3".into(), f: "ball:2".into(), phi_window: "closure".into(), ..Default::default() };
        assert!(run_experiment(&cfg, DEFAULT_CAP).unwrap().defect.mult_defect.is_zero());
        let cfg = ExperimentConfig { kappa: "1/2".into(), ..Default::default() };
        assert!(matches!(run_experiment(&cfg, DEFAULT_CAP), Err(Error::InvalidConfig(_))));
    }
}
