//! The analysis pipeline: configuration, fixture catalog, reports and the report cache.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::invariants::{resolve_gamma_weights, GammaWeights, InvariantSpace, Variable, WeightedPolynomial};
use crate::ktypes::{Cone, KTypeLattice};
use crate::liealg::{build_real_form, AlgebraRealization, RealFormDescriptor};
use crate::orbits::{
    commutativity_check, gy_condition_check, small_exact_sequence_check, GradeDimensions, NormalTriple, Orbit,
    OrbitDescriptor, OrbitFlags, PartitionLabel,
};
use crate::roots::{build_root_datum, RootDatum, WeightVector};

fn default_max_degree() -> usize {
    6
}
fn default_bound() -> i64 {
    12
}
fn default_samples() -> usize {
    8
}

/// Input to [`analyze`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub algebra: RealFormDescriptor,
    pub orbit: OrbitDescriptor,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default = "default_bound")]
    pub bound: i64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl AnalysisConfig {
    pub fn new(algebra: RealFormDescriptor, orbit: OrbitDescriptor) -> Self {
        AnalysisConfig {
            algebra,
            orbit,
            max_degree: default_max_degree(),
            bound: default_bound(),
            seed: 0,
            samples: default_samples(),
            output: None,
        }
    }

    pub fn for_fixture(name: &str) -> Result<Self> {
        let f = fixture(name).ok_or_else(|| Error::Descriptor(format!("unknown fixture {name:?}")))?;
        Ok(Self::new(f.algebra, f.orbit))
    }

    pub fn validate(&self) -> Result<()> {
        self.algebra.validate()?;
        if self.max_degree == 0 || self.bound <= 0 || self.samples == 0 {
            return Err(Error::Descriptor("max_degree, bound and samples must be positive".into()));
        }
        Ok(())
    }

    /// Parses JSON, or TOML when the text is not JSON.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: AnalysisConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(json_err) => toml::from_str(text).map_err(|toml_err| {
                Error::Parse(format!("config is neither JSON ({json_err}) nor TOML ({toml_err})"))
            })?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Content hash of everything that determines the report.
    pub fn cache_key(&self) -> String {
        #[derive(Serialize)]
        struct Key<'a> {
            algebra: &'a RealFormDescriptor,
            orbit: &'a OrbitDescriptor,
            max_degree: usize,
            bound: i64,
            seed: u64,
            samples: usize,
        }
        let key = Key {
            algebra: &self.algebra,
            orbit: &self.orbit,
            max_degree: self.max_degree,
            bound: self.bound,
            seed: self.seed,
            samples: self.samples,
        };
        let canonical = serde_json::to_string(&key).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

/// A named built-in orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub algebra: RealFormDescriptor,
    pub orbit: OrbitDescriptor,
}

fn fx(name: &str, description: &str, algebra: RealFormDescriptor, orbit: OrbitDescriptor) -> Fixture {
    Fixture { name: name.into(), description: description.into(), algebra, orbit }
}

fn partition(parts: &[usize], label: Option<PartitionLabel>) -> OrbitDescriptor {
    OrbitDescriptor::Partition { partition: parts.to_vec(), label }
}

fn signed(s: &str) -> OrbitDescriptor {
    OrbitDescriptor::Signed { signed: s.into() }
}

/// The built-in fixtures.
pub fn list_fixtures() -> Vec<Fixture> {
    use RealFormDescriptor::{SlR, Su};
    vec![
        fx(
            "speh_sl4R",
            "sl(4,R), partition 2+2, label I: the orbit of Y1+Y2",
            SlR { n: 4 },
            partition(&[2, 2], Some(PartitionLabel::I)),
        ),
        fx("su63_333", "su(6,3), partition 3+3+3: small but not spherical", Su { p: 6, q: 3 }, signed("+-+,+-+,+-+")),
        fx(
            "su21_principal",
            "su(2,1), principal nilpotent: small, spherical, height 4",
            Su { p: 2, q: 1 },
            signed("+-+"),
        ),
        fx(
            "sl6_2cubed_I",
            "sl(6,R), partition 2+2+2, label I",
            SlR { n: 6 },
            partition(&[2, 2, 2], Some(PartitionLabel::I)),
        ),
        fx(
            "sl6_2cubed_II",
            "sl(6,R), partition 2+2+2, label II",
            SlR { n: 6 },
            partition(&[2, 2, 2], Some(PartitionLabel::II)),
        ),
        fx("sl4_211", "sl(4,R), partition 2+1+1: rank one", SlR { n: 4 }, partition(&[2, 1, 1], None)),
        fx("zero_sl4R", "sl(4,R), zero orbit", SlR { n: 4 }, partition(&[1, 1, 1, 1], None)),
        fx("zero_sl6R", "sl(6,R), zero orbit", SlR { n: 6 }, partition(&[1; 6], None)),
        fx("zero_su21", "su(2,1), zero orbit", Su { p: 2, q: 1 }, signed("+ + -")),
        fx("zero_su63", "su(6,3), zero orbit", Su { p: 6, q: 3 }, signed("+ + + + + + - - -")),
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    list_fixtures().into_iter().find(|f| f.name == name)
}

/// A lattice point with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub weight: WeightVector,
    pub multiplicity: u64,
}

/// Kernel dimension in one degree against the generator-monomial prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub kernel_dimension: usize,
    pub matches_generators: bool,
}

/// Generators of the invariant ring and the weights derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub variables: Vec<Variable>,
    pub generators: Vec<WeightedPolynomial>,
    pub weights: GammaWeights,
    pub degree_checks: Vec<DegreeCheck>,
}

/// Everything computed for one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub algebra: RealFormDescriptor,
    pub orbit: OrbitDescriptor,
    pub max_degree: usize,
    pub bound: i64,
    pub seed: u64,
    pub samples: usize,
    /// Coordinates in the realization basis, `k_C` first.
    pub basis_labels: Vec<String>,
    pub triple: NormalTriple,
    pub grading: Vec<GradeDimensions>,
    pub flags: OrbitFlags,
    pub gy_condition: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_sequence: Option<bool>,
    pub commutative: bool,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_sample: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
    /// Stage timings in microseconds; not part of the deterministic content.
    #[serde(default)]
    pub timings: BTreeMap<String, u64>,
}

impl OrbitReport {
    /// The report with timings removed, for determinism comparisons.
    pub fn without_timings(&self) -> OrbitReport {
        OrbitReport { timings: BTreeMap::new(), ..self.clone() }
    }

    /// Generator weights `γ_i`, if the invariants stage ran.
    pub fn gamma(&self) -> Option<&[WeightVector]> {
        self.invariants.as_ref().map(|i| i.weights.gamma.as_slice())
    }

    pub fn weight_len(&self) -> usize {
        match self.algebra {
            RealFormDescriptor::SlR { n } => n / 2,
            RealFormDescriptor::Su { p, q } => p + q,
        }
    }

    /// The lattice of generator weights, if the invariants stage ran.
    pub fn lattice(&self) -> Result<Option<KTypeLattice>> {
        self.gamma().map(|g| KTypeLattice::new(g.to_vec(), self.weight_len())).transpose()
    }

    /// Rebuilds the root datum from the stored grading element.
    pub fn root_datum(&self) -> Result<RootDatum> {
        let g = build_real_form(self.algebra)?;
        build_root_datum(&g, &self.triple.x)
    }
}

struct Timer {
    timings: BTreeMap<String, u64>,
    last: Instant,
}

impl Timer {
    fn new() -> Self {
        Timer { timings: BTreeMap::new(), last: Instant::now() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.insert(stage.into(), (now - self.last).as_micros() as u64);
        self.last = now;
    }
}

/// Runs realization → representative → triple → grading → flags, then
/// (for small spherical orbits) invariants → lattice → cone.
pub fn analyze(config: &AnalysisConfig) -> Result<OrbitReport> {
    config.validate().map_err(|e| e.stage("config"))?;
    let mut timer = Timer::new();
    let g = build_real_form(config.algebra).map_err(|e| e.stage("realization"))?;
    timer.lap("realization");
    let orbit = Orbit::build(&g, &config.orbit)?;
    timer.lap("orbit");
    let flags = orbit.flags(&g, config.samples, config.seed);
    let gy_condition = gy_condition_check(&g, &orbit.grading, &orbit.triple.e);
    let exact_sequence = if flags.small {
        Some(small_exact_sequence_check(&g, &orbit.grading, &orbit.triple).map_err(|e| e.stage("flags"))?)
    } else {
        None
    };
    let commutative = commutativity_check(&g, &orbit.grading);
    timer.lap("flags");

    let mut report = OrbitReport {
        algebra: config.algebra,
        orbit: config.orbit.clone(),
        max_degree: config.max_degree,
        bound: config.bound,
        seed: config.seed,
        samples: config.samples,
        basis_labels: (0..g.dim()).map(|i| g.basis_label(i).to_string()).collect(),
        triple: orbit.triple.clone(),
        grading: orbit.grading.dimensions(),
        flags: flags.clone(),
        gy_condition,
        exact_sequence,
        commutative,
        status: String::new(),
        invariants: None,
        self_dual: None,
        lattice_sample: None,
        cone: None,
        timings: BTreeMap::new(),
    };
    if !flags.small || !flags.spherical {
        let mut why = Vec::new();
        if !flags.small {
            why.push("not small");
        }
        if !flags.spherical {
            why.push("not spherical");
        }
        report.status = format!("{}: invariants stage skipped", why.join(", "));
        timer.lap("total");
        report.timings = timer.timings;
        return Ok(report);
    }

    let invariants = invariant_stage(&g, &orbit, &flags, config).map_err(|e| e.stage("invariants"))?;
    timer.lap("invariants");
    let rd = &orbit.root_datum;
    let mu = resolve_gamma_weights(&invariants.0, rd, false).mu;
    let lattice = KTypeLattice::new(mu, rd.weight_len()).map_err(|e| e.stage("lattice"))?;
    let self_dual = lattice.self_dual_check(rd, config.bound).map_err(|e| e.stage("self-duality"))?;
    let weights = resolve_gamma_weights(&invariants.0, rd, self_dual);
    let sample = lattice
        .enumerate(config.bound)
        .into_iter()
        .map(|(weight, multiplicity)| LatticePoint { weight, multiplicity })
        .collect();
    timer.lap("lattice");
    let cone = lattice.asymptotic_cone();
    timer.lap("cone");

    report.invariants = Some(InvariantsReport {
        variables: invariants.0.variables.clone(),
        generators: invariants
            .0
            .generators
            .iter()
            .map(|f| WeightedPolynomial { weight: rd.convention().normalize(&f.weight), ..f.clone() })
            .collect(),
        weights,
        degree_checks: invariants.1,
    });
    report.self_dual = Some(self_dual);
    report.lattice_sample = Some(sample);
    report.cone = Some(cone);
    report.status = "complete".into();
    report.timings = timer.timings;
    Ok(report)
}

fn invariant_stage(
    g: &AlgebraRealization,
    orbit: &Orbit,
    flags: &OrbitFlags,
    config: &AnalysisConfig,
) -> Result<(crate::invariants::GeneratorSet, Vec<DegreeCheck>)> {
    let space = InvariantSpace::new(g, orbit)?;
    let gs = space.extract_generators(flags.rank_r, config.max_degree, config.seed)?;
    let checks = gs
        .kernel_dimensions
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, dims)| DegreeCheck {
            degree: n,
            kernel_dimension: dims.values().sum(),
            matches_generators: &gs.predicted_dimensions(n) == dims,
        })
        .collect();
    Ok((gs, checks))
}

/// Reports stored on disk, keyed by [`AnalysisConfig::cache_key`].
#[derive(Clone, Debug)]
pub struct ReportCache {
    dir: PathBuf,
}

impl ReportCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ReportCache { dir: dir.into() }
    }

    pub fn path_for(&self, config: &AnalysisConfig) -> PathBuf {
        self.dir.join(format!("{}.json", config.cache_key()))
    }

    pub fn load(&self, config: &AnalysisConfig) -> Option<OrbitReport> {
        let text = fs::read_to_string(self.path_for(config)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, config: &AnalysisConfig, report: &OrbitReport) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let text = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
        fs::write(self.path_for(config), text)?;
        Ok(())
    }
}

/// [`analyze`], reusing a cached report when one exists.
pub fn analyze_cached(config: &AnalysisConfig, cache: Option<&ReportCache>) -> Result<OrbitReport> {
    if let Some(c) = cache {
        if let Some(r) = c.load(config) {
            return Ok(r);
        }
    }
    let report = analyze(config)?;
    if let Some(c) = cache {
        c.store(config, &report)?;
    }
    Ok(report)
}

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_speh`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shifted_lattice: Vec<WeightVector>,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// `{(2m+1, 2n+1) : m ≥ n ≥ 0}` within max-norm `bound`.
pub fn speh_odd_family(bound: i64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    let mut a = 1;
    while a <= bound {
        let mut b = 1;
        while b <= a {
            out.push(WeightVector(vec![a, b]));
            b += 2;
        }
        a += 2;
    }
    out.sort();
    out
}

/// Runs the `speh_sl4R` fixture and checks generator degrees and weights, the
/// shifted lattice from `(1,1)`, the cone `u ≥ v ≥ 0`, height, smallness,
/// sphericality, the surjectivity condition and self-duality.
pub fn verify_speh(max_degree: usize, bound: i64, seed: u64, samples: usize) -> Verification {
    let mut config = AnalysisConfig::for_fixture("speh_sl4R").expect("fixture exists");
    config.max_degree = max_degree;
    config.bound = bound;
    config.seed = seed;
    config.samples = samples;
    let report = match analyze(&config) {
        Ok(r) => r,
        Err(e) => {
            return Verification {
                passed: false,
                checks: vec![check("analysis", false, e.to_string())],
                shifted_lattice: Vec::new(),
            }
        }
    };
    let mut checks = Vec::new();
    let f = &report.flags;
    checks.push(check("height", f.height == 2, format!("height = {}", f.height)));
    checks.push(check("small", f.small, format!("small = {}", f.small)));
    checks.push(check("spherical", f.spherical, format!("spherical = {} ({:?})", f.spherical, f.certainty)));
    checks.push(check("gy_condition", report.gy_condition, format!("gy_condition = {}", report.gy_condition)));
    let mut shifted = Vec::new();
    match (&report.invariants, report.self_dual) {
        (Some(inv), Some(self_dual)) => {
            let degrees: Vec<usize> = inv.generators.iter().map(|g| g.degree).collect();
            checks.push(check("generator_degrees", degrees == [1, 2], format!("{degrees:?}")));
            let weights: Vec<Vec<i64>> = inv.weights.gamma.iter().map(|w| w.0.clone()).collect();
            checks.push(check("generator_weights", weights == [vec![2, 0], vec![2, 2]], format!("{weights:?}")));
            checks.push(check("self_dual", self_dual, format!("self_dual = {self_dual}")));
            let cone_ok = report.cone.as_ref().is_some_and(|c| c.inequalities == [vec![1, -1], vec![0, 1]]);
            checks.push(check("cone", cone_ok, format!("{:?}", report.cone.as_ref().map(|c| c.inequalities.clone()))));
            let lattice_result = report.lattice().and_then(|l| {
                let rd = report.root_datum()?;
                l.expect("lattice present").shifted_lattice(&rd, &WeightVector(vec![1, 1]), bound)
            });
            match lattice_result {
                Ok(pts) => {
                    let ok = pts == speh_odd_family(bound);
                    checks.push(check("shifted_lattice", ok, format!("{} points within {bound}", pts.len())));
                    shifted = pts;
                }
                Err(e) => checks.push(check("shifted_lattice", false, e.to_string())),
            }
        }
        _ => checks.push(check("invariants", false, report.status.clone())),
    }
    Verification { passed: checks.iter().all(|c| c.passed), checks, shifted_lattice: shifted }
}
