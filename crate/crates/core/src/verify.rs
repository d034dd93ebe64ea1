//! Suite orchestration and machine-readable verification reports.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::canonical::{
    self, charge, charge_b_form, check_structure_constants, closes_under_commutation, direction_generator,
    generating_function, hamiltonian, hamiltonian_b_form, hamiltonian_invariant_under, hamiltonian_phi_form,
    to_b_variables, to_time_component, u31_generator, variation_forms, variation_from_generating_function, ChargeName,
    Direction, GeneratorKind, ModeContext, U31Params,
};
use crate::em::{
    self, adjoint_rotation, conjugate, dual_compose, dual_rotation, em_hamiltonian, full_angle, stokes_expectations,
    su2_charges, PolarizationState,
};
use crate::epsilon::{check_product_rule, check_traces, identity_of, SpaceView, BIVECTOR_PAIRS};
use crate::error::{Error, Result};
use crate::fock::{
    check_diagonal, check_quantization, check_truncation_exactness, energy_operator, normalized_gram, occupations,
    quantum_charges, quantum_hamiltonian, same_action, FockOperator, FockPolyState, LadderOp, Scheme, METRIC,
};
use crate::matrix::{mat_anticommutator, mat_commutator, minimal_poly_check, ExactMatrix};
use crate::poly::{poisson_bracket, Polynomial, Symbol};
use crate::projectors::{
    dyad_factorize, required_commutators, spin_projection_via_generators, verify_first_order_solution, EnergySign,
    FourMomentum, ProjectorFamily, StateLabel,
};
use crate::scalar::{rational, rational_to_string, GaussianRational, Rational};
use crate::wave::{alpha_lorentz_rhs, cubic_sides, lorentz_closure_rhs, pdk_sides, WaveMatrices};

type GR = GaussianRational;

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "MULTISPIN_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Projectors,
    U31,
    Fock,
    Em,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Algebra, Suite::Projectors, Suite::U31, Suite::Fock, Suite::Em];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Projectors => "projectors",
            Suite::U31 => "u31",
            Suite::Fock => "fock",
            Suite::Em => "em",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Config("no suite selected".into()));
        }
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeChoice {
    One,
    Two,
    Both,
}

impl SchemeChoice {
    pub fn schemes(self) -> Vec<Scheme> {
        match self {
            SchemeChoice::One => vec![Scheme::Vacuum1],
            SchemeChoice::Two => vec![Scheme::Vacuum2],
            SchemeChoice::Both => Scheme::BOTH.to_vec(),
        }
    }
}

impl FromStr for SchemeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(SchemeChoice::One),
            "2" => Ok(SchemeChoice::Two),
            "both" => Ok(SchemeChoice::Both),
            _ => Err(Error::Config(format!("scheme must be 1, 2 or both, got '{s}'"))),
        }
    }
}

impl fmt::Display for SchemeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeChoice::One => "1",
            SchemeChoice::Two => "2",
            SchemeChoice::Both => "both",
        })
    }
}

/// Smallest cutoff the Fock and EM suites can run with.
pub const MIN_TRUNCATION: u32 = 2;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub momentum: FourMomentum,
    pub k0: ModeContext,
    pub truncation: u32,
    pub scheme: SchemeChoice,
    pub workers: usize,
    pub timing: bool,
    /// Identity whose first comparison is deliberately perturbed.
    pub mutate: Option<String>,
}

impl SuiteConfig {
    /// Validates every parameter before any suite runs. An irrational `|p|`
    /// is rejected unless the momentum is the rest frame.
    pub fn new(
        suites: Vec<Suite>,
        mass: &str,
        momentum: &str,
        k0: &str,
        truncation: u32,
        scheme: SchemeChoice,
    ) -> Result<Self> {
        let cfg = |e: Error| Error::Config(e.to_string());
        let p = FourMomentum::parse(mass, momentum).map_err(cfg)?;
        match p.spatial_norm() {
            Ok(_) | Err(Error::RestFrame) => {}
            Err(e) => return Err(cfg(e)),
        }
        let k0 = crate::scalar::parse_rational(k0).map_err(cfg)?;
        let k0 = ModeContext::new(k0).map_err(cfg)?;
        if truncation < MIN_TRUNCATION {
            return Err(Error::Config(format!(
                "truncation {truncation} is below the required degree {MIN_TRUNCATION}"
            )));
        }
        if suites.is_empty() {
            return Err(Error::Config("no suite selected".into()));
        }
        Ok(Self {
            suites,
            momentum: p,
            k0,
            truncation,
            scheme,
            workers: 1,
            timing: true,
            mutate: None,
        })
    }

    pub fn default_for(suites: Vec<Suite>) -> Self {
        Self::new(suites, "4", "0,0,3", "5", crate::fock::DEFAULT_TRUNCATION, SchemeChoice::Both)
            .expect("defaults are valid")
    }
}

/// Reads `key = value` lines; `#` starts a comment, `[section]` headers are ignored.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        let v = v.trim().trim_matches('"');
        out.insert(k.trim().replace('_', "-"), v.to_string());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    /// The relation being checked, written out.
    pub anchor: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigSummary {
    pub suites: Vec<Suite>,
    pub mass: String,
    pub momentum: [String; 3],
    pub energy: String,
    pub k0: String,
    pub truncation: u32,
    pub scheme: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: ConfigSummary,
    pub records: Vec<Record>,
    pub totals: Totals,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match &r.status {
                Status::Pass => "PASS".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Skipped { reason } => format!("SKIP ({reason})"),
            };
            out.push_str(&format!("{tag:<6} {:<44} {}", r.id, r.anchor));
            if let Some(w) = &r.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            if let Some(ms) = r.elapsed_ms {
                out.push_str(&format!("  [{ms} ms]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.totals.passed, self.totals.failed, self.totals.skipped
        ));
        out
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn first_failure(w: Option<String>) -> Outcome {
    match w {
        Some(w) => Outcome::Fail(w),
        None => Outcome::Pass,
    }
}

fn expect(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

/// Routes a check's comparisons; when armed, the first comparison is
/// perturbed so the identity must fail.
struct Probe {
    armed: Cell<bool>,
}

impl Probe {
    fn fire(&self) -> bool {
        self.armed.replace(false)
    }

    fn same(&self, lhs: &ExactMatrix, rhs: &ExactMatrix) -> Option<String> {
        let mut l = lhs.clone();
        if self.fire() {
            l.add_at(0, 0, &GR::one());
        }
        if l.rows() != rhs.rows() || l.cols() != rhs.cols() {
            return Some(format!("shape {}x{} vs {}x{}", l.rows(), l.cols(), rhs.rows(), rhs.cols()));
        }
        l.first_difference(rhs).map(|(r, c)| format!("entry ({r},{c})"))
    }

    fn zero(&self, m: &ExactMatrix) -> Option<String> {
        self.same(m, &ExactMatrix::zeros(m.rows(), m.cols()))
    }

    fn holds(&self, b: bool) -> bool {
        if self.fire() {
            !b
        } else {
            b
        }
    }

    fn eq<T: PartialEq>(&self, a: &T, b: &T) -> bool {
        self.holds(a == b)
    }
}

struct Recorder<'a> {
    suite: Suite,
    records: Vec<Record>,
    mutate: Option<&'a str>,
    timing: bool,
}

impl Recorder<'_> {
    fn check(&mut self, id: &str, anchor: &str, f: impl FnOnce(&Probe) -> Outcome) {
        let id = format!("{}.{id}", self.suite.name());
        let probe = Probe {
            armed: Cell::new(self.mutate == Some(id.as_str())),
        };
        let start = Instant::now();
        let outcome = f(&probe);
        let elapsed = start.elapsed().as_millis() as u64;
        let (status, witness) = match outcome {
            Outcome::Pass => (Status::Pass, None),
            Outcome::Fail(w) => (Status::Fail, Some(w)),
            Outcome::Skip(reason) => (Status::Skipped { reason }, None),
        };
        self.records.push(Record {
            id,
            anchor: anchor.to_string(),
            status,
            witness,
            elapsed_ms: self.timing.then_some(elapsed),
        });
    }
}

fn triples() -> impl Iterator<Item = (u8, u8, u8)> {
    (1..=4u8).flat_map(|m| (1..=4u8).flat_map(move |n| (1..=4u8).map(move |a| (m, n, a))))
}

fn algebra_suite(r: &mut Recorder) {
    r.check("epsilon.product_rule", "ε^{A,B}ε^{C,D} = δ_{BC}ε^{A,D} on every view", |pr| {
        for space in SpaceView::ALL {
            match check_product_rule(space) {
                Ok(_) if pr.holds(true) => {}
                Ok(_) => return Outcome::Fail(format!("{space}: injected")),
                Err((a, b, c, d)) => return Outcome::Fail(format!("{space}: ({a},{b})({c},{d})")),
            }
        }
        Outcome::Pass
    });
    r.check("epsilon.traces", "tr ε^{A,B} = δ_{AB}", |pr| {
        first_failure(SpaceView::ALL.into_iter().find(|s| !pr.holds(check_traces(*s))).map(|s| s.to_string()))
    });
    r.check("epsilon.identity", "Σ ε^{A,A} (½ over ordered bivector pairs) = I", |pr| {
        first_failure(SpaceView::ALL.into_iter().find_map(|s| match identity_of(s) {
            Ok(m) => pr.same(&m, &ExactMatrix::identity(s.dim())).map(|w| format!("{s}: {w}")),
            Err(e) => Some(format!("{s}: {e}")),
        }))
    });
    let w = WaveMatrices::build();
    for (id, mats) in [("pdk.beta1", &w.beta1), ("pdk.beta0", &w.beta0)] {
        r.check(id, "β_μβ_νβ_α + β_αβ_νβ_μ = δ_{μν}β_α + δ_{αν}β_μ (64 triples)", |pr| {
            first_failure(triples().find_map(|(m, n, a)| {
                let (l, rh) = pdk_sides(mats, m, n, a);
                pr.same(&l, &rh).map(|e| format!("(μ,ν,α)=({m},{n},{a}) {e}"))
            }))
        });
    }
    r.check("pdk.alpha_negative_control", "α_μ violate the trilinear relation for some triple", |pr| {
        let failing = triples()
            .filter(|&(m, n, a)| {
                let (l, rh) = pdk_sides(&w.alpha, m, n, a);
                l != rh
            })
            .count();
        expect(pr.holds(failing > 0), || "α satisfies every triple".into())
    });
    r.check("cubic.alpha", "Σ_{perm} α_μα_να_α = 2(δ_{μν}α_α + δ_{αν}α_μ + δ_{μα}α_ν) (64 triples)", |pr| {
        first_failure(triples().find_map(|(m, n, a)| {
            let (l, rh) = cubic_sides(&w.alpha, m, n, a);
            pr.same(&l, &rh).map(|e| format!("(μ,ν,α)=({m},{n},{a}) {e}"))
        }))
    });
    r.check("alpha.block_sum", "α_ν = β^{(1)}_ν ⊕ β^{(0)}_ν embedded in 11 dimensions", |pr| {
        first_failure((1..=4u8).find_map(|nu| pr.same(w.alpha(nu), &w.alpha_from_blocks(nu)).map(|e| format!("ν={nu} {e}"))))
    });
    r.check("lorentz.closure", "[J_{ρσ}, J_{μν}] = δ_{σμ}J_{ρν} + δ_{ρν}J_{σμ} − δ_{ρμ}J_{σν} − δ_{σν}J_{ρμ} (15 pairs)", |pr| {
        let mut found = None;
        'outer: for (i, &(rho, sigma)) in BIVECTOR_PAIRS.iter().enumerate() {
            for &(mu, nu) in &BIVECTOR_PAIRS[i + 1..] {
                let l = mat_commutator(&w.j(rho, sigma), &w.j(mu, nu)).expect("11x11");
                if let Some(e) = pr.same(&l, &lorentz_closure_rhs(&w, rho, sigma, mu, nu)) {
                    found = Some(format!("[J{rho}{sigma}, J{mu}{nu}] {e}"));
                    break 'outer;
                }
            }
        }
        first_failure(found)
    });
    r.check("lorentz.alpha_covariance", "[α_λ, J_{μν}] = δ_{λμ}α_ν − δ_{λν}α_μ (24 combinations)", |pr| {
        first_failure((1..=4u8).find_map(|l| {
            BIVECTOR_PAIRS.iter().find_map(|&(mu, nu)| {
                let c = mat_commutator(w.alpha(l), &w.j(mu, nu)).expect("11x11");
                pr.same(&c, &alpha_lorentz_rhs(&w, l, mu, nu)).map(|e| format!("λ={l} J{mu}{nu} {e}"))
            })
        }))
    });
    r.check("lorentz.antisymmetry", "J_{νμ} = −J_{μν}, J_{μμ} undefined", |pr| {
        let bad = BIVECTOR_PAIRS.iter().find_map(|&(mu, nu)| pr.same(&w.j(nu, mu), &-&w.j(mu, nu)).map(|e| format!("J{nu}{mu} {e}")));
        if bad.is_some() {
            return first_failure(bad);
        }
        expect(crate::wave::build_lorentz(3, 3).is_err(), || "J33 accepted".into())
    });
    r.check("eta.anticommutes_spatial", "ηα_a + α_aη = 0 for a = 1, 2, 3", |pr| {
        first_failure((1..=3u8).find_map(|a| pr.zero(&mat_anticommutator(&w.eta, w.alpha(a)).expect("11x11")).map(|e| format!("a={a} {e}"))))
    });
    r.check("eta.commutes_alpha4", "ηα₄ = α₄η", |pr| pr_zero(pr, &mat_commutator(&w.eta, w.alpha(4)).expect("11x11")));
    r.check("eta.hermitian", "η = η⁺", |pr| first_failure(pr.same(&w.eta, &w.eta.adjoint())));
    r.check("eta.involution", "η² = I", |pr| first_failure(pr.same(&(&w.eta * &w.eta), &ExactMatrix::identity(11))));
}

fn pr_zero(pr: &Probe, m: &ExactMatrix) -> Outcome {
    first_failure(pr.zero(m))
}

fn gr(r: &Rational) -> GR {
    GR::from_rational(r.clone())
}

fn rest_frame() -> Outcome {
    Outcome::Skip("rest-frame".into())
}

/// Runs the projector identities at one momentum.
fn projector_suite(r: &mut Recorder, p: &FourMomentum) {
    let w = WaveMatrices::build();
    let fam = match ProjectorFamily::build(&w, p) {
        Ok(f) => f,
        Err(e) => {
            r.check("family", "projector family construction", |_| Outcome::Fail(e.to_string()));
            return;
        }
    };
    let ps = &fam.p_slash;
    let m2 = gr(&(p.mass() * p.mass()));
    r.check("p_slash.cubic", "p̂³ = p²p̂ with p² = −m²", |pr| {
        first_failure(pr.same(&(&(ps * ps) * ps), &ps.scale(&gr(&p.square()))))
    });
    r.check("p_slash.traceless", "tr p̂ = 0", |pr| expect(pr.holds(ps.trace().is_zero()), || ps.trace().to_string()));
    r.check("energy.idempotent", "M_ε² = M_ε", |pr| {
        first_failure(EnergySign::BOTH.into_iter().find_map(|e| {
            let m = fam.energy_projector(e);
            pr.same(&(m * m), m).map(|w| format!("ε={} {w}", e.value()))
        }))
    });
    r.check("energy.orthogonal", "M₊M₋ = M₋M₊ = 0", |pr| {
        first_failure(pr.zero(&(&fam.m_plus * &fam.m_minus)).or_else(|| pr.zero(&(&fam.m_minus * &fam.m_plus))))
    });
    r.check("energy.rank", "rank M_ε = tr M_ε = 4", |pr| {
        first_failure(EnergySign::BOTH.into_iter().find_map(|e| {
            let m = fam.energy_projector(e);
            let (rank, tr) = (m.rank(), m.trace());
            (!pr.holds(rank == 4 && tr == GR::from_int(4))).then(|| format!("ε={}: rank {rank}, trace {tr}", e.value()))
        }))
    });
    r.check("energy.completeness", "M₊ + M₋ = −p̂²/m² and is idempotent", |pr| {
        let sum = &fam.m_plus + &fam.m_minus;
        let want = (ps * ps).scale(&-m2.inv().expect("m > 0"));
        first_failure(pr.same(&sum, &want).or_else(|| pr.same(&(&sum * &sum), &sum)))
    });
    r.check("sigma2.minimal", "σ²(σ² − 2) = 0, with neither factor alone vanishing", |pr| {
        let s = &fam.sigma2;
        let ok = minimal_poly_check(s, &[GR::zero(), GR::from_int(2)])
            && !minimal_poly_check(s, &[GR::zero()])
            && !minimal_poly_check(s, &[GR::from_int(2)]);
        expect(pr.holds(ok), || "minimal polynomial differs".into())
    });
    r.check("sigma2.projectors", "S²₍₀₎ = 1 − σ²/2, S²₍₁₎ = σ²/2 idempotent and complementary", |pr| {
        let (a, b) = (&fam.s2_zero, &fam.s2_one);
        first_failure(
            pr.same(&(a * a), a)
                .or_else(|| pr.same(&(b * b), b))
                .or_else(|| pr.zero(&(a * b)))
                .or_else(|| pr.same(&(a + b), &ExactMatrix::identity(11))),
        )
    });
    let Some(sp) = fam.sigma_p.as_ref() else {
        for (id, anchor) in [
            ("sigma_p.minimal", "σ_p(σ_p − 1)(σ_p + 1) = 0"),
            ("sigma_p.generator_form", "σ_p = −(i/|p|)ε_{abc}p_aβ_bβ_c = (i/2|p|)ε_{abc}p_aJ_{bc}"),
            ("sigma_p.spin_one", "(σ²/2)σ_p = σ_p"),
            ("sigma_p.spectrum", "σ_p on range(M_ε) has eigenvalues {+1, −1, 0, 0}"),
            ("commutators", "S² and Ŝ projectors commute with p̂ and with each other"),
            ("delta.idempotent", "Δ² = Δ"),
            ("delta.rank_one", "rank Δ = 1"),
            ("delta.orthogonal", "Δ_AΔ_B = 0 for A ≠ B"),
            ("delta.completeness", "Σ_{spin,proj} Δ_ε = M_ε"),
            ("dyad.reassembly", "ΨΨ̄ = Δ, Ψ̄ = ±Ψ⁺η, Ψ̄Ψ = 1"),
            ("dyad.first_order", "−ip̂Ψ = εmΨ and the component relations"),
            ("dyad.spin0_scalar_sector", "spin-0 dyads have ψ_{[μν]} = 0"),
            ("dyad.norm_signs", "Ψ⁺ηΨ = +1 for spin 1 and −1 for spin 0"),
        ] {
            r.check(id, anchor, |_| rest_frame());
        }
        return;
    };
    r.check("sigma_p.minimal", "σ_p(σ_p − 1)(σ_p + 1) = 0", |pr| {
        let ok = minimal_poly_check(sp, &[GR::zero(), GR::one(), GR::from_int(-1)]);
        expect(pr.holds(ok), || "minimal polynomial differs".into())
    });
    r.check("sigma_p.generator_form", "σ_p = −(i/|p|)ε_{abc}p_aβ_bβ_c = (i/2|p|)ε_{abc}p_aJ_{bc}", |pr| {
        match spin_projection_via_generators(&w, p) {
            Ok(g) => first_failure(pr.same(sp, &g)),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    });
    r.check("sigma_p.spin_one", "(σ²/2)σ_p = σ_p", |pr| {
        first_failure(pr.same(&(&fam.sigma2 * sp).scale(&GR::from_ratio(1, 2)), sp))
    });
    r.check("sigma_p.spectrum", "σ_p on range(M_ε) has eigenvalues {+1, −1, 0, 0}", |pr| {
        first_failure(EnergySign::BOTH.into_iter().find_map(|e| {
            let ranks: Vec<usize> = [1i8, -1, 0]
                .iter()
                .map(|k| (fam.energy_projector(e) * fam.helicity_projector(*k).expect("helicity exists")).rank())
                .collect();
            (!pr.eq(&ranks, &vec![1, 1, 2])).then(|| format!("ε={}: multiplicities {ranks:?}", e.value()))
        }))
    });
    r.check("commutators", "S² and Ŝ projectors commute with p̂ and with each other", |pr| {
        match required_commutators(&fam) {
            Ok(list) => first_failure(list.iter().find_map(|(name, c)| pr.zero(c).map(|e| format!("{name} {e}")))),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    });
    let labels = StateLabel::all();
    let delta = |l: StateLabel| fam.delta(l).expect("family built away from rest");
    r.check("delta.idempotent", "Δ² = Δ", |pr| {
        first_failure(labels.iter().find_map(|&l| pr.same(&(delta(l) * delta(l)), delta(l)).map(|e| format!("{l} {e}"))))
    });
    r.check("delta.rank_one", "rank Δ = 1", |pr| {
        first_failure(labels.iter().find_map(|&l| {
            let k = delta(l).rank();
            (!pr.holds(k == 1)).then(|| format!("{l}: rank {k}"))
        }))
    });
    r.check("delta.orthogonal", "Δ_AΔ_B = 0 for A ≠ B", |pr| {
        first_failure(labels.iter().find_map(|&a| {
            labels
                .iter()
                .filter(|&&b| b != a)
                .find_map(|&b| pr.zero(&(delta(a) * delta(b))).map(|e| format!("{a}·{b} {e}")))
        }))
    });
    r.check("delta.completeness", "Σ_{spin,proj} Δ_ε = M_ε", |pr| {
        first_failure(EnergySign::BOTH.into_iter().find_map(|e| {
            let sum = StateLabel::family(e)
                .iter()
                .fold(ExactMatrix::zeros(11, 11), |acc, &l| &acc + delta(l));
            pr.same(&sum, fam.energy_projector(e)).map(|w| format!("ε={} {w}", e.value()))
        }))
    });
    let dyads: Vec<_> = labels
        .iter()
        .map(|&l| (l, dyad_factorize(delta(l), &w.eta, Some(l))))
        .collect();
    r.check("dyad.reassembly", "ΨΨ̄ = Δ, Ψ̄ = ±Ψ⁺η, Ψ̄Ψ = 1", |pr| {
        first_failure(dyads.iter().find_map(|(l, d)| {
            let d = match d {
                Ok(d) => d,
                Err(e) => return Some(format!("{l}: {e}")),
            };
            let bar = (&d.psi.adjoint() * &w.eta).scale(&GR::from_int(d.norm_sign.into()));
            pr.same(&d.reassemble(), delta(*l))
                .or_else(|| pr.same(&d.psi_bar, &bar))
                .or_else(|| pr.same(&(&d.psi_bar * &d.psi), &ExactMatrix::identity(1)))
                .map(|e| format!("{l} {e}"))
        }))
    });
    r.check("dyad.first_order", "−ip̂Ψ = εmΨ and the component relations", |pr| {
        first_failure(dyads.iter().find_map(|(l, d)| match d {
            Ok(d) => (!pr.holds(verify_first_order_solution(&w, d, p, l.energy))).then(|| l.to_string()),
            Err(e) => Some(format!("{l}: {e}")),
        }))
    });
    r.check("dyad.spin0_scalar_sector", "spin-0 dyads have ψ_{[μν]} = 0", |pr| {
        first_failure(dyads.iter().filter(|(l, _)| l.spin == 0).find_map(|(l, d)| match d {
            Ok(d) => (!pr.holds((5..11).all(|k| d.psi.get(k, 0).is_zero()))).then(|| l.to_string()),
            Err(e) => Some(format!("{l}: {e}")),
        }))
    });
    r.check("dyad.norm_signs", "Ψ⁺ηΨ = +1 for spin 1 and −1 for spin 0", |pr| {
        first_failure(dyads.iter().find_map(|(l, d)| match d {
            Ok(d) => {
                let want = if l.spin == 1 { 1 } else { -1 };
                (!pr.eq(&d.norm_sign, &want)).then(|| format!("{l}: {}", d.norm_sign))
            }
            Err(e) => Some(format!("{l}: {e}")),
        }))
    });
}

fn u31_suite(r: &mut Recorder, ctx: &ModeContext) {
    let h = hamiltonian(ctx);
    r.check("hamiltonian.forms", "½Σ(π² + k₀²q²) = 2k₀²ΣB_μB_μ⁺ = 2k₀²φ⁺φ", |pr| {
        let hb = to_b_variables(&h, ctx);
        expect(pr.eq(&hb, &hamiltonian_b_form(ctx)) && to_time_component(&hb) == hamiltonian_phi_form(ctx), || {
            format!("{hb:?}")
        })
    });
    r.check("poisson.canonical", "{q_μ, π_ν} = δ_{μν}, {q_μ, q_ν} = {π_μ, π_ν} = 0", |pr| {
        let qs = |m| Polynomial::<GR>::symbol(Symbol::Q(m));
        let ps = |m| Polynomial::<GR>::symbol(Symbol::P(m));
        let mut bad = None;
        for m in 1..=4u8 {
            for n in 1..=4u8 {
                let d = if m == n { Polynomial::constant(GR::one()) } else { Polynomial::zero() };
                if !pr.eq(&poisson_bracket(&qs(m), &ps(n)), &d)
                    || !poisson_bracket(&qs(m), &qs(n)).is_zero()
                    || !poisson_bracket(&ps(m), &ps(n)).is_zero()
                {
                    bad.get_or_insert(format!("(μ,ν)=({m},{n})"));
                }
            }
        }
        first_failure(bad)
    });
    r.check("charges.conserved", "{J_{[μν]}, H} = {J_{(μν)}, H} = {J, H} = 0 (17 charges)", |pr| {
        first_failure(ChargeName::all().into_iter().find_map(|n| {
            (!pr.holds(poisson_bracket(&charge(n, ctx), &h).is_zero())).then(|| n.to_string())
        }))
    });
    r.check("charges.b_forms", "(q, π) forms of the charges equal their b⁺b forms", |pr| {
        first_failure(ChargeName::all().into_iter().find_map(|n| {
            (!pr.eq(&to_b_variables(&charge(n, ctx), ctx), &charge_b_form(n, ctx))).then(|| n.to_string())
        }))
    });
    r.check("charges.number", "J = Σ b_μ⁺b_μ", |pr| {
        let number = (1..=4).fold(Polynomial::zero(), |acc, a| &acc + &canonical::b_dag_b(a, a, ctx));
        expect(pr.eq(&to_b_variables(&charge(ChargeName::Number, ctx), ctx), &number), || "J".into())
    });
    r.check("generators.closure", "iI₄, I_{[μν]}, I_{(μν)} span gl(4) and close; I_{[μν]} close alone", |pr| {
        let mut all = vec![u31_generator(GeneratorKind::Unit).expect("unit")];
        let mut so = Vec::new();
        for &(a, b) in &BIVECTOR_PAIRS {
            so.push(u31_generator(GeneratorKind::Antisym(a, b)).expect("indices"));
        }
        all.extend(so.iter().cloned());
        for a in 1..=4u8 {
            for b in a..=4 {
                if (a, b) != (4, 4) {
                    all.push(u31_generator(GeneratorKind::Sym(a, b)).expect("indices"));
                }
            }
        }
        let span = ExactMatrix::from_fn(16, all.len(), |i, j| all[j].get(i / 4, i % 4).clone()).rank();
        let ok = span == 16 && closes_under_commutation(&all) && closes_under_commutation(&so);
        expect(pr.holds(ok), || format!("span rank {span}"))
    });
    r.check("params.reality", "ω₀, ω_{[ab]}, ω_{(ab)} real; ω_{[a4]}, ω_{(a4)} imaginary", |pr| {
        let good = [
            (GeneratorKind::Unit, GR::one()),
            (GeneratorKind::Antisym(1, 2), GR::one()),
            (GeneratorKind::Antisym(1, 4), GR::i()),
            (GeneratorKind::Sym(2, 3), GR::one()),
            (GeneratorKind::Sym(3, 4), GR::i()),
        ];
        let bad = [
            (GeneratorKind::Unit, GR::i()),
            (GeneratorKind::Antisym(2, 4), GR::one()),
            (GeneratorKind::Sym(1, 2), GR::i()),
            (GeneratorKind::Sym(1, 4), GR::one()),
        ];
        let ok = U31Params::new(&good).is_ok() && bad.iter().all(|b| U31Params::new(std::slice::from_ref(b)).is_err());
        expect(pr.holds(ok), || "reality pattern not enforced".into())
    });
    r.check("transform.examples", "ω₀: δq = (ω₀/k₀)π, δπ = −k₀ω₀q; ω_{[12]}: δq₁ = 2ω_{[12]}q₂", |pr| {
        let qv = [1, 2, 3, 4].map(GR::from_int);
        let pv = [5, 6, 7, 8].map(GR::from_int);
        let k0 = gr(ctx.k0());
        let (dq, dp) = canonical::infinitesimal_transform(&qv, &pv, &Direction::Phase.params(), ctx);
        let phase_ok = (0..4).all(|i| dq[i] == pv[i].clone() / k0.clone() && dp[i] == -(k0.clone() * qv[i].clone()));
        let (dq, dp) = canonical::infinitesimal_transform(&qv, &pv, &Direction::Antisym(1, 2).params(), ctx);
        let rot_ok = dq[0] == GR::from_int(2) * qv[1].clone() && dp[0] == GR::from_int(2) * pv[1].clone();
        let (dq, dp) = canonical::infinitesimal_transform(&qv, &pv, &U31Params::zero(), ctx);
        let zero_ok = dq.iter().chain(dp.iter()).all(Zero::is_zero);
        expect(pr.holds(phase_ok && rot_ok && zero_ok), || format!("phase {phase_ok}, rotation {rot_ok}, zero {zero_ok}"))
    });
    r.check("generating_function.first_order", "∂F/∂π′ and ∂F/∂q reproduce δq, δπ (16 directions)", |pr| {
        first_failure(Direction::all().into_iter().find_map(|d| {
            let f = generating_function(&d.jet_params(), ctx);
            let (dq, dp) = variation_from_generating_function(&f, &d.label());
            let (eq, ep) = variation_forms(&d.params(), ctx);
            (!pr.holds(dq == eq && dp == ep)).then(|| d.label())
        }))
    });
    r.check("generating_function.noether", "δz = {z, G} and {H, G} = 0 for each direction's generator G", |pr| {
        first_failure(Direction::all().into_iter().find_map(|d| {
            let g = direction_generator(d, ctx);
            let (eq, ep) = variation_forms(&d.params(), ctx);
            let flows = (1..=4u8).all(|m| {
                poisson_bracket(&Polynomial::symbol(Symbol::Q(m)), &g) == eq[m as usize - 1]
                    && poisson_bracket(&Polynomial::symbol(Symbol::P(m)), &g) == ep[m as usize - 1]
            });
            (!pr.holds(flows && poisson_bracket(&h, &g).is_zero())).then(|| d.label())
        }))
    });
    r.check("structure_constants", "{J_a, J_b} = f_{ab}^c J_c with [X_a, X_b] = f_{ab}^c X_c (256 pairs)", |pr| {
        match check_structure_constants(ctx) {
            Ok(n) => expect(pr.holds(n == 256), || format!("{n} pairs")),
            Err(m) => Outcome::Fail(format!("{{{}, {}}}", m.left, m.right)),
        }
    });
    r.check("finite_invariance", "H(UB, B⁺U⁺) = H(B, B⁺) for representable U", |pr| {
        first_failure(canonical::representable_elements().into_iter().find_map(|(name, u)| {
            match hamiltonian_invariant_under(&u, ctx) {
                Ok(ok) => (!pr.holds(ok)).then_some(name),
                Err(e) => Some(format!("{name}: {e}")),
            }
        }))
    });
}

fn op(c: GR, w: Vec<LadderOp>) -> FockOperator {
    FockOperator::word(c, w)
}

fn fock_suite(r: &mut Recorder, ctx: &ModeContext, n: u32, schemes: &[Scheme]) {
    let k0 = gr(ctx.k0());
    let zero = FockOperator::zero();
    for &scheme in schemes {
        let s = format!("s{scheme}");
        r.check(&format!("{s}.ladder_commutators"), "[b_μ, b_ν⁺] = η_μδ_{μν}, [b₀, b₀⁺] = −1", |pr| {
            let mut bad = None;
            for occ in occupations(n - 2) {
                let st = FockPolyState::basis(occ, n, scheme).expect("within cutoff");
                for a in 1..=4u8 {
                    for b in 1..=4u8 {
                        let c = op(GR::one(), vec![LadderOp::b(a)]).commutator(&op(GR::one(), vec![LadderOp::b_dag(b)]));
                        let want = if a == b { st.scale(&GR::from_int(METRIC[a as usize - 1])) } else { st.scale(&GR::zero()) };
                        if !pr.eq(&c.apply(&st).expect("degree fits"), &want) {
                            bad.get_or_insert(format!("modes ({a},{b}) on {occ:?}"));
                        }
                    }
                }
            }
            first_failure(bad)
        });
        r.check(&format!("{s}.vacuum"), "annihilators send the vacuum to zero; ⟨0|0⟩ = 1", |pr| {
            let v = FockPolyState::vacuum(n, scheme);
            let killed = (1..=4u8).all(|m| {
                [false, true].into_iter().all(|dagger| {
                    let l = LadderOp { mode: m, dagger };
                    l.creates(scheme) || v.apply_ladder(l).expect("lowering").is_zero()
                })
            });
            let norm = v.norm_sqr().expect("same scheme");
            expect(pr.holds(killed && norm.is_one()), || format!("annihilated {killed}, norm {norm}"))
        });
        let (gram_anchor, sign_of): (&str, fn(u32) -> i64) = match scheme {
            Scheme::Vacuum2 => ("⟨m,n|m′,n′⟩ = (−1)ⁿδδ on the normalized basis", |k| if k % 2 == 0 { 1 } else { -1 }),
            Scheme::Vacuum1 => ("⟨m,n|m′,n′⟩₁ = δδ on the normalized basis", |_| 1),
        };
        r.check(&format!("{s}.gram"), gram_anchor, |pr| match normalized_gram(n, scheme) {
            Ok(g) => {
                let occ = occupations(n);
                let want = ExactMatrix::from_fn(occ.len(), occ.len(), |i, j| {
                    if i == j {
                        GR::from_int(sign_of(occ[i][3]))
                    } else {
                        GR::zero()
                    }
                });
                first_failure(pr.same(&g, &want))
            }
            Err(e) => Outcome::Fail(e.to_string()),
        });
        let (p0, constant) = energy_operator(ctx, scheme);
        match scheme {
            Scheme::Vacuum2 => {
                r.check("s2.energy_spectrum", "P₀|m,n⟩ = k₀(m + n)|m,n⟩ ≥ 0", |pr| {
                    match check_diagonal(&p0, n, scheme, |o| k0.clone() * GR::from_int(o.iter().sum::<u32>() as i64)) {
                        Ok(Ok(())) => expect(pr.holds(constant.is_zero()), || format!("vacuum constant {constant}")),
                        Ok(Err(o)) => Outcome::Fail(format!("{o:?}")),
                        Err(e) => Outcome::Fail(e.to_string()),
                    }
                });
            }
            Scheme::Vacuum1 => {
                r.check("s1.energy_spectrum", "P₀|m,n⟩₁ = k₀(m − n)|m,n⟩₁, negative for n > m; vacuum constant −k₀", |pr| {
                    let m_minus_n = |o: &[u32; 4]| (o[0] + o[1] + o[2]) as i64 - o[3] as i64;
                    match check_diagonal(&p0, n, scheme, |o| k0.clone() * GR::from_int(m_minus_n(o))) {
                        Ok(Ok(())) => {
                            let negative = occupations(n).iter().any(|o| m_minus_n(o) < 0);
                            expect(pr.holds(negative && constant == -k0.clone()), || format!("vacuum constant {constant}"))
                        }
                        Ok(Err(o)) => Outcome::Fail(format!("{o:?}")),
                        Err(e) => Outcome::Fail(e.to_string()),
                    }
                });
            }
        }
        let charges = quantum_charges(ctx);
        let h = quantum_hamiltonian(ctx);
        r.check(&format!("{s}.charges_conserved"), "[J_X, H] = 0 for all 17 quantum charges", |pr| {
            first_failure(charges.iter().find_map(|(name, j)| {
                let c = j.commutator(&h);
                let rise = c.max_rise(scheme);
                let acts = rise > n || same_action(&c, &zero, n - rise, n, scheme).unwrap_or(false);
                let ok = c.equals(&zero, scheme) && acts;
                (!pr.holds(ok)).then(|| name.to_string())
            }))
        });
        r.check(&format!("{s}.quantization"), "[Ĵ_a, Ĵ_b] = i·{J_a, J_b}^ for all charge pairs", |pr| {
            match check_quantization(ctx, scheme) {
                Ok(k) => expect(pr.holds(k == 289), || format!("{k} pairs")),
                Err((a, b)) => Outcome::Fail(format!("[{a}, {b}]")),
            }
        });
        r.check(&format!("{s}.truncation_exactness"), "commutators of degree-preserving operators at cutoff N agree with cutoff N + 2", |pr| {
            let mut ops: Vec<FockOperator> = charges
                .iter()
                .map(|(_, j)| j.normal_ordered(scheme).0)
                .filter(|j| j.preserves_degree(scheme))
                .collect();
            ops.push(h.normal_ordered(scheme).0);
            match check_truncation_exactness(&ops, n, scheme) {
                Ok(ok) => expect(pr.holds(ok), || "mismatch".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        });
        r.check(&format!("{s}.overflow"), "creation beyond the cutoff is an error", |pr| {
            let top = FockPolyState::basis([n, 0, 0, 0], n, scheme).expect("at cutoff");
            let ok = matches!(top.apply_ladder(LadderOp::b_dag(1)), Err(Error::TruncationOverflow { .. }));
            expect(pr.holds(ok), || "no overflow error".into())
        });
        if scheme == Scheme::Vacuum2 {
            r.check("s2.number", "J|m,n⟩ = (m + n)|m,n⟩", |pr| {
                let j = &charges.iter().find(|(c, _)| *c == ChargeName::Number).expect("J present").1;
                match check_diagonal(j, n, scheme, |o| GR::from_int(o.iter().sum::<u32>() as i64)) {
                    Ok(Ok(())) => expect(pr.holds(true), || "injected".into()),
                    Ok(Err(o)) => Outcome::Fail(format!("{o:?}")),
                    Err(e) => Outcome::Fail(e.to_string()),
                }
            });
            r.check("s2.physical_decomposition", "|⟩ = |⟩_p + |⟩_n with ⟨m,0|m′,n′⟩ = 0 for n′ ≠ 0", |pr| {
                let occ = occupations(n);
                let mut total = FockPolyState::zero(n, scheme);
                for (k, o) in occ.iter().enumerate() {
                    let b = FockPolyState::basis(*o, n, scheme).expect("within cutoff");
                    total = total.try_add(&b.scale(&GR::from_int(k as i64 + 1))).expect("same scheme");
                }
                let (sp, sn) = total.decompose_physical().expect("scheme 2");
                let split_ok = sp.try_add(&sn).expect("same scheme") == total
                    && sp.inner_product(&sn).expect("same scheme").is_zero()
                    && sp.terms().all(|(o, _)| o[3] == 0)
                    && sn.terms().all(|(o, _)| o[3] != 0);
                let orth = occ.iter().filter(|o| o[3] == 0).all(|a| {
                    occ.iter().filter(|o| o[3] != 0).all(|b| {
                        let x = FockPolyState::basis(*a, n, scheme).expect("cutoff");
                        let y = FockPolyState::basis(*b, n, scheme).expect("cutoff");
                        x.inner_product(&y).expect("same scheme").is_zero()
                    })
                });
                expect(pr.holds(split_ok && orth), || format!("split {split_ok}, orthogonal {orth}"))
            });
        }
    }
}

fn em_suite(r: &mut Recorder, k0: &Rational, n: u32) {
    let [j0, j1, j2, j3] = su2_charges();
    let js = [j1.clone(), j2.clone(), j3.clone()];
    let h = em_hamiltonian(k0);
    let s2 = Scheme::Vacuum2;
    let zero = FockOperator::zero();
    r.check("su2.commutators", "[J_i, J_j] = iε_{ijk}J_k", |pr| {
        let cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
        first_failure(cyc.iter().find_map(|&(a, b, c)| {
            let ok = js[a].commutator(&js[b]).equals(&js[c].scale(&GR::i()), s2)
                && js[a].commutator(&js[a]).is_zero();
            (!pr.holds(ok)).then(|| format!("[J{}, J{}]", a + 1, b + 1))
        }))
    });
    r.check("su2.commute_j0", "[J_i, J₀] = 0", |pr| {
        first_failure((0..3).find_map(|i| (!pr.holds(js[i].commutator(&j0).equals(&zero, s2))).then(|| format!("J{}", i + 1))))
    });
    r.check("charges.conserved", "[J_i, H] = [J₀, H] = 0 and H = 2k₀J₀", |pr| {
        let two_k0 = GR::from_rational(k0 * Rational::from_integer(2.into()));
        let ok = js.iter().chain([&j0]).all(|j| j.commutator(&h).equals(&zero, s2)) && h.equals(&j0.scale(&two_k0), s2);
        expect(pr.holds(ok), || "charge not conserved".into())
    });
    r.check("hamiltonian.spectrum", "H|m₁,m₂⟩ = k₀(m₁ + m₂)|m₁,m₂⟩", |pr| {
        let mut bad = None;
        for a in 0..=n {
            for b in 0..=(n - a) {
                let st = PolarizationState::from_occupations(&[(a, b, GR::one())], n).expect("within cutoff");
                let out = h.apply(st.state()).expect("degree preserved");
                if !pr.eq(&out, &st.state().scale(&GR::from_rational(k0 * Rational::from_integer((a + b).into())))) {
                    bad.get_or_insert(format!("|{a},{b}⟩"));
                }
            }
        }
        first_failure(bad)
    });
    let elements = em::representable_elements();
    r.check("u2.invariance", "U⁺U = 1 and UHU⁻¹ = H for representable U(2) elements", |pr| {
        if elements.len() < 5 {
            return Outcome::Fail(format!("only {} elements", elements.len()));
        }
        first_failure(elements.iter().find_map(|(name, u)| {
            let m = u.matrix();
            let ok = (&m.adjoint() * &m).is_identity() && conjugate(&h, &m).equals(&h, s2);
            (!pr.holds(ok)).then(|| name.clone())
        }))
    });
    r.check("u2.adjoint_action", "U⁺J_kU = R_{kl}J_l with U⁺τ_kU = R_{kl}τ_l; J₀ fixed", |pr| {
        first_failure(elements.iter().find_map(|(name, u)| {
            let m = u.matrix();
            let rot = adjoint_rotation(&m);
            let ok = (0..3).all(|k| {
                let want = (0..3).fold(FockOperator::zero(), |acc, l| acc.add(&js[l].scale(rot.get(k, l))));
                conjugate(&js[k], &m).equals(&want, s2)
            }) && conjugate(&j0, &m).equals(&j0, s2);
            (!pr.holds(ok)).then(|| name.clone())
        }))
    });
    r.check("stokes.examples", "⟨J⟩ = (½,0,0,½) for b₁⁺|0⟩, (½,0,0,−½) for b₂⁺|0⟩, 0 for |0⟩", |pr| {
        let h = GR::from_ratio(1, 2);
        let z = GR::zero();
        let cases = [
            ((1, 0), [h.clone(), z.clone(), z.clone(), h.clone()]),
            ((0, 1), [h.clone(), z.clone(), z.clone(), -h]),
            ((0, 0), [z.clone(), z.clone(), z.clone(), z]),
        ];
        first_failure(cases.iter().find_map(|((a, b), want)| {
            let st = PolarizationState::from_occupations(&[(*a, *b, GR::one())], n).expect("within cutoff");
            match stokes_expectations(&st) {
                Ok(got) => (!pr.eq(&got, want)).then(|| format!("|{a},{b}⟩")),
                Err(e) => Some(e.to_string()),
            }
        }))
    });
    let (c, s) = (rational(3, 5), rational(4, 5));
    r.check("dual.matrix", "exp(iτ₂θ/2) = [[cos θ/2, sin θ/2], [−sin θ/2, cos θ/2]]", |pr| {
        let d = dual_rotation(c.clone(), s.clone()).expect("pythagorean");
        let want = ExactMatrix::from_rows(vec![
            vec![gr(&c), gr(&s)],
            vec![-gr(&s), gr(&c)],
        ])
        .expect("2x2");
        first_failure(pr.same(&d.matrix(), &want))
    });
    r.check("dual.group_law", "dual(θ₁)dual(θ₂) = dual(θ₁ + θ₂); dual elements are U(2) elements", |pr| {
        let pairs = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (-3, 4, 5)];
        let duals: Vec<_> = pairs
            .iter()
            .map(|&(a, b, cc)| dual_rotation(rational(a, cc), rational(b, cc)).expect("pythagorean"))
            .collect();
        first_failure(duals.iter().enumerate().find_map(|(i, a)| {
            duals.iter().enumerate().find_map(|(j, b)| {
                let ab = dual_compose(a, b).expect("closed");
                let prod = &a.matrix() * &b.matrix();
                let unitary = (&prod.adjoint() * &prod).is_identity();
                pr.same(&prod, &ab.matrix())
                    .or_else(|| (!unitary).then(|| "not unitary".into()))
                    .map(|e| format!("({i},{j}) {e}"))
            })
        }))
    });
    r.check("dual.stokes_rotation", "dual(3/5, 4/5) rotates (⟨J₃⟩, ⟨J₁⟩) by θ and fixes ⟨J₀⟩", |pr| {
        let d = dual_rotation(c.clone(), s.clone()).expect("pythagorean");
        let (cos, sin) = full_angle(&d);
        let (cos, sin) = (gr(&cos), gr(&sin));
        let m = d.matrix();
        let states = [
            vec![(1, 0, GR::one())],
            vec![(0, 1, GR::one())],
            vec![(1, 0, GR::one()), (0, 1, GR::i())],
            vec![(2, 0, GR::one()), (1, 1, GR::from_int(2))],
        ];
        first_failure(states.iter().enumerate().find_map(|(k, terms)| {
            let st = PolarizationState::from_occupations(terms, n).expect("within cutoff");
            let st = st.state();
            let ev = |o: &FockOperator| st.inner_product(&o.apply(st).expect("degree preserved")).expect("same scheme");
            let (e3, e1) = (ev(&j3), ev(&j1));
            let ok = ev(&conjugate(&j0, &m)) == ev(&j0)
                && ev(&conjugate(&j3, &m)) == cos.clone() * e3.clone() + sin.clone() * e1.clone()
                && ev(&conjugate(&j1, &m)) == cos.clone() * e1 - sin.clone() * e3;
            (!pr.holds(ok)).then(|| format!("state {k}"))
        }))
    });
}

fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Vec<Record> {
    let mut r = Recorder {
        suite,
        records: Vec::new(),
        mutate: cfg.mutate.as_deref(),
        timing: cfg.timing,
    };
    match suite {
        Suite::Algebra => algebra_suite(&mut r),
        Suite::Projectors => projector_suite(&mut r, &cfg.momentum),
        Suite::U31 => u31_suite(&mut r, &cfg.k0),
        Suite::Fock => fock_suite(&mut r, &cfg.k0, cfg.truncation, &cfg.scheme.schemes()),
        Suite::Em => em_suite(&mut r, cfg.k0.k0(), cfg.truncation),
    }
    r.records
}

/// Runs only the projector identities at `p`; used for multi-momentum sweeps.
pub fn run_projectors_at(p: &FourMomentum, timing: bool) -> Vec<Record> {
    let mut r = Recorder {
        suite: Suite::Projectors,
        records: Vec::new(),
        mutate: None,
        timing,
    };
    projector_suite(&mut r, p);
    r.records
}

fn summary(cfg: &SuiteConfig) -> ConfigSummary {
    let p = &cfg.momentum;
    ConfigSummary {
        suites: cfg.suites.clone(),
        mass: rational_to_string(p.mass()),
        momentum: p.spatial().clone().map(|x| rational_to_string(&x)),
        energy: rational_to_string(p.energy()),
        k0: rational_to_string(cfg.k0.k0()),
        truncation: cfg.truncation,
        scheme: cfg.scheme.to_string(),
    }
}

/// Runs the selected suites, dispatching them over `cfg.workers` threads.
/// Records come back in suite order regardless of scheduling.
pub fn run(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let workers = cfg.workers.max(1).min(cfg.suites.len());
    let mut results: Vec<(Suite, Vec<Record>)> = if workers <= 1 {
        cfg.suites.iter().map(|&s| (s, run_suite(cfg, s))).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let k = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                            let Some(&s) = cfg.suites.get(k) else { break };
                            done.push((s, run_suite(cfg, s)));
                        }
                        done
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("suite worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|(s, _)| *s);
    let records: Vec<Record> = results.into_iter().flat_map(|(_, r)| r).collect();
    if let Some(m) = &cfg.mutate {
        if !records.iter().any(|r| &r.id == m) {
            return Err(Error::Config(format!("unknown identity '{m}' for --mutate")));
        }
    }
    let count = |f: fn(&Status) -> bool| records.iter().filter(|r| f(&r.status)).count();
    let totals = Totals {
        passed: count(|s| *s == Status::Pass),
        failed: count(|s| *s == Status::Fail),
        skipped: count(|s| matches!(s, Status::Skipped { .. })),
    };
    Ok(VerificationReport {
        config: summary(cfg),
        records,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let err = SuiteConfig::new(vec![Suite::Projectors], "1", "1,1,0", "5", 6, SchemeChoice::Both).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(SuiteConfig::new(vec![Suite::Fock], "4", "0,0,3", "5", 1, SchemeChoice::Both).is_err());
        assert!(SuiteConfig::new(vec![Suite::Fock], "4", "0,0,3", "0", 6, SchemeChoice::Both).is_err());
        assert!(SuiteConfig::new(vec![Suite::Projectors], "1", "2,2,0", "5", 6, SchemeChoice::Both).is_err());
        assert!(Suite::parse_list("algebra,nope").is_err());
        assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
    }

    #[test]
    fn config_file() {
        let m = parse_config_file("# c\n[verify]\nmass = 12\nmomentum = \"3,4,0\"\nno_timing=true\n").unwrap();
        assert_eq!(m["mass"], "12");
        assert_eq!(m["momentum"], "3,4,0");
        assert_eq!(m["no-timing"], "true");
        assert!(parse_config_file("oops").is_err());
    }

    #[test]
    fn rest_frame_skips_helicity_identities() {
        let mut cfg = SuiteConfig::new(vec![Suite::Projectors], "4", "0,0,0", "5", 6, SchemeChoice::Both).unwrap();
        cfg.timing = false;
        let rep = run(&cfg).unwrap();
        assert_eq!(rep.exit_code(), 0);
        let skipped: Vec<_> = rep.records.iter().filter(|r| matches!(r.status, Status::Skipped { .. })).collect();
        assert!(skipped.iter().any(|r| r.id == "projectors.sigma_p.minimal"));
        assert!(skipped.iter().all(|r| r.status == Status::Skipped { reason: "rest-frame".into() }));
        assert!(rep.records.iter().any(|r| r.id == "projectors.energy.idempotent" && r.status == Status::Pass));
    }

    #[test]
    fn mutation_flips_one_identity() {
        let mut cfg = SuiteConfig::default_for(vec![Suite::U31]);
        cfg.mutate = Some("u31.charges.conserved".into());
        let rep = run(&cfg).unwrap();
        assert_eq!(rep.totals.failed, 1);
        assert_eq!(rep.exit_code(), 1);
        cfg.mutate = Some("u31.no_such".into());
        assert!(matches!(run(&cfg), Err(Error::Config(_))));
    }
}
