//! Momentum-space solutions of `(α_μ ∂_μ + m)Ψ = 0`: energy projectors,
//! squared-spin and helicity operators, the pure-state projectors and their
//! rank-one dyad factorization `Δ = Ψ·Ψ̄`.
//!
//! Momenta must be "Pythagorean" (rational `p₀` and, for helicity, rational
//! `|p|`) so that every matrix stays exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{mat_commutator, ExactMatrix};
use crate::scalar::{parse_rational, rational_sqrt, rational_two_squares, GaussianRational, Rational};
use crate::wave::WaveMatrices;

/// On-shell four-momentum `p_μ = (p₁, p₂, p₃, i·p₀)` of mass `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourMomentum {
    p: [Rational; 3],
    p0: Rational,
    m: Rational,
}

impl FourMomentum {
    /// Validates `p₀ > 0`, `m > 0` and `p₀² = |p|² + m²`.
    pub fn new(p: [Rational; 3], p0: Rational, m: Rational) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::NonPositiveMass);
        }
        if !p0.is_positive() {
            return Err(Error::MassShell(format!("energy {p0} must be positive")));
        }
        let lhs = &p0 * &p0;
        let rhs = p.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b) + &m * &m;
        if lhs != rhs {
            return Err(Error::MassShell(format!("p0^2 = {lhs} but |p|^2 + m^2 = {rhs}")));
        }
        Ok(Self { p, p0, m })
    }

    /// Computes the positive energy from `m` and `p`; errors when it is irrational.
    pub fn on_shell(m: Rational, p: [Rational; 3]) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::NonPositiveMass);
        }
        let e2 = p.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b) + &m * &m;
        let p0 = rational_sqrt(&e2).ok_or(Error::IrrationalEnergy)?;
        Self::new(p, p0, m)
    }

    /// Integer convenience constructor.
    pub fn from_ints(m: i64, p: [i64; 3]) -> Result<Self> {
        Self::on_shell(Rational::from_integer(m.into()), p.map(|x| Rational::from_integer(x.into())))
    }

    /// Parses `"px,py,pz"` with rational components.
    pub fn parse(mass: &str, momentum: &str) -> Result<Self> {
        let m = parse_rational(mass)?;
        let parts: Vec<&str> = momentum.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("momentum needs three components, got {momentum:?}")));
        }
        let p = [
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ];
        Self::on_shell(m, p)
    }

    pub fn mass(&self) -> &Rational {
        &self.m
    }

    pub fn energy(&self) -> &Rational {
        &self.p0
    }

    pub fn spatial(&self) -> &[Rational; 3] {
        &self.p
    }

    /// `p_μ` for `μ = 1..4`, with `p₄ = i·p₀`.
    pub fn component(&self, mu: u8) -> GaussianRational {
        match mu {
            1..=3 => GaussianRational::from_rational(self.p[usize::from(mu) - 1].clone()),
            4 => GaussianRational::new(Rational::zero(), self.p0.clone()),
            _ => panic!("four-momentum index must be in 1..=4"),
        }
    }

    pub fn spatial_norm_sqr(&self) -> Rational {
        self.p.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b)
    }

    /// `|p|`, if rational.
    pub fn spatial_norm(&self) -> Result<Rational> {
        if self.spatial_norm_sqr().is_zero() {
            return Err(Error::RestFrame);
        }
        rational_sqrt(&self.spatial_norm_sqr()).ok_or(Error::IrrationalMomentum)
    }

    /// `p² = |p|² − p₀²`, which equals `−m²` on shell.
    pub fn square(&self) -> Rational {
        self.spatial_norm_sqr() - &self.p0 * &self.p0
    }

    pub fn is_rest_frame(&self) -> bool {
        self.spatial_norm_sqr().is_zero()
    }
}

impl fmt::Display for FourMomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={}, p=({},{},{}), p0={}",
            self.m, self.p[0], self.p[1], self.p[2], self.p0
        )
    }
}

/// Sign of the energy, `ε = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub const BOTH: [EnergySign; 2] = [EnergySign::Positive, EnergySign::Negative];

    pub fn value(self) -> i64 {
        match self {
            EnergySign::Positive => 1,
            EnergySign::Negative => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(EnergySign::Positive),
            -1 => Ok(EnergySign::Negative),
            _ => Err(Error::Parse(format!("energy sign must be +1 or -1, got {v}"))),
        }
    }
}

impl FromStr for EnergySign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(EnergySign::Positive),
            "-1" | "-" => Ok(EnergySign::Negative),
            other => Err(Error::Parse(format!("energy sign must be +1 or -1, got {other:?}"))),
        }
    }
}

/// `(ε, s, s_p)` of a pure state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateLabel {
    pub energy: EnergySign,
    pub spin: u8,
    pub projection: i8,
}

impl StateLabel {
    pub fn new(energy: EnergySign, spin: u8, projection: i8) -> Result<Self> {
        let ok = matches!((spin, projection), (0, 0) | (1, -1) | (1, 0) | (1, 1));
        if !ok {
            return Err(Error::InvalidSpinProjection { spin, projection });
        }
        Ok(Self {
            energy,
            spin,
            projection,
        })
    }

    /// The four pure states at a fixed energy sign.
    pub fn family(energy: EnergySign) -> [StateLabel; 4] {
        [(1, 1), (1, -1), (1, 0), (0, 0)].map(|(s, p)| StateLabel {
            energy,
            spin: s,
            projection: p,
        })
    }

    pub fn all() -> Vec<StateLabel> {
        EnergySign::BOTH.iter().flat_map(|&e| Self::family(e)).collect()
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "eps={:+},s={},sp={:+}",
            self.energy.value(),
            self.spin,
            self.projection
        )
    }
}

fn gr(r: Rational) -> GaussianRational {
    GaussianRational::from_rational(r)
}

/// `p̂ = α_μ p_μ`.
pub fn p_slash(w: &WaveMatrices, p: &FourMomentum) -> ExactMatrix {
    (1..=4u8).fold(ExactMatrix::zeros(11, 11), |acc, mu| {
        &acc + &w.alpha(mu).scale(&p.component(mu))
    })
}

/// `M_ε = i p̂ (i p̂ − ε m) / (2m²)`.
pub fn energy_projector(w: &WaveMatrices, p: &FourMomentum, eps: EnergySign) -> ExactMatrix {
    let ip = p_slash(w, p).scale(&GaussianRational::i());
    let shift = ExactMatrix::identity(11).scale(&gr(p.mass() * Rational::from_integer(eps.value().into())));
    let denom = gr(p.mass() * p.mass() * Rational::from_integer(2.into()));
    (&ip * &(&ip - &shift)).scale(&denom.inv().expect("m > 0"))
}

/// `σ² = (1/m²)(J_{μν}² p² − J_{μσ}J_{νσ} p_μ p_ν)`, the square of the
/// Pauli-Lubanski vector over `m`, where `J_{μν}² = Σ_{μ<ν} J_{μν}J_{μν}`.
pub fn spin_squared(w: &WaveMatrices, p: &FourMomentum) -> ExactMatrix {
    // J_{μν}² counts each unordered pair once
    let jj = w
        .lorentz
        .iter()
        .fold(ExactMatrix::zeros(11, 11), |acc, j| &acc + &(j * j));
    // Σ_σ K_σ K_σ with K_σ = Σ_μ p_μ J_{μσ}
    let mut kk = ExactMatrix::zeros(11, 11);
    for sigma in 1..=4u8 {
        let k = (1..=4u8).fold(ExactMatrix::zeros(11, 11), |acc, mu| {
            &acc + &w.j(mu, sigma).scale(&p.component(mu))
        });
        kk = &kk + &(&k * &k);
    }
    let inv_m2 = gr(Rational::one() / (p.mass() * p.mass()));
    (&jj.scale(&gr(p.square())) - &kk).scale(&inv_m2)
}

fn levi_civita3(a: u8, b: u8, c: u8) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// `σ_p = −(i/|p|) ε_{abc} p_a β⁽¹⁾_b β⁽¹⁾_c`, embedded in 11 dimensions.
pub fn spin_projection_op(w: &WaveMatrices, p: &FourMomentum) -> Result<ExactMatrix> {
    let norm = p.spatial_norm()?;
    let embed = crate::epsilon::SpaceView::Dim10;
    let mut acc = ExactMatrix::zeros(11, 11);
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            for c in 1..=3u8 {
                let e = levi_civita3(a, b, c);
                if e == 0 {
                    continue;
                }
                let coeff = gr(&p.spatial()[usize::from(a) - 1] * Rational::from_integer(e.into()));
                if coeff.is_zero() {
                    continue;
                }
                let bb = w.beta1(b) * w.beta1(c);
                acc = &acc + &embed.embed(&bb).scale(&coeff);
            }
        }
    }
    let factor = GaussianRational::new(Rational::zero(), -(Rational::one() / norm));
    Ok(acc.scale(&factor))
}

/// The same operator written through the Lorentz generators:
/// `σ_p = −(i/2|p|) ε_{abc} p_a J_{bc}`.
pub fn spin_projection_via_generators(w: &WaveMatrices, p: &FourMomentum) -> Result<ExactMatrix> {
    let norm = p.spatial_norm()?;
    let mut acc = ExactMatrix::zeros(11, 11);
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            for c in 1..=3u8 {
                let e = levi_civita3(a, b, c);
                if e != 0 {
                    let coeff = gr(&p.spatial()[usize::from(a) - 1] * Rational::from_integer(e.into()));
                    acc = &acc + &w.j(b, c).scale(&coeff);
                }
            }
        }
    }
    let factor = GaussianRational::new(
        Rational::zero(),
        -(Rational::one() / (norm * Rational::from_integer(2.into()))),
    );
    Ok(acc.scale(&factor))
}

/// `S²₍₀₎ = 1 − σ²/2` and `S²₍₁₎ = σ²/2`.
pub fn spin_squared_projectors(sigma2: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let half = sigma2.scale(&GaussianRational::from_ratio(1, 2));
    (&ExactMatrix::identity(11) - &half, half)
}

/// `Ŝ₍₊₁₎ = ½σ_p(σ_p + 1)`, `Ŝ₍₋₁₎ = ½σ_p(σ_p − 1)`, `Ŝ₍₀₎ = 1 − σ_p²`.
pub fn helicity_projectors(sigma_p: &ExactMatrix) -> [(i8, ExactMatrix); 3] {
    let id = ExactMatrix::identity(11);
    let half = GaussianRational::from_ratio(1, 2);
    let sq = sigma_p * sigma_p;
    let plus = (sigma_p * &(sigma_p + &id)).scale(&half);
    let minus = (sigma_p * &(sigma_p - &id)).scale(&half);
    [(1, plus), (-1, minus), (0, &id - &sq)]
}

/// All projectors at one momentum.
#[derive(Clone, Debug)]
pub struct ProjectorFamily {
    pub momentum: FourMomentum,
    pub p_slash: ExactMatrix,
    pub m_plus: ExactMatrix,
    pub m_minus: ExactMatrix,
    pub sigma2: ExactMatrix,
    pub s2_zero: ExactMatrix,
    pub s2_one: ExactMatrix,
    /// Absent in the rest frame.
    pub sigma_p: Option<ExactMatrix>,
    /// `Ŝ₍₊₁₎, Ŝ₍₋₁₎, Ŝ₍₀₎`, when `σ_p` exists.
    pub helicity: Option<[(i8, ExactMatrix); 3]>,
    pub deltas: BTreeMap<StateLabel, ExactMatrix>,
}

impl ProjectorFamily {
    /// Builds every projector; `σ_p` and the `Δ` family are skipped in the
    /// rest frame, and an irrational `|p|` is an error.
    pub fn build(w: &WaveMatrices, p: &FourMomentum) -> Result<Self> {
        let ps = p_slash(w, p);
        let m_plus = energy_projector(w, p, EnergySign::Positive);
        let m_minus = energy_projector(w, p, EnergySign::Negative);
        let sigma2 = spin_squared(w, p);
        let (s2_zero, s2_one) = spin_squared_projectors(&sigma2);
        let sigma_p = match spin_projection_op(w, p) {
            Ok(s) => Some(s),
            Err(Error::RestFrame) => None,
            Err(e) => return Err(e),
        };
        let helicity = sigma_p.as_ref().map(helicity_projectors);
        let mut fam = Self {
            momentum: p.clone(),
            p_slash: ps,
            m_plus,
            m_minus,
            sigma2,
            s2_zero,
            s2_one,
            sigma_p,
            helicity,
            deltas: BTreeMap::new(),
        };
        if fam.sigma_p.is_some() {
            for label in StateLabel::all() {
                let d = fam.pure_state_projector(label)?;
                fam.deltas.insert(label, d);
            }
        }
        Ok(fam)
    }

    pub fn energy_projector(&self, eps: EnergySign) -> &ExactMatrix {
        match eps {
            EnergySign::Positive => &self.m_plus,
            EnergySign::Negative => &self.m_minus,
        }
    }

    pub fn helicity_projector(&self, projection: i8) -> Result<&ExactMatrix> {
        let h = self.helicity.as_ref().ok_or(Error::RestFrame)?;
        h.iter()
            .find(|(k, _)| *k == projection)
            .map(|(_, m)| m)
            .ok_or(Error::InvalidSpinProjection {
                spin: 1,
                projection,
            })
    }

    /// `Δ = M_ε · S²₍ₛ₎ · Ŝ₍ₛₚ₎`.
    pub fn pure_state_projector(&self, label: StateLabel) -> Result<ExactMatrix> {
        let label = StateLabel::new(label.energy, label.spin, label.projection)?;
        let s2 = if label.spin == 1 {
            &self.s2_one
        } else {
            &self.s2_zero
        };
        let hel = self.helicity_projector(label.projection)?;
        Ok(&(self.energy_projector(label.energy) * s2) * hel)
    }

    pub fn delta(&self, label: StateLabel) -> Result<&ExactMatrix> {
        if self.sigma_p.is_none() {
            return Err(Error::RestFrame);
        }
        self.deltas
            .get(&label)
            .ok_or(Error::InvalidSpinProjection {
                spin: label.spin,
                projection: label.projection,
            })
    }
}

/// Free-standing form of [`ProjectorFamily::pure_state_projector`].
pub fn pure_state_projector(
    w: &WaveMatrices,
    p: &FourMomentum,
    eps: EnergySign,
    spin: u8,
    projection: i8,
) -> Result<ExactMatrix> {
    let label = StateLabel::new(eps, spin, projection)?;
    let sigma_p = spin_projection_op(w, p)?;
    let (s0, s1) = spin_squared_projectors(&spin_squared(w, p));
    let hel = helicity_projectors(&sigma_p);
    let h = &hel
        .iter()
        .find(|(k, _)| *k == projection)
        .expect("validated projection")
        .1;
    let s2 = if spin == 1 { s1 } else { s0 };
    Ok(&(&energy_projector(w, p, label.energy) * &s2) * h)
}

/// Rank-one factorization `Δ = Ψ·Ψ̄` with `Ψ̄ = s·Ψ⁺η`.
///
/// `Ψ̄Ψ = 1` (idempotency), and `s = Ψ⁺ηΨ = ±1` is the sign of the
/// indefinite norm, stored as `norm_sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionDyad {
    pub psi: ExactMatrix,
    pub psi_bar: ExactMatrix,
    pub label: Option<StateLabel>,
    pub norm_sign: i8,
}

#[derive(Serialize)]
struct DyadJson {
    psi: Vec<[String; 2]>,
    psi_bar: Vec<[String; 2]>,
    norm_sign: i8,
}

impl SolutionDyad {
    pub fn to_json(&self) -> String {
        let j = DyadJson {
            psi: self.psi.entries().iter().map(GaussianRational::to_string_pair).collect(),
            psi_bar: self.psi_bar.entries().iter().map(GaussianRational::to_string_pair).collect(),
            norm_sign: self.norm_sign,
        };
        serde_json::to_string(&j).expect("dyad JSON serialization")
    }

    /// `Ψ·Ψ̄`.
    pub fn reassemble(&self) -> ExactMatrix {
        &self.psi * &self.psi_bar
    }
}

/// Factorizes a rank-one idempotent `Δ` whose `Δη` is Hermitian.
///
/// Candidate pivots are the columns of `Δ` ordered by decreasing squared
/// magnitude; the first whose diagonal entry of `s·Δη` is a sum of two
/// rational squares fixes `Ψ` exactly.
pub fn dyad_factorize(delta: &ExactMatrix, eta: &ExactMatrix, label: Option<StateLabel>) -> Result<SolutionDyad> {
    if !delta.is_square() || delta.rows() != eta.rows() {
        return Err(Error::NotPureState("shape mismatch".into()));
    }
    let rank = delta.rank();
    if rank != 1 {
        return Err(Error::NotPureState(format!("rank {rank}")));
    }
    if &(delta * delta) != delta {
        return Err(Error::NotPureState("not idempotent".into()));
    }
    let h = delta * eta;
    if h != h.adjoint() {
        return Err(Error::NotPureState("Δη is not Hermitian".into()));
    }
    let n = delta.rows();
    let mut order: Vec<usize> = (0..n).filter(|&i| !h.get(i, i).is_zero()).collect();
    let weights: Vec<Rational> = (0..n).map(|j| delta.col(j).frobenius_sqr()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let Some(&first) = order.first() else {
        return Err(Error::NotPureState("Δη has a zero diagonal".into()));
    };
    let sign: i8 = if h.get(first, first).re.is_positive() { 1 } else { -1 };
    let s = GaussianRational::from_int(sign.into());
    for i in order {
        let r = (h.get(i, i) * &s).re;
        let Some((a, b)) = rational_two_squares(&r) else {
            continue;
        };
        let pivot_conj = GaussianRational::new(a, -b);
        let inv = pivot_conj.inv().expect("nonzero pivot");
        let psi = ExactMatrix::column((0..n).map(|k| &(h.get(k, i) * &s) * &inv).collect());
        let psi_bar = (&psi.adjoint() * eta).scale(&s);
        let dyad = SolutionDyad {
            psi,
            psi_bar,
            label,
            norm_sign: sign,
        };
        if dyad.reassemble() != *delta {
            return Err(Error::NotPureState("dyad does not reassemble".into()));
        }
        return Ok(dyad);
    }
    Err(Error::NotPureState(
        "no diagonal entry is a sum of two rational squares".into(),
    ))
}

/// `−i p̂ Ψ = ε m Ψ` for an arbitrary column.
pub fn satisfies_wave_equation(w: &WaveMatrices, psi: &ExactMatrix, p: &FourMomentum, eps: EnergySign) -> bool {
    let lhs = (&p_slash(w, p) * psi).scale(&-GaussianRational::i());
    let rhs = psi.scale(&gr(p.mass() * Rational::from_integer(eps.value().into())));
    lhs == rhs
}

/// Component relations of the first-order system in momentum space, with
/// `∂_μ → iε p_μ`, on the layout `(−ψ₀/m, ψ_μ, ψ_{[μν]}/m)`:
/// `m Ψ_{[μν]} = D_μΨ_ν − D_νΨ_μ` and `−m Ψ₀ = D_μΨ_μ`.
pub fn satisfies_component_relations(psi: &ExactMatrix, p: &FourMomentum, eps: EnergySign) -> bool {
    use crate::epsilon::BasisIndex;
    let m = gr(p.mass().clone());
    let d = |mu: u8| {
        p.component(mu)
            .mul_i()
            .scale(&Rational::from_integer(eps.value().into()))
    };
    let comp = |idx: BasisIndex| psi.get(idx.position(), 0).clone();
    let vec = |mu: u8| comp(BasisIndex::Vector(mu));
    for (a, b) in crate::epsilon::BIVECTOR_PAIRS {
        let lhs = &m * &comp(BasisIndex::Bivector(a, b));
        let rhs = &(&d(a) * &vec(b)) - &(&d(b) * &vec(a));
        if lhs != rhs {
            return false;
        }
    }
    let div: GaussianRational = (1..=4u8).map(|mu| &d(mu) * &vec(mu)).sum();
    -(&m * &comp(BasisIndex::Scalar)) == div
}

/// Both the eigen-equation and the component relations.
pub fn verify_first_order_solution(
    w: &WaveMatrices,
    dyad: &SolutionDyad,
    p: &FourMomentum,
    eps: EnergySign,
) -> bool {
    satisfies_wave_equation(w, &dyad.psi, p, eps) && satisfies_component_relations(&dyad.psi, p, eps)
}

/// The commutators required to vanish between spin projectors and `p̂`
/// (and among the spin projectors), named for reporting.
pub fn required_commutators(fam: &ProjectorFamily) -> Result<Vec<(&'static str, ExactMatrix)>> {
    let h = fam.helicity.as_ref().ok_or(Error::RestFrame)?;
    let [(_, sp), (_, sm), (_, s0)] = h;
    let ps = &fam.p_slash;
    let pairs: Vec<(&'static str, &ExactMatrix, &ExactMatrix)> = vec![
        ("[S2(0),p]", &fam.s2_zero, ps),
        ("[S2(1),p]", &fam.s2_one, ps),
        ("[S(+1),p]", sp, ps),
        ("[S(-1),p]", sm, ps),
        ("[S(0),p]", s0, ps),
        ("[S2(0),S(+1)]", &fam.s2_zero, sp),
        ("[S2(0),S(-1)]", &fam.s2_zero, sm),
        ("[S2(1),S(+1)]", &fam.s2_one, sp),
        ("[S2(1),S(-1)]", &fam.s2_one, sm),
        ("[S2(0),S(0)]", &fam.s2_zero, s0),
    ];
    pairs
        .into_iter()
        .map(|(name, a, b)| Ok((name, mat_commutator(a, b)?)))
        .collect()
}
