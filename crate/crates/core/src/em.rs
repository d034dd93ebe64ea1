//! The massless two-mode limit: U(2) symmetry of `H = k₀(b₁⁺b₁ + b₂⁺b₂)`,
//! the SU(2)×U(1) charges, Stokes expectations, and the dual rotations.
//!
//! The pair `(E, H)` mixed by a dual rotation is represented only as the
//! abstract two-component object the 2×2 matrix acts on; no map from the
//! modes `(b₁, b₂)` to field strengths is constructed.

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fock::{FockOperator, FockPolyState, LadderOp, Scheme};
use crate::matrix::ExactMatrix;
use crate::scalar::{parse_rational, rational, GaussianRational, Rational};

type GR = GaussianRational;

pub const DEFAULT_TRUNCATION: u32 = 4;

/// A state of modes 1 and 2 only, with the positive metric.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationState {
    inner: FockPolyState,
}

impl PolarizationState {
    pub fn new(inner: FockPolyState) -> Result<Self> {
        if inner.scheme() != Scheme::Vacuum2 {
            return Err(Error::SchemeMismatch);
        }
        if inner.terms().any(|(o, _)| o[2] != 0 || o[3] != 0) {
            return Err(Error::DimensionMismatch("polarization states occupy modes 1 and 2 only".into()));
        }
        Ok(Self { inner })
    }

    /// `Σ c (b₁⁺)^{n₁}(b₂⁺)^{n₂}|0⟩` (unnormalized monomials).
    pub fn from_occupations(terms: &[(u32, u32, GR)], truncation: u32) -> Result<Self> {
        let inner = FockPolyState::from_terms(
            terms.iter().map(|(a, b, c)| ([*a, *b, 0, 0], c.clone())),
            truncation,
            Scheme::Vacuum2,
        )?;
        Self::new(inner)
    }

    pub fn vacuum(truncation: u32) -> Self {
        Self::new(FockPolyState::vacuum(truncation, Scheme::Vacuum2)).expect("vacuum is a polarization state")
    }

    /// Parses `[[n1, n2], [n1, n2, "coefficient"], ...]`; the coefficient is a
    /// rational or `"re,im"` and defaults to 1.
    pub fn from_json(s: &str, truncation: u32) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let items = v.as_array().ok_or_else(|| Error::Parse("state must be a JSON list".into()))?;
        let mut terms = Vec::new();
        for item in items {
            let parts = item
                .as_array()
                .ok_or_else(|| Error::Parse(format!("expected [n1, n2(, coeff)], got {item}")))?;
            let occ = |k: usize| {
                parts
                    .get(k)
                    .and_then(Value::as_u64)
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::Parse(format!("bad occupation in {item}")))
            };
            let coeff = match parts.get(2) {
                None => GR::one(),
                Some(Value::String(c)) => c.parse()?,
                Some(Value::Number(n)) => GR::from_rational(parse_rational(&n.to_string())?),
                Some(other) => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            if parts.len() > 3 {
                return Err(Error::Parse(format!("too many fields in {item}")));
            }
            terms.push((occ(0)?, occ(1)?, coeff));
        }
        Self::from_occupations(&terms, truncation)
    }

    pub fn state(&self) -> &FockPolyState {
        &self.inner
    }
}

fn bilinear(c: GR, i: u8, j: u8) -> FockOperator {
    FockOperator::word(c, vec![LadderOp::b_dag(i), LadderOp::b(j)])
}

/// `H = k₀(b₁⁺b₁ + b₂⁺b₂)`.
pub fn em_hamiltonian(k0: &Rational) -> FockOperator {
    let k = GR::from_rational(k0.clone());
    bilinear(k.clone(), 1, 1).add(&bilinear(k, 2, 2))
}

/// `[J₀, J₁, J₂, J₃]`.
pub fn su2_charges() -> [FockOperator; 4] {
    let half = GR::from_ratio(1, 2);
    let ihalf = GR::i() * half.clone();
    let j0 = bilinear(half.clone(), 1, 1).add(&bilinear(half.clone(), 2, 2));
    let j1 = bilinear(half.clone(), 1, 2).add(&bilinear(half.clone(), 2, 1));
    let j2 = bilinear(ihalf.clone(), 2, 1).sub(&bilinear(ihalf, 1, 2));
    let j3 = bilinear(half.clone(), 1, 1).sub(&bilinear(half, 2, 2));
    [j0, j1, j2, j3]
}

/// `(⟨J₀⟩, ⟨J₁⟩, ⟨J₂⟩, ⟨J₃⟩)` in a nonzero state.
pub fn stokes_expectations(s: &PolarizationState) -> Result<[GR; 4]> {
    let st = s.state();
    let norm = st.norm_sqr()?;
    if norm.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let inv = norm.inv().expect("nonzero");
    let charges = su2_charges();
    let mut out: [GR; 4] = Default::default();
    for (k, j) in charges.iter().enumerate() {
        out[k] = st.inner_product(&j.apply(st)?)? * inv.clone();
    }
    Ok(out)
}

/// `exp(iα/2 + i n·τ θ/2)` with exactly representable entries:
/// `phase = e^{iα/2}`, `(c, s) = (cos θ/2, sin θ/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct U2Element {
    phase: GR,
    n: [Rational; 3],
    c: Rational,
    s: Rational,
}

impl U2Element {
    pub fn new(phase: GR, n: [Rational; 3], c: Rational, s: Rational) -> Result<Self> {
        if !phase.norm_sqr().is_one() {
            return Err(Error::NotRepresentable(format!("phase {phase} is not unimodular")));
        }
        let nn: Rational = n.iter().map(|x| x * x).sum();
        if !nn.is_one() {
            return Err(Error::NotRepresentable("n must be a unit vector".into()));
        }
        if !(&c * &c + &s * &s).is_one() {
            return Err(Error::NotRepresentable(format!("({c}, {s}) is not on the unit circle")));
        }
        Ok(Self { phase, n, c, s })
    }

    pub fn phase_only(phase: GR) -> Result<Self> {
        let z = Rational::zero();
        Self::new(phase, [z.clone(), z.clone(), Rational::one()], Rational::one(), z)
    }

    pub fn half_angle(&self) -> (&Rational, &Rational) {
        (&self.c, &self.s)
    }

    /// `phase · (cI + i s n·τ)`.
    pub fn matrix(&self) -> ExactMatrix {
        let taus = pauli();
        let mut m = ExactMatrix::identity(2).scale(&GR::from_rational(self.c.clone()));
        for (t, nk) in taus.iter().zip(&self.n) {
            m = &m + &t.scale(&(GR::i() * GR::from_rational(&self.s * nk)));
        }
        m.scale(&self.phase)
    }
}

/// Pauli matrices `τ₁, τ₂, τ₃`.
pub fn pauli() -> [ExactMatrix; 3] {
    let z = GR::zero;
    [
        ExactMatrix::from_rows(vec![vec![z(), GR::one()], vec![GR::one(), z()]]).expect("2x2"),
        ExactMatrix::from_rows(vec![vec![z(), -GR::i()], vec![GR::i(), z()]]).expect("2x2"),
        ExactMatrix::from_rows(vec![vec![GR::one(), z()], vec![z(), GR::from_int(-1)]]).expect("2x2"),
    ]
}

/// The dual rotation: `n = (0, 1, 0)`, `α = 0`; its matrix is
/// `[[c, s], [−s, c]]`.
pub fn dual_rotation(c: Rational, s: Rational) -> Result<U2Element> {
    let z = Rational::zero();
    U2Element::new(GR::one(), [z.clone(), Rational::one(), z], c, s)
}

/// Half-angle pair of `dual(θ₁ + θ₂)`.
pub fn dual_compose(a: &U2Element, b: &U2Element) -> Result<U2Element> {
    let (c1, s1) = a.half_angle();
    let (c2, s2) = b.half_angle();
    dual_rotation(c1 * c2 - s1 * s2, s1 * c2 + c1 * s2)
}

/// Full-angle `(cos θ, sin θ)` from the half-angle pair.
pub fn full_angle(u: &U2Element) -> (Rational, Rational) {
    let (c, s) = u.half_angle();
    (c * c - s * s, Rational::from_integer(2.into()) * c * s)
}

/// `b_i → Σ_j U_ij b_j`, `b_i⁺ → Σ_j conj(U_ij) b_j⁺` applied to an operator in modes 1, 2.
pub fn conjugate(op: &FockOperator, u: &ExactMatrix) -> FockOperator {
    op.substitute(|l| {
        if l.mode > 2 {
            return FockOperator::word(GR::one(), vec![l]);
        }
        (1..=2u8).fold(FockOperator::zero(), |acc, j| {
            let v = u.get(l.mode as usize - 1, j as usize - 1);
            let coef = if l.dagger { v.conj() } else { v.clone() };
            acc.add(&FockOperator::word(coef, vec![LadderOp { mode: j, dagger: l.dagger }]))
        })
    })
}

/// `R` with `U⁺τ_kU = Σ_l R_kl τ_l`.
pub fn adjoint_rotation(u: &ExactMatrix) -> ExactMatrix {
    let taus = pauli();
    let half = GR::from_ratio(1, 2);
    ExactMatrix::from_fn(3, 3, |k, l| {
        let m = &(&(&u.adjoint() * &taus[k]) * u) * &taus[l];
        m.trace() * half.clone()
    })
}

/// Exactly representable U(2) elements used for the invariance checks.
pub fn representable_elements() -> Vec<(String, U2Element)> {
    let r = rational;
    let z = || r(0, 1);
    let one = || r(1, 1);
    let mk = |phase: GR, n: [Rational; 3], c, s| U2Element::new(phase, n, c, s).expect("representable");
    vec![
        ("identity".into(), mk(GR::one(), [z(), z(), one()], one(), z())),
        ("phase i".into(), mk(GR::i(), [z(), z(), one()], one(), z())),
        ("phase -1".into(), mk(GR::from_int(-1), [z(), z(), one()], one(), z())),
        ("i*tau1".into(), mk(GR::one(), [one(), z(), z()], z(), one())),
        ("dual (3/5,4/5)".into(), dual_rotation(r(3, 5), r(4, 5)).expect("pythagorean")),
        ("tau3 rotation (5/13,12/13)".into(), mk(GR::one(), [z(), z(), one()], r(5, 13), r(12, 13))),
        (
            "n=(3/5,0,4/5), (8/17,15/17), phase -i".into(),
            mk(-GR::i(), [r(3, 5), z(), r(4, 5)], r(8, 17), r(15, 17)),
        ),
        (
            "n=(2/3,1/3,2/3), (3/5,4/5), phase (3+4i)/5".into(),
            mk(GR::from_parts(3, 5, 4, 5), [r(2, 3), r(1, 3), r(2, 3)], r(3, 5), r(4, 5)),
        ),
    ]
}
