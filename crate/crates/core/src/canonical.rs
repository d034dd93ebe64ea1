//! Single-mode canonical formalism: Hamiltonian, U(3,1) generators and
//! parameters, infinitesimal canonical transformations, the generating
//! function, and the conserved charges.
//!
//! The fourth canonical pair is defined through `B₄ = iB₀`, so every sum over
//! `μ` runs uniformly over 1..4.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::epsilon::{epsilon, BasisIndex, SpaceView};
use crate::error::{Error, Result};
use crate::jet::JetScalar;
use crate::matrix::{mat_commutator, ExactMatrix};
use crate::poly::{poisson_bracket, Coefficient, Polynomial, QuadraticObservable, Symbol};
use crate::scalar::{GaussianRational, Rational};

type GR = GaussianRational;

#[derive(Clone, Debug, PartialEq)]
pub struct ModeContext {
    k0: Rational,
}

impl ModeContext {
    pub fn new(k0: Rational) -> Result<Self> {
        if k0 <= Rational::zero() {
            return Err(Error::Config(format!("k0 must be positive, got {k0}")));
        }
        Ok(Self { k0 })
    }

    pub fn from_int(k0: i64) -> Result<Self> {
        Self::new(Rational::from_integer(k0.into()))
    }

    pub fn k0(&self) -> &Rational {
        &self.k0
    }

    fn k0c(&self) -> GR {
        GR::from_rational(self.k0.clone())
    }

    fn inv_k0(&self) -> GR {
        GR::from_rational(self.k0.recip())
    }
}

fn q<C: Coefficient>(mu: u8) -> Polynomial<C> {
    Polynomial::symbol(Symbol::Q(mu))
}

fn p<C: Coefficient>(mu: u8) -> Polynomial<C> {
    Polynomial::symbol(Symbol::P(mu))
}

/// `H = ½ Σ (π_μ² + k₀² q_μ²)`.
pub fn hamiltonian(ctx: &ModeContext) -> QuadraticObservable {
    let k2 = ctx.k0c() * ctx.k0c();
    let mut h = Polynomial::zero();
    for mu in 1..=4 {
        h = &h + &(&p(mu) * &p(mu));
        h = &h + &(&q(mu) * &q(mu)).scale(&k2);
    }
    h.scale(&GR::from_ratio(1, 2))
}

/// `H = 2k₀² Σ B_μ B_μ⁺`, the form before canonical variables are introduced.
pub fn hamiltonian_b_form(ctx: &ModeContext) -> QuadraticObservable {
    let k2 = ctx.k0c() * ctx.k0c();
    let mut h = Polynomial::zero();
    for mu in 1..=4 {
        h = &h + &Polynomial::monomial(k2.clone() * GR::from_int(2), vec![Symbol::B(mu), Symbol::BDag(mu)]);
    }
    h
}

/// `H = 2k₀² φ⁺φ` with `φ = (B₁, B₂, B₃, iB₀)`, written in `B₀` variables.
pub fn hamiltonian_phi_form(ctx: &ModeContext) -> QuadraticObservable {
    let k2 = ctx.k0c() * ctx.k0c() * GR::from_int(2);
    let mut h = Polynomial::zero();
    for a in 1..=3 {
        h = &h + &Polynomial::monomial(k2.clone(), vec![Symbol::BDag(a), Symbol::B(a)]);
    }
    // (iB₀⁺)(iB₀) = −B₀⁺B₀
    &h - &Polynomial::monomial(k2, vec![Symbol::BDag(0), Symbol::B(0)])
}

/// Rewrites a `(q, π)` observable through `q = B + B⁺`, `π = −ik₀(B − B⁺)`.
pub fn to_b_variables(f: &QuadraticObservable, ctx: &ModeContext) -> QuadraticObservable {
    let mik0 = -(GR::i() * ctx.k0c());
    f.substitute(&|s| match s {
        Symbol::Q(mu) => Some(&Polynomial::symbol(Symbol::B(mu)) + &Polynomial::symbol(Symbol::BDag(mu))),
        Symbol::P(mu) => Some(
            (&Polynomial::symbol(Symbol::B(mu)) - &Polynomial::symbol(Symbol::BDag(mu))).scale(&mik0),
        ),
        _ => None,
    })
}

/// Replaces `B₄ → iB₀`, `B₄⁺ → iB₀⁺`.
pub fn to_time_component(f: &QuadraticObservable) -> QuadraticObservable {
    f.substitute(&|s| match s {
        Symbol::B(4) => Some(Polynomial::monomial(GR::i(), vec![Symbol::B(0)])),
        Symbol::BDag(4) => Some(Polynomial::monomial(GR::i(), vec![Symbol::BDag(0)])),
        _ => None,
    })
}

/// `b_μ⁺ b_ν = 2k₀ B_μ⁺ B_ν` as a classical observable.
pub fn b_dag_b(mu: u8, nu: u8, ctx: &ModeContext) -> QuadraticObservable {
    Polynomial::monomial(ctx.k0c() * GR::from_int(2), vec![Symbol::BDag(mu), Symbol::B(nu)])
}

/// Which of the 16 U(3,1) generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Unit,
    Antisym(u8, u8),
    Sym(u8, u8),
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Unit => write!(f, "iI4"),
            GeneratorKind::Antisym(a, b) => write!(f, "I[{a}{b}]"),
            GeneratorKind::Sym(a, b) => write!(f, "I({a}{b})"),
        }
    }
}

fn e4(mu: u8, nu: u8) -> ExactMatrix {
    epsilon(BasisIndex::Vector(mu), BasisIndex::Vector(nu), SpaceView::Dim4).expect("vector indices lie in dim4")
}

/// The 4×4 matrices `iI₄`, `I_[μν] = ε^{μ,ν} − ε^{ν,μ}`,
/// `I_(μν) = i(ε^{μ,ν} + ε^{ν,μ} − ½δ_{μν}I₄)`.
pub fn u31_generator(kind: GeneratorKind) -> Result<ExactMatrix> {
    let check = |m: u8| {
        if (1..=4).contains(&m) {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("generator index {m} outside 1..4")))
        }
    };
    match kind {
        GeneratorKind::Unit => Ok(ExactMatrix::identity(4).scale(&GR::i())),
        GeneratorKind::Antisym(a, b) => {
            check(a)?;
            check(b)?;
            Ok(&e4(a, b) - &e4(b, a))
        }
        GeneratorKind::Sym(a, b) => {
            check(a)?;
            check(b)?;
            let mut m = &e4(a, b) + &e4(b, a);
            if a == b {
                m = &m - &ExactMatrix::identity(4).scale(&GR::from_ratio(1, 2));
            }
            Ok(m.scale(&GR::i()))
        }
    }
}

/// Parameters `ω₀`, `ω_[μν]` and `ω_(μν)` of an infinitesimal U(3,1) element.
#[derive(Clone, Debug, PartialEq)]
pub struct U31Params<C: Coefficient = GR> {
    omega0: C,
    antisym: BTreeMap<(u8, u8), C>,
    sym: BTreeMap<(u8, u8), C>,
}

impl<C: Coefficient> U31Params<C> {
    pub fn zero() -> Self {
        Self {
            omega0: C::zero(),
            antisym: BTreeMap::new(),
            sym: BTreeMap::new(),
        }
    }

    fn set_unchecked(&mut self, kind: GeneratorKind, v: C) {
        match kind {
            GeneratorKind::Unit => self.omega0 = v,
            GeneratorKind::Antisym(a, b) if a < b => {
                self.antisym.insert((a, b), v);
            }
            GeneratorKind::Antisym(a, b) if a > b => {
                self.antisym.insert((b, a), -v);
            }
            GeneratorKind::Antisym(..) => {}
            GeneratorKind::Sym(a, b) => {
                self.sym.insert((a.min(b), a.max(b)), v);
            }
        }
    }

    pub fn omega0(&self) -> &C {
        &self.omega0
    }

    /// `ω_[μν]`, antisymmetric in its indices.
    pub fn omega_antisym(&self, mu: u8, nu: u8) -> C {
        if mu < nu {
            self.antisym.get(&(mu, nu)).cloned().unwrap_or_else(C::zero)
        } else if mu > nu {
            -self.omega_antisym(nu, mu)
        } else {
            C::zero()
        }
    }

    /// `ω_(μν)`, symmetric in its indices.
    pub fn omega_sym(&self, mu: u8, nu: u8) -> C {
        self.sym.get(&(mu.min(nu), mu.max(nu))).cloned().unwrap_or_else(C::zero)
    }

    /// `ω_(μν) − ¼ ω_(αα) δ_{μν}`.
    pub fn traceless(&self, mu: u8, nu: u8) -> C {
        let mut v = self.omega_sym(mu, nu);
        if mu == nu {
            let tr = (1..=4).fold(C::zero(), |acc, a| acc + &self.omega_sym(a, a));
            v = v - &(tr * &C::from(GR::from_ratio(1, 4)));
        }
        v
    }
}

impl U31Params<GR> {
    /// Builds parameters from `(generator, value)` pairs, enforcing the reality
    /// pattern: `ω₀`, `ω_[ab]`, `ω_(ab)`, `ω_(44)` real; `ω_[a4]`, `ω_(a4)` imaginary.
    pub fn new(values: &[(GeneratorKind, GR)]) -> Result<Self> {
        let mut out = Self::zero();
        for (kind, v) in values {
            let (needs_imag, name) = match *kind {
                GeneratorKind::Unit => (false, "omega0".to_string()),
                GeneratorKind::Antisym(a, b) => {
                    if a == b || !(1..=4).contains(&a) || !(1..=4).contains(&b) {
                        return Err(Error::InvalidLabel(format!("antisymmetric parameter [{a}{b}]")));
                    }
                    ((a == 4) != (b == 4), format!("omega[{a}{b}]"))
                }
                GeneratorKind::Sym(a, b) => {
                    if !(1..=4).contains(&a) || !(1..=4).contains(&b) {
                        return Err(Error::InvalidLabel(format!("symmetric parameter ({a}{b})")));
                    }
                    ((a == 4) != (b == 4), format!("omega({a}{b})"))
                }
            };
            let ok = if needs_imag { v.is_imaginary() } else { v.is_real() };
            if !ok {
                return Err(Error::Reality {
                    name,
                    detail: format!(
                        "{} required, got {v}",
                        if needs_imag { "imaginary" } else { "real" }
                    ),
                });
            }
            out.set_unchecked(*kind, v.clone());
        }
        Ok(out)
    }
}

/// One of the 16 independent one-parameter directions used for jet checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Phase,
    Antisym(u8, u8),
    SymOff(u8, u8),
    /// `ω_(kk) = 1` for `k = 1..3`; the traceless parts of these span the
    /// diagonal sector.
    SymDiag(u8),
}

impl Direction {
    pub fn all() -> Vec<Direction> {
        let mut out = vec![Direction::Phase];
        for a in 1..=4u8 {
            for b in (a + 1)..=4 {
                out.push(Direction::Antisym(a, b));
            }
        }
        for a in 1..=4u8 {
            for b in (a + 1)..=4 {
                out.push(Direction::SymOff(a, b));
            }
        }
        for k in 1..=3 {
            out.push(Direction::SymDiag(k));
        }
        out
    }

    pub fn label(self) -> String {
        match self {
            Direction::Phase => "omega0".into(),
            Direction::Antisym(a, b) => format!("omega[{a}{b}]"),
            Direction::SymOff(a, b) => format!("omega({a}{b})"),
            Direction::SymDiag(k) => format!("omega({k}{k})"),
        }
    }

    /// Unit value allowed by the reality pattern.
    fn unit(self) -> GR {
        match self {
            Direction::Antisym(_, 4) | Direction::SymOff(_, 4) => GR::i(),
            _ => GR::one(),
        }
    }

    fn kind(self) -> GeneratorKind {
        match self {
            Direction::Phase => GeneratorKind::Unit,
            Direction::Antisym(a, b) => GeneratorKind::Antisym(a, b),
            Direction::SymOff(a, b) => GeneratorKind::Sym(a, b),
            Direction::SymDiag(k) => GeneratorKind::Sym(k, k),
        }
    }

    pub fn params(self) -> U31Params<GR> {
        U31Params::new(&[(self.kind(), self.unit())]).expect("unit directions respect the reality pattern")
    }

    /// Parameters with a single jet variable along this direction.
    pub fn jet_params(self) -> U31Params<JetScalar> {
        let mut out = U31Params::zero();
        out.set_unchecked(self.kind(), JetScalar::scaled_variable(self.label(), self.unit()));
        out
    }
}

/// The variation `(δq, δπ)` as linear forms in `q, π`:
/// `δq_μ = (ω₀/k₀)π_μ + 2ω_[μν]q_ν + (2/k₀)t_μν π_ν`,
/// `δπ_μ = −k₀ω₀q_μ + 2ω_[μν]π_ν − 2k₀ t_μν q_ν`.
pub fn variation_forms<C: Coefficient>(
    params: &U31Params<C>,
    ctx: &ModeContext,
) -> ([Polynomial<C>; 4], [Polynomial<C>; 4]) {
    let k0 = C::from(ctx.k0c());
    let inv = C::from(ctx.inv_k0());
    let two = C::from(GR::from_int(2));
    let dq = std::array::from_fn(|i| {
        let mu = i as u8 + 1;
        let mut f = p::<C>(mu).scale(&(params.omega0().clone() * &inv));
        for nu in 1..=4 {
            f = &f + &q::<C>(nu).scale(&(params.omega_antisym(mu, nu) * &two));
            f = &f + &p::<C>(nu).scale(&(params.traceless(mu, nu) * &two * &inv));
        }
        f
    });
    let dp = std::array::from_fn(|i| {
        let mu = i as u8 + 1;
        let mut f = q::<C>(mu).scale(&-(params.omega0().clone() * &k0));
        for nu in 1..=4 {
            f = &f + &p::<C>(nu).scale(&(params.omega_antisym(mu, nu) * &two));
            f = &f - &q::<C>(nu).scale(&(params.traceless(mu, nu) * &two * &k0));
        }
        f
    });
    (dq, dp)
}

/// Evaluates the infinitesimal transformation at a phase-space point.
pub fn infinitesimal_transform(
    qv: &[GR; 4],
    pv: &[GR; 4],
    params: &U31Params<GR>,
    ctx: &ModeContext,
) -> ([GR; 4], [GR; 4]) {
    let (dq, dp) = variation_forms(params, ctx);
    let at = |s: Symbol| match s {
        Symbol::Q(m) => qv[m as usize - 1].clone(),
        Symbol::P(m) => pv[m as usize - 1].clone(),
        _ => GR::zero(),
    };
    (
        std::array::from_fn(|i| dq[i].evaluate(at)),
        std::array::from_fn(|i| dp[i].evaluate(at)),
    )
}

/// `F = q_μπ′_μ + (ω₀/2)(π′²/k₀ + k₀q²) + ω_[μν](π′_μq_ν − π′_νq_μ)
///      + t_μν(π′_μπ′_ν/k₀ + k₀q_μq_ν)`, summed over all `μ, ν`.
pub fn generating_function<C: Coefficient>(params: &U31Params<C>, ctx: &ModeContext) -> Polynomial<C> {
    let k0 = C::from(ctx.k0c());
    let inv = C::from(ctx.inv_k0());
    let pp = |m: u8| Polynomial::<C>::symbol(Symbol::PPrime(m));
    let mut f = Polynomial::zero();
    for mu in 1..=4 {
        f = &f + &(&q::<C>(mu) * &pp(mu));
        let osc = &(&pp(mu) * &pp(mu)).scale(&inv) + &(&q::<C>(mu) * &q::<C>(mu)).scale(&k0);
        f = &f + &osc.scale(&(params.omega0().clone() * &C::from(GR::from_ratio(1, 2))));
        for nu in 1..=4 {
            let rot = &(&pp(mu) * &q::<C>(nu)) - &(&pp(nu) * &q::<C>(mu));
            f = &f + &rot.scale(&params.omega_antisym(mu, nu));
            let sym = &(&pp(mu) * &pp(nu)).scale(&inv) + &(&q::<C>(mu) * &q::<C>(nu)).scale(&k0);
            f = &f + &sym.scale(&params.traceless(mu, nu));
        }
    }
    f
}

fn prime_to_plain(s: Symbol) -> Symbol {
    match s {
        Symbol::PPrime(m) => Symbol::P(m),
        other => other,
    }
}

/// First-order variation read off a jet-valued generating function along
/// the jet variable `label`: `δq_μ = ∂F/∂π′_μ`, `δπ_μ = −∂F/∂q_μ`, keeping only
/// the part linear in the parameter and setting `π′ → π`.
pub fn variation_from_generating_function(
    f: &Polynomial<JetScalar>,
    label: &str,
) -> ([QuadraticObservable; 4], [QuadraticObservable; 4]) {
    let part = |g: Polynomial<JetScalar>| g.map_coefficients(|c| c.partial(label)).rename(prime_to_plain);
    (
        std::array::from_fn(|i| part(f.derivative(Symbol::PPrime(i as u8 + 1)))),
        std::array::from_fn(|i| -&part(f.derivative(Symbol::Q(i as u8 + 1)))),
    )
}

/// The generator `G` of a direction: the parameter-linear part of `F`, in
/// unprimed variables, so that `δz = {z, G}`.
pub fn direction_generator(d: Direction, ctx: &ModeContext) -> QuadraticObservable {
    let f = generating_function(&d.jet_params(), ctx);
    let label = d.label();
    f.map_coefficients(|c| c.partial(&label)).rename(prime_to_plain)
}

/// Name of a conserved charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChargeName {
    Antisym(u8, u8),
    Sym(u8, u8),
    Number,
}

impl fmt::Display for ChargeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChargeName::Antisym(a, b) => write!(f, "J[{a}{b}]"),
            ChargeName::Sym(a, b) => write!(f, "J({a}{b})"),
            ChargeName::Number => write!(f, "J"),
        }
    }
}

impl ChargeName {
    /// All 17 charges: six antisymmetric, ten symmetric, and `J`.
    pub fn all() -> Vec<ChargeName> {
        let mut out = Vec::new();
        for a in 1..=4u8 {
            for b in (a + 1)..=4 {
                out.push(ChargeName::Antisym(a, b));
            }
        }
        for a in 1..=4u8 {
            for b in a..=4 {
                out.push(ChargeName::Sym(a, b));
            }
        }
        out.push(ChargeName::Number);
        out
    }
}

/// `J_[μν] = π_μq_ν − π_νq_μ`.
pub fn charge_antisym(mu: u8, nu: u8) -> QuadraticObservable {
    &(&p(mu) * &q(nu)) - &(&p(nu) * &q(mu))
}

fn osc_sum(ctx: &ModeContext) -> QuadraticObservable {
    let mut s = Polynomial::zero();
    for a in 1..=4 {
        s = &s + &(&p(a) * &p(a)).scale(&ctx.inv_k0());
        s = &s + &(&q(a) * &q(a)).scale(&ctx.k0c());
    }
    s
}

/// `J_(μν) = π_μπ_ν/k₀ + k₀q_μq_ν − ¼δ_{μν}(π²/k₀ + k₀q²)`.
pub fn charge_sym(mu: u8, nu: u8, ctx: &ModeContext) -> QuadraticObservable {
    let mut j = &(&p(mu) * &p(nu)).scale(&ctx.inv_k0()) + &(&q(mu) * &q(nu)).scale(&ctx.k0c());
    if mu == nu {
        j = &j - &osc_sum(ctx).scale(&GR::from_ratio(1, 4));
    }
    j
}

/// `J = ½(π²/k₀ + k₀q²)`.
pub fn charge_number(ctx: &ModeContext) -> QuadraticObservable {
    osc_sum(ctx).scale(&GR::from_ratio(1, 2))
}

pub fn charge(name: ChargeName, ctx: &ModeContext) -> QuadraticObservable {
    match name {
        ChargeName::Antisym(a, b) => charge_antisym(a, b),
        ChargeName::Sym(a, b) => charge_sym(a, b, ctx),
        ChargeName::Number => charge_number(ctx),
    }
}

/// Right-hand sides in `b` variables:
/// `i(b_μ⁺b_ν − b_ν⁺b_μ)`, `b_μ⁺b_ν + b_ν⁺b_μ − ½δ b_α⁺b_α`, `Σ b_μ⁺b_μ`.
pub fn charge_b_form(name: ChargeName, ctx: &ModeContext) -> QuadraticObservable {
    let number = (1..=4).fold(Polynomial::zero(), |acc, a| &acc + &b_dag_b(a, a, ctx));
    match name {
        ChargeName::Antisym(a, b) => (&b_dag_b(a, b, ctx) - &b_dag_b(b, a, ctx)).scale(&GR::i()),
        ChargeName::Sym(a, b) => {
            let mut j = &b_dag_b(a, b, ctx) + &b_dag_b(b, a, ctx);
            if a == b {
                j = &j - &number.scale(&GR::from_ratio(1, 2));
            }
            j
        }
        ChargeName::Number => number,
    }
}

/// `Q_X = i b⁺ X b` for a 4×4 matrix `X`, in `B` variables.
pub fn charge_from_matrix(x: &ExactMatrix, ctx: &ModeContext) -> QuadraticObservable {
    let mut out = Polynomial::zero();
    for mu in 1..=4u8 {
        for nu in 1..=4u8 {
            let v = x.get(mu as usize - 1, nu as usize - 1);
            if !v.is_zero() {
                out = &out + &b_dag_b(mu, nu, ctx).scale(&(GR::i() * v.clone()));
            }
        }
    }
    out
}

/// The 4×4 matrix `X` with `charge = Q_X`: `−iI₄` for `J`, `I_[μν]` for
/// `J_[μν]`, `−I_(μν)` for `J_(μν)`.
pub fn charge_matrix(name: ChargeName) -> ExactMatrix {
    match name {
        ChargeName::Antisym(a, b) => u31_generator(GeneratorKind::Antisym(a, b)).expect("valid indices"),
        ChargeName::Sym(a, b) => -&u31_generator(GeneratorKind::Sym(a, b)).expect("valid indices"),
        ChargeName::Number => ExactMatrix::identity(4).scale(&-GR::i()),
    }
}

/// A basis of 16 charges whose matrices span gl(4): `J`, the six `J_[μν]`,
/// the six off-diagonal `J_(μν)` and `J_(11)`, `J_(22)`, `J_(33)`.
pub fn charge_basis() -> Vec<ChargeName> {
    ChargeName::all()
        .into_iter()
        .filter(|c| *c != ChargeName::Sym(4, 4))
        .collect()
}

/// Coordinates of `m` in the span of `basis` (4×4 matrices).
pub fn decompose(m: &ExactMatrix, basis: &[ExactMatrix]) -> Result<Vec<GR>> {
    let cols = basis.len();
    let a = ExactMatrix::from_fn(16, cols, |i, j| basis[j].get(i / 4, i % 4).clone());
    let rhs = ExactMatrix::column(m.entries().to_vec());
    let x = a.solve(&rhs)?;
    Ok((0..cols).map(|k| x.get(k, 0).clone()).collect())
}

/// Whether `[X, Y]` lies in the span of `basis` for every pair in the basis.
pub fn closes_under_commutation(basis: &[ExactMatrix]) -> bool {
    let cols = basis.len();
    let a = ExactMatrix::from_fn(16, cols, |i, j| basis[j].get(i / 4, i % 4).clone());
    let r = a.rank();
    basis.iter().all(|x| {
        basis.iter().all(|y| {
            let c = mat_commutator(x, y).expect("square 4x4");
            let aug = ExactMatrix::from_fn(16, cols + 1, |i, j| {
                if j < cols {
                    a.get(i, j).clone()
                } else {
                    c.get(i / 4, i % 4).clone()
                }
            });
            aug.rank() == r
        })
    })
}

/// A failed structure-constant comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureMismatch {
    pub left: ChargeName,
    pub right: ChargeName,
}

/// Compares `{J_a, J_b}` against `Σ_c f_ab^c J_c` where `[X_a, X_b] = Σ f_ab^c X_c`
/// for every ordered pair of basis charges. Returns the number of pairs checked.
pub fn check_structure_constants(ctx: &ModeContext) -> Result<usize, StructureMismatch> {
    let names = charge_basis();
    let mats: Vec<ExactMatrix> = names.iter().map(|n| charge_matrix(*n)).collect();
    let charges: Vec<QuadraticObservable> = names.iter().map(|n| charge(*n, ctx)).collect();
    let mut count = 0;
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            let mismatch = StructureMismatch { left: *a, right: *b };
            let comm = mat_commutator(&mats[i], &mats[j]).expect("square 4x4");
            let coeffs = decompose(&comm, &mats).map_err(|_| mismatch.clone())?;
            let rhs = coeffs
                .iter()
                .zip(&charges)
                .fold(Polynomial::zero(), |acc, (f, c)| &acc + &c.scale(f));
            if poisson_bracket(&charges[i], &charges[j]) != rhs {
                return Err(mismatch);
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Finite invariance of `H` under `B → UB`, `B⁺ → B⁺U⁺` for a 4×4 `U` with
/// `U⁺U = 1`.
pub fn hamiltonian_invariant_under(u: &ExactMatrix, ctx: &ModeContext) -> Result<bool> {
    if u.rows() != 4 || !u.is_square() {
        return Err(Error::DimensionMismatch("U must be 4x4".into()));
    }
    if !(&u.adjoint() * u).is_identity() {
        return Err(Error::NotRepresentable("U is not unitary".into()));
    }
    let h = hamiltonian_b_form(ctx);
    let row = |mu: u8, dag: bool| {
        (1..=4u8).fold(Polynomial::zero(), |acc, nu| {
            let v = u.get(mu as usize - 1, nu as usize - 1);
            let (coef, sym) = if dag {
                (v.conj(), Symbol::BDag(nu))
            } else {
                (v.clone(), Symbol::B(nu))
            };
            &acc + &Polynomial::monomial(coef, vec![sym])
        })
    };
    let moved = h.substitute(&|s| match s {
        Symbol::B(mu) if mu >= 1 => Some(row(mu, false)),
        Symbol::BDag(mu) if mu >= 1 => Some(row(mu, true)),
        _ => None,
    });
    Ok(moved == h)
}

/// Exactly representable finite elements: signed permutations with a phase
/// from `{±1, ±i}`, plus a rational rotation in the (1,2) plane.
pub fn representable_elements() -> Vec<(String, ExactMatrix)> {
    let mut out = Vec::new();
    let perm = |p: [usize; 4], signs: [i64; 4], phase: GR| {
        ExactMatrix::from_fn(4, 4, |i, j| {
            if p[i] == j {
                GR::from_int(signs[i]) * phase.clone()
            } else {
                GR::zero()
            }
        })
    };
    out.push(("identity".into(), ExactMatrix::identity(4)));
    out.push(("phase i".into(), perm([0, 1, 2, 3], [1, 1, 1, 1], GR::i())));
    out.push(("phase -1".into(), perm([0, 1, 2, 3], [1, 1, 1, 1], GR::from_int(-1))));
    out.push(("swap 1<->2".into(), perm([1, 0, 2, 3], [1, -1, 1, 1], GR::one())));
    out.push(("cycle 1->2->3->4".into(), perm([3, 0, 1, 2], [1, 1, -1, 1], GR::one())));
    out.push(("swap 3<->4 times -i".into(), perm([0, 1, 3, 2], [1, 1, 1, -1], -GR::i())));
    let (c, s) = (GR::from_ratio(3, 5), GR::from_ratio(4, 5));
    let mut rot = ExactMatrix::identity(4);
    rot.set(0, 0, c.clone());
    rot.set(0, 1, -s.clone());
    rot.set(1, 0, s);
    rot.set(1, 1, c);
    out.push(("rotation (3/5,4/5) in 1-2".into(), rot));
    out
}
