//! Truncated four-mode Fock space with an indefinite metric.
//!
//! States are polynomials in occupation symbols `z₁..z₄`: creation multiplies
//! by `z`, annihilation differentiates with the metric sign. Mode 4 is the
//! `b₀` sector; the charges use `b₄ = ib₀`, `b₄⁺ = ib₀⁺`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::canonical::{charge_b_form, to_b_variables, ChargeName, ModeContext};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::{QuadraticObservable, Symbol};
use crate::scalar::{rational_sqrt, GaussianRational, Rational};

type GR = GaussianRational;

/// Per-mode metric sign `η = (+1, +1, +1, −1)`.
pub const METRIC: [i64; 4] = [1, 1, 1, -1];

pub const DEFAULT_TRUNCATION: u32 = 6;

/// Which vacuum the ladder operators are referred to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    /// `b₀` creates, `b₀⁺` annihilates; positive metric.
    Vacuum1,
    /// All `b_μ⁺` create; indefinite metric.
    Vacuum2,
}

impl Scheme {
    pub const BOTH: [Scheme; 2] = [Scheme::Vacuum1, Scheme::Vacuum2];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Vacuum1 => write!(f, "1"),
            Scheme::Vacuum2 => write!(f, "2"),
        }
    }
}

pub type Occupation = [u32; 4];

/// `b_μ` (`dagger = false`) or `b_μ⁺`; mode 4 stands for `b₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LadderOp {
    pub mode: u8,
    pub dagger: bool,
}

impl LadderOp {
    pub fn b(mode: u8) -> Self {
        Self { mode, dagger: false }
    }

    pub fn b_dag(mode: u8) -> Self {
        Self { mode, dagger: true }
    }

    /// Whether this operator raises the occupation in `scheme`.
    pub fn creates(self, scheme: Scheme) -> bool {
        if self.mode == 4 && scheme == Scheme::Vacuum1 {
            !self.dagger
        } else {
            self.dagger
        }
    }

    /// The c-number `[self, other]`.
    pub fn commutator(self, other: LadderOp) -> GR {
        if self.mode != other.mode || self.dagger == other.dagger {
            return GR::zero();
        }
        let eta = GR::from_int(METRIC[self.mode as usize - 1]);
        if self.dagger {
            -eta
        } else {
            eta
        }
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.mode == 4 { 0 } else { self.mode };
        write!(f, "b{m}{}", if self.dagger { "+" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockPolyState {
    truncation: u32,
    scheme: Scheme,
    terms: BTreeMap<Occupation, GR>,
}

impl FockPolyState {
    pub fn zero(truncation: u32, scheme: Scheme) -> Self {
        Self {
            truncation,
            scheme,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(truncation: u32, scheme: Scheme) -> Self {
        Self::basis([0; 4], truncation, scheme).expect("vacuum fits any truncation")
    }

    /// The monomial `z^occ`, i.e. `Π (c_μ)^{occ_μ} |0⟩` with the scheme's creators.
    pub fn basis(occ: Occupation, truncation: u32, scheme: Scheme) -> Result<Self> {
        let mut s = Self::zero(truncation, scheme);
        s.add_term(occ, GR::one())?;
        Ok(s)
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Occupation, GR)>,
        truncation: u32,
        scheme: Scheme,
    ) -> Result<Self> {
        let mut s = Self::zero(truncation, scheme);
        for (o, c) in terms {
            s.add_term(o, c)?;
        }
        Ok(s)
    }

    fn add_term(&mut self, occ: Occupation, c: GR) -> Result<()> {
        if occ.iter().sum::<u32>() > self.truncation {
            return Err(Error::TruncationOverflow {
                truncation: self.truncation,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(occ).or_insert_with(GR::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&occ);
        }
        Ok(())
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &GR)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|o| o.iter().sum()).max().unwrap_or(0)
    }

    /// The same state in a space with a different cutoff.
    pub fn with_truncation(&self, truncation: u32) -> Result<Self> {
        Self::from_terms(self.terms.clone(), truncation, self.scheme)
    }

    pub fn scale(&self, c: &GR) -> Self {
        let mut out = Self::zero(self.truncation, self.scheme);
        for (o, v) in &self.terms {
            out.add_term(*o, v.clone() * c.clone()).expect("same support");
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.scheme != other.scheme {
            return Err(Error::SchemeMismatch);
        }
        let mut out = self.clone();
        out.truncation = self.truncation.max(other.truncation);
        for (o, v) in &other.terms {
            out.add_term(*o, v.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&GR::from_int(-1)))
    }

    /// Applies one ladder operator: creators multiply by `z_μ`, annihilators
    /// act as `η_μ ∂/∂z_μ` (for `b₀⁺` in scheme 1, `+∂/∂z₄`).
    pub fn apply_ladder(&self, op: LadderOp) -> Result<Self> {
        let k = op.mode as usize - 1;
        if !(1..=4).contains(&op.mode) {
            return Err(Error::InvalidLabel(format!("ladder mode {}", op.mode)));
        }
        let mut out = Self::zero(self.truncation, self.scheme);
        if op.creates(self.scheme) {
            for (o, v) in &self.terms {
                let mut n = *o;
                n[k] += 1;
                out.add_term(n, v.clone())?;
            }
        } else {
            // the sign makes [annihilator, creator] match `LadderOp::commutator`
            let sign = match (self.scheme, op.mode) {
                (Scheme::Vacuum1, 4) => 1,
                _ => METRIC[k],
            };
            for (o, v) in &self.terms {
                if o[k] == 0 {
                    continue;
                }
                let mut n = *o;
                n[k] -= 1;
                out.add_term(n, v.clone() * GR::from_int(sign * o[k] as i64))?;
            }
        }
        Ok(out)
    }

    /// Squared norm of the monomial `z^occ`: `Π occ!` times `(−1)^{occ₄}` in scheme 2.
    pub fn monomial_norm(occ: &Occupation, scheme: Scheme) -> Rational {
        let f: BigInt = occ
            .iter()
            .map(|&n| (1..=n as u64).map(BigInt::from).product::<BigInt>())
            .product();
        let sign = if scheme == Scheme::Vacuum2 && occ[3] % 2 == 1 { -1 } else { 1 };
        Rational::from_integer(f * sign)
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<GR> {
        if self.scheme != other.scheme {
            return Err(Error::SchemeMismatch);
        }
        let mut acc = GR::zero();
        for (o, v) in &self.terms {
            if let Some(w) = other.terms.get(o) {
                acc += (v.conj() * w.clone()).scale(&Self::monomial_norm(o, self.scheme));
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> Result<GR> {
        self.inner_product(self)
    }

    /// Splits into the part with no mode-4 quanta and the remainder.
    pub fn decompose_physical(&self) -> Result<(Self, Self)> {
        if self.scheme != Scheme::Vacuum2 {
            return Err(Error::SchemeMismatch);
        }
        let mut p = Self::zero(self.truncation, self.scheme);
        let mut n = Self::zero(self.truncation, self.scheme);
        for (o, v) in &self.terms {
            let target = if o[3] == 0 { &mut p } else { &mut n };
            target.add_term(*o, v.clone())?;
        }
        Ok((p, n))
    }
}

/// All occupations of total degree ≤ `n`, in lexicographic order.
pub fn occupations(n: u32) -> Vec<Occupation> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            for c in 0..=(n - a - b) {
                for d in 0..=(n - a - b - c) {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Gram matrix of the normalized basis `z^a / √(Πa!)` (scheme 2: `diag((−1)^{a₄})`).
pub fn normalized_gram(truncation: u32, scheme: Scheme) -> Result<ExactMatrix> {
    let occ = occupations(truncation);
    let states: Vec<FockPolyState> = occ
        .iter()
        .map(|o| FockPolyState::basis(*o, truncation, scheme))
        .collect::<Result<_>>()?;
    let mut g = ExactMatrix::zeros(occ.len(), occ.len());
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let ip = a.inner_product(b)?;
            if ip.is_zero() {
                continue;
            }
            let na = FockPolyState::monomial_norm(&occ[i], Scheme::Vacuum1);
            let nb = FockPolyState::monomial_norm(&occ[j], Scheme::Vacuum1);
            let root = rational_sqrt(&(na * nb)).ok_or_else(|| Error::Singular("factorial product".into()))?;
            g.set(i, j, ip.scale(&root.recip()));
        }
    }
    Ok(g)
}

/// A linear combination of words in ladder operators. Words act right to left.
#[derive(Clone, PartialEq)]
pub struct FockOperator {
    terms: BTreeMap<Vec<LadderOp>, GR>,
}

impl fmt::Debug for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ops: Vec<String> = w.iter().map(ToString::to_string).collect();
                format!("({c}){}", ops.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FockOperator {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: GR) -> Self {
        Self::word(c, Vec::new())
    }

    pub fn word(c: GR, w: Vec<LadderOp>) -> Self {
        let mut o = Self::zero();
        o.add_word(w, c);
        o
    }

    fn add_word(&mut self, w: Vec<LadderOp>, c: GR) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(GR::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LadderOp>, &GR)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GR::from_int(-1)))
    }

    pub fn scale(&self, s: &GR) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_word(w.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_word(w, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn apply(&self, s: &FockPolyState) -> Result<FockPolyState> {
        let mut out = FockPolyState::zero(s.truncation, s.scheme);
        for (w, c) in &self.terms {
            let mut t = s.clone();
            for op in w.iter().rev() {
                t = t.apply_ladder(*op)?;
            }
            out = out.try_add(&t.scale(c))?;
        }
        Ok(out)
    }

    /// Normal-ordered form with respect to `scheme` (creators left, each group
    /// sorted) and the c-number part split off.
    pub fn normal_ordered(&self, scheme: Scheme) -> (FockOperator, GR) {
        let mut pending: Vec<(Vec<LadderOp>, GR)> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done = FockOperator::zero();
        while let Some((w, c)) = pending.pop() {
            let swap = (0..w.len().saturating_sub(1)).find(|&i| !w[i].creates(scheme) && w[i + 1].creates(scheme));
            match swap {
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    pending.push((swapped, c.clone()));
                    let k = w[i].commutator(w[i + 1]);
                    if !k.is_zero() {
                        let mut shorter = w[..i].to_vec();
                        shorter.extend_from_slice(&w[i + 2..]);
                        pending.push((shorter, c * k));
                    }
                }
                None => {
                    let split = w.iter().position(|o| !o.creates(scheme)).unwrap_or(w.len());
                    let mut creators = w[..split].to_vec();
                    let mut annihilators = w[split..].to_vec();
                    creators.sort();
                    annihilators.sort();
                    creators.extend(annihilators);
                    done.add_word(creators, c);
                }
            }
        }
        let constant = done.terms.remove(&Vec::new()).unwrap_or_else(GR::zero);
        (done, constant)
    }

    /// Equality as operators on the full Fock space.
    pub fn equals(&self, other: &Self, scheme: Scheme) -> bool {
        let (a, ca) = self.normal_ordered(scheme);
        let (b, cb) = other.normal_ordered(scheme);
        a == b && ca == cb
    }

    /// Whether every term preserves the total occupation.
    pub fn preserves_degree(&self, scheme: Scheme) -> bool {
        self.terms.keys().all(|w| {
            let up = w.iter().filter(|o| o.creates(scheme)).count();
            2 * up == w.len()
        })
    }

    /// Largest intermediate degree increase while a word acts right to left.
    pub fn max_rise(&self, scheme: Scheme) -> u32 {
        self.terms
            .keys()
            .map(|w| {
                let mut level = 0i64;
                let mut top = 0i64;
                for o in w.iter().rev() {
                    level += if o.creates(scheme) { 1 } else { -1 };
                    top = top.max(level);
                }
                top as u32
            })
            .max()
            .unwrap_or(0)
    }

    /// Substitutes each ladder operator by a linear combination of ladder operators.
    pub fn substitute(&self, f: impl Fn(LadderOp) -> FockOperator) -> FockOperator {
        let mut out = FockOperator::zero();
        for (w, c) in &self.terms {
            let mut t = FockOperator::scalar(c.clone());
            for op in w {
                t = t.compose(&f(*op));
            }
            out = out.add(&t);
        }
        out
    }
}

/// `b̂_μ` in the uniform labelling, with `b̂₄ = ib₀` and `b̂₄⁺ = ib₀⁺`.
pub fn uniform_ladder(mu: u8, dagger: bool) -> FockOperator {
    let op = LadderOp { mode: mu, dagger };
    let c = if mu == 4 { GR::i() } else { GR::one() };
    FockOperator::word(c, vec![op])
}

/// `b̂_μ⁺ b̂_ν` in the uniform labelling.
pub fn uniform_bilinear(mu: u8, nu: u8) -> FockOperator {
    uniform_ladder(mu, true).compose(&uniform_ladder(nu, false))
}

/// `P₀ = k₀(Σ_a b_a⁺b_a − b₀⁺b₀)`, as written (not normal-ordered).
pub fn energy_operator_raw(ctx: &ModeContext) -> FockOperator {
    let k0 = GR::from_rational(ctx.k0().clone());
    let mut p = FockOperator::zero();
    for a in 1..=3 {
        p = p.add(&FockOperator::word(k0.clone(), vec![LadderOp::b_dag(a), LadderOp::b(a)]));
    }
    p.sub(&FockOperator::word(k0, vec![LadderOp::b_dag(4), LadderOp::b(4)]))
}

/// Normal-ordered `P₀` for `scheme`, with the dropped vacuum constant.
pub fn energy_operator(ctx: &ModeContext, scheme: Scheme) -> (FockOperator, GR) {
    energy_operator_raw(ctx).normal_ordered(scheme)
}

/// Quantizes a classical bilinear `Σ c B_μ⁺B_ν` as `Σ c/(2k₀) b̂_μ⁺b̂_ν`.
pub fn quantize(f: &QuadraticObservable, ctx: &ModeContext) -> Result<FockOperator> {
    let inv = GR::from_rational((ctx.k0() * Rational::from_integer(2.into())).recip());
    let mut out = FockOperator::zero();
    for (mono, c) in f.terms() {
        match mono.as_slice() {
            [Symbol::B(nu), Symbol::BDag(mu)] if (1..=4).contains(mu) && (1..=4).contains(nu) => {
                out = out.add(&uniform_bilinear(*mu, *nu).scale(&(c.clone() * inv.clone())));
            }
            _ => {
                return Err(Error::NotRepresentable(format!("non-bilinear term {mono:?}")));
            }
        }
    }
    Ok(out)
}

/// Quantum charge from its classical `(q, π)` form.
pub fn quantum_charge(name: ChargeName, ctx: &ModeContext) -> FockOperator {
    quantize(&charge_b_form(name, ctx), ctx).expect("charges are bilinear")
}

/// `Q̂_X = i Σ X_μν b̂_μ⁺ b̂_ν`.
pub fn quantum_charge_from_matrix(x: &ExactMatrix) -> FockOperator {
    let mut out = FockOperator::zero();
    for mu in 1..=4u8 {
        for nu in 1..=4u8 {
            let v = x.get(mu as usize - 1, nu as usize - 1);
            if !v.is_zero() {
                out = out.add(&uniform_bilinear(mu, nu).scale(&(GR::i() * v.clone())));
            }
        }
    }
    out
}

/// Quantum form of `H = 2k₀²Σ B_μB_μ⁺`, read as `k₀ Σ b̂_μ⁺b̂_μ`.
pub fn quantum_hamiltonian(ctx: &ModeContext) -> FockOperator {
    let k0 = GR::from_rational(ctx.k0().clone());
    (1..=4).fold(FockOperator::zero(), |acc, mu| acc.add(&uniform_bilinear(mu, mu).scale(&k0)))
}

/// All 17 quantum charges.
pub fn quantum_charges(ctx: &ModeContext) -> Vec<(ChargeName, FockOperator)> {
    ChargeName::all()
        .into_iter()
        .map(|n| (n, quantum_charge(n, ctx)))
        .collect()
}

/// Compares `[Ĵ_a, Ĵ_b]` with `i · quantize({J_a, J_b})` for all charge pairs.
pub fn check_quantization(ctx: &ModeContext, scheme: Scheme) -> Result<usize, (ChargeName, ChargeName)> {
    let names = ChargeName::all();
    let ops: Vec<FockOperator> = names.iter().map(|n| quantum_charge(*n, ctx)).collect();
    let classical: Vec<QuadraticObservable> = names.iter().map(|n| crate::canonical::charge(*n, ctx)).collect();
    let mut count = 0;
    for i in 0..names.len() {
        for j in 0..names.len() {
            let bracket = crate::poly::poisson_bracket(&classical[i], &classical[j]);
            let rhs = quantize(&to_b_variables(&bracket, ctx), ctx)
                .map_err(|_| (names[i], names[j]))?
                .scale(&GR::i());
            if !ops[i].commutator(&ops[j]).equals(&rhs, scheme) {
                return Err((names[i], names[j]));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Whether `op` acts on every basis state of degree ≤ `truncation` as `λ·state`
/// with `λ = eigen(occ)`.
pub fn check_diagonal(
    op: &FockOperator,
    truncation: u32,
    scheme: Scheme,
    eigen: impl Fn(&Occupation) -> GR,
) -> Result<std::result::Result<(), Occupation>> {
    for occ in occupations(truncation) {
        let s = FockPolyState::basis(occ, truncation, scheme)?;
        if op.apply(&s)? != s.scale(&eigen(&occ)) {
            return Ok(Err(occ));
        }
    }
    Ok(Ok(()))
}

/// Whether two operators act identically on every basis state of degree ≤ `degree`.
pub fn same_action(a: &FockOperator, b: &FockOperator, degree: u32, truncation: u32, scheme: Scheme) -> Result<bool> {
    for occ in occupations(degree) {
        let s = FockPolyState::basis(occ, truncation, scheme)?;
        if a.apply(&s)? != b.apply(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Commutators of degree-preserving operators at cutoff `n` agree with those
/// at cutoff `n + 2` on all states of degree ≤ `n`.
pub fn check_truncation_exactness(ops: &[FockOperator], n: u32, scheme: Scheme) -> Result<bool> {
    let small = ops.iter().map(|o| ActionTable::new(o, n, scheme)).collect::<Result<Vec<_>>>()?;
    let large = ops.iter().map(|o| ActionTable::new(o, n + 2, scheme)).collect::<Result<Vec<_>>>()?;
    for i in 0..ops.len() {
        for j in 0..ops.len() {
            for occ in occupations(n) {
                let s = FockPolyState::basis(occ, n, scheme)?;
                let l = FockPolyState::basis(occ, n + 2, scheme)?;
                let cs = small[i].apply(&small[j].apply(&s)?)?.try_sub(&small[j].apply(&small[i].apply(&s)?)?)?;
                let cl = large[i].apply(&large[j].apply(&l)?)?.try_sub(&large[j].apply(&large[i].apply(&l)?)?)?;
                if cs.with_truncation(n + 2)? != cl {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An operator's images of every basis state of a truncated space.
struct ActionTable {
    columns: BTreeMap<Occupation, FockPolyState>,
    truncation: u32,
    scheme: Scheme,
}

impl ActionTable {
    fn new(op: &FockOperator, truncation: u32, scheme: Scheme) -> Result<Self> {
        let mut columns = BTreeMap::new();
        for occ in occupations(truncation) {
            columns.insert(occ, op.apply(&FockPolyState::basis(occ, truncation, scheme)?)?);
        }
        Ok(Self {
            columns,
            truncation,
            scheme,
        })
    }

    fn apply(&self, s: &FockPolyState) -> Result<FockPolyState> {
        let mut out = FockPolyState::zero(self.truncation, self.scheme);
        for (occ, c) in s.terms() {
            out = out.try_add(&self.columns[occ].scale(c))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 6;

    fn ctx() -> ModeContext {
        ModeContext::from_int(5).unwrap()
    }

    #[test]
    fn canonical_commutators_act_correctly() {
        for scheme in Scheme::BOTH {
            for occ in occupations(N - 1) {
                let s = FockPolyState::basis(occ, N, scheme).unwrap();
                for mode in 1..=4u8 {
                    let b = FockOperator::word(GR::one(), vec![LadderOp::b(mode)]);
                    let bd = FockOperator::word(GR::one(), vec![LadderOp::b_dag(mode)]);
                    let out = b.commutator(&bd).apply(&s).unwrap();
                    assert_eq!(out, s.scale(&GR::from_int(METRIC[mode as usize - 1])));
                }
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated() {
        for scheme in Scheme::BOTH {
            let v = FockPolyState::vacuum(N, scheme);
            for mode in 1..=4 {
                for dagger in [false, true] {
                    let op = LadderOp { mode, dagger };
                    if !op.creates(scheme) {
                        assert!(v.apply_ladder(op).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn overflow_is_an_error() {
        let s = FockPolyState::basis([0, 0, 0, 2], 2, Scheme::Vacuum2).unwrap();
        assert!(matches!(
            s.apply_ladder(LadderOp::b_dag(1)),
            Err(Error::TruncationOverflow { truncation: 2 })
        ));
    }

    #[test]
    fn gram_signs() {
        let g = normalized_gram(N, Scheme::Vacuum2).unwrap();
        let occ = occupations(N);
        for (i, o) in occ.iter().enumerate() {
            for j in 0..occ.len() {
                let want = if i == j { GR::from_int(if o[3] % 2 == 0 { 1 } else { -1 }) } else { GR::zero() };
                assert_eq!(g.get(i, j), &want);
            }
        }
        assert!(normalized_gram(4, Scheme::Vacuum1).unwrap().is_identity());
    }

    #[test]
    fn energy_spectra() {
        let c = ctx();
        let (p2, c2) = energy_operator(&c, Scheme::Vacuum2);
        assert!(c2.is_zero());
        let k0 = GR::from_int(5);
        let m_of = |o: &Occupation| (o[0] + o[1] + o[2]) as i64;
        let r = check_diagonal(&p2, N, Scheme::Vacuum2, |o| k0.clone() * GR::from_int(m_of(o) + o[3] as i64)).unwrap();
        assert_eq!(r, Ok(()));
        let (p1, c1) = energy_operator(&c, Scheme::Vacuum1);
        assert_eq!(c1, GR::from_int(-5));
        let r = check_diagonal(&p1, N, Scheme::Vacuum1, |o| k0.clone() * GR::from_int(m_of(o) - o[3] as i64)).unwrap();
        assert_eq!(r, Ok(()));
    }

    #[test]
    fn charges_commute_with_h_and_count_quanta() {
        let c = ctx();
        let h = quantum_hamiltonian(&c);
        for (n, j) in quantum_charges(&c) {
            assert!(j.commutator(&h).equals(&FockOperator::zero(), Scheme::Vacuum2), "{n}");
            assert!(same_action(&j.commutator(&h), &FockOperator::zero(), N, N, Scheme::Vacuum2).unwrap());
        }
        let j = quantum_charge(ChargeName::Number, &c);
        let r = check_diagonal(&j, N, Scheme::Vacuum2, |o| GR::from_int(o.iter().sum::<u32>() as i64)).unwrap();
        assert_eq!(r, Ok(()));
        for name in ChargeName::all() {
            assert!(quantum_charge(name, &c).equals(&quantum_charge_from_matrix(&crate::canonical::charge_matrix(name)), Scheme::Vacuum2));
        }
    }

    #[test]
    fn quantization_matches_brackets() {
        for scheme in Scheme::BOTH {
            assert_eq!(check_quantization(&ctx(), scheme), Ok(289));
        }
    }

    #[test]
    fn physical_split() {
        let s = FockPolyState::from_terms([([1, 0, 0, 0], GR::one()), ([0, 0, 0, 1], GR::one())], N, Scheme::Vacuum2).unwrap();
        let (p, n) = s.decompose_physical().unwrap();
        assert_eq!(p.try_add(&n).unwrap(), s);
        assert!(p.inner_product(&n).unwrap().is_zero());
        let one_one = FockPolyState::basis([1, 0, 0, 1], N, Scheme::Vacuum2).unwrap();
        let (p, n) = one_one.decompose_physical().unwrap();
        assert!(p.is_zero());
        assert_eq!(n, one_one);
    }

    #[test]
    fn truncation_is_exact() {
        let c = ctx();
        let ops: Vec<_> = quantum_charges(&c).into_iter().map(|(_, o)| o).take(5).collect();
        assert!(check_truncation_exactness(&ops, 4, Scheme::Vacuum2).unwrap());
    }
}
