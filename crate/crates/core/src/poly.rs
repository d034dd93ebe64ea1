//! Commutative polynomials over exact or jet coefficients, in the canonical
//! symbols of a single field mode.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::jet::JetScalar;
use crate::scalar::GaussianRational;

/// Scalars a polynomial may carry.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + From<GaussianRational>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
}

impl Coefficient for GaussianRational {}
impl Coefficient for JetScalar {}

impl Add<&JetScalar> for JetScalar {
    type Output = JetScalar;
    fn add(self, rhs: &JetScalar) -> JetScalar {
        &self + rhs
    }
}

impl Sub<&JetScalar> for JetScalar {
    type Output = JetScalar;
    fn sub(self, rhs: &JetScalar) -> JetScalar {
        &self - rhs
    }
}

impl Mul<&JetScalar> for JetScalar {
    type Output = JetScalar;
    fn mul(self, rhs: &JetScalar) -> JetScalar {
        &self * rhs
    }
}

/// Canonical and auxiliary symbols of one mode. Indices run over 1..4;
/// `B(0)`/`BDag(0)` denote the time component `B₀` with `B₄ = iB₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Q(u8),
    P(u8),
    /// New momentum `π′` of a type-2 generating function.
    PPrime(u8),
    B(u8),
    BDag(u8),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Q(m) => write!(f, "q{m}"),
            Symbol::P(m) => write!(f, "pi{m}"),
            Symbol::PPrime(m) => write!(f, "pi'{m}"),
            Symbol::B(m) => write!(f, "B{m}"),
            Symbol::BDag(m) => write!(f, "B+{m}"),
        }
    }
}

/// Sorted multiset of symbols.
pub type Monomial = Vec<Symbol>;

#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Coefficient = GaussianRational> {
    terms: BTreeMap<Monomial, C>,
}

pub type QuadraticObservable = Polynomial<GaussianRational>;

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::monomial(C::one(), vec![s])
    }

    pub fn monomial(c: C, mut syms: Monomial) -> Self {
        syms.sort();
        let mut p = Self::zero();
        p.add_term(syms, c);
        p
    }

    fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono).or_insert_with(C::zero);
        *e = e.clone() + &c;
        if e.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("entry just zeroed");
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coefficient(&self, mono: &[Symbol]) -> C {
        let mut key = mono.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c);
        }
        out
    }

    pub fn scale_exact(&self, c: &GaussianRational) -> Self {
        self.scale(&C::from(c.clone()))
    }

    pub fn derivative(&self, s: Symbol) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            let count = m.iter().filter(|&&x| x == s).count();
            if count == 0 {
                continue;
            }
            let mut rest = m.clone();
            let pos = rest.iter().position(|&x| x == s).expect("counted above");
            rest.remove(pos);
            out.add_term(rest, v.clone() * &C::from(GaussianRational::from_int(count as i64)));
        }
        out
    }

    /// Replaces every symbol by the polynomial `f(symbol)` (or keeps it when `None`).
    pub fn substitute(&self, f: &impl Fn(Symbol) -> Option<Polynomial<C>>) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            let mut term = Self::constant(v.clone());
            for &s in m {
                let factor = f(s).unwrap_or_else(|| Self::symbol(s));
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Renames symbols one-to-one.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            let mut mono: Monomial = m.iter().map(|&s| f(s)).collect();
            mono.sort();
            out.add_term(mono, v.clone());
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::<D>::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(v));
        }
        out
    }

    /// Evaluates with every symbol replaced by a scalar.
    pub fn evaluate(&self, value: impl Fn(Symbol) -> C) -> C {
        self.terms.iter().fold(C::zero(), |acc, (m, v)| {
            let t = m.iter().fold(v.clone(), |t, &s| t * &value(s));
            acc + &t
        })
    }
}

impl Polynomial<GaussianRational> {
    pub fn from_exact(c: GaussianRational) -> Self {
        Self::constant(c)
    }

    pub fn lift<C: Coefficient>(&self) -> Polynomial<C> {
        self.map_coefficients(|c| C::from(c.clone()))
    }
}

/// Canonical Poisson bracket with `{q_μ, π_ν} = δ_{μν}` for `μ, ν = 1..4`.
/// Other symbols are treated as constants.
pub fn poisson_bracket<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let mut out = Polynomial::zero();
    for mu in 1..=4 {
        let a = &f.derivative(Symbol::Q(mu)) * &g.derivative(Symbol::P(mu));
        let b = &f.derivative(Symbol::P(mu)) * &g.derivative(Symbol::Q(mu));
        out = &(&out + &a) - &b;
    }
    out
}

impl<'a, C: Coefficient> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }
}

impl<'a, C: Coefficient> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), -v.clone());
        }
        out
    }
}

impl<'a, C: Coefficient> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort();
                out.add_term(m, va.clone() * vb);
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, v)| {
                let syms: Vec<String> = m.iter().map(ToString::to_string).collect();
                format!("({v:?}){}", if syms.is_empty() { String::new() } else { format!("*{}", syms.join("*")) })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<GaussianRational>;

    #[test]
    fn canonical_pairs() {
        let q1 = P::symbol(Symbol::Q(1));
        let p1 = P::symbol(Symbol::P(1));
        assert_eq!(poisson_bracket(&q1, &p1), P::constant(1.into()));
        assert!(poisson_bracket(&q1, &P::symbol(Symbol::Q(2))).is_zero());
        assert!(poisson_bracket(&P::symbol(Symbol::P(3)), &P::symbol(Symbol::P(4))).is_zero());
        assert_eq!(poisson_bracket(&p1, &q1), P::constant((-1).into()));
    }

    #[test]
    fn derivative_counts_multiplicity() {
        let q = P::symbol(Symbol::Q(2));
        let sq = &q * &q;
        assert_eq!(sq.derivative(Symbol::Q(2)), q.scale(&2.into()));
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = P::symbol(Symbol::Q(1));
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn substitution_expands() {
        // (B + B+)^2 = B^2 + 2 B B+ + B+^2
        let q = P::symbol(Symbol::Q(1));
        let sq = &q * &q;
        let sub = sq.substitute(&|s| match s {
            Symbol::Q(1) => Some(&P::symbol(Symbol::B(1)) + &P::symbol(Symbol::BDag(1))),
            _ => None,
        });
        assert_eq!(sub.coefficient(&[Symbol::B(1), Symbol::BDag(1)]), 2.into());
        assert_eq!(sub.coefficient(&[Symbol::B(1), Symbol::B(1)]), 1.into());
    }
}
