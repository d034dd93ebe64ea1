//! First-order jets: a value plus exact first derivatives with respect to a
//! set of named infinitesimal parameters. Second-order terms are dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct JetScalar {
    pub value: GaussianRational,
    pub gradient: BTreeMap<String, GaussianRational>,
}

impl JetScalar {
    pub fn constant(value: GaussianRational) -> Self {
        Self {
            value,
            gradient: BTreeMap::new(),
        }
    }

    /// The infinitesimal parameter `label` itself: value 0, unit gradient.
    pub fn variable(label: impl Into<String>) -> Self {
        Self::scaled_variable(label, GaussianRational::one())
    }

    /// `coeff · label` at first order.
    pub fn scaled_variable(label: impl Into<String>, coeff: GaussianRational) -> Self {
        let mut gradient = BTreeMap::new();
        if !coeff.is_zero() {
            gradient.insert(label.into(), coeff);
        }
        Self {
            value: GaussianRational::zero(),
            gradient,
        }
    }

    /// Gradient coefficient for `label` (zero if absent).
    pub fn partial(&self, label: &str) -> GaussianRational {
        self.gradient.get(label).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut gradient = BTreeMap::new();
        for (k, v) in &self.gradient {
            let p = v * s;
            if !p.is_zero() {
                gradient.insert(k.clone(), p);
            }
        }
        Self {
            value: &self.value * s,
            gradient,
        }
    }

    fn merge(
        a: &BTreeMap<String, GaussianRational>,
        b: &BTreeMap<String, GaussianRational>,
        sign: i64,
    ) -> BTreeMap<String, GaussianRational> {
        let mut out = a.clone();
        let s = GaussianRational::from_int(sign);
        for (k, v) in b {
            let e = out.entry(k.clone()).or_default();
            *e += &(v * &s);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl From<GaussianRational> for JetScalar {
    fn from(v: GaussianRational) -> Self {
        Self::constant(v)
    }
}

impl Zero for JetScalar {
    fn zero() -> Self {
        Self::constant(GaussianRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.gradient.is_empty()
    }
}

impl One for JetScalar {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl<'a> Add<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;
    fn add(self, rhs: &JetScalar) -> JetScalar {
        JetScalar {
            value: &self.value + &rhs.value,
            gradient: JetScalar::merge(&self.gradient, &rhs.gradient, 1),
        }
    }
}

impl<'a> Sub<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;
    fn sub(self, rhs: &JetScalar) -> JetScalar {
        JetScalar {
            value: &self.value - &rhs.value,
            gradient: JetScalar::merge(&self.gradient, &rhs.gradient, -1),
        }
    }
}

impl<'a> Mul<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;
    fn mul(self, rhs: &JetScalar) -> JetScalar {
        // (a + a'ε)(b + b'ε) = ab + (a b' + b a')ε
        let left = rhs.scale(&self.value).gradient;
        let right = self.scale(&rhs.value).gradient;
        JetScalar {
            value: &self.value * &rhs.value,
            gradient: JetScalar::merge(&left, &right, 1),
        }
    }
}

impl Neg for &JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl Neg for JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        -&self
    }
}

impl Add for JetScalar {
    type Output = JetScalar;
    fn add(self, rhs: JetScalar) -> JetScalar {
        &self + &rhs
    }
}

impl Sub for JetScalar {
    type Output = JetScalar;
    fn sub(self, rhs: JetScalar) -> JetScalar {
        &self - &rhs
    }
}

impl Mul for JetScalar {
    type Output = JetScalar;
    fn mul(self, rhs: JetScalar) -> JetScalar {
        &self * &rhs
    }
}

impl fmt::Debug for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        for (k, v) in &self.gradient {
            write!(f, " + ({v})·d{k}")?;
        }
        Ok(())
    }
}
