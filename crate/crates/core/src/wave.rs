//! First-order wave-equation matrices on the 11-component space.
//!
//! * `α_ν = ε^{μ,[μν]} + ε^{[μν],μ} + ε^{ν,0} + ε^{0,ν}` (11×11)
//! * `β⁽¹⁾_ν = ε^{μ,[μν]} + ε^{[μν],μ}` on the vector+bivector view (10×10)
//! * `β⁽⁰⁾_ν = ε^{ν,0} + ε^{0,ν}` on the scalar+vector view (5×5)
//! * `η = −ε^{0,0} + 2β⁽¹⁾₄² − I₁₀`
//! * `J_{μν} = β⁽¹⁾_μ β⁽¹⁾_ν − β⁽¹⁾_ν β⁽¹⁾_μ`, embedded with a zero scalar row/column

use num_traits::Zero;

use crate::epsilon::{identity_of, signed_epsilon, Label, SpaceView};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

fn delta(a: u8, b: u8) -> GaussianRational {
    GaussianRational::from_int(i64::from(a == b))
}

fn vector_bivector_links(nu: u8, space: SpaceView) -> ExactMatrix {
    let n = space.dim();
    let mut m = ExactMatrix::zeros(n, n);
    for mu in 1..=4 {
        m = &m + &signed_epsilon(Label::Vector(mu), Label::Pair(mu, nu), space).expect("in view");
        m = &m + &signed_epsilon(Label::Pair(mu, nu), Label::Vector(mu), space).expect("in view");
    }
    m
}

fn scalar_vector_links(nu: u8, space: SpaceView) -> ExactMatrix {
    &signed_epsilon(Label::Vector(nu), Label::Scalar, space).expect("in view")
        + &signed_epsilon(Label::Scalar, Label::Vector(nu), space).expect("in view")
}

fn check_index(nu: u8) {
    assert!((1..=4).contains(&nu), "vector index must be in 1..=4, got {nu}");
}

/// `α_ν` assembled directly from matrix units on the full space.
pub fn build_alpha(nu: u8) -> ExactMatrix {
    check_index(nu);
    &vector_bivector_links(nu, SpaceView::Dim11) + &scalar_vector_links(nu, SpaceView::Dim11)
}

/// 10×10 spin-1 matrix `β⁽¹⁾_ν`.
pub fn build_beta1(nu: u8) -> ExactMatrix {
    check_index(nu);
    vector_bivector_links(nu, SpaceView::Dim10)
}

/// 5×5 spin-0 matrix `β⁽⁰⁾_ν`.
pub fn build_beta0(nu: u8) -> ExactMatrix {
    check_index(nu);
    scalar_vector_links(nu, SpaceView::Dim5)
}

/// `η⁽¹⁾ = 2β⁽¹⁾₄² − I₁₀` on the 10-dimensional view.
pub fn build_eta1() -> ExactMatrix {
    let b4 = build_beta1(4);
    let two = GaussianRational::from_int(2);
    &(&b4 * &b4).scale(&two) - &identity_of(SpaceView::Dim10).expect("identity")
}

/// The 11×11 Hermitianizing matrix.
pub fn build_eta() -> ExactMatrix {
    let e00 = signed_epsilon(Label::Scalar, Label::Scalar, SpaceView::Dim11).expect("in view");
    &SpaceView::Dim10.embed(&build_eta1()) - &e00
}

/// `J_{μν}` on the 10-dimensional view.
pub fn build_lorentz10(mu: u8, nu: u8) -> Result<ExactMatrix> {
    check_index(mu);
    check_index(nu);
    if mu == nu {
        return Err(Error::DegenerateGenerator(mu));
    }
    let (bm, bn) = (build_beta1(mu), build_beta1(nu));
    Ok(&(&bm * &bn) - &(&bn * &bm))
}

/// `J_{μν}` embedded in the 11-space.
pub fn build_lorentz(mu: u8, nu: u8) -> Result<ExactMatrix> {
    Ok(SpaceView::Dim10.embed(&build_lorentz10(mu, nu)?))
}

/// The full set of wave-equation matrices, indexed from 1.
#[derive(Clone, Debug)]
pub struct WaveMatrices {
    pub alpha: [ExactMatrix; 4],
    pub beta1: [ExactMatrix; 4],
    pub beta0: [ExactMatrix; 4],
    pub eta: ExactMatrix,
    pub eta1: ExactMatrix,
    /// `J_{μν}` for `μ<ν` in the order (12),(13),(14),(23),(24),(34).
    pub lorentz: [ExactMatrix; 6],
}

impl WaveMatrices {
    pub fn build() -> Self {
        let alpha = [1, 2, 3, 4].map(build_alpha);
        let beta1 = [1, 2, 3, 4].map(build_beta1);
        let beta0 = [1, 2, 3, 4].map(build_beta0);
        let lorentz = crate::epsilon::BIVECTOR_PAIRS
            .map(|(a, b)| build_lorentz(a, b).expect("distinct indices"));
        Self {
            alpha,
            beta1,
            beta0,
            eta: build_eta(),
            eta1: build_eta1(),
            lorentz,
        }
    }

    pub fn alpha(&self, nu: u8) -> &ExactMatrix {
        &self.alpha[usize::from(nu) - 1]
    }

    pub fn beta1(&self, nu: u8) -> &ExactMatrix {
        &self.beta1[usize::from(nu) - 1]
    }

    pub fn beta0(&self, nu: u8) -> &ExactMatrix {
        &self.beta0[usize::from(nu) - 1]
    }

    /// `J_{μν}` for any ordered pair; `J_{μμ} = 0`, `J_{νμ} = −J_{μν}`.
    pub fn j(&self, mu: u8, nu: u8) -> ExactMatrix {
        match crate::epsilon::BasisIndex::bivector(mu, nu) {
            None => ExactMatrix::zeros(11, 11),
            Some((crate::epsilon::BasisIndex::Bivector(a, b), sign)) => {
                let k = crate::epsilon::BIVECTOR_PAIRS
                    .iter()
                    .position(|&p| p == (a, b))
                    .expect("stored pair");
                if sign == 1 {
                    self.lorentz[k].clone()
                } else {
                    -&self.lorentz[k]
                }
            }
            Some(_) => unreachable!("bivector lookup returns a bivector"),
        }
    }

    /// `embed(β⁽¹⁾_ν) + embed(β⁽⁰⁾_ν)`.
    pub fn alpha_from_blocks(&self, nu: u8) -> ExactMatrix {
        &SpaceView::Dim10.embed(self.beta1(nu)) + &SpaceView::Dim5.embed(self.beta0(nu))
    }
}

/// Both sides of `β_μβ_νβ_α + β_αβ_νβ_μ = δ_{μν}β_α + δ_{αν}β_μ`.
pub fn pdk_sides(b: &[ExactMatrix; 4], mu: u8, nu: u8, al: u8) -> (ExactMatrix, ExactMatrix) {
    let (m, n, a) = (
        &b[usize::from(mu) - 1],
        &b[usize::from(nu) - 1],
        &b[usize::from(al) - 1],
    );
    let lhs = &(&(m * n) * a) + &(&(a * n) * m);
    let rhs = &a.scale(&delta(mu, nu)) + &m.scale(&delta(al, nu));
    (lhs, rhs)
}

/// Both sides of the six-term symmetrized cubic relation
/// `Σ_perm α α α = 2(δ_{μν}α_α + δ_{αν}α_μ + δ_{μα}α_ν)`.
pub fn cubic_sides(a: &[ExactMatrix; 4], mu: u8, nu: u8, al: u8) -> (ExactMatrix, ExactMatrix) {
    let g = |k: u8| &a[usize::from(k) - 1];
    let perms = [
        (mu, nu, al),
        (al, nu, mu),
        (mu, al, nu),
        (nu, al, mu),
        (nu, mu, al),
        (al, mu, nu),
    ];
    let n = g(mu).rows();
    let mut lhs = ExactMatrix::zeros(n, n);
    for (x, y, z) in perms {
        lhs = &lhs + &(&(g(x) * g(y)) * g(z));
    }
    let two = GaussianRational::from_int(2);
    let rhs = (&(&g(al).scale(&delta(mu, nu)) + &g(mu).scale(&delta(al, nu)))
        + &g(nu).scale(&delta(mu, al)))
    .scale(&two);
    (lhs, rhs)
}

/// Right-hand side of `[J_{ρσ}, J_{μν}] = δ_{σμ}J_{ρν} + δ_{ρν}J_{σμ} − δ_{ρμ}J_{σν} − δ_{σν}J_{ρμ}`.
pub fn lorentz_closure_rhs(w: &WaveMatrices, rho: u8, sigma: u8, mu: u8, nu: u8) -> ExactMatrix {
    let terms = [
        (delta(sigma, mu), w.j(rho, nu)),
        (delta(rho, nu), w.j(sigma, mu)),
        (-delta(rho, mu), w.j(sigma, nu)),
        (-delta(sigma, nu), w.j(rho, mu)),
    ];
    terms
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .fold(ExactMatrix::zeros(11, 11), |acc, (c, m)| &acc + &m.scale(c))
}

/// Right-hand side of `[α_λ, J_{μν}] = δ_{λμ}α_ν − δ_{λν}α_μ`.
pub fn alpha_lorentz_rhs(w: &WaveMatrices, lambda: u8, mu: u8, nu: u8) -> ExactMatrix {
    &w.alpha(nu).scale(&delta(lambda, mu)) - &w.alpha(mu).scale(&delta(lambda, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_commutator;
    use num_traits::One;

    #[test]
    fn alpha_scalar_vector_entries_and_trace() {
        for nu in 1..=4u8 {
            let a = build_alpha(nu);
            assert!(a.get(0, usize::from(nu)).is_one());
            assert!(a.get(usize::from(nu), 0).is_one());
            assert!(a.trace().is_zero());
            assert_eq!(a, a.transpose());
        }
    }

    #[test]
    fn alpha_matches_block_sum() {
        let w = WaveMatrices::build();
        for nu in 1..=4 {
            assert_eq!(*w.alpha(nu), w.alpha_from_blocks(nu));
        }
    }

    #[test]
    fn pdk_examples() {
        let w = WaveMatrices::build();
        let b1 = &w.beta1;
        let prod = &(&b1[0] * &b1[1]) * &b1[0];
        assert!(prod.is_zero());
        let (l, r) = pdk_sides(&w.beta0, 1, 1, 1);
        assert_eq!(l, r);
        let b4sq = &w.beta1[3] * &w.beta1[3];
        assert!(b4sq.is_diagonal());
        for i in 0..10 {
            let d = b4sq.get(i, i);
            assert!(d.is_zero() || d.is_one());
        }
    }

    #[test]
    fn eta_examples() {
        let w = WaveMatrices::build();
        let eta = &w.eta;
        assert_eq!(eta * w.alpha(1), -&(w.alpha(1) * eta));
        assert_eq!(eta * w.alpha(4), w.alpha(4) * eta);
        assert!((eta * eta).is_identity());
        assert_eq!(*eta, eta.adjoint());
    }

    #[test]
    fn lorentz_examples() {
        let w = WaveMatrices::build();
        for (mu, nu) in crate::epsilon::BIVECTOR_PAIRS {
            let j = w.j(mu, nu);
            for k in 0..11 {
                assert!(j.get(0, k).is_zero() && j.get(k, 0).is_zero());
            }
            assert_eq!(w.j(nu, mu), -&j);
        }
        let c = mat_commutator(w.alpha(1), &w.j(1, 2)).unwrap();
        assert_eq!(c, *w.alpha(2));
        assert!(mat_commutator(&w.j(1, 2), &w.j(1, 2)).unwrap().is_zero());
        let c = mat_commutator(&w.j(1, 2), &w.j(1, 3)).unwrap();
        assert_eq!(c, -&w.j(2, 3));
        assert_eq!(build_lorentz(2, 2), Err(Error::DegenerateGenerator(2)));
    }

    #[test]
    fn alpha_fails_pdk() {
        let w = WaveMatrices::build();
        let failing = (1..=4u8)
            .flat_map(|m| (1..=4u8).flat_map(move |n| (1..=4u8).map(move |a| (m, n, a))))
            .filter(|&(m, n, a)| {
                let (l, r) = pdk_sides(&w.alpha, m, n, a);
                l != r
            })
            .count();
        assert!(failing > 0);
    }
}
