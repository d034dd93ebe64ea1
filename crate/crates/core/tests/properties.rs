use num_traits::{One, Zero};
use proptest::prelude::*;

use multispin::canonical::{
    generating_function, infinitesimal_transform, variation_from_generating_function, Direction, ModeContext,
};
use multispin::em::{conjugate, em_hamiltonian, U2Element};
use multispin::epsilon::{epsilon, BasisIndex, SpaceView};
use multispin::fock::{occupations, FockOperator, FockPolyState, LadderOp, Scheme, METRIC};
use multispin::poly::{poisson_bracket, Polynomial, Symbol};
use multispin::projectors::{EnergySign, FourMomentum, ProjectorFamily, StateLabel};
use multispin::scalar::{rational, Rational};
use multispin::wave::WaveMatrices;
use multispin::{ExactMatrix, GaussianRational as GR};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn scalar() -> impl Strategy<Value = GR> {
    (small_rational(), small_rational()).prop_map(|(a, b)| GR::new(a, b))
}

/// Sparse-ish matrices so that rank deficiency is common.
fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop_oneof![2 => Just(GR::zero()), 1 => scalar()], rows * cols)
        .prop_map(move |v| ExactMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn canonical_symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![(1u8..=4).prop_map(Symbol::Q), (1u8..=4).prop_map(Symbol::P)]
}

/// Polynomials of degree ≤ 2 in q, π.
fn quadratic() -> impl Strategy<Value = Polynomial<GR>> {
    prop::collection::vec((scalar(), prop::collection::vec(canonical_symbol(), 0..=2)), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Polynomial::zero(), |acc, (c, m)| &acc + &Polynomial::monomial(c, m))
    })
}

/// `(mass, |p|, E)` from a Pythagorean triple and a rational unit direction.
fn pythagorean_momentum() -> impl Strategy<Value = FourMomentum> {
    (2i64..6, 1i64..5, -3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("u > v and nonzero direction", |(u, v, a, b, c, d)| u > v && (a, b, c, d) != (&0, &0, &0, &0))
        .prop_map(|(u, v, a, b, c, d)| {
            let mass = rational(u * u - v * v, 1);
            let norm = 2 * u * v;
            let q = a * a + b * b + c * c + d * d;
            let dir = [a * a + b * b - c * c - d * d, 2 * (a * d + b * c), 2 * (b * d - a * c)];
            let p = dir.map(|x| rational(norm * x, q));
            FourMomentum::on_shell(mass, p).expect("Pythagorean by construction")
        })
}

fn state(n: u32, scheme: Scheme) -> impl Strategy<Value = FockPolyState> {
    let occ = occupations(n);
    prop::collection::vec((0..occ.len(), scalar()), 1..4).prop_map(move |terms| {
        FockPolyState::from_terms(terms.into_iter().map(|(k, c)| (occ[k], c)), n, scheme).expect("within cutoff")
    })
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::Vacuum1), Just(Scheme::Vacuum2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), GR::zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
    }

    #[test]
    fn rank_of_product_is_bounded(a in matrix(3, 4), b in matrix(4, 5)) {
        let ab = &a * &b;
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        prop_assert_eq!(ab.adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.rank(), a.adjoint().rank());
    }

    #[test]
    fn solve_inverts_nonsingular_systems(a in matrix(3, 3), x in matrix(3, 1)) {
        let b = &a * &x;
        if a.rank() == 3 {
            prop_assert_eq!(a.solve(&b).unwrap(), x);
        } else {
            prop_assert!(a.solve(&b).is_err());
        }
    }

    #[test]
    fn epsilon_units_multiply_by_the_product_rule(a in 0usize..11, b in 0usize..11, c in 0usize..11, d in 0usize..11) {
        let idx = BasisIndex::all();
        let s = SpaceView::Dim11;
        let lhs = &epsilon(idx[a], idx[b], s).unwrap() * &epsilon(idx[c], idx[d], s).unwrap();
        let rhs = if b == c { epsilon(idx[a], idx[d], s).unwrap() } else { ExactMatrix::zeros(11, 11) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(f in quadratic(), g in quadratic(), h in quadratic()) {
        prop_assert!((&poisson_bracket(&f, &g) + &poisson_bracket(&g, &f)).is_zero());
        let j = &(&poisson_bracket(&f, &poisson_bracket(&g, &h)) + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
            + &poisson_bracket(&h, &poisson_bracket(&f, &g));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn jet_variation_matches_direct_transform(
        k in 0usize..16,
        k0 in 1i64..8,
        q in prop::array::uniform4(-5i64..=5),
        p in prop::array::uniform4(-5i64..=5),
    ) {
        let d = Direction::all()[k];
        let ctx = ModeContext::from_int(k0).unwrap();
        let (qv, pv) = (q.map(GR::from_int), p.map(GR::from_int));
        let f = generating_function(&d.jet_params(), &ctx);
        let (dq, dp) = variation_from_generating_function(&f, &d.label());
        let at = |s: Symbol| match s {
            Symbol::Q(m) => qv[m as usize - 1].clone(),
            Symbol::P(m) => pv[m as usize - 1].clone(),
            _ => GR::zero(),
        };
        let jet = (dq.map(|x| x.evaluate(at)), dp.map(|x| x.evaluate(at)));
        prop_assert_eq!(jet, infinitesimal_transform(&qv, &pv, &d.params(), &ctx));
    }

    #[test]
    fn ladder_commutators_act_as_metric(s in state(3, Scheme::Vacuum2), sc in scheme(), a in 1u8..=4, b in 1u8..=4) {
        let s = s.with_truncation(5).unwrap();
        let s = FockPolyState::from_terms(s.terms().map(|(o, c)| (*o, c.clone())), 5, sc).unwrap();
        let c = FockOperator::word(GR::one(), vec![LadderOp::b(a)])
            .commutator(&FockOperator::word(GR::one(), vec![LadderOp::b_dag(b)]));
        let want = if a == b { s.scale(&GR::from_int(METRIC[a as usize - 1])) } else { s.scale(&GR::zero()) };
        prop_assert_eq!(c.apply(&s).unwrap(), want);
    }

    #[test]
    fn inner_product_is_hermitian(x in state(3, Scheme::Vacuum2), y in state(3, Scheme::Vacuum2)) {
        prop_assert_eq!(x.inner_product(&y).unwrap(), y.inner_product(&x).unwrap().conj());
    }

    #[test]
    fn u2_elements_preserve_the_photon_hamiltonian(
        u in 1i64..5, v in 0i64..4, a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3, ph in 0usize..4,
    ) {
        prop_assume!(u > v && (a, b, c, d) != (0, 0, 0, 0));
        let r = u * u + v * v;
        let q = a * a + b * b + c * c + d * d;
        let n = [a * a + b * b - c * c - d * d, 2 * (a * d + b * c), 2 * (b * d - a * c)].map(|x| rational(x, q));
        let phase = [GR::one(), GR::i(), -GR::one(), -GR::i()][ph].clone();
        let g = U2Element::new(phase, n, rational(u * u - v * v, r), rational(2 * u * v, r)).unwrap();
        let m = g.matrix();
        prop_assert!((&m.adjoint() * &m).is_identity());
        let h = em_hamiltonian(&rational(3, 1));
        prop_assert!(conjugate(&h, &m).equals(&h, Scheme::Vacuum2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn projectors_at_random_pythagorean_momenta(p in pythagorean_momentum()) {
        let w = WaveMatrices::build();
        let fam = ProjectorFamily::build(&w, &p).unwrap();
        for e in EnergySign::BOTH {
            let m = fam.energy_projector(e);
            prop_assert_eq!(&(m * m), m);
            prop_assert_eq!(m.rank(), 4);
            let sum = StateLabel::family(e).iter().fold(ExactMatrix::zeros(11, 11), |acc, &l| &acc + fam.delta(l).unwrap());
            prop_assert_eq!(&sum, m);
        }
        prop_assert!((&fam.m_plus * &fam.m_minus).is_zero());
    }
}
