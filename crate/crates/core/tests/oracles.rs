//! Reference values recomputed by routes independent of the library's own checks.

use num_traits::{One, Zero};

use multispin::canonical::{
    generating_function, infinitesimal_transform, variation_from_generating_function, Direction, ModeContext,
};
use multispin::em::{stokes_expectations, PolarizationState};
use multispin::fock::{energy_operator, occupations, quantum_charges, FockPolyState, LadderOp, Scheme};
use multispin::canonical::ChargeName;
use multispin::poly::Symbol;
use multispin::projectors::{
    dyad_factorize, satisfies_component_relations, EnergySign, FourMomentum, ProjectorFamily, StateLabel,
};
use multispin::wave::{build_beta1, WaveMatrices};
use multispin::{ExactMatrix, GaussianRational as GR};

fn setup() -> (WaveMatrices, FourMomentum, ProjectorFamily) {
    let w = WaveMatrices::build();
    let p = FourMomentum::from_ints(4, [0, 0, 3]).unwrap();
    let fam = ProjectorFamily::build(&w, &p).unwrap();
    (w, p, fam)
}

/// Row-by-column product written out, not via the matrix kernel.
fn naive_apply(m: &ExactMatrix, v: &[GR]) -> Vec<GR> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(GR::zero(), |acc, j| acc + m.get(i, j).clone() * v[j].clone()))
        .collect()
}

#[test]
fn rank_of_positive_energy_projector_is_four() {
    let (_, _, fam) = setup();
    assert_eq!(fam.m_plus.rank(), 4);
    // idempotent: rank equals trace
    assert_eq!(fam.m_plus.trace(), GR::from_int(4));
}

#[test]
fn beta4_squared_is_a_diagonal_zero_one_matrix() {
    let b = build_beta1(4);
    let sq = &b * &b;
    for i in 0..10 {
        for j in 0..10 {
            let e = sq.get(i, j);
            if i == j {
                assert!(e.is_zero() || e.is_one());
            } else {
                assert!(e.is_zero());
            }
        }
    }
}

#[test]
fn eta_squares_to_identity() {
    let w = WaveMatrices::build();
    let b = build_beta1(4);
    let p = &b * &b;
    let eta1 = &p.scale(&GR::from_int(2)) - &ExactMatrix::identity(10);
    assert_eq!(&eta1 * &eta1, ExactMatrix::identity(10));
    assert_eq!(&w.eta * &w.eta, ExactMatrix::identity(11));
}

#[test]
fn delta_family_is_idempotent_with_unit_trace() {
    let (_, _, fam) = setup();
    for l in StateLabel::family(EnergySign::Positive) {
        let d = fam.delta(l).unwrap();
        assert_eq!(&(d * d), d, "{l}");
        assert_eq!(d.trace(), GR::one(), "{l}");
        assert_eq!(d.rank(), 1, "{l}");
    }
}

#[test]
fn every_column_of_a_pure_projector_solves_the_wave_equation() {
    let (_, p, fam) = setup();
    let label = StateLabel::new(EnergySign::Positive, 1, 1).unwrap();
    let d = fam.delta(label).unwrap();
    let m = GR::from_int(4);
    let mut nonzero = 0;
    for j in 0..11 {
        let c: Vec<GR> = (0..11).map(|i| d.get(i, j).clone()).collect();
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        nonzero += 1;
        let lhs: Vec<GR> = naive_apply(&fam.p_slash, &c).into_iter().map(|x| -(GR::i() * x)).collect();
        let rhs: Vec<GR> = c.iter().map(|x| m.clone() * x.clone()).collect();
        assert_eq!(lhs, rhs, "column {j}");
        assert!(satisfies_component_relations(&ExactMatrix::column(c), &p, EnergySign::Positive));
    }
    assert!(nonzero > 0);
}

#[test]
fn spin_zero_dyads_have_no_bivector_part() {
    let (w, _, fam) = setup();
    for e in EnergySign::BOTH {
        let l = StateLabel::new(e, 0, 0).unwrap();
        let d = dyad_factorize(fam.delta(l).unwrap(), &w.eta, Some(l)).unwrap();
        for k in 5..11 {
            assert!(d.psi.get(k, 0).is_zero(), "{l} slot {k}");
        }
    }
}

#[test]
fn helicity_multiplicities_on_energy_eigenspaces() {
    let (_, _, fam) = setup();
    let sp = fam.sigma_p.as_ref().unwrap();
    for e in EnergySign::BOTH {
        let basis = fam.energy_projector(e).column_space_basis();
        assert_eq!(basis.len(), 4);
        let b = ExactMatrix::from_fn(11, 4, |i, j| basis[j].get(i, 0).clone());
        let nullity = |lambda: i64| {
            let shifted = sp - &ExactMatrix::identity(11).scale(&GR::from_int(lambda));
            4 - (&shifted * &b).rank()
        };
        assert_eq!((nullity(1), nullity(-1), nullity(0)), (1, 1, 2));
    }
}

#[test]
fn frozen_norm_sign_distribution() {
    let w = WaveMatrices::build();
    for (m, p) in [(4, [0, 0, 3]), (12, [3, 4, 0]), (24, [2, 3, 6])] {
        let p = FourMomentum::from_ints(m, p).unwrap();
        let fam = ProjectorFamily::build(&w, &p).unwrap();
        for e in EnergySign::BOTH {
            let signs: Vec<i8> = StateLabel::family(e)
                .iter()
                .map(|&l| dyad_factorize(fam.delta(l).unwrap(), &w.eta, Some(l)).unwrap().norm_sign)
                .collect();
            // (s, s_p) = (1,+1), (1,−1), (1,0), (0,0)
            assert_eq!(signs, vec![1, 1, 1, -1]);
        }
    }
}

fn sample_point() -> ([GR; 4], [GR; 4]) {
    ([3, -1, 2, 5].map(GR::from_int), [7, 4, -6, 1].map(GR::from_int))
}

/// Evaluates a jet-derived first-order variation at the sample point.
fn jet_variation(d: Direction, ctx: &ModeContext) -> ([GR; 4], [GR; 4]) {
    let (q, p) = sample_point();
    let f = generating_function(&d.jet_params(), ctx);
    let (dq, dp) = variation_from_generating_function(&f, &d.label());
    let at = |s: Symbol| match s {
        Symbol::Q(m) => q[m as usize - 1].clone(),
        Symbol::P(m) => p[m as usize - 1].clone(),
        other => panic!("unexpected symbol {other}"),
    };
    (dq.map(|x| x.evaluate(at)), dp.map(|x| x.evaluate(at)))
}

#[test]
fn rotation_jet_matches_hand_formula() {
    let ctx = ModeContext::from_int(5).unwrap();
    let (q, p) = sample_point();
    let two = GR::from_int(2);
    let z = GR::zero();
    let want_q = [two.clone() * q[1].clone(), -(two.clone() * q[0].clone()), z.clone(), z.clone()];
    let want_p = [two.clone() * p[1].clone(), -(two * p[0].clone()), z.clone(), z];
    let d = Direction::Antisym(1, 2);
    assert_eq!(jet_variation(d, &ctx), (want_q.clone(), want_p.clone()));
    assert_eq!(infinitesimal_transform(&q, &p, &d.params(), &ctx), (want_q, want_p));
}

#[test]
fn phase_jet_matches_hand_formula() {
    let ctx = ModeContext::from_int(5).unwrap();
    let (q, p) = sample_point();
    let k0 = GR::from_int(5);
    let want_q = p.clone().map(|x| x / k0.clone());
    let want_p = q.clone().map(|x| -(k0.clone() * x));
    assert_eq!(jet_variation(Direction::Phase, &ctx), (want_q.clone(), want_p.clone()));
    assert_eq!(infinitesimal_transform(&q, &p, &Direction::Phase.params(), &ctx), (want_q, want_p));
}

/// `(b_1⁺)^a … (b_0⁺)^n |0⟩` built by repeated creation.
fn excited(occ: [u32; 4], n: u32, scheme: Scheme) -> FockPolyState {
    let mut s = FockPolyState::vacuum(n, scheme);
    for (k, &count) in occ.iter().enumerate() {
        let mode = k as u8 + 1;
        let creator = if mode == 4 && scheme == Scheme::Vacuum1 { LadderOp::b(4) } else { LadderOp::b_dag(mode) };
        for _ in 0..count {
            s = s.apply_ladder(creator).unwrap();
        }
    }
    s
}

#[test]
fn energy_eigenvalues_on_created_states() {
    let ctx = ModeContext::from_int(5).unwrap();
    let n = 5;
    for scheme in Scheme::BOTH {
        let (p0, constant) = energy_operator(&ctx, scheme);
        for occ in occupations(n) {
            let s = excited(occ, n, scheme);
            let m = (occ[0] + occ[1] + occ[2]) as i64;
            let t = occ[3] as i64;
            let want = match scheme {
                Scheme::Vacuum2 => 5 * (m + t),
                Scheme::Vacuum1 => 5 * (m - t),
            };
            assert_eq!(p0.apply(&s).unwrap(), s.scale(&GR::from_int(want)), "{scheme} {occ:?}");
        }
        let vacuum_constant = match scheme {
            Scheme::Vacuum2 => 0,
            Scheme::Vacuum1 => -5,
        };
        assert_eq!(constant, GR::from_int(vacuum_constant));
    }
}

#[test]
fn scheme_two_norms_alternate_with_time_quanta() {
    for occ in occupations(4) {
        let s = excited(occ, 4, Scheme::Vacuum2);
        let fact = |k: u32| (1..=k as i64).product::<i64>();
        let mag: i64 = occ.iter().map(|&k| fact(k)).product();
        let sign = if occ[3] % 2 == 0 { 1 } else { -1 };
        assert_eq!(s.norm_sqr().unwrap(), GR::from_int(sign * mag), "{occ:?}");
    }
}

#[test]
fn number_operator_counts_quanta() {
    let ctx = ModeContext::from_int(5).unwrap();
    let j = quantum_charges(&ctx).into_iter().find(|(c, _)| *c == ChargeName::Number).unwrap().1;
    for occ in occupations(4) {
        let s = excited(occ, 4, Scheme::Vacuum2);
        let total: u32 = occ.iter().sum();
        assert_eq!(j.apply(&s).unwrap(), s.scale(&GR::from_int(total as i64)));
    }
}

#[test]
fn stokes_closed_form_for_single_photon_superpositions() {
    let coeffs = [
        (GR::one(), GR::zero()),
        (GR::zero(), GR::one()),
        (GR::one(), GR::i()),
        (GR::from_int(3), GR::from_int(1) + GR::i() * GR::from_int(2)),
        (GR::from_ratio(1, 2), GR::from_int(-2)),
    ];
    for (c1, c2) in coeffs {
        let st = PolarizationState::from_occupations(&[(1, 0, c1.clone()), (0, 1, c2.clone())], 4).unwrap();
        let n1 = c1.conj() * c1.clone();
        let n2 = c2.conj() * c2.clone();
        let norm = n1.clone() + n2.clone();
        let z = c1.conj() * c2.clone();
        let half = GR::from_ratio(1, 2);
        let want = [
            half.clone(),
            GR::from_rational(z.re.clone()) / norm.clone(),
            GR::from_rational(z.im.clone()) / norm.clone(),
            half * (n1 - n2) / norm,
        ];
        assert_eq!(stokes_expectations(&st).unwrap(), want);
    }
}
