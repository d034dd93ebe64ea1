//! Acceptance criteria 1-10, one printed line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use multispin::canonical::{ChargeName, Direction};
use multispin::em::representable_elements;
use multispin::epsilon::{check_product_rule, SpaceView, BIVECTOR_PAIRS};
use multispin::matrix::{mat_anticommutator, mat_commutator};
use multispin::projectors::FourMomentum;
use multispin::verify::{self, Record, SchemeChoice, Status, Suite, SuiteConfig};
use multispin::wave::{alpha_lorentz_rhs, cubic_sides, lorentz_closure_rhs, pdk_sides, WaveMatrices};
use multispin::ExactMatrix;

type Outcome = Result<(), String>;

fn judge(n: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(()), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
        (o, _) => o,
    };
    let limit = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
    match &outcome {
        Ok(()) => println!("criterion {n:>2} PASS  {name} ({} ms{limit})", took.as_millis()),
        Err(e) => println!("criterion {n:>2} FAIL  {name} ({} ms{limit}): {e}", took.as_millis()),
    }
    outcome.is_ok()
}

fn triples() -> Vec<(u8, u8, u8)> {
    let mut v = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            for a in 1..=4 {
                v.push((m, n, a));
            }
        }
    }
    v
}

fn count_pdk(b: &[ExactMatrix; 4]) -> usize {
    triples()
        .into_iter()
        .filter(|&(m, n, a)| {
            let (l, r) = pdk_sides(b, m, n, a);
            l == r
        })
        .count()
}

/// Every listed id is present and passed.
fn require(records: &[Record], ids: &[&str]) -> Outcome {
    for id in ids {
        match records.iter().find(|r| r.id == *id) {
            None => return Err(format!("{id} missing")),
            Some(r) if r.status != Status::Pass => return Err(format!("{id}: {:?} {:?}", r.status, r.witness)),
            Some(_) => {}
        }
    }
    if let Some(r) = records.iter().find(|r| r.status != Status::Pass) {
        return Err(format!("{}: {:?} {:?}", r.id, r.status, r.witness));
    }
    Ok(())
}

fn suite_records(suite: Suite, truncation: u32) -> Result<Vec<Record>, String> {
    let mut cfg = SuiteConfig::new(vec![suite], "4", "0,0,3", "5", truncation, SchemeChoice::Both)
        .map_err(|e| e.to_string())?;
    cfg.timing = false;
    verify::run(&cfg).map(|r| r.records).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    match check_product_rule(SpaceView::Dim11) {
        Ok(n) if n == 121 * 121 => Ok(()),
        Ok(n) => Err(format!("{n} products checked")),
        Err(q) => Err(format!("fails at {q:?}")),
    }
}

fn criterion_2() -> Outcome {
    let w = WaveMatrices::build();
    let (b1, b0) = (count_pdk(&w.beta1), count_pdk(&w.beta0));
    let alpha = count_pdk(&w.alpha);
    if b1 != 64 || b0 != 64 {
        return Err(format!("beta1 {b1}/64, beta0 {b0}/64"));
    }
    if alpha == 64 {
        return Err("alpha satisfies every triple".into());
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let w = WaveMatrices::build();
    let ok = triples()
        .into_iter()
        .filter(|&(m, n, a)| {
            let (l, r) = cubic_sides(&w.alpha, m, n, a);
            l == r
        })
        .count();
    if ok == 64 {
        Ok(())
    } else {
        Err(format!("{ok}/64"))
    }
}

fn criterion_4() -> Outcome {
    let w = WaveMatrices::build();
    let mut pairs = 0;
    for (i, &(r, s)) in BIVECTOR_PAIRS.iter().enumerate() {
        for &(m, n) in &BIVECTOR_PAIRS[i + 1..] {
            if mat_commutator(&w.j(r, s), &w.j(m, n)).unwrap() != lorentz_closure_rhs(&w, r, s, m, n) {
                return Err(format!("[J{r}{s}, J{m}{n}]"));
            }
            pairs += 1;
        }
    }
    let mut combos = 0;
    for l in 1..=4 {
        for &(m, n) in &BIVECTOR_PAIRS {
            if mat_commutator(w.alpha(l), &w.j(m, n)).unwrap() != alpha_lorentz_rhs(&w, l, m, n) {
                return Err(format!("[α{l}, J{m}{n}]"));
            }
            combos += 1;
        }
    }
    if (pairs, combos) == (15, 24) {
        Ok(())
    } else {
        Err(format!("{pairs} pairs, {combos} combinations"))
    }
}

fn criterion_5() -> Outcome {
    let w = WaveMatrices::build();
    let zero = ExactMatrix::zeros(11, 11);
    for a in 1..=3 {
        if mat_anticommutator(&w.eta, w.alpha(a)).unwrap() != zero {
            return Err(format!("η does not anticommute with α{a}"));
        }
    }
    if mat_commutator(&w.eta, w.alpha(4)).unwrap() != zero {
        return Err("η does not commute with α4".into());
    }
    if w.eta != w.eta.adjoint() {
        return Err("η not Hermitian".into());
    }
    if &w.eta * &w.eta != ExactMatrix::identity(11) {
        return Err("η² ≠ I".into());
    }
    Ok(())
}

const PROJECTOR_IDS: [&str; 16] = [
    "projectors.p_slash.cubic",
    "projectors.energy.idempotent",
    "projectors.energy.orthogonal",
    "projectors.energy.rank",
    "projectors.sigma2.minimal",
    "projectors.sigma_p.minimal",
    "projectors.commutators",
    "projectors.delta.idempotent",
    "projectors.delta.rank_one",
    "projectors.delta.orthogonal",
    "projectors.delta.completeness",
    "projectors.dyad.reassembly",
    "projectors.dyad.first_order",
    "projectors.energy.completeness",
    "projectors.sigma_p.generator_form",
    "projectors.sigma_p.spectrum",
];

fn criterion_6() -> Outcome {
    let momenta = [(4, [0, 0, 3]), (12, [3, 4, 0]), (24, [2, 3, 6]), (12, [1, 4, 8])];
    for (m, p) in momenta {
        let p = FourMomentum::from_ints(m, p).map_err(|e| e.to_string())?;
        require(&verify::run_projectors_at(&p, false), &PROJECTOR_IDS).map_err(|e| format!("m={m}: {e}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    if ChargeName::all().len() != 17 || Direction::all().len() != 16 {
        return Err("charge or direction count".into());
    }
    let r = suite_records(Suite::U31, 6)?;
    require(
        &r,
        &[
            "u31.charges.conserved",
            "u31.generating_function.first_order",
            "u31.structure_constants",
            "u31.hamiltonian.forms",
        ],
    )
}

fn criterion_8() -> Outcome {
    let r = suite_records(Suite::Fock, 6)?;
    require(
        &r,
        &[
            "fock.s1.ladder_commutators",
            "fock.s2.ladder_commutators",
            "fock.s2.gram",
            "fock.s2.energy_spectrum",
            "fock.s1.energy_spectrum",
            "fock.s1.charges_conserved",
            "fock.s2.charges_conserved",
            "fock.s2.physical_decomposition",
            "fock.s1.truncation_exactness",
            "fock.s2.truncation_exactness",
        ],
    )
}

fn criterion_9() -> Outcome {
    if representable_elements().len() < 5 {
        return Err("fewer than five U(2) elements".into());
    }
    let r = suite_records(Suite::Em, multispin::em::DEFAULT_TRUNCATION)?;
    require(
        &r,
        &[
            "em.su2.commutators",
            "em.su2.commute_j0",
            "em.u2.invariance",
            "em.dual.group_law",
            "em.dual.stokes_rotation",
        ],
    )
}

fn cli(args: &[&str], workers: &str) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_multispin"))
        .args(args)
        .env(verify::WORKERS_ENV, workers)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_10() -> Outcome {
    let args = ["verify", "all", "--json", "--no-timing"];
    let (c1, a) = cli(&args, "1")?;
    let (c2, b) = cli(&args, "4")?;
    if (c1, c2) != (0, 0) {
        return Err(format!("exit codes {c1}, {c2}"));
    }
    if a != b {
        return Err("reports differ".into());
    }
    let (code, _) = cli(&["verify", "algebra", "--mutate", "algebra.pdk.beta1"], "1")?;
    if code != 1 {
        return Err(format!("mutated run exited {code}"));
    }
    let (code, _) = cli(&["verify", "algebra", "--mutate", "algebra.no_such_identity"], "1")?;
    if code != 2 {
        return Err(format!("unknown mutation id exited {code}"));
    }
    Ok(())
}

fn main() -> std::process::ExitCode {
    let s = |n| Some(Duration::from_secs(n));
    let results = [
        judge(1, "epsilon product rule, 121² products in dim11", s(5), criterion_1),
        judge(2, "PDK relation for beta1 and beta0, alpha negative control", s(1), criterion_2),
        judge(3, "cubic alpha relation, 64 triples", s(1), criterion_3),
        judge(4, "Lorentz closure (15 pairs) and alpha covariance (24)", s(1), criterion_4),
        judge(5, "eta anticommutation, commutation, hermiticity, involution", None, criterion_5),
        judge(6, "projector suite at four Pythagorean momenta", s(30), criterion_6),
        judge(7, "canonical formalism: charges, generating function, structure constants", s(5), criterion_7),
        judge(8, "Fock suite at N = 6, both vacuum schemes", s(10), criterion_8),
        judge(9, "EM suite: su(2), U(2) invariance, dual rotations", s(5), criterion_9),
        judge(10, "CLI determinism and exit-code contract", None, criterion_10),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
