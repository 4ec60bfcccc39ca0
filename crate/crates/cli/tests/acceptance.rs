//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line.  Every check is exact, so the tolerances are zero; the
//! stated runtime budgets are asserted as upper bounds.

use num::BigInt;
use plucker_core::exterior::{verify_mod2, verify_sph2};
use plucker_core::model_checker::{
    build_w_sequence, check_mod3, check_sph3, verify_ip6_orbit, verify_ip6_roots, verify_w_sequence,
};
use plucker_core::pluecker::{
    all_monomials, enumerate_standard, evaluate_tableau, random_matrix, relation_span_degree3,
    straighten, verify_basis,
};
use plucker_core::rep_theory::{verify_mod1, verify_sph1, FiniteRootSystem};
use plucker_core::report::{CheckRecord, CheckStatus};
use plucker_core::sl3::check_nonstability;
use plucker_core::{Column, Family, Gcm, KExtension, Tableau, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

struct Gate {
    name: &'static str,
    budget: Duration,
    start: Instant,
}

impl Gate {
    fn open(name: &'static str, budget_secs: u64) -> Self {
        Gate {
            name,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn close(self, ok: bool, detail: &str) {
        let elapsed = self.start.elapsed();
        let verdict = if ok && elapsed <= self.budget {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{verdict} {}: {detail} ({elapsed:.2?} of {:?} budget)",
            self.name, self.budget
        );
        assert!(ok, "{}: {detail}", self.name);
        assert!(
            elapsed <= self.budget,
            "{}: exceeded {:?} budget ({elapsed:.2?})",
            self.name,
            self.budget
        );
    }
}

fn all_pass(records: &[CheckRecord]) -> bool {
    !records.is_empty() && records.iter().all(|r| r.status == CheckStatus::Pass)
}

/// A uniformly random strictly increasing k-subset of 1..=n.
fn random_column(rng: &mut ChaCha8Rng, k: usize, n: u8) -> Column {
    let mut pool: Vec<u8> = (1..=n).collect();
    let mut picked = Vec::with_capacity(k);
    for _ in 0..k {
        let at = rng.gen_range(0..pool.len());
        picked.push(pool.swap_remove(at));
    }
    picked.sort_unstable();
    Column::new(picked, n).expect("sorted distinct indices form a column")
}

fn random_monomial(rng: &mut ChaCha8Rng, k: usize, n: u8) -> Tableau {
    let degree = rng.gen_range(1..=3);
    let columns = (0..degree).map(|_| random_column(rng, k, n)).collect();
    Tableau::new(columns, k, n).expect("columns share the shape")
}

/// Straighten and confirm the output is standard and evaluation-equal to
/// the input on 20 random matrices.
fn straightens_correctly(t: &Tableau, matrices: &[plucker_core::QMatrix]) -> bool {
    let result = straighten(t).expect("straightening terminates");
    if !result.combo.keys().all(Tableau::is_standard) {
        return false;
    }
    matrices.iter().all(|m| {
        evaluate_tableau(t, m).expect("shape matches") == result.evaluate(m).expect("shape matches")
    })
}

#[test]
fn ac01_straightening_correctness() {
    let gate = Gate::open("AC1 straightening correctness", 60);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = true;
    let mut tried = 0usize;

    let matrices24: Vec<_> = (0..20).map(|_| random_matrix(&mut rng, 4, 2)).collect();
    for d in 1..=3 {
        for t in all_monomials(2, 4, d).unwrap() {
            ok &= straightens_correctly(&t, &matrices24);
            tried += 1;
        }
    }

    for (k, n) in [(2usize, 5u8), (3, 6)] {
        let matrices: Vec<_> = (0..20)
            .map(|_| random_matrix(&mut rng, n as usize, k))
            .collect();
        for _ in 0..500 {
            let t = random_monomial(&mut rng, k, n);
            ok &= straightens_correctly(&t, &matrices);
            tried += 1;
        }
    }

    gate.close(
        ok,
        &format!("{tried} monomials straightened and evaluation-checked"),
    );
}

#[test]
fn ac02_standard_basis_counts() {
    let gate = Gate::open("AC2 standard basis counts", 30);
    let mut ok = true;
    let mut cases = 0usize;
    for n in 2u8..=6 {
        let system = FiniteRootSystem::new(Gcm::finite(Family::A, n as usize - 1).unwrap())
            .expect("A-type root system");
        for k in 1..n as usize {
            for d in 1..=3usize {
                let count = enumerate_standard(k, n, d).unwrap().len();
                let lambda = Weight::fundamental(n as usize - 1, k - 1).scale(d as i64);
                let dim = system.weyl_dim(&lambda).unwrap();
                ok &= BigInt::from(count) == dim;
                cases += 1;
            }
        }
    }

    let monomials = all_monomials(2, 4, 2).unwrap().len();
    let standard = enumerate_standard(2, 4, 2).unwrap().len();
    ok &= monomials == 21 && standard == 20;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let records = verify_basis(2, 4, 2, &mut rng).unwrap();
    ok &= all_pass(&records);
    ok &= records.iter().any(|r| {
        r.check == "basis-quadratic-relations"
            && r.witness.as_deref().is_some_and(|w| w.starts_with("1 "))
    });

    gate.close(
        ok,
        &format!("{cases} (k,n,d) counts match Weyl dimensions; Gr(2,4) has exactly 1 quadratic relation"),
    );
}

#[test]
fn ac03_degree3_relation_span() {
    let gate = Gate::open("AC3 degree-3 relation span", 120);
    let mut ok = true;
    let mut detail = String::new();
    for (k, n) in [(2usize, 4u8), (2, 5)] {
        let (span, expected) = relation_span_degree3(k, n).unwrap();
        ok &= span == expected;
        detail.push_str(&format!("Gr({k},{n}): {span}/{expected} "));
    }
    gate.close(ok, detail.trim_end());
}

#[test]
fn ac04_sl3_counterexample() {
    let gate = Gate::open("AC4 SL(3) counterexample", 10);
    let report = check_nonstability().unwrap();
    let ok = report.basis_rank == 8
        && report.stable_rank == 8
        && report.span_dim == 5
        && !report.witnesses.is_empty();
    gate.close(
        ok,
        &format!(
            "rank {}, stable rank {}, restricted span {}, {} witnesses",
            report.basis_rank,
            report.stable_rank,
            report.span_dim,
            report.witnesses.len()
        ),
    );
}

#[test]
fn ac05_mod3_sph3_identities() {
    let gate = Gate::open("AC5 mod3/sph3 identities", 5);
    let mut ok = true;
    let mut checks = 0usize;
    for family in [Family::A, Family::B, Family::C] {
        for rank in 2..=8 {
            let records = check_mod3(family, rank).unwrap();
            ok &= all_pass(&records);
            checks += records.len();
        }
    }
    for n in 4..=6usize {
        for p in 2..=n - 2 {
            let records = check_sph3(n, p).unwrap();
            ok &= all_pass(&records);
            checks += records.len();
        }
    }
    gate.close(ok, &format!("{checks} exact identities"));
}

#[test]
fn ac06_mod1_sph1_multiplicities() {
    let gate = Gate::open("AC6 mod1/sph1 multiplicities", 120);
    let mut ok = true;
    let mut checks = 0usize;
    for family in [Family::A, Family::B, Family::C] {
        for rank in 2..=4usize {
            for i in 1..=rank.min(4) {
                let records = verify_mod1(family, rank, i).unwrap();
                ok &= all_pass(&records);
                checks += records.len();
            }
        }
    }
    for (n, p) in [(4usize, 2usize), (5, 3)] {
        let records = verify_sph1(n, p).unwrap();
        ok &= all_pass(&records);
        checks += records.len();
    }
    gate.close(ok, &format!("{checks} multiplicity checks"));
}

#[test]
fn ac07_invariant_products() {
    let gate = Gate::open("AC7 mod2/sph2 invariant products", 60);
    let mut ok = true;
    let mut checks = 0usize;
    for (family, rank) in [
        (Family::A, 3usize),
        (Family::A, 4),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 3),
        (Family::C, 4),
    ] {
        let records = verify_mod2(family, rank).unwrap();
        ok &= all_pass(&records);
        checks += records.len();
    }
    for (n, p) in [(4usize, 2usize), (5, 3)] {
        let records = verify_sph2(n, p).unwrap();
        ok &= all_pass(&records);
        checks += records.len();
    }
    gate.close(
        ok,
        &format!("{checks} projected products proportional to their targets"),
    );
}

#[test]
fn ac08_w_sequence_bookkeeping() {
    let gate = Gate::open("AC8 w-sequence bookkeeping", 30);
    let mut ok = true;
    let mut checks = 0usize;
    for family in [Family::A, Family::B, Family::C] {
        for rank in 2..=6usize {
            let seq = build_w_sequence(KExtension::Model(family), rank).unwrap();
            let records = verify_w_sequence(&seq).unwrap();
            ok &= all_pass(&records);
            checks += records.len();
        }
    }
    for (n, p) in [(4usize, 2usize), (5, 2), (5, 3)] {
        let seq = build_w_sequence(KExtension::Sph { p }, n).unwrap();
        let records = verify_w_sequence(&seq).unwrap();
        ok &= all_pass(&records);
        checks += records.len();
    }
    gate.close(ok, &format!("{checks} length/recursion/pairing checks"));
}

#[test]
fn ac09_ip6_combinatorics() {
    let gate = Gate::open("AC9 orbit filtering and root sweep", 60);
    let mut ok = true;
    let mut checks = 0usize;
    for family in [Family::A, Family::B, Family::C] {
        for rank in 2..=8usize {
            let orbit = verify_ip6_orbit(family, rank).unwrap();
            let roots = verify_ip6_roots(family, rank).unwrap();
            ok &= all_pass(&orbit) && all_pass(&roots);
            checks += orbit.len() + roots.len();
        }
    }
    gate.close(ok, &format!("{checks} orbit and root-sweep checks"));
}

/// The command lines of the full verification suite, as handed to the
/// binary.  Every subcommand appears at least once.
const SUITE: &[&[&str]] = &[
    &[
        "straighten",
        "--k",
        "2",
        "--n",
        "4",
        "--monomial",
        "1,4|2,3",
    ],
    &[
        "straighten",
        "--k",
        "3",
        "--n",
        "6",
        "--monomial",
        "1,2,6|3,4,5",
    ],
    &["enumerate", "--k", "2", "--n", "5", "--degree", "2"],
    &["ridge", "--k", "2", "--n", "4", "--column", "2,4"],
    &["sl3"],
    &[
        "verify-model",
        "--family",
        "A",
        "--rank",
        "4",
        "--checks",
        "mod1,mod2,mod3,h1,h5,lemk,ip6-orbit,ip6-roots,wseq",
    ],
    &[
        "verify-model",
        "--family",
        "B",
        "--rank",
        "3",
        "--checks",
        "mod1,mod2,mod3,h1,h5,lemk,ip6-orbit,ip6-roots,wseq",
    ],
    &[
        "verify-model",
        "--family",
        "C",
        "--rank",
        "3",
        "--checks",
        "mod1,mod2,mod3,h1,h5,lemk,ip6-orbit,ip6-roots,wseq",
    ],
    &[
        "verify-sph",
        "--n",
        "5",
        "--p",
        "3",
        "--checks",
        "sph1,sph2,sph3,h1,h5,wseq",
    ],
    &["invariants", "--family", "C", "--rank", "4"],
];

fn run_suite(seed: u64) -> String {
    let mut out = String::new();
    for args in SUITE {
        let output = Command::new(env!("CARGO_BIN_EXE_plucker"))
            .args(*args)
            .args(["--json", "--seed", &seed.to_string()])
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "suite command {args:?} failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        out.push_str(&String::from_utf8(output.stdout).expect("reports are UTF-8"));
    }
    out
}

#[test]
fn ac10_deterministic_reports() {
    let gate = Gate::open("AC10 deterministic reports", 600);
    let first = run_suite(7);
    let second = run_suite(7);
    let ok = first == second && !first.is_empty();
    gate.close(
        ok,
        &format!(
            "{} commands, {} bytes of JSON, byte-identical across runs",
            SUITE.len(),
            first.len()
        ),
    );
}
