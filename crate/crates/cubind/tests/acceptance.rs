//! The acceptance gate: ten criteria, each printed as a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see each line,
//! or `cubind test` for the same suites through the CLI.

use cubind::eval::Flags;
use cubind::harness::*;

fn run(criterion: u32, name: &str, suite: Suite) {
    let ok = suite.passed();
    println!(
        "criterion {:>2} ({}): {} [{} cases]",
        criterion,
        name,
        if ok { "PASS" } else { "FAIL" },
        suite.cases.len()
    );
    for note in &suite.notes {
        println!("    note: {}", note);
    }
    if !ok {
        for c in suite.failures().iter().take(10) {
            println!("    {}: {}", c.name, c.outcome.as_ref().unwrap_err());
        }
    }
    assert!(ok, "criterion {} ({}) failed", criterion, name);
}

#[test]
fn criterion_01_canonicity() {
    // 200 generated closed, dimension-closed nat/bool terms all evaluate to
    // a boundaryless constructor within the step budget.
    run(1, "canonicity", canonicity_suite(&Flags::default()));
}

#[test]
fn criterion_02_arithmetic_oracle() {
    // Eliminator-derived addition and multiplication match the unary
    // oracle on all operands 0..=5, by exact observation-tree equality.
    run(2, "arithmetic-oracle", arithmetic_suite(&Flags::default()));
}

#[test]
fn criterion_03_boundary_adherence() {
    // Every stdlib constructor face: the intro under the face's unifier
    // evaluates to the same value as the transcribed boundary term.
    run(3, "boundary-adherence", boundary_suite(&Flags::default()));
}

#[test]
fn criterion_04_kan_degeneracy() {
    // Compositions and coercions with equal endpoints agree with their cap
    // or body, observationally and exactly.
    run(4, "kan-degeneracy", kan_suite(&Flags::default()));
}

#[test]
fn criterion_05_eliminator_beta() {
    // Each cataloged eliminator applied to a constructor value steps to
    // the transcribed case instantiation, syntactically; closed instances
    // also agree observationally.
    run(5, "eliminator-beta", elim_beta_suite(&Flags::default()));
}

#[test]
fn criterion_06_coherence() {
    // For one-dimensional terms, substituting an endpoint before or after
    // evaluation gives the same observation.
    run(6, "coherence", coherence_suite(&Flags::default()));
}

#[test]
fn criterion_07_checker_mutation() {
    // Every unmutated declaration is accepted; every single-point mutation
    // is rejected with the expected error kind.
    run(7, "checker-mutation", mutation_suite(&Flags::default()));
}

#[test]
fn criterion_08_validity_brute_force() {
    // The syntactic validity check is sound against exhaustive endpoint
    // substitution over three variables and up to four constraints;
    // conservative rejections are recorded in the notes.
    run(8, "validity-brute-force", validity_suite());
}

#[test]
fn criterion_09_optimization_equivalence() {
    // With closed-type optimizations on, the observational suites pass
    // with identical expectations.
    run(9, "optimization-equivalence", optimization_suite());
}

#[test]
fn criterion_10_natrec_extension() {
    // The boundary-language natrec extension: the stand-in schema checks,
    // and its boundary reduction matches the golden trace exactly.
    run(10, "natrec-extension", natrec_suite());
}
