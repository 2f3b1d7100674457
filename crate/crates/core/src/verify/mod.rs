//! Mechanical checks of the closed forms, recurrences, bounds and
//! exceptional-set characterizations of the Thue–Morse cyclic complexity.
//!
//! Every check takes an [`Evaluator`]: either the trusted brute-force count
//! or a representation certified against it, which extends the reachable
//! range by orders of magnitude. Failures are reported, never thrown.

mod checks;
mod closed;
mod evaluator;
mod report;
mod sets;
mod target;

pub use checks::{
    check_automata, check_j_characterization, check_lemma6, check_lower_bound, check_powers2_word,
    check_proposition1, check_recurrences, check_upper_bound, family_forms, run_suite, FamilyForm,
    Suite, SuiteConfig, J_WITNESSES,
};
pub use closed::{fit_closed_form, parse_basis, Affine, BasisTerm, ClosedForm, Pattern};
pub use evaluator::{
    BruteForce, Certified, Derived, Evaluator, A0_TARGET, A1_TARGET, A3_TARGET,
    DEFAULT_CERTIFY_THROUGH,
};
pub use report::{ClaimReport, Counterexample, Status, VerificationReport, MAX_COUNTEREXAMPLES};
pub use sets::{in_set, j_element, SetId};
pub use target::{Target, Term};

#[cfg(test)]
mod tests;
