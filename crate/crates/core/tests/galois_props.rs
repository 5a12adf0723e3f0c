//! Structural properties of the Galois layer that go beyond the named
//! suites: path independence of the translation-map recursion at the
//! quotient level.

use qsphere::cmod::{self, ActionTable};
use qsphere::galois::{quotient_eq, tau_alternate_path, TauTable};

/// The recursion offers overlapping rules; the engine fixes the canonical
/// path (k, then m, then n) and this check confirms that the alternate path
/// (k, then n, then m) lands in the same class of P (x)_B P for every index
/// with |k|+m+n <= 4.
#[test]
fn tau_path_independence_up_to_level_4() {
    let table = ActionTable::standard();
    let tt = TauTable::new();
    for idx in cmod::c_indices_up_to(4) {
        let canonical = tt.tau(idx.k, idx.m, idx.n).unwrap();
        let alternate = tau_alternate_path(idx.k, idx.m, idx.n, tt.degree_cap()).unwrap();
        assert!(
            quotient_eq(&canonical, &alternate, &table),
            "recursion paths disagree in the quotient at {:?}",
            idx
        );
    }
}
