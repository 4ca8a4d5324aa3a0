//! Closed-form Weyl group orders against brute-force closure on every
//! enumerated class in a range of small sizes.

use finegrad::enumerate::{enumerate_fine_gradings, enumerate_series_a, spec_to_json};
use finegrad::error::DEFAULT_BOUND;
use finegrad::grading::{GradingSpec, Series};
use finegrad::weyl::{compare_weyl, weyl_closed_form};

/// Closed-form orders above this are left to the closed form alone.
const CLOSURE_LIMIT: u128 = 200_000;

fn check_all(specs: Vec<GradingSpec>) {
    for spec in specs {
        let closed = weyl_closed_form(&spec, DEFAULT_BOUND).unwrap();
        if closed.order_u128().is_none_or(|n| n > CLOSURE_LIMIT) {
            continue;
        }
        let c = compare_weyl(&spec, DEFAULT_BOUND).unwrap_or_else(|e| panic!("{}: {e}", spec_to_json(&spec)));
        assert!(
            c.agrees(),
            "{}: closed form {} ({}) vs brute force {} (kernel rank {})",
            spec_to_json(&spec),
            c.closed_form,
            c.closed_form.order,
            c.brute_force.order,
            c.brute_force.kernel_rank
        );
    }
}

#[test]
fn series_b() {
    for n in [5, 7, 9] {
        check_all(enumerate_fine_gradings(Series::B, n, DEFAULT_BOUND).unwrap());
    }
}

#[test]
fn series_c() {
    for n in [4, 6, 8] {
        check_all(enumerate_fine_gradings(Series::C, n, DEFAULT_BOUND).unwrap());
    }
}

#[test]
fn series_d() {
    for n in [6, 10, 12] {
        check_all(enumerate_fine_gradings(Series::D, n, DEFAULT_BOUND).unwrap());
    }
}

#[test]
fn series_a() {
    for n in [2, 3, 4, 5, 6, 8] {
        check_all(enumerate_series_a(n, DEFAULT_BOUND).unwrap());
    }
}
