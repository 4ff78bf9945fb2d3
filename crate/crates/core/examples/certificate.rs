//! Exact vanishing of the invariant along the umbilical curve.
use cr_umbilic::certificate::{certify_fixed, certify_symbolic};
use cr_umbilic::ellipsoid::EllipsoidSpec;

fn main() {
    for (a, b) in [("2", "3"), ("2", "2"), ("1", "2"), ("3", "1"), ("7/3", "9/2")] {
        let spec = EllipsoidSpec::parse(a, b).expect("valid ellipsoid");
        let rep = certify_fixed(&spec).expect("certificate runs");
        println!(
            "{:<20} terms={:<6} on_surface={} vanishes={} ({:.2?})",
            rep.tower, rep.numerator_terms, rep.curve_on_surface, rep.invariant_vanishes, rep.elapsed
        );
    }
    let rep = certify_symbolic().expect("symbolic certificate runs");
    println!(
        "{:<20} terms={:<6} on_surface={} vanishes={} ({:.2?})",
        rep.tower, rep.numerator_terms, rep.curve_on_surface, rep.invariant_vanishes, rep.elapsed
    );
}
