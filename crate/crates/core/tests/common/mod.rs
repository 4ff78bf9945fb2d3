#![allow(dead_code)]

use cr_umbilic::ellipsoid::{ellipsoid_rational_point, heisenberg_rational_point, sphere_rational_point, EllipsoidSpec};
use cr_umbilic::{GaussianRational, Poly4, Rational, SurfacePoint, Var};

pub type P = Poly4<GaussianRational>;
pub type Pt = SurfacePoint<GaussianRational>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn v(x: Var) -> P {
    P::var(x)
}

/// Distinct rational points on S³.
pub fn sphere_points(count: usize) -> Vec<Pt> {
    let mut out: Vec<Pt> = Vec::new();
    for d in 1..=5 {
        for a in -3..=3 {
            for b in -2..=2 {
                for c in [1, 2, -1] {
                    let p = sphere_rational_point(&q(a, d), &q(b, d), &q(c, d));
                    if !out.contains(&p) {
                        out.push(p);
                    }
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
    }
    out
}

pub fn heisenberg_points(count: usize, nonzero_z: bool) -> Vec<Pt> {
    let mut out = Vec::new();
    'outer: for x in -3..=3 {
        for y in -3..=3 {
            if nonzero_z && x == 0 && y == 0 {
                continue;
            }
            for u in -2..=2 {
                out.push(heisenberg_rational_point(&q(x, 2), &q(y, 3), &q(u, 5)));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    out
}

/// Rational points of an ellipsoid with `z ≠ 0` and `w ≠ 0`, so both
/// branches are usable.
pub fn ellipsoid_points(spec: &EllipsoidSpec, count: usize) -> Vec<Pt> {
    let mut out: Vec<Pt> = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in [-3i64, -1, 1, 2] {
                    let dir = [q(a, 1), q(b, 1), q(c, 1), q(d, 1)];
                    if let Some(p) = ellipsoid_rational_point(spec, &dir) {
                        let zero = GaussianRational::from_ints(0, 0);
                        if p.z != zero && p.w != zero && !out.contains(&p) {
                            out.push(p);
                        }
                    }
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
    }
    out
}
