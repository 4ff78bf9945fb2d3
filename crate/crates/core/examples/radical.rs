//! Arithmetic in Q(i)(√a, √b, ...) and trigonometric Laurent polynomials.
use cr_umbilic::radical::{RadicalElement, RadicalTower, TrigLaurent};
use cr_umbilic::Rational;

fn main() {
    let tower = RadicalTower::fixed(&Rational::from_int(2), &Rational::from_int(3));
    println!("generators {:?} with squares {:?}", tower.generator_names(), tower.squares().iter().map(|s| s.to_string()).collect::<Vec<_>>());
    let s = RadicalElement::s(&tower);
    let t = RadicalElement::t(&tower);
    let x = s.add(&t).unwrap();
    println!("(s + t)^2 = {:?}", x.pow(2));
    println!("(s + t)^-1 * (s + t) is one: {}", x.inv().unwrap().mul(&x).unwrap() == RadicalElement::one(&tower));

    let c = TrigLaurent::cos(&tower);
    let sn = TrigLaurent::sin(&tower);
    let one = c.pow(2).add(&sn.pow(2)).unwrap();
    println!("cos^2 + sin^2 - 1 is zero: {}", one.sub(&TrigLaurent::constant(&RadicalElement::one(&tower))).unwrap().is_zero());
    let h = c.pow(3).to_homogeneous(3).unwrap();
    println!("cos^3 in the cos/sin basis has {} coefficients", h.len());
}
