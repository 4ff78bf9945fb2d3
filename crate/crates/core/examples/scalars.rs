//! Exact rational and Gaussian-rational arithmetic.
use cr_umbilic::{GaussianRational, Rational, Scalar};

fn main() {
    let third = Rational::new(1, 3).unwrap();
    let x: Rational = "-22/7".parse().unwrap();
    println!("1/3 + (-22/7) = {}", third.clone() + &x);
    println!("(1/3)^-1 = {}", third.inv().unwrap());

    let z = GaussianRational::from_fracs((1, 2), (3, 4));
    println!("z = {z}, conj = {}, |z|^2 = {}", z.conj(), z.norm_sqr());
    println!("1/z = {}", z.inv().unwrap());
    println!("z^8 = {}", z.pow(8));
    // i64 overflow promotes silently to big integers
    let big = Rational::new(i64::MAX, 3).unwrap() * &Rational::new(i64::MAX, 5).unwrap();
    println!("big product = {big}");
}
