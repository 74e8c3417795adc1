//! Non-classical polynomials: construction, evaluation, derivatives, degree.
//!
//! Run with `cargo run --example polynomials`.

use gowerslab::calculus::{degree_by_derivatives, DegreeMode};
use gowerslab::config::Caps;
use gowerslab::field::Point;
use gowerslab::poly::{Monomial, NCPoly};

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();

    // |x1|/4 + |x2||x3|/2 over F_2^3: depth 1, degree 2.
    let p = NCPoly::from_monomials(
        2,
        3,
        [
            Monomial {
                exps: vec![1, 0, 0],
                depth: 1,
                coeff: 1,
            },
            Monomial {
                exps: vec![0, 1, 1],
                depth: 0,
                coeff: 1,
            },
        ],
    )?;
    println!("P = {p}");
    println!("degree {}, depth {}", p.degree(), p.depth());
    for x in [[0, 0, 0], [1, 0, 0], [1, 1, 1]] {
        println!("P{x:?} = {}", p.evaluate(&Point(x.to_vec()))?);
    }

    let h = Point(vec![1, 0, 0]);
    let dp = p.additive_derivative(&h)?;
    println!("D_e1 P = {dp}");

    // Doubling a depth-1 polynomial lowers its degree by p - 1 and its depth by 1.
    let twice = p.int_scale(2)?;
    println!("2P = {twice} (degree {}, depth {})", twice.degree(), twice.depth());

    let report = degree_by_derivatives(&p, 6, DegreeMode::Basis, &caps)?;
    println!("degree from derivatives: {:?}", report.degree);

    println!("{}", serde_json::to_string(&p).unwrap());
    Ok(())
}
