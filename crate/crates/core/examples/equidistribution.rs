//! Atom sizes and joint atom distributions of polynomial factors.

use gowerslab::config::Caps;
use gowerslab::constraints::AffineConstraint;
use gowerslab::factor::{joint_distribution, quadratic_form, uniformity_certify, PolynomialFactor, UniformityMetric};
use gowerslab::gowers::EvalMode;
use gowerslab::poly::NCPoly;

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();
    let cube = AffineConstraint::cube(3);

    let b = PolynomialFactor::new(2, 4, vec![NCPoly::coordinate(2, 4, 0)])?;
    let joint = joint_distribution(&b, &cube, EvalMode::Exhaustive, &caps)?;
    println!(
        "B = {{x1}}: {} consistent tuples, prediction {}, max deviation {}",
        joint.consistent_tuples, joint.prediction, joint.max_deviation
    );

    let q = quadratic_form(2, 4)?;
    let b = PolynomialFactor::new(2, 8, vec![q])?;
    for metric in [UniformityMetric::Gowers, UniformityMetric::Bias] {
        let cert = uniformity_certify(&b, 0.1, metric, &caps)?;
        println!(
            "{metric:?}: achieved ε = {:.4}, passed {}",
            cert.epsilon_achieved, cert.passed
        );
    }
    let hist = b.atom_histogram(&caps)?;
    println!("atom deviation {:.4}", hist.max_deviation);
    let joint = joint_distribution(
        &b,
        &cube,
        EvalMode::MonteCarlo {
            samples: 200_000,
            seed: 5,
        },
        &caps,
    )?;
    println!(
        "sampled joint deviation {:.4} over {} consistent tuples",
        joint.max_deviation, joint.consistent_tuples
    );
    Ok(())
}
