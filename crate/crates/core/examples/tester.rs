//! The subspace tester against the affinity family.

use gowerslab::config::Caps;
use gowerslab::poly::NCPoly;
use gowerslab::tester::{
    affinity_family, distance_to_free, rejection_probability, subspace_test_trials, RFunction, RejectionMode,
};

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();
    let family = affinity_family(2, &caps)?;

    let xy = RFunction::from_classical(&NCPoly::classical(2, 2, &[(vec![1, 1], 1)])?)?;
    let exact = rejection_probability(&xy, &family, RejectionMode::Exact, &caps)?;
    println!(
        "x1x2 on F_2^2: rejection probability {} ({} of {} triples)",
        exact.probability,
        exact.inducing_tuples.unwrap(),
        exact.total_tuples
    );

    let affine = RFunction::from_classical(&NCPoly::linear(2, &[1, 0, 1, 1])?)?;
    println!(
        "affine function: {} rejections in 1000 runs",
        subspace_test_trials(&affine, &family, 3, 1000, 7)?
    );

    let noisy = RFunction::random(2, 3, 2, 11)?;
    let rejections = subspace_test_trials(&noisy, &family, 3, 1000, 7)?;
    let dist = distance_to_free(&noisy, &family, &caps)?;
    println!(
        "random function: {rejections} rejections in 1000 runs, distance {:?}",
        dist.exact
    );
    Ok(())
}
