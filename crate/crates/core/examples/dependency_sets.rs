//! Affine constraints, Cauchy-Schwarz complexity and dependency sets.

use gowerslab::config::Caps;
use gowerslab::constraints::{cs_complexity, dependency_set, AffineConstraint};
use gowerslab::field::{AffineForm, Fp};

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();
    let f2 = Fp::new(2)?;
    let cube = AffineConstraint::cube(3);
    println!("{cube}");
    println!("complexity {:?}", cs_complexity(f2, &cube.linear_forms())?.0);
    for (d, k) in [(1, 0), (2, 0), (1, 1)] {
        let set = dependency_set(f2, &cube, d, k, &caps)?;
        println!("(d, k) = ({d}, {k}): |Λ| = {}", set.size());
        print!("{}", set.to_csv());
    }

    let f3 = Fp::new(3)?;
    let ap = AffineConstraint::new(vec![
        AffineForm::new(vec![1, 0])?,
        AffineForm::new(vec![1, 1])?,
        AffineForm::new(vec![1, 2])?,
    ])?;
    println!("{ap}");
    println!("complexity over F_3: {:?}", cs_complexity(f3, &ap.linear_forms())?.0);
    println!("|Λ(1, 0)| = {}", dependency_set(f3, &ap, 1, 0, &caps)?.size());
    Ok(())
}
