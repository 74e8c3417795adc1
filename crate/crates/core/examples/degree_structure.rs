//! Degree-structural properties and their behaviour on hyperplanes.

use gowerslab::config::Caps;
use gowerslab::degstruct::{hyperplane_locality_scan, is_structured, StructureSpec};
use gowerslab::poly::NCPoly;

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();
    // (x1 + x2)(x3 + 1) over F_3^3, and x1 x2 + x3 x4 over F_2^4.
    let split = NCPoly::classical(
        3,
        3,
        &[
            (vec![1, 0, 1], 1),
            (vec![0, 1, 1], 1),
            (vec![1, 0, 0], 1),
            (vec![0, 1, 0], 1),
        ],
    )?;
    let rank2 = NCPoly::classical(2, 4, &[(vec![1, 1, 0, 0], 1), (vec![0, 0, 1, 1], 1)])?;

    for (name, f) in [("(x1+x2)(x3+1)", &split), ("x1x2+x3x4", &rank2)] {
        for spec in [
            StructureSpec::splitting(f.p(), 2)?,
            StructureSpec::factorization(f.p(), 2)?,
            StructureSpec::sum_of_two_products(f.p(), 2)?,
        ] {
            let m = is_structured(f, &spec, &caps)?;
            println!("{name}: {} -> member {}", spec.label(), m.is_member());
        }
    }

    let scan = hyperplane_locality_scan(&rank2, &[StructureSpec::factorization(2, 2)?], &caps)?;
    for r in &scan {
        println!(
            "{}: {} of {} hyperplane restrictions are members, classification {:?}",
            r.spec, r.restricted_members, r.hyperplanes, r.classification
        );
    }
    Ok(())
}
