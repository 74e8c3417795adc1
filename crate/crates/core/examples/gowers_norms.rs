//! Gowers norms of polynomial phases, exact and sampled, and a counting
//! average bounded by them.

use gowerslab::config::Caps;
use gowerslab::field::LinearForm;
use gowerslab::gowers::{counting_average, gowers, gowers_norm, EvalMode, TableFn};
use gowerslab::poly::NCPoly;

fn main() -> gowerslab::Result<()> {
    let caps = Caps::default();
    let xy = NCPoly::classical(2, 2, &[(vec![1, 1], 1)])?;
    let f = TableFn::phase_of(&xy, &caps)?;
    for d in 1..=3 {
        println!("‖e(x1 x2)‖_U{d} = {:.12}", gowers_norm(&f, d, &caps)?);
    }

    let q = NCPoly::classical(
        2,
        6,
        &[
            (vec![1, 1, 0, 0, 0, 0], 1),
            (vec![0, 0, 1, 1, 0, 0], 1),
            (vec![0, 0, 0, 0, 1, 1], 1),
        ],
    )?;
    let g = TableFn::phase_of(&q, &caps)?;
    let exact = gowers(&g, 2, EvalMode::Exhaustive, &caps)?;
    let sampled = gowers(
        &g,
        2,
        EvalMode::MonteCarlo {
            samples: 20_000,
            seed: 1,
        },
        &caps,
    )?;
    println!(
        "U2 of a rank-3 quadratic: exact {:.6}, sampled {:.6} ± {:.6}",
        exact.value,
        sampled.value,
        sampled.std_error.unwrap_or(0.0)
    );

    // Three-term progressions x, x+y, x+2y over F_3^3.
    let r = NCPoly::classical(3, 3, &[(vec![2, 0, 0], 1), (vec![0, 1, 1], 2)])?;
    let h = TableFn::phase_of(&r, &caps)?;
    let forms = [LinearForm(vec![1, 0]), LinearForm(vec![1, 1]), LinearForm(vec![1, 2])];
    let avg = counting_average(&[h.clone(), h.clone(), h.clone()], &forms, 2, &caps)?;
    println!(
        "|Λ(f, f, f)| = {:.6} <= ‖f‖_U2 = {:.6}",
        avg.norm(),
        gowers_norm(&h, 2, &caps)?
    );
    Ok(())
}
