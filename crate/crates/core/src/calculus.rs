//! Degree of a function `F_p^n → T` computed from the derivative definition:
//! `deg f <= d` iff every `(d+1)`-fold additive derivative vanishes.

use crate::config::{pow_u128, Caps};
use crate::error::Result;
use crate::field::{Domain, Fp};
use crate::par;
use crate::poly::{derivative_table, LevelTable, NCPoly};
use rand::Rng;
use serde::Serialize;
use std::collections::HashSet;

/// How the vanishing of iterated derivatives is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DegreeMode {
    /// Iterated derivatives along standard basis vectors only. Exact, since
    /// `D_{h+h'} = T_{h'} D_h + D_{h'}` makes all directions follow from the
    /// basis ones.
    Basis,
    /// Every tuple `(h_1, ..., h_{d+1}, x)`; costs `p^{n(d+2)}` per level.
    FullSweep,
    /// `trials` random tuples per level.
    Randomized { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    /// `None` when the degree exceeds `d_max`.
    pub degree: Option<u32>,
    pub d_max: u32,
    pub mode: DegreeMode,
    pub exact: bool,
    /// For the randomized mode: a bound on the chance that a level with a
    /// nonzero derivative was accepted, assuming a nonzero derivative is
    /// nonzero on at least a `p^{-(d_max+1)}` fraction of tuples.
    pub failure_probability: Option<f64>,
}

pub fn degree_by_derivatives(poly: &NCPoly, d_max: u32, mode: DegreeMode, caps: &Caps) -> Result<DegreeReport> {
    table_degree(&poly.table()?, d_max, mode, caps)
}

pub fn table_degree(t: &LevelTable, d_max: u32, mode: DegreeMode, caps: &Caps) -> Result<DegreeReport> {
    let dom = Domain::new(Fp::new(t.p)?, t.n)?;
    let degree = match mode {
        DegreeMode::Basis => basis_degree(&dom, t, d_max),
        DegreeMode::FullSweep => sweep_degree(&dom, t, d_max, caps)?,
        DegreeMode::Randomized { trials, seed } => random_degree(&dom, t, d_max, trials, seed),
    };
    let failure_probability = match mode {
        DegreeMode::Randomized { trials, .. } => {
            let q = (t.p as f64).powi(-(d_max as i32 + 1));
            Some((1.0 - q).powf(trials as f64).min(1.0) * (d_max as f64 + 1.0))
        }
        _ => None,
    };
    Ok(DegreeReport {
        degree,
        d_max,
        mode,
        exact: !matches!(mode, DegreeMode::Randomized { .. }),
        failure_probability: failure_probability.map(|f| f.min(1.0)),
    })
}

fn basis_degree(dom: &Domain, t: &LevelTable, d_max: u32) -> Option<u32> {
    let units: Vec<u64> = (0..dom.n()).map(|i| dom.index_of(&unit(dom.n(), i))).collect();
    let mut frontier: Vec<LevelTable> = if t.is_zero() { vec![] } else { vec![t.clone()] };
    for d in 0..=d_max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for q in &frontier {
            for &e in &units {
                let dq = derivative_table(dom, q, e);
                if !dq.is_zero() && seen.insert(dq.nums.clone()) {
                    next.push(dq);
                }
            }
        }
        if next.is_empty() {
            return Some(d);
        }
        frontier = next;
    }
    None
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `Σ_S (-1)^{d+1-|S|} f(x + h_S)` over all subsets of the given directions.
fn iterated_difference(dom: &Domain, t: &LevelTable, x: u64, hs: &[u64]) -> u64 {
    let m = t.modulus();
    let r = hs.len();
    let mut acc: u64 = 0;
    for mask in 0u32..(1 << r) {
        let mut y = x;
        for (j, &h) in hs.iter().enumerate() {
            if mask >> j & 1 == 1 {
                y = dom.add(y, h);
            }
        }
        let v = t.nums[y as usize];
        if (r as u32 - mask.count_ones()).is_multiple_of(2) {
            acc = (acc + v) % m;
        } else {
            acc = (acc + m - v) % m;
        }
    }
    acc
}

fn sweep_degree(dom: &Domain, t: &LevelTable, d_max: u32, caps: &Caps) -> Result<Option<u32>> {
    let size = dom.size();
    for d in 0..=d_max {
        let r = d as u64 + 1;
        caps.check("exhaustive derivative sweep", pow_u128(size, r + 1))?;
        let total = size.pow(r as u32 + 1);
        let witness = par::find_first(total, |mut idx| {
            let x = idx % size;
            idx /= size;
            let hs: Vec<u64> = (0..r)
                .map(|_| {
                    let h = idx % size;
                    idx /= size;
                    h
                })
                .collect();
            iterated_difference(dom, t, x, &hs) != 0
        });
        if witness.is_none() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn random_degree(dom: &Domain, t: &LevelTable, d_max: u32, trials: u64, seed: u64) -> Option<u32> {
    let size = dom.size();
    for d in 0..=d_max {
        let r = d as usize + 1;
        let witness = par::find_first(trials, |trial| {
            let mut rng = par::rng(seed, (d as u64) << 40 | trial);
            let x = rng.gen_range(0..size);
            let hs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..size)).collect();
            iterated_difference(dom, t, x, &hs) != 0
        });
        if witness.is_none() {
            return Some(d);
        }
    }
    None
}
