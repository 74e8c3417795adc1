//! Membership oracles for degree-structural properties of classical
//! polynomials `F = Γ(P_1, ..., P_c)` with `deg P_i <= d_i`, and a scanner
//! that compares global membership with membership on every hyperplane.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::{enumerate_hyperplanes, Domain, Fp};
use crate::par;
use crate::poly::NCPoly;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest number of components a spec may have.
pub const MAX_SCOPE: usize = 4;
/// Largest component degree a spec may have.
pub const MAX_DEGREE: u32 = 4;
/// Largest ambient dimension the generic search accepts.
pub const MAX_SEARCH_DIM: usize = 6;
/// Largest number of candidate polynomials per component.
const MAX_CANDIDATES: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    DegreeAtMost,
    Splitting,
    Factorization,
    SumOfTwoProducts,
    SquareRoot,
    LowRank,
    Custom,
}

/// `(c, d, Γ)`. `gamma` is a flat table over `F_p^c` indexed by
/// `Σ y_i p^i`; `None` means "some Γ", i.e. `F` only has to be a function of
/// `(P_1, ..., P_c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSpec {
    pub kind: StructureKind,
    pub p: u32,
    /// The degree parameter the named property was built from.
    pub d: u32,
    pub degrees: Vec<u32>,
    pub gamma: Option<Vec<u32>>,
}

impl StructureSpec {
    pub fn new(kind: StructureKind, p: u32, d: u32, degrees: Vec<u32>, gamma: Option<Vec<u32>>) -> Result<Self> {
        Fp::new(p)?;
        let c = degrees.len();
        if c > MAX_SCOPE {
            return Err(Error::invalid(format!("scope {c} exceeds {MAX_SCOPE}")));
        }
        if degrees.iter().any(|&x| x > MAX_DEGREE) {
            return Err(Error::invalid(format!(
                "component degrees {degrees:?} exceed {MAX_DEGREE}"
            )));
        }
        if let Some(g) = &gamma {
            if g.len() as u64 != (p as u64).pow(c as u32) {
                return Err(Error::invalid(format!(
                    "Γ table has {} entries, expected p^c = {}",
                    g.len(),
                    (p as u64).pow(c as u32)
                )));
            }
            if g.iter().any(|&v| v >= p) {
                return Err(Error::invalid("Γ values must lie in F_p"));
            }
        }
        Ok(StructureSpec {
            kind,
            p,
            d,
            degrees,
            gamma,
        })
    }

    pub fn scope(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn gamma_from(p: u32, c: usize, f: impl Fn(&[u32]) -> u32) -> Vec<u32> {
        let dom = Domain::new(Fp::new(p).expect("prime"), c).expect("small");
        dom.points().map(|y| f(y.coords()) % p).collect()
    }

    /// `deg F <= d`.
    pub fn degree_at_most(p: u32, d: u32) -> Result<Self> {
        Self::new(
            StructureKind::DegreeAtMost,
            p,
            d,
            vec![d],
            Some(Self::gamma_from(p, 1, |y| y[0])),
        )
    }

    /// `F` is a product of `d` polynomials of degree at most 1.
    pub fn splitting(p: u32, d: u32) -> Result<Self> {
        let c = d as usize;
        let f = Fp::new(p)?;
        let gamma = Self::gamma_from(p, c, |y| y.iter().fold(1, |acc, &v| f.mul(acc, v)));
        Self::new(StructureKind::Splitting, p, d, vec![1; c], Some(gamma))
    }

    /// `F = G H` with `deg G, deg H <= d - 1`.
    pub fn factorization(p: u32, d: u32) -> Result<Self> {
        let f = Fp::new(p)?;
        let e = d.saturating_sub(1);
        Self::new(
            StructureKind::Factorization,
            p,
            d,
            vec![e, e],
            Some(Self::gamma_from(p, 2, |y| f.mul(y[0], y[1]))),
        )
    }

    /// `F = G_1 H_1 + G_2 H_2` with all degrees at most `d - 1`.
    pub fn sum_of_two_products(p: u32, d: u32) -> Result<Self> {
        let f = Fp::new(p)?;
        let e = d.saturating_sub(1);
        let gamma = Self::gamma_from(p, 4, |y| f.add(f.mul(y[0], y[1]), f.mul(y[2], y[3])));
        Self::new(StructureKind::SumOfTwoProducts, p, d, vec![e; 4], Some(gamma))
    }

    /// `F = G^2` with `deg G <= d/2`.
    pub fn square_root(p: u32, d: u32) -> Result<Self> {
        let f = Fp::new(p)?;
        Self::new(
            StructureKind::SquareRoot,
            p,
            d,
            vec![d / 2],
            Some(Self::gamma_from(p, 1, |y| f.mul(y[0], y[0]))),
        )
    }

    /// `F = Γ(P_1, ..., P_r)` for some `Γ` and `deg P_i <= d - 1`; `r <= 2`.
    pub fn low_rank(p: u32, d: u32, r: usize) -> Result<Self> {
        if r > 2 {
            return Err(Error::invalid("low-rank membership is only decided for r <= 2"));
        }
        Self::new(StructureKind::LowRank, p, d, vec![d.saturating_sub(1); r], None)
    }

    pub fn label(&self) -> String {
        match self.kind {
            StructureKind::DegreeAtMost => format!("degree<={}", self.d),
            StructureKind::Splitting => format!("splitting(d={})", self.d),
            StructureKind::Factorization => format!("factorization(d={})", self.d),
            StructureKind::SumOfTwoProducts => format!("sum-of-two-products(d={})", self.d),
            StructureKind::SquareRoot => format!("square-root(d={})", self.d),
            StructureKind::LowRank => format!("low-rank(d={}, r={})", self.d, self.scope()),
            StructureKind::Custom => format!("custom(degrees={:?})", self.degrees),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Membership {
    /// `F(x) = Γ(witness_1(x), ..., witness_c(x))` for every `x`.
    Member {
        witness: Vec<NCPoly>,
        gamma: Vec<u32>,
    },
    NonMember,
    /// The search space exceeded the budget; nothing is claimed.
    Refused {
        reason: String,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Membership::Refused { .. })
    }
}

fn fp_values(f: &NCPoly) -> Result<Vec<u32>> {
    if !f.is_classical() || !f.shift().in_level(0) {
        return Err(Error::invalid(
            "degree-structural properties are defined for classical polynomials",
        ));
    }
    Ok(f.table()?.nums.into_iter().map(|v| v as u32).collect())
}

fn check_input(f: &NCPoly, spec: &StructureSpec) -> Result<Vec<u32>> {
    if f.p() != spec.p {
        return Err(Error::FieldMismatch {
            left: spec.p,
            right: f.p(),
        });
    }
    fp_values(f)
}

fn table_degree(p: u32, n: usize, vals: &[u32]) -> u32 {
    NCPoly::from_fp_table(p, n, vals).expect("table of right size").degree()
}

fn to_poly(p: u32, n: usize, vals: &[u32]) -> NCPoly {
    NCPoly::from_fp_table(p, n, vals).expect("table of right size")
}

/// Checks membership, using the structure-specific algorithm when one
/// exists and the generic witness search otherwise.
pub fn is_structured(f: &NCPoly, spec: &StructureSpec, caps: &Caps) -> Result<Membership> {
    check_input(f, spec)?;
    match spec.kind {
        StructureKind::DegreeAtMost => Ok(if f.degree() <= spec.d {
            Membership::Member {
                witness: vec![f.clone()],
                gamma: spec.gamma.clone().expect("identity"),
            }
        } else {
            Membership::NonMember
        }),
        StructureKind::Splitting if spec.d >= 1 => splitting_check(f, spec.d),
        StructureKind::SquareRoot => square_root_check(f, spec.d, caps),
        _ => is_structured_brute(f, spec, caps),
    }
}

/// All classical polynomials of degree `<= deg` in the variables `vars`,
/// as value tables, in order of increasing degree.
fn candidates(dom: &Domain, deg: u32, vars: &[usize]) -> Option<Vec<Vec<u32>>> {
    let p = dom.p();
    let field = dom.field();
    let mut monos: Vec<(u32, Vec<u32>)> = Vec::new();
    for idx in 0..dom.size() {
        let e = dom.point(idx).0;
        let s: u32 = e.iter().sum();
        if s <= deg && e.iter().enumerate().all(|(i, &ei)| ei == 0 || vars.contains(&i)) {
            let table = dom
                .points()
                .map(|x| {
                    x.coords()
                        .iter()
                        .zip(&e)
                        .fold(1, |acc, (&xi, &ei)| field.mul(acc, field.pow(xi, ei as u64)))
                })
                .collect();
            monos.push((s, table));
        }
    }
    let count = (p as u64).checked_pow(monos.len() as u32)?;
    if count > MAX_CANDIDATES {
        return None;
    }
    let size = dom.size() as usize;
    let mut out: Vec<(u32, Vec<u32>)> = (0..count)
        .map(|mut idx| {
            let mut table = vec![0u32; size];
            let mut degree = 0;
            for (s, mono) in &monos {
                let c = (idx % p as u64) as u32;
                idx /= p as u64;
                if c != 0 {
                    degree = degree.max(*s);
                    for (t, &m) in table.iter_mut().zip(mono) {
                        *t = field.add(*t, field.mul(c, m));
                    }
                }
            }
            (degree, table)
        })
        .collect();
    out.sort_by_key(|(d, _)| *d);
    Some(out.into_iter().map(|(_, t)| t).collect())
}

/// Generic search over witness tuples in degree-graded order.
pub fn is_structured_brute(f: &NCPoly, spec: &StructureSpec, caps: &Caps) -> Result<Membership> {
    let vals = check_input(f, spec)?;
    let p = spec.p;
    let n = f.n();
    if n > MAX_SEARCH_DIM {
        return Ok(Membership::Refused {
            reason: format!("generic search is limited to n <= {MAX_SEARCH_DIM}"),
        });
    }
    let dom = Domain::new(Fp::new(p)?, n)?;
    let all_vars: Vec<usize> = (0..n).collect();
    let mut sets = Vec::new();
    for &d in &spec.degrees {
        match candidates(&dom, d, &all_vars) {
            Some(c) => sets.push(c),
            None => {
                return Ok(Membership::Refused {
                    reason: format!("too many degree-{d} candidates in {n} variables"),
                })
            }
        }
    }
    let c = sets.len();
    if c == 0 {
        let g = spec.gamma.as_ref().map_or(vals[0], |g| g[0]);
        return Ok(if vals.iter().all(|&v| v == g) {
            Membership::Member {
                witness: vec![],
                gamma: vec![g],
            }
        } else {
            Membership::NonMember
        });
    }
    let tuples: u128 = sets.iter().map(|s| s.len() as u128).product();
    if caps.check_budget("structure witness search", tuples).is_err() {
        return Ok(Membership::Refused {
            reason: format!(
                "{tuples} witness tuples exceed the search budget {}",
                caps.search_budget
            ),
        });
    }
    let size = dom.size() as usize;
    let pw: Vec<usize> = (0..c).map(|i| (p as usize).pow(i as u32)).collect();
    let matches = |choice: &[usize]| -> Option<Vec<u32>> {
        match &spec.gamma {
            Some(g) => {
                for x in 0..size {
                    let key: usize = choice
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| sets[i][j][x] as usize * pw[i])
                        .sum();
                    if g[key] != vals[x] {
                        return None;
                    }
                }
                Some(g.clone())
            }
            None => {
                let mut g = vec![u32::MAX; p.pow(c as u32) as usize];
                for x in 0..size {
                    let key: usize = choice
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| sets[i][j][x] as usize * pw[i])
                        .sum();
                    if g[key] == u32::MAX {
                        g[key] = vals[x];
                    } else if g[key] != vals[x] {
                        return None;
                    }
                }
                Some(g.into_iter().map(|v| if v == u32::MAX { 0 } else { v }).collect())
            }
        }
    };
    let inner: u128 = sets[1..].iter().map(|s| s.len() as u128).product();
    let found = par::find_first(sets[0].len() as u64, |first| {
        let mut choice = vec![0usize; c];
        choice[0] = first as usize;
        for mut idx in 0..inner {
            for (i, slot) in choice.iter_mut().enumerate().skip(1) {
                *slot = (idx % sets[i].len() as u128) as usize;
                idx /= sets[i].len() as u128;
            }
            if matches(&choice).is_some() {
                return true;
            }
        }
        false
    });
    let Some(first) = found else {
        return Ok(Membership::NonMember);
    };
    let mut choice = vec![0usize; c];
    choice[0] = first as usize;
    for mut idx in 0..inner {
        for (i, slot) in choice.iter_mut().enumerate().skip(1) {
            *slot = (idx % sets[i].len() as u128) as usize;
            idx /= sets[i].len() as u128;
        }
        if let Some(gamma) = matches(&choice) {
            let witness = choice
                .iter()
                .enumerate()
                .map(|(i, &j)| to_poly(p, n, &sets[i][j]))
                .collect();
            return Ok(Membership::Member { witness, gamma });
        }
    }
    unreachable!("witness found in parallel search")
}

/// Whether `F` is a product of at most `d` polynomials of degree `<= 1`.
///
/// Peels one affine factor `ℓ` at a time: `F` must vanish on `{ℓ = 0}`,
/// and the quotient is determined off that hyperplane. On the hyperplane it
/// is extended along a line transversal to it with degree `<= p-2`; for
/// `d >= p` (possible only for `p >= 3`) the extensions that differ by
/// `(1 - ℓ^{p-1}) H` with `deg H <= d - p` are tried as well.
pub fn splitting_check(f: &NCPoly, d: u32) -> Result<Membership> {
    if d == 0 {
        return Err(Error::invalid("splitting needs d >= 1"));
    }
    let vals = fp_values(f)?;
    let p = f.p();
    let n = f.n();
    let dom = Domain::new(Fp::new(p)?, n)?;
    let gamma = StructureSpec::splitting(p, d)?.gamma.expect("product table");
    Ok(match split_rec(&dom, &vals, d) {
        Some(mut factors) => {
            while factors.len() < d as usize {
                factors.push(vec![1; vals.len()]);
            }
            Membership::Member {
                witness: factors.iter().map(|t| to_poly(p, n, t)).collect(),
                gamma,
            }
        }
        None => Membership::NonMember,
    })
}

fn split_rec(dom: &Domain, vals: &[u32], d: u32) -> Option<Vec<Vec<u32>>> {
    let p = dom.p();
    let n = dom.n();
    let field = dom.field();
    let deg = table_degree(p, n, vals);
    if deg > d {
        return None;
    }
    if deg <= 1 {
        return Some(vec![vals.to_vec()]);
    }
    let size = dom.size();
    for a_idx in 1..size {
        let a = dom.point(a_idx);
        let pivot = a.coords().iter().position(|&c| c != 0).expect("nonzero");
        if a.0[pivot] != 1 {
            continue;
        }
        let lin: Vec<u32> = dom
            .points()
            .map(|x| {
                x.coords()
                    .iter()
                    .zip(a.coords())
                    .fold(0, |acc, (&xi, &ai)| field.add(acc, field.mul(xi, ai)))
            })
            .collect();
        let step = dom.index_of(&crate::field::Point::unit(n, pivot).0);
        for b in 0..p {
            let ell: Vec<u32> = lin.iter().map(|&v| field.add(v, b)).collect();
            if (0..size as usize).any(|x| ell[x] == 0 && vals[x] != 0) {
                continue;
            }
            let mut g: Vec<u32> = (0..size as usize)
                .map(|x| {
                    if ell[x] == 0 {
                        0
                    } else {
                        field.mul(vals[x], field.inv(ell[x]))
                    }
                })
                .collect();
            for x in 0..size {
                if ell[x as usize] == 0 {
                    let mut y = x;
                    let mut acc = 0;
                    for _ in 1..p {
                        y = dom.add(y, step);
                        acc = field.add(acc, g[y as usize]);
                    }
                    g[x as usize] = field.neg(acc);
                }
            }
            let mut quotients = vec![g.clone()];
            if p > 2 && d >= p {
                let others: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
                let bump: Vec<u32> = ell.iter().map(|&v| field.sub(1, field.pow(v, p as u64 - 1))).collect();
                if let Some(hs) = candidates(dom, d - p, &others) {
                    for h in hs.into_iter().skip(1) {
                        quotients.push(
                            g.iter()
                                .zip(&h)
                                .zip(&bump)
                                .map(|((&gv, &hv), &bv)| field.add(gv, field.mul(hv, bv)))
                                .collect(),
                        );
                    }
                }
            }
            for q in quotients {
                if table_degree(p, n, &q) > d - 1 {
                    continue;
                }
                if let Some(mut rest) = split_rec(dom, &q, d - 1) {
                    let mut out = vec![ell.clone()];
                    out.append(&mut rest);
                    return Some(out);
                }
            }
        }
    }
    None
}

/// Whether `F = G^2` for a classical `G` of degree `<= d/2`.
///
/// For `p = 2`, `g^2 = g` pointwise, so this is `deg F <= d/2`. For odd `p`
/// a polynomial of degree `<= e` is determined by its values on the lower
/// set `{x ∈ [0,p)^n : Σ x_i <= e}`; every choice of square roots of `F` on
/// that set is interpolated in falling-factorial form and checked.
pub fn square_root_check(f: &NCPoly, d: u32, caps: &Caps) -> Result<Membership> {
    let vals = fp_values(f)?;
    let p = f.p();
    let n = f.n();
    let e = d / 2;
    let gamma = StructureSpec::square_root(p, d)?.gamma.expect("square table");
    if p == 2 {
        return Ok(if f.degree() <= e {
            Membership::Member {
                witness: vec![f.clone()],
                gamma,
            }
        } else {
            Membership::NonMember
        });
    }
    let field = Fp::new(p)?;
    let dom = Domain::new(field, n)?;
    let lower: Vec<u64> = (0..dom.size())
        .filter(|&i| dom.point(i).coords().iter().sum::<u32>() <= e)
        .collect();
    let mut lower = lower;
    lower.sort_by_key(|&i| (dom.point(i).coords().iter().sum::<u32>(), i));
    let sqrt = |v: u32| -> Option<u32> { (0..p).find(|&r| field.mul(r, r) == v) };
    let mut roots = Vec::with_capacity(lower.len());
    for &i in &lower {
        match sqrt(vals[i as usize]) {
            Some(r) => roots.push(r),
            None => return Ok(Membership::NonMember),
        }
    }
    let free: Vec<usize> = (0..lower.len()).filter(|&j| roots[j] != 0).collect();
    // G and -G are both roots; fix the sign of the first free value
    let patterns: u128 = if free.is_empty() { 1 } else { 1u128 << (free.len() - 1) };
    if caps.check_budget("square root sign patterns", patterns).is_err() {
        return Ok(Membership::Refused {
            reason: format!("{patterns} sign patterns exceed the search budget"),
        });
    }
    let points: Vec<Vec<u32>> = lower.iter().map(|&i| dom.point(i).0).collect();
    let falling = |x: u32, k: u32| -> u32 { (0..k).fold(1, |acc, j| field.mul(acc, field.sub(x, j % p))) };
    let basis = |a: &[u32], x: &[u32]| -> u32 {
        a.iter()
            .zip(x)
            .fold(1, |acc, (&ai, &xi)| field.mul(acc, falling(xi, ai)))
    };
    let all_points: Vec<Vec<u32>> = dom.points().map(|x| x.0).collect();
    let hit = par::find_first(patterns as u64, |pattern| {
        let mut g_vals = roots.clone();
        for (bit, &j) in free.iter().skip(1).enumerate() {
            if pattern >> bit & 1 == 1 {
                g_vals[j] = field.neg(g_vals[j]);
            }
        }
        let coeffs = newton_coeffs(field, &points, &g_vals, &basis);
        all_points.iter().enumerate().all(|(xi, x)| {
            let g = points.iter().zip(&coeffs).fold(0, |acc, (a, &c)| {
                if c == 0 {
                    acc
                } else {
                    field.add(acc, field.mul(c, basis(a, x)))
                }
            });
            field.mul(g, g) == vals[xi]
        })
    });
    Ok(match hit {
        None => Membership::NonMember,
        Some(pattern) => {
            let mut g_vals = roots.clone();
            for (bit, &j) in free.iter().skip(1).enumerate() {
                if pattern >> bit & 1 == 1 {
                    g_vals[j] = field.neg(g_vals[j]);
                }
            }
            let coeffs = newton_coeffs(field, &points, &g_vals, &basis);
            let table: Vec<u32> = all_points
                .iter()
                .map(|x| {
                    points
                        .iter()
                        .zip(&coeffs)
                        .fold(0, |acc, (a, &c)| field.add(acc, field.mul(c, basis(a, x))))
                })
                .collect();
            Membership::Member {
                witness: vec![to_poly(p, n, &table)],
                gamma,
            }
        }
    })
}

/// Coefficients `c_a` with `G(b) = Σ_{a <= b} c_a Π_i (b_i)_{a_i}` on a
/// lower set listed in graded order.
fn newton_coeffs(field: Fp, points: &[Vec<u32>], values: &[u32], basis: &dyn Fn(&[u32], &[u32]) -> u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; points.len()];
    for (j, b) in points.iter().enumerate() {
        let mut acc = values[j];
        for (i, a) in points[..j].iter().enumerate() {
            if coeffs[i] != 0 && a.iter().zip(b).all(|(x, y)| x <= y) {
                acc = field.sub(acc, field.mul(coeffs[i], basis(a, b)));
            }
        }
        let diag = basis(b, b);
        coeffs[j] = field.mul(acc, field.inv(diag));
    }
    coeffs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Locality {
    Member,
    /// `deg F` exceeds `p σ Δ`; no scan was needed.
    NonMemberByDegree {
        degree: u32,
        bound: u32,
    },
    /// Some hyperplane restriction is also a non-member.
    NonMemberWithWitness {
        hyperplane: crate::field::AffineSubspace,
    },
    /// Every hyperplane restriction is a member although `F` is not.
    LocalityException,
    Undecided {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalityReport {
    pub spec: String,
    pub global: Membership,
    pub hyperplanes: usize,
    pub restricted_members: usize,
    pub restricted_non_members: usize,
    pub restricted_refused: usize,
    /// Members whose restriction to some hyperplane is not a member; should
    /// always be empty.
    pub closure_violations: Vec<crate::field::AffineSubspace>,
    pub classification: Locality,
}

/// Membership of `F` and of `F|_H` for every affine hyperplane `H`.
pub fn hyperplane_locality_scan(f: &NCPoly, specs: &[StructureSpec], caps: &Caps) -> Result<Vec<LocalityReport>> {
    let field = Fp::new(f.p())?;
    let hyperplanes = enumerate_hyperplanes(field, f.n())?;
    let restrictions: Vec<NCPoly> = hyperplanes.iter().map(|h| f.restrict(h)).collect::<Result<_>>()?;
    specs
        .iter()
        .map(|spec| scan_one(f, spec, &hyperplanes, &restrictions, caps))
        .collect()
}

fn scan_one(
    f: &NCPoly,
    spec: &StructureSpec,
    hyperplanes: &[crate::field::AffineSubspace],
    restrictions: &[NCPoly],
    caps: &Caps,
) -> Result<LocalityReport> {
    let bound = spec.p * spec.scope() as u32 * spec.max_degree();
    if f.degree() > bound {
        return Ok(LocalityReport {
            spec: spec.label(),
            global: Membership::NonMember,
            hyperplanes: hyperplanes.len(),
            restricted_members: 0,
            restricted_non_members: 0,
            restricted_refused: 0,
            closure_violations: vec![],
            classification: Locality::NonMemberByDegree {
                degree: f.degree(),
                bound,
            },
        });
    }
    let global = is_structured(f, spec, caps)?;
    let local: Vec<Membership> = restrictions
        .par_iter()
        .map(|r| is_structured(r, spec, caps))
        .collect::<Result<_>>()?;
    let members = local.iter().filter(|m| m.is_member()).count();
    let refused = local.iter().filter(|m| !m.is_decided()).count();
    let non_members = local.len() - members - refused;
    let first_non_member = local
        .iter()
        .position(|m| matches!(m, Membership::NonMember))
        .map(|i| hyperplanes[i].clone());
    let closure_violations = if global.is_member() {
        local
            .iter()
            .zip(hyperplanes)
            .filter(|(m, _)| matches!(m, Membership::NonMember))
            .map(|(_, h)| h.clone())
            .collect()
    } else {
        vec![]
    };
    let classification = match (&global, first_non_member) {
        (Membership::Member { .. }, _) => Locality::Member,
        (Membership::Refused { reason }, _) => Locality::Undecided { reason: reason.clone() },
        (Membership::NonMember, Some(h)) => Locality::NonMemberWithWitness { hyperplane: h },
        (Membership::NonMember, None) if refused > 0 => Locality::Undecided {
            reason: format!("{refused} restrictions were not decided"),
        },
        (Membership::NonMember, None) => Locality::LocalityException,
    };
    Ok(LocalityReport {
        spec: spec.label(),
        global,
        hyperplanes: hyperplanes.len(),
        restricted_members: members,
        restricted_non_members: non_members,
        restricted_refused: refused,
        closure_violations,
        classification,
    })
}

/// Re-evaluates a witness against `F`.
pub fn witness_is_valid(f: &NCPoly, spec: &StructureSpec, m: &Membership) -> Result<bool> {
    let Membership::Member { witness, gamma } = m else {
        return Ok(false);
    };
    let vals = check_input(f, spec)?;
    if witness.len() != spec.scope() {
        return Ok(false);
    }
    for (w, &d) in witness.iter().zip(&spec.degrees) {
        if !w.is_classical() || w.degree() > d {
            return Ok(false);
        }
    }
    if let Some(g) = &spec.gamma {
        if g != gamma {
            return Ok(false);
        }
    }
    let tables: Vec<Vec<u32>> = witness.iter().map(fp_values).collect::<Result<_>>()?;
    let p = spec.p as usize;
    Ok((0..vals.len()).all(|x| {
        let key: usize = tables
            .iter()
            .enumerate()
            .map(|(i, t)| t[x] as usize * p.pow(i as u32))
            .sum();
        gamma[key] == vals[x]
    }))
}
