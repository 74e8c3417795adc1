//! Induced constraints on `[R]`-valued functions, the subspace tester, and
//! exact or sampled rejection probabilities.

use crate::config::{pow_u128, Caps};
use crate::constraints::{dependency_set, dependency_sets, is_consistent, AffineConstraint, InducedConstraint};
use crate::error::{Error, Result};
use crate::factor::PolynomialFactor;
use crate::field::{Domain, Fp, Point};
use crate::par;
use crate::poly::NCPoly;
use crate::torus::TorusValue;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A function `F_p^n → {1, ..., R}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFunction {
    domain: Domain,
    r: u32,
    values: Vec<u8>,
}

impl RFunction {
    pub fn new(p: u32, n: usize, r: u32, values: Vec<u8>) -> Result<Self> {
        let domain = Domain::new(Fp::new(p)?, n)?;
        if !(1..=255).contains(&r) {
            return Err(Error::invalid(format!("alphabet size {r} must be in 1..=255")));
        }
        if values.len() as u64 != domain.size() {
            return Err(Error::invalid(format!(
                "table has {} entries, F_{p}^{n} has {}",
                values.len(),
                domain.size()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v == 0 || v as u32 > r) {
            return Err(Error::invalid(format!("value {v} is outside 1..={r}")));
        }
        Ok(RFunction { domain, r, values })
    }

    pub fn from_fn(p: u32, n: usize, r: u32, f: impl Fn(&Point) -> u8) -> Result<Self> {
        let domain = Domain::new(Fp::new(p)?, n)?;
        let values = domain.points().map(|x| f(&x)).collect();
        Self::new(p, n, r, values)
    }

    /// The F_p-valued view of a classical polynomial: `x ↦ |P(x)| + 1`, with
    /// `R = p`.
    pub fn from_classical(poly: &NCPoly) -> Result<Self> {
        let vals = poly.fp_table()?;
        Self::new(
            poly.p(),
            poly.n(),
            poly.p(),
            vals.into_iter().map(|v| v as u8 + 1).collect(),
        )
    }

    pub fn random(p: u32, n: usize, r: u32, seed: u64) -> Result<Self> {
        let domain = Domain::new(Fp::new(p)?, n)?;
        let mut rng = par::rng(seed, 0);
        let values = (0..domain.size()).map(|_| rng.gen_range(1..=r) as u8).collect();
        Self::new(p, n, r, values)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn p(&self) -> u32 {
        self.domain.p()
    }

    pub fn n(&self) -> usize {
        self.domain.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn at(&self, idx: u64) -> u8 {
        self.values[idx as usize]
    }

    /// `x ↦ f(A x)`.
    pub fn compose_affine(&self, map: &crate::field::AffineMap) -> RFunction {
        let perm = map.permutation(&self.domain);
        RFunction {
            domain: self.domain,
            r: self.r,
            values: perm.iter().map(|&i| self.values[i as usize]).collect(),
        }
    }

    fn with_values(&self, values: Vec<u8>) -> RFunction {
        RFunction {
            domain: self.domain,
            r: self.r,
            values,
        }
    }
}

/// The induced constraints `(A, σ)` forbidding every value pattern that
/// breaks one of the `(d, 0)`-dependencies of `A`, for F_p-valued functions
/// encoded with values `1..=p`. For the cube on three variables and `d = 1`
/// these are the patterns with `σ_1 - σ_2 - σ_3 + σ_4 ≠ 0`.
pub fn dependency_family(field: Fp, a: &AffineConstraint, d: u32, caps: &Caps) -> Result<Vec<InducedConstraint>> {
    let p = field.p();
    let set = dependency_set(field, a, d, 0, caps)?;
    let m = a.size();
    caps.check("value patterns", pow_u128(p as u64, m as u64))?;
    let mut out = Vec::new();
    for mut idx in 0..(p as u64).pow(m as u32) {
        let v: Vec<u64> = (0..m)
            .map(|_| {
                let x = idx % p as u64;
                idx /= p as u64;
                x
            })
            .collect();
        let broken = set
            .tuples
            .iter()
            .any(|l| l.iter().zip(&v).map(|(&a, &b)| a * b).sum::<u64>() % p as u64 != 0);
        if broken {
            let sigma = v.iter().map(|&x| x as u32 + 1).collect();
            out.push(InducedConstraint {
                constraint: a.clone(),
                sigma,
            });
        }
    }
    Ok(out)
}

/// The affinity family: forbidden patterns of `(x, x+y, x+z, x+y+z)` for
/// functions of degree at most 1.
pub fn affinity_family(p: u32, caps: &Caps) -> Result<Vec<InducedConstraint>> {
    dependency_family(Fp::new(p)?, &AffineConstraint::cube(3), 1, caps)
}

/// `ℓ` for a collection: the largest arity.
pub fn collection_arity(collection: &[InducedConstraint]) -> usize {
    collection.iter().map(|c| c.ell()).max().unwrap_or(1)
}

fn check_collection(f: &RFunction, collection: &[InducedConstraint]) -> Result<()> {
    for ic in collection {
        if ic.sigma.iter().any(|&s| s == 0 || s > f.r) {
            return Err(Error::invalid(format!("pattern {:?} is outside 1..={}", ic.sigma, f.r)));
        }
        ic.constraint.check_field(f.domain.field())?;
    }
    Ok(())
}

/// Whether `(f(L_1(xs)), ..., f(L_m(xs))) = σ`; `xs` are packed indices and
/// only the first `ℓ` of them are used.
fn induces_packed(f: &RFunction, ic: &InducedConstraint, xs: &[u64]) -> bool {
    let ell = ic.ell();
    ic.constraint
        .forms()
        .iter()
        .zip(&ic.sigma)
        .all(|(form, &s)| f.at(f.domain.combine(form.weights(), &xs[..ell])) as u32 == s)
}

pub fn induces_at(f: &RFunction, ic: &InducedConstraint, xs: &[Point]) -> Result<bool> {
    if xs.len() != ic.ell() {
        return Err(Error::ArityMismatch {
            expected: ic.ell(),
            got: xs.len(),
        });
    }
    let packed: Vec<u64> = xs.iter().map(|x| f.domain.index(x)).collect::<Result<_>>()?;
    Ok(induces_packed(f, ic, &packed))
}

fn unpack(idx: u64, size: u64, ell: usize) -> Vec<u64> {
    let mut idx = idx;
    (0..ell)
        .map(|_| {
            let x = idx % size;
            idx /= size;
            x
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeReport {
    pub free: bool,
    /// Index of an induced constraint and a tuple inducing it.
    pub witness: Option<(usize, Vec<Point>)>,
}

/// Exhaustive search for an induced copy of any constraint in the collection.
pub fn is_free(f: &RFunction, collection: &[InducedConstraint], caps: &Caps) -> Result<FreeReport> {
    check_collection(f, collection)?;
    let size = f.domain.size();
    for (i, ic) in collection.iter().enumerate() {
        let total = pow_u128(size, ic.ell() as u64);
        caps.check("freeness search", total)?;
        if let Some(idx) = par::find_first(total as u64, |idx| induces_packed(f, ic, &unpack(idx, size, ic.ell()))) {
            let xs = unpack(idx, size, ic.ell())
                .into_iter()
                .map(|x| f.domain.point(x))
                .collect();
            return Ok(FreeReport {
                free: false,
                witness: Some((i, xs)),
            });
        }
    }
    Ok(FreeReport {
        free: true,
        witness: None,
    })
}

fn is_free_quiet(f: &RFunction, collection: &[InducedConstraint]) -> bool {
    let size = f.domain.size();
    collection.iter().all(|ic| {
        let total = size.pow(ic.ell() as u32);
        (0..total).all(|idx| !induces_packed(f, ic, &unpack(idx, size, ic.ell())))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RejectionMode {
    Exact,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RejectionReport {
    pub mode: RejectionMode,
    pub ell: usize,
    pub probability: f64,
    /// Exact mode: number of `ℓ`-tuples inducing some constraint.
    pub inducing_tuples: Option<u128>,
    pub total_tuples: u128,
    /// Sampled mode: Wilson 95% interval.
    pub interval: Option<(f64, f64)>,
}

fn induces_any(f: &RFunction, collection: &[InducedConstraint], xs: &[u64]) -> bool {
    collection.iter().any(|ic| induces_packed(f, ic, xs))
}

/// Fraction of `ℓ`-tuples (`ℓ` the largest arity) inducing some constraint.
pub fn rejection_probability(
    f: &RFunction,
    collection: &[InducedConstraint],
    mode: RejectionMode,
    caps: &Caps,
) -> Result<RejectionReport> {
    check_collection(f, collection)?;
    let ell = collection_arity(collection);
    let size = f.domain.size();
    let total = pow_u128(size, ell as u64);
    match mode {
        RejectionMode::Exact => {
            caps.check("rejection probability tuples", total)?;
            let count = par::count(total as u64, |idx| induces_any(f, collection, &unpack(idx, size, ell)));
            Ok(RejectionReport {
                mode,
                ell,
                probability: count as f64 / total as f64,
                inducing_tuples: Some(count as u128),
                total_tuples: total,
                interval: None,
            })
        }
        RejectionMode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::invalid("need at least one sample"));
            }
            let hits = par::count(samples, |s| {
                let mut rng = par::rng(seed, s);
                let xs: Vec<u64> = (0..ell).map(|_| rng.gen_range(0..size)).collect();
                induces_any(f, collection, &xs)
            });
            Ok(RejectionReport {
                mode,
                ell,
                probability: hits as f64 / samples as f64,
                inducing_tuples: None,
                total_tuples: total,
                interval: Some(wilson_interval(hits, samples)),
            })
        }
    }
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(hits: u64, n: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054;
    let n = n as f64;
    let phat = hits as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (phat + z * z / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestOutcome {
    pub accept: bool,
    pub queries: u64,
    /// The random points `x_1, ..., x_ℓ` spanning the tested subspace.
    pub points: Vec<Point>,
    /// On rejection, the index of the induced constraint and the inducing
    /// tuple in ambient coordinates.
    pub witness: Option<(usize, Vec<Point>)>,
}

/// One run of the tester: draw `x_1, ..., x_ℓ`, restrict `f` to
/// `H = x_1 + span(x_2, ..., x_ℓ)` (as a function on `F_p^{ℓ-1}`), and reject
/// if the restriction induces a constraint. A copy inside the restriction is
/// a copy in `f`, because every form has first weight 1; so functions that
/// are free are never rejected.
pub fn subspace_test(
    f: &RFunction,
    collection: &[InducedConstraint],
    ell_max: usize,
    seed: u64,
) -> Result<TestOutcome> {
    check_collection(f, collection)?;
    if ell_max == 0 {
        return Err(Error::invalid("ℓ_max must be at least 1"));
    }
    let dom = f.domain;
    let mut rng = par::rng(seed, 0);
    let xs: Vec<u64> = (0..ell_max).map(|_| rng.gen_range(0..dom.size())).collect();
    let local = Domain::new(dom.field(), ell_max - 1)?;
    let embed = |mu: u64| -> u64 {
        let mut coeffs = vec![1u32];
        coeffs.extend(local.point(mu).0);
        dom.combine(&coeffs, &xs)
    };
    let values: Vec<u8> = (0..local.size()).map(|mu| f.at(embed(mu))).collect();
    let g = RFunction {
        domain: local,
        r: f.r,
        values,
    };
    let mut witness = None;
    'outer: for (i, ic) in collection.iter().enumerate() {
        let total = local.size().pow(ic.ell() as u32);
        for idx in 0..total {
            let zs = unpack(idx, local.size(), ic.ell());
            if induces_packed(&g, ic, &zs) {
                // z_1 ↦ x_1 + M z_1, z_t ↦ M z_t for t >= 2
                let m_of = |z: u64| -> u64 { dom.sub(embed(z), xs[0]) };
                let mut ambient: Vec<u64> = zs.iter().map(|&z| m_of(z)).collect();
                ambient[0] = embed(zs[0]);
                debug_assert!(induces_packed(f, ic, &ambient));
                witness = Some((i, ambient.into_iter().map(|x| dom.point(x)).collect()));
                break 'outer;
            }
        }
    }
    Ok(TestOutcome {
        accept: witness.is_none(),
        queries: local.size(),
        points: xs.into_iter().map(|x| dom.point(x)).collect(),
        witness,
    })
}

/// Runs `trials` independent tests with seeds derived from `seed`.
pub fn subspace_test_trials(
    f: &RFunction,
    collection: &[InducedConstraint],
    ell_max: usize,
    trials: u64,
    seed: u64,
) -> Result<u64> {
    check_collection(f, collection)?;
    let rejections = par::map_chunks(trials, |range| {
        range
            .map(|t| {
                subspace_test(
                    f,
                    collection,
                    ell_max,
                    seed.wrapping_add(t.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
                )
                .map(|o| !o.accept as u64)
            })
            .sum::<Result<u64>>()
    });
    rejections.into_iter().sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    /// Exact distance when all candidate functions could be enumerated.
    pub exact: Option<f64>,
    pub lower: f64,
    /// `None` when no free function was found.
    pub upper: Option<f64>,
    pub method: String,
}

/// Largest number of candidate functions tried by the exact distance search.
const DISTANCE_ENUMERATION_LIMIT: u128 = 1 << 20;

/// Hamming distance from `f` to the set of functions free of the collection.
pub fn distance_to_free(f: &RFunction, collection: &[InducedConstraint], caps: &Caps) -> Result<DistanceReport> {
    check_collection(f, collection)?;
    let size = f.domain.size();
    let ell = collection_arity(collection);
    caps.check("distance tuples", pow_u128(size, ell as u64))?;
    let candidates = pow_u128(f.r as u64, size);
    if candidates <= DISTANCE_ENUMERATION_LIMIT {
        let r = f.r as u64;
        let best = par::map_chunks(candidates as u64, |range| {
            let mut best: Option<u64> = None;
            for mut idx in range {
                let values: Vec<u8> = (0..size)
                    .map(|_| {
                        let v = idx % r;
                        idx /= r;
                        v as u8 + 1
                    })
                    .collect();
                let dist = values.iter().zip(&f.values).filter(|(a, b)| a != b).count() as u64;
                if best.is_some_and(|b| b <= dist) {
                    continue;
                }
                if is_free_quiet(&f.with_values(values), collection) {
                    best = Some(dist);
                }
            }
            best
        })
        .into_iter()
        .flatten()
        .min();
        let exact = best.map(|b| b as f64 / size as f64);
        return Ok(DistanceReport {
            exact,
            lower: exact.unwrap_or(1.0),
            upper: exact,
            method: format!("exhaustive over {candidates} functions"),
        });
    }
    let report = rejection_probability(f, collection, RejectionMode::Exact, caps)?;
    let inducing = report.inducing_tuples.unwrap_or(0);
    let per_point: u128 = collection.iter().map(|c| c.size() as u128).sum::<u128>() * pow_u128(size, ell as u64 - 1);
    let lower = inducing.div_ceil(per_point.max(1)) as f64 / size as f64;
    let upper = greedy_repair(f, collection, caps)?.map(|d| d as f64 / size as f64);
    Ok(DistanceReport {
        exact: None,
        lower,
        upper,
        method: "counting lower bound and greedy repair upper bound".into(),
    })
}

fn count_inducing(f: &RFunction, collection: &[InducedConstraint]) -> u64 {
    let size = f.domain.size();
    let ell = collection_arity(collection);
    par::count(size.pow(ell as u32), |idx| {
        induces_any(f, collection, &unpack(idx, size, ell))
    })
}

/// Repeatedly applies the single-point change that removes the most induced
/// copies; returns the number of changed points once the function is free.
fn greedy_repair(f: &RFunction, collection: &[InducedConstraint], caps: &Caps) -> Result<Option<u64>> {
    let size = f.domain.size();
    let ell = collection_arity(collection);
    let step_cost = pow_u128(size, ell as u64) * size as u128 * f.r as u128;
    if caps.check_budget("greedy repair step", step_cost).is_err() {
        return Ok(None);
    }
    let mut g = f.clone();
    let mut current = count_inducing(&g, collection);
    let mut changed: BTreeSet<u64> = BTreeSet::new();
    for _ in 0..size {
        if current == 0 {
            return Ok(Some(changed.len() as u64));
        }
        let mut best: Option<(u64, u64, u8)> = None;
        for x in 0..size {
            for v in 1..=f.r as u8 {
                if v == g.values[x as usize] {
                    continue;
                }
                let mut values = g.values.clone();
                values[x as usize] = v;
                let c = count_inducing(&g.with_values(values), collection);
                if best.is_none_or(|(b, _, _)| c < b) {
                    best = Some((c, x, v));
                }
            }
        }
        let Some((c, x, v)) = best else { break };
        if c >= current {
            break;
        }
        g.values[x as usize] = v;
        current = c;
        if f.values[x as usize] == v {
            changed.remove(&x);
        } else {
            changed.insert(x);
        }
    }
    Ok((current == 0).then_some(changed.len() as u64))
}

/// The value set of `f` on every atom of a factor.
#[derive(Clone, Debug, PartialEq)]
pub struct BigPicture {
    pub factor: PolynomialFactor,
    /// Atom code to the set of values attained on that atom.
    pub mapping: BTreeMap<u64, BTreeSet<u8>>,
}

#[derive(Serialize)]
struct BigPictureEntry {
    atom: Vec<String>,
    values: Vec<u8>,
}

impl Serialize for BigPicture {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<BigPictureEntry> = self
            .mapping
            .iter()
            .map(|(&code, vals)| BigPictureEntry {
                atom: self.factor.decode(code).iter().map(|v| v.to_string()).collect(),
                values: vals.iter().copied().collect(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl BigPicture {
    pub fn values_on(&self, atom: &[TorusValue]) -> BTreeSet<u8> {
        self.mapping.get(&self.factor.encode(atom)).cloned().unwrap_or_default()
    }
}

pub fn big_picture(f: &RFunction, b: &PolynomialFactor, caps: &Caps) -> Result<BigPicture> {
    if b.n() != f.n() || b.p() != f.p() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: b.n(),
        });
    }
    let codes = b.atom_codes(caps)?;
    let mut mapping: BTreeMap<u64, BTreeSet<u8>> = BTreeMap::new();
    for (code, &v) in codes.into_iter().zip(&f.values) {
        mapping.entry(code).or_default().insert(v);
    }
    Ok(BigPicture {
        factor: b.clone(),
        mapping,
    })
}

/// Searches for atoms `b_1, ..., b_m`, consistent with the constraint for
/// the given degrees and depths, with `σ_j ∈ g(b_j)` for every `j`.
pub fn partially_induces(
    g: &BigPicture,
    degrees: &[u32],
    depths: &[u32],
    ic: &InducedConstraint,
    caps: &Caps,
) -> Result<Option<Vec<Vec<TorusValue>>>> {
    let field = Fp::new(g.factor.p())?;
    if degrees.len() != g.factor.complexity() {
        return Err(Error::ArityMismatch {
            expected: g.factor.complexity(),
            got: degrees.len(),
        });
    }
    let sets = dependency_sets(field, &ic.constraint, degrees, depths, caps)?;
    let options: Vec<Vec<u64>> = ic
        .sigma
        .iter()
        .map(|&s| {
            g.mapping
                .iter()
                .filter(|(_, vals)| vals.contains(&(s as u8)))
                .map(|(&code, _)| code)
                .collect()
        })
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return Ok(None);
    }
    let space: u128 = options.iter().map(|o| o.len() as u128).product();
    caps.check_budget("partial induction search", space)?;
    let mut chosen: Vec<Vec<TorusValue>> = Vec::new();
    if search_atoms(g, &sets, &options, &mut chosen)? {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn search_atoms(
    g: &BigPicture,
    sets: &[crate::constraints::DependencySet],
    options: &[Vec<u64>],
    chosen: &mut Vec<Vec<TorusValue>>,
) -> Result<bool> {
    let j = chosen.len();
    if j == options.len() {
        return is_consistent(sets, chosen);
    }
    for &code in &options[j] {
        chosen.push(g.factor.decode(code));
        if prefix_consistent(sets, chosen) && search_atoms(g, sets, options, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Checks the dependencies supported on the already chosen positions.
fn prefix_consistent(sets: &[crate::constraints::DependencySet], chosen: &[Vec<TorusValue>]) -> bool {
    let j = chosen.len();
    sets.iter().enumerate().all(|(i, s)| {
        let q = s.modulus() as u128;
        s.tuples.iter().filter(|l| l[j..].iter().all(|&v| v == 0)).all(|l| {
            let sum: u128 = l[..j]
                .iter()
                .zip(chosen)
                .map(|(&lv, row)| lv as u128 * row[i].numerator_at(s.k) as u128)
                .sum();
            sum.is_multiple_of(q)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AffineMap;

    fn caps() -> Caps {
        Caps::default()
    }

    fn xy() -> RFunction {
        RFunction::from_classical(&NCPoly::classical(2, 2, &[(vec![1, 1], 1)]).unwrap()).unwrap()
    }

    #[test]
    fn affinity_family_shape() {
        let fam = affinity_family(2, &caps()).unwrap();
        assert_eq!(fam.len(), 8);
        for ic in &fam {
            let s: u32 = ic.sigma.iter().map(|&v| v - 1).sum();
            assert_eq!(s % 2, 1);
        }
    }

    #[test]
    fn induces_examples() {
        let cube = AffineConstraint::cube(3);
        let constant = RFunction::new(2, 2, 2, vec![2; 4]).unwrap();
        let ic = InducedConstraint {
            constraint: cube.clone(),
            sigma: vec![2; 4],
        };
        let pts = vec![Point(vec![1, 0]), Point(vec![0, 1]), Point(vec![1, 1])];
        assert!(induces_at(&constant, &ic, &pts).unwrap());
        let zeros = vec![Point(vec![0, 0]); 3];
        let f = xy();
        let ic1 = InducedConstraint {
            constraint: cube.clone(),
            sigma: vec![1; 4],
        };
        assert!(induces_at(&f, &ic1, &zeros).unwrap());
        assert!(!induces_at(&f, &ic, &zeros).unwrap());
        assert!(induces_at(&f, &ic, &zeros[..2]).is_err());
    }

    #[test]
    fn freeness_examples() {
        let fam = affinity_family(2, &caps()).unwrap();
        let lin = RFunction::from_classical(&NCPoly::linear(2, &[1, 1, 0]).unwrap()).unwrap();
        assert!(is_free(&lin, &fam, &caps()).unwrap().free);
        let f = RFunction::from_classical(&NCPoly::classical(2, 3, &[(vec![1, 1, 0], 1)]).unwrap()).unwrap();
        let r = is_free(&f, &fam, &caps()).unwrap();
        assert!(!r.free);
        let (i, xs) = r.witness.unwrap();
        assert!(induces_at(&f, &fam[i], &xs).unwrap());
        assert!(is_free(&f, &[], &caps()).unwrap().free);
    }

    #[test]
    fn rejection_of_xy_is_three_eighths() {
        let fam = affinity_family(2, &caps()).unwrap();
        let r = rejection_probability(&xy(), &fam, RejectionMode::Exact, &caps()).unwrap();
        assert_eq!(r.probability, 0.375);
        assert_eq!(r.inducing_tuples, Some(24));
        assert_eq!(r.total_tuples, 64);
        // independent count: y1 z2 + y2 z1 = 1
        let mut c = 0;
        for y in 0..4u32 {
            for z in 0..4u32 {
                if ((y & 1) * (z >> 1) + (y >> 1) * (z & 1)) % 2 == 1 {
                    c += 1;
                }
            }
        }
        assert_eq!(c * 4, 24);
    }

    #[test]
    fn sampled_rejection_covers_exact() {
        let fam = affinity_family(2, &caps()).unwrap();
        let exact = rejection_probability(&xy(), &fam, RejectionMode::Exact, &caps())
            .unwrap()
            .probability;
        let s = rejection_probability(
            &xy(),
            &fam,
            RejectionMode::Sampled {
                samples: 20_000,
                seed: 3,
            },
            &caps(),
        )
        .unwrap();
        let (lo, hi) = s.interval.unwrap();
        assert!(lo <= exact && exact <= hi);
    }

    #[test]
    fn subspace_tester_examples() {
        let fam = affinity_family(2, &caps()).unwrap();
        let lin = RFunction::from_classical(&NCPoly::linear(2, &[1, 0, 1, 1]).unwrap()).unwrap();
        assert_eq!(subspace_test_trials(&lin, &fam, 4, 500, 1).unwrap(), 0);
        let cubic = RFunction::from_classical(
            &NCPoly::classical(2, 4, &[(vec![1, 1, 1, 0], 1), (vec![0, 1, 0, 1], 1)]).unwrap(),
        )
        .unwrap();
        assert!(subspace_test_trials(&cubic, &fam, 3, 500, 1).unwrap() > 0);
        let out = subspace_test(&cubic, &fam, 4, 7).unwrap();
        assert!(out.queries <= 16);
        if let Some((i, xs)) = out.witness {
            assert!(induces_at(&cubic, &fam[i], &xs).unwrap());
        }
        let single = InducedConstraint::new(vec![crate::field::AffineForm::identity(1)], vec![2]).unwrap();
        let f = RFunction::new(2, 2, 2, vec![1, 1, 1, 2]).unwrap();
        for seed in 0..20 {
            let o = subspace_test(&f, std::slice::from_ref(&single), 1, seed).unwrap();
            assert_eq!(o.queries, 1);
            let x = f.domain().index(&o.points[0]).unwrap();
            assert_eq!(o.accept, f.at(x) != 2);
        }
    }

    #[test]
    fn distance_examples() {
        let fam = affinity_family(2, &caps()).unwrap();
        let lin = RFunction::from_classical(&NCPoly::linear(2, &[1, 1]).unwrap()).unwrap();
        assert_eq!(distance_to_free(&lin, &fam, &caps()).unwrap().exact, Some(0.0));
        let mut v = lin.values().to_vec();
        v[2] = 3 - v[2];
        let one_off = RFunction::new(2, 2, 2, v).unwrap();
        let d = distance_to_free(&one_off, &fam, &caps()).unwrap();
        assert_eq!(d.exact, Some(0.25));
        // exhaustive oracle written out: nearest affine function
        let mut best = 4;
        for g in 0..16u32 {
            let vals: Vec<u8> = (0..4).map(|i| (g >> i & 1) as u8 + 1).collect();
            let gf = RFunction::new(2, 2, 2, vals.clone()).unwrap();
            if is_free(&gf, &fam, &caps()).unwrap().free {
                best = best.min(vals.iter().zip(one_off.values()).filter(|(a, b)| a != b).count());
            }
        }
        assert_eq!(d.exact, Some(best as f64 / 4.0));
    }

    #[test]
    fn distance_bounds_bracket() {
        let fam = affinity_family(2, &caps()).unwrap();
        let f = RFunction::random(2, 3, 2, 5).unwrap();
        let exact = distance_to_free(&f, &fam, &caps()).unwrap().exact.unwrap();
        let big = Caps::default();
        let rep = rejection_probability(&f, &fam, RejectionMode::Exact, &big).unwrap();
        let lower = rep.inducing_tuples.unwrap().div_ceil(4 * 64) as f64 / 8.0;
        assert!(lower <= exact);
        let ub = greedy_repair(&f, &fam, &big).unwrap().unwrap() as f64 / 8.0;
        assert!(exact <= ub);
    }

    #[test]
    fn big_picture_examples() {
        let b = PolynomialFactor::new(2, 2, vec![NCPoly::coordinate(2, 2, 0)]).unwrap();
        let constant = RFunction::new(2, 2, 3, vec![3; 4]).unwrap();
        let bp = big_picture(&constant, &b, &caps()).unwrap();
        assert!(bp.mapping.values().all(|s| s.len() == 1 && s.contains(&3)));
        let ind = RFunction::from_fn(2, 2, 2, |x| if x.0[0] == 1 { 2 } else { 1 }).unwrap();
        let bp = big_picture(&ind, &b, &caps()).unwrap();
        assert_eq!(bp.values_on(&[TorusValue::new(2, 1, 0)]), BTreeSet::from([2]));
        assert_eq!(bp.values_on(&[TorusValue::zero(2)]), BTreeSet::from([1]));
    }

    #[test]
    fn partial_induction_examples() {
        let b = PolynomialFactor::new(2, 3, vec![NCPoly::coordinate(2, 3, 0)]).unwrap();
        let constant = RFunction::new(2, 3, 2, vec![1; 8]).unwrap();
        let bp = big_picture(&constant, &b, &caps()).unwrap();
        let ic = InducedConstraint {
            constraint: AffineConstraint::cube(3),
            sigma: vec![1; 4],
        };
        assert!(partially_induces(&bp, &[1], &[0], &ic, &caps()).unwrap().is_some());
        let ic2 = InducedConstraint {
            constraint: AffineConstraint::cube(3),
            sigma: vec![1, 1, 1, 2],
        };
        assert!(partially_induces(&bp, &[1], &[0], &ic2, &caps()).unwrap().is_none());
        // f induces ⇒ big picture partially induces
        let fam = affinity_family(2, &caps()).unwrap();
        let f = RFunction::from_classical(&NCPoly::classical(2, 3, &[(vec![1, 1, 0], 1)]).unwrap()).unwrap();
        let b2 = PolynomialFactor::new(2, 3, vec![NCPoly::coordinate(2, 3, 0), NCPoly::coordinate(2, 3, 1)]).unwrap();
        let bp2 = big_picture(&f, &b2, &caps()).unwrap();
        for ic in &fam {
            if !is_free(&f, std::slice::from_ref(ic), &caps()).unwrap().free {
                assert!(partially_induces(&bp2, &[1, 1], &[0, 0], ic, &caps())
                    .unwrap()
                    .is_some());
            }
        }
    }

    #[test]
    fn rejection_is_affine_invariant() {
        let fam = affinity_family(2, &caps()).unwrap();
        let field = Fp::new(2).unwrap();
        let mut rng = par::rng(9, 0);
        for seed in 0..5 {
            let f = RFunction::random(2, 3, 2, seed).unwrap();
            let g = f.compose_affine(&AffineMap::random(field, 3, &mut rng));
            let a = rejection_probability(&f, &fam, RejectionMode::Exact, &caps()).unwrap();
            let b = rejection_probability(&g, &fam, RejectionMode::Exact, &caps()).unwrap();
            assert_eq!(a.inducing_tuples, b.inducing_tuples);
        }
    }
}
