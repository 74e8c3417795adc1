//! Polynomial factors: atoms, uniformity certificates, refinement and
//! equidistribution over affine constraints.

use crate::config::{pow_u128, Caps};
use crate::constraints::{dependency_sets, dependent_atom_count, is_consistent, AffineConstraint};
use crate::error::{Error, Result};
use crate::field::{echelon, rank, Domain, Fp, Point};
use crate::gowers::{gowers_norm, EvalMode, TableFn};
use crate::par;
use crate::poly::{LevelTable, NCPoly};
use crate::torus::{modulus, TorusValue};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// An ordered list of shift-free polynomials on a common `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFactor {
    p: u32,
    n: usize,
    polys: Vec<NCPoly>,
}

impl Serialize for PolynomialFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.polys.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolynomialFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let polys = Vec::<NCPoly>::deserialize(d)?;
        let first = polys
            .first()
            .ok_or_else(|| serde::de::Error::custom("factor file lists no polynomials"))?;
        PolynomialFactor::new(first.p(), first.n(), polys).map_err(serde::de::Error::custom)
    }
}

impl PolynomialFactor {
    /// Shifts are dropped.
    pub fn new(p: u32, n: usize, polys: Vec<NCPoly>) -> Result<Self> {
        for q in &polys {
            if q.p() != p {
                return Err(Error::FieldMismatch { left: p, right: q.p() });
            }
            if q.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: q.n(),
                });
            }
        }
        let polys = polys.iter().map(NCPoly::without_shift).collect();
        Ok(PolynomialFactor { p, n, polys })
    }

    pub fn empty(p: u32, n: usize) -> Self {
        PolynomialFactor { p, n, polys: vec![] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[NCPoly] {
        &self.polys
    }

    pub fn complexity(&self) -> usize {
        self.polys.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(NCPoly::degree).collect()
    }

    pub fn depths(&self) -> Vec<u32> {
        self.polys.iter().map(NCPoly::depth).collect()
    }

    pub fn degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `‖B‖ = Π p^{k_i+1}`.
    pub fn order(&self) -> u128 {
        self.polys.iter().map(|q| modulus(self.p, q.depth()) as u128).product()
    }

    fn radices(&self) -> Vec<u64> {
        self.polys.iter().map(|q| modulus(self.p, q.depth())).collect()
    }

    /// `(P_1(x), ..., P_C(x))`.
    pub fn atom_of(&self, x: &Point) -> Result<Vec<TorusValue>> {
        self.polys.iter().map(|q| q.evaluate(x)).collect()
    }

    /// Mixed-radix code of an atom label.
    pub fn encode(&self, atom: &[TorusValue]) -> u64 {
        let mut code = 0u64;
        for ((v, q), r) in atom.iter().zip(&self.polys).zip(self.radices()).rev() {
            code = code * r + v.numerator_at(q.depth());
        }
        code
    }

    pub fn decode(&self, mut code: u64) -> Vec<TorusValue> {
        self.polys
            .iter()
            .zip(self.radices())
            .map(|(q, r)| {
                let v = code % r;
                code /= r;
                TorusValue::new(self.p, v as i128, q.depth())
            })
            .collect()
    }

    fn check_order(&self) -> Result<u64> {
        let order = self.order();
        if order > 1 << 40 {
            return Err(Error::DomainTooLarge {
                what: "factor order".into(),
                required: order,
                cap: 1 << 40,
            });
        }
        Ok(order as u64)
    }

    /// Atom code of every point, in index order.
    pub fn atom_codes(&self, caps: &Caps) -> Result<Vec<u64>> {
        self.check_order()?;
        let dom = Domain::new(Fp::new(self.p)?, self.n)?;
        caps.check("atom table", dom.size() as u128)?;
        let tables: Vec<LevelTable> = self.polys.iter().map(|q| q.table()).collect::<Result<_>>()?;
        let radices = self.radices();
        let mut codes = vec![0u64; dom.size() as usize];
        for (t, r) in tables.iter().zip(radices).rev() {
            for (c, &v) in codes.iter_mut().zip(&t.nums) {
                *c = *c * r + v;
            }
        }
        Ok(codes)
    }

    /// Exact atom frequencies.
    pub fn atom_histogram(&self, caps: &Caps) -> Result<AtomHistogram> {
        let codes = self.atom_codes(caps)?;
        let mut counts = BTreeMap::new();
        for c in codes {
            *counts.entry(c).or_insert(0u64) += 1;
        }
        Ok(AtomHistogram::build(
            self,
            counts,
            (self.p as u64).pow(self.n as u32),
            true,
        ))
    }

    /// Atom frequencies from `samples` uniform points.
    pub fn atom_histogram_sampled(&self, samples: u64, seed: u64) -> Result<AtomHistogram> {
        self.check_order()?;
        let chunks = par::map_chunks(samples, |range| {
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            for s in range {
                let mut rng = par::rng(seed, s);
                let coords: Vec<u32> = (0..self.n).map(|_| rng.gen_range(0..self.p)).collect();
                let atom = self.atom_of(&Point(coords)).expect("dimension checked");
                *local.entry(self.encode(&atom)).or_insert(0) += 1;
            }
            local
        });
        let mut counts = BTreeMap::new();
        for local in chunks {
            for (k, v) in local {
                *counts.entry(k).or_insert(0) += v;
            }
        }
        Ok(AtomHistogram::build(self, counts, samples, false))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomHistogram {
    pub order: u128,
    pub total: u64,
    pub exact: bool,
    pub realized: usize,
    /// `max_b |Pr[B(x) = b] - 1/‖B‖|` over every label in the range,
    /// including labels that are never attained.
    pub max_deviation: f64,
    pub atoms: Vec<AtomCount>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomCount {
    pub atom: Vec<String>,
    pub count: u64,
    pub probability: f64,
}

impl AtomHistogram {
    fn build(b: &PolynomialFactor, counts: BTreeMap<u64, u64>, total: u64, exact: bool) -> Self {
        let order = b.order();
        let uniform = 1.0 / order as f64;
        let mut dev = counts
            .values()
            .map(|&c| (c as f64 / total as f64 - uniform).abs())
            .fold(0.0, f64::max);
        if (counts.len() as u128) < order {
            dev = dev.max(uniform);
        }
        AtomHistogram {
            order,
            total,
            exact,
            realized: counts.len(),
            max_deviation: dev,
            atoms: counts
                .into_iter()
                .map(|(code, count)| AtomCount {
                    atom: b.decode(code).iter().map(|v| v.to_string()).collect(),
                    count,
                    probability: count as f64 / total as f64,
                })
                .collect(),
        }
    }
}

/// The analytic quantity used to certify uniformity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformityMetric {
    /// `‖e(Q)‖_{U^D}` with `D = max_i deg(λ_i P_i)`.
    Gowers,
    /// `|E e(Q)|`.
    Bias,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Combination {
    pub lambda: Vec<u64>,
    /// `max_i deg(λ_i P_i)`.
    pub degree: u32,
    /// `‖e(Q)‖_{U^D}` (order at least 1).
    pub gowers_d: f64,
    /// `‖e(Q)‖_{U^{D+1}}`, when affordable.
    pub gowers_d_plus_1: Option<f64>,
    pub bias: f64,
    pub metric_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformityReport {
    pub epsilon_target: f64,
    pub epsilon_achieved: f64,
    pub passed: bool,
    pub metric: UniformityMetric,
    pub combinations_checked: u64,
    pub witness: Option<Combination>,
    pub combinations: Vec<Combination>,
}

/// Measures every nontrivial combination `Q = Σ λ_i P_i` with
/// `λ_i ∈ [0, p^{k_i+1})`; the factor passes when the largest metric value is
/// below `epsilon`.
pub fn uniformity_certify(
    b: &PolynomialFactor,
    epsilon: f64,
    metric: UniformityMetric,
    caps: &Caps,
) -> Result<UniformityReport> {
    let order = b.order();
    caps.check("certification λ-tuples", order)?;
    let radices = b.radices();
    let level = b.depths().into_iter().max().unwrap_or(0);
    let tables: Vec<LevelTable> = b.polys.iter().map(|q| q.table_at(level)).collect::<Result<_>>()?;
    let q_mod = modulus(b.p, level);
    let mut degree_cache: HashMap<(usize, u64), u32> = HashMap::new();
    let mut combinations = Vec::new();
    for code in 1..order as u64 {
        let mut lambda = Vec::with_capacity(radices.len());
        let mut c = code;
        for &r in &radices {
            lambda.push(c % r);
            c /= r;
        }
        let mut degree = 0;
        for (i, &l) in lambda.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let d = match degree_cache.get(&(i, l)) {
                Some(&d) => d,
                None => {
                    let d = b.polys[i].int_scale(l as i64)?.degree();
                    degree_cache.insert((i, l), d);
                    d
                }
            };
            degree = degree.max(d);
        }
        let mut nums = vec![0u64; tables.first().map_or(1, |t| t.nums.len())];
        for (t, &l) in tables.iter().zip(&lambda) {
            for (acc, &v) in nums.iter_mut().zip(&t.nums) {
                *acc = ((*acc as u128 + l as u128 * v as u128) % q_mod as u128) as u64;
            }
        }
        let combo = NCPoly::from_table(&LevelTable {
            p: b.p,
            n: b.n,
            level,
            nums,
        })?;
        let phase = TableFn::phase_of(&combo, caps)?;
        let order_d = degree.max(1);
        let gowers_d = gowers_norm(&phase, order_d, caps)?;
        let gowers_d_plus_1 = gowers_norm(&phase, order_d + 1, caps).ok();
        let bias = phase.bias().norm();
        let metric_value = match metric {
            UniformityMetric::Gowers => gowers_d,
            UniformityMetric::Bias => bias,
        };
        combinations.push(Combination {
            lambda,
            degree,
            gowers_d,
            gowers_d_plus_1,
            bias,
            metric_value,
        });
    }
    let witness = combinations
        .iter()
        .fold(None::<&Combination>, |best, c| match best {
            Some(w) if w.metric_value >= c.metric_value => Some(w),
            _ => Some(c),
        })
        .cloned();
    let achieved = witness.as_ref().map_or(0.0, |w| w.metric_value);
    Ok(UniformityReport {
        epsilon_target: epsilon,
        epsilon_achieved: achieved,
        passed: achieved < epsilon,
        metric,
        combinations_checked: combinations.len() as u64,
        witness,
        combinations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointEntry {
    /// `atoms[j][i] = P_i(L_j(x))`.
    pub atoms: Vec<Vec<String>>,
    pub count: u64,
    pub probability: f64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointReport {
    pub total: u64,
    pub exact: bool,
    /// `Π_i |Λ_i| / ‖B‖^m`.
    pub prediction: f64,
    pub dependency_sizes: Vec<usize>,
    pub consistent_tuples: u128,
    pub realized_tuples: usize,
    pub realized_consistent: usize,
    /// Total probability of tuples that violate a dependency.
    pub inconsistent_mass: f64,
    /// Largest `|Pr - prediction|` over all consistent tuples, attained or not.
    pub max_deviation: f64,
    pub entries: Vec<JointEntry>,
}

/// Distribution of `(B(L_1(x)), ..., B(L_m(x)))` for uniform
/// `x ∈ (F_p^n)^ℓ`, compared with the prediction from the dependency sets.
pub fn joint_distribution(
    b: &PolynomialFactor,
    a: &AffineConstraint,
    mode: EvalMode,
    caps: &Caps,
) -> Result<JointReport> {
    let field = Fp::new(b.p)?;
    let order = b.check_order()? as u128;
    let m = a.size();
    let ell = a.ell();
    let key_space = pow_u128(order as u64, m as u64);
    if key_space > u64::MAX as u128 {
        return Err(Error::DomainTooLarge {
            what: "joint atom labels".into(),
            required: key_space,
            cap: u64::MAX,
        });
    }
    let codes = b.atom_codes(caps)?;
    let dom = Domain::new(field, b.n)?;
    let size = dom.size();
    let forms = a.linear_forms();
    let joint_code = |xs: &[u64]| -> u64 {
        let mut key = 0u64;
        for f in forms.iter().rev() {
            key = key * order as u64 + codes[dom.combine(f.weights(), xs) as usize];
        }
        key
    };
    let (counts, total, exact) = match mode {
        EvalMode::Exhaustive => {
            let total = pow_u128(size, ell as u64);
            caps.check("joint distribution tuples", total)?;
            let total = total as u64;
            let counts = histogram(total, key_space as u64, |mut idx| {
                let xs: Vec<u64> = (0..ell)
                    .map(|_| {
                        let x = idx % size;
                        idx /= size;
                        x
                    })
                    .collect();
                joint_code(&xs)
            });
            (counts, total, true)
        }
        EvalMode::MonteCarlo { samples, seed } => {
            let counts = histogram(samples, key_space as u64, |s| {
                let mut rng = par::rng(seed, s);
                let xs: Vec<u64> = (0..ell).map(|_| rng.gen_range(0..size)).collect();
                joint_code(&xs)
            });
            (counts, samples, false)
        }
    };

    let sets = dependency_sets(field, a, &b.degrees(), &b.depths(), caps)?;
    let consistent_tuples = dependent_atom_count(&sets);
    let prediction = 1.0 / consistent_tuples as f64;
    let mut entries = Vec::with_capacity(counts.len());
    let mut inconsistent_mass = 0.0;
    let mut max_dev: f64 = 0.0;
    let mut realized_consistent = 0;
    for (&key, &count) in &counts {
        let mut k = key;
        let atoms: Vec<Vec<TorusValue>> = (0..m)
            .map(|_| {
                let c = k % order as u64;
                k /= order as u64;
                b.decode(c)
            })
            .collect();
        let consistent = is_consistent(&sets, &atoms)?;
        let prob = count as f64 / total as f64;
        if consistent {
            realized_consistent += 1;
            max_dev = max_dev.max((prob - prediction).abs());
        } else {
            inconsistent_mass += prob;
        }
        entries.push(JointEntry {
            atoms: atoms
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            count,
            probability: prob,
            consistent,
        });
    }
    if (realized_consistent as u128) < consistent_tuples {
        max_dev = max_dev.max(prediction);
    }
    Ok(JointReport {
        total,
        exact,
        prediction,
        dependency_sizes: sets.iter().map(|s| s.size()).collect(),
        consistent_tuples,
        realized_tuples: counts.len(),
        realized_consistent,
        inconsistent_mass,
        max_deviation: max_dev,
        entries,
    })
}

/// Integer histogram of `key(i)` over `0..total`; dense per-chunk counters
/// when the key space is small.
fn histogram<F>(total: u64, key_space: u64, key: F) -> BTreeMap<u64, u64>
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    let mut out = BTreeMap::new();
    if key_space <= 1 << 12 {
        let parts = par::map_chunks(total, |range| {
            let mut local = vec![0u64; key_space as usize];
            for i in range {
                local[key(i) as usize] += 1;
            }
            local
        });
        let mut dense = vec![0u64; key_space as usize];
        for local in parts {
            for (d, v) in dense.iter_mut().zip(local) {
                *d += v;
            }
        }
        for (k, v) in dense.into_iter().enumerate() {
            if v > 0 {
                out.insert(k as u64, v);
            }
        }
    } else {
        let parts = par::map_chunks(total, |range| {
            let mut local: HashMap<u64, u64> = HashMap::new();
            for i in range {
                *local.entry(key(i)).or_insert(0) += 1;
            }
            local
        });
        for local in parts {
            for (k, v) in local {
                *out.entry(k).or_insert(0) += v;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    /// The polynomial list of the finer factor extends the coarser one.
    Syntactic,
    /// Every atom of the finer factor lies inside one atom of the coarser.
    Semantic,
    None,
}

/// The strongest sense in which `finer` refines `coarser`.
pub fn refinement_relation(coarser: &PolynomialFactor, finer: &PolynomialFactor, caps: &Caps) -> Result<Refinement> {
    if coarser.n != finer.n {
        return Err(Error::DimensionMismatch {
            expected: coarser.n,
            got: finer.n,
        });
    }
    if coarser.p != finer.p {
        return Err(Error::FieldMismatch {
            left: coarser.p,
            right: finer.p,
        });
    }
    if finer.polys.len() >= coarser.polys.len() && finer.polys[..coarser.polys.len()] == coarser.polys[..] {
        return Ok(Refinement::Syntactic);
    }
    let a = coarser.atom_codes(caps)?;
    let b = finer.atom_codes(caps)?;
    let mut map: HashMap<u64, u64> = HashMap::new();
    for (&fine, &coarse) in b.iter().zip(&a) {
        if *map.entry(fine).or_insert(coarse) != coarse {
            return Ok(Refinement::None);
        }
    }
    Ok(Refinement::Semantic)
}

/// Replaces a factor of classical polynomials of degree at most 1 by a
/// linearly independent subfamily with the same atoms.
pub fn regularize_degree1(b: &PolynomialFactor) -> Result<PolynomialFactor> {
    let field = Fp::new(b.p)?;
    let mut kept: Vec<NCPoly> = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for q in &b.polys {
        if !q.is_classical() || q.degree() > 1 {
            return Err(Error::invalid(format!(
                "{q} is not a classical polynomial of degree <= 1"
            )));
        }
        let mut row = vec![0u32; b.n];
        for mono in q.monomials() {
            let i = mono.exps.iter().position(|&e| e == 1).expect("linear term");
            row[i] = mono.coeff;
        }
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        let mut with = rows.clone();
        with.push(row.clone());
        if rank(field, &with) > rows.len() {
            rows.push(row);
            kept.push(q.clone());
        }
    }
    debug_assert_eq!(echelon(field, &rows).len(), rows.len());
    PolynomialFactor::new(b.p, b.n, kept)
}

/// `ι(Σ_{i<t} x_{2i+1} x_{2i+2})` on `F_p^{2t}`.
pub fn quadratic_form(p: u32, t: usize) -> Result<NCPoly> {
    disjoint_products(p, t, 2)
}

/// `ι(Σ_{i<t} x_{3i+1} x_{3i+2} x_{3i+3})` on `F_p^{3t}`.
pub fn cubic_form(p: u32, t: usize) -> Result<NCPoly> {
    disjoint_products(p, t, 3)
}

fn disjoint_products(p: u32, t: usize, width: usize) -> Result<NCPoly> {
    let n = t * width;
    let terms: Vec<(Vec<u32>, u32)> = (0..t)
        .map(|i| {
            let mut e = vec![0; n];
            for slot in e.iter_mut().skip(i * width).take(width) {
                *slot = 1;
            }
            (e, 1)
        })
        .collect();
    NCPoly::classical(p, n, &terms)
}
