//! Classical and non-classical polynomials `F_p^n → T` in their unique
//! monomial/depth representation
//!
//! ```text
//! P(x) = α + Σ c_{e,k} |x_1|^{e_1} ⋯ |x_n|^{e_n} / p^{k+1}  (mod 1)
//! ```
//!
//! with `0 <= e_i < p`, `Σ e_i > 0`, `c_{e,k} ∈ [1, p-1]`. The degree is the
//! largest `Σ e_i + k(p-1)` over the terms and the depth the largest `k`.
//! The shift `α` is kept separately; factor and atom machinery works with
//! shift-free polynomials.
//!
//! Sums, scalings, derivatives and restrictions are computed on exact value
//! tables and brought back to canonical form by [`NCPoly::from_table`], which
//! peels off one depth level at a time by interpolation over F_p.

use crate::error::{Error, Result};
use crate::field::{AffineMap, AffineSubspace, Domain, Fp, Point};
use crate::torus::{modulus, TorusValue};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Tables larger than this many points are refused.
pub const TABLE_LIMIT: u64 = 1 << 26;

/// A function `F_p^n → U_{level+1}` given by its numerators over `p^{level+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelTable {
    pub p: u32,
    pub n: usize,
    pub level: u32,
    pub nums: Vec<u64>,
}

impl LevelTable {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        let dom = domain(p, n)?;
        Ok(LevelTable {
            p,
            n,
            level: 0,
            nums: vec![0; dom.size() as usize],
        })
    }

    pub fn modulus(&self) -> u64 {
        modulus(self.p, self.level)
    }

    pub fn value(&self, idx: u64) -> TorusValue {
        TorusValue::new(self.p, self.nums[idx as usize] as i128, self.level)
    }

    /// Rewrites the table over `p^{level+1}` for a larger `level`.
    pub fn lift(&self, level: u32) -> LevelTable {
        assert!(level >= self.level);
        let f = (self.p as u64).pow(level - self.level);
        LevelTable {
            p: self.p,
            n: self.n,
            level,
            nums: self.nums.iter().map(|&v| v * f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|&v| v == 0)
    }

    /// Builds a table from torus values at a common level.
    pub fn from_values(p: u32, n: usize, values: &[TorusValue]) -> Result<Self> {
        let level = values.iter().map(|v| v.depth()).max().unwrap_or(0);
        let dom = domain(p, n)?;
        if values.len() as u64 != dom.size() {
            return Err(Error::invalid(format!(
                "table has {} entries, F_{p}^{n} has {}",
                values.len(),
                dom.size()
            )));
        }
        Ok(LevelTable {
            p,
            n,
            level,
            nums: values.iter().map(|v| v.numerator_at(level)).collect(),
        })
    }
}

fn domain(p: u32, n: usize) -> Result<Domain> {
    let dom = Domain::new(Fp::new(p)?, n)?;
    if dom.size() > TABLE_LIMIT {
        return Err(Error::DomainTooLarge {
            what: format!("value table over F_{p}^{n}"),
            required: dom.size() as u128,
            cap: TABLE_LIMIT,
        });
    }
    Ok(dom)
}

/// One term `c |x_1|^{e_1} ⋯ |x_n|^{e_n} / p^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u32>,
    #[serde(rename = "k")]
    pub depth: u32,
    #[serde(rename = "c")]
    pub coeff: u32,
}

impl Monomial {
    pub fn total(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.total() + self.depth * (p - 1)
    }
}

type TermKey = (Vec<u32>, u32);

/// A polynomial `F_p^n → T` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    p: u32,
    n: usize,
    terms: BTreeMap<TermKey, u32>,
    shift: TorusValue,
    degree: u32,
    depth: u32,
}

impl NCPoly {
    pub fn zero(p: u32, n: usize) -> Self {
        NCPoly {
            p,
            n,
            terms: BTreeMap::new(),
            shift: TorusValue::zero(p),
            degree: 0,
            depth: 0,
        }
    }

    /// Builds a polynomial from explicit terms; terms with coefficient 0 are
    /// dropped and repeated `(exps, k)` keys are rejected.
    pub fn from_monomials(p: u32, n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        Fp::new(p)?;
        let mut terms = BTreeMap::new();
        for m in monomials {
            if m.exps.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.exps.len(),
                });
            }
            if m.exps.iter().any(|&e| e >= p) {
                return Err(Error::invalid(format!("exponents {:?} must be < p = {p}", m.exps)));
            }
            if m.total() == 0 {
                return Err(Error::invalid("monomials must have positive total exponent"));
            }
            if m.coeff >= p {
                return Err(Error::invalid(format!("coefficient {} must be < p = {p}", m.coeff)));
            }
            if m.depth > 12 {
                return Err(Error::invalid(format!("depth {} is unsupported", m.depth)));
            }
            if m.coeff == 0 {
                continue;
            }
            if terms.insert((m.exps.clone(), m.depth), m.coeff).is_some() {
                return Err(Error::invalid(format!(
                    "duplicate term exps={:?} k={}",
                    m.exps, m.depth
                )));
            }
        }
        Ok(NCPoly::assemble(p, n, terms, TorusValue::zero(p)))
    }

    /// The classical polynomial `ι(Σ c_e x^e)`, from `(exps, coeff)` pairs
    /// with coefficients in F_p.
    pub fn classical(p: u32, n: usize, terms: &[(Vec<u32>, u32)]) -> Result<Self> {
        Self::from_monomials(
            p,
            n,
            terms.iter().map(|(e, c)| Monomial {
                exps: e.clone(),
                depth: 0,
                coeff: c % p,
            }),
        )
    }

    /// `ι(x_i)`, zero-based `i`.
    pub fn coordinate(p: u32, n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::classical(p, n, &[(e, 1)]).expect("valid coordinate")
    }

    /// `ι(a · x)` for a linear functional `a`.
    pub fn linear(p: u32, a: &[u32]) -> Result<Self> {
        let n = a.len();
        let terms: Vec<(Vec<u32>, u32)> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % p != 0)
            .map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c)
            })
            .collect();
        Self::classical(p, n, &terms)
    }

    fn assemble(p: u32, n: usize, terms: BTreeMap<TermKey, u32>, shift: TorusValue) -> Self {
        let degree = terms
            .keys()
            .map(|(e, k)| e.iter().sum::<u32>() + k * (p - 1))
            .max()
            .unwrap_or(0);
        let depth = terms.keys().map(|(_, k)| *k).max().unwrap_or(0);
        NCPoly {
            p,
            n,
            terms,
            shift,
            degree,
            depth,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree from the representation; 0 for constants.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Largest term depth; 0 for constants.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The constant part.
    pub fn shift(&self) -> TorusValue {
        self.shift
    }

    pub fn without_shift(&self) -> NCPoly {
        let mut q = self.clone();
        q.shift = TorusValue::zero(self.p);
        q
    }

    pub fn is_classical(&self) -> bool {
        self.depth == 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.shift.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: by depth, then total exponent, then
    /// exponent vector.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .terms
            .iter()
            .map(|((e, k), &c)| Monomial {
                exps: e.clone(),
                depth: *k,
                coeff: c,
            })
            .collect();
        out.sort_by(|a, b| (a.depth, a.total(), &a.exps).cmp(&(b.depth, b.total(), &b.exps)));
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest `K` such that every value lies in `U_{K+1}`.
    pub fn level(&self) -> u32 {
        self.depth.max(self.shift.depth())
    }

    pub fn evaluate(&self, x: &Point) -> Result<TorusValue> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        let level = self.level();
        let m = modulus(self.p, level) as u128;
        let mut acc: u128 = self.shift.numerator_at(level) as u128;
        for ((e, k), &c) in &self.terms {
            let mut v: u128 = c as u128 * (self.p as u128).pow(level - k);
            for (&ei, &xi) in e.iter().zip(x.coords()) {
                for _ in 0..ei {
                    v = v * (xi % self.p) as u128 % m;
                }
            }
            acc = (acc + v) % m;
        }
        Ok(TorusValue::new(self.p, acc as i128, level))
    }

    /// Exact value table at level [`NCPoly::level`].
    pub fn table(&self) -> Result<LevelTable> {
        self.table_at(self.level())
    }

    /// Exact value table over `p^{level+1}`; `level` must be at least
    /// [`NCPoly::level`].
    pub fn table_at(&self, level: u32) -> Result<LevelTable> {
        assert!(level >= self.level());
        let dom = domain(self.p, self.n)?;
        let size = dom.size() as usize;
        let m = modulus(self.p, level);
        let shift = self.shift.numerator_at(level);
        let mut nums = vec![shift; size];
        for k in 0..=self.depth {
            let mut coeffs = vec![0u64; size];
            let mut any = false;
            for ((e, kk), &c) in &self.terms {
                if *kk == k {
                    coeffs[dom.index_of(e) as usize] = c as u64;
                    any = true;
                }
            }
            if !any {
                continue;
            }
            let vals = forward_transform(self.p, self.n, &coeffs, m);
            let scale = (self.p as u64).pow(level - k);
            for (acc, v) in nums.iter_mut().zip(vals) {
                *acc = ((*acc as u128 + v as u128 * scale as u128) % m as u128) as u64;
            }
        }
        Ok(LevelTable {
            p: self.p,
            n: self.n,
            level,
            nums,
        })
    }

    /// The unique polynomial agreeing with a value table.
    pub fn from_table(table: &LevelTable) -> Result<Self> {
        let p = table.p;
        let n = table.n;
        let dom = domain(p, n)?;
        if table.nums.len() as u64 != dom.size() {
            return Err(Error::invalid("table length does not match p^n"));
        }
        let pinv = vandermonde_inverse(p);
        let mut g = table.nums.clone();
        let mut terms = BTreeMap::new();
        let mut shift = TorusValue::zero(p);
        for k in (0..=table.level).rev() {
            let m = modulus(p, k);
            let residue: Vec<u64> = g.iter().map(|&v| v % p as u64).collect();
            let coeffs = inverse_transform(p, n, &residue, &pinv);
            if coeffs.iter().any(|&c| c != 0) {
                for (idx, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if idx == 0 {
                        shift = shift.add(&TorusValue::new(p, c as i128, k));
                    } else {
                        terms.insert((dom.point(idx as u64).0, k), c as u32);
                    }
                }
                let vals = forward_transform(p, n, &coeffs, m);
                for (gv, v) in g.iter_mut().zip(vals) {
                    *gv = (*gv + m - v) % m;
                }
            }
            debug_assert!(g.iter().all(|&v| v % p as u64 == 0));
            for gv in g.iter_mut() {
                *gv /= p as u64;
            }
        }
        Ok(NCPoly::assemble(p, n, terms, shift))
    }

    /// Classical polynomial from an F_p-valued table.
    pub fn from_fp_table(p: u32, n: usize, vals: &[u32]) -> Result<Self> {
        Self::from_table(&LevelTable {
            p,
            n,
            level: 0,
            nums: vals.iter().map(|&v| (v % p) as u64).collect(),
        })
    }

    /// For classical polynomials, the F_p value table `|P(x)|`.
    pub fn fp_table(&self) -> Result<Vec<u32>> {
        if self.level() != 0 {
            return Err(Error::invalid("polynomial is not F_p-valued"));
        }
        Ok(self.table()?.nums.into_iter().map(|v| v as u32).collect())
    }

    fn check_same_space(&self, other: &NCPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Pointwise sum, recanonicalized.
    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same_space(other)?;
        let level = self.level().max(other.level());
        let a = self.table_at(level)?;
        let b = other.table_at(level)?;
        let m = a.modulus();
        let nums = a.nums.iter().zip(&b.nums).map(|(&x, &y)| (x + y) % m).collect();
        NCPoly::from_table(&LevelTable { nums, ..a })
    }

    pub fn neg(&self) -> Result<NCPoly> {
        self.int_scale(-1)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.add(&other.neg()?)
    }

    /// Pointwise `λ · P`.
    pub fn int_scale(&self, lambda: i64) -> Result<NCPoly> {
        let t = self.table()?;
        let m = t.modulus() as i128;
        let l = (lambda as i128).rem_euclid(m);
        let nums = t.nums.iter().map(|&v| ((v as i128 * l) % m) as u64).collect();
        NCPoly::from_table(&LevelTable { nums, ..t })
    }

    /// `D_h P(x) = P(x+h) - P(x)`. Constants produced by differentiation end
    /// up in the shift of the result.
    pub fn additive_derivative(&self, h: &Point) -> Result<NCPoly> {
        if h.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: h.dim(),
            });
        }
        let t = self.table()?;
        let dom = domain(self.p, self.n)?;
        let hi = dom.index_of(h.coords());
        NCPoly::from_table(&derivative_table(&dom, &t, hi))
    }

    /// The restriction to an affine subspace, written in the coordinates of
    /// the subspace's directions.
    pub fn restrict(&self, sub: &AffineSubspace) -> Result<NCPoly> {
        if sub.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: sub.ambient_dim(),
            });
        }
        let t = self.table()?;
        let dom = domain(self.p, self.n)?;
        let nums = sub
            .point_indices(&dom)
            .into_iter()
            .map(|i| t.nums[i as usize])
            .collect();
        NCPoly::from_table(&LevelTable {
            p: self.p,
            n: sub.dim(),
            level: t.level,
            nums,
        })
    }

    /// `x ↦ P(A x)`.
    pub fn compose_affine(&self, map: &AffineMap) -> Result<NCPoly> {
        if map.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: map.dim(),
            });
        }
        let t = self.table()?;
        let dom = domain(self.p, self.n)?;
        let nums = map.permutation(&dom).into_iter().map(|i| t.nums[i as usize]).collect();
        NCPoly::from_table(&LevelTable { nums, ..t })
    }

    /// Whether the polynomial does not depend on any coordinate outside `vars`.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for (e, _) in self.terms.keys() {
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.n).filter(|&i| used[i]).collect()
    }
}

/// `D_h` applied to a level table; `h` is a packed index.
pub fn derivative_table(dom: &Domain, t: &LevelTable, h: u64) -> LevelTable {
    let m = t.modulus();
    let nums = (0..dom.size())
        .map(|x| {
            let a = t.nums[dom.add(x, h) as usize];
            let b = t.nums[x as usize];
            (a + m - b) % m
        })
        .collect();
    LevelTable {
        p: t.p,
        n: t.n,
        level: t.level,
        nums,
    }
}

/// Inverse of the matrix `V[a][j] = a^j mod p` (with `0^0 = 1`).
fn vandermonde_inverse(p: u32) -> Vec<Vec<u64>> {
    let f = Fp::new(p).expect("prime");
    let size = p as usize;
    let mut aug: Vec<Vec<u32>> = (0..size)
        .map(|a| {
            let mut row: Vec<u32> = (0..size).map(|j| f.pow(a as u32, j as u64)).collect();
            row.extend((0..size).map(|j| u32::from(j == a)));
            row
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| aug[r][col] != 0).expect("invertible");
        aug.swap(col, pivot);
        let inv = f.inv(aug[col][col]);
        for x in aug[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..size {
            if r != col && aug[r][col] != 0 {
                let c = aug[r][col];
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }
    // aug = [I | V^{-1}]; V is indexed [a][j], so coefficients are V^{-1} · values.
    aug.into_iter()
        .map(|row| row[size..].iter().map(|&v| v as u64).collect())
        .collect()
}

/// Applies a `p × p` matrix along every axis of a tensor of shape `p^n`.
fn along_axes(p: u32, n: usize, data: &[u64], mat: &dyn Fn(usize, usize) -> u64, m: u64) -> Vec<u64> {
    let p = p as usize;
    let mut cur = data.to_vec();
    let mut stride = 1usize;
    let mut buf = vec![0u64; p];
    for _ in 0..n {
        let block = stride * p;
        for start in (0..cur.len()).step_by(block) {
            for off in 0..stride {
                for (j, b) in buf.iter_mut().enumerate() {
                    *b = cur[start + off + j * stride];
                }
                for i in 0..p {
                    let mut acc: u128 = 0;
                    for (j, &b) in buf.iter().enumerate() {
                        acc += mat(i, j) as u128 * b as u128;
                    }
                    cur[start + off + i * stride] = (acc % m as u128) as u64;
                }
            }
        }
        stride = block;
    }
    cur
}

/// Integer evaluation `Σ_e c_e Π |x_i|^{e_i}` modulo `m`, for all `x`.
fn forward_transform(p: u32, n: usize, coeffs: &[u64], m: u64) -> Vec<u64> {
    let pw: Vec<Vec<u64>> = (0..p as u64)
        .map(|a| (0..p).map(|j| pow_mod(a, j, m)).collect())
        .collect();
    along_axes(p, n, coeffs, &|i, j| pw[i][j], m)
}

/// F_p interpolation: coefficients of the reduced polynomial with the given
/// value table.
fn inverse_transform(p: u32, n: usize, values: &[u64], vinv: &[Vec<u64>]) -> Vec<u64> {
    along_axes(p, n, values, &|i, j| vinv[i][j], p as u64)
}

fn pow_mod(a: u64, e: u32, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = (acc as u128 * a as u128 % m as u128) as u64;
    }
    acc
}

/// All admissible term keys `(e, k)` with `Σe > 0`, `Σe + k(p-1) <= degree`
/// and `k <= depth`.
pub fn admissible_terms(p: u32, n: usize, degree: u32, depth: u32) -> Result<Vec<(Vec<u32>, u32)>> {
    let dom = domain(p, n)?;
    let mut out = Vec::new();
    for k in 0..=depth {
        for idx in 1..dom.size() {
            let e = dom.point(idx).0;
            let s: u32 = e.iter().sum();
            if s + k * (p - 1) <= degree {
                out.push((e, k));
            }
        }
    }
    Ok(out)
}

/// A random shift-free polynomial of exactly the given degree and depth.
///
/// Coefficients of all admissible terms are drawn uniformly from `[0, p-1]`
/// and the draw is repeated until the degree and depth come out exact, which
/// is the uniform distribution conditioned on those two events.
pub fn random_poly(p: u32, n: usize, degree: u32, depth: u32, seed: u64) -> Result<NCPoly> {
    let mut rng = crate::par::rng(seed, 0);
    random_poly_with(p, n, degree, depth, &mut rng)
}

pub fn random_poly_with<R: Rng + ?Sized>(p: u32, n: usize, degree: u32, depth: u32, rng: &mut R) -> Result<NCPoly> {
    Fp::new(p)?;
    if degree <= depth * (p - 1) {
        return Err(Error::Infeasible(format!(
            "degree {degree} must exceed depth·(p-1) = {}",
            depth * (p - 1)
        )));
    }
    let keys = admissible_terms(p, n, degree, depth)?;
    let reaches_degree = keys.iter().any(|(e, k)| e.iter().sum::<u32>() + k * (p - 1) == degree);
    if !reaches_degree {
        return Err(Error::Infeasible(format!(
            "no term of degree {degree} and depth <= {depth} exists in {n} variables over F_{p}"
        )));
    }
    loop {
        let mut terms = BTreeMap::new();
        for key in &keys {
            let c = rng.gen_range(0..p);
            if c != 0 {
                terms.insert(key.clone(), c);
            }
        }
        let poly = NCPoly::assemble(p, n, terms, TorusValue::zero(p));
        if poly.degree == degree && poly.depth == depth {
            return Ok(poly);
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.shift.is_zero() {
            parts.push(self.shift.to_string());
        }
        for m in self.monomials() {
            let mut s = format!("{}/{}·", m.coeff, modulus(self.p, m.depth));
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("|x{}|", i + 1)),
                    _ => s.push_str(&format!("|x{}|^{}", i + 1, e)),
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// JSON form: `{"p":2,"n":3,"monomials":[{"exps":[1,0,0],"k":0,"c":1}]}`,
/// with an optional `"shift":[numerator, depth]`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    p: u32,
    n: usize,
    monomials: Vec<Monomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shift: Option<(u64, u32)>,
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            p: self.p,
            n: self.n,
            monomials: self.monomials(),
            shift: (!self.shift.is_zero()).then(|| (self.shift.numerator(), self.shift.depth())),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let mut poly = NCPoly::from_monomials(r.p, r.n, r.monomials).map_err(serde::de::Error::custom)?;
        if let Some((num, depth)) = r.shift {
            poly.shift = TorusValue::new(r.p, num as i128, depth);
        }
        Ok(poly)
    }
}
