//! Arithmetic in F_p, points of F_p^n and their packed indices, affine forms,
//! affine subspaces and invertible affine maps.
//!
//! A point `(x_1, ..., x_n)` is packed as the base-`p` integer
//! `x_1 + x_2 p + ... + x_n p^{n-1}`, so sweeping the domain is a counter
//! increment and `x_1` is the fastest-moving coordinate.

use crate::config::{pow_u128, Caps};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// The prime field F_p. `p` is a runtime parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p as u64 - 2)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A point of F_p^n as a coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn zero(n: usize) -> Self {
        Point(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Point(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The ambient space F_p^n together with its packed-index arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Domain {
    field: Fp,
    n: usize,
    size: u64,
}

impl Domain {
    pub fn new(field: Fp, n: usize) -> Result<Self> {
        let size = pow_u128(field.p() as u64, n as u64);
        if size > u64::MAX as u128 / 4 {
            return Err(Error::DomainTooLarge {
                what: format!("F_{}^{}", field.p(), n),
                required: size,
                cap: u64::MAX / 4,
            });
        }
        Ok(Domain {
            field,
            n,
            size: size as u64,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, p^n.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn point(&self, mut idx: u64) -> Point {
        let p = self.p() as u64;
        let mut coords = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            coords.push((idx % p) as u32);
            idx /= p;
        }
        Point(coords)
    }

    pub fn index(&self, x: &Point) -> Result<u64> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        Ok(self.index_of(x.coords()))
    }

    /// Packs a coordinate slice that is already known to have length `n`.
    pub fn index_of(&self, coords: &[u32]) -> u64 {
        let p = self.p() as u64;
        coords.iter().rev().fold(0u64, |acc, &c| acc * p + (c as u64 % p))
    }

    /// Index of `a + b`.
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p() == 2 {
            return a ^ b;
        }
        let p = self.p() as u64;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let s = a % p + b % p;
            out += place * if s >= p { s - p } else { s };
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    /// Index of `c * a` for a scalar `c`.
    #[inline]
    pub fn scale(&self, c: u32, a: u64) -> u64 {
        let c = c % self.p();
        if c == 0 {
            return 0;
        }
        if c == 1 {
            return a;
        }
        let p = self.p() as u64;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += place * ((a % p) * c as u64 % p);
            a /= p;
            place *= p;
        }
        out
    }

    /// Index of `-a`.
    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.scale(self.p() - 1, a)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Index of `sum_i w_i x_i`.
    #[inline]
    pub fn combine(&self, weights: &[u32], xs: &[u64]) -> u64 {
        let mut acc = 0;
        for (&w, &x) in weights.iter().zip(xs) {
            if w != 0 {
                acc = self.add(acc, self.scale(w, x));
            }
        }
        acc
    }

    /// All points in index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size).map(move |i| self.point(i))
    }
}

/// Yields every point of F_p^n exactly once, in packed-index order.
///
/// Fails with [`Error::DomainTooLarge`] instead of truncating when p^n exceeds
/// the enumeration cap.
pub fn enumerate_domain(field: Fp, n: usize, caps: &Caps) -> Result<impl Iterator<Item = Point>> {
    caps.check(&format!("F_{}^{}", field.p(), n), pow_u128(field.p() as u64, n as u64))?;
    let domain = Domain::new(field, n)?;
    Ok((0..domain.size()).map(move |i| domain.point(i)))
}

/// A linear form `(w_1, ..., w_k)` acting on k-tuples of points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm(pub Vec<u32>);

impl LinearForm {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// A linear form whose first weight is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AffineForm(LinearForm);

impl AffineForm {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.first() != Some(&1) {
            return Err(Error::invalid(format!(
                "affine form {weights:?} must have first weight 1"
            )));
        }
        Ok(AffineForm(LinearForm(weights)))
    }

    /// The form `x_1` on `arity` variables.
    pub fn identity(arity: usize) -> Self {
        let mut w = vec![0; arity.max(1)];
        w[0] = 1;
        AffineForm(LinearForm(w))
    }

    pub fn weights(&self) -> &[u32] {
        self.0.weights()
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn linear(&self) -> &LinearForm {
        &self.0
    }

    /// `sum_{t >= 2} |w_t|`.
    pub fn weight(&self) -> u64 {
        form_weight(self)
    }
}

impl TryFrom<Vec<u32>> for AffineForm {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        AffineForm::new(v)
    }
}

impl From<AffineForm> for Vec<u32> {
    fn from(f: AffineForm) -> Self {
        f.0 .0
    }
}

/// Evaluates `sum_i w_i x_i` componentwise.
pub fn eval_form(field: Fp, form: &LinearForm, xs: &[Point]) -> Result<Point> {
    if xs.len() != form.arity() {
        return Err(Error::ArityMismatch {
            expected: form.arity(),
            got: xs.len(),
        });
    }
    let n = xs.first().map_or(0, |x| x.dim());
    if let Some(bad) = xs.iter().find(|x| x.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.dim(),
        });
    }
    let mut out = vec![0u32; n];
    for (&w, x) in form.weights().iter().zip(xs) {
        for (o, &c) in out.iter_mut().zip(x.coords()) {
            *o = field.add(*o, field.mul(w, c));
        }
    }
    Ok(Point(out))
}

/// Sum of the absolute values `|w_t|` of all weights after the first.
pub fn form_weight(form: &AffineForm) -> u64 {
    form.weights().iter().skip(1).map(|&w| w as u64).sum()
}

/// `a ⪯ b`: every `|a_i| <= |b_i|`. Forms of different arity are incomparable.
pub fn form_le(a: &LinearForm, b: &LinearForm) -> bool {
    a.arity() == b.arity() && a.weights().iter().zip(b.weights()).all(|(x, y)| x <= y)
}

/// Rank of a family of vectors over F_p.
pub fn rank(field: Fp, rows: &[Vec<u32>]) -> usize {
    echelon(field, rows).len()
}

/// Row-reduces `rows` and returns the nonzero echelon rows, each normalized
/// so its pivot is 1.
pub fn echelon(field: Fp, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (pivot, b) in &basis {
            let c = v[*pivot];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&c| c != 0) {
            let inv = field.inv(v[pivot]);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            for (_, b) in basis.iter_mut() {
                let c = b[pivot];
                if c != 0 {
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = field.sub(*x, field.mul(c, y));
                    }
                }
            }
            basis.push((pivot, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

/// Whether `target` lies in the F_p-span of `rows`.
pub fn in_span(field: Fp, rows: &[Vec<u32>], target: &[u32]) -> bool {
    let r = rank(field, rows);
    let mut with = rows.to_vec();
    with.push(target.to_vec());
    rank(field, &with) == r
}

/// An affine subspace `base + span(directions)` with independent directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub base: Point,
    pub directions: Vec<Point>,
}

impl AffineSubspace {
    pub fn new(field: Fp, base: Point, directions: Vec<Point>) -> Result<Self> {
        let n = base.dim();
        if let Some(bad) = directions.iter().find(|d| d.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.dim(),
            });
        }
        let rows: Vec<Vec<u32>> = directions.iter().map(|d| d.0.clone()).collect();
        if rank(field, &rows) != rows.len() {
            return Err(Error::invalid("subspace directions are linearly dependent"));
        }
        Ok(AffineSubspace { base, directions })
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// The point `base + sum_i c_i directions_i`.
    pub fn point(&self, field: Fp, coeffs: &[u32]) -> Point {
        let mut out = self.base.0.clone();
        for (&c, d) in coeffs.iter().zip(&self.directions) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&d.0) {
                *o = field.add(*o, field.mul(c, x));
            }
        }
        Point(out)
    }

    /// Packed ambient indices of the subspace's points, ordered by the packed
    /// index of their coordinates in F_p^{dim}.
    pub fn point_indices(&self, ambient: &Domain) -> Vec<u64> {
        let local = Domain::new(ambient.field(), self.dim()).expect("subspace dimension");
        let base = ambient.index_of(self.base.coords());
        let dirs: Vec<u64> = self.directions.iter().map(|d| ambient.index_of(d.coords())).collect();
        (0..local.size())
            .map(|i| {
                let c = local.point(i);
                let mut acc = base;
                for (&ci, &d) in c.coords().iter().zip(&dirs) {
                    if ci != 0 {
                        acc = ambient.add(acc, ambient.scale(ci, d));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn contains(&self, field: Fp, x: &Point) -> bool {
        let diff: Vec<u32> = x
            .coords()
            .iter()
            .zip(self.base.coords())
            .map(|(&a, &b)| field.sub(a, b))
            .collect();
        let rows: Vec<Vec<u32>> = self.directions.iter().map(|d| d.0.clone()).collect();
        in_span(field, &rows, &diff)
    }
}

/// All affine hyperplanes of F_p^n, each exactly once.
///
/// A hyperplane `{x : a·x = b}` is enumerated with `a` normalized so its first
/// nonzero entry is 1; there are `p (p^n - 1) / (p - 1)` of them.
pub fn enumerate_hyperplanes(field: Fp, n: usize) -> Result<Vec<AffineSubspace>> {
    if n == 0 {
        return Err(Error::invalid("hyperplanes need n >= 1"));
    }
    let p = field.p();
    let domain = Domain::new(field, n)?;
    let mut out = Vec::new();
    for idx in 1..domain.size() {
        let a = domain.point(idx);
        let lead = a.coords().iter().position(|&c| c != 0).unwrap();
        if a.0[lead] != 1 {
            continue;
        }
        let directions: Vec<Point> = (0..n)
            .filter(|&i| i != lead)
            .map(|i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                v[lead] = field.neg(a.0[i]);
                Point(v)
            })
            .collect();
        for b in 0..p {
            let mut base = vec![0u32; n];
            base[lead] = b;
            out.push(AffineSubspace {
                base: Point(base),
                directions: directions.clone(),
            });
        }
    }
    Ok(out)
}

/// An invertible affine map `x ↦ M x + t` on F_p^n. `matrix` is row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<Vec<u32>>,
    pub shift: Vec<u32>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            matrix: (0..n).map(|i| Point::unit(n, i).0).collect(),
            shift: vec![0; n],
        }
    }

    /// A uniformly random invertible affine map.
    pub fn random<R: Rng + ?Sized>(field: Fp, n: usize, rng: &mut R) -> Self {
        loop {
            let matrix: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..field.p())).collect())
                .collect();
            if rank(field, &matrix) == n {
                let shift = (0..n).map(|_| rng.gen_range(0..field.p())).collect();
                return AffineMap { matrix, shift };
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn apply(&self, field: Fp, x: &[u32]) -> Vec<u32> {
        self.matrix
            .iter()
            .zip(&self.shift)
            .map(|(row, &t)| {
                row.iter()
                    .zip(x)
                    .fold(t, |acc, (&m, &xi)| field.add(acc, field.mul(m, xi)))
            })
            .collect()
    }

    /// The map as a permutation of packed indices: `perm[i]` is the index of
    /// the image of point `i`.
    pub fn permutation(&self, domain: &Domain) -> Vec<u64> {
        (0..domain.size())
            .map(|i| {
                let x = domain.point(i);
                domain.index_of(&self.apply(domain.field(), x.coords()))
            })
            .collect()
    }
}
