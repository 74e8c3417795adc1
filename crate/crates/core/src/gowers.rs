//! Complex-valued functions on F_p^n: multiplicative derivatives, Gowers
//! norms, bias, and averages over systems of linear forms.

use crate::config::{pow_u128, Caps};
use crate::error::{Error, Result};
use crate::field::{Domain, Fp, LinearForm, Point};
use crate::par;
use crate::poly::NCPoly;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

/// Tolerance for identities that hold exactly in exact arithmetic.
pub const TOLERANCE: f64 = 1e-9;

/// A dense table `F_p^n → C`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableFn {
    domain: Domain,
    values: Vec<Complex64>,
}

impl TableFn {
    pub fn new(p: u32, n: usize, values: Vec<Complex64>) -> Result<Self> {
        let domain = Domain::new(Fp::new(p)?, n)?;
        if values.len() as u64 != domain.size() {
            return Err(Error::invalid(format!(
                "table has {} entries, F_{p}^{n} has {}",
                values.len(),
                domain.size()
            )));
        }
        Ok(TableFn { domain, values })
    }

    pub fn from_fn(p: u32, n: usize, caps: &Caps, f: impl Fn(&Point) -> Complex64) -> Result<Self> {
        let domain = Domain::new(Fp::new(p)?, n)?;
        caps.check("function table", domain.size() as u128)?;
        let values = domain.points().map(|x| f(&x)).collect();
        Ok(TableFn { domain, values })
    }

    pub fn constant(p: u32, n: usize, c: Complex64, caps: &Caps) -> Result<Self> {
        Self::from_fn(p, n, caps, |_| c)
    }

    /// The table of `e(P(x))`.
    pub fn phase_of(poly: &NCPoly, caps: &Caps) -> Result<Self> {
        let domain = Domain::new(Fp::new(poly.p())?, poly.n())?;
        caps.check("phase table", domain.size() as u128)?;
        let t = poly.table()?;
        let values = (0..domain.size()).map(|i| t.value(i).phase()).collect();
        Ok(TableFn { domain, values })
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

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, idx: u64) -> Complex64 {
        self.values[idx as usize]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &TableFn) -> Result<TableFn> {
        self.same_domain(other)?;
        Ok(TableFn {
            domain: self.domain,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    fn same_domain(&self, other: &TableFn) -> Result<()> {
        if self.p() != other.p() {
            return Err(Error::FieldMismatch {
                left: self.p(),
                right: other.p(),
            });
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }

    /// `Δ_h f(x) = f(x+h) · conj(f(x))`.
    pub fn mult_derivative(&self, h: &Point) -> Result<TableFn> {
        let hi = self.domain.index(h)?;
        let values = (0..self.domain.size())
            .map(|x| self.at(self.domain.add(x, hi)) * self.at(x).conj())
            .collect();
        Ok(TableFn {
            domain: self.domain,
            values,
        })
    }

    /// `E_x f(x)`.
    pub fn bias(&self) -> Complex64 {
        par::sum_complex(self.domain.size(), |i| self.at(i)) / self.domain.size() as f64
    }

    /// `Δ_{h_1} ⋯ Δ_{h_r} f (x)` as a product over the `2^r` cube corners.
    fn cube_product(&self, x: u64, hs: &[u64]) -> Complex64 {
        let r = hs.len();
        let mut acc = Complex64::new(1.0, 0.0);
        for mask in 0u32..(1 << r) {
            let mut y = x;
            for (j, &h) in hs.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    y = self.domain.add(y, h);
                }
            }
            let v = self.at(y);
            acc *= if (r as u32 - mask.count_ones()).is_multiple_of(2) {
                v
            } else {
                v.conj()
            };
        }
        acc
    }
}

/// How a Gowers norm or a counting average is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EvalMode {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

/// A computed quantity together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub exact: bool,
    /// Standard error of the sampled mean (Monte Carlo only).
    pub std_error: Option<f64>,
    pub samples: Option<u64>,
}

impl Estimate {
    fn exact(value: f64) -> Self {
        Estimate {
            value,
            exact: true,
            std_error: None,
            samples: None,
        }
    }
}

/// `‖f‖_{U^d}`, exhaustively.
///
/// Uses `‖f‖_{U^d}^{2^d} = E_{h_1..h_{d-1}} |E_x Δ_{h_1} ⋯ Δ_{h_{d-1}} f(x)|^2`,
/// so the work is `p^{nd}` rather than `p^{n(d+1)}`; the cap is checked
/// against `p^{nd}`.
pub fn gowers_norm(f: &TableFn, d: u32, caps: &Caps) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("Gowers norm order must be at least 1"));
    }
    if d == 1 {
        return Ok(f.bias().norm());
    }
    let size = f.domain.size();
    let r = d as u64 - 1;
    caps.check("Gowers norm sweep", pow_u128(size, r + 1))?;
    let outer = size.pow(r as u32);
    let total = par::sum_f64(outer, |mut idx| {
        let hs: Vec<u64> = (0..r)
            .map(|_| {
                let h = idx % size;
                idx /= size;
                h
            })
            .collect();
        let mut inner = Complex64::new(0.0, 0.0);
        for x in 0..size {
            inner += f.cube_product(x, &hs);
        }
        (inner / size as f64).norm_sqr()
    });
    let power = (total / outer as f64).max(0.0);
    Ok(power.powf(1.0 / (1u64 << d) as f64))
}

/// `‖f‖_{U^d}` by sampling `(x, h_1, ..., h_d)`; the standard error refers to
/// the estimate of `‖f‖^{2^d}`.
pub fn gowers_norm_sampled(f: &TableFn, d: u32, samples: u64, seed: u64) -> Result<Estimate> {
    if d == 0 || samples < 2 {
        return Err(Error::invalid("need order >= 1 and at least two samples"));
    }
    let size = f.domain.size();
    let draws: Vec<f64> = par::map_chunks(samples, |range| {
        range
            .map(|s| {
                let mut rng = par::rng(seed, s);
                let x = rng.gen_range(0..size);
                let hs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..size)).collect();
                f.cube_product(x, &hs).re
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let (mean, se) = mean_and_se(&draws);
    Ok(Estimate {
        value: mean.max(0.0).powf(1.0 / (1u64 << d) as f64),
        exact: false,
        std_error: Some(se),
        samples: Some(samples),
    })
}

pub fn gowers(f: &TableFn, d: u32, mode: EvalMode, caps: &Caps) -> Result<Estimate> {
    match mode {
        EvalMode::Exhaustive => gowers_norm(f, d, caps).map(Estimate::exact),
        EvalMode::MonteCarlo { samples, seed } => gowers_norm_sampled(f, d, samples, seed),
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn check_forms(fs: &[TableFn], forms: &[LinearForm], ell: usize) -> Result<()> {
    if fs.len() != forms.len() {
        return Err(Error::ArityMismatch {
            expected: forms.len(),
            got: fs.len(),
        });
    }
    for form in forms {
        if form.arity() != ell {
            return Err(Error::ArityMismatch {
                expected: ell,
                got: form.arity(),
            });
        }
    }
    for f in &fs[1..] {
        fs[0].same_domain(f)?;
    }
    Ok(())
}

fn form_product(fs: &[TableFn], forms: &[LinearForm], xs: &[u64]) -> Complex64 {
    let dom = fs[0].domain;
    let mut acc = Complex64::new(1.0, 0.0);
    for (f, form) in fs.iter().zip(forms) {
        acc *= f.at(dom.combine(form.weights(), xs));
    }
    acc
}

/// `E_{x_1..x_ℓ} Π_i f_i(L_i(x_1, ..., x_ℓ))`, exhaustively.
pub fn counting_average(fs: &[TableFn], forms: &[LinearForm], ell: usize, caps: &Caps) -> Result<Complex64> {
    if fs.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    check_forms(fs, forms, ell)?;
    let size = fs[0].domain.size();
    caps.check("counting average", pow_u128(size, ell as u64))?;
    let total = size.pow(ell as u32);
    let sum = par::sum_complex(total, |mut idx| {
        let xs: Vec<u64> = (0..ell)
            .map(|_| {
                let x = idx % size;
                idx /= size;
                x
            })
            .collect();
        form_product(fs, forms, &xs)
    });
    Ok(sum / total as f64)
}

/// Sampled counting average: returns the mean and the standard error of
/// each of its real and imaginary parts.
pub fn counting_average_sampled(
    fs: &[TableFn],
    forms: &[LinearForm],
    ell: usize,
    samples: u64,
    seed: u64,
) -> Result<(Complex64, f64, f64)> {
    if fs.is_empty() {
        return Ok((Complex64::new(1.0, 0.0), 0.0, 0.0));
    }
    check_forms(fs, forms, ell)?;
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let size = fs[0].domain.size();
    let draws: Vec<Complex64> = par::map_chunks(samples, |range| {
        range
            .map(|s| {
                let mut rng = par::rng(seed, s);
                let xs: Vec<u64> = (0..ell).map(|_| rng.gen_range(0..size)).collect();
                form_product(fs, forms, &xs)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let re: Vec<f64> = draws.iter().map(|z| z.re).collect();
    let im: Vec<f64> = draws.iter().map(|z| z.im).collect();
    let (mr, sr) = mean_and_se(&re);
    let (mi, si) = mean_and_se(&im);
    Ok((Complex64::new(mr, mi), sr, si))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{random_poly, Monomial};
    use crate::torus::phase_of_fraction;
    use proptest::prelude::{prop, prop_assert, proptest, ProptestConfig};

    fn caps() -> Caps {
        Caps::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The defining formula, with all `d` directions and `x` enumerated.
    fn literal_norm(f: &TableFn, d: u32) -> f64 {
        let size = f.domain.size();
        let total = size.pow(d + 1);
        let mut acc = c(0.0, 0.0);
        for mut idx in 0..total {
            let x = idx % size;
            idx /= size;
            let hs: Vec<u64> = (0..d)
                .map(|_| {
                    let h = idx % size;
                    idx /= size;
                    h
                })
                .collect();
            acc += f.cube_product(x, &hs);
        }
        (acc / total as f64).norm().powf(1.0 / (1u64 << d) as f64)
    }

    /// `Σ_ξ |f̂(ξ)|^4` by direct character sums.
    fn fourier_u2_fourth(f: &TableFn) -> f64 {
        let dom = f.domain;
        let p = dom.p() as u64;
        let mut total = 0.0;
        for xi in dom.points() {
            let mut hat = c(0.0, 0.0);
            for (i, x) in dom.points().enumerate() {
                let dot: u64 = xi.0.iter().zip(&x.0).map(|(&a, &b)| a as u64 * b as u64).sum();
                hat += f.at(i as u64) * phase_of_fraction((p - dot % p) % p, p);
            }
            total += (hat / dom.size() as f64).norm().powi(4);
        }
        total
    }

    fn random_table(p: u32, n: usize, seed: u64) -> TableFn {
        let mut rng = par::rng(seed, 0);
        let dom = Domain::new(Fp::new(p).unwrap(), n).unwrap();
        let values = (0..dom.size())
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        TableFn::new(p, n, values).unwrap()
    }

    #[test]
    fn phase_examples() {
        let zero = TableFn::phase_of(&NCPoly::zero(2, 1), &caps()).unwrap();
        assert_eq!(zero.values(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        let iota = TableFn::phase_of(&NCPoly::coordinate(2, 1, 0), &caps()).unwrap();
        assert_eq!(iota.values(), &[c(1.0, 0.0), c(-1.0, 0.0)]);
        let q = NCPoly::from_monomials(
            2,
            1,
            [Monomial {
                exps: vec![1],
                depth: 1,
                coeff: 1,
            }],
        )
        .unwrap();
        let t = TableFn::phase_of(&q, &caps()).unwrap();
        assert_eq!(t.values(), &[c(1.0, 0.0), c(0.0, 1.0)]);
    }

    #[test]
    fn derivative_examples() {
        let one = TableFn::constant(3, 2, c(1.0, 0.0), &caps()).unwrap();
        assert_eq!(one.mult_derivative(&Point(vec![1, 2])).unwrap(), one);
        let f = TableFn::phase_of(&random_poly(3, 2, 3, 0, 4).unwrap(), &caps()).unwrap();
        let d0 = f.mult_derivative(&Point(vec![0, 0])).unwrap();
        assert!(d0.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < TOLERANCE));
    }

    #[test]
    fn multiplicative_derivative_matches_additive() {
        for seed in 0..50u64 {
            let p = [2, 3][seed as usize % 2];
            let k = (seed % 3 == 0) as u32;
            let poly = random_poly(p, 2, k * (p - 1) + 2, k, seed).unwrap();
            let dom = Domain::new(Fp::new(p).unwrap(), 2).unwrap();
            let h = dom.point(seed % dom.size());
            let lhs = TableFn::phase_of(&poly, &caps()).unwrap().mult_derivative(&h).unwrap();
            let dp = poly.additive_derivative(&h).unwrap();
            let rhs = TableFn::phase_of(&dp, &caps()).unwrap();
            for (a, b) in lhs.values().iter().zip(rhs.values()) {
                assert!((a - b).norm() < TOLERANCE);
            }
        }
    }

    #[test]
    fn norm_examples() {
        let one = TableFn::constant(2, 3, c(1.0, 0.0), &caps()).unwrap();
        for d in 1..4 {
            assert!((gowers_norm(&one, d, &caps()).unwrap() - 1.0).abs() < TOLERANCE);
        }
        let prod = NCPoly::classical(2, 2, &[(vec![1, 1], 1)]).unwrap();
        let f = TableFn::phase_of(&prod, &caps()).unwrap();
        let u2 = gowers_norm(&f, 2, &caps()).unwrap();
        assert!((u2 - 2f64.powf(-0.5)).abs() < TOLERANCE);
        assert!((u2 - literal_norm(&f, 2)).abs() < TOLERANCE);
        assert!((u2.powi(4) - fourier_u2_fourth(&f)).abs() < TOLERANCE);
    }

    #[test]
    fn polynomial_phases_have_unit_norm() {
        for seed in 0..30u64 {
            let p = [2, 3][seed as usize % 2];
            let k = (seed % 2) as u32;
            let d = k * (p - 1) + 1 + (seed / 2 % 2) as u32;
            let poly = random_poly(p, 2, d, k, seed).unwrap();
            let f = TableFn::phase_of(&poly, &caps()).unwrap();
            assert!((gowers_norm(&f, d + 1, &caps()).unwrap() - 1.0).abs() < TOLERANCE);
        }
    }

    #[test]
    fn reduction_formula_matches_literal_definition() {
        for seed in 0..6 {
            let f = random_table(2, 2, seed);
            for d in 1..=3 {
                let a = gowers_norm(&f, d, &caps()).unwrap();
                assert!((a - literal_norm(&f, d)).abs() < 1e-9, "d={d}");
            }
            let g = random_table(3, 1, seed);
            assert!((gowers_norm(&g, 2, &caps()).unwrap().powi(4) - fourier_u2_fourth(&g)).abs() < 1e-9);
        }
    }

    #[test]
    fn bias_examples() {
        let one = TableFn::constant(2, 2, c(1.0, 0.0), &caps()).unwrap();
        assert!((one.bias() - c(1.0, 0.0)).norm() < TOLERANCE);
        let f = TableFn::phase_of(&NCPoly::coordinate(2, 1, 0), &caps()).unwrap();
        assert!(f.bias().norm() < TOLERANCE);
        assert!((gowers_norm(&f, 1, &caps()).unwrap() - f.bias().norm()).abs() < TOLERANCE);
    }

    #[test]
    fn cap_is_enforced() {
        let f = TableFn::constant(2, 8, c(1.0, 0.0), &caps()).unwrap();
        assert!(matches!(
            gowers_norm(&f, 4, &Caps::with_enumeration(1 << 20)),
            Err(Error::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn sampled_norm_is_close() {
        let poly = NCPoly::classical(2, 4, &[(vec![1, 1, 0, 0], 1), (vec![0, 0, 1, 1], 1)]).unwrap();
        let f = TableFn::phase_of(&poly, &caps()).unwrap();
        let exact = gowers_norm(&f, 2, &caps()).unwrap().powi(4);
        let est = gowers_norm_sampled(&f, 2, 40_000, 5).unwrap();
        assert!((est.value.powi(4) - exact).abs() < 5.0 * est.std_error.unwrap() + 1e-3);
    }

    #[test]
    fn affinity_average() {
        let f = TableFn::phase_of(&NCPoly::coordinate(2, 1, 0), &caps()).unwrap();
        let forms: Vec<LinearForm> = [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]]
            .iter()
            .map(|w| LinearForm(w.to_vec()))
            .collect();
        let fs = vec![f.clone(), f.clone(), f.clone(), f];
        let avg = counting_average(&fs, &forms, 3, &caps()).unwrap();
        assert!((avg - c(1.0, 0.0)).norm() < TOLERANCE);
        let ones: Vec<TableFn> = (0..4)
            .map(|_| TableFn::constant(2, 2, c(1.0, 0.0), &caps()).unwrap())
            .collect();
        assert!((counting_average(&ones, &forms, 3, &caps()).unwrap() - c(1.0, 0.0)).norm() < TOLERANCE);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn monotone_in_order(seed in 0u64..10_000, p in prop::sample::select(vec![2u32, 3])) {
            let f = random_table(p, 2, seed);
            let mut prev = 0.0;
            for d in 1..=3 {
                let v = gowers_norm(&f, d, &Caps::default()).unwrap();
                prop_assert!(prev <= v + TOLERANCE);
                prev = v;
            }
            prop_assert!(f.bias().norm() <= gowers_norm(&f, 2, &Caps::default()).unwrap() + TOLERANCE);
        }

        #[test]
        fn modulation_invariance(seed in 0u64..10_000) {
            let f = random_table(2, 3, seed);
            let poly = random_poly(2, 3, 2, 0, seed).unwrap();
            let g = f.mul(&TableFn::phase_of(&poly, &Caps::default()).unwrap()).unwrap();
            let a = gowers_norm(&f, 3, &Caps::default()).unwrap();
            let b = gowers_norm(&g, 3, &Caps::default()).unwrap();
            prop_assert!((a - b).abs() < TOLERANCE);
        }
    }
}
