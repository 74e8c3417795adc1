//! Affine constraints, Cauchy-Schwarz complexity, dependency sets and
//! consistency of atom tuples.

use crate::config::{pow_u128, Caps};
use crate::error::{Error, Result};
use crate::field::{form_le, in_span, AffineForm, Domain, Fp, LinearForm};
use crate::par;
use crate::poly::{admissible_terms, LevelTable, Monomial, NCPoly};
use crate::torus::{modulus, TorusValue};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

/// Graded order on affine forms: by weight, then lexicographically.
pub fn graded_cmp(a: &AffineForm, b: &AffineForm) -> Ordering {
    (a.weight(), a.weights()).cmp(&(b.weight(), b.weights()))
}

/// A downward-closed family of affine forms on `ell` variables containing
/// the identity form `x_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConstraintRepr", into = "ConstraintRepr")]
pub struct AffineConstraint {
    ell: usize,
    forms: Vec<AffineForm>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintRepr {
    ell: usize,
    forms: Vec<Vec<u32>>,
}

impl TryFrom<ConstraintRepr> for AffineConstraint {
    type Error = Error;
    fn try_from(r: ConstraintRepr) -> Result<Self> {
        let forms = r.forms.into_iter().map(AffineForm::new).collect::<Result<Vec<_>>>()?;
        let c = AffineConstraint::new(forms)?;
        if c.ell != r.ell {
            return Err(Error::ArityMismatch {
                expected: r.ell,
                got: c.ell,
            });
        }
        Ok(c)
    }
}

impl From<AffineConstraint> for ConstraintRepr {
    fn from(c: AffineConstraint) -> Self {
        ConstraintRepr {
            ell: c.ell,
            forms: c.forms.into_iter().map(Vec::from).collect(),
        }
    }
}

impl AffineConstraint {
    /// Validates the forms and puts them in canonical order.
    pub fn new(mut forms: Vec<AffineForm>) -> Result<Self> {
        let ell = forms
            .first()
            .map(|f| f.arity())
            .ok_or_else(|| Error::invalid("empty constraint"))?;
        if let Some(bad) = forms.iter().find(|f| f.arity() != ell) {
            return Err(Error::ArityMismatch {
                expected: ell,
                got: bad.arity(),
            });
        }
        forms.sort_by(graded_cmp);
        if forms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("constraint has duplicate forms"));
        }
        let c = AffineConstraint { ell, forms };
        if c.forms[0] != AffineForm::identity(ell) {
            return Err(Error::invalid("constraint must contain the identity form x_1"));
        }
        if c.closure_forms() != c.forms {
            return Err(Error::invalid("constraint is not downward closed"));
        }
        Ok(c)
    }

    fn closure_forms(&self) -> Vec<AffineForm> {
        closure_of(self.ell, &self.forms)
    }

    /// The constraint generated by the single form `(1, 1, ..., 1)`: all
    /// `2^{ell-1}` forms `x_1 + Σ_{t∈S} x_t`. For `ell = 3` this is the
    /// affinity constraint `(x, x+y, x+z, x+y+z)`.
    pub fn cube(ell: usize) -> Self {
        downward_closure(&[AffineForm::new(vec![1; ell.max(1)]).expect("first weight 1")]).expect("valid")
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn size(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn linear_forms(&self) -> Vec<LinearForm> {
        self.forms.iter().map(|f| f.linear().clone()).collect()
    }

    /// Checks that all weights are below `p`.
    pub fn check_field(&self, field: Fp) -> Result<()> {
        for f in &self.forms {
            if f.weights().iter().any(|&w| w >= field.p()) {
                return Err(Error::invalid(format!(
                    "form {:?} has weights outside F_{}",
                    f.weights(),
                    field.p()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AffineConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.forms.iter().map(|form| render_form(form.weights())).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn render_form(w: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("{c}x{}", i + 1)),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn closure_of(ell: usize, forms: &[AffineForm]) -> Vec<AffineForm> {
    let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
    out.insert(AffineForm::identity(ell).weights().to_vec());
    for f in forms {
        let w = f.weights();
        let mut cur = vec![0u32; ell];
        cur[0] = 1;
        // odometer over 0..=w_t for t >= 2
        loop {
            out.insert(cur.clone());
            let mut t = 1;
            while t < ell && cur[t] == w[t] {
                cur[t] = 0;
                t += 1;
            }
            if t >= ell {
                break;
            }
            cur[t] += 1;
        }
    }
    let mut forms: Vec<AffineForm> = out.into_iter().map(|w| AffineForm::new(w).expect("w1 = 1")).collect();
    forms.sort_by(graded_cmp);
    forms
}

/// The smallest downward-closed family containing `forms` and `x_1`.
pub fn downward_closure(forms: &[AffineForm]) -> Result<AffineConstraint> {
    let ell = forms
        .first()
        .map(|f| f.arity())
        .ok_or_else(|| Error::invalid("no forms given"))?;
    if let Some(bad) = forms.iter().find(|f| f.arity() != ell) {
        return Err(Error::ArityMismatch {
            expected: ell,
            got: bad.arity(),
        });
    }
    Ok(AffineConstraint {
        ell,
        forms: closure_of(ell, forms),
    })
}

/// An affine constraint together with a forbidden value pattern `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "InducedRepr", into = "InducedRepr")]
pub struct InducedConstraint {
    pub constraint: AffineConstraint,
    pub sigma: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct InducedRepr {
    ell: usize,
    forms: Vec<Vec<u32>>,
    sigma: Vec<u32>,
}

impl InducedConstraint {
    /// `forms` and `sigma` are matched positionally before the forms are put
    /// in canonical order.
    pub fn new(forms: Vec<AffineForm>, sigma: Vec<u32>) -> Result<Self> {
        if forms.len() != sigma.len() {
            return Err(Error::ArityMismatch {
                expected: forms.len(),
                got: sigma.len(),
            });
        }
        let mut pairs: Vec<(AffineForm, u32)> = forms.into_iter().zip(sigma).collect();
        pairs.sort_by(|a, b| graded_cmp(&a.0, &b.0));
        let (forms, sigma): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Ok(InducedConstraint {
            constraint: AffineConstraint::new(forms)?,
            sigma,
        })
    }

    pub fn ell(&self) -> usize {
        self.constraint.ell()
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }
}

impl TryFrom<InducedRepr> for InducedConstraint {
    type Error = Error;
    fn try_from(r: InducedRepr) -> Result<Self> {
        let forms = r.forms.into_iter().map(AffineForm::new).collect::<Result<Vec<_>>>()?;
        let c = InducedConstraint::new(forms, r.sigma)?;
        if c.ell() != r.ell {
            return Err(Error::ArityMismatch {
                expected: r.ell,
                got: c.ell(),
            });
        }
        Ok(c)
    }
}

impl From<InducedConstraint> for InducedRepr {
    fn from(c: InducedConstraint) -> Self {
        InducedRepr {
            ell: c.constraint.ell,
            forms: c.constraint.forms.into_iter().map(Vec::from).collect(),
            sigma: c.sigma,
        }
    }
}

/// Cauchy-Schwarz complexity; `None` means infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Complexity(pub Option<u32>);

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "infinity"),
        }
    }
}

/// Least `d` such that for every `i` the other forms split into `d + 1`
/// classes none of whose spans contains `L_i`.
pub fn cs_complexity(field: Fp, forms: &[LinearForm]) -> Result<Complexity> {
    let m = forms.len();
    if m < 2 {
        return Err(Error::invalid("complexity needs at least two forms"));
    }
    if m > 16 {
        return Err(Error::invalid("complexity search supports at most 16 forms"));
    }
    let ell = forms[0].arity();
    if let Some(bad) = forms.iter().find(|f| f.arity() != ell) {
        return Err(Error::ArityMismatch {
            expected: ell,
            got: bad.arity(),
        });
    }
    let rows: Vec<Vec<u32>> = forms
        .iter()
        .map(|f| f.weights().iter().map(|&w| w % field.p()).collect())
        .collect();
    let mut worst = 0;
    for i in 0..m {
        let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        match min_blocks(field, &rows, i, &others) {
            None => return Ok(Complexity(None)),
            Some(b) => worst = worst.max(b - 1),
        }
    }
    Ok(Complexity(Some(worst as u32)))
}

/// Fewest blocks partitioning `others` so no block spans `rows[target]`.
fn min_blocks(field: Fp, rows: &[Vec<u32>], target: usize, others: &[usize]) -> Option<usize> {
    let mut memo: HashMap<u32, bool> = HashMap::new();
    let mut avoids = |mask: u32| -> bool {
        *memo.entry(mask).or_insert_with(|| {
            let block: Vec<Vec<u32>> = (0..rows.len())
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| rows[j].clone())
                .collect();
            !in_span(field, &block, &rows[target])
        })
    };
    if !avoids(0) {
        return None;
    }
    if others.iter().any(|&j| !avoids(1 << j)) {
        return None;
    }
    for b in 1..=others.len().max(1) {
        let mut blocks: Vec<u32> = Vec::new();
        if assign(others, 0, b, &mut blocks, &mut avoids) {
            return Some(b);
        }
    }
    Some(others.len().max(1))
}

fn assign(others: &[usize], pos: usize, b: usize, blocks: &mut Vec<u32>, avoids: &mut impl FnMut(u32) -> bool) -> bool {
    if pos == others.len() {
        return true;
    }
    let bit = 1u32 << others[pos];
    for k in 0..blocks.len() {
        let next = blocks[k] | bit;
        if avoids(next) {
            let old = blocks[k];
            blocks[k] = next;
            if assign(others, pos + 1, b, blocks, avoids) {
                return true;
            }
            blocks[k] = old;
        }
    }
    if blocks.len() < b {
        blocks.push(bit);
        if assign(others, pos + 1, b, blocks, avoids) {
            return true;
        }
        blocks.pop();
    }
    false
}

/// The `(d,k)`-dependency set of a constraint: all `λ ∈ [0, p^{k+1})^m`
/// with `Σ_j λ_j P(L_j(x)) ≡ 0` for every polynomial `P` of degree at most
/// `d` and depth at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependencySet {
    pub p: u32,
    pub d: u32,
    pub k: u32,
    pub m: usize,
    pub witness_dim: usize,
    /// Sorted member tuples.
    pub tuples: Vec<Vec<u64>>,
    /// Size of the annihilator of the polynomials of exact degree `d` and
    /// depth `k`; `None` when no such polynomial exists.
    pub exact_size: Option<usize>,
}

impl DependencySet {
    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn modulus(&self) -> u64 {
        modulus(self.p, self.k)
    }

    pub fn contains(&self, lambda: &[u64]) -> bool {
        self.tuples.binary_search(&lambda.to_vec()).is_ok()
    }

    /// Contains zero and is closed under addition and negation.
    pub fn is_subgroup(&self) -> bool {
        let q = self.modulus();
        if !self.contains(&vec![0; self.m]) {
            return false;
        }
        for a in &self.tuples {
            let neg: Vec<u64> = a.iter().map(|&x| (q - x) % q).collect();
            if !self.contains(&neg) {
                return false;
            }
            for b in &self.tuples {
                let s: Vec<u64> = a.iter().zip(b).map(|(&x, &y)| (x + y) % q).collect();
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Sorted tuples as CSV lines `l1,l2,...,lm`.
    pub fn to_csv(&self) -> String {
        let mut s = (1..=self.m).map(|j| format!("l{j}")).collect::<Vec<_>>().join(",");
        s.push('\n');
        for t in &self.tuples {
            s.push_str(&t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

/// Dependency set with the default witness dimension `max(d, 2)`.
pub fn dependency_set(field: Fp, a: &AffineConstraint, d: u32, k: u32, caps: &Caps) -> Result<DependencySet> {
    dependency_set_with(field, a, d, k, (d as usize).max(2), caps)
}

/// Dependency set computed against the monomials of degree `<= d` and depth
/// `<= k` (and the constants) in `witness_dim` variables. A tuple killing
/// these kills every such polynomial in any number of variables, since the
/// identity is linear in the monomials and each monomial involves at most `d`
/// coordinates.
pub fn dependency_set_with(
    field: Fp,
    a: &AffineConstraint,
    d: u32,
    k: u32,
    witness_dim: usize,
    caps: &Caps,
) -> Result<DependencySet> {
    a.check_field(field)?;
    let p = field.p();
    if witness_dim < d as usize {
        return Err(Error::invalid(format!(
            "witness dimension {witness_dim} is smaller than the degree {d}"
        )));
    }
    let m = a.size();
    let ell = a.ell();
    let dom = Domain::new(field, witness_dim)?;
    caps.check("dependency witness tuples", pow_u128(dom.size(), ell as u64))?;
    caps.check("dependency λ-tuples", pow_u128(modulus(p, k), m as u64))?;

    let keys = admissible_terms(p, witness_dim, d, k)?;
    let monomial_tables: Vec<LevelTable> = keys
        .iter()
        .map(|(e, kk)| {
            NCPoly::from_monomials(
                p,
                witness_dim,
                [Monomial {
                    exps: e.clone(),
                    depth: *kk,
                    coeff: 1,
                }],
            )
            .and_then(|q| q.table_at(k))
        })
        .collect::<Result<_>>()?;
    let constant = LevelTable {
        p,
        n: witness_dim,
        level: k,
        nums: vec![1; dom.size() as usize],
    };

    let mut gens = monomial_tables.clone();
    gens.push(constant.clone());
    let tuples = annihilator(&dom, a, k, &gens);

    // exact (d,k): a top-degree monomial R, and R + M for every other generator
    let q = modulus(p, k);
    let top = keys
        .iter()
        .position(|(e, kk)| *kk == k && e.iter().sum::<u32>() + k * (p - 1) == d);
    let exact_size = top.map(|t| {
        let r = &monomial_tables[t];
        let mut exact_gens = vec![r.clone()];
        for (i, g) in gens.iter().enumerate() {
            if i != t {
                let nums = r.nums.iter().zip(&g.nums).map(|(&x, &y)| (x + y) % q).collect();
                exact_gens.push(LevelTable { nums, ..r.clone() });
            }
        }
        annihilator(&dom, a, k, &exact_gens).len()
    });

    Ok(DependencySet {
        p,
        d,
        k,
        m,
        witness_dim,
        tuples,
        exact_size,
    })
}

fn annihilator(dom: &Domain, a: &AffineConstraint, k: u32, gens: &[LevelTable]) -> Vec<Vec<u64>> {
    let p = dom.p();
    let q = modulus(p, k);
    let ell = a.ell();
    let m = a.size();
    let forms = a.linear_forms();
    let size = dom.size();
    let total = size.pow(ell as u32);
    let mut rows: HashSet<Vec<u64>> = HashSet::new();
    for mut idx in 0..total {
        let xs: Vec<u64> = (0..ell)
            .map(|_| {
                let x = idx % size;
                idx /= size;
                x
            })
            .collect();
        let points: Vec<u64> = forms.iter().map(|f| dom.combine(f.weights(), &xs)).collect();
        for g in gens {
            let row: Vec<u64> = points.iter().map(|&y| g.nums[y as usize]).collect();
            if row.iter().any(|&v| v != 0) {
                rows.insert(row);
            }
        }
    }
    let mut rows: Vec<Vec<u64>> = rows.into_iter().collect();
    rows.sort();
    let count = q.pow(m as u32);
    let found: Vec<Vec<u64>> = par::map_chunks(count, |range| {
        range
            .filter_map(|mut idx| {
                let lambda: Vec<u64> = (0..m)
                    .map(|_| {
                        let v = idx % q;
                        idx /= q;
                        v
                    })
                    .collect();
                let ok = rows.iter().all(|row| {
                    let s: u128 = row.iter().zip(&lambda).map(|(&r, &l)| r as u128 * l as u128).sum();
                    s.is_multiple_of(q as u128)
                });
                ok.then_some(lambda)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let mut found = found;
    found.sort();
    found
}

/// Whether the atom tuple `atoms[j][i] = b_{j,i}` (form `j`, polynomial `i`)
/// satisfies `Σ_j λ_j b_{j,i} = 0` for every `λ` in the `i`-th dependency set.
pub fn is_consistent(sets: &[DependencySet], atoms: &[Vec<TorusValue>]) -> Result<bool> {
    let m = sets.first().map_or(atoms.len(), |s| s.m);
    if atoms.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: atoms.len(),
        });
    }
    for row in atoms {
        if row.len() != sets.len() {
            return Err(Error::ArityMismatch {
                expected: sets.len(),
                got: row.len(),
            });
        }
        for (b, s) in row.iter().zip(sets) {
            if !b.in_level(s.k) {
                return Err(Error::invalid(format!("atom value {b} is not in U_{}", s.k + 1)));
            }
        }
    }
    for (i, s) in sets.iter().enumerate() {
        let q = s.modulus() as u128;
        let nums: Vec<u128> = atoms.iter().map(|row| row[i].numerator_at(s.k) as u128).collect();
        for lambda in &s.tuples {
            let sum: u128 = lambda.iter().zip(&nums).map(|(&l, &b)| l as u128 * b).sum();
            if !sum.is_multiple_of(q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes the dependency sets for every `(d_i, k_i)` and checks the tuple.
pub fn consistency_check(
    field: Fp,
    a: &AffineConstraint,
    degrees: &[u32],
    depths: &[u32],
    atoms: &[Vec<TorusValue>],
    caps: &Caps,
) -> Result<bool> {
    let sets = dependency_sets(field, a, degrees, depths, caps)?;
    is_consistent(&sets, atoms)
}

pub fn dependency_sets(
    field: Fp,
    a: &AffineConstraint,
    degrees: &[u32],
    depths: &[u32],
    caps: &Caps,
) -> Result<Vec<DependencySet>> {
    if degrees.len() != depths.len() {
        return Err(Error::ArityMismatch {
            expected: degrees.len(),
            got: depths.len(),
        });
    }
    degrees
        .iter()
        .zip(depths)
        .map(|(&d, &k)| dependency_set(field, a, d, k, caps))
        .collect()
}

/// Number of consistent atom tuples, `Π_i p^{(k_i+1)m} / |Λ_i|`.
pub fn dependent_atom_count(sets: &[DependencySet]) -> u128 {
    sets.iter()
        .map(|s| pow_u128(s.modulus(), s.m as u64) / s.size() as u128)
        .product()
}

/// Counts consistent tuples by trying every one of them.
pub fn count_consistent_direct(sets: &[DependencySet], caps: &Caps) -> Result<u128> {
    let mut count: u128 = 1;
    for s in sets {
        let q = s.modulus();
        let total = pow_u128(q, s.m as u64);
        caps.check("consistent tuple enumeration", total)?;
        let c = par::count(total as u64, |mut idx| {
            let b: Vec<u128> = (0..s.m)
                .map(|_| {
                    let v = idx % q;
                    idx /= q;
                    v as u128
                })
                .collect();
            s.tuples.iter().all(|l| {
                let sum: u128 = l.iter().zip(&b).map(|(&x, &y)| x as u128 * y).sum();
                sum.is_multiple_of(q as u128)
            })
        });
        count *= c as u128;
    }
    Ok(count)
}

/// Whether `a ⪯ b` for affine forms.
pub fn affine_le(a: &AffineForm, b: &AffineForm) -> bool {
    form_le(a.linear(), b.linear())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn af(w: &[u32]) -> AffineForm {
        AffineForm::new(w.to_vec()).unwrap()
    }

    fn lf(w: &[u32]) -> LinearForm {
        LinearForm(w.to_vec())
    }

    #[test]
    fn closure_examples() {
        let c = downward_closure(&[af(&[1, 1])]).unwrap();
        assert_eq!(c.forms(), &[af(&[1, 0]), af(&[1, 1])]);
        assert_eq!(downward_closure(&[af(&[1])]).unwrap().forms(), &[af(&[1])]);
        let cube = downward_closure(&[af(&[1, 1, 1])]).unwrap();
        assert_eq!(
            cube.forms(),
            &[af(&[1, 0, 0]), af(&[1, 0, 1]), af(&[1, 1, 0]), af(&[1, 1, 1])]
        );
        assert_eq!(cube, AffineConstraint::cube(3));
        assert!(AffineConstraint::new(vec![af(&[1, 1])]).is_err());
        assert!(AffineConstraint::new(vec![af(&[1, 0]), af(&[1, 2])]).is_err());
        let json = serde_json::to_string(&cube).unwrap();
        assert_eq!(json, r#"{"ell":3,"forms":[[1,0,0],[1,0,1],[1,1,0],[1,1,1]]}"#);
        assert_eq!(serde_json::from_str::<AffineConstraint>(&json).unwrap(), cube);
    }

    #[test]
    fn closure_is_downward_closed() {
        let c = downward_closure(&[af(&[1, 2, 1]), af(&[1, 0, 2])]).unwrap();
        for f in c.forms() {
            for g in closure_of(3, std::slice::from_ref(f)) {
                assert!(c.forms().contains(&g));
                assert!(affine_le(&g, f));
            }
        }
    }

    #[test]
    fn complexity_examples() {
        let cube = AffineConstraint::cube(3).linear_forms();
        assert_eq!(cs_complexity(f2(), &cube).unwrap(), Complexity(Some(1)));
        let f3 = Fp::new(3).unwrap();
        assert_eq!(
            cs_complexity(f3, &[lf(&[1, 1]), lf(&[2, 2])]).unwrap(),
            Complexity(None)
        );
        // x, x+y, x+2y: three-term progression has complexity 1
        let ap = [lf(&[1, 0]), lf(&[1, 1]), lf(&[1, 2])];
        assert_eq!(cs_complexity(f3, &ap).unwrap(), Complexity(Some(1)));
        let f5 = Fp::new(5).unwrap();
        let ap4: Vec<LinearForm> = (0..4).map(|j| lf(&[1, j])).collect();
        assert_eq!(cs_complexity(f5, &ap4).unwrap(), Complexity(Some(2)));
    }

    #[test]
    fn complexity_is_invariant_under_relabeling() {
        let f3 = Fp::new(3).unwrap();
        let forms = vec![
            lf(&[1, 0, 0]),
            lf(&[1, 1, 0]),
            lf(&[1, 0, 1]),
            lf(&[1, 1, 1]),
            lf(&[1, 2, 1]),
        ];
        let base = cs_complexity(f3, &forms).unwrap();
        let mut rev = forms.clone();
        rev.reverse();
        assert_eq!(cs_complexity(f3, &rev).unwrap(), base);
        // (a, b, c) ↦ (a + b, b, 2c)
        let changed: Vec<LinearForm> = forms
            .iter()
            .map(|f| {
                let w = f.weights();
                lf(&[w[0], (w[0] + w[1]) % 3, (2 * w[2]) % 3])
            })
            .collect();
        assert_eq!(cs_complexity(f3, &changed).unwrap(), base);
        assert!(base.0.unwrap() <= forms.len() as u32 - 2);
    }

    #[test]
    fn cube_dependency_set() {
        let s = dependency_set(f2(), &AffineConstraint::cube(3), 1, 0, &Caps::default()).unwrap();
        assert_eq!(s.tuples, vec![vec![0, 0, 0, 0], vec![1, 1, 1, 1]]);
        assert_eq!(s.exact_size, Some(2));
        assert!(s.is_subgroup());
        assert_eq!(s.to_csv(), "l1,l2,l3,l4\n0,0,0,0\n1,1,1,1\n");
        let sets = vec![s];
        assert_eq!(dependent_atom_count(&sets), 8);
        assert_eq!(count_consistent_direct(&sets, &Caps::default()).unwrap(), 8);
    }

    #[test]
    fn single_form_has_trivial_dependencies() {
        let a = AffineConstraint::new(vec![af(&[1, 0])]).unwrap();
        for (p, d, k) in [(2, 1, 0), (2, 3, 1), (3, 2, 0)] {
            let s = dependency_set(Fp::new(p).unwrap(), &a, d, k, &Caps::default()).unwrap();
            assert_eq!(s.tuples, vec![vec![0]]);
            assert_eq!(dependent_atom_count(&[s]), modulus(p, k) as u128);
        }
    }

    #[test]
    fn consistency_examples() {
        let cube = AffineConstraint::cube(3);
        let caps = Caps::default();
        let half = TorusValue::new(2, 1, 0);
        let zero = TorusValue::zero(2);
        let col = |v: [TorusValue; 4]| v.iter().map(|&b| vec![b]).collect::<Vec<_>>();
        assert!(consistency_check(f2(), &cube, &[1], &[0], &col([zero; 4]), &caps).unwrap());
        assert!(!consistency_check(f2(), &cube, &[1], &[0], &col([half, half, half, zero]), &caps).unwrap());
        assert!(consistency_check(f2(), &cube, &[1], &[0], &col([half, half, zero, zero]), &caps).unwrap());
        let quarter = TorusValue::new(2, 1, 1);
        assert!(consistency_check(f2(), &cube, &[1], &[0], &col([quarter, zero, zero, zero]), &caps).is_err());
    }

    #[test]
    fn witness_dimension_is_stable_and_sets_are_subgroups() {
        let caps = Caps::default();
        let corpus = [
            (2, AffineConstraint::cube(3)),
            (2, downward_closure(&[af(&[1, 1, 0]), af(&[1, 0, 1])]).unwrap()),
            (3, downward_closure(&[af(&[1, 2])]).unwrap()),
            (3, downward_closure(&[af(&[1, 1, 1])]).unwrap()),
        ];
        for (p, a) in &corpus {
            let field = Fp::new(*p).unwrap();
            for (d, k) in [(1, 0), (2, 0), (2, 1), (3, 1)] {
                if d <= k * (p - 1) {
                    continue;
                }
                let nw = (d as usize).max(2);
                let s = dependency_set_with(field, a, d, k, nw, &caps).unwrap();
                let s1 = dependency_set_with(field, a, d, k, nw + 1, &caps).unwrap();
                assert_eq!(s.tuples, s1.tuples, "p={p} {a} d={d} k={k}");
                assert!(s.is_subgroup());
                assert_eq!(s.exact_size, Some(s.size()));
                let total = pow_u128(modulus(*p, k), a.size() as u64);
                assert_eq!(total % s.size() as u128, 0);
                assert_eq!(
                    dependent_atom_count(std::slice::from_ref(&s)),
                    count_consistent_direct(&[s], &caps).unwrap()
                );
            }
        }
    }

    #[test]
    fn cube_identity_for_linear_polynomials() {
        let cube = AffineConstraint::cube(3);
        for n in 1..=3 {
            let dom = Domain::new(f2(), n).unwrap();
            for seed in 0..4 {
                let poly = crate::poly::random_poly(2, n, 1, 0, seed).unwrap();
                let t = poly.table().unwrap();
                let size = dom.size();
                for idx in 0..size.pow(3) {
                    let xs = [idx % size, idx / size % size, idx / size / size];
                    let s: u64 = cube
                        .linear_forms()
                        .iter()
                        .map(|f| t.nums[dom.combine(f.weights(), &xs) as usize])
                        .sum();
                    assert_eq!(s % 2, 0);
                }
            }
        }
    }
}
