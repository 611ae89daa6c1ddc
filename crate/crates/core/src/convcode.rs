//! Rate-1/n convolutional label codes and minimal bases of their orthogonal codes.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fields::{F4Vec, Field, F4};
use crate::linalg;
use crate::polyring::{cross_correlation, poly_gcd, LaurentTuple, Poly};

/// A rate-1/n code given by its minimum-degree polynomial generator.
#[derive(Clone, Debug)]
pub struct ConvCode {
    g: LaurentTuple,
    nu: usize,
    basis: OnceLock<OrthogonalBasis>,
}

impl PartialEq for ConvCode {
    fn eq(&self, o: &ConvCode) -> bool {
        self.g == o.g
    }
}

impl ConvCode {
    /// Accepts any nonzero noncatastrophic generator and stores its canonical form.
    pub fn new(g: LaurentTuple) -> Result<ConvCode> {
        if g.n() < 2 {
            return Err(Error::Shape("block width n must be at least 2".into()));
        }
        if is_catastrophic(&g)? {
            return Err(Error::Catastrophic);
        }
        let g = canonical_generator(&g)?;
        let nu = g.degree().unwrap() as usize;
        Ok(ConvCode { g, nu, basis: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(field: Field, comps: &[S]) -> Result<ConvCode> {
        ConvCode::new(LaurentTuple::parse(field, comps)?)
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn g(&self) -> &LaurentTuple {
        &self.g
    }

    /// The coefficient n-block g_k.
    pub fn block(&self, k: usize) -> Vec<F4> {
        self.g.block(k as i32)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        is_self_orthogonal(&self.g)
    }

    /// Minimal orthogonal basis, computed on first use.
    pub fn dual_basis(&self) -> &OrthogonalBasis {
        self.basis.get_or_init(|| {
            orthogonal_basis(self, self.nu + 1).expect("noncatastrophic code always has a minimal dual basis")
        })
    }
}

pub fn is_self_orthogonal(g: &LaurentTuple) -> bool {
    cross_correlation(g, g).map(|r| r.is_zero()).unwrap_or(false)
}

/// gcd of the components after removing powers of D.
pub fn component_gcd(g: &LaurentTuple) -> Result<Poly> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut d = Poly::zero(g.field());
    for p in g.comps() {
        let q = p.strip_valuation();
        d = if d.is_zero() { q.monic() } else if q.is_zero() { d } else { poly_gcd(&d, &q)? };
    }
    Ok(d)
}

/// True iff the components share a non-monomial common factor.
pub fn is_catastrophic(g: &LaurentTuple) -> Result<bool> {
    Ok(component_gcd(g)?.degree().unwrap() > 0)
}

/// Divides out the component gcd and the common power of D, then scales so the
/// first component with nonzero constant term has constant term 1.
pub fn canonical_generator(c: &LaurentTuple) -> Result<LaurentTuple> {
    let v = c.valuation().ok_or(Error::ZeroInput)?;
    let shifted = c.shift(-v);
    let d = component_gcd(&shifted)?;
    let comps = shifted
        .comps()
        .iter()
        .map(|p| if p.is_zero() { Ok(*p) } else { p.div_exact(&d) })
        .collect::<Result<Vec<_>>>()?;
    let g = shifted.with_comps(comps);
    let c0 = g.comps().iter().map(|p| p.coeff(0)).find(|c| !c.is_zero()).unwrap();
    Ok(g.scale(c0.inv()?))
}

/// Scales and shifts every nonzero component so its constant term is 1.
pub fn normalize_components(g: &LaurentTuple) -> LaurentTuple {
    let comps = g
        .comps()
        .iter()
        .map(|p| {
            if p.is_zero() {
                *p
            } else {
                let q = p.strip_valuation();
                q.scale(q.coeff(0).inv().unwrap())
            }
        })
        .collect();
    g.with_comps(comps)
}

fn sorted(g: &LaurentTuple) -> LaurentTuple {
    let mut c = g.comps().to_vec();
    c.sort();
    g.with_comps(c)
}

fn cmp_tuples(a: &LaurentTuple, b: &LaurentTuple) -> std::cmp::Ordering {
    for (x, y) in a.comps().iter().zip(b.comps()) {
        let c = x.cmp_coeff_string(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.n().cmp(&b.n())
}

/// Images of `g` under conjugation, time reversal and modulation, each with
/// components normalized to constant term 1 (component order preserved).
fn symmetry_images(g: &LaurentTuple, conj: bool, reverse: bool, modulate: bool) -> Vec<LaurentTuple> {
    let f4 = g.field() == Field::F4;
    let alphas: &[F4] = if modulate && f4 { &F4::NONZERO } else { &[F4::ONE] };
    let conjs: &[bool] = if conj && f4 { &[false, true] } else { &[false] };
    let revs: &[bool] = if reverse { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for &r in revs {
        for &c in conjs {
            for &a in alphas {
                let mut t = g.clone();
                if r {
                    t = t.reverse();
                }
                if c {
                    t = t.conj();
                }
                t = t.modulate(a).unwrap();
                out.push(normalize_components(&t));
            }
        }
    }
    out
}

/// Which transformations generate an orbit.
#[derive(Clone, Copy, Debug)]
pub struct SymmetrySet {
    pub conjugate: bool,
    pub reverse: bool,
    pub modulate: bool,
    pub permute: bool,
}

impl SymmetrySet {
    pub const ALL: SymmetrySet = SymmetrySet { conjugate: true, reverse: true, modulate: true, permute: true };
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// The distinct component-normalized tuples equivalent to `g` under `syms`.
pub fn orbit(g: &LaurentTuple, syms: SymmetrySet) -> Vec<LaurentTuple> {
    let g = normalize_components(g);
    let mut set: Vec<LaurentTuple> = Vec::new();
    let perms = if syms.permute { permutations(g.n()) } else { vec![(0..g.n()).collect()] };
    for t in symmetry_images(&g, syms.conjugate, syms.reverse, syms.modulate) {
        for p in &perms {
            let u = t.permute(p).unwrap();
            if !set.contains(&u) {
                set.push(u);
            }
        }
    }
    set.sort_by(cmp_tuples);
    set
}

/// Least tuple (components sorted) in the orbit of `g` under all five symmetries.
pub fn canonicalize_class(g: &LaurentTuple) -> LaurentTuple {
    let g = normalize_components(g);
    symmetry_images(&g, true, true, true)
        .iter()
        .map(sorted)
        .min_by(cmp_tuples)
        .unwrap()
}

/// n−1 polynomial tuples generating the orthogonal code's polynomial module.
#[derive(Clone, Debug)]
pub struct OrthogonalBasis {
    field: Field,
    n: usize,
    h: Vec<LaurentTuple>,
}

/// Result of checking a basis against its primal code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCertificate {
    pub orthogonal: bool,
    pub count_ok: bool,
    pub leading_full_rank: bool,
    pub degree_sum: usize,
    pub nu: usize,
    /// Monic gcd of the full-size minors, as a coefficient string.
    pub minor_gcd: String,
}

impl BasisCertificate {
    pub fn minimal(&self) -> bool {
        self.orthogonal && self.count_ok && self.leading_full_rank && self.degree_sum == self.nu
    }
}

impl OrthogonalBasis {
    /// Wraps a given list of tuples after checking orthogonality to `code`.
    pub fn from_tuples(code: &ConvCode, h: Vec<LaurentTuple>) -> Result<OrthogonalBasis> {
        if h.len() + 1 != code.n() {
            return Err(Error::Shape(format!("expected {} basis tuples, got {}", code.n() - 1, h.len())));
        }
        for t in &h {
            if t.n() != code.n() {
                return Err(Error::LengthMismatch { left: t.n(), right: code.n() });
            }
            if !t.is_polynomial() || t.is_zero() {
                return Err(Error::Invalid("basis tuples must be nonzero polynomials".into()));
            }
            if !cross_correlation(code.g(), t)?.is_zero() {
                return Err(Error::NotSelfOrthogonal);
            }
        }
        let h = h.into_iter().map(|t| t.with_comps(t.comps().iter().map(|p| p.with_field(code.field()).unwrap_or(*p)).collect())).collect();
        Ok(OrthogonalBasis { field: code.field(), n: code.n(), h })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &[LaurentTuple] {
        &self.h
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.h.iter().map(|t| t.degree().unwrap_or(0) as usize).collect()
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees().iter().sum()
    }

    fn leading_rank(&self) -> usize {
        let rows: Vec<F4Vec> = self
            .h
            .iter()
            .map(|t| F4Vec::from_slice(&t.block(t.degree().unwrap_or(0))))
            .collect();
        linalg::rank(&rows, self.n)
    }

    /// Monic gcd of the n full-size minors of the (n−1)×n polynomial matrix.
    pub fn minor_gcd(&self) -> Result<Poly> {
        let n = self.n;
        let mut d = Poly::zero(self.field);
        for skip in 0..n {
            let m: Vec<Vec<Poly>> = self
                .h
                .iter()
                .map(|t| (0..n).filter(|&j| j != skip).map(|j| *t.comp(j)).collect())
                .collect();
            let det = bareiss_det(m)?;
            if !det.is_zero() {
                let q = det.strip_valuation();
                d = if d.is_zero() { q.monic() } else { poly_gcd(&d, &q)? };
            }
        }
        Ok(d)
    }

    pub fn certificate(&self, code: &ConvCode) -> BasisCertificate {
        let orthogonal = self.h.iter().all(|t| cross_correlation(code.g(), t).is_ok_and(|r| r.is_zero()));
        let minor = self.minor_gcd().map(|p| p.to_coeff_string()).unwrap_or_else(|_| "?".into());
        BasisCertificate {
            orthogonal,
            count_ok: self.h.len() + 1 == self.n,
            leading_full_rank: self.leading_rank() == self.h.len(),
            degree_sum: self.degree_sum(),
            nu: code.nu(),
            minor_gcd: minor,
        }
    }

    /// Whether `t` lies in the polynomial span of the basis. Exact for row-reduced bases.
    pub fn contains(&self, t: &LaurentTuple) -> bool {
        if t.is_zero() {
            return true;
        }
        if !t.is_polynomial() {
            return false;
        }
        let d = t.degree().unwrap();
        let len = self.n * (d as usize + 1);
        let mut rows = Vec::new();
        for h in &self.h {
            let dh = h.degree().unwrap();
            for k in 0..=(d - dh).max(-1) {
                rows.push(F4Vec::from_slice(&h.shift(k).blocks(0, d)));
            }
        }
        linalg::in_row_space(&rows, &F4Vec::from_slice(&t.blocks(0, d)), len)
    }

    /// Whether both bases generate the same polynomial module.
    pub fn same_module(&self, o: &OrthogonalBasis) -> bool {
        self.h.iter().all(|t| o.contains(t)) && o.h.iter().all(|t| self.contains(t))
    }
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let k = m.len();
    if k == 0 {
        return Err(Error::EmptyGenerators);
    }
    let field = m[0][0].field();
    let mut prev = Poly::one(field);
    for c in 0..k {
        if m[c][c].is_zero() {
            let Some(p) = (c + 1..k).find(|&r| !m[r][c].is_zero()) else {
                return Ok(Poly::zero(field));
            };
            m.swap(c, p);
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let num = m[i][j].checked_mul(&m[c][c])?.checked_add(&m[i][c].checked_mul(&m[c][j])?)?;
                m[i][j] = div_laurent_exact(&num, &prev)?;
            }
        }
        prev = m[c][c];
    }
    Ok(m[k - 1][k - 1])
}

fn div_laurent_exact(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() {
        return Ok(*a);
    }
    let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
    let q = a.strip_valuation().div_exact(&b.strip_valuation())?;
    Ok(q.shift(va - vb))
}

/// Minimal basis of the orthogonal code, built degree by degree.
///
/// At degree d the space V_d of tuples h with deg h ≤ d and R_gh = 0 is a null
/// space; tuples whose degree-d blocks extend the span of the leading blocks
/// chosen so far are added until n−1 tuples are found.
pub fn orthogonal_basis(code: &ConvCode, degree_budget: usize) -> Result<OrthogonalBasis> {
    let n = code.n();
    let nu = code.nu() as i32;
    let g = code.g();
    let field = code.field();
    let mut chosen: Vec<LaurentTuple> = Vec::new();
    let mut leads: Vec<F4Vec> = Vec::new();
    for d in 0..=degree_budget as i32 {
        if chosen.len() == n - 1 {
            break;
        }
        let width = n * (d as usize + 1);
        // unknown index: top block first, i.e. column (d - m)*n + j holds h_{j,m}
        let col = |m: i32, j: usize| ((d - m) as usize) * n + j;
        let mut rows = Vec::new();
        for l in -nu..=d {
            let mut r = F4Vec::zeros(width);
            for m in 0.max(l)..=d.min(l + nu) {
                for j in 0..n {
                    let c = g.comp(j).coeff(m - l).conj();
                    if !c.is_zero() {
                        r.set(col(m, j), c);
                    }
                }
            }
            rows.push(r);
        }
        let mut space = linalg::nullspace(&rows, width);
        if field == Field::F2 {
            space.retain(|v| v.to_vec().iter().all(|c| field.contains(*c)));
        }
        linalg::rref(&mut space, width);
        for v in space {
            if chosen.len() == n - 1 {
                break;
            }
            let top: Vec<F4> = (0..n).map(|j| v.get(col(d, j))).collect();
            if top.iter().all(|c| c.is_zero()) {
                continue;
            }
            let topv = F4Vec::from_slice(&top);
            let before = linalg::rank(&leads, n);
            leads.push(topv);
            if linalg::rank(&leads, n) == before {
                leads.pop();
                continue;
            }
            let mut comps = Vec::with_capacity(n);
            for j in 0..n {
                let coeffs: Vec<F4> = (0..=d).map(|m| v.get(col(m, j))).collect();
                comps.push(Poly::from_coeffs(field, &coeffs)?);
            }
            chosen.push(LaurentTuple::new(field, comps)?);
        }
    }
    if chosen.len() != n - 1 {
        return Err(Error::Budget(format!(
            "found {} of {} basis tuples up to degree {degree_budget}",
            chosen.len(),
            n - 1
        )));
    }
    Ok(OrthogonalBasis { field, n, h: chosen })
}

/// Distinct sorted-component representatives, handy for set comparisons.
pub fn class_set<'a, I: IntoIterator<Item = &'a LaurentTuple>>(it: I) -> BTreeSet<Vec<String>> {
    it.into_iter().map(|g| canonicalize_class(g).to_strings()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(field: Field, s: &[&str]) -> LaurentTuple {
        LaurentTuple::parse(field, s).unwrap()
    }

    #[test]
    fn canonical_generator_examples() {
        let f2 = Field::F2;
        let c = LaurentTuple::new(
            f2,
            vec![
                Poly::parse(f2, "11").unwrap() * Poly::parse(f2, "111").unwrap(),
                Poly::parse(f2, "11").unwrap() * Poly::parse(f2, "101").unwrap(),
                Poly::parse(f2, "11").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(canonical_generator(&c).unwrap(), t(f2, &["111", "101", "1"]));
        let c = t(Field::F4, &["011", "01w", "01W"]);
        assert_eq!(canonical_generator(&c).unwrap(), t(Field::F4, &["11", "1w", "1W"]));
    }

    #[test]
    fn catastrophic_checks() {
        assert!(is_catastrophic(&t(Field::F2, &["11", "101", "11"])).unwrap());
        assert!(!is_catastrophic(&t(Field::F4, &["11", "1w", "1W"])).unwrap());
        assert!(!is_catastrophic(&t(Field::F2, &["1", "01", "001"])).unwrap());
    }

    #[test]
    fn example_bases() {
        let c = ConvCode::parse(Field::F4, &["11", "1w", "1W"]).unwrap();
        let b = c.dual_basis();
        assert_eq!(b.degrees(), vec![0, 1]);
        assert!(b.certificate(&c).minimal());
        assert!(b.contains(&t(Field::F4, &["W", "w", "1"])));
        assert!(b.contains(c.g()));

        let c = ConvCode::parse(Field::F2, &["111", "101", "1"]).unwrap();
        let b = c.dual_basis();
        assert_eq!(b.degree_sum(), 2);
        assert!(b.contains(&t(Field::F2, &["1", "11", "01"])));
        assert!(b.contains(&t(Field::F2, &["01", "01", "1"])));

        let c = ConvCode::parse(Field::F4, &["111", "1w1", "11"]).unwrap();
        let b = c.dual_basis();
        assert!(b.certificate(&c).minimal());
        let given = OrthogonalBasis::from_tuples(
            &c,
            vec![t(Field::F4, &["0w", "0W", "11"]), t(Field::F4, &["1", "1W", "1W"])],
        )
        .unwrap();
        assert!(given.same_module(b));
    }

    #[test]
    fn orbit_sizes() {
        let g = t(Field::F4, &["111", "1w1", "11"]);
        let syms = SymmetrySet { conjugate: true, reverse: false, modulate: true, permute: true };
        assert_eq!(orbit(&g, syms).len(), 36);
        let g = t(Field::F2, &["111", "101", "1"]);
        let syms = SymmetrySet { conjugate: false, reverse: false, modulate: false, permute: true };
        assert_eq!(orbit(&g, syms).len(), 6);
    }
}
