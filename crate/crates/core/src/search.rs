//! Exhaustive search for self-orthogonal rate-1/n generators: autocorrelation
//! tables, zero-sum component subsets and the best rate-1/3 codes.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::convcode::{self, canonicalize_class, ConvCode, OrthogonalBasis};
use crate::distance;
use crate::error::{Error, Result};
use crate::fields::{Field, F4};
use crate::polyring::{autocorrelation_nonneg, LaurentTuple, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutocorrRow {
    pub g: Poly,
    pub r_plus: Poly,
}

/// Polynomials with constant term 1 and degree ≤ `max_deg`. Binary ones are
/// ordered by their integer value, quaternary ones by degree then coefficient string.
pub fn monic_polys(field: Field, max_deg: usize) -> Vec<Poly> {
    let q = field.size();
    let elems = field.elements();
    let mut out = Vec::with_capacity(q.pow(max_deg as u32));
    for idx in 0..q.pow(max_deg as u32) {
        let mut coeffs = vec![F4::ONE];
        let mut x = idx;
        for _ in 0..max_deg {
            coeffs.push(elems[x % q]);
            x /= q;
        }
        out.push(Poly::from_coeffs(field, &coeffs).unwrap());
    }
    if field == Field::F2 {
        out.sort_by_key(binary_value);
    } else {
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp_coeff_string(b)));
    }
    out
}

fn binary_value(p: &Poly) -> u128 {
    let (_, x, _) = p.planes();
    x
}

/// Autocorrelation key: coefficient planes of [R_gg]₀₊ packed as x | z << 64.
fn r_key(p: &Poly) -> u128 {
    let r = autocorrelation_nonneg(p);
    let mut x = 0u128;
    if let Some(d) = r.degree() {
        for k in 0..=d {
            let c = r.coeff(k);
            x |= (c.l1() as u128) << k;
            x |= (c.l2() as u128) << (k + 64);
        }
    }
    x
}

pub fn autocorr_table(field: Field, max_deg: usize) -> Vec<AutocorrRow> {
    monic_polys(field, max_deg)
        .into_iter()
        .map(|g| AutocorrRow { r_plus: autocorrelation_nonneg(&g), g })
        .collect()
}

/// All size-n subsets of the rows (in row order) whose autocorrelations sum
/// to zero and whose components are coprime.
pub fn zero_sum_subsets(rows: &[AutocorrRow], n: usize) -> Vec<Vec<Poly>> {
    let keys: Vec<u128> = rows.iter().map(|r| r_key(&r.g)).collect();
    let mut out = Vec::new();
    fn rec(start: usize, left: usize, acc: u128, keys: &[u128], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if acc == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..=keys.len() - left {
            cur.push(i);
            rec(i + 1, left - 1, acc ^ keys[i], keys, cur, out);
            cur.pop();
        }
    }
    if n == 0 || n > rows.len() {
        return out;
    }
    let mut idx = Vec::new();
    rec(0, n, 0, &keys, &mut Vec::new(), &mut idx);
    for s in idx {
        let comps: Vec<Poly> = s.iter().map(|&i| rows[i].g).collect();
        let t = LaurentTuple::new(rows[0].g.field(), comps.clone()).unwrap();
        if !convcode::is_catastrophic(&t).unwrap() {
            out.push(comps);
        }
    }
    out
}

/// Constraint length of a subset: the largest component degree.
pub fn subset_nu(s: &[Poly]) -> usize {
    s.iter().map(|p| p.degree().unwrap_or(0) as usize).max().unwrap_or(0)
}

/// For each n, the zero-sum subsets of minimal constraint length, one per
/// equivalence class (first in row order).
pub fn minimal_subsets(rows: &[AutocorrRow], ns: impl IntoIterator<Item = usize>) -> Vec<(usize, Vec<Poly>)> {
    let mut out = Vec::new();
    for n in ns {
        let subs = zero_sum_subsets(rows, n);
        let Some(min_nu) = subs.iter().map(|s| subset_nu(s)).min() else { continue };
        let mut seen = Vec::new();
        for s in subs.into_iter().filter(|s| subset_nu(s) == min_nu) {
            let t = LaurentTuple::new(s[0].field(), s.clone()).unwrap();
            let c = canonicalize_class(&t).to_strings();
            if !seen.contains(&c) {
                seen.push(c);
                out.push((n, s));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct BestCodeRow {
    pub nu: usize,
    pub g: LaurentTuple,
    pub h: Vec<LaurentTuple>,
    pub d: u32,
    pub n_d: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchCoverage {
    /// Size of the unordered-triple space C(N, 3).
    pub tuple_space: u64,
    pub self_orthogonal: u64,
    pub noncatastrophic: u64,
    pub classes: u64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub rows: Vec<BestCodeRow>,
    pub coverage: SearchCoverage,
    /// d⊥ → number of classes, over all classes examined.
    pub distance_profile: BTreeMap<u32, u64>,
}

fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Self-orthogonal triples of distinct polynomials with constant term 1 and
/// largest degree exactly ν, as index triples i < j < k into `monic_polys`.
fn so_triples(polys: &[Poly], keys: &[u128], nu: usize) -> Vec<[usize; 3]> {
    let mut by_key: HashMap<u128, Vec<usize>> = HashMap::new();
    for (i, &k) in keys.iter().enumerate() {
        by_key.entry(k).or_default().push(i);
    }
    let deg: Vec<usize> = polys.iter().map(|p| p.degree().unwrap() as usize).collect();
    let mut out: Vec<[usize; 3]> = (0..polys.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut v = Vec::new();
            for j in i + 1..polys.len() {
                if let Some(ks) = by_key.get(&(keys[i] ^ keys[j])) {
                    for &k in ks {
                        if k > j && deg[i].max(deg[j]).max(deg[k]) == nu {
                            v.push([i, j, k]);
                        }
                    }
                }
            }
            v
        })
        .collect();
    out.sort();
    out
}

/// Largest triple space searched exhaustively.
pub const SEARCH_BUDGET: u64 = 1 << 27;

/// Best rate-1/3 self-orthogonal codes of constraint length ν: maximal d⊥,
/// then minimal N_{d⊥}, one canonical representative per class.
pub fn best_rate13(field: Field, nu: usize, budget: u64) -> Result<SearchReport> {
    if nu == 0 {
        return Err(Error::Invalid("constraint length must be positive".into()));
    }
    let count = field.size() as u64;
    let npolys = count.checked_pow(nu as u32).ok_or_else(|| Error::Budget("polynomial count overflow".into()))?;
    let space = choose3(npolys);
    if space > budget {
        return Err(Error::Budget(format!("C({npolys},3) = {space} tuples exceeds budget {budget}")));
    }
    let polys = monic_polys(field, nu);
    let keys: Vec<u128> = polys.iter().map(r_key).collect();
    let triples = so_triples(&polys, &keys, nu);
    let mut coverage = SearchCoverage { tuple_space: space, self_orthogonal: triples.len() as u64, ..Default::default() };
    let classes: Vec<LaurentTuple> = {
        let canon: Vec<Option<LaurentTuple>> = triples
            .par_iter()
            .map(|t| {
                let g = LaurentTuple::new(field, t.iter().map(|&i| polys[i]).collect()).unwrap();
                if convcode::is_catastrophic(&g).unwrap() {
                    None
                } else {
                    Some(canonicalize_class(&g))
                }
            })
            .collect();
        coverage.noncatastrophic = canon.iter().filter(|c| c.is_some()).count() as u64;
        let mut m: BTreeMap<Vec<String>, LaurentTuple> = BTreeMap::new();
        for c in canon.into_iter().flatten() {
            m.entry(c.to_strings()).or_insert(c);
        }
        m.into_values().collect()
    };
    coverage.classes = classes.len() as u64;
    let scored: Vec<(u32, u64, LaurentTuple)> = classes
        .into_par_iter()
        .map(|g| {
            let code = ConvCode::new(g.clone())?;
            let t = distance::build_trellis(code.dual_basis())?;
            let (d, nd) = distance::free_distance(&t, (4 * nu * 3) as u32)?;
            Ok((d, nd, g))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut profile = BTreeMap::new();
    for (d, _, _) in &scored {
        *profile.entry(*d).or_insert(0) += 1;
    }
    let best_d = scored.iter().map(|s| s.0).max().unwrap_or(0);
    let best_n = scored.iter().filter(|s| s.0 == best_d).map(|s| s.1).min().unwrap_or(0);
    let mut rows = Vec::new();
    for (d, nd, g) in scored {
        if d == best_d && nd == best_n {
            let code = ConvCode::new(g.clone())?;
            rows.push(BestCodeRow { nu, h: code.dual_basis().h().to_vec(), g, d, n_d: nd });
        }
    }
    Ok(SearchReport { rows, coverage, distance_profile: profile })
}

/// Unreduced search: distance for every noncatastrophic self-orthogonal
/// triple, then the best classes. Used to cross-check the reduced search.
pub fn best_rate13_direct(field: Field, nu: usize) -> Result<Vec<LaurentTuple>> {
    let polys = monic_polys(field, nu);
    let keys: Vec<u128> = polys.iter().map(r_key).collect();
    let mut scored = Vec::new();
    for t in so_triples(&polys, &keys, nu) {
        let g = LaurentTuple::new(field, t.iter().map(|&i| polys[i]).collect())?;
        if convcode::is_catastrophic(&g)? {
            continue;
        }
        let code = ConvCode::new(g.clone())?;
        let tr = distance::build_trellis(code.dual_basis())?;
        let (d, nd) = distance::free_distance(&tr, (12 * nu) as u32)?;
        scored.push((d, nd, g));
    }
    let best_d = scored.iter().map(|s| s.0).max().unwrap_or(0);
    let best_n = scored.iter().filter(|s| s.0 == best_d).map(|s| s.1).min().unwrap_or(0);
    Ok(scored.into_iter().filter(|s| s.0 == best_d && s.1 == best_n).map(|s| s.2).collect())
}

/// A published or user-supplied table row to be re-derived.
#[derive(Clone, Debug)]
pub struct RowClaim {
    pub g: LaurentTuple,
    pub h: Option<Vec<LaurentTuple>>,
    pub d: Option<u32>,
    pub n_d: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

impl Check {
    pub fn new(name: &'static str, expected: impl ToString, got: impl ToString) -> Check {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check { ok: expected == got, name, expected, got }
    }
}

#[derive(Clone, Debug)]
pub struct RowVerification {
    pub checks: Vec<Check>,
    pub d: u32,
    pub n_d: u64,
    pub alpha: Ratio<i64>,
}

impl RowVerification {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

/// Re-derives everything about a row: self-orthogonality, noncatastrophicity,
/// the given basis (orthogonal, degree sum ν, same module as the computed
/// minimal basis), then d⊥, N_{d⊥} and the slope.
pub fn table_row_verify(row: &RowClaim) -> Result<RowVerification> {
    let g = &row.g;
    let mut checks = vec![
        Check::new("self-orthogonal", true, convcode::is_self_orthogonal(g)),
        Check::new("noncatastrophic", true, !convcode::is_catastrophic(g)?),
    ];
    let nu = g.degree().unwrap_or(0) as usize;
    let code = match ConvCode::new(g.clone()) {
        Ok(c) => c,
        Err(e) => {
            checks.push(Check::new("code", "valid", e));
            return Ok(RowVerification { checks, d: 0, n_d: 0, alpha: Ratio::from_integer(0) });
        }
    };
    let computed = code.dual_basis();
    checks.push(Check::new("basis degree sum", nu, computed.degree_sum()));
    if let Some(h) = &row.h {
        match OrthogonalBasis::from_tuples(&code, h.clone()) {
            Ok(b) => {
                checks.push(Check::new("given basis degree sum", nu, b.degree_sum()));
                checks.push(Check::new("given basis generates orthogonal code", true, b.same_module(computed)));
            }
            Err(e) => checks.push(Check::new("given basis orthogonal", "ok", e)),
        }
    }
    let t = distance::build_trellis(computed)?;
    let (d, n_d) = distance::free_distance(&t, (4 * nu.max(1) * g.n()) as u32)?;
    let alpha = distance::slope(&t)?.alpha;
    if let Some(cd) = row.d {
        checks.push(Check::new("d", cd, d));
    }
    if let Some(cn) = row.n_d {
        checks.push(Check::new("N", cn, n_d));
    }
    Ok(RowVerification { checks, d, n_d, alpha })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t1 = autocorr_table(Field::F2, 3);
        assert_eq!(t1.len(), 8);
        assert_eq!(t1[5].g.to_coeff_string(), "1101");
        assert_eq!(t1[5].r_plus.to_coeff_string(), "1111");
        let t3 = autocorr_table(Field::F4, 2);
        assert_eq!(t3.len(), 16);
        assert_eq!(t3[14].g.to_coeff_string(), "1Ww");
        assert_eq!(t3[14].r_plus.to_coeff_string(), "10w");
    }

    #[test]
    fn unique_small_codes() {
        let s = zero_sum_subsets(&autocorr_table(Field::F2, 2), 3);
        assert_eq!(s.len(), 1);
        let s = zero_sum_subsets(&autocorr_table(Field::F4, 1), 3);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].iter().map(|p| p.to_coeff_string()).collect::<Vec<_>>(), ["11", "1w", "1W"]);
    }

    #[test]
    fn best_binary_nu3() {
        let r = best_rate13(Field::F2, 3, SEARCH_BUDGET).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!((r.rows[0].d, r.rows[0].n_d), (4, 3));
        let printed = LaurentTuple::parse(Field::F2, &["111", "1101", "1111"]).unwrap();
        assert_eq!(canonicalize_class(&printed), r.rows[0].g);
    }
}
