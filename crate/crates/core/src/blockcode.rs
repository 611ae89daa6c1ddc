//! Linear block codes over F2/F4 and their construction from convolutional codes
//! by termination and tail-biting.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::convcode::ConvCode;
use crate::distance::{self, Trellis};
use crate::error::{Error, Result};
use crate::fields::{F4Vec, Field, F4};
use crate::linalg;
use crate::polyring::LaurentTuple;

/// Enumeration budget in bits: codes with k·log2|F| above this use the trellis.
pub const ENUM_BITS: u32 = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerProduct {
    Hermitian,
    Euclidean,
}

/// How a finite interval is cut out of a convolutional code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Only generator shifts whose support lies inside the interval.
    Subset,
    /// Every shift meeting the interval, truncated to it.
    Truncate,
}

#[derive(Clone, Debug)]
struct TbOrigin {
    gens: Vec<LaurentTuple>,
    l: usize,
}

#[derive(Clone, Debug)]
pub struct BlockCode {
    field: Field,
    len: usize,
    block: usize,
    gens: Vec<F4Vec>,
    k: usize,
    tb: Option<TbOrigin>,
}

impl BlockCode {
    pub fn new(field: Field, len: usize, gens: Vec<F4Vec>) -> Result<BlockCode> {
        for g in &gens {
            if g.len() != len {
                return Err(Error::LengthMismatch { left: g.len(), right: len });
            }
            if field == Field::F2 && g.to_vec().iter().any(|c| !field.contains(*c)) {
                return Err(Error::FieldMismatch);
            }
        }
        let k = linalg::rank(&gens, len);
        Ok(BlockCode { field, len, block: 1, gens, k, tb: None })
    }

    /// Parses one generator per line; `|`, spaces and `#` comments are ignored.
    pub fn parse(field: Field, text: &str) -> Result<BlockCode> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let v = crate::fields::parse_symbols(body).map_err(|e| match e {
                Error::Parse { col, msg, .. } => Error::Parse { line: i + 1, col, msg },
                e => e,
            })?;
            rows.push(v);
        }
        let len = rows.first().map_or(0, |r| r.len());
        BlockCode::new(field, len, rows.iter().map(|r| F4Vec::from_slice(r)).collect())
    }

    pub fn to_text(&self) -> String {
        self.gens
            .iter()
            .map(|g| crate::fields::format_blocks(&g.to_vec(), self.block))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn with_block(mut self, n: usize) -> BlockCode {
        self.block = n;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn generators(&self) -> &[F4Vec] {
        &self.gens
    }

    /// Reduced-echelon basis.
    pub fn basis(&self) -> Vec<F4Vec> {
        let mut m = self.gens.clone();
        linalg::rref(&mut m, self.len);
        m
    }

    pub fn dual(&self, inner: InnerProduct) -> BlockCode {
        let rows: Vec<F4Vec> = match inner {
            InnerProduct::Hermitian => self.gens.iter().map(|g| g.conj()).collect(),
            InnerProduct::Euclidean => self.gens.clone(),
        };
        let ns = linalg::nullspace(&rows, self.len);
        let k = ns.len();
        BlockCode { field: self.field, len: self.len, block: self.block, gens: ns, k, tb: None }
    }

    /// Hermitian dual (the standard dual for F2 codes).
    pub fn dual_default(&self) -> BlockCode {
        self.dual(InnerProduct::Hermitian)
    }

    pub fn same_code(&self, o: &BlockCode) -> bool {
        self.len == o.len && linalg::same_row_space(&self.gens, &o.gens, self.len)
    }

    pub fn contains(&self, v: &F4Vec) -> bool {
        linalg::in_row_space(&self.gens, v, self.len)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i..].iter().all(|b| a.hermitian(b).is_zero()))
    }

    /// Syndrome of `e` against the generators, ⟨g_i, e⟩.
    pub fn syndrome(&self, e: &F4Vec) -> Vec<F4> {
        self.gens.iter().map(|g| g.hermitian(e)).collect()
    }

    fn binary_span(&self) -> Vec<F4Vec> {
        let mut out = Vec::new();
        for r in self.basis() {
            if self.field == Field::F4 {
                out.push(r.scaled(F4::OMEGA));
            }
            out.push(r);
        }
        out
    }

    /// Exact minimum distance with raw multiplicity. Uses enumeration when the
    /// code has at most 2^28 words, otherwise the circular trellis if the code
    /// came from tail-biting (multiplicity then unknown).
    pub fn min_distance(&self) -> Result<(u32, Option<u64>)> {
        if self.k == 0 {
            return Err(Error::Invalid("zero code has no minimum distance".into()));
        }
        let bits = self.k as u32 * self.field.bits();
        if bits <= ENUM_BITS {
            let (d, c) = enumerate_min(&self.binary_span(), self.len);
            return Ok((d, Some(c)));
        }
        if let Some(tb) = &self.tb {
            let t = Trellis::from_generators(self.field, &tb.gens)?;
            return Ok((distance::tailbiting_distance(&t, tb.l), None));
        }
        Err(Error::Budget(format!("2^{bits} codewords exceeds enumeration budget")))
    }

    /// All codewords of weight `w` (enumeration only).
    pub fn words_of_weight(&self, w: u32) -> Result<Vec<F4Vec>> {
        let bits = self.k as u32 * self.field.bits();
        if bits > ENUM_BITS {
            return Err(Error::Budget(format!("2^{bits} codewords exceeds enumeration budget")));
        }
        let span = self.binary_span();
        let m = span.len();
        let mut out = Vec::new();
        let mut cur = F4Vec::zeros(self.len);
        for i in 1u64..(1u64 << m) {
            cur.add_assign(&span[i.trailing_zeros() as usize]);
            if cur.weight() as u32 == w {
                out.push(cur.clone());
            }
        }
        Ok(out)
    }

    /// Rank of the generator list equals the number of generators.
    pub fn generators_independent(&self) -> bool {
        self.k == self.gens.len()
    }
}

/// Gray-code enumeration over binary combinations, parallel over prefixes.
fn enumerate_min(span: &[F4Vec], len: usize) -> (u32, u64) {
    let m = span.len();
    let split = m.min(6);
    let low = m - split;
    let (d, c) = (0u64..(1u64 << split))
        .into_par_iter()
        .map(|hi| {
            let mut cur = F4Vec::zeros(len);
            for b in 0..split {
                if (hi >> b) & 1 == 1 {
                    cur.add_assign(&span[low + b]);
                }
            }
            let mut best = u32::MAX;
            let mut cnt = 0u64;
            let mut visit = |v: &F4Vec| {
                if v.is_zero() {
                    return;
                }
                let w = v.weight() as u32;
                if w < best {
                    best = w;
                    cnt = 1;
                } else if w == best {
                    cnt += 1;
                }
            };
            visit(&cur);
            for i in 1u64..(1u64 << low) {
                cur.add_assign(&span[i.trailing_zeros() as usize]);
                visit(&cur);
            }
            (best, cnt)
        })
        .reduce(
            || (u32::MAX, 0),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
            },
        );
    (d, c)
}

fn check_tb_length(gens: &[LaurentTuple], l: usize) -> Result<()> {
    let need = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0) as usize + 1;
    if l < need {
        return Err(Error::TooShort { l, min: need });
    }
    Ok(())
}

/// The code generated by the L cyclic block shifts of each generator, with
/// wrapped coefficients added into blocks mod L.
pub fn tail_bite(field: Field, gens: &[LaurentTuple], l: usize) -> Result<BlockCode> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    check_tb_length(gens, l)?;
    let n = gens[0].n();
    let len = n * l;
    let mut rows = Vec::with_capacity(gens.len() * l);
    for g in gens {
        let v = g.valuation().unwrap_or(0);
        let dg = g.degree().unwrap_or(0);
        for i in 0..l {
            let mut r = F4Vec::zeros(len);
            for k in v..=dg {
                let b = (i as i64 + k as i64).rem_euclid(l as i64) as usize;
                for (j, c) in g.block(k).into_iter().enumerate() {
                    if !c.is_zero() {
                        r.add_at(b * n + j, c);
                    }
                }
            }
            rows.push(r);
        }
    }
    let mut code = BlockCode::new(field, len, rows)?;
    code.block = n;
    code.tb = Some(TbOrigin { gens: gens.to_vec(), l });
    Ok(code)
}

pub fn tail_bite_code(code: &ConvCode, l: usize) -> Result<BlockCode> {
    tail_bite(code.field(), std::slice::from_ref(code.g()), l)
}

pub fn tail_bite_dual(code: &ConvCode, l: usize) -> Result<BlockCode> {
    tail_bite(code.field(), code.dual_basis().h(), l)
}

/// Block code cut from the shifts of `gens` over an interval of `l` blocks.
pub fn terminate(field: Field, gens: &[LaurentTuple], l: usize, mode: Termination) -> Result<BlockCode> {
    if gens.is_empty() || l == 0 {
        return Err(Error::EmptyGenerators);
    }
    let n = gens[0].n();
    let len = n * l;
    let mut rows = Vec::new();
    for g in gens {
        let v = g.valuation().unwrap_or(0) as i64;
        let dg = g.degree().unwrap_or(0) as i64;
        let shifts: Vec<i64> = match mode {
            Termination::Subset => (-v..=(l as i64 - 1 - dg)).collect(),
            Termination::Truncate => (-dg..=(l as i64 - 1 - v)).collect(),
        };
        for s in shifts {
            let mut r = F4Vec::zeros(len);
            for k in v..=dg {
                let b = s + k;
                if b < 0 || b >= l as i64 {
                    continue;
                }
                for (j, c) in g.block(k as i32).into_iter().enumerate() {
                    if !c.is_zero() {
                        r.set(b as usize * n + j, c);
                    }
                }
            }
            if !r.is_zero() {
                rows.push(r);
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    Ok(BlockCode::new(field, len, rows)?.with_block(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerKind {
    Css,
    F4Linear,
}

/// Parameters [n, k, d] of the stabilizer code with label code of dimension `dim_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizerSummary {
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub kind: StabilizerKind,
    pub degenerate: bool,
}

impl StabilizerSummary {
    pub fn from_label_code(field: Field, len: usize, dim_b: usize, d_perp: u32) -> StabilizerSummary {
        StabilizerSummary {
            n: len,
            k: len - 2 * dim_b,
            d: d_perp,
            kind: if field == Field::F2 { StabilizerKind::Css } else { StabilizerKind::F4Linear },
            degenerate: false,
        }
    }
}

impl std::fmt::Display for StabilizerSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)
    }
}

/// Selects what "long enough" means for a tail-biting length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbMode {
    /// The tail-biting orthogonal code keeps the free distance d⊥.
    DistancePreserving,
    /// All single-error syndromes on the circle are nonzero and distinct.
    SyndromeDistinct,
}

#[derive(Clone, Debug)]
pub struct TailbiteResult {
    pub l: usize,
    /// (length, dimension) of the self-orthogonal code B.
    pub b: (usize, usize),
    /// (length, dimension, distance) of B⊥.
    pub b_perp: (usize, usize, u32),
    pub stabilizer: StabilizerSummary,
    pub b_self_orthogonal: bool,
    pub ranks_ok: bool,
}

/// Whether all single-symbol errors have distinct nonzero circular syndromes.
pub fn syndromes_distinct(code: &ConvCode, l: usize) -> bool {
    let n = code.n();
    let nu = code.nu();
    if l < nu + 1 {
        return false;
    }
    let mut seen = HashSet::new();
    for b in 0..l {
        for j in 0..n {
            for &a in code.field().nonzero() {
                let s = single_error_syndrome(code, l, b, j, a);
                if s.iter().all(|c| c.is_zero()) || !seen.insert(s) {
                    return false;
                }
            }
        }
    }
    true
}

/// Circular syndrome (⟨wrapped D^k g, e⟩ for k = 0..L) of a single error.
pub fn single_error_syndrome(code: &ConvCode, l: usize, block: usize, pos: usize, a: F4) -> Vec<F4> {
    let mut s = vec![F4::ZERO; l];
    for m in 0..=code.nu() {
        let c = code.g().comp(pos).coeff(m as i32);
        if !c.is_zero() {
            let k = (block + l - m % l) % l;
            s[k] += c.conj() * a;
        }
    }
    s
}

/// Tail-biting orthogonal-code words of weight `w` for the code's circular
/// syndrome former, found by meet-in-the-middle on single-error syndromes.
/// Returned as sorted (position, value) lists.
pub fn tb_words_of_weight(code: &ConvCode, l: usize, w: usize) -> Vec<Vec<(usize, F4)>> {
    let n = code.n();
    let len = n * l;
    let singles: Vec<Vec<(usize, F4, Vec<F4>)>> = (0..len)
        .map(|p| {
            code.field()
                .nonzero()
                .iter()
                .map(|&a| (p, a, single_error_syndrome(code, l, p / n, p % n, a)))
                .collect()
        })
        .collect();
    let mut lookup: HashMap<Vec<F4>, Vec<(usize, F4)>> = HashMap::new();
    for v in singles.iter().flatten() {
        lookup.entry(v.2.clone()).or_default().push((v.0, v.1));
    }
    let mut out = Vec::new();
    if w == 0 {
        return out;
    }
    fn rec(
        start: usize,
        left: usize,
        acc: &mut Vec<(usize, F4)>,
        syn: &mut Vec<F4>,
        singles: &[Vec<(usize, F4, Vec<F4>)>],
        lookup: &HashMap<Vec<F4>, Vec<(usize, F4)>>,
        out: &mut Vec<Vec<(usize, F4)>>,
    ) {
        if left == 1 {
            if let Some(cands) = lookup.get(&*syn) {
                for &(p, a) in cands {
                    if p >= start {
                        let mut word = acc.clone();
                        word.push((p, a));
                        out.push(word);
                    }
                }
            }
            return;
        }
        for p in start..singles.len() {
            for (_, a, s) in &singles[p] {
                for (x, y) in syn.iter_mut().zip(s) {
                    *x += *y;
                }
                acc.push((p, *a));
                rec(p + 1, left - 1, acc, syn, singles, lookup, out);
                acc.pop();
                for (x, y) in syn.iter_mut().zip(s) {
                    *x += *y;
                }
            }
        }
    }
    let mut syn = vec![F4::ZERO; l];
    rec(0, w, &mut Vec::new(), &mut syn, &singles, &lookup, &mut out);
    out
}

/// Number of orbits of `words` under cyclic shifts by whole blocks.
pub fn cyclic_orbits(words: &[Vec<(usize, F4)>], n: usize, l: usize) -> usize {
    let len = n * l;
    let canon = |w: &Vec<(usize, F4)>| -> Vec<(usize, F4)> {
        (0..l)
            .map(|r| {
                let mut v: Vec<(usize, F4)> = w.iter().map(|&(p, a)| ((p + r * n) % len, a)).collect();
                v.sort();
                v
            })
            .min()
            .unwrap()
    };
    words.iter().map(canon).collect::<HashSet<_>>().len()
}

fn tb_result(code: &ConvCode, l: usize, d_perp: u32) -> Result<TailbiteResult> {
    let b = tail_bite_code(code, l)?;
    let bp = tail_bite_dual(code, l)?;
    let n = code.n();
    let ranks_ok = b.dim() == l && bp.dim() == (n - 1) * l;
    Ok(TailbiteResult {
        l,
        b: (n * l, b.dim()),
        b_perp: (n * l, bp.dim(), d_perp),
        stabilizer: StabilizerSummary::from_label_code(code.field(), n * l, b.dim(), d_perp),
        b_self_orthogonal: b.is_self_orthogonal(),
        ranks_ok,
    })
}

/// Handlery bound ⌈d/α⌉.
pub fn handlery_bound(d: u32, alpha: Ratio<i64>) -> usize {
    (Ratio::from_integer(d as i64) / alpha).ceil().to_integer() as usize
}

/// Smallest tail-biting length satisfying `mode`.
pub fn min_tailbiting_length(code: &ConvCode, mode: TbMode) -> Result<TailbiteResult> {
    let lo = code.nu() + 1;
    match mode {
        TbMode::SyndromeDistinct => {
            let hi = lo + 64;
            for l in lo..=hi {
                if syndromes_distinct(code, l) {
                    return tb_result(code, l, 3);
                }
            }
            Err(Error::Budget(format!("no length up to {hi} separates single-error syndromes")))
        }
        TbMode::DistancePreserving => {
            let t = distance::build_trellis(code.dual_basis())?;
            let cutoff = (4 * code.nu().max(1) * code.n()) as u32;
            let (d, _) = distance::free_distance(&t, cutoff)?;
            let alpha = distance::slope(&t)?.alpha;
            let hi = handlery_bound(d, alpha).max(lo);
            let profile = distance::tailbiting_profile(&t, hi);
            for l in lo..=hi {
                if profile[l - 1] == d {
                    let r = tb_result(code, l, d)?;
                    if r.ranks_ok {
                        return Ok(r);
                    }
                }
            }
            let best = profile[lo - 1..].iter().max().copied().unwrap_or(0);
            Err(Error::Budget(format!("no length up to {hi} keeps d = {d} (best {best})")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> ConvCode {
        ConvCode::parse(Field::F4, &["11", "1w", "1W"]).unwrap()
    }

    #[test]
    fn example2_wrapped_row() {
        let b = tail_bite_code(&ex1(), 3).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(crate::fields::format_blocks(&b.generators()[2].to_vec(), 3), "1wW|000|111");
        assert!(b.is_self_orthogonal());
        let bp = b.dual_default();
        assert_eq!(bp.dim(), 6);
        assert_eq!(bp.min_distance().unwrap().0, 3);
        assert!(bp.same_code(&tail_bite_dual(&ex1(), 3).unwrap()));
    }

    #[test]
    fn example1_termination() {
        let c = ex1();
        let b = terminate(Field::F4, std::slice::from_ref(c.g()), 3, Termination::Subset).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.is_self_orthogonal());
        let bp = b.dual_default();
        assert_eq!(bp.dim(), 7);
        assert_eq!(bp.min_distance().unwrap().0, 2);
        let trunc = terminate(Field::F4, c.dual_basis().h(), 3, Termination::Truncate).unwrap();
        assert!(trunc.same_code(&bp));
        let sub = terminate(Field::F4, c.dual_basis().h(), 3, Termination::Subset).unwrap();
        assert_eq!(sub.dim(), 5);
        assert_eq!(sub.min_distance().unwrap().0, 3);
        let sd = sub.dual_default();
        assert_eq!(sd.dim(), 4);
        assert!(!sd.is_self_orthogonal());
        let tr = terminate(Field::F4, std::slice::from_ref(c.g()), 3, Termination::Truncate).unwrap();
        assert!(tr.same_code(&sd));
    }

    #[test]
    fn small_block_duals() {
        let a = BlockCode::parse(Field::F4, "0Www W\nW0Www").unwrap();
        assert!(a.is_self_orthogonal());
        assert_eq!(a.min_distance().unwrap().0, 4);
        let ad = a.dual_default();
        assert_eq!((ad.dim(), ad.min_distance().unwrap().0), (3, 3));
        let b = BlockCode::parse(Field::F2, "0001111\n0110011\n1010101").unwrap();
        assert!(b.is_self_orthogonal());
        let bd = b.dual_default();
        assert_eq!((bd.dim(), bd.min_distance().unwrap().0), (4, 3));
        assert!(bd.dual_default().same_code(&b));
    }

    #[test]
    fn minimal_lengths() {
        let r = min_tailbiting_length(&ex1(), TbMode::DistancePreserving).unwrap();
        assert_eq!((r.l, r.b_perp, r.stabilizer.to_string()), (3, (9, 6, 3), "[9,3,3]".to_string()));
        let c3 = ConvCode::parse(Field::F2, &["111", "101", "1"]).unwrap();
        let r = min_tailbiting_length(&c3, TbMode::SyndromeDistinct).unwrap();
        assert_eq!((r.l, r.b_perp), (5, (15, 10, 3)));
        let r = min_tailbiting_length(&c3, TbMode::DistancePreserving).unwrap();
        assert_eq!(r.l, 5);
    }
}
