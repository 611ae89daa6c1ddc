//! Syndromes and decoders: streaming single-error tables, circular tables for
//! tail-biting codes, block coset tables and Viterbi coset-leader search.

use std::collections::HashMap;

use crate::blockcode::BlockCode;
use crate::convcode::ConvCode;
use crate::distance::Trellis;
use crate::error::{Error, Result};
use crate::fields::{F4Vec, Field, F4};
use crate::linalg::RightInverse;

/// Syndromes S_k = ⟨D^k g, e⟩ for k in `lo..hi`, with `e` given on blocks 0..W.
pub fn conv_syndrome(code: &ConvCode, e: &[F4], lo: i64, hi: i64) -> Vec<F4> {
    let n = code.n();
    let mut s = vec![F4::ZERO; (hi - lo).max(0) as usize];
    for (p, &x) in e.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (b, j) = ((p / n) as i64, p % n);
        for m in 0..=code.nu() {
            let k = b - m as i64;
            if k >= lo && k < hi {
                s[(k - lo) as usize] += code.g().comp(j).coeff(m as i32).conj() * x;
            }
        }
    }
    s
}

/// Syndromes of all generators meeting the W-block window (k = −ν..W−1).
pub fn window_syndrome(code: &ConvCode, e: &[F4]) -> Vec<F4> {
    let w = (e.len() / code.n()) as i64;
    conv_syndrome(code, e, -(code.nu() as i64), w)
}

/// Circular syndromes S_k = ⟨wrapped D^k g, e⟩, k = 0..L.
pub fn circular_syndrome(code: &ConvCode, e: &[F4], l: usize) -> Vec<F4> {
    let n = code.n();
    let mut s = vec![F4::ZERO; l];
    for (p, &x) in e.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (b, j) = (p / n, p % n);
        for m in 0..=code.nu() {
            s[(b + l * (m / l + 1) - m) % l] += code.g().comp(j).coeff(m as i32).conj() * x;
        }
    }
    s
}

/// Bit-flip and phase-flip views (ℓ₁, ℓ₂) of a label sequence.
pub fn split_views(e: &[F4]) -> (Vec<F4>, Vec<F4>) {
    let bit = |b: u8| if b == 1 { F4::ONE } else { F4::ZERO };
    (e.iter().map(|a| bit(a.l1())).collect(), e.iter().map(|a| bit(a.l2())).collect())
}

/// Recombines binary corrections: ℓ₁ positions become X (ω), ℓ₂ positions Z (ω̄).
pub fn join_views(x: &[F4], z: &[F4]) -> Vec<F4> {
    x.iter()
        .zip(z)
        .map(|(a, b)| {
            let mut c = F4::ZERO;
            if !a.is_zero() {
                c += F4::OMEGA;
            }
            if !b.is_zero() {
                c += F4::OMEGA_BAR;
            }
            c
        })
        .collect()
}

/// Decoder output: estimated error plus the syndrome indices where an
/// uncorrectable pattern was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub error: Vec<F4>,
    pub detected: Vec<i64>,
}

impl Decoded {
    pub fn is_detected(&self) -> bool {
        !self.detected.is_empty()
    }
}

/// Which end of the generator anchors the streaming table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Scan k upward; the pattern (S_k..S_{k+ν}) names the error in block k+ν.
    Forward,
    /// Scan k downward; the pattern (S_k, S_{k−1}, .., S_{k−ν}) names the error in block k.
    Backward,
}

/// Single-error lookup table over one field (F4 for F4-linear codes, F2 per view
/// for CSS codes).
#[derive(Clone, Debug)]
pub struct StreamDecoder {
    n: usize,
    nu: usize,
    dir: Direction,
    /// conj(g_m) blocks
    gconj: Vec<Vec<F4>>,
    table: HashMap<Vec<F4>, Vec<F4>>,
}

impl StreamDecoder {
    /// Uses the forward direction when g_ν has full weight, else backward when g_0 does.
    pub fn new(code: &ConvCode) -> Result<StreamDecoder> {
        let full = |k: usize| code.block(k).iter().all(|c| !c.is_zero());
        let dir = if full(code.nu()) {
            Direction::Forward
        } else if full(0) {
            Direction::Backward
        } else {
            return Err(Error::Incompatible("no generator end block has full weight".into()));
        };
        StreamDecoder::with_direction(code, dir)
    }

    pub fn with_direction(code: &ConvCode, dir: Direction) -> Result<StreamDecoder> {
        let n = code.n();
        let nu = code.nu();
        let gconj: Vec<Vec<F4>> = (0..=nu).map(|m| code.block(m).iter().map(|c| c.conj()).collect()).collect();
        let mut d = StreamDecoder { n, nu, dir, gconj, table: HashMap::new() };
        for j in 0..n {
            for &a in code.field().nonzero() {
                let mut x = vec![F4::ZERO; n];
                x[j] = a;
                let p = d.pattern(&x);
                if p[0].is_zero() {
                    return Err(Error::Incompatible(format!("single error at position {j} has a zero anchor")));
                }
                if d.table.insert(p, x).is_some() {
                    return Err(Error::Incompatible("single-error patterns collide".into()));
                }
            }
        }
        Ok(d)
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// Anchored syndrome pattern (ν+1 values) of an error block.
    pub fn pattern(&self, x: &[F4]) -> Vec<F4> {
        let dot = |m: usize| self.gconj[m].iter().zip(x).fold(F4::ZERO, |acc, (&g, &e)| acc + g * e);
        match self.dir {
            Direction::Forward => (0..=self.nu).map(|i| dot(self.nu - i)).collect(),
            Direction::Backward => (0..=self.nu).map(dot).collect(),
        }
    }

    /// Table entries sorted by error position then value.
    pub fn entries(&self) -> Vec<(Vec<F4>, Vec<F4>)> {
        let mut v: Vec<_> = self.table.iter().map(|(p, x)| (p.clone(), x.clone())).collect();
        v.sort_by_key(|(_, x)| {
            let j = x.iter().position(|c| !c.is_zero()).unwrap();
            (j, x[j].order_rank())
        });
        v
    }

    pub fn lookup(&self, pattern: &[F4]) -> Option<&[F4]> {
        self.table.get(pattern).map(|v| v.as_slice())
    }

    /// Streams through syndromes `s` (indices lo..lo+len) and returns the
    /// error estimate on blocks 0..w. After a detection, decoding resumes at
    /// the next zero syndrome.
    pub fn decode(&self, s: &[F4], lo: i64, w: usize) -> Decoded {
        let mut s = s.to_vec();
        let len = s.len() as i64;
        let mut est = vec![F4::ZERO; self.n * w];
        let mut detected = Vec::new();
        let step: i64 = if self.dir == Direction::Forward { 1 } else { -1 };
        let at = |s: &Vec<F4>, i: i64| if i >= 0 && i < len { s[i as usize] } else { F4::ZERO };
        let mut i: i64 = if step == 1 { 0 } else { len - 1 };
        while i >= 0 && i < len {
            if s[i as usize].is_zero() {
                i += step;
                continue;
            }
            let pat: Vec<F4> = (0..=self.nu as i64).map(|t| at(&s, i + step * t)).collect();
            let block = lo + i + if step == 1 { self.nu as i64 } else { 0 };
            match self.table.get(&pat) {
                Some(x) if block >= 0 && (block as usize) < w => {
                    for (j, &c) in x.iter().enumerate() {
                        est[block as usize * self.n + j] += c;
                    }
                    for (t, &c) in pat.iter().enumerate() {
                        let k = i + step * t as i64;
                        if k >= 0 && k < len {
                            s[k as usize] += c;
                        }
                    }
                    i += step;
                }
                _ => {
                    detected.push(lo + i);
                    while i >= 0 && i < len && !s[i as usize].is_zero() {
                        i += step;
                    }
                }
            }
        }
        Decoded { error: est, detected }
    }

    /// Same table on a circular time axis of L blocks. Anchors are nonzero
    /// syndromes preceded (in scan order) by min(ν, L−ν−1) zeros; a candidate
    /// is accepted when it clears the whole syndrome.
    pub fn decode_circular(&self, s: &[F4]) -> Decoded {
        let l = s.len();
        let mut est = vec![F4::ZERO; self.n * l];
        if s.iter().all(|c| c.is_zero()) {
            return Decoded { error: est, detected: vec![] };
        }
        let nu = self.nu;
        let gap = if l > nu + 1 { nu.min(l - nu - 1) } else { 0 };
        let idx = |k: i64| k.rem_euclid(l as i64) as usize;
        let step: i64 = if self.dir == Direction::Forward { 1 } else { -1 };
        let order: Vec<usize> = if step == 1 { (0..l).collect() } else { (0..l).rev().collect() };
        for &k in &order {
            let ki = k as i64;
            if s[k].is_zero() || (1..=gap as i64).any(|t| !s[idx(ki - step * t)].is_zero()) {
                continue;
            }
            let pat: Vec<F4> = (0..=nu as i64).map(|t| s[idx(ki + step * t)]).collect();
            let Some(x) = self.table.get(&pat) else { continue };
            let mut r = s.to_vec();
            for (t, &c) in pat.iter().enumerate() {
                r[idx(ki + step * t as i64)] += c;
            }
            if r.iter().all(|c| c.is_zero()) {
                let block = if step == 1 { idx(ki + nu as i64) } else { k };
                est[block * self.n..(block + 1) * self.n].copy_from_slice(x);
                return Decoded { error: est, detected: vec![] };
            }
        }
        Decoded { error: est, detected: vec![0] }
    }
}

/// Runs a binary table decoder independently on the ℓ₁ and ℓ₂ views.
#[derive(Clone, Debug)]
pub struct CssStreamDecoder {
    inner: StreamDecoder,
}

impl CssStreamDecoder {
    pub fn new(code: &ConvCode) -> Result<CssStreamDecoder> {
        if code.field() != Field::F2 {
            return Err(Error::Incompatible("CSS decoding needs a binary code".into()));
        }
        Ok(CssStreamDecoder { inner: StreamDecoder::new(code)? })
    }

    pub fn view_decoder(&self) -> &StreamDecoder {
        &self.inner
    }

    /// Decodes from F4 syndromes of a binary code (bit 1 and bit 2 are the two views).
    pub fn decode(&self, s: &[F4], lo: i64, w: usize) -> Decoded {
        let (sx, sz) = split_views(s);
        let dx = self.inner.decode(&sx, lo, w);
        let dz = self.inner.decode(&sz, lo, w);
        join_decoded(dx, dz)
    }

    pub fn decode_circular(&self, s: &[F4]) -> Decoded {
        let (sx, sz) = split_views(s);
        join_decoded(self.inner.decode_circular(&sx), self.inner.decode_circular(&sz))
    }
}

/// Joins the two binary view decodings of a CSS code.
pub fn join_decoded(dx: Decoded, dz: Decoded) -> Decoded {
    let mut detected = dx.detected;
    detected.extend(dz.detected);
    detected.sort();
    detected.dedup();
    Decoded { error: join_views(&dx.error, &dz.error), detected }
}

/// Coset-leader table for a block code, indexed by the syndrome against the
/// code's generators; holds leaders up to `max_weight`.
#[derive(Clone, Debug)]
pub struct BlockTableDecoder {
    rows: Vec<F4Vec>,
    len: usize,
    table: HashMap<Vec<F4>, Vec<F4>>,
}

impl BlockTableDecoder {
    pub fn new(code: &BlockCode, max_weight: usize) -> BlockTableDecoder {
        let rows = code.basis();
        let len = code.len();
        let mut table = HashMap::new();
        for (e, _) in errors_by_weight(code.field(), len, max_weight) {
            let v = F4Vec::from_slice(&e);
            let s: Vec<F4> = rows.iter().map(|r| r.hermitian(&v)).collect();
            table.entry(s).or_insert(e);
        }
        BlockTableDecoder { rows, len, table }
    }

    pub fn syndrome(&self, e: &[F4]) -> Vec<F4> {
        let v = F4Vec::from_slice(e);
        self.rows.iter().map(|r| r.hermitian(&v)).collect()
    }

    pub fn table_size(&self) -> usize {
        self.table.len()
    }

    pub fn decode(&self, s: &[F4]) -> Decoded {
        match self.table.get(s) {
            Some(e) => Decoded { error: e.clone(), detected: vec![] },
            None => Decoded { error: vec![F4::ZERO; self.len], detected: vec![0] },
        }
    }
}

/// All vectors of weight ≤ `max_w` over `field`, in increasing weight, then
/// lexicographic position, then value order.
pub fn errors_by_weight(field: Field, len: usize, max_w: usize) -> Vec<(Vec<F4>, usize)> {
    let mut out = vec![(vec![F4::ZERO; len], 0)];
    let nz = field.nonzero();
    fn rec(
        start: usize,
        left: usize,
        cur: &mut Vec<F4>,
        w: usize,
        nz: &[F4],
        out: &mut Vec<(Vec<F4>, usize)>,
    ) {
        if left == 0 {
            out.push((cur.clone(), w));
            return;
        }
        for p in start..cur.len() {
            for &a in nz {
                cur[p] = a;
                rec(p + 1, left - 1, cur, w, nz, out);
            }
            cur[p] = F4::ZERO;
        }
    }
    for w in 1..=max_w.min(len) {
        let mut cur = vec![F4::ZERO; len];
        rec(0, w, &mut cur, w, nz, &mut out);
    }
    out
}

/// Brute-force coset-leader weights: syndrome (against `rows`) → minimum weight.
/// Enumerates errors by increasing weight until every syndrome of the row
/// space has been seen.
pub fn brute_force_leaders(field: Field, rows: &[F4Vec], len: usize) -> HashMap<Vec<F4>, u32> {
    let total = field.size().pow(crate::linalg::rank(rows, len) as u32);
    let mut out = HashMap::new();
    for w in 0..=len {
        for (e, ew) in errors_by_weight(field, len, w).into_iter().filter(|(_, ew)| *ew == w) {
            let v = F4Vec::from_slice(&e);
            let s: Vec<F4> = rows.iter().map(|r| r.hermitian(&v)).collect();
            out.entry(s).or_insert(ew as u32);
        }
        if out.len() == total {
            break;
        }
    }
    out
}

/// Minimum weight of t + (trellis path output) over `w` time steps.
/// `starts` lists allowed start states; the path must end in `end` if given.
/// Returns the estimate t + path output and its weight. Ties keep the first
/// candidate in (state, input) order.
pub fn viterbi(trellis: &Trellis, t: &[F4], starts: &[usize], end: Option<usize>) -> Option<(Vec<F4>, u32)> {
    let n = trellis.n();
    let w = t.len() / n;
    let v = trellis.num_states();
    let ni = trellis.num_inputs();
    let tp: Vec<(u64, u64)> = (0..w)
        .map(|b| {
            let (mut x, mut z) = (0u64, 0u64);
            for j in 0..n {
                let c = t[b * n + j];
                x |= (c.l1() as u64) << j;
                z |= (c.l2() as u64) << j;
            }
            (x, z)
        })
        .collect();
    const INF: u32 = u32::MAX;
    let mut metric = vec![INF; v];
    for &s in starts {
        metric[s] = 0;
    }
    let mut back: Vec<Vec<(u32, u32)>> = Vec::with_capacity(w);
    let mut nxt = vec![INF; v];
    for &(tx, tz) in &tp {
        nxt.fill(INF);
        let mut bp = vec![(u32::MAX, 0u32); v];
        for s in 0..v {
            let m = metric[s];
            if m == INF {
                continue;
            }
            for u in 0..ni {
                let (ox, oz) = trellis.output_planes(s, u);
                let c = m + ((ox ^ tx) | (oz ^ tz)).count_ones();
                let y = trellis.next(s, u);
                if c < nxt[y] {
                    nxt[y] = c;
                    bp[y] = (s as u32, u as u32);
                }
            }
        }
        back.push(bp);
        std::mem::swap(&mut metric, &mut nxt);
    }
    let fin = match end {
        Some(e) => e,
        None => (0..v).min_by_key(|&s| metric[s])?,
    };
    if metric[fin] == INF {
        return None;
    }
    let mut est = t.to_vec();
    let mut s = fin;
    for b in (0..w).rev() {
        let (p, u) = back[b][s];
        let out = trellis.output(p as usize, u as usize);
        for j in 0..n {
            est[b * n + j] += out[j];
        }
        s = p as usize;
    }
    Some((est, metric[fin]))
}

/// Exact tail-biting decoding: one Viterbi run per start state, closing on it.
pub fn viterbi_tailbiting(trellis: &Trellis, t: &[F4]) -> (Vec<F4>, u32) {
    (0..trellis.num_states())
        .filter_map(|s| viterbi(trellis, t, &[s], Some(s)))
        .min_by_key(|r| r.1)
        .expect("zero path always closes")
}

/// Suboptimal "around and around" tail-biting decoding: metrics are carried
/// over `passes` laps of the circle and the last lap is traced back. The
/// result may fail to close on itself.
pub fn viterbi_wraparound(trellis: &Trellis, t: &[F4], passes: usize) -> (Vec<F4>, u32) {
    let n = trellis.n();
    let mut rep = Vec::with_capacity(t.len() * passes);
    for _ in 0..passes.max(1) {
        rep.extend_from_slice(t);
    }
    let all: Vec<usize> = (0..trellis.num_states()).collect();
    let (est, _) = viterbi(trellis, &rep, &all, None).unwrap();
    let last = est[est.len() - t.len()..].to_vec();
    let w = last.iter().filter(|c| !c.is_zero()).count() as u32;
    debug_assert_eq!(last.len() % n, 0);
    (last, w)
}

/// How a finite window of a convolutional code is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// Every generator meeting the window (k = −ν..W−1): paths start and end at zero.
    Full,
    /// Generators starting inside the window (k = 0..W−1), truncated at its end:
    /// paths start anywhere and end at zero.
    Truncated,
}

/// Viterbi coset-leader decoder on a W-block window of a convolutional code.
#[derive(Clone, Debug)]
pub struct ViterbiWindowDecoder {
    code: ConvCode,
    w: usize,
    measure: Measure,
    trellis: Trellis,
    rows: Vec<F4Vec>,
    rinv: RightInverse,
}

impl ViterbiWindowDecoder {
    pub fn new(code: &ConvCode, w: usize, measure: Measure) -> Result<ViterbiWindowDecoder> {
        let n = code.n();
        let lo = match measure {
            Measure::Full => -(code.nu() as i64),
            Measure::Truncated => 0,
        };
        let rows: Vec<F4Vec> = (lo..w as i64)
            .map(|k| {
                let mut r = F4Vec::zeros(n * w);
                for m in 0..=code.nu() as i64 {
                    let b = k + m;
                    if b >= 0 && b < w as i64 {
                        for (j, c) in code.block(m as usize).into_iter().enumerate() {
                            r.set(b as usize * n + j, c);
                        }
                    }
                }
                r
            })
            .collect();
        let rinv = RightInverse::new(&rows, n * w)?;
        let trellis = crate::distance::build_trellis(code.dual_basis())?;
        Ok(ViterbiWindowDecoder { code: code.clone(), w, measure, trellis, rows, rinv })
    }

    pub fn rows(&self) -> &[F4Vec] {
        &self.rows
    }

    pub fn syndrome(&self, e: &[F4]) -> Vec<F4> {
        let v = F4Vec::from_slice(e);
        self.rows.iter().map(|r| r.hermitian(&v)).collect()
    }

    /// Fixed representative t(S) with syndrome S.
    pub fn representative(&self, s: &[F4]) -> Vec<F4> {
        self.rinv.apply(s).to_vec()
    }

    pub fn decode(&self, s: &[F4]) -> Decoded {
        let t = self.representative(s);
        let starts: Vec<usize> = match self.measure {
            Measure::Full => vec![0],
            Measure::Truncated => (0..self.trellis.num_states()).collect(),
        };
        match viterbi(&self.trellis, &t, &starts, Some(0)) {
            Some((e, _)) => Decoded { error: e, detected: vec![] },
            None => Decoded { error: vec![F4::ZERO; self.code.n() * self.w], detected: vec![0] },
        }
    }
}

/// Viterbi coset-leader decoder for the tail-biting code of length L.
#[derive(Clone, Debug)]
pub struct ViterbiTailbitingDecoder {
    trellis: Trellis,
    rows: Vec<F4Vec>,
    rinv: RightInverse,
    wrap_passes: Option<usize>,
}

impl ViterbiTailbitingDecoder {
    pub fn new(code: &ConvCode, l: usize) -> Result<ViterbiTailbitingDecoder> {
        let b = crate::blockcode::tail_bite_code(code, l)?;
        let rows = b.generators().to_vec();
        let rinv = RightInverse::new(&rows, b.len())?;
        let trellis = crate::distance::build_trellis(code.dual_basis())?;
        Ok(ViterbiTailbitingDecoder { trellis, rows, rinv, wrap_passes: None })
    }

    /// Switches to the suboptimal wrap-around mode with the given number of laps.
    pub fn wraparound(mut self, passes: usize) -> Self {
        self.wrap_passes = Some(passes);
        self
    }

    pub fn syndrome(&self, e: &[F4]) -> Vec<F4> {
        let v = F4Vec::from_slice(e);
        self.rows.iter().map(|r| r.hermitian(&v)).collect()
    }

    pub fn decode(&self, s: &[F4]) -> Decoded {
        let t = self.rinv.apply(s).to_vec();
        let e = match self.wrap_passes {
            None => viterbi_tailbiting(&self.trellis, &t).0,
            Some(p) => viterbi_wraparound(&self.trellis, &t, p).0,
        };
        let ok = self.syndrome(&e) == s;
        Decoded { error: e, detected: if ok { vec![] } else { vec![0] } }
    }
}

/// Whether the residual r (window blocks 0..W) lies in the convolutional code,
/// i.e. is orthogonal to every shift of the orthogonal basis meeting the window.
pub fn conv_residual_ok(code: &ConvCode, r: &[F4]) -> bool {
    if r.iter().all(|c| c.is_zero()) {
        return true;
    }
    let n = code.n();
    let w = (r.len() / n) as i64;
    for h in code.dual_basis().h() {
        let dh = h.degree().unwrap_or(0) as i64;
        let blocks: Vec<Vec<F4>> = (0..=dh).map(|m| h.block(m as i32)).collect();
        for k in -dh..w {
            let mut acc = F4::ZERO;
            for (m, hb) in blocks.iter().enumerate() {
                let b = k + m as i64;
                if b < 0 || b >= w {
                    continue;
                }
                for j in 0..n {
                    acc += hb[j].conj() * r[b as usize * n + j];
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether the residual lies in the block code whose dual basis is `dual`.
pub fn block_residual_ok(dual: &[F4Vec], r: &[F4]) -> bool {
    if r.iter().all(|c| c.is_zero()) {
        return true;
    }
    let v = F4Vec::from_slice(r);
    dual.iter().all(|d| d.hermitian(&v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_symbols;

    fn ex1() -> ConvCode {
        ConvCode::parse(Field::F4, &["11", "1w", "1W"]).unwrap()
    }

    fn ex3() -> ConvCode {
        ConvCode::parse(Field::F2, &["111", "101", "1"]).unwrap()
    }

    fn syms(s: &str) -> Vec<F4> {
        parse_symbols(s).unwrap()
    }

    #[test]
    fn nine_entry_table() {
        let d = StreamDecoder::new(&ex1()).unwrap();
        assert_eq!(d.direction(), Direction::Forward);
        assert_eq!(d.pattern(&syms("100")), syms("11"));
        assert_eq!(d.pattern(&syms("010")), syms("W1"));
        assert_eq!(d.pattern(&syms("001")), syms("w1"));
        assert_eq!(d.entries().len(), 9);
        assert_eq!(d.lookup(&syms("w1")), Some(&syms("001")[..]));
        assert!(d.lookup(&syms("10")).is_none());
    }

    #[test]
    fn css_table_backward() {
        let d = CssStreamDecoder::new(&ex3()).unwrap();
        let v = d.view_decoder();
        assert_eq!(v.direction(), Direction::Backward);
        assert_eq!(v.lookup(&syms("111")), Some(&syms("100")[..]));
        assert_eq!(v.lookup(&syms("101")), Some(&syms("010")[..]));
        assert_eq!(v.lookup(&syms("100")), Some(&syms("001")[..]));
        assert!(v.lookup(&syms("110")).is_none());
    }

    #[test]
    fn streaming_corrects_isolated_errors() {
        let c = ex1();
        let d = StreamDecoder::new(&c).unwrap();
        let mut e = vec![F4::ZERO; 18];
        e[1] = F4::OMEGA;
        e[9] = F4::ONE;
        let s = window_syndrome(&c, &e);
        let out = d.decode(&s, -1, 6);
        assert_eq!(out.error, e);
        assert!(!out.is_detected());
    }

    #[test]
    fn circular_examples() {
        let c = ex1();
        let d = StreamDecoder::new(&c).unwrap();
        let mut e = vec![F4::ZERO; 9];
        e[4] = F4::ONE;
        let s = circular_syndrome(&c, &e, 3);
        assert_eq!(s.iter().filter(|x| x.is_zero()).count(), 1);
        assert_eq!(d.decode_circular(&s).error, e);
    }

    #[test]
    fn viterbi_small_window() {
        let c = ex1();
        let v = ViterbiWindowDecoder::new(&c, 4, Measure::Truncated).unwrap();
        let mut e = vec![F4::ZERO; 12];
        e[7] = F4::OMEGA_BAR;
        let s = v.syndrome(&e);
        let out = v.decode(&s);
        assert_eq!(v.syndrome(&out.error), s);
        assert!(out.error.iter().filter(|x| !x.is_zero()).count() <= 1);
    }
}
