//! Controller-form trellises of rate-k/n codes, free distance, minimum-weight
//! multiplicity, minimum mean cycle weight, and circular (tail-biting) distances.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::convcode::{ConvCode, OrthogonalBasis};
use crate::error::{Error, Result};
use crate::fields::{scale_planes, Field, F4};
use crate::polyring::LaurentTuple;

const MAX_EDGES: usize = 1 << 26;

/// Controller-canonical trellis: the state holds the last ν_i inputs of each generator.
#[derive(Clone, Debug)]
pub struct Trellis {
    field: Field,
    n: usize,
    degrees: Vec<usize>,
    num_states: usize,
    num_inputs: usize,
    next: Vec<u32>,
    out_x: Vec<u64>,
    out_z: Vec<u64>,
    weight: Vec<u8>,
}

impl Trellis {
    /// Builds the trellis of the code generated by `gens` (polynomial tuples).
    pub fn from_generators(field: Field, gens: &[LaurentTuple]) -> Result<Trellis> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let n = gens[0].n();
        if n > 64 {
            return Err(Error::Shape("trellis blocks limited to 64 symbols".into()));
        }
        if gens.iter().any(|g| !g.is_polynomial() || g.n() != n) {
            return Err(Error::Shape("trellis generators must be polynomial tuples of equal width".into()));
        }
        let bits = field.bits() as usize;
        let degrees: Vec<usize> = gens.iter().map(|g| g.degree().unwrap_or(0).max(0) as usize).collect();
        let state_bits: usize = degrees.iter().sum::<usize>() * bits;
        let input_bits = gens.len() * bits;
        if state_bits + input_bits > 26 {
            return Err(Error::Budget(format!("trellis with 2^{} edges", state_bits + input_bits)));
        }
        let num_states = 1usize << state_bits;
        let num_inputs = 1usize << input_bits;
        debug_assert!(num_states * num_inputs <= MAX_EDGES);
        // coefficient blocks h_{i,m} as bit planes
        let planes: Vec<Vec<(u64, u64)>> = gens
            .iter()
            .zip(&degrees)
            .map(|(g, &d)| {
                (0..=d)
                    .map(|m| {
                        let mut x = 0u64;
                        let mut z = 0u64;
                        for (j, c) in g.block(m as i32).into_iter().enumerate() {
                            x |= (c.l1() as u64) << j;
                            z |= (c.l2() as u64) << j;
                        }
                        (x, z)
                    })
                    .collect()
            })
            .collect();
        let offsets: Vec<usize> = degrees
            .iter()
            .scan(0usize, |acc, &d| {
                let o = *acc;
                *acc += d * bits;
                Some(o)
            })
            .collect();
        let elems = field.elements();
        let mask = (1usize << bits) - 1;
        let mut next = vec![0u32; num_states * num_inputs];
        let mut out_x = vec![0u64; num_states * num_inputs];
        let mut out_z = vec![0u64; num_states * num_inputs];
        let mut weight = vec![0u8; num_states * num_inputs];
        for s in 0..num_states {
            for u in 0..num_inputs {
                let (mut ox, mut oz) = (0u64, 0u64);
                let mut ns = 0usize;
                for i in 0..gens.len() {
                    let ui = elems[(u >> (i * bits)) & mask];
                    let (px, pz) = scale_planes(ui, planes[i][0].0, planes[i][0].1);
                    ox ^= px;
                    oz ^= pz;
                    let d = degrees[i];
                    for m in 1..=d {
                        let sym = elems[(s >> (offsets[i] + (m - 1) * bits)) & mask];
                        let (px, pz) = scale_planes(sym, planes[i][m].0, planes[i][m].1);
                        ox ^= px;
                        oz ^= pz;
                    }
                    if d > 0 {
                        let mem = (s >> offsets[i]) & ((1usize << (d * bits)) - 1);
                        let shifted = ((mem << bits) | ((u >> (i * bits)) & mask)) & ((1usize << (d * bits)) - 1);
                        ns |= shifted << offsets[i];
                    }
                }
                let e = s * num_inputs + u;
                next[e] = ns as u32;
                out_x[e] = ox;
                out_z[e] = oz;
                weight[e] = (ox | oz).count_ones() as u8;
            }
        }
        Ok(Trellis { field, n, degrees, num_states, num_inputs, next, out_x, out_z, weight })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_edges(&self) -> usize {
        self.num_states * self.num_inputs
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    #[inline]
    pub fn next(&self, s: usize, u: usize) -> usize {
        self.next[s * self.num_inputs + u] as usize
    }

    #[inline]
    pub fn weight(&self, s: usize, u: usize) -> u32 {
        self.weight[s * self.num_inputs + u] as u32
    }

    /// Output block of edge (s, u) as n symbols.
    pub fn output(&self, s: usize, u: usize) -> Vec<F4> {
        let e = s * self.num_inputs + u;
        (0..self.n)
            .map(|j| F4::from_bits(((self.out_x[e] >> j) & 1) as u8, ((self.out_z[e] >> j) & 1) as u8))
            .collect()
    }

    /// Output planes of edge (s, u).
    #[inline]
    pub fn output_planes(&self, s: usize, u: usize) -> (u64, u64) {
        let e = s * self.num_inputs + u;
        (self.out_x[e], self.out_z[e])
    }

    /// For each state, predecessors (state, min edge weight), excluding the
    /// zero-input self-loop at state 0 when `skip_zero_loop` is set.
    fn predecessors(&self, skip_zero_loop: bool) -> Vec<Vec<(u32, u8)>> {
        let mut preds: Vec<Vec<(u32, u8)>> = vec![Vec::new(); self.num_states];
        for s in 0..self.num_states {
            for u in 0..self.num_inputs {
                if skip_zero_loop && s == 0 && u == 0 {
                    continue;
                }
                let t = self.next(s, u);
                let w = self.weight[s * self.num_inputs + u];
                match preds[t].iter_mut().find(|(p, _)| *p as usize == s) {
                    Some(e) => e.1 = e.1.min(w),
                    None => preds[t].push((s as u32, w)),
                }
            }
        }
        preds
    }
}

pub fn build_trellis(basis: &OrthogonalBasis) -> Result<Trellis> {
    Trellis::from_generators(basis.field(), basis.h())
}

/// Minimum distance, multiplicity and slope of an orthogonal code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub d_perp: u32,
    pub n_d: u64,
    pub alpha: Ratio<i64>,
}

/// Minimum weight over nonzero paths leaving and re-entering the zero state,
/// and the number of such paths whose first input is at section 0.
pub fn free_distance(t: &Trellis, weight_cutoff: u32) -> Result<(u32, u64)> {
    let d = free_distance_only(t, weight_cutoff)?;
    let n = count_min_weight(t, d)?;
    Ok((d, n))
}

fn free_distance_only(t: &Trellis, cutoff: u32) -> Result<u32> {
    let ns = t.num_states;
    let mut dist = vec![u32::MAX; ns];
    let mut best = u32::MAX;
    let mut heap = BinaryHeap::new();
    for u in 1..t.num_inputs {
        let (to, w) = (t.next(0, u), t.weight(0, u));
        if to == 0 {
            best = best.min(w);
        } else if w < dist[to] {
            dist[to] = w;
            heap.push(Reverse((w, to)));
        }
    }
    while let Some(Reverse((w, s))) = heap.pop() {
        if w > dist[s] || w >= best {
            continue;
        }
        for u in 0..t.num_inputs {
            let (to, nw) = (t.next(s, u), w + t.weight(s, u));
            if to == 0 {
                best = best.min(nw);
            } else if nw < dist[to] {
                dist[to] = nw;
                heap.push(Reverse((nw, to)));
            }
        }
    }
    if best > cutoff {
        return Err(Error::Cutoff(cutoff));
    }
    Ok(best)
}

fn count_min_weight(t: &Trellis, d: u32) -> Result<u64> {
    let ns = t.num_states;
    let wd = d as usize + 1;
    let mut cur = vec![0u64; ns * wd];
    let mut total = 0u64;
    for u in 1..t.num_inputs {
        let (to, w) = (t.next(0, u), t.weight(0, u) as usize);
        if w > d as usize {
            continue;
        }
        if to == 0 {
            if w == d as usize {
                total += 1;
            }
        } else {
            cur[to * wd + w] += 1;
        }
    }
    let max_steps = (d as usize + 1) * ns + 1;
    let mut steps = 0;
    while cur.iter().any(|&c| c != 0) {
        steps += 1;
        if steps > max_steps {
            return Err(Error::Invalid("zero-weight cycle: code is catastrophic".into()));
        }
        let mut nxt = vec![0u64; ns * wd];
        for s in 0..ns {
            let row = &cur[s * wd..(s + 1) * wd];
            if row.iter().all(|&c| c == 0) {
                continue;
            }
            for u in 0..t.num_inputs {
                let (to, ew) = (t.next(s, u), t.weight(s, u) as usize);
                for (w, &c) in row.iter().enumerate() {
                    if c == 0 || w + ew > d as usize {
                        continue;
                    }
                    if to == 0 {
                        if w + ew == d as usize {
                            total = total.saturating_add(c);
                        }
                    } else {
                        nxt[to * wd + w + ew] = nxt[to * wd + w + ew].saturating_add(c);
                    }
                }
            }
        }
        cur = nxt;
    }
    Ok(total)
}

/// Exact minimum mean cycle weight and one cycle attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub alpha: Ratio<i64>,
    pub cycle_weight: i64,
    pub cycle_len: i64,
}

/// Minimum over cycles (other than the zero-input loop at state 0) of
/// total weight / length, by Karp's recurrence.
pub fn slope(t: &Trellis) -> Result<SlopeReport> {
    let v = t.num_states;
    let preds = t.predecessors(true);
    const INF: u32 = u32::MAX;
    let mut f: Vec<Vec<u32>> = Vec::with_capacity(v + 1);
    let mut pred: Vec<Vec<u16>> = Vec::with_capacity(v + 1);
    f.push(vec![0; v]);
    pred.push(vec![0; v]);
    for k in 1..=v {
        let prev = &f[k - 1];
        let (row, prow): (Vec<u32>, Vec<u16>) = (0..v)
            .into_par_iter()
            .map(|y| {
                let mut best = INF;
                let mut arg = 0u16;
                for &(x, w) in &preds[y] {
                    let p = prev[x as usize];
                    if p != INF && p + (w as u32) < best {
                        best = p + w as u32;
                        arg = x as u16;
                    }
                }
                (best, arg)
            })
            .unzip();
        f.push(row);
        pred.push(prow);
    }
    let mut best: Option<(i64, i64, usize)> = None; // (num, den, vertex)
    for y in 0..v {
        if f[v][y] == INF {
            continue;
        }
        let mut worst: Option<(i64, i64)> = None;
        for k in 0..v {
            if f[k][y] == INF {
                continue;
            }
            let (num, den) = (f[v][y] as i64 - f[k][y] as i64, (v - k) as i64);
            if worst.is_none_or(|(a, b)| num * b > a * den) {
                worst = Some((num, den));
            }
        }
        if let Some((a, b)) = worst {
            if best.is_none_or(|(c, d, _)| a * d < c * b) {
                best = Some((a, b, y));
            }
        }
    }
    let (num, den, y) = best.ok_or_else(|| Error::Invalid("trellis has no cycles".into()))?;
    let alpha = Ratio::new(num, den);
    // walk back along the optimal length-v path and pick its best cycle
    let mut walk = vec![y];
    let mut cur = y;
    for k in (1..=v).rev() {
        cur = pred[k][cur] as usize;
        walk.push(cur);
    }
    walk.reverse();
    let edge_w = |a: usize, b: usize| -> i64 {
        preds[b].iter().find(|(p, _)| *p as usize == a).map(|e| e.1 as i64).unwrap()
    };
    let mut found: Option<(i64, i64)> = None;
    let mut last_seen = vec![usize::MAX; v];
    for (i, &s) in walk.iter().enumerate() {
        if last_seen[s] != usize::MAX {
            let j = last_seen[s];
            let w: i64 = (j..i).map(|k| edge_w(walk[k], walk[k + 1])).sum();
            let len = (i - j) as i64;
            if Ratio::new(w, len) == alpha && found.is_none_or(|(_, l)| len < l) {
                found = Some((w, len));
            }
        }
        last_seen[s] = i;
    }
    let (cw, cl) = found.unwrap_or((*alpha.numer(), *alpha.denom()));
    Ok(SlopeReport { alpha, cycle_weight: cw, cycle_len: cl })
}

/// Minimum weight of a nonzero closed path of length `l` in the circular trellis,
/// i.e. the minimum distance of the tail-biting code of length `l` blocks.
/// Weights saturate at 255.
pub fn tailbiting_distance(t: &Trellis, l: usize) -> u32 {
    assert!(l >= 1);
    tailbiting_profile(t, l)[l - 1]
}

/// Tail-biting distances for every length 1..=lmax (entry L−1 is length L).
pub fn tailbiting_profile(t: &Trellis, lmax: usize) -> Vec<u32> {
    let v = t.num_states;
    let preds = t.predecessors(false);
    // dist[y * v + s]: min weight from start s to state y
    let mut dist = vec![u8::MAX; v * v];
    for s in 0..v {
        for u in 0..t.num_inputs {
            if s == 0 && u == 0 {
                continue;
            }
            let y = t.next(s, u);
            let w = t.weight(s, u).min(255) as u8;
            let cell = &mut dist[y * v + s];
            *cell = (*cell).min(w);
        }
    }
    let diag = |d: &[u8]| (0..v).map(|s| d[s * v + s] as u32).min().unwrap();
    let mut out = vec![diag(&dist)];
    let mut nxt = vec![u8::MAX; v * v];
    for _ in 1..lmax {
        nxt.par_chunks_mut(v).enumerate().for_each(|(y, row)| {
            row.fill(u8::MAX);
            for &(x, w) in &preds[y] {
                let src = &dist[x as usize * v..(x as usize + 1) * v];
                for (r, &d) in row.iter_mut().zip(src) {
                    let c = d.saturating_add(w);
                    if c < *r {
                        *r = c;
                    }
                }
            }
        });
        std::mem::swap(&mut dist, &mut nxt);
        out.push(diag(&dist));
    }
    out
}

/// Full distance report for a code's orthogonal code using its minimal basis.
pub fn analyze(code: &ConvCode) -> Result<DistanceReport> {
    let t = build_trellis(code.dual_basis())?;
    let cutoff = (4 * code.nu().max(1) * code.n()) as u32;
    let (d, n) = free_distance(&t, cutoff)?;
    let s = slope(&t)?;
    Ok(DistanceReport { d_perp: d, n_d: n, alpha: s.alpha })
}

/// Counts words of weight `w` in the orthogonal code whose first nonzero symbol
/// lies in block 0, by direct enumeration against the syndrome former.
pub fn low_weight_count(code: &ConvCode, w: usize) -> u64 {
    let n = code.n();
    let nu = code.nu();
    let field = code.field();
    // gconj[m][j] = conj(g_{j,m})
    let gconj: Vec<Vec<F4>> = (0..=nu).map(|m| code.block(m).iter().map(|c| c.conj()).collect()).collect();
    let max_block = w * (nu + 1);
    // syndrome index k in [-nu, max_block], stored at k + nu
    let mut syn = vec![F4::ZERO; max_block + nu + 2];
    let mut count = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        left: usize,
        last_block: usize,
        n: usize,
        nu: usize,
        field: Field,
        gconj: &[Vec<F4>],
        syn: &mut [F4],
        count: &mut u64,
    ) {
        if left == 0 {
            if syn.iter().all(|c| c.is_zero()) {
                *count += 1;
            }
            return;
        }
        let first = pos == 0 && left > 0 && syn.iter().all(|c| c.is_zero());
        let end = if first { n } else { (last_block + nu + 1) * n };
        for p in pos..end {
            let b = p / n;
            // generators ending before block b are final
            if syn[..b].iter().any(|c| !c.is_zero()) {
                break;
            }
            let j = p % n;
            for &a in field.nonzero() {
                for m in 0..=nu {
                    let k = b + nu - m; // generator D^(b-m) at index (b-m)+nu
                    syn[k] += gconj[m][j] * a;
                }
                rec(p + 1, left - 1, b, n, nu, field, gconj, syn, count);
                for m in 0..=nu {
                    let k = b + nu - m;
                    syn[k] += gconj[m][j] * a;
                }
            }
        }
    }
    rec(0, w, 0, n, nu, field, &gconj, &mut syn, &mut count);
    count
}

/// Free distance and multiplicity by enumeration (independent of the trellis).
pub fn free_distance_by_enumeration(code: &ConvCode, max_weight: usize) -> Option<(u32, u64)> {
    (1..=max_weight).find_map(|w| {
        let c = low_weight_count(code, w);
        (c > 0).then_some((w as u32, c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(field: Field, g: &[&str]) -> ConvCode {
        ConvCode::parse(field, g).unwrap()
    }

    #[test]
    fn example_trellis_sizes() {
        let c = code(Field::F4, &["11", "1w", "1W"]);
        let t = build_trellis(c.dual_basis()).unwrap();
        assert_eq!(t.num_states(), 4);
        assert_eq!(t.num_edges(), 64);
        let c = code(Field::F2, &["111", "101", "1"]);
        let t = build_trellis(c.dual_basis()).unwrap();
        assert_eq!(t.num_states(), 4);
    }

    #[test]
    fn example_distances() {
        let r = analyze(&code(Field::F4, &["11", "1w", "1W"])).unwrap();
        assert_eq!((r.d_perp, r.n_d), (3, 3));
        assert_eq!(r.alpha, Ratio::new(1, 1));
        let r = analyze(&code(Field::F2, &["111", "101", "1"])).unwrap();
        assert_eq!((r.d_perp, r.n_d), (3, 2));
        assert_eq!(r.alpha, Ratio::new(1, 2));
        let r = analyze(&code(Field::F2, &["111001", "1100111", "1001111"])).unwrap();
        assert_eq!((r.d_perp, r.n_d), (6, 2));
        assert_eq!(r.alpha, Ratio::new(4, 15));
    }

    #[test]
    fn enumeration_agrees() {
        for g in [&["11", "1w", "1W"][..], &["111", "1w1", "11"][..]] {
            let c = code(Field::F4, g);
            let t = build_trellis(c.dual_basis()).unwrap();
            assert_eq!(free_distance(&t, 40).unwrap(), free_distance_by_enumeration(&c, 6).unwrap());
        }
        let c = code(Field::F2, &["111", "1101", "1111"]);
        let t = build_trellis(c.dual_basis()).unwrap();
        assert_eq!(free_distance(&t, 40).unwrap(), (4, 3));
        assert_eq!(free_distance_by_enumeration(&c, 6), Some((4, 3)));
    }

    #[test]
    fn tailbiting_example() {
        let c = code(Field::F4, &["11", "1w", "1W"]);
        let t = build_trellis(c.dual_basis()).unwrap();
        assert_eq!(tailbiting_distance(&t, 3), 3);
        assert_eq!(tailbiting_distance(&t, 2), 2);
    }
}
