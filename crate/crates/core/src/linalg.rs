//! Dense linear algebra over F4 (and its subfield F2) on bitsliced rows.

use crate::error::{Error, Result};
use crate::fields::{F4Vec, F4};

/// Row-reduces `rows` in place to reduced echelon form with unit pivots.
/// Zero rows are dropped. Returns the pivot columns.
pub fn rref(rows: &mut Vec<F4Vec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].get(c).is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r].get(c).inv().unwrap();
        if inv != F4::ONE {
            rows[r] = rows[r].scaled(inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let f = row.get(c);
                if !f.is_zero() {
                    row.add_scaled(f, &pivot);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[F4Vec], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of { v : Σ_c rows[i][c] v[c] = 0 for all i } (no conjugation).
pub fn nullspace(rows: &[F4Vec], ncols: usize) -> Vec<F4Vec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = F4Vec::zeros(ncols);
        v.set(f, F4::ONE);
        for (row, &p) in m.iter().zip(&pivots) {
            // v[p] + row[f] = 0
            v.set(p, row.get(f));
        }
        out.push(v);
    }
    out
}

/// Whether the row spaces of `a` and `b` coincide.
pub fn same_row_space(a: &[F4Vec], b: &[F4Vec], ncols: usize) -> bool {
    let ra = rank(a, ncols);
    if ra != rank(b, ncols) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both, ncols) == ra
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_row_space(rows: &[F4Vec], v: &F4Vec, ncols: usize) -> bool {
    let r = rank(rows, ncols);
    let mut m = rows.to_vec();
    m.push(v.clone());
    rank(&m, ncols) == r
}

/// Systematic right inverse of a syndrome former: for rows r_i, finds e with
/// ⟨r_i, e⟩ = s_i (Hermitian), supported on a fixed set of pivot positions.
#[derive(Clone, Debug)]
pub struct RightInverse {
    ncols: usize,
    pivots: Vec<usize>,
    /// Row j of the transform T with T·conj(R) in reduced echelon form.
    transform: Vec<F4Vec>,
}

impl RightInverse {
    pub fn new(rows: &[F4Vec], ncols: usize) -> Result<RightInverse> {
        let m = rows.len();
        // augmented [conj(R) | I]
        let mut aug: Vec<F4Vec> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = F4Vec::zeros(ncols + m);
                for c in 0..ncols {
                    v.set(c, r.get(c).conj());
                }
                v.set(ncols + i, F4::ONE);
                v
            })
            .collect();
        let pivots = rref(&mut aug, ncols);
        if pivots.len() != m {
            return Err(Error::Invalid(format!(
                "syndrome former has rank {} < {m} rows",
                pivots.len()
            )));
        }
        let transform = aug
            .iter()
            .map(|row| {
                let mut t = F4Vec::zeros(m);
                for i in 0..m {
                    t.set(i, row.get(ncols + i));
                }
                t
            })
            .collect();
        Ok(RightInverse { ncols, pivots, transform })
    }

    pub fn apply(&self, s: &[F4]) -> F4Vec {
        let sv = F4Vec::from_slice(s);
        let mut e = F4Vec::zeros(self.ncols);
        for (t, &p) in self.transform.iter().zip(&self.pivots) {
            e.set(p, t.euclidean(&sv));
        }
        e
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_symbols;

    fn v(s: &str) -> F4Vec {
        F4Vec::from_slice(&parse_symbols(s).unwrap())
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![v("1wW00"), v("01Ww1"), v("W0w11")];
        let ns = nullspace(&rows, 5);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert!(r.euclidean(x).is_zero());
            }
        }
    }

    #[test]
    fn right_inverse_hits_syndrome() {
        let rows = vec![v("111w0W"), v("0w1W11"), v("W0011w")];
        let ri = RightInverse::new(&rows, 6).unwrap();
        for s in [[F4::ONE, F4::ZERO, F4::OMEGA], [F4::OMEGA_BAR, F4::OMEGA, F4::ONE]] {
            let e = ri.apply(&s);
            let got: Vec<F4> = rows.iter().map(|r| r.hermitian(&e)).collect();
            assert_eq!(got, s.to_vec());
        }
    }
}
