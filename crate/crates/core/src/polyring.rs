//! Finite Laurent polynomials and polynomial n-tuples over F2 / F4.
//!
//! A [`Poly`] is stored as a valuation plus two 128-bit coefficient planes, so a
//! polynomial may span at most [`MAX_SPAN`] consecutive degrees.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{scale_planes, Field, F4};

pub const MAX_SPAN: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    /// Degree of bit 0. Meaningless for the zero polynomial (kept at 0).
    val: i32,
    x: u128,
    z: u128,
}

#[inline]
fn shl2(x: u128, z: u128, k: u32) -> (u128, u128) {
    if k >= 128 {
        (0, 0)
    } else {
        (x << k, z << k)
    }
}

#[inline]
fn scale128(c: F4, x: u128, z: u128) -> (u128, u128) {
    let (lx, lz) = scale_planes(c, x as u64, z as u64);
    let (hx, hz) = scale_planes(c, (x >> 64) as u64, (z >> 64) as u64);
    ((lx as u128) | ((hx as u128) << 64), (lz as u128) | ((hz as u128) << 64))
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, val: 0, x: 0, z: 0 }
    }

    pub fn one(field: Field) -> Poly {
        Poly::monomial(field, F4::ONE, 0)
    }

    pub fn monomial(field: Field, c: F4, k: i32) -> Poly {
        let field = widen(field, c);
        Poly { field, val: k, x: c.l1() as u128, z: c.l2() as u128 }.normalized()
    }

    /// Builds Σ coeffs[i] D^(offset+i).
    pub fn from_coeffs_at(field: Field, offset: i32, coeffs: &[F4]) -> Result<Poly> {
        let first = coeffs.iter().position(|c| !c.is_zero());
        let Some(first) = first else { return Ok(Poly::zero(field)) };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        if last - first + 1 > MAX_SPAN {
            return Err(Error::SpanOverflow { max: MAX_SPAN });
        }
        let mut field = field;
        let (mut x, mut z) = (0u128, 0u128);
        for (i, &c) in coeffs[first..=last].iter().enumerate() {
            field = widen(field, c);
            x |= (c.l1() as u128) << i;
            z |= (c.l2() as u128) << i;
        }
        Ok(Poly { field, val: offset + first as i32, x, z })
    }

    pub fn from_coeffs(field: Field, coeffs: &[F4]) -> Result<Poly> {
        Poly::from_coeffs_at(field, 0, coeffs)
    }

    /// Parses an ascending-power coefficient string such as `1101` or `1wW`.
    pub fn parse(field: Field, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::with_capacity(s.len());
        for (i, c) in s.trim().chars().enumerate() {
            let a = F4::from_symbol(c).ok_or_else(|| Error::Parse {
                line: 1,
                col: i + 1,
                msg: format!("bad coefficient '{c}' in \"{s}\""),
            })?;
            if !field.contains(a) {
                return Err(Error::Parse {
                    line: 1,
                    col: i + 1,
                    msg: format!("coefficient '{c}' is not in {field}"),
                });
            }
            coeffs.push(a);
        }
        if coeffs.is_empty() {
            return Err(Error::Parse { line: 1, col: 1, msg: "empty coefficient string".into() });
        }
        Poly::from_coeffs(field, &coeffs)
    }

    fn normalized(mut self) -> Poly {
        let m = self.x | self.z;
        if m == 0 {
            self.val = 0;
            self.x = 0;
            self.z = 0;
            return self;
        }
        let t = m.trailing_zeros();
        self.x >>= t;
        self.z >>= t;
        self.val += t as i32;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Reinterprets the polynomial over a (possibly larger) field.
    pub fn with_field(mut self, field: Field) -> Result<Poly> {
        if field == Field::F2 && !self.is_binary() {
            return Err(Error::FieldMismatch);
        }
        self.field = field;
        Ok(self)
    }

    pub fn is_binary(&self) -> bool {
        self.x == self.z
    }

    pub fn is_zero(&self) -> bool {
        (self.x | self.z) == 0
    }

    fn mask(&self) -> u128 {
        self.x | self.z
    }

    /// Number of coefficients from the lowest to the highest nonzero degree.
    pub fn span(&self) -> usize {
        let m = self.mask();
        if m == 0 {
            0
        } else {
            128 - m.leading_zeros() as usize
        }
    }

    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val + self.span() as i32 - 1)
        }
    }

    pub fn coeff(&self, k: i32) -> F4 {
        let i = k as i64 - self.val as i64;
        if self.is_zero() || !(0..128).contains(&i) {
            return F4::ZERO;
        }
        F4::from_bits(((self.x >> i) & 1) as u8, ((self.z >> i) & 1) as u8)
    }

    pub fn leading_coeff(&self) -> F4 {
        self.degree().map(|d| self.coeff(d)).unwrap_or(F4::ZERO)
    }

    pub fn trailing_coeff(&self) -> F4 {
        self.valuation().map(|v| self.coeff(v)).unwrap_or(F4::ZERO)
    }

    pub fn weight(&self) -> usize {
        self.mask().count_ones() as usize
    }

    pub fn is_monomial(&self) -> bool {
        self.weight() == 1
    }

    /// Nonzero terms as (degree, coefficient), ascending.
    pub fn terms(&self) -> Vec<(i32, F4)> {
        let mut out = Vec::with_capacity(self.weight());
        let mut m = self.mask();
        while m != 0 {
            let i = m.trailing_zeros();
            out.push((
                self.val + i as i32,
                F4::from_bits(((self.x >> i) & 1) as u8, ((self.z >> i) & 1) as u8),
            ));
            m &= m - 1;
        }
        out
    }

    /// Coefficient planes relative to the valuation.
    pub fn planes(&self) -> (i32, u128, u128) {
        (self.val, self.x, self.z)
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly> {
        let field = self.field.max(o.field);
        if self.is_zero() {
            return Ok(Poly { field, ..*o });
        }
        if o.is_zero() {
            return Ok(Poly { field, ..*self });
        }
        let lo = self.val.min(o.val);
        let hi = self.degree().unwrap().max(o.degree().unwrap());
        if (hi - lo + 1) as usize > MAX_SPAN {
            return Err(Error::SpanOverflow { max: MAX_SPAN });
        }
        let (ax, az) = shl2(self.x, self.z, (self.val - lo) as u32);
        let (bx, bz) = shl2(o.x, o.z, (o.val - lo) as u32);
        Ok(Poly { field, val: lo, x: ax ^ bx, z: az ^ bz }.normalized())
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly> {
        let field = self.field.max(o.field);
        if self.is_zero() || o.is_zero() {
            return Ok(Poly::zero(field));
        }
        if self.span() + o.span() - 1 > MAX_SPAN {
            return Err(Error::SpanOverflow { max: MAX_SPAN });
        }
        let (mut x, mut z) = (0u128, 0u128);
        let mut m = o.mask();
        while m != 0 {
            let i = m.trailing_zeros();
            let c = F4::from_bits(((o.x >> i) & 1) as u8, ((o.z >> i) & 1) as u8);
            let (sx, sz) = scale128(c, self.x, self.z);
            x ^= sx << i;
            z ^= sz << i;
            m &= m - 1;
        }
        Ok(Poly { field, val: self.val + o.val, x, z }.normalized())
    }

    pub fn scale(&self, c: F4) -> Poly {
        let (x, z) = scale128(c, self.x, self.z);
        Poly { field: widen(self.field, c), val: self.val, x, z }.normalized()
    }

    /// Multiplication by D^k.
    pub fn shift(&self, k: i32) -> Poly {
        if self.is_zero() {
            return *self;
        }
        Poly { val: self.val + k, ..*self }
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Poly {
        Poly { x: self.z, z: self.x, ..*self }
    }

    /// Substitution D -> D^-1.
    pub fn reverse(&self) -> Poly {
        if self.is_zero() {
            return *self;
        }
        let s = self.span() as u32;
        let deg = self.degree().unwrap();
        Poly {
            field: self.field,
            val: -deg,
            x: self.x.reverse_bits() >> (128 - s),
            z: self.z.reverse_bits() >> (128 - s),
        }
    }

    /// Substitution D -> αD.
    pub fn modulate(&self, alpha: F4) -> Result<Poly> {
        if alpha.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut out = Poly::zero(widen(self.field, alpha));
        for (k, c) in self.terms() {
            out = out.checked_add(&Poly::monomial(out.field, c * alpha.pow(k as i64), k))?;
        }
        Ok(out)
    }

    /// Keeps only the terms of degree ≥ 0.
    pub fn nonneg_part(&self) -> Poly {
        if self.is_zero() || self.val >= 0 {
            return *self;
        }
        let cut = (-self.val) as u32;
        let (x, z) = if cut >= 128 { (0, 0) } else { (self.x >> cut, self.z >> cut) };
        Poly { field: self.field, val: 0, x, z }.normalized()
    }

    /// Divides out the lowest power of D.
    pub fn strip_valuation(&self) -> Poly {
        if self.is_zero() {
            return *self;
        }
        Poly { val: 0, ..*self }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return *self;
        }
        self.scale(self.leading_coeff().inv().unwrap())
    }

    /// Euclidean division for polynomials with nonnegative degrees.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.valuation().unwrap_or(0) < 0 || d.val < 0 {
            return Err(Error::Invalid("division requires polynomials".into()));
        }
        let field = self.field.max(d.field);
        let dd = d.degree().unwrap();
        let inv = d.leading_coeff().inv()?;
        let mut q = Poly::zero(field);
        let mut r = *self;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff() * inv;
            let t = Poly::monomial(field, c, rd - dd);
            q = q.checked_add(&t)?;
            r = r.checked_add(&d.checked_mul(&t)?)?;
        }
        Ok((q, Poly { field, ..r }))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact division".into()));
        }
        Ok(q)
    }

    pub fn to_coeff_string(&self) -> String {
        let Some(deg) = self.degree() else { return "0".into() };
        let lo = self.val.min(0);
        (lo..=deg).map(|k| self.coeff(k).symbol()).collect()
    }

    /// Coefficient string from degree 0 up to `len - 1`.
    pub fn to_coeff_string_len(&self, len: usize) -> String {
        (0..len as i32).map(|k| self.coeff(k).symbol()).collect()
    }

    /// `1 + D + wD^3` style.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms() {
            let cs = if c == F4::ONE { String::new() } else { c.symbol().to_string() };
            let t = match k {
                0 => {
                    if c == F4::ONE {
                        "1".to_string()
                    } else {
                        cs
                    }
                }
                1 => format!("{cs}D"),
                _ => format!("{cs}D^{k}"),
            };
            parts.push(t);
        }
        parts.join(" + ")
    }

    /// Ascending-power comparison with symbol order 0 < 1 < w < W.
    pub fn cmp_coeff_string(&self, o: &Poly) -> Ordering {
        let lo = self.valuation().unwrap_or(0).min(o.valuation().unwrap_or(0)).min(0);
        let hs = self.degree().unwrap_or(-1);
        let ho = o.degree().unwrap_or(-1);
        let hi = hs.max(ho);
        for k in lo..=hi {
            if k > hs || k > ho {
                return hs.cmp(&ho);
            }
            let c = self.coeff(k).order_rank().cmp(&o.coeff(k).order_rank());
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

fn widen(f: Field, c: F4) -> Field {
    if f == Field::F2 && !Field::F2.contains(c) {
        Field::F4
    } else {
        f
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Poly) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Poly {
    fn cmp(&self, o: &Poly) -> Ordering {
        self.cmp_coeff_string(o).then(self.field.cmp(&o.field))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valuation().unwrap_or(0) < 0 {
            write!(f, "({})", self.pretty())
        } else {
            write!(f, "{}", self.to_coeff_string())
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        self.checked_add(&o).expect("polynomial span overflow")
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        self.checked_mul(&o).expect("polynomial span overflow")
    }
}

/// Monic gcd of two polynomials.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (mut a, mut b) = (*a, *b);
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Degree-≥0 part of g†(D⁻¹) g(D).
pub fn autocorrelation_nonneg(g: &Poly) -> Poly {
    (g.conj().reverse() * *g).nonneg_part()
}

/// An n-tuple of Laurent polynomials over one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentTuple {
    field: Field,
    comps: Vec<Poly>,
}

/// One of the weight- and orthogonality-preserving transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Multiply component `component` by αD^shift.
    Scale { component: usize, alpha: F4, shift: i32 },
    Conjugate,
    /// D -> D⁻¹ on every component.
    TimeReverse,
    /// D -> αD.
    Modulate(F4),
    /// New component j is old component perm[j].
    Permute(Vec<usize>),
}

impl LaurentTuple {
    pub fn new(field: Field, comps: Vec<Poly>) -> Result<LaurentTuple> {
        if comps.is_empty() {
            return Err(Error::Shape("tuple must have at least one component".into()));
        }
        let mut out = Vec::with_capacity(comps.len());
        for p in comps {
            out.push(p.with_field(field)?);
        }
        Ok(LaurentTuple { field, comps: out })
    }

    pub fn zero(field: Field, n: usize) -> LaurentTuple {
        LaurentTuple { field, comps: vec![Poly::zero(field); n] }
    }

    /// Parses components given as coefficient strings, e.g. `["11", "1w", "1W"]`.
    pub fn parse<S: AsRef<str>>(field: Field, comps: &[S]) -> Result<LaurentTuple> {
        let ps = comps.iter().map(|s| Poly::parse(field, s.as_ref())).collect::<Result<Vec<_>>>()?;
        LaurentTuple::new(field, ps)
    }

    /// Parses whitespace- or comma-separated coefficient strings.
    pub fn parse_str(field: Field, s: &str) -> Result<LaurentTuple> {
        let parts: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
        LaurentTuple::parse(field, &parts)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, j: usize) -> &Poly {
        &self.comps[j]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn weight(&self) -> usize {
        self.comps.iter().map(|p| p.weight()).sum()
    }

    pub fn valuation(&self) -> Option<i32> {
        self.comps.iter().filter_map(|p| p.valuation()).min()
    }

    /// Maximum component degree.
    pub fn degree(&self) -> Option<i32> {
        self.comps.iter().filter_map(|p| p.degree()).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// Whether every component has constant term 1.
    pub fn is_monic(&self) -> bool {
        self.comps.iter().all(|p| p.coeff(0) == F4::ONE && p.valuation() == Some(0))
    }

    pub fn is_binary(&self) -> bool {
        self.comps.iter().all(|p| p.is_binary())
    }

    /// The coefficient n-block at degree k.
    pub fn block(&self, k: i32) -> Vec<F4> {
        self.comps.iter().map(|p| p.coeff(k)).collect()
    }

    pub fn shift(&self, k: i32) -> LaurentTuple {
        LaurentTuple { field: self.field, comps: self.comps.iter().map(|p| p.shift(k)).collect() }
    }

    pub fn scale(&self, c: F4) -> LaurentTuple {
        let field = widen(self.field, c);
        LaurentTuple { field, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, u: &Poly) -> Result<LaurentTuple> {
        let field = self.field.max(u.field());
        let comps = self.comps.iter().map(|p| p.checked_mul(u)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentTuple { field, comps })
    }

    pub fn checked_add(&self, o: &LaurentTuple) -> Result<LaurentTuple> {
        if self.n() != o.n() {
            return Err(Error::LengthMismatch { left: self.n(), right: o.n() });
        }
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.checked_add(b)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentTuple { field: self.field.max(o.field), comps })
    }

    pub fn conj(&self) -> LaurentTuple {
        LaurentTuple { field: self.field, comps: self.comps.iter().map(|p| p.conj()).collect() }
    }

    pub fn reverse(&self) -> LaurentTuple {
        LaurentTuple { field: self.field, comps: self.comps.iter().map(|p| p.reverse()).collect() }
    }

    pub fn modulate(&self, alpha: F4) -> Result<LaurentTuple> {
        let comps = self.comps.iter().map(|p| p.modulate(alpha)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentTuple { field: widen(self.field, alpha), comps })
    }

    pub fn permute(&self, perm: &[usize]) -> Result<LaurentTuple> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of {n} components")));
        }
        Ok(LaurentTuple { field: self.field, comps: perm.iter().map(|&p| self.comps[p]).collect() })
    }

    pub fn with_comps(&self, comps: Vec<Poly>) -> LaurentTuple {
        LaurentTuple { field: self.field, comps }
    }

    /// Coefficient strings of the components.
    pub fn to_strings(&self) -> Vec<String> {
        self.comps.iter().map(|p| p.to_coeff_string()).collect()
    }

    /// Coefficient strings padded to a common length (degree + 1).
    pub fn to_strings_padded(&self) -> Vec<String> {
        let len = self.degree().map_or(1, |d| d as usize + 1);
        self.comps.iter().map(|p| p.to_coeff_string_len(len)).collect()
    }

    /// Interleaved block sequence between degrees lo..=hi.
    pub fn blocks(&self, lo: i32, hi: i32) -> Vec<F4> {
        let mut v = Vec::new();
        for k in lo..=hi {
            v.extend(self.block(k));
        }
        v
    }
}

impl fmt::Debug for LaurentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p:?}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LaurentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(" "))
    }
}

/// R_ab(D) = Σ_j a_j†(D⁻¹) b_j(D). Its coefficient at D^ℓ is ⟨D^ℓ a, b⟩.
pub fn cross_correlation(a: &LaurentTuple, b: &LaurentTuple) -> Result<Poly> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch { left: a.n(), right: b.n() });
    }
    let mut r = Poly::zero(a.field.max(b.field));
    for (x, y) in a.comps.iter().zip(&b.comps) {
        r = r.checked_add(&x.conj().reverse().checked_mul(y)?)?;
    }
    Ok(r)
}

pub fn apply_symmetry(g: &LaurentTuple, sym: &Symmetry) -> Result<LaurentTuple> {
    match sym {
        Symmetry::Scale { component, alpha, shift } => {
            if alpha.is_zero() {
                return Err(Error::ZeroScalar);
            }
            if *component >= g.n() {
                return Err(Error::Invalid(format!("component {component} out of range")));
            }
            let mut comps = g.comps.clone();
            comps[*component] = comps[*component].scale(*alpha).shift(*shift);
            Ok(LaurentTuple { field: widen(g.field, *alpha), comps })
        }
        Symmetry::Conjugate => Ok(g.conj()),
        Symmetry::TimeReverse => Ok(g.reverse()),
        Symmetry::Modulate(a) => g.modulate(*a),
        Symmetry::Permute(p) => g.permute(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(s: &str) -> Poly {
        Poly::parse(Field::F2, s).unwrap()
    }
    fn p4(s: &str) -> Poly {
        Poly::parse(Field::F4, s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p2("101"), &p2("11")).unwrap(), p2("11"));
        assert_eq!(poly_gcd(&p2("111"), &p2("101")).unwrap(), p2("1"));
        assert_eq!(poly_gcd(&p2("1101"), &Poly::zero(Field::F2)).unwrap(), p2("1101"));
    }

    #[test]
    fn autocorrelation_rows() {
        assert_eq!(autocorrelation_nonneg(&p2("11")), p2("01"));
        assert_eq!(autocorrelation_nonneg(&p2("111")), p2("101"));
        assert_eq!(autocorrelation_nonneg(&p2("1101")), p2("1111"));
        assert_eq!(autocorrelation_nonneg(&p4("1w1")), p4("111"));
        assert_eq!(autocorrelation_nonneg(&p4("1Ww")), p4("10w"));
        assert_eq!(autocorrelation_nonneg(&p4("11w")), p4("1Ww"));
    }

    #[test]
    fn example_generators_self_orthogonal() {
        let g = LaurentTuple::parse(Field::F4, &["11", "1w", "1W"]).unwrap();
        assert!(cross_correlation(&g, &g).unwrap().is_zero());
        let g = LaurentTuple::parse(Field::F2, &["111", "101", "1"]).unwrap();
        assert!(cross_correlation(&g, &g).unwrap().is_zero());
        let one = LaurentTuple::parse(Field::F2, &["1"]).unwrap();
        assert_eq!(cross_correlation(&one, &one).unwrap(), Poly::one(Field::F2));
    }

    #[test]
    fn modulation_by_omega() {
        let g = LaurentTuple::parse(Field::F4, &["11", "1w", "1W"]).unwrap();
        let m = g.modulate(F4::OMEGA).unwrap();
        assert_eq!(m, LaurentTuple::parse(Field::F4, &["1w", "1W", "11"]).unwrap());
    }

    #[test]
    fn reverse_and_shift() {
        let p = p4("1w0W");
        let r = p.reverse();
        assert_eq!(r.degree(), Some(0));
        assert_eq!(r.valuation(), Some(-3));
        assert_eq!(r.coeff(-1), F4::OMEGA);
        assert_eq!(r.reverse(), p);
        assert_eq!(p.shift(2).coeff(5), F4::OMEGA_BAR);
    }

    #[test]
    fn division() {
        let a = p2("1101") * p2("11");
        assert_eq!(a.div_exact(&p2("11")).unwrap(), p2("1101"));
        let (q, r) = p4("1w1W").div_rem(&p4("1w")).unwrap();
        assert_eq!(q * p4("1w") + r, p4("1w1W"));
    }
}
