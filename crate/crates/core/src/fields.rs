//! GF(2) and GF(4) scalars, Pauli labels, and the inner products that encode commutation.
//!
//! An element of GF(4) is stored as two bits `(l1, l2)`, where `l1` is the bit-flip
//! bit and `l2` the phase-flip bit of the Pauli label. The value is `a = l1*ω + l2*ω̄`,
//! so addition is XOR and the label map ℓ is the identity on the stored bits.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const OMEGA_BAR: F4 = F4(1);
    pub const OMEGA: F4 = F4(2);
    pub const ONE: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::OMEGA, F4::OMEGA_BAR];
    pub const NONZERO: [F4; 3] = [F4::ONE, F4::OMEGA, F4::OMEGA_BAR];

    #[inline]
    pub const fn from_bits(l1: u8, l2: u8) -> F4 {
        F4(((l1 & 1) << 1) | (l2 & 1))
    }

    /// Raw two-bit value `(l1 << 1) | l2`.
    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn from_raw(v: u8) -> F4 {
        F4(v & 3)
    }

    /// Bit-flip bit ℓ1.
    #[inline]
    pub const fn l1(self) -> u8 {
        self.0 >> 1
    }

    /// Phase-flip bit ℓ2.
    #[inline]
    pub const fn l2(self) -> u8 {
        self.0 & 1
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn conj(self) -> F4 {
        F4(((self.0 & 1) << 1) | (self.0 >> 1))
    }

    #[inline]
    pub const fn trace(self) -> u8 {
        (self.0 >> 1) ^ (self.0 & 1)
    }

    pub fn inv(self) -> Result<F4> {
        match self {
            F4::ZERO => Err(Error::ZeroScalar),
            F4::ONE => Ok(F4::ONE),
            F4::OMEGA => Ok(F4::OMEGA_BAR),
            _ => Ok(F4::OMEGA),
        }
    }

    #[inline]
    pub const fn mul_const(self, b: F4) -> F4 {
        let (a1, a2) = (self.0 >> 1, self.0 & 1);
        let (b1, b2) = (b.0 >> 1, b.0 & 1);
        let c1 = (a2 & b2) ^ (a1 & b2) ^ (a2 & b1);
        let c2 = (a1 & b1) ^ (a1 & b2) ^ (a2 & b1);
        F4((c1 << 1) | c2)
    }

    pub fn pow(self, k: i64) -> F4 {
        if self.is_zero() {
            return if k == 0 { F4::ONE } else { F4::ZERO };
        }
        let e = k.rem_euclid(3);
        let mut r = F4::ONE;
        for _ in 0..e {
            r *= self;
        }
        r
    }

    /// Text symbol in the `0 1 w W` alphabet.
    pub fn symbol(self) -> char {
        match self {
            F4::ZERO => '0',
            F4::ONE => '1',
            F4::OMEGA => 'w',
            _ => 'W',
        }
    }

    pub fn from_symbol(c: char) -> Option<F4> {
        match c {
            '0' => Some(F4::ZERO),
            '1' => Some(F4::ONE),
            'w' => Some(F4::OMEGA),
            'W' => Some(F4::OMEGA_BAR),
            _ => None,
        }
    }

    /// Rank used for coefficient-string ordering: 0 < 1 < w < W.
    pub fn order_rank(self) -> u8 {
        match self {
            F4::ZERO => 0,
            F4::ONE => 1,
            F4::OMEGA => 2,
            _ => 3,
        }
    }

    /// Pretty symbol using ω / ω̄.
    pub fn pretty(self) -> &'static str {
        match self {
            F4::ZERO => "0",
            F4::ONE => "1",
            F4::OMEGA => "ω",
            _ => "ω̄",
        }
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Add for F4 {
    type Output = F4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, b: F4) -> F4 {
        F4(self.0 ^ b.0)
    }
}

impl AddAssign for F4 {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, b: F4) {
        self.0 ^= b.0;
    }
}

impl Mul for F4 {
    type Output = F4;
    #[inline]
    fn mul(self, b: F4) -> F4 {
        self.mul_const(b)
    }
}

impl MulAssign for F4 {
    #[inline]
    fn mul_assign(&mut self, b: F4) {
        *self = *self * b;
    }
}

/// The scalar field of a label code. F2 is embedded in F4 as {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    F2,
    F4,
}

impl Field {
    pub fn size(self) -> usize {
        match self {
            Field::F2 => 2,
            Field::F4 => 4,
        }
    }

    /// Bits per symbol, log2 |F|.
    pub fn bits(self) -> u32 {
        match self {
            Field::F2 => 1,
            Field::F4 => 2,
        }
    }

    pub fn elements(self) -> &'static [F4] {
        match self {
            Field::F2 => &[F4::ZERO, F4::ONE],
            Field::F4 => &F4::ALL,
        }
    }

    pub fn nonzero(self) -> &'static [F4] {
        match self {
            Field::F2 => &[F4::ONE],
            Field::F4 => &F4::NONZERO,
        }
    }

    pub fn contains(self, a: F4) -> bool {
        match self {
            Field::F2 => a == F4::ZERO || a == F4::ONE,
            Field::F4 => true,
        }
    }

    /// Symbol index used for trellis digits: position of `a` in `elements()`.
    pub fn index_of(self, a: F4) -> usize {
        match self {
            Field::F2 => (a == F4::ONE) as usize,
            Field::F4 => a.order_rank() as usize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::F2 => "f2",
            Field::F4 => "f4",
        }
    }

    pub fn parse(s: &str) -> Option<Field> {
        match s.to_ascii_lowercase().as_str() {
            "f2" | "gf2" | "binary" => Some(Field::F2),
            "f4" | "gf4" | "quaternary" => Some(Field::F4),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// The label map L: I, X, Y, Z -> 0, ω, 1, ω̄.
    pub fn label(self) -> F4 {
        match self {
            Pauli::I => F4::ZERO,
            Pauli::X => F4::OMEGA,
            Pauli::Y => F4::ONE,
            Pauli::Z => F4::OMEGA_BAR,
        }
    }

    /// The two-bit label ℓ = (bit flip, phase flip).
    pub fn bits(self) -> (u8, u8) {
        let a = self.label();
        (a.l1(), a.l2())
    }

    pub fn from_label(a: F4) -> Pauli {
        match a {
            F4::ZERO => Pauli::I,
            F4::OMEGA => Pauli::X,
            F4::ONE => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

pub fn trace(a: F4) -> u8 {
    a.trace()
}

pub fn conjugate(a: F4) -> F4 {
    a.conj()
}

/// Σ aᵢ† bᵢ.
pub fn hermitian_inner(a: &[F4], b: &[F4]) -> Result<F4> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).fold(F4::ZERO, |s, (&x, &y)| s + x.conj() * y))
}

/// Σ aᵢ bᵢ without conjugation.
pub fn euclidean_inner(a: &[F4], b: &[F4]) -> Result<F4> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).fold(F4::ZERO, |s, (&x, &y)| s + x * y))
}

pub fn trace_inner(a: &[F4], b: &[F4]) -> Result<u8> {
    Ok(hermitian_inner(a, b)?.trace())
}

/// (Tr ωa, Tr ω̄a), which equals ℓ(a).
pub fn f4_syndrome_bits(a: F4) -> (u8, u8) {
    ((F4::OMEGA * a).trace(), (F4::OMEGA_BAR * a).trace())
}

pub fn parse_symbols(s: &str) -> Result<Vec<F4>> {
    let mut out = Vec::with_capacity(s.len());
    for (col, c) in s.chars().enumerate() {
        if c == '|' || c.is_whitespace() {
            continue;
        }
        match F4::from_symbol(c) {
            Some(a) => out.push(a),
            None => {
                return Err(Error::Parse {
                    line: 1,
                    col: col + 1,
                    msg: format!("unexpected symbol '{c}', expected one of 0 1 w W"),
                })
            }
        }
    }
    Ok(out)
}

pub fn format_symbols(v: &[F4]) -> String {
    v.iter().map(|a| a.symbol()).collect()
}

/// Formats `v` as blocks of width `n` separated by `|`.
pub fn format_blocks(v: &[F4], n: usize) -> String {
    v.chunks(n.max(1)).map(format_symbols).collect::<Vec<_>>().join("|")
}

/// Bitsliced F4 vector: plane `x` holds ℓ1 bits, plane `z` holds ℓ2 bits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F4Vec {
    len: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl F4Vec {
    pub fn zeros(len: usize) -> F4Vec {
        let w = len.div_ceil(64);
        F4Vec { len, x: vec![0; w], z: vec![0; w] }
    }

    pub fn from_slice(v: &[F4]) -> F4Vec {
        let mut out = F4Vec::zeros(v.len());
        for (i, &a) in v.iter().enumerate() {
            out.set(i, a);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> F4 {
        let (w, b) = (i / 64, i % 64);
        F4::from_bits(((self.x[w] >> b) & 1) as u8, ((self.z[w] >> b) & 1) as u8)
    }

    #[inline]
    pub fn set(&mut self, i: usize, a: F4) {
        let (w, b) = (i / 64, i % 64);
        let m = 1u64 << b;
        self.x[w] = (self.x[w] & !m) | ((a.l1() as u64) << b);
        self.z[w] = (self.z[w] & !m) | ((a.l2() as u64) << b);
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, a: F4) {
        let (w, b) = (i / 64, i % 64);
        self.x[w] ^= (a.l1() as u64) << b;
        self.z[w] ^= (a.l2() as u64) << b;
    }

    pub fn to_vec(&self) -> Vec<F4> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn add_assign(&mut self, o: &F4Vec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.x.iter_mut().zip(&o.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&o.z) {
            *a ^= b;
        }
    }

    /// self += c * o
    pub fn add_scaled(&mut self, c: F4, o: &F4Vec) {
        debug_assert_eq!(self.len, o.len);
        if c.is_zero() {
            return;
        }
        for i in 0..self.x.len() {
            let (sx, sz) = scale_planes(c, o.x[i], o.z[i]);
            self.x[i] ^= sx;
            self.z[i] ^= sz;
        }
    }

    pub fn scaled(&self, c: F4) -> F4Vec {
        let mut out = F4Vec::zeros(self.len);
        out.add_scaled(c, self);
        out
    }

    pub fn conj(&self) -> F4Vec {
        F4Vec { len: self.len, x: self.z.clone(), z: self.x.clone() }
    }

    /// Hermitian inner product Σ conj(selfᵢ) oᵢ.
    pub fn hermitian(&self, o: &F4Vec) -> F4 {
        let (mut p1, mut p2) = (0u32, 0u32);
        for i in 0..self.x.len() {
            let (a1, a2, b1, b2) = (self.x[i], self.z[i], o.x[i], o.z[i]);
            p1 ^= ((a1 & b2) ^ (a2 & b2) ^ (a1 & b1)).count_ones() & 1;
            p2 ^= ((a2 & b1) ^ (a2 & b2) ^ (a1 & b1)).count_ones() & 1;
        }
        F4::from_bits(p1 as u8, p2 as u8)
    }

    /// Euclidean inner product Σ selfᵢ oᵢ.
    pub fn euclidean(&self, o: &F4Vec) -> F4 {
        self.conj().hermitian(o)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        for i in 0..self.x.len() {
            let w = self.x[i] | self.z[i];
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn planes(&self) -> (&[u64], &[u64]) {
        (&self.x, &self.z)
    }

    /// Cyclic rotation by `k` positions toward higher indices.
    pub fn rotate(&self, k: usize) -> F4Vec {
        let mut out = F4Vec::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        for i in 0..self.len {
            let a = self.get(i);
            if !a.is_zero() {
                out.set((i + k) % self.len, a);
            }
        }
        out
    }
}

/// Multiplies every symbol of a bitsliced word pair by `c`.
#[inline]
pub fn scale_planes(c: F4, x: u64, z: u64) -> (u64, u64) {
    match c {
        F4::ZERO => (0, 0),
        F4::ONE => (x, z),
        // ω·(a1 ω + a2 ω̄) = a1 ω̄ + a2·1 = (a2, a1 ^ a2)
        F4::OMEGA => (z, x ^ z),
        // ω̄·(a1 ω + a2 ω̄) = a1·1 + a2 ω = (a1 ^ a2, a1)
        _ => (x ^ z, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        assert_eq!(F4::OMEGA * F4::OMEGA, F4::OMEGA_BAR);
        assert_eq!(F4::OMEGA * F4::OMEGA_BAR, F4::ONE);
        assert_eq!(F4::OMEGA_BAR * F4::OMEGA_BAR, F4::OMEGA);
        assert_eq!(F4::ONE + F4::OMEGA + F4::OMEGA_BAR, F4::ZERO);
        for a in F4::ALL {
            assert_eq!(a + a, F4::ZERO);
            assert_eq!(a * F4::ONE, a);
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), F4::ONE);
            }
        }
    }

    #[test]
    fn scale_planes_matches_scalar() {
        for c in F4::ALL {
            for a in F4::ALL {
                let (x, z) = scale_planes(c, a.l1() as u64, a.l2() as u64);
                assert_eq!(F4::from_bits(x as u8, z as u8), c * a);
            }
        }
    }

    #[test]
    fn trace_and_conjugate() {
        assert_eq!(F4::ZERO.trace(), 0);
        assert_eq!(F4::ONE.trace(), 0);
        assert_eq!(F4::OMEGA.trace(), 1);
        assert_eq!(F4::OMEGA_BAR.trace(), 1);
        assert_eq!(F4::OMEGA.conj(), F4::OMEGA_BAR);
        assert_eq!(F4::ONE.conj(), F4::ONE);
    }

    #[test]
    fn bitsliced_inner_matches_scalar() {
        let a = parse_symbols("1wW0w1W0Ww").unwrap();
        let b = parse_symbols("W01wwW1100").unwrap();
        let va = F4Vec::from_slice(&a);
        let vb = F4Vec::from_slice(&b);
        assert_eq!(va.hermitian(&vb), hermitian_inner(&a, &b).unwrap());
        assert_eq!(va.euclidean(&vb), euclidean_inner(&a, &b).unwrap());
    }
}
