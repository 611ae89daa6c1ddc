#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use qconv::blockcode;
use qconv::convcode::{self, canonicalize_class, ConvCode};
use qconv::decode;
use qconv::distance;
use qconv::polyring::{apply_symmetry, LaurentTuple, Poly, Symmetry};
use qconv::search;
use qconv::{Field, F4};

pub const CASES: u32 = 1000;

pub fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::F2), Just(Field::F4)]
}

fn elem(f: Field) -> BoxedStrategy<F4> {
    proptest::sample::select(f.elements().to_vec()).boxed()
}

fn nonzero(f: Field) -> BoxedStrategy<F4> {
    proptest::sample::select(f.nonzero().to_vec()).boxed()
}

pub fn poly(f: Field, max_deg: usize) -> BoxedStrategy<Poly> {
    proptest::collection::vec(elem(f), 1..=max_deg + 1)
        .prop_filter_map("nonzero", move |c| {
            let p = Poly::from_coeffs(f, &c).ok()?;
            (!p.is_zero()).then_some(p)
        })
        .boxed()
}

/// Random tuple with nonzero components.
pub fn tuple(f: Field, n: usize, max_deg: usize) -> BoxedStrategy<LaurentTuple> {
    proptest::collection::vec(poly(f, max_deg), n).prop_map(move |c| LaurentTuple::new(f, c).unwrap()).boxed()
}

/// Self-orthogonal noncatastrophic generators from small autocorrelation tables.
pub fn self_orthogonal_pool() -> Vec<LaurentTuple> {
    let mut out = Vec::new();
    for (f, deg, ns) in [(Field::F2, 3, 3..=6), (Field::F4, 2, 3..=4)] {
        let t = search::autocorr_table(f, deg);
        for n in ns {
            for s in search::zero_sum_subsets(&t, n) {
                out.push(LaurentTuple::new(f, s).unwrap());
            }
        }
    }
    out
}

pub fn self_orthogonal() -> BoxedStrategy<LaurentTuple> {
    proptest::sample::select(self_orthogonal_pool()).boxed()
}

pub fn symmetry(f: Field, n: usize) -> BoxedStrategy<Symmetry> {
    prop_oneof![
        (0..n, nonzero(f), -2i32..=2).prop_map(|(component, alpha, shift)| Symmetry::Scale { component, alpha, shift }),
        Just(Symmetry::Conjugate),
        Just(Symmetry::TimeReverse),
        nonzero(f).prop_map(Symmetry::Modulate),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(Symmetry::Permute),
    ]
    .boxed()
}

pub fn tuple_with_symmetries() -> BoxedStrategy<(LaurentTuple, Vec<Symmetry>)> {
    let random = (field(), 2usize..=4)
        .prop_flat_map(|(f, n)| (tuple(f, n, 3), proptest::collection::vec(symmetry(f, n), 1..=4)));
    let so = self_orthogonal().prop_flat_map(|g| {
        let (f, n) = (g.field(), g.n());
        (Just(g), proptest::collection::vec(symmetry(f, n), 1..=4))
    });
    prop_oneof![random, so].boxed()
}

pub fn apply_all(g: &LaurentTuple, syms: &[Symmetry]) -> LaurentTuple {
    syms.iter().fold(g.clone(), |t, s| apply_symmetry(&t, s).unwrap())
}

fn dist(c: &ConvCode) -> (u32, u64) {
    let r = distance::analyze(c).unwrap();
    (r.d_perp, r.n_d)
}

/// Trellis size cap for distance comparisons.
fn small(c: &ConvCode) -> bool {
    c.nu() <= if c.field() == Field::F4 { 5 } else { 8 }
}

/// Symmetries preserve self-orthogonality and the distance profile (d⊥, N) of
/// the orthogonal code.
pub fn symmetry_invariance(g: &LaurentTuple, syms: &[Symmetry]) -> Result<(), TestCaseError> {
    let h = apply_all(g, syms);
    prop_assert_eq!(convcode::is_self_orthogonal(g), convcode::is_self_orthogonal(&h));
    prop_assert_eq!(convcode::is_catastrophic(g).unwrap(), convcode::is_catastrophic(&h).unwrap());
    if let (Ok(a), Ok(b)) = (ConvCode::new(g.clone()), ConvCode::new(h)) {
        if small(&a) && small(&b) {
            prop_assert_eq!(dist(&a), dist(&b));
        }
    }
    Ok(())
}

/// canonicalize_class is constant on orbits.
pub fn orbit_constancy(g: &LaurentTuple, syms: &[Symmetry]) -> Result<(), TestCaseError> {
    let h = apply_all(g, syms);
    prop_assert_eq!(canonicalize_class(g), canonicalize_class(&h));
    Ok(())
}

/// The tail-biting orthogonal code lies in the dual of the tail-biting code,
/// with equality when both have full rank.
pub fn duality_commutes(g: &LaurentTuple, extra: usize) -> Result<(), TestCaseError> {
    let code = ConvCode::new(g.clone()).unwrap();
    let l = code.nu() + 1 + extra;
    let b = blockcode::tail_bite_code(&code, l).unwrap();
    let bp = blockcode::tail_bite_dual(&code, l).unwrap();
    let dual = b.dual_default();
    for r in bp.generators() {
        prop_assert!(dual.contains(r));
    }
    if b.dim() == l && bp.dim() == (code.n() - 1) * l {
        prop_assert!(dual.same_code(&bp));
    }
    Ok(())
}

/// Tail-biting a self-orthogonal generator gives a self-orthogonal block code.
pub fn tb_inherits_self_orthogonality(g: &LaurentTuple, syms: &[Symmetry], extra: usize) -> Result<(), TestCaseError> {
    let h = apply_all(g, syms);
    let code = ConvCode::new(h).unwrap();
    prop_assert!(code.is_self_orthogonal());
    let l = code.nu() + 1 + extra;
    prop_assert!(blockcode::tail_bite_code(&code, l).unwrap().is_self_orthogonal());
    Ok(())
}

/// Syndromes are additive (and F4-linear for F4 codes) in the error.
pub fn syndrome_additivity(g: &LaurentTuple, e1: &[F4], e2: &[F4], a: F4) -> Result<(), TestCaseError> {
    let code = ConvCode::new(g.clone()).unwrap();
    let sum: Vec<F4> = e1.iter().zip(e2).map(|(&x, &y)| x + y).collect();
    let add = |x: &[F4], y: &[F4]| x.iter().zip(y).map(|(&p, &q)| p + q).collect::<Vec<_>>();
    let (s1, s2) = (decode::window_syndrome(&code, e1), decode::window_syndrome(&code, e2));
    prop_assert_eq!(decode::window_syndrome(&code, &sum), add(&s1, &s2));
    let l = e1.len() / code.n();
    let (c1, c2) = (decode::circular_syndrome(&code, e1, l), decode::circular_syndrome(&code, e2, l));
    prop_assert_eq!(decode::circular_syndrome(&code, &sum, l), add(&c1, &c2));
    let scaled: Vec<F4> = e1.iter().map(|&x| a * x).collect();
    let want: Vec<F4> = s1.iter().map(|&x| a * x).collect();
    prop_assert_eq!(decode::window_syndrome(&code, &scaled), want);
    Ok(())
}

pub fn noncatastrophic_tuple() -> BoxedStrategy<LaurentTuple> {
    (field(), 2usize..=4)
        .prop_flat_map(|(f, n)| tuple(f, n, 3))
        .prop_filter("noncatastrophic", |g| !convcode::is_catastrophic(g).unwrap())
        .boxed()
}

pub fn additivity_case() -> BoxedStrategy<(LaurentTuple, Vec<F4>, Vec<F4>, F4)> {
    prop_oneof![noncatastrophic_tuple(), self_orthogonal()]
        .prop_flat_map(|g| {
            let n = g.n();
            let nu = g.degree().unwrap() as usize;
            (Just(g), nu + 1..=nu + 6).prop_flat_map(move |(g, w)| {
                let e = proptest::collection::vec(elem(Field::F4), n * w);
                (Just(g), e.clone(), e, elem(Field::F4))
            })
        })
        .boxed()
}
