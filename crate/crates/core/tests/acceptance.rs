mod common;

use std::time::{Duration, Instant};

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use qconv::blockcode;
use qconv::convcode::ConvCode;
use qconv::decode::{self, CssStreamDecoder, Measure, StreamDecoder, ViterbiWindowDecoder};
use qconv::fields::F4Vec;
use qconv::sim::{self, SuiteConfig};
use qconv::tables::{self, TableBudget, TableId, TableReport};
use qconv::{Field, F4};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn timed_table(id: TableId) -> (TableReport, Duration) {
    let t = Instant::now();
    let r = tables::regenerate(id, &TableBudget::default()).expect("table regenerates");
    (r, t.elapsed())
}

fn mismatches(r: &TableReport) -> String {
    r.mismatches.iter().map(|m| format!("row {} {}: want {} got {}", m.row, m.column, m.expected, m.got)).collect::<Vec<_>>().join("; ")
}

fn ratio(s: &str) -> Option<Ratio<i64>> {
    let (a, b) = s.split_once('/')?;
    Some(Ratio::new(a.parse().ok()?, b.parse().ok()?))
}

/// Rows whose cells at the given columns equal the given values.
fn rows_with<'a>(r: &'a TableReport, want: &[(usize, &str)]) -> Vec<&'a Vec<String>> {
    r.rows.iter().filter(|row| want.iter().all(|&(c, v)| row.get(c).map(String::as_str) == Some(v))).collect()
}

fn autocorr(id: TableId) -> Outcome {
    let (r, dt) = timed_table(id);
    if !r.ok() {
        return fail(mismatches(&r));
    }
    if dt >= Duration::from_secs(1) {
        return fail(format!("took {}", secs(dt)));
    }
    pass(format!("{} rows, {}", r.rows.len(), secs(dt)))
}

fn criterion3() -> Outcome {
    let (ii, t2) = timed_table(TableId::II);
    let (iv, t4) = timed_table(TableId::IV);
    for r in [&ii, &iv] {
        if !r.ok() {
            return fail(mismatches(r));
        }
    }
    for (r, b, stab) in [(&ii, "(15,10,3)", "[15,5,3]"), (&iv, "(80,75,3)", "[80,70,3]"), (&iv, "(9,6,3)", "[9,3,3]")] {
        if rows_with(r, &[(4, b), (5, stab)]).is_empty() {
            return fail(format!("no row {b} -> {stab}"));
        }
    }
    let dt = t2 + t4;
    if dt >= Duration::from_secs(60) {
        return fail(format!("took {}", secs(dt)));
    }
    pass(format!("{} + {} rows, {}", ii.rows.len(), iv.rows.len(), secs(dt)))
}

fn best(id: TableId, spots: &[(&str, &str, &str, usize)]) -> Outcome {
    let (r, dt) = timed_table(id);
    if !r.ok() {
        return fail(mismatches(&r));
    }
    for &(nu, d, n, count) in spots {
        let got = rows_with(&r, &[(0, nu), (4, d), (5, n)]).len();
        let all = rows_with(&r, &[(0, nu)]).len();
        if got != count || all != count {
            return fail(format!("nu={nu}: {got} of {all} rows with d={d} N={n}, want {count}"));
        }
    }
    pass(format!("{} rows, {}", r.rows.len(), secs(dt)))
}

fn criterion6() -> Outcome {
    let (vii, t7) = timed_table(TableId::VII);
    let (viii, t8) = timed_table(TableId::VIII);
    for r in [&vii, &viii] {
        if !r.ok() {
            return fail(mismatches(r));
        }
    }
    let spots = [(&vii, "6", "6", Ratio::new(4, 15), "23", "(54,36,6)", "[54,18,6]"), (&viii, "1", "3", Ratio::new(1, 1), "3", "(9,6,3)", "[9,3,3]")];
    for (r, nu, d, alpha, bound, bp, stab) in spots {
        let hit = rows_with(r, &[(0, nu), (1, d), (3, bound), (6, bp), (7, stab)])
            .into_iter()
            .any(|row| ratio(&row[2]) == Some(alpha));
        if !hit {
            return fail(format!("no row nu={nu} alpha={alpha} bound {bound} {bp} {stab}"));
        }
    }
    let dt = t7 + t8;
    if dt > Duration::from_secs(600) {
        return fail(format!("took {}", secs(dt)));
    }
    let notes = viii.notes.iter().filter(|n| n.contains("differs")).count();
    pass(format!("{} + {} rows, {}, {} slope notes", vii.rows.len(), viii.rows.len(), secs(dt), notes))
}

fn f4_example() -> ConvCode {
    ConvCode::parse(Field::F4, &["11", "1w", "1W"]).unwrap()
}

fn css_example() -> ConvCode {
    ConvCode::parse(Field::F2, &["111", "101", "1"]).unwrap()
}

fn single(len: usize, pos: usize, a: F4) -> Vec<F4> {
    let mut e = vec![F4::ZERO; len];
    e[pos] = a;
    e
}

fn add(a: &[F4], b: &[F4]) -> Vec<F4> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn criterion7() -> Outcome {
    const W: usize = 6;
    let mut cases = 0;

    let c = f4_example();
    let d = StreamDecoder::new(&c).unwrap();
    if d.entries().len() != 9 {
        return fail(format!("F4 table has {} entries", d.entries().len()));
    }
    for pos in 0..c.n() * W {
        for &a in Field::F4.nonzero() {
            let e = single(c.n() * W, pos, a);
            let out = d.decode(&decode::window_syndrome(&c, &e), -(c.nu() as i64), W);
            if out.is_detected() || !decode::conv_residual_ok(&c, &add(&e, &out.error)) {
                return fail(format!("F4 stream: error {a} at {pos}"));
            }
            cases += 1;
        }
    }
    // a lone nonzero syndrome followed by a zero is not a single error
    for j in 0..W {
        for &a in Field::F4.nonzero() {
            let mut s = vec![F4::ZERO; W + c.nu()];
            s[j] = a;
            if !d.decode(&s, -(c.nu() as i64), W).is_detected() {
                return fail(format!("F4 stream: S={a} then 0 at {j} not detected"));
            }
        }
    }

    let c = css_example();
    let d = CssStreamDecoder::new(&c).unwrap();
    if d.view_decoder().entries().len() != 3 {
        return fail("CSS table is not 3 entries");
    }
    let len = c.n() * W;
    let zero = vec![F4::ZERO; len];
    for pos in 0..len {
        let bit = single(len, pos, F4::ONE);
        for e in [decode::join_views(&bit, &zero), decode::join_views(&zero, &bit)] {
            let out = d.decode(&decode::window_syndrome(&c, &e), -(c.nu() as i64), W);
            if out.is_detected() || !decode::conv_residual_ok(&c, &add(&e, &out.error)) {
                return fail(format!("CSS stream: error at {pos}"));
            }
            cases += 1;
        }
    }
    let sl = W + c.nu();
    for k in 2..sl {
        let mut sx = vec![F4::ZERO; sl];
        sx[k] = F4::ONE;
        sx[k - 1] = F4::ONE;
        for s in [decode::join_views(&sx, &vec![F4::ZERO; sl]), decode::join_views(&vec![F4::ZERO; sl], &sx)] {
            if !d.decode(&s, -(c.nu() as i64), W).is_detected() {
                return fail(format!("CSS stream: pattern 110 at {k} not detected"));
            }
        }
    }

    let mut circ = Vec::new();
    for (code, l, css) in [(f4_example(), 3, false), (css_example(), 5, true)] {
        let b = blockcode::tail_bite_code(&code, l).unwrap();
        let len = code.n() * l;
        let errs: Vec<Vec<F4>> = if css {
            let zero = vec![F4::ZERO; len];
            (0..len).flat_map(|p| {
                let bit = single(len, p, F4::ONE);
                [decode::join_views(&bit, &zero), decode::join_views(&zero, &bit)]
            })
            .collect()
        } else {
            (0..len).flat_map(|p| Field::F4.nonzero().iter().map(move |&a| single(len, p, a))).collect()
        };
        let sd = StreamDecoder::new(&code).unwrap();
        let cd = CssStreamDecoder::new(&code).ok();
        for e in &errs {
            let s = decode::circular_syndrome(&code, e, l);
            let out = match &cd {
                Some(cd) => cd.decode_circular(&s),
                None => sd.decode_circular(&s),
            };
            if out.is_detected() || !b.contains(&F4Vec::from_slice(&add(e, &out.error))) {
                return fail(format!("circular L={l}: {:?}", e));
            }
        }
        circ.push(errs.len());
    }
    if circ != [27, 30] {
        return fail(format!("circular case counts {circ:?}"));
    }
    pass(format!("{cases} window cases, circular 27 and 15+15"))
}

fn criterion8() -> Outcome {
    let t = Instant::now();
    let mut counts = Vec::new();
    for code in [f4_example(), css_example()] {
        let v = ViterbiWindowDecoder::new(&code, 4, Measure::Truncated).unwrap();
        let len = code.n() * 4;
        let leaders = decode::brute_force_leaders(code.field(), v.rows(), len);
        let want = code.field().size().pow(v.rows().len() as u32);
        if leaders.len() != want {
            return fail(format!("{} syndromes, expected {want}", leaders.len()));
        }
        for (s, &w) in &leaders {
            let out = v.decode(s);
            let got = out.error.iter().filter(|x| !x.is_zero()).count() as u32;
            if out.is_detected() || v.syndrome(&out.error) != *s || got != w {
                return fail(format!("syndrome {s:?}: Viterbi weight {got}, leader {w}"));
            }
        }
        counts.push(leaders.len());
    }
    let dt = t.elapsed();
    if dt >= Duration::from_secs(10) {
        return fail(format!("took {}", secs(dt)));
    }
    pass(format!("{counts:?} syndromes, {}", secs(dt)))
}

fn criterion9() -> Outcome {
    let cfg = SuiteConfig {
        p_grid: vec![0.002, 0.005],
        block_trials: 100_000_000,
        window_trials: 1_000_000,
        seed: 0x5eed,
        css_correction: false,
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for (i, codec) in sim::registry(sim::DEFAULT_WINDOW).into_iter().enumerate() {
        let t = Instant::now();
        let cmp = sim::compare_suite(std::slice::from_ref(&codec), &SuiteConfig { seed: cfg.seed + i as u64, ..cfg.clone() }).unwrap();
        let dt = t.elapsed();
        let c = codec.reference().unwrap();
        let kappa = if codec.is_css() { 7.0 / 9.0 } else { 1.0 };
        let inside = |x: f64| x <= 1.25 * c && x >= 0.75 * kappa * c;
        let mut vals: Vec<f64> = cmp.rows.iter().map(|r| r.report.c_hat).collect();
        vals.extend(cmp.fits.iter().map(|f| f.1));
        let good = vals.iter().all(|&x| inside(x)) && dt <= Duration::from_secs(300);
        ok &= good;
        let shown: Vec<String> = vals.iter().map(|x| format!("{x:.2}")).collect();
        lines.push(format!("{} {} (ref {c}) {}{}", codec.name(), shown.join("/"), secs(dt), if good { "" } else { " OUT" }));
    }
    Outcome { ok, detail: lines.join("; ") }
}

fn run_prop<S: Strategy>(name: &str, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: common::CASES, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| format!("{name}: {e}"))
}

fn criterion10() -> Outcome {
    use common::*;
    let with_syms = self_orthogonal().prop_flat_map(|g| {
        let (f, n) = (g.field(), g.n());
        (Just(g), proptest::collection::vec(symmetry(f, n), 0..=3))
    });
    let results = [
        run_prop("symmetry invariance", tuple_with_symmetries(), |(g, s)| symmetry_invariance(&g, &s)),
        run_prop("duality commutes", (prop_oneof![noncatastrophic_tuple(), self_orthogonal()], 0usize..=5), |(g, x)| duality_commutes(&g, x)),
        run_prop("self-orthogonality inherited", (with_syms, 0usize..=5), |((g, s), x)| tb_inherits_self_orthogonality(&g, &s, x)),
        run_prop("syndrome additivity", additivity_case(), |(g, a, b, k)| syndrome_additivity(&g, &a, &b, k)),
        run_prop("orbit constancy", tuple_with_symmetries(), |(g, s)| orbit_constancy(&g, &s)),
    ];
    let errs: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    if errs.is_empty() {
        pass(format!("5 properties x {} cases", CASES))
    } else {
        fail(errs.join("; "))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Table I", || autocorr(TableId::I)),
        ("Table III", || autocorr(TableId::III)),
        ("Tables II and IV", criterion3),
        ("Table V", || best(TableId::V, &[("6", "6", "2", 1), ("12", "10", "5", 1)])),
        ("Table VI", || best(TableId::VI, &[("4", "6", "3", 1), ("5", "8", "75", 1), ("6", "9", "78", 4)])),
        ("Tables VII and VIII", criterion6),
        ("single-error decoding", criterion7),
        ("Viterbi coset leaders", criterion8),
        ("Monte-Carlo coefficients", criterion9),
        ("property suites", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
