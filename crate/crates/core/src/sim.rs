//! Monte-Carlo decoding-error rates under independent single-qubit Pauli errors.
//!
//! A trial is one block for block and tail-biting codes, one window of W
//! blocks (with error-free surroundings) for convolutional codes. A trial
//! fails unless the residual ê + e lies in the stabilizer label code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

use crate::blockcode::{self, BlockCode};
use crate::convcode::ConvCode;
use crate::decode::{
    self, BlockTableDecoder, CssStreamDecoder, Decoded, Measure, StreamDecoder, ViterbiTailbitingDecoder,
    ViterbiWindowDecoder,
};
use crate::error::{Error, Result};
use crate::fields::{F4Vec, Field, F4};

/// Default convolutional window, in blocks.
pub const DEFAULT_WINDOW: usize = 200;

/// Error probability p per qubit, with the X/Y/Z split given an error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    p: f64,
    xyz: [f64; 3],
}

impl ChannelModel {
    pub fn depolarizing(p: f64) -> Result<ChannelModel> {
        ChannelModel::new(p, [1.0 / 3.0; 3])
    }

    pub fn new(p: f64, xyz: [f64; 3]) -> Result<ChannelModel> {
        if !(0.0..=0.1).contains(&p) {
            return Err(Error::Invalid(format!("p = {p} outside [0, 0.1]")));
        }
        if xyz.iter().any(|&q| q.is_nan() || q < 0.0) || (xyz.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::Invalid("X/Y/Z split must be nonnegative and sum to 1".into()));
        }
        Ok(ChannelModel { p, xyz })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn split(&self) -> [f64; 3] {
        self.xyz
    }

    fn pauli(&self, u: f64) -> F4 {
        if u < self.xyz[0] {
            F4::OMEGA
        } else if u < self.xyz[0] + self.xyz[1] {
            F4::ONE
        } else {
            F4::OMEGA_BAR
        }
    }
}

/// Decoder family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderKind {
    /// Table lookup: coset table for block codes, streaming or circular
    /// single-error tables for convolutional and tail-biting codes.
    Table,
    /// Viterbi coset-leader search over the code trellis.
    Viterbi,
}

impl DecoderKind {
    pub fn parse(s: &str) -> Option<DecoderKind> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Some(DecoderKind::Table),
            "viterbi" | "va" => Some(DecoderKind::Viterbi),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Engine {
    Block { dec: BlockTableDecoder, dual: Vec<F4Vec> },
    Stream { code: ConvCode, dec: StreamDecoder, w: usize },
    CssStream { code: ConvCode, dec: CssStreamDecoder, w: usize },
    ViterbiWindow { code: ConvCode, dec: Box<ViterbiWindowDecoder> },
    Circular { dec: StreamDecoder, code: ConvCode, l: usize, dual: Vec<F4Vec> },
    CssCircular { dec: CssStreamDecoder, code: ConvCode, l: usize, dual: Vec<F4Vec> },
    ViterbiTb { dec: Box<ViterbiTailbitingDecoder>, dual: Vec<F4Vec> },
}

/// A code together with a decoder, ready for simulation.
#[derive(Clone, Debug)]
pub struct Codec {
    name: String,
    field: Field,
    unit: usize,
    encoded: usize,
    reference: Option<f64>,
    engine: Engine,
}

/// Outcome of one trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub ok: bool,
    pub detected: bool,
}

fn css_views(s: &[F4], f: impl Fn(&[F4]) -> Decoded) -> Decoded {
    let (sx, sz) = decode::split_views(s);
    decode::join_decoded(f(&sx), f(&sz))
}

fn add(a: &[F4], b: &[F4]) -> Vec<F4> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

/// Coset test for the residual of one decoded trial.
type ResidualCheck<'a> = Box<dyn Fn(&[F4]) -> bool + 'a>;

impl Codec {
    /// Block code given by its self-orthogonal label code. Binary codes are
    /// decoded as CSS codes, one coset table per view.
    pub fn block(name: &str, code: &BlockCode) -> Result<Codec> {
        if !code.is_self_orthogonal() {
            return Err(Error::NotSelfOrthogonal);
        }
        let dec = BlockTableDecoder::new(code, code.len());
        let dual = code.dual_default().basis();
        Ok(Codec {
            name: name.into(),
            field: code.field(),
            unit: code.len(),
            encoded: code.len() - 2 * code.dim(),
            reference: None,
            engine: Engine::Block { dec, dual },
        })
    }

    /// Convolutional code on a window of `w` blocks.
    pub fn conv(name: &str, code: &ConvCode, w: usize, kind: DecoderKind) -> Result<Codec> {
        if w == 0 {
            return Err(Error::Invalid("window must have at least one block".into()));
        }
        let engine = match (kind, code.field()) {
            (DecoderKind::Table, Field::F4) => Engine::Stream { code: code.clone(), dec: StreamDecoder::new(code)?, w },
            (DecoderKind::Table, Field::F2) => {
                Engine::CssStream { code: code.clone(), dec: CssStreamDecoder::new(code)?, w }
            }
            (DecoderKind::Viterbi, _) => Engine::ViterbiWindow {
                code: code.clone(),
                dec: Box::new(ViterbiWindowDecoder::new(code, w, Measure::Full)?),
            },
        };
        Ok(Codec {
            name: name.into(),
            field: code.field(),
            unit: code.n() * w,
            encoded: (code.n() - 2) * w,
            reference: None,
            engine,
        })
    }

    /// Tail-biting code of `l` blocks.
    pub fn tailbiting(name: &str, code: &ConvCode, l: usize, kind: DecoderKind) -> Result<Codec> {
        let dual = blockcode::tail_bite_dual(code, l)?.basis();
        let engine = match (kind, code.field()) {
            (DecoderKind::Table, Field::F4) => {
                Engine::Circular { dec: StreamDecoder::new(code)?, code: code.clone(), l, dual }
            }
            (DecoderKind::Table, Field::F2) => {
                Engine::CssCircular { dec: CssStreamDecoder::new(code)?, code: code.clone(), l, dual }
            }
            (DecoderKind::Viterbi, _) => {
                Engine::ViterbiTb { dec: Box::new(ViterbiTailbitingDecoder::new(code, l)?), dual }
            }
        };
        Ok(Codec {
            name: name.into(),
            field: code.field(),
            unit: code.n() * l,
            encoded: (code.n() - 2) * l,
            reference: None,
            engine,
        })
    }

    /// Attaches a reference coefficient (error rate per encoded qubit ≈ c·p²).
    pub fn with_reference(mut self, c: f64) -> Codec {
        self.reference = Some(c);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// CSS codes are those with a binary label code.
    pub fn is_css(&self) -> bool {
        self.field == Field::F2
    }

    /// Qubits per trial.
    pub fn unit_len(&self) -> usize {
        self.unit
    }

    /// Encoded qubits per trial.
    pub fn encoded(&self) -> usize {
        self.encoded
    }

    pub fn reference(&self) -> Option<f64> {
        self.reference
    }

    /// Decodes one trial's error pattern and applies the coset criterion.
    pub fn run(&self, e: &[F4]) -> Outcome {
        debug_assert_eq!(e.len(), self.unit);
        let (d, ok): (Decoded, ResidualCheck<'_>) = match &self.engine {
            Engine::Block { dec, dual } => {
                let s = dec.syndrome(e);
                let d = if self.field == Field::F2 { css_views(&s, |v| dec.decode(v)) } else { dec.decode(&s) };
                (d, Box::new(move |r| decode::block_residual_ok(dual, r)))
            }
            Engine::Stream { code, dec, w } => {
                let s = decode::window_syndrome(code, e);
                (dec.decode(&s, -(code.nu() as i64), *w), Box::new(move |r| decode::conv_residual_ok(code, r)))
            }
            Engine::CssStream { code, dec, w } => {
                let s = decode::window_syndrome(code, e);
                (dec.decode(&s, -(code.nu() as i64), *w), Box::new(move |r| decode::conv_residual_ok(code, r)))
            }
            Engine::ViterbiWindow { code, dec, .. } => {
                let s = dec.syndrome(e);
                let d = if self.field == Field::F2 { css_views(&s, |v| dec.decode(v)) } else { dec.decode(&s) };
                (d, Box::new(move |r| decode::conv_residual_ok(code, r)))
            }
            Engine::Circular { dec, code, l, dual } => {
                let s = decode::circular_syndrome(code, e, *l);
                (dec.decode_circular(&s), Box::new(move |r| decode::block_residual_ok(dual, r)))
            }
            Engine::CssCircular { dec, code, l, dual } => {
                let s = decode::circular_syndrome(code, e, *l);
                (dec.decode_circular(&s), Box::new(move |r| decode::block_residual_ok(dual, r)))
            }
            Engine::ViterbiTb { dec, dual } => {
                let s = dec.syndrome(e);
                let d = if self.field == Field::F2 { css_views(&s, |v| dec.decode(v)) } else { dec.decode(&s) };
                (d, Box::new(move |r| decode::block_residual_ok(dual, r)))
            }
        };
        let r = add(&d.error, e);
        Outcome { ok: ok(&r), detected: d.is_detected() }
    }
}

/// 5-qubit code from the (5,2,4) self-orthogonal F4 code.
pub fn five_qubit() -> Codec {
    let b = BlockCode::parse(Field::F4, "0WwwW\nW0Www").expect("static code");
    Codec::block("five-qubit", &b).expect("static code").with_reference(10.0)
}

/// Steane code from the (7,3,4) binary simplex code.
pub fn steane() -> Codec {
    let b = BlockCode::parse(Field::F2, "0001111\n0110011\n1010101").expect("static code");
    Codec::block("steane", &b).expect("static code").with_reference(21.0)
}

/// Rate-1/3 F4-linear code (1+D, 1+ωD, 1+ω̄D).
pub fn f4_rate13() -> ConvCode {
    ConvCode::parse(Field::F4, &["11", "1w", "1W"]).expect("static code")
}

/// Rate-1/3 binary code (1+D+D², 1+D², 1).
pub fn css_rate13() -> ConvCode {
    ConvCode::parse(Field::F2, &["111", "101", "1"]).expect("static code")
}

pub fn f4_conv(w: usize) -> Codec {
    Codec::conv("f4-conv", &f4_rate13(), w, DecoderKind::Table).expect("static code").with_reference(12.0)
}

/// The [9,3,3] tail-biting code.
pub fn f4_tb9() -> Codec {
    Codec::tailbiting("f4-tb9", &f4_rate13(), 3, DecoderKind::Table).expect("static code").with_reference(12.0)
}

pub fn css_conv(w: usize) -> Codec {
    Codec::conv("css-conv", &css_rate13(), w, DecoderKind::Table).expect("static code").with_reference(21.0)
}

/// The [15,5,3] CSS tail-biting code.
pub fn css_tb15() -> Codec {
    Codec::tailbiting("css-tb15", &css_rate13(), 5, DecoderKind::Table).expect("static code").with_reference(21.0)
}

/// The six reference codecs, block codes first.
pub fn registry(w: usize) -> Vec<Codec> {
    vec![five_qubit(), f4_conv(w), f4_tb9(), steane(), css_conv(w), css_tb15()]
}

pub fn lookup(name: &str, w: usize) -> Option<Codec> {
    registry(w).into_iter().find(|c| c.name == name)
}

/// Result of one simulation run.
#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub codec: String,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub detected: u64,
    pub encoded_per_trial: usize,
    /// Failure rate per encoded qubit.
    pub rate: f64,
    /// rate / p².
    pub c_hat: f64,
    /// 95% half-width on `c_hat`.
    pub ci: f64,
}

fn wilson(f: u64, t: u64) -> (f64, f64) {
    if t == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959964;
    let (n, ph) = (t as f64, f as f64 / t as f64);
    let den = 1.0 + z * z / n;
    let mid = (ph + z * z / (2.0 * n)) / den;
    let half = z * (ph * (1.0 - ph) / n + z * z / (4.0 * n * n)).sqrt() / den;
    ((mid - half).max(0.0), (mid + half).min(1.0))
}

// trial failure probability P over K encoded qubits → per-qubit rate 1 − (1 − P)^(1/K)
fn per_qubit(pt: f64, k: usize) -> f64 {
    if k <= 1 {
        return pt;
    }
    -((-pt).ln_1p() / k as f64).exp_m1()
}

impl SimReport {
    fn new(codec: &Codec, p: f64, trials: u64, failures: u64, detected: u64) -> SimReport {
        let k = codec.encoded.max(1);
        let pt = if trials == 0 { 0.0 } else { failures as f64 / trials as f64 };
        let rate = per_qubit(pt, k);
        let (lo, hi) = wilson(failures, trials);
        let (c_hat, ci) = if p > 0.0 {
            (rate / (p * p), (per_qubit(hi, k) - per_qubit(lo, k)) / (2.0 * p * p))
        } else {
            (0.0, 0.0)
        };
        SimReport {
            codec: codec.name.clone(),
            p,
            trials,
            failures,
            detected,
            encoded_per_trial: codec.encoded,
            rate,
            c_hat,
            ci,
        }
    }
}

fn frame_trials(codec: &Codec) -> u64 {
    ((1usize << 16) / codec.unit).max(1) as u64
}

/// Samples `trials` independent trials. Trials are grouped into fixed frames,
/// each drawn from its own ChaCha stream (seed, frame), so the result does not
/// depend on the number of worker threads.
pub fn simulate(codec: &Codec, channel: &ChannelModel, trials: u64, seed: u64) -> SimReport {
    let p = channel.p();
    if p == 0.0 || trials == 0 {
        return SimReport::new(codec, p, trials, 0, 0);
    }
    let geo = Geometric::new(p).expect("p in (0, 0.1]");
    let per = frame_trials(codec);
    let frames = trials.div_ceil(per);
    let unit = codec.unit as u64;
    let (failures, detected) = (0..frames)
        .into_par_iter()
        .map(|f| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(f);
            let count = per.min(trials - f * per);
            let total = count * unit;
            let mut fails = 0u64;
            let mut dets = 0u64;
            let mut e = vec![F4::ZERO; codec.unit];
            let mut cur: Option<u64> = None;
            let mut touched: Vec<usize> = Vec::new();
            let mut flush = |e: &mut Vec<F4>, touched: &mut Vec<usize>| {
                let o = codec.run(e);
                if !o.ok {
                    fails += 1;
                }
                if o.detected {
                    dets += 1;
                }
                for &i in touched.iter() {
                    e[i] = F4::ZERO;
                }
                touched.clear();
            };
            let mut pos = geo.sample(&mut rng);
            while pos < total {
                let t = pos / unit;
                if cur != Some(t) {
                    if cur.is_some() {
                        flush(&mut e, &mut touched);
                    }
                    cur = Some(t);
                }
                let i = (pos % unit) as usize;
                e[i] = channel.pauli(rng.gen::<f64>());
                touched.push(i);
                pos = pos.saturating_add(1).saturating_add(geo.sample(&mut rng));
            }
            if cur.is_some() {
                flush(&mut e, &mut touched);
            }
            (fails, dets)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    SimReport::new(codec, p, trials, failures, detected)
}

/// Runs every weight-1 error through the decoder; returns (cases, failures).
pub fn weight_one_exhaustive(codec: &Codec) -> (usize, usize) {
    let nz: &[F4] = if codec.is_css() { &[F4::OMEGA, F4::ONE, F4::OMEGA_BAR] } else { Field::F4.nonzero() };
    let cases: Vec<(usize, F4)> = (0..codec.unit).flat_map(|i| nz.iter().map(move |&a| (i, a))).collect();
    let bad = cases
        .par_iter()
        .filter(|&&(i, a)| {
            let mut e = vec![F4::ZERO; codec.unit];
            e[i] = a;
            let o = codec.run(&e);
            !o.ok || o.detected
        })
        .count();
    (cases.len(), bad)
}

/// Settings for a comparison across codes and error rates.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub p_grid: Vec<f64>,
    /// Trials for block and tail-biting codes (one block each).
    pub block_trials: u64,
    /// Trials for convolutional codes (one window each).
    pub window_trials: u64,
    pub seed: u64,
    /// Scale the reference of CSS codes by 7/9, the share of two-error
    /// patterns that defeat two independent binary decoders.
    pub css_correction: bool,
}

/// One row of a comparison: a report plus its fitted and reference coefficients.
#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub report: SimReport,
    pub reference: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub rows: Vec<SuiteRow>,
    /// Least-squares fit of rate = c·p² per codec over the grid.
    pub fits: Vec<(String, f64)>,
}

fn is_windowed(c: &Codec) -> bool {
    matches!(c.engine, Engine::Stream { .. } | Engine::CssStream { .. } | Engine::ViterbiWindow { .. })
}

pub fn compare_suite(codecs: &[Codec], cfg: &SuiteConfig) -> Result<Comparison> {
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for (ci, c) in codecs.iter().enumerate() {
        let trials = if is_windowed(c) { cfg.window_trials } else { cfg.block_trials };
        let (mut num, mut den) = (0.0, 0.0);
        for (pi, &p) in cfg.p_grid.iter().enumerate() {
            let ch = ChannelModel::depolarizing(p)?;
            let seed = cfg.seed ^ ((ci as u64) << 40) ^ ((pi as u64) << 32);
            let r = simulate(c, &ch, trials, seed);
            num += r.rate * p * p;
            den += p.powi(4);
            let reference = c.reference.map(|x| if cfg.css_correction && c.is_css() { x * 7.0 / 9.0 } else { x });
            rows.push(SuiteRow { report: r, reference });
        }
        fits.push((c.name.clone(), if den > 0.0 { num / den } else { 0.0 }));
    }
    Ok(Comparison { rows, fits })
}

/// CSV lines with header: code, p, trials, failures, rate, c_hat, ci.
pub fn reports_csv(reports: &[SimReport]) -> String {
    let mut s = String::from("code,p,trials,failures,rate,c_hat,ci\n");
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{:.6e},{:.4},{:.4}\n",
            r.codec, r.p, r.trials, r.failures, r.rate, r.c_hat, r.ci
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_noise() {
        for c in registry(20) {
            let r = simulate(&c, &ChannelModel::depolarizing(0.0).unwrap(), 1000, 1);
            assert_eq!((r.failures, r.rate), (0, 0.0));
        }
    }

    #[test]
    fn single_errors_always_corrected() {
        for c in registry(30) {
            let (n, bad) = weight_one_exhaustive(&c);
            assert_eq!(bad, 0, "{}", c.name());
            assert_eq!(n, c.unit_len() * 3);
        }
    }

    #[test]
    fn deterministic_across_pools() {
        let c = f4_tb9();
        let ch = ChannelModel::depolarizing(0.05).unwrap();
        let a = simulate(&c, &ch, 200_000, 9);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| simulate(&c, &ch, 200_000, 9));
        assert_eq!(a, b);
        assert!(a.failures > 0);
    }

    #[test]
    fn viterbi_codecs_correct_single_errors() {
        let c = Codec::conv("va", &f4_rate13(), 8, DecoderKind::Viterbi).unwrap();
        assert_eq!(weight_one_exhaustive(&c).1, 0);
        let c = Codec::tailbiting("va-tb", &css_rate13(), 5, DecoderKind::Viterbi).unwrap();
        assert_eq!(weight_one_exhaustive(&c).1, 0);
    }

    #[test]
    fn channel_bounds() {
        assert!(ChannelModel::depolarizing(0.2).is_err());
        assert!(ChannelModel::new(0.01, [0.5, 0.5, 0.1]).is_err());
        assert!(ChannelModel::new(0.01, [1.0, 0.0, 0.0]).is_ok());
    }
}
