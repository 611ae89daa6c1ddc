use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qconv::blockcode::{self, StabilizerSummary, TbMode};
use qconv::codespec::{Claims, CodeSpecFile};
use qconv::convcode::ConvCode;
use qconv::decode::{self, CssStreamDecoder, Decoded, Measure, StreamDecoder, ViterbiTailbitingDecoder, ViterbiWindowDecoder};
use qconv::fields::{format_blocks, parse_symbols};
use qconv::search;
use qconv::sim::{self, ChannelModel, Codec, DecoderKind, SuiteConfig};
use qconv::tables::{self, Format, TableBudget, TableId};
use qconv::{distance, Field, Pauli, F4};

#[derive(Parser)]
#[command(name = "qconv", version, about = "Quantum convolutional and tail-biting codes from classical label codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Csv,
    Md,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Csv => Format::Csv,
            Fmt::Md => Format::Markdown,
        }
    }
}

/// A code given either as a spec file or inline.
#[derive(Args)]
struct CodeArgs {
    /// Code spec file (TOML).
    #[arg(long, conflicts_with_all = ["field", "gens"])]
    spec: Option<PathBuf>,
    /// f2 or f4.
    #[arg(long)]
    field: Option<String>,
    /// Generator components as coefficient strings, lowest degree first (e.g. 11,1w,1W).
    #[arg(long = "gen", value_delimiter = ',')]
    gens: Vec<String>,
}

impl CodeArgs {
    fn load(&self) -> Result<ConvCode> {
        if let Some(p) = &self.spec {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            return Ok(CodeSpecFile::load(&text).with_context(|| format!("loading {}", p.display()))?.1);
        }
        let field = self.field.as_deref().ok_or_else(|| anyhow!("give --spec or --field with --gen"))?;
        let field = Field::parse(field).ok_or_else(|| anyhow!("unknown field {field}"))?;
        if self.gens.is_empty() {
            bail!("no generator components (--gen)");
        }
        Ok(ConvCode::parse(field, &self.gens)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DecodeMode {
    /// Streaming single-error table over a window.
    Stream,
    /// Single-error table on the tail-biting circle.
    Circular,
    /// Viterbi coset-leader search over a window.
    Viterbi,
    /// Viterbi coset-leader search on the tail-biting circle.
    ViterbiTb,
}

#[derive(Clone, Copy, ValueEnum)]
enum LengthMode {
    /// Shortest length keeping the free distance of the orthogonal code.
    Distance,
    /// Shortest length with distinct single-error syndromes.
    Syndrome,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimKind {
    Conv,
    Tb,
}

#[derive(Subcommand)]
enum Cmd {
    /// Regenerate a table and diff it against the shipped data.
    Tables {
        /// I..VIII, or "all".
        which: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
        /// Largest C(N,3) triple space searched per constraint length.
        #[arg(long, default_value_t = search::SEARCH_BUDGET)]
        budget: u64,
        /// Largest binary nu whose tail-biting length is searched (tables VII/VIII).
        #[arg(long, default_value_t = 8)]
        tb_nu_f2: usize,
        /// Largest quaternary nu whose tail-biting length is searched.
        #[arg(long, default_value_t = 4)]
        tb_nu_f4: usize,
        /// Leave out rows above this nu (tables V-VIII).
        #[arg(long)]
        max_nu: Option<usize>,
    },
    /// Search rate-1/n self-orthogonal generators.
    Search {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Largest component degree.
        #[arg(long)]
        nu: usize,
        /// Best rate-1/3 classes of constraint length exactly nu.
        #[arg(long)]
        rate13_best: bool,
        #[arg(long, alias = "format", value_enum, default_value = "text")]
        emit: Fmt,
        #[arg(long, default_value_t = search::SEARCH_BUDGET)]
        budget: u64,
    },
    /// Run the certificate chain on a code spec file.
    Verify {
        file: PathBuf,
        /// Print the canonical spec (with basis and computed claims) instead.
        #[arg(long)]
        emit: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Distance properties of the orthogonal code.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Tail-biting block codes from a convolutional code.
    Tailbite {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "distance")]
        mode: LengthMode,
        /// Use this length instead of searching.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Decode a syndrome sequence.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Syndromes S_k in time order (window: k = -nu..W-1; circle: k = 0..L-1).
        #[arg(long)]
        syndrome: String,
        #[arg(long, value_enum, default_value = "stream")]
        mode: DecodeMode,
        /// For binary codes: treat the syndrome as F4 labels carrying both views.
        #[arg(long)]
        both_views: bool,
    },
    /// Monte-Carlo decoding-error rates.
    Simulate {
        /// Built-in codec: five-qubit, steane, f4-conv, f4-tb9, css-conv, css-tb15.
        #[arg(long, conflicts_with_all = ["suite", "spec", "field"])]
        codec: Option<String>,
        /// All built-in codecs.
        #[arg(long)]
        suite: bool,
        #[command(flatten)]
        code: CodeArgs,
        /// For --spec/--gen codes: convolutional window or tail-biting circle.
        #[arg(long, value_enum, default_value = "conv")]
        kind: SimKind,
        /// Tail-biting length for --kind tb.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        decoder: DecoderArg,
        /// Error probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        /// Trials per p (blocks, or windows for convolutional codes).
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        trials: u64,
        /// Trials per p for block codes in --suite.
        #[arg(long, value_parser = parse_count)]
        block_trials: Option<u64>,
        #[arg(long, required = true)]
        seed: u64,
        #[arg(long, default_value_t = sim::DEFAULT_WINDOW)]
        window: usize,
        /// Conditional X,Y,Z probabilities given an error.
        #[arg(long, value_delimiter = ',')]
        xyz: Option<Vec<f64>>,
        /// Scale CSS references by 7/9 in --suite.
        #[arg(long)]
        css_correction: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Fmt,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    Table,
    Viterbi,
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn cmd_tables(which: &str, format: Format, budget: &TableBudget) -> Result<bool> {
    let ids: Vec<TableId> = if which.eq_ignore_ascii_case("all") {
        (1..=8).map(|i| TableId::parse(&i.to_string()).unwrap()).collect()
    } else {
        vec![TableId::parse(which).ok_or_else(|| anyhow!("unknown table {which}"))?]
    };
    let mut ok = true;
    for id in ids {
        let r = tables::regenerate(id, budget)?;
        if format == Format::Text {
            println!("table {id}");
        }
        print!("{}", r.render(format));
        let diff = r.diff_text();
        if format == Format::Text {
            print!("{diff}");
        } else {
            eprint!("{diff}");
        }
        ok &= r.ok();
    }
    Ok(ok)
}

fn cmd_search(field: &str, n: usize, nu: usize, best: bool, format: Format, budget: u64) -> Result<bool> {
    let field = Field::parse(field).ok_or_else(|| anyhow!("unknown field {field}"))?;
    if best {
        if n != 3 {
            bail!("--rate13-best needs --n 3");
        }
        let r = search::best_rate13(field, nu, budget)?;
        let rows: Vec<Vec<String>> = r
            .rows
            .iter()
            .map(|b| {
                vec![
                    b.nu.to_string(),
                    b.g.to_strings().join(" "),
                    b.h[0].to_strings().join(" "),
                    b.h[1].to_strings().join(" "),
                    b.d.to_string(),
                    b.n_d.to_string(),
                ]
            })
            .collect();
        print!("{}", tables::render(&strings(&["nu", "g", "h1", "h2", "d", "N"]), &rows, format));
        let c = &r.coverage;
        eprintln!(
            "searched {} triples: {} self-orthogonal, {} noncatastrophic, {} classes",
            c.tuple_space, c.self_orthogonal, c.noncatastrophic, c.classes
        );
        return Ok(true);
    }
    let table = search::autocorr_table(field, nu);
    let found = search::minimal_subsets(&table, [n]);
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|(n, s)| {
            vec![
                format!("1/{n}"),
                search::subset_nu(s).to_string(),
                s.iter().map(|p| p.to_coeff_string()).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    print!("{}", tables::render(&strings(&["rate", "nu", "generator"]), &rows, format));
    if rows.is_empty() {
        eprintln!("no self-orthogonal rate-1/{n} generator with degree <= {nu}");
    }
    Ok(true)
}

fn cmd_verify(file: &PathBuf, emit: bool, format: Format) -> Result<bool> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let spec = CodeSpecFile::parse(&text).with_context(|| format!("parsing {}", file.display()))?;
    let r = spec.verify()?;
    if emit {
        let code = spec.code()?;
        let claims = Claims {
            nu: Some(code.nu()),
            d: Some(r.d),
            n_d: Some(r.n_d),
            alpha: Some(r.alpha.to_string()),
            tb_length: r.tb_length,
        };
        let mut out = CodeSpecFile::from_code(&code, true, claims);
        out.name = spec.name.clone();
        print!("{}", out.to_toml());
        return Ok(r.ok());
    }
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| vec![c.name.to_string(), c.expected.clone(), c.got.clone(), if c.ok { "ok" } else { "FAIL" }.into()])
        .collect();
    print!("{}", tables::render(&strings(&["check", "expected", "got", "status"]), &rows, format));
    if format == Format::Text {
        let tb = r.tb_length.map_or("-".to_string(), |l| l.to_string());
        println!("d = {}, N = {}, alpha = {}, tail-biting length = {tb}", r.d, r.n_d, r.alpha);
    }
    Ok(r.ok())
}

fn cmd_distance(code: &ConvCode, format: Format) -> Result<bool> {
    let basis = code.dual_basis();
    let t = distance::build_trellis(basis)?;
    let r = distance::analyze(code)?;
    let s = distance::slope(&t)?;
    let rows = vec![
        vec!["generator".into(), code.g().to_strings().join(" ")],
        vec!["nu".into(), code.nu().to_string()],
        vec!["self-orthogonal".into(), code.is_self_orthogonal().to_string()],
        vec![
            "orthogonal basis".into(),
            basis.h().iter().map(|h| h.to_strings().join(" ")).collect::<Vec<_>>().join(" ; "),
        ],
        vec!["basis degrees".into(), format!("{:?}", basis.degrees())],
        vec!["trellis states".into(), t.num_states().to_string()],
        vec!["d".into(), r.d_perp.to_string()],
        vec!["N".into(), r.n_d.to_string()],
        vec!["alpha".into(), format!("{} ({}/{})", s.alpha, s.cycle_weight, s.cycle_len)],
        vec!["tail-biting bound".into(), blockcode::handlery_bound(r.d_perp, s.alpha).to_string()],
    ];
    print!("{}", tables::render(&strings(&["quantity", "value"]), &rows, format));
    Ok(true)
}

fn cmd_tailbite(code: &ConvCode, mode: LengthMode, length: Option<usize>, format: Format) -> Result<bool> {
    let (l, b, bp, st, so) = match length {
        Some(l) => {
            let b = blockcode::tail_bite_code(code, l)?;
            let bp = blockcode::tail_bite_dual(code, l)?;
            let d = distance::tailbiting_distance(&distance::build_trellis(code.dual_basis())?, l);
            let st = StabilizerSummary::from_label_code(code.field(), b.len(), b.dim(), d);
            (l, (b.len(), b.dim()), (bp.len(), bp.dim(), d), st, b.is_self_orthogonal())
        }
        None => {
            let m = match mode {
                LengthMode::Distance => TbMode::DistancePreserving,
                LengthMode::Syndrome => TbMode::SyndromeDistinct,
            };
            let r = blockcode::min_tailbiting_length(code, m)?;
            (r.l, r.b, r.b_perp, r.stabilizer, r.b_self_orthogonal)
        }
    };
    let rows = vec![vec![
        l.to_string(),
        format!("({},{})", b.0, b.1),
        format!("({},{},{})", bp.0, bp.1, bp.2),
        st.to_string(),
        so.to_string(),
    ]];
    print!("{}", tables::render(&strings(&["L", "B", "B-perp", "stabilizer", "B self-orthogonal"]), &rows, format));
    Ok(true)
}

fn cmd_decode(code: &ConvCode, syndrome: &str, mode: DecodeMode, both: bool) -> Result<bool> {
    let s = parse_symbols(syndrome)?;
    let binary = code.field() == Field::F2;
    if binary && !both && s.iter().any(|a| !Field::F2.contains(*a)) {
        bail!("binary code: syndrome must be 0/1 (or pass --both-views)");
    }
    let nu = code.nu();
    let views = binary && both;
    let window = |s: &[F4]| -> Result<usize> {
        if s.len() <= nu {
            bail!("window syndrome needs more than nu = {nu} symbols");
        }
        Ok(s.len() - nu)
    };
    let out: Decoded = match mode {
        DecodeMode::Stream => {
            let w = window(&s)?;
            if views {
                CssStreamDecoder::new(code)?.decode(&s, -(nu as i64), w)
            } else {
                StreamDecoder::new(code)?.decode(&s, -(nu as i64), w)
            }
        }
        DecodeMode::Circular => {
            if views {
                CssStreamDecoder::new(code)?.decode_circular(&s)
            } else {
                StreamDecoder::new(code)?.decode_circular(&s)
            }
        }
        DecodeMode::Viterbi => {
            let d = ViterbiWindowDecoder::new(code, window(&s)?, Measure::Full)?;
            if views {
                let (x, z) = decode::split_views(&s);
                decode::join_decoded(d.decode(&x), d.decode(&z))
            } else {
                d.decode(&s)
            }
        }
        DecodeMode::ViterbiTb => {
            let d = ViterbiTailbitingDecoder::new(code, s.len())?;
            if views {
                let (x, z) = decode::split_views(&s);
                decode::join_decoded(d.decode(&x), d.decode(&z))
            } else {
                d.decode(&s)
            }
        }
    };
    let n = code.n();
    println!("error: {}", format_blocks(&out.error, n));
    if !binary || views {
        let paulis: String = out.error.iter().map(|&a| Pauli::from_label(a).symbol()).collect();
        println!("pauli: {}", paulis_blocks(&paulis, n));
    }
    let hits: Vec<String> = out
        .error
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| format!("block {} position {}: {}", i / n, i % n + 1, a))
        .collect();
    if hits.is_empty() {
        println!("correction: identity");
    }
    for h in hits {
        println!("{h}");
    }
    if out.is_detected() {
        println!("detected: {}", out.detected.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(true)
}

fn paulis_blocks(p: &str, n: usize) -> String {
    let c: Vec<char> = p.chars().collect();
    c.chunks(n).map(|b| b.iter().collect::<String>()).collect::<Vec<_>>().join("|")
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    codec: Option<&str>,
    suite: bool,
    code: &CodeArgs,
    kind: SimKind,
    length: Option<usize>,
    decoder: DecoderArg,
    p: &[f64],
    trials: u64,
    block_trials: Option<u64>,
    seed: u64,
    window: usize,
    xyz: Option<&[f64]>,
    css_correction: bool,
    format: Format,
) -> Result<bool> {
    let split = match xyz {
        Some([x, y, z]) => [*x, *y, *z],
        Some(_) => bail!("--xyz takes three probabilities"),
        None => [1.0 / 3.0; 3],
    };
    for &q in p {
        ChannelModel::new(q, split)?;
    }
    let kind_dec = match decoder {
        DecoderArg::Table => DecoderKind::Table,
        DecoderArg::Viterbi => DecoderKind::Viterbi,
    };
    let header = strings(&["code", "p", "trials", "failures", "rate", "c_hat", "ci"]);
    let row = |r: &sim::SimReport| {
        vec![
            r.codec.clone(),
            r.p.to_string(),
            r.trials.to_string(),
            r.failures.to_string(),
            format!("{:.6e}", r.rate),
            format!("{:.4}", r.c_hat),
            format!("{:.4}", r.ci),
        ]
    };
    if suite {
        if xyz.is_some() {
            bail!("--suite uses the depolarizing split; drop --xyz");
        }
        let cfg = SuiteConfig {
            p_grid: p.to_vec(),
            block_trials: block_trials.unwrap_or(trials),
            window_trials: trials,
            seed,
            css_correction,
        };
        let cmp = sim::compare_suite(&sim::registry(window), &cfg)?;
        let mut h = header.clone();
        h.push("reference".into());
        let rows: Vec<Vec<String>> = cmp
            .rows
            .iter()
            .map(|r| {
                let mut v = row(&r.report);
                v.push(r.reference.map_or("-".into(), |x| format!("{x:.4}")));
                v
            })
            .collect();
        print!("{}", tables::render(&h, &rows, format));
        for (name, c) in &cmp.fits {
            eprintln!("{name}: fitted c = {c:.4}");
        }
        return Ok(true);
    }
    let c: Codec = match codec {
        Some(name) => sim::lookup(name, window).ok_or_else(|| anyhow!("unknown codec {name}"))?,
        None => {
            let cc = code.load()?;
            match kind {
                SimKind::Conv => Codec::conv("custom-conv", &cc, window, kind_dec)?,
                SimKind::Tb => {
                    let l = length.ok_or_else(|| anyhow!("--kind tb needs --length"))?;
                    Codec::tailbiting("custom-tb", &cc, l, kind_dec)?
                }
            }
        }
    };
    let rows: Vec<Vec<String>> = p
        .iter()
        .map(|&q| {
            let ch = ChannelModel::new(q, split).expect("checked above");
            row(&sim::simulate(&c, &ch, trials, seed))
        })
        .collect();
    print!("{}", tables::render(&header, &rows, format));
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Tables { which, format, budget, tb_nu_f2, tb_nu_f4, max_nu } => {
            let b = TableBudget { search_tuples: budget, tb_search_nu: (tb_nu_f2, tb_nu_f4), max_nu };
            cmd_tables(&which, format.into(), &b)
        }
        Cmd::Search { field, n, nu, rate13_best, emit, budget } => cmd_search(&field, n, nu, rate13_best, emit.into(), budget),
        Cmd::Verify { file, emit, format } => cmd_verify(&file, emit, format.into()),
        Cmd::Distance { code, format } => cmd_distance(&code.load()?, format.into()),
        Cmd::Tailbite { code, mode, length, format } => cmd_tailbite(&code.load()?, mode, length, format.into()),
        Cmd::Decode { code, syndrome, mode, both_views } => cmd_decode(&code.load()?, &syndrome, mode, both_views),
        Cmd::Simulate {
            codec,
            suite,
            code,
            kind,
            length,
            decoder,
            p,
            trials,
            block_trials,
            seed,
            window,
            xyz,
            css_correction,
            format,
        } => cmd_simulate(
            codec.as_deref(),
            suite,
            &code,
            kind,
            length,
            decoder,
            &p,
            trials,
            block_trials,
            seed,
            window,
            xyz.as_deref(),
            css_correction,
            format.into(),
        ),
    }
}

/// Accepts plain integers and whole numbers like 1e6.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("{s:?} is not a whole number")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
