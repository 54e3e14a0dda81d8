use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use multilinear_count::counting::{
    count_bilinear_brute_with, count_bilinear_fast_with, count_trilinear_brute_with,
    count_trilinear_with,
};
use multilinear_count::harness::{run_suite, Suite, SuiteConfig};
use multilinear_count::{
    Axis, BilinearClass, BilinearForm, Box2, CountOptions, Error, Hypermatrix, PairAxis,
    SolutionCensus, TrilinearKind,
};

/// Exact counts of primitive solutions of bilinear and trilinear equations.
#[derive(Parser)]
#[command(name = "mlcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperdeterminant and slice determinant forms of a 2x2x2 hypermatrix.
    Hyperdet {
        #[command(flatten)]
        input: FormInput,
    },
    /// Irreducibility, factors, vanishing pattern and singular points.
    Classify {
        #[command(flatten)]
        kind: KindFlag,
        #[command(flatten)]
        input: FormInput,
    },
    /// Count solutions in boxes and print the census as JSON.
    Count {
        #[command(flatten)]
        kind: KindFlag,
        #[command(flatten)]
        input: FormInput,
        /// Box bounds: "X1 X2 Y1 Y2" (bilinear), "X1 X2 Y1 Y2 Z1 Z2" (trilinear),
        /// or a single side used for every box.
        #[arg(long = "box", value_name = "BOUNDS")]
        boxes: String,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        /// Outer axis for trilinear counting (default: smallest box).
        #[arg(long, value_parser = parse_axis)]
        axis: Option<Axis>,
        /// Include the solution list in the JSON.
        #[arg(long)]
        solutions: bool,
    },
    /// Run a seeded verification suite and write the CSV report.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "coeff-max")]
        coeff_max: Option<i64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "oracle-fraction")]
        oracle_fraction: Option<f64>,
        /// Comma separated square box sides, e.g. "3,6,12".
        #[arg(long)]
        schedule: Option<String>,
        /// CSV output path; the CSV goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct KindFlag {
    /// Input is a bilinear form "a11 a12 a21 a22".
    #[arg(long)]
    bi: bool,
    /// Input is a hypermatrix "a111 a112 a121 a122 a211 a212 a221 a222".
    #[arg(long)]
    tri: bool,
}

#[derive(Args)]
struct FormInput {
    /// Coefficients, whitespace or comma separated.
    form: Option<String>,
    /// Read the coefficients from a file instead.
    #[arg(long, conflicts_with = "form")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Brute,
    Both,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn read_form(input: &FormInput) -> Result<String, Failure> {
    match (&input.form, &input.file) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(p)) => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        (None, None) => Err(Failure::Usage(
            "no form given; pass it inline or with --file".into(),
        )),
    }
}

fn tri_selected(kind: &KindFlag, text: &str) -> bool {
    kind.tri
        || (!kind.bi
            && text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .count()
                == 8)
}

fn parse_boxes(s: &str, n: usize) -> Result<Vec<Box2>, Failure> {
    let vals: Vec<f64> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Failure::Usage(format!("bad box bound {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    let vals = match vals.len() {
        1 => vec![vals[0]; 2 * n],
        k if k == 2 * n => vals,
        k => {
            return Err(Failure::Usage(format!(
                "expected {} box bounds (or 1), got {k}",
                2 * n
            )))
        }
    };
    vals.chunks(2)
        .map(|c| Box2::new(c[0], c[1]).map_err(Failure::from))
        .collect()
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Hyperdet { input } => {
            let h: Hypermatrix = read_form(&input)?.parse()?;
            println!("D = {}", h.hyperdet());
            for pair in PairAxis::ALL {
                let q = h.delta_form(pair);
                println!(
                    "Delta_{}({}) = {q}    disc = {}",
                    pair.name(),
                    pair.variable().name(),
                    q.discriminant()
                );
            }
            Ok(())
        }
        Command::Classify { kind, input } => {
            let text = read_form(&input)?;
            if tri_selected(&kind, &text) {
                classify_tri(&text.parse()?)
            } else {
                classify_bi(&text.parse()?);
                Ok(())
            }
        }
        Command::Count {
            kind,
            input,
            boxes,
            method,
            axis,
            solutions,
        } => {
            let text = read_form(&input)?;
            let opts = CountOptions {
                axis,
                keep_solutions: solutions,
            };
            let tri = tri_selected(&kind, &text);
            let (fast, brute) = if tri {
                let h: Hypermatrix = text.parse()?;
                let b = parse_boxes(&boxes, 3)?;
                let fast = (method != Method::Brute)
                    .then(|| count_trilinear_with(&h, &b[0], &b[1], &b[2], &opts))
                    .transpose()?;
                let brute = (method != Method::Fast)
                    .then(|| count_trilinear_brute_with(&h, &b[0], &b[1], &b[2], &opts))
                    .transpose()?;
                (fast, brute)
            } else {
                let f: BilinearForm = text.parse()?;
                let b = parse_boxes(&boxes, 2)?;
                let fast = (method != Method::Brute)
                    .then(|| count_bilinear_fast_with(&f, &b[0], &b[1], &opts))
                    .transpose()?;
                let brute = (method != Method::Fast)
                    .then(|| count_bilinear_brute_with(&f, &b[0], &b[1], &opts))
                    .transpose()?;
                (fast, brute)
            };
            let check = |c: &SolutionCensus| {
                if tri {
                    c.check_trilinear()
                } else {
                    c.check_bilinear()
                }
            };
            for c in fast.iter().chain(brute.iter()) {
                check(c)?;
            }
            let shown = fast.as_ref().or(brute.as_ref()).expect("one method ran");
            println!("{}", shown.to_json());
            if let (Some(a), Some(b)) = (&fast, &brute) {
                if a != b {
                    return Err(Failure::Invariant(format!(
                        "fast and brute censuses differ; brute: {}",
                        b.to_json()
                    )));
                }
            }
            Ok(())
        }
        Command::Verify {
            suite,
            trials,
            seed,
            coeff_max,
            epsilon,
            oracle_fraction,
            schedule,
            out,
        } => {
            let mut cfg = SuiteConfig::new(suite);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.coeff_max = coeff_max.unwrap_or(cfg.coeff_max);
            cfg.epsilon = epsilon.unwrap_or(cfg.epsilon);
            cfg.oracle_fraction = oracle_fraction.unwrap_or(cfg.oracle_fraction);
            if let Some(s) = schedule {
                cfg.box_schedule = s
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Usage(format!("bad schedule {s:?}")))?;
            }
            let report = run_suite(suite, &cfg)?;
            let summary = serde_json::to_string(&report.summary()).expect("summary serializes");
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|e| {
                        Failure::Usage(format!("cannot create {}: {e}", path.display()))
                    })?;
                    report.write_csv(file)?;
                    println!("{summary}");
                }
                None => {
                    report.write_csv(std::io::stdout().lock())?;
                    eprintln!("{summary}");
                }
            }
            if report.passed() {
                Ok(())
            } else {
                for f in &report.failures {
                    eprintln!("{f}");
                }
                Err(Failure::Invariant(format!(
                    "{} invariant failures",
                    report.failures.len()
                )))
            }
        }
    }
}

fn classify_bi(f: &BilinearForm) {
    match f.classify() {
        BilinearClass::Zero => println!("Zero form"),
        BilinearClass::Irreducible { delta } => println!("Irreducible, det = {delta}"),
        BilinearClass::Reducible { lx, ly, scale } => {
            let prefix = if scale == 1.into() {
                String::new()
            } else {
                format!("{scale} ")
            };
            println!("Reducible {prefix}({})({})", lx.render("x"), ly.render("y"));
        }
    }
}

fn classify_tri(h: &Hypermatrix) -> Result<(), Failure> {
    let class = h.classify();
    println!("D = {}", class.hyperdet);
    match &class.kind {
        TrilinearKind::ZeroForm => println!("ZeroForm"),
        TrilinearKind::NoLinearFactor => println!("NoLinearFactor"),
        TrilinearKind::TripleLinear { lx, ly, lz, scale } => {
            println!(
                "TripleLinear {scale} ({})({})({})",
                lx.render("x"),
                ly.render("y"),
                lz.render("z")
            );
        }
        TrilinearKind::LinearTimesBilinear {
            axis,
            linear,
            bilinear,
        } => {
            let (u, v) = axis.factor_pair();
            println!(
                "LinearTimesBilinear ({}) * B({}, {}) with B = [{bilinear}]",
                linear.render(axis.name()),
                u.name(),
                v.name()
            );
        }
    }
    let v = class.vanishing;
    println!(
        "vanishing: Delta_xy {}, Delta_yz {}, Delta_zx {}",
        if v.xy { "= 0" } else { "!= 0" },
        if v.yz { "= 0" } else { "!= 0" },
        if v.zx { "= 0" } else { "!= 0" }
    );
    if class.hyperdet.is_zero() {
        if class.kind != TrilinearKind::ZeroForm {
            let [x, y, z] = h.singular_point()?;
            println!("singular point x = {x}, y = {y}, z = {z}; all six partials vanish");
        }
    } else {
        println!("nonsingular");
    }
    Ok(())
}
