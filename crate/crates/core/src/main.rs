use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use growth_forge::algebra::{AlgebraElement, AlgebraError, Frame, MonomialAlgebra};
use growth_forge::centre::{CentreError, CentreLimits, GroupRing};
use growth_forge::config::{ConfigError, OutputFormat, RunConfig};
use growth_forge::extnat::ExtendedNat;
use growth_forge::field::Field;
use growth_forge::group::GroupElement;
use growth_forge::parse::{parse_algebra, parse_group, parse_groupring, ParseError};
use growth_forge::report::{Column, Report, FACTOR_COLUMNS, GROWTH_COLUMNS};
use growth_forge::word::{InfiniteWord, RunSequence, RunWord, WordError, WordLimits};

#[derive(Parser)]
#[command(name = "growth-forge", version, about = "Growth of monomial algebras, Irving's group and the algebra B")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Run sequence: tower, geo:<base> or list:<a,b,...>.
    #[arg(long, global = true)]
    spec: Option<RunSequence>,
    /// Coefficient field: rationals or gf:<p>.
    #[arg(long, global = true)]
    field: Option<Field>,
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    run_limit: Option<u64>,
    #[arg(long, global = true)]
    span_limit: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    /// Factors of the infinite word.
    Word,
    /// Free algebra on x, y.
    Free,
    /// Words y^a and y^a x.
    Control,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, value_enum, default_value = "word")]
    algebra: AlgebraKind,
    /// Comma-separated frame elements including 1; default `1, x, y`.
    #[arg(long)]
    frame: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Queries on the infinite word.
    #[command(subcommand)]
    Word(WordCommand),
    /// Growth series dim V^n of the monomial algebra.
    Growth {
        #[arg(long)]
        nmax: Option<u64>,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Annihilator search with rank-nullity accounting.
    Lemma1 {
        #[arg(long, default_value = "x")]
        z: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Two-sided growth dim V^n z V^n and reduction relations.
    #[command(name = "lemmaC")]
    LemmaC {
        #[arg(long, default_value = "x")]
        z: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Run the reduction search to this bound even when growth is large.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Growth of V^{dn} u^n V^{dn} and nilpotency of V^d u.
    Gk1 {
        #[arg(long, default_value = "y")]
        u: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        nmin: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value_t = 64)]
        kmax: u32,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Group arithmetic in normal form.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Growth series of B.
    Bgrowth {
        #[arg(long, default_value_t = 20)]
        nmax: u64,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Ignore the factor constraint on word parts.
        #[arg(long)]
        free: bool,
    },
    /// Central witnesses (a_n, z_n) in B.
    Witness {
        /// Index n of z_n.
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Comma-separated indices for the independence check.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        indices: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Express an arbitrary group element instead.
        #[arg(long)]
        express: Option<String>,
        #[arg(long, default_value_t = 8)]
        cmax: usize,
    },
    /// Primeness witness c with b1 c b2 != 0 in B.
    Prime {
        b1: String,
        b2: String,
        #[arg(long, default_value_t = 4096)]
        len_bound: u64,
        #[arg(long, default_value_t = 4)]
        cmax: usize,
    },
    /// Least k with (V^d x V^d)^k = 0 in B.
    Nilp {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 64)]
        kmax: u32,
        #[arg(long)]
        free: bool,
    },
    /// Quick randomized consistency checks.
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum WordCommand {
    /// |v_k|.
    Len {
        #[arg(long)]
        k: u32,
    },
    /// v_k in run form.
    Prefix {
        #[arg(long)]
        k: u32,
    },
    /// Whether a word is a factor.
    Factor { word: String },
    /// Factor complexity p(l) for l = 1..=lmax.
    Complexity {
        #[arg(long)]
        lmax: u64,
    },
    /// Largest number of x's in a factor of length l.
    Maxx {
        #[arg(long)]
        l: u64,
    },
    /// Shortest bridge w with w1 w w2 a factor.
    Bridge {
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 4096)]
        len_bound: u64,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Product of group words.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    Inv { word: String },
    /// u^k g u^-k.
    Conj {
        word: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// g h g^-1 h^-1.
    Comm { g: String, h: String },
    Central { word: String },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        match e {
            WordError::InvalidLevel(_) | WordError::InvalidSequence(_) | WordError::Parse { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Budget(e.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Word(w) => w.into(),
            AlgebraError::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CentreError> for Failure {
    fn from(e: CentreError) -> Self {
        match e {
            CentreError::Word(w) => w.into(),
            CentreError::Algebra(a) => a.into(),
            CentreError::Budget { .. } | CentreError::IndexBudget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Algebra(a) => a.into(),
            ParseError::Centre(c) => c.into(),
            ParseError::Syntax { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Context {
    config: RunConfig,
    word: Arc<InfiniteWord>,
}

impl Context {
    fn new(global: &Global) -> Result<Context, Failure> {
        let mut config = match &global.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(s) = &global.spec {
            config.spec = s.clone();
        }
        if let Some(f) = global.field {
            config.field = f;
        }
        if let Some(f) = global.format {
            config.output = f;
        }
        if let Some(s) = global.seed {
            config.seed = s;
        }
        if let Some(r) = global.run_limit {
            config.budgets.run_limit = r;
        }
        if let Some(s) = global.span_limit {
            config.budgets.span_limit = s;
        }
        config.validate()?;
        let limits = WordLimits {
            run_limit: config.budgets.run_limit,
            ..WordLimits::default()
        };
        let word = Arc::new(InfiniteWord::with_limits(config.spec.clone(), limits));
        Ok(Context { config, word })
    }

    fn algebra(&self, kind: AlgebraKind) -> MonomialAlgebra {
        let field = self.config.field;
        let a = match kind {
            AlgebraKind::Word => MonomialAlgebra::of_word(self.word.clone(), field),
            AlgebraKind::Free => MonomialAlgebra::free(field),
            AlgebraKind::Control => MonomialAlgebra::control(field),
        };
        let mut limits = a.limits();
        limits.span_limit = self.config.budgets.span_limit;
        a.with_limits(limits)
    }

    fn ring(&self, free: bool) -> GroupRing {
        let ring = if free {
            GroupRing::free_words(self.config.field)
        } else {
            GroupRing::new(self.word.clone(), self.config.field)
        };
        ring.with_limits(CentreLimits {
            pair_budget: self.config.budgets.span_limit.max(1),
            ..CentreLimits::default()
        })
    }

    fn frame(&self, algebra: &MonomialAlgebra, text: Option<&str>) -> Result<Frame, Failure> {
        let Some(text) = text else {
            return Ok(Frame::standard());
        };
        let elements = text
            .split(',')
            .map(|t| parse_algebra(t, algebra).map(|p| p.element))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Frame::new(elements)?)
    }

    fn element(&self, algebra: &MonomialAlgebra, text: &str) -> Result<AlgebraElement, Failure> {
        let parsed = parse_algebra(text, algebra)?;
        for w in &parsed.warnings {
            eprintln!("warning: {w}");
        }
        Ok(parsed.element)
    }

    fn emit(&self, report: &Report, out: Option<&PathBuf>) -> Result<(), Failure> {
        let format = self.config.output;
        match out {
            Some(path) => {
                std::fs::write(path, report.render_table(format))
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                if format == OutputFormat::Csv {
                    print!("{}", report.summary_text());
                }
            }
            None => print!("{}", report.render(format)),
        }
        Ok(())
    }
}

fn growth_report(
    ctx: &Context,
    report: &mut Report,
    dims: &[u64],
    series: &growth_forge::algebra::GrowthSeries,
) {
    for (n, d) in dims.iter().enumerate() {
        report.row(vec![json!(n), json!(d)]);
    }
    report.note("spec", ctx.config.spec.to_string());
    report.note("window", format!("[{}, {}]", series.window.0, series.window.1));
    report.note("c1", series.c1_f64());
    report.note("c2", series.c2_f64());
    report.note("gk_slope", series.gk_slope.map_or(Value::Null, |s| json!(s)));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Context::new(&cli.global)?;
    let out = cli.global.out.as_ref();
    let field = ctx.config.field;
    match cli.command {
        Command::Word(cmd) => {
            let v = &ctx.word;
            let mut report = Report::summary_only("word");
            match cmd {
                WordCommand::Len { k } => report.note("value", v.word_length(k)?.to_string()),
                WordCommand::Prefix { k } => report.note("value", v.build_prefix(k)?.to_string()),
                WordCommand::Factor { word } => {
                    let w: RunWord = word.parse()?;
                    report.note("value", v.is_factor(&w)?);
                }
                WordCommand::Complexity { lmax } => {
                    report = Report::new("complexity", &FACTOR_COLUMNS);
                    for l in 1..=lmax {
                        report.row(vec![json!(l), json!(v.factor_complexity(l)?)]);
                    }
                }
                WordCommand::Maxx { l } => report.note("value", v.max_x_occurrences(l)?),
                WordCommand::Bridge { w1, w2, len_bound } => {
                    let budget = v.limits().materialize_budget;
                    let a = w1.parse::<RunWord>()?.to_letters(budget)?;
                    let b = w2.parse::<RunWord>()?.to_letters(budget)?;
                    let found = v.shortest_bridge(&a, &b, len_bound)?;
                    report.note(
                        "value",
                        found.map_or("none".to_string(), |w| RunWord::from_letters(&w).to_string()),
                    );
                }
            }
            ctx.emit(&report, out)
        }
        Command::Growth { nmax, algebra } => {
            let nmax = nmax.unwrap_or(ctx.config.budgets.n_max);
            let a = ctx.algebra(algebra.algebra);
            let frame = ctx.frame(&a, algebra.frame.as_deref())?;
            let series = a.growth_report(nmax, &frame)?;
            let mut report = Report::new("growth", &GROWTH_COLUMNS);
            growth_report(&ctx, &mut report, &series.dims(), &series);
            report.note(
                "verdict",
                if series.quadratic { "quadratic" } else { "not quadratic" },
            );
            ctx.emit(&report, out)
        }
        Command::Lemma1 { z, m, nmax, algebra } => {
            let a = ctx.algebra(algebra.algebra);
            let frame = ctx.frame(&a, algebra.frame.as_deref())?;
            let z = ctx.element(&a, &z)?;
            let outcome = a.annihilator_search(&z, m, nmax, &frame)?;
            let cols = [
                Column::same("n"),
                Column::same("source_dim"),
                Column::same("image_dim"),
                Column::same("kernel_dim"),
                Column::same("factors"),
                Column::same("target_dim"),
            ];
            let mut report = Report::new("annihilator", &cols);
            for s in &outcome.steps {
                report.row(vec![
                    json!(s.n),
                    json!(s.source_dim),
                    json!(s.image_dim),
                    json!(s.kernel_dim),
                    json!(s.factors),
                    json!(s.target_dim),
                ]);
            }
            report.note(
                "annihilator",
                outcome.element.map_or("none".into(), |e| e.render(field)),
            );
            ctx.emit(&report, out)
        }
        Command::LemmaC { z, nmax, bound, algebra } => {
            let a = ctx.algebra(algebra.algebra);
            let frame = ctx.frame(&a, algebra.frame.as_deref())?;
            let z = ctx.element(&a, &z)?;
            let cols = [Column::same("n"), Column::same("two_sided_dim"), Column::same("n_squared")];
            let mut report = Report::new("two-sided-growth", &cols);
            let mut reduction_bound = bound;
            for n in 0..=nmax {
                let d = a.two_sided_growth(&z, n, &frame)?;
                report.row(vec![json!(n), json!(d), json!(n * n)]);
                if d < n * n && reduction_bound.is_none() {
                    reduction_bound = Some(2 * n);
                }
            }
            match reduction_bound {
                Some(b) => match a.reduction_search(&z, b, &frame)? {
                    Some(rel) => {
                        let verified = rel.verify(&a, &z, &frame)?;
                        report.note("reduction", format!("({}, {})", rel.m, rel.p));
                        report.note("certificate_verified", verified);
                        report.note("certificate", serde_json::to_value(&rel).expect("json"));
                    }
                    None => report.note("reduction", format!("none up to m + p = {b}")),
                },
                None => report.note("reduction", "not searched: growth at least n^2 throughout"),
            }
            ctx.emit(&report, out)
        }
        Command::Gk1 { u, d, nmin, nmax, kmax, algebra } => {
            let a = ctx.algebra(algebra.algebra);
            let frame = ctx.frame(&a, algebra.frame.as_deref())?;
            let u = ctx.element(&a, &u)?;
            let mut report = Report::new("ideal-power-growth", &[Column::same("n"), Column::same("dim")]);
            match a.ideal_power_growth(&u, d, nmin, &frame) {
                Err(AlgebraError::NilpotentInput { power }) => {
                    report.note("nilpotent", format!("u^{power} = 0"));
                }
                Err(e) => return Err(e.into()),
                Ok(_) => {
                    let mut c = f64::INFINITY;
                    for n in nmin..=nmax {
                        let dim = a.ideal_power_growth(&u, d, n, &frame)?;
                        report.row(vec![json!(n), json!(dim)]);
                        if n > 0 {
                            c = c.min(dim as f64 / f64::from(n * n));
                        }
                    }
                    report.note("fitted_c", c);
                }
            }
            let index = a.nilpotency_index(&u, d, kmax, &frame)?;
            report.note("nilpotency_index", index.map_or(Value::Null, |k| json!(k)));
            ctx.emit(&report, out)
        }
        Command::Group(cmd) => {
            let value = match cmd {
                GroupCommand::Mul { words } => {
                    let mut acc = GroupElement::identity();
                    for w in &words {
                        acc = acc.multiply(&parse_group(w)?);
                    }
                    acc.to_string()
                }
                GroupCommand::Inv { word } => parse_group(&word)?.inverse().to_string(),
                GroupCommand::Conj { word, k } => parse_group(&word)?.conjugate_by_u(&k.into()).to_string(),
                GroupCommand::Comm { g, h } => parse_group(&g)?.commutator(&parse_group(&h)?).to_string(),
                GroupCommand::Central { word } => parse_group(&word)?.is_central().to_string(),
            };
            let mut report = Report::summary_only("group");
            report.note("value", value);
            ctx.emit(&report, out)
        }
        Command::Bgrowth { nmax, epsilon, free } => {
            let ring = ctx.ring(free);
            let r = ring.b_growth_report(nmax, epsilon)?;
            let mut report = Report::new("b-growth", &GROWTH_COLUMNS);
            growth_report(&ctx, &mut report, &r.series.dims(), &r.series);
            report.note("epsilon", epsilon);
            report.note("trend_holds", r.trend_holds);
            ctx.emit(&report, out)
        }
        Command::Witness { n, indices, degree, express, cmax } => {
            let ring = ctx.ring(false);
            let mut report = Report::summary_only("witness");
            if let Some(text) = express {
                let g = parse_group(&text)?;
                match ring.express_in_b(&g, cmax)? {
                    Some(e) => {
                        report.note("generators", e.render());
                        report.note("word", e.word.to_string());
                        report.note("group", e.group.to_string());
                        report.note("verified", e.verify(&ring)?);
                    }
                    None => report.note("value", format!("none within {cmax} x's")),
                }
            }
            if let Some(n) = n {
                let cert = ring.certificate(n)?;
                report.note("verified", cert.verify(&ring)?);
                report.note("certificate", serde_json::to_value(&cert).expect("json"));
            }
            if !indices.is_empty() {
                report.note("independent", ring.independence_check(degree, &indices)?);
            }
            ctx.emit(&report, out)
        }
        Command::Prime { b1, b2, len_bound, cmax } => {
            let ring = ctx.ring(false);
            let parse = |t: &str| -> Result<_, Failure> {
                let p = parse_groupring(t, &ring)?;
                for w in &p.warnings {
                    eprintln!("warning: {w}");
                }
                Ok(p.element)
            };
            let (b1, b2) = (parse(&b1)?, parse(&b2)?);
            let mut report = Report::summary_only("prime");
            match ring.prime_witness_b(&b1, &b2, len_bound, cmax)? {
                Some(c) => {
                    let product = ring.multiply(&ring.multiply(&b1, &c)?, &b2)?;
                    report.note("witness", c.render(field));
                    report.note("product", product.render(field));
                }
                None => report.note("witness", "none"),
            }
            ctx.emit(&report, out)
        }
        Command::Nilp { d, kmax, free } => {
            let ring = ctx.ring(free);
            let mut report = Report::summary_only("nilpotency");
            let k = ring.x_ideal_nilpotency(d, kmax)?;
            report.note("value", k.map_or("none".to_string(), |k| k.to_string()));
            ctx.emit(&report, out)
        }
        Command::Selftest { samples } => {
            let report = selftest(&ctx, samples)?;
            let failed = report.summary.iter().any(|(_, v)| v == &json!(false));
            ctx.emit(&report, out)?;
            if failed {
                return Err(Failure::Budget("selftest found a failing check".into()));
            }
            Ok(())
        }
    }
}

fn random_group(rng: &mut StdRng) -> GroupElement {
    let mut g = GroupElement::identity();
    for _ in 0..3 {
        let i = rng.random_range(-8..=8i64);
        let e = rng.random_range(-8..=8i64);
        let f = match rng.random_range(0..4) {
            0 => GroupElement::z(i),
            1 => GroupElement::s(i),
            2 => GroupElement::t(i),
            _ => GroupElement::u(),
        };
        g = g.multiply(&f.pow(e));
    }
    g
}

fn selftest(ctx: &Context, samples: usize) -> Result<Report, Failure> {
    let mut rng = StdRng::seed_from_u64(ctx.config.seed);
    let mut report = Report::summary_only("selftest");
    let mut assoc = true;
    let mut inverse = true;
    let mut round_trip = true;
    for _ in 0..samples {
        let (a, b, c) = (random_group(&mut rng), random_group(&mut rng), random_group(&mut rng));
        assoc &= a.multiply(&b).multiply(&c) == a.multiply(&b.multiply(&c));
        inverse &= a.multiply(&a.inverse()).is_identity();
        round_trip &= parse_group(&a.to_string())? == a;
    }
    report.note("group_associativity", assoc);
    report.note("group_inverse", inverse);
    report.note("group_round_trip", round_trip);

    let a = ctx.algebra(AlgebraKind::Word);
    let v = &ctx.word;
    let mut monotone = true;
    let mut prev = 0;
    for l in 1..=24 {
        let p = v.factor_complexity(l)?;
        monotone &= p > prev && p > l;
        prev = p;
    }
    report.note("complexity_increasing", monotone);
    let dims = a.growth_values(&Frame::standard(), 30)?;
    report.note(
        "bergman_bound",
        dims.iter().enumerate().all(|(n, &d)| d >= (n * (n + 1) / 2) as u64),
    );
    let w3 = v.word_length(3)?;
    report.note("length_v3", w3.to_string());
    report.note("length_v3_positive", w3 > ExtendedNat::zero());
    report.note("seed", ctx.config.seed);
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
