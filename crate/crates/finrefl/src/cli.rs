//! The `finrefl` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use finrefl_core::doubled::{self, DoubledSpace};
use finrefl_core::homology::{self, order_complex};
use finrefl_core::invsys::{self, LimitDim};
use finrefl_core::nerve::{self, Model};
use finrefl_core::reflection::{self, R3Mode};
use finrefl_core::{Coefficients, FieldCoeff, FiniteSpace, Partition, SimplicialComplex};
use serde_json::{json, Value};

use crate::format;
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PROPERTY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "finrefl", version, about = "Separation reflections, homology and inverse towers of finite spaces")]
pub struct Cli {
    /// Emit the report as a single JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hausdorff reflection and the R1/R2/R3 classes.
    Reflect {
        space: PathBuf,
        /// Compute R3 by enumerating maps into discrete spaces (at most 6 points).
        #[arg(long)]
        oracle: bool,
    },
    /// Kolmogorov quotient.
    T0 {
        space: PathBuf,
        /// Write the quotient as a space file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homology of a space (through its order complex) or of a complex file.
    Homology {
        file: PathBuf,
        /// `z`, `q` or `z<p>` for a prime `p`.
        #[arg(long, default_value = "z")]
        coeff: String,
        /// Write the complex whose homology was computed.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
    },
    /// Product of two spaces.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive check of the reflection's universal property.
    CheckUniversal {
        space: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_target: usize,
    },
    /// Whether the reflection of a product is the product of the reflections.
    CheckLemma { left: PathBuf, right: PathBuf },
    /// Stage homology and composite bond ranks of a sequence.
    Cech {
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// `q` or `z<p>` for a prime `p`.
        #[arg(long, default_value = "q")]
        coeff: String,
        #[arg(long, default_value_t = 2)]
        window: usize,
    },
    /// Writes a nerve tower as space, map and manifest files.
    Demo {
        /// `circle`, `interval` or `wedge2`.
        model: String,
        #[arg(long, default_value_t = 4)]
        base: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// A built-in doubled space: `punctured-circle` or `two-origin-line`.
    Doubled { name: String },
}

/// Why a command did not produce a passing report.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<format::Error> for Failure {
    fn from(e: format::Error) -> Self {
        let code = match e.core() {
            Some(finrefl_core::Error::QuotientMismatch(..)) => EXIT_PROPERTY,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<finrefl_core::Error> for Failure {
    fn from(e: finrefl_core::Error) -> Self {
        let code = match e {
            finrefl_core::Error::QuotientMismatch(..) => EXIT_PROPERTY,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(Report, bool), Failure>;

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_INPUT
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let echo = echo.join(" ");
    match execute(&cli.command, echo) {
        Ok((report, passed)) => {
            let _ = out.write_all(report.render(cli.json).as_bytes());
            if passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: property check failed");
                EXIT_PROPERTY
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: &Command, echo: String) -> CmdResult {
    let mut report = Report::new(echo);
    match command {
        Command::Reflect { space, oracle } => reflect(&mut report, space, *oracle),
        Command::T0 { space, out } => t0(&mut report, space, out.as_deref()),
        Command::Homology { file, coeff, emit_complex } => homology_cmd(&mut report, file, coeff, emit_complex.as_deref()),
        Command::Product { left, right, out } => product(&mut report, left, right, out.as_deref()),
        Command::CheckUniversal { space, max_target } => check_universal(&mut report, space, *max_target),
        Command::CheckLemma { left, right } => check_lemma(&mut report, left, right),
        Command::Cech { manifest, degree, coeff, window } => cech(&mut report, manifest, *degree, coeff, *window),
        Command::Demo { model, base, depth, out } => demo(&mut report, model, *base, *depth, out),
        Command::Doubled { name } => doubled_cmd(&mut report, name),
    }
    .map(|passed| (report, passed))
}

fn load_space(report: &mut Report, path: &Path) -> Result<FiniteSpace, Failure> {
    let text = format::read(path)?;
    report.input(path, text.as_bytes());
    Ok(format::parse_space(&text).map_err(|e| e.at(path))?)
}

fn labelled_blocks(space: &FiniteSpace, p: &Partition) -> Value {
    p.blocks().iter().map(|b| b.iter().map(|&x| space.label(x)).collect::<Vec<_>>()).collect()
}

fn parse_coeff(s: &str) -> Result<Coefficients, Failure> {
    let c = match s {
        "z" | "Z" => Coefficients::Integers,
        "q" | "Q" => Coefficients::Rationals,
        _ => {
            let p = s
                .strip_prefix(['z', 'Z'])
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Failure::input(format!("unknown coefficients `{s}`: expected z, q or z<p>")))?;
            Coefficients::ModP(p)
        }
    };
    if let Coefficients::ModP(p) = c {
        FieldCoeff::ModP(p).validate()?;
    }
    Ok(c)
}

fn coeff_name(c: Coefficients) -> String {
    match c {
        Coefficients::Integers => "z".into(),
        Coefficients::Rationals => "q".into(),
        Coefficients::ModP(p) => format!("z{p}"),
    }
}

fn simplex_counts(k: &SimplicialComplex) -> Vec<usize> {
    (0..k.dim().map_or(0, |d| d + 1)).map(|d| k.count(d)).collect()
}

fn reflect(report: &mut Report, path: &Path, oracle: bool) -> Result<bool, Failure> {
    let space = load_space(report, path)?;
    let mode = if oracle { R3Mode::Oracle } else { R3Mode::Fast };
    let refl = reflection::hausdorff_reflection_with(&space, mode)?;
    let r1: Vec<Value> = reflection::r1(&space)
        .off_diagonal_pairs()
        .into_iter()
        .map(|(x, y)| json!([space.label(x), space.label(y)]))
        .collect();
    report.set("points", space.len());
    report.set("t0", space.is_t0());
    report.set("mode", if oracle { "oracle" } else { "fast" });
    report.set("r1_pairs", r1);
    report.set("r2_classes", labelled_blocks(&space, &reflection::r2(&space)));
    report.set("r3_classes", labelled_blocks(&space, &refl.classes));
    report.set("reflection_size", refl.space.len());
    report.set("reflection_discrete", refl.space.is_discrete());
    let mut passed = refl.space.is_discrete() && refl.projection.is_surjective();
    if oracle {
        let fast = reflection::r3(&space, R3Mode::Fast)?;
        let agrees = fast == refl.classes;
        report.set("fast_agrees", agrees);
        passed &= agrees;
    }
    Ok(passed)
}

fn t0(report: &mut Report, path: &Path, out: Option<&Path>) -> Result<bool, Failure> {
    let space = load_space(report, path)?;
    let (q, proj) = space.kolmogorov_quotient();
    let classes = Partition::from_block_ids(proj.as_slice());
    report.set("points", space.len());
    report.set("t0", space.is_t0());
    report.set("classes", labelled_blocks(&space, &classes));
    report.set("quotient_points", q.len());
    if let Some(out) = out {
        format::write(out, &format::write_space(&q))?;
        report.set("written", out.display().to_string());
    }
    Ok(q.is_t0())
}

fn homology_cmd(report: &mut Report, path: &Path, coeff: &str, emit: Option<&Path>) -> Result<bool, Failure> {
    let coeff = parse_coeff(coeff)?;
    let text = format::read(path)?;
    report.input(path, text.as_bytes());
    let complex = if format::is_space_text(&text) {
        let mut space = format::parse_space(&text).map_err(|e| e.at(path))?;
        report.set("source", "space");
        report.set("points", space.len());
        if !space.is_t0() {
            report.warn("space is not T0; using its Kolmogorov quotient");
            space = space.kolmogorov_quotient().0;
        }
        order_complex(&space)?
    } else {
        report.set("source", "complex");
        format::parse_complex(&text).map_err(|e| e.at(path))?
    };
    let h = homology::homology(&complex, coeff)?;
    report.set("coefficients", coeff_name(coeff));
    report.set("vertices", complex.vertex_count());
    report.set("simplices", simplex_counts(&complex));
    report.set("betti", h.betti.clone());
    if coeff == Coefficients::Integers {
        let torsion: Vec<Vec<String>> = h.torsion.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect();
        report.set("torsion", json!(torsion));
    }
    report.set("euler_characteristic", h.euler_characteristic());
    if let Some(out) = emit {
        format::write(out, &format::write_complex(&complex))?;
        report.set("complex_written", out.display().to_string());
    }
    Ok(true)
}

fn product(report: &mut Report, left: &Path, right: &Path, out: Option<&Path>) -> Result<bool, Failure> {
    let (a, b) = (load_space(report, left)?, load_space(report, right)?);
    let p = a.product(&b);
    report.set("points", p.len());
    report.set("t0", p.is_t0());
    report.set("components", p.connected_components().num_blocks());
    report.set("reflection_size", reflection::hausdorff_reflection(&p)?.space.len());
    if let Some(out) = out {
        format::write(out, &format::write_space(&p))?;
        report.set("written", out.display().to_string());
    }
    Ok(true)
}

fn check_universal(report: &mut Report, path: &Path, max_target: usize) -> Result<bool, Failure> {
    let space = load_space(report, path)?;
    let r = reflection::verify_universal_property(&space, max_target)?;
    report.set("space", path.display().to_string());
    report.set("n", r.n);
    report.set("classes", r.classes);
    report.set("max_target", r.max_target);
    report.set("candidate_maps", u64::try_from(r.candidate_maps).unwrap_or(u64::MAX));
    report.set("verified_maps", r.verified_maps);
    report.set("failures", r.failures);
    report.set("passed", r.passed());
    Ok(r.passed())
}

fn check_lemma(report: &mut Report, left: &Path, right: &Path) -> Result<bool, Failure> {
    let (a, b) = (load_space(report, left)?, load_space(report, right)?);
    let of_product = reflection::hausdorff_reflection(&a.product(&b))?;
    let (ra, rb) = (reflection::hausdorff_reflection(&a)?, reflection::hausdorff_reflection(&b)?);
    let product_of = ra.space.product(&rb.space);
    let witness = reflection::product_reflection_witness(&a, &b)?;
    report.set("reflection_of_product", of_product.space.len());
    report.set("product_of_reflections", product_of.len());
    report.set("commutes", witness.is_some());
    if let Some(w) = &witness {
        // class of the product -> (class in X, class in Y)
        let m = rb.space.len().max(1);
        let pairs: Vec<Value> = w.iter().enumerate().map(|(c, &t)| json!([c, [t / m, t % m]])).collect();
        report.set("witness", pairs);
    } else {
        report.warn("no homeomorphism between the two reflections");
    }
    Ok(witness.is_some())
}

fn cech(report: &mut Report, manifest: &Path, degree: usize, coeff: &str, window: usize) -> Result<bool, Failure> {
    let field = match parse_coeff(coeff)? {
        Coefficients::Integers => return Err(Failure::input("limits need field coefficients: use q or z<p>")),
        Coefficients::Rationals => FieldCoeff::Rationals,
        Coefficients::ModP(p) => FieldCoeff::ModP(p),
    };
    let loaded = format::load_sequence(manifest)?;
    for f in &loaded.files {
        let bytes = std::fs::read(f).map_err(|e| Failure::input(format!("{}: {e}", f.display())))?;
        report.input(f, &bytes);
    }
    let seq = &loaded.sequence;
    let r = invsys::cech_homology(seq, degree, field, window)?;
    let reflected = invsys::stagewise_reflection(seq)?;
    report.set("stages", seq.len());
    report.set("sizes", seq.spaces().iter().map(FiniteSpace::len).collect::<Vec<_>>());
    report.set("degree", degree);
    report.set("coefficients", coeff_name(field.into()));
    report.set("window", window);
    report.set("betti", r.betti.clone());
    report.set("image_ranks", json!(r.image_ranks));
    report.set("stabilized", r.stabilized);
    report.set("mittag_leffler", r.mittag_leffler);
    match r.limit_dim {
        LimitDim::Exact(d) => report.set("limit_dim", d),
        LimitDim::Bracket { lower, upper } => {
            report.set("limit_dim", json!({ "lower": lower, "upper": upper }));
            report.warn(format!("limit not determined within window {window}; reporting a bracket"));
        }
    }
    report.set("stagewise_reflection_sizes", reflected.spaces().iter().map(FiniteSpace::len).collect::<Vec<_>>());
    Ok(true)
}

fn demo(report: &mut Report, model: &str, base: usize, depth: usize, out: &Path) -> Result<bool, Failure> {
    let m = Model::from_name(model)
        .ok_or_else(|| Failure::input(format!("unknown model `{model}`: expected circle, interval or wedge2")))?;
    if depth == 0 {
        return Err(Failure::input("depth must be at least 1"));
    }
    let tower = nerve::build_tower(m, base, depth)?;
    std::fs::create_dir_all(out).map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    let spaces = tower.sequence.spaces();
    let mut manifest = format::Manifest::default();
    for (n, s) in spaces.iter().enumerate() {
        let name = format!("stage{n}.space");
        format::write(&out.join(&name), &format::write_space(s))?;
        manifest.spaces.push(name);
    }
    for n in 0..spaces.len() - 1 {
        let name = format!("bond{}.map", n + 1);
        let text =
            format::write_map(&manifest.spaces[n + 1], &manifest.spaces[n], &spaces[n + 1], &spaces[n], &tower.sequence.bonds()[n]);
        format::write(&out.join(&name), &text)?;
        manifest.maps.push(name);
    }
    let manifest_path = out.join("manifest");
    format::write(&manifest_path, &format::write_manifest(&manifest))?;
    report.set("model", m.name());
    report.set("resolutions", tower.covers.iter().map(|c| c.resolution).collect::<Vec<_>>());
    report.set("sizes", spaces.iter().map(FiniteSpace::len).collect::<Vec<_>>());
    report.set("manifest", manifest_path.display().to_string());
    let mut files = manifest.spaces.clone();
    files.extend(manifest.maps.iter().cloned());
    report.set("files", files);
    Ok(true)
}

fn doubled_cmd(report: &mut Report, name: &str) -> Result<bool, Failure> {
    let d = DoubledSpace::named(name)
        .ok_or_else(|| Failure::input(format!("unknown doubled space `{name}`: expected punctured-circle or two-origin-line")))?;
    let classes = doubled::r_classes(&d)?;
    let base = doubled::reflection(&d)?;
    let h = homology::homology(&base, Coefficients::Integers)?;
    let label = |p: usize| d.point_label(p);
    report.set("name", d.name());
    report.set("points", (0..d.point_count()).map(label).collect::<Vec<_>>());
    report.set("r1_pairs", classes.r1_pairs.iter().map(|&(a, b)| json!([label(a), label(b)])).collect::<Vec<_>>());
    let nontrivial: Vec<Vec<String>> =
        classes.classes.nontrivial_blocks().map(|b| b.iter().map(|&p| label(p)).collect()).collect();
    report.set("r3_classes", json!(nontrivial));
    report.set("reflection_simplices", simplex_counts(&base));
    report.set("reflection_betti", h.betti.clone());
    Ok(true)
}
