use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dppforge::algebra::{check_identities, check_quadratic, Kind, Role, StructureAlgebra};
use dppforge::catalog;
use dppforge::coalgebra::{check_bialgebra, check_coalgebra, BialgebraCandidate};
use dppforge::constructions::{
    bialgebra_double, check_averaging, check_o_operator, induced_bialgebra, lift_r, poisson_tensor_perm, OOperatorCandidate,
};
use dppforge::format::{AlgebraDocument, Report, RepSpec};
use dppforge::graded::{
    check_lift_truncated, completed_tensor_bialgebra, lift_r_truncated, nu_omega, tensor_coproduct, GradedParams, LvfLabel,
    Mode, DEFAULT_BOX, DEFAULT_WINDOW,
};
use dppforge::linalg::BilinearForm;
use dppforge::rational::Rational;
use dppforge::rep::{check_dpp_rep, check_poisson_rep, semidirect_product, CoregularVariant};
use dppforge::rota_baxter::{
    check_descendent, check_quadratic_rb, check_rb, descendent, factorizable_to_qrb, qrb_to_rmatrix, rb_semidirect_r,
    triangular_from_qrb0, QuadraticRb, RbOperator,
};
use dppforge::ybe::{classify, classify_poisson, leibniz_residual, perm_residual, poisson_residuals, LybeSign, DEFAULT_LYBE_SIGN};
use dppforge::{init_threads, ForgeError, IdentityReport};

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact checks and constructions for dual pre-Poisson algebras and bialgebras")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Verify identities of algebras, coalgebras, bialgebras and operators
    #[command(subcommand)]
    Check(CheckCmd),
    /// Yang-Baxter residuals and r-matrix classification
    #[command(subcommand)]
    Ybe(YbeCmd),
    /// Build derived structures and write them as documents
    #[command(subcommand)]
    Build(BuildCmd),
    /// Completed bialgebras over the Laurent vector field algebra, on an exponent box
    #[command(subcommand)]
    Graded(GradedCmd),
    /// Built-in examples
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct OperatorArgs {
    /// Operator name in the document
    #[arg(long, default_value = "R")]
    operator: String,
    /// Weight; overrides the one stored with the operator
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<Rational>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// All identities of the document's kind
    Algebra { files: Vec<PathBuf> },
    /// Coalgebra identities of the document's coproducts
    Coalgebra { files: Vec<PathBuf> },
    /// Algebra, coalgebra and compatibility conditions
    Bialgebra { files: Vec<PathBuf> },
    /// Representation identities
    Rep {
        files: Vec<PathBuf>,
        /// Named representation, or regular / coregular / coregular-standard / coregular-signed
        #[arg(long, default_value = "regular")]
        rep: String,
    },
    /// Rota-Baxter identities of an operator
    Rb {
        files: Vec<PathBuf>,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Quadratic Rota-Baxter structure: form, operator and compatibility
    QuadraticRb {
        files: Vec<PathBuf>,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Averaging identities of an operator on a Poisson algebra
    Averaging {
        files: Vec<PathBuf>,
        #[arg(long, default_value = "alpha")]
        operator: String,
    },
    /// O-operator identities of a map from a representation into the algebra
    OOperator {
        files: Vec<PathBuf>,
        #[arg(long, default_value = "T")]
        operator: String,
        #[arg(long, default_value = "coregular")]
        rep: String,
    },
}

#[derive(Args)]
struct RArgs {
    file: PathBuf,
    /// Named 2-tensor in the document
    #[arg(long, default_value = "r")]
    rmatrix: String,
    /// Sign of r12∗r23 in the Leibniz equation
    #[arg(long, default_value = "minus")]
    lybe_sign: LybeSign,
}

#[derive(Subcommand)]
enum YbeCmd {
    /// Residual tensors of the Yang-Baxter equations
    Residual(RArgs),
    /// Solution, symmetry, invariance, triangular / quasi-triangular / factorizable flags
    Classify(RArgs),
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Double A ⊕ A* of a bialgebra (zero coproducts when absent) with r̃ and its coproducts
    Double {
        file: PathBuf,
        #[arg(long, default_value = "signed")]
        variant: CoregularVariant,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Semidirect product with a representation
    Semidirect {
        file: PathBuf,
        #[arg(long, default_value = "regular")]
        rep: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// P ⊗ B of a Poisson algebra and a perm algebra; induced coproducts when P has them and B has a form
    Tensor {
        poisson: PathBuf,
        perm: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// A ⋉ A* with the r-matrix of a Rota-Baxter operator of nonzero weight
    RbDouble {
        file: PathBuf,
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// r-matrix of a quadratic Rota-Baxter algebra (triangular for weight zero)
    FromQrb {
        file: PathBuf,
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quadratic Rota-Baxter algebra of a factorizable r-matrix
    ToQrb {
        file: PathBuf,
        #[arg(long, default_value = "r")]
        rmatrix: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: Rational,
        #[arg(long, default_value = "minus")]
        lybe_sign: LybeSign,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// r̂ on P ⊗ B from r on P and the form of B
    LiftR {
        poisson: PathBuf,
        perm: PathBuf,
        #[arg(long, default_value = "r")]
        rmatrix: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Descendent algebra of a Rota-Baxter operator
    Descendent {
        file: PathBuf,
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct GradedArgs {
    /// Exponent box |i1|, |i2| ≤ M for arguments and asserted components
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    box_m: i64,
    /// Working window for strong mode
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: i64,
    #[arg(long, default_value = "pairing")]
    mode: Mode,
    /// Poisson bialgebra document; defaults to the catalog's P3
    #[arg(long)]
    poisson: Option<PathBuf>,
}

impl GradedArgs {
    fn params(&self) -> GradedParams {
        GradedParams { box_m: self.box_m, window: self.window, mode: self.mode }
    }
}

#[derive(Subcommand)]
enum GradedCmd {
    /// Completed DPP bialgebra identities of P ⊗ LVF
    Check(GradedArgs),
    /// Components of ν_ω(b), or of ν and ϑ on p⊗b with --element
    Nu {
        #[command(flatten)]
        args: GradedArgs,
        /// Monomial i1,i2,s
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        /// P basis label
        #[arg(long)]
        element: Option<String>,
    },
    /// Windowed r̂ and its in-box Yang-Baxter residuals
    Lift {
        #[command(flatten)]
        args: GradedArgs,
        #[arg(long, default_value = "r")]
        rmatrix: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Names and summaries
    List,
    /// Declared checks and reference values of one entry
    Show { name: String },
    /// Write an entry's document
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Input {
    bytes: Vec<u8>,
    doc: AlgebraDocument,
}

fn read_doc(path: &Path) -> Result<Input, ForgeError> {
    let bytes = fs::read(path).map_err(|e| ForgeError::input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| ForgeError::input(format!("{}: not UTF-8", path.display())))?;
    let doc = AlgebraDocument::parse(&text)?;
    Ok(Input { bytes, doc })
}

fn read_all(paths: &[PathBuf]) -> Result<Vec<Input>, ForgeError> {
    if paths.is_empty() {
        return Err(ForgeError::input("no input files"));
    }
    paths.iter().map(|p| read_doc(p)).collect()
}

fn report_for(command: &str, inputs: &[Input]) -> Report {
    let parts: Vec<&[u8]> = inputs.iter().map(|i| i.bytes.as_slice()).collect();
    Report::new(command, &parts)
}

/// Prefixes result ids with the document name when several documents are checked.
fn add_for(report: &mut Report, name: &str, many: bool, rep: IdentityReport) {
    let rep = if many {
        IdentityReport {
            results: rep
                .results
                .into_iter()
                .map(|mut r| {
                    r.id = format!("{name}:{}", r.id);
                    r
                })
                .collect(),
        }
    } else {
        rep
    };
    report.add(rep);
}

fn operator(doc: &AlgebraDocument, alg: &StructureAlgebra, op: &OperatorArgs) -> Result<RbOperator, ForgeError> {
    let n = alg.dim();
    let (m, w) = doc.operator(&op.operator, Some((n, n)))?;
    let weight = op
        .weight
        .clone()
        .or(w)
        .ok_or_else(|| ForgeError::input(format!("operator {:?} has no weight; pass --weight", op.operator)))?;
    RbOperator::new(alg, m, weight)
}

fn require_form(doc: &AlgebraDocument) -> Result<BilinearForm, ForgeError> {
    doc.form()?.ok_or_else(|| ForgeError::input(format!("document {} has no form", doc.name)))
}

fn write_doc(report: &mut Report, path: &Path, doc: &AlgebraDocument) -> Result<(), ForgeError> {
    fs::write(path, doc.to_json() + "\n")?;
    report.attach("output", doc);
    report.value("output", path.display());
    Ok(())
}

fn run_check(cmd: CheckCmd) -> Result<Report, ForgeError> {
    let (name, files) = match &cmd {
        CheckCmd::Algebra { files } => ("check algebra", files),
        CheckCmd::Coalgebra { files } => ("check coalgebra", files),
        CheckCmd::Bialgebra { files } => ("check bialgebra", files),
        CheckCmd::Rep { files, .. } => ("check rep", files),
        CheckCmd::Rb { files, .. } => ("check rb", files),
        CheckCmd::QuadraticRb { files, .. } => ("check quadratic-rb", files),
        CheckCmd::Averaging { files, .. } => ("check averaging", files),
        CheckCmd::OOperator { files, .. } => ("check o-operator", files),
    };
    let inputs = read_all(files)?;
    let mut report = report_for(name, &inputs);
    let many = inputs.len() > 1;
    for input in &inputs {
        let doc = &input.doc;
        let alg = doc.to_algebra()?;
        let rep = match &cmd {
            CheckCmd::Algebra { .. } => check_identities(&alg),
            CheckCmd::Coalgebra { .. } => check_coalgebra(&alg.space, &doc.coproducts()?, alg.kind)?,
            CheckCmd::Bialgebra { .. } => check_bialgebra(&BialgebraCandidate::new(alg, doc.coproducts()?)?)?,
            CheckCmd::Rep { rep, .. } => match doc.rep(&alg, rep)? {
                RepSpec::Dpp(r) => check_dpp_rep(&alg, &r)?,
                RepSpec::Poisson(r) => check_poisson_rep(&alg, &r)?,
            },
            CheckCmd::Rb { op, .. } => check_rb(&alg, &operator(doc, &alg, op)?),
            CheckCmd::QuadraticRb { op, .. } => {
                let rb = operator(doc, &alg, op)?;
                check_quadratic_rb(&QuadraticRb { omega: require_form(doc)?, algebra: alg, rb })
            }
            CheckCmd::Averaging { operator, .. } => {
                let n = alg.dim();
                check_averaging(&alg, &doc.operator(operator, Some((n, n)))?.0)?
            }
            CheckCmd::OOperator { operator, rep, .. } => {
                let spec = doc.rep(&alg, rep)?;
                let d = match &spec {
                    RepSpec::Dpp(r) => r.carrier.dim(),
                    RepSpec::Poisson(r) => r.carrier.dim(),
                };
                let (t, _) = doc.operator(operator, Some((alg.dim(), d)))?;
                let cand = match spec {
                    RepSpec::Dpp(rep) => OOperatorCandidate::Dpp { rep, t },
                    RepSpec::Poisson(rep) => OOperatorCandidate::Poisson { rep, t },
                };
                check_o_operator(&alg, &cand)?
            }
        };
        add_for(&mut report, &doc.name, many, rep);
    }
    Ok(report)
}

fn run_ybe(cmd: YbeCmd) -> Result<Report, ForgeError> {
    let (name, args) = match &cmd {
        YbeCmd::Residual(a) => ("ybe residual", a),
        YbeCmd::Classify(a) => ("ybe classify", a),
    };
    let input = read_doc(&args.file)?;
    let alg = input.doc.to_algebra()?;
    let r = input.doc.rmatrix(&args.rmatrix)?;
    let mut report = report_for(name, std::slice::from_ref(&input));
    report.value("rmatrix", &args.rmatrix);
    let poisson = alg.kind == Kind::Poisson;
    if !poisson {
        report.lybe_sign = Some(format!("{:?}", args.lybe_sign).to_lowercase());
        report.value("lybe_sign.default", format!("{DEFAULT_LYBE_SIGN:?}").to_lowercase());
    }
    match (&cmd, poisson) {
        (YbeCmd::Residual(_), false) => {
            let mut rep = IdentityReport::new();
            rep.push(perm_residual(&alg, &r)?.to_result(&alg.space));
            rep.push(leibniz_residual(&alg, &r, args.lybe_sign)?.to_result(&alg.space));
            report.add(rep);
        }
        (YbeCmd::Residual(_), true) => {
            let (a, c) = poisson_residuals(&alg, &r)?;
            let mut rep = IdentityReport::new();
            rep.push(a.to_result(&alg.space));
            rep.push(c.to_result(&alg.space));
            report.add(rep);
        }
        (YbeCmd::Classify(_), false) => {
            let c = classify(&alg, &r, args.lybe_sign)?;
            report.require("dpybe", c.solves_dpybe);
            report.flag("perm", c.solves_perm);
            report.flag("leibniz", c.solves_leibniz);
            report.flag("skew_part_invariant", c.skew_part_invariant);
            report.flag("symmetric", c.symmetric);
            report.flag("quasi", c.quasi_triangular);
            report.flag("triangular", c.triangular);
            report.flag("factorizable", c.factorizable);
            report.value("det_i", &c.det_i);
            if let Some(b) = c.bialgebra {
                report.add(b);
            }
        }
        (YbeCmd::Classify(_), true) => {
            let c = classify_poisson(&alg, &r)?;
            report.require("poiybe", c.solves_poiybe);
            report.flag("skew", c.skew);
            report.flag("sym_part_invariant", c.sym_part_invariant);
            report.flag("triangular", c.triangular);
            report.flag("quasi", c.quasi_triangular);
            if let Some(b) = c.bialgebra {
                report.add(b);
            }
        }
    }
    Ok(report)
}

fn run_build(cmd: BuildCmd) -> Result<Report, ForgeError> {
    match cmd {
        BuildCmd::Double { file, variant, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let cand = BialgebraCandidate::new(alg, input.doc.coproducts()?)?;
            let d = bialgebra_double(&cand, variant)?;
            let omega = dppforge::constructions::double_form(&d.algebra.space, cand.algebra.dim())?;
            let doc = AlgebraDocument::from_algebra(&d.algebra)
                .with_form(&omega)
                .with_coproducts(&d.coproducts)
                .with_rmatrix("r", &d.rtilde);
            let mut report = report_for("build double", std::slice::from_ref(&input));
            report.value("variant", variant);
            report.add(check_bialgebra(&BialgebraCandidate::new(d.algebra.clone(), d.coproducts.clone())?)?);
            write_doc(&mut report, &output, &doc)?;
            Ok(report)
        }
        BuildCmd::Semidirect { file, rep, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let r = match input.doc.rep(&alg, &rep)? {
                RepSpec::Dpp(r) => r,
                RepSpec::Poisson(_) => return Err(ForgeError::Kind("semidirect products are built for dpp algebras".into())),
            };
            let semi = semidirect_product(&alg, &r)?;
            let mut report = report_for("build semidirect", std::slice::from_ref(&input));
            report.add(check_identities(&semi));
            write_doc(&mut report, &output, &AlgebraDocument::from_algebra(&semi))?;
            Ok(report)
        }
        BuildCmd::Tensor { poisson, perm, output } => {
            let inputs = [read_doc(&poisson)?, read_doc(&perm)?];
            let (pdoc, bdoc) = (&inputs[0].doc, &inputs[1].doc);
            let (p, b) = (pdoc.to_algebra()?, bdoc.to_algebra()?);
            let mut report = report_for("build tensor", &inputs);
            let doc = match (pdoc.has_coproducts(), bdoc.form()?) {
                (true, Some(omega)) => {
                    let ind = induced_bialgebra(&BialgebraCandidate::new(p, pdoc.coproducts()?)?, &b, &omega)?;
                    report.add(check_bialgebra(&ind)?);
                    AlgebraDocument::from_algebra(&ind.algebra).with_coproducts(&ind.coproducts)
                }
                _ => {
                    let t = poisson_tensor_perm(&p, &b)?;
                    report.add(check_identities(&t));
                    AlgebraDocument::from_algebra(&t)
                }
            };
            write_doc(&mut report, &output, &doc)?;
            Ok(report)
        }
        BuildCmd::RbDouble { file, op, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let rb = operator(&input.doc, &alg, &op)?;
            let (semi, r) = rb_semidirect_r(&alg, &rb)?;
            let mut report = report_for("build rb-double", std::slice::from_ref(&input));
            let c = classify(&semi, &r, DEFAULT_LYBE_SIGN)?;
            report.require("dpybe", c.solves_dpybe);
            report.flag("quasi", c.quasi_triangular);
            report.flag("factorizable", c.factorizable);
            write_doc(&mut report, &output, &AlgebraDocument::from_algebra(&semi).with_rmatrix("r", &r))?;
            Ok(report)
        }
        BuildCmd::FromQrb { file, op, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let rb = operator(&input.doc, &alg, &op)?;
            let q = QuadraticRb { omega: require_form(&input.doc)?, algebra: alg.clone(), rb };
            let r = if q.rb.weight.is_zero() { triangular_from_qrb0(&q)? } else { qrb_to_rmatrix(&q)? };
            let mut report = report_for("build from-qrb", std::slice::from_ref(&input));
            report.add(check_quadratic_rb(&q));
            let c = classify(&alg, &r, DEFAULT_LYBE_SIGN)?;
            if q.rb.weight.is_zero() {
                report.require("triangular", c.triangular);
            } else {
                report.require("factorizable", c.factorizable);
            }
            write_doc(&mut report, &output, &input.doc.clone().with_rmatrix("r", &r))?;
            Ok(report)
        }
        BuildCmd::ToQrb { file, rmatrix, weight, lybe_sign, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let r = input.doc.rmatrix(&rmatrix)?;
            let q = factorizable_to_qrb(&alg, &r, &weight, lybe_sign)?;
            let mut report = report_for("build to-qrb", std::slice::from_ref(&input));
            report.lybe_sign = Some(format!("{lybe_sign:?}").to_lowercase());
            report.add(check_quadratic_rb(&q));
            report.require("round_trip", qrb_to_rmatrix(&q)? == r);
            let doc = input.doc.clone().with_form(&q.omega).with_operator("R", &q.rb.matrix, Some(weight));
            write_doc(&mut report, &output, &doc)?;
            Ok(report)
        }
        BuildCmd::LiftR { poisson, perm, rmatrix, output } => {
            let (pi, bi) = (read_doc(&poisson)?, read_doc(&perm)?);
            let (p, b) = (pi.doc.to_algebra()?, bi.doc.to_algebra()?);
            let omega = require_form(&bi.doc)?;
            let r = pi.doc.rmatrix(&rmatrix)?;
            let lifted = lift_r(&r, &p, &b, &omega)?;
            let t = poisson_tensor_perm(&p, &b)?;
            let lifted = dppforge::linalg::Tensor2::from_matrix(&t.space, &t.space, lifted.data)?;
            let mut report = report_for("build lift-r", &[pi, bi]);
            report.add(check_quadratic(&b, &omega));
            let c = classify(&t, &lifted, DEFAULT_LYBE_SIGN)?;
            report.flag("dpybe", c.solves_dpybe);
            report.flag("symmetric", c.symmetric);
            report.flag("triangular", c.triangular);
            write_doc(&mut report, &output, &AlgebraDocument::from_algebra(&t).with_rmatrix("r", &lifted))?;
            Ok(report)
        }
        BuildCmd::Descendent { file, op, output } => {
            let input = read_doc(&file)?;
            let alg = input.doc.to_algebra()?;
            let rb = operator(&input.doc, &alg, &op)?;
            let d = descendent(&alg, &rb)?;
            let mut report = report_for("build descendent", std::slice::from_ref(&input));
            report.add(check_descendent(&alg, &rb)?);
            write_doc(&mut report, &output, &AlgebraDocument::from_algebra(&d))?;
            Ok(report)
        }
    }
}

fn parse_label(s: &str) -> Result<LvfLabel, ForgeError> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| ForgeError::input(format!("bad monomial {s:?}; expected i1,i2,s"))))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [i1, i2, sv @ (1 | 2)] => Ok(LvfLabel::new(i1, i2, sv as u8)),
        _ => Err(ForgeError::input(format!("bad monomial {s:?}; expected i1,i2,s with s in {{1,2}}"))),
    }
}

fn graded_source(args: &GradedArgs) -> Result<(Vec<u8>, AlgebraDocument), ForgeError> {
    match &args.poisson {
        Some(p) => {
            let input = read_doc(p)?;
            Ok((input.bytes, input.doc))
        }
        None => {
            let doc = catalog::entry("P3")?.document;
            Ok((doc.to_json().into_bytes(), doc))
        }
    }
}

fn run_graded(cmd: GradedCmd) -> Result<Report, ForgeError> {
    match cmd {
        GradedCmd::Check(args) => {
            let (bytes, doc) = graded_source(&args)?;
            let pb = BialgebraCandidate::new(doc.to_algebra()?, doc.coproducts()?)?;
            let r = completed_tensor_bialgebra(&pb, &args.params())?;
            let mut report = Report::new("graded check", &[&bytes]);
            report.value("box", args.box_m);
            report.value("window", args.window);
            report.value("mode", args.mode);
            report.value("form_offset", r.form_offset);
            report.value("dropped_out_of_window", r.dropped);
            report.add(r.report);
            Ok(report)
        }
        GradedCmd::Nu { args, label, element } => {
            let params = args.params();
            params.validate()?;
            let b = parse_label(&label)?;
            let (bytes, doc) = graded_source(&args)?;
            let mut report = Report::new("graded nu", &[&bytes, label.as_bytes()]);
            match element {
                None => {
                    for ((u, v), c) in nu_omega(b, args.box_m).terms {
                        report.value(&format!("nu{b}[{u}⊗{v}]"), c);
                    }
                }
                Some(e) => {
                    let pb = BialgebraCandidate::new(doc.to_algebra()?, doc.coproducts()?)?;
                    let p = pb.algebra.space.index_of(&e).ok_or_else(|| ForgeError::input(format!("unknown label {e:?}")))?;
                    let labels = &pb.algebra.space.labels;
                    for (name, role) in [("nu", Role::Circ), ("theta", Role::Star)] {
                        for (((i, u), (j, v)), c) in tensor_coproduct(&pb, role, p, b, &params)?.terms {
                            report.value(&format!("{name}({e}{b})[{}{u}⊗{}{v}]", labels[i], labels[j]), c);
                        }
                    }
                }
            }
            Ok(report)
        }
        GradedCmd::Lift { args, rmatrix } => {
            let params = args.params();
            let (bytes, doc) = graded_source(&args)?;
            let pb = BialgebraCandidate::new(doc.to_algebra()?, doc.coproducts()?)?;
            let r = doc.rmatrix(&rmatrix)?;
            let rhat = lift_r_truncated(&r, &params)?;
            let mut report = Report::new("graded lift", &[&bytes]);
            report.lybe_sign = Some(format!("{DEFAULT_LYBE_SIGN:?}").to_lowercase());
            report.value("window_terms", rhat.terms.len());
            report.add(check_lift_truncated(&pb, &rhat, &params, DEFAULT_LYBE_SIGN)?);
            Ok(report)
        }
    }
}

fn run_catalog(cmd: CatalogCmd) -> Result<(Report, Option<String>), ForgeError> {
    match cmd {
        CatalogCmd::List => {
            let mut report = Report::new("catalog list", &[]);
            for e in catalog::entries() {
                report.value(e.name, e.summary);
            }
            let lvf = catalog::lvf_family();
            report.value(lvf.name, lvf.summary);
            Ok((report, None))
        }
        CatalogCmd::Show { name } => {
            if name.eq_ignore_ascii_case("LVF") {
                let lvf = catalog::lvf_family();
                let mut report = Report::new("catalog show LVF", &[]);
                report.value("summary", lvf.summary);
                report.value("product", lvf.product);
                report.value("form", lvf.form);
                report.value("coproduct", lvf.coproduct);
                report.value("box", lvf.params.box_m);
                report.value("window", lvf.params.window);
                report.value("form_offset", lvf.form_offset);
                report.add(lvf.run_checks()?);
                return Ok((report, None));
            }
            let e = catalog::entry(&name)?;
            let json = e.document.to_json();
            let mut report = Report::new(&format!("catalog show {}", e.name), &[json.as_bytes()]);
            report.value("summary", e.summary);
            report.add(e.run_checks()?);
            report.references = e.compare()?;
            report.attach("document", &e.document);
            Ok((report, None))
        }
        CatalogCmd::Export { name, output } => {
            let e = catalog::entry(&name)?;
            let json = e.document.to_json() + "\n";
            let mut report = Report::new(&format!("catalog export {}", e.name), &[json.as_bytes()]);
            match output {
                Some(path) => {
                    write_doc(&mut report, &path, &e.document)?;
                    Ok((report, None))
                }
                None => Ok((report, Some(json))),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Option<String>), ForgeError> {
    match cli.command {
        Command::Check(c) => run_check(c).map(|r| (r, None)),
        Command::Ybe(c) => run_ybe(c).map(|r| (r, None)),
        Command::Build(c) => run_build(c).map(|r| (r, None)),
        Command::Graded(c) => run_graded(c).map(|r| (r, None)),
        Command::Catalog(c) => run_catalog(c),
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok((_, Some(raw))) => {
            print!("{raw}");
            ExitCode::SUCCESS
        }
        Ok((report, None)) => {
            match format {
                OutputFormat::Json => println!("{}", report.to_json()),
                OutputFormat::Text => print!("{}", report.to_text()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (ForgeError::Precondition { .. } | ForgeError::Singular(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
