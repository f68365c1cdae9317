//! Built-in example algebras, their attached data, and reference-table diffs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_identities, poisson_as_dpp, Kind, Role, StructureAlgebra};
use crate::coalgebra::{check_bialgebra, check_coalgebra, BialgebraCandidate, Coproducts};
use crate::constructions::{
    averaging_to_dpp, bialgebra_double, check_averaging, check_o_operator, check_sharp_factorization, double_form,
    induced_bialgebra, kappa, lift_r, nu_omega, Double, OOperatorCandidate,
};
use crate::format::{AlgebraDocument, RepSpec};
use crate::graded::{check_completed_coalgebra, check_lvf_structure, infer_form_offset, GradedParams, NuRule, DEFAULT_BOX};
use crate::linalg::{format_terms, sharp, BasisSpace, BilinearForm, Matrix, Tensor2};
use crate::rational::{q, Rational};
use crate::report::{IdentityReport, IdentityResult, Witness};
use crate::rep::{check_dpp_rep, coregular_rep, regular_rep, CoregularVariant};
use crate::rota_baxter::{
    check_quadratic_rb, factorizable_to_qrb, qrb_to_rmatrix, triangular_from_qrb0, QuadraticRb, RbOperator,
};
use crate::ybe::{classify, classify_poisson, coboundary, DEFAULT_LYBE_SIGN};
use crate::ForgeError;

fn build(name: &str, kind: Kind, labels: &[&str], entries: &[(Role, usize, usize, usize, i64)]) -> StructureAlgebra {
    let space = BasisSpace::from_strs(name, labels);
    let mut alg = StructureAlgebra::zero(name, kind, space);
    for &(role, i, j, k, c) in entries {
        alg.set_entry(role, i, j, k, &q(c));
    }
    alg
}

/// `e2∘e2 = e1 = e2∗e2`.
pub fn a2() -> StructureAlgebra {
    build("A2", Kind::Dpp, &["e1", "e2"], &[(Role::Circ, 1, 1, 0, 1), (Role::Star, 1, 1, 0, 1)])
}

/// `e1e1 = e2`, `[e1,e3] = e3`.
pub fn p3() -> StructureAlgebra {
    build(
        "P3",
        Kind::Poisson,
        &["e1", "e2", "e3"],
        &[(Role::Dot, 0, 0, 1, 1), (Role::Bracket, 0, 2, 2, 1), (Role::Bracket, 2, 0, 2, -1)],
    )
}

/// `r = e2⊗e3 − e3⊗e2` on P3.
pub fn p3_r() -> Tensor2 {
    let s = p3().space;
    Tensor2::from_matrix(&s, &s, Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]])).unwrap()
}

/// P3 with the coboundary coproducts of `p3_r`.
pub fn p3_bialgebra() -> BialgebraCandidate {
    let p = p3();
    let cops = coboundary(&p, &p3_r()).unwrap();
    BialgebraCandidate::new(p, cops).unwrap()
}

/// Projection of P3 onto `span{e1, e2}` along the ideal `span{e3}`: an averaging operator.
pub fn p3_averaging() -> Matrix {
    Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])
}

/// `x1∘x1 = x1`, `x1∘x2 = x2`, with `ω(x1,x2) = 1 = −ω(x2,x1)`.
pub fn b2() -> (StructureAlgebra, BilinearForm) {
    let b = build("B2", Kind::Perm, &["x1", "x2"], &[(Role::Circ, 0, 0, 0, 1), (Role::Circ, 0, 1, 1, 1)]);
    let w = BilinearForm::new(&b.space, Matrix::from_int_rows(&[&[0, 1], &[-1, 0]])).unwrap();
    (b, w)
}

/// Re-reads a double through a relabeled document so all parts share one basis space.
fn renamed_double(name: &str, d: &Double, f: impl Fn(&str) -> String) -> Double {
    let doc = AlgebraDocument::from_algebra(&d.algebra)
        .with_coproducts(&d.coproducts)
        .with_rmatrix("rtilde", &d.rtilde)
        .relabel(f);
    let doc = AlgebraDocument { name: name.to_string(), ..doc };
    Double {
        algebra: doc.to_algebra().unwrap(),
        rtilde: doc.rmatrix("rtilde").unwrap(),
        coproducts: doc.coproducts().unwrap(),
    }
}

/// The double of A2 (zero coproducts) on `{e1, e2, f1, f2}`, with `r̃` and its coboundary coproducts.
pub fn double_a2() -> Double {
    let d = bialgebra_double(&BialgebraCandidate::with_zero_coproducts(a2()), CoregularVariant::Signed).unwrap();
    renamed_double("DOUBLE_A2", &d, |l| match l.strip_suffix('*') {
        Some(base) => base.replacen('e', "f", 1),
        None => l.to_string(),
    })
}

/// The pairing form `𝓑` on a double of an `n`-dimensional algebra.
pub fn double_form_of(d: &Double) -> BilinearForm {
    double_form(&d.algebra.space, d.algebra.dim() / 2).unwrap()
}

/// `R = id ⊕ 0` of weight −1 on DOUBLE_A2.
pub fn double_a2_rb() -> RbOperator {
    let m = Matrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    RbOperator::new(&double_a2().algebra, m, q(-1)).unwrap()
}

/// `R(f1) = e1`, zero elsewhere: a weight-zero Rota-Baxter operator, skew for `𝓑`.
pub fn double_a2_rb0() -> RbOperator {
    let m = Matrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    RbOperator::new(&double_a2().algebra, m, Rational::zero()).unwrap()
}

/// `P3 ⊗ B2` with the coproducts induced from the triangular P3 bialgebra.
pub fn pb6() -> BialgebraCandidate {
    let (b, w) = b2();
    let ind = induced_bialgebra(&p3_bialgebra(), &b, &w).unwrap();
    let doc = AlgebraDocument::from_algebra(&ind.algebra).with_coproducts(&ind.coproducts);
    let doc = AlgebraDocument { name: "PB6".into(), ..doc };
    BialgebraCandidate::new(doc.to_algebra().unwrap(), doc.coproducts().unwrap()).unwrap()
}

/// `r̂` on PB6, lifted from `p3_r` with the ω-dual basis of B2.
pub fn pb6_rhat() -> Tensor2 {
    let (b, w) = b2();
    let lifted = lift_r(&p3_r(), &p3(), &b, &w).unwrap();
    let space = pb6().algebra.space;
    Tensor2::from_matrix(&space, &space, lifted.data).unwrap()
}

/// The double of the PB6 bialgebra (12-dimensional).
pub fn double_pb6() -> Double {
    let d = bialgebra_double(&pb6(), CoregularVariant::Signed).unwrap();
    renamed_double("DOUBLE_PB6", &d, str::to_string)
}

fn wrap(label: &str) -> String {
    if label.contains('⊗') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// `x·y` for basis labels, rendered as a linear combination.
pub fn render_product(alg: &StructureAlgebra, role: Role, x: &str, y: &str) -> Result<String, ForgeError> {
    let (i, j) = (index(&alg.space, x)?, index(&alg.space, y)?);
    let v = alg.product(role).basis(i, j).to_vec();
    Ok(format_terms(alg.space.labels.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c))))
}

/// A 2-tensor coefficient matrix rendered as `Σ c·a⊗b`.
pub fn render_tensor(space: &BasisSpace, m: &Matrix) -> String {
    let mut terms = Vec::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j);
            if !c.is_zero() {
                terms.push((format!("{}⊗{}", wrap(&space.labels[i]), wrap(&space.labels[j])), c.clone()));
            }
        }
    }
    format_terms(terms)
}

/// The image of a basis element under a coproduct.
pub fn render_coproduct(cops: &Coproducts, role: Role, x: &str) -> Result<String, ForgeError> {
    let c = cops.get(&role).ok_or_else(|| ForgeError::input(format!("no {} coproduct", role.name())))?;
    Ok(render_tensor(&c.space, &c.images[index(&c.space, x)?]))
}

fn index(space: &BasisSpace, label: &str) -> Result<usize, ForgeError> {
    let l = label.trim();
    let l = l.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(l);
    space.index_of(l).ok_or_else(|| ForgeError::input(format!("unknown basis label {label:?} in {}", space.name)))
}

/// Parses a rendered linear combination such as `2·e1 - (e2⊗x1)⊗(e3⊗x2)` into label coefficients.
pub fn parse_terms(s: &str) -> Result<BTreeMap<String, Rational>, ForgeError> {
    let mut out: BTreeMap<String, Rational> = BTreeMap::new();
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    let spaced = s.replace(" - ", " + -");
    for part in spaced.split(" + ") {
        let part = part.trim();
        let (neg, body) = match part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, part),
        };
        let (c, label) = match body.split_once('·') {
            Some((c, l)) => (c.parse::<Rational>().map_err(|_| ForgeError::input(format!("bad coefficient in {part:?}")))?, l),
            None => (Rational::one(), body),
        };
        let c = if neg { -c } else { c };
        *out.entry(label.to_string()).or_default() += &c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// A value printed in a reference table, to be compared with the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reference {
    pub item: String,
    pub printed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of comparing one reference value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceDiff {
    pub item: String,
    pub printed: String,
    pub computed: String,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn reference(item: &str, printed: &str) -> Reference {
    Reference { item: item.into(), printed: printed.into(), note: None }
}

fn reference_note(item: &str, printed: &str, note: &str) -> Reference {
    Reference { item: item.into(), printed: printed.into(), note: Some(note.into()) }
}

/// A built-in example: its document, the 2-tensors its reference items mention, and reference values.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub document: AlgebraDocument,
    /// Named 2-tensors for items such as `r̂♯(ξ2⊗η1)`; the first one is used by `𝓘(..)`.
    pub tensors: Vec<(&'static str, Tensor2)>,
    pub references: Vec<Reference>,
}

fn result_flag(id: &str, ok: bool, note: Option<String>) -> IdentityResult {
    let failing = if ok { vec![] } else { vec![Witness { args: vec![], residual: vec![] }] };
    let mut r = IdentityResult::from_failures(id, 1, failing);
    r.note = note;
    r
}

fn prefixed(prefix: &str, rep: IdentityReport) -> IdentityReport {
    IdentityReport {
        results: rep
            .results
            .into_iter()
            .map(|mut r| {
                r.id = format!("{prefix}.{}", r.id);
                r
            })
            .collect(),
    }
}

/// Strips the dual marker and maps `ξi → ei`, `ηi → xi`.
fn dual_argument(arg: &str) -> String {
    let a = arg.trim();
    let a = a.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(a);
    a.replace('*', "").replace('ξ', "e").replace('η', "x")
}

impl CatalogEntry {
    pub fn algebra(&self) -> Result<StructureAlgebra, ForgeError> {
        self.document.to_algebra()
    }

    fn tensor(&self, symbol: &str) -> Result<&Tensor2, ForgeError> {
        self.tensors
            .iter()
            .find(|(s, _)| *s == symbol)
            .map(|(_, t)| t)
            .ok_or_else(|| ForgeError::input(format!("{} has no tensor {symbol:?}", self.name)))
    }

    /// Evaluates a reference item: `x∘y`, `x∗y`, `ν(x)`, `ϑ(x)`, `T♯(ξ)`, `τ(T)♯(ξ)`, `𝓘(ξ)` or a tensor name.
    pub fn evaluate(&self, item: &str) -> Result<String, ForgeError> {
        let alg = self.algebra()?;
        let poisson = alg.kind == Kind::Poisson;
        for (sym, role) in [("ν(", if poisson { Role::Dot } else { Role::Circ }), ("ϑ(", if poisson { Role::Bracket } else { Role::Star })] {
            if let Some(rest) = item.strip_prefix(sym).and_then(|r| r.strip_suffix(')')) {
                return render_coproduct(&self.document.coproducts()?, role, rest);
            }
        }
        if let Some(rest) = item.strip_prefix("𝓘(").and_then(|r| r.strip_suffix(')')) {
            let t = &self.tensors.first().ok_or_else(|| ForgeError::input("no tensor for 𝓘"))?.1;
            let i = index(&t.left, &dual_argument(rest))?;
            let v: Vec<Rational> = (0..t.right.dim()).map(|j| t.get(i, j) - t.get(j, i)).collect();
            return Ok(crate::linalg::format_vector(&t.right, &v));
        }
        if let Some((head, rest)) = item.split_once("♯(") {
            let arg = rest.strip_suffix(')').ok_or_else(|| ForgeError::input(format!("bad item {item:?}")))?;
            let (sym, twisted) = match head.strip_prefix("τ(").and_then(|h| h.strip_suffix(')')) {
                Some(inner) => (inner, true),
                None => (head, false),
            };
            let t = self.tensor(sym)?;
            let i = index(&t.left, &dual_argument(arg))?;
            let v: Vec<Rational> = (0..t.right.dim()).map(|j| if twisted { t.get(j, i) } else { t.get(i, j) }.clone()).collect();
            return Ok(crate::linalg::format_vector(&t.right, &v));
        }
        if let Ok(t) = self.tensor(item) {
            return Ok(render_tensor(&t.left, &t.data));
        }
        for (op, role) in [('∘', Role::Circ), ('∗', Role::Star), ('·', Role::Dot)] {
            if !alg.kind.roles().contains(&role) {
                continue;
            }
            if let Some((x, y)) = split_top(item, op) {
                return render_product(&alg, role, x, y);
            }
        }
        Err(ForgeError::input(format!("cannot evaluate {item:?}")))
    }

    /// Every reference value next to the computed one.
    pub fn compare(&self) -> Result<Vec<ReferenceDiff>, ForgeError> {
        self.references
            .iter()
            .map(|r| {
                let computed = self.evaluate(&r.item)?;
                let matches = parse_terms(&computed)? == parse_terms(&r.printed)?;
                Ok(ReferenceDiff {
                    item: r.item.clone(),
                    printed: r.printed.clone(),
                    computed,
                    matches,
                    note: r.note.clone(),
                })
            })
            .collect()
    }

    /// The checks this entry is expected to pass.
    pub fn run_checks(&self) -> Result<IdentityReport, ForgeError> {
        let alg = self.algebra()?;
        let mut rep = prefixed("algebra", check_identities(&alg));
        if self.document.has_coproducts() {
            let cops = self.document.coproducts()?;
            rep.extend(prefixed("bialgebra", check_bialgebra(&BialgebraCandidate::new(alg.clone(), cops)?)?));
        }
        match self.name {
            "A2" => {
                for name in ["regular", "coregular-signed"] {
                    if let RepSpec::Dpp(r) = self.document.rep(&alg, name)? {
                        rep.extend(prefixed(&format!("rep.{name}"), check_dpp_rep(&alg, &r)?));
                    }
                }
            }
            "DOUBLE_A2" | "DOUBLE_PB6" => {
                let r = self.document.rmatrix("r")?;
                let c = classify(&alg, &r, DEFAULT_LYBE_SIGN)?;
                rep.push(result_flag("rtilde.quasi-triangular", c.quasi_triangular, None));
                rep.push(result_flag("rtilde.factorizable", c.factorizable, Some(format!("det 𝓘 = {}", c.det_i))));
                let weight = if self.name == "DOUBLE_A2" { q(-1) } else { q(1) };
                let qrb = factorizable_to_qrb(&alg, &r, &weight, DEFAULT_LYBE_SIGN)?;
                rep.extend(prefixed("qrb.from-rtilde", check_quadratic_rb(&qrb)));
                rep.push(result_flag("qrb.round-trip", qrb_to_rmatrix(&qrb)? == r, None));
                if self.name == "DOUBLE_A2" {
                    let omega = self.document.form()?.ok_or_else(|| ForgeError::input("missing form"))?;
                    for (name, id) in [("rb", "qrb.weight-minus-one"), ("rb0", "qrb.weight-zero")] {
                        let (m, w) = self.document.operator(name, Some((alg.dim(), alg.dim())))?;
                        let rb = RbOperator::new(&alg, m, w.unwrap_or_default())?;
                        rep.extend(prefixed(id, check_quadratic_rb(&QuadraticRb { algebra: alg.clone(), omega: omega.clone(), rb })));
                    }
                    let rw = self.document.rmatrix("r_omega")?;
                    rep.push(result_flag("r_omega.triangular", classify(&alg, &rw, DEFAULT_LYBE_SIGN)?.triangular, None));
                }
            }
            "P3" => {
                let r = self.document.rmatrix("r")?;
                rep.push(result_flag("r.triangular", classify_poisson(&alg, &r)?.triangular, None));
                let (alpha, _) = self.document.operator("averaging", Some((3, 3)))?;
                rep.extend(prefixed("averaging", check_averaging(&alg, &alpha)?));
                rep.extend(prefixed("averaging.induced", check_identities(&averaging_to_dpp(&alg, &alpha)?)));
                rep.extend(prefixed("as-dpp", check_identities(&poisson_as_dpp(&alg)?)));
            }
            "B2" => {
                let omega = self.document.form()?.ok_or_else(|| ForgeError::input("missing form"))?;
                rep.push(result_flag("form.skew", omega.is_skew(), None));
                let mut cops = Coproducts::new();
                cops.insert(Role::Circ, nu_omega(&alg, &omega)?);
                rep.extend(prefixed("nu", check_coalgebra(&alg.space, &cops, Kind::Perm)?));
            }
            "PB6" => {
                let r = self.document.rmatrix("r")?;
                let c = classify(&alg, &r, DEFAULT_LYBE_SIGN)?;
                rep.push(result_flag("rhat.triangular", c.triangular, None));
                rep.push(result_flag("rhat.coboundary", c.coproducts == self.document.coproducts()?, None));
                let t = sharp(&r)?.matrix;
                let o = OOperatorCandidate::Dpp { rep: coregular_rep(&alg, CoregularVariant::Signed), t };
                rep.extend(prefixed("rhat.sharp", check_o_operator(&alg, &o)?));
                let (b, w) = b2();
                rep.push(result_flag("rhat.sharp.factorized", check_sharp_factorization(&p3_r(), &p3(), &b, &w)?, None));
            }
            _ => {}
        }
        Ok(rep)
    }
}

/// Splits `x op y` at an operator outside parentheses.
fn split_top(item: &str, op: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in item.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == op && depth == 0 => return Some((&item[..i], &item[i + op.len_utf8()..])),
            _ => {}
        }
    }
    None
}

fn a2_entry() -> CatalogEntry {
    let alg = a2();
    let document = AlgebraDocument::from_algebra(&alg)
        .with_rep("regular", &RepSpec::Dpp(regular_rep(&alg)))
        .with_rep("coregular-signed", &RepSpec::Dpp(coregular_rep(&alg, CoregularVariant::Signed)));
    CatalogEntry {
        name: "A2",
        summary: "2-dimensional DPP algebra with e2∘e2 = e1 = e2∗e2",
        document,
        tensors: vec![],
        references: vec![reference("e2∘e2", "e1"), reference("e2∗e2", "e1"), reference("e1∘e2", "0")],
    }
}

fn double_a2_entry() -> CatalogEntry {
    let d = double_a2();
    let omega = double_form_of(&d);
    let rb = double_a2_rb();
    let rb0 = double_a2_rb0();
    let q0 = QuadraticRb { algebra: d.algebra.clone(), omega: omega.clone(), rb: rb0.clone() };
    let r_omega = triangular_from_qrb0(&q0).expect("weight-zero operator is quadratic");
    let document = AlgebraDocument::from_algebra(&d.algebra)
        .with_form(&omega)
        .with_coproducts(&d.coproducts)
        .with_rmatrix("r", &d.rtilde)
        .with_rmatrix("r_omega", &r_omega)
        .with_operator("rb", &rb.matrix, Some(rb.weight.clone()))
        .with_operator("rb0", &rb0.matrix, Some(rb0.weight.clone()));
    let table = "the printed table does not follow from e2∘e2 = e1 = e2∗e2";
    let sign = "τ(r̃)♯(fi*) = ei for r̃ = Σ ei⊗fi";
    CatalogEntry {
        name: "DOUBLE_A2",
        summary: "A2 ⋉ A2* with r̃ = e1⊗f1 + e2⊗f2, a factorizable DPP bialgebra",
        document,
        tensors: vec![("r̃", d.rtilde.clone())],
        references: vec![
            reference_note("e2∘e2", "e2", table),
            reference_note("e2∘f2", "-f2", table),
            reference_note("f2∘e2", "-f2", table),
            reference_note("e2∗e2", "e2", table),
            reference_note("e2∗f2", "-f2", table),
            reference_note("f2∗e2", "-f2", table),
            reference("r̃", "e1⊗f1 + e2⊗f2"),
            reference_note("ν(e2)", "-2·e2⊗f2", table),
            reference_note("ν(f2)", "f2⊗f2", table),
            reference_note("ϑ(f2)", "f2⊗f2", table),
            reference_note("ϑ(e2)", "e2⊗f2", table),
            reference("r̃♯(e1*)", "f1"),
            reference("r̃♯(e2*)", "f2"),
            reference_note("τ(r̃)♯(f1*)", "-e1", sign),
            reference_note("τ(r̃)♯(f2*)", "-e2", sign),
            reference("𝓘(e1*)", "f1"),
            reference("𝓘(e2*)", "f2"),
            reference_note("𝓘(f1*)", "e1", sign),
            reference_note("𝓘(f2*)", "e2", sign),
        ],
    }
}

fn p3_entry() -> CatalogEntry {
    let pb = p3_bialgebra();
    let document = AlgebraDocument::from_algebra(&pb.algebra)
        .with_coproducts(&pb.coproducts)
        .with_rmatrix("r", &p3_r())
        .with_operator("averaging", &p3_averaging(), None);
    CatalogEntry {
        name: "P3",
        summary: "3-dimensional Poisson algebra e1e1 = e2, [e1,e3] = e3, with triangular r = e2⊗e3 − e3⊗e2",
        document,
        tensors: vec![("r", p3_r())],
        references: vec![
            reference("e1·e1", "e2"),
            reference("ϑ(e1)", "e2⊗e3 - e3⊗e2"),
            reference("ϑ(e2)", "0"),
            reference("ν(e1)", "0"),
            reference("r♯(ξ1)", "0"),
            reference("r♯(ξ2)", "e3"),
            reference("r♯(ξ3)", "-e2"),
        ],
    }
}

fn b2_entry() -> CatalogEntry {
    let (b, w) = b2();
    let k = kappa(&b, &w).expect("ω is nondegenerate");
    let document = AlgebraDocument::from_algebra(&b).with_form(&w).with_rmatrix("kappa", &k);
    CatalogEntry {
        name: "B2",
        summary: "2-dimensional quadratic perm algebra x1∘x1 = x1, x1∘x2 = x2, ω(x1,x2) = 1",
        document,
        tensors: vec![("κ", k)],
        references: vec![
            reference("κ", "x2⊗x1 - x1⊗x2"),
            reference_note("κ♯(η1)", "-x2", "printed under the name r♯"),
            reference_note("κ♯(η2)", "x1", "printed under the name r♯"),
        ],
    }
}

fn pb6_entry() -> CatalogEntry {
    let pb = pb6();
    let rhat = pb6_rhat();
    let document = AlgebraDocument::from_algebra(&pb.algebra).with_coproducts(&pb.coproducts).with_rmatrix("r", &rhat);
    let (b, w) = b2();
    let product = "the B2 factor of x1∘x1 = x1 puts e1e1 = e2 in the P factor";
    CatalogEntry {
        name: "PB6",
        summary: "P3 ⊗ B2 with the coproducts induced from P3's triangular bialgebra and symmetric r̂",
        document,
        tensors: vec![
            ("r̂", rhat),
            ("r", p3_r()),
            ("κ", kappa(&b, &w).expect("ω is nondegenerate")),
        ],
        references: vec![
            reference("ϑ(e1⊗x1)", "(e2⊗x2)⊗(e3⊗x1) - (e3⊗x2)⊗(e2⊗x1)"),
            reference_note("ϑ(e1⊗x1)", "(e2⊗x2)⊗(e3⊗x2) - (e3⊗x2)⊗(e2⊗x2)", "this is the value of ϑ(e1⊗x2)"),
            reference("ϑ(e1⊗x2)", "(e2⊗x2)⊗(e3⊗x2) - (e3⊗x2)⊗(e2⊗x2)"),
            reference_note("(e1⊗x1)∘(e1⊗x1)", "e1⊗x1", product),
            reference_note("(e1⊗x1)∘(e1⊗x2)", "e1⊗x2", product),
            reference("(e1⊗x1)∗(e3⊗x1)", "e3⊗x1"),
            reference("(e3⊗x1)∗(e1⊗x2)", "-e3⊗x2"),
            reference("(e1⊗x1)∗(e3⊗x2)", "e3⊗x2"),
            reference_note("(e3⊗x1)∗(e1⊗x1)", "-e3⊗x1", "printed as a repeat of (e3⊗x1)∗(e1⊗x2)"),
            reference("r̂", "(e2⊗x2)⊗(e3⊗x1) + (e3⊗x1)⊗(e2⊗x2) - (e2⊗x1)⊗(e3⊗x2) - (e3⊗x2)⊗(e2⊗x1)"),
            reference("r♯(ξ1)", "0"),
            reference("r♯(ξ2)", "e3"),
            reference("r♯(ξ3)", "-e2"),
            reference("κ♯(η1)", "-x2"),
            reference("κ♯(η2)", "x1"),
            reference("r̂♯(ξ2⊗η1)", "-e3⊗x2"),
            reference("r̂♯(ξ2⊗η2)", "e3⊗x1"),
            reference("r̂♯(ξ3⊗η1)", "e2⊗x2"),
            reference("r̂♯(ξ3⊗η2)", "-e2⊗x1"),
        ],
    }
}

fn double_pb6_entry() -> CatalogEntry {
    let d = double_pb6();
    let document = AlgebraDocument::from_algebra(&d.algebra)
        .with_form(&double_form_of(&d))
        .with_coproducts(&d.coproducts)
        .with_rmatrix("r", &d.rtilde);
    CatalogEntry {
        name: "DOUBLE_PB6",
        summary: "the 12-dimensional double of PB6 with its canonical r̃, factorizable",
        document,
        tensors: vec![("r̃", d.rtilde.clone())],
        references: vec![],
    }
}

/// Every built-in entry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![a2_entry(), double_a2_entry(), p3_entry(), b2_entry(), pb6_entry(), double_pb6_entry()]
}

pub fn entry(name: &str) -> Result<CatalogEntry, ForgeError> {
    let builders: [(&str, fn() -> CatalogEntry); 6] = [
        ("A2", a2_entry),
        ("DOUBLE_A2", double_a2_entry),
        ("P3", p3_entry),
        ("B2", b2_entry),
        ("PB6", pb6_entry),
        ("DOUBLE_PB6", double_pb6_entry),
    ];
    builders
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, f)| f())
        .ok_or_else(|| ForgeError::input(format!("no catalog entry named {name:?}")))
}

pub fn names() -> Vec<&'static str> {
    vec!["A2", "DOUBLE_A2", "P3", "B2", "PB6", "DOUBLE_PB6", "LVF"]
}

/// The infinite graded perm algebra of Laurent vector fields, described by its evaluation parameters.
#[derive(Clone, Debug, Serialize)]
pub struct LvfFamily {
    pub name: &'static str,
    pub summary: &'static str,
    pub product: &'static str,
    pub form: &'static str,
    pub coproduct: &'static str,
    pub params: GradedParams,
    pub form_offset: i64,
    pub rule: NuRule,
}

pub fn lvf_family() -> LvfFamily {
    LvfFamily {
        name: "LVF",
        summary: "Laurent vector fields x1^i1 x2^i2 ∂s, graded by i1 + i2 + 1, with ω-induced coproduct",
        product: "(i,s)∘(j,t) = (i + j + e_s, t)",
        form: "ω((i,2),(−i,1)) = 1 = −ω((−i,1),(i,2))",
        coproduct: "ν(b) = Σ_u (u,1)⊗(b − u + (0,1)) − (u,2)⊗(b − u + (1,0))",
        params: GradedParams::default(),
        form_offset: infer_form_offset(DEFAULT_BOX).expect("form is homogeneous"),
        rule: NuRule::default(),
    }
}

impl LvfFamily {
    /// Structure checks and completed coalgebra axioms on the default box.
    pub fn run_checks(&self) -> Result<IdentityReport, ForgeError> {
        let mut rep = check_lvf_structure(self.params.box_m, self.rule);
        rep.extend(check_completed_coalgebra(&self.params, self.rule)?);
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_terms_normalizes() {
        let a = parse_terms("-e3⊗x2 + 2·(e1⊗x1)⊗(e2⊗x2) - 1/2·e1").unwrap();
        assert_eq!(a["e3⊗x2"], q(-1));
        assert_eq!(a["(e1⊗x1)⊗(e2⊗x2)"], q(2));
        assert_eq!(a["e1"], Rational::new(-1, 2));
        assert!(parse_terms("0").unwrap().is_empty());
    }

    #[test]
    fn every_entry_passes_its_checks() {
        for e in entries() {
            let rep = e.run_checks().unwrap();
            assert!(rep.passed(), "{}\n{}", e.name, rep.to_text());
        }
        let lvf = lvf_family();
        assert_eq!(lvf.form_offset, -2);
        assert!(lvf.run_checks().unwrap().passed());
    }

    #[test]
    fn pb6_rhat_is_not_factorizable_but_double_is() {
        let c = classify(&pb6().algebra, &pb6_rhat(), DEFAULT_LYBE_SIGN).unwrap();
        assert!(c.symmetric && c.i.is_zero() && !c.factorizable);
        let rep = entry("DOUBLE_PB6").unwrap().run_checks().unwrap();
        assert!(rep.get("rtilde.factorizable").unwrap().passed());
    }

    #[test]
    fn reference_diffs() {
        let mismatched = |name: &str| -> Vec<String> {
            entry(name).unwrap().compare().unwrap().into_iter().filter(|d| !d.matches).map(|d| d.item).collect()
        };
        assert!(mismatched("A2").is_empty());
        assert!(mismatched("P3").is_empty());
        assert!(mismatched("B2").is_empty());
        assert_eq!(
            mismatched("DOUBLE_A2"),
            [
                "e2∘e2", "e2∘f2", "f2∘e2", "e2∗e2", "e2∗f2", "f2∗e2", "ν(e2)", "ν(f2)", "ϑ(f2)", "ϑ(e2)",
                "τ(r̃)♯(f1*)", "τ(r̃)♯(f2*)", "𝓘(f1*)", "𝓘(f2*)"
            ]
        );
        assert_eq!(mismatched("PB6"), ["ϑ(e1⊗x1)", "(e1⊗x1)∘(e1⊗x1)", "(e1⊗x1)∘(e1⊗x2)"]);
        let d = entry("DOUBLE_A2").unwrap();
        assert_eq!(d.evaluate("e2∘f1").unwrap(), "f2");
        assert_eq!(d.evaluate("ν(f1)").unwrap(), "f2⊗f2");
        assert_eq!(d.evaluate("τ(r̃)♯(f1*)").unwrap(), "e1");
        assert_eq!(d.evaluate("𝓘(f1*)").unwrap(), "-e1");
        let p = entry("PB6").unwrap();
        assert_eq!(p.evaluate("(e1⊗x1)∘(e1⊗x1)").unwrap(), "e2⊗x1");
    }

    #[test]
    fn documents_round_trip() {
        for e in entries() {
            let back = AlgebraDocument::parse(&e.document.to_json()).unwrap();
            assert_eq!(back, e.document);
        }
    }
}
