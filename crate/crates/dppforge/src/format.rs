//! JSON documents for algebras and their attached data, and the report format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Kind, Product, Role, StructureAlgebra};
use crate::catalog::ReferenceDiff;
use crate::coalgebra::{coproduct_name, coproduct_role, Coproduct, Coproducts};
use crate::linalg::{BasisSpace, BilinearForm, Matrix, Tensor2};
use crate::rational::Rational;
use crate::rep::{
    coregular_rep, poisson_coregular_rep, poisson_regular_rep, regular_rep, CoregularVariant, DppRep, PoissonRep,
};
use crate::report::{IdentityReport, IdentityResult};
use crate::ForgeError;

pub const TOOL_NAME: &str = "forge";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub row: String,
    pub col: String,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub left: String,
    pub right: String,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductEntry {
    pub element: String,
    pub terms: Vec<TensorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorEntry {
    pub matrix: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Rational>,
}

/// A representation: carrier labels and, per action family, one matrix per algebra basis element.
/// Families are `l`, `r`, `ll`, `rr` for DPP algebras and `mu`, `rho` for Poisson algebras;
/// omitted elements act by zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEntry {
    pub carrier: Vec<String>,
    pub actions: BTreeMap<String, BTreeMap<String, Vec<Vec<Rational>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub kind: Kind,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: BTreeMap<String, Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<FormEntry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coproducts: BTreeMap<String, Vec<CoproductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<Vec<TensorTerm>>,
    /// Further named 2-tensors, selected with `--rmatrix NAME`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rmatrices: BTreeMap<String, Vec<TensorTerm>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, OperatorEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepEntry>,
}

/// A representation read from a document, typed by algebra kind.
#[derive(Clone, Debug)]
pub enum RepSpec {
    Dpp(DppRep),
    Poisson(PoissonRep),
}

fn index(space: &BasisSpace, label: &str) -> Result<usize, ForgeError> {
    space.index_of(label).ok_or_else(|| ForgeError::input(format!("unknown label {label:?} in {}", space.name)))
}

fn terms_of(left: &BasisSpace, right: &BasisSpace, m: &Matrix) -> Vec<TensorTerm> {
    let mut out = Vec::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.push(TensorTerm { left: left.labels[i].clone(), right: right.labels[j].clone(), coeff: c.clone() });
            }
        }
    }
    out
}

fn matrix_of(left: &BasisSpace, right: &BasisSpace, terms: &[TensorTerm]) -> Result<Matrix, ForgeError> {
    let mut m = Matrix::zeros(left.dim(), right.dim());
    for t in terms {
        m.add_at(index(left, &t.left)?, index(right, &t.right)?, &t.coeff);
    }
    Ok(m)
}

fn rows_of(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

fn matrix_from_rows(rows: &[Vec<Rational>], shape: Option<(usize, usize)>) -> Result<Matrix, ForgeError> {
    let m = Matrix::from_rows(rows.to_vec());
    if rows.iter().any(|r| r.len() != m.cols) {
        return Err(ForgeError::Shape("ragged matrix rows".into()));
    }
    if let Some((r, c)) = shape {
        if m.rows != r || m.cols != c {
            return Err(ForgeError::Shape(format!("expected a {r}×{c} matrix, got {}×{}", m.rows, m.cols)));
        }
    }
    Ok(m)
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &StructureAlgebra) -> Self {
        let labels = &alg.space.labels;
        let n = alg.dim();
        let mut products = BTreeMap::new();
        for (role, p) in &alg.products {
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let result: BTreeMap<String, Rational> = p
                        .basis(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (labels[k].clone(), c.clone()))
                        .collect();
                    if !result.is_empty() {
                        entries.push(ProductEntry { left: labels[i].clone(), right: labels[j].clone(), result });
                    }
                }
            }
            products.insert(role.name().to_string(), entries);
        }
        AlgebraDocument {
            name: alg.name.clone(),
            kind: alg.kind,
            basis: labels.clone(),
            products,
            form: None,
            coproducts: BTreeMap::new(),
            rmatrix: None,
            rmatrices: BTreeMap::new(),
            operators: BTreeMap::new(),
            representations: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ForgeError> {
        serde_json::from_str(text).map_err(|e| ForgeError::input(format!("unparseable document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Renames every basis label (and every reference to it) through `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Self {
        let terms = |ts: &[TensorTerm]| -> Vec<TensorTerm> {
            ts.iter().map(|t| TensorTerm { left: f(&t.left), right: f(&t.right), coeff: t.coeff.clone() }).collect()
        };
        let mut out = self.clone();
        out.basis = self.basis.iter().map(|l| f(l)).collect();
        for entries in out.products.values_mut() {
            for e in entries {
                e.left = f(&e.left);
                e.right = f(&e.right);
                e.result = e.result.iter().map(|(k, v)| (f(k), v.clone())).collect();
            }
        }
        if let Some(form) = &mut out.form {
            for e in form {
                e.row = f(&e.row);
                e.col = f(&e.col);
            }
        }
        for entries in out.coproducts.values_mut() {
            for e in entries {
                e.element = f(&e.element);
                e.terms = terms(&e.terms);
            }
        }
        out.rmatrix = self.rmatrix.as_deref().map(terms);
        out.rmatrices = self.rmatrices.iter().map(|(k, v)| (k.clone(), terms(v))).collect();
        for rep in out.representations.values_mut() {
            for per in rep.actions.values_mut() {
                *per = per.iter().map(|(k, v)| (f(k), v.clone())).collect();
            }
        }
        out
    }

    pub fn space(&self) -> Result<BasisSpace, ForgeError> {
        BasisSpace::new(self.name.clone(), self.basis.clone())
    }

    pub fn to_algebra(&self) -> Result<StructureAlgebra, ForgeError> {
        let space = self.space()?;
        let n = space.dim();
        for key in self.products.keys() {
            let role = Role::parse(key).ok_or_else(|| ForgeError::input(format!("unknown product role {key:?}")))?;
            if !self.kind.roles().contains(&role) {
                return Err(ForgeError::Kind(format!("kind {} has no {key} product", self.kind)));
            }
        }
        let mut products = BTreeMap::new();
        for &role in self.kind.roles() {
            let mut p = Product::zero(n);
            for e in self.products.get(role.name()).map(Vec::as_slice).unwrap_or_default() {
                let (i, j) = (index(&space, &e.left)?, index(&space, &e.right)?);
                for (label, c) in &e.result {
                    p.add_entry(i, j, index(&space, label)?, c);
                }
            }
            products.insert(role, p);
        }
        StructureAlgebra::new(&self.name, self.kind, space, products)
    }

    pub fn with_form(mut self, omega: &BilinearForm) -> Self {
        let l = &omega.space.labels;
        let mut out = Vec::new();
        for i in 0..omega.matrix.rows {
            for j in 0..omega.matrix.cols {
                let v = omega.matrix.get(i, j);
                if !v.is_zero() {
                    out.push(FormEntry { row: l[i].clone(), col: l[j].clone(), value: v.clone() });
                }
            }
        }
        self.form = Some(out);
        self
    }

    pub fn form(&self) -> Result<Option<BilinearForm>, ForgeError> {
        let Some(entries) = &self.form else { return Ok(None) };
        let space = self.space()?;
        let mut m = Matrix::zeros(space.dim(), space.dim());
        for e in entries {
            m.add_at(index(&space, &e.row)?, index(&space, &e.col)?, &e.value);
        }
        Ok(Some(BilinearForm::new(&space, m)?))
    }

    pub fn with_coproducts(mut self, cops: &Coproducts) -> Self {
        for (role, c) in cops {
            let entries = c
                .images
                .iter()
                .enumerate()
                .map(|(m, img)| CoproductEntry { element: c.space.labels[m].clone(), terms: terms_of(&c.space, &c.space, img) })
                .filter(|e| !e.terms.is_empty())
                .collect();
            self.coproducts.insert(coproduct_name(*role).to_string(), entries);
        }
        self
    }

    /// The coproducts named in the document; every role of the kind gets one (zero when absent).
    pub fn coproducts(&self) -> Result<Coproducts, ForgeError> {
        let space = self.space()?;
        let mut out = Coproducts::new();
        for key in self.coproducts.keys() {
            let role = coproduct_role(key).ok_or_else(|| ForgeError::input(format!("unknown coproduct {key:?}")))?;
            if !self.kind.roles().contains(&role) {
                return Err(ForgeError::Kind(format!("kind {} has no {key} coproduct", self.kind)));
            }
        }
        for &role in self.kind.roles() {
            let mut c = Coproduct::zero(&space);
            for e in self.coproducts.get(coproduct_name(role)).map(Vec::as_slice).unwrap_or_default() {
                let m = index(&space, &e.element)?;
                c.images[m] = c.images[m].add(&matrix_of(&space, &space, &e.terms)?);
            }
            out.insert(role, c);
        }
        Ok(out)
    }

    pub fn has_coproducts(&self) -> bool {
        !self.coproducts.is_empty()
    }

    pub fn with_rmatrix(mut self, name: &str, r: &Tensor2) -> Self {
        let terms = terms_of(&r.left, &r.right, &r.data);
        if name == "r" {
            self.rmatrix = Some(terms);
        } else {
            self.rmatrices.insert(name.to_string(), terms);
        }
        self
    }

    /// The 2-tensor called `name`; `r` is the unnamed `rmatrix` field.
    pub fn rmatrix(&self, name: &str) -> Result<Tensor2, ForgeError> {
        let terms = if name == "r" {
            self.rmatrix.as_ref().or_else(|| self.rmatrices.get("r"))
        } else {
            self.rmatrices.get(name)
        };
        let terms = terms.ok_or_else(|| ForgeError::input(format!("document has no rmatrix {name:?}")))?;
        let space = self.space()?;
        Tensor2::from_matrix(&space, &space, matrix_of(&space, &space, terms)?)
    }

    pub fn rmatrix_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.rmatrix.iter().map(|_| "r".to_string()).collect();
        names.extend(self.rmatrices.keys().cloned());
        names
    }

    pub fn with_operator(mut self, name: &str, m: &Matrix, weight: Option<Rational>) -> Self {
        self.operators.insert(name.to_string(), OperatorEntry { matrix: rows_of(m), weight });
        self
    }

    /// The operator `name` with its weight; `shape` pins the expected matrix size.
    pub fn operator(&self, name: &str, shape: Option<(usize, usize)>) -> Result<(Matrix, Option<Rational>), ForgeError> {
        let e = self.operators.get(name).ok_or_else(|| ForgeError::input(format!("document has no operator {name:?}")))?;
        Ok((matrix_from_rows(&e.matrix, shape)?, e.weight.clone()))
    }

    pub fn with_rep(mut self, name: &str, rep: &RepSpec) -> Self {
        let (carrier, fams): (&BasisSpace, Vec<(&str, &Vec<Matrix>)>) = match rep {
            RepSpec::Dpp(r) => (&r.carrier, vec![("l", &r.l), ("r", &r.r), ("ll", &r.ll), ("rr", &r.rr)]),
            RepSpec::Poisson(r) => (&r.carrier, vec![("mu", &r.mu), ("rho", &r.rho)]),
        };
        let mut actions = BTreeMap::new();
        for (fam, mats) in fams {
            let per: BTreeMap<String, Vec<Vec<Rational>>> = mats
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(i, m)| (self.basis[i].clone(), rows_of(m)))
                .collect();
            actions.insert(fam.to_string(), per);
        }
        self.representations.insert(name.to_string(), RepEntry { carrier: carrier.labels.clone(), actions });
        self
    }

    /// A named representation from the document, or one of the built-ins
    /// `regular`, `coregular`, `coregular-standard`, `coregular-signed`.
    pub fn rep(&self, alg: &StructureAlgebra, name: &str) -> Result<RepSpec, ForgeError> {
        let poisson = alg.kind == Kind::Poisson;
        if !self.representations.contains_key(name) {
            return match (name, poisson) {
                ("regular", false) => Ok(RepSpec::Dpp(regular_rep(alg))),
                ("regular", true) => Ok(RepSpec::Poisson(poisson_regular_rep(alg))),
                ("coregular", true) => Ok(RepSpec::Poisson(poisson_coregular_rep(alg))),
                ("coregular", false) => Ok(RepSpec::Dpp(coregular_rep(alg, CoregularVariant::default()))),
                ("coregular-standard", false) => Ok(RepSpec::Dpp(coregular_rep(alg, CoregularVariant::Standard))),
                ("coregular-signed", false) => Ok(RepSpec::Dpp(coregular_rep(alg, CoregularVariant::Signed))),
                _ => Err(ForgeError::input(format!("no representation {name:?} for a {} algebra", alg.kind))),
            };
        }
        let e = &self.representations[name];
        let carrier = BasisSpace::new(format!("{name}.carrier"), e.carrier.clone())?;
        let d = carrier.dim();
        let fam_names: &[&str] = if poisson { &["mu", "rho"] } else { &["l", "r", "ll", "rr"] };
        for key in e.actions.keys() {
            if !fam_names.contains(&key.as_str()) {
                return Err(ForgeError::input(format!("unknown action family {key:?}")));
            }
        }
        let mut fams = Vec::new();
        for fam in fam_names {
            let mut mats = vec![Matrix::zeros(d, d); alg.dim()];
            for (label, rows) in e.actions.get(*fam).into_iter().flatten() {
                mats[index(&alg.space, label)?] = matrix_from_rows(rows, Some((d, d)))?;
            }
            fams.push(mats);
        }
        Ok(if poisson {
            let rho = fams.pop().unwrap_or_default();
            let mu = fams.pop().unwrap_or_default();
            RepSpec::Poisson(PoissonRep { carrier, mu, rho })
        } else {
            let mut it = fams.into_iter();
            let mut next = || it.next().unwrap_or_default();
            RepSpec::Dpp(DppRep { carrier, l: next(), r: next(), ll: next(), rr: next() })
        })
    }
}

/// SHA-256 of the given byte strings, concatenated, as lowercase hex.
pub fn digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Output of one CLI command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lybe_sign: Option<String>,
    pub passed: bool,
    pub results: Vec<IdentityResult>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub digests: BTreeMap<String, String>,
    /// Printed reference values next to computed ones; mismatches do not affect the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<ReferenceDiff>,
}

impl Report {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        Report {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            input_digest: digest(inputs.iter().copied()),
            lybe_sign: None,
            passed: true,
            results: Vec::new(),
            flags: BTreeMap::new(),
            values: BTreeMap::new(),
            digests: BTreeMap::new(),
            references: Vec::new(),
        }
    }

    /// Appends identity results; each one can fail the report.
    pub fn add(&mut self, rep: IdentityReport) {
        self.passed &= rep.passed();
        self.results.extend(rep.results);
    }

    /// Records a flag without affecting the verdict.
    pub fn flag(&mut self, name: &str, v: bool) {
        self.flags.insert(name.to_string(), v);
    }

    /// Records a flag that must hold for the report to pass.
    pub fn require(&mut self, name: &str, v: bool) {
        self.passed &= v;
        self.flag(name, v);
    }

    pub fn value(&mut self, name: &str, v: impl ToString) {
        self.values.insert(name.to_string(), v.to_string());
    }

    pub fn attach(&mut self, name: &str, doc: &AlgebraDocument) {
        self.digests.insert(name.to_string(), digest([doc.to_json().as_bytes()]));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}  {}\n", self.tool, self.version, self.command);
        s.push_str(&format!("input sha256 {}\n", self.input_digest));
        if let Some(sign) = &self.lybe_sign {
            s.push_str(&format!("lybe sign {sign}\n"));
        }
        s.push_str(&IdentityReport { results: self.results.clone() }.to_text());
        for (k, v) in &self.flags {
            s.push_str(&format!("flag  {k:<30} {v}\n"));
        }
        for (k, v) in &self.values {
            s.push_str(&format!("value {k:<30} {v}\n"));
        }
        for (k, v) in &self.digests {
            s.push_str(&format!("sha256 {k:<29} {v}\n"));
        }
        for d in &self.references {
            let tag = if d.matches { "match" } else { "diff " };
            s.push_str(&format!("{tag} {:<22} computed {:<40} printed {}", d.item, d.computed, d.printed));
            if let Some(n) = &d.note {
                s.push_str(&format!("  [{n}]"));
            }
            s.push('\n');
        }
        s.push_str(if self.passed { "verdict PASS\n" } else { "verdict FAIL\n" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    #[test]
    fn algebra_round_trip() {
        let a2 = catalog::a2();
        let doc = AlgebraDocument::from_algebra(&a2);
        let back = AlgebraDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_algebra().unwrap(), a2);
    }

    #[test]
    fn integers_accepted_for_rationals() {
        let text = r#"{"name":"A2","kind":"dpp","basis":["e1","e2"],
            "products":{"circ":[{"left":"e2","right":"e2","result":{"e1":1}}],
                        "star":[{"left":"e2","right":"e2","result":{"e1":"1"}}]}}"#;
        assert_eq!(AlgebraDocument::parse(text).unwrap().to_algebra().unwrap(), catalog::a2());
    }

    #[test]
    fn rejects_unknown_labels_and_roles() {
        let bad_label = r#"{"name":"X","kind":"perm","basis":["a"],
            "products":{"circ":[{"left":"a","right":"b","result":{"a":1}}]}}"#;
        assert!(AlgebraDocument::parse(bad_label).unwrap().to_algebra().is_err());
        let bad_role = r#"{"name":"X","kind":"perm","basis":["a"],"products":{"star":[]}}"#;
        assert!(matches!(AlgebraDocument::parse(bad_role).unwrap().to_algebra(), Err(ForgeError::Kind(_))));
        let bad_rat = r#"{"name":"X","kind":"perm","basis":["a"],
            "products":{"circ":[{"left":"a","right":"a","result":{"a":"1/0"}}]}}"#;
        assert!(AlgebraDocument::parse(bad_rat).is_err());
    }

    #[test]
    fn attachments_round_trip() {
        let b = catalog::p3_bialgebra();
        let r = catalog::p3_r();
        let doc = AlgebraDocument::from_algebra(&b.algebra)
            .with_coproducts(&b.coproducts)
            .with_rmatrix("r", &r)
            .with_operator("alpha", &Matrix::identity(3), Some(q(-1)))
            .with_rep("reg", &RepSpec::Poisson(poisson_regular_rep(&b.algebra)));
        let back = AlgebraDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.coproducts().unwrap(), b.coproducts);
        assert_eq!(back.rmatrix("r").unwrap(), r);
        assert_eq!(back.operator("alpha", Some((3, 3))).unwrap(), (Matrix::identity(3), Some(q(-1))));
        match back.rep(&b.algebra, "reg").unwrap() {
            RepSpec::Poisson(p) => {
                let want = poisson_regular_rep(&b.algebra);
                assert_eq!((p.carrier.labels, p.mu, p.rho), (want.carrier.labels, want.mu, want.rho));
            }
            RepSpec::Dpp(_) => panic!("expected a Poisson representation"),
        }
    }

    #[test]
    fn report_is_deterministic() {
        let mut a = Report::new("check algebra", &[b"x"]);
        a.add(crate::check_identities(&catalog::a2()));
        let mut b = Report::new("check algebra", &[b"x"]);
        b.add(crate::check_identities(&catalog::a2()));
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed);
        assert_eq!(a.input_digest, digest([b"x".as_slice()]));
    }
}
