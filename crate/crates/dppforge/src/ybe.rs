//! r-matrices: Yang-Baxter residuals, invariance operators, coboundary coproducts
//! and the quasi-triangular / triangular / factorizable classifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Kind, Role, StructureAlgebra};
use crate::coalgebra::{check_bialgebra, BialgebraCandidate, Coproduct, Coproducts};
use crate::linalg::{BasisSpace, Matrix, Tensor2, Tensor3};
use crate::rational::Rational;
use crate::report::{IdentityReport, IdentityResult, Term, Witness};
use crate::ForgeError;

/// Sign of the `r12∗r23` term in the Leibniz Yang-Baxter residual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LybeSign {
    Plus,
    #[default]
    Minus,
}

/// The shipped convention: the only one under which `Σ e_i⊗f_i` solves the equation on the doubles of A2 and P3.
pub const DEFAULT_LYBE_SIGN: LybeSign = LybeSign::Minus;

impl LybeSign {
    pub fn value(self) -> i64 {
        match self {
            LybeSign::Plus => 1,
            LybeSign::Minus => -1,
        }
    }
}

impl FromStr for LybeSign {
    type Err = ForgeError;
    fn from_str(s: &str) -> Result<Self, ForgeError> {
        match s {
            "plus" | "+" => Ok(LybeSign::Plus),
            "minus" | "-" => Ok(LybeSign::Minus),
            _ => Err(ForgeError::input(format!("unknown LYBE sign {s:?} (use plus or minus)"))),
        }
    }
}

impl fmt::Display for LybeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LybeSign::Plus => "plus",
            LybeSign::Minus => "minus",
        })
    }
}

/// A partial product of `r` with itself in `A⊗A⊗A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `(x_i·x_j)⊗y_i⊗y_j`
    P12_13,
    /// `x_i⊗(y_i·x_j)⊗y_j`
    P12_23,
    /// `x_i⊗x_j⊗(y_i·y_j)`
    P13_23,
    /// `(x_i·x_j)⊗y_j⊗y_i`
    P13_12,
    /// `x_j⊗(x_i·y_j)⊗y_i`
    P23_12,
    /// `x_j⊗x_i⊗(y_i·y_j)`
    P23_13,
}

impl Placement {
    pub fn name(self, op: &str) -> String {
        let (a, b) = match self {
            Placement::P12_13 => ("12", "13"),
            Placement::P12_23 => ("12", "23"),
            Placement::P13_23 => ("13", "23"),
            Placement::P13_12 => ("13", "12"),
            Placement::P23_12 => ("23", "12"),
            Placement::P23_13 => ("23", "13"),
        };
        format!("r{a}{op}r{b}")
    }
}

/// Evaluates one placement of the product `role` on `r`.
pub fn partial_product(alg: &StructureAlgebra, x: &Matrix, role: Role, place: Placement) -> Tensor3 {
    let n = alg.dim();
    let p = alg.product(role);
    let mut t = Tensor3::zeros(n, n, n);
    let nz: Vec<(usize, usize, &Rational)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let c = x.get(i, j);
            (!c.is_zero()).then_some((i, j, c))
        })
        .collect();
    for &(i1, j1, c1) in &nz {
        for &(i2, j2, c2) in &nz {
            let c = c1 * c2;
            let (prod, fix): (&[Rational], Box<dyn Fn(usize) -> (usize, usize, usize)>) = match place {
                Placement::P12_13 => (p.basis(i1, i2), Box::new(move |k| (k, j1, j2))),
                Placement::P12_23 => (p.basis(j1, i2), Box::new(move |k| (i1, k, j2))),
                Placement::P13_23 => (p.basis(j1, j2), Box::new(move |k| (i1, i2, k))),
                Placement::P13_12 => (p.basis(i1, i2), Box::new(move |k| (k, j2, j1))),
                Placement::P23_12 => (p.basis(i1, j2), Box::new(move |k| (i2, k, j1))),
                Placement::P23_13 => (p.basis(j1, j2), Box::new(move |k| (i2, i1, k))),
            };
            for (k, v) in prod.iter().enumerate() {
                if !v.is_zero() {
                    let (a, b, d) = fix(k);
                    t.add_at(a, b, d, &(&c * v));
                }
            }
        }
    }
    t
}

/// A Yang-Baxter residual with its signed term breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeResidual {
    pub id: String,
    pub residual: Tensor3,
    /// `(term name, sign, value)`; the residual is `Σ sign·value`.
    pub terms: Vec<(String, i64, Tensor3)>,
}

impl YbeResidual {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    /// Residual as a single-witness identity result.
    pub fn to_result(&self, space: &BasisSpace) -> IdentityResult {
        let terms = tensor3_terms(space, &self.residual);
        let failing = if terms.is_empty() { vec![] } else { vec![Witness { args: vec!["r".into()], residual: terms }] };
        IdentityResult::from_failures(&self.id, 1, failing)
    }
}

pub fn tensor3_terms(space: &BasisSpace, t: &Tensor3) -> Vec<Term> {
    t.nonzero()
        .into_iter()
        .map(|(idx, c)| Term {
            basis: format!("{}⊗{}⊗{}", space.labels[idx[0]], space.labels[idx[1]], space.labels[idx[2]]),
            coeff: c,
        })
        .collect()
}

fn residual(alg: &StructureAlgebra, x: &Matrix, id: &str, role: Role, op: &str, parts: &[(Placement, i64)]) -> YbeResidual {
    let n = alg.dim();
    let mut total = Tensor3::zeros(n, n, n);
    let mut terms = Vec::new();
    for &(place, sign) in parts {
        let t = partial_product(alg, x, role, place);
        total = if sign > 0 { total.add(&t) } else { total.sub(&t) };
        terms.push((place.name(op), sign, t));
    }
    YbeResidual { id: id.to_string(), residual: total, terms }
}

fn require(alg: &StructureAlgebra, role: Role, r: &Tensor2) -> Result<(), ForgeError> {
    if !alg.products.contains_key(&role) {
        return Err(ForgeError::Kind(format!("algebra {} has no {} product", alg.name, role.name())));
    }
    if r.left != alg.space || r.right != alg.space {
        return Err(ForgeError::Shape("r must live in A⊗A for the algebra's own basis".into()));
    }
    Ok(())
}

/// `P_r = r12∘r23 − r13∘r23 + r12∘r13 − r13∘r12`.
pub fn perm_residual(alg: &StructureAlgebra, r: &Tensor2) -> Result<YbeResidual, ForgeError> {
    require(alg, Role::Circ, r)?;
    use Placement::*;
    Ok(residual(alg, &r.data, "ybe.perm", Role::Circ, "∘", &[(P12_23, 1), (P13_23, -1), (P12_13, 1), (P13_12, -1)]))
}

/// `L_r = r12∗r13 ± r12∗r23 − r23∗r12 + r23∗r13`.
pub fn leibniz_residual(alg: &StructureAlgebra, r: &Tensor2, sign: LybeSign) -> Result<YbeResidual, ForgeError> {
    require(alg, Role::Star, r)?;
    use Placement::*;
    Ok(residual(
        alg,
        &r.data,
        "ybe.leibniz",
        Role::Star,
        "∗",
        &[(P12_13, 1), (P12_23, sign.value()), (P23_12, -1), (P23_13, 1)],
    ))
}

/// `A_r = r12r13 + r13r23 − r23r12` and `C_r = [r12,r13] + [r13,r23] + [r12,r23]`.
pub fn poisson_residuals(alg: &StructureAlgebra, r: &Tensor2) -> Result<(YbeResidual, YbeResidual), ForgeError> {
    require(alg, Role::Dot, r)?;
    require(alg, Role::Bracket, r)?;
    use Placement::*;
    let a = residual(alg, &r.data, "ybe.poisson.assoc", Role::Dot, "·", &[(P12_13, 1), (P13_23, 1), (P23_12, -1)]);
    let c = residual(alg, &r.data, "ybe.poisson.lie", Role::Bracket, "", &[(P12_13, 1), (P13_23, 1), (P12_23, 1)]);
    Ok((a, c))
}

fn mult(alg: &StructureAlgebra, role: Role, right: bool, a: &[Rational]) -> Matrix {
    if right {
        alg.right(role, a)
    } else {
        alg.left(role, a)
    }
}

/// `F(a)(X) = ((𝔩+𝔯)(a)⊗id − id⊗𝔯(a))(X)`.
pub fn f_op(alg: &StructureAlgebra, a: &[Rational], x: &Matrix) -> Matrix {
    let ll = mult(alg, Role::Star, false, a);
    let rr = mult(alg, Role::Star, true, a);
    ll.add(&rr).mul(x).sub(&x.mul(&rr.transpose()))
}

/// `G(a)(X) = (id⊗r(a) + (r−ℓ)(a)⊗id)(X)`.
pub fn g_op(alg: &StructureAlgebra, a: &[Rational], x: &Matrix) -> Matrix {
    let l = mult(alg, Role::Circ, false, a);
    let r = mult(alg, Role::Circ, true, a);
    x.mul(&r.transpose()).add(&r.sub(&l).mul(x))
}

/// `(id⊗𝔲(p) − 𝔲(p)⊗id)(X)`.
pub fn assoc_op(alg: &StructureAlgebra, p: &[Rational], x: &Matrix) -> Matrix {
    let u = mult(alg, Role::Dot, false, p);
    x.mul(&u.transpose()).sub(&u.mul(x))
}

/// `(id⊗ad(p) + ad(p)⊗id)(X)`.
pub fn lie_op(alg: &StructureAlgebra, p: &[Rational], x: &Matrix) -> Matrix {
    let ad = mult(alg, Role::Bracket, false, p);
    x.mul(&ad.transpose()).add(&ad.mul(x))
}

fn op_family(alg: &StructureAlgebra, id: &str, t: &Matrix, op: fn(&StructureAlgebra, &[Rational], &Matrix) -> Matrix) -> IdentityResult {
    crate::algebra::check_family(id, &alg.space.labels, 1, |idx| {
        crate::coalgebra::tensor2_terms(&alg.space, &op(alg, &alg.basis_vec(idx[0]), t))
    })
}

/// Invariance of a supplied tensor `t`: F and G for DPP algebras, the two Poi operators for Poisson algebras.
pub fn invariance(alg: &StructureAlgebra, t: &Tensor2) -> Result<IdentityReport, ForgeError> {
    let mut rep = IdentityReport::new();
    match alg.kind {
        Kind::Dpp => {
            require(alg, Role::Star, t)?;
            rep.push(op_family(alg, "invariance.F", &t.data, f_op));
            rep.push(op_family(alg, "invariance.G", &t.data, g_op));
        }
        Kind::Poisson => {
            require(alg, Role::Dot, t)?;
            rep.push(op_family(alg, "invariance.poi.assoc", &t.data, assoc_op));
            rep.push(op_family(alg, "invariance.poi.lie", &t.data, lie_op));
        }
        k => return Err(ForgeError::Kind(format!("invariance is defined for dpp and poisson algebras, got {k}"))),
    }
    Ok(rep)
}

/// Coboundary coproducts: `ν_r = G(·)(r)`, `ϑ_r = F(·)(r)` for DPP; `Δ_r`, `δ_r` for Poisson.
pub fn coboundary(alg: &StructureAlgebra, r: &Tensor2) -> Result<Coproducts, ForgeError> {
    let build = |op: fn(&StructureAlgebra, &[Rational], &Matrix) -> Matrix| {
        let images = (0..alg.dim()).map(|i| op(alg, &alg.basis_vec(i), &r.data)).collect();
        Coproduct { space: alg.space.clone(), images }
    };
    let mut out = Coproducts::new();
    match alg.kind {
        Kind::Dpp => {
            require(alg, Role::Circ, r)?;
            out.insert(Role::Circ, build(g_op));
            out.insert(Role::Star, build(f_op));
        }
        Kind::Poisson => {
            require(alg, Role::Dot, r)?;
            out.insert(Role::Dot, build(assoc_op));
            out.insert(Role::Bracket, build(lie_op));
        }
        k => return Err(ForgeError::Kind(format!("coboundary is defined for dpp and poisson algebras, got {k}"))),
    }
    Ok(out)
}

/// `r♯` and `τ(r)♯` matrices, and `𝓘 = r♯ − τ(r)♯`.
pub fn i_matrix(r: &Tensor2) -> Matrix {
    r.data.transpose().sub(&r.data)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub lybe_sign: LybeSign,
    pub solves_perm: bool,
    pub solves_leibniz: bool,
    pub solves_dpybe: bool,
    pub skew_part_invariant: bool,
    pub symmetric: bool,
    pub quasi_triangular: bool,
    pub triangular: bool,
    pub factorizable: bool,
    pub det_i: Rational,
    #[serde(skip)]
    pub i: Matrix,
    /// The coboundary bialgebra check, run whenever `r` is quasi-triangular or triangular.
    #[serde(skip)]
    pub bialgebra: Option<IdentityReport>,
    #[serde(skip)]
    pub coproducts: Coproducts,
}

impl Classification {
    pub fn bialgebra_passed(&self) -> Option<bool> {
        self.bialgebra.as_ref().map(IdentityReport::passed)
    }
}

/// Classifies `r` over a DPP algebra; never mutates `r`.
pub fn classify(alg: &StructureAlgebra, r: &Tensor2, sign: LybeSign) -> Result<Classification, ForgeError> {
    if alg.kind != Kind::Dpp {
        return Err(ForgeError::Kind(format!("classify needs a dpp algebra, got {}", alg.kind)));
    }
    let p = perm_residual(alg, r)?;
    let l = leibniz_residual(alg, r, sign)?;
    let solves = p.is_zero() && l.is_zero();
    let skew = Tensor2 { left: r.left.clone(), right: r.right.clone(), data: r.data.sub(&r.data.transpose()) };
    let inv = invariance(alg, &skew)?.passed();
    let symmetric = r.is_symmetric();
    let quasi = solves && inv;
    let triangular = solves && symmetric;
    let i = i_matrix(r);
    let det_i = i.det();
    let coproducts = coboundary(alg, r)?;
    let bialgebra = if quasi || triangular {
        Some(check_bialgebra(&BialgebraCandidate::new(alg.clone(), coproducts.clone())?)?)
    } else {
        None
    };
    Ok(Classification {
        lybe_sign: sign,
        solves_perm: p.is_zero(),
        solves_leibniz: l.is_zero(),
        solves_dpybe: solves,
        skew_part_invariant: inv,
        symmetric,
        quasi_triangular: quasi,
        triangular,
        factorizable: quasi && !det_i.is_zero(),
        det_i,
        i,
        bialgebra,
        coproducts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonClassification {
    pub solves_poiybe: bool,
    pub skew: bool,
    pub sym_part_invariant: bool,
    pub triangular: bool,
    pub quasi_triangular: bool,
    #[serde(skip)]
    pub bialgebra: Option<IdentityReport>,
}

/// Triangular / quasi-triangular status of `r` over a Poisson algebra.
pub fn classify_poisson(alg: &StructureAlgebra, r: &Tensor2) -> Result<PoissonClassification, ForgeError> {
    if alg.kind != Kind::Poisson {
        return Err(ForgeError::Kind(format!("classify_poisson needs a poisson algebra, got {}", alg.kind)));
    }
    let (a, c) = poisson_residuals(alg, r)?;
    let solves = a.is_zero() && c.is_zero();
    let sym = Tensor2 { left: r.left.clone(), right: r.right.clone(), data: r.data.add(&r.data.transpose()) };
    let inv = invariance(alg, &sym)?.passed();
    let skew = r.is_skew();
    let triangular = solves && skew;
    let quasi = solves && inv;
    let bialgebra = if triangular || quasi {
        Some(check_bialgebra(&BialgebraCandidate::new(alg.clone(), coboundary(alg, r)?)?)?)
    } else {
        None
    };
    Ok(PoissonClassification { solves_poiybe: solves, skew, sym_part_invariant: inv, triangular, quasi_triangular: quasi, bialgebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poisson_as_dpp;
    use crate::catalog;
    use crate::rational::q;

    fn tensor(space: &BasisSpace, rows: &[&[i64]]) -> Tensor2 {
        Tensor2::from_matrix(space, space, Matrix::from_int_rows(rows)).unwrap()
    }

    #[test]
    fn zero_r_is_triangular_not_factorizable() {
        let a2 = catalog::a2();
        let c = classify(&a2, &Tensor2::zeros(&a2.space, &a2.space), DEFAULT_LYBE_SIGN).unwrap();
        assert!(c.triangular && !c.factorizable);
        assert_eq!(c.bialgebra_passed(), Some(true));
    }

    #[test]
    fn e2e2_on_a2_perm_residual() {
        // r = e2⊗e2: r12∘r23 = e2⊗e1⊗e2, r13∘r23 = e2⊗e2⊗e1, r12∘r13 = e1⊗e2⊗e2, r13∘r12 = e1⊗e2⊗e2
        let a2 = catalog::a2();
        let r = tensor(&a2.space, &[&[0, 0], &[0, 1]]);
        let p = perm_residual(&a2, &r).unwrap();
        let terms = tensor3_terms(&a2.space, &p.residual);
        assert_eq!(
            terms,
            vec![Term { basis: "e2⊗e1⊗e2".into(), coeff: q(1) }, Term { basis: "e2⊗e2⊗e1".into(), coeff: q(-1) }]
        );
        let sum = p.terms.iter().fold(Tensor3::zeros(2, 2, 2), |acc, (_, s, t)| if *s > 0 { acc.add(t) } else { acc.sub(t) });
        assert_eq!(sum, p.residual);
    }

    #[test]
    fn p3_skew_r_solves_poiybe_and_coboundary() {
        let p3 = catalog::p3();
        let r = tensor(&p3.space, &[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        let (a, c) = poisson_residuals(&p3, &r).unwrap();
        assert!(a.is_zero() && c.is_zero());
        let cops = coboundary(&p3, &r).unwrap();
        assert!(cops[&Role::Dot].is_zero());
        assert_eq!(cops[&Role::Bracket].images[0], r.data);
        assert!(cops[&Role::Bracket].images[1].is_zero() && cops[&Role::Bracket].images[2].is_zero());
        let cl = classify_poisson(&p3, &r).unwrap();
        assert!(cl.triangular);
        assert_eq!(cl.bialgebra.map(|b| b.passed()), Some(true));
    }

    #[test]
    fn e1e1_on_p3_assoc_residual() {
        // r = e1⊗e1: r12r13 = e2⊗e1⊗e1, r13r23 = e1⊗e1⊗e2, r23r12 = e1⊗e2⊗e1
        let p3 = catalog::p3();
        let r = tensor(&p3.space, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (a, _) = poisson_residuals(&p3, &r).unwrap();
        let terms = tensor3_terms(&p3.space, &a.residual);
        assert_eq!(terms.len(), 3);
        assert!(terms.contains(&Term { basis: "e1⊗e2⊗e1".into(), coeff: q(-1) }));
    }

    #[test]
    fn lybe_sign_selects_doubles() {
        for alg in [catalog::a2(), poisson_as_dpp(&catalog::p3()).unwrap()] {
            let (d, rt) = crate::constructions::double_with_zero_coproducts(&alg).unwrap();
            assert!(leibniz_residual(&d, &rt, LybeSign::Minus).unwrap().is_zero());
        }
        let (d, rt) = crate::constructions::double_with_zero_coproducts(&catalog::a2()).unwrap();
        assert!(!leibniz_residual(&d, &rt, LybeSign::Plus).unwrap().is_zero());
    }
}
