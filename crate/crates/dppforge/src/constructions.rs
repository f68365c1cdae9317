//! Cross-structure constructions: averaging operators, Poisson⊗perm algebras,
//! the bialgebra double, induced tensor bialgebras, the lifted r-matrix, and
//! O-operator checks.

use std::collections::BTreeMap;

use crate::algebra::{check_family, check_identities, check_quadratic, vec_terms, Kind, Product, Role, StructureAlgebra};
use crate::coalgebra::{check_bialgebra, BialgebraCandidate, Coproduct, Coproducts};
use crate::linalg::{dual_basis, vec_add, vec_sub, BasisSpace, BilinearForm, LinMap, Matrix, Tensor2, Vector};
use crate::rational::Rational;
use crate::rep::{check_dpp_rep, check_poisson_rep, coregular_rep, family_at, CoregularVariant, DppRep, PoissonRep};
use crate::report::IdentityReport;
use crate::ybe::coboundary;
use crate::ForgeError;

fn precondition(rep: &IdentityReport, msg: &str) -> Result<(), ForgeError> {
    if rep.passed() {
        Ok(())
    } else {
        Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: msg.into() })
    }
}

fn require_kind(alg: &StructureAlgebra, kind: Kind) -> Result<(), ForgeError> {
    if alg.kind != kind {
        return Err(ForgeError::Kind(format!("expected a {kind} algebra, got {}", alg.kind)));
    }
    Ok(())
}

/// `α(p1)α(p2) = α(α(p1)p2) = α(p1α(p2))` and `[α(p1), α(p2)] = α([α(p1), p2])`.
pub fn check_averaging(p: &StructureAlgebra, alpha: &Matrix) -> Result<IdentityReport, ForgeError> {
    require_kind(p, Kind::Poisson)?;
    if alpha.rows != p.dim() || alpha.cols != p.dim() {
        return Err(ForgeError::Shape("averaging operator must be dim × dim".into()));
    }
    let a = |v: &[Rational]| alpha.apply(v);
    let d = |x: &[Rational], y: &[Rational]| p.mul(Role::Dot, x, y);
    let b = |x: &[Rational], y: &[Rational]| p.mul(Role::Bracket, x, y);
    let basis: Vec<Vector> = (0..p.dim()).map(|i| p.basis_vec(i)).collect();
    let mut rep = IdentityReport::new();
    type Fam<'a> = Box<dyn Fn(&[Rational], &[Rational]) -> Vector + Sync + 'a>;
    let fams: Vec<(&str, Fam)> = vec![
        ("averaging.dot.left", Box::new(|p1, p2| vec_sub(&d(&a(p1), &a(p2)), &a(&d(&a(p1), p2))))),
        ("averaging.dot.right", Box::new(|p1, p2| vec_sub(&a(&d(&a(p1), p2)), &a(&d(p1, &a(p2)))))),
        ("averaging.bracket", Box::new(|p1, p2| vec_sub(&b(&a(p1), &a(p2)), &a(&b(&a(p1), p2))))),
    ];
    for (id, f) in &fams {
        rep.push(check_family(id, &p.space.labels, 2, |t| vec_terms(&p.space, &f(&basis[t[0]], &basis[t[1]]))));
    }
    Ok(rep)
}

/// `p1∘p2 = α(p1)p2`, `p1∗p2 = [α(p1), p2]`.
pub fn averaging_to_dpp(p: &StructureAlgebra, alpha: &Matrix) -> Result<StructureAlgebra, ForgeError> {
    precondition(&check_averaging(p, alpha)?, "not an averaging operator")?;
    let n = p.dim();
    let mut products = BTreeMap::new();
    for (src, dst) in [(Role::Dot, Role::Circ), (Role::Bracket, Role::Star)] {
        let mut prod = Product::zero(n);
        for i in 0..n {
            let ai = alpha.apply(&p.basis_vec(i));
            for j in 0..n {
                let v = p.mul(src, &ai, &p.basis_vec(j));
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        prod.add_entry(i, j, k, c);
                    }
                }
            }
        }
        products.insert(dst, prod);
    }
    StructureAlgebra::new(&format!("{}_avg", p.name), Kind::Dpp, p.space.clone(), products)
}

/// `P⊗B` with `(p1⊗b1)∘(p2⊗b2) = p1p2 ⊗ b1∘b2` and `(p1⊗b1)∗(p2⊗b2) = [p1,p2] ⊗ b1∘b2`.
pub fn poisson_tensor_perm(p: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra, ForgeError> {
    require_kind(p, Kind::Poisson)?;
    require_kind(b, Kind::Perm)?;
    let space = p.space.tensor(&b.space, &format!("{}⊗{}", p.space.name, b.space.name));
    let bn = b.dim();
    let bc = b.product(Role::Circ);
    let mut products = BTreeMap::new();
    for (src, dst) in [(Role::Dot, Role::Circ), (Role::Bracket, Role::Star)] {
        let mut prod = Product::zero(space.dim());
        for (pi, pc) in p.product(src).constants.nonzero() {
            for (bi, bcv) in bc.constants.nonzero() {
                let c = &pc * &bcv;
                prod.add_entry(pi[0] * bn + bi[0], pi[1] * bn + bi[1], pi[2] * bn + bi[2], &c);
            }
        }
        products.insert(dst, prod);
    }
    StructureAlgebra::new(&format!("{}⊗{}", p.name, b.name), Kind::Dpp, space, products)
}

/// The double `A ⋉ A*` of a DPP bialgebra, with `r̃ = Σ e_i⊗f_i` and its coboundary coproducts.
#[derive(Clone, Debug)]
pub struct Double {
    pub algebra: StructureAlgebra,
    pub rtilde: Tensor2,
    pub coproducts: Coproducts,
}

/// Products on `A⊕A*`: A's products, the transposed coproducts on `A*`, and the mutual coregular actions.
pub fn double_algebra(b: &BialgebraCandidate, variant: CoregularVariant) -> Result<StructureAlgebra, ForgeError> {
    require_kind(&b.algebra, Kind::Dpp)?;
    let a = &b.algebra;
    let n = a.dim();
    let dual = crate::coalgebra::transpose_to_algebra(Kind::Dpp, &a.space, &b.coproducts)?;
    let ra = coregular_rep(a, variant);
    let rd = coregular_rep(&dual, variant);
    let space = a.space.direct_sum(&a.space.dual(), &format!("{}⋈{}*", a.space.name, a.space.name))?;
    let mut products = BTreeMap::new();
    for (role, left_of, right_of) in [
        (Role::Circ, (&ra.l, &rd.l), (&ra.r, &rd.r)),
        (Role::Star, (&ra.ll, &rd.ll), (&ra.rr, &rd.rr)),
    ] {
        let mut p = Product::zero(2 * n);
        for (idx, c) in a.product(role).constants.nonzero() {
            p.add_entry(idx[0], idx[1], idx[2], &c);
        }
        for (idx, c) in dual.product(role).constants.nonzero() {
            p.add_entry(n + idx[0], n + idx[1], n + idx[2], &c);
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // e_i · f_j = left action of e_i on f_j + right action of f_j on e_i
                    let v = left_of.0[i].get(k, j);
                    if !v.is_zero() {
                        p.add_entry(i, n + j, n + k, v);
                    }
                    let v = right_of.1[j].get(k, i);
                    if !v.is_zero() {
                        p.add_entry(i, n + j, k, v);
                    }
                    // f_j · e_i
                    let v = right_of.0[i].get(k, j);
                    if !v.is_zero() {
                        p.add_entry(n + j, i, n + k, v);
                    }
                    let v = left_of.1[j].get(k, i);
                    if !v.is_zero() {
                        p.add_entry(n + j, i, k, v);
                    }
                }
            }
        }
        products.insert(role, p);
    }
    StructureAlgebra::new(&format!("D({})", a.name), Kind::Dpp, space, products)
}

/// `r̃ = Σ e_i⊗f_i` on `A⊕A*`.
pub fn rtilde(space: &BasisSpace, n: usize) -> Tensor2 {
    let mut x = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        x.set(i, n + i, Rational::one());
    }
    Tensor2 { left: space.clone(), right: space.clone(), data: x }
}

/// The double of a DPP bialgebra; requires the bialgebra check to pass.
pub fn bialgebra_double(b: &BialgebraCandidate, variant: CoregularVariant) -> Result<Double, ForgeError> {
    precondition(&check_bialgebra(b)?, "input is not a DPP bialgebra")?;
    let algebra = double_algebra(b, variant)?;
    let rt = rtilde(&algebra.space, b.algebra.dim());
    let coproducts = coboundary(&algebra, &rt)?;
    Ok(Double { algebra, rtilde: rt, coproducts })
}

/// `A ⋉ A*` via the signed coregular representation, with `r̃`.
pub fn double_with_zero_coproducts(alg: &StructureAlgebra) -> Result<(StructureAlgebra, Tensor2), ForgeError> {
    let b = BialgebraCandidate::with_zero_coproducts(alg.clone());
    let d = double_algebra(&b, CoregularVariant::Signed)?;
    let rt = rtilde(&d.space, alg.dim());
    Ok((d, rt))
}

/// `𝓑((a,ξ),(b,η)) = ⟨a,η⟩ − ⟨b,ξ⟩` on `A⊕A*`.
pub fn double_form(space: &BasisSpace, n: usize) -> Result<BilinearForm, ForgeError> {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, Rational::one());
        m.set(n + i, i, -Rational::one());
    }
    BilinearForm::new(space, m)
}

/// `ν_ω` with `ω̂(ν_ω(b1), b2⊗b3) = −ω(b1, b2∘b3)` on a quadratic perm algebra.
pub fn nu_omega(b: &StructureAlgebra, omega: &BilinearForm) -> Result<Coproduct, ForgeError> {
    let n = b.dim();
    let w = &omega.matrix;
    let wi = w.inverse().map_err(|_| ForgeError::Singular("ω is degenerate".into()))?;
    let mut images = Vec::with_capacity(n);
    for b1 in 0..n {
        let mut s = Matrix::zeros(n, n);
        for b2 in 0..n {
            for b3 in 0..n {
                let prod = b.product(Role::Circ).basis(b2, b3);
                let v: Rational = (0..n).map(|k| w.get(b1, k) * &prod[k]).sum();
                s.set(b2, b3, v);
            }
        }
        images.push(wi.transpose().mul(&s).mul(&wi).neg());
    }
    Coproduct::new(&b.space, images)
}

/// `κ = Σ_j e_j⊗f_j` with `{f_j}` the ω-dual basis.
pub fn kappa(b: &StructureAlgebra, omega: &BilinearForm) -> Result<Tensor2, ForgeError> {
    let f = dual_basis(omega)?;
    Tensor2::from_matrix(&b.space, &b.space, Matrix::from_rows(f))
}

/// `κ♯ : B* → B`.
pub fn kappa_sharp(b: &StructureAlgebra, omega: &BilinearForm) -> Result<LinMap, ForgeError> {
    crate::linalg::sharp(&kappa(b, omega)?)
}

fn require_quadratic_perm(b: &StructureAlgebra, omega: &BilinearForm) -> Result<(), ForgeError> {
    require_kind(b, Kind::Perm)?;
    let mut rep = check_identities(b);
    rep.extend(check_quadratic(b, omega));
    precondition(&rep, "B is not a quadratic perm algebra")
}

/// Induced DPP bialgebra on `P⊗B`: `ν(p⊗b) = Δ(p)•ν_ω(b)`, `ϑ(p⊗b) = δ(p)•ν_ω(b)`.
pub fn induced_bialgebra(pb: &BialgebraCandidate, b: &StructureAlgebra, omega: &BilinearForm) -> Result<BialgebraCandidate, ForgeError> {
    require_kind(&pb.algebra, Kind::Poisson)?;
    precondition(&check_bialgebra(pb)?, "input is not a Poisson bialgebra")?;
    require_quadratic_perm(b, omega)?;
    let alg = poisson_tensor_perm(&pb.algebra, b)?;
    let nw = nu_omega(b, omega)?;
    let mut cops = Coproducts::new();
    for (src, dst) in [(Role::Dot, Role::Circ), (Role::Bracket, Role::Star)] {
        let c = pb.coproduct(src);
        let images = c.images.iter().flat_map(|x| nw.images.iter().map(move |y| x.kron(y))).collect();
        cops.insert(dst, Coproduct::new(&alg.space, images)?);
    }
    BialgebraCandidate::new(alg, cops)
}

/// `r̂ = Σ (x_i⊗e_j)⊗(y_i⊗f_j)` for `r = Σ x_i⊗y_i` and `κ = Σ e_j⊗f_j`.
pub fn lift_r(r: &Tensor2, alg: &StructureAlgebra, b: &StructureAlgebra, omega: &BilinearForm) -> Result<Tensor2, ForgeError> {
    if alg.space != r.left || alg.space != r.right {
        return Err(ForgeError::Shape("r must live in P⊗P".into()));
    }
    let k = kappa(b, omega)?;
    let space = alg.space.tensor(&b.space, &format!("{}⊗{}", alg.space.name, b.space.name));
    Tensor2::from_matrix(&space, &space, r.data.kron(&k.data))
}

/// `sharp(r̂) == sharp(r) ⊗ κ♯` as matrices.
pub fn check_sharp_factorization(r: &Tensor2, alg: &StructureAlgebra, b: &StructureAlgebra, omega: &BilinearForm) -> Result<bool, ForgeError> {
    let lifted = lift_r(r, alg, b, omega)?;
    let lhs = crate::linalg::sharp(&lifted)?.matrix;
    let rhs = crate::linalg::sharp(r)?.matrix.kron(&kappa_sharp(b, omega)?.matrix);
    Ok(lhs == rhs)
}

/// A candidate O-operator `T : V → A` relative to a representation.
#[derive(Clone, Debug)]
pub enum OOperatorCandidate {
    Dpp { rep: DppRep, t: Matrix },
    Poisson { rep: PoissonRep, t: Matrix },
}

/// Both O-operator identities on all carrier basis pairs; the representation must pass its own check.
pub fn check_o_operator(alg: &StructureAlgebra, cand: &OOperatorCandidate) -> Result<IdentityReport, ForgeError> {
    let n = alg.dim();
    let (carrier, t) = match cand {
        OOperatorCandidate::Dpp { rep, t } => {
            precondition(&check_dpp_rep(alg, rep)?, "representation check failed")?;
            (&rep.carrier, t)
        }
        OOperatorCandidate::Poisson { rep, t } => {
            precondition(&check_poisson_rep(alg, rep)?, "representation check failed")?;
            (&rep.carrier, t)
        }
    };
    let d = carrier.dim();
    if t.rows != n || t.cols != d {
        return Err(ForgeError::Shape("O-operator must map the carrier into the algebra".into()));
    }
    let vs: Vec<Vector> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
    let tv: Vec<Vector> = vs.iter().map(|v| t.apply(v)).collect();
    let mut report = IdentityReport::new();
    // (id, product role, left family, right family, sign on the right term)
    let specs: Vec<(&str, Role, &Vec<Matrix>, &Vec<Matrix>, i64)> = match cand {
        OOperatorCandidate::Dpp { rep, .. } => vec![
            ("o-operator.circ", Role::Circ, &rep.l, &rep.r, 1),
            ("o-operator.star", Role::Star, &rep.ll, &rep.rr, 1),
        ],
        OOperatorCandidate::Poisson { rep, .. } => vec![
            ("o-operator.dot", Role::Dot, &rep.mu, &rep.mu, 1),
            ("o-operator.bracket", Role::Bracket, &rep.rho, &rep.rho, -1),
        ],
    };
    for (id, role, lf, rf, sign) in specs {
        report.push(check_family(id, &carrier.labels, 2, |ix| {
            let (i, j) = (ix[0], ix[1]);
            let lhs = alg.mul(role, &tv[i], &tv[j]);
            let a = family_at(lf, &tv[i], d).apply(&vs[j]);
            let b = family_at(rf, &tv[j], d).apply(&vs[i]);
            let inner = if sign > 0 { vec_add(&a, &b) } else { vec_sub(&a, &b) };
            vec_terms(&alg.space, &vec_sub(&lhs, &t.apply(&inner)))
        }));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poisson_as_dpp;
    use crate::catalog;
    use crate::rational::q;
    use crate::rep::{poisson_coregular_rep, semidirect_product};
    use crate::ybe::{classify, DEFAULT_LYBE_SIGN};

    #[test]
    fn averaging_examples_on_p3() {
        let p3 = catalog::p3();
        let id = Matrix::identity(3);
        assert!(check_averaging(&p3, &id).unwrap().passed());
        let d = averaging_to_dpp(&p3, &id).unwrap();
        assert_eq!(d.product(Role::Circ), p3.product(Role::Dot));
        let zero = averaging_to_dpp(&p3, &Matrix::zeros(3, 3)).unwrap();
        assert!(zero.products.values().all(Product::is_zero));
        let proj = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert!(check_averaging(&p3, &proj).unwrap().passed());
        assert!(check_identities(&averaging_to_dpp(&p3, &proj).unwrap()).passed());
        // projecting onto the ideal span{e2, e3} is not averaging
        let ideal = Matrix::from_int_rows(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(!check_averaging(&p3, &ideal).unwrap().passed());
    }

    #[test]
    fn double_of_zero_coproducts_matches_semidirect() {
        let a2 = catalog::a2();
        let (d, _) = double_with_zero_coproducts(&a2).unwrap();
        let s = semidirect_product(&a2, &coregular_rep(&a2, CoregularVariant::Signed)).unwrap();
        assert_eq!(d.products, s.products);
    }

    #[test]
    fn doubles_are_factorizable() {
        let zero = StructureAlgebra::zero("Z", Kind::Dpp, BasisSpace::from_strs("Z", &["z1", "z2"]));
        for alg in [catalog::a2(), poisson_as_dpp(&catalog::p3()).unwrap(), zero] {
            let d = bialgebra_double(&BialgebraCandidate::with_zero_coproducts(alg), CoregularVariant::Signed).unwrap();
            let c = classify(&d.algebra, &d.rtilde, DEFAULT_LYBE_SIGN).unwrap();
            assert!(c.factorizable, "{}", d.algebra.name);
            assert_eq!(c.bialgebra_passed(), Some(true));
            let form = double_form(&d.algebra.space, d.algebra.dim() / 2).unwrap();
            assert!(check_quadratic(&d.algebra, &form).passed());
        }
    }

    #[test]
    fn b2_nu_omega_and_kappa() {
        let (b2, w) = catalog::b2();
        let nw = nu_omega(&b2, &w).unwrap();
        assert_eq!(nw.images[0], Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
        assert_eq!(nw.images[1], Matrix::from_int_rows(&[&[0, 0], &[0, 1]]));
        let k = kappa(&b2, &w).unwrap();
        assert_eq!(k.data, Matrix::from_int_rows(&[&[0, -1], &[1, 0]]));
        let ks = kappa_sharp(&b2, &w).unwrap();
        assert_eq!(ks.image(0), vec![q(0), q(-1)]);
        assert_eq!(ks.image(1), vec![q(1), q(0)]);
    }

    #[test]
    fn poisson_o_operator_for_skew_solution() {
        let p3 = catalog::p3();
        let r = catalog::p3_r();
        let cand = OOperatorCandidate::Poisson { rep: poisson_coregular_rep(&p3), t: r.data.transpose() };
        assert!(check_o_operator(&p3, &cand).unwrap().passed());
        let zero = OOperatorCandidate::Poisson { rep: poisson_coregular_rep(&p3), t: Matrix::zeros(3, 3) };
        assert!(check_o_operator(&p3, &zero).unwrap().passed());
    }
}
