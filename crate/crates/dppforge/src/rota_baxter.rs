//! Rota-Baxter operators, descendent algebras, quadratic Rota-Baxter structures,
//! and the factorizable r-matrix correspondence.

use std::collections::BTreeMap;

use crate::algebra::{check_family, check_identities, check_quadratic, vec_terms, Kind, Product, StructureAlgebra};
use crate::constructions::double_with_zero_coproducts;
use crate::linalg::{j_omega, vec_scale, BilinearForm, Matrix, Tensor2, Vector};
use crate::rational::Rational;
use crate::report::{IdentityReport, Term};
use crate::ybe::{classify, i_matrix, LybeSign};
use crate::ForgeError;

/// A linear operator `R` with weight `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbOperator {
    pub matrix: Matrix,
    pub weight: Rational,
}

impl RbOperator {
    pub fn new(alg: &StructureAlgebra, matrix: Matrix, weight: Rational) -> Result<Self, ForgeError> {
        if matrix.rows != alg.dim() || matrix.cols != alg.dim() {
            return Err(ForgeError::Shape("Rota-Baxter operator must be dim × dim".into()));
        }
        Ok(RbOperator { matrix, weight })
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.apply(v)
    }
}

fn add3(a: Vector, b: Vector, c: Vector) -> Vector {
    a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect()
}

/// `R(a1)·R(a2) = R(R(a1)·a2 + a1·R(a2) + λ a1·a2)` for every product role.
pub fn check_rb(alg: &StructureAlgebra, r: &RbOperator) -> IdentityReport {
    let n = alg.dim();
    let basis: Vec<Vector> = (0..n).map(|i| alg.basis_vec(i)).collect();
    let mut rep = IdentityReport::new();
    for &role in alg.products.keys() {
        let m = |x: &[Rational], y: &[Rational]| alg.mul(role, x, y);
        rep.push(check_family(&format!("rb.{}", role.name()), &alg.space.labels, 2, |t| {
            let (a1, a2) = (&basis[t[0]], &basis[t[1]]);
            let (ra1, ra2) = (r.apply(a1), r.apply(a2));
            let lhs = m(&ra1, &ra2);
            let inner = add3(m(&ra1, a2), m(a1, &ra2), vec_scale(&r.weight, &m(a1, a2)));
            let rhs = r.apply(&inner);
            let diff: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            vec_terms(&alg.space, &diff)
        }));
    }
    rep
}

fn descendent_products(alg: &StructureAlgebra, r: &RbOperator) -> BTreeMap<crate::Role, Product> {
    let n = alg.dim();
    let mut out = BTreeMap::new();
    for &role in alg.products.keys() {
        let mut p = Product::zero(n);
        for i in 0..n {
            for j in 0..n {
                let (a1, a2) = (alg.basis_vec(i), alg.basis_vec(j));
                let v = add3(
                    alg.mul(role, &r.apply(&a1), &a2),
                    alg.mul(role, &a1, &r.apply(&a2)),
                    vec_scale(&r.weight, &alg.mul(role, &a1, &a2)),
                );
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        p.add_entry(i, j, k, c);
                    }
                }
            }
        }
        out.insert(role, p);
    }
    out
}

/// The descendent algebra `a ·_R b = R(a)·b + a·R(b) + λ a·b`.
pub fn descendent(alg: &StructureAlgebra, r: &RbOperator) -> Result<StructureAlgebra, ForgeError> {
    let rep = check_rb(alg, r);
    if !rep.passed() {
        return Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: "not a Rota-Baxter operator".into() });
    }
    StructureAlgebra::new(&format!("{}_R", alg.name), alg.kind, alg.space.clone(), descendent_products(alg, r))
}

/// Identity check of the descendent algebra plus `R(a ·_R b) = R(a)·R(b)`.
pub fn check_descendent(alg: &StructureAlgebra, r: &RbOperator) -> Result<IdentityReport, ForgeError> {
    let d = descendent(alg, r)?;
    let mut rep = check_identities(&d);
    let n = alg.dim();
    for &role in alg.products.keys() {
        rep.push(check_family(&format!("rb.homomorphism.{}", role.name()), &alg.space.labels, 2, |t| {
            let (a1, a2) = (alg.basis_vec(t[0]), alg.basis_vec(t[1]));
            let lhs = r.apply(&d.mul(role, &a1, &a2));
            let rhs = alg.mul(role, &r.apply(&a1), &r.apply(&a2));
            let diff: Vector = (0..n).map(|k| &lhs[k] - &rhs[k]).collect();
            vec_terms(&alg.space, &diff)
        }));
    }
    Ok(rep)
}

/// `(A, ω, R)` with `R` of weight `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRb {
    pub algebra: StructureAlgebra,
    pub omega: BilinearForm,
    pub rb: RbOperator,
}

/// Quadratic check, Rota-Baxter check, and `ω(a1,R a2) + ω(R a1,a2) + λ ω(a1,a2) = 0`.
pub fn check_quadratic_rb(q: &QuadraticRb) -> IdentityReport {
    let alg = &q.algebra;
    let mut rep = check_quadratic(alg, &q.omega);
    rep.extend(check_rb(alg, &q.rb));
    let w = |x: &[Rational], y: &[Rational]| q.omega.eval(x, y);
    rep.push(check_family("qrb.compat", &alg.space.labels, 2, |t| {
        let (a1, a2) = (alg.basis_vec(t[0]), alg.basis_vec(t[1]));
        let v = w(&a1, &q.rb.apply(&a2)) + w(&q.rb.apply(&a1), &a2) + &q.rb.weight * &w(&a1, &a2);
        if v.is_zero() {
            vec![]
        } else {
            vec![Term { basis: "ω".into(), coeff: v }]
        }
    }));
    rep
}

/// `R = λ τ(r)♯ 𝓘⁻¹` and `ω_𝓘(a1, a2) = ⟨𝓘⁻¹(a1), a2⟩`.
pub fn factorizable_to_qrb(alg: &StructureAlgebra, r: &Tensor2, weight: &Rational, sign: LybeSign) -> Result<QuadraticRb, ForgeError> {
    if weight.is_zero() {
        return Err(ForgeError::Precondition { id: "weight".into(), msg: "λ must be nonzero".into() });
    }
    let cl = classify(alg, r, sign)?;
    let i = i_matrix(r);
    let i_inv = i.inverse().map_err(|_| ForgeError::Singular("𝓘 = r♯ − τ(r)♯ is not invertible".into()))?;
    if !cl.factorizable {
        return Err(ForgeError::Precondition { id: "classify.factorizable".into(), msg: "r is not factorizable".into() });
    }
    let tau_sharp = r.data.clone();
    let rb = RbOperator::new(alg, tau_sharp.mul(&i_inv).scale(weight), weight.clone())?;
    let omega = BilinearForm::new(&alg.space, i_inv.transpose())?;
    Ok(QuadraticRb { algebra: alg.clone(), omega, rb })
}

/// `r♯ = (1/λ)(R + λ id) J_ω`.
pub fn qrb_to_rmatrix(q: &QuadraticRb) -> Result<Tensor2, ForgeError> {
    let lambda = &q.rb.weight;
    let inv = lambda.recip().ok_or_else(|| ForgeError::Precondition { id: "weight".into(), msg: "λ must be nonzero".into() })?;
    let rep = check_quadratic_rb(q);
    if !rep.passed() {
        return Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: "not a quadratic Rota-Baxter algebra".into() });
    }
    let j = j_omega(&q.omega)?;
    let n = q.algebra.dim();
    let sharp = q.rb.matrix.add(&Matrix::identity(n).scale(lambda)).mul(&j.matrix).scale(&inv);
    Tensor2::from_matrix(&q.algebra.space, &q.algebra.space, sharp.transpose())
}

/// `r = (1/λ) Σ_i (f_i ⊗ (λ id + R)(e_i) + R(e_i) ⊗ f_i)` on `A ⋉ A*`.
pub fn rb_semidirect_r(alg: &StructureAlgebra, r: &RbOperator) -> Result<(StructureAlgebra, Tensor2), ForgeError> {
    let inv = r.weight.recip().ok_or_else(|| ForgeError::Precondition { id: "weight".into(), msg: "λ must be nonzero".into() })?;
    let rep = check_rb(alg, r);
    if !rep.passed() {
        return Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: "not a Rota-Baxter operator".into() });
    }
    let (semi, _) = double_with_zero_coproducts(alg)?;
    let n = alg.dim();
    let mut x = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let re = r.apply(&alg.basis_vec(i));
        for k in 0..n {
            // f_i ⊗ (λ e_i + R e_i)
            let mut c = re[k].clone();
            if k == i {
                c += &r.weight;
            }
            x.add_at(n + i, k, &(&c * &inv));
            // R(e_i) ⊗ f_i
            x.add_at(k, n + i, &(&re[k] * &inv));
        }
    }
    let t = Tensor2::from_matrix(&semi.space, &semi.space, x)?;
    Ok((semi, t))
}

/// `⟨r_ω, ξ1⊗ξ2⟩ = ⟨R(J_ω ξ1), ξ2⟩` for a weight-zero quadratic Rota-Baxter algebra.
pub fn triangular_from_qrb0(q: &QuadraticRb) -> Result<Tensor2, ForgeError> {
    if !q.rb.weight.is_zero() {
        return Err(ForgeError::Precondition { id: "weight".into(), msg: "λ must be zero".into() });
    }
    let rep = check_quadratic_rb(q);
    if !rep.passed() {
        return Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: "not a quadratic Rota-Baxter algebra".into() });
    }
    let j = j_omega(&q.omega)?;
    Tensor2::from_matrix(&q.algebra.space, &q.algebra.space, q.rb.matrix.mul(&j.matrix).transpose())
}

/// Kind guard shared by the CLI.
pub fn require_dpp(alg: &StructureAlgebra) -> Result<(), ForgeError> {
    if alg.kind != Kind::Dpp {
        return Err(ForgeError::Kind(format!("expected a dpp algebra, got {}", alg.kind)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;
    use crate::ybe::DEFAULT_LYBE_SIGN;

    #[test]
    fn identity_weight_minus_one_is_rb() {
        let a2 = catalog::a2();
        let id = RbOperator::new(&a2, Matrix::identity(2), q(-1)).unwrap();
        assert!(check_rb(&a2, &id).passed());
        assert_eq!(descendent(&a2, &id).unwrap().products, a2.products);
        let zero = RbOperator::new(&a2, Matrix::zeros(2, 2), q(0)).unwrap();
        assert!(check_rb(&a2, &zero).passed());
        assert!(descendent(&a2, &zero).unwrap().products.values().all(Product::is_zero));
    }

    #[test]
    fn identity_weight_zero_fails_on_a2() {
        let a2 = catalog::a2();
        let id = RbOperator::new(&a2, Matrix::identity(2), q(0)).unwrap();
        let rep = check_rb(&a2, &id);
        let r = rep.get("rb.circ").unwrap();
        assert_eq!(r.witnesses[0].args, vec!["e2", "e2"]);
        assert_eq!(r.witnesses[0].residual, vec![Term { basis: "e1".into(), coeff: q(-1) }]);
        assert!(descendent(&a2, &id).is_err());
    }

    #[test]
    fn round_trip_on_double_a2() {
        let (d, rt) = double_with_zero_coproducts(&catalog::a2()).unwrap();
        for w in [q(-1), q(1), q(2)] {
            let qrb = factorizable_to_qrb(&d, &rt, &w, DEFAULT_LYBE_SIGN).unwrap();
            assert!(check_quadratic_rb(&qrb).passed());
            assert_eq!(qrb_to_rmatrix(&qrb).unwrap(), rt);
        }
        assert!(factorizable_to_qrb(&d, &rt, &q(0), DEFAULT_LYBE_SIGN).is_err());
    }

    #[test]
    fn semidirect_r_with_identity_is_minus_rtilde() {
        let a2 = catalog::a2();
        let id = RbOperator::new(&a2, Matrix::identity(2), q(-1)).unwrap();
        let (semi, r) = rb_semidirect_r(&a2, &id).unwrap();
        let (_, rt) = double_with_zero_coproducts(&a2).unwrap();
        assert_eq!(r.data, rt.data.neg());
        assert!(classify(&semi, &r, DEFAULT_LYBE_SIGN).unwrap().factorizable);
        let zero = RbOperator::new(&a2, Matrix::zeros(2, 2), q(-1)).unwrap();
        let (semi, r0) = rb_semidirect_r(&a2, &zero).unwrap();
        assert!(classify(&semi, &r0, DEFAULT_LYBE_SIGN).unwrap().factorizable);
        let bad = RbOperator::new(&a2, Matrix::identity(2), q(0)).unwrap();
        assert!(rb_semidirect_r(&a2, &bad).is_err());
    }
}
