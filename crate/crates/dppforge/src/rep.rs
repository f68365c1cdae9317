//! Representations of DPP and Poisson algebras, semidirect products, and the
//! regular and coregular representations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_family, Kind, Product, Role, StructureAlgebra};
use crate::linalg::{unit_vec, BasisSpace, Matrix};
use crate::rational::Rational;
use crate::report::{IdentityReport, Term};
use crate::ForgeError;

/// `Σ a_i M_i` for an operator family given per basis element.
pub fn family_at(fam: &[Matrix], a: &[Rational], dim: usize) -> Matrix {
    let mut out = Matrix::zeros(dim, dim);
    for (ai, m) in a.iter().zip(fam) {
        if ai.is_zero() {
            continue;
        }
        for (o, x) in out.data.iter_mut().zip(&m.data) {
            if !x.is_zero() {
                *o += &(ai * x);
            }
        }
    }
    out
}

/// Nonzero matrix entries as residual terms, keyed `row<-col`.
pub fn matrix_terms(carrier: &BasisSpace, m: &Matrix) -> Vec<Term> {
    let mut out = Vec::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.push(Term { basis: format!("{}<-{}", carrier.labels[i], carrier.labels[j]), coeff: c.clone() });
            }
        }
    }
    out
}

/// Which of the two coregular tuples to build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoregularVariant {
    /// `(ℓ*, ℓ*−r*, 𝔩*, −𝔩*−𝔯*)`
    Standard,
    /// `(−ℓ*, r*−ℓ*, 𝔩*, −𝔩*−𝔯*)`
    #[default]
    Signed,
}

impl FromStr for CoregularVariant {
    type Err = ForgeError;
    fn from_str(s: &str) -> Result<Self, ForgeError> {
        match s {
            "standard" => Ok(CoregularVariant::Standard),
            "signed" => Ok(CoregularVariant::Signed),
            _ => Err(ForgeError::input(format!("unknown coregular variant {s:?}"))),
        }
    }
}

impl fmt::Display for CoregularVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoregularVariant::Standard => "standard",
            CoregularVariant::Signed => "signed",
        })
    }
}

/// A DPP representation `(V, ℓ, r, 𝔩, 𝔯)`; each family holds one carrier matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DppRep {
    pub carrier: BasisSpace,
    pub l: Vec<Matrix>,
    pub r: Vec<Matrix>,
    pub ll: Vec<Matrix>,
    pub rr: Vec<Matrix>,
}

impl DppRep {
    pub fn zero(alg_dim: usize, carrier: BasisSpace) -> Self {
        let d = carrier.dim();
        let z = vec![Matrix::zeros(d, d); alg_dim];
        DppRep { carrier, l: z.clone(), r: z.clone(), ll: z.clone(), rr: z }
    }

    pub fn validate(&self, alg: &StructureAlgebra) -> Result<(), ForgeError> {
        let d = self.carrier.dim();
        for fam in [&self.l, &self.r, &self.ll, &self.rr] {
            if fam.len() != alg.dim() || fam.iter().any(|m| m.rows != d || m.cols != d) {
                return Err(ForgeError::Shape("representation needs one carrier-square matrix per basis element".into()));
            }
        }
        Ok(())
    }

    pub fn families(&self) -> [&Vec<Matrix>; 4] {
        [&self.l, &self.r, &self.ll, &self.rr]
    }
}

/// Verifies the perm, Leibniz and mixed representation axioms on every basis pair.
pub fn check_dpp_rep(alg: &StructureAlgebra, rep: &DppRep) -> Result<IdentityReport, ForgeError> {
    if alg.kind != Kind::Dpp {
        return Err(ForgeError::Kind(format!("expected a dpp algebra, got {}", alg.kind)));
    }
    rep.validate(alg)?;
    let n = alg.dim();
    let d = rep.carrier.dim();
    let basis: Vec<Vec<Rational>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let c = |x: &[Rational], y: &[Rational]| alg.mul(Role::Circ, x, y);
    let s = |x: &[Rational], y: &[Rational]| alg.mul(Role::Star, x, y);
    let l = |a: &[Rational]| family_at(&rep.l, a, d);
    let r = |a: &[Rational]| family_at(&rep.r, a, d);
    let ll = |a: &[Rational]| family_at(&rep.ll, a, d);
    let rr = |a: &[Rational]| family_at(&rep.rr, a, d);
    type Fam<'a> = Box<dyn Fn(&[Rational], &[Rational]) -> Matrix + Sync + 'a>;
    let fams: Vec<(&str, Fam)> = vec![
        ("rep.perm.l-hom", Box::new(|a1, a2| l(&c(a1, a2)).sub(&l(a1).mul(&l(a2))))),
        ("rep.perm.l-comm", Box::new(|a1, a2| l(a1).mul(&l(a2)).sub(&l(a2).mul(&l(a1))))),
        ("rep.perm.r-hom", Box::new(|a1, a2| r(&c(a1, a2)).sub(&r(a2).mul(&r(a1))))),
        ("rep.perm.r-rl", Box::new(|a1, a2| r(a2).mul(&r(a1)).sub(&r(a2).mul(&l(a1))))),
        ("rep.perm.r-lr", Box::new(|a1, a2| r(a2).mul(&l(a1)).sub(&l(a1).mul(&r(a2))))),
        ("rep.leibniz.l", Box::new(|a1, a2| ll(&s(a1, a2)).sub(&ll(a1).mul(&ll(a2))).add(&ll(a2).mul(&ll(a1))))),
        ("rep.leibniz.r1", Box::new(|a1, a2| rr(a2).mul(&rr(a1)).sub(&rr(&s(a1, a2))).add(&ll(a1).mul(&rr(a2))))),
        ("rep.leibniz.r2", Box::new(|a1, a2| rr(a2).mul(&rr(a1)).add(&rr(a2).mul(&ll(a1))))),
        ("rep.mixed.1", Box::new(|a1, a2| ll(&c(a1, a2)).sub(&l(a1).mul(&ll(a2))).sub(&l(a2).mul(&ll(a1))))),
        ("rep.mixed.2a", Box::new(|a1, a2| rr(a2).mul(&l(a1)).sub(&l(a1).mul(&rr(a2))).sub(&r(&s(a1, a2))))),
        ("rep.mixed.2b", Box::new(|a1, a2| rr(a2).mul(&l(a1)).sub(&rr(a2).mul(&r(a1))))),
        ("rep.mixed.3a", Box::new(|a1, a2| l(&s(a1, a2)).sub(&ll(a1).mul(&l(a2))).add(&l(a2).mul(&ll(a1))))),
        ("rep.mixed.3b", Box::new(|a1, a2| l(&s(a1, a2)).add(&l(&s(a2, a1))))),
        ("rep.mixed.4a", Box::new(|a1, a2| r(a2).mul(&rr(a1)).sub(&rr(&c(a1, a2))).add(&l(a1).mul(&rr(a2))))),
        ("rep.mixed.4b", Box::new(|a1, a2| r(a2).mul(&rr(a1)).add(&r(a2).mul(&ll(a1))))),
        ("rep.mixed.4c", Box::new(|a1, a2| r(a2).mul(&rr(a1)).sub(&r(&s(a1, a2))).add(&ll(a1).mul(&r(a2))))),
    ];
    let mut report = IdentityReport::new();
    for (id, f) in &fams {
        report.push(check_family(id, &alg.space.labels, 2, |t| matrix_terms(&rep.carrier, &f(&basis[t[0]], &basis[t[1]]))));
    }
    Ok(report)
}

fn per_basis(alg: &StructureAlgebra, f: impl Fn(&[Rational]) -> Matrix) -> Vec<Matrix> {
    (0..alg.dim()).map(|i| f(&alg.basis_vec(i))).collect()
}

/// `(A, ℓ, r, 𝔩, 𝔯)` read off the left and right multiplications.
pub fn regular_rep(alg: &StructureAlgebra) -> DppRep {
    DppRep {
        carrier: alg.space.clone(),
        l: per_basis(alg, |a| alg.left(Role::Circ, a)),
        r: per_basis(alg, |a| alg.right(Role::Circ, a)),
        ll: per_basis(alg, |a| alg.left(Role::Star, a)),
        rr: per_basis(alg, |a| alg.right(Role::Star, a)),
    }
}

/// `β*(a) = −β(a)ᵀ`: the dual action on the dual basis.
pub fn star(m: &Matrix) -> Matrix {
    m.transpose().neg()
}

/// The coregular representation on `A*`, in either variant.
pub fn coregular_rep(alg: &StructureAlgebra, variant: CoregularVariant) -> DppRep {
    let g = regular_rep(alg);
    let n = alg.dim();
    let map = |f: &dyn Fn(usize) -> Matrix| (0..n).map(f).collect::<Vec<_>>();
    let ls = |i: usize| star(&g.l[i]);
    let rs = |i: usize| star(&g.r[i]);
    let lls = |i: usize| star(&g.ll[i]);
    let rrs = |i: usize| star(&g.rr[i]);
    let (l, r) = match variant {
        CoregularVariant::Standard => (map(&ls), map(&|i| ls(i).sub(&rs(i)))),
        CoregularVariant::Signed => (map(&|i| ls(i).neg()), map(&|i| rs(i).sub(&ls(i)))),
    };
    DppRep { carrier: alg.space.dual(), l, r, ll: map(&lls), rr: map(&|i| lls(i).neg().sub(&rrs(i))) }
}

/// `A ⋉ V` with basis (A-basis, then V-basis).
pub fn semidirect_product(alg: &StructureAlgebra, rep: &DppRep) -> Result<StructureAlgebra, ForgeError> {
    rep.validate(alg)?;
    let n = alg.dim();
    let d = rep.carrier.dim();
    let space = alg.space.direct_sum(&rep.carrier, &format!("{}⋉{}", alg.space.name, rep.carrier.name))?;
    let mut products = BTreeMap::new();
    for (role, lf, rf) in [(Role::Circ, &rep.l, &rep.r), (Role::Star, &rep.ll, &rep.rr)] {
        let mut p = Product::zero(n + d);
        let src = alg.product(role);
        for (idx, c) in src.constants.nonzero() {
            p.add_entry(idx[0], idx[1], idx[2], &c);
        }
        for i in 0..n {
            for j in 0..d {
                for k in 0..d {
                    let a = lf[i].get(k, j);
                    if !a.is_zero() {
                        p.add_entry(i, n + j, n + k, a);
                    }
                    let b = rf[i].get(k, j);
                    if !b.is_zero() {
                        p.add_entry(n + j, i, n + k, b);
                    }
                }
            }
        }
        products.insert(role, p);
    }
    StructureAlgebra::new(&format!("{}⋉{}", alg.name, rep.carrier.name), Kind::Dpp, space, products)
}

/// True when `φ : V1 → V2` intertwines all four families.
pub fn is_rep_morphism(a: &DppRep, b: &DppRep, phi: &Matrix) -> bool {
    a.families().iter().zip(b.families().iter()).all(|(fa, fb)| fa.iter().zip(fb.iter()).all(|(x, y)| phi.mul(x) == y.mul(phi)))
}

/// A Poisson representation `(V, μ, ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonRep {
    pub carrier: BasisSpace,
    pub mu: Vec<Matrix>,
    pub rho: Vec<Matrix>,
}

pub fn check_poisson_rep(alg: &StructureAlgebra, rep: &PoissonRep) -> Result<IdentityReport, ForgeError> {
    if alg.kind != Kind::Poisson {
        return Err(ForgeError::Kind(format!("expected a poisson algebra, got {}", alg.kind)));
    }
    let n = alg.dim();
    let d = rep.carrier.dim();
    if rep.mu.len() != n || rep.rho.len() != n || rep.mu.iter().chain(&rep.rho).any(|m| m.rows != d || m.cols != d) {
        return Err(ForgeError::Shape("representation needs one carrier-square matrix per basis element".into()));
    }
    let basis: Vec<Vec<Rational>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let dot = |x: &[Rational], y: &[Rational]| alg.mul(Role::Dot, x, y);
    let br = |x: &[Rational], y: &[Rational]| alg.mul(Role::Bracket, x, y);
    let mu = |a: &[Rational]| family_at(&rep.mu, a, d);
    let rho = |a: &[Rational]| family_at(&rep.rho, a, d);
    type Fam<'a> = Box<dyn Fn(&[Rational], &[Rational]) -> Matrix + Sync + 'a>;
    let fams: Vec<(&str, Fam)> = vec![
        ("prep.assoc.hom", Box::new(|p1, p2| mu(&dot(p1, p2)).sub(&mu(p1).mul(&mu(p2))))),
        ("prep.lie.hom", Box::new(|p1, p2| rho(&br(p1, p2)).sub(&rho(p1).mul(&rho(p2))).add(&rho(p2).mul(&rho(p1))))),
        ("prep.mixed.rho", Box::new(|p1, p2| rho(&dot(p1, p2)).sub(&mu(p2).mul(&rho(p1))).sub(&mu(p1).mul(&rho(p2))))),
        ("prep.mixed.mu", Box::new(|p1, p2| mu(&br(p1, p2)).sub(&rho(p1).mul(&mu(p2))).add(&mu(p2).mul(&rho(p1))))),
    ];
    let mut report = IdentityReport::new();
    for (id, f) in &fams {
        report.push(check_family(id, &alg.space.labels, 2, |t| matrix_terms(&rep.carrier, &f(&basis[t[0]], &basis[t[1]]))));
    }
    Ok(report)
}

/// `(P, 𝔲, ad)`.
pub fn poisson_regular_rep(alg: &StructureAlgebra) -> PoissonRep {
    PoissonRep {
        carrier: alg.space.clone(),
        mu: per_basis(alg, |a| alg.left(Role::Dot, a)),
        rho: per_basis(alg, |a| alg.left(Role::Bracket, a)),
    }
}

/// `(P*, −𝔲*, ad*)`.
pub fn poisson_coregular_rep(alg: &StructureAlgebra) -> PoissonRep {
    let reg = poisson_regular_rep(alg);
    PoissonRep {
        carrier: alg.space.dual(),
        mu: reg.mu.iter().map(|m| star(m).neg()).collect(),
        rho: reg.rho.iter().map(star).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identities, poisson_as_dpp};
    use crate::catalog;
    use crate::rational::q;

    #[test]
    fn a2_regular_and_coregular() {
        let a2 = catalog::a2();
        let reg = regular_rep(&a2);
        assert!(check_dpp_rep(&a2, &reg).unwrap().passed());
        // ℓ(e2) sends e2 to e1 and nothing else
        assert_eq!(reg.l[1], Matrix::from_int_rows(&[&[0, 1], &[0, 0]]));
        for v in [CoregularVariant::Standard, CoregularVariant::Signed] {
            assert!(check_dpp_rep(&a2, &coregular_rep(&a2, v)).unwrap().passed());
        }
        // (ℓ*(e2) f1)(e2) = −f1(e2∘e2) = −1
        let ls = star(&reg.l[1]);
        assert_eq!(ls.get(1, 0), &q(-1));
    }

    #[test]
    fn negated_right_leibniz_action_fails_on_p3() {
        let p = poisson_as_dpp(&catalog::p3()).unwrap();
        let mut reg = regular_rep(&p);
        reg.rr = reg.rr.iter().map(Matrix::neg).collect();
        let rep = check_dpp_rep(&p, &reg).unwrap();
        let fam = rep.get("rep.leibniz.r1").unwrap();
        assert!(!fam.passed());
        assert!(!fam.witnesses.is_empty());
        // on A2 every triple product vanishes, so the same corruption goes unnoticed
        let a2 = catalog::a2();
        let mut r2 = regular_rep(&a2);
        r2.rr = r2.rr.iter().map(Matrix::neg).collect();
        assert!(check_dpp_rep(&a2, &r2).unwrap().passed());
    }

    #[test]
    fn semidirect_of_zero_carrier_is_copy() {
        let a2 = catalog::a2();
        let rep = DppRep::zero(2, BasisSpace::from_strs("V", &[]));
        let s = semidirect_product(&a2, &rep).unwrap();
        assert_eq!(s.products, a2.products);
    }

    #[test]
    fn semidirect_with_coregular_passes() {
        let p = poisson_as_dpp(&catalog::p3()).unwrap();
        for v in [CoregularVariant::Standard, CoregularVariant::Signed] {
            let s = semidirect_product(&p, &coregular_rep(&p, v)).unwrap();
            assert!(check_identities(&s).passed());
        }
    }

    #[test]
    fn poisson_reps_of_p3() {
        let p3 = catalog::p3();
        assert!(check_poisson_rep(&p3, &poisson_regular_rep(&p3)).unwrap().passed());
        let co = check_poisson_rep(&p3, &poisson_coregular_rep(&p3)).unwrap();
        assert!(co.passed(), "{}", co.to_text());
    }
}
