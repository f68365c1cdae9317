//! Structure-constant algebras of each kind, their identity checkers, and
//! quadratic (invariant skew-symmetric form) validation.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{is_zero_vec, unit_vec, vec_axpy, zero_vec, BasisSpace, BilinearForm, Matrix, Tensor3, Vector};
use crate::rational::Rational;
use crate::report::{IdentityReport, IdentityResult, Term, Witness};
use crate::ForgeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    CommAssoc,
    Lie,
    Perm,
    Leibniz,
    Poisson,
    Dpp,
}

impl Kind {
    /// The product roles an algebra of this kind carries.
    pub fn roles(self) -> &'static [Role] {
        match self {
            Kind::CommAssoc => &[Role::Dot],
            Kind::Lie => &[Role::Bracket],
            Kind::Perm => &[Role::Circ],
            Kind::Leibniz => &[Role::Star],
            Kind::Poisson => &[Role::Dot, Role::Bracket],
            Kind::Dpp => &[Role::Circ, Role::Star],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::CommAssoc => "comm-assoc",
            Kind::Lie => "lie",
            Kind::Perm => "perm",
            Kind::Leibniz => "leibniz",
            Kind::Poisson => "poisson",
            Kind::Dpp => "dpp",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Dot,
    Bracket,
    Circ,
    Star,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Dot => "dot",
            Role::Bracket => "bracket",
            Role::Circ => "circ",
            Role::Star => "star",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "dot" => Some(Role::Dot),
            "bracket" => Some(Role::Bracket),
            "circ" => Some(Role::Circ),
            "star" => Some(Role::Star),
            _ => None,
        }
    }
}

/// A bilinear product given by structure constants `c[i][j][k]` (coefficient of `e_k` in `e_i·e_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub constants: Tensor3,
}

impl Product {
    pub fn zero(n: usize) -> Self {
        Product { constants: Tensor3::zeros(n, n, n) }
    }

    pub fn dim(&self) -> usize {
        self.constants.dims[0]
    }

    /// `e_i · e_j` as a coordinate slice.
    pub fn basis(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        let start = (i * n + j) * n;
        &self.constants.data[start..start + n]
    }

    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, c: &Rational) {
        self.constants.add_at(i, j, k, c);
    }

    pub fn is_zero(&self) -> bool {
        self.constants.is_zero()
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_axpy(&mut out, &(xi * yj), self.basis(i, j));
            }
        }
        out
    }

    /// Matrix of `b ↦ a·b`.
    pub fn left(&self, a: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &unit_vec(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Matrix of `b ↦ b·a`.
    pub fn right(&self, a: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&unit_vec(n, j), a)).collect();
        Matrix::from_columns(n, &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    pub name: String,
    pub kind: Kind,
    pub space: BasisSpace,
    pub products: BTreeMap<Role, Product>,
}

impl StructureAlgebra {
    pub fn new(
        name: &str,
        kind: Kind,
        space: BasisSpace,
        products: BTreeMap<Role, Product>,
    ) -> Result<Self, ForgeError> {
        let want: Vec<Role> = kind.roles().to_vec();
        let have: Vec<Role> = products.keys().copied().collect();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        if have != want_sorted {
            return Err(ForgeError::Kind(format!(
                "kind {kind} needs product roles {:?}, got {:?}",
                want.iter().map(|r| r.name()).collect::<Vec<_>>(),
                have.iter().map(|r| r.name()).collect::<Vec<_>>()
            )));
        }
        let n = space.dim();
        if products.values().any(|p| p.constants.dims != [n, n, n]) {
            return Err(ForgeError::Shape("structure constants must be dim³".into()));
        }
        Ok(StructureAlgebra { name: name.to_string(), kind, space, products })
    }

    /// All products zero.
    pub fn zero(name: &str, kind: Kind, space: BasisSpace) -> Self {
        let n = space.dim();
        let products = kind.roles().iter().map(|&r| (r, Product::zero(n))).collect();
        StructureAlgebra { name: name.to_string(), kind, space, products }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn product(&self, role: Role) -> &Product {
        self.products.get(&role).unwrap_or_else(|| panic!("algebra {} has no {} product", self.name, role.name()))
    }

    pub fn product_mut(&mut self, role: Role) -> &mut Product {
        self.products.get_mut(&role).expect("role present")
    }

    /// Adds `c·e_k` to `e_i (role) e_j`.
    pub fn set_entry(&mut self, role: Role, i: usize, j: usize, k: usize, c: &Rational) {
        self.product_mut(role).add_entry(i, j, k, c);
    }

    pub fn mul(&self, role: Role, x: &[Rational], y: &[Rational]) -> Vector {
        self.product(role).mul(x, y)
    }

    pub fn left(&self, role: Role, a: &[Rational]) -> Matrix {
        self.product(role).left(a)
    }

    pub fn right(&self, role: Role, a: &[Rational]) -> Matrix {
        self.product(role).right(a)
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn vec_terms(&self, v: &[Rational]) -> Vec<Term> {
        vec_terms(&self.space, v)
    }
}

pub fn vec_terms(space: &BasisSpace, v: &[Rational]) -> Vec<Term> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Term { basis: space.labels[i].clone(), coeff: c.clone() })
        .collect()
}

/// Enumerates all index tuples of the given arity in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    (0..total)
        .map(|mut t| {
            let mut v = vec![0; arity];
            for slot in (0..arity).rev() {
                v[slot] = t % n;
                t /= n;
            }
            v
        })
        .collect()
}

/// Evaluates `f` on every basis tuple; a tuple fails when `f` returns a nonempty residual.
pub fn check_family<F>(id: &str, labels: &[String], arity: usize, f: F) -> IdentityResult
where
    F: Fn(&[usize]) -> Vec<Term> + Sync,
{
    let all = tuples(labels.len(), arity);
    let failing: Vec<Witness> = all
        .par_iter()
        .filter_map(|t| {
            let residual = f(t);
            (!residual.is_empty()).then(|| Witness { args: t.iter().map(|&i| labels[i].clone()).collect(), residual })
        })
        .collect();
    IdentityResult::from_failures(id, all.len(), failing)
}

type Tri<'a> = Box<dyn Fn(&[Rational], &[Rational], &[Rational]) -> Vector + Sync + 'a>;

fn family3(alg: &StructureAlgebra, id: &str, f: Tri<'_>) -> IdentityResult {
    let n = alg.dim();
    let basis: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    check_family(id, &alg.space.labels, 3, |t| {
        let v = f(&basis[t[0]], &basis[t[1]], &basis[t[2]]);
        alg.vec_terms(&v)
    })
}

fn family2(alg: &StructureAlgebra, id: &str, f: impl Fn(&[Rational], &[Rational]) -> Vector + Sync) -> IdentityResult {
    let n = alg.dim();
    let basis: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    check_family(id, &alg.space.labels, 2, |t| alg.vec_terms(&f(&basis[t[0]], &basis[t[1]])))
}

fn sub(a: Vector, b: Vector) -> Vector {
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

fn add(a: Vector, b: Vector) -> Vector {
    a.iter().zip(&b).map(|(x, y)| x + y).collect()
}

/// Identity ids checked for a DPP algebra, in report order.
pub const DPP_IDS: [&str; 8] = [
    "perm.assoc",
    "perm.left-comm",
    "leibniz",
    "dpp.compat.circ-star.1",
    "dpp.compat.star-circ.1",
    "dpp.compat.star-circ.2",
    "dpp.derived.circ-star.sym",
    "dpp.derived.mixed",
];

fn perm_families(alg: &StructureAlgebra, c: Role) -> Vec<IdentityResult> {
    let m = move |x: &[Rational], y: &[Rational]| alg.mul(c, x, y);
    vec![
        family3(alg, "perm.assoc", Box::new(move |a, b, d| sub(m(a, &m(b, d)), m(&m(a, b), d)))),
        family3(alg, "perm.left-comm", Box::new(move |a, b, d| sub(m(&m(a, b), d), m(&m(b, a), d)))),
    ]
}

fn leibniz_family(alg: &StructureAlgebra, s: Role) -> IdentityResult {
    let m = move |x: &[Rational], y: &[Rational]| alg.mul(s, x, y);
    family3(alg, "leibniz", Box::new(move |a, b, d| sub(sub(m(a, &m(b, d)), m(&m(a, b), d)), m(b, &m(a, d)))))
}

fn comm_assoc_families(alg: &StructureAlgebra, r: Role) -> Vec<IdentityResult> {
    let m = move |x: &[Rational], y: &[Rational]| alg.mul(r, x, y);
    vec![
        family2(alg, "comm.commutative", move |a, b| sub(m(a, b), m(b, a))),
        family3(alg, "comm.associative", Box::new(move |a, b, d| sub(m(&m(a, b), d), m(a, &m(b, d))))),
    ]
}

fn lie_families(alg: &StructureAlgebra, r: Role) -> Vec<IdentityResult> {
    let m = move |x: &[Rational], y: &[Rational]| alg.mul(r, x, y);
    vec![
        family2(alg, "lie.antisymmetric", move |a, b| add(m(a, b), m(b, a))),
        family3(
            alg,
            "lie.jacobi",
            Box::new(move |a, b, d| add(add(m(a, &m(b, d)), m(b, &m(d, a))), m(d, &m(a, b)))),
        ),
    ]
}

/// Evaluates every defining identity of `alg.kind` on all basis tuples.
pub fn check_identities(alg: &StructureAlgebra) -> IdentityReport {
    let mut rep = IdentityReport::new();
    match alg.kind {
        Kind::CommAssoc => comm_assoc_families(alg, Role::Dot).into_iter().for_each(|r| rep.push(r)),
        Kind::Lie => lie_families(alg, Role::Bracket).into_iter().for_each(|r| rep.push(r)),
        Kind::Perm => perm_families(alg, Role::Circ).into_iter().for_each(|r| rep.push(r)),
        Kind::Leibniz => rep.push(leibniz_family(alg, Role::Star)),
        Kind::Poisson => {
            let fams = comm_assoc_families(alg, Role::Dot);
            let lie = lie_families(alg, Role::Bracket);
            // pair checks first so failures localize
            rep.push(fams[0].clone());
            rep.push(lie[0].clone());
            rep.push(fams[1].clone());
            rep.push(lie[1].clone());
            let d = |x: &[Rational], y: &[Rational]| alg.mul(Role::Dot, x, y);
            let b = |x: &[Rational], y: &[Rational]| alg.mul(Role::Bracket, x, y);
            rep.push(family3(
                alg,
                "poisson.leibniz-rule",
                Box::new(move |p1, p2, p3| sub(sub(b(p1, &d(p2, p3)), d(&b(p1, p2), p3)), d(p2, &b(p1, p3)))),
            ));
        }
        Kind::Dpp => {
            for r in perm_families(alg, Role::Circ) {
                rep.push(r);
            }
            rep.push(leibniz_family(alg, Role::Star));
            let c = |x: &[Rational], y: &[Rational]| alg.mul(Role::Circ, x, y);
            let s = |x: &[Rational], y: &[Rational]| alg.mul(Role::Star, x, y);
            rep.push(family3(
                alg,
                "dpp.compat.circ-star.1",
                Box::new(move |a1, a2, a3| sub(sub(s(&c(a1, a2), a3), c(a1, &s(a2, a3))), c(a2, &s(a1, a3)))),
            ));
            rep.push(family3(
                alg,
                "dpp.compat.star-circ.1",
                Box::new(move |a1, a2, a3| add(sub(c(&s(a1, a2), a3), s(a1, &c(a2, a3))), c(a2, &s(a1, a3)))),
            ));
            rep.push(family3(
                alg,
                "dpp.compat.star-circ.2",
                Box::new(move |a1, a2, a3| add(c(&s(a1, a2), a3), c(&s(a2, a1), a3))),
            ));
            rep.push(family3(
                alg,
                "dpp.derived.circ-star.sym",
                Box::new(move |a1, a2, a3| sub(s(&c(a1, a2), a3), s(&c(a2, a1), a3))),
            ));
            rep.push(family3(
                alg,
                "dpp.derived.mixed",
                Box::new(move |a1, a2, a3| {
                    let lhs = sub(s(a1, &c(a2, a3)), c(a2, &s(a1, a3)));
                    let rhs = sub(c(a1, &s(a2, a3)), s(a2, &c(a1, a3)));
                    sub(lhs, rhs)
                }),
            ));
        }
    }
    rep
}

/// Views a Poisson algebra as a DPP algebra: `∘ := ·`, `∗ := [-,-]`.
pub fn poisson_as_dpp(p: &StructureAlgebra) -> Result<StructureAlgebra, ForgeError> {
    if p.kind != Kind::Poisson {
        return Err(ForgeError::Kind(format!("expected a poisson algebra, got {}", p.kind)));
    }
    let rep = check_identities(p);
    if !rep.passed() {
        return Err(ForgeError::Precondition { id: rep.failed_ids().join(","), msg: "input fails the Poisson check".into() });
    }
    let mut products = BTreeMap::new();
    products.insert(Role::Circ, p.product(Role::Dot).clone());
    products.insert(Role::Star, p.product(Role::Bracket).clone());
    StructureAlgebra::new(&format!("{}_dpp", p.name), Kind::Dpp, p.space.clone(), products)
}

/// Checks skew-symmetry, nondegeneracy and invariance of `omega` for every product role.
///
/// `∘`-type roles (circ, dot) use `ω(a1∘a2, a3) = ω(a1, a2∘a3 − a3∘a2)`; `∗`-type roles
/// (star, bracket) use `ω(a1∗a2, a3) = ω(a1, a2∗a3 + a3∗a2)`.
pub fn check_quadratic(alg: &StructureAlgebra, omega: &BilinearForm) -> IdentityReport {
    let mut rep = IdentityReport::new();
    let n = alg.dim();
    let w = |x: &[Rational], y: &[Rational]| omega.eval(x, y);
    let scalar = |v: Rational| if v.is_zero() { vec![] } else { vec![Term { basis: "ω".into(), coeff: v }] };
    let basis: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    rep.push(check_family("form.skew", &alg.space.labels, 2, |t| scalar(w(&basis[t[0]], &basis[t[1]]) + w(&basis[t[1]], &basis[t[0]]))));
    let det = omega.matrix.det();
    rep.push(if det.is_zero() {
        IdentityResult::from_failures(
            "form.nondegenerate",
            1,
            vec![Witness { args: vec![], residual: vec![Term { basis: "det".into(), coeff: det }] }],
        )
    } else {
        IdentityResult::from_failures("form.nondegenerate", 1, vec![])
    });
    for (&role, _) in &alg.products {
        let m = |x: &[Rational], y: &[Rational]| alg.mul(role, x, y);
        let circ_like = matches!(role, Role::Circ | Role::Dot);
        let inv = check_family(&format!("form.invariance.{}", role.name()), &alg.space.labels, 3, |t| {
            let (a1, a2, a3) = (&basis[t[0]], &basis[t[1]], &basis[t[2]]);
            let inner = if circ_like { sub(m(a2, a3), m(a3, a2)) } else { add(m(a2, a3), m(a3, a2)) };
            scalar(w(&m(a1, a2), a3) - w(a1, &inner))
        });
        rep.push(inv);
        let der = check_family(&format!("form.derived.{}", role.name()), &alg.space.labels, 3, |t| {
            let (a1, a2, a3) = (&basis[t[0]], &basis[t[1]], &basis[t[2]]);
            let v = if circ_like { w(&m(a1, a2), a3) - w(a2, &m(a1, a3)) } else { w(&m(a1, a2), a3) + w(a2, &m(a1, a3)) };
            scalar(v)
        });
        rep.push(der);
    }
    rep
}

/// True when the vector is zero.
pub fn vanishes(v: &[Rational]) -> bool {
    is_zero_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    #[test]
    fn a2_passes_all_eight() {
        let a2 = catalog::a2();
        let rep = check_identities(&a2);
        assert_eq!(rep.results.len(), 8);
        assert!(rep.passed(), "{}", rep.to_text());
        let ids: Vec<&str> = rep.results.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, DPP_IDS);
    }

    #[test]
    fn perturbed_a2_fails_perm_with_first_witness() {
        let mut a2 = catalog::a2();
        a2.set_entry(Role::Circ, 0, 1, 0, &q(1)); // e1∘e2 = e1
        let rep = check_identities(&a2);
        let r = rep.get("perm.assoc").unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].args, vec!["e1", "e2", "e2"]);
        // e1∘(e2∘e2) − (e1∘e2)∘e2 = e1∘e1 − e1∘e2 = −e1
        assert_eq!(r.witnesses[0].residual, vec![Term { basis: "e1".into(), coeff: q(-1) }]);
    }

    #[test]
    fn zero_algebra_passes_every_kind() {
        for kind in [Kind::CommAssoc, Kind::Lie, Kind::Perm, Kind::Leibniz, Kind::Poisson, Kind::Dpp] {
            let z = StructureAlgebra::zero("z", kind, BasisSpace::from_strs("Z", &["a", "b"]));
            assert!(check_identities(&z).passed());
        }
    }

    #[test]
    fn p3_poisson_and_dpp_view() {
        let p3 = catalog::p3();
        assert!(check_identities(&p3).passed());
        let d = poisson_as_dpp(&p3).unwrap();
        assert!(check_identities(&d).passed());
    }

    #[test]
    fn b2_is_quadratic_perm() {
        let (b2, w) = catalog::b2();
        assert!(check_identities(&b2).passed());
        assert!(check_quadratic(&b2, &w).passed());
        let sym = BilinearForm::new(&b2.space, Matrix::from_int_rows(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!check_quadratic(&b2, &sym).get("form.skew").unwrap().passed());
    }
}
