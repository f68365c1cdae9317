#![allow(dead_code)]

use dppforge::algebra::{check_identities, poisson_as_dpp, Kind, Role, StructureAlgebra};
use dppforge::catalog;
use dppforge::coalgebra::{check_coalgebra, transpose_to_algebra, Coproduct, Coproducts};
use dppforge::constructions::{check_o_operator, check_sharp_factorization, lift_r, OOperatorCandidate};
use dppforge::linalg::{sharp, BasisSpace, Matrix, Tensor2};
use dppforge::rational::q;
use dppforge::report::IdentityReport;
use dppforge::rep::{check_dpp_rep, coregular_rep, poisson_coregular_rep, regular_rep, semidirect_product, CoregularVariant, DppRep};
use dppforge::ybe::{classify, classify_poisson, DEFAULT_LYBE_SIGN};

/// `(family, algebra element, row, column, delta)` added to one representation matrix.
pub type RepBump = (usize, usize, usize, usize, i64);
/// `(role, basis element, row, column, delta)` added to one coproduct image.
pub type CoBump = (usize, usize, usize, usize, i64);

/// Outcome of one biconditional trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trial {
    pub lhs: bool,
    pub rhs: bool,
    /// Every failing identity on the left carries a witness.
    pub witnessed: bool,
}

impl Trial {
    fn new(lhs: &IdentityReport, rhs: bool) -> Self {
        let witnessed = lhs.results.iter().filter(|r| !r.passed()).all(|r| !r.witnesses.is_empty());
        Trial { lhs: lhs.passed(), rhs, witnessed }
    }

    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs && self.witnessed
    }
}

pub fn small_matrix(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
    let rows: Vec<&[i64]> = vals.chunks(cols).take(rows).collect();
    Matrix::from_int_rows(&rows)
}

pub fn symmetric(n: usize, vals: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, q(vals[k]));
            m.set(j, i, q(vals[k]));
            k += 1;
        }
    }
    m
}

pub fn skew(n: usize, vals: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, q(vals[k]));
            m.set(j, i, q(-vals[k]));
            k += 1;
        }
    }
    m
}

/// A2, DOUBLE_A2 and P3 viewed as a DPP algebra.
pub fn dpp_algebras() -> Vec<StructureAlgebra> {
    vec![catalog::a2(), catalog::double_a2().algebra, poisson_as_dpp(&catalog::p3()).unwrap()]
}

/// Regular or coregular representation on a relabeled carrier, optionally bumped.
pub fn rep_candidate(alg: &StructureAlgebra, base: usize, bump: Option<RepBump>) -> DppRep {
    let mut rep = match base % 3 {
        0 => regular_rep(alg),
        1 => coregular_rep(alg, CoregularVariant::Signed),
        _ => coregular_rep(alg, CoregularVariant::Standard),
    };
    let labels = rep.carrier.labels.iter().map(|l| format!("v_{l}")).collect();
    rep.carrier = BasisSpace::new("V", labels).unwrap();
    if let Some((fam, a, i, j, v)) = bump {
        let d = rep.carrier.dim();
        let m = match fam % 4 {
            0 => &mut rep.l,
            1 => &mut rep.r,
            2 => &mut rep.ll,
            _ => &mut rep.rr,
        };
        m[a % alg.dim()].add_at(i % d, j % d, &q(v));
    }
    rep
}

/// Representation check against the identity check of the semidirect product.
pub fn rep_trial(which: usize, base: usize, bump: Option<RepBump>) -> Trial {
    let alg = &dpp_algebras()[which % 3];
    let rep = rep_candidate(alg, base, bump);
    let r = check_dpp_rep(alg, &rep).unwrap();
    Trial::new(&r, check_identities(&semidirect_product(alg, &rep).unwrap()).passed())
}

/// Coalgebra check of the transposed products against the identity check of the dual algebra.
pub fn coalgebra_trial(which: usize, bump: Option<CoBump>) -> Trial {
    let alg = &dpp_algebras()[which % 3];
    let n = alg.dim();
    let dual = alg.space.dual();
    let mut cops = Coproducts::new();
    for role in [Role::Circ, Role::Star] {
        cops.insert(role, Coproduct::transpose_of(alg.product(role), &dual));
    }
    if let Some((role, m, i, j, v)) = bump {
        let role = if role % 2 == 0 { Role::Circ } else { Role::Star };
        cops.get_mut(&role).unwrap().images[m % n].add_at(i % n, j % n, &q(v));
    }
    let c = check_coalgebra(&dual, &cops, Kind::Dpp).unwrap();
    Trial::new(&c, check_identities(&transpose_to_algebra(Kind::Dpp, &dual, &cops).unwrap()).passed())
}

/// O-operator check of `r♯` (signed coregular) against the DPYBE for a symmetric `r`.
pub fn symmetric_o_trial(which: usize, vals: &[i64]) -> Trial {
    let alg = &dpp_algebras()[which % 3];
    let r = Tensor2::from_matrix(&alg.space, &alg.space, symmetric(alg.dim(), vals)).unwrap();
    let solves = classify(alg, &r, DEFAULT_LYBE_SIGN).unwrap().solves_dpybe;
    let o = OOperatorCandidate::Dpp { rep: coregular_rep(alg, CoregularVariant::Signed), t: sharp(&r).unwrap().matrix };
    Trial::new(&check_o_operator(alg, &o).unwrap(), solves)
}

/// O-operator check of `r♯` (Poisson coregular) against the PoiYBE for a skew `r` on P3.
pub fn skew_o_trial(vals: &[i64]) -> Trial {
    let p = catalog::p3();
    let r = Tensor2::from_matrix(&p.space, &p.space, skew(3, vals)).unwrap();
    let solves = classify_poisson(&p, &r).unwrap().solves_poiybe;
    let o = OOperatorCandidate::Poisson { rep: poisson_coregular_rep(&p), t: sharp(&r).unwrap().matrix };
    Trial::new(&check_o_operator(&p, &o).unwrap(), solves)
}

/// Status of `r` on P3 next to the status of its lift on P3 ⊗ B2.
#[derive(Clone, Copy, Debug)]
pub struct LiftTrial {
    pub solves: (bool, bool),
    pub skew_vs_symmetric: (bool, bool),
    pub invariant: (bool, bool),
    pub sharp_factorized: bool,
}

impl LiftTrial {
    /// Solution status, invariance and skew-symmetry versus symmetry agree before and after the lift.
    pub fn holds(&self) -> bool {
        self.solves.0 == self.solves.1
            && self.skew_vs_symmetric.0 == self.skew_vs_symmetric.1
            && self.invariant.0 == self.invariant.1
            && self.sharp_factorized
    }
}

/// `scale·r` on P3, plus a {-1,0,1} perturbation when `noisy`.
pub fn lift_trial(scale: i64, noise: &[i64], noisy: bool) -> LiftTrial {
    let p = catalog::p3();
    let (b, w) = catalog::b2();
    let mut m = catalog::p3_r().data.scale(&q(scale));
    if noisy {
        m = m.add(&small_matrix(3, 3, noise));
    }
    let r = Tensor2::from_matrix(&p.space, &p.space, m).unwrap();
    let pb = catalog::pb6().algebra;
    let rhat = Tensor2::from_matrix(&pb.space, &pb.space, lift_r(&r, &p, &b, &w).unwrap().data).unwrap();
    let cp = classify_poisson(&p, &r).unwrap();
    let cd = classify(&pb, &rhat, DEFAULT_LYBE_SIGN).unwrap();
    LiftTrial {
        solves: (cp.solves_poiybe, cd.solves_dpybe),
        skew_vs_symmetric: (cp.skew, cd.symmetric),
        invariant: (cp.sym_part_invariant, cd.skew_part_invariant),
        sharp_factorized: check_sharp_factorization(&r, &p, &b, &w).unwrap(),
    }
}
