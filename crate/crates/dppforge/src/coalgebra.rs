//! Coproducts, coalgebra checks, algebra/coalgebra duality, and bialgebra
//! conditions evaluated from a table of operator formulas.

use std::collections::BTreeMap;

use crate::algebra::{check_family, check_identities, Kind, Product, Role, StructureAlgebra};
use crate::linalg::{BasisSpace, Matrix, Tensor3};
use crate::rational::Rational;
use crate::report::{IdentityReport, IdentityResult, Term};
use crate::ForgeError;

/// A linear map `A → A⊗A`, one coefficient matrix per basis element
/// (`images[m][i][j]` is the coefficient of `e_i⊗e_j` in the image of `e_m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub space: BasisSpace,
    pub images: Vec<Matrix>,
}

impl Coproduct {
    pub fn zero(space: &BasisSpace) -> Self {
        let n = space.dim();
        Coproduct { space: space.clone(), images: vec![Matrix::zeros(n, n); n] }
    }

    pub fn new(space: &BasisSpace, images: Vec<Matrix>) -> Result<Self, ForgeError> {
        let n = space.dim();
        if images.len() != n || images.iter().any(|m| m.rows != n || m.cols != n) {
            return Err(ForgeError::Shape("coproduct needs one dim × dim image per basis element".into()));
        }
        Ok(Coproduct { space: space.clone(), images })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Image of an arbitrary vector.
    pub fn apply(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (xi, m) in x.iter().zip(&self.images) {
            if xi.is_zero() {
                continue;
            }
            for (o, v) in out.data.iter_mut().zip(&m.data) {
                if !v.is_zero() {
                    *o += &(xi * v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Matrix::is_zero)
    }

    /// The coproduct whose transpose is `p`: `ν(ξ_k) = Σ c[i][j][k] ξ_i⊗ξ_j` on the dual space.
    pub fn transpose_of(p: &Product, dual_space: &BasisSpace) -> Self {
        let n = p.dim();
        let mut images = vec![Matrix::zeros(n, n); n];
        for (idx, c) in p.constants.nonzero() {
            images[idx[2]].set(idx[0], idx[1], c);
        }
        Coproduct { space: dual_space.clone(), images }
    }

    /// The product on the dual space with constants `c[i][j][k] = images[k][i][j]`.
    pub fn transpose(&self) -> Product {
        let n = self.dim();
        let mut t = Tensor3::zeros(n, n, n);
        for (k, m) in self.images.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        t.add_at(i, j, k, c);
                    }
                }
            }
        }
        Product { constants: t }
    }
}

/// The coproduct name dual to a product role.
pub fn coproduct_name(role: Role) -> &'static str {
    match role {
        Role::Circ => "nu",
        Role::Star => "theta",
        Role::Dot => "Delta",
        Role::Bracket => "delta",
    }
}

pub fn coproduct_role(name: &str) -> Option<Role> {
    match name {
        "nu" => Some(Role::Circ),
        "theta" => Some(Role::Star),
        "Delta" => Some(Role::Dot),
        "delta" => Some(Role::Bracket),
        _ => None,
    }
}

/// Coproducts keyed by the product role they dualize (ν↔circ, ϑ↔star, Δ↔dot, δ↔bracket).
pub type Coproducts = BTreeMap<Role, Coproduct>;

/// The algebra on `A*` whose products are the transposed coproducts.
pub fn transpose_to_algebra(kind: Kind, space: &BasisSpace, cops: &Coproducts) -> Result<StructureAlgebra, ForgeError> {
    let products = cops.iter().map(|(&r, c)| (r, c.transpose())).collect();
    StructureAlgebra::new(&format!("{}*", space.name), kind, space.dual(), products)
}

fn check_roles(kind: Kind, cops: &Coproducts) -> Result<(), ForgeError> {
    let mut want = kind.roles().to_vec();
    want.sort();
    let have: Vec<Role> = cops.keys().copied().collect();
    if want != have {
        return Err(ForgeError::Kind(format!(
            "kind {kind} needs coproducts {:?}",
            want.iter().map(|r| coproduct_name(*r)).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Nest {
    /// `(x·y)·z`
    Left,
    /// `x·(y·z)`
    Right,
    /// `x·y`
    Pair,
}

/// A term of an algebra identity: `coef · outer(inner(..))` with argument slots permuted by `perm`.
#[derive(Clone, Copy)]
pub(crate) struct CoTerm {
    pub(crate) coef: i64,
    pub(crate) nest: Nest,
    pub(crate) outer: Role,
    pub(crate) inner: Role,
    pub(crate) perm: [usize; 3],
}

const fn tl(coef: i64, outer: Role, inner: Role, perm: [usize; 3]) -> CoTerm {
    CoTerm { coef, nest: Nest::Left, outer, inner, perm }
}
const fn tr(coef: i64, outer: Role, inner: Role, perm: [usize; 3]) -> CoTerm {
    CoTerm { coef, nest: Nest::Right, outer, inner, perm }
}
const fn tp(coef: i64, role: Role, perm: [usize; 2]) -> CoTerm {
    CoTerm { coef, nest: Nest::Pair, outer: role, inner: role, perm: [perm[0], perm[1], 0] }
}

use Role::{Bracket as B, Circ as C, Dot as D, Star as S};
const P012: [usize; 3] = [0, 1, 2];
const P102: [usize; 3] = [1, 0, 2];

pub(crate) fn identity_table(kind: Kind) -> Vec<(&'static str, usize, Vec<CoTerm>)> {
    let perm = vec![
        ("coalg.perm.assoc", 3, vec![tr(1, C, C, P012), tl(-1, C, C, P012)]),
        ("coalg.perm.left-comm", 3, vec![tl(1, C, C, P012), tl(-1, C, C, P102)]),
    ];
    let leib = ("coalg.leibniz", 3, vec![tr(1, S, S, P012), tl(-1, S, S, P012), tr(-1, S, S, P102)]);
    let comm = vec![
        ("coalg.comm.cocommutative", 2, vec![tp(1, D, [0, 1]), tp(-1, D, [1, 0])]),
        ("coalg.comm.coassociative", 3, vec![tl(1, D, D, P012), tr(-1, D, D, P012)]),
    ];
    let lie = vec![
        ("coalg.lie.coantisymmetric", 2, vec![tp(1, B, [0, 1]), tp(1, B, [1, 0])]),
        ("coalg.lie.cojacobi", 3, vec![tr(1, B, B, P012), tr(1, B, B, [1, 2, 0]), tr(1, B, B, [2, 0, 1])]),
    ];
    match kind {
        Kind::Perm => perm,
        Kind::Leibniz => vec![leib],
        Kind::CommAssoc => comm,
        Kind::Lie => lie,
        Kind::Poisson => vec![
            comm[0].clone(),
            lie[0].clone(),
            comm[1].clone(),
            lie[1].clone(),
            ("coalg.poisson.leibniz-rule", 3, vec![tr(1, B, D, P012), tl(-1, D, B, P012), tr(-1, D, B, P102)]),
        ],
        Kind::Dpp => {
            let mut v = perm;
            v.push(leib);
            v.push(("coalg.dpp.compat.circ-star.1", 3, vec![tl(1, S, C, P012), tr(-1, C, S, P012), tr(-1, C, S, P102)]));
            v.push(("coalg.dpp.compat.star-circ.1", 3, vec![tl(1, C, S, P012), tr(-1, S, C, P012), tr(1, C, S, P102)]));
            v.push(("coalg.dpp.compat.star-circ.2", 3, vec![tl(1, C, S, P012), tl(1, C, S, P102)]));
            v.push(("coalg.dpp.derived.circ-star.sym", 3, vec![tl(1, S, C, P012), tl(-1, S, C, P102)]));
            v.push((
                "coalg.dpp.derived.mixed",
                3,
                vec![tr(1, S, C, P012), tr(-1, C, S, P102), tr(-1, C, S, P012), tr(1, S, C, P102)],
            ));
            v
        }
    }
}

/// `(co_inner ⊗ id) co_outer (e_m)` or `(id ⊗ co_inner) co_outer (e_m)` as a dense cube.
pub(crate) fn compose(outer: &Coproduct, inner: &Coproduct, m: usize, nest: Nest) -> Vec<Rational> {
    let n = outer.dim();
    let mut t = vec![Rational::zero(); n * n * n];
    let x = &outer.images[m];
    for u in 0..n {
        for w in 0..n {
            let c = x.get(u, w);
            if c.is_zero() {
                continue;
            }
            match nest {
                Nest::Left => {
                    let y = &inner.images[u];
                    for i in 0..n {
                        for j in 0..n {
                            let d = y.get(i, j);
                            if !d.is_zero() {
                                t[(i * n + j) * n + w] += &(c * d);
                            }
                        }
                    }
                }
                Nest::Right => {
                    let y = &inner.images[w];
                    for j in 0..n {
                        for k in 0..n {
                            let d = y.get(j, k);
                            if !d.is_zero() {
                                t[(u * n + j) * n + k] += &(c * d);
                            }
                        }
                    }
                }
                Nest::Pair => unreachable!(),
            }
        }
    }
    t
}

/// Evaluates every coalgebra identity of `kind` on each basis element, as a residual in `A⊗A⊗A` (or `A⊗A`).
pub fn check_coalgebra(space: &BasisSpace, cops: &Coproducts, kind: Kind) -> Result<IdentityReport, ForgeError> {
    check_roles(kind, cops)?;
    let n = space.dim();
    let mut report = IdentityReport::new();
    for (id, arity, terms) in identity_table(kind) {
        report.push(check_family(id, &space.labels, 1, |t| {
            let m = t[0];
            let mut res: Vec<Rational> = vec![Rational::zero(); n.pow(arity as u32)];
            for term in &terms {
                let coef = Rational::from_int(term.coef);
                match term.nest {
                    Nest::Pair => {
                        let x = &cops[&term.outer].images[m];
                        for i in 0..n {
                            for j in 0..n {
                                let mut idx = [0; 2];
                                idx[term.perm[0]] = i;
                                idx[term.perm[1]] = j;
                                let v = x.get(i, j);
                                if !v.is_zero() {
                                    res[idx[0] * n + idx[1]] += &(&coef * v);
                                }
                            }
                        }
                    }
                    nest => {
                        let cube = compose(&cops[&term.outer], &cops[&term.inner], m, nest);
                        for (flat, v) in cube.iter().enumerate() {
                            if v.is_zero() {
                                continue;
                            }
                            let legs = [flat / (n * n), (flat / n) % n, flat % n];
                            let mut idx = [0; 3];
                            for (slot, &p) in term.perm.iter().enumerate() {
                                idx[p] = legs[slot];
                            }
                            res[(idx[0] * n + idx[1]) * n + idx[2]] += &(&coef * v);
                        }
                    }
                }
            }
            res.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(flat, c)| {
                    let basis = if arity == 2 {
                        format!("{}⊗{}", space.labels[flat / n], space.labels[flat % n])
                    } else {
                        format!("{}⊗{}⊗{}", space.labels[flat / (n * n)], space.labels[(flat / n) % n], space.labels[flat % n])
                    };
                    Term { basis, coeff: c.clone() }
                })
                .collect()
        }));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Operator formulas for bialgebra conditions.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    A1,
    A2,
}

/// Left or right multiplication by an argument, in a given product role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mult {
    pub role: Role,
    pub right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub coef: i64,
    pub mult: Mult,
    pub slot: Slot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Id,
    Sum(Vec<OpTerm>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgExpr {
    Slot(Slot),
    Prod(Role, Slot, Slot),
}

/// `X`, `τX`, `X+τX` or `X−τX` for `X = co(arg)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrcForm {
    Plain,
    Twisted,
    PlusTwist,
    MinusTwist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub co: Role,
    pub arg: ArgExpr,
    pub form: SrcForm,
}

/// `coef · [τ] (left ⊗ right)(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprTerm {
    pub coef: i64,
    pub twist: bool,
    pub left: Side,
    pub right: Side,
    pub src: Source,
}

/// A named condition whose residual `Σ terms` must vanish for all argument pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub id: String,
    pub formula: String,
    pub terms: Vec<ExprTerm>,
}

fn co_symbol(c: char) -> Option<Role> {
    match c {
        'N' => Some(Role::Circ),
        'T' => Some(Role::Star),
        'D' => Some(Role::Dot),
        'd' => Some(Role::Bracket),
        _ => None,
    }
}

fn co_char(r: Role) -> char {
    match r {
        Role::Circ => 'N',
        Role::Star => 'T',
        Role::Dot => 'D',
        Role::Bracket => 'd',
    }
}

struct Parser {
    s: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> ForgeError {
        let rest: String = self.s[self.pos.min(self.s.len())..].iter().collect();
        ForgeError::input(format!("formula parse error: {msg} at {rest:?}"))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ForgeError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn eat_str(&mut self, w: &str) -> bool {
        let chars: Vec<char> = w.chars().collect();
        if self.s[self.pos..].starts_with(&chars) {
            self.pos += chars.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.s[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn slot(&mut self) -> Result<Slot, ForgeError> {
        if self.eat_str("a1") {
            Ok(Slot::A1)
        } else if self.eat_str("a2") {
            Ok(Slot::A2)
        } else {
            Err(self.err("expected a1 or a2"))
        }
    }

    fn arg(&mut self) -> Result<ArgExpr, ForgeError> {
        if self.eat('[') {
            let x = self.slot()?;
            self.expect(',')?;
            let y = self.slot()?;
            self.expect(']')?;
            return Ok(ArgExpr::Prod(Role::Bracket, x, y));
        }
        let x = self.slot()?;
        let role = match self.peek() {
            Some('∘') => Role::Circ,
            Some('∗') => Role::Star,
            Some('·') => Role::Dot,
            _ => return Ok(ArgExpr::Slot(x)),
        };
        self.pos += 1;
        let y = self.slot()?;
        Ok(ArgExpr::Prod(role, x, y))
    }

    fn mult(&mut self) -> Result<Mult, ForgeError> {
        let m = if self.eat_str("ad") {
            Mult { role: Role::Bracket, right: false }
        } else {
            match self.peek() {
                Some('l') => Mult { role: Role::Circ, right: false },
                Some('r') => Mult { role: Role::Circ, right: true },
                Some('L') => Mult { role: Role::Star, right: false },
                Some('R') => Mult { role: Role::Star, right: true },
                Some('u') => Mult { role: Role::Dot, right: false },
                _ => return Err(self.err("expected an operator name")),
            }
        };
        if m.role != Role::Bracket {
            self.pos += 1;
        }
        Ok(m)
    }

    fn side(&mut self) -> Result<Side, ForgeError> {
        if self.eat_str("id") {
            return Ok(Side::Id);
        }
        let mut terms = Vec::new();
        let mut sign = 1;
        loop {
            let mult = self.mult()?;
            self.expect('(')?;
            let slot = self.slot()?;
            self.expect(')')?;
            terms.push(OpTerm { coef: sign, mult, slot });
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(Side::Sum(terms))
    }

    fn source(&mut self) -> Result<Source, ForgeError> {
        let form;
        let co;
        if self.eat('(') {
            let c = self.peek().and_then(co_symbol).ok_or_else(|| self.err("expected a coproduct symbol"))?;
            self.pos += 1;
            form = if self.eat('+') {
                SrcForm::PlusTwist
            } else if self.eat('-') {
                SrcForm::MinusTwist
            } else {
                return Err(self.err("expected + or -"));
            };
            self.expect('τ')?;
            if self.peek().and_then(co_symbol) != Some(c) {
                return Err(self.err("mismatched coproduct in symmetrization"));
            }
            self.pos += 1;
            self.expect(')')?;
            co = c;
        } else {
            form = if self.eat('τ') { SrcForm::Twisted } else { SrcForm::Plain };
            co = self.peek().and_then(co_symbol).ok_or_else(|| self.err("expected a coproduct symbol"))?;
            self.pos += 1;
        }
        self.expect('(')?;
        let arg = self.arg()?;
        self.expect(')')?;
        Ok(Source { co, arg, form })
    }

    /// True when the parenthesized group at the cursor contains `⊗` at depth 1.
    fn group_has_tensor(&self) -> bool {
        let mut depth = 0;
        for &c in &self.s[self.pos..] {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                '⊗' if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn factor(&mut self) -> Result<(Side, Side, Source), ForgeError> {
        if self.peek() == Some('(') && self.group_has_tensor() {
            self.pos += 1;
            let left = self.side()?;
            self.expect('⊗')?;
            let right = self.side()?;
            self.expect(')')?;
            let src = self.source()?;
            Ok((left, right, src))
        } else {
            Ok((Side::Id, Side::Id, self.source()?))
        }
    }

    fn term(&mut self, sign: i64) -> Result<ExprTerm, ForgeError> {
        let coef = sign * self.int().unwrap_or(1);
        let twist = self.eat('τ') && {
            self.expect('{')?;
            true
        };
        let (left, right, src) = self.factor()?;
        if twist {
            self.expect('}')?;
        }
        Ok(ExprTerm { coef, twist, left, right, src })
    }

    fn expr(&mut self) -> Result<Vec<ExprTerm>, ForgeError> {
        let mut sign = if self.eat('-') { -1 } else { 1 };
        let mut terms = vec![self.term(sign)?];
        loop {
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
            terms.push(self.term(sign)?);
        }
        if self.pos != self.s.len() {
            return Err(self.err("trailing input"));
        }
        Ok(terms)
    }
}

/// Parses a residual formula such as `(id⊗R(a1))τN(a2) + (r(a2)⊗id)T(a1)`.
///
/// Coproducts: `N` (ν), `T` (ϑ), `D` (Δ), `d` (δ). Operators: `l r` (∘), `L R` (∗), `u` (·), `ad` ([,]).
/// Sources may be twisted (`τN(a1)`) or symmetrized (`(N-τN)(a1)`); `τ{...}` twists a whole term.
pub fn parse_condition(id: &str, formula: &str) -> Result<Condition, ForgeError> {
    let s: Vec<char> = formula.chars().filter(|c| !c.is_whitespace()).collect();
    let terms = Parser { s, pos: 0 }.expr()?;
    Ok(Condition { id: id.to_string(), formula: formula.to_string(), terms })
}

/// The perm, Leibniz and mixed compatibility conditions of a DPP bialgebra.
pub const DPP_BIALGEBRA_TABLE: [(&str, &str); 12] = [
    ("bialg.perm.1", "(r(a1)⊗id)N(a2) - τ{(r(a2)⊗id)N(a1)}"),
    ("bialg.perm.2", "N(a1∘a2) - (l(a1)-r(a1)⊗id)N(a2) - (id⊗r(a2))N(a1)"),
    ("bialg.perm.3", "N(a1∘a2) - (id⊗l(a1))N(a2) - (l(a2)-r(a2)⊗id)(N-τN)(a1)"),
    ("bialg.leibniz.1", "τ{(R(a2)⊗id)T(a1)} - (R(a1)⊗id)T(a2)"),
    (
        "bialg.leibniz.2",
        "T(a1∗a2) - (id⊗R(a2))(T+τT)(a1) + (L(a2)+R(a2)⊗id)(T+τT)(a1) - (id⊗L(a1))T(a2) - (L(a1)⊗id)T(a2)",
    ),
    (
        "dpbi.1",
        "N(a1∗a2) - (id⊗L(a1))N(a2) - (L(a1)⊗id)N(a2) - (l(a2)-r(a2)⊗id)(T+τT)(a1) + (id⊗r(a2))(T+τT)(a1)",
    ),
    (
        "dpbi.2",
        "T(a1∘a2) - (id⊗l(a1))T(a2) - (id⊗r(a2))T(a1) + (L(a1)+R(a1)⊗id)N(a2) + (L(a2)+R(a2)⊗id)(N-τN)(a1)",
    ),
    ("dpbi.3", "(id⊗R(a1))τN(a2) + (r(a2)⊗id)T(a1)"),
    (
        "dpbi.4",
        "N(a1∗a2) - (id⊗l(a1))T(a2) + (l(a1)⊗id)T(a2) - (id⊗R(a2))(N-τN)(a1) + (L(a2)+R(a2)⊗id)(N-τN)(a1)",
    ),
    (
        "dpbi.5",
        "(T+τT)(a1∘a2) - (id⊗l(a1))(T+τT)(a2) - (id⊗l(a2))(T+τT)(a1) + (L(a1)⊗id)(N-τN)(a2) + (L(a2)⊗id)(N-τN)(a1)",
    ),
    (
        "dpbi.6",
        "T(a1∘a2) - (l(a1)⊗id)T(a2) + (id⊗R(a2))(N-τN)(a1) - (id⊗L(a1))N(a2) - (l(a2)-r(a2)⊗id)(T+τT)(a1)",
    ),
    (
        "dpbi.7",
        "N(a1∗a2) + N(a2∗a1) - (id⊗L(a1)+R(a1))N(a2) - (L(a1)+R(a1)⊗id)τN(a2) - (id⊗l(a2)-r(a2))T(a1) - (l(a2)-r(a2)⊗id)τT(a1)",
    ),
];

/// Infinitesimal, Lie and mixed conditions of a Poisson bialgebra.
pub const POISSON_BIALGEBRA_TABLE: [(&str, &str); 4] = [
    ("pbialg.infinitesimal", "D(a1·a2) - (u(a2)⊗id)D(a1) - (id⊗u(a1))D(a2)"),
    ("pbialg.lie", "d([a1,a2]) - (ad(a1)⊗id)d(a2) - (id⊗ad(a1))d(a2) + (ad(a2)⊗id)d(a1) + (id⊗ad(a2))d(a1)"),
    ("pbialg.mixed.1", "D([a1,a2]) - (ad(a1)⊗id)D(a2) - (id⊗ad(a1))D(a2) - (u(a2)⊗id)d(a1) + (id⊗u(a2))d(a1)"),
    ("pbialg.mixed.2", "d(a1·a2) - (u(a1)⊗id)d(a2) - (u(a2)⊗id)d(a1) - (id⊗ad(a1))D(a2) - (id⊗ad(a2))D(a1)"),
];

pub fn bialgebra_conditions(kind: Kind) -> Result<Vec<Condition>, ForgeError> {
    let table: &[(&str, &str)] = match kind {
        Kind::Dpp => &DPP_BIALGEBRA_TABLE,
        Kind::Poisson => &POISSON_BIALGEBRA_TABLE,
        other => return Err(ForgeError::Kind(format!("no bialgebra conditions for kind {other}"))),
    };
    table.iter().map(|(id, f)| parse_condition(id, f)).collect()
}

/// Renders a parsed condition back to formula text.
pub fn render_condition(c: &Condition) -> String {
    let slot = |s: Slot| if s == Slot::A1 { "a1" } else { "a2" };
    let side = |s: &Side| match s {
        Side::Id => "id".to_string(),
        Side::Sum(ts) => ts
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let name = match (t.mult.role, t.mult.right) {
                    (Role::Circ, false) => "l",
                    (Role::Circ, true) => "r",
                    (Role::Star, false) => "L",
                    (Role::Star, true) => "R",
                    (Role::Dot, _) => "u",
                    (Role::Bracket, _) => "ad",
                };
                let sign = if t.coef < 0 { "-" } else if k > 0 { "+" } else { "" };
                format!("{sign}{name}({})", slot(t.slot))
            })
            .collect(),
    };
    let mut out = String::new();
    for (k, t) in c.terms.iter().enumerate() {
        out.push_str(if t.coef < 0 {
            if k == 0 {
                "-"
            } else {
                " - "
            }
        } else if k == 0 {
            ""
        } else {
            " + "
        });
        if t.coef.abs() != 1 {
            out.push_str(&t.coef.abs().to_string());
        }
        if t.twist {
            out.push_str("τ{");
        }
        if t.left != Side::Id || t.right != Side::Id {
            out.push_str(&format!("({}⊗{})", side(&t.left), side(&t.right)));
        }
        let co = co_char(t.src.co);
        match t.src.form {
            SrcForm::Plain => out.push(co),
            SrcForm::Twisted => out.push_str(&format!("τ{co}")),
            SrcForm::PlusTwist => out.push_str(&format!("({co}+τ{co})")),
            SrcForm::MinusTwist => out.push_str(&format!("({co}-τ{co})")),
        }
        let arg = match t.src.arg {
            ArgExpr::Slot(s) => slot(s).to_string(),
            ArgExpr::Prod(Role::Bracket, x, y) => format!("[{},{}]", slot(x), slot(y)),
            ArgExpr::Prod(r, x, y) => {
                let op = match r {
                    Role::Circ => "∘",
                    Role::Star => "∗",
                    _ => "·",
                };
                format!("{}{op}{}", slot(x), slot(y))
            }
        };
        out.push_str(&format!("({arg})"));
        if t.twist {
            out.push('}');
        }
    }
    out
}

/// Finite-dimensional evaluator for parsed conditions.
pub struct DenseEvaluator<'a> {
    pub alg: &'a StructureAlgebra,
    pub cops: &'a Coproducts,
    /// `mats[(role, right)][i]`: multiplication matrix by `e_i`.
    mats: BTreeMap<(Role, bool), Vec<Matrix>>,
}

impl<'a> DenseEvaluator<'a> {
    pub fn new(alg: &'a StructureAlgebra, cops: &'a Coproducts) -> Self {
        let mut mats = BTreeMap::new();
        for &role in alg.products.keys() {
            for right in [false, true] {
                let v = (0..alg.dim())
                    .map(|i| {
                        let e = alg.basis_vec(i);
                        if right {
                            alg.right(role, &e)
                        } else {
                            alg.left(role, &e)
                        }
                    })
                    .collect();
                mats.insert((role, right), v);
            }
        }
        DenseEvaluator { alg, cops, mats }
    }

    fn side(&self, s: &Side, args: [usize; 2]) -> Option<Matrix> {
        match s {
            Side::Id => None,
            Side::Sum(ts) => {
                let n = self.alg.dim();
                let mut m = Matrix::zeros(n, n);
                for t in ts {
                    let idx = args[if t.slot == Slot::A1 { 0 } else { 1 }];
                    let op = &self.mats[&(t.mult.role, t.mult.right)][idx];
                    m = m.add(&op.scale(&Rational::from_int(t.coef)));
                }
                Some(m)
            }
        }
    }

    fn source(&self, s: &Source, args: [usize; 2]) -> Matrix {
        let pick = |sl: Slot| args[if sl == Slot::A1 { 0 } else { 1 }];
        let co = &self.cops[&s.co];
        let x = match s.arg {
            ArgExpr::Slot(sl) => co.images[pick(sl)].clone(),
            ArgExpr::Prod(role, a, b) => co.apply(self.alg.product(role).basis(pick(a), pick(b))),
        };
        match s.form {
            SrcForm::Plain => x,
            SrcForm::Twisted => x.transpose(),
            SrcForm::PlusTwist => x.add(&x.transpose()),
            SrcForm::MinusTwist => x.sub(&x.transpose()),
        }
    }

    /// The residual `Σ terms` at basis arguments `(e_i, e_j)`, as a coefficient matrix of `A⊗A`.
    pub fn residual(&self, c: &Condition, i: usize, j: usize) -> Matrix {
        let n = self.alg.dim();
        let mut out = Matrix::zeros(n, n);
        for t in &c.terms {
            let mut x = self.source(&t.src, [i, j]);
            if let Some(m) = self.side(&t.left, [i, j]) {
                x = m.mul(&x);
            }
            if let Some(m) = self.side(&t.right, [i, j]) {
                x = x.mul(&m.transpose());
            }
            if t.twist {
                x = x.transpose();
            }
            out = out.add(&x.scale(&Rational::from_int(t.coef)));
        }
        out
    }

    pub fn check(&self, c: &Condition) -> IdentityResult {
        let space = &self.alg.space;
        check_family(&c.id, &space.labels, 2, |t| tensor2_terms(space, &self.residual(c, t[0], t[1])))
    }
}

/// Nonzero entries of an `A⊗A` coefficient matrix, keyed `a⊗b`.
pub fn tensor2_terms(space: &BasisSpace, m: &Matrix) -> Vec<Term> {
    let mut out = Vec::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.push(Term { basis: format!("{}⊗{}", space.labels[i], space.labels[j]), coeff: c.clone() });
            }
        }
    }
    out
}

/// An algebra together with candidate coproducts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraCandidate {
    pub algebra: StructureAlgebra,
    pub coproducts: Coproducts,
}

impl BialgebraCandidate {
    pub fn new(algebra: StructureAlgebra, coproducts: Coproducts) -> Result<Self, ForgeError> {
        check_roles(algebra.kind, &coproducts)?;
        if coproducts.values().any(|c| c.space != algebra.space) {
            return Err(ForgeError::Shape("coproducts must live on the algebra's space".into()));
        }
        Ok(BialgebraCandidate { algebra, coproducts })
    }

    pub fn with_zero_coproducts(algebra: StructureAlgebra) -> Self {
        let coproducts = algebra.kind.roles().iter().map(|&r| (r, Coproduct::zero(&algebra.space))).collect();
        BialgebraCandidate { algebra, coproducts }
    }

    pub fn coproduct(&self, role: Role) -> &Coproduct {
        &self.coproducts[&role]
    }
}

/// Algebra check, coalgebra check, then every bialgebra condition on all basis pairs.
/// When a prerequisite fails the bialgebra conditions are reported as skipped.
pub fn check_bialgebra(b: &BialgebraCandidate) -> Result<IdentityReport, ForgeError> {
    let conds = bialgebra_conditions(b.algebra.kind)?;
    let mut report = check_identities(&b.algebra);
    let co = check_coalgebra(&b.algebra.space, &b.coproducts, b.algebra.kind)?;
    report.extend(co);
    if !report.passed() {
        let ids: Vec<String> = conds.iter().map(|c| c.id.clone()).collect();
        report.extend(IdentityReport::all_skipped(&ids, "prerequisite algebra or coalgebra check failed"));
        return Ok(report);
    }
    let ev = DenseEvaluator::new(&b.algebra, &b.coproducts);
    for c in &conds {
        report.push(ev.check(c));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    #[test]
    fn table_round_trips_through_renderer() {
        for kind in [Kind::Dpp, Kind::Poisson] {
            for c in bialgebra_conditions(kind).unwrap() {
                let again = parse_condition(&c.id, &render_condition(&c)).unwrap();
                assert_eq!(again.terms, c.terms, "{}", c.id);
            }
        }
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(parse_condition("x", "N(a3)").is_err());
        assert!(parse_condition("x", "(N-τT)(a1)").is_err());
        assert!(parse_condition("x", "N(a1) +").is_err());
    }

    #[test]
    fn zero_coproducts_pass() {
        let b = BialgebraCandidate::with_zero_coproducts(catalog::a2());
        assert!(check_bialgebra(&b).unwrap().passed());
        let p = BialgebraCandidate::with_zero_coproducts(catalog::p3());
        assert!(check_bialgebra(&p).unwrap().passed());
    }

    #[test]
    fn idempotent_leibniz_coalgebra_fails() {
        let s = BasisSpace::from_strs("E", &["e"]);
        let mut th = Coproduct::zero(&s);
        th.images[0].set(0, 0, q(1));
        let cops: Coproducts = [(Role::Star, th)].into_iter().collect();
        let rep = check_coalgebra(&s, &cops, Kind::Leibniz).unwrap();
        let r = rep.get("coalg.leibniz").unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].residual, vec![Term { basis: "e⊗e⊗e".into(), coeff: q(-1) }]);
    }

    #[test]
    fn transpose_is_involutive() {
        let a2 = catalog::a2();
        let p = a2.product(Role::Circ);
        let c = Coproduct::transpose_of(p, &a2.space.dual());
        assert_eq!(&c.transpose(), p);
    }

    #[test]
    fn p3_triangular_poisson_bialgebra() {
        let b = catalog::p3_bialgebra();
        let rep = check_bialgebra(&b).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }
}
