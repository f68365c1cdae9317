//! The Laurent-vector-field graded perm algebra, its graded form and induced completed
//! coproduct, and exact checks of the completed tensor bialgebra `P ⊗ B` over an exponent box.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Kind, Role};
use crate::coalgebra::{
    bialgebra_conditions, check_bialgebra, compose, identity_table, ArgExpr, BialgebraCandidate, Condition, Nest,
    Side, Slot, SrcForm,
};
use crate::linalg::{Matrix, Tensor2};
use crate::rational::Rational;
use crate::report::{IdentityReport, IdentityResult, Term, Witness, MAX_WITNESSES};
use crate::ybe::{LybeSign, Placement};
use crate::ForgeError;

/// Default exponent box for arguments and test pairs.
pub const DEFAULT_BOX: i64 = 2;
/// Default working window for strong mode.
pub const DEFAULT_WINDOW: i64 = 6;

/// The monomial `x1^i1 x2^i2 ∂s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LvfLabel {
    pub i1: i64,
    pub i2: i64,
    pub s: u8,
}

impl LvfLabel {
    pub const fn new(i1: i64, i2: i64, s: u8) -> Self {
        LvfLabel { i1, i2, s }
    }

    /// Grading index `i1 + i2 + 1`.
    pub fn deg(self) -> i64 {
        self.i1 + self.i2 + 1
    }

    pub fn in_box(self, m: i64) -> bool {
        self.i1.abs() <= m && self.i2.abs() <= m
    }

    /// Exponent shift contributed by `∂s` when this label is the left factor.
    fn shift(self) -> (i64, i64) {
        if self.s == 1 {
            (1, 0)
        } else {
            (0, 1)
        }
    }
}

impl fmt::Display for LvfLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i1, self.i2, self.s)
    }
}

/// `a∘b`: always a single monomial with coefficient 1.
pub fn lvf_product(a: LvfLabel, b: LvfLabel) -> LvfLabel {
    let (d1, d2) = a.shift();
    LvfLabel::new(a.i1 + b.i1 + d1, a.i2 + b.i2 + d2, b.s)
}

/// `ω(a, b)`: `+1` for `(i,2),(−i,1)`, `−1` for `(i,1),(−i,2)`, else 0.
pub fn lvf_form(a: LvfLabel, b: LvfLabel) -> i64 {
    if a.i1 + b.i1 != 0 || a.i2 + b.i2 != 0 {
        return 0;
    }
    match (a.s, b.s) {
        (2, 1) => 1,
        (1, 2) => -1,
        _ => 0,
    }
}

/// The ω-dual `c·f` of `a`, i.e. `ω(c·f, a) = 1`.
pub fn form_dual(a: LvfLabel) -> (i64, LvfLabel) {
    if a.s == 1 {
        (1, LvfLabel::new(-a.i1, -a.i2, 2))
    } else {
        (-1, LvfLabel::new(-a.i1, -a.i2, 1))
    }
}

/// All labels with `|i1|, |i2| ≤ m`, ordered by `(i1, i2, s)`.
pub fn box_labels(m: i64) -> Vec<LvfLabel> {
    let mut out = Vec::new();
    for i1 in -m..=m {
        for i2 in -m..=m {
            for s in 1..=2 {
                out.push(LvfLabel::new(i1, i2, s));
            }
        }
    }
    out
}

fn box_index(m: i64, a: LvfLabel) -> usize {
    let w = 2 * m + 1;
    ((((a.i1 + m) * w + (a.i2 + m)) * 2) + (a.s as i64 - 1)) as usize
}

/// The offset `m` with `ω(B_i, B_j) = 0` unless `i + j + m = 0`, read off the form's support in the box.
pub fn infer_form_offset(m: i64) -> Result<i64, ForgeError> {
    let labels = box_labels(m);
    let mut seen = None;
    for &a in &labels {
        for &b in &labels {
            if lvf_form(a, b) != 0 {
                let d = a.deg() + b.deg();
                match seen {
                    None => seen = Some(d),
                    Some(x) if x != d => return Err(ForgeError::input("form is not homogeneous")),
                    _ => {}
                }
            }
        }
    }
    seen.map(|d| -d).ok_or_else(|| ForgeError::input("form vanishes on the box"))
}

/// The coproduct rule `ν(b) = Σ_i s1·(i,1)⊗(b−i+(0,1)) + s2·(i,2)⊗(b−i+(1,0))`; `(1, −1)` is the ω-induced one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuRule {
    pub sign1: i64,
    pub sign2: i64,
    /// Extra factor `(−1)^{u.i1}` on the left leg; breaks coassociativity.
    #[serde(default)]
    pub alternating: bool,
}

impl Default for NuRule {
    fn default() -> Self {
        NuRule { sign1: 1, sign2: -1, alternating: false }
    }
}

impl NuRule {
    /// Rule with the `∂2` sign flipped.
    pub fn flipped() -> Self {
        NuRule { sign2: 1, ..Self::default() }
    }

    /// Rule with an exponent-dependent sign on the left leg.
    pub fn alternating() -> Self {
        NuRule { alternating: true, ..Self::default() }
    }

    fn coef(self, u: LvfLabel) -> i64 {
        let s = if u.s == 1 { self.sign1 } else { self.sign2 };
        if self.alternating && u.i1.rem_euclid(2) == 1 {
            -s
        } else {
            s
        }
    }

    /// The only `v` with `u⊗v` in `ν(b)`, and its coefficient.
    pub fn partner(self, b: LvfLabel, u: LvfLabel) -> (i64, LvfLabel) {
        let c = self.coef(u);
        if u.s == 1 {
            (c, LvfLabel::new(b.i1 - u.i1, b.i2 - u.i2 + 1, b.s))
        } else {
            (c, LvfLabel::new(b.i1 - u.i1 + 1, b.i2 - u.i2, b.s))
        }
    }

    /// Every `u` with `u⊗v` in `ν(b)`.
    pub fn lefts(self, b: LvfLabel, v: LvfLabel) -> Vec<(i64, LvfLabel)> {
        if v.s != b.s {
            return vec![];
        }
        [LvfLabel::new(b.i1 - v.i1, b.i2 - v.i2 + 1, 1), LvfLabel::new(b.i1 - v.i1 + 1, b.i2 - v.i2, 2)]
            .into_iter()
            .map(|u| (self.coef(u), u))
            .collect()
    }

    /// The unique `b` with `u⊗v` in `ν(b)`, if any.
    pub fn source(self, u: LvfLabel, v: LvfLabel) -> (i64, LvfLabel) {
        let c = self.coef(u);
        if u.s == 1 {
            (c, LvfLabel::new(u.i1 + v.i1, u.i2 + v.i2 - 1, v.s))
        } else {
            (c, LvfLabel::new(u.i1 + v.i1 - 1, u.i2 + v.i2, v.s))
        }
    }

    pub fn coeff(self, b: LvfLabel, u: LvfLabel, v: LvfLabel) -> i64 {
        let (c, w) = self.partner(b, u);
        if w == v {
            c
        } else {
            0
        }
    }
}

/// A formal 2-tensor restricted to a window, with the box inside which components are exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowedTensor<L: Ord> {
    pub window: i64,
    pub complete_box: i64,
    pub terms: BTreeMap<(L, L), Rational>,
}

impl<L: Ord + Copy> WindowedTensor<L> {
    pub fn get(&self, a: L, b: L) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn twisted(&self) -> Self {
        WindowedTensor {
            window: self.window,
            complete_box: self.complete_box,
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }
}

/// `ν_ω(b)`: all terms with both legs in the box `m`; every such component is exact.
pub fn nu_omega(b: LvfLabel, m: i64) -> WindowedTensor<LvfLabel> {
    let rule = NuRule::default();
    let mut terms = BTreeMap::new();
    for u in box_labels(m) {
        let (c, v) = rule.partner(b, u);
        if v.in_box(m) {
            terms.insert((u, v), Rational::from_int(c));
        }
    }
    WindowedTensor { window: m, complete_box: m, terms }
}

/// `ω̂(ν(b), x⊗y) + ω(b, x∘y)` evaluated from the coefficients of `ν(b)`.
pub fn nu_pairing_defect(rule: NuRule, b: LvfLabel, x: LvfLabel, y: LvfLabel) -> i64 {
    let pu = LvfLabel::new(-x.i1, -x.i2, 3 - x.s);
    let pv = LvfLabel::new(-y.i1, -y.i2, 3 - y.s);
    rule.coeff(b, pu, pv) * lvf_form(pu, x) * lvf_form(pv, y) + lvf_form(b, lvf_product(x, y))
}

/// How completed identities are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact coefficients at every in-box test pair, obtained by pairing with its ω-dual.
    Pairing,
    /// Tensors materialized inside a working window; only in-box components are asserted.
    Strong,
}

impl FromStr for Mode {
    type Err = ForgeError;
    fn from_str(s: &str) -> Result<Self, ForgeError> {
        match s {
            "pairing" => Ok(Mode::Pairing),
            "strong" => Ok(Mode::Strong),
            _ => Err(ForgeError::input(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pairing => "pairing",
            Mode::Strong => "strong",
        })
    }
}

/// Box, window and mode for a graded run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedParams {
    pub box_m: i64,
    pub window: i64,
    pub mode: Mode,
}

impl Default for GradedParams {
    fn default() -> Self {
        GradedParams { box_m: DEFAULT_BOX, window: DEFAULT_WINDOW, mode: Mode::Pairing }
    }
}

impl GradedParams {
    pub fn validate(&self) -> Result<(), ForgeError> {
        if self.box_m < 0 {
            return Err(ForgeError::input("box must be nonnegative"));
        }
        if self.mode == Mode::Strong && self.window < 2 * self.box_m + 2 {
            return Err(ForgeError::input(format!(
                "strong mode needs window ≥ 2·box + 2 = {}, got {}",
                2 * self.box_m + 2,
                self.window
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// B-side evaluation of operator expressions.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum BOp {
    Id,
    Left(Slot),
    Right(Slot),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum BArg {
    Slot(Slot),
    Prod(Slot, Slot),
}

/// The B-part of a condition term: `[τ](op_l ⊗ op_r)([τ]ν(arg))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct BKey {
    left: BOp,
    right: BOp,
    arg: BArg,
    twisted: bool,
    outer: bool,
}

fn pick(slot: Slot, b: [LvfLabel; 2]) -> LvfLabel {
    if slot == Slot::A1 {
        b[0]
    } else {
        b[1]
    }
}

fn forward(op: BOp, b: [LvfLabel; 2], x: LvfLabel) -> LvfLabel {
    match op {
        BOp::Id => x,
        BOp::Left(s) => lvf_product(pick(s, b), x),
        BOp::Right(s) => lvf_product(x, pick(s, b)),
    }
}

/// Every `x` with `op(x) = u`.
fn preimages(op: BOp, b: [LvfLabel; 2], u: LvfLabel) -> Vec<LvfLabel> {
    match op {
        BOp::Id => vec![u],
        BOp::Left(s) => {
            let c = pick(s, b);
            let (d1, d2) = c.shift();
            vec![LvfLabel::new(u.i1 - c.i1 - d1, u.i2 - c.i2 - d2, u.s)]
        }
        BOp::Right(s) => {
            let c = pick(s, b);
            if u.s != c.s {
                return vec![];
            }
            vec![LvfLabel::new(u.i1 - c.i1 - 1, u.i2 - c.i2, 1), LvfLabel::new(u.i1 - c.i1, u.i2 - c.i2 - 1, 2)]
        }
    }
}

fn window_labels(n: i64) -> Vec<LvfLabel> {
    box_labels(n)
}

/// Evaluation context shared by every B-side computation.
#[derive(Clone)]
struct BSide {
    m: i64,
    mode: Mode,
    window: i64,
    rule: NuRule,
    box_list: Vec<LvfLabel>,
    window_list: Vec<LvfLabel>,
}

impl BSide {
    fn new(p: &GradedParams, rule: NuRule) -> Self {
        BSide {
            m: p.box_m,
            mode: p.mode,
            window: p.window,
            rule,
            box_list: box_labels(p.box_m),
            window_list: window_labels(p.window),
        }
    }

    /// Nonzero in-box components `((u, v), c)` of a B-key at arguments `b`.
    fn eval2(&self, key: BKey, b: [LvfLabel; 2], out: &mut Vec<(usize, usize, i64)>, dropped: &mut usize) {
        let arg = match key.arg {
            BArg::Slot(s) => pick(s, b),
            BArg::Prod(x, y) => lvf_product(pick(x, b), pick(y, b)),
        };
        let mut emit = |u: LvfLabel, v: LvfLabel, c: i64| {
            let (u, v) = if key.outer { (v, u) } else { (u, v) };
            if u.in_box(self.m) && v.in_box(self.m) {
                out.push((box_index(self.m, u), box_index(self.m, v), c));
            }
        };
        match self.mode {
            Mode::Pairing => {
                for &u in &self.box_list {
                    for x in preimages(key.left, b, u) {
                        let ys = if key.twisted { self.rule.lefts(arg, x) } else { vec![self.rule.partner(arg, x)] };
                        for (c, y) in ys {
                            emit(u, forward(key.right, b, y), c);
                        }
                    }
                }
            }
            Mode::Strong => {
                for &x in &self.window_list {
                    let (c, y) = self.rule.partner(arg, x);
                    if !y.in_box(self.window) {
                        continue;
                    }
                    let (x, y) = if key.twisted { (y, x) } else { (x, y) };
                    let (u, v) = (forward(key.left, b, x), forward(key.right, b, y));
                    if !u.in_box(self.window) || !v.in_box(self.window) {
                        *dropped += 1;
                        continue;
                    }
                    emit(u, v, c);
                }
            }
        }
    }

    /// Nonzero in-box components of `(ν⊗id)ν(b)` (`Nest::Left`) or `(id⊗ν)ν(b)` (`Nest::Right`).
    fn eval3(&self, nest: Nest, b: LvfLabel, out: &mut Vec<([LvfLabel; 3], i64)>, dropped: &mut usize) {
        let r = self.rule;
        match (self.mode, nest) {
            (_, Nest::Pair) => unreachable!("pair terms are handled separately"),
            (Mode::Pairing, Nest::Left) => {
                for &u in &self.box_list {
                    for &v in &self.box_list {
                        let (c1, x) = r.source(u, v);
                        let (c2, w) = r.partner(b, x);
                        if w.in_box(self.m) {
                            out.push(([u, v, w], c1 * c2));
                        }
                    }
                }
            }
            (Mode::Pairing, Nest::Right) => {
                for &u in &self.box_list {
                    let (c1, y) = r.partner(b, u);
                    for &v in &self.box_list {
                        let (c2, w) = r.partner(y, v);
                        if w.in_box(self.m) {
                            out.push(([u, v, w], c1 * c2));
                        }
                    }
                }
            }
            (Mode::Strong, nest) => {
                for &x in &self.window_list {
                    let (c1, y) = r.partner(b, x);
                    if !y.in_box(self.window) {
                        continue;
                    }
                    let (split, keep) = if nest == Nest::Left { (x, y) } else { (y, x) };
                    for &p in &self.window_list {
                        let (c2, q) = r.partner(split, p);
                        if !q.in_box(self.window) {
                            *dropped += 1;
                            continue;
                        }
                        let legs = if nest == Nest::Left { [p, q, keep] } else { [keep, p, q] };
                        if legs.iter().all(|l| l.in_box(self.m)) {
                            out.push((legs, c1 * c2));
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// P-side data.

fn p_role(role: Role) -> Role {
    match role {
        Role::Circ => Role::Dot,
        Role::Star => Role::Bracket,
        other => other,
    }
}

/// One factorized piece of a condition term.
struct Atom {
    key: usize,
    coef: i64,
    left: Option<(Role, bool, Slot)>,
    right: Option<(Role, bool, Slot)>,
    co: Role,
    arg: ArgExpr,
    twisted: bool,
    outer: bool,
}

fn side_choices(s: &Side) -> Vec<(i64, Option<(Role, bool, Slot)>)> {
    match s {
        Side::Id => vec![(1, None)],
        Side::Sum(ts) => ts.iter().map(|t| (t.coef, Some((p_role(t.mult.role), t.mult.right, t.slot)))).collect(),
    }
}

fn bop(x: Option<(Role, bool, Slot)>) -> BOp {
    match x {
        None => BOp::Id,
        Some((_, false, s)) => BOp::Left(s),
        Some((_, true, s)) => BOp::Right(s),
    }
}

fn atoms(c: &Condition) -> (Vec<BKey>, Vec<Atom>) {
    let mut keys: Vec<BKey> = Vec::new();
    let mut out = Vec::new();
    for t in &c.terms {
        let forms: &[(i64, bool)] = match t.src.form {
            SrcForm::Plain => &[(1, false)],
            SrcForm::Twisted => &[(1, true)],
            SrcForm::PlusTwist => &[(1, false), (1, true)],
            SrcForm::MinusTwist => &[(1, false), (-1, true)],
        };
        let barg = match t.src.arg {
            ArgExpr::Slot(s) => BArg::Slot(s),
            ArgExpr::Prod(_, x, y) => BArg::Prod(x, y),
        };
        let parg = match t.src.arg {
            ArgExpr::Prod(role, x, y) => ArgExpr::Prod(p_role(role), x, y),
            a => a,
        };
        for (lc, l) in side_choices(&t.left) {
            for (rc, r) in side_choices(&t.right) {
                for &(fc, twisted) in forms {
                    let key = BKey { left: bop(l), right: bop(r), arg: barg, twisted, outer: t.twist };
                    let idx = keys.iter().position(|k| *k == key).unwrap_or_else(|| {
                        keys.push(key);
                        keys.len() - 1
                    });
                    out.push(Atom {
                        key: idx,
                        coef: t.coef * lc * rc * fc,
                        left: l,
                        right: r,
                        co: p_role(t.src.co),
                        arg: parg,
                        twisted,
                        outer: t.twist,
                    });
                }
            }
        }
    }
    (keys, out)
}

/// `P_key(p1, p2)` for every key, as dense `n×n` matrices.
fn p_parts(pb: &BialgebraCandidate, keys: usize, atoms: &[Atom], p1: usize, p2: usize) -> Vec<Matrix> {
    let alg = &pb.algebra;
    let n = alg.dim();
    let pv = |s: Slot| alg.basis_vec(if s == Slot::A1 { p1 } else { p2 });
    let mult = |(role, right, slot): (Role, bool, Slot)| {
        if right {
            alg.right(role, &pv(slot))
        } else {
            alg.left(role, &pv(slot))
        }
    };
    let mut out = vec![Matrix::zeros(n, n); keys];
    for a in atoms {
        let co = pb.coproduct(a.co);
        let mut x = match a.arg {
            ArgExpr::Slot(s) => co.apply(&pv(s)),
            ArgExpr::Prod(role, s, t) => co.apply(&alg.mul(role, &pv(s), &pv(t))),
        };
        if a.twisted {
            x = x.transpose();
        }
        if let Some(l) = a.left {
            x = mult(l).mul(&x);
        }
        if let Some(r) = a.right {
            x = x.mul(&mult(r).transpose());
        }
        if a.outer {
            x = x.transpose();
        }
        out[a.key] = out[a.key].add(&x.scale(&Rational::from_int(a.coef)));
    }
    out
}

fn pb_label(pb: &BialgebraCandidate, p: usize, b: LvfLabel) -> String {
    format!("{}⊗{}", pb.algebra.space.labels[p], b)
}

/// Sparse coefficient vector over keys at one output component.
type KeyVec = Vec<(u16, i64)>;

/// Failing argument tuples for one identity, in lexicographic order, with a count.
struct Failures {
    count: usize,
    first: Vec<(Vec<usize>, Witness)>,
}

impl Failures {
    fn new() -> Self {
        Failures { count: 0, first: Vec::new() }
    }

    fn merge(mut self, other: Failures) -> Self {
        self.count += other.count;
        self.first.extend(other.first);
        self.first.sort_by(|a, b| a.0.cmp(&b.0));
        self.first.truncate(MAX_WITNESSES);
        self
    }

    fn into_result(self, id: &str, checked: usize) -> IdentityResult {
        let mut r = IdentityResult::from_failures(id, checked, self.first.into_iter().map(|(_, w)| w).collect());
        r.failures = self.count;
        r
    }
}

/// Checks one bialgebra condition on all in-box argument pairs.
fn check_condition(pb: &BialgebraCandidate, side: &BSide, c: &Condition, dropped: &mut usize) -> IdentityResult {
    let n = pb.algebra.dim();
    let (keys, atoms) = atoms(c);
    let pmats: Vec<Vec<Matrix>> = (0..n * n).map(|ij| p_parts(pb, keys.len(), &atoms, ij / n, ij % n)).collect();
    let labels = &side.box_list;
    let nb = labels.len();
    // residual at a coefficient vector: Σ_k c_k P_k, for every (p1, p2)
    let residual = |kv: &KeyVec, pp: usize| -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for &(k, c) in kv {
            m = m.add(&pmats[pp][k as usize].scale(&Rational::from_int(c)));
        }
        m
    };
    let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (0..nb).map(move |j| (i, j))).collect();
    let results: Vec<(Failures, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let b = [labels[i], labels[j]];
            let mut dropped = 0;
            let mut acc: HashMap<(usize, usize), KeyVec> = HashMap::new();
            let mut buf = Vec::new();
            for (k, key) in keys.iter().enumerate() {
                buf.clear();
                side.eval2(*key, b, &mut buf, &mut dropped);
                for &(u, v, c) in &buf {
                    let e = acc.entry((u, v)).or_default();
                    match e.last_mut() {
                        Some(last) if last.0 == k as u16 => last.1 += c,
                        _ => e.push((k as u16, c)),
                    }
                }
            }
            let mut cache: HashMap<KeyVec, Vec<bool>> = HashMap::new();
            let mut bad = vec![false; n * n];
            for kv in acc.values_mut() {
                kv.retain(|x| x.1 != 0);
                if kv.is_empty() {
                    continue;
                }
                let verdict = cache.entry(kv.clone()).or_insert_with(|| (0..n * n).map(|pp| !residual(kv, pp).is_zero()).collect());
                for (pp, &f) in verdict.iter().enumerate() {
                    bad[pp] |= f;
                }
            }
            let mut fails = Failures::new();
            for (pp, &is_bad) in bad.iter().enumerate() {
                if !is_bad {
                    continue;
                }
                fails.count += 1;
                let (p1, p2) = (pp / n, pp % n);
                let mut terms = Vec::new();
                let mut entries: Vec<(&(usize, usize), &KeyVec)> = acc.iter().collect();
                entries.sort();
                for (&(u, v), kv) in entries {
                    let m = residual(kv, pp);
                    for x in 0..n {
                        for y in 0..n {
                            let co = m.get(x, y);
                            if !co.is_zero() {
                                terms.push(Term {
                                    basis: format!("{}⊗{}", pb_label(pb, x, labels[u]), pb_label(pb, y, labels[v])),
                                    coeff: co.clone(),
                                });
                            }
                        }
                    }
                }
                let args = vec![pb_label(pb, p1, labels[i]), pb_label(pb, p2, labels[j])];
                fails.first.push((vec![p1 * nb + i, p2 * nb + j], Witness { args, residual: terms }));
            }
            fails.first.sort_by(|a, b| a.0.cmp(&b.0));
            fails.first.truncate(MAX_WITNESSES);
            (fails, dropped)
        })
        .collect();
    let mut total = Failures::new();
    for (f, d) in results {
        total = total.merge(f);
        *dropped += d;
    }
    total.into_result(&format!("completed.{}", c.id), n * n * nb * nb)
}

/// Checks the DPP coalgebra identities of `(ν, ϑ)` on every in-box argument.
fn check_tensor_coalgebra(pb: &BialgebraCandidate, side: &BSide, dropped: &mut usize) -> IdentityReport {
    let n = pb.algebra.dim();
    let labels = &side.box_list;
    let nb = labels.len();
    let mut report = IdentityReport::new();
    for (id, _arity, terms) in identity_table(Kind::Dpp) {
        // key = (nest, perm); the P-part is a dense cube per P basis element
        let mut keys: Vec<(Nest, [usize; 3])> = Vec::new();
        for t in &terms {
            if !keys.contains(&(t.nest, t.perm)) {
                keys.push((t.nest, t.perm));
            }
        }
        let cubes: Vec<Vec<Vec<Rational>>> = (0..n)
            .map(|p| {
                let mut out = vec![vec![Rational::zero(); n * n * n]; keys.len()];
                for t in &terms {
                    let k = keys.iter().position(|x| *x == (t.nest, t.perm)).unwrap();
                    let cube = compose(pb.coproduct(p_role(t.outer)), pb.coproduct(p_role(t.inner)), p, t.nest);
                    let c = Rational::from_int(t.coef);
                    for (flat, v) in cube.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let legs = [flat / (n * n), (flat / n) % n, flat % n];
                        let mut idx = [0; 3];
                        for (slot, &q) in t.perm.iter().enumerate() {
                            idx[q] = legs[slot];
                        }
                        out[k][(idx[0] * n + idx[1]) * n + idx[2]] += &(&c * v);
                    }
                }
                out
            })
            .collect();
        let per_b: Vec<(Failures, usize)> = (0..nb)
            .into_par_iter()
            .map(|bi| {
                let b = labels[bi];
                let mut dropped = 0;
                let mut acc: BTreeMap<[LvfLabel; 3], KeyVec> = BTreeMap::new();
                let mut buf = Vec::new();
                for (k, &(nest, perm)) in keys.iter().enumerate() {
                    buf.clear();
                    side.eval3(nest, b, &mut buf, &mut dropped);
                    for (legs, c) in &buf {
                        let mut idx = [legs[0]; 3];
                        for (slot, &q) in perm.iter().enumerate() {
                            idx[q] = legs[slot];
                        }
                        let e = acc.entry(idx).or_default();
                        match e.last_mut() {
                            Some(last) if last.0 == k as u16 => last.1 += c,
                            _ => e.push((k as u16, *c)),
                        }
                    }
                }
                let mut fails = Failures::new();
                for p in 0..n {
                    let mut terms_out = Vec::new();
                    for (legs, kv) in &acc {
                        let mut cube = vec![Rational::zero(); n * n * n];
                        for &(k, c) in kv {
                            if c == 0 {
                                continue;
                            }
                            let cr = Rational::from_int(c);
                            for (o, v) in cube.iter_mut().zip(&cubes[p][k as usize]) {
                                if !v.is_zero() {
                                    *o += &(&cr * v);
                                }
                            }
                        }
                        for (flat, v) in cube.iter().enumerate() {
                            if !v.is_zero() {
                                let (x, y, z) = (flat / (n * n), (flat / n) % n, flat % n);
                                terms_out.push(Term {
                                    basis: format!(
                                        "{}⊗{}⊗{}",
                                        pb_label(pb, x, legs[0]),
                                        pb_label(pb, y, legs[1]),
                                        pb_label(pb, z, legs[2])
                                    ),
                                    coeff: v.clone(),
                                });
                            }
                        }
                    }
                    if !terms_out.is_empty() {
                        fails.count += 1;
                        fails.first.push((vec![p * nb + bi], Witness { args: vec![pb_label(pb, p, b)], residual: terms_out }));
                    }
                }
                fails.first.truncate(MAX_WITNESSES);
                (fails, dropped)
            })
            .collect();
        let mut total = Failures::new();
        for (f, d) in per_b {
            total = total.merge(f);
            *dropped += d;
        }
        report.push(total.into_result(&format!("completed.{id}"), n * nb));
    }
    report
}

/// Checks the DPP identities of the products on `P ⊗ B` for every in-box argument triple.
fn check_tensor_algebra(pb: &BialgebraCandidate, m: i64) -> IdentityReport {
    let alg = &pb.algebra;
    let n = alg.dim();
    let labels = box_labels(m);
    let nb = labels.len();
    let mut report = IdentityReport::new();
    for (id, arity, terms) in identity_table(Kind::Dpp) {
        if arity != 3 {
            continue;
        }
        let id = id.trim_start_matches("coalg.");
        // P-side value of each term for each P triple
        let pvals: Vec<Vec<Vec<Rational>>> = (0..n * n * n)
            .map(|flat| {
                let p = [flat / (n * n), (flat / n) % n, flat % n];
                let v = |i: usize| alg.basis_vec(p[i]);
                terms
                    .iter()
                    .map(|t| {
                        let (o, i) = (p_role(t.outer), p_role(t.inner));
                        match t.nest {
                            Nest::Left => alg.mul(o, &alg.mul(i, &v(t.perm[0]), &v(t.perm[1])), &v(t.perm[2])),
                            _ => alg.mul(o, &v(t.perm[0]), &alg.mul(i, &v(t.perm[1]), &v(t.perm[2]))),
                        }
                    })
                    .collect()
            })
            .collect();
        let mut cache: HashMap<Vec<usize>, Vec<bool>> = HashMap::new();
        let mut fails = Failures::new();
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    let b = [labels[i], labels[j], labels[k]];
                    let outs: Vec<LvfLabel> = terms
                        .iter()
                        .map(|t| match t.nest {
                            Nest::Left => lvf_product(lvf_product(b[t.perm[0]], b[t.perm[1]]), b[t.perm[2]]),
                            _ => lvf_product(b[t.perm[0]], lvf_product(b[t.perm[1]], b[t.perm[2]])),
                        })
                        .collect();
                    let groups: Vec<usize> = outs.iter().map(|o| outs.iter().position(|x| x == o).unwrap()).collect();
                    let verdict = cache.entry(groups.clone()).or_insert_with(|| {
                        (0..n * n * n)
                            .map(|flat| {
                                let mut sums: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
                                for (ti, t) in terms.iter().enumerate() {
                                    let e = sums.entry(groups[ti]).or_insert_with(|| vec![Rational::zero(); n]);
                                    let c = Rational::from_int(t.coef);
                                    for (o, x) in e.iter_mut().zip(&pvals[flat][ti]) {
                                        *o += &(&c * x);
                                    }
                                }
                                sums.values().any(|s| s.iter().any(|x| !x.is_zero()))
                            })
                            .collect()
                    });
                    for (flat, &bad) in verdict.iter().enumerate() {
                        if !bad {
                            continue;
                        }
                        fails.count += 1;
                        if fails.first.len() < MAX_WITNESSES {
                            let p = [flat / (n * n), (flat / n) % n, flat % n];
                            let mut residual = Vec::new();
                            let mut sums: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
                            for (ti, t) in terms.iter().enumerate() {
                                let e = sums.entry(groups[ti]).or_insert_with(|| vec![Rational::zero(); n]);
                                let c = Rational::from_int(t.coef);
                                for (o, x) in e.iter_mut().zip(&pvals[flat][ti]) {
                                    *o += &(&c * x);
                                }
                            }
                            for (g, s) in sums {
                                for (q, c) in s.iter().enumerate() {
                                    if !c.is_zero() {
                                        residual.push(Term { basis: pb_label(pb, q, outs[g]), coeff: c.clone() });
                                    }
                                }
                            }
                            let args = (0..3).map(|x| pb_label(pb, p[x], b[x])).collect();
                            fails.first.push((vec![p[0] * nb + i, p[1] * nb + j, p[2] * nb + k], Witness { args, residual }));
                        }
                    }
                }
            }
        }
        fails.first.sort_by(|a, b| a.0.cmp(&b.0));
        fails.first.truncate(MAX_WITNESSES);
        report.push(fails.into_result(&format!("completed.{id}"), n * n * n * nb * nb * nb));
    }
    report
}

fn scalar_family(id: &str, checked: usize, bad: Vec<(Vec<String>, i64)>) -> IdentityResult {
    let count = bad.len();
    let first = bad
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|(args, v)| Witness { args, residual: vec![Term { basis: "ω".into(), coeff: Rational::from_int(v) }] })
        .collect();
    let mut r = IdentityResult::from_failures(id, checked, first);
    r.failures = count;
    r
}

/// Gradedness of `∘`, skew-symmetry, gradedness and invariance of `ω`, and the pairing law of `ν`.
pub fn check_lvf_structure(m: i64, rule: NuRule) -> IdentityReport {
    let labels = box_labels(m);
    let n = labels.len();
    let mut rep = IdentityReport::new();
    let mut bad = Vec::new();
    for &a in &labels {
        for &b in &labels {
            let d = lvf_product(a, b).deg() - a.deg() - b.deg();
            if d != 0 {
                bad.push((vec![a.to_string(), b.to_string()], d));
            }
        }
    }
    rep.push(scalar_family("lvf.product.graded", n * n, bad));
    let offset = infer_form_offset(m).ok();
    let mut skew = Vec::new();
    let mut graded = Vec::new();
    for &a in &labels {
        for &b in &labels {
            let s = lvf_form(a, b) + lvf_form(b, a);
            if s != 0 {
                skew.push((vec![a.to_string(), b.to_string()], s));
            }
            let w = lvf_form(a, b);
            if w != 0 && Some(a.deg() + b.deg() + offset.unwrap_or(0)) != Some(0) {
                graded.push((vec![a.to_string(), b.to_string()], w));
            }
        }
    }
    rep.push(scalar_family("lvf.form.skew", n * n, skew));
    rep.push(scalar_family("lvf.form.graded", n * n, graded));
    let mut inv = Vec::new();
    let mut pairing = Vec::new();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                let v = lvf_form(lvf_product(a, b), c) - lvf_form(a, lvf_product(b, c)) + lvf_form(a, lvf_product(c, b));
                if v != 0 {
                    inv.push((vec![a.to_string(), b.to_string(), c.to_string()], v));
                }
                let d = nu_pairing_defect(rule, a, b, c);
                if d != 0 {
                    pairing.push((vec![a.to_string(), b.to_string(), c.to_string()], d));
                }
            }
        }
    }
    rep.push(scalar_family("lvf.form.invariance", n * n * n, inv));
    rep.push(scalar_family("lvf.nu.pairing", n * n * n, pairing));
    rep
}

/// The completed perm coalgebra identities of `ν` on every in-box argument, in the given mode.
pub fn check_completed_coalgebra(params: &GradedParams, rule: NuRule) -> Result<IdentityReport, ForgeError> {
    params.validate()?;
    let side = BSide::new(params, rule);
    let labels = &side.box_list;
    let mut report = IdentityReport::new();
    let mut dropped = 0;
    for (id, _arity, terms) in identity_table(Kind::Perm) {
        let mut fails = Failures::new();
        for (bi, &b) in labels.iter().enumerate() {
            let mut acc: BTreeMap<[LvfLabel; 3], i64> = BTreeMap::new();
            for t in &terms {
                let mut buf = Vec::new();
                side.eval3(t.nest, b, &mut buf, &mut dropped);
                for (legs, c) in buf {
                    let mut idx = [legs[0]; 3];
                    for (slot, &q) in t.perm.iter().enumerate() {
                        idx[q] = legs[slot];
                    }
                    *acc.entry(idx).or_default() += t.coef * c;
                }
            }
            let residual: Vec<Term> = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(l, c)| Term { basis: format!("{}⊗{}⊗{}", l[0], l[1], l[2]), coeff: Rational::from_int(c) })
                .collect();
            if !residual.is_empty() {
                fails.count += 1;
                if fails.first.len() < MAX_WITNESSES {
                    fails.first.push((vec![bi], Witness { args: vec![b.to_string()], residual }));
                }
            }
        }
        report.push(fails.into_result(&format!("completed.{id}"), labels.len()));
    }
    Ok(report)
}

/// Result of a completed tensor bialgebra check.
#[derive(Clone, Debug, Serialize)]
pub struct GradedReport {
    pub params: GradedParams,
    pub form_offset: i64,
    /// Intermediate strong-mode terms that left the working window (never in-box contributions).
    pub dropped: usize,
    pub report: IdentityReport,
}

/// Verifies that `P ⊗ B` with `ν = Δ•ν_ω`, `ϑ = δ•ν_ω` is a completed DPP bialgebra, on the box.
pub fn completed_tensor_bialgebra(pb: &BialgebraCandidate, params: &GradedParams) -> Result<GradedReport, ForgeError> {
    completed_tensor_bialgebra_with(pb, params, NuRule::default())
}

/// As [`completed_tensor_bialgebra`] with an explicit coproduct rule (used for negative controls).
pub fn completed_tensor_bialgebra_with(pb: &BialgebraCandidate, params: &GradedParams, rule: NuRule) -> Result<GradedReport, ForgeError> {
    params.validate()?;
    if pb.algebra.kind != Kind::Poisson {
        return Err(ForgeError::Kind(format!("expected a poisson bialgebra, got {}", pb.algebra.kind)));
    }
    let pre = check_bialgebra(pb)?;
    if !pre.passed() {
        return Err(ForgeError::Precondition { id: pre.failed_ids().join(","), msg: "input is not a Poisson bialgebra".into() });
    }
    let side = BSide::new(params, rule);
    let mut dropped = 0;
    let mut report = check_lvf_structure(params.box_m, rule);
    report.extend(check_tensor_algebra(pb, params.box_m));
    report.extend(check_tensor_coalgebra(pb, &side, &mut dropped));
    for c in bialgebra_conditions(Kind::Dpp)? {
        report.push(check_condition(pb, &side, &c, &mut dropped));
    }
    Ok(GradedReport { params: *params, form_offset: infer_form_offset(params.box_m.max(1))?, dropped, report })
}

/// A label of `P ⊗ B`: P basis index and monomial.
pub type PbLabel = (usize, LvfLabel);

/// `ν(p⊗b)` (role circ) or `ϑ(p⊗b)` (role star) with legs in the box, materialized in the window.
pub fn tensor_coproduct(pb: &BialgebraCandidate, role: Role, p: usize, b: LvfLabel, params: &GradedParams) -> Result<WindowedTensor<PbLabel>, ForgeError> {
    params.validate()?;
    let co = pb.coproduct(p_role(role));
    let rule = NuRule::default();
    let mut terms = BTreeMap::new();
    let pm = &co.images[p];
    for x in window_labels(params.window) {
        let (c, y) = rule.partner(b, x);
        if !(x.in_box(params.box_m) && y.in_box(params.box_m)) {
            continue;
        }
        for i in 0..pm.rows {
            for j in 0..pm.cols {
                let v = pm.get(i, j);
                if !v.is_zero() {
                    terms.insert(((i, x), (j, y)), v * &Rational::from_int(c));
                }
            }
        }
    }
    Ok(WindowedTensor { window: params.window, complete_box: params.box_m, terms })
}

/// `r̂ = Σ (x_i⊗e)⊗(y_i⊗f)` over the ω-dual pairs `(e, f)` of the window, for `r = Σ x_i⊗y_i`.
pub fn lift_r_truncated(r: &Tensor2, params: &GradedParams) -> Result<WindowedTensor<PbLabel>, ForgeError> {
    params.validate()?;
    let mut terms = BTreeMap::new();
    for e in window_labels(params.window) {
        let (c, f) = form_dual(e);
        for i in 0..r.data.rows {
            for j in 0..r.data.cols {
                let v = r.data.get(i, j);
                if !v.is_zero() {
                    terms.insert(((i, e), (j, f)), v * &Rational::from_int(c));
                }
            }
        }
    }
    Ok(WindowedTensor { window: params.window, complete_box: params.window, terms })
}

fn pb_product(pb: &BialgebraCandidate, role: Role, a: PbLabel, b: PbLabel) -> Vec<(PbLabel, Rational)> {
    let alg = &pb.algebra;
    let out = lvf_product(a.1, b.1);
    alg.product(p_role(role))
        .basis(a.0, b.0)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| ((k, out), c.clone()))
        .collect()
}

/// In-box components of the perm and Leibniz Yang-Baxter residuals of a windowed `r̂`, plus its symmetry.
pub fn check_lift_truncated(pb: &BialgebraCandidate, rhat: &WindowedTensor<PbLabel>, params: &GradedParams, sign: LybeSign) -> Result<IdentityReport, ForgeError> {
    params.validate()?;
    let m = params.box_m;
    let inb = |l: &PbLabel| l.1.in_box(m);
    let mut report = IdentityReport::new();
    let mut asym = Vec::new();
    for (&(a, b), c) in &rhat.terms {
        if inb(&a) && inb(&b) && rhat.get(b, a) != *c {
            asym.push(Witness {
                args: vec![pb_label(pb, a.0, a.1), pb_label(pb, b.0, b.1)],
                residual: vec![Term { basis: "r̂−τr̂".into(), coeff: c - &rhat.get(b, a) }],
            });
        }
    }
    let count = asym.len();
    asym.truncate(MAX_WITNESSES);
    let mut sym = IdentityResult::from_failures("completed.rhat.symmetric", rhat.terms.len(), asym);
    sym.failures = count;
    report.push(sym);
    use Placement::*;
    let specs: [(&str, Role, Vec<(Placement, i64)>); 2] = [
        ("completed.ybe.perm", Role::Circ, vec![(P12_23, 1), (P13_23, -1), (P12_13, 1), (P13_12, -1)]),
        ("completed.ybe.leibniz", Role::Star, vec![(P12_13, 1), (P12_23, sign.value()), (P23_12, -1), (P23_13, 1)]),
    ];
    let terms: Vec<(PbLabel, PbLabel, Rational)> = rhat.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect();
    for (id, role, parts) in specs {
        let mut acc: BTreeMap<[PbLabel; 3], Rational> = BTreeMap::new();
        for &(place, sign) in &parts {
            let sgn = Rational::from_int(sign);
            for (x1, y1, c1) in &terms {
                for (x2, y2, c2) in &terms {
                    // (product operands, fixed legs, slot of the product)
                    let (l, r, fixed, slot) = match place {
                        P12_13 => (x1, x2, [*y1, *y2], 0),
                        P12_23 => (y1, x2, [*x1, *y2], 1),
                        P13_23 => (y1, y2, [*x1, *x2], 2),
                        P13_12 => (x1, x2, [*y2, *y1], 0),
                        P23_12 => (x1, y2, [*x2, *y1], 1),
                        P23_13 => (y1, y2, [*x2, *x1], 2),
                    };
                    if !fixed.iter().all(inb) {
                        continue;
                    }
                    for (k, v) in pb_product(pb, role, *l, *r) {
                        if !k.1.in_box(m) {
                            continue;
                        }
                        let mut legs = [k; 3];
                        let mut f = fixed.iter();
                        for (s, leg) in legs.iter_mut().enumerate() {
                            if s != slot {
                                *leg = *f.next().unwrap();
                            }
                        }
                        *acc.entry(legs).or_default() += &(&sgn * &(c1 * &(c2 * &v)));
                    }
                }
            }
        }
        let residual: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| Term {
                basis: format!("{}⊗{}⊗{}", pb_label(pb, l[0].0, l[0].1), pb_label(pb, l[1].0, l[1].1), pb_label(pb, l[2].0, l[2].1)),
                coeff: c,
            })
            .collect();
        let failing = if residual.is_empty() { vec![] } else { vec![Witness { args: vec!["r̂".into()], residual }] };
        report.push(IdentityResult::from_failures(id, 1, failing));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ybe::DEFAULT_LYBE_SIGN;

    fn l(i1: i64, i2: i64, s: u8) -> LvfLabel {
        LvfLabel::new(i1, i2, s)
    }

    #[test]
    fn product_and_form_examples() {
        assert_eq!(lvf_product(l(0, 0, 1), l(0, 0, 1)), l(1, 0, 1));
        assert_eq!(lvf_product(l(0, 0, 2), l(3, -1, 1)), l(3, 0, 1));
        assert_eq!(lvf_form(l(0, 0, 2), l(0, 0, 1)), 1);
        for a in box_labels(2) {
            assert_eq!(lvf_form(a, a), 0);
            let (c, f) = form_dual(a);
            assert_eq!(c * lvf_form(f, a), 1);
        }
        assert_eq!(infer_form_offset(2).unwrap(), -2);
    }

    #[test]
    fn nu_closed_form_and_pairing() {
        let nu = nu_omega(l(1, 0, 1), 2);
        assert_eq!(nu.get(l(0, 0, 1), l(1, 1, 1)), Rational::from_int(1));
        assert_eq!(nu.get(l(0, 0, 2), l(2, 0, 1)), Rational::from_int(-1));
        assert!(nu_omega(l(5, 5, 1), 0).terms.is_empty());
        assert!(check_lvf_structure(3, NuRule::default()).passed());
        let bad = check_lvf_structure(1, NuRule::flipped());
        assert!(!bad.get("lvf.nu.pairing").unwrap().passed());
    }

    #[test]
    fn completed_perm_coalgebra_both_modes() {
        for mode in [Mode::Pairing, Mode::Strong] {
            let p = GradedParams { box_m: 2, window: 6, mode };
            let r = check_completed_coalgebra(&p, NuRule::default()).unwrap(); assert!(r.passed(), "{mode} {}", r.to_text());
        }
        let p = GradedParams { box_m: 2, window: 6, mode: Mode::Pairing };
        let bad = check_completed_coalgebra(&p, NuRule::alternating()).unwrap();
        assert!(!bad.passed());
        assert!(bad.results.iter().any(|r| !r.witnesses.is_empty()));
    }

    #[test]
    fn strong_mode_needs_a_wide_window() {
        let p = GradedParams { box_m: 2, window: 5, mode: Mode::Strong };
        assert!(check_completed_coalgebra(&p, NuRule::default()).is_err());
    }

    #[test]
    fn tensor_bialgebra_box_one() {
        let pb = catalog::p3_bialgebra();
        for mode in [Mode::Pairing, Mode::Strong] {
            let p = GradedParams { box_m: 1, window: 4, mode };
            let r = completed_tensor_bialgebra(&pb, &p).unwrap();
            assert!(r.report.passed(), "{}", r.report.to_text());
        }
    }

    #[test]
    fn corrupted_nu_fails_tensor_bialgebra() {
        let pb = catalog::p3_bialgebra();
        let p = GradedParams { box_m: 1, window: 4, mode: Mode::Pairing };
        let r = completed_tensor_bialgebra_with(&pb, &p, NuRule::flipped()).unwrap();
        assert!(!r.report.passed());
    }

    #[test]
    fn zero_bialgebra_passes() {
        let p3 = catalog::p3();
        let pb = BialgebraCandidate::with_zero_coproducts(crate::algebra::StructureAlgebra::zero("Z", Kind::Poisson, p3.space));
        let p = GradedParams { box_m: 1, window: 4, mode: Mode::Pairing };
        assert!(completed_tensor_bialgebra(&pb, &p).unwrap().report.passed());
    }

    #[test]
    fn lifted_r_window() {
        let pb = catalog::p3_bialgebra();
        let p = GradedParams { box_m: 2, window: 6, mode: Mode::Strong };
        let rhat = lift_r_truncated(&catalog::p3_r(), &p).unwrap();
        for a in box_labels(2).into_iter().filter(|a| a.s == 1) {
            let f = LvfLabel::new(-a.i1, -a.i2, 2);
            assert_eq!(rhat.get((1, a), (2, f)), Rational::from_int(1));
        }
        assert!(check_lift_truncated(&pb, &rhat, &p, DEFAULT_LYBE_SIGN).unwrap().passed());
        let zero = Tensor2::zeros(&pb.algebra.space, &pb.algebra.space);
        assert!(lift_r_truncated(&zero, &p).unwrap().terms.is_empty());
    }

    #[test]
    fn strong_mode_is_stable_under_window_growth() {
        let pb = catalog::p3_bialgebra();
        let a = GradedParams { box_m: 1, window: 4, mode: Mode::Strong };
        let b = GradedParams { window: 6, ..a };
        let (ra, rb) = (completed_tensor_bialgebra(&pb, &a).unwrap(), completed_tensor_bialgebra(&pb, &b).unwrap());
        assert_eq!(ra.report, rb.report);
        for role in [Role::Circ, Role::Star] {
            for p in 0..3 {
                for x in box_labels(1) {
                    assert_eq!(tensor_coproduct(&pb, role, p, x, &a).unwrap().terms, tensor_coproduct(&pb, role, p, x, &b).unwrap().terms);
                }
            }
        }
    }

    #[test]
    fn tensor_coproduct_is_factorized() {
        let pb = catalog::p3_bialgebra();
        let p = GradedParams { box_m: 2, window: 6, mode: Mode::Strong };
        let delta = pb.coproduct(Role::Bracket);
        for b in [l(0, 0, 1), l(1, -1, 2)] {
            let nu = nu_omega(b, 2);
            for q in 0..3 {
                let t = tensor_coproduct(&pb, Role::Star, q, b, &p).unwrap();
                for ((u, v), c) in &nu.terms {
                    for i in 0..3 {
                        for j in 0..3 {
                            assert_eq!(t.get((i, *u), (j, *v)), c * delta.images[q].get(i, j));
                        }
                    }
                }
            }
        }
    }
}
