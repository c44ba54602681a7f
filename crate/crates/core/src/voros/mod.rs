//! Voros coefficients.
//!
//! Every Voros coefficient here is a signed sum of two building blocks,
//!
//! ```text
//! F(c, η) = Σ (2^{1−2n} − 1)/(2n(2n−1)) · B_{2n} · (cη)^{1−2n}
//! G(c, η) = Σ B_{2n}/(2n(2n−1)) · (cη)^{1−2n}
//! ```
//!
//! evaluated at one of c_p, c_m, c∞, c₀ (or c for D7). The blocks are kept
//! as exact rational Laurent series in z = cη so that the difference
//! equations they satisfy can be checked without rounding.

mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Equation;
use crate::error::{Error, Result};
use crate::numerics::{bernoulli_table, LaurentAtInfinity, Rational};

pub use oracle::{voros_numeric_oracle, OracleOptions, OracleReport};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Which building block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    F,
    G,
}

/// Coefficient of z^{1−2n} in the block.
pub fn block_coefficient(block: Block, n: usize, bern: &[Rational]) -> Rational {
    let k = 2 * n as i64;
    let base = &bern[2 * n] / rat(k * (k - 1));
    match block {
        Block::G => base,
        Block::F => {
            // 2^{1−2n} − 1
            let two_pow = Rational::new(BigInt::one(), BigInt::from(2).pow((2 * n - 1) as u32));
            base * (two_pow - Rational::one())
        }
    }
}

fn block_series(block: Block, nmax: usize) -> LaurentAtInfinity {
    let bern = bernoulli_table(2 * nmax.max(1));
    let mut s = LaurentAtInfinity::zero(2 * nmax as i64 - 1);
    for n in 1..=nmax {
        s.add_term(1 - 2 * n as i64, block_coefficient(block, n, &bern));
    }
    s
}

/// F̂(z) through z^{1−2·nmax}, exact.
pub fn f_series(nmax: usize) -> LaurentAtInfinity {
    block_series(Block::F, nmax)
}

/// Ĝ(z) through z^{1−2·nmax}, exact.
pub fn g_series(nmax: usize) -> LaurentAtInfinity {
    block_series(Block::G, nmax)
}

/// The parameter combination a block is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Cp,
    Cm,
    CInf,
    C0,
    /// The single D7 parameter.
    C,
}

impl Var {
    pub fn value(self, eq: &Equation) -> Result<C64> {
        match (self, eq) {
            (Var::Cp, Equation::D6(p)) => Ok(p.c_p()),
            (Var::Cm, Equation::D6(p)) => Ok(p.c_m()),
            (Var::CInf, Equation::D6(p)) => Ok(p.c_inf),
            (Var::C0, Equation::D6(p)) => Ok(p.c_0),
            (Var::C, Equation::D7 { c }) => Ok(*c),
            _ => Err(Error::Domain(format!("{self:?} is not a parameter of this equation"))),
        }
    }
}

/// End point of the integration path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    /// ∞ⱼ: j = 1..4 for D6, 1..3 for D7.
    Inf(u8),
    /// 0_{c∞} (D6).
    ZeroCInf,
    /// 0_{c₀} (D6).
    ZeroC0,
    /// 0_c (D7).
    ZeroC,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Inf(j) => write!(f, "inf{j}"),
            Target::ZeroCInf => write!(f, "0cinf"),
            Target::ZeroC0 => write!(f, "0c0"),
            Target::ZeroC => write!(f, "0c"),
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(['_', '∞'], "");
        match t.as_str() {
            "0cinf" | "0cinfty" => Ok(Target::ZeroCInf),
            "0c0" => Ok(Target::ZeroC0),
            "0c" => Ok(Target::ZeroC),
            _ => {
                let j = t
                    .strip_prefix("inf")
                    .and_then(|r| r.parse::<u8>().ok())
                    .ok_or_else(|| Error::Domain(format!("unknown end point '{s}'")))?;
                Ok(Target::Inf(j))
            }
        }
    }
}

/// A Voros end point with the sign of R₋₁ = ±√Δ fixed there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndpointSpec {
    pub equation: Equation,
    pub target: Target,
    /// +1 or −1.
    pub sign: i8,
}

impl EndpointSpec {
    pub fn new(equation: Equation, target: Target, sign: i8) -> Result<Self> {
        let ok = match (&equation, target) {
            (Equation::D6(_), Target::Inf(j)) => (1..=4).contains(&j),
            (Equation::D6(_), Target::ZeroCInf | Target::ZeroC0) => true,
            (Equation::D7 { .. }, Target::Inf(j)) => (1..=3).contains(&j),
            (Equation::D7 { .. }, Target::ZeroC) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::Domain(format!("end point {target} does not exist for this equation")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
        }
        match &equation {
            Equation::D6(p) => p.check_generic()?,
            Equation::D7 { c } => {
                if c.norm() == 0.0 {
                    return Err(Error::DegenerateParameters("c = 0".into()));
                }
            }
        }
        Ok(EndpointSpec { equation, target, sign })
    }

    pub fn flipped(&self) -> Self {
        EndpointSpec { sign: -self.sign, ..*self }
    }

    /// The closed form as a list of (integer coefficient, block, variable).
    pub fn blocks(&self) -> Vec<(i64, Block, Var)> {
        let s = self.sign as i64;
        let raw: Vec<(i64, Block, Var)> = match (&self.equation, self.target) {
            (Equation::D6(_), Target::Inf(1 | 2)) => vec![(1, Block::F, Var::Cp)],
            (Equation::D6(_), Target::Inf(_)) => vec![(1, Block::F, Var::Cm)],
            (Equation::D6(_), Target::ZeroCInf) => {
                vec![(1, Block::F, Var::Cp), (1, Block::F, Var::Cm), (-3, Block::G, Var::CInf)]
            }
            (Equation::D6(_), Target::ZeroC0) => {
                vec![(1, Block::F, Var::Cp), (-1, Block::F, Var::Cm), (-3, Block::G, Var::C0)]
            }
            (Equation::D7 { .. }, Target::Inf(_)) => vec![],
            // W_{0c,±} = ∓3G(c)
            (Equation::D7 { .. }, _) => vec![(-3, Block::G, Var::C)],
            (Equation::D6(_), Target::ZeroC) => vec![],
        };
        raw.into_iter().map(|(k, b, v)| (s * k, b, v)).collect()
    }
}

/// Where a Voros series came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm,
    NumericOracle,
}

/// Σ coefficient·η^{1−2n} over the stored (n, coefficient) pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VorosSeries {
    pub terms: Vec<(usize, C64)>,
    pub provenance: Provenance,
}

impl VorosSeries {
    pub fn coeff(&self, n: usize) -> Option<C64> {
        self.terms.iter().find(|(m, _)| *m == n).map(|(_, c)| *c)
    }

    /// Partial sum at a given η.
    pub fn eval(&self, eta: C64) -> C64 {
        self.terms.iter().map(|(n, c)| c * eta.powi(1 - 2 * *n as i32)).sum()
    }

    pub fn neg(&self) -> Self {
        VorosSeries { terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(), provenance: self.provenance }
    }
}

/// Closed-form Voros coefficients W₁, W₃, …, W_{2nmax−1}.
pub fn voros_closed_form(spec: &EndpointSpec, nmax: usize) -> Result<VorosSeries> {
    let spec = EndpointSpec::new(spec.equation, spec.target, spec.sign)?;
    let bern = bernoulli_table(2 * nmax.max(1));
    let blocks = spec.blocks();
    let mut terms = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut acc = C64::new(0.0, 0.0);
        for (k, b, v) in &blocks {
            let a = block_coefficient(*b, n, &bern).to_f64().unwrap_or(f64::NAN);
            let c = v.value(&spec.equation)?;
            acc += *k as f64 * a * c.powi(1 - 2 * n as i32);
        }
        terms.push((n, acc));
    }
    Ok(VorosSeries { terms, provenance: Provenance::ClosedForm })
}

/// Parameter shift applied in a difference equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shift {
    /// (c∞, c₀) ↦ (c∞ + η⁻¹, c₀ + η⁻¹).
    T1,
    /// (c∞, c₀) ↦ (c∞ + η⁻¹, c₀ − η⁻¹).
    T2,
    /// D7: c ↦ c + η⁻¹.
    D7,
}

impl Shift {
    /// Induced shift of z = (variable)·η.
    pub fn of(self, v: Var) -> i64 {
        match (self, v) {
            (Shift::T1, Var::Cp | Var::CInf | Var::C0) => 1,
            (Shift::T2, Var::Cm | Var::CInf) => 1,
            (Shift::T2, Var::C0) => -1,
            (Shift::D7, Var::C) => 1,
            _ => 0,
        }
    }
}

/// A term of a logarithmic right-hand side, in the variable z = v·η:
/// (a·z + b)·log(1 + h/z), or a constant when `log_h` is zero.
#[derive(Clone, Debug)]
struct RhsTerm {
    var: Var,
    a: Rational,
    b: Rational,
    log_h: Rational,
}

fn zlog(var: Var, a: i64, b: Rational, h: Rational) -> RhsTerm {
    RhsTerm { var, a: rat(a), b, log_h: h }
}

fn konst(k: i64) -> RhsTerm {
    RhsTerm { var: Var::C, a: rat(0), b: rat(k), log_h: rat(0) }
}

/// 1 − (z+1)·log(1 + 1/z) + log(1 + 1/(2z)): the F increment.
fn f_increment(v: Var) -> Vec<RhsTerm> {
    vec![konst(1), zlog(v, -1, rat(-1), rat(1)), zlog(v, 0, rat(1), ratio(1, 2))]
}

/// 1 − (z+½)·log(1 + 1/z): the G increment.
fn g_increment(v: Var) -> Vec<RhsTerm> {
    vec![konst(1), zlog(v, -1, ratio(-1, 2), rat(1))]
}

fn scaled(terms: Vec<RhsTerm>, k: i64) -> Vec<RhsTerm> {
    terms.into_iter().map(|t| RhsTerm { a: t.a * rat(k), b: t.b * rat(k), ..t }).collect()
}

/// Right-hand sides of the Voros difference equations, transcribed
/// independently of the closed forms (sign factor applied by the caller).
fn voros_rhs(eq: &Equation, target: Target, shift: Shift) -> Result<Vec<RhsTerm>> {
    let t3 = |v: Var, b: Rational, h: i64| zlog(v, 3, b, rat(h));
    Ok(match (eq, target, shift) {
        (Equation::D6(_), Target::Inf(1 | 2), Shift::T1) => f_increment(Var::Cp),
        (Equation::D6(_), Target::Inf(1 | 2), Shift::T2) => vec![],
        (Equation::D6(_), Target::Inf(_), Shift::T1) => vec![],
        (Equation::D6(_), Target::Inf(_), Shift::T2) => f_increment(Var::Cm),
        (Equation::D6(_), Target::ZeroCInf, Shift::T1) => vec![
            konst(-2),
            zlog(Var::Cp, -1, rat(-1), rat(1)),
            zlog(Var::Cp, 0, rat(1), ratio(1, 2)),
            t3(Var::CInf, ratio(3, 2), 1),
        ],
        (Equation::D6(_), Target::ZeroCInf, Shift::T2) => vec![
            konst(-2),
            zlog(Var::Cm, -1, rat(-1), rat(1)),
            zlog(Var::Cm, 0, rat(1), ratio(1, 2)),
            t3(Var::CInf, ratio(3, 2), 1),
        ],
        (Equation::D6(_), Target::ZeroC0, Shift::T1) => vec![
            konst(-2),
            zlog(Var::Cp, -1, rat(-1), rat(1)),
            zlog(Var::Cp, 0, rat(1), ratio(1, 2)),
            t3(Var::C0, ratio(3, 2), 1),
        ],
        (Equation::D6(_), Target::ZeroC0, Shift::T2) => vec![
            konst(2),
            zlog(Var::Cm, 1, rat(1), rat(1)),
            zlog(Var::Cm, 0, rat(-1), ratio(1, 2)),
            t3(Var::C0, ratio(-3, 2), -1),
        ],
        (Equation::D7 { .. }, Target::Inf(_), Shift::D7) => vec![],
        (Equation::D7 { .. }, Target::ZeroC, Shift::D7) => scaled(g_increment(Var::C), -3),
        _ => return Err(Error::Domain(format!("no difference equation for {target} under {shift:?}"))),
    })
}

/// Per-variable Laurent parts plus a shared constant.
#[derive(Clone, Debug, PartialEq)]
struct Split {
    constant: Rational,
    parts: BTreeMap<Var, LaurentAtInfinity>,
}

impl Split {
    fn new() -> Self {
        Split { constant: Rational::zero(), parts: BTreeMap::new() }
    }

    fn add(&mut self, v: Var, s: &LaurentAtInfinity) {
        let mut s = s.clone();
        let c0 = s.coeff(0);
        s.add_term(0, -c0.clone());
        self.constant += c0;
        let e = self.parts.entry(v).or_insert_with(|| LaurentAtInfinity::zero(s.depth()));
        *e = e.add(&s);
    }

    fn first_mismatch(&self, o: &Split) -> Option<String> {
        if self.constant != o.constant {
            return Some(format!("constant: {} vs {}", self.constant, o.constant));
        }
        let vars: std::collections::BTreeSet<Var> = self.parts.keys().chain(o.parts.keys()).copied().collect();
        for v in vars {
            let z = LaurentAtInfinity::zero(i64::MAX / 4);
            let a = self.parts.get(&v).unwrap_or(&z);
            let b = o.parts.get(&v).unwrap_or(&z);
            if let Some(p) = a.first_mismatch(b) {
                return Some(format!("{v:?}: z^{p}: {} vs {}", a.coeff(p), b.coeff(p)));
            }
        }
        None
    }
}

fn rhs_split(terms: &[RhsTerm], depth: i64) -> Split {
    let mut out = Split::new();
    for t in terms {
        if t.log_h.is_zero() {
            out.constant += &t.b;
            continue;
        }
        let lin =
            LaurentAtInfinity::monomial(t.a.clone(), 1, depth).add(&LaurentAtInfinity::constant(t.b.clone(), depth));
        let s = lin.mul(&LaurentAtInfinity::log1p_over_z(&t.log_h, depth + 1));
        out.add(t.var, &s);
    }
    out
}

/// Which difference equation to verify.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum DifferenceKind {
    /// F̂(z+1) − F̂(z).
    F,
    /// Ĝ(z+1) − Ĝ(z).
    G,
    /// Ĝ(z−1) − Ĝ(z), used for the c₀ ↦ c₀ − η⁻¹ direction.
    GBackward,
    /// The closed-form Voros coefficient of `target` under `shift`.
    Voros { target: Target, sign: i8, shift: Shift },
}

/// Outcome of an exact difference-equation check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferenceReport {
    pub kind: String,
    pub nmax: usize,
    /// Lowest power compared (z^{−depth}).
    pub depth: i64,
    /// `None` when every coefficient agrees.
    pub first_mismatch: Option<String>,
}

impl DifferenceReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Exact check of a difference equation through z^{−(2·nmax − 1)}.
/// `eq` is only consulted for the Voros kinds (to pick D6 or D7 tables).
pub fn verify_difference_equation(kind: DifferenceKind, nmax: usize, eq: &Equation) -> Result<DifferenceReport> {
    if nmax < 2 {
        return Err(Error::Order("difference equations need nmax ≥ 2".into()));
    }
    let depth = 2 * nmax as i64 - 1;
    let (lhs, rhs) = match kind {
        DifferenceKind::F => {
            let f = f_series(nmax);
            let mut l = Split::new();
            l.add(Var::C, &f.shift(&rat(1)).sub(&f));
            (l, rhs_split(&f_increment(Var::C), depth))
        }
        DifferenceKind::G => {
            let g = g_series(nmax);
            let mut l = Split::new();
            l.add(Var::C, &g.shift(&rat(1)).sub(&g));
            (l, rhs_split(&g_increment(Var::C), depth))
        }
        DifferenceKind::GBackward => {
            let g = g_series(nmax);
            let mut l = Split::new();
            l.add(Var::C, &g.shift(&rat(-1)).sub(&g));
            // −1 − (z − ½)·log(1 − 1/z)
            let r = vec![konst(-1), zlog(Var::C, -1, ratio(1, 2), rat(-1))];
            (l, rhs_split(&r, depth))
        }
        DifferenceKind::Voros { target, sign, shift } => {
            let spec = EndpointSpec { equation: *eq, target, sign };
            let mut l = Split::new();
            for (k, b, v) in spec.blocks() {
                let s = block_series(b, nmax);
                let h = shift.of(v);
                l.add(v, &s.shift(&rat(h)).sub(&s).scale(&rat(k)));
            }
            let r = scaled(voros_rhs(eq, target, shift)?, sign as i64);
            (l, rhs_split(&r, depth))
        }
    };
    Ok(DifferenceReport { kind: format!("{kind:?}"), nmax, depth, first_mismatch: lhs.first_mismatch(&rhs) })
}

/// Solve Σ_ℓ a_ℓ[(z+1)^{−ℓ} − z^{−ℓ}] = rhs order by order for ℓ = 1..=lmax.
pub fn solve_difference_equation(rhs: &LaurentAtInfinity, lmax: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(lmax);
    for l in 1..=lmax as i64 {
        // coefficient of z^{−(l+1)}: a_k·C(−k, l+1−k) summed over k ≤ l
        let mut acc = rhs.coeff(-(l + 1));
        for k in 1..l {
            acc -= &a[(k - 1) as usize] * binom_neg(k, l + 1 - k);
        }
        a.push(acc / rat(-l));
    }
    a
}

/// C(−k, j) for k ≥ 1, j ≥ 0.
fn binom_neg(k: i64, j: i64) -> Rational {
    let mut b = Rational::one();
    for i in 0..j {
        b = b * rat(-k - i) / rat(i + 1);
    }
    b
}

/// Uniqueness check: the F or G difference equation, solved for unknown
/// coefficients, reproduces the series exactly. Returns the first
/// disagreeing power, if any.
pub fn uniqueness_check(block: Block, nmax: usize) -> Option<i64> {
    let depth = 2 * nmax as i64;
    let rhs_terms = match block {
        Block::F => f_increment(Var::C),
        Block::G => g_increment(Var::C),
    };
    let mut rhs = LaurentAtInfinity::zero(depth);
    for t in &rhs_terms {
        if t.log_h.is_zero() {
            rhs.add_term(0, t.b.clone());
            continue;
        }
        let lin =
            LaurentAtInfinity::monomial(t.a.clone(), 1, depth).add(&LaurentAtInfinity::constant(t.b.clone(), depth));
        rhs = rhs.add(&lin.mul(&LaurentAtInfinity::log1p_over_z(&t.log_h, depth + 1)));
    }
    let a = solve_difference_equation(&rhs, (depth - 1) as usize);
    let series = block_series(block, nmax);
    (1..depth).find(|&l| a[(l - 1) as usize] != series.coeff(-l)).map(|l| -l)
}

/// F̂(z) = Ĝ(2z) − Ĝ(z) through z^{1−2·nmax}; returns the first mismatching power.
pub fn duplication_check(nmax: usize) -> Option<i64> {
    let g = g_series(nmax);
    let rhs = g.rescale_variable(&rat(2)).sub(&g);
    f_series(nmax).first_mismatch(&rhs)
}
