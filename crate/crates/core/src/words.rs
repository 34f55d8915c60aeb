//! Words in `E` and `F`, their evaluation in a representation, the commutation
//! rule for `E^c F^d`, and the Casimir factorization of `E^m F^m` and `F^m E^m`.
//!
//! Bracket convention. With `C = EF + (q^-1 K + q K^-1)/(q - q^-1)^2`, the identities
//!
//! ```text
//! E^m F^m = prod_{i=1}^m (C - [q^{-2(m-i)} K]_{q^-1})
//! F^m E^m = prod_{i=1}^m (C - [q^{2(m-i)} K]_q)
//! ```
//!
//! hold exactly with `[q^r K]_b = (b q^r K + b^-1 q^-r K^-1) / (q - q^-1)^2` for `b = q, q^-1`,
//! and fail with `(q^r K - q^-r K^-1) / (q - q^-1)^2`. A search over the family
//! [`Bracket`] (see [`search_bracket_conventions`]) finds [`BRACKET`] as the only solution
//! once `N = 5` is included (at `N = 3`, `q^3 = -1` lets a second member coincide with it).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braiding::Operator;
use crate::cyclo::{CycScalar, FieldSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qcalc::{q_minus_qinv, qbinom, QSign};
use crate::reps::{Rep, RepKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    E,
    F,
}

/// Alternating product `X_1^{x_1} X_2^{x_2} ...`; empty is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    factors: Vec<(Letter, u32)>,
}

impl Word {
    /// Merges equal neighbours and drops zero exponents.
    pub fn new(factors: impl IntoIterator<Item = (Letter, u32)>) -> Word {
        let mut out: Vec<(Letter, u32)> = vec![];
        for (l, x) in factors {
            if x == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, y)) if *last == l => *y += x,
                _ => out.push((l, x)),
            }
        }
        Word { factors: out }
    }

    /// `E^m F^m`-style two-factor word.
    pub fn pair(first: Letter, x: u32, second: Letter, y: u32) -> Word {
        Word::new([(first, x), (second, y)])
    }

    pub fn factors(&self) -> &[(Letter, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self, l: Letter) -> u32 {
        self.factors.iter().filter(|f| f.0 == l).map(|f| f.1).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.degree(Letter::E) == self.degree(Letter::F)
    }

    /// Parses `E^2 F^1 E F^3`; `1` or an empty string is the empty word.
    pub fn parse(s: &str) -> Result<Word> {
        let mut factors = vec![];
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (l, rest) = match tok.split_at(1) {
                ("E", r) => (Letter::E, r),
                ("F", r) => (Letter::F, r),
                _ => return Err(Error::Format(format!("bad word factor {tok:?}: expected E^k or F^k"))),
            };
            let x = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse::<u32>().ok())
                    .ok_or_else(|| Error::Format(format!("bad exponent in {tok:?}")))?
            };
            factors.push((l, x));
        }
        Ok(Word::new(factors))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(l, x)| format!("{}^{x}", if *l == Letter::E { "E" } else { "F" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn letter_matrix(rep: &Rep, l: Letter) -> &Matrix {
    match l {
        Letter::E => rep.e(),
        Letter::F => rep.f(),
    }
}

fn word_matrix(w: &Word, rep: &Rep) -> Matrix {
    let mut m = Matrix::identity(rep.field(), rep.dim());
    for &(l, x) in w.factors() {
        m = m.mul(&letter_matrix(rep, l).pow(x));
    }
    m
}

/// The matrix of `w`. For balanced words in a semicyclic (or generalized)
/// representation the result must be diagonal and free of `a`.
pub fn eval_word(w: &Word, rep: &Rep) -> Result<Operator> {
    let m = word_matrix(w, rep);
    let asserted = matches!(rep.kind(), RepKind::Semicyclic { .. } | RepKind::Generalized { .. });
    if asserted && w.is_balanced() && !(m.is_diagonal() && m.is_a_free()) {
        return Err(Error::Invariant(format!("balanced word {w} is not diagonal and a-free")));
    }
    Operator::on_v(m, 1, rep.dim())
}

/// `prod_{k=0}^{m-1} f_{(i-k) mod N}`: the `(i, i)` entry of `E^m F^m` for the
/// generalized `F` with entries `f_0, ..., f_{N-1}`.
pub fn base_case_product(fs: &[CycScalar], i: usize, m: usize) -> CycScalar {
    let n = fs.len() as i64;
    let mut acc = fs[0].field().one();
    for k in 0..m as i64 {
        acc = acc * &fs[(i as i64 - k).rem_euclid(n) as usize];
    }
    acc
}

/// A family of candidate definitions of `[q^r K]_b`:
/// `(q^{r + e k_shift} K + kinv_sign q^{-r + e kinv_shift} K^-1) / (q - q^-1)^2`, `b = q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bracket {
    pub k_shift: i64,
    pub kinv_shift: i64,
    pub kinv_sign: i64,
}

/// The convention under which both factorizations hold.
pub const BRACKET: Bracket = Bracket { k_shift: 1, kinv_shift: -1, kinv_sign: 1 };

/// `(q^r K - q^-r K^-1) / (q - q^-1)^2` taken literally, with `q -> q^-1` for the other base.
pub const LITERAL_BRACKET: Bracket = Bracket { k_shift: 0, kinv_shift: 0, kinv_sign: -1 };

/// Diagonal building blocks of reduced words. All are functions of `K` and the Casimir.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalFactor {
    Casimir,
    /// `C - [q^r K]_b`.
    CasimirMinus { r: i64, base: QSign },
    /// `[q^r K]_b`.
    BracketK { r: i64, base: QSign },
    /// `[K; t] = (K q^t - K^-1 q^-t) / (q - q^-1)`.
    KBracket { t: i64 },
    /// `prod_{k=0}^{r-1} [K; c - d - k + shift]`.
    DK { c: i64, d: i64, r: i64, shift: i64 },
}

impl DiagonalFactor {
    /// The same factor after substituting `K -> q^{2x} K`, i.e. moved to the right past `E^x`.
    pub fn shifted(self, x: i64) -> DiagonalFactor {
        match self {
            DiagonalFactor::Casimir => DiagonalFactor::Casimir,
            DiagonalFactor::CasimirMinus { r, base } => DiagonalFactor::CasimirMinus { r: r + 2 * x, base },
            DiagonalFactor::BracketK { r, base } => DiagonalFactor::BracketK { r: r + 2 * x, base },
            DiagonalFactor::KBracket { t } => DiagonalFactor::KBracket { t: t + 2 * x },
            DiagonalFactor::DK { c, d, r, shift } => DiagonalFactor::DK { c, d, r, shift: shift + 2 * x },
        }
    }

    pub fn eval(&self, rep: &Rep) -> Result<Matrix> {
        self.eval_with(rep, BRACKET)
    }

    pub fn eval_with(&self, rep: &Rep, conv: Bracket) -> Result<Matrix> {
        Ok(match *self {
            DiagonalFactor::Casimir => casimir(rep)?,
            DiagonalFactor::CasimirMinus { r, base } => casimir(rep)?.sub(&bracket_matrix(rep, r, base, conv)),
            DiagonalFactor::BracketK { r, base } => bracket_matrix(rep, r, base, conv),
            DiagonalFactor::KBracket { t } => k_bracket(rep, t),
            DiagonalFactor::DK { c, d, r, shift } => {
                let mut m = Matrix::identity(rep.field(), rep.dim());
                for k in 0..r {
                    m = m.mul(&k_bracket(rep, c - d - k + shift));
                }
                m
            }
        })
    }
}

impl fmt::Display for DiagonalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |s: &QSign| if *s == QSign::Plus { "q" } else { "q^-1" };
        match self {
            DiagonalFactor::Casimir => write!(f, "C"),
            DiagonalFactor::CasimirMinus { r, base } => write!(f, "(C - [q^{r} K]_{})", b(base)),
            DiagonalFactor::BracketK { r, base } => write!(f, "[q^{r} K]_{}", b(base)),
            DiagonalFactor::KBracket { t } => write!(f, "[K; {t}]"),
            DiagonalFactor::DK { c, d, r, shift } => write!(f, "D({c},{d},{r};{shift})"),
        }
    }
}

/// `diag(q^{s h_k})` scaled by nothing; the diagonal of `K^s` with a q-shift `q^{t}`.
fn k_power(rep: &Rep, s: i64, t: i64) -> Matrix {
    let field = rep.field();
    Matrix::diagonal(field, rep.weights().iter().map(|&h| field.q_pow(s * h + t)))
}

fn inv_sq_denominator(field: &FieldSpec) -> CycScalar {
    q_minus_qinv(field).pow(2).invert().expect("q - q^-1 is a unit")
}

/// `[q^r K]_b` under a bracket convention.
pub fn bracket_matrix(rep: &Rep, r: i64, base: QSign, conv: Bracket) -> Matrix {
    let field = rep.field();
    let e = base.exponent();
    let k = k_power(rep, 1, r + e * conv.k_shift);
    let kinv = k_power(rep, -1, -r + e * conv.kinv_shift).scale(&field.int(conv.kinv_sign));
    k.add(&kinv).scale(&inv_sq_denominator(field))
}

/// `[K; t]`.
pub fn k_bracket(rep: &Rep, t: i64) -> Matrix {
    let field = rep.field();
    let inv = q_minus_qinv(field).invert().expect("unit");
    k_power(rep, 1, t).sub(&k_power(rep, -1, -t)).scale(&inv)
}

/// `C = EF + (q^-1 K + q K^-1)/(q - q^-1)^2`, checked against `FE + (q K + q^-1 K^-1)/(q - q^-1)^2`.
pub fn casimir(rep: &Rep) -> Result<Matrix> {
    let field = rep.field();
    let den = inv_sq_denominator(field);
    let first = rep
        .e()
        .mul(rep.f())
        .add(&k_power(rep, 1, -1).add(&k_power(rep, -1, 1)).scale(&den));
    let second = rep
        .f()
        .mul(rep.e())
        .add(&k_power(rep, 1, 1).add(&k_power(rep, -1, -1)).scale(&den));
    if first != second {
        return Err(Error::Invariant("the two forms of the Casimir disagree".into()));
    }
    Ok(first)
}

/// One term `coeff * F^f_pow E^e_pow * diag` of the commutation rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteTerm {
    pub f_pow: u32,
    pub e_pow: u32,
    pub diag: DiagonalFactor,
    pub coeff: CycScalar,
}

/// `E^c F^d = sum_{r=0}^c [c]![d]!/([r]![c-r]![d-r]!) F^{d-r} E^{c-r} prod_{k=0}^{r-1} [K; c-d-k]`
/// for `0 <= c < d <= N-1`.
#[allow(non_snake_case)]
pub fn commute_EF(field: &FieldSpec, c: i64, d: i64) -> Result<Vec<CommuteTerm>> {
    let top = field.n() as i64 - 1;
    if !(0 <= c && c < d && d <= top) {
        return Err(Error::Parameter(format!("commute_EF needs 0 <= c < d <= N-1 (got c={c}, d={d})")));
    }
    let mut out = vec![];
    for r in 0..=c {
        // [c]![d]!/([r]![c-r]![d-r]!) = binom(c, r) * binom(d, r) * [r]!
        let coeff = qbinom(field, c, r)? * qbinom(field, d, r)? * crate::qcalc::qfact(field, r)?;
        out.push(CommuteTerm {
            f_pow: (d - r) as u32,
            e_pow: (c - r) as u32,
            diag: DiagonalFactor::DK { c, d, r, shift: 0 },
            coeff,
        });
    }
    Ok(out)
}

/// Evaluates a list of commutation terms.
pub fn eval_commute_terms(terms: &[CommuteTerm], rep: &Rep) -> Result<Matrix> {
    let mut acc = Matrix::zeros(rep.field(), rep.dim(), rep.dim());
    for t in terms {
        let w = Word::pair(Letter::F, t.f_pow, Letter::E, t.e_pow);
        let m = word_matrix(&w, rep).mul(&t.diag.eval(rep)?).scale(&t.coeff);
        acc = acc.add(&m);
    }
    Ok(acc)
}

/// `E^m F^m` as `prod_{i=1}^m (C - [q^{-2(m-i)} K]_{q^-1})`.
pub fn ef_block(m: i64) -> Vec<DiagonalFactor> {
    (1..=m)
        .map(|i| DiagonalFactor::CasimirMinus { r: -2 * (m - i), base: QSign::Minus })
        .collect()
}

/// `F^m E^m` as `prod_{i=1}^m (C - [q^{2(m-i)} K]_q)`.
pub fn fe_block(m: i64) -> Vec<DiagonalFactor> {
    (1..=m)
        .map(|i| DiagonalFactor::CasimirMinus { r: 2 * (m - i), base: QSign::Plus })
        .collect()
}

fn product(factors: &[DiagonalFactor], rep: &Rep, conv: Bracket) -> Result<Matrix> {
    let mut m = Matrix::identity(rep.field(), rep.dim());
    for f in factors {
        m = m.mul(&f.eval_with(rep, conv)?);
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub m: i64,
    pub ef_holds: bool,
    pub fe_holds: bool,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.ef_holds && self.fe_holds
    }
}

/// Compares `E^m F^m` and `F^m E^m` with their Casimir products.
pub fn casimir_factorization(m: i64, rep: &Rep) -> Result<FactorizationReport> {
    casimir_factorization_with(m, rep, BRACKET)
}

pub fn casimir_factorization_with(m: i64, rep: &Rep, conv: Bracket) -> Result<FactorizationReport> {
    if m < 0 {
        return Err(Error::Parameter(format!("m must be >= 0 (got {m})")));
    }
    let x = m as u32;
    let ef = word_matrix(&Word::pair(Letter::E, x, Letter::F, x), rep);
    let fe = word_matrix(&Word::pair(Letter::F, x, Letter::E, x), rep);
    Ok(FactorizationReport {
        m,
        ef_holds: ef == product(&ef_block(m), rep, conv)?,
        fe_holds: fe == product(&fe_block(m), rep, conv)?,
    })
}

/// All conventions in the family with shifts in `-2..=2` for which both
/// factorizations hold for every `1 <= m <= N-1` in every given representation.
pub fn search_bracket_conventions(reps: &[Rep]) -> Result<Vec<Bracket>> {
    let mut found = vec![];
    for k_shift in -2..=2 {
        for kinv_shift in -2..=2 {
            for kinv_sign in [1, -1] {
                let conv = Bracket { k_shift, kinv_shift, kinv_sign };
                let mut ok = true;
                'outer: for rep in reps {
                    for m in 1..rep.dim() as i64 {
                        if !casimir_factorization_with(m, rep, conv)?.holds() {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                if ok {
                    found.push(conv);
                }
            }
        }
    }
    Ok(found)
}

/// `coeff * prod diag` after a balanced word has been fully reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTerm {
    pub coeff: CycScalar,
    pub factors: Vec<DiagonalFactor>,
}

/// Rewrites a balanced word as a sum of products of diagonal factors.
///
/// Repeatedly takes the rightmost `E^c F^d`. If `c >= d` the block `E^d F^d` is
/// replaced by its Casimir product; if `c < d <= N-1` the commutation rule is
/// applied, and for `d >= N` the block `E^c F^c` is split off instead. Diagonal
/// pieces move right past any trailing `E^x` with `K -> q^{2x} K`. What remains
/// is `F^m E^m`, replaced by its Casimir product.
pub fn reduce_balanced(w: &Word, field: &FieldSpec) -> Result<Vec<ReducedTerm>> {
    if !w.is_balanced() {
        return Err(Error::Parameter(format!("{w} is not balanced")));
    }
    let top = field.n() as i64 - 1;
    let mut pending = vec![(field.one(), w.clone(), Vec::<DiagonalFactor>::new())];
    let mut done = vec![];
    while let Some((coeff, word, diag)) = pending.pop() {
        let fs = word.factors();
        if fs.is_empty() {
            done.push(ReducedTerm { coeff, factors: diag });
            continue;
        }
        let pos = (0..fs.len().saturating_sub(1))
            .rev()
            .find(|&p| fs[p].0 == Letter::E && fs[p + 1].0 == Letter::F);
        let Some(p) = pos else {
            // balanced with no E before F: F^m E^m
            let m = fs[0].1 as i64;
            let mut factors = diag;
            factors.extend(fe_block(m));
            done.push(ReducedTerm { coeff, factors });
            continue;
        };
        let (c, d) = (fs[p].1 as i64, fs[p + 1].1 as i64);
        let trailing = fs.get(p + 2).map_or(0, |f| f.1 as i64);
        let prefix = &fs[..p];
        let suffix = &fs[p + 2..];
        let rebuild = |mid: Vec<(Letter, u32)>| {
            Word::new(prefix.iter().copied().chain(mid).chain(suffix.iter().copied()))
        };
        if c >= d || d > top {
            let b = c.min(d);
            let mid = vec![(Letter::E, (c - b) as u32), (Letter::F, (d - b) as u32)];
            let mut factors = diag.clone();
            factors.extend(ef_block(b).into_iter().map(|f| f.shifted(trailing - (d - b))));
            pending.push((coeff, rebuild(mid), factors));
        } else {
            for t in commute_EF(field, c, d)? {
                let mid = vec![(Letter::F, t.f_pow), (Letter::E, t.e_pow)];
                let mut factors = diag.clone();
                factors.push(t.diag.shifted(trailing));
                pending.push((&coeff * &t.coeff, rebuild(mid), factors));
            }
        }
    }
    Ok(done)
}

pub fn eval_reduced(terms: &[ReducedTerm], rep: &Rep) -> Result<Matrix> {
    let mut acc = Matrix::zeros(rep.field(), rep.dim(), rep.dim());
    for t in terms {
        acc = acc.add(&product(&t.factors, rep, BRACKET)?.scale(&t.coeff));
    }
    Ok(acc)
}

/// A random balanced word with `1 <= E-degree <= max_degree`.
pub fn random_balanced_word<R: Rng>(rng: &mut R, max_degree: u32) -> Word {
    let deg = rng.gen_range(1..=max_degree.max(1));
    let blocks = rng.gen_range(1..=deg.min(4));
    let split = |rng: &mut R, parts: u32| -> Vec<u32> {
        // random composition of deg into `parts` positive pieces
        let mut cuts: Vec<u32> = (1..deg).collect();
        for i in (1..cuts.len()).rev() {
            cuts.swap(i, rng.gen_range(0..=i));
        }
        let mut chosen: Vec<u32> = cuts.into_iter().take(parts as usize - 1).collect();
        chosen.sort_unstable();
        let mut out = vec![];
        let mut prev = 0;
        for c in chosen.into_iter().chain([deg]) {
            out.push(c - prev);
            prev = c;
        }
        out
    };
    let e_parts = split(rng, blocks);
    let f_parts = split(rng, blocks);
    let e_first = rng.gen_bool(0.5);
    let mut factors = vec![];
    for (x, y) in e_parts.into_iter().zip(f_parts) {
        if e_first {
            factors.extend([(Letter::E, x), (Letter::F, y)]);
        } else {
            factors.extend([(Letter::F, y), (Letter::E, x)]);
        }
    }
    Word::new(factors)
}

/// `count` reproducible random balanced words of E-degree at most `2(N-1)`.
pub fn random_balanced_words(n: u32, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_balanced_word(&mut rng, 2 * (n - 1))).collect()
}

/// Generators of the Hopf algebra, for the symbolic antipode and counit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopfGen {
    E,
    F,
    K,
    KInv,
}

impl HopfGen {
    pub fn parse(s: &str) -> Result<HopfGen> {
        match s {
            "E" => Ok(HopfGen::E),
            "F" => Ok(HopfGen::F),
            "K" => Ok(HopfGen::K),
            "K^-1" | "Kinv" => Ok(HopfGen::KInv),
            _ => Err(Error::Parameter(format!("unknown generator {s:?}"))),
        }
    }

    fn matrix(self, rep: &Rep) -> &Matrix {
        match self {
            HopfGen::E => rep.e(),
            HopfGen::F => rep.f(),
            HopfGen::K => rep.k(),
            HopfGen::KInv => rep.kinv(),
        }
    }
}

impl fmt::Display for HopfGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopfGen::E => "E",
            HopfGen::F => "F",
            HopfGen::K => "K",
            HopfGen::KInv => "K^-1",
        })
    }
}

/// `sign * x_1 x_2 ...`; `sign = 0` is the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub sign: i8,
    pub factors: Vec<HopfGen>,
}

impl Monomial {
    pub fn gen(g: HopfGen) -> Monomial {
        Monomial { sign: 1, factors: vec![g] }
    }

    pub fn eval(&self, rep: &Rep) -> Matrix {
        let mut m = Matrix::identity(rep.field(), rep.dim());
        for g in &self.factors {
            m = m.mul(g.matrix(rep));
        }
        m.scale(&rep.field().int(self.sign as i64))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let body = if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
        };
        if self.sign < 0 {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

/// `S(K) = K^-1`, `S(E) = -E K^-1`, `S(F) = -K F`, extended as an anti-homomorphism.
pub fn antipode(m: &Monomial) -> Monomial {
    let mut sign = m.sign;
    let mut factors = vec![];
    for g in m.factors.iter().rev() {
        match g {
            HopfGen::K => factors.push(HopfGen::KInv),
            HopfGen::KInv => factors.push(HopfGen::K),
            HopfGen::E => {
                sign = -sign;
                factors.extend([HopfGen::E, HopfGen::KInv]);
            }
            HopfGen::F => {
                sign = -sign;
                factors.extend([HopfGen::K, HopfGen::F]);
            }
        }
    }
    Monomial { sign, factors }
}

/// `eps(K^{+-1}) = 1`, `eps(E) = eps(F) = 0`.
pub fn counit(g: HopfGen) -> i64 {
    match g {
        HopfGen::K | HopfGen::KInv => 1,
        HopfGen::E | HopfGen::F => 0,
    }
}

/// The antipode image and counit of a named generator.
pub fn antipode_counit(gen: &str) -> Result<(Monomial, i64)> {
    let g = HopfGen::parse(gen)?;
    Ok((antipode(&Monomial::gen(g)), counit(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::default_index;
    use crate::qcalc::qint;

    fn semi(n: u32, i: i64) -> Rep {
        let f = FieldSpec::new(n).unwrap();
        Rep::semicyclic(&f, &f.a_pow(1), i).unwrap()
    }

    #[test]
    fn balanced() {
        assert!(Word::parse("E F").unwrap().is_balanced());
        assert!(!Word::parse("E^2 F E F^3").unwrap().is_balanced());
        assert!(Word::parse("").unwrap().is_balanced());
        assert_eq!(Word::parse("E^2 E F^0 F").unwrap().to_string(), "E^3 F^1");
        assert!(Word::parse("G^2").is_err());
        assert!(Word::parse("E^x").is_err());
    }

    #[test]
    fn ef_in_rho_a0() {
        let f = FieldSpec::new(3).unwrap();
        let r = Rep::semicyclic(&f, &f.a_pow(1), 0).unwrap();
        let m = eval_word(&Word::parse("E F").unwrap(), &r).unwrap().into_matrix();
        let expect = Matrix::diagonal(
            &f,
            [f.zero(), qint(&f, 1) * qint(&f, 2), qint(&f, 2) * qint(&f, 1)],
        );
        assert_eq!(m, expect);
    }

    #[test]
    fn unbalanced_not_asserted() {
        let r = semi(3, 0);
        let m = eval_word(&Word::parse("E F^2").unwrap(), &r).unwrap();
        assert!(!m.matrix().is_diagonal());
    }

    #[test]
    fn commute_bounds() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(commute_EF(&f, 1, 2).unwrap().len(), 2);
        let t = commute_EF(&f, 0, 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].f_pow, t[0].e_pow), (3, 0));
        assert!(commute_EF(&f, 2, 2).is_err());
        assert!(commute_EF(&f, 1, 5).is_err());
    }

    #[test]
    fn commute_sound() {
        for n in [3, 5] {
            let f = FieldSpec::new(n).unwrap();
            for r in [Rep::semicyclic(&f, &f.a_pow(1), 0).unwrap(), Rep::standard(&f)] {
                for d in 1..n as i64 {
                    for c in 0..d {
                        let w = Word::pair(Letter::E, c as u32, Letter::F, d as u32);
                        let lhs = eval_word(&w, &r).unwrap().into_matrix();
                        let rhs = eval_commute_terms(&commute_EF(&f, c, d).unwrap(), &r).unwrap();
                        assert_eq!(lhs, rhs, "N={n} c={c} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn casimir_forms_and_centrality() {
        let f = FieldSpec::new(3).unwrap();
        for r in [Rep::semicyclic(&f, &f.a_pow(1), 0).unwrap(), Rep::standard(&f), semi(3, 2)] {
            let c = casimir(&r).unwrap();
            for x in [r.e(), r.f(), r.k()] {
                assert_eq!(c.mul(x), x.mul(&c));
            }
            assert!(c.is_diagonal() && c.is_a_free());
        }
    }

    #[test]
    fn factorization_with_found_convention() {
        for n in [3, 5] {
            let r = semi(n, default_index(n) as i64);
            for m in 0..n as i64 {
                assert!(casimir_factorization(m, &r).unwrap().holds(), "N={n} m={m}");
            }
            let lit = casimir_factorization_with(1, &r, LITERAL_BRACKET).unwrap();
            assert!(!lit.ef_holds && !lit.fe_holds);
        }
    }

    #[test]
    fn convention_search_is_unique() {
        let f = FieldSpec::new(3).unwrap();
        let reps = [semi(3, 0), semi(3, 2), Rep::standard(&f), semi(5, 3)];
        assert_eq!(search_bracket_conventions(&reps).unwrap(), vec![BRACKET]);
        // q^3 = -1 makes a second member of the family coincide with it at N = 3
        assert_eq!(search_bracket_conventions(&reps[..3]).unwrap().len(), 2);
    }

    #[test]
    fn base_case_matches_direct_product() {
        let f = FieldSpec::new(5).unwrap();
        let fs: Vec<CycScalar> = (0..5).map(|k| f.q_pow(k) * f.int(k + 2)).collect();
        let a = f.a_pow(1);
        let r = Rep::generalized(&f, &a, 1, &fs).unwrap();
        for m in 0..5usize {
            let w = Word::pair(Letter::E, m as u32, Letter::F, m as u32);
            let mm = eval_word(&w, &r).unwrap().into_matrix();
            for i in 0..5 {
                assert_eq!(mm.get(i, i), base_case_product(&fs, i, m), "i={i} m={m}");
            }
        }
    }

    #[test]
    fn reflected_index_product_disagrees() {
        let f = FieldSpec::new(5).unwrap();
        let fs: Vec<CycScalar> = (0..5).map(|k| f.int(k + 2)).collect();
        let reflected = |i: usize, m: usize| {
            let mut acc = f.one();
            for k in i..i + m {
                acc = acc * &fs[(5 - k as i64).rem_euclid(5) as usize];
            }
            acc
        };
        assert_ne!(reflected(1, 1), base_case_product(&fs, 1, 1));
    }

    #[test]
    fn reduction_matches_direct() {
        let f = FieldSpec::new(3).unwrap();
        let r = semi(3, 2);
        for s in ["E F", "F E", "E^2 F^2", "E F^2 E", "F E^2 F", "E F E F", "E^2 F^4 E^2", "F^2 E F E^2"] {
            let w = Word::parse(s).unwrap();
            let direct = eval_word(&w, &r).unwrap().into_matrix();
            let red = eval_reduced(&reduce_balanced(&w, &f).unwrap(), &r).unwrap();
            assert_eq!(direct, red, "{s}");
        }
        assert!(reduce_balanced(&Word::parse("E").unwrap(), &f).is_err());
    }

    #[test]
    fn random_words_are_reproducible() {
        let a = random_balanced_words(5, 20, 7);
        assert_eq!(a, random_balanced_words(5, 20, 7));
        for w in &a {
            assert!(w.is_balanced() && !w.is_empty());
            assert!(w.degree(Letter::E) <= 8);
        }
    }

    #[test]
    fn antipode_and_counit() {
        assert_eq!(antipode_counit("K").unwrap().0.to_string(), "K^-1");
        assert_eq!(antipode_counit("E").unwrap(), (Monomial { sign: -1, factors: vec![HopfGen::E, HopfGen::KInv] }, 0));
        assert_eq!(antipode_counit("F").unwrap().0.to_string(), "-K F");
        assert_eq!(antipode(&antipode(&Monomial::gen(HopfGen::K))), Monomial::gen(HopfGen::K));
        assert!(antipode_counit("X").is_err());
        // m (S (x) id) Delta(x) = eps(x) 1 with Delta(E) = E(x)K + 1(x)E, Delta(F) = F(x)1 + K^-1(x)F
        let r = semi(3, 0);
        let s = |g| antipode(&Monomial::gen(g)).eval(&r);
        let e_side = s(HopfGen::E).mul(r.k()).add(r.e());
        let f_side = s(HopfGen::F).add(&r.k().mul(r.f()));
        assert!(e_side.is_zero() && f_side.is_zero());
        let k_side = s(HopfGen::K).mul(r.k());
        assert!(k_side.is_identity());
    }
}
