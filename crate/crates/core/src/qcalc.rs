//! Quantum integers, factorials, binomials and the braiding coefficients `f_q`, `f_{q^-1}`.

use crate::cyclo::{elem_scalar, scalar_elem, CycScalar, FieldSpec};
use crate::error::{Error, Result};

/// Selects `q` (`Plus`) or `q^-1` (`Minus`) as the base of a q-expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QSign {
    Plus,
    Minus,
}

impl QSign {
    /// `+1` or `-1`, the exponent applied to `q`.
    pub fn exponent(self) -> i64 {
        match self {
            QSign::Plus => 1,
            QSign::Minus => -1,
        }
    }

    pub fn flip(self) -> QSign {
        match self {
            QSign::Plus => QSign::Minus,
            QSign::Minus => QSign::Plus,
        }
    }
}

/// `[l] = (q^l - q^-l) / (q - q^-1)`, expanded as `q^(l-1) + q^(l-3) + ... + q^(1-l)`.
pub fn qint(field: &FieldSpec, l: i64) -> CycScalar {
    if l < 0 {
        return -qint(field, -l);
    }
    let mut acc = field.zero();
    for j in 0..l {
        acc += &field.q_pow(l - 1 - 2 * j);
    }
    acc
}

/// `q - q^-1`.
pub fn q_minus_qinv(field: &FieldSpec) -> CycScalar {
    field.q_pow(1) - field.q_pow(-1)
}

fn factorial_tables(field: &FieldSpec) -> &(Vec<crate::cyclo::FieldElem>, Vec<crate::cyclo::FieldElem>) {
    field.factorial_cache().get_or_init(|| {
        let n = field.n() as i64;
        let mut fact = vec![];
        let mut inv = vec![];
        let mut cur = field.one();
        for k in 0..n {
            if k > 0 {
                cur = &cur * &qint(field, k);
            }
            let ci = cur.invert().expect("[k]! is a unit for k < N");
            fact.push(scalar_elem(&cur).unwrap());
            inv.push(scalar_elem(&ci).unwrap());
        }
        (fact, inv)
    })
}

/// `[n]!`. Any `n >= N` contains the factor `[N] = 0` and yields zero.
pub fn qfact(field: &FieldSpec, n: i64) -> Result<CycScalar> {
    if n < 0 {
        return Err(Error::Parameter(format!("quantum factorial of negative {n}")));
    }
    let (fact, _) = factorial_tables(field);
    Ok(match fact.get(n as usize) {
        Some(e) => elem_scalar(field, e.clone()),
        None => field.zero(),
    })
}

fn inv_qfact(field: &FieldSpec, n: i64) -> CycScalar {
    let (_, inv) = factorial_tables(field);
    elem_scalar(field, inv[n as usize].clone())
}

/// `[n]! / ([k]! [n-k]!)` for `0 <= k <= n <= N-1`.
pub fn qbinom(field: &FieldSpec, n: i64, k: i64) -> Result<CycScalar> {
    let top = field.n() as i64 - 1;
    if !(0 <= k && k <= n && n <= top) {
        return Err(Error::Parameter(format!(
            "quantum binomial needs 0 <= k <= n <= N-1 (got n={n}, k={k})"
        )));
    }
    Ok(qfact(field, n)? * inv_qfact(field, k) * inv_qfact(field, n - k))
}

/// `f_q(l) = (q - q^-1)^l / [l]! * q^(l(l-1)/2)`, or the same with `q -> q^-1`.
///
/// This is the coefficient `c_l` of `E^l (x) F^l` in the R-matrix.
pub fn f_coeff(field: &FieldSpec, l: i64, sign: QSign) -> Result<CycScalar> {
    let top = field.n() as i64 - 1;
    if !(0..=top).contains(&l) {
        return Err(Error::Parameter(format!("f_coeff needs 0 <= l <= N-1 (got {l})")));
    }
    let s = sign.exponent();
    debug_assert_eq!(l * (l - 1) % 2, 0);
    let base = field.q_pow(s) - field.q_pow(-s);
    Ok(base.pow(l as u32) * inv_qfact(field, l) * field.q_pow(s * l * (l - 1) / 2))
}

/// Quantum factorial inverse `1/[n]!` for `0 <= n <= N-1`.
pub fn qfact_inverse(field: &FieldSpec, n: i64) -> Result<CycScalar> {
    if !(0..field.n() as i64).contains(&n) {
        return Err(Error::Parameter(format!("1/[n]! needs 0 <= n <= N-1 (got {n})")));
    }
    Ok(inv_qfact(field, n))
}
