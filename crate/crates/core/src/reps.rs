//! The semicyclic representations `rho_{a,i}` and the standard representation `rho_0`.
//!
//! Basis vectors `v_0, ..., v_{N-1}` are indexed by residues mod `N`; column `k`
//! of each matrix is the image of `v_k`. `K` is diagonal with `K v_k = q^{h_k} v_k`
//! and only the integer weights `h_k` are stored, never `H` itself.

use serde_json::{json, Value};

use crate::cyclo::{CycScalar, FieldSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qcalc::{q_minus_qinv, qint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepKind {
    /// `E^N = a`, `F^N = 0`, `F v_i = 0`.
    Semicyclic { i: usize, a: CycScalar },
    /// Nilpotent `E` and `F`.
    Standard,
    /// Semicyclic `E` and `K` with `F v_k = f_k v_{k-1}` (`f_0 / a` on `v_0`).
    Generalized { i: usize, a: CycScalar, f: Vec<CycScalar> },
    /// Hand-assembled matrices, e.g. for negative controls.
    Custom,
}

#[derive(Debug, Clone)]
pub struct Rep {
    field: FieldSpec,
    kind: RepKind,
    e: Matrix,
    f: Matrix,
    k: Matrix,
    kinv: Matrix,
    weights: Vec<i64>,
}

fn rem(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

fn require_unit(a: &CycScalar) -> Result<()> {
    if a.as_monomial().is_some() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("a must be a unit c*a^k with c != 0 (got {a})")))
    }
}

fn k_matrices(field: &FieldSpec, weights: &[i64]) -> (Matrix, Matrix) {
    let k = Matrix::diagonal(field, weights.iter().map(|&h| field.q_pow(h)));
    let kinv = Matrix::diagonal(field, weights.iter().map(|&h| field.q_pow(-h)));
    (k, kinv)
}

/// Cyclic shift `v_k -> v_{k+1}`, `v_{N-1} -> wrap * v_0`.
fn shift_e(field: &FieldSpec, wrap: Option<&CycScalar>) -> Matrix {
    let n = field.n() as usize;
    let mut e = Matrix::zeros(field, n, n);
    for k in 0..n - 1 {
        e.set(k + 1, k, field.one());
    }
    if let Some(a) = wrap {
        e.set(0, n - 1, a.clone());
    }
    e
}

/// `h_k = 1 - N + 2(k - i)`.
pub fn semicyclic_weights(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| 1 - n as i64 + 2 * (k as i64 - i as i64)).collect()
}

/// The index `(N+1)/2` used by default for functor computations; there `K v_k = q^{2k} v_k`.
pub fn default_index(n: u32) -> usize {
    (n as usize + 1) / 2
}

/// `F` of `rho_{a,i}` from the product formula `[k][N-k]`.
fn semicyclic_f(field: &FieldSpec, a: &CycScalar, i: usize) -> Result<Matrix> {
    let n = field.n() as usize;
    let ainv = a.invert()?;
    let mut f = Matrix::zeros(field, n, n);
    for m in 0..n {
        let k = rem(m as i64 - i as i64, n) as i64;
        let mut c = qint(field, k) * qint(field, n as i64 - k);
        if m == 0 {
            c = c * &ainv;
        }
        f.set(rem(m as i64 - 1, n), m, c);
    }
    Ok(f)
}

/// `F` of `rho_{a,i}` from the summation formula `sum_{j=0}^{(k-1) mod N} -[2(k-j)+N-1]`.
///
/// Agrees with the product formula; kept as an independent construction.
pub fn semicyclic_f_sum_form(field: &FieldSpec, a: &CycScalar, i: usize) -> Result<Matrix> {
    require_unit(a)?;
    let n = field.n() as usize;
    let ainv = a.invert()?;
    let mut f = Matrix::zeros(field, n, n);
    for m in 0..n {
        let k = rem(m as i64 - i as i64, n) as i64;
        let upper = rem(k - 1, n) as i64;
        let mut c = field.zero();
        for j in 0..=upper {
            c -= &qint(field, 2 * (k - j) + n as i64 - 1);
        }
        if m == 0 {
            c = c * &ainv;
        }
        f.set(rem(m as i64 - 1, n), m, c);
    }
    Ok(f)
}

impl Rep {
    /// `rho_{a,i}`: `K v_k = q^{1-N+2(k-i)} v_k`, `E v_k = v_{k+1}`, `E v_{N-1} = a v_0`,
    /// `F v_{i+k} = [k][N-k] v_{i+k-1}` with an extra `1/a` on `v_0`.
    pub fn semicyclic(field: &FieldSpec, a: &CycScalar, i: i64) -> Result<Rep> {
        require_unit(a)?;
        let n = field.n() as usize;
        let i = rem(i, n);
        let weights = semicyclic_weights(n, i);
        let (k, kinv) = k_matrices(field, &weights);
        Ok(Rep {
            field: field.clone(),
            kind: RepKind::Semicyclic { i, a: a.clone() },
            e: shift_e(field, Some(a)),
            f: semicyclic_f(field, a, i)?,
            k,
            kinv,
            weights,
        })
    }

    /// `rho_0`: as `rho_{a,0}` but with `E v_{N-1} = 0`.
    pub fn standard(field: &FieldSpec) -> Rep {
        let n = field.n() as usize;
        let weights = semicyclic_weights(n, 0);
        let (k, kinv) = k_matrices(field, &weights);
        let one = field.one();
        let mut f = semicyclic_f(field, &one, 0).expect("1 is a unit");
        f.set(n - 1, 0, field.zero());
        Rep {
            field: field.clone(),
            kind: RepKind::Standard,
            e: shift_e(field, None),
            f,
            k,
            kinv,
            weights,
        }
    }

    /// Semicyclic `E`, `K` (index `i`) with a free `F`: `F v_k = f_k v_{k-1}`, `F v_0 = (f_0/a) v_{N-1}`.
    pub fn generalized(field: &FieldSpec, a: &CycScalar, i: i64, fs: &[CycScalar]) -> Result<Rep> {
        require_unit(a)?;
        let n = field.n() as usize;
        if fs.len() != n {
            return Err(Error::Parameter(format!("need {n} values f_0..f_(N-1), got {}", fs.len())));
        }
        let i = rem(i, n);
        let weights = semicyclic_weights(n, i);
        let (k, kinv) = k_matrices(field, &weights);
        let ainv = a.invert()?;
        let mut f = Matrix::zeros(field, n, n);
        for (m, c) in fs.iter().enumerate() {
            let c = if m == 0 { c * &ainv } else { c.clone() };
            f.set(rem(m as i64 - 1, n), m, c);
        }
        Ok(Rep {
            field: field.clone(),
            kind: RepKind::Generalized { i, a: a.clone(), f: fs.to_vec() },
            e: shift_e(field, Some(a)),
            f,
            k,
            kinv,
            weights,
        })
    }

    /// Assembles a representation from explicit matrices. `K` is rebuilt from the weights.
    pub fn custom(field: &FieldSpec, e: Matrix, f: Matrix, weights: Vec<i64>) -> Result<Rep> {
        let n = weights.len();
        for (name, m) in [("E", &e), ("F", &f)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!("{name} must be {n}x{n}")));
            }
        }
        let (k, kinv) = k_matrices(field, &weights);
        Ok(Rep { field: field.clone(), kind: RepKind::Custom, e, f, k, kinv, weights })
    }

    /// Same representation with `F` replaced; used to build negative controls.
    pub fn with_f(&self, f: Matrix) -> Rep {
        Rep { f, kind: RepKind::Custom, ..self.clone() }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn is_semicyclic(&self) -> bool {
        matches!(self.kind, RepKind::Semicyclic { .. })
    }

    /// The semicyclic index `i`, if any.
    pub fn index(&self) -> Option<usize> {
        match &self.kind {
            RepKind::Semicyclic { i, .. } | RepKind::Generalized { i, .. } => Some(*i),
            _ => None,
        }
    }

    pub fn a(&self) -> Option<&CycScalar> {
        match &self.kind {
            RepKind::Semicyclic { a, .. } | RepKind::Generalized { a, .. } => Some(a),
            _ => None,
        }
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn k(&self) -> &Matrix {
        &self.k
    }

    pub fn kinv(&self) -> &Matrix {
        &self.kinv
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// `E^{-1} = a^{-1} E^{N-1}`; only semicyclic `E` is invertible.
    pub fn e_inverse(&self) -> Result<Matrix> {
        match &self.kind {
            RepKind::Semicyclic { a, .. } | RepKind::Generalized { a, .. } => {
                Ok(self.e.pow(self.dim() as u32 - 1).scale(&a.invert()?))
            }
            _ => Err(Error::Parameter("E is not invertible in this representation".into())),
        }
    }

    /// Header plus row-major serialized entries of `E`, `F`, `K`, `K^-1`.
    pub fn dump(&self) -> Value {
        let (kind, i, a) = match &self.kind {
            RepKind::Semicyclic { i, a } => ("semicyclic", json!(i), a.to_json()),
            RepKind::Generalized { i, a, .. } => ("generalized", json!(i), a.to_json()),
            RepKind::Standard => ("standard", Value::Null, Value::Null),
            RepKind::Custom => ("custom", Value::Null, Value::Null),
        };
        let flat = |m: &Matrix| -> Value {
            let n = m.rows();
            Value::Array(
                (0..n)
                    .flat_map(|r| (0..n).map(move |c| (r, c)))
                    .map(|(r, c)| m.get(r, c).to_json())
                    .collect(),
            )
        };
        json!({
            "n": self.dim(),
            "kind": kind,
            "i": i,
            "a": a,
            "E": flat(&self.e),
            "F": flat(&self.f),
            "K": flat(&self.k),
            "Kinv": flat(&self.kinv),
        })
    }
}

/// Outcome of checking one defining identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Number of nonzero entries in the residual matrix.
    pub residual_nnz: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn residual_check(name: &str, lhs: &Matrix, rhs: &Matrix) -> RelationCheck {
    let r = lhs.sub(rhs);
    RelationCheck { name: name.to_string(), holds: r.is_zero(), residual_nnz: r.nnz() }
}

/// Checks `KE = q^2 EK`, `KF = q^-2 FK`, `EF - FE = (K - K^-1)/(q - q^-1)`, `K K^-1 = 1`
/// and the power conditions on `E^N`, `F^N`, `K^N` appropriate for the kind.
pub fn check_relations(rep: &Rep) -> RelationReport {
    let field = rep.field();
    let n = rep.dim();
    let (e, f, k, kinv) = (rep.e(), rep.f(), rep.k(), rep.kinv());
    let id = Matrix::identity(field, n);
    let zero = Matrix::zeros(field, n, n);
    let denom = q_minus_qinv(field).invert().expect("q - q^-1 is a unit");
    let mut checks = vec![
        residual_check("KE = q^2 EK", &k.mul(e), &e.mul(k).scale(&field.q_pow(2))),
        residual_check("KF = q^-2 FK", &k.mul(f), &f.mul(k).scale(&field.q_pow(-2))),
        residual_check(
            "EF - FE = (K - K^-1)/(q - q^-1)",
            &e.mul(f).sub(&f.mul(e)),
            &k.sub(kinv).scale(&denom),
        ),
        residual_check("K K^-1 = Id", &k.mul(kinv), &id),
    ];
    let en = e.pow(n as u32);
    match rep.kind() {
        RepKind::Semicyclic { a, .. } | RepKind::Generalized { a, .. } => {
            checks.push(residual_check("E^N = a Id", &en, &id.scale(a)));
        }
        _ => checks.push(residual_check("E^N = 0", &en, &zero)),
    }
    checks.push(residual_check("F^N = 0", &f.pow(n as u32), &zero));
    checks.push(residual_check("K^N = Id", &k.pow(n as u32), &id));
    RelationReport { checks }
}

/// Coefficient of `F` on `v_j` (mapped to `v_{j-1}`), with the `1/a` on `v_0` removed.
fn f_coefficient_a_stripped(f: &Matrix, a: &CycScalar, j: usize) -> CycScalar {
    let n = f.rows();
    let c = f.get(rem(j as i64 - 1, n), j);
    if j == 0 {
        c * a
    } else {
        c
    }
}

/// Checks the index-shift relations between `rho_{a,i}` and `rho_{a,i+k}`:
/// `F` on `v_j` matches `F` on `v_{j+k}`, `K` on `v_j` matches `K` on `v_{j+k}`,
/// and the two `E` agree.
///
/// The `1/a` factor of `F` stays attached to `v_0` in both representations, so `F`
/// coefficients are compared with it removed.
pub fn shift_relations(rep_a: &Rep, rep_b: &Rep, k: i64) -> Result<bool> {
    let (RepKind::Semicyclic { i: ia, a: aa }, RepKind::Semicyclic { i: ib, a: ab }) =
        (rep_a.kind(), rep_b.kind())
    else {
        return Err(Error::Parameter("shift relations need two semicyclic representations".into()));
    };
    if rep_a.field() != rep_b.field() {
        return Err(Error::FieldMismatch(rep_a.field().n(), rep_b.field().n()));
    }
    if aa != ab {
        return Err(Error::Parameter(format!("different a: {aa} vs {ab}")));
    }
    let n = rep_a.dim();
    if rem(*ia as i64 + k, n) != *ib {
        return Err(Error::Parameter(format!("indices {ia} and {ib} do not differ by {k}")));
    }
    let ok = (0..n).all(|j| {
        let jk = rem(j as i64 + k, n);
        f_coefficient_a_stripped(rep_a.f(), aa, j) == f_coefficient_a_stripped(rep_b.f(), ab, jk)
            && rep_a.k().get(j, j) == rep_b.k().get(jk, jk)
    }) && rep_a.e() == rep_b.e();
    Ok(ok)
}

/// Checks `E^j F E^-j = rho_{a,i+j}(F)` and `E^j K E^-j = rho_{a,i+j}(K)`,
/// with `E^-j = a^-1 E^{N-j}`.
pub fn conjugation_iso(rep: &Rep, j: i64) -> Result<bool> {
    let RepKind::Semicyclic { i, a } = rep.kind() else {
        return Err(Error::Parameter("conjugation needs a semicyclic representation".into()));
    };
    let n = rep.dim();
    let j = rem(j, n);
    let ej = rep.e().pow(j as u32);
    let ej_inv = rep.e_inverse()?.pow(j as u32);
    let target = Rep::semicyclic(rep.field(), a, (*i + j) as i64)?;
    let f_conj = ej.mul(rep.f()).mul(&ej_inv);
    let k_conj = ej.mul(rep.k()).mul(&ej_inv);
    Ok(&f_conj == target.f() && &k_conj == target.k())
}

/// Parses an `a` value: `sym`/`a` (symbolic), an integer or `p/q`, `q` or `q^k`.
pub fn parse_a(field: &FieldSpec, s: &str) -> Result<CycScalar> {
    let s = s.trim();
    let bad = || Error::Parameter(format!("cannot parse a value {s:?}: expected sym, p/q, or q^k"));
    let v = match s {
        "sym" | "a" => field.a_pow(1),
        "q" => field.q_pow(1),
        _ if s.starts_with("q^") => {
            let k: i64 = s[2..].trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
            field.q_pow(k)
        }
        _ => {
            let r = crate::cyclo::parse_rational(s).map_err(|_| bad())?;
            field.from_rational_poly(&[r])
        }
    };
    if v.is_zero() {
        return Err(Error::Parameter("a must be nonzero".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    #[test]
    fn semicyclic_action() {
        let field = FieldSpec::new(5).unwrap();
        let a = field.a_pow(1);
        let r = Rep::semicyclic(&field, &a, 0).unwrap();
        assert_eq!(r.e().get(0, 4), a);
        for k in 0..5 {
            assert_eq!(r.k().get(k, k), field.q_pow(1 - 5 + 2 * k as i64));
        }
        for i in 0..5 {
            let r = Rep::semicyclic(&field, &a, i).unwrap();
            assert!(r.f().column(i as usize).is_empty(), "F v_i = 0");
        }
    }

    #[test]
    fn standard_action() {
        let field = FieldSpec::new(5).unwrap();
        let r = Rep::standard(&field);
        for k in 1..5 {
            assert_eq!(r.f().get(k - 1, k), qint(&field, k as i64) * qint(&field, 5 - k as i64));
        }
        assert!(r.e().pow(5).is_zero());
        assert_eq!(r.k().get(3, 3), field.q_pow(2));
    }

    #[test]
    fn relations_hold() {
        let field = f3();
        assert!(check_relations(&Rep::semicyclic(&field, &field.one(), 0).unwrap()).all_hold());
        assert!(check_relations(&Rep::standard(&FieldSpec::new(5).unwrap())).all_hold());
    }

    #[test]
    fn corrupted_f_is_flagged() {
        let field = f3();
        let r = Rep::semicyclic(&field, &field.one(), 0).unwrap();
        let mut f = r.f().clone();
        f.set(0, 1, f.get(0, 1) + field.one());
        let report = check_relations(&r.with_f(f));
        assert!(!report.get("EF - FE = (K - K^-1)/(q - q^-1)").unwrap().holds);
        assert!(report.get("KE = q^2 EK").unwrap().holds);
    }

    #[test]
    fn non_unit_a_rejected() {
        let field = f3();
        assert!(Rep::semicyclic(&field, &field.zero(), 0).is_err());
        assert!(Rep::semicyclic(&field, &(field.one() + field.a_pow(1)), 0).is_err());
    }

    #[test]
    fn shifts() {
        let field = f3();
        let a = field.a_pow(1);
        let r0 = Rep::semicyclic(&field, &a, 0).unwrap();
        let r1 = Rep::semicyclic(&field, &a, 1).unwrap();
        assert!(shift_relations(&r0, &r1, 1).unwrap());
        assert!(shift_relations(&r1, &r1, 0).unwrap());
        let other = Rep::semicyclic(&field, &field.int(2), 1).unwrap();
        assert!(shift_relations(&r0, &other, 1).is_err());
        assert!(shift_relations(&r0, &r1, 2).is_err());
    }

    #[test]
    fn conjugations() {
        let field = f3();
        let r = Rep::semicyclic(&field, &field.one(), 0).unwrap();
        assert!(conjugation_iso(&r, 1).unwrap());
        assert!(conjugation_iso(&r, 0).unwrap());
        let f5 = FieldSpec::new(5).unwrap();
        let r = Rep::semicyclic(&f5, &f5.q_pow(1), 2).unwrap();
        assert!(conjugation_iso(&r, 3).unwrap());
        assert!(conjugation_iso(&Rep::standard(&f5), 1).is_err());
    }

    #[test]
    fn a_values() {
        let field = f3();
        assert_eq!(parse_a(&field, "sym").unwrap(), field.a_pow(1));
        assert_eq!(parse_a(&field, "2").unwrap(), field.int(2));
        assert_eq!(parse_a(&field, "3/2").unwrap(), field.rational(3, 2));
        assert_eq!(parse_a(&field, "q^2").unwrap(), field.q_pow(2));
        assert!(parse_a(&field, "0").is_err());
        assert!(parse_a(&field, "zz").is_err());
    }
}
