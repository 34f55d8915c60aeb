//! The R-matrix `R = q^{H(x)H/2} sum_l c_l E^l (x) F^l` in a representation, the braiding
//! `R_check = flip . R`, the coproduct, and the quasitriangularity checks.
//!
//! Tensor basis: `v_j (x) v_k` has index `j * N + k`; on three factors
//! `v_j (x) v_k (x) v_l` has index `(j * N + k) * N + l`.

use std::fmt;

use serde_json::{json, Value};

use crate::cyclo::{CycScalar, FieldSpec};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SparseVec};
use crate::qcalc::{f_coeff, q_minus_qinv, qint, QSign};
use crate::reps::Rep;

/// Strand orientation. Downward strands carry `V`, upward strands carry `V*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Down,
    Up,
}

impl Orientation {
    pub fn symbol(self) -> char {
        match self {
            Orientation::Down => 'd',
            Orientation::Up => 'u',
        }
    }
}

/// A square operator on `V^{(x) m}` tagged with per-strand orientations.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    arity: usize,
    matrix: Matrix,
    signature: Vec<Orientation>,
}

impl Operator {
    pub fn new(matrix: Matrix, signature: Vec<Orientation>, dim: usize) -> Result<Self> {
        let arity = signature.len();
        let size = dim.pow(arity as u32);
        if matrix.rows() != size || matrix.cols() != size {
            return Err(Error::Dimension(format!(
                "operator on {arity} strands of dimension {dim} must be {size}x{size}"
            )));
        }
        Ok(Operator { arity, matrix, signature })
    }

    /// An operator on `arity` downward strands.
    pub fn on_v(matrix: Matrix, arity: usize, dim: usize) -> Result<Self> {
        Self::new(matrix, vec![Orientation::Down; arity], dim)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn signature(&self) -> &[Orientation] {
        &self.signature
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.signature != other.signature {
            return Err(Error::Dimension("composing operators with different signatures".into()));
        }
        Ok(Operator {
            arity: self.arity,
            matrix: self.matrix.try_mul(&other.matrix)?,
            signature: self.signature.clone(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator(arity={}, {:?})", self.arity, self.matrix)
    }
}

/// Generators of `U_q(sl_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E, Generator::F, Generator::K, Generator::KInv];

    pub fn parse(s: &str) -> Result<Generator> {
        match s.trim() {
            "E" => Ok(Generator::E),
            "F" => Ok(Generator::F),
            "K" => Ok(Generator::K),
            "K^-1" | "Kinv" | "K-1" => Ok(Generator::KInv),
            other => Err(Error::Parameter(format!("unknown generator {other:?}"))),
        }
    }

    pub fn matrix(self, rep: &Rep) -> &Matrix {
        match self {
            Generator::E => rep.e(),
            Generator::F => rep.f(),
            Generator::K => rep.k(),
            Generator::KInv => rep.kinv(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::K => "K",
            Generator::KInv => "K^-1",
        };
        f.write_str(s)
    }
}

fn half_even(x: i64) -> Result<i64> {
    if x % 2 != 0 {
        return Err(Error::Invariant(format!("odd weight product {x}")));
    }
    Ok(x / 2)
}

/// Diagonal operator `v_j (x) v_k -> q^{h_j h_k / 2} v_j (x) v_k` for the given weights.
pub fn cartan_from_weights(field: &FieldSpec, weights: &[i64], sign: i64) -> Result<Matrix> {
    let mut entries = Vec::with_capacity(weights.len() * weights.len());
    for &hj in weights {
        for &hk in weights {
            entries.push(field.q_pow(sign * half_even(hj * hk)?));
        }
    }
    Ok(Matrix::diagonal(field, entries))
}

/// `q^{H (x) H / 2}`.
pub fn cartan(rep: &Rep) -> Result<Operator> {
    let m = cartan_from_weights(rep.field(), rep.weights(), 1)?;
    Operator::on_v(m, 2, rep.dim())
}

/// `q^{-H (x) H / 2}`.
pub fn cartan_inverse(rep: &Rep) -> Result<Operator> {
    let m = cartan_from_weights(rep.field(), rep.weights(), -1)?;
    Operator::on_v(m, 2, rep.dim())
}

/// `sum_{l=0}^{N-1} coeffs[l] E^l (x) F^l`.
fn ef_sum(rep: &Rep, coeffs: &[CycScalar]) -> Matrix {
    let n = rep.dim();
    let field = rep.field();
    let mut acc = Matrix::zeros(field, n * n, n * n);
    let mut el = Matrix::identity(field, n);
    let mut fl = Matrix::identity(field, n);
    for c in coeffs {
        acc = acc.add(&el.kron(&fl).scale(c));
        el = el.mul(rep.e());
        fl = fl.mul(rep.f());
    }
    acc
}

/// `c_l = f_q(l)` (or `f_{q^-1}(l)`) for `l = 0..N`.
pub fn r_coefficients(field: &FieldSpec, sign: QSign) -> Vec<CycScalar> {
    (0..field.n() as i64)
        .map(|l| f_coeff(field, l, sign).expect("l < N"))
        .collect()
}

/// `c_0 = 1`, `c_m = (q - q^-1)/[m] * q^{m-1} * c_{m-1}`.
pub fn r_coefficients_recursive(field: &FieldSpec) -> Vec<CycScalar> {
    let mut out = vec![field.one()];
    for m in 1..field.n() as i64 {
        let step = q_minus_qinv(field) * qint(field, m).invert().expect("[m] is a unit for m < N");
        let next = step * field.q_pow(m - 1) * &out[m as usize - 1];
        out.push(next);
    }
    out
}

/// `q^{H(x)H/2} sum_l coeffs[l] E^l (x) F^l`.
pub fn r_matrix_with(rep: &Rep, coeffs: &[CycScalar]) -> Result<Operator> {
    let c = cartan(rep)?;
    Operator::on_v(c.matrix().mul(&ef_sum(rep, coeffs)), 2, rep.dim())
}

pub fn r_matrix(rep: &Rep) -> Result<Operator> {
    r_matrix_with(rep, &r_coefficients(rep.field(), QSign::Plus))
}

/// Exact inverse of `R` by Gauss-Jordan elimination.
pub fn r_inverse(rep: &Rep) -> Result<Operator> {
    let r = r_matrix(rep)?;
    let inv = r.matrix().inverse().map_err(|e| Error::Invariant(format!("R is not invertible: {e}")))?;
    Operator::on_v(inv, 2, rep.dim())
}

/// `(sum_l f_{q^-1}(l) E^l (x) F^l) . q^{-H(x)H/2}`.
pub fn r_inverse_series(rep: &Rep) -> Result<Operator> {
    let series = ef_sum(rep, &r_coefficients(rep.field(), QSign::Minus));
    let ci = cartan_inverse(rep)?;
    Operator::on_v(series.mul(ci.matrix()), 2, rep.dim())
}

/// Flip `v_j (x) v_k -> v_k (x) v_j` on `V (x) V`.
pub fn flip(field: &FieldSpec, n: usize) -> Matrix {
    let perm: Vec<usize> = (0..n * n).map(|idx| (idx % n) * n + idx / n).collect();
    Matrix::permutation(field, &perm)
}

/// `R_check = flip . R`.
pub fn braid(rep: &Rep) -> Result<Operator> {
    let r = r_matrix(rep)?;
    Operator::on_v(flip(rep.field(), rep.dim()).mul(r.matrix()), 2, rep.dim())
}

/// `R_check^{-1} = R^{-1} . flip`, built from the series form of `R^{-1}` and
/// verified against `R_check` exactly.
pub fn braid_inverse(rep: &Rep) -> Result<Operator> {
    let rinv = r_inverse_series(rep)?;
    let m = rinv.matrix().mul(&flip(rep.field(), rep.dim()));
    let b = braid(rep)?;
    if !b.matrix().mul(&m).is_identity() {
        return Err(Error::Invariant("series inverse of R_check is not an inverse".into()));
    }
    Operator::on_v(m, 2, rep.dim())
}

/// Places a two-strand operator on strands `(s, t)` of three, `s != t`, by explicit
/// index bookkeeping: the operator's first tensor factor acts on strand `s`.
pub fn embed_in_three(op: &Matrix, n: usize, s: usize, t: usize) -> Matrix {
    assert!(s < 3 && t < 3 && s != t);
    let spare = 3 - s - t;
    let field = op.field();
    let mut out = Matrix::zeros(field, n * n * n, n * n * n);
    let index = |digits: [usize; 3]| (digits[0] * n + digits[1]) * n + digits[2];
    for (row, col, x) in op.entries() {
        let (rs, rt) = (row / n, row % n);
        let (cs, ct) = (col / n, col % n);
        for u in 0..n {
            let mut r = [0; 3];
            let mut c = [0; 3];
            r[s] = rs;
            r[t] = rt;
            r[spare] = u;
            c[s] = cs;
            c[t] = ct;
            c[spare] = u;
            out.set(index(r), index(c), x.clone());
        }
    }
    out
}

/// Permutation `P(x (x) y (x) z) = y (x) x (x) z`, `P` on strands chosen by `(s, t)`.
pub fn swap_in_three(field: &FieldSpec, n: usize, s: usize, t: usize) -> Matrix {
    embed_in_three(&flip(field, n), n, s, t)
}

/// `Delta(Z)` in `rep (x) rep`: `Delta(E) = E(x)K + 1(x)E`, `Delta(F) = F(x)1 + K^-1(x)F`,
/// `Delta(K^{+-1}) = K^{+-1} (x) K^{+-1}`.
pub fn coproduct(rep: &Rep, gen: Generator) -> Matrix {
    let id = Matrix::identity(rep.field(), rep.dim());
    match gen {
        Generator::E => rep.e().kron(rep.k()).add(&id.kron(rep.e())),
        Generator::F => rep.f().kron(&id).add(&rep.kinv().kron(rep.f())),
        Generator::K => rep.k().kron(rep.k()),
        Generator::KInv => rep.kinv().kron(rep.kinv()),
    }
}

/// `Delta'(Z) = flip . Delta(Z) . flip`.
pub fn flipped_coproduct(rep: &Rep, gen: Generator) -> Matrix {
    let p = flip(rep.field(), rep.dim());
    p.mul(&coproduct(rep, gen)).mul(&p)
}

/// Coproduct from a generator name, rejecting unknown symbols.
pub fn coproduct_named(rep: &Rep, gen: &str) -> Result<Matrix> {
    Ok(coproduct(rep, Generator::parse(gen)?))
}

/// A basis tensor and its nonzero image, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub basis: Vec<usize>,
    pub image: Vec<(Vec<usize>, CycScalar)>,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis,
            "image": self.image.iter().map(|(idx, x)| json!({"index": idx, "value": x.to_json()})).collect::<Vec<_>>(),
        })
    }
}

fn digits(mut idx: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for d in (0..len).rev() {
        out[d] = idx % n;
        idx /= n;
    }
    out
}

fn undigits(ds: &[usize], n: usize) -> usize {
    ds.iter().fold(0, |acc, d| acc * n + d)
}

fn witness_for(m: &Matrix, n: usize, len: usize, basis: &[usize]) -> Witness {
    let mut v = SparseVec::new();
    v.insert(undigits(basis, n), m.field().one());
    let image = m
        .apply(&v)
        .into_iter()
        .map(|(i, x)| (digits(i, n, len), x))
        .collect();
    Witness { basis: basis.to_vec(), image }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
    /// Whether the identity is supposed to hold in this representation.
    pub expected: bool,
    pub witness: Option<Witness>,
}

impl IdentityCheck {
    fn new(identity: impl Into<String>, holds: bool, expected: bool) -> Self {
        IdentityCheck { identity: identity.into(), holds, expected, witness: None }
    }

    /// True when the observed outcome matches the expected one.
    pub fn as_expected(&self) -> bool {
        self.holds == self.expected
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "holds": self.holds,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

/// `R Delta(Z) = Delta'(Z) R` for `Z` in `E, F, K, K^-1`.
pub fn check_intertwiner(rep: &Rep) -> Result<Vec<IdentityCheck>> {
    check_intertwiner_with(rep, &r_matrix(rep)?)
}

/// Intertwiner check against an arbitrary candidate R (e.g. with corrupted coefficients).
pub fn check_intertwiner_with(rep: &Rep, r: &Operator) -> Result<Vec<IdentityCheck>> {
    let r = r.matrix();
    Ok(Generator::ALL
        .iter()
        .map(|&g| {
            let residual = r.mul(&coproduct(rep, g)).sub(&flipped_coproduct(rep, g).mul(r));
            IdentityCheck::new(format!("R Delta({g}) R^-1 = Delta'({g})"), residual.is_zero(), true)
        })
        .collect())
}

/// `(Delta (x) Id)(R)` on `V^{(x)3}`: `q^{(h_j + h_k) h_l / 2} sum_l c_l Delta(E)^l (x) F^l`.
pub fn delta_id_r(rep: &Rep) -> Result<Matrix> {
    let field = rep.field();
    let n = rep.dim();
    let h = rep.weights();
    let coeffs = r_coefficients(field, QSign::Plus);
    let de = coproduct(rep, Generator::E);
    let mut acc = Matrix::zeros(field, n * n * n, n * n * n);
    let mut del = Matrix::identity(field, n * n);
    let mut fl = Matrix::identity(field, n);
    for c in &coeffs {
        acc = acc.add(&del.kron(&fl).scale(c));
        del = del.mul(&de);
        fl = fl.mul(rep.f());
    }
    let mut diag = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                diag.push(field.q_pow(half_even((h[j] + h[k]) * h[l])?));
            }
        }
    }
    Ok(Matrix::diagonal(field, diag).mul(&acc))
}

/// `(Id (x) Delta)(R)` on `V^{(x)3}`: `q^{h_j (h_k + h_l) / 2} sum_l c_l E^l (x) Delta(F)^l`.
pub fn id_delta_r(rep: &Rep) -> Result<Matrix> {
    let field = rep.field();
    let n = rep.dim();
    let h = rep.weights();
    let coeffs = r_coefficients(field, QSign::Plus);
    let df = coproduct(rep, Generator::F);
    let mut acc = Matrix::zeros(field, n * n * n, n * n * n);
    let mut el = Matrix::identity(field, n);
    let mut dfl = Matrix::identity(field, n * n);
    for c in &coeffs {
        acc = acc.add(&el.kron(&dfl).scale(c));
        el = el.mul(rep.e());
        dfl = dfl.mul(&df);
    }
    let mut diag = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                diag.push(field.q_pow(half_even(h[j] * (h[k] + h[l]))?));
            }
        }
    }
    Ok(Matrix::diagonal(field, diag).mul(&acc))
}

#[derive(Debug, Clone)]
pub struct FusionReport {
    /// `(Delta (x) Id)(R) = R_13 R_23`; holds in every representation considered.
    pub left: IdentityCheck,
    /// `(Id (x) Delta)(R) = R_13 R_12`; fails in semicyclic representations.
    pub right: IdentityCheck,
    /// Image of `v_0 (x) v_{i+1} (x) v_{i+1}` under the right-hand residual.
    pub stated_witness: Witness,
    /// Image of `v_0 (x) v_{i-1} (x) v_{i-1}`, on which every `F^{N-m} (x) F^m` term is nonzero.
    pub lowered_witness: Witness,
    /// The first basis tensor (in index order) with nonzero image under the right-hand
    /// residual, if the residual is nonzero.
    pub found_witness: Option<Witness>,
    pub right_residual_nnz: usize,
}

/// Checks both coproduct/R identities; the second is expected to fail exactly when `E^N != 0`.
pub fn check_fusion(rep: &Rep) -> Result<FusionReport> {
    let n = rep.dim();
    let r = r_matrix(rep)?;
    let r12 = embed_in_three(r.matrix(), n, 0, 1);
    let r13 = embed_in_three(r.matrix(), n, 0, 2);
    let r23 = embed_in_three(r.matrix(), n, 1, 2);
    let left_res = delta_id_r(rep)?.sub(&r13.mul(&r23));
    let right_res = id_delta_r(rep)?.sub(&r13.mul(&r12));
    let semicyclic = !rep.e().pow(n as u32).is_zero();
    let left = IdentityCheck::new("(Delta x Id)(R) = R13 R23", left_res.is_zero(), true);
    let mut right = IdentityCheck::new("(Id x Delta)(R) = R13 R12", right_res.is_zero(), !semicyclic);
    let i = rep.index().unwrap_or(0);
    let stated_basis = [0, (i + 1) % n, (i + 1) % n];
    let stated_witness = witness_for(&right_res, n, 3, &stated_basis);
    let lowered_witness = witness_for(&right_res, n, 3, &[0, (i + n - 1) % n, (i + n - 1) % n]);
    let found_witness = (0..n * n * n)
        .map(|idx| digits(idx, n, 3))
        .map(|b| witness_for(&right_res, n, 3, &b))
        .find(|w| !w.image.is_empty());
    right.witness = found_witness.clone();
    Ok(FusionReport {
        left,
        right,
        stated_witness,
        lowered_witness,
        found_witness,
        right_residual_nnz: right_res.nnz(),
    })
}

/// The `R_12 R_13 R_23` and `R_23 R_13 R_12` products.
pub fn ybe_sides(rep: &Rep) -> Result<(Matrix, Matrix)> {
    let n = rep.dim();
    let r = r_matrix(rep)?;
    let r12 = embed_in_three(r.matrix(), n, 0, 1);
    let r13 = embed_in_three(r.matrix(), n, 0, 2);
    let r23 = embed_in_three(r.matrix(), n, 1, 2);
    Ok((r12.mul(&r13).mul(&r23), r23.mul(&r13).mul(&r12)))
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` exactly on `V^{(x)3}`.
pub fn check_ybe(rep: &Rep) -> Result<bool> {
    let (lhs, rhs) = ybe_sides(rep)?;
    Ok(lhs == rhs)
}

/// `R_check_12 R_check_23 R_check_12 = R_check_23 R_check_12 R_check_23`.
pub fn check_braid_relation(rep: &Rep) -> Result<bool> {
    let n = rep.dim();
    let b = braid(rep)?;
    let b12 = embed_in_three(b.matrix(), n, 0, 1);
    let b23 = embed_in_three(b.matrix(), n, 1, 2);
    Ok(b12.mul(&b23).mul(&b12) == b23.mul(&b12).mul(&b23))
}

/// `(Delta (x) Id)(q^{H(x)H/2}) = q^{Delta(H)(x)H/2}` and its mirror, at weight level.
///
/// Left sides are products of embedded Cartan factors; right sides are diagonals with
/// `Delta(H)` acting by `h_j + h_k`.
pub fn check_coproduct_cartan_weights(field: &FieldSpec, weights: &[i64]) -> Result<bool> {
    let n = weights.len();
    let c = cartan_from_weights(field, weights, 1)?;
    let c12 = embed_in_three(&c, n, 0, 1);
    let c13 = embed_in_three(&c, n, 0, 2);
    let c23 = embed_in_three(&c, n, 1, 2);
    let mut left_diag = vec![];
    let mut right_diag = vec![];
    for &hj in weights {
        for &hk in weights {
            for &hl in weights {
                left_diag.push(field.q_pow(half_even((hj + hk) * hl)?));
                right_diag.push(field.q_pow(half_even(hj * (hk + hl))?));
            }
        }
    }
    let left = Matrix::diagonal(field, left_diag) == c13.mul(&c23);
    let right = Matrix::diagonal(field, right_diag) == c13.mul(&c12);
    Ok(left && right)
}

pub fn check_coproduct_cartan(rep: &Rep) -> Result<bool> {
    check_coproduct_cartan_weights(rep.field(), rep.weights())
}
