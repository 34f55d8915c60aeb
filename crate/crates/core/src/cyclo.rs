//! Exact scalars in `Q(q)[a, a^-1]`, where `q = exp(i*pi/N)` is a primitive
//! `2N`-th root of unity (`N` odd) and `a` is a formal unit.
//!
//! A [`FieldElem`] is an element of the cyclotomic field `Q[x]/(Phi_2N(x))`,
//! stored in the power basis `1, q, ..., q^(phi-1)` over a common positive
//! denominator. A [`CycScalar`] is a Laurent polynomial in `a` with
//! `FieldElem` coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// The cyclotomic field `Q(q)` for a fixed odd `N >= 3`.
///
/// Cheap to clone; all clones share the same modulus and caches.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

struct FieldData {
    n: u32,
    phi: usize,
    /// Monic integer coefficients of `Phi_2N`, lowest degree first (`phi + 1` entries).
    modulus: Vec<BigInt>,
    /// `q^k` for `k = 0..2N`.
    qpow: Vec<FieldElem>,
    /// `([k]!, 1/[k]!)` for `k = 0..N`, filled on first use.
    factorials: OnceLock<(Vec<FieldElem>, Vec<FieldElem>)>,
}

impl FieldSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Parameter(format!("N must be odd and >= 3 (got {n})")));
        }
        let modulus: Vec<BigInt> = cyclotomic_poly(2 * n as usize)
            .into_iter()
            .map(BigInt::from)
            .collect();
        let phi = modulus.len() - 1;
        let mut data = FieldData {
            n,
            phi,
            modulus,
            qpow: vec![],
            factorials: OnceLock::new(),
        };
        let mut qpow = Vec::with_capacity(2 * n as usize);
        let mut cur = FieldElem::one(phi);
        for _ in 0..2 * n {
            qpow.push(cur.clone());
            cur = cur.shift(1, &data);
        }
        data.qpow = qpow;
        Ok(FieldSpec(Arc::new(data)))
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// Degree of the field over `Q`, i.e. Euler's totient of `2N`.
    pub fn phi(&self) -> usize {
        self.0.phi
    }

    /// Integer coefficients of `Phi_2N`, lowest degree first.
    pub fn modulus(&self) -> Vec<i64> {
        self.0.modulus.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    pub fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.n == other.0.n
    }

    pub fn zero(&self) -> CycScalar {
        CycScalar { field: self.clone(), terms: vec![] }
    }

    pub fn one(&self) -> CycScalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> CycScalar {
        self.rational(v, 1)
    }

    pub fn rational(&self, num: i64, den: i64) -> CycScalar {
        assert!(den != 0, "zero denominator");
        let mut coeffs = vec![BigInt::zero(); self.phi()];
        coeffs[0] = BigInt::from(num);
        let e = FieldElem::new(coeffs, BigInt::from(den));
        CycScalar::from_elem(self, 0, e)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> CycScalar {
        CycScalar::from_elem(self, 0, self.qpow_elem(k).clone())
    }

    /// The symbolic unit `a^k`.
    pub fn a_pow(&self, k: i32) -> CycScalar {
        CycScalar::from_elem(self, k, FieldElem::one(self.phi()))
    }

    pub(crate) fn qpow_elem(&self, k: i64) -> &FieldElem {
        let m = 2 * self.0.n as i64;
        &self.0.qpow[k.rem_euclid(m) as usize]
    }

    pub(crate) fn factorial_cache(&self) -> &OnceLock<(Vec<FieldElem>, Vec<FieldElem>)> {
        &self.0.factorials
    }

    /// Reduces an arbitrary rational polynomial in `q` (lowest degree first).
    pub fn from_rational_poly(&self, coeffs: &[BigRational]) -> CycScalar {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let e = FieldElem::from_poly(num, den, &self.0);
        CycScalar::from_elem(self, 0, e)
    }

    /// `Phi_2N(q)` evaluated inside the field; always zero.
    pub fn modulus_at_q(&self) -> CycScalar {
        let coeffs: Vec<BigRational> = self
            .0
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        self.from_rational_poly(&coeffs)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(N={}, phi={}, Phi_2N={:?})", self.n(), self.phi(), self.modulus())
    }
}

/// Convenience wrapper matching the `field_spec(n)` entry point.
pub fn field_spec(n: u32) -> Result<FieldSpec> {
    FieldSpec::new(n)
}

/// Integer coefficients (lowest degree first) of the `m`-th cyclotomic polynomial,
/// computed by dividing `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(m: usize) -> Vec<i64> {
    assert!(m >= 1);
    let mut p = vec![0i64; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut quo = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

/// An element of `Q(q)`: `num[0] + num[1] q + ... + num[phi-1] q^(phi-1)`, all over `den`.
///
/// Canonical: `den > 0` and `gcd(num..., den) == 1`; zero is `(0,...,0)/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElem {
    fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = FieldElem { num, den };
        e.normalize();
        e
    }

    fn one(phi: usize) -> Self {
        let mut num = vec![BigInt::zero(); phi];
        num[0] = BigInt::one();
        FieldElem { num, den: BigInt::one() }
    }

    fn zero(phi: usize) -> Self {
        FieldElem { num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Builds from an integer polynomial of any degree, reducing mod `Phi_2N`.
    fn from_poly(mut poly: Vec<BigInt>, den: BigInt, field: &FieldData) -> Self {
        let phi = field.phi;
        for d in (phi..poly.len()).rev() {
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[d]);
            for (j, m) in field.modulus[..phi].iter().enumerate() {
                if !m.is_zero() {
                    poly[d - phi + j] -= &c * m;
                }
            }
        }
        poly.resize(phi, BigInt::zero());
        FieldElem::new(poly, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Rational coefficients in the power basis, lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    fn add(&self, other: &FieldElem) -> FieldElem {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(x, y)| x + y).collect();
            return FieldElem::new(num, self.den.clone());
        }
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| x * &fa + y * &fb)
            .collect();
        FieldElem::new(num, l)
    }

    fn neg(&self) -> FieldElem {
        FieldElem { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    fn mul(&self, other: &FieldElem, field: &FieldData) -> FieldElem {
        let phi = field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        FieldElem::from_poly(prod, &self.den * &other.den, field)
    }

    /// Multiplies by `q^k`, `k >= 0`.
    fn shift(&self, k: usize, field: &FieldData) -> FieldElem {
        let mut poly = vec![BigInt::zero(); k];
        poly.extend(self.num.iter().cloned());
        FieldElem::from_poly(poly, self.den.clone(), field)
    }

    fn inverse(&self, field: &FieldData) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        // Extended Euclid in Q[x]: find s with s * self == 1 mod Phi.
        let to_q = |v: &[BigInt], d: &BigInt| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::new(c.clone(), d.clone())).collect()
        };
        let mut r0 = to_q(&field.modulus, &BigInt::one());
        let mut r1 = to_q(&self.num, &self.den);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        trim(&mut r1);
        while !(r1.len() == 1) {
            let (quo, rem) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd is non-constant; cannot happen for an irreducible modulus
                return None;
            }
        }
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        let den = inv.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = inv.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Some(FieldElem::from_poly(num, den, field))
    }

    fn to_complex(&self, n: u32) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if den.is_finite() && c.to_f64().map_or(false, f64::is_finite) {
                c.to_f64().unwrap() / den
            } else {
                BigRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN)
            };
            z += Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / n as f64) * coef;
        }
        z
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    let lead = &b[db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / lead;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quo[k] = c;
    }
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

/// An element of `Q(q)[a, a^-1]`.
///
/// Terms are sorted by `a`-exponent and never zero.
#[derive(Clone)]
pub struct CycScalar {
    field: FieldSpec,
    terms: Vec<(i32, FieldElem)>,
}

impl CycScalar {
    fn from_elem(field: &FieldSpec, k: i32, e: FieldElem) -> Self {
        let terms = if e.is_zero() { vec![] } else { vec![(k, e)] };
        CycScalar { field: field.clone(), terms }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// `(a-exponent, coefficient)` pairs, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &FieldElem)> {
        self.terms.iter().map(|(k, e)| (*k, e))
    }

    /// The set of `a`-exponents carrying a nonzero coefficient.
    pub fn a_degrees(&self) -> Vec<i32> {
        self.terms.iter().map(|(k, _)| *k).collect()
    }

    /// True when the scalar lies in `Q(q)`, i.e. involves no power of `a`.
    pub fn is_a_free(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == 0)
    }

    /// The coefficient of `a^k`, as a scalar in `Q(q)`.
    pub fn a_coeff(&self, k: i32) -> CycScalar {
        match self.terms.iter().find(|(j, _)| *j == k) {
            Some((_, e)) => CycScalar::from_elem(&self.field, 0, e.clone()),
            None => self.field.zero(),
        }
    }

    /// Single-term scalars `c * a^k` with `c != 0`; these are exactly the units we can divide by.
    pub fn as_monomial(&self) -> Option<(i32, &FieldElem)> {
        match self.terms.as_slice() {
            [(k, e)] => Some((*k, e)),
            _ => None,
        }
    }

    fn check_field(&self, other: &CycScalar) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.n(), other.field.n()))
        }
    }

    pub fn try_add(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_field(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &CycScalar) -> CycScalar {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.terms[i].1.add(&other.terms[j].1);
                    if !s.is_zero() {
                        terms.push((self.terms[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        CycScalar { field: self.field.clone(), terms }
    }

    fn neg_ref(&self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, e)| (*k, e.neg())).collect(),
        }
    }

    fn mul_unchecked(&self, other: &CycScalar) -> CycScalar {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let data = &self.field.0;
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (k1, e1) = &self.terms[0];
            let (k2, e2) = &other.terms[0];
            return CycScalar::from_elem(&self.field, k1 + k2, e1.mul(e2, data));
        }
        let mut acc: BTreeMap<i32, FieldElem> = BTreeMap::new();
        for (k1, e1) in &self.terms {
            for (k2, e2) in &other.terms {
                let p = e1.mul(e2, data);
                acc.entry(k1 + k2)
                    .and_modify(|e| *e = e.add(&p))
                    .or_insert(p);
            }
        }
        CycScalar {
            field: self.field.clone(),
            terms: acc.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
        }
    }

    /// Multiplies by `q^k` without a general field multiplication.
    pub fn mul_q_pow(&self, k: i64) -> CycScalar {
        let m = 2 * self.field.n() as i64;
        let k = k.rem_euclid(m) as usize;
        if k == 0 {
            return self.clone();
        }
        let data = &self.field.0;
        CycScalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(j, e)| (*j, e.shift(k, data))).collect(),
        }
    }

    /// Multiplies by `a^k`.
    pub fn mul_a_pow(&self, k: i32) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(j, e)| (j + k, e.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CycScalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit `c * a^k`, `c != 0`.
    pub fn invert(&self) -> Result<CycScalar> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(k, e)] => {
                let inv = e.inverse(&self.field.0).ok_or(Error::DivisionByZero)?;
                Ok(CycScalar::from_elem(&self.field, -k, inv))
            }
            _ => Err(Error::UnsupportedDivision),
        }
    }

    pub fn try_div(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(&other.invert()?))
    }

    /// Numerical value at `q = exp(i*pi/N)` and the given `a`.
    pub fn to_complex(&self, a_value: Complex64) -> Complex64 {
        let n = self.field.n();
        self.terms
            .iter()
            .map(|(k, e)| e.to_complex(n) * a_value.powi(*k))
            .sum()
    }

    /// Bit-exact JSON: `{"a_terms": {"<k>": ["<num>/<den>", ...]}}`, keys ascending in `k`.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\"a_terms\":{");
        for (idx, (k, e)) in self.terms.iter().enumerate() {
            if idx > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{k}\":["));
            let coeffs: Vec<String> = e
                .coeffs()
                .iter()
                .map(|c| format!("\"{}/{}\"", c.numer(), c.denom()))
                .collect();
            out.push_str(&coeffs.join(","));
            out.push(']');
        }
        out.push_str("}}");
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::from_str(&self.to_json_string()).expect("serializer emits valid JSON")
    }

    pub fn from_json(field: &FieldSpec, value: &Value) -> Result<CycScalar> {
        let bad = |m: &str| Error::Format(format!("CycScalar JSON: {m}"));
        let obj = value
            .get("a_terms")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing a_terms object"))?;
        let mut acc = field.zero();
        for (key, coeffs) in obj {
            let k: i32 = key.parse().map_err(|_| bad("a-exponent is not an integer"))?;
            let arr = coeffs.as_array().ok_or_else(|| bad("coefficients must be an array"))?;
            if arr.len() != field.phi() {
                return Err(bad(&format!("expected {} coefficients", field.phi())));
            }
            let rats = arr
                .iter()
                .map(|v| v.as_str().ok_or_else(|| bad("coefficient must be a string")).and_then(parse_rational))
                .collect::<Result<Vec<_>>>()?;
            acc = &acc + &field.from_rational_poly(&rats).mul_a_pow(k);
        }
        Ok(acc)
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Format(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.terms == other.terms
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_elem(e: &FieldElem) -> String {
    let mut parts = vec![];
    for (k, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mon = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        let s = if k > 0 && c.is_one() {
            mon
        } else if k > 0 && (-c).is_one() {
            format!("-{mon}")
        } else if k > 0 {
            format!("{c}*{mon}")
        } else {
            c.to_string()
        };
        parts.push(s);
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    if parts.len() > 1 {
        format!("({out})")
    } else {
        out
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, e)| match k {
                0 => fmt_elem(e),
                1 => format!("{}*a", fmt_elem(e)),
                _ => format!("{}*a^{}", fmt_elem(e), k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = &*self - rhs;
    }
}

pub(crate) fn elem_scalar(field: &FieldSpec, e: FieldElem) -> CycScalar {
    CycScalar::from_elem(field, 0, e)
}

pub(crate) fn scalar_elem(x: &CycScalar) -> Option<FieldElem> {
    match x.terms.as_slice() {
        [] => Some(FieldElem::zero(x.field.phi())),
        [(0, e)] => Some(e.clone()),
        _ => None,
    }
}
