//! The tangle functor: slices become linear maps in a representation and are
//! contracted bottom to top on sparse coefficient maps.
//!
//! A state is a map from multi-indices (one basis index per strand, `e_i` on `d`
//! strands and `e^i` on `u` strands) to scalars. Multi-indices flatten big-endian,
//! `(i_0 N + i_1) N + ...`, matching the tensor convention of the braiding module.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::braiding::{braid, braid_inverse, Orientation};
use crate::cyclo::{CycScalar, FieldSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reps::{Rep, RepKind};
use crate::tangle::{Diagram, Slice, SliceKind, TangleClass};

pub type State = BTreeMap<Vec<usize>, CycScalar>;

/// Per-representation data needed by the slice maps.
pub struct Engine {
    rep: Rep,
    n: usize,
    /// Column `j` of `R_check`: the nonzero `(row, value)` pairs.
    braid_cols: Vec<Vec<(usize, CycScalar)>>,
    braid_inv_cols: Vec<Vec<(usize, CycScalar)>>,
    k: Vec<CycScalar>,
    kinv: Vec<CycScalar>,
}

fn columns(m: &Matrix) -> Vec<Vec<(usize, CycScalar)>> {
    let mut cols = vec![vec![]; m.cols()];
    for (r, c, x) in m.entries() {
        cols[c].push((r, x.clone()));
    }
    cols
}

fn accumulate(state: &mut State, key: Vec<usize>, x: CycScalar) {
    match state.get_mut(&key) {
        Some(v) => *v += &x,
        None => {
            state.insert(key, x);
        }
    }
}

fn prune(state: State) -> State {
    state.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl Engine {
    pub fn new(rep: &Rep) -> Result<Engine> {
        let field = rep.field();
        Ok(Engine {
            rep: rep.clone(),
            n: rep.dim(),
            braid_cols: columns(braid(rep)?.matrix()),
            braid_inv_cols: columns(braid_inverse(rep)?.matrix()),
            k: rep.weights().iter().map(|&h| field.q_pow(h)).collect(),
            kinv: rep.weights().iter().map(|&h| field.q_pow(-h)).collect(),
        })
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    /// Applies one slice to a state.
    pub fn apply(&self, slice: &Slice, state: &State) -> State {
        let p = slice.position;
        let n = self.n;
        let mut out = State::new();
        match slice.kind {
            SliceKind::Id => return state.clone(),
            SliceKind::CupPlain | SliceKind::CupTwisted => {
                let twisted = slice.kind == SliceKind::CupTwisted;
                for (key, x) in state {
                    for i in 0..n {
                        let mut k = Vec::with_capacity(key.len() + 2);
                        k.extend_from_slice(&key[..p]);
                        k.push(i);
                        k.push(i);
                        k.extend_from_slice(&key[p..]);
                        let v = if twisted { x * &self.kinv[i] } else { x.clone() };
                        accumulate(&mut out, k, v);
                    }
                }
            }
            SliceKind::CapPlain | SliceKind::CapTwisted => {
                let twisted = slice.kind == SliceKind::CapTwisted;
                for (key, x) in state {
                    if key[p] != key[p + 1] {
                        continue;
                    }
                    let mut k = key[..p].to_vec();
                    k.extend_from_slice(&key[p + 2..]);
                    // the K acts on the d strand, which is the left one for cap_twisted
                    let v = if twisted { x * &self.k[key[p]] } else { x.clone() };
                    accumulate(&mut out, k, v);
                }
            }
            SliceKind::CrossPos | SliceKind::CrossNeg => {
                let cols = if slice.kind == SliceKind::CrossPos {
                    &self.braid_cols
                } else {
                    &self.braid_inv_cols
                };
                for (key, x) in state {
                    for (row, c) in &cols[key[p] * n + key[p + 1]] {
                        let mut k = key.clone();
                        k[p] = row / n;
                        k[p + 1] = row % n;
                        accumulate(&mut out, k, x * c);
                    }
                }
            }
        }
        prune(out)
    }

    /// States after every slice for one input basis tensor; entry 0 is the input.
    pub fn trace(&self, d: &Diagram, input: &[usize]) -> Result<Vec<State>> {
        if input.len() != d.bottom().len() || input.iter().any(|&i| i >= self.n) {
            return Err(Error::Dimension(format!(
                "input {input:?} does not match {} bottom strands of dimension {}",
                d.bottom().len(),
                self.n
            )));
        }
        let mut states = vec![State::from([(input.to_vec(), self.rep.field().one())])];
        for s in d.slices() {
            let next = self.apply(s, states.last().unwrap());
            states.push(next);
        }
        Ok(states)
    }

    /// The full linear map of a diagram, `N^top x N^bottom`.
    pub fn tangle_map(&self, d: &Diagram) -> Result<TangleMap> {
        let n = self.n;
        let rows = n.pow(d.top().len() as u32);
        let cols = n.pow(d.bottom().len() as u32);
        let mut m = Matrix::zeros(self.rep.field(), rows, cols);
        for col in 0..cols {
            let input = unflatten(col, n, d.bottom().len());
            let mut state = State::from([(input, self.rep.field().one())]);
            for s in d.slices() {
                state = self.apply(s, &state);
            }
            for (key, x) in state {
                m.set(flatten(&key, n), col, x);
            }
        }
        Ok(TangleMap { matrix: m, bottom: d.bottom().to_vec(), top: d.top().to_vec() })
    }
}

pub fn flatten(key: &[usize], n: usize) -> usize {
    key.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn unflatten(mut idx: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

/// A linear map between tensor products of `V` and `V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleMap {
    pub matrix: Matrix,
    pub bottom: Vec<Orientation>,
    pub top: Vec<Orientation>,
}

/// The map of a single slice on a given strand signature.
pub fn slice_operator(s: &Slice, rep: &Rep, below: &[Orientation]) -> Result<TangleMap> {
    let top = s.apply(below).map_err(Error::InvalidDiagram)?;
    let d = Diagram::new(below.to_vec(), vec![*s])?;
    debug_assert_eq!(d.top(), top.as_slice());
    Engine::new(rep)?.tangle_map(&d)
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub map: TangleMap,
    /// Present iff the diagram is (1,1); then `map = scalar * Id`.
    pub scalar: Option<CycScalar>,
    pub schur_ok: bool,
    pub rep: Value,
}

/// Short description of a representation's parameters.
pub fn rep_description(rep: &Rep) -> Value {
    match rep.kind() {
        RepKind::Semicyclic { i, a } => json!({"kind": "semicyclic", "i": i, "a": a.to_string()}),
        RepKind::Standard => json!({"kind": "standard"}),
        RepKind::Generalized { i, a, .. } => json!({"kind": "generalized", "i": i, "a": a.to_string()}),
        RepKind::Custom => json!({"kind": "custom"}),
    }
}

/// Composes all slices. For a (1,1) diagram the result must be a scalar multiple
/// of the identity; anything else is an invariant violation.
pub fn evaluate(d: &Diagram, rep: &Rep) -> Result<Evaluation> {
    evaluate_with(&Engine::new(rep)?, d)
}

pub fn evaluate_with(engine: &Engine, d: &Diagram) -> Result<Evaluation> {
    let report = d.report();
    if !report.valid {
        return Err(Error::InvalidDiagram(format!("{:?}", report)));
    }
    let map = engine.tangle_map(d)?;
    let (scalar, schur_ok) = if report.class == TangleClass::OneOne {
        match map.matrix.scalar_multiple_of_identity() {
            Some(s) => (Some(s), true),
            None => {
                return Err(Error::Invariant(
                    "(1,1) tangle did not evaluate to a multiple of the identity".into(),
                ))
            }
        }
    } else {
        (None, false)
    };
    Ok(Evaluation { map, scalar, schur_ok, rep: rep_description(engine.rep()) })
}

/// Numeric value of an exact scalar, with `a = 1` for any remaining `a`.
pub fn complex_value(x: &CycScalar) -> Complex64 {
    x.to_complex(Complex64::new(1.0, 0.0))
}

impl Evaluation {
    pub fn to_json(&self, diagram: &str, n: u32) -> Value {
        let (scalar, complex) = match &self.scalar {
            Some(s) => {
                let c = complex_value(s);
                (s.to_json(), json!([c.re, c.im]))
            }
            None => (Value::Null, Value::Null),
        };
        json!({
            "diagram": diagram,
            "N": n,
            "rep": self.rep,
            "scalar": scalar,
            "complex": complex,
            "schur_ok": self.schur_ok,
        })
    }
}

/// The invariant in the standard representation.
pub fn kashaev(d: &Diagram, field: &FieldSpec) -> Result<CycScalar> {
    if d.class() != TangleClass::OneOne {
        return Err(Error::InvalidDiagram("kashaev needs a (1,1) diagram".into()));
    }
    Ok(evaluate(d, &Rep::standard(field))?.scalar.expect("(1,1)"))
}

/// Both sides of a Turaev move as maps, and whether they agree exactly.
pub fn check_move(engine: &Engine, lhs: &Diagram, rhs: &Diagram) -> Result<bool> {
    Ok(engine.tangle_map(lhs)? == engine.tangle_map(rhs)?)
}

#[derive(Debug, Clone)]
pub struct Compare22 {
    pub semicyclic: Matrix,
    pub standard: Matrix,
    pub difference: Matrix,
    pub nonzero: bool,
}

/// Evaluates a (2,2) diagram under `rho_{a,i}` and `rho_0` and subtracts.
pub fn compare_22(d: &Diagram, field: &FieldSpec, a: &CycScalar, i: i64) -> Result<Compare22> {
    if d.class() != TangleClass::TwoTwo {
        return Err(Error::InvalidDiagram("compare_22 needs a (2,2) diagram".into()));
    }
    let semi = evaluate(d, &Rep::semicyclic(field, a, i)?)?.map.matrix;
    let std = evaluate(d, &Rep::standard(field))?.map.matrix;
    let diff = semi.try_sub(&std)?;
    Ok(Compare22 { nonzero: !diff.is_zero(), semicyclic: semi, standard: std, difference: diff })
}
