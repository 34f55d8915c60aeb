//! Independent oracle for the figure-eight evaluation in `rho_{a,(N+1)/2}`, written
//! from the staged hand computation: two twisted cups, `R`, `R^-1`, `R`, `R^-1`,
//! two plain caps. Only field arithmetic is taken from the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use semicyclic::{CycScalar, FieldSpec};

pub type State = BTreeMap<Vec<usize>, CycScalar>;

pub struct Oracle {
    pub field: FieldSpec,
    pub n: usize,
    pub a: CycScalar,
}

/// Labels of one term: `(j, k, r, s, t, u)`; unused entries are `None`.
pub type Labels = [Option<usize>; 6];

impl Oracle {
    pub fn new(field: &FieldSpec, a: &CycScalar) -> Oracle {
        Oracle { field: field.clone(), n: field.n() as usize, a: a.clone() }
    }

    fn q(&self, k: i64) -> CycScalar {
        self.field.q_pow(k)
    }

    fn qint(&self, l: i64) -> CycScalar {
        let mut acc = self.field.zero();
        for j in 0..l.abs() {
            acc += &self.q(l.abs() - 1 - 2 * j);
        }
        if l < 0 {
            -acc
        } else {
            acc
        }
    }

    /// `(q - q^-1)^l / [l]! * q^{s l(l-1)/2}` with `q -> q^s`.
    pub fn f(&self, l: usize, s: i64) -> CycScalar {
        let mut fact = self.field.one();
        for m in 1..=l as i64 {
            fact = fact * self.qint(m);
        }
        let base = self.q(s) - self.q(-s);
        base.pow(l as u32) * fact.invert().unwrap() * self.q(s * (l * (l.max(1) - 1) / 2) as i64)
    }

    /// `E^r e_j` as `(index, scalar)`.
    pub fn e_pow(&self, r: usize, j: usize) -> (usize, CycScalar) {
        let wraps = (j + r) / self.n;
        ((j + r) % self.n, self.a.pow(wraps as u32))
    }

    /// `F e_m = [k][N-k] e_{m-1}`, `k = (m - (N+1)/2) mod N`, with `1/a` at `m = 0`.
    fn f_once(&self, m: usize) -> (usize, CycScalar) {
        let i0 = (self.n + 1) / 2;
        let k = ((m + self.n - i0) % self.n) as i64;
        let mut c = self.qint(k) * self.qint(self.n as i64 - k);
        if m == 0 {
            c = c * self.a.invert().unwrap();
        }
        ((m + self.n - 1) % self.n, c)
    }

    pub fn f_pow(&self, r: usize, m: usize) -> (usize, CycScalar) {
        let mut idx = m;
        let mut c = self.field.one();
        for _ in 0..r {
            let (next, x) = self.f_once(idx);
            idx = next;
            c = c * x;
        }
        (idx, c)
    }

    /// Applies a sequence of `(letter, power)` from right to left, i.e. the last entry acts first.
    pub fn word_on(&self, word: &[(char, usize)], m: usize) -> (usize, CycScalar) {
        let mut idx = m;
        let mut c = self.field.one();
        for &(l, p) in word.iter().rev() {
            let (next, x) = if l == 'E' { self.e_pow(p, idx) } else { self.f_pow(p, idx) };
            idx = next;
            c = c * x;
        }
        (idx, c)
    }

    fn qq(&self, x: usize, y: usize) -> i64 {
        2 * x as i64 * y as i64
    }

    /// The states after each of the eight slices (entry 0 is the input `e_i`), and
    /// for each stage the label tuples of the nonzero terms.
    pub fn stages(&self, i: usize) -> (Vec<State>, Vec<Vec<Labels>>) {
        let n = self.n;
        let one = self.field.one();
        let mut states = vec![State::from([(vec![i], one.clone())])];
        let mut labels = vec![vec![[None; 6]]];
        let push = |st: &mut State, lb: &mut Vec<Labels>, key: Vec<usize>, x: CycScalar, l: Labels| {
            if x.is_zero() {
                return;
            }
            lb.push(l);
            let e = st.entry(key).or_insert_with(|| x.field().zero());
            *e += &x;
        };
        let finish = |st: State| -> State { st.into_iter().filter(|(_, v)| !v.is_zero()).collect() };

        // cups
        let (mut s1, mut l1) = (State::new(), vec![]);
        for j in 0..n {
            push(&mut s1, &mut l1, vec![j, j, i], self.q(-2 * j as i64), [Some(j), None, None, None, None, None]);
        }
        let (mut s2, mut l2) = (State::new(), vec![]);
        for j in 0..n {
            for k in 0..n {
                let c = self.q(-2 * (j + k) as i64);
                push(&mut s2, &mut l2, vec![j, k, k, j, i], c, [Some(j), Some(k), None, None, None, None]);
            }
        }
        states.extend([finish(s1), finish(s2)]);
        labels.extend([l1, l2]);

        let (mut s3, mut s4, mut s5, mut s6) = (State::new(), State::new(), State::new(), State::new());
        let (mut l3, mut l4, mut l5, mut l6) = (vec![], vec![], vec![], vec![]);
        let (mut s7, mut s8) = (State::new(), State::new());
        let (mut l7, mut l8) = (vec![], vec![]);
        for j in 0..n {
            for k in 0..n {
                let cup = self.q(-2 * (j + k) as i64);
                for r in 0..n {
                    // R at strands 3,4 on e_j (x) e_i -> F^r e_i (x) E^r e_j
                    let (fi, cfi) = self.f_pow(r, i);
                    let (ej, cej) = self.e_pow(r, j);
                    let c3 = &cup * &self.q(self.qq(fi, ej)) * self.f(r, 1) * &cfi * &cej;
                    push(&mut s3, &mut l3, vec![j, k, k, fi, ej], c3.clone(), [Some(j), Some(k), Some(r), None, None, None]);
                    for s in 0..n {
                        // R^-1 at strands 2,3 on e_k (x) F^r e_i -> E^s F^r e_i (x) F^s e_k
                        let (x2, cx2) = self.e_pow(s, fi);
                        let (y2, cy2) = self.f_pow(s, k);
                        let c4 = &c3 * &self.q(-self.qq(fi, k)) * self.f(s, -1) * &cx2 * &cy2;
                        push(&mut s4, &mut l4, vec![j, k, x2, y2, ej], c4.clone(), [Some(j), Some(k), Some(r), Some(s), None, None]);
                        for t in 0..n {
                            // R at strands 3,4 on F^s e_k (x) E^r e_j -> F^t E^r e_j (x) E^t F^s e_k
                            let (y3, cy3) = self.f_pow(t, ej);
                            let (z3, cz3) = self.e_pow(t, y2);
                            let c5 = &c4 * &self.q(self.qq(y3, z3)) * self.f(t, 1) * &cy3 * &cz3;
                            push(&mut s5, &mut l5, vec![j, k, x2, y3, z3], c5.clone(), [Some(j), Some(k), Some(r), Some(s), Some(t), None]);
                            for u in 0..n {
                                // R^-1 at strands 2,3 on E^s F^r e_i (x) F^t E^r e_j
                                let (x4, cx4) = self.e_pow(u, y3);
                                let (y4, cy4) = self.f_pow(u, x2);
                                let c6 = &c5 * &self.q(-self.qq(x2, y3)) * self.f(u, -1) * &cx4 * &cy4;
                                let lab = [Some(j), Some(k), Some(r), Some(s), Some(t), Some(u)];
                                push(&mut s6, &mut l6, vec![j, k, x4, y4, z3], c6.clone(), lab);
                                if x4 == k {
                                    push(&mut s7, &mut l7, vec![j, y4, z3], c6.clone(), lab);
                                    if y4 == j {
                                        push(&mut s8, &mut l8, vec![z3], c6.clone(), lab);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        states.extend([finish(s3), finish(s4), finish(s5), finish(s6), finish(s7), finish(s8)]);
        labels.extend([l3, l4, l5, l6, l7, l8]);
        (states, labels)
    }

    /// `sum_{r,s,t,u} q^{f} f_q(r) f_{q^-1}(s) f_q(t) f_{q^-1}(u) (E^t F^s E^u F^t E^r F^u E^s F^r)_{ii}`
    /// with `j = i-r+s-u`, `k = j+r-t+u`. `literal` uses `q^{-2(i-r+s-u)(j+r-t+u)}` for the
    /// fourth crossing instead of `q^{-2(i-r+s)(j+r-t)}`.
    pub fn quadruple_sum(&self, i: usize, literal: bool) -> CycScalar {
        let n = self.n as i64;
        let m = |x: i64| x.rem_euclid(n);
        let mut acc = self.field.zero();
        let ii = i as i64;
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    for u in 0..n {
                        let j = m(ii - r + s - u);
                        let k = m(j + r - t + u);
                        let mut e = -2 * (j + k) + 2 * (ii - r) * (j + r) - 2 * (ii - r) * k
                            + 2 * (j + r - t) * (k - s + t);
                        e += if literal {
                            -2 * (ii - r + s - u) * (j + r - t + u)
                        } else {
                            -2 * (ii - r + s) * (j + r - t)
                        };
                        let (ru, su, tu, uu) = (r as usize, s as usize, t as usize, u as usize);
                        let word = [
                            ('E', tu), ('F', su), ('E', uu), ('F', tu), ('E', ru), ('F', uu), ('E', su), ('F', ru),
                        ];
                        let (out, c) = self.word_on(&word, i);
                        if out != i || c.is_zero() {
                            continue;
                        }
                        let coeff = self.f(ru, 1) * self.f(su, -1) * self.f(tu, 1) * self.f(uu, -1);
                        acc += &(self.q(e) * coeff * c);
                    }
                }
            }
        }
        acc
    }
}
