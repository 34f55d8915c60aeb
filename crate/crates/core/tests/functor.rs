mod support;

use semicyclic::braiding::braid;
use semicyclic::evaluator::{check_move, compare_22, evaluate, kashaev, Engine};
use semicyclic::reps::{default_index, parse_a};
use semicyclic::tangle::{all_turaev_pairs, builtin, turaev_pair};
use semicyclic::{CycScalar, FieldSpec, Rep};
use support::figure_eight::Oracle;

fn field(n: u32) -> FieldSpec {
    FieldSpec::new(n).unwrap()
}

fn semi(f: &FieldSpec, a: &str, i: usize) -> Rep {
    Rep::semicyclic(f, &parse_a(f, a).unwrap(), i as i64).unwrap()
}

#[test]
fn figure_eight_stages_match_oracle() {
    for (n, a) in [(3, "sym"), (5, "sym"), (5, "3/2")] {
        let f = field(n);
        let i = default_index(n);
        let rep = semi(&f, a, i);
        let oracle = Oracle::new(&f, rep.a().unwrap());
        let engine = Engine::new(&rep).unwrap();
        let d = builtin("figure_eight").unwrap();
        for input in 0..n as usize {
            let got = engine.trace(&d, &[input]).unwrap();
            let (want, labels) = oracle.stages(input);
            assert_eq!(got.len(), want.len());
            for (stage, (g, w)) in got.iter().zip(&want).enumerate() {
                assert_eq!(g, w, "N={n} a={a} input={input} stage {stage}");
            }
            // the caps keep exactly the terms with j = i-r+s-u, k = j+r-t+u
            let m = |x: i64| x.rem_euclid(n as i64);
            for l in &labels[8] {
                let [j, k, r, s, t, u] = l.map(|x| x.unwrap() as i64);
                let ii = input as i64;
                assert_eq!(m(j), m(ii - r + s - u));
                assert_eq!(m(k), m(j + r - t + u));
                assert_eq!(m(k - s + t), ii);
            }
        }
    }
}

#[test]
fn figure_eight_quadruple_sum() {
    for n in [3, 5] {
        let f = field(n);
        let i = default_index(n);
        let rep = semi(&f, "sym", i);
        let oracle = Oracle::new(&f, rep.a().unwrap());
        let value = evaluate(&builtin("figure_eight").unwrap(), &rep).unwrap().scalar.unwrap();
        for input in 0..n as usize {
            assert_eq!(oracle.quadruple_sum(input, false), value, "N={n} i={input}");
        }
        // the literal exponent only sums correctly at the default index
        assert_eq!(oracle.quadruple_sum(i, true), value, "N={n}");
        assert_ne!(oracle.quadruple_sum(0, true), value, "N={n}");
    }
}

/// `sum_j q^{-h_j} (R_check^3)_{(j,i),(j,i)}`.
fn trefoil_oracle(rep: &Rep, i: usize) -> CycScalar {
    let n = rep.dim();
    let b3 = braid(rep).unwrap().matrix().pow(3);
    let f = rep.field();
    let mut acc = f.zero();
    for j in 0..n {
        acc += &(f.q_pow(-rep.weights()[j]) * b3.get(j * n + i, j * n + i));
    }
    acc
}

#[test]
fn trefoil_matches_partial_trace() {
    for n in [3, 5, 7] {
        let f = field(n);
        for i in [0, default_index(n)] {
            let rep = semi(&f, "sym", i);
            let value = evaluate(&builtin("trefoil").unwrap(), &rep).unwrap().scalar.unwrap();
            assert_eq!(value, trefoil_oracle(&rep, i), "N={n} i={i}");
        }
    }
}

#[test]
fn turaev_moves_across_parameters() {
    for (n, a) in [(3, "sym"), (3, "1"), (3, "2"), (3, "q"), (5, "sym"), (5, "1"), (5, "2"), (5, "q"), (5, "-1/3")] {
        let f = field(n);
        for i in [0, default_index(n)] {
            let engine = Engine::new(&semi(&f, a, i)).unwrap();
            for (mv, v) in all_turaev_pairs() {
                let (lhs, rhs) = turaev_pair(mv, v).unwrap();
                assert!(check_move(&engine, &lhs, &rhs).unwrap(), "N={n} a={a} i={i} move {mv}.{v}");
            }
        }
    }
    let engine = Engine::new(&Rep::standard(&field(5))).unwrap();
    for (mv, v) in all_turaev_pairs() {
        let (lhs, rhs) = turaev_pair(mv, v).unwrap();
        assert!(check_move(&engine, &lhs, &rhs).unwrap(), "standard move {mv}.{v}");
    }
}

#[test]
fn move_pairs_are_distinct_diagrams() {
    for (mv, v) in all_turaev_pairs() {
        let (lhs, rhs) = turaev_pair(mv, v).unwrap();
        assert_ne!(lhs.serialize(), rhs.serialize(), "move {mv}.{v}");
        assert_eq!(lhs.bottom(), rhs.bottom());
        assert_eq!(lhs.top(), rhs.top());
    }
    assert!(turaev_pair(8, 0).is_err());
    assert!(turaev_pair(1, 2).is_err());
}

#[test]
fn kashaev_equivalence() {
    for n in [3, 5, 7] {
        let f = field(n);
        for name in ["trefoil", "figure_eight", "unknot_twisted"] {
            let d = builtin(name).unwrap();
            let k = kashaev(&d, &f).unwrap();
            for i in [0, default_index(n)] {
                let e = evaluate(&d, &semi(&f, "sym", i)).unwrap();
                assert!(e.schur_ok);
                let v = e.scalar.unwrap();
                assert!(v.is_a_free(), "{name} N={n} i={i}");
                assert_eq!(v.a_degrees(), vec![0]);
                assert_eq!(v, k, "{name} N={n} i={i}");
            }
        }
    }
}

#[test]
fn open_braid_differs_from_standard() {
    let f = field(3);
    let d = semicyclic::tangle::Diagram::on_down(2, &[(semicyclic::tangle::SliceKind::CrossPos, 0)]).unwrap();
    let a = parse_a(&f, "sym").unwrap();
    for i in 0..3 {
        assert!(compare_22(&d, &f, &a, i).unwrap().nonzero);
    }
}

#[test]
fn turaev_moves_n7() {
    let f = field(7);
    for a in ["1", "2", "q", "sym"] {
        let engine = Engine::new(&semi(&f, a, default_index(7))).unwrap();
        for (mv, v) in all_turaev_pairs() {
            let (lhs, rhs) = turaev_pair(mv, v).unwrap();
            assert!(check_move(&engine, &lhs, &rhs).unwrap(), "N=7 a={a} move {mv}.{v}");
        }
    }
}

/// `sum_{k<N} prod_{j<=k} |1 - w^j|^2`, `w = exp(2 pi i/N)`: Kashaev's closed form for the figure-eight.
fn figure_eight_closed_form(n: u32) -> f64 {
    let w = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let (mut sum, mut prod) = (0.0, 1.0);
    for k in 0..n as i32 {
        sum += prod;
        prod *= (num_complex::Complex64::new(1.0, 0.0) - w.powi(k + 1)).norm_sqr();
    }
    sum
}

#[test]
fn figure_eight_matches_closed_form() {
    for n in [3, 5, 7] {
        let f = field(n);
        let v = evaluate(&builtin("figure_eight").unwrap(), &semi(&f, "sym", default_index(n)))
            .unwrap()
            .scalar
            .unwrap();
        let c = semicyclic::evaluator::complex_value(&v);
        assert!((c.re - figure_eight_closed_form(n)).abs() < 1e-9, "N={n}: {c}");
        assert!(c.im.abs() < 1e-9);
    }
    assert_eq!(evaluate(&builtin("figure_eight").unwrap(), &semi(&field(3), "sym", 2)).unwrap().scalar.unwrap(), field(3).int(13));
}
