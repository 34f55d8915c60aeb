use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use semicyclic::braiding::{r_coefficients, r_coefficients_recursive};
use semicyclic::qcalc::{f_coeff, q_minus_qinv, qbinom, qfact, qint};
use semicyclic::reps::default_index;
use semicyclic::{CycScalar, FieldSpec, Matrix, QSign, Rep};

const NS: [u32; 3] = [3, 5, 7];

fn field(n: u32) -> FieldSpec {
    FieldSpec::new(n).unwrap()
}

/// Random element of `Q(q)[a, a^-1]`: up to three a-degrees, small rational coefficients.
fn element(n: u32) -> impl Strategy<Value = (u32, Vec<(i32, Vec<(i64, i64)>)>)> {
    let phi = field(n).phi();
    let coeff = (-9i64..=9, 1i64..=4);
    let term = (-2i32..=2, prop::collection::vec(coeff, phi));
    (Just(n), prop::collection::vec(term, 0..=3))
}

fn build(f: &FieldSpec, terms: &[(i32, Vec<(i64, i64)>)]) -> CycScalar {
    let mut acc = f.zero();
    for (k, cs) in terms {
        let poly: Vec<BigRational> =
            cs.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect();
        acc += &(f.from_rational_poly(&poly) * f.a_pow(*k));
    }
    acc
}

fn ring_axioms(n: u32) -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    (element(n), element(n), element(n)).prop_map(move |(x, y, z)| {
        let f = field(n);
        (build(&f, &x.1), build(&f, &y.1), build(&f, &z.1))
    })
}

fn check_ring(x: CycScalar, y: CycScalar, z: CycScalar) -> Result<(), TestCaseError> {
    prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
    prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
    prop_assert_eq!(&x * &y, &y * &x);
    prop_assert_eq!(&x + &y, &y + &x);
    prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
    prop_assert!((&x - &x).is_zero());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_n3((x, y, z) in ring_axioms(3)) { check_ring(x, y, z)?; }

    #[test]
    fn ring_axioms_n5((x, y, z) in ring_axioms(5)) { check_ring(x, y, z)?; }

    #[test]
    fn ring_axioms_n7((x, y, z) in ring_axioms(7)) { check_ring(x, y, z)?; }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn to_complex_is_a_homomorphism(
        (n, xt, yt) in prop::sample::select(NS.to_vec())
            .prop_flat_map(|n| (Just(n), element(n), element(n))),
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
    ) {
        prop_assume!(re.abs() + im.abs() > 0.3);
        let f = field(n);
        let (x, y) = (build(&f, &xt.1), build(&f, &yt.1));
        let a = Complex64::new(re, im);
        let (cx, cy) = (x.to_complex(a), y.to_complex(a));
        let tol = 1e-10 * (1.0 + cx.norm() * cy.norm() + cx.norm() + cy.norm());
        prop_assert!(((&x + &y).to_complex(a) - (cx + cy)).norm() < tol);
        prop_assert!(((&x * &y).to_complex(a) - cx * cy).norm() < tol);
        prop_assert!(((-&x).to_complex(a) + cx).norm() < tol);
    }

    #[test]
    fn binomial_theorem_upper_triangular(
        n in prop::sample::select(NS.to_vec()),
        s in -5i64..=5,
        x in -5i64..=5,
        b in 1i64..=5,
        shift in 0i64..14,
    ) {
        let f = field(n);
        // A = [[q^2 s', x], [0, s']], B = [[0, b], [0, 0]] with s' = s q^shift
        let sp = f.int(s) * f.q_pow(shift);
        let mut a = Matrix::zeros(&f, 2, 2);
        a.set(0, 0, f.q_pow(2) * &sp);
        a.set(0, 1, f.int(x));
        a.set(1, 1, sp);
        let mut bm = Matrix::zeros(&f, 2, 2);
        bm.set(0, 1, f.int(b));
        prop_assert_eq!(a.mul(&bm), bm.mul(&a).scale(&f.q_pow(2)));
        for m in 1..n as i64 {
            prop_assert_eq!(a.add(&bm).pow(m as u32), binomial_sum(&f, &a, &bm, m));
        }
    }
}

/// `sum_k q^{-k(m-k)} [m k] A^k B^{m-k}`.
fn binomial_sum(f: &FieldSpec, a: &Matrix, b: &Matrix, m: i64) -> Matrix {
    let mut acc = Matrix::zeros(f, a.rows(), a.cols());
    for k in 0..=m {
        let c = f.q_pow(-k * (m - k)) * qbinom(f, m, k).unwrap();
        acc = acc.add(&a.pow(k as u32).mul(&b.pow((m - k) as u32)).scale(&c));
    }
    acc
}

#[test]
fn binomial_theorem_for_k_and_e() {
    for n in NS {
        let f = field(n);
        for i in [0, default_index(n)] {
            let rep = Rep::semicyclic(&f, &f.a_pow(1), i as i64).unwrap();
            let (k, e) = (rep.k(), rep.e());
            assert_eq!(k.mul(e), e.mul(k).scale(&f.q_pow(2)));
            for m in 1..n as i64 {
                assert_eq!(k.add(e).pow(m as u32), binomial_sum(&f, k, e, m), "N={n} i={i} m={m}");
            }
        }
    }
}

#[test]
fn modulus_vanishes_at_q() {
    for n in NS {
        let f = field(n);
        assert!(f.modulus_at_q().is_zero());
        assert!(qint(&f, n as i64).is_zero());
        assert_eq!(f.q_pow(n as i64), -f.one());
    }
}

#[test]
fn lemma_product_formula() {
    for n in NS {
        let f = field(n);
        let d = q_minus_qinv(&f);
        for a in 0..n as i64 {
            for b in 0..=a {
                let lhs = f_coeff(&f, a - b, QSign::Minus).unwrap() * f_coeff(&f, b, QSign::Plus).unwrap();
                let sgn = if (b - a) % 2 == 0 { f.one() } else { -f.one() };
                let den = qfact(&f, a - b).unwrap() * qfact(&f, b).unwrap();
                assert_eq!((a - a * a) % 2, 0);
                let rhs = sgn * d.pow(a as u32) * den.invert().unwrap()
                    * f.q_pow((a - a * a) / 2)
                    * f.q_pow(b * (a - 1));
                assert_eq!(lhs, rhs, "N={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn lemma_vanishing_sums() {
    for n in NS {
        let f = field(n);
        for a in 1..n as i64 {
            for (s1, s2) in [(QSign::Minus, QSign::Plus), (QSign::Plus, QSign::Minus)] {
                let mut acc = f.zero();
                for b in 0..=a {
                    acc += &(f_coeff(&f, a - b, s1).unwrap() * f_coeff(&f, b, s2).unwrap());
                }
                assert!(acc.is_zero(), "N={n} a={a}");
            }
        }
        assert!((f_coeff(&f, 0, QSign::Minus).unwrap() * f_coeff(&f, 0, QSign::Plus).unwrap()).is_one());
    }
}

#[test]
fn f_coeff_recursion() {
    for n in NS {
        let f = field(n);
        assert!(f_coeff(&f, 0, QSign::Plus).unwrap().is_one());
        assert_eq!(f_coeff(&f, 1, QSign::Plus).unwrap(), q_minus_qinv(&f));
        for m in 1..n as i64 {
            let step = q_minus_qinv(&f) * qint(&f, m).invert().unwrap() * f.q_pow(m - 1);
            assert_eq!(f_coeff(&f, m, QSign::Plus).unwrap(), step * f_coeff(&f, m - 1, QSign::Plus).unwrap());
        }
        assert_eq!(r_coefficients(&f, QSign::Plus), r_coefficients_recursive(&f));
        assert!(f_coeff(&f, n as i64, QSign::Plus).is_err());
    }
}
