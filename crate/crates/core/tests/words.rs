use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semicyclic::reps::{default_index, parse_a};
use semicyclic::words::{
    antipode_counit, base_case_product, casimir, casimir_factorization, casimir_factorization_with,
    commute_EF, eval_commute_terms, eval_reduced, eval_word, random_balanced_words, reduce_balanced,
    search_bracket_conventions, Letter, Word, BRACKET, LITERAL_BRACKET,
};
use semicyclic::{CycScalar, FieldSpec, Rep};

fn field(n: u32) -> FieldSpec {
    FieldSpec::new(n).unwrap()
}

fn semi(f: &FieldSpec, a: &str, i: usize) -> Rep {
    Rep::semicyclic(f, &parse_a(f, a).unwrap(), i as i64).unwrap()
}

/// Random unit values `f_k = +-q^e * c` with a small nonzero integer `c`.
fn random_fs(f: &FieldSpec, rng: &mut ChaCha8Rng) -> Vec<CycScalar> {
    (0..f.n())
        .map(|_| {
            let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            f.int(c) * f.q_pow(rng.gen_range(0..2 * f.n() as i64))
        })
        .collect()
}

#[test]
fn random_balanced_words_are_diagonal_and_a_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 5] {
        let f = field(n);
        let words = random_balanced_words(n, 200, 11 + n as u64);
        assert_eq!(words.len(), 200);
        let mut reps = vec![];
        for i in 0..n as usize {
            reps.push(semi(&f, "sym", i));
        }
        for i in [0, default_index(n)] {
            reps.push(Rep::generalized(&f, &f.a_pow(1), i as i64, &random_fs(&f, &mut rng)).unwrap());
        }
        for w in &words {
            assert!(w.is_balanced());
            assert!(w.degree(Letter::E) <= 2 * (n - 1));
            for rep in &reps {
                let m = eval_word(w, rep).unwrap().into_matrix();
                assert!(m.is_diagonal() && m.is_a_free(), "{w} in {:?}", rep.kind());
            }
        }
    }
}

#[test]
fn unbalanced_words_carry_a() {
    let f = field(3);
    let rep = semi(&f, "sym", 0);
    let m = eval_word(&Word::parse("E^3").unwrap(), &rep).unwrap().into_matrix();
    assert!(!m.is_a_free());
}

#[test]
fn commute_ef_is_sound() {
    for n in [3, 5] {
        let f = field(n);
        let reps = [semi(&f, "sym", 0), semi(&f, "sym", default_index(n)), Rep::standard(&f)];
        for d in 1..n as i64 {
            for c in 0..d {
                let terms = commute_EF(&f, c, d).unwrap();
                let w = Word::pair(Letter::E, c as u32, Letter::F, d as u32);
                for rep in &reps {
                    let direct = eval_word(&w, rep).unwrap().into_matrix();
                    assert_eq!(eval_commute_terms(&terms, rep).unwrap(), direct, "N={n} c={c} d={d}");
                }
            }
        }
        assert!(commute_EF(&f, 2, 1).is_err());
        assert!(commute_EF(&f, 0, n as i64).is_err());
    }
}

#[test]
fn reduction_matches_direct_evaluation() {
    for n in [3, 5] {
        let f = field(n);
        let reps = [semi(&f, "sym", 0), semi(&f, "sym", default_index(n)), Rep::standard(&f)];
        for w in random_balanced_words(n, 200, 3) {
            let terms = reduce_balanced(&w, &f).unwrap();
            for rep in &reps {
                let direct = eval_word(&w, rep).unwrap().into_matrix();
                assert_eq!(eval_reduced(&terms, rep).unwrap(), direct, "N={n} {w}");
            }
        }
    }
}

#[test]
fn casimir_is_central() {
    for n in [3, 5] {
        let f = field(n);
        let mut reps = vec![Rep::standard(&f)];
        for i in 0..n as usize {
            for a in ["1", "2", "q", "sym"] {
                reps.push(semi(&f, a, i));
            }
        }
        for rep in &reps {
            let c = casimir(rep).unwrap();
            for x in [rep.e(), rep.f(), rep.k()] {
                assert_eq!(c.mul(x), x.mul(&c));
            }
        }
    }
}

#[test]
fn casimir_factorization_for_all_m() {
    for n in [3, 5] {
        let f = field(n);
        let reps = [semi(&f, "sym", 0), semi(&f, "sym", default_index(n)), semi(&f, "2", 1), Rep::standard(&f)];
        for rep in &reps {
            for m in 1..n as i64 {
                assert!(casimir_factorization(m, rep).unwrap().holds(), "N={n} m={m}");
            }
            assert!(!(1..n as i64).all(|m| casimir_factorization_with(m, rep, LITERAL_BRACKET).unwrap().holds()));
        }
    }
}

#[test]
fn bracket_convention_is_unique_over_both_fields() {
    let f3 = field(3);
    let f5 = field(5);
    let reps = [semi(&f3, "sym", 2), semi(&f5, "sym", 3), Rep::standard(&f5)];
    assert_eq!(search_bracket_conventions(&reps).unwrap(), vec![BRACKET]);
}

#[test]
fn base_case_product_matches_e_m_f_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [3, 5] {
        let f = field(n);
        for i in 0..n as usize {
            let fs = random_fs(&f, &mut rng);
            let rep = Rep::generalized(&f, &f.a_pow(1), i as i64, &fs).unwrap();
            for m in 1..n {
                let w = Word::pair(Letter::E, m, Letter::F, m);
                let d = eval_word(&w, &rep).unwrap().into_matrix();
                for j in 0..n as usize {
                    assert_eq!(d.get(j, j), base_case_product(&fs, j, m as usize), "N={n} j={j} m={m}");
                }
            }
        }
    }
}

#[test]
fn antipode_and_counit() {
    let f = field(3);
    let rep = semi(&f, "sym", 1);
    let (s, e) = antipode_counit("K").unwrap();
    assert_eq!(s.eval(&rep), rep.kinv().clone());
    assert_eq!(e, 1);
    let (s, e) = antipode_counit("E").unwrap();
    assert_eq!(s.eval(&rep), rep.e().mul(rep.kinv()).scale(&-f.one()));
    assert_eq!(e, 0);
    let (s, _) = antipode_counit("F").unwrap();
    assert_eq!(s.eval(&rep), rep.k().mul(rep.f()).scale(&-f.one()));
    assert!(antipode_counit("X").is_err());
}
