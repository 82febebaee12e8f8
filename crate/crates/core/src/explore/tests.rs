use super::*;
use crate::graph::edge_set;

fn job(statement: &str, n: usize, t: usize, bipartite: bool, mode: Mode) -> ExplorerJob {
    ExplorerJob { statement: Statement::parse(statement).unwrap(), n, t, bipartite, mode, budget: 1_000_000 }
}

#[test]
fn statements_parse() {
    let s = Statement::parse("(3n-3+t, t+1, n) -> n").unwrap();
    assert_eq!(s.colors, Lin { n: 3, t: 1, c: -3 });
    assert_eq!(s.union, Some(Lin { n: 0, t: 1, c: 1 }));
    assert_eq!(s.target.eval(4, 0).unwrap(), 4);
    let s = Statement::parse("(2n,n)->n-1").unwrap();
    assert_eq!((s.colors.eval(3, 0).unwrap(), s.target.eval(3, 0).unwrap()), (6, 2));
    for bad in ["2n-1,n->n", "(2n-1)->n", "(2x,n)->n", "(2n--1,n)->n", "(,n)->n"] {
        assert!(Statement::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn canonical_form_ignores_labels_and_color_order() {
    let a = ColorFamily::new(vec![edge_set(&[(0, 1), (2, 3)]), edge_set(&[(1, 2)])]);
    let b = ColorFamily::new(vec![edge_set(&[(5, 7)]), edge_set(&[(7, 9), (4, 5)])]);
    assert_eq!(canonical_form(&a), canonical_form(&b));
    let c = ColorFamily::new(vec![edge_set(&[(0, 1), (2, 3)]), edge_set(&[(0, 1)])]);
    assert_ne!(canonical_form(&a), canonical_form(&c));
}

#[test]
fn k4_family_is_recognized() {
    assert!(is_k4_family(&k4_family([3, 9, 4, 1])));
    let not = ColorFamily::new(vec![edge_set(&[(0, 1), (2, 3)]); 3]);
    assert!(!is_k4_family(&not));
}

#[test]
fn edge_first_search_agrees_with_the_oracle() {
    let mut r = rng(2);
    for _ in 0..200 {
        let fam = crate::gen::random_matching_family(&mut r, 4, 7, 2).unwrap();
        let a = rainbow_matching_oracle(&fam, 3, 1 << 20).unwrap().is_some();
        let b = rainbow_matching_by_edges(&fam, 3, 1 << 20).unwrap();
        assert_eq!(a, b.is_some());
        if let Some(w) = b {
            assert!(crate::solver::verify_witness(&fam, &w));
        }
    }
}

#[test]
fn bipartite_two_n_minus_one_has_no_violations() {
    let rep = run(&job("(2n-1,n)->n", 2, 0, true, Mode::Exhaustive { vertices: 8 })).unwrap();
    assert!(rep.summary.examined > 0);
    assert_eq!(rep.summary.counterexample_candidates, 0);
    assert_eq!(rep.summary.holds, rep.summary.examined);
}

#[test]
fn general_two_n_minus_one_finds_k4() {
    let rep = run(&job("(2n-1,n)->n", 2, 0, false, Mode::Exhaustive { vertices: 6 })).unwrap();
    let found: Vec<_> = rep.candidates().collect();
    assert_eq!(found.len(), 1);
    assert!(is_k4_family(&found[0].family));
}

#[test]
fn three_n_minus_three_at_two_finds_k4() {
    let rep = run(&job("(3n-3,n)->n", 2, 0, false, Mode::Exhaustive { vertices: 5 })).unwrap();
    let found: Vec<_> = rep.candidates().collect();
    assert_eq!(found.len(), 1);
    assert!(is_k4_family(&found[0].family));
}

#[test]
fn cooperative_random_run_at_three_holds() {
    let rep = run(&job("(3n-3+t,t+1,n)->n", 3, 1, false, Mode::Random { vertices: 8, count: 40, seed: 5 })).unwrap();
    assert_eq!(rep.summary.examined, 40);
    assert_eq!(rep.summary.counterexample_candidates, 0);
}

#[test]
fn reports_are_deterministic() {
    let j = job("(2n-1,n)->n", 2, 0, false, Mode::Random { vertices: 6, count: 50, seed: 11 });
    assert_eq!(run(&j).unwrap().to_json_lines(), run(&j).unwrap().to_json_lines());
}

#[test]
fn exhaustive_mode_is_capped() {
    assert!(run(&job("(2n-1,n)->n", 2, 0, false, Mode::Exhaustive { vertices: 40 })).is_err());
}

#[test]
fn rainbow_free_triples_on_five_vertices_are_k4() {
    let c = classify_rainbow_free_triples(5);
    assert_eq!(c.disagreements, 0);
    assert!(c.rainbow_free > 0);
    assert_eq!(c.other, 0, "{:?}", c.other_examples);
}
