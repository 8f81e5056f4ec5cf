mod common;

use godel_core::corpus::{generate, Corpus, CorpusKind};
use godel_core::{Instance, Problem, RunConfig};

use common::{context, seq, universe};

#[test]
fn generation_is_deterministic() {
    let u = universe();
    for kind in CorpusKind::ALL {
        let a = generate(kind, 10, 7, &u).to_string();
        assert_eq!(a, generate(kind, 10, 7, &u).to_string(), "{kind}");
        assert_eq!(a.parse::<Corpus>().unwrap().to_string(), a);
    }
}

#[test]
fn instances_fall_inside_their_problems() {
    let cx = context();
    for kind in CorpusKind::ALL {
        for e in generate(kind, 40, 1, &cx.universe).entries {
            assert!(e.problem.domain_check(&e.instance, &cx), "{kind}: {e}");
        }
    }
}

#[test]
fn bounded_monotone_is_monotone() {
    let u = universe();
    for x in generate(CorpusKind::BoundedMonotone, 100, 3, &u).instances() {
        let v = seq(&x).values(40).unwrap();
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn lpo_mixed_has_both_kinds() {
    let u = universe();
    let zero: Vec<bool> = generate(CorpusKind::LpoMixed, 20, 9, &u)
        .instances()
        .iter()
        .map(|x| seq(x).is_zero_literal().unwrap())
        .collect();
    assert!(zero.contains(&true) && zero.contains(&false));
}

#[test]
fn total_programs_are_total_on_the_window() {
    let u = universe();
    let corpus = generate(CorpusKind::TotalPrograms, 50, 2, &u);
    assert_eq!(corpus.len(), 50);
    for e in corpus.entries {
        assert_eq!(e.problem, Problem::Kol);
        let Instance::Seq(d) = e.instance else { panic!() };
        assert!(d.values(u.cfg().window).is_ok());
    }
}

#[test]
fn config_overrides_reach_the_context() {
    let cfg: RunConfig = "cap=100\nwindow=4\nindex_bound=20\nceiling=50\ncomponents=2".parse().unwrap();
    let cx = cfg.context();
    assert_eq!((cx.ceiling, cx.components), (50, 2));
    assert_eq!(cx.universe.size(), 21);
}
