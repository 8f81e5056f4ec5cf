mod common;

use std::collections::BTreeSet;

use godel_core::corpus::{generate, CorpusKind};
use godel_core::reductions::{
    catalog, catalog_cn_limn, catalog_liminf_minhat, catalog_limn_cn, check_reduction, identity,
    lookup, mutate, MutantMode, Witness,
};
use godel_core::{Answer, Instance, Problem, SeqDescriptor};

use common::{context, lit, universe};

fn literal_corpus(n: usize) -> Vec<Instance> {
    generate(CorpusKind::LiteralSequences, n, 3, &universe()).instances()
}

#[test]
fn identity_passes() {
    let cx = context();
    let corpus = literal_corpus(30);
    for f in [Problem::LimN, Problem::Inf, Problem::ClN, Problem::Min] {
        let report = check_reduction(&identity(f), &corpus, "literal", &cx);
        assert!(report.pass, "{}", f.name());
        assert!(report.reverified);
    }
}

#[test]
fn constant_answer_breaks_identity() {
    let cx = context();
    let corpus = vec![
        Instance::Seq(SeqDescriptor::constant(0)),
        Instance::Seq(SeqDescriptor::constant(3)),
    ];
    let r = mutate(&identity(Problem::LimN), MutantMode::ConstantAnswer);
    let report = check_reduction(&r, &corpus, "two", &cx);
    assert!(!report.pass);
    let (id, w) = report.witnesses().next().unwrap();
    assert_eq!(id, 1);
    assert!(matches!(w, Witness::Unverified { outer_answer, .. } if outer_answer == "0"));
}

#[test]
fn mutants_change_behaviour() {
    let cx = context();
    let x = Instance::Seq(lit(&[2, 0], 1));
    for r in catalog().into_iter().filter(|r| r.f == Problem::LimN) {
        let y = (r.k)(&x, &cx).unwrap();
        let a = r.g.solve_ref(&y, &cx).unwrap();
        let honest = (r.h)(&x, &a, &cx).unwrap();
        for mode in [MutantMode::ConstantAnswer, MutantMode::OffByOne] {
            let m = mutate(&r, mode);
            assert_ne!((m.h)(&x, &a, &cx).unwrap(), honest, "{}", m.name);
        }
        assert!(mutate(&r, MutantMode::ShiftDown).name.ends_with("~shift-down"));
    }
}

#[test]
fn cn_limn_guesses_the_least_free_value() {
    let cx = context();
    let x = Instance::Seq(lit(&[0, 2, 1, 5], 3));
    let y = (catalog_cn_limn().k)(&x, &cx).unwrap();
    assert_eq!(y, Instance::Seq(lit(&[1, 1, 3, 3], 4)));
    let report = check_reduction(&catalog_cn_limn(), &literal_corpus(60), "literal", &cx);
    assert!(report.pass);
    assert_eq!(report.skipped, 0);
}

#[test]
fn limn_cn_leaves_out_only_the_limit() {
    let cx = context();
    let x = Instance::Seq(lit(&[4, 4, 1], 2));
    let y = (catalog_limn_cn().k)(&x, &cx).unwrap();
    let answers: Vec<u64> = Problem::Cn
        .enumerate_answers(&y, &cx)
        .iter()
        .filter_map(Answer::as_nat)
        .collect();
    assert!(!answers.is_empty());
    for a in answers {
        let (v, s) = godel_core::numbering::unpair(a);
        assert_eq!(v, 2);
        assert!(s >= 3);
    }
}

#[test]
fn liminf_pipeline_matches_reference() {
    let cx = context();
    let r = catalog_liminf_minhat();
    for x in literal_corpus(50) {
        let y = (r.k)(&x, &cx).unwrap();
        let via = Problem::LimMinHat.solve_ref(&y, &cx).unwrap();
        assert_eq!(Some((r.h)(&x, &via, &cx).unwrap()), Problem::LiminfN.solve_ref(&x, &cx), "{x}");
    }
}

#[test]
fn out_of_domain_instances_are_skipped() {
    let cx = context();
    let corpus = vec![Instance::Seq(SeqDescriptor::literal(vec![], godel_core::spaces::Tail::Periodic(vec![0, 1])).unwrap())];
    let report = check_reduction(&catalog_limn_cn(), &corpus, "periodic", &cx);
    assert_eq!((report.checked, report.skipped), (0, 1));
}

#[test]
fn catalog_names_are_unique_and_found() {
    let names: Vec<String> = catalog().into_iter().map(|r| r.name).collect();
    let distinct: BTreeSet<&String> = names.iter().collect();
    assert_eq!(distinct.len(), names.len());
    for n in &names {
        assert_eq!(&lookup(n).unwrap().name, n);
    }
    assert_eq!(lookup("identity:lim_n").unwrap().f, Problem::LimN);
    assert!(lookup("nonsense").is_none());
    assert!(catalog().iter().all(|r| r.mutants.len() >= 2));
}

#[test]
fn lpo_normalization() {
    let cx = context();
    let r = godel_core::reductions::catalog_lpo_kol();
    let x = Instance::Seq(lit(&[0, 0, 1], 0));
    let y = (r.k)(&x, &cx).unwrap();
    assert_eq!(y, Instance::Seq(lit(&[0, 0], 1)));
    assert_eq!((r.k)(&y, &cx).unwrap(), y);
    let kol = Problem::Kol.solve_ref(&y, &cx).unwrap();
    assert_ne!(kol.as_index().unwrap().as_u64(), Some(1));
    assert_eq!((r.h)(&x, &kol, &cx).unwrap(), Answer::Nat(0));
}

#[test]
fn lpo_without_normalization_still_decides() {
    // Kol(p) is the index of 0̂ only for p = 0̂, normalized or not.
    let cx = context();
    let r = mutate(&godel_core::reductions::catalog_lpo_kol(), MutantMode::DropPreprocessing);
    let corpus = vec![
        Instance::Seq(lit(&[1], 0)),
        Instance::Seq(SeqDescriptor::zero()),
        Instance::Seq(lit(&[0, 0, 0, 2, 5], 1)),
    ];
    assert!(check_reduction(&r, &corpus, "lpo", &cx).pass);
}
