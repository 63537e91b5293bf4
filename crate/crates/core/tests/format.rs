mod common;

use std::path::PathBuf;

use num::BigRational;

use normgraph::corpus::builders::shipped;
use normgraph::format::{parse_priors_exact, parse_priors_float, parse_realization, write_realization};
use normgraph::graphcore::cyclomatic_number;
use normgraph::realization::validate;
use normgraph::Error;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn round_trip_on_corpus() {
    for (name, r) in common::corpus(300) {
        let text = write_realization(&r);
        let back = parse_realization(&text).unwrap();
        assert_eq!(back, r, "{name}");
        assert_eq!(write_realization(&back), text, "{name}");
    }
}

/// Set `NORMGRAPH_WRITE_CORPUS=1` to regenerate the shipped files.
#[test]
fn shipped_files_match_builders() {
    let dir = corpus_dir();
    let write = std::env::var("NORMGRAPH_WRITE_CORPUS").is_ok();
    for (name, r) in shipped() {
        let path = dir.join(format!("{name}.json"));
        let expected = write_realization(&r);
        if write {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &expected).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, expected, "{name}");
        assert_eq!(parse_realization(&text).unwrap(), r, "{name}");
    }
}

#[test]
fn cubic_fixtures_are_cyclic_and_valid() {
    for (name, r) in shipped().into_iter().filter(|(n, _)| n.starts_with("cubic")) {
        assert!(validate(&r).is_valid(), "{name}");
        assert_eq!(cyclomatic_number(&r), 3, "{name}");
        assert!(r.internal_states().len() <= 10);
    }
}

#[test]
fn parser_rejects_bad_input() {
    let good = r#"{"alphabets": {"GF2": {"field": 2, "dim": 1}},
        "symbols": [{"id": "a", "alphabet": "GF2"}, {"id": "b", "alphabet": "GF2"}],
        "constraints": [{"id": "c", "vars": ["a", "b"], "generators": [[1, 1]]}]}"#;
    let r = parse_realization(good).unwrap();
    assert_eq!(r.constraints["c"].code.order(), 2);

    let out_of_range = good.replace("[[1, 1]]", "[[1, 2]]");
    assert!(matches!(parse_realization(&out_of_range), Err(Error::ElementOutOfRange(_))));
    let short_row = good.replace("[[1, 1]]", "[[1]]");
    assert!(matches!(parse_realization(&short_row), Err(Error::Parse(_))));
    let unknown_alphabet = good.replace(r#""alphabet": "GF2"}, {"#, r#""alphabet": "GF3"}, {"#);
    assert!(matches!(parse_realization(&unknown_alphabet), Err(Error::Parse(_))));
    let not_prime = good.replace(r#""field": 2"#, r#""field": 4"#);
    assert!(matches!(parse_realization(&not_prime), Err(Error::Parse(_))));
    assert!(matches!(parse_realization("{"), Err(Error::Parse(_))));
    let extra_key = good.replace(r#""symbols""#, r#""colour": 1, "symbols""#);
    assert!(matches!(parse_realization(&extra_key), Err(Error::Parse(_))));
    let unknown_var = good.replace(r#"["a", "b"]"#, r#"["a", "z"]"#);
    assert!(matches!(parse_realization(&unknown_var), Err(Error::UnknownVariable(_))));
}

#[test]
fn iso_matrix_round_trip_and_checks() {
    let text = r#"{"alphabets": {"Z4": {"cyclic": [4]}},
        "symbols": [{"id": "a", "alphabet": "Z4"}, {"id": "b", "alphabet": "Z4"}],
        "states": [{"id": "s", "alphabet": "Z4", "iso": [[3]]}],
        "constraints": [{"id": "c0", "vars": ["a", "s"], "generators": [[1, 1]]},
                        {"id": "c1", "vars": ["s", "b"], "generators": [[1, 1]]}]}"#;
    let r = parse_realization(text).unwrap();
    assert!(r.states["s"].iso.is_some());
    assert_eq!(parse_realization(&write_realization(&r)).unwrap(), r);
    let singular = text.replace("[[3]]", "[[2]]");
    assert!(matches!(parse_realization(&singular), Err(Error::NotAnIsomorphism)));
    let identity = text.replace("[[3]]", "[[1]]");
    assert!(parse_realization(&identity).unwrap().states["s"].iso.is_none());
}

#[test]
fn priors_parse_exactly() {
    let r = parse_realization(&std::fs::read_to_string(corpus_dir().join("rep3.json")).unwrap()).unwrap();
    let p = parse_priors_exact(r#"{"a0": [0.9, 0.1], "a1": ["1/3", "2/3"]}"#, &r).unwrap();
    assert_eq!(p["a0"], vec![BigRational::new(9.into(), 10.into()), BigRational::new(1.into(), 10.into())]);
    assert_eq!(p["a1"][0], BigRational::new(1.into(), 3.into()));
    let f = parse_priors_float(r#"{"a0": [0.9, 0.1]}"#, &r).unwrap();
    assert_eq!(f["a0"], vec![0.9, 0.1]);
    assert!(parse_priors_exact(r#"{"a0": [0.9]}"#, &r).is_err());
    assert!(parse_priors_exact(r#"{"s1": [0.5, 0.5]}"#, &r).is_err());
    assert!(parse_priors_exact(r#"{"a0": [-1, 2]}"#, &r).is_err());
}
