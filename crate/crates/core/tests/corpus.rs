use std::path::PathBuf;

use canring::ring::parse_ideal_file;
use canring::strata::{build, StratumInstance, StratumKind};
use canring::{GbOptions, PrimeField};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn stored(kind: StratumKind) -> String {
    let path = corpus_dir().join(format!("{}.ideal", kind.name()));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn seed_one_instances_match_the_corpus() {
    for kind in StratumKind::ALL {
        let inst = build(kind, PrimeField::default(), 1).unwrap();
        assert_eq!(inst.to_ideal_file(), stored(kind), "{kind}");
    }
}

#[test]
fn corpus_files_round_trip_and_match_their_ambient_rings() {
    for kind in StratumKind::ALL {
        let text = stored(kind);
        let file = parse_ideal_file(&text, PrimeField::default()).unwrap();
        let again = canring::ring::print_ideal_file(&file.ring, &file.generators);
        assert_eq!(again, text, "{kind}");
        let ideal = canring::Ideal::new(&file.ring, file.generators).unwrap();
        let inst = StratumInstance::from_ideal(kind, ideal).unwrap();
        let built = build(kind, PrimeField::default(), 1).unwrap();
        assert!(inst.ideal.equals(&built.ideal, &GbOptions::full()).unwrap(), "{kind}");
    }
}
