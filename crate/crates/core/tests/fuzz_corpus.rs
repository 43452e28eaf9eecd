//! Replays the checked-in fuzz corpus through the same entry points the fuzz
//! targets use, so parser regressions surface under `cargo test`.

use std::path::Path;
use verbalforge::harness::{run, TARGETS};

#[test]
fn corpus_replays_cleanly() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    for target in TARGETS {
        let dir = root.join(target);
        let mut seen = 0;
        for entry in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {}", dir.display(), e)) {
            let data = std::fs::read(entry.unwrap().path()).unwrap();
            run(target, &data);
            seen += 1;
        }
        assert!(seen > 0, "empty corpus for {}", target);
    }
}

#[test]
fn arbitrary_bytes_do_not_panic() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let alphabet = b"cyclicsymdihedralklein4trivialproductwreathnilsolburnsidewords:x1^-2;(),=0123456789 {}\"/.";
    for _ in 0..4000 {
        let len = rng.gen_range(0..40);
        let data: Vec<u8> = (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
        for target in TARGETS {
            run(target, &data);
        }
    }
}
