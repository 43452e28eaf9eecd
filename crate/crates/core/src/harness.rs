//! Entry points shared by the fuzz targets and the corpus replay test. Each one
//! feeds untrusted text to a parser and panics only if an invariant breaks:
//! whatever parses must print back to text that parses to the same value.

use crate::amplify::ExperimentConfig;
use crate::descriptor::{parse_table_json, GroupDesc, MetricDesc, ProductDesc, WreathDesc};
use crate::metric::{format_rational, parse_rational};
use crate::words::{FreeWord, WordSet};
use std::fmt::Display;
use std::str::FromStr;

/// Cap used when fuzzed input builds a group.
pub const FUZZ_CAP: usize = 4096;

fn round_trip<T: FromStr + Display + PartialEq + std::fmt::Debug>(s: &str) -> Option<T> {
    let v: T = s.parse().ok()?;
    let printed = v.to_string();
    match printed.parse::<T>() {
        Ok(again) => assert_eq!(again, v, "{:?} printed as {:?}", s, printed),
        Err(_) => panic!("{:?} printed as {:?}, which does not parse", s, printed),
    }
    Some(v)
}

pub fn group_desc(s: &str) {
    if let Some(d) = round_trip::<GroupDesc>(s) {
        // Table descriptors name files; only the closed-form families are built.
        if !matches!(d, GroupDesc::Table(_)) {
            if let Ok(g) = d.build(FUZZ_CAP) {
                assert!(g.order() <= FUZZ_CAP);
            }
        }
    }
}

pub fn product_desc(s: &str) {
    round_trip::<ProductDesc>(s);
}

pub fn wreath_desc(s: &str) {
    round_trip::<WreathDesc>(s);
}

pub fn metric_desc(s: &str) {
    if let Some(m) = round_trip::<MetricDesc>(s) {
        let _ = m.validate();
    }
}

pub fn table_json(s: &str) {
    if let Ok(g) = parse_table_json(s, FUZZ_CAP) {
        // Tables are validated on construction; rescan the small ones exhaustively.
        assert!(g.order() > 64 || g.associativity_scan());
    }
}

pub fn word_set(s: &str) {
    round_trip::<WordSet>(s);
    round_trip::<FreeWord>(s);
}

pub fn experiment_config(s: &str) {
    if let Ok(cfg) = ExperimentConfig::from_json(s) {
        let text = serde_json::to_string(&cfg).expect("config serializes");
        assert_eq!(ExperimentConfig::from_json(&text).expect("config reparses"), cfg);
    }
}

pub fn rational(s: &str) {
    if let Ok(r) = parse_rational(s) {
        assert_eq!(parse_rational(&format_rational(&r)).expect("reparses"), r);
    }
}

/// Dispatch by target name, for replaying corpus directories.
pub fn run(target: &str, data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    match target {
        "group_desc" => group_desc(s),
        "product_desc" => product_desc(s),
        "wreath_desc" => wreath_desc(s),
        "metric_desc" => metric_desc(s),
        "table_json" => table_json(s),
        "word_set" => word_set(s),
        "experiment_config" => experiment_config(s),
        "rational" => rational(s),
        _ => panic!("unknown fuzz target {}", target),
    }
}

pub const TARGETS: [&str; 8] =
    ["group_desc", "product_desc", "wreath_desc", "metric_desc", "table_json", "word_set", "experiment_config", "rational"];
