use std::path::PathBuf;

use assert_cmd::Command;
use pmtk_core::premetric::FormSpec;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn pmtk() -> Command {
    let mut c = Command::cargo_bin("pmtk").unwrap();
    c.env_remove("PMTK_ORDER_CAP");
    c
}

fn json_of(args: &[&str]) -> Value {
    let out = pmtk().arg("--format").arg("json").args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_hyperbolic_plane() {
    let v = json_of(&["pmg", "analyze", &data("hyper2.json")]);
    let r = &v["results"][0];
    assert_eq!(r["light_cone_size"], 3);
    assert_eq!(r["radical"]["order"], 1);
    assert_eq!(r["coradical"]["order"], 4);
    assert_eq!(r["reductive"], true);
    assert_eq!(v["provenance"]["radical"], "radical_subgroup");
}

#[test]
fn iso_of_the_hyperbolic_and_f_pairs_comes_with_a_map() {
    let v = json_of(&["pmg", "iso", &data("hh.json"), &data("ff.json")]);
    let r = &v["results"][0];
    assert_eq!(r["isomorphic"], true);
    // the map sends generators to elements preserving q
    let hh: FormSpec = serde_json::from_str(&std::fs::read_to_string(data("hh.json")).unwrap()).unwrap();
    let ff: FormSpec = serde_json::from_str(&std::fs::read_to_string(data("ff.json")).unwrap()).unwrap();
    let (hh, ff) = (hh.build().unwrap(), ff.build().unwrap());
    let map = r["map"].as_array().unwrap();
    assert_eq!(map.len(), 4);
    for pair in map {
        let from: Vec<u64> = serde_json::from_value(pair["from"].clone()).unwrap();
        let to: Vec<u64> = serde_json::from_value(pair["to"].clone()).unwrap();
        assert_eq!(hh.eval_q(&from).unwrap(), ff.eval_q(&to).unwrap());
    }
    let v = json_of(&["pmg", "iso", &data("hyper2.json"), &data("f1.json")]);
    assert_eq!(v["results"][0]["isomorphic"], false);
}

#[test]
fn orbit_count_for_p3() {
    let out = pmtk().args(["--format", "text", "dbl", "orbits", "--p", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("orbits: 4\n"));
}

#[test]
fn doubles_reports() {
    let v = json_of(&["dbl", "lagrangians", &data("d3.json")]);
    assert_eq!(v["results"][0]["total"], 2);
    let v = json_of(&["dbl", "lagrangians", &data("z4.json")]);
    assert_eq!(v["results"][0]["total"], 3);
    let v = json_of(&["dbl", "radical", &data("d3_inflated.json")]);
    assert_eq!(v["results"][0]["radical_group_order"], 2);
    assert_eq!(v["results"][0]["mantle_group_order"], 3);
    let v = json_of(&["dbl", "support", &data("e8_typeIII.json")]);
    assert_eq!(v["results"][0]["weight"], 1);
    assert_eq!(v["results"][0]["reductive_nonpointed"], true);
    let v = json_of(&["dbl", "omega", &data("z4.json"), "--subgroup", "0,2"]);
    assert_eq!(v["results"][1]["in_omega"], true);
}

#[test]
fn cyclic_cohomology_command() {
    let v = json_of(&["cohom", "cyclic", "--m", "2", "--module", "units", "--degree", "3"]);
    assert_eq!(v["results"][0]["order"], 2);
    let v = json_of(&["cohom", "cyclic", "--m", "2", "--module", "6", "--action", "[[-1]]", "--degree", "2"]);
    assert_eq!(v["results"][0]["order"], 2);
}

#[test]
fn exit_codes() {
    pmtk().args(["pmg", "analyze", &data("broken.json")]).assert().code(2);
    pmtk().args(["pmg", "nonsense"]).assert().code(2);
    pmtk().args(["pmg", "analyze", &data("d3.json")]).assert().code(2);
    pmtk().args(["pmg", "classify", &data("hyper2.json")]).assert().code(1);
    pmtk().args(["pmg", "classify2", &data("gap.json")]).assert().code(1);
    pmtk().args(["cohom", "cyclic", "--m", "2", "--module", "5", "--action", "[[2]]", "--degree", "2"]).assert().code(1);
    pmtk().env("PMTK_ORDER_CAP", "2").args(["dbl", "lagrangians", &data("z4.json")]).assert().code(1);
    pmtk().env("PMTK_ORDER_CAP", "zero").args(["dbl", "lagrangians", &data("z4.json")]).assert().code(2);
}

#[test]
fn output_is_deterministic() {
    let run = || pmtk().args(["pmg", "analyze", &data("split.json"), &data("row5.json")]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn structured_forms_round_trip() {
    let v = json_of(&["pmg", "mantle", &data("split.json")]);
    let mantle = &v["results"][0]["mantle_form"];
    let dir = std::env::temp_dir().join(format!("pmtk-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mantle.json");
    std::fs::write(&path, serde_json::to_string(mantle).unwrap()).unwrap();
    let again = json_of(&["pmg", "analyze", path.to_str().unwrap()]);
    assert_eq!(&again["results"][0]["q_gens"], &mantle["q_gens"]);
    assert_eq!(again["results"][0]["group"], mantle["group"]["invariant_factors"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn numbers_in_text_appear_in_structured_block() {
    let out = pmtk().args(["pmg", "classify", &data("row5.json")]).output().unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    let (text, json) = s.split_once("--- structured ---\n").unwrap();
    let compact: String = json.chars().filter(|c| !c.is_whitespace()).collect();
    for line in text.lines().skip(2) {
        let value = line.split_once(": ").unwrap().1;
        for token in value.split([',', ' ', '(', ')', 'x']).filter(|t| t.chars().any(|c| c.is_ascii_digit())) {
            let bare = token.trim_start_matches("Z/");
            assert!(compact.contains(bare), "{bare} from {line:?} missing in the structured block");
        }
    }
}
