use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cobrouwer::format::{parse_algebra, parse_poset, write_algebra, Orientation};
use cobrouwer_core::catalog::algebras;
use cobrouwer_core::duality::cbs_isomorphic;
use cobrouwer_core::FinCbs;
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobrouwer")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(dir: &Path, args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(dir, &all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("point.poset"), "poset 1\n").unwrap();
    fs::write(dir.path().join("anti2.poset"), "poset 2\n").unwrap();
    fs::write(dir.path().join("two.cbs"), write_algebra(&FinCbs::chain(2), Orientation::Cbs)).unwrap();
    fs::write(dir.path().join("collapse.pmorph"), "pmorph anti2.poset point.poset\nmap 0 0\nmap 1 0\n").unwrap();
    dir
}

#[test]
fn free_reports_eighteen_elements() {
    let dir = workspace();
    let o = run(dir.path(), &["free", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("carrier size 18\n"));
    let v = json(dir.path(), &["free", "1"]);
    assert_eq!(v["size"], 2);
    assert_eq!(v["schema"], "v1");
    assert_eq!(run(dir.path(), &["free", "3"]).status.code(), Some(1));
}

#[test]
fn signatures_of_the_two_element_algebra() {
    let dir = workspace();
    let o = run(dir.path(), &["signatures", "two.cbs"]);
    assert_eq!(
        stdout(&o),
        "first h=0 G={}\nfirst h=0 G={1}\nfirst h=1 G={}\nsecond h1=0 h2=0 g=1\n"
    );
    assert_eq!(json(dir.path(), &["signatures", "two.cbs"])["count"], 4);
}

#[test]
fn check_reports_broken_laws() {
    let dir = workspace();
    let ok = json(dir.path(), &["check", "two.cbs"]);
    assert_eq!(ok["valid"], true);
    // Density 1 fails in every finite algebra.
    assert_eq!(ok["axioms"][1]["axiom"], "density1");
    assert_eq!(ok["axioms"][1]["satisfied"], false);

    let text = fs::read_to_string(dir.path().join("two.cbs")).unwrap();
    fs::write(dir.path().join("bad.cbs"), text.replace("diff 1 1 0", "diff 1 1 1")).unwrap();
    let o = run(dir.path(), &["check", "bad.cbs"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("violate the CBS laws") && err.contains("adjunction"), "{err}");
}

#[test]
fn usage_errors_exit_with_2() {
    let dir = workspace();
    assert_eq!(run(dir.path(), &["bogus"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["free"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["eq", "x0 v", "x0"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["extend", "two.cbs", "third h=0"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["signatures", "two.cbs", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
    // A missing file is a problem with the input, not the invocation.
    assert_eq!(run(dir.path(), &["check", "nope.cbs"]).status.code(), Some(1));
}

#[test]
fn dualize_round_trip() {
    let dir = workspace();
    let o = run(dir.path(), &["dualize", "anti2.poset", "--out", "diamond.cbs"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let diamond = parse_algebra(&fs::read_to_string(dir.path().join("diamond.cbs")).unwrap()).unwrap();
    assert_eq!(diamond.len(), 4);
    let back = run(dir.path(), &["dualize", "diamond.cbs"]);
    let p = parse_poset(&stdout(&back)).unwrap();
    assert_eq!((p.len(), p.covers().len()), (2, 0));
}

#[test]
fn orientation_round_trip_through_the_cli() {
    let dir = workspace();
    for (k, l) in algebras(5).into_iter().enumerate() {
        let name = format!("a{k}.cbs");
        fs::write(dir.path().join(&name), write_algebra(&l, Orientation::Cbs)).unwrap();
        // Dualize twice, writing the algebra in Brouwerian form.
        let poset = format!("a{k}.poset");
        assert!(run(dir.path(), &["dualize", &name, "--out", &poset]).status.success());
        let bs = format!("a{k}.bs");
        assert!(run(dir.path(), &["--orientation", "brouwerian", "dualize", &poset, "--out", &bs]).status.success());
        let text = fs::read_to_string(dir.path().join(&bs)).unwrap();
        assert!(text.starts_with("bs "));
        let read_back = parse_algebra(&text).unwrap();
        assert!(cbs_isomorphic(&read_back, &l));
        assert_eq!(parse_algebra(&write_algebra(&read_back, Orientation::Brouwerian)).unwrap(), read_back);
    }
}

#[test]
fn eq_in_both_orientations() {
    let dir = workspace();
    let v = json(dir.path(), &["eq", "x0 - (x1 v x2)", "x0 - x1 - x2"]);
    assert_eq!(v["equal"], true);
    assert!(v["countermodel"].is_null());
    let v = json(dir.path(), &["eq", "x0", "x0 - x1"]);
    assert_eq!(v["equal"], false);
    assert_eq!(v["countermodel"]["algebra"]["size"], 2);
    assert_eq!(v["countermodel"]["assignment"], serde_json::json!([1, 1]));
    let v = json(dir.path(), &["--orientation", "brouwerian", "eq", "x0 ^ x1 -> x2", "x0 -> x1 -> x2"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs"], "x0 ^ x1 -> x2");
}

#[test]
fn extend_writes_a_bundle() {
    let dir = workspace();
    let o = run(dir.path(), &["extend", "two.cbs", "second h1=0 h2=0 g=1", "--out", "ext"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let ext = parse_algebra(&fs::read_to_string(dir.path().join("ext/extension.cbs")).unwrap()).unwrap();
    assert_eq!(ext.len(), 4);
    let hom = cobrouwer::format::load_hom(&dir.path().join("ext/embed.hom")).unwrap();
    assert!(hom.is_injective());
    let v = json(dir.path(), &["extend", "two.cbs", "first h=0 G={1}"]);
    assert_eq!(v["kind"], "first");
    assert_eq!(v["extension"]["size"], 3);
}

#[test]
fn witnesses_and_certificates() {
    let dir = workspace();
    let o = run(dir.path(), &["witness", "splitting", "two.cbs", "1", "0", "0", "--out", "w"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("w/certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["axiom"], "splitting");
    assert!(cert["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    assert_eq!(json(dir.path(), &["witness", "density1", "two.cbs", "1"])["certificate"]["witnesses"]["b"], 2);
    // 1 << 1 fails, so the precondition does.
    let o = run(dir.path(), &["witness", "density2", "two.cbs", "1", "1", "1", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(dir.path(), &["witness", "density1", "two.cbs", "7"]).status.code(), Some(2));
}

#[test]
fn realize_verifies_the_signature() {
    let dir = workspace();
    let v = json(dir.path(), &["realize", "two.cbs", "second h1=0 h2=0 g=1"]);
    let cert = &v["certificate"];
    assert_eq!(cert["verified"], true);
    assert_eq!(cert["recovered"]["text"], "second h1=0 h2=0 g=1");
    assert!(cert["depth"].as_u64() <= cert["bound"].as_u64());
}

#[test]
fn decompose_and_amalgamate() {
    let dir = workspace();
    let v = json(dir.path(), &["decompose", "collapse.pmorph"]);
    assert_eq!(v["length"], 1);
    assert_eq!(v["factors"][0]["kind"], "second");
    let o = run(dir.path(), &["amalgamate", "collapse.pmorph", "collapse.pmorph", "--out", "am"]);
    assert_eq!(o.status.code(), Some(0));
    let s = parse_poset(&fs::read_to_string(dir.path().join("am/s.poset")).unwrap()).unwrap();
    assert_eq!(s.len(), 4);
    let leg = cobrouwer::format::load_pmorphism(&dir.path().join("am/f_prime.pmorph")).unwrap();
    assert!(leg.is_surjective());
    let v = json(dir.path(), &["decompose", "am/f_prime.pmorph"]);
    assert_eq!(v["length"], 2);
}

#[test]
fn dot_output() {
    let dir = workspace();
    let o = run(dir.path(), &["dot", "two.cbs"]);
    assert!(stdout(&o).contains("n0 -> n1;"));
    let o = run(dir.path(), &["dot", "point.poset"]);
    assert_eq!(stdout(&o).matches(" -> ").count(), 0);
}

#[test]
fn json_is_byte_stable() {
    let dir = workspace();
    for args in [&["free", "2"][..], &["check", "two.cbs"], &["realize", "two.cbs", "first h=0 G={1}"]] {
        let a = run(dir.path(), &[args, &["--json"]].concat());
        let b = run(dir.path(), &[args, &["--json"]].concat());
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema"], "v1");
    }
}
