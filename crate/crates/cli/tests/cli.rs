use std::process::{Command, Output};

fn liaison(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liaison"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn surface_list_and_show() {
    let o = liaison(&["surface", "list"]);
    assert!(o.status.success());
    let ids = stdout(&o);
    for id in ["cubic_scroll", "del_pezzo_4", "castelnuovo_5", "bordiga_6"] {
        assert!(ids.lines().any(|l| l == id), "{id} missing");
    }
    let o = liaison(&["surface", "show", "del_pezzo_4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 4);
    assert_eq!(v["lines"].as_array().unwrap().len(), 16);
}

#[test]
fn divisor_eval_numbers() {
    let o = liaison(&["divisor", "eval", "castelnuovo_5", "(5;3,1^7)", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 7);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["class"], "(5;3,1^7)");
}

#[test]
fn bad_inputs_exit_2() {
    for args in [
        vec!["surface", "show", "no_such_surface"],
        vec!["divisor", "eval", "del_pezzo_4", "3,1"],
        vec!["divisor", "eval", "del_pezzo_4", "3,x,1,1,1,1"],
        vec!["biliaison", "chain", "--target", "10"],
        vec!["biliaison", "chain", "--target", "4,0", "--surfaces", "nowhere"],
        vec!["experiment", "run", "nope"],
        vec!["experiment", "run", "ex3.2", "--surfaces", ""],
        vec!["glicci", "--points", "0"],
        vec!["frobnicate"],
    ] {
        let o = liaison(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn chain_found_and_exhausted() {
    let o = liaison(&["biliaison", "chain", "--target", "10,6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("found").is_some(), "{v}");

    let o = liaison(&["biliaison", "chain", "--target", "3,5", "--max-steps", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no chain"));
}

#[test]
fn glicci_points() {
    let o = liaison(&["glicci", "--points", "6", "--ambient", "p3", "--mode", "descending"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("degrees [6, 2, 1]"));
}

#[test]
fn experiment_list_and_run() {
    let o = liaison(&["experiment", "list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 16);

    let o = liaison(&["experiment", "run", "ex4.3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["id"], "ex4.3");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn custom_catalog_file() {
    let dir = std::env::temp_dir().join(format!("liaison-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(&path, liaison_core::Catalog::builtin().to_json()).unwrap();
    let o = liaison(&["--catalog", path.to_str().unwrap(), "surface", "list"]);
    assert!(o.status.success());
    std::fs::write(&path, "{not json").unwrap();
    let o = liaison(&["--catalog", path.to_str().unwrap(), "surface", "list"]);
    assert_eq!(o.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}
