use std::process::Command;

fn trichar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trichar")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("trichar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn table_json_shape() {
    let (code, out, _) = trichar(&["table", "--builtin", "family=ut,n=3,q=2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"]["order"], 8);
    let mut degrees: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    degrees.sort();
    assert_eq!(degrees, [1, 1, 1, 1, 2]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn invalid_structure_exits_1() {
    let path = temp_file(
        "bad.json",
        r#"{"field":{"p":2},"algebra":{"dim":1},"group":{"orders":[2]},"actions":{"left":[[[1]]],"right":[[[1]]]}}"#,
    );
    let (code, out, _) = trichar(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn invalid_subgroup_exits_1() {
    let path = temp_file("sub.json", r#"{"j_basis":[[1,1,0]]}"#);
    let (code, _, _) =
        trichar(&["restrict", "--builtin", "family=ut,n=3,q=2", "--subgroup", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1);
}

#[test]
fn oversized_group_exits_3() {
    let (code, out, _) = trichar(&["table", "--builtin", "family=ut,n=9,q=7", "--format", "json"]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("capability"), "{out}");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(trichar(&["table"]).0, 1);
    assert_eq!(trichar(&["table", "--builtin", "family=gl,q=3"]).0, 1);
}

#[test]
fn check_all_passes() {
    let (code, out, _) = trichar(&["check-all", "--builtin", "family=ut,n=3,q=3", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
}
