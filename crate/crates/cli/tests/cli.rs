use std::process::{Command, Output};

fn augvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augvar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

const SCHW: [&str; 7] = ["quantity", "--theory", "hilbert", "--solution", "schwarzschild", "--vacuum", "minkowski-spherical"];

#[test]
fn catalog_lists_theories() {
    let o = augvar(&["catalog"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["hilbert", "yang_mills", "chern_simons_so3_3d"] {
        assert!(s.contains(name), "{name}");
    }
    let mech = s.split("mechanics:").nth(1).unwrap();
    assert!(mech.contains("spring_pair"));
    let rows = json(&augvar(&["catalog", "--json"]));
    assert!(rows.as_array().unwrap().iter().all(|r| r["order"].as_u64().unwrap() <= 2));
}

#[test]
fn appendix_a_values() {
    for w in ["0", "5"] {
        let v = json(&augvar(&["appendix-a", "--m", "1", "--k", "1", "--w", w, "--a1", "1", "--a2", "2", "--json"]));
        assert_eq!(v["difference"], 6.0);
        assert_eq!(v["omega2"], 2.0);
        assert!(v["spread"].as_f64().unwrap() <= 1e-12);
    }
    let v = json(&augvar(&["appendix-a", "--a1", "1.5", "--a2", "1.5", "--json"]));
    assert_eq!(v["difference"], 0.0);
    assert_eq!(augvar(&["appendix-a", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn schwarzschild_with_radii() {
    let mut args = SCHW.to_vec();
    args.extend(["--radii", "50,100,200", "--json"]);
    let v = json(&augvar(&args));
    assert_eq!(v["radii"].as_array().unwrap().len(), 3);
    let limit = v["value"].as_f64().unwrap();
    assert!((limit - 16.0 * std::f64::consts::PI).abs() < 1e-3, "{limit}");
}

#[test]
fn vacuum_against_itself_is_zero() {
    let o = augvar(&["quantity", "--theory", "hilbert", "--solution", "minkowski-spherical", "--vacuum", "minkowski-spherical", "--r", "10", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["value"], 0.0);
}

#[test]
fn output_is_deterministic_and_written() {
    let dir = std::env::temp_dir().join(format!("augvar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    let mut args = SCHW.to_vec();
    args.extend(["--r", "30", "--out", path.to_str().unwrap()]);
    let a = augvar(&args);
    let b = augvar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["theory"], "hilbert");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gauge_generator_flag() {
    let o = augvar(&[
        "quantity", "--theory", "yang_mills", "--solution", "coulomb", "--vacuum", "abelian-vacuum", "--xi", "0,0,0,0", "--xi-gauge", "1",
        "--r", "5", "--set", "q=2", "--json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o)["value"].as_f64().unwrap();
    assert!((v.abs() - 8.0 * std::f64::consts::PI).abs() < 1e-9, "{v}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| augvar(args).status.code();
    assert_eq!(code(&["quantity", "--theory", "nope", "--solution", "schwarzschild", "--vacuum", "minkowski-spherical", "--r", "5"]), Some(3));
    assert_eq!(code(&["quantity", "--theory", "hilbert", "--solution", "nowhere", "--vacuum", "minkowski-spherical", "--r", "5"]), Some(3));
    let mut singular = SCHW.to_vec();
    singular.extend(["--r", "2"]);
    assert_eq!(code(&singular), Some(4));
    let mut bad = SCHW.to_vec();
    bad.extend(["--r", "5", "--xi", "1,(,0,0"]);
    assert_eq!(code(&bad), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["verify", "bogus"]), Some(3));
}

#[test]
fn unknown_suite_lists_available() {
    let o = augvar(&["verify", "bogus"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("appendix-a") && err.contains("stokes"), "{err}");
}

#[test]
fn verify_appendix_a() {
    let o = augvar(&["verify", "appendix-a", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    for c in v[0]["checks"].as_array().unwrap() {
        assert!(c["residual"].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn describe_with_solution() {
    let o = augvar(&["describe", "--theory", "yang_mills", "--solution", "coulomb"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("p[A_0,t]^{r}"));
    assert_eq!(augvar(&["describe", "--theory", "nope"]).status.code(), Some(3));
}

#[test]
fn field_file_solutions() {
    let dir = std::env::temp_dir().join(format!("augvar-ff-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("flat.toml");
    std::fs::write(
        &good,
        r#"name = "flat"
description = "flat space in spherical coordinates"
[chart]
coords = ["t", "r", "theta", "phi"]
ranges = [[-1.0, 1.0], [3.0, 20.0], [0.3, 2.8], [0.0, 6.28]]
signature = "-+++"
[[fields]]
name = "g"
role = "metric"
[fields.components]
"t,t" = "-1"
"r,r" = "1"
"theta,theta" = "r^2"
"phi,phi" = "r^2*sin(theta)^2"
"#,
    )
    .unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "name = \n").unwrap();
    let g = good.to_str().unwrap();
    let o = augvar(&["quantity", "--theory", "hilbert", "--solution", g, "--vacuum", "minkowski-spherical", "--r", "7", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["value"], 0.0);
    let b = bad.to_str().unwrap();
    assert_eq!(augvar(&["quantity", "--theory", "hilbert", "--solution", b, "--vacuum", g, "--r", "7"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
