use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Workspace { dir: tempfile::tempdir().unwrap() };
        ws.write("path3.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
        ws.write("k2.json", r#"{"vertices":["u","v"],"edges":[["u","v"]]}"#);
        ws.write("swap.json", r#"{"perm":{"u":"v","v":"u"}}"#);
        ws.write(
            "complete-shift.json",
            r#"{"kind":"periodic_shift","template":["x"],"offsets":{"x|x":"ALL_NONZERO"}}"#,
        );
        ws.write("edgeless-shift.json", r#"{"kind":"periodic_shift","template":["x"],"offsets":{}}"#);
        ws.write(
            "k3-rotation.json",
            r#"{"kind":"finite_perm",
                "graph":{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]},
                "generators":[{"a":"b","b":"c","c":"a"}]}"#,
        );
        ws.write("houghton3.json", r#"{"kind":"houghton_complete","n":3}"#);
        ws.write("c2.json", r#"{"generators":["a"],"relators":[["a","a"]]}"#);
        ws.write("z.json", r#"{"generators":["t"],"relators":[]}"#);
        ws.write("z3.json", r#"{"generators":["h"],"relators":[["h","h","h"]]}"#);
        ws.write("element.json", r#"{"n":2,"t":[-1,1],"correction":{"1,1":"2,1"}}"#);
        ws
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.dir.path().join(name), text).unwrap();
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_wreathlab"))
            .args(args)
            .current_dir(self.dir.path())
            .env_remove("WREATHLAB_CAP")
            .output()
            .unwrap()
    }

    fn stdout(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    }
}

#[test]
fn raag_homology_of_a_path() {
    let ws = Workspace::new();
    assert_eq!(ws.stdout(&["raag", "--graph", "path3.json", "--dim", "2"]), "H_2 = Z^2\n");
    assert_eq!(ws.stdout(&["raag", "--graph", "path3.json", "--dim", "1"]), "H_1 = Z^3\n");
    assert_eq!(ws.stdout(&["raag", "--graph", "path3.json", "--dim", "3"]), "H_3 = 0\n");
}

#[test]
fn nakaoka_check_on_the_swap() {
    let ws = Workspace::new();
    let out = ws.stdout(&["nakaoka", "--graph", "k2.json", "--phi", "swap.json", "--dim", "2", "--check"]);
    assert_eq!(out, "Z + Z/2, oracle agreement: OK\n");
    let out = ws.stdout(&["wang", "--graph", "k2.json", "--phi", "swap.json", "--dim", "2"]);
    assert_eq!(out, "H_2 = Z + Z/2\n");
}

#[test]
fn baumslag_verdict_cites_orbit_condition() {
    let ws = Workspace::new();
    let out = ws.stdout(&["classify", "--A", "catalog:Z", "--H", "catalog:Z", "--action", "complete-shift.json", "--n", "2"]);
    assert!(out.contains("certified F_1, refuted F_2"), "{out}");
    assert!(out.contains("finitely many orbits of vertices and edges"));
    let json = ws.stdout(&[
        "--format", "json", "classify", "--A", "catalog:C2", "--H", "catalog:Z", "--action", "complete-shift.json", "--n", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["certified"], 1);
    assert_eq!(v["refuted"], 2);
}

#[test]
fn houghton_catalog_verdict() {
    let ws = Workspace::new();
    let out = ws.stdout(&["classify", "--A", "catalog:Z", "--H", "catalog:houghton:3", "--action", "houghton3.json", "--n", "4"]);
    assert!(out.contains("certified F_2, refuted F_3"), "{out}");
}

#[test]
fn presentation_and_abelianization() {
    let ws = Workspace::new();
    let json = ws.stdout(&[
        "--format", "json", "present", "--A", "c2.json", "--H", "z.json", "--action", "edgeless-shift.json",
    ]);
    ws.write("wreath.json", &json);
    assert_eq!(ws.stdout(&["abelianize", "--group", "wreath.json"]), "Z + Z/2\n");

    let json = ws.stdout(&[
        "--format", "json", "present", "--A", "z.json", "--H", "z3.json", "--action", "k3-rotation.json",
    ]);
    ws.write("finite.json", &json);
    assert_eq!(ws.stdout(&["abelianize", "--group", "finite.json"]), "Z + Z/3\n");
}

#[test]
fn clique_and_orbit_listings() {
    let ws = Workspace::new();
    assert_eq!(ws.stdout(&["cliques", "--graph", "path3.json", "--dim", "2"]), "2 clique(s) of size 2\n(a,b)\n(b,c)\n");
    let out = ws.stdout(&["orbits", "--action", "k3-rotation.json", "--dim", "2"]);
    assert!(out.starts_with("orbits of 2-cliques: 1\n"), "{out}");
    let out = ws.stdout(&["orbits", "--action", "complete-shift.json", "--dim", "2"]);
    assert!(out.starts_with("orbits of 2-cliques: INFINITE\n"), "{out}");
    let out = ws.stdout(&["stabilizer", "--action", "k3-rotation.json", "--clique", "a", "b", "c"]);
    assert!(out.contains("finite of order 3"), "{out}");
}

#[test]
fn star_check_and_polyprod() {
    let ws = Workspace::new();
    let out = ws.stdout(&["star-check", "--graph", "path3.json"]);
    assert!(out.ends_with(": true\n"), "{out}");
    let out = ws.stdout(&["star-check", "--graph", "path3.json", "--model", "projective_plane"]);
    assert!(out.ends_with(": false\n"), "{out}");
    let json = ws.stdout(&["--format", "json", "polyprod", "--graph", "k2.json"]);
    ws.write("torus.json", &serde_json::from_str::<serde_json::Value>(&json).unwrap()["complex"].to_string());
    assert_eq!(ws.stdout(&["homology", "--complex", "torus.json"]), "H_0 = Z\nH_1 = Z^2\nH_2 = Z\n");
}

#[test]
fn houghton_element_and_witness() {
    let ws = Workspace::new();
    let out = ws.stdout(&["houghton", "--element", "element.json", "--window", "2"]);
    assert_eq!(out.lines().count(), 3, "{out}");
    let out = ws.stdout(&["houghton", "--n", "2", "--source", "1,1", "--target", "2,3"]);
    assert!(out.starts_with("witness: "), "{out}");
}

#[test]
fn output_is_deterministic() {
    let ws = Workspace::new();
    let args = ["--format", "json", "orbits", "--action", "k3-rotation.json", "--dim", "2"];
    assert_eq!(ws.run(&args).stdout, ws.run(&args).stdout);
    let args = ["present", "--A", "c2.json", "--H", "z3.json", "--action", "k3-rotation.json"];
    assert_eq!(ws.run(&args).stdout, ws.run(&args).stdout);
}

#[test]
fn exit_codes_follow_error_classes() {
    let ws = Workspace::new();
    // Bad input file: 1.
    assert_eq!(ws.run(&["raag", "--graph", "missing.json", "--dim", "1"]).status.code(), Some(1));
    // Violated precondition: 1, with the precondition named.
    ws.write("ab.json", r#"{"perm":{"a":"b","b":"a"}}"#);
    let out = ws.run(&["nakaoka", "--graph", "path3.json", "--phi", "ab.json", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("automorphism"));
    // Group order cap: 2.
    let out = ws.run(&["--cap", "2", "orbits", "--action", "k3-rotation.json", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_wreathlab"))
        .args(["orbits", "--action", "k3-rotation.json", "--dim", "1"])
        .current_dir(ws.dir.path())
        .env("WREATHLAB_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Unknown flags are rejected.
    assert_ne!(ws.run(&["raag", "--graph", "path3.json", "--dim", "1", "--bogus"]).status.code(), Some(0));
}
