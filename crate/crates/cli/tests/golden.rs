// Copyright 2026 The bellsym Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Golden-file tests for every command. Set `BELLSYM_BLESS=1` to rewrite the
//! expected files after an intended output change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn bellsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellsym")).args(args).current_dir(golden_dir()).output().expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = bellsym(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = golden_dir().join(name);
    if std::env::var_os("BELLSYM_BLESS").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let expected = fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&expected), "{name}");
}

#[test]
fn gamma_crit() {
    golden("gamma_crit.csv", &["gamma-crit", "--a", "sqrt2", "pi/2", "2"]);
}

#[test]
fn dicke_table1() {
    golden("dicke_table1.csv", &["dicke", "table1", "--m", "1-2", "--l", "5-12"]);
}

#[test]
fn dicke_sigma() {
    golden("dicke_sigma.csv", &["dicke", "sigma", "--n", "4-6", "--m", "1,2", "--l", "1"]);
}

#[test]
fn dicke_n0() {
    golden("dicke_n0.csv", &["dicke", "n0", "--m", "1-3", "--l", "1-3"]);
}

#[test]
fn dicke_persistency() {
    golden("dicke_persistency.csv", &["dicke", "persistency", "--n", "4-9", "--m", "1-4"]);
}

#[test]
fn persistency_gbi() {
    golden("persistency_gbi.csv", &["persistency", "ghz", "--family", "gbi", "--n", "2-10"]);
}

#[test]
fn persistency_makb_json() {
    golden("persistency_makb.json", &["persistency", "ghz", "--family", "makb", "--n", "7-10", "--format", "json"]);
}

#[test]
fn persistency_custom_asymptotic() {
    golden(
        "persistency_custom.csv",
        &[
            "persistency",
            "ghz",
            "--family",
            "custom",
            "--a",
            "2",
            "--b",
            "1",
            "--n",
            "10,100,1000",
            "--mode",
            "asymptotic",
        ],
    );
}

#[test]
fn gbi() {
    golden("gbi.csv", &["gbi", "--n", "2-7"]);
}

#[test]
fn makb() {
    golden("makb.csv", &["makb", "--n", "2-5"]);
}

#[test]
fn monogamy() {
    golden("monogamy.csv", &["monogamy", "bound", "--file", "two_chsh.txt"]);
}

#[test]
fn qccr_examples() {
    golden("chsh.json", &["qccr", "example", "--kind", "chsh"]);
    golden("makb3.json", &["qccr", "example", "--kind", "makb", "--players", "3"]);
    golden("makb4.json", &["qccr", "example", "--kind", "makb", "--players", "4", "--parties", "5"]);
}

#[test]
fn qccr_simulate() {
    golden("qccr_simulate.csv", &["qccr", "simulate", "--game", "chsh.json", "--trials", "20000", "--seed", "7"]);
}

#[test]
fn qccr_analytic() {
    golden("qccr_analytic.csv", &["qccr", "analytic", "--game", "makb4.json", "--subset", "1,2,3,4"]);
}

#[test]
fn qccr_feasibility() {
    golden("qccr_feasibility.csv", &["qccr", "feasibility", "--game", "makb3.json", "--n", "3-5"]);
}

#[test]
fn simulation_output_independent_of_jobs() {
    let run = |jobs: &str| {
        bellsym(&["qccr", "simulate", "--game", "makb4.json", "--trials", "150000", "--seed", "3", "--jobs", jobs])
    };
    let (a, b) = (run("1"), run("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bellsym(&["gamma-crit", "--a", "1.0"]).status.code(), Some(2));
    assert_eq!(bellsym(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(bellsym(&["dicke", "table1", "--m", "3-1"]).status.code(), Some(2));
    assert_eq!(bellsym(&["monogamy", "bound", "--file", "missing.txt"]).status.code(), Some(2));
    let too_big = bellsym(&["persistency", "ghz", "--family", "gbi", "--n", "600"]);
    assert_eq!(too_big.status.code(), Some(1));
    assert_eq!(bellsym(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.csv");
    let out = bellsym(&["gamma-crit", "--a", "sqrt2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let stdout = bellsym(&["gamma-crit", "--a", "sqrt2"]).stdout;
    assert_eq!(fs::read(&path).unwrap(), stdout);
}

#[test]
fn seed_is_recorded() {
    let out = bellsym(&["gamma-crit", "--a", "sqrt2", "--seed", "42"]);
    assert!(String::from_utf8_lossy(&out.stdout).lines().next().unwrap().ends_with("seed=42"));
}
