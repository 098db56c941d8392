//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Criterion 10 is checked twice: in-process, and by running the built
//! binary twice on the same inputs and comparing stdout byte for byte.

use std::path::Path;
use std::process::{Command, ExitCode};

use heckemod::selftest::{self, CriterionResult};

fn run_bin(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_heckemod")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn cli_reproducibility(dir: &Path) -> Result<usize, String> {
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let header = "type: wdigraph\ngenerators: s t\norder: s t 3\n";
    std::fs::write(path("st3.txt"), header).map_err(|e| e.to_string())?;
    let a = "type: wdigraph\ngenerators: s t\norder: s t 2\nvertex: a\nvertex: b\nvertex: c\nvertex: d\n\
             edge: a b s solid\nedge: c d s solid\nedge: a c t solid\nedge: b d t solid\n";
    let b = "type: wgraph\ngenerators: s t\norder: s t 2\nvertex: x labels:\nvertex: y labels: s\n\
             vertex: z labels: t\nvertex: w labels: s,t\nmu: y x 1\nmu: z x 1\nmu: w y 1\nmu: w z 1\n";
    std::fs::write(path("a.txt"), a).map_err(|e| e.to_string())?;
    std::fs::write(path("b.txt"), b).map_err(|e| e.to_string())?;

    let runs: Vec<Vec<String>> = vec![
        vec!["search".into(), "--max-vertices".into(), "4".into(), path("st3.txt")],
        vec!["search".into(), "--max-vertices".into(), "4".into()],
        vec!["iso".into(), path("a.txt"), path("b.txt"), "--seed".into(), "17".into()],
        vec!["iso".into(), path("a.txt"), path("b.txt"), "--seed".into(), "99".into(), "--tries".into(), "3".into()],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_bin(&args)?;
        let second = run_bin(&args)?;
        if first != second {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        if first.1 != Some(0) {
            return Err(format!("`{}` exited with {:?}", args.join(" "), first.1));
        }
    }
    Ok(runs.len())
}

fn main() -> ExitCode {
    let mut results = selftest::run_all();
    let dir = tempfile::tempdir().expect("temp dir");
    let cli = match cli_reproducibility(dir.path()) {
        Ok(n) => CriterionResult {
            id: 10,
            name: "binary output is byte-identical across runs",
            passed: true,
            detail: format!("{n} command lines run twice"),
        },
        Err(e) => {
            CriterionResult { id: 10, name: "binary output is byte-identical across runs", passed: false, detail: e }
        }
    };
    results.push(cli);

    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
