// Each test target uses a different subset of these helpers.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let dir = golden_dir();
    let text = std::fs::read_to_string(dir.join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let fields: Vec<&str> = l.split('|').map(str::trim).collect();
            assert_eq!(fields.len(), 3, "malformed case line: {l}");
            let args = fields[1]
                .split_whitespace()
                .map(|a| match a.strip_prefix('@') {
                    Some(file) => dir.join(file).to_string_lossy().into_owned(),
                    None => a.to_string(),
                })
                .collect();
            GoldenCase { name: fields[0].to_string(), args, exit: fields[2].parse().expect("exit code") }
        })
        .collect()
}

/// Runs the compiled binary; returns stdout and the exit code.
pub fn run_binary(args: &[String]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_finprob")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().expect("exited normally"))
}

/// Every mismatch between a golden case and the binary's behaviour.
pub fn golden_mismatches() -> Vec<String> {
    let dir = golden_dir();
    let mut problems = Vec::new();
    for case in golden_cases() {
        let expected = std::fs::read(dir.join(format!("{}.out", case.name))).unwrap_or_default();
        let (stdout, code) = run_binary(&case.args);
        if stdout != expected {
            problems.push(format!(
                "{}: stdout differs\n--- expected\n{}\n--- actual\n{}",
                case.name,
                String::from_utf8_lossy(&expected),
                String::from_utf8_lossy(&stdout)
            ));
        }
        if code != case.exit {
            problems.push(format!("{}: exit code {code}, expected {}", case.name, case.exit));
        }
    }
    problems
}

/// Every partition of `{0..n}`, as blocks of indices, via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(i: usize, n: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (p, &b) in rgs.iter().enumerate() {
                parts[b].push(p);
            }
            out.push(parts);
            return;
        }
        let limit = rgs.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=limit {
            rgs.push(b);
            grow(i + 1, n, rgs, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

/// A space on points `<prefix>0..` with the given blocks as atoms.
pub fn space_from_blocks(name: &str, prefix: &str, blocks: &[Vec<usize>]) -> finprob::FinSpace {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let label = |i: usize| format!("{prefix}{i}");
    finprob::FinSpace::new(
        name,
        (0..n).map(label),
        blocks.iter().map(|b| b.iter().map(|&i| label(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    )
    .expect("valid partition")
}

/// Every function `{0..n} → {0..m}` as a graph vector, in lexicographic order.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|g| (0..m).map(move |v| [g.clone(), vec![v]].concat())).collect();
    }
    out
}
