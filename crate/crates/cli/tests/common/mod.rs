#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn projline(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_projline"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Writes `gen --p p` into `dir` and returns the path.
pub fn gen(dir: &Path, p: u64) -> PathBuf {
    let path = dir.join(format!("c{p}.json"));
    let run = projline(&["gen", "--p", &p.to_string(), "--out", path_str(&path)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    path
}

/// Replaces the composite of the entry `[f, g, _]` with `h`.
pub fn mutate_entry(json: &str, f: &str, g: &str, h: &str) -> String {
    let prefix = format!("[\"{f}\", \"{g}\", ");
    let mut hits = 0;
    let lines: Vec<String> = json
        .lines()
        .map(|line| {
            let trimmed = line.trim_start();
            if trimmed.starts_with(&prefix) {
                hits += 1;
                let comma = if trimmed.ends_with(',') { "," } else { "" };
                format!("    {prefix}\"{h}\"]{comma}")
            } else {
                line.to_string()
            }
        })
        .collect();
    assert_eq!(hits, 1, "entry {f} . {g} not found");
    lines.join("\n") + "\n"
}
