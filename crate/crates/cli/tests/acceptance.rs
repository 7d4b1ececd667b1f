//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use common::{gen, mutate_entry, path_str, projline};
use projline::coordinatization::verify_uniqueness;
use projline::model::{table_for_frame, verify_classical_tables, ReportLevel};
use projline::reconstruction::{check_mod_p, minus_one_report, reconstruct};
use projline::scalar::Field;
use projline::{
    check_axioms, classify_prime, coordinatize, validate_structure, verify_field, verify_iso,
    Axiom, CandidateTable, Classification, Frame, PrimeField, PrimeLine, ProjectiveLine, Rationals,
    Report, Status,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn model(p: u64) -> (CandidateTable, PrimeLine) {
    let line = ProjectiveLine::new(PrimeField::new(p).unwrap());
    (CandidateTable::from_model(&line).unwrap(), line)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_failure(r: &Report) -> String {
    r.failing()
        .next()
        .map(|c| format!("{}: {}", c.name, c.witnesses.join("; ")))
        .unwrap_or_default()
}

fn model_axioms() -> Verdict {
    let start = Instant::now();
    for p in [2, 3, 5, 7, 11] {
        let (t, _) = model(p);
        let s = validate_structure(&t, 3);
        ensure(s.passed(), || {
            format!("p={p} structure {}", first_failure(&s))
        })?;
        let a = check_axioms(&t, &Axiom::ALL, 3);
        for c in &a.checks {
            let allowed = if p == 2 {
                matches!(c.status, Status::Pass | Status::Vacuous)
            } else {
                c.status == Status::Pass
            };
            ensure(allowed, || format!("p={p} {} is {}", c.name, c.status))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("p in 2,3,5,7,11 in {:.1}s", elapsed.as_secs_f64()))
}

fn classical_tables() -> Verdict {
    let mut total = 0;
    for p in [5, 7] {
        let (_, line) = model(p);
        let r = verify_classical_tables(&line, ReportLevel::Summary).map_err(|e| e.to_string())?;
        ensure(r.rows.len() == 18, || format!("{} rows", r.rows.len()))?;
        ensure(r.passed(), || format!("F_{p}: {} failures", r.failures()))?;
        total += r.quadruples;
    }
    Ok(format!("18 rows on {total} quadruples of F_5 and F_7"))
}

fn minus_one() -> Verdict {
    for p in [2, 3, 5, 7] {
        let (t, line) = model(p);
        let r = minus_one_report(&t, 3);
        ensure(r.passed(), || format!("p={p}: {}", first_failure(&r)))?;
        // in the model -1 is the field element p - 1 at every point
        for a in line.points().unwrap() {
            ensure(line.minus_one(&a).unwrap() == p - 1, || {
                format!("p={p} at {a}")
            })?;
        }
    }
    Ok("square, choice and uniformity for p <= 7".into())
}

fn scalar_relation() -> Verdict {
    let line = ProjectiveLine::new(Rationals::default());
    let k = line.field();
    let [a, b, c] = line.standard_frame();
    let mu = k.from_i64(-2);
    // (A,B;C,[d:1]) = 1/d for this frame, so d = 1/mu.
    let d = line.affine(k.inv(&mu).unwrap());
    ensure(
        line.point_with_cross_ratio(&a, &b, &c, &mu).unwrap() == d,
        || "point_with_cross_ratio".into(),
    )?;
    ensure(line.cross_ratio(&a, &b, &c, &d).unwrap() == mu, || {
        "(A,B;C,D) != -2".into()
    })?;
    let rows = table_for_frame(&line, [&a, &b, &c, &d]).map_err(|e| e.to_string())?;
    let row = rows
        .iter()
        .find(|r| r.row.starts_with("-(1-mu)"))
        .ok_or("row missing")?;
    ensure(row.pass && row.got == "-3" && row.expected == "-3", || {
        format!("{row:?}")
    })?;
    Ok(format!("D = {d}, (A,B;C,D) = -2, {} = -3", row.row))
}

fn harmonic() -> Verdict {
    let mut triples = 0;
    for p in [3, 5, 7] {
        let (_, line) = model(p);
        let pts = line.points().unwrap();
        for a in &pts {
            for b in pts.iter().filter(|b| *b != a) {
                for c in pts.iter().filter(|c| *c != a && *c != b) {
                    let h = line
                        .harmonic_conjugate(a, b, c)
                        .map_err(|e| e.to_string())?;
                    let cr = line.cross_ratio(a, b, c, &h).unwrap();
                    ensure(cr == p - 1, || format!("p={p} ({a},{b};{c},{h}) = {cr}"))?;
                    let k = line
                        .harmonic_conjugate_by_composite(a, b, c)
                        .map_err(|e| e.to_string())?;
                    ensure(h == k, || format!("p={p} {a},{b},{c}: {h} vs {k}"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} triples for p = 3,5,7"))
}

fn field_reconstruction() -> Verdict {
    for p in [2, 3, 5, 7, 11, 13] {
        let (t, _) = model(p);
        let ft = reconstruct(&t, 0).map_err(|e| e.to_string())?.field;
        let r = verify_field(&ft, 3);
        ensure(r.passed(), || format!("p={p}: {}", first_failure(&r)))?;
        let Classification::Prime { p: q, residue } =
            classify_prime(&ft).map_err(|e| e.to_string())?
        else {
            return Err(format!("p={p} not classified as prime"));
        };
        ensure(q == p, || format!("classified {p} as {q}"))?;
        ensure(
            check_mod_p(&ft, &residue, p, 3).status == Status::Pass,
            || format!("p={p} tables"),
        )?;
        // the model names each scalar by its factor; n·1 must be the scalar n
        for (x, n) in residue.iter().enumerate().skip(1) {
            ensure(ft.carrier[x] == n.to_string(), || {
                format!("p={p}: {} -> {n}", ft.carrier[x])
            })?;
        }
    }
    Ok("p in 2,3,5,7,11,13 classified with mod-p tables".into())
}

fn unique_isomorphism() -> Verdict {
    let mut frames = 0;
    for p in [2, 3, 5, 7] {
        let (t, _) = model(p);
        let ft = reconstruct(&t, 0).map_err(|e| e.to_string())?.field;
        let n = t.object_count();
        for f0 in 0..n {
            for f1 in (0..n).filter(|&o| o != f0) {
                for f2 in (0..n).filter(|&o| o != f0 && o != f1) {
                    let frame = Frame::new(f0, f1, f2).unwrap();
                    let iso = coordinatize(&t, &ft, frame).map_err(|e| format!("p={p}: {e}"))?;
                    ensure(verify_iso(&t, &iso, 1).passed(), || {
                        format!("p={p} frame {f0},{f1},{f2}")
                    })?;
                    let u = verify_uniqueness(&t, &ft, frame).map_err(|e| e.to_string())?;
                    ensure(u.passed(), || format!("p={p}: {}", first_failure(&u)))?;
                    frames += 1;
                }
            }
        }
    }
    Ok(format!(
        "{frames} frames for p <= 7, each with exactly one frame-fixing iso"
    ))
}

/// Single-entry mutations of `gen --p 5`, each replacing the composite of
/// one pair `[f, g]`.
const MUTATIONS: [(&str, [&str; 3]); 6] = [
    // (0:1,1:1;2:1,2:1) = 1 becomes 3
    ("one", ["0:1>2:1>1:1", "1:1>2:1>0:1", "0:1#3"]),
    // composite of two arrows with label 2:1 must keep label 2:1
    ("two", ["0:1>2:1>1:1", "1:1>2:1>3:1", "0:1>1:1>3:1"]),
    // 1 · 2 = 1 at 0:1, so 1 · 2 != 2 · 1
    ("pappus", ["0:1#1", "0:1#2", "0:1#1"]),
    ("hex1", ["0:1#2", "0:1>2:1>1:1", "0:1>4:1>1:1"]),
    // (0:1,1:1;2:1,4:1) = 4 becomes 1
    ("hex2", ["0:1>2:1>1:1", "1:1>4:1>0:1", "0:1#1"]),
    ("as", ["0:1>2:1>1:1", "1:1#2", "0:1>4:1>1:1"]),
];

fn sensitivity() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let c5 = fs::read_to_string(gen(dir.path(), 5)).map_err(|e| e.to_string())?;
    let file = dir.path().join("mutated.json");
    for (axiom, [f, g, h]) in MUTATIONS {
        fs::write(&file, mutate_entry(&c5, f, g, h)).map_err(|e| e.to_string())?;
        let run = projline(&[
            "--format",
            "json",
            "check",
            "--in",
            path_str(&file),
            "--axioms",
            axiom,
        ]);
        ensure(run.code == 1, || format!("{axiom}: exit {}", run.code))?;
        let reports: Vec<Report> = serde_json::from_str(&run.stdout).map_err(|e| e.to_string())?;
        let c = reports[1].get(axiom).ok_or("missing check")?;
        ensure(c.status == Status::Fail && !c.witnesses.is_empty(), || {
            format!("{axiom}: {:?}", c.status)
        })?;
    }

    // field: the entry 2 + 2 of the reconstructed F_5 changed from 4 to 3
    let field = dir.path().join("f5.json");
    let run = projline(&[
        "reconstruct",
        "--in",
        path_str(&gen(dir.path(), 5)),
        "--out",
        path_str(&field),
    ]);
    ensure(run.code == 0, || run.stderr.clone())?;
    let text = fs::read_to_string(&field).map_err(|e| e.to_string())?;
    let row = "[\"2\", \"3\", \"4\", \"0\", \"1\"]";
    ensure(text.matches(row).count() == 1, || {
        "add row of 2 not found".into()
    })?;
    fs::write(
        &field,
        text.replace(row, "[\"2\", \"3\", \"3\", \"0\", \"1\"]"),
    )
    .map_err(|e| e.to_string())?;
    let run = projline(&["--format", "json", "verify-field", "--in", path_str(&field)]);
    ensure(run.code == 1, || format!("verify-field exit {}", run.code))?;
    let report: Report = serde_json::from_str(&run.stdout).map_err(|e| e.to_string())?;
    ensure(report.failing().any(|c| !c.witnesses.is_empty()), || {
        "no witness".into()
    })?;
    Ok("one, two, pappus, hex1, hex2, as and verify-field each exit 1 with a witness".into())
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let c7 = gen(dir.path(), 7);
    let c5 = fs::read_to_string(gen(dir.path(), 5)).map_err(|e| e.to_string())?;
    let mutated = dir.path().join("m.json");
    fs::write(
        &mutated,
        mutate_entry(&c5, "0:1>2:1>1:1", "1:1>4:1>0:1", "0:1#1"),
    )
    .map_err(|e| e.to_string())?;
    let (c7, mutated) = (path_str(&c7), path_str(&mutated));

    let gens: Vec<String> = (0..2)
        .map(|_| projline(&["gen", "--p", "7"]).stdout)
        .collect();
    ensure(
        gens[0] == gens[1] && gens[0] == fs::read_to_string(c7).unwrap(),
        || "gen differs".into(),
    )?;

    let commands: [&[&str]; 6] = [
        &["--format", "json", "check", "--in", c7],
        &[
            "--format",
            "json",
            "check",
            "--in",
            mutated,
            "--witnesses",
            "20",
        ],
        &["check", "--in", mutated],
        &["--format", "json", "reconstruct", "--in", c7],
        &[
            "--format",
            "json",
            "classify",
            "--in",
            c7,
            "--frame",
            "3:1,1:0,6:1",
            "--uniqueness",
        ],
        &["--format", "json", "tables", "--p", "7", "--full"],
    ];
    for args in commands {
        let outputs: Vec<String> = ["1", "1", "2", "4"]
            .iter()
            .map(|jobs| {
                let mut all = vec!["--jobs", jobs];
                all.extend_from_slice(args);
                projline(&all).stdout
            })
            .collect();
        ensure(
            outputs.iter().all(|o| *o == outputs[0] && !o.is_empty()),
            || format!("{args:?} varies"),
        )?;
    }

    let fields: Vec<String> = ["1", "3"]
        .iter()
        .map(|jobs| {
            let out = dir.path().join(format!("f{jobs}.json"));
            projline(&[
                "--jobs",
                jobs,
                "reconstruct",
                "--in",
                c7,
                "--out",
                path_str(&out),
            ]);
            fs::read_to_string(out).unwrap_or_default()
        })
        .collect();
    ensure(!fields[0].is_empty() && fields[0] == fields[1], || {
        "field export varies".into()
    })?;
    Ok(
        "gen, check, reconstruct, classify, tables and exports stable across runs and --jobs 1,2,4"
            .into(),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("model satisfies the axioms", model_axioms),
        ("classical and minus tables", classical_tables),
        ("(-1)(-1) = 1, choice-free and uniform", minus_one),
        ("-2 maps to -3 over Q", scalar_relation),
        ("harmonic conjugates", harmonic),
        ("field reconstruction", field_reconstruction),
        ("unique frame-pinned isomorphism", unique_isomorphism),
        ("checker sensitivity", sensitivity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
