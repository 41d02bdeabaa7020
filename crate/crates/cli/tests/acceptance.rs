//! Acceptance criteria. Runs without the libtest harness and prints one
//! `ACCEPT` line per criterion; exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use zhangtwist::exactlin::Field;
use zhangtwist::freetensor::Tensor;
use zhangtwist::homog::Presentation;
use zhangtwist::manin::{endr, verify_bialgebra};
use zhangtwist_cli::parse::parse_document;

type Verdict = Result<String, String>;
type Criterion = (usize, u64, fn() -> Verdict);

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(args: &[&str]) -> Result<(i32, String), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_zhangtwist"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    ))
}

fn report(args: &[&str]) -> Result<(i32, Value), String> {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = stdout(&a)?;
    Ok((
        code,
        serde_json::from_str(&out).map_err(|e| format!("bad json: {e}"))?,
    ))
}

fn checks(v: &Value) -> Vec<(String, String, Option<String>)> {
    v["checks"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    let s = |k: &str| c[k].as_str().map(str::to_string);
                    (
                        s("name").unwrap_or_default(),
                        s("status").unwrap_or_default(),
                        s("witness"),
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Exit code 0 and every check matching `filter` passed (at least one must match).
fn all_pass(args: &[&str], filter: impl Fn(&str) -> bool) -> Verdict {
    let (code, v) = report(args)?;
    let cs: Vec<_> = checks(&v)
        .into_iter()
        .filter(|(n, _, _)| filter(n))
        .collect();
    if cs.is_empty() {
        return Err(format!("{args:?}: no matching checks"));
    }
    if let Some((n, s, w)) = cs.iter().find(|(_, s, _)| s != "PASS") {
        return Err(format!("{n} {s} {}", w.as_deref().unwrap_or("")));
    }
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    Ok(format!("{} checks", cs.len()))
}

fn quadratic(f: Field, terms: &[(usize, usize, i64)]) -> Presentation {
    let gens = zhangtwist::freetensor::GeneratorSet::new(["x", "y"]).unwrap();
    let r = Tensor::from_terms(
        f,
        2,
        terms.iter().map(|&(a, b, c)| (vec![a, b], f.from_i64(c))),
    )
    .unwrap();
    Presentation::from_tensors(gens, 2, f, &[r]).unwrap()
}

fn c1() -> Verdict {
    let mut notes = Vec::new();
    for (file, c) in [("polynomial.zt", 3), ("quantum_plane.zt", 6)] {
        let t = Instant::now();
        let (code, out) = stdout(&["twist", &data(file)])?;
        let secs = t.elapsed().as_secs_f64();
        if code != 0 {
            return Err(format!("{file}: exit {code}"));
        }
        let doc_text: String = out
            .lines()
            .filter(|l| !l.starts_with("CHECK"))
            .map(|l| format!("{l}\n"))
            .collect();
        let doc = parse_document(&doc_text).map_err(|e| e.to_string())?;
        let got = doc
            .algebras
            .first()
            .ok_or("no algebra emitted")?
            .presentation
            .relations()
            .clone();
        let want = quadratic(Field::Rational, &[(0, 1, 1), (1, 0, -c)]);
        if &got != want.relations() {
            return Err(format!(
                "{file}: relation space differs from span(x*y - {c}*y*x)"
            ));
        }
        if secs >= 1.0 {
            return Err(format!("{file}: {secs:.2}s"));
        }
        notes.push(format!("{file} {secs:.2}s"));
    }
    Ok(notes.join(", "))
}

fn c2() -> Verdict {
    let ok = all_pass(
        &["verify-twist", &data("quantum_plane.zt"), "--cap", "5"],
        |_| true,
    )?;
    let (code, v) = report(&["verify-twist", &data("swap.zt"), "--cap", "5"])?;
    let witness = checks(&v)
        .into_iter()
        .find_map(|(_, s, w)| (s == "FAIL").then_some(w).flatten());
    match (code, witness) {
        (1, Some(w)) => Ok(format!("plane {ok}; swap fails with {w}")),
        (c, w) => Err(format!("swap mutant: exit {c}, witness {w:?}")),
    }
}

fn c3() -> Verdict {
    let a = all_pass(
        &["verify-dual", &data("quantum_plane.zt"), "--cap", "5"],
        |_| true,
    )?;
    let b = all_pass(&["verify-dual", &data("cubic.zt"), "--cap", "5"], |_| true)?;
    Ok(format!("plane {a}, cubic {b}"))
}

fn c4() -> Verdict {
    let a = all_pass(&["verify-bullet", &data("quantum_plane.zt")], |n| {
        n != "random-bullet"
    })?;
    let b = all_pass(
        &["verify-bullet", &data("plane_f7.zt"), "--seed", "7"],
        |n| n == "random-bullet",
    )?;
    Ok(format!("plane {a}, 20 random systems over F_7 {b}"))
}

fn c5() -> Verdict {
    let doc = parse_document(
        &std::fs::read_to_string(data("quantum_plane.zt")).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let e = endr(&doc.algebras[0].presentation, 3).map_err(|e| e.to_string())?;
    let dims = e.algebra().hilbert_dims(3).map_err(|e| e.to_string())?;
    if dims != [1, 4, 13, 40] {
        return Err(format!("dims {dims:?}"));
    }
    let rep = verify_bialgebra(&e, 3).map_err(|e| e.to_string())?;
    let bad = rep
        .failures()
        .next()
        .map(|c| format!("{} {:?}", c.name, c.witness));
    match bad {
        Some(b) => Err(b),
        None => Ok(format!("dims {dims:?}, {} laws", rep.checks.len())),
    }
}

fn c6() -> Verdict {
    all_pass(
        &["verify-cocycle", &data("quantum_plane.zt"), "--cap", "4"],
        |n| n.starts_with("cocycle/"),
    )
}

fn theorem_runs() -> Result<Vec<(String, Value)>, String> {
    let mut out = Vec::new();
    for (file, seed) in [
        ("quantum_plane.zt", None),
        ("polynomial.zt", None),
        ("cubic.zt", None),
        ("skew3_f11.zt", Some("11")),
    ] {
        let mut args = vec![
            "verify-theorem".to_string(),
            data(file),
            "--cap".into(),
            "4".into(),
        ];
        if let Some(s) = seed {
            args.extend(["--seed".into(), s.into()]);
        }
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, v) = report(&a)?;
        out.push((file.to_string(), v));
    }
    Ok(out)
}

fn require(file: &str, v: &Value, name: &str) -> Result<(), String> {
    match checks(v).into_iter().find(|(n, _, _)| n == name) {
        Some((_, s, _)) if s == "PASS" => Ok(()),
        Some((_, s, w)) => Err(format!("{file}: {name} {s} {}", w.unwrap_or_default())),
        None => Err(format!("{file}: no {name}")),
    }
}

fn c7() -> Verdict {
    let runs = theorem_runs()?;
    for (file, v) in &runs {
        // Unseeded files skip the random runs; only the skew example carries a seed.
        if let Some((n, s, w)) = checks(v)
            .into_iter()
            .find(|(n, s, _)| s != "PASS" && !(n == "random-theorem" && s == "SKIPPED"))
        {
            return Err(format!("{file}: {n} {s} {}", w.unwrap_or_default()));
        }
        require(file, v, "theorem-products")?;
    }
    require("skew3_f11.zt", &runs[3].1, "random-theorem")?;
    Ok("4 examples and 10 random systems over F_11".into())
}

fn c8() -> Verdict {
    for (file, v) in theorem_runs()? {
        require(&file, &v, "roundtrip-degree-one")?;
        if file == "skew3_f11.zt" {
            require(&file, &v, "random-theorem")?;
        }
    }
    Ok("degree-one matrices recovered for all examples".into())
}

fn c9() -> Verdict {
    all_pass(
        &["verify-cocycle", &data("quantum_plane.zt"), "--cap", "4"],
        |n| n.starts_with("pair/") || n.starts_with("functional/"),
    )
}

fn c10() -> Verdict {
    let args = ["emit-envelope", "1", &data("quantum_plane.zt")];
    let (code, a) = stdout(&args)?;
    let (_, b) = stdout(&args)?;
    if code != 0 || a != b || a != include_str!("golden/plane_envelope_1.txt") {
        return Err(format!("exit {code}, dump not byte-stable"));
    }
    // Per level: dim R of end^r, and one right and one left antipode relation per generator.
    let want = "relation=3 antipode-right=4 antipode-left=4";
    for level in 0..=1 {
        let line = format!("count {level} {want}");
        if !a.lines().any(|l| l == line) {
            return Err(format!("missing `{line}`"));
        }
    }
    Ok(want.into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, 2, c1),
        (2, 5, c2),
        (3, 5, c3),
        (4, 30, c4),
        (5, 30, c5),
        (6, 60, c6),
        (7, 120, c7),
        (8, 10, c8),
        (9, 30, c9),
        (10, 1, c10),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let t = Instant::now();
        let verdict = f();
        let took = t.elapsed();
        let verdict = match verdict {
            Ok(msg) if took >= Duration::from_secs(limit) => {
                Err(format!("{msg}; over the {limit}s budget"))
            }
            v => v,
        };
        let (status, msg) = match verdict {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "ACCEPT {n:>2} {status} {:.2}s/{limit}s {msg}",
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
