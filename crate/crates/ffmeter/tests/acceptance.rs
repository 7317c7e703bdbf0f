//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs with `cargo test -p ffmeter --test acceptance`.

use std::time::{Duration, Instant};

use serde_json::Value;

use ffmeter_core::bounds::{
    check_ind_deg, check_ind_weight, cyclotomic_grid, exact_mean_weight, weight_addind_bound,
    Outcome as Verdict,
};
use ffmeter_core::families::{self, Family};
use ffmeter_core::linalg::all_subspaces;
use ffmeter_core::measures::Measured;
use ffmeter_core::{Field, MeasureOptions};

const SEED: &str = "20261016";

type Outcome = Result<String, String>;

/// Every CLI invocation made by the criteria, replayed by the determinism check.
#[derive(Default)]
struct Runs {
    invocations: Vec<(Vec<String>, String)>,
}

impl Runs {
    fn raw(args: &[String], workers: Option<usize>) -> Result<(String, i32), String> {
        let mut argv = vec!["ffmeter".to_string()];
        argv.extend(args.iter().cloned());
        argv.push("--json".into());
        if let Some(w) = workers {
            argv.extend(["--workers".into(), w.to_string()]);
        }
        match ffmeter::render(argv) {
            Ok(r) => Ok((r.stdout, r.code)),
            Err((msg, code)) => Err(format!("`{}` exited {code}: {msg}", args.join(" "))),
        }
    }

    fn verify(
        &mut self,
        field: &str,
        space: &str,
        bounds: &str,
        extra: &[&str],
    ) -> Result<Report, String> {
        let mut args: Vec<String> = [
            "verify", "--field", field, "--space", space, "--bounds", bounds, "--seed", SEED,
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        args.extend(extra.iter().map(|s| s.to_string()));
        let (stdout, _) = Self::raw(&args, None)?;
        let json: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
        self.invocations.push((args, stdout));
        Ok(Report { json })
    }
}

struct Report {
    json: Value,
}

impl Report {
    fn bound(&self, id: &str) -> &Value {
        self.json["bounds"]
            .as_array()
            .and_then(|bs| bs.iter().find(|b| b["id"] == id))
            .unwrap_or(&Value::Null)
    }

    fn count(&self, id: &str, key: &str) -> u64 {
        self.bound(id)[key].as_u64().unwrap_or(0)
    }

    fn verdict(&self, id: &str) -> &Value {
        &self.bound(id)["verdicts"][0]
    }

    fn field(&self) -> String {
        format!("F_{}", self.json["field"]["q"])
    }

    /// Zero violations and zero undecided for each listed bound.
    fn clean(&self, ids: &[&str]) -> Result<String, String> {
        let mut summary = Vec::new();
        let mut bad = Vec::new();
        for id in ids {
            let (v, u) = (self.count(id, "violations"), self.count(id, "undecided"));
            summary.push(format!(
                "{id} {}/{}",
                self.count(id, "applicable"),
                self.count(id, "evaluated")
            ));
            if v > 0 || u > 0 {
                bad.push(format!(
                    "{} {id}: {v} violations, {u} undecided, witness {}",
                    self.field(),
                    self.bound(id)["witness"]
                ));
            }
        }
        if bad.is_empty() {
            Ok(format!("{} [{}]", self.field(), summary.join(", ")))
        } else {
            Err(bad.join("; "))
        }
    }
}

/// A JSON scalar without string quotes.
fn text(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

fn field_of(q: u32) -> (u32, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let n = (1..).find(|&n| p.pow(n) == q).unwrap();
    (p, n)
}

fn spec(q: u32) -> String {
    let (p, n) = field_of(q);
    format!("{p}^{n}")
}

fn gather(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let (mut ok, mut bad) = (Vec::new(), Vec::new());
    for part in parts {
        match part {
            Ok(s) => ok.push(s),
            Err(s) => bad.push(s),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn ac1(runs: &mut Runs) -> Outcome {
    let qs = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81];
    gather(qs.iter().map(|&q| {
        let r = runs.verify(&spec(q), "sample:0:0", "inversion", &[])?;
        let v = r.verdict("inversion");
        let expected = if q <= 4 { 1 } else { q };
        if v["outcome"] == "holds" && text(&v["lhs"]) == expected.to_string() {
            Ok(format!("q={q}:{expected}"))
        } else {
            Err(format!(
                "q={q}: AddInd {} expected {expected}",
                text(&v["lhs"])
            ))
        }
    }))
}

fn ac2(runs: &mut Runs) -> Outcome {
    let ids = [
        "deg_crk",
        "weight_crk",
        "crk_addind",
        "deg_addind",
        "mobius_crk",
        "ind_crk",
    ];
    gather(["5^1", "7^1"].iter().map(|f| {
        let r = runs.verify(f, "all-perms", &ids.join(","), &[])?;
        let size = r.json["space"]["size"].as_u64();
        if size != Some(if *f == "5^1" { 120 } else { 5040 }) {
            return Err(format!("{f}: unexpected space size {size:?}"));
        }
        r.clean(&ids)
    }))
}

fn ac3(runs: &mut Runs) -> Outcome {
    let sample = "sample:10000:".to_string() + SEED;
    gather(
        [
            ("2^2", "all-funcs"),
            ("2^3", sample.as_str()),
            ("3^2", sample.as_str()),
        ]
        .map(|(f, space)| {
            let r = runs.verify(f, space, "codim_oracle", &[])?;
            let evaluated = r.count("codim_oracle", "evaluated");
            if evaluated < if f == "2^2" { 256 } else { 10_000 } {
                return Err(format!("{f}: only {evaluated} functions"));
            }
            r.clean(&["codim_oracle"])
        }),
    )
}

fn ac4(_: &mut Runs) -> Outcome {
    let cases = [
        (2, 2, 3),
        (3, 1, 2),
        (3, 1, 3),
        (3, 2, 3),
        (2, 1, 2),
        (2, 1, 3),
    ];
    gather(cases.iter().map(|&(p, k, n)| {
        let field = Field::new(p, n, None).map_err(|e| e.to_string())?;
        let expected = if (p, k) == (2, 1) {
            1
        } else {
            u64::from(p).pow(k)
        };
        let subspaces = all_subspaces(&field, n - k);
        for u in &subspaces {
            let f = families::build(&field, &Family::Indicator(u.clone()))
                .map_err(|e| e.to_string())?;
            let m = Measured::new(&field, &f, MeasureOptions::default());
            let add = m.codim().map_err(|e| e.to_string())?.add_index;
            if add != expected {
                return Err(format!(
                    "(p,k,n)=({p},{k},{n}) U={:?}: AddInd {add}, expected {expected}",
                    u.basis()
                ));
            }
            if (1..n).contains(&k) && (k, p) != (1, 2) && m.weight() < p.pow(k) + 1 {
                return Err(format!(
                    "(p,k,n)=({p},{k},{n}) U={:?}: weight {}",
                    u.basis(),
                    m.weight()
                ));
            }
        }
        Ok(format!(
            "({p},{k},{n}) {} subspaces AddInd {expected}",
            subspaces.len()
        ))
    }))
}

fn ac5(runs: &mut Runs) -> Outcome {
    let ids = [
        "dlog_deg",
        "dlog_weight",
        "dlog_addind",
        "dlog_crk",
        "dlog_ind",
    ];
    gather([9, 25, 27, 49].iter().map(|&q| {
        let r = runs.verify(&spec(q), "sample:0:0", &ids.join(","), &[])?;
        for id in &ids[..] {
            let v = r.verdict(id);
            if !matches!(v["outcome"].as_str(), Some("holds" | "holds_vacuously")) {
                return Err(format!("q={q} {id}: {v}"));
            }
        }
        let crk = r.verdict("dlog_crk");
        let note = crk["note"].as_str().unwrap_or("");
        if q == 9 {
            if crk["outcome"] != "holds_vacuously" || !note.contains("exact") {
                return Err(format!(
                    "q=9 dlog_crk should hold vacuously with an exact rank: {crk}"
                ));
            }
        } else if !note.contains("Möbius lower bound") || crk["lhs"].is_null() {
            return Err(format!(
                "q={q} dlog_crk must report the Möbius lower bound: {crk}"
            ));
        }
        Ok(format!(
            "q={q}: Crk {} {} {} ({})",
            text(&crk["lhs"]),
            text(&crk["relation"]),
            text(&crk["rhs"]),
            text(&crk["outcome"])
        ))
    }))
}

fn ac6(runs: &mut Runs) -> Outcome {
    let exact = [2, 3, 4].map(|q| {
        let r = runs.verify(&spec(q), "all-funcs", "mean_weight", &[])?;
        let field = Field::new(field_of(q).0, field_of(q).1, None).map_err(|e| e.to_string())?;
        let direct = exact_mean_weight(&field).map_err(|e| e.to_string())?;
        let mean = r.json["stats"]["mean_weight"]
            .as_str()
            .unwrap_or("")
            .to_string();
        if r.verdict("mean_weight")["outcome"] == "holds"
            && mean == (q - 1).to_string()
            && direct == (q as i128 - 1).into()
        {
            Ok(format!("q={q}: {mean}"))
        } else {
            Err(format!("q={q}: mean {mean}, direct {direct}"))
        }
    });
    let sampled = (|| {
        let r = runs.verify("2^4", &format!("sample:100000:{SEED}"), "mean_weight", &[])?;
        let v = r.verdict("mean_weight");
        let mean = &r.json["stats"]["mean_weight"];
        if v["outcome"] == "holds" {
            Ok(format!(
                "q=16: sampled mean {}, |dev| {}",
                text(mean),
                text(&v["lhs"])
            ))
        } else {
            Err(format!(
                "q=16: sampled mean {} not within 1/2 of 15",
                text(mean)
            ))
        }
    })();
    gather(exact.into_iter().chain([sampled]))
}

fn ac7(runs: &mut Runs) -> Outcome {
    let spots = [
        (2, 4, 1, Some(5)),
        (2, 4, 0, Some(5)),
        (3, 3, 0, Some(4)),
        (2, 3, 3, None),
    ];
    let spot = gather(spots.iter().map(|&(p, n, k, want)| {
        let got = weight_addind_bound(p, n, k);
        if got == want {
            Ok(format!("({p},{n},{k})->{got:?}"))
        } else {
            Err(format!("bound ({p},{n},{k}) = {got:?}, expected {want:?}"))
        }
    }));
    let sample = format!("sample:100000:{SEED}");
    let sweeps = [
        ("2^2", "all-funcs"),
        ("2^3", sample.as_str()),
        ("2^4", sample.as_str()),
    ]
    .map(|(f, space)| {
        let r = runs.verify(f, space, "weight_addind", &[])?;
        r.clean(&["weight_addind"])
    });
    gather([spot].into_iter().chain(sweeps))
}

fn ac8(runs: &mut Runs) -> Outcome {
    gather(["2^3", "3^2"].iter().flat_map(|f| {
        [("compo_subadditive", "10000"), ("compo_affine", "1000")].map(|(id, pairs)| {
            let r = runs.verify(f, "sample:0:0", id, &["--pairs", pairs])?;
            let evaluated = r.count(id, "evaluated");
            if evaluated.to_string() != pairs {
                return Err(format!("{f} {id}: {evaluated} checks"));
            }
            r.clean(&[id])
        })
    }))
}

fn ac9(runs: &mut Runs) -> Outcome {
    gather(
        [
            ("2^2", "zero-fixing", 64),
            ("2^3", "zero-fixing-nonvanishing", 823_543),
            ("3^2", "zero-fixing-perms", 40_320),
        ]
        .map(|(f, space, size)| {
            let r = runs.verify(f, space, "small_conjecture", &[])?;
            if r.json["space"]["size"].as_u64() != Some(size) {
                return Err(format!("{f} {space}: size {}", r.json["space"]["size"]));
            }
            r.clean(&["small_conjecture"])
        }),
    )
}

fn ac10(runs: &mut Runs) -> Outcome {
    gather(["7^1", "13^1"].iter().map(|f| {
        let r = runs.verify(f, "sample:0:0", "intpol_form", &[])?;
        r.clean(&["intpol_form"])?;
        let field = ffmeter::parse::parse_field(f, None).map_err(|e| e.to_string())?;
        let seed: u64 = SEED.parse().unwrap();
        let grid = cyclotomic_grid(&field, seed);
        let (mut applicable, mut bad) = (0, Vec::new());
        for form in &grid {
            let func = form.to_func(&field);
            let m = Measured::new(&field, &func, MeasureOptions::default());
            for v in [check_ind_deg(&m), check_ind_weight(&m)] {
                applicable += usize::from(v.outcome != Verdict::NotApplicable);
                if !v.holds() {
                    bad.push(format!("{:?} ell={} r={}", v.id, form.ell, form.r));
                }
            }
        }
        if bad.is_empty() {
            Ok(format!(
                "{f}: {} forms, {applicable} applicable index checks",
                grid.len()
            ))
        } else {
            Err(format!("{f}: {}", bad.join(", ")))
        }
    }))
}

fn ac11(runs: &mut Runs) -> Outcome {
    gather(
        [("2^2", "all-funcs"), ("2^3", "zero-fixing")].map(|(f, space)| {
            let r = runs.verify(f, space, "deg_addind", &[])?;
            r.clean(&["deg_addind"])?;
            let stats = &r.json["stats"];
            let rows: Vec<String> = r.bound("deg_addind")["extremal"]
                .as_array()
                .map(|rows| {
                    rows.iter()
                        .map(|e| {
                            format!(
                                "AddInd {}: min {}",
                                e["add_index"], e["min_deg_times_add_index"]
                            )
                        })
                        .collect()
                })
                .unwrap_or_default();
            Ok(format!(
                "{} min deg*AddInd {} (q attained: {}; {})",
                r.field(),
                stats["min_deg_times_add_index"],
                stats["min_attains_q"],
                rows.join(", ")
            ))
        }),
    )
}

fn ac12(runs: &mut Runs) -> Outcome {
    let mut compared = 0;
    for (args, reference) in &runs.invocations {
        for workers in [1, 3] {
            let (stdout, _) = Runs::raw(args, Some(workers))?;
            if &stdout != reference {
                return Err(format!(
                    "`{}` differs with {workers} workers",
                    args.join(" ")
                ));
            }
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} reruns byte-identical across worker counts 1, 3 and the default pool"
    ))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&mut Runs) -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            name: "AC1 inversion index",
            limit: secs(30),
            run: ac1,
        },
        Criterion {
            name: "AC2 permutation sweeps F_5, F_7",
            limit: secs(120),
            run: ac2,
        },
        Criterion {
            name: "AC3 codimension oracle",
            limit: secs(60),
            run: ac3,
        },
        Criterion {
            name: "AC4 indicator family",
            limit: secs(10),
            run: ac4,
        },
        Criterion {
            name: "AC5 discrete-log family",
            limit: secs(120),
            run: ac5,
        },
        Criterion {
            name: "AC6 mean weight",
            limit: secs(60),
            run: ac6,
        },
        Criterion {
            name: "AC7 weight-index bound",
            limit: secs(60),
            run: ac7,
        },
        Criterion {
            name: "AC8 composition laws",
            limit: secs(60),
            run: ac8,
        },
        Criterion {
            name: "AC9 small-field index bound",
            limit: secs(120),
            run: ac9,
        },
        Criterion {
            name: "AC10 cyclotomic interpolation form",
            limit: secs(30),
            run: ac10,
        },
        Criterion {
            name: "AC11 degree-index sharpness audit",
            limit: secs(120),
            run: ac11,
        },
        Criterion {
            name: "AC12 determinism",
            limit: None,
            run: ac12,
        },
    ];
    let mut runs = Runs::default();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)(&mut runs);
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} ({elapsed:.2?}): {detail}", c.name),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} ({elapsed:.2?}): {detail}", c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
