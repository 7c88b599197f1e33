use std::path::Path;

use croc::bialg::{asymmetric_candidate, check_bialgebra, BialgebraSpec};
use croc::endcroc::{general_compose, HomTensor};
use croc::mho::{associativity_report, differential, product, BialgebraPoint, MhoElement};
use croc::qlinalg::ChainComplex;
use croc::quillen::{bar_assoc, conjecture_pipeline, quillen_cl, quillen_lc, DgAlgebra, DgLieAlgebra, FreeDgAlgebra, QuillenError};
use croc::strata::{
    chain_complex, enumerate_strata, sample, Gauge, LaurentConfiguration, OrientationTable, Profile, StrataPoset, StratumType,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{BialgCmd, BialgSource, Cli, CrocCmd, DgInput, Failure, Format, MhoCmd, Output, QuillenCmd, StrataCmd, Verb, VerifyCmd};

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let table = OrientationTable::new(Gauge { seed: None });
    match &cli.verb {
        Verb::Strata(cmd) => strata(cmd, cli.format, cli.seed, &table),
        Verb::Bialg(BialgCmd::Check { input, builtin }) => {
            let b = bialgebra(input.as_deref(), builtin.as_deref())?;
            let d = check_bialgebra(&b);
            let report = json!({
                "assoc": d.assoc, "coassoc": d.coassoc, "compat": d.compat,
                "ok": d.is_zero(),
                "witness": d.witness().map(|(law, idx, v)| json!({"law": law, "index": idx, "value": v.to_string()})),
            });
            if d.is_zero() {
                Ok(Output::Json(report))
            } else {
                Err(Failure::Verification(report))
            }
        }
        Verb::Croc(CrocCmd::Compose { x, y }) => {
            let (x, y): (HomTensor, HomTensor) = (read_json(x)?, read_json(y)?);
            let z = general_compose(&x, &y).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Output::Json(json!(z)))
        }
        Verb::Mho(cmd) => mho(cmd, cli.seed, &table),
        Verb::Quillen(cmd) => quillen(cmd, &table),
        Verb::Verify(VerifyCmd::All { bound, dim }) => crate::verify::all(*bound, *dim, cli.seed),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn profile(s: &str) -> Result<Profile, Failure> {
    s.parse().map_err(|e: croc::strata::StrataError| Failure::Input(e.to_string()))
}

fn builtin(name: &str) -> Result<BialgebraSpec, Failure> {
    match name {
        "c2" => Ok(BialgebraSpec::group_algebra_c2()),
        "candidate" => asymmetric_candidate().ok_or_else(|| Failure::Runtime("no asymmetric candidate found".into())),
        _ => match name.strip_prefix("zero").and_then(|d| d.parse().ok()) {
            Some(d) => Ok(BialgebraSpec::zero(d)),
            None => Err(Failure::Input(format!("unknown bialgebra {name:?}; expected c2, candidate or zero<dim>"))),
        },
    }
}

fn bialgebra(file: Option<&Path>, name: Option<&str>) -> Result<BialgebraSpec, Failure> {
    match (file, name) {
        (Some(f), _) => read_json(f),
        (None, Some(n)) => builtin(n),
        (None, None) => builtin("c2"),
    }
}

fn source(s: &BialgSource) -> Result<BialgebraSpec, Failure> {
    bialgebra(s.file.as_deref(), s.builtin.as_deref())
}

fn complex_summary(c: &ChainComplex) -> Result<Value, Failure> {
    let check = c.check();
    // homology is only defined once the boundary squares to zero
    let betti = if check.ok { Some(c.homology().map_err(|e| Failure::Runtime(e.to_string()))?.betti) } else { None };
    Ok(json!({ "ranks": c.ranks, "betti": betti, "ok": check.ok, "witness": check.witness }))
}

fn strata(cmd: &StrataCmd, format: Format, seed: u64, table: &OrientationTable) -> Result<Output, Failure> {
    let input = |e: croc::strata::StrataError| Failure::Input(e.to_string());
    match cmd {
        StrataCmd::Enum { profile: p } => {
            let q = profile(p)?;
            if format == Format::Dot {
                return Ok(Output::Text(StrataPoset::build(&q, table).map_err(input)?.to_dot()));
            }
            let strata = enumerate_strata(&q).map_err(input)?;
            let list: Vec<Value> = strata
                .iter()
                .map(|s| {
                    let snaps: Vec<String> = s.snapshots().iter().map(|x| x.profile.to_string()).collect();
                    json!({ "stratum": s, "dim": s.dim(), "snapshots": snaps })
                })
                .collect();
            Ok(Output::Json(json!({ "profile": q.to_string(), "count": list.len(), "strata": list })))
        }
        StrataCmd::Complex { profile: p } => {
            let q = profile(p)?;
            let c = chain_complex(&q, table).map_err(input)?;
            let summary = complex_summary(&c)?;
            if summary["ok"] == json!(true) {
                Ok(Output::Json(json!({ "profile": q.to_string(), "complex": summary })))
            } else {
                Err(Failure::Verification(json!({ "invariant": "boundary squares to zero", "profile": q.to_string(), "complex": summary })))
            }
        }
        StrataCmd::Classify { input: path } => {
            let c: LaurentConfiguration = read_json(path)?;
            let s = c.classify().map_err(input)?;
            Ok(Output::Json(json!({ "stratum": s, "dim": s.dim() })))
        }
        StrataCmd::Sample { profile: p, levels } => {
            let q = profile(p)?;
            let s = if levels.is_empty() { StratumType::open(&q) } else { StratumType::from_raw_levels(q, levels) }.map_err(input)?;
            Ok(Output::Json(json!(sample(&s, seed))))
        }
    }
}

fn element(path: &Path, dim: usize) -> Result<MhoElement, Failure> {
    MhoElement::from_json(dim, &read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn mho(cmd: &MhoCmd, seed: u64, table: &OrientationTable) -> Result<Output, Failure> {
    let runtime = |e: croc::mho::MhoError| Failure::Input(e.to_string());
    match cmd {
        MhoCmd::Product { x, y, dim } => {
            let z = product(table, &element(x, *dim)?, &element(y, *dim)?).map_err(runtime)?;
            Ok(Output::Json(json!(z)))
        }
        MhoCmd::D { x, source: s } => {
            let point = BialgebraPoint::new(source(s)?);
            let dx = differential(&point, table, &element(x, point.dim())?).map_err(runtime)?;
            Ok(Output::Json(json!(dx)))
        }
        MhoCmd::Verify { bound, dim } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (checked, witnesses) = associativity_report(table, *bound, *dim, 1, &mut rng).map_err(runtime)?;
            let report = json!({ "invariant": "associativity", "checked": checked, "witnesses": witnesses });
            if witnesses.is_empty() {
                Ok(Output::Json(report))
            } else {
                Err(Failure::Verification(report))
            }
        }
    }
}

fn quillen_failure(e: QuillenError) -> Failure {
    match e {
        QuillenError::NotCommutative(v) => Failure::Verification(json!({ "invariant": v.law, "witness": v.at })),
        QuillenError::NotLie(w) => Failure::Verification(json!({ "invariant": "differential preserves the Lie subalgebra", "witness": w })),
        other => Failure::Input(other.to_string()),
    }
}

fn dg_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn free_report(f: &FreeDgAlgebra) -> Result<Result<Value, Value>, Failure> {
    let images: Vec<Value> = (0..f.generators())
        .map(|g| {
            let terms: Vec<Value> = f.differential_of_generator(g).iter().map(|(w, c)| json!([w, c.to_string()])).collect();
            json!({ "generator": g, "degree": f.degrees()[g], "image": terms })
        })
        .collect();
    let witness = f.d_squared_witness();
    let report = json!({
        "flavor": f.flavor(),
        "max_weight": f.max_weight(),
        "generators": images,
        "truncated": f.truncates(),
        "complex": complex_summary(&f.complex())?,
        "d_squared_witness": witness.as_ref().map(|(w, image)| json!({
            "word": w,
            "image": image.iter().map(|(u, c)| json!([u, c.to_string()])).collect::<Vec<_>>(),
        })),
    });
    Ok(if witness.is_none() { Ok(report) } else { Err(report) })
}

fn quillen(cmd: &QuillenCmd, table: &OrientationTable) -> Result<Output, Failure> {
    let finish = |r: Result<Value, Value>| match r {
        Ok(v) => Ok(Output::Json(v)),
        Err(v) => Err(Failure::Verification(v)),
    };
    match cmd {
        QuillenCmd::Bar(DgInput { input, max_weight }) => {
            let a = DgAlgebra::from_json(&dg_json(input)?).map_err(Failure::Input)?;
            finish(free_report(&bar_assoc(&a, *max_weight).map_err(quillen_failure)?)?)
        }
        QuillenCmd::Lc(DgInput { input, max_weight }) => {
            let g = DgLieAlgebra::from_json(&dg_json(input)?).map_err(Failure::Input)?;
            finish(free_report(&quillen_lc(&g, *max_weight).map_err(quillen_failure)?)?)
        }
        QuillenCmd::Cl(DgInput { input, max_weight }) => {
            let a = DgAlgebra::from_json(&dg_json(input)?).map_err(Failure::Input)?;
            let lie = quillen_cl(&a, *max_weight).map_err(quillen_failure)?;
            let basis: Vec<Value> =
                lie.basis().iter().map(|b| json!({ "word": b.word, "square": b.square, "degree": b.degree })).collect();
            let witness = lie.d_squared_witness();
            let report = json!({
                "max_weight": max_weight,
                "dims_by_weight": lie.dims_by_weight(),
                "basis": basis,
                "truncated": lie.truncated(),
                "complex": complex_summary(&lie.complex())?,
                "d_squared_witness": witness,
            });
            finish(if witness.is_none() { Ok(report) } else { Err(report) })
        }
        QuillenCmd::Pipeline { source: s, bound, max_weight } => {
            let b = source(s)?;
            let report = conjecture_pipeline(&b, table, *bound, *max_weight).map_err(quillen_failure)?;
            let ok = report.stages.iter().all(|s| s.complex_ok);
            finish(if ok { Ok(json!(report)) } else { Err(json!(report)) })
        }
    }
}
