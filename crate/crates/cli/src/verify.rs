//! The bundled suites behind `verify all`. Suites run on their own threads
//! and report in a fixed order.

use std::collections::BTreeMap;

use croc::bialg::{asymmetric_candidate, check_bialgebra, compose_assoc, AssocBasis, BialgebraSpec};
use croc::endcroc::{general_compose, HomTensor};
use croc::mho::{associativity_report, differential, BialgebraPoint, MhoElement};
use croc::qlinalg::rat;
use croc::quillen::{bar_assoc, free_lie_basis, quillen_lc, witt_dimension, DgAlgebra, DgLieAlgebra};
use croc::strata::{
    chain_complex, codim1_strata, enumerate_strata, sample, OrientationTable, Profile, StrataError, StrataPoset,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Failure, Output};

type Suite = Result<Value, Value>;

fn fail(invariant: &str, witness: Value) -> Suite {
    Err(json!({ "invariant": invariant, "witness": witness }))
}

fn strata(bound: usize) -> Suite {
    let table = OrientationTable::default();
    let profiles = Profile::geometric_up_to(bound.min(7));
    for q in &profiles {
        let name = q.to_string();
        let poset = StrataPoset::build(q, &table).map_err(|e| json!({ "profile": name, "error": e.to_string() }))?;
        if let Err(e) = poset.check_diamonds() {
            return fail("diamond property", json!({ "profile": name, "error": e.to_string() }));
        }
        let c = chain_complex(q, &table).map_err(|e| json!({ "profile": name, "error": e.to_string() }))?;
        let check = c.check();
        if !check.ok {
            return fail("boundary squares to zero", json!({ "profile": name, "at": check.witness }));
        }
        let betti = c.homology().map_err(|e| json!({ "profile": name, "error": e.to_string() }))?.betti;
        if betti != BTreeMap::from([(0, 1)]) {
            return fail("contractible", json!({ "profile": name, "betti": betti }));
        }
    }
    Ok(json!({ "profiles": profiles.len() }))
}

fn census(bound: usize) -> Suite {
    let mut n = 0;
    for m in 1..bound {
        for k in 1..=bound - m {
            if m + k < 3 {
                continue;
            }
            let got = match codim1_strata(&Profile::single(m, k)) {
                Err(StrataError::TooSmall(_)) => 0,
                other => other.map_err(|e| json!(e.to_string()))?.len(),
            };
            let want = (1usize << (m - 1)) * (1 << (k - 1)) - 2;
            if got != want {
                return fail("codimension-one count", json!({ "profile": format!("({m});({k})"), "got": got, "want": want }));
            }
            n += 1;
        }
    }
    Ok(json!({ "profiles": n }))
}

fn classifier(bound: usize, seed: u64) -> Suite {
    let mut n = 0;
    for q in Profile::geometric_up_to(bound.min(6)) {
        for (k, s) in enumerate_strata(&q).map_err(|e| json!(e.to_string()))?.into_iter().enumerate() {
            let back = sample(&s, seed.wrapping_add(k as u64)).classify();
            if back.as_ref() != Ok(&s) {
                return fail("classify after sample", json!({ "stratum": s, "classified": back.ok() }));
            }
            n += 1;
        }
    }
    Ok(json!({ "strata": n }))
}

fn composable(x: &Profile, y: &Profile) -> bool {
    x.lower.len() == y.lower.iter().sum::<usize>() && y.upper.len() == x.upper.iter().sum::<usize>()
}

fn end_axioms(bound: usize, dim: usize, seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ps: Vec<Profile> = (2..=bound.min(4)).flat_map(Profile::all_with_points).collect();
    let mut n = 0;
    for x in &ps {
        for y in ps.iter().filter(|y| composable(x, y)) {
            for z in ps.iter().filter(|z| composable(y, z)).step_by(3) {
                let (tx, ty, tz) = (
                    HomTensor::random(x.clone(), dim, 0.4, &mut rng),
                    HomTensor::random(y.clone(), dim, 0.4, &mut rng),
                    HomTensor::random(z.clone(), dim, 0.4, &mut rng),
                );
                let left = general_compose(&general_compose(&tx, &ty).unwrap(), &tz).unwrap();
                let right = general_compose(&tx, &general_compose(&ty, &tz).unwrap()).unwrap();
                if left != right {
                    return fail("associativity of general_compose", json!([x.to_string(), y.to_string(), z.to_string()]));
                }
                n += 1;
            }
        }
    }
    Ok(json!({ "triples": n }))
}

fn references() -> Vec<BialgebraSpec> {
    let mut out = vec![BialgebraSpec::group_algebra_c2()];
    out.extend(asymmetric_candidate());
    out
}

fn bialgebras() -> Suite {
    let mut broken = 0;
    for b in references() {
        let d = check_bialgebra(&b);
        if !d.is_zero() {
            return fail("bialgebra axioms", json!(d.witness().map(|w| format!("{w:?}"))));
        }
        for target in 0..2 {
            for k in 0..8u8 {
                let (mut mu, mut delta) = (b.mu().clone(), b.delta().clone());
                let t = if target == 0 { &mut mu } else { &mut delta };
                t.add_entry(vec![k >> 2 & 1, k >> 1 & 1, k & 1], rat(1, 1)).unwrap();
                let d = check_bialgebra(&BialgebraSpec::new(mu, delta).unwrap());
                if !d.is_zero() && d.witness().is_none() {
                    return fail("defects carry witnesses", json!({ "target": target, "entry": k }));
                }
                broken += !d.is_zero() as usize;
            }
        }
    }
    Ok(json!({ "breaking_perturbations": broken }))
}

fn assoc(bound: usize) -> Suite {
    let bs = references();
    let ps: Vec<Profile> = (2..=bound.min(4)).flat_map(Profile::all_with_points).collect();
    let mut pairs = 0;
    for px in &ps {
        for py in ps.iter().filter(|py| composable(px, py)) {
            for x in AssocBasis::all(px) {
                for y in AssocBasis::all(py) {
                    pairs += 1;
                    let z = match compose_assoc(&x, &y) {
                        Ok(z) => z,
                        Err(e) => return fail("Assoc is closed under composition", json!({ "x": x.to_string(), "y": y.to_string(), "error": e.to_string() })),
                    };
                    for b in &bs {
                        let want = general_compose(&x.eval(b).unwrap(), &y.eval(b).unwrap()).unwrap();
                        if z.eval(b).unwrap() != want {
                            return fail("evaluation commutes with composition", json!({ "x": x.to_string(), "y": y.to_string() }));
                        }
                    }
                }
            }
        }
    }
    Ok(json!({ "pairs": pairs }))
}

fn mho(bound: usize, dim: usize, seed: u64) -> Suite {
    let table = OrientationTable::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (checked, witnesses) = associativity_report(&table, bound, dim, 1, &mut rng).map_err(|e| json!(e.to_string()))?;
    if let Some(w) = witnesses.first() {
        return fail("associativity of the product", json!(w));
    }
    if dim == 2 {
        let point = BialgebraPoint::new(BialgebraSpec::group_algebra_c2());
        let ps: Vec<Profile> = (3..=bound.min(4)).flat_map(Profile::all_with_points).collect();
        for q in ps {
            let x = MhoElement::from_tensor(HomTensor::random(q.clone(), 2, 0.5, &mut rng));
            let dd = differential(&point, &table, &differential(&point, &table, &x).unwrap()).unwrap();
            if !dd.is_zero() {
                return fail("d² = 0 at ℚ[C₂]", json!(q.to_string()));
            }
        }
    }
    Ok(json!({ "triples": checked }))
}

fn quillen() -> Suite {
    let betti = quillen_lc(&DgLieAlgebra::abelian(2), 3).unwrap().complex().homology().unwrap().betti;
    if betti != BTreeMap::from([(0, 1), (1, 2), (2, 1)]) {
        return fail("abelian Chevalley–Eilenberg ranks", json!(betti));
    }
    let basis = free_lie_basis(&[0, 0], 5);
    for k in 1..=5 {
        let count = basis.iter().filter(|b| b.weight() == k).count();
        if count != witt_dimension(2, k) {
            return fail("Witt dimensions", json!({ "weight": k, "count": count }));
        }
    }
    let mut a = DgAlgebra::new(vec![0]);
    a.set_product(0, 0, [(0, rat(1, 1))].into());
    if let Some((w, _)) = bar_assoc(&a, 4).unwrap().d_squared_witness() {
        return fail("bar d² = 0", json!(w));
    }
    Ok(json!({ "checks": 3 }))
}

pub fn all(bound: usize, dim: usize, seed: u64) -> Result<Output, Failure> {
    if bound < 2 || dim == 0 {
        return Err(Failure::Input("bound must be at least 2 and dim positive".into()));
    }
    type Job = Box<dyn FnOnce() -> Suite + Send>;
    let jobs: Vec<(&str, Job)> = vec![
        ("strata", Box::new(move || strata(bound))),
        ("codim-one census", Box::new(move || census(bound))),
        ("classifier", Box::new(move || classifier(bound, seed))),
        ("end axioms", Box::new(move || end_axioms(bound, dim, seed))),
        ("bialgebra defects", Box::new(bialgebras)),
        ("assoc", Box::new(move || assoc(bound))),
        ("mho", Box::new(move || mho(bound, dim, seed))),
        ("quillen", Box::new(quillen)),
    ];
    let results: Vec<(&str, Suite)> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.into_iter().map(|(name, job)| (name, s.spawn(job))).collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err(json!({ "invariant": "suite panicked" })))))
            .collect()
    });
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let suites: Vec<Value> = results
        .into_iter()
        .map(|(name, r)| match r {
            Ok(v) => json!({ "suite": name, "ok": true, "summary": v }),
            Err(v) => json!({ "suite": name, "ok": false, "failure": v }),
        })
        .collect();
    let report = json!({ "bound": bound, "dim": dim, "seed": seed, "ok": ok, "suites": suites });
    if ok {
        Ok(Output::Json(report))
    } else {
        Err(Failure::Verification(report))
    }
}
