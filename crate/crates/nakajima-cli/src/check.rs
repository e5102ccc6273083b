//! Built-in suites for `nakajima check <suite>`. Each is a small, fixed, seeded
//! run over A2 with `F = τ` (plus the cluster instance for presentations).

use nakajima::desing::check_desing_surjective;
use nakajima::field::{Field, Fp, Q};
use nakajima::grassmann::{dimension_vectors_below, direct_fiber_count, fiber_count};
use nakajima::kan::Recollement;
use nakajima::orbitcat::Nakajima;
use nakajima::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition};
use nakajima::repmod::enumerate::iso_classes_upto;
use nakajima::repmod::random::random_module;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::CliResult;

pub const SUITES: [&str; 5] = ["presentations", "kan", "resolutions", "grassmann", "desing"];

#[derive(Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn row(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Row {
    Row { name: name.into(), passed, detail: detail.into() }
}

fn a2<F: Field>(auto: AutoSpec) -> CliResult<Nakajima<F>> {
    Ok(Nakajima::build(FramedRepetition::new(DynkinQuiver::linear_a(2), auto, Configuration::All)?, None)?)
}

pub fn run_suite(name: &str, seed: u64) -> CliResult<Vec<Row>> {
    match name {
        "presentations" => presentations(),
        "kan" => kan(seed),
        "resolutions" => resolutions(),
        "grassmann" => grassmann(seed),
        "desing" => desing(seed),
        _ => Err(CliError::Input(format!("unknown suite {name}; suites are {}", SUITES.join(", ")))),
    }
}

fn presentations() -> CliResult<Vec<Row>> {
    let mut rows = Vec::new();
    let nk = a2::<Q>(AutoSpec::tau())?;
    let table = nk.p_table()?;
    rows.push(row("A2/τ: P has 2 objects", nk.p.len() == 2, format!("{} objects", nk.p.len())));
    rows.push(row("A2/τ: Hilbert table of P is all ones", table == vec![vec![1, 1], vec![1, 1]], format!("{table:?}")));
    for (label, nk) in [("A2/τ", nk), ("A2/Στ⁻¹", a2::<Q>(AutoSpec::cluster())?)] {
        let counts = nk.s_pres.counts();
        let predicted = nk.predicted_qs_counts()?;
        let ok = (counts.arrows.clone(), counts.relations.clone()) == predicted;
        rows.push(row(format!("{label}: arrows and relations of S as predicted"), ok, format!("arrows {:?}, relations {:?}", counts.arrows, counts.relations)));
    }
    Ok(rows)
}

fn kan(seed: u64) -> CliResult<Vec<Row>> {
    let nk = a2::<Q>(AutoSpec::tau())?;
    let rc = Recollement::for_nakajima(&nk)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for i in 0..10 {
        let m = random_module(&nk.s_pres, 5, &mut rng)?;
        let k = rc.kan(&m)?;
        let shifted = nk.ck_is_shifted_kk(&k)?;
        let kk = nk.kk_decomposition(&k)?;
        let predicted = nk.multiplicity_prediction(&k.klr.dims)?;
        rows.push(row(format!("sample {i} {:?}: CK = Σ KK", m.dims), shifted, format!("KK {kk:?}")));
        rows.push(row(format!("sample {i} {:?}: KK multiplicities", m.dims), kk == predicted, format!("computed {kk:?}, predicted {predicted:?}")));
    }
    Ok(rows)
}

fn resolutions() -> CliResult<Vec<Row>> {
    let nk = a2::<Q>(AutoSpec::tau())?;
    let mut rows: Vec<Row> = nk
        .check_r_resolutions(8)?
        .into_iter()
        .map(|c| row(format!("{} resolution of {}", c.side, c.object), c.passed(), format!("actual {:?}", c.actual)))
        .collect();
    let (c, syzygy) = nk.check_s_resolution(0, 4, 14)?;
    rows.push(row(format!("S: resolution of the simple at {}", c.object), c.exact && syzygy > 0, format!("terms {:?}, fourth syzygy {syzygy}", c.actual)));
    Ok(rows)
}

fn grassmann(seed: u64) -> CliResult<Vec<Row>> {
    let nk = a2::<Fp<2>>(AutoSpec::tau())?;
    let rc = Recollement::for_nakajima(&nk)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for m in iso_classes_upto(&nk.s_pres, 2)? {
        let k = rc.kan(&m)?;
        let top: Vec<usize> = nk.unfrozen.iter().map(|&x| k.right.dims[x]).collect();
        let v0 = rc.stratum_of(&nk, &m)?;
        let mut agree = true;
        let mut total = 0;
        for v in dimension_vectors_below(&top) {
            let a = fiber_count(&nk, &rc, &m, &v, &mut rng)?;
            agree &= a == direct_fiber_count(&nk, &rc, &m, &v)?;
            total += a;
        }
        let base = fiber_count(&nk, &rc, &m, &v0, &mut rng)?;
        rows.push(row(format!("M {:?}: fiber counts agree, one point at v0", m.dims), agree && base == 1, format!("{total} points over all v")));
    }
    Ok(rows)
}

fn desing(seed: u64) -> CliResult<Vec<Row>> {
    let nk = a2::<Fp<2>>(AutoSpec::tau())?;
    let rc = Recollement::for_nakajima(&nk)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for m in iso_classes_upto(&nk.s_pres, 3)? {
        let (mut runs, mut bad) = (0, None);
        for e in dimension_vectors_below(&m.dims) {
            let r = check_desing_surjective(&rc, &m, &e, &mut rng)?;
            runs += 1;
            if !r.passed && bad.is_none() {
                bad = Some(format!("e = {e:?}: {}", r.witness.unwrap_or_default()));
            }
        }
        let passed = bad.is_none();
        rows.push(row(format!("M {:?} ({})", m.dims, m.fingerprint().top.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")), passed, bad.unwrap_or(format!("{runs} dimension vectors"))));
    }
    Ok(rows)
}
