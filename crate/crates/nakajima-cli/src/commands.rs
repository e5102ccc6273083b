use std::path::Path;

use nakajima::desing::check_desing_surjective;
use nakajima::field::{Field, FieldTag, Fp, Q};
use nakajima::grassmann::{direct_fiber_count, fiber_count, gr_count, gr_nil_count, l_variety_count};
use nakajima::kan::{projective_multiplicities, Recollement};
use nakajima::mesh::check_admissible;
use nakajima::orbitcat::{Nakajima, Target};
use nakajima::present::Presentation;
use nakajima::quiver::Window;
use nakajima::schema::{config_to_json, gabriel_dot, presentation_json, window_dot, AutoJson, QuiverJson, MESH_SIGN_CONVENTION};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{load_module, load_vector, Instance, InstanceArgs};
use crate::{check, Cli, CliResult, Command, GrassCommand};

macro_rules! with_field {
    ($tag:expr, $f:ident => $body:expr) => {
        match $tag {
            FieldTag::Rational => {
                type $f = Q;
                $body
            }
            FieldTag::Prime(2) => {
                type $f = Fp<2>;
                $body
            }
            FieldTag::Prime(3) => {
                type $f = Fp<3>;
                $body
            }
            FieldTag::Prime(5) => {
                type $f = Fp<5>;
                $body
            }
            FieldTag::Prime(7) => {
                type $f = Fp<7>;
                $body
            }
            FieldTag::Prime(p) => Err(CliError::Input(format!("F{p} is not built in; use Q, F2, F3, F5 or F7"))),
        }
    };
}

fn field_tag(cli: &Cli, finite: bool) -> CliResult<FieldTag> {
    let name = cli.field_name();
    let tag = FieldTag::parse(&name).ok_or_else(|| CliError::Input(format!("unknown field {name}")))?;
    if finite && tag == FieldTag::Rational {
        return Err(CliError::Input("this command enumerates points and needs a finite field, e.g. --field F2".into()));
    }
    Ok(tag)
}

pub fn envelope(seed: u64, field: &str, command: &str, result: Value) -> Value {
    json!({
        "tool": "nakajima",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "mesh_sign_convention": MESH_SIGN_CONVENTION,
        "field": field,
        "command": command,
        "result": result,
    })
}

fn emit(cli: &Cli, command: &str, result: Value) -> CliResult<()> {
    let name = cli.field_name();
    let tag = FieldTag::parse(&name).map_or(name, |t| t.label());
    let text = serde_json::to_string_pretty(&envelope(cli.seed, &tag, command, result)).expect("serializable report") + "\n";
    write_text(cli.out.as_deref(), &text)
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn labelled<F: Field>(pres: &Presentation<F>, v: &[usize]) -> Value {
    let objs = pres.cat.objects();
    Value::Object(objs.iter().zip(v).map(|(o, &n)| (o.label.clone(), json!(n))).collect())
}

fn rng(cli: &Cli) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cli.seed)
}

fn target(s: &str) -> CliResult<Target> {
    Ok(s.parse::<Target>()?)
}

fn hilbert_degrees<F: Field>(pres: &Presentation<F>, degrees: Option<u32>) -> u32 {
    degrees.unwrap_or_else(|| pres.cat.top_degree().unwrap_or(pres.bound))
}

fn instance_json(inst: &Instance) -> Value {
    json!({
        "quiver": QuiverJson::from_quiver(&inst.quiver),
        "auto": AutoJson::from_spec(&inst.auto),
        "config": config_to_json(&inst.config),
    })
}

// Hom spaces grow quickly with the window; two levels either side already hold full meshes
const ADMISSIBILITY_WINDOW: (i32, i32) = (-2, 2);

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Build { instance, dir, window } => {
            let tag = field_tag(cli, false)?;
            with_field!(tag, F => build::<F>(cli, instance, dir, *window))
        }
        Command::Present { instance, target: t, degrees } => {
            let tag = field_tag(cli, false)?;
            with_field!(tag, F => {
                let nk: Nakajima<F> = instance.load()?.build()?;
                let pres = nk.presentation(target(t)?);
                emit(cli, "present", presentation_json(pres, hilbert_degrees(pres, *degrees))?)
            })
        }
        Command::Kan { instance, module } => {
            let tag = field_tag(cli, false)?;
            with_field!(tag, F => kan::<F>(cli, instance, module))
        }
        Command::Strata { instance, module, other, r_module } => {
            let tag = field_tag(cli, false)?;
            with_field!(tag, F => strata::<F>(cli, instance, module.as_deref(), other.as_deref(), r_module.as_deref()))
        }
        Command::Grass { action } => match action {
            GrassCommand::Count { instance, ambient, dim, target: t } => {
                let tag = field_tag(cli, true)?;
                with_field!(tag, F => {
                    let nk: Nakajima<F> = instance.load()?.build()?;
                    let pres = nk.presentation(target(t)?);
                    let m = load_module(pres, ambient)?;
                    let d = load_vector(pres, dim)?;
                    emit(cli, "grass count", json!({
                        "dims": labelled(pres, &m.dims),
                        "d": labelled(pres, &d),
                        "points": gr_count(&m, &d)?,
                        "nilpotent_points": gr_nil_count(&m, &d)?,
                    }))
                })
            }
            GrassCommand::Fiber { instance, module, v } => {
                let tag = field_tag(cli, true)?;
                with_field!(tag, F => fiber::<F>(cli, instance, module, v))
            }
            GrassCommand::Lvar { instance, v, w } => {
                let tag = field_tag(cli, true)?;
                with_field!(tag, F => {
                    let nk: Nakajima<F> = instance.load()?.build()?;
                    let rc = Recollement::for_nakajima(&nk)?;
                    let v = load_vector(&nk.p_pres, v)?;
                    let w = load_vector(&nk.s_pres, w)?;
                    let points = l_variety_count(&nk, &rc, &v, &w, &mut rng(cli))?;
                    emit(cli, "grass lvar", json!({ "v": labelled(&nk.p_pres, &v), "w": labelled(&nk.s_pres, &w), "points": points }))
                })
            }
        },
        Command::Fiber { instance, module, v } => {
            let tag = field_tag(cli, true)?;
            with_field!(tag, F => fiber::<F>(cli, instance, module, v))
        }
        Command::Desing { instance, module, e } => {
            let tag = field_tag(cli, true)?;
            with_field!(tag, F => desing::<F>(cli, instance, module, e))
        }
        Command::Check { suite } => match suite {
            None => emit(cli, "check", json!({ "suites": check::SUITES })),
            Some(name) => {
                let rows = check::run_suite(name, cli.seed)?;
                let failed = rows.iter().filter(|r| !r.passed).count();
                emit(cli, "check", json!({ "suite": name, "rows": rows, "failed": failed }))?;
                if failed > 0 {
                    return Err(CliError::CheckFailed(format!("{failed} of {} checks in suite {name}", rows.len())));
                }
                Ok(())
            }
        },
        Command::Dot { instance, target: t, window } => {
            let tag = field_tag(cli, false)?;
            with_field!(tag, F => {
                let inst = instance.load()?;
                let text = if t == "window" {
                    let zq = inst.framed()?;
                    let h = inst.quiver.coxeter_number();
                    window_dot(&Window::new(zq, window.unwrap_or((-h, h))))
                } else {
                    let nk: Nakajima<F> = inst.build()?;
                    gabriel_dot(t, nk.presentation(target(t)?))
                };
                write_text(cli.out.as_deref(), &text)
            })
        }
    }
}

fn build<F: Field>(cli: &Cli, args: &InstanceArgs, dir: &Path, window: Option<(i32, i32)>) -> CliResult<()> {
    let inst = args.load()?;
    let range = window.unwrap_or(ADMISSIBILITY_WINDOW);
    let adm = check_admissible::<F>(&inst.quiver, inst.config.clone(), inst.auto.clone(), range)?;
    if !adm.admissible {
        return Err(CliError::Input(format!("not admissible: {}", adm.counterexample.unwrap_or_default())));
    }
    let nk: Nakajima<F> = inst.build()?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for (name, t) in [("R", Target::R), ("S", Target::S), ("P", Target::P)] {
        let pres = nk.presentation(t);
        let json_path = dir.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&presentation_json(pres, hilbert_degrees(pres, None))?).expect("serializable") + "\n";
        write_text(Some(&json_path), &text)?;
        let dot_path = dir.join(format!("{name}.dot"));
        write_text(Some(&dot_path), &gabriel_dot(name, pres))?;
        files.push(json_path.display().to_string());
        files.push(dot_path.display().to_string());
    }
    let h = inst.quiver.coxeter_number();
    let win_path = dir.join("window.dot");
    write_text(Some(&win_path), &window_dot(&Window::new(inst.framed()?, (-h, h))))?;
    files.push(win_path.display().to_string());
    emit(cli, "build", json!({
        "instance": instance_json(&inst),
        "admissibility": { "window": [range.0, range.1], "report": adm },
        "summary": nk.summary(),
        "files": files,
    }))
}

fn kan<F: Field>(cli: &Cli, args: &InstanceArgs, module: &Path) -> CliResult<()> {
    let nk: Nakajima<F> = args.load()?.build()?;
    let rc = Recollement::for_nakajima(&nk)?;
    let m = load_module(&nk.s_pres, module)?;
    let k = rc.kan(&m)?;
    let r = &nk.r_pres;
    let kk = nk.kk_decomposition(&k)?;
    let ck = projective_multiplicities(&nk.p_pres, nk.p_top(), &nk.to_p_module(&k.ck)?)?;
    let stratum = rc.stratum_of(&nk, &m)?;
    emit(cli, "kan", json!({
        "module": m.to_json(),
        "k_left": labelled(r, &k.left.dims),
        "k_right": labelled(r, &k.right.dims),
        "k_lr": labelled(r, &k.klr.dims),
        "kk": labelled(r, &k.kk.dims),
        "ck": labelled(r, &k.ck.dims),
        "kk_projectives": labelled(&nk.p_pres, &kk),
        "ck_projectives": labelled(&nk.p_pres, &ck),
        "kk_predicted": labelled(&nk.p_pres, &nk.multiplicity_prediction(&k.klr.dims)?),
        "ck_is_shifted_kk": nk.ck_is_shifted_kk(&k)?,
        "stratum": labelled(&nk.p_pres, &stratum),
    }))
}

fn strata<F: Field>(cli: &Cli, args: &InstanceArgs, module: Option<&Path>, other: Option<&Path>, r_module: Option<&Path>) -> CliResult<()> {
    let nk: Nakajima<F> = args.load()?.build()?;
    let rc = Recollement::for_nakajima(&nk)?;
    let mut out = serde_json::Map::new();
    if let Some(path) = module {
        let m = load_module(&nk.s_pres, path)?;
        out.insert("stratum".into(), labelled(&nk.p_pres, &rc.stratum_of(&nk, &m)?));
        if let Some(p2) = other {
            let m2 = load_module(&nk.s_pres, p2)?;
            out.insert("other_stratum".into(), labelled(&nk.p_pres, &rc.stratum_of(&nk, &m2)?));
            out.insert("module_leq_other".into(), json!(rc.degeneration_leq(&nk, &m, &m2)?));
            out.insert("other_leq_module".into(), json!(rc.degeneration_leq(&nk, &m2, &m)?));
        }
    } else if other.is_some() {
        return Err(CliError::Input("--other needs --module".into()));
    }
    if let Some(path) = r_module {
        let n = load_module(&nk.r_pres, path)?;
        let point = rc.closed_orbit_normal_form(&nk, &n)?;
        out.insert("stable".into(), json!(rc.is_stable(&n)?));
        out.insert("closed_orbit".into(), json!({ "s_part": point.s_part.to_json(), "semisimple_part": labelled(&nk.p_pres, &point.ss_part) }));
    }
    if out.is_empty() {
        return Err(CliError::Input("give --module and/or --r-module".into()));
    }
    emit(cli, "strata", Value::Object(out))
}

fn fiber<F: Field>(cli: &Cli, args: &InstanceArgs, module: &Path, v: &Path) -> CliResult<()> {
    let nk: Nakajima<F> = args.load()?.build()?;
    let rc = Recollement::for_nakajima(&nk)?;
    let m = load_module(&nk.s_pres, module)?;
    let v = load_vector(&nk.p_pres, v)?;
    let points = fiber_count(&nk, &rc, &m, &v, &mut rng(cli))?;
    let direct = direct_fiber_count(&nk, &rc, &m, &v)?;
    emit(cli, "fiber", json!({
        "stratum": labelled(&nk.p_pres, &rc.stratum_of(&nk, &m)?),
        "v": labelled(&nk.p_pres, &v),
        "points": points,
        "direct_count": direct,
    }))?;
    if points != direct {
        return Err(CliError::CheckFailed(format!("fiber has {points} points through CK but {direct} by direct count")));
    }
    Ok(())
}

fn desing<F: Field>(cli: &Cli, args: &InstanceArgs, module: &Path, e: &Path) -> CliResult<()> {
    let inst = args.load()?;
    let nk: Nakajima<F> = inst.build()?;
    let rc = Recollement::for_nakajima(&nk)?;
    let m = load_module(&nk.s_pres, module)?;
    let e = load_vector(&nk.s_pres, e)?;
    let report = check_desing_surjective(&rc, &m, &e, &mut rng(cli))?;
    let passed = report.passed;
    let witness = report.witness.clone();
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["instance"] = instance_json(&inst);
    value["r_objects"] = json!(nk.r.objects().iter().map(|o| o.label.clone()).collect::<Vec<_>>());
    emit(cli, "desing", value)?;
    if !passed {
        return Err(CliError::CheckFailed(witness.unwrap_or_else(|| "not every submodule was covered".into())));
    }
    Ok(())
}
