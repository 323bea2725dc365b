//! Command-line front door: parse JSON inputs, dispatch computations,
//! emit JSON or plaintext reports.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 malformed
//! input, 3 enumeration cap exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;

use weidual::algebra::{BilinearForm, SubspaceLattice};
use weidual::checks::{self, FuzzConfig};
use weidual::demipolymatroid::SubspaceFamily;
use weidual::error::{Caps, Error};
use weidual::io::{
    BridgeDto, CodeDto, DemiMatroidDto, FlagDto, FormDto, GradedBridgeDto, PairDto, PolymatroidDto,
    PosetDto, SetFamilyDto, SubspaceFamilyDto,
};
use weidual::metric_codes::{self, galois_closed_family};
use weidual::poset::Poset;
use weidual::report::{digest, ClauseCheck, Report};

const USAGE: &str = "usage: weidual <command> [inputs...] [options]

commands:
  ghw CODE.json                          generalized weight table
  dlp CODE.json                          dimension/length profile table
  weights gr FLAG.json                   rank-extension weights (--family galois|full)
  weights poset FLAG.json [POSET.json]   poset-metric weights (default antichain)
  weights delsarte FLAG.json             matrix-rank weights over the full lattice of M
  weights ghwr CODE.json [POSET.json]    chain-ring rank weights (default antichain)
  dual code CODE.json                    dual (annihilator) code
  dual demimatroid DM.json               dual rank table
  dual polymatroid DP.json               dual rank table (standard form)
  dual flags FLAG.json                   dual flag family (standard form)
  check wei CODE.json                    weight partition report
  check forney CODE.json                 profile identity report
  check t22 PAIR1.json PAIR2.json        four-way equivalence (--w W to override)
  check t31 BRIDGE.json                  bridge duality conclusions
  check t32 GRADED.json                  graded-order bridge conclusions
  check t41 DM.json FAMILY.json          family-relative duality
  check t42 DM.json POSET.json           poset-relative duality
  check t51 DP.json SUBFAM.json [FORM.json]
  check t71 FLAG.json                    rank-extension duality (--family galois|full)
  check t72 FLAG.json POSET.json         poset-metric duality
  check t73 FLAG.json                    matrix-metric duality
  check t74 CODE.json POSET.json         chain-ring closure duality
  fuzz                                   randomized verification suite
       --codes N --pairs N --bridges N --demimatroids N
       --polymatroids N --flags N --z4 L --q Q --m M

options:
  --seed N       seed for randomized commands (default 0)
  --cap N        enumeration cap (default 100000)
  --format F     json | text (default json)
  --out FILE     write the report to FILE instead of stdout
";

struct Options {
    seed: u64,
    caps: Caps,
    format: String,
    out: Option<String>,
    family: Option<String>,
    w: Option<i64>,
    counts: BTreeMap<String, u64>,
}

enum CliError {
    BadInput(String),
    CapExceeded(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::CapExceeded { .. } => CliError::CapExceeded(e.to_string()),
            Error::InvalidInput(_) => CliError::BadInput(e.to_string()),
        }
    }
}

fn parse_options(args: &[String]) -> Result<(Vec<String>, Options), CliError> {
    let mut positional = Vec::new();
    let mut opts = Options {
        seed: 0,
        caps: Caps::default(),
        format: "json".to_string(),
        out: None,
        family: None,
        w: None,
        counts: BTreeMap::new(),
    };
    let count_flags = [
        "codes",
        "pairs",
        "bridges",
        "demimatroids",
        "polymatroids",
        "flags",
        "z4",
        "q",
        "m",
    ];
    let mut i = 0;
    while i < args.len() {
        let arg = args[i].clone();
        if let Some(name) = arg.strip_prefix("--") {
            let value = args
                .get(i + 1)
                .cloned()
                .ok_or_else(|| CliError::BadInput(format!("missing value for --{}", name)))?;
            i += 1;
            match name {
                "seed" => opts.seed = parse_num(&value)?,
                "cap" => opts.caps = Caps::new(parse_num(&value)?),
                "format" => {
                    if value != "json" && value != "text" {
                        return Err(CliError::BadInput(format!("unknown format {:?}", value)));
                    }
                    opts.format = value;
                }
                "out" => opts.out = Some(value),
                "family" => opts.family = Some(value),
                "w" => opts.w = Some(parse_num(&value)? as i64),
                _ if count_flags.contains(&name) => {
                    opts.counts.insert(name.to_string(), parse_num(&value)?);
                }
                _ => return Err(CliError::BadInput(format!("unknown option {}", arg))),
            }
        } else {
            positional.push(arg);
        }
        i += 1;
    }
    Ok((positional, opts))
}

fn parse_num(s: &str) -> Result<u64, CliError> {
    s.parse()
        .map_err(|_| CliError::BadInput(format!("expected a number, got {:?}", s)))
}

fn read_file(path: &str) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::BadInput(format!("cannot read {}: {}", path, e)))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, CliError> {
    serde_json::from_slice(bytes)
        .map_err(|e| CliError::BadInput(format!("malformed {} input: {}", what, e)))
}

fn tables_value(wp: &weidual::demimatroid::WeightProfile) -> serde_json::Value {
    serde_json::json!({"d": wp.weights, "K": wp.profiles})
}

fn emit(opts: &Options, body: String) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::BadInput(format!("cannot write {}: {}", path, e))),
        None => {
            println!("{}", body);
            Ok(())
        }
    }
}

fn render_value(opts: &Options, value: serde_json::Value) -> String {
    if opts.format == "text" {
        let mut out = String::new();
        if let serde_json::Value::Object(map) = &value {
            for (key, v) in map {
                out.push_str(&format!("{}: {}\n", key, v));
            }
        } else {
            out.push_str(&format!("{}\n", value));
        }
        out
    } else {
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

fn render_report(opts: &Options, report: &Report) -> String {
    if opts.format == "text" {
        report.to_text()
    } else {
        report.to_json()
    }
}

/// Resolve the family choice for flags over the flattened ambient.
fn resolve_ambient_family(
    flags: &metric_codes::CodeFlagFamily,
    opts: &Options,
) -> Result<SubspaceFamily, CliError> {
    match opts.family.as_deref() {
        None | Some("galois") => Ok(galois_closed_family(flags, &opts.caps)?),
        Some("full") => {
            let lattice = SubspaceLattice::new(flags.ring().clone(), flags.ambient(), &opts.caps)?;
            Ok(SubspaceFamily::full_lattice(&lattice))
        }
        Some(other) => Err(CliError::BadInput(format!("unknown family {:?}", other))),
    }
}

fn run(args: Vec<String>) -> Result<bool, CliError> {
    let (pos, opts) = parse_options(&args)?;
    if pos.is_empty() {
        return Err(CliError::BadInput(format!("no command given\n{}", USAGE)));
    }
    let command = pos[0].as_str();
    let rest = &pos[1..];

    let arg_at = |i: usize, what: &str| -> Result<&String, CliError> {
        rest.get(i)
            .ok_or_else(|| CliError::BadInput(format!("missing {} argument", what)))
    };

    match command {
        "ghw" => {
            let bytes = read_file(arg_at(0, "code file")?)?;
            let code = parse_json::<CodeDto>(&bytes, "code")?.to_linear_code()?;
            let table =
                weidual::hamming::ghw_table(&code, weidual::hamming::GhwMethod::Subset, &opts.caps)?;
            emit(&opts, render_value(&opts, serde_json::json!({ "d": table })))?;
            Ok(true)
        }
        "dlp" => {
            let bytes = read_file(arg_at(0, "code file")?)?;
            let code = parse_json::<CodeDto>(&bytes, "code")?.to_linear_code()?;
            let table = weidual::hamming::dlp_table(&code);
            emit(&opts, render_value(&opts, serde_json::json!({ "K": table })))?;
            Ok(true)
        }
        "weights" => {
            let metric = arg_at(0, "metric")?.as_str();
            match metric {
                "gr" => {
                    let bytes = read_file(arg_at(1, "flag file")?)?;
                    let flags = parse_json::<FlagDto>(&bytes, "flag")?.to_flags()?;
                    let fam = resolve_ambient_family(&flags, &opts)?;
                    let wp = metric_codes::gr_weights(&flags, &fam)?;
                    emit(&opts, render_value(&opts, tables_value(&wp)))?;
                }
                "poset" => {
                    let bytes = read_file(arg_at(1, "flag file")?)?;
                    let flags = parse_json::<FlagDto>(&bytes, "flag")?.to_flags()?;
                    let poset = match rest.get(2) {
                        Some(path) => {
                            parse_json::<PosetDto>(&read_file(path)?, "poset")?.to_poset()?
                        }
                        None => Poset::antichain(flags.m()),
                    };
                    let wp = metric_codes::poset_weights(&flags, &poset, &opts.caps)?;
                    emit(&opts, render_value(&opts, tables_value(&wp)))?;
                }
                "delsarte" => {
                    let bytes = read_file(arg_at(1, "flag file")?)?;
                    let flags = parse_json::<FlagDto>(&bytes, "flag")?.to_flags()?;
                    let lattice =
                        SubspaceLattice::new(flags.ring().clone(), flags.w_dim(), &opts.caps)?;
                    let fam = SubspaceFamily::full_lattice(&lattice);
                    let wp = metric_codes::delsarte_weights(&flags, &fam)?;
                    emit(&opts, render_value(&opts, tables_value(&wp)))?;
                }
                "ghwr" => {
                    let bytes = read_file(arg_at(1, "code file")?)?;
                    let code = parse_json::<CodeDto>(&bytes, "code")?.to_chain_ring_code()?;
                    let poset = match rest.get(2) {
                        Some(path) => {
                            parse_json::<PosetDto>(&read_file(path)?, "poset")?.to_poset()?
                        }
                        None => Poset::antichain(code.length()),
                    };
                    let wp = metric_codes::ghwr_weights(&code, &poset, &opts.caps)?;
                    emit(&opts, render_value(&opts, tables_value(&wp)))?;
                }
                other => {
                    return Err(CliError::BadInput(format!("unknown metric {:?}", other)));
                }
            }
            Ok(true)
        }
        "dual" => {
            let what = arg_at(0, "object kind")?.as_str();
            let bytes = read_file(arg_at(1, "input file")?)?;
            let value = match what {
                "code" => {
                    let dto = parse_json::<CodeDto>(&bytes, "code")?;
                    match dto.ring {
                        weidual::io::RingDto::Field { .. } => {
                            let dual = dto.to_linear_code()?.dual();
                            serde_json::to_value(CodeDto::from_linear_code(&dual)).unwrap()
                        }
                        weidual::io::RingDto::ChainRing { .. } => {
                            let dual = dto.to_chain_ring_code()?.annihilator();
                            serde_json::to_value(CodeDto::from_chain_ring_code(&dual)).unwrap()
                        }
                    }
                }
                "demimatroid" => {
                    let dm =
                        parse_json::<DemiMatroidDto>(&bytes, "demi-matroid")?.to_demimatroid()?;
                    serde_json::to_value(DemiMatroidDto::from_demimatroid(&dm.dual()?)).unwrap()
                }
                "polymatroid" => {
                    let dp = parse_json::<PolymatroidDto>(&bytes, "demi-polymatroid")?
                        .to_polymatroid(&opts.caps)?;
                    let form =
                        BilinearForm::standard(dp.lattice().ring().clone(), dp.ambient_dim());
                    serde_json::to_value(PolymatroidDto::from_polymatroid(&dp.dual(&form)?))
                        .unwrap()
                }
                "flags" => {
                    let flags = parse_json::<FlagDto>(&bytes, "flag")?.to_flags()?;
                    let form = BilinearForm::standard(flags.ring().clone(), flags.w_dim());
                    serde_json::to_value(FlagDto::from_flags(&flags.dual_flags(&form)?)).unwrap()
                }
                other => {
                    return Err(CliError::BadInput(format!(
                        "unknown dual object {:?}",
                        other
                    )));
                }
            };
            emit(&opts, render_value(&opts, value))?;
            Ok(true)
        }
        "check" => {
            let name = arg_at(0, "check name")?.as_str();
            let mut inputs: Vec<Vec<u8>> = Vec::new();
            for path in &rest[1..] {
                inputs.push(read_file(path)?);
            }
            let input_refs: Vec<&[u8]> = inputs.iter().map(|v| v.as_slice()).collect();
            let dig = digest(&input_refs);
            let records = run_check(name, &inputs, &opts)?;
            let report = Report::new(format!("check {}", name), dig, records);
            let pass = report.summary.pass;
            emit(&opts, render_report(&opts, &report))?;
            Ok(pass)
        }
        "fuzz" => {
            let mut cfg = if opts.counts.is_empty() {
                FuzzConfig::default()
            } else {
                FuzzConfig::empty(0)
            };
            cfg.seed = opts.seed;
            cfg.caps = opts.caps;
            for (name, &value) in &opts.counts {
                match name.as_str() {
                    "codes" => cfg.codes = value,
                    "pairs" => cfg.pairs = value,
                    "bridges" => cfg.bridges = value,
                    "demimatroids" => cfg.demimatroids = value,
                    "polymatroids" => cfg.polymatroids = value,
                    "flags" => cfg.flags = value,
                    "z4" => cfg.z4_len = value as usize,
                    "q" => cfg.q = Some(value),
                    "m" => cfg.max_m = value as usize,
                    _ => unreachable!("count flags are pre-filtered"),
                }
            }
            let dig = digest(&[format!(
                "seed={} codes={} pairs={} bridges={} demimatroids={} polymatroids={} flags={} z4={} q={:?} m={}",
                cfg.seed,
                cfg.codes,
                cfg.pairs,
                cfg.bridges,
                cfg.demimatroids,
                cfg.polymatroids,
                cfg.flags,
                cfg.z4_len,
                cfg.q,
                cfg.max_m
            )
            .as_bytes()]);
            let records = checks::fuzz(&cfg)?;
            let report = Report::new("fuzz", dig, records);
            let pass = report.summary.pass;
            emit(&opts, render_report(&opts, &report))?;
            Ok(pass)
        }
        other => Err(CliError::BadInput(format!(
            "unknown command {:?}\n{}",
            other, USAGE
        ))),
    }
}

fn run_check(
    name: &str,
    inputs: &[Vec<u8>],
    opts: &Options,
) -> Result<Vec<ClauseCheck>, CliError> {
    let input_at = |i: usize, what: &str| -> Result<&Vec<u8>, CliError> {
        inputs
            .get(i)
            .ok_or_else(|| CliError::BadInput(format!("missing {} input file", what)))
    };
    let caps = &opts.caps;
    let records = match name {
        "wei" | "forney" => {
            let code = parse_json::<CodeDto>(input_at(0, "code")?, "code")?.to_linear_code()?;
            checks::check_wei_forney(&code, caps)?
        }
        "t22" => {
            let pair1 = parse_json::<PairDto>(input_at(0, "pair")?, "pair")?.to_pair()?;
            let pair2 = parse_json::<PairDto>(input_at(1, "pair")?, "pair")?.to_pair()?;
            checks::check_t22(&pair1, &pair2, opts.w)?
        }
        "t31" => {
            let tuple = parse_json::<BridgeDto>(input_at(0, "bridge")?, "bridge")?.to_tuple()?;
            checks::check_t31(&tuple)?
        }
        "t32" => {
            let dto =
                parse_json::<GradedBridgeDto>(input_at(0, "graded bridge")?, "graded bridge")?;
            let (poset, g, f, w, sigma) = dto.to_parts()?;
            checks::check_t32(&poset, &g, &f, w, &sigma)?
        }
        "t41" => {
            let dm = parse_json::<DemiMatroidDto>(input_at(0, "demi-matroid")?, "demi-matroid")?
                .to_demimatroid()?;
            let fam = parse_json::<SetFamilyDto>(input_at(1, "family")?, "family")?.to_family()?;
            checks::check_t41(&dm, &fam)?
        }
        "t42" => {
            let dm = parse_json::<DemiMatroidDto>(input_at(0, "demi-matroid")?, "demi-matroid")?
                .to_demimatroid()?;
            let poset = parse_json::<PosetDto>(input_at(1, "poset")?, "poset")?.to_poset()?;
            checks::check_t42(&dm, &poset, caps)?
        }
        "t51" => {
            let dp = parse_json::<PolymatroidDto>(
                input_at(0, "demi-polymatroid")?,
                "demi-polymatroid",
            )?
            .to_polymatroid(caps)?;
            let fam = parse_json::<SubspaceFamilyDto>(
                input_at(1, "subspace family")?,
                "subspace family",
            )?
            .to_family(caps)?;
            let form = match inputs.get(2) {
                Some(bytes) => {
                    parse_json::<FormDto>(bytes, "form")?.to_form(dp.lattice().ring())?
                }
                None => BilinearForm::standard(dp.lattice().ring().clone(), dp.ambient_dim()),
            };
            checks::check_t51(&dp, &fam, &form)?
        }
        "t71" => {
            let flags = parse_json::<FlagDto>(input_at(0, "flag")?, "flag")?.to_flags()?;
            let fam = resolve_ambient_family(&flags, opts)?;
            let form = BilinearForm::standard(flags.ring().clone(), flags.w_dim());
            checks::check_t71(&flags, &fam, &form, caps)?
        }
        "t72" => {
            let flags = parse_json::<FlagDto>(input_at(0, "flag")?, "flag")?.to_flags()?;
            let poset = parse_json::<PosetDto>(input_at(1, "poset")?, "poset")?.to_poset()?;
            let form = BilinearForm::standard(flags.ring().clone(), flags.w_dim());
            checks::check_t72(&flags, &poset, &form, caps)?
        }
        "t73" => {
            let flags = parse_json::<FlagDto>(input_at(0, "flag")?, "flag")?.to_flags()?;
            let lattice = SubspaceLattice::new(flags.ring().clone(), flags.w_dim(), caps)?;
            let fam = SubspaceFamily::full_lattice(&lattice);
            let form = BilinearForm::standard(flags.ring().clone(), flags.w_dim());
            checks::check_t73(&flags, &fam, &form, caps)?
        }
        "t74" => {
            let code =
                parse_json::<CodeDto>(input_at(0, "code")?, "code")?.to_chain_ring_code()?;
            let poset = parse_json::<PosetDto>(input_at(1, "poset")?, "poset")?.to_poset()?;
            checks::check_t74(&code, &poset, caps)?
        }
        other => {
            return Err(CliError::BadInput(format!("unknown check {:?}", other)));
        }
    };
    Ok(records)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(args) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(CliError::BadInput(msg)) => {
            let body = serde_json::json!({"error": {"kind": "bad-input", "message": msg}});
            eprintln!("{}", serde_json::to_string_pretty(&body).unwrap());
            ExitCode::from(2)
        }
        Err(CliError::CapExceeded(msg)) => {
            let body = serde_json::json!({"error": {"kind": "cap-exceeded", "message": msg}});
            eprintln!("{}", serde_json::to_string_pretty(&body).unwrap());
            ExitCode::from(3)
        }
    }
}
