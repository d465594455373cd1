use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use sdgroup_core::arith;
use sdgroup_core::classify::{
    classify_power, compute_sd_group, f5_characterizations, ClassifyError, FieldDescriptor, RootOfUnityOracle,
    SdClassification, SdRegime,
};
use sdgroup_core::field::{field_of_order, FieldSpec};
use sdgroup_core::padic::{hensel_lift, unit_characterization_check, PadicError, PadicNumber, ZpPoly};
use sdgroup_core::sd_maps::{is_sd_map, search_sd_maps, structural_report, MapError, MapTable, SearchMode};
use sdgroup_core::symbolic::{self, QFunction, QPoly, Rationals};
use sdgroup_core::tables::MAX_TABLE_ORDER;

use crate::cache::{self, SweepCache};
use crate::record::ResultRecord;
use crate::{CacheOpts, Cli, Command, ModeArg, Outcome, EXIT_MATH, EXIT_OK, EXIT_USAGE};

/// Largest `n` accepted by `recurrence`.
pub const MAX_RECURRENCE_N: usize = 2000;
/// Largest `k` accepted by `verify-identities`.
pub const MAX_KMAX: usize = 1000;
/// Largest p-adic precision accepted.
pub const MAX_PRECISION: u32 = 4096;

struct Report {
    subcommand: &'static str,
    input: Value,
    output: Value,
    ok: bool,
    human: String,
    notes: Vec<String>,
}

enum Failure {
    /// Bad invocation: exit 2, message on stderr, no record.
    Usage(String),
    /// The mathematics rejected the input: exit 1 with an error record.
    Math { subcommand: &'static str, input: Value, message: String },
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

pub(crate) fn dispatch(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Group { q } => group(*q),
        Command::Sweep { max_q, jobs, cache } => sweep(*max_q, *jobs, cache),
        Command::Power { m, q, descriptor } => power(*m, *q, descriptor.as_deref()),
        Command::CheckMap { map } => check_map(map),
        Command::F5 { q } => f5(*q),
        Command::Recurrence { n } => recurrence(*n),
        Command::VerifyIdentities { kmax } => verify_identities(*kmax),
        Command::Hensel { p, poly, x0, prec } => hensel(*p, poly, *x0, *prec),
        Command::PadicUnitCheck { p, value, count, prec } => padic_unit_check(*p, value, *count, *prec),
        Command::Oracle { domain, codomain, mode, budget, list } => oracle(*domain, *codomain, *mode, *budget, *list),
    };
    let elapsed = cli.global.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (record, human, notes) = match result {
        Ok(r) => (ResultRecord::new(r.subcommand, r.input, r.output, r.ok), r.human, r.notes),
        Err(Failure::Usage(msg)) => {
            return Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE };
        }
        Err(Failure::Math { subcommand, input, message }) => {
            let rec = ResultRecord::new(subcommand, input, json!({ "error": message }), false);
            (rec, String::new(), vec![format!("error: {message}")])
        }
    };
    let mut record = record;
    record.wall_time_ms = elapsed;
    let mut stdout = if cli.global.json {
        record.to_json() + "\n"
    } else {
        human
    };
    if let (Some(ms), false) = (elapsed, cli.global.json) {
        let _ = writeln!(stdout, "time: {ms:.1} ms");
    }
    let stderr = notes.iter().map(|n| format!("{n}\n")).collect();
    Outcome { stdout, stderr, code: if record.ok { EXIT_OK } else { EXIT_MATH } }
}

fn field_arg(q: u64, flag: &str) -> Result<FieldSpec, Failure> {
    if arith::prime_power(q).is_none() {
        return usage(format!("{flag}: {q} is not a prime power"));
    }
    if q > MAX_TABLE_ORDER {
        return usage(format!("{flag}: {q} is too large (supported: prime powers up to {MAX_TABLE_ORDER})"));
    }
    field_of_order(q).map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn prime_arg(p: u64) -> Result<u64, Failure> {
    if arith::is_prime(p) && p < (1 << 31) {
        Ok(p)
    } else {
        usage(format!("--p: {p} is not a prime below 2^31"))
    }
}

fn precision_arg(prec: u32) -> Result<u32, Failure> {
    if (1..=MAX_PRECISION).contains(&prec) {
        Ok(prec)
    } else {
        usage(format!("--prec: {prec} is out of range (1..={MAX_PRECISION})"))
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classification_table(rows: &[SdClassification]) -> String {
    let mut out = format!("{:>8}  {:>6}  {:>3}  {:<24}  {:<16}  {:>11}\n", "q", "p", "ell", "exponents", "aut", "exceptional");
    for r in rows {
        let exps = match r.regime {
            SdRegime::PowerMaps => join(&r.exponents),
            SdRegime::Char2Census => format!("census (q-1)! = {}", r.census_count.as_deref().unwrap_or("?")),
        };
        let _ = writeln!(
            out,
            "{:>8}  {:>6}  {:>3}  {:<24}  {:<16}  {:>11}",
            r.q,
            r.p,
            r.ell,
            exps,
            join(&r.aut_exponents),
            yes_no(r.is_exceptional)
        );
    }
    out
}

fn group(q: u64) -> Result<Report, Failure> {
    let f = field_arg(q, "--q")?;
    let c = compute_sd_group(&f);
    Ok(Report {
        subcommand: "group",
        input: json!({ "q": q }),
        output: serde_json::to_value(&c).expect("serializable"),
        ok: true,
        human: classification_table(std::slice::from_ref(&c)),
        notes: Vec::new(),
    })
}

fn sweep(max_q: u64, jobs: Option<usize>, cache_opts: &CacheOpts) -> Result<Report, Failure> {
    if max_q < 3 {
        return usage(format!("--max-q: {max_q} is below 3"));
    }
    if max_q > MAX_TABLE_ORDER {
        return usage(format!("--max-q: {max_q} is too large (supported up to {MAX_TABLE_ORDER})"));
    }
    if jobs == Some(0) {
        return usage("--jobs: must be at least 1");
    }
    let qs: Vec<u64> = arith::prime_powers_in(3, max_q).into_iter().filter(|q| q % 2 == 1).collect();

    let mut notes = Vec::new();
    let mut store = if cache_opts.no_cache {
        None
    } else {
        match cache_opts.cache_dir.clone().or_else(cache::default_dir) {
            Some(dir) => {
                let (c, warning) = SweepCache::open(&dir);
                notes.extend(warning);
                Some(c)
            }
            None => {
                notes.push("warning: no cache directory available; running uncached".into());
                None
            }
        }
    };

    let missing: Vec<u64> = qs.iter().copied().filter(|q| store.as_ref().is_none_or(|c| c.get(*q).is_none())).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    let fresh: Vec<SdClassification> = pool.install(|| {
        missing.par_iter().map(|&q| compute_sd_group(&field_of_order(q).expect("prime power"))).collect()
    });

    if let Some(c) = store.as_mut() {
        if let Err(e) = c.append(&fresh) {
            notes.push(format!("warning: could not write cache {}: {e}", c.path().display()));
        }
        notes.push(format!("cache: {} hits, {} computed", qs.len() - missing.len(), fresh.len()));
    }
    let mut by_q: std::collections::BTreeMap<u64, SdClassification> = fresh.into_iter().map(|c| (c.q, c)).collect();
    let rows: Vec<SdClassification> = qs
        .iter()
        .map(|q| by_q.remove(q).or_else(|| store.as_ref().and_then(|c| c.get(*q).cloned())).expect("computed or cached"))
        .collect();

    let exceptional: Vec<u64> = rows.iter().filter(|r| r.is_exceptional).map(|r| r.q).collect();
    let expected: Vec<u64> = qs.iter().copied().filter(|&q| q == 5).collect();
    let holds = exceptional == expected;
    let mut human = classification_table(&rows);
    let _ = writeln!(human, "exceptional: {}", if exceptional.is_empty() { "none".into() } else { join(&exceptional) });
    let _ = writeln!(human, "exceptional iff q = 5: {}", if holds { "holds" } else { "VIOLATED" });
    Ok(Report {
        subcommand: "sweep",
        input: json!({ "max_q": max_q }),
        output: json!({ "rows": rows, "exceptional": exceptional, "exceptional_iff_q5": holds }),
        ok: holds,
        human,
        notes,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorArg {
    characteristic: u64,
    /// Present for finite fields.
    #[serde(default)]
    q: Option<u64>,
    #[serde(default)]
    roots_of_unity: Option<OracleArg>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum OracleArg {
    AlgebraicClosure,
    PrimeFieldOnly,
    /// The field contains primitive d-th roots of unity exactly for divisors of these d.
    Orders(Vec<u64>),
}

fn parse_descriptor(text: &str) -> Result<(FieldDescriptor, Value), Failure> {
    let arg: DescriptorArg =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--descriptor: invalid JSON descriptor: {e}")))?;
    let c = arg.characteristic;
    if c != 0 && !arith::is_prime(c) {
        return usage(format!("--descriptor: characteristic {c} is neither 0 nor prime"));
    }
    if let Some(q) = arg.q {
        match arith::prime_power(q) {
            Some((p, ell)) if p == c => {
                return Ok((FieldDescriptor::Finite { p, ell }, json!({ "characteristic": c, "q": q })));
            }
            _ => return usage(format!("--descriptor: q = {q} is not a power of the characteristic {c}")),
        }
    }
    let (oracle, label) = match arg.roots_of_unity {
        None => (None, Value::Null),
        Some(OracleArg::AlgebraicClosure) => (Some(RootOfUnityOracle::AlgebraicClosure), json!("algebraic_closure")),
        Some(OracleArg::PrimeFieldOnly) => (Some(RootOfUnityOracle::PrimeFieldOnly), json!("prime_field_only")),
        Some(OracleArg::Orders(ds)) => {
            let label = json!({ "orders": ds });
            let f = move |n: u64| ds.iter().any(|&d| arith::gcd(n, d) > 1);
            (Some(RootOfUnityOracle::Custom(Arc::new(f))), label)
        }
    };
    let echo = json!({ "characteristic": c, "roots_of_unity": label });
    Ok((FieldDescriptor::Infinite { characteristic: c, roots_of_unity: oracle }, echo))
}

fn power(m: u64, q: Option<u64>, descriptor: Option<&str>) -> Result<Report, Failure> {
    if m == 0 {
        return usage("--m: must be at least 1");
    }
    let (desc, echo) = match (q, descriptor) {
        (Some(q), _) => {
            let f = field_arg(q, "--q")?;
            (FieldDescriptor::finite(&f), json!({ "q": q }))
        }
        (None, Some(text)) => parse_descriptor(text)?,
        (None, None) => return usage("one of --q or --descriptor is required"),
    };
    let c = match classify_power(m, &desc) {
        Ok(c) => c,
        Err(e @ ClassifyError::OracleRequired { .. }) => return usage(format!("--descriptor: {e}")),
        Err(e) => return usage(e.to_string()),
    };
    let human = format!(
        "w -> w^{m}: {}{}\n",
        if c.is_sd { "SD-map" } else { "not an SD-map" },
        c.case.map(|k| format!(" (case {k})")).unwrap_or_default()
    );
    Ok(Report {
        subcommand: "power",
        input: json!({ "m": m, "field": echo }),
        output: serde_json::to_value(c).expect("serializable"),
        ok: c.is_sd,
        human,
        notes: Vec::new(),
    })
}

fn check_map(arg: &str) -> Result<Report, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("--map: cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    let table: MapTable = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--map: {e}")))?;
    let verdict = is_sd_map(&table);
    let report = structural_report(&table);
    let mut human = format!(
        "F_{} -> F_{}: {}\n",
        table.domain().q(),
        table.codomain().q(),
        if verdict.holds { "SD-map" } else { "not an SD-map" }
    );
    if let Some(w) = &verdict.witness {
        let _ = writeln!(human, "witness: x = {}, y = {} ({:?})", w.x, w.y, w.kind);
    }
    let _ = writeln!(
        human,
        "injective {}, fixes 0 {}, fixes 1 {}, odd {}, multiplicative {}, additive {}",
        yes_no(report.injective),
        yes_no(report.fixes_zero),
        yes_no(report.fixes_one),
        yes_no(report.odd),
        yes_no(report.multiplicative),
        yes_no(report.additive)
    );
    Ok(Report {
        subcommand: "check-map",
        input: json!({ "map": table }),
        output: json!({ "verdict": verdict, "structure": report }),
        ok: verdict.holds,
        human,
        notes: Vec::new(),
    })
}

fn f5(q: u64) -> Result<Report, Failure> {
    let f = field_arg(q, "--q")?;
    if f.p() == 2 {
        return usage(format!("--q: {q} has characteristic 2; the characterizations need odd q"));
    }
    let c = f5_characterizations(&f).map_err(|e| Failure::Usage(e.to_string()))?;
    let agree = c.all_agree_with(q == 5);
    let human = format!(
        "Aut strictly smaller than SD: {}\nsquares-fixing, non-squares-negating map is SD: {}\nsome sqrt(-1) generates the unit group: {}\nall three agree with q = 5: {}\n",
        yes_no(c.aut_strictly_smaller),
        yes_no(c.squares_map_is_sd),
        yes_no(c.sqrt_minus1_generates),
        yes_no(agree)
    );
    let mut output = serde_json::to_value(c).expect("serializable");
    output["agree_with_q5"] = json!(agree);
    Ok(Report { subcommand: "f5", input: json!({ "q": q }), output, ok: agree, human, notes: Vec::new() })
}

fn recurrence(n: usize) -> Result<Report, Failure> {
    if n > MAX_RECURRENCE_N {
        return usage(format!("--n: {n} is out of range (0..={MAX_RECURRENCE_N})"));
    }
    let v = symbolic::sd_value(n);
    Ok(Report {
        subcommand: "recurrence",
        input: json!({ "n": n }),
        output: json!({
            "value": v.to_string(),
            "numerator": v.num().coeff_strings(),
            "denominator": v.den().coeff_strings(),
        }),
        ok: true,
        human: format!("f({n}) = {v}\n"),
        notes: Vec::new(),
    })
}

fn qpoly(c: &[i64]) -> QPoly {
    QPoly::from_ints(Rationals, c)
}

fn verify_identities(kmax: usize) -> Result<Report, Failure> {
    if !(1..=MAX_KMAX).contains(&kmax) {
        return usage(format!("--kmax: {kmax} is out of range (1..={MAX_KMAX})"));
    }
    let rf = |n: &[i64], d: &[i64]| QFunction::new(qpoly(n), qpoly(d)).expect("nonzero denominator");
    let early = [
        (0, rf(&[0], &[1])),
        (1, rf(&[1], &[1])),
        (2, rf(&[0, 1], &[1])),
        (3, rf(&[1, 1], &[-1, 1])),
        (4, rf(&[0, 0, 1], &[1])),
        (5, rf(&[1, 0, 1], &[1, -2, 1])),
        (6, rf(&[0, 1, -1, 1], &[1])),
    ];
    let mut checks = Vec::new();
    let early_ok = early.iter().all(|(n, want)| symbolic::sd_value(*n) == *want);
    checks.push(("recurrence values f(0)..f(6)", early_ok));
    let closed = symbolic::verify_closed_forms(kmax);
    checks.push(("closed forms for f(2k+1), f(2k+2)", closed.ok));
    let tchar = symbolic::tchar_constraint();
    let tchar_want = qpoly(&[0, 1]).mul(&qpoly(&[-2, 1])).mul(&qpoly(&[1, 0, 1]));
    checks.push(("f(2)f(3) - f(6) ~ u(u-2)(u^2+1)", tchar == tchar_want));
    checks.push(("(x+1)^3(x^3-1) - (x-1)^3(x^3+1) = 6x^5 - 6x", symbolic::tiff5_identity() == qpoly(&[0, -6, 0, 0, 0, 6])));
    let f8 = symbolic::sd_value(8).sub(&symbolic::sd_value(2).mul(&symbolic::sd_value(4)));
    checks.push(("f(8) - f(2)f(4) = u^2(u-1)(u-2)", f8 == QFunction::from_poly(qpoly(&[0, 0, 2, -3, 1]))));

    let ok = checks.iter().all(|c| c.1);
    let mut human = String::new();
    for (name, passed) in &checks {
        let _ = writeln!(human, "{:<6} {name}", if *passed { "PASS" } else { "FAIL" });
    }
    if let Some((k, which)) = closed.first_failure {
        let _ = writeln!(human, "first closed-form failure at k = {k} ({which:?})");
    }
    let list: Vec<Value> = checks.iter().map(|(name, passed)| json!({ "name": name, "passed": passed })).collect();
    Ok(Report {
        subcommand: "verify-identities",
        input: json!({ "kmax": kmax }),
        output: json!({ "checks": list, "closed_forms": closed, "tchar_constraint": tchar.display_with("u") }),
        ok,
        human,
        notes: Vec::new(),
    })
}

fn parse_ints(text: &str, flag: &str) -> Result<Vec<i64>, Failure> {
    let parsed: Result<Vec<i64>, _> = text.split(',').map(|s| s.trim().parse::<i64>()).collect();
    match parsed {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => usage(format!("{flag}: expected comma-separated integers, got {text:?}")),
    }
}

fn padic_failure(subcommand: &'static str, input: Value, e: PadicError) -> Failure {
    match e {
        PadicError::NotARoot { .. } | PadicError::SingularRoot { .. } | PadicError::PrecisionExhausted => {
            Failure::Math { subcommand, input, message: e.to_string() }
        }
        other => Failure::Usage(other.to_string()),
    }
}

fn hensel(p: u64, poly: &str, x0: u64, prec: u32) -> Result<Report, Failure> {
    let p = prime_arg(p)?;
    let prec = precision_arg(prec)?;
    let coeffs = parse_ints(poly, "--poly")?;
    let input = json!({ "p": p, "poly": coeffs, "x0": x0, "prec": prec });
    let f = ZpPoly::from_ints(p, &coeffs, prec).map_err(|e| Failure::Usage(e.to_string()))?;
    let root = hensel_lift(&f, x0, prec).map_err(|e| padic_failure("hensel", input.clone(), e))?;
    let human = format!("root: {}\n(valuation:digits, digits little-endian in p)\n", root.digit_string());
    Ok(Report {
        subcommand: "hensel",
        input,
        output: json!({ "root": root, "digits": root.digit_string() }),
        ok: true,
        human,
        notes: Vec::new(),
    })
}

fn parse_rational(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("--value: expected m/n or an integer, got {text:?}"));
    let (m, n) = match text.split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if n == 0 {
        return usage("--value: zero denominator");
    }
    if m == 0 {
        return usage("--value: must be nonzero");
    }
    Ok((m, n))
}

fn padic_unit_check(p: u64, value: &str, count: u32, prec: u32) -> Result<Report, Failure> {
    let p = prime_arg(p)?;
    let prec = precision_arg(prec)?;
    if count == 0 || count > 1000 {
        return usage(format!("--count: {count} is out of range (1..=1000)"));
    }
    let (m, n) = parse_rational(value)?;
    let input = json!({ "p": p, "value": format!("{m}/{n}"), "count": count, "prec": prec });
    let u = PadicNumber::from_rational(m, n, p, prec).map_err(|e| Failure::Usage(e.to_string()))?;
    let check = unit_characterization_check(&u, count).map_err(|e| padic_failure("padic-unit-check", input.clone(), e))?;
    let mut human = format!("u = {m}/{n} in Q_{p}: valuation {}, {}\n", u.valuation(), if check.is_unit { "unit" } else { "not a unit" });
    for (nk, found) in &check.observations {
        let _ = writeln!(human, "  n = {nk:>6}: {}", if *found { "root found" } else { "no root" });
    }
    let _ = writeln!(human, "consistent with the unit characterization: {}", yes_no(check.consistent));
    Ok(Report {
        subcommand: "padic-unit-check",
        input,
        output: json!({ "value": u, "check": check }),
        ok: check.consistent,
        human,
        notes: Vec::new(),
    })
}

fn oracle(domain: u64, codomain: u64, mode: ModeArg, budget: u64, list: bool) -> Result<Report, Failure> {
    let d = field_arg(domain, "--domain")?;
    let c = field_arg(codomain, "--codomain")?;
    let mode = match mode {
        ModeArg::Oracle => SearchMode::Oracle,
        ModeArg::Pruned => SearchMode::Pruned,
    };
    let input = json!({ "domain": domain, "codomain": codomain, "mode": mode, "budget": budget });
    let outcome = match search_sd_maps(&d, &c, mode, budget) {
        Ok(o) => o,
        Err(e @ MapError::EvenCodomain(_)) => return usage(format!("--mode: {e}")),
        Err(e) => return Err(Failure::Math { subcommand: "oracle", input, message: e.to_string() }),
    };
    let images: Vec<Vec<u32>> = outcome.maps.iter().map(|m| m.image_indices()).collect();
    let mut human = format!("F_{domain} -> F_{codomain}: {} SD-maps ({} nodes explored)\n", images.len(), outcome.nodes);
    if list {
        for m in &outcome.maps {
            let parts: Vec<String> = m.images().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(human, "  [{}]", parts.join(", "));
        }
    }
    let mut output = json!({ "count": images.len(), "nodes": outcome.nodes });
    if list {
        output["maps"] = json!(images);
    }
    Ok(Report { subcommand: "oracle", input, output, ok: true, human, notes: Vec::new() })
}
