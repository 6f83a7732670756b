//! Subcommand implementations producing [`Report`]s.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use alexpoly::alexmod::{alexander_polynomial, shift_action, Delta};
use alexpoly::cgroup::{builtin, full_product_word, is_hurwitz_presentation, CPresentation, Word};
use alexpoly::checks::{betti_statistic, classify_realizability, grku_properties_with_factors};
use alexpoly::corpus::full_corpus;
use alexpoly::involution::{canonical_block, decompose, semidirect_stats, InvolutionError};
use alexpoly::linalg::{charpoly, unimodular_inverse, IntMatrix};
use alexpoly::poly::{cyclotomic, root_order};
use alexpoly::realize::{
    realize_pm, realize_with, Mode, RealizationCertificate, RealizeError, RealizeOptions,
};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::parse::{parse_matrix, parse_poly, parse_presentation, ParseError};
use crate::report::{self, Report, Status};

/// Errors in the user's input, reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    Parse(ParseError),
    Invalid(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(e) => write!(f, "parse error at {e}"),
            InputError::Invalid(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for InputError {}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError::Parse(e)
    }
}

pub const INPUT_ERROR_EXIT: u8 = 2;

/// Where `compute` reads its presentation from.
#[derive(Debug, Clone)]
pub enum Source {
    Builtin(String),
    Text(String),
}

/// A builtin group from the library or the regression corpus.
pub fn lookup_builtin(name: &str) -> Result<(CPresentation, Option<Word>), InputError> {
    if let Some(e) = full_corpus().into_iter().find(|e| e.name == name) {
        return Ok((e.presentation, e.hurwitz_word));
    }
    builtin(name).map(|g| (g, None)).map_err(|e| {
        InputError::Invalid(format!(
            "{e}; known names: example_4_1, example_4_2, g2, free:M, abelian:N, layer:Phi6, layer:t^2-1"
        ))
    })
}

/// Reads `arg` as a file when such a file exists, otherwise as inline text.
pub fn file_or_inline(arg: &str) -> Result<String, InputError> {
    if arg == "-" {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|e| InputError::Invalid(format!("reading stdin: {e}")));
    }
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| InputError::Invalid(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn timed(mut r: Report, start: Instant) -> Report {
    r.elapsed = Some(start.elapsed());
    r
}

pub fn compute(source: &Source, degree: Option<u64>) -> Result<Report, InputError> {
    let start = Instant::now();
    let (g, word) = match source {
        Source::Builtin(name) => lookup_builtin(name)?,
        Source::Text(text) => (parse_presentation(text)?, None),
    };
    let res = alexander_polynomial(&g);
    let mut r = Report::new("compute");
    r.headline = match &res.delta {
        Delta::Zero => "Delta == 0 (infinite-dimensional)".to_string(),
        Delta::Poly(p) => format!("Delta = {p}"),
        Delta::NonIntegral(p) => format!("Delta = {p} (not integral)"),
    };
    r.set("delta", report::delta(&res.delta));
    r.set("generators", g.num_generators());
    r.set("relations", g.relations().len());
    r.set("components", res.components);
    r.set("hurwitz_shape", is_hurwitz_presentation(&g));
    r.set(
        "invariant_factors",
        res.invariant_factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>(),
    );
    r.set(
        "reduced_matrix",
        format!("{}x{}", res.reduced_shape.0, res.reduced_shape.1),
    );
    if let Some(a) = shift_action(&g) {
        r.set(
            "shift_action",
            json!({ "integral": a.integral, "matrix": report::matrix(&a.matrix) }),
        );
    }
    if degree == Some(0) {
        return Err(InputError::Invalid("--degree must be positive".into()));
    }
    let word =
        word.or_else(|| is_hurwitz_presentation(&g).then(|| full_product_word(g.num_generators())));
    let degree = degree.or_else(|| word.as_ref().map(Word::length));
    match (&word, degree) {
        (_, Some(d)) => r.set("degree", d),
        (None, None) => r.set("degree", "not recorded (no syntactic Hurwitz shape)"),
        _ => {}
    }
    if let (Some(d), Some(p)) = (degree, res.delta.as_poly()) {
        let props =
            grku_properties_with_factors(p, d, res.components, Some(&res.invariant_factors));
        r.set(
            "properties",
            match props {
                Ok(rep) => report::properties(&rep),
                Err(e) => Value::String(format!("not evaluated: {e}")),
            },
        );
    }
    r.set("presentation", g.to_string());
    Ok(timed(r, start))
}

fn route_name(c: &RealizationCertificate) -> String {
    format!("{:?}", c.route).to_lowercase()
}

fn certificate_body(r: &mut Report, cert: &RealizationCertificate) {
    r.set("target", report::poly(&cert.target));
    r.set("normalization", cert.normalization.to_string());
    r.set("route", route_name(cert));
    r.set("generators", cert.num_generators());
    r.set("components", cert.components);
    r.set("degree", cert.degree());
    r.set("hurwitz_word", cert.hurwitz_word.to_string());
    let layers: Vec<Value> = cert
        .layers
        .iter()
        .map(|l| {
            json!({
                "kind": format!("{:?}", l.kind).to_lowercase(),
                "psi": l.psi.to_string(),
                "k": l.k,
                "d": l.d,
                "generators": l.presentation.num_generators(),
                "delta": l.delta.to_string(),
            })
        })
        .collect();
    r.set("layers", layers);
}

pub fn realize(
    poly: &str,
    mode: Mode,
    max_generators: Option<usize>,
) -> Result<Report, InputError> {
    let start = Instant::now();
    let p = parse_poly(poly)?;
    let mut r = Report::new("realize");
    r.set("input", report::poly(&p));
    if p.is_zero() {
        r.refuse("the zero polynomial is not an Alexander polynomial of a Hurwitz C-group");
        return Ok(timed(r, start));
    }
    let opts = RealizeOptions { max_generators };
    let cert = match realize_with(&p, mode, &opts) {
        Ok(c) => c,
        Err(e @ RealizeError::VerificationFailed { .. }) => {
            r.status = Status::VerificationFailed;
            r.headline = e.to_string();
            return Ok(timed(r, start));
        }
        Err(e) => {
            r.refuse(e.to_string());
            return Ok(timed(r, start));
        }
    };
    let res = alexander_polynomial(&cert.presentation);
    let roundtrip = res.delta.as_poly() == Some(&cert.target);
    certificate_body(&mut r, &cert);
    r.set("recomputed_delta", report::delta(&res.delta));
    r.set("roundtrip", roundtrip);
    if let Ok(rep) = grku_properties_with_factors(
        &cert.target,
        cert.degree().max(1),
        cert.components,
        Some(&res.invariant_factors),
    ) {
        r.set("properties", report::properties(&rep));
    }
    r.set("presentation", cert.presentation.to_string());
    if roundtrip {
        r.headline = format!(
            "realized {} on {} generators ({}), Delta verified",
            cert.target,
            cert.num_generators(),
            route_name(&cert)
        );
    } else {
        r.status = Status::VerificationFailed;
        r.headline = format!(
            "realization produced Delta = {}, expected {}",
            res.delta, cert.target
        );
    }
    Ok(timed(r, start))
}

pub fn decompose_cmd(input: &str) -> Result<Report, InputError> {
    let start = Instant::now();
    let h = parse_matrix(&file_or_inline(input)?)?;
    let mut r = Report::new("decompose");
    r.set("dimension", h.rows());
    let d = match decompose(&h) {
        Ok(d) => d,
        Err(InvolutionError::VerificationFailed(m)) => {
            r.status = Status::VerificationFailed;
            r.headline = format!("verification failed: {m}");
            return Ok(timed(r, start));
        }
        Err(e) => {
            r.refuse(e.to_string());
            return Ok(timed(r, start));
        }
    };
    let verified = d.verify(&h);
    r.headline = format!("h ~ I_{} + (-I_{}) + {} swap block(s)", d.n1, d.n2, d.n3);
    r.set("n1", d.n1);
    r.set("n2", d.n2);
    r.set("n3", d.n3);
    r.set("basis", report::matrix(&d.basis));
    r.set("block", report::matrix(&d.block()));
    r.set("verified", verified);
    let s = semidirect_stats(d.n1, d.n2, d.n3);
    r.set(
        "semidirect_product",
        json!({
            "abelianization": s.abelianization.to_string(),
            "det(t - h)": report::poly(&s.char_t_minus_h),
            "det(h - t)": report::poly(&s.char_h_minus_t),
        }),
    );
    if !verified {
        r.status = Status::VerificationFailed;
    }
    Ok(timed(r, start))
}

pub fn check(poly: &str, components: usize, degree: Option<u64>) -> Result<Report, InputError> {
    let start = Instant::now();
    if components == 0 {
        return Err(InputError::Invalid("--components must be positive".into()));
    }
    if degree == Some(0) {
        return Err(InputError::Invalid("--degree must be positive".into()));
    }
    let p = parse_poly(poly)?;
    let mut r = Report::new("check");
    r.set("input", report::poly(&p));
    if p.is_zero() {
        r.refuse("the zero polynomial has no realizability verdict");
        return Ok(timed(r, start));
    }
    let c = classify_realizability(&p).expect("nonzero polynomial");
    r.headline = c.verdict.to_string();
    r.set(
        "realizability",
        json!({
            "verdict": c.verdict.to_string(),
            "witness": c.witness,
            "condition_ii_violated": c.condition_ii_violated,
        }),
    );
    let d = match degree {
        Some(d) => Ok(d),
        None => root_order(&p),
    };
    match d {
        Ok(d) => {
            r.set("degree", d);
            match grku_properties_with_factors(&p, d, components, None) {
                Ok(rep) => r.set("properties", report::properties(&rep)),
                Err(e) => r.set("properties", format!("not evaluated: {e}")),
            }
            if let Ok(b) = betti_statistic(&p, d) {
                r.set("betti_statistic", b);
            }
        }
        Err(e) => r.set("properties", format!("not evaluated: {e}")),
    }
    Ok(timed(r, start))
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut w = IntMatrix::identity(n);
    if n < 2 {
        return w;
    }
    for _ in 0..4 * n * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let row: Vec<BigInt> = (0..n).map(|col| &w[(i, col)] + &w[(j, col)] * c).collect();
        if row.iter().all(|v| v.abs() <= BigInt::from(3)) {
            for (col, v) in row.into_iter().enumerate() {
                w[(i, col)] = v;
            }
        }
    }
    w
}

struct Check {
    group: &'static str,
    name: String,
    ok: bool,
    detail: String,
}

fn demo_corpus() -> Vec<Check> {
    full_corpus()
        .into_iter()
        .map(|e| {
            let got = alexander_polynomial(&e.presentation).delta;
            Check {
                group: "corpus",
                ok: got == e.expected,
                detail: format!("Delta = {got}"),
                name: e.name,
            }
        })
        .collect()
}

fn demo_realize() -> Vec<Check> {
    let phi6 = cyclotomic(6);
    let mut out = Vec::new();
    for (name, p) in [("Phi6", phi6.clone()), ("Phi6^2", phi6.pow(2))] {
        let (ok, detail) = match realize_with(&p, Mode::Auto, &RealizeOptions::default()) {
            Ok(c) => {
                let d = alexander_polynomial(&c.presentation).delta;
                (
                    d.as_poly() == Some(&c.target),
                    format!("{} generators, Delta = {d}", c.num_generators()),
                )
            }
            Err(e) => (false, e.to_string()),
        };
        out.push(Check {
            group: "realize",
            name: name.into(),
            ok,
            detail,
        });
    }
    for n in 0..=3u32 {
        for k in 0..=3u32 {
            let (ok, detail) = match realize_pm(n, k) {
                Ok(c) => {
                    let d = alexander_polynomial(&c.presentation).delta;
                    (
                        n >= k && d.as_poly() == Some(&c.target),
                        format!("Delta = {d}"),
                    )
                }
                Err(RealizeError::NotRealizable { .. }) => (n < k, "refused".to_string()),
                Err(e) => (false, e.to_string()),
            };
            out.push(Check {
                group: "theorem3",
                name: format!("n={n} k={k}"),
                ok,
                detail,
            });
        }
    }
    out
}

fn demo_shift() -> Vec<Check> {
    ["example_4_1", "example_4_2"]
        .into_iter()
        .map(|name| {
            let (g, _) = lookup_builtin(name).expect("builtin");
            let delta = alexander_polynomial(&g).delta;
            let (ok, detail) = match shift_action(&g) {
                Some(a) => (
                    a.integral && Delta::Poly(charpoly(&a.matrix)) == delta,
                    format!("h = {}", report::matrix(&a.matrix)),
                ),
                None => (false, "no shift action".into()),
            };
            Check {
                group: "shift",
                name: name.into(),
                ok,
                detail,
            }
        })
        .collect()
}

fn demo_involutions(seed: u64, count: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n3 = rng.gen_range(0..=3);
            let n1 = rng.gen_range(0..=6 - 2 * n3);
            let n2 = rng.gen_range(0..=6 - 2 * n3 - n1);
            let block = canonical_block(n1, n2, n3);
            let w = random_unimodular(block.rows(), &mut rng);
            let h = w
                .mul(&block)
                .mul(&unimodular_inverse(&w).expect("unimodular"));
            let (ok, detail) = match decompose(&h) {
                Ok(d) => (
                    (d.n1, d.n2, d.n3) == (n1, n2, n3) && d.verify(&h),
                    format!("({}, {}, {})", d.n1, d.n2, d.n3),
                ),
                Err(e) => (false, e.to_string()),
            };
            Check {
                group: "involution",
                name: format!("#{i} ({n1}, {n2}, {n3})"),
                ok,
                detail,
            }
        })
        .collect()
}

pub const DEFAULT_SEED: u64 = 20240505;

/// Runs the demonstration checks concurrently, one thread per group.
pub fn demo(seed: u64) -> Report {
    let start = Instant::now();
    let checks: Vec<Check> = std::thread::scope(|s| {
        let handles = [
            s.spawn(demo_corpus),
            s.spawn(demo_realize),
            s.spawn(demo_shift),
            s.spawn(move || demo_involutions(seed, 12)),
        ];
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("demo thread panicked"))
            .collect()
    });
    let passed = checks.iter().filter(|c| c.ok).count();
    let mut r = Report::new("demo");
    r.headline = format!("demo: {passed}/{} checks pass", checks.len());
    r.set("seed", seed);
    let table: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "group": c.group,
                "check": c.name,
                "result": if c.ok { "pass" } else { "fail" },
                "detail": c.detail,
            })
        })
        .collect();
    r.set("checks", table);
    if passed != checks.len() {
        r.status = Status::VerificationFailed;
    }
    timed(r, start)
}

/// Plain-text table for `demo`.
pub fn demo_table(r: &Report) -> String {
    let mut out = format!("{}\n", r.headline);
    if let Some(Value::Array(rows)) = r.body.get("checks") {
        let cell = |v: &Value, k: &str| v[k].as_str().unwrap_or_default().to_string();
        let w_group = rows
            .iter()
            .map(|v| cell(v, "group").len())
            .max()
            .unwrap_or(0)
            .max(5);
        let w_check = rows
            .iter()
            .map(|v| cell(v, "check").len())
            .max()
            .unwrap_or(0)
            .max(5);
        out += &format!(
            "{:<w_group$}  {:<w_check$}  result  detail\n",
            "group", "check"
        );
        for v in rows {
            out += &format!(
                "{:<w_group$}  {:<w_check$}  {:<6}  {}\n",
                cell(v, "group"),
                cell(v, "check"),
                cell(v, "result"),
                cell(v, "detail")
            );
        }
    }
    out
}

/// Structured parse or input error for JSON output.
pub fn input_error_json(command: &str, e: &InputError) -> Value {
    match e {
        InputError::Parse(p) => json!({
            "command": command,
            "status": "parse_error",
            "error": { "line": p.line, "column": p.column, "message": p.message },
        }),
        InputError::Invalid(m) => json!({
            "command": command,
            "status": "input_error",
            "error": { "message": m },
        }),
    }
}

/// Exit code for a finished report.
pub fn exit_code(r: &Report) -> u8 {
    r.status.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_builtin() {
        let r = compute(&Source::Builtin("example_4_1".into()), None).unwrap();
        assert_eq!(r.headline, "Delta = t^2 - 2*t + 1");
        assert_eq!(r.status, Status::Ok);
    }

    #[test]
    fn compute_free_group_is_zero() {
        let r = compute(&Source::Builtin("free:2".into()), None).unwrap();
        assert_eq!(r.headline, "Delta == 0 (infinite-dimensional)");
    }

    #[test]
    fn realize_refusals() {
        let r = realize("(t-1)(t+1)^2", Mode::Auto, None).unwrap();
        assert_eq!(r.status, Status::Refused);
        let r = realize("0", Mode::Auto, None).unwrap();
        assert_eq!(r.status, Status::Refused);
        let r = realize("t^2 - 3t + 1", Mode::Auto, None).unwrap();
        assert_eq!(r.status, Status::Refused);
        let r = realize("t^2 - t + 1", Mode::Auto, Some(2)).unwrap();
        assert_eq!(r.status, Status::Refused);
    }

    #[test]
    fn realize_phi6() {
        let r = realize("t^2 - t + 1", Mode::Auto, None).unwrap();
        assert_eq!(r.status, Status::Ok, "{}", r.headline);
        assert_eq!(r.body["roundtrip"], Value::Bool(true));
    }

    #[test]
    fn decompose_examples() {
        let r = decompose_cmd("[[0,1],[1,0]]").unwrap();
        assert_eq!(
            (r.body["n1"].clone(), r.body["n3"].clone()),
            (json!(0), json!(1))
        );
        let r = decompose_cmd("[[1,1],[0,1]]").unwrap();
        assert_eq!(r.status, Status::Refused);
        assert!(matches!(
            decompose_cmd("[[1,2],[3"),
            Err(InputError::Parse(_))
        ));
    }

    #[test]
    fn check_reports_classification() {
        let r = check("t^2 - t + 1", 1, None).unwrap();
        assert_eq!(r.headline, "realizable (Theorem 1)");
        assert_eq!(r.body["degree"], json!(6));
        assert!(check("t", 0, None).is_err());
    }

    #[test]
    fn demo_passes() {
        let r = demo(DEFAULT_SEED);
        assert_eq!(r.status, Status::Ok, "{}", demo_table(&r));
    }
}
