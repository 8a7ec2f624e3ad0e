use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use lambda_lab::adams::{construct_existence_family, AdamsFamily, CoeffRule, ValidationReport};
use lambda_lab::arith::primes_upto;
use lambda_lab::isoclass::{
    classify_n4, conjc_check, count_n3, enumerate_n3, enumerate_n4_case2, iso_solve, normal_form_n2, normal_form_n3,
    realizable_filter_n3, realizable_filter_n4, uniform_power, Automorphism, ClassDataN3, IsoResult, LinearSeq,
    N3NormalForm, N4Class, Realizability,
};
use lambda_lab::symuniv::{composite_p, newton_q, product_p};
use lambda_lab::{RingShape, Truncation};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::config::{Config, OutputFormat};
use crate::{Command, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN};

pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            code: EXIT_OK,
            text,
            json,
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: OutputFormat) -> std::io::Result<()> {
        match format {
            OutputFormat::Text => writeln!(out, "{}", self.text.trim_end()),
            OutputFormat::Json => writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&self.json).expect("serializable")
            ),
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|x| format!("{}: {x}", path.display()))?;
    serde_json::from_str(&text).map_err(|x| format!("{}: {x}", path.display()))
}

fn load_family(path: &Path, cfg: &Config) -> Result<AdamsFamily, String> {
    AdamsFamily::from_json_with_default(&read_json(path)?, cfg.primes_upto)
        .map_err(|x| format!("{}: {x}", path.display()))
}

fn parse_rule(num: &str, den: &str) -> Result<CoeffRule, String> {
    let den: BigInt = den.trim().parse().map_err(|_| format!("bad denominator {den:?}"))?;
    CoeffRule::parse(num, &den).map_err(e)
}

fn eval_seq(rule: &CoeffRule, primes: &[u64]) -> Result<LinearSeq, String> {
    primes.iter().map(|&p| Ok((p, rule.eval(p).map_err(e)?))).collect()
}

fn seq_json(seq: &LinearSeq) -> Value {
    Value::Object(seq.iter().map(|(p, v)| (p.to_string(), json!(v.to_string()))).collect())
}

fn seq_text(seq: &LinearSeq) -> String {
    seq.iter()
        .map(|(p, v)| format!("{p}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn univariate_n(f: &AdamsFamily) -> Result<u32, String> {
    let shape = f.shape();
    if shape.num_vars() == 1 && shape.truncations()[0].is_finite() {
        Ok(shape.bound(0))
    } else {
        Err(format!(
            "expected a one-variable family with finite truncation, got {shape}"
        ))
    }
}

pub fn dispatch(cmd: &Command, cfg: &Config) -> CmdResult {
    match cmd {
        Command::Validate { file } => validate(&load_family(file, cfg)?),
        Command::Iso { a, b } => iso(&load_family(a, cfg)?, &load_family(b, cfg)?, cfg),
        Command::Normalize { file } => normalize(&load_family(file, cfg)?),
        Command::Classify { file } => classify(&load_family(file, cfg)?),
        Command::Enumerate {
            n,
            b,
            den,
            case,
            out_dir,
        } => enumerate(*n, b.as_deref(), den, *case, out_dir.as_deref(), cfg),
        Command::Count { n, b, den } => count(*n, b, den, cfg),
        Command::Conjc { r, r_tilde, s, sigma } => {
            let r = load_family(r, cfg)?;
            let rt = load_family(r_tilde, cfg)?;
            let s = s.as_deref().map(|p| load_family(p, cfg)).transpose()?;
            conjc(&r, &rt, s, sigma.as_deref(), cfg)
        }
        Command::Universal { q, p, pij } => universal(*q, *p, pij.as_deref(), cfg),
        Command::Existence { file, trunc, cap, b } => existence(file.as_deref(), trunc, *cap, b, cfg),
    }
}

fn validation_text(rep: &ValidationReport) -> String {
    let mut lines = Vec::new();
    let (lo, hi) = (rep.primes[0], rep.primes[rep.primes.len() - 1]);
    if rep.ok {
        lines.push(format!("valid: {} primes checked ({lo}..{hi})", rep.primes.len()));
    } else {
        lines.push(format!("invalid: {} primes checked ({lo}..{hi})", rep.primes.len()));
        for f in &rep.commute_failures {
            lines.push(format!(
                "  commute p={} q={} var={} at {:?}: {} vs {}",
                f.p, f.q, f.var, f.monomial, f.pq, f.qp
            ));
        }
        for f in &rep.frobenius_failures {
            lines.push(format!(
                "  frobenius p={} var={} at {:?}: residue {}",
                f.p, f.var, f.monomial, f.residue
            ));
        }
    }
    lines.join("\n")
}

fn validate(f: &AdamsFamily) -> CmdResult {
    let rep = f.validate().map_err(e)?;
    Ok(Outcome {
        code: if rep.ok { EXIT_OK } else { EXIT_NEGATIVE },
        text: validation_text(&rep),
        json: rep.to_json(),
    })
}

fn iso_outcome(res: &IsoResult, primes: &[u64]) -> Outcome {
    let json = res.to_json(primes);
    match res {
        IsoResult::Isomorphic(sigma) => Outcome {
            code: EXIT_OK,
            text: format!("isomorphic\nsigma(x) = {sigma}"),
            json,
        },
        IsoResult::NotIsomorphic(obs) => {
            let mut text = String::from("not isomorphic");
            for o in obs {
                let u = o.u.map(|u| format!(", u = {u}")).unwrap_or_default();
                let p = o.prime.map(|p| format!(", p = {p}")).unwrap_or_default();
                text.push_str(&format!("\n  degree {}{p}{u}: {}", o.degree, o.detail));
            }
            Outcome {
                code: EXIT_NEGATIVE,
                text,
                json,
            }
        }
        IsoResult::Unknown { bound, free_degrees } => Outcome {
            code: EXIT_UNKNOWN,
            text: format!(
                "unknown: no isomorphism with free coefficients in [-{bound}, {bound}] (free degrees {})",
                strs(free_degrees).join(", ")
            ),
            json,
        },
    }
}

fn iso(r: &AdamsFamily, s: &AdamsFamily, cfg: &Config) -> CmdResult {
    let res = iso_solve(r, s, cfg.search_bound).map_err(e)?;
    Ok(iso_outcome(&res, r.primes()))
}

fn realizability_json(r: &Realizability) -> Value {
    json!({"passes": r.passes, "known_realized": r.known_realized})
}

fn realizability_text(r: &Realizability) -> String {
    match (r.passes, r.known_realized) {
        (true, Some(space)) => format!("passes realizability filter; realized by {space}"),
        (true, None) => "passes realizability filter".into(),
        (false, _) => "fails realizability filter".into(),
    }
}

fn class_n3_json(data: &ClassDataN3) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("class".into(), json!("linear"));
    m.insert("b".into(), seq_json(&data.b));
    m.insert("G".into(), json!(data.g.to_string()));
    m.insert("cond_b_primes".into(), json!(strs(&data.cond_b_primes)));
    m.insert("k".into(), json!(data.k.to_string()));
    m
}

fn n3_summary(nf: &N3NormalForm) -> (Map<String, Value>, String) {
    match nf {
        N3NormalForm::Linear { data, sigma } => {
            let mut m = Map::new();
            m.insert("n".into(), json!(3));
            m.extend(class_n3_json(data));
            m.insert("sigma".into(), sigma.to_json());
            let text = format!(
                "S((b_p), k) with k = {}, G = {}\nb: {}\nsigma(x) = {sigma}",
                data.k,
                data.g,
                seq_text(&data.b)
            );
            (m, text)
        }
        N3NormalForm::Quadratic { c, sigma } => {
            let mut m = Map::new();
            m.insert("n".into(), json!(3));
            m.insert("class".into(), json!("quadratic"));
            m.insert("c".into(), seq_json(c));
            m.insert("sigma".into(), sigma.to_json());
            let text = format!("S((c_p)) with b_p = 0\nc: {}\nsigma(x) = {sigma}", seq_text(c));
            (m, text)
        }
    }
}

fn n4_summary(class: &N4Class) -> (Map<String, Value>, String) {
    let mut m = Map::new();
    m.insert("n".into(), json!(4));
    m.insert("case".into(), json!(class.case()));
    let mut text = match class {
        N4Class::Chern { .. } => "case 1: psi^p(x) = (1 + x)^p - 1".to_string(),
        N4Class::Quaternionic { k, d2, .. } => {
            m.insert("k".into(), json!(k.to_string()));
            m.insert("d2".into(), json!(d2.to_string()));
            format!("case 2: S(k, d_2) with k = {k}, d_2 = {d2}")
        }
        N4Class::General { b, extension_bound } => {
            m.insert("b".into(), seq_json(b));
            m.insert("extension_bound".into(), json!(extension_bound.to_string()));
            format!(
                "case 3: at most {extension_bound} classes share this reduction mod x^3\nb: {}",
                seq_text(b)
            )
        }
        N4Class::Quadratic { c, d, .. } => {
            m.insert("c".into(), seq_json(c));
            m.insert("d".into(), seq_json(d));
            format!("case 4: b_p = 0\nc: {}\nd: {}", seq_text(c), seq_text(d))
        }
    };
    if let Some(sigma) = class.sigma() {
        m.insert("sigma".into(), sigma.to_json());
        text.push_str(&format!("\nsigma(x) = {sigma}"));
    }
    (m, text)
}

fn normalize(f: &AdamsFamily) -> CmdResult {
    match univariate_n(f)? {
        2 => {
            let b = normal_form_n2(f).map_err(e)?;
            Ok(Outcome::ok(
                format!("b: {}", seq_text(&b)),
                json!({"n": 2, "b": seq_json(&b)}),
            ))
        }
        3 => {
            let nf = normal_form_n3(f).map_err(e)?;
            let (mut m, text) = n3_summary(&nf);
            m.insert("representative".into(), nf.representative().map_err(e)?.to_json());
            Ok(Outcome::ok(text, Value::Object(m)))
        }
        4 => {
            let class = classify_n4(f).map_err(e)?;
            let (mut m, text) = n4_summary(&class);
            if let Some(rep) = class.representative(f.primes()).map_err(e)? {
                m.insert("representative".into(), rep.to_json());
            }
            Ok(Outcome::ok(text, Value::Object(m)))
        }
        n => Err(format!("normal forms are available for n = 2, 3, 4, not {n}")),
    }
}

fn classify(f: &AdamsFamily) -> CmdResult {
    match univariate_n(f)? {
        2 => {
            let b = normal_form_n2(f).map_err(e)?;
            let power = uniform_power(&b);
            let text = match power {
                Some(r) => format!("b: {}\nrealizable: b_p = p^{r}", seq_text(&b)),
                None => format!("b: {}\nnot realizable: b_p is not a fixed power of p", seq_text(&b)),
            };
            let json = json!({
                "n": 2,
                "b": seq_json(&b),
                "realizable": power.is_some(),
                "power": power.map(|r| r.to_string()),
            });
            Ok(Outcome::ok(text, json))
        }
        3 => {
            let nf = normal_form_n3(f).map_err(e)?;
            let (mut m, text) = n3_summary(&nf);
            let r = realizable_filter_n3(&nf);
            m.insert("realizability".into(), realizability_json(&r));
            Ok(Outcome::ok(
                format!("{text}\n{}", realizability_text(&r)),
                Value::Object(m),
            ))
        }
        4 => {
            let class = classify_n4(f).map_err(e)?;
            let (mut m, text) = n4_summary(&class);
            let r = realizable_filter_n4(&class);
            m.insert("realizability".into(), realizability_json(&r));
            Ok(Outcome::ok(
                format!("{text}\n{}", realizability_text(&r)),
                Value::Object(m),
            ))
        }
        n => Err(format!("classification is available for n = 2, 3, 4, not {n}")),
    }
}

fn write_classes(dir: &Path, families: &[AdamsFamily]) -> Result<Vec<String>, String> {
    std::fs::create_dir_all(dir).map_err(|x| format!("{}: {x}", dir.display()))?;
    let mut paths = Vec::with_capacity(families.len());
    for (i, f) in families.iter().enumerate() {
        let path = dir.join(format!("class-{:03}.json", i + 1));
        std::fs::write(&path, f.to_json_string() + "\n").map_err(|x| format!("{}: {x}", path.display()))?;
        paths.push(path.display().to_string());
    }
    Ok(paths)
}

fn enumerate(n: u32, b: Option<&str>, den: &str, case: Option<u32>, out_dir: Option<&Path>, cfg: &Config) -> CmdResult {
    let primes = primes_upto(cfg.primes_upto);
    let (labels, families): (Vec<String>, Vec<AdamsFamily>) = match (n, b, case) {
        (3, Some(b), None) => {
            let rule = parse_rule(b, den)?;
            let shape = RingShape::univariate(3);
            let mut labels = Vec::new();
            let mut families = Vec::new();
            for class in enumerate_n3(&eval_seq(&rule, &primes)?).map_err(e)? {
                labels.push(format!("k = {}", class.k));
                families.push(class.family_with_rule(&rule, &shape).map_err(e)?);
            }
            (labels, families)
        }
        (4, None, Some(2)) => enumerate_n4_case2(&primes)
            .map_err(e)?
            .into_iter()
            .map(|(k, d2, f)| (format!("k = {k}, d_2 = {d2}"), f))
            .unzip(),
        _ => return Err("use --n 3 --b RULE or --n 4 --case 2".into()),
    };
    let mut text = format!("{} classes", families.len());
    let paths = match out_dir {
        Some(dir) => Some(write_classes(dir, &families)?),
        None => None,
    };
    for (i, label) in labels.iter().enumerate() {
        text.push_str(&format!("\n{label}"));
        if let Some(p) = &paths {
            text.push_str(&format!("  {}", p[i]));
        }
    }
    let json = Value::Array(families.iter().map(AdamsFamily::to_json).collect());
    Ok(Outcome::ok(text, json))
}

fn count(n: u32, b: &str, den: &str, cfg: &Config) -> CmdResult {
    if n != 3 {
        return Err(format!("the counting formula is for n = 3, not {n}"));
    }
    let rule = parse_rule(b, den)?;
    let seq = eval_seq(&rule, &primes_upto(cfg.primes_upto))?;
    let c = count_n3(&seq).map_err(e)?;
    let json = json!({
        "count": c.to_string(),
        "G": lambda_lab::isoclass::g_of(&seq).to_string(),
        "cond_b_primes": strs(&lambda_lab::isoclass::condition_b_primes(&seq)),
    });
    Ok(Outcome::ok(c.to_string(), json))
}

fn conjc(r: &AdamsFamily, rt: &AdamsFamily, s: Option<AdamsFamily>, sigma: Option<&str>, cfg: &Config) -> CmdResult {
    let (sigma, s) = match (sigma, s) {
        (Some(text), s) => {
            let v: Value = serde_json::from_str(text).map_err(|x| format!("--sigma: {x}"))?;
            let sigma = Automorphism::from_json(&v, r.shape()).map_err(e)?;
            let s = match s {
                Some(s) => s,
                None => r.conjugate(&sigma).map_err(e)?,
            };
            (sigma, s)
        }
        (None, Some(s)) => match iso_solve(r, &s, cfg.search_bound).map_err(e)? {
            IsoResult::Isomorphic(sigma) => (sigma, s),
            other => {
                let mut o = iso_outcome(&other, r.primes());
                o.text = format!("no isomorphism R -> S to conjugate by\n{}", o.text);
                return Ok(o);
            }
        },
        (None, None) => return Err("give --sigma, --s, or both".into()),
    };
    let rep = conjc_check(r, &s, &sigma, rt).map_err(e)?;
    let mut text = format!(
        "n = {}, sigma(x) = {}\np >= n: {}\np < n: {}",
        rep.n,
        rep.sigma,
        if rep.high_ok() { "pass" } else { "FAIL" },
        if rep.low_ok() { "pass" } else { "FAIL" },
    );
    for f in rep.high_failures.iter().chain(&rep.low_failures) {
        text.push_str(&format!(
            "\n  p = {} at x^{}: residue {}",
            f.p, f.monomial[0], f.residue
        ));
    }
    if let Some(p) = &rep.probe {
        text.push_str(&format!(
            "\nx^6 coefficient of psi^2 mod 2: {}, x^3 coefficient of sigma mod 2: {}",
            p.x6_coeff_mod2, p.sigma_x3_mod2
        ));
    }
    Ok(Outcome {
        code: if rep.ok() { EXIT_OK } else { EXIT_NEGATIVE },
        text,
        json: rep.to_json(),
    })
}

fn universal(q: Option<usize>, p: Option<usize>, pij: Option<&[usize]>, cfg: &Config) -> CmdResult {
    let (name, poly) = match (q, p, pij) {
        (Some(k), None, None) => (format!("Q_{k}"), newton_q(k)),
        (None, Some(i), None) => (format!("P_{i}"), product_p(i, cfg.universal_cap)),
        (None, None, Some([i, j])) => (format!("P_{i},{j}"), composite_p(*i, *j, cfg.universal_cap)),
        _ => return Err("give exactly one of --q K, --p I, --pij I J".into()),
    };
    let poly = poly.map_err(e)?;
    let json = serde_json::to_value(poly.to_json()).expect("serializable");
    Ok(Outcome::ok(format!("{name} = {poly}"), json))
}

/// `{"ring": .., "primes" | "primes_upto": .., "b": {"p": ["v" | null, ..]}}`
fn existence_from_file(v: &Value, cfg: &Config) -> CmdResult {
    let obj = v.as_object().ok_or("existence input must be a JSON object")?;
    let mut head = Map::new();
    for (k, x) in obj {
        match k.as_str() {
            "ring" | "primes" | "primes_upto" => {
                head.insert(k.clone(), x.clone());
            }
            "b" => {}
            other => return Err(format!("unknown field {other:?}")),
        }
    }
    let base = AdamsFamily::from_json_with_default(&Value::Object(head), cfg.primes_upto).map_err(e)?;
    let table = obj
        .get("b")
        .and_then(Value::as_object)
        .ok_or("\"b\" must map primes to lists")?;
    let mut b = BTreeMap::new();
    for (p, row) in table {
        let p: u64 = p.trim().parse().map_err(|_| format!("bad prime {p:?}"))?;
        let row = row.as_array().ok_or("each row of \"b\" must be a list")?;
        for (i, x) in row.iter().enumerate() {
            let val = match x {
                Value::Null => continue,
                Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| format!("bad integer {s:?}"))?,
                Value::Number(n) => n
                    .to_string()
                    .parse::<BigInt>()
                    .map_err(|_| format!("bad integer {n}"))?,
                _ => return Err("b entries must be integers or null".into()),
            };
            b.insert((p, i), val);
        }
    }
    let f = construct_existence_family(base.shape(), &b, base.primes().to_vec()).map_err(e)?;
    Ok(Outcome::ok(f.to_json_string(), f.to_json()))
}

fn existence(file: Option<&Path>, trunc: &[String], cap: u32, rules: &[String], cfg: &Config) -> CmdResult {
    if let Some(path) = file {
        if !trunc.is_empty() || !rules.is_empty() {
            return Err("give either an input file or --trunc/--b".into());
        }
        return existence_from_file(&read_json(path)?, cfg);
    }
    if trunc.is_empty() {
        return Err("give an input file or --trunc".into());
    }
    let truncations = trunc
        .iter()
        .map(|t| match t.trim() {
            "inf" => Ok(Truncation::Unbounded { unbounded_cap: cap }),
            s => s
                .parse()
                .map(Truncation::Finite)
                .map_err(|_| format!("bad truncation {s:?}")),
        })
        .collect::<Result<Vec<_>, String>>()?;
    let shape = RingShape::new(truncations, 1).map_err(e)?;
    let finite: Vec<usize> = (0..shape.num_vars())
        .filter(|&i| shape.truncations()[i].is_finite())
        .collect();
    let rules = match rules.len() {
        1 => vec![parse_rule(&rules[0], "1")?; finite.len()],
        k if k == finite.len() => rules.iter().map(|r| parse_rule(r, "1")).collect::<Result<_, _>>()?,
        _ => {
            return Err(format!(
                "give one --b rule, or one per finite variable ({})",
                finite.len()
            ))
        }
    };
    let big_n = finite.iter().map(|&i| shape.bound(i)).max().unwrap_or(0) as u64;
    let primes = primes_upto(cfg.primes_upto);
    let mut b = BTreeMap::new();
    for &p in primes.iter().filter(|&&p| p >= big_n) {
        for (rule, &i) in rules.iter().zip(&finite) {
            b.insert((p, i), rule.eval(p).map_err(e)?);
        }
    }
    let f = construct_existence_family(&shape, &b, primes).map_err(e)?;
    Ok(Outcome::ok(f.to_json_string(), f.to_json()))
}
