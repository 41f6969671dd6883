//! Subcommand implementations. Each returns a report, optionally a document,
//! and the exit status to finish with.

use std::str::FromStr;

use serde_json::{json, Value};

use num_rational::Rational64;
use orthoscalar_core::numerics::{residual_orthoscalar, word_trace_invariants};
use orthoscalar_core::roots::coincident_pair;
use orthoscalar_core::systems::DEFAULT_TRIALS;
use orthoscalar_core::unitarize::discrete_model;
use orthoscalar_core::{
    admissible_continuous, admissible_discrete, admissible_small, apply_functor_word, apply_word, c64,
    canonical_character, classify_root, continuous_parameter, continuous_system, def_form, degenerate_system,
    dimension_vector, discrete_dimension, is_brick, is_indecomposable, knr_ellipse, knr_mu, knr_projections, knr_solve,
    recognize_discrete, tits_form, unitarize_lines, unitarize_quadruple, verify_orthoscalar, AdmissibilityVerdict,
    ContinuousParameter, CoxeterWord, DiscreteFamily, Indecomposability, KnrParameters, SmallShape, SubspaceSystem,
    ToleranceConfig, UnitarizedSystem, WeightVector, C64,
};

use crate::document::SystemDocument;
use crate::error::{code, CliError};
use crate::report::{self, Report};

pub struct Context {
    pub tol: ToleranceConfig,
    pub seed: u64,
}

pub struct Outcome {
    pub report: Report,
    pub document: Option<SystemDocument>,
    pub status: u8,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Self {
            report,
            document: None,
            status: 0,
        }
    }

    fn with_document(report: Report, document: SystemDocument) -> Self {
        Self {
            report,
            document: Some(document),
            status: 0,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `"re,im"` (or a bare real number).
pub fn parse_complex(s: &str) -> CliResult<C64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| CliError::parse(format!("cannot parse {t:?} as a number")))
    };
    let z = match parts.as_slice() {
        [re] => c64(num(re)?, 0.0),
        [re, im] => c64(num(re)?, num(im)?),
        _ => return Err(CliError::parse(format!("expected \"re,im\", got {s:?}"))),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(CliError::parse(format!("non-finite value {s:?}")));
    }
    Ok(z)
}

fn parse_weights<T>(s: &str, what: &str) -> CliResult<WeightVector<T>>
where
    WeightVector<T>: FromStr<Err = orthoscalar_core::Error>,
{
    WeightVector::<T>::from_str(s).map_err(|e| CliError::parse(format!("{what}: {e}")))
}

/// Degenerate character used by `--auto`: `a_i = a_j = 1/2`, the other two
/// weights `1` and `a0 = 3/2` (an equilateral triangle).
fn degenerate_auto_character(pair: (usize, usize)) -> WeightVector<f64> {
    let tail = (1..=4)
        .map(|k| if k == pair.0 || k == pair.1 { 0.5 } else { 1.0 })
        .collect();
    WeightVector::new(1.5, tail).expect("four entries")
}

/// Character chosen by `--auto` for a quadruple.
fn auto_character(l: &SubspaceSystem) -> CliResult<WeightVector<f64>> {
    let d = dimension_vector(l);
    if d.to_vec() == [2, 1, 1, 1, 1] {
        return Ok(match coincident_pair(l)? {
            Some(pair) => degenerate_auto_character(pair),
            None => WeightVector::new(2.0, vec![1.0; 4]).expect("four entries"),
        });
    }
    Ok(canonical_character(&d)?.to_f64())
}

/// Rounded word traces, hashed (FNV-1a) into a short digest that is equal for
/// unitarily equivalent systems.
pub fn trace_digest(l: &SubspaceSystem, tol: &ToleranceConfig) -> CliResult<String> {
    let traces = word_trace_invariants(&l.projections(tol)?, 4);
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for t in traces {
        for part in [t.re, t.im] {
            let mut s = format!("{part:.6}");
            if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                s = s.trim_start_matches('-').to_string();
            }
            for b in s.bytes().chain(std::iter::once(b';')) {
                hash ^= u64::from(b);
                hash = hash.wrapping_mul(0x0100_0000_01b3);
            }
        }
    }
    Ok(format!("{hash:016x}"))
}

pub fn classify(doc: &SystemDocument, ctx: &Context) -> CliResult<Outcome> {
    let l = doc.to_system(&ctx.tol)?.without_gram();
    let d = dimension_vector(&l);
    let mut r = Report::new("classify")
        .field("subspaces", l.count())
        .field("dimension", report::weights(&d));
    if d.len() == 4 {
        let class = classify_root(&d)?;
        r.push("tits", tits_form(&d)?);
        r.push("def", def_form(&d)?);
        r.push("root_class", format!("{:?}", class.tag));
        r.push("minimal", class.minimal);
        if let Some(f) = recognize_discrete(&d) {
            r.push("family", f.to_string());
        }
        if class.minimal {
            match continuous_parameter(&l) {
                Ok(ContinuousParameter::Mu(mu)) => r.push("mu", report::complex(mu)),
                Ok(ContinuousParameter::Degenerate { pair }) => r.push("degenerate_pair", json!([pair.0, pair.1])),
                Err(e) => r.push("mu", format!("unavailable ({e})")),
            }
        }
    }
    r.push("brick", is_brick(&l, &ctx.tol));
    let verdict = match is_indecomposable(&l, DEFAULT_TRIALS, ctx.seed, &ctx.tol) {
        Indecomposability::Decomposable => "decomposable",
        Indecomposability::ProbablyIndecomposable => "probably indecomposable",
    };
    r.push("indecomposable", verdict);
    Ok(Outcome::report(r))
}

pub fn unitarize(doc: &SystemDocument, character: Option<&str>, ctx: &Context) -> CliResult<Outcome> {
    let l = doc.to_system(&ctx.tol)?.without_gram();
    let lines = l.subspaces().iter().all(|b| b.ncols() == 1);
    let (kind, cert) = if l.count() == 4 {
        if !is_brick(&l, &ctx.tol) {
            return Err(orthoscalar_core::Error::NotBrick.into());
        }
        let chi = match character {
            Some(s) => parse_weights::<f64>(s, "character")?,
            None => auto_character(&l)?,
        };
        ("quadruple", unitarize_quadruple(&l, &chi, ctx.seed, &ctx.tol)?)
    } else if lines {
        if character.is_some() {
            return Err(CliError::parse(
                "line systems take --auto: the construction fixes the character",
            ));
        }
        ("lines", unitarize_lines(&l, &ctx.tol)?)
    } else {
        return Err(CliError::invariant("unitarize handles quadruples and systems of lines"));
    };
    let r = Report::new("unitarize")
        .field("kind", kind)
        .field("dimension", report::weights(&dimension_vector(&l)))
        .field("character", report::weights(&cert.character))
        .field("residual", cert.residual)
        .field("tol_residual", ctx.tol.tol_residual)
        .field("accepted", cert.is_accepted(&ctx.tol));
    let out = l.with_gram(cert.gram.clone())?;
    let doc = SystemDocument::from_system(&out, Some(&cert.character), Some(cert.residual));
    Ok(Outcome::with_document(r, doc))
}

/// Loads a document carrying a Gram matrix and character as a certificate.
fn load_certificate(doc: &SystemDocument, ctx: &Context) -> CliResult<UnitarizedSystem> {
    let l = doc.to_system(&ctx.tol)?;
    if l.gram().is_none() {
        return Err(CliError::invariant("document has no gram"));
    }
    let chi = doc
        .character()?
        .ok_or_else(|| CliError::invariant("document has no character"))?;
    UnitarizedSystem::new(l, chi, &ctx.tol).map_err(|e| CliError::invariant(format!("not a certificate: {e}")))
}

pub fn coxeter(doc: &SystemDocument, word: &str, ctx: &Context) -> CliResult<Outcome> {
    let word = CoxeterWord::from_str(word).map_err(|e| CliError::parse(format!("word: {e}")))?;
    let s = load_certificate(doc, ctx)?;
    let predicted_dimension = apply_word(&word, &s.dimension());
    let predicted_character = apply_word(&word.dual(), s.character());
    let digest_in = trace_digest(s.system(), &ctx.tol)?;
    let t = apply_functor_word(&s, &word, &ctx.tol)?;
    let r = Report::new("coxeter")
        .field("word", word.to_string())
        .field("dimension_in", report::weights(&s.dimension()))
        .field("predicted_dimension", report::weights(&predicted_dimension))
        .field("dimension", report::weights(&t.dimension()))
        .field("predicted_character", report::weights(&predicted_character))
        .field("character", report::weights(t.character()))
        .field("residual", t.residual())
        .field("trace_digest_in", digest_in)
        .field("trace_digest", trace_digest(t.system(), &ctx.tol)?);
    let doc = SystemDocument::from_system(t.system(), Some(t.character()), Some(t.residual()));
    Ok(Outcome::with_document(r, doc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyKindArg {
    D4,
    D0,
}

#[derive(Debug, Clone, Default)]
pub struct ConstructArgs {
    pub family: Option<FamilyKindArg>,
    pub variant: Option<usize>,
    pub m: Option<i64>,
    pub size: Option<i64>,
    pub sign: Option<i64>,
    pub mu: Option<String>,
    pub degenerate: Option<Vec<usize>>,
}

fn family_from_args(kind: FamilyKindArg, a: &ConstructArgs) -> CliResult<DiscreteFamily> {
    let size = match (a.size, a.m) {
        (Some(s), _) => s,
        (None, Some(m)) => 2 * m + 1,
        (None, None) => return Err(CliError::parse("a family needs --m or --size")),
    };
    let sign = a.sign.ok_or_else(|| CliError::parse("a family needs --sign"))?;
    Ok(match kind {
        FamilyKindArg::D4 => {
            let v = a
                .variant
                .ok_or_else(|| CliError::parse("D4 needs --i (the distinguished subspace)"))?;
            DiscreteFamily::d4(v, size, sign)?
        }
        FamilyKindArg::D0 => DiscreteFamily::d0(size, sign)?,
    })
}

pub fn construct(args: &ConstructArgs, ctx: &Context) -> CliResult<Outcome> {
    let mut r = Report::new("construct");
    let doc = if let Some(kind) = args.family {
        let f = family_from_args(kind, args)?;
        let d = discrete_dimension(&f)?;
        let chi = canonical_character(&d)?;
        let s = discrete_model(&d, &chi.to_f64(), &ctx.tol)?;
        r.push("family", f.to_string());
        r.push("dimension", report::weights(&s.dimension()));
        r.push("character", report::exact_weights(&chi));
        r.push("residual", s.residual());
        SystemDocument::from_system(s.system(), Some(s.character()), Some(s.residual()))
    } else if let Some(mu) = &args.mu {
        let mu = parse_complex(mu)?;
        let l = continuous_system(mu)?;
        r.push("mu", report::complex(mu));
        r.push("dimension", report::weights(&dimension_vector(&l)));
        SystemDocument::from_system(&l, None, None)
    } else if let Some(pair) = &args.degenerate {
        let [i, j] = pair[..] else {
            return Err(CliError::parse("--degenerate takes two indices"));
        };
        let l = degenerate_system(i, j)?;
        r.push("degenerate_pair", json!([i, j]));
        r.push("dimension", report::weights(&dimension_vector(&l)));
        SystemDocument::from_system(&l, None, None)
    } else {
        return Err(CliError::parse("construct needs --family, --mu or --degenerate"));
    };
    Ok(Outcome::with_document(r, doc))
}

pub fn verify(doc: &SystemDocument, ctx: &Context) -> CliResult<Outcome> {
    let l = doc.to_system(&ctx.tol)?;
    let g = l
        .gram()
        .cloned()
        .ok_or_else(|| CliError::invariant("document has no gram"))?;
    let chi = doc
        .character()?
        .ok_or_else(|| CliError::invariant("document has no character"))?;
    let cert = verify_orthoscalar(&l, &g, &chi, &ctx.tol)?;
    let accepted = cert.is_accepted(&ctx.tol);
    let r = Report::new("verify")
        .field("dimension", report::weights(&dimension_vector(&l)))
        .field("character", report::weights(&chi))
        .field("residual", cert.residual)
        .field("tol_residual", ctx.tol.tol_residual)
        .field("accepted", accepted);
    Ok(Outcome {
        report: r,
        document: None,
        status: if accepted { 0 } else { code::INVARIANT },
    })
}

pub fn admissible(dimension: &str, character: &str, degenerate: Option<&[usize]>) -> CliResult<Outcome> {
    let d = parse_weights::<i64>(dimension, "dimension")?;
    let chi = parse_weights::<Rational64>(character, "character")?;
    let pair = match degenerate {
        Some(&[i, j]) => Some((i, j)),
        Some(_) => return Err(CliError::parse("--degenerate takes two indices")),
        None => None,
    };
    let (class, verdict): (&str, AdmissibilityVerdict) = if d.to_vec() == [2, 1, 1, 1, 1] {
        ("continuous", admissible_continuous(&chi, pair)?)
    } else if pair.is_some() {
        return Err(CliError::parse("--degenerate applies only to dimension (2;1,1,1,1)"));
    } else if recognize_discrete(&d).is_some() {
        ("discrete", admissible_discrete(&d, &chi)?)
    } else if d.head == 1 && d.tail.iter().all(|&x| x == 0 || x == 1) {
        let shape = SmallShape::Point {
            full: d.tail.iter().map(|&x| x == 1).collect(),
        };
        ("point", admissible_small(&shape, &chi)?)
    } else if d.to_vec() == [2, 1, 1, 1] {
        ("line triple", admissible_small(&SmallShape::LineTriple, &chi)?)
    } else {
        return Err(CliError::invariant(format!(
            "no admissibility conditions for dimension {d}"
        )));
    };
    let r = Report::new("admissible")
        .field("dimension", report::weights(&d))
        .field("character", report::exact_weights(&chi))
        .field("class", class)
        .field("admissible", verdict.admissible)
        .field("failed_conditions", verdict.failed_conditions.clone());
    let status = if verdict.admissible { 0 } else { code::INADMISSIBLE };
    Ok(Outcome {
        report: r,
        document: None,
        status,
    })
}

/// Four weights (head 1) or a full character `a0,a1,a2,a3,a4`.
fn knr_character(s: &str) -> CliResult<WeightVector<f64>> {
    let w = parse_weights::<f64>(s, "weights")?;
    match w.len() {
        3 => Ok(WeightVector::new(1.0, w.to_vec())?),
        4 => Ok(w),
        _ => Err(CliError::parse("knr takes four weights or a five-entry character")),
    }
}

pub fn knr(weights: &str, lambda: Option<f64>, x: Option<f64>, solve_mu: Option<&str>) -> CliResult<Outcome> {
    let chi = knr_character(weights)?;
    let mut r = Report::new("knr");
    let (lambda, x) = match (lambda, x, solve_mu) {
        (_, _, Some(mu)) => {
            let mu = parse_complex(mu)?;
            let (lambda, x) = knr_solve(&chi, mu)?;
            r.push("target_mu", report::complex(mu));
            (lambda, x)
        }
        (Some(lambda), Some(x), None) => (lambda, x),
        _ => return Err(CliError::parse("knr needs --lambda and --x, or --solve-mu")),
    };
    let p = KnrParameters::from_character(&chi, lambda, x)?;
    let (a, b, c, d) = p.abcd();
    let normalized = WeightVector::new(1.0, chi.tail.iter().map(|w| w / chi.head).collect())?;
    let projections = knr_projections(&p);
    let residual = residual_orthoscalar(&projections, &normalized)?;
    let mu = knr_mu(&p)?;
    let e = knr_ellipse(p.weights(), lambda)?;
    r.push("weights", json!(p.weights()));
    r.push("permutation", json!(p.permutation()));
    r.push("abcd", json!([a, b, c, d]));
    r.push("lambda_range", json!([a, b.min(d)]));
    r.push("lambda", lambda);
    r.push("x", p.x());
    r.push("mu", report::complex(mu));
    r.push(
        "ellipse",
        json!({"center": report::complex(e.center), "semi_real": e.semi_real, "semi_imag": e.semi_imag}),
    );
    r.push("residual", residual);
    r.push(
        "projections",
        Value::Array(projections.iter().map(report::matrix).collect()),
    );
    Ok(Outcome::report(r))
}
