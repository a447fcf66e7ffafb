//! ringlab: exact computations over a corpus of commutative rings.
//!
//! Verbs: classify, spectrum, clean, snf, gcd, edr-witness,
//! module-decompose, module-indec, lemma33, verify.
//!
//! Exit codes: 0 success/PASS, 1 property FAIL or domain negative,
//! 2 usage or parse error, 3 enumeration/dimension cap exceeded.

use std::process::ExitCode;

use ringlab_core::battery::built_in_corpus;
use ringlab_core::bezout::{edr_witness, gcd_bezout};
use ringlab_core::classify::{classification_report, Flag};
use ringlab_core::endo::{decompose, is_indecomposable, Indecomposability};
use ringlab_core::error::RingError;
use ringlab_core::matrix::{smith_normal_form, verify_snf_certificate, RingMatrix};
use ringlab_core::modules::{
    is_cyclic, lemma33_module, module_length, present_module, support,
};
use ringlab_core::parse::{
    parse_element, parse_matrix, parse_presentation, parse_ring_spec,
};
use ringlab_core::report::{Report, Value};
use ringlab_core::ring::{Element, Ring};
use ringlab_core::spectrum::{
    localization_kernel, max_spectrum, IdempotentGens, KernelRepr, MaximalIdeal,
    SpectrumPoints,
};
use ringlab_core::suites::{verify_suite, SuiteId};

struct Options {
    json: bool,
    cap: Option<u64>,
    seed: u64,
    corpus: bool,
    positional: Vec<String>,
}

fn parse_args(argv: &[String]) -> Result<Options, String> {
    let mut options = Options {
        json: false,
        cap: std::env::var("RINGLAB_CAP").ok().and_then(|v| v.parse().ok()),
        seed: 0,
        corpus: false,
        positional: Vec::new(),
    };
    let mut it = argv.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => options.json = true,
            "--corpus" => options.corpus = true,
            "--cap" => {
                let v = it.next().ok_or("--cap needs a value")?;
                options.cap = Some(v.parse().map_err(|_| format!("bad cap '{v}'"))?);
            }
            "--seed" => {
                let v = it.next().ok_or("--seed needs a value")?;
                options.seed = v.parse().map_err(|_| format!("bad seed '{v}'"))?;
            }
            other if other.starts_with("--") => {
                return Err(format!("unknown flag '{other}'"));
            }
            other => options.positional.push(other.to_string()),
        }
    }
    Ok(options)
}

fn ring_from(options: &Options, spec: &str) -> Result<Ring, RingError> {
    let ring = parse_ring_spec(spec)?;
    Ok(match options.cap {
        Some(cap) => ring.with_cap(cap),
        None => ring,
    })
}

fn exit_for(err: &RingError) -> u8 {
    match err {
        RingError::Syntax(_)
        | RingError::InvalidSpec(_)
        | RingError::UnknownSuite(_)
        | RingError::Unsupported(_) => 2,
        RingError::EnumerationCapExceeded { .. }
        | RingError::DimensionCapExceeded { .. }
        | RingError::SearchCapExceeded { .. }
        | RingError::MatrixTooLarge { .. }
        | RingError::InfiniteEnumeration(_) => 3,
        _ => 1,
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.json());
    } else {
        print!("{}", report.human());
    }
}

fn emit_error(message: &str, json: bool) {
    let mut report = Report::new();
    report.push("error", message);
    emit(&report, json);
}

const USAGE: &str = "usage: ringlab <verb> [args] [--json] [--cap N] [--seed N]
verbs:
  classify <ring>
  spectrum <ring>
  clean <ring> <element>
  snf <ring> <matrix-file>
  gcd <ring> <a> <b>
  edr-witness <ring> <a> <b>
  module-decompose <ring> <presentation-file>
  module-indec <ring> <presentation-file>
  lemma33 <ring> <a> <b> <n>
  verify <suite> (--corpus | <ring>...)   suites: T1 LG T21 SNF P32 T34 CVNR CLEN";

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let options = match parse_args(&argv) {
        Ok(options) => options,
        Err(message) => {
            eprintln!("error: {message}");
            eprintln!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    if options.positional.is_empty() {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    }
    let verb = options.positional[0].clone();
    match run(&verb, &options) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            emit_error(&err.to_string(), options.json);
            ExitCode::from(exit_for(&err))
        }
    }
}

fn arg<'a>(options: &'a Options, index: usize, name: &str) -> Result<&'a str, RingError> {
    options
        .positional
        .get(index)
        .map(|s| s.as_str())
        .ok_or_else(|| RingError::Syntax(format!("missing argument <{name}>")))
}

fn run(verb: &str, options: &Options) -> Result<u8, RingError> {
    match verb {
        "classify" => cmd_classify(options),
        "spectrum" => cmd_spectrum(options),
        "clean" => cmd_clean(options),
        "snf" => cmd_snf(options),
        "gcd" => cmd_gcd(options),
        "edr-witness" => cmd_edr(options),
        "module-decompose" => cmd_decompose(options),
        "module-indec" => cmd_indec(options),
        "lemma33" => cmd_lemma33(options),
        "verify" => cmd_verify(options),
        other => Err(RingError::Syntax(format!("unknown verb '{other}'"))),
    }
}

fn flag_value(flag: Flag) -> Value {
    Value::Str(flag.to_string())
}

fn cmd_classify(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let rep = classification_report(&ring, options.seed);
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.fields.push(("clean".into(), flag_value(rep.clean)));
    report.fields.push(("gelfand".into(), flag_value(rep.gelfand)));
    report.fields.push((
        "max_totally_disconnected".into(),
        flag_value(rep.max_totally_disconnected),
    ));
    report.fields.push((
        "zero_p_idempotent_generated".into(),
        flag_value(rep.zero_p_idempotent_generated),
    ));
    report.fields.push(("arithmetic".into(), flag_value(rep.arithmetic)));
    report.fields.push(("bezout".into(), flag_value(rep.bezout)));
    report
        .fields
        .push(("von_neumann_regular".into(), flag_value(rep.von_neumann_regular)));
    report.fields.push(("theorem34".into(), flag_value(rep.theorem34)));
    if let Some(index) = rep.jacobson_nilpotency_index {
        report.push("jacobson_index", index);
    }
    if !rep.witnesses.is_empty() {
        let mut witnesses = Value::map();
        for (key, value) in &rep.witnesses {
            witnesses.push(key, Value::from(value.as_str()));
        }
        report.fields.push(("witness".into(), witnesses));
    }
    emit(&report, options.json);
    Ok(0)
}

fn cmd_spectrum(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let spectrum = max_spectrum(&ring)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("topology", spectrum.topology.to_string());
    match &spectrum.points {
        SpectrumPoints::Finite(points) => {
            report.push("points", points.len());
            let mut list = Vec::new();
            for point in points {
                let mut entry = Value::map();
                entry.push("ideal", Value::from(point.render()));
                if let MaximalIdeal::Finite { primitive_idempotent, ideal } = point {
                    entry.push(
                        "primitive_idempotent",
                        Value::from(primitive_idempotent.to_string()),
                    );
                    entry.push(
                        "generators",
                        Value::List(
                            ideal
                                .generators
                                .iter()
                                .map(|g| Value::from(g.to_string()))
                                .collect(),
                        ),
                    );
                }
                let kernel = localization_kernel(&ring, point)?;
                match &kernel.kernel {
                    KernelRepr::Finite(ideal) => {
                        entry.push("kernel", Value::from(ideal.render()));
                    }
                    other => entry.push("kernel", Value::from(format!("{other:?}"))),
                }
                if let Some(IdempotentGens::List(gens)) = &kernel.idempotent_generators
                {
                    entry.push(
                        "kernel_idempotent_generators",
                        Value::List(
                            gens.iter().map(|g| Value::from(g.to_string())).collect(),
                        ),
                    );
                }
                list.push(entry);
            }
            report.fields.push(("point".into(), Value::List(list)));
        }
        SpectrumPoints::EcFamily { p } => {
            report.push(
                "points",
                format!(
                    "P@k for k in N (residue Q) and P@inf (residue Z localized at {p})"
                ),
            );
        }
        SpectrumPoints::IntegerPrimes => {
            report.push("points", "(q) for every prime q");
        }
    }
    emit(&report, options.json);
    Ok(0)
}

fn cmd_clean(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let element = parse_element(&ring, arg(options, 2, "element")?)?;
    let d = ring.clean_decompose(&element)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("element", element.to_string());
    report.push("unit", d.unit.to_string());
    report.push("idempotent", d.idempotent.to_string());
    emit(&report, options.json);
    Ok(0)
}

fn matrix_value(m: &RingMatrix) -> Value {
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row: Vec<Value> =
            (0..m.cols).map(|j| Value::from(m.at(i, j).to_string())).collect();
        rows.push(Value::List(row));
    }
    Value::List(rows)
}

fn cmd_snf(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let path = arg(options, 2, "matrix-file")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| RingError::Syntax(format!("cannot read '{path}': {e}")))?;
    let (rows, cols, entries) = parse_matrix(&ring, &text)?;
    let a = RingMatrix::new(rows, cols, entries);
    let cert = smith_normal_form(&ring, &a)?;
    let verified = verify_snf_certificate(&ring, &a, &cert);
    if options.json {
        let mut report = Report::new();
        report.push("ring", ring.to_string());
        report.fields.push(("p".into(), matrix_value(&cert.p)));
        report.fields.push(("d".into(), matrix_value(&cert.d)));
        report.fields.push(("q".into(), matrix_value(&cert.q)));
        report.fields.push((
            "chain".into(),
            Value::List(
                cert.divisibility_chain
                    .iter()
                    .map(|e| Value::from(e.to_string()))
                    .collect(),
            ),
        ));
        report.push("verified", verified.is_ok());
        emit(&report, true);
    } else {
        print!("P\n{}", cert.p.render());
        print!("D\n{}", cert.d.render());
        print!("Q\n{}", cert.q.render());
        let chain: Vec<String> =
            cert.divisibility_chain.iter().map(|e| e.to_string()).collect();
        println!("chain: [{}]", chain.join(", "));
        println!("verified: {}", verified.is_ok());
    }
    if verified.is_err() {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_gcd(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let a = parse_element(&ring, arg(options, 2, "a")?)?;
    let b = parse_element(&ring, arg(options, 3, "b")?)?;
    let cert = gcd_bezout(&ring, &a, &b)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("a", a.to_string());
    report.push("b", b.to_string());
    report.push("d", cert.d.to_string());
    report.push("s", cert.s.to_string());
    report.push("t", cert.t.to_string());
    emit(&report, options.json);
    Ok(0)
}

fn cmd_edr(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let a = parse_element(&ring, arg(options, 2, "a")?)?;
    let b = parse_element(&ring, arg(options, 3, "b")?)?;
    let w = edr_witness(&ring, &a, &b)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("a", a.to_string());
    report.push("b", b.to_string());
    report.push("d", w.d.to_string());
    report.push("a_prime", w.a_prime.to_string());
    report.push("b_prime", w.b_prime.to_string());
    report.push("c", w.c.to_string());
    let combo = ring.add(&w.a_prime, &ring.mul(&w.c, &w.b_prime));
    report.push("unit_combination", combo.to_string());
    emit(&report, options.json);
    Ok(0)
}

fn read_presentation(
    options: &Options,
    ring: &Ring,
    index: usize,
) -> Result<(usize, Vec<Vec<Element>>), RingError> {
    let path = arg(options, index, "presentation-file")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| RingError::Syntax(format!("cannot read '{path}': {e}")))?;
    parse_presentation(ring, &text)
}

fn cmd_decompose(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let (generators, relations) = read_presentation(options, &ring, 2)?;
    let module = present_module(&ring, generators, &relations)?;
    let dec = decompose(&ring, &module, options.seed)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("module_size", module.size());
    report.push("module_length", module_length(&ring, &module)?);
    report.push("summands", dec.summands.len());
    let mut list = Vec::new();
    for (i, summand) in dec.summands.iter().enumerate() {
        let mut entry = Value::map();
        entry.push("size", Value::from(summand.size()));
        entry.push("length", Value::from(dec.lengths[i]));
        entry.push(
            "support",
            Value::List(
                dec.supports[i]
                    .iter()
                    .map(|p| Value::from(p.render()))
                    .collect(),
            ),
        );
        entry.push(
            "idempotent_generator_images",
            Value::List(
                dec.idempotents[i]
                    .gen_images
                    .iter()
                    .map(|&g| Value::from(render_module_element(&module, g)))
                    .collect(),
            ),
        );
        entry.push("certified_indecomposable", Value::Bool(dec.certified[i]));
        list.push(entry);
    }
    report.fields.push(("summand".into(), Value::List(list)));
    emit(&report, options.json);
    Ok(0)
}

fn render_module_element(
    module: &ringlab_core::modules::FiniteModule,
    index: usize,
) -> String {
    let parts: Vec<String> =
        module.elems[index].iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_indec(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let (generators, relations) = read_presentation(options, &ring, 2)?;
    let module = present_module(&ring, generators, &relations)?;
    let verdict = is_indecomposable(&ring, &module, options.seed)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("module_size", module.size());
    let code = match verdict {
        Indecomposability::Indecomposable { scanned } => {
            report.push("indecomposable", true);
            report.push("endomorphisms_scanned", scanned);
            0
        }
        Indecomposability::Decomposable(e) => {
            report.push("indecomposable", false);
            report.push(
                "splitting_idempotent_images",
                Value::List(
                    e.gen_images
                        .iter()
                        .map(|&g| Value::from(render_module_element(&module, g)))
                        .collect(),
                ),
            );
            1
        }
        Indecomposability::ProbablyIndecomposable { trials, span } => {
            report.push("indecomposable", "probably");
            report.push("trials", trials);
            report.push("span", span);
            0
        }
    };
    emit(&report, options.json);
    Ok(code)
}

fn cmd_lemma33(options: &Options) -> Result<u8, RingError> {
    let ring = ring_from(options, arg(options, 1, "ring")?)?;
    let a = parse_element(&ring, arg(options, 2, "a")?)?;
    let b = parse_element(&ring, arg(options, 3, "b")?)?;
    let n: usize = arg(options, 4, "n")?
        .parse()
        .map_err(|_| RingError::Syntax("bad truncation length".into()))?;
    let module = lemma33_module(&ring, &a, &b, n)?;
    let mut report = Report::new();
    report.push("ring", ring.to_string());
    report.push("a", a.to_string());
    report.push("b", b.to_string());
    report.push("n", n as u64);
    report.push("module_size", module.size());
    report.push("module_length", module_length(&ring, &module)?);
    report.push("cyclic", is_cyclic(&ring, &module)?.is_some());
    match is_indecomposable(&ring, &module, options.seed)? {
        Indecomposability::Indecomposable { scanned } => {
            report.push("indecomposable", true);
            report.push("endomorphisms_scanned", scanned);
        }
        Indecomposability::Decomposable(_) => report.push("indecomposable", false),
        Indecomposability::ProbablyIndecomposable { trials, .. } => {
            report.push("indecomposable", "probably");
            report.push("trials", trials);
        }
    }
    let supp = support(&ring, &module)?;
    report.push(
        "support",
        Value::List(supp.iter().map(|p| Value::from(p.render())).collect()),
    );
    emit(&report, options.json);
    Ok(0)
}

fn cmd_verify(options: &Options) -> Result<u8, RingError> {
    let id = SuiteId::parse(arg(options, 1, "suite")?)?;
    let rings: Vec<Ring> = if options.corpus {
        let corpus = built_in_corpus();
        match options.cap {
            Some(cap) => corpus.into_iter().map(|r| r.with_cap(cap)).collect(),
            None => corpus,
        }
    } else {
        let specs = &options.positional[2..];
        if specs.is_empty() {
            return Err(RingError::Syntax(
                "verify needs --corpus or at least one ring spec".into(),
            ));
        }
        specs
            .iter()
            .map(|s| ring_from(options, s))
            .collect::<Result<_, _>>()?
    };
    let suite = verify_suite(id, &rings, options.seed);
    emit(&suite.report(), options.json);
    Ok(if suite.passed() { 0 } else { 1 })
}
