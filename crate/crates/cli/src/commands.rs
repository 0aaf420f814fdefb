use std::fs;
use std::io::{self, BufWriter, Stdout, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use horadam_core::{
    breakability_census, check_budget, for_each_tiling, parse_corpus, parse_identity, registry,
    verify_master, verify_partial_sum, CorpusEntry, Expectation, ParseError, Ranges, SchemeError,
    SequenceSpec, Strategy, TilingError, VerificationReport, VerifyError,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::select::Selector;
use crate::{CliError, Format};

/// Buffered stdout that renders records as plain text, CSV or JSON lines.
pub struct Output {
    format: Format,
    out: BufWriter<Stdout>,
    csv_header: Option<Vec<String>>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            out: BufWriter::new(io::stdout()),
            csv_header: None,
        }
    }

    pub fn flush(&mut self) {
        let _ = self.out.flush();
    }

    fn line(&mut self, text: &str) {
        // a closed pipe is not worth a panic
        let _ = writeln!(self.out, "{text}");
    }

    /// Writes `plain` in plain mode, otherwise one record built from `fields`.
    /// CSV repeats the header whenever the field names change.
    fn record(&mut self, plain: &str, fields: &[(&str, Value)]) {
        match self.format {
            Format::Plain => self.line(plain),
            Format::Csv => {
                let names: Vec<String> = fields.iter().map(|f| f.0.to_string()).collect();
                if self.csv_header.as_ref() != Some(&names) {
                    let header = names.iter().map(|n| csv_field(n)).collect::<Vec<_>>().join(",");
                    self.line(&header);
                    self.csv_header = Some(names);
                }
                let row: Vec<String> = fields
                    .iter()
                    .map(|(_, v)| match v {
                        Value::String(s) => csv_field(s),
                        other => csv_field(&other.to_string()),
                    })
                    .collect();
                self.line(&row.join(","));
            }
            Format::JsonLines => {
                let body: Vec<String> = fields
                    .iter()
                    .map(|(k, v)| format!("{}:{}", Value::from(*k), v))
                    .collect();
                self.line(&format!("{{{}}}", body.join(",")));
            }
        }
    }

    /// Lines that only make sense in plain mode (headers, summaries).
    fn plain_only(&mut self, text: &str) {
        if self.format == Format::Plain {
            self.line(text);
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn scheme_error(e: SchemeError) -> CliError {
    CliError::Usage(e.to_string())
}

fn tiling_error(e: TilingError) -> CliError {
    match e {
        TilingError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn verify_error(e: VerifyError) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn term(out: &mut Output, select: &Selector, n: i64, strategy: &str) -> Result<(), CliError> {
    let view = select.resolve()?;
    let index = n
        .checked_add(view.offset())
        .ok_or_else(|| CliError::Usage(format!("index {n} out of range")))?;
    let base = view.base();
    if strategy == "both" {
        let iter = base.term_with(Strategy::Iter, index).map_err(scheme_error)?;
        let matrix = base.term_with(Strategy::Matrix, index).map_err(scheme_error)?;
        let agree = iter == matrix;
        out.record(
            &format!("iter={iter} matrix={matrix} agree={agree}"),
            &[
                ("n", json!(n)),
                ("iter", big(&iter)),
                ("matrix", big(&matrix)),
                ("agree", json!(agree)),
            ],
        );
        return if agree { Ok(()) } else { Err(CliError::Mismatch) };
    }
    let strategy: Strategy = strategy.parse().map_err(CliError::Usage)?;
    let value = base.term_with(strategy, index).map_err(scheme_error)?;
    out.record(&value.to_string(), &[("n", json!(n)), ("value", big(&value))]);
    Ok(())
}

fn parse_index_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("range `{text}` is not of the form lo..hi"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

pub fn table(out: &mut Output, select: &Selector, range: &str) -> Result<(), CliError> {
    let view = select.resolve()?;
    let (lo, hi) = parse_index_range(range)?;
    for n in lo..=hi {
        let value = view.value(n);
        out.record(&format!("{n} {value}"), &[("n", json!(n)), ("value", big(&value))]);
    }
    Ok(())
}

pub fn tilings(out: &mut Output, select: &Selector, n: usize, budget: u64) -> Result<(), CliError> {
    let view = select.resolve()?;
    let scheme = view.scheme();
    let predicted = check_budget(scheme, n, budget).map_err(tiling_error)?;
    out.plain_only(&format!("# board={n} scheme={}", view.name()));
    let mut count: u64 = 0;
    for_each_tiling(scheme, n, |t| {
        count += 1;
        let rendered = t.to_string();
        out.record(
            &rendered,
            &[("board", json!(n)), ("scheme", json!(view.name())), ("tiling", json!(rendered))],
        );
    });
    let agree = BigInt::from(count) == predicted;
    out.plain_only(&format!("count={count} recurrence={predicted} agree={agree}"));
    if out.format == Format::JsonLines {
        out.record(
            "",
            &[
                ("board", json!(n)),
                ("scheme", json!(view.name())),
                ("count", json!(count.to_string())),
                ("recurrence", big(&predicted)),
                ("agree", json!(agree)),
            ],
        );
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

pub fn census(out: &mut Output, select: &Selector, n: usize, k: usize, budget: u64) -> Result<(), CliError> {
    let view = select.resolve()?;
    let scheme = view.scheme();
    let census = breakability_census(scheme, n, k, budget).map_err(tiling_error)?;
    let rows = census.rows(scheme);
    let breakable = BigInt::from(census.breakable_count);
    let breakable_predicted = census.predicted_breakable(scheme);
    let total = BigInt::from(census.total());
    let total_predicted = SequenceSpec::new("total", scheme.clone()).term((n + k) as i64);
    let agree = census.matches(scheme) && total == total_predicted;

    out.plain_only(&format!("# board={} break={n} scheme={}", n + k, view.name()));
    out.plain_only(&format!("breakable observed={breakable} predicted={breakable_predicted}"));
    for row in &rows {
        out.record(
            &format!("({},{}) observed={} predicted={}", row.i, row.j, row.observed, row.predicted),
            &[
                ("i", json!(row.i)),
                ("j", json!(row.j)),
                ("observed", big(&row.observed)),
                ("predicted", big(&row.predicted)),
            ],
        );
    }
    out.plain_only(&format!("total observed={total} predicted={total_predicted}"));
    out.plain_only(&format!("agree={agree}"));
    if out.format == Format::JsonLines {
        out.record(
            "",
            &[
                ("breakable_observed", big(&breakable)),
                ("breakable_predicted", big(&breakable_predicted)),
                ("total_observed", big(&total)),
                ("total_predicted", big(&total_predicted)),
                ("agree", json!(agree)),
            ],
        );
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Sweep the built-in corpus.
    #[arg(long)]
    builtin: bool,
    /// Sweep a corpus file.
    #[arg(long, conflicts_with = "builtin")]
    corpus: Option<PathBuf>,
    /// Verify a single identity, e.g. "F(2*n)=(F(n+1)+F(n-1))*F(n)".
    #[arg(long, conflicts_with_all = ["builtin", "corpus"])]
    identity: Option<String>,
    /// Ranges for --identity, e.g. "n=1..25, k=0..5" (inclusive).
    #[arg(long, requires = "identity")]
    range: Option<String>,
    /// Also check the even-index Fibonacci partial sums up to this n.
    #[arg(long)]
    partial_sum: Option<i64>,
    /// Also check the master convolution identity on every built-in view
    /// for 0 <= n, k <= this bound.
    #[arg(long)]
    master: Option<i64>,
}

struct Outcome {
    report: VerificationReport,
    expect: Expectation,
    cite: String,
}

impl Outcome {
    fn as_expected(&self) -> bool {
        self.report.passed() == (self.expect == Expectation::Pass)
    }
}

fn corpus_entries(args: &VerifyArgs) -> Result<Vec<CorpusEntry>, CliError> {
    if args.builtin {
        return Ok(horadam_core::builtin_corpus());
    }
    let Some(path) = &args.corpus else {
        return Ok(Vec::new());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_corpus(&text).map_err(|e| match e {
        ParseError::Corpus { line, message } => {
            CliError::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => CliError::Usage(format!("{}: {other}", path.display())),
    })
}

pub fn verify(out: &mut Output, args: &VerifyArgs) -> Result<(), CliError> {
    if !args.builtin
        && args.corpus.is_none()
        && args.identity.is_none()
        && args.partial_sum.is_none()
        && args.master.is_none()
    {
        return Err(CliError::Usage(
            "verify needs --builtin, --corpus, --identity, --partial-sum or --master".into(),
        ));
    }
    let reg = registry();
    let mut outcomes = Vec::new();
    for entry in corpus_entries(args)? {
        let report = horadam_core::verify(&entry.ast, &entry.ranges, reg).map_err(verify_error)?;
        outcomes.push(Outcome {
            report,
            expect: entry.expect,
            cite: entry.cite,
        });
    }
    if let Some(text) = &args.identity {
        let ast = parse_identity(text).map_err(|e| CliError::Usage(format!("{text}: {e}")))?;
        let ranges = match &args.range {
            Some(r) => Ranges::parse(r).map_err(CliError::Usage)?,
            None => Ranges(Vec::new()),
        };
        let report = horadam_core::verify(&ast, &ranges, reg).map_err(verify_error)?;
        outcomes.push(Outcome {
            report,
            expect: Expectation::Pass,
            cite: "command line".into(),
        });
    }
    if let Some(n_max) = args.partial_sum {
        outcomes.push(Outcome {
            report: verify_partial_sum(n_max, reg),
            expect: Expectation::Pass,
            cite: "partial sums of even-index Fibonacci numbers".into(),
        });
    }
    if let Some(bound) = args.master {
        if bound < 0 {
            return Err(CliError::Usage(format!("--master bound {bound} is negative")));
        }
        for view in reg.views() {
            outcomes.push(Outcome {
                report: master_report(view.base(), bound),
                expect: Expectation::Pass,
                cite: "master convolution identity".into(),
            });
        }
    }

    let mut unexpected = 0;
    for o in &outcomes {
        emit_report(out, o);
        if !o.as_expected() {
            unexpected += 1;
        }
    }
    out.plain_only(&format!(
        "summary: {} checked, {} as expected, {} unexpected",
        outcomes.len(),
        outcomes.len() - unexpected,
        unexpected
    ));
    if unexpected == 0 {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn master_report(spec: &SequenceSpec, bound: i64) -> VerificationReport {
    let mut report = VerificationReport {
        name: format!("master identity for {}", spec.name()),
        ranges: Ranges::square(&['n', 'k'], 0, bound),
        status: horadam_core::Status::Pass,
        checked: 0,
        failures: 0,
        counterexamples: Vec::new(),
    };
    for n in 0..=bound {
        for k in 0..=bound {
            report.checked += 1;
            if !verify_master(spec, n, k) {
                report.failures += 1;
                report.status = horadam_core::Status::Fail;
            }
        }
    }
    report
}

fn emit_report(out: &mut Output, o: &Outcome) {
    let r = &o.report;
    let status = if r.passed() { "pass" } else { "fail" };
    let expect = match o.expect {
        Expectation::Pass => "pass",
        Expectation::Fail => "fail",
    };
    let verdict = if o.as_expected() { "ok" } else { "UNEXPECTED" };
    match out.format {
        Format::Plain => {
            out.line(&format!(
                "{verdict} {status} {} [{}] checked={} failures={} expect={expect}",
                r.name, r.ranges, r.checked, r.failures
            ));
            out.line(&format!("  cite: {}", o.cite));
            for c in r.counterexamples.iter().take(5) {
                let binding: Vec<String> = c.binding.iter().map(|(v, x)| format!("{v}={x}")).collect();
                out.line(&format!("  counterexample {}: lhs={} rhs={}", binding.join(" "), c.lhs, c.rhs));
            }
        }
        Format::Csv | Format::JsonLines => {
            let first = r.counterexamples.first().map(|c| {
                c.binding
                    .iter()
                    .map(|(v, x)| format!("{v}={x}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            out.record(
                "",
                &[
                    ("name", json!(r.name)),
                    ("ranges", json!(r.ranges.to_string())),
                    ("status", json!(status)),
                    ("expect", json!(expect)),
                    ("as_expected", json!(o.as_expected())),
                    ("checked", json!(r.checked)),
                    ("failures", json!(r.failures)),
                    ("first_counterexample", json!(first.unwrap_or_default())),
                    ("cite", json!(o.cite)),
                ],
            );
        }
    }
}

pub fn bench(out: &mut Output, select: &Selector, ns: &str, strategies: &str) -> Result<(), CliError> {
    let view = select.resolve()?;
    let strategies: Vec<Strategy> = strategies
        .split(',')
        .map(|s| s.trim().parse().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    let ns: Vec<u64> = ns
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index `{}`", s.trim())))
        })
        .collect::<Result<_, _>>()?;
    let base = view.base();
    if view.scheme().is_full_history() && strategies.contains(&Strategy::Matrix) {
        return Err(CliError::Usage(format!(
            "{} has a full-history scheme; the matrix strategy is unavailable",
            view.name()
        )));
    }
    let mut all_agree = true;
    for &n in &ns {
        let mut timed = Vec::new();
        for &s in &strategies {
            let start = Instant::now();
            let value = match s {
                Strategy::Iter => base.term_uncached(n),
                Strategy::Matrix => base.term_fast(n).map_err(scheme_error)?,
            };
            timed.push((s, start.elapsed(), value));
        }
        let agree = timed.windows(2).all(|w| w[0].2 == w[1].2);
        all_agree &= agree;
        for (s, elapsed, value) in &timed {
            let ms = elapsed.as_secs_f64() * 1e3;
            let digits = value.to_string().trim_start_matches('-').len();
            out.record(
                &format!("n={n} strategy={} time_ms={ms:.3} digits={digits} agree={agree}", s.name()),
                &[
                    ("n", json!(n)),
                    ("strategy", json!(s.name())),
                    ("time_ms", json!(format!("{ms:.3}"))),
                    ("digits", json!(digits)),
                    ("agree", json!(agree)),
                ],
            );
        }
    }
    if all_agree {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

pub fn list_registry(out: &mut Output) -> Result<(), CliError> {
    for v in registry().views() {
        let aliases = v.aliases().join(" ");
        out.record(
            &format!(
                "{} aliases=[{aliases}] scheme=[{}] offset={} cite={}",
                v.name(),
                v.scheme(),
                v.offset(),
                v.citation()
            ),
            &[
                ("name", json!(v.name())),
                ("aliases", json!(aliases)),
                ("scheme", json!(v.scheme().to_string())),
                ("offset", json!(v.offset())),
                ("citation", json!(v.citation())),
            ],
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_ranges() {
        assert_eq!(parse_index_range("0..8").unwrap(), (0, 8));
        assert_eq!(parse_index_range("-3..=2").unwrap(), (-3, 2));
        assert!(parse_index_range("4..1").is_err());
        assert!(parse_index_range("4").is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("n=1..20, k=1..20"), "\"n=1..20, k=1..20\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
