//! `tsch`: batch front end for tsch-core.
//!
//! Every command prints one JSON envelope on standard output with sorted
//! keys: `command`, `params`, `result` or `error`, `diagnostics`, `status`.
//! `--human` prints a plain-text rendering instead. Diagnostics are also
//! echoed to standard error.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error or failed rows.

mod groupspec;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use tsch_core::certify::{self, Rejection};
use tsch_core::groupzoo::{agl1, alternating_group, pgl2, prime_power, psl2};
use tsch_core::numerics::cover_numerics;
use tsch_core::p1split::general_p1_splitting;
use tsch_core::repstab::{etale_stability, standard_rep_irreducible};
use tsch_core::{Error, PermGroup};

const GROUP_HELP: &str = "\
Group specs:
  --group name:param     named family: cyclic:r, sym:r, alt:r, pgl2:q, psl2:q, agl1:q
                         (pgl2/psl2 act on the q+1 points of the projective line,
                         agl1 on the q points of the field; q a prime power ≤ 512)
  --gens G [--gens G …]  explicit generators, each in cycle notation with 1-based
                         labels, e.g. \"(1 2 3)(4 5)\" (needs --degree), or as a
                         1-based image list, e.g. \"2,3,1,4\"";

#[derive(Parser)]
#[command(
    name = "tsch",
    version,
    about = "Exact stability analysis for Tschirnhausen bundles of curve covers"
)]
#[command(after_help = GROUP_HELP)]
struct Cli {
    /// Print plain text instead of the JSON envelope
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability of an étale cover from its monodromy group
    #[command(after_help = GROUP_HELP)]
    Etale {
        /// Named group, `name:param`
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        group: Option<String>,
        /// One generator (repeatable)
        #[arg(long)]
        gens: Vec<String>,
        /// Degree for explicit generators
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Branch degree and Tschirnhausen rank, degree and slope of a cover
    Invariants {
        #[arg(short = 'r')]
        r: u64,
        /// Genus of the source curve
        #[arg(short = 'g')]
        g: u64,
        /// Genus of the target curve
        #[arg(short = 'H')]
        h: u64,
    },
    /// Splitting type of the dual Tschirnhausen bundle of a general cover of P¹
    P1 {
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 'g')]
        g: u64,
    },
    /// Build a stability certificate for the general cover
    Certify {
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 'g')]
        g: u64,
        #[arg(short = 'H')]
        h: u64,
        /// Characteristic of the ground field; a prime > r labels the verdict strong
        #[arg(long)]
        characteristic: Option<u64>,
    },
    /// Check a certificate file (or `-` for standard input)
    Check { file: String },
    /// Verify the 2-transitivity identity over alternating, PGL₂, PSL₂ and AGL₁ families
    Families {
        /// Largest alternating degree
        #[arg(long, default_value_t = 8)]
        rmax: u64,
        /// Largest field size
        #[arg(long, default_value_t = 11)]
        qmax: u64,
    },
}

struct Report {
    command: &'static str,
    params: Value,
    body: Result<Value, Value>,
    diagnostics: Vec<String>,
    human: String,
    /// Set when the command ran but some row failed.
    failed: bool,
}

impl Report {
    fn new(command: &'static str, params: Value) -> Self {
        Report {
            command,
            params,
            body: Ok(Value::Null),
            diagnostics: Vec::new(),
            human: String::new(),
            failed: false,
        }
    }

    fn error(mut self, e: &Error) -> Self {
        self.human = format!("error: {}: {e}", e.kind());
        self.body = Err(json!({ "kind": e.kind(), "message": e.to_string() }));
        self
    }

    fn rejection(mut self, r: &Rejection) -> Self {
        self.human = format!("rejected: {r}");
        self.body = Err(json!({ "kind": r.kind.as_str(), "path": r.path, "detail": r.detail }));
        self
    }

    fn status(&self) -> &'static str {
        match (&self.body, self.failed) {
            (Err(_), _) => "error",
            (Ok(_), true) => "fail",
            (Ok(_), false) => "ok",
        }
    }

    fn envelope(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "params": self.params,
            "diagnostics": self.diagnostics,
            "status": self.status(),
        });
        match &self.body {
            Ok(result) => v["result"] = result.clone(),
            Err(error) => v["error"] = error.clone(),
        }
        v
    }

    fn exit_code(&self) -> u8 {
        if self.body.is_err() || self.failed {
            2
        } else {
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(cli.command) {
        Ok(report) => report,
        Err(usage) => {
            eprintln!("error: {usage}");
            return ExitCode::from(1);
        }
    };
    for d in &report.diagnostics {
        eprintln!("note: {d}");
    }
    if cli.human {
        println!("{}", report.human);
    } else {
        let text = serde_json::to_string_pretty(&report.envelope()).expect("values serialize");
        println!("{text}");
    }
    ExitCode::from(report.exit_code())
}

/// `Err` is a usage error; domain errors live inside the report.
fn run(command: Command) -> Result<Report, String> {
    Ok(match command {
        Command::Etale { group, gens, degree } => cmd_etale(group, gens, degree)?,
        Command::Invariants { r, g, h } => cmd_invariants(r, g, h),
        Command::P1 { r, g } => cmd_p1(r, g),
        Command::Certify {
            r,
            g,
            h,
            characteristic,
        } => cmd_certify(r, g, h, characteristic),
        Command::Check { file } => cmd_check(&file),
        Command::Families { rmax, qmax } => cmd_families(rmax, qmax),
    })
}

fn cmd_etale(spec: Option<String>, gens: Vec<String>, degree: Option<usize>) -> Result<Report, String> {
    let params = match &spec {
        Some(s) => json!({ "group": s }),
        None => json!({ "gens": gens, "degree": degree }),
    };
    let report = Report::new("etale", params);
    let group = match &spec {
        Some(s) => groupspec::named_group(s)?,
        None => groupspec::explicit_group(&gens, degree),
    };
    let group = match group {
        Ok(g) => g,
        // malformed generator text is a usage error
        Err(e @ (Error::MalformedCycle { .. } | Error::NotABijection(_))) => return Err(e.to_string()),
        Err(e) => return Ok(report.error(&e)),
    };
    Ok(match etale_stability(&group) {
        Err(e) => report.error(&e),
        Ok(er) => {
            let mut report = report;
            if er.check.single_oracle() {
                report.diagnostics.push(format!(
                    "order {} exceeds the enumeration cap; character sum skipped",
                    er.check.order
                ));
            }
            let sum = er
                .check
                .character_sum
                .map_or("n/a".to_string(), |s| s.to_string());
            report.human = format!(
                "{}\ndegree {}  order {}  character sum {}  pair orbits {}",
                er.verdict,
                group.degree(),
                er.check.order,
                sum,
                er.check.pair_orbits
            );
            report.body = Ok(serde_json::to_value(&er).expect("reports serialize"));
            report
        }
    })
}

fn cmd_invariants(r: u64, g: u64, h: u64) -> Report {
    let report = Report::new("invariants", json!({ "r": r, "g": g, "h": h }));
    match cover_numerics(r, g, h) {
        Err(e) => report.error(&e),
        Ok(n) => {
            let mut report = report;
            report.human = format!(
                "b = {}  rank = {}  degree = {}  slope = {}",
                n.b(),
                n.tsch_rank(),
                n.tsch_degree(),
                n.slope()
            );
            let mut v = serde_json::to_value(n.record()).expect("records serialize");
            v["slope"] = json!(n.slope().to_string());
            report.body = Ok(v);
            report
        }
    }
}

fn cmd_p1(r: u64, g: u64) -> Report {
    let report = Report::new("p1", json!({ "r": r, "g": g }));
    match general_p1_splitting(r, g) {
        Err(e) => report.error(&e),
        Ok(t) => {
            let mut report = report;
            report.human = t.to_string();
            report.body = Ok(json!({
                "splitting_type": t.degrees(),
                "display": t.to_string(),
                "rank": t.rank(),
                "degree": t.total_degree(),
                "balanced": t.is_balanced(),
                "perfectly_balanced": t.is_perfectly_balanced(),
            }));
            report
        }
    }
}

fn cmd_certify(r: u64, g: u64, h: u64, characteristic: Option<u64>) -> Report {
    let report = Report::new(
        "certify",
        json!({ "r": r, "g": g, "h": h, "characteristic": characteristic }),
    );
    match certify::build_certificate_with(r, g, h, characteristic) {
        Err(e) => report.error(&e),
        Ok(doc) => {
            let mut report = report;
            report.human = format!(
                "{} certificate, {} node(s), root claims {}",
                doc.root.node.kind(),
                doc.root.size(),
                doc.root.claimed.tag
            );
            report.body = Ok(certify::to_value(&doc));
            report
        }
    }
}

fn read_input(file: &str) -> std::io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

/// Accepts a bare certificate document or the envelope printed by `certify`.
fn parse_certificate(text: &str) -> Result<certify::CertificateDocument, Error> {
    if let Ok(Value::Object(map)) = serde_json::from_str::<Value>(text) {
        if map.get("command") == Some(&json!("certify")) {
            return match map.get("result") {
                Some(result) => certify::from_str(&result.to_string()),
                None => Err(Error::SchemaViolation {
                    path: "result".into(),
                    message: "certify envelope carries no certificate".into(),
                }),
            };
        }
    }
    certify::from_str(text)
}

fn cmd_check(file: &str) -> Report {
    let mut report = Report::new("check", json!({ "file": file }));
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => {
            report.human = format!("error: Io: {e}");
            report.body = Err(json!({ "kind": "Io", "message": e.to_string() }));
            return report;
        }
    };
    let doc = match parse_certificate(&text) {
        Ok(d) => d,
        Err(e) => return report.error(&e),
    };
    match certify::check_document(&doc) {
        Err(rej) => report.rejection(&rej),
        Ok(out) => {
            report.human = out.verdict.to_string();
            report.body = Ok(serde_json::to_value(&out).expect("outcomes serialize"));
            report
        }
    }
}

struct Row {
    label: String,
    value: Value,
    pass: bool,
    line: String,
}

fn family_row(label: String, group: Result<PermGroup, Error>) -> Row {
    let fail = |label: String, e: Error| Row {
        line: format!("{label:<10} ERROR {e}"),
        value: json!({ "group": label, "status": "ERROR", "error": e.kind() }),
        label,
        pass: false,
    };
    let group = match group {
        Ok(g) => g,
        Err(e) => return fail(label, e),
    };
    let check = match standard_rep_irreducible(&group) {
        Ok(c) => c,
        Err(e) => return fail(label, e),
    };
    let twice = &check.order * 2u32;
    let sum_ok = match check.character_sum {
        Some(s) => twice == s.into(),
        None => true,
    };
    let pass = sum_ok && check.pair_orbits == 2;
    let status = match (pass, check.character_sum) {
        (false, _) => "FAIL",
        (true, None) => "PASS (pair orbits only)",
        (true, Some(_)) => "PASS",
    };
    let sum = check.character_sum.map_or("-".to_string(), |s| s.to_string());
    Row {
        line: format!(
            "{label:<10} {:>6} {:>12} {:>12} {:>12} {:>6}  {status}",
            group.degree(),
            check.order,
            sum,
            twice,
            check.pair_orbits
        ),
        value: json!({
            "group": label,
            "degree": group.degree(),
            "order": check.order.to_string(),
            "character_sum": check.character_sum,
            "twice_order": twice.to_string(),
            "pair_orbits": check.pair_orbits,
            "status": if pass { "PASS" } else { "FAIL" },
        }),
        label,
        pass,
    }
}

fn cmd_families(rmax: u64, qmax: u64) -> Report {
    let mut report = Report::new("families", json!({ "rmax": rmax, "qmax": qmax }));
    type Build = fn(u64) -> Result<PermGroup, Error>;
    let mut specs: Vec<(String, Build, u64)> = (4..=rmax)
        .map(|r| (format!("alt:{r}"), alternating_group as Build, r))
        .collect();
    for q in (2..=qmax).filter(|&q| prime_power(q).is_some()) {
        specs.push((format!("pgl2:{q}"), pgl2, q));
        specs.push((format!("psl2:{q}"), psl2, q));
        specs.push((format!("agl1:{q}"), agl1, q));
    }
    // Rows are evaluated in parallel; collect keeps the input order.
    let rows: Vec<Row> = specs
        .into_par_iter()
        .map(|(label, build, n)| family_row(label, build(n)))
        .collect();
    for row in rows
        .iter()
        .filter(|r| r.value["character_sum"].is_null() && r.pass)
    {
        report.diagnostics.push(format!(
            "{}: order exceeds the enumeration cap; pair orbits only",
            row.label
        ));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    report.failed = passed != rows.len();
    let mut human = format!(
        "{:<10} {:>6} {:>12} {:>12} {:>12} {:>6}  status\n",
        "group", "degree", "order", "char sum", "2|G|", "pairs"
    );
    for row in &rows {
        human.push_str(&row.line);
        human.push('\n');
    }
    human.push_str(&format!("{passed}/{} rows pass", rows.len()));
    report.human = human;
    report.body = Ok(json!({
        "rows": rows.iter().map(|r| r.value.clone()).collect::<Vec<_>>(),
        "passed": passed,
        "total": rows.len(),
    }));
    report
}
