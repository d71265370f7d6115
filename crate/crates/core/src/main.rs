use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use critgraph::certify::{attach_member, decide, verify_certificate, verify_coloring, Certificate, CertificateRecord, Outcome};
use critgraph::enumeration::{CachePolicy, Census, EnumerateOptions, FamilyCache, Sidecar, DEFAULT_VERIFY_DEPTH};
use critgraph::lemmas::run_suite;
use critgraph::{graph6, Error};

/// Enumerates k-critical (P5, co-P5)-free graphs and certifies k-colorability.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Builds C_1..C_k into the cache and prints the census.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Ignore cached levels and build everything again.
        #[arg(long)]
        rebuild: bool,
    },
    /// Certifies k-colorability of every graph6 line of the input file.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
    },
    /// Runs the structural invariant suite over C_1..C_k.
    VerifyLemmas {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
    k: u64,
    #[arg(long, default_value = "families")]
    cache_dir: PathBuf,
    /// Levels up to this one get a full criticality check when built.
    #[arg(long, default_value_t = DEFAULT_VERIFY_DEPTH)]
    verify_depth: usize,
    /// Seed for the criticality sample of levels above the verify depth.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Fail instead of building levels missing from the cache.
    #[arg(long)]
    no_build: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Common {
    fn k(&self) -> usize {
        self.k as usize
    }

    fn options(&self) -> EnumerateOptions {
        EnumerateOptions {
            verify_depth: self.verify_depth,
            seed: self.seed,
        }
    }

    fn policy(&self) -> CachePolicy {
        if self.no_build {
            CachePolicy::NoBuild
        } else {
            CachePolicy::Use
        }
    }

    fn census(&self, k: usize, policy: CachePolicy) -> critgraph::Result<Census> {
        FamilyCache::new(&self.cache_dir).load_or_build(k, &self.options(), policy)
    }
}

/// Exit status: 0 success, 1 failed verification or certificate, 2 bad input.
fn status_of(e: &Error) -> u8 {
    match e {
        Error::Verification { .. } | Error::FamilyMiss { .. } | Error::BuoyNotModule { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate { common, rebuild } => cmd_enumerate(common, *rebuild),
        Command::Certify { common, input } => cmd_certify(common, input),
        Command::VerifyLemmas { common } => cmd_verify_lemmas(common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(status_of(&e))
        }
    }
}

fn emit(text: &str) -> critgraph::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_enumerate(common: &Common, rebuild: bool) -> critgraph::Result<u8> {
    let policy = if rebuild { CachePolicy::Rebuild } else { common.policy() };
    let census = common.census(common.k(), policy)?;
    let cache = FamilyCache::new(&common.cache_dir);

    if common.format == Format::Json {
        let mut sidecars = Vec::new();
        for f in census.families() {
            let text = fs::read_to_string(cache.sidecar_path(f.k()))?;
            sidecars.push(serde_json::from_str::<Sidecar>(&text)?);
        }
        emit(&(serde_json::to_string_pretty(&sidecars)? + "\n"))?;
        return Ok(0);
    }

    let mut out = String::new();
    out.push_str(&format!("{:>3} {:>6} {:>6} {:>6} {:>9}\n", "k", "f", "b", "j", "checked"));
    for f in census.families() {
        let checked = f.info().map_or(0, |i| i.criticality_checked);
        out.push_str(&format!("{:>3} {:>6} {:>6} {:>6} {:>9}\n", f.k(), f.f(), f.b(), f.j(), checked));
    }
    let counts: Vec<String> = census.counts().iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("f = {}\n", counts.join(",")));
    for f in census.families().iter().filter(|f| !f.patterns().is_empty()) {
        out.push_str(&format!("\npatterns for k = {}\n", f.k()));
        for p in f.patterns() {
            let [a, b, c, d, e] = p.pattern;
            out.push_str(&format!("  ({a},{b},{c},{d},{e}) -> {}\n", p.members));
        }
    }
    emit(&out)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
enum LineReport {
    Colorable {
        line: usize,
        graph: String,
        k: usize,
        coloring: Vec<usize>,
        verified: bool,
    },
    NotColorable {
        line: usize,
        graph: String,
        k: usize,
        witness: Vec<usize>,
        member: String,
        mapping: Vec<usize>,
        verified: bool,
    },
    Rejected {
        line: usize,
        graph: String,
        reason: String,
    },
}

fn cmd_certify(common: &Common, input: &PathBuf) -> critgraph::Result<u8> {
    let k = common.k();
    let text = fs::read_to_string(input)?;
    let mut level: Option<Census> = None;
    let mut status = 0u8;
    let mut reports = Vec::new();
    let mut out = String::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let raw = line.trim();
        if raw.is_empty() || raw == graph6::HEADER {
            continue;
        }
        let mut reject = |reason: String| {
            if common.format == Format::Text {
                out.push_str(&format!("rejected\nline {line_no}\ngraph {raw}\nreason {reason}\nend\n"));
            }
            reports.push(LineReport::Rejected {
                line: line_no,
                graph: raw.to_string(),
                reason,
            });
        };
        let g = match graph6::parse(raw) {
            Ok(g) => g,
            Err(e) => {
                status = status.max(2);
                reject(e.to_string());
                continue;
            }
        };
        let cert = match decide(&g, k) {
            Ok(Outcome::Colorable(c)) => Certificate::Colorable(c),
            Ok(Outcome::Critical(witness)) => {
                if level.is_none() {
                    level = Some(common.census(k + 1, common.policy())?);
                }
                let family = level.as_ref().expect("loaded above").level(k + 1);
                match attach_member(&g, k, witness, family) {
                    Ok(c) => c,
                    Err(e) => {
                        status = status.max(status_of(&e));
                        reject(e.to_string());
                        continue;
                    }
                }
            }
            Err(e) => {
                status = status.max(status_of(&e));
                reject(e.to_string());
                continue;
            }
        };
        let verified = match (&cert, &level) {
            (Certificate::Colorable(c), _) => verify_coloring(&g, k, c),
            (_, Some(census)) => verify_certificate(&g, k, &cert, census.level(k + 1)),
            (_, None) => false,
        };
        if !verified {
            status = status.max(1);
        }
        let record = CertificateRecord {
            graph: g,
            k,
            certificate: cert.clone(),
        };
        if common.format == Format::Text {
            out.push_str(&record.to_string());
        }
        reports.push(match cert {
            Certificate::Colorable(c) => LineReport::Colorable {
                line: line_no,
                graph: raw.to_string(),
                k,
                coloring: c.colors().to_vec(),
                verified,
            },
            Certificate::NotColorable {
                witness,
                member,
                mapping,
            } => LineReport::NotColorable {
                line: line_no,
                graph: raw.to_string(),
                k,
                witness: witness.to_vec(),
                member: member.to_string(),
                mapping,
                verified,
            },
        });
    }

    if common.format == Format::Json {
        emit(&(serde_json::to_string_pretty(&reports)? + "\n"))?;
    } else {
        emit(&out)?;
    }
    Ok(status)
}

fn cmd_verify_lemmas(common: &Common) -> critgraph::Result<u8> {
    let census = common.census(common.k(), common.policy())?;
    let report = run_suite(census.families());
    if common.format == Format::Json {
        emit(&(serde_json::to_string_pretty(&report)? + "\n"))?;
    } else {
        emit(&report.to_string())?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}
