//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad input, 2 enumeration cap exceeded,
//! 3 internal consistency failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::finite::parse_algebra;
use crate::report::{classify_algebra, classify_polynomial, ClassificationReport, Status};

#[derive(Parser, Debug)]
#[command(name = "l2lab", version, about = "Intermediate rings of number fields and finite algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor the defining polynomial over L and list the principal subfields.
    Subfields {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether the extension has no proper intermediate ring.
    Minimal {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Longest chain of intermediate rings.
    Length {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full report with the case label.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The lattice of intermediate rings.
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Polynomial in X over Q, e.g. "X^4 - 2".
    #[arg(allow_hyphen_values = true)]
    poly: Option<String>,
    /// JSON presentation of a finite algebra and its subring R.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum View {
    Subfields,
    Minimal,
    Length,
    Classify,
    Lattice,
}

fn build(input: &Input) -> Result<ClassificationReport> {
    match (&input.poly, &input.algebra) {
        (Some(p), _) => classify_polynomial(p),
        (None, Some(path)) => {
            let doc = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
            let pres = parse_algebra(&doc)?;
            classify_algebra(&path.display().to_string(), &pres)
        }
        (None, None) => Err(Error::Invalid("a polynomial or --algebra is required".into())),
    }
}

fn render(report: &ClassificationReport, view: View, format: Format) -> Result<String> {
    match format {
        Format::Json => return Ok(report.to_json() + "\n"),
        Format::Dot if view == View::Lattice => return Ok(report.to_dot()),
        Format::Dot => return Err(Error::Invalid("--format dot is only available for lattice".into())),
        Format::Text => {}
    }
    let w = &report.witnesses;
    let text = match view {
        View::Classify => report.to_text(),
        View::Lattice => report.lattice_text(),
        View::Subfields => {
            let mut out = String::new();
            if let Some(f) = &w.defining_polynomial {
                out += &format!("defining polynomial: {f}\n");
            }
            for (i, f) in w.factors.iter().flatten().enumerate() {
                out += &format!("f{i} = {f}\n");
            }
            let es = w.principal_subfields.as_deref().unwrap_or_default();
            out += &format!("t = {}\n", es.len());
            for (i, e) in es.iter().enumerate() {
                out += &format!("E{} = {} [degree {}]\n", i + 1, e.description, e.degree);
            }
            out
        }
        View::Minimal => {
            let mut out = format!("minimal: {}\n", if report.minimal { "yes" } else { "no" });
            if let Some(t) = w.t {
                out += &format!("t = {t}\n");
            }
            if let Some(m) = &w.minimal_type {
                out += &format!("minimal type: {m}\n");
            }
            out += &format!("intermediate count: {}\n", report.observed_count);
            out
        }
        View::Length => format!(
            "length: {}\nlength two: {}\n",
            report.length,
            if report.length_two { "yes" } else { "no" }
        ),
    };
    Ok(text)
}

fn execute(cli: &Cli) -> Result<(ClassificationReport, String)> {
    let (report, view, format) = match &cli.command {
        Command::Subfields { poly, format } => (classify_polynomial(poly)?, View::Subfields, *format),
        Command::Minimal { input, format } => (build(input)?, View::Minimal, *format),
        Command::Length { input, format } => (build(input)?, View::Length, *format),
        Command::Classify { input, format } => (build(input)?, View::Classify, *format),
        Command::Lattice { input, format } => (build(input)?, View::Lattice, *format),
    };
    let text = render(&report, view, format)?;
    Ok((report, text))
}

/// Runs one invocation, writing the output in one piece at the end, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, text)) => {
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            if report.status == Status::Failed {
                let _ = writeln!(err, "error: consistency checks failed: {}", report.failed_checks().join("; "));
                return 3;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("l2lab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn length_of_pure_quartic() {
        let (code, out, _) = call(&["length", "X^4 - 2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "length: 2\nlength two: yes\n");
    }

    #[test]
    fn syntax_error_exits_one() {
        let (code, _, err) = call(&["classify", "X^^2"]);
        assert_eq!(code, 1);
        assert!(err.contains("syntax error"));
    }

    #[test]
    fn missing_input_exits_one() {
        assert_eq!(call(&["classify"]).0, 1);
        assert_eq!(call(&["classify", "X^2 - 2", "--algebra", "a.json"]).0, 1);
    }

    #[test]
    fn dot_needs_lattice() {
        assert_eq!(call(&["classify", "X^2 - 2", "--format", "dot"]).0, 1);
    }

    #[test]
    fn leading_minus_reaches_the_parser() {
        let (code, _, err) = call(&["minimal", "-X^3 + 3*X - 1"]);
        assert_eq!(code, 1);
        assert!(err.contains("monic"), "{err}");
        let (code, out, _) = call(&["minimal", "X^3 - 3*X + 1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("minimal: yes\nt = 1\n"));
    }
}
