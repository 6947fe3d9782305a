//! `newton-dm1`: words, Newton polygons, chains and verification campaigns
//! from the command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 precondition violated,
//! 3 internal invariant violated (including failed verification).

use std::ffi::OsString;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use newton_dm1::campaign::DEFAULT_SEED;
use newton_dm1::{
    c_value, chain_general, cycle_words, direct_sum_all, dual, enumerate_nps, fv_permutation,
    is_saturated, length_ell, minimal_word, minus, np_eval, run_campaign, verify_chain, Arrow,
    CampaignKind, Error, NewtonPolygon, Rational, Word,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "newton-dm1", version, about = "Minimal DM1 words and Newton polygons")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Graphviz output (word show only).
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for randomized campaign parts.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for campaigns; 0 picks one per core.
    #[arg(long, global = true, env = "NEWTON_DM1_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on 0/1 words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Operations on Newton polygons such as "(3,5)+(3,2)" or "4(1,1)".
    #[command(subcommand)]
    Np(NpCmd),
    /// A certified chain of minimal words from A_zeta up to A_xi.
    Chain {
        zeta: String,
        xi: String,
        /// Re-check the chain and fail with exit code 3 if it is invalid.
        #[arg(long)]
        verify: bool,
    },
    /// Run an exhaustive campaign: theorem, prop4, props123, dimension,
    /// axioms, order or algebra.
    Verify {
        campaign: String,
        #[arg(long)]
        hmax: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// The (F, V^-1) diagram.
    Show { word: String },
    /// Direct sum of two or more words.
    Sum {
        #[arg(required = true, num_args = 2..)]
        words: Vec<String>,
    },
    /// Exchange the first "01" for "10".
    Minus { word: String },
    /// Words of the cycles of the diagram.
    Cycles { word: String },
    /// Number of pairs i < j with a 0 at i and a 1 at j.
    Ell { word: String },
    /// Reverse and complement.
    Dual { word: String },
}

#[derive(Subcommand, Debug)]
enum NpCmd {
    /// Height of the polygon at x (an integer or a fraction p/q).
    Eval { np: String, x: String },
    /// c(zeta, xi) for zeta below xi.
    C { zeta: String, xi: String },
    /// Whether nothing lies strictly between zeta and xi.
    Saturated { zeta: String, xi: String },
    /// All polygons with endpoint (h, d).
    Enumerate { h: u32, d: u32 },
    /// The minimal word A_xi.
    Minword { np: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_parse() || matches!(e, Error::Bound(_)) {
            1
        } else if e.is_internal() {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure {
            code: 3,
            message: e.to_string(),
        }
    }
}

fn bad_argument(e: Error) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

fn word(s: &str) -> Result<Word, Failure> {
    s.parse::<Word>().map_err(bad_argument)
}

fn polygon(s: &str) -> Result<NewtonPolygon, Failure> {
    s.parse::<NewtonPolygon>().map_err(bad_argument)
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn show(out: &mut dyn Write, w: &Word, cli: &Cli) -> Result<(), Failure> {
    let perm = fv_permutation(w);
    let label = |j: usize| match perm.label[j] {
        Arrow::F => "F",
        Arrow::VInv => "V^-1",
    };
    let cycles = cycle_words(w);
    if cli.json {
        let arrows: Vec<_> = perm
            .succ
            .iter()
            .enumerate()
            .map(|(i, &j)| json!({"from": i + 1, "to": j + 1, "label": label(j)}))
            .collect();
        return emit_json(out, &json!({"word": w, "arrows": arrows, "cycles": cycles}));
    }
    if cli.dot {
        writeln!(out, "digraph \"{w}\" {{")?;
        for (i, b) in w.bits().iter().enumerate() {
            writeln!(out, "  p{} [label=\"{}: {b}\"];", i + 1, i + 1)?;
        }
        for (i, &j) in perm.succ.iter().enumerate() {
            writeln!(out, "  p{} -> p{} [label=\"{}\"];", i + 1, j + 1, label(j))?;
        }
        writeln!(out, "}}")?;
        return Ok(());
    }
    let width = w.len().to_string().len();
    let row = |f: &dyn Fn(usize) -> String| -> String {
        (0..w.len()).map(|i| format!("{:>width$}", f(i))).collect::<Vec<_>>().join(" ")
    };
    writeln!(out, "pos   {}", row(&|i| (i + 1).to_string()))?;
    writeln!(out, "word  {}", row(&|i| w.bits()[i].to_string()))?;
    for (i, &j) in perm.succ.iter().enumerate() {
        writeln!(out, "  {:>width$} -{}-> {}", i + 1, label(j), j + 1)?;
    }
    let names: Vec<String> = cycles.iter().map(Word::to_string).collect();
    writeln!(out, "cycles {}", names.join(" "))?;
    Ok(())
}

fn word_cmd(out: &mut dyn Write, cmd: &WordCmd, cli: &Cli) -> Result<(), Failure> {
    let value = match cmd {
        WordCmd::Show { word: w } => return show(out, &word(w)?, cli),
        WordCmd::Sum { words } => {
            let ws = words.iter().map(|s| word(s)).collect::<Result<Vec<_>, _>>()?;
            json!(direct_sum_all(&ws))
        }
        WordCmd::Minus { word: w } => json!(minus(&word(w)?)?),
        WordCmd::Cycles { word: w } => json!(cycle_words(&word(w)?)),
        WordCmd::Ell { word: w } => json!(length_ell(&word(w)?)),
        WordCmd::Dual { word: w } => json!(dual(&word(w)?)),
    };
    if cli.json {
        return emit_json(out, &value);
    }
    match value {
        serde_json::Value::Array(items) => {
            for item in items {
                writeln!(out, "{}", item.as_str().unwrap_or_default())?;
            }
        }
        serde_json::Value::String(s) => writeln!(out, "{s}")?,
        other => writeln!(out, "{other}")?,
    }
    Ok(())
}

fn np_cmd(out: &mut dyn Write, cmd: &NpCmd, cli: &Cli) -> Result<(), Failure> {
    let (text, value) = match cmd {
        NpCmd::Eval { np, x } => {
            let x: Rational = x
                .parse()
                .map_err(|_| Failure::from(Error::Parse(format!("bad rational {x:?}"))))?;
            let y = np_eval(&polygon(np)?, &x)?;
            (y.to_string(), json!(y.to_string()))
        }
        NpCmd::C { zeta, xi } => {
            let c = c_value(&polygon(zeta)?, &polygon(xi)?)?;
            (c.to_string(), json!(c))
        }
        NpCmd::Saturated { zeta, xi } => {
            let s = is_saturated(&polygon(zeta)?, &polygon(xi)?)?;
            (s.to_string(), json!(s))
        }
        NpCmd::Enumerate { h, d } => {
            if *d > *h {
                return Err(Error::OutOfDomain(format!("d = {d} > h = {h}")).into());
            }
            let all = enumerate_nps(*h, *d);
            let text = all.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
            (text, json!(all))
        }
        NpCmd::Minword { np } => {
            let w = minimal_word(&polygon(np)?);
            (w.to_string(), json!(w))
        }
    };
    if cli.json {
        emit_json(out, &value)
    } else {
        writeln!(out, "{text}")?;
        Ok(())
    }
}

fn chain_cmd(out: &mut dyn Write, zeta: &str, xi: &str, check: bool, cli: &Cli) -> Result<(), Failure> {
    let chain = chain_general(&polygon(zeta)?, &polygon(xi)?)?;
    if check {
        verify_chain(&chain).map_err(|d| Failure::from(Error::InvalidChain(d)))?;
    }
    if cli.json {
        return emit_json(out, &serde_json::to_value(&chain).expect("chains serialize"));
    }
    let method = serde_json::to_value(chain.method).expect("methods serialize");
    writeln!(out, "c = {}, method = {}", chain.c, method.as_str().unwrap_or_default())?;
    for w in &chain.words {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn verify_cmd(out: &mut dyn Write, campaign: &str, hmax: Option<u32>, cli: &Cli) -> Result<(), Failure> {
    let kind: CampaignKind = campaign.parse()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })?;
    let report = pool.install(|| run_campaign(kind, hmax.unwrap_or(kind.bound()), cli.seed))?;
    if cli.json {
        emit_json(out, &serde_json::to_value(&report).expect("reports serialize"))?;
    } else {
        writeln!(out, "{report}")?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: format!("{} counterexamples", report.counterexamples.len()),
        })
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Word(cmd) => word_cmd(out, cmd, cli),
        Command::Np(cmd) => np_cmd(out, cmd, cli),
        Command::Chain { zeta, xi, verify } => chain_cmd(out, zeta, xi, *verify, cli),
        Command::Verify { campaign, hmax } => verify_cmd(out, campaign, *hmax, cli),
    }
}

/// Runs one invocation and returns its exit code.
fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let argv = std::iter::once("newton-dm1").chain(args.iter().copied()).map(OsString::from);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn ok(args: &[&str]) -> String {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        out
    }

    #[test]
    fn word_commands() {
        assert_eq!(ok(&["word", "sum", "11100000", "11100"]), "1110011000100\n");
        assert_eq!(ok(&["word", "minus", "01"]), "10\n");
        assert_eq!(ok(&["word", "ell", "1100"]), "0\n");
        assert_eq!(ok(&["word", "dual", "1100"]), "1100\n");
        assert_eq!(ok(&["word", "dual", "110"]), "100\n");
        assert_eq!(ok(&["word", "cycles", "1111001000100"]), "11000\n11010100\n");
        assert_eq!(ok(&["word", "sum", "10", "10", "10"]), "111000\n");
    }

    #[test]
    fn word_show_formats() {
        let text = ok(&["word", "show", "01"]);
        assert!(text.contains("pos   1 2"));
        assert!(text.contains("word  0 1"));
        assert!(text.contains("1 -F-> 1"));
        assert!(text.contains("2 -V^-1-> 2"));
        let dot = ok(&["word", "show", "01", "--dot"]);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 2);
        let json: serde_json::Value = serde_json::from_str(&ok(&["--json", "word", "show", "10"])).unwrap();
        assert_eq!(json["arrows"].as_array().unwrap().len(), 2);
        assert_eq!(json["cycles"], json!(["10"]));
    }

    #[test]
    fn np_commands() {
        assert_eq!(ok(&["np", "minword", "(3,5)+(3,2)"]), "1110011000100\n");
        assert_eq!(ok(&["np", "c", "(2,3)+4(1,1)", "(3,5)+(3,2)"]), "5\n");
        assert_eq!(ok(&["np", "c", "(1,1)", "(0,1)+(1,0)"]), "1\n");
        assert_eq!(ok(&["np", "eval", "(1,1)", "1"]), "1/2\n");
        assert_eq!(ok(&["np", "eval", "(0,1)+(1,0)", "3/2"]), "1/2\n");
        assert_eq!(ok(&["np", "saturated", "(1,1)", "(0,1)+(1,0)"]), "true\n");
        assert_eq!(ok(&["np", "enumerate", "2", "1"]), "(0,1)+(1,0)\n(1,1)\n");
        let json: serde_json::Value = serde_json::from_str(&ok(&["np", "enumerate", "2", "1", "--json"])).unwrap();
        assert_eq!(json, json!([[[0, 1], [1, 0]], [[1, 1]]]));
    }

    #[test]
    fn chain_commands() {
        assert_eq!(ok(&["chain", "(1,1)", "(0,1)+(1,0)"]), "c = 1, method = constructive\n10\n01\n");
        let text = ok(&["chain", "(2,3)+4(1,1)", "(3,5)+(3,2)", "--json", "--verify"]);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["words"].as_array().unwrap().len(), 6);
        assert_eq!(v["steps"].as_array().unwrap().len(), 5);
        assert_eq!(v["method"], "constructive");
        // the schema round-trips byte for byte
        let chain: newton_dm1::Chain = serde_json::from_value(v.clone()).unwrap();
        let again = serde_json::to_string_pretty(&serde_json::to_value(&chain).unwrap()).unwrap();
        assert_eq!(again + "\n", text);
    }

    #[test]
    fn verify_commands() {
        let v: serde_json::Value =
            serde_json::from_str(&ok(&["verify", "theorem", "--hmax", "2", "--json"])).unwrap();
        assert_eq!(v["instances"], 1);
        assert_eq!(v["failed"], 0);
        assert_eq!(v["counterexamples"], json!([]));
        assert!(ok(&["verify", "prop4", "--hmax", "12"]).ends_with("pass\n"));
        let v: serde_json::Value =
            serde_json::from_str(&ok(&["verify", "axioms", "--hmax", "8", "--json", "--jobs", "2"])).unwrap();
        assert_eq!(v["per_case"]["len=08"], 256);
        for key in ["campaign", "h_max", "instances", "passed", "failed", "per_case", "counterexamples", "wall_time_ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn exit_codes() {
        // precondition: reversed arguments
        assert_eq!(call(&["chain", "(0,1)+(1,0)", "(1,1)"]).0, 2);
        assert_eq!(call(&["chain", "(3,5)+(3,2)", "(2,3)+4(1,1)"]).0, 2);
        assert_eq!(call(&["np", "c", "(1,1)", "(1,2)"]).0, 2);
        assert_eq!(call(&["word", "minus", "10"]).0, 2);
        // parse and usage
        assert_eq!(call(&["word", "ell", "012"]).0, 1);
        assert_eq!(call(&["np", "minword", "(2,4)"]).0, 1);
        assert_eq!(call(&["np", "minword", "(2,"]).0, 1);
        assert_eq!(call(&["np", "eval", "(1,1)", "x"]).0, 1);
        assert_eq!(call(&["verify", "axioms", "--hmax", "11"]).0, 1);
        assert_eq!(call(&["verify", "nonsense"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&[]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
