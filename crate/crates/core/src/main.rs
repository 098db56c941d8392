use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heckemod::arith::parse_rational;
use heckemod::builders::{build_a1, build_a1_wgraph, build_dihedral_regular};
use heckemod::compare::{
    find_iso, invariant_report, run_theorem, side_invariants, IsoOutcome, Structure, TheoremOutcome,
};
use heckemod::coxeter::{CoxeterMatrix, LinearChar};
use heckemod::io::{
    compare_report, emit_document, emit_report, emit_search, iso_report, parse_coxeter_header, parse_document,
    side_report, theorem_outcome_text, Document, Format, Report,
};
use heckemod::search::search_valid_digraphs;
use heckemod::wdigraph::{
    ind_mult_combinatorial, restrict_digraph, sgn_mult_combinatorial, validate_digraph, EdgeKind,
};
use heckemod::wgraph::{restrict_wgraph, validate_wgraph, wgraph_counts};
use heckemod::{compare, selftest, Error};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "heckemod", version, about = "Exact Hecke algebra modules of W-digraphs and W-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharArg {
    Ind,
    Sgn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Comb,
    Linalg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check structure and the Hecke relations.
    Validate { file: PathBuf },
    /// Invariants of one structure.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// ind/sgn multiplicity.
    Eigen {
        file: PathBuf,
        #[arg(long = "char", value_enum)]
        chi: CharArg,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Parabolic restriction to the listed generators.
    Restrict {
        file: PathBuf,
        #[arg(long, default_value = "")]
        labels: String,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Invariant comparison; exits 1 on a definite mismatch.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "char-length", default_value_t = compare::DEFAULT_TRACE_LENGTH)]
        char_length: usize,
    },
    /// Search for an isomorphism certificate.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        tries: usize,
    },
    /// Certify an isomorphism and check the acyclicity conclusions.
    Theorem {
        digraph: PathBuf,
        wgraph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        tries: usize,
    },
    /// a1-solid | a1-dashed | dihedral:M | a1-wgraph:MU
    Build {
        target: String,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Enumerate valid digraphs over the Coxeter header of FILE (default S = {s}).
    Search {
        #[arg(long = "max-vertices")]
        max_vertices: usize,
        file: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// An error that maps to an exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_INPUT, e.to_string())
    }
}

type Outcome = std::result::Result<u8, Fail>;

fn read(path: &Path) -> std::result::Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Document, Fail> {
    parse_document(&read(path)?).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> std::result::Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn violations(d: &Document) -> Vec<String> {
    match d {
        Document::Digraph(g) => validate_digraph(g).iter().map(ToString::to_string).collect(),
        Document::WGraph(p) => validate_wgraph(p).iter().map(ToString::to_string).collect(),
    }
}

fn structure(d: Document) -> Structure {
    match d {
        Document::Digraph(g) => g.into(),
        Document::WGraph(p) => p.into(),
    }
}

/// Loads a file and insists it is a valid structure.
fn load_valid(path: &Path) -> std::result::Result<Structure, Fail> {
    let d = load(path)?;
    let v = violations(&d);
    if let Some(first) = v.first() {
        return Err(Fail(EXIT_INPUT, format!("{}: not valid: {first}", path.display())));
    }
    Ok(structure(d))
}

fn validate(file: &Path) -> Outcome {
    let d = load(file)?;
    let v = violations(&d);
    let mut r = Report::new("validate");
    r.field("valid", v.is_empty());
    r.violations = v;
    print!("{}", emit_report(&r, Format::Text));
    Ok(if r.violations.is_empty() { EXIT_OK } else { EXIT_FAIL })
}

fn report(file: &Path, json: bool) -> Outcome {
    let d = load(file)?;
    let v = violations(&d);
    let s = structure(d);
    let format = if json { Format::Json } else { Format::Text };
    let mut r = match side_invariants(&s, compare::DEFAULT_TRACE_LENGTH) {
        Ok(inv) => side_report(s.cm(), &inv),
        // structurally broken digraphs have no module to report on
        Err(_) if !v.is_empty() => Report::new(s.kind()),
        Err(e) => return Err(e.into()),
    };
    r.violations = v;
    print!("{}", emit_report(&r, format));
    Ok(if r.violations.is_empty() { EXIT_OK } else { EXIT_FAIL })
}

fn eigen(file: &Path, chi: CharArg, method: Method) -> Outcome {
    let s = load_valid(file)?;
    let cm = s.cm();
    let linalg = if method != Method::Comb {
        let lc = match chi {
            CharArg::Ind => LinearChar::ind(cm.rank()),
            CharArg::Sgn => LinearChar::sgn(cm.rank()),
        };
        Some(s.representation()?.eigenspace_dim(&lc)?)
    } else {
        None
    };
    let comb = if method != Method::Linalg {
        let value = match (&s, chi) {
            (Structure::Digraph(g), CharArg::Ind) => Some(ind_mult_combinatorial(g)),
            (Structure::Digraph(g), CharArg::Sgn) => Some(sgn_mult_combinatorial(g)),
            (Structure::WGraph(p), CharArg::Sgn) => cm.all_finite().then(|| wgraph_counts(p).get(cm.full_set())),
            (Structure::WGraph(_), CharArg::Ind) => None,
        };
        match value {
            Some(v) => Some(v),
            None => return Err(Fail(EXIT_INPUT, "no combinatorial count for this character and structure".into())),
        }
    } else {
        None
    };
    let mut r = Report::new("eigen");
    r.field(
        "char",
        match chi {
            CharArg::Ind => "ind",
            CharArg::Sgn => "sgn",
        },
    );
    if let Some(x) = linalg {
        r.field("linalg", x);
    }
    if let Some(x) = comb {
        r.field("comb", x);
    }
    if let (Some(x), Some(y)) = (linalg, comb) {
        if x != y {
            r.violations.push(format!("linalg {x} != comb {y}"));
        }
    }
    print!("{}", emit_report(&r, Format::Text));
    Ok(if r.violations.is_empty() { EXIT_OK } else { EXIT_FAIL })
}

fn restrict(file: &Path, labels: &str, out: Option<&Path>) -> Outcome {
    let d = load(file)?;
    let cm: &CoxeterMatrix = match &d {
        Document::Digraph(g) => &g.cm,
        Document::WGraph(p) => &p.cm,
    };
    let j = cm.subset(labels.split(',').map(str::trim).filter(|x| !x.is_empty()))?;
    let r = match &d {
        Document::Digraph(g) => Document::Digraph(restrict_digraph(g, j)?),
        Document::WGraph(p) => Document::WGraph(restrict_wgraph(p, j)?),
    };
    write_out(out, &emit_document(&r))?;
    Ok(EXIT_OK)
}

fn compare_cmd(a: &Path, b: &Path, len: usize) -> Outcome {
    let (sa, sb) = (load_valid(a)?, load_valid(b)?);
    let rep = invariant_report(&sa, &sb, len)?;
    print!("{}", emit_report(&compare_report(&rep), Format::Text));
    Ok(if rep.agrees() { EXIT_OK } else { EXIT_FAIL })
}

fn iso(a: &Path, b: &Path, seed: u64, tries: usize) -> Outcome {
    let (sa, sb) = (load_valid(a)?, load_valid(b)?);
    let o = find_iso(&sa, &sb, seed, tries)?;
    print!("{}", iso_report(&o));
    Ok(match o {
        IsoOutcome::Certificate(_) => EXIT_OK,
        IsoOutcome::NotIsomorphic(_) => EXIT_FAIL,
        IsoOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    })
}

fn theorem(dg: &Path, wg: &Path, seed: u64, tries: usize) -> Outcome {
    let Structure::Digraph(g) = load_valid(dg)? else {
        return Err(Fail(EXIT_INPUT, format!("{}: expected a wdigraph", dg.display())));
    };
    let Structure::WGraph(p) = load_valid(wg)? else {
        return Err(Fail(EXIT_INPUT, format!("{}: expected a wgraph", wg.display())));
    };
    let o = run_theorem(&g, &p, seed, tries)?;
    print!("{}", theorem_outcome_text(&o));
    Ok(match o {
        TheoremOutcome::Checked { report, .. } if report.passed() => EXIT_OK,
        TheoremOutcome::Checked { .. } => EXIT_FAIL,
        TheoremOutcome::Rejected(_) | TheoremOutcome::NoCertificate(_) => EXIT_INCONCLUSIVE,
    })
}

fn build(target: &str, out: Option<&Path>) -> Outcome {
    let bad = || Fail(EXIT_INPUT, format!("unknown build target `{target}`"));
    let doc = match target.split_once(':') {
        None if target == "a1-solid" => Document::Digraph(build_a1(EdgeKind::Solid)),
        None if target == "a1-dashed" => Document::Digraph(build_a1(EdgeKind::Dashed)),
        Some(("dihedral", m)) => Document::Digraph(build_dihedral_regular(m.parse().map_err(|_| bad())?)?),
        Some(("a1-wgraph", mu)) => Document::WGraph(build_a1_wgraph(parse_rational(mu).ok_or_else(bad)?)),
        _ => return Err(bad()),
    };
    write_out(out, &emit_document(&doc))?;
    Ok(EXIT_OK)
}

fn search(max_vertices: usize, file: Option<&Path>) -> Outcome {
    let cm = match file {
        Some(f) => parse_coxeter_header(&read(f)?).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", f.display())))?,
        None => CoxeterMatrix::a1(),
    };
    let found = search_valid_digraphs(&cm, max_vertices)?;
    print!("{}", emit_search(&cm, &found));
    Ok(EXIT_OK)
}

fn run_selftest() -> Outcome {
    let results = selftest::run_all();
    for r in &results {
        println!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Report { file, json } => report(file, *json),
        Command::Eigen { file, chi, method } => eigen(file, *chi, *method),
        Command::Restrict { file, labels, out } => restrict(file, labels, out.as_deref()),
        Command::Compare { a, b, char_length } => compare_cmd(a, b, *char_length),
        Command::Iso { a, b, seed, tries } => iso(a, b, *seed, *tries),
        Command::Theorem { digraph, wgraph, seed, tries } => theorem(digraph, wgraph, *seed, *tries),
        Command::Build { target, out } => build(target, out.as_deref()),
        Command::Search { max_vertices, file } => search(*max_vertices, file.as_deref()),
        Command::Selftest => run_selftest(),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
