use std::env;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vtamari::exactalg::{charpoly, closed_charpoly, IntMatrix};
use vtamari::grothendieck::{product, theta_matrix, Basis, K0Vector, Product};
use vtamari::operad::q_element;
use vtamari::symfun::{b_function, ch_v, ch_w, legendre_transform};
use vtamari::tamari::{PosetCache, TamariPoset, MAX_N};
use vtamari::trees::BinaryTree;
use vtamari::verify::{run_verify, Suite, VerifyOptions, DEFAULT_SEED};
use vtamari::Error;

const CACHE_ENV: &str = "VTAMARI_CACHE_DIR";
/// Largest poset for which full incidence matrices are printed.
const MAX_MATRIX_N: usize = 7;
const MAX_DEGREE: usize = 30;

#[derive(Parser)]
#[command(name = "vtamari", version, about = "Exact computations on Tamari lattices and the operad V")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Star,
    Over,
    Under,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Chv,
    Chw,
    Legendre,
}

#[derive(Subcommand)]
enum Command {
    /// List the binary trees with n internal vertices in rank order.
    Trees {
        #[arg(long)]
        n: usize,
    },
    /// Summarize the Tamari lattice Y_n, or print its covers, order or Möbius matrix.
    #[command(group(ArgGroup::new("view").args(["covers", "leq", "mobius"])))]
    Tamari {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        covers: bool,
        #[arg(long)]
        leq: bool,
        #[arg(long)]
        mobius: bool,
    },
    /// Product of two basis elements, expressed in the same basis.
    Product {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value = "S")]
        basis: String,
        x: String,
        y: String,
    },
    /// The Coxeter transformation θ on the Grothendieck group of Y_n.
    #[command(group(ArgGroup::new("view").args(["matrix", "charpoly", "closed"])))]
    Theta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        charpoly: bool,
        #[arg(long)]
        closed: bool,
    },
    /// The Q basis element of V indexed by a binary tree.
    Qbasis {
        #[arg(long)]
        tree: String,
    },
    /// Truncated characteristic series and the Legendre transform.
    Symfun {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        degree: usize,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Record wall-clock duration in the report.
        #[arg(long)]
        timing: bool,
    },
}

enum Output {
    Doc { json: Value, text: String },
    Report { json: Value, text: String, passed: bool },
}

fn cache_dir() -> PathBuf {
    if let Some(dir) = env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("vtamari");
    }
    let home = env::var_os("HOME").map(PathBuf::from).unwrap_or_else(env::temp_dir);
    home.join(".cache").join("vtamari")
}

fn bounded(n: usize, max: usize, what: &str) -> vtamari::Result<()> {
    if n > max {
        return Err(Error::ResourceLimit(format!("{what} is limited to {max}, got {n}")));
    }
    Ok(())
}

fn doc(json: Value, text: String) -> Output {
    Output::Doc { json, text }
}

fn matrix_doc(poset: &TamariPoset, m: &IntMatrix) -> Output {
    let elements: Vec<String> = poset.elements().iter().map(ToString::to_string).collect();
    let mut text = String::new();
    for (i, t) in elements.iter().enumerate() {
        text.push_str(&format!("{i:>4}  {t}\n"));
    }
    text.push('\n');
    text.push_str(&m.to_string());
    doc(json!({"n": poset.n(), "elements": elements, "matrix": m.to_json()}), text)
}

fn trees(n: usize) -> vtamari::Result<Output> {
    bounded(n, MAX_N, "tree size")?;
    let all: Vec<String> = BinaryTree::enumerate(n).iter().map(ToString::to_string).collect();
    let text = all.iter().enumerate().map(|(i, t)| format!("{i:>6}  {t}\n")).collect();
    Ok(doc(json!({"n": n, "count": all.len(), "trees": all}), text))
}

fn tamari(n: usize, covers: bool, leq: bool, mobius: bool) -> vtamari::Result<Output> {
    if leq || mobius {
        bounded(n, MAX_MATRIX_N, "matrix output")?;
    }
    let poset = PosetCache::new(cache_dir()).load_or_build(n)?;
    if leq {
        return Ok(matrix_doc(&poset, &poset.zeta()));
    }
    if mobius {
        return Ok(matrix_doc(&poset, &poset.mobius()));
    }
    if covers {
        let mut pairs = Vec::new();
        let mut text = String::new();
        for (hi, below) in poset.covers().iter().enumerate() {
            for &lo in below {
                let (l, h) = (poset.element(lo).to_string(), poset.element(hi).to_string());
                text.push_str(&format!("{l} < {h}\n"));
                pairs.push(json!([l, h]));
            }
        }
        return Ok(doc(json!({"n": n, "covers": pairs}), text));
    }
    let (min, max) = (poset.element(poset.minimum()).to_string(), poset.element(poset.maximum()).to_string());
    let text = format!(
        "n        {n}\nelements {}\ncovers   {}\nminimum  {min}\nmaximum  {max}\n",
        poset.len(),
        poset.edge_count()
    );
    Ok(doc(
        json!({"n": n, "elements": poset.len(), "covers": poset.edge_count(), "minimum": min, "maximum": max}),
        text,
    ))
}

fn product_cmd(op: Op, basis: &str, x: &str, y: &str) -> vtamari::Result<Output> {
    let basis: Basis = basis.parse()?;
    let (x, y): (BinaryTree, BinaryTree) = (x.parse()?, y.parse()?);
    bounded(x.size() + y.size(), MAX_N, "product grade")?;
    let op = match op {
        Op::Star => Product::Star,
        Op::Over => Product::Over,
        Op::Under => Product::Under,
    };
    let v = product(op, &K0Vector::basis_vector(&x, basis), &K0Vector::basis_vector(&y, basis))?.to_basis(basis)?;
    Ok(doc(v.to_json(), format!("{v}\n")))
}

fn theta(n: usize, charpoly_only: bool, closed: bool) -> vtamari::Result<Output> {
    if closed {
        let p = closed_charpoly(n)?;
        return Ok(doc(p.to_json(), format!("{p}\n")));
    }
    let m = theta_matrix(n)?;
    if charpoly_only {
        let p = charpoly(&m)?;
        return Ok(doc(p.to_json(), format!("{p}\n")));
    }
    Ok(doc(m.to_json(), m.to_string()))
}

fn qbasis(tree: &str) -> vtamari::Result<Output> {
    let x: BinaryTree = tree.parse()?;
    bounded(x.size(), MAX_N, "tree size")?;
    let q = q_element(&x);
    Ok(doc(q.to_json(), format!("{q}\n")))
}

fn symfun(which: Which, degree: usize) -> vtamari::Result<Output> {
    bounded(degree, MAX_DEGREE, "truncation degree")?;
    let f = match which {
        Which::Chv => ch_v(degree)?,
        Which::Chw => ch_w(degree)?,
        Which::Legendre => legendre_transform(&b_function(degree)?)?,
    };
    Ok(doc(f.to_json(), format!("{f}\n")))
}

fn verify(suite: &str, opts: VerifyOptions) -> vtamari::Result<Output> {
    let suite: Suite = suite.parse()?;
    let report = run_verify(suite, &opts)?;
    Ok(Output::Report { json: report.to_json(), text: report.to_text(), passed: report.passed() })
}

fn run(cli: Cli) -> vtamari::Result<Output> {
    match cli.command {
        Command::Trees { n } => trees(n),
        Command::Tamari { n, covers, leq, mobius } => tamari(n, covers, leq, mobius),
        Command::Product { op, basis, x, y } => product_cmd(op, &basis, &x, &y),
        Command::Theta { n, matrix: _, charpoly, closed } => theta(n, charpoly, closed),
        Command::Qbasis { tree } => qbasis(&tree),
        Command::Symfun { which, degree } => symfun(which, degree),
        Command::Verify { suite, max_n, degree, samples, seed, timing } => {
            verify(&suite, VerifyOptions { max_n, degree, samples, seed, timing })
        }
    }
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(json).expect("serializable")),
        Format::Text => print!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(Output::Doc { json, text }) => {
            emit(format, &json, &text);
            ExitCode::SUCCESS
        }
        Ok(Output::Report { json, text, passed }) => {
            emit(format, &json, &text);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
