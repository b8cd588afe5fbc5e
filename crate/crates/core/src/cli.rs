//! The `msym` command line.
//!
//! Exit codes: `0` on success, `1` when a verification finds a violation,
//! `2` on usage errors (bad arguments, malformed encodings, size cap).

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bileveled::BiLeveledTree;
use crate::element::{format_bulk, parse_bulk, Element};
use crate::error::{Error, Result};
use crate::hopf::{self, Basis, Graded};
use crate::hopf_modules as hm;
use crate::linear::{Family, Flavor, Key, LinComb};
use crate::orders;
use crate::perm::Permutation;
use crate::projections as pj;
use crate::series::{self, Which};
use crate::trees::PlanarTree;
use crate::verify;

/// Default hard cap on sizes of exhaustively handled families.
pub const DEFAULT_MAX_N: usize = 8;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "MSYM_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "msym",
    version,
    about = "Permutations, bi-leveled trees and planar binary trees: orders, maps and Hopf structures"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "S")]
    S,
    #[value(name = "M")]
    M,
    #[value(name = "Y")]
    Y,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::S => Family::S,
            FamilyArg::M => Family::M,
            FamilyArg::Y => Family::Y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::F => Flavor::F,
            FlavorArg::M => Flavor::M,
        }
    }
}

/// Distinguished subsets that `enumerate` can filter to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subset {
    All,
    /// Indecomposable bi-leveled trees.
    #[value(name = "B")]
    B,
    /// Coinvariant indices of ℳSym.
    #[value(name = "B'")]
    BPrime,
    /// Coinvariant indices of 𝔖Sym.
    #[value(name = "S")]
    S,
    /// The subset of `S` with an even run of section components.
    #[value(name = "S'")]
    SPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Tau,
    Beta,
    Phi,
    Iota,
    Min,
    Max,
    /// The β-fiber of a bi-leveled tree.
    Fiber,
    /// The τ-fiber of a tree.
    TauFiber,
    /// `c = b ⫶ t` with `b ∈ ℬ′`.
    Decompose,
    /// `u = κ(b, v)`.
    KappaInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpName {
    Mul,
    Comul,
    Rho,
    /// Restricted coaction on ℳSym₊.
    RhoPlus,
    /// Action of 𝒴Sym on ℳSym₊.
    ActPlus,
    /// The `⫶` action of 𝒴Sym on ℳSym.
    Act,
    /// The 𝔖Sym coaction on ℳSym through ι.
    SsymCoaction,
    /// Rewrite in the other basis.
    Convert,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the elements of one degree.
    Enumerate {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Print only the number of elements.
        #[arg(long)]
        count: bool,
        /// Restrict to a distinguished subset.
        #[arg(long, value_enum, default_value = "all")]
        subset: Subset,
        /// Prefix each line with its family (`family:encoding`).
        #[arg(long)]
        bulk: bool,
    },
    /// Apply a set map to an element, or to every line of stdin with `-`.
    Map {
        #[arg(value_enum)]
        name: MapName,
        element: String,
    },
    /// Möbius function of the weak, multiplihedral or Tamari order.
    Mobius {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        x: String,
        y: String,
    },
    /// Products, coproducts, coactions and basis changes.
    Op {
        #[arg(value_enum)]
        name: OpName,
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long, value_enum, ignore_case = true, default_value = "F")]
        basis: FlavorArg,
        #[arg(required = true, num_args = 1..=2)]
        elements: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, visible_alias = "max-degree")]
        n: usize,
    },
    /// Enumerating series and the quotient sign report.
    Series {
        #[arg(long, conflicts_with = "quotients")]
        which: Option<String>,
        #[arg(long)]
        quotients: bool,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Hasse diagram in DOT.
    Hasse {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Write `<family>_<n>.dot` into this directory instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// The configured size cap.
pub fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = max_n();
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    Ok(())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line with `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, stdin, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verification(text)) => {
            let _ = out.write_all(text.as_bytes());
            1
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, err: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate {
            family,
            n,
            count,
            subset,
            bulk,
        } => enumerate((*family).into(), *n, *count, *subset, *bulk, json),
        Command::Map { name, element } => {
            let inputs = if element == "-" {
                let mut text = String::new();
                stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                parse_bulk(&text)?
            } else {
                vec![Element::parse_expecting(map_domain(*name), element)?]
            };
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for e in &inputs {
                if e.family() != map_domain(*name) {
                    return Err(Failure::Usage(format!("{e} is not in the domain of {name:?}")));
                }
                check_cap(e.degree())?;
                let (text, value) = apply_map(*name, e)?;
                lines.push(text);
                values.push(value);
            }
            Ok(if json {
                format!("{}\n", Value::Array(values))
            } else {
                lines.iter().map(|l| format!("{l}\n")).collect()
            })
        }
        Command::Mobius { family, x, y } => {
            let fam: Family = (*family).into();
            let a = Element::parse_expecting(fam, x)?;
            let b = Element::parse_expecting(fam, y)?;
            check_cap(a.degree())?;
            let mu = orders::mobius(fam, strip(x), strip(y))?;
            Ok(if json {
                format!(
                    "{}\n",
                    json!({ "family": fam.to_string(), "x": a.to_string(), "y": b.to_string(), "mobius": mu })
                )
            } else {
                format!("{mu}\n")
            })
        }
        Command::Op {
            name,
            family,
            basis,
            elements,
        } => op(*name, (*family).into(), (*basis).into(), elements, json),
        Command::Verify { suite, n } => {
            check_cap(*n)?;
            let names: Vec<&str> = if suite == "all" {
                verify::SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            for name in names {
                let _ = writeln!(err, "running {name} at n = {n} ...");
                reports.push(verify::run_suite(name, *n)?);
            }
            let ok = reports.iter().all(verify::Report::is_ok);
            let text = if json {
                let arr: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "suite": r.suite, "ok": r.is_ok(), "checks": r.checks,
                            "failed": r.failed, "failures": r.failures,
                        })
                    })
                    .collect();
                format!("{}\n", Value::Array(arr))
            } else {
                reports.iter().map(|r| format!("{r}\n")).collect()
            };
            if ok {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Series {
            which,
            quotients,
            order,
        } => {
            if *quotients {
                let report = series::quotient_sign_report(*order)?;
                let text = if json {
                    format!("{}\n", report.to_json())
                } else {
                    report.to_string()
                };
                return if report.is_ok() {
                    Ok(text)
                } else {
                    Err(Failure::Verification(text))
                };
            }
            let which: Which = which
                .as_deref()
                .ok_or_else(|| Failure::Usage("pass --which or --quotients".into()))?
                .parse()?;
            let s = series::series(which, *order);
            Ok(if json {
                format!(
                    "{}\n",
                    json!({ "series": which.to_string(), "order": order, "coefficients": s.to_json() })
                )
            } else {
                let parts: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
                format!("{}\n", parts.join(", "))
            })
        }
        Command::Hasse { family, n, out } => {
            check_cap(*n)?;
            let fam: Family = (*family).into();
            let name = format!("{fam}_{n}");
            let dot = match fam {
                Family::S => orders::weak_order(*n).to_dot(&name),
                Family::M => orders::multiplihedron_order(*n).to_dot(&name),
                Family::Y => orders::tamari_order(*n).to_dot(&name),
            };
            match out {
                None => Ok(dot),
                Some(dir) => {
                    let path = dir.join(format!("{name}.dot"));
                    std::fs::write(&path, dot)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(format!("{}\n", path.display()))
                }
            }
        }
    }
}

fn strip(text: &str) -> &str {
    match text.trim().split_once(':') {
        Some(("S" | "M" | "Y", rest)) => rest,
        _ => text,
    }
}

fn enumerate(family: Family, n: usize, count: bool, subset: Subset, bulk: bool, json: bool) -> Outcome {
    check_cap(n)?;
    let elements: Vec<Element> = match (family, subset) {
        (Family::S, Subset::All) => Permutation::enumerate(n).into_iter().map(Element::S).collect(),
        (Family::S, Subset::S) => hm::s_set(n).into_iter().map(Element::S).collect(),
        (Family::S, Subset::SPrime) => hm::s_prime_set(n).into_iter().map(Element::S).collect(),
        (Family::M, Subset::All) => BiLeveledTree::enumerate(n).into_iter().map(Element::M).collect(),
        (Family::M, Subset::B) => hm::b_set(n).into_iter().map(Element::M).collect(),
        (Family::M, Subset::BPrime) => hm::b_prime_set(n).into_iter().map(Element::M).collect(),
        (Family::Y, Subset::All) => PlanarTree::enumerate(n).into_iter().map(Element::Y).collect(),
        (f, s) => {
            return Err(Failure::Usage(format!(
                "subset {s:?} does not apply to family {f}"
            )))
        }
    };
    if count {
        return Ok(if json {
            format!(
                "{}\n",
                json!({ "family": family.to_string(), "n": n, "count": elements.len() })
            )
        } else {
            format!("{}\n", elements.len())
        });
    }
    Ok(if json {
        let arr: Vec<Value> = elements.iter().map(|e| Value::String(bare(e))).collect();
        format!("{}\n", Value::Array(arr))
    } else if bulk {
        format_bulk(&elements)
    } else {
        elements.iter().map(|e| format!("{}\n", bare(e))).collect()
    })
}

fn bare(e: &Element) -> String {
    match e {
        Element::S(w) => w.to_string(),
        Element::M(b) => b.to_string(),
        Element::Y(t) => t.to_string(),
    }
}

fn map_domain(name: MapName) -> Family {
    match name {
        MapName::Tau | MapName::Beta | MapName::KappaInverse => Family::S,
        MapName::Phi | MapName::Iota | MapName::Fiber | MapName::Decompose => Family::M,
        MapName::Min | MapName::Max | MapName::TauFiber => Family::Y,
    }
}

fn apply_map(name: MapName, e: &Element) -> Result<(String, Value)> {
    let one = |s: String| (s.clone(), Value::String(s));
    let many = |items: Vec<String>| (items.join(" "), json!(items));
    Ok(match (name, e) {
        (MapName::Tau, Element::S(w)) => one(pj::tau(w).to_string()),
        (MapName::Beta, Element::S(w)) => one(pj::beta(w).to_string()),
        (MapName::KappaInverse, Element::S(u)) => {
            let (b, v) = hm::kappa_inverse(u)?;
            many(vec![b.to_string(), v.to_string()])
        }
        (MapName::Phi, Element::M(b)) => one(pj::phi(b).to_string()),
        (MapName::Iota, Element::M(b)) => one(pj::iota(b).to_string()),
        (MapName::Fiber, Element::M(b)) => {
            check_cap(b.nodes())?;
            many(pj::beta_fiber(b).iter().map(ToString::to_string).collect())
        }
        (MapName::Decompose, Element::M(c)) => {
            let (b, t) = hm::bbslash_decompose(c);
            many(vec![b.to_string(), t.to_string()])
        }
        (MapName::Min, Element::Y(t)) => one(pj::min_perm(t).to_string()),
        (MapName::Max, Element::Y(t)) => one(pj::max_perm(t).to_string()),
        (MapName::TauFiber, Element::Y(t)) => {
            many(pj::tau_fiber(t).iter().map(ToString::to_string).collect())
        }
        _ => return Err(Error::Unsupported(format!("{name:?} on {e}"))),
    })
}

fn render<K: Key>(x: &LinComb<K>, json: bool) -> String {
    if json {
        format!("{}\n", x.to_json())
    } else {
        format!("{x}\n")
    }
}

fn parse_as<E: std::str::FromStr<Err = Error>>(family: Family, text: &str) -> Result<E> {
    match text.trim().split_once(':') {
        Some((head, rest)) if ["S", "M", "Y"].contains(&head) => {
            if head != family.to_string() {
                return Err(crate::error::parse_err(
                    0,
                    format!("expected a {family} element, found {head}"),
                ));
            }
            rest.parse()
        }
        _ => text.parse(),
    }
}

fn basis_of<E: Graded + Basis + std::str::FromStr<Err = Error>>(
    family: Family,
    flavor: Flavor,
    text: &str,
) -> Result<LinComb<E>> {
    let e: E = parse_as(family, text)?;
    check_cap(e.degree())?;
    Ok(LinComb::basis(flavor, e))
}

fn second(elements: &[String], what: &str) -> Result<String> {
    elements
        .get(1)
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("{what} needs two elements")))
}

fn only_one(elements: &[String], what: &str) -> Result<()> {
    if elements.len() != 1 {
        return Err(Error::Unsupported(format!("{what} takes one element")));
    }
    Ok(())
}

fn convert<K: Basis>(x: &LinComb<K>) -> Result<LinComb<K>> {
    match x.flavor() {
        Flavor::F => hopf::to_m(x),
        Flavor::M => hopf::to_f(x),
    }
}

fn op(name: OpName, family: Family, flavor: Flavor, elements: &[String], json: bool) -> Outcome {
    let first = &elements[0];
    let text = match (name, family) {
        (OpName::Mul, Family::S) => {
            let (a, b) = (
                basis_of::<Permutation>(family, flavor, first)?,
                basis_of(family, flavor, &second(elements, "mul")?)?,
            );
            check_cap(a.keys().chain(b.keys()).map(Key::degree).sum())?;
            render(&hopf::mul(&a, &b)?, json)
        }
        (OpName::Mul, Family::Y) => {
            let (a, b) = (
                basis_of::<PlanarTree>(family, flavor, first)?,
                basis_of(family, flavor, &second(elements, "mul")?)?,
            );
            check_cap(a.keys().chain(b.keys()).map(Key::degree).sum())?;
            render(&hopf::mul(&a, &b)?, json)
        }
        (OpName::Mul, Family::M) => {
            let (a, b) = (
                basis_of::<BiLeveledTree>(family, flavor, first)?,
                basis_of(family, flavor, &second(elements, "mul")?)?,
            );
            check_cap(a.keys().chain(b.keys()).map(Key::degree).sum())?;
            render(&hopf::mul(&a, &b)?, json)
        }
        (OpName::Comul, Family::S) => {
            only_one(elements, "comul")?;
            render(
                &hopf::comul(&basis_of::<Permutation>(family, flavor, first)?),
                json,
            )
        }
        (OpName::Comul, Family::Y) => {
            only_one(elements, "comul")?;
            render(
                &hopf::comul(&basis_of::<PlanarTree>(family, flavor, first)?),
                json,
            )
        }
        (OpName::Comul, Family::M) => {
            return Err(Failure::Usage(
                "ℳSym has no coproduct; use rho or rho-plus".into(),
            ))
        }
        (OpName::Rho, Family::M) => {
            only_one(elements, "rho")?;
            render(&hopf::rho(&basis_of(family, flavor, first)?), json)
        }
        (OpName::RhoPlus, Family::M) => {
            only_one(elements, "rho-plus")?;
            render(&hm::plus_rho(&basis_of(family, flavor, first)?)?, json)
        }
        (OpName::SsymCoaction, Family::M) => {
            only_one(elements, "ssym-coaction")?;
            render(&hopf::ssym_coaction(&basis_of(family, flavor, first)?), json)
        }
        (OpName::ActPlus | OpName::Act, Family::M) => {
            let a = basis_of::<BiLeveledTree>(family, flavor, first)?;
            let h = basis_of::<PlanarTree>(Family::Y, flavor, &second(elements, "act")?)?;
            check_cap(a.keys().map(Key::degree).chain(h.keys().map(Key::degree)).sum())?;
            let result = if name == OpName::ActPlus {
                hm::plus_mul(&a, &h)?
            } else {
                hm::bb_mul(&a, &h)?
            };
            render(&result, json)
        }
        (OpName::Convert, Family::S) => {
            only_one(elements, "convert")?;
            render(&convert(&basis_of::<Permutation>(family, flavor, first)?)?, json)
        }
        (OpName::Convert, Family::Y) => {
            only_one(elements, "convert")?;
            render(&convert(&basis_of::<PlanarTree>(family, flavor, first)?)?, json)
        }
        (OpName::Convert, Family::M) => {
            only_one(elements, "convert")?;
            render(
                &convert(&basis_of::<BiLeveledTree>(family, flavor, first)?)?,
                json,
            )
        }
        (op, fam) => {
            return Err(Failure::Usage(format!(
                "{op:?} is only defined on family M, not {fam}"
            )))
        }
    };
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("msym").chain(args.iter().copied());
        let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(
            call(&["enumerate", "--family", "M", "--n", "4", "--count"]).1,
            "21\n"
        );
        assert_eq!(
            call(&[
                "enumerate",
                "--family",
                "M",
                "--n",
                "4",
                "--subset",
                "B",
                "--count"
            ])
            .1,
            "11\n"
        );
    }

    #[test]
    fn map_tau() {
        assert_eq!(call(&["map", "tau", "3421"]).1, "((..)(.(..)))\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["map", "tau", "3x21"]).0, 2);
        assert_eq!(call(&["enumerate", "--family", "S", "--n", "40"]).0, 2);
        assert_eq!(call(&["op", "comul", "--family", "M", "(..);{1}"]).0, 2);
    }
}
