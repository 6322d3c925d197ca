use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use so3p::group::{
    hensel_compare, parameterize_mod_p, rotation_group, solve_defining_system, Budget,
};
use so3p::io::{parse_matrix_json, write_dump};
use so3p::qubit::{generator_lift, run_checks, unitarize, PadicMat3, QubitRep};
use so3p::report::structural_report;
use so3p::{make_form, Error, FiniteMatrixGroup, Mat3, Modulus};

#[derive(Parser, Debug)]
#[command(
    name = "so3p",
    version,
    about = "Finite quotients of the p-adic rotation group SO(3)_p"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,

    /// Cap on enumerated group elements
    #[arg(long, default_value_t = Budget::default().max_elements, global = true)]
    budget_elems: usize,

    /// Cap on candidate visits in the defining-system solver
    #[arg(long, default_value_t = Budget::default().max_visits, global = true)]
    budget_visits: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closure,
    Solve,
    Parametrize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate G_{p^k} (closure) or Ĝ_{p^k} (solve, parametrize) and print its order
    Group {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Method::Closure)]
        method: Method,
        /// Write the elements as JSON lines to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural report for G_p: commutators, classes, characters, degree candidates
    Report {
        #[arg(short)]
        p: u64,
        /// Write the report to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Image of a matrix under a qubit representation
    Qubit {
        #[arg(short)]
        p: u64,
        #[arg(short = 'v', long = "variant", default_value_t = 1)]
        variant: u64,
        /// Named generator: C, Z, identity (odd p); (12), (23), identity (p = 2)
        #[arg(long = "gen", conflicts_with = "matrix")]
        generator: Option<String>,
        /// JSON file with a 3×3 integer matrix or per-entry coherent sequences ("-" for stdin)
        matrix: Option<PathBuf>,
        /// Report the image in the unitarized basis
        #[arg(long)]
        unitary: bool,
        /// Run the homomorphism, irreducibility, unitarity and kernel checks
        #[arg(long)]
        check: bool,
    },
    /// Compare the closure and solver enumerations at level k
    Hensel {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        k: u32,
    },
}

/// Errors carrying an exit code: 2 usage, 3 budget, 4 domain, 1 anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidModulus(_) | Error::BadVariant { .. } | Error::Parse(_)) => 2,
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(_) => 4,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget {
        max_elements: cli.budget_elems,
        max_visits: cli.budget_visits,
    };
    match run(&cli, &budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli, budget: &Budget) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Group {
            p,
            k,
            method,
            out: file,
        } => cmd_group(&mut out, cli.format, budget, *p, *k, *method, file.as_ref()),
        Command::Report { p, out: file } => match file {
            Some(path) => {
                let f =
                    File::create(path).with_context(|| format!("creating {}", path.display()))?;
                cmd_report(&mut BufWriter::new(f), cli.format, budget, *p)
            }
            None => cmd_report(&mut out, cli.format, budget, *p),
        },
        Command::Qubit {
            p,
            variant,
            generator,
            matrix,
            unitary,
            check,
        } => cmd_qubit(
            &mut out,
            cli.format,
            *p,
            *variant,
            generator.as_deref(),
            matrix.as_ref(),
            *unitary,
            *check,
        ),
        Command::Hensel { p, k } => cmd_hensel(&mut out, cli.format, budget, *p, *k),
    }
}

fn write_json(w: &mut impl Write, v: &Value) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

fn cmd_group(
    w: &mut impl Write,
    format: Format,
    budget: &Budget,
    p: u64,
    k: u32,
    method: Method,
    file: Option<&PathBuf>,
) -> anyhow::Result<()> {
    Modulus::new(p, k)?;
    let group = match method {
        Method::Closure => rotation_group(p, k, budget)?,
        Method::Solve => solve_defining_system(p, k, budget)?,
        Method::Parametrize => parametrized(p, k)?,
    };
    if let Some(path) = file {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut f = BufWriter::new(f);
        write_dump(&group, &mut f)?;
        f.flush()?;
    }
    let name = match method {
        Method::Closure => "closure",
        Method::Solve => "solve",
        Method::Parametrize => "parametrize",
    };
    match format {
        Format::Json => write_json(
            w,
            &json!({"p": p, "k": k, "method": name, "order": group.order()}),
        )?,
        Format::Csv => writeln!(w, "p,k,method,order\n{p},{k},{name},{}", group.order())?,
        Format::Pretty => writeln!(
            w,
            "order {} (p = {p}, k = {k}, method = {name})",
            group.order()
        )?,
    }
    Ok(())
}

fn parametrized(p: u64, k: u32) -> anyhow::Result<FiniteMatrixGroup> {
    if k != 1 {
        return Err(Error::UnsupportedPrime {
            p,
            reason: "the parametrization is stated mod p (k = 1)",
        }
        .into());
    }
    let form = make_form(p, 1)?;
    let v = form.v().ok_or(Error::UnsupportedPrime {
        p,
        reason: "the parametrization needs an odd prime",
    })?;
    let elements = parameterize_mod_p(p)?
        .iter()
        .map(|m| m.to_matrix(v))
        .collect();
    Ok(FiniteMatrixGroup::from_elements(form.modulus(), elements)?)
}

fn cmd_report(w: &mut impl Write, format: Format, budget: &Budget, p: u64) -> anyhow::Result<()> {
    let r = structural_report(p, budget)?;
    match format {
        Format::Json => write_json(w, &serde_json::to_value(&r)?)?,
        Format::Csv => {
            writeln!(w, "key,value")?;
            writeln!(w, "p,{}", r.p)?;
            writeln!(w, "order,{}", r.order)?;
            writeln!(w, "commutator_order,{}", r.commutator_order)?;
            writeln!(w, "abelianization,{}", r.abelianization)?;
            writeln!(w, "class_count,{}", r.class_count)?;
            writeln!(w, "class_sizes,{}", join(&r.class_sizes, " "))?;
            writeln!(w, "abelian_normal_order,{}", r.abelian_normal_order)?;
            for c in &r.degrees.candidates {
                writeln!(w, "degree_candidate,{}", join(c, " "))?;
            }
        }
        Format::Pretty => {
            writeln!(w, "G_{}: order {}", r.p, r.order)?;
            writeln!(
                w,
                "[G, G]: order {}; abelianization {}",
                r.commutator_order, r.abelianization
            )?;
            writeln!(
                w,
                "{} conjugacy classes, sizes {{{}}}",
                r.class_count,
                join(&r.class_sizes, ", ")
            )?;
            writeln!(
                w,
                "abelian normal subgroup: order {}, index {}",
                r.abelian_normal_order, r.abelian_normal_index
            )?;
            writeln!(
                w,
                "one-dimensional characters on [{}]:",
                r.one_characters.cosets.join(", ")
            )?;
            for row in &r.one_characters.rows {
                writeln!(w, "  {:>7}: {}", row.name, join(&row.values, " "))?;
            }
            writeln!(
                w,
                "irreducible qubit representations found: {}",
                r.irreducible_qubits
            )?;
            writeln!(w, "degree candidates:")?;
            for c in &r.degrees.candidates {
                writeln!(w, "  {{{}}}", join(c, ", "))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

#[allow(clippy::too_many_arguments)]
fn cmd_qubit(
    w: &mut impl Write,
    format: Format,
    p: u64,
    variant: u64,
    generator: Option<&str>,
    matrix: Option<&PathBuf>,
    unitary: bool,
    check: bool,
) -> anyhow::Result<()> {
    let rep = QubitRep::new(p, variant)?;
    let input: Option<PadicMat3> = match (generator, matrix) {
        (Some(name), _) => Some(PadicMat3::from_mat3(&generator_lift(p, name)?)),
        (None, Some(path)) => {
            let mut text = String::new();
            if path.as_os_str() == "-" {
                io::stdin().read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
            }
            Some(parse_matrix_json(&text, p)?)
        }
        (None, None) if check => None,
        (None, None) => return Err(Error::Parse("give --gen NAME or a matrix file".into()).into()),
    };
    let group = if unitary || check {
        Some(solve_defining_system(p, 1, &Budget::default())?)
    } else {
        None
    };

    if let Some(m) = &input {
        let l: Mat3 = m.project_pi1();
        let mut image = rep.eval(m)?;
        if unitary {
            let images = rep.images(group.as_ref().expect("group enumerated for --unitary"))?;
            let s = unitarize(&images).change_of_basis;
            image = s * image * s.inverse().expect("change of basis is invertible");
        }
        let pairs = image.to_pairs();
        match format {
            Format::Json => write_json(
                w,
                &json!({"p": p, "variant": variant, "input": l.signed_rows(), "image": pairs, "unitary": unitary}),
            )?,
            Format::Csv => {
                writeln!(w, "row,col,re,im")?;
                for (i, [re, im]) in pairs.iter().enumerate() {
                    writeln!(w, "{},{},{re},{im}", i / 2, i % 2)?;
                }
            }
            Format::Pretty => {
                let fmt = |[re, im]: [f64; 2]| {
                    let re = if re.abs() < 1e-12 { 0.0 } else { re };
                    if im.abs() < 1e-12 {
                        format!("{re:>9.6}")
                    } else {
                        format!("{re:.6}{im:+.6}i")
                    }
                };
                writeln!(w, "J(p = {p}, variant {variant}) of {l}:")?;
                writeln!(w, "  [{} {}]", fmt(pairs[0]), fmt(pairs[1]))?;
                writeln!(w, "  [{} {}]", fmt(pairs[2]), fmt(pairs[3]))?;
            }
        }
    }

    if check {
        let c = run_checks(&rep, group.as_ref().expect("group enumerated for --check"))?;
        match format {
            Format::Json => write_json(w, &serde_json::to_value(&c)?)?,
            Format::Csv => {
                writeln!(w, "p,variant,group_order,homomorphism_deviation,commutant_dimension,irreducible,unitary_deviation,unitarized_deviation,kernel_size,image_size,image_kernel_size")?;
                writeln!(
                    w,
                    "{},{},{},{:e},{},{},{:e},{:e},{},{},{}",
                    c.p,
                    c.variant,
                    c.group_order,
                    c.homomorphism_deviation,
                    c.commutant_dimension,
                    c.irreducible,
                    c.unitary_deviation,
                    c.unitarized_deviation,
                    c.kernel_size,
                    c.image_size,
                    c.image_kernel_size
                )?;
            }
            Format::Pretty => {
                writeln!(w, "checks over {} elements:", c.group_order)?;
                writeln!(
                    w,
                    "  homomorphism deviation  {:e}",
                    c.homomorphism_deviation
                )?;
                writeln!(
                    w,
                    "  commutant dimension     {} (irreducible: {})",
                    c.commutant_dimension, c.irreducible
                )?;
                writeln!(
                    w,
                    "  unitarity deviation     {:e} (after unitarize: {:e})",
                    c.unitary_deviation, c.unitarized_deviation
                )?;
                writeln!(
                    w,
                    "  kernel size             {} (in the image group: {})",
                    c.kernel_size, c.image_kernel_size
                )?;
                writeln!(w, "  distinct images         {}", c.image_size)?;
            }
        }
    }
    Ok(())
}

fn cmd_hensel(
    w: &mut impl Write,
    format: Format,
    budget: &Budget,
    p: u64,
    k: u32,
) -> anyhow::Result<()> {
    Modulus::new(p, k)?;
    let r = hensel_compare(p, k, budget)?;
    match format {
        Format::Json => write_json(w, &serde_json::to_value(&r)?)?,
        Format::Csv => writeln!(
            w,
            "p,k,closure_order,solver_order,equal,contained\n{},{},{},{},{},{}",
            r.p, r.k, r.closure_order, r.solver_order, r.equal, r.contained
        )?,
        Format::Pretty => writeln!(
            w,
            "{} {} {} (p = {}, k = {}; closure contained in solver: {})",
            r.closure_order,
            r.solver_order,
            if r.equal { "equal" } else { "different" },
            r.p,
            r.k,
            r.contained
        )?,
    }
    Ok(())
}
