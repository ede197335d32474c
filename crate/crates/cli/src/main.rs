//! `mackey`: validate Mackey functors, compute slice towers, box products, sdim bounds and
//! slice charts from the command line.
//!
//! Exit codes: 0 on success, 1 when the mathematics says no (axiom violations, mismatched
//! groups, unsupported spheres), 2 when the input could not be read or parsed.

mod chart;
mod input;

use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mackey_core::boxprod::{box_product, comparison_to_zero_slice, unit_map};
use mackey_core::mackey::{burnside, constant_z, to_json, MackeyFunctor};
use mackey_core::rep::{parse_sphere, sdim_bounds};
use mackey_core::slice::slice_tower;

use input::GroupArgs;

#[derive(Parser, Debug)]
#[command(name = "mackey", version, about = "Mackey functors for cyclic p-groups and their slices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Mackey functor axioms
    Validate {
        /// functor in the JSON interchange format
        file: String,
    },
    /// Print the nonzero slices of HM
    SliceTower {
        /// a JSON file, or one of burnside, constant_Z, dual_Z
        input: String,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = TowerFormat::Text)]
        format: TowerFormat,
    },
    /// Compute the box product of two functors over the same group
    Boxprod {
        a: String,
        b: String,
        #[command(flatten)]
        group: GroupArgs,
        /// report on the map M ⊠ Z -> Z0(M) (one factor must be the constant functor)
        #[arg(long)]
        compare_zero_slice: bool,
        #[arg(long, value_enum, default_value_t = TowerFormat::Text)]
        format: TowerFormat,
    },
    /// Bound the slice connectivity of a representation sphere
    Sdim {
        /// e.g. "2*rho - 2", "perm[1,1,0] - 1", "lambda(1)^2 + 3*triv - 1"
        sphere: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Draw the slice filtration chart of HM
    Chart {
        input: String,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ChartFormat::Text)]
        format: ChartFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TowerFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChartFormat {
    Text,
    Svg,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    fn input(err: impl Into<anyhow::Error>) -> Self {
        Failure { code: 2, err: err.into() }
    }

    fn domain(err: impl Into<anyhow::Error>) -> Self {
        Failure { code: 1, err: err.into() }
    }
}

impl From<mackey_core::Error> for Failure {
    fn from(e: mackey_core::Error) -> Self {
        if e.is_input_error() {
            Failure::input(e)
        } else {
            Failure::domain(e)
        }
    }
}

type Outcome = Result<Output, Failure>;

/// What a command prints and how it exits.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// ANSI styling, off unless stdout is a terminal and `NO_COLOR` is unset.
#[derive(Clone, Copy)]
pub(crate) struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style { color: !no_color && std::io::stdout().is_terminal() }
    }

    pub(crate) fn bold(&self, s: &str) -> String {
        self.paint(s, "1")
    }

    pub(crate) fn green(&self, s: &str) -> String {
        self.paint(s, "32")
    }

    pub(crate) fn red(&self, s: &str) -> String {
        self.paint(s, "31")
    }

    fn paint(&self, s: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

/// Refuses invalid functors with the violation list (exit 1).
fn require_valid(m: &MackeyFunctor, name: &str) -> Result<(), Failure> {
    let v = m.validate();
    if v.is_empty() {
        return Ok(());
    }
    let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    Err(Failure::domain(anyhow::anyhow!("{name} is not a Mackey functor: {}", list.join("; "))))
}

fn validate(file: &str, style: Style) -> Outcome {
    let m = input::read_file(file)?;
    let violations = m.validate();
    if violations.is_empty() {
        return Ok(Output::ok(format!("{}: Mackey functor over {}\n", style.green("valid"), m.spec())));
    }
    let mut text = format!("{}: {} violation(s)\n", style.red("invalid"), violations.len());
    for v in &violations {
        text.push_str(&format!("  {v}\n"));
    }
    Ok(Output { text, code: 1 })
}

fn tower(source: &str, group: &GroupArgs, format: TowerFormat, style: Style) -> Outcome {
    let m = input::load(source, group)?;
    require_valid(&m, source)?;
    let t = slice_tower(&m)?;
    let text = match format {
        TowerFormat::Json => format!("{}\n", t.to_json()),
        TowerFormat::Text => {
            let dims: Vec<String> = t.dims().iter().map(|d| d.to_string()).collect();
            let mut out = format!("slice tower over {}, nonzero slices in dimensions {}\n", m.spec(), dims.join(", "));
            for e in &t.entries {
                out.push('\n');
                out.push_str(&style.bold(&format!("dimension {} (pulled back from level {})", e.dim, e.level)));
                out.push('\n');
                out.push_str(&indent(&e.layer.render()));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn is_presented_as(m: &MackeyFunctor, other: &MackeyFunctor) -> bool {
    m.normalized() == other.normalized()
}

fn boxprod(a: &str, b: &str, group: &GroupArgs, compare: bool, format: TowerFormat, style: Style) -> Outcome {
    // a built-in factor follows the group of a file factor
    let (ma, mb) = if input::is_builtin(a) {
        let mb = input::load(b, group)?;
        (input::load_near(a, group, Some(mb.spec()))?, mb)
    } else {
        let ma = input::load(a, group)?;
        (ma.clone(), input::load_near(b, group, Some(ma.spec()))?)
    };
    if ma.spec() != mb.spec() {
        return Err(Failure::domain(anyhow::anyhow!(
            "the factors live over different groups: {} and {}",
            ma.spec(),
            mb.spec()
        )));
    }
    require_valid(&ma, a)?;
    require_valid(&mb, b)?;
    let spec = ma.spec();
    let product = box_product(&ma, &mb)?;

    let mut notes = Vec::new();
    let a_unit = is_presented_as(&ma, &burnside(spec));
    let b_unit = is_presented_as(&mb, &burnside(spec));
    if a_unit || b_unit {
        let other = if a_unit { &mb } else { &ma };
        let which = if a_unit { "second" } else { "first" };
        let iso = unit_map(other)?.is_isomorphism();
        notes.push(if iso {
            format!("unit: isomorphic to the {which} factor")
        } else {
            format!("unit: NOT isomorphic to the {which} factor")
        });
    }
    let comparison = if compare {
        let z = constant_z(spec);
        let m = if is_presented_as(&mb, &z) {
            &ma
        } else if is_presented_as(&ma, &z) {
            &mb
        } else {
            return Err(Failure::domain(anyhow::anyhow!(
                "--compare-zero-slice needs one factor to be the constant functor Z"
            )));
        };
        Some(comparison_to_zero_slice(m)?)
    } else {
        None
    };

    let text = match format {
        TowerFormat::Json => {
            let mut out = format!("{}\n", to_json(&product));
            if let Some(c) = &comparison {
                out.push_str(&format!("{{\"surjective\":{},\"injective\":{}}}\n", c.surjective, c.injective));
            }
            out
        }
        TowerFormat::Text => {
            let mut out = format!("{} over {spec}\n", style.bold(&format!("{a} ⊠ {b}")));
            out.push_str(&product.render());
            for n in &notes {
                out.push_str(n);
                out.push('\n');
            }
            if let Some(c) = &comparison {
                let s = if c.surjective { "surjective" } else { "not surjective" };
                let i = if c.injective { "injective" } else { "not injective" };
                out.push_str(&format!("comparison with the zero slice: {s}, {i}\n"));
                out.push_str(&format!("  Z0 = {}\n", c.target.level_strings().join(", ")));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn sdim(sphere: &str, group: &GroupArgs, style: Style) -> Outcome {
    let spec = group.spec()?;
    let s = parse_sphere(sphere, spec)?;
    let b = sdim_bounds(&s)?;
    let mut text = format!("{}  rule: {}\n", style.bold(&b.to_string()), b.rule_names().join(" + "));
    for line in b.provenance() {
        text.push_str(&format!("  {line}\n"));
    }
    Ok(Output::ok(text))
}

fn chart(source: &str, group: &GroupArgs, format: ChartFormat, style: Style) -> Outcome {
    let m = input::load(source, group)?;
    require_valid(&m, source)?;
    let t = slice_tower(&m)?;
    let layout = chart::Layout::from_tower(source, &t);
    Ok(Output::ok(match format {
        ChartFormat::Text => layout.text(style),
        ChartFormat::Svg => layout.svg(),
    }))
}

fn run(cli: &Cli, style: Style) -> Outcome {
    match &cli.command {
        Command::Validate { file } => validate(file, style),
        Command::SliceTower { input, group, format } => tower(input, group, *format, style),
        Command::Boxprod { a, b, group, compare_zero_slice, format } => {
            boxprod(a, b, group, *compare_zero_slice, *format, style)
        }
        Command::Sdim { sphere, group } => sdim(sphere, group, style),
        Command::Chart { input, group, format } => chart(input, group, *format, style),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::detect();
    match run(&cli, style) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
