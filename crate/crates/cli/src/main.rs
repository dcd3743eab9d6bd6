use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dlf::exactla::Field;
use dlf::homology::Theory;
use dlf_cli::{run, Command, Format, Options, Side};

#[derive(Parser)]
#[command(name = "dlf", version, about = "Factorisations of distributive laws, duplicial objects and cyclic homology")]
struct Cli {
    /// Ground field: Q or Fp:<p>.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every checker on every entry of a bundle.
    Check { source: String },
    /// Monoidal product of two factorisations (`source#name`).
    Compose { first: String, second: String },
    /// Act with a factorisation on a tensor datum.
    Act {
        factorisation: String,
        datum: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// All operators of the duplicial object of a datum.
    Duplicial { datum: String },
    /// Hochschild or cyclic homology dimensions of a datum.
    Homology {
        datum: String,
        #[arg(long, value_enum, default_value = "hh")]
        theory: TheoryArg,
        /// Morphism (`source#name`) twisting a cyclic datum.
        #[arg(long)]
        twist: Option<String>,
    },
    /// Twisted cyclic homology of an algebra.
    Hc {
        algebra: String,
        #[arg(long)]
        twist: Option<String>,
    },
    /// List the built-in examples, or emit one as a bundle.
    Examples { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Bundle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Hh,
    Hc,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        field: cli.field,
        format: cli.format.map(|f| match f {
            FormatArg::Table => Format::Table,
            FormatArg::Bundle => Format::Bundle,
        }),
        max_degree: cli.max_degree,
    };
    let cmd = match cli.cmd {
        Cmd::Check { source } => Command::Check { source },
        Cmd::Compose { first, second } => Command::Compose { first, second },
        Cmd::Act {
            factorisation,
            datum,
            side,
        } => Command::Act {
            factorisation,
            datum,
            side: match side {
                SideArg::Right => Side::Right,
                SideArg::Left => Side::Left,
                SideArg::Both => Side::Both,
            },
        },
        Cmd::Duplicial { datum } => Command::Duplicial { datum },
        Cmd::Homology { datum, theory, twist } => Command::Homology {
            datum,
            theory: match theory {
                TheoryArg::Hh => Theory::Hochschild,
                TheoryArg::Hc => Theory::Cyclic,
            },
            twist,
        },
        Cmd::Hc { algebra, twist } => Command::Hc { algebra, twist },
        Cmd::Examples { name } => Command::Examples { name },
    };
    match run(&cmd, &opts) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind.exit_code())
        }
    }
}
