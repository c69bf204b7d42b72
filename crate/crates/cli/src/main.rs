//! Command-line front end: parses the plain-text code-file format and
//! dispatches to the library. Exit status 0 on success, 1 on domain errors
//! (non-commuting generators where a code is required, invalid maps,
//! non-coprime moduli), 2 on I/O or parse errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mixedreg::codefile::{self, CodeFile};
use mixedreg::construct::{embed_scale, resolve, scan, ScanMap, StabilizerCode};
use mixedreg::oracle;
use mixedreg::pauli::{commutator_matrix, Device, PauliVec};
use mixedreg::{amalgamate, code_params, distance, gram_schmidt, split_coprime};

#[derive(Parser)]
#[command(name = "mixedreg", version, about = "Mixed-register stabilizer code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print register count, moduli, stabilizer group order and logical dimension
    Params {
        file: PathBuf,
        /// Also search for the code distance up to this weight
        #[arg(long, value_name = "W")]
        distance_cap: Option<usize>,
    },
    /// Decompose a raw generator set into isotropic generators and hyperbolic pairs
    Decompose { file: PathBuf },
    /// Append registers to make a raw generator set commute
    Resolve {
        file: PathBuf,
        /// Write the constructed code here instead of standard output
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Join two codes of coprime uniform moduli on overlapping registers
    Scan {
        file1: PathBuf,
        file2: PathBuf,
        /// Comma-separated 1-based output registers for the first code
        #[arg(long, value_name = "i,j,...")]
        map1: String,
        /// Comma-separated 1-based output registers for the second code
        #[arg(long, value_name = "i,j,...")]
        map2: String,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Embed a uniform-modulus code into registers of a larger modulus
    Embed {
        file: PathBuf,
        /// Target modulus; must be a multiple of the code's modulus
        #[arg(long, value_name = "L")]
        modulus: u64,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Rewrite a block-coprime code with block-supported generators
    Split {
        file: PathBuf,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Brute-force minimum-weight undetected logical operator
    Distance {
        file: PathBuf,
        #[arg(long, value_name = "W", default_value_t = 3)]
        distance_cap: usize,
    },
    /// Print the generator commutator matrix (symplectic products mod 1)
    Commutes { file: PathBuf },
    /// Numerical projector checks and codeword amplitudes
    Oracle {
        file: PathBuf,
        /// Seed basis state digits, comma-separated, one per register
        #[arg(long, value_name = "j1,j2,...")]
        codeword: Option<String>,
        /// Print idempotence and hermiticity residuals of the projector
        #[arg(long)]
        check_projector: bool,
    },
}

enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, codefile::ParseError),
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Parse(..) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn report(&self) -> String {
        match self {
            CliError::Io(path, e) => format!("{}: {e}", path.display()),
            CliError::Parse(path, e) => format!("{}: {e}", path.display()),
            CliError::Domain(msg) => msg.clone(),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_code(path: &Path) -> Result<CodeFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    codefile::parse(&text).map_err(|e| CliError::Parse(path.to_path_buf(), e))
}

/// Commands that need a valid code reject non-commuting inputs as a domain
/// error; the raw-set commands (decompose, resolve, commutes) skip this.
fn require_code(file: &CodeFile) -> Result<StabilizerCode, CliError> {
    StabilizerCode::new(&file.device, file.generators.clone()).map_err(domain)
}

fn write_output(device: &Device, gens: &[PauliVec], output: Option<&Path>) -> Result<(), CliError> {
    let text = codefile::render(device, gens);
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_indices(spec: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|w| {
            let v: usize = w
                .trim()
                .parse()
                .map_err(|_| CliError::Domain(format!("{flag}: `{w}` is not an index")))?;
            if v == 0 {
                return Err(CliError::Domain(format!("{flag}: indices are 1-based")));
            }
            Ok(v - 1)
        })
        .collect()
}

fn parse_digits(spec: &str, device: &Device) -> Result<Vec<u64>, CliError> {
    let digits: Vec<u64> = spec
        .split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| CliError::Domain(format!("--codeword: `{w}` is not a digit")))
        })
        .collect::<Result<_, _>>()?;
    if digits.len() != device.registers() {
        return Err(CliError::Domain(format!(
            "--codeword needs {} digits, got {}",
            device.registers(),
            digits.len()
        )));
    }
    for (i, &d) in digits.iter().enumerate() {
        if d >= device.modulus(i) {
            return Err(CliError::Domain(format!(
                "--codeword digit {d} out of range for register {} (modulus {})",
                i + 1,
                device.modulus(i)
            )));
        }
    }
    Ok(digits)
}

fn moduli_csv(device: &Device) -> String {
    device.moduli().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Params { file, distance_cap } => {
            let code = require_code(&read_code(&file)?)?;
            let params = code_params(&code, None);
            println!(
                "n={} moduli={} |S|={} K={}",
                params.registers,
                moduli_csv(code.device()),
                params.group_order,
                params.logical_count
            );
            if let Some(cap) = distance_cap {
                match distance(&code, cap) {
                    Some(w) => println!("distance={} witness={}", w.distance, w.operator),
                    None => println!("distance=none (no witness up to weight {cap})"),
                }
            }
        }
        Command::Decompose { file } => {
            let file = read_code(&file)?;
            let result = amalgamate(&gram_schmidt(&file.device, &file.generators));
            println!("isotropic {}", result.isotropic.len());
            for w in &result.isotropic {
                println!("W {w}");
            }
            println!("pairs {}", result.pairs.len());
            for pair in &result.pairs {
                println!("d {}", pair.order);
                println!("U {}", pair.u);
                println!("V {}", pair.v);
            }
        }
        Command::Resolve { file, output } => {
            let file = read_code(&file)?;
            let code = resolve(&file.device, &file.generators);
            write_output(code.device(), code.generators(), output.as_deref())?;
        }
        Command::Scan { file1, file2, map1, map2, output } => {
            let code1 = require_code(&read_code(&file1)?)?;
            let code2 = require_code(&read_code(&file2)?)?;
            let map = ScanMap::new(parse_indices(&map1, "--map1")?, parse_indices(&map2, "--map2")?)
                .map_err(domain)?;
            let joined = scan(&code1, &code2, &map).map_err(domain)?;
            write_output(joined.device(), joined.generators(), output.as_deref())?;
        }
        Command::Embed { file, modulus, output } => {
            let code = require_code(&read_code(&file)?)?;
            let embedded = embed_scale(&code, modulus).map_err(domain)?;
            write_output(embedded.device(), embedded.generators(), output.as_deref())?;
        }
        Command::Split { file, output } => {
            let code = require_code(&read_code(&file)?)?;
            let split = split_coprime(&code).map_err(domain)?;
            write_output(split.device(), split.generators(), output.as_deref())?;
        }
        Command::Distance { file, distance_cap } => {
            let code = require_code(&read_code(&file)?)?;
            match distance(&code, distance_cap) {
                Some(w) => println!("distance={} witness={}", w.distance, w.operator),
                None => println!("distance=none (no witness up to weight {distance_cap})"),
            }
        }
        Command::Commutes { file } => {
            let file = read_code(&file)?;
            let matrix = commutator_matrix(&file.generators).map_err(domain)?;
            println!("{matrix}");
        }
        Command::Oracle { file, codeword, check_projector } => {
            let code = require_code(&read_code(&file)?)?;
            let projector = oracle::projector(&code).map_err(domain)?;
            let trace = projector.trace();
            println!("trace={:.12}", trace.re);
            if check_projector {
                println!("idempotence_residual={:.12}", projector.idempotence_residual());
                println!("hermiticity_residual={:.12}", projector.hermiticity_residual());
            }
            if let Some(digit_spec) = codeword {
                let digits = parse_digits(&digit_spec, code.device())?;
                let seed = oracle::basis_index(code.device(), &digits).map_err(domain)?;
                let state = oracle::codeword(&code, seed).map_err(domain)?;
                for i in 0..state.dim() {
                    let amp = state.amplitude(i);
                    if amp.norm() > 1e-12 {
                        println!("amp {i} {:.12} {:.12}", amp.re, amp.im);
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.report());
            ExitCode::from(e.exit_code())
        }
    }
}
