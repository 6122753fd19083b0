use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matpair::grothendieck::{collapse, gamma, kappa, module_invariant, triangle_check, dim_character};
use matpair::hom::{map_pair, map_relation, RingHom};
use matpair::homology::{boundary_matrix, homology};
use matpair::pair::{
    decide_leq_with, dual, is_bottom, is_top, join, meet, pid_reduce_certified, to_system, verify, DecideOptions,
    Refutation, Verdict,
};
use matpair::random::DEFAULT_SEED;
use matpair::semantics::{dual_eval, eval_pair, FiniteModule, SubgroupOfPower, CAP_ENV};
use matpair::suite::{run_criterion, CriterionResult, SuiteConfig, CRITERIA};
use matpair::text::{format_certificate, parse_certificate, parse_matrix, parse_matrix_sum, parse_pair, parse_ring};
use matpair::{CertifiedRelation, Error, Matrix, MatrixPair, RingKind, RingSpec};

const GRAMMAR: &str = "\
Text formats:
  ring         Q | Z | F<p> | Z/<n>
  matrix       <rows>x<cols>[e11,e12,...;e21,...]   entries are integers or a/b
  pair         [<B> | <A>]   or   [| <A>] for a system
  certificate  <U>;<V>;<G>
  formal sum   one `<coef> <matrix>` per line

Exit status: 0 success / proved / true, 1 disproved / false, 2 unknown,
3 usage, parse or capability error.

The brute-force cap for `eval` is read from the environment variable
MATPAIR_EVAL_CAP (default 1000000).";

#[derive(Parser)]
#[command(name = "matpair", version, about = "Exact calculus of matrix pairs", after_help = GRAMMAR)]
struct Cli {
    /// Output style: readable text, or one `key=value` per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical representative: RREF system over a field, diagonal form over Z.
    Normalize {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Decide p <= q, printing a certificate or a refutation.
    Leq {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        p: String,
        q: String,
        /// Give up (exit 2) past this many unknowns in (U, V, G).
        #[arg(long, default_value_t = 400)]
        max_unknowns: usize,
        /// Skip the search for a finite-module witness.
        #[arg(long)]
        no_witness: bool,
    },
    /// Check a certificate U;V;G for source <= target.
    VerifyCert {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        source: String,
        target: String,
        cert: String,
    },
    /// Meet (infimum) of two pairs of the same arity.
    Meet {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        p: String,
        q: String,
    },
    /// Join (supremum) of two pairs of the same arity.
    Join {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        p: String,
        q: String,
    },
    /// The dual pair.
    Dual {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Is the pair the maximum? Prints W with BW = A.
    IsTop {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Is the pair the minimum? Prints U with UB = 0 and UA = I.
    IsBottom {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Equivalent system over a field, with certificates both ways.
    ToSystem {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Diagonalize the left matrix over a euclidean ring.
    PidReduce {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// Push a pair (and optionally a certificate) along a ring map.
    Map {
        #[arg(long, value_parser = ring_arg)]
        from: RingSpec,
        #[arg(long, value_parser = ring_arg)]
        to: RingSpec,
        pair: String,
        /// Certificate for `pair <= --target` to transport as well.
        #[arg(long, requires = "target")]
        cert: Option<String>,
        #[arg(long, requires = "cert")]
        target: Option<String>,
    },
    /// Finitely presented modules and the Grothendieck groups.
    K0 {
        #[command(subcommand)]
        cmd: K0Cmd,
    },
    /// Integer homology of nondegenerate pairs over F<q>.
    Homology {
        #[arg(long, value_parser = ring_arg)]
        field: RingSpec,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        dim: u8,
        /// Print the boundary matrix out of dimension `dim` instead.
        #[arg(long)]
        emit_boundary: bool,
    },
    /// Evaluate a pair on a finite module.
    Eval {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        /// Comma-separated cyclic orders, e.g. `2,4`.
        #[arg(long)]
        module: String,
        #[arg(long)]
        pair: String,
        /// Evaluate the dual subgroup { wA : wB = 0 } instead.
        #[arg(long)]
        dual: bool,
    },
    /// Acceptance battery.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand)]
enum K0Cmd {
    /// Isomorphism invariant of the module presented by a matrix.
    Invariant {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        matrix: String,
    },
    /// gamma[B | A] = {(B A)} - {B}.
    Gamma {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        pair: String,
    },
    /// kappa{A} as a sum of unary pairs.
    Kappa {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        matrix: String,
    },
    /// Check gamma(iota(kappa{A})) = {A} in K0.
    TriangleCheck {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        matrix: String,
    },
    /// Rank character of a formal sum of matrices read from a file (`-` for stdin).
    Character {
        #[arg(long, value_parser = ring_arg)]
        ring: RingSpec,
        file: String,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run all criteria, one pass/fail line each.
    Run {
        /// Shrink the randomized instance counts.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=11))]
        criterion: Option<u8>,
    },
}

fn ring_arg(s: &str) -> Result<RingSpec, String> {
    parse_ring(s).map_err(|e| e.to_string())
}

/// Outcome of a command before printing.
enum Status {
    True,
    False,
    Unknown,
}

impl Status {
    fn code(&self) -> u8 {
        match self {
            Status::True => 0,
            Status::False => 1,
            Status::Unknown => 2,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    /// The main value: bare in human output, `result=` in structured output.
    fn result(&mut self, value: impl ToString) {
        match self.format {
            Format::Human => self.line(&value.to_string()),
            Format::Structured => self.field("result", value),
        }
    }

    /// `key=value`; multi-line values repeat the key on every line.
    fn field(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.format {
            Format::Human if value.contains('\n') => {
                self.line(&format!("{key}:"));
                for l in value.lines() {
                    self.line(&format!("  {l}"));
                }
            }
            _ => {
                for l in value.lines() {
                    self.line(&format!("{key}={l}"));
                }
                if value.is_empty() {
                    self.line(&format!("{key}="));
                }
            }
        }
    }

    fn line(&mut self, s: &str) {
        self.buf.push_str(s);
        self.buf.push('\n');
    }
}

/// A failure tied to one argument.
struct Failure {
    context: String,
    err: Error,
}

trait Context<T> {
    fn ctx(self, context: &str) -> Result<T, Failure>;
}

impl<T> Context<T> for matpair::Result<T> {
    fn ctx(self, context: &str) -> Result<T, Failure> {
        self.map_err(|err| Failure { context: context.to_string(), err })
    }
}

fn pair_arg(ring: RingSpec, name: &str, s: &str) -> Result<MatrixPair, Failure> {
    parse_pair(ring, s).ctx(&format!("argument {name}"))
}

fn matrix_arg(ring: RingSpec, name: &str, s: &str) -> Result<Matrix, Failure> {
    parse_matrix(ring, s).ctx(&format!("argument {name}"))
}

fn require(ok: bool, ring: RingSpec, op: &'static str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure { context: op.to_string(), err: Error::UnsupportedRing { ring, op } })
    }
}

fn refutation(out: &mut Out, r: &Refutation) {
    match r {
        Refutation::SolutionVector(v) => out.field("solution", v),
        Refutation::Witness { module, tuple } => {
            out.field("module", module);
            out.field("tuple", format_tuple(module, tuple));
        }
        Refutation::NoCertificate => out.field("reason", "no certificate (U, V, G) exists"),
    }
}

fn relation(out: &mut Out, key: &str, rel: &CertifiedRelation) {
    out.field(key, format_certificate(rel.cert()));
}

fn format_tuple(module: &FiniteModule, x: &[u64]) -> String {
    let t = module.rank().max(1);
    let entries: Vec<String> = x
        .chunks(t)
        .map(|c| c.iter().map(u64::to_string).collect::<Vec<_>>().join(":"))
        .collect();
    format!("({})", entries.join(","))
}

fn subgroup(out: &mut Out, g: &SubgroupOfPower) {
    out.field("module", g.module());
    out.field("size", g.len());
    let elements: Vec<String> = g.elements().iter().map(|x| format_tuple(g.module(), x)).collect();
    out.field("elements", elements.join("\n"));
}

fn read_input(path: &str) -> Result<String, Failure> {
    let fail = |e: io::Error| Failure { context: format!("reading {path}"), err: Error::InvalidEntry(e.to_string()) };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(fail)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(fail)
    }
}

fn run(cmd: Cmd, out: &mut Out) -> Result<Status, Failure> {
    match cmd {
        Cmd::Normalize { ring, pair } => {
            let p = pair_arg(ring, "pair", &pair)?;
            if ring.is_field() {
                let red = to_system(&p).ctx("normalize")?;
                out.result(MatrixPair::system(red.system));
            } else {
                require(ring.is_euclidean(), ring, "normalize")?;
                out.result(pid_reduce_certified(&p).ctx("normalize")?.meet_pair);
            }
            Ok(Status::True)
        }
        Cmd::Leq { ring, p, q, max_unknowns, no_witness } => {
            let p = pair_arg(ring, "p", &p)?;
            let q = pair_arg(ring, "q", &q)?;
            let opts = DecideOptions { max_unknowns, find_witness: !no_witness, ..DecideOptions::default() };
            match decide_leq_with(&p, &q, &opts).ctx("leq")? {
                Verdict::Proved(rel) => {
                    out.result("proved");
                    relation(out, "certificate", &rel);
                    Ok(Status::True)
                }
                Verdict::Disproved(r) => {
                    out.result("disproved");
                    refutation(out, &r);
                    Ok(Status::False)
                }
                Verdict::Unknown(why) => {
                    out.result("unknown");
                    out.field("reason", why);
                    Ok(Status::Unknown)
                }
            }
        }
        Cmd::VerifyCert { ring, source, target, cert } => {
            let src = pair_arg(ring, "source", &source)?;
            let dst = pair_arg(ring, "target", &target)?;
            let c = parse_certificate(ring, &cert).ctx("argument cert")?;
            let ok = verify(&c, &src, &dst).ctx("verify-cert")?;
            out.result(ok);
            Ok(Status::from_bool(ok))
        }
        Cmd::Meet { ring, p, q } => {
            out.result(meet(&pair_arg(ring, "p", &p)?, &pair_arg(ring, "q", &q)?).ctx("meet")?);
            Ok(Status::True)
        }
        Cmd::Join { ring, p, q } => {
            out.result(join(&pair_arg(ring, "p", &p)?, &pair_arg(ring, "q", &q)?).ctx("join")?);
            Ok(Status::True)
        }
        Cmd::Dual { ring, pair } => {
            out.result(dual(&pair_arg(ring, "pair", &pair)?));
            Ok(Status::True)
        }
        Cmd::IsTop { ring, pair } => match is_top(&pair_arg(ring, "pair", &pair)?).ctx("is-top")? {
            Some(w) => {
                out.field("W", w);
                Ok(Status::True)
            }
            None => {
                out.result(false);
                Ok(Status::False)
            }
        },
        Cmd::IsBottom { ring, pair } => match is_bottom(&pair_arg(ring, "pair", &pair)?).ctx("is-bottom")? {
            Some(u) => {
                out.field("U", u);
                Ok(Status::True)
            }
            None => {
                out.result(false);
                Ok(Status::False)
            }
        },
        Cmd::ToSystem { ring, pair } => {
            require(ring.is_field(), ring, "to-system")?;
            let red = to_system(&pair_arg(ring, "pair", &pair)?).ctx("to-system")?;
            out.result(MatrixPair::system(red.system.clone()));
            relation(out, "forward", &red.forward);
            relation(out, "backward", &red.backward);
            Ok(Status::True)
        }
        Cmd::PidReduce { ring, pair } => {
            require(ring.is_euclidean(), ring, "pid-reduce")?;
            let red = pid_reduce_certified(&pair_arg(ring, "pair", &pair)?).ctx("pid-reduce")?;
            let factors: Vec<String> = red.factors.iter().map(|(d, row)| format!("{d} | {row}")).collect();
            out.field("factors", factors.join("\n"));
            out.field("pair", &red.meet_pair);
            relation(out, "forward", &red.forward);
            relation(out, "backward", &red.backward);
            Ok(Status::True)
        }
        Cmd::Map { from, to, pair, cert, target } => {
            let f = RingHom::new(from, to).ctx("map")?;
            let p = pair_arg(from, "pair", &pair)?;
            out.result(map_pair(&f, &p).ctx("map")?);
            if let (Some(cert), Some(target)) = (cert, target) {
                let c = parse_certificate(from, &cert).ctx("argument --cert")?;
                let q = pair_arg(from, "--target", &target)?;
                let rel = CertifiedRelation::new(p, q, c).ctx("map")?;
                let image = map_relation(&f, &rel).ctx("map")?;
                out.field("target", image.target());
                relation(out, "certificate", &image);
            }
            Ok(Status::True)
        }
        Cmd::K0 { cmd } => run_k0(cmd, out),
        Cmd::Homology { field, dim, emit_boundary } => {
            let q = match field.kind() {
                RingKind::PrimeField(q) => q,
                _ => return Err(Failure { context: "--field".into(), err: Error::NotAField(field) }),
            };
            if emit_boundary {
                out.result(boundary_matrix(q, dim as usize).ctx("homology")?);
            } else {
                out.result(homology(q, dim as usize).ctx("homology")?);
            }
            Ok(Status::True)
        }
        Cmd::Eval { ring, module, pair, dual } => {
            require(ring.is_finite(), ring, "eval")?;
            let orders = module
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure { context: "argument --module".into(), err: Error::InvalidModule(e.to_string()) })?;
            let m = FiniteModule::new(ring, orders).ctx("argument --module")?;
            let p = pair_arg(ring, "--pair", &pair)?;
            let g = if dual { dual_eval(&p, &m) } else { eval_pair(&p, &m) }.ctx("eval")?;
            subgroup(out, &g);
            Ok(Status::True)
        }
        Cmd::Suite { cmd: SuiteCmd::Run { quick, seed, criterion } } => {
            let config = SuiteConfig { seed, quick };
            let ids: Vec<usize> = match criterion {
                Some(id) => vec![id as usize],
                None => (1..=CRITERIA.len()).collect(),
            };
            let mut all = true;
            for id in ids {
                let r: CriterionResult = run_criterion(id, &config);
                all &= r.passed;
                match out.format {
                    Format::Human => out.line(&r.to_string()),
                    Format::Structured => out.field(
                        &format!("criterion{id}"),
                        format!("{} {}", if r.passed { "pass" } else { "fail" }, r.detail),
                    ),
                }
                print!("{}", std::mem::take(&mut out.buf));
            }
            out.field("seed", seed);
            Ok(Status::from_bool(all))
        }
    }
}

fn run_k0(cmd: K0Cmd, out: &mut Out) -> Result<Status, Failure> {
    let supported = |ring: RingSpec| require(ring.is_field() || ring.kind() == RingKind::Integers, ring, "k0");
    match cmd {
        K0Cmd::Invariant { ring, matrix } => {
            supported(ring)?;
            out.result(module_invariant(&matrix_arg(ring, "matrix", &matrix)?).ctx("k0 invariant")?);
            Ok(Status::True)
        }
        K0Cmd::Gamma { ring, pair } => {
            supported(ring)?;
            let g = gamma(&pair_arg(ring, "pair", &pair)?);
            out.field("sum", &g);
            out.field("k0", collapse(&g).ctx("k0 gamma")?);
            Ok(Status::True)
        }
        K0Cmd::Kappa { ring, matrix } => {
            supported(ring)?;
            out.result(kappa(&matrix_arg(ring, "matrix", &matrix)?));
            Ok(Status::True)
        }
        K0Cmd::TriangleCheck { ring, matrix } => {
            supported(ring)?;
            let ok = triangle_check(&matrix_arg(ring, "matrix", &matrix)?).ctx("k0 triangle-check")?;
            out.result(ok);
            Ok(Status::from_bool(ok))
        }
        K0Cmd::Character { ring, file } => {
            supported(ring)?;
            let text = read_input(&file)?;
            let sum = parse_matrix_sum(ring, &text).ctx(&format!("file {file}"))?;
            out.result(dim_character(&sum).ctx("k0 character")?);
            Ok(Status::True)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var(CAP_ENV) {
        if v.parse::<u128>().is_err() {
            eprintln!("error: {CAP_ENV}={v} is not a number");
            return ExitCode::from(3);
        }
    }
    let mut out = Out { format: cli.format, buf: String::new() };
    match run(cli.cmd, &mut out) {
        Ok(status) => {
            print!("{}", out.buf);
            ExitCode::from(status.code())
        }
        Err(Failure { context, err }) => {
            eprintln!("error: {context}: {err}");
            ExitCode::from(3)
        }
    }
}
