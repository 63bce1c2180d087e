//! The change-script language: parsing, printing, and line-by-line execution.
//!
//! ```text
//! problem vcover
//! domain 3
//! kmax 2
//! ins 1 2
//! query        # q1 yes
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::change::ChangeOp;
use crate::closest_string::CsState;
use crate::error::{Error, Result};
use crate::fvs::FvsState;
use crate::knapsack::KnapsackState;
use crate::longpath::LongPathState;
use crate::maintainer::Maintainer;
use crate::muddling::vc_compress_maintainer;
use crate::plc::PlcState;
use crate::vertex_cover::VcState;

/// Largest `kmax` accepted for the search-tree maintainer.
pub const VC_KMAX_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    VCover,
    VCoverCompress,
    LongPath,
    Fvs,
    Plc,
    Knapsack,
    CString,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::VCover,
        Problem::VCoverCompress,
        Problem::LongPath,
        Problem::Fvs,
        Problem::Plc,
        Problem::Knapsack,
        Problem::CString,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::VCover => "vcover",
            Problem::VCoverCompress => "vcover-compress",
            Problem::LongPath => "longpath",
            Problem::Fvs => "fvs",
            Problem::Plc => "plc",
            Problem::Knapsack => "knapsack",
            Problem::CString => "cstring",
        }
    }

    pub fn is_graph(self) -> bool {
        matches!(self, Problem::VCover | Problem::VCoverCompress | Problem::LongPath | Problem::Fvs)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown problem `{s}`"))
    }
}

/// Instance description given by the header lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub problem: Problem,
    pub domain: Option<usize>,
    pub kmax: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub ell: Option<usize>,
    pub points: Option<(usize, usize)>,
    pub items: Option<usize>,
    pub bmax: Option<usize>,
    pub alphabet: Option<String>,
    pub len: Option<usize>,
    pub d: Option<usize>,
}

impl Header {
    pub fn new(problem: Problem) -> Self {
        Header {
            problem,
            domain: None,
            kmax: None,
            s: None,
            t: None,
            ell: None,
            points: None,
            items: None,
            bmax: None,
            alphabet: None,
            len: None,
            d: None,
        }
    }

    pub fn graph(problem: Problem, n: usize, kmax: usize) -> Self {
        Header {
            domain: Some(n),
            kmax: Some(kmax),
            ..Header::new(problem)
        }
    }

    fn need<T: Copy>(&self, v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::Instance(format!("{} scripts need a `{name}` header", self.problem)))
    }

    /// Creates the maintainer for the empty initial instance.
    pub fn build(&self) -> Result<Box<dyn Maintainer + Send>> {
        let p = self.problem;
        Ok(match p {
            Problem::VCover | Problem::VCoverCompress | Problem::Fvs => {
                let n = self.need(self.domain, "domain")?;
                let kmax = self.need(self.kmax, "kmax")?;
                if kmax > n.max(1) {
                    return Err(Error::ParameterBound(format!("kmax {kmax} exceeds the domain size {n}")));
                }
                match p {
                    Problem::VCover => {
                        if kmax > VC_KMAX_LIMIT {
                            return Err(Error::Guard(format!("search tree for kmax {kmax} is too large")));
                        }
                        Box::new(VcState::new(n, kmax)?)
                    }
                    Problem::VCoverCompress => Box::new(vc_compress_maintainer(n, kmax)?),
                    _ => Box::new(FvsState::new(n, kmax)?),
                }
            }
            Problem::LongPath => {
                let n = self.need(self.domain, "domain")?;
                let kmax = self.need(self.kmax, "kmax")?;
                let s = self.need(self.s, "s")?;
                let t = self.need(self.t, "t")?;
                let ell = self.ell.unwrap_or(kmax);
                if ell > kmax {
                    return Err(Error::ParameterBound(format!("ell {ell} exceeds kmax {kmax}")));
                }
                Box::new(LongPathState::new(n, s, t, ell, kmax, false)?)
            }
            Problem::Plc => {
                let (n, d) = self.need(self.points, "points")?;
                Box::new(PlcState::new(n, d, self.need(self.kmax, "kmax")?)?)
            }
            Problem::Knapsack => Box::new(KnapsackState::new(self.need(self.items, "items")?, self.need(self.bmax, "bmax")?)),
            Problem::CString => Box::new(CsState::new(
                self.alphabet.as_deref().ok_or_else(|| Error::Instance("cstring scripts need an `alphabet` header".into()))?,
                self.need(self.len, "len")?,
                self.need(self.d, "d")?,
            )?),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("problem {}\n", self.problem);
        let mut line = |name: &str, v: Option<usize>| {
            if let Some(v) = v {
                writeln!(out, "{name} {v}").unwrap();
            }
        };
        line("domain", self.domain);
        line("kmax", self.kmax);
        line("s", self.s);
        line("t", self.t);
        line("ell", self.ell);
        line("items", self.items);
        line("bmax", self.bmax);
        line("len", self.len);
        line("d", self.d);
        if let Some((n, d)) = self.points {
            writeln!(out, "points {n} {d}").unwrap();
        }
        if let Some(a) = &self.alphabet {
            writeln!(out, "alphabet {a}").unwrap();
        }
        out
    }
}

/// A parsed script: header plus commands tagged with their line numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub header: Header,
    pub commands: Vec<(usize, ChangeOp)>,
}

impl Script {
    pub fn new(header: Header, ops: impl IntoIterator<Item = ChangeOp>) -> Self {
        Script {
            header,
            commands: ops.into_iter().map(|op| (0, op)).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header.to_text();
        for (_, op) in &self.commands {
            writeln!(out, "{op}").unwrap();
        }
        out
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn arity(line: usize, cmd: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(parse_err(line, format!("`{cmd}` takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn num<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("`{s}` is not a natural number")))
}

fn once<T>(line: usize, slot: &mut Option<T>, v: T, name: &str) -> Result<()> {
    if slot.is_some() {
        return Err(parse_err(line, format!("duplicate `{name}` header")));
    }
    *slot = Some(v);
    Ok(())
}

/// Which commands a problem accepts.
fn accepts(p: Problem, op: &ChangeOp) -> bool {
    use ChangeOp::*;
    match op {
        Query => true,
        InsE(..) | DelE(..) => p.is_graph(),
        IncK | DecK => !matches!(p, Problem::Knapsack | Problem::CString),
        SetItem { .. } | SetB(_) | SetT(_) => p == Problem::Knapsack,
        FlipBit { .. } | Enable(_) | Disable(_) => p == Problem::Plc,
        SetString(..) => p == Problem::CString,
    }
}

pub fn parse_script(text: &str) -> Result<Script> {
    let mut header: Option<Header> = None;
    let mut commands = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let cmd = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        if cmd == "problem" {
            arity(line, cmd, &args, 1)?;
            if header.is_some() {
                return Err(parse_err(line, "duplicate `problem` header"));
            }
            header = Some(Header::new(args[0].parse().map_err(|e: String| parse_err(line, e))?));
            continue;
        }
        let Some(h) = header.as_mut() else {
            return Err(parse_err(line, "script must start with `problem`"));
        };
        let is_header = matches!(cmd, "domain" | "kmax" | "s" | "t" | "ell" | "points" | "items" | "bmax" | "alphabet" | "len" | "d");
        if is_header {
            if !commands.is_empty() {
                return Err(parse_err(line, format!("header `{cmd}` after the first command")));
            }
            match cmd {
                "points" => {
                    arity(line, cmd, &args, 2)?;
                    once(line, &mut h.points, (num(line, args[0])?, num(line, args[1])?), cmd)?;
                }
                "alphabet" => {
                    if args.is_empty() {
                        return Err(parse_err(line, "`alphabet` needs symbols"));
                    }
                    once(line, &mut h.alphabet, args.concat(), cmd)?;
                }
                _ => {
                    arity(line, cmd, &args, 1)?;
                    let v = num(line, args[0])?;
                    let slot = match cmd {
                        "domain" => &mut h.domain,
                        "kmax" => &mut h.kmax,
                        "s" => &mut h.s,
                        "t" => &mut h.t,
                        "ell" => &mut h.ell,
                        "items" => &mut h.items,
                        "bmax" => &mut h.bmax,
                        "len" => &mut h.len,
                        _ => &mut h.d,
                    };
                    once(line, slot, v, cmd)?;
                }
            }
            continue;
        }
        let op = match cmd {
            "ins" | "del" => {
                arity(line, cmd, &args, 2)?;
                let (u, v) = (num(line, args[0])?, num(line, args[1])?);
                if cmd == "ins" {
                    ChangeOp::InsE(u, v)
                } else {
                    ChangeOp::DelE(u, v)
                }
            }
            "k+" | "k-" | "query" => {
                arity(line, cmd, &args, 0)?;
                match cmd {
                    "k+" => ChangeOp::IncK,
                    "k-" => ChangeOp::DecK,
                    _ => ChangeOp::Query,
                }
            }
            "setitem" => {
                arity(line, cmd, &args, 3)?;
                ChangeOp::SetItem {
                    item: num(line, args[0])?,
                    profit: num::<BigUint>(line, args[1])?,
                    weight: num::<BigUint>(line, args[2])?,
                }
            }
            "setB" | "setT" => {
                arity(line, cmd, &args, 1)?;
                let v: BigUint = num(line, args[0])?;
                if cmd == "setB" {
                    ChangeOp::SetB(v)
                } else {
                    ChangeOp::SetT(v)
                }
            }
            "flip" => {
                arity(line, cmd, &args, 3)?;
                ChangeOp::FlipBit {
                    point: num(line, args[0])?,
                    dim: num(line, args[1])?,
                    bit: num(line, args[2])?,
                }
            }
            "enable" | "disable" => {
                arity(line, cmd, &args, 1)?;
                let i = num(line, args[0])?;
                if cmd == "enable" {
                    ChangeOp::Enable(i)
                } else {
                    ChangeOp::Disable(i)
                }
            }
            "str" => {
                arity(line, cmd, &args, 2)?;
                ChangeOp::SetString(num(line, args[0])?, args[1].to_string())
            }
            _ => return Err(parse_err(line, format!("unknown command `{cmd}`"))),
        };
        if !accepts(h.problem, &op) {
            return Err(parse_err(line, format!("`{cmd}` is not a {} command", h.problem)));
        }
        commands.push((line, op));
    }
    let header = header.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `problem` header"))?;
    Ok(Script { header, commands })
}

/// Why a run stopped.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    /// Malformed script, bad instance or out-of-bound request (exit code 1).
    #[error("{0}")]
    Input(Error),
    /// The maintainer's self-check failed (exit code 2).
    #[error("line {line}: {msg}")]
    Invariant { line: usize, msg: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 1,
            RunError::Invariant { .. } => 2,
        }
    }
}

fn at_line(line: usize, e: Error) -> RunError {
    match e {
        Error::Parse { .. } => RunError::Input(e),
        Error::Invariant(msg) => RunError::Invariant { line, msg },
        other => RunError::Input(Error::Parse {
            line,
            msg: other.to_string(),
        }),
    }
}

/// Runs a parsed script from the empty instance, returning one answer per
/// `query`. With `audit`, the maintainer's self-check runs after every line.
pub fn run(script: &Script, audit: bool) -> Result<Vec<bool>, RunError> {
    let mut m = script.header.build().map_err(RunError::Input)?;
    let mut answers = Vec::new();
    for (line, op) in &script.commands {
        m.apply(op).map_err(|e| at_line(*line, e))?;
        if audit {
            m.audit().map_err(|msg| RunError::Invariant { line: *line, msg })?;
        }
        if *op == ChangeOp::Query {
            answers.push(m.answer().map_err(|e| at_line(*line, e))?);
        }
    }
    Ok(answers)
}

/// Parses and runs `text` with auditing enabled.
pub fn run_script(text: &str) -> Result<Vec<bool>, RunError> {
    let script = parse_script(text).map_err(RunError::Input)?;
    run(&script, true)
}

/// Output lines `q<i> yes|no`.
pub fn format_answers(answers: &[bool]) -> String {
    answers
        .iter()
        .enumerate()
        .map(|(i, &a)| format!("q{} {}\n", i + 1, if a { "yes" } else { "no" }))
        .collect()
}
