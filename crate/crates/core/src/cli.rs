//! Command-line front end. `dispatch` parses arguments, runs one subcommand
//! and returns the exit code together with the text it produced.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::algebra::{rat, MultiPoly, RationalFunction};
use crate::cohomology::{poincare_dual_subgraph, EquivariantClass};
use crate::connection::{build_connection, chern_numbers};
use crate::curves::CurveLattice;
use crate::cy::{self, LocalSpec, Verdict};
use crate::error::{Error, Result};
use crate::graph::{self, construct, GkmGraph};
use crate::gw::{gromov_witten, GwOptions, HMode, Insertion, MarkingSum, Mode, UnstablePsi};
use crate::quantum::quantum_product_truncated;
use crate::{fixtures, Error as E};

#[derive(Parser, Debug)]
#[command(name = "gkm", version, about = "Equivariant cohomology and genus-zero Gromov-Witten invariants of GKM graphs")]
struct Cli {
    /// Cap on worker threads (falls back to GKM_THREADS).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Projective space P^N.
    #[arg(long, value_name = "N")]
    pn: Option<usize>,
    /// Grassmannian of K-planes in C^N.
    #[arg(long, num_args = 2, value_names = ["K", "N"])]
    grassmannian: Option<Vec<usize>>,
    /// Complete flag variety of C^N.
    #[arg(long, value_name = "N")]
    flag: Option<usize>,
    /// Product of two graphs, each given as pn:N, grassmannian:K:N, flag:N, fixture:NAME or file:PATH.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    product: Option<Vec<String>>,
    /// Total space of O(A1) + O(A2) over P^1 (torus rank 3).
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["A1", "A2"])]
    local: Option<Vec<i64>>,
    /// The same with t3 = -t1 - t2 imposed (torus rank 2).
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["A1", "A2"])]
    local_cy: Option<Vec<i64>>,
    /// Built-in fixture: g2b, twisted-flag, cycle8, k1-cube.
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// Graph in the JSON format.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Auto,
    Symbolic,
    Evaluate,
}

#[derive(Args, Debug, Clone)]
struct GwArgs {
    /// Evaluation strategy.
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Edge factors from the compatible connection instead of the congruence classes.
    #[arg(long)]
    via_connection: bool,
    /// Sum over isomorphism classes of marked trees (slow; a cross-check).
    #[arg(long)]
    naive: bool,
    /// Allow ψ at markings on unstable vertices, using the cotangent weight.
    #[arg(long)]
    cotangent_psi: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the GKM axioms.
    Validate {
        #[command(flatten)]
        src: Source,
        /// Write the canonical JSON of the graph.
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Print the edges and their weights.
    Info {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Combinatorial Betti numbers.
    Betti {
        #[command(flatten)]
        src: Source,
    },
    /// Class and Chern number of every edge curve.
    CurveClasses {
        #[command(flatten)]
        src: Source,
    },
    /// A compatible connection and its a-values.
    Connection {
        #[command(flatten)]
        src: Source,
    },
    /// Chern number of every edge curve.
    Chern {
        #[command(flatten)]
        src: Source,
    },
    /// Localized integral of a class expression.
    Integrate {
        #[command(flatten)]
        src: Source,
        /// e.g. "c1^2", "pt@12", "pd@{34,12}/{24,12} + 2*c1".
        #[arg(long)]
        class: String,
    },
    /// Genus-zero Gromov-Witten invariant.
    Gw {
        #[command(flatten)]
        src: Source,
        /// Curve class in lattice coordinates, e.g. "1,1".
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Number of markings (default: the largest index used).
        #[arg(short = 'n', long)]
        marks: Option<usize>,
        /// Insertion I:EXPR at marking I (1-based), repeatable.
        #[arg(long = "ev", value_name = "I:EXPR")]
        ev: Vec<String>,
        /// ψ-power I:K at marking I, repeatable.
        #[arg(long = "psi", value_name = "I:K")]
        psi: Vec<String>,
        #[command(flatten)]
        opts: GwArgs,
    },
    /// Truncated small quantum product a * b.
    Qh {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Largest Chern number of the classes summed.
        #[arg(long, default_value_t = 4)]
        chern_bound: i64,
        /// Largest multiple of an edge with Chern number 0.
        #[arg(long, default_value_t = 0)]
        exceptional_max: u32,
        /// Print the coefficients at t = 0.
        #[arg(long)]
        nonequivariant: bool,
        #[command(flatten)]
        opts: GwArgs,
    },
    /// Closed-form GW invariant of the local curve X_k.
    Cy {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u64,
        /// cy, twisted, generic or k1:Y.
        #[arg(long, default_value = "cy")]
        spec: String,
        /// Also compute it by localization.
        #[arg(long)]
        localize: bool,
    },
    /// Genus-zero BPS numbers of X_k.
    Bps {
        /// A single row.
        #[arg(long, conflicts_with = "kmax")]
        k: Option<u32>,
        /// A TSV table for k = 0..=KMAX.
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long, default_value_t = 7)]
        dmax: u64,
    },
    /// Necessary condition for realizability of a 3-valent graph.
    Realizable {
        #[command(flatten)]
        src: Source,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let threads = cli.threads.or_else(|| std::env::var("GKM_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(n) = threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut out = String::new();
    match run(cli.cmd, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => {
            let code = match e {
                E::InvalidGraph(_) => 2,
                _ => 1,
            };
            Outcome { code, stdout: out, stderr: format!("error: {e}\n") }
        }
    }
}

fn named(spec: &str) -> Result<GkmGraph> {
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?} in {spec:?}")));
    match parts.as_slice() {
        ["pn", n] => Ok(construct::projective_space(num(n)?)),
        ["grassmannian", k, n] => construct::grassmannian(num(k)?, num(n)?),
        ["flag", n] => construct::full_flag(num(n)?),
        ["fixture", name] => fixture(name),
        ["file", path] => graph::io::load(std::path::Path::new(path)),
        _ if spec.starts_with("file:") => graph::io::load(std::path::Path::new(&spec[5..])),
        _ => Err(Error::Parse(format!("unknown graph {spec:?}"))),
    }
}

fn fixture(name: &str) -> Result<GkmGraph> {
    if fixtures::source(name).is_none() {
        return Err(Error::Parse(format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", "))));
    }
    fixtures::fixture(name)
}

fn load(src: &Source) -> Result<GkmGraph> {
    let g = load_unchecked(src)?;
    g.check()?;
    Ok(g)
}

fn load_unchecked(src: &Source) -> Result<GkmGraph> {
    if let Some(n) = src.pn {
        return Ok(construct::projective_space(n));
    }
    if let Some(v) = &src.grassmannian {
        return construct::grassmannian(v[0], v[1]);
    }
    if let Some(n) = src.flag {
        return construct::full_flag(n);
    }
    if let Some(v) = &src.product {
        return Ok(construct::product(&named(&v[0])?, &named(&v[1])?));
    }
    if let Some(v) = &src.local {
        return Ok(construct::local_model(v[0], v[1]));
    }
    if let Some(v) = &src.local_cy {
        return Ok(construct::local_model_cy(v[0], v[1]));
    }
    if let Some(name) = &src.fixture {
        return fixture(name);
    }
    if let Some(path) = &src.file {
        return graph::io::parse_unchecked(&std::fs::read_to_string(path)?);
    }
    Err(Error::Parse("no graph given".into()))
}

/// Oriented as in the edge listing: from the larger to the smaller vertex index.
fn edge_name(g: &GkmGraph, e: usize) -> String {
    let (s, d) = g.edge(e);
    let (a, b) = if s > d { (s, d) } else { (d, s) };
    format!("{} -> {}", g.label(a), g.label(b))
}

fn sorted_edges(g: &GkmGraph) -> Vec<usize> {
    let mut es: Vec<usize> = (0..g.num_edges()).collect();
    es.sort_by_key(|&e| {
        let (s, d) = g.edge(e);
        (s.max(d), s.min(d))
    });
    es
}

fn fmt_class(b: &[i64]) -> String {
    graph::fmt_weight(b)
}

fn gw_options(a: &GwArgs, g: &GkmGraph) -> Result<GwOptions> {
    let mut o = GwOptions {
        mode: match a.mode {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Evaluate => Mode::Evaluate,
        },
        ..Default::default()
    };
    if a.via_connection {
        o.h = HMode::Connection(Arc::new(build_connection(g)?));
    }
    if a.naive {
        o.markings = MarkingSum::PerIsomorphismClass;
    }
    if a.cotangent_psi {
        o.unstable_psi = UnstablePsi::Cotangent;
    }
    Ok(o)
}

fn parse_beta(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad curve class {s:?}"))))
        .collect()
}

fn indexed(s: &str) -> Result<(usize, &str)> {
    let (i, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected I:VALUE, got {s:?}")))?;
    let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad marking index in {s:?}")))?;
    if i == 0 {
        return Err(Error::Parse("markings are numbered from 1".into()));
    }
    Ok((i, rest))
}

fn run(cmd: Cmd, out: &mut String) -> Result<i32> {
    use std::fmt::Write;
    match cmd {
        Cmd::Validate { src, save } => {
            let g = load_unchecked(&src)?;
            let v = g.validate();
            if v.is_empty() {
                writeln!(out, "valid").unwrap();
                if let Some(p) = save {
                    graph::io::save(&g, &p)?;
                }
                Ok(0)
            } else {
                for x in v {
                    writeln!(out, "{x}").unwrap();
                }
                Ok(2)
            }
        }
        Cmd::Info { src, save } => {
            let g = load(&src)?;
            out.push_str(&g.describe());
            if let Some(p) = save {
                graph::io::save(&g, &p)?;
            }
            Ok(0)
        }
        Cmd::Betti { src } => {
            let b = graph::betti_numbers(&load(&src)?)?;
            let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", s.join(" ")).unwrap();
            Ok(0)
        }
        Cmd::CurveClasses { src } => {
            let g = Arc::new(load(&src)?);
            let lat = CurveLattice::new(g.clone())?;
            let c = lat.edge_chern_numbers();
            for e in sorted_edges(&g) {
                writeln!(out, "{}: {}, Chern number: {}", edge_name(&g, e), fmt_class(&lat.class_of_edge(e)), c[e]).unwrap();
            }
            Ok(0)
        }
        Cmd::Connection { src } => {
            let g = load(&src)?;
            let con = build_connection(&g)?;
            for e in sorted_edges(&g) {
                let (s, d) = g.edge(e);
                let along = if s > d { 2 * e } else { 2 * e + 1 };
                let parts: Vec<String> = con
                    .a_values(&g, along)
                    .into_iter()
                    .filter(|&(f, _, _)| f != along)
                    .map(|(f, t, a)| format!("{} => {} [a = {a}]", graph::fmt_weight(g.weight(f)), graph::fmt_weight(g.weight(t))))
                    .collect();
                writeln!(out, "{}: {}", edge_name(&g, e), parts.join(", ")).unwrap();
            }
            Ok(0)
        }
        Cmd::Chern { src } => {
            let g = load(&src)?;
            let c = chern_numbers(&g)?;
            for e in sorted_edges(&g) {
                writeln!(out, "{}: {}", edge_name(&g, e), c[e]).unwrap();
            }
            Ok(0)
        }
        Cmd::Integrate { src, class } => {
            let g = Arc::new(load(&src)?);
            let c = parse_class(&g, &class)?;
            writeln!(out, "{}", c.integrate()).unwrap();
            Ok(0)
        }
        Cmd::Gw { src, beta, marks, ev, psi, opts } => {
            let g = Arc::new(load(&src)?);
            let lat = CurveLattice::new(g.clone())?;
            let beta = parse_beta(&beta)?;
            let mut classes: Vec<(usize, EquivariantClass)> = Vec::new();
            let mut psis: Vec<(usize, u32)> = Vec::new();
            for s in &ev {
                let (i, e) = indexed(s)?;
                classes.push((i, parse_class(&g, e)?));
            }
            for s in &psi {
                let (i, k) = indexed(s)?;
                psis.push((i, k.trim().parse().map_err(|_| Error::Parse(format!("bad ψ power in {s:?}")))?));
            }
            let used = classes.iter().map(|x| x.0).chain(psis.iter().map(|x| x.0)).max().unwrap_or(0);
            let n = marks.unwrap_or(used);
            if used > n {
                return Err(Error::Parse(format!("marking {used} exceeds n = {n}")));
            }
            let mut ins: Vec<Insertion> = (0..n).map(|_| Insertion::ev(EquivariantClass::one(g.clone()))).collect();
            for (i, c) in classes {
                ins[i - 1].class = ins[i - 1].class.mul(&c)?;
            }
            for (i, k) in psis {
                ins[i - 1].psi += k;
            }
            let o = gw_options(&opts, &g)?;
            writeln!(out, "{}", gromov_witten(&lat, &beta, &ins, &o)?).unwrap();
            Ok(0)
        }
        Cmd::Qh { src, a, b, chern_bound, exceptional_max, nonequivariant, opts } => {
            let g = Arc::new(load(&src)?);
            let lat = CurveLattice::new(g.clone())?;
            let (a, b) = (parse_class(&g, &a)?, parse_class(&g, &b)?);
            let o = gw_options(&opts, &g)?;
            let q = quantum_product_truncated(&lat, &a, &b, chern_bound, exceptional_max, &o)?;
            if nonequivariant {
                let zero = vec![BigRational::from_integer(0.into()); g.rank()];
                for (beta, c) in &q.terms {
                    let vals: Result<Vec<String>> = c.values().iter().map(|v| v.eval(&zero).map(|x| x.to_string())).collect();
                    let vals = vals?;
                    if vals.iter().all(|v| v == "0") {
                        continue;
                    }
                    writeln!(out, "q^{}: [{}]", fmt_class(beta), vals.join(", ")).unwrap();
                }
            } else {
                write!(out, "{q}").unwrap();
            }
            Ok(0)
        }
        Cmd::Cy { k, d, spec, localize } => {
            let s = parse_spec(&spec, k)?;
            writeln!(out, "{}", cy::gw_local_closed_form(s, d)?).unwrap();
            if localize {
                if !matches!(s, LocalSpec::EquivariantlyCy { .. }) {
                    return Err(Error::Unsupported("localization route only for spec cy".into()));
                }
                let k = k as i64;
                let g = Arc::new(construct::local_model_cy(k - 1, -k - 1));
                let lat = CurveLattice::new(g)?;
                let v = gromov_witten(&lat, &[d as i64], &[], &GwOptions::default())?;
                writeln!(out, "{v}").unwrap();
            }
            Ok(0)
        }
        Cmd::Bps { k, kmax, dmax } => {
            if let Some(k) = k {
                writeln!(out, "{}", join(&cy::bps_genus_zero(k, dmax))).unwrap();
            } else {
                let kmax = kmax.unwrap_or(5);
                let head: Vec<String> = (1..=dmax).map(|d| format!("d={d}")).collect();
                writeln!(out, "k\t{}", head.join("\t")).unwrap();
                for k in 0..=kmax {
                    let row: Vec<String> = cy::bps_genus_zero(k, dmax).iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{k}\t{}", row.join("\t")).unwrap();
                }
            }
            Ok(0)
        }
        Cmd::Realizable { src } => {
            let g = Arc::new(load(&src)?);
            let reports = cy::realizability_check(g.clone())?;
            if reports.is_empty() {
                writeln!(out, "pass: no isolated edge with Chern number zero").unwrap();
            }
            for r in reports {
                let name = edge_name(&g, r.edge);
                match r.verdict {
                    Verdict::Pass { case, .. } => writeln!(out, "{name}: pass ({case}); GW = {}", r.invariant),
                    Verdict::Fail { reason, .. } => writeln!(out, "{name}: fail: {reason}"),
                    Verdict::NotApplicable(s) => writeln!(out, "{name}: not applicable: {s}"),
                }
                .unwrap();
            }
            Ok(0)
        }
    }
}

fn join(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_spec(s: &str, k: u32) -> Result<LocalSpec> {
    match s {
        "cy" => Ok(LocalSpec::EquivariantlyCy { k }),
        "twisted" => Ok(LocalSpec::Twisted { k }),
        "generic" => Ok(LocalSpec::Generic { k }),
        _ => match s.strip_prefix("k1:").map(|y| y.parse::<i64>()) {
            Some(Ok(y)) => Ok(LocalSpec::K1Family { y }),
            _ => Err(Error::Parse(format!("unknown specialization {s:?}"))),
        },
    }
}

/// Parse a class expression on `g`.
///
/// Sums of products of atoms, each optionally raised to `^n`: integers,
/// `1`, `c1`, `t<i>` (the i-th equivariant parameter), `pt@L` (point class at
/// vertex L) and `pd@L/L/...` (dual of the subgraph on those vertices), with
/// parentheses. Labels containing `+*^()/ ` are written in braces: `pt@{00+}`.
pub fn parse_class(g: &Arc<GkmGraph>, s: &str) -> Result<EquivariantClass> {
    let mut p = ClassParser { g, s: s.as_bytes(), i: 0 };
    let c = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(c)
}

struct ClassParser<'a> {
    g: &'a Arc<GkmGraph>,
    s: &'a [u8],
    i: usize,
}

impl ClassParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in class expression {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<EquivariantClass> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?.scale(&rat(-1)))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<EquivariantClass> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = acc.mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<EquivariantClass> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let n = self.number().ok_or_else(|| self.err("expected exponent"))?;
            return Ok(base.pow(n as u32));
        }
        Ok(base)
    }

    fn number(&mut self) -> Option<u64> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
    }

    fn label(&mut self) -> Result<usize> {
        let text = if self.s.get(self.i) == Some(&b'{') {
            let start = self.i + 1;
            let end = self.s[start..].iter().position(|&c| c == b'}').ok_or_else(|| self.err("unclosed brace"))? + start;
            self.i = end + 1;
            &self.s[start..end]
        } else {
            let start = self.i;
            while self.i < self.s.len() && !b"+*^()/ ".contains(&self.s[self.i]) {
                self.i += 1;
            }
            &self.s[start..self.i]
        };
        let l = String::from_utf8_lossy(text).into_owned();
        self.g.vertex(&l).ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))
    }

    fn atom(&mut self) -> Result<EquivariantClass> {
        let g = self.g.clone();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let c = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(c)
            }
            Some(b'-') => {
                self.i += 1;
                Ok(self.power()?.scale(&rat(-1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number().ok_or_else(|| self.err("bad integer"))?;
                Ok(EquivariantClass::one(g).scale(&BigRational::from_integer(n.into())))
            }
            _ => {
                let rest = &self.s[self.i..];
                if rest.starts_with(b"pt@") {
                    self.i += 3;
                    let v = self.label()?;
                    Ok(EquivariantClass::point_class(g, v))
                } else if rest.starts_with(b"pd@") {
                    self.i += 3;
                    let mut vs = vec![self.label()?];
                    while self.s.get(self.i) == Some(&b'/') {
                        self.i += 1;
                        vs.push(self.label()?);
                    }
                    poincare_dual_subgraph(g, &vs)
                } else if rest.starts_with(b"c1") {
                    self.i += 2;
                    Ok(EquivariantClass::first_chern_class(g))
                } else if rest.first() == Some(&b't') {
                    self.i += 1;
                    let j = self.number().ok_or_else(|| self.err("expected parameter index"))? as usize;
                    if j == 0 || j > g.rank() {
                        return Err(self.err("parameter index out of range"));
                    }
                    let t = RationalFunction::from_poly(MultiPoly::var(g.rank(), j - 1));
                    EquivariantClass::new(g.clone(), vec![t; g.num_vertices()])
                } else {
                    Err(self.err("expected a class"))
                }
            }
        }
    }
}
