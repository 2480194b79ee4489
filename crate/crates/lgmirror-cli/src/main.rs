use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lgmirror::amodel::{fjrw_four_point, AResult, Method};
use lgmirror::arith::fmt_rat;
use lgmirror::bmodel::sg_four_point;
use lgmirror::mirror::{degree_check, product_law_violations, psi, tensor_law_holds};
use lgmirror::selection::{classify_type, dimension_axiom, integer_degree_axiom, line_bundle_degrees, CorrelatorSpec};
use lgmirror::symmetry::{enumerate_group, group_cap};
use lgmirror::verify::verify;
use lgmirror::wdvv::{fermat_closure, LinearIdentity};
use lgmirror::{parse, AtomicKind, InvertiblePolynomial, JacobiRing, LgError, Rational};

#[derive(Parser)]
#[command(name = "lgmirror", version, about = "Exact checks of Landau-Ginzburg mirror symmetry for invertible polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read the polynomial from a file.
    #[arg(long, global = true, conflicts_with = "expr")]
    input: Option<String>,
    /// Polynomial such as "x1^3*x2 + x2^4".
    #[arg(long, global = true)]
    expr: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include boundary decorations and reduction steps.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compare both sides of the mirror identity for every variable.
    Verify { poly: Option<String> },
    /// Atomic decomposition, weights and group data.
    Classify { poly: Option<String> },
    /// The mirror map on the standard basis of Jac(W^T).
    Mirror { poly: Option<String> },
    /// Standard basis of the Jacobi ring.
    Jacobi {
        poly: Option<String>,
        /// Use Jac(W^T) instead of Jac(W).
        #[arg(long)]
        transpose: bool,
    },
    /// Selection rules for a correlator of monomials in Jac(W^T).
    Axioms {
        poly: Option<String>,
        /// Comma-separated insertions, e.g. "x1,x1,x1^3,x1^3".
        #[arg(long)]
        insertions: String,
    },
    /// Final-type four-point correlator of one variable.
    Correlator {
        poly: Option<String>,
        #[arg(long, value_enum)]
        side: Side,
        /// 1-based variable index.
        #[arg(long)]
        var: usize,
    },
    /// WDVV identities behind the A-side value of one variable.
    Wdvv {
        poly: Option<String>,
        #[arg(long)]
        var: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

enum Failure {
    Lg(LgError),
    Usage(String),
}

impl From<LgError> for Failure {
    fn from(e: LgError) -> Self {
        Failure::Lg(e)
    }
}

/// 2 bad input, 3 outside the theorem, 4 internal.
fn exit_code(e: &LgError) -> u8 {
    match e {
        LgError::UnsupportedByTheorem(_) | LgError::Stabilization | LgError::NotFinalType(_) => 3,
        LgError::Internal(_)
        | LgError::InconsistentInput(_)
        | LgError::Underdetermined(_)
        | LgError::LaurentWindow(..)
        | LgError::ConcavityViolated(_)
        | LgError::WrongConfiguration(_) => 4,
        _ => 2,
    }
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let (msg, code) = match f {
                Failure::Lg(e) => (e.to_string(), exit_code(&e)),
                Failure::Usage(m) => (m, 2),
            };
            if cli.json {
                println!("{}", json!({ "error": msg, "exit_code": code }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn load(cli: &Cli, positional: &Option<String>) -> Result<InvertiblePolynomial, Failure> {
    let text = match (positional, &cli.expr, &cli.input) {
        (Some(p), _, _) => p.clone(),
        (None, Some(e), _) => e.clone(),
        (None, None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?
        }
        (None, None, None) => return Err(Failure::Usage("no polynomial given; use --expr or --input".into())),
    };
    Ok(parse(text.trim())?)
}

fn var_index(w: &InvertiblePolynomial, var: usize) -> Result<usize, Failure> {
    if var == 0 || var > w.nvars() {
        return Err(LgError::VariableOutOfRange(var).into());
    }
    Ok(var - 1)
}

fn rats(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(fmt_rat).collect()
}

fn joined(xs: &[Rational]) -> String {
    rats(xs).join(", ")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Verify { poly } => cmd_verify(&load(cli, poly)?),
        Command::Classify { poly } => cmd_classify(&load(cli, poly)?),
        Command::Mirror { poly } => cmd_mirror(&load(cli, poly)?),
        Command::Jacobi { poly, transpose } => cmd_jacobi(&load(cli, poly)?, *transpose),
        Command::Axioms { poly, insertions } => cmd_axioms(&load(cli, poly)?, insertions),
        Command::Correlator { poly, side, var } => {
            let w = load(cli, poly)?;
            let i = var_index(&w, *var)?;
            cmd_correlator(&w, *side, i, cli.trace)
        }
        Command::Wdvv { poly, var } => {
            let w = load(cli, poly)?;
            let i = var_index(&w, *var)?;
            cmd_wdvv(&w, i)
        }
    }
}

fn cmd_verify(w: &InvertiblePolynomial) -> Result<Output, Failure> {
    let report = verify(w);
    let mut text = format!("W = {}\n", report.polynomial);
    for e in &report.entries {
        let v = |x: &Option<Rational>| x.as_ref().map(fmt_rat).unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "x{}: q = {}, A = {}, B = {}, method = {}, {:?}",
            e.i,
            fmt_rat(&e.q_i),
            v(&e.a_value),
            v(&e.b_value),
            e.method_a.map(Method::name).unwrap_or("-"),
            e.status
        ));
        if let Some(r) = &e.reason {
            text.push_str(&format!(" ({r})"));
        }
        text.push('\n');
    }
    text.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
    let code = report.exit_code() as u8;
    Ok(Output { json: serde_json::to_value(&report).expect("report serializes"), text, code })
}

fn kind_name(k: AtomicKind) -> &'static str {
    match k {
        AtomicKind::Fermat => "fermat",
        AtomicKind::Chain => "chain",
        AtomicKind::Loop => "loop",
    }
}

fn cmd_classify(w: &InvertiblePolynomial) -> Result<Output, Failure> {
    let summands: Vec<Value> = w
        .summands()
        .iter()
        .map(|s| json!({ "kind": kind_name(s.kind), "exponents": s.exponents, "vars": s.vars.iter().map(|v| v + 1).collect::<Vec<_>>() }))
        .collect();
    let order = w.group_order().to_string();
    let enumerated = enumerate_group(w, group_cap()).map(|g| g.len()).ok();
    let json = json!({
        "polynomial": w.to_string(),
        "transpose": w.transpose().to_string(),
        "summands": summands,
        "weights": rats(w.weights()),
        "central_charge": fmt_rat(w.central_charge()),
        "group_order": order,
        "group_enumerated": enumerated,
    });
    let mut text = format!("W = {}\nW^T = {}\n", w, w.transpose());
    for s in w.summands() {
        text.push_str(&format!("{} {:?} on x{:?}\n", kind_name(s.kind), s.exponents, s.vars.iter().map(|v| v + 1).collect::<Vec<_>>()));
    }
    text.push_str(&format!("weights: {}\nc_hat: {}\n|G_max|: {}\n", joined(w.weights()), fmt_rat(w.central_charge()), order));
    Ok(Output { json, text, code: 0 })
}

fn cmd_mirror(w: &InvertiblePolynomial) -> Result<Output, Failure> {
    let ring = JacobiRing::of_transpose(w);
    let mut rows = Vec::new();
    let mut text = format!("Jac({}) -> A-model state space of {}\n", w.transpose(), w);
    for m in ring.basis() {
        let class = psi(w, m)?;
        let weight = ring.weight(m);
        text.push_str(&format!(
            "{m}: wt {}, sector ({}), deg {}{}\n",
            fmt_rat(&weight),
            joined(&class.sector.phases),
            fmt_rat(&class.degree),
            class.broad_monomial.as_ref().map(|b| format!(", broad {b}")).unwrap_or_default()
        ));
        rows.push(json!({ "monomial": m.to_string(), "weight": fmt_rat(&weight), "class": class }));
    }
    let violations = degree_check(w)?;
    let product = product_law_violations(w, &ring);
    let tensor = tensor_law_holds(w, &ring)?;
    text.push_str(&format!(
        "degree preserved: {}\nproduct law: {}\ntensor law: {}\n",
        violations.is_empty(),
        product.is_empty(),
        tensor
    ));
    let json = json!({
        "polynomial": w.to_string(),
        "basis": rows,
        "degree_violations": violations,
        "product_law_violations": product,
        "tensor_law": tensor,
    });
    let ok = violations.is_empty() && product.is_empty() && tensor;
    Ok(Output { json, text, code: if ok { 0 } else { 1 } })
}

fn cmd_jacobi(w: &InvertiblePolynomial, transpose: bool) -> Result<Output, Failure> {
    let f = if transpose { w.transpose() } else { w.clone() };
    let ring = JacobiRing::new(&f);
    let basis: Vec<String> = ring.basis().iter().map(|m| m.to_string()).collect();
    let mut text = format!("Jac({f}): mu = {}, top = {}\n", ring.mu(), ring.top());
    for (m, b) in basis.iter().zip(ring.basis()) {
        text.push_str(&format!("{m}  wt {}\n", fmt_rat(&ring.weight(b))));
    }
    let json = json!({
        "polynomial": f.to_string(),
        "mu": ring.mu(),
        "top": ring.top().to_string(),
        "basis": basis,
        "weights": rats(ring.weights()),
    });
    Ok(Output { json, text, code: 0 })
}

fn cmd_axioms(w: &InvertiblePolynomial, insertions: &str) -> Result<Output, Failure> {
    let n = w.nvars();
    let ms = insertions
        .split(',')
        .map(|t| lgmirror::poly::parse_monomial(t.trim(), n))
        .collect::<Result<Vec<_>, _>>()?;
    let ring = JacobiRing::of_transpose(w);
    let spec = CorrelatorSpec::new(w, &ms)?;
    let sectors: Vec<_> = ms.iter().map(|m| lgmirror::mirror::sector_of_monomial(w, m)).collect();
    let degrees = line_bundle_degrees(w, &sectors);
    let dim = dimension_axiom(w, &ms);
    let integral = integer_degree_axiom(w, &ms);
    let ty = classify_type(w, &ring, &spec);
    let text = format!(
        "dimension axiom: {dim}\ninteger degrees: {integral}\nline degrees: {}\nK = ({})\nsum K = {}\ntype: {ty:?}\n",
        joined(&degrees),
        joined(&spec.k),
        fmt_rat(&spec.k_sum())
    );
    let json = json!({
        "insertions": spec.insertions.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "dimension_axiom": dim,
        "integer_degree_axiom": integral,
        "line_degrees": rats(&degrees),
        "K": rats(&spec.k),
        "K_sum": fmt_rat(&spec.k_sum()),
        "type": format!("{ty:?}"),
        "spec": spec,
    });
    Ok(Output { json, text, code: 0 })
}

fn a_json(a: &AResult, trace: bool) -> Value {
    let mut v = json!({ "value": fmt_rat(&a.value), "method": a.method });
    if let Some(c) = &a.case1 {
        v["case1"] = json!(c);
    }
    if !a.wdvv_trail.is_empty() {
        v["wdvv_trail"] = json!(a.wdvv_trail);
    }
    if trace {
        v["decorations"] = json!(a.decorations);
    }
    v
}

fn cmd_correlator(w: &InvertiblePolynomial, side: Side, i: usize, trace: bool) -> Result<Output, Failure> {
    match side {
        Side::A => {
            let a = fjrw_four_point(w, i)?;
            let mut text = format!("A-side x{}: {} (method {})\n", i + 1, fmt_rat(&a.value), a.method.name());
            if trace {
                for d in &a.decorations {
                    text.push_str(&format!(
                        "{:?}: gamma+ ({}), ell+ {:?}, ell- {:?}\n",
                        d.splitting,
                        joined(&d.gamma_plus.phases),
                        d.ell_plus,
                        d.ell_minus
                    ));
                }
            }
            Ok(Output { json: a_json(&a, trace), text, code: 0 })
        }
        Side::B => {
            let b = sg_four_point(w, i, trace)?;
            let mut text = format!("B-side x{}: {}\n", i + 1, fmt_rat(&b.value));
            for line in &b.reduction_trace {
                text.push_str(line);
                text.push('\n');
            }
            let mut json = json!({
                "value": fmt_rat(&b.value),
                "brieskorn_check": b.brieskorn_check,
                "zeta_first_order_trivial": b.zeta_first_order_trivial,
                "flat_linear": b.flat_linear,
                "quadratic_corrections_vanish": b.quadratic_corrections_vanish,
            });
            if trace {
                json["reduction_trace"] = json!(b.reduction_trace);
            }
            Ok(Output { json, text, code: 0 })
        }
    }
}

fn fmt_identity(id: &LinearIdentity) -> String {
    let terms: Vec<String> = id
        .terms
        .iter()
        .map(|t| {
            let ins: Vec<String> = t.insertions.iter().map(|m| m.to_string()).collect();
            let val = t.value.as_ref().map(fmt_rat).unwrap_or_else(|| "?".into());
            format!("({}) <{}> [{}]", fmt_rat(&t.coefficient), ins.join(", "), val)
        })
        .collect();
    format!("{} = 0", terms.join(" + "))
}

fn cmd_wdvv(w: &InvertiblePolynomial, i: usize) -> Result<Output, Failure> {
    let a = fjrw_four_point(w, i)?;
    let mut text = format!("x{}: {} via {}\n", i + 1, fmt_rat(&a.value), a.method.name());
    let mut json = a_json(&a, false);
    for id in &a.wdvv_trail {
        text.push_str(&fmt_identity(id));
        text.push('\n');
    }
    if let Some(c) = &a.case1 {
        text.push_str(&format!(
            "X = {}, X1 = {}, X2 = {}, X3 = {}\n",
            fmt_rat(&c.x),
            fmt_rat(&c.x1),
            fmt_rat(&c.x2),
            fmt_rat(&c.x3)
        ));
    }
    let (s, _) = w.locate(i).expect("variable lies in a summand");
    if w.summands()[s].kind == AtomicKind::Fermat {
        let local = w.summand_polynomial(s);
        let (table, report) = fermat_closure(&local, std::slice::from_ref(&a.value))?;
        text.push_str(&format!(
            "closure: {} of {} four-point values determined by {} identities, consistent: {}\n",
            report.determined, report.candidates, report.identities, report.consistent
        ));
        let values: Vec<Value> = table
            .values()
            .iter()
            .map(|(k, v)| {
                let ins: Vec<String> = k.iter().map(|&b| table.ring().basis()[b].to_string()).collect();
                json!({ "insertions": ins, "value": fmt_rat(v) })
            })
            .collect();
        json["closure"] = json!({ "report": report, "values": values });
    } else if a.wdvv_trail.is_empty() && a.case1.is_none() {
        text.push_str("no WDVV identities needed\n");
    }
    Ok(Output { json, text, code: 0 })
}
