use std::error::Error;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hessk3_core::catalog::lookup;
use hessk3_core::cubic::{disc32, eckardt_data, SylvesterSurface};
use hessk3_core::lattice::{make_lattice, slh_embed, Lattice, LatticeReport};
use hessk3_core::linalg::IntMatrix;
use hessk3_core::moduli::{
    constant_point, divisor_membership, invariants_point, weighted_limit, wps_equal, wps_is_singular, FamilySpec,
    Flavor, WeightedPoint,
};
use hessk3_core::poly::{Ring, Q};
use hessk3_core::repro;

#[derive(Parser)]
#[command(name = "hessk3", version, about = "Hessian K3 surfaces of cubic surfaces: lattices and moduli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named reproduction (`all` runs every task).
    Repro {
        tag: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariants, divisor flags and catalog name of a Sylvester surface.
    Invariants {
        /// Five rationals, e.g. 1,1,1,1,1/4.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Discriminant data of an even lattice.
    Lattice {
        /// JSON Gram matrix such as [[2,1],[1,2]], or a name such as U+<-4>.
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        /// Include the discriminant form.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        json: bool,
    },
    /// Primitive embedding of [[2n, a], [a, 2m]] into U + U + A2(-2).
    Slh {
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(allow_hyphen_values = true)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Points of P(1,2,3,4,5).
    Wps {
        #[command(subcommand)]
        op: WpsOp,
    },
    /// Limit of a degenerating family of Sylvester surfaces.
    Limit {
        /// JSON {"lambda": [[[exponent, "coefficient"], ...], ...]} or a path to such a file.
        #[arg(long)]
        family: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum WpsOp {
    /// Equality as weighted points.
    Eq {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Read the points as sigma coordinates.
        #[arg(long)]
        sigma: bool,
    },
    /// Membership in the singular locus.
    Singular {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        sigma: bool,
    },
}

/// Bad user input; maps to exit status 2.
#[derive(Debug)]
struct Malformed(String);

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl Error for Malformed {}

fn malformed(e: impl std::fmt::Display) -> Box<dyn Error> {
    Box::new(Malformed(e.to_string()))
}

type Outcome = Result<bool, Box<dyn Error>>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_repro(tag: &str, as_json: bool) -> Outcome {
    let reports = repro::run(tag).map_err(|e| malformed(format!("{e}; known tags: {}", repro::tags().join(", "))))?;
    let pass = reports.iter().all(|r| r.pass);
    if as_json {
        let v = if tag == "all" { serde_json::to_value(&reports)? } else { serde_json::to_value(&reports[0])? };
        print_json(&v);
    } else {
        for r in &reports {
            print!("{}", repro::render(r));
        }
        if reports.len() > 1 {
            let passed = reports.iter().filter(|r| r.pass).count();
            println!("{passed} of {} tasks pass", reports.len());
        }
    }
    Ok(pass)
}

fn cmd_invariants(lambda: &str, as_json: bool) -> Outcome {
    let s = SylvesterSurface::parse(lambda).map_err(malformed)?;
    let p = invariants_point(&s.lambda).map_err(malformed)?;
    let flags = divisor_membership(&p)?;
    let name = lookup(&p);
    let eckardt = if s.lambda.iter().any(Ring::is_zero) { None } else { Some(eckardt_data(&s)?.count) };
    let d32 = disc32(&s);
    if as_json {
        print_json(&json!({
            "point": p.to_string(),
            "flags": flags,
            "catalog_name": name,
            "eckardt_points": eckardt,
            "disc32": d32.to_string(),
        }));
    } else {
        println!("lambda       {s}");
        println!("I-point      {p}");
        println!("catalog      {}", name.unwrap_or("-"));
        println!("disc32       {d32}");
        if let Some(k) = eckardt {
            println!("Eckardt      {k}");
        }
        let v = serde_json::to_value(&flags)?;
        for (k, b) in v.as_object().expect("struct") {
            println!("{k:<12} {b}");
        }
    }
    Ok(true)
}

fn parse_gram(s: &str) -> Result<Lattice, Box<dyn Error>> {
    if !s.trim_start().starts_with('[') {
        return make_lattice(s).map_err(malformed);
    }
    let v: Value = serde_json::from_str(s).map_err(malformed)?;
    let rows = v.as_array().ok_or_else(|| malformed("gram must be an array of rows"))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| malformed("gram rows must be arrays"))?;
        let row = r
            .iter()
            .map(|x| match x {
                Value::Number(n) => n.as_i64().map(Into::into).ok_or_else(|| malformed(format!("not an integer: {n}"))),
                Value::String(t) => t.parse().map_err(|_| malformed(format!("not an integer: {t}"))),
                other => Err(malformed(format!("not an integer: {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    let n = out.len();
    let m = IntMatrix::from_rows(out, n).map_err(malformed)?;
    Lattice::new(m).map_err(malformed)
}

fn cmd_lattice(gram: &str, report: bool, as_json: bool) -> Outcome {
    let l = parse_gram(gram)?;
    let (p, q, z) = l.signature();
    if as_json {
        let mut v = json!({"rank": l.rank(), "det": l.det().to_string(), "signature": [p, q, z]});
        if report {
            v["report"] = serde_json::to_value(LatticeReport::new(&l)?)?;
        }
        print_json(&v);
    } else {
        println!("gram         {}", l.gram());
        println!("rank         {}", l.rank());
        println!("det          {}", l.det());
        println!("signature    ({p}, {q}, {z})");
        if report {
            let r = LatticeReport::new(&l)?;
            println!("group        {:?}", r.invariant_factors);
            println!("q-values     {:?}", r.q_values);
        }
    }
    Ok(true)
}

fn cmd_slh(n: &str, m: &str, a: &str) -> Outcome {
    let int = |s: &str| s.parse().map_err(|_| malformed(format!("not an integer: {s}")));
    let (n, m, a) = (int(n)?, int(m)?, int(a)?);
    match slh_embed(&n, &m, &a) {
        Some((x, y)) => {
            let show = |v: &[_]| v.iter().map(ToString::to_string).collect::<Vec<String>>().join(", ");
            println!("x = ({})", show(&x));
            println!("y = ({})", show(&y));
        }
        None => println!("no embedding"),
    }
    Ok(true)
}

fn point(s: &str, sigma: bool) -> Result<WeightedPoint<Q>, Box<dyn Error>> {
    WeightedPoint::parse(s, if sigma { Flavor::Sigma } else { Flavor::I }).map_err(malformed)
}

fn cmd_wps(op: &WpsOp) -> Outcome {
    match op {
        WpsOp::Eq { p, q, sigma } => println!("{}", wps_equal(&point(p, *sigma)?, &point(q, *sigma)?)?),
        WpsOp::Singular { p, sigma } => println!("{}", wps_is_singular(&point(p, *sigma)?)),
    }
    Ok(true)
}

fn cmd_limit(family: &str, as_json: bool) -> Outcome {
    let text = if family.trim_start().starts_with('{') {
        family.to_string()
    } else {
        std::fs::read_to_string(family).map_err(|e| malformed(format!("{family}: {e}")))?
    };
    let spec: FamilySpec = serde_json::from_str(&text).map_err(malformed)?;
    let fam = spec.to_family().map_err(malformed)?;
    let lim = weighted_limit(&fam).map_err(malformed)?;
    let p = constant_point(&lim.point).ok_or_else(|| malformed("limit depends on parameters other than t"))?;
    let name = lookup(&p);
    if as_json {
        print_json(&json!({
            "point": p.to_string(),
            "e": lim.e.to_string(),
            "d": lim.d,
            "catalog_name": name,
        }));
    } else {
        println!("limit        {p}");
        println!("exponent     {} (t = u^{})", lim.e, lim.d);
        println!("catalog      {}", name.unwrap_or("-"));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Repro { tag, json } => cmd_repro(tag, *json),
        Command::Invariants { lambda, json } => cmd_invariants(lambda, *json),
        Command::Lattice { gram, report, json } => cmd_lattice(gram, *report, *json),
        Command::Slh { n, m, a } => cmd_slh(n, m, a),
        Command::Wps { op } => cmd_wps(op),
        Command::Limit { family, json } => cmd_limit(family, *json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<Malformed>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

