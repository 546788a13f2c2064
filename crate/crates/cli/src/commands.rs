use std::error::Error as StdError;
use std::fs;

use knotkit::coloring::{count_colorings, three_color_table, QuandleTable};
use knotkit::diagram::{parse_pd, recombination_step, recombination_template, standard};
use knotkit::goedel::{decode, encode, fixed_point, shift, Formula};
use knotkit::knotset::{knotset_of, ordinal, Mode};
use knotkit::quaternion::{belt_class, quaternion_to_rotation, word_to_quaternion, TwistWord};
use knotkit::rewrite::{scramble_traced, simplify, simplify_traced, SimplifyConfig};
use knotkit::tait::{effective_conductance, laplacian_conductance, tait_graph};
use knotkit::{Diagram, Network, Quat, Rational};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Command, DiagramSource};

type Outcome = Result<Report, Box<dyn StdError>>;

const DEFAULT_BUDGET: usize = 100_000;

fn load(source: &DiagramSource) -> Result<Diagram, Box<dyn StdError>> {
    if let Some(name) = &source.standard {
        return Ok(standard(name)?);
    }
    if let Some(path) = &source.file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(parse_pd(&text)?);
    }
    Ok(parse_pd(source.pd.as_deref().unwrap_or_default())?)
}

fn budget(arg: Option<usize>) -> Result<usize, Box<dyn StdError>> {
    if let Some(b) = arg {
        return Ok(b);
    }
    match std::env::var("KNOTKIT_BUDGET") {
        Ok(v) => Ok(v
            .trim()
            .parse()
            .map_err(|_| format!("KNOTKIT_BUDGET must be a count, got {v:?}"))?),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn describe(r: &mut Report, d: &Diagram) {
    r.field("pd", d.render());
    r.field("crossings", d.crossing_count());
    r.field("components", d.components().len());
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Parse(src) => {
            let d = load(&src)?;
            let mut r = Report::new("parse");
            describe(&mut r, &d.normalized());
            r.field("diagram", d.to_json());
            Ok(r)
        }
        Command::Validate(src) => validate(&src),
        Command::Invariants { source, quandle } => invariants(&source, &quandle),
        Command::Simplify {
            source,
            budget: b,
            depth,
        } => {
            let d = load(&source)?;
            let config = SimplifyConfig {
                budget: budget(b)?,
                excursion_depth: depth,
            };
            let out = simplify_traced(&d, &config);
            let mut r = Report::new("simplify");
            r.field("input_crossings", d.crossing_count());
            describe(&mut r, &out.diagram);
            r.field("states_visited", out.states_visited);
            r.field("budget_exhausted", out.budget_exhausted);
            r.field(
                "moves",
                out.trace
                    .iter()
                    .map(|m| m.kind().to_string())
                    .collect::<Vec<_>>(),
            );
            Ok(r)
        }
        Command::Scramble {
            source,
            seed,
            moves,
        } => {
            let d = load(&source)?;
            let (out, trace) = scramble_traced(&d, moves, seed);
            let mut r = Report::new("scramble");
            r.seed(seed);
            describe(&mut r, &out);
            r.field("moves", serde_json::to_value(&trace)?);
            Ok(r)
        }
        Command::Tait(src) => {
            let d = load(&src)?;
            let g = tait_graph::<Rational>(&d);
            let mut r = Report::new("tait");
            r.field("nodes", g.nodes);
            r.field("edges", edges_json(&g));
            Ok(r)
        }
        Command::Conductance {
            standard: s,
            file,
            pd,
            network,
            terminals,
        } => conductance(
            DiagramSource {
                standard: s,
                file,
                pd,
            },
            network,
            &terminals,
        ),
        Command::Knotset { source, mode } => {
            let d = load(&source)?;
            let m = knotset_of(&d, mode.parse::<Mode>()?);
            let mut r = Report::new("knotset");
            r.field("mode", mode);
            r.field("entities", m.names.clone());
            r.field("equations", m.equations());
            Ok(r)
        }
        Command::Ordinal { n } => {
            let o = ordinal(n);
            let mut r = Report::new("ordinal");
            r.field("n", n);
            r.field("equations", o.to_structure().equations());
            r.check(
                "curve k has k members",
                (0..=n).all(|k| o.members(k).len() == k),
            );
            Ok(r)
        }
        Command::Recombine { steps, budget: b } => recombine(steps, budget(b)?),
        Command::Belt { word } => belt(&word),
        Command::Goedel { formula, code } => goedel(formula.as_deref(), code.as_deref()),
    }
}

fn validate(src: &DiagramSource) -> Outcome {
    let d = load(src)?;
    let v = d.validate();
    let mut r = Report::new("validate");
    r.field("vertices", v.vertices);
    r.field("edges", v.edges);
    r.field("faces", v.faces);
    r.field("pieces", v.pieces);
    r.field("failures", v.failures.clone());
    r.check("every arc in two slots", v.arc_degree_ok);
    r.check("components close up", v.closure_ok);
    r.check("V - E + F = 2 per piece", v.euler_ok);
    Ok(r)
}

fn invariants(src: &DiagramSource, quandle: &str) -> Outcome {
    let d = load(src)?;
    let table = if quandle == "3color" {
        three_color_table()
    } else {
        let text = fs::read_to_string(quandle).map_err(|e| format!("{quandle}: {e}"))?;
        QuandleTable::parse(&text)?
    };
    let mut r = Report::new("invariants");
    describe(&mut r, &d);
    r.field("writhe", d.writhe().ok());
    r.field(
        "linking_matrix",
        d.linking_matrix()
            .ok()
            .map(|m| json!(m))
            .unwrap_or(Value::Null),
    );
    r.field("quandle", quandle);
    r.field("coloring_count", count_colorings(&d, &table)?);
    Ok(r)
}

fn edges_json(g: &Network) -> Value {
    g.edges
        .iter()
        .map(|(u, v, c)| json!([u, v, c.to_string()]))
        .collect()
}

fn conductance(
    src: DiagramSource,
    network: Option<std::path::PathBuf>,
    terminals: &[usize],
) -> Outcome {
    let g: Network = match network {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            Network::parse(&text)?
        }
        None if src.standard.is_some() || src.file.is_some() || src.pd.is_some() => {
            tait_graph(&load(&src)?)
        }
        None => return Err("one of --standard, --file, --pd or --network is required".into()),
    };
    let (s, t) = (terminals[0], terminals[1]);
    let value = effective_conductance(&g, s, t)?;
    let oracle = laplacian_conductance(&g, s, t)?;
    let mut r = Report::new("conductance");
    r.field("terminals", json!([s, t]));
    r.field("nodes", g.nodes);
    r.field("edges", edges_json(&g));
    r.field("conductance", value.to_string());
    r.check(
        "elimination matches Laplacian determinants",
        value == oracle,
    );
    Ok(r)
}

fn recombine(steps: usize, budget: usize) -> Outcome {
    let (mut d, mut site) = recombination_template();
    let table = three_color_table();
    let mut r = Report::new("recombine");
    r.field("template", d.render());
    let mut rows = Vec::new();
    for step in 1..=steps {
        (d, site) = recombination_step(&d, site)?;
        let comps = d.components().len();
        let lk = d.linking_matrix()?;
        let linking = if comps == 2 {
            json!(lk[0][1].abs())
        } else {
            Value::Null
        };
        rows.push(json!({
            "step": step,
            "components": comps,
            "linking": linking,
            "signed_linking": if comps == 2 { json!(lk[0][1]) } else { Value::Null },
            "coloring_count": count_colorings(&d, &table)?,
            "crossings": d.crossing_count(),
            "simplified_crossings": simplify(&d, budget).crossing_count(),
            "pd": d.render(),
        }));
    }
    r.field("steps", rows);
    Ok(r)
}

fn belt(word: &str) -> Outcome {
    let w: TwistWord = word.parse()?;
    let q: Quat = word_to_quaternion(&w);
    let rot = quaternion_to_rotation(&q)?;
    let mut r = Report::new("belt");
    r.field("word", w.to_string());
    r.field("quaternion", q.to_string());
    let rows: Vec<Value> = rot
        .rows
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    r.field("rotation", rows);
    match belt_class::<num_rational::Rational64>(&w) {
        Ok(c) => {
            r.field("closed_loop", true);
            r.field("class", c);
        }
        Err(knotkit::Error::NotALoop) => {
            r.field("closed_loop", false);
            r.field("class", Value::Null);
        }
        Err(e) => return Err(e.into()),
    }
    r.check(
        "q and -q give the same rotation",
        quaternion_to_rotation(&-q)? == rot,
    );
    Ok(r)
}

fn goedel(formula: Option<&str>, code: Option<&str>) -> Outcome {
    let mut r = Report::new("goedel");
    let f: Formula = match (formula, code) {
        (_, Some(c)) => {
            let g: BigUint = c
                .trim()
                .parse()
                .map_err(|_| format!("not a natural number: {c:?}"))?;
            decode(&g)
        }
        (Some(text), None) => text.parse()?,
        (None, None) => return Err("give a formula or --code".into()),
    };
    let g = encode(&f);
    r.field("formula", f.to_string());
    r.field("g", g.to_string());
    if f.has_free_u() {
        let shifted = shift(&g)?;
        r.field("shift", shifted.to_string());
        r.field("shifted_formula", decode(&shifted).to_string());
    }
    if f.has_shift_of_u() {
        let fp = fixed_point(&f)?;
        r.field("fixed_point", fp.result.to_string());
        r.check("the fixed point names its own code", fp.verified);
    }
    Ok(r)
}
