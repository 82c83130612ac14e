use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use sprout_core::canon::isomorphic;
use sprout_core::geometry::{extract_sprout, render_svg, ExtractionResult, PlanarIfs, RenderOptions};
use sprout_core::gt::{transformation_graph, DEFAULT_WALK_CAP};
use sprout_core::main_tree::ramification_report;
use sprout_core::phi::phi_table;
use sprout_core::refine::iterate_square;
use sprout_core::{AddressClass, AddressSetClass, Admissibility, AnalysisError, GeometryError, IndexDiagram, PointId, Sprout};

use crate::{text, Command, Format, GraphFormat};

pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(stdout: String) -> Outcome {
        Outcome { code: 1, stdout, stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

impl From<AnalysisError> for Outcome {
    fn from(e: AnalysisError) -> Outcome {
        let code = match e {
            AnalysisError::IndexOutOfRange(_) | AnalysisError::UnknownVertex(_) => 2,
            _ => 1,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

impl From<GeometryError> for Outcome {
    fn from(e: GeometryError) -> Outcome {
        let code = match e {
            GeometryError::Syntax(_) | GeometryError::InvalidSystem(_) => 2,
            _ => 1,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

type Result<T> = std::result::Result<T, Outcome>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_sprout(path: &Path) -> Result<Sprout> {
    Sprout::parse(&read(path)?).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn load_ifs(path: &Path) -> Result<PlanarIfs> {
    PlanarIfs::parse(&read(path)?).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn run(command: Command) -> Outcome {
    let result = match command {
        Command::Validate { sprout, format } => validate(&sprout, format),
        Command::Diagram { sprout } => load_sprout(&sprout).map(|s| Outcome::ok(IndexDiagram::new(&s).to_dot())),
        Command::Addresses { sprout, p, expand, format } => addresses(&sprout, p.as_deref(), expand, format),
        Command::Classify { sprout, format } => classify(&sprout, format),
        Command::Admissible { sprout, format } => admissible(&sprout, format),
        Command::Phi { sprout, format } => phi(&sprout, format),
        Command::Gt { sprout, format } => gt(&sprout, format),
        Command::Report { sprout, format } => report(&sprout, format),
        Command::Square { sprout, n } => square(&sprout, n),
        Command::Iso { a, b, format } => iso(&a, &b, format),
        Command::Extract { ifs, depth, tol, format } => extract(&ifs, depth, tol, format),
        Command::Render { ifs, sprout, depth, width } => render(&ifs, sprout.as_deref(), depth, width),
    };
    result.unwrap_or_else(|outcome| outcome)
}

fn validate(path: &Path, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let report = s.validate();
    let out = match format {
        Format::Json => to_json(&report),
        Format::Text => text::validation(&report),
    };
    Ok(if report.is_valid() && report.is_regular { Outcome::ok(out) } else { Outcome::verdict(out) })
}

/// Addresses of a boundary point, or of any other black vertex `b` as
/// `k·π⁻¹(q)` over its edges `(w_k, b)` labeled `q`.
fn addresses(path: &Path, only: Option<&str>, expand: usize, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let d = IndexDiagram::new(&s);
    let row = |p: PointId| -> Result<text::AddressRow> {
        let class = d.classify(p);
        let list = if class.is_finite() { d.enumerate_addresses(p)? } else { Vec::new() };
        Ok(text::AddressRow { point: s.point_name(p).to_string(), class, addresses: list })
    };
    let rows = match only {
        None => s.points().map(row).collect::<Result<Vec<_>>>()?,
        Some(name) => match (s.find_point(name), s.find_black(name)) {
            (Some(p), _) => vec![row(p)?],
            (None, Some(b)) => {
                let mut list = Vec::new();
                for e in s.black_edges(b) {
                    // Refuses labels with infinitely many addresses.
                    let label = d.enumerate_addresses(e.label)?;
                    list.extend(label.iter().map(|a| a.prefixed(&[e.white.index()])));
                }
                list.sort();
                list.dedup();
                let class = AddressSetClass {
                    class: AddressClass::Finite { count: list.len() },
                    witness: format!("one address per edge label at `{name}`"),
                };
                vec![text::AddressRow { point: name.to_string(), class, addresses: list }]
            }
            (None, None) => return Err(Outcome::usage(format!("no black vertex `{name}`"))),
        },
    };
    Ok(Outcome::ok(match format {
        Format::Text => text::addresses(&rows, expand),
        Format::Json => to_json(&text::addresses_json(&rows, expand)),
    }))
}

fn classify(path: &Path, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let d = IndexDiagram::new(&s);
    let rows: Vec<_> = s
        .points()
        .map(|p| json!({ "point": s.point_name(p), "class": d.classify(p) }))
        .collect();
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&rows),
        Format::Text => s.points().map(|p| text::class_line(s.point_name(p), &d.classify(p))).collect(),
    }))
}

fn admissible(path: &Path, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let verdict = IndexDiagram::new(&s).admissibility();
    let (ok, value, line) = match &verdict {
        Admissibility::Admissible => (true, json!({ "admissible": true }), "admissible\n".to_string()),
        Admissibility::Inadmissible { p, q, shared } => {
            let (p, q) = (s.point_name(*p), s.point_name(*q));
            (
                false,
                json!({ "admissible": false, "p": p, "q": q, "shared": shared }),
                format!("inadmissible: {p} and {q} share the address {shared}\n"),
            )
        }
    };
    let out = match format {
        Format::Json => to_json(&value),
        Format::Text => line,
    };
    Ok(if ok { Outcome::ok(out) } else { Outcome::verdict(out) })
}

fn phi(path: &Path, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let rows = phi_table(&s)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&rows),
        Format::Text => text::phi(&rows),
    }))
}

fn gt(path: &Path, format: GraphFormat) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let g = transformation_graph(&s)?;
    Ok(Outcome::ok(match format {
        GraphFormat::Dot => g.to_dot(&s),
        GraphFormat::Json => {
            let walks = g.walks(DEFAULT_WALK_CAP)?;
            to_json(&json!({
                "subsets": g.subsets.iter().map(|q| q.names(&s)).collect::<Vec<_>>(),
                "cyclic": (0..g.subsets.len()).filter(|&u| g.is_cyclic(u)).collect::<Vec<_>>(),
                "subset_arcs": g.subset_arcs,
                "black_arcs": g.black_arcs.iter().map(|&(u, b)| json!([u, s.black_name(b)])).collect::<Vec<_>>(),
                "point_arcs": g.point_arcs.iter().map(|&(u, p)| json!([u, s.point_name(p)])).collect::<Vec<_>>(),
                "walks": text::walks_json(&s, &walks),
            }))
        }
    }))
}

fn report(path: &Path, format: Format) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let rows = ramification_report(&s)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&rows),
        Format::Text => text::report(&rows),
    }))
}

fn square(path: &Path, n: u32) -> Result<Outcome> {
    let s = load_sprout(path)?;
    let mut out = iterate_square(&s, n)?.to_json();
    out.push('\n');
    Ok(Outcome::ok(out))
}

fn iso(a: &Path, b: &Path, format: Format) -> Result<Outcome> {
    let (sa, sb) = (load_sprout(a)?, load_sprout(b)?);
    Ok(match isomorphic(&sa, &sb) {
        Some(map) => Outcome::ok(match format {
            Format::Json => to_json(&json!({ "isomorphic": true, "mapping": map })),
            Format::Text => text::isomorphism(&map),
        }),
        None => Outcome::verdict(match format {
            Format::Json => to_json(&json!({ "isomorphic": false })),
            Format::Text => "not isomorphic\n".to_string(),
        }),
    })
}

fn extract(path: &Path, depth: u32, tol: f64, format: Format) -> Result<Outcome> {
    let ifs = load_ifs(path)?;
    let result = extract_sprout(&ifs, depth, tol)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&result),
        Format::Text => text::extraction(&result),
    }))
}

/// Renames the extracted vertices after their images in `given`.
fn rename_points(result: &mut ExtractionResult, given: &Sprout) -> Result<()> {
    let Some(map) = isomorphic(&result.sprout, given) else {
        return Err(Outcome {
            code: 1,
            stdout: String::new(),
            stderr: "error: the extracted sprout is not isomorphic to the given one\n".into(),
        });
    };
    for rec in &mut result.points {
        rec.name = map.blacks[&rec.name].clone();
    }
    result.sprout = result.sprout.renamed(|w| map.whites[w].clone(), |b| map.blacks[b].clone());
    Ok(())
}

fn render(path: &Path, sprout: Option<&Path>, depth: Option<u32>, width: f64) -> Result<Outcome> {
    let ifs = load_ifs(path)?;
    let given = sprout.map(load_sprout).transpose()?;
    let mut stderr = String::new();
    let result = match extract_sprout(&ifs, 10, 1e-9) {
        Ok(mut r) => {
            if let Some(given) = &given {
                rename_points(&mut r, given)?;
            }
            Some(r)
        }
        Err(e) if given.is_some() => return Err(e.into()),
        Err(e) => {
            stderr = format!("note: drawing without marks: {e}\n");
            None
        }
    };
    let options = RenderOptions { depth, width, ..RenderOptions::default() };
    Ok(Outcome { code: 0, stdout: render_svg(&ifs, result.as_ref(), &options), stderr })
}
