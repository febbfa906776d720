//! Command-line front end. [`run`] is pure apart from reading the input file
//! and returns what the binary prints, so it can be driven from tests.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fan::{box_elements, normal_fan, toric_twisted_sectors};
use crate::format::{canonical_hash, parse_vertex_file, write_vertex_text};
use crate::hodge::{mirror_check, sector_group_order, CySector, HodgeReport};
use crate::jacobian::jacobian_rank_check;
use crate::polytope::{LatticePolytope, ReflexivePair};
use crate::vector::LatticeVector;
use crate::wps::wps_polytope;

pub const THREADS_VAR: &str = "REFLEXORB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Info,
    Reflexive,
    Dual,
    Faces,
    Points,
    SectorsToric,
    SectorsCy,
    Hodge,
    Mirror,
    OracleJacobian,
    Wps,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
}

/// Exact toolkit for reflexive polytopes and orbifold Hodge numbers of
/// Calabi-Yau hypersurfaces.
///
/// The input file holds the vertices of Δ°, whose faces the fan cones over;
/// pass --dual when it holds Δ instead.
#[derive(Clone, Debug, Parser)]
#[command(name = "reflexorb", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Vertex matrix file (`V n` header, then V rows of n integers).
    #[arg(required_unless_present = "weights", conflicts_with = "weights")]
    pub file: Option<PathBuf>,
    /// Weights of a weighted projective space, e.g. 1,1,2,2,2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub weights: Option<Vec<u64>>,
    /// Read the file as Δ rather than Δ°.
    #[arg(long, conflicts_with = "weights")]
    pub dual: bool,
    /// sectors-toric: list only the twisted sectors, not every box element.
    #[arg(long)]
    pub interior_only: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Evaluate the Hodge formulas below n = 4.
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// points: dilation factor k of kΔ.
    #[arg(long, default_value_t = 1)]
    pub dilate: u32,
}

/// What a run prints and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(err: &Error) -> Outcome {
        Outcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses arguments (program name first) and runs; usage errors exit 4.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, std::env::var(THREADS_VAR).ok().as_deref()),
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Runs one command. `threads` is the raw value of [`THREADS_VAR`].
pub fn run(config: &RunConfig, threads: Option<&str>) -> Outcome {
    let pool = match thread_pool(threads) {
        Ok(p) => p,
        Err(e) => return Outcome::failure(&e),
    };
    match pool.install(|| execute(config)) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::failure(&e),
    }
}

fn thread_pool(threads: Option<&str>) -> Result<rayon::ThreadPool> {
    let n = match threads.map(str::trim) {
        None | Some("") => 0,
        Some(s) => s.parse().map_err(|_| {
            Error::Io(format!(
                "{THREADS_VAR} must be a non-negative integer, got `{s}`"
            ))
        })?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// The polytope as read, and which side of the pair it is.
struct Input {
    polytope: LatticePolytope,
    is_delta: bool,
}

impl Input {
    fn load(config: &RunConfig) -> Result<Input> {
        if let Some(w) = &config.weights {
            return Ok(Input {
                polytope: wps_polytope(w)?,
                is_delta: false,
            });
        }
        let path = config
            .file
            .as_ref()
            .ok_or_else(|| Error::Io("no input given".into()))?;
        Ok(Input {
            polytope: parse_vertex_file(path)?,
            is_delta: config.dual,
        })
    }

    fn pair(&self) -> Result<ReflexivePair> {
        if self.is_delta {
            ReflexivePair::from_delta(self.polytope.clone())
        } else {
            ReflexivePair::from_polar(self.polytope.clone())
        }
    }
}

enum Tsv {
    Pairs,
    Table(&'static str),
    Vertices(Vec<LatticeVector>),
}

fn execute(config: &RunConfig) -> Result<String> {
    if config.command == Command::Wps && config.weights.is_none() {
        return Err(Error::Weights("wps needs --weights".into()));
    }
    let input = Input::load(config)?;
    let reflexive = input.polytope.is_reflexive();
    let r = reflexive.then(|| ray_count(&input));
    let (body, tsv) = match config.command {
        Command::Info => (info(&input)?, Tsv::Pairs),
        Command::Reflexive => (obj(json!({ "reflexive": reflexive })), Tsv::Pairs),
        Command::Dual => {
            let dual = input.polytope.polar_dual()?;
            (
                obj(json!({ "vertices": points(dual.vertices()) })),
                Tsv::Vertices(dual.vertices().to_vec()),
            )
        }
        Command::Faces => (faces(&input)?, Tsv::Table("faces")),
        Command::Points => {
            let pts = input.polytope.lattice_points(config.dilate);
            let body =
                json!({ "dilate": config.dilate, "count": pts.len(), "points": points(&pts) });
            (obj(body), Tsv::Table("points"))
        }
        Command::SectorsToric => (
            sectors_toric(&input.pair()?, config.interior_only)?,
            Tsv::Table("sectors"),
        ),
        Command::SectorsCy => {
            let pair = input.pair()?;
            let sectors = crate::hodge::cy_twisted_sectors(&pair)?;
            (
                obj(json!({ "sectors": cy_table(&pair, &sectors) })),
                Tsv::Table("sectors"),
            )
        }
        Command::Hodge => (hodge(&input.pair()?, config.force)?, Tsv::Pairs),
        Command::Mirror => (mirror(&input.pair()?, config.force)?, Tsv::Pairs),
        Command::OracleJacobian => (oracle(&input.pair()?, config.seed)?, Tsv::Pairs),
        Command::Wps => {
            let p = &input.polytope;
            (
                obj(json!({ "vertices": points(p.vertices()) })),
                Tsv::Vertices(p.vertices().to_vec()),
            )
        }
    };
    let mut top = body;
    top.insert("command".into(), json!(command_name(config.command)));
    top.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    top.insert(
        "input_hash".into(),
        json!(canonical_hash(input.polytope.vertices())),
    );
    top.insert("n".into(), json!(input.polytope.dim()));
    top.insert("r".into(), r.map_or(Value::Null, |r| json!(r)));
    Ok(match config.format {
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => render_tsv(&top, tsv),
    })
}

fn command_name(c: Command) -> String {
    c.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn ray_count(input: &Input) -> usize {
    if input.is_delta {
        input.polytope.facets().len()
    } else {
        input.polytope.vertices().len()
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn point(p: &LatticeVector) -> Value {
    Value::Array(p.coords().iter().map(int).collect())
}

fn points(ps: &[LatticeVector]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

fn info(input: &Input) -> Result<Map<String, Value>> {
    let p = &input.polytope;
    let simplicial = if p.is_reflexive() {
        Some(crate::fan::is_simplicial(&normal_fan(&input.pair()?)))
    } else {
        None
    };
    Ok(obj(json!({
        "side": if input.is_delta { "delta" } else { "delta_polar" },
        "vertices": points(p.vertices()),
        "f_vector": p.f_vector(),
        "facets": p.facets().len(),
        "lattice_points": p.whole().lattice_points.len(),
        "interior_points": p.whole().interior_count(),
        "reflexive": p.is_reflexive(),
        "simplicial_fan": simplicial,
    })))
}

fn faces(input: &Input) -> Result<Map<String, Value>> {
    let p = &input.polytope;
    let pair = if p.is_reflexive() {
        Some(input.pair()?)
    } else {
        None
    };
    let rows: Vec<Value> = p
        .faces()
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let dual = pair.as_ref().and_then(|pair| {
                let d = if input.is_delta {
                    pair.dual_of_delta_face(id)
                } else {
                    pair.dual_of_polar_face(id)
                }?;
                let other = if input.is_delta {
                    pair.delta_polar()
                } else {
                    pair.delta()
                };
                Some(other.face(d).vertex_ids.clone())
            });
            json!({
                "id": id,
                "dim": f.dim,
                "vertices": f.vertex_ids,
                "lattice_points": f.lattice_points.len(),
                "interior_points": f.interior_count(),
                "dual_vertices": dual,
            })
        })
        .collect();
    Ok(obj(json!({ "faces": rows })))
}

fn sectors_toric(pair: &ReflexivePair, interior_only: bool) -> Result<Map<String, Value>> {
    let fan = normal_fan(pair);
    let sectors = toric_twisted_sectors(&fan)?;
    let rows: Vec<Value> = sectors
        .iter()
        .map(|s| {
            json!({
                "cone": s.cone.ray_ids,
                "box": s.element.coeffs.iter().map(rational).collect::<Vec<_>>(),
                "point": point(&s.element.point),
                "age": rational(s.age()),
                "support_dim": s.support_dim,
                "group_order": int(&s.group_order),
            })
        })
        .collect();
    let mut out = obj(json!({ "sectors": rows }));
    if !interior_only {
        let mut all = Vec::new();
        for cone in fan.cones() {
            for b in box_elements(cone, false)? {
                if b.point.is_zero() {
                    continue;
                }
                all.push(json!({
                    "cone": cone.ray_ids,
                    "box": b.coeffs.iter().map(rational).collect::<Vec<_>>(),
                    "point": point(&b.point),
                    "age": rational(&b.age),
                    "interior": b.is_interior(),
                }));
            }
        }
        out.insert("box_elements".into(), Value::Array(all));
    }
    Ok(out)
}

fn cy_table(pair: &ReflexivePair, sectors: &[CySector]) -> Value {
    Value::Array(
        sectors
            .iter()
            .map(|s| {
                json!({
                    "face": pair.delta_polar().face(s.face).vertex_ids,
                    "face_dim": s.face_dim,
                    "dual_face": pair.delta().face(s.dual_face).vertex_ids,
                    "box": s.element.coeffs.iter().map(rational).collect::<Vec<_>>(),
                    "point": point(&s.element.point),
                    "age": rational(s.age()),
                    "group_order": int(&sector_group_order(s)),
                    "components": s.components,
                    "h_top": s.h_top,
                })
            })
            .collect(),
    )
}

fn hodge(pair: &ReflexivePair, force: bool) -> Result<Map<String, Value>> {
    let h = HodgeReport::compute(pair, force)?;
    Ok(obj(json!({
        "h11": h.h11_untwisted,
        "h11_orb": h.h11_orb,
        "h21": h.hn21_untwisted,
        "h21_orb": h.hn21_orb,
        "l_delta": h.l_delta,
        "l_polar": h.l_polar,
        "sectors": cy_table(pair, &h.sectors),
        "h11_sector_sum": h.h11_sector_sum,
        "h21_sector_sum": h.hn21_sector_sum,
        "audit_consistent": h.audit_consistent(),
        "diamond": h.diamond,
        "euler_characteristic": h.euler_characteristic(),
        "forced": h.forced,
    })))
}

fn mirror(pair: &ReflexivePair, force: bool) -> Result<Map<String, Value>> {
    let m = mirror_check(pair, force)?;
    if !m.hypothesis_met {
        return Err(Error::NotSimplicial(
            "the mirror check needs both normal fans simplicial".into(),
        ));
    }
    let side = |p: Option<(i64, i64)>| p.map(|(a, b)| json!({ "h11_orb": a, "h21_orb": b }));
    Ok(obj(json!({
        "original": side(m.original),
        "mirror": side(m.mirror),
        "h11_matches": m.h11_matches(),
        "h21_matches": m.hn21_matches(),
        "passed": m.passed(),
    })))
}

fn oracle(pair: &ReflexivePair, seed: u64) -> Result<Map<String, Value>> {
    let j = jacobian_rank_check(pair, seed)?;
    Ok(obj(json!({
        "seed": j.seed,
        "attempts": j.attempts,
        "rank": j.rank,
        "gamma": j.gamma,
        "l_delta": j.l_delta,
        "quotient": j.quotient,
        "formula": j.formula,
        "agrees": j.agrees(),
    })))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render_tsv(top: &Map<String, Value>, kind: Tsv) -> String {
    let mut out = String::new();
    match kind {
        Tsv::Vertices(v) => out.push_str(&write_vertex_text(&v)),
        Tsv::Pairs => {
            for (k, v) in top {
                out.push_str(&format!("{k}\t{}\n", cell(v)));
            }
        }
        Tsv::Table(key) => {
            let rows = top
                .get(key)
                .and_then(Value::as_array)
                .cloned()
                .unwrap_or_default();
            if key == "points" {
                for p in &rows {
                    let cells: Vec<String> = p.as_array().into_iter().flatten().map(cell).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                return out;
            }
            let columns: Vec<String> = rows
                .first()
                .and_then(Value::as_object)
                .map(|m| m.keys().cloned().collect())
                .unwrap_or_default();
            if !columns.is_empty() {
                out.push_str(&columns.join("\t"));
                out.push('\n');
            }
            for row in &rows {
                let cells: Vec<String> = columns.iter().map(|c| cell(&row[c.as_str()])).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
    }
    out
}
