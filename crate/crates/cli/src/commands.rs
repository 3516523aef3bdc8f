//! One function per subcommand, each producing a JSON document and a text table.

use artinperv_core::curveheart::{
    composition_series, heart_cokernel, heart_image, heart_kernel, intermediate_extension, is_simple, realize_heart,
    realize_morphism, realize_v, GluedComplex, HeartMorphism, HeartObject,
};
use artinperv_core::exactalg::AdmissibleModule;
use artinperv_core::omega0field::{omega0_pushforward, omega0_pushforward_twisted, DiscreteComplex};
use artinperv_core::sncdescent::{cone_pipeline, e1_page, shriek_complex, shriek_page};
use artinperv_core::{Coefficients, Error};
use serde_json::{json, Value};

use crate::render::{self, table};
use crate::workspace::{matrix_doc, Diagnostic, Workspace};

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable input or bad arguments: exit code 2.
    Input(String),
    /// The workspace failed validation: exit code 1.
    Invalid(Vec<Diagnostic>),
    /// A mathematical precondition failed: exit code 1.
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invalid(_) | Failure::Domain(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Domain(m),
            Error::Parse(m) => Failure::Input(m),
        }
    }
}

pub struct Report {
    pub json: Value,
    pub table: String,
    pub code: i32,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Report { json, table, code: 0 }
    }
}

fn get<'a, T>(map: &'a std::collections::BTreeMap<String, T>, kind: &str, id: &str) -> Result<&'a T, Failure> {
    map.get(id).ok_or_else(|| Failure::Input(format!("no {kind} named '{id}' in the workspace")))
}

pub fn validate(ws: &Workspace) -> Report {
    let counts = json!({
        "groups": ws.groups.len(),
        "fields": ws.fields.len(),
        "geometries": ws.geometries.len(),
        "snc": ws.snc.len(),
        "reps": ws.reps.len(),
        "curves": ws.curves.len(),
        "objects": ws.objects.len(),
        "morphisms": ws.morphisms.len(),
        "complexes": ws.complexes.len(),
    });
    let ok = ws.diagnostics.is_empty();
    let rows: Vec<Vec<String>> = ws.diagnostics.iter().map(|d| vec![d.path.clone(), d.message.clone()]).collect();
    let text = if ok { "workspace is valid\n".to_string() } else { table(&["path", "problem"], &rows) };
    Report {
        json: json!({"command": "validate", "ok": ok, "counts": counts, "diagnostics": ws.diagnostics}),
        table: text,
        code: if ok { 0 } else { 1 },
    }
}

fn verdict(c: &DiscreteComplex) -> String {
    match c.iter().find(|(_, rep)| !rep.module().is_finitely_presented()) {
        Some((n, _)) => format!("NotConstructible({n})"),
        None => "Constructible".into(),
    }
}

fn graded(c: &DiscreteComplex) -> (Vec<Value>, Vec<Vec<String>>) {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for (n, rep) in c.iter() {
        let m = rep.module();
        out.push(json!({"degree": n, "module": render::module(&m), "representation": render::rep(rep)}));
        rows.push(vec![format!("H^{n}"), m.to_string()]);
    }
    (out, rows)
}

pub fn omega0(ws: &Workspace, geometry: &str, r: &Coefficients, twist: Option<i64>) -> Result<Report, Failure> {
    let x = get(&ws.geometries, "geometry", geometry)?;
    let c = match twist {
        None => omega0_pushforward(x, r)?,
        Some(m) => omega0_pushforward_twisted(x, r, m)?,
    };
    let (degrees, mut rows) = graded(&c);
    let v = verdict(&c);
    rows.push(vec!["verdict".into(), v.clone()]);
    let json = json!({
        "command": "omega0",
        "geometry": geometry,
        "coefficients": r.to_string(),
        "twist": twist.unwrap_or(0),
        "degrees": degrees,
        "verdict": v,
    });
    Ok(Report::ok(json, table(&["degree", "module"], &rows)))
}

fn module_rows(entries: &[(String, AdmissibleModule)]) -> Vec<Vec<String>> {
    entries.iter().map(|(k, m)| vec![k.clone(), m.to_string()]).collect()
}

pub fn snc(ws: &Workspace, id: &str, r: &Coefficients, shriek: Option<i64>) -> Result<Report, Failure> {
    let s = get(&ws.snc, "snc datum", id)?;
    if let Some(tw) = shriek {
        let page = shriek_page(s, tw, r)?;
        let total = shriek_complex(s, tw, r)?;
        let e1: Vec<Value> = page
            .iter()
            .map(|(&(n, m), rep)| json!({"column": n, "row": m, "module": render::module(&rep.module())}))
            .collect();
        let (abut, rows) = graded(&total);
        let json = json!({"command": "snc", "snc": id, "coefficients": r.to_string(), "shriek": tw, "e1": e1, "abutment": abut});
        return Ok(Report::ok(json, table(&["degree", "module"], &rows)));
    }
    let page = e1_page(s, r)?;
    let e1: Vec<Value> = page
        .e1
        .iter()
        .map(|(&(n, m), rep)| json!({"column": n, "row": m, "module": render::module(&rep.module())}))
        .collect();
    let e2: Vec<Value> =
        page.e2.iter().map(|(&(n, m), module)| json!({"column": n, "row": m, "module": render::module(module)})).collect();
    let abut = page.abutment();
    let abutment: Vec<Value> = abut.iter().map(|(n, m)| json!({"degree": n, "module": render::module(m)})).collect();
    let mut entries: Vec<(String, AdmissibleModule)> = page.e2.iter().map(|(&(n, m), x)| (format!("E2^{{{n},{m}}}"), x.clone())).collect();
    entries.extend(abut.iter().map(|(n, m)| (format!("H^{n}"), m.clone())));
    let json = json!({
        "command": "snc",
        "snc": id,
        "coefficients": r.to_string(),
        "e1": e1,
        "e2": e2,
        "abutment": abutment,
        "d_squared_vanishes": page.d_squared_vanishes(),
        "degenerates_at_e2": page.degenerates_at_e2(),
    });
    Ok(Report::ok(json, table(&["term", "module"], &module_rows(&entries))))
}

pub fn cone(ws: &Workspace, geometry: &str, ell: u64, hyperplane: Option<&[i64]>) -> Result<Report, Failure> {
    let e = get(&ws.geometries, "geometry", geometry)?;
    let r = cone_pipeline(e, ell, hyperplane)?;
    let opt = |m: &Option<AdmissibleModule>| m.as_ref().map_or(Value::Null, render::module);
    let json = json!({
        "command": "cone",
        "geometry": geometry,
        "dimension": r.dimension,
        "ell": r.ell,
        "sub": render::module(&r.sub),
        "quotient": opt(&r.quotient),
        "h3": opt(&r.h3),
        "divisible_rank": r.divisible_rank,
        "ell_rank": r.ell_rank,
        "constructible": r.constructible,
    });
    let show = |m: &Option<AdmissibleModule>| m.as_ref().map_or("-".to_string(), ToString::to_string);
    let rows = vec![
        vec!["sub".into(), r.sub.to_string()],
        vec!["quotient".into(), show(&r.quotient)],
        vec!["H^3".into(), show(&r.h3)],
        vec!["divisible rank".into(), r.divisible_rank.to_string()],
        vec![format!("Z({ell}^inf) rank"), r.ell_rank.to_string()],
        vec!["constructible".into(), r.constructible.to_string()],
    ];
    Ok(Report::ok(json, table(&["quantity", "value"], &rows)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum HeartOp {
    Kernel,
    Cokernel,
    Image,
    Iext,
    Truncate,
    Simple,
    Series,
    Realize,
}

/// Identifiers a heart subcommand acts on.
#[derive(Clone, Debug, Default)]
pub struct HeartArgs {
    pub object: Option<String>,
    pub morphism: Option<String>,
    pub complex: Option<String>,
    pub ell: Option<u64>,
}

fn components(f: &HeartMorphism) -> Value {
    json!({
        "branch": f.branch.iter().map(|m| json!(matrix_doc(m))).collect::<Vec<_>>(),
        "point": f.point.iter().map(|m| json!(matrix_doc(m))).collect::<Vec<_>>(),
    })
}

fn need<'a>(v: &'a Option<String>, flag: &str, op: HeartOp) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Input(format!("heart {op:?} needs --{flag}").to_lowercase()))
}

pub fn heart(ws: &Workspace, op: HeartOp, args: &HeartArgs) -> Result<Report, Failure> {
    let name = format!("{op:?}").to_lowercase();
    let object = |id: &str| get(&ws.objects, "object", id);
    let morphism = |id: &str| get(&ws.morphisms, "morphism", id);
    let cid = |h: &HeartObject| ws.curve_id(&h.curve);
    let single = |label: &str, h: &HeartObject, extra: Value| {
        let mut json = json!({"command": format!("heart {name}"), label: render::heart(h, &cid(h))});
        if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
            m.extend(e);
        }
        Report::ok(json, render::heart_table(h))
    };
    match op {
        HeartOp::Kernel | HeartOp::Cokernel => {
            let id = need(&args.morphism, "morphism", op)?;
            let f = morphism(id)?;
            let (h, map, label) = if op == HeartOp::Kernel {
                let (k, i) = heart_kernel(f)?;
                (k, i, "inclusion")
            } else {
                let (c, q) = heart_cokernel(f)?;
                (c, q, "projection")
            };
            Ok(single("object", &h, json!({"morphism": id, label: components(&map)})))
        }
        HeartOp::Image => {
            let id = need(&args.morphism, "morphism", op)?;
            let (im, onto, incl) = heart_image(morphism(id)?)?;
            Ok(single("object", &im, json!({"morphism": id, "onto": components(&onto), "inclusion": components(&incl)})))
        }
        HeartOp::Iext => {
            let id = need(&args.object, "object", op)?;
            let m = &object(id)?.heart;
            let iext = intermediate_extension(m.curve.clone(), m.branches.clone())?;
            Ok(single("object", &iext, json!({"source": id})))
        }
        HeartOp::Simple => {
            let id = need(&args.object, "object", op)?;
            let simple = is_simple(&object(id)?.heart)?;
            Ok(Report::ok(json!({"command": "heart simple", "object": id, "simple": simple}), format!("simple: {simple}\n")))
        }
        HeartOp::Series => {
            let id = need(&args.object, "object", op)?;
            let factors = composition_series(&object(id)?.heart)?;
            let rows: Vec<Vec<String>> = factors
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), format!("{:?}", s.branch_ranks()), format!("{:?}", s.point_ranks())])
                .collect();
            let json = json!({
                "command": "heart series",
                "object": id,
                "length": factors.len(),
                "factors": factors.iter().map(|s| render::heart(s, &cid(s))).collect::<Vec<_>>(),
            });
            Ok(Report::ok(json, table(&["factor", "branch ranks", "point ranks"], &rows)))
        }
        HeartOp::Truncate => {
            let (g, id) = match (&args.complex, &args.object) {
                (Some(c), _) => (get(&ws.complexes, "complex", c)?.clone(), c.as_str()),
                (None, Some(o)) => (GluedComplex::from_heart(&object(o)?.heart)?, o.as_str()),
                (None, None) => return Err(Failure::Input("heart truncate needs --complex or --object".into())),
            };
            let curve = ws.curve_id(&g.curve);
            let t = g.perverse_truncate()?;
            let amplitude = g.perverse_amplitude()?;
            let mut cohomology = serde_json::Map::new();
            let mut rows = Vec::new();
            for &n in &amplitude {
                let h = g.perverse_cohomology(n)?;
                rows.push(vec![format!("pH^{n}"), format!("{:?}", h.branch_ranks()), format!("{:?}", h.point_ranks())]);
                cohomology.insert(n.to_string(), render::heart(&h, &curve));
            }
            let json = json!({
                "command": "heart truncate",
                "source": id,
                "le": render::glued(&t.le, &curve),
                "ge": render::glued(&t.ge, &curve),
                "amplitude": amplitude,
                "perverse_cohomology": cohomology,
            });
            Ok(Report::ok(json, table(&["degree", "branch ranks", "point ranks"], &rows)))
        }
        HeartOp::Realize => {
            let ell = args.ell.ok_or_else(|| Failure::Input("heart realize needs --ell".into()))?;
            if let Some(id) = &args.morphism {
                let f = realize_morphism(morphism(id)?, ell)?;
                let (k, c) = (f.kernel()?, f.cokernel()?);
                let json = json!({
                    "command": "heart realize",
                    "morphism": id,
                    "ell": ell,
                    "kernel": render::heart(&k.data, &cid(&k.data)),
                    "cokernel": render::heart(&c.data, &cid(&c.data)),
                });
                let text = format!("kernel\n{}\ncokernel\n{}", render::heart_table(&k.data), render::heart_table(&c.data));
                return Ok(Report::ok(json, text));
            }
            let id = need(&args.object, "object", op)?;
            let o = object(id)?;
            if let Some(n) = &o.nobject {
                realize_v(n, ell)?;
            }
            let r = realize_heart(&o.heart, ell)?;
            Ok(single("object", &r.data, json!({"source": id, "ell": r.ell})))
        }
    }
}
