//! Loading documents and resolving identifiers into core values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use artinperv_core::curveheart::{
    Branch, ClosedPoint, CurveData, FiberPoint, GluedComplex, HeartMorphism, HeartObject, NMorphism, NObject,
    PointComplex, RepComplex,
};
use artinperv_core::exactalg::{Int, IntMatrix, Q, QMatrix};
use artinperv_core::grouprep::{catalog, GSet, MarkedProfinite};
use artinperv_core::omega0field::geom::{self, BaseField, GeomDatum};
use artinperv_core::sncdescent::{Intersection, SNCData};
use artinperv_core::{ArtinRep, Coefficients, FiniteGroup, TwistCharacter};
use serde::Serialize;

use crate::schema::*;

/// A problem located by file and JSON pointer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Failure to read or parse a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError(pub String);

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A heart object together with the presentation it was given in.
#[derive(Clone, Debug)]
pub struct Object {
    pub heart: HeartObject,
    pub nobject: Option<NObject>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub fields: BTreeMap<String, BaseField>,
    pub geometries: BTreeMap<String, GeomDatum>,
    pub snc: BTreeMap<String, SNCData>,
    pub reps: BTreeMap<String, ArtinRep>,
    pub curves: BTreeMap<String, Arc<CurveData>>,
    pub objects: BTreeMap<String, Object>,
    pub morphisms: BTreeMap<String, HeartMorphism>,
    pub complexes: BTreeMap<String, GluedComplex>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn read_document(path: &Path) -> Result<Document, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| LoadError(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

/// Reads every file, merges the sections and resolves them.
pub fn load(paths: &[PathBuf]) -> Result<Workspace, LoadError> {
    let mut docs = Vec::new();
    for p in paths {
        docs.push((p.display().to_string(), read_document(p)?));
    }
    Ok(Workspace::resolve(&docs))
}

/// Entries of one section with the file each came from.
type Section<'a, T> = BTreeMap<&'a str, (String, &'a T)>;

fn merge<'a, T>(
    docs: &'a [(String, Document)],
    section: &str,
    get: impl Fn(&'a Document) -> &'a BTreeMap<String, T>,
    diags: &mut Vec<Diagnostic>,
) -> Section<'a, T> {
    let mut out: Section<'a, T> = BTreeMap::new();
    for (file, doc) in docs {
        for (id, v) in get(doc) {
            let here = format!("{file}#/{section}/{id}");
            if let Some((prev, _)) = out.get(id.as_str()) {
                diags.push(Diagnostic { path: here, message: format!("duplicate identifier, first defined in {prev}") });
                continue;
            }
            out.insert(id, (here, v));
        }
    }
    out
}

pub fn parse_q(s: &str) -> Result<Q, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty matrix entry".into());
    }
    Q::from_str(t).map_err(|_| format!("'{s}' is not an exact integer or fraction"))
}

fn parse_int(s: &str) -> Result<Int, String> {
    Int::from_str(s.trim()).map_err(|_| format!("'{s}' is not an exact integer"))
}

/// A matrix of the given shape; `[]` stands for any matrix with no rows.
pub fn parse_matrix(doc: &MatrixDoc, rows: usize, cols: usize) -> Result<QMatrix, String> {
    if doc.len() != rows {
        return Err(format!("expected {rows}x{cols} matrix, got {} rows", doc.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in doc.iter().enumerate() {
        if r.len() != cols {
            return Err(format!("expected {rows}x{cols} matrix, row {i} has {} entries", r.len()));
        }
        for v in r {
            data.push(parse_q(v)?);
        }
    }
    Ok(QMatrix::new(rows, cols, data))
}

fn parse_int_matrix(doc: &MatrixDoc, n: usize) -> Result<IntMatrix, String> {
    if doc.len() != n || doc.iter().any(|r| r.len() != n) {
        return Err(format!("expected {n}x{n} integer matrix"));
    }
    let data = doc.iter().flatten().map(|v| parse_int(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::new(n, n, data))
}

pub fn matrix_doc(m: &QMatrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

/// Turns `points[0].f` into `/points/0/f`.
fn pointer(path: &str) -> String {
    let mut out = String::new();
    for part in path.split('.') {
        for seg in part.split('[') {
            let seg = seg.trim_end_matches(']');
            if !seg.is_empty() {
                out.push('/');
                out.push_str(seg);
            }
        }
    }
    out
}

struct Resolver<'a> {
    ws: Workspace,
    geometry_docs: Section<'a, GeometryDoc>,
    /// Geometries currently being resolved, to reject cycles.
    visiting: Vec<String>,
}

impl<'a> Resolver<'a> {
    fn err(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.ws.diagnostics.push(Diagnostic { path: path.into(), message: message.into() });
    }

    /// Looks up `id` in a resolved section, reporting unknown or invalid references at `path`.
    fn lookup<T: Clone>(
        &mut self,
        get: impl Fn(&Workspace) -> &BTreeMap<String, T>,
        known: bool,
        kind: &str,
        id: &str,
        path: &str,
    ) -> Option<T> {
        if let Some(v) = get(&self.ws).get(id) {
            return Some(v.clone());
        }
        let message = if known { format!("refers to invalid {kind} '{id}'") } else { format!("unknown {kind} '{id}'") };
        self.err(path, message);
        None
    }

    fn coefficients(&mut self, s: &str, path: &str) -> Option<Coefficients> {
        match Coefficients::from_str(s) {
            Ok(c) => Some(c),
            Err(e) => {
                self.err(path, e.to_string());
                None
            }
        }
    }

    fn group(&mut self, doc: &GroupDoc, id: &str, path: &str) {
        let built = match doc {
            GroupDoc::Catalog { catalog: name } => {
                catalog::by_name(name).ok_or_else(|| format!("'{name}' is not in the group catalog"))
            }
            GroupDoc::Permutations { permutations, subgroups } => {
                FiniteGroup::from_permutations(id, permutations).map_err(|e| e.to_string()).and_then(|mut g| {
                    for (name, elems) in subgroups {
                        g.add_subgroup(name.clone(), elems.clone()).map_err(|e| format!("subgroup {name}: {e}"))?;
                    }
                    Ok(g)
                })
            }
        };
        match built {
            Ok(g) => {
                self.ws.groups.insert(id.to_string(), Arc::new(g));
            }
            Err(e) => self.err(path, e),
        }
    }

    fn field(&mut self, doc: &FieldDoc, known_groups: &Section<GroupDoc>, id: &str, path: &str) {
        let group = match &doc.group {
            Some(g) => match self.lookup(|w| &w.groups, known_groups.contains_key(g.as_str()), "group", g, &format!("{path}/group")) {
                Some(g) => g,
                None => return,
            },
            None => Arc::new(catalog::cyclic(1)),
        };
        let chi = match &doc.cyclotomic {
            None => TwistCharacter::Trivial,
            Some(vals) => match vals.iter().map(|v| parse_int(v)).collect::<Result<Vec<_>, _>>() {
                Ok(v) => TwistCharacter::Generators(v),
                Err(e) => return self.err(format!("{path}/cyclotomic"), e),
            },
        };
        match BaseField::new(MarkedProfinite::unmarked(group), doc.char_exponent, chi) {
            Ok(f) => {
                self.ws.fields.insert(id.to_string(), f);
            }
            Err(e) => self.err(path, e.to_string()),
        }
    }

    fn base(&mut self, field: &str, known: bool, path: &str) -> Option<BaseField> {
        self.lookup(|w| &w.fields, known, "field", field, &format!("{path}/field"))
    }

    fn action(&mut self, doc: &Option<Vec<MatrixDoc>>, base: &BaseField, n: usize, path: &str) -> Option<Vec<IntMatrix>> {
        let gens = base.group().generators().len();
        match doc {
            None => Some(vec![IntMatrix::identity(n); gens]),
            Some(ms) => {
                if ms.len() != gens {
                    self.err(format!("{path}/action"), format!("expected {gens} generator matrices"));
                    return None;
                }
                let mut out = Vec::new();
                for (i, m) in ms.iter().enumerate() {
                    match parse_int_matrix(m, n) {
                        Ok(m) => out.push(m),
                        Err(e) => {
                            self.err(format!("{path}/action/{i}"), e);
                            return None;
                        }
                    }
                }
                Some(out)
            }
        }
    }

    fn geometry(&mut self, id: &str, known_fields: &Section<FieldDoc>) -> Option<GeomDatum> {
        if let Some(g) = self.ws.geometries.get(id) {
            return Some(g.clone());
        }
        let (path, doc) = self.geometry_docs.get(id).map(|(p, d)| (p.clone(), *d))?;
        if self.visiting.iter().any(|v| v == id) {
            self.err(path, "geometry refers to itself");
            return None;
        }
        self.visiting.push(id.to_string());
        let kf = |f: &str| known_fields.contains_key(f);
        let built: Option<Result<GeomDatum, String>> = match doc {
            GeometryDoc::Point { field } => self.base(field, kf(field), &path).map(|b| Ok(geom::point(&b))),
            GeometryDoc::ProjectiveSpace { field, dim } => {
                self.base(field, kf(field), &path).map(|b| Ok(geom::projective_space(&b, *dim)))
            }
            GeometryDoc::FiniteEtale { field, set } => self.base(field, kf(field), &path).map(|b| {
                let g = b.group().clone();
                let set = match set {
                    GSetDoc::Trivial { trivial } => Ok(GSet::trivial(g, *trivial)),
                    GSetDoc::Cosets { cosets } => {
                        if g.is_subgroup(cosets) {
                            Ok(GSet::cosets(g, cosets))
                        } else {
                            Err("cosets must be taken for a subgroup".to_string())
                        }
                    }
                    GSetDoc::Permutations { size, generators } => {
                        GSet::from_generator_permutations(g, *size, generators).map_err(|e| e.to_string())
                    }
                };
                set.and_then(|s| geom::finite_etale(&b, s).map_err(|e| e.to_string()))
            }),
            GeometryDoc::Curve { field, genus, action } => self.base(field, kf(field), &path).and_then(|b| {
                let a = self.action(action, &b, 2 * genus, &path)?;
                Some(geom::curve_with_action(&b, *genus, &a).map_err(|e| e.to_string()))
            }),
            GeometryDoc::AbelianVariety { field, dim, action } => self.base(field, kf(field), &path).and_then(|b| {
                let a = self.action(action, &b, 2 * dim, &path)?;
                Some(geom::abelian_variety_with_action(&b, *dim, &a).map_err(|e| e.to_string()))
            }),
            GeometryDoc::Product { of } | GeometryDoc::DisjointUnion { of } => {
                let product = matches!(doc, GeometryDoc::Product { .. });
                let mut parts = Vec::new();
                for (i, other) in of.iter().enumerate() {
                    let here = format!("{path}/of/{i}");
                    if !self.geometry_docs.contains_key(other.as_str()) {
                        self.err(here, format!("unknown geometry '{other}'"));
                    } else if let Some(g) = self.geometry(other, known_fields) {
                        parts.push(g);
                    } else if !self.visiting.iter().any(|v| v == other) {
                        self.err(here, format!("refers to invalid geometry '{other}'"));
                    }
                }
                if parts.len() != of.len() {
                    None
                } else if parts.is_empty() {
                    Some(Err("needs at least one factor".into()))
                } else {
                    let mut acc = Ok(parts[0].clone());
                    for p in &parts[1..] {
                        acc = acc.and_then(|a| if product { geom::product(&a, p) } else { geom::disjoint_union(&a, p) });
                    }
                    Some(acc.map_err(|e| e.to_string()))
                }
            }
        };
        self.visiting.pop();
        match built? {
            Ok(g) => {
                self.ws.geometries.insert(id.to_string(), g.clone());
                Some(g)
            }
            Err(e) => {
                self.err(path, e);
                None
            }
        }
    }

    fn snc(&mut self, doc: &SncDoc, known: &Section<GeometryDoc>, id: &str, path: &str) {
        let mut comps = Vec::new();
        for (i, c) in doc.components.iter().enumerate() {
            if let Some(g) = self.lookup(|w| &w.geometries, known.contains_key(c.as_str()), "geometry", c, &format!("{path}/components/{i}")) {
                comps.push(g);
            }
        }
        let mut inters = BTreeMap::new();
        let mut ok = comps.len() == doc.components.len();
        for (i, x) in doc.intersections.iter().enumerate() {
            let here = format!("{path}/intersections/{i}");
            let Some(datum) = self.lookup(|w| &w.geometries, known.contains_key(x.datum.as_str()), "geometry", &x.datum, &format!("{here}/datum")) else {
                ok = false;
                continue;
            };
            let mut mu_maps = BTreeMap::new();
            for (deg, [m0, m1]) in &x.mu_maps {
                let Ok(m) = deg.parse::<usize>() else {
                    self.err(format!("{here}/mu_maps/{deg}"), "degree must be a positive integer");
                    ok = false;
                    continue;
                };
                let parse = |doc: &MatrixDoc| -> Result<IntMatrix, String> {
                    let rows = doc.len();
                    let cols = doc.first().map_or(0, Vec::len);
                    let q = parse_matrix(doc, rows, cols)?;
                    q.to_int().ok_or_else(|| "restriction matrices must be integral".to_string())
                };
                match (parse(m0), parse(m1)) {
                    (Ok(a), Ok(b)) => {
                        mu_maps.insert(m, [a, b]);
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        self.err(format!("{here}/mu_maps/{deg}"), e);
                        ok = false;
                    }
                }
            }
            let [a, b] = x.pair;
            if inters.insert((a, b), Intersection { datum, pi0_maps: x.pi0_maps.clone(), mu_maps }).is_some() {
                self.err(here, format!("pair ({a}, {b}) listed twice"));
                ok = false;
            }
        }
        if !ok {
            return;
        }
        let Some(first) = comps.first() else {
            return self.err(format!("{path}/components"), "needs at least one component");
        };
        match SNCData::new(first.base.clone(), comps, inters) {
            Ok(s) => {
                self.ws.snc.insert(id.to_string(), s);
            }
            Err(e) => self.err(path, e.to_string()),
        }
    }

    fn rep(&mut self, doc: &RepDoc, known_groups: &Section<GroupDoc>, id: &str, path: &str) {
        let Some(g) = self.lookup(|w| &w.groups, known_groups.contains_key(doc.group.as_str()), "group", &doc.group, &format!("{path}/group")) else {
            return;
        };
        let Some(c) = self.coefficients(&doc.coefficients, &format!("{path}/coefficients")) else { return };
        let rep = match &doc.generators {
            None => Ok(ArtinRep::trivial(g, c, doc.dim)),
            Some(gens) => {
                let mut ms = Vec::new();
                for (i, m) in gens.iter().enumerate() {
                    match parse_matrix(m, doc.dim, doc.dim) {
                        Ok(m) => ms.push(m),
                        Err(e) => return self.err(format!("{path}/generators/{i}"), e),
                    }
                }
                ArtinRep::from_generators(g, c, doc.dim, ms).map_err(|e| e.to_string())
            }
        };
        match rep {
            Ok(r) => {
                self.ws.reps.insert(id.to_string(), r);
            }
            Err(e) => self.err(path, e),
        }
    }

    fn curve(&mut self, doc: &CurveDoc, known_groups: &Section<GroupDoc>, id: &str, path: &str) {
        let built = match doc {
            CurveDoc::ProjectiveLine { coefficients, points } => {
                let Some(c) = self.coefficients(coefficients, &format!("{path}/coefficients")) else { return };
                let names: Vec<&str> = points.iter().map(String::as_str).collect();
                CurveData::projective_line(c, &names)
            }
            CurveDoc::Nodal { coefficients } => {
                let Some(c) = self.coefficients(coefficients, &format!("{path}/coefficients")) else { return };
                CurveData::nodal(c)
            }
            CurveDoc::Explicit { coefficients, branches, points } => {
                let Some(c) = self.coefficients(coefficients, &format!("{path}/coefficients")) else { return };
                let mut bs = Vec::new();
                for (i, b) in branches.iter().enumerate() {
                    let here = format!("{path}/branches/{i}/group");
                    if let Some(g) = self.lookup(|w| &w.groups, known_groups.contains_key(b.group.as_str()), "group", &b.group, &here) {
                        bs.push(Branch { name: b.name.clone(), galois: MarkedProfinite::unmarked(g) });
                    }
                }
                if bs.len() != branches.len() {
                    return;
                }
                let mut ps = Vec::new();
                for (i, p) in points.iter().enumerate() {
                    let here = format!("{path}/points/{i}");
                    let Some(gx) = self.lookup(|w| &w.groups, known_groups.contains_key(p.residue.as_str()), "group", &p.residue, &format!("{here}/residue")) else {
                        return;
                    };
                    let mut fiber = Vec::new();
                    for (j, y) in p.fiber.iter().enumerate() {
                        let yp = format!("{here}/fiber/{j}");
                        let Some(b) = bs.iter().position(|b| b.name == y.branch) else {
                            return self.err(format!("{yp}/branch"), format!("unknown branch '{}'", y.branch));
                        };
                        let fp = match (&y.decomposition, &y.residue_map) {
                            (None, None) => {
                                let gb = &bs[b].galois.quotient;
                                if y.inertia >= gb.order() {
                                    return self.err(format!("{yp}/inertia"), "not an element of the branch group");
                                }
                                FiberPoint::tame(y.name.clone(), b, y.inertia, gb, gx.identity())
                            }
                            (Some(d), Some(r)) => FiberPoint {
                                name: y.name.clone(),
                                branch: b,
                                inertia: y.inertia,
                                decomposition: d.clone(),
                                residue_map: r.clone(),
                            },
                            _ => return self.err(yp, "decomposition and residue_map go together"),
                        };
                        fiber.push(fp);
                    }
                    ps.push(ClosedPoint {
                        name: p.name.clone(),
                        residue: MarkedProfinite::unmarked(gx),
                        char_exponent: p.char_exponent,
                        fiber,
                    });
                }
                CurveData::new(id, c, bs, ps)
            }
        };
        match built {
            Ok(c) => {
                self.ws.curves.insert(id.to_string(), Arc::new(c));
            }
            Err(e) => self.err(path, e.to_string()),
        }
    }

    fn reps_at(&mut self, ids: &[String], known: &Section<RepDoc>, path: &str) -> Option<Vec<ArtinRep>> {
        let mut out = Vec::new();
        for (i, r) in ids.iter().enumerate() {
            out.push(self.lookup(|w| &w.reps, known.contains_key(r.as_str()), "rep", r, &format!("{path}/{i}")));
        }
        out.into_iter().collect()
    }

    fn object(&mut self, doc: &ObjectDoc, known_curves: &Section<CurveDoc>, known_reps: &Section<RepDoc>, id: &str, path: &str) {
        let (ObjectDoc::Nobject { curve, .. } | ObjectDoc::Heart { curve, .. }) = doc;
        let Some(cv) = self.lookup(|w| &w.curves, known_curves.contains_key(curve.as_str()), "curve", curve, &format!("{path}/curve")) else {
            return;
        };
        match doc {
            ObjectDoc::Nobject { branches, points, f, .. } => {
                let Some(bs) = self.reps_at(branches, known_reps, &format!("{path}/branches")) else { return };
                let mut pcs = Vec::new();
                for (x, p) in points.iter().enumerate() {
                    let here = format!("{path}/points/{x}");
                    let m0 = self.lookup(|w| &w.reps, known_reps.contains_key(p.m0.as_str()), "rep", &p.m0, &format!("{here}/m0"));
                    let m1 = self.lookup(|w| &w.reps, known_reps.contains_key(p.m1.as_str()), "rep", &p.m1, &format!("{here}/m1"));
                    let (Some(m0), Some(m1)) = (m0, m1) else { return };
                    match parse_matrix(&p.d, m1.dim(), m0.dim()) {
                        Ok(d) => pcs.push(PointComplex { m0, m1, d }),
                        Err(e) => return self.err(format!("{here}/d"), e),
                    }
                }
                if pcs.len() != cv.points.len() || f.len() != cv.points.len() {
                    return self.err(format!("{path}/points"), format!("expected {} closed points", cv.points.len()));
                }
                if bs.len() != cv.branches.len() {
                    return self.err(format!("{path}/branches"), format!("expected {} branches", cv.branches.len()));
                }
                let mut fs = Vec::new();
                for (x, m) in f.iter().enumerate() {
                    let xi = match cv.xi(x, &bs) {
                        Ok(xi) => xi,
                        Err(e) => return self.err(format!("{path}/branches"), e.to_string()),
                    };
                    match parse_matrix(m, xi.dim(), pcs[x].m0.dim()) {
                        Ok(m) => fs.push(m),
                        Err(e) => return self.err(format!("{path}/f/{x}"), e),
                    }
                }
                let n = NObject { curve: cv, branches: bs, points: pcs, f: fs };
                let violations = n.validate();
                if !violations.is_empty() {
                    for v in violations {
                        self.err(format!("{path}{}", pointer(&v.path)), v.message);
                    }
                    return;
                }
                match n.to_heart() {
                    Ok(h) => {
                        self.ws.objects.insert(id.to_string(), Object { heart: h, nobject: Some(n) });
                    }
                    Err(e) => self.err(path, e.to_string()),
                }
            }
            ObjectDoc::Heart { branches, points, c, .. } => {
                let Some(bs) = self.reps_at(branches, known_reps, &format!("{path}/branches")) else { return };
                let Some(ps) = self.reps_at(points, known_reps, &format!("{path}/points")) else { return };
                if bs.len() != cv.branches.len() || ps.len() != cv.points.len() || c.len() != cv.points.len() {
                    return self.err(path, format!("expected {} branches and {} points", cv.branches.len(), cv.points.len()));
                }
                let mut cs = Vec::new();
                for (x, m) in c.iter().enumerate() {
                    let xi = match cv.xi(x, &bs) {
                        Ok(xi) => xi,
                        Err(e) => return self.err(format!("{path}/branches"), e.to_string()),
                    };
                    match parse_matrix(m, ps[x].dim(), xi.dim()) {
                        Ok(m) => cs.push(m),
                        Err(e) => return self.err(format!("{path}/c/{x}"), e),
                    }
                }
                match HeartObject::new(cv, bs, ps, cs) {
                    Ok(h) => {
                        self.ws.objects.insert(id.to_string(), Object { heart: h, nobject: None });
                    }
                    Err(e) => self.err(path, e.to_string()),
                }
            }
        }
    }

    fn morphism(&mut self, doc: &MorphismDoc, known: &Section<ObjectDoc>, id: &str, path: &str) {
        let s = self.lookup(|w| &w.objects, known.contains_key(doc.source.as_str()), "object", &doc.source, &format!("{path}/source"));
        let t = self.lookup(|w| &w.objects, known.contains_key(doc.target.as_str()), "object", &doc.target, &format!("{path}/target"));
        let (Some(s), Some(t)) = (s, t) else { return };
        if !Arc::ptr_eq(&s.heart.curve, &t.heart.curve) {
            return self.err(path, "source and target live on different curves");
        }
        let curve = s.heart.curve.clone();
        if doc.branch.len() != curve.branches.len() || doc.point.len() != curve.points.len() {
            return self.err(path, format!("expected {} branch and {} point components", curve.branches.len(), curve.points.len()));
        }
        let mut branch = Vec::new();
        for (e, m) in doc.branch.iter().enumerate() {
            match parse_matrix(m, t.heart.branches[e].dim(), s.heart.branches[e].dim()) {
                Ok(m) => branch.push(m),
                Err(e2) => return self.err(format!("{path}/branch/{e}"), e2),
            }
        }
        let built = match (&s.nobject, &t.nobject) {
            (Some(sn), Some(tn)) => {
                let mut point = Vec::new();
                for (x, p) in doc.point.iter().enumerate() {
                    let PointMapDoc::Nobject { m0, m1 } = p else {
                        return self.err(format!("{path}/point/{x}"), "expected {\"m0\", \"m1\"} between N-objects");
                    };
                    let a = parse_matrix(m0, tn.points[x].m0.dim(), sn.points[x].m0.dim());
                    let b = parse_matrix(m1, tn.points[x].m1.dim(), sn.points[x].m1.dim());
                    match (a, b) {
                        (Ok(a), Ok(b)) => point.push((a, b)),
                        (Err(e), _) | (_, Err(e)) => return self.err(format!("{path}/point/{x}"), e),
                    }
                }
                let nm = NMorphism { source: sn.clone(), target: tn.clone(), branch, point };
                let violations = nm.validate();
                if !violations.is_empty() {
                    for v in violations {
                        self.err(format!("{path}{}", pointer(&v.path)), v.message);
                    }
                    return;
                }
                nm.to_heart()
            }
            (None, None) => {
                let mut point = Vec::new();
                for (x, p) in doc.point.iter().enumerate() {
                    let PointMapDoc::Heart(m) = p else {
                        return self.err(format!("{path}/point/{x}"), "expected a single matrix between heart objects");
                    };
                    match parse_matrix(m, t.heart.points[x].dim(), s.heart.points[x].dim()) {
                        Ok(m) => point.push(m),
                        Err(e) => return self.err(format!("{path}/point/{x}"), e),
                    }
                }
                HeartMorphism::new(s.heart.clone(), t.heart.clone(), branch, point)
            }
            _ => return self.err(path, "source and target must use the same form"),
        };
        match built {
            Ok(m) => {
                self.ws.morphisms.insert(id.to_string(), m);
            }
            Err(e) => self.err(path, e.to_string()),
        }
    }

    fn rep_complex(
        &mut self,
        doc: &RepComplexDoc,
        group: &Arc<FiniteGroup>,
        coefficients: &Coefficients,
        known: &Section<RepDoc>,
        path: &str,
    ) -> Option<RepComplex> {
        let mut rc = RepComplex::zero(group.clone(), coefficients.clone());
        for (k, r) in &doc.terms {
            let Ok(k) = k.parse::<i64>() else {
                self.err(format!("{path}/terms/{k}"), "degree must be an integer");
                return None;
            };
            let rep = self.lookup(|w| &w.reps, known.contains_key(r.as_str()), "rep", r, &format!("{path}/terms/{k}"))?;
            if rep.group() != group || rep.coefficients() != coefficients {
                self.err(format!("{path}/terms/{k}"), format!("must be a representation of {} over {coefficients}", group.name()));
                return None;
            }
            rc.terms.insert(k, rep);
        }
        for (k, m) in &doc.diffs {
            let Ok(k) = k.parse::<i64>() else {
                self.err(format!("{path}/diffs/{k}"), "degree must be an integer");
                return None;
            };
            match parse_matrix(m, rc.dim(k + 1), rc.dim(k)) {
                Ok(d) => {
                    rc.diffs.insert(k, d);
                }
                Err(e) => {
                    self.err(format!("{path}/diffs/{k}"), e);
                    return None;
                }
            }
        }
        Some(rc)
    }

    fn complex(&mut self, doc: &ComplexDoc, known_curves: &Section<CurveDoc>, known_reps: &Section<RepDoc>, id: &str, path: &str) {
        let Some(cv) = self.lookup(|w| &w.curves, known_curves.contains_key(doc.curve.as_str()), "curve", &doc.curve, &format!("{path}/curve")) else {
            return;
        };
        if doc.a.len() != cv.branches.len() || doc.b.len() != cv.points.len() || doc.theta.len() != cv.points.len() {
            return self.err(path, format!("expected {} branch and {} point components", cv.branches.len(), cv.points.len()));
        }
        let mut g = GluedComplex::zero(cv.clone());
        for (e, a) in doc.a.iter().enumerate() {
            let Some(rc) = self.rep_complex(a, cv.branch_group(e), &cv.coefficients, known_reps, &format!("{path}/a/{e}")) else {
                return;
            };
            g.a[e] = rc;
        }
        for (x, b) in doc.b.iter().enumerate() {
            let Some(rc) = self.rep_complex(b, cv.point_group(x), &cv.point_coefficients(x), known_reps, &format!("{path}/b/{x}")) else {
                return;
            };
            g.b[x] = rc;
        }
        for (x, th) in doc.theta.iter().enumerate() {
            for (k, m) in th {
                let here = format!("{path}/theta/{x}/{k}");
                let Ok(k) = k.parse::<i64>() else {
                    return self.err(here, "degree must be an integer");
                };
                let xi = match g.xi_term(x, k) {
                    Ok(xi) => xi,
                    Err(e) => return self.err(here, e.to_string()),
                };
                match parse_matrix(m, xi.dim(), g.b[x].dim(k)) {
                    Ok(t) => {
                        g.theta[x].insert(k, t);
                    }
                    Err(e) => return self.err(here, e),
                }
            }
        }
        match g.validate() {
            Ok(()) => {
                self.ws.complexes.insert(id.to_string(), g);
            }
            Err(e) => self.err(path, e.to_string()),
        }
    }
}

impl Workspace {
    /// Resolves all sections; problems are collected in `diagnostics` and the offending entries
    /// are left out.
    pub fn resolve(docs: &[(String, Document)]) -> Workspace {
        let mut diags = Vec::new();
        let groups = merge(docs, "groups", |d| &d.groups, &mut diags);
        let fields = merge(docs, "fields", |d| &d.fields, &mut diags);
        let geometries = merge(docs, "geometries", |d| &d.geometries, &mut diags);
        let snc = merge(docs, "snc", |d| &d.snc, &mut diags);
        let reps = merge(docs, "reps", |d| &d.reps, &mut diags);
        let curves = merge(docs, "curves", |d| &d.curves, &mut diags);
        let objects = merge(docs, "objects", |d| &d.objects, &mut diags);
        let morphisms = merge(docs, "morphisms", |d| &d.morphisms, &mut diags);
        let complexes = merge(docs, "complexes", |d| &d.complexes, &mut diags);

        let mut r = Resolver { ws: Workspace { diagnostics: diags, ..Workspace::default() }, geometry_docs: geometries.clone(), visiting: Vec::new() };
        for (id, (path, doc)) in &groups {
            r.group(doc, id, path);
        }
        for (id, (path, doc)) in &fields {
            r.field(doc, &groups, id, path);
        }
        for id in geometries.keys() {
            r.geometry(id, &fields);
        }
        for (id, (path, doc)) in &snc {
            r.snc(doc, &geometries, id, path);
        }
        for (id, (path, doc)) in &reps {
            r.rep(doc, &groups, id, path);
        }
        for (id, (path, doc)) in &curves {
            r.curve(doc, &groups, id, path);
        }
        for (id, (path, doc)) in &objects {
            r.object(doc, &curves, &reps, id, path);
        }
        for (id, (path, doc)) in &morphisms {
            r.morphism(doc, &objects, id, path);
        }
        for (id, (path, doc)) in &complexes {
            r.complex(doc, &curves, &reps, id, path);
        }
        let mut ws = r.ws;
        ws.diagnostics.sort();
        ws.diagnostics.dedup();
        ws
    }

    /// Identifier of the curve an object lives on.
    pub fn curve_id(&self, curve: &Arc<CurveData>) -> String {
        self.curves
            .iter()
            .find(|(_, c)| Arc::ptr_eq(c, curve))
            .map_or_else(|| curve.name.clone(), |(id, _)| id.clone())
    }
}
