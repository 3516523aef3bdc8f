//! Serialized form of workspace documents.
//!
//! Every section maps identifiers to entries. Matrices are row-major arrays of exact
//! integer strings; `"p/q"` is also read so that reports can be fed back in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fields: BTreeMap<String, FieldDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub geometries: BTreeMap<String, GeometryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub snc: BTreeMap<String, SncDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reps: BTreeMap<String, RepDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub curves: BTreeMap<String, CurveDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    /// A group from the built-in catalog, e.g. `"C4"` or `"S3"`.
    Catalog { catalog: String },
    /// Generated by permutations of `0..n`.
    Permutations {
        permutations: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        subgroups: BTreeMap<String, Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    /// Galois quotient; the trivial group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(rename = "char")]
    pub char_exponent: u64,
    /// Cyclotomic character on the generators; trivial when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryDoc {
    Point { field: String },
    FiniteEtale { field: String, set: GSetDoc },
    ProjectiveSpace { field: String, dim: usize },
    Curve {
        field: String,
        genus: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<Vec<MatrixDoc>>,
    },
    AbelianVariety {
        field: String,
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<Vec<MatrixDoc>>,
    },
    Product { of: Vec<String> },
    DisjointUnion { of: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GSetDoc {
    Trivial { trivial: usize },
    Cosets { cosets: Vec<usize> },
    Permutations { size: usize, generators: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncDoc {
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intersections: Vec<IntersectionDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionDoc {
    pub pair: [usize; 2],
    pub datum: String,
    pub pi0_maps: [Vec<usize>; 2],
    /// Degree to the two restriction matrices on `mu^m`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mu_maps: BTreeMap<String, [MatrixDoc; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub group: String,
    pub coefficients: String,
    pub dim: usize,
    /// One matrix per group generator; absent means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveDoc {
    ProjectiveLine { coefficients: String, points: Vec<String> },
    Nodal { coefficients: String },
    Explicit { coefficients: String, branches: Vec<BranchDoc>, points: Vec<PointDoc> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub name: String,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub name: String,
    pub residue: String,
    #[serde(rename = "char")]
    pub char_exponent: u64,
    pub fiber: Vec<FiberDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDoc {
    pub name: String,
    pub branch: String,
    pub inertia: usize,
    /// Decomposition group and its map onto the residue group; tame with trivial residue
    /// extension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_map: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectDoc {
    /// `(L, M_x, f_x)` with `M_x = [M⁰ -> M¹]`.
    Nobject { curve: String, branches: Vec<String>, points: Vec<PointComplexDoc>, f: Vec<MatrixDoc> },
    /// `(L, P_x, c_x: Ξ_x(L) -> P_x)`.
    Heart { curve: String, branches: Vec<String>, points: Vec<String>, c: Vec<MatrixDoc> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointComplexDoc {
    pub m0: String,
    pub m1: String,
    pub d: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: String,
    pub target: String,
    pub branch: Vec<MatrixDoc>,
    pub point: Vec<PointMapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointMapDoc {
    Heart(MatrixDoc),
    Nobject { m0: MatrixDoc, m1: MatrixDoc },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub curve: String,
    pub a: Vec<RepComplexDoc>,
    pub b: Vec<RepComplexDoc>,
    /// Per point, degree to `θ^k: B^k -> Ξ(A^k)`.
    pub theta: Vec<BTreeMap<String, MatrixDoc>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepComplexDoc {
    #[serde(default)]
    pub terms: BTreeMap<String, String>,
    #[serde(default)]
    pub diffs: BTreeMap<String, MatrixDoc>,
}
