//! JSON schemas: the versioned tensor dump, the cache file, semisimple model
//! input, and correlator query input.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use kleintft::algebra::{AlgebraElement, DenseT3, RawTensors, SparseT3, StructureAlgebra};
use kleintft::linalg::Mat;
use kleintft::semisimple::SemisimpleModel;
use kleintft::Rat;

use crate::text;
use crate::TENSOR_FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub kind: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisAEntry {
    pub label: String,
    pub rep: String,
    pub class_size: usize,
    pub nu: usize,
}

/// JSON form of a dihedral diagram: the four orbit-size multisets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub type1: Vec<u32>,
    pub type2: Vec<u32>,
    pub type3: Vec<u32>,
    pub type4: Vec<u32>,
}

impl DiagramJson {
    pub fn from_diagram(d: &kleintft::dihedral::DihedralDiagram) -> Self {
        let [t1, t2, t3, t4] = d.types();
        DiagramJson { type1: t1.to_vec(), type2: t2.to_vec(), type3: t3.to_vec(), type4: t4.to_vec() }
    }

    pub fn to_diagram(&self) -> Result<kleintft::dihedral::DihedralDiagram> {
        kleintft::dihedral::DihedralDiagram::new(
            self.type1.clone(),
            self.type2.clone(),
            self.type3.clone(),
            self.type4.clone(),
        )
        .map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisBEntry {
    pub label: String,
    pub diagram: DiagramJson,
    pub rep: [String; 2],
    pub class_size: usize,
    pub nu: usize,
}

/// Rationals are stored as reduced `"p/q"` strings; sparse tensors as sorted
/// `[i, j, k, value]` rows. Everything is ordered by the canonical basis
/// order so dumps are byte-stable and diffable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorDump {
    pub f_a: Vec<Vec<String>>,
    pub f_b: Vec<Vec<String>>,
    pub r: Vec<Vec<String>>,
    pub s: Vec<(usize, usize, usize, String)>,
    pub t: Vec<(usize, usize, usize, String)>,
    pub r3: Vec<(usize, usize, usize, String)>,
    pub i_a: Vec<Vec<String>>,
    pub i_b: Vec<Vec<String>>,
    pub d: Vec<String>,
    pub j_a: Vec<String>,
    pub j_b: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDump {
    #[serde(rename = "version")]
    pub format_version: u32,
    pub group: GroupDescriptor,
    #[serde(rename = "basisA")]
    pub basis_a: Vec<BasisAEntry>,
    #[serde(rename = "basisB")]
    pub basis_b: Vec<BasisBEntry>,
    #[serde(rename = "starA")]
    pub star_a: Vec<usize>,
    #[serde(rename = "starB")]
    pub star_b: Vec<usize>,
    pub tensors: TensorDump,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheMetadata {
    pub created_unix: u64,
    pub tool_version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub cache_version: u32,
    pub key: String,
    pub metadata: CacheMetadata,
    pub algebra: AlgebraDump,
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| text::print_rational(m.at(r, c))).collect())
        .collect()
}

fn rows_to_mat(rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<Mat> {
    if rows.len() != nrows {
        bail!("matrix has {} rows, expected {nrows}", rows.len());
    }
    let mut m = Mat::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            bail!("matrix row {r} has {} columns, expected {ncols}", row.len());
        }
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, text::parse_rational(v)?);
        }
    }
    Ok(m)
}

fn vec_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(text::print_rational).collect()
}

fn strings_to_vec(v: &[String], len: usize) -> Result<Vec<Rat>> {
    if v.len() != len {
        bail!("vector has length {}, expected {len}", v.len());
    }
    v.iter().map(|s| text::parse_rational(s)).collect()
}

fn sparse_to_rows(t: &SparseT3) -> Vec<(usize, usize, usize, String)> {
    t.iter()
        .map(|(&(i, j, k), v)| (i as usize, j as usize, k as usize, text::print_rational(v)))
        .collect()
}

fn rows_to_sparse(rows: &[(usize, usize, usize, String)]) -> Result<SparseT3> {
    let mut t = SparseT3::new();
    for &(i, j, k, ref v) in rows {
        kleintft::algebra::t3_set(&mut t, i, j, k, text::parse_rational(v)?);
    }
    Ok(t)
}

fn dense3_to_rows(t: &DenseT3, dim: usize) -> Vec<(usize, usize, usize, String)> {
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let v = t.at(i, j, k);
                if !num_traits::Zero::is_zero(v) {
                    rows.push((i, j, k, text::print_rational(v)));
                }
            }
        }
    }
    rows
}

fn rows_to_dense3(rows: &[(usize, usize, usize, String)], dim: usize) -> Result<DenseT3> {
    let mut t = DenseT3::zeros(dim);
    for &(i, j, k, ref v) in rows {
        if i >= dim || j >= dim || k >= dim {
            bail!("S entry ({i},{j},{k}) out of range for dimension {dim}");
        }
        t.set(i, j, k, text::parse_rational(v)?);
    }
    Ok(t)
}

/// Serializes an algebra together with its basis labels.
pub fn dump_algebra(
    alg: &StructureAlgebra,
    group: GroupDescriptor,
    basis_a: Vec<BasisAEntry>,
    basis_b: Vec<BasisBEntry>,
) -> AlgebraDump {
    let raw = alg.raw();
    AlgebraDump {
        format_version: TENSOR_FORMAT_VERSION,
        group,
        basis_a,
        basis_b,
        star_a: alg.star_a_perm().map(<[usize]>::to_vec).unwrap_or_default(),
        star_b: alg.star_b_perm().map(<[usize]>::to_vec).unwrap_or_default(),
        tensors: TensorDump {
            f_a: mat_to_rows(&raw.f_a),
            f_b: mat_to_rows(&raw.f_b),
            r: mat_to_rows(&raw.r),
            s: dense3_to_rows(&raw.s, raw.dim_a),
            t: sparse_to_rows(&raw.t),
            r3: sparse_to_rows(&raw.r3),
            i_a: mat_to_rows(&raw.i_a),
            i_b: mat_to_rows(&raw.i_b),
            d: vec_to_strings(&raw.d),
            j_a: vec_to_strings(&raw.j_a),
            j_b: vec_to_strings(&raw.j_b),
        },
    }
}

/// Reconstructs the algebra from a dump; all derived operators are recomputed.
pub fn load_algebra(dump: &AlgebraDump) -> Result<StructureAlgebra> {
    if dump.format_version != TENSOR_FORMAT_VERSION {
        bail!(
            "tensor format version {} unsupported (tool expects {TENSOR_FORMAT_VERSION})",
            dump.format_version
        );
    }
    let dim_a = dump.basis_a.len();
    let dim_b = dump.basis_b.len();
    let t = &dump.tensors;
    let raw = RawTensors {
        dim_a,
        dim_b,
        f_a: rows_to_mat(&t.f_a, dim_a, dim_a)?,
        f_b: rows_to_mat(&t.f_b, dim_b, dim_b)?,
        r: rows_to_mat(&t.r, dim_a, dim_b)?,
        s: rows_to_dense3(&t.s, dim_a)?,
        t: rows_to_sparse(&t.t)?,
        r3: rows_to_sparse(&t.r3)?,
        i_a: rows_to_mat(&t.i_a, dim_a, dim_a)?,
        i_b: rows_to_mat(&t.i_b, dim_b, dim_b)?,
        d: strings_to_vec(&t.d, dim_a)?,
        j_a: strings_to_vec(&t.j_a, dim_a)?,
        j_b: strings_to_vec(&t.j_b, dim_b)?,
    };
    StructureAlgebra::from_raw(raw).map_err(|e| anyhow!("{e}"))
}

/// Semisimple model input. `sigma` and the sign-map keys are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelInput {
    pub m: usize,
    pub k: usize,
    pub block_dims: Vec<usize>,
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
    pub sigma: Vec<usize>,
    #[serde(default)]
    pub nu: BTreeMap<String, i8>,
    #[serde(default)]
    pub crosscap_signs: BTreeMap<String, i8>,
}

impl ModelInput {
    pub fn to_model(&self) -> Result<SemisimpleModel> {
        let parse_signs = |signs: &BTreeMap<String, i8>| -> Result<BTreeMap<usize, i8>> {
            signs
                .iter()
                .map(|(k, &v)| {
                    let idx: usize =
                        k.parse().with_context(|| format!("bad 1-based index {k:?}"))?;
                    if idx == 0 {
                        bail!("indices are 1-based");
                    }
                    Ok((idx - 1, v))
                })
                .collect()
        };
        let sigma = self
            .sigma
            .iter()
            .map(|&v| {
                if v == 0 {
                    bail!("sigma entries are 1-based")
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(SemisimpleModel {
            num_idempotents: self.m,
            num_blocks: self.k,
            block_dims: self.block_dims.clone(),
            mu: self.mu.iter().map(|s| text::parse_rational(s)).collect::<Result<_>>()?,
            lambda: self.lambda.iter().map(|s| text::parse_rational(s)).collect::<Result<_>>()?,
            sigma,
            nu_signs: parse_signs(&self.nu)?,
            crosscap_signs: parse_signs(&self.crosscap_signs)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceInput {
    /// Doubled genus.
    #[serde(rename = "g2", alias = "genus2")]
    pub genus2: u32,
    pub orientable: bool,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub boundary: Vec<usize>,
}

/// An element reference: a basis label (partition text on the A side,
/// diagram text on the B side), the literal `"unit"`, a diagram in JSON
/// form, or an inline coefficient map from labels to rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Label(String),
    Diagram(DiagramJson),
    Coeffs { coeffs: BTreeMap<String, String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueryInput {
    pub surface: SurfaceInput,
    #[serde(default)]
    pub interior: Vec<ElementRef>,
    #[serde(default)]
    pub blocks: Vec<Vec<ElementRef>>,
}

/// Resolves element references against basis labels.
pub struct BasisResolver {
    pub a_labels: Vec<String>,
    pub b_labels: Vec<String>,
}

impl BasisResolver {
    fn find(labels: &[String], label: &str, side: &str) -> Result<usize> {
        let hits: Vec<usize> =
            labels.iter().enumerate().filter(|(_, l)| l.as_str() == label).map(|(i, _)| i).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            [] => bail!("unknown {side} basis label {label:?}"),
            _ => bail!("{side} basis label {label:?} is ambiguous in this group"),
        }
    }

    pub fn resolve_a(&self, r: &ElementRef, unit: &AlgebraElement) -> Result<AlgebraElement> {
        match r {
            ElementRef::Label(l) if l == "unit" => Ok(unit.clone()),
            ElementRef::Diagram(_) => bail!("interior fields take partitions, not diagrams"),
            ElementRef::Label(l) => {
                let label = text::print_partition(&text::parse_partition(l)?);
                Ok(AlgebraElement::basis_a(Self::find(&self.a_labels, &label, "A")?))
            }
            ElementRef::Coeffs { coeffs } => {
                let mut out = AlgebraElement::zero();
                for (label, value) in coeffs {
                    let canonical = text::print_partition(&text::parse_partition(label)?);
                    let idx = Self::find(&self.a_labels, &canonical, "A")?;
                    out.add_a(idx, text::parse_rational(value)?);
                }
                Ok(out)
            }
        }
    }

    pub fn resolve_b(&self, r: &ElementRef, unit: &AlgebraElement) -> Result<AlgebraElement> {
        match r {
            ElementRef::Label(l) if l == "unit" => Ok(unit.clone()),
            ElementRef::Diagram(d) => {
                let label = text::print_dihedral(&d.to_diagram()?);
                Ok(AlgebraElement::basis_b(Self::find(&self.b_labels, &label, "B")?))
            }
            ElementRef::Label(l) => {
                let label =
                    text::print_dihedral(&text::parse_dihedral(text::unparenthesize(l), None)?);
                Ok(AlgebraElement::basis_b(Self::find(&self.b_labels, &label, "B")?))
            }
            ElementRef::Coeffs { coeffs } => {
                let mut out = AlgebraElement::zero();
                for (label, value) in coeffs {
                    let canonical = text::print_dihedral(&text::parse_dihedral(
                        text::unparenthesize(label),
                        None,
                    )?);
                    let idx = Self::find(&self.b_labels, &canonical, "B")?;
                    out.add_b(idx, text::parse_rational(value)?);
                }
                Ok(out)
            }
        }
    }
}
