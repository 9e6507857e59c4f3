//! Building or loading the structure algebra for a requested group, with the
//! on-disk cache.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};

use kleintft::algebra::{from_group, StructureAlgebra};
use kleintft::dihedral::DihedralClassTable;
use kleintft::group::GroupTable;
use kleintft::perm::Permutation;

use crate::schema::{
    dump_algebra, load_algebra, AlgebraDump, BasisAEntry, BasisBEntry, CacheFile, CacheMetadata,
    GroupDescriptor,
};
use crate::text;
use crate::TENSOR_FORMAT_VERSION;

/// Which group to build.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Symmetric { n: usize },
    Generated { degree: usize, generators: Vec<Permutation> },
}

impl GroupSpec {
    pub fn descriptor(&self, order: usize) -> GroupDescriptor {
        match self {
            GroupSpec::Symmetric { n } => GroupDescriptor {
                kind: "symmetric".to_string(),
                degree: *n,
                order,
                generators: Vec::new(),
            },
            GroupSpec::Generated { degree, generators } => GroupDescriptor {
                kind: "generated".to_string(),
                degree: *degree,
                order,
                generators: generators.iter().map(text::print_permutation).collect(),
            },
        }
    }

    /// Stable key for cache file names.
    pub fn cache_key(&self) -> String {
        match self {
            GroupSpec::Symmetric { n } => format!("sym-{n}"),
            GroupSpec::Generated { degree, generators } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| {
                        g.images().iter().map(u16::to_string).collect::<Vec<_>>().join(".")
                    })
                    .collect();
                format!("deg{degree}-gen-{}", gens.join("_"))
            }
        }
    }

    pub fn build_tables(&self, order_cap: Option<usize>) -> Result<(GroupTable, DihedralClassTable)> {
        let group = match self {
            GroupSpec::Symmetric { n } => GroupTable::symmetric(*n, order_cap),
            GroupSpec::Generated { degree, generators } => {
                GroupTable::enumerate(*degree, generators, order_cap)
            }
        }
        .map_err(|e| anyhow!("{e}"))?;
        let dihedral = DihedralClassTable::build(&group);
        Ok((group, dihedral))
    }
}

/// A ready-to-use algebra with its basis labels.
pub struct LoadedAlgebra {
    pub algebra: StructureAlgebra,
    pub dump: AlgebraDump,
    pub from_cache: bool,
}

fn basis_entries(
    group: &GroupTable,
    dihedral: &DihedralClassTable,
) -> (Vec<BasisAEntry>, Vec<BasisBEntry>) {
    let basis_a = group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| BasisAEntry {
            label: text::print_partition(&c.label),
            rep: text::print_permutation(group.element(c.rep)),
            class_size: c.size,
            nu: group.centralizer_order(i),
        })
        .collect();
    let basis_b = dihedral
        .classes()
        .iter()
        .map(|c| BasisBEntry {
            label: text::print_dihedral(&c.diagram),
            diagram: crate::schema::DiagramJson::from_diagram(&c.diagram),
            rep: [
                text::print_permutation(group.element(c.rep.0)),
                text::print_permutation(group.element(c.rep.1)),
            ],
            class_size: c.size,
            nu: c.nu,
        })
        .collect();
    (basis_a, basis_b)
}

/// Builds the algebra from the group tables and serializes its dump.
pub fn build_algebra_dump(
    spec: &GroupSpec,
    group: &GroupTable,
    dihedral: &DihedralClassTable,
) -> Result<(StructureAlgebra, AlgebraDump)> {
    let algebra = from_group(group, dihedral).map_err(|e| anyhow!("{e}"))?;
    let (basis_a, basis_b) = basis_entries(group, dihedral);
    let dump = dump_algebra(&algebra, spec.descriptor(group.order()), basis_a, basis_b);
    Ok((algebra, dump))
}

fn cache_path(cache_dir: &Path, spec: &GroupSpec) -> PathBuf {
    cache_dir.join(format!("{}-tf{}.json", spec.cache_key(), TENSOR_FORMAT_VERSION))
}

fn try_load_cache(path: &Path, spec: &GroupSpec) -> Option<AlgebraDump> {
    let data = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&data).ok()?;
    if file.cache_version != 1
        || file.algebra.format_version != TENSOR_FORMAT_VERSION
        || file.key != spec.cache_key()
    {
        return None; // stale versions are rebuilt, never migrated
    }
    Some(file.algebra)
}

fn write_cache(path: &Path, spec: &GroupSpec, dump: &AlgebraDump) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating cache dir {}", parent.display()))?;
    }
    let file = CacheFile {
        cache_version: 1,
        key: spec.cache_key(),
        metadata: CacheMetadata {
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        },
        algebra: dump.clone(),
    };
    fs::write(path, serde_json::to_string_pretty(&file)?)
        .with_context(|| format!("writing cache {}", path.display()))?;
    Ok(())
}

/// Loads the algebra from the cache when possible, otherwise builds it from
/// scratch (and stores it when a cache directory is given).
pub fn load_or_build(
    spec: &GroupSpec,
    order_cap: Option<usize>,
    cache_dir: Option<&Path>,
) -> Result<LoadedAlgebra> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, spec);
        if let Some(dump) = try_load_cache(&path, spec) {
            let algebra = load_algebra(&dump)?;
            return Ok(LoadedAlgebra { algebra, dump, from_cache: true });
        }
    }
    let (group, dihedral) = spec.build_tables(order_cap)?;
    let (algebra, dump) = build_algebra_dump(spec, &group, &dihedral)?;
    if let Some(dir) = cache_dir {
        write_cache(&cache_path(dir, spec), spec, &dump)?;
    }
    Ok(LoadedAlgebra { algebra, dump, from_cache: false })
}

/// Parses the `--generators` flag: permutations separated by semicolons.
pub fn parse_generators(text_arg: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut gens = Vec::new();
    for part in text_arg.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        gens.push(text::parse_permutation(part, degree)?);
    }
    Ok(gens)
}

/// Resolves the shared `--n` / `--degree --generators` group flags.
pub fn group_spec_from_flags(
    n: Option<usize>,
    degree: Option<usize>,
    generators: Option<&str>,
) -> Result<GroupSpec> {
    match (n, degree, generators) {
        (Some(n), None, None) => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            Ok(GroupSpec::Symmetric { n })
        }
        (None, Some(degree), Some(gens)) => {
            if degree == 0 {
                bail!("--degree must be at least 1");
            }
            Ok(GroupSpec::Generated { degree, generators: parse_generators(gens, degree)? })
        }
        _ => bail!("specify either --n N, or --degree D with --generators LIST"),
    }
}
