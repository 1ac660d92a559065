//! Polynomial systems as tuples of supports: parsing, file format and the
//! benchmark generators.

mod generators;
mod parser;
mod support_file;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub use generators::{gen_cyclic, gen_generic_simplices, gen_nbody, gen_nvortex};
pub use parser::{parse_polynomials, to_polynomial_text};
pub use support_file::{from_support_json, to_support_json};

use crate::error::{GeometryError, SystemError};
use crate::linalg::IntVector;
use crate::polytope::Polytope;

/// A tuple of supports in a common ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub ambient_dim: usize,
    /// Each support is sorted and free of duplicates.
    pub supports: Vec<Vec<IntVector>>,
    /// Where the system came from: generator and parameters, or a file name.
    pub provenance: String,
    pub variables: Option<Vec<String>>,
}

impl SystemSpec {
    /// Validates the supports and collapses duplicate points.
    pub fn new(
        ambient_dim: usize,
        supports: Vec<Vec<IntVector>>,
        provenance: impl Into<String>,
    ) -> Result<Self, SystemError> {
        if supports.is_empty() {
            return Err(SystemError::NoSupports);
        }
        let mut clean = Vec::with_capacity(supports.len());
        for (index, s) in supports.into_iter().enumerate() {
            if s.is_empty() {
                return Err(SystemError::EmptySupport { index });
            }
            if let Some(p) = s.iter().find(|p| p.dim() != ambient_dim) {
                return Err(SystemError::PointDimension {
                    support: index,
                    expected: ambient_dim,
                    found: p.dim(),
                });
            }
            clean.push(s.into_iter().collect::<BTreeSet<_>>().into_iter().collect());
        }
        Ok(Self {
            ambient_dim,
            supports: clean,
            provenance: provenance.into(),
            variables: None,
        })
    }

    pub fn with_variables(mut self, names: Vec<String>) -> Self {
        self.variables = Some(names);
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// Newton polytopes of the supports, in order.
    pub fn polytopes(&self) -> Result<Vec<Polytope>, GeometryError> {
        self.supports.iter().map(|s| Polytope::new(s)).collect()
    }
}

/// Reads a system file. `.sup` and `.json` files (or anything starting with
/// `{`) are support files; everything else is polynomial text.
pub fn read_system_file(path: &Path) -> Result<SystemSpec, SystemError> {
    let text = std::fs::read_to_string(path).map_err(|source| SystemError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path.display().to_string();
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if matches!(ext, "sup" | "json") || text.trim_start().starts_with('{') {
        let spec = from_support_json(&text)?;
        Ok(if spec.provenance.is_empty() {
            spec.with_provenance(name)
        } else {
            spec
        })
    } else {
        Ok(parse_polynomials(&text)?.with_provenance(name))
    }
}

/// The benchmark families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Simplices,
    Cyclic,
    CyclicReduced,
    NBody,
    NVortex,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Simplices,
        Family::Cyclic,
        Family::CyclicReduced,
        Family::NBody,
        Family::NVortex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Simplices => "simplices",
            Family::Cyclic => "cyclic",
            Family::CyclicReduced => "cyclic-reduced",
            Family::NBody => "nbody",
            Family::NVortex => "nvortex",
        }
    }

    /// Instance of size `n`; only the simplices use the seed.
    pub fn generate(self, n: usize, seed: u64) -> Result<SystemSpec, SystemError> {
        if n < 3 {
            return Err(SystemError::InvalidParameter(format!(
                "{} needs n >= 3, got {n}",
                self.name()
            )));
        }
        Ok(match self {
            Family::Simplices => gen_generic_simplices(n, seed),
            Family::Cyclic => gen_cyclic(n, false),
            Family::CyclicReduced => gen_cyclic(n, true),
            Family::NBody => gen_nbody(n),
            Family::NVortex => gen_nvortex(n),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "simplex" | "generic" => "simplices",
            "reduced-cyclic" | "cyclic_reduced" => "cyclic-reduced",
            "n-body" => "nbody",
            "n-vortex" => "nvortex",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == alias)
            .ok_or(SystemError::UnknownFamily(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn duplicates_collapse() {
        let s = SystemSpec::new(2, vec![vec![v(&[1, 0]), v(&[0, 0]), v(&[1, 0])]], "t").unwrap();
        assert_eq!(s.supports[0], vec![v(&[0, 0]), v(&[1, 0])]);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(SystemSpec::new(2, vec![], "t"), Err(SystemError::NoSupports)));
        assert!(matches!(
            SystemSpec::new(2, vec![vec![v(&[1, 0])], vec![]], "t"),
            Err(SystemError::EmptySupport { index: 1 })
        ));
        assert!(matches!(
            SystemSpec::new(2, vec![vec![v(&[1, 0, 0])]], "t"),
            Err(SystemError::PointDimension { .. })
        ));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("katsura".parse::<Family>().is_err());
        assert!(Family::Cyclic.generate(2, 0).is_err());
    }
}
