//! JSON wire formats: groups as generator lists, designs as block lists
//! with an optional resolution.

use serde::{Deserialize, Serialize};

use crate::designs::{Resolution, TripleSystem};
use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;

/// Group file: `{"degree": d, "generators": [[images..], ..], "name": ..?}`
/// with 0-based image arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup, name: Option<String>) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g
                .generators()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
            name,
        }
    }

    pub fn to_group(&self) -> Result<PermGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|images| Permutation::new(images.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::close(self.degree, gens)
    }
}

/// Design file: `{"v": n, "blocks": [[a,b,c], ..], "resolution": [[i, ..], ..]?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DesignFile {
    pub v: u32,
    pub blocks: Vec<[u32; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<Vec<usize>>>,
}

impl DesignFile {
    pub fn from_design(t: &TripleSystem, r: Option<&Resolution>) -> Self {
        DesignFile {
            v: t.v,
            blocks: t.blocks.clone(),
            resolution: r.map(|res| res.classes.clone()),
        }
    }

    pub fn to_design(&self) -> (TripleSystem, Option<Resolution>) {
        (
            TripleSystem::new(self.v, self.blocks.clone()),
            self.resolution
                .as_ref()
                .map(|classes| Resolution {
                    classes: classes.clone(),
                }),
        )
    }
}
