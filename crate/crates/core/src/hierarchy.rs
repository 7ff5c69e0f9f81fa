//! Semantic class hierarchy.
//!
//! A hierarchy is a forest over class vertices. Every vertex carries an
//! explicit level; level 0 holds the leaf classes the segmentation model
//! predicts, coarser levels hold progressively more general concepts. Each
//! vertex has at most one parent, and a parent always sits on a strictly
//! coarser level than its child.
//!
//! Leaves do not need a complete ancestor chain. A leaf without an ancestor at
//! some level maps to the coarsest vertex of its chain that does not exceed
//! that level (possibly the leaf itself), so classes without parents behave
//! exactly like in a flat label space.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex identifier. Leaves occupy `0..leaf_count`.
pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("cannot read hierarchy file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed hierarchy document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("hierarchy declares no level-0 (leaf) vertices")]
    EmptyLeafSet,
    #[error("hierarchy must declare at least one level")]
    NoLevels,
    #[error("vertex id {0} appears more than once")]
    DuplicateVertexId(VertexId),
    #[error("vertex ids must be dense 0..{expected}; id {id} is out of range")]
    SparseVertexIds { id: VertexId, expected: usize },
    #[error("leaf vertex {id} ({name}) must have an id below the leaf count {leaf_count}")]
    LeafIdOutOfOrder {
        id: VertexId,
        name: String,
        leaf_count: usize,
    },
    #[error("vertex {id} ({name}) has level {level}, but the hierarchy only has {levels} levels")]
    LevelOutOfRange {
        id: VertexId,
        name: String,
        level: usize,
        levels: usize,
    },
    #[error("vertex {child} references missing parent {parent}")]
    DanglingParentReference { child: VertexId, parent: VertexId },
    #[error("vertex {child} has more than one parent ({first} and {second})")]
    MultipleParents {
        child: VertexId,
        first: VertexId,
        second: VertexId,
    },
    #[error("cycle detected through vertex {0}")]
    CycleDetected(VertexId),
    #[error("edge {parent} -> {child}: parent level {parent_level} is not above child level {child_level}")]
    LevelInversion {
        parent: VertexId,
        child: VertexId,
        parent_level: usize,
        child_level: usize,
    },
    #[error("vertex {id} ({name}) has no leaf descendants")]
    NoLeafDescendant { id: VertexId, name: String },
}

/// One entry of the `vertices` array of a hierarchy document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub name: String,
    pub level: usize,
    #[serde(default)]
    pub parent: Option<VertexId>,
}

/// On-disk layout of a hierarchy file.
///
/// `edges` is an optional `[parent, child]` list that may be used instead of
/// (or together with) the per-vertex `parent` field.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct HierarchyDocument {
    pub levels: usize,
    pub vertices: Vec<VertexRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub colors: BTreeMap<String, String>,
}

/// A validated class hierarchy. Immutable after construction.
#[derive(Debug, Clone)]
pub struct HierarchyGraph {
    vertices: Vec<VertexRecord>,
    children: Vec<Vec<VertexId>>,
    leaf_count: usize,
    level_count: usize,
    generality: Vec<u32>,
    // ancestor_table[level * leaf_count + leaf]
    ancestor_table: Vec<VertexId>,
    colors: BTreeMap<String, String>,
}

impl HierarchyGraph {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, HierarchyError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| HierarchyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, HierarchyError> {
        let doc: HierarchyDocument = serde_json::from_str(text)?;
        Self::from_document(doc)
    }

    /// A single-level hierarchy over `leaf_count` classes named by their id.
    pub fn flat(leaf_count: usize) -> Result<Self, HierarchyError> {
        let vertices = (0..leaf_count)
            .map(|i| VertexRecord {
                id: i as VertexId,
                name: format!("class_{i}"),
                level: 0,
                parent: None,
            })
            .collect();
        Self::from_document(HierarchyDocument {
            levels: 1,
            vertices,
            ..Default::default()
        })
    }

    pub fn from_document(doc: HierarchyDocument) -> Result<Self, HierarchyError> {
        let HierarchyDocument {
            levels,
            vertices: records,
            edges,
            colors,
        } = doc;
        if levels == 0 {
            return Err(HierarchyError::NoLevels);
        }
        let count = records.len();

        // dense ids, sorted by id
        let mut slots: Vec<Option<VertexRecord>> = vec![None; count];
        for rec in records {
            let idx = rec.id as usize;
            if idx >= count {
                return Err(HierarchyError::SparseVertexIds {
                    id: rec.id,
                    expected: count,
                });
            }
            if slots[idx].is_some() {
                return Err(HierarchyError::DuplicateVertexId(rec.id));
            }
            slots[idx] = Some(rec);
        }
        let mut vertices: Vec<VertexRecord> =
            slots.into_iter().map(|s| s.expect("dense ids")).collect();

        let leaf_count = vertices.iter().filter(|v| v.level == 0).count();
        if leaf_count == 0 {
            return Err(HierarchyError::EmptyLeafSet);
        }
        for v in &vertices {
            if v.level >= levels {
                return Err(HierarchyError::LevelOutOfRange {
                    id: v.id,
                    name: v.name.clone(),
                    level: v.level,
                    levels,
                });
            }
            if v.level == 0 && v.id as usize >= leaf_count {
                return Err(HierarchyError::LeafIdOutOfOrder {
                    id: v.id,
                    name: v.name.clone(),
                    leaf_count,
                });
            }
        }

        // merge explicit edges into the parent field
        for (parent, child) in edges {
            if child as usize >= count {
                return Err(HierarchyError::DanglingParentReference { child, parent });
            }
            let slot = &mut vertices[child as usize].parent;
            match *slot {
                Some(existing) if existing != parent => {
                    return Err(HierarchyError::MultipleParents {
                        child,
                        first: existing,
                        second: parent,
                    })
                }
                _ => *slot = Some(parent),
            }
        }
        for v in &vertices {
            if let Some(p) = v.parent {
                if p as usize >= count {
                    return Err(HierarchyError::DanglingParentReference {
                        child: v.id,
                        parent: p,
                    });
                }
            }
        }

        detect_cycles(&vertices)?;

        for v in &vertices {
            if let Some(p) = v.parent {
                let parent_level = vertices[p as usize].level;
                if parent_level <= v.level {
                    return Err(HierarchyError::LevelInversion {
                        parent: p,
                        child: v.id,
                        parent_level,
                        child_level: v.level,
                    });
                }
            }
        }

        let mut children = vec![Vec::new(); count];
        for v in &vertices {
            if let Some(p) = v.parent {
                children[p as usize].push(v.id);
            }
        }

        // each leaf bumps every vertex on its chain
        let mut generality = vec![0u32; count];
        for leaf in 0..leaf_count {
            let mut cur = Some(leaf as VertexId);
            while let Some(v) = cur {
                generality[v as usize] += 1;
                cur = vertices[v as usize].parent;
            }
        }
        if let Some(v) = vertices.iter().find(|v| generality[v.id as usize] == 0) {
            return Err(HierarchyError::NoLeafDescendant {
                id: v.id,
                name: v.name.clone(),
            });
        }

        let mut ancestor_table = vec![0; levels * leaf_count];
        for level in 0..levels {
            for leaf in 0..leaf_count {
                let mut cur = leaf as VertexId;
                while let Some(p) = vertices[cur as usize].parent {
                    if vertices[p as usize].level > level {
                        break;
                    }
                    cur = p;
                }
                ancestor_table[level * leaf_count + leaf] = cur;
            }
        }

        Ok(Self {
            vertices,
            children,
            leaf_count,
            level_count: levels,
            generality,
            ancestor_table,
            colors,
        })
    }

    /// Number of leaf classes `|Y|`.
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// Number of levels, i.e. `L + 1`.
    pub fn level_count(&self) -> usize {
        self.level_count
    }

    /// Index of the coarsest level, `L`.
    pub fn max_level(&self) -> usize {
        self.level_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: VertexId) -> &VertexRecord {
        &self.vertices[id as usize]
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn children(&self, id: VertexId) -> &[VertexId] {
        &self.children[id as usize]
    }

    pub fn is_leaf(&self, id: VertexId) -> bool {
        (id as usize) < self.leaf_count
    }

    pub fn colors(&self) -> &BTreeMap<String, String> {
        &self.colors
    }

    /// The vertex a leaf prediction is reported as when the component is
    /// assigned to `level`: the coarsest ancestor-or-self of `leaf` whose
    /// level does not exceed `level`.
    ///
    /// Panics if `leaf` is not a leaf or `level` is out of range.
    pub fn ancestor_at_level(&self, leaf: VertexId, level: usize) -> VertexId {
        assert!(self.is_leaf(leaf), "vertex {leaf} is not a leaf");
        assert!(level < self.level_count, "level {level} out of range");
        self.ancestor_table[level * self.leaf_count + leaf as usize]
    }

    /// Leaf-indexed lookup table for one level, for hot loops.
    pub fn level_map(&self, level: usize) -> &[VertexId] {
        let start = level * self.leaf_count;
        &self.ancestor_table[start..start + self.leaf_count]
    }

    /// Number of leaf descendants of `v` (1 for a leaf).
    pub fn generality(&self, v: VertexId) -> u32 {
        self.generality[v as usize]
    }

    /// Whether `ancestor` lies on the parent chain of `v` (or is `v`).
    pub fn is_ancestor_or_self(&self, ancestor: VertexId, v: VertexId) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if c == ancestor {
                return true;
            }
            cur = self.vertices[c as usize].parent;
        }
        false
    }

    /// Vertex counts per level.
    pub fn level_populations(&self) -> Vec<usize> {
        let mut pops = vec![0; self.level_count];
        for v in &self.vertices {
            pops[v.level] += 1;
        }
        pops
    }

    /// Levels that contain no vertex. Legal, but usually a mistake.
    pub fn empty_levels(&self) -> Vec<usize> {
        self.level_populations()
            .iter()
            .enumerate()
            .filter(|(_, &n)| n == 0)
            .map(|(l, _)| l)
            .collect()
    }

    /// Per level, a histogram `generality -> vertex count`.
    pub fn generality_histogram(&self) -> Vec<BTreeMap<u32, usize>> {
        let mut hist = vec![BTreeMap::new(); self.level_count];
        for v in &self.vertices {
            *hist[v.level]
                .entry(self.generality[v.id as usize])
                .or_insert(0) += 1;
        }
        hist
    }

    /// Looks a vertex up by name.
    pub fn find(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().find(|v| v.name == name).map(|v| v.id)
    }
}

fn detect_cycles(vertices: &[VertexRecord]) -> Result<(), HierarchyError> {
    // 0 = unvisited, 1 = on current chain, 2 = known acyclic
    let mut state = vec![0u8; vertices.len()];
    let mut chain = Vec::new();
    for start in 0..vertices.len() {
        if state[start] != 0 {
            continue;
        }
        chain.clear();
        let mut cur = Some(start as VertexId);
        while let Some(v) = cur {
            match state[v as usize] {
                1 => return Err(HierarchyError::CycleDetected(v)),
                2 => break,
                _ => {}
            }
            state[v as usize] = 1;
            chain.push(v);
            cur = vertices[v as usize].parent;
        }
        for &v in &chain {
            state[v as usize] = 2;
        }
    }
    Ok(())
}
