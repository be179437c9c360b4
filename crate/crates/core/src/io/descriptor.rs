use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup};
use crate::permgroup::{PermGroup, Permutation};
use crate::tower::{
    conj_tower, coset_tower, m_product_tower, tak_tower, zhat_group_tower, zp_group_tower, GroupTower, QuandleTower,
};

use super::{builtin_group, builtin_quandle, parse_quandle, read, GroupInput, PermGenerators, QuandleJson};

/// An inline `{"n", "op"}` table, `builtin:<name>`, or a path relative to
/// the descriptor.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuandleRef {
    Inline(QuandleJson),
    Name(String),
}

/// An inline Cayley table or generator list, `builtin:<name>`, or a path.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Cayley(CayleyTable),
    Generators(PermGenerators),
    Name(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupTowerDescriptor {
    Zp { p: u64, depth: usize },
    Zhat { depth: usize },
    Constant { group: GroupRef, depth: usize },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum TowerDescriptor {
    TakZp {
        p: u64,
        depth: usize,
    },
    TakZhat {
        depth: usize,
    },
    Tak {
        groups: GroupTowerDescriptor,
    },
    Conj {
        groups: GroupTowerDescriptor,
    },
    MProduct {
        depth: usize,
    },
    /// Subgroup generators and `h` per level, written as residues for
    /// cyclic levels, table indices for Cayley groups, or cycle notation.
    Coset {
        groups: GroupTowerDescriptor,
        subgroups: Vec<Vec<String>>,
        h: Vec<String>,
    },
    Explicit {
        levels: Vec<QuandleRef>,
        transitions: Vec<Vec<usize>>,
    },
    Constant {
        quandle: QuandleRef,
        depth: usize,
    },
    Product {
        left: Box<TowerDescriptor>,
        right: Box<TowerDescriptor>,
    },
    DisjointUnion {
        left: Box<TowerDescriptor>,
        right: Box<TowerDescriptor>,
    },
}

/// A descriptor without a `builder` key is read as explicit.
pub fn parse_tower_descriptor(text: &str) -> Result<TowerDescriptor> {
    let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(obj) = v.as_object_mut() {
        if !obj.contains_key("builder") && obj.contains_key("levels") {
            obj.insert("builder".into(), "explicit".into());
        }
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("tower descriptor: {e}")))
}

fn resolve_quandle(r: &QuandleRef, base: &Path) -> Result<crate::quandle::FiniteQuandle> {
    match r {
        QuandleRef::Inline(j) => j.clone().into_quandle(),
        QuandleRef::Name(s) => match s.strip_prefix("builtin:") {
            Some(name) => builtin_quandle(name),
            None => parse_quandle(&read(&base.join(s))?),
        },
    }
}

fn resolve_group(r: &GroupRef, base: &Path, bound: usize) -> Result<GroupInput> {
    match r {
        GroupRef::Cayley(t) => GroupInput::from_cayley(FiniteGroup::from_table(t.clone())?, bound),
        GroupRef::Generators(p) => GroupInput::from_generators(p, bound),
        GroupRef::Name(s) => match s.strip_prefix("builtin:") {
            Some(name) => builtin_group(name, bound),
            None => super::parse_group(&read(&base.join(s))?, bound),
        },
    }
}

/// Parses an element name at a given level.
type ElementParser = Box<dyn Fn(usize, &str) -> Result<Permutation>>;

/// The group tower and a parser for element names at each level.
fn group_tower(d: &GroupTowerDescriptor, base: &Path, bound: usize) -> Result<(GroupTower, ElementParser)> {
    match d {
        GroupTowerDescriptor::Zp { .. } | GroupTowerDescriptor::Zhat { .. } => {
            let gt = match *d {
                GroupTowerDescriptor::Zp { p, depth } => zp_group_tower(p, depth)?,
                GroupTowerDescriptor::Zhat { depth } => zhat_group_tower(depth)?,
                _ => unreachable!(),
            };
            if let Some(g) = gt.levels().iter().find(|g| g.order() > bound) {
                return Err(Error::SizeBound { size: g.order(), bound });
            }
            let levels: Vec<PermGroup> = gt.levels().to_vec();
            let parse = move |k: usize, s: &str| -> Result<Permutation> {
                let r: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                let g = &levels[k];
                if r >= g.order() {
                    return Err(Error::IndexOutOfRange(format!("residue {r} at level {k}")));
                }
                Ok(g.element(r).clone())
            };
            Ok((gt, Box::new(parse)))
        }
        GroupTowerDescriptor::Constant { group, depth } => {
            let input = resolve_group(group, base, bound)?;
            let gt = GroupTower::constant(input.group.clone(), *depth)?;
            Ok((gt, Box::new(move |_, s: &str| input.element(s))))
        }
    }
}

/// Builds and validates the tower. Relative paths are resolved against
/// `base`; `bound` caps group orders.
pub fn build_tower(d: &TowerDescriptor, base: &Path, bound: usize) -> Result<QuandleTower> {
    match d {
        TowerDescriptor::TakZp { p, depth } => build_tower(
            &TowerDescriptor::Tak { groups: GroupTowerDescriptor::Zp { p: *p, depth: *depth } },
            base,
            bound,
        ),
        TowerDescriptor::TakZhat { depth } => {
            build_tower(&TowerDescriptor::Tak { groups: GroupTowerDescriptor::Zhat { depth: *depth } }, base, bound)
        }
        TowerDescriptor::Tak { groups } => tak_tower(&group_tower(groups, base, bound)?.0),
        TowerDescriptor::Conj { groups } => conj_tower(&group_tower(groups, base, bound)?.0),
        TowerDescriptor::MProduct { depth } => m_product_tower(*depth),
        TowerDescriptor::Coset { groups, subgroups, h } => {
            let (gt, parse) = group_tower(groups, base, bound)?;
            if subgroups.len() != gt.depth() || h.len() != gt.depth() {
                return Err(Error::Malformed("coset tower needs one subgroup and one h per level".into()));
            }
            let subs = subgroups
                .iter()
                .enumerate()
                .map(|(k, gens)| {
                    let gens = gens.iter().map(|s| parse(k, s)).collect::<Result<Vec<_>>>()?;
                    gt.level(k).subgroup(&gens)
                })
                .collect::<Result<Vec<_>>>()?;
            let hs = h.iter().enumerate().map(|(k, s)| parse(k, s)).collect::<Result<Vec<_>>>()?;
            coset_tower(&gt, &subs, &hs)
        }
        TowerDescriptor::Explicit { levels, transitions } => {
            let levels = levels.iter().map(|r| resolve_quandle(r, base)).collect::<Result<Vec<_>>>()?;
            QuandleTower::new(levels, transitions.clone())
        }
        TowerDescriptor::Constant { quandle, depth } => QuandleTower::constant(resolve_quandle(quandle, base)?, *depth),
        TowerDescriptor::Product { left, right } => {
            Ok(build_tower(left, base, bound)?.product(&build_tower(right, base, bound)?))
        }
        TowerDescriptor::DisjointUnion { left, right } => {
            Ok(build_tower(left, base, bound)?.disjoint_union(&build_tower(right, base, bound)?))
        }
    }
}
