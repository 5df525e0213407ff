use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Role of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// Coordinates x of the base space.
    Base,
    /// Roots y of the minimal polynomial.
    Root,
    /// Closure variables w introduced by normalization.
    Closure,
    /// Auxiliary variables (elimination tags, primitive elements, t).
    Aux,
}

/// Ordered variable names with their blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    blocks: Vec<Block>,
}

impl VarSet {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, Block)>) -> Result<Arc<VarSet>> {
        let mut names = Vec::new();
        let mut blocks = Vec::new();
        for (n, b) in vars {
            let n = n.into();
            if names.contains(&n) {
                return Err(Error::Inconsistent(format!("duplicate variable `{n}`")));
            }
            names.push(n);
            blocks.push(b);
        }
        Ok(Arc::new(VarSet { names, blocks }))
    }

    /// All variables in one block.
    pub fn of_block<S: AsRef<str>>(names: &[S], block: Block) -> Result<Arc<VarSet>> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), block)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn block(&self, i: usize) -> Block {
        self.blocks[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn indices_of(&self, block: Block) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.blocks[i] == block).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, Block)> + '_ {
        self.names.iter().map(|s| s.as_str()).zip(self.blocks.iter().copied())
    }

    /// A new set with `extra` placed in front.
    pub fn prepend<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, Block)>) -> Result<Arc<VarSet>> {
        let mut v: Vec<(String, Block)> = extra.into_iter().map(|(n, b)| (n.into(), b)).collect();
        v.extend(self.entries().map(|(n, b)| (n.to_string(), b)));
        Self::new(v)
    }

    /// A new set with `extra` appended.
    pub fn append<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, Block)>) -> Result<Arc<VarSet>> {
        let mut v: Vec<(String, Block)> = self.entries().map(|(n, b)| (n.to_string(), b)).collect();
        v.extend(extra.into_iter().map(|(n, b)| (n.into(), b)));
        Self::new(v)
    }

    /// The set restricted to the given indices, in that order.
    pub fn select(&self, idx: &[usize]) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: idx.iter().map(|&i| self.names[i].clone()).collect(),
            blocks: idx.iter().map(|&i| self.blocks[i]).collect(),
        })
    }

    /// A fresh name not yet used, built from `stem`.
    pub fn fresh(&self, stem: &str) -> String {
        if self.index(stem).is_none() {
            return stem.to_string();
        }
        (1..).map(|k| format!("{stem}{k}")).find(|n| self.index(n).is_none()).expect("unbounded")
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}
