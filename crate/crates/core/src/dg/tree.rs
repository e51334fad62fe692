use std::fmt;

use crate::error::{Error, Result};

/// Planar rooted binary tree; leaves carry the inputs left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        Self::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Self::Leaf => 1,
            Self::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Self::Leaf => 0,
            Self::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf => write!(f, "•"),
            Self::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// All planar binary trees with `n` leaves, ordered by the size of the
/// left subtree and then recursively.
pub fn enumerate_trees(n: usize) -> Result<Vec<BinaryTree>> {
    if n == 0 {
        return Err(Error::InvalidArgument("a tree needs at least one leaf".into()));
    }
    let mut table: Vec<Vec<BinaryTree>> = vec![vec![], vec![BinaryTree::Leaf]];
    for m in 2..=n {
        let mut trees = Vec::new();
        for k in 1..m {
            for l in &table[k] {
                for r in &table[m - k] {
                    trees.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        table.push(trees);
    }
    Ok(table.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        assert!(enumerate_trees(0).is_err());
    }

    #[test]
    fn trees_have_right_shape() {
        for t in enumerate_trees(5).unwrap() {
            assert_eq!(t.leaves(), 5);
            assert_eq!(t.internal_nodes(), 4);
        }
    }
}
