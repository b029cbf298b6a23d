//! Conjecture statements: conjunctions of (in)equalities between expression
//! trees in geometric quantities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::ExprTree;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Rel {
    Eq,
    Ne,
    Le,
    Lt,
    Ge,
    Gt,
}

impl Rel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single relation between two expressions.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Clause {
    pub rel: Rel,
    pub lhs: ExprTree,
    pub rhs: ExprTree,
    /// Optional human-readable label, e.g. for predicate side clauses.
    pub label: Option<String>,
}

impl Clause {
    pub fn new(rel: Rel, lhs: ExprTree, rhs: ExprTree) -> Self {
        Clause {
            rel,
            lhs,
            rhs,
            label: None,
        }
    }

    pub fn labeled(rel: Rel, lhs: ExprTree, rhs: ExprTree, label: impl Into<String>) -> Self {
        Clause {
            rel,
            lhs,
            rhs,
            label: Some(label.into()),
        }
    }

    pub fn eq(lhs: ExprTree, rhs: ExprTree) -> Self {
        Clause::new(Rel::Eq, lhs, rhs)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

/// Where a conjecture came from; predicates remember their surface form.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum ConjectureOrigin {
    RawEquation,
    Predicate {
        name: String,
        groups: Vec<Vec<String>>,
    },
}

/// A conjecture: the conjunction of its clauses.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Conjecture {
    pub clauses: Vec<Clause>,
    pub origin: ConjectureOrigin,
}

impl Conjecture {
    pub fn equation(rel: Rel, lhs: ExprTree, rhs: ExprTree) -> Self {
        Conjecture {
            clauses: vec![Clause::new(rel, lhs, rhs)],
            origin: ConjectureOrigin::RawEquation,
        }
    }

    pub fn single(clause: Clause) -> Self {
        Conjecture {
            clauses: vec![clause],
            origin: ConjectureOrigin::RawEquation,
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.clauses {
            if !first {
                write!(f, " and ")?;
            }
            first = false;
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}
