//! The modal language with three negations.
//!
//! ASCII surface syntax:
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | '~' unary | '-' unary | '[]' unary | '<>' unary | atom
//! atom    := ident | 'T' | 'F' | '(' formula ')'
//! ```
//!
//! `!` is classical negation, `~` the closed-complement (paraconsistent)
//! negation and `-` the open-complement (paracomplete) negation.

mod enumerate;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use enumerate::enumerate_formulas;
pub use parse::{parse, SyntaxError};

use crate::semantics::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `!φ`
    ClassNeg(Box<Formula>),
    /// `~φ`
    ParaNeg(Box<Formula>),
    /// `-φ`
    CompNeg(Box<Formula>),
    /// `[]φ`
    Box(Box<Formula>),
    /// `<>φ`
    Diamond(Box<Formula>),
}

/// A syntactic fragment, used to restrict preservation checks to the
/// connectives whose set operators commute in one direction with a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fragment {
    /// Atoms, constants, `&`, `|`, `<>`, `~`.
    ClosureNegation,
    /// Atoms, constants, `&`, `|`, `[]`, `-`.
    InteriorNegation,
    /// Everything.
    Full,
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn class_neg(inner: Formula) -> Self {
        Formula::ClassNeg(Box::new(inner))
    }

    pub fn para_neg(inner: Formula) -> Self {
        Formula::ParaNeg(Box::new(inner))
    }

    pub fn comp_neg(inner: Formula) -> Self {
        Formula::CompNeg(Box::new(inner))
    }

    pub fn boxed(inner: Formula) -> Self {
        Formula::Box(Box::new(inner))
    }

    pub fn diamond(inner: Formula) -> Self {
        Formula::Diamond(Box::new(inner))
    }

    /// The negation native to `mode`.
    pub fn negation(mode: Mode, inner: Formula) -> Self {
        match mode {
            Mode::Classical => Formula::class_neg(inner),
            Mode::Paraconsistent => Formula::para_neg(inner),
            Mode::Paracomplete => Formula::comp_neg(inner),
        }
    }

    /// Nesting of operators that invoke interior or closure: `[]`, `<>`, `~`
    /// and `-`. Classical negation is a plain complement and adds nothing.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(l, r) | Formula::Or(l, r) => l.modal_depth().max(r.modal_depth()),
            Formula::ClassNeg(f) => f.modal_depth(),
            Formula::ParaNeg(f) | Formula::CompNeg(f) | Formula::Box(f) | Formula::Diamond(f) => 1 + f.modal_depth(),
        }
    }

    /// Negation-free.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => true,
            Formula::And(l, r) | Formula::Or(l, r) => l.is_positive() && r.is_positive(),
            Formula::ClassNeg(_) | Formula::ParaNeg(_) | Formula::CompNeg(_) => false,
            Formula::Box(f) | Formula::Diamond(f) => f.is_positive(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => 1,
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
            Formula::ClassNeg(f)
            | Formula::ParaNeg(f)
            | Formula::CompNeg(f)
            | Formula::Box(f)
            | Formula::Diamond(f) => 1 + f.size(),
        }
    }

    pub fn props(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Prop(name) => {
                out.insert(name);
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_props(out);
                r.collect_props(out);
            }
            Formula::ClassNeg(f)
            | Formula::ParaNeg(f)
            | Formula::CompNeg(f)
            | Formula::Box(f)
            | Formula::Diamond(f) => f.collect_props(out),
        }
    }

    /// The first negation symbol that `mode` does not admit, if any.
    pub fn foreign_negation(&self, mode: Mode) -> Option<char> {
        let own = match self {
            Formula::ClassNeg(_) if mode != Mode::Classical => Some('!'),
            Formula::ParaNeg(_) if mode != Mode::Paraconsistent => Some('~'),
            Formula::CompNeg(_) if mode != Mode::Paracomplete => Some('-'),
            _ => None,
        };
        own.or_else(|| match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => None,
            Formula::And(l, r) | Formula::Or(l, r) => l.foreign_negation(mode).or_else(|| r.foreign_negation(mode)),
            Formula::ClassNeg(f)
            | Formula::ParaNeg(f)
            | Formula::CompNeg(f)
            | Formula::Box(f)
            | Formula::Diamond(f) => f.foreign_negation(mode),
        })
    }

    pub fn in_fragment(&self, fragment: Fragment) -> bool {
        let own = match (fragment, self) {
            (Fragment::Full, _) => return true,
            (_, Formula::ClassNeg(_)) => false,
            (Fragment::ClosureNegation, Formula::CompNeg(_) | Formula::Box(_)) => false,
            (Fragment::InteriorNegation, Formula::ParaNeg(_) | Formula::Diamond(_)) => false,
            _ => true,
        };
        own && match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => true,
            Formula::And(l, r) | Formula::Or(l, r) => l.in_fragment(fragment) && r.in_fragment(fragment),
            Formula::ClassNeg(f)
            | Formula::ParaNeg(f)
            | Formula::CompNeg(f)
            | Formula::Box(f)
            | Formula::Diamond(f) => f.in_fragment(fragment),
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        match self {
            Formula::Prop(name) => write!(f, "{name}"),
            Formula::Top => write!(f, "T"),
            Formula::Bot => write!(f, "F"),
            Formula::Or(l, r) => {
                if level > 0 {
                    write!(f, "(")?;
                }
                l.write_at(f, 0)?;
                write!(f, " | ")?;
                r.write_at(f, 1)?;
                if level > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::And(l, r) => {
                if level > 1 {
                    write!(f, "(")?;
                }
                l.write_at(f, 1)?;
                write!(f, " & ")?;
                r.write_at(f, 2)?;
                if level > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::ClassNeg(g) => {
                write!(f, "!")?;
                g.write_at(f, 2)
            }
            Formula::ParaNeg(g) => {
                write!(f, "~")?;
                g.write_at(f, 2)
            }
            Formula::CompNeg(g) => {
                write!(f, "-")?;
                g.write_at(f, 2)
            }
            Formula::Box(g) => {
                write!(f, "[]")?;
                g.write_at(f, 2)
            }
            Formula::Diamond(g) => {
                write!(f, "<>")?;
                g.write_at(f, 2)
            }
        }
    }
}

/// Minimal-parentheses rendering in the surface syntax.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
