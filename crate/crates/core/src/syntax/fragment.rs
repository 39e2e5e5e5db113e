use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClausalFormula, Clause};

/// Which clausal fragments a formula inhabits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FragmentDescriptor {
    /// Every clause has at most one positive literal.
    pub horn: bool,
    /// Every clause has at most two literals.
    pub krom: bool,
    pub core: bool,
    /// No diamond inside any literal.
    pub box_only: bool,
    /// No box inside any literal; the clause prefix does not count.
    pub diamond_only: bool,
}

pub fn classify(cf: &ClausalFormula) -> FragmentDescriptor {
    let horn = cf.clauses().iter().all(|c| c.positives().len() <= 1);
    let krom = cf.clauses().iter().all(|c| c.width() <= 2);
    let box_only = !cf.clauses().iter().flat_map(Clause::literals).any(|l| l.contains_diamond());
    let diamond_only = !cf.clauses().iter().flat_map(Clause::literals).any(|l| l.contains_box());
    FragmentDescriptor { horn, krom, core: horn && krom, box_only, diamond_only }
}

/// Clause-shape restriction of a fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Bool,
    Horn,
    Krom,
    Core,
}

/// Literal restriction of a fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Restriction {
    None,
    BoxOnly,
    DiamondOnly,
}

/// One of the ten named fragments: Bool, Horn, Krom, core and the box and
/// diamond variants of the last three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fragment {
    pub shape: Shape,
    pub restriction: Restriction,
}

impl Fragment {
    pub const BOOL: Fragment = Fragment::new(Shape::Bool, Restriction::None);
    pub const HORN: Fragment = Fragment::new(Shape::Horn, Restriction::None);
    pub const KROM: Fragment = Fragment::new(Shape::Krom, Restriction::None);
    pub const CORE: Fragment = Fragment::new(Shape::Core, Restriction::None);
    pub const HORN_BOX: Fragment = Fragment::new(Shape::Horn, Restriction::BoxOnly);
    pub const HORN_DIAMOND: Fragment = Fragment::new(Shape::Horn, Restriction::DiamondOnly);
    pub const KROM_BOX: Fragment = Fragment::new(Shape::Krom, Restriction::BoxOnly);
    pub const KROM_DIAMOND: Fragment = Fragment::new(Shape::Krom, Restriction::DiamondOnly);
    pub const CORE_BOX: Fragment = Fragment::new(Shape::Core, Restriction::BoxOnly);
    pub const CORE_DIAMOND: Fragment = Fragment::new(Shape::Core, Restriction::DiamondOnly);

    pub const ALL: [Fragment; 10] = [
        Fragment::BOOL,
        Fragment::HORN,
        Fragment::KROM,
        Fragment::CORE,
        Fragment::HORN_BOX,
        Fragment::HORN_DIAMOND,
        Fragment::KROM_BOX,
        Fragment::KROM_DIAMOND,
        Fragment::CORE_BOX,
        Fragment::CORE_DIAMOND,
    ];

    pub const fn new(shape: Shape, restriction: Restriction) -> Self {
        Fragment { shape, restriction }
    }

    pub fn admits(&self, d: &FragmentDescriptor) -> bool {
        let shape = match self.shape {
            Shape::Bool => true,
            Shape::Horn => d.horn,
            Shape::Krom => d.krom,
            Shape::Core => d.core,
        };
        let restriction = match self.restriction {
            Restriction::None => true,
            Restriction::BoxOnly => d.box_only,
            Restriction::DiamondOnly => d.diamond_only,
        };
        shape && restriction
    }

    pub fn contains(&self, cf: &ClausalFormula) -> bool {
        self.admits(&classify(cf))
    }

    /// Largest number of positive literals a clause may have.
    pub fn max_positives(&self) -> Option<usize> {
        match self.shape {
            Shape::Horn | Shape::Core => Some(1),
            Shape::Krom => Some(2),
            Shape::Bool => None,
        }
    }

    /// Largest clause width.
    pub fn max_width(&self) -> Option<usize> {
        match self.shape {
            Shape::Krom | Shape::Core => Some(2),
            Shape::Horn | Shape::Bool => None,
        }
    }

    pub fn allows_diamond(&self) -> bool {
        self.restriction != Restriction::BoxOnly
    }

    pub fn allows_box(&self) -> bool {
        self.restriction != Restriction::DiamondOnly
    }

    /// Short ASCII identifier, e.g. `horn-box`.
    pub fn slug(&self) -> String {
        let shape = match self.shape {
            Shape::Bool => "bool",
            Shape::Horn => "horn",
            Shape::Krom => "krom",
            Shape::Core => "core",
        };
        match self.restriction {
            Restriction::None => shape.to_string(),
            Restriction::BoxOnly => format!("{shape}-box"),
            Restriction::DiamondOnly => format!("{shape}-diamond"),
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match self.shape {
            Shape::Bool => "Bool",
            Shape::Horn => "Horn",
            Shape::Krom => "Krom",
            Shape::Core => "core",
        };
        let suffix = match self.restriction {
            Restriction::None => "",
            Restriction::BoxOnly => "□",
            Restriction::DiamondOnly => "◇",
        };
        write!(f, "{shape}{suffix}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fragment `{0}` (expected e.g. bool, horn, krom, core, horn-box, krom-diamond)")]
pub struct UnknownFragment(pub String);

impl FromStr for Fragment {
    type Err = UnknownFragment;

    /// Accepts `horn`, `horn-box`, `horn,box`, `horn□`, `core-dia`, etc.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_lowercase();
        let (shape, rest) = lower
            .split_once(['-', ',', '_', ' '])
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .unwrap_or_else(|| {
                for (sym, name) in [("□", "box"), ("◇", "diamond")] {
                    if let Some(head) = lower.strip_suffix(sym) {
                        return (head.to_string(), name.to_string());
                    }
                }
                (lower.clone(), String::new())
            });
        let shape = match shape.as_str() {
            "bool" => Shape::Bool,
            "horn" => Shape::Horn,
            "krom" => Shape::Krom,
            "core" => Shape::Core,
            _ => return Err(UnknownFragment(s.to_string())),
        };
        let restriction = match rest.as_str() {
            "" => Restriction::None,
            "box" | "□" => Restriction::BoxOnly,
            "diamond" | "dia" | "◇" => Restriction::DiamondOnly,
            _ => return Err(UnknownFragment(s.to_string())),
        };
        // Bool has no box/diamond variants among the named fragments.
        if shape == Shape::Bool && restriction != Restriction::None {
            return Err(UnknownFragment(s.to_string()));
        }
        Ok(Fragment { shape, restriction })
    }
}
