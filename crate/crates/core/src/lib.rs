//! Clausal fragments of the multi-modal logic K_N.
//!
//! The crate covers the whole pipeline from text to verdicts:
//!
//! * [`syntax`]: formulas, the concrete grammar, clausal-form recognition and
//!   the Horn/Krom/core × box/diamond fragment classifier.
//! * [`semantics`]: Kripke frames and models, the satisfaction relation and
//!   alphabet extensions.
//! * [`combinators`]: intersection and product of models, valuation override
//!   and successor-world surgery.
//! * [`translate`]: the Krom → Krom□ and Krom → Krom◇ rewritings.
//! * [`solver`]: a bounded-model oracle and a tableau decision procedure.
//! * [`expressiveness`]: bounded weak/strong translation checks, exhaustive
//!   search for translations and replays of the separation results.
//! * [`hierarchy`]: the expressiveness diagram as Graphviz DOT.
//!
//! Enumeration-heavy routines run on rayon when the `parallel` feature is on
//! (the default); every such routine also honours [`Limits::parallel`] so the
//! sequential path can be selected at run time.

pub mod combinators;
mod error;
pub mod expressiveness;
pub mod hierarchy;
mod par;
pub mod sample;
pub mod semantics;
pub mod solver;
pub mod syntax;
pub mod translate;

pub use error::{Error, LimitExceeded, Result};
pub use semantics::{check, KripkeFrame, KripkeModel, ModelError, PointedModel};
pub use syntax::{
    classify, parse, print, recognize_clausal, ClausalFormula, Clause, Formula, Fragment,
    FragmentDescriptor, Modality, PositiveLiteral,
};

/// Resource ceilings shared by the enumerating procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Pointed models (or valuations) a single call may enumerate.
    pub max_models: u64,
    /// Tableau nodes a single call may create.
    pub max_tableau_nodes: u64,
    /// Spread enumeration over the rayon pool. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_models: 10_000_000,
            max_tableau_nodes: 1_000_000,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl Limits {
    pub fn with_max_models(mut self, max_models: u64) -> Self {
        self.max_models = max_models;
        self
    }

    pub fn with_max_tableau_nodes(mut self, n: u64) -> Self {
        self.max_tableau_nodes = n;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}
