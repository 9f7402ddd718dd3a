/// Limits and execution mode shared by the search, closure and construction
/// routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest face lattice that brute-force searches (and constructions) accept.
    pub max_elements: usize,
    /// Largest permutation group that [`crate::autom::closure`] will enumerate.
    pub max_closure: usize,
    /// Use the rayon thread pool where an operation has independent branches.
    /// Ignored when the crate is built without the `parallel` feature.
    pub parallel: bool,
}

pub const DEFAULT_MAX_ELEMENTS: usize = 1000;
pub const DEFAULT_MAX_CLOSURE: usize = 1_000_000;

impl Default for Config {
    fn default() -> Self {
        Config {
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_closure: DEFAULT_MAX_CLOSURE,
            parallel: true,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            parallel: false,
            ..Config::default()
        }
    }

    pub fn with_max_elements(mut self, max_elements: usize) -> Self {
        self.max_elements = max_elements;
        self
    }
}
