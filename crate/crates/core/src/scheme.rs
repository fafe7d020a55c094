//! Borel character solver (placeholder during bring-up).

/// Convention for the undefined ν-shift; see module docs once implemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuConvention {
    SelfMember,
    Successor,
    Predecessor,
}
