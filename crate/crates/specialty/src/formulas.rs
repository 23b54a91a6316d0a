//! Closed-form maxima of the specialty invariant at a fixed edge count,
//! over all graphs and over the bipartite, forest, and planar families.
//!
//! Internal arithmetic runs in 128 bits; results convert back to u64 with a
//! checked cast, so silent wraparound is impossible at any input size.

use crate::constructions;
use crate::Error;
use serde::Serialize;

/// Graph family a maximum ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFamily {
    All,
    Bipartite,
    Forest,
    Planar,
}

impl std::fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphFamily::All => "all",
            GraphFamily::Bipartite => "bipartite",
            GraphFamily::Forest => "forest",
            GraphFamily::Planar => "planar",
        })
    }
}

impl std::str::FromStr for GraphFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(GraphFamily::All),
            "bipartite" => Ok(GraphFamily::Bipartite),
            "forest" => Ok(GraphFamily::Forest),
            "planar" => Ok(GraphFamily::Planar),
            other => Err(format!(
                "unknown family {other:?}; expected all, bipartite, forest, or planar"
            )),
        }
    }
}

/// Case labels naming the extremal structure behind each closed form.
pub const CASE_APEX_ON_CLIQUE: &str = "apex-on-clique";
pub const CASE_APEX_ON_NEAR_CLIQUE: &str = "apex-on-near-clique";
pub const CASE_NEAR_COMPLETE: &str = "near-complete";
pub const CASE_APEX_ON_BICLIQUE: &str = "apex-on-biclique";
pub const CASE_NEAR_COMPLETE_BIPARTITE: &str = "near-complete-bipartite";
pub const CASE_SINGLE_EDGE: &str = "single-edge";
pub const CASE_PATH: &str = "path";
pub const CASE_GENERAL_OPTIMUM: &str = "general-optimum";
pub const CASE_ICOSAHEDRON: &str = "icosahedron";
pub const CASE_TRIANGLE_SHELLING: &str = "triangle-shelling";
pub const CASE_OPEN_LOWER_BOUND: &str = "open-question-lower-bound";

/// Outcome of a maximum query: the value, the structure achieving it, and
/// optionally a witness graph in graph6 form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub family: GraphFamily,
    #[serde(rename = "N")]
    pub n_edges: u64,
    pub value: u64,
    pub case_label: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ExtremalResult {
    /// False only for the planar edge counts where the true maximum is an
    /// open question and `value` is the best known lower bound.
    pub fn is_exact(&self) -> bool {
        self.case_label != CASE_OPEN_LOWER_BOUND
    }
}

/// Unique split N = n(n-1)/2 + m with 1 <= m <= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangularDecomposition {
    pub n_edges: u64,
    pub n: u64,
    pub m: u64,
}

/// Unique split N = n^2 + m with 1 <= m <= 2n + 1, i.e. n = isqrt(N - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub n_edges: u64,
    pub n: u64,
    pub m: u64,
}

pub fn binom2(n: u64) -> u64 {
    cast_u64(binom2_wide(n as u128))
}

fn binom2_wide(n: u128) -> u128 {
    n * (n - 1) / 2
}

fn cast_u64(v: u128) -> u64 {
    u64::try_from(v).expect("value exceeds the u64 range")
}

pub fn decompose_triangular(n_edges: u64) -> Result<TriangularDecomposition, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    let ne = n_edges as u128;
    let mut n = (2 * ne).isqrt();
    while binom2_wide(n + 1) < ne {
        n += 1;
    }
    while n > 1 && binom2_wide(n) >= ne {
        n -= 1;
    }
    let m = ne - binom2_wide(n);
    debug_assert!(1 <= m && m <= n);
    Ok(TriangularDecomposition {
        n_edges,
        n: n as u64,
        m: m as u64,
    })
}

pub fn decompose_square(n_edges: u64) -> Result<SquareDecomposition, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    let n = (n_edges - 1).isqrt();
    let m = n_edges - n * n;
    debug_assert!(1 <= m && m <= 2 * n + 1);
    Ok(SquareDecomposition { n_edges, n, m })
}

/// The three regimes of the unrestricted maximum, split on the residue m
/// within the triangular decomposition. Ties on the first boundary go to
/// the apex-on-clique form; the two constructions agree there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AllCase {
    ApexOnClique,
    ApexOnNearClique,
    NearComplete,
}

pub(crate) fn all_case(n: u64, m: u64) -> AllCase {
    if 5 * m + 3 <= 2 * n {
        AllCase::ApexOnClique
    } else if 2 * m + 1 <= n {
        AllCase::ApexOnNearClique
    } else {
        AllCase::NearComplete
    }
}

/// Exact maximum specialty over all graphs with `n_edges` edges.
pub fn max_specialty_all(n_edges: u64) -> Result<ExtremalResult, Error> {
    let d = decompose_triangular(n_edges)?;
    let (n, m) = (d.n as u128, d.m as u128);
    let apex_base = (n - 1) * binom2_wide(n);
    let (value, case_label) = match all_case(d.n, d.m) {
        AllCase::ApexOnClique => (apex_base + m * (3 * m - 1) / 2, CASE_APEX_ON_CLIQUE),
        // Here 5m + 3 > 2n, so 4m + 1 >= n and the term is nonnegative.
        AllCase::ApexOnNearClique => (apex_base + m * (4 * m + 1 - n), CASE_APEX_ON_NEAR_CLIQUE),
        // Here 2m >= n.
        AllCase::NearComplete => (n * binom2_wide(n) + m * (2 * m - n), CASE_NEAR_COMPLETE),
    };
    Ok(ExtremalResult {
        family: GraphFamily::All,
        n_edges,
        value: cast_u64(value),
        case_label,
        witness: None,
    })
}

/// Maximum specialty over graphs with `n_edges` edges and no universal
/// vertex, defined only when the decomposition has 2m <= n - 1. The inner
/// term can be negative, so this one is evaluated in signed arithmetic.
pub fn max_specialty_no_universal(n_edges: u64) -> Result<u64, Error> {
    let d = decompose_triangular(n_edges)?;
    if 2 * d.m + 1 > d.n {
        return Err(Error::UndefinedNoUniversalMax {
            n_edges,
            n: d.n,
            m: d.m,
        });
    }
    let (n, m) = (d.n as i128, d.m as i128);
    let value = (n - 1) * (n * (n - 1) / 2) + m * (4 * m - n + 1);
    Ok(u64::try_from(value).expect("the no-universal maximum is a specialty, hence nonnegative"))
}

/// Exact maximum specialty over bipartite graphs with `n_edges` edges.
pub fn max_specialty_bipartite(n_edges: u64) -> Result<ExtremalResult, Error> {
    let d = decompose_square(n_edges)?;
    let (n, m) = (d.n as u128, d.m as u128);
    let (value, case_label) = if m <= n {
        (n * n * n + m * m, CASE_APEX_ON_BICLIQUE)
    } else {
        (n * n * n + n * n + m * (m - n), CASE_NEAR_COMPLETE_BIPARTITE)
    };
    Ok(ExtremalResult {
        family: GraphFamily::Bipartite,
        n_edges,
        value: cast_u64(value),
        case_label,
        witness: None,
    })
}

/// Exact maximum specialty over forests with `n_edges` edges. A path is
/// extremal; a single edge is the whole story at N = 1.
pub fn max_specialty_forest(n_edges: u64) -> Result<ExtremalResult, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    let (value, case_label) = if n_edges == 1 {
        (1, CASE_SINGLE_EDGE)
    } else {
        (cast_u64(2 * n_edges as u128 - 2), CASE_PATH)
    };
    Ok(ExtremalResult {
        family: GraphFamily::Forest,
        n_edges,
        value,
        case_label,
        witness: None,
    })
}

/// Maximum specialty over planar graphs with `n_edges` edges. Exact below
/// 10 edges (the unrestricted optimum is itself planar), at 30 (the
/// icosahedron), and from 33 on (triangle shellings). In between the
/// value is the best known lower bound and `is_exact` reports false.
pub fn max_specialty_planar(n_edges: u64) -> Result<ExtremalResult, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    let (value, case_label) = if n_edges <= 9 {
        (max_specialty_all(n_edges)?.value, CASE_GENERAL_OPTIMUM)
    } else if n_edges <= 32 {
        let (_, best) = constructions::planar_pool_best(n_edges)?;
        if n_edges == 30 {
            (best, CASE_ICOSAHEDRON)
        } else {
            (best, CASE_OPEN_LOWER_BOUND)
        }
    } else {
        let v = if n_edges % 3 == 0 {
            6 * n_edges as u128 - 36
        } else {
            6 * n_edges as u128 - 38
        };
        (cast_u64(v), CASE_TRIANGLE_SHELLING)
    };
    Ok(ExtremalResult {
        family: GraphFamily::Planar,
        n_edges,
        value,
        case_label,
        witness: None,
    })
}

/// Family dispatch for the four closed forms.
pub fn max_specialty(family: GraphFamily, n_edges: u64) -> Result<ExtremalResult, Error> {
    match family {
        GraphFamily::All => max_specialty_all(n_edges),
        GraphFamily::Bipartite => max_specialty_bipartite(n_edges),
        GraphFamily::Forest => max_specialty_forest(n_edges),
        GraphFamily::Planar => max_specialty_planar(n_edges),
    }
}
