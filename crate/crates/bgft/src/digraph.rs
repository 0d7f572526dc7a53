//! Weighted directed graphs, deterministic generators, and the directed
//! combinatorial Laplacian `L = D_out − A`.

use thiserror::Error;

use crate::densela::RMatrix;
use crate::prng::Prng;
use crate::scalar::Scalar;

/// Errors from graph construction and the edge-list parser.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DigraphError<T: Scalar> {
    #[error("graph needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("edge ({src}, {dst}) is out of range for {n} vertices")]
    IndexOutOfRange { src: usize, dst: usize, n: usize },
    #[error("self-loop at vertex {vertex} is not allowed")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge ({src}, {dst})")]
    DuplicateEdge { src: usize, dst: usize },
    #[error("edge ({src}, {dst}) has non-positive weight {weight}")]
    NonPositiveWeight { src: usize, dst: usize, weight: T },
    #[error("edge ({src}, {dst}) has non-finite weight")]
    NonFiniteWeight { src: usize, dst: usize },
    #[error("edge probability must lie in [0, 1], got {p}")]
    InvalidProbability { p: T },
    #[error("perturbation edge weight must be positive and finite, got {weight}")]
    InvalidWeight { weight: T },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list has no `n <count>` header")]
    MissingHeader,
}

/// Weighted digraph on vertices `0..n` with no self-loops.
///
/// Stored densely as the weighted adjacency matrix `A`, where `A[i][j] > 0`
/// is the weight of edge `i → j` and `0` means no edge. All weights are
/// finite and the diagonal is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph<T: Scalar> {
    adjacency: RMatrix<T>,
}

/// Directed combinatorial Laplacian `L = D_out − A`.
///
/// `D_out` is the diagonal of out-degrees (row sums of `A`), so every row of
/// `L` sums to zero and the all-ones vector is always a right eigenvector
/// with eigenvalue zero — the DC mode of the transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian<T: Scalar> {
    matrix: RMatrix<T>,
}

impl<T: Scalar> Digraph<T> {
    /// Graph from an explicit edge list `(src, dst, weight)`.
    ///
    /// Rejects, each with its own error: out-of-range endpoints, self-loops,
    /// duplicate edges, and non-positive or non-finite weights. An empty edge
    /// list is a valid (empty) graph.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize, T)]) -> Result<Self, DigraphError<T>> {
        if n == 0 {
            return Err(DigraphError::TooFewVertices { n, min: 1 });
        }
        let mut adjacency = RMatrix::zeros(n, n);
        for &(src, dst, weight) in edges {
            if src >= n || dst >= n {
                return Err(DigraphError::IndexOutOfRange { src, dst, n });
            }
            if src == dst {
                return Err(DigraphError::SelfLoop { vertex: src });
            }
            if !weight.is_finite() {
                return Err(DigraphError::NonFiniteWeight { src, dst });
            }
            if weight <= T::zero() {
                return Err(DigraphError::NonPositiveWeight { src, dst, weight });
            }
            if adjacency[(src, dst)] != T::zero() {
                return Err(DigraphError::DuplicateEdge { src, dst });
            }
            adjacency[(src, dst)] = weight;
        }
        Ok(Self { adjacency })
    }

    /// Directed cycle `0 → 1 → ⋯ → n−1 → 0` with unit weights. Requires
    /// `n ≥ 2`.
    pub fn directed_cycle(n: usize) -> Result<Self, DigraphError<T>> {
        if n < 2 {
            return Err(DigraphError::TooFewVertices { n, min: 2 });
        }
        let edges: Vec<(usize, usize, T)> = (0..n).map(|i| (i, (i + 1) % n, T::one())).collect();
        Self::from_edge_list(n, &edges)
    }

    /// Directed cycle plus independent extra edges: every ordered pair
    /// `(i, j)` with `i ≠ j` that is not a cycle edge receives an edge of
    /// weight `w` with probability `p`.
    ///
    /// A pure function of its arguments. Candidate pairs are visited in
    /// row-major order and each consumes exactly one uniform draw from a
    /// fresh [`Prng::new(seed)`] stream, so the edge set is reproducible
    /// bit-for-bit. Requires `n ≥ 2`, `0 ≤ p ≤ 1`, and `w` positive finite.
    pub fn perturbed_cycle(n: usize, p: T, w: T, seed: u64) -> Result<Self, DigraphError<T>> {
        if n < 2 {
            return Err(DigraphError::TooFewVertices { n, min: 2 });
        }
        if !(p >= T::zero() && p <= T::one()) {
            return Err(DigraphError::InvalidProbability { p });
        }
        if !w.is_finite() || w <= T::zero() {
            return Err(DigraphError::InvalidWeight { weight: w });
        }
        let mut graph = Self::directed_cycle(n)?;
        let mut rng = Prng::new(seed);
        for i in 0..n {
            for j in 0..n {
                let candidate = i != j && j != (i + 1) % n;
                if !candidate {
                    continue;
                }
                // Draw unconditionally so the stream position depends only on
                // (i, j), never on earlier outcomes.
                let u = T::lit(rng.next_f64());
                if u < p {
                    graph.adjacency[(i, j)] = w;
                }
            }
        }
        Ok(graph)
    }

    /// Parses the plain-text edge-list format:
    ///
    /// ```text
    /// # comment
    /// n 3
    /// 0 1 1.0
    /// 1 2 0.5
    /// ```
    ///
    /// Lines starting with `#` and blank lines are skipped. The first
    /// significant line must be the `n <count>` header; every following line
    /// is `src dst weight` with 0-based vertex indices. Malformed lines are
    /// reported with their 1-based line number; semantic problems (duplicate
    /// edges, self-loops, …) surface as the same errors as
    /// [`Digraph::from_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<Self, DigraphError<T>> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize, T)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if n.is_none() {
                if tokens.len() != 2 || tokens[0] != "n" {
                    return Err(DigraphError::Parse {
                        line,
                        message: format!("expected header `n <count>`, got `{trimmed}`"),
                    });
                }
                let count: usize = tokens[1].parse().map_err(|_| DigraphError::Parse {
                    line,
                    message: format!("invalid vertex count `{}`", tokens[1]),
                })?;
                n = Some(count);
                continue;
            }
            if tokens.len() != 3 {
                return Err(DigraphError::Parse {
                    line,
                    message: format!("expected `src dst weight`, got {} token(s)", tokens.len()),
                });
            }
            let src: usize = tokens[0].parse().map_err(|_| DigraphError::Parse {
                line,
                message: format!("invalid source vertex `{}`", tokens[0]),
            })?;
            let dst: usize = tokens[1].parse().map_err(|_| DigraphError::Parse {
                line,
                message: format!("invalid destination vertex `{}`", tokens[1]),
            })?;
            let weight: f64 = tokens[2].parse().map_err(|_| DigraphError::Parse {
                line,
                message: format!("invalid weight `{}`", tokens[2]),
            })?;
            edges.push((src, dst, T::lit(weight)));
        }
        let n = n.ok_or(DigraphError::MissingHeader)?;
        Self::from_edge_list(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &RMatrix<T> {
        &self.adjacency
    }

    /// Weight of edge `i → j`, zero when absent.
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.adjacency[(i, j)]
    }

    /// Weighted out-degree of vertex `i` (row sum of `A`).
    pub fn out_degree(&self, i: usize) -> T {
        self.adjacency.row(i).iter().copied().sum()
    }

    /// Number of edges with nonzero weight.
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[(i, j)] != T::zero())
            .count()
    }

    /// Directed combinatorial Laplacian `L = D_out − A`.
    pub fn laplacian(&self) -> Laplacian<T> {
        let n = self.n();
        let matrix = RMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.out_degree(i)
            } else {
                -self.adjacency[(i, j)]
            }
        });
        Laplacian { matrix }
    }
}

impl<T: Scalar> Laplacian<T> {
    pub fn matrix(&self) -> &RMatrix<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Largest absolute row sum — zero in exact arithmetic, and in floats
    /// bounded by a few ulps of the weights involved.
    pub fn max_row_sum(&self) -> T {
        let n = self.n();
        (0..n)
            .map(|i| self.matrix.row(i).iter().copied().sum::<T>().abs())
            .fold(T::zero(), T::max)
    }

    #[cfg(test)]
    pub(crate) fn from_matrix(matrix: RMatrix<T>) -> Self {
        Self { matrix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = Digraph<f64>;

    #[test]
    fn single_edge_adjacency() {
        let g = G::from_edge_list(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 0), 0.0);
        assert_eq!(g.weight(0, 0), 0.0);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn empty_edge_list_is_a_valid_graph() {
        let g = G::from_edge_list(3, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.laplacian().matrix().frobenius_norm(), 0.0);
    }

    #[test]
    fn construction_errors_are_distinct() {
        assert_eq!(
            G::from_edge_list(3, &[(0, 5, 1.0)]).unwrap_err(),
            DigraphError::IndexOutOfRange {
                src: 0,
                dst: 5,
                n: 3
            }
        );
        assert_eq!(
            G::from_edge_list(3, &[(1, 1, 1.0)]).unwrap_err(),
            DigraphError::SelfLoop { vertex: 1 }
        );
        assert_eq!(
            G::from_edge_list(3, &[(0, 1, 1.0), (0, 1, 2.0)]).unwrap_err(),
            DigraphError::DuplicateEdge { src: 0, dst: 1 }
        );
        assert_eq!(
            G::from_edge_list(3, &[(0, 1, 0.0)]).unwrap_err(),
            DigraphError::NonPositiveWeight {
                src: 0,
                dst: 1,
                weight: 0.0
            }
        );
        assert_eq!(
            G::from_edge_list(3, &[(0, 1, -2.0)]).unwrap_err(),
            DigraphError::NonPositiveWeight {
                src: 0,
                dst: 1,
                weight: -2.0
            }
        );
        assert!(matches!(
            G::from_edge_list(3, &[(0, 1, f64::NAN)]).unwrap_err(),
            DigraphError::NonFiniteWeight { src: 0, dst: 1 }
        ));
        assert_eq!(
            G::from_edge_list(0, &[]).unwrap_err(),
            DigraphError::TooFewVertices { n: 0, min: 1 }
        );
    }

    #[test]
    fn cycle_of_three_has_the_textbook_laplacian() {
        let lap = G::directed_cycle(3).unwrap().laplacian();
        let expected = [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(lap.matrix()[(i, j)], want);
            }
        }
    }

    #[test]
    fn generators_need_two_vertices() {
        assert_eq!(
            G::directed_cycle(1).unwrap_err(),
            DigraphError::TooFewVertices { n: 1, min: 2 }
        );
        assert_eq!(
            G::perturbed_cycle(0, 0.5, 1.0, 7).unwrap_err(),
            DigraphError::TooFewVertices { n: 0, min: 2 }
        );
        assert!(G::directed_cycle(2).is_ok());
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let lap = G::perturbed_cycle(10, 0.5, 0.8, 42).unwrap().laplacian();
        let tol = 1e-12 * lap.matrix().frobenius_norm().max(1.0);
        assert!(lap.max_row_sum() <= tol);
        // And the all-ones vector is annihilated.
        let ones = vec![num_complex::Complex64::new(1.0, 0.0); 10];
        let image = lap.matrix().matvec_complex(&ones);
        assert!(image.iter().all(|z| z.norm() <= tol));
    }

    #[test]
    fn perturbation_probability_zero_is_the_plain_cycle() {
        let cycle = G::directed_cycle(7).unwrap();
        let perturbed = G::perturbed_cycle(7, 0.0, 0.8, 123).unwrap();
        assert_eq!(cycle, perturbed);
    }

    #[test]
    fn perturbation_probability_one_fills_every_candidate() {
        let g = G::perturbed_cycle(3, 1.0, 0.8, 9).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j {
                    0.0
                } else if j == (i + 1) % 3 {
                    1.0
                } else {
                    0.8
                };
                assert_eq!(g.weight(i, j), expected, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn perturbation_is_a_pure_function_of_the_seed() {
        let a = G::perturbed_cycle(12, 0.3, 0.8, 77).unwrap();
        let b = G::perturbed_cycle(12, 0.3, 0.8, 77).unwrap();
        assert_eq!(a, b);
        let c = G::perturbed_cycle(12, 0.3, 0.8, 78).unwrap();
        assert_ne!(a, c, "different seeds should produce different edge sets");
    }

    #[test]
    fn perturbation_only_adds_weight_w_edges() {
        let g = G::perturbed_cycle(9, 0.5, 0.8, 5).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let w = g.weight(i, j);
                if j == (i + 1) % 9 {
                    assert_eq!(w, 1.0);
                } else {
                    assert!(w == 0.0 || w == 0.8, "unexpected weight {w}");
                }
            }
        }
        assert!(g.edge_count() > 9, "seeded instance should gain edges");
    }

    #[test]
    fn perturbation_parameter_validation() {
        assert_eq!(
            G::perturbed_cycle(4, 1.5, 0.8, 1).unwrap_err(),
            DigraphError::InvalidProbability { p: 1.5 }
        );
        assert!(matches!(
            G::perturbed_cycle(4, f64::NAN, 0.8, 1).unwrap_err(),
            DigraphError::InvalidProbability { .. }
        ));
        assert_eq!(
            G::perturbed_cycle(4, 0.5, 0.0, 1).unwrap_err(),
            DigraphError::InvalidWeight { weight: 0.0 }
        );
        assert!(matches!(
            G::perturbed_cycle(4, 0.5, f64::INFINITY, 1).unwrap_err(),
            DigraphError::InvalidWeight { .. }
        ));
    }

    #[test]
    fn parses_the_documented_text_format() {
        let text = "\
# three-vertex example
n 3

0 1 1.0
1 2 0.5
# trailing comment
2 0 2.0
";
        let g = G::parse_edge_list(text).unwrap();
        let same = G::from_edge_list(3, &[(0, 1, 1.0), (1, 2, 0.5), (2, 0, 2.0)]).unwrap();
        assert_eq!(g, same);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let missing_header = "# only a comment\n0 1 1.0\n";
        assert!(matches!(
            G::parse_edge_list(missing_header).unwrap_err(),
            DigraphError::Parse { line: 2, .. }
        ));
        assert_eq!(
            G::parse_edge_list("").unwrap_err(),
            DigraphError::MissingHeader
        );
        let short_line = "n 3\n0 1\n";
        assert!(matches!(
            G::parse_edge_list(short_line).unwrap_err(),
            DigraphError::Parse { line: 2, .. }
        ));
        let bad_weight = "n 3\n0 1 heavy\n";
        assert!(matches!(
            G::parse_edge_list(bad_weight).unwrap_err(),
            DigraphError::Parse { line: 2, .. }
        ));
        let bad_count = "n lots\n";
        assert!(matches!(
            G::parse_edge_list(bad_count).unwrap_err(),
            DigraphError::Parse { line: 1, .. }
        ));
        // Semantic problems keep their structural error, not a parse error.
        let dup = "n 3\n0 1 1.0\n0 1 2.0\n";
        assert_eq!(
            G::parse_edge_list(dup).unwrap_err(),
            DigraphError::DuplicateEdge { src: 0, dst: 1 }
        );
    }
}
