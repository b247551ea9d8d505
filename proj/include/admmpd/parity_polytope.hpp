#pragma once

#include <span>
#include <vector>

namespace admmpd {

inline constexpr double kMembershipTol = 1e-7;

/// Scratch buffers for project_parity_polytope, reusable across calls so
/// the decoder's inner loop does not allocate.
struct ProjectionWorkspace {
    std::vector<double> flipped;
    std::vector<double> sorted;
    std::vector<char> in_odd_set;
    std::vector<double> centered;
};

/// Euclidean projection of v onto PP_d, the convex hull of the even-weight
/// binary vectors of length d.
///
/// Cut search: clip v to the unit cube and find the odd set S of the most
/// violated parity facet (coordinates above 1/2, with the one nearest 1/2
/// toggled when that count is even). If the clipped point satisfies that
/// facet it is the answer. Otherwise the projection lies on the facet;
/// flipping the coordinates in S turns the facet into the probability
/// simplex, which is projected onto by the usual sort-and-threshold rule.
/// `out` may alias `v`. Throws std::invalid_argument for d < 2 or
/// non-finite input.
void project_parity_polytope(std::span<const double> v, std::span<double> out, ProjectionWorkspace &ws);

std::vector<double> project_parity_polytope(std::span<const double> v);

/// The same projection with input and output written as offsets from 1/2
/// (a = v - 1/2). Negating a coordinate subset of even size negates the
/// same coordinates of the result exactly, rounding included, which the
/// decoder relies on. `out` may alias `a`.
void project_parity_polytope_centered(std::span<const double> a, std::span<double> out, ProjectionWorkspace &ws);

/// Membership in PP_d up to `tol`: box constraints plus the most violated
/// odd-set facet.
bool is_in_parity_polytope(std::span<const double> x, double tol = kMembershipTol);

} // namespace admmpd
