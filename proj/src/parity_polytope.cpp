#include "admmpd/parity_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace admmpd {

namespace {

// Odd set of the most violated facet, from offsets a = x - 1/2: coordinates
// with a > 0, with the one of smallest |a| toggled (lowest index on ties) if
// that count is even.
std::size_t select_odd_set(std::span<const double> a, std::vector<char> &in_set) {
    in_set.assign(a.size(), 0);
    std::size_t count = 0;
    std::size_t nearest = 0;
    double nearest_gap = std::abs(a[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0) {
            in_set[i] = 1;
            ++count;
        }
        const double gap = std::abs(a[i]);
        if (gap < nearest_gap) {
            nearest_gap = gap;
            nearest = i;
        }
    }
    if (count % 2 == 0) {
        in_set[nearest] ^= 1;
        count = in_set[nearest] ? count + 1 : count - 1;
    }
    return count;
}

void check_input(std::span<const double> v, std::span<double> out) {
    if (v.size() < 2) throw std::invalid_argument("parity polytope projection needs d >= 2");
    if (out.size() != v.size()) throw std::invalid_argument("projection output has the wrong length");
    for (double a : v)
        if (!std::isfinite(a)) throw std::invalid_argument("non-finite input to parity polytope projection");
}

} // namespace

void project_parity_polytope_centered(std::span<const double> a, std::span<double> out, ProjectionWorkspace &ws) {
    check_input(a, out);
    const std::size_t d = a.size();
    select_odd_set(a, ws.in_odd_set);

    // With s_i = +1 on S and -1 off it, the facet sum_S x - sum_rest x <= |S| - 1
    // reads sum s_i a_i <= d/2 - 1 in offsets.
    ws.flipped.resize(d);
    double facet = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double sa = ws.in_odd_set[i] ? a[i] : -a[i];
        ws.flipped[i] = sa;
        facet += std::clamp(sa, -0.5, 0.5);
    }
    if (facet <= static_cast<double>(d) / 2.0 - 1.0) {
        for (std::size_t i = 0; i < d; ++i) out[i] = std::clamp(a[i], -0.5, 0.5);
        return;
    }

    // On the facet: w_i = 1/2 - s_i a_i lives on {w >= 0, sum w = 1}.
    for (double &w : ws.flipped) w = 0.5 - w;
    ws.sorted.assign(ws.flipped.begin(), ws.flipped.end());
    std::sort(ws.sorted.begin(), ws.sorted.end(), std::greater<>());
    double prefix = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        prefix += ws.sorted[k];
        const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
        if (ws.sorted[k] - candidate > 0.0) tau = candidate;
    }
    for (std::size_t i = 0; i < d; ++i) {
        const double r = 0.5 - std::max(ws.flipped[i] - tau, 0.0);
        out[i] = ws.in_odd_set[i] ? r : -r;
    }
}

void project_parity_polytope(std::span<const double> v, std::span<double> out, ProjectionWorkspace &ws) {
    check_input(v, out);
    ws.centered.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ws.centered[i] = v[i] - 0.5;
    project_parity_polytope_centered(ws.centered, out, ws);
    for (double &x : out) x += 0.5;
}

std::vector<double> project_parity_polytope(std::span<const double> v) {
    ProjectionWorkspace ws;
    std::vector<double> out(v.size());
    project_parity_polytope(v, out, ws);
    return out;
}

bool is_in_parity_polytope(std::span<const double> x, double tol) {
    if (x.empty()) return false;
    for (double a : x)
        if (!(a >= -tol && a <= 1.0 + tol)) return false;
    std::vector<char> in_set;
    std::vector<double> a(x.begin(), x.end());
    for (double &v : a) v -= 0.5;
    const std::size_t odd = select_odd_set(a, in_set);
    double facet = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) facet += in_set[i] ? x[i] : -x[i];
    return facet <= static_cast<double>(odd) - 1.0 + tol;
}

} // namespace admmpd
