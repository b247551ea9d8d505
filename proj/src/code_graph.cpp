#include "admmpd/code_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "admmpd/rng.hpp"

namespace admmpd {

const char *to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::DegreeMismatch: return "degree mismatch";
    case ParseErrorKind::AsymmetricAdjacency: return "asymmetric adjacency";
    case ParseErrorKind::IndexOutOfRange: return "index out of range";
    case ParseErrorKind::DuplicateEntry: return "duplicate entry";
    case ParseErrorKind::DegenerateGraph: return "degenerate graph";
    }
    return "unknown";
}

TannerGraph TannerGraph::from_checks(std::size_t n, std::vector<std::vector<int>> check_neighbors) {
    if (n == 0 || check_neighbors.empty())
        throw ParseError(ParseErrorKind::DegenerateGraph, "graph needs at least one variable and one check");
    TannerGraph g;
    g.n_ = n;
    g.var_neighbors_.assign(n, {});
    for (std::size_t j = 0; j < check_neighbors.size(); ++j) {
        auto &row = check_neighbors[j];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw ParseError(ParseErrorKind::DuplicateEntry, "check " + std::to_string(j) + " repeats a variable");
        if (row.size() < 2)
            throw ParseError(ParseErrorKind::DegenerateGraph, "check " + std::to_string(j) + " has degree < 2");
        for (int i : row) {
            if (i < 0 || static_cast<std::size_t>(i) >= n)
                throw ParseError(ParseErrorKind::IndexOutOfRange,
                                 "check " + std::to_string(j) + " references variable " + std::to_string(i));
            g.var_neighbors_[i].push_back(static_cast<int>(j));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (g.var_neighbors_[i].empty())
            throw ParseError(ParseErrorKind::DegenerateGraph, "variable " + std::to_string(i) + " has no checks");
    g.check_neighbors_ = std::move(check_neighbors);

    // Flat edge layout.
    g.check_offset_.resize(g.m() + 1, 0);
    for (std::size_t j = 0; j < g.m(); ++j)
        g.check_offset_[j + 1] = g.check_offset_[j] + g.check_neighbors_[j].size();
    g.edge_var_.reserve(g.check_offset_.back());
    for (const auto &row : g.check_neighbors_)
        g.edge_var_.insert(g.edge_var_.end(), row.begin(), row.end());

    g.var_edge_offset_.resize(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        g.var_edge_offset_[i + 1] = g.var_edge_offset_[i] + g.var_neighbors_[i].size();
    g.var_edge_list_.resize(g.var_edge_offset_.back());
    std::vector<std::size_t> fill(g.var_edge_offset_.begin(), g.var_edge_offset_.end() - 1);
    // checks are visited in ascending order, so each variable's edges end up sorted by check
    for (std::size_t j = 0; j < g.m(); ++j)
        for (std::size_t k = 0; k < g.check_neighbors_[j].size(); ++k) {
            const int i = g.check_neighbors_[j][k];
            g.var_edge_list_[fill[i]++] = static_cast<int>(g.check_offset_[j] + k);
        }

    g.min_var_degree_ = n;
    for (const auto &col : g.var_neighbors_)
        g.min_var_degree_ = std::min(g.min_var_degree_, col.size());
    for (const auto &row : g.check_neighbors_)
        g.max_check_degree_ = std::max(g.max_check_degree_, row.size());
    return g;
}

namespace {

class AlistReader {
  public:
    explicit AlistReader(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<long> values;
            std::string tok;
            while (ls >> tok) {
                try {
                    std::size_t used = 0;
                    long v = std::stol(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    values.push_back(v);
                } catch (const std::exception &) {
                    throw ParseError(ParseErrorKind::MalformedHeader, "non-integer token '" + tok + "'");
                }
            }
            if (!values.empty()) lines_.push_back(std::move(values));
        }
    }

    const std::vector<long> &line(std::size_t k, const char *what) const {
        if (k >= lines_.size())
            throw ParseError(ParseErrorKind::MalformedHeader, std::string("missing ") + what + " line");
        return lines_[k];
    }

  private:
    std::vector<std::vector<long>> lines_;
};

std::vector<std::vector<int>> read_adjacency(const AlistReader &r, std::size_t first, std::size_t count,
                                             const std::vector<long> &degrees, long max_degree, long range,
                                             const char *what) {
    std::vector<std::vector<int>> adj(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto &vals = r.line(first + k, what);
        if (static_cast<long>(vals.size()) > max_degree)
            throw ParseError(ParseErrorKind::DegreeMismatch,
                             std::string(what) + " row " + std::to_string(k + 1) + " exceeds the maximum degree");
        for (long v : vals) {
            if (v == 0) continue;
            if (v < 0 || v > range)
                throw ParseError(ParseErrorKind::IndexOutOfRange, std::string(what) + " row " + std::to_string(k + 1) +
                                                                      " references " + std::to_string(v));
            adj[k].push_back(static_cast<int>(v - 1));
        }
        if (static_cast<long>(adj[k].size()) != degrees[k])
            throw ParseError(ParseErrorKind::DegreeMismatch, std::string(what) + " row " + std::to_string(k + 1) +
                                                                 " lists " + std::to_string(adj[k].size()) +
                                                                 " entries, degree line says " +
                                                                 std::to_string(degrees[k]));
        std::sort(adj[k].begin(), adj[k].end());
        if (std::adjacent_find(adj[k].begin(), adj[k].end()) != adj[k].end())
            throw ParseError(ParseErrorKind::DuplicateEntry,
                             std::string(what) + " row " + std::to_string(k + 1) + " repeats an index");
    }
    return adj;
}

} // namespace

TannerGraph parse_alist(std::string_view text) {
    AlistReader r(text);
    const auto &dims = r.line(0, "dimension");
    if (dims.size() != 2 || dims[0] <= 0 || dims[1] <= 0)
        throw ParseError(ParseErrorKind::MalformedHeader, "first line must be 'N M' with positive values");
    const std::size_t n = static_cast<std::size_t>(dims[0]);
    const std::size_t m = static_cast<std::size_t>(dims[1]);
    const auto &maxdeg = r.line(1, "max degree");
    if (maxdeg.size() != 2 || maxdeg[0] <= 0 || maxdeg[1] <= 0)
        throw ParseError(ParseErrorKind::MalformedHeader, "second line must be 'max_col_deg max_row_deg'");
    const auto &col_deg = r.line(2, "column degree");
    const auto &row_deg = r.line(3, "row degree");
    if (col_deg.size() != n || row_deg.size() != m)
        throw ParseError(ParseErrorKind::DegreeMismatch, "degree lines do not match N and M");
    for (long d : col_deg)
        if (d < 0 || d > maxdeg[0]) throw ParseError(ParseErrorKind::DegreeMismatch, "column degree out of bounds");
    for (long d : row_deg)
        if (d < 0 || d > maxdeg[1]) throw ParseError(ParseErrorKind::DegreeMismatch, "row degree out of bounds");
    long col_sum = 0, row_sum = 0;
    for (long d : col_deg) col_sum += d;
    for (long d : row_deg) row_sum += d;
    if (col_sum != row_sum)
        throw ParseError(ParseErrorKind::DegreeMismatch, "column and row degree totals differ");

    auto cols = read_adjacency(r, 4, n, col_deg, maxdeg[0], static_cast<long>(m), "column");
    auto rows = read_adjacency(r, 4 + n, m, row_deg, maxdeg[1], static_cast<long>(n), "row");

    for (std::size_t i = 0; i < n; ++i)
        for (int j : cols[i])
            if (!std::binary_search(rows[j].begin(), rows[j].end(), static_cast<int>(i)))
                throw ParseError(ParseErrorKind::AsymmetricAdjacency, "column " + std::to_string(i + 1) +
                                                                          " lists check " + std::to_string(j + 1) +
                                                                          " but not vice versa");
    // totals agree and every column entry is mirrored, so rows hold nothing extra
    return TannerGraph::from_checks(n, std::move(rows));
}

TannerGraph load_alist(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_alist(ss.str());
}

std::string to_alist(const TannerGraph &g) {
    std::size_t max_col = 0;
    for (std::size_t i = 0; i < g.n(); ++i) max_col = std::max(max_col, g.var_degree(i));
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n' << max_col << ' ' << g.max_check_degree() << '\n';
    for (std::size_t i = 0; i < g.n(); ++i) out << (i ? " " : "") << g.var_degree(i);
    out << '\n';
    for (std::size_t j = 0; j < g.m(); ++j) out << (j ? " " : "") << g.check_degree(j);
    out << '\n';
    auto emit = [&](const std::vector<int> &list, std::size_t width) {
        for (std::size_t k = 0; k < width; ++k)
            out << (k ? " " : "") << (k < list.size() ? list[k] + 1 : 0);
        out << '\n';
    };
    for (std::size_t i = 0; i < g.n(); ++i) emit(g.var_neighbors(i), max_col);
    for (std::size_t j = 0; j < g.m(); ++j) emit(g.check_neighbors(j), g.max_check_degree());
    return out.str();
}

bool syndrome_ok(const TannerGraph &g, std::span<const std::uint8_t> w) {
    if (w.size() != g.n())
        throw DimensionError("word length " + std::to_string(w.size()) + " != N = " + std::to_string(g.n()));
    for (std::size_t j = 0; j < g.m(); ++j) {
        unsigned parity = 0;
        for (int i : g.check_neighbors(j)) parity ^= (w[i] & 1u);
        if (parity) return false;
    }
    return true;
}

namespace {

// Row-reduced H over GF(2) with bit-packed rows.
struct Gf2Echelon {
    std::size_t words = 0;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::size_t> pivot_cols;

    bool bit(std::size_t r, std::size_t c) const { return (rows[r][c / 64] >> (c % 64)) & 1u; }
};

Gf2Echelon reduce(const TannerGraph &g) {
    Gf2Echelon e;
    e.words = (g.n() + 63) / 64;
    e.rows.assign(g.m(), std::vector<std::uint64_t>(e.words, 0));
    for (std::size_t j = 0; j < g.m(); ++j)
        for (int i : g.check_neighbors(j)) e.rows[j][i / 64] |= 1ULL << (i % 64);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < g.n() && rank < g.m(); ++c) {
        std::size_t p = rank;
        while (p < g.m() && !e.bit(p, c)) ++p;
        if (p == g.m()) continue;
        std::swap(e.rows[rank], e.rows[p]);
        for (std::size_t r = 0; r < g.m(); ++r)
            if (r != rank && e.bit(r, c))
                for (std::size_t w = 0; w < e.words; ++w) e.rows[r][w] ^= e.rows[rank][w];
        e.pivot_cols.push_back(c);
        ++rank;
    }
    e.rows.resize(rank);
    return e;
}

} // namespace

std::size_t code_dimension(const TannerGraph &g) { return g.n() - reduce(g).pivot_cols.size(); }

std::vector<BinaryWord> nullspace_basis(const TannerGraph &g) {
    const Gf2Echelon e = reduce(g);
    std::vector<bool> is_pivot(g.n(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<BinaryWord> basis;
    for (std::size_t f = 0; f < g.n(); ++f) {
        if (is_pivot[f]) continue;
        BinaryWord w(g.n(), 0);
        w[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            if (e.bit(r, f)) w[e.pivot_cols[r]] = 1;
        basis.push_back(std::move(w));
    }
    return basis;
}

std::vector<BinaryWord> sample_codewords(const TannerGraph &g, std::size_t count, std::uint64_t seed) {
    const auto basis = nullspace_basis(g);
    Rng rng(seed);
    std::vector<BinaryWord> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        BinaryWord w(g.n(), 0);
        std::uint64_t bits = 0;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (b % 64 == 0) bits = rng.next_u64();
            if ((bits >> (b % 64)) & 1u)
                for (std::size_t i = 0; i < g.n(); ++i) w[i] ^= basis[b][i];
        }
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace admmpd
