#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace admmpd {

using BinaryWord = std::vector<std::uint8_t>;

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ParseErrorKind {
    MalformedHeader,
    DegreeMismatch,
    AsymmetricAdjacency,
    IndexOutOfRange,
    DuplicateEntry,
    DegenerateGraph,
};

const char *to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ParseErrorKind kind() const noexcept { return kind_; }

  private:
    ParseErrorKind kind_;
};

/// Bipartite check/variable structure of a binary parity-check matrix.
///
/// Adjacency lists are sorted ascending and 0-based. Besides the two
/// adjacency views the graph keeps a flat edge numbering used by the
/// decoders: edges are laid out check-major, so the replica of check j
/// occupies [check_offset(j), check_offset(j) + degree(j)), and
/// var_edges(i) lists the edges touching variable i in ascending check
/// order.
class TannerGraph {
  public:
    TannerGraph() = default;

    /// Builds a graph from per-check variable lists. Throws ParseError if
    /// an index is out of range, a row has a duplicate, a check has degree
    /// below 2, or a variable is isolated.
    static TannerGraph from_checks(std::size_t n, std::vector<std::vector<int>> check_neighbors);

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return check_neighbors_.size(); }
    std::size_t num_edges() const noexcept { return edge_var_.size(); }

    const std::vector<int> &check_neighbors(std::size_t j) const { return check_neighbors_[j]; }
    const std::vector<int> &var_neighbors(std::size_t i) const { return var_neighbors_[i]; }
    std::size_t check_degree(std::size_t j) const { return check_neighbors_[j].size(); }
    std::size_t var_degree(std::size_t i) const { return var_neighbors_[i].size(); }
    std::size_t min_var_degree() const noexcept { return min_var_degree_; }
    std::size_t max_check_degree() const noexcept { return max_check_degree_; }

    std::size_t check_offset(std::size_t j) const { return check_offset_[j]; }
    std::span<const int> var_edges(std::size_t i) const {
        return {var_edge_list_.data() + var_edge_offset_[i], var_neighbors_[i].size()};
    }
    int edge_var(std::size_t e) const { return edge_var_[e]; }

    bool operator==(const TannerGraph &other) const {
        return n_ == other.n_ && check_neighbors_ == other.check_neighbors_;
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<int>> check_neighbors_;
    std::vector<std::vector<int>> var_neighbors_;
    std::vector<std::size_t> check_offset_;
    std::vector<int> edge_var_;
    std::vector<std::size_t> var_edge_offset_;
    std::vector<int> var_edge_list_;
    std::size_t min_var_degree_ = 0;
    std::size_t max_check_degree_ = 0;
};

/// Parses MacKay alist text (1-based, zero padding allowed).
TannerGraph parse_alist(std::string_view text);
TannerGraph load_alist(const std::string &path);
std::string to_alist(const TannerGraph &g);

/// True iff every check sees even parity. Throws DimensionError on length mismatch.
bool syndrome_ok(const TannerGraph &g, std::span<const std::uint8_t> w);

/// Code dimension N - rank(H) over GF(2).
std::size_t code_dimension(const TannerGraph &g);

/// A GF(2) basis of the nullspace of H, computed by Gaussian elimination.
std::vector<BinaryWord> nullspace_basis(const TannerGraph &g);

/// `count` uniformly random codewords (random combinations of the nullspace
/// basis), deterministic in `seed`.
std::vector<BinaryWord> sample_codewords(const TannerGraph &g, std::size_t count, std::uint64_t seed);

} // namespace admmpd
