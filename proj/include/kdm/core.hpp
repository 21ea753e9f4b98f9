#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdm {

using VertexId = std::uint32_t;
using Weight = double;

/// One item of the edge stream. Undirected; u != v and w > 0 for every
/// edge that survives ingestion.
struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  Weight w = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Unordered endpoint pair packed into one key.
inline std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
inline std::uint64_t pair_key(const WeightedEdge& e) { return pair_key(e.u, e.v); }

struct Matching {
  std::vector<WeightedEdge> edges;

  Weight weight() const;
  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
};

/// k pairwise edge-disjoint matchings. matchings[c] is color c (0-based).
struct KDisjointMatching {
  std::vector<Matching> matchings;

  KDisjointMatching() = default;
  explicit KDisjointMatching(std::size_t k) : matchings(k) {}

  std::size_t k() const { return matchings.size(); }
  std::size_t edge_count() const;
};

struct BMatching {
  std::vector<WeightedEdge> edges;

  Weight weight() const;
};

/// Per-vertex degree capacity b(v). Uniform by default; explicit
/// per-vertex values override it where present.
class Capacity {
 public:
  explicit Capacity(std::uint32_t uniform = 1);
  static Capacity from_values(std::vector<std::uint32_t> values, std::uint32_t fallback = 1);

  std::uint32_t operator()(VertexId v) const {
    return v < values_.size() ? values_[v] : uniform_;
  }

 private:
  std::uint32_t uniform_;
  std::vector<std::uint32_t> values_;
};

struct InstanceStats {
  std::size_t n = 0;
  std::size_t m = 0;
  Weight w_max = 0.0;
  Weight w_min = 0.0;

  /// w_max / w_min, or 1 for an empty instance.
  double weight_ratio() const { return m == 0 ? 1.0 : w_max / w_min; }
  void observe(const WeightedEdge& e);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class StreamConsumedError : public std::logic_error {
 public:
  StreamConsumedError() : std::logic_error("edge stream already consumed") {}
};

/// Single-pass producer of edges. Once the end has been reached the stream
/// cannot be read again; next() then throws StreamConsumedError.
class EdgeStream {
 public:
  class Source {
   public:
    virtual ~Source() = default;
    /// Returns the next raw edge (self-loops included) or nothing at end.
    virtual std::optional<WeightedEdge> pull() = 0;
    virtual std::optional<std::size_t> declared_n() const { return std::nullopt; }
    virtual std::optional<std::size_t> declared_m() const { return std::nullopt; }
  };

  explicit EdgeStream(std::unique_ptr<Source> source);
  EdgeStream(EdgeStream&&) noexcept;
  EdgeStream& operator=(EdgeStream&&) noexcept;
  ~EdgeStream();

  static EdgeStream from_edges(std::vector<WeightedEdge> edges,
                               std::optional<std::size_t> declared_n = std::nullopt);

  std::optional<WeightedEdge> next();

  /// Consumes the rest of the stream.
  void drain(const std::function<void(const WeightedEdge&)>& sink);

  bool exhausted() const { return exhausted_; }
  std::optional<std::size_t> declared_n() const { return source_->declared_n(); }
  std::optional<std::size_t> declared_m() const { return source_->declared_m(); }
  std::size_t self_loops_skipped() const { return self_loops_; }

  /// Statistics over the accepted edges so far. n is the declared size when
  /// present, otherwise max id + 1.
  InstanceStats stats() const;

 private:
  std::unique_ptr<Source> source_;
  bool exhausted_ = false;
  std::size_t self_loops_ = 0;
  std::size_t max_id_plus_one_ = 0;
  InstanceStats stats_;
};

enum class StreamFormat { edge_list };

/// Opens an edge-list file: optional "n m" header, then "u v w" lines,
/// '#' comments, LF or CRLF. Parse errors carry the 1-based line number.
EdgeStream open_stream(const std::filesystem::path& path,
                       StreamFormat format = StreamFormat::edge_list);

/// Same format, read from an already open stream.
EdgeStream open_stream(std::unique_ptr<std::istream> in);

/// Convenience for offline consumers: the whole stream as a vector.
std::vector<WeightedEdge> collect(EdgeStream& stream);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks every color class is a matching and no edge appears in two
/// classes. Edges are identified by their unordered endpoint pair.
ValidationReport validate_kdm(const KDisjointMatching& sol);

/// As validate_kdm, additionally requiring each solution edge to exist in
/// `graph` with the same weight. Parallel edges may be used as many times
/// as they occur in the graph.
ValidationReport validate_kdm(const KDisjointMatching& sol, std::span<const WeightedEdge> graph);

/// Checks deg_F(v) <= b(v) for every v.
ValidationReport validate_bmatching(const BMatching& f, const Capacity& b);

Weight solution_weight(const KDisjointMatching& sol);

std::vector<Weight> per_color_weights(const KDisjointMatching& sol);

}  // namespace kdm
