#include "kdm/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace kdm {

Weight Matching::weight() const {
  Weight total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

std::size_t KDisjointMatching::edge_count() const {
  std::size_t count = 0;
  for (const auto& m : matchings) count += m.size();
  return count;
}

Weight BMatching::weight() const {
  Weight total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

Capacity::Capacity(std::uint32_t uniform) : uniform_(uniform) {
  if (uniform == 0) throw std::invalid_argument("capacity must be positive");
}

Capacity Capacity::from_values(std::vector<std::uint32_t> values, std::uint32_t fallback) {
  if (std::find(values.begin(), values.end(), 0u) != values.end())
    throw std::invalid_argument("capacity must be positive");
  Capacity cap(fallback);
  cap.values_ = std::move(values);
  return cap;
}

void InstanceStats::observe(const WeightedEdge& e) {
  if (m == 0) {
    w_min = w_max = e.w;
  } else {
    w_min = std::min(w_min, e.w);
    w_max = std::max(w_max, e.w);
  }
  ++m;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

// ---------------------------------------------------------------------------
// EdgeStream

EdgeStream::EdgeStream(std::unique_ptr<Source> source) : source_(std::move(source)) {}
EdgeStream::EdgeStream(EdgeStream&&) noexcept = default;
EdgeStream& EdgeStream::operator=(EdgeStream&&) noexcept = default;
EdgeStream::~EdgeStream() = default;

namespace {

class VectorSource final : public EdgeStream::Source {
 public:
  VectorSource(std::vector<WeightedEdge> edges, std::optional<std::size_t> n)
      : edges_(std::move(edges)), n_(n) {}

  std::optional<WeightedEdge> pull() override {
    if (pos_ == edges_.size()) return std::nullopt;
    return edges_[pos_++];
  }
  std::optional<std::size_t> declared_n() const override { return n_; }

 private:
  std::vector<WeightedEdge> edges_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> n_;
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(std::string_view tok, double& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

class EdgeListSource final : public EdgeStream::Source {
 public:
  explicit EdgeListSource(std::unique_ptr<std::istream> in) : in_(std::move(in)) {
    // The header, if any, must be the first content line.
    std::string_view line;
    if (!next_content_line(line)) return;
    auto toks = tokenize(line);
    if (toks.size() == 2) {
      std::uint64_t n = 0, m = 0;
      if (!parse_int(toks[0], n) || !parse_int(toks[1], m))
        throw ParseError(line_no_, "malformed header, expected \"n m\"");
      n_ = n;
      m_ = m;
    } else {
      // Parsed on the first pull, so errors surface while streaming.
      pending_ = std::string(line);
    }
  }

  std::optional<WeightedEdge> pull() override {
    if (pending_) {
      const std::string line = std::move(*pending_);
      pending_.reset();
      return parse_edge(tokenize(line));
    }
    std::string_view line;
    if (!next_content_line(line)) return std::nullopt;
    return parse_edge(tokenize(line));
  }

  std::optional<std::size_t> declared_n() const override { return n_; }
  std::optional<std::size_t> declared_m() const override { return m_; }

 private:
  bool next_content_line(std::string_view& out) {
    while (std::getline(*in_, buf_)) {
      ++line_no_;
      auto t = trim(buf_);
      if (t.empty() || t.front() == '#') continue;
      out = t;
      return true;
    }
    if (in_->bad()) throw ParseError(line_no_, "read failure");
    return false;
  }

  WeightedEdge parse_edge(const std::vector<std::string_view>& toks) const {
    if (toks.size() != 3) throw ParseError(line_no_, "expected \"u v w\"");
    std::uint64_t u = 0, v = 0;
    if (!parse_int(toks[0], u) || !parse_int(toks[1], v))
      throw ParseError(line_no_, "malformed vertex id");
    if (u > UINT32_MAX || v > UINT32_MAX) throw ParseError(line_no_, "vertex id out of range");
    if (n_ && (u >= *n_ || v >= *n_))
      throw ParseError(line_no_, "vertex id exceeds declared n");
    double w = 0.0;
    if (!parse_real(toks[2], w)) throw ParseError(line_no_, "malformed weight");
    if (!std::isfinite(w)) throw ParseError(line_no_, "non-finite weight");
    if (w <= 0.0) throw ParseError(line_no_, "non-positive weight");
    return {static_cast<VertexId>(u), static_cast<VertexId>(v), w};
  }

  std::unique_ptr<std::istream> in_;
  std::string buf_;
  std::size_t line_no_ = 0;
  std::optional<std::size_t> n_;
  std::optional<std::size_t> m_;
  std::optional<std::string> pending_;
};

}  // namespace

EdgeStream EdgeStream::from_edges(std::vector<WeightedEdge> edges,
                                  std::optional<std::size_t> declared_n) {
  return EdgeStream(std::make_unique<VectorSource>(std::move(edges), declared_n));
}

std::optional<WeightedEdge> EdgeStream::next() {
  if (exhausted_) throw StreamConsumedError();
  while (auto e = source_->pull()) {
    max_id_plus_one_ = std::max<std::size_t>(max_id_plus_one_, std::max(e->u, e->v) + 1ull);
    if (e->u == e->v) {
      ++self_loops_;
      continue;
    }
    stats_.observe(*e);
    return e;
  }
  exhausted_ = true;
  return std::nullopt;
}

void EdgeStream::drain(const std::function<void(const WeightedEdge&)>& sink) {
  while (auto e = next()) sink(*e);
}

InstanceStats EdgeStream::stats() const {
  InstanceStats s = stats_;
  s.n = declared_n().value_or(max_id_plus_one_);
  return s;
}

EdgeStream open_stream(const std::filesystem::path& path, StreamFormat format) {
  if (format != StreamFormat::edge_list) throw std::invalid_argument("unsupported format");
  auto in = std::make_unique<std::ifstream>(path);
  if (!*in) throw std::runtime_error("cannot open " + path.string());
  return open_stream(std::move(in));
}

EdgeStream open_stream(std::unique_ptr<std::istream> in) {
  return EdgeStream(std::make_unique<EdgeListSource>(std::move(in)));
}

std::vector<WeightedEdge> collect(EdgeStream& stream) {
  std::vector<WeightedEdge> edges;
  stream.drain([&](const WeightedEdge& e) { edges.push_back(e); });
  return edges;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string edge_name(const WeightedEdge& e) {
  std::ostringstream os;
  os << '(' << std::min(e.u, e.v) << ',' << std::max(e.u, e.v) << ')';
  return os.str();
}

void check_matchings(const KDisjointMatching& sol, ValidationReport& report) {
  for (std::size_t c = 0; c < sol.k(); ++c) {
    std::unordered_map<VertexId, std::size_t> seen;
    for (const auto& e : sol.matchings[c].edges) {
      if (e.u == e.v) {
        report.ok = false;
        report.violations.push_back("self-loop " + edge_name(e) + " in M" + std::to_string(c + 1));
        continue;
      }
      for (VertexId x : {e.u, e.v}) {
        if (++seen[x] == 2) {
          report.ok = false;
          report.violations.push_back("vertex " + std::to_string(x) + " twice in M" +
                                      std::to_string(c + 1));
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate_kdm(const KDisjointMatching& sol) {
  ValidationReport report;
  check_matchings(sol, report);
  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t c = 0; c < sol.k(); ++c) {
    for (const auto& e : sol.matchings[c].edges) {
      auto [it, inserted] = owner.emplace(pair_key(e), c);
      if (!inserted && it->second != c) {
        report.ok = false;
        report.violations.push_back("edge " + edge_name(e) + " in two matchings (M" +
                                    std::to_string(it->second + 1) + ", M" +
                                    std::to_string(c + 1) + ")");
      }
    }
  }
  return report;
}

ValidationReport validate_kdm(const KDisjointMatching& sol, std::span<const WeightedEdge> graph) {
  ValidationReport report;
  check_matchings(sol, report);
  // Remaining copies of each (pair, weight) in the graph.
  std::unordered_map<std::uint64_t, std::vector<Weight>> available;
  for (const auto& e : graph) available[pair_key(e)].push_back(e.w);
  const auto original = available;
  for (std::size_t c = 0; c < sol.k(); ++c) {
    for (const auto& e : sol.matchings[c].edges) {
      auto it = available.find(pair_key(e));
      if (it == available.end()) {
        report.ok = false;
        report.violations.push_back("edge " + edge_name(e) + " in M" + std::to_string(c + 1) +
                                    " is not in the graph");
        continue;
      }
      auto& copies = it->second;
      auto w = std::find(copies.begin(), copies.end(), e.w);
      if (w != copies.end()) {
        copies.erase(w);
      } else {
        report.ok = false;
        const auto& orig = original.at(pair_key(e));
        const bool reused = std::find(orig.begin(), orig.end(), e.w) != orig.end();
        report.violations.push_back("edge " + edge_name(e) +
                                    (reused ? " in two matchings" : " has a weight not in the graph") +
                                    " (M" + std::to_string(c + 1) + ")");
      }
    }
  }
  return report;
}

ValidationReport validate_bmatching(const BMatching& f, const Capacity& b) {
  ValidationReport report;
  std::unordered_map<VertexId, std::uint32_t> degree;
  for (const auto& e : f.edges) {
    for (VertexId x : {e.u, e.v}) {
      if (++degree[x] == b(x) + 1) {
        report.ok = false;
        report.violations.push_back("vertex " + std::to_string(x) + " exceeds capacity " +
                                    std::to_string(b(x)));
      }
    }
  }
  return report;
}

Weight solution_weight(const KDisjointMatching& sol) {
  Weight total = 0.0;
  for (const auto& m : sol.matchings) total += m.weight();
  return total;
}

std::vector<Weight> per_color_weights(const KDisjointMatching& sol) {
  std::vector<Weight> out;
  out.reserve(sol.k());
  for (const auto& m : sol.matchings) out.push_back(m.weight());
  return out;
}

}  // namespace kdm
