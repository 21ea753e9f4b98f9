#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kdm/core.hpp"

namespace kdm::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kInvalidArguments = 2,
  kOracleTooLarge = 3,
  kInvalidSolution = 4,
  kCertificateFailure = 5,
};

/// One benchmark record; serialized as a single JSON object with a fixed
/// key set.
struct RunMetrics {
  std::string algo;
  std::size_t k = 0;
  double eps = 0.0;
  double weight = 0.0;
  std::vector<double> per_color_weights;
  std::size_t edges_stored_peak = 0;
  std::size_t pushes_total = 0;
  std::int64_t elapsed_ms = 0;
  std::size_t n = 0;
  std::size_t m_processed = 0;

  std::string to_json() const;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"stk",    "stk-dp",    "stkb",      "stkb-cc",
                                              "stkb-m", "stkb-cc-m", "greedy-it", "exact"};
  return names;
}

/// Runs one algorithm over an in-memory edge list, timing only the
/// algorithm. Throws InstanceTooLarge for "exact" beyond its cap and
/// std::invalid_argument for an unknown name.
RunMetrics run_algorithm(const std::string& algo, const std::vector<WeightedEdge>& edges,
                         std::size_t n, std::size_t k, double eps,
                         KDisjointMatching* solution_out = nullptr);

/// "# color c" followed by "c u v w" lines for each color, colors 1..k.
void write_solution(std::ostream& os, const KDisjointMatching& sol);

/// Reads the solution format back, with as many matchings as the largest
/// color seen. Throws ParseError.
KDisjointMatching read_solution(std::istream& is);

/// Entry point for the `kdm` tool: subcommands run, generate, verify.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kdm::cli
