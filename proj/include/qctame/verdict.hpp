#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qctame/clustering.hpp"
#include "qctame/covering.hpp"
#include "qctame/set_spec.hpp"

namespace qctame {

enum class Classification { ObstructedByA, ObstructedByB, Inconclusive };
std::string to_string(Classification c);

/// A family whose cluster counts are known in closed form to stay below d for
/// some eps, so an exhausted cluster scan is a proof rather than evidence.
struct RegisteredClusterExample {
  std::string name;
  double eps;
  int d;
};

std::optional<RegisteredClusterExample> registered_cluster_example(const SetSpec& set);

struct VerdictOptions {
  double ratio_tol = 1e-3;  ///< relative to window extent
  std::uint64_t sample_budget = 100'000'000;
  double cluster_eps = 0.5;
  int cluster_d = 2;
  int cluster_max_windows = 16;
  unsigned threads = 0;
};

struct Verdict {
  Classification classification = Classification::Inconclusive;
  std::string registered_example;
  std::optional<GrowthReport> theorem_a;
  std::optional<TheoremBScan> theorem_b;
  double cluster_eps = 0.0;
  int cluster_d = 0;
  std::vector<std::string> diagnostics;  ///< errors from sub-analyses
};

/// Runs the covering-ratio scan, then (for periodic sets with infinitely many
/// punctures) the cluster scan, and returns the strongest supported verdict.
Verdict classify(const SetSpec& set, const VerdictOptions& options = {});

}  // namespace qctame
