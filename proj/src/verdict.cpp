#include "qctame/verdict.hpp"

#include "qctame/error.hpp"

namespace qctame {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::ObstructedByA: return "ObstructedByA";
    case Classification::ObstructedByB: return "ObstructedByB";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<RegisteredClusterExample> registered_cluster_example(const SetSpec& set) {
  if (std::holds_alternative<SetSpec::Geometric>(set.kind())) {
    // Distinct points are at least 1 apart (same row) or 1 apart (rows 1 and 2),
    // so every eps <= 1 disk around a set point holds only its centre.
    return RegisteredClusterExample{"Z+i{2^n} not tame", 0.5, 2};
  }
  return std::nullopt;
}

Verdict classify(const SetSpec& set, const VerdictOptions& options) {
  Verdict verdict;

  try {
    RatioScanOptions scan;
    scan.covering.sample_budget = options.sample_budget;
    scan.tol_relative_to_extent = true;
    scan.threads = options.threads;
    verdict.theorem_a = ratio_scan(set, default_schedule(set), options.ratio_tol, scan);
    for (const auto& s : verdict.theorem_a->samples) {
      if (!s.error.empty()) verdict.diagnostics.push_back("theorem A: " + s.error);
    }
  } catch (const Error& e) {
    verdict.diagnostics.push_back(std::string("theorem A: ") + e.what());
  }

  const auto example = registered_cluster_example(set);
  verdict.cluster_eps = example ? example->eps : options.cluster_eps;
  verdict.cluster_d = example ? example->d : options.cluster_d;
  if (set.period() && set.infinite_punctures()) {
    try {
      verdict.theorem_b = theorem_b_scan(set, verdict.cluster_eps, verdict.cluster_d,
                                         options.cluster_max_windows, options.threads);
    } catch (const Error& e) {
      verdict.diagnostics.push_back(std::string("theorem B: ") + e.what());
    }
  }

  if (verdict.theorem_a && verdict.theorem_a->verdict_hint == GrowthHint::Divergent) {
    verdict.classification = Classification::ObstructedByA;
    if (const auto witness = analytic_witness(set)) verdict.registered_example = witness->statement;
  } else if (verdict.theorem_b && !verdict.theorem_b->found && example) {
    verdict.classification = Classification::ObstructedByB;
    verdict.registered_example = example->name;
  }
  return verdict;
}

}  // namespace qctame
