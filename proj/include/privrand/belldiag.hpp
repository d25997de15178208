#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "privrand/ensembles.hpp"
#include "privrand/entropic.hpp"
#include "privrand/parallel.hpp"
#include "privrand/rng.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// Entropy form of the gap condition for partially transposed Bell mixtures:
// holds iff H(half-sum combinations) < 2 H(weights) - 2, strictly.
struct BellDiagGap {
  bool holds = false;
  double lhs = 0.0;  // H of the four half-sum combinations = S of the transposed state
  double rhs = 0.0;  // 2 H(weights) - 2
};

inline std::vector<double> belldiag_gamma_eigenvalues(const BellDiagParams& p) {
  return {0.5 * (p.a_plus + p.a_minus + p.b_plus - p.b_minus),
          0.5 * (p.a_plus + p.a_minus - p.b_plus + p.b_minus),
          0.5 * (p.a_plus - p.a_minus + p.b_plus + p.b_minus),
          0.5 * (-p.a_plus + p.a_minus + p.b_plus + p.b_minus)};
}

inline BellDiagGap belldiag_gap_condition(const BellDiagParams& p) {
  p.check();
  BellDiagGap g;
  const std::vector<double> weights{p.a_plus, p.a_minus, p.b_plus, p.b_minus};
  g.lhs = shannon_bits(belldiag_gamma_eigenvalues(p));
  g.rhs = 2.0 * shannon_bits(weights) - 2.0;
  g.holds = g.lhs < g.rhs - kStrictMargin;
  return g;
}

// Element-wise converse inequality 2 eta(x/2) - x <= eta((1-x)/2); the claim
// covers x outside [1/3, 1/2] only.
struct ElementwisePoint {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool converse_holds = false;
};

inline ElementwisePoint elementwise_inequality(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("elementwise_inequality: x out of [0,1]");
  ElementwisePoint p;
  p.x = x;
  p.lhs = 2.0 * eta(0.5 * x) - x;
  p.rhs = eta(0.5 * (1.0 - x));
  p.converse_holds = p.lhs <= p.rhs + 1e-12;
  return p;
}

inline std::vector<ElementwisePoint> elementwise_grid(double step) {
  if (step <= 0.0 || step > 1.0) throw std::invalid_argument("elementwise_grid: bad step");
  std::vector<ElementwisePoint> out;
  const std::size_t n = static_cast<std::size_t>(std::llround(1.0 / step));
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    out.push_back(elementwise_inequality(static_cast<double>(k) * step));
  return out;
}

// ---------------------------------------------------------------------------
// randomized search over the weight simplex
// ---------------------------------------------------------------------------

struct SearchConfig {
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  bool separable_only = true;
};

struct BellSearchViolation {
  std::size_t sample_index = 0;
  BellDiagParams params;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct BellSearchReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool separable_only = true;
  std::vector<BellSearchViolation> violations;
  std::int64_t runtime_ms = 0;
};

// Sample k draws its own counter-based stream, so the outcome is independent
// of thread count and evaluation order.
inline BellDiagParams bell_search_sample(std::uint64_t seed, std::size_t index,
                                         bool separable_only) {
  Rng rng(seed, index);
  for (;;) {
    const std::vector<double> w = random_simplex(4, rng);
    const BellDiagParams p{w[0], w[1], w[2], w[3]};
    if (!separable_only || p.separable()) return p;
  }
}

inline BellSearchReport random_search(const SearchConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("random_search: samples must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  BellSearchReport report;
  report.samples = cfg.samples;
  report.seed = cfg.seed;
  report.separable_only = cfg.separable_only;

  std::vector<std::uint8_t> hit(cfg.samples, 0);
  parallel_for(cfg.samples, [&](std::size_t k) {
    const BellDiagParams p = bell_search_sample(cfg.seed, k, cfg.separable_only);
    if (belldiag_gap_condition(p).holds) hit[k] = 1;
  });
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    if (!hit[k]) continue;
    const BellDiagParams p = bell_search_sample(cfg.seed, k, cfg.separable_only);
    const BellDiagGap g = belldiag_gap_condition(p);
    report.violations.push_back(BellSearchViolation{k, p, g.lhs, g.rhs});
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return report;
}

}  // namespace privrand
