#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "privrand/eig.hpp"
#include "privrand/entropic.hpp"
#include "privrand/format.hpp"
#include "privrand/parallel.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// Closed-form analysis of the Werner family (alpha = 1 - 2 theta): spectra
// of the partial transpose, both mutual informations, the gap condition and
// the critical dimension.  The spectral counterparts live in ensembles +
// entropic and are used as the cross-checking oracle.

inline void check_werner_range(std::size_t d, double alpha, double alpha_min = -1.0) {
  if (d < 2) throw std::invalid_argument("werner closed form: d must be >= 2");
  if (alpha < alpha_min || alpha > 1.0)
    throw std::invalid_argument("werner closed form: alpha out of range");
}

// Spectrum of werner(d, alpha)^Gamma: alpha/d once, (d - alpha)/(d (d^2-1))
// repeated d^2 - 1 times.
inline Spectrum werner_gamma_spectrum(std::size_t d, double alpha) {
  check_werner_range(d, alpha);
  const double dd = static_cast<double>(d);
  Spectrum s;
  const double lambda0 = alpha / dd;
  const double rest = (dd - alpha) / (dd * (dd * dd - 1.0));
  s.eigenvalues.assign(d * d, rest);
  // keep descending order
  if (lambda0 >= rest)
    s.eigenvalues.front() = lambda0;
  else
    s.eigenvalues.back() = lambda0;
  s.residual = 0.0;
  return s;
}

// I(A:B) of the Werner state, closed form.
inline double werner_mi(std::size_t d, double alpha) {
  check_werner_range(d, alpha);
  const double dd = static_cast<double>(d);
  const double theta = 0.5 * (1.0 - alpha);
  return 1.0 + std::log2(dd) - theta * std::log2(dd - 1.0) -
         (1.0 - theta) * std::log2(dd + 1.0) - binary_entropy(theta);
}

// I(A:B) of the partially transposed Werner state; alpha = 0 by continuity.
inline double werner_mi_gamma(std::size_t d, double alpha) {
  check_werner_range(d, alpha, 0.0);
  const double dd = static_cast<double>(d);
  double v = std::log2(dd * (dd - alpha) / (dd * dd - 1.0));
  if (alpha > 0.0)
    v += (alpha / dd) * std::log2(alpha * (dd * dd - 1.0) / (dd - alpha));
  return v;
}

struct WernerPoint {
  std::size_t d = 2;
  double alpha = 0.0;
  double I = 0.0;
  double I_gamma = 0.0;
  bool gap_holds = false;
  double margin = 0.0;  // I - 2 I_gamma
  bool degenerate = false;  // alpha = 1/d: the state is maximally mixed
};

inline WernerPoint werner_point(std::size_t d, double alpha) {
  WernerPoint p;
  p.d = d;
  p.alpha = alpha;
  p.I = werner_mi(d, alpha);
  p.I_gamma = werner_mi_gamma(d, alpha);
  p.margin = p.I - 2.0 * p.I_gamma;
  p.gap_holds = p.margin > kStrictMargin;
  p.degenerate = std::abs(alpha - 1.0 / static_cast<double>(d)) <= 1e-12;
  return p;
}

// Smallest d in [2, d_max] with strict margin; every d is checked (the
// margin is not monotone near the alpha = 1/d degeneracies).
inline std::optional<std::size_t> critical_dimension(double alpha, std::size_t d_max) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("critical_dimension: alpha must be in (0,1]");
  if (d_max < 2) throw std::invalid_argument("critical_dimension: d_max must be >= 2");
  for (std::size_t d = 2; d <= d_max; ++d)
    if (werner_point(d, alpha).gap_holds) return d;
  return std::nullopt;
}

// rows sorted by (alpha, d) regardless of evaluation order
inline std::vector<WernerPoint> werner_scan(const std::vector<double>& alpha_list,
                                            std::size_t d_min, std::size_t d_max) {
  if (d_min < 2 || d_max < d_min) throw std::invalid_argument("werner_scan: bad d range");
  for (double a : alpha_list)
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("werner_scan: alpha out of [0,1]");
  const std::size_t nd = d_max - d_min + 1;
  std::vector<WernerPoint> rows(alpha_list.size() * nd);
  parallel_for(rows.size(), [&](std::size_t k) {
    const double alpha = alpha_list[k / nd];
    const std::size_t d = d_min + (k % nd);
    rows[k] = werner_point(d, alpha);
  });
  return rows;
}

// critical-dimension reference values for comparison against the scan
struct CriticalDimensionRef {
  double alpha;
  std::size_t d_cri;
};

inline const std::vector<CriticalDimensionRef>& critical_dimension_references() {
  static const std::vector<CriticalDimensionRef> refs{{0.1, 51}, {0.2, 5}, {0.5, 2}};
  return refs;
}

inline std::optional<std::size_t> critical_dimension_reference(double alpha) {
  for (const auto& r : critical_dimension_references())
    if (std::abs(r.alpha - alpha) <= 1e-12) return r.d_cri;
  return std::nullopt;
}

inline std::string werner_scan_csv(const std::vector<WernerPoint>& rows) {
  std::ostringstream out;
  out << "alpha,d,I,I_gamma,two_I_gamma,margin,gap,degenerate\n";
  for (const auto& p : rows) {
    out << fmt12(p.alpha) << ',' << p.d << ',' << fmt12(p.I) << ',' << fmt12(p.I_gamma) << ','
        << fmt12(2.0 * p.I_gamma) << ',' << fmt12(p.margin) << ',' << fmt_bool(p.gap_holds)
        << ',' << fmt_bool(p.degenerate) << '\n';
  }
  return out.str();
}

struct CriticalDimensionSummary {
  double alpha = 0.0;
  std::optional<std::size_t> derived;
  std::optional<std::size_t> reference;
  bool discrepancy = false;
  std::vector<std::size_t> equality_ds;  // |margin| <= kStrictMargin
};

inline CriticalDimensionSummary critical_dimension_summary(double alpha, std::size_t d_min,
                                                           std::size_t d_max) {
  CriticalDimensionSummary s;
  s.alpha = alpha;
  if (alpha > 0.0) s.derived = critical_dimension(alpha, d_max);
  s.reference = critical_dimension_reference(alpha);
  s.discrepancy = s.reference && s.derived != s.reference;
  for (std::size_t d = d_min; d <= d_max; ++d)
    if (std::abs(werner_point(d, alpha).margin) <= kStrictMargin) s.equality_ds.push_back(d);
  return s;
}

inline std::string critical_dimension_summary_csv(
    const std::vector<CriticalDimensionSummary>& rows) {
  std::ostringstream out;
  out << "alpha,d_cri,d_cri_ref,discrepancy,equality_ds\n";
  for (const auto& s : rows) {
    out << fmt12(s.alpha) << ',';
    if (s.derived) out << *s.derived; else out << "none";
    out << ',';
    if (s.reference) out << *s.reference; else out << "";
    out << ',' << fmt_bool(s.discrepancy) << ',';
    for (std::size_t i = 0; i < s.equality_ds.size(); ++i) {
      if (i) out << ';';
      out << s.equality_ds[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace privrand
