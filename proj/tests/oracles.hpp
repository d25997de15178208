#pragma once

// Brute-force reference implementations used as oracles.  They work by
// explicit digit decomposition of flat indices and stay independent of the
// library's stride machinery.

#include <cstddef>
#include <vector>

#include "privrand/complex_matrix.hpp"

namespace oracle {

using privrand::ComplexMatrix;
using privrand::cplx;

inline std::vector<std::size_t> digits(std::size_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = idx % dims[k];
    idx /= dims[k];
  }
  return d;
}

inline std::size_t undigits(const std::vector<std::size_t>& dg,
                            const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + dg[k];
  return idx;
}

// trace over the registers flagged in `drop`
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<bool>& drop) {
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!drop[k]) kept_dims.push_back(dims[k]);
  std::size_t out_dim = 1;
  for (std::size_t d : kept_dims) out_dim *= d;
  ComplexMatrix out(out_dim, out_dim);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool diagonal_on_dropped = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (drop[k] && di[k] != dj[k]) diagonal_on_dropped = false;
      if (!diagonal_on_dropped) continue;
      std::vector<std::size_t> ki, kj;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (!drop[k]) {
          ki.push_back(di[k]);
          kj.push_back(dj[k]);
        }
      out(undigits(ki, kept_dims), undigits(kj, kept_dims)) += m(i, j);
    }
  }
  return out;
}

// transpose the registers flagged in `cut`
inline ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                       const std::vector<std::size_t>& dims,
                                       const std::vector<bool>& cut) {
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      auto ri = di, rj = dj;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (cut[k]) std::swap(ri[k], rj[k]);
      out(undigits(ri, dims), undigits(rj, dims)) = m(i, j);
    }
  }
  return out;
}

}  // namespace oracle
