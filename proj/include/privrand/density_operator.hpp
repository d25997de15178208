#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "privrand/complex_matrix.hpp"
#include "privrand/eig.hpp"
#include "privrand/layout.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// Hermitian, unit-trace, PSD matrix with a subsystem layout.  Construction
// enforces the cheap invariants (shape, finiteness, Hermiticity, trace);
// positivity is checked by validate(), which needs a spectrum.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, SubsystemLayout layout)
      : mat_(std::move(matrix)), layout_(std::move(layout)) {
    if (!mat_.square()) throw std::invalid_argument("density operator: matrix not square");
    if (mat_.rows() != layout_.total_dim())
      throw std::invalid_argument("density operator: matrix dimension != layout dimension");
    if (!mat_.all_finite()) throw std::invalid_argument("density operator: non-finite entries");
    if (mat_.hermiticity_defect() > kHermitianTol)
      throw std::invalid_argument("density operator: not Hermitian within tolerance");
    if (std::abs(mat_.trace() - cplx(1.0, 0.0)) > kTraceTol)
      throw std::invalid_argument("density operator: trace != 1 within tolerance");
  }

  const ComplexMatrix& matrix() const { return mat_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return mat_.rows(); }

  DensityOperator with_layout(SubsystemLayout layout) const {
    return DensityOperator(mat_, std::move(layout));
  }

  struct Validation {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    double spectrum_residual = 0.0;
    bool ok() const {
      return hermiticity_defect <= kHermitianTol && trace_defect <= kTraceTol &&
             min_eigenvalue >= -kPsdSlack && spectrum_residual <= kSpectrumResidualTol;
    }
  };

  Validation validate() const {
    Validation v;
    v.hermiticity_defect = mat_.hermiticity_defect();
    v.trace_defect = std::abs(mat_.trace() - cplx(1.0, 0.0));
    Spectrum s = eig_hermitian(mat_);
    v.min_eigenvalue = s.min();
    v.spectrum_residual = s.residual;
    return v;
  }

 private:
  ComplexMatrix mat_;
  SubsystemLayout layout_;
};

}  // namespace privrand
