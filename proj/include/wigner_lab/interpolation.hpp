#pragma once

#include <algorithm>
#include <cmath>
#include <memory>

#include "wigner_lab/error.hpp"
#include "wigner_lab/grid.hpp"

namespace wigner_lab {

/// Four-point cubic Lagrange interpolation of a uniformly sampled complex
/// function. Exact at the samples. Outside the sampled range the function is
/// taken as zero when both edge samples are negligible (<= edge_tolerance
/// relative to the peak); otherwise evaluation there is a domain-coverage error.
class CubicInterpolant {
 public:
  CubicInterpolant() = default;
  explicit CubicInterpolant(ComplexField1D field, double edge_tolerance = 1e-6)
      : data_(std::make_shared<ComplexField1D>(std::move(field))) {
    require(data_->grid.count >= 4, ErrorKind::invalid_argument, "interpolation needs four samples");
    const double peak = max_abs(std::span<const complex>(data_->values));
    const double edge = std::max(std::abs(data_->values.front()), std::abs(data_->values.back()));
    zero_outside_ = edge <= edge_tolerance * peak;
  }

  complex operator()(double x) const {
    const auto& g = data_->grid;
    const double u = (x - g.start) / g.step;
    const double last = static_cast<double>(g.count - 1);
    constexpr double slack = 1e-9;
    if (u < -slack || u > last + slack) {
      if (zero_outside_) return {0.0, 0.0};
      fail(ErrorKind::domain_coverage, "interpolation outside tabulated grid at x=" + std::to_string(x));
    }
    const double uc = std::clamp(u, 0.0, last);
    auto base = static_cast<long>(std::floor(uc)) - 1;
    base = std::clamp(base, 0L, static_cast<long>(g.count) - 4);
    const double t = uc - static_cast<double>(base);
    const auto& v = data_->values;
    const auto b = static_cast<std::size_t>(base);
    // Lagrange basis on nodes 0,1,2,3.
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return l0 * v[b] + l1 * v[b + 1] + l2 * v[b + 2] + l3 * v[b + 3];
  }

  const ComplexField1D& field() const { return *data_; }

 private:
  std::shared_ptr<const ComplexField1D> data_;
  bool zero_outside_ = false;
};

}  // namespace wigner_lab
