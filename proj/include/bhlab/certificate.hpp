#pragma once

#include <cstdint>
#include <string>

namespace bhlab {

/// A computed norm with an enclosure. For sup-norms `lower` is a value that
/// was actually attained and `upper` a rigorous bound; quadrature
/// certificates carry error-bar enclosures instead.
struct NormCertificate {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  std::int64_t evaluations = 0;
  bool converged = true;

  static NormCertificate exact(double value, std::string method) {
    return {value, value, value, std::move(method), 0, true};
  }
};

} // namespace bhlab
