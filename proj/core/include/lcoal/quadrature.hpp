#pragma once

#include <functional>
#include <string_view>

namespace lcoal {

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate (0 for closed forms)
};

/// Acceptance bound for a finished integration: the reported error must not
/// exceed max(absolute, relative * |value|).
struct QuadratureTolerance {
  double absolute = 1e-10;
  double relative = 1e-8;
};

/// Adaptive Gauss-Kronrod (15/31) integration over a finite interval.
/// Refinement aims well below the tolerance; throws NumericError with the
/// interval, estimate and error when the tolerance is still not met.
Estimate integrate(const std::function<double(double)>& f, double lo, double hi,
                   std::string_view what, QuadratureTolerance tol = {});

/// Same contract, tanh-sinh rule; suited to integrable endpoint singularities.
Estimate integrate_singular(const std::function<double(double)>& f, double lo,
                            double hi, std::string_view what,
                            QuadratureTolerance tol = {});

}  // namespace lcoal
