#include "lcoal/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "lcoal/error.hpp"

namespace lcoal {

namespace {

constexpr unsigned kMaxDepth = 15;
constexpr double kRefineTarget = 1e-13;

void check(const Estimate& e, double lo, double hi, std::string_view what,
           QuadratureTolerance tol) {
  const double bound = std::max(tol.absolute, tol.relative * std::abs(e.value));
  if (std::isfinite(e.value) && e.error <= bound) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "integration failed for " << what << " on [" << lo << ", " << hi
      << "]: estimate " << e.value << ", error " << e.error << " > " << bound;
  throw NumericError(msg.str());
}

}  // namespace

Estimate integrate(const std::function<double(double)>& f, double lo, double hi,
                   std::string_view what, QuadratureTolerance tol) {
  Estimate e;
  if (lo == hi) return e;
  e.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, kMaxDepth, kRefineTarget, &e.error);
  check(e, lo, hi, what, tol);
  return e;
}

Estimate integrate_singular(const std::function<double(double)>& f, double lo,
                            double hi, std::string_view what,
                            QuadratureTolerance tol) {
  Estimate e;
  if (lo == hi) return e;
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  e.value = rule.integrate(f, lo, hi, kRefineTarget, &e.error);
  check(e, lo, hi, what, tol);
  return e;
}

}  // namespace lcoal
