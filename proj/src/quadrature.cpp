#include "rda/quadrature.hpp"

#include <sstream>

namespace rda::quad {

namespace {

std::string describe(double achieved, double requested) {
  std::ostringstream os;
  os.precision(3);
  os << "quadrature did not converge: achieved error " << achieved << ", requested " << requested;
  return os.str();
}

}  // namespace

QuadratureError::QuadratureError(double achieved, double requested)
    : std::runtime_error(describe(achieved, requested)), achieved_(achieved), requested_(requested) {}

}  // namespace rda::quad
