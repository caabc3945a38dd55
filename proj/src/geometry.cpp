#include "casimir/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

void ConcentricGeometry::validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("inner radius a must be positive");
    if (!(b > a) || !std::isfinite(b)) throw std::domain_error("outer radius b must exceed a");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::domain_error("length L must be positive");
}

void EccentricGeometry::validate() const {
    base.validate();
    if (!(eps >= 0.0)) throw std::domain_error("axis offset eps must be non-negative");
    if (!(eps < base.gap())) {
        throw std::domain_error("axis offset eps must be smaller than b - a (eps_tilde < 1)");
    }
}

}  // namespace casimir
