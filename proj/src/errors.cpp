#include "burgers/errors.hpp"

#include <sstream>

namespace burgers {

namespace {

std::string blow_up_message(double t, double dt) {
  std::ostringstream os;
  os.precision(17);
  os << "numerical blow-up at t=" << t << " with dt=" << dt
     << " (non-finite modes; CFL breach?)";
  return os.str();
}

}  // namespace

BlowUpError::BlowUpError(double t, double dt)
    : Error(blow_up_message(t, dt)), t_(t), dt_(dt) {}

}  // namespace burgers
