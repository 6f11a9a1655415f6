#include "jpm/ode.hpp"

#include <cstdio>

namespace jpm::ode {

namespace {

std::string with_time(const std::string& what, double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " at t = %.9g ns", time);
  return what + buf;
}

}  // namespace

IntegrationError::IntegrationError(const std::string& what, double time)
    : std::runtime_error(with_time(what, time)), time_(time) {}

}  // namespace jpm::ode
