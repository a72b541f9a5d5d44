#include "funnelquad/funnel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace funnelquad {

namespace {

void require_nonnegative_time(double t) {
  if (t < 0.0 || std::isnan(t)) {
    throw std::domain_error("performance function evaluated at t = " +
                            std::to_string(t) + " < 0");
  }
}

}  // namespace

double PerformanceFunction::value(double t) const {
  require_nonnegative_time(t);
  return (rho0 - rho_inf) * std::exp(-l * t) + rho_inf;
}

double PerformanceFunction::derivative(double t) const {
  require_nonnegative_time(t);
  return -l * (rho0 - rho_inf) * std::exp(-l * t);
}

void PerformanceFunction::validate(const char* name) const {
  if (!(rho_inf > 0.0)) throw ConfigError(name, "rho_inf must be > 0");
  if (!(rho0 > rho_inf)) throw ConfigError(name, "rho0 must be > rho_inf");
  if (!(l > 0.0)) throw ConfigError(name, "l must be > 0");
}

const PerformanceFunction& FunnelSet::channel(Channel c) const {
  switch (c) {
    case Channel::p_x:
    case Channel::p_y:
    case Channel::p_z:
      return pos[channel_index(c)];
    case Channel::v_x:
    case Channel::v_y:
    case Channel::v_z:
      return vel[channel_index(c) - 3];
    case Channel::phitheta_1:
    case Channel::phitheta_2:
      return tilt[channel_index(c) - 6];
    case Channel::psi:
      return yaw;
    case Channel::omega_phi:
    case Channel::omega_theta:
    case Channel::omega_psi:
      return rate[channel_index(c) - 9];
  }
  throw std::logic_error("bad channel");
}

PerformanceFunction& FunnelSet::channel(Channel c) {
  return const_cast<PerformanceFunction&>(
      static_cast<const FunnelSet&>(*this).channel(c));
}

void FunnelSet::validate() const {
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const auto c = static_cast<Channel>(i);
    channel(c).validate(std::string(channel_name(c)).c_str());
  }
}

NormalizedError normalize(double error, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("normalize: rho must be > 0");
  }
  return NormalizedError{error / rho};
}

namespace {

double atanh_checked(double xi) {
  if (!(std::fabs(xi) < 1.0)) {
    throw FunnelViolation(xi, std::nullopt,
                          std::numeric_limits<double>::quiet_NaN());
  }
  // Near the boundary 1 - xi cancels badly; the split log1p form keeps
  // full precision there.
  if (std::fabs(xi) > 1.0 - 1e-12) {
    return 0.5 * (std::log1p(xi) - std::log1p(-xi));
  }
  return std::atanh(xi);
}

}  // namespace

double transform(NormalizedError xi) { return atanh_checked(xi.value); }

double transform_slope(NormalizedError xi) {
  if (!(std::fabs(xi.value) < 1.0)) {
    throw FunnelViolation(xi.value, std::nullopt,
                          std::numeric_limits<double>::quiet_NaN());
  }
  return 1.0 / ((1.0 - xi.value) * (1.0 + xi.value));
}

ChannelSignal evaluate_channel(double error, const PerformanceFunction& pf,
                               Channel channel, double t, XiPolicy policy) {
  ChannelSignal s;
  s.e = error;
  s.rho = pf.value(t);
  s.xi = error / s.rho;

  double xi_used = s.xi;
  if (!(std::fabs(s.xi) < 1.0)) {
    s.violated = true;
    if (policy == XiPolicy::strict) {
      throw FunnelViolation(s.xi, channel, t);
    }
    xi_used = std::copysign(kXiClamp, s.xi);
  }
  s.eps = atanh_checked(xi_used);
  s.slope = 1.0 / ((1.0 - xi_used) * (1.0 + xi_used));
  return s;
}

}  // namespace funnelquad
