#ifndef FUNNELQUAD_ERRORS_HPP
#define FUNNELQUAD_ERRORS_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "funnelquad/channels.hpp"

namespace funnelquad {

// A normalized error reached or left its funnel (|xi| >= 1). Carries the
// channel and time when the caller knows them; the raw transform entry
// points do not.
class FunnelViolation : public std::runtime_error {
 public:
  FunnelViolation(double xi, std::optional<Channel> channel, double t)
      : std::runtime_error(format(xi, channel, t)),
        xi_(xi),
        channel_(channel),
        t_(t) {}

  double xi() const { return xi_; }
  std::optional<Channel> channel() const { return channel_; }
  double time() const { return t_; }

 private:
  static std::string format(double xi, std::optional<Channel> channel,
                            double t) {
    std::ostringstream os;
    os << "funnel violation";
    if (channel) {
      os << " on channel " << channel_name(*channel) << " ("
         << channel_stage(*channel) << " loop)";
    }
    os << ": |xi| = " << std::fabs(xi) << " >= 1";
    if (!std::isnan(t)) os << " at t = " << t;
    return os.str();
  }

  double xi_;
  std::optional<Channel> channel_;
  double t_;
};

// A kinematic matrix lost invertibility (cos theta or the tilt Jacobian
// determinant collapsed).
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what)
      : std::runtime_error("singularity: " + what) {}
};

// Collective thrust too close to zero to divide the lateral feedback by.
class ThrustDegenerate : public std::runtime_error {
 public:
  ThrustDegenerate(double f_z, double f_z_min, double t)
      : std::runtime_error(format(f_z, f_z_min, t)), f_z_(f_z), t_(t) {}

  double f_z() const { return f_z_; }
  double time() const { return t_; }

 private:
  static std::string format(double f_z, double f_z_min, double t) {
    std::ostringstream os;
    os << "degenerate thrust: |F_z| = " << std::fabs(f_z) << " < " << f_z_min
       << " with nonzero lateral error";
    if (!std::isnan(t)) os << " at t = " << t;
    return os.str();
  }

  double f_z_;
  double t_;
};

// Tilt reference outside the image of the admissible angle box.
class InversionError : public std::runtime_error {
 public:
  explicit InversionError(const std::string& what)
      : std::runtime_error("tilt inversion failed: " + what) {}
};

// One or more channels start outside their funnels at t = 0.
class InitialComplianceError : public std::runtime_error {
 public:
  using Entry = std::pair<Channel, double>;  // channel, xi(0)

  explicit InitialComplianceError(std::vector<Entry> entries)
      : std::runtime_error(format(entries)), entries_(std::move(entries)) {}

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static std::string format(const std::vector<Entry>& entries) {
    std::ostringstream os;
    os << "initial funnel compliance failed:";
    for (const auto& [ch, xi] : entries) {
      os << " " << channel_name(ch) << " (xi(0) = " << xi << ")";
    }
    return os.str();
  }

  std::vector<Entry> entries_;
};

// State left the representable range (NaN/Inf) during integration.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what)
      : std::runtime_error("non-finite state: " + what) {}
};

// Scenario file failed to parse or validate. Carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error("config error [" + field + "]: " + what),
        field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace funnelquad

#endif  // FUNNELQUAD_ERRORS_HPP
