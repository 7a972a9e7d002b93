#pragma once

#include <stdexcept>
#include <string>

namespace hftail {

enum class errc {
  invalid_interval,
  insufficient_data,
  degenerate_series,
  mismatch,
  insufficient_range,
  domain,
  convergence,
  io,
  config,
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::invalid_interval:   return "invalid-interval";
    case errc::insufficient_data:  return "insufficient-data";
    case errc::degenerate_series:  return "degenerate-series";
    case errc::mismatch:           return "mismatch";
    case errc::insufficient_range: return "insufficient-range";
    case errc::domain:             return "domain";
    case errc::convergence:        return "convergence";
    case errc::io:                 return "io";
    case errc::config:             return "config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc kind, const std::string& msg)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace hftail
