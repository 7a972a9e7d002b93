#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hftail/returns.hpp"

namespace hftail {

// "1234567890" (epoch seconds) or "YYYY-MM-DD HH:MM:SS" / "...T...Z" (UTC).
std::int64_t parse_timestamp(const std::string& token);

// CSV with header timestamp,price. Sessions are left empty (derived per day
// downstream) unless attached from a sessions file.
PriceSeries load_price_csv(const std::string& path, const std::string& instrument_id);

// CSV with header start,end, same timestamp formats.
std::vector<Session> load_session_csv(const std::string& path);

void write_price_csv(const std::string& path, const std::vector<std::int64_t>& timestamps,
                     const std::vector<double>& prices);

// Shortest round-trip decimal form; locale-free.
std::string fmt_double(double v);

// Write via a temp file in the same directory, then rename into place.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace hftail
