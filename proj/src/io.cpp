#include "hftail/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hftail/error.hpp"

namespace hftail {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

int parse_int_field(const std::string& s, std::size_t pos, std::size_t len) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(errc::io, "bad timestamp field: " + s);
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

// Howard Hinnant's civil-to-days algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_price(const std::string& tok, const std::string& path) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    fail(errc::io, path + ": bad price value '" + tok + "'");
  return v;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& token) {
  std::string s = trim(token);
  if (all_digits(s)) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) fail(errc::io, "bad epoch value: " + s);
    return v;
  }
  if (!s.empty() && s.back() == 'Z') s.pop_back();
  // YYYY-MM-DDTHH:MM:SS with 'T' or ' ' as the separator
  if (s.size() != 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':')
    fail(errc::io, "unrecognized timestamp: " + token);
  int year = parse_int_field(s, 0, 4);
  int month = parse_int_field(s, 5, 2);
  int day = parse_int_field(s, 8, 2);
  int hh = parse_int_field(s, 11, 2);
  int mm = parse_int_field(s, 14, 2);
  int ss = parse_int_field(s, 17, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 60)
    fail(errc::io, "timestamp out of range: " + token);
  return days_from_civil(year, month, day) * 86400 + hh * 3600 + mm * 60 + ss;
}

PriceSeries load_price_csv(const std::string& path, const std::string& instrument_id) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::io, path + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "timestamp" || header[1] != "price")
    fail(errc::io, path + ": expected header timestamp,price");

  PriceSeries ps;
  ps.instrument_id = instrument_id;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() != 2)
      fail(errc::io, path + ": bad column count at line " + std::to_string(lineno));
    ps.timestamps.push_back(parse_timestamp(cols[0]));
    ps.prices.push_back(parse_price(cols[1], path));
  }
  ps.validate();
  return ps;
}

std::vector<Session> load_session_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::io, path + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "start" || header[1] != "end")
    fail(errc::io, path + ": expected header start,end");

  std::vector<Session> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() != 2)
      fail(errc::io, path + ": bad column count at line " + std::to_string(lineno));
    out.push_back(Session{parse_timestamp(cols[0]), parse_timestamp(cols[1])});
  }
  return out;
}

void write_price_csv(const std::string& path, const std::vector<std::int64_t>& timestamps,
                     const std::vector<double>& prices) {
  if (timestamps.size() != prices.size()) fail(errc::mismatch, "write_price_csv: length mismatch");
  std::string body = "timestamp,price\n";
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    body += std::to_string(timestamps[i]);
    body += ',';
    body += fmt_double(prices[i]);
    body += '\n';
  }
  write_text_atomic(path, body);
}

std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) fail(errc::io, "number formatting failed");
  return std::string(buf, p);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) fail(errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(errc::io, "rename failed for " + path + ": " + ec.message());
}

}  // namespace hftail
