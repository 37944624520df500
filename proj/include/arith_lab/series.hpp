#pragma once

// WeightSeries: a finite complex sequence on the half-open index window
// [start, start + size()). All arithmetic functions in the library are
// handed around in this form.

#include <charconv>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arith_lab/common.hpp"

namespace arith_lab {

class WeightSeries {
 public:
  WeightSeries() = default;
  WeightSeries(std::string label, std::int64_t start, std::vector<cplx> values)
      : label_(std::move(label)), start_(start), values_(std::move(values)) {}

  static WeightSeries from_real(std::string label, std::int64_t start, const std::vector<double>& v) {
    std::vector<cplx> c(v.begin(), v.end());
    return {std::move(label), start, std::move(c)};
  }

  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }
  std::int64_t start() const { return start_; }
  std::int64_t end() const { return start_ + static_cast<std::int64_t>(values_.size()); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(std::int64_t n) const { return n >= start_ && n < end(); }

  // value at absolute index n; zero outside the window
  cplx at(std::int64_t n) const { return contains(n) ? values_[static_cast<std::size_t>(n - start_)] : cplx{}; }
  cplx& operator[](std::int64_t n) { return values_[static_cast<std::size_t>(n - start_)]; }
  const cplx& operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - start_)]; }

  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  bool finite() const {
    for (const auto& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  double l2_norm_sq() const {
    double s = 0;
    for (const auto& v : values_) s += std::norm(v);
    return s;
  }

  // The series on [lo, hi); indices outside the current window read as zero.
  WeightSeries window(std::int64_t lo, std::int64_t hi) const {
    std::vector<cplx> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo, 0)));
    for (std::int64_t n = lo; n < hi; ++n) out[static_cast<std::size_t>(n - lo)] = at(n);
    return {label_, lo, std::move(out)};
  }

 private:
  std::string label_;
  std::int64_t start_ = 1;
  std::vector<cplx> values_;
};

inline WeightSeries operator-(const WeightSeries& a, const WeightSeries& b) {
  const std::int64_t lo = std::min(a.start(), b.start());
  const std::int64_t hi = std::max(a.end(), b.end());
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t n = lo; n < hi; ++n) out[static_cast<std::size_t>(n - lo)] = a.at(n) - b.at(n);
  return {a.label() + "-" + b.label(), lo, std::move(out)};
}

namespace io {

// 17 significant digits, enough for every double to round-trip.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general,
                           std::numeric_limits<double>::max_digits10);
  return std::string(buf, res.ptr);
}

// CSV with header "n,re,im", one row per index, LF endings.
inline void write_csv(std::ostream& os, const WeightSeries& s) {
  os << "n,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& v = s.values()[k];
    os << (s.start() + static_cast<std::int64_t>(k)) << ',' << format_double(v.real()) << ','
       << format_double(v.imag()) << '\n';
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

// Whole-field parse; from_chars keeps subnormals that strtod flags as range errors.
template <class T>
T parse_field(const std::string& field) {
  T v{};
  const char* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, v);
  require(res.ec == std::errc() && res.ptr == end, "csv field is not a number: '" + field + "'");
  return v;
}

// Reads "n,re,im" (im optional). Indices must be consecutive.
inline WeightSeries read_csv(std::istream& is, std::string label = "input") {
  std::string line;
  std::vector<cplx> vals;
  std::int64_t start = 0;
  std::int64_t expect = 0;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cols = split_csv_line(line);
    if (cols[0] == "n") continue;
    require(cols.size() >= 2, "csv row needs at least n,re: " + line);
    const auto n = parse_field<std::int64_t>(cols[0]);
    const auto re = parse_field<double>(cols[1]);
    const double im = cols.size() >= 3 && !cols[2].empty() ? parse_field<double>(cols[2]) : 0.0;
    if (first) {
      start = n;
      expect = n;
      first = false;
    }
    require(n == expect, "csv indices must be consecutive, got " + cols[0]);
    vals.emplace_back(re, im);
    ++expect;
  }
  require(!vals.empty(), "csv contained no rows");
  return {std::move(label), start, std::move(vals)};
}

}  // namespace io
}  // namespace arith_lab
