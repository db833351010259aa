#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>

namespace danet {

/// Shortest decimal string that round-trips the double (to_chars); infinities
/// and NaN come out as inf/-inf/nan.
std::string format_double(double x);

/// Line-oriented CSV writer with deterministic number formatting. Commits the
/// file on close; throws IoError on open failure.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<std::string_view> header);

  template <class... Ts>
  void row(const Ts&... vals) {
    bool first = true;
    ((write_field(first, vals), first = false), ...);
    out_ << '\n';
  }

 private:
  template <class T>
  void write_field(bool first, const T& v) {
    if (!first) out_ << ',';
    if constexpr (std::is_same_v<T, bool>) {
      out_ << (v ? '1' : '0');
    } else if constexpr (std::is_floating_point_v<T>) {
      out_ << format_double(v);
    } else if constexpr (std::is_integral_v<T>) {
      out_ << std::to_string(v);
    } else {
      out_ << v;
    }
  }

  std::ofstream out_;
};

}  // namespace danet
