#include "danet/csvio.hpp"

#include <charconv>
#include <cmath>

#include "danet/errors.hpp"

namespace danet {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::initializer_list<std::string_view> header)
    : out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
  bool first = true;
  for (std::string_view col : header) {
    if (!first) out_ << ',';
    out_ << col;
    first = false;
  }
  out_ << '\n';
}

}  // namespace danet
