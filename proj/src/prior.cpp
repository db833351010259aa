#include "danet/prior.hpp"

#include <charconv>
#include <stdexcept>
#include <string_view>

namespace danet {
namespace {

double parse_number(std::string_view s, const std::string& spec) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad prior spec '" + spec + "'");
  return v;
}

}  // namespace

ComponentPrior ComponentPrior::parse(const std::string& spec) {
  ComponentPrior c;
  std::string_view s = spec;
  auto colon = s.find(':');
  std::string_view head = s.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (head == "uniform") {
    if (!rest.empty()) throw std::invalid_argument("bad prior spec '" + spec + "'");
    c.kind = Kind::uniform;
  } else if (head == "fixed") {
    if (rest.empty()) throw std::invalid_argument("bad prior spec '" + spec + "'");
    c.kind = Kind::fixed;
    c.value = parse_number(rest, spec);
  } else if (head == "beta") {
    auto mid = rest.find(':');
    if (mid == std::string_view::npos)
      throw std::invalid_argument("bad prior spec '" + spec + "'");
    c.kind = Kind::beta;
    c.a = parse_number(rest.substr(0, mid), spec);
    c.b = parse_number(rest.substr(mid + 1), spec);
  } else {
    throw std::invalid_argument("bad prior spec '" + spec + "'");
  }
  return c;
}

std::string ComponentPrior::to_string() const {
  switch (kind) {
    case Kind::fixed:
      return "fixed:" + std::to_string(value);
    case Kind::uniform:
      return "uniform";
    case Kind::beta:
      return "beta:" + std::to_string(a) + ":" + std::to_string(b);
  }
  return "";
}

}  // namespace danet
