#include "fockwc/text_format.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace fockwc {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.9g", z.real());
  } else if (z.real() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.9gi", z.imag());
  } else {
    std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", z.real(), z.imag());
  }
  return buf;
}

namespace {

// Reads one signed decimal number starting at pos; advances pos past it.
// A bare sign followed by 'i' is allowed by the caller, not here.
bool read_number(const std::string& s, std::size_t& pos, double& out) {
  const char* start = s.c_str() + pos;
  char* end = nullptr;
  out = std::strtod(start, &end);
  if (end == start) return false;
  pos += static_cast<std::size_t>(end - start);
  return true;
}

}  // namespace

std::optional<Complex> parse_complex(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;

  // unit imaginary forms: "i", "+i", "-i"
  auto unit_imag = [&](std::size_t p) -> std::optional<double> {
    double sign = 1.0;
    if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
      if (text[p] == '-') sign = -1.0;
      ++p;
    }
    if (p + 1 == text.size() && text[p] == 'i') return sign;
    return std::nullopt;
  };

  if (auto im = unit_imag(0)) return Complex(0.0, *im);

  double first = 0.0;
  if (!read_number(text, pos, first)) return std::nullopt;
  if (pos == text.size()) return Complex(first, 0.0);

  if (text[pos] == 'i') {
    return pos + 1 == text.size() ? std::optional<Complex>(Complex(0.0, first))
                                  : std::nullopt;
  }

  // "re±imi" with a mandatory sign between the parts
  if (text[pos] != '+' && text[pos] != '-') return std::nullopt;
  if (auto im = unit_imag(pos)) return Complex(first, *im);

  double second = 0.0;
  if (!read_number(text, pos, second)) return std::nullopt;
  if (pos + 1 != text.size() || text[pos] != 'i') return std::nullopt;
  return Complex(first, second);
}

}  // namespace fockwc
