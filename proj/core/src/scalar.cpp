#include "hus/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace hus {

bool scalar_is_finite(Scalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double int_pow(double x, long long k) {
  if (k == 0) return 1.0;
  const bool neg = k < 0;
  unsigned long long e = neg ? static_cast<unsigned long long>(-k)
                             : static_cast<unsigned long long>(k);
  double r = 1.0;
  for (unsigned long long i = 0; i < e; ++i) r *= x;
  return neg ? 1.0 / r : r;
}

double real_pow(double x, double p) {
  const double rp = std::nearbyint(p);
  if (rp == p && std::abs(rp) <= 64.0) {
    return int_pow(x, static_cast<long long>(rp));
  }
  return std::pow(x, p);
}

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_scalar(Scalar z) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  std::string s = format_real(re);
  if (im > 0 || std::isnan(im)) s += "+";
  s += format_real(im);
  s += "i";
  return s;
}

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  std::string owned(text);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size()) return std::nullopt;
  return v;
}

namespace {

// Splits "a+bi" / "a-bi" / "bi" / "a" at the sign that separates the real and
// imaginary parts (not a leading sign, not an exponent sign).
std::optional<Scalar> parse_scalar_impl(std::string_view t) {
  if (t.empty()) return std::nullopt;
  const bool has_i = t.back() == 'i' || t.back() == 'I';
  if (!has_i) {
    auto re = parse_real(t);
    if (!re) return std::nullopt;
    return Scalar(*re, 0.0);
  }
  std::string_view body = t.substr(0, t.size() - 1);
  // Find the split point: last '+'/'-' that is not position 0 and not
  // immediately after 'e'/'E'.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // Pure imaginary: "bi", "i", "-i".
    if (body.empty()) return Scalar(0.0, 1.0);
    if (body == "+") return Scalar(0.0, 1.0);
    if (body == "-") return Scalar(0.0, -1.0);
    auto im = parse_real(body);
    if (!im) return std::nullopt;
    return Scalar(0.0, *im);
  }
  auto re = parse_real(body.substr(0, split));
  if (!re) return std::nullopt;
  std::string_view im_part = body.substr(split);
  double im;
  if (im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    auto v = parse_real(im_part);
    if (!v) return std::nullopt;
    im = *v;
  }
  return Scalar(*re, im);
}

}  // namespace

std::optional<Scalar> parse_scalar(std::string_view text) {
  auto z = parse_scalar_impl(text);
  if (z && !scalar_is_finite(*z)) return std::nullopt;
  return z;
}

}  // namespace hus
