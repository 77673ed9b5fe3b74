#ifndef HUS_SCALAR_HPP
#define HUS_SCALAR_HPP

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace hus {

/// Complex double-precision scalar; entries of every operator model.
using Scalar = std::complex<double>;

bool scalar_is_finite(Scalar z);

/// x^k by repeated multiplication for integer k (|k| small). Used instead of
/// std::pow so that e.g. the entry 1/3 is bit-identical to the literal 1.0/3.
double int_pow(double x, long long k);

/// x^p choosing the integer fast path when p is (close to) an integer.
double real_pow(double x, double p);

/// a/b with componentwise (single-rounding) division for real b.
inline Scalar scalar_div(Scalar a, Scalar b) {
  if (b.imag() == 0.0) return Scalar(a.real() / b.real(), a.imag() / b.real());
  return a / b;
}

/// Canonical text form: "2", "-1.5", "3i", "2+3i", "2-3i", no spaces.
std::string format_scalar(Scalar z);

/// %.17g round-trippable text; +inf renders as "inf".
std::string format_real(double x);

/// Parses the canonical scalar form. Returns nullopt on malformed input.
std::optional<Scalar> parse_scalar(std::string_view text);

std::optional<double> parse_real(std::string_view text);

}  // namespace hus

#endif  // HUS_SCALAR_HPP
