#ifndef HUS_RANDOM_MODELS_HPP
#define HUS_RANDOM_MODELS_HPP

#include <cstdint>
#include <random>

#include "hus/operator_model.hpp"

namespace hus {

/// Deterministic draw source. Doubles are built from raw engine bits so the
/// stream is reproducible independent of the standard library's
/// distribution implementations.
class DrawSource {
 public:
  explicit DrawSource(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }

  /// Exact dyadic draw k/2^10 with |value| in [1/32, max_abs]; sums and
  /// modest products of these are exactly representable.
  double dyadic(double max_abs) {
    const long long lo = 32;  // 1/32 at scale 2^-10
    const long long hi = static_cast<long long>(max_abs * 1024.0);
    double v = static_cast<double>(range(lo, hi)) * 0x1.0p-10;
    return chance(0.5) ? -v : v;
  }
  double positive_dyadic(double max_abs) { return std::abs(dyadic(max_abs)); }

  double power_of_two(int min_exp, int max_exp) {
    return std::ldexp(1.0, static_cast<int>(range(min_exp, max_exp)));
  }

 private:
  std::mt19937_64 gen_;
};

struct DiagonalDrawOptions {
  bool allow_kernel = true;     // permit zero classes / zero head entries
  bool allow_complex = true;
  bool stable_only = false;     // inf over nonzero entries bounded below
  bool bounded_only = false;    // exponents <= 0
  bool kernel_free = false;
  bool positive_real = false;
  bool constants_only = false;  // exponent-0 rules only
  bool power_of_two_coeffs = false;
  int max_cycle = 3;
  int max_head = 3;
};

DiagonalOperator random_diagonal(DrawSource& rng, const DiagonalDrawOptions& opt);

/// (s, t) with t stable and s relatively bounded by t with certificate b < 1;
/// every coefficient is an exact dyadic so the sum-stability inequality holds
/// bit-exactly.
std::pair<DiagonalOperator, DiagonalOperator> random_bounded_pair(DrawSource& rng);

/// Disjoint-support pair for the orthogonal-range sum.
std::pair<DiagonalOperator, DiagonalOperator> random_orthogonal_pair(DrawSource& rng);

/// (s, t, a) with nonnegative real entries, t bounded and |t_n| - |s_n| >= a.
struct CoercivePair {
  DiagonalOperator s;
  DiagonalOperator t;
  double a;
};
CoercivePair random_coercive_pair(DrawSource& rng);

MatrixOperator random_matrix(DrawSource& rng, Eigen::Index rows, Eigen::Index cols,
                             bool complex_entries);

std::vector<Scalar> random_vector(DrawSource& rng, std::size_t size, bool complex_entries);

enum class BlockFamily {
  Generic,       // stable complement
  ExactCancel,   // complement identically zero
  VanishingTail, // complement entries decaying to zero
};

/// Diagonal-regime block instance satisfying the Schur-side dominance
/// hypothesis (pivot A or E boundedly invertible, off-column relatively
/// bounded); `lower_pivot` selects the E-pivot variant.
BlockMatrix random_schur_block(DrawSource& rng, BlockFamily family, bool lower_pivot);

/// Diagonal-regime block instance satisfying the quadratic-side hypothesis
/// (pivot C or B boundedly invertible); `upper_pivot` selects the B-pivot
/// variant.
BlockMatrix random_quad_block(DrawSource& rng, BlockFamily family, bool upper_pivot);

/// Four random diagonal blocks with an invertible pivot for the requested
/// factorization; used by the reconstruction checks.
BlockMatrix random_factorization_block(DrawSource& rng, int which);

}  // namespace hus

#endif  // HUS_RANDOM_MODELS_HPP
