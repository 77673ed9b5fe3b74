#include "hus/diagonal_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hus/errors.hpp"

namespace hus {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool KernelSupport::contains(long long n) const {
  if (std::find(indices.begin(), indices.end(), n) != indices.end()) return true;
  for (const IndexClass& c : classes) {
    if (n >= c.first && (n - c.first) % c.step == 0) return true;
  }
  return false;
}

std::string KernelSupport::describe() const {
  if (empty()) return "{}";
  std::string s = "{";
  bool first_item = true;
  for (long long n : indices) {
    if (!first_item) s += ", ";
    s += std::to_string(n);
    first_item = false;
  }
  for (const IndexClass& c : classes) {
    if (!first_item) s += ", ";
    s += std::to_string(c.first) + "+" + std::to_string(c.step) + "k";
    first_item = false;
  }
  s += "}";
  return s;
}

DiagonalOperator::DiagonalOperator(std::vector<Scalar> head, std::vector<TailAtom> atoms)
    : head_(std::move(head)), atoms_(std::move(atoms)) {}

DiagonalOperator DiagonalOperator::create(std::vector<Scalar> head,
                                          std::vector<TailAtom> atoms) {
  DiagonalOperator d = create_allow_zero(std::move(head), std::move(atoms));
  if (d.is_zero_operator()) {
    throw InvalidOperator("the zero operator is not admitted");
  }
  return d;
}

DiagonalOperator DiagonalOperator::create_allow_zero(std::vector<Scalar> head,
                                                     std::vector<TailAtom> atoms) {
  if (atoms.empty()) throw InvalidOperator("diagonal model needs at least one tail rule");
  for (Scalar d : head) {
    if (!scalar_is_finite(d)) throw InvalidOperator("non-finite head entry");
  }
  return DiagonalOperator(std::move(head), std::move(atoms));
}

long long DiagonalOperator::class_first(int phase) const {
  const long long L = cycle_length();
  const long long s = start();
  const long long r = (s - 1) % L;
  const long long offset = ((phase - r) % L + L) % L;
  return s + offset;
}

Scalar DiagonalOperator::entry(long long n) const {
  if (n < 1) throw PreconditionError("indices start at 1");
  if (n <= head_size()) return head_[static_cast<std::size_t>(n - 1)];
  return atoms_[static_cast<std::size_t>((n - 1) % cycle_length())].eval_index(
      static_cast<double>(n));
}

bool DiagonalOperator::is_zero_operator() const {
  for (Scalar d : head_) {
    if (d != Scalar(0.0, 0.0)) return false;
  }
  for (const TailAtom& a : atoms_) {
    if (!a.is_zero()) return false;
  }
  return true;
}

ExtValue DiagonalOperator::inf_nonzero_modulus() const {
  ExtValue acc{kInf, false};
  bool any = false;
  auto feed = [&](double v, bool attained) {
    if (!any || v < acc.value) {
      acc = {v, attained};
      any = true;
    } else if (v == acc.value) {
      acc.attained = acc.attained || attained;
    }
  };
  for (Scalar d : head_) {
    if (d != Scalar(0.0, 0.0)) feed(std::abs(d), true);
  }
  for (int p = 0; p < cycle_length(); ++p) {
    const TailAtom& a = atoms_[static_cast<std::size_t>(p)];
    if (a.is_zero()) continue;
    const auto an = a.analyze(class_first(p), cycle_length());
    feed(an.inf_nonzero.value, an.inf_nonzero.attained);
  }
  if (!any) return {kInf, false};  // zero operator; callers guard
  return acc;
}

double DiagonalOperator::sup_modulus() const {
  double sup = 0.0;
  for (Scalar d : head_) sup = std::max(sup, std::abs(d));
  for (int p = 0; p < cycle_length(); ++p) {
    const TailAtom& a = atoms_[static_cast<std::size_t>(p)];
    if (a.is_zero()) continue;
    sup = std::max(sup, a.analyze(class_first(p), cycle_length()).sup);
  }
  return sup;
}

KernelSupport DiagonalOperator::kernel_support() const {
  KernelSupport ks;
  for (long long n = 1; n <= head_size(); ++n) {
    if (head_[static_cast<std::size_t>(n - 1)] == Scalar(0.0, 0.0)) ks.indices.push_back(n);
  }
  for (int p = 0; p < cycle_length(); ++p) {
    const TailAtom& a = atoms_[static_cast<std::size_t>(p)];
    if (a.is_zero()) {
      ks.classes.push_back({class_first(p), cycle_length()});
      continue;
    }
    const auto an = a.analyze(class_first(p), cycle_length());
    ks.indices.insert(ks.indices.end(), an.zeros.begin(), an.zeros.end());
  }
  std::sort(ks.indices.begin(), ks.indices.end());
  return ks;
}

std::vector<Scalar> DiagonalOperator::apply(std::span<const Scalar> x) const {
  std::vector<Scalar> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = entry(static_cast<long long>(i) + 1) * x[i];
  }
  return y;
}

DiagonalOperator DiagonalOperator::map(const std::function<Scalar(Scalar)>& head_fn,
                                       const std::function<TailAtom(const TailAtom&)>& atom_fn,
                                       bool allow_zero_result) const {
  std::vector<Scalar> head(head_.size());
  for (std::size_t i = 0; i < head_.size(); ++i) head[i] = head_fn(head_[i]);
  std::vector<TailAtom> atoms;
  atoms.reserve(atoms_.size());
  for (const TailAtom& a : atoms_) atoms.push_back(atom_fn(a));
  return allow_zero_result ? create_allow_zero(std::move(head), std::move(atoms))
                           : create(std::move(head), std::move(atoms));
}

DiagonalOperator DiagonalOperator::combine(
    const DiagonalOperator& a, const DiagonalOperator& b,
    const std::function<Scalar(Scalar, Scalar)>& head_fn,
    const std::function<TailAtom(const TailAtom&, const TailAtom&)>& atom_fn,
    bool allow_zero_result) {
  const long long start = std::max(a.start(), b.start());
  const long long L = std::lcm<long long>(a.cycle_length(), b.cycle_length());
  std::vector<Scalar> head(static_cast<std::size_t>(start - 1));
  for (long long n = 1; n < start; ++n) {
    head[static_cast<std::size_t>(n - 1)] = head_fn(a.entry(n), b.entry(n));
  }
  std::vector<TailAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(L));
  for (long long c = 0; c < L; ++c) {
    atoms.push_back(atom_fn(a.atoms_[static_cast<std::size_t>(c % a.cycle_length())],
                            b.atoms_[static_cast<std::size_t>(c % b.cycle_length())]));
  }
  return allow_zero_result ? create_allow_zero(std::move(head), std::move(atoms))
                           : create(std::move(head), std::move(atoms));
}

DiagonalOperator DiagonalOperator::interleave(const DiagonalOperator& t,
                                              const DiagonalOperator& s) {
  const long long start = std::max(2 * t.start() - 1, 2 * s.start());
  const long long L = 2 * std::lcm<long long>(t.cycle_length(), s.cycle_length());
  std::vector<Scalar> head(static_cast<std::size_t>(start - 1));
  for (long long n = 1; n < start; ++n) {
    head[static_cast<std::size_t>(n - 1)] =
        (n % 2 == 1) ? t.entry((n + 1) / 2) : s.entry(n / 2);
  }
  std::vector<TailAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(L));
  for (long long c = 0; c < L; ++c) {
    // Phase c covers n ≡ c+1 (mod L); odd n come from t, even from s.
    if (c % 2 == 0) {
      const long long tp = (c / 2) % t.cycle_length();
      atoms.push_back(t.atoms_[static_cast<std::size_t>(tp)].reindexed(2, -1));
    } else {
      const long long sp = ((c - 1) / 2) % s.cycle_length();
      atoms.push_back(s.atoms_[static_cast<std::size_t>(sp)].reindexed(2, 0));
    }
  }
  return create(std::move(head), std::move(atoms));
}

bool DiagonalOperator::structurally_equal(const DiagonalOperator& other) const {
  if (head_.size() != other.head_.size() || atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < head_.size(); ++i) {
    if (head_[i] != other.head_[i]) return false;
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!atoms_[i].structurally_equal(other.atoms_[i])) return false;
  }
  return true;
}

std::string DiagonalOperator::describe() const {
  std::string s = "diagonal head=[";
  for (std::size_t i = 0; i < head_.size(); ++i) {
    if (i) s += ", ";
    s += format_scalar(head_[i]);
  }
  s += "] cycle=[";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) s += "; ";
    s += atoms_[i].describe();
  }
  s += "]";
  return s;
}

}  // namespace hus
