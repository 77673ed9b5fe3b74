#include "hus/report.hpp"

#include <sstream>

namespace hus {

namespace {

std::string kernel_dim_text(const StabilityReport& s) {
  return s.kernel_infinite ? "inf" : std::to_string(s.kernel_dim);
}

std::string join_scalars(const std::vector<Scalar>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_scalar(xs[i]);
  }
  return out;
}

std::string render_keyvalue(const Report& r) {
  std::ostringstream out;
  out << "subject.kind = " << r.subject_kind << "\n";
  out << "subject.name = " << r.subject_name << "\n";
  out << "tolerances.rank_tol = " << format_real(r.tolerances.rank_tol) << "\n";
  out << "tolerances.psd_tol = " << format_real(r.tolerances.psd_tol) << "\n";
  out << "tolerances.grid_points = " << r.tolerances.grid_points << "\n";
  out << "tolerances.match_tol = " << format_real(r.tolerances.match_tol) << "\n";
  if (r.stability) {
    const StabilityReport& s = *r.stability;
    out << "stability.gamma = " << format_real(s.gamma) << "\n";
    out << "stability.gamma_attained = " << (s.gamma_attained ? "true" : "false") << "\n";
    out << "stability.hus_constant = " << format_real(s.hus_constant) << "\n";
    out << "stability.stable = " << (s.stable ? "true" : "false") << "\n";
    out << "stability.spectral_floor = " << format_real(s.spectral_floor) << "\n";
    out << "stability.kernel_dim = " << kernel_dim_text(s) << "\n";
  }
  if (r.convergence) {
    std::string dims, gammas;
    for (std::size_t i = 0; i < r.convergence->size(); ++i) {
      if (i) {
        dims += ",";
        gammas += ",";
      }
      dims += std::to_string((*r.convergence)[i].first);
      gammas += format_real((*r.convergence)[i].second);
    }
    out << "convergence.dims = " << dims << "\n";
    out << "convergence.gammas = " << gammas << "\n";
  }
  if (r.witness) {
    out << "witness.x0 = " << join_scalars(r.witness->x0) << "\n";
    out << "witness.distance = " << format_real(r.witness->distance) << "\n";
    out << "witness.bound = " << format_real(r.witness->bound) << "\n";
  }
  if (r.theorem) {
    const TheoremOutcome& t = *r.theorem;
    out << "verify.theorem = " << t.theorem_id << "\n";
    out << "verify.seed = " << t.seed << "\n";
    out << "verify.draws = " << t.draws << "\n";
    out << "verify.passed = " << (t.passed ? "true" : "false") << "\n";
    out << "verify.violations = " << t.violations << "\n";
    for (const auto& [key, value] : t.details) {
      out << "verify." << key << " = " << value << "\n";
    }
    if (!t.counterexample.empty()) {
      out << "verify.counterexample = " << t.counterexample << "\n";
    }
  }
  return out.str();
}

std::string render_human(const Report& r) {
  std::ostringstream out;
  out << "Subject: " << r.subject_name << " (" << r.subject_kind << ")\n";
  if (r.stability) {
    const StabilityReport& s = *r.stability;
    out << "  gamma (reduced minimum modulus): " << format_real(s.gamma)
        << (s.gamma_attained ? "  [attained]" : "  [limit]") << "\n";
    out << "  stability constant 1/gamma:      " << format_real(s.hus_constant) << "\n";
    out << "  stable (closed range):           " << (s.stable ? "yes" : "no") << "\n";
    out << "  spectral floor gamma^2:          " << format_real(s.spectral_floor) << "\n";
    out << "  kernel dimension:                " << kernel_dim_text(s) << "\n";
  }
  if (r.convergence) {
    out << "  truncation table (N, gamma_N):\n";
    for (const auto& [n, g] : *r.convergence) {
      out << "    " << n << "  " << format_real(g) << "\n";
    }
  }
  if (r.witness) {
    out << "  witness x0:       " << join_scalars(r.witness->x0) << "\n";
    out << "  witness distance: " << format_real(r.witness->distance) << "\n";
    out << "  witness bound:    " << format_real(r.witness->bound) << "\n";
  }
  if (r.theorem) {
    const TheoremOutcome& t = *r.theorem;
    out << "  verify " << t.theorem_id << " (seed " << t.seed << ", draws " << t.draws
        << "): " << (t.passed ? "pass" : "FAIL") << "\n";
    for (const auto& [key, value] : t.details) {
      out << "    " << key << " = " << value << "\n";
    }
    if (!t.counterexample.empty()) {
      out << "  counterexample: " << t.counterexample << "\n";
    }
  }
  out << "  tolerances: rank_tol " << format_real(r.tolerances.rank_tol) << ", psd_tol "
      << format_real(r.tolerances.psd_tol) << ", grid_points " << r.tolerances.grid_points
      << ", match_tol " << format_real(r.tolerances.match_tol) << "\n";
  return out.str();
}

}  // namespace

std::string render_report(const Report& r, ReportFormat format) {
  return format == ReportFormat::KeyValue ? render_keyvalue(r) : render_human(r);
}

}  // namespace hus
