#ifndef HUS_SPEC_FILE_HPP
#define HUS_SPEC_FILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "hus/operator_model.hpp"
#include "hus/zoo.hpp"

namespace hus {

struct TailAtomSpec {
  enum class Kind { Zero, Constant, Power } kind = Kind::Zero;
  Scalar coeff{0.0, 0.0};
  double exponent = 0.0;
};

/// Parsed form of an operator spec file (strict line-oriented key: value
/// grammar; `#` comment lines and blank lines ignored; `kind` first).
struct ParsedSpec {
  enum class Kind { Diagonal, Matrix, Block, Zoo } kind = Kind::Diagonal;

  // diagonal
  std::vector<Scalar> entries;
  std::vector<TailAtomSpec> tail;
  bool has_tail = false;

  // matrix
  std::vector<std::vector<Scalar>> rows;

  // block
  std::string a_file, b_file, c_file, e_file;
  Scalar mu{0.0, 0.0};

  // zoo
  std::string zoo_name;
  std::optional<long long> param_n;
  std::optional<double> param_cap;  // the grammar's N:
  std::optional<long long> param_dim;
  std::vector<double> nodes;
  std::optional<std::string> phi;

  // tolerance overrides
  std::optional<double> rank_tol, psd_tol, match_tol;
  std::optional<long long> grid_points;
};

ParsedSpec parse_spec(const std::string& text);

/// Canonical text; parse_spec(render_spec(s)) resolves to an identical model.
std::string render_spec(const ParsedSpec& spec);

struct ResolvedSpec {
  std::optional<OperatorModel> model;  // absent only for szasz zoo specs
  std::optional<SzaszSpec> szasz;
  ToleranceConfig tolerances;
  std::string kind;
  std::string name;
};

/// Applies tolerance overrides and builds the model; block sub-specs are
/// loaded relative to base_dir.
ResolvedSpec resolve_spec(const ParsedSpec& spec, const std::string& base_dir,
                          const ToleranceConfig& base);

ResolvedSpec load_spec_file(const std::string& path, const ToleranceConfig& base);

/// Spec text for a diagonal model whose rules are all plain (zero, constant,
/// power); extended rules have no file form.
std::optional<std::string> spec_text_for_diagonal(const DiagonalOperator& d);

std::string spec_text_for_matrix(const MatrixOperator& m);

}  // namespace hus

#endif  // HUS_SPEC_FILE_HPP
