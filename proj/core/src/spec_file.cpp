#include "hus/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hus/errors.hpp"

namespace hus {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

Scalar parse_scalar_or_throw(const std::string& text, int line) {
  auto v = parse_scalar(text);
  if (!v) throw ParseError(line, "malformed scalar '" + text + "'");
  return *v;
}

double parse_real_or_throw(const std::string& text, int line) {
  auto v = parse_real(text);
  if (!v || !std::isfinite(*v)) throw ParseError(line, "malformed number '" + text + "'");
  return *v;
}

long long parse_int_or_throw(const std::string& text, int line) {
  const double v = parse_real_or_throw(text, line);
  const long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v) throw ParseError(line, "expected an integer, got '" + text + "'");
  return i;
}

TailAtomSpec parse_tail_atom(const std::string& text, int line) {
  TailAtomSpec atom;
  if (text == "zero") {
    atom.kind = TailAtomSpec::Kind::Zero;
    return atom;
  }
  if (text.rfind("constant", 0) == 0) {
    atom.kind = TailAtomSpec::Kind::Constant;
    atom.coeff = parse_scalar_or_throw(trim(text.substr(8)), line);
    return atom;
  }
  if (text.rfind("power", 0) == 0) {
    atom.kind = TailAtomSpec::Kind::Power;
    bool saw_coeff = false, saw_exp = false;
    std::istringstream iss(text.substr(5));
    std::string tok;
    while (iss >> tok) {
      if (tok.rfind("coeff=", 0) == 0) {
        atom.coeff = parse_scalar_or_throw(tok.substr(6), line);
        saw_coeff = true;
      } else if (tok.rfind("exponent=", 0) == 0) {
        atom.exponent = parse_real_or_throw(tok.substr(9), line);
        saw_exp = true;
      } else {
        throw ParseError(line, "unexpected token '" + tok + "' in power rule");
      }
    }
    if (!saw_coeff || !saw_exp) throw ParseError(line, "power rule needs coeff= and exponent=");
    if (atom.coeff == Scalar(0.0, 0.0)) {
      throw ParseError(line, "a zero-coefficient power must be written as zero");
    }
    return atom;
  }
  throw ParseError(line, "unknown tail rule '" + text + "'");
}

std::vector<TailAtomSpec> parse_tail(const std::string& text, int line) {
  if (text.rfind("cyclic", 0) == 0) {
    std::string body = trim(text.substr(6));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw ParseError(line, "cyclic rule needs a [a; b; ...] list");
    }
    body = body.substr(1, body.size() - 2);
    std::vector<TailAtomSpec> atoms;
    for (const std::string& part : split(body, ';')) {
      if (part.empty()) throw ParseError(line, "empty sub-rule in cyclic list");
      atoms.push_back(parse_tail_atom(part, line));
    }
    if (atoms.empty()) throw ParseError(line, "cyclic list must be nonempty");
    return atoms;
  }
  return {parse_tail_atom(text, line)};
}

const std::set<std::string> kCommonKeys = {"kind", "rank_tol", "psd_tol", "grid_points",
                                           "match_tol"};
const std::set<std::string> kDiagonalKeys = {"entries", "tail"};
const std::set<std::string> kMatrixKeys = {"rows"};
const std::set<std::string> kBlockKeys = {"a.file", "b.file", "c.file", "e.file", "mu"};
const std::set<std::string> kZooKeys = {"name", "n", "N", "dim", "nodes", "phi"};

}  // namespace

ParsedSpec parse_spec(const std::string& text) {
  ParsedSpec spec;
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  bool saw_kind = false;
  std::set<std::string> seen;
  const std::set<std::string>* kind_keys = nullptr;

  while (std::getline(stream, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError(line, "expected 'key: value'");
    const std::string key = trim(s.substr(0, colon));
    const std::string value = trim(s.substr(colon + 1));
    if (key.empty()) throw ParseError(line, "empty key");

    if (!saw_kind) {
      if (key != "kind") throw ParseError(line, "spec must start with 'kind:'");
      if (value == "diagonal") {
        spec.kind = ParsedSpec::Kind::Diagonal;
        kind_keys = &kDiagonalKeys;
      } else if (value == "matrix") {
        spec.kind = ParsedSpec::Kind::Matrix;
        kind_keys = &kMatrixKeys;
      } else if (value == "block") {
        spec.kind = ParsedSpec::Kind::Block;
        kind_keys = &kBlockKeys;
      } else if (value == "zoo") {
        spec.kind = ParsedSpec::Kind::Zoo;
        kind_keys = &kZooKeys;
      } else {
        throw ParseError(line, "unknown kind '" + value + "'");
      }
      saw_kind = true;
      continue;
    }

    if (!kCommonKeys.count(key) && !kind_keys->count(key)) {
      throw ParseError(line, "unknown key '" + key + "'");
    }
    if (key != "rows" && !seen.insert(key).second) {
      throw ParseError(line, "duplicate key '" + key + "'");
    }
    if (value.empty()) throw ParseError(line, "empty value for '" + key + "'");

    if (key == "kind") throw ParseError(line, "duplicate key 'kind'");
    if (key == "rank_tol") {
      spec.rank_tol = parse_real_or_throw(value, line);
    } else if (key == "psd_tol") {
      spec.psd_tol = parse_real_or_throw(value, line);
    } else if (key == "match_tol") {
      spec.match_tol = parse_real_or_throw(value, line);
    } else if (key == "grid_points") {
      spec.grid_points = parse_int_or_throw(value, line);
    } else if (key == "entries") {
      for (const std::string& part : split(value, ',')) {
        spec.entries.push_back(parse_scalar_or_throw(part, line));
      }
    } else if (key == "tail") {
      spec.tail = parse_tail(value, line);
      spec.has_tail = true;
    } else if (key == "rows") {
      std::vector<Scalar> row;
      for (const std::string& part : split(value, ',')) {
        row.push_back(parse_scalar_or_throw(part, line));
      }
      if (!spec.rows.empty() && spec.rows.front().size() != row.size()) {
        throw ParseError(line, "ragged matrix rows");
      }
      spec.rows.push_back(std::move(row));
    } else if (key == "a.file") {
      spec.a_file = value;
    } else if (key == "b.file") {
      spec.b_file = value;
    } else if (key == "c.file") {
      spec.c_file = value;
    } else if (key == "e.file") {
      spec.e_file = value;
    } else if (key == "mu") {
      spec.mu = parse_scalar_or_throw(value, line);
    } else if (key == "name") {
      spec.zoo_name = value;
    } else if (key == "n") {
      spec.param_n = parse_int_or_throw(value, line);
    } else if (key == "N") {
      spec.param_cap = parse_real_or_throw(value, line);
    } else if (key == "dim") {
      spec.param_dim = parse_int_or_throw(value, line);
    } else if (key == "nodes") {
      for (const std::string& part : split(value, ',')) {
        spec.nodes.push_back(parse_real_or_throw(part, line));
      }
    } else if (key == "phi") {
      spec.phi = value;
    }
  }
  if (!saw_kind) throw ParseError(line, "empty spec: missing 'kind:'");

  switch (spec.kind) {
    case ParsedSpec::Kind::Diagonal:
      if (spec.entries.empty() && !spec.has_tail) {
        throw ParseError(line, "diagonal spec needs entries or a tail");
      }
      break;
    case ParsedSpec::Kind::Matrix:
      if (spec.rows.empty()) throw ParseError(line, "matrix spec needs rows");
      break;
    case ParsedSpec::Kind::Block:
      if (spec.a_file.empty() || spec.b_file.empty() || spec.c_file.empty() ||
          spec.e_file.empty()) {
        throw ParseError(line, "block spec needs a.file, b.file, c.file and e.file");
      }
      break;
    case ParsedSpec::Kind::Zoo:
      if (spec.zoo_name.empty()) throw ParseError(line, "zoo spec needs a name");
      break;
  }
  return spec;
}

namespace {

std::string render_tail_atom(const TailAtomSpec& atom) {
  switch (atom.kind) {
    case TailAtomSpec::Kind::Zero:
      return "zero";
    case TailAtomSpec::Kind::Constant:
      return "constant " + format_scalar(atom.coeff);
    case TailAtomSpec::Kind::Power:
      return "power coeff=" + format_scalar(atom.coeff) +
             " exponent=" + format_real(atom.exponent);
  }
  return "zero";
}

void render_tolerances(const ParsedSpec& spec, std::string& out) {
  if (spec.rank_tol) out += "rank_tol: " + format_real(*spec.rank_tol) + "\n";
  if (spec.psd_tol) out += "psd_tol: " + format_real(*spec.psd_tol) + "\n";
  if (spec.match_tol) out += "match_tol: " + format_real(*spec.match_tol) + "\n";
  if (spec.grid_points) out += "grid_points: " + std::to_string(*spec.grid_points) + "\n";
}

}  // namespace

std::string render_spec(const ParsedSpec& spec) {
  std::string out;
  switch (spec.kind) {
    case ParsedSpec::Kind::Diagonal: {
      out += "kind: diagonal\n";
      if (!spec.entries.empty()) {
        out += "entries: ";
        for (std::size_t i = 0; i < spec.entries.size(); ++i) {
          if (i) out += ", ";
          out += format_scalar(spec.entries[i]);
        }
        out += "\n";
      }
      if (spec.has_tail) {
        out += "tail: ";
        if (spec.tail.size() == 1) {
          out += render_tail_atom(spec.tail[0]);
        } else {
          out += "cyclic [";
          for (std::size_t i = 0; i < spec.tail.size(); ++i) {
            if (i) out += "; ";
            out += render_tail_atom(spec.tail[i]);
          }
          out += "]";
        }
        out += "\n";
      }
      break;
    }
    case ParsedSpec::Kind::Matrix: {
      out += "kind: matrix\n";
      for (const auto& row : spec.rows) {
        out += "rows: ";
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) out += ", ";
          out += format_scalar(row[i]);
        }
        out += "\n";
      }
      break;
    }
    case ParsedSpec::Kind::Block: {
      out += "kind: block\n";
      out += "a.file: " + spec.a_file + "\n";
      out += "b.file: " + spec.b_file + "\n";
      out += "c.file: " + spec.c_file + "\n";
      out += "e.file: " + spec.e_file + "\n";
      if (spec.mu != Scalar(0.0, 0.0)) out += "mu: " + format_scalar(spec.mu) + "\n";
      break;
    }
    case ParsedSpec::Kind::Zoo: {
      out += "kind: zoo\n";
      out += "name: " + spec.zoo_name + "\n";
      if (spec.param_n) out += "n: " + std::to_string(*spec.param_n) + "\n";
      if (spec.param_cap) out += "N: " + format_real(*spec.param_cap) + "\n";
      if (spec.param_dim) out += "dim: " + std::to_string(*spec.param_dim) + "\n";
      if (!spec.nodes.empty()) {
        out += "nodes: ";
        for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
          if (i) out += ", ";
          out += format_real(spec.nodes[i]);
        }
        out += "\n";
      }
      if (spec.phi) out += "phi: " + *spec.phi + "\n";
      break;
    }
  }
  render_tolerances(spec, out);
  return out;
}

namespace {

TailAtom to_atom(const TailAtomSpec& spec) {
  switch (spec.kind) {
    case TailAtomSpec::Kind::Zero:
      return TailAtom::zero();
    case TailAtomSpec::Kind::Constant:
      return TailAtom::constant(spec.coeff);
    case TailAtomSpec::Kind::Power:
      return TailAtom::power(spec.coeff, spec.exponent);
  }
  return TailAtom::zero();
}

PhiSpec parse_phi(const std::string& text) {
  if (text == "identity_on_0_1") return {PhiSpec::Kind::Identity01, 0.0, {}};
  if (text.rfind("shifted:", 0) == 0) {
    auto v = parse_real(text.substr(8));
    if (!v) throw PreconditionError("malformed phi shift '" + text + "'");
    return {PhiSpec::Kind::Shifted, *v, {}};
  }
  if (text.rfind("grid:", 0) == 0) {
    PhiSpec phi{PhiSpec::Kind::Grid, 0.0, {}};
    for (const std::string& part : split(text.substr(5), ',')) {
      auto v = parse_real(part);
      if (!v) throw PreconditionError("malformed phi grid value '" + part + "'");
      phi.grid_values.push_back(*v);
    }
    return phi;
  }
  throw PreconditionError("unknown phi '" + text + "'");
}

std::optional<OperatorModel> resolve_zoo(const ParsedSpec& spec, ResolvedSpec& out) {
  const std::string& name = spec.zoo_name;
  if (name == "stable_n") return paper_diagonal(PaperDiagonal::StableN);
  if (name == "inverse_of_stable_n") return paper_diagonal(PaperDiagonal::InverseOfStableN);
  if (name == "shifted_weighted") return paper_diagonal(PaperDiagonal::ShiftedWeighted);
  if (name == "mixed_unstable") return paper_diagonal(PaperDiagonal::MixedUnstable);
  if (name == "kernel_plus_n") return paper_diagonal(PaperDiagonal::KernelPlusN);
  if (name == "bernstein") {
    if (!spec.param_n) throw PreconditionError("bernstein needs n:");
    const int n = static_cast<int>(*spec.param_n);
    return bernstein_nodal_matrix(n, spec.nodes.empty() ? bernstein_uniform_nodes(n) : spec.nodes);
  }
  if (name == "multiplication") {
    if (!spec.param_dim) throw PreconditionError("multiplication needs dim:");
    if (!spec.phi) throw PreconditionError("multiplication needs phi:");
    return multiplication_sampled(parse_phi(*spec.phi), *spec.param_dim);
  }
  if (name == "szasz") {
    SzaszSpec sz;
    sz.n = spec.param_n ? static_cast<int>(*spec.param_n) : 1;
    sz.cap = spec.param_cap ? *spec.param_cap : 10.0;
    out.szasz = sz;
    return std::nullopt;  // no finite model; only the witness is computable
  }
  throw PreconditionError("unknown zoo name '" + name + "'");
}

std::string join_path(const std::string& base, const std::string& rel) {
  if (rel.empty() || rel[0] == '/') return rel;
  if (base.empty()) return rel;
  return base + "/" + rel;
}

std::string base_dir_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ResolvedSpec resolve_spec(const ParsedSpec& spec, const std::string& base_dir,
                          const ToleranceConfig& base) {
  ResolvedSpec out;
  out.tolerances = base;
  if (spec.rank_tol) out.tolerances.rank_tol = *spec.rank_tol;
  if (spec.psd_tol) out.tolerances.psd_tol = *spec.psd_tol;
  if (spec.match_tol) out.tolerances.match_tol = *spec.match_tol;
  if (spec.grid_points) out.tolerances.grid_points = static_cast<int>(*spec.grid_points);
  out.tolerances.validate();

  switch (spec.kind) {
    case ParsedSpec::Kind::Diagonal: {
      out.kind = "diagonal";
      out.name = "diagonal";
      std::vector<TailAtom> atoms;
      if (spec.has_tail) {
        for (const TailAtomSpec& a : spec.tail) atoms.push_back(to_atom(a));
      } else {
        atoms.push_back(TailAtom::zero());
      }
      out.model = DiagonalOperator::create(spec.entries, std::move(atoms));
      break;
    }
    case ParsedSpec::Kind::Matrix: {
      out.kind = "matrix";
      out.name = "matrix";
      Eigen::MatrixXcd m(static_cast<Eigen::Index>(spec.rows.size()),
                         static_cast<Eigen::Index>(spec.rows.front().size()));
      for (std::size_t r = 0; r < spec.rows.size(); ++r) {
        for (std::size_t c = 0; c < spec.rows[r].size(); ++c) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = spec.rows[r][c];
        }
      }
      out.model = MatrixOperator::create(std::move(m));
      break;
    }
    case ParsedSpec::Kind::Block: {
      out.kind = "block";
      out.name = "block";
      auto load = [&](const std::string& rel) {
        const std::string path = join_path(base_dir, rel);
        const ResolvedSpec sub = load_spec_file(path, base);
        if (!sub.model) throw PreconditionError("block component has no operator model");
        return *sub.model;
      };
      out.model = BlockMatrix(load(spec.a_file), load(spec.b_file), load(spec.c_file),
                              load(spec.e_file), spec.mu);
      break;
    }
    case ParsedSpec::Kind::Zoo: {
      out.kind = "zoo";
      out.name = spec.zoo_name;
      out.model = resolve_zoo(spec, out);
      break;
    }
  }
  return out;
}

ResolvedSpec load_spec_file(const std::string& path, const ToleranceConfig& base) {
  const ParsedSpec parsed = parse_spec(read_file(path));
  ResolvedSpec out = resolve_spec(parsed, base_dir_of(path), base);
  if (out.name == "diagonal" || out.name == "matrix" || out.name == "block") out.name = path;
  return out;
}

std::optional<std::string> spec_text_for_diagonal(const DiagonalOperator& d) {
  ParsedSpec spec;
  spec.kind = ParsedSpec::Kind::Diagonal;
  spec.entries = d.head();
  spec.has_tail = true;
  for (const TailAtom& a : d.atoms()) {
    TailAtomSpec as;
    switch (a.kind()) {
      case TailAtom::Kind::Zero:
        as.kind = TailAtomSpec::Kind::Zero;
        break;
      case TailAtom::Kind::Constant:
        as.kind = TailAtomSpec::Kind::Constant;
        as.coeff = a.coefficient();
        break;
      case TailAtom::Kind::Power:
        as.kind = TailAtomSpec::Kind::Power;
        as.coeff = a.coefficient();
        as.exponent = a.exponent();
        break;
      case TailAtom::Kind::Extended:
        return std::nullopt;
    }
    spec.tail.push_back(as);
  }
  return render_spec(spec);
}

std::string spec_text_for_matrix(const MatrixOperator& m) {
  ParsedSpec spec;
  spec.kind = ParsedSpec::Kind::Matrix;
  spec.rows.resize(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      spec.rows[static_cast<std::size_t>(r)].push_back(m.entry(r, c));
    }
  }
  return render_spec(spec);
}

}  // namespace hus
