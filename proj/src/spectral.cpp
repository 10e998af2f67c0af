#include "almab/spectral.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace almab {

using nlohmann::json;

std::string Weight::to_string() const {
  std::ostringstream os;
  os << "re=" << re.to_string() << " im=" << almab::to_string(im_resonant) << "*(2pi/t)";
  if (!im_symbolic.is_zero()) os << " + i*(" << im_symbolic.to_string() << ")";
  return os.str();
}

int AlmostAbelianSpec::first_index(std::size_t b) const {
  int index = 1;
  for (std::size_t i = 0; i < b; ++i) index += blocks.at(i).real_dimension();
  return index;
}

namespace {

bool valid_symbol_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

void check_symbols(const ScalarLC& value, const std::set<std::string>& declared, const std::string& field) {
  for (const auto& entry : value.symbol_terms()) {
    if (!declared.count(entry.first)) {
      throw InputError(field + ": undeclared symbol '" + entry.first + "'");
    }
  }
}

std::string literal_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(field + ": expected a string literal such as \"p/q\"");
}

ScalarLC read_lc(const json& v, const std::string& field) {
  try {
    return ScalarLC::parse(literal_text(v, field));
  } catch (const std::invalid_argument& e) {
    throw InputError(field + ": " + e.what());
  }
}

Rational read_rational(const json& v, const std::string& field) {
  try {
    return parse_rational(literal_text(v, field));
  } catch (const std::invalid_argument& e) {
    throw InputError(field + ": " + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

}  // namespace

void validate(const AlmostAbelianSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxDimension - 1) {
    throw InputError("n: fiber dimension must lie in 1.." + std::to_string(kMaxDimension - 1));
  }
  std::set<std::string> declared;
  for (const auto& s : spec.symbols) {
    if (!valid_symbol_name(s)) throw InputError("symbols: invalid symbol name '" + s + "'");
    if (!declared.insert(s).second) throw InputError("symbols: duplicate symbol '" + s + "'");
  }
  if (spec.blocks.empty()) throw InputError("blocks: at least one block is required");
  int total = 0;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& block = spec.blocks[b];
    const std::string where = "blocks[" + std::to_string(b) + "]";
    if (block.size < 1) throw InputError(where + ".size: must be positive");
    check_symbols(block.eigen.re, declared, where + ".re");
    check_symbols(block.eigen.im_symbolic, declared, where + ".im_symbolic");
    if (!block.eigen.im_symbolic.constant().is_zero()) {
      throw InputError(where + ".im_symbolic: must not have a rational constant (use im_resonant)");
    }
    if (block.kind == BlockKind::Real) {
      if (!block.eigen.im_resonant.is_zero() || !block.eigen.im_symbolic.is_zero()) {
        throw InputError(where + ": real block with nonzero imaginary part");
      }
    } else if (block.eigen.im_resonant.is_zero() && block.eigen.im_symbolic.is_zero()) {
      throw InputError(where + ": complex block needs a nonzero imaginary part");
    }
    total += block.real_dimension();
  }
  if (total != spec.n) {
    throw InputError("dimension mismatch: blocks span " + std::to_string(total) + " coordinates but n = " +
                     std::to_string(spec.n));
  }
}

AlmostAbelianSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw InputError("document: expected a JSON object");
  reject_unknown(doc, {"n", "symbols", "lattice_label", "blocks", "unimodular"}, "document");
  AlmostAbelianSpec spec;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InputError("n: required integer field");
  spec.n = doc["n"].get<int>();
  if (doc.contains("symbols")) {
    if (!doc["symbols"].is_array()) throw InputError("symbols: expected a list of names");
    for (const auto& s : doc["symbols"]) {
      if (!s.is_string()) throw InputError("symbols: expected a list of names");
      spec.symbols.push_back(s.get<std::string>());
    }
  }
  if (doc.contains("lattice_label")) {
    if (!doc["lattice_label"].is_string()) throw InputError("lattice_label: expected a string");
    spec.lattice_label = doc["lattice_label"].get<std::string>();
  }
  if (doc.contains("unimodular")) {
    if (!doc["unimodular"].is_boolean()) throw InputError("unimodular: expected a boolean");
    spec.unimodular = doc["unimodular"].get<bool>();
  }
  if (!doc.contains("blocks") || !doc["blocks"].is_array()) throw InputError("blocks: required list field");
  std::size_t b = 0;
  for (const auto& entry : doc["blocks"]) {
    const std::string where = "blocks[" + std::to_string(b++) + "]";
    if (!entry.is_object()) throw InputError(where + ": expected an object");
    reject_unknown(entry, {"kind", "size", "re", "im_resonant", "im_symbolic"}, where);
    Block block;
    if (!entry.contains("kind") || !entry["kind"].is_string()) throw InputError(where + ".kind: required string");
    const auto kind = entry["kind"].get<std::string>();
    if (kind == "real") {
      block.kind = BlockKind::Real;
    } else if (kind == "complex") {
      block.kind = BlockKind::Complex;
    } else {
      throw InputError(where + ".kind: expected \"real\" or \"complex\", got \"" + kind + "\"");
    }
    if (!entry.contains("size") || !entry["size"].is_number_integer()) {
      throw InputError(where + ".size: required integer");
    }
    block.size = entry["size"].get<int>();
    if (entry.contains("re")) block.eigen.re = read_lc(entry["re"], where + ".re");
    if (entry.contains("im_resonant")) block.eigen.im_resonant = read_rational(entry["im_resonant"], where + ".im_resonant");
    if (entry.contains("im_symbolic")) block.eigen.im_symbolic = read_lc(entry["im_symbolic"], where + ".im_symbolic");
    spec.blocks.push_back(block);
  }
  validate(spec);
  return spec;
}

AlmostAbelianSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("document: not valid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

AlmostAbelianSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read input file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(std::string_view(buffer.str()));
}

json spec_to_json(const AlmostAbelianSpec& spec) {
  json doc;
  doc["n"] = spec.n;
  doc["symbols"] = spec.symbols;
  doc["lattice_label"] = spec.lattice_label;
  if (spec.unimodular) doc["unimodular"] = *spec.unimodular;
  json blocks = json::array();
  for (const auto& block : spec.blocks) {
    json entry;
    entry["kind"] = block.kind == BlockKind::Real ? "real" : "complex";
    entry["size"] = block.size;
    entry["re"] = block.eigen.re.to_string();
    entry["im_resonant"] = to_string(block.eigen.im_resonant);
    entry["im_symbolic"] = block.eigen.im_symbolic.to_string();
    blocks.push_back(entry);
  }
  doc["blocks"] = blocks;
  return doc;
}

std::string ComplexGenerator::label() const {
  switch (kind) {
    case Kind::Real:
      return "a" + std::to_string(x);
    case Kind::Holomorphic:
      return "(a" + std::to_string(x) + " - i a" + std::to_string(y) + ")";
    case Kind::Antiholomorphic:
      return "(a" + std::to_string(x) + " + i a" + std::to_string(y) + ")";
  }
  return {};
}

std::vector<ComplexGenerator> generator_weights(const AlmostAbelianSpec& spec) {
  std::vector<ComplexGenerator> out;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& block = spec.blocks[b];
    const int first = spec.first_index(b);
    if (block.kind == BlockKind::Real) {
      for (int j = 0; j < block.size; ++j) {
        out.push_back({ComplexGenerator::Kind::Real, first + j, 0, block.eigen});
      }
    } else {
      for (int j = 0; j < block.size; ++j) {
        const int x = first + 2 * j;
        out.push_back({ComplexGenerator::Kind::Holomorphic, x, x + 1, block.eigen});
        out.push_back({ComplexGenerator::Kind::Antiholomorphic, x, x + 1, block.eigen.conjugate()});
      }
    }
  }
  return out;
}

std::vector<ScalarLC> coordinate_real_parts(const AlmostAbelianSpec& spec) {
  std::vector<ScalarLC> out;
  for (const auto& block : spec.blocks) {
    for (int j = 0; j < block.real_dimension(); ++j) out.push_back(block.eigen.re);
  }
  return out;
}

LinearEndo<Rational> nilpotent_log(const AlmostAbelianSpec& spec) {
  LinearEndo<Rational> N(spec.n);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& block = spec.blocks[b];
    const int first = spec.first_index(b);
    const int stride = block.kind == BlockKind::Real ? 1 : 2;
    for (int j = 0; j + 1 < block.size; ++j) {
      for (int part = 0; part < stride; ++part) {
        const int source = first + stride * j + part;
        N.add_entry(source, source + stride, Rational(1));
      }
    }
  }
  return N;
}

bool satisfies_modification_hypothesis(const AlmostAbelianSpec& spec) {
  for (const auto& block : spec.blocks) {
    if (block.kind != BlockKind::Complex) continue;
    if (!block.eigen.im_symbolic.is_zero() || !is_integer(block.eigen.im_resonant)) return false;
  }
  return true;
}

LinearEndo<ScalarLC> modified_matrix(const AlmostAbelianSpec& spec) {
  if (!satisfies_modification_hypothesis(spec)) {
    throw HypothesisError(
        "modification hypothesis not satisfied: every complex block needs an integer im_resonant and zero "
        "im_symbolic");
  }
  LinearEndo<ScalarLC> M = nilpotent_log(spec).cast<ScalarLC>();
  const auto re = coordinate_real_parts(spec);
  for (int i = 1; i <= spec.n; ++i) M.add_entry(i, i, re[static_cast<std::size_t>(i - 1)]);
  return M;
}

ScalarLC modified_trace(const AlmostAbelianSpec& spec) {
  ScalarLC trace;
  for (const auto& re : coordinate_real_parts(spec)) trace += re;
  return trace;
}

}  // namespace almab
