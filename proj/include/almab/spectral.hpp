// Problem instance: ad of the acting generator in real block normal form.
#pragma once

#include "almab/exterior.hpp"
#include "almab/scalar.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace almab {

/// Malformed or inconsistent input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation does not hold for this spec.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Eigenvalue datum of a (complexified) dual generator. The imaginary part is
 * split into a rational multiple of 2*pi/t (im_resonant) and a symbolic
 * remainder, so exp(lambda t) = 1 reduces to exact tests.
 */
struct Weight {
  ScalarLC re;
  Rational im_resonant{0};
  ScalarLC im_symbolic;

  Weight conjugate() const { return Weight{re, -im_resonant, -im_symbolic}; }

  Weight& operator+=(const Weight& other) {
    re += other.re;
    im_resonant += other.im_resonant;
    im_symbolic += other.im_symbolic;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend bool operator==(const Weight& a, const Weight& b) = default;

  std::string to_string() const;
};

enum class BlockKind { Real, Complex };

/// Jordan block of ad. A complex block of size s stands for s complex
/// Jordan cells and occupies 2s real coordinates ordered x_1, y_1, ..., x_s, y_s.
struct Block {
  BlockKind kind = BlockKind::Real;
  int size = 1;
  Weight eigen;

  int real_dimension() const { return kind == BlockKind::Real ? size : 2 * size; }
  friend bool operator==(const Block& a, const Block& b) = default;
};

struct AlmostAbelianSpec {
  int n = 0;
  std::vector<Block> blocks;
  std::string lattice_label;
  std::vector<std::string> symbols;
  /// User assertion that ad has trace zero; checked, never assumed.
  std::optional<bool> unimodular;

  /// 1-based index of the first real coordinate of block b.
  int first_index(std::size_t b) const;

  friend bool operator==(const AlmostAbelianSpec& a, const AlmostAbelianSpec& b) = default;
};

/// Validates structural invariants; throws InputError with the offending field.
void validate(const AlmostAbelianSpec& spec);

AlmostAbelianSpec parse_spec(const nlohmann::json& doc);
AlmostAbelianSpec parse_spec(std::string_view text);
AlmostAbelianSpec load_spec(const std::string& path);
nlohmann::json spec_to_json(const AlmostAbelianSpec& spec);

/// Complexified dual generator: alpha^x for real blocks, and
/// z = alpha^x - i alpha^y (weight a + i w), zbar = alpha^x + i alpha^y
/// (conjugate weight) for each complex cell.
struct ComplexGenerator {
  enum class Kind { Real, Holomorphic, Antiholomorphic };
  Kind kind = Kind::Real;
  int x = 0;  ///< real coordinate (1-based)
  int y = 0;  ///< partner coordinate for complex cells, 0 otherwise
  Weight weight;
  std::string label() const;
};

std::vector<ComplexGenerator> generator_weights(const AlmostAbelianSpec& spec);

/// Real part of the eigenvalue attached to each real coordinate (1-based -> index i-1).
std::vector<ScalarLC> coordinate_real_parts(const AlmostAbelianSpec& spec);

/// Transposed nilpotent part N^t on the dual basis (shift alpha^j -> alpha^{j+1}
/// inside each Jordan chain, paired for complex blocks).
LinearEndo<Rational> nilpotent_log(const AlmostAbelianSpec& spec);

/// Transposed completely solvable modification: real parts on the diagonal
/// plus N^t. Requires every complex block to be an integer resonance.
LinearEndo<ScalarLC> modified_matrix(const AlmostAbelianSpec& spec);

bool satisfies_modification_hypothesis(const AlmostAbelianSpec& spec);

ScalarLC modified_trace(const AlmostAbelianSpec& spec);

}  // namespace almab
