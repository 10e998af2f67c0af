// Shared test helpers: fixture paths, random instances and independent
// oracles. The oracles deliberately avoid the library's exterior algebra and
// elimination code; they work on raw bitmasks and plain vectors.
#pragma once

#include "almab/spectral.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using almab::Rational;

inline std::string fixture(const std::string& name) { return std::string(ALMAB_FIXTURE_DIR) + "/" + name; }

inline almab::AlmostAbelianSpec load_fixture(const std::string& name) { return almab::load_spec(fixture(name)); }

struct RandomSpecOptions {
  int min_n = 1;
  int max_n = 5;
  bool zero_real_parts = false;
  /// Complex blocks resonate with an integer multiple of 2*pi/t.
  bool integer_resonance = true;
  /// Append a compensating real block so the trace vanishes.
  bool unimodular = false;
  bool symbols = true;
};

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

inline almab::AlmostAbelianSpec random_spec(std::mt19937& rng, const RandomSpecOptions& o = {}) {
  using almab::Block;
  using almab::BlockKind;
  using almab::ScalarLC;
  almab::AlmostAbelianSpec spec;
  spec.n = uniform(rng, o.min_n, o.max_n);
  if (o.symbols && !o.zero_real_parts) spec.symbols = {"b", "c"};
  spec.lattice_label = "random";

  const std::vector<std::string> real_pool = o.symbols ? std::vector<std::string>{"0", "0", "0", "1", "-1", "1/2",
                                                                                   "b", "-b", "c", "b - c", "2*b"}
                                                       : std::vector<std::string>{"0", "0", "1", "-1", "1/2", "-2"};
  const std::vector<std::string> resonant_pool{"1", "2", "-1", "3"};
  const std::vector<std::string> general_pool{"1", "1/2", "1/4", "2", "3/4", "1/3"};

  int budget = o.unimodular ? spec.n - 1 : spec.n;
  ScalarLC trace;
  while (budget > 0) {
    Block block;
    const bool complex = budget >= 2 && uniform(rng, 0, 9) < 4;
    block.kind = complex ? BlockKind::Complex : BlockKind::Real;
    block.size = complex ? uniform(rng, 1, std::min(2, budget / 2)) : uniform(rng, 1, std::min(3, budget));
    block.eigen.re = o.zero_real_parts ? ScalarLC() : ScalarLC::parse(pick(rng, real_pool));
    if (complex) {
      block.eigen.im_resonant = almab::parse_rational(pick(rng, o.integer_resonance ? resonant_pool : general_pool));
    }
    trace += block.eigen.re * Rational(block.real_dimension());
    budget -= block.real_dimension();
    spec.blocks.push_back(block);
  }
  if (o.unimodular) {
    Block last;
    last.eigen.re = -trace;
    spec.blocks.push_back(last);
    spec.unimodular = true;
  }
  almab::validate(spec);
  return spec;
}

// ---------------------------------------------------------------------------
// Raw exterior algebra on bitmasks (bit i-1 <-> alpha^i).

using Form = std::map<std::uint32_t, Rational>;

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

/// Sign of concatenating a then b into increasing order (0 if they overlap).
inline int concat_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < 32; ++i) {
    if (!(b >> i & 1u)) continue;
    // elements of a greater than i must pass over this element of b
    inversions += popcount(a >> (i + 1));
  }
  return inversions % 2 ? -1 : 1;
}

inline void add_to(Form& f, std::uint32_t m, const Rational& c) {
  if (c.is_zero()) return;
  Rational& slot = f[m];
  slot += c;
  if (slot.is_zero()) f.erase(m);
}

inline Form wedge(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      const int s = concat_sign(ma, mb);
      if (s != 0) add_to(out, ma | mb, s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  }
  return out;
}

inline Form mono(std::initializer_list<int> indices) {
  Form f{{0u, Rational(1)}};
  for (int i : indices) f = wedge(f, Form{{1u << (i - 1), Rational(1)}});
  return f;
}

inline std::vector<std::uint32_t> masks_of_degree(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (popcount(m) == k) out.push_back(m);
  }
  return out;
}

/// Rank over Q by plain Gaussian elimination.
inline int rank(std::vector<std::vector<Rational>> rows) {
  int r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[static_cast<std::size_t>(r)]);
    const auto& pivot = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c] / pivot[c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * pivot[j];
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force Chevalley-Eilenberg cohomology of the modification. Symbols are
// replaced by large rationals so that no accidental cancellation can occur.

inline Rational symbol_value(const std::string& s) {
  if (s == "b") return Rational(100003) / 7;
  if (s == "c") return Rational(1000033) / 13;
  return Rational(7000001) / 3;
}

/// ad of the base generator on the fiber, with rotations removed:
/// column j holds [X_{n+1}, X_j].
inline std::vector<std::vector<Rational>> modified_ad(const almab::AlmostAbelianSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n);
  std::vector<std::vector<Rational>> ad(n, std::vector<Rational>(n, Rational(0)));
  std::size_t start = 0;
  for (const auto& block : spec.blocks) {
    std::map<std::string, Rational> values;
    for (const auto& [s, c] : block.eigen.re.symbol_terms()) values[s] = symbol_value(s);
    const Rational re = block.eigen.re.evaluate(values);
    const auto dim = static_cast<std::size_t>(block.real_dimension());
    const std::size_t stride = block.kind == almab::BlockKind::Real ? 1 : 2;
    for (std::size_t i = 0; i < dim; ++i) ad[start + i][start + i] = re;
    // X_{j+stride} -> X_j
    for (std::size_t j = stride; j < dim; ++j) ad[start + j - stride][start + j] = Rational(1);
    start += dim;
  }
  return ad;
}

/// Betti numbers of the semidirect product R x_ad R^n by full rank computation.
inline std::vector<int> brute_force_betti(const almab::AlmostAbelianSpec& spec) {
  const int n = spec.n;
  const int total = n + 1;
  const auto ad = modified_ad(spec);
  // d alpha^i = -sum_j alpha^i([X_j, X_{n+1}]) alpha^j ^ alpha^{n+1} = sum_j ad[i][j] alpha^j ^ alpha^{n+1}
  std::vector<Form> d1(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& c = ad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!c.is_zero()) add_to(d1[static_cast<std::size_t>(i)], (1u << j) | (1u << n), c);
    }
  }
  auto d_of = [&](std::uint32_t m) {
    Form out;
    std::uint32_t before = 0;
    for (int i = 0; i < total; ++i) {
      if (!(m >> i & 1u)) continue;
      const std::uint32_t bit = 1u << i;
      if (i < n) {
        const std::uint32_t after = m & ~(before | bit);
        const Form left{{before, popcount(before) % 2 ? Rational(-1) : Rational(1)}};
        const Form term = wedge(wedge(left, d1[static_cast<std::size_t>(i)]), Form{{after, Rational(1)}});
        for (const auto& [mm, c] : term) add_to(out, mm, c);
      }
      before |= bit;
    }
    return out;
  };
  std::vector<int> ranks(static_cast<std::size_t>(total + 2), 0);
  for (int k = 0; k <= total; ++k) {
    const auto from = masks_of_degree(total, k);
    const auto to = masks_of_degree(total, k + 1);
    std::map<std::uint32_t, std::size_t> index;
    for (std::size_t i = 0; i < to.size(); ++i) index[to[i]] = i;
    std::vector<std::vector<Rational>> rows;
    for (auto m : from) {
      std::vector<Rational> row(to.size(), Rational(0));
      for (const auto& [mm, c] : d_of(m)) row[index.at(mm)] = c;
      rows.push_back(row);
    }
    ranks[static_cast<std::size_t>(k)] = to.empty() ? 0 : rank(rows);
  }
  std::vector<int> betti;
  for (int k = 0; k <= total; ++k) {
    const int dim = static_cast<int>(masks_of_degree(total, k).size());
    const int below = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    betti.push_back(dim - ranks[static_cast<std::size_t>(k)] - below);
  }
  return betti;
}

}  // namespace testing_support

namespace almab {
// readable gtest failure messages
inline void PrintTo(const ScalarLC& x, std::ostream* os) { *os << x.to_string(); }
template <class S>
void PrintTo(const Multivector<S>& x, std::ostream* os) {
  *os << x.to_string();
}
}  // namespace almab
