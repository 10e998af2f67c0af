#include "almab/unipotent.hpp"

#include "almab/linalg.hpp"

namespace almab {

bool resonance_test(const Weight& w) {
  return w.re.is_zero() && w.im_symbolic.is_zero() && is_integer(w.im_resonant);
}

std::vector<Multivector<Rational>> echelon_basis(const std::vector<Multivector<Rational>>& xs, int n, int k) {
  ExteriorBasis basis(n, k);
  std::vector<Multivector<Rational>> out;
  if (xs.empty()) return out;
  Echelon<Rational> e = rref<Rational>(rows_of(xs, basis));
  for (Eigen::Index r = 0; r < e.rank(); ++r) out.push_back(from_dense<Rational>(e.rows.row(r).transpose(), basis));
  return out;
}

bool same_span(const std::vector<Multivector<Rational>>& a, const std::vector<Multivector<Rational>>& b, int n, int k) {
  return echelon_basis(a, n, k) == echelon_basis(b, n, k);
}

bool in_span(const Multivector<Rational>& x, const std::vector<Multivector<Rational>>& basis) {
  if (x.is_zero()) return true;
  if (basis.empty()) return false;
  ExteriorBasis eb(x.dim(), x.degree());
  Echelon<Rational> e = rref<Rational>(rows_of(basis, eb));
  return in_row_space<Rational>(to_dense(x, eb), e);
}

namespace {

/// Real and imaginary parts of a complexified multivector.
struct ComplexMultivector {
  Multivector<Rational> re;
  Multivector<Rational> im;
};

ComplexMultivector as_complex(const ComplexGenerator& g, int n) {
  ComplexMultivector out{Multivector<Rational>::monomial(n, {g.x}), Multivector<Rational>(n, 1)};
  if (g.kind == ComplexGenerator::Kind::Holomorphic) out.im = Multivector<Rational>::monomial(n, {g.y}, Rational(-1));
  if (g.kind == ComplexGenerator::Kind::Antiholomorphic) out.im = Multivector<Rational>::monomial(n, {g.y});
  return out;
}

ComplexMultivector complex_wedge(const ComplexMultivector& a, const ComplexMultivector& b) {
  return {wedge(a.re, b.re) - wedge(a.im, b.im), wedge(a.re, b.im) + wedge(a.im, b.re)};
}

template <class Visit>
void for_each_resonant_monomial(const AlmostAbelianSpec& spec, int k, Visit&& visit) {
  const auto gens = generator_weights(spec);
  const int m = static_cast<int>(gens.size());
  for (Monomial subset : monomials_of_degree(m, k)) {
    Weight total;
    std::vector<int> members = monomial_indices(subset);
    for (int i : members) total += gens[static_cast<std::size_t>(i - 1)].weight;
    if (!resonance_test(total)) continue;
    visit(gens, members);
  }
}

}  // namespace

int resonant_monomial_count(const AlmostAbelianSpec& spec, int k) {
  if (k < 0 || k > spec.n) return 0;
  int count = 0;
  for_each_resonant_monomial(spec, k, [&count](const auto&, const auto&) { ++count; });
  return count;
}

std::vector<Multivector<Rational>> compute_U(const AlmostAbelianSpec& spec, int k) {
  if (k < 0 || k > spec.n) return {};
  const int n = spec.n;
  std::vector<Multivector<Rational>> parts;
  for_each_resonant_monomial(spec, k, [&](const std::vector<ComplexGenerator>& gens, const std::vector<int>& members) {
    ComplexMultivector acc{Multivector<Rational>::unit(n), Multivector<Rational>(n, 0)};
    for (int i : members) acc = complex_wedge(acc, as_complex(gens[static_cast<std::size_t>(i - 1)], n));
    if (!acc.re.is_zero()) parts.push_back(acc.re);
    if (!acc.im.is_zero()) parts.push_back(acc.im);
  });
  return echelon_basis(parts, n, k);
}

UBasis compute_U(const AlmostAbelianSpec& spec) {
  UBasis u;
  u.n = spec.n;
  for (int k = 0; k <= spec.n; ++k) u.degrees.push_back(compute_U(spec, k));
  return u;
}

bool oracle_available(const AlmostAbelianSpec& spec) {
  for (const auto& block : spec.blocks) {
    if (!block.eigen.re.is_zero() || !block.eigen.im_symbolic.is_zero()) return false;
    if (!is_integer(block.eigen.im_resonant * 4)) return false;
  }
  return true;
}

LinearEndo<Rational> rational_monodromy(const AlmostAbelianSpec& spec) {
  if (!oracle_available(spec)) throw HypothesisError("oracle unavailable for this spectrum");
  const int n = spec.n;
  const LinearEndo<Rational> N = nilpotent_log(spec);

  // exp(N) by the finite series
  LinearEndo<Rational> expN(n);
  for (int i = 1; i <= n; ++i) {
    Multivector<Rational> term = Multivector<Rational>::monomial(n, {i});
    Multivector<Rational> sum = term;
    for (int j = 1; !term.is_zero(); ++j) {
      term = derivation_apply(N, term);
      term *= Rational(1, j);
      sum += term;
    }
    expN.set_image(i, sum);
  }

  // rotation by 2*pi*q on each complex cell: a^x -> c a^x + s a^y, a^y -> -s a^x + c a^y
  LinearEndo<Rational> rotation(n);
  for (int i = 1; i <= n; ++i) rotation.add_entry(i, i, Rational(1));
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& block = spec.blocks[b];
    if (block.kind != BlockKind::Complex) continue;
    Rational quarter_turns = block.eigen.im_resonant * 4;
    Integer turns = boost::multiprecision::numerator(quarter_turns) % 4;
    if (turns < 0) turns += 4;
    const int t = static_cast<int>(turns);
    const int c = t == 0 ? 1 : (t == 2 ? -1 : 0);
    const int s = t == 1 ? 1 : (t == 3 ? -1 : 0);
    const int first = spec.first_index(b);
    for (int j = 0; j < block.size; ++j) {
      const int x = first + 2 * j;
      const int y = x + 1;
      Multivector<Rational> ix(n, 1);
      ix.add_term(Monomial{1} << (x - 1), Rational(c));
      ix.add_term(Monomial{1} << (y - 1), Rational(s));
      Multivector<Rational> iy(n, 1);
      iy.add_term(Monomial{1} << (x - 1), Rational(-s));
      iy.add_term(Monomial{1} << (y - 1), Rational(c));
      rotation.set_image(x, ix);
      rotation.set_image(y, iy);
    }
  }

  LinearEndo<Rational> phi(n);
  for (int i = 1; i <= n; ++i) {
    Multivector<Rational> image(n, 1);
    for (const auto& [m, c] : expN.image(i).terms()) {
      Multivector<Rational> r = rotation.image(monomial_indices(m).front());
      r *= c;
      image += r;
    }
    phi.set_image(i, image);
  }
  return phi;
}

std::vector<Multivector<Rational>> oracle_U(const AlmostAbelianSpec& spec, int k) {
  if (k < 0 || k > spec.n) return {};
  const LinearEndo<Rational> phi = rational_monodromy(spec);
  ExteriorBasis basis(spec.n, k);
  DenseMatrix<Rational> shifted =
      matrix_of<Rational>(basis, [&phi](const Multivector<Rational>& x) { return exterior_power_apply(phi, x); });
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= 1;

  // ker (phi - 1)^j grows until it stabilizes
  DenseMatrix<Rational> power = shifted;
  DenseMatrix<Rational> ker = kernel<Rational>(power);
  for (int j = 2; j <= basis.size() + 1; ++j) {
    power = power * shifted;
    DenseMatrix<Rational> next = kernel<Rational>(power);
    if (next.rows() == ker.rows()) break;
    ker = std::move(next);
  }
  std::vector<Multivector<Rational>> out;
  for (Eigen::Index r = 0; r < ker.rows(); ++r) out.push_back(from_dense<Rational>(ker.row(r).transpose(), basis));
  return out;
}

}  // namespace almab
