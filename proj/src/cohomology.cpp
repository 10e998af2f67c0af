#include "almab/cohomology.hpp"

#include "almab/linalg.hpp"

#include <bit>

namespace almab {

namespace {

Multivector<ScalarLC> differential_of_generator(const LinearEndo<ScalarLC>& M, int i, int total_dim) {
  const Multivector<ScalarLC> base = Multivector<ScalarLC>::monomial(total_dim, {total_dim});
  Multivector<ScalarLC> image = M.image(i).embed(total_dim);
  image *= ScalarLC(kCeSign);
  return wedge(image, base);
}

ScalarLC monomial_weight(Monomial m, const std::vector<ScalarLC>& re) {
  ScalarLC w;
  for (int i : monomial_indices(m)) w += re[static_cast<std::size_t>(i - 1)];
  return w;
}

/// Zero-weight monomials of Lambda^k; on them A_k restricts to N_k.
std::vector<Monomial> zero_weight_monomials(int n, int k, const std::vector<ScalarLC>& re) {
  std::vector<Monomial> out;
  for (Monomial m : monomials_of_degree(n, k)) {
    if (monomial_weight(m, re).is_zero()) out.push_back(m);
  }
  return out;
}

/// Matrix of N_k on the given monomials (column j = image of monomials[j]).
DenseMatrix<Rational> restricted_matrix(const LinearEndo<Rational>& N, const std::vector<Monomial>& monomials, int n) {
  std::map<Monomial, Eigen::Index> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = static_cast<Eigen::Index>(i);
  const auto size = static_cast<Eigen::Index>(monomials.size());
  DenseMatrix<Rational> m = DenseMatrix<Rational>::Constant(size, size, Rational(0));
  for (Eigen::Index j = 0; j < size; ++j) {
    auto image = derivation_apply(N, Multivector<Rational>::from_mask(n, monomials[static_cast<std::size_t>(j)]));
    for (const auto& [mono, c] : image.terms()) {
      auto it = index.find(mono);
      if (it == index.end()) throw InvariantViolation("nilpotent part leaves its weight space");
      m(it->second, j) = c;
    }
  }
  return m;
}

}  // namespace

Multivector<ScalarLC> ce_differential(const AlmostAbelianSpec& spec, const Multivector<ScalarLC>& form) {
  const int total = spec.n + 1;
  if (form.dim() != total) throw std::invalid_argument("CE cochains live on R^{n+1}");
  const LinearEndo<ScalarLC> M = modified_matrix(spec);
  std::vector<Multivector<ScalarLC>> d_gen;
  for (int i = 1; i <= spec.n; ++i) d_gen.push_back(differential_of_generator(M, i, total));

  Multivector<ScalarLC> out(total, form.degree() + 1);
  for (const auto& [m, c] : form.terms()) {
    for (int i : monomial_indices(m)) {
      if (i == total) continue;
      Monomial bit = Monomial{1} << (i - 1);
      Multivector<ScalarLC> rest = Multivector<ScalarLC>::from_mask(total, m & ~bit, c);
      if (std::popcount(m & (bit - 1)) & 1) rest *= ScalarLC(-1);
      out += wedge(d_gen[static_cast<std::size_t>(i - 1)], rest);
    }
  }
  return out;
}

CeCochain split_cochain(const Multivector<ScalarLC>& form) {
  const int n = form.dim() - 1;
  const Monomial base = Monomial{1} << n;
  CeCochain out{Multivector<ScalarLC>(n, form.degree()),
                Multivector<ScalarLC>(n, form.degree() > 0 ? form.degree() - 1 : 0)};
  for (const auto& [m, c] : form.terms()) {
    if (m & base) {
      // y ^ alpha^{n+1}: alpha^{n+1} is the last index, so no sign
      out.y.add_term(m & ~base, c);
    } else {
      out.x.add_term(m, c);
    }
  }
  return out;
}

Multivector<ScalarLC> join_cochain(const CeCochain& cochain) {
  const int total = cochain.x.dim() + 1;
  Multivector<ScalarLC> out = cochain.x.embed(total);
  if (!cochain.y.is_zero()) {
    out += wedge(cochain.y.embed(total), Multivector<ScalarLC>::monomial(total, {total}));
  }
  return out;
}

CeCochain ce_differential(const AlmostAbelianSpec& spec, const CeCochain& cochain) {
  return split_cochain(ce_differential(spec, join_cochain(cochain)));
}

std::vector<Multivector<Rational>> CohomologyDegree::representatives() const {
  std::vector<Multivector<Rational>> out;
  for (const auto& x : kernel_part) out.push_back(x.embed(x.dim() + 1));
  for (const auto& y : cokernel_part) {
    const int total = y.dim() + 1;
    out.push_back(wedge(y.embed(total), Multivector<Rational>::monomial(total, {total})));
  }
  return out;
}

CohomologyDegree cohomology(const AlmostAbelianSpec& spec, int k) {
  if (!satisfies_modification_hypothesis(spec)) {
    throw HypothesisError("modification hypothesis not satisfied: cohomology of the modification is unavailable");
  }
  const int n = spec.n;
  const auto re = coordinate_real_parts(spec);
  const LinearEndo<Rational> N = nilpotent_log(spec);
  CohomologyDegree out;
  out.degree = k;

  // ker A_k: only the zero-weight space contributes
  if (k >= 0 && k <= n) {
    const auto zero = zero_weight_monomials(n, k, re);
    if (!zero.empty()) {
      DenseMatrix<Rational> ker = kernel<Rational>(restricted_matrix(N, zero, n));
      std::vector<Multivector<Rational>> vectors;
      for (Eigen::Index r = 0; r < ker.rows(); ++r) {
        Multivector<Rational> v(n, k);
        for (Eigen::Index j = 0; j < ker.cols(); ++j) v.add_term(zero[static_cast<std::size_t>(j)], ker(r, j));
        vectors.push_back(v);
      }
      ExteriorBasis basis(n, k);
      if (!vectors.empty()) {
        Echelon<Rational> e = rref<Rational>(rows_of(vectors, basis));
        for (Eigen::Index r = 0; r < e.rank(); ++r) {
          out.kernel_part.push_back(from_dense<Rational>(e.rows.row(r).transpose(), basis));
        }
      }
    }
  }

  // coker A_{k-1}: nonzero weight spaces are fully hit, so only zero-weight
  // monomials that are not pivots of im N_{k-1} survive
  const int j = k - 1;
  if (j >= 0 && j <= n) {
    const auto zero = zero_weight_monomials(n, j, re);
    if (!zero.empty()) {
      DenseMatrix<Rational> image_rows = restricted_matrix(N, zero, n).transpose();
      Echelon<Rational> e = rref<Rational>(image_rows);
      std::vector<bool> pivot(zero.size(), false);
      for (auto p : e.pivots) pivot[static_cast<std::size_t>(p)] = true;
      for (std::size_t i = 0; i < zero.size(); ++i) {
        if (!pivot[i]) out.cokernel_part.push_back(Multivector<Rational>::from_mask(n, zero[i]));
      }
    }
  }
  return out;
}

std::vector<CohomologyDegree> cohomology(const AlmostAbelianSpec& spec) {
  std::vector<CohomologyDegree> out;
  for (int k = 0; k <= spec.n + 1; ++k) out.push_back(cohomology(spec, k));
  return out;
}

std::vector<int> betti_numbers(const AlmostAbelianSpec& spec) {
  std::vector<int> out;
  for (const auto& h : cohomology(spec)) out.push_back(h.betti());
  return out;
}

}  // namespace almab
