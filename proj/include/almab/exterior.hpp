// Sparse exterior algebra on the dual basis alpha^1..alpha^n.
//
// A monomial alpha^{i_1 ... i_k} (i_1 < ... < i_k) is stored as a bitmask with
// bit (i-1) set for alpha^i; the sign of any reordering is folded into the
// coefficient at construction.
#pragma once

#include "almab/scalar.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace almab {

using Monomial = std::uint32_t;
inline constexpr int kMaxDimension = 31;

/// Degree first, then lexicographic on the sorted index lists.
struct MonomialLess {
  bool operator()(Monomial a, Monomial b) const {
    int da = std::popcount(a);
    int db = std::popcount(b);
    if (da != db) return da < db;
    Monomial diff = a ^ b;
    if (diff == 0) return false;
    return (a & (diff & (~diff + 1))) != 0;
  }
};

/// 1-based indices of a monomial, ascending.
inline std::vector<int> monomial_indices(Monomial m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline std::string monomial_label(Monomial m) {
  if (m == 0) return "1";
  std::string s = "a";
  bool first = true;
  for (int i : monomial_indices(m)) {
    if (!first) s += ".";
    s += std::to_string(i);
    first = false;
  }
  return s;
}

/// Sign of the shuffle a, b -> sorted(a | b); 0 when a and b overlap.
inline int wedge_sign(Monomial a, Monomial b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (Monomial rest = b; rest != 0; rest &= rest - 1) {
    Monomial bit = rest & (~rest + 1);
    // elements of a sitting above this element of b must be crossed
    inversions += std::popcount(a & ~((bit << 1) - 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// All degree-k monomials in dimension n, lexicographic order.
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
  std::vector<Monomial> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Monomial m = 0;
    for (int i : idx) m |= Monomial{1} << i;
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

/// Lexicographic basis of Lambda^k(R^n) with index lookup.
class ExteriorBasis {
 public:
  ExteriorBasis(int n, int k) : n_(n), k_(k), monomials_(monomials_of_degree(n, k)) {
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], static_cast<int>(i));
  }
  int dim() const { return n_; }
  int degree() const { return k_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  Monomial operator[](int i) const { return monomials_[static_cast<std::size_t>(i)]; }
  int index(Monomial m) const { return index_.at(m); }
  const std::vector<Monomial>& monomials() const { return monomials_; }

 private:
  int n_;
  int k_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, int> index_;
};

template <class Scalar>
class Multivector {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialLess>;

  Multivector() = default;
  Multivector(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDimension) throw std::invalid_argument("exterior algebra dimension out of range");
    if (degree < 0) throw std::invalid_argument("negative degree");
  }

  static Multivector unit(int dim, Scalar c = Scalar(1)) {
    Multivector x(dim, 0);
    x.add_term(0, std::move(c));
    return x;
  }

  /// c * alpha^{i_1} ^ ... ^ alpha^{i_k} for arbitrary (1-based) index order.
  static Multivector monomial(int dim, std::initializer_list<int> indices, Scalar c = Scalar(1)) {
    return monomial(dim, std::vector<int>(indices), std::move(c));
  }
  static Multivector monomial(int dim, const std::vector<int>& indices, Scalar c = Scalar(1)) {
    Multivector x(dim, static_cast<int>(indices.size()));
    Monomial acc = 0;
    int sign = 1;
    for (int i : indices) {
      if (i < 1 || i > dim) throw std::out_of_range("generator index out of range");
      Monomial bit = Monomial{1} << (i - 1);
      int s = wedge_sign(acc, bit);
      if (s == 0) return x;
      sign *= s;
      acc |= bit;
    }
    if (sign < 0) c = -c;
    x.add_term(acc, std::move(c));
    return x;
  }

  static Multivector from_mask(int dim, Monomial m, Scalar c = Scalar(1)) {
    Multivector x(dim, std::popcount(m));
    x.add_term(m, std::move(c));
    return x;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(Monomial m, const Scalar& c) {
    if (std::popcount(m) != degree_) throw std::invalid_argument("monomial degree does not match multivector degree");
    if (dim_ < 32 && (m >> dim_) != 0) throw std::out_of_range("monomial outside the exterior algebra");
    if (almab::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (almab::is_zero(it->second)) terms_.erase(it);
    }
  }

  Multivector& operator+=(const Multivector& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Multivector& operator*=(const Scalar& s) {
    if (almab::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& entry : terms_) entry.second = entry.second * s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= Scalar(-1); }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }
  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Same element in a higher-dimensional exterior algebra (indices kept).
  Multivector embed(int dim) const {
    if (dim < dim_) throw std::invalid_argument("cannot embed into a smaller exterior algebra");
    Multivector out(dim, degree_);
    out.terms_ = terms_;
    return out;
  }

  template <class To>
  Multivector<To> cast() const {
    Multivector<To> out(dim_, degree_);
    for (const auto& [m, c] : terms_) out.add_term(m, To(c));
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string coeff = almab::to_string(c);
      bool simple = coeff.find_first_of("+ ", 1) == std::string::npos;
      if (!s.empty()) s += " + ";
      if (coeff == "1") {
        s += monomial_label(m);
      } else if (coeff == "-1") {
        s += "-" + monomial_label(m);
      } else {
        s += (simple ? coeff : "(" + coeff + ")") + "*" + monomial_label(m);
      }
    }
    return s;
  }

 private:
  void check_compatible(const Multivector& other) const {
    if (other.dim_ != dim_ || other.degree_ != degree_) {
      throw std::invalid_argument("adding multivectors of different dimension or degree");
    }
  }

  int dim_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

/// Graded-commutative product; the zero multivector when degrees exceed n.
template <class Scalar>
Multivector<Scalar> wedge(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge of multivectors in different dimensions");
  Multivector<Scalar> out(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      out.add_term(ma | mb, s > 0 ? c : Scalar(-c));
    }
  }
  return out;
}

template <class Scalar>
Multivector<Scalar> power(const Multivector<Scalar>& a, int exponent) {
  Multivector<Scalar> out = Multivector<Scalar>::unit(a.dim());
  for (int i = 0; i < exponent; ++i) out = wedge(out, a);
  return out;
}

/// Coefficient of alpha^{1..n}; x must have top degree.
template <class Scalar>
Scalar top_coefficient(const Multivector<Scalar>& x) {
  if (x.degree() != x.dim()) {
    throw std::invalid_argument("top_coefficient needs a multivector of degree " + std::to_string(x.dim()) +
                                ", got degree " + std::to_string(x.degree()));
  }
  Monomial top = x.dim() == 32 ? ~Monomial{0} : ((Monomial{1} << x.dim()) - 1);
  return x.coefficient(top);
}

/// Linear map on Lambda^1 given by the image of each dual generator.
template <class Scalar>
class LinearEndo {
 public:
  LinearEndo() = default;
  explicit LinearEndo(int n) : n_(n) {
    images_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images_.emplace_back(n, 1);
  }

  static LinearEndo zero(int n) { return LinearEndo(n); }

  int dim() const { return n_; }
  /// Image of alpha^i, 1-based.
  const Multivector<Scalar>& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  void set_image(int i, Multivector<Scalar> v) {
    if (v.degree() != 1 || v.dim() != n_) throw std::invalid_argument("endomorphism images must have degree 1");
    images_.at(static_cast<std::size_t>(i - 1)) = std::move(v);
  }
  /// Adds c * alpha^target to the image of alpha^source.
  void add_entry(int source, int target, const Scalar& c) {
    images_.at(static_cast<std::size_t>(source - 1)).add_term(Monomial{1} << (target - 1), c);
  }
  Scalar entry(int source, int target) const { return image(source).coefficient(Monomial{1} << (target - 1)); }

  bool is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& v) { return v.is_zero(); });
  }

  template <class To>
  LinearEndo<To> cast() const {
    LinearEndo<To> out(n_);
    for (int i = 1; i <= n_; ++i) out.set_image(i, image(i).template cast<To>());
    return out;
  }

  friend bool operator==(const LinearEndo& a, const LinearEndo& b) { return a.n_ == b.n_ && a.images_ == b.images_; }

 private:
  int n_ = 0;
  std::vector<Multivector<Scalar>> images_;
};

/// Leibniz extension of a degree-0 action:
/// L(a^{i_1} ... a^{i_k}) = sum_p a^{i_1} ... L(a^{i_p}) ... a^{i_k}.
template <class Scalar>
Multivector<Scalar> derivation_apply(const LinearEndo<Scalar>& L, const Multivector<Scalar>& x) {
  if (L.dim() != x.dim()) throw std::invalid_argument("derivation and multivector dimensions differ");
  Multivector<Scalar> out(x.dim(), x.degree());
  for (const auto& [m, c] : x.terms()) {
    for (int i : monomial_indices(m)) {
      Monomial bit = Monomial{1} << (i - 1);
      Monomial rest = m & ~bit;
      // position of alpha^i inside the monomial: move it to the front, replace, move back
      int front_sign = (std::popcount(m & (bit - 1)) & 1) ? -1 : 1;
      for (const auto& [target, lc] : L.image(i).terms()) {
        int s = wedge_sign(target, rest);
        if (s == 0) continue;
        Scalar term = c * lc;
        out.add_term(target | rest, s * front_sign > 0 ? term : Scalar(-term));
      }
    }
  }
  return out;
}

/// Functorial extension: a^{i_1} ... a^{i_k} -> L(a^{i_1}) ^ ... ^ L(a^{i_k}).
template <class Scalar>
Multivector<Scalar> exterior_power_apply(const LinearEndo<Scalar>& L, const Multivector<Scalar>& x) {
  Multivector<Scalar> out(x.dim(), x.degree());
  for (const auto& [m, c] : x.terms()) {
    Multivector<Scalar> acc = Multivector<Scalar>::unit(x.dim(), c);
    for (int i : monomial_indices(m)) acc = wedge(acc, L.image(i));
    out += acc;
  }
  return out;
}

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
DenseVector<Scalar> to_dense(const Multivector<Scalar>& x, const ExteriorBasis& basis) {
  DenseVector<Scalar> v = DenseVector<Scalar>::Constant(basis.size(), Scalar(0));
  for (const auto& [m, c] : x.terms()) v(basis.index(m)) = c;
  return v;
}

template <class Scalar, class Derived>
Multivector<Scalar> from_dense(const Eigen::MatrixBase<Derived>& v, const ExteriorBasis& basis) {
  Multivector<Scalar> x(basis.dim(), basis.degree());
  for (Eigen::Index i = 0; i < v.size(); ++i) x.add_term(basis[static_cast<int>(i)], v(i));
  return x;
}

/// Rows are the coordinate vectors of the given multivectors.
template <class Scalar>
DenseMatrix<Scalar> rows_of(const std::vector<Multivector<Scalar>>& xs, const ExteriorBasis& basis) {
  DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Constant(static_cast<Eigen::Index>(xs.size()), basis.size(), Scalar(0));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    for (const auto& [mono, c] : xs[r].terms()) m(static_cast<Eigen::Index>(r), basis.index(mono)) = c;
  }
  return m;
}

/// Matrix of a linear map on Lambda^k: column j is the image of basis[j].
template <class Scalar, class Map>
DenseMatrix<Scalar> matrix_of(const ExteriorBasis& basis, Map&& map) {
  DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Constant(basis.size(), basis.size(), Scalar(0));
  for (int j = 0; j < basis.size(); ++j) {
    Multivector<Scalar> image = map(Multivector<Scalar>::from_mask(basis.dim(), basis[j]));
    for (const auto& [mono, c] : image.terms()) m(basis.index(mono), j) = c;
  }
  return m;
}

}  // namespace almab
