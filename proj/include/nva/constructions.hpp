#ifndef NVA_CONSTRUCTIONS_HPP
#define NVA_CONSTRUCTIONS_HPP

/* The algebra zoo: matrix and Jordan algebras, bilinear-form and quadratic
 * algebras, Cayley-Dickson doubling with involution/trace/norm, Poisson-
 * bracket Kokoris algebras, truncated polynomial rings, free nilpotent
 * algebras, and scalar extension.
 *
 * Constructors validate what they advertise: quadratic data must carry an
 * associative form, Poisson brackets must respect the truncation ideal and
 * satisfy Leibniz on basis triples, and Cayley-Dickson outputs check their
 * own quadratic equation on the basis.  Failures throw with a concrete
 * witness in the message.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nva/algebra.hpp"
#include "nva/poly.hpp"
#include "nva/scalar.hpp"

namespace nva {

// ---------------------------------------------------------------------------
// Matrix and Jordan algebras
// ---------------------------------------------------------------------------

template <class F>
AlgebraPtr<F> matrix_algebra(std::uint32_t n, const F& field) {
  if (n == 0) throw Error("matrix size must be >= 1");
  const std::uint32_t d = n * n;
  auto idx = [n](std::uint32_t a, std::uint32_t b) { return a * n + b; };
  std::vector<std::string> names(d);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      names[idx(a, b)] = "e" + std::to_string(a + 1) + std::to_string(b + 1);
  typename StructureAlgebra<F>::Table tab;
  // e_ab e_bc = e_ac; all other unit products vanish
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        tab[{idx(a, b), idx(b, c)}] = {{idx(a, c), field.one()}};
  return make_algebra<F>(field, std::move(names), std::move(tab));
}

template <class F>
AlgebraPtr<F> jordan_plus(std::uint32_t n, const F& field) {
  return plus_algebra(matrix_algebra(n, field));
}

/* Symmetric n x n matrices under (xy + yx)/2.  Basis: the diagonal units
 * h11..hnn, then hab = e_ab + e_ba for a < b; dimension n(n+1)/2. */
template <class F>
AlgebraPtr<F> jordan_sym(std::uint32_t n, const F& field) {
  if (n == 0) throw Error("matrix size must be >= 1");
  using K = Scalar_t<F>;
  K h = half(field);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::string> names;
  for (std::uint32_t a = 0; a < n; ++a) {
    pairs.emplace_back(a, a);
    names.push_back("h" + std::to_string(a + 1) + std::to_string(a + 1));
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) {
      pairs.emplace_back(a, b);
      names.push_back("h" + std::to_string(a + 1) + std::to_string(b + 1));
    }

  // dense symmetric-matrix product, re-read in the pair basis
  auto as_matrix = [&](std::size_t p) {
    std::vector<std::vector<K>> m(n, std::vector<K>(n, field.zero()));
    auto [a, b] = pairs[p];
    m[a][b] = field.one();
    m[b][a] = field.one();
    return m;
  };
  typename StructureAlgebra<F>::Table tab;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      auto x = as_matrix(p), y = as_matrix(q);
      std::vector<std::vector<K>> prod(n, std::vector<K>(n, field.zero()));
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          for (std::uint32_t k = 0; k < n; ++k)
            prod[i][j] += (x[i][k] * y[k][j] + y[i][k] * x[k][j]) * h;
      typename StructureAlgebra<F>::TableEntry terms;
      for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [a, b] = pairs[r];
        if (!prod[a][b].is_zero()) terms.emplace_back(static_cast<std::uint32_t>(r), prod[a][b]);
      }
      if (!terms.empty())
        tab[{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)}] = std::move(terms);
    }
  return make_algebra<F>(field, std::move(names), std::move(tab));
}

// ---------------------------------------------------------------------------
// Bilinear-form and quadratic algebras
// ---------------------------------------------------------------------------

/* F.1 + V with (alpha+v)(beta+u) = (alpha beta + f(v,u)) + (alpha u + beta v);
 * commutative and unital for any symmetric f. */
template <class F>
AlgebraPtr<F> bilinear_form_jordan(std::uint32_t v_dim,
                                   const std::vector<std::vector<Scalar_t<F>>>& form,
                                   const F& field) {
  if (form.size() != v_dim) throw Error("form size does not match v_dim");
  for (std::uint32_t i = 0; i < v_dim; ++i) {
    if (form[i].size() != v_dim) throw Error("form is not square");
    for (std::uint32_t j = 0; j < v_dim; ++j)
      if (!(form[i][j] == form[j][i])) throw Error("form is not symmetric");
  }
  std::vector<std::string> names{"1"};
  for (std::uint32_t i = 0; i < v_dim; ++i) names.push_back("v" + std::to_string(i + 1));
  typename StructureAlgebra<F>::Table tab;
  tab[{0, 0}] = {{0, field.one()}};
  for (std::uint32_t i = 0; i < v_dim; ++i) {
    tab[{0, i + 1}] = {{i + 1, field.one()}};
    tab[{i + 1, 0}] = {{i + 1, field.one()}};
    for (std::uint32_t j = 0; j < v_dim; ++j)
      if (!form[i][j].is_zero()) tab[{i + 1, j + 1}] = {{0, form[i][j]}};
  }
  return make_algebra<F>(field, std::move(names), std::move(tab));
}

/* Data for F.1 + V with product
 * (alpha+v)(beta+u) = (alpha beta + (v,u)) + (alpha u + beta v + v x u). */
template <class F>
struct QuadraticData {
  using K = Scalar_t<F>;
  F field;
  std::uint32_t v_dim = 0;
  std::vector<std::vector<K>> form;                // symmetric, v_dim x v_dim
  std::vector<std::vector<std::vector<K>>> cross;  // cross[i][j] = coords of vi x vj
};

namespace detail {

template <class F>
void validate_quadratic(const QuadraticData<F>& q) {
  using K = Scalar_t<F>;
  const F& field = q.field;
  const std::uint32_t n = q.v_dim;
  if (q.form.size() != n || q.cross.size() != n) throw Error("quadratic data size mismatch");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (q.form[i].size() != n || q.cross[i].size() != n)
      throw Error("quadratic data size mismatch");
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!(q.form[i][j] == q.form[j][i])) throw Error("quadratic form is not symmetric");
      if (q.cross[i][j].size() != n) throw Error("cross-product row has wrong length");
      for (std::uint32_t k = 0; k < n; ++k)
        if (!(q.cross[i][j][k] + q.cross[j][i][k]).is_zero())
          throw Error("cross product is not antisymmetric at (v" + std::to_string(i + 1) +
                      ", v" + std::to_string(j + 1) + ")");
    }
  }
  // associativity of the form: (vi x vj, vk) = (vi, vj x vk)
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) {
        K lhs = field.zero(), rhs = field.zero();
        for (std::uint32_t t = 0; t < n; ++t) {
          lhs += q.cross[i][j][t] * q.form[t][k];
          rhs += q.form[i][t] * q.cross[j][k][t];
        }
        if (!(lhs == rhs))
          throw Error("form is not associative with the cross product at (v" +
                      std::to_string(i + 1) + ", v" + std::to_string(j + 1) + ", v" +
                      std::to_string(k + 1) + ")");
      }
}

}  // namespace detail

/* Carries the standard conjugation alpha + v -> alpha - v, so trace_of and
 * norm_of work on the result. */
template <class F>
AlgebraPtr<F> quadratic_algebra(const QuadraticData<F>& q) {
  using K = Scalar_t<F>;
  detail::validate_quadratic(q);
  const F& field = q.field;
  const std::uint32_t n = q.v_dim;
  std::vector<std::string> names{"1"};
  for (std::uint32_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  typename StructureAlgebra<F>::Table tab;
  tab[{0, 0}] = {{0, field.one()}};
  for (std::uint32_t i = 0; i < n; ++i) {
    tab[{0, i + 1}] = {{i + 1, field.one()}};
    tab[{i + 1, 0}] = {{i + 1, field.one()}};
    for (std::uint32_t j = 0; j < n; ++j) {
      typename StructureAlgebra<F>::TableEntry terms;
      if (!q.form[i][j].is_zero()) terms.emplace_back(0, q.form[i][j]);
      for (std::uint32_t k = 0; k < n; ++k)
        if (!q.cross[i][j][k].is_zero()) terms.emplace_back(k + 1, q.cross[i][j][k]);
      if (!terms.empty()) tab[{i + 1, j + 1}] = std::move(terms);
    }
  }
  auto A = std::make_shared<StructureAlgebra<F>>(field, std::move(names), std::move(tab));
  std::vector<std::vector<K>> inv(n + 1, std::vector<K>(n + 1, field.zero()));
  inv[0][0] = field.one();
  for (std::uint32_t i = 1; i <= n; ++i) inv[i][i] = -field.one();
  A->set_involution(std::move(inv));
  return A;
}

// ---------------------------------------------------------------------------
// Trace and norm from an involution
// ---------------------------------------------------------------------------

/* t(x), read off x + conj(x) = t(x).1; throws if the sum is not scalar. */
template <class F>
Scalar_t<F> trace_of(const Element<F>& x) {
  auto s = x + apply_involution(x);
  for (std::uint32_t i = 1; i < x.algebra()->dim(); ++i)
    if (!s.coords()[i].is_zero()) throw Error("element plus its conjugate is not scalar");
  return s.coords()[0];
}

/* n(x), read off conj(x) x = n(x).1; throws if the product is not scalar. */
template <class F>
Scalar_t<F> norm_of(const Element<F>& x) {
  auto p = apply_involution(x) * x;
  for (std::uint32_t i = 1; i < x.algebra()->dim(); ++i)
    if (!p.coords()[i].is_zero()) throw Error("conjugate-times-element is not scalar");
  return p.coords()[0];
}

// ---------------------------------------------------------------------------
// Cayley-Dickson
// ---------------------------------------------------------------------------

/* The ground field as a 1-dim unital algebra with the identity involution. */
template <class F>
AlgebraPtr<F> ground_algebra(const F& field) {
  typename StructureAlgebra<F>::Table tab;
  tab[{0, 0}] = {{0, field.one()}};
  auto A =
      std::make_shared<StructureAlgebra<F>>(field, std::vector<std::string>{"1"}, std::move(tab));
  A->set_involution({{field.one()}});
  return A;
}

/* Same structure constants and involution under fresh basis names. */
template <class F>
AlgebraPtr<F> rename_basis(const AlgebraPtr<F>& A, std::vector<std::string> names) {
  if (names.size() != A->dim()) throw Error("rename needs exactly one name per basis vector");
  auto B = std::make_shared<StructureAlgebra<F>>(A->field(), std::move(names), A->table());
  if (A->involution()) B->set_involution(*A->involution());
  return B;
}

/* Doubling step: pairs (a,b) with (a,b)(c,d) = (ac + mu conj(d) b, da + b conj(c))
 * and conj(a,b) = (conj(a), -b).  Needs a unital input carrying an involution,
 * with the unit at basis position 0.  New basis names are the old ones primed,
 * with as many primes as it takes to dodge the existing names (chained
 * doublings of the ground field end up tagging basis vector i with i primes);
 * every basis vector of the result is checked against its quadratic equation
 * x^2 - t(x)x + n(x)1 = 0. */
template <class F>
AlgebraPtr<F> cayley_dickson(const AlgebraPtr<F>& A, const Scalar_t<F>& mu) {
  using K = Scalar_t<F>;
  if (!A->involution()) throw Error("Cayley-Dickson needs involution metadata on its input");
  {
    auto unit = find_unit(A);
    if (!unit || !(*unit == basis_element(A, 0)))
      throw Error("Cayley-Dickson needs a unital input with the unit at basis position 0");
  }
  const std::uint32_t n = A->dim();
  std::vector<std::string> names = A->basis_names();
  std::string primes = "'";
  auto taken = [&] {
    for (const auto& name : A->basis_names())
      if (std::find(names.begin(), names.end(), name + primes) != names.end()) return true;
    return false;
  };
  while (taken()) primes += "'";
  for (const auto& name : A->basis_names()) names.push_back(name + primes);

  auto conj = [&](const Element<F>& x) { return apply_involution(x); };
  auto el = [&](std::uint32_t i) { return basis_element(A, i); };

  typename StructureAlgebra<F>::Table tab;
  auto put = [&](std::uint32_t r, std::uint32_t c, const Element<F>& first,
                 const Element<F>& second) {
    typename StructureAlgebra<F>::TableEntry terms;
    for (std::uint32_t k = 0; k < n; ++k)
      if (!first.coords()[k].is_zero()) terms.emplace_back(k, first.coords()[k]);
    for (std::uint32_t k = 0; k < n; ++k)
      if (!second.coords()[k].is_zero()) terms.emplace_back(n + k, second.coords()[k]);
    if (!terms.empty()) tab[{r, c}] = std::move(terms);
  };
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      put(i, j, el(i) * el(j), zero_element(A));                             // (a,0)(c,0)
      put(i, n + j, zero_element(A), el(j) * el(i));                         // (a,0)(0,d)
      put(n + i, j, zero_element(A), el(i) * conj(el(j)));                   // (0,b)(c,0)
      put(n + i, n + j, (conj(el(j)) * el(i)).scaled(mu), zero_element(A));  // (0,b)(0,d)
    }

  auto B = std::make_shared<StructureAlgebra<F>>(A->field(), std::move(names), std::move(tab));
  std::vector<std::vector<K>> inv(2 * n, std::vector<K>(2 * n, A->field().zero()));
  const auto& old_inv = *A->involution();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) inv[i][j] = old_inv[i][j];
    inv[n + i][n + i] = -A->field().one();
  }
  B->set_involution(std::move(inv));

  AlgebraPtr<F> out = B;
  for (std::uint32_t i = 0; i < 2 * n; ++i) {
    auto x = basis_element(out, i);
    auto gap = x * x - x.scaled(trace_of(x)) + basis_element(out, 0).scaled(norm_of(x));
    if (!gap.is_zero())
      throw Error("doubling produced a basis vector violating its quadratic equation");
  }
  return out;
}

template <class F>
AlgebraPtr<F> cayley_dickson_chain(const F& field, const std::vector<Scalar_t<F>>& mus) {
  auto A = ground_algebra(field);
  for (const auto& mu : mus) A = cayley_dickson(A, mu);
  return A;
}

template <class F>
AlgebraPtr<F> quaternion_algebra(const F& field) {
  auto m = -field.one();
  return rename_basis(cayley_dickson_chain(field, {m, m}), {"1", "i", "j", "k"});
}

namespace detail {
inline std::vector<std::string> octonion_names() {
  return {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
}
}  // namespace detail

template <class F>
AlgebraPtr<F> octonion_algebra(const F& field) {
  auto m = -field.one();
  return rename_basis(cayley_dickson_chain(field, {m, m, m}), detail::octonion_names());
}

/* Third doubling with mu = +1: the split octonions, which contain a copy of
 * the 2x2 matrix algebra. */
template <class F>
AlgebraPtr<F> split_octonion_algebra(const F& field) {
  auto m = -field.one();
  return rename_basis(cayley_dickson_chain(field, {m, m, field.one()}), detail::octonion_names());
}

/* Four elements of the split octonions obeying the 2x2 matrix-unit relations
 * E_ab E_cd = delta_bc E_ad, verified before returning.  Order: E11, E12,
 * E21, E22.  Basis vector 4 squares to +1 there, making (e0 +- e4)/2 the
 * orthogonal idempotents. */
template <class F>
std::vector<Element<F>> matrix_units_in_split_octonions(const AlgebraPtr<F>& O) {
  using K = Scalar_t<F>;
  K h = half(O->field());
  auto e = [&](std::uint32_t i) { return basis_element(O, i); };
  std::vector<Element<F>> E{
      (e(0) + e(4)).scaled(h),
      (e(1) - e(5)).scaled(h),
      (-(e(1) + e(5))).scaled(h),
      (e(0) - e(4)).scaled(h),
  };
  auto unit = [&](std::uint32_t a, std::uint32_t b) { return E[a * 2 + b]; };
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b)
      for (std::uint32_t c = 0; c < 2; ++c)
        for (std::uint32_t d = 0; d < 2; ++d) {
          auto prod = unit(a, b) * unit(c, d);
          auto want = b == c ? unit(a, d) : zero_element(O);
          if (!(prod == want)) throw Error("matrix-unit relations fail inside this algebra");
        }
  return E;
}

// ---------------------------------------------------------------------------
// Poisson brackets and Kokoris algebras
// ---------------------------------------------------------------------------

/* A commutative associative base plus an antisymmetric bracket satisfying
 * Leibniz {x.y, z} = x.{y,z} + y.{x,z}; all three laws are verified on
 * construction. */
template <class F>
class PoissonData {
 public:
  using K = Scalar_t<F>;

  PoissonData(AlgebraPtr<F> base, std::vector<std::vector<Element<F>>> bracket)
      : base_(std::move(base)), bracket_(std::move(bracket)) {
    if (!table_commutative(base_) || !table_associative(base_))
      throw Error("Poisson base must be commutative and associative");
    const std::uint32_t n = base_->dim();
    if (bracket_.size() != n) throw Error("bracket table size mismatch");
    for (std::uint32_t i = 0; i < n; ++i) {
      if (bracket_[i].size() != n) throw Error("bracket table size mismatch");
      for (std::uint32_t j = 0; j < n; ++j)
        if (!(bracket_[i][j] + bracket_[j][i]).is_zero())
          throw Error("bracket is not antisymmetric at (" + base_->basis_names()[i] + ", " +
                      base_->basis_names()[j] + ")");
    }
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k) {
          auto x = basis_element(base_, i), y = basis_element(base_, j),
               z = basis_element(base_, k);
          auto lhs = eval(x * y, z);
          auto rhs = x * eval(y, z) + y * eval(x, z);
          if (!(lhs == rhs))
            throw Error("Leibniz identity fails on the basis triple (" + base_->basis_names()[i] +
                        ", " + base_->basis_names()[j] + ", " + base_->basis_names()[k] + ")");
        }
  }

  const AlgebraPtr<F>& base() const { return base_; }

  /* Bilinear extension of the basis bracket. */
  Element<F> eval(const Element<F>& x, const Element<F>& y) const {
    Element<F> acc = zero_element(base_);
    const std::uint32_t n = base_->dim();
    for (std::uint32_t i = 0; i < n; ++i) {
      if (x.coords()[i].is_zero()) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        if (y.coords()[j].is_zero()) continue;
        acc = acc + bracket_[i][j].scaled(x.coords()[i] * y.coords()[j]);
      }
    }
    return acc;
  }

 private:
  AlgebraPtr<F> base_;
  std::vector<std::vector<Element<F>>> bracket_;
};

/* a*b = a.b + {a,b}.  The output is verified to satisfy the seven-term
 * bracket identity J(a,b,c) = 4(a,b,c) - [[a,c],b] on all basis triples
 * (multilinear, so basis triples decide it), and its halved symmetrized
 * product must reproduce the base table. */
template <class F>
AlgebraPtr<F> kokoris_from_poisson(const PoissonData<F>& p) {
  using K = Scalar_t<F>;
  const auto& base = p.base();
  if (base->field().characteristic() == 2)
    throw Error("Kokoris construction needs characteristic != 2");
  const std::uint32_t n = base->dim();
  typename StructureAlgebra<F>::Table tab;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      auto prod = basis_element(base, i) * basis_element(base, j) +
                  p.eval(basis_element(base, i), basis_element(base, j));
      typename StructureAlgebra<F>::TableEntry terms;
      for (std::uint32_t k = 0; k < n; ++k)
        if (!prod.coords()[k].is_zero()) terms.emplace_back(k, prod.coords()[k]);
      if (!terms.empty()) tab[{i, j}] = std::move(terms);
    }
  auto A = make_algebra<F>(base->field(), base->basis_names(), std::move(tab));

  auto jay = [](const Element<F>& a, const Element<F>& b, const Element<F>& c) {
    return commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
           commutator(commutator(c, a), b);
  };
  K four = A->field().from_int(4);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) {
        auto a = basis_element(A, i), b = basis_element(A, j), c = basis_element(A, k);
        auto gap =
            jay(a, b, c) - associator(a, b, c).scaled(four) + commutator(commutator(a, c), b);
        if (!gap.is_zero())
          throw Error("constructed table violates the Kokoris bracket identity at (" +
                      A->basis_names()[i] + ", " + A->basis_names()[j] + ", " +
                      A->basis_names()[k] + ")");
      }
  if (!(*plus_algebra(A) == *base))
    throw Error("halved symmetrized product of the construction differs from its base");
  return A;
}

// ---------------------------------------------------------------------------
// Truncated polynomial rings and their Poisson brackets
// ---------------------------------------------------------------------------

/* F[x1..xv] / (monomials of degree > cap), unital.  Basis monomials are
 * ordered by total degree, then with x1 heaviest inside a degree, so the
 * constant 1 is basis vector 0. */
template <class F>
class TruncatedPolynomials {
 public:
  using K = Scalar_t<F>;
  using Expo = std::vector<std::uint32_t>;

  TruncatedPolynomials(const F& field, std::uint32_t num_vars, std::uint32_t degree_cap)
      : field_(field), nvars_(num_vars), cap_(degree_cap) {
    if (num_vars == 0) throw Error("need at least one variable");
    Expo e(nvars_, 0);
    enumerate(e, 0, 0);
    std::sort(monos_.begin(), monos_.end(), [](const Expo& a, const Expo& b) {
      std::uint32_t da = 0, db = 0;
      for (auto x : a) da += x;
      for (auto x : b) db += x;
      if (da != db) return da < db;
      return b < a;  // within a degree: x1-heavy first
    });
    std::vector<std::string> names;
    for (std::size_t i = 0; i < monos_.size(); ++i) {
      names.push_back(mono_name(monos_[i]));
      index_.emplace(monos_[i], static_cast<std::uint32_t>(i));
    }
    typename StructureAlgebra<F>::Table tab;
    for (std::size_t i = 0; i < monos_.size(); ++i)
      for (std::size_t j = 0; j < monos_.size(); ++j) {
        Expo sum(nvars_);
        std::uint32_t deg = 0;
        for (std::uint32_t v = 0; v < nvars_; ++v) {
          sum[v] = monos_[i][v] + monos_[j][v];
          deg += sum[v];
        }
        if (deg <= cap_)
          tab[{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}] = {
              {index_.at(sum), field_.one()}};
      }
    algebra_ = make_algebra<F>(field_, std::move(names), std::move(tab));
  }

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  std::uint32_t num_vars() const { return nvars_; }
  std::uint32_t degree_cap() const { return cap_; }
  const std::vector<Expo>& basis_exponents() const { return monos_; }

  std::uint32_t degree_of(std::uint32_t basis_i) const {
    std::uint32_t d = 0;
    for (auto x : monos_[basis_i]) d += x;
    return d;
  }

  /* Element for the monomial with the given exponent vector; degree > cap
   * truncates to zero. */
  Element<F> monomial(const Expo& e) const {
    std::uint32_t deg = 0;
    for (auto d : e) deg += d;
    if (deg > cap_) return zero_element(algebra_);
    return basis_element(algebra_, index_.at(e));
  }

  /* Reinterpret an element of another ring in the same variables here;
   * monomials over this ring's cap truncate away. */
  Element<F> lift_from(const TruncatedPolynomials& src, const Element<F>& f) const {
    if (src.nvars_ != nvars_) throw Error("variable count mismatch between rings");
    Element<F> acc = zero_element(algebra_);
    for (std::uint32_t i = 0; i < src.algebra_->dim(); ++i)
      if (!f.coords()[i].is_zero()) acc = acc + monomial(src.monos_[i]).scaled(f.coords()[i]);
    return acc;
  }

  /* d/dx_v, extended linearly from basis monomials. */
  Element<F> derivative(const Element<F>& f, std::uint32_t v) const {
    Element<F> acc = zero_element(algebra_);
    for (std::uint32_t i = 0; i < algebra_->dim(); ++i) {
      if (f.coords()[i].is_zero()) continue;
      const Expo& e = monos_[i];
      if (e[v] == 0) continue;
      Expo down = e;
      down[v] -= 1;
      acc = acc +
            monomial(down).scaled(field_.from_int(static_cast<long long>(e[v])) * f.coords()[i]);
    }
    return acc;
  }

 private:
  void enumerate(Expo& e, std::uint32_t var, std::uint32_t used) {
    if (var == nvars_) {
      monos_.push_back(e);
      return;
    }
    for (std::uint32_t d = 0; d + used <= cap_; ++d) {
      e[var] = d;
      enumerate(e, var + 1, used + d);
    }
    e[var] = 0;
  }

  std::string mono_name(const Expo& e) const {
    std::string out;
    for (std::uint32_t v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(v + 1);
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out.empty() ? "1" : out;
  }

  F field_;
  std::uint32_t nvars_, cap_;
  std::vector<Expo> monos_;
  std::map<Expo, std::uint32_t> index_;
  AlgebraPtr<F> algebra_;
};

/* {f,g} = sum over i<j of c_ij (df/dxi dg/dxj - df/dxj dg/dxi), products
 * truncated by the ring.  This is the raw formula; whether it descends to
 * the quotient is a separate question, settled in poisson_polynomial_truncated. */
template <class F>
Element<F> truncated_poisson_bracket(const TruncatedPolynomials<F>& ring,
                                     const std::vector<std::vector<Element<F>>>& c,
                                     const Element<F>& f, const Element<F>& g) {
  Element<F> acc = zero_element(ring.algebra());
  for (std::uint32_t i = 0; i < ring.num_vars(); ++i)
    for (std::uint32_t j = i + 1; j < ring.num_vars(); ++j) {
      if (c[i][j].is_zero()) continue;
      auto term = ring.derivative(f, i) * ring.derivative(g, j) -
                  ring.derivative(f, j) * ring.derivative(g, i);
      acc = acc + c[i][j] * term;
    }
  return acc;
}

/* Validated Poisson data over the truncated ring; c must be an antisymmetric
 * matrix of ring elements.
 *
 * Differentiation does not generally respect the truncation ideal: a
 * discarded monomial of degree cap+1 or cap+2 can bracket back down to degree
 * <= cap (higher degrees cannot, since one bracket drops total degree by at
 * most 2).  The check below recomputes those brackets in a cap+2 ring, where
 * the low-degree part is exact, and demands that it vanish; constant c over
 * a finite cap genuinely fails here.  Leibniz on the quotient follows once
 * the bracket descends, but the PoissonData constructor re-verifies it anyway. */
template <class F>
PoissonData<F> poisson_polynomial_truncated(const TruncatedPolynomials<F>& ring,
                                            const std::vector<std::vector<Element<F>>>& c) {
  const std::uint32_t v = ring.num_vars();
  const std::uint32_t cap = ring.degree_cap();
  std::uint64_t ch = ring.algebra()->field().characteristic();
  if (ch != 0 && ch <= cap) throw Error("characteristic must be 0 or exceed the degree cap");
  if (c.size() != v) throw Error("coefficient table must be num_vars x num_vars");
  for (std::uint32_t i = 0; i < v; ++i) {
    if (c[i].size() != v) throw Error("coefficient table must be num_vars x num_vars");
    for (std::uint32_t j = 0; j < v; ++j)
      if (!(c[i][j] + c[j][i]).is_zero()) throw Error("coefficient table must be antisymmetric");
  }

  TruncatedPolynomials<F> wide(ring.algebra()->field(), v, cap + 2);
  std::vector<std::vector<Element<F>>> cw;
  for (std::uint32_t i = 0; i < v; ++i) {
    std::vector<Element<F>> row;
    for (std::uint32_t j = 0; j < v; ++j) row.push_back(wide.lift_from(ring, c[i][j]));
    cw.push_back(std::move(row));
  }
  const auto& W = wide.algebra();
  for (std::uint32_t m = 0; m < W->dim(); ++m) {
    if (wide.degree_of(m) <= cap) continue;
    for (std::uint32_t g = 0; g < W->dim(); ++g) {
      if (wide.degree_of(g) > cap) continue;
      auto br = truncated_poisson_bracket(wide, cw, basis_element(W, m), basis_element(W, g));
      for (std::uint32_t k = 0; k < W->dim(); ++k)
        if (wide.degree_of(k) <= cap && !br.coords()[k].is_zero())
          throw Error("bracket does not respect the truncation ideal: {" + W->basis_names()[m] +
                      ", " + W->basis_names()[g] + "} reaches below the cap with term " +
                      W->basis_names()[k]);
    }
  }

  const auto& A = ring.algebra();
  const std::uint32_t n = A->dim();
  std::vector<std::vector<Element<F>>> bracket(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      bracket[i].push_back(
          truncated_poisson_bracket(ring, c, basis_element(A, i), basis_element(A, j)));
  return PoissonData<F>(A, std::move(bracket));
}

// ---------------------------------------------------------------------------
// Free nilpotent, zero, and extension
// ---------------------------------------------------------------------------

/* Free nonassociative algebra on the given generators with every product of
 * degree >= index set to zero.  Basis: all planar binary trees of degree
 * < index over the generators, named by their parenthesized form. */
template <class F>
AlgebraPtr<F> free_nilpotent(const F& field, const std::vector<std::string>& generators,
                             std::uint32_t index, std::size_t budget = 200000) {
  if (generators.empty()) throw Error("need at least one generator");
  if (index < 2) throw Error("nilpotency index must be >= 2");

  std::map<MonoPtr, std::uint32_t, MonoLess> idx;
  std::vector<MonoPtr> basis;
  std::vector<std::vector<MonoPtr>> by_degree(index);
  auto push = [&](const MonoPtr& m) {
    if (basis.size() >= budget)
      throw BudgetError("free nilpotent algebra exceeds the basis budget of " +
                        std::to_string(budget));
    idx.emplace(m, static_cast<std::uint32_t>(basis.size()));
    basis.push_back(m);
    by_degree[m->degree].push_back(m);
  };
  for (const auto& g : generators) push(make_var(g));
  for (std::uint32_t d = 2; d < index; ++d)
    for (std::uint32_t l = 1; l < d; ++l)
      for (const auto& a : by_degree[l])
        for (const auto& b : by_degree[d - l]) push(make_prod(a, b));

  // basis names drop the outermost parens: "x*(x*x)", not "(x*(x*x))"
  std::vector<std::string> names;
  names.reserve(basis.size());
  for (const auto& m : basis)
    names.push_back(m->is_leaf() ? m->var
                                 : mono_str(m->left) + "*" + mono_str(m->right));

  typename StructureAlgebra<F>::Table tab;
  for (std::uint32_t i = 0; i < basis.size(); ++i)
    for (std::uint32_t j = 0; j < basis.size(); ++j)
      if (basis[i]->degree + basis[j]->degree < index)
        tab[{i, j}] = {{idx.at(make_prod(basis[i], basis[j])), field.one()}};
  return make_algebra<F>(field, std::move(names), std::move(tab));
}

template <class F>
AlgebraPtr<F> zero_algebra(const F& field, std::uint32_t dim) {
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < dim; ++i) names.push_back("z" + std::to_string(i + 1));
  return make_algebra<F>(field, std::move(names), {});
}

// ---------------------------------------------------------------------------
// Scalar extension
// ---------------------------------------------------------------------------

namespace detail {

inline Rational convert_scalar(const FieldQ&, const Rational& x) { return x; }
inline QuadExt convert_scalar(const FieldQSqrt& to, const Rational& x) {
  return QuadExt(x, Rational(0), to.d);
}
inline Fp convert_scalar(const FieldGFp& to, const Fp& x) {
  if (!x.is_zero() && x.modulus() != to.p)
    throw Error("cannot move scalars between different prime fields");
  return Fp(x.value(), to.p);
}
inline QuadExt convert_scalar(const FieldQSqrt& to, const QuadExt& x) {
  if (!x.root_part().is_zero() && x.radicand() != to.d)
    throw Error("cannot move scalars between different quadratic extensions");
  return QuadExt(x.rat_part(), x.root_part(), to.d);
}
template <class F2, class K1>
Scalar_t<F2> convert_scalar(const F2&, const K1&) {
  throw Error("unsupported scalar extension between these fields");
}

}  // namespace detail

/* Same structure constants (and involution, if any) reinterpreted over a
 * larger or equal field. */
template <class F2, class F>
AlgebraPtr<F2> scalar_extension(const AlgebraPtr<F>& A, const F2& to) {
  typename StructureAlgebra<F2>::Table tab;
  for (const auto& [ij, terms] : A->table()) {
    typename StructureAlgebra<F2>::TableEntry out;
    for (const auto& [k, c] : terms) out.emplace_back(k, detail::convert_scalar(to, c));
    tab[ij] = std::move(out);
  }
  auto B = std::make_shared<StructureAlgebra<F2>>(to, A->basis_names(), std::move(tab));
  if (A->involution()) {
    std::vector<std::vector<Scalar_t<F2>>> inv;
    for (const auto& row : *A->involution()) {
      std::vector<Scalar_t<F2>> r;
      for (const auto& c : row) r.push_back(detail::convert_scalar(to, c));
      inv.push_back(std::move(r));
    }
    B->set_involution(std::move(inv));
  }
  return B;
}

}  // namespace nva

#endif  // NVA_CONSTRUCTIONS_HPP
