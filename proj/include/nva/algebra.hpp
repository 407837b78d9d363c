#ifndef NVA_ALGEBRA_HPP
#define NVA_ALGEBRA_HPP

/* Finite-dimensional algebras presented by structure constants.
 *
 * A StructureAlgebra stores a basis e_0..e_{n-1} and a sparse table
 * e_i e_j = sum_k c_ijk e_k over an exact coefficient field.  No
 * associativity, commutativity or unit is assumed anywhere; every law an
 * algebra is supposed to satisfy is something we *check*.
 *
 * Elements are dense coordinate vectors tied to their ambient algebra via
 * shared ownership; combining elements of different ambient algebras is an
 * error, not a silent coercion.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nva/linalg.hpp"
#include "nva/scalar.hpp"

namespace nva {

template <class F>
class StructureAlgebra;

template <class F>
using AlgebraPtr = std::shared_ptr<const StructureAlgebra<F>>;

/* Lazily computed, write-once predicate results.  The identity layer fills
 * the identity-theoretic ones in; the table-level ones are computed here. */
struct AlgebraFlags {
  std::optional<bool> commutative;
  std::optional<bool> anticommutative;
  std::optional<bool> associative;
  std::optional<bool> flexible;
  std::optional<bool> jordan_admissible;
};

template <class F>
class StructureAlgebra {
 public:
  using K = Scalar_t<F>;
  using TableEntry = std::vector<std::pair<std::uint32_t, K>>;
  using Table = std::map<std::pair<std::uint32_t, std::uint32_t>, TableEntry>;

  StructureAlgebra(F field, std::vector<std::string> basis, Table table)
      : field_(std::move(field)), basis_(std::move(basis)), table_(std::move(table)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].empty()) throw Error("empty basis name");
      for (std::size_t j = i + 1; j < basis_.size(); ++j)
        if (basis_[i] == basis_[j]) throw Error("duplicate basis name '" + basis_[i] + "'");
    }
    for (auto it = table_.begin(); it != table_.end();) {
      auto& [ij, terms] = *it;
      if (ij.first >= dim() || ij.second >= dim()) throw Error("structure-table index out of range");
      TableEntry cleaned;
      for (const auto& [k, c] : terms) {
        if (k >= dim()) throw Error("structure-table target index out of range");
        if (!c.is_zero()) cleaned.emplace_back(k, c);
      }
      std::sort(cleaned.begin(), cleaned.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t t = 1; t < cleaned.size(); ++t)
        if (cleaned[t - 1].first == cleaned[t].first)
          throw Error("duplicate structure-table target index");
      if (cleaned.empty()) {
        it = table_.erase(it);
      } else {
        terms = std::move(cleaned);
        ++it;
      }
    }
    // flat lookup cache: product_terms is on every hot path
    flat_.resize(static_cast<std::size_t>(dim()) * dim());
    for (const auto& [ij, terms] : table_)
      flat_[static_cast<std::size_t>(ij.first) * dim() + ij.second] = terms;
  }

  const F& field() const { return field_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(basis_.size()); }
  const std::vector<std::string>& basis_names() const { return basis_; }
  const Table& table() const { return table_; }

  const TableEntry* product_terms(std::uint32_t i, std::uint32_t j) const {
    return &flat_[static_cast<std::size_t>(i) * dim() + j];
  }

  std::optional<std::uint32_t> basis_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < dim(); ++i)
      if (basis_[i] == name) return i;
    return std::nullopt;
  }

  /* Optional involution, stored as a dense matrix acting on coordinates
   * (row r = image of e_r).  Cayley-Dickson constructions carry one. */
  void set_involution(std::vector<std::vector<K>> m) { involution_ = std::move(m); }
  const std::optional<std::vector<std::vector<K>>>& involution() const { return involution_; }

  AlgebraFlags& flags() const { return flags_; }

  friend bool operator==(const StructureAlgebra& a, const StructureAlgebra& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_ && a.table_ == b.table_;
  }

 private:
  F field_;
  std::vector<std::string> basis_;
  Table table_;
  std::vector<TableEntry> flat_;  // dim*dim dense view of table_
  std::optional<std::vector<std::vector<K>>> involution_;
  mutable AlgebraFlags flags_;
};

template <class F, class... Args>
AlgebraPtr<F> make_algebra(F field, std::vector<std::string> basis,
                           typename StructureAlgebra<F>::Table table) {
  return std::make_shared<StructureAlgebra<F>>(std::move(field), std::move(basis),
                                               std::move(table));
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

template <class F>
class Element {
 public:
  using K = Scalar_t<F>;

  Element(AlgebraPtr<F> alg, std::vector<K> coords)
      : alg_(std::move(alg)), coords_(std::move(coords)) {
    if (coords_.size() != alg_->dim()) throw Error("coordinate count != algebra dimension");
  }

  const AlgebraPtr<F>& algebra() const { return alg_; }
  const std::vector<K>& coords() const { return coords_; }
  const K& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  Element scaled(const K& c) const {
    std::vector<K> out(coords_);
    for (auto& x : out) x = x * c;
    return Element(alg_, std::move(out));
  }

  friend Element operator+(const Element& u, const Element& v) {
    const auto& A = same_algebra(u, v);
    std::vector<K> out(u.coords_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v.coords_[i];
    return Element(A, std::move(out));
  }
  friend Element operator-(const Element& u, const Element& v) {
    const auto& A = same_algebra(u, v);
    std::vector<K> out(u.coords_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= v.coords_[i];
    return Element(A, std::move(out));
  }
  Element operator-() const { return scaled(-alg_->field().one()); }

  /* The structure-constant product. */
  friend Element operator*(const Element& u, const Element& v) {
    const auto& A = same_algebra(u, v);
    const auto& field = A->field();
    std::vector<K> out(A->dim(), field.zero());
    for (std::uint32_t i = 0; i < A->dim(); ++i) {
      if (u.coords_[i].is_zero()) continue;
      for (std::uint32_t j = 0; j < A->dim(); ++j) {
        if (v.coords_[j].is_zero()) continue;
        const auto* terms = A->product_terms(i, j);
        if (!terms) continue;
        K c = u.coords_[i] * v.coords_[j];
        for (const auto& [k, coef] : *terms) out[k] += c * coef;
      }
    }
    return Element(A, std::move(out));
  }

  friend bool operator==(const Element& u, const Element& v) {
    same_algebra(u, v);
    return u.coords_ == v.coords_;
  }
  friend bool operator!=(const Element& u, const Element& v) { return !(u == v); }

 private:
  static const AlgebraPtr<F>& same_algebra(const Element& u, const Element& v) {
    if (u.alg_ == v.alg_ || *u.alg_ == *v.alg_) return u.alg_;
    throw Error("mismatched ambient algebra");
  }

  AlgebraPtr<F> alg_;
  std::vector<K> coords_;
};

template <class F>
Element<F> zero_element(const AlgebraPtr<F>& A) {
  return Element<F>(A, std::vector<Scalar_t<F>>(A->dim(), A->field().zero()));
}

template <class F>
Element<F> basis_element(const AlgebraPtr<F>& A, std::uint32_t i) {
  if (i >= A->dim()) throw Error("basis index out of range");
  std::vector<Scalar_t<F>> c(A->dim(), A->field().zero());
  c[i] = A->field().one();
  return Element<F>(A, std::move(c));
}

template <class F>
Element<F> element_from(const AlgebraPtr<F>& A, std::vector<Scalar_t<F>> coords) {
  return Element<F>(A, std::move(coords));
}

/* "e12 + 2*e21 - 1/2*e22"; "0" for the zero element. */
template <class F>
std::string format_element(const Element<F>& u) {
  const auto& A = *u.algebra();
  const auto& field = A.field();
  std::string out;
  for (std::uint32_t i = 0; i < A.dim(); ++i) {
    const auto& c = u[i];
    if (c.is_zero()) continue;
    std::string cs = field.str(c);
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mag == "1")
      out += A.basis_names()[i];
    else
      out += mag + "*" + A.basis_names()[i];
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Derived products: commutator, associator, circle
// ---------------------------------------------------------------------------

/* [u,v] = uv - vu */
template <class F>
Element<F> commutator(const Element<F>& u, const Element<F>& v) {
  return u * v - v * u;
}

/* (u,v,w) = (uv)w - u(vw) */
template <class F>
Element<F> associator(const Element<F>& u, const Element<F>& v, const Element<F>& w) {
  return (u * v) * w - u * (v * w);
}

/* u o v = uv + vu (no 1/2; the "plus" product is half of this) */
template <class F>
Element<F> circle(const Element<F>& u, const Element<F>& v) {
  return u * v + v * u;
}

// ---------------------------------------------------------------------------
// Element powers and nilpotency
// ---------------------------------------------------------------------------

/* Principal right powers: u^1 = u, u^{n+1} = u^n * u. */
template <class F>
Element<F> element_power(const Element<F>& u, std::size_t n) {
  if (n == 0) throw Error("principal powers start at exponent 1");
  Element<F> acc = u;
  for (std::size_t k = 1; k < n; ++k) acc = acc * u;
  return acc;
}

struct NilpotencyResult {
  bool nilpotent = false;
  std::size_t index = 0;  // least k with u^k = 0 when nilpotent
};

/* Checks u^k = 0 for k <= cutoff (default dim + 1). */
template <class F>
NilpotencyResult is_nilpotent_element(const Element<F>& u, std::size_t cutoff = 0) {
  if (cutoff == 0) cutoff = u.algebra()->dim() + 1;
  Element<F> acc = u;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    if (acc.is_zero()) return {true, k};
    if (k < cutoff) acc = acc * u;
  }
  return {false, 0};
}

// ---------------------------------------------------------------------------
// Table-level predicates (exact, basis-triple sweeps)
// ---------------------------------------------------------------------------

template <class F>
bool table_commutative(const AlgebraPtr<F>& A) {
  if (A->flags().commutative) return *A->flags().commutative;
  bool ok = true;
  for (std::uint32_t i = 0; i < A->dim() && ok; ++i)
    for (std::uint32_t j = 0; j < A->dim() && ok; ++j)
      ok = basis_element(A, i) * basis_element(A, j) == basis_element(A, j) * basis_element(A, i);
  A->flags().commutative = ok;
  return ok;
}

template <class F>
bool table_anticommutative(const AlgebraPtr<F>& A) {
  if (A->flags().anticommutative) return *A->flags().anticommutative;
  bool ok = true;
  for (std::uint32_t i = 0; i < A->dim() && ok; ++i)
    for (std::uint32_t j = 0; j < A->dim() && ok; ++j)
      ok = (basis_element(A, i) * basis_element(A, j) + basis_element(A, j) * basis_element(A, i))
               .is_zero();
  A->flags().anticommutative = ok;
  return ok;
}

template <class F>
bool table_associative(const AlgebraPtr<F>& A) {
  if (A->flags().associative) return *A->flags().associative;
  bool ok = true;
  for (std::uint32_t i = 0; i < A->dim() && ok; ++i)
    for (std::uint32_t j = 0; j < A->dim() && ok; ++j)
      for (std::uint32_t k = 0; k < A->dim() && ok; ++k)
        ok = associator(basis_element(A, i), basis_element(A, j), basis_element(A, k)).is_zero();
  A->flags().associative = ok;
  return ok;
}

/* Flexibility (x,y,x) = 0 checked through its bilinear-in-x polarization
 * (x,y,z) + (z,y,x) = 0 on basis triples; faithful away from char 2. */
template <class F>
bool table_flexible(const AlgebraPtr<F>& A) {
  if (A->flags().flexible) return *A->flags().flexible;
  if (A->field().characteristic() == 2)
    throw Error("table-level flexibility check requires characteristic != 2");
  bool ok = true;
  for (std::uint32_t i = 0; i < A->dim() && ok; ++i)
    for (std::uint32_t j = 0; j < A->dim() && ok; ++j)
      for (std::uint32_t k = 0; k < A->dim() && ok; ++k) {
        auto ei = basis_element(A, i), ej = basis_element(A, j), ek = basis_element(A, k);
        ok = (associator(ei, ej, ek) + associator(ek, ej, ei)).is_zero();
      }
  A->flags().flexible = ok;
  return ok;
}

// ---------------------------------------------------------------------------
// Unit detection
// ---------------------------------------------------------------------------

/* Solves e * e_i = e_i = e_i * e for all i; returns the two-sided unit when
 * one exists. */
template <class F>
std::optional<Element<F>> find_unit(const AlgebraPtr<F>& A) {
  const auto& field = A->field();
  const std::uint32_t n = A->dim();
  std::vector<SparseVec<F>> eqs;
  std::vector<Scalar_t<F>> rhs;
  // unknowns: coordinates of e.  Equation set: for each basis j and target k,
  // sum_i e_i c_{ijk} = delta_{jk} (left action) and c_{jik} (right action).
  for (int side = 0; side < 2; ++side) {
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::vector<Scalar_t<F>>> cols(n, std::vector<Scalar_t<F>>(n, field.zero()));
      for (std::uint32_t i = 0; i < n; ++i) {
        const auto* terms = side == 0 ? A->product_terms(i, j) : A->product_terms(j, i);
        if (!terms) continue;
        for (const auto& [k, c] : *terms) cols[k][i] = c;
      }
      for (std::uint32_t k = 0; k < n; ++k) {
        eqs.push_back(to_sparse<F>(cols[k]));
        rhs.push_back(j == k ? field.one() : field.zero());
      }
    }
  }
  auto sol = solve_linear<F>(field, std::move(eqs), rhs, n);
  if (!sol) return std::nullopt;
  Element<F> e(A, std::move(*sol));
  // a two-sided unit is unique, but the solver pins free vars to zero, so
  // verify the candidate honestly
  for (std::uint32_t i = 0; i < n; ++i) {
    auto b = basis_element(A, i);
    if (!(e * b == b) || !(b * e == b)) return std::nullopt;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Derived algebras: plus, minus, mutation, unital hull
// ---------------------------------------------------------------------------

namespace detail {
template <class F>
typename StructureAlgebra<F>::Table mixed_table(const AlgebraPtr<F>& A,
                                                const Scalar_t<F>& lambda,
                                                const Scalar_t<F>& mu) {
  // x *' y = lambda * xy + mu * yx, assembled sparsely
  typename StructureAlgebra<F>::Table t;
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    for (std::uint32_t j = 0; j < A->dim(); ++j) {
      RowBuilder<F> rb;
      if (const auto* fw = A->product_terms(i, j))
        for (const auto& [k, c] : *fw) rb.add(k, lambda * c);
      if (const auto* bw = A->product_terms(j, i))
        for (const auto& [k, c] : *bw) rb.add(k, mu * c);
      auto row = rb.take();
      if (!row.empty()) {
        typename StructureAlgebra<F>::TableEntry e;
        for (auto& [k, c] : row.terms) e.emplace_back(k, c);
        t[{i, j}] = std::move(e);
      }
    }
  }
  return t;
}
}  // namespace detail

/* plus(A): x . y = (xy + yx)/2 on the same space.  Characteristic != 2. */
template <class F>
AlgebraPtr<F> plus_algebra(const AlgebraPtr<F>& A) {
  auto h = half(A->field());
  return make_algebra<F>(A->field(), A->basis_names(), detail::mixed_table(A, h, h));
}

/* minus(A): x . y = (xy - yx)/2. */
template <class F>
AlgebraPtr<F> minus_algebra(const AlgebraPtr<F>& A) {
  auto h = half(A->field());
  return make_algebra<F>(A->field(), A->basis_names(), detail::mixed_table(A, h, -h));
}

/* mutation A^(lambda): x . y = lambda*xy + (1-lambda)*yx. */
template <class F>
AlgebraPtr<F> mutation_algebra(const AlgebraPtr<F>& A, const Scalar_t<F>& lambda) {
  return make_algebra<F>(A->field(), A->basis_names(),
                         detail::mixed_table(A, lambda, A->field().one() - lambda));
}

/* A with an external unit adjoined in position 0. */
template <class F>
AlgebraPtr<F> unital_hull(const AlgebraPtr<F>& A) {
  std::string unit = "1";
  while (A->basis_index(unit)) unit += "'";
  std::vector<std::string> basis;
  basis.push_back(unit);
  for (const auto& b : A->basis_names()) basis.push_back(b);
  typename StructureAlgebra<F>::Table t;
  const auto one = A->field().one();
  t[{0, 0}] = {{0, one}};
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    t[{0, i + 1}] = {{i + 1, one}};
    t[{i + 1, 0}] = {{i + 1, one}};
    for (std::uint32_t j = 0; j < A->dim(); ++j) {
      if (const auto* terms = A->product_terms(i, j)) {
        typename StructureAlgebra<F>::TableEntry e;
        for (const auto& [k, c] : *terms) e.emplace_back(k + 1, c);
        t[{i + 1, j + 1}] = std::move(e);
      }
    }
  }
  return make_algebra<F>(A->field(), std::move(basis), std::move(t));
}

/* Applies the stored involution. */
template <class F>
Element<F> apply_involution(const Element<F>& u) {
  const auto& A = u.algebra();
  if (!A->involution()) throw Error("algebra carries no involution");
  const auto& m = *A->involution();
  const auto& field = A->field();
  std::vector<Scalar_t<F>> out(A->dim(), field.zero());
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::uint32_t k = 0; k < A->dim(); ++k) out[k] += u[i] * m[i][k];
  }
  return Element<F>(A, std::move(out));
}

}  // namespace nva

#endif  // NVA_ALGEBRA_HPP
