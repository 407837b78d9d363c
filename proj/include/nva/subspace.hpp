#pragma once

/* Subspaces of a structure-constant algebra: canonical echelon bases, sums,
 * products, power chains, generated subalgebras/ideals, and the nilpotency
 * index of the whole algebra.
 *
 * Every Subspace is kept in reduced echelon form at all times, so equality of
 * subspaces is literal equality of their basis matrices.  Products are
 * computed sparsely straight off the structure table — no dense coordinate
 * vectors are materialized along the way, which keeps the high-dimensional
 * graded examples (where basis rows are unit vectors) cheap.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nva/algebra.hpp"
#include "nva/linalg.hpp"
#include "nva/scalar.hpp"

namespace nva {

namespace detail {

template <class F>
const AlgebraPtr<F>& same_ambient(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
  if (a == b || *a == *b) return a;
  throw Error("subspace operands live in different ambient algebras");
}

/* Sparse product of two coordinate rows under the ambient structure table. */
template <class F>
SparseVec<F> row_product(const StructureAlgebra<F>& A, const SparseVec<F>& r,
                         const SparseVec<F>& s) {
  RowBuilder<F> acc;
  for (const auto& [i, a] : r.terms)
    for (const auto& [j, b] : s.terms)
      if (const auto* terms = A.product_terms(i, j))
        for (const auto& [k, c] : *terms) acc.add(k, a * b * c);
  return acc.take();
}

/* Row product symmetrized without the 1/2: span{uv + vu} = span of the plus
 * product whenever 2 is invertible, and the caller polices characteristic 2. */
template <class F>
SparseVec<F> row_circle(const StructureAlgebra<F>& A, const SparseVec<F>& r,
                        const SparseVec<F>& s) {
  SparseVec<F> out = row_product(A, r, s);
  axpy<F>(out, A.field().one(), row_product(A, s, r));
  return out;
}

}  // namespace detail

template <class F>
class Subspace {
 public:
  using K = Scalar_t<F>;

  explicit Subspace(AlgebraPtr<F> ambient)
      : ambient_(std::move(ambient)), rows_(ambient_->field(), ambient_->dim()) {}

  const AlgebraPtr<F>& ambient() const { return ambient_; }
  const Echelon<F>& echelon() const { return rows_; }
  std::size_t dim() const { return rows_.rank(); }
  bool is_zero() const { return rows_.rank() == 0; }
  bool is_full() const { return rows_.rank() == ambient_->dim(); }

  bool insert(const Element<F>& u) {
    detail::same_ambient(ambient_, u.algebra());
    return rows_.insert(to_sparse<F>(u.coords()));
  }
  bool insert_row(SparseVec<F> r) { return rows_.insert(std::move(r)); }

  bool contains(const Element<F>& u) const {
    detail::same_ambient(ambient_, u.algebra());
    return rows_.contains(to_sparse<F>(u.coords()));
  }
  bool contains(const Subspace& other) const {
    detail::same_ambient(ambient_, other.ambient_);
    for (const auto& r : other.rows_.rows())
      if (!rows_.contains(r)) return false;
    return true;
  }

  /* Canonical basis, materialized as elements of the ambient algebra. */
  std::vector<Element<F>> basis_elements() const {
    std::vector<Element<F>> out;
    out.reserve(rows_.rank());
    for (const auto& r : rows_.rows())
      out.emplace_back(ambient_, to_dense(ambient_->field(), r, ambient_->dim()));
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    detail::same_ambient(a.ambient_, b.ambient_);
    return a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  AlgebraPtr<F> ambient_;
  Echelon<F> rows_;
};

template <class F>
Subspace<F> zero_space(const AlgebraPtr<F>& A) {
  return Subspace<F>(A);
}

template <class F>
Subspace<F> full_space(const AlgebraPtr<F>& A) {
  Subspace<F> s(A);
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    SparseVec<F> r;
    r.terms.emplace_back(i, A->field().one());
    s.insert_row(std::move(r));
  }
  return s;
}

template <class F>
Subspace<F> span_of(const AlgebraPtr<F>& A, const std::vector<Element<F>>& gens) {
  Subspace<F> s(A);
  for (const auto& g : gens) s.insert(g);
  return s;
}

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& S, const Subspace<F>& T) {
  detail::same_ambient(S.ambient(), T.ambient());
  Subspace<F> out = S;
  for (const auto& r : T.echelon().rows()) out.insert_row(r);
  return out;
}

/* span{ s*t : s in S, t in T }, computed on the canonical bases. */
template <class F>
Subspace<F> subspace_product(const Subspace<F>& S, const Subspace<F>& T) {
  const auto& A = detail::same_ambient(S.ambient(), T.ambient());
  Subspace<F> out(A);
  for (const auto& r : S.echelon().rows())
    for (const auto& s : T.echelon().rows())
      out.insert_row(detail::row_product(*A, r, s));
  return out;
}

/* span{ s*t + t*s }: the product subspace of the plus algebra (the missing
 * 1/2 does not change spans once char != 2). */
template <class F>
Subspace<F> subspace_circle_product(const Subspace<F>& S, const Subspace<F>& T) {
  const auto& A = detail::same_ambient(S.ambient(), T.ambient());
  if (A->field().characteristic() == 2)
    throw Error("plus-product subspaces are not defined in characteristic 2");
  Subspace<F> out(A);
  for (const auto& r : S.echelon().rows())
    for (const auto& s : T.echelon().rows())
      out.insert_row(detail::row_circle(*A, r, s));
  return out;
}

namespace detail {

/* chain[n] = A^n under the given binary subspace product, where
 * A^1 = A and A^n = sum over i+j=n of A^i * A^j. */
template <class F, class Prod>
std::vector<Subspace<F>> power_chain_with(const AlgebraPtr<F>& A, std::size_t nmax,
                                          Prod&& prod) {
  if (nmax == 0) throw Error("power index must be >= 1");
  std::vector<Subspace<F>> chain;
  chain.reserve(nmax + 1);
  chain.push_back(zero_space(A));  // unused slot 0 keeps the indexing honest
  chain.push_back(full_space(A));
  for (std::size_t n = 2; n <= nmax; ++n) {
    Subspace<F> next(A);
    for (std::size_t i = 1; i < n; ++i)
      next = subspace_sum(next, prod(chain[i], chain[n - i]));
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace detail

/* chain[n] = A^n for 1 <= n <= nmax (index 0 is a placeholder zero space). */
template <class F>
std::vector<Subspace<F>> power_chain(const AlgebraPtr<F>& A, std::size_t nmax) {
  return detail::power_chain_with(A, nmax,
                                  [](const auto& s, const auto& t) { return subspace_product(s, t); });
}

template <class F>
Subspace<F> power_space(const AlgebraPtr<F>& A, std::size_t n) {
  return std::move(power_chain(A, n)[n]);
}

/* Same recursion with the plus product: chain[n] = (A^+)^n. */
template <class F>
std::vector<Subspace<F>> plus_power_chain(const AlgebraPtr<F>& A, std::size_t nmax) {
  return detail::power_chain_with(
      A, nmax, [](const auto& s, const auto& t) { return subspace_circle_product(s, t); });
}

template <class F>
Subspace<F> plus_power_space(const AlgebraPtr<F>& A, std::size_t n) {
  return std::move(plus_power_chain(A, n)[n]);
}

/* Least subspace containing gens and closed under multiplication. */
template <class F>
Subspace<F> generated_subalgebra(const AlgebraPtr<F>& A, const std::vector<Element<F>>& gens) {
  Subspace<F> s = span_of(A, gens);
  for (;;) {
    Subspace<F> prod = subspace_product(s, s);
    if (s.contains(prod)) return s;
    s = subspace_sum(s, prod);
  }
}

/* Least subspace containing gens with A*S + S*A inside S. */
template <class F>
Subspace<F> generated_ideal(const AlgebraPtr<F>& A, const std::vector<Element<F>>& gens) {
  Subspace<F> s = span_of(A, gens);
  Subspace<F> whole = full_space(A);
  for (;;) {
    Subspace<F> grow = subspace_sum(subspace_product(whole, s), subspace_product(s, whole));
    if (s.contains(grow)) return s;
    s = subspace_sum(s, grow);
  }
}

template <class F>
bool is_subalgebra(const Subspace<F>& S) {
  return S.contains(subspace_product(S, S));
}

template <class F>
bool is_ideal(const Subspace<F>& S) {
  Subspace<F> whole = full_space(S.ambient());
  return S.contains(subspace_product(whole, S)) && S.contains(subspace_product(S, whole));
}

/* Whether the product induced on ambient/S is anticommutative, i.e. every
 * symmetrized product of basis vectors already lies in S. */
template <class F>
bool quotient_anticommutative(const Subspace<F>& S) {
  Subspace<F> whole = full_space(S.ambient());
  return S.contains(subspace_circle_product(whole, whole));
}

/* Least n <= cutoff with A^n = 0, or nullopt if the chain never dies. */
template <class F>
std::optional<std::size_t> nilpotency_index(const AlgebraPtr<F>& A, std::size_t cutoff) {
  if (cutoff == 0) throw Error("nilpotency cutoff must be >= 1");
  std::vector<Subspace<F>> chain;
  chain.push_back(zero_space(A));
  chain.push_back(full_space(A));
  if (chain[1].is_zero()) return 1;  // unreachable for real algebras (dim >= 1)
  for (std::size_t n = 2; n <= cutoff; ++n) {
    Subspace<F> next(A);
    for (std::size_t i = 1; i < n; ++i)
      next = subspace_sum(next, subspace_product(chain[i], chain[n - i]));
    if (next.is_zero()) return n;
    chain.push_back(std::move(next));
  }
  return std::nullopt;
}

}  // namespace nva
