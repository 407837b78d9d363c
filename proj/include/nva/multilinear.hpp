#pragma once

/* The degree-n multilinear component of the free nonassociative algebra.
 *
 * A multilinear monomial of degree n is a planar binary tree with n leaves
 * labeled by x1..xn, each exactly once.  Columns are indexed tree-major:
 *
 *   column = tree_rank * n! + permutation_rank
 *
 * where trees are ordered left-heavier first (matching mono_cmp's shape
 * order, so columns within one shape ascend in monomial order) and
 * permutations are ranked lexicographically via Lehmer codes.  The indexing
 * is pure combinatorics -- no field enters -- and is the serialization
 * contract for everything built on top (consequence spans, probe reports).
 */

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nva/linalg.hpp"
#include "nva/poly.hpp"
#include "nva/scalar.hpp"

namespace nva {

namespace detail {

inline std::uint64_t catalan(std::uint32_t k) {
  std::vector<std::uint64_t> cat{1};
  for (std::uint32_t i = 1; i <= k; ++i) {
    std::uint64_t next = 0;
    for (std::uint32_t l = 0; l < i; ++l) next += cat[l] * cat[i - 1 - l];
    cat.push_back(next);
  }
  return cat[k];
}

inline std::uint64_t factorial(std::uint32_t k) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= k; ++i) f *= i;
  return f;
}

/* All shapes with the given leaf count, left subtree bigger first; leaves
 * carry the placeholder name "_". */
inline std::vector<MonoPtr> tree_shapes(std::uint32_t leaves) {
  if (leaves == 1) return {make_var("_")};
  std::vector<MonoPtr> out;
  for (std::uint32_t l = leaves - 1; l >= 1; --l)
    for (const auto& a : tree_shapes(l))
      for (const auto& b : tree_shapes(leaves - l)) out.push_back(make_prod(a, b));
  return out;
}

inline void shape_string(const MonoPtr& m, std::string& out) {
  if (m->is_leaf()) {
    out += '_';
    return;
  }
  out += '(';
  shape_string(m->left, out);
  shape_string(m->right, out);
  out += ')';
}

inline void leaf_names(const MonoPtr& m, std::vector<std::string>& out) {
  if (m->is_leaf()) {
    out.push_back(m->var);
    return;
  }
  leaf_names(m->left, out);
  leaf_names(m->right, out);
}

/* Relabel leaves left-to-right from `names`. */
inline MonoPtr relabel_leaves(const MonoPtr& m, const std::vector<std::string>& names,
                              std::size_t& next) {
  if (m->is_leaf()) return make_var(names[next++]);
  auto l = relabel_leaves(m->left, names, next);
  auto r = relabel_leaves(m->right, names, next);
  return make_prod(std::move(l), std::move(r));
}

inline std::uint64_t lehmer_rank(const std::vector<std::uint32_t>& perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

inline std::vector<std::uint32_t> lehmer_unrank(std::uint64_t rank, std::uint32_t n) {
  std::vector<std::uint32_t> digits(n, 0);
  for (std::uint32_t i = n; i >= 1; --i) {
    digits[i - 1] = static_cast<std::uint32_t>(rank % (n - i + 1));
    rank /= (n - i + 1);
  }
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::uint32_t> perm;
  perm.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    perm.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + digits[i]);
  }
  return perm;
}

}  // namespace detail

class MultilinearSpace {
 public:
  explicit MultilinearSpace(std::uint32_t degree, std::uint64_t budget = 200000)
      : degree_(degree) {
    if (degree == 0) throw Error("multilinear degree must be >= 1");
    std::uint64_t d = detail::factorial(degree) * detail::catalan(degree - 1);
    if (d > budget)
      throw BudgetError("multilinear component of degree " + std::to_string(degree) + " has " +
                        std::to_string(d) + " monomials, over the budget of " +
                        std::to_string(budget));
    dim_ = d;
    shapes_ = detail::tree_shapes(degree);
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
      std::string s;
      detail::shape_string(shapes_[i], s);
      shape_rank_.emplace(std::move(s), i);
    }
  }

  std::uint32_t degree() const { return degree_; }
  std::uint64_t dim() const { return dim_; }
  const std::vector<MonoPtr>& shapes() const { return shapes_; }

  static std::string var_name(std::uint32_t i) { return "x" + std::to_string(i + 1); }

  std::vector<std::string> variables() const {
    std::vector<std::string> v;
    for (std::uint32_t i = 0; i < degree_; ++i) v.push_back(var_name(i));
    return v;
  }

  /* Column of a monomial on x1..xn (each exactly once). */
  std::uint64_t column_of(const MonoPtr& m) const {
    std::string s;
    detail::shape_string(m, s);
    auto it = shape_rank_.find(s);
    if (it == shape_rank_.end() || m->degree != degree_)
      throw Error("monomial degree does not match the component");
    std::vector<std::string> leaves;
    detail::leaf_names(m, leaves);
    std::vector<std::uint32_t> perm;
    std::vector<bool> seen(degree_, false);
    for (const auto& v : leaves) {
      std::uint32_t k = 0;
      bool ok = v.size() >= 2 && v[0] == 'x';
      for (std::size_t p = 1; ok && p < v.size(); ++p) {
        if (v[p] < '0' || v[p] > '9') ok = false;
        k = k * 10 + static_cast<std::uint32_t>(v[p] - '0');
      }
      if (!ok || k < 1 || k > degree_ || seen[k - 1])
        throw Error("monomial is not multilinear on x1..x" + std::to_string(degree_));
      seen[k - 1] = true;
      perm.push_back(k - 1);
    }
    return it->second * detail::factorial(degree_) + detail::lehmer_rank(perm);
  }

  MonoPtr monomial_at(std::uint64_t col) const {
    if (col >= dim_) throw Error("column index out of range");
    std::uint64_t nf = detail::factorial(degree_);
    auto perm = detail::lehmer_unrank(col % nf, degree_);
    std::vector<std::string> names;
    for (auto p : perm) names.push_back(var_name(p));
    std::size_t next = 0;
    return detail::relabel_leaves(shapes_[col / nf], names, next);
  }

  /* All multilinear monomials on an explicit variable list, in column order
   * (trees left-heavier first, leaf sequences in lexicographic rank order of
   * the positions, i.e. the order the list is given in). */
  static std::vector<MonoPtr> monomials_on(const std::vector<std::string>& vars) {
    const std::uint32_t n = static_cast<std::uint32_t>(vars.size());
    std::vector<MonoPtr> out;
    std::uint64_t nf = detail::factorial(n);
    for (const auto& shape : detail::tree_shapes(n))
      for (std::uint64_t r = 0; r < nf; ++r) {
        auto perm = detail::lehmer_unrank(r, n);
        std::vector<std::string> names;
        for (auto p : perm) names.push_back(vars[p]);
        std::size_t next = 0;
        out.push_back(detail::relabel_leaves(shape, names, next));
      }
    return out;
  }

 private:
  std::uint32_t degree_;
  std::uint64_t dim_ = 0;
  std::vector<MonoPtr> shapes_;
  std::map<std::string, std::size_t> shape_rank_;
};

/* A multilinear polynomial on x1..xn as a sparse coordinate row. */
template <class F>
SparseVec<F> component_vector(const MultilinearSpace& space, const NAPoly<F>& p) {
  RowBuilder<F> row;
  for (const auto& [m, c] : p.terms())
    row.add(static_cast<std::uint32_t>(space.column_of(m)), c);
  return row.take();
}

template <class F>
NAPoly<F> component_poly(const F& field, const MultilinearSpace& space, const SparseVec<F>& v) {
  NAPoly<F> p(field);
  for (const auto& [col, c] : v.terms) p.add_term(space.monomial_at(col), c);
  return p;
}

}  // namespace nva
