#ifndef NVA_LINALG_HPP
#define NVA_LINALG_HPP

/* Sparse exact linear algebra: row vectors, an incremental reduced
 * row-echelon form, and small solvers.
 *
 * The echelon form here is the canonicalization that subspace equality
 * relies on: rows are monic, sorted by pivot column, and every pivot column
 * is eliminated from all other rows.  Two spans are equal iff their Echelon
 * rows compare equal entry-by-entry, so "same subspace" is a plain ==.
 *
 * Rows are kept sparse (sorted (column, coefficient) pairs) because the
 * interesting workloads are either tiny and dense (structure tables of
 * dimension <= 16) or large and very sparse (monomial spans of free
 * nilpotent algebras, multilinear identity components).
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nva/scalar.hpp"

namespace nva {

/* Sorted-by-column sparse vector; no explicit zero entries. */
template <class F>
struct SparseVec {
  using K = Scalar_t<F>;
  std::vector<std::pair<std::uint32_t, K>> terms;

  bool empty() const { return terms.empty(); }
  std::uint32_t lead() const { return terms.front().first; }
  const K& lead_coeff() const { return terms.front().second; }

  const K* at(std::uint32_t col) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), col,
                               [](const auto& t, std::uint32_t c) { return t.first < c; });
    if (it == terms.end() || it->first != col) return nullptr;
    return &it->second;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms == b.terms; }
};

/* Builds a SparseVec from unordered (col, coeff) contributions, combining
 * duplicates and dropping zeros. */
template <class F>
class RowBuilder {
 public:
  using K = Scalar_t<F>;

  void add(std::uint32_t col, K coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = acc_.try_emplace(col, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second.is_zero()) acc_.erase(it);
    }
  }

  SparseVec<F> take() {
    SparseVec<F> r;
    r.terms.reserve(acc_.size());
    for (auto& [c, v] : acc_) r.terms.emplace_back(c, std::move(v));
    acc_.clear();
    return r;
  }

 private:
  std::map<std::uint32_t, K> acc_;
};

/* r += c * s, merging sorted term lists. */
template <class F>
void axpy(SparseVec<F>& r, const Scalar_t<F>& c, const SparseVec<F>& s) {
  if (c.is_zero() || s.empty()) return;
  std::vector<std::pair<std::uint32_t, Scalar_t<F>>> out;
  out.reserve(r.terms.size() + s.terms.size());
  std::size_t i = 0, j = 0;
  while (i < r.terms.size() || j < s.terms.size()) {
    if (j == s.terms.size() || (i < r.terms.size() && r.terms[i].first < s.terms[j].first)) {
      out.push_back(std::move(r.terms[i++]));
    } else if (i == r.terms.size() || s.terms[j].first < r.terms[i].first) {
      out.emplace_back(s.terms[j].first, c * s.terms[j].second);
      if (out.back().second.is_zero()) out.pop_back();
      ++j;
    } else {
      auto v = r.terms[i].second + c * s.terms[j].second;
      if (!v.is_zero()) out.emplace_back(r.terms[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.terms = std::move(out);
}

template <class F>
void scale(SparseVec<F>& r, const Scalar_t<F>& c) {
  if (c.is_zero()) {
    r.terms.clear();
    return;
  }
  for (auto& [col, v] : r.terms) v = v * c;
}

template <class F>
std::vector<Scalar_t<F>> to_dense(const F& field, const SparseVec<F>& r, std::size_t ncols) {
  std::vector<Scalar_t<F>> out(ncols, field.zero());
  for (const auto& [c, v] : r.terms) out[c] = v;
  return out;
}

template <class F>
SparseVec<F> to_sparse(const std::vector<Scalar_t<F>>& dense) {
  SparseVec<F> r;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) r.terms.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  return r;
}

/* Incrementally maintained reduced row-echelon form. */
template <class F>
class Echelon {
 public:
  using K = Scalar_t<F>;

  Echelon(F field, std::size_t ncols) : field_(std::move(field)), ncols_(ncols) {}

  const F& field() const { return field_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  /* Rows sorted by pivot column; monic; pivot columns zero elsewhere. */
  const std::vector<SparseVec<F>>& rows() const { return rows_; }

  /* Residue of r modulo the span: all pivot columns eliminated. */
  SparseVec<F> reduce(SparseVec<F> r) const {
    for (;;) {
      const std::pair<std::uint32_t, K>* hit = nullptr;
      for (const auto& t : r.terms) {
        if (pivot_row_.count(t.first)) {
          hit = &t;
          break;
        }
      }
      if (!hit) return r;
      axpy(r, -hit->second, rows_[pivot_row_.at(hit->first)]);
    }
  }

  bool contains(const SparseVec<F>& r) const { return reduce(r).empty(); }

  /* Returns true if the row enlarged the span. */
  bool insert(SparseVec<F> r) {
    r = reduce(std::move(r));
    if (r.empty()) return false;
    scale(r, r.lead_coeff().inverse());
    std::uint32_t piv = r.lead();
    // keep reduced form: clear the new pivot column from existing rows
    for (auto& row : rows_) {
      if (const K* c = row.at(piv)) {
        K coeff = *c;
        axpy(row, -coeff, r);
      }
    }
    std::size_t idx = rows_.size();
    rows_.push_back(std::move(r));
    pivot_row_[piv] = idx;
    resort();
    return true;
  }

  bool insert_all(const std::vector<SparseVec<F>>& rs) {
    bool grew = false;
    for (const auto& r : rs) grew |= insert(r);
    return grew;
  }

  friend bool operator==(const Echelon& a, const Echelon& b) {
    return a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
  }

 private:
  void resort() {
    std::sort(rows_.begin(), rows_.end(),
              [](const SparseVec<F>& a, const SparseVec<F>& b) { return a.lead() < b.lead(); });
    pivot_row_.clear();
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].lead()] = i;
  }

  F field_;
  std::size_t ncols_;
  std::vector<SparseVec<F>> rows_;
  std::map<std::uint32_t, std::size_t> pivot_row_;
};

/* Solves the linear system rows * x = rhs (one equation per row).  Free
 * unknowns are set to zero.  Returns nullopt when inconsistent. */
template <class F>
std::optional<std::vector<Scalar_t<F>>> solve_linear(const F& field,
                                                     std::vector<SparseVec<F>> equations,
                                                     const std::vector<Scalar_t<F>>& rhs,
                                                     std::size_t nunknowns) {
  // augmented column sits past all unknowns so pivots prefer unknowns
  const std::uint32_t aug = static_cast<std::uint32_t>(nunknowns);
  Echelon<F> ech(field, nunknowns + 1);
  for (std::size_t i = 0; i < equations.size(); ++i) {
    SparseVec<F> row = std::move(equations[i]);
    if (!rhs[i].is_zero()) row.terms.emplace_back(aug, rhs[i]);
    ech.insert(std::move(row));
  }
  std::vector<Scalar_t<F>> x(nunknowns, field.zero());
  for (const auto& row : ech.rows()) {
    if (row.lead() == aug) return std::nullopt;  // 0 = nonzero
    if (const auto* b = row.at(aug)) x[row.lead()] = *b;
  }
  return x;
}

/* Basis of the kernel of the matrix whose rows are `rows` (acting on column
 * vectors of length ncols).  Returned vectors are dense. */
template <class F>
std::vector<std::vector<Scalar_t<F>>> kernel_basis(const F& field,
                                                   const std::vector<SparseVec<F>>& rows,
                                                   std::size_t ncols) {
  Echelon<F> ech(field, ncols);
  for (const auto& r : rows) ech.insert(r);
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& r : ech.rows()) is_pivot[r.lead()] = true;
  std::vector<std::vector<Scalar_t<F>>> basis;
  for (std::uint32_t freecol = 0; freecol < ncols; ++freecol) {
    if (is_pivot[freecol]) continue;
    std::vector<Scalar_t<F>> v(ncols, field.zero());
    v[freecol] = field.one();
    for (const auto& r : ech.rows()) {
      if (const auto* c = r.at(freecol)) v[r.lead()] = -*c;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace nva

#endif  // NVA_LINALG_HPP
