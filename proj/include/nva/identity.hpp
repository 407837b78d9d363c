#pragma once

/* Identity checking on structure-constant algebras.
 *
 * The pipeline: split an identity into multihomogeneous components (done at
 * construction), fully multilinearize each component (polarize), then sweep
 * every tuple of basis vectors — sufficient by multilinearity.  A failing
 * tuple is mapped back to an assignment for the original variables (sum of
 * the basis witnesses) and re-verified against the original identity, so
 * reported counterexamples are honest.
 */

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nva/algebra.hpp"
#include "nva/poly.hpp"
#include "nva/scalar.hpp"

namespace nva {

/* Tree-structured evaluation of a polynomial under variable -> element. */
template <class F>
Element<F> evaluate(const AlgebraPtr<F>& A, const NAPoly<F>& poly,
                    const std::map<std::string, Element<F>>& assignment) {
  struct Eval {
    const AlgebraPtr<F>& A;
    const std::map<std::string, Element<F>>& assign;
    Element<F> run(const MonoPtr& m) {
      if (m->is_leaf()) {
        auto it = assign.find(m->var);
        if (it == assign.end()) throw Error("unassigned variable '" + m->var + "'");
        return it->second;
      }
      return run(m->left) * run(m->right);
    }
  } ev{A, assignment};
  Element<F> acc = zero_element(A);
  for (const auto& [m, c] : poly.terms()) acc = acc + ev.run(m).scaled(c);
  return acc;
}

/* One fully multilinearized component of an identity. */
template <class F>
struct PolarizedComponent {
  NAPoly<F> poly;   // multilinear
  std::map<std::string, std::vector<std::string>> fresh;  // original var -> fresh names
};

namespace detail {

/* Relabel the occurrences of `var` (left to right) with `names[perm[i]]`. */
inline MonoPtr relabel(const MonoPtr& m, const std::string& var,
                       const std::vector<std::string>& names, const std::vector<std::size_t>& perm,
                       std::size_t& seen) {
  if (m->is_leaf()) {
    if (m->var != var) return m;
    return make_var(names[perm[seen++]]);
  }
  MonoPtr l = relabel(m->left, var, names, perm, seen);
  MonoPtr r = relabel(m->right, var, names, perm, seen);
  if (l == m->left && r == m->right) return m;
  return make_prod(std::move(l), std::move(r));
}

}  // namespace detail

/* Full multilinearization of every component.  Refuses small positive
 * characteristic (0 < char <= component degree), where an identity and its
 * polarization are not equivalent. */
template <class F>
std::vector<PolarizedComponent<F>> polarize(const Identity<F>& id) {
  std::vector<PolarizedComponent<F>> out;
  std::uint64_t ch = id.poly.field().characteristic();
  for (const auto& comp : id.components) {
    std::size_t total = comp.max_degree();
    if (ch != 0 && ch <= total)
      throw Error("field characteristic " + std::to_string(ch) +
                  " is too small to polarize a degree-" + std::to_string(total) + " component");

    auto deg = multidegree(comp.terms().begin()->first);
    std::set<std::string> taken;
    for (const auto& [v, d] : deg) {
      (void)d;
      taken.insert(v);
    }

    PolarizedComponent<F> pc{comp, {}};
    for (const auto& [v, d] : deg) {
      if (d == 1) {
        pc.fresh[v] = {v};
        continue;
      }
      std::vector<std::string> names;
      for (std::size_t i = 1; i <= d; ++i) {
        std::string n = v + "_" + std::to_string(i);
        while (taken.count(n)) n += "'";
        taken.insert(n);
        names.push_back(std::move(n));
      }
      pc.fresh[v] = names;

      NAPoly<F> next(comp.field());
      std::vector<std::size_t> perm(d);
      for (const auto& [m, c] : pc.poly.terms()) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
          std::size_t seen = 0;
          next.add_term(detail::relabel(m, v, names, perm, seen), c);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      pc.poly = std::move(next);
    }
    out.push_back(std::move(pc));
  }
  return out;
}

template <class F>
struct Counterexample {
  /* Assignment to the original variables (sums of basis witnesses); populated
   * and flagged verified when it falsifies the original identity. */
  std::map<std::string, Element<F>> assignment;
  bool falsifies_original = false;
  /* The raw failing tuple on the polarized component. */
  std::map<std::string, Element<F>> basis_assignment;
  std::string component;            // printed form of the failing multilinear component
  std::optional<Element<F>> value;  // nonzero evaluation of that component
};

template <class F>
struct Verdict {
  bool holds = false;
  std::optional<Counterexample<F>> witness;
};

struct HoldsOptions {
  std::uint64_t budget_tuples = 2'000'000;  // cap on dim^degree per component
};

template <class F>
Verdict<F> holds_in(const AlgebraPtr<F>& A, const Identity<F>& id, HoldsOptions opt = {}) {
  const std::uint32_t dim = A->dim();
  for (const auto& pc : polarize(id)) {
    std::vector<std::string> vars;
    for (const auto& [orig, names] : pc.fresh) {
      (void)orig;
      vars.insert(vars.end(), names.begin(), names.end());
    }
    std::sort(vars.begin(), vars.end());

    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (dim != 0 && tuples > opt.budget_tuples / dim + 1) {
        tuples = opt.budget_tuples + 1;
        break;
      }
      tuples *= dim;
    }
    if (tuples > opt.budget_tuples)
      throw BudgetError("basis-tuple sweep needs " + std::to_string(dim) + "^" +
                        std::to_string(vars.size()) + " evaluations, over the budget of " +
                        std::to_string(opt.budget_tuples));

    std::vector<std::uint32_t> idx(vars.size(), 0);
    if (dim == 0) continue;
    for (;;) {
      std::map<std::string, Element<F>> assign;
      for (std::size_t i = 0; i < vars.size(); ++i) assign.emplace(vars[i], basis_element(A, idx[i]));
      Element<F> val = evaluate(A, pc.poly, assign);
      if (!val.is_zero()) {
        Counterexample<F> cx;
        cx.basis_assignment = assign;
        cx.component = poly_str(pc.poly);
        cx.value = val;

        // map back: original variable = sum of its fresh witnesses
        for (const auto& [orig, names] : pc.fresh) {
          Element<F> sum = zero_element(A);
          for (const auto& n : names) sum = sum + assign.at(n);
          cx.assignment.emplace(orig, std::move(sum));
        }
        // the original identity may involve variables outside this component
        for (const auto& v : id.poly.variables())
          if (!cx.assignment.count(v)) cx.assignment.emplace(v, zero_element(A));
        cx.falsifies_original = !evaluate(A, id.poly, cx.assignment).is_zero();

        Verdict<F> verdict;
        verdict.holds = false;
        verdict.witness = std::move(cx);
        return verdict;
      }
      // lexicographic odometer over basis indices
      std::size_t k = vars.size();
      while (k > 0 && ++idx[k - 1] == dim) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return Verdict<F>{true, std::nullopt};
}

}  // namespace nva
