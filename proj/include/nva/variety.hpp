#pragma once

/* Varieties presented by identities, and the linear algebra of their
 * multilinear T-ideal components.
 *
 * consequence_span(V, n) spans the degree-n multilinear part of the T-ideal
 * generated by V's identities: polarize every identity, substitute multilinear
 * monomials on disjoint variable blocks, and embed the result at one leaf of
 * every monomial context over the remaining variables.  One plug per context
 * is enough for multilinear components; the generator set is redundant and
 * the echelon form does not care.
 *
 * implies(V, f, n) asks whether f's polarization lies in those spans.
 * admissibility_probe hunts for the least degree m at which every purely-Lie
 * product is congruent to a sum of circles u o v, which is the workable form
 * of "the minus algebra of the relatively free algebra is nilpotent".
 */

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nva/identity.hpp"
#include "nva/multilinear.hpp"
#include "nva/parse.hpp"
#include "nva/poly.hpp"

namespace nva {

enum class VarietyClass { associative, alternative, jordan, ncjordan, anticommutative, custom };

inline std::string variety_class_name(VarietyClass c) {
  switch (c) {
    case VarietyClass::associative: return "associative";
    case VarietyClass::alternative: return "alternative";
    case VarietyClass::jordan: return "jordan";
    case VarietyClass::ncjordan: return "ncjordan";
    case VarietyClass::anticommutative: return "anticommutative";
    case VarietyClass::custom: return "custom";
  }
  throw Error("unknown variety class");
}

inline VarietyClass variety_class_from(const std::string& s) {
  for (auto c : {VarietyClass::associative, VarietyClass::alternative, VarietyClass::jordan,
                 VarietyClass::ncjordan, VarietyClass::anticommutative, VarietyClass::custom})
    if (variety_class_name(c) == s) return c;
  throw Error("unknown variety class '" + s + "'");
}

template <class F>
struct VarietyPresentation {
  F field;
  VarietyClass class_tag = VarietyClass::custom;
  std::vector<Identity<F>> identities;
};

/* The class tag contributes its standard defining identities; extra ones are
 * appended verbatim. */
template <class F>
VarietyPresentation<F> make_variety(const F& field, VarietyClass tag,
                                    const std::vector<std::string>& extra = {}) {
  std::vector<std::string> defining;
  switch (tag) {
    case VarietyClass::associative:
      defining = {"(x,y,z)"};
      break;
    case VarietyClass::alternative:
      defining = {"(x,x,y)", "(y,x,x)"};
      break;
    case VarietyClass::jordan:
      defining = {"[x,y]", "(x^2,y,x)"};
      break;
    case VarietyClass::ncjordan:
      defining = {"(x,y,x)", "(x^2,y,x)"};
      break;
    case VarietyClass::anticommutative:
      defining = {"x^2"};
      break;
    case VarietyClass::custom:
      break;
  }
  VarietyPresentation<F> v{field, tag, {}};
  for (const auto& s : defining) v.identities.push_back(parse_identity(field, s));
  for (const auto& s : extra) v.identities.push_back(parse_identity(field, s));
  return v;
}

template <class F>
struct ConsequenceSpan {
  MultilinearSpace space;
  Echelon<F> matrix;
};

namespace detail {

/* Runs fn over all ways to split `vars` into `d` nonempty ordered blocks. */
template <class Fn>
void ordered_partitions(const std::vector<std::string>& vars, std::uint32_t d, Fn&& fn) {
  const std::size_t s = vars.size();
  std::vector<std::uint32_t> assign(s, 0);
  for (;;) {
    std::vector<std::vector<std::string>> blocks(d);
    for (std::size_t i = 0; i < s; ++i) blocks[assign[i]].push_back(vars[i]);
    bool full = true;
    for (const auto& b : blocks) full &= !b.empty();
    if (full) fn(blocks);
    std::size_t k = s;
    while (k > 0 && ++assign[k - 1] == d) assign[--k] = 0;
    if (k == 0) break;
  }
}

/* Cartesian product of one multilinear monomial per block. */
template <class Fn>
void block_monomials(const std::vector<std::vector<std::string>>& blocks, Fn&& fn) {
  std::vector<std::vector<MonoPtr>> choices;
  for (const auto& b : blocks) choices.push_back(MultilinearSpace::monomials_on(b));
  std::vector<MonoPtr> pick;
  pick.reserve(blocks.size());
  auto rec = [&](auto&& self, std::size_t at) -> void {
    if (at == choices.size()) {
      fn(pick);
      return;
    }
    for (const auto& m : choices[at]) {
      pick.push_back(m);
      self(self, at + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

template <class F>
ConsequenceSpan<F> consequence_span(const VarietyPresentation<F>& V, std::uint32_t n,
                                    std::uint64_t budget = 200000) {
  std::uint64_t ch = V.field.characteristic();
  if (ch != 0 && ch <= n)
    throw Error("characteristic " + std::to_string(ch) +
                " is too small for degree-" + std::to_string(n) + " consequence spans");

  MultilinearSpace space(n, budget);
  Echelon<F> ech(V.field, static_cast<std::size_t>(space.dim()));
  const auto xs = space.variables();
  const std::string hole = "?";

  for (const auto& id : V.identities) {
    for (const auto& comp : id.components) {
      // components above the target degree cannot reach it, so they are
      // skipped before polarization (which would demand a larger field)
      if (comp.max_degree() > n) continue;

      for (const auto& pc : polarize(make_identity(id.source, comp))) {
        const auto var_set = pc.poly.variables();
        std::vector<std::string> ys(var_set.begin(), var_set.end());
        const std::uint32_t d = static_cast<std::uint32_t>(ys.size());
        if (d == 0) continue;

        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
          if (static_cast<std::uint32_t>(std::popcount(mask)) < d) continue;
          std::vector<std::string> inside, outside;
          for (std::uint32_t i = 0; i < n; ++i) ((mask >> i) & 1 ? inside : outside).push_back(xs[i]);

          detail::ordered_partitions(inside, d, [&](const std::vector<std::vector<std::string>>& blocks) {
            detail::block_monomials(blocks, [&](const std::vector<MonoPtr>& pick) {
              std::map<std::string, NAPoly<F>> subs;
              for (std::uint32_t i = 0; i < d; ++i) subs.emplace(ys[i], poly_mono(V.field, pick[i]));
              NAPoly<F> plug = substitute(pc.poly, subs);

              if (outside.empty()) {
                ech.insert(component_vector(space, plug));
                return;
              }
              auto ctx_vars = outside;
              ctx_vars.push_back(hole);
              std::map<std::string, NAPoly<F>> fill{{hole, plug}};
              for (const auto& ctx : MultilinearSpace::monomials_on(ctx_vars))
                ech.insert(component_vector(space, substitute(poly_mono(V.field, ctx), fill)));
            });
          });
        }
      }
    }
  }
  return {std::move(space), std::move(ech)};
}

namespace detail {

/* Renames a multilinear polynomial's variables to x1..xd, in sorted order of
 * the original names.  Consequence spans are closed under variable
 * permutations (the generation scheme is symmetric), so the choice of order
 * cannot affect membership. */
template <class F>
NAPoly<F> canonical_variables(const NAPoly<F>& p) {
  std::map<std::string, NAPoly<F>> subs;
  std::uint32_t i = 0;
  for (const auto& v : p.variables())
    subs.emplace(v, poly_var(p.field(), MultilinearSpace::var_name(i++)));
  return substitute(p, subs);
}

}  // namespace detail

/* Does V's T-ideal contain the target identity, watching degrees up to n? */
template <class F>
bool implies(const VarietyPresentation<F>& V, const Identity<F>& target, std::uint32_t n,
             std::uint64_t budget = 200000) {
  std::map<std::uint32_t, ConsequenceSpan<F>> spans;
  for (const auto& pc : polarize(target)) {
    const std::uint32_t d = static_cast<std::uint32_t>(pc.poly.variables().size());
    if (d > n)
      throw Error("target polarizes into degree " + std::to_string(d) +
                  ", beyond the requested bound " + std::to_string(n));
    auto it = spans.find(d);
    if (it == spans.end()) it = spans.emplace(d, consequence_span(V, d, budget)).first;
    if (!it->second.matrix.contains(
            component_vector(it->second.space, detail::canonical_variables(pc.poly))))
      return false;
  }
  return true;
}

/* A purely-Lie product: any bracketing of x1..xm under (1/2)[u,v], kept with
 * its printable bracket form. */
template <class F>
struct LieProduct {
  std::string printed;
  NAPoly<F> poly;
};

template <class F>
std::vector<LieProduct<F>> lie_products(const F& field, std::uint32_t m) {
  auto h = half(field);
  struct Build {
    const F& field;
    const Scalar_t<F>& h;
    std::pair<std::string, NAPoly<F>> run(const MonoPtr& t) {
      if (t->is_leaf()) return {t->var, poly_var(field, t->var)};
      auto [ls, lp] = run(t->left);
      auto [rs, rp] = run(t->right);
      return {"[" + ls + "," + rs + "]", (lp * rp - rp * lp).scaled(h)};
    }
  } build{field, h};

  std::vector<LieProduct<F>> out;
  std::vector<std::string> vars;
  for (std::uint32_t i = 0; i < m; ++i) vars.push_back(MultilinearSpace::var_name(i));
  for (const auto& mono : MultilinearSpace::monomials_on(vars)) {
    auto [s, p] = build.run(mono);
    out.push_back({std::move(s), std::move(p)});
  }
  return out;
}

/* Span of all u o v = uv + vu over multilinear monomials on complementary
 * variable blocks, inserted into an existing echelon. */
template <class F>
void insert_circle_span(const F& field, const MultilinearSpace& space, Echelon<F>& ech) {
  const std::uint32_t n = space.degree();
  const auto xs = space.variables();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1) || mask == (1u << n) - 1) continue;  // x1 on the left; both sides nonempty
    std::vector<std::string> left, right;
    for (std::uint32_t i = 0; i < n; ++i) ((mask >> i) & 1 ? left : right).push_back(xs[i]);
    for (const auto& u : MultilinearSpace::monomials_on(left))
      for (const auto& v : MultilinearSpace::monomials_on(right)) {
        NAPoly<F> circle(field);
        circle.add_term(make_prod(u, v), field.one());
        circle.add_term(make_prod(v, u), field.one());
        ech.insert(component_vector(space, circle));
      }
  }
}

struct DegreeProbe {
  std::uint32_t degree = 0;
  bool passes = false;
  std::size_t consequence_rank = 0;
  std::size_t combined_rank = 0;  // consequences + circle span
  std::string witness;            // first purely-Lie product outside the span
};

struct AdmissibilityReport {
  std::optional<std::uint32_t> index;  // least degree at which every Lie product is covered
  std::vector<DegreeProbe> degrees;    // one entry per degree 2..max_degree
};

template <class F>
AdmissibilityReport admissibility_probe(const VarietyPresentation<F>& V, std::uint32_t max_degree,
                                        std::uint64_t budget = 200000) {
  std::uint64_t ch = V.field.characteristic();
  if (ch != 0 && ch <= max_degree)
    throw Error("characteristic " + std::to_string(ch) +
                " is too small to probe up to degree " + std::to_string(max_degree));

  AdmissibilityReport report;
  for (std::uint32_t m = 2; m <= max_degree; ++m) {
    auto cs = consequence_span(V, m, budget);
    DegreeProbe probe;
    probe.degree = m;
    probe.passes = true;
    probe.consequence_rank = cs.matrix.rank();

    Echelon<F> combined = cs.matrix;
    insert_circle_span(V.field, cs.space, combined);
    probe.combined_rank = combined.rank();

    for (const auto& lp : lie_products(V.field, m)) {
      if (!combined.contains(component_vector(cs.space, lp.poly))) {
        probe.passes = false;
        probe.witness = lp.printed;
        break;
      }
    }
    if (probe.passes && !report.index) report.index = m;
    report.degrees.push_back(std::move(probe));
  }
  return report;
}

}  // namespace nva
