#pragma once

/* Nonmatrix gates.
 *
 * A presented variety is probed against a small class-dependent bank of
 * concrete algebras.  For associative and alternative presentations the
 * designated algebra is M2 (split octonions ride along as a containment
 * diagnostic only); for jordan it is H2 = jordan_sym(2); for noncommutative
 * jordan the bank holds mutations of M2, the quaternions, the octonions, and
 * H2.  Verdict "nonmatrix" means every designated bank algebra is excluded.
 * For noncommutative jordan that is evidence relative to the bank, not a
 * proof — the underlying condition quantifies over all simple quadratic
 * algebras, and no finite bank covers them.  The report says so
 * (bank_limited) rather than overclaiming.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nva/algebra.hpp"
#include "nva/constructions.hpp"
#include "nva/identity.hpp"
#include "nva/variety.hpp"

namespace nva {

template <class F>
struct GateEntry {
  std::string algebra_name;
  AlgebraPtr<F> algebra;
  bool designated = true;  // counts toward the gate verdict
  bool in_variety = false;
  std::string witness_identity;              // source text of the violated identity
  std::optional<Counterexample<F>> witness;  // replayable falsifying assignment
};

template <class F>
struct GateReport {
  bool nonmatrix = false;
  bool bank_limited = false;  // bank-relative evidence (noncommutative jordan)
  std::vector<GateEntry<F>> entries;
};

namespace detail {

template <class F>
GateEntry<F> gate_probe(const VarietyPresentation<F>& V, std::string name, AlgebraPtr<F> A,
                        bool designated) {
  GateEntry<F> e;
  e.algebra_name = std::move(name);
  e.algebra = std::move(A);
  e.designated = designated;
  e.in_variety = true;
  for (const auto& id : V.identities) {
    auto verdict = holds_in(e.algebra, id);
    if (!verdict.holds) {
      e.in_variety = false;
      e.witness_identity = id.source;
      e.witness = std::move(verdict.witness);
      break;
    }
  }
  return e;
}

}  // namespace detail

/* Mutation parameters used when the caller does not supply a sample.  Chosen
 * away from 0, 1 (the algebra and its opposite) and 1/2 (the plus algebra,
 * which is commutative and would never separate anything here). */
template <class F>
std::vector<Scalar_t<F>> default_mutation_sample(const F& field) {
  return {field.from_int(2), field.from_int(-1), field.from_int(3)};
}

template <class F>
GateReport<F> nonmatrix_gate(const VarietyPresentation<F>& V,
                             std::vector<Scalar_t<F>> mutation_sample = {}) {
  const F& field = V.field;
  GateReport<F> rep;
  switch (V.class_tag) {
    case VarietyClass::associative:
    case VarietyClass::alternative:
      rep.entries.push_back(detail::gate_probe(V, "M2", matrix_algebra(2, field), true));
      rep.entries.push_back(
          detail::gate_probe(V, "split octonions", split_octonion_algebra(field), false));
      break;
    case VarietyClass::jordan:
      rep.entries.push_back(detail::gate_probe(V, "H2", jordan_sym(2, field), true));
      break;
    case VarietyClass::ncjordan: {
      rep.bank_limited = true;
      if (mutation_sample.empty()) mutation_sample = default_mutation_sample(field);
      auto M2 = matrix_algebra(2, field);
      for (const auto& lam : mutation_sample)
        rep.entries.push_back(detail::gate_probe(V, "M2 mutation (lambda = " + field.str(lam) + ")",
                                                 mutation_algebra(M2, lam), true));
      rep.entries.push_back(detail::gate_probe(V, "quaternions", quaternion_algebra(field), true));
      rep.entries.push_back(detail::gate_probe(V, "octonions", octonion_algebra(field), true));
      rep.entries.push_back(detail::gate_probe(V, "H2", jordan_sym(2, field), true));
      break;
    }
    case VarietyClass::anticommutative:
    case VarietyClass::custom:
      throw Error("no gate bank is defined for variety class '" +
                  variety_class_name(V.class_tag) + "'");
  }
  rep.nonmatrix = true;
  for (const auto& e : rep.entries)
    if (e.designated && e.in_variety) rep.nonmatrix = false;
  return rep;
}

}  // namespace nva
