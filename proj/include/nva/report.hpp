#pragma once

/* Structured reports ("nva-report/1") and witness replay.
 *
 * A report records what was run (command, inputs with content digests), what
 * came out (verdicts, ranks, witnesses), and how long it took.  Two runs on
 * identical inputs produce byte-identical reports except for the "timings"
 * object, which is the single section excluded from determinism comparisons.
 *
 * Witnesses are written so they can be checked again later without trusting
 * the original run: each carries a "replay" tag naming the fact it certifies,
 * together with the exact data (polynomial text, coordinate vectors) needed
 * to re-derive that fact.  replay_report() walks a report, re-checks every
 * tagged witness and reports any that no longer hold up.
 */

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nva/analysis.hpp"
#include "nva/identity.hpp"
#include "nva/io.hpp"

namespace nva {

inline constexpr std::string_view report_format_tag = "nva-report/1";
inline constexpr std::string_view tool_name = "nva";
inline constexpr std::string_view tool_version = "0.1.0";

// ---------------------------------------------------------------------------
// Digests
// ---------------------------------------------------------------------------

/* FNV-1a over the raw bytes, printed as 16 hex digits.  Good enough to catch
 * a swapped or edited input file; not a cryptographic commitment. */
inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

inline json report_skeleton(const std::string& command) {
  json j;
  j["format"] = report_format_tag;
  j["tool"] = json{{"name", tool_name}, {"version", tool_version}};
  j["command"] = command;
  j["inputs"] = json::array();
  return j;
}

inline void report_add_input(json& rep, const std::string& role, const std::string& path,
                             std::string_view bytes) {
  rep["inputs"].push_back(json{{"role", role}, {"path", path}, {"fnv1a64", fnv1a64_hex(bytes)}});
}

/* The one section determinism comparisons ignore. */
inline json report_without_timings(json rep) {
  rep.erase("timings");
  return rep;
}

// ---------------------------------------------------------------------------
// Witness serialization
// ---------------------------------------------------------------------------

template <class F>
json assignment_to_json(const std::map<std::string, Element<F>>& assignment) {
  json j;
  for (const auto& [var, val] : assignment) j[var] = element_to_json(val);
  return j;
}

template <class F>
std::map<std::string, Element<F>> assignment_from_json(const AlgebraPtr<F>& A, const json& j) {
  std::map<std::string, Element<F>> out;
  for (const auto& [var, val] : j.items()) out.emplace(var, element_from_json(A, val));
  return out;
}

/* An identity-evaluation witness: the printed multilinear component together
 * with the tuple that makes it nonzero, and (when verified) an assignment
 * falsifying the identity as originally written. */
template <class F>
json witness_to_json(const std::string& identity_src, const Counterexample<F>& w) {
  json j;
  j["replay"] = "identity-eval";
  j["identity"] = identity_src;
  j["component"] = w.component;
  j["basis_assignment"] = assignment_to_json(w.basis_assignment);
  if (w.value) j["value"] = element_to_json(*w.value);
  j["falsifies_original"] = w.falsifies_original;
  if (w.falsifies_original) j["assignment"] = assignment_to_json(w.assignment);
  return j;
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct ReplayOutcome {
  std::size_t total = 0;
  std::vector<std::string> failures;  // one line per witness that failed to replay
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void collect_replayable(const json& node, std::vector<const json*>& out) {
  if (node.is_object()) {
    if (node.contains("replay")) out.push_back(&node);
    for (const auto& [key, value] : node.items()) {
      (void)key;
      collect_replayable(value, out);
    }
  } else if (node.is_array()) {
    for (const auto& value : node) collect_replayable(value, out);
  }
}

template <class F>
void replay_one(const F& field, const AlgebraPtr<F>& fallback, const json& w,
                std::string& why) {
  const std::string kind = w.at("replay").get<std::string>();
  AlgebraPtr<F> A = fallback;
  if (w.contains("algebra")) A = algebra_from_json(field, w["algebra"]);
  if (!A) {
    why = "witness carries no algebra and the report names no algebra input";
    return;
  }

  if (kind == "identity-eval") {
    auto component = parse_identity(field, w.at("component").get<std::string>());
    auto tuple = assignment_from_json(A, w.at("basis_assignment"));
    auto got = evaluate(A, component.poly, tuple);
    if (got.is_zero()) {
      why = "component evaluates to zero on the stored tuple";
      return;
    }
    if (w.contains("value") && !(element_to_json(got) == w["value"])) {
      why = "component value differs from the recorded one";
      return;
    }
    if (w.value("falsifies_original", false)) {
      auto original = parse_identity(field, w.at("identity").get<std::string>());
      auto assignment = assignment_from_json(A, w.at("assignment"));
      if (evaluate(A, original.poly, assignment).is_zero()) {
        why = "original identity evaluates to zero on the stored assignment";
        return;
      }
    }
    return;
  }

  if (kind == "nilpotent-sum") {
    auto u = element_from_json(A, w.at("u"));
    auto v = element_from_json(A, w.at("v"));
    if (!is_nilpotent_element(u).nilpotent || !is_nilpotent_element(v).nilpotent)
      why = "a summand is no longer nilpotent";
    else if (is_nilpotent_element(u + v).nilpotent)
      why = "the sum is nilpotent after all";
    return;
  }

  if (kind == "nilpotent-ideal") {
    auto u = element_from_json(A, w.at("u"));
    auto m = element_from_json(A, w.at("multiplier"));
    if (!is_nilpotent_element(u).nilpotent)
      why = "the generator is no longer nilpotent";
    else if (is_nilpotent_element(u * m).nilpotent && is_nilpotent_element(m * u).nilpotent)
      why = "both products with the multiplier are nilpotent after all";
    return;
  }

  if (kind == "non-nil-element") {
    auto u = element_from_json(A, w.at("u"));
    if (is_nilpotent_element(u).nilpotent) why = "the element is nilpotent after all";
    return;
  }

  if (kind == "chain-escape") {
    const auto n = w.at("n").get<std::uint32_t>();
    auto u = element_from_json(A, w.at("u"));
    auto rep = operator_chain_span_check(A, n);
    if (!power_space(A, static_cast<std::size_t>(1) << n).contains(u))
      why = "the element is not in the power it claims to witness";
    else if (rep.chain_span.contains(u))
      why = "the chain span contains the element after all";
    return;
  }

  why = "unknown replay kind '" + kind + "'";
}

}  // namespace detail

/* Re-checks every tagged witness in a report.  `fallback` is the algebra the
 * report was about (witnesses carrying their own inline algebra ignore it);
 * pass nullptr when every witness is self-contained. */
template <class F>
ReplayOutcome replay_report(const F& field, const AlgebraPtr<F>& fallback, const json& rep) {
  std::vector<const json*> witnesses;
  detail::collect_replayable(rep, witnesses);
  ReplayOutcome out;
  out.total = witnesses.size();
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    std::string why;
    try {
      detail::replay_one(field, fallback, *witnesses[i], why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!why.empty())
      out.failures.push_back("witness " + std::to_string(i + 1) + ": " + why);
  }
  return out;
}

}  // namespace nva
