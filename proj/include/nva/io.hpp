#pragma once

/* On-disk formats.
 *
 * Algebra files ("nva-algebra/1") carry the field, the basis names and the
 * sparse structure table, with every coefficient printed exactly the way the
 * field prints scalars, so a round trip through disk changes nothing.  Recipe
 * files describe how to build an algebra instead of listing its table.
 * Identity files are plain text, one identity per line; presentation files
 * add a `class:` header line in front.
 *
 * JSON parsing and printing is delegated to the vendored nlohmann header;
 * ordered_json keeps object keys in insertion order so that serialized output
 * is byte-stable.
 */

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nva/algebra.hpp"
#include "nva/constructions.hpp"
#include "nva/identity.hpp"
#include "nva/parse.hpp"
#include "nva/subspace.hpp"
#include "nva/variety.hpp"

namespace nva {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Plain file helpers
// ---------------------------------------------------------------------------

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

/* Translate nlohmann's parse exceptions into the library's own error type;
 * the byte offset reported by the parser is kept in the message. */
inline json parse_json_text(std::string_view text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(where + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Field blocks
// ---------------------------------------------------------------------------

inline json field_spec_to_json(const FieldSpec& spec) {
  json j;
  switch (spec.kind) {
    case FieldKind::Q:
      j["kind"] = "Q";
      break;
    case FieldKind::GFp:
      j["kind"] = "GFp";
      j["p"] = spec.p;
      break;
    case FieldKind::QSqrt:
      j["kind"] = "Q-sqrt";
      j["d"] = spec.d;
      break;
  }
  return j;
}

inline FieldSpec field_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error("field block needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "Q") return {FieldKind::Q, 0, 0};
  if (kind == "GFp") {
    if (!j.contains("p") || !j["p"].is_number_unsigned())
      throw Error("GFp field block needs a positive \"p\"");
    return {FieldKind::GFp, j["p"].get<std::uint64_t>(), 0};
  }
  if (kind == "Q-sqrt") {
    if (!j.contains("d") || !j["d"].is_number_integer())
      throw Error("Q-sqrt field block needs an integer \"d\"");
    return {FieldKind::QSqrt, 0, j["d"].get<std::int64_t>()};
  }
  throw Error("unknown field kind '" + kind + "' (expected Q, GFp or Q-sqrt)");
}

// ---------------------------------------------------------------------------
// Elements and subspaces
// ---------------------------------------------------------------------------

template <class F>
json element_to_json(const Element<F>& u) {
  const auto& field = u.algebra()->field();
  json coords = json::array();
  for (const auto& c : u.coords()) coords.push_back(field.str(c));
  return coords;
}

template <class F>
Element<F> element_from_json(const AlgebraPtr<F>& A, const json& j) {
  if (!j.is_array() || j.size() != A->dim())
    throw Error("element needs exactly " + std::to_string(A->dim()) + " coordinate strings");
  std::vector<Scalar_t<F>> coords;
  coords.reserve(A->dim());
  for (const auto& c : j) coords.push_back(A->field().parse(c.get<std::string>()));
  return Element<F>(A, std::move(coords));
}

/* Subspaces are written as their echelonized basis, one row of coordinate
 * strings per basis vector; the representation is canonical for a given
 * subspace, so equal subspaces serialize identically. */
template <class F>
json subspace_to_json(const Subspace<F>& S) {
  json rows = json::array();
  for (const auto& b : S.basis_elements()) rows.push_back(element_to_json(b));
  return rows;
}

// ---------------------------------------------------------------------------
// Algebra files
// ---------------------------------------------------------------------------

inline constexpr std::string_view algebra_format_tag = "nva-algebra/1";

template <class F>
json algebra_to_json(const AlgebraPtr<F>& A) {
  const auto& field = A->field();
  json j;
  j["format"] = algebra_format_tag;
  j["field"] = field_spec_to_json(field.spec());
  j["dim"] = A->dim();
  j["basis"] = A->basis_names();
  json table = json::array();
  // table_ is an ordered map, so the triples come out sorted by (i, j, k)
  for (const auto& [ij, terms] : A->table())
    for (const auto& [k, c] : terms)
      table.push_back(json::array({ij.first, ij.second, k, field.str(c)}));
  j["table"] = table;
  if (A->involution()) {
    json rows = json::array();
    for (const auto& row : *A->involution()) {
      json r = json::array();
      for (const auto& c : row) r.push_back(field.str(c));
      rows.push_back(std::move(r));
    }
    j["involution"] = std::move(rows);
  }
  return j;
}

template <class F>
AlgebraPtr<F> algebra_from_json(const F& field, const json& j) {
  if (!j.is_object() || !j.contains("format") || j["format"] != algebra_format_tag)
    throw Error("not an algebra file (expected \"format\": \"" +
                std::string(algebra_format_tag) + "\")");
  const FieldSpec file_spec = field_spec_from_json(j.at("field"));
  if (!(file_spec.str() == field.spec().str()))
    throw Error("algebra file is over " + file_spec.str() + ", not " + field.spec().str());
  if (!j.contains("dim") || !j.contains("basis") || !j.contains("table"))
    throw Error("algebra file needs \"dim\", \"basis\" and \"table\"");
  const auto dim = j["dim"].get<std::uint32_t>();
  std::vector<std::string> basis = j["basis"].get<std::vector<std::string>>();
  if (basis.size() != dim)
    throw Error("\"dim\" is " + std::to_string(dim) + " but \"basis\" lists " +
                std::to_string(basis.size()) + " names");

  typename StructureAlgebra<F>::Table table;
  for (const auto& entry : j["table"]) {
    if (!entry.is_array() || entry.size() != 4)
      throw Error("table entries are [i, j, k, coefficient] quadruples");
    const auto i = entry[0].get<std::uint32_t>();
    const auto jj = entry[1].get<std::uint32_t>();
    const auto k = entry[2].get<std::uint32_t>();
    table[{i, jj}].emplace_back(k, field.parse(entry[3].get<std::string>()));
  }

  auto A = std::make_shared<StructureAlgebra<F>>(field, std::move(basis), std::move(table));
  if (j.contains("involution")) {
    const auto& rows = j["involution"];
    if (!rows.is_array() || rows.size() != dim)
      throw Error("involution block needs one row per basis vector");
    std::vector<std::vector<Scalar_t<F>>> m;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != dim)
        throw Error("involution rows need one coordinate per basis vector");
      std::vector<Scalar_t<F>> r;
      for (const auto& c : row) r.push_back(field.parse(c.get<std::string>()));
      m.push_back(std::move(r));
    }
    A->set_involution(std::move(m));
  }
  return A;
}

/* Canonical text for an algebra file: two-space indentation, trailing
 * newline.  Writing the same algebra twice yields identical bytes. */
template <class F>
std::string algebra_file_text(const AlgebraPtr<F>& A) {
  return algebra_to_json(A).dump(2) + "\n";
}

template <class F>
AlgebraPtr<F> read_algebra_file(const F& field, const std::string& path) {
  return algebra_from_json(field, parse_json_text(slurp_file(path), path));
}

/* Field spec recorded inside an algebra or recipe file, for dispatching
 * before the full parse. */
inline FieldSpec file_field_spec(const json& j) {
  if (!j.is_object() || !j.contains("field"))
    throw Error("file carries no \"field\" block");
  return field_spec_from_json(j["field"]);
}

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

/* A recipe names a construction and its parameters instead of spelling out a
 * structure table:
 *
 *   {"construct": "cayley-dickson", "mu": ["-1", "-1", "1"], "field": {...}}
 *   {"construct": "matrix",         "n": 2,                  "field": {...}}
 *   {"construct": "jordan-sym",     "n": 2,                  "field": {...}}
 *   {"construct": "quaternion" | "octonion" | "split-octonion", "field": {...}}
 *   {"construct": "zero",           "dim": 4,                "field": {...}}
 *   {"construct": "truncated-ring", "vars": 1, "cap": 3,     "field": {...}}
 *   {"construct": "free-nilpotent", "generators": ["x","y"], "index": 4, ...}
 *   {"construct": "kokoris",        "vars": 2, "cap": 2,
 *                                   "bracket": [["x1","x2",{"x1^2":"1"}]], ...}
 *
 * The kokoris bracket lists {e_i, e_j} for basis monomials by name; the
 * antisymmetric mirror image is filled in automatically and the construction
 * itself validates antisymmetry and the Leibniz rule.
 */
namespace detail {

inline const json& recipe_field(const json& j, const std::string& what, const char* key) {
  if (!j.contains(key)) throw Error("recipe '" + what + "' needs \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

template <class F>
AlgebraPtr<F> build_recipe(const F& field, const json& j) {
  if (!j.is_object() || !j.contains("construct") || !j["construct"].is_string())
    throw Error("recipe needs a \"construct\" string");
  const std::string what = j["construct"].get<std::string>();

  if (what == "matrix")
    return matrix_algebra(detail::recipe_field(j, what, "n").get<std::uint32_t>(), field);
  if (what == "jordan-sym")
    return jordan_sym(detail::recipe_field(j, what, "n").get<std::uint32_t>(), field);
  if (what == "quaternion") return quaternion_algebra(field);
  if (what == "octonion") return octonion_algebra(field);
  if (what == "split-octonion") return split_octonion_algebra(field);
  if (what == "zero")
    return zero_algebra(field, detail::recipe_field(j, what, "dim").get<std::uint32_t>());
  if (what == "cayley-dickson") {
    std::vector<Scalar_t<F>> mus;
    for (const auto& m : detail::recipe_field(j, what, "mu"))
      mus.push_back(field.parse(m.get<std::string>()));
    return cayley_dickson_chain(field, mus);
  }
  if (what == "truncated-ring") {
    TruncatedPolynomials<F> ring(field, detail::recipe_field(j, what, "vars").get<std::uint32_t>(),
                                 detail::recipe_field(j, what, "cap").get<std::uint32_t>());
    return ring.algebra();
  }
  if (what == "free-nilpotent") {
    auto gens = detail::recipe_field(j, what, "generators").get<std::vector<std::string>>();
    return free_nilpotent(field, gens, detail::recipe_field(j, what, "index").get<std::uint32_t>());
  }
  if (what == "kokoris") {
    TruncatedPolynomials<F> ring(field, detail::recipe_field(j, what, "vars").get<std::uint32_t>(),
                                 detail::recipe_field(j, what, "cap").get<std::uint32_t>());
    const auto& base = ring.algebra();
    const std::uint32_t n = base->dim();
    std::vector<std::vector<Element<F>>> bracket(
        n, std::vector<Element<F>>(n, zero_element(base)));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& entry : detail::recipe_field(j, what, "bracket")) {
      if (!entry.is_array() || entry.size() != 3)
        throw Error("bracket entries are [name, name, {name: coefficient}] triples");
      auto resolve = [&](const json& name) {
        auto idx = base->basis_index(name.get<std::string>());
        if (!idx)
          throw Error("bracket names unknown basis monomial '" + name.get<std::string>() + "'");
        return *idx;
      };
      const std::uint32_t a = resolve(entry[0]);
      const std::uint32_t b = resolve(entry[1]);
      if (given[a][b] || given[b][a])
        throw Error("bracket lists the pair (" + base->basis_names()[a] + ", " +
                    base->basis_names()[b] + ") twice");
      Element<F> value = zero_element(base);
      for (const auto& [mono, coeff] : entry[2].items()) {
        auto idx = base->basis_index(mono);
        if (!idx) throw Error("bracket value names unknown basis monomial '" + mono + "'");
        const json& cv = coeff;
        value = value + basis_element(base, *idx).scaled(field.parse(cv.get<std::string>()));
      }
      bracket[a][b] = value;
      bracket[b][a] = -value;
      given[a][b] = given[b][a] = true;
    }
    return kokoris_from_poisson(PoissonData<F>(base, std::move(bracket)));
  }

  throw Error("unknown construct '" + what +
              "' (known: matrix, jordan-sym, quaternion, octonion, split-octonion, zero, "
              "cayley-dickson, truncated-ring, free-nilpotent, kokoris)");
}

// ---------------------------------------------------------------------------
// Identity and presentation files
// ---------------------------------------------------------------------------

namespace detail {

/* Strips a trailing `#` comment and surrounding whitespace. */
inline std::string logical_line(std::string_view raw) {
  auto hash = raw.find('#');
  if (hash != std::string_view::npos) raw = raw.substr(0, hash);
  auto first = raw.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = raw.find_last_not_of(" \t\r");
  return std::string(raw.substr(first, last - first + 1));
}

}  // namespace detail

/* One identity per line; `#` starts a comment; blank lines are skipped.
 * Parse failures carry the 1-based line number. */
template <class F>
std::vector<Identity<F>> read_identity_lines(const F& field, const std::string& text) {
  std::vector<Identity<F>> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::logical_line(raw);
    if (line.empty()) continue;
    try {
      out.push_back(parse_identity(field, line));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline VarietyClass variety_class_from_string(const std::string& s) {
  if (s == "associative") return VarietyClass::associative;
  if (s == "alternative") return VarietyClass::alternative;
  if (s == "jordan") return VarietyClass::jordan;
  if (s == "ncjordan") return VarietyClass::ncjordan;
  if (s == "anticommutative") return VarietyClass::anticommutative;
  if (s == "custom") return VarietyClass::custom;
  throw Error("unknown variety class '" + s +
              "' (known: associative, alternative, jordan, ncjordan, anticommutative, custom)");
}

inline std::string variety_class_str(VarietyClass c) {
  switch (c) {
    case VarietyClass::associative:
      return "associative";
    case VarietyClass::alternative:
      return "alternative";
    case VarietyClass::jordan:
      return "jordan";
    case VarietyClass::ncjordan:
      return "ncjordan";
    case VarietyClass::anticommutative:
      return "anticommutative";
    case VarietyClass::custom:
      return "custom";
  }
  throw Error("corrupt variety class");
}

/* A presentation file is an identity file whose first logical line reads
 * `class: <tag>`.  The class contributes its standard defining identities;
 * the file's own lines are appended after them. */
template <class F>
VarietyPresentation<F> read_presentation(const F& field, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<VarietyPresentation<F>> V;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::logical_line(raw);
    if (line.empty()) continue;
    if (!V) {
      if (line.rfind("class:", 0) != 0)
        throw Error("line " + std::to_string(lineno) +
                    ": presentation files start with a `class:` line");
      V = make_variety(field, variety_class_from_string(detail::logical_line(line.substr(6))));
      continue;
    }
    try {
      V->identities.push_back(parse_identity(field, line));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!V) throw Error("presentation file has no `class:` line");
  return std::move(*V);
}

}  // namespace nva
