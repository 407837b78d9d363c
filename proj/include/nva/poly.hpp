#pragma once

/* Free nonassociative polynomials.
 *
 * A monomial is a planar binary tree whose leaves carry variable names; no
 * associativity or commutativity is imposed, so (x*y)*z and x*(y*z) are
 * distinct monomials.  Trees are immutable and shared.  A polynomial maps
 * monomials to nonzero scalars of a concrete field.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nva/scalar.hpp"

namespace nva {

struct Mono;
using MonoPtr = std::shared_ptr<const Mono>;

struct Mono {
  std::string var;        // leaf payload; empty for internal nodes
  MonoPtr left, right;    // both set for internal nodes, both null for leaves
  std::size_t degree = 1;  // leaf count, cached

  bool is_leaf() const { return !left; }
};

inline MonoPtr make_var(std::string name) {
  auto m = std::make_shared<Mono>();
  m->var = std::move(name);
  m->degree = 1;
  return m;
}

inline MonoPtr make_prod(MonoPtr l, MonoPtr r) {
  auto m = std::make_shared<Mono>();
  m->degree = l->degree + r->degree;
  m->left = std::move(l);
  m->right = std::move(r);
  return m;
}

/* Total order: by degree, then left-heavier trees first (so (x*y)*z precedes
 * x*(y*z), matching how associators are conventionally written), then
 * recursively.  Shared subtrees short-circuit via pointer equality. */
inline int mono_cmp(const MonoPtr& a, const MonoPtr& b) {
  if (a == b) return 0;
  if (a->degree != b->degree) return a->degree < b->degree ? -1 : 1;
  if (a->is_leaf()) return a->var.compare(b->var);
  if (a->left->degree != b->left->degree) return a->left->degree > b->left->degree ? -1 : 1;
  if (int c = mono_cmp(a->left, b->left)) return c;
  return mono_cmp(a->right, b->right);
}

struct MonoLess {
  bool operator()(const MonoPtr& a, const MonoPtr& b) const { return mono_cmp(a, b) < 0; }
};

/* Fully parenthesized canonical form; the top level keeps its parens so the
 * string embeds verbatim into larger expressions. */
inline std::string mono_str(const MonoPtr& m) {
  if (m->is_leaf()) return m->var;
  return "(" + mono_str(m->left) + "*" + mono_str(m->right) + ")";
}

inline void collect_vars(const MonoPtr& m, std::map<std::string, std::size_t>& deg) {
  if (m->is_leaf()) {
    ++deg[m->var];
    return;
  }
  collect_vars(m->left, deg);
  collect_vars(m->right, deg);
}

inline std::map<std::string, std::size_t> multidegree(const MonoPtr& m) {
  std::map<std::string, std::size_t> deg;
  collect_vars(m, deg);
  return deg;
}

template <class F>
class NAPoly {
 public:
  using K = Scalar_t<F>;
  using Terms = std::map<MonoPtr, K, MonoLess>;

  explicit NAPoly(F field) : field_(std::move(field)) {}

  const F& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const MonoPtr& m, K coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NAPoly& operator+=(const NAPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  NAPoly& operator-=(const NAPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  friend NAPoly operator+(NAPoly a, const NAPoly& b) { return a += b; }
  friend NAPoly operator-(NAPoly a, const NAPoly& b) { return a -= b; }
  NAPoly operator-() const {
    NAPoly out(field_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  NAPoly scaled(const K& c) const {
    NAPoly out(field_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
  }

  friend NAPoly operator*(const NAPoly& a, const NAPoly& b) {
    NAPoly out(a.field_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(make_prod(ma, mb), ca * cb);
    return out;
  }

  friend bool operator==(const NAPoly& a, const NAPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (const auto& [m, c] : b.terms_) {
      if (mono_cmp(ia->first, m) != 0 || !(ia->second == c)) return false;
      ++ia;
    }
    return true;
  }
  friend bool operator!=(const NAPoly& a, const NAPoly& b) { return !(a == b); }

  std::set<std::string> variables() const {
    std::set<std::string> vars;
    for (const auto& [m, c] : terms_) {
      (void)c;
      for (const auto& [v, d] : multidegree(m)) {
        (void)d;
        vars.insert(v);
      }
    }
    return vars;
  }

  /* Every variable appears exactly once in every term. */
  bool is_multilinear() const {
    if (terms_.empty()) return true;
    auto want = multidegree(terms_.begin()->first);
    for (const auto& [v, d] : want)
      if (d != 1) return false;
    for (const auto& [m, c] : terms_) {
      (void)c;
      if (multidegree(m) != want) return false;
    }
    return true;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) {
      (void)c;
      d = std::max(d, m->degree);
    }
    return d;
  }

 private:
  F field_;
  Terms terms_;
};

template <class F>
NAPoly<F> poly_var(const F& field, const std::string& name) {
  NAPoly<F> p(field);
  p.add_term(make_var(name), field.one());
  return p;
}

template <class F>
NAPoly<F> poly_mono(const F& field, const MonoPtr& m) {
  NAPoly<F> p(field);
  p.add_term(m, field.one());
  return p;
}

/* u^(n+1) = u^n * u (principal right powers). */
template <class F>
NAPoly<F> poly_power(const NAPoly<F>& u, std::size_t n) {
  if (n == 0) throw Error("power exponent must be >= 1");
  NAPoly<F> acc = u;
  for (std::size_t i = 1; i < n; ++i) acc = acc * u;
  return acc;
}

namespace detail {

template <class F>
NAPoly<F> substitute_mono(const F& field, const MonoPtr& m,
                          const std::map<std::string, NAPoly<F>>& subs) {
  if (m->is_leaf()) {
    auto it = subs.find(m->var);
    return it != subs.end() ? it->second : poly_mono(field, m);
  }
  return substitute_mono(field, m->left, subs) * substitute_mono(field, m->right, subs);
}

}  // namespace detail

/* Replace variables by polynomials, multiplying out all combinations. */
template <class F>
NAPoly<F> substitute(const NAPoly<F>& p, const std::map<std::string, NAPoly<F>>& subs) {
  NAPoly<F> out(p.field());
  for (const auto& [m, c] : p.terms())
    out += detail::substitute_mono(p.field(), m, subs).scaled(c);
  return out;
}

/* Split into multihomogeneous components (terms grouped by multidegree),
 * ordered by multidegree map for determinism. */
template <class F>
std::vector<NAPoly<F>> homogeneous_components(const NAPoly<F>& p) {
  std::map<std::map<std::string, std::size_t>, NAPoly<F>> groups;
  for (const auto& [m, c] : p.terms()) {
    auto deg = multidegree(m);
    auto it = groups.find(deg);
    if (it == groups.end()) it = groups.emplace(std::move(deg), NAPoly<F>(p.field())).first;
    it->second.add_term(m, c);
  }
  std::vector<NAPoly<F>> out;
  out.reserve(groups.size());
  for (auto& [deg, comp] : groups) {
    (void)deg;
    out.push_back(std::move(comp));
  }
  return out;
}

/* An identity "poly = 0" with its source text and multihomogeneous split. */
template <class F>
struct Identity {
  std::string source;
  NAPoly<F> poly;
  std::vector<NAPoly<F>> components;
};

template <class F>
Identity<F> make_identity(std::string source, NAPoly<F> poly) {
  auto comps = homogeneous_components(poly);
  return Identity<F>{std::move(source), std::move(poly), std::move(comps)};
}

/* Human-readable normal form: terms in monomial order, the outermost parens
 * of each monomial dropped. */
template <class F>
std::string poly_str(const NAPoly<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = c.str();
    std::string piece;
    if (cs == "1") {
      piece = "";
    } else if (cs == "-1") {
      piece = "-";
    } else {
      piece = cs + "*";
    }
    std::string ms = mono_str(m);
    if (!m->is_leaf()) ms = ms.substr(1, ms.size() - 2);  // strip outer parens
    // re-add parens when a coefficient precedes a product, so the string
    // reparses with the same shape
    if (!piece.empty() && piece != "-" && !m->is_leaf()) ms = "(" + ms + ")";
    piece += ms;
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

}  // namespace nva
