#ifndef NVA_TESTS_HELPERS_HPP
#define NVA_TESTS_HELPERS_HPP

/* Shared fixtures for the test suites.  Everything here is built directly
 * from first principles (index formulas, hand-expanded tables) so it can
 * serve as an independent oracle for the library's own constructions. */

#include <random>
#include <string>
#include <vector>

#include "nva/algebra.hpp"

namespace nva::testing {

/* n x n matrix units under e_ab e_cd = delta_bc e_ad; basis order
 * e11, e12, .., e1n, e21, ... */
template <class F>
typename StructureAlgebra<F>::Table matrix_units_table(const F& field, std::uint32_t n) {
  typename StructureAlgebra<F>::Table t;
  auto idx = [n](std::uint32_t r, std::uint32_t c) { return r * n + c; };
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d)
          if (b == c) t[{idx(a, b), idx(c, d)}] = {{idx(a, d), field.one()}};
  return t;
}

template <class F>
std::vector<std::string> matrix_units_names(std::uint32_t n) {
  std::vector<std::string> names;
  for (std::uint32_t r = 1; r <= n; ++r)
    for (std::uint32_t c = 1; c <= n; ++c)
      names.push_back("e" + std::to_string(r) + std::to_string(c));
  return names;
}

template <class F>
AlgebraPtr<F> make_m2(const F& field) {
  return make_algebra<F>(field, matrix_units_names<F>(2), matrix_units_table(field, 2));
}

/* Non-unital F[t]/(t^k) truncation: basis t, t^2, .., t^{k-1}. */
template <class F>
AlgebraPtr<F> make_tspan(const F& field, std::uint32_t k) {
  std::vector<std::string> names;
  for (std::uint32_t a = 1; a < k; ++a)
    names.push_back(a == 1 ? "t" : "t^" + std::to_string(a));
  typename StructureAlgebra<F>::Table t;
  for (std::uint32_t a = 1; a < k; ++a)
    for (std::uint32_t b = 1; b < k; ++b)
      if (a + b < k) t[{a - 1, b - 1}] = {{a + b - 1, field.one()}};
  return make_algebra<F>(field, std::move(names), std::move(t));
}

/* 4-dimensional nilpotent Kokoris algebra: span(a,b,c,d) with
 * a*b = c, b*a = -c, every other product zero. */
template <class F>
AlgebraPtr<F> make_k4(const F& field) {
  typename StructureAlgebra<F>::Table t;
  t[{0, 1}] = {{2, field.one()}};
  t[{1, 0}] = {{2, -field.one()}};
  return make_algebra<F>(field, {"a", "b", "c", "d"}, std::move(t));
}

/* Unital 4-dimensional Kokoris algebra F1 + span(a,b,c): 1 is a unit,
 * a*b = c, b*a = -c, all other products of a,b,c vanish. */
template <class F>
AlgebraPtr<F> make_u4(const F& field) {
  typename StructureAlgebra<F>::Table t;
  const auto one = field.one();
  t[{0, 0}] = {{0, one}};
  for (std::uint32_t i = 1; i < 4; ++i) {
    t[{0, i}] = {{i, one}};
    t[{i, 0}] = {{i, one}};
  }
  t[{1, 2}] = {{3, one}};
  t[{2, 1}] = {{3, -one}};
  return make_algebra<F>(field, {"1", "a", "b", "c"}, std::move(t));
}

template <class F>
Element<F> random_element(const AlgebraPtr<F>& A, std::mt19937_64& rng, long long spread = 5) {
  std::vector<Scalar_t<F>> c;
  for (std::uint32_t i = 0; i < A->dim(); ++i)
    c.push_back(A->field().from_int(static_cast<long long>(rng() % (2 * spread + 1)) - spread));
  return Element<F>(A, std::move(c));
}

}  // namespace nva::testing

#endif  // NVA_TESTS_HELPERS_HPP
