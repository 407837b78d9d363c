#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "helpers.hpp"
#include "nva/identity.hpp"
#include "nva/parse.hpp"

using namespace nva;
using namespace nva::testing;

TEST_CASE("evaluate walks the monomial trees") {
  FieldQ Q;
  auto M2 = make_m2(Q);
  auto e11 = basis_element(M2, 0), e12 = basis_element(M2, 1), e21 = basis_element(M2, 2),
       e22 = basis_element(M2, 3);

  auto comm = parse_identity(Q, "[x,y]").poly;
  CHECK(evaluate(M2, comm, {{"x", e12}, {"y", e21}}) == e11 - e22);
  CHECK(evaluate(M2, comm, {{"x", zero_element(M2)}, {"y", e21}}).is_zero());

  auto sq = parse_identity(Q, "[x,y]^2").poly;
  CHECK(evaluate(M2, sq, {{"x", e12}, {"y", e21}}) == e11 + e22);

  CHECK_THROWS_AS(evaluate(M2, comm, {{"x", e12}}), Error);
}

TEST_CASE("polarizing a square") {
  FieldQ Q;
  auto id = parse_identity(Q, "x^2");
  auto pcs = polarize(id);
  REQUIRE(pcs.size() == 1);
  auto x1 = poly_var(Q, "x_1"), x2 = poly_var(Q, "x_2");
  CHECK(pcs[0].poly == x1 * x2 + x2 * x1);
  CHECK(pcs[0].fresh.at("x") == std::vector<std::string>{"x_1", "x_2"});
  CHECK(pcs[0].poly.is_multilinear());
}

TEST_CASE("polarizing flexibility") {
  FieldQ Q;
  auto pcs = polarize(parse_identity(Q, "(x,y,x)"));
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].poly == parse_identity(Q, "(x_1,y,x_2) + (x_2,y,x_1)").poly);
  // untouched linear variable keeps its name
  CHECK(pcs[0].fresh.at("y") == std::vector<std::string>{"y"});
}

TEST_CASE("polarizing a mixed-degree identity") {
  FieldQ Q;
  auto pcs = polarize(parse_identity(Q, "[x,y] o y"));
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].poly == parse_identity(Q, "([x,y_1] o y_2) + ([x,y_2] o y_1)").poly);
}

TEST_CASE("multiple components polarize independently") {
  FieldQ Q;
  auto pcs = polarize(parse_identity(Q, "x^2 + x*y"));
  REQUIRE(pcs.size() == 2);
  CHECK(pcs[0].poly == parse_identity(Q, "x*y").poly);    // already multilinear
  CHECK(pcs[1].poly == parse_identity(Q, "x_1*x_2 + x_2*x_1").poly);
}

TEST_CASE("fresh names dodge collisions") {
  FieldQ Q;
  auto pcs = polarize(parse_identity(Q, "(x^2) * x_1"));
  REQUIRE(pcs.size() == 1);
  // x gets split; the existing x_1 forces primes
  auto vars = pcs[0].poly.variables();
  CHECK(vars.count("x_1"));
  CHECK(vars.count("x_1'"));
  CHECK(vars.count("x_2"));
  CHECK(pcs[0].poly.is_multilinear());
}

TEST_CASE("small characteristic is refused, large is fine") {
  FieldGFp F3(3);
  CHECK_THROWS_AS(polarize(parse_identity(F3, "x^3")), Error);
  CHECK_THROWS_AS(polarize(parse_identity(F3, "x^2 + x^3")), Error);
  CHECK_NOTHROW(polarize(parse_identity(F3, "x^2")));

  FieldGFp F5(5);
  auto pcs = polarize(parse_identity(F5, "x^3"));
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].poly.size() == 6);  // 3! relabelings of ((x*x)*x)
}

TEST_CASE("flexibility holds in associative algebras") {
  FieldQ Q;
  auto M2 = make_m2(Q);
  CHECK(holds_in(M2, parse_identity(Q, "(x,y,x)")).holds);
  CHECK(holds_in(M2, parse_identity(Q, "(x,y,z)")).holds);
  // commutativity of course fails
  auto v = holds_in(M2, parse_identity(Q, "[x,y]"));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->falsifies_original);
}

TEST_CASE("squared commutator fails in M2 with the lex-first witness") {
  FieldQ Q;
  auto M2 = make_m2(Q);
  auto e11 = basis_element(M2, 0), e12 = basis_element(M2, 1), e21 = basis_element(M2, 2);

  auto v = holds_in(M2, parse_identity(Q, "[x,y]^2"));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  const auto& w = *v.witness;

  // lexicographically first failing basis tuple: (x_1,x_2,y_1,y_2) = (e11,e11,e12,e21)
  CHECK(w.basis_assignment.at("x_1") == e11);
  CHECK(w.basis_assignment.at("x_2") == e11);
  CHECK(w.basis_assignment.at("y_1") == e12);
  CHECK(w.basis_assignment.at("y_2") == e21);

  // mapped back: x = 2*e11, y = e12 + e21, and that falsifies the original
  CHECK(w.assignment.at("x") == e11.scaled(Q.from_int(2)));
  CHECK(w.assignment.at("y") == e12 + e21);
  CHECK(w.falsifies_original);
  auto sq = parse_identity(Q, "[x,y]^2").poly;
  CHECK_FALSE(evaluate(M2, sq, w.assignment).is_zero());
}

TEST_CASE("witnesses replay against the reported component") {
  FieldQ Q;
  auto T = make_tspan(Q, 3);
  // t*t = t^2 != 0, so x^2 = 0 fails; the component witness must evaluate nonzero
  auto v = holds_in(T, parse_identity(Q, "x^2"));
  REQUIRE_FALSE(v.holds);
  const auto& w = *v.witness;
  auto comp = parse_identity(Q, w.component).poly;
  CHECK_FALSE(evaluate(T, comp, w.basis_assignment).is_zero());
  CHECK(w.value.has_value());
  CHECK(evaluate(T, comp, w.basis_assignment) == *w.value);
}

TEST_CASE("polarization sees failures invisible to plain basis sweeps") {
  FieldQ Q;
  // a*b = c with b*a = 0: every BASIS vector squares to zero, but
  // (a+b)^2 = c, so x^2 = 0 fails only on sums — exactly what the
  // multilinearized sweep is for
  using Tab = StructureAlgebra<FieldQ>::Table;
  Tab tab;
  tab[{0, 1}] = {{2, Q.one()}};
  auto A = make_algebra<FieldQ>(Q, {"a", "b", "c"}, std::move(tab));
  for (std::uint32_t i = 0; i < 3; ++i)
    CHECK(element_power(basis_element(A, i), 2).is_zero());

  auto v = holds_in(A, parse_identity(Q, "x^2"));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->falsifies_original);
  CHECK(v.witness->assignment.at("x") == basis_element(A, 0) + basis_element(A, 1));
  auto sq = parse_identity(Q, "x^2").poly;
  CHECK(evaluate(A, sq, v.witness->assignment) == basis_element(A, 2));

  // by contrast x^2 = 0 HOLDS throughout an anticommutative table
  CHECK(holds_in(make_k4(Q), parse_identity(Q, "x^2")).holds);
}

TEST_CASE("budget cap reports instead of grinding") {
  FieldQ Q;
  auto M2 = make_m2(Q);
  HoldsOptions opt;
  opt.budget_tuples = 100;  // 4^4 = 256 tuples needed for [x,y]^2
  CHECK_THROWS_AS(holds_in(M2, parse_identity(Q, "[x,y]^2"), opt), BudgetError);
  // generous budget passes
  opt.budget_tuples = 1000;
  CHECK_FALSE(holds_in(M2, parse_identity(Q, "[x,y]^2"), opt).holds);
}

namespace {

/* Exhaustive oracle: evaluate the identity on every tuple of elements with
 * coordinates in {0,1,2}.  For components of per-variable degree <= 2 over a
 * big prime field this grid decides the identity exactly, giving a check of
 * the polarization pipeline that shares none of its code. */
template <class F>
bool grid_oracle(const AlgebraPtr<F>& A, const Identity<F>& id) {
  auto var_set = id.poly.variables();
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  const std::uint32_t d = A->dim();
  std::size_t points = 1;
  for (std::uint32_t i = 0; i < d; ++i) points *= 3;

  std::vector<Element<F>> grid;
  grid.reserve(points);
  for (std::size_t code = 0; code < points; ++code) {
    std::vector<Scalar_t<F>> coords(d, A->field().zero());
    std::size_t c = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      coords[i] = A->field().from_int(static_cast<long long>(c % 3));
      c /= 3;
    }
    grid.emplace_back(A, std::move(coords));
  }

  std::map<std::string, Element<F>> assign;
  std::vector<typename std::map<std::string, Element<F>>::iterator> slots;
  for (const auto& v : vars) slots.push_back(assign.emplace(v, grid[0]).first);

  std::vector<std::size_t> codes(vars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) slots[i]->second = grid[codes[i]];
    if (!evaluate(A, id.poly, assign).is_zero()) return false;
    std::size_t k = vars.size();
    while (k > 0 && ++codes[k - 1] == points) codes[--k] = 0;
    if (k == 0) return true;
  }
}

template <class F>
AlgebraPtr<F> random_table(const F& field, std::uint32_t dim, std::mt19937_64& rng,
                           bool symmetrize, bool zero) {
  typename StructureAlgebra<F>::Table tab;
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < dim; ++i) names.push_back("g" + std::to_string(i + 1));
  if (!zero) {
    for (std::uint32_t i = 0; i < dim; ++i)
      for (std::uint32_t j = 0; j < dim; ++j) {
        std::vector<std::pair<std::uint32_t, Scalar_t<F>>> terms;
        for (std::uint32_t k = 0; k < dim; ++k) {
          auto c = field.from_int(static_cast<long long>(rng() % 3) - 1);
          if (!c.is_zero()) terms.emplace_back(k, c);
        }
        if (!terms.empty()) tab[{i, j}] = std::move(terms);
      }
    if (symmetrize) {
      typename StructureAlgebra<F>::Table sym;
      for (std::uint32_t i = 0; i < dim; ++i)
        for (std::uint32_t j = 0; j < dim; ++j) {
          RowBuilder<F> acc;
          for (auto* src : {&tab}) {
            auto it = src->find({i, j});
            if (it != src->end())
              for (const auto& [k, c] : it->second) acc.add(k, c);
            it = src->find({j, i});
            if (it != src->end())
              for (const auto& [k, c] : it->second) acc.add(k, c);
          }
          auto row = acc.take();
          if (!row.terms.empty())
            sym[{i, j}] = std::vector<std::pair<std::uint32_t, Scalar_t<F>>>(row.terms.begin(),
                                                                             row.terms.end());
        }
      tab = std::move(sym);
    }
  }
  return make_algebra<F>(field, std::move(names), std::move(tab));
}

}  // namespace

TEST_CASE("polarization agrees with the exhaustive grid oracle") {
  FieldGFp F(101);
  std::mt19937_64 rng(2026);

  const std::vector<std::string> fixtures = {
      "x^2",        "[x,y]",        "x o y",           "(x,y,x)",      "(x,y,z)",
      "[x,y]^2",    "[[x,y],x]",    "[x,y] o y",       "J(x,y,z)",     "jassoc(x,y,x)",
  };

  int agreements = 0;
  for (int t = 0; t < 20; ++t) {
    std::uint32_t dim = (t % 5 == 0) ? 3 : 2;
    bool zero = t % 7 == 0;
    bool symmetrize = t % 2 == 0;
    auto A = random_table(F, dim, rng, symmetrize, zero);
    for (const auto& src : fixtures) {
      auto id = parse_identity(F, src);
      bool expect = grid_oracle(A, id);
      bool got = holds_in(A, id).holds;
      INFO("algebra " << t << ", identity " << src);
      CHECK(got == expect);
      agreements += (got == expect);
    }
  }
  CHECK(agreements == 200);
}
