#include <catch2/catch_amalgamated.hpp>

#include "nva/gate.hpp"
#include "nva/parse.hpp"

using namespace nva;
using Catch::Matchers::ContainsSubstring;

/* Gate soundness: every "excluded" verdict must ship a witness that replays.
 * The printed multilinear component re-parses and re-evaluates to the stored
 * nonzero value, and when the folded-back assignment falsifies the original
 * identity, that evaluation is re-checked too. */
template <class F>
static void check_replayable(const GateReport<F>& rep, const F& field) {
  for (const auto& e : rep.entries) {
    if (e.in_variety) {
      CHECK(e.witness_identity.empty());
      CHECK_FALSE(e.witness.has_value());
      continue;
    }
    REQUIRE(e.witness.has_value());
    const auto& w = *e.witness;
    REQUIRE(w.value.has_value());
    CHECK_FALSE(w.value->is_zero());
    auto comp = parse_identity(field, w.component);
    CHECK(evaluate(e.algebra, comp.poly, w.basis_assignment) == *w.value);
    if (w.falsifies_original) {
      auto orig = parse_identity(field, e.witness_identity);
      CHECK_FALSE(evaluate(e.algebra, orig.poly, w.assignment).is_zero());
    }
  }
}

TEST_CASE("commutativity gates M2 out") {
  FieldQ Q;
  auto V = make_variety(Q, VarietyClass::associative, {"[x,y]"});
  auto rep = nonmatrix_gate(V);

  CHECK(rep.nonmatrix);
  CHECK_FALSE(rep.bank_limited);
  REQUIRE(rep.entries.size() == 2);

  CHECK(rep.entries[0].algebra_name == "M2");
  CHECK(rep.entries[0].designated);
  CHECK_FALSE(rep.entries[0].in_variety);
  CHECK(rep.entries[0].witness_identity == "[x,y]");

  CHECK(rep.entries[1].algebra_name == "split octonions");
  CHECK_FALSE(rep.entries[1].designated);
  CHECK_FALSE(rep.entries[1].in_variety);

  check_replayable(rep, Q);
}

TEST_CASE("the empty presentation keeps M2 in") {
  FieldQ Q;
  VarietyPresentation<FieldQ> V{Q, VarietyClass::associative, {}};
  auto rep = nonmatrix_gate(V);
  CHECK_FALSE(rep.nonmatrix);
  REQUIRE(rep.entries.size() == 2);
  for (const auto& e : rep.entries) {
    CHECK(e.in_variety);
    CHECK_FALSE(e.witness.has_value());
  }
}

TEST_CASE("associativity alone is not nonmatrix; the diagnostic spots the octonions") {
  FieldQ Q;
  auto rep = nonmatrix_gate(make_variety(Q, VarietyClass::associative));

  CHECK_FALSE(rep.nonmatrix);  // M2 is associative, so it stays in
  CHECK(rep.entries[0].in_variety);

  // the split octonions fail associativity — recorded, but the diagnostic
  // entry does not count toward the verdict
  CHECK_FALSE(rep.entries[1].in_variety);
  CHECK(rep.entries[1].witness_identity == "(x,y,z)");
  check_replayable(rep, Q);
}

TEST_CASE("the alternative defaults keep the whole bank") {
  FieldQ Q;
  auto rep = nonmatrix_gate(make_variety(Q, VarietyClass::alternative));
  CHECK_FALSE(rep.nonmatrix);
  for (const auto& e : rep.entries) CHECK(e.in_variety);  // split octonions are alternative
}

TEST_CASE("squared associators gate H2 out of the jordan bank") {
  FieldQ Q;

  auto plain = nonmatrix_gate(make_variety(Q, VarietyClass::jordan));
  CHECK_FALSE(plain.nonmatrix);
  REQUIRE(plain.entries.size() == 1);
  CHECK(plain.entries[0].algebra_name == "H2");
  CHECK(plain.entries[0].in_variety);

  auto rep = nonmatrix_gate(make_variety(Q, VarietyClass::jordan, {"(x,y,z)^2"}));
  CHECK(rep.nonmatrix);
  REQUIRE(rep.entries.size() == 1);
  CHECK_FALSE(rep.entries[0].in_variety);
  CHECK(rep.entries[0].witness_identity == "(x,y,z)^2");
  check_replayable(rep, Q);
}

TEST_CASE("noncommutative jordan bank is labelled bank-relative") {
  FieldQ Q;
  auto V = make_variety(Q, VarietyClass::ncjordan, {"[x,y]^2", "(x,y,z)^2"});
  auto rep = nonmatrix_gate(V);

  CHECK(rep.nonmatrix);
  CHECK(rep.bank_limited);
  REQUIRE(rep.entries.size() == 6);
  CHECK(rep.entries[0].algebra_name == "M2 mutation (lambda = 2)");
  CHECK(rep.entries[1].algebra_name == "M2 mutation (lambda = -1)");
  CHECK(rep.entries[2].algebra_name == "M2 mutation (lambda = 3)");
  CHECK(rep.entries[3].algebra_name == "quaternions");
  CHECK(rep.entries[4].algebra_name == "octonions");
  CHECK(rep.entries[5].algebra_name == "H2");

  for (std::size_t i = 0; i < 5; ++i) {
    CHECK_FALSE(rep.entries[i].in_variety);
    // the noncommutative bank members all have a commutator with nonzero
    // square; H2 is commutative and needs the associator identity instead
    CHECK(rep.entries[i].witness_identity == "[x,y]^2");
  }
  CHECK_FALSE(rep.entries[5].in_variety);
  CHECK(rep.entries[5].witness_identity == "(x,y,z)^2");
  check_replayable(rep, Q);
}

TEST_CASE("a commutative refinement keeps H2 and the verdict honest") {
  FieldQ Q;
  auto rep = nonmatrix_gate(make_variety(Q, VarietyClass::ncjordan, {"[x,y]"}));
  CHECK(rep.bank_limited);
  CHECK_FALSE(rep.nonmatrix);
  for (std::size_t i = 0; i < 5; ++i) CHECK_FALSE(rep.entries[i].in_variety);
  CHECK(rep.entries[5].in_variety);  // H2 is a commutative Jordan algebra
}

TEST_CASE("caller-supplied mutation sample") {
  FieldGFp F(101);
  auto V = make_variety(F, VarietyClass::ncjordan, {"[x,y]^2", "(x,y,z)^2"});
  auto rep = nonmatrix_gate(V, {F.from_int(5)});
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.entries[0].algebra_name == "M2 mutation (lambda = 5)");
  CHECK(rep.nonmatrix);
  check_replayable(rep, F);
}

TEST_CASE("gate over the default working prime field") {
  FieldGFp F(101);
  auto rep = nonmatrix_gate(make_variety(F, VarietyClass::associative, {"[x,y]"}));
  CHECK(rep.nonmatrix);
  check_replayable(rep, F);
}

TEST_CASE("gate refusals") {
  FieldGFp F3(3);
  // the jordan identity has degree 4, beyond what characteristic 3 can polarize
  CHECK_THROWS_WITH(nonmatrix_gate(make_variety(F3, VarietyClass::jordan)),
                    ContainsSubstring("too small"));

  FieldQ Q;
  CHECK_THROWS_WITH(nonmatrix_gate(make_variety(Q, VarietyClass::anticommutative)),
                    ContainsSubstring("no gate bank"));
  CHECK_THROWS_WITH(nonmatrix_gate(make_variety(Q, VarietyClass::custom, {"[x,y]"})),
                    ContainsSubstring("no gate bank"));
}
