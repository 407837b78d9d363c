#include <catch2/catch_amalgamated.hpp>

#include "nva/io.hpp"
#include "nva/report.hpp"
#include "helpers.hpp"

using namespace nva;
using namespace nva::testing;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("field blocks round-trip through JSON") {
  for (const char* flag : {"q", "gf:101", "q-sqrt:-1", "q-sqrt:5"}) {
    auto spec = FieldSpec::parse(flag);
    CHECK(field_spec_from_json(field_spec_to_json(spec)).str() == spec.str());
  }
  CHECK_THROWS_WITH(field_spec_from_json(json::parse(R"({"kind":"R"})")),
                    ContainsSubstring("unknown field kind"));
  CHECK_THROWS_WITH(field_spec_from_json(json::parse(R"({"kind":"GFp"})")),
                    ContainsSubstring("needs a positive \"p\""));
  CHECK_THROWS_WITH(field_spec_from_json(json::parse(R"({"p":7})")),
                    ContainsSubstring("\"kind\""));
}

TEST_CASE("algebra files survive a round trip unchanged") {
  SECTION("matrix algebra over Q") {
    FieldQ Q;
    auto A = make_m2(Q);
    auto B = algebra_from_json(Q, algebra_to_json(A));
    CHECK(*A == *B);
  }
  SECTION("quaternions over GF(5), structure constants mod p") {
    FieldGFp F(5);
    auto A = quaternion_algebra(F);
    auto B = algebra_from_json(F, algebra_to_json(A));
    CHECK(*A == *B);
  }
  SECTION("bilinear-form Jordan algebra over Q(sqrt -1)") {
    FieldQSqrt F(-1);
    auto A = jordan_sym(2, F);
    auto B = algebra_from_json(F, algebra_to_json(A));
    CHECK(*A == *B);
  }
  SECTION("the involution block is preserved") {
    FieldQ Q;
    auto A = octonion_algebra(Q);
    REQUIRE(A->involution());
    auto B = algebra_from_json(Q, algebra_to_json(A));
    REQUIRE(B->involution());
    for (std::uint32_t i = 0; i < A->dim(); ++i)
      CHECK(apply_involution(basis_element(A, i)).coords() ==
            apply_involution(basis_element(B, i)).coords());
    // and the copy is good enough to double again
    auto doubled = cayley_dickson(B, Q.from_int(-1));
    CHECK(doubled->dim() == 16);
  }
}

TEST_CASE("algebra file text is canonical") {
  FieldQ Q;
  auto A = make_m2(Q);
  CHECK(algebra_file_text(A) == algebra_file_text(A));

  // sparse: the zero algebra stores no table rows at all
  auto j = algebra_to_json(zero_algebra(Q, 3));
  CHECK(j["table"].empty());
  CHECK(j["format"] == "nva-algebra/1");
}

TEST_CASE("algebra file validation failures name the problem") {
  FieldQ Q;
  auto good = algebra_to_json(make_m2(Q));

  auto mangled = good;
  mangled["format"] = "nva-algebra/9";
  CHECK_THROWS_WITH(algebra_from_json(Q, mangled), ContainsSubstring("not an algebra file"));

  mangled = good;
  mangled["dim"] = 3;
  CHECK_THROWS_WITH(algebra_from_json(Q, mangled), ContainsSubstring("lists 4 names"));

  mangled = good;
  mangled["table"][0] = json::array({0, 0, 0});
  CHECK_THROWS_WITH(algebra_from_json(Q, mangled), ContainsSubstring("quadruples"));

  mangled = good;
  mangled["table"][0][2] = 17;
  CHECK_THROWS_WITH(algebra_from_json(Q, mangled), ContainsSubstring("out of range"));

  // field mismatch is caught before any table parsing
  FieldGFp F5(5);
  CHECK_THROWS_WITH(algebra_from_json(F5, good), ContainsSubstring("is over q, not gf:5"));

  CHECK_THROWS_WITH(parse_json_text("{ nope", "bad.json"), ContainsSubstring("bad.json"));
}

TEST_CASE("elements and subspaces serialize as coordinate strings") {
  FieldQ Q;
  auto A = make_m2(Q);
  auto u = basis_element(A, 0).scaled(Q.parse("3/2")) + basis_element(A, 3).scaled(Q.from_int(-1));
  auto ju = element_to_json(u);
  CHECK(ju == json::parse(R"(["3/2","0","0","-1"])"));
  CHECK(element_from_json(A, ju) == u);
  CHECK_THROWS_WITH(element_from_json(A, json::parse(R"(["1","0"])")),
                    ContainsSubstring("exactly 4 coordinate"));

  auto S = span_of(A, {basis_element(A, 1), basis_element(A, 2)});
  auto js = subspace_to_json(S);
  REQUIRE(js.size() == 2);
  CHECK(js[0] == json::parse(R"(["0","1","0","0"])"));
  CHECK(js[1] == json::parse(R"(["0","0","1","0"])"));
}

TEST_CASE("recipes build the advertised constructions") {
  FieldQ Q;
  SECTION("matrix, jordan-sym and presets") {
    CHECK(*build_recipe(Q, json::parse(R"({"construct":"matrix","n":2,"field":{"kind":"Q"}})")) ==
          *matrix_algebra(2, Q));
    CHECK(*build_recipe(Q, json::parse(R"({"construct":"jordan-sym","n":2})")) ==
          *jordan_sym(2, Q));
    CHECK(*build_recipe(Q, json::parse(R"({"construct":"quaternion"})")) ==
          *quaternion_algebra(Q));
    CHECK(*build_recipe(Q, json::parse(R"({"construct":"zero","dim":5})")) ==
          *zero_algebra(Q, 5));
  }
  SECTION("cayley-dickson chain mirrors the library construction") {
    auto A = build_recipe(
        Q, json::parse(R"({"construct":"cayley-dickson","mu":["-1","-1","-1"]})"));
    CHECK(A->dim() == 8);
    CHECK(*A == *cayley_dickson_chain(Q, {Q.from_int(-1), Q.from_int(-1), Q.from_int(-1)}));
    // the octonion preset is the same chain under friendlier basis names
    CHECK(*build_recipe(Q, json::parse(R"({"construct":"octonion"})")) == *octonion_algebra(Q));
  }
  SECTION("free-nilpotent and truncated-ring") {
    auto A = build_recipe(
        Q, json::parse(R"({"construct":"free-nilpotent","generators":["x","y"],"index":3})"));
    CHECK(*A == *free_nilpotent(Q, {"x", "y"}, 3));
    auto R = build_recipe(Q, json::parse(R"({"construct":"truncated-ring","vars":1,"cap":3})"));
    CHECK(R->dim() == 4);  // 1, x1, x1^2, x1^3
  }
  SECTION("kokoris with a zero bracket reproduces its base ring") {
    auto K = build_recipe(
        Q, json::parse(R"({"construct":"kokoris","vars":1,"cap":2,"bracket":[]})"));
    auto R = build_recipe(Q, json::parse(R"({"construct":"truncated-ring","vars":1,"cap":2})"));
    CHECK(*K == *R);
  }
  SECTION("kokoris with {x1,x2} = x1^2 is a genuine deformation") {
    auto K = build_recipe(Q, json::parse(
        R"({"construct":"kokoris","vars":2,"cap":2,"bracket":[["x1","x2",{"x1^2":"1"}]]})"));
    auto x1 = basis_element(K, *K->basis_index("x1"));
    auto x2 = basis_element(K, *K->basis_index("x2"));
    auto x1sq = basis_element(K, *K->basis_index("x1^2"));
    CHECK(x1 * x2 - x2 * x1 == x1sq.scaled(Q.from_int(2)));  // twice the bracket
    CHECK_FALSE(table_commutative(K));
  }
}

TEST_CASE("recipe validation failures") {
  FieldQ Q;
  CHECK_THROWS_WITH(build_recipe(Q, json::parse(R"({"construct":"matrix"})")),
                    ContainsSubstring("needs \"n\""));
  CHECK_THROWS_WITH(build_recipe(Q, json::parse(R"({"n":2})")),
                    ContainsSubstring("\"construct\""));
  CHECK_THROWS_WITH(build_recipe(Q, json::parse(R"({"construct":"frobenius"})")),
                    ContainsSubstring("unknown construct"));
  CHECK_THROWS_WITH(
      build_recipe(Q, json::parse(
          R"({"construct":"kokoris","vars":2,"cap":2,"bracket":[["x1","x9",{"1":"1"}]]})")),
      ContainsSubstring("unknown basis monomial"));
  CHECK_THROWS_WITH(
      build_recipe(Q, json::parse(R"({"construct":"kokoris","vars":2,"cap":2,
          "bracket":[["x1","x2",{"x1^2":"1"}],["x2","x1",{"x1^2":"1"}]]})")),
      ContainsSubstring("twice"));
  // {x1,x2} = 1 violates the Leibniz rule: {x1^2, x2} must equal 2 x1 {x1, x2}
  CHECK_THROWS_WITH(
      build_recipe(Q, json::parse(
          R"({"construct":"kokoris","vars":2,"cap":2,"bracket":[["x1","x2",{"1":"1"}]]})")),
      ContainsSubstring("Leibniz"));
}

TEST_CASE("identity files: one identity per line, comments, positions") {
  FieldQ Q;
  auto ids = read_identity_lines(Q, "# header comment\n"
                                    "[x,y]^2\n"
                                    "\n"
                                    "(x,y,z) = (z,y,x)  # trailing note\n");
  REQUIRE(ids.size() == 2);
  CHECK(ids[0].source == "[x,y]^2");
  CHECK(ids[1].source == "(x,y,z) = (z,y,x)");

  CHECK_THROWS_WITH(read_identity_lines(Q, "[x,y]\n(x,,z)\n"),
                    ContainsSubstring("line 2"));
}

TEST_CASE("presentation files: class header plus extra identities") {
  FieldQ Q;
  auto V = read_presentation(Q, "# nonmatrix probe input\n"
                                "class: jordan\n"
                                "[x,y]^2  # extra pinning identity\n");
  CHECK(V.class_tag == VarietyClass::jordan);
  REQUIRE(V.identities.size() == 3);  // two class-defining identities, one extra
  CHECK(V.identities[2].source == "[x,y]^2");

  auto W = read_presentation(FieldGFp(101), "class: alternative\n");
  CHECK(W.identities.size() == 2);

  CHECK_THROWS_WITH(read_presentation(Q, "[x,y]\n"), ContainsSubstring("`class:`"));
  CHECK_THROWS_WITH(read_presentation(Q, "class: semisimple\n"),
                    ContainsSubstring("unknown variety class"));
  CHECK_THROWS_WITH(read_presentation(Q, "# only comments\n"),
                    ContainsSubstring("no `class:` line"));
  CHECK_THROWS_WITH(read_presentation(Q, "class: jordan\nx^^\n"),
                    ContainsSubstring("line 2"));
}

TEST_CASE("with_field dispatches on the runtime spec") {
  auto dim_of = [](const FieldSpec& spec) {
    return with_field(spec, [](auto field) { return quaternion_algebra(field)->dim(); });
  };
  CHECK(dim_of(FieldSpec::parse("q")) == 4);
  CHECK(dim_of(FieldSpec::parse("gf:7")) == 4);
  CHECK(dim_of(FieldSpec::parse("q-sqrt:2")) == 4);
}

TEST_CASE("reports carry digests and replayable witnesses") {
  FieldQ Q;
  auto A = make_m2(Q);

  json rep = report_skeleton("check");
  CHECK(rep["format"] == "nva-report/1");
  report_add_input(rep, "algebra", "m2.json", "payload bytes");
  CHECK(rep["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
  // FNV-1a is a pure function of the bytes
  CHECK(fnv1a64_hex("payload bytes") == rep["inputs"][0]["fnv1a64"]);
  CHECK(fnv1a64_hex("payload bytes!") != fnv1a64_hex("payload bytes"));

  auto verdict = holds_in(A, parse_identity(Q, "[x,y]^2"));
  REQUIRE_FALSE(verdict.holds);
  REQUIRE(verdict.witness);
  rep["results"] = json{{"witness", witness_to_json("[x,y]^2", *verdict.witness)}};
  rep["timings"] = json{{"total_ms", 12}};

  SECTION("replay confirms an intact report") {
    auto outcome = replay_report(Q, A, rep);
    CHECK(outcome.total == 1);
    CHECK(outcome.ok());
  }
  SECTION("replay notices a doctored value") {
    rep["results"]["witness"]["value"] = element_to_json(zero_element(A));
    auto outcome = replay_report(Q, A, rep);
    CHECK_FALSE(outcome.ok());
    CHECK_THAT(outcome.failures.at(0), ContainsSubstring("differs"));
  }
  SECTION("replay notices a doctored assignment") {
    for (auto& [var, coords] : rep["results"]["witness"]["basis_assignment"].items()) {
      (void)var;
      coords = element_to_json(zero_element(A));
    }
    auto outcome = replay_report(Q, A, rep);
    CHECK_FALSE(outcome.ok());
    CHECK_THAT(outcome.failures.at(0), ContainsSubstring("zero"));
  }
  SECTION("timings are the excluded section") {
    auto stripped = report_without_timings(rep);
    CHECK_FALSE(stripped.contains("timings"));
    CHECK(stripped["results"] == rep["results"]);
  }
}

TEST_CASE("replay handles the nilpotence witness kinds") {
  FieldGFp F(5);
  auto A = make_m2(F);
  auto e12 = basis_element(A, 1), e21 = basis_element(A, 2);

  json rep = report_skeleton("analyze");
  rep["results"] = json{
      {"sum_witness",
       json{{"replay", "nilpotent-sum"}, {"u", element_to_json(e12)}, {"v", element_to_json(e21)}}},
      {"ideal_witness", json{{"replay", "nilpotent-ideal"},
                             {"u", element_to_json(e12)},
                             {"multiplier", element_to_json(e21)}}},
      {"non_nil", json{{"replay", "non-nil-element"}, {"u", element_to_json(basis_element(A, 0))}}}};
  auto outcome = replay_report(F, A, rep);
  CHECK(outcome.total == 3);
  CHECK(outcome.ok());

  // a nilpotent element cannot stand in for a non-nil witness
  rep["results"]["non_nil"]["u"] = element_to_json(e12);
  outcome = replay_report(F, A, rep);
  REQUIRE(outcome.failures.size() == 1);
  CHECK_THAT(outcome.failures[0], ContainsSubstring("nilpotent after all"));
}
