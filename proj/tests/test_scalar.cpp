#include <catch2/catch_amalgamated.hpp>

#include "nva/scalar.hpp"

using namespace nva;

TEST_CASE("rational arithmetic is exact") {
  Rational a = Rational::parse("1/3");
  Rational b = Rational::parse("1/6");
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
  CHECK(Rational::parse("-4/6").str() == "-2/3");  // canonical form
  CHECK(Rational::parse("0/5").is_zero());
  CHECK(Rational(7).inverse().str() == "1/7");

  // no epsilon drift: (1/3 + 1/3 + 1/3) == 1 exactly
  Rational third = Rational::parse("1/3");
  CHECK(third + third + third == Rational(1));
}

TEST_CASE("rational parse rejects malformed input") {
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse("2/"), ParseError);
  CHECK_THROWS_AS(Rational::parse("a"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
}

TEST_CASE("GF(p) arithmetic") {
  FieldGFp F(101);
  Fp a = F.from_int(45), b = F.from_int(77);
  CHECK((a + b).value() == (45 + 77) % 101);
  CHECK((a - b).value() == (45 + 101 - 77) % 101);
  CHECK((a * b).value() == (45 * 77) % 101);
  CHECK((a / b) * b == a);
  CHECK(F.from_int(-1).value() == 100);

  // every nonzero residue has a working inverse
  for (std::uint64_t v = 1; v < 101; ++v) {
    Fp x(v, 101);
    CHECK((x * x.inverse()).value() == 1);
  }
}

TEST_CASE("GF(p) rejects composite moduli and mixed moduli") {
  CHECK_THROWS_AS(FieldGFp(91), Error);  // 7 * 13
  CHECK_THROWS_AS(FieldGFp(1), Error);
  FieldGFp F5(5), F7(7);
  CHECK_THROWS_AS(F5.one() + F7.one(), Error);
  // unattached zero combines with anything
  CHECK((Fp{} + F5.from_int(3)).value() == 3);
}

TEST_CASE("GF(p) accepts rational coefficient strings") {
  FieldGFp F(13);
  // 1/2 = 7 mod 13 since 2*7 = 14 = 1
  CHECK(F.parse("1/2").value() == 7);
  CHECK(F.parse("-1").value() == 12);
  CHECK_THROWS_AS(F.parse("1/13"), Error);  // denominator vanishes mod 13
}

TEST_CASE("quadratic extension arithmetic") {
  FieldQSqrt F(-1);
  QuadExt i = F.parse("r");
  CHECK((i * i) == F.from_int(-1));
  QuadExt z = F.parse("1/2+3/4*r");
  CHECK(z.rat_part().str() == "1/2");
  CHECK(z.root_part().str() == "3/4");
  CHECK((z * z.inverse()) == F.one());

  FieldQSqrt F2(2);
  QuadExt s = F2.parse("r");
  CHECK((s * s) == F2.from_int(2));
  // (1 + r)(1 - r) = 1 - 2 = -1 over Q(sqrt 2)
  CHECK(F2.parse("1+r") * F2.parse("1-r") == F2.from_int(-1));
}

TEST_CASE("quadratic extension printing round-trips") {
  FieldQSqrt F(-5);
  for (const char* s : {"0", "1", "-1", "r", "-r", "2*r", "-2/3*r", "1+r", "1-r",
                        "1/2+3/4*r", "-7-2*r", "5"}) {
    QuadExt x = F.parse(s);
    CHECK(F.parse(F.str(x)) == x);
    CHECK(F.str(x) == s);  // printing is canonical
  }
}

TEST_CASE("radicand validation") {
  CHECK_THROWS_AS(FieldQSqrt(0), Error);
  CHECK_THROWS_AS(FieldQSqrt(1), Error);
  CHECK_THROWS_AS(FieldQSqrt(4), Error);
  CHECK_THROWS_AS(FieldQSqrt(9), Error);
  CHECK_NOTHROW(FieldQSqrt(-1));
  CHECK_NOTHROW(FieldQSqrt(8));  // 2*sqrt(2): fine, not a perfect square
}

TEST_CASE("field spec flag syntax") {
  CHECK(FieldSpec::parse("q").kind == FieldKind::Q);
  FieldSpec g = FieldSpec::parse("gf:101");
  CHECK(g.kind == FieldKind::GFp);
  CHECK(g.p == 101);
  CHECK(g.characteristic() == 101);
  FieldSpec qs = FieldSpec::parse("q-sqrt:-1");
  CHECK(qs.kind == FieldKind::QSqrt);
  CHECK(qs.d == -1);
  CHECK(qs.characteristic() == 0);
  CHECK_THROWS_AS(FieldSpec::parse("gf:91"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("f2"), ParseError);
  CHECK(FieldSpec::parse("gf:101").str() == "gf:101");
  CHECK(FieldSpec::parse("q").str() == "q");
  CHECK(FieldSpec::parse("q-sqrt:2").str() == "q-sqrt:2");
}

TEST_CASE("with_field dispatches on spec") {
  std::string seen = with_field(FieldSpec::parse("gf:7"), [](auto F) {
    return F.spec().str();
  });
  CHECK(seen == "gf:7");
  CHECK(with_field(FieldSpec{}, [](auto F) { return F.str(F.one()); }) == "1");
}

TEST_CASE("half works away from characteristic 2") {
  FieldQ Q;
  CHECK(half(Q) == Rational::parse("1/2"));
  FieldGFp F101(101);
  CHECK((half(F101) * F101.from_int(2)) == F101.one());
  CHECK_THROWS_AS(half(FieldGFp(2)), Error);
}
