#ifndef NVA_SCALAR_HPP
#define NVA_SCALAR_HPP

/* Exact coefficient arithmetic for the three scalar domains the workbench
 * supports: the rationals, prime fields GF(p), and quadratic extensions
 * Q(sqrt(d)).  No floating point anywhere.
 *
 * Everything downstream is templated over a small *field object* (FieldQ,
 * FieldGFp, FieldQSqrt) that hands out constants and parses/prints
 * coefficient strings; scalars themselves are plain values with the usual
 * operators.  GF(p) elements carry their modulus and Q(sqrt d) elements their
 * radicand so that mixed-field arithmetic is caught at run time instead of
 * silently producing garbage.  A default-constructed scalar is the zero of an
 * "unattached" field and may combine with any field's values; every other
 * cross-field combination throws.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace nva {

/* The scalar type a field object hands out. */
template <class F>
using Scalar_t = typename F::Scalar;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Thrown when an input (identity line, coefficient string, file) fails to
 * parse; `pos` is a 0-based offset into the offending text when known. */
struct ParseError : Error {
  std::size_t pos;
  explicit ParseError(const std::string& msg, std::size_t at = std::string::npos)
      : Error(msg), pos(at) {}
};

/* Thrown when an operation would exceed a configured resource budget
 * (enumeration counts, basis-tuple sweeps, multilinear component sizes). */
struct BudgetError : Error {
  using Error::Error;
};

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Field descriptors
// ---------------------------------------------------------------------------

enum class FieldKind { Q, GFp, QSqrt };

/* Runtime description of a coefficient field, as found in CLI flags and
 * serialized files.  The typed field objects below are what the templates
 * actually run on; see with_field() in io.hpp for the dispatch. */
struct FieldSpec {
  FieldKind kind = FieldKind::Q;
  std::uint64_t p = 0;  // GFp modulus
  std::int64_t d = 0;   // QSqrt radicand

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  std::uint64_t characteristic() const {
    return kind == FieldKind::GFp ? p : 0;
  }

  /* CLI flag syntax: "q", "gf:<p>", "q-sqrt:<d>". */
  std::string str() const {
    switch (kind) {
      case FieldKind::Q:
        return "q";
      case FieldKind::GFp:
        return "gf:" + std::to_string(p);
      case FieldKind::QSqrt:
        return "q-sqrt:" + std::to_string(d);
    }
    throw Error("corrupt FieldSpec");
  }

  static FieldSpec parse(std::string_view s);
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  for (std::uint64_t f = 11; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() = default;
  explicit Rational(long long n) : v_(n) {}
  Rational(BigRat v) : v_(std::move(v)) {}
  Rational(BigInt num, BigInt den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = BigRat(std::move(num), std::move(den));
  }

  bool is_zero() const { return v_ == 0; }
  const BigRat& value() const { return v_; }

  Rational operator-() const { return Rational(-v_); }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("rational division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  Rational inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rational(BigRat(1) / v_);
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }

  int sign() const { return v_ < 0 ? -1 : (v_ == 0 ? 0 : 1); }

  /* "-3/2", "7"; denominator printed only when != 1. */
  std::string str() const {
    BigInt num = boost::multiprecision::numerator(v_);
    BigInt den = boost::multiprecision::denominator(v_);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
  }

  static Rational parse(std::string_view s);

 private:
  BigRat v_;
};

inline Rational Rational::parse(std::string_view s) {
  std::size_t i = 0;
  auto fail = [&](const char* msg) -> Rational {
    throw ParseError(std::string(msg) + " in rational '" + std::string(s) + "'", i);
  };
  if (s.empty()) return fail("empty string");
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::size_t digits_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits_begin) return fail("expected digits");
  BigInt num(std::string(s.substr(digits_begin, i - digits_begin)));
  BigInt den(1);
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::size_t den_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == den_begin) return fail("expected denominator digits");
    den = BigInt(std::string(s.substr(den_begin, i - den_begin)));
    if (den == 0) return fail("zero denominator");
  }
  if (i != s.size()) return fail("trailing characters");
  if (neg) num = -num;
  return Rational(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

  bool is_zero() const { return v_ == 0; }
  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  Fp operator-() const {
    if (p_ == 0) return *this;  // unattached zero
    return Fp(v_ == 0 ? 0 : p_ - v_, p_);
  }
  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t p = merged(a, b);
    if (p == 0) return Fp();
    return Fp((a.v_ + b.v_) % p, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t p = merged(a, b);
    if (p == 0) return Fp();
    return Fp((a.v_ + p - b.v_) % p, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t p = merged(a, b);
    if (p == 0) return Fp();
    return Fp((a.v_ * b.v_) % p, p);  // p < 2^31, so no overflow
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    // extended Euclid on (v, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return Fp(static_cast<std::uint64_t>(t), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    merged(a, b);  // reject cross-modulus comparisons
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const { return std::to_string(v_); }

 private:
  static std::uint64_t merged(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_) return a.p_;
    if (a.p_ == 0 && a.v_ == 0) return b.p_;
    if (b.p_ == 0 && b.v_ == 0) return a.p_;
    throw Error("mixed GF(p) moduli: " + std::to_string(a.p_) + " vs " + std::to_string(b.p_));
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;  // 0 = unattached zero
};

// ---------------------------------------------------------------------------
// Q(sqrt d)
// ---------------------------------------------------------------------------

/* a + b*r with r^2 = d; r prints as "r" in coefficient strings. */
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {}

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  const Rational& rat_part() const { return a_; }
  const Rational& root_part() const { return b_; }
  std::int64_t radicand() const { return d_; }

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    std::int64_t d = merged(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    std::int64_t d = merged(x, y);
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    std::int64_t d = merged(x, y);
    Rational dd((long long)d);
    return QuadExt(x.a_ * y.a_ + dd * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

  QuadExt inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    Rational dd((long long)d_);
    Rational norm = a_ * a_ - dd * b_ * b_;
    if (norm.is_zero()) throw Error("non-invertible quadratic-extension element (square radicand?)");
    Rational ninv = norm.inverse();
    return QuadExt(a_ * ninv, -(b_ * ninv), d_);
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    merged(x, y);
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  /* "3/2", "r", "-r", "2*r", "1+r", "1/2-3/4*r" */
  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string root;
    Rational abs_b = b_.sign() < 0 ? -b_ : b_;
    if (abs_b == Rational(1))
      root = "r";
    else
      root = abs_b.str() + "*r";
    if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + root;
    return a_.str() + (b_.sign() < 0 ? "-" : "+") + root;
  }

  static QuadExt parse(std::string_view s, std::int64_t d);

 private:
  static std::int64_t merged(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == y.d_) return x.d_;
    if (x.d_ == 0 && x.b_.is_zero()) return y.d_;
    if (y.d_ == 0 && y.b_.is_zero()) return x.d_;
    throw Error("mixed quadratic-extension radicands");
  }

  Rational a_, b_;
  std::int64_t d_ = 0;  // 0 = unattached rational constant
};

inline QuadExt QuadExt::parse(std::string_view s, std::int64_t d) {
  if (s.empty()) throw ParseError("empty quadratic-extension coefficient");
  // Split off the root term, if any.  Rational substrings contain only
  // [0-9/], so any '+'/'-' at position > 0 separates the two terms.
  std::size_t r_at = s.find('r');
  if (r_at == std::string_view::npos) return QuadExt(Rational::parse(s), Rational(0), d);
  if (r_at != s.size() - 1)
    throw ParseError("'r' must end the coefficient", r_at);
  std::string_view head = s.substr(0, r_at);  // "", "-", "2*", "1+", "1/2-3/4*"
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < head.size(); ++i) {
    if (head[i] == '+' || head[i] == '-') split = i;
  }
  std::string_view a_part, b_part;
  if (split == std::string_view::npos) {
    a_part = "";
    b_part = head;
  } else {
    a_part = head.substr(0, split);
    b_part = head.substr(split);  // keeps the sign
  }
  Rational a = a_part.empty() ? Rational(0) : Rational::parse(a_part);
  Rational b;
  // b_part is one of "", "+", "-", "<rat>*", "+<rat>*", "-<rat>*"
  if (b_part.empty() || b_part == "+")
    b = Rational(1);
  else if (b_part == "-")
    b = Rational(-1);
  else {
    if (b_part.back() != '*') throw ParseError("expected '*' before 'r'");
    b = Rational::parse(b_part.substr(0, b_part.size() - 1));
  }
  return QuadExt(std::move(a), std::move(b), d);
}

// ---------------------------------------------------------------------------
// Field objects
// ---------------------------------------------------------------------------

struct FieldQ {
  using Scalar = Rational;

  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar from_int(long long n) const { return Rational(n); }
  Scalar parse(std::string_view s) const { return Rational::parse(s); }
  std::string str(const Scalar& x) const { return x.str(); }
  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return {FieldKind::Q, 0, 0}; }
  friend bool operator==(const FieldQ&, const FieldQ&) = default;
};

struct FieldGFp {
  using Scalar = Fp;

  explicit FieldGFp(std::uint64_t p_) : p(p_) {
    if (!is_prime_u64(p)) throw Error("GF(p) modulus " + std::to_string(p) + " is not prime");
    if (p >= (1ull << 31)) throw Error("GF(p) modulus too large (need p < 2^31)");
  }

  Scalar zero() const { return Fp(0, p); }
  Scalar one() const { return Fp(1, p); }
  Scalar from_int(long long n) const {
    std::int64_t m = n % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    return Fp(static_cast<std::uint64_t>(m), p);
  }
  /* Accepts "a" or "a/b" with integer a,b; the quotient is taken in GF(p) so
   * the same coefficient strings work across fields. */
  Scalar parse(std::string_view s) const {
    Rational q = Rational::parse(s);
    BigInt num = boost::multiprecision::numerator(q.value());
    BigInt den = boost::multiprecision::denominator(q.value());
    BigInt pp(p);
    BigInt nm = num % pp;
    if (nm < 0) nm += pp;
    BigInt dm = den % pp;
    Fp fnum(nm.convert_to<std::uint64_t>(), p);
    Fp fden(dm.convert_to<std::uint64_t>(), p);
    return fnum / fden;
  }
  std::string str(const Scalar& x) const { return x.str(); }
  std::uint64_t characteristic() const { return p; }
  FieldSpec spec() const { return {FieldKind::GFp, p, 0}; }
  friend bool operator==(const FieldGFp&, const FieldGFp&) = default;

  std::uint64_t p;
};

struct FieldQSqrt {
  using Scalar = QuadExt;

  explicit FieldQSqrt(std::int64_t d_) : d(d_) {
    if (d == 0 || d == 1) throw Error("radicand must differ from 0 and 1");
    if (d > 1) {
      std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
      for (std::int64_t c = r - 2; c <= r + 2; ++c)
        if (c >= 0 && c * c == d) throw Error("radicand " + std::to_string(d) + " is a perfect square");
    }
  }

  Scalar zero() const { return QuadExt(Rational(0), Rational(0), d); }
  Scalar one() const { return QuadExt(Rational(1), Rational(0), d); }
  Scalar from_int(long long n) const { return QuadExt(Rational(n), Rational(0), d); }
  Scalar parse(std::string_view s) const { return QuadExt::parse(s, d); }
  std::string str(const Scalar& x) const { return x.str(); }
  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return {FieldKind::QSqrt, 0, d}; }
  friend bool operator==(const FieldQSqrt&, const FieldQSqrt&) = default;

  std::int64_t d;
};

inline FieldSpec FieldSpec::parse(std::string_view s) {
  if (s == "q" || s == "Q") return {FieldKind::Q, 0, 0};
  auto starts = [&](std::string_view pre) { return s.substr(0, pre.size()) == pre; };
  auto tail_int = [&](std::size_t off) -> std::int64_t {
    std::string t(s.substr(off));
    if (t.empty()) throw ParseError("missing field parameter in '" + std::string(s) + "'");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw ParseError("bad field parameter in '" + std::string(s) + "'");
    }
    if (used != t.size()) throw ParseError("bad field parameter in '" + std::string(s) + "'");
    return v;
  };
  if (starts("gf:")) {
    std::int64_t p = tail_int(3);
    if (p < 2) throw ParseError("GF(p) needs p >= 2");
    FieldGFp check(static_cast<std::uint64_t>(p));  // validates primality
    return {FieldKind::GFp, check.p, 0};
  }
  if (starts("q-sqrt:")) {
    std::int64_t d = tail_int(7);
    FieldQSqrt check(d);  // validates the radicand
    return {FieldKind::QSqrt, 0, check.d};
  }
  throw ParseError("unknown field '" + std::string(s) + "' (expected q, gf:<p>, q-sqrt:<d>)");
}

/* Instantiates fn with the typed field object matching a runtime spec. */
template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
  switch (fs.kind) {
    case FieldKind::Q:
      return fn(FieldQ{});
    case FieldKind::GFp:
      return fn(FieldGFp{fs.p});
    case FieldKind::QSqrt:
      return fn(FieldQSqrt{fs.d});
  }
  throw Error("corrupt FieldSpec");
}

/* 1/2 in F; throws in characteristic 2.  The plus/minus/mutation family and
 * the bracket conventions all divide by 2. */
template <class F>
typename F::Scalar half(const F& field) {
  if (field.characteristic() == 2) throw Error("operation requires characteristic != 2");
  return field.one() / field.from_int(2);
}

}  // namespace nva

#endif  // NVA_SCALAR_HPP
