#include <doctest.h>
#include <gmpxx.h>

#include "excone/qsqrt2.hpp"
#include "excone/rng.hpp"

using namespace excone;

namespace {

// uniform small rational for property checks
Rat random_rat(RngStream& rng, long den_bound = 60) {
  const long num = long(rng.next_u64() % 201) - 100;
  const long den = 1 + long(rng.next_u64() % std::uint64_t(den_bound));
  return Rat(num, den);
}

QSqrt2 random_qs(RngStream& rng) { return QSqrt2(random_rat(rng), random_rat(rng)); }

}  // namespace

TEST_CASE("Rat stores reduced with positive denominator") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(3, -6).num() == -1);
  CHECK(Rat(3, -6).den() == 2);
  CHECK(Rat(0, 7).str() == "0");
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("Rat parse/str round-trip") {
  for (const char* s : {"16/27", "-2413803/3254580", "0", "-7", "1373628701/353935575"}) {
    const Rat r = Rat::parse(s);
    CHECK(Rat::parse(r.str()) == r);
  }
  CHECK(Rat::parse("-2413803/3254580") == Rat(-2413803, 3254580));
  CHECK_THROWS(Rat::parse("1/0x"));
}

TEST_CASE("sign_of decides exactly") {
  CHECK(sign_of(QSqrt2(Rat(0), Rat(0))) == 0);
  CHECK(sign_of(QSqrt2(Rat(3), Rat(-2))) == 1);   // 9 > 8
  CHECK(sign_of(QSqrt2(Rat(1), Rat(-1))) == -1);  // 1 < 2
  CHECK(sign_of(QSqrt2(Rat(-3), Rat(2))) == -1);
  CHECK(sign_of(QSqrt2(Rat(0), Rat(5))) == 1);
  CHECK(sign_of(QSqrt2(Rat(-1, 1000000), Rat(0))) == -1);
}

TEST_CASE("sign_of agrees with high-precision evaluation on random samples") {
  RngStream rng(2024);
  mpf_class sqrt2_hp(2, 512);  // ~150 decimal digits
  mpf_sqrt(sqrt2_hp.get_mpf_t(), sqrt2_hp.get_mpf_t());
  for (int it = 0; it < 10000; ++it) {
    const QSqrt2 x = random_qs(rng);
    if (x.is_zero()) continue;  // float sign of the exact zero is meaningless
    mpf_class val(0, 512);
    val = mpf_class(x.rational_part().raw(), 512) +
          mpf_class(x.sqrt2_part().raw(), 512) * sqrt2_hp;
    const int hp_sign = (sgn(val) > 0) - (sgn(val) < 0);
    CHECK(sign_of(x) == hp_sign);
  }
}

TEST_CASE("QSqrt2 field axioms hold exactly on random samples") {
  RngStream rng(7);
  for (int it = 0; it < 2000; ++it) {
    const QSqrt2 a = random_qs(rng), b = random_qs(rng), c = random_qs(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("QSqrt2 grammar round-trips bit-exactly") {
  for (const char* s :
       {"16/27", "-2413803/3254580+1777340/3254580*sqrt2", "1/123*sqrt2",
        "-200129/487080+88867/325458*sqrt2", "0", "-1*sqrt2", "3-2*sqrt2"}) {
    const QSqrt2 v = QSqrt2::parse(s);
    CHECK(QSqrt2::parse(v.str()) == v);
  }
  // optional spaces around the sign are accepted
  CHECK(QSqrt2::parse("-2413803/3254580 + 1777340/3254580*sqrt2") ==
        QSqrt2::parse("-2413803/3254580+1777340/3254580*sqrt2"));
  RngStream rng(99);
  for (int it = 0; it < 2000; ++it) {
    const QSqrt2 v = random_qs(rng);
    CHECK(QSqrt2::parse(v.str()) == v);
  }
}

TEST_CASE("QSqrt2 division by zero and bad parses throw") {
  CHECK_THROWS(QSqrt2(1) / QSqrt2(0));
  CHECK_THROWS(QSqrt2::parse(""));
  CHECK_THROWS(QSqrt2::parse("1+2"));
}
