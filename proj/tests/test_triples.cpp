#include <doctest.h>

#include <random>

#include "moebius/triples.hpp"

using namespace moebius;

namespace {

template <class Scalar>
ProjTriple<Scalar> proj(Scalar a, Scalar b, Scalar c) {
  typename ProjTriple<Scalar>::Vector v;
  v << a, b, c;
  v /= Scalar(v.sum());
  return ProjTriple<Scalar>::from_canonical(v);
}

}  // namespace

TEST_CASE("the three boundary points map to the three extended points") {
  const Rational h(1, 2), z(0);
  const auto b0 = proj(z, h, h), b1 = proj(h, z, h), b2 = proj(h, h, z);
  const ExtScalar<Rational> one(Rational(1)), zero(Rational(0)), inf = ExtScalar<Rational>::infinity();
  CHECK(F_forward(b0) == RatioTriple<Rational>{{one, inf, zero}});
  CHECK(F_forward(b1) == RatioTriple<Rational>{{zero, one, inf}});
  CHECK(F_forward(b2) == RatioTriple<Rational>{{inf, zero, one}});
  for (const auto& b : {b0, b1, b2}) {
    CHECK(near(F_inverse(F_forward(b)), b));
    CHECK(is_valid(psi(F_forward(b))));
  }
  CHECK(psi(F_forward(b0)) == LogTriple{{ExtLog(0.0), ExtLog::pos_inf(), ExtLog::neg_inf()}});
}

TEST_CASE("exact interior roundtrip through F") {
  const auto t = proj(Rational(1), Rational(2), Rational(3));
  const auto r = F_forward(t);
  CHECK(r[0] == ExtScalar<Rational>(Rational(2, 3)));
  CHECK(r[1] == ExtScalar<Rational>(Rational(3)));
  CHECK(r[2] == ExtScalar<Rational>(Rational(1, 2)));
  CHECK(is_valid(r));
  const auto back = F_inverse(r);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == t[i]);
}

TEST_CASE("random interior triples roundtrip through F, psi and phi") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-3, 1.0);
  const Tolerance tol{1e-9};
  for (int k = 0; k < 2000; ++k) {
    const auto t = proj(u(rng), u(rng), u(rng));
    const auto r = F_forward(t);
    const auto back = F_inverse(r, tol);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - t[i]) <= 1e-9 * t[i]);
    const auto l = psi(r);
    CHECK(is_valid(l, tol));
    CHECK(near(phi(l), r, tol));
  }
}

TEST_CASE("projective triples reject invalid representatives") {
  using V = ProjTriple<Rational>::Vector;
  V neg;
  neg << Rational(-1), Rational(1), Rational(1);
  CHECK_THROWS(ProjTriple<Rational>::from_canonical(neg));
  V two_zeros;
  two_zeros << Rational(1), Rational(0), Rational(0);
  CHECK_THROWS_AS(ProjTriple<Rational>::from_canonical(two_zeros), DegenerateTriple);
  V lopsided;
  lopsided << Rational(0), Rational(1, 4), Rational(3, 4);
  CHECK_THROWS_AS(ProjTriple<Rational>::from_canonical(lopsided), DegenerateTriple);
}

TEST_CASE("normalize_delta keeps only the top infinity degree") {
  using FP = FormalProduct<Rational>;
  // (2 inf : 3 inf : 5) -> (2/5 : 3/5 : 0), which is a boundary point only if equal
  CHECK_THROWS_AS(normalize_delta<Rational>({FP(Rational(2), 1), FP(Rational(3), 1), FP(Rational(5), 0)}),
                  DegenerateTriple);
  const auto t = normalize_delta<Rational>({FP(Rational(4), 1), FP(Rational(4), 1), FP(Rational(5), 0)});
  CHECK(t.zero_index() == 2);
  const auto u = normalize_delta<Rational>({FP(Rational(1), 0), FP(Rational(2), 0), FP(Rational(1), 0)});
  CHECK(u[1] == Rational(1, 2));
  CHECK_THROWS_AS(normalize_delta<Rational>({FP(), FP(), FP()}), DegenerateTriple);
}

TEST_CASE("log triple validity") {
  CHECK(is_valid(LogTriple{{ExtLog(1.0), ExtLog(-3.0), ExtLog(2.0)}}));
  CHECK_FALSE(is_valid(LogTriple{{ExtLog(1.0), ExtLog(1.0), ExtLog(1.0)}}));
  CHECK(is_valid(LogTriple{{ExtLog::neg_inf(), ExtLog(0.0), ExtLog::pos_inf()}}));
  CHECK_FALSE(is_valid(LogTriple{{ExtLog::pos_inf(), ExtLog(0.0), ExtLog::neg_inf()}}));
  CHECK_FALSE(is_valid(LogTriple{{ExtLog(1.0), ExtLog::pos_inf(), ExtLog::neg_inf()}}));
}
