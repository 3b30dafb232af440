#include "doctest.h"
#include "support.hpp"

#include "minder/error.hpp"
#include "minder/pseries.hpp"

using namespace minder;

namespace {

RingPtr t2() { return make_ring({"t1", "t2"}); }
RingPtr t3() { return make_ring({"t1", "t2", "t3"}); }

TruncSeries ser(const char* text, const RingPtr& r, int order) { return TruncSeries(parse_polynomial(text, r), order); }

SeriesDerivation sd(const RingPtr& r, std::vector<const char*> coeffs, int order) {
  std::vector<TruncSeries> cs;
  for (const char* c : coeffs) cs.push_back(ser(c, r, order));
  return SeriesDerivation(r, std::move(cs));
}

/// Random series with zero constant term.
TruncSeries random_series(testing::Gen& g, const RingPtr& r, int order, int min_degree = 1) {
  return TruncSeries(g.polynomial(r, order, 5, min_degree), order);
}

std::vector<TruncSeries> random_param_system(testing::Gen& g, const RingPtr& r, int order) {
  const std::size_t n = r->size();
  while (true) {
    std::vector<TruncSeries> s;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial p = g.polynomial(r, order, 4, 2);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || g.integer(0, 2) == 0) p += Polynomial::variable(r, j) * g.rational(3);
      }
      s.emplace_back(p, order);
    }
    if (is_param_system(s)) return s;
  }
}

}  // namespace

TEST_CASE("series products") {
  auto r = make_ring({"t"});
  CHECK(ser("1 + t", r, 4) * ser("1 - t", r, 4) == ser("1 - t^2", r, 4));
  CHECK((ser("t^4", r, 4) * ser("t", r, 4)).is_zero());
  CHECK(ser("t + t^2", r, 3) * Rational(2) == ser("2*t + 2*t^2", r, 3));
  CHECK((ser("t", r, 5) * ser("t", r, 2)).order() == 2);
  CHECK_THROWS_AS(ser("t", r, 3) * ser("t1", t2(), 3), Error);
}

TEST_CASE("substitution") {
  auto r = t2();
  const std::vector<TruncSeries> shear{ser("t1 + t2", r, 5), ser("t2", r, 5)};
  CHECK(substitute(ser("t1^2", r, 5), shear) == ser("t1^2 + 2*t1*t2 + t2^2", r, 5));
  CHECK(substitute(ser("t1^3 + t2", r, 5), identity_series(r, 5)) == ser("t1^3 + t2", r, 5));
  const std::vector<TruncSeries> swap{ser("t2", r, 5), ser("t1", r, 5)};
  CHECK(substitute(ser("t1", r, 5), swap) == ser("t2", r, 5));
  const std::vector<TruncSeries> bad{ser("1 + t1", r, 5), ser("t2", r, 5)};
  try {
    substitute(ser("t1", r, 5), bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("property: substitution is a ring homomorphism modulo truncation") {
  testing::Gen g(61);
  auto r = t2();
  for (int i = 0; i < 60; ++i) {
    const int n = g.integer(2, 6);
    const auto f = TruncSeries(g.polynomial(r, n, 4), n);
    const auto h = TruncSeries(g.polynomial(r, n, 4), n);
    const std::vector<TruncSeries> images{random_series(g, r, n), random_series(g, r, n)};
    CHECK(substitute(f * h, images) == substitute(f, images) * substitute(h, images));
    CHECK(substitute(f + h, images) == substitute(f, images) + substitute(h, images));
  }
}

TEST_CASE("derivatives, antiderivatives and orders") {
  auto r = t2();
  const auto f = ser("t1^3 + t1*t2", r, 4);
  CHECK(series_partial(f, 0) == ser("3*t1^2 + t2", r, 3));
  CHECK(antiderivative(series_partial(f, 0), 0) == ser("t1^3 + t1*t2", r, 4));
  CHECK(mul_by_variable(ser("1 + t2", r, 2), 0) == ser("t1 + t1*t2", r, 3));
  CHECK(restrict_to_zero(ser("t1 + t2 + t1*t2^2", r, 4), 0, make_ring({"t2"})) == ser("t2", make_ring({"t2"}), 4));
  CHECK(f.valuation() == 2);
}

TEST_CASE("inversion") {
  auto r = t2();
  const ParamSystem s({ser("t1 + t2^2", r, 5), ser("t2", r, 5)});
  const ParamSystem inv = invert_param_system(s);
  CHECK(inv[0] == ser("t1 - t2^2", r, 5));
  CHECK(inv[1] == ser("t2", r, 5));

  const ParamSystem linear({ser("2*t1 + t2", r, 3), ser("t1 + t2", r, 3)});
  const ParamSystem lin_inv = invert_param_system(linear);
  CHECK(lin_inv[0] == ser("t1 - t2", r, 3));
  CHECK(lin_inv[1] == ser("-t1 + 2*t2", r, 3));

  const ParamSystem id(identity_series(r, 4));
  CHECK(invert_param_system(id).components() == id.components());

  try {
    ParamSystem singular({ser("t1 + t2", r, 3), ser("2*t1 + 2*t2 + t1^2", r, 3)});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularLinearPart);
  }
}

TEST_CASE("property: inversion round-trips both ways") {
  testing::Gen g(62);
  for (int i = 0; i < 40; ++i) {
    auto r = g.coin() ? t2() : t3();
    const int n = g.integer(2, 6);
    const ParamSystem s(random_param_system(g, r, n));
    const ParamSystem t = invert_param_system(s);
    const auto id = identity_series(r, n);
    CHECK(compose(s.components(), t.components()) == id);
    CHECK(compose(t.components(), s.components()) == id);
  }
}

TEST_CASE("straightening examples") {
  auto r = t2();
  const auto res = straighten(sd(r, {"1", "t1"}, 6), ser("t1", r, 6), 5);
  CHECK(res.params[1].body() == parse_polynomial("t2 - 1/2*t1^2", r));
  CHECK(res.residuals[0].is_zero());

  const auto flat = straighten(sd(r, {"1", "0"}, 6), ser("t1", r, 6), 5);
  CHECK(flat.params[1].body() == parse_polynomial("t2", r));

  const auto cubic = straighten(sd(r, {"1", "t1^2"}, 7), ser("t1", r, 7), 6);
  CHECK(cubic.params[1].body() == parse_polynomial("t2 - 1/3*t1^3", r));
  CHECK(cubic.params[0].body() == parse_polynomial("t1", r));

  try {
    straighten(sd(r, {"2", "0"}, 6), ser("t1", r, 6), 5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("property: straightening residuals vanish and updates respect the filtration") {
  testing::Gen g(63);
  for (int i = 0; i < 20; ++i) {
    auto r = g.coin() ? t2() : t3();
    const int n = 6;
    std::vector<TruncSeries> coeffs{ser("1", r, n + 1)};
    for (std::size_t j = 1; j < r->size(); ++j) coeffs.push_back(random_series(g, r, n + 1));
    const SeriesDerivation d(r, coeffs);
    const auto x1 = TruncSeries(Polynomial::variable(r, 0), n + 1);
    const auto res = straighten(d, x1, n);
    CHECK(is_param_system(res.params.components()));
    CHECK(res.params[0] == x1.truncated(res.params[0].order()));
    for (const auto& residual : res.residuals) {
      CHECK(residual.order() >= n - 1);
      CHECK(residual.is_zero());
    }
    for (std::size_t k = 1; k <= res.updates.size(); ++k) {
      for (const auto& u : res.updates[k - 1]) {
        if (!u.is_zero()) CHECK(*u.valuation() >= static_cast<int>(k) + 1);
      }
    }
    // Independent check: apply d to each y directly.
    for (std::size_t j = 1; j < res.params.size(); ++j) CHECK(apply(d, res.params[j]).truncated(n - 1).is_zero());
  }
}

TEST_CASE("canonical pair examples") {
  auto r = make_ring({"x1", "x2", "y"});
  const auto x1 = ser("x1", r, 6);
  const auto x2 = ser("x2", r, 6);
  const auto a = canonical_pair(sd(r, {"1", "0", "0"}, 6), sd(r, {"0", "1", "x1"}, 6), x1, x2, 5);
  REQUIRE(a.a.size() == 1);
  CHECK(a.a[0].body() == parse_polynomial("1", a.coordinates));

  const auto b = canonical_pair(sd(r, {"1", "0", "0"}, 6), sd(r, {"0", "1", "x1 + x1*x2"}, 6), x1, x2, 5);
  REQUIRE(b.a.size() == 1);
  CHECK(b.a[0].body() == parse_polynomial("1 + x2", b.coordinates));

  auto plane = make_ring({"x1", "x2"});
  const auto c = canonical_pair(sd(plane, {"1", "0"}, 5), sd(plane, {"0", "1"}, 5), ser("x1", plane, 5),
                                ser("x2", plane, 5), 4);
  CHECK(c.a.empty());
  CHECK(c.params.size() == 2);
}

TEST_CASE("partial_k operators") {
  auto r = make_ring({"x1", "x2", "y3"});
  const std::vector<TruncSeries> one{ser("1", r, 4)};
  const auto ops = partial_k_operators(r, one, 2);
  REQUIRE(ops.size() == 3);
  CHECK(ops[0].coefficient(2).body() == parse_polynomial("1", r));
  CHECK(ops[1].coefficient(2).is_zero());
  CHECK(ops[2].coefficient(2).is_zero());
  CHECK(ops[0].coefficient(0).is_zero());

  const std::vector<TruncSeries> lin{ser("x2", r, 4)};
  const auto ops2 = partial_k_operators(r, lin, 2);
  CHECK(ops2[0].coefficient(2).is_zero());
  CHECK(ops2[1].coefficient(2).body() == parse_polynomial("x2", r));

  testing::Gen g(64);
  for (int i = 0; i < 30; ++i) {
    const std::vector<TruncSeries> as{TruncSeries(g.polynomial(r, 4, 6), 4)};
    Polynomial sum(r);
    for (const auto& op : partial_k_operators(r, as, 4)) sum += op.coefficient(2).body();
    CHECK(sum == as[0].body());
  }
}
