#include <map>
#include <random>

#include "doctest.h"
#include "dioph/ksurface/surface.hpp"
#include "dioph/qalg/factor.hpp"
#include "dioph/qalg/parse.hpp"

using namespace dioph::ksurface;
using dioph::qalg::parse_ratfunc;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }
Poly P(const char* s) { return parse_ratfunc(s).numer(); }
Place at(const char* s) { return Place::finite(P(s)); }

using Sym = KodairaType::Symbol;

// Oracle for the factors of t^d - 1: cyclotomic polynomials built by exact division,
// no factorization code involved.
std::map<int, Poly> cyclotomics_up_to(int d) {
  std::map<int, Poly> phi;
  for (int k = 1; k <= d; ++k) {
    Poly p = Poly::monomial(1, k) - Poly::constant(1);
    for (const auto& [j, f] : phi)
      if (k % j == 0) p = p / f;
    phi.emplace(k, p);
  }
  return phi;
}

Poly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-6, 6);
  std::vector<BigRat> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = c(rng);
  return Poly(v);
}

}  // namespace

TEST_CASE("long-form invariants satisfy c4^3 - c6^2 = 1728 delta") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    RatFunc a[5];
    for (auto& x : a) x = RatFunc(random_poly(rng, 3), random_poly(rng, 1) + Poly::monomial(1, 2));
    try {
      WeierstrassSurface S(a[0], a[1], a[2], a[3], a[4]);
      CHECK(S.c4() * S.c4() * S.c4() - S.c6() * S.c6() == 1728 * S.discriminant());
      CHECK(S.to_short_form().j_invariant() == S.j_invariant());
    } catch (const SingularGenericFibre&) {
    }
  }
}

TEST_CASE("legendre discriminant and j") {
  auto S = legendre_power(1);
  CHECK(S.discriminant() == R("16 t^2 (t-1)^2"));
  CHECK(!S.j_invariant().is_constant());
  for (int d = 1; d <= 6; ++d) {
    RatFunc td = pow(RatFunc::t(), d);
    CHECK(legendre_power(d).discriminant() == 16 * td * td * (td - 1) * (td - 1));
  }
  CHECK_THROWS_AS(WeierstrassSurface::short_form(R("-3 t^2"), R("2 t^3")), SingularGenericFibre);
}

TEST_CASE("bad places of small legendre surfaces") {
  auto names = [](const std::vector<Place>& v) {
    std::vector<std::string> s;
    for (const auto& p : v) s.push_back(p.name());
    return s;
  };
  CHECK(names(bad_places(legendre_power(1))) == std::vector<std::string>{"t - 1", "t", "inf"});
  auto b2 = bad_places(legendre_power(2));
  CHECK(std::count(b2.begin(), b2.end(), at("t")) == 1);
  CHECK(std::count(b2.begin(), b2.end(), at("t-1")) == 1);
  CHECK(std::count(b2.begin(), b2.end(), at("t+1")) == 1);
  CHECK(std::count(b2.begin(), b2.end(), Place::infinity()) == 1);
  CHECK(b2.size() == 4);

  auto b3 = bad_places(legendre_power(3));
  CHECK(std::count(b3.begin(), b3.end(), at("t^2+t+1")) == 1);
  CHECK(std::count(b3.begin(), b3.end(), at("t-1")) == 1);

  auto flat = parse_surface("A = 1; B = 1");
  for (const auto& p : bad_places(flat)) CHECK(p.is_infinity());
}

TEST_CASE("minimalize_at") {
  auto S = WeierstrassSurface::short_form(R("t^4"), R("t^6"));
  auto m = minimalize_at(S, at("t"));
  CHECK(m.exponent == 1);
  CHECK(m.model.a4() == RatFunc(1));
  CHECK(m.model.a6() == RatFunc(1));
  CHECK(minimalize_at(m.model, at("t")).exponent == 0);

  CHECK(minimalize_at(legendre_power(1), at("t")).exponent == 0);

  auto inf = minimalize_at(legendre_power(1), Place::infinity());
  CHECK(*valuation(inf.model.discriminant(), Place::infinity()) == 8);
  CHECK(minimalize_at(inf.model, Place::infinity()).exponent == 0);

  // Poles get cleared with a negative exponent.
  auto poles = WeierstrassSurface::short_form(R("1/(t-2)^4"), R("1/(t-2)^6 + 1"));
  auto mp = minimalize_at(poles, at("t-2"));
  CHECK(mp.exponent == -1);
  CHECK(*valuation(mp.model.discriminant(), at("t-2")) == 0);
}

TEST_CASE("kodaira table examples") {
  auto f = kodaira_type_at(legendre_power(5), at("t"));
  CHECK(f.type == KodairaType{Sym::In, 10});
  CHECK(f.m_b == 10);
  CHECK(f.e_b == 10);

  f = kodaira_type_at(legendre_power(5), Place::infinity());
  CHECK(f.type == KodairaType{Sym::InStar, 10});
  CHECK(f.type.to_string() == "I*_10");
  CHECK(f.m_b == 15);
  CHECK(f.e_b == 16);

  f = kodaira_type_at(legendre_power(6), Place::infinity());
  CHECK(f.type == KodairaType{Sym::In, 12});
  CHECK(f.m_b == 12);
  CHECK(f.e_b == 12);

  f = kodaira_type_at(legendre_power(3), at("t+7"));
  CHECK(f.type.symbol == Sym::I0);
  CHECK(f.e_b == 0);

  // The additive potentially-good types, from y^2 = x^3 + t^a x + t^b.
  struct Case {
    const char* A;
    const char* B;
    Sym sym;
    int e;
  };
  for (const auto& c : {Case{"t", "t", Sym::II, 2}, Case{"t", "t^2", Sym::III, 3},
                        Case{"t^2", "t^2", Sym::IV, 4}, Case{"t^2", "t^3", Sym::InStar, 6},
                        Case{"t^3", "t^4", Sym::IVStar, 8}, Case{"t^3", "t^5", Sym::IIIStar, 9},
                        Case{"t^4", "t^5", Sym::IIStar, 10}}) {
    auto r = kodaira_type_at(WeierstrassSurface::short_form(R(c.A), R(c.B)), at("t"));
    std::string label = std::string(c.A) + ", " + c.B;
    CAPTURE(label);
    CHECK(r.type.symbol == c.sym);
    CHECK(r.e_b == c.e);
  }
  CHECK_THROWS_AS(classify_char0(1, 1, 5), InternalTableMiss);
  CHECK_THROWS_AS(classify_char0(3, 4, 7), InternalTableMiss);
  CHECK(classify_char0(2, 3, 13) == KodairaType{Sym::InStar, 7});
}

TEST_CASE("legendre fibre tables match the cyclotomic oracle for d = 1..8") {
  auto phi = cyclotomics_up_to(8);
  for (int d = 1; d <= 8; ++d) {
    CAPTURE(d);
    auto report = surface_report(legendre_power(d));
    std::map<std::string, KodairaType> expected;
    expected["t"] = {Sym::In, 2 * d};
    for (const auto& [k, p] : phi)
      if (d % k == 0) expected[p.to_string()] = {Sym::In, 2};
    expected["inf"] = d % 2 ? KodairaType{Sym::InStar, 2 * d} : KodairaType{Sym::In, 2 * d};

    REQUIRE(report.fibres.size() == expected.size());
    long e = 0;
    for (const auto& f : report.fibres) {
      CAPTURE(f.place.name());
      REQUIRE(expected.count(f.place.name()) == 1);
      CHECK(f.type == expected[f.place.name()]);
      CHECK(f.m_b == f.type.components());
      e += f.place.degree() * f.e_b;
    }
    CHECK(report.euler == e);
  }
}

TEST_CASE("euler numbers and kodaira dimension of legendre surfaces") {
  for (int d = 1; d <= 10; ++d) {
    CAPTURE(d);
    long e = euler_characteristic(legendre_power(d));
    CHECK(e == (d % 2 == 0 ? 6 * d : 6 * (d + 1)));
  }
  CHECK(kodaira_dimension(legendre_power(1)) == KodairaDimension::NegInf);
  CHECK(kodaira_dimension(legendre_power(2)) == KodairaDimension::NegInf);
  CHECK(kodaira_dimension(legendre_power(3)) == KodairaDimension::Zero);
  CHECK(kodaira_dimension(legendre_power(4)) == KodairaDimension::Zero);
  for (int d = 5; d <= 9; ++d) CHECK(kodaira_dimension(legendre_power(d)) == KodairaDimension::One);
  CHECK(euler_characteristic(parse_surface("A = 1; B = 1")) == 0);
  CHECK(kodaira_dimension(parse_surface("A = 1; B = 1")) == KodairaDimension::NegInf);
}

TEST_CASE("non-minimal input is typed after minimalization and bad Euler sums are rejected") {
  // Rescaling by any u leaves every fibre type unchanged.
  auto base = surface_report(legendre_power(3));
  auto twisted = legendre_power(3).rescaled(R("(t^2+1)^2 (t-3) / t^3"));
  auto r = surface_report(twisted);
  REQUIRE(r.fibres.size() == base.fibres.size());
  for (std::size_t i = 0; i < r.fibres.size(); ++i) {
    CHECK(r.fibres[i].place == base.fibres[i].place);
    CHECK(r.fibres[i].type == base.fibres[i].type);
  }
  CHECK_THROWS_AS(kodaira_dimension_from_euler(18), NotTwelveDivisible);
}

TEST_CASE("minimalize_at is idempotent at every bad place of random surfaces") {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 30) {
    auto A = RatFunc(random_poly(rng, 6), Poly::monomial(1, static_cast<int>(rng() % 3)));
    auto B = RatFunc(random_poly(rng, 8), Poly::monomial(1, static_cast<int>(rng() % 4)));
    try {
      auto S = WeierstrassSurface::short_form(A * pow(R("t-1"), 4), B * pow(R("t-1"), 6));
      for (const auto& b : bad_places(S)) {
        auto m = minimalize_at(S, b);
        CHECK(minimalize_at(m.model, b).exponent == 0);
      }
      ++done;
    } catch (const SingularGenericFibre&) {
    }
  }
}

TEST_CASE("euler characteristic of 50 random surfaces is 12 chi") {
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 50) {
    Poly A = random_poly(rng, 8), B = random_poly(rng, 12);
    if (A.is_zero() && B.is_zero()) continue;
    WeierstrassSurface S = WeierstrassSurface::short_form(A, B);
    try {
      S = WeierstrassSurface::short_form(A, B);
    } catch (const SingularGenericFibre&) {
      continue;
    }
    long e = euler_characteristic(S);
    CHECK(e % 12 == 0);
    // Oracle when the finite part is visibly minimal: squarefree discriminant means every
    // finite fibre is I1 or II, and the smallest chi with deg A <= 4 chi, deg B <= 6 chi
    // gives a model minimal at infinity too, so e = 12 chi.
    Poly D = S.discriminant().numer();
    if (!D.is_constant() && poly_gcd(D, D.derivative()).is_constant()) {
      int chi = 1;
      while ((!A.is_zero() && A.degree() > 4 * chi) || (!B.is_zero() && B.degree() > 6 * chi)) ++chi;
      CHECK(e == 12 * chi);
    }
    ++done;
  }
}

TEST_CASE("base change") {
  for (int d = 1; d <= 7; ++d) {
    auto S = base_change(legendre_power(1), pow(RatFunc::t(), d));
    CHECK(S == legendre_power(d));
  }
  auto shifted = base_change(legendre_power(2), R("t+1"));
  auto b = bad_places(shifted);
  CHECK(std::count(b.begin(), b.end(), at("t+1")) == 1);
  CHECK(std::count(b.begin(), b.end(), at("t")) == 1);
  CHECK(std::count(b.begin(), b.end(), at("t+2")) == 1);

  auto q = base_change(legendre_power(3), R("t^2 + 3"));
  CHECK(euler_characteristic(q) % 12 == 0);
  CHECK(euler_characteristic(q) > 0);

  // Non-minimal after pullback: y^2 = x^3 + s^4 x + s^6 + s^7 pulled back along t^2.
  auto nm = base_change(WeierstrassSurface::short_form(R("t^2"), R("t^3 + t^4")), R("t^2"));
  CHECK(*valuation(nm.discriminant(), at("t")) < 12);
  CHECK_THROWS(base_change(legendre_power(1), R("5")));
}

TEST_CASE("surface text format and JSON") {
  auto S = parse_surface("a1=0; a2 = 1 + t^5; a3=0; a4 = t^5; a6 = 0");
  CHECK(S == legendre_power(5));
  CHECK(parse_surface("a2 = 1 + t^5; a4 = t^5;") == legendre_power(5));
  CHECK(parse_surface("A = t; B = 1").a4() == R("t"));
  try {
    parse_surface("A = t; B = 1 + (t");
    FAIL("expected a parse error");
  } catch (const dioph::qalg::ParseError& e) {
    CHECK(e.position() == 17);
  }
  CHECK_THROWS_AS(parse_surface("A = t; a2 = 1"), dioph::qalg::ParseError);
  CHECK_THROWS_AS(parse_surface("C = t"), dioph::qalg::ParseError);
  CHECK_THROWS_AS(parse_surface(" ; "), dioph::qalg::ParseError);

  std::string j = to_json(surface_report(legendre_power(5)));
  CHECK(j.find(R"({"place":"t","type":"I_10","m":10,"e":10,"vdelta":10,"vc4":0,"vc6":0,"deg":1,"points":1})") !=
        std::string::npos);
  CHECK(j.find(R"("euler":36,"kappa":"1")") != std::string::npos);
  CHECK(j.find(R"("place":"t^4 + t^3 + t^2 + t + 1")") != std::string::npos);
}
