#include "dioph/ksurface/surface.hpp"

#include <algorithm>
#include "json.hpp"

#include "dioph/qalg/factor.hpp"

namespace dioph::ksurface {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct MinimalData {
  int k = 0;  // rescale exponent
  std::optional<int> vc4, vc6;
  int vdelta = 0;
};

MinimalData minimal_data(const WeierstrassSurface& S, const Place& b) {
  auto vc4 = valuation(S.c4(), b);
  auto vc6 = valuation(S.c6(), b);
  int vd = *valuation(S.discriminant(), b);
  int k = floor_div(vd, 12);
  if (vc4) k = std::min(k, floor_div(*vc4, 4));
  if (vc6) k = std::min(k, floor_div(*vc6, 6));
  MinimalData m;
  m.k = k;
  if (vc4) m.vc4 = *vc4 - 4 * k;
  if (vc6) m.vc6 = *vc6 - 6 * k;
  m.vdelta = vd - 12 * k;
  return m;
}

// Rational function with valuation k at b and, for finite b, no other zeros or poles
// away from infinity.
RatFunc uniformizer_power(const Place& b, int k) {
  if (b.is_infinity()) return pow(RatFunc::t(), -k);
  return pow(RatFunc(b.poly()), k);
}

void add_places_of(const Poly& p, std::vector<Place>& out) {
  if (p.is_constant()) return;
  for (const auto& sf : qalg::squarefree_decomposition(p).factors)
    for (auto& q : qalg::irreducible_factors(sf.poly)) out.push_back(Place::finite(std::move(q)));
}

std::vector<Place> finite_candidates(const WeierstrassSurface& S) {
  std::vector<Place> c;
  add_places_of(S.discriminant().numer(), c);
  add_places_of(S.discriminant().denom(), c);
  add_places_of(S.c4().denom(), c);
  add_places_of(S.c6().denom(), c);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

WeierstrassSurface::WeierstrassSurface(RatFunc a1, RatFunc a2, RatFunc a3, RatFunc a4, RatFunc a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const auto& [A1, A2, A3, A4, A6] = a_;
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -(b2_ * b2_ * b2_) + 36 * b2_ * b4_ - 216 * b6_;
  delta_ = -(b2_ * b2_ * b8_) - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (delta_.is_zero()) throw SingularGenericFibre();
}

RatFunc WeierstrassSurface::j_invariant() const { return c4_ * c4_ * c4_ / delta_; }

WeierstrassSurface WeierstrassSurface::to_short_form() const { return short_form(-27 * c4_, -54 * c6_); }

WeierstrassSurface WeierstrassSurface::rescaled(const RatFunc& u) const {
  static constexpr int kWeight[5] = {1, 2, 3, 4, 6};
  std::array<RatFunc, 5> b;
  for (int i = 0; i < 5; ++i) b[i] = a_[i] / pow(u, kWeight[i]);
  return {b[0], b[1], b[2], b[3], b[4]};
}

std::string WeierstrassSurface::to_string() const {
  static constexpr const char* kName[5] = {"a1", "a2", "a3", "a4", "a6"};
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (i) s += "; ";
    s += std::string(kName[i]) + " = " + a_[i].to_string();
  }
  return s;
}

std::string Place::name() const { return is_infinity() ? "inf" : poly_->to_string(); }

bool operator<(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
  return canonical_less(*a.poly_, *b.poly_);
}

std::optional<int> valuation(const RatFunc& f, const Place& b) {
  if (f.is_zero()) return std::nullopt;
  if (b.is_infinity()) return f.denom().degree() - f.numer().degree();
  return qalg::valuation(f.numer(), b.poly()) - qalg::valuation(f.denom(), b.poly());
}

int KodairaType::components() const {
  switch (symbol) {
    case Symbol::I0: return 1;
    case Symbol::In: return n;
    case Symbol::II: return 1;
    case Symbol::III: return 2;
    case Symbol::IV: return 3;
    case Symbol::InStar: return n + 5;
    case Symbol::IVStar: return 7;
    case Symbol::IIIStar: return 8;
    case Symbol::IIStar: return 9;
  }
  return 1;
}

std::string KodairaType::to_string() const {
  switch (symbol) {
    case Symbol::I0: return "I0";
    case Symbol::In: return "I_" + std::to_string(n);
    case Symbol::II: return "II";
    case Symbol::III: return "III";
    case Symbol::IV: return "IV";
    case Symbol::InStar: return "I*_" + std::to_string(n);
    case Symbol::IVStar: return "IV*";
    case Symbol::IIIStar: return "III*";
    case Symbol::IIStar: return "II*";
  }
  return "?";
}

KodairaType classify_char0(std::optional<int> v_c4, std::optional<int> v_c6, int v_delta) {
  using S = KodairaType::Symbol;
  auto miss = [&]() -> KodairaType {
    auto show = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("inf"); };
    throw InternalTableMiss("no Kodaira type for valuations (c4, c6, delta) = (" + show(v_c4) + ", " +
                            show(v_c6) + ", " + std::to_string(v_delta) + ")");
  };
  if (v_delta < 0) return miss();
  if (v_delta == 0) return {S::I0, 0};
  if (v_c4 && *v_c4 == 0) return {S::In, v_delta};
  // Potentially multiplicative: v(j) = 3 v(c4) - v(delta) < 0.
  if (v_c4 && 3 * *v_c4 < v_delta) {
    if (*v_c4 != 2 || !v_c6 || *v_c6 != 3) return miss();
    return {S::InStar, v_delta - 6};
  }
  switch (v_delta) {
    case 2: return {S::II, 0};
    case 3: return {S::III, 0};
    case 4: return {S::IV, 0};
    case 6: return {S::InStar, 0};
    case 8: return {S::IVStar, 0};
    case 9: return {S::IIIStar, 0};
    case 10: return {S::IIStar, 0};
    default: return miss();
  }
}

std::string to_string(KodairaDimension k) {
  switch (k) {
    case KodairaDimension::NegInf: return "-inf";
    case KodairaDimension::Zero: return "0";
    case KodairaDimension::One: return "1";
  }
  return "?";
}

MinimalizedModel minimalize_at(const WeierstrassSurface& S, const Place& b) {
  int k = minimal_data(S, b).k;
  if (k == 0) return {S, 0};
  return {S.rescaled(uniformizer_power(b, k)), k};
}

FibreReport kodaira_type_at(const WeierstrassSurface& S, const Place& b) {
  MinimalData m = minimal_data(S, b);
  FibreReport r{b, {}, 1, 0, 0, {}, {}};
  r.type = classify_char0(m.vc4, m.vc6, m.vdelta);
  r.m_b = r.type.components();
  r.e_b = r.type.symbol == KodairaType::Symbol::I0 ? 0 : r.type.is_multiplicative() ? r.m_b : r.m_b + 1;
  r.v_delta = m.vdelta;
  r.v_c4 = m.vc4;
  r.v_c6 = m.vc6;
  return r;
}

std::vector<Place> bad_places(const WeierstrassSurface& S) {
  std::vector<Place> out;
  for (auto& b : finite_candidates(S))
    if (minimal_data(S, b).vdelta > 0) out.push_back(std::move(b));
  if (minimal_data(S, Place::infinity()).vdelta > 0) out.push_back(Place::infinity());
  return out;
}

namespace {

long checked_euler(const std::vector<FibreReport>& fibres) {
  long e = 0;
  for (const auto& f : fibres) e += static_cast<long>(f.place.degree()) * f.e_b;
  if (e % 12 != 0) throw NotTwelveDivisible(e);
  return e;
}

}  // namespace

long euler_characteristic(const WeierstrassSurface& S) { return surface_report(S).euler; }

KodairaDimension kodaira_dimension_from_euler(long euler) {
  if (euler < 0 || euler % 12 != 0) throw NotTwelveDivisible(euler);
  long chi = euler / 12;
  if (chi <= 1) return KodairaDimension::NegInf;
  if (chi == 2) return KodairaDimension::Zero;
  return KodairaDimension::One;
}

KodairaDimension kodaira_dimension(const WeierstrassSurface& S) {
  return kodaira_dimension_from_euler(euler_characteristic(S));
}

SurfaceReport surface_report(const WeierstrassSurface& S) {
  SurfaceReport r;
  for (const auto& b : bad_places(S)) r.fibres.push_back(kodaira_type_at(S, b));
  r.euler = checked_euler(r.fibres);
  r.kodaira_dim = kodaira_dimension_from_euler(r.euler);
  return r;
}

std::string to_json(const SurfaceReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["fibres"] = nlohmann::ordered_json::array();
  for (const auto& f : r.fibres) {
    nlohmann::ordered_json x;
    x["place"] = f.place.name();
    x["type"] = f.type.to_string();
    x["m"] = f.m_b;
    x["e"] = f.e_b;
    x["vdelta"] = f.v_delta;
    x["vc4"] = f.v_c4 ? nlohmann::ordered_json(*f.v_c4) : nlohmann::ordered_json(nullptr);
    x["vc6"] = f.v_c6 ? nlohmann::ordered_json(*f.v_c6) : nlohmann::ordered_json(nullptr);
    x["deg"] = f.place.degree();
    x["points"] = f.place.degree();
    j["fibres"].push_back(std::move(x));
  }
  j["euler"] = r.euler;
  j["kappa"] = to_string(r.kodaira_dim);
  return j.dump();
}

WeierstrassSurface legendre_power(int d) {
  if (d < 1) throw Error("legendre_power needs d >= 1, got " + std::to_string(d));
  RatFunc td = Poly::monomial(1, d);
  return {0, 1 + td, 0, td, 0};
}

WeierstrassSurface base_change(const WeierstrassSurface& S, const RatFunc& f) {
  if (f.is_constant()) throw Error("base change needs a nonconstant map");
  const auto& a = S.coefficients();
  WeierstrassSurface pulled(a[0].compose(f), a[1].compose(f), a[2].compose(f), a[3].compose(f),
                            a[4].compose(f));
  RatFunc u = 1;
  for (const auto& b : finite_candidates(pulled)) {
    int k = minimal_data(pulled, b).k;
    if (k != 0) u *= uniformizer_power(b, k);
  }
  return u == RatFunc(1) ? pulled : pulled.rescaled(u);
}

}  // namespace dioph::ksurface
