#include "dioph/ecq/local.hpp"

#include <climits>
#include <numeric>

#include "dioph/ecq/intfactor.hpp"

namespace dioph::ecq {

namespace {

using Sym = KodairaType::Symbol;

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt md(const BigInt& a, const BigInt& p) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

BigInt inv(const BigInt& a, const BigInt& p) {
  BigInt r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t())) throw Error("internal: non-invertible residue");
  return r;
}

BigInt exact(const BigInt& a, const BigInt& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw Error("internal: Tate step lost divisibility");
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

int val(const BigInt& a, const BigInt& p) { return a == 0 ? INT_MAX / 2 : valuation_p(a, p); }

struct IntModel {
  BigInt a1, a2, a3, a4, a6;

  BigInt b2() const { return a1 * a1 + 4 * a2; }
  BigInt b4() const { return 2 * a4 + a1 * a3; }
  BigInt b6() const { return a3 * a3 + 4 * a6; }
  BigInt b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  BigInt c4() const { return b2() * b2() - 24 * b4(); }
  BigInt delta() const {
    BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
};

IntModel from_curve(const CurveQ& E) {
  if (!E.is_integral()) throw Error("internal: Tate's algorithm needs an integral model");
  return {E.a1().get_num(), E.a2().get_num(), E.a3().get_num(), E.a4().get_num(), E.a6().get_num()};
}

CurveQ to_curve(const IntModel& m) { return {m.a1, m.a2, m.a3, m.a4, m.a6}; }

// Tate's algorithm with the running coordinate change.
class Tate {
 public:
  Tate(IntModel m, BigInt p) : m_(std::move(m)), p_(std::move(p)), half_(p_ == 2 ? BigInt(0) : (p_ + 1) / 2) {}

  ReductionData run();
  const IntModel& model() const { return m_; }
  const Isomorphism& change() const { return w_; }

 private:
  bool pdiv(const BigInt& a) const { return mpz_divisible_p(a.get_mpz_t(), p_.get_mpz_t()) != 0; }
  bool small() const { return p_ < 50; }

  void rst(const BigInt& r, const BigInt& s, const BigInt& t) {
    CurveQ c = apply(to_curve(m_), Isomorphism{1, r, s, t});
    m_ = from_curve(c);
    w_ = compose(w_, Isomorphism{1, r, s, t});
  }

  void rescale() {
    BigInt p2 = p_ * p_, p3 = p2 * p_;
    m_ = {exact(m_.a1, p_), exact(m_.a2, p2), exact(m_.a3, p3), exact(m_.a4, p2 * p2), exact(m_.a6, p3 * p3)};
    w_ = compose(w_, Isomorphism{BigRat(p_), 0, 0, 0});
  }

  // Singular point of the reduction, which exists whenever p | delta.
  std::pair<BigInt, BigInt> singular_point() const;
  // Repeated root of T^3 + b T^2 + c T + d mod p (double when `triple` is false).
  BigInt repeated_root(const BigInt& b, const BigInt& c, const BigInt& d, bool triple) const;

  IntModel m_;
  BigInt p_;
  BigInt half_;  // inverse of 2 mod p for odd p
  Isomorphism w_;
};

std::pair<BigInt, BigInt> Tate::singular_point() const {
  const auto& [a1, a2, a3, a4, a6] = m_;
  if (small()) {
    long p = p_.get_si();
    for (long x = 0; x < p; ++x)
      for (long y = 0; y < p; ++y) {
        BigInt X = x, Y = y;
        if (!pdiv(Y * Y + a1 * X * Y + a3 * Y - X * X * X - a2 * X * X - a4 * X - a6)) continue;
        if (!pdiv(a1 * Y - 3 * X * X - 2 * a2 * X - a4)) continue;
        if (!pdiv(2 * Y + a1 * X + a3)) continue;
        return {X, Y};
      }
    throw Error("internal: no singular point mod " + p_.get_str());
  }
  // Odd p: (2y + a1 x + a3)^2 = F(x); the singular x is a repeated root of F.
  BigInt b2 = m_.b2(), b4 = m_.b4(), b6 = m_.b6();
  BigInt i4 = inv(BigInt(4), p_);
  BigInt x0 = repeated_root(md(b2 * i4, p_), md(2 * b4 * i4, p_), md(b6 * i4, p_), pdiv(m_.c4()));
  BigInt y0 = md(-(a1 * x0 + a3) * half_, p_);
  return {x0, y0};
}

BigInt Tate::repeated_root(const BigInt& b, const BigInt& c, const BigInt& d, bool triple) const {
  if (small()) {
    long p = p_.get_si();
    for (long x = 0; x < p; ++x) {
      BigInt X = x;
      if (pdiv(((X + b) * X + c) * X + d) && pdiv((3 * X + 2 * b) * X + c)) {
        if (!triple || pdiv(3 * X + b)) return X;
      }
    }
    throw Error("internal: no repeated root mod " + p_.get_str());
  }
  if (triple) return md(-b * inv(BigInt(3), p_), p_);
  BigInt x = 3 * c - b * b;
  return md((b * c - 9 * d) * inv(2 * x, p_), p_);
}

ReductionData Tate::run() {
  ReductionData rd;
  rd.p = p_;
  const BigInt& p = p_;
  while (true) {
    BigInt delta = m_.delta();
    const int vD = val(delta, p);
    rd.v_delta = vD;
    if (vD == 0) {
      rd.kind = ReductionKind::Good;
      rd.kodaira = {Sym::I0, 0};
      rd.f_p = 0;
      return rd;
    }
    auto [x0, y0] = singular_point();
    rst(x0, 0, y0);
    if (!pdiv(m_.a3) || !pdiv(m_.a4) || !pdiv(m_.a6)) throw Error("internal: singular point not moved to origin");

    if (!pdiv(m_.b2())) {
      rd.kind = ReductionKind::Multiplicative;
      rd.kodaira = {Sym::In, vD};
      rd.f_p = 1;
      // Tangent cone y^2 + a1 xy - a2 x^2 splits over F_p.
      rd.split = p == 2 ? pdiv(m_.a2) : legendre(m_.b2(), p) == 1;
      return rd;
    }
    rd.kind = ReductionKind::Additive;
    if (val(m_.a6, p) < 2) {
      rd.kodaira = {Sym::II, 0};
      rd.f_p = vD;
      return rd;
    }
    if (val(m_.b8(), p) < 3) {
      rd.kodaira = {Sym::III, 0};
      rd.f_p = vD - 1;
      return rd;
    }
    if (val(m_.b6(), p) < 3) {
      rd.kodaira = {Sym::IV, 0};
      rd.f_p = vD - 2;
      return rd;
    }
    if (p == 2) {
      rst(0, md(m_.a2, p), 2 * md(exact(m_.a6, 4), p));
    } else {
      rst(0, -m_.a1 * half_, -m_.a3 * half_);
    }
    const BigInt p2 = p * p, p3 = p2 * p;
    BigInt b = exact(m_.a2, p), c = exact(m_.a4, p2), d = exact(m_.a6, p3);
    BigInt w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    BigInt x = 3 * c - b * b;
    if (!pdiv(w)) {
      rd.kodaira = {Sym::InStar, 0};
      rd.f_p = vD - 4;
      return rd;
    }
    if (!pdiv(x)) {
      rst(p * repeated_root(md(b, p), md(c, p), md(d, p), false), 0, 0);
      int ix = 3, iy = 3;
      BigInt mx = p2, my = p2;
      while (true) {
        BigInt a2t = exact(m_.a2, p), a3t = exact(m_.a3, my), a4t = exact(m_.a4, p * mx),
               a6t = exact(m_.a6, mx * my);
        if (!pdiv(a3t * a3t + 4 * a6t)) break;
        rst(0, 0, my * (p == 2 ? md(a6t, p) : md(-a3t * half_, p)));
        my *= p;
        ++iy;
        a2t = exact(m_.a2, p);
        a4t = exact(m_.a4, p * mx);
        a6t = exact(m_.a6, mx * my);
        if (!pdiv(a4t * a4t - 4 * a6t * a2t)) break;
        rst(mx * (p == 2 ? md(a6t * inv(a2t, p), p) : md(-a4t * inv(2 * a2t, p), p)), 0, 0);
        mx *= p;
        ++ix;
      }
      rd.kodaira = {Sym::InStar, ix + iy - 5};
      rd.f_p = vD - ix - iy + 1;
      return rd;
    }
    // Triple root.
    BigInt rho = p == 2 ? md(b, p) : p == 3 ? md(-d, p) : md(-b * inv(BigInt(3), p), p);
    rst(p * rho, 0, 0);
    BigInt a3t = exact(m_.a3, p2), a6t = exact(m_.a6, p2 * p2);
    if (!pdiv(a3t * a3t + 4 * a6t)) {
      rd.kodaira = {Sym::IVStar, 0};
      rd.f_p = vD - 6;
      return rd;
    }
    rst(0, 0, p2 * (p == 2 ? md(a6t, p) : md(-a3t * half_, p)));
    if (val(m_.a4, p) < 4) {
      rd.kodaira = {Sym::IIIStar, 0};
      rd.f_p = vD - 7;
      return rd;
    }
    if (val(m_.a6, p) < 6) {
      rd.kodaira = {Sym::IIStar, 0};
      rd.f_p = vD - 8;
      return rd;
    }
    rescale();
  }
}

// Local root number from the reduction data (Rohrlich's formulas for p >= 5).
std::optional<int> root_number_from(const ReductionData& rd) {
  switch (rd.kind) {
    case ReductionKind::Good: return 1;
    case ReductionKind::Multiplicative: return rd.split ? -1 : 1;
    case ReductionKind::Additive: break;
  }
  if (rd.p == 2 || rd.p == 3) return std::nullopt;
  if (rd.kodaira.symbol == Sym::InStar && rd.kodaira.n >= 1) return legendre(BigInt(-1), rd.p);
  int e = 12 / std::gcd(rd.v_delta, 12);
  if (e == 3) return legendre(BigInt(-3), rd.p);
  if (e == 4) return legendre(BigInt(-2), rd.p);
  return legendre(BigInt(-1), rd.p);
}

ReductionData finish(ReductionData rd) {
  rd.w_p = root_number_from(rd);
  return rd;
}

}  // namespace

int ReductionData::ap() const {
  switch (kind) {
    case ReductionKind::Good: throw Error("internal: ReductionData::ap at a good prime");
    case ReductionKind::Multiplicative: return split ? 1 : -1;
    case ReductionKind::Additive: return 0;
  }
  return 0;
}

MinimalModel minimal_model(const CurveQ& E) {
  BigInt D = 1;
  for (const auto& a : E.coefficients()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), a.get_den_mpz_t());
  Isomorphism w{BigRat(1, D), 0, 0, 0};
  CurveQ cur = D == 1 ? E : apply(E, w);
  if (D == 1) w = Isomorphism{};

  for (const auto& [p, e] : factor_integer(cur.discriminant().get_num())) {
    if (e < 12) continue;
    Tate t(from_curve(cur), p);
    t.run();
    cur = to_curve(t.model());
    w = compose(w, t.change());
  }

  // Reduce: a1, a3 in {0, 1}, a2 in {-1, 0, 1}.
  const BigInt a1 = cur.a1().get_num(), a2 = cur.a2().get_num(), a3 = cur.a3().get_num();
  BigInt s = -fdiv(a1, 2);
  BigInt r = -fdiv(a2 - s * a1 - s * s + 1, 3);
  BigInt t = -fdiv(a3 + r * a1, 2);
  Isomorphism n{1, r, s, t};
  return {apply(cur, n), compose(w, n)};
}

ReductionData tate_at(const CurveQ& E, const BigInt& p) {
  CurveQ m = minimal_model(E).curve;
  return finish(Tate(from_curve(m), p).run());
}

const ReductionData* CurveAnalysis::at(const BigInt& p) const {
  for (const auto& r : bad)
    if (r.p == p) return &r;
  return nullptr;
}

CurveAnalysis analyze(const CurveQ& E) {
  CurveAnalysis a{minimal_model(E), 0, {}, 1};
  a.delta_min = a.minimal.curve.discriminant().get_num();
  a.conductor = 1;
  const IntModel im = from_curve(a.minimal.curve);
  for (const auto& [p, e] : factor_integer(a.delta_min)) {
    ReductionData rd = finish(Tate(im, p).run());
    if (rd.v_delta != e) throw Error("internal: Tate changed the minimal discriminant at " + p.get_str());
    if (rd.f_p != e - rd.kodaira.components() + 1) throw Error("internal: Ogg's formula fails at " + p.get_str());
    BigInt pf;
    mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(rd.f_p));
    a.conductor *= pf;
    a.bad.push_back(std::move(rd));
  }
  return a;
}

BigInt conductor(const CurveQ& E) { return analyze(E).conductor; }

std::optional<int> local_root_number(const CurveQ& E, const BigInt& p) { return tate_at(E, p).w_p; }

}  // namespace dioph::ecq
