#include "dioph/ecq/curve.hpp"

namespace dioph::ecq {

CurveQ::CurveQ(BigRat a1, BigRat a2, BigRat a3, BigRat a4, BigRat a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  for (auto& c : a_) c.canonicalize();
  const BigRat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  delta_ = -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  if (delta_ == 0) throw SingularCurve();
}

BigRat CurveQ::b8() const {
  return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
}

BigRat CurveQ::c4() const {
  BigRat B2 = b2();
  return B2 * B2 - 24 * b4();
}

BigRat CurveQ::c6() const {
  BigRat B2 = b2();
  return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
}

BigRat CurveQ::j_invariant() const {
  BigRat C4 = c4();
  return C4 * C4 * C4 / delta_;
}

bool CurveQ::is_integral() const {
  for (const auto& c : a_)
    if (c.get_den() != 1) return false;
  return true;
}

CurveQ CurveQ::short_model() const { return short_form(-27 * c4(), -54 * c6()); }

std::string CurveQ::to_string() const {
  std::string s = "[";
  for (int i = 0; i < 5; ++i) {
    if (i) s += ",";
    s += qalg::to_string(a_[i]);
  }
  return s + "]";
}

bool on_curve(const CurveQ& E, const PointQ& P) {
  if (P.infinity) return true;
  const BigRat &x = P.x, &y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y == ((x + E.a2()) * x + E.a4()) * x + E.a6();
}

PointQ negate(const CurveQ& E, const PointQ& P) {
  if (P.infinity) return P;
  return PointQ::affine(P.x, -P.y - E.a1() * P.x - E.a3());
}

PointQ add(const CurveQ& E, const PointQ& P, const PointQ& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  BigRat lambda;
  if (P.x == Q.x) {
    BigRat den = 2 * P.y + E.a1() * P.x + E.a3();
    if (P.y != Q.y || den == 0) return PointQ::identity();
    lambda = (3 * P.x * P.x + 2 * E.a2() * P.x + E.a4() - E.a1() * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  BigRat nu = P.y - lambda * P.x;
  BigRat x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  BigRat y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return PointQ::affine(std::move(x3), std::move(y3));
}

PointQ multiply(const CurveQ& E, const PointQ& P, long k) {
  if (k < 0) return multiply(E, negate(E, P), -k);
  PointQ acc = PointQ::identity(), base = P;
  while (k > 0) {
    if (k & 1) acc = add(E, acc, base);
    k >>= 1;
    if (k > 0) base = add(E, base, base);
  }
  return acc;
}

CurveQ apply(const CurveQ& E, const Isomorphism& w) {
  const auto& [u, r, s, t] = w;
  const BigRat &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
  BigRat u2 = u * u, u3 = u2 * u;
  return {(a1 + 2 * s) / u,
          (a2 - s * a1 + 3 * r - s * s) / u2,
          (a3 + r * a1 + 2 * t) / u3,
          (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / (u2 * u2),
          (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (u3 * u3)};
}

PointQ apply(const Isomorphism& w, const PointQ& P) {
  if (P.infinity) return P;
  BigRat u2 = w.u * w.u;
  BigRat x = (P.x - w.r) / u2;
  BigRat y = (P.y - w.s * (P.x - w.r) - w.t) / (u2 * w.u);
  return PointQ::affine(std::move(x), std::move(y));
}

Isomorphism compose(const Isomorphism& w1, const Isomorphism& w2) {
  BigRat u1sq = w1.u * w1.u;
  return {w1.u * w2.u, w1.r + u1sq * w2.r, w1.s + w1.u * w2.s,
          w1.t + u1sq * w1.u * w2.t + w1.s * u1sq * w2.r};
}

Isomorphism inverse(const Isomorphism& w) {
  BigRat u2 = w.u * w.u;
  return {1 / w.u, -w.r / u2, -w.s / w.u, (w.r * w.s - w.t) / (u2 * w.u)};
}

// x_s = 36 x + 3 b2, y_s = 108 (2y + a1 x + a3).
Isomorphism to_short_model(const CurveQ& E) {
  return {BigRat(1, 6), -E.b2() / 12, -E.a1() / 2, E.a1() * E.b2() / 24 - E.a3() / 2};
}

CurveQ specialize(const ksurface::WeierstrassSurface& S, const BigRat& c) {
  if (S.discriminant().eval(c) == 0) throw SingularFibre(c);
  const auto& a = S.coefficients();
  try {
    return {a[0].eval(c), a[1].eval(c), a[2].eval(c), a[3].eval(c), a[4].eval(c)};
  } catch (const SingularCurve&) {
    throw SingularFibre(c);
  }
}

}  // namespace dioph::ecq
