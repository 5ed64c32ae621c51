#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dioph/ecq/curve.hpp"
#include "dioph/ksurface/surface.hpp"

namespace dioph::ecq {

using ksurface::KodairaType;

enum class ReductionKind { Good, Multiplicative, Additive };

struct ReductionData {
  BigInt p;
  ReductionKind kind = ReductionKind::Good;
  bool split = false;  // meaningful for multiplicative reduction only
  KodairaType kodaira;
  int f_p = 0;      // conductor exponent
  int v_delta = 0;  // v_p of the minimal discriminant
  std::optional<int> w_p;  // local root number; nullopt for additive p = 2, 3

  int ap() const;  // trace at a bad prime: 1 split, -1 nonsplit, 0 additive
};

struct MinimalModel {
  CurveQ curve;   // reduced global minimal model: a1, a3 in {0,1}, a2 in {-1,0,1}
  Isomorphism w;  // from the input model to `curve`
};

/// Global minimal model over Z (Q has class number one, so one exists).
MinimalModel minimal_model(const CurveQ& E);

/// Tate's algorithm at p on the minimal model (minimalizes internally).
ReductionData tate_at(const CurveQ& E, const BigInt& p);

/// Everything local about a curve, computed once.
struct CurveAnalysis {
  MinimalModel minimal;
  BigInt delta_min;
  std::vector<ReductionData> bad;  // increasing p
  BigInt conductor;

  const ReductionData* at(const BigInt& p) const;
};
CurveAnalysis analyze(const CurveQ& E);

BigInt conductor(const CurveQ& E);

/// nullopt for additive reduction at 2 or 3.
std::optional<int> local_root_number(const CurveQ& E, const BigInt& p);

}  // namespace dioph::ecq
