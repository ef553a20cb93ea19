#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/catalog.hpp"
#include "exreg/mat2.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exreg {

using CMat = Mat2<APComplex>;

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (L′, D′, R′): exponentials of the complex translation parameters.
struct ParamPoint {
  APComplex Lp, Dp, Rp;
  const APComplex& operator[](Param p) const {
    return p == Param::L ? Lp : (p == Param::D ? Dp : Rp);
  }
};

/// p = tr f, q = tr w, r = tr(f⁻¹w), and z with z² − qz + 1 = 0.
struct TracePoint {
  APComplex p, q, r, z;
};

/// f = diag(√L′, 1/√L′), w = [[√R′·ch, √R′·sh], [sh/√R′, ch/√R′]] with
/// ch, sh built from c = √D′ (principal roots throughout).
std::pair<CMat, CMat> build_fw(const ParamPoint& pt);

/// Closed forms for tr f², tr w², tr f²w².
struct SquareTraces {
  APComplex trf2, trw2, trf2w2;
};
SquareTraces traces_from_params(const ParamPoint& pt);

/// Traces of the matrices from build_fw; z is the root of z² − qz + 1 of
/// larger modulus.
TracePoint trace_point(const ParamPoint& pt);

/// One branch choice of the inverse formulas.
struct BranchCandidate {
  ParamPoint pt;
  int sign_sqrt_disc_L;  // ± in the L′ formula
  int sign_a;            // sign of √L′ fed to the R′ formula
  int sign_b;            // sign of √R′ fed to the D′ formula
  int sign_sqrt_disc_D;  // ± in the D′ formula
  bool reproduces_traces;
};

/// All 16 branch combinations (some may coincide). Throws on p² = 4 or a
/// vanishing denominator in the R′ formula.
std::vector<BranchCandidate> trace_branch_candidates(const TracePoint& tp);

/// The unique trace-reproducing branch inside the box; throws SolverError if
/// none or several distinct candidates land there.
ParamPoint traces_to_params(const TracePoint& tp, const BoxRegion& box);

/// Normal form f₂ = [[0,1],[−1,p]], w₂ = [[z,0],[pz−r, q−z]] over any scalar domain.
template <class S>
std::pair<Mat2<S>, Mat2<S>> conjugate_pair(const S& p, const S& q, const S& r, const S& z) {
  Mat2<S> f2{zero_like(p), one_like(p), -one_like(p), p};
  Mat2<S> w2{z, zero_like(p), p * z - r, q - z};
  return {f2, w2};
}

/// Checks z(q − z) = 1 to the point's precision and returns the normal form.
std::pair<CMat, CMat> conjugate_pair(const TracePoint& tp);

struct NewtonOptions {
  int start_digits = 40;
  int max_iterations = 60;
  int stagnation_window = 5;
  /// Enlargement factor of the box that iterates must stay in.
  long divergence_factor = 3;
};

struct NewtonStep {
  int digits;
  int iteration;
  double log10_residual;
};

struct NewtonResult {
  ParamPoint pt;
  int sigma1 = 1, sigma2 = 1;
  int iterations = 0;
  Real residual;
  int digits = 0;
  std::vector<NewtonStep> history;
  /// Max relative gap between the analytic Jacobian and central differences at the start.
  double jacobian_fd_gap = 0;
  bool inside_box = false;
};

/// Entries of r₁ − σ₁I and r₂ − σ₂I (8 complex values).
std::vector<APComplex> relator_residuals(const RegionRecord& region, const ParamPoint& pt, int sigma1, int sigma2);

/// SL(2) lift signs chosen at a point: sign of the nearer of ±I per relator.
std::pair<int, int> relator_signs(const RegionRecord& region, const ParamPoint& pt);

/// Complex Jacobian (8 × 3) of relator_residuals with respect to (L′, D′, R′).
std::vector<std::vector<APComplex>> relator_jacobian(const RegionRecord& region, const ParamPoint& pt);

/// Gauss–Newton from the box midpoint with a precision ladder
/// start_digits → digits. Converged when every residual entry is below
/// 10^(−digits+10).
NewtonResult newton_solve(const RegionRecord& region, int digits, const NewtonOptions& opt = {});

/// Largest modulus among the entries.
Real max_abs(const std::vector<APComplex>& v);

}  // namespace exreg
