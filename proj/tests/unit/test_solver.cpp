#include "common.hpp"
#include "exreg/solver.hpp"

#include "doctest.h"

using namespace exreg;

namespace {

double lg(const APComplex& x) { return x.is_zero() ? -1000.0 : log10(x.abs()).to_double(); }

}  // namespace

TEST_CASE("generators built from parameters have determinant one") {
  const auto& r = test::region("X0");
  auto sol = newton_solve(r, 60);
  auto [f, w] = build_fw(sol.pt);
  CHECK(lg(f.det() - 1) < -55);
  CHECK(lg(w.det() - 1) < -55);
}

TEST_CASE("Newton converges inside the box for X0 at 120 digits") {
  const auto& r = test::region("X0");
  auto sol = newton_solve(r, 120);
  CHECK(sol.inside_box);
  CHECK(log10(sol.residual).to_double() < -110);
  CHECK(sol.jacobian_fd_gap < 1e-6);
  auto res = relator_residuals(r, sol.pt, sol.sigma1, sol.sigma2);
  CHECK(log10(max_abs(res)).to_double() < -110);
}

TEST_CASE("traces map back to the same parameters") {
  const auto& r = test::region("X3");
  auto sol = newton_solve(r, 80);
  REQUIRE(sol.inside_box);
  TracePoint tp = trace_point(sol.pt);
  ParamPoint back = traces_to_params(tp, r.box);
  CHECK(lg(back.Lp - sol.pt.Lp) < -60);
  CHECK(lg(back.Dp - sol.pt.Dp) < -60);
  CHECK(lg(back.Rp - sol.pt.Rp) < -60);
  // The conjugated pair has the same traces.
  auto [f2, w2] = conjugate_pair(tp);
  auto [f, w] = build_fw(sol.pt);
  CHECK(lg(f2.trace() - f.trace()) < -60);
  CHECK(lg(w2.trace() - w.trace()) < -60);
  CHECK(lg((f2 * w2).trace() - (f * w).trace()) < -60);
}

TEST_CASE("every catalog region solves") {
  for (const auto& r : test::catalog().regions) {
    INFO(r.name);
    auto sol = newton_solve(r, 60);
    CHECK(sol.inside_box);
    CHECK(log10(sol.residual).to_double() < -50);
  }
}
