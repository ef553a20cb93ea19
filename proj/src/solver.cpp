#include "exreg/solver.hpp"

#include <algorithm>
#include <cmath>

namespace exreg {

namespace {

void require_nonzero(const ParamPoint& pt) {
  if (pt.Lp.is_zero() || pt.Dp.is_zero() || pt.Rp.is_zero()) {
    throw SolverError("parameter point has a zero coordinate");
  }
}

APComplex one(const APComplex& like) { return APComplex(1L, like.precision()); }

// ch and sh from c = √D′.
std::pair<APComplex, APComplex> chsh(const APComplex& c) {
  const APComplex ci = c.inverse();
  return {(c + ci) / 2L, (c - ci) / 2L};
}

Real tolerance(int digits, mpfr_prec_t bits) { return pow10(-digits, bits); }

}  // namespace

Real max_abs(const std::vector<APComplex>& v) {
  Real m(0L, v.empty() ? mpfr_prec_t(64) : v[0].precision());
  for (const auto& x : v) m = std::max(m, x.abs(), [](const Real& a, const Real& b) { return a < b; });
  return m;
}

std::pair<CMat, CMat> build_fw(const ParamPoint& pt) {
  require_nonzero(pt);
  const APComplex a = sqrt(pt.Lp), b = sqrt(pt.Rp), c = sqrt(pt.Dp);
  const auto [ch, sh] = chsh(c);
  const APComplex zero = APComplex(0L, a.precision());
  CMat f{a, zero, zero, a.inverse()};
  const APComplex bi = b.inverse();
  CMat w{b * ch, b * sh, sh * bi, ch * bi};
  return {f, w};
}

SquareTraces traces_from_params(const ParamPoint& pt) {
  require_nonzero(pt);
  const APComplex& L = pt.Lp;
  const APComplex& D = pt.Dp;
  const APComplex& R = pt.Rp;
  const APComplex Dsum = D + D.inverse();
  const APComplex RL = R * L;
  SquareTraces t;
  t.trf2 = L + L.inverse();
  t.trw2 = ((R + R.inverse() + 2L) * (Dsum + 2L) - one(L) * 8L) / 4L;
  t.trf2w2 = ((Dsum + 2L) * (RL + RL.inverse()) + (Dsum - 2L) * (L + L.inverse())) / 4L;
  return t;
}

TracePoint trace_point(const ParamPoint& pt) {
  const auto [f, w] = build_fw(pt);
  TracePoint tp;
  tp.p = f.trace();
  tp.q = w.trace();
  tp.r = (f.adjugate() * w).trace();
  const APComplex disc = sqrt(tp.q * tp.q - 4L);
  const APComplex z1 = (tp.q + disc) / 2L, z2 = (tp.q - disc) / 2L;
  tp.z = z1.abs() >= z2.abs() ? z1 : z2;
  return tp;
}

std::vector<BranchCandidate> trace_branch_candidates(const TracePoint& tp) {
  const auto bits = tp.p.precision();
  const APComplex disc_l = tp.p * tp.p - 4L;
  if (disc_l.is_zero()) throw SolverError("traces_to_params: p^2 = 4 (f is not loxodromic)");
  const Real tol = tolerance(bits_to_digits(bits) / 2, bits);
  std::vector<BranchCandidate> out;
  const APComplex sdl = sqrt(disc_l);
  for (int s1 : {1, -1}) {
    const APComplex lam = (tp.p + sdl * static_cast<long>(s1)) / 2L;
    for (int sa : {1, -1}) {
      const APComplex a = lam * static_cast<long>(sa);
      const APComplex L = a * a;
      const APComplex den = tp.r * a - tp.q;
      if (den.is_zero()) throw SolverError("traces_to_params: vanishing denominator in the R' formula");
      const APComplex R = (tp.q * L - tp.r * a) / den;
      const APComplex onepR = R + 1L;
      if (onepR.is_zero() || R.is_zero()) continue;
      for (int sb : {1, -1}) {
        const APComplex b = sqrt(R) * static_cast<long>(sb);
        const APComplex sdd = sqrt(tp.q * tp.q * R * 4L - onepR * onepR * 4L);
        for (int s2 : {1, -1}) {
          const APComplex c = (tp.q * b * 2L + sdd * static_cast<long>(s2)) / (onepR * 2L);
          if (c.is_zero()) continue;
          BranchCandidate bc{{L, c * c, R}, s1, sa, sb, s2, false};
          const auto [f, w] = build_fw(bc.pt);
          const Real err = std::max({(f.trace() - tp.p).abs(), (w.trace() - tp.q).abs(),
                                     ((f.adjugate() * w).trace() - tp.r).abs()},
                                    [](const Real& x, const Real& y) { return x < y; });
          bc.reproduces_traces = err < tol;
          out.push_back(bc);
        }
      }
    }
  }
  return out;
}

ParamPoint traces_to_params(const TracePoint& tp, const BoxRegion& box) {
  const auto bits = tp.p.precision();
  const Real same = tolerance(bits_to_digits(bits) / 2, bits);
  std::vector<ParamPoint> hits;
  for (const auto& c : trace_branch_candidates(tp)) {
    if (!c.reproduces_traces) continue;
    if (!box.contains(Param::L, c.pt.Lp) || !box.contains(Param::D, c.pt.Dp) || !box.contains(Param::R, c.pt.Rp)) {
      continue;
    }
    const bool dup = std::any_of(hits.begin(), hits.end(), [&](const ParamPoint& h) {
      return (h.Lp - c.pt.Lp).abs() < same && (h.Dp - c.pt.Dp).abs() < same && (h.Rp - c.pt.Rp).abs() < same;
    });
    if (!dup) hits.push_back(c.pt);
  }
  if (hits.empty()) throw SolverError("traces_to_params: no branch lands in box " + box.name);
  if (hits.size() > 1) {
    std::string msg = "traces_to_params: " + std::to_string(hits.size()) + " branches land in box " + box.name + ":";
    for (const auto& h : hits) msg += " (" + h.Lp.to_string(8) + ", " + h.Dp.to_string(8) + ", " + h.Rp.to_string(8) + ")";
    throw SolverError(msg);
  }
  return hits[0];
}

std::pair<CMat, CMat> conjugate_pair(const TracePoint& tp) {
  const auto bits = tp.z.precision();
  const APComplex check = tp.z * (tp.q - tp.z) - 1L;
  if (!(check.abs() < tolerance(bits_to_digits(bits) - 10, bits) * (tp.z.abs() * tp.q.abs() + 1L))) {
    throw SolverError("conjugate_pair: z(q - z) != 1");
  }
  return conjugate_pair<APComplex>(tp.p, tp.q, tp.r, tp.z);
}

namespace {

std::vector<APComplex> residual_entries(const CMat& m, int sigma) {
  return {m.m11 - static_cast<long>(sigma), m.m12, m.m21, m.m22 - static_cast<long>(sigma)};
}

int nearer_sign(const CMat& m) {
  const Real plus = max_abs(residual_entries(m, 1));
  const Real minus = max_abs(residual_entries(m, -1));
  return minus < plus ? -1 : 1;
}

// Derivatives of f and w with respect to each of L′, D′, R′.
std::array<std::array<CMat, 2>, 3> param_derivatives(const ParamPoint& pt) {
  const APComplex a = sqrt(pt.Lp), b = sqrt(pt.Rp), c = sqrt(pt.Dp);
  const auto [ch, sh] = chsh(c);
  const APComplex zero(0L, a.precision());
  const CMat zm{zero, zero, zero, zero};
  const APComplex da = (a * 2L).inverse();
  const CMat df_dL{da, zero, zero, -da / (a * a)};
  const APComplex dc = (c * 2L).inverse();
  const APComplex ic2 = (c * c).inverse();
  const APComplex dch = (one(c) - ic2) / 2L * dc, dsh = (one(c) + ic2) / 2L * dc;
  const APComplex bi = b.inverse();
  const CMat dw_dD{b * dch, b * dsh, dsh * bi, dch * bi};
  const APComplex db = (b * 2L).inverse();
  const APComplex bi2 = bi * bi;
  const CMat dw_dR{db * ch, db * sh, -(sh * db * bi2), -(ch * db * bi2)};
  return {{{df_dL, zm}, {zm, dw_dD}, {zm, dw_dR}}};
}

ParamPoint with_precision(const ParamPoint& pt, mpfr_prec_t bits) {
  return {pt.Lp.with_precision(bits), pt.Dp.with_precision(bits), pt.Rp.with_precision(bits)};
}

bool in_box(const BoxRegion& box, const ParamPoint& pt) {
  return box.contains(Param::L, pt.Lp) && box.contains(Param::D, pt.Dp) && box.contains(Param::R, pt.Rp);
}

// Solves the dense real system A x = b by Gaussian elimination with partial pivoting.
std::vector<Real> solve_real(std::vector<std::vector<Real>> a, std::vector<Real> b) {
  const size_t n = b.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i) {
      if (abs(a[i][k]) > abs(a[piv][k])) piv = i;
    }
    if (a[piv][k].is_zero()) throw SolverError("newton_solve: singular normal equations");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    for (size_t i = k + 1; i < n; ++i) {
      const Real f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Real> x(n);
  for (size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

double log10_of(const Real& x) {
  if (x.is_zero()) return -1e9;
  return log10(x).to_double();
}

}  // namespace

std::vector<APComplex> relator_residuals(const RegionRecord& region, const ParamPoint& pt, int sigma1, int sigma2) {
  const auto [f, w] = build_fw(pt);
  const std::vector<CMat> images{f, w};
  auto out = residual_entries(eval_word<APComplex>(region.r1, images), sigma1);
  auto r2 = residual_entries(eval_word<APComplex>(region.r2, images), sigma2);
  out.insert(out.end(), r2.begin(), r2.end());
  return out;
}

std::pair<int, int> relator_signs(const RegionRecord& region, const ParamPoint& pt) {
  const auto [f, w] = build_fw(pt);
  const std::vector<CMat> images{f, w};
  return {nearer_sign(eval_word<APComplex>(region.r1, images)), nearer_sign(eval_word<APComplex>(region.r2, images))};
}

std::vector<std::vector<APComplex>> relator_jacobian(const RegionRecord& region, const ParamPoint& pt) {
  const auto [f, w] = build_fw(pt);
  const std::vector<CMat> images{f, w};
  const auto dparams = param_derivatives(pt);
  std::vector<std::vector<APComplex>> jac(8, std::vector<APComplex>(3));
  for (size_t j = 0; j < 3; ++j) {
    const std::vector<CMat> d{dparams[j][0], dparams[j][1]};
    size_t row = 0;
    for (const Word* word : {&region.r1, &region.r2}) {
      const CMat dm = word_derivative<APComplex>(*word, images, d);
      for (const APComplex& e : {dm.m11, dm.m12, dm.m21, dm.m22}) jac[row++][j] = e;
    }
  }
  return jac;
}

namespace {

double fd_gap(const RegionRecord& region, const ParamPoint& pt, int s1, int s2,
              const std::vector<std::vector<APComplex>>& jac) {
  const auto bits = pt.Lp.precision();
  const int digits = bits_to_digits(bits);
  const Real h = pow10(-(digits / 3), bits);
  double worst = 0;
  for (size_t j = 0; j < 3; ++j) {
    ParamPoint plus = pt, minus = pt;
    APComplex* pp = j == 0 ? &plus.Lp : (j == 1 ? &plus.Dp : &plus.Rp);
    APComplex* pm = j == 0 ? &minus.Lp : (j == 1 ? &minus.Dp : &minus.Rp);
    *pp = *pp + APComplex(h, Real(0L, bits));
    *pm = *pm - APComplex(h, Real(0L, bits));
    const auto fp = relator_residuals(region, plus, s1, s2);
    const auto fm = relator_residuals(region, minus, s1, s2);
    Real scale(0L, bits);
    for (size_t i = 0; i < 8; ++i) scale = std::max(scale, jac[i][j].abs(), [](const Real& a, const Real& b) { return a < b; });
    for (size_t i = 0; i < 8; ++i) {
      const APComplex deriv = (fp[i] - fm[i]) * (Real(1L, bits) / (h * 2L));
      const Real gap = (deriv - jac[i][j]).abs() / scale;
      worst = std::max(worst, gap.to_double());
    }
  }
  return worst;
}

}  // namespace

NewtonResult newton_solve(const RegionRecord& region, int digits, const NewtonOptions& opt) {
  if (digits < 30) throw SolverError("newton_solve: digits must be >= 30");
  const BoxRegion& box = region.box;
  const BoxRegion outer = box.enlarged(opt.divergence_factor);
  NewtonResult res;
  std::vector<int> ladder;
  if (opt.start_digits < digits) ladder.push_back(opt.start_digits);
  ladder.push_back(digits);

  ParamPoint x{box.midpoint(Param::L, ladder[0]), box.midpoint(Param::D, ladder[0]), box.midpoint(Param::R, ladder[0])};
  std::tie(res.sigma1, res.sigma2) = relator_signs(region, x);

  int total = 0;
  for (size_t stage = 0; stage < ladder.size(); ++stage) {
    const int sd = ladder[stage];
    const auto bits = digits_to_bits(sd + 20);
    x = with_precision(x, bits);
    const Real tol = tolerance(sd - 10, bits);
    Real best(0L, bits);
    bool have_best = false;
    int since_improvement = 0;
    for (;;) {
      const auto f = relator_residuals(region, x, res.sigma1, res.sigma2);
      const Real r = max_abs(f);
      res.history.push_back({sd, total, log10_of(r)});
      if (r < tol) {
        res.residual = r;
        break;
      }
      if (!have_best || r < best) {
        best = r;
        have_best = true;
        since_improvement = 0;
      } else if (++since_improvement >= opt.stagnation_window) {
        throw SolverError("newton_solve(" + region.name + "): stagnation at residual 1e" +
                          std::to_string(static_cast<int>(log10_of(r))));
      }
      if (total >= opt.max_iterations) {
        throw SolverError("newton_solve(" + region.name + "): iteration cap reached");
      }
      const auto jac = relator_jacobian(region, x);
      if (total == 0) res.jacobian_fd_gap = fd_gap(region, x, res.sigma1, res.sigma2, jac);
      // Real 16 × 6 system: unknowns (Re, Im) of each complex parameter.
      std::vector<std::vector<Real>> jr(16, std::vector<Real>(6, Real(0L, bits)));
      std::vector<Real> fr(16, Real(0L, bits));
      for (size_t i = 0; i < 8; ++i) {
        fr[2 * i] = f[i].re();
        fr[2 * i + 1] = f[i].im();
        for (size_t j = 0; j < 3; ++j) {
          const APComplex& d = jac[i][j];
          jr[2 * i][2 * j] = d.re();
          jr[2 * i][2 * j + 1] = -d.im();
          jr[2 * i + 1][2 * j] = d.im();
          jr[2 * i + 1][2 * j + 1] = d.re();
        }
      }
      std::vector<std::vector<Real>> ata(6, std::vector<Real>(6, Real(0L, bits)));
      std::vector<Real> atb(6, Real(0L, bits));
      for (size_t a = 0; a < 6; ++a) {
        for (size_t b = 0; b < 6; ++b) {
          for (size_t i = 0; i < 16; ++i) ata[a][b] += jr[i][a] * jr[i][b];
        }
        for (size_t i = 0; i < 16; ++i) atb[a] -= jr[i][a] * fr[i];
      }
      const auto step = solve_real(std::move(ata), std::move(atb));
      x.Lp = x.Lp + APComplex(step[0], step[1]);
      x.Dp = x.Dp + APComplex(step[2], step[3]);
      x.Rp = x.Rp + APComplex(step[4], step[5]);
      ++total;
      if (!in_box(outer, x)) {
        throw SolverError("newton_solve(" + region.name + "): divergence, iterate left the enlarged box");
      }
    }
  }
  res.pt = x;
  res.iterations = total;
  res.digits = digits;
  res.inside_box = in_box(box, x);
  return res;
}

}  // namespace exreg
