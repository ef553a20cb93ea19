#include "exreg/apcomplex.hpp"
#include "exreg/mat2.hpp"
#include "exreg/word.hpp"

#include "doctest.h"

#include <random>

using namespace exreg;

namespace {

constexpr int kDigits = 60;
const mpfr_prec_t kBits = digits_to_bits(kDigits);

APComplex random_complex(std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-999, 999);
  return APComplex::from_rational(mpq_class(d(rng), 331), mpq_class(d(rng), 257), kBits);
}

/// det = 1 by construction: [[a, b], [c, (1 + bc)/a]].
Mat2<APComplex> random_sl2(std::mt19937& rng) {
  APComplex a = random_complex(rng) + 3, b = random_complex(rng), c = random_complex(rng);
  return {a, b, c, (APComplex(1L, kBits) + b * c) / a};
}

Real max_entry(const Mat2<APComplex>& a) {
  Real m = a.m11.abs();
  for (const auto* e : {&a.m12, &a.m21, &a.m22}) {
    Real x = e->abs();
    if (x > m) m = x;
  }
  return m;
}

/// log10 of the largest entry of a − b relative to the largest entry of a.
double err(const Mat2<APComplex>& a, const Mat2<APComplex>& b) {
  Real m = max_entry(a - b);
  if (m.is_zero()) return -1000.0;
  Real scale = max_entry(a);
  return log10(scale.is_zero() ? m : m / scale).to_double();
}

}  // namespace

TEST_CASE("real and complex arithmetic at 60 digits") {
  Real two(2L, kBits);
  Real s = sqrt(two);
  CHECK(log10(abs(s * s - two)).to_double() < -58);
  APComplex i = imag_unit(kBits);
  CHECK((i * i + 1).is_zero());
  APComplex z = APComplex::from_decimal("1.5", "-2.25", kDigits);
  CHECK(log10((z * z.inverse() - 1).abs()).to_double() < -58);
  APComplex r = sqrt(z);
  CHECK(log10((r * r - z).abs()).to_double() < -58);
}

TEST_CASE("word evaluation respects inverses") {
  std::mt19937 rng(11);
  Mat2<APComplex> imgs[2] = {random_sl2(rng), random_sl2(rng)};
  Word w = parse_word("f^3w^-2fw", "fw");
  auto m = eval_word<APComplex>(concat(w, invert_word(w)), imgs);
  CHECK(err(m, Mat2<APComplex>::identity_like(m.m11)) < -50);
}

TEST_CASE("property: word_derivative matches central differences on 20 random words") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> gen(0, 1), exp(-3, 3), len(2, 8);
  // F(t) = U·[[1, t], [0, 1]]·V and W(t) = P·[[1, 0], [t, 1]]·Q stay in SL₂.
  Mat2<APComplex> U = random_sl2(rng), V = random_sl2(rng), P = random_sl2(rng), Q = random_sl2(rng);
  APComplex zero(0L, kBits), one(1L, kBits);
  auto F = [&](const APComplex& t) { return U * Mat2<APComplex>{one, t, zero, one} * V; };
  auto W = [&](const APComplex& t) { return P * Mat2<APComplex>{one, zero, t, one} * Q; };
  Mat2<APComplex> dF = U * Mat2<APComplex>{zero, one, zero, zero} * V;
  Mat2<APComplex> dW = P * Mat2<APComplex>{zero, zero, one, zero} * Q;
  APComplex t0 = APComplex::from_rational(mpq_class(1, 7), mpq_class(-2, 9), kBits);
  APComplex h = APComplex::from_decimal("1e-20", "0", kDigits);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Letter> runs;
    for (int i = len(rng); i > 0; --i) {
      int e = exp(rng);
      if (e) runs.push_back({gen(rng), e});
    }
    Word w = Word::reduce(runs);
    if (w.empty()) continue;
    Mat2<APComplex> at[2] = {F(t0), W(t0)};
    Mat2<APComplex> d_at[2] = {dF, dW};
    Mat2<APComplex> analytic = word_derivative<APComplex>(w, at, d_at);
    Mat2<APComplex> plus[2] = {F(t0 + h), W(t0 + h)};
    Mat2<APComplex> minus[2] = {F(t0 - h), W(t0 - h)};
    Mat2<APComplex> diff = eval_word<APComplex>(w, plus) - eval_word<APComplex>(w, minus);
    Mat2<APComplex> fd{diff.m11 / (h * 2), diff.m12 / (h * 2), diff.m21 / (h * 2), diff.m22 / (h * 2)};
    INFO(render_word(w, "fw"));
    CHECK(err(analytic, fd) < -25);
  }
}
