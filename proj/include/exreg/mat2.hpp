#pragma once

#include "exreg/word.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace exreg {

/// 2×2 matrix over a scalar domain S. S needs +, −, × and the free functions
/// one_like(s) / zero_like(s), which produce constants in the same domain
/// (same precision, same field, same variable set) as s.
template <class S>
struct Mat2 {
  S m11, m12, m21, m22;

  static Mat2 identity_like(const S& s) {
    return {one_like(s), zero_like(s), zero_like(s), one_like(s)};
  }
  static Mat2 scalar_like(const S& s, const S& k) {
    return {k, zero_like(s), zero_like(s), k};
  }

  S det() const { return m11 * m22 - m12 * m21; }
  S trace() const { return m11 + m22; }
  /// Inverse when det = 1; linear in the entries.
  Mat2 adjugate() const { return {m22, -m12, -m21, m11}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  friend Mat2 operator-(const Mat2& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
};

template <class S>
Mat2<S> mat_mul(const Mat2<S>& a, const Mat2<S>& b) {
  return a * b;
}

/// a^n for n ≥ 0 by binary exponentiation; `id` is the identity.
template <class S>
Mat2<S> mat_pow(Mat2<S> a, long n, const Mat2<S>& id) {
  Mat2<S> r = id;
  while (n > 0) {
    if (n & 1) r = r * a;
    n >>= 1;
    if (n) a = a * a;
  }
  return r;
}

namespace detail {
template <class S>
const Mat2<S>& image_of(std::span<const Mat2<S>> images, int gen, const char* what) {
  if (gen < 0 || static_cast<size_t>(gen) >= images.size()) {
    throw std::out_of_range(std::string(what) + ": no image for generator " + std::to_string(gen));
  }
  return images[static_cast<size_t>(gen)];
}
}  // namespace detail

/// Evaluates a word with images indexed by generator; images must have det 1
/// (negative exponents use the adjugate).
template <class S>
Mat2<S> eval_word(const Word& w, std::span<const Mat2<S>> images) {
  if (images.empty()) throw std::out_of_range("eval_word: no generator images");
  const Mat2<S> id = Mat2<S>::identity_like(images[0].m11);
  Mat2<S> acc = id;
  for (const auto& l : w.runs()) {
    const Mat2<S>& g = detail::image_of(images, l.gen, "eval_word");
    const Mat2<S> base = l.exp > 0 ? g : g.adjugate();
    acc = acc * mat_pow(base, l.exp > 0 ? l.exp : -l.exp, id);
  }
  return acc;
}

/// Derivative of eval_word along one parameter, given d(image)/dθ per generator.
template <class S>
Mat2<S> word_derivative(const Word& w, std::span<const Mat2<S>> images,
                        std::span<const Mat2<S>> d_images) {
  using Dual = std::pair<Mat2<S>, Mat2<S>>;
  if (images.empty()) throw std::out_of_range("word_derivative: no generator images");
  const Mat2<S> id = Mat2<S>::identity_like(images[0].m11);
  const Mat2<S> zero = Mat2<S>::scalar_like(images[0].m11, zero_like(images[0].m11));
  auto mul = [](const Dual& x, const Dual& y) -> Dual {
    return {x.first * y.first, x.second * y.first + x.first * y.second};
  };
  Dual acc{id, zero};
  for (const auto& l : w.runs()) {
    const Mat2<S>& g = detail::image_of(images, l.gen, "word_derivative");
    const Mat2<S>& dg = detail::image_of(d_images, l.gen, "word_derivative");
    Dual base = l.exp > 0 ? Dual{g, dg} : Dual{g.adjugate(), dg.adjugate()};
    long n = l.exp > 0 ? l.exp : -l.exp;
    Dual p{id, zero};
    while (n > 0) {
      if (n & 1) p = mul(p, base);
      n >>= 1;
      if (n) base = mul(base, base);
    }
    acc = mul(acc, p);
  }
  return acc.second;
}

}  // namespace exreg
