#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"

namespace c0lat {

/// A point of the open unit disk. Construction rejects |value| >= 1 - 1e-12.
class UnitDiskPoint {
 public:
  static constexpr double kBoundaryMargin = 1e-12;

  explicit UnitDiskPoint(Complex value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
        std::abs(value) >= 1.0 - kBoundaryMargin) {
      throw DomainError("zero must lie in the open unit disk");
    }
  }

  Complex value() const noexcept { return value_; }

 private:
  Complex value_;
};

/// Canonical zero order: lexicographic by real part, then imaginary part.
inline bool canonical_less(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Disk automorphism factor b_a(z) = (|a|/a)(a - z)/(1 - conj(a) z), with
/// b_0(z) = z. The normalization makes b_a(0) = |a| >= 0.
inline Complex elementary_factor(Complex a, Complex z) {
  if (a == Complex(0.0, 0.0)) return z;
  const double r = std::abs(a);
  return (r / a) * (a - z) / (1.0 - std::conj(a) * z);
}

/// Finite Blaschke product: a multiset of zeros in the open unit disk times
/// a unimodular constant. Immutable; zeros are kept in canonical order with
/// exactly-equal points merged.
class BlaschkeProduct {
 public:
  struct Zero {
    Complex point;
    int mult;
    friend bool operator==(const Zero&, const Zero&) = default;
  };

  static constexpr std::size_t kDefaultDegreeCap = 64;

  /// The constant 1.
  BlaschkeProduct() = default;

  BlaschkeProduct(std::vector<Zero> zeros, Complex constant, std::size_t degree_cap = kDefaultDegreeCap)
      : zeros_(std::move(zeros)), constant_(constant) {
    if (std::abs(std::abs(constant_) - 1.0) > 1e-12) {
      throw DomainError("Blaschke constant must be unimodular");
    }
    for (const Zero& z : zeros_) {
      if (z.mult <= 0) throw DomainError("zero multiplicity must be positive");
      (void)UnitDiskPoint(z.point);
    }
    std::sort(zeros_.begin(), zeros_.end(),
              [](const Zero& a, const Zero& b) { return canonical_less(a.point, b.point); });
    std::vector<Zero> merged;
    for (const Zero& z : zeros_) {
      if (!merged.empty() && merged.back().point == z.point) {
        merged.back().mult += z.mult;
      } else {
        merged.push_back(z);
      }
    }
    zeros_ = std::move(merged);
    if (degree() > degree_cap) throw CapExceededError("Blaschke degree exceeds cap");
  }

  /// Product with the given zeros listed with repetition.
  static BlaschkeProduct from_zeros(const std::vector<Complex>& points, Complex constant = 1.0) {
    std::vector<Zero> zs;
    zs.reserve(points.size());
    for (Complex p : points) zs.push_back({p, 1});
    return BlaschkeProduct(std::move(zs), constant);
  }

  static BlaschkeProduct unimodular(Complex c) { return BlaschkeProduct({}, c); }

  /// z^k.
  static BlaschkeProduct monomial(int k) {
    if (k == 0) return {};
    return BlaschkeProduct({{Complex(0.0, 0.0), k}}, 1.0);
  }

  /// b_a^k.
  static BlaschkeProduct factor(Complex a, int k = 1) {
    if (k == 0) return {};
    return BlaschkeProduct({{a, k}}, 1.0);
  }

  const std::vector<Zero>& zeros() const noexcept { return zeros_; }
  Complex constant() const noexcept { return constant_; }

  std::size_t degree() const noexcept {
    std::size_t d = 0;
    for (const Zero& z : zeros_) d += static_cast<std::size_t>(z.mult);
    return d;
  }

  bool is_constant() const noexcept { return zeros_.empty(); }

  /// Zeros expanded by multiplicity, in canonical order.
  std::vector<Complex> zero_list() const {
    std::vector<Complex> out;
    out.reserve(degree());
    for (const Zero& z : zeros_) out.insert(out.end(), static_cast<std::size_t>(z.mult), z.point);
    return out;
  }

  int multiplicity(Complex a) const noexcept {
    for (const Zero& z : zeros_) {
      if (z.point == a) return z.mult;
    }
    return 0;
  }

  /// Same zeros, constant replaced by c.
  BlaschkeProduct with_constant(Complex c) const { return BlaschkeProduct(zeros_, c); }

  /// Structural equality: identical zero multisets and constants.
  friend bool operator==(const BlaschkeProduct&, const BlaschkeProduct&) = default;

 private:
  std::vector<Zero> zeros_;
  Complex constant_{1.0, 0.0};
};

inline Complex evaluate(const BlaschkeProduct& b, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("evaluation point outside the closed disk");
  Complex out = b.constant();
  for (const auto& zero : b.zeros()) {
    const Complex f = elementary_factor(zero.point, z);
    for (int k = 0; k < zero.mult; ++k) out *= f;
  }
  return out;
}

namespace detail {

// Walks the two canonical zero lists in lockstep and combines multiplicities.
template <class Combine>
std::vector<BlaschkeProduct::Zero> merge_zeros(const BlaschkeProduct& a, const BlaschkeProduct& b, Combine combine) {
  std::vector<BlaschkeProduct::Zero> out;
  const auto& za = a.zeros();
  const auto& zb = b.zeros();
  std::size_t i = 0, j = 0;
  while (i < za.size() || j < zb.size()) {
    Complex p;
    int ma = 0, mb = 0;
    if (j == zb.size() || (i < za.size() && canonical_less(za[i].point, zb[j].point))) {
      p = za[i].point;
      ma = za[i++].mult;
    } else if (i == za.size() || canonical_less(zb[j].point, za[i].point)) {
      p = zb[j].point;
      mb = zb[j++].mult;
    } else {
      p = za[i].point;
      ma = za[i++].mult;
      mb = zb[j++].mult;
    }
    const int m = combine(ma, mb);
    if (m > 0) out.push_back({p, m});
  }
  return out;
}

}  // namespace detail

inline BlaschkeProduct multiply(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  return BlaschkeProduct(detail::merge_zeros(a, b, [](int x, int y) { return x + y; }),
                         a.constant() * b.constant());
}

inline BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) { return multiply(a, b); }

/// a | b: the zero multiset of a is contained in that of b.
inline bool divides(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  for (const auto& z : a.zeros()) {
    if (b.multiplicity(z.point) < z.mult) return false;
  }
  return true;
}

inline BlaschkeProduct gcd(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  return BlaschkeProduct(detail::merge_zeros(a, b, [](int x, int y) { return std::min(x, y); }), 1.0);
}

inline BlaschkeProduct lcm(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  return BlaschkeProduct(detail::merge_zeros(a, b, [](int x, int y) { return std::max(x, y); }), 1.0);
}

/// Equality up to a unimodular constant.
inline bool equiv(const BlaschkeProduct& a, const BlaschkeProduct& b) { return a.zeros() == b.zeros(); }

/// Quotient phi with divisor * phi == dividend; the constant carries the
/// ratio of the two constants.
inline BlaschkeProduct divide(const BlaschkeProduct& dividend, const BlaschkeProduct& divisor) {
  if (!divides(divisor, dividend)) throw NonDivisorError("divisor does not divide dividend");
  return BlaschkeProduct(detail::merge_zeros(dividend, divisor, [](int x, int y) { return x - y; }),
                         dividend.constant() / divisor.constant());
}

/// All inner divisors (constant 1), one per sub-multiset of the zeros, in
/// mixed-radix order over the canonical zero list.
inline std::vector<BlaschkeProduct> divisors(const BlaschkeProduct& b, std::size_t cap = 4096) {
  std::size_t count = 1;
  for (const auto& z : b.zeros()) {
    count *= static_cast<std::size_t>(z.mult + 1);
    if (count > cap) throw CapExceededError("divisor count exceeds cap");
  }
  std::vector<BlaschkeProduct> out;
  out.reserve(count);
  std::vector<int> exps(b.zeros().size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<BlaschkeProduct::Zero> zs;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > 0) zs.push_back({b.zeros()[i].point, exps[i]});
    }
    out.emplace_back(std::move(zs), 1.0);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (++exps[i] <= b.zeros()[i].mult) break;
      exps[i] = 0;
    }
  }
  return out;
}

inline std::size_t divisor_count(const BlaschkeProduct& b) {
  std::size_t count = 1;
  for (const auto& z : b.zeros()) count *= static_cast<std::size_t>(z.mult + 1);
  return count;
}

/// b / b_a for each distinct zero a.
inline std::vector<BlaschkeProduct> maximal_proper_divisors(const BlaschkeProduct& b) {
  std::vector<BlaschkeProduct> out;
  for (const auto& z : b.zeros()) out.push_back(divide(b, BlaschkeProduct::factor(z.point)).with_constant(1.0));
  return out;
}

/// Equivalence for numerically computed products: degrees agree and the zero
/// lists can be matched one-to-one within `tol`.
inline bool equiv_within(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol) {
  const std::vector<Complex> za = a.zero_list();
  std::vector<Complex> zb = b.zero_list();
  if (za.size() != zb.size()) return false;
  std::vector<bool> used(zb.size(), false);
  for (Complex p : za) {
    std::size_t best = zb.size();
    double best_d = tol;
    for (std::size_t j = 0; j < zb.size(); ++j) {
      const double d = std::abs(p - zb[j]);
      if (!used[j] && d <= best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == zb.size()) return false;
    used[best] = true;
  }
  return true;
}

namespace detail {

inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string im = format_double(c.imag());
  if (im.front() != '-') im = "+" + im;
  return format_double(c.real()) + im + "i";
}

}  // namespace detail

/// Human-readable form, e.g. "z^2*b(0.5)" or "-1*z".
inline std::string to_string(const BlaschkeProduct& b) {
  std::string out;
  const bool unit_constant = b.constant() == Complex(1.0, 0.0);
  if (!unit_constant || b.is_constant()) out = detail::format_complex(b.constant());
  for (const auto& z : b.zeros()) {
    if (!out.empty()) out += "*";
    out += z.point == Complex(0.0, 0.0) ? std::string("z") : "b(" + detail::format_complex(z.point) + ")";
    if (z.mult > 1) out += "^" + std::to_string(z.mult);
  }
  return out;
}

}  // namespace c0lat
