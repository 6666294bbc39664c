#pragma once

#include "qmodular/qseries.hpp"

namespace qmodular {

/// Torsion point z = a tau + b on the lattice Z + m tau Z, with a in (1/2)Z and
/// b in {0, 1/2}.
struct TorsionArg {
  Rational a;
  Rational b;
  long m = 1;

  friend bool operator==(const TorsionArg&, const TorsionArg&) = default;
};

/// Normalized Weierstrass function wp(z, m tau) / pi^2 at z = a tau + b.
/// Throws PoleAtArgument on lattice points.
QSeries wp_hat(const TorsionArg& z, long prec);
/// The half-period companion (pole at (1 + m tau)/2, zero at 0).
QSeries wpt_hat(const TorsionArg& z, long prec);

enum class PhiMode { Weierstrass, Divisor };

/// Weight-2 Eisenstein-type form with constant term 1 on Gamma0(N), N >= 2.
QSeries phi_N(int N, long prec, PhiMode mode = PhiMode::Weierstrass);

/// Exact Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(unsigned n);

/// E_k(m tau) normalized to constant term 1; k even, k >= 4.
QSeries eisenstein(int k, long m, long prec);

/// Product formula for wpt_hat(1/2, tau), an independent oracle.
QSeries twpa_half_product(long prec);

}  // namespace qmodular
