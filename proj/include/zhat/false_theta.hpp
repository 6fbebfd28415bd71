#pragma once

#include <stdexcept>

#include "zhat/qseries.hpp"

namespace zhat {

/* theta~^1_{m,r}: sum over k = r mod 2m of sgn(k) q^{k^2/4m}, sgn(0)=0. */
struct FalseTheta {
	Int m;
	Int r;
	QSeries series;
};

inline FalseTheta false_theta(const Int &m, const Int &r, const Rational &order)
{
	if (m <= 0) throw std::domain_error("false_theta: m must be positive");
	if (order <= 0) throw std::domain_error("false_theta: order must be positive");
	QSeries s(order);
	Int period = 2 * m;
	Int r0 = r % period;
	if (r0 < 0) r0 += period;
	/* positive branch k = r0, r0+2m, ... and negative k = r0-2m, ... */
	for (Int k = r0;; k += period) {
		Rational e(k * k, 4 * m);
		if (e >= order) break;
		if (k > 0) s.add_term(e, 1);
	}
	for (Int k = r0 - period;; k -= period) {
		Rational e(k * k, 4 * m);
		if (e >= order) break;
		if (k < 0) s.add_term(e, -1);
	}
	return FalseTheta{m, r0, s};
}

/* F_{j,m}(tau) = sum_k sgn(k + 1/2) q^{(k + j/2m)^2}; defined for rational
 * j and nonzero rational m since only the ratio j/m enters. */
inline QSeries F_series(const Rational &j, const Rational &m,
			const Rational &order)
{
	if (m == 0) throw std::domain_error("F_series: m must be nonzero");
	if (order <= 0) throw std::domain_error("F_series: order must be positive");
	QSeries s(order);
	Rational shift = j / (2 * m);
	for (Int k = 0;; ++k) {
		Rational x = Rational(k) + shift;
		Rational e = x * x;
		if (e >= order && x >= 0) break;
		s.add_term(e, 1);
	}
	for (Int k = -1;; --k) {
		Rational x = Rational(k) + shift;
		Rational e = x * x;
		if (e >= order && x <= 0) break;
		s.add_term(e, -1);
	}
	return s;
}

/* F_{j,m}(m tau): exponents (2mk + j)^2 / 4m. Requires m > 0. */
inline QSeries F_series_scaled(const Rational &j, const Rational &m,
			       const Rational &order)
{
	if (m <= 0) throw std::domain_error("F_series_scaled: m must be positive");
	if (order <= 0)
		throw std::domain_error("F_series_scaled: order must be positive");
	QSeries s(order);
	for (Int k = 0;; ++k) {
		Rational x = 2 * m * Rational(k) + j;
		Rational e = x * x / (4 * m);
		if (e >= order && x >= 0) break;
		s.add_term(e, 1);
	}
	for (Int k = -1;; --k) {
		Rational x = 2 * m * Rational(k) + j;
		Rational e = x * x / (4 * m);
		if (e >= order && x <= 0) break;
		s.add_term(e, -1);
	}
	return s;
}

/* The polynomial p_{m,j} with F_{j,m}(m tau) = theta~^1_{m,j} + p_{m,j};
 * three branches depending on where j sits relative to [0, 2m).  When 2m
 * divides j the constant term needs care: the k = -j/2m summand of F
 * carries weight sgn(1/2) = +1 while the matching theta term has
 * sgn(0) = 0, so p picks up an extra +1 at q^0 (the branch formulas
 * alone would count that monomial with weight 0 or -2). */
inline QSeries p_polynomial(const Rational &m, const Rational &j,
			    const Rational &order)
{
	if (m <= 0) throw std::domain_error("p_polynomial: m must be positive");
	QSeries s(order);
	Int f = rfloor(j / (2 * m));
	if (f >= 1) { /* j >= 2m */
		for (Int k = 1; k <= f; ++k) {
			Rational x = j - 2 * m * Rational(k);
			s.add_term(x * x / (4 * m), -2);
		}
	} else if (f <= -1) { /* j < 0 */
		for (Int k = 0; k <= -f - 1; ++k) {
			Rational x = j + 2 * m * Rational(k);
			s.add_term(x * x / (4 * m), 2);
		}
	}
	if (den(j / (2 * m)) == 1) s.add_term(0, 1);
	return s;
}

/* (F_{j,m}(m tau), p_{m,j}) as a pair, both at the same truncation. */
inline std::pair<QSeries, QSeries> F_and_p(const Rational &j, const Rational &m,
					   const Rational &order)
{
	return {F_series_scaled(j, m, order), p_polynomial(m, j, order)};
}

} // namespace zhat
