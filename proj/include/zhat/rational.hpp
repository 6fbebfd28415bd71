#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zhat {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int num(const Rational &r) { return numerator(r); }
inline Int den(const Rational &r) { return denominator(r); }

/* Floor of a rational, as an integer. */
inline Int rfloor(const Rational &r)
{
	Int n = numerator(r), d = denominator(r);
	Int q = n / d;
	if (n % d != 0 && n < 0) --q;
	return q;
}

inline Int rceil(const Rational &r) { return -rfloor(-r); }

inline int sgn(const Rational &r)
{
	if (r > 0) return 1;
	if (r < 0) return -1;
	return 0;
}

/* Largest integer t with (t + mu)^2 <= bound, i.e. t <= -mu + sqrt(bound).
 * Exact: starts from a double estimate and fixes up with rational
 * comparisons. Requires bound >= 0. */
inline Int isqrt_upper(const Rational &mu, const Rational &bound)
{
	double est = -mu.convert_to<double>() + std::sqrt(bound.convert_to<double>());
	if (!std::isfinite(est) || std::fabs(est) > 1e15) est = 0;
	Int t(static_cast<long>(std::floor(est)));
	auto ok = [&](const Int &x) {
		Rational s = Rational(x) + mu;
		return s * s <= bound || s <= 0;
	};
	/* ok() accepts everything left of the positive root. */
	while (ok(t + 1)) ++t;
	while (!ok(t)) --t;
	return t;
}

/* Smallest integer t with (t + mu)^2 <= bound. */
inline Int isqrt_lower(const Rational &mu, const Rational &bound)
{
	return -isqrt_upper(-mu, bound);
}

inline Rational parse_rational(const std::string &s)
{
	auto pos = s.find('/');
	try {
		if (pos == std::string::npos) return Rational(Int(s));
		return Rational(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
	} catch (const std::exception &) {
		throw std::invalid_argument("bad rational literal: " + s);
	}
}

inline std::string to_string(const Rational &r)
{
	if (den(r) == 1) return num(r).str();
	return num(r).str() + "/" + den(r).str();
}

} // namespace zhat
