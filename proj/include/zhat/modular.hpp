#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "zhat/plumbing.hpp"
#include "zhat/qseries.hpp"
#include "zhat/zhat.hpp"

namespace zhat {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
	Real re, im;

	Complex(Real r = Real(0), Real i = Real(0))
	    : re(std::move(r)), im(std::move(i)) {}

	Complex &operator+=(const Complex &o)
	{
		re += o.re;
		im += o.im;
		return *this;
	}
	friend Complex operator+(Complex a, const Complex &b) { return a += b; }
	friend Complex operator-(const Complex &a, const Complex &b)
	{
		return Complex(a.re - b.re, a.im - b.im);
	}
	friend Complex operator*(const Complex &a, const Complex &b)
	{
		return Complex(a.re * b.re - a.im * b.im,
			       a.re * b.im + a.im * b.re);
	}
	friend Complex operator*(const Real &s, const Complex &a)
	{
		return Complex(s * a.re, s * a.im);
	}
	Real abs2() const { return re * re + im * im; }
};

inline Real to_real(const Rational &r)
{
	return Real(num(r).str()) / Real(den(r).str());
}

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

/* RAII scope for the working mpfr precision. */
struct PrecisionScope {
	unsigned saved;
	explicit PrecisionScope(unsigned bits)
	    : saved(Real::default_precision())
	{
		Real::default_precision(
		    unsigned(std::ceil(double(bits) * 0.3011)) + 2);
	}
	~PrecisionScope() { Real::default_precision(saved); }
};

/* Evaluate s at tau = x + it, i.e. q = e^{2 pi i (x + it)}.  The omitted
 * tail beyond the truncation order must be provably negligible: each
 * dropped term is at most e^{-2 pi t N} and theta-type exponents grow
 * quadratically, so we demand 2 pi t N >= 40 ln 2 (tail below 2^{-40},
 * far under the 1e-6 targets used downstream). */
inline Complex eval_series(const QSeries &s, const Rational &x,
			   const Rational &t)
{
	if (t <= 0) throw std::domain_error("eval_series: t must be positive");
	Real tb = 2 * pi_real() * to_real(t) * to_real(s.order());
	if (tb < 40 * log(Real(2)))
		throw std::runtime_error("increase series order");
	Real two_pi = 2 * pi_real();
	Complex acc;
	for (auto &[e, c] : s.terms()) {
		Real ee = to_real(e);
		Real mag = to_real(c) * exp(-two_pi * to_real(t) * ee);
		Real ph = two_pi * to_real(x) * ee;
		acc += Complex(mag * cos(ph), mag * sin(ph));
	}
	return acc;
}

/* Neville polynomial extrapolation of (t_i, f_i) to t = 0. */
inline Complex neville_at_zero(const std::vector<Rational> &ts,
			       std::vector<Complex> f)
{
	std::size_t n = ts.size();
	for (std::size_t lvl = 1; lvl < n; ++lvl)
		for (std::size_t i = 0; i + lvl < n; ++i) {
			Real ti = to_real(ts[i]), tj = to_real(ts[i + lvl]);
			Real w = Real(1) / (ti - tj);
			f[i] = Complex(w * (ti * f[i + 1].re - tj * f[i].re),
				       w * (ti * f[i + 1].im - tj * f[i].im));
		}
	return f[0];
}

struct RadialReport {
	Rational x;
	std::vector<Rational> tgrid;
	std::vector<Complex> values;
	Complex extrapolant;
	Real error_estimate;
};

/* Evaluate s on the t-grid at tau = x + it and extrapolate to t -> 0+.
 * The error estimate is the distance between the full extrapolant and
 * the one obtained after dropping the coarsest grid point; it is a
 * spread, never a fabricated precision claim. */
inline RadialReport radial_extrapolate(const QSeries &s, const Rational &x,
				       std::vector<Rational> tgrid,
				       unsigned precision_bits = 128)
{
	if (tgrid.empty())
		throw std::domain_error("radial_extrapolate: empty t-grid");
	PrecisionScope ps(std::max(precision_bits, 128u));
	std::sort(tgrid.begin(), tgrid.end(), std::greater<Rational>());
	RadialReport rep;
	rep.x = x;
	rep.tgrid = tgrid;
	for (auto &t : tgrid) rep.values.push_back(eval_series(s, x, t));
	rep.extrapolant = neville_at_zero(tgrid, rep.values);
	if (tgrid.size() >= 2) {
		std::vector<Rational> ts(tgrid.begin() + 1, tgrid.end());
		std::vector<Complex> fs(rep.values.begin() + 1,
					rep.values.end());
		Complex alt = neville_at_zero(ts, fs);
		rep.error_estimate = sqrt((rep.extrapolant - alt).abs2());
	} else {
		rep.error_estimate = Real(0);
	}
	return rep;
}

/* Coefficients of the degree-(n-1) polynomial through (t_i, f_i), by an
 * exact rational Vandermonde solve; entry j estimates the t^j Taylor
 * coefficient of the evaluated series at t = 0. */
inline std::vector<Complex> radial_poly_coeffs(const QSeries &s,
					       const Rational &x,
					       const std::vector<Rational> &tgrid,
					       unsigned precision_bits = 128)
{
	if (tgrid.empty())
		throw std::domain_error("radial_poly_coeffs: empty t-grid");
	PrecisionScope ps(std::max(precision_bits, 128u));
	std::size_t n = tgrid.size();
	Matrix V(n);
	for (std::size_t i = 0; i < n; ++i) {
		Rational p = 1;
		for (std::size_t j = 0; j < n; ++j) {
			V(i, j) = p;
			p *= tgrid[i];
		}
	}
	Matrix W = V.inverse();
	std::vector<Complex> f;
	for (auto &t : tgrid) f.push_back(eval_series(s, x, t));
	std::vector<Complex> out(n);
	for (std::size_t j = 0; j < n; ++j)
		for (std::size_t i = 0; i < n; ++i)
			out[j] += to_real(W(j, i)) * f[i];
	return out;
}

/* Periodic sign pattern C(k) with period P (1-indexed, C(k+P) = C(k)). */
struct PeriodicSign {
	Int P;
	std::vector<Rational> values; /* C(1..P) */

	PeriodicSign(Int period, std::map<Int, Rational> assignments)
	    : P(period)
	{
		if (P <= 0)
			throw std::domain_error("PeriodicSign: period must be "
						"positive");
		values.assign(std::size_t(P), Rational(0));
		for (auto &[k, v] : assignments) {
			Int r = ((k - 1) % P + P) % P;
			values[std::size_t(r)] = v;
		}
	}

	Rational at(const Int &k) const
	{
		Int r = ((k - 1) % P + P) % P;
		return values[std::size_t(r)];
	}

	bool mean_zero() const
	{
		Rational s = 0;
		for (auto &v : values) s += v;
		return s == 0;
	}
};

/* Sign pattern of the Sigma(2,3,7) false theta combination, period 84. */
inline PeriodicSign sigma237_sign_pattern()
{
	std::map<Int, Rational> a;
	for (Int k : {1, 41, 55, 71}) a[k] = 1;
	for (Int k : {13, 29, 43, 83}) a[k] = -1;
	return PeriodicSign(84, a);
}

namespace detail {

/* Bernoulli numbers B_0..B_n (B_1 = -1/2), exact. */
inline std::vector<Rational> bernoulli_numbers(std::size_t n)
{
	std::vector<Rational> B(n + 1);
	std::vector<Rational> binom(n + 2);
	for (std::size_t m = 0; m <= n; ++m) {
		/* B_m from sum_{k<m+1} C(m+1,k) B_k = 0, m >= 1 */
		if (m == 0) {
			B[0] = 1;
			continue;
		}
		Rational acc = 0;
		Rational c = 1; /* C(m+1, k) */
		for (std::size_t k = 0; k < m; ++k) {
			acc += c * B[k];
			c = c * Rational(Int(m + 1 - k)) / Rational(Int(k + 1));
		}
		B[m] = -acc / Rational(Int(m + 1));
	}
	return B;
}

/* Bernoulli polynomial B_n(x), exact. */
inline Rational bernoulli_poly(std::size_t n, const Rational &x)
{
	auto B = bernoulli_numbers(n);
	Rational acc = 0;
	Rational c = 1; /* C(n, k) */
	Rational xp = 1;
	/* sum_k C(n,k) B_{n-k} x^k */
	for (std::size_t k = 0; k <= n; ++k) {
		acc += c * B[n - k] * xp;
		xp *= x;
		c = c * Rational(Int(n - k)) / Rational(Int(k + 1));
	}
	return acc;
}

/* r^n for nonnegative integer n */
inline Rational rpow(Rational r, unsigned n)
{
	Rational acc = 1;
	for (; n; --n) acc *= r;
	return acc;
}

} // namespace detail

/* One coefficient of an asymptotic expansion in t, kept symbolic as
 * (rational) * pi^(pi_power). */
struct AsymCoeff {
	Rational rational_part;
	Int pi_power;

	Real numeric() const
	{
		Real p = pow(pi_real(), int(pi_power));
		return to_real(rational_part) * p;
	}
};

/* Small-t coefficients alpha_0(n) of sum_{k>0} C(k) e^{-2 pi t k^2/(4m)}:
 * alpha_0(n) = L(-2n, C) * (-2 pi / 4m)^n / n!, with the special L-value
 * L(-2n, C) = -(P^{2n}/(2n+1)) sum_{k=1}^{P} C(k) B_{2n+1}(k/P). */
inline std::vector<AsymCoeff> asymptotic_coeffs(const PeriodicSign &C,
						const Int &m, int nmax)
{
	if (!C.mean_zero())
		throw std::domain_error("divergent constant term");
	std::vector<AsymCoeff> out;
	Rational fact = 1;
	for (int n = 0; n <= nmax; ++n) {
		Rational L = 0;
		for (Int k = 1; k <= C.P; ++k)
			L += C.at(k) * detail::bernoulli_poly(
					   std::size_t(2 * n + 1),
					   Rational(k, C.P));
		Rational Ppow = detail::rpow(Rational(C.P), unsigned(2 * n));
		L *= -Ppow / Rational(Int(2 * n + 1));
		if (n > 0) fact *= n;
		Rational weight = detail::rpow(Rational(-2, 4 * m), unsigned(n)) / fact;
		out.push_back({L * weight, Int(n)});
	}
	return out;
}

/* Exact value of one entry of the X matrix: a finite sum of roots of
 * unity divided by 2 sqrt|det M|.  Phases are kept as exponents mod 1
 * (e^{2 pi i r}); the square root stays symbolic in abs_det. */
struct XValue {
	std::map<Rational, Rational> phases; /* exponent mod 1 -> multiplicity */
	Int abs_det;                         /* value = sum / (2 sqrt(abs_det)) */

	Complex numeric() const
	{
		Complex acc;
		Real two_pi = 2 * pi_real();
		for (auto &[r, c] : phases) {
			Real ph = two_pi * to_real(r);
			acc += Complex(to_real(c) * cos(ph),
				       to_real(c) * sin(ph));
		}
		Real scale = Real(1) / (2 * sqrt(Real(abs_det.str())));
		return Complex(scale * acc.re, scale * acc.im);
	}

	/* exact rational value, defined when every phase is 0 or 1/2 and
	 * abs_det is a perfect square */
	Rational rational_value() const
	{
		Int root = Int(sqrt(abs_det));
		if (root * root != abs_det)
			throw std::domain_error("X value is irrational: "
						"|det M| is not a square");
		Rational acc = 0;
		for (auto &[r, c] : phases) {
			if (r == 0)
				acc += c;
			else if (r == Rational(1, 2))
				acc -= c;
			else
				throw std::domain_error(
				    "X value is not rational at this label");
		}
		return acc / (2 * Rational(root));
	}
};

inline XValue x_matrix(const Matrix &M, const std::vector<Rational> &a,
		       const std::vector<Rational> &b)
{
	std::size_t n = M.size();
	if (a.size() != n || b.size() != n)
		throw std::domain_error("x_matrix: label dimension mismatch");
	Rational det = M.determinant();
	if (det == 0) throw std::domain_error("x_matrix: singular matrix");
	Matrix Minv = M.inverse();
	auto pairing = [&](const std::vector<Rational> &u, int su,
			   const std::vector<Rational> &v, int sv) {
		Rational acc = 0;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				acc += su * u[i] * Minv(i, j) * v[j] * sv;
		/* reduce the phase exponent mod 1 */
		Rational r = acc - rfloor(acc);
		return r;
	};
	/* the Z2 x Z2 orbit of (a, b) is taken as a set of label classes:
	 * sign pairs that differ by vectors in 2MZ^n are the same element
	 * (the phase is insensitive to such shifts for integral labels) */
	auto neg = [&](const std::vector<Rational> &v) {
		std::vector<Rational> w;
		for (auto &x : v) w.push_back(-x);
		return w;
	};
	auto same_class = [&](const std::vector<Rational> &u,
			      const std::vector<Rational> &v) {
		/* u - v in 2MZ^n iff M^{-1}(u - v)/2 is integral */
		std::vector<Rational> d(n);
		for (std::size_t i = 0; i < n; ++i) d[i] = u[i] - v[i];
		std::vector<Rational> x = Minv.mul(d);
		for (auto &xi : x)
			if (den(xi / 2) != 1) return false;
		return true;
	};
	std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> orbit;
	for (int su : {1, -1})
		for (int sv : {1, -1}) {
			auto cand = std::make_pair(su == 1 ? a : neg(a),
						   sv == 1 ? b : neg(b));
			bool dup = false;
			for (auto &[u, v] : orbit)
				if (same_class(cand.first, u) &&
				    same_class(cand.second, v)) {
					dup = true;
					break;
				}
			if (!dup) orbit.push_back(std::move(cand));
		}
	XValue xv;
	Rational dabs = abs(det);
	if (den(dabs) != 1)
		throw std::domain_error("x_matrix: non-integral determinant");
	xv.abs_det = num(dabs);
	for (auto &[u, v] : orbit) xv.phases[pairing(u, 1, v, 1)] += 1;
	return xv;
}

/* Z_CS(k) = (1/(i sqrt(2k))) lim_{t->0+} Zhat_0(1/k + it), reported with
 * grid values and extrapolation spread. */
inline RadialReport wrt_radial(const PlumbingGraph &g, const Int &k,
			       unsigned precision_bits = 128,
			       std::vector<Rational> tgrid = {
				   Rational(1, 10), Rational(1, 20),
				   Rational(1, 40)})
{
	if (k <= 0)
		throw std::domain_error("wrt_radial: level must be positive");
	if (tgrid.empty())
		throw std::domain_error("wrt_radial: empty t-grid");
	Rational tmin = tgrid[0];
	for (auto &t : tgrid) tmin = std::min(tmin, t);
	/* series order from the tail rule 2 pi t N >= 40 ln 2 */
	Rational need(Int(std::ceil(40.0 * std::log(2.0) / (2 * 3.14159))));
	Rational order = need / tmin + 8;
	auto a = SpincStructure(g).label_of_delta().a;
	QSeries s = zhat_negative_definite(g, a, order);
	RadialReport rep =
	    radial_extrapolate(s, Rational(1, k), tgrid, precision_bits);
	PrecisionScope ps(std::max(precision_bits, 128u));
	/* multiply everything by 1/(i sqrt(2k)) = -i / sqrt(2k) */
	Real c = Real(1) / sqrt(2 * Real(k.str()));
	auto rot = [&](const Complex &z) {
		return Complex(c * z.im, -(c * z.re));
	};
	for (auto &v : rep.values) v = rot(v);
	rep.extrapolant = rot(rep.extrapolant);
	rep.error_estimate = c * rep.error_estimate;
	return rep;
}

struct FalseMockRow {
	Rational t;
	Complex gtilde;       /* Eichler companion of the shadow, at tau = it */
	Real asym_prediction; /* alpha_0(0) + alpha_0(1) t */
	Real f0_value;        /* F_0(e^{-2 pi t}): blow-up diagnostic */
};

struct FalseMockReport {
	std::vector<FalseMockRow> rows;
	std::vector<AsymCoeff> coeffs;
};

/* Side-by-side table of the false side (the Eichler companion g~ of the
 * Sigma(2,3,7) shadow, with its exact asymptotic coefficients) and the
 * mock side (F_0 growth as t -> 0+). */
inline FalseMockReport false_mock_zero_report(const QSeries &zhat_series,
					      const QSeries &f0_series,
					      const std::vector<Rational> &tgrid,
					      unsigned precision_bits = 128)
{
	FalseMockReport rep;
	rep.coeffs = asymptotic_coeffs(sigma237_sign_pattern(), 42, 1);
	if (tgrid.empty()) return rep;
	PrecisionScope ps(std::max(precision_bits, 128u));
	/* g~ = q^{-c} * Zhat with the prefactor exponent of the shipped
	 * three-star data */
	QSeries gt = zhat_series.shifted(Rational(-83, 168));
	for (auto &t : tgrid) {
		FalseMockRow row;
		row.t = t;
		row.gtilde = eval_series(gt, 0, t);
		row.asym_prediction = rep.coeffs[0].numeric() +
				      rep.coeffs[1].numeric() * to_real(t);
		row.f0_value = eval_series(f0_series, 0, t).re;
		rep.rows.push_back(row);
	}
	return rep;
}

} // namespace zhat
