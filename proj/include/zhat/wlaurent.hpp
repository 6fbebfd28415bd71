#pragma once

#include <map>
#include <stdexcept>

#include "zhat/qseries.hpp"

namespace zhat {

/* Principal-value expansion of the vertex factor (w - 1/w)^{2-deg}.
 * For deg <= 2 this is an honest Laurent polynomial; for deg >= 3 the two
 * geometric expansions (|w|>1 and |w|<1) are averaged. Coefficients are
 * exposed as a function of the w-exponent, clipped to |e| <= window. */
class PVFactor {
public:
	PVFactor(int degree, const Int &window) : degree_(degree), window_(window)
	{
		if (degree < 0) throw std::domain_error("PVFactor: negative degree");
		if (window < 0) throw std::domain_error("PVFactor: negative window");
	}

	int degree() const { return degree_; }
	const Int &window() const { return window_; }

	Rational coeff(const Int &e) const
	{
		if (abs(e) > window_) return 0;
		if (degree_ <= 2) {
			/* (w - 1/w)^p with p = 2 - deg: term j is
			 * binom(p,j) (-1)^j w^{p-2j}. */
			int p = 2 - degree_;
			Int diff = Int(p) - e;
			if (diff < 0 || diff > 2 * p || diff % 2 != 0) return 0;
			long j = static_cast<long>(diff / 2);
			Rational c = binom(p, j);
			return (j % 2 == 0) ? c : -c;
		}
		/* 1/(w - 1/w)^k: outside expansion puts binom(k-1+j, j) at
		 * w^{-k-2j}; inside puts (-1)^k binom(k-1+j, j) at w^{k+2j}.
		 * The vp prescription averages the two. */
		int k = degree_ - 2;
		Int ae = abs(e);
		if (ae < k || (ae - k) % 2 != 0) return 0;
		long j = static_cast<long>(Int((ae - k) / 2));
		Rational c = Rational(binom_big(k - 1 + j, j), 2);
		if (e > 0 && k % 2 != 0) c = -c;
		return c;
	}

private:
	static Int binom_big(long n, long j)
	{
		Int r = 1;
		for (long i = 1; i <= j; ++i) r = r * (n - j + i) / i;
		return r;
	}
	static Rational binom(int n, long j)
	{
		return Rational(binom_big(n, j));
	}

	int degree_;
	Int window_;
};

inline PVFactor pv_vertex_factor(int degree, const Int &window)
{
	return PVFactor(degree, window);
}

/* Finite Laurent object in the auxiliary variable w whose coefficients are
 * QSeries, with a symmetric clip window on |w-exponent|. */
class WLaurentQSeries {
public:
	explicit WLaurentQSeries(Rational window) : window_(std::move(window))
	{
		if (window_ < 0)
			throw std::domain_error("WLaurentQSeries: negative window");
	}

	void add(const Rational &wexp, const QSeries &s)
	{
		if (s.is_zero() || abs(wexp) > window_) return;
		auto it = terms_.find(wexp);
		if (it == terms_.end()) {
			terms_.emplace(wexp, s);
		} else {
			it->second = it->second + s;
			if (it->second.is_zero()) terms_.erase(it);
		}
	}

	const std::map<Rational, QSeries> &terms() const { return terms_; }
	const Rational &window() const { return window_; }

	const QSeries *at(const Rational &wexp) const
	{
		auto it = terms_.find(wexp);
		return it == terms_.end() ? nullptr : &it->second;
	}

private:
	Rational window_;
	std::map<Rational, QSeries> terms_;
};

/* Realizes the contour integral dw/(2 pi i w): picks the w^0 coefficient. */
inline QSeries constant_term_in_w(const WLaurentQSeries &f,
				  const Rational &order)
{
	if (const QSeries *s = f.at(0)) return s->truncated(order);
	return QSeries(order);
}

/* Constant term of pvfactor(w) * f(w): sums f_k * pv(-k) over the stored
 * w-exponents (which must be integers within the factor's window). */
inline QSeries pv_constant_term(const PVFactor &pv, const WLaurentQSeries &f,
				const Rational &order)
{
	QSeries out(order);
	for (auto &[wexp, s] : f.terms()) {
		if (den(wexp) != 1)
			throw std::domain_error("pv_constant_term: non-integer w-exponent");
		Rational c = pv.coeff(-num(wexp));
		if (c == 0) continue;
		for (auto &[e, a] : s.terms()) out.add_term(e, a * c);
		Rational so = s.order();
		if (so < out.order()) out = out.truncated(so);
	}
	return out;
}

} // namespace zhat
