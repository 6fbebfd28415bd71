#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "zhat/rational.hpp"

namespace zhat {

/* Sparse exact series in $q$ with rational exponents and rational
 * coefficients. Terms with exponent >= order are unknown, not zero; the
 * order is carried through every operation and reduced pessimistically. */
class QSeries {
public:
	explicit QSeries(Rational order) : order_(std::move(order)) {}

	static QSeries monomial(const Rational &coeff, const Rational &exp,
				const Rational &order)
	{
		QSeries s(order);
		s.add_term(exp, coeff);
		return s;
	}

	static QSeries one(const Rational &order)
	{
		return monomial(1, 0, order);
	}

	/* Adds coeff * q^exp; terms at or beyond the order are dropped and
	 * coefficients that cancel to zero are purged. */
	void add_term(const Rational &exp, const Rational &coeff)
	{
		if (coeff == 0 || exp >= order_) return;
		auto [it, fresh] = terms_.try_emplace(exp, coeff);
		if (!fresh) {
			it->second += coeff;
			if (it->second == 0) terms_.erase(it);
		}
	}

	const std::map<Rational, Rational> &terms() const { return terms_; }
	const Rational &order() const { return order_; }
	bool is_zero() const { return terms_.empty(); }

	Rational coeff(const Rational &exp) const
	{
		auto it = terms_.find(exp);
		return it == terms_.end() ? Rational(0) : it->second;
	}

	std::optional<Rational> min_exponent() const
	{
		if (terms_.empty()) return std::nullopt;
		return terms_.begin()->first;
	}

	QSeries truncated(const Rational &new_order) const
	{
		QSeries out(new_order < order_ ? new_order : order_);
		for (auto &[e, c] : terms_) out.add_term(e, c);
		return out;
	}

	/* Multiplies by c * q^e; the truncation bound shifts along. */
	QSeries shifted(const Rational &e, const Rational &c = 1) const
	{
		QSeries out(order_ + e);
		if (c == 0) return out;
		for (auto &[a, b] : terms_) out.add_term(a + e, b * c);
		return out;
	}

	QSeries operator-() const { return shifted(0, -1); }

	friend QSeries operator+(const QSeries &a, const QSeries &b)
	{
		QSeries out(a.order_ < b.order_ ? a.order_ : b.order_);
		for (auto &[e, c] : a.terms_) out.add_term(e, c);
		for (auto &[e, c] : b.terms_) out.add_term(e, c);
		return out;
	}

	friend QSeries operator-(const QSeries &a, const QSeries &b)
	{
		return a + (-b);
	}

	/* Exact product truncated at
	 * min(a.order + minexp(b), b.order + minexp(a)); a factor with no
	 * stored terms counts as minexp 0 (pessimistic). */
	friend QSeries operator*(const QSeries &a, const QSeries &b)
	{
		Rational ma = a.terms_.empty() ? Rational(0) : a.terms_.begin()->first;
		Rational mb = b.terms_.empty() ? Rational(0) : b.terms_.begin()->first;
		Rational oa = a.order_ + mb, ob = b.order_ + ma;
		QSeries out(oa < ob ? oa : ob);
		for (auto &[ea, ca] : a.terms_) {
			if (ea + mb >= out.order_) break;
			for (auto &[eb, cb] : b.terms_) {
				Rational e = ea + eb;
				if (e >= out.order_) break;
				out.add_term(e, ca * cb);
			}
		}
		return out;
	}

	/* Inverse up to truncation. Requires a nonzero leading term; the
	 * result has min-exponent -minexp(a) and order order - 2*minexp(a). */
	QSeries invert() const
	{
		if (terms_.empty())
			throw std::domain_error("QSeries: not invertible");
		Rational e0 = terms_.begin()->first;
		Rational c0 = terms_.begin()->second;
		/* u := a/(c0 q^e0) - 1 has positive min exponent. */
		QSeries u = shifted(-e0, Rational(1) / c0);
		u.add_term(0, -1);
		Rational rel = order_ - e0; /* relative precision of u */
		QSeries acc = QSeries::one(rel);
		QSeries pow = QSeries::one(rel);
		while (true) {
			pow = pow * (-u);
			pow = pow.truncated(rel);
			if (pow.is_zero()) break;
			acc = acc + pow;
		}
		return acc.shifted(-e0, Rational(1) / c0);
	}

	bool operator==(const QSeries &o) const
	{
		return order_ == o.order_ && terms_ == o.terms_;
	}

	/* Equality of all coefficients below the smaller of the two orders. */
	bool agrees_with(const QSeries &o) const
	{
		Rational n = order_ < o.order_ ? order_ : o.order_;
		return truncated(n).terms_ == o.truncated(n).terms_;
	}

private:
	std::map<Rational, Rational> terms_;
	Rational order_;
};

/* Dedekind eta: q^{1/24} sum_{n in Z} (-1)^n q^{(3n^2-n)/2}, truncated. */
inline QSeries eta_series(const Rational &order)
{
	if (order <= 0) throw std::domain_error("eta_series: order must be positive");
	QSeries s(order);
	Rational shift(1, 24);
	for (Int n = 0;; ++n) {
		Rational e = Rational(n * (3 * n - 1), 2) + shift;
		Rational em = Rational(n * (3 * n + 1), 2) + shift;
		if (e >= order && em >= order) {
			if (n > 0) break;
		}
		Rational c = (n % 2 == 0) ? 1 : -1;
		s.add_term(e, c);
		if (n > 0) s.add_term(em, c); /* the n -> -n partner */
	}
	return s;
}

} // namespace zhat
