#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zhat/plumbing.hpp"
#include "zhat/qseries.hpp"

namespace zhat {

/* Exact Laurent polynomial in q: exponent -> coefficient. */
using QLaurent = std::map<Rational, Rational>;

struct SurgerySlope {
	Int p;
	Int r;

	SurgerySlope(Int p_, Int r_) : p(p_), r(r_)
	{
		if (p == 0 || r == 0)
			throw std::domain_error("surgery slope: p and r must be nonzero");
		if (gcd(Int(abs(p)), Int(abs(r))) != 1)
			throw std::domain_error("surgery slope: p, r must be coprime");
	}
};

/* Two-variable knot series F_K(x,q): each half-integer x-exponent u
 * carries an exact q-Laurent coefficient.  Exponents are stored doubled
 * (2u) so keys stay integral.  Data is antisymmetric under x -> 1/x and
 * trusted to be complete only through |u| <= u_max unless the series is
 * marked complete (the unknot). */
class KnotSeries {
public:
	KnotSeries(std::string name, std::map<Int, QLaurent> terms,
		   bool complete = false,
		   std::map<Int, Rational> alexander = {})
	    : name_(std::move(name)), complete_(complete),
	      alexander_(std::move(alexander))
	{
		/* drop explicit zeros first so presence means a real term */
		for (auto &[tu, poly] : terms)
			for (auto it = poly.begin(); it != poly.end();)
				it = (it->second == 0) ? poly.erase(it)
						       : std::next(it);
		/* a listed x-power implies its mirror with opposite sign;
		 * if both sides are listed they must already agree */
		for (auto &[tu, poly] : terms) {
			if (poly.empty()) continue;
			auto mit = terms.find(Int(-tu));
			if (mit != terms.end()) {
				QLaurent neg;
				for (auto &[v, c] : mit->second) neg[v] = -c;
				if (neg != poly)
					throw std::domain_error(
					    "knot series is not antisymmetric in x");
			}
			terms_[tu] = poly;
			QLaurent &mirror = terms_[Int(-tu)];
			mirror.clear();
			for (auto &[v, c] : poly) mirror[v] = -c;
			u_max_ = std::max(u_max_, Int(abs(tu)));
		}
	}

	const std::string &name() const { return name_; }
	const std::map<Int, QLaurent> &terms() const { return terms_; }
	/* largest |u| with trusted data, doubled */
	Int two_u_max() const { return u_max_; }
	bool complete() const { return complete_; }
	bool has_alexander() const { return !alexander_.empty(); }
	const std::map<Int, Rational> &alexander() const { return alexander_; }

	/* max |q-exponent| appearing at x^{tu/2}, or 0 if absent */
	Rational width(const Int &tu) const
	{
		Rational w = 0;
		auto it = terms_.find(tu);
		if (it == terms_.end()) return w;
		for (auto &[v, c] : it->second) {
			Rational a = abs(v);
			if (a > w) w = a;
		}
		return w;
	}

private:
	std::string name_;
	std::map<Int, QLaurent> terms_;
	Int u_max_ = 0;
	bool complete_ = false;
	std::map<Int, Rational> alexander_;
};

/* F_K for the figure-eight knot, from the expansion
 * F = (1/2)(Xi(x,q) - Xi(1/x,q)) with
 * Xi = x^{1/2} + 2 x^{3/2} + (1/q + 3 + q) x^{5/2}
 *    + (2/q^2 + 2/q + 5 + 2q + 2q^2) x^{7/2} + ... */
inline KnotSeries figure_eight_FK()
{
	std::map<Int, QLaurent> t;
	t[1] = {{0, Rational(1, 2)}};
	t[3] = {{0, Rational(1)}};
	t[5] = {{-1, Rational(1, 2)}, {0, Rational(3, 2)}, {1, Rational(1, 2)}};
	t[7] = {{-2, Rational(1)}, {-1, Rational(1)}, {0, Rational(5, 2)},
		{1, Rational(1)},  {2, Rational(1)}};
	std::map<Int, Rational> alex = {{-1, -1}, {0, 3}, {1, -1}};
	return KnotSeries("figure_eight", std::move(t), false, std::move(alex));
}

/* F_K for the unknot: exactly x^{1/2} - x^{-1/2}. */
inline KnotSeries unknot_FK()
{
	std::map<Int, QLaurent> t;
	t[1] = {{0, Rational(1)}};
	std::map<Int, Rational> alex = {{0, 1}};
	return KnotSeries("unknot", std::move(t), true, std::move(alex));
}

/* Laplace transform of a single monomial x^u q^v: selected iff
 * r*u - a is divisible by p, in which case it maps to q^{-u^2 r/p + v}.
 * Returns the output q-exponent, or nothing if the term is dropped. */
inline std::optional<Rational> laplace_transform(const Rational &u,
						 const Rational &v,
						 const Int &a,
						 const SurgerySlope &s)
{
	Rational sel = (Rational(s.r) * u - Rational(a)) / Rational(s.p);
	if (den(sel) != 1) return std::nullopt;
	return -u * u * Rational(s.r) / Rational(s.p) + v;
}

struct SurgeryResult {
	QSeries series;
	/* exponent below which no unknown x-power of F_K can contribute */
	Rational guaranteed_order;
};

namespace detail {

/* Upper bound on the q-width of the (unknown) coefficient at x^{tu/2}.
 * Observed widths grow with accelerating increments (0, 0, 1, 2 for the
 * figure-eight data, with the next true width being 4): extrapolate by
 * doubling the last increment at each step, capped at 2u since the
 * support depth cannot exceed the quadratic exponent scale. */
inline Rational width_bound(const KnotSeries &K, const Int &tu)
{
	Rational u = Rational(tu) / 2;
	Rational cap = 2 * u;
	Int last = K.two_u_max();
	if (last < 4) return cap;
	Rational w = K.width(last);
	Rational inc = w - K.width(last - 2);
	if (inc < 1) inc = 1;
	for (Int t = last + 2; t <= tu; t += 2) {
		inc *= 2;
		w += inc;
	}
	return w < cap ? w : cap;
}

} // namespace detail

/* Raw surgery series: L^{(a)}_{p/r} applied to (x^{1/2r} - x^{-1/2r}) F_K,
 * without the overall eps*q^d normalization, which is not determined by
 * the transform itself.  Also reports the guaranteed order. */
inline SurgeryResult surgery_zhat(const KnotSeries &K, const SurgerySlope &s,
				  const Int &a, const Rational &order)
{
	if (order <= 0)
		throw std::domain_error("surgery_zhat: order must be positive");
	/* -u^2 r/p must grow with |u|, else unknown high x-powers reach
	 * arbitrarily low q-exponents */
	if (s.r * s.p > 0 && !K.complete())
		throw std::domain_error("slope not admissible for available data");

	/* guaranteed order: minimal possible output exponent over unknown
	 * x-powers |u| > u_max (the quadratic in u dominates the linear
	 * width bound, so the minimum is attained early) */
	Rational guard = order;
	if (!K.complete()) {
		Rational rp = -Rational(s.r) / Rational(s.p); /* > 0 here */
		Rational h = abs(Rational(1) / (2 * Rational(s.r)));
		Rational best = 0;
		bool have = false;
		for (Int tu = K.two_u_max() + 2;; tu += 2) {
			Rational u = Rational(tu) / 2;
			Rational wb = detail::width_bound(K, tu);
			for (int side : {1, -1}) {
				Rational up =
				    u + Rational(side) / (2 * Rational(s.r));
				Rational e = rp * up * up + wb * (-1);
				if (!have || e < best) { best = e; have = true; }
			}
			/* crude floor rp(u-h)^2 - 2u is eventually increasing
			 * in u; once it clears `best` no later u matters */
			Rational floor_u = rp * (u - h) * (u - h) - 2 * u;
			if (u > h + Rational(1) / rp + 1 && floor_u > best)
				break;
		}
		if (best < guard) guard = best;
	}

	Rational trunc = guard < order ? guard : order;
	QSeries out(trunc);
	for (auto &[tu, poly] : K.terms()) {
		for (int side : {1, -1}) {
			Rational up = Rational(tu) / 2 +
				      Rational(side) / (2 * Rational(s.r));
			for (auto &[v, c] : poly) {
				auto e = laplace_transform(up, v, a, s);
				if (!e) continue;
				out.add_term(*e, Rational(side) * c);
			}
		}
	}
	return {out, guard};
}

struct AlexanderCheckRow {
	Rational u;        /* half-integer x-exponent checked */
	Rational expected; /* from the symmetric expansion of 1/Delta */
	Rational actual;   /* F_K coefficient at x^u evaluated at q=1 */
	bool pass;
};

struct AlexanderReport {
	std::vector<AlexanderCheckRow> rows;
	bool all_pass = true;
};

/* Boundary check: the symmetric expansion f of 1/Delta_K(x) must satisfy
 * f_m - f_{m+1} = F_K(x,1)|_{x^{m+1/2}} for all trusted m.  f is computed
 * from Delta_K alone (average of the two one-sided expansions), so this
 * is an independent consistency test of the shipped F_K data. */
inline AlexanderReport alexander_boundary_check(const KnotSeries &K)
{
	if (!K.has_alexander())
		throw std::domain_error("alexander_boundary_check: no Alexander "
					"polynomial in knot data");
	const auto &D = K.alexander();
	Int g = 0;
	for (auto &[p, c] : D)
		if (c != 0 && p > g) g = p;
	for (auto &[p, c] : D)
		if (D.count(-p) == 0 || D.at(-p) != c)
			throw std::domain_error("Alexander polynomial must be "
						"symmetric in x");
	Int m_max = (K.two_u_max() + 1) / 2;

	/* descending expansion of 1/Delta in powers of 1/x: coefficients
	 * desc[k] at x^{-g-k} */
	Rational lead = D.at(g);
	Int depth = m_max + g + 1;
	std::vector<Rational> desc(size_t(depth), Rational(0));
	for (Int k = 0; k < depth; ++k) {
		Rational acc = (k == 0) ? Rational(1) : Rational(0);
		for (auto &[p, c] : D) {
			Int j = g - p; /* this term shifts by j in k */
			if (j == 0 || j > k) continue;
			acc -= c * desc[size_t(k - j)];
		}
		desc[size_t(k)] = acc / lead;
	}
	auto se = [&](Int m) {
		/* symmetric expansion value at x^m: average of descending
		 * coefficient at m and (by x -> 1/x symmetry) at -m */
		auto d = [&](Int mm) {
			Int k = -g - mm;
			return (k >= 0 && k < depth) ? desc[size_t(k)]
						     : Rational(0);
		};
		return (d(m) + d(Int(-m))) / 2;
	};

	AlexanderReport rep;
	for (Int m = 0; 2 * m + 1 <= K.two_u_max(); ++m) {
		Rational actual = 0;
		auto it = K.terms().find(2 * m + 1);
		if (it != K.terms().end())
			for (auto &[v, c] : it->second) actual += c;
		AlexanderCheckRow row;
		row.u = Rational(2 * m + 1) / 2;
		row.expected = se(m) - se(m + 1);
		row.actual = actual;
		row.pass = (row.expected == row.actual);
		rep.all_pass = rep.all_pass && row.pass;
		rep.rows.push_back(row);
	}
	return rep;
}

/* Knot data document:
 * {"name": str, "xden": 2,
 *  "terms": [[2u, [[vnum, vden, cnum, cden], ...]], ...],
 *  "alexander": [[power, coeff], ...]} */
inline KnotSeries parse_knot(const nlohmann::json &doc)
{
	if (!doc.is_object() || !doc.contains("name") || !doc.contains("terms"))
		throw ParseError("knot document: need name and terms");
	if (doc.value("xden", 2) != 2)
		throw ParseError("knot document: only xden = 2 is supported");
	std::map<Int, QLaurent> terms;
	for (auto &row : doc.at("terms")) {
		Int tu = Int(row.at(0).get<long long>());
		for (auto &mono : row.at(1)) {
			Rational v(Int(mono.at(0).get<long long>()),
				   Int(mono.at(1).get<long long>()));
			Rational c(Int(mono.at(2).get<long long>()),
				   Int(mono.at(3).get<long long>()));
			terms[tu][v] += c;
		}
	}
	std::map<Int, Rational> alex;
	if (doc.contains("alexander"))
		for (auto &row : doc.at("alexander"))
			alex[Int(row.at(0).get<long long>())] =
			    Rational(Int(row.at(1).get<long long>()));
	return KnotSeries(doc.at("name").get<std::string>(), std::move(terms),
			  doc.value("complete", false), std::move(alex));
}

} // namespace zhat
