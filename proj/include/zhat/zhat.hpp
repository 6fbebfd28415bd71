#pragma once

#include <thread>
#include <vector>

#include "zhat/false_theta.hpp"
#include "zhat/matrix.hpp"
#include "zhat/plumbing.hpp"
#include "zhat/wlaurent.hpp"

namespace zhat {

/* One summand of the lattice theta function: n in 2MZ^n + a with
 * q-exponent -n^T M^{-1} n / 4. */
struct LatticeTerm {
	std::vector<Int> n;
	Rational qexp;
};

/* Enumerates exactly the lattice terms with qexp < qmax, by exact
 * completion-of-squares bounds (Fincke-Pohst); no floating-point
 * admissibility decisions are made. */
inline std::vector<LatticeTerm> lattice_points(const Matrix &M,
					       const std::vector<Int> &a,
					       const Rational &qmax)
{
	std::size_t n = M.size();
	Inertia in = inertia(M);
	if (in.negatives != static_cast<int>(n))
		throw std::domain_error(
		    "enumeration requires negative-definite form");
	Matrix Minv = M.inverse();

	/* Q(x) = x^T P x - a^T x + c0 with P = -M, for n = a + 2Mx. */
	Matrix P(n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) P(i, j) = -M(i, j);
	std::vector<Rational> av(n);
	for (std::size_t i = 0; i < n; ++i) av[i] = Rational(a[i]);
	Rational c0 = 0;
	{
		std::vector<Rational> t = Minv.mul(av);
		for (std::size_t i = 0; i < n; ++i) c0 += av[i] * t[i];
		c0 = -c0 / 4;
	}
	/* center: P mu = a/2 */
	std::vector<Rational> half(n);
	for (std::size_t i = 0; i < n; ++i) half[i] = av[i] / 2;
	std::vector<Rational> mu = P.inverse().mul(half);
	Rational qmin = c0;
	{
		std::vector<Rational> t = P.mul(mu);
		for (std::size_t i = 0; i < n; ++i) qmin -= mu[i] * t[i];
	}

	/* LDL^T of P: P = L D L^T, L unit lower triangular. */
	Matrix L = Matrix::identity(n);
	std::vector<Rational> d(n);
	{
		Matrix W = P;
		for (std::size_t i = 0; i < n; ++i) {
			d[i] = W(i, i);
			for (std::size_t j = i + 1; j < n; ++j) L(j, i) = W(j, i) / d[i];
			for (std::size_t r = i + 1; r < n; ++r)
				for (std::size_t c = i + 1; c < n; ++c)
					W(r, c) -= L(r, i) * d[i] * L(c, i);
		}
	}

	/* With y_i = u_i + sum_{j>i} L_{ji} u_j and u = x - mu:
	 * Q = qmin + sum d_i y_i^2. Enumerate x from the last level down. */
	std::vector<LatticeTerm> out;
	std::vector<Int> x(n, 0);
	auto emit = [&](auto &&self, std::size_t lvl, const Rational &budget) -> void {
		if (budget < 0) return;
		std::size_t i = lvl - 1;
		Rational off = -mu[i];
		for (std::size_t j = i + 1; j < n; ++j)
			off += L(j, i) * (Rational(x[j]) - mu[j]);
		Rational S = budget / d[i];
		Int lo = isqrt_lower(off, S), hi = isqrt_upper(off, S);
		for (Int xi = lo; xi <= hi; ++xi) {
			x[i] = xi;
			Rational y = Rational(xi) + off;
			Rational rem = budget - d[i] * y * y;
			if (rem < 0) continue;
			if (i == 0) {
				LatticeTerm t;
				t.qexp = qmax - rem; /* = qmin + sum d_i y_i^2 */
				if (t.qexp >= qmax) continue; /* strict cutoff */
				t.n.resize(n);
				for (std::size_t k = 0; k < n; ++k) {
					Rational nk = av[k];
					for (std::size_t l = 0; l < n; ++l)
						nk += 2 * M(k, l) * Rational(x[l]);
					t.n[k] = num(nk);
				}
				out.push_back(std::move(t));
			} else {
				self(self, i, rem);
			}
		}
	};
	emit(emit, n, qmax - qmin);
	return out;
}

/* Z-hat from the defining contour integral: lattice theta enumeration and
 * principal-value constant-term extraction, for negative-definite
 * adjacency matrices. */
inline QSeries zhat_negative_definite(const PlumbingGraph &g,
				      const std::vector<Int> &a,
				      const Rational &order, int jobs = 1)
{
	if (order <= 0)
		throw std::domain_error("zhat: order must be positive");
	Matrix M = g.adjacency();
	Inertia in = inertia(M);
	if (in.negatives != static_cast<int>(g.size()))
		throw std::domain_error("zhat: adjacency matrix not negative definite");
	Rational e0 = (3 * Rational(in.signature())) / 4;
	for (std::size_t i = 0; i < g.size(); ++i)
		e0 -= Rational(g.weight(i)) / 4;
	Rational qmax = order - e0;
	std::vector<LatticeTerm> pts = lattice_points(M, a, qmax);

	Int W = 0;
	for (auto &t : pts)
		for (auto &nv : t.n) W = std::max(W, Int(abs(nv)));
	std::vector<PVFactor> pv;
	for (std::size_t v = 0; v < g.size(); ++v)
		pv.push_back(pv_vertex_factor(g.degree(v), W));

	int sign = (in.positives % 2 == 0) ? 1 : -1;
	auto accumulate = [&](std::size_t lo, std::size_t hi) {
		QSeries s(order);
		for (std::size_t t = lo; t < hi; ++t) {
			Rational c = sign;
			for (std::size_t v = 0; v < g.size() && c != 0; ++v)
				c *= pv[v].coeff(-pts[t].n[v]);
			if (c != 0) s.add_term(e0 + pts[t].qexp, c);
		}
		return s;
	};
	if (jobs <= 1 || pts.size() < 64)
		return accumulate(0, pts.size());
	std::size_t chunk = (pts.size() + jobs - 1) / jobs;
	std::vector<QSeries> parts;
	std::vector<std::thread> workers;
	parts.reserve(jobs);
	for (int j = 0; j < jobs; ++j) parts.emplace_back(order);
	for (int j = 0; j < jobs; ++j) {
		std::size_t lo = std::min(pts.size(), j * chunk);
		std::size_t hi = std::min(pts.size(), (j + 1) * chunk);
		workers.emplace_back([&, j, lo, hi] { parts[j] = accumulate(lo, hi); });
	}
	for (auto &w : workers) w.join();
	QSeries s(order);
	for (auto &p : parts) s = s + p;
	return s;
}

/* Z-hat by the three-star closed form: sign * q^{c_pref} *
 * sum_j F_{m-b_j, m}(m tau). */
inline QSeries zhat_three_star(const PlumbingGraph &g, const Rational &order)
{
	if (order <= 0)
		throw std::domain_error("zhat: order must be positive");
	ThreeStarData t = three_star_params(g);
	Rational inner_order = order - t.c_pref;
	QSeries sum(inner_order);
	for (std::size_t j = 0; j < 4; ++j)
		sum = sum + F_series_scaled(t.m - t.b[j], t.m, inner_order);
	QSeries out = sum.shifted(t.c_pref);
	if (t.sign < 0) out = -out;
	return out.truncated(order);
}

} // namespace zhat
