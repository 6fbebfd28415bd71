#pragma once

/* Independent reference implementations used to cross-check the library:
 * brute-force box enumeration for the lattice sums, characteristic-
 * polynomial sign counting for inertia, and direct ring-axiom trials. */

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zhat/indefinite.hpp"
#include "zhat/matrix.hpp"
#include "zhat/qseries.hpp"
#include "zhat/zhat.hpp"

namespace oracles {

using zhat::Int;
using zhat::Matrix;
using zhat::QSeries;
using zhat::Rational;

/* --- lattice enumeration vs. box brute force ------------------------- */

struct LatticeCase {
	Matrix M;
	std::vector<Int> a;
	Rational qmax;
};

/* M = -C C^T with C integer lower triangular, unit-or-two diagonal:
 * always symmetric negative definite. */
inline LatticeCase random_lattice_case(std::mt19937 &rng)
{
	std::uniform_int_distribution<int> dim(1, 4), off(-1, 1), diag(1, 2),
	    av(-3, 3);
	std::size_t n = static_cast<std::size_t>(dim(rng));
	std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
	for (std::size_t i = 0; i < n; ++i) {
		c[i][i] = diag(rng);
		for (std::size_t j = 0; j < i; ++j) c[i][j] = off(rng);
	}
	LatticeCase lc;
	lc.M = Matrix(n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			long s = 0;
			for (std::size_t k = 0; k < n; ++k) s += c[i][k] * c[j][k];
			lc.M(i, j) = Rational(-s);
		}
	lc.a.resize(n);
	for (auto &x : lc.a) x = av(rng);
	std::uniform_int_distribution<int> qn(1, n >= 4 ? 6 : 24);
	lc.qmax = Rational(qn(rng), 4);
	return lc;
}

inline std::string term_key(const std::vector<Int> &n, const Rational &e)
{
	std::ostringstream os;
	for (auto &v : n) os << v << ",";
	os << "|" << zhat::to_string(e);
	return os.str();
}

/* Enumerate n = a + 2Mx over an exact box that provably covers every
 * solution of -n^T M^{-1} n / 4 < qmax, and keep the ones that qualify.
 * The box comes from (x - mu)^T P (x - mu) <= R with P = -M and the bound
 * lambda_min(P) >= 1 / tr(P^{-1}). */
inline bool lattice_case_matches(const LatticeCase &lc)
{
	std::size_t n = lc.M.size();
	Matrix P(n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) P(i, j) = -lc.M(i, j);
	Matrix Pinv = P.inverse();
	std::vector<Rational> av(n);
	for (std::size_t i = 0; i < n; ++i) av[i] = Rational(lc.a[i]);
	/* the exponent is n^T P^{-1} n / 4 >= 0 with minimum 0 at the real
	 * center mu (where P mu = a/2), so the budget is all of qmax */
	std::vector<Rational> half(n);
	for (std::size_t i = 0; i < n; ++i) half[i] = av[i] / 2;
	std::vector<Rational> mu = Pinv.mul(half);
	Rational R = lc.qmax;
	Rational tr = 0;
	for (std::size_t i = 0; i < n; ++i) tr += Pinv(i, i);
	/* radius s: smallest integer with s^2 >= R * tr */
	Rational rad2 = R * tr;
	Int s = 0;
	while (Rational(s * s) < rad2) ++s;

	/* adj(M) = det(M) * M^{-1}, integral */
	Matrix Minv = lc.M.inverse();
	Rational detM = lc.M.determinant();
	std::vector<std::vector<Int>> adj(n, std::vector<Int>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			adj[i][j] = zhat::num(Minv(i, j) * detM);
	Int den4 = 4 * zhat::num(detM);

	std::multiset<std::string> brute;
	std::vector<Int> lo(n), hi(n), x(n);
	for (std::size_t i = 0; i < n; ++i) {
		lo[i] = zhat::rceil(mu[i]) - s - 1;
		hi[i] = zhat::rfloor(mu[i]) + s + 1;
		x[i] = lo[i];
	}
	std::vector<Int> nv(n);
	while (true) {
		for (std::size_t i = 0; i < n; ++i) {
			Int v = lc.a[i];
			for (std::size_t j = 0; j < n; ++j)
				v += 2 * zhat::num(lc.M(i, j)) * x[j];
			nv[i] = v;
		}
		Int quad = 0;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				quad += nv[i] * adj[i][j] * nv[j];
		Rational e(-quad, den4);
		if (e < lc.qmax) brute.insert(term_key(nv, e));
		std::size_t i = 0;
		for (; i < n; ++i) {
			x[i] += 1;
			if (x[i] <= hi[i]) break;
			x[i] = lo[i];
		}
		if (i == n) break;
	}

	std::multiset<std::string> fast;
	for (auto &t : zhat::lattice_points(lc.M, lc.a, lc.qmax))
		fast.insert(term_key(t.n, t.qexp));
	return fast == brute;
}

inline bool run_lattice_box_trials(int count, unsigned seed = 90210)
{
	std::mt19937 rng(seed);
	for (int i = 0; i < count; ++i)
		if (!lattice_case_matches(random_lattice_case(rng))) return false;
	return true;
}

/* --- inertia vs. characteristic polynomial --------------------------- */

inline std::vector<Rational> char_poly(const Matrix &a)
{
	std::size_t n = a.size();
	std::vector<Rational> c(n + 1, 0);
	c[n] = 1;
	Matrix m(n);
	for (std::size_t k = 1; k <= n; ++k) {
		Matrix next(n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) {
				Rational sum = 0;
				for (std::size_t l = 0; l < n; ++l)
					sum += a(i, l) * m(l, j);
				next(i, j) = sum;
			}
		for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
		Rational trm = 0;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t l = 0; l < n; ++l)
				trm += a(i, l) * next(l, i);
		c[n - k] = -trm / Rational(Int(k));
		m = next;
	}
	return c;
}

inline int descartes_positive(const std::vector<Rational> &c)
{
	int changes = 0, last = 0;
	for (auto &v : c) {
		int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
		if (s == 0) continue;
		if (last != 0 && s != last) ++changes;
		last = s;
	}
	return changes;
}

inline bool inertia_case_matches(const Matrix &m)
{
	std::vector<Rational> c = char_poly(m);
	std::size_t z = 0;
	while (z < c.size() && c[z] == 0) ++z;
	std::vector<Rational> flipped = c;
	for (std::size_t k = 1; k < flipped.size(); k += 2)
		flipped[k] = -flipped[k];
	zhat::Inertia in = zhat::inertia(m);
	return in.zeros == static_cast<int>(z) &&
	       in.positives == descartes_positive(c) &&
	       in.negatives == descartes_positive(flipped);
}

inline bool run_inertia_trials(int count, unsigned seed = 424242)
{
	std::mt19937 rng(seed);
	std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6);
	for (int iter = 0; iter < count; ++iter) {
		std::size_t n = static_cast<std::size_t>(dim(rng));
		Matrix m(n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i; j < n; ++j)
				m(i, j) = m(j, i) = Rational(entry(rng));
		if (!inertia_case_matches(m)) return false;
	}
	return true;
}

/* --- series ring axioms ---------------------------------------------- */

inline bool run_ring_axiom_trials(int count, unsigned seed = 20240811)
{
	std::mt19937 rng(seed);
	std::uniform_int_distribution<int> nterms(0, 6), numd(-8, 8), dend(1, 4),
	    expn(-20, 40), ord(5, 60);
	auto rand_series = [&]() {
		QSeries s{Rational(ord(rng))};
		for (int i = 0, n = nterms(rng); i < n; ++i)
			s.add_term(Rational(expn(rng), 168),
				   Rational(numd(rng), dend(rng)));
		return s;
	};
	for (int iter = 0; iter < count; ++iter) {
		QSeries a = rand_series(), b = rand_series(), c = rand_series();
		if (!((a + b) + c).agrees_with(a + (b + c))) return false;
		if (!(a * b).agrees_with(b * a)) return false;
		if (!((a * b) * c).agrees_with(a * (b * c))) return false;
		if (!(a * (b + c)).agrees_with(a * b + a * c)) return false;
		if (!(a + (-a)).terms().empty()) return false;
		if (!(a * QSeries::one(a.order())).agrees_with(a)) return false;
	}
	return true;
}

/* --- regularizer support: boundary is never attained ------------------ */

/* For every lattice point of the signature-(1,1) theta with exponent below
 * `order`, the two cone pairings must be strictly nonzero (the sign
 * function never sees a zero argument). */
inline bool rho_boundary_clear(const zhat::IndefThetaSpec &spec,
			       const Rational &order)
{
	const Rational &m = spec.m;
	Rational emax = order + spec.d;
	for (int j = 0; j < 4; ++j) {
		for (int eps : {1, -1}) {
			Rational shift = 1 - eps * spec.b[j] / m;
			/* on the support (v,v)/2 >= v1^2/6, so |v1| <= sqrt(6 emax);
			 * scan generously beyond that */
			Int kmax = zhat::isqrt_upper(0, 6 * emax) + 4;
			for (Int k = -kmax; k <= kmax; ++k) {
				Rational v1 = shift + 2 * Rational(k);
				Rational tsq = (2 * emax + m / 2 * v1 * v1) / 3;
				if (tsq < 0) continue;
				Rational off(-1, 6);
				for (Int nn = zhat::isqrt_lower(off, tsq);
				     nn <= zhat::isqrt_upper(off, tsq); ++nn) {
					Rational v2 = Rational(nn) - Rational(1, 6);
					std::array<Rational, 2> vb{abs(v1), v2};
					if (spec.form(vb, spec.cvec) == 0) return false;
					if (spec.form(vb, spec.cprime) == 0) return false;
				}
			}
		}
	}
	return true;
}

} // namespace oracles
