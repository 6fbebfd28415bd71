#pragma once

#include <array>
#include <map>

#include "zhat/plumbing.hpp"
#include "zhat/qseries.hpp"
#include "zhat/wlaurent.hpp"
#include "zhat/zhat.hpp"

namespace zhat {

/* Element of Z[zeta] for zeta = e^{2 pi i/12}, stored on the power basis
 * zeta^0..zeta^11 and reduced modulo the 12th cyclotomic polynomial
 * zeta^4 = zeta^2 - 1 when rationality is queried. All phase bookkeeping
 * in the indefinite theta goes through this ring; a non-rational residual
 * in a final coefficient is a hard error. */
class Cyclotomic12 {
public:
	Cyclotomic12() : c_{} {}

	static Cyclotomic12 rational(const Rational &r)
	{
		Cyclotomic12 z;
		z.c_[0] = r;
		return z;
	}

	static Cyclotomic12 zeta_pow(int k)
	{
		Cyclotomic12 z;
		z.c_[((k % 12) + 12) % 12] = 1;
		return z;
	}

	Cyclotomic12 &operator+=(const Cyclotomic12 &o)
	{
		for (int i = 0; i < 12; ++i) c_[i] += o.c_[i];
		return *this;
	}

	friend Cyclotomic12 operator*(const Cyclotomic12 &a, const Cyclotomic12 &b)
	{
		Cyclotomic12 z;
		for (int i = 0; i < 12; ++i) {
			if (a.c_[i] == 0) continue;
			for (int j = 0; j < 12; ++j) {
				if (b.c_[j] == 0) continue;
				z.c_[(i + j) % 12] += a.c_[i] * b.c_[j];
			}
		}
		return z;
	}

	Cyclotomic12 scaled(const Rational &r) const
	{
		Cyclotomic12 z = *this;
		for (auto &x : z.c_) x *= r;
		return z;
	}

	/* Reduction to the basis 1, zeta, zeta^2, zeta^3. */
	std::array<Rational, 4> reduced() const
	{
		/* zeta^12 = 1 is already folded in; rewrite powers 4..11 via
		 * zeta^4 = zeta^2 - 1 repeatedly. */
		std::array<Rational, 12> w = c_;
		for (int k = 11; k >= 4; --k) {
			if (w[k] == 0) continue;
			w[k - 2] += w[k];
			w[k - 4] -= w[k];
			w[k] = 0;
		}
		return {w[0], w[1], w[2], w[3]};
	}

	bool is_rational() const
	{
		auto r = reduced();
		return r[1] == 0 && r[2] == 0 && r[3] == 0;
	}

	Rational rational_value() const
	{
		auto r = reduced();
		if (r[1] != 0 || r[2] != 0 || r[3] != 0)
			throw std::domain_error(
			    "Cyclotomic12: non-rational phase residual");
		return r[0];
	}

private:
	std::array<Rational, 12> c_;
};

/* The signature-(1,1) data for the reversed-orientation theta function:
 * bilinear form K = diag(-m/2, 3), shifted lattices indexed by (j, eps),
 * and the two timelike cone vectors. */
struct IndefThetaSpec {
	Rational m;
	std::array<Rational, 4> b;
	Rational d;
	std::array<Rational, 2> cvec{1, 0};
	std::array<Rational, 2> cprime{8, 21};

	Rational form(const std::array<Rational, 2> &x,
		      const std::array<Rational, 2> &y) const
	{
		return -m / 2 * x[0] * y[0] + 3 * x[1] * y[1];
	}
};

inline IndefThetaSpec make_indef_spec(const ThreeStarData &t)
{
	IndefThetaSpec s;
	s.m = t.m;
	s.b = t.b;
	s.d = t.d;
	return s;
}

/* rho^{c,c'}(v) = (sgn(vbar,c) - sgn(vbar,c'))/2 with vbar = (|v1|, v2). */
inline Rational rho_regularizer(const std::array<Rational, 2> &v,
				const IndefThetaSpec &spec)
{
	std::array<Rational, 2> vbar{abs(v[0]), v[1]};
	int s1 = sgn(spec.form(vbar, spec.cvec));
	int s2 = sgn(spec.form(vbar, spec.cprime));
	return Rational(s1 - s2, 2);
}

namespace detail {

/* Directions (u, t) with u >= 0 where rho can be nonzero form the support
 * cone; the regularized sum is proper iff the form is positive on all of
 * it. Checked exactly, including at the form's own null directions
 * t = +-sqrt(m/6) u where the test value is alpha + beta*sqrt(m/6). */
inline void validate_cone(const IndefThetaSpec &s)
{
	if (s.form(s.cvec, s.cvec) >= 0 || s.form(s.cprime, s.cprime) >= 0)
		throw std::domain_error("invalid timelike pair");
	auto L1 = [&](const Rational &u, const Rational &t) {
		return -s.m / 2 * u * s.cvec[0] + 3 * t * s.cvec[1];
	};
	auto L2 = [&](const Rational &u, const Rational &t) {
		return -s.m / 2 * u * s.cprime[0] + 3 * t * s.cprime[1];
	};
	auto in_support = [&](const Rational &u, const Rational &t) {
		return L1(u, t) * L2(u, t) <= 0;
	};
	auto Q = [&](const Rational &u, const Rational &t) {
		return -s.m / 2 * u * u + 3 * t * t;
	};
	/* boundary rays of the support: null rays of L1, L2 and the u = 0
	 * edge of the half-plane */
	std::vector<std::array<Rational, 2>> rays{{0, 1}, {0, -1}};
	for (auto &c : {s.cvec, s.cprime}) {
		if (c[1] == 0) continue; /* null line is u = 0, already listed */
		/* L(u,t) = 0 at t = m c0 u / (6 c1); take u = 1 */
		rays.push_back({1, s.m * c[0] / (6 * c[1])});
	}
	for (auto &r : rays)
		if (in_support(r[0], r[1]) && Q(r[0], r[1]) <= 0)
			throw std::domain_error("invalid timelike pair");
	/* null directions of the form: (1, +-t0), t0^2 = m/6. Evaluate
	 * L1*L2 = alpha + beta t0 there and reject if <= 0. */
	Rational t0sq = s.m / 6;
	for (int sg : {1, -1}) {
		/* Li(1, sg*t0) = ai + bi t0 */
		Rational a1 = -s.m / 2 * s.cvec[0], b1 = 3 * sg * s.cvec[1];
		Rational a2 = -s.m / 2 * s.cprime[0], b2 = 3 * sg * s.cprime[1];
		Rational alpha = a1 * a2 + b1 * b2 * t0sq;
		Rational beta = a1 * b2 + a2 * b1;
		/* sign of alpha + beta sqrt(t0sq) */
		int sign_val;
		if (beta == 0) sign_val = sgn(alpha);
		else if (alpha == 0) sign_val = sgn(beta);
		else if (sgn(alpha) == sgn(beta)) sign_val = sgn(alpha);
		else sign_val = sgn(alpha) * sgn(alpha * alpha - beta * beta * t0sq);
		if (sign_val <= 0)
			throw std::domain_error("invalid timelike pair");
	}
}

} // namespace detail

/* vartheta^M_a(tau, z): the cone-regularized indefinite theta. Exponents
 * run over -d + (v,v)/2; the truncation `order` bounds that combination.
 * Phases are tracked in Z[e^{i pi/6}] and must cancel to rationals. */
inline WLaurentQSeries vartheta_indefinite(const IndefThetaSpec &spec,
					   const Rational &order)
{
	if (order <= 0)
		throw std::domain_error("vartheta: order must be positive");
	detail::validate_cone(spec);
	const Rational &m = spec.m;
	Rational emax = order + spec.d; /* bound on (v,v)/2 */

	/* Positive lower bound mu for (v,v)/(2 u^2) on support directions:
	 * minimum over slice u = 1 of interval endpoints and t = 0. */
	Rational mu = 0;
	{
		std::vector<Rational> cand;
		for (auto &c : {spec.cvec, spec.cprime})
			if (c[1] != 0) cand.push_back(m * c[0] / (6 * c[1]));
		auto Q2 = [&](const Rational &t) { return (-m / 2 + 3 * t * t) / 2; };
		bool first = true;
		for (auto &t : cand) {
			std::array<Rational, 2> vb{1, t};
			int s1 = sgn(spec.form(vb, spec.cvec));
			int s2 = sgn(spec.form(vb, spec.cprime));
			if (s1 * s2 > 0) continue;
			Rational q = Q2(t);
			if (first || q < mu) { mu = q; first = false; }
		}
		if (first || mu <= 0)
			mu = -1; /* no admissible stripe directions */
	}

	std::map<Rational, std::map<Rational, Cyclotomic12>> acc;
	const Cyclotomic12 global = Cyclotomic12::zeta_pow(1);
	for (int j = 0; j < 4; ++j) {
		for (int eps : {1, -1}) {
			Rational shift = 1 - eps * spec.b[j] / m; /* v1 in 2Z + shift */
			Rational wfrac = eps * spec.b[j] / m;
			/* |v1| <= sqrt(emax/mu) when mu > 0 */
			Int kmax = 0;
			if (mu > 0) {
				Rational bound = emax / mu;
				kmax = isqrt_upper(0, bound) + 2;
			}
			for (Int twok = -kmax - 2; twok <= kmax + 2; ++twok) {
				/* v1 runs over shift + 2Z; pick v1 = shift + 2*twok */
				Rational v1 = shift + 2 * Rational(twok);
				if (mu > 0 && v1 * v1 > emax / mu) continue;
				Rational u = abs(v1);
				/* t-window: (v,v)/2 <= emax gives
				 * 3 t^2 <= 2 emax + (m/2) u^2 */
				Rational tsq = (2 * emax + m / 2 * u * u) / 3;
				if (tsq < 0) continue;
				/* v2 = n - 1/6, n integer */
				Rational mu_off(-1, 6);
				Int nlo = isqrt_lower(mu_off, tsq);
				Int nhi = isqrt_upper(mu_off, tsq);
				for (Int n = nlo; n <= nhi; ++n) {
					Rational v2 = Rational(n) - Rational(1, 6);
					std::array<Rational, 2> v{v1, v2};
					Rational r = rho_regularizer(v, spec);
					if (r == 0) continue;
					Rational e = spec.form(v, v) / 2;
					if (e - spec.d >= order) continue;
					Rational wexp = wfrac + v1;
					if (den(wexp) != 1 || num(wexp) % 2 == 0)
						throw std::domain_error(
						    "vartheta: w-exponent not an odd integer");
					/* e^{2 pi i (z 1/2).v} = w^{v1} e^{i pi v2};
					 * with v2 = n - 1/6 the phase joins the
					 * global e^{i pi/6} as zeta^{6n}. */
					int par = (n % 2 == 0) ? 0 : 1;
					Cyclotomic12 phase =
					    global * Cyclotomic12::zeta_pow(6 * par - 1);
					Rational coeff = Rational(eps) * r;
					acc[wexp][e - spec.d] += phase.scaled(coeff);
				}
			}
		}
	}
	Rational wmax = 0;
	for (auto &[w, inner] : acc) wmax = std::max(wmax, Rational(abs(w)));
	WLaurentQSeries out(wmax);
	for (auto &[w, inner] : acc) {
		QSeries s(order);
		for (auto &[e, z] : inner) s.add_term(e, z.rational_value());
		out.add(w, s);
	}
	return out;
}

/* Z-hat of the orientation-reversed manifold: eta division, vp constant
 * term against 1/(w(w - 1/w)), and the reversed prefactor. */
inline QSeries zhat_reversed(const PlumbingGraph &g, const Rational &order,
			     const IndefThetaSpec *custom_spec = nullptr)
{
	ThreeStarData t = three_star_params(g);
	IndefThetaSpec spec = make_indef_spec(t);
	if (custom_spec) {
		spec.cvec = custom_spec->cvec;
		spec.cprime = custom_spec->cprime;
	}
	Rational pref = -(3 * Rational(t.inert.signature()) - t.lambda_sum) / 4;
	Rational theta_order = order - pref + Rational(1, 24);
	WLaurentQSeries th = vartheta_indefinite(spec, theta_order);
	Int W = 0;
	for (auto &[w, s] : th.terms()) W = std::max(W, Int(abs(num(w))));
	QSeries ct = pv_constant_term(pv_vertex_factor(3, W), th, theta_order);
	QSeries eta_inv = eta_series(theta_order + 1).invert();
	/* With the default cone pair the regularizer equals -1 on its entire
	 * support (the first cone vector pairs negatively with every lattice
	 * point); that global sign belongs to the cone choice, not the
	 * invariant, so compensate it here. */
	QSeries out = (-(ct * eta_inv)).shifted(pref);
	if (t.sign < 0) out = -out;
	return out.truncated(order);
}

/* Ramanujan's order-7 mock theta function F_0(q) =
 * sum_{n>=0} q^{n^2} / ((q^{n+1}; q)_n), as an independent reference. */
inline QSeries mock_F0_reference(const Rational &order)
{
	if (order <= 0)
		throw std::domain_error("mock_F0_reference: order must be positive");
	QSeries total(order);
	for (Int n = 0; Rational(n * n) < order; ++n) {
		QSeries den = QSeries::one(order);
		for (Int i = n + 1; i <= 2 * n; ++i) {
			if (Rational(i) >= order) break;
			QSeries f = QSeries::one(order);
			f.add_term(Rational(i), -1);
			den = den * f;
		}
		total = total + den.invert().shifted(Rational(n * n)).truncated(order);
	}
	return total;
}

/* The weight-3/2 shadow combination for Sigma(2,3,7):
 * theta^1_{42,1} - theta^1_{42,13} - theta^1_{42,29} + theta^1_{42,41},
 * stored without the 1/sqrt(4m) normalization (norm_sq carries it). */
struct ShadowTheta {
	Int m;
	std::vector<std::pair<Int, int>> residues; /* (r, sign) */
	QSeries raw{Rational(1)};	/* sqrt(4m) * theta combination; rational */
	Int norm_sq;	/* 4m */

	/* Eichler integral: termwise ell q^{ell^2/4m} -> sgn(ell) q^{ell^2/4m},
	 * which is exactly the matching false theta combination. */
	QSeries eichler(const Rational &order) const
	{
		QSeries s(order);
		for (auto &[r, sg] : residues) {
			FalseTheta ft = false_theta(m, r, order);
			s = s + (sg > 0 ? ft.series : -ft.series);
		}
		return s;
	}
};

inline ShadowTheta shadow_theta(const Rational &order)
{
	if (order <= 0)
		throw std::domain_error("shadow_theta: order must be positive");
	ShadowTheta sh;
	sh.m = 42;
	sh.residues = {{1, 1}, {13, -1}, {29, -1}, {41, 1}};
	sh.norm_sq = 168;
	QSeries s(order);
	for (auto &[r, sg] : sh.residues) {
		for (Int l = r;; l += 84) {
			Rational e(l * l, 168);
			if (e >= order) break;
			s.add_term(e, Rational(sg * l));
		}
		for (Int l = r - 84;; l -= 84) {
			Rational e(l * l, 168);
			if (e >= order) break;
			s.add_term(e, Rational(sg * l));
		}
	}
	sh.raw = s;
	return sh;
}

} // namespace zhat
